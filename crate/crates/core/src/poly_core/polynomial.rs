//! Sparse multivariate polynomials over the rationals in a fixed number of
//! variables `x1, ..., xn`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of `x1`, then `x2`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, largest first.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

/// All monomials of total degree at most `d`, largest first.
pub fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).rev().flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    /// The variable `x_{i+1}` (indices are zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.nvars, Rational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Ring homomorphism sending `x_i` to `subst[i]` for every mapped index
    /// and fixing the other variables.
    pub fn substitute(&self, subst: &BTreeMap<usize, Polynomial>) -> Result<Polynomial> {
        for (&i, q) in subst {
            if i >= self.nvars {
                return Err(Error::Dimension {
                    expected: self.nvars,
                    found: i + 1,
                });
            }
            self.check_same(q)?;
        }
        if subst.is_empty() {
            return Ok(self.clone());
        }
        // powers[i][k] = subst[i]^k, grown lazily
        let mut powers: BTreeMap<usize, Vec<Polynomial>> = subst
            .iter()
            .map(|(&i, q)| (i, vec![Polynomial::constant(self.nvars, Rational::one()), q.clone()]))
            .collect();
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut kept = m.0.clone();
            let mut term = Polynomial::constant(self.nvars, c.clone());
            for (&i, pw) in powers.iter_mut() {
                let e = m.0[i] as usize;
                kept[i] = 0;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                term = &term * &pw[e];
                if term.is_zero() {
                    break;
                }
            }
            let kept = Monomial(kept);
            for (tm, tc) in term.terms {
                out.add_term(tm.mul(&kept), tc);
            }
        }
        Ok(out)
    }

    /// Multiplies by `-1` if needed so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson(
            self.terms()
                .map(|(m, c)| TermJson {
                    exps: m.0.clone(),
                    coef: format_rational(c),
                })
                .collect(),
        )
    }

    /// Parses the text form, e.g. `x1^2 - 1/2 * x1*x3 + 4`. Variables are
    /// `x1` through `x{nvars}`; parentheses and `^` on groups are accepted.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            nvars,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial nvars mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial nvars mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial nvars mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{} * {}", format_rational(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coef: String,
}

/// JSON form of a polynomial: its terms in descending graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolynomialJson(pub Vec<TermJson>);

impl PolynomialJson {
    pub fn to_polynomial(&self, nvars: usize) -> Result<Polynomial> {
        let terms = self
            .0
            .iter()
            .map(|t| Ok((Monomial(t.exps.clone()), parse_rational(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(nvars, terms)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.nvars);
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.digits()?
                .parse()
                .map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(b'x') => {
                self.pos += 1;
                let i: usize = self.digits()?.parse().map_err(|_| self.err("bad variable"))?;
                if i == 0 || i > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                let e = self.exponent()?;
                let mut exps = vec![0; self.nvars];
                exps[i - 1] = e;
                Ok(Polynomial::monomial(Monomial(exps), Rational::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?.to_string();
                let text = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    format!("{num}/{}", self.digits()?)
                } else {
                    num
                };
                Ok(Polynomial::constant(self.nvars, parse_rational(&text)?))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::{frac, int};

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 3).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&p("x1") + &p("-x1")).is_zero());
        assert_eq!(&p("x1 + x2") * &p("x1 - x2"), p("x1^2 - x2^2"));
        assert_eq!(
            p("x1 + x3").scale(&frac(1, 2)),
            p("1/2 * x1 + 1/2 * x3")
        );
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::Dimension { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitution_examples() {
        let zero_x: BTreeMap<_, _> = [(0, Polynomial::zero(3))].into();
        assert!(p("x1^2 + x1*x2").substitute(&zero_x).unwrap().is_zero());
        let x_to_y: BTreeMap<_, _> = [(0, p("x2"))].into();
        assert!(p("x1 - x2").substitute(&x_to_y).unwrap().is_zero());
        let x_to_yz: BTreeMap<_, _> = [(0, p("x2 + x3"))].into();
        assert_eq!(
            p("x1^2").substitute(&x_to_yz).unwrap(),
            p("x2^2 + 2*x2*x3 + x3^2")
        );
    }

    #[test]
    fn grlex_order_and_display() {
        let q = p("x3^2 + x1*x2 + x1 + 7 - x2^2");
        let order: Vec<_> = q.terms().map(|(m, _)| m.exps().to_vec()).collect();
        assert_eq!(
            order,
            vec![vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 0, 0], vec![0, 0, 0]]
        );
        assert_eq!(q.to_string(), "x1*x2 - x2^2 + x3^2 + x1 + 7");
        assert_eq!(p("-1/2 * x1 + x2").to_string(), "-1/2 * x1 + x2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to_degree(3, 2).len(), 10);
        let m = monomials_of_degree(2, 2);
        assert_eq!(m[0].exps(), &[2, 0]);
        assert_eq!(m[2].exps(), &[0, 2]);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let q = p("1/3 * x1^2*x3 - 2*x2 + 5");
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(
            text,
            r#"[{"exps":[2,0,1],"coef":"1/3"},{"exps":[0,1,0],"coef":"-2"},{"exps":[0,0,0],"coef":"5"}]"#
        );
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polynomial(3).unwrap(), q);
        assert!(back.to_polynomial(2).is_err());
    }

    #[test]
    fn parse_groups_and_errors() {
        assert_eq!(p("(x1 + x2)^2"), p("x1^2 + 2*x1*x2 + x2^2"));
        assert_eq!(p("-(x1 - 3)"), &Polynomial::constant(3, int(3)) - &p("x1"));
        assert!(Polynomial::parse("x4", 3).is_err());
        assert!(Polynomial::parse("x1 +", 3).is_err());
        assert!(Polynomial::parse("x1 y", 3).is_err());
    }

    #[test]
    fn degree_and_parts() {
        let q = p("x1^2 + x2 + 1");
        assert_eq!(q.degree(), Some(2));
        assert_eq!(Polynomial::zero(3).degree(), None);
        assert_eq!(q.homogeneous_part(1), p("x2"));
        assert!(!q.is_homogeneous());
        assert_eq!(p("-x1 + x2").sign_normalized(), p("x1 - x2"));
    }
}
