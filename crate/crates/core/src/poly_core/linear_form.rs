use std::fmt;

use num_traits::{One, Zero};

use super::polynomial::{Monomial, Polynomial};
use super::rational::{format_vector, parse_vector, sign_of_first_nonzero, Rational};
use crate::error::{Error, Result};

/// A nonzero homogeneous linear polynomial `c1*x1 + ... + cn*xn`, stored as
/// its coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidLabel("linear form is zero".into()));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[i] = Rational::one();
        LinearForm { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.nvars();
        Polynomial::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
        .expect("monomials built with matching nvars")
    }

    /// Accepts only nonzero homogeneous polynomials of degree one.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.degree() != Some(1) || !p.is_homogeneous() {
            return Err(Error::InvalidLabel(format!("`{p}` is not a nonzero linear form")));
        }
        let n = p.nvars();
        Self::new((0..n).map(|i| p.coefficient(&Monomial::var(n, i))).collect())
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Result<LinearForm> {
        LinearForm::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Lowest variable index with a nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("linear forms are nonzero")
    }

    /// The substitution `x_k -> -(1/c_k) * sum_{j != k} c_j x_j` at the pivot
    /// `k`. Its kernel on the polynomial ring is exactly the ideal `<self>`.
    pub fn elimination(&self) -> (usize, Polynomial) {
        let k = self.pivot();
        let n = self.nvars();
        let inv = -self.coeffs[k].recip();
        let image = Polynomial::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(j, c)| (Monomial::var(n, j), c * &inv)),
        )
        .expect("monomials built with matching nvars");
        (k, image)
    }

    /// Flips the sign so the first nonzero coefficient is positive.
    pub fn sign_normalized(&self) -> LinearForm {
        if sign_of_first_nonzero(&self.coeffs) < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        let k = self.pivot();
        if other.coeffs[k].is_zero() {
            return false;
        }
        let ratio = &other.coeffs[k] / &self.coeffs[k];
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| &(a * &ratio) == b)
    }

    pub fn to_json(&self) -> Vec<String> {
        format_vector(&self.coeffs)
    }

    pub fn from_json(items: &[String]) -> Result<Self> {
        Self::new(parse_vector(items)?)
    }
}

impl serde::Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::int;

    #[test]
    fn zero_form_rejected() {
        assert!(matches!(LinearForm::from_ints(&[0, 0]), Err(Error::InvalidLabel(_))));
        assert!(LinearForm::from_ints(&[1, 0]).unwrap().scale(&int(0)).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let e = LinearForm::from_ints(&[1, -2, 0]).unwrap();
        let p = e.to_polynomial();
        assert_eq!(p.to_string(), "x1 - 2 * x2");
        assert_eq!(LinearForm::from_polynomial(&p).unwrap(), e);
        assert!(LinearForm::from_polynomial(&Polynomial::parse("x1 + 1", 3).unwrap()).is_err());
        assert!(LinearForm::from_polynomial(&Polynomial::parse("x1^2", 3).unwrap()).is_err());
    }

    #[test]
    fn proportionality_and_sign() {
        let a = LinearForm::from_ints(&[0, 1, 2]).unwrap();
        let b = LinearForm::from_ints(&[0, -3, -6]).unwrap();
        let c = LinearForm::from_ints(&[1, 1, 2]).unwrap();
        assert!(a.is_proportional(&b));
        assert!(!a.is_proportional(&c));
        assert_eq!(b.sign_normalized(), LinearForm::from_ints(&[0, 3, 6]).unwrap());
        assert_eq!(a.pivot(), 1);
    }
}
