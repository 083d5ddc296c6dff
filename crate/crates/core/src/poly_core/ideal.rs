//! Divisibility and ideal membership for ideals generated by linear forms.
//!
//! An ideal generated by linear forms is the vanishing ideal of their common
//! zero locus, a linear subspace. Membership therefore reduces to
//! substituting a parametrization of that subspace and testing for zero.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::linear_form::LinearForm;
use super::matrix::RationalMatrix;
use super::polynomial::{Monomial, Polynomial};
use super::rational::Rational;
use crate::error::{Error, Result};

fn check_nvars(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

/// Whether `p = e * h` for some polynomial `h`.
pub fn divides_linear(e: &LinearForm, p: &Polynomial) -> Result<bool> {
    check_nvars(e.nvars(), p.nvars())?;
    let (k, image) = e.elimination();
    Ok(p.substitute(&BTreeMap::from([(k, image)]))?.is_zero())
}

fn coefficient_matrix(forms: &[LinearForm]) -> Result<Option<RationalMatrix>> {
    let Some(first) = forms.first() else {
        return Ok(None);
    };
    let n = first.nvars();
    for f in forms {
        check_nvars(n, f.nvars())?;
    }
    RationalMatrix::from_rows(n, forms.iter().map(|f| f.coeffs().to_vec()).collect()).map(Some)
}

pub fn rank_of_forms(forms: &[LinearForm]) -> Result<usize> {
    Ok(coefficient_matrix(forms)?.map_or(0, |m| m.rank()))
}

/// Exact rank test on the coefficient vectors; the empty list counts as
/// independent.
pub fn linear_independent(forms: &[LinearForm]) -> Result<bool> {
    Ok(rank_of_forms(forms)? == forms.len())
}

/// Whether `candidate` lies in the rational span of `forms`.
pub fn in_span(forms: &[LinearForm], candidate: &LinearForm) -> Result<bool> {
    let mut with = forms.to_vec();
    with.push(candidate.clone());
    Ok(rank_of_forms(&with)? == rank_of_forms(forms)?)
}

/// Substitution that eliminates the pivot variables of the row-reduced
/// forms. A polynomial lies in `<forms>` iff its image under this map is 0.
pub fn elimination_map(forms: &[LinearForm]) -> Result<BTreeMap<usize, Polynomial>> {
    let Some(m) = coefficient_matrix(forms)? else {
        return Ok(BTreeMap::new());
    };
    let n = m.cols();
    let red = m.rref();
    let mut map = BTreeMap::new();
    for (r, &p) in red.pivots.iter().enumerate() {
        let row = red.matrix.row(r);
        let image = Polynomial::from_terms(
            n,
            (p + 1..n)
                .filter(|&j| !row[j].is_zero())
                .map(|j| (Monomial::var(n, j), -row[j].clone())),
        )?;
        map.insert(p, image);
    }
    Ok(map)
}

/// Whether `p` lies in the ideal generated by `forms`.
pub fn ideal_member_linear(forms: &[LinearForm], p: &Polynomial) -> Result<bool> {
    if let Some(f) = forms.first() {
        check_nvars(f.nvars(), p.nvars())?;
    }
    let map = elimination_map(forms)?;
    Ok(p.substitute(&map)?.is_zero())
}

/// A reusable reduction modulo the ideal of a fixed set of linear forms.
/// Reductions are linear in the input, so they can be tabulated per
/// monomial.
#[derive(Debug, Clone)]
pub struct LinearReducer {
    map: BTreeMap<usize, Polynomial>,
}

impl LinearReducer {
    pub fn new(forms: &[LinearForm]) -> Result<Self> {
        Ok(LinearReducer {
            map: elimination_map(forms)?,
        })
    }

    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&self.map)
    }

    pub fn reduce_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial::monomial(m.clone(), Rational::from_integer(1.into()))
            .substitute(&self.map)
            .expect("monomial shares nvars with the reducer")
    }
}
