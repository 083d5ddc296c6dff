//! Exact scalars, polynomials, linear forms and linear algebra.

pub mod ideal;
pub mod linear_form;
pub mod matrix;
pub mod polynomial;
pub mod rational;

pub use ideal::{
    divides_linear, ideal_member_linear, in_span, linear_independent, rank_of_forms,
    LinearReducer,
};
pub use linear_form::LinearForm;
pub use matrix::{AffineSolution, RationalMatrix, Rref};
pub use polynomial::{
    monomials_of_degree, monomials_up_to_degree, Monomial, Polynomial, PolynomialJson, TermJson,
};
pub use rational::{format_rational, parse_rational, Rational};
