//! Sparse multivariate polynomials with Hasse derivatives, line restriction
//! and trial division by linear forms.

mod factor;
mod multi;
mod uni;

pub use factor::{
    canonical_linear_forms, divide, divide_by_linear, divides, factor_linear, linear_form_count,
    LinearFactorization,
};
pub(crate) use multi::LinePowers;
pub use multi::{exponents_of_degree, graded_cmp, monomials_up_to, Exponent, MultiPoly};
pub use uni::UniPoly;
