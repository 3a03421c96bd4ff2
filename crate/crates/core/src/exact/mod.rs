//! Exact scalar and polynomial arithmetic.
//!
//! The submodules provide, in dependency order: scalar fields ([`scalar`],
//! [`eisenstein`]), sparse multivariate polynomials with a canonical
//! graded-lexicographic term order ([`poly`]), resultants and multivariate
//! gcd ([`resultant`]), real-root isolation and rational-root extraction for
//! univariate rational polynomials ([`sturm`]), and Smith normal form of
//! integer matrices ([`snf`]).

pub mod eisenstein;
pub mod poly;
pub mod resultant;
pub mod scalar;
pub mod snf;
pub mod sturm;

pub use eisenstein::Eisenstein;
pub use poly::{Mono, MultiPoly, PolyError};
pub use resultant::{gcd_multivar, resultant, squarefree_part};
pub use scalar::{rat, rat_int, Field, Rat};
pub use snf::{smith_normal_form, IntMatrix, SmithNormalForm};
pub use sturm::{
    extract_rational_roots, isolate_real_roots, simplest_rational_between, IsolatingInterval,
};
