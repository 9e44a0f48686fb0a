//! Exact Milnor numbers, monomial bases and character-graded Milnor algebras
//! of polynomial germs under diagonal actions of finite abelian groups, with
//! a harness that checks orbit-length lower bounds for `mu` on concrete germs.
//!
//! ```
//! use equimilnor::poly::parse_polynomial;
//! use equimilnor::standard_basis::milnor_number;
//!
//! let vars = vec!["x".to_string(), "y".to_string()];
//! let f = parse_polynomial("x^3 + y^3", &vars).unwrap();
//! assert_eq!(milnor_number(&f).unwrap(), 4);
//! ```

pub mod doubling;
pub mod equivariant;
mod error;
pub mod group;
pub mod poly;
pub mod standard_basis;
pub mod verification;

pub use error::{Error, ParseError, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/milnor.md")]
    mod milnor {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/doubling.md")]
    mod doubling {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
