//! Finitely presented groups: free-group words, presentations, Fox calculus
//! and Alexander polynomials, finite permutation groups, and counting
//! homomorphisms into them.
//!
//! ```
//! use knotgroup::{FiniteGroup, GroupSpec, Presentation};
//! use knotgroup::hom::{meridian_invariant, SearchOptions};
//!
//! let p = Presentation::family(1).unwrap();
//! let a5 = FiniteGroup::build(&"A5".parse::<GroupSpec>().unwrap()).unwrap();
//! let sigma = a5.parse_element("(1,5,4,3,2)").unwrap();
//! let opts = SearchOptions::default();
//! assert_eq!(meridian_invariant(&p, "meridian_B", &a5, &sigma, &opts).unwrap().count, 6);
//! assert_eq!(meridian_invariant(&p, "meridian_G", &a5, &sigma, &opts).unwrap().count, 1);
//! ```

pub mod error;
pub mod fox;
pub mod group;
pub mod hom;
pub mod laurent;
mod parse;
pub mod perm;
pub mod presentation;
pub mod snf;
pub mod verify;
pub mod word;

pub use error::{
    EvalError, FoxError, GroupError, LaurentError, NameError, Overflow, ParseError,
    PresentationError, SearchError,
};
pub use fox::{
    alexander_matrix, alexander_polynomial, fox_derivative, AlexanderMatrix, GroupRingElement,
};
pub use group::{FiniteGroup, GroupSpec};
pub use hom::{count_homs, Constraint, HomSearchResult, SearchMode, SearchOptions};
pub use laurent::LaurentPoly;
pub use perm::Permutation;
pub use presentation::{AbelianizationReport, Presentation};
pub use word::{Alphabet, Generator, GroupOps, Syllable, Word};

/// The guide under `book/`, compiled so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/laurent.md")]
    mod laurent {}
    #[doc = include_str!("../../../book/src/fox.md")]
    mod fox {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/homomorphisms.md")]
    mod homomorphisms {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
