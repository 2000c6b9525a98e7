//! Stack sorting with a stack that must avoid a set of patterns.
//!
//! [`machine`] simulates the map `s_T` and evaluates it a second way through
//! the clumping recurrence; [`dynamics`] studies `s_T` as a map on `S_n`
//! (bijectivity, preimages, periodic orbits); [`verify`] bundles exhaustive
//! checks of the known structural results into named suites.
//!
//! ```
//! use permstack::{machine::sort, PatternSet, Word};
//!
//! let t: PatternSet = "123,132".parse().unwrap();
//! let w: Word = "52413".parse().unwrap();
//! assert_eq!(sort(&w, &t).to_string(), "42315");
//! ```

pub mod dynamics;
pub mod error;
pub mod machine;
pub mod patterns;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use patterns::PatternSet;
pub use perm::{LiteralLetter, LiteralWord, Perm, Word};
