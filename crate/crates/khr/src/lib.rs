//! Finite Krasner (m,n)-hyperrings as explicit operation tables.
//!
//! A structure pairs an m-ary hyperaddition `f` (set-valued) with an n-ary
//! multiplication `g` (single-valued) over a carrier of at most 64 elements.
//! The crate validates every defining axiom exhaustively, classifies
//! hyperideals (prime, primary, 2-absorbing, maximal, radicals), constructs
//! the hyperring of fractions `S^-1 R` and quotients `R/I`, and checks the
//! transport theorems between them by brute force at desk scale.
//!
//! ```
//! use khr::{ArityProfile, ElemSet, RawStructure, Structure, ValidationMode};
//!
//! // the two-element Krasner hyperfield: 1 + 1 = {0, 1}
//! let f = vec![
//!     ElemSet::singleton(0),                    // 0 + 0
//!     ElemSet::singleton(1),                    // 0 + 1
//!     ElemSet::singleton(1),                    // 1 + 0
//!     [0, 1].into_iter().collect::<ElemSet>(),  // 1 + 1
//! ];
//! let g = vec![0, 0, 0, 1];
//! let raw = RawStructure::new(
//!     "K2", 2, ArityProfile::new(2, 2)?, true, 0, 1, f, g, None,
//! )?;
//! let k2 = Structure::from_raw(raw, ValidationMode::Strict)?;
//!
//! let l = khr::fractions::build_localization(&k2, ElemSet::singleton(1))?;
//! assert_eq!(l.classes().len(), 2);
//! # Ok::<(), khr::Error>(())
//! ```

mod error;
mod set;
mod tuples;

pub mod fractions;
pub mod ideals;
pub mod morphisms;
pub mod quotients;
pub mod structure;
pub mod transport;
pub mod validate;

pub use error::{Error, Result, WellDefinednessWitness};
pub use set::ElemSet;
pub use structure::{ArityProfile, RawStructure, Structure, MAX_CARD};
pub use validate::{validate_structure, Axiom, AxiomCheck, ValidationMode, ValidationReport};
