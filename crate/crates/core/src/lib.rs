//! Finite-state automorphisms of the rooted k-ary tree, given by invertible
//! Mealy automata, and decision procedures for elements of the iterated wreath
//! product of cyclic groups:
//!
//! * spherical transitivity ([`is_spherically_transitive`], [`transitive_k2_fast`]),
//! * equality in the abelianization ([`abelianization_equal`]),
//! * conjugacy of spherically transitive elements ([`conjugate`]),
//! * the abelianization as a rational power series ([`rational_form`]).
//!
//! The [`oracle`] module recomputes the same quantities by brute-force
//! enumeration of tree levels and is used to cross-check the algorithms.

pub mod abelianization;
pub mod automaton;
pub mod dot;
pub mod error;
pub mod format;
pub mod labels;
pub mod minimize;
pub mod modular;
pub mod oracle;
pub mod permutation;
pub mod poly;

pub use abelianization::{
    abelianization_equal, abelianization_equal_generic, abelianization_equal_prime,
    abelianization_stream, conjugate, is_spherically_transitive, rational_form, transitive_k2_fast,
    AbelianEquality, Conjugacy, ConjugacyVerdict, StreamEvidence, TransitivityVerdict,
};
pub use automaton::{InitialAutomaton, MealyAutomaton, Word};
pub use dot::to_dot;
pub use error::{Error, Result};
pub use format::{format_word, parse_word, AutomatonFile};
pub use labels::{validate_cyclic, AbelianLabels, LabeledAutomaton};
pub use minimize::{equivalent, minimize, minimize_with_origin};
pub use modular::{
    abelian_vector, coefficient_stream, EventuallyPeriodicStream, IncidenceMatrix, ModVector,
};
pub use permutation::Permutation;
pub use poly::{det_poly, series_expand, IntPolynomial, RationalSeries};
