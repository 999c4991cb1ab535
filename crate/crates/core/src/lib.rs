//! Exact computations in the nil Temperley-Lieb algebra `T(n)` of type
//! affine `C`.
//!
//! Basis elements are indexed by minuscule elements of the affine Weyl group,
//! stored as canonical words of their commutation classes. The crate covers
//! heaps and their embeddings into the full heap `E(n)`, weights, the
//! faithful representation on sign strings over `k[q, q^-1]`, the central
//! element `Q`, finite-dimensional modules, and enumeration and verification
//! routines.

pub mod algebra;
pub mod contour;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod heap;
pub mod laurent;
pub mod linalg;
pub mod modules;
pub mod region;
pub mod rep;
pub mod verify;
pub mod weight;

pub use algebra::{q_element, CForm, TElement};
pub use contour::{construct_c, coxeter_word, weights_of};
pub use diagram::{build_diagram, cf_normal_form, Diagram, Word};
pub use enumerate::{enumerate_minuscule, EnumerationReport};
pub use error::{Error, Result};
pub use heap::{forbidden_oracle, heap_from_word, is_minuscule, Heap};
pub use laurent::LaurentPoly;
pub use linalg::Mat;
pub use modules::{build_module, trivial_module, FiniteModule};
pub use region::{complete_full_support, is_convex_region, rank_and_embed, tau_shift, Cell, ERegion};
pub use rep::{apply_element, apply_generator, matrix_of, IdealBoundary, StateVector, WeightMatrix};
pub use verify::{verify_suite, Level, VerifyReport};
pub use weight::{Sign, Weight};

pub use num::BigRational;
