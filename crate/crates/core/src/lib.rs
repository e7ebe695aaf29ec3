//! Exact computations with the Krammer representation of the braid groups,
//! the Temperley-Lieb diagram algebra and the `(n−2,2)` module that appears
//! when the Krammer representation is specialised at `t = −q⁻¹`.
//!
//! Module map:
//!
//! * [`ring`]: Laurent polynomials in `q^½` and `t`, big rationals.
//! * [`linalg`]: dense matrices, exact elimination, subspaces, quotients,
//!   intertwiners.
//! * [`braid`]: braid words.
//! * [`krammer`]: generator matrices, word evaluation, the word problem.
//! * [`tl`]: diagrams, `TL_n`, the braid image, the `(n−2,2)` module.
//! * [`reduce`]: the specialisation and the quotient comparison.

pub mod braid;
pub mod krammer;
pub mod linalg;
pub mod reduce;
pub mod ring;
pub mod sample;
pub mod tl;

pub use braid::{BraidError, BraidWord};
pub use krammer::{is_trivial, krammer_generator, rep_matrix, words_equal, PairBasis};
pub use linalg::{QMatrix, RingMatrix, Subspace};
pub use reduce::{lk_quotient, verify_theorem_tl, QuotientReport};
pub use ring::{BigRational, LaurentPoly};
pub use tl::{braid_to_tl, TLDiagram, TLElement};
