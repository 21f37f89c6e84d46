//! Exact arithmetic for multiplicative quadratic maps between finite fields and finite
//! commutative rings: axiom verification, the associated biadditive form and radical,
//! extension of scalars, classification through composition algebras, and uniqueness of
//! products of field homomorphisms.

pub mod basis;
pub mod classify;
pub mod embed;
pub mod error;
pub mod field;
pub mod homprod;
pub mod linalg;
mod poly;
pub mod qmap;
pub mod report;
pub mod ring;
pub mod schema;
pub mod tensor;

pub use basis::QuadMapBasis;
pub use embed::{embeddings, Embedding};
pub use error::{Error, Result};
pub use field::{make_field, Elem, Field, FieldDesc};
pub use qmap::{BilinearGram, HomBranch, QuadMapTable, Subspace};
pub use report::{CheckConfig, CheckMode, Report, Witness};
pub use ring::{FiniteRing, RingTable};
