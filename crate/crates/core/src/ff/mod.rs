//! Exact arithmetic over small finite fields: field contexts, dense
//! polynomials and Laurent series at infinity.

pub mod field;
pub mod laurent;
pub mod poly;

pub use field::Fq;
pub use laurent::Laurent;
pub use poly::FqPoly;
