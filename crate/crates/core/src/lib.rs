//! Exact computation of Stickelberger series and elements, character parts,
//! trivial-zero orders and Fitting-ideal generator sets for class groups of
//! cyclotomic covers of rational function fields, together with Goss
//! zeta special values at the infinite place. Every reciprocity-based
//! computation has an independent brute-force counterpart (polynomial
//! factorization and place counting) used as ground truth by the
//! acceptance suite.

pub mod abelian;
pub mod cyclo;
pub mod error;
pub mod fitting;
pub mod goss;
pub mod gring;
pub mod ideal;
pub mod cover;
pub mod oracle;
pub mod rayclass;
pub mod synthetic;
pub mod theta;
pub mod ff;

pub use error::{Error, Result};
