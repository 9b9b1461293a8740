//! Exact counting of matrices over finite fields whose support avoids a
//! prescribed set of positions, refined by rank, symmetry class and
//! quadratic character.
//!
//! The crate has two halves that keep each other honest. The [`oracle`]
//! module enumerates matrices directly, with enough pruning to reach 7×7
//! instances. The [`formulas`], [`rook`] and [`polyprobe`] modules evaluate
//! closed forms, recursions, rook-theoretic identities and interpolated
//! polynomials in exact arithmetic.
//!
//! ```
//! use qmatcount::{gf::make_field, oracle::{count_restricted, CountQuery, OracleOptions}};
//! use qmatcount::support::SupportSet;
//!
//! let field = make_field(2).unwrap();
//! let query = CountQuery::general(SupportSet::diagonal_prefix(3, 3).unwrap(), Some(3));
//! let count = count_restricted(&field, &query, &OracleOptions::default()).unwrap();
//! assert_eq!(count.value.to_string(), "14");
//! ```

pub mod error;
pub mod formulas;
pub mod gf;
pub mod matq;
pub mod oracle;
pub mod poly;
pub mod polyprobe;
pub mod rook;
pub mod support;

pub use error::{Error, Result};
pub use gf::{make_field, Character, FieldSpec};
pub use matq::{MatrixGF, Permutation};
pub use poly::QPolynomial;
pub use support::{Partition, SupportSet};
