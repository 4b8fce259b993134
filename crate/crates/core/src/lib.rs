//! Non-commutative rank-two cluster variables for the Kontsevich automorphism
//! `x -> x y x^-1`, `y -> (1 + y^r) x^-1`.
//!
//! The iterates `x_n` are computed two ways: as a sum over compatible families of
//! colored subpaths of a maximal Dyck path ([`formula`]), and by direct substitution
//! certified through exact polynomial identities ([`oracle`]).

pub mod cli;
pub mod dyck;
pub mod error;
pub mod family;
pub mod formula;
pub mod integer;
pub mod lemmas;
pub mod oracle;
pub mod poly;
pub mod serial;
pub mod word;

pub use error::{Error, Result};
pub use integer::Integer;
pub use poly::{CommPoly, NCPoly};
pub use word::{Gen, ReducedWord, Syllable};
