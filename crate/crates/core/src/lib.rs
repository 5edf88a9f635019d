//! Symbolic toolkit for the isomorphic invariants of the Banach spaces
//! C([0, alpha]): ordinal arithmetic in Cantor normal form, Szlenk and
//! w*-dentability indices, the Bessaga-Pelczynski classification,
//! Cantor-Bendixson derivatives, and a traced rewrite system on space
//! expressions.

pub mod cb;
pub mod classification;
pub mod error;
pub mod indices;
pub mod oracle;
pub mod ordinal;
pub mod space;
pub mod text;

pub use error::{Error, Result};
pub use ordinal::Ordinal;
