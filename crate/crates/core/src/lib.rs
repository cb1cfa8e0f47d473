//! Term-document retrieval models over occupation-number document vectors.
//!
//! Documents become count vectors over a sorted vocabulary ([`corpus`]). They
//! can then be ranked by Boolean, vector-space, probabilistic, fuzzy, extended
//! Boolean and term-correlation models ([`rankers`]), or by latent semantic
//! indexing with an SVD-derived metric ([`lsimetric`]).

pub mod boolquery;
pub mod corpus;
pub mod eigenkit;
pub mod format;
pub mod gf;
pub mod lsimetric;
pub mod rankers;
pub mod reproduce;
