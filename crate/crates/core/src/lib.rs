//! Computational engine for a self-similar group `W` of non-uniformly
//! exponential growth and its intermediate-growth relative `V`.
//!
//! Both groups act on strings over the seven points of the Fano plane,
//! generated from `A = PSL(3,2)` and recursively defined transformations.
//! The crate provides the permutation layer ([`fano`]), the self-similar
//! word problem ([`wreath`]), the named generating sets and witness identities
//! ([`catalog`]), combinatorics of reduced words ([`words`]), Cayley-ball
//! enumeration ([`growth`]), growth-bound numerics ([`bounds`]) and an
//! aggregate verification report ([`verify`]).

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod fano;
pub mod growth;
pub mod verify;
pub mod words;
pub mod wreath;

pub use error::{Error, Result};
pub use fano::{Perm, PermGroup, Point};
pub use wreath::{Element, Engine, NodeForm};
