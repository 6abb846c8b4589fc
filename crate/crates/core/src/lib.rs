//! Exact face lattice of the tensor product cone of a semisimple group.
//!
//! Faces of the cone of `(s+1)`-tuples of dominant weights whose tensor
//! product has a nonzero invariant are parametrized by pairs `(P, reps)`:
//! a standard parabolic `P` and a tuple of Schubert classes of `G/P` whose
//! Belkale-Kumar product is the point class with coefficient one. This crate
//! builds that parametrization from scratch (root systems, Weyl groups,
//! BGG Schubert calculus, the Levi-movability filter) and checks every
//! output against a brute-force oracle built on Freudenthal's recursion and
//! Klimyk's formula.

pub mod bk;
pub mod error;
pub mod export;
pub mod face;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod rootsys;
pub mod schubert;
pub mod verify;
pub mod weyl;

pub use error::{Error, Limits, Result};
pub use rational::Q;
pub use rootsys::{build_root_system, CartanType, Family, Root, RootSystem, Weight};
pub use weyl::{enumerate_weyl, ParabolicSubset, WeylElement, WeylGroup};
