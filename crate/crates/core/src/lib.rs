//! Exact algebra for blow-ups of projective space at point configurations.
//!
//! The crate works over prime fields, small extension fields and the
//! rationals, and covers:
//!
//! * [`field`] and [`poly`]: exact scalar and univariate arithmetic,
//! * [`linalg`] and [`mpoly`]: dense matrices and sparse multivariate polynomials,
//! * [`config`]: point configurations in `P^{r-1}` and their incidences,
//! * [`forms`]: linear systems of forms through points, base loci, irreducibility,
//! * [`picard`]: the lattice `Z^{n+1}` with its Weyl group action,
//! * [`cremona`]: standard Cremona transformations and Mordell-Weil verdicts,
//! * [`rep`]: the `(G_a)^{n-r}` representations on `A^{2n}` and their invariants.
//!
//! Everything is `no_std` with `alloc`; IO and file formats live in the
//! companion `nagata` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod config;
pub mod cremona;
mod error;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod mpoly;
pub mod picard;
pub mod poly;
pub mod rep;

pub use error::{Error, Result};
