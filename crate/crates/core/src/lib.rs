//! Exact computer algebra for smash products of presented algebras by Hopf
//! algebras, their cohomology, and deformation-sequence verification.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: scalars live
//! in a prime field `F_p` or a cyclotomic field `Q(ζ_n)`.
//!
//! Layout:
//! - [`scalar`]: fields, scalars, roots of unity
//! - [`linalg`]: dense exact linear algebra over a [`scalar::Field`]
//! - [`sparse`]: sparse vectors and incremental echelon forms
//! - [`ncalg`]: noncommutative polynomials, truncated Gröbner bases, normal words
//! - [`hopf`]: Hopf algebras by structure constants, braidings, YD data, smash products
//! - [`cohomology`]: free resolutions, Ext, Yoneda products, group actions on Ext
//! - [`defseq`]: deformation sequences and their verification reports
//! - [`twisted`]: twisting maps and twisted tensor products
//! - [`builtin`]: the named example families

#![no_std]

extern crate alloc;

pub mod builtin;
pub mod cohomology;
pub mod defseq;
mod error;
pub mod freeness;
pub mod hopf;
pub mod linalg;
pub mod ncalg;
pub mod scalar;
pub mod sparse;
pub mod twisted;

pub use error::{Error, Result};
pub use scalar::{Field, FieldSpec, Scalar};
