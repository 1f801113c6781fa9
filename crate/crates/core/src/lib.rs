//! Quadric surfaces in three geometric algebras.
//!
//! * [`dcga`]: double conformal G(8,2), quadrics as bivectors,
//! * [`dpga`]: double perspective G(4,4), quadrics as bivectors evaluated by a sandwich,
//! * [`qcga`]: quadric conformal G(9,6), dual quadrics as vectors,
//!
//! all built on the sparse engine in [`multivector`] and cross-checked
//! against classical 4×4 quadric matrices in [`oracle`]. Conversions between
//! frameworks live in [`interop`]; [`costmodel`] counts real multiplications.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod costmodel;
pub mod counter;
pub mod dcga;
pub mod dpga;
pub mod error;
pub mod interop;
pub mod multivector;
pub mod oracle;
pub mod qcga;

pub use algebra::{Algebra, AlgebraSignature, Blade};
pub use counter::ProductCounter;
pub use error::{Error, Result};
pub use interop::Framework;
pub use multivector::{Multivector, Product};
pub use oracle::{EuclideanPoint, PluckerLine, QuadricCoefficients, QuadricMatrix};
