//! The three group families, their lattices and the verification of those
//! lattices.
//!
//! `Osc1` lattices are realized exactly as `Gamma(A)` from [`crate::sympmat`]
//! and embedded numerically by [`osc1::Osc1Embedding`]. `Osc2` and `D`
//! lattices use the exact laws of [`law`] on `t` in `Gamma'`, where every
//! rotation is trivial.

pub mod bch;
pub mod lattice;
pub mod law;
pub mod osc1;

pub use bch::{bch_crosscheck_ell, rational_grid, BchReport};
pub use lattice::{
    build_lattice_d0, build_lattice_t1, build_lattice_t1_seeded, build_lattice_t2, closure_check, corrupt, ClosureReport, DLattice, Element,
    LatticeModel, Osc1Lattice, Osc2Lattice, DEFAULT_WORD_LENGTH_T1, DEFAULT_WORD_LENGTH_T2,
};
pub use law::{dq_inv, dq_mul, osc2_inv, osc2_mul, DqElem, DqParams, Osc2Elem, Osc2Params, Scalar};
pub use osc1::{eigenvalue_check, EigenReport, Osc1Elem, Osc1Embedding, Osc1Params};
