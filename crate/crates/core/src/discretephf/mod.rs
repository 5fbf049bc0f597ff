//! Discrete polyharmonic generating functions: basis, lifting and decomposition.

pub mod basis;
pub mod decompose;
pub mod decouple;
pub mod family;
pub mod laplacian;
pub mod polygf;
pub mod simple;

pub use basis::harmonic_basis;
pub use decompose::{
    decompose_harmonic, decompose_polyharmonic, polyharmonic_order, BasisDecomposition,
};
pub use decouple::{
    as_omega_poly, check_decoupler, decouple, decouple_fn, lift, telescoping_decoupler,
};
pub use family::Family;
pub use laplacian::{gf_laplacian, gf_laplacian_pow};
pub use polygf::{Decoupler, PolyGF};
pub use simple::simple_walk_closed_form;
