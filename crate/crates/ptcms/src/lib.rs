//! Deformed Coxeter root systems and the many-body models built on them.
//!
//! The crate constructs complex deformations of the A2 and G2 root systems
//! that remain invariant under antilinearly extended Weyl reflections,
//! assembles the corresponding Calogero-Moser-Sutherland potentials in
//! standard, Jacobi, and polar coordinates, and evaluates the exact
//! eigensystem of the rational (Calogero) case: quantization exponents,
//! terminating hypergeometric eigenfunctions, energy branches, and the
//! degeneracies opened up by the deformation.
//!
//! Modules:
//! - [`rootsys`]: exact root systems, Weyl reflections, embeddings;
//! - [`ptdeform`]: complex root deformations and their closure/orthogonality
//!   properties;
//! - [`cmsmodel`]: potential assembly and coordinate transformations;
//! - [`spectra`]: eigenfunctions, spectra, degeneracies, and residual
//!   verification;
//! - [`verify`]: the runnable invariant suite behind `ptcms verify`.

pub mod cmsmodel;
pub mod ptdeform;
pub mod rootsys;
pub mod spectra;
pub mod verify;
