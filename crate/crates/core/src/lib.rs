//! Gaussian-weighted discrete exterior calculus on triangulated surfaces
//! immersed in R³, with the spectral machinery needed to estimate harmonic
//! 1-form dimensions and Morse indices of self-shrinkers of mean curvature
//! flow.
//!
//! The crate is organized in layers:
//!
//! * [`mesh`] — oriented manifold triangle meshes with halfedge connectivity,
//!   boundary-loop bookkeeping, topology invariants, truncation and OFF/OBJ I/O.
//! * [`geometry`] — model-surface generators (sphere, plane disk, cylinder,
//!   cone-ended surfaces, Angenent torus), per-vertex differential geometry
//!   and Gaussian quadrature.
//! * [`dec`] — Gaussian-weighted cochain calculus: mass matrices, weighted
//!   codifferential, Hodge Laplacians, Jacobi quadratic form, weighted star.
//! * [`homology`] — tree-cotree homology generators, cut-cocycles for ends
//!   and separating loops, simplicial cup products.
//! * [`spectra`] — harmonic projection, harmonic dimension reports, Morse
//!   index sweeps via inertia counting, Bochner residuals and the cutoff
//!   test-function inequality.
//! * [`linalg`] — the sparse kernels backing everything: CSR matrices,
//!   LDLᵀ factorization with inertia, shift-invert Lanczos.

pub mod dec;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod mesh;
pub mod spectra;




pub use mesh::{EndMark, SurfaceMesh};

