//! Novikov numbers of twisted cochain complexes and the machinery around
//! them: Morse-Bott counting polynomials and the `(1+λ)Q(λ)` certificate,
//! the spectral sequence of a one-parameter deformation, and numeric
//! spectra of deformed Laplacians.

pub mod algebra;
pub mod twisted;
pub mod morse_bott;
pub mod spectral;
pub mod hodge;
