//! Bound-state spectra of quantum systems confined by Robin boundary conditions.

pub mod analysis;
pub mod cli;
pub mod eigensolver;
pub mod models;
pub mod quadrature;
pub mod specfun;
