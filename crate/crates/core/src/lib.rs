//! Exact computations on metric Lie algebras given by rational structure constants.
//!
//! Locally conformally Kähler, Vaisman, Sasakian, coKähler and left-symmetric structures,
//! double extensions, flat Kähler reductions, oscillator lattices and their first homology.

pub mod cert;
pub mod exact;
pub mod liealg;
pub mod metricgeo;
pub mod hermitian;
pub mod samples;
pub mod contact;
pub mod lattices;
pub mod classify;
pub mod io;
