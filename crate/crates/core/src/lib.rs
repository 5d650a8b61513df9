//! Computational toolkit for Sunada-type isospectrality.
//!
//! The crate is organised bottom-up:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`permgrp`] | permutation groups stored by full enumeration, classes, subgroups, cosets |
//! | [`chartab`] | character tables via the Burnside class-algebra method, multiplicities |
//! | [`gassmann`] | almost conjugacy, representation equivalence, K-equivalence, triple search |
//! | [`quotspec`] | weighted graphs with group actions, Laplacian spectra, invariant spectra, isotypic tables |
//! | [`heatkit`] | closed-form flat-model spectra, heat traces and the constant-term singularity detector |
//! | [`io`] | text formats for groups, subgroups, graphs, actions and spectra |
//!
//! All indices into a group refer to its canonical (lexicographic) element order,
//! so every derived report is reproducible.

pub mod chartab;
pub mod error;
pub mod gassmann;
pub mod heatkit;
pub mod io;
pub mod permgrp;
pub mod quotspec;

pub use error::{Error, ErrorKind};
