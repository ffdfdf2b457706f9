//! Exact computation of the κ-twisted supertrace on the algebra of
//! observables of the rational Calogero model attached to a finite Coxeter
//! group.

pub mod algebra;
pub mod coxgroup;
pub mod dunkl;
pub mod glc;
pub mod linalg;
pub mod rootsystem;
pub mod scalar;
pub mod traceval;
