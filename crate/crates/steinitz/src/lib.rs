//! Realizable Steinitz classes of odd-order l-groups over imaginary
//! quadratic base fields, in exact integer arithmetic.
//!
//! The crate computes, for k = Q(sqrt(d)) with d < 0 squarefree:
//!
//! - the ideal class group Cl(k) as reduced binary quadratic forms
//!   ([`classgroup`]);
//! - the norm-class subgroups W(k,m) of classes containing a prime that
//!   splits completely in k(zeta_m)/k, with a divisibility certificate or a
//!   sampling-stabilization certificate ([`wgroups`]);
//! - Galois groups of k(zeta_M)/k as residue subgroups of (Z/M)*, together
//!   with the action subgroups and fixed-field descriptors attached to an
//!   element of one of the supported group families ([`cyclo`]);
//! - Steinitz classes of tame extensions from ramification data, and the
//!   realizable-class subgroups R_t(k,G) for the supported families
//!   ([`engine`]).
//!
//! Supported Galois group families ([`lgroups`]): the semidirect products
//! C(l^n) x| C(l) in which the complement acts by raising to the
//! (l^(n-1)+1)-th power, the Heisenberg group of order l^3 and exponent l,
//! and C(l), all for small odd primes l.
//!
//! Every structural fact the computations rely on is also wired up as an
//! executable check: [`verify`] holds a registry of named suites, one per
//! property, selectable at runtime.

#![allow(clippy::manual_is_multiple_of)]

pub mod arith;
pub mod classgroup;
pub mod cyclo;
pub mod engine;
pub mod error;
pub mod lgroups;
pub mod verify;
pub mod wgroups;

pub use error::{Error, Result};
