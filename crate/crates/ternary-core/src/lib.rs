//! Qutrit reversible-arithmetic circuits.
//!
//! This crate builds the ternary adder family (a modified ripple-carry
//! adder and out-of-place/in-place carry look-ahead adders) together
//! with their extensions (addition mod 3^n, subtraction, comparison),
//! lowers every construction to two universal gate sets (Clifford+CX and
//! the supermetaplectic Clifford+P9), and verifies the results exactly:
//! permutation simulation for reversible circuits, arithmetic in the
//! cyclotomic field Q(zeta_36) for everything else.
//!
//! The companion `ternary-cli` crate adds the `.t3` text format, a JSON
//! resource report, and a command-line front end.

pub mod adders;
pub mod arith;
pub mod circuit;
pub mod cyclo;
pub mod gate;
pub mod lower;
pub mod permsim;
pub mod schedule;
pub mod superm;
pub mod trit;

pub use circuit::{Circuit, GateInstance, RegisterMap, ResourceReport};
pub use gate::{GateKind, Pair};
