//! IO companion to `ternary-core`: the `.t3` text circuit format, the
//! JSON resource report, verification orchestration, and the self-test
//! checklist behind the `ternary` binary.

pub mod format;
pub mod selftest;
pub mod verify;
