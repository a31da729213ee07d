//! Library half of the CLI: the serializable artifact types every command
//! emits, and their conversions from engine types. Kept in a library so
//! integration tests can round-trip the JSON artifacts into the exact
//! originating types.

pub mod artifacts;

/// Exit codes, also documented in `--help`.
pub mod exit {
    /// Invalid problem specification or command arguments.
    pub const INVALID: i32 = 3;
    /// A computation could not be completed (root finding, winding, ...).
    pub const COMPUTE: i32 = 4;
    /// Output could not be written.
    pub const IO: i32 = 5;
}
