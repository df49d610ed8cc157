//! Input format, reports and sweeps behind the `tririgid` command.

pub mod input;
pub mod random;
pub mod report;
pub mod sweep;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID_DATUM: i32 = 2;
    pub const PARSE_ERROR: i32 = 3;
    pub const VERIFICATION_FAILURE: i32 = 4;
    pub const SWEEP_FAILURE: i32 = 5;
}
