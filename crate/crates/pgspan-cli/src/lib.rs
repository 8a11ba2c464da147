//! Command implementations for the `pgspan` binary. The binary stays thin;
//! everything here is callable from tests.

pub mod commands;
pub mod plan;
pub mod svg;
pub mod sweep;

/// Process exit codes: 0 success, 1 verification failure, 2 input/IO error,
/// 3 internal invariant failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub fn exit_code_for(err: &pgspan::Error) -> i32 {
    match err {
        pgspan::Error::Internal(_) => EXIT_INTERNAL,
        pgspan::Error::ScriptViolation { .. } => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}
