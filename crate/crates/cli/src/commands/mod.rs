pub mod evolve;
pub mod invariant_check;
pub mod oracle_check;
pub mod sudden_death;

/// What a command run amounts to, before mapping to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Output produced; nothing to judge.
    Done,
    /// A check ran and passed.
    Pass,
    /// A check ran and failed.
    CheckFailed,
}
