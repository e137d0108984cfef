use thiserror::Error;

/// Errors returned by fallible operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Photon energy at or above the pair-creation threshold, and evaluation
    /// was not forced.
    #[error(
        "photon energy {energy_ev} eV is at or above the pair-creation threshold \
         ({threshold_ev} eV); the low-energy amplitude is not applicable there \
         (construct the energy with forced evaluation to proceed anyway)"
    )]
    EnergyAboveThreshold { energy_ev: f64, threshold_ev: f64 },

    /// The relative phase of two amplitudes is undefined because one of them
    /// vanishes.
    #[error("degenerate phase: {0}")]
    DegeneratePhase(String),

    /// No mechanism is registered under the given name.
    #[error("unknown mechanism `{0}`")]
    UnknownMechanism(String),

    /// Not enough data to carry out a statistical procedure.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
