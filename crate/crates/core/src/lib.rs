//! Photon-photon scattering observables as a function of the polarization
//! entanglement of the two-photon in-state.
//!
//! The in-state |Ψ⟩ = cos φ |12⟩ + e^{iρ} sin φ |21⟩ interpolates between the
//! opposite-polarization product states (φ = 0, π/2) and the Bell states
//! |Ψ±⟩ (φ = π/4, ρ = 0 or π). The crate computes, for a pluggable scattering
//! mechanism (the low-energy QED electron-positron mechanism is built in):
//!
//! - differential cross sections along three mutually checking routes
//!   ([`scattering::dcs_general`], [`scattering::dcs_reduced`],
//!   [`scattering::dcs_qed_closed`]),
//! - interference-regime classification ([`scattering::classify_regime`]),
//! - total cross sections by adaptive quadrature ([`scattering::total_xsec`]),
//! - delayed-coincidence correlations and beam-splitter (Hong-Ou-Mandel)
//!   statistics ([`correlations`]),
//! - seeded, reproducible Monte Carlo event generation ([`sampler`]).
//!
//! Grid sweeps and event generation run data-parallel under the `parallel`
//! feature (enabled by default) and fall back to sequential loops without it;
//! outputs are bit-identical either way.
//!
//! ```
//! use ggscat::constants::energy_from_wavelength;
//! use ggscat::amplitudes::Mechanism;
//! use ggscat::scattering::{dcs_reduced, TwoPhotonInState};
//!
//! let energy = energy_from_wavelength(500e-9)?;
//! let qed = Mechanism::qed_low_energy();
//! let plus = dcs_reduced(TwoPhotonInState::bell_plus(), &qed, energy, std::f64::consts::FRAC_PI_2)?;
//! let prod = dcs_reduced(TwoPhotonInState::product_12(), &qed, energy, std::f64::consts::FRAC_PI_2)?;
//! assert!((plus.si_m2_per_sr() / prod.si_m2_per_sr() - 2.0).abs() < 1e-12);
//! # Ok::<(), ggscat::Error>(())
//! ```

pub mod amplitudes;
pub mod constants;
pub mod correlations;
mod error;
pub mod quadrature;
pub mod sampler;
pub mod scattering;
pub mod stats;

pub use error::{Error, Result};
