//! Physical constants (CODATA 2018), photon-energy conversions, and the
//! low-energy validity guard.
//!
//! All quantities enter and leave the crate in SI units (energies in eV,
//! lengths in m); internal computations elsewhere work with dimensionless
//! ratios such as E/mc².

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Planck constant h (J·s), exact by the 2019 SI definition.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant ħ = h/2π (J·s).
pub const HBAR: f64 = PLANCK / TAU;

/// Speed of light in vacuum c (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Fine-structure constant α.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

/// Electron mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Elementary charge (C), exact; doubles as J per eV.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// The physical constants used throughout the crate.
///
/// Derived members (`electron_mass_energy_ev`, `compton_wavelength_reduced`)
/// are computed from the primary ones so the definitional identities hold
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant ħ (J·s)
    pub hbar: f64,
    /// Speed of light c (m/s)
    pub c: f64,
    /// Fine-structure constant α
    pub alpha: f64,
    /// Electron mass m (kg)
    pub electron_mass: f64,
    /// Electron rest energy mc² (eV)
    pub electron_mass_energy_ev: f64,
    /// Reduced Compton wavelength of the electron ħ/(mc) (m)
    pub compton_wavelength_reduced: f64,
}

/// CODATA 2018 values.
pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: HBAR,
    c: SPEED_OF_LIGHT,
    alpha: FINE_STRUCTURE,
    electron_mass: ELECTRON_MASS,
    electron_mass_energy_ev: ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT / ELEMENTARY_CHARGE,
    compton_wavelength_reduced: HBAR / (ELECTRON_MASS * SPEED_OF_LIGHT),
};

/// Fraction of mc² below which the low-energy limit is considered cleanly
/// applicable.
pub const LOW_ENERGY_VALID_FRACTION: f64 = 0.1;

/// Applicability of the low-energy amplitude at a given photon energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidityStatus {
    /// E < 0.1·mc²: far below pair creation.
    Valid,
    /// 0.1·mc² ≤ E < mc²: approaching the threshold; results degrade.
    Marginal,
    /// E ≥ mc²: real pair creation is open; the low-energy form does not apply.
    Invalid,
}

/// Center-of-momentum photon energy (per photon).
///
/// In the COM frame the two photons counter-propagate with equal energy, so a
/// single positive scalar fixes the kinematics together with the scattering
/// angle. A `forced` energy bypasses the pair-creation gate in the scattering
/// operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonEnergy {
    ev: f64,
    forced: bool,
}

impl PhotonEnergy {
    /// Photon energy from a value in eV. Must be positive and finite.
    pub fn from_ev(ev: f64) -> Result<Self> {
        if !(ev.is_finite() && ev > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "photon energy must be positive and finite, got {ev} eV"
            )));
        }
        Ok(Self { ev, forced: false })
    }

    /// Like [`PhotonEnergy::from_ev`], but marks the energy for forced
    /// evaluation: gated operations proceed even when the validity status is
    /// [`ValidityStatus::Invalid`].
    pub fn from_ev_forced(ev: f64) -> Result<Self> {
        Ok(Self {
            forced: true,
            ..Self::from_ev(ev)?
        })
    }

    pub fn ev(&self) -> f64 {
        self.ev
    }

    pub fn joules(&self) -> f64 {
        self.ev * ELEMENTARY_CHARGE
    }

    pub fn is_forced(&self) -> bool {
        self.forced
    }

    /// Reduced wavelength λ̄ = ħc/E (m).
    pub fn reduced_wavelength(&self) -> f64 {
        HBAR * SPEED_OF_LIGHT / self.joules()
    }

    /// Dimensionless ratio E/mc².
    pub fn over_electron_rest_energy(&self) -> f64 {
        self.ev / CODATA_2018.electron_mass_energy_ev
    }

    /// Gate used by the scattering operations: errors when the status is
    /// Invalid and the energy was not constructed for forced evaluation.
    pub fn require_computable(&self) -> Result<()> {
        if validate_low_energy(*self) == ValidityStatus::Invalid && !self.forced {
            return Err(Error::EnergyAboveThreshold {
                energy_ev: self.ev,
                threshold_ev: CODATA_2018.electron_mass_energy_ev,
            });
        }
        Ok(())
    }
}

/// Photon energy from the conventional optics wavelength λ: E = 2πħc/λ.
pub fn energy_from_wavelength(lambda_m: f64) -> Result<PhotonEnergy> {
    if !(lambda_m.is_finite() && lambda_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "wavelength must be positive and finite, got {lambda_m} m"
        )));
    }
    PhotonEnergy::from_ev(PLANCK * SPEED_OF_LIGHT / (lambda_m * ELEMENTARY_CHARGE))
}

/// Photon energy from the reduced wavelength λ̄: E = ħc/λ̄.
pub fn energy_from_reduced_wavelength(lambda_bar_m: f64) -> Result<PhotonEnergy> {
    if !(lambda_bar_m.is_finite() && lambda_bar_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "reduced wavelength must be positive and finite, got {lambda_bar_m} m"
        )));
    }
    PhotonEnergy::from_ev(HBAR * SPEED_OF_LIGHT / (lambda_bar_m * ELEMENTARY_CHARGE))
}

/// Classify a photon energy against the pair-creation threshold.
pub fn validate_low_energy(energy: PhotonEnergy) -> ValidityStatus {
    let mc2 = CODATA_2018.electron_mass_energy_ev;
    let ev = energy.ev();
    if ev < LOW_ENERGY_VALID_FRACTION * mc2 {
        ValidityStatus::Valid
    } else if ev < mc2 {
        ValidityStatus::Marginal
    } else {
        ValidityStatus::Invalid
    }
}
