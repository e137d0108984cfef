//! Scattering-matrix amplitudes: the pluggable mechanism abstraction, the
//! symmetry-completed amplitude table, and the built-in low-energy QED
//! mechanism.
//!
//! A mechanism provides the single base amplitude M_1212(E, θ); the remaining
//! nonzero components follow from rotational symmetry (index swap
//! M_2121 = M_1212, M_2112 = M_1221) and particle identity
//! (M_1221(E, θ) = M_1212(E, π − θ)). Components with equal outgoing
//! polarizations vanish by conservation of total angular momentum and are
//! never stored.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::constants::PhotonEnergy;
use crate::error::{Error, Result};

/// Linear polarization of one photon relative to the scattering plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarizationLabel {
    /// Perpendicular to the scattering plane (index 1).
    Perp = 1,
    /// In the scattering plane (index 2).
    InPlane = 2,
}

/// Dimensionless complex scattering amplitude.
pub type ComplexAmplitude = Complex64;

/// The nonzero scattering-matrix components at one (E, θ).
///
/// The swap-rule entries are exposed as accessors so their equality with the
/// stored pair holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeTable {
    /// M_1212(E, θ), the base amplitude M_θ.
    pub m_1212: ComplexAmplitude,
    /// M_1221(E, θ) = M_1212(E, π − θ).
    pub m_1221: ComplexAmplitude,
}

impl AmplitudeTable {
    /// M_2121 = M_1212 (rotation by 180° in the scattering plane).
    pub fn m_2121(&self) -> ComplexAmplitude {
        self.m_1212
    }

    /// M_2112 = M_1221.
    pub fn m_2112(&self) -> ComplexAmplitude {
        self.m_1221
    }

    /// Look up M_{ξ₁ξ₂ξ₃ξ₄}. Equal outgoing polarizations give the
    /// zero-by-symmetry entries; equal incoming polarizations are outside the
    /// table (the opposite-polarization in-state family never reaches them)
    /// and return None.
    pub fn component(
        &self,
        xi: [PolarizationLabel; 4],
    ) -> Option<ComplexAmplitude> {
        use PolarizationLabel::{InPlane, Perp};
        match xi {
            [Perp, InPlane, Perp, InPlane] => Some(self.m_1212),
            [Perp, InPlane, InPlane, Perp] => Some(self.m_1221),
            [InPlane, Perp, InPlane, Perp] => Some(self.m_2121()),
            [InPlane, Perp, Perp, InPlane] => Some(self.m_2112()),
            [Perp, InPlane, a, b] | [InPlane, Perp, a, b] if a == b => {
                Some(ComplexAmplitude::ZERO)
            }
            _ => None,
        }
    }
}

type BaseAmplitudeFn = dyn Fn(PhotonEnergy, f64) -> Result<ComplexAmplitude> + Send + Sync;

/// A scattering mechanism: a named provider of the base amplitude M_1212(E, θ).
///
/// Mechanisms are immutable after construction, cheap to clone, and safe to
/// share across threads.
#[derive(Clone)]
pub struct Mechanism {
    name: Arc<str>,
    base: Arc<BaseAmplitudeFn>,
}

impl fmt::Debug for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mechanism").field("name", &self.name).finish()
    }
}

impl Mechanism {
    /// Wrap an arbitrary base-amplitude function.
    pub fn from_fn<F>(name: &str, base: F) -> Self
    where
        F: Fn(PhotonEnergy, f64) -> Result<ComplexAmplitude> + Send + Sync + 'static,
    {
        Self {
            name: Arc::from(name),
            base: Arc::new(base),
        }
    }

    /// The built-in low-energy QED mechanism (virtual electron-positron pairs).
    pub fn qed_low_energy() -> Self {
        Self::from_fn("qed-low-energy", qed_base_amplitude)
    }

    /// Unit-magnitude amplitude with phase `delta` on the forward half
    /// (cos θ > 0) and phase 0 on the backward half, so Δβ(θ) = `delta` for
    /// θ < π/2. Exercises the regimes the QED mechanism cannot reach.
    pub fn phase_step(name: &str, delta: f64) -> Self {
        Self::from_fn(name, move |_, theta| {
            let c = theta.cos();
            let phase = if c > 0.0 {
                delta
            } else if c < 0.0 {
                0.0
            } else {
                0.5 * delta
            };
            Ok(Complex64::from_polar(1.0, phase))
        })
    }

    /// Unit-magnitude amplitude with angle-proportional phase e^{iθ},
    /// so Δβ(θ) = 2θ − π varies across the range.
    pub fn angle_phase() -> Self {
        Self::from_fn("synthetic-angle-phase", |_, theta| {
            Ok(Complex64::from_polar(1.0, theta))
        })
    }

    /// Identically vanishing amplitude.
    pub fn null() -> Self {
        Self::from_fn("null", |_, _| Ok(Complex64::ZERO))
    }

    /// Resolve a mechanism by its registry name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "qed-low-energy" => Ok(Self::qed_low_energy()),
            "synthetic-phase-half-pi" => Ok(Self::phase_step("synthetic-phase-half-pi", FRAC_PI_2)),
            "synthetic-phase-pi" => Ok(Self::phase_step("synthetic-phase-pi", PI)),
            "synthetic-angle-phase" => Ok(Self::angle_phase()),
            "null" => Ok(Self::null()),
            other => Err(Error::UnknownMechanism(other.to_string())),
        }
    }

    /// Names accepted by [`Mechanism::by_name`].
    pub fn known_names() -> &'static [&'static str] {
        &[
            "qed-low-energy",
            "synthetic-phase-half-pi",
            "synthetic-phase-pi",
            "synthetic-angle-phase",
            "null",
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluate M_1212(E, θ). Validates the angle and the finiteness of the
    /// produced amplitude.
    pub fn base_amplitude(&self, energy: PhotonEnergy, theta: f64) -> Result<ComplexAmplitude> {
        check_theta(theta)?;
        let m = (self.base)(energy, theta)?;
        if !(m.re.is_finite() && m.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "mechanism `{}` produced a non-finite amplitude at theta = {theta}",
                self.name
            )));
        }
        Ok(m)
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
        return Err(Error::InvalidArgument(format!(
            "scattering angle must lie in [0, π], got {theta}"
        )));
    }
    Ok(())
}

/// Dimensionless energy factor K(E) = (4α²/45)·(E/mc²)⁴ of the low-energy QED
/// amplitude.
pub fn qed_energy_factor(energy: PhotonEnergy) -> f64 {
    let alpha = crate::constants::CODATA_2018.alpha;
    let ratio = energy.over_electron_rest_energy();
    4.0 * alpha * alpha * ratio.powi(4) / 45.0
}

/// Low-energy QED base amplitude
/// M_1212(E, θ) = −i·K(E)·(31 + 22 cos θ + 3 cos² θ).
///
/// Purely imaginary with iM_1212 > 0; the angular bracket never drops below
/// 12, so the amplitude has no zeros. Energies at or above the pair-creation
/// threshold are rejected unless the energy was constructed for forced
/// evaluation.
pub fn qed_base_amplitude(energy: PhotonEnergy, theta: f64) -> Result<ComplexAmplitude> {
    check_theta(theta)?;
    energy.require_computable()?;
    let c = theta.cos();
    let bracket = 31.0 + 22.0 * c + 3.0 * c * c;
    Ok(Complex64::new(0.0, -(qed_energy_factor(energy) * bracket)))
}

/// Complete the nonzero amplitude table at (E, θ) from the mechanism's base
/// amplitude: m_1212 from θ, m_1221 from π − θ.
pub fn amplitude_table(
    mech: &Mechanism,
    energy: PhotonEnergy,
    theta: f64,
) -> Result<AmplitudeTable> {
    check_theta(theta)?;
    Ok(AmplitudeTable {
        m_1212: mech.base_amplitude(energy, theta)?,
        m_1221: mech.base_amplitude(energy, PI - theta)?,
    })
}

/// Relative phase Δβ(θ) = arg(M_θ · M̄_{π−θ}), normalized to [0, 2π).
///
/// Errors if either amplitude vanishes; the phase is undefined there and the
/// interference term it controls is zero regardless (callers that only need
/// the regime use [`crate::scattering::classify_regime`], which maps the
/// degenerate case to entanglement independence).
pub fn delta_beta(mech: &Mechanism, energy: PhotonEnergy, theta: f64) -> Result<f64> {
    let table = amplitude_table(mech, energy, theta)?;
    if table.m_1212.norm_sqr() == 0.0 || table.m_1221.norm_sqr() == 0.0 {
        return Err(Error::DegeneratePhase(format!(
            "amplitude vanishes at theta = {theta} for mechanism `{}`",
            mech.name()
        )));
    }
    let arg = (table.m_1212 * table.m_1221.conj()).arg();
    Ok(if arg < 0.0 { arg + 2.0 * PI } else { arg })
}
