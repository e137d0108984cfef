//! The two-photon in-state, the three differential-cross-section evaluation
//! paths, interference-regime classification, and total cross sections.
//!
//! The in-state
//!
//! ```text
//! |Ψ⟩ = cos φ |p₁,1; p₂,2⟩ + e^{iρ} sin φ |p₁,2; p₂,1⟩
//! ```
//!
//! carries its polarization entanglement in (φ, ρ). Every DCS below is the
//! same observable computed along a different algebraic route: the general
//! sum over outgoing polarizations, the reduced single-element form, and (for
//! the QED mechanism) the closed angular form. They agree to near machine
//! precision and serve as mutual oracles.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::amplitudes::{amplitude_table, check_theta, Mechanism};
use crate::constants::{PhotonEnergy, CODATA_2018};
use crate::error::{Error, Result};
use crate::quadrature::adaptive_quadrature;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Relative quadrature tolerance for total cross sections.
const TOTAL_XSEC_REL_TOL: f64 = 1e-10;

/// Tolerance on cos Δβ for regime classification.
const REGIME_TOLERANCE: f64 = 1e-12;

/// Polarization state of the photon pair, parametrized by φ ∈ [0, π/2] and
/// ρ ∈ [−π/2, 3π/2).
///
/// φ outside its interval is rejected (wrapping would alias distinct states);
/// ρ is wrapped into its fundamental interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonInState {
    phi: f64,
    rho: f64,
}

impl TwoPhotonInState {
    pub fn new(phi: f64, rho: f64) -> Result<Self> {
        if !(phi.is_finite() && (0.0..=FRAC_PI_2).contains(&phi)) {
            return Err(Error::InvalidArgument(format!(
                "phi must lie in [0, π/2], got {phi}"
            )));
        }
        if !rho.is_finite() {
            return Err(Error::InvalidArgument(format!("rho must be finite, got {rho}")));
        }
        Ok(Self { phi, rho: wrap_rho(rho) })
    }

    /// Symmetric Bell state |Ψ⁺⟩: (φ, ρ) = (π/4, 0).
    pub fn bell_plus() -> Self {
        Self { phi: FRAC_PI_4, rho: 0.0 }
    }

    /// Antisymmetric Bell state |Ψ⁻⟩: (φ, ρ) = (π/4, π).
    pub fn bell_minus() -> Self {
        Self { phi: FRAC_PI_4, rho: PI }
    }

    /// Product state |p₁,1; p₂,2⟩ (φ = 0).
    pub fn product_12() -> Self {
        Self { phi: 0.0, rho: 0.0 }
    }

    /// Product state |p₁,2; p₂,1⟩ (φ = π/2).
    pub fn product_21() -> Self {
        Self { phi: FRAC_PI_2, rho: 0.0 }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

fn wrap_rho(rho: f64) -> f64 {
    (rho + FRAC_PI_2).rem_euclid(TAU) - FRAC_PI_2
}

/// Interference coefficient s = sin(2φ) cos ρ ∈ [−1, 1] multiplying the cross
/// term of the reduced DCS.
pub fn entanglement_weight(state: TwoPhotonInState) -> f64 {
    (2.0 * state.phi).sin() * state.rho.cos()
}

/// Concurrence of the in-state: sin(2φ), independent of ρ.
pub fn concurrence(state: TwoPhotonInState) -> f64 {
    (2.0 * state.phi).sin()
}

/// A differential cross section value, carried in SI (m²/sr) together with
/// its reading in the natural unit U = α⁴E⁶ħ²/(45²π²m⁸c¹⁴).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcsValue {
    si: f64,
    natural_u: f64,
}

impl DcsValue {
    pub fn si_m2_per_sr(&self) -> f64 {
        self.si
    }

    pub fn natural_u(&self) -> f64 {
        self.natural_u
    }

    fn from_polarization_sum(sum: f64, energy: PhotonEnergy) -> Self {
        debug_assert!(sum >= 0.0 && sum.is_finite());
        let si = dcs_prefactor_si(energy) * sum;
        Self { si, natural_u: si / natural_dcs_unit(energy) }
    }

    fn from_natural(natural_u: f64, energy: PhotonEnergy) -> Self {
        debug_assert!(natural_u >= 0.0 && natural_u.is_finite());
        Self { si: natural_u * natural_dcs_unit(energy), natural_u }
    }
}

/// The c²ħ²/(64(2π)²E²) prefactor in m²/sr: (λ̄/(16π))² with λ̄ = ħc/E.
pub fn dcs_prefactor_si(energy: PhotonEnergy) -> f64 {
    let lambda_bar = energy.reduced_wavelength();
    lambda_bar * lambda_bar / (256.0 * PI * PI)
}

/// The natural DCS unit U = α⁴E⁶ħ²/(45²π²m⁸c¹⁴) in m²/sr, evaluated as
/// α⁴·(E/mc²)⁶·λ_e²/(45²π²).
pub fn natural_dcs_unit(energy: PhotonEnergy) -> f64 {
    let k = CODATA_2018;
    let ratio = energy.over_electron_rest_energy();
    let lambda_e = k.compton_wavelength_reduced;
    k.alpha.powi(4) * ratio.powi(6) * lambda_e * lambda_e / (2025.0 * PI * PI)
}

/// Dependence of the DCS on the degree of entanglement at one angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// cos Δβ > 0: the symmetric Bell state scatters strongest (case 1).
    FavorsSymmetric,
    /// cos Δβ = 0 or a vanishing amplitude: no entanglement dependence (case 2).
    EntanglementIndependent,
    /// cos Δβ < 0: the antisymmetric Bell state scatters strongest (case 3).
    FavorsAntisymmetric,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::FavorsSymmetric => "FavorsSymmetric",
            Regime::EntanglementIndependent => "EntanglementIndependent",
            Regime::FavorsAntisymmetric => "FavorsAntisymmetric",
        })
    }
}

/// DCS by the general route: prefactor × Σ_{ξ₃ξ₄} |cos φ M_{12ξ₃ξ₄} +
/// e^{iρ} sin φ M_{21ξ₃ξ₄}|² over the two nonzero outgoing pairs.
pub fn dcs_general(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
    theta: f64,
) -> Result<DcsValue> {
    energy.require_computable()?;
    let table = amplitude_table(mech, energy, theta)?;
    let phase = Complex64::from_polar(1.0, state.rho);
    let (cos_phi, sin_phi) = (state.phi.cos(), state.phi.sin());
    // outgoing (ξ₃, ξ₄) = (1, 2) pairs M_1212 with M_2112; (2, 1) pairs
    // M_1221 with M_2121
    let out_12 = cos_phi * table.m_1212 + phase * sin_phi * table.m_2112();
    let out_21 = cos_phi * table.m_1221 + phase * sin_phi * table.m_2121();
    let sum = out_12.norm_sqr() + out_21.norm_sqr();
    Ok(DcsValue::from_polarization_sum(sum, energy))
}

/// DCS by the reduced route: prefactor × (|M_θ|² + |M_{π−θ}|² +
/// 2 sin(2φ) cos ρ cos Δβ |M_θ||M_{π−θ}|), evaluated in the rearrangement
/// (|M_θ| − |M_{π−θ}|)² + 2|M_θ||M_{π−θ}|(1 + s cos Δβ), whose terms are each
/// non-negative.
pub fn dcs_reduced(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
    theta: f64,
) -> Result<DcsValue> {
    energy.require_computable()?;
    let table = amplitude_table(mech, energy, theta)?;
    let m_theta = table.m_1212.norm();
    let m_mirror = table.m_1221.norm();
    // a vanishing amplitude kills the interference term outright
    let cos_db = if m_theta == 0.0 || m_mirror == 0.0 {
        0.0
    } else {
        (table.m_1212 * table.m_1221.conj()).arg().cos()
    };
    let s = entanglement_weight(state);
    let diff = m_theta - m_mirror;
    let sum = diff * diff + 2.0 * m_theta * m_mirror * (1.0 + s * cos_db);
    Ok(DcsValue::from_polarization_sum(sum, energy))
}

/// DCS at θ = π/2, where Δβ = 0 and the reduced form collapses to
/// 2·prefactor·|M_{π/2}|²(1 + sin(2φ) cos ρ).
pub fn dcs_right_angle(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
) -> Result<DcsValue> {
    energy.require_computable()?;
    let m = mech.base_amplitude(energy, FRAC_PI_2)?.norm();
    let s = entanglement_weight(state);
    let sum = 2.0 * m * m * (1.0 + s);
    Ok(DcsValue::from_polarization_sum(sum, energy))
}

/// Closed angular form of the QED low-energy DCS:
///
/// ```text
/// dσ/dΩ = (U/8)·[(1 + s)(31 + 3cos²θ)² + (1 − s)·22²·cos²θ],  s = sin(2φ)cos ρ
/// ```
///
/// computed independently of the amplitude-table machinery; serves as the
/// analytic cross-check of [`dcs_general`] and [`dcs_reduced`] for the QED
/// mechanism.
pub fn dcs_qed_closed(
    state: TwoPhotonInState,
    energy: PhotonEnergy,
    theta: f64,
) -> Result<DcsValue> {
    check_theta(theta)?;
    energy.require_computable()?;
    let s = entanglement_weight(state);
    let c = theta.cos();
    let u = 31.0 + 3.0 * c * c;
    let v_sq = 484.0 * c * c;
    let bracket = (1.0 + s) * u * u + (1.0 - s) * v_sq;
    Ok(DcsValue::from_natural(bracket / 8.0, energy))
}

/// Classify the entanglement dependence at one angle from the sign of
/// cos Δβ(θ), with a ±1e-12 dead band mapped to entanglement independence.
/// Vanishing amplitudes (degenerate phase) also classify as independent: the
/// interference term is zero regardless.
pub fn classify_regime(mech: &Mechanism, energy: PhotonEnergy, theta: f64) -> Result<Regime> {
    let table = amplitude_table(mech, energy, theta)?;
    if table.m_1212.norm_sqr() == 0.0 || table.m_1221.norm_sqr() == 0.0 {
        return Ok(Regime::EntanglementIndependent);
    }
    let cos_db = (table.m_1212 * table.m_1221.conj()).arg().cos();
    Ok(if cos_db > REGIME_TOLERANCE {
        Regime::FavorsSymmetric
    } else if cos_db < -REGIME_TOLERANCE {
        Regime::FavorsAntisymmetric
    } else {
        Regime::EntanglementIndependent
    })
}

/// cos Δβ(θ), with vanishing amplitudes reported as None. Convenience for
/// classification reports.
pub fn cos_delta_beta(mech: &Mechanism, energy: PhotonEnergy, theta: f64) -> Result<Option<f64>> {
    let table = amplitude_table(mech, energy, theta)?;
    if table.m_1212.norm_sqr() == 0.0 || table.m_1221.norm_sqr() == 0.0 {
        return Ok(None);
    }
    Ok(Some((table.m_1212 * table.m_1221.conj()).arg().cos()))
}

/// Total cross section (m²): (1/2)·∫ dΩ dσ/dΩ with the analytic 2π azimuthal
/// factor and the identical-final-particle factor 1/2. Adaptive quadrature in
/// θ at relative tolerance 1e-10.
pub fn total_xsec(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
) -> Result<f64> {
    energy.require_computable()?;
    let mut failure: Option<Error> = None;
    let integral = adaptive_quadrature(
        |theta| match dcs_reduced(state, mech, energy, theta) {
            Ok(dcs) => dcs.si_m2_per_sr() * theta.sin(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        PI,
        TOTAL_XSEC_REL_TOL,
        0.0,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(0.5 * TAU * integral),
    }
}

/// Evaluate the reduced DCS over a θ grid, in parallel when the `parallel`
/// feature is enabled. Results are ordered like the input grid either way.
pub fn dcs_profile(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
    thetas: &[f64],
) -> Result<Vec<DcsValue>> {
    #[cfg(feature = "parallel")]
    {
        thetas
            .par_iter()
            .map(|&theta| dcs_reduced(state, mech, energy, theta))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        dcs_profile_sequential(state, mech, energy, thetas)
    }
}

/// Strictly sequential θ-grid evaluation; reference path for the parallel
/// sweep and for benches.
pub fn dcs_profile_sequential(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
    thetas: &[f64],
) -> Result<Vec<DcsValue>> {
    thetas
        .iter()
        .map(|&theta| dcs_reduced(state, mech, energy, theta))
        .collect()
}
