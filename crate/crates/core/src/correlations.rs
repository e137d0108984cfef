//! Delayed-coincidence correlations of the two-photon in-state and the
//! beam-splitter (Hong-Ou-Mandel) two-photon simulator.
//!
//! The coincidence observable is the closed plane-wave form
//! g = 1 + sin(2φ)·cos(2δ/λ̄ + ρ), normalized to unit mean over one period of
//! the separation δ; the time dependence cancels for plane-wave modes.

use num_complex::Complex64;

use crate::constants::PhotonEnergy;
use crate::error::{Error, Result};
use crate::scattering::TwoPhotonInState;

/// Signed separation of the two detection points projected onto the beam
/// direction (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparationAlongBeam(f64);

impl SeparationAlongBeam {
    pub fn new(delta_m: f64) -> Result<Self> {
        if !delta_m.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "separation must be finite, got {delta_m}"
            )));
        }
        Ok(Self(delta_m))
    }

    pub fn meters(&self) -> f64 {
        self.0
    }

    pub fn negated(&self) -> Self {
        Self(-self.0)
    }
}

/// Which polarization each detector selects. The photons always carry
/// opposite polarizations, so only the two mixed configurations can fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectorPolarizations {
    /// In-plane (2) at x, perpendicular (1) at x′: the reference configuration.
    InPlaneThenPerp,
    /// Perpendicular (1) at x, in-plane (2) at x′: exchanges x and x′.
    PerpThenInPlane,
    /// Both perpendicular: never coincides.
    BothPerp,
    /// Both in-plane: never coincides.
    BothInPlane,
}

/// Normalized delayed-coincidence rate g ∈ [0, 2] for detecting polarization 2
/// at x and polarization 1 at x′ with beam-axis separation δ:
/// g = 1 + sin(2φ)·cos(2δ/λ̄ + ρ).
pub fn coincidence_probability(
    state: TwoPhotonInState,
    energy: PhotonEnergy,
    sep: SeparationAlongBeam,
) -> f64 {
    let phase = 2.0 * sep.meters() / energy.reduced_wavelength() + state.rho();
    1.0 + (2.0 * state.phi()).sin() * phase.cos()
}

/// The exchanged detector configuration (polarization 1 at x, 2 at x′):
/// identical to [`coincidence_probability`] at −δ, by the same code path.
pub fn coincidence_probability_swapped(
    state: TwoPhotonInState,
    energy: PhotonEnergy,
    sep: SeparationAlongBeam,
) -> f64 {
    coincidence_probability(state, energy, sep.negated())
}

/// Coincidence rate for an arbitrary detector-polarization configuration.
/// Equal-polarization configurations never fire and return 0.
pub fn coincidence_probability_for(
    state: TwoPhotonInState,
    energy: PhotonEnergy,
    sep: SeparationAlongBeam,
    config: DetectorPolarizations,
) -> f64 {
    match config {
        DetectorPolarizations::InPlaneThenPerp => coincidence_probability(state, energy, sep),
        DetectorPolarizations::PerpThenInPlane => {
            coincidence_probability_swapped(state, energy, sep)
        }
        DetectorPolarizations::BothPerp | DetectorPolarizations::BothInPlane => 0.0,
    }
}

/// One side of the beam splitter, labeled counter-clockwise: a and b are
/// inputs, c and d outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    A,
    B,
    C,
    D,
}

impl Port {
    const ALL: [Port; 4] = [Port::A, Port::B, Port::C, Port::D];

    fn index(self) -> usize {
        match self {
            Port::A => 0,
            Port::B => 1,
            Port::C => 2,
            Port::D => 3,
        }
    }
}

/// A normalized two-photon state over ordered port pairs (photon 1's port,
/// photon 2's port).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonModeState {
    amp: [[Complex64; 4]; 4],
}

impl TwoPhotonModeState {
    /// Build a state from (port₁, port₂, amplitude) entries; repeated pairs
    /// accumulate. The result is normalized to unit total probability.
    pub fn from_amplitudes(entries: &[(Port, Port, Complex64)]) -> Result<Self> {
        let mut amp = [[Complex64::ZERO; 4]; 4];
        for &(p1, p2, a) in entries {
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::InvalidArgument(
                    "mode amplitudes must be finite".to_string(),
                ));
            }
            amp[p1.index()][p2.index()] += a;
        }
        let norm_sqr: f64 = amp
            .iter()
            .flatten()
            .map(num_complex::Complex64::norm_sqr)
            .sum();
        if norm_sqr <= 0.0 {
            return Err(Error::InvalidArgument(
                "mode state must have nonzero norm".to_string(),
            ));
        }
        let scale = norm_sqr.sqrt().recip();
        for row in &mut amp {
            for a in row {
                *a *= scale;
            }
        }
        Ok(Self { amp })
    }

    /// (|a⟩₁|b⟩₂ − |b⟩₁|a⟩₂)/√2 — antisymmetric in the mode labels.
    pub fn antisymmetric_ab() -> Self {
        Self::from_amplitudes(&[
            (Port::A, Port::B, Complex64::ONE),
            (Port::B, Port::A, -Complex64::ONE),
        ])
        .expect("fixed construction")
    }

    /// (|a⟩₁|b⟩₂ + |b⟩₁|a⟩₂)/√2 — symmetric in the mode labels.
    pub fn symmetric_ab() -> Self {
        Self::from_amplitudes(&[
            (Port::A, Port::B, Complex64::ONE),
            (Port::B, Port::A, Complex64::ONE),
        ])
        .expect("fixed construction")
    }

    /// |a⟩₁|b⟩₂ — the distinguishable product in-state.
    pub fn product_ab() -> Self {
        Self::from_amplitudes(&[(Port::A, Port::B, Complex64::ONE)]).expect("fixed construction")
    }

    pub fn amplitude(&self, p1: Port, p2: Port) -> Complex64 {
        self.amp[p1.index()][p2.index()]
    }

    pub fn norm(&self) -> f64 {
        self.amp
            .iter()
            .flatten()
            .map(num_complex::Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    fn supported_only_on(&self, ports: [Port; 2]) -> bool {
        Port::ALL.iter().all(|&p1| {
            Port::ALL.iter().all(|&p2| {
                ports.contains(&p1) && ports.contains(&p2)
                    || self.amp[p1.index()][p2.index()] == Complex64::ZERO
            })
        })
    }
}

// 50/50 convention: a → (c + i·d)/√2, b → (i·c + d)/√2. Any lossless choice
// reproduces the same output statistics up to a global phase.
fn splitter_coefficient(input: Port, output: Port) -> Complex64 {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    match (input, output) {
        (Port::A, Port::C) | (Port::B, Port::D) => Complex64::new(inv_sqrt2, 0.0),
        (Port::A, Port::D) | (Port::B, Port::C) => Complex64::new(0.0, inv_sqrt2),
        _ => Complex64::ZERO,
    }
}

/// Send a two-photon state supported on the input ports {a, b} through the
/// 50/50 splitter. Norm is preserved (the port map is unitary).
pub fn beam_splitter_transform(in_state: &TwoPhotonModeState) -> Result<TwoPhotonModeState> {
    if !in_state.supported_only_on([Port::A, Port::B]) {
        return Err(Error::InvalidArgument(
            "beam-splitter input must be supported on ports {a, b}".to_string(),
        ));
    }
    let mut amp = [[Complex64::ZERO; 4]; 4];
    for p1 in [Port::A, Port::B] {
        for p2 in [Port::A, Port::B] {
            let a_in = in_state.amplitude(p1, p2);
            if a_in == Complex64::ZERO {
                continue;
            }
            for q1 in [Port::C, Port::D] {
                for q2 in [Port::C, Port::D] {
                    amp[q1.index()][q2.index()] +=
                        a_in * splitter_coefficient(p1, q1) * splitter_coefficient(p2, q2);
                }
            }
        }
    }
    Ok(TwoPhotonModeState { amp })
}

/// Detection statistics behind the splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomStatistics {
    /// One photon at c and one at d.
    pub p_coincidence: f64,
    /// Both photons at c.
    pub p_both_c: f64,
    /// Both photons at d.
    pub p_both_d: f64,
}

/// Probabilities of the three detection patterns for a state supported on the
/// output ports {c, d}. They sum to one.
pub fn hom_statistics(out_state: &TwoPhotonModeState) -> Result<HomStatistics> {
    if !out_state.supported_only_on([Port::C, Port::D]) {
        return Err(Error::InvalidArgument(
            "HOM statistics need a state supported on ports {c, d}".to_string(),
        ));
    }
    Ok(HomStatistics {
        p_coincidence: out_state.amplitude(Port::C, Port::D).norm_sqr()
            + out_state.amplitude(Port::D, Port::C).norm_sqr(),
        p_both_c: out_state.amplitude(Port::C, Port::C).norm_sqr(),
        p_both_d: out_state.amplitude(Port::D, Port::D).norm_sqr(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_quadrature;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ev(x: f64) -> PhotonEnergy {
        PhotonEnergy::from_ev(x).unwrap()
    }

    fn sep(x: f64) -> SeparationAlongBeam {
        SeparationAlongBeam::new(x).unwrap()
    }

    #[test]
    fn bell_minus_coincidence_vanishes_at_zero_separation() {
        let g = coincidence_probability(TwoPhotonInState::bell_minus(), ev(2.48), sep(0.0));
        assert_eq!(g, 0.0);
    }

    #[test]
    fn product_states_are_flat() {
        let e = ev(2.48);
        for delta in [-1e-6, 0.0, 3.7e-7] {
            let g12 = coincidence_probability(TwoPhotonInState::product_12(), e, sep(delta));
            assert_eq!(g12, 1.0);
            let g21 = coincidence_probability(TwoPhotonInState::product_21(), e, sep(delta));
            assert!((g21 - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_plus_vanishes_at_half_period() {
        // 2δ/λ̄ = π → cos(π) = −1
        let e = ev(2.48);
        let delta = 0.5 * PI * e.reduced_wavelength();
        let g = coincidence_probability(TwoPhotonInState::bell_plus(), e, sep(delta));
        assert!(g.abs() < 1e-14);
    }

    #[test]
    fn swapped_equals_negated_separation() {
        let e = ev(1.0);
        let state = TwoPhotonInState::new(0.6, PI / 3.0).unwrap();
        for delta in [0.0, 1.3e-7, -4.2e-8] {
            let swapped = coincidence_probability_swapped(state, e, sep(delta));
            let negated = coincidence_probability(state, e, sep(-delta));
            assert_eq!(swapped, negated);
        }
        // ρ ≠ 0, π makes the swap matter
        let d = sep(1.3e-7);
        assert!(
            (coincidence_probability(state, e, d)
                - coincidence_probability_swapped(state, e, d))
            .abs()
                > 1e-3
        );
    }

    #[test]
    fn equal_polarization_detectors_never_fire() {
        let e = ev(1.0);
        let state = TwoPhotonInState::bell_plus();
        let d = sep(2e-7);
        assert_eq!(
            coincidence_probability_for(state, e, d, DetectorPolarizations::BothPerp),
            0.0
        );
        assert_eq!(
            coincidence_probability_for(state, e, d, DetectorPolarizations::BothInPlane),
            0.0
        );
        assert_eq!(
            coincidence_probability_for(state, e, d, DetectorPolarizations::InPlaneThenPerp),
            coincidence_probability(state, e, d)
        );
        assert_eq!(
            coincidence_probability_for(state, e, d, DetectorPolarizations::PerpThenInPlane),
            coincidence_probability_swapped(state, e, d)
        );
    }

    #[test]
    fn coincidence_mean_over_period_is_unity() {
        let e = ev(2.48);
        let period = PI * e.reduced_wavelength();
        for state in [
            TwoPhotonInState::bell_plus(),
            TwoPhotonInState::bell_minus(),
            TwoPhotonInState::new(0.3, 1.0).unwrap(),
        ] {
            let mean = adaptive_quadrature(
                |d| coincidence_probability(state, e, sep(d)),
                0.0,
                period,
                1e-13,
                1e-18,
            ) / period;
            assert!((mean - 1.0).abs() < 1e-12, "mean = {mean}");
        }
    }

    #[test]
    fn modulation_depth_equals_concurrence() {
        let e = ev(2.48);
        let lambda_bar = e.reduced_wavelength();
        for i in 0..=8 {
            let phi = FRAC_PI_2 * i as f64 / 8.0;
            for rho in [0.0, 1.1, PI] {
                let state = TwoPhotonInState::new(phi, rho).unwrap();
                // extremes of cos(2δ/λ̄ + ρ) at 2δ/λ̄ + ρ ∈ {0, π}
                let d_max = sep(0.5 * lambda_bar * -rho);
                let d_min = sep(0.5 * lambda_bar * (PI - rho));
                let g_hi = coincidence_probability(state, e, d_max);
                let g_lo = coincidence_probability(state, e, d_min);
                let depth = 0.5 * (g_hi - g_lo).abs();
                assert!(
                    (depth - crate::scattering::concurrence(state)).abs() < 1e-12,
                    "phi={phi} rho={rho}: depth {depth}"
                );
            }
        }
    }

    #[test]
    fn separation_rejects_non_finite() {
        assert!(SeparationAlongBeam::new(f64::NAN).is_err());
        assert!(SeparationAlongBeam::new(f64::INFINITY).is_err());
    }

    #[test]
    fn antisymmetric_state_antibunches() {
        let out = beam_splitter_transform(&TwoPhotonModeState::antisymmetric_ab()).unwrap();
        // (|c⟩₁|d⟩₂ − |d⟩₁|c⟩₂)/√2 up to a global phase
        let cd = out.amplitude(Port::C, Port::D);
        let dc = out.amplitude(Port::D, Port::C);
        assert!((cd + dc).norm() < 1e-15);
        assert!((cd.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let stats = hom_statistics(&out).unwrap();
        assert!((stats.p_coincidence - 1.0).abs() < 1e-14);
        assert!(stats.p_both_c.abs() < 1e-14);
        assert!(stats.p_both_d.abs() < 1e-14);
    }

    #[test]
    fn symmetric_state_bunches() {
        let out = beam_splitter_transform(&TwoPhotonModeState::symmetric_ab()).unwrap();
        // (i/√2)(|c⟩₁|c⟩₂ + |d⟩₁|d⟩₂)
        let cc = out.amplitude(Port::C, Port::C);
        let dd = out.amplitude(Port::D, Port::D);
        let expect = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        assert!((cc - expect).norm() < 1e-15);
        assert!((dd - expect).norm() < 1e-15);
        let stats = hom_statistics(&out).unwrap();
        assert!(stats.p_coincidence.abs() < 1e-14);
        assert!((stats.p_both_c - 0.5).abs() < 1e-14);
        assert!((stats.p_both_d - 0.5).abs() < 1e-14);
    }

    #[test]
    fn product_state_coincides_half_the_time() {
        let out = beam_splitter_transform(&TwoPhotonModeState::product_ab()).unwrap();
        let stats = hom_statistics(&out).unwrap();
        assert!((stats.p_coincidence - 0.5).abs() < 1e-14);
        assert!((stats.p_both_c - 0.25).abs() < 1e-14);
        assert!((stats.p_both_d - 0.25).abs() < 1e-14);
    }

    #[test]
    fn splitter_rejects_output_side_support() {
        let bad = TwoPhotonModeState::from_amplitudes(&[(Port::C, Port::B, Complex64::ONE)])
            .unwrap();
        assert!(beam_splitter_transform(&bad).is_err());
    }

    #[test]
    fn hom_statistics_reject_input_side_support() {
        assert!(hom_statistics(&TwoPhotonModeState::product_ab()).is_err());
    }

    #[test]
    fn splitter_is_invertible_up_to_global_phase() {
        // applying the adjoint port map recovers the input
        let adjoint = |state: &TwoPhotonModeState| {
            let mut amp = [[Complex64::ZERO; 4]; 4];
            for q1 in [Port::C, Port::D] {
                for q2 in [Port::C, Port::D] {
                    let a_out = state.amplitude(q1, q2);
                    for p1 in [Port::A, Port::B] {
                        for p2 in [Port::A, Port::B] {
                            amp[p1.index()][p2.index()] += a_out
                                * splitter_coefficient(p1, q1).conj()
                                * splitter_coefficient(p2, q2).conj();
                        }
                    }
                }
            }
            TwoPhotonModeState { amp }
        };
        for input in [
            TwoPhotonModeState::antisymmetric_ab(),
            TwoPhotonModeState::symmetric_ab(),
            TwoPhotonModeState::product_ab(),
        ] {
            let out = beam_splitter_transform(&input).unwrap();
            let back = adjoint(&out);
            for p1 in Port::ALL {
                for p2 in Port::ALL {
                    assert!((back.amplitude(p1, p2) - input.amplitude(p1, p2)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn zero_state_rejected() {
        assert!(TwoPhotonModeState::from_amplitudes(&[]).is_err());
        assert!(
            TwoPhotonModeState::from_amplitudes(&[(Port::A, Port::B, Complex64::ZERO)]).is_err()
        );
    }

    proptest! {
        #[test]
        fn coincidence_bounded_and_periodic(
            phi in 0.0..=FRAC_PI_2,
            rho in -FRAC_PI_2..(3.0 * FRAC_PI_2),
            delta in -1e-5f64..1e-5,
        ) {
            let e = ev(2.48);
            let state = TwoPhotonInState::new(phi, rho).unwrap();
            let g = coincidence_probability(state, e, sep(delta));
            prop_assert!((0.0..=2.0).contains(&g));
            let period = PI * e.reduced_wavelength();
            let g_shift = coincidence_probability(state, e, sep(delta + period));
            prop_assert!((g - g_shift).abs() < 1e-9);
        }

        #[test]
        fn splitter_preserves_norm(
            re1 in -1.0f64..1.0, im1 in -1.0f64..1.0,
            re2 in -1.0f64..1.0, im2 in -1.0f64..1.0,
            re3 in -1.0f64..1.0, im3 in -1.0f64..1.0,
        ) {
            let entries = [
                (Port::A, Port::B, Complex64::new(re1, im1)),
                (Port::B, Port::A, Complex64::new(re2, im2)),
                (Port::A, Port::A, Complex64::new(re3, im3)),
            ];
            prop_assume!(entries.iter().any(|(_, _, a)| a.norm_sqr() > 1e-12));
            let input = TwoPhotonModeState::from_amplitudes(&entries).unwrap();
            let out = beam_splitter_transform(&input).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < 1e-14);
            let stats = hom_statistics(&out).unwrap();
            let total = stats.p_coincidence + stats.p_both_c + stats.p_both_d;
            prop_assert!((total - 1.0).abs() < 1e-14);
            prop_assert!(stats.p_coincidence >= 0.0 && stats.p_coincidence <= 1.0);
            prop_assert!(stats.p_both_c >= 0.0 && stats.p_both_c <= 1.0);
            prop_assert!(stats.p_both_d >= 0.0 && stats.p_both_d <= 1.0);
        }
    }
}
