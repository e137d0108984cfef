//! Cross-route oracle tests: every value here is produced by an independent
//! computation (brute-force state algebra, closed-form angular integrals,
//! complex-amplitude expansion) and compared against the library path.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use ggscat::amplitudes::{amplitude_table, qed_energy_factor, Mechanism};
use ggscat::constants::{energy_from_wavelength, PhotonEnergy};
use ggscat::quadrature::adaptive_quadrature;
use ggscat::scattering::{
    concurrence, dcs_general, dcs_qed_closed, dcs_reduced, entanglement_weight, natural_dcs_unit,
    total_xsec, TwoPhotonInState,
};

fn ev(x: f64) -> PhotonEnergy {
    PhotonEnergy::from_ev(x).unwrap()
}

/// |a − b| within tol × max(|a|, |b|, scale). The scale argument keeps the
/// comparison meaningful at points where the observable cancels to zero.
fn assert_close(a: f64, b: f64, tol: f64, scale: f64, ctx: &str) {
    let denom = a.abs().max(b.abs()).max(scale);
    assert!(
        (a - b).abs() <= tol * denom,
        "{ctx}: {a} vs {b} (denom {denom})"
    );
}

/// Concurrence oracle: build the four-component state vector of
/// cos φ|12⟩ + e^{iρ} sin φ|21⟩, trace out photon 2, and evaluate
/// C = √(2(1 − Tr ρ₁²)).
#[allow(clippy::needless_range_loop)]
fn concurrence_from_density_matrix(phi: f64, rho: f64) -> f64 {
    // basis |11⟩, |12⟩, |21⟩, |22⟩
    let psi = [
        Complex64::ZERO,
        Complex64::new(phi.cos(), 0.0),
        Complex64::from_polar(phi.sin(), rho),
        Complex64::ZERO,
    ];
    // ρ₁[i][j] = Σ_k ψ[2i+k] ψ̄[2j+k]
    let mut rho1 = [[Complex64::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                rho1[i][j] += psi[2 * i + k] * psi[2 * j + k].conj();
            }
        }
    }
    let mut purity = Complex64::ZERO;
    for i in 0..2 {
        for j in 0..2 {
            purity += rho1[i][j] * rho1[j][i];
        }
    }
    (2.0 * (1.0 - purity.re)).max(0.0).sqrt()
}

#[test]
fn concurrence_matches_density_matrix_oracle() {
    for i in 0..=16 {
        let phi = FRAC_PI_2 * i as f64 / 16.0;
        for rho in [0.0, 0.7, FRAC_PI_2, PI, 4.0] {
            let state = TwoPhotonInState::new(phi, rho).unwrap();
            let expect = concurrence_from_density_matrix(phi, rho);
            assert_close(
                concurrence(state),
                expect,
                1e-12,
                1.0,
                &format!("concurrence(phi={phi}, rho={rho})"),
            );
        }
    }
    // frozen spot value: φ = π/8 → √2/2
    let c = concurrence(TwoPhotonInState::new(PI / 8.0, 0.3).unwrap());
    assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
}

/// General-route oracle written directly against the amplitude table with
/// explicit complex arithmetic, independently of the scattering module's
/// internals.
fn dcs_sum_by_hand(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
    theta: f64,
) -> f64 {
    let t = amplitude_table(mech, energy, theta).unwrap();
    let phase = Complex64::from_polar(1.0, state.rho());
    let c = Complex64::new(state.phi().cos(), 0.0);
    let s = Complex64::new(state.phi().sin(), 0.0);
    let out12 = c * t.m_1212 + phase * s * t.m_2112();
    let out21 = c * t.m_1221 + phase * s * t.m_2121();
    out12.norm_sqr() + out21.norm_sqr()
}

#[test]
fn triple_route_equivalence_on_dense_grid() {
    let energy = ev(2.48);
    let qed = Mechanism::qed_low_energy();
    let phis: [f64; 5] = [0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0, FRAC_PI_2];
    let rhos: [f64; 7] = [-FRAC_PI_2, -PI / 4.0, 0.0, FRAC_PI_2, 3.0 * PI / 4.0, PI, 5.0 * PI / 4.0];
    let prefactor = ggscat::scattering::dcs_prefactor_si(energy);
    for i in 0..=180 {
        let theta = PI * i as f64 / 180.0;
        // cancellation scale: the unsuppressed part of the sum at this angle
        let scale = prefactor
            * dcs_sum_by_hand(TwoPhotonInState::product_12(), &qed, energy, theta)
            * 2.0;
        for phi in phis {
            for rho in rhos {
                let state = TwoPhotonInState::new(phi, rho).unwrap();
                let general = dcs_general(state, &qed, energy, theta).unwrap().si_m2_per_sr();
                let reduced = dcs_reduced(state, &qed, energy, theta).unwrap().si_m2_per_sr();
                let closed = dcs_qed_closed(state, energy, theta).unwrap().si_m2_per_sr();
                let by_hand = prefactor * dcs_sum_by_hand(state, &qed, energy, theta);
                let ctx = format!("theta={theta} phi={phi} rho={rho}");
                assert_close(general, reduced, 1e-12, scale, &ctx);
                assert_close(general, closed, 1e-12, scale, &ctx);
                assert_close(general, by_hand, 1e-12, scale, &ctx);
            }
        }
    }
}

#[test]
fn bell_average_identity_everywhere() {
    let energy = ev(2.48);
    let qed = Mechanism::qed_low_energy();
    for i in 0..=180 {
        let theta = PI * i as f64 / 180.0;
        let plus = dcs_reduced(TwoPhotonInState::bell_plus(), &qed, energy, theta)
            .unwrap()
            .si_m2_per_sr();
        let minus = dcs_reduced(TwoPhotonInState::bell_minus(), &qed, energy, theta)
            .unwrap()
            .si_m2_per_sr();
        let product = dcs_reduced(TwoPhotonInState::product_12(), &qed, energy, theta)
            .unwrap()
            .si_m2_per_sr();
        assert_close(
            plus + minus,
            2.0 * product,
            1e-12,
            product,
            &format!("theta = {theta}"),
        );
    }
}

/// Closed-form total cross section for the QED mechanism at entanglement
/// weight s, via ∫cos^{2k}θ dΩ = 4π/(2k + 1):
///
/// σ(s) = (π U / 4)·[(1 + s)·5124/5 + (1 − s)·484/3]
///
/// (bracket = (1+s)(961 + 186c² + 9c⁴) + (1−s)·484c²; angular averages
/// 961 + 62 + 9/5 = 5124/5 and 484/3.)
fn qed_total_xsec_closed_form(s: f64, energy: PhotonEnergy) -> f64 {
    let u = natural_dcs_unit(energy);
    0.25 * PI * u * ((1.0 + s) * 5124.0 / 5.0 + (1.0 - s) * 484.0 / 3.0)
}

#[test]
fn total_xsec_matches_closed_form() {
    let energy = energy_from_wavelength(500e-9).unwrap();
    let qed = Mechanism::qed_low_energy();
    for (state, name) in [
        (TwoPhotonInState::product_12(), "product"),
        (TwoPhotonInState::bell_plus(), "bell_plus"),
        (TwoPhotonInState::bell_minus(), "bell_minus"),
        (TwoPhotonInState::new(0.5, 1.2).unwrap(), "generic"),
    ] {
        let expect = qed_total_xsec_closed_form(entanglement_weight(state), energy);
        let got = total_xsec(state, &qed, energy).unwrap();
        assert_close(got, expect, 1e-8, 0.0, name);
        assert!(got > 0.0);
    }
}

#[test]
fn regime_two_mechanism_total_is_entanglement_independent() {
    // unit-magnitude amplitude with cos Δβ = 0: the interference term drops
    // out of the reduced form, so σ = (1/2)·2π·∫ pref·2·sinθ dθ = 4π·pref
    // for every in-state
    let energy = ev(1.0);
    let mech = Mechanism::by_name("synthetic-phase-half-pi").unwrap();
    let oracle = 4.0 * PI * ggscat::scattering::dcs_prefactor_si(energy);
    for state in [
        TwoPhotonInState::bell_plus(),
        TwoPhotonInState::bell_minus(),
        TwoPhotonInState::product_12(),
        TwoPhotonInState::new(0.6, 0.9).unwrap(),
    ] {
        let sigma = total_xsec(state, &mech, energy).unwrap();
        assert_close(sigma, oracle, 1e-8, 0.0, "phase-π/2 mechanism total");
    }
}

#[test]
fn total_xsec_bell_average() {
    let energy = ev(2.48);
    let qed = Mechanism::qed_low_energy();
    let plus = total_xsec(TwoPhotonInState::bell_plus(), &qed, energy).unwrap();
    let minus = total_xsec(TwoPhotonInState::bell_minus(), &qed, energy).unwrap();
    let product = total_xsec(TwoPhotonInState::product_12(), &qed, energy).unwrap();
    assert_close(plus + minus, 2.0 * product, 1e-8, 0.0, "bell average");
}

#[test]
fn figure_values_from_both_routes_at_spot_angles() {
    // natural-unit spot values evaluated before the build from the closed
    // angular form: bracket/8 with bracket = (1+s)(31+3c²)² + (1−s)·484c²
    let energy = energy_from_wavelength(500e-9).unwrap();
    let qed = Mechanism::qed_low_energy();
    let cases: [(TwoPhotonInState, f64, f64); 9] = [
        (TwoPhotonInState::product_12(), 0.0, 205.0),
        (TwoPhotonInState::product_12(), PI / 4.0, 162.28125),
        (TwoPhotonInState::product_12(), FRAC_PI_2, 120.125),
        (TwoPhotonInState::bell_plus(), 0.0, 289.0),
        (TwoPhotonInState::bell_plus(), PI / 4.0, 264.0625),
        (TwoPhotonInState::bell_plus(), FRAC_PI_2, 240.25),
        (TwoPhotonInState::bell_minus(), 0.0, 121.0),
        (TwoPhotonInState::bell_minus(), PI / 4.0, 60.5),
        (TwoPhotonInState::bell_minus(), FRAC_PI_2, 0.0),
    ];
    for (state, theta, want_u) in cases {
        let reduced = dcs_reduced(state, &qed, energy, theta).unwrap().natural_u();
        let closed = dcs_qed_closed(state, energy, theta).unwrap().natural_u();
        let ctx = format!("theta = {theta}");
        assert_close(reduced, want_u, 1e-10, 240.0, &ctx);
        assert_close(closed, want_u, 1e-10, 240.0, &ctx);
    }
}

#[test]
fn amplitude_ratio_follows_bracket_polynomial() {
    // |M(θ)| / K = 31 + 22cosθ + 3cos²θ, checked against an independent
    // Horner evaluation on a fine grid
    let energy = ev(1.0);
    let qed = Mechanism::qed_low_energy();
    let k = qed_energy_factor(energy);
    for i in 0..=256 {
        let theta = PI * i as f64 / 256.0;
        let c = theta.cos();
        let horner = (3.0 * c + 22.0) * c + 31.0;
        let m = qed.base_amplitude(energy, theta).unwrap().norm();
        assert_close(m / k, horner, 1e-12, 0.0, &format!("theta = {theta}"));
    }
}

#[test]
fn quadrature_recovers_right_angle_suppression_window() {
    // fraction of the bell_minus distribution within ±2° of 90° is tiny
    // compared with the product state: ratio of the two bin integrals
    let energy = ev(2.48);
    let qed = Mechanism::qed_low_energy();
    let window = |state: TwoPhotonInState| {
        adaptive_quadrature(
            |theta| {
                dcs_reduced(state, &qed, energy, theta).unwrap().natural_u() * theta.sin()
            },
            88f64.to_radians(),
            92f64.to_radians(),
            1e-10,
            0.0,
        )
    };
    let minus = window(TwoPhotonInState::bell_minus());
    let product = window(TwoPhotonInState::product_12());
    assert!(minus > 0.0 && product > 0.0);
    assert!(minus < 1e-2 * product, "{minus} vs {product}");
}
