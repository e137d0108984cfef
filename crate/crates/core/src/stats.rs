//! Special functions backing the chi-square goodness-of-fit p-value.
//!
//! Lanczos log-gamma plus the regularized incomplete gamma via the usual
//! series / continued-fraction split at x = a + 1.

/// Lanczos approximation (g = 7, 9 terms) coefficients.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    let y = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (y + i as f64);
    }
    let t = y + 7.5;
    0.5 * (std::f64::consts::TAU).ln() + (y + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma P(a, x) for a > 0, x ≥ 0.
pub fn gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_p requires a > 0, x ≥ 0");
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        lower_series(a, x)
    } else {
        1.0 - upper_continued_fraction(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x) = 1 − P(a, x).
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_q requires a > 0, x ≥ 0");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - lower_series(a, x)
    } else {
        upper_continued_fraction(a, x)
    }
}

/// CDF of the chi-square distribution with `dof` degrees of freedom.
pub fn chi_square_cdf(x: f64, dof: f64) -> f64 {
    assert!(dof > 0.0, "chi_square_cdf requires dof > 0");
    if x <= 0.0 {
        return 0.0;
    }
    gamma_p(0.5 * dof, 0.5 * x)
}

fn lower_series(a: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 500;
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn upper_continued_fraction(a: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 500;
    const TINY: f64 = 1e-300;
    // modified Lentz for the continued fraction of Q(a, x)
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-x + a * x.ln() - ln_gamma(a)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-14);
        assert!((ln_gamma(2.0)).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
        // Γ(10) = 362880
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn chi_square_cdf_even_dof_matches_erlang() {
        // For dof = 2m: CDF(x) = 1 − e^{−x/2} Σ_{j<m} (x/2)^j / j!
        for &dof in &[2usize, 4, 8, 28, 30] {
            let m = dof / 2;
            for &x in &[0.5, 3.0, 10.0, 29.0, 60.0] {
                let half = x / 2.0;
                let mut term = 1.0;
                let mut sum = 0.0;
                for j in 0..m {
                    if j > 0 {
                        term *= half / j as f64;
                    }
                    sum += term;
                }
                let exact = 1.0 - (-half).exp() * sum;
                let got = chi_square_cdf(x, dof as f64);
                assert!(
                    (got - exact).abs() < 1e-13,
                    "dof={dof} x={x}: got {got} want {exact}"
                );
            }
        }
    }

    #[test]
    fn gamma_p_matches_erf_recurrence() {
        // Independent oracle built from P(1/2, x) = erf(√x) and the
        // downward-stable recurrence P(a+1, x) = P(a, x) − x^a e^{−x}/Γ(a+1).
        for &x in &[0.25f64, 1.0, 4.0, 9.0, 20.0] {
            let mut a = 0.5f64;
            let mut p = libm::erf(x.sqrt());
            for _ in 0..20 {
                let got = gamma_p(a, x);
                assert!(
                    (got - p).abs() < 1e-12,
                    "a={a} x={x}: got {got} oracle {p}"
                );
                p -= (a * x.ln() - x - ln_gamma(a + 1.0)).exp();
                p = p.max(0.0);
                a += 1.0;
            }
        }
    }

    #[test]
    fn gamma_p_q_complementary() {
        for &a in &[0.5, 1.0, 7.3, 14.5, 40.0] {
            for &x in &[0.1, 1.0, a, 2.0 * a, 5.0 * a] {
                let s = gamma_p(a, x) + gamma_q(a, x);
                assert!((s - 1.0).abs() < 1e-14, "a={a} x={x}");
            }
        }
    }

    #[test]
    fn chi_square_cdf_edges() {
        assert_eq!(chi_square_cdf(0.0, 5.0), 0.0);
        assert_eq!(chi_square_cdf(-3.0, 5.0), 0.0);
        assert!(chi_square_cdf(1e4, 5.0) > 1.0 - 1e-12);
        // median of chi-square(k) is a bit below k
        assert!(chi_square_cdf(29.0, 29.0) > 0.5);
        assert!(chi_square_cdf(25.0, 29.0) < 0.5);
    }
}
