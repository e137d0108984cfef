//! Deterministic, seeded Monte Carlo generation of scattering events with a
//! θ-density proportional to dσ/dΩ·sin θ, plus a chi-square goodness-of-fit
//! helper.
//!
//! Determinism contract: events are produced in fixed-size batches of
//! [`EVENTS_PER_STREAM`], one independent ChaCha8 sub-stream per batch
//! (`set_stream(batch_index)` on a generator seeded from the config seed),
//! concatenated in batch order. The output is therefore a function of
//! (seed, config) alone — identical across runs, thread counts, and with the
//! `parallel` feature on or off.
//!
//! θ is sampled over the full [0, π] even though the final photons are
//! indistinguishable: each physical event appears as a mirror pair (θ, π − θ)
//! with equal weight, so do not double-count when folding onto [0, π/2].

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::amplitudes::Mechanism;
use crate::constants::PhotonEnergy;
use crate::error::{Error, Result};
use crate::quadrature::adaptive_quadrature;
use crate::scattering::{dcs_reduced, TwoPhotonInState};
use crate::stats::chi_square_cdf;

/// Identifier of the generator algorithm, recorded in output metadata.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Events per independent RNG sub-stream.
pub const EVENTS_PER_STREAM: u64 = 8192;

/// Grid points scanned to bracket the density maximum.
const ENVELOPE_SCAN_POINTS: usize = 1000;

/// Safety factor applied to the scanned maximum.
const ENVELOPE_SAFETY: f64 = 1.01;

/// Minimum expected count per chi-square bin before merging.
const MIN_EXPECTED_PER_BIN: f64 = 5.0;

/// One sampled scattering event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventRecord {
    /// Scattering angle θ (radians, in [0, π]).
    pub theta: f64,
    /// Azimuthal angle (radians, uniform in [0, 2π)).
    pub azimuth: f64,
}

/// Everything needed to reproduce a sampling run.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub n_events: u64,
    pub seed: u64,
    /// Mechanism registry name, resolved at sampling time.
    pub mechanism: String,
    pub state: TwoPhotonInState,
    pub energy: PhotonEnergy,
}

/// Result of a sampling run, with the rejection-sampling diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRun {
    pub events: Vec<EventRecord>,
    /// Accepted proposals over total proposals (NaN when nothing was drawn).
    pub acceptance_ratio: f64,
    /// Rejection envelope actually used.
    pub envelope: f64,
}

/// θ-density (unnormalized) targeted by the sampler: dσ/dΩ (natural units) × sin θ.
fn target_density(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
    theta: f64,
) -> Result<f64> {
    Ok(dcs_reduced(state, mech, energy, theta)?.natural_u() * theta.sin())
}

fn scan_envelope(
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
) -> Result<f64> {
    let mut max = 0.0f64;
    for i in 0..ENVELOPE_SCAN_POINTS {
        let theta = PI * i as f64 / (ENVELOPE_SCAN_POINTS - 1) as f64;
        let f = target_density(state, mech, energy, theta)?;
        if !f.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "target density is not finite at theta = {theta}"
            )));
        }
        max = max.max(f);
    }
    if max <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "target density vanishes everywhere for mechanism `{}`; nothing to sample",
            mech.name()
        )));
    }
    Ok(ENVELOPE_SAFETY * max)
}

struct Batch {
    events: Vec<EventRecord>,
    proposals: u64,
}

fn sample_batch(
    batch_index: u64,
    count: u64,
    seed: u64,
    envelope: f64,
    state: TwoPhotonInState,
    mech: &Mechanism,
    energy: PhotonEnergy,
) -> Result<Batch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch_index);
    let mut events = Vec::with_capacity(count as usize);
    let mut proposals = 0u64;
    for _ in 0..count {
        let theta = loop {
            proposals += 1;
            let candidate = PI * rng.random::<f64>();
            let f = target_density(state, mech, energy, candidate)?;
            assert!(
                f <= envelope,
                "density {f} exceeds envelope {envelope} at theta = {candidate}"
            );
            if rng.random::<f64>() * envelope < f {
                break candidate;
            }
        };
        let azimuth = TAU * rng.random::<f64>();
        events.push(EventRecord { theta, azimuth });
    }
    Ok(Batch { events, proposals })
}

fn assemble(batches: Vec<Batch>) -> SampleRun {
    let mut events = Vec::new();
    let mut proposals = 0u64;
    for mut b in batches {
        events.append(&mut b.events);
        proposals += b.proposals;
    }
    let accepted = events.len() as f64;
    SampleRun {
        events,
        acceptance_ratio: accepted / proposals as f64,
        envelope: f64::NAN,
    }
}

/// Config must still resolve even when nothing is drawn.
fn empty_run(cfg: &SamplerConfig) -> Result<SampleRun> {
    Mechanism::by_name(&cfg.mechanism)?;
    cfg.energy.require_computable()?;
    Ok(SampleRun {
        events: Vec::new(),
        acceptance_ratio: f64::NAN,
        envelope: f64::NAN,
    })
}

/// (batch index, events in batch) pairs.
type BatchPlan = Vec<(u64, u64)>;

fn prepare(cfg: &SamplerConfig) -> Result<(Mechanism, f64, BatchPlan)> {
    let mech = Mechanism::by_name(&cfg.mechanism)?;
    cfg.energy.require_computable()?;
    let envelope = scan_envelope(cfg.state, &mech, cfg.energy)?;
    let n_batches = cfg.n_events.div_ceil(EVENTS_PER_STREAM);
    let plan: BatchPlan = (0..n_batches)
        .map(|j| {
            let start = j * EVENTS_PER_STREAM;
            (j, EVENTS_PER_STREAM.min(cfg.n_events - start))
        })
        .collect();
    Ok((mech, envelope, plan))
}

/// Run the sampler, parallel over batches when the `parallel` feature is
/// enabled. Event order is identical to [`run_sampler_sequential`].
pub fn run_sampler(cfg: &SamplerConfig) -> Result<SampleRun> {
    if cfg.n_events == 0 {
        return empty_run(cfg);
    }
    let (mech, envelope, plan) = prepare(cfg)?;
    #[cfg(feature = "parallel")]
    let batches: Result<Vec<Batch>> = plan
        .par_iter()
        .map(|&(j, count)| sample_batch(j, count, cfg.seed, envelope, cfg.state, &mech, cfg.energy))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let batches: Result<Vec<Batch>> = plan
        .iter()
        .map(|&(j, count)| sample_batch(j, count, cfg.seed, envelope, cfg.state, &mech, cfg.energy))
        .collect();
    let mut run = assemble(batches?);
    run.envelope = envelope;
    Ok(run)
}

/// Strictly sequential sampling; reference path for the parallel runner and
/// for benches. Produces bit-identical output to [`run_sampler`].
pub fn run_sampler_sequential(cfg: &SamplerConfig) -> Result<SampleRun> {
    if cfg.n_events == 0 {
        return empty_run(cfg);
    }
    let (mech, envelope, plan) = prepare(cfg)?;
    let batches: Result<Vec<Batch>> = plan
        .iter()
        .map(|&(j, count)| sample_batch(j, count, cfg.seed, envelope, cfg.state, &mech, cfg.energy))
        .collect();
    let mut run = assemble(batches?);
    run.envelope = envelope;
    Ok(run)
}

/// Sample `cfg.n_events` events. See [`run_sampler`] for diagnostics.
pub fn sample_events(cfg: &SamplerConfig) -> Result<Vec<EventRecord>> {
    run_sampler(cfg).map(|run| run.events)
}

/// Pearson chi-square of binned θ against the target distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareFit {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Bin the event angles into `n_bins` equal θ bins and test them against bin
/// probabilities obtained by quadrature of the config's target density.
/// Adjacent bins are merged until every expected count reaches 5.
pub fn chi_square_fit(
    events: &[EventRecord],
    cfg: &SamplerConfig,
    n_bins: usize,
) -> Result<ChiSquareFit> {
    if n_bins < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 bins, got {n_bins}"
        )));
    }
    if events.is_empty() {
        return Err(Error::InsufficientData("no events to test".to_string()));
    }
    if events.iter().any(|e| !(0.0..=PI).contains(&e.theta)) {
        return Err(Error::InvalidArgument(
            "event angles must lie in [0, π]".to_string(),
        ));
    }
    let mech = Mechanism::by_name(&cfg.mechanism)?;
    cfg.energy.require_computable()?;

    let density = |theta: f64| {
        target_density(cfg.state, &mech, cfg.energy, theta)
            .expect("density evaluation on [0, π] with a checked energy")
    };
    let total = adaptive_quadrature(density, 0.0, PI, 1e-10, 0.0);
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::InvalidArgument(
            "target density integrates to zero; no distribution to test against".to_string(),
        ));
    }

    let n = events.len() as f64;
    let width = PI / n_bins as f64;
    let mut observed = vec![0u64; n_bins];
    for ev in events {
        let idx = ((ev.theta / width) as usize).min(n_bins - 1);
        observed[idx] += 1;
    }
    let expected: Vec<f64> = (0..n_bins)
        .map(|i| {
            let lo = width * i as f64;
            let hi = if i + 1 == n_bins { PI } else { width * (i + 1) as f64 };
            n * adaptive_quadrature(density, lo, hi, 1e-10, 0.0) / total
        })
        .collect();

    // merge adjacent bins until each expected count reaches the floor
    let mut merged: Vec<(f64, f64)> = Vec::new();
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for (o, e) in observed.iter().zip(&expected) {
        acc_obs += *o as f64;
        acc_exp += *e;
        if acc_exp >= MIN_EXPECTED_PER_BIN {
            merged.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        match merged.last_mut() {
            Some(last) => {
                last.0 += acc_obs;
                last.1 += acc_exp;
            }
            None => {
                return Err(Error::InsufficientData(
                    "expected counts too small in every bin; increase the sample".to_string(),
                ))
            }
        }
    }
    if merged.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "only {} bin(s) remain after merging; need at least 2",
            merged.len()
        )));
    }

    let statistic: f64 = merged
        .iter()
        .map(|&(o, e)| {
            let d = o - e;
            d * d / e
        })
        .sum();
    let dof = merged.len() - 1;
    Ok(ChiSquareFit {
        statistic,
        degrees_of_freedom: dof,
        p_value: 1.0 - chi_square_cdf(statistic, dof as f64),
    })
}
