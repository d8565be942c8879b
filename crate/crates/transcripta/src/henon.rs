//! Unidirectionally coupled, non-identical Hénon maps and the four sweep
//! experiments built on them: transcript entropy/complexity, transfer
//! entropy vs transcript mutual information, transcript order classes, and
//! similarity/divergence profiles, each as a function of the coupling
//! strength.
//!
//! The driver is a standard Hénon map; the responder's quadratic term is
//! blended between its own state and the driver's by the coupling `C`.
//! Both maps advance simultaneously from the time-`t` state, and the
//! simulation is bit-deterministic for a fixed configuration. All measures
//! are reported in bits.

use crate::coupling::{symbolic_transfer_entropy, transcript_mutual_information};
use crate::error::{Error, Result};
use crate::metric::{lump_by_order_class, similarity_distance};
use crate::prob::{estimate_dist, js_distance, normalized_entropy, shannon_entropy,
    statistical_complexity, LogBase, ProbDist};
use crate::series::{symbolize, transcribe, RealSeries, SymbolSeries, TieRule};
use rayon::prelude::*;

/// Divergence guard: iteration aborts when any state component leaves
/// `[-BOUND, BOUND]`.
const STATE_BOUND: f64 = 1e6;

/// One coupled driver–responder simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct HenonConfig {
    /// Coupling strength `C ≥ 0`; 0 decouples the responder completely.
    pub coupling: f64,
    /// Samples to keep after the transient.
    pub n_samples: usize,
    /// Iterations discarded before sampling starts.
    pub transient: usize,
    /// Driver initial state `(x₁, x₂)`.
    pub driver_seed: (f64, f64),
    /// Responder initial state `(y₁, y₂)`.
    pub responder_seed: (f64, f64),
}

impl Default for HenonConfig {
    fn default() -> Self {
        HenonConfig {
            coupling: 0.0,
            n_samples: 10_000,
            transient: 10_000,
            driver_seed: (0.0, 0.9),
            responder_seed: (0.75, 0.0),
        }
    }
}

impl HenonConfig {
    /// Default configuration at a given coupling strength.
    pub fn with_coupling(coupling: f64) -> Self {
        HenonConfig {
            coupling,
            ..Default::default()
        }
    }
}

/// Iterates the coupled pair and returns the first components
/// `(x₁-series, y₁-series)` after discarding the transient.
///
/// Update rule, advancing both maps from the time-`t` state:
/// driver `x₁' = 1.4 − x₁² + 0.1·x₂`, `x₂' = x₁`; responder
/// `y₁' = 1.4 − (C·x₁ + (1−C)·y₁)·y₁ + 0.3·y₂`, `y₂' = y₁`.
pub fn simulate(cfg: &HenonConfig) -> Result<(RealSeries<f64>, RealSeries<f64>)> {
    if !(cfg.coupling.is_finite() && cfg.coupling >= 0.0) {
        return Err(Error::invalid_parameter(
            "coupling",
            cfg.coupling.to_string(),
            "coupling strength must be finite and non-negative",
        ));
    }
    if cfg.n_samples == 0 {
        return Err(Error::invalid_parameter(
            "n_samples",
            "0".to_string(),
            "at least one sample must be kept",
        ));
    }
    let c = cfg.coupling;
    let (mut x1, mut x2) = cfg.driver_seed;
    let (mut y1, mut y2) = cfg.responder_seed;
    let mut xs = Vec::with_capacity(cfg.n_samples);
    let mut ys = Vec::with_capacity(cfg.n_samples);
    for step in 0..cfg.transient + cfg.n_samples {
        if step >= cfg.transient {
            xs.push(x1);
            ys.push(y1);
        }
        let nx1 = 1.4 - x1 * x1 + 0.1 * x2;
        let nx2 = x1;
        let ny1 = 1.4 - (c * x1 + (1.0 - c) * y1) * y1 + 0.3 * y2;
        let ny2 = y1;
        x1 = nx1;
        x2 = nx2;
        y1 = ny1;
        y2 = ny2;
        if x1.abs() > STATE_BOUND
            || x2.abs() > STATE_BOUND
            || y1.abs() > STATE_BOUND
            || y2.abs() > STATE_BOUND
        {
            return Err(Error::TrajectoryDiverged {
                step,
                bound: STATE_BOUND,
            });
        }
    }
    Ok((
        RealSeries::new("driver", xs).expect("map iterates are finite under the bound"),
        RealSeries::new("responder", ys).expect("map iterates are finite under the bound"),
    ))
}

/// A sweep over coupling strengths with a fixed symbolization recipe.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub c_min: f64,
    pub c_max: f64,
    pub c_step: f64,
    /// Ordinal pattern length.
    pub pattern_len: usize,
    /// Ordinal lattice delay used when symbolizing both series.
    pub delay: usize,
    /// Horizon for the transfer measures.
    pub lag: i64,
    pub n_samples: usize,
    pub transient: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            c_min: 0.0,
            c_max: 1.2,
            c_step: 0.05,
            pattern_len: 3,
            delay: 1,
            lag: 1,
            n_samples: 10_000,
            transient: 10_000,
        }
    }
}

impl SweepConfig {
    /// Coupling grid, inclusive of both endpoints within half a step. Each
    /// point is snapped to 10 decimal places so accumulated binary step
    /// error cannot perturb the chaotic trajectories between runs.
    pub fn grid(&self) -> Result<Vec<f64>> {
        if !(self.c_step > 0.0) || !self.c_step.is_finite() {
            return Err(Error::invalid_parameter(
                "c_step",
                self.c_step.to_string(),
                "grid step must be positive and finite",
            ));
        }
        if self.c_min > self.c_max {
            return Err(Error::invalid_parameter(
                "c_min",
                self.c_min.to_string(),
                "grid start must not exceed its end",
            ));
        }
        let mut grid = Vec::new();
        let mut k = 0u32;
        loop {
            let c = self.c_min + f64::from(k) * self.c_step;
            if c > self.c_max + self.c_step / 2.0 {
                break;
            }
            let snapped: f64 = format!("{c:.10}").parse().expect("fixed-point format");
            grid.push(snapped);
            k += 1;
        }
        Ok(grid)
    }

    fn henon(&self, coupling: f64) -> HenonConfig {
        HenonConfig {
            coupling,
            n_samples: self.n_samples,
            transient: self.transient,
            ..Default::default()
        }
    }
}

/// Simulates at one coupling and symbolizes both components.
fn symbol_pair(sweep: &SweepConfig, coupling: f64) -> Result<(SymbolSeries, SymbolSeries)> {
    let (xs, ys) = simulate(&sweep.henon(coupling))?;
    let r = symbolize(&xs, sweep.pattern_len, sweep.delay, TieRule::IndexOrder)?;
    let s = symbolize(&ys, sweep.pattern_len, sweep.delay, TieRule::IndexOrder)?;
    Ok((r, s))
}

/// Empirical distribution (in bits) of the pointwise driver→responder
/// transcripts.
fn transcript_distribution(r: &SymbolSeries, s: &SymbolSeries) -> Result<ProbDist<f64>> {
    let tau = transcribe(r, s, 0)?;
    Ok(estimate_dist(tau.series())?.with_base(LogBase::Base2))
}

fn sweep_rows<T, F>(sweep: &SweepConfig, per_c: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync,
{
    sweep.grid()?.par_iter().map(|&c| per_c(c)).collect()
}

/// Normalized entropy and statistical complexity of the transcript
/// distribution at one coupling strength.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyComplexityRow {
    pub coupling: f64,
    /// Normalized transcript entropy, in `[0, 1]`.
    pub h: f64,
    /// Statistical complexity (uniform reference), in `[0, 1]`.
    pub sc: f64,
}

/// Entropy–complexity profile of the transcript distribution across the
/// coupling grid.
pub fn experiment_entropy_complexity(sweep: &SweepConfig) -> Result<Vec<EntropyComplexityRow>> {
    sweep_rows(sweep, |coupling| {
        let (r, s) = symbol_pair(sweep, coupling)?;
        let p = transcript_distribution(&r, &s)?;
        Ok(EntropyComplexityRow {
            coupling,
            h: normalized_entropy(&p)?,
            sc: statistical_complexity(&p, None)?,
        })
    })
}

/// Transfer entropy and transcript mutual information at one coupling
/// strength.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferRow {
    pub coupling: f64,
    /// Symbolic transfer entropy driver→responder, bits.
    pub te: f64,
    /// Transcript mutual information driver→responder, bits.
    pub tmi: f64,
    /// `|te − tmi|`.
    pub epsilon: f64,
}

/// Transfer-entropy / transcript-mutual-information profile across the
/// coupling grid, at the sweep's symbolization delay and horizon.
pub fn experiment_te_tmi(sweep: &SweepConfig) -> Result<Vec<TransferRow>> {
    sweep_rows(sweep, |coupling| {
        let (r, s) = symbol_pair(sweep, coupling)?;
        let te = symbolic_transfer_entropy(&r, &s, sweep.lag, LogBase::Base2)?;
        let tmi = transcript_mutual_information(&r, &s, sweep.lag, LogBase::Base2)?;
        Ok(TransferRow {
            coupling,
            te,
            tmi,
            epsilon: (te - tmi).abs(),
        })
    })
}

/// Order-class probabilities of the transcript distribution at one
/// coupling strength.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderClassRow {
    pub coupling: f64,
    /// Probability of the identity class (order 1) — the fraction of time
    /// driver and responder show the same pattern.
    pub p_order1: f64,
    /// Probability of the order-2 class.
    pub p_order2: f64,
    /// Probability of the order-3 class.
    pub p_order3: f64,
    /// Shannon entropy of the lumped distribution, bits.
    pub class_entropy: f64,
}

/// Order-class profile of the transcript distribution across the coupling
/// grid (pattern length 3: classes of orders 1, 2, and 3).
pub fn experiment_order_classes(sweep: &SweepConfig) -> Result<Vec<OrderClassRow>> {
    sweep_rows(sweep, |coupling| {
        let (r, s) = symbol_pair(sweep, coupling)?;
        let p = transcript_distribution(&r, &s)?;
        let classes = r.alphabet().order_classes();
        let lumped = lump_by_order_class(&p, &classes)?;
        Ok(OrderClassRow {
            coupling,
            p_order1: lumped.prob_of_order(1).unwrap_or(0.0),
            p_order2: lumped.prob_of_order(2).unwrap_or(0.0),
            p_order3: lumped.prob_of_order(3).unwrap_or(0.0),
            class_entropy: shannon_entropy(lumped.dist()),
        })
    })
}

/// Similarity and divergence of the transcript distribution at one
/// coupling strength.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityRow {
    pub coupling: f64,
    /// Normalized mean Kendall distance between the two pattern streams,
    /// in `[0, 1]`.
    pub delta_k: f64,
    /// Jensen-Shannon distance (bits, square root) between the transcript
    /// distribution and uniform.
    pub js_distance: f64,
}

/// Similarity profile across the coupling grid.
pub fn experiment_similarity(sweep: &SweepConfig) -> Result<Vec<SimilarityRow>> {
    sweep_rows(sweep, |coupling| {
        let (r, s) = symbol_pair(sweep, coupling)?;
        let p = transcript_distribution(&r, &s)?;
        let uniform = ProbDist::<f64>::uniform(p.len())?.with_base(LogBase::Base2);
        Ok(SimilarityRow {
            coupling,
            delta_k: similarity_distance(&r, &s)?,
            js_distance: js_distance(&p, &uniform)?,
        })
    })
}
