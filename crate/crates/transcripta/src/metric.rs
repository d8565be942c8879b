//! Distance-based comparison of symbol streams: pointwise distance series,
//! sliding-window `l_p` aggregates, distance histograms with explicit
//! forbidden values, order-class lumping of distributions, and the
//! normalized mean Kendall distance used as a similarity score.
//!
//! On ordinal (symmetric-group) alphabets the Cayley and Kendall metrics
//! act natively; on table groups they are transported through the regular
//! embedding, so distances are norms of embedded transcripts.

use crate::alphabet::Alphabet;
use crate::embed::Metric;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::prob::ProbDist;
use crate::scalar::Scalar;
use crate::series::SymbolSeries;
use std::collections::BTreeMap;

/// Pointwise distances between two aligned streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSeries {
    metric: Metric,
    transported: bool,
    values: Vec<usize>,
    max_possible: usize,
}

impl DistanceSeries {
    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// True when the metric was transported through the regular embedding
    /// rather than applied to the symbols as permutations.
    pub fn transported(&self) -> bool {
        self.transported
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest distance the metric can produce on this alphabet (the
    /// theoretical range bound, not the largest realized value).
    pub fn max_possible(&self) -> usize {
        self.max_possible
    }
}

/// How distances behave on a given alphabet: native permutation metrics
/// with per-pair evaluation, or transported norms looked up by transcript.
enum MetricLane {
    Native { degree: usize },
    Transported { norms: Vec<usize> },
}

fn metric_lane(alphabet: &Alphabet, metric: Metric) -> MetricLane {
    match alphabet.sym_degree() {
        Some(degree) => MetricLane::Native { degree },
        None => {
            let group = match alphabet {
                Alphabet::Table(g) => g,
                Alphabet::Sym { .. } => unreachable!("Sym alphabets always report a degree"),
            };
            let norms = group
                .cayley_embedding()
                .iter()
                .map(|p| metric.norm(p))
                .collect();
            MetricLane::Transported { norms }
        }
    }
}

impl MetricLane {
    fn distance(&self, alphabet: &Alphabet, metric: Metric, a: usize, b: usize) -> usize {
        match self {
            MetricLane::Native { degree } => {
                let pa = Permutation::from_lex_rank(a, *degree).expect("validated symbol");
                let pb = Permutation::from_lex_rank(b, *degree).expect("validated symbol");
                metric.between(&pa, &pb).expect("same degree")
            }
            MetricLane::Transported { norms } => norms[alphabet.transcript(a, b)],
        }
    }

    fn max_possible(&self, metric: Metric) -> usize {
        match self {
            MetricLane::Native { degree } => metric.max_for_len(*degree),
            MetricLane::Transported { norms } => metric.max_for_len(norms.len()),
        }
    }

    /// Largest distance any pair of elements actually attains.
    fn largest_admissible(&self, metric: Metric) -> usize {
        match self {
            MetricLane::Native { degree } => metric.max_for_len(*degree),
            MetricLane::Transported { norms } => norms.iter().copied().max().unwrap_or(0),
        }
    }
}

fn check_aligned(a: &SymbolSeries, b: &SymbolSeries) -> Result<()> {
    if !a.alphabet().compatible(b.alphabet()) {
        return Err(Error::GroupMismatch {
            reason: "distance series require a shared alphabet".to_string(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Pointwise distances `d(a_t, b_t)` between two aligned streams; equal to
/// the norms of the pointwise transcripts.
pub fn distance_series(
    a: &SymbolSeries,
    b: &SymbolSeries,
    metric: Metric,
) -> Result<DistanceSeries> {
    check_aligned(a, b)?;
    let alphabet = a.alphabet();
    let lane = metric_lane(alphabet, metric);
    let values = a
        .symbols()
        .iter()
        .zip(b.symbols())
        .map(|(&x, &y)| lane.distance(alphabet, metric, x, y))
        .collect();
    Ok(DistanceSeries {
        metric,
        transported: matches!(lane, MetricLane::Transported { .. }),
        values,
        max_possible: lane.max_possible(metric),
    })
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::invalid_parameter(
            "p",
            p.to_string(),
            "the window norm exponent must be >= 1 (or infinite)",
        ));
    }
    Ok(())
}

fn lp_combine(distances: &[usize], p: f64) -> f64 {
    if p.is_infinite() {
        return distances.iter().copied().max().unwrap_or(0) as f64;
    }
    if p == 1.0 {
        return distances.iter().map(|&d| d as f64).sum();
    }
    distances
        .iter()
        .map(|&d| (d as f64).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// `l_p` aggregate of the pointwise distances between two symbol windows:
/// `(Σ_t d(a_t, b_t)^p)^{1/p}`, or the maximum for infinite `p`.
pub fn window_lp_distance(
    a_window: &[usize],
    b_window: &[usize],
    alphabet: &Alphabet,
    p: f64,
    metric: Metric,
) -> Result<f64> {
    check_p(p)?;
    if a_window.is_empty() {
        return Err(Error::EmptyInput { what: "window" });
    }
    if a_window.len() != b_window.len() {
        return Err(Error::LengthMismatch {
            left: a_window.len(),
            right: b_window.len(),
        });
    }
    let size = alphabet.size();
    for (position, &s) in a_window.iter().chain(b_window).enumerate() {
        if s >= size {
            return Err(Error::SymbolOutOfRange {
                symbol: s,
                size,
                position: position % a_window.len(),
            });
        }
    }
    let lane = metric_lane(alphabet, metric);
    let distances: Vec<usize> = a_window
        .iter()
        .zip(b_window)
        .map(|(&x, &y)| lane.distance(alphabet, metric, x, y))
        .collect();
    Ok(lp_combine(&distances, p))
}

/// Sliding-window `l_p` distance between two streams: one value per
/// length-`w` window, `N − w + 1` in total. With `w = 1` this reduces to
/// the pointwise distance series.
pub fn sliding_lp_series(
    a: &SymbolSeries,
    b: &SymbolSeries,
    w: usize,
    p: f64,
    metric: Metric,
) -> Result<Vec<f64>> {
    check_p(p)?;
    if w < 1 {
        return Err(Error::invalid_parameter(
            "w",
            w.to_string(),
            "window length must be at least 1",
        ));
    }
    let d = distance_series(a, b, metric)?;
    if d.len() < w {
        return Err(Error::SeriesTooShort {
            len: d.len(),
            need: w,
        });
    }
    Ok(d.values()
        .windows(w)
        .map(|win| lp_combine(win, p))
        .collect())
}

/// Empirical distribution of a distance series over the full theoretical
/// range `{0..max_possible}`, with never-realized values listed as
/// forbidden.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceHistogram {
    counts: Vec<u64>,
    dist: ProbDist<f64>,
    forbidden: Vec<usize>,
}

impl DistanceHistogram {
    /// Occurrence counts, indexed by distance value.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Frequencies over `{0..max_possible}`.
    pub fn dist(&self) -> &ProbDist<f64> {
        &self.dist
    }

    /// Distance values that never occur in the series.
    pub fn forbidden(&self) -> &[usize] {
        &self.forbidden
    }
}

/// Tallies a distance series into a histogram spanning the full range, so
/// structurally forbidden distances appear as explicit zeros.
pub fn distance_distribution(d: &DistanceSeries) -> Result<DistanceHistogram> {
    if d.is_empty() {
        return Err(Error::EmptyInput {
            what: "distance series",
        });
    }
    let mut counts = vec![0u64; d.max_possible() + 1];
    for &v in d.values() {
        counts[v] += 1;
    }
    let dist = ProbDist::from_counts(&counts)?;
    let forbidden = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(v, _)| v)
        .collect();
    Ok(DistanceHistogram {
        counts,
        dist,
        forbidden,
    })
}

/// Denominator used to normalize mean distances into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceNormalization {
    /// Largest distance any pair of alphabet elements attains. For native
    /// permutation metrics this equals the theoretical maximum.
    #[default]
    LargestAdmissible,
    /// Theoretical range bound of the metric on the embedding space, even
    /// if no pair attains it.
    TheoreticalMax,
}

/// Normalized mean Kendall distance between two aligned streams: 0 exactly
/// when they coincide, 1 when every step is maximally discordant.
pub fn similarity_distance(a: &SymbolSeries, b: &SymbolSeries) -> Result<f64> {
    similarity_distance_with(a, b, Metric::Kendall, DistanceNormalization::default())
}

/// [`similarity_distance`] with an explicit metric and normalization
/// denominator (the Cayley variant, and the theoretical-max denominator
/// for transported metrics, exist for completeness).
pub fn similarity_distance_with(
    a: &SymbolSeries,
    b: &SymbolSeries,
    metric: Metric,
    normalization: DistanceNormalization,
) -> Result<f64> {
    check_aligned(a, b)?;
    if a.is_empty() {
        return Err(Error::EmptyInput {
            what: "symbol series",
        });
    }
    let alphabet = a.alphabet();
    let lane = metric_lane(alphabet, metric);
    let denominator = match normalization {
        DistanceNormalization::LargestAdmissible => lane.largest_admissible(metric),
        DistanceNormalization::TheoreticalMax => lane.max_possible(metric),
    };
    if denominator == 0 {
        // Trivial alphabets admit only zero distances.
        return Ok(0.0);
    }
    let mut sum = 0u64;
    for (&x, &y) in a.symbols().iter().zip(b.symbols()) {
        sum += lane.distance(alphabet, metric, x, y) as u64;
    }
    Ok(sum as f64 / (denominator as u64 * a.len() as u64) as f64)
}

/// A distribution lumped by element order: one probability per order class.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderClassDist<F: Scalar = f64> {
    orders: Vec<usize>,
    dist: ProbDist<F>,
}

impl<F: Scalar> OrderClassDist<F> {
    /// Element orders labelling the classes, ascending.
    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Class probabilities, aligned with [`orders`](Self::orders).
    pub fn dist(&self) -> &ProbDist<F> {
        &self.dist
    }

    pub fn probs(&self) -> &[F] {
        self.dist.probs()
    }

    /// Probability of the class of elements with the given order.
    pub fn prob_of_order(&self, order: usize) -> Option<F> {
        self.orders
            .iter()
            .position(|&m| m == order)
            .map(|i| self.dist.get(i))
    }
}

/// Sums a distribution over the classes of an order-class partition (as
/// produced by [`Alphabet::order_classes`]): `p_m = Σ_{g: ord(g)=m} p(g)`.
pub fn lump_by_order_class<F: Scalar>(
    p: &ProbDist<F>,
    classes: &BTreeMap<usize, Vec<usize>>,
) -> Result<OrderClassDist<F>> {
    let n = p.len();
    let mut seen = vec![false; n];
    for members in classes.values() {
        for &i in members {
            if i >= n || seen[i] {
                return Err(Error::invalid_parameter(
                    "classes",
                    i.to_string(),
                    "classes must partition the distribution's support",
                ));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::invalid_parameter(
            "classes",
            "incomplete".to_string(),
            "classes must cover every element of the support",
        ));
    }
    let mut orders = Vec::with_capacity(classes.len());
    let mut probs = Vec::with_capacity(classes.len());
    for (&order, members) in classes {
        orders.push(order);
        probs.push(members.iter().map(|&i| p.get(i)).fold(F::zero(), |s, x| s + x));
    }
    Ok(OrderClassDist {
        orders,
        dist: ProbDist::from_parts(probs, p.log_base()),
    })
}
