//! Probability distributions over group alphabets and entropic measures:
//! Shannon and normalized entropy, Kullback-Leibler and Jensen-Shannon
//! divergences, the Jensen-Shannon distance, statistical complexity, and
//! the independent-product transcript distribution.
//!
//! Raw entropies and divergences are computed in the logarithm base carried
//! by the distribution (natural by default). Normalized quantities
//! (normalized entropy, statistical complexity) force base 2 so their
//! ranges are `[0, 1]`.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::SymbolSeries;
use std::fmt;

/// Largest dense histogram (cells) an estimator will allocate.
pub const DENSE_ESTIMATION_LIMIT: usize = 1 << 22;

/// Logarithm base for entropies and divergences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    /// Natural logarithm; entropies in nats.
    #[default]
    Natural,
    /// Binary logarithm; entropies in bits.
    Base2,
}

impl LogBase {
    /// `log(x)` in this base.
    pub fn log<F: Scalar>(self, x: F) -> F {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Base2 => x.log2(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::Natural => "natural",
            LogBase::Base2 => "base2",
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A probability distribution over a finite support, tagged with the
/// logarithm base downstream measures should use.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist<F: Scalar = f64> {
    probs: Vec<F>,
    log_base: LogBase,
}

impl<F: Scalar> ProbDist<F> {
    /// Validates non-negativity and unit total mass (tolerance scales with
    /// the support size and the scalar's epsilon, with a floor of 1e-12).
    pub fn new(probs: Vec<F>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyInput {
                what: "distribution",
            });
        }
        let mut sum = F::zero();
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < F::zero() {
                return Err(Error::InvalidDistribution {
                    reason: format!("entry {i} is {p}, expected a finite non-negative value"),
                });
            }
            sum += p;
        }
        let tol = sum_tolerance::<F>(probs.len());
        if (sum - F::one()).abs() > tol {
            return Err(Error::InvalidDistribution {
                reason: format!("total mass {sum} differs from 1 by more than {tol}"),
            });
        }
        Ok(ProbDist {
            probs,
            log_base: LogBase::default(),
        })
    }

    /// Retags the distribution with a logarithm base.
    pub fn with_base(mut self, base: LogBase) -> Self {
        self.log_base = base;
        self
    }

    /// Uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput {
                what: "distribution",
            });
        }
        let p = F::one() / F::from_count(n as u64);
        Ok(ProbDist {
            probs: vec![p; n],
            log_base: LogBase::default(),
        })
    }

    /// Deterministic distribution: all mass on one outcome.
    pub fn point_mass(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput {
                what: "distribution",
            });
        }
        if index >= n {
            return Err(Error::invalid_parameter(
                "index",
                index.to_string(),
                format!("point mass index must be < {n}"),
            ));
        }
        let mut probs = vec![F::zero(); n];
        probs[index] = F::one();
        Ok(ProbDist {
            probs,
            log_base: LogBase::default(),
        })
    }

    /// Maximum-likelihood distribution from a count table; zero counts give
    /// probability exactly 0.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyInput {
                what: "count table",
            });
        }
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution {
                reason: "count table has no observations".to_string(),
            });
        }
        let n = F::from_count(total);
        let probs = counts.iter().map(|&c| F::from_count(c) / n).collect();
        Ok(ProbDist {
            probs,
            log_base: LogBase::default(),
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[F] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> F {
        self.probs[i]
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    /// Number of outcomes with strictly positive probability.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > F::zero()).count()
    }

    /// In-crate constructor for values already known to form a
    /// distribution (e.g. regroupings of a validated one).
    pub(crate) fn from_parts(probs: Vec<F>, log_base: LogBase) -> Self {
        ProbDist { probs, log_base }
    }
}

fn sum_tolerance<F: Scalar>(n: usize) -> F {
    let scaled = F::epsilon() * F::from_count(n as u64 * 16);
    F::from_f64_lossy(1e-12).max(scaled)
}

/// A joint distribution over ordered pairs from one alphabet of size `n`,
/// stored row-major with the source index first.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist<F: Scalar = f64> {
    n: usize,
    probs: Vec<F>,
}

impl<F: Scalar> JointDist<F> {
    /// Validates shape (`n*n` entries), non-negativity, and unit mass.
    pub fn new(n: usize, probs: Vec<F>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput {
                what: "joint distribution",
            });
        }
        if probs.len() != n * n {
            return Err(Error::LengthMismatch {
                left: probs.len(),
                right: n * n,
            });
        }
        let mut sum = F::zero();
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < F::zero() {
                return Err(Error::InvalidDistribution {
                    reason: format!("joint entry {i} is {p}, expected finite non-negative"),
                });
            }
            sum += p;
        }
        let tol = sum_tolerance::<F>(n * n);
        if (sum - F::one()).abs() > tol {
            return Err(Error::InvalidDistribution {
                reason: format!("joint mass {sum} differs from 1 by more than {tol}"),
            });
        }
        Ok(JointDist { n, probs })
    }

    /// Support size per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[F] {
        &self.probs
    }

    /// P(source = i, target = j).
    pub fn value(&self, i: usize, j: usize) -> F {
        self.probs[i * self.n + j]
    }

    /// Marginal over the source (first) index.
    pub fn source_marginal(&self) -> ProbDist<F> {
        let mut m = vec![F::zero(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                m[i] += self.value(i, j);
            }
        }
        ProbDist {
            probs: m,
            log_base: LogBase::default(),
        }
    }

    /// Marginal over the target (second) index.
    pub fn target_marginal(&self) -> ProbDist<F> {
        let mut m = vec![F::zero(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                m[j] += self.value(i, j);
            }
        }
        ProbDist {
            probs: m,
            log_base: LogBase::default(),
        }
    }
}

/// Frequency estimate of the symbol distribution of a stream.
pub fn estimate_dist(series: &SymbolSeries) -> Result<ProbDist<f64>> {
    let n = series.alphabet().size();
    if n > DENSE_ESTIMATION_LIMIT {
        return Err(Error::UnsupportedSize {
            value: n,
            reason: format!("dense estimation supports alphabets up to {DENSE_ESTIMATION_LIMIT}"),
        });
    }
    if series.is_empty() {
        return Err(Error::EmptyInput {
            what: "symbol series",
        });
    }
    let mut counts = vec![0u64; n];
    for &s in series.symbols() {
        counts[s] += 1;
    }
    ProbDist::from_counts(&counts)
}

/// Frequency estimate of the joint distribution of `(a_t, b_{t+lag})` over
/// the overlapping time range.
pub fn estimate_joint(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lag: i64,
) -> Result<JointDist<f64>> {
    if !a.alphabet().compatible(b.alphabet()) {
        return Err(Error::GroupMismatch {
            reason: "joint estimation requires a shared alphabet".to_string(),
        });
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.alphabet().size();
    if n.saturating_mul(n) > DENSE_ESTIMATION_LIMIT {
        return Err(Error::UnsupportedSize {
            value: n,
            reason: format!(
                "dense joint estimation supports alphabets up to sqrt({DENSE_ESTIMATION_LIMIT})"
            ),
        });
    }
    let len = a.len() as i64;
    if lag.unsigned_abs() as i64 >= len {
        return Err(Error::SeriesTooShort {
            len: a.len(),
            need: lag.unsigned_abs() as usize + 1,
        });
    }
    let mut counts = vec![0u64; n * n];
    let (start, end) = (lag.max(0) - lag, len - lag.max(0));
    let mut total = 0u64;
    for t in start..end {
        let i = a.symbols()[t as usize];
        let j = b.symbols()[(t + lag) as usize];
        counts[i * n + j] += 1;
        total += 1;
    }
    let tf = total as f64;
    let probs = counts.iter().map(|&c| c as f64 / tf).collect();
    JointDist::new(n, probs)
}

/// Transcript distribution induced by a joint symbol distribution:
/// `p(τ) = Σ_a P(a, τ∗a)`, summing the joint along each transcript fiber.
pub fn transcript_dist_from_joint<F: Scalar>(
    joint: &JointDist<F>,
    alphabet: &Alphabet,
) -> Result<ProbDist<F>> {
    let n = alphabet.size();
    if joint.n() != n {
        return Err(Error::GroupMismatch {
            reason: format!(
                "joint support {} does not match alphabet size {n}",
                joint.n()
            ),
        });
    }
    let mut probs = vec![F::zero(); n];
    for (tau, slot) in probs.iter_mut().enumerate() {
        for a in 0..n {
            *slot += joint.value(a, alphabet.op(tau, a));
        }
    }
    Ok(ProbDist {
        probs,
        log_base: LogBase::default(),
    })
}

/// Transcript distribution two independent streams with marginals `pa` and
/// `pb` would produce: `p(τ) = Σ_a pa(a)·pb(τ∗a)`.
pub fn independent_product_dist<F: Scalar>(
    pa: &ProbDist<F>,
    pb: &ProbDist<F>,
    alphabet: &Alphabet,
) -> Result<ProbDist<F>> {
    let n = alphabet.size();
    if pa.len() != n || pb.len() != n {
        return Err(Error::GroupMismatch {
            reason: format!(
                "marginal supports {} and {} must both match alphabet size {n}",
                pa.len(),
                pb.len()
            ),
        });
    }
    let mut probs = vec![F::zero(); n];
    for (tau, slot) in probs.iter_mut().enumerate() {
        for a in 0..n {
            *slot += pa.get(a) * pb.get(alphabet.op(tau, a));
        }
    }
    Ok(ProbDist {
        probs,
        log_base: pa.log_base(),
    })
}

fn entropy_in<F: Scalar>(probs: &[F], base: LogBase) -> F {
    let mut h = F::zero();
    for &p in probs {
        if p > F::zero() {
            h -= p * base.log(p);
        }
    }
    h
}

/// Shannon entropy in the distribution's logarithm base; `0·log 0 := 0`.
pub fn shannon_entropy<F: Scalar>(p: &ProbDist<F>) -> F {
    entropy_in(p.probs(), p.log_base())
}

/// Entropy divided by its maximum `log n`, giving a base-independent value
/// in `[0, 1]` (computed in base 2). Errors for `n = 1`, where the
/// denominator vanishes.
pub fn normalized_entropy<F: Scalar>(p: &ProbDist<F>) -> Result<F> {
    if p.len() < 2 {
        return Err(Error::UnsupportedSize {
            value: p.len(),
            reason: "normalized entropy needs at least 2 outcomes".to_string(),
        });
    }
    let h = entropy_in(p.probs(), LogBase::Base2);
    Ok(h / F::from_count(p.len() as u64).log2())
}

fn require_same_shape<F: Scalar>(p: &ProbDist<F>, q: &ProbDist<F>) -> Result<LogBase> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    if p.log_base() != q.log_base() {
        return Err(Error::invalid_parameter(
            "log_base",
            format!("{} vs {}", p.log_base(), q.log_base()),
            "both distributions must carry the same logarithm base",
        ));
    }
    Ok(p.log_base())
}

/// Kullback-Leibler divergence `Σ p·log(p/q)`. Returns `+∞` when `p` has
/// mass where `q` has none; tiny negative rounding residue is clamped to 0.
pub fn kl_divergence<F: Scalar>(p: &ProbDist<F>, q: &ProbDist<F>) -> Result<F> {
    let base = require_same_shape(p, q)?;
    let mut d = F::zero();
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi > F::zero() {
            if qi <= F::zero() {
                return Ok(F::infinity());
            }
            d += pi * (base.log(pi) - base.log(qi));
        }
    }
    Ok(d.max(F::zero()))
}

/// Harmonic mean `2xy/(x+y)` of the two directed KL divergences. Zero when
/// both vanish; an infinite direction contributes a vanishing reciprocal,
/// so the result stays finite unless both directions are infinite.
pub fn symmetrized_kl<F: Scalar>(p: &ProbDist<F>, q: &ProbDist<F>) -> Result<F> {
    let x = kl_divergence(p, q)?;
    let y = kl_divergence(q, p)?;
    let two = F::one() + F::one();
    Ok(if x.is_infinite() {
        if y.is_infinite() {
            F::infinity()
        } else {
            two * y
        }
    } else if y.is_infinite() {
        two * x
    } else if (x + y).is_zero() {
        F::zero()
    } else {
        two * x * y / (x + y)
    })
}

/// Jensen-Shannon divergence `H((p+q)/2) − (H(p)+H(q))/2` in the carried
/// base. Symmetric, finite, and at most `log 2`.
pub fn js_divergence<F: Scalar>(p: &ProbDist<F>, q: &ProbDist<F>) -> Result<F> {
    let base = require_same_shape(p, q)?;
    let two = F::one() + F::one();
    let mid: Vec<F> = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| (a + b) / two)
        .collect();
    let d = entropy_in(&mid, base)
        - (entropy_in(p.probs(), base) + entropy_in(q.probs(), base)) / two;
    Ok(d.max(F::zero()))
}

/// Square root of the Jensen-Shannon divergence; satisfies the triangle
/// inequality.
pub fn js_distance<F: Scalar>(p: &ProbDist<F>, q: &ProbDist<F>) -> Result<F> {
    Ok(js_divergence(p, q)?.sqrt())
}

/// Statistical complexity: Jensen-Shannon disequilibrium from the
/// reference (uniform when absent) times normalized entropy, both in base
/// 2, so the value lies in `[0, 1]` and vanishes for uniform and for
/// deterministic distributions.
pub fn statistical_complexity<F: Scalar>(
    p: &ProbDist<F>,
    reference: Option<&ProbDist<F>>,
) -> Result<F> {
    let uniform;
    let qref = match reference {
        Some(q) => q,
        None => {
            uniform = ProbDist::<F>::uniform(p.len())?;
            &uniform
        }
    };
    if p.len() != qref.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: qref.len(),
        });
    }
    let two = F::one() + F::one();
    let mid: Vec<F> = p
        .probs()
        .iter()
        .zip(qref.probs())
        .map(|(&a, &b)| (a + b) / two)
        .collect();
    let diseq = (entropy_in(&mid, LogBase::Base2)
        - (entropy_in(p.probs(), LogBase::Base2) + entropy_in(qref.probs(), LogBase::Base2))
            / two)
        .max(F::zero());
    Ok(diseq * normalized_entropy(p)?)
}
