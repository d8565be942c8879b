//! Mutual-information coupling measures between symbol streams: plain MI,
//! the coupling complexity coefficient, symbolic transfer entropy,
//! transcript mutual information, and the directionality indicator.
//!
//! Everything is computed from exact integer count tables (plug-in
//! estimator, no smoothing); reals appear only at the log step. Count
//! multisets are summed in sorted order, so quantities that are equal by a
//! bijection of outcomes (identical series, relabelled tables, permuted
//! series lists) come out bitwise equal, making the structural zeroes of
//! the theory exact zeroes here.

use crate::error::{Error, Result};
use crate::prob::LogBase;
use crate::series::SymbolSeries;
use std::collections::BTreeMap;

/// Largest dense count table (cells) the estimators will allocate before
/// switching to sparse maps.
const DENSE_TABLE_LIMIT: usize = 1 << 22;

/// Plug-in Shannon entropy from a count table: `log N − (Σ c·log c)/N`.
/// Tables with at most one occupied cell give exactly 0. Counts are summed
/// in sorted order so equal multisets give bitwise-equal entropies.
pub(crate) fn entropy_from_counts<I>(counts: I, total: u64, base: LogBase) -> f64
where
    I: IntoIterator<Item = u64>,
{
    let mut occupied: Vec<u64> = counts.into_iter().filter(|&c| c > 0).collect();
    if occupied.len() <= 1 || total == 0 {
        return 0.0;
    }
    occupied.sort_unstable();
    let mut weighted = 0.0f64;
    for &c in &occupied {
        let c = c as f64;
        weighted += c * c.ln();
    }
    let n = total as f64;
    let nats = n.ln() - weighted / n;
    match base {
        LogBase::Natural => nats,
        LogBase::Base2 => nats / std::f64::consts::LN_2,
    }
}

/// Either a dense array or a sorted map, holding joint counts.
enum CountTable {
    Dense(Vec<u64>),
    Sparse(BTreeMap<u128, u64>),
}

impl CountTable {
    fn with_capacity(cells: u128) -> Self {
        if cells <= DENSE_TABLE_LIMIT as u128 {
            CountTable::Dense(vec![0; cells as usize])
        } else {
            CountTable::Sparse(BTreeMap::new())
        }
    }

    fn bump(&mut self, key: u128) {
        match self {
            CountTable::Dense(v) => v[key as usize] += 1,
            CountTable::Sparse(m) => *m.entry(key).or_insert(0) += 1,
        }
    }

    fn entropy(&self, total: u64, base: LogBase) -> f64 {
        match self {
            CountTable::Dense(v) => entropy_from_counts(v.iter().copied(), total, base),
            CountTable::Sparse(m) => entropy_from_counts(m.values().copied(), total, base),
        }
    }
}

fn check_pair(a: &SymbolSeries, b: &SymbolSeries) -> Result<()> {
    if !a.alphabet().compatible(b.alphabet()) {
        return Err(Error::GroupMismatch {
            reason: "coupling measures require a shared alphabet".to_string(),
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

fn overlap_range(len: usize, lag: i64) -> Result<(usize, usize)> {
    let n = len as i64;
    if lag.unsigned_abs() as i64 >= n {
        return Err(Error::SeriesTooShort {
            len,
            need: lag.unsigned_abs() as usize + 1,
        });
    }
    let start = (-lag).max(0) as usize;
    let end = (n - lag.max(0)) as usize;
    Ok((start, end))
}

/// Mutual information `I(a_t; b_{t+lag}) = H(a) + H(b) − H(a,b)` over the
/// overlapping time range, in the given base.
pub fn mutual_information(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lag: i64,
    base: LogBase,
) -> Result<f64> {
    check_pair(a, b)?;
    let (start, end) = overlap_range(a.len(), lag)?;
    let n = a.alphabet().size();
    let mut ca = vec![0u64; n];
    let mut cb = vec![0u64; n];
    let mut cab = CountTable::with_capacity((n as u128) * (n as u128));
    let mut total = 0u64;
    for t in start..end {
        let x = a.symbols()[t];
        let y = b.symbols()[(t as i64 + lag) as usize];
        ca[x] += 1;
        cb[y] += 1;
        cab.bump((x as u128) * (n as u128) + y as u128);
        total += 1;
    }
    let ha = entropy_from_counts(ca, total, base);
    let hb = entropy_from_counts(cb, total, base);
    let hab = cab.entropy(total, base);
    Ok(ha + (hb - hab))
}

/// Coupling complexity coefficient of `M ≥ 2` aligned streams: the minimum
/// over members of the mutual information between that member and the
/// vector of consecutive-pair transcripts
/// `(T(s¹,s²), …, T(s^{M−1},s^M))`.
///
/// Exactly 0 when all streams are identical, and invariant (bitwise) under
/// permuting the list.
pub fn ccc(series: &[SymbolSeries], base: LogBase) -> Result<f64> {
    if series.len() < 2 {
        return Err(Error::invalid_parameter(
            "series",
            series.len().to_string(),
            "coupling complexity needs at least two streams",
        ));
    }
    let first = &series[0];
    for s in &series[1..] {
        check_pair(first, s)?;
    }
    let len = first.len();
    if len == 0 {
        return Err(Error::EmptyInput {
            what: "symbol series",
        });
    }
    let alphabet = first.alphabet();
    let n = alphabet.size() as u128;
    let m = series.len();
    // The transcript vector has M−1 components; its joint with one member
    // needs n^M distinguishable keys.
    let mut cells = n;
    for _ in 0..m - 1 {
        cells = cells.checked_mul(n).ok_or_else(|| Error::UnsupportedSize {
            value: m,
            reason: "alphabet^M overflows the joint key space".to_string(),
        })?;
    }
    // Transcript-vector key per time step, in base-n digits.
    let mut vkeys = vec![0u128; len];
    for pair in series.windows(2) {
        for (t, key) in vkeys.iter_mut().enumerate() {
            let tau = alphabet.transcript(pair[0].symbols()[t], pair[1].symbols()[t]);
            *key = *key * n + tau as u128;
        }
    }
    let total = len as u64;
    let mut cv = CountTable::with_capacity(cells / n);
    for &v in &vkeys {
        cv.bump(v);
    }
    let hv = cv.entropy(total, base);
    let mut best = f64::INFINITY;
    for member in series {
        let mut cx = vec![0u64; n as usize];
        let mut cxv = CountTable::with_capacity(cells);
        for (t, &v) in vkeys.iter().enumerate() {
            let x = member.symbols()[t];
            cx[x] += 1;
            cxv.bump(v * n + x as u128);
        }
        let hx = entropy_from_counts(cx, total, base);
        let hxv = cxv.entropy(total, base);
        let mi = hx + (hv - hxv);
        if mi < best {
            best = mi;
        }
    }
    Ok(best)
}

/// Symbolic transfer entropy from `a` into `b` at horizon `lag ≥ 1`:
/// the conditional mutual information `I(b_{t+lag}; a_t | b_t)`.
pub fn symbolic_transfer_entropy(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lag: i64,
    base: LogBase,
) -> Result<f64> {
    let (x, y, z, total, n) = te_triples(a, b, lag)?;
    let nn = n as u128;
    let mut cz = vec![0u64; n];
    let mut cxz = CountTable::with_capacity(nn * nn);
    let mut cyz = CountTable::with_capacity(nn * nn);
    let mut cxyz = CountTable::with_capacity(nn * nn * nn);
    for t in 0..total as usize {
        let (xi, yi, zi) = (x[t] as u128, y[t] as u128, z[t] as u128);
        cz[z[t]] += 1;
        cxz.bump(xi * nn + zi);
        cyz.bump(yi * nn + zi);
        cxyz.bump((xi * nn + yi) * nn + zi);
    }
    let hxz = cxz.entropy(total, base);
    let hyz = cyz.entropy(total, base);
    let hz = entropy_from_counts(cz, total, base);
    let hxyz = cxyz.entropy(total, base);
    Ok((hxz - hxyz) + (hyz - hz))
}

#[allow(clippy::type_complexity)]
fn te_triples(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lag: i64,
) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>, u64, usize)> {
    check_pair(a, b)?;
    if lag < 1 {
        return Err(Error::invalid_parameter(
            "lag",
            lag.to_string(),
            "transfer measures need a strictly positive horizon",
        ));
    }
    let (start, end) = overlap_range(a.len(), lag)?;
    let n = a.alphabet().size();
    let lag = lag as usize;
    let mut x = Vec::with_capacity(end - start);
    let mut y = Vec::with_capacity(end - start);
    let mut z = Vec::with_capacity(end - start);
    for t in start..end {
        x.push(b.symbols()[t + lag]);
        y.push(a.symbols()[t]);
        z.push(b.symbols()[t]);
    }
    Ok((x, y, z, (end - start) as u64, n))
}

/// Transcript mutual information from `a` into `b` at horizon `lag ≥ 1`:
/// the mutual information between the target's backward self-transcript
/// `T(b_{t+lag}, b_t)` and the cross transcript `T(a_t, b_t)`.
pub fn transcript_mutual_information(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lag: i64,
    base: LogBase,
) -> Result<f64> {
    check_pair(a, b)?;
    if lag < 1 {
        return Err(Error::invalid_parameter(
            "lag",
            lag.to_string(),
            "transfer measures need a strictly positive horizon",
        ));
    }
    let (start, end) = overlap_range(a.len(), lag)?;
    let alphabet = a.alphabet();
    let n = alphabet.size();
    let lag = lag as usize;
    let mut cu = vec![0u64; n];
    let mut cv = vec![0u64; n];
    let mut cuv = CountTable::with_capacity((n as u128) * (n as u128));
    let mut total = 0u64;
    for t in start..end {
        let u = alphabet.transcript(b.symbols()[t + lag], b.symbols()[t]);
        let v = alphabet.transcript(a.symbols()[t], b.symbols()[t]);
        cu[u] += 1;
        cv[v] += 1;
        cuv.bump((u as u128) * (n as u128) + v as u128);
        total += 1;
    }
    let hu = entropy_from_counts(cu, total, base);
    let hv = entropy_from_counts(cv, total, base);
    let huv = cuv.entropy(total, base);
    Ok(hu + (hv - huv))
}

/// Directionality indicator: transcript mutual information from `a` into
/// `b` minus the reverse direction. Antisymmetric bitwise under swapping
/// the arguments.
pub fn directionality_indicator(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lag: i64,
    base: LogBase,
) -> Result<f64> {
    Ok(transcript_mutual_information(a, b, lag, base)?
        - transcript_mutual_information(b, a, lag, base)?)
}

/// One-shot summary of the directed coupling measures between two streams.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingReport {
    /// Horizon the transfer measures were evaluated at.
    pub lag: i64,
    /// Symbolic transfer entropy from source into target.
    pub te: f64,
    /// Transcript mutual information from source into target.
    pub tmi: f64,
    /// `TMI(source→target) − TMI(target→source)`.
    pub delta_ti: f64,
    /// Coupling complexity of `(target_{t+lag}, target_t, source_t)`: the
    /// vanishing of this premise makes TMI a faithful stand-in for TE.
    pub ccc: f64,
    /// `|te − tmi|`, the substitution error.
    pub epsilon: f64,
    /// Whether `H(target) ≤ H(source)` on the aligned range — the entropy
    /// premise of the TE/TMI equivalence.
    pub entropy_premise_holds: bool,
    /// Base all the above are reported in.
    pub log_base: LogBase,
}

/// Computes TE, TMI, the directionality indicator, the substitution error
/// `ε = |TE − TMI|`, and the equivalence premises in one pass.
pub fn coupling_report(
    source: &SymbolSeries,
    target: &SymbolSeries,
    lag: i64,
    base: LogBase,
) -> Result<CouplingReport> {
    let te = symbolic_transfer_entropy(source, target, lag, base)?;
    let tmi = transcript_mutual_information(source, target, lag, base)?;
    let delta_ti = tmi - transcript_mutual_information(target, source, lag, base)?;
    let (start, end) = overlap_range(source.len(), lag)?;
    let alphabet = source.alphabet().clone();
    let lag_u = lag as usize;
    let slice = |s: &SymbolSeries, from: usize, label: &str| {
        SymbolSeries::new(
            alphabet.clone(),
            s.symbols()[from..from + (end - start)].to_vec(),
            label,
        )
    };
    let target_ahead = slice(target, start + lag_u, "target+lag")?;
    let target_now = slice(target, start, "target")?;
    let source_now = slice(source, start, "source")?;
    let ccc_value = ccc(
        &[target_ahead, target_now.clone(), source_now.clone()],
        base,
    )?;
    let n = alphabet.size();
    let tally = |s: &SymbolSeries| {
        let mut c = vec![0u64; n];
        for &sym in s.symbols() {
            c[sym] += 1;
        }
        entropy_from_counts(c, s.len() as u64, base)
    };
    let entropy_premise_holds = tally(&target_now) <= tally(&source_now);
    Ok(CouplingReport {
        lag,
        te,
        tmi,
        delta_ti,
        ccc: ccc_value,
        epsilon: (te - tmi).abs(),
        entropy_premise_holds,
        log_base: base,
    })
}
