//! Real-valued series, ordinal symbolization, and transcript series.
//!
//! A window of `L` samples taken `delay` apart is replaced by the
//! permutation that ranks it (ties broken by index order, or by seeded
//! jitter), giving a symbol stream over the `Sym(L)` alphabet. Two streams
//! over the same alphabet combine pointwise into a transcript stream
//! recording, at each time, the group element mapping one symbol onto the
//! other.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// How equal values inside a window are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Stable: earlier index ranks lower. Deterministic.
    #[default]
    IndexOrder,
    /// Add tiny seeded uniform noise to the series before ranking, so exact
    /// ties resolve randomly but reproducibly.
    Jitter { seed: u64 },
}

/// A finite real-valued series; every value is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeries<F: Scalar = f64> {
    label: String,
    values: Vec<F>,
}

impl<F: Scalar> RealSeries<F> {
    /// Builds a series, rejecting NaN and infinities.
    pub fn new(label: impl Into<String>, values: Vec<F>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(RealSeries {
            label: label.into(),
            values,
        })
    }

    /// Series labelled `"series"`.
    pub fn from_values(values: Vec<F>) -> Result<Self> {
        Self::new("series", values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Ranks one window into its ordinal pattern: the permutation whose `r`-th
/// entry is the 1-based position of the `r`-th smallest sample. Under
/// [`TieRule::IndexOrder`] equal values are taken in position order (stable
/// argsort); under [`TieRule::Jitter`] the window is perturbed by seeded
/// noise first.
///
/// `(1.7, 0.5, 1.2)` gives `231` (smallest at position 2, then 3, then 1);
/// `(2.0, 2.0, 1.0)` gives `312` under index order.
pub fn ordinal_pattern<F: Scalar>(window: &[F], tie: TieRule) -> Result<Permutation> {
    if let Some(index) = window.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteValue { index });
    }
    if window.is_empty() {
        return Err(Error::EmptyInput {
            what: "ordinal window",
        });
    }
    match tie {
        TieRule::IndexOrder => Ok(rank_window(window)),
        TieRule::Jitter { seed } => Ok(rank_window(&jittered(window, seed))),
    }
}

/// Stable argsort of finite values, 1-based.
fn rank_window<F: Scalar>(window: &[F]) -> Permutation {
    let mut order: Vec<usize> = (0..window.len()).collect();
    order.sort_by(|&a, &b| {
        window[a]
            .partial_cmp(&window[b])
            .expect("values checked finite")
    });
    Permutation::new(order.into_iter().map(|i| i + 1).collect())
        .expect("argsort of 0..L is a bijection")
}

/// A stream of symbols over a group alphabet.
#[derive(Debug, Clone)]
pub struct SymbolSeries {
    alphabet: Alphabet,
    symbols: Vec<usize>,
    label: String,
}

impl SymbolSeries {
    /// Builds a symbol stream, checking every symbol against the alphabet.
    pub fn new(
        alphabet: Alphabet,
        symbols: Vec<usize>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let size = alphabet.size();
        for (position, &symbol) in symbols.iter().enumerate() {
            if symbol >= size {
                return Err(Error::SymbolOutOfRange {
                    symbol,
                    size,
                    position,
                });
            }
        }
        Ok(SymbolSeries {
            alphabet,
            symbols,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Per-symbol human-readable labels (one-line permutation forms for
    /// ordinal alphabets).
    pub fn symbol_labels(&self) -> Vec<String> {
        self.symbols.iter().map(|&s| self.alphabet.label(s)).collect()
    }
}

/// Symbolizes a real series with ordinal patterns of the given window
/// length and delay. Output length is `N - (L-1)*delay`.
pub fn symbolize<F: Scalar>(
    series: &RealSeries<F>,
    length: usize,
    delay: usize,
    tie: TieRule,
) -> Result<SymbolSeries> {
    if length < 2 {
        return Err(Error::invalid_parameter(
            "length",
            length.to_string(),
            "window length must be at least 2",
        ));
    }
    if delay < 1 {
        return Err(Error::invalid_parameter(
            "delay",
            delay.to_string(),
            "delay must be at least 1",
        ));
    }
    let alphabet = Alphabet::sym(length)?;
    let span = (length - 1) * delay;
    let n = series.len();
    if n <= span {
        return Err(Error::SeriesTooShort {
            len: n,
            need: span + 1,
        });
    }
    // Jitter is applied once to the whole series (not per window) so that
    // overlapping windows see consistent perturbed values.
    let values: Vec<F> = match tie {
        TieRule::IndexOrder => series.values().to_vec(),
        TieRule::Jitter { seed } => jittered(series.values(), seed),
    };
    let mut symbols = Vec::with_capacity(n - span);
    let mut window = vec![F::zero(); length];
    for t in 0..n - span {
        for (k, w) in window.iter_mut().enumerate() {
            *w = values[t + k * delay];
        }
        let rank = rank_window(&window)
            .lex_rank()
            .expect("length bounded by alphabet guard");
        symbols.push(rank);
    }
    SymbolSeries::new(alphabet, symbols, series.label())
}

/// Adds reproducible uniform noise scaled well below the data range, so
/// exact ties break randomly while distinct values almost surely keep
/// their order.
fn jittered<F: Scalar>(values: &[F], seed: u64) -> Vec<F> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        let v = v.to_f64().unwrap_or(0.0);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let range = if hi > lo { hi - lo } else { 1.0 };
    let amplitude = range * 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    values
        .iter()
        .map(|v| *v + F::from_f64_lossy(rng.gen::<f64>() * amplitude))
        .collect()
}

/// A transcript stream: pointwise group elements mapping a source stream
/// onto a (possibly shifted) target stream.
#[derive(Debug, Clone)]
pub struct TranscriptSeries {
    series: SymbolSeries,
    lag: i64,
    source_label: String,
    target_label: String,
}

impl TranscriptSeries {
    pub fn series(&self) -> &SymbolSeries {
        &self.series
    }

    pub fn lag(&self) -> i64 {
        self.lag
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn target_label(&self) -> &str {
        &self.target_label
    }

    pub fn symbols(&self) -> &[usize] {
        self.series.symbols()
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn into_series(self) -> SymbolSeries {
        self.series
    }
}

/// Transcribes two equal-length streams over the same alphabet: at each
/// overlapping time `t`, the element sending `source[t]` to
/// `target[t + lag]`. Times without a shifted partner are dropped, so the
/// output has `N - |lag|` entries.
pub fn transcribe(
    source: &SymbolSeries,
    target: &SymbolSeries,
    lag: i64,
) -> Result<TranscriptSeries> {
    transcribe_inner(source, target, lag, false)
}

/// Like [`transcribe`], but keeps length `N` by writing the identity at
/// times with no shifted partner instead of dropping them.
pub fn transcribe_padded(
    source: &SymbolSeries,
    target: &SymbolSeries,
    lag: i64,
) -> Result<TranscriptSeries> {
    transcribe_inner(source, target, lag, true)
}

/// Transcribes every ordered pair of streams, including each stream with
/// itself (the diagonal holds self-transcripts when its delay is nonzero).
/// `delays[j][k]` is the lag used for the pair `(j, k)`; keys are 0-based
/// stream indices.
pub fn pairwise_transcriptions(
    series: &[SymbolSeries],
    delays: &[Vec<i64>],
) -> Result<BTreeMap<(usize, usize), TranscriptSeries>> {
    if series.is_empty() {
        return Err(Error::EmptyInput {
            what: "series list",
        });
    }
    let m = series.len();
    if delays.len() != m || delays.iter().any(|row| row.len() != m) {
        return Err(Error::invalid_parameter(
            "delays",
            format!("{}x{:?}", delays.len(), delays.iter().map(Vec::len).collect::<Vec<_>>()),
            format!("delay matrix must be {m}x{m}"),
        ));
    }
    let mut out = BTreeMap::new();
    for (j, source) in series.iter().enumerate() {
        for (k, target) in series.iter().enumerate() {
            out.insert((j, k), transcribe(source, target, delays[j][k])?);
        }
    }
    Ok(out)
}

fn transcribe_inner(
    source: &SymbolSeries,
    target: &SymbolSeries,
    lag: i64,
    pad: bool,
) -> Result<TranscriptSeries> {
    let alphabet = source.alphabet();
    if !alphabet.compatible(target.alphabet()) {
        return Err(Error::GroupMismatch {
            reason: "source and target streams use different alphabets".to_string(),
        });
    }
    if source.len() != target.len() {
        return Err(Error::LengthMismatch {
            left: source.len(),
            right: target.len(),
        });
    }
    let n = source.len() as i64;
    if lag.unsigned_abs() as i64 >= n {
        return Err(Error::SeriesTooShort {
            len: source.len(),
            need: lag.unsigned_abs() as usize + 1,
        });
    }
    let identity = alphabet.identity();
    let src = source.symbols();
    let tgt = target.symbols();
    let mut symbols = Vec::with_capacity(source.len());
    for t in 0..n {
        let shifted = t + lag;
        if shifted < 0 || shifted >= n {
            if pad {
                symbols.push(identity);
            }
            continue;
        }
        symbols.push(alphabet.transcript(src[t as usize], tgt[shifted as usize]));
    }
    let label = format!("{}->{}", source.label(), target.label());
    Ok(TranscriptSeries {
        series: SymbolSeries::new(alphabet.clone(), symbols, label)?,
        lag,
        source_label: source.label().to_string(),
        target_label: target.label().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3_stream(ranks: &[usize]) -> SymbolSeries {
        SymbolSeries::new(Alphabet::sym(3).unwrap(), ranks.to_vec(), "s").unwrap()
    }

    fn rank_of(one_line: &[usize]) -> usize {
        Permutation::new(one_line.to_vec()).unwrap().lex_rank().unwrap()
    }

    #[test]
    fn window_ranking_examples() {
        let p = ordinal_pattern(&[1.7, 0.5, 1.2], TieRule::IndexOrder).unwrap();
        assert_eq!(p.one_line_string(), "231");
        let p = ordinal_pattern(&[0.1, 0.2, 0.3], TieRule::IndexOrder).unwrap();
        assert_eq!(p.one_line_string(), "123");
        let p = ordinal_pattern(&[3.0, 1.0, 2.0], TieRule::IndexOrder).unwrap();
        assert_eq!(p.one_line_string(), "231");
    }

    #[test]
    fn ties_rank_by_index() {
        let p = ordinal_pattern(&[2.0, 2.0, 1.0], TieRule::IndexOrder).unwrap();
        assert_eq!(p.one_line_string(), "312");
        let p = ordinal_pattern(&[1.0, 1.0, 1.0, 1.0], TieRule::IndexOrder).unwrap();
        assert_eq!(p.one_line_string(), "1234");
    }

    #[test]
    fn window_guards() {
        assert!(matches!(
            ordinal_pattern::<f64>(&[], TieRule::IndexOrder),
            Err(Error::EmptyInput { .. })
        ));
        assert!(matches!(
            ordinal_pattern(&[1.0, f64::NAN], TieRule::IndexOrder),
            Err(Error::NonFiniteValue { index: 1 })
        ));
    }

    #[test]
    fn symbolize_short_series() {
        let x = RealSeries::new("x", vec![3.0, 1.0, 2.0, 5.0, 4.0]).unwrap();
        let s = symbolize(&x, 3, 1, TieRule::IndexOrder).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(
            s.symbol_labels(),
            vec!["231".to_string(), "123".to_string(), "132".to_string()]
        );
        let s = symbolize(&x, 3, 2, TieRule::IndexOrder).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.symbol_labels(), vec!["213".to_string()]);
    }

    #[test]
    fn symbolize_guards() {
        let x = RealSeries::new("x", vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            symbolize(&x, 1, 1, TieRule::IndexOrder),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            symbolize(&x, 2, 0, TieRule::IndexOrder),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            symbolize(&x, 4, 1, TieRule::IndexOrder),
            Err(Error::SeriesTooShort { len: 3, need: 4 })
        ));
        assert!(RealSeries::new("x", vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn jitter_is_reproducible_and_respects_distinct_values() {
        let x = RealSeries::new("x", vec![3.0, 1.0, 2.0, 5.0, 4.0]).unwrap();
        let plain = symbolize(&x, 3, 1, TieRule::IndexOrder).unwrap();
        let a = symbolize(&x, 3, 1, TieRule::Jitter { seed: 7 }).unwrap();
        let b = symbolize(&x, 3, 1, TieRule::Jitter { seed: 7 }).unwrap();
        assert_eq!(a.symbols(), b.symbols());
        assert_eq!(a.symbols(), plain.symbols(), "no ties: jitter is inert");
    }

    #[test]
    fn jitter_breaks_exact_ties_differently_across_seeds() {
        let x = RealSeries::new("x", vec![1.0; 64]).unwrap();
        let index_rule = symbolize(&x, 3, 1, TieRule::IndexOrder).unwrap();
        assert!(index_rule.symbols().iter().all(|&s| s == 0));
        let jit = symbolize(&x, 3, 1, TieRule::Jitter { seed: 1 }).unwrap();
        assert!(
            jit.symbols().iter().any(|&s| s != 0),
            "jitter should shuffle an all-ties series"
        );
    }

    #[test]
    fn transcribe_zero_lag() {
        let a = sym3_stream(&[rank_of(&[1, 2, 3]), rank_of(&[1, 3, 2])]);
        let b = sym3_stream(&[rank_of(&[2, 1, 3]), rank_of(&[2, 3, 1])]);
        let t = transcribe(&a, &b, 0).unwrap();
        assert_eq!(
            t.series().symbol_labels(),
            vec!["213".to_string(), "321".to_string()]
        );
    }

    #[test]
    fn transcribe_lags_trim_to_overlap() {
        let a = sym3_stream(&[rank_of(&[1, 2, 3]), rank_of(&[1, 3, 2])]);
        let b = sym3_stream(&[rank_of(&[2, 1, 3]), rank_of(&[2, 3, 1])]);
        let t = transcribe(&a, &b, 1).unwrap();
        assert_eq!(t.series().symbol_labels(), vec!["231".to_string()]);
        let t = transcribe(&a, &b, -1).unwrap();
        assert_eq!(t.series().symbol_labels(), vec!["312".to_string()]);
        assert!(matches!(
            transcribe(&a, &b, 2),
            Err(Error::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn transcribe_padded_keeps_length() {
        let a = sym3_stream(&[rank_of(&[1, 2, 3]), rank_of(&[1, 3, 2])]);
        let b = sym3_stream(&[rank_of(&[2, 1, 3]), rank_of(&[2, 3, 1])]);
        let t = transcribe_padded(&a, &b, -1).unwrap();
        assert_eq!(
            t.series().symbol_labels(),
            vec!["123".to_string(), "312".to_string()]
        );
        let t = transcribe_padded(&a, &b, 1).unwrap();
        assert_eq!(
            t.series().symbol_labels(),
            vec!["231".to_string(), "123".to_string()]
        );
    }

    #[test]
    fn transcribe_guards() {
        let a = sym3_stream(&[0, 1]);
        let short = sym3_stream(&[0]);
        assert!(matches!(
            transcribe(&a, &short, 0),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
        let other = SymbolSeries::new(Alphabet::sym(4).unwrap(), vec![0, 1], "t").unwrap();
        assert!(matches!(
            transcribe(&a, &other, 0),
            Err(Error::GroupMismatch { .. })
        ));
        assert!(SymbolSeries::new(Alphabet::sym(3).unwrap(), vec![6], "bad").is_err());
    }

    #[test]
    fn self_transcripts_step_through_the_series() {
        let a = sym3_stream(&[0, 2, 5, 1, 3]);
        let t = transcribe(&a, &a, 1).unwrap();
        assert_eq!(t.len(), 4);
        let alpha = a.alphabet();
        for (i, &tau) in t.symbols().iter().enumerate() {
            assert_eq!(tau, alpha.transcript(a.symbols()[i], a.symbols()[i + 1]));
        }
        let same = transcribe(&a, &a, 0).unwrap();
        assert!(same.symbols().iter().all(|&s| s == 0), "T(a,a) is the identity");
    }

    #[test]
    fn reverse_transcription_is_pointwise_inverse() {
        let a = sym3_stream(&[0, 2, 5, 1, 3, 4, 2]);
        let b = sym3_stream(&[3, 3, 0, 5, 2, 1, 4]);
        let alpha = a.alphabet().clone();
        for lag in [-3i64, -1, 0, 1, 2] {
            let fwd = transcribe(&a, &b, lag).unwrap();
            let rev = transcribe(&b, &a, -lag).unwrap();
            assert_eq!(fwd.len(), rev.len());
            for (&f, &r) in fwd.symbols().iter().zip(rev.symbols()) {
                assert_eq!(alpha.inverse(f), r, "lag {lag}");
            }
        }
    }

    #[test]
    fn pairwise_covers_all_ordered_pairs() {
        let a = sym3_stream(&[0, 2, 5, 1]);
        let b = sym3_stream(&[3, 3, 0, 5]);
        let zero = vec![vec![0i64; 2]; 2];
        let map = pairwise_transcriptions(&[a.clone(), b.clone()], &zero).unwrap();
        assert_eq!(map.len(), 4);
        assert!(map[&(0, 0)].symbols().iter().all(|&s| s == 0));
        assert!(map[&(1, 1)].symbols().iter().all(|&s| s == 0));
        let cross = transcribe(&a, &b, 0).unwrap();
        assert_eq!(map[&(0, 1)].symbols(), cross.symbols());
        let alpha = a.alphabet();
        for (&f, &r) in map[&(0, 1)].symbols().iter().zip(map[&(1, 0)].symbols()) {
            assert_eq!(alpha.inverse(f), r);
        }

        let delays = vec![vec![1, 0], vec![-1, 2]];
        let map = pairwise_transcriptions(&[a.clone(), b.clone()], &delays).unwrap();
        for (j, s) in [&a, &b].iter().enumerate() {
            for (k, t) in [&a, &b].iter().enumerate() {
                let expect = transcribe(s, t, delays[j][k]).unwrap();
                assert_eq!(map[&(j, k)].symbols(), expect.symbols());
            }
        }

        let bad = vec![vec![0i64; 3]; 2];
        assert!(pairwise_transcriptions(&[a, b], &bad).is_err());
        assert!(pairwise_transcriptions(&[], &zero).is_err());
    }

    #[test]
    fn transcript_recovers_target_from_source() {
        let a = sym3_stream(&[0, 1, 2, 3, 4, 5, 3, 1]);
        let b = sym3_stream(&[5, 4, 3, 2, 1, 0, 2, 2]);
        let t = transcribe(&a, &b, 0).unwrap();
        let alpha = a.alphabet();
        for ((&r, &s), &tau) in a
            .symbols()
            .iter()
            .zip(b.symbols())
            .zip(t.symbols())
        {
            assert_eq!(alpha.op(tau, r), s, "applying the transcript lands on the target");
        }
    }
}
