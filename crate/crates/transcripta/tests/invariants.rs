//! Property-based checks of the library's algebraic and information-theoretic
//! invariants on randomized inputs.

use proptest::prelude::*;
use std::ops::Range;
use transcripta::{
    ccc, cayley_distance, directionality_indicator, estimate_dist, js_distance, js_divergence,
    kendall_distance, kl_divergence, normalized_entropy, shannon_entropy, similarity_distance,
    statistical_complexity, symbolic_transfer_entropy, symbolize, symmetrized_kl, transcribe,
    transcribe_padded, transcript, transcript_mutual_information, Alphabet, FiniteGroup, LogBase,
    Permutation, ProbDist, RealSeries, SymbolSeries, TieRule,
};

fn perm(len: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=len).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|entries| Permutation::new(entries).unwrap())
}

fn perm_any() -> impl Strategy<Value = Permutation> {
    (2usize..=7).prop_flat_map(perm)
}

fn perm_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (2usize..=7).prop_flat_map(|n| (perm(n), perm(n)))
}

fn perm_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (2usize..=7).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn dist(n_range: Range<usize>) -> impl Strategy<Value = ProbDist> {
    n_range
        .prop_flat_map(|n| prop::collection::vec(0u64..50, n))
        .prop_filter("at least one positive count", |c| c.iter().any(|&x| x > 0))
        .prop_map(|c| ProbDist::from_counts(&c).unwrap())
}

fn dist_pair(n_range: Range<usize>) -> impl Strategy<Value = (ProbDist, ProbDist)> {
    n_range
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0u64..50, n),
                prop::collection::vec(0u64..50, n),
            )
        })
        .prop_filter("at least one positive count each", |(a, b)| {
            a.iter().any(|&x| x > 0) && b.iter().any(|&x| x > 0)
        })
        .prop_map(|(a, b)| {
            (
                ProbDist::from_counts(&a).unwrap(),
                ProbDist::from_counts(&b).unwrap(),
            )
        })
}

fn stream(degree: usize, len_range: Range<usize>) -> impl Strategy<Value = SymbolSeries> {
    let size = Alphabet::sym(degree).unwrap().size();
    prop::collection::vec(0..size, len_range).prop_map(move |symbols| {
        SymbolSeries::new(Alphabet::sym(degree).unwrap(), symbols, "stream").unwrap()
    })
}

fn stream_pair(
    degree: usize,
    len_range: Range<usize>,
) -> impl Strategy<Value = (SymbolSeries, SymbolSeries)> {
    let size = Alphabet::sym(degree).unwrap().size();
    len_range
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0..size, n),
                prop::collection::vec(0..size, n),
            )
        })
        .prop_map(move |(a, b)| {
            (
                SymbolSeries::new(Alphabet::sym(degree).unwrap(), a, "a").unwrap(),
                SymbolSeries::new(Alphabet::sym(degree).unwrap(), b, "b").unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn lexicographic_rank_round_trips(p in perm_any()) {
        let rank = p.lex_rank().unwrap();
        prop_assert_eq!(Permutation::from_lex_rank(rank, p.len()).unwrap(), p);
    }

    #[test]
    fn inverse_cancels_on_both_sides(p in perm_any()) {
        prop_assert!(p.compose_right(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose_right(&p).unwrap().is_identity());
    }

    #[test]
    fn transcript_carries_source_to_target((a, b) in perm_pair()) {
        let t = transcript(&a, &b).unwrap();
        prop_assert_eq!(t.compose_right(&a).unwrap(), b);
    }

    #[test]
    fn swapping_endpoints_inverts_the_transcript((a, b) in perm_pair()) {
        let forward = transcript(&a, &b).unwrap();
        let backward = transcript(&b, &a).unwrap();
        prop_assert_eq!(backward, forward.inverse());
    }

    #[test]
    fn transcripts_chain_across_a_midpoint((a, b, c) in perm_triple()) {
        let chained = transcript(&b, &c)
            .unwrap()
            .compose_right(&transcript(&a, &b).unwrap())
            .unwrap();
        prop_assert_eq!(chained, transcript(&a, &c).unwrap());
    }

    #[test]
    fn conjugate_transcript_is_the_conjugated_transcript((a, b) in perm_pair()) {
        let t = transcript(&a, &b).unwrap();
        let conjugated = a
            .inverse()
            .compose_right(&t)
            .unwrap()
            .compose_right(&a)
            .unwrap();
        prop_assert_eq!(conjugated, transcripta::conjugate_transcript(&a, &b).unwrap());
    }

    #[test]
    fn distances_are_metrics((a, b) in perm_pair()) {
        for d in [cayley_distance, kendall_distance] {
            prop_assert_eq!(d(&a, &a).unwrap(), 0);
            prop_assert_eq!(d(&a, &b).unwrap() == 0, a == b);
            prop_assert_eq!(d(&a, &b).unwrap(), d(&b, &a).unwrap());
        }
    }

    #[test]
    fn distances_satisfy_the_triangle_inequality((a, b, c) in perm_triple()) {
        for d in [cayley_distance, kendall_distance] {
            let ac = d(&a, &c).unwrap();
            let ab = d(&a, &b).unwrap();
            let bc = d(&b, &c).unwrap();
            prop_assert!(ac <= ab + bc, "{ac} > {ab} + {bc}");
        }
    }

    #[test]
    fn distances_are_right_translation_invariant((a, b, t) in perm_triple()) {
        let at = a.compose_right(&t).unwrap();
        let bt = b.compose_right(&t).unwrap();
        for d in [cayley_distance, kendall_distance] {
            prop_assert_eq!(d(&at, &bt).unwrap(), d(&a, &b).unwrap());
        }
    }

    #[test]
    fn cayley_bounds_kendall_and_parities_agree((a, b) in perm_pair()) {
        let dc = cayley_distance(&a, &b).unwrap();
        let dk = kendall_distance(&a, &b).unwrap();
        let n = a.len();
        prop_assert!(dc <= dk);
        prop_assert!(dc <= n - 1);
        prop_assert!(dk <= n * (n - 1) / 2);
        // Both reduce mod 2 to the sign of the transcript.
        prop_assert_eq!(dc % 2, dk % 2);
    }

    #[test]
    fn symbol_group_matches_permutation_arithmetic(
        degree in 3usize..=5,
        seed in any::<u64>(),
    ) {
        let alphabet = Alphabet::sym(degree).unwrap();
        let size = alphabet.size();
        let (i, j) = ((seed as usize) % size, (seed as usize / size) % size);
        let pi = Permutation::from_lex_rank(i, degree).unwrap();
        let pj = Permutation::from_lex_rank(j, degree).unwrap();
        prop_assert_eq!(
            alphabet.op(i, j),
            pi.compose_right(&pj).unwrap().lex_rank().unwrap()
        );
        prop_assert_eq!(alphabet.inverse(i), pi.inverse().lex_rank().unwrap());
        prop_assert_eq!(
            alphabet.transcript(i, j),
            transcript(&pi, &pj).unwrap().lex_rank().unwrap()
        );
        prop_assert_eq!(alphabet.element_order(i), pi.order());
    }

    #[test]
    fn ordinal_patterns_ignore_monotone_rescaling(
        values in prop::collection::vec(-1000i32..1000, 8..60),
        scale in 0.5f64..4.0,
        shift in -3.0f64..3.0,
        length in 2usize..=4,
        delay in 1usize..=3,
    ) {
        prop_assume!(values.len() > (length - 1) * delay);
        let base: Vec<f64> = values.iter().map(|&v| f64::from(v)).collect();
        let affine: Vec<f64> = base.iter().map(|&x| scale * x + shift).collect();
        let cubed: Vec<f64> = base.iter().map(|&x| x * x * x).collect();
        let symbolize_values = |vals: Vec<f64>| {
            symbolize(
                &RealSeries::from_values(vals).unwrap(),
                length,
                delay,
                TieRule::IndexOrder,
            )
            .unwrap()
        };
        let reference = symbolize_values(base);
        let affine = symbolize_values(affine);
        let cubed = symbolize_values(cubed);
        prop_assert_eq!(affine.symbols(), reference.symbols());
        prop_assert_eq!(cubed.symbols(), reference.symbols());
    }

    #[test]
    fn symbolization_consumes_the_lattice_span(
        values in prop::collection::vec(-1000i32..1000, 8..60),
        length in 2usize..=5,
        delay in 1usize..=4,
    ) {
        prop_assume!(values.len() > (length - 1) * delay);
        let series = RealSeries::from_values(values.iter().map(|&v| f64::from(v)).collect()).unwrap();
        let symbols = symbolize(&series, length, delay, TieRule::IndexOrder).unwrap();
        prop_assert_eq!(symbols.len(), series.len() - (length - 1) * delay);
    }

    #[test]
    fn padded_transcription_agrees_on_the_overlap(
        (a, b) in stream_pair(3, 4..40),
        lag in -3i64..=3,
    ) {
        prop_assume!((lag.unsigned_abs() as usize) < a.len());
        let trimmed = transcribe(&a, &b, lag).unwrap();
        let padded = transcribe_padded(&a, &b, lag).unwrap();
        prop_assert_eq!(padded.len(), a.len());
        let start = usize::try_from(-lag.min(0)).unwrap();
        let identity = a.alphabet().identity();
        for (offset, &symbol) in trimmed.symbols().iter().enumerate() {
            prop_assert_eq!(padded.symbols()[start + offset], symbol);
        }
        for (t, &symbol) in padded.symbols().iter().enumerate() {
            if t < start || t >= start + trimmed.len() {
                prop_assert_eq!(symbol, identity);
            }
        }
    }

    #[test]
    fn reverse_transcription_is_pointwise_inverse((a, b) in stream_pair(3, 2..40)) {
        let forward = transcribe(&a, &b, 0).unwrap();
        let backward = transcribe(&b, &a, 0).unwrap();
        let alphabet = a.alphabet();
        for (&f, &r) in forward.symbols().iter().zip(backward.symbols()) {
            prop_assert_eq!(alphabet.inverse(f), r);
        }
    }

    #[test]
    fn entropies_respect_their_bounds(p in dist(2..24)) {
        let n = p.len() as f64;
        let h = shannon_entropy(&p);
        prop_assert!((0.0..=n.ln() + 1e-12).contains(&h), "H = {h}");
        let normalized = normalized_entropy(&p).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&normalized));
        let sc = statistical_complexity(&p, None).unwrap();
        prop_assert!((0.0..=1.0).contains(&sc), "SC = {sc}");
    }

    #[test]
    fn divergences_respect_their_bounds((p, q) in dist_pair(2..24)) {
        let js = js_divergence(&p, &q).unwrap();
        prop_assert!((0.0..=std::f64::consts::LN_2 + 1e-12).contains(&js), "JS = {js}");
        prop_assert_eq!(js, js_divergence(&q, &p).unwrap());
        let kl = kl_divergence(&p, &q).unwrap();
        prop_assert!(kl >= 0.0);
        let sym = symmetrized_kl(&p, &q).unwrap();
        prop_assert!(sym >= 0.0);
        prop_assert_eq!(sym, symmetrized_kl(&q, &p).unwrap());
    }

    #[test]
    fn information_measures_have_plugin_guarantees((a, b) in stream_pair(3, 30..200)) {
        let mi = transcripta::mutual_information(&a, &b, 0, LogBase::Natural).unwrap();
        let ha = shannon_entropy(&estimate_dist(&a).unwrap());
        let hb = shannon_entropy(&estimate_dist(&b).unwrap());
        prop_assert!(mi >= -1e-9, "MI = {mi}");
        prop_assert!(mi <= ha.min(hb) + 1e-9, "MI = {mi} > min({ha}, {hb})");
        let te = symbolic_transfer_entropy(&a, &b, 1, LogBase::Natural).unwrap();
        let tmi = transcript_mutual_information(&a, &b, 1, LogBase::Natural).unwrap();
        prop_assert!(te >= -1e-9);
        prop_assert!(tmi >= -1e-9);
    }

    #[test]
    fn directionality_is_antisymmetric((a, b) in stream_pair(3, 10..120)) {
        let forward = directionality_indicator(&a, &b, 1, LogBase::Base2).unwrap();
        let backward = directionality_indicator(&b, &a, 1, LogBase::Base2).unwrap();
        prop_assert_eq!(forward, -backward);
    }

    #[test]
    fn self_comparison_measures_vanish_exactly(a in stream(3, 5..120)) {
        let clone = a.clone();
        prop_assert_eq!(ccc(&[a.clone(), clone], LogBase::Base2).unwrap(), 0.0);
        prop_assert_eq!(
            symbolic_transfer_entropy(&a, &a, 1, LogBase::Base2).unwrap(),
            0.0
        );
        prop_assert_eq!(similarity_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn similarity_distance_is_symmetric_and_normalized((a, b) in stream_pair(3, 1..120)) {
        let d = similarity_distance(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, similarity_distance(&b, &a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn js_distance_satisfies_the_triangle_inequality(
        n in 2usize..24,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let random_dist = |rng: &mut rand_chacha::ChaCha8Rng| {
            let probs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let total: f64 = probs.iter().sum();
            ProbDist::new(probs.iter().map(|p| p / total).collect()).unwrap()
        };
        let (p, q, r) = (
            random_dist(&mut rng),
            random_dist(&mut rng),
            random_dist(&mut rng),
        );
        let pq = js_distance(&p, &q).unwrap();
        let qr = js_distance(&q, &r).unwrap();
        let pr = js_distance(&p, &r).unwrap();
        prop_assert!(pr <= pq + qr + 1e-12, "{pr} > {pq} + {qr}");
    }
}

#[test]
fn element_orders_divide_the_group_size() {
    for degree in 2..=5 {
        let alphabet = Alphabet::sym(degree).unwrap();
        for i in 0..alphabet.size() {
            assert_eq!(alphabet.size() % alphabet.element_order(i), 0);
        }
    }
    for group in [FiniteGroup::klein(), FiniteGroup::cyclic(6).unwrap()] {
        for i in 0..group.size() {
            assert_eq!(group.size() % group.element_order(i), 0);
        }
    }
}

#[test]
fn transcript_tables_are_balanced_bijections() {
    // Every transcript value is realized by exactly |G| ordered pairs, and
    // fixing either endpoint makes the transcript a bijection of the group.
    for alphabet in [
        Alphabet::sym(3).unwrap(),
        Alphabet::table(std::sync::Arc::new(FiniteGroup::klein())),
    ] {
        let n = alphabet.size();
        let mut fiber_sizes = vec![0usize; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let t = alphabet.transcript(a, b);
                fiber_sizes[t] += 1;
                assert!(!seen[t], "transcript repeats with a fixed source");
                seen[t] = true;
            }
        }
        assert!(fiber_sizes.iter().all(|&c| c == n));
    }
}
