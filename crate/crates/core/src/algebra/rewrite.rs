//! Naive term rewriting with a caller-chosen redex schedule.
//!
//! This deliberately shares nothing with the memoized engine except the
//! commutator rule, so agreement between the two is evidence of confluence.

use std::collections::HashMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::element::element_from_accum;
use super::{accum_add, Accum, Element, GenIndex, Word, Yangian};
use crate::check::CheckReport;
use crate::scalar::Scalar;

fn redexes<S: Scalar>(alg: &Yangian<S>, w: &[GenIndex]) -> Vec<usize> {
    let d = alg.dims();
    (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1] || (w[p] == w[p + 1] && w[p].parity(d) == 1)).collect()
}

/// Normal-orders a raw single-leg word by repeatedly rewriting a randomly
/// chosen redex of a randomly chosen term.
pub fn normal_order_randomized<S: Scalar, R: Rng>(alg: &Arc<Yangian<S>>, raw: &[GenIndex], rng: &mut R) -> Element<S> {
    let d = alg.dims();
    let mut state: Accum<S> = HashMap::new();
    state.insert(raw.iter().copied().collect(), S::one());
    loop {
        let mut pending: Vec<(Word, Vec<usize>)> =
            state.keys().map(|w| (w.clone(), redexes(alg, w))).filter(|(_, r)| !r.is_empty()).collect();
        if pending.is_empty() {
            break;
        }
        pending.sort_by(|a, b| a.0.cmp(&b.0));
        let (w, spots) = pending.swap_remove(rng.gen_range(0..pending.len()));
        let p = spots[rng.gen_range(0..spots.len())];
        let c = state.remove(&w).expect("pending word is present");
        let (x, y) = (w[p], w[p + 1]);
        let splice = |mid: &[GenIndex]| -> Word { w[..p].iter().chain(mid).chain(&w[p + 2..]).copied().collect() };
        if x == y {
            let half = S::half();
            for (rw, rc) in alg.commutator_rule(x, x) {
                accum_add(&mut state, splice(&rw), c.clone() * rc * half.clone());
            }
        } else {
            let sign = if x.parity(d) * y.parity(d) == 1 { -S::one() } else { S::one() };
            accum_add(&mut state, splice(&[y, x]), c.clone() * sign);
            for (rw, rc) in alg.commutator_rule(x, y) {
                accum_add(&mut state, splice(&rw), c.clone() * rc);
            }
        }
    }
    element_from_accum(alg, state)
}

/// A random raw word of total level at most `max_filt1`, biased towards
/// out-of-order neighbours and repeated odd generators.
pub fn random_raw_word<R: Rng>(dims: super::SuperDims, max_filt1: u32, rng: &mut R) -> Word {
    let top = max_filt1.max(2);
    let mut budget = if rng.gen_bool(0.5) { top } else { rng.gen_range(2..=top) };
    let mut w = Word::new();
    while budget > 0 {
        if let Some(&last) = w.last() {
            if rng.gen_bool(0.15) && last.r as u32 <= budget {
                budget -= last.r as u32;
                w.push(last);
                continue;
            }
        }
        let r = if rng.gen_bool(0.6) { 1 } else { rng.gen_range(1..=budget.min(3)) };
        let (i, j) = (rng.gen_range(1..=dims.size()), rng.gen_range(1..=dims.size()));
        w.push(GenIndex::new(i, j, r as usize));
        budget -= r;
    }
    w
}

/// Normal-orders `words` random raw words of `filt1 <= max_filt1`, each under
/// `schedules_per_word` random redex schedules, and compares every result
/// with the memoized engine.
pub fn pbw_confluence<S: Scalar>(alg: &Arc<Yangian<S>>, words: usize, schedules_per_word: usize, max_filt1: u32, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!(
        "gl({}), {words} random words of filt1 <= {max_filt1}, {schedules_per_word} schedules each ({} schedules), seed {seed}",
        alg.dims(),
        words * schedules_per_word
    ));
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..words {
        let w = random_raw_word(alg.dims(), max_filt1, &mut rng);
        let engine =
            Element::from_normal_terms(alg, 1, alg.normal_form_word(&w).into_iter().map(|(nw, c)| (super::Monomial::new([nw]), c)));
        for k in 0..schedules_per_word {
            let naive = normal_order_randomized(alg, &w, &mut rng);
            let ok = naive == engine;
            report.record(
                ok,
                || format!("schedule {k} of {}", w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")),
                || naive.sub(&engine).map(|d| d.to_string()).unwrap_or_default(),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn agrees_with_the_engine_on_a_small_word() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let w = [GenIndex::new(2, 2, 1), GenIndex::new(2, 1, 2), GenIndex::new(1, 2, 1), GenIndex::new(1, 1, 1)];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let expected = Element::from_raw(&y, 1, [(vec![Word::from_slice(&w)], Q::from_integer(1.into()))]).unwrap();
        for _ in 0..20 {
            assert_eq!(normal_order_randomized(&y, &w, &mut rng), expected);
        }
    }

    #[test]
    fn random_words_respect_the_budget() {
        let d = super::super::SuperDims::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = random_raw_word(d, 6, &mut rng);
            assert!(!w.is_empty() && super::super::word_filt1(&w) <= 6);
        }
    }

    #[test]
    fn confluence_small() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let rep = pbw_confluence(&y, 10, 3, 4, 1);
        assert!(rep.passed, "{rep}");
        assert_eq!(rep.items_checked, 30);
    }
}
