//! The Yangian of gl(M|N): generators, gradings, the commutator rule and a
//! memoized normal-ordering engine.
//!
//! Generators `T[i,j,r]` are ordered lexicographically on `(i, j, r)`. A word
//! is normal when it is non-decreasing and no odd generator repeats. The
//! engine multiplies a normal word on the right by one generator and caches
//! the normal form of every such product; everything else (element products,
//! normal ordering of raw input) is a fold over that primitive.

mod element;
mod rewrite;
mod text;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use element::{Element, Monomial};
pub use rewrite::{normal_order_randomized, pbw_confluence, random_raw_word};

/// The superdimension `(M|N)`; index `i` is even iff `i <= M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuperDims {
    pub m: u8,
    pub n: u8,
}

impl SuperDims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::InvalidArgument("M + N must be at least 1".into()));
        }
        if m + n > 64 {
            return Err(Error::SizeGuard(format!("M + N = {} is unreasonably large", m + n)));
        }
        Ok(Self { m: m as u8, n: n as u8 })
    }

    pub fn size(&self) -> usize {
        self.m as usize + self.n as usize
    }

    /// Parity of a 1-based index.
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i > self.m as usize)
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.size()
    }
}

impl fmt::Display for SuperDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.m, self.n)
    }
}

/// The generator `T_ij^(r)`; derived ordering is lexicographic on `(i, j, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex {
    pub i: u8,
    pub j: u8,
    pub r: u16,
}

impl GenIndex {
    pub fn new(i: usize, j: usize, r: usize) -> Self {
        Self { i: i as u8, j: j as u8, r: r as u16 }
    }

    pub fn parity(&self, dims: SuperDims) -> u8 {
        (dims.parity(self.i as usize) + dims.parity(self.j as usize)) % 2
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},{},{}]", self.i, self.j, self.r)
    }
}

pub type Word = SmallVec<[GenIndex; 4]>;

pub(crate) type Accum<S> = HashMap<Word, S>;

pub(crate) fn accum_add<S: Scalar>(acc: &mut Accum<S>, w: Word, c: S) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub fn word_parity(w: &[GenIndex], dims: SuperDims) -> u8 {
    w.iter().map(|g| g.parity(dims)).sum::<u8>() % 2
}

pub fn word_filt1(w: &[GenIndex]) -> u32 {
    w.iter().map(|g| g.r as u32).sum()
}

pub fn is_normal_word(w: &[GenIndex], dims: SuperDims) -> bool {
    w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && p[0].parity(dims) == 0))
}

/// All normal words with `filt1 <= max_filt1`, the empty word first, then in
/// order of filtration degree and lexicographically within a degree.
pub fn normal_words(dims: SuperDims, max_filt1: u32) -> Vec<Word> {
    let n = dims.size();
    let gens: Vec<GenIndex> =
        (1..=n).flat_map(|i| (1..=n).flat_map(move |j| (1..=max_filt1 as usize).map(move |r| GenIndex::new(i, j, r)))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Word, usize, u32)> = vec![(Word::new(), 0, 0)];
    while let Some((w, from, deg)) = stack.pop() {
        for (p, &g) in gens.iter().enumerate().skip(from) {
            let d = deg + g.r as u32;
            if d > max_filt1 {
                continue;
            }
            let mut next = w.clone();
            next.push(g);
            // an odd generator may not repeat, so the next one starts past it
            let resume = if g.parity(dims) == 1 { p + 1 } else { p };
            stack.push((next, resume, d));
        }
        out.push(w);
    }
    out.sort_by(|a, b| word_filt1(a).cmp(&word_filt1(b)).then_with(|| a.cmp(b)));
    out
}

/// Normal forms of `word · generator`, keyed by both.
type ProductCache<S> = RwLock<HashMap<(Word, GenIndex), Arc<Vec<(Word, S)>>>>;

/// An algebra context: the superdimension plus the product cache.
pub struct Yangian<S> {
    dims: SuperDims,
    cache: ProductCache<S>,
}

impl<S> fmt::Debug for Yangian<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y(gl({}))", self.dims)
    }
}

impl<S: Scalar> Yangian<S> {
    pub fn new(m: usize, n: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(Self { dims: SuperDims::new(m, n)?, cache: RwLock::new(HashMap::new()) }))
    }

    pub fn dims(&self) -> SuperDims {
        self.dims
    }

    pub fn size(&self) -> usize {
        self.dims.size()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.dims.parity(i)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    pub fn check_index(&self, g: GenIndex) -> Result<()> {
        let n = self.size();
        if g.i == 0 || g.j == 0 || g.i as usize > n || g.j as usize > n {
            return Err(Error::InvalidArgument(format!("{g} has an index outside 1..={n}")));
        }
        if g.r == 0 {
            return Err(Error::InvalidArgument(format!("{g} has level 0")));
        }
        Ok(())
    }

    /// `[T_a, T_b]` as a raw combination of words of length at most two.
    ///
    /// With `T^(0)_pq = δ_pq` and `σ = ī k̄ + ī l̄ + k̄ l̄`:
    /// `[T_ij^(r), T_kl^(s)] = (-1)^σ Σ_{a<min(r,s)} (T_kj^(a) T_il^(r+s-1-a) - T_kj^(r+s-1-a) T_il^(a))`.
    pub fn commutator_rule(&self, a: GenIndex, b: GenIndex) -> Vec<(Word, S)> {
        let d = self.dims;
        let (i, j, r) = (a.i as usize, a.j as usize, a.r as usize);
        let (k, l, s) = (b.i as usize, b.j as usize, b.r as usize);
        let (pi, pk, pl) = (d.parity(i), d.parity(k), d.parity(l));
        let sigma = (pi * pk + pi * pl + pk * pl) % 2;
        let sign = if sigma == 1 { -S::one() } else { S::one() };
        let mut acc: Accum<S> = HashMap::new();
        for t in 0..r.min(s) {
            let hi = r + s - 1 - t;
            if let Some(w) = level_pair(k, j, t, i, l, hi) {
                accum_add(&mut acc, w, sign.clone());
            }
            if let Some(w) = level_pair(k, j, hi, i, l, t) {
                accum_add(&mut acc, w, -sign.clone());
            }
        }
        let mut out: Vec<(Word, S)> = acc.into_iter().collect();
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Adds `coeff * (w · g)` in normal form to `acc`; `w` must be normal.
    pub(crate) fn mul_word_gen_into(&self, w: &Word, g: GenIndex, coeff: &S, acc: &mut Accum<S>) {
        if appends_cleanly(w, g, self.dims) {
            let mut nw = w.clone();
            nw.push(g);
            accum_add(acc, nw, coeff.clone());
            return;
        }
        let product = self.word_gen_product(w, g);
        for (pw, c) in product.iter() {
            accum_add(acc, pw.clone(), coeff.clone() * c.clone());
        }
    }

    /// Adds `coeff * (w · raw)` in normal form; `w` normal, `raw` arbitrary.
    pub(crate) fn mul_word_raw_into(&self, w: &Word, raw: &[GenIndex], coeff: &S, acc: &mut Accum<S>) {
        if raw.is_empty() {
            accum_add(acc, w.clone(), coeff.clone());
            return;
        }
        let mut cur: Accum<S> = HashMap::new();
        cur.insert(w.clone(), coeff.clone());
        for &g in &raw[..raw.len() - 1] {
            let mut next: Accum<S> = HashMap::with_capacity(cur.len());
            for (cw, cc) in &cur {
                self.mul_word_gen_into(cw, g, cc, &mut next);
            }
            cur = next;
        }
        let g = raw[raw.len() - 1];
        for (cw, cc) in &cur {
            self.mul_word_gen_into(cw, g, cc, acc);
        }
    }

    /// Normal form of a raw word as a sorted list of (normal word, coefficient).
    pub fn normal_form_word(&self, raw: &[GenIndex]) -> Vec<(Word, S)> {
        let mut acc = HashMap::new();
        self.mul_word_raw_into(&Word::new(), raw, &S::one(), &mut acc);
        let mut out: Vec<(Word, S)> = acc.into_iter().collect();
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    fn word_gen_product(&self, w: &Word, g: GenIndex) -> Arc<Vec<(Word, S)>> {
        let key = (w.clone(), g);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let d = self.dims;
        let x = *w.last().expect("nonempty word");
        let prefix: Word = w[..w.len() - 1].iter().copied().collect();
        let mut acc: Accum<S> = HashMap::new();
        if x == g {
            // odd square: x·x = ½[x,x]
            let half = S::half();
            for (rw, c) in self.commutator_rule(g, g) {
                self.mul_word_raw_into(&prefix, &rw, &(half.clone() * c), &mut acc);
            }
        } else {
            // x > g: x·g = ±g·x + [x,g]
            let sign = if x.parity(d) * g.parity(d) == 1 { -S::one() } else { S::one() };
            let mut head: Accum<S> = HashMap::new();
            self.mul_word_gen_into(&prefix, g, &sign, &mut head);
            for (hw, hc) in &head {
                self.mul_word_gen_into(hw, x, hc, &mut acc);
            }
            for (rw, c) in self.commutator_rule(x, g) {
                self.mul_word_raw_into(&prefix, &rw, &c, &mut acc);
            }
        }
        let mut out: Vec<(Word, S)> = acc.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let out = Arc::new(out);
        self.cache.write().expect("cache lock").insert(key, out.clone());
        out
    }
}

fn appends_cleanly(w: &Word, g: GenIndex, d: SuperDims) -> bool {
    match w.last() {
        None => true,
        Some(&x) => x < g || (x == g && g.parity(d) == 0),
    }
}

/// The word `T_ab^(s) T_cd^(t)` with `T^(0) = δ`; `None` when a δ vanishes.
fn level_pair(a: usize, b: usize, s: usize, c: usize, d: usize, t: usize) -> Option<Word> {
    let mut w = Word::new();
    for (p, q, lvl) in [(a, b, s), (c, d, t)] {
        if lvl == 0 {
            if p != q {
                return None;
            }
        } else {
            w.push(GenIndex::new(p, q, lvl));
        }
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    fn g(i: usize, j: usize, r: usize) -> GenIndex {
        GenIndex::new(i, j, r)
    }

    #[test]
    fn normal_word_counts_match_the_generating_function() {
        // Π_r (1+x^r)^2 / (1-x^r)^2 = 1 + 4x + 12x^2 + 32x^3 + ...
        let d = SuperDims::new(1, 1).unwrap();
        let words = normal_words(d, 3);
        let per_degree: Vec<usize> = (0..=3).map(|k| words.iter().filter(|w| word_filt1(w) == k).count()).collect();
        assert_eq!(per_degree, vec![1, 4, 12, 32]);
        assert!(words.iter().all(|w| is_normal_word(w, d)));
        assert!(words[0].is_empty());
    }

    #[test]
    fn parities_follow_the_block_split() {
        let d = SuperDims::new(2, 1).unwrap();
        assert_eq!(d.parity(2), 0);
        assert_eq!(d.parity(3), 1);
        assert_eq!(g(1, 3, 1).parity(d), 1);
        assert_eq!(g(3, 3, 1).parity(d), 0);
        assert!(SuperDims::new(0, 0).is_err());
    }

    #[test]
    fn generator_order_is_lexicographic() {
        assert!(g(1, 2, 5) < g(2, 1, 1));
        assert!(g(1, 1, 2) < g(1, 2, 1));
        assert!(g(1, 1, 1) < g(1, 1, 2));
    }

    #[test]
    fn level_one_rule() {
        // [T_12^(1), T_21^(1)] = T_11^(1) - T_22^(1) for gl(1|1)
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let rule = y.commutator_rule(g(1, 2, 1), g(2, 1, 1));
        let one = Q::from_integer(1.into());
        assert_eq!(rule, vec![(Word::from_slice(&[g(1, 1, 1)]), one.clone()), (Word::from_slice(&[g(2, 2, 1)]), -one)]);
    }

    #[test]
    fn gl1_is_commutative() {
        let y = Yangian::<Q>::new(1, 0).unwrap();
        for r in 1..=4 {
            for s in 1..=4 {
                let raw = y.commutator_rule(g(1, 1, r), g(1, 1, s)).into_iter().map(|(w, c)| (vec![w], c));
                assert!(Element::from_raw(&y, 1, raw).unwrap().is_zero(), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn swap_produces_the_commutator() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let nf = y.normal_form_word(&[g(2, 1, 1), g(1, 2, 1)]);
        let q = |n: i64| Q::from_integer(n.into());
        assert_eq!(
            nf,
            vec![
                (Word::from_slice(&[g(1, 1, 1)]), q(1)),
                (Word::from_slice(&[g(1, 2, 1), g(2, 1, 1)]), q(-1)),
                (Word::from_slice(&[g(2, 2, 1)]), q(-1)),
            ]
        );
        assert!(y.cache_len() > 0);
    }

    #[test]
    fn sorted_words_are_fixed_points() {
        let y = Yangian::<Q>::new(2, 1).unwrap();
        let w = [g(1, 1, 1), g(1, 1, 1), g(1, 3, 2), g(2, 2, 1)];
        let nf = y.normal_form_word(&w);
        assert_eq!(nf.len(), 1);
        assert_eq!(nf[0].0.as_slice(), &w);
    }

    #[test]
    fn odd_squares_are_eliminated() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let d = y.dims();
        for r in 1..=3 {
            let x = g(1, 2, r);
            for (w, _) in y.normal_form_word(&[x, x]) {
                assert!(is_normal_word(&w, d));
            }
        }
        // [T_12^(1), T_12^(1)] = 0, so the square vanishes
        assert!(y.normal_form_word(&[g(1, 2, 1), g(1, 2, 1)]).is_empty());
    }
}
