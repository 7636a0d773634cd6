use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use smallvec::SmallVec;

use super::{word_filt1, word_parity, Accum, GenIndex, SuperDims, Word, Yangian};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::series::SeriesCoefficient;

/// A tensor product of per-leg words.
///
/// Ordered by total level (`filt1`) descending, then lexicographically, so
/// printed elements lead with their highest-level terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    filt1: u32,
    words: SmallVec<[Word; 2]>,
}

impl Monomial {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Self {
        let words: SmallVec<[Word; 2]> = words.into_iter().collect();
        let filt1 = words.iter().map(|w| word_filt1(w)).sum();
        Self { filt1, words }
    }

    pub fn empty(legs: usize) -> Self {
        Self::new((0..legs).map(|_| Word::new()))
    }

    pub fn legs(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn leg(&self, h: usize) -> &Word {
        &self.words[h]
    }

    pub fn filt1(&self) -> u32 {
        self.filt1
    }

    pub fn filt2(&self) -> u32 {
        self.filt1 - self.words.iter().map(|w| w.len() as u32).sum::<u32>()
    }

    pub fn filt(&self, which: u8) -> u32 {
        if which == 1 {
            self.filt1()
        } else {
            self.filt2()
        }
    }

    pub fn is_unit(&self) -> bool {
        self.words.iter().all(|w| w.is_empty())
    }

    pub fn parity(&self, dims: SuperDims) -> u8 {
        self.words.iter().map(|w| word_parity(w, dims)).sum::<u8>() % 2
    }

    pub fn leg_parities(&self, dims: SuperDims) -> SmallVec<[u8; 4]> {
        self.words.iter().map(|w| word_parity(w, dims)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.filt1.cmp(&self.filt1).then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A normal-ordered element of `Y^{⊗legs}`.
#[derive(Clone)]
pub struct Element<S: Scalar> {
    alg: Arc<Yangian<S>>,
    legs: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> std::fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Element[{}; {} legs]({})", self.alg.dims(), self.legs, self)
    }
}

impl<S: Scalar> PartialEq for Element<S> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.dims() == other.alg.dims() && self.legs == other.legs && self.terms == other.terms
    }
}

impl<S: Scalar> Eq for Element<S> {}

impl<S: Scalar> Element<S> {
    pub fn zero(alg: &Arc<Yangian<S>>, legs: usize) -> Self {
        assert!(legs >= 1, "elements have at least one leg");
        Self { alg: alg.clone(), legs, terms: BTreeMap::new() }
    }

    pub fn scalar(alg: &Arc<Yangian<S>>, legs: usize, c: S) -> Self {
        let mut e = Self::zero(alg, legs);
        if !c.is_zero() {
            e.terms.insert(Monomial::empty(legs), c);
        }
        e
    }

    pub fn unit(alg: &Arc<Yangian<S>>, legs: usize) -> Self {
        Self::scalar(alg, legs, S::one())
    }

    /// `T_ij^(r)` on a single leg; level 0 gives `δ_ij`.
    pub fn generator(alg: &Arc<Yangian<S>>, i: usize, j: usize, r: usize) -> Self {
        Self::generator_on_leg(alg, 1, 0, i, j, r)
    }

    /// `T_ij^(r)` placed on leg `leg` (0-based) of a `legs`-leg element.
    pub fn generator_on_leg(alg: &Arc<Yangian<S>>, legs: usize, leg: usize, i: usize, j: usize, r: usize) -> Self {
        if r == 0 {
            return if i == j { Self::unit(alg, legs) } else { Self::zero(alg, legs) };
        }
        let mut words: SmallVec<[Word; 2]> = (0..legs).map(|_| Word::new()).collect();
        words[leg].push(GenIndex::new(i, j, r));
        let mut e = Self::zero(alg, legs);
        e.terms.insert(Monomial::new(words), S::one());
        e
    }

    /// The image of `e_ji ∈ gl(M|N)`: `-T_ij^(1) (-1)^{j̄}`.
    pub fn embed_gl(alg: &Arc<Yangian<S>>, i: usize, j: usize) -> Self {
        let sign = if alg.parity(j) == 1 { S::one() } else { -S::one() };
        Self::generator(alg, i, j, 1).scale(&sign)
    }

    /// Builds an element from raw per-leg words; each leg is normal-ordered
    /// independently and no sign is introduced.
    pub fn from_raw(alg: &Arc<Yangian<S>>, legs: usize, raw: impl IntoIterator<Item = (Vec<Word>, S)>) -> Result<Self> {
        let mut terms: HashMap<Monomial, S> = HashMap::new();
        for (words, c) in raw {
            if words.len() != legs {
                return Err(Error::LegMismatch { left: legs, right: words.len() });
            }
            for w in &words {
                for &g in w.iter() {
                    alg.check_index(g)?;
                }
            }
            let per_leg: Vec<Vec<(Word, S)>> = words.iter().map(|w| alg.normal_form_word(w)).collect();
            expand_legs(&per_leg, c, &mut terms);
        }
        Ok(Self::from_map(alg, legs, terms))
    }

    pub(crate) fn from_map(alg: &Arc<Yangian<S>>, legs: usize, terms: HashMap<Monomial, S>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { alg: alg.clone(), legs, terms }
    }

    /// Builds from monomials already known to be normal.
    pub fn from_normal_terms(alg: &Arc<Yangian<S>>, legs: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut map: HashMap<Monomial, S> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.legs(), legs);
            debug_assert!(m.words().iter().all(|w| super::is_normal_word(w, alg.dims())));
            let e = map.entry(m).or_insert_with(S::zero);
            *e = e.clone() + c;
        }
        Self::from_map(alg, legs, map)
    }

    pub fn algebra(&self) -> &Arc<Yangian<S>> {
        &self.alg
    }

    pub fn dims(&self) -> SuperDims {
        self.alg.dims()
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the unit monomial; on a single leg this is the counit.
    pub fn constant_term(&self) -> S {
        self.coefficient(&Monomial::empty(self.legs))
    }

    /// `Some(c)` when the element is `c·1`.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alg.dims() != other.alg.dims() {
            return Err(Error::AlgebraMismatch(self.alg.dims().to_string(), other.alg.dims().to_string()));
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &S::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other, &-S::one());
        Ok(out)
    }

    /// `self += k · other`.
    pub fn add_scaled(&mut self, other: &Self, k: &S) -> Result<()> {
        self.check_compatible(other)?;
        self.add_assign_unchecked(other, k);
        Ok(())
    }

    fn add_assign_unchecked(&mut self, other: &Self, k: &S) {
        for (m, c) in &other.terms {
            let add = c.clone() * k.clone();
            match self.terms.get_mut(m) {
                Some(v) => {
                    *v = v.clone() + add;
                    if v.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    if !add.is_zero() {
                        self.terms.insert(m.clone(), add);
                    }
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero(&self.alg, self.legs);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect();
        Self { alg: self.alg.clone(), legs: self.legs, terms }
    }

    /// Product in `Y^{⊗legs}` with the Koszul sign
    /// `(X⊗Y)(X'⊗Y') = XX'⊗YY' (-1)^{deg X' deg Y}` iterated over legs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.dims();
        let mut terms: HashMap<Monomial, S> = HashMap::new();
        for (ma, ca) in &self.terms {
            let pa = ma.leg_parities(d);
            for (mb, cb) in &other.terms {
                let pb = mb.leg_parities(d);
                let mut flips = 0u32;
                for p in 0..self.legs {
                    if pb[p] == 1 {
                        flips += pa[p + 1..].iter().map(|&x| x as u32).sum::<u32>();
                    }
                }
                let mut c = ca.clone() * cb.clone();
                if flips % 2 == 1 {
                    c = -c;
                }
                let per_leg: Vec<Vec<(Word, S)>> = (0..self.legs)
                    .map(|h| {
                        let mut acc: Accum<S> = HashMap::new();
                        self.alg.mul_word_raw_into(ma.leg(h), mb.leg(h), &S::one(), &mut acc);
                        acc.into_iter().collect()
                    })
                    .collect();
                expand_legs(&per_leg, c, &mut terms);
            }
        }
        Ok(Self::from_map(&self.alg, self.legs, terms))
    }

    /// Splits into parity-homogeneous components `(even, odd)`.
    pub fn homogeneous_parts(&self) -> (Self, Self) {
        let d = self.dims();
        let mut even = Self::zero(&self.alg, self.legs);
        let mut odd = Self::zero(&self.alg, self.legs);
        for (m, c) in &self.terms {
            let target = if m.parity(d) == 0 { &mut even } else { &mut odd };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// Parity of a homogeneous nonzero element.
    pub fn parity(&self) -> Option<u8> {
        let d = self.dims();
        let mut it = self.terms.keys().map(|m| m.parity(d));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// `[x, y] = xy - (-1)^{|x||y|} yx`, extended bilinearly over the
    /// homogeneous components.
    pub fn supercommutator(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (xe, xo) = self.homogeneous_parts();
        let (ye, yo) = other.homogeneous_parts();
        let mut out = Self::zero(&self.alg, self.legs);
        for (x, px) in [(&xe, 0u8), (&xo, 1)] {
            if x.is_zero() {
                continue;
            }
            for (y, py) in [(&ye, 0u8), (&yo, 1)] {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y)?;
                let yx = y.mul(x)?;
                let k = if px * py == 1 { S::one() } else { -S::one() };
                out.add_assign_unchecked(&xy, &S::one());
                out.add_assign_unchecked(&yx, &k);
            }
        }
        Ok(out)
    }

    pub fn filt_degree(&self, which: u8) -> Result<u32> {
        check_which(which)?;
        self.terms.keys().map(|m| m.filt(which)).max().ok_or(Error::ZeroElement)
    }

    /// The terms attaining the top degree of the chosen filtration.
    pub fn top_symbol(&self, which: u8) -> Result<Self> {
        let top = self.filt_degree(which)?;
        Ok(self.component(which, top))
    }

    /// The terms of exactly the given filtration degree.
    pub fn component(&self, which: u8, degree: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.filt(which) == degree).map(|(m, c)| (m.clone(), c.clone())).collect();
        Self { alg: self.alg.clone(), legs: self.legs, terms }
    }

    /// Largest generator level appearing anywhere.
    pub fn max_level(&self) -> usize {
        self.terms.keys().flat_map(|m| m.words().iter().flat_map(|w| w.iter().map(|g| g.r as usize))).max().unwrap_or(0)
    }

    /// Concatenates legs: `self ⊗ other` with no sign.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.alg.dims() != other.alg.dims() {
            return Err(Error::AlgebraMismatch(self.alg.dims().to_string(), other.alg.dims().to_string()));
        }
        let mut terms = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = Monomial::new(ma.words().iter().chain(mb.words()).cloned());
                terms.insert(m, ca.clone() * cb.clone());
            }
        }
        Ok(Self::from_map(&self.alg, self.legs + other.legs, terms))
    }
}

fn check_which(which: u8) -> Result<()> {
    if which == 1 || which == 2 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("filtration must be 1 or 2, got {which}")))
    }
}

/// Cartesian product of per-leg normal forms, scaled by `c`, into `terms`.
fn expand_legs<S: Scalar>(per_leg: &[Vec<(Word, S)>], c: S, terms: &mut HashMap<Monomial, S>) {
    if per_leg.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; per_leg.len()];
    loop {
        let mut coeff = c.clone();
        for (h, &k) in idx.iter().enumerate() {
            coeff = coeff * per_leg[h][k].1.clone();
        }
        let m = Monomial::new(idx.iter().enumerate().map(|(h, &k)| per_leg[h][k].0.clone()));
        match terms.get_mut(&m) {
            Some(v) => *v = v.clone() + coeff,
            None => {
                terms.insert(m, coeff);
            }
        }
        let mut h = per_leg.len();
        loop {
            if h == 0 {
                return;
            }
            h -= 1;
            idx[h] += 1;
            if idx[h] < per_leg[h].len() {
                break;
            }
            idx[h] = 0;
        }
    }
}

impl<S: Scalar> Ring for Element<S> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.alg, self.legs)
    }
    fn one_like(&self) -> Self {
        Self::unit(&self.alg, self.legs)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("elements of the same algebra and leg count")
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("elements of the same algebra and leg count")
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, k: &BigInt) -> Self {
        self.scale(&S::from_bigint(k))
    }
}

impl<S: Scalar> SeriesCoefficient for Element<S> {
    fn scalar_text(&self) -> Option<String> {
        self.as_scalar().map(|c| c.to_string())
    }
    fn braced_text(&self) -> String {
        self.to_string()
    }
}

/// Accumulates normal words of a single leg into an element.
pub(crate) fn element_from_accum<S: Scalar>(alg: &Arc<Yangian<S>>, acc: Accum<S>) -> Element<S> {
    let terms = acc.into_iter().map(|(w, c)| (Monomial::new([w]), c)).collect();
    Element::from_map(alg, 1, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn koszul_sign_across_legs() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let a = Element::generator_on_leg(&y, 2, 0, 1, 2, 1);
        let b = Element::generator_on_leg(&y, 2, 1, 2, 1, 1);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_string(), "1*T[1,2,1] (x) T[2,1,1]");
        let c = Element::generator_on_leg(&y, 2, 1, 1, 2, 1);
        let d = Element::generator_on_leg(&y, 2, 0, 2, 1, 1);
        assert_eq!(c.mul(&d).unwrap().to_string(), "-1*T[2,1,1] (x) T[1,2,1]");
    }

    #[test]
    fn unit_is_neutral() {
        let y = Yangian::<Q>::new(2, 1).unwrap();
        let x = Element::generator(&y, 1, 3, 2).add(&Element::generator(&y, 2, 2, 1)).unwrap();
        let one = Element::unit(&y, 1);
        assert_eq!(x.mul(&one).unwrap(), x);
        assert_eq!(one.mul(&x).unwrap(), x);
        assert!(one.supercommutator(&x).unwrap().is_zero());
    }

    #[test]
    fn anticommutator_of_odd_generators() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let a = Element::generator(&y, 1, 2, 1);
        let b = Element::generator(&y, 2, 1, 1);
        let expected = Element::generator(&y, 1, 1, 1).sub(&Element::generator(&y, 2, 2, 1)).unwrap();
        assert_eq!(a.supercommutator(&b).unwrap(), expected);
    }

    #[test]
    fn filtration_degrees() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let t = Element::generator(&y, 1, 2, 3);
        assert_eq!(t.filt_degree(1).unwrap(), 3);
        assert_eq!(t.filt_degree(2).unwrap(), 2);
        assert_eq!(Element::scalar(&y, 1, q(5)).filt_degree(1).unwrap(), 0);
        let p = Element::generator(&y, 1, 1, 2).mul(&Element::generator(&y, 2, 2, 3)).unwrap();
        assert_eq!(p.filt_degree(2).unwrap(), 3);
        assert_eq!(Element::zero(&y, 1).filt_degree(1).unwrap_err(), Error::ZeroElement);
        let s = Element::generator(&y, 1, 2, 2).add(&Element::generator(&y, 1, 2, 1)).unwrap();
        assert_eq!(s.top_symbol(2).unwrap(), Element::generator(&y, 1, 2, 2));
        let five = Element::scalar(&y, 1, q(5));
        assert_eq!(five.top_symbol(1).unwrap(), five);
    }

    #[test]
    fn mismatches_are_errors() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let z = Yangian::<Q>::new(2, 1).unwrap();
        let a = Element::generator(&y, 1, 1, 1);
        assert!(matches!(a.mul(&Element::generator(&z, 1, 1, 1)), Err(Error::AlgebraMismatch(..))));
        assert!(matches!(a.add(&Element::unit(&y, 2)), Err(Error::LegMismatch { .. })));
    }

    #[test]
    fn gl_embedding_brackets() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let e12 = Element::embed_gl(&y, 1, 2);
        let e21 = Element::embed_gl(&y, 2, 1);
        let expected = Element::embed_gl(&y, 1, 1).add(&Element::embed_gl(&y, 2, 2)).unwrap();
        assert_eq!(e12.supercommutator(&e21).unwrap(), expected);
    }
}
