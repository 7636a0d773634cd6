//! The central series `Z(u)`, the quantum Berezinian `B(u)` and its
//! specializations.

use std::sync::Arc;

use super::matrix::{unit_series, ElementSeries, SeriesMatrix};
use super::morphism::substitute;
use crate::algebra::{Element, Yangian};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::series::SeriesTail;

/// `T(u)` and `T(u)^{-1}` at a fixed order, computed once and shared.
#[derive(Clone, Debug)]
pub struct RttData<S: Scalar> {
    t: SeriesMatrix<S>,
    tinv: SeriesMatrix<S>,
}

impl<S: Scalar> RttData<S> {
    pub fn new(alg: &Arc<Yangian<S>>, order: usize) -> Result<Self> {
        let t = SeriesMatrix::t_matrix(alg, order);
        let tinv = t.invert()?;
        Ok(Self { t, tinv })
    }

    pub fn algebra(&self) -> &Arc<Yangian<S>> {
        self.t.algebra()
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    pub fn t(&self) -> &SeriesMatrix<S> {
        &self.t
    }

    pub fn tinv(&self) -> &SeriesMatrix<S> {
        &self.tinv
    }

    fn shift(&self) -> i64 {
        let d = self.algebra().dims();
        d.m as i64 - d.n as i64
    }

    fn zero_series(&self) -> ElementSeries<S> {
        unit_series(self.algebra(), 1, self.order()).map(|c| c.zero_like())
    }

    /// `Σ_k T_kj(u+M-N) Ť_ik(u)`.
    pub fn zeta_v(&self, i: usize, j: usize) -> Result<ElementSeries<S>> {
        let c = self.shift();
        let mut acc = self.zero_series();
        for k in self.algebra().dims().indices() {
            acc = acc.add(&self.t.entry(k, j).shift(c).mul(self.tinv.entry(i, k))?)?;
        }
        Ok(acc)
    }

    /// `Σ_k Ť_kj(u) T_ik(u+M-N)`.
    pub fn zeta_u(&self, i: usize, j: usize) -> Result<ElementSeries<S>> {
        let c = self.shift();
        let mut acc = self.zero_series();
        for k in self.algebra().dims().indices() {
            acc = acc.add(&self.tinv.entry(k, j).mul(&self.t.entry(i, k).shift(c))?)?;
        }
        Ok(acc)
    }

    /// `Z(u)` from the `(1,1)` sum alone.
    pub fn z_series_unverified(&self) -> Result<ElementSeries<S>> {
        self.zeta_v(1, 1)
    }

    /// `Z(u)` from the `(1,1)` sum, after confirming that both families of
    /// sums equal `δ_ij Z(u)` for every `i, j`.
    pub fn z_series(&self) -> Result<ElementSeries<S>> {
        let z = self.zeta_v(1, 1)?;
        let zero = self.zero_series();
        for i in self.algebra().dims().indices() {
            for j in self.algebra().dims().indices() {
                let want = if i == j { &z } else { &zero };
                for (name, got) in [("v", self.zeta_v(i, j)?), ("u", self.zeta_u(i, j)?)] {
                    if !got.try_eq(want)? {
                        return Err(Error::Inconsistent(format!("zeta_{name}({i},{j}) disagrees with δ_ij Z(u)")));
                    }
                }
            }
        }
        Ok(z)
    }

    /// `Σ_σ sgn σ · T_{σ(1)1}(u+M-N-1) ⋯ T_{σ(M)M}(u-N)`, or 1 when `M = 0`.
    pub fn even_factor(&self) -> Result<ElementSeries<S>> {
        let d = self.algebra().dims();
        let (m, n) = (d.m as usize, d.n as usize);
        alternated_sum(self.algebra(), self.order(), m, |a, sa| (self.t.entry(sa, a).clone(), m as i64 - n as i64 - a as i64))
    }

    /// `Σ_σ sgn σ · Ť_{M+1,M+σ(1)}(u-N) ⋯ Ť_{M+N,M+σ(N)}(u-1)`, or 1 when `N = 0`.
    pub fn odd_factor(&self) -> Result<ElementSeries<S>> {
        let d = self.algebra().dims();
        let (m, n) = (d.m as usize, d.n as usize);
        alternated_sum(self.algebra(), self.order(), n, |b, sb| (self.tinv.entry(m + b, m + sb).clone(), b as i64 - 1 - n as i64))
    }

    /// The quantum Berezinian, the product of the two alternated sums.
    pub fn berezinian(&self) -> Result<ElementSeries<S>> {
        self.even_factor()?.mul(&self.odd_factor()?)
    }

    /// `C(u) = Σ_σ sgn σ · T_{σ(1)1}(u-N) ⋯ T_{σ(N)N}(u-1)` for `M = 0`.
    pub fn c_series(&self) -> Result<ElementSeries<S>> {
        let d = self.algebra().dims();
        if d.m != 0 {
            return Err(Error::InvalidArgument(format!("C(u) is defined for M = 0, got M = {}", d.m)));
        }
        let n = d.n as usize;
        alternated_sum(self.algebra(), self.order(), n, |a, sa| (self.t.entry(sa, a).clone(), a as i64 - 1 - n as i64))
    }
}

/// `Σ_σ sgn σ · f(1, σ(1)) ⋯ f(k, σ(k))` where `f(a, σ(a))` yields a series
/// and the argument shift applied to it.
fn alternated_sum<S: Scalar>(
    alg: &Arc<Yangian<S>>,
    order: usize,
    k: usize,
    factor: impl Fn(usize, usize) -> (ElementSeries<S>, i64),
) -> Result<ElementSeries<S>> {
    let one = unit_series(alg, 1, order);
    if k == 0 {
        return Ok(one);
    }
    let mut acc = one.map(|c| c.zero_like());
    for (perm, odd) in permutations(k) {
        let mut prod = one.clone();
        for a in 1..=k {
            let (series, shift) = factor(a, perm[a - 1]);
            prod = prod.mul(&series.shift(shift))?;
        }
        acc = if odd { acc.sub(&prod)? } else { acc.add(&prod)? };
    }
    Ok(acc)
}

/// All permutations of `1..=k` (as images `σ(1)..σ(k)`) with their parity,
/// in lexicographic order.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        let inversions = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| cur[a] > cur[b]).count();
        out.push((cur.clone(), inversions % 2 == 1));
        // next lexicographic permutation
        let Some(p) = (0..k.saturating_sub(1)).rev().find(|&p| cur[p] < cur[p + 1]) else {
            break;
        };
        let q = (p + 1..k).rev().find(|&q| cur[q] > cur[p]).expect("successor exists");
        cur.swap(p, q);
        cur[p + 1..].reverse();
    }
    out
}

/// The isomorphism `Y(gl(0|N)) → Y(gl_N)`, `T_ij(u) ↦ T_ij(-u)`, on one element.
pub fn to_even_yangian<S: Scalar>(x: &Element<S>, target: &Arc<Yangian<S>>) -> Result<Element<S>> {
    let (src, dst) = (x.dims(), target.dims());
    if src.m != 0 || dst.n != 0 || src.n != dst.m {
        return Err(Error::AlgebraMismatch(src.to_string(), dst.to_string()));
    }
    substitute(x, target, false, |g| {
        let e = Element::generator(target, g.i as usize, g.j as usize, g.r as usize);
        Ok(if g.r % 2 == 1 { e.neg() } else { e })
    })
}

/// `D(1 - u)` from `D(u)`.
pub fn reflect_one_minus_u<R: Ring>(d: &SeriesTail<R>) -> SeriesTail<R> {
    d.negate_argument().shift(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().filter(|(_, odd)| *odd).count(), 3);
        assert_eq!(p[0], (vec![1, 2, 3], false));
        assert_eq!(p[1], (vec![1, 3, 2], true));
        assert_eq!(permutations(0), vec![(vec![], false)]);
    }

    #[test]
    fn z_has_no_first_order_term() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let data = RttData::new(&y, 3).unwrap();
        let z = data.z_series().unwrap();
        assert!(z.coeff(0).is_one());
        assert!(z.coeff(1).is_zero());
    }

    #[test]
    fn gl1_z_is_a_ratio_of_shifted_series() {
        let y = Yangian::<Q>::new(1, 0).unwrap();
        let data = RttData::new(&y, 4).unwrap();
        let t = data.t().entry(1, 1);
        let expected = t.shift(1).mul(&t.inverse().unwrap()).unwrap();
        assert!(data.z_series().unwrap().try_eq(&expected).unwrap());
    }

    #[test]
    fn berezinian_of_gl_1_1() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let data = RttData::new(&y, 3).unwrap();
        let expected = data.t().entry(1, 1).shift(-1).mul(&data.tinv().entry(2, 2).shift(-1)).unwrap();
        assert!(data.berezinian().unwrap().try_eq(&expected).unwrap());
    }

    #[test]
    fn berezinian_of_gl2_is_the_quantum_determinant() {
        let y = Yangian::<Q>::new(2, 0).unwrap();
        let data = RttData::new(&y, 3).unwrap();
        let t = data.t();
        let a = t.entry(1, 1).shift(1).mul(t.entry(2, 2)).unwrap();
        let b = t.entry(2, 1).shift(1).mul(t.entry(1, 2)).unwrap();
        assert!(data.berezinian().unwrap().try_eq(&a.sub(&b).unwrap()).unwrap());
    }

    #[test]
    fn c_series_needs_m_zero() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        assert!(RttData::new(&y, 2).unwrap().c_series().is_err());
        let y0 = Yangian::<Q>::new(0, 1).unwrap();
        let data = RttData::new(&y0, 3).unwrap();
        assert!(data.c_series().unwrap().try_eq(&data.t().entry(1, 1).shift(-1)).unwrap());
    }
}
