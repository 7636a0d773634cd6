use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Element, SuperDims, Yangian};
use crate::error::{Error, Result};
use crate::maps::{unit_series, ElementSeries, SeriesMatrix};
use crate::scalar::{Ring, Scalar};
use crate::series::BiSeriesTail;

use super::operator::{basis_size, Operator};

/// A matrix of two-variable element series over the operator basis.
pub type BiMatrix<S> = BTreeMap<(usize, usize), BiSeriesTail<Element<S>>>;

/// An even element of `End((C^{M|N})^{⊗n}) ⊗ Y(gl(M|N))[[u^{-1}]]`, stored as a
/// sparse matrix of element-valued series over the operator basis.
///
/// With operator legs first, `(E_rk ⊗ a)(E_kc ⊗ b) = E_rc ⊗ ab (-1)^{(|k|+|c|) deg a}`,
/// and for an even object `deg a = |r| + |k|`.
#[derive(Clone, Debug)]
pub struct MixedOperator<S: Scalar> {
    alg: Arc<Yangian<S>>,
    legs: usize,
    order: usize,
    parities: Arc<Vec<u8>>,
    entries: BTreeMap<(usize, usize), ElementSeries<S>>,
}

fn basis_parities(dims: SuperDims, legs: usize) -> Result<Vec<u8>> {
    let size = basis_size(dims, legs)?;
    let d = dims.size();
    Ok((0..size)
        .map(|mut k| {
            let mut p = 0;
            for _ in 0..legs {
                p ^= dims.parity(k % d + 1);
                k /= d;
            }
            p
        })
        .collect())
}

impl<S: Scalar> MixedOperator<S> {
    fn empty(alg: &Arc<Yangian<S>>, legs: usize, order: usize) -> Result<Self> {
        let parities = Arc::new(basis_parities(alg.dims(), legs)?);
        Ok(Self { alg: alg.clone(), legs, order, parities, entries: BTreeMap::new() })
    }

    fn zero_series(&self) -> ElementSeries<S> {
        unit_series(&self.alg, 1, self.order).map(|c| c.zero_like())
    }

    fn add_entry(&mut self, key: (usize, usize), value: ElementSeries<S>) -> Result<()> {
        let next = match self.entries.remove(&key) {
            Some(old) => old.add(&value)?,
            None => value,
        };
        if !next.is_zero() {
            self.entries.insert(key, next);
        }
        Ok(())
    }

    /// `X ⊗ 1` for a constant even operator `X`.
    pub fn constant(alg: &Arc<Yangian<S>>, op: &Operator<S>, order: usize) -> Result<Self> {
        if op.dims() != alg.dims() {
            return Err(Error::AlgebraMismatch(op.dims().to_string(), alg.dims().to_string()));
        }
        if op.parity() == Some(1) {
            return Err(Error::InvalidArgument("mixed operators must be even".into()));
        }
        let mut out = Self::empty(alg, op.legs(), order)?;
        let one = unit_series(alg, 1, order);
        for (r, row) in op.rows().iter().enumerate() {
            for (&c, v) in row {
                out.add_entry((r, c), one.map(|e| e.scale(v)))?;
            }
        }
        Ok(out)
    }

    /// `Σ_ij ι_h(E_ij) ⊗ f(i, j)` in `n` legs. Each `f(i, j)` must be zero or
    /// of parity `ī + j̄`.
    pub fn on_leg(
        alg: &Arc<Yangian<S>>,
        h: usize,
        n: usize,
        order: usize,
        mut f: impl FnMut(usize, usize) -> ElementSeries<S>,
    ) -> Result<Self> {
        let dims = alg.dims();
        let mut out = Self::empty(alg, n, order)?;
        for i in dims.indices() {
            for j in dims.indices() {
                let series = f(i, j);
                if series.order() != order {
                    return Err(Error::OrderMismatch { left: order, right: series.order() });
                }
                let want = (dims.parity(i) + dims.parity(j)) % 2;
                if series.coeffs().iter().any(|c| !c.is_zero() && c.parity() != Some(want)) {
                    return Err(Error::Inhomogeneous { row: i, col: j });
                }
                let unit = Operator::<S>::matrix_unit(dims, i, j)?.embed(&[h], n)?;
                for (r, row) in unit.rows().iter().enumerate() {
                    for (&c, v) in row {
                        out.add_entry((r, c), series.map(|e| e.scale(v)))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `T_h(u + shift)`.
    pub fn t_on_leg(t: &SeriesMatrix<S>, h: usize, n: usize, shift: i64) -> Result<Self> {
        Self::on_leg(t.algebra(), h, n, t.order(), |i, j| t.entry(i, j).shift(shift))
    }

    /// `(τ ⊗ id)(T(u + shift)^{-1})` on leg `h`, whose `(i, j)` entry is
    /// `Ť_ji(u + shift) (-1)^{j̄(ī+1)}`; `tinv` is `T(u)^{-1}`.
    pub fn tau_inverse_on_leg(tinv: &SeriesMatrix<S>, h: usize, n: usize, shift: i64) -> Result<Self> {
        let d = tinv.dims();
        Self::on_leg(tinv.algebra(), h, n, tinv.order(), |i, j| {
            let e = tinv.entry(j, i).shift(shift);
            if d.parity(j) * (d.parity(i) + 1) % 2 == 1 {
                e.neg()
            } else {
                e
            }
        })
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &ElementSeries<S>)> {
        self.entries.iter()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.alg.dims() != other.alg.dims() {
            return Err(Error::AlgebraMismatch(self.alg.dims().to_string(), other.alg.dims().to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.add_entry(k, v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = v.neg();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, &ElementSeries<S>)>> = BTreeMap::new();
        for (&(k, c), v) in &other.entries {
            by_row.entry(k).or_default().push((c, v));
        }
        let mut out = Self { entries: BTreeMap::new(), ..self.clone() };
        let p = &self.parities;
        for (&(r, k), a) in &self.entries {
            let Some(row) = by_row.get(&k) else { continue };
            for &(c, b) in row {
                let prod = a.mul(b)?;
                let odd = (p[r] ^ p[k]) & (p[k] ^ p[c]) == 1;
                out.add_entry((r, c), if odd { prod.neg() } else { prod })?;
            }
        }
        Ok(out)
    }

    pub fn product<'a>(ops: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut it = ops.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        it.try_fold(first.clone(), |acc, op| acc.mul(op))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The first nonzero entry and coefficient, as `(row, col, r, value)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, String)> {
        self.entries.iter().find_map(|(&(row, col), s)| s.first_nonzero().map(|r| (row, col, r, s.coeff(r).to_string())))
    }

    /// Entry `(row, col)` as a series (zero when absent).
    pub fn entry(&self, row: usize, col: usize) -> ElementSeries<S> {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| self.zero_series())
    }

    /// `Σ_k A_rk(u) B_kc(v)` with the mixed sign, as two-variable series;
    /// with `swapped` the factors are `A_rk(v) B_kc(u)`.
    pub fn outer_product(&self, other: &Self, swapped: bool) -> Result<BiMatrix<S>> {
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        let p = &self.parities;
        let mut out: BiMatrix<S> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for (&(k2, c), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                let mut prod = if swapped { BiSeriesTail::outer_swapped(a, b) } else { BiSeriesTail::outer(a, b) };
                if (p[r] ^ p[k]) & (p[k] ^ p[c]) == 1 {
                    prod = prod.map(|e| e.neg());
                }
                let next = match out.remove(&(r, c)) {
                    Some(old) => old.add(&prod)?,
                    None => prod,
                };
                out.insert((r, c), next);
            }
        }
        Ok(out)
    }
}

/// `X · B` and `B · X` for a constant even operator `X` and a two-variable
/// mixed matrix `B`; no sign arises because the constant factor is even.
pub fn constant_times_bi<S: Scalar>(x: &Operator<S>, b: &BiMatrix<S>, on_left: bool) -> Result<BiMatrix<S>> {
    let mut out: BiMatrix<S> = BTreeMap::new();
    let mut push = |key: (usize, usize), v: BiSeriesTail<Element<S>>| -> Result<()> {
        let next = match out.remove(&key) {
            Some(old) => old.add(&v)?,
            None => v,
        };
        out.insert(key, next);
        Ok(())
    };
    for (&(r, c), s) in b {
        if on_left {
            // (X B)_{r' c} = Σ_r X_{r' r} B_{r c}
            for (rp, row) in x.rows().iter().enumerate() {
                if let Some(v) = row.get(&r) {
                    push((rp, c), s.map(|e| e.scale(v)))?;
                }
            }
        } else {
            for (&cp, v) in &x.rows()[c] {
                push((r, cp), s.map(|e| e.scale(v)))?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn single_leg_matches_the_series_matrix_product() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let t = SeriesMatrix::t_matrix(&y, 2);
        let tinv = t.invert().unwrap();
        let a = MixedOperator::t_on_leg(&t, 1, 1, 0).unwrap();
        let b = MixedOperator::on_leg(&y, 1, 1, 2, |i, j| tinv.entry(i, j).clone()).unwrap();
        let prod = a.mul(&b).unwrap();
        let one = MixedOperator::constant(&y, &Operator::identity(y.dims(), 1).unwrap(), 2).unwrap();
        assert!(prod.sub(&one).unwrap().is_zero());
    }

    #[test]
    fn odd_constants_are_rejected() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let e = Operator::<Q>::matrix_unit(y.dims(), 1, 2).unwrap();
        assert!(MixedOperator::constant(&y, &e, 1).is_err());
    }
}
