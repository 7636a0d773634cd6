use std::sync::Arc;

use crate::algebra::{Element, SuperDims, Yangian};
use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use crate::series::SeriesTail;

pub type ElementSeries<S> = SeriesTail<Element<S>>;

/// `T_ij(u) = δ_ij + Σ_{r=1}^{order} T_ij^(r) u^-r`.
pub fn t_series<S: Scalar>(alg: &Arc<Yangian<S>>, i: usize, j: usize, order: usize) -> ElementSeries<S> {
    let coeffs = (0..=order).map(|r| Element::generator(alg, i, j, r)).collect();
    SeriesTail::from_coeffs(coeffs).expect("nonempty")
}

pub fn unit_series<S: Scalar>(alg: &Arc<Yangian<S>>, legs: usize, order: usize) -> ElementSeries<S> {
    SeriesTail::constant(Element::unit(alg, legs), order)
}

/// An `(M+N) × (M+N)` matrix of element-valued series, multiplied with the
/// super sign `(AB)_il = Σ_k A_ik B_kl (-1)^{(ī+k̄)(k̄+l̄)}`.
#[derive(Clone, Debug)]
pub struct SeriesMatrix<S: Scalar> {
    alg: Arc<Yangian<S>>,
    order: usize,
    entries: Vec<ElementSeries<S>>,
}

impl<S: Scalar> SeriesMatrix<S> {
    /// Builds from row-major entries, checking that every coefficient of
    /// entry `(i,j)` is zero or homogeneous of parity `ī + j̄`.
    pub fn new(alg: &Arc<Yangian<S>>, entries: Vec<ElementSeries<S>>) -> Result<Self> {
        let n = alg.size();
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        let order = entries[0].order();
        let d = alg.dims();
        for (idx, e) in entries.iter().enumerate() {
            if e.order() != order {
                return Err(Error::OrderMismatch { left: order, right: e.order() });
            }
            let (i, j) = (idx / n + 1, idx % n + 1);
            let want = (d.parity(i) + d.parity(j)) % 2;
            for c in e.coeffs() {
                if c.is_zero() {
                    continue;
                }
                if c.parity() != Some(want) {
                    return Err(Error::Inhomogeneous { row: i, col: j });
                }
            }
        }
        Ok(Self { alg: alg.clone(), order, entries })
    }

    /// The generator matrix `T(u)` truncated at `order`.
    pub fn t_matrix(alg: &Arc<Yangian<S>>, order: usize) -> Self {
        let n = alg.size();
        let entries = (0..n * n).map(|idx| t_series(alg, idx / n + 1, idx % n + 1, order)).collect();
        Self { alg: alg.clone(), order, entries }
    }

    pub fn algebra(&self) -> &Arc<Yangian<S>> {
        &self.alg
    }

    pub fn dims(&self) -> SuperDims {
        self.alg.dims()
    }

    pub fn size(&self) -> usize {
        self.alg.size()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &ElementSeries<S> {
        &self.entries[(i - 1) * self.size() + (j - 1)]
    }

    fn sign(&self, i: usize, k: usize, l: usize) -> bool {
        let d = self.dims();
        (d.parity(i) + d.parity(k)) * (d.parity(k) + d.parity(l)) % 2 == 1
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        let n = self.size();
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for l in 1..=n {
                let mut acc = unit_series(&self.alg, 1, self.order).map(|c| c.zero_like());
                for k in 1..=n {
                    let mut p = self.entry(i, k).mul(other.entry(k, l))?;
                    if self.sign(i, k, l) {
                        p = p.neg();
                    }
                    acc = acc.add(&p)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self { alg: self.alg.clone(), order: self.order, entries })
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size();
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let e = self.entry(i, j);
                e.coeffs().iter().enumerate().all(|(r, c)| if r == 0 && i == j { c.is_one() } else { c.is_zero() })
            })
        })
    }

    /// The inverse matrix by the recursion `Ť^(r) = -Σ_{p=1}^{r} Ť^(r-p) T^(p)`
    /// (super product), which only ever multiplies by single generators on
    /// the right.
    pub fn invert(&self) -> Result<Self> {
        let n = self.size();
        for i in 1..=n {
            for j in 1..=n {
                let c0 = self.entry(i, j).coeff(0);
                let ok = if i == j { c0.is_one() } else { c0.is_zero() };
                if !ok {
                    return Err(Error::NonUnitConstant);
                }
            }
        }
        let zero = Element::zero(&self.alg, 1);
        // inv[r][(i-1)*n + (j-1)]
        let mut inv: Vec<Vec<Element<S>>> = Vec::with_capacity(self.order + 1);
        inv.push((0..n * n).map(|idx| if idx / n == idx % n { zero.one_like() } else { zero.clone() }).collect());
        for r in 1..=self.order {
            let mut level = vec![zero.clone(); n * n];
            for i in 1..=n {
                for j in 1..=n {
                    let mut acc = zero.clone();
                    for p in 1..=r {
                        for k in 1..=n {
                            let a = &inv[r - p][(i - 1) * n + (k - 1)];
                            let b = self.entry(k, j).coeff(p);
                            if a.is_zero() || b.is_zero() {
                                continue;
                            }
                            let prod = a.mul(b)?;
                            let k_sign = if self.sign(i, k, j) { S::one() } else { -S::one() };
                            acc.add_scaled(&prod, &k_sign)?;
                        }
                    }
                    level[(i - 1) * n + (j - 1)] = acc;
                }
            }
            inv.push(level);
        }
        let entries =
            (0..n * n).map(|idx| SeriesTail::from_coeffs(inv.iter().map(|lvl| lvl[idx].clone()).collect()).expect("nonempty")).collect();
        Ok(Self { alg: self.alg.clone(), order: self.order, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn gl1_inverse_is_the_series_inverse() {
        let y = Yangian::<Q>::new(1, 0).unwrap();
        let t = SeriesMatrix::t_matrix(&y, 3);
        let inv = t.invert().unwrap();
        assert!(inv.entry(1, 1).try_eq(&t.entry(1, 1).inverse().unwrap()).unwrap());
    }

    #[test]
    fn first_inverse_coefficient_is_minus_the_generator() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let inv = SeriesMatrix::t_matrix(&y, 2).invert().unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(*inv.entry(i, j).coeff(1), Element::generator(&y, i, j, 1).neg());
            }
        }
    }

    #[test]
    fn parity_invariant_is_enforced() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let t = SeriesMatrix::t_matrix(&y, 1);
        for c in t.entry(1, 2).coeffs().iter().skip(1) {
            assert_eq!(c.parity(), Some(1));
        }
        let mut entries: Vec<_> = (1..=2).flat_map(|i| (1..=2).map(move |j| (i, j))).map(|(i, j)| t.entry(i, j).clone()).collect();
        entries[1] = t.entry(1, 1).clone();
        assert_eq!(SeriesMatrix::new(&y, entries).unwrap_err(), Error::Inhomogeneous { row: 1, col: 2 });
    }
}
