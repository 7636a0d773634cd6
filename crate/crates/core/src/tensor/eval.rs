use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Element, GenIndex, SuperDims, Word, Yangian};
use crate::error::{Error, Result};
use crate::maps::coproduct_on_leg;
use crate::scalar::Scalar;
use crate::series::SeriesTail;

use super::named::EndoSeries;
use super::operator::Operator;

/// `ρ_z(T_ij^(r)) = -E_ji z^{r-1} (-1)^{j̄}`.
pub fn eval_generator<S: Scalar>(dims: SuperDims, g: GenIndex, z: &S) -> Result<Operator<S>> {
    let (i, j) = (g.i as usize, g.j as usize);
    if g.r == 0 {
        return Err(Error::InvalidArgument("generators have level >= 1".into()));
    }
    let mut k = -z.pow_u32(g.r as u32 - 1);
    if dims.parity(j) == 1 {
        k = -k;
    }
    Ok(Operator::matrix_unit(dims, j, i)?.scale(&k))
}

/// A representation of the Yangian on `(C^{M|N})^{⊗n}` given by the images
/// of the generators up to a fixed level, extended multiplicatively.
#[derive(Clone, Debug)]
pub struct Representation<S: Scalar> {
    dims: SuperDims,
    legs: usize,
    max_level: usize,
    images: HashMap<GenIndex, Operator<S>>,
}

impl<S: Scalar> Representation<S> {
    /// The evaluation representation at `z` on one copy of `C^{M|N}`.
    pub fn evaluation(dims: SuperDims, z: &S, max_level: usize) -> Result<Self> {
        let mut images = HashMap::new();
        for i in dims.indices() {
            for j in dims.indices() {
                for r in 1..=max_level {
                    let g = GenIndex::new(i, j, r);
                    images.insert(g, eval_generator(dims, g, z)?);
                }
            }
        }
        Ok(Self { dims, legs: 1, max_level, images })
    }

    /// The tensor product of evaluation representations at `z_1, …, z_n`,
    /// read off `T(u) ↦ R_{12}(u-z_1) ⋯ R_{1,n+1}(u-z_n)` coefficient by
    /// coefficient.
    pub fn r_product(dims: SuperDims, zs: &[S], max_level: usize) -> Result<Self> {
        let n = zs.len();
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one evaluation point".into()));
        }
        let r = EndoSeries::<S>::r_matrix(dims);
        let mut acc: Option<SeriesTail<Operator<S>>> = None;
        for (h, z) in zs.iter().enumerate() {
            let factor = r.shift(&-z.clone()).embed(&[1, h + 2], n + 1)?.expand(max_level);
            acc = Some(match acc {
                None => factor,
                Some(a) => a.mul(&factor)?,
            });
        }
        let w = acc.expect("n >= 1");
        let block = Operator::<S>::identity(dims, n)?.dim();
        let mut images = HashMap::new();
        for level in 1..=max_level {
            let coeff = w.coeff(level);
            for i in dims.indices() {
                for j in dims.indices() {
                    // (E_ij ⊗ Y)(e_j ⊗ y) = e_i ⊗ Yy (-1)^{j̄ (ī+j̄)}
                    let odd = dims.parity(j) * ((dims.parity(i) + dims.parity(j)) % 2) == 1;
                    let mut entries = Vec::new();
                    for (row, cols) in coeff.rows()[(i - 1) * block..i * block].iter().enumerate() {
                        for (&c, v) in cols.range((j - 1) * block..j * block) {
                            let v = if odd { -v.clone() } else { v.clone() };
                            entries.push((row, c - (j - 1) * block, v));
                        }
                    }
                    let probe = Operator::<S>::zero(dims, n)?;
                    let op = Operator::from_entries(dims, n, entries.into_iter().map(|(r, c, v)| (probe.multi(r), probe.multi(c), v)))?;
                    images.insert(GenIndex::new(i, j, level), op);
                }
            }
        }
        Ok(Self { dims, legs: n, max_level, images })
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn generator(&self, g: GenIndex) -> Result<&Operator<S>> {
        if g.r as usize > self.max_level {
            return Err(Error::LevelExceeded { requested: g.r as usize, available: self.max_level });
        }
        self.images.get(&g).ok_or_else(|| Error::InvalidArgument(format!("{g} is not a generator here")))
    }

    /// Image of a raw word (product of generators, left to right).
    pub fn apply_word(&self, w: &[GenIndex]) -> Result<Operator<S>> {
        let mut acc = Operator::identity(self.dims, self.legs)?;
        for &g in w {
            acc = acc.mul(self.generator(g)?)?;
        }
        Ok(acc)
    }

    /// Image of a single-leg element.
    pub fn apply(&self, x: &Element<S>) -> Result<Operator<S>> {
        if x.legs() != 1 {
            return Err(Error::LegMismatch { left: 1, right: x.legs() });
        }
        if x.dims() != self.dims {
            return Err(Error::AlgebraMismatch(x.dims().to_string(), self.dims.to_string()));
        }
        let mut acc = Operator::zero(self.dims, self.legs)?;
        let mut cache: HashMap<Word, Operator<S>> = HashMap::new();
        for (m, c) in x.terms() {
            let w = m.leg(0);
            let img = match cache.get(w) {
                Some(hit) => hit.clone(),
                None => {
                    let v = self.apply_word(w)?;
                    cache.insert(w.clone(), v.clone());
                    v
                }
            };
            acc = acc.add_scaled(&img, c)?;
        }
        Ok(acc)
    }
}

/// `ρ_z(x)` for a single-leg element.
pub fn eval_rep<S: Scalar>(x: &Element<S>, z: &S) -> Result<Operator<S>> {
    Representation::evaluation(x.dims(), z, x.max_level().max(1))?.apply(x)
}

/// `(ρ_{z_1} ⊗ ⋯ ⊗ ρ_{z_n}) Δ^{(n)}(x)`: iterate the coproduct, then evaluate
/// each leg and form the graded tensor product.
pub fn multi_eval_via_coproduct<S: Scalar>(x: &Element<S>, zs: &[S]) -> Result<Operator<S>> {
    if x.legs() != 1 {
        return Err(Error::LegMismatch { left: 1, right: x.legs() });
    }
    if zs.is_empty() {
        return Err(Error::InvalidArgument("need at least one evaluation point".into()));
    }
    let mut y = x.clone();
    for leg in 1..zs.len() {
        y = coproduct_on_leg(&y, leg - 1)?;
    }
    let level = x.max_level().max(1);
    let reps: Vec<Representation<S>> = zs.iter().map(|z| Representation::evaluation(x.dims(), z, level)).collect::<Result<_>>()?;
    let mut acc = Operator::zero(x.dims(), zs.len())?;
    for (m, c) in y.terms() {
        let mut op: Option<Operator<S>> = None;
        for (h, rep) in reps.iter().enumerate() {
            let f = rep.apply_word(m.leg(h))?;
            op = Some(match op {
                None => f,
                Some(o) => o.tensor(&f)?,
            });
        }
        acc = acc.add_scaled(&op.expect("at least one leg"), c)?;
    }
    Ok(acc)
}

/// `multi_eval_rep` through the R-matrix product.
pub fn multi_eval_rep<S: Scalar>(x: &Element<S>, zs: &[S]) -> Result<Operator<S>> {
    Representation::r_product(x.dims(), zs, x.max_level().max(1))?.apply(x)
}

fn stacked_images<S: Scalar>(words: &[Word], reps: &[Representation<S>]) -> Result<Vec<crate::linalg::SparseRow<S>>> {
    let mut rows = Vec::with_capacity(words.len());
    for w in words {
        let mut row = crate::linalg::SparseRow::new();
        let mut offset = 0;
        for rep in reps {
            let op = rep.apply_word(w)?;
            let size = op.dim() * op.dim();
            row.extend(op.flatten().into_iter().map(|(k, v)| (k + offset, v)));
            offset += size;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Images of the normal words of `filt1 <= bound` under the direct sum of
/// the given representations, with the rank of their span and the number of
/// words.
pub fn image_rank<S: Scalar>(alg: &Arc<Yangian<S>>, reps: &[Representation<S>], bound: u32) -> Result<(usize, usize)> {
    let words = crate::algebra::normal_words(alg.dims(), bound);
    let rows = stacked_images(&words, reps)?;
    Ok((crate::linalg::rank(rows), words.len()))
}

/// A nonzero combination of normal words of `filt1 <= bound` killed by the
/// direct sum of the representations, if any.
pub fn image_kernel_element<S: Scalar>(alg: &Arc<Yangian<S>>, reps: &[Representation<S>], bound: u32) -> Result<Option<Element<S>>> {
    let words = crate::algebra::normal_words(alg.dims(), bound);
    let rows = stacked_images(&words, reps)?;
    Ok(crate::linalg::first_dependency(rows).map(|dep| {
        Element::from_normal_terms(alg, 1, dep.into_iter().map(|(k, c)| (crate::algebra::Monomial::new([words[k].clone()]), c)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn first_generator_images() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let d = y.dims();
        let t11 = Element::generator(&y, 1, 1, 1);
        assert_eq!(eval_rep(&t11, &q(3)).unwrap(), Operator::matrix_unit(d, 1, 1).unwrap().neg());
        // odd column index flips the sign
        let t12 = Element::generator(&y, 1, 2, 2);
        assert_eq!(eval_rep(&t12, &q(3)).unwrap(), Operator::matrix_unit(d, 2, 1).unwrap().scale(&q(3)));
    }

    #[test]
    fn zero_point_kills_higher_levels() {
        let y = Yangian::<Q>::new(2, 1).unwrap();
        let x = Element::generator(&y, 2, 3, 2);
        assert!(eval_rep(&x, &q(0)).unwrap().is_zero());
    }

    #[test]
    fn one_point_routes_agree() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let x = Element::generator(&y, i, j, 2);
            let a = eval_rep(&x, &q(2)).unwrap();
            assert_eq!(multi_eval_rep(&x, &[q(2)]).unwrap(), a);
            assert_eq!(multi_eval_via_coproduct(&x, &[q(2)]).unwrap(), a);
        }
    }

    #[test]
    fn two_point_routes_agree() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let zs = [q(0), q(1)];
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for r in 1..=3 {
                let x = Element::generator(&y, i, j, r);
                assert_eq!(multi_eval_rep(&x, &zs).unwrap(), multi_eval_via_coproduct(&x, &zs).unwrap(), "T[{i},{j},{r}]");
            }
        }
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let a = Element::parse(&y, "T[2,1,1] + 2*T[1,1,2]").unwrap();
        let b = Element::parse(&y, "T[1,2,2]*T[2,2,1]").unwrap();
        let z = Q::new(1.into(), 2.into());
        let lhs = eval_rep(&a.mul(&b).unwrap(), &z).unwrap();
        let rhs = eval_rep(&a, &z).unwrap().mul(&eval_rep(&b, &z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
