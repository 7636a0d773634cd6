//! The named (anti)automorphisms and generator substitution.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::matrix::SeriesMatrix;
use crate::algebra::{word_parity, Element, GenIndex, SuperDims, Word, Yangian};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    /// `T_ij(u) ↦ T_ij(-u)`, an antiautomorphism.
    EtaM,
    /// `T_ij(u) ↦ Ť_ij(u)`, the antipode.
    AntipodeS,
    /// `T_ij(u) ↦ T_ji(u) (-1)^{j̄(ī+1)}`, an antiautomorphism.
    TransposeT,
    /// `S ∘ transpose`, an automorphism: `T_ij(u) ↦ Ť_ji(u) (-1)^{j̄(ī+1)}`.
    Omega,
}

impl MorphismKind {
    pub const ALL: [MorphismKind; 4] = [Self::EtaM, Self::AntipodeS, Self::TransposeT, Self::Omega];

    pub fn is_anti(&self) -> bool {
        !matches!(self, Self::Omega)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::EtaM => "eta_M",
            Self::AntipodeS => "antipode_S",
            Self::TransposeT => "transpose_T",
            Self::Omega => "omega",
        }
    }

    fn needs_inverse(&self) -> bool {
        matches!(self, Self::AntipodeS | Self::Omega)
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MorphismKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown map `{s}`; expected one of eta_M, antipode_S, transpose_T, omega")))
    }
}

/// Generator images of one named map up to a fixed level.
#[derive(Clone, Debug)]
pub struct MorphismTable<S: Scalar> {
    kind: MorphismKind,
    alg: Arc<Yangian<S>>,
    max_level: usize,
    images: HashMap<GenIndex, Element<S>>,
}

fn transpose_sign<S: Scalar>(alg: &Yangian<S>, i: usize, j: usize) -> S {
    if alg.parity(j) * (alg.parity(i) + 1) % 2 == 1 {
        -S::one()
    } else {
        S::one()
    }
}

impl<S: Scalar> MorphismTable<S> {
    /// Builds the table for generators of level `<= max_level`, inverting
    /// `T(u)` when the map needs it.
    pub fn build(kind: MorphismKind, alg: &Arc<Yangian<S>>, max_level: usize) -> Result<Self> {
        if kind.needs_inverse() {
            let inv = SeriesMatrix::t_matrix(alg, max_level).invert()?;
            Self::with_inverse(kind, &inv)
        } else {
            Self::with_inverse_opt(kind, alg, max_level, None)
        }
    }

    /// Builds from a precomputed `T(u)^{-1}`; the level bound is its order.
    pub fn with_inverse(kind: MorphismKind, inv: &SeriesMatrix<S>) -> Result<Self> {
        Self::with_inverse_opt(kind, inv.algebra(), inv.order(), Some(inv))
    }

    fn with_inverse_opt(kind: MorphismKind, alg: &Arc<Yangian<S>>, max_level: usize, inv: Option<&SeriesMatrix<S>>) -> Result<Self> {
        let n = alg.size();
        let mut images = HashMap::new();
        for i in 1..=n {
            for j in 1..=n {
                for r in 1..=max_level {
                    let img = match kind {
                        MorphismKind::EtaM => {
                            let g = Element::generator(alg, i, j, r);
                            if r % 2 == 1 {
                                g.neg()
                            } else {
                                g
                            }
                        }
                        MorphismKind::TransposeT => Element::generator(alg, j, i, r).scale(&transpose_sign(alg, i, j)),
                        MorphismKind::AntipodeS => {
                            inv.ok_or_else(|| Error::InvalidArgument("antipode needs T(u)^-1".into()))?.entry(i, j).coeff(r).clone()
                        }
                        MorphismKind::Omega => inv
                            .ok_or_else(|| Error::InvalidArgument("omega needs T(u)^-1".into()))?
                            .entry(j, i)
                            .coeff(r)
                            .scale(&transpose_sign(alg, i, j)),
                    };
                    images.insert(GenIndex::new(i, j, r), img);
                }
            }
        }
        Ok(Self { kind, alg: alg.clone(), max_level, images })
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn image(&self, g: GenIndex) -> Result<&Element<S>> {
        if g.r as usize > self.max_level {
            return Err(Error::LevelExceeded { requested: g.r as usize, available: self.max_level });
        }
        self.images.get(&g).ok_or_else(|| Error::InvalidArgument(format!("{g} is not a generator of this algebra")))
    }

    /// Applies the map to a single-leg element.
    pub fn apply(&self, x: &Element<S>) -> Result<Element<S>> {
        substitute(x, &self.alg, self.kind.is_anti(), |g| self.image(g).cloned())
    }

    /// Applies the map to a raw (not necessarily normal) word.
    pub fn apply_word(&self, w: &[GenIndex]) -> Result<Element<S>> {
        let mut cache = HashMap::new();
        substitute_word(self.alg.dims(), &self.alg, w, self.kind.is_anti(), &mut |g| self.image(g).cloned(), &mut cache)
    }
}

/// Extends generator images to a single-leg element, multiplicatively or
/// anti-multiplicatively with `β(XX') = β(X')β(X) (-1)^{deg X deg X'}`.
/// `target` is the algebra the images live in.
pub fn substitute<S: Scalar>(
    x: &Element<S>,
    target: &Arc<Yangian<S>>,
    anti: bool,
    mut image: impl FnMut(GenIndex) -> Result<Element<S>>,
) -> Result<Element<S>> {
    if x.legs() != 1 {
        return Err(Error::LegMismatch { left: 1, right: x.legs() });
    }
    let mut cache: HashMap<Word, Element<S>> = HashMap::new();
    let mut out = Element::zero(target, 1);
    for (m, c) in x.terms() {
        let img = substitute_word(x.dims(), target, m.leg(0), anti, &mut image, &mut cache)?;
        out.add_scaled(&img, c)?;
    }
    Ok(out)
}

fn substitute_word<S: Scalar>(
    src: SuperDims,
    target: &Arc<Yangian<S>>,
    w: &[GenIndex],
    anti: bool,
    image: &mut impl FnMut(GenIndex) -> Result<Element<S>>,
    cache: &mut HashMap<Word, Element<S>>,
) -> Result<Element<S>> {
    let key: Word = w.iter().copied().collect();
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.clone());
    }
    let value = match w.split_last() {
        None => Element::unit(target, 1),
        Some((&last, prefix)) => {
            let head = substitute_word(src, target, prefix, anti, image, cache)?;
            let tail = image(last)?;
            if anti {
                let p = tail.mul(&head)?;
                if word_parity(prefix, src) * last.parity(src) == 1 {
                    p.neg()
                } else {
                    p
                }
            } else {
                head.mul(&tail)?
            }
        }
    };
    cache.insert(key, value.clone());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn eta_flips_odd_levels() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let eta = MorphismTable::build(MorphismKind::EtaM, &y, 3).unwrap();
        let g2 = Element::generator(&y, 1, 2, 2);
        assert_eq!(eta.apply(&g2).unwrap(), g2);
        let g1 = Element::generator(&y, 1, 2, 1);
        assert_eq!(eta.apply(&g1).unwrap(), g1.neg());
    }

    #[test]
    fn level_bound_is_enforced() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let eta = MorphismTable::build(MorphismKind::EtaM, &y, 2).unwrap();
        let g = Element::generator(&y, 1, 1, 3);
        assert_eq!(eta.apply(&g).unwrap_err(), Error::LevelExceeded { requested: 3, available: 2 });
    }

    #[test]
    fn transpose_squares_to_the_parity_sign() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let t = MorphismTable::build(MorphismKind::TransposeT, &y, 2).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let g = Element::generator(&y, i, j, 2);
                let twice = t.apply(&t.apply(&g).unwrap()).unwrap();
                let expected = if (y.parity(i) + y.parity(j)) % 2 == 1 { g.neg() } else { g };
                assert_eq!(twice, expected);
            }
        }
    }

    #[test]
    fn counit_kills_antipode_images() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let s = MorphismTable::build(MorphismKind::AntipodeS, &y, 3).unwrap();
        for r in 1..=3 {
            let img = s.apply(&Element::generator(&y, 1, 2, r)).unwrap();
            assert_eq!(img.constant_term(), Q::from_integer(0.into()));
        }
        let g = Element::generator(&y, 2, 1, 1);
        assert_eq!(s.apply(&g).unwrap(), g.neg());
    }

    #[test]
    fn antihomomorphism_reverses_products() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let t = MorphismTable::build(MorphismKind::TransposeT, &y, 2).unwrap();
        let a = Element::generator(&y, 1, 2, 1);
        let b = Element::generator(&y, 2, 1, 2);
        let lhs = t.apply(&a.mul(&b).unwrap()).unwrap();
        let rhs = t.apply(&b).unwrap().mul(&t.apply(&a).unwrap()).unwrap().neg();
        assert_eq!(lhs, rhs);
    }
}
