//! Coproduct, counit and leg bookkeeping on multi-leg elements.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Element, GenIndex, Monomial, Word, Yangian};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Δ(T_ij^(r)) = Σ_k Σ_{a+b=r} T_ik^(a) ⊗ T_kj^(b) (-1)^{(ī+k̄)(j̄+k̄)}`.
pub fn coproduct_generator<S: Scalar>(alg: &Arc<Yangian<S>>, g: GenIndex) -> Element<S> {
    let d = alg.dims();
    let (i, j, r) = (g.i as usize, g.j as usize, g.r as usize);
    let mut out = Element::zero(alg, 2);
    for k in d.indices() {
        let sign = if (d.parity(i) + d.parity(k)) * (d.parity(j) + d.parity(k)) % 2 == 1 { -S::one() } else { S::one() };
        for a in 0..=r {
            let left = Element::generator(alg, i, k, a);
            let right = Element::generator(alg, k, j, r - a);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            let t = left.tensor(&right).expect("same algebra");
            out.add_scaled(&t, &sign).expect("two legs");
        }
    }
    out
}

/// Coproduct of a normal word, memoized on prefixes within one call.
struct CoproductCache<S: Scalar> {
    alg: Arc<Yangian<S>>,
    words: HashMap<Word, Element<S>>,
}

impl<S: Scalar> CoproductCache<S> {
    fn new(alg: &Arc<Yangian<S>>) -> Self {
        Self { alg: alg.clone(), words: HashMap::new() }
    }

    fn word(&mut self, w: &Word) -> Result<Element<S>> {
        if let Some(hit) = self.words.get(w) {
            return Ok(hit.clone());
        }
        let value = if w.is_empty() {
            Element::unit(&self.alg, 2)
        } else {
            let prefix: Word = w[..w.len() - 1].iter().copied().collect();
            let head = self.word(&prefix)?;
            head.mul(&coproduct_generator(&self.alg, w[w.len() - 1]))?
        };
        self.words.insert(w.clone(), value.clone());
        Ok(value)
    }
}

/// `Δ` applied to leg `leg` (0-based) of an `n`-leg element, giving `n+1`
/// legs. `Δ` is even, so the substitution carries no sign.
pub fn coproduct_on_leg<S: Scalar>(x: &Element<S>, leg: usize) -> Result<Element<S>> {
    if leg >= x.legs() {
        return Err(Error::LegOutOfRange { leg: leg + 1, legs: x.legs() });
    }
    let alg = x.algebra();
    let mut cache = CoproductCache::new(alg);
    let mut out: Vec<(Monomial, S)> = Vec::new();
    for (m, c) in x.terms() {
        let image = cache.word(m.leg(leg))?;
        for (im, ic) in image.terms() {
            let words = m.words()[..leg].iter().chain(im.words()).chain(&m.words()[leg + 1..]).cloned();
            out.push((Monomial::new(words), c.clone() * ic.clone()));
        }
    }
    Ok(Element::from_normal_terms(alg, x.legs() + 1, out))
}

pub fn coproduct<S: Scalar>(x: &Element<S>) -> Result<Element<S>> {
    if x.legs() != 1 {
        return Err(Error::LegMismatch { left: 1, right: x.legs() });
    }
    coproduct_on_leg(x, 0)
}

/// `ε` applied to leg `leg` (0-based): keeps monomials with an empty word
/// there and drops the leg.
pub fn counit_on_leg<S: Scalar>(x: &Element<S>, leg: usize) -> Result<Element<S>> {
    if leg >= x.legs() {
        return Err(Error::LegOutOfRange { leg: leg + 1, legs: x.legs() });
    }
    if x.legs() == 1 {
        return Err(Error::InvalidArgument("counit on the only leg; use counit".into()));
    }
    let out = x.terms().filter(|(m, _)| m.leg(leg).is_empty()).map(|(m, c)| {
        let words = m.words().iter().enumerate().filter(|(h, _)| *h != leg).map(|(_, w)| w.clone());
        (Monomial::new(words), c.clone())
    });
    Ok(Element::from_normal_terms(x.algebra(), x.legs() - 1, out.collect::<Vec<_>>()))
}

/// `ε(x)` of a single-leg element.
pub fn counit<S: Scalar>(x: &Element<S>) -> S {
    x.constant_term()
}

/// `μ(a ⊗ b) = ab` on a two-leg element.
pub fn multiply_legs<S: Scalar>(x: &Element<S>) -> Result<Element<S>> {
    if x.legs() != 2 {
        return Err(Error::LegMismatch { left: 2, right: x.legs() });
    }
    let alg = x.algebra();
    let mut out = Element::zero(alg, 1);
    for (m, c) in x.terms() {
        let a = Element::from_normal_terms(alg, 1, [(Monomial::new([m.leg(0).clone()]), c.clone())]);
        let b = Element::from_normal_terms(alg, 1, [(Monomial::new([m.leg(1).clone()]), S::one())]);
        out.add_scaled(&a.mul(&b)?, &S::one())?;
    }
    Ok(out)
}

/// Applies an even linear map to one leg (0-based) of a multi-leg element.
pub fn map_leg<S: Scalar>(x: &Element<S>, leg: usize, mut f: impl FnMut(&Element<S>) -> Result<Element<S>>) -> Result<Element<S>> {
    if leg >= x.legs() {
        return Err(Error::LegOutOfRange { leg: leg + 1, legs: x.legs() });
    }
    let alg = x.algebra();
    let mut cache: HashMap<Word, Element<S>> = HashMap::new();
    let mut out: Vec<(Monomial, S)> = Vec::new();
    for (m, c) in x.terms() {
        let w = m.leg(leg);
        let image = match cache.get(w) {
            Some(hit) => hit.clone(),
            None => {
                let single = Element::from_normal_terms(alg, 1, [(Monomial::new([w.clone()]), S::one())]);
                let v = f(&single)?;
                cache.insert(w.clone(), v.clone());
                v
            }
        };
        for (im, ic) in image.terms() {
            let words = m.words()[..leg].iter().chain(im.words()).chain(&m.words()[leg + 1..]).cloned();
            out.push((Monomial::new(words), c.clone() * ic.clone()));
        }
    }
    Ok(Element::from_normal_terms(alg, x.legs(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn level_one_generators_are_primitive() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                let g = Element::generator(&y, i, j, 1);
                let lhs = coproduct(&g).unwrap();
                let one = Element::unit(&y, 1);
                let rhs = g.tensor(&one).unwrap().add(&one.tensor(&g).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn counit_undoes_the_coproduct() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let x = Element::parse(&y, "T[1,2,2]*T[2,1,1] + 3*T[2,2,3]").unwrap();
        let dx = coproduct(&x).unwrap();
        assert_eq!(counit_on_leg(&dx, 0).unwrap(), x);
        assert_eq!(counit_on_leg(&dx, 1).unwrap(), x);
    }

    #[test]
    fn multiply_legs_has_no_sign() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let x = Element::parse(&y, "T[1,2,1] (x) T[2,1,1]").unwrap();
        assert_eq!(multiply_legs(&x).unwrap(), Element::parse(&y, "T[1,2,1]*T[2,1,1]").unwrap());
    }
}
