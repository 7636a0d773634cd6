use std::fmt;
use std::str::FromStr;

use crate::algebra::SuperDims;
use crate::error::{Error, Result};
use crate::maps::permutations;
use crate::scalar::Scalar;
use crate::series::SeriesTail;

use super::operator::{basis_size, MultiIndex, Operator};

fn pairs(d: SuperDims) -> impl Iterator<Item = (usize, usize)> {
    let n = d.size();
    (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)))
}

/// `P = Σ E_ij ⊗ E_ji (-1)^{j̄}`, acting by `e_i⊗e_j ↦ e_j⊗e_i (-1)^{īj̄}`.
pub fn perm_p<S: Scalar>(dims: SuperDims) -> Operator<S> {
    let terms = pairs(dims).map(|(i, j)| {
        let v = if dims.parity(j) == 1 { -S::one() } else { S::one() };
        (vec![i, j], vec![j, i], v)
    });
    Operator::from_elementary(dims, 2, terms).expect("two legs fit")
}

/// `Q = (id ⊗ τ)(P) = Σ E_ij ⊗ E_ij (-1)^{īj̄}`.
pub fn q_op<S: Scalar>(dims: SuperDims) -> Operator<S> {
    let terms = pairs(dims).map(|(i, j)| {
        let v = if dims.parity(i) * dims.parity(j) == 1 { -S::one() } else { S::one() };
        (vec![i, i], vec![j, j], v)
    });
    Operator::from_elementary(dims, 2, terms).expect("two legs fit")
}

/// The projections `I` and `J` onto the even and odd subspaces.
pub fn projectors_ij<S: Scalar>(dims: SuperDims) -> (Operator<S>, Operator<S>) {
    let diag = |odd: u8| {
        let terms = dims.indices().filter(|&i| dims.parity(i) == odd).map(|i| (vec![i], vec![i], S::one()));
        Operator::from_entries(dims, 1, terms).expect("one leg fits")
    };
    (diag(0), diag(1))
}

/// `P_{ab}` in `n` legs.
pub fn p_at<S: Scalar>(dims: SuperDims, a: usize, b: usize, n: usize) -> Result<Operator<S>> {
    perm_p(dims).embed(&[a, b], n)
}

/// `Q_{ab}` in `n` legs.
pub fn q_at<S: Scalar>(dims: SuperDims, a: usize, b: usize, n: usize) -> Result<Operator<S>> {
    q_op(dims).embed(&[a, b], n)
}

/// A rational function `A + B/(u - p)` with operator coefficients. This is
/// the shape of both `R(u) = 1 - P/u` and `R̃(u) = 1 + Q/(u - M + N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSeries<S: Scalar> {
    constant: Operator<S>,
    residue: Operator<S>,
    pole: S,
}

impl<S: Scalar> EndoSeries<S> {
    pub fn new(constant: Operator<S>, residue: Operator<S>, pole: S) -> Result<Self> {
        if constant.dims() != residue.dims() || constant.legs() != residue.legs() {
            return Err(Error::LegMismatch { left: constant.legs(), right: residue.legs() });
        }
        Ok(Self { constant, residue, pole })
    }

    /// The Yang R-matrix `R(u) = 1 - P u^{-1}`.
    pub fn r_matrix(dims: SuperDims) -> Self {
        let one = Operator::identity(dims, 2).expect("two legs fit");
        Self { constant: one, residue: perm_p(dims).neg(), pole: S::zero() }
    }

    /// `R̃(u) = 1 + Q (u - M + N)^{-1}`.
    pub fn r_tilde(dims: SuperDims) -> Self {
        let one = Operator::identity(dims, 2).expect("two legs fit");
        let pole = S::from_i64(dims.m as i64 - dims.n as i64);
        Self { constant: one, residue: q_op(dims), pole }
    }

    pub fn constant(&self) -> &Operator<S> {
        &self.constant
    }

    pub fn residue(&self) -> &Operator<S> {
        &self.residue
    }

    pub fn pole(&self) -> &S {
        &self.pole
    }

    /// Value at `u = q`.
    pub fn eval(&self, q: &S) -> Result<Operator<S>> {
        let gap = q.clone() - self.pole.clone();
        if gap.is_zero() {
            return Err(Error::Pole(format!("u = {q} is the pole of this rational operator")));
        }
        self.constant.add_scaled(&self.residue, &(S::one() / gap))
    }

    /// Expansion in `u^{-1}` through `u^{-order}`:
    /// `A + Σ_{k>=0} B p^k u^{-k-1}`.
    pub fn expand(&self, order: usize) -> SeriesTail<Operator<S>> {
        let mut coeffs = vec![self.constant.clone()];
        let mut power = S::one();
        for _ in 0..order {
            coeffs.push(self.residue.scale(&power));
            power = power * self.pole.clone();
        }
        SeriesTail::from_coeffs(coeffs).expect("nonempty")
    }

    /// The same function of `u + c`.
    pub fn shift(&self, c: &S) -> Self {
        Self { constant: self.constant.clone(), residue: self.residue.clone(), pole: self.pole.clone() - c.clone() }
    }

    /// Applies `τ` on one leg of both coefficients.
    pub fn tau_leg(&self, h: usize) -> Result<Self> {
        Ok(Self { constant: self.constant.tau_leg(h)?, residue: self.residue.tau_leg(h)?, pole: self.pole.clone() })
    }

    /// Both coefficients embedded at the given legs of `n`.
    pub fn embed(&self, positions: &[usize], n: usize) -> Result<Self> {
        Ok(Self { constant: self.constant.embed(positions, n)?, residue: self.residue.embed(positions, n)?, pole: self.pole.clone() })
    }
}

/// The operator of a permutation `σ` (given by its images, 1-based): the
/// factor in position `a` moves to position `σ(a)`, with the Koszul sign of
/// the odd factors that cross.
pub fn permutation_operator<S: Scalar>(dims: SuperDims, sigma: &[usize]) -> Result<Operator<S>> {
    let n = sigma.len();
    let size = basis_size(dims, n)?;
    let probe = Operator::<S>::zero(dims, n)?;
    let mut entries: Vec<(MultiIndex, MultiIndex, S)> = Vec::with_capacity(size);
    for k in 0..size {
        let col = probe.multi(k);
        let mut row = vec![0; n];
        let mut odd = false;
        for a in 0..n {
            row[sigma[a] - 1] = col[a];
            for b in a + 1..n {
                if sigma[a] > sigma[b] && dims.parity(col[a]) * dims.parity(col[b]) == 1 {
                    odd = !odd;
                }
            }
        }
        entries.push((row, col, if odd { -S::one() } else { S::one() }));
    }
    Operator::from_entries(dims, n, entries)
}

/// Which construction of the (anti)symmetrizer to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymRoute {
    /// The sum over all permutations.
    Direct,
    /// `G^(n) = (1 - P_{1n} - ⋯ - P_{n-1,n})(G^(n-1) ⊗ 1)` and its `H` analogue.
    Recursion,
    /// Ordered products of `R_ij(±(j-i))`.
    Fusion,
}

impl SymRoute {
    pub const ALL: [SymRoute; 3] = [Self::Direct, Self::Recursion, Self::Fusion];
}

impl fmt::Display for SymRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Direct => "direct",
            Self::Recursion => "recursion",
            Self::Fusion => "fusion",
        })
    }
}

impl FromStr for SymRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown route `{s}`; expected direct, recursion or fusion")))
    }
}

/// `G^(n)` (`antisym = true`) or `H^(n)`, the images of `Σ(-1)^σ σ` and `Σ σ`,
/// for `n >= 1`.
pub fn symmetrizer<S: Scalar>(dims: SuperDims, n: usize, antisym: bool, route: SymRoute) -> Result<Operator<S>> {
    if n == 0 {
        return Err(Error::InvalidArgument("symmetrizers need n >= 1".into()));
    }
    match route {
        SymRoute::Direct => {
            let mut acc = Operator::zero(dims, n)?;
            for (perm, odd) in permutations(n) {
                let k = if antisym && odd { -S::one() } else { S::one() };
                acc = acc.add_scaled(&permutation_operator(dims, &perm)?, &k)?;
            }
            Ok(acc)
        }
        SymRoute::Recursion => {
            let mut acc = Operator::identity(dims, 1)?;
            let one = Operator::identity(dims, 1)?;
            for m in 2..=n {
                let mut factor = Operator::identity(dims, m)?;
                for a in 1..m {
                    let p = p_at(dims, a, m, m)?;
                    factor = if antisym { factor.sub(&p)? } else { factor.add(&p)? };
                }
                acc = factor.mul(&acc.tensor(&one)?)?;
            }
            Ok(acc)
        }
        SymRoute::Fusion => {
            let r = EndoSeries::<S>::r_matrix(dims);
            let mut acc = Operator::identity(dims, n)?;
            for j in 2..=n {
                for i in 1..j {
                    let gap = S::from_i64((j - i) as i64);
                    let at = if antisym { gap } else { -gap };
                    acc = acc.mul(&r.embed(&[i, j], n)?.eval(&at)?)?;
                }
            }
            Ok(acc)
        }
    }
}
