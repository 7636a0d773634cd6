use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::algebra::SuperDims;
use crate::error::{Error, Result};
use crate::linalg::{rank, SparseRow};
use crate::scalar::{Ring, Scalar};

/// Largest basis of `(C^{M|N})^{⊗n}` an operator may act on.
pub const MAX_BASIS: usize = 4096;

/// A linear operator on `(C^{M|N})^{⊗n}`, stored as sparse rows over the
/// row-major basis (leg 1 is the most significant digit).
///
/// The Koszul signs of the identification `(End C^{M|N})^{⊗n} = End((C^{M|N})^{⊗n})`
/// are part of the entries, so [`Operator::mul`] is plain matrix product.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator<S: Scalar> {
    dims: SuperDims,
    legs: usize,
    rows: Vec<SparseRow<S>>,
}

/// A multi-index with 1-based components, one per leg.
pub type MultiIndex = Vec<usize>;

pub(crate) fn basis_size(dims: SuperDims, legs: usize) -> Result<usize> {
    let d = dims.size();
    let mut size = 1usize;
    for _ in 0..legs {
        size = size
            .checked_mul(d)
            .filter(|&s| s <= MAX_BASIS)
            .ok_or_else(|| Error::SizeGuard(format!("(C^{dims})^⊗{legs} exceeds the basis limit of {MAX_BASIS} vectors")))?;
    }
    Ok(size)
}

fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

/// Sign relating the coefficient of `E_{r1c1} ⊗ ⋯ ⊗ E_{rncn}` to the matrix
/// entry at `(r, c)`: `Π_h (-1)^{(r̄_h+c̄_h)(c̄_1+⋯+c̄_{h-1})}`.
pub(crate) fn embedding_odd(dims: SuperDims, r: &[usize], c: &[usize]) -> bool {
    let mut prefix = 0u8;
    let mut odd = 0u8;
    for (&rh, &ch) in r.iter().zip(c) {
        odd ^= (dims.parity(rh) ^ dims.parity(ch)) & prefix;
        prefix ^= dims.parity(ch);
    }
    odd == 1
}

impl<S: Scalar> Operator<S> {
    pub fn zero(dims: SuperDims, legs: usize) -> Result<Self> {
        let size = basis_size(dims, legs)?;
        Ok(Self { dims, legs, rows: vec![SparseRow::new(); size] })
    }

    pub fn identity(dims: SuperDims, legs: usize) -> Result<Self> {
        let mut op = Self::zero(dims, legs)?;
        for (k, row) in op.rows.iter_mut().enumerate() {
            row.insert(k, S::one());
        }
        Ok(op)
    }

    /// Scalar multiple of the identity.
    pub fn scalar(dims: SuperDims, legs: usize, c: S) -> Result<Self> {
        Ok(Self::identity(dims, legs)?.scale(&c))
    }

    /// The matrix unit `E_ij` on one leg.
    pub fn matrix_unit(dims: SuperDims, i: usize, j: usize) -> Result<Self> {
        let mut op = Self::zero(dims, 1)?;
        op.check_index(&[i])?;
        op.check_index(&[j])?;
        op.rows[i - 1].insert(j - 1, S::one());
        Ok(op)
    }

    /// Builds from matrix entries given on multi-indices; repeated positions add up.
    pub fn from_entries(dims: SuperDims, legs: usize, entries: impl IntoIterator<Item = (MultiIndex, MultiIndex, S)>) -> Result<Self> {
        let mut op = Self::zero(dims, legs)?;
        for (r, c, v) in entries {
            let (ri, ci) = (op.linear(&r)?, op.linear(&c)?);
            op.add_at(ri, ci, v);
        }
        Ok(op)
    }

    /// Builds from the coefficients of elementary tensors
    /// `E_{r1c1} ⊗ ⋯ ⊗ E_{rncn}`, applying the embedding signs.
    pub fn from_elementary(dims: SuperDims, legs: usize, terms: impl IntoIterator<Item = (MultiIndex, MultiIndex, S)>) -> Result<Self> {
        let signed = terms.into_iter().map(|(r, c, v)| {
            let v = if embedding_odd(dims, &r, &c) { -v } else { v };
            (r, c, v)
        });
        Self::from_entries(dims, legs, signed)
    }

    pub fn dims(&self) -> SuperDims {
        self.dims
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    /// Dimension of the space acted on.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.legs {
            return Err(Error::LegMismatch { left: self.legs, right: idx.len() });
        }
        if let Some(&bad) = idx.iter().find(|&&k| k == 0 || k > self.dims.size()) {
            return Err(Error::InvalidArgument(format!("basis index {bad} outside 1..={}", self.dims.size())));
        }
        Ok(())
    }

    fn linear(&self, idx: &[usize]) -> Result<usize> {
        self.check_index(idx)?;
        Ok(idx.iter().fold(0, |acc, &k| acc * self.dims.size() + (k - 1)))
    }

    pub(crate) fn multi(&self, mut k: usize) -> MultiIndex {
        let d = self.dims.size();
        let mut out = vec![0; self.legs];
        for slot in out.iter_mut().rev() {
            *slot = k % d + 1;
            k /= d;
        }
        out
    }

    /// Parity of a basis vector given by its linear index.
    pub(crate) fn basis_parity(&self, k: usize) -> u8 {
        self.multi(k).iter().map(|&i| self.dims.parity(i)).sum::<u8>() % 2
    }

    fn add_at(&mut self, r: usize, c: usize, v: S) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        let cur = row.remove(&c).map_or(v.clone(), |old| old + v);
        if !cur.is_zero() {
            row.insert(c, cur);
        }
    }

    pub fn entry(&self, r: &[usize], c: &[usize]) -> Result<S> {
        let (ri, ci) = (self.linear(r)?, self.linear(c)?);
        Ok(self.rows[ri].get(&ci).cloned().unwrap_or_else(S::zero))
    }

    /// Nonzero entries as `(row, column, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (MultiIndex, MultiIndex, &S)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(r, row)| row.iter().map(move |(&c, v)| (self.multi(r), self.multi(c), v)))
    }

    pub(crate) fn rows(&self) -> &[SparseRow<S>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(k, row)| row.len() == 1 && row.get(&k).is_some_and(|v| v.is_one()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::AlgebraMismatch(self.dims.to_string(), other.dims.to_string()));
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch { left: self.legs, right: other.legs });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &S::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-S::one())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &Self, k: &S) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (&c, v) in row {
                out.add_at(r, c, v.clone() * k.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self { dims: self.dims, legs: self.legs, rows: vec![SparseRow::new(); self.dim()] };
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(&c, v)| (c, v.clone() * k.clone())).collect()).collect();
        Self { dims: self.dims, legs: self.legs, rows }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut rows = Vec::with_capacity(self.dim());
        for row in &self.rows {
            let mut acc: SparseRow<S> = SparseRow::new();
            for (&k, a) in row {
                for (&c, b) in &other.rows[k] {
                    let e = acc.entry(c).or_insert_with(S::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            acc.retain(|_, v| !v.is_zero());
            rows.push(acc);
        }
        Ok(Self { dims: self.dims, legs: self.legs, rows })
    }

    /// Product of a nonempty list of operators, left to right.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut it = ops.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidArgument("empty operator product".into()))?;
        it.try_fold(first.clone(), |acc, op| acc.mul(op))
    }

    /// Parity of a homogeneous operator, `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<u8> {
        let mut found = None;
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row.keys() {
                let p = (self.basis_parity(r) + self.basis_parity(c)) % 2;
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        found
    }

    /// `self ⊗ other` on the concatenated legs:
    /// `(X⊗Y)[(r1,r2),(c1,c2)] = X[r1,c1] Y[r2,c2] (-1)^{|c1|(|r2|+|c2|)}`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::AlgebraMismatch(self.dims.to_string(), other.dims.to_string()));
        }
        let mut out = Self::zero(self.dims, self.legs + other.legs)?;
        let w = other.dim();
        for (r1, row1) in self.rows.iter().enumerate() {
            for (&c1, x) in row1 {
                let pc1 = self.basis_parity(c1);
                for (r2, row2) in other.rows.iter().enumerate() {
                    for (&c2, y) in row2 {
                        let odd = pc1 * ((other.basis_parity(r2) + other.basis_parity(c2)) % 2) == 1;
                        out.add_at(r1 * w + r2, c1 * w + c2, sign::<S>(odd) * x.clone() * y.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficients of the elementary tensors `E_{r1c1} ⊗ ⋯ ⊗ E_{rncn}`.
    pub fn elementary_terms(&self) -> Vec<(MultiIndex, MultiIndex, S)> {
        self.entries()
            .map(|(r, c, v)| {
                let v = if embedding_odd(self.dims, &r, &c) { -v.clone() } else { v.clone() };
                (r, c, v)
            })
            .collect()
    }

    /// `X_{h_1…h_m} = ι_{h_1}(X^(1)) ⋯ ι_{h_m}(X^(m))` in `n` legs, extended
    /// linearly. `positions` are 1-based and pairwise distinct.
    pub fn embed(&self, positions: &[usize], n: usize) -> Result<Self> {
        if positions.len() != self.legs {
            return Err(Error::LegMismatch { left: self.legs, right: positions.len() });
        }
        for (p, &h) in positions.iter().enumerate() {
            if h == 0 || h > n {
                return Err(Error::LegOutOfRange { leg: h, legs: n });
            }
            if positions[..p].contains(&h) {
                return Err(Error::InvalidArgument(format!("leg {h} repeated in an embedding")));
            }
        }
        let mut out = Self::zero(self.dims, n)?;
        let free: Vec<usize> = (1..=n).filter(|h| !positions.contains(h)).collect();
        let spectator = Self::zero(self.dims, free.len())?;
        let d = self.dims.size();
        for (r, c, coeff) in self.elementary_terms() {
            for s in 0..spectator.dim() {
                let fill = spectator.multi(s);
                let mut state = vec![0; n];
                for (&h, &k) in free.iter().zip(&fill) {
                    state[h - 1] = k;
                }
                for (&h, &k) in positions.iter().zip(&c) {
                    state[h - 1] = k;
                }
                let col = state.iter().fold(0, |acc, &k| acc * d + (k - 1));
                // the rightmost factor acts first
                let mut odd = false;
                for p in (0..positions.len()).rev() {
                    let h = positions[p];
                    let deg = (self.dims.parity(r[p]) + self.dims.parity(c[p])) % 2;
                    let before: u8 = state[..h - 1].iter().map(|&k| self.dims.parity(k)).sum::<u8>() % 2;
                    odd ^= deg * before == 1;
                    state[h - 1] = r[p];
                }
                let row = state.iter().fold(0, |acc, &k| acc * d + (k - 1));
                out.add_at(row, col, sign::<S>(odd) * coeff.clone());
            }
        }
        Ok(out)
    }

    /// Applies the antiautomorphism `τ: E_ij ↦ E_ji (-1)^{ī(j̄+1)}` on leg `h`
    /// (1-based).
    pub fn tau_leg(&self, h: usize) -> Result<Self> {
        if h == 0 || h > self.legs {
            return Err(Error::LegOutOfRange { leg: h, legs: self.legs });
        }
        let terms = self.elementary_terms().into_iter().map(|(mut r, mut c, v)| {
            let (i, j) = (r[h - 1], c[h - 1]);
            let odd = self.dims.parity(i) * (self.dims.parity(j) + 1) % 2 == 1;
            r[h - 1] = j;
            c[h - 1] = i;
            (r, c, if odd { -v } else { v })
        });
        Self::from_elementary(self.dims, self.legs, terms)
    }

    /// Applies `str: E_ij ↦ δ_ij (-1)^{ī}` to the listed legs (1-based) and
    /// returns the operator on the remaining legs, in their original order.
    pub fn partial_supertrace(&self, traced: &[usize]) -> Result<Self> {
        if let Some(&h) = traced.iter().find(|&&h| h == 0 || h > self.legs) {
            return Err(Error::LegOutOfRange { leg: h, legs: self.legs });
        }
        let kept: Vec<usize> = (1..=self.legs).filter(|h| !traced.contains(h)).collect();
        let terms = self.elementary_terms().into_iter().filter_map(|(r, c, v)| {
            let mut odd = false;
            for &h in traced {
                if r[h - 1] != c[h - 1] {
                    return None;
                }
                odd ^= self.dims.parity(r[h - 1]) == 1;
            }
            let rk = kept.iter().map(|&h| r[h - 1]).collect();
            let ck = kept.iter().map(|&h| c[h - 1]).collect();
            Some((rk, ck, if odd { -v } else { v }))
        });
        Self::from_elementary(self.dims, kept.len(), terms.collect::<Vec<_>>())
    }

    /// The full supertrace.
    pub fn supertrace(&self) -> S {
        let all: Vec<usize> = (1..=self.legs).collect();
        let op = self.partial_supertrace(&all).expect("all legs are in range");
        op.rows[0].get(&0).cloned().unwrap_or_else(S::zero)
    }

    /// The ordinary trace of the matrix.
    pub fn trace(&self) -> S {
        self.rows.iter().enumerate().fold(S::zero(), |acc, (k, row)| acc + row.get(&k).cloned().unwrap_or_else(S::zero))
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        rank(self.rows.iter().cloned())
    }

    /// The entries as one sparse vector of length `dim²`, for linear
    /// independence tests across operators.
    pub fn flatten(&self) -> SparseRow<S> {
        let w = self.dim();
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r * w + c, v.clone()))).collect()
    }

    /// Text dump: header `M N legs`, then one line `row col value` per
    /// nonzero entry with comma-joined multi-indices.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.dims.m, self.dims.n, self.legs);
        let join = |idx: &[usize]| idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        for (r, c, v) in self.entries() {
            out.push_str(&format!("{} {} {}\n", join(&r), join(&c), v));
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Parse { pos: line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let nums: Vec<usize> =
            header.split_whitespace().map(|t| t.parse().map_err(|_| bad(1, "header must be `M N legs`"))).collect::<Result<_>>()?;
        let [m, n, legs] = nums[..] else { return Err(bad(1, "header must be `M N legs`")) };
        let dims = SuperDims::new(m, n)?;
        let mut entries = Vec::new();
        for (no, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else { return Err(bad(no + 1, "expected `row col value`")) };
            let idx =
                |s: &str| -> Result<MultiIndex> { s.split(',').map(|t| t.parse().map_err(|_| bad(no + 1, "bad multi-index"))).collect() };
            let v: S = v.parse().map_err(|_| bad(no + 1, "bad rational"))?;
            entries.push((idx(r)?, idx(c)?, v));
        }
        Self::from_entries(dims, legs, entries)
    }
}

impl<S: Scalar> fmt::Debug for Operator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator(gl({}), {} legs)\n{}", self.dims, self.legs, self.dump())
    }
}

impl<S: Scalar> Ring for Operator<S> {
    fn zero_like(&self) -> Self {
        self.scale(&S::zero())
    }

    fn one_like(&self) -> Self {
        Self::identity(self.dims, self.legs).expect("same size as an existing operator")
    }

    fn is_zero(&self) -> bool {
        Operator::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("operators of one shape")
    }

    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("operators of one shape")
    }

    fn negated(&self) -> Self {
        self.neg()
    }

    fn scaled(&self, k: &BigInt) -> Self {
        self.scale(&S::from_bigint(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn d11() -> SuperDims {
        SuperDims::new(1, 1).unwrap()
    }

    #[test]
    fn identity_and_units() {
        let id = Operator::<Q>::identity(d11(), 2).unwrap();
        assert_eq!(id.dim(), 4);
        assert!(id.is_identity());
        let e = Operator::<Q>::matrix_unit(d11(), 1, 2).unwrap();
        assert_eq!(e.entry(&[1], &[2]).unwrap(), q(1));
        assert_eq!(e.parity(), Some(1));
        assert!(Operator::<Q>::matrix_unit(d11(), 3, 1).is_err());
    }

    #[test]
    fn embedding_sign_on_the_second_leg() {
        // E_12 on leg 2 acting on e_2 ⊗ e_2: sign (-1)^{(0+1)·1}
        let e = Operator::<Q>::matrix_unit(d11(), 1, 2).unwrap();
        let on2 = e.embed(&[2], 2).unwrap();
        assert_eq!(on2.entry(&[2, 1], &[2, 2]).unwrap(), q(-1));
        assert_eq!(on2.entry(&[1, 1], &[1, 2]).unwrap(), q(1));
        let id = Operator::<Q>::identity(d11(), 1).unwrap();
        assert_eq!(id.tensor(&e).unwrap(), on2);
    }

    #[test]
    fn embedding_matches_tensor_with_identity() {
        let d = SuperDims::new(1, 2).unwrap();
        let e = Operator::<Q>::matrix_unit(d, 2, 1).unwrap();
        let f = Operator::<Q>::matrix_unit(d, 3, 2).unwrap();
        let ef = e.tensor(&f).unwrap();
        let id = Operator::<Q>::identity(d, 1).unwrap();
        assert_eq!(ef.embed(&[1, 2], 3).unwrap(), ef.tensor(&id).unwrap());
        assert_eq!(ef.embed(&[2, 3], 3).unwrap(), id.tensor(&ef).unwrap());
        // X_{13} = ι_1(E_21) ι_3(E_32)
        let lhs = ef.embed(&[1, 3], 3).unwrap();
        let rhs = e.embed(&[1], 3).unwrap().mul(&f.embed(&[3], 3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn supertrace_of_units() {
        let d = SuperDims::new(2, 1).unwrap();
        assert_eq!(Operator::<Q>::matrix_unit(d, 1, 1).unwrap().supertrace(), q(1));
        assert_eq!(Operator::<Q>::matrix_unit(d, 3, 3).unwrap().supertrace(), q(-1));
        assert_eq!(Operator::<Q>::identity(d, 1).unwrap().supertrace(), q(1));
        assert_eq!(Operator::<Q>::identity(d, 2).unwrap().supertrace(), q(1));
    }

    #[test]
    fn tau_twice_is_the_parity_automorphism() {
        let d = d11();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let e = Operator::<Q>::matrix_unit(d, i, j).unwrap();
            let twice = e.tau_leg(1).unwrap().tau_leg(1).unwrap();
            let want = if d.parity(i) != d.parity(j) { e.neg() } else { e };
            assert_eq!(twice, want);
        }
    }

    #[test]
    fn dump_round_trip() {
        let d = SuperDims::new(2, 1).unwrap();
        let e = Operator::<Q>::matrix_unit(d, 3, 1).unwrap().scale(&Q::new(1.into(), 3.into()));
        let op = e.tensor(&Operator::matrix_unit(d, 2, 3).unwrap()).unwrap();
        let text = op.dump();
        assert_eq!(text.lines().next(), Some("2 1 2"));
        assert_eq!(Operator::<Q>::parse_dump(&text).unwrap(), op);
        assert!(Operator::<Q>::parse_dump("1 1").is_err());
    }

    #[test]
    fn size_guard() {
        let d = SuperDims::new(4, 4).unwrap();
        assert!(matches!(Operator::<Q>::zero(d, 5), Err(Error::SizeGuard(_))));
    }
}
