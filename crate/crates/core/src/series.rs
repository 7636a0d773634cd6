//! Truncated formal power series in `u^-1` over an arbitrary exact ring.
//!
//! A [`SeriesTail`] of order `D` stores `c_0 .. c_D` and stands for
//! `c_0 + c_1 u^-1 + ... + c_D u^-D + O(u^-(D+1))`. Coefficients past `D`
//! are unknown, never zero, so binary operations demand equal orders.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Debug)]
pub struct SeriesTail<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> SeriesTail<R> {
    /// Builds a series from `c_0 .. c_D`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least the constant term".into()));
        }
        Ok(Self { coeffs })
    }

    /// `c + O(u^-(order+1))`.
    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &R {
        &self.coeffs[r]
    }

    pub fn get(&self, r: usize) -> Option<&R> {
        self.coeffs.get(r)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn map<T: Ring>(&self, f: impl FnMut(&R) -> T) -> SeriesTail<T> {
        SeriesTail { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Explicit truncation to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect();
        Ok(Self { coeffs })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    /// Cauchy product; ring multiplication keeps the left factor from `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.order();
        let mut coeffs = Vec::with_capacity(d + 1);
        for r in 0..=d {
            let mut acc = self.coeffs[0].zero_like();
            for p in 0..=r {
                let (a, b) = (&self.coeffs[p], &other.coeffs[r - p]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            coeffs.push(acc);
        }
        Ok(Self { coeffs })
    }

    /// Multiplies every coefficient on the left by a ring value.
    pub fn left_mul(&self, c: &R) -> Self {
        self.map(|a| c.times(a))
    }

    pub fn right_mul(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        self.map(|a| a.scaled(k))
    }

    /// Two-sided inverse of a series whose constant term is the ring unit.
    pub fn inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        let d = self.order();
        let one = self.coeffs[0].one_like();
        let mut inv: Vec<R> = Vec::with_capacity(d + 1);
        inv.push(one);
        // b_r = -sum_{p=1}^{r} b_{r-p} a_p
        for r in 1..=d {
            let mut acc = self.coeffs[0].zero_like();
            for p in 1..=r {
                let a = &self.coeffs[p];
                if a.is_zero() || inv[r - p].is_zero() {
                    continue;
                }
                acc = acc.plus(&inv[r - p].times(a));
            }
            inv.push(acc.negated());
        }
        Ok(Self { coeffs: inv })
    }

    /// Re-expands `a(u + c)` in powers of `u^-1` with exact binomials.
    pub fn shift(&self, c: i64) -> Self {
        if c == 0 {
            return self.clone();
        }
        let d = self.order();
        let c = BigInt::from(c);
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; d + 1];
        out[0] = self.coeffs[0].clone();
        for a in 1..=d {
            if self.coeffs[a].is_zero() {
                continue;
            }
            // (u+c)^-a = sum_m (-1)^m binom(a+m-1, m) c^m u^-(a+m)
            let mut c_pow = BigInt::one();
            for m in 0..=(d - a) {
                let mut k = binomial(BigInt::from(a + m - 1), BigInt::from(m)) * &c_pow;
                if m % 2 == 1 {
                    k = -k;
                }
                let term = self.coeffs[a].scaled(&k);
                out[a + m] = out[a + m].plus(&term);
                c_pow *= &c;
            }
        }
        Self { coeffs: out }
    }

    /// `a(-u)`: the coefficient at `u^-r` picks up `(-1)^r`.
    pub fn negate_argument(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(r, c)| if r % 2 == 1 { c.negated() } else { c.clone() }).collect();
        Self { coeffs }
    }

    /// Formal derivative in `u`. The `u^-(D+1)` term of the true derivative
    /// lies outside the stored window and is dropped, so the result is exact
    /// through `u^-D`.
    pub fn derivative(&self) -> Self {
        let d = self.order();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; d + 1];
        for r in 1..d {
            out[r + 1] = self.coeffs[r].scaled(&BigInt::from(-(r as i64)));
        }
        Self { coeffs: out }
    }

    /// Order-checked equality.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// Two-variable truncated series `sum c_{r,s} u^-r v^-s`.
#[derive(Clone, Debug)]
pub struct BiSeriesTail<R> {
    order_u: usize,
    order_v: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> BiSeriesTail<R> {
    pub fn from_fn(order_u: usize, order_v: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut coeffs = Vec::with_capacity((order_u + 1) * (order_v + 1));
        for r in 0..=order_u {
            for s in 0..=order_v {
                coeffs.push(f(r, s));
            }
        }
        Self { order_u, order_v, coeffs }
    }

    /// `a(u) b(v)`.
    pub fn outer(a: &SeriesTail<R>, b: &SeriesTail<R>) -> Self {
        Self::from_fn(a.order(), b.order(), |r, s| a.coeff(r).times(b.coeff(s)))
    }

    /// `a(v) b(u)`, factor order preserved.
    pub fn outer_swapped(a: &SeriesTail<R>, b: &SeriesTail<R>) -> Self {
        Self::from_fn(b.order(), a.order(), |r, s| a.coeff(s).times(b.coeff(r)))
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.order_u, self.order_v)
    }

    pub fn coeff(&self, r: usize, s: usize) -> &R {
        &self.coeffs[r * (self.order_v + 1) + s]
    }

    pub fn map<T: Ring>(&self, f: impl FnMut(&R) -> T) -> BiSeriesTail<T> {
        BiSeriesTail { order_u: self.order_u, order_v: self.order_v, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_orders(&self, other: &Self) -> Result<()> {
        if self.order_u != other.order_u {
            return Err(Error::OrderMismatch { left: self.order_u, right: other.order_u });
        }
        if self.order_v != other.order_v {
            return Err(Error::OrderMismatch { left: self.order_v, right: other.order_v });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        Ok(Self {
            order_u: self.order_u,
            order_v: self.order_v,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        Ok(Self {
            order_u: self.order_u,
            order_v: self.order_v,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    /// Multiplies by `(u - v - c)`. The `(r,s)` coefficient feeds positions
    /// `(r-1,s)` and `(r,s-1)`; the result has orders one lower in each
    /// variable. The `r = 0` row and `s = 0` column must vanish, otherwise the
    /// product has positive powers of `u` or `v`.
    pub fn mul_linear(&self, c: i64) -> Result<Self> {
        if self.order_u == 0 || self.order_v == 0 {
            return Err(Error::InvalidArgument("both orders must be positive".into()));
        }
        for s in 0..=self.order_v {
            if !self.coeff(0, s).is_zero() {
                return Err(Error::InvalidArgument(format!("coefficient (0,{s}) is nonzero")));
            }
        }
        for r in 0..=self.order_u {
            if !self.coeff(r, 0).is_zero() {
                return Err(Error::InvalidArgument(format!("coefficient ({r},0) is nonzero")));
            }
        }
        let c = BigInt::from(c);
        Ok(Self::from_fn(self.order_u - 1, self.order_v - 1, |r, s| {
            let mut x = self.coeff(r + 1, s).minus(self.coeff(r, s + 1));
            if c != BigInt::from(0) {
                x = x.minus(&self.coeff(r, s).scaled(&c));
            }
            x
        }))
    }

    /// Positions `(r,s)` with `r + s <= total` holding a nonzero coefficient.
    pub fn nonzero_within(&self, total: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..=self.order_u {
            for s in 0..=self.order_v {
                if r + s <= total && !self.coeff(r, s).is_zero() {
                    out.push((r, s));
                }
            }
        }
        out
    }
}

/// How a coefficient renders inside the series text form.
pub trait SeriesCoefficient: Ring {
    /// `Some(text)` when the coefficient is a plain scalar (rendered bare).
    fn scalar_text(&self) -> Option<String>;
    /// Text for the braced form `{ ... }`.
    fn braced_text(&self) -> String;
}

impl<S: Scalar + Ring> SeriesCoefficient for S {
    fn scalar_text(&self) -> Option<String> {
        Some(self.to_string())
    }
    fn braced_text(&self) -> String {
        self.to_string()
    }
}

impl<R: SeriesCoefficient> std::fmt::Display for SeriesTail<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = if r == 0 { String::new() } else { format!("*u^-{r}") };
            match c.scalar_text() {
                Some(text) => {
                    let (neg, body) = match text.strip_prefix('-') {
                        Some(rest) => (true, rest.to_string()),
                        None => (false, text),
                    };
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    out.push_str(&body);
                    out.push_str(&power);
                }
                None => {
                    if !out.is_empty() {
                        out.push_str(" + ");
                    }
                    out.push_str(&format!("{{ {} }}", c.braced_text()));
                    out.push_str(&power);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{} + O(u^-{})", out, self.order() + 1)
    }
}

/// Parses the series text form. `parse_coeff` receives the coefficient text
/// (either a bare rational or the contents of a brace pair) and its byte
/// offset; `zero` supplies the ring's zero for absent coefficients.
pub fn parse_series<R: Ring>(text: &str, zero: &R, mut parse_coeff: impl FnMut(&str, usize) -> Result<R>) -> Result<SeriesTail<R>> {
    let pieces = split_signed_terms(text)?;
    let mut terms: Vec<(usize, R)> = Vec::new();
    let mut order: Option<usize> = None;
    for (neg, start, piece) in pieces {
        let body = piece.trim();
        let lead = start + (piece.len() - piece.trim_start().len());
        if let Some(rest) = body.strip_prefix("O(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse { pos: lead, msg: "unterminated O-term".into() })?;
            let k = parse_power(inner.trim(), lead)?;
            if k == 0 || neg {
                return Err(Error::Parse { pos: lead, msg: "invalid O-term".into() });
            }
            order = Some(k - 1);
            continue;
        }
        if order.is_some() {
            return Err(Error::Parse { pos: lead, msg: "terms after the O-term".into() });
        }
        let (coeff_text, coeff_pos, power) = split_power(body, lead)?;
        let mut c = match coeff_text {
            None => zero.one_like(),
            Some(t) => {
                let t = t.trim();
                if let Some(inner) = t.strip_prefix('{') {
                    let inner = inner.strip_suffix('}').ok_or_else(|| Error::Parse { pos: coeff_pos, msg: "unbalanced brace".into() })?;
                    parse_coeff(inner, coeff_pos + 1)?
                } else {
                    parse_coeff(t, coeff_pos)?
                }
            }
        };
        if neg {
            c = c.negated();
        }
        terms.push((power, c));
    }
    let order = order.ok_or_else(|| Error::Parse { pos: text.len(), msg: "missing O-term".into() })?;
    let mut coeffs = vec![zero.zero_like(); order + 1];
    for (p, c) in terms {
        if p > order {
            return Err(Error::Parse { pos: 0, msg: format!("term u^-{p} beyond the O-term") });
        }
        coeffs[p] = coeffs[p].plus(&c);
    }
    SeriesTail::from_coeffs(coeffs)
}

impl<S: Scalar + Ring> SeriesTail<S> {
    pub fn parse(text: &str) -> Result<Self> {
        parse_series(text, &S::zero(), |t, pos| {
            crate::scalar::parse_scalar(t).ok_or_else(|| Error::Parse { pos, msg: format!("bad rational `{t}`") })
        })
    }
}

fn parse_power(text: &str, pos: usize) -> Result<usize> {
    let k = text.strip_prefix("u^-").ok_or_else(|| Error::Parse { pos, msg: format!("expected `u^-k`, found `{text}`") })?;
    k.trim().parse().map_err(|_| Error::Parse { pos, msg: format!("bad exponent `{k}`") })
}

/// Splits `coeff*u^-k`, bare `u^-k`, or a bare coefficient.
fn split_power(body: &str, pos: usize) -> Result<(Option<&str>, usize, usize)> {
    if body.starts_with("u^-") {
        return Ok((None, pos, parse_power(body, pos)?));
    }
    // the power suffix is outside any brace
    if let Some(idx) = body.rfind("*u^-") {
        let depth_ok = body[..idx].matches('{').count() == body[..idx].matches('}').count();
        if depth_ok {
            let k = parse_power(&body[idx + 1..], pos + idx + 1)?;
            return Ok((Some(&body[..idx]), pos, k));
        }
    }
    Ok((Some(body), pos, 0))
}

/// Splits at top-level `+`/`-` signs, returning (negated, byte offset, text).
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(bool, usize, &str)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut neg = false;
    let mut prev: Option<u8> = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'{' | b'(' | b'[' => depth += 1,
            b'}' | b')' | b']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse { pos: i, msg: "unbalanced closing bracket".into() });
                }
            }
            b'+' | b'-' if depth == 0 => {
                let is_sign_of_operand = matches!(prev, None | Some(b'^') | Some(b'*') | Some(b'/') | Some(b'('));
                if !is_sign_of_operand {
                    out.push((neg, start, &text[start..i]));
                    neg = b == b'-';
                    start = i + 1;
                    prev = None;
                    continue;
                } else if prev.is_none() && b == b'-' {
                    neg = !neg;
                    start = i + 1;
                    continue;
                }
            }
            _ => {}
        }
        if !b.is_ascii_whitespace() {
            prev = Some(b);
        }
    }
    if depth != 0 {
        return Err(Error::Parse { pos: text.len(), msg: "unbalanced opening bracket".into() });
    }
    out.push((neg, start, &text[start..]));
    for (_, pos, t) in &out {
        if t.trim().is_empty() {
            return Err(Error::Parse { pos: *pos, msg: "empty term".into() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qs(v: &[i64]) -> SeriesTail<Q> {
        SeriesTail::from_coeffs(v.iter().map(|&n| q(n)).collect()).unwrap()
    }

    #[test]
    fn add_is_coefficientwise() {
        let s = qs(&[1, 2]).add(&qs(&[3, -2])).unwrap();
        assert!(s.try_eq(&qs(&[4, 0])).unwrap());
        let z = qs(&[0, 0]);
        assert!(qs(&[1, 2]).add(&z).unwrap().try_eq(&qs(&[1, 2])).unwrap());
    }

    #[test]
    fn mismatched_orders_are_errors() {
        let a = qs(&[1, 0, 0, 0]);
        let b = qs(&[1, 0, 0, 0, 0]);
        assert_eq!(a.add(&b).unwrap_err(), Error::OrderMismatch { left: 3, right: 4 });
        assert!(a.mul(&b).is_err());
        assert!(a.try_eq(&b).is_err());
    }

    #[test]
    fn cauchy_product() {
        let p = qs(&[1, 1, 0]).mul(&qs(&[1, -1, 0])).unwrap();
        assert!(p.try_eq(&qs(&[1, 0, -1])).unwrap());
        let b = qs(&[3, 1, 4]);
        assert!(qs(&[1, 0, 0]).mul(&b).unwrap().try_eq(&b).unwrap());
    }

    #[test]
    fn geometric_inverse() {
        let inv = qs(&[1, -1, 0, 0]).inverse().unwrap();
        assert!(inv.try_eq(&qs(&[1, 1, 1, 1])).unwrap());
        assert!(qs(&[1, 0]).inverse().unwrap().try_eq(&qs(&[1, 0])).unwrap());
        assert_eq!(qs(&[2, 1]).inverse().unwrap_err(), Error::NonUnitConstant);
    }

    #[test]
    fn inverse_of_second_order_perturbation() {
        // (1 + 5u^-2)^-1 = 1 - 5u^-2 mod u^-4; multiply back to confirm
        let a = qs(&[1, 0, 5, 0]);
        let inv = a.inverse().unwrap();
        assert!(inv.try_eq(&qs(&[1, 0, -5, 0])).unwrap());
        assert!(a.mul(&inv).unwrap().try_eq(&qs(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn shift_by_one_matches_long_division() {
        // 1/(u+1) = u^-1 - u^-2 + u^-3 - ...
        let s = qs(&[0, 1, 0, 0]).shift(1);
        assert!(s.try_eq(&qs(&[0, 1, -1, 1])).unwrap());
        assert!(qs(&[1, 1]).shift(0).try_eq(&qs(&[1, 1])).unwrap());
    }

    #[test]
    fn shift_long_division_oracle() {
        // (u+c)^-a by repeated division of 1 by (u+c), coefficient by coefficient
        fn div_by_u_plus_c(x: &[Q], c: &Q) -> Vec<Q> {
            // y(u) = x(u) / (u + c), with x having no u^0 term constraint
            // solve (u + c) y = x: y_{k+1} = x_k - c y_k, y_0 = 0
            let mut y = vec![Q::from_integer(0.into()); x.len()];
            for k in 0..x.len() - 1 {
                y[k + 1] = &x[k] - c * &y[k];
            }
            y
        }
        let d = 6;
        for c in -3..=3i64 {
            let cq = q(c);
            let mut pow = vec![q(0); d + 1];
            pow[0] = q(1);
            for a in 1..=d {
                pow = div_by_u_plus_c(&pow, &cq);
                let mut unit = vec![0i64; d + 1];
                unit[a] = 1;
                let shifted = qs(&unit).shift(c);
                let expected = SeriesTail::from_coeffs(pow.clone()).unwrap();
                assert!(shifted.try_eq(&expected).unwrap(), "a={a} c={c}");
            }
        }
    }

    #[test]
    fn derivative_power_rule() {
        assert!(qs(&[1, 1, 0]).derivative().try_eq(&qs(&[0, 0, -1])).unwrap());
        assert!(qs(&[7, 0, 0]).derivative().is_zero());
        assert!(qs(&[0, 0, 1, 0]).derivative().try_eq(&qs(&[0, 0, 0, -2])).unwrap());
    }

    #[test]
    fn text_form_round_trip() {
        let s = SeriesTail::<Q>::from_coeffs(vec![q(1), q(2), q(0), Q::new((-1).into(), 3.into())]).unwrap();
        let text = s.to_string();
        assert_eq!(text, "1 + 2*u^-1 - 1/3*u^-3 + O(u^-4)");
        let back = SeriesTail::<Q>::parse(&text).unwrap();
        assert!(back.try_eq(&s).unwrap());
        assert_eq!(SeriesTail::<Q>::parse("-u^-2 + O(u^-3)").unwrap().to_string(), "-1*u^-2 + O(u^-3)");
        assert!(SeriesTail::<Q>::parse("1 + 2*u^-1").is_err());
        assert_eq!(qs(&[0, 0]).to_string(), "0 + O(u^-2)");
    }

    #[test]
    fn bivariate_linear_factor() {
        // (u - v) * u^-1 v^-1 (u^-1 - v^-1)^... : check positions move correctly
        let x = BiSeriesTail::from_fn(3, 3, |r, s| if (r, s) == (2, 1) { q(1) } else { q(0) });
        let y = x.mul_linear(0).unwrap();
        assert_eq!(y.orders(), (2, 2));
        assert_eq!(*y.coeff(1, 1), q(1));
        assert_eq!(*y.coeff(2, 0), q(-1));
        let bad = BiSeriesTail::from_fn(2, 2, |_, _| q(1));
        assert!(bad.mul_linear(0).is_err());
    }
}
