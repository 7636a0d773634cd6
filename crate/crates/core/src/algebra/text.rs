//! Text grammar for elements: `-1*T[1,2,1]*T[2,1,1] + 1*T[1,1,1]`, legs
//! joined by ` (x) `, an empty leg written `1`, zero written `0`.

use std::fmt;
use std::sync::Arc;

use super::{Element, GenIndex, Word, Yangian};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};
use crate::series::split_signed_terms;

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            f.write_str(&body)?;
            f.write_str("*")?;
            for (h, w) in m.words().iter().enumerate() {
                if h > 0 {
                    f.write_str(" (x) ")?;
                }
                if w.is_empty() {
                    f.write_str("1")?;
                }
                for (k, g) in w.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{g}")?;
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Element<S> {
    /// Parses the element grammar; the leg count is read from the first term.
    /// Input words need not be normal.
    pub fn parse(alg: &Arc<Yangian<S>>, text: &str) -> Result<Self> {
        Self::parse_inner(alg, text, None, 0)
    }

    /// Parses and insists on a given leg count (needed for `0`).
    pub fn parse_with_legs(alg: &Arc<Yangian<S>>, text: &str, legs: usize) -> Result<Self> {
        Self::parse_inner(alg, text, Some(legs), 0)
    }

    /// Like [`Element::parse`], reporting error positions offset by `base`.
    pub fn parse_at(alg: &Arc<Yangian<S>>, text: &str, base: usize) -> Result<Self> {
        Self::parse_inner(alg, text, None, base)
    }

    fn parse_inner(alg: &Arc<Yangian<S>>, text: &str, legs: Option<usize>, base: usize) -> Result<Self> {
        if text.trim() == "0" {
            return Ok(Self::zero(alg, legs.unwrap_or(1)));
        }
        let shift = |e: Error| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + base, msg },
            other => other,
        };
        let pieces = split_signed_terms(text).map_err(shift)?;
        let mut raw: Vec<(Vec<Word>, S)> = Vec::new();
        let mut legs = legs;
        for (neg, start, piece) in pieces {
            let (words, mut c) = parse_term(alg, piece, start).map_err(shift)?;
            match legs {
                None => legs = Some(words.len()),
                Some(n) if n != words.len() => {
                    return Err(Error::Parse { pos: base + start, msg: format!("term has {} legs, expected {n}", words.len()) })
                }
                _ => {}
            }
            if neg {
                c = -c;
            }
            raw.push((words, c));
        }
        Self::from_raw(alg, legs.unwrap_or(1), raw)
    }
}

fn parse_term<S: Scalar>(alg: &Arc<Yangian<S>>, piece: &str, start: usize) -> Result<(Vec<Word>, S)> {
    let mut coeff = S::one();
    let mut words = Vec::new();
    let mut offset = start;
    for leg in piece.split("(x)") {
        let mut w = Word::new();
        let mut tok_start = offset;
        for tok in leg.split('*') {
            let t = tok.trim();
            let pos = tok_start + (tok.len() - tok.trim_start().len());
            tok_start += tok.len() + 1;
            if t.is_empty() {
                return Err(Error::Parse { pos, msg: "empty factor".into() });
            }
            if let Some(inner) = t.strip_prefix("T[") {
                let inner = inner.strip_suffix(']').ok_or_else(|| Error::Parse { pos, msg: format!("unterminated generator `{t}`") })?;
                let nums: Vec<&str> = inner.split(',').collect();
                let parsed: Option<Vec<usize>> = nums.iter().map(|x| x.trim().parse().ok()).collect();
                let v = match parsed {
                    Some(v) if v.len() == 3 => v,
                    _ => return Err(Error::Parse { pos, msg: format!("expected T[i,j,r], found `{t}`") }),
                };
                let g = GenIndex::new(v[0], v[1], v[2]);
                alg.check_index(g).map_err(|e| Error::Parse { pos, msg: e.to_string() })?;
                w.push(g);
            } else if let Some(c) = parse_scalar::<S>(t) {
                coeff = coeff * c;
            } else {
                return Err(Error::Parse { pos, msg: format!("unrecognized factor `{t}`") });
            }
        }
        words.push(w);
        offset += leg.len() + 3;
    }
    Ok((words, coeff))
}
