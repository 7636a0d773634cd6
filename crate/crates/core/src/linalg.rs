//! Exact rank by Gaussian elimination over a field.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse row: column index to nonzero value.
pub type SparseRow<S> = BTreeMap<usize, S>;

/// Rank of the span of the given sparse rows.
pub fn rank<S: Scalar>(rows: impl IntoIterator<Item = SparseRow<S>>) -> usize {
    // pivots: leading column -> reduced row with leading coefficient 1
    let mut pivots: BTreeMap<usize, SparseRow<S>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, lead_val)) = row.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = lead_val.clone();
                    for (c, v) in p {
                        let cur = row.get(c).cloned().unwrap_or_else(S::zero) - factor.clone() * v.clone();
                        if cur.is_zero() {
                            row.remove(c);
                        } else {
                            row.insert(*c, cur);
                        }
                    }
                }
                None => {
                    let inv = S::one() / lead_val.clone();
                    let normalized: SparseRow<S> = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// A nontrivial linear relation among the rows, as coefficients indexed by
/// row position, or `None` when the rows are independent.
pub fn first_dependency<S: Scalar>(rows: impl IntoIterator<Item = SparseRow<S>>) -> Option<SparseRow<S>> {
    // each row carries a tag block recording how it was combined
    const TAG: usize = usize::MAX / 2;
    let mut pivots: BTreeMap<usize, SparseRow<S>> = BTreeMap::new();
    for (k, mut row) in rows.into_iter().enumerate() {
        row.retain(|c, v| *c < TAG && !v.is_zero());
        row.insert(TAG + k, S::one());
        loop {
            let (&lead, lead_val) = row.iter().next().expect("the tag entry is never cancelled");
            if lead >= TAG {
                return Some(row.into_iter().map(|(c, v)| (c - TAG, v)).collect());
            }
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = lead_val.clone();
                    for (c, v) in p {
                        let cur = row.get(c).cloned().unwrap_or_else(S::zero) - factor.clone() * v.clone();
                        if cur.is_zero() {
                            row.remove(c);
                        } else {
                            row.insert(*c, cur);
                        }
                    }
                }
                None => {
                    let inv = S::one() / lead_val.clone();
                    let normalized: SparseRow<S> = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    None
}

/// Rank of a dense matrix given row by row.
pub fn dense_rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    rank(rows.iter().map(|r| r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect()))
}
