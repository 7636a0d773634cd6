//! The `compute` targets: printed series and elements.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational as Q;
use yangian::maps::{permutations, unit_series, MorphismTable, SeriesMatrix};
use yangian::{Element, ElementSeries, MorphismKind, Ring, RttData, Yangian};

use crate::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Z,
    Berezinian,
    Qdet,
    CSeries,
    NormalForm,
    ApplyMap,
}

impl Target {
    pub const ALL: [Target; 6] = [Self::Z, Self::Berezinian, Self::Qdet, Self::CSeries, Self::NormalForm, Self::ApplyMap];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Z => "z",
            Self::Berezinian => "berezinian",
            Self::Qdet => "qdet",
            Self::CSeries => "c-series",
            Self::NormalForm => "normal-form",
            Self::ApplyMap => "apply-map",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Self::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|t| t.name()).collect();
            VerifyError::Usage(format!("unknown target `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Everything a computation may need.
#[derive(Clone, Debug, Default)]
pub struct ComputeRequest {
    pub m: usize,
    pub n: usize,
    pub order: usize,
    pub input: Option<String>,
    pub map: Option<String>,
}

/// `Σ_σ sgn(σ) T_{1σ(1)}(u) T_{2σ(2)}(u+1) ⋯ T_{Mσ(M)}(u+M-1)`, the row
/// expansion of the quantum determinant of `Y(gl_M)`.
pub fn quantum_determinant_by_rows(alg: &Arc<Yangian<Q>>, order: usize) -> yangian::Result<ElementSeries<Q>> {
    let d = alg.dims();
    if d.n != 0 {
        return Err(yangian::Error::InvalidArgument(format!("the quantum determinant needs N = 0, got gl({d})")));
    }
    let m = d.m as usize;
    let t = SeriesMatrix::t_matrix(alg, order);
    let mut acc = unit_series(alg, 1, order).map(|c| c.zero_like());
    for (sigma, odd) in permutations(m) {
        let mut term = unit_series(alg, 1, order);
        for (row, &col) in sigma.iter().enumerate() {
            term = term.mul(&t.entry(row + 1, col).shift(row as i64))?;
        }
        acc = if odd { acc.sub(&term)? } else { acc.add(&term)? };
    }
    Ok(acc)
}

fn need_input(req: &ComputeRequest) -> Result<&str, VerifyError> {
    req.input.as_deref().ok_or_else(|| VerifyError::Usage("this target needs an input element".into()))
}

pub fn compute(target: Target, req: &ComputeRequest) -> Result<String, VerifyError> {
    let alg = Yangian::<Q>::new(req.m, req.n)?;
    let out = match target {
        Target::Z => RttData::new(&alg, req.order)?.z_series()?.to_string(),
        Target::Berezinian => RttData::new(&alg, req.order)?.berezinian()?.to_string(),
        Target::Qdet => quantum_determinant_by_rows(&alg, req.order)?.to_string(),
        Target::CSeries => RttData::new(&alg, req.order)?.c_series()?.to_string(),
        Target::NormalForm => Element::parse(&alg, need_input(req)?)?.to_string(),
        Target::ApplyMap => {
            let x = Element::parse(&alg, need_input(req)?)?;
            let name = req.map.as_deref().ok_or_else(|| VerifyError::Usage("apply-map needs --map".into()))?;
            let kind: MorphismKind = name.parse()?;
            MorphismTable::build(kind, &alg, x.max_level().max(1))?.apply(&x)?.to_string()
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(m: usize, n: usize, order: usize) -> ComputeRequest {
        ComputeRequest { m, n, order, ..ComputeRequest::default() }
    }

    #[test]
    fn row_and_column_quantum_determinants_agree() {
        for m in 1..=3 {
            let alg = Yangian::<Q>::new(m, 0).unwrap();
            let rows = quantum_determinant_by_rows(&alg, 3).unwrap();
            let cols = RttData::new(&alg, 3).unwrap().berezinian().unwrap();
            assert!(rows.try_eq(&cols).unwrap(), "gl_{m}");
        }
    }

    #[test]
    fn z_has_no_first_coefficient() {
        let text = compute(Target::Z, &req(1, 1, 3)).unwrap();
        assert!(text.starts_with("1 + {"), "{text}");
        assert!(!text.contains("u^-1 "), "{text}");
        assert!(text.ends_with("O(u^-4)"), "{text}");
    }

    #[test]
    fn normal_form_and_maps() {
        let mut r = req(1, 1, 1);
        r.input = Some("T[2,1,1]*T[1,2,1]".into());
        let nf = compute(Target::NormalForm, &r).unwrap();
        let alg = Yangian::<Q>::new(1, 1).unwrap();
        let want = Element::parse(&alg, "-T[1,2,1]*T[2,1,1] + T[1,1,1] - T[2,2,1]").unwrap();
        assert_eq!(Element::parse(&alg, &nf).unwrap(), want);
        r.map = Some("eta_M".into());
        r.input = Some("T[1,1,1] + T[1,2,2]".into());
        let img = compute(Target::ApplyMap, &r).unwrap();
        assert_eq!(Element::parse(&alg, &img).unwrap(), Element::parse(&alg, "-T[1,1,1] + T[1,2,2]").unwrap());
    }

    #[test]
    fn bad_requests() {
        assert!(compute(Target::NormalForm, &req(1, 1, 1)).is_err());
        assert!(compute(Target::Qdet, &req(1, 1, 2)).is_err());
        assert!(compute(Target::CSeries, &req(1, 1, 2)).is_err());
        assert!("det".parse::<Target>().is_err());
    }
}
