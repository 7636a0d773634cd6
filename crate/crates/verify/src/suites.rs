//! Named verification suites and their dispatch.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational as Q;
use yangian::algebra::pbw_confluence;
use yangian::maps::checks as mc;
use yangian::maps::{MorphismKind, MorphismTable};
use yangian::tensor::checks as tc;
use yangian::{CheckReport, Error, RttData, SuperDims, Yangian};

use crate::compute::quantum_determinant_by_rows;
use crate::params::{parse_point_sets, Bounds, Guards, Params};
use crate::report::{Report, Status};
use crate::VerifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    YangBaxter,
    DefiningRelations,
    ZCentral,
    BerezinianTheorem,
    AntipodeSquare,
    Grouplike,
    P28Symbol,
    L3,
    QIdentities,
    FusionCommutation,
    PbwConfluence,
    PbwRank,
    HopfAxioms,
    MorphismSuite,
    AzRelation,
    Representations,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Self::YangBaxter,
        Self::DefiningRelations,
        Self::ZCentral,
        Self::BerezinianTheorem,
        Self::AntipodeSquare,
        Self::Grouplike,
        Self::P28Symbol,
        Self::L3,
        Self::QIdentities,
        Self::FusionCommutation,
        Self::PbwConfluence,
        Self::PbwRank,
        Self::HopfAxioms,
        Self::MorphismSuite,
        Self::AzRelation,
        Self::Representations,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::YangBaxter => "yang-baxter",
            Self::DefiningRelations => "defining-relations",
            Self::ZCentral => "z-central",
            Self::BerezinianTheorem => "berezinian-theorem",
            Self::AntipodeSquare => "antipode-square",
            Self::Grouplike => "grouplike",
            Self::P28Symbol => "p28-symbol",
            Self::L3 => "l3",
            Self::QIdentities => "q-identities",
            Self::FusionCommutation => "fusion-commutation",
            Self::PbwConfluence => "pbw-confluence",
            Self::PbwRank => "pbw-rank",
            Self::HopfAxioms => "hopf-axioms",
            Self::MorphismSuite => "morphism-suite",
            Self::AzRelation => "az-relation",
            Self::Representations => "representations",
        }
    }

    /// The statement the suite verifies.
    pub fn anchor(&self) -> &'static str {
        match self {
            Self::YangBaxter => "R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v) with R(u) = 1 - P/u; R(-u)R(u) = 1 - u^-2",
            Self::DefiningRelations => "(u-v)[T_ij(u), T_kl(v)](-1)^{īk̄+īl̄+k̄l̄} = T_kj(u)T_il(v) - T_kj(v)T_il(u)",
            Self::ZCentral => "the series Z(u) defined through T(u) and T(u)^-1 is central, even, and has Z^(1) = 0",
            Self::BerezinianTheorem => "B(u+1) = Z(u) B(u); for N = 0, B(u) is the quantum determinant",
            Self::AntipodeSquare => "Z(u) S^2(T_ij(u)) = T_ij(u+M-N); m(S⊗id)Δ = m(id⊗S)Δ = ε",
            Self::Grouplike => "Δ(Z) = Z⊗Z, Δ(B) = B⊗B; S(Z) = ω(Z) = Z^-1; Z is transpose invariant",
            Self::P28Symbol => "top symbol of Z^(r) is (1-r) Σ_i (-1)^i T_ii^(r-1); top symbols of generator commutators",
            Self::L3 => "[T_ij^(r), Ť_kl^(s)] = 0 for i,j <= M < k,l; the two factors of B(u) commute",
            Self::QIdentities => "identities among P, Q, I, J, R, R̃, the symmetrizers G, H and the supertrace",
            Self::FusionCommutation => "(G⊗1) T_1(u) ⋯ T_n(u-n+1) = T_n(u-n+1) ⋯ T_1(u) (G⊗1) and the H analogue; QTT and R̃TT relations",
            Self::PbwConfluence => "normal forms do not depend on the rewriting schedule",
            Self::PbwRank => "normal monomials have linearly independent images under evaluation representations",
            Self::HopfAxioms => "counit, coassociativity and antipode axioms on generators",
            Self::MorphismSuite => "eta_M, S, transpose_T preserve the relations and pairwise commute; ω = S∘transpose = transpose∘S",
            Self::AzRelation => "Z(u) C(u+1) = C(u) for M = 0; C(u) maps to D(1-u) under Y(gl(0|N)) ≅ Y(gl_N)",
            Self::Representations => {
                "coproduct and R-matrix routes to tensor products of evaluation representations agree; relations vanish there"
            }
        }
    }

    /// Suites whose work lives in `M + N + 2` tensor legs.
    pub fn is_tensor(&self) -> bool {
        matches!(self, Self::QIdentities | Self::FusionCommutation)
    }

    pub fn defaults(&self) -> Bounds {
        let b = |order: Option<usize>, r_max: Option<usize>, s_max: Option<usize>| Bounds { order, r_max, s_max, ..Bounds::default() };
        match self {
            Self::YangBaxter => Bounds { order: Some(5), points: Some("0,1,3,-2".into()), ..Bounds::default() },
            Self::DefiningRelations => b(Some(6), None, None),
            Self::ZCentral => b(Some(6), Some(5), Some(4)),
            Self::BerezinianTheorem => b(Some(5), None, None),
            Self::AntipodeSquare => b(Some(5), Some(4), None),
            Self::Grouplike => b(Some(4), None, None),
            Self::P28Symbol => b(Some(5), Some(5), None),
            Self::L3 => b(Some(6), None, None),
            Self::QIdentities => Bounds { legs: Some(4), seed: Some(1), ..Bounds::default() },
            Self::FusionCommutation => Bounds { order: Some(3), legs: Some(2), ..Bounds::default() },
            Self::PbwConfluence => Bounds { order: Some(6), r_max: Some(250), s_max: Some(4), seed: Some(5), ..Bounds::default() },
            Self::PbwRank => Bounds { order: Some(3), points: Some("0,1,5".into()), ..Bounds::default() },
            Self::HopfAxioms => b(None, Some(4), None),
            Self::MorphismSuite => b(Some(5), Some(4), None),
            Self::AzRelation => b(Some(5), None, None),
            Self::Representations => {
                Bounds { order: Some(4), r_max: Some(3), legs: Some(3), points: Some("0,1,-2".into()), seed: Some(3), ..Bounds::default() }
            }
        }
    }

    /// What each bound means for this suite, for help texts.
    pub fn bound_help(&self) -> &'static str {
        match self {
            Self::YangBaxter => "points: grid values; order: unitarity series order",
            Self::DefiningRelations => "order: bound on r+s",
            Self::ZCentral => "order: series order of the Z(u) checks; r-max, s-max: centrality of Z^(r) against T^(s)",
            Self::BerezinianTheorem | Self::Grouplike | Self::AzRelation => "order: series order",
            Self::AntipodeSquare => "order: series order; r-max: generator level for the Hopf axiom",
            Self::P28Symbol => "r-max: largest r for Z^(r); order: bound on r+s for generator symbols",
            Self::L3 => "order: bound on r+s",
            Self::QIdentities => "legs: largest symmetrizer size; seed: supertrace samples",
            Self::FusionCommutation => "legs: number of fused legs; order: series order",
            Self::PbwConfluence => "order: filt1 bound; r-max: random words; s-max: schedules per word; seed",
            Self::PbwRank => "order: filt1 bound; points: evaluation points, `;` separates summands of a direct sum",
            Self::HopfAxioms => "r-max: generator level",
            Self::MorphismSuite => "order: bound on r+s for relation images; r-max: generator level for commutation",
            Self::Representations => "legs: largest number of evaluation legs; r-max: generator level; order: bound on r+s; points",
        }
    }

    /// `None` when the suite applies to `gl(M|N)`, else the reason it does not.
    fn domain_reason(&self, d: SuperDims) -> Option<String> {
        let (m, n) = (d.m as usize, d.n as usize);
        match self {
            Self::QIdentities | Self::L3 if m == 0 || n == 0 => Some(format!("{} needs M, N >= 1", self.name())),
            Self::AzRelation if m != 0 => Some("the C(u) series is defined for M = 0".into()),
            _ => None,
        }
    }

    fn execute(&self, alg: &Arc<Yangian<Q>>, b: &Bounds) -> Result<CheckReport, VerifyError> {
        let d = alg.dims();
        let order = b.order.unwrap_or(0);
        let r_max = b.r_max.unwrap_or(0);
        let s_max = b.s_max.unwrap_or(0);
        let points = match &b.points {
            Some(p) => parse_point_sets(p).map_err(VerifyError::Usage)?,
            None => Vec::new(),
        };
        let mut all = CheckReport::new(String::new());
        let mut scopes = Vec::new();
        let mut push = |r: CheckReport| {
            scopes.push(r.scope.clone());
            all.absorb(r);
        };
        match self {
            Self::YangBaxter => {
                push(tc::yang_baxter_grid(d, &points.concat())?);
                push(tc::r_matrix_identities::<Q>(d, order)?);
            }
            Self::DefiningRelations => {
                push(mc::relation_closure(alg, order)?);
                push(mc::gl_embedding(alg)?);
            }
            Self::ZCentral => {
                let data = RttData::new(alg, order.max(r_max))?;
                push(mc::inverse_identity(&data)?);
                push(mc::z_coherence(&data)?);
                let z = data.z_series()?.truncate(r_max)?;
                push(mc::z_centrality(&z, s_max)?);
            }
            Self::BerezinianTheorem => {
                let data = RttData::new(alg, order)?;
                let z = data.z_series()?;
                push(mc::berezinian_theorem(&data, &z)?);
                if d.n == 0 {
                    let mut rep = CheckReport::new(format!("B(u) against the row-expanded quantum determinant, through u^-{order}"));
                    let diff = data.berezinian()?.sub(&quantum_determinant_by_rows(alg, order)?)?;
                    for (r, c) in diff.coeffs().iter().enumerate() {
                        rep.record(c.is_zero(), || format!("B(u) - qdet T(u), coefficient of u^-{r}"), || c.to_string());
                    }
                    push(rep);
                }
            }
            Self::AntipodeSquare => {
                let data = RttData::new(alg, order)?;
                let z = data.z_series()?;
                push(mc::antipode_square(&data, &z)?);
                push(mc::hopf_antipode_axiom(alg, r_max)?);
            }
            Self::Grouplike => {
                let data = RttData::new(alg, order)?;
                let z = data.z_series()?;
                push(mc::grouplike("Z", &z)?);
                push(mc::grouplike("B", &data.berezinian()?)?);
                push(mc::z_symmetries(&data, &z)?);
            }
            Self::P28Symbol => {
                let z = RttData::new(alg, r_max)?.z_series()?;
                push(mc::z_symbols(&z, r_max)?);
                push(mc::generator_symbols(alg, order)?);
            }
            Self::L3 => {
                let data = RttData::new(alg, order.saturating_sub(1).max(1))?;
                push(mc::l3_commutation(&data, order)?);
            }
            Self::QIdentities => {
                push(tc::q_identity_suite::<Q>(d)?);
                push(tc::symmetrizer_agreement::<Q>(d, b.legs.unwrap_or(4))?);
                push(tc::supertrace_cyclicity::<Q>(d, 100, b.seed.unwrap_or(1))?);
            }
            Self::FusionCommutation => {
                push(tc::fusion_commutation(alg, b.legs.unwrap_or(2), order)?);
                push(tc::qtt_relation(alg, order + 1)?);
                push(tc::mixed_r_tilde_relation(alg, order + 1)?);
            }
            Self::PbwConfluence => push(pbw_confluence(alg, r_max, s_max, order as u32, b.seed.unwrap_or(5))),
            Self::PbwRank => push(tc::pbw_rank(alg, &points, order as u32)?),
            Self::HopfAxioms => {
                push(mc::hopf_counit_coassociativity(alg, r_max, r_max)?);
                push(mc::hopf_antipode_axiom(alg, r_max)?);
            }
            Self::MorphismSuite => {
                for kind in MorphismKind::ALL {
                    let table = MorphismTable::build(kind, alg, order + 1)?;
                    push(mc::relation_preservation(alg, Some(&table), order)?);
                }
                push(mc::morphism_commutation(alg, r_max)?);
            }
            Self::AzRelation => {
                let data = RttData::new(alg, order)?;
                let z = data.z_series()?;
                push(mc::az_relation(&data, &z)?);
                let even = Yangian::<Q>::new(d.n as usize, 0)?;
                push(mc::c_to_reflected_d(&data, &RttData::new(&even, order)?)?);
            }
            Self::Representations => {
                let zs = points.concat();
                let legs = b.legs.unwrap_or(3);
                if zs.len() < legs.max(2) {
                    return Err(VerifyError::Usage(format!("representations needs at least {} points", legs.max(2))));
                }
                for k in 1..=legs {
                    push(tc::representation_routes(alg, &zs[..k], r_max)?);
                }
                for z in &zs {
                    push(tc::relation_images(alg, std::slice::from_ref(z), order)?);
                }
                push(tc::rtt_image::<Q>(d, &zs[..2], 10, b.seed.unwrap_or(3))?);
            }
        }
        Ok(all.with_scope(scopes.join("; ")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Self::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|x| x.name()).collect();
            VerifyError::Usage(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Runs one suite. Guard and domain violations give a skipped report;
/// failures of the computation itself give an error report.
pub fn run_suite(suite: Suite, params: &Params, guards: &Guards) -> Report {
    let start = Instant::now();
    let resolved = Params::with(params.m, params.n, params.bounds.or(&suite.defaults()));
    let elapsed = |s: Instant| s.elapsed().as_millis() as u64;
    let finish =
        |status, reason: String| Report::without_check(suite.name(), suite.anchor(), resolved.clone(), status, reason, elapsed(start));
    let size = params.m + params.n;
    let limit = if suite.is_tensor() { guards.tensor_max } else { guards.abstract_max };
    if size > limit {
        return finish(Status::Skipped, format!("size guard: M + N = {size} exceeds {limit}"));
    }
    let alg = match Yangian::<Q>::new(params.m, params.n) {
        Ok(a) => a,
        Err(e) => return finish(Status::Skipped, e.to_string()),
    };
    if let Some(reason) = suite.domain_reason(alg.dims()) {
        return finish(Status::Skipped, reason);
    }
    match suite.execute(&alg, &resolved.bounds) {
        Ok(check) => Report::from_check(suite.name(), suite.anchor(), resolved, check, elapsed(start)),
        Err(VerifyError::Core(Error::SizeGuard(msg))) => finish(Status::Skipped, format!("size guard: {msg}")),
        Err(e) => finish(Status::Error, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert!(!s.anchor().is_empty());
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn guard_skips() {
        let r = run_suite(Suite::QIdentities, &Params::new(2, 2), &Guards::default());
        assert_eq!(r.status, Status::Skipped);
        assert!(r.reason.unwrap().contains("size guard"));
        let r = run_suite(Suite::AzRelation, &Params::new(1, 1), &Guards::default());
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn defaults_are_recorded() {
        let r =
            run_suite(Suite::BerezinianTheorem, &Params::with(1, 1, Bounds { order: Some(3), ..Bounds::default() }), &Guards::default());
        assert_eq!(r.status, Status::Pass, "{}", r.summary());
        assert_eq!(r.params.bounds.order, Some(3));
        let r = run_suite(Suite::Grouplike, &Params::with(1, 0, Bounds { order: Some(2), ..Bounds::default() }), &Guards::default());
        assert_eq!(r.status, Status::Pass, "{}", r.summary());
    }

    #[test]
    fn bad_points_are_errors() {
        let p = Params::with(1, 1, Bounds { points: Some("0,x".into()), ..Bounds::default() });
        assert_eq!(run_suite(Suite::PbwRank, &p, &Guards::default()).status, Status::Error);
    }
}
