//! Bounded verifications of the operator identities, the evaluation
//! representations and the mixed relations with Yangian coefficients.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::eval::{image_kernel_element, image_rank, multi_eval_via_coproduct, Representation};
use super::mixed::{constant_times_bi, MixedOperator};
use super::named::{perm_p, projectors_ij, q_at, q_op, symmetrizer, EndoSeries, SymRoute};
use super::operator::Operator;
use crate::algebra::{Element, SuperDims, Yangian};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::maps::checks::defining_relation_raw;
use crate::maps::SeriesMatrix;
use crate::scalar::Scalar;
use crate::series::SeriesTail;

fn record_eq<S: Scalar>(report: &mut CheckReport, lhs: &Operator<S>, rhs: &Operator<S>, location: impl FnOnce() -> String) -> Result<()> {
    let diff = lhs.sub(rhs)?;
    report.record(diff.is_zero(), location, || first_entry(&diff));
    Ok(())
}

/// The nonzero difference in the operator dump format.
fn first_entry<S: Scalar>(op: &Operator<S>) -> String {
    op.dump()
}

fn q<S: Scalar>(k: i64) -> S {
    S::from_i64(k)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `I` or `J` on each of the listed legs, multiplied together.
fn projector_string<S: Scalar>(dims: SuperDims, even: &[usize], odd: &[usize], n: usize) -> Result<Operator<S>> {
    let (i, j) = projectors_ij::<S>(dims);
    let mut acc = Operator::identity(dims, n)?;
    for &h in even {
        acc = acc.mul(&i.embed(&[h], n)?)?;
    }
    for &h in odd {
        acc = acc.mul(&j.embed(&[h], n)?)?;
    }
    Ok(acc)
}

/// A 1-based consecutive range of legs `a..=b`, empty when `a > b`.
fn legs(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `X` (on `k` legs) embedded at the consecutive legs `a..a+k-1`; the
/// identity when `k = 0`.
fn embed_block<S: Scalar>(dims: SuperDims, x: Option<&Operator<S>>, a: usize, n: usize) -> Result<Operator<S>> {
    match x {
        None => Operator::identity(dims, n),
        Some(x) => x.embed(&legs(a, a + x.legs() - 1), n),
    }
}

fn symmetrizer_or_none<S: Scalar>(dims: SuperDims, k: usize, antisym: bool) -> Result<Option<Operator<S>>> {
    if k == 0 {
        Ok(None)
    } else {
        symmetrizer(dims, k, antisym, SymRoute::Recursion).map(Some)
    }
}

/// The finite operator identities involving `P`, `Q`, `I`, `J`, `R` and `R̃`.
/// Requires `M, N >= 1` and `M + N <= 3`.
pub fn q_identity_suite<S: Scalar>(dims: SuperDims) -> Result<CheckReport> {
    let (m, n) = (dims.m as usize, dims.n as usize);
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("the Q-identity suite needs M, N >= 1, got {dims}")));
    }
    if m + n > 3 {
        return Err(Error::SizeGuard(format!("the Q-identity suite is limited to M + N <= 3, got {dims}")));
    }
    let big = m + n + 2;
    let mut report = CheckReport::new(format!("gl({dims}), identities in {big} legs; QR at u = 1,2,3,1/2,-5/3"));
    let p = perm_p::<S>(dims);
    let qq = q_op::<S>(dims);
    let one2 = Operator::identity(dims, 2)?;
    let (i, j) = projectors_ij::<S>(dims);
    let ij = i.tensor(&j)?;
    let ji = j.tensor(&i)?;

    record_eq(&mut report, &p.mul(&p)?, &one2, || "P^2 = 1".into())?;
    record_eq(&mut report, &p.tau_leg(2)?, &qq, || "(id⊗τ)(P) = Q".into())?;
    record_eq(&mut report, &p.tau_leg(1)?.tau_leg(2)?, &p, || "(τ⊗τ)(P) = P".into())?;
    record_eq(&mut report, &qq.mul(&qq)?, &qq.scale(&q(m as i64 - n as i64)), || "Q^2 = (M-N)Q".into())?;
    report.record(qq.rank() == 1, || "rank Q = 1".into(), || format!("rank {}", qq.rank()));

    // (IJQ) and its mirror
    record_eq(&mut report, &ij.mul(&qq)?, &Operator::zero(dims, 2)?, || "(I⊗J)Q = 0".into())?;
    record_eq(&mut report, &qq.mul(&ij)?, &Operator::zero(dims, 2)?, || "Q(I⊗J) = 0".into())?;
    record_eq(&mut report, &ji.mul(&qq)?, &Operator::zero(dims, 2)?, || "(J⊗I)Q = 0".into())?;
    record_eq(&mut report, &qq.mul(&ji)?, &Operator::zero(dims, 2)?, || "Q(J⊗I) = 0".into())?;
    // (IJ)
    let one1 = Operator::identity(dims, 1)?;
    let ii_jj = i.tensor(&i)?.add(&j.tensor(&j)?)?;
    let i1_1j = i.tensor(&one1)?.add(&one1.tensor(&j)?)?;
    record_eq(&mut report, &qq.mul(&ii_jj)?, &qq, || "Q(I⊗I + J⊗J) = Q".into())?;
    record_eq(&mut report, &qq.mul(&i1_1j)?, &qq, || "Q(I⊗1 + 1⊗J) = Q".into())?;

    // (QQP) and (QQQ)
    let q_1_last = q_at::<S>(dims, 1, big, big)?;
    let lhs = q_1_last.mul(&q_at(dims, m + 1, big, big)?)?;
    let rhs = q_1_last.mul(&p.embed(&[1, m + 1], big)?)?;
    record_eq(&mut report, &lhs, &rhs, || format!("Q_(1,{big}) Q_({},{big}) = Q_(1,{big}) P_(1,{})", m + 1, m + 1))?;
    let lhs = q_1_last.mul(&q_at(dims, 1, m + 2, big)?)?;
    let rhs = q_1_last.mul(&p.embed(&[m + 2, big], big)?)?;
    record_eq(&mut report, &lhs, &rhs, || format!("Q_(1,{big}) Q_(1,{}) = Q_(1,{big}) P_({},{big})", m + 2, m + 2))?;

    // (QR): Q_23 R̃_13(u+M-N) R_12(u) = (1 - u^-2) Q_23
    let r = EndoSeries::<S>::r_matrix(dims);
    let rt = EndoSeries::<S>::r_tilde(dims);
    let q23 = q_at::<S>(dims, 2, 3, 3)?;
    let shift = q::<S>(m as i64 - n as i64);
    let samples: [S; 5] = [q(1), q(2), q(3), S::one() / q(2), q::<S>(-5) / q(3)];
    for u in &samples {
        let lhs = Operator::product([&q23, &rt.embed(&[1, 3], 3)?.eval(&(u.clone() + shift.clone()))?, &r.embed(&[1, 2], 3)?.eval(u)?])?;
        let factor = S::one() - S::one() / (u.clone() * u.clone());
        record_eq(&mut report, &lhs, &q23.scale(&factor), || format!("QR at u = {u}"))?;
    }

    // Prop L2
    let inv_m = S::one() / q(m as i64);
    let inv_n = S::one() / q(n as i64);
    let id = Operator::identity(dims, big)?;
    let left_factor = id.add_scaled(&q_at(dims, m + 1, big, big)?, &-inv_m.clone())?;
    let right_factor = id.add_scaled(&q_at(dims, 1, m + 2, big)?, &inv_n.clone())?;
    let i_m1_plus_j_m2 = i.embed(&[m + 1], big)?.add(&j.embed(&[m + 2], big)?)?;
    let lhs = Operator::product([
        &q_1_last,
        &left_factor,
        &right_factor,
        &projector_string(dims, &legs(1, m), &[], big)?,
        &i_m1_plus_j_m2,
        &projector_string(dims, &[], &legs(m + 3, big), big)?,
    ])?;
    let tail = Operator::product([&p.embed(&[1, m + 1], big)?, &j.embed(&[big], big)?])?
        .scale(&-inv_m.clone())
        .add(&Operator::product([&p.embed(&[m + 2, big], big)?, &i.embed(&[1], big)?])?.scale(&inv_n.clone()))?;
    let rhs = Operator::product([&projector_string(dims, &legs(2, m + 1), &legs(m + 2, m + n + 1), big)?, &q_1_last, &tail])?;
    record_eq(&mut report, &lhs, &rhs, || "two-projector identity with Q_(1,M+N+2)".into())?;

    // Prop L1
    let g = symmetrizer_or_none::<S>(dims, m, true)?;
    let h = symmetrizer_or_none::<S>(dims, n, false)?;
    let lhs = Operator::product([
        &projector_string(dims, &legs(2, m + 1), &legs(m + 2, m + n + 1), big)?,
        &embed_block(dims, g.as_ref(), 2, big)?,
        &embed_block(dims, h.as_ref(), m + 2, big)?,
        &q_1_last,
        &left_factor,
        &right_factor,
        &embed_block(dims, g.as_ref(), 1, big)?,
        &embed_block(dims, h.as_ref(), m + 3, big)?,
    ])?;
    let rhs = Operator::product([
        &p.embed(&[1, m + 1], big)?,
        &p.embed(&[m + 2, big], big)?,
        &projector_string(dims, &legs(1, m), &legs(m + 3, big), big)?,
        &embed_block(dims, g.as_ref(), 1, big)?,
        &embed_block(dims, h.as_ref(), m + 3, big)?,
        &q_at(dims, m + 1, m + 2, big)?,
    ])?
    .scale(&q(factorial(m - 1) * factorial(n - 1)));
    record_eq(&mut report, &lhs, &rhs, || "symmetrizer identity with Q_(1,M+N+2)".into())?;
    Ok(report)
}

/// `R`-matrix identities: `R(-u)R(u) = 1 - u^-2` as series to `order`,
/// `(τ⊗τ)R = R`, and `((id⊗τ)R(u))^{-1} = R̃(u)` both as series and at points.
pub fn r_matrix_identities<S: Scalar>(dims: SuperDims, order: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({dims}), series through u^-{order}"));
    let r = EndoSeries::<S>::r_matrix(dims);
    let rt = EndoSeries::<S>::r_tilde(dims);
    let ru = r.expand(order);
    let prod = ru.negate_argument().mul(&ru)?;
    let one = Operator::identity(dims, 2)?;
    for k in 0..=order {
        let want = match k {
            0 => one.clone(),
            2 => one.neg(),
            _ => Operator::zero(dims, 2)?,
        };
        record_eq(&mut report, prod.coeff(k), &want, || format!("R(-u)R(u), coefficient of u^-{k}"))?;
    }
    let tt = r.tau_leg(1)?.tau_leg(2)?;
    report.record(tt == r, || "(τ⊗τ)R = R".into(), || "differs".into());
    let tr = r.tau_leg(2)?;
    let inv_prod = tr.expand(order).mul(&rt.expand(order))?;
    let unit: SeriesTail<Operator<S>> = SeriesTail::constant(one.clone(), order);
    for k in 0..=order {
        record_eq(&mut report, inv_prod.coeff(k), unit.coeff(k), || format!("(id⊗τ)R(u)·R̃(u), coefficient of u^-{k}"))?;
    }
    for u in [q::<S>(3), q(-2), S::one() / q(3)] {
        if u == *rt.pole() || u.is_zero() {
            continue;
        }
        let lhs = tr.eval(&u)?.mul(&rt.eval(&u)?)?;
        record_eq(&mut report, &lhs, &one, || format!("(id⊗τ)R(u)·R̃(u) at u = {u}"))?;
    }
    Ok(report)
}

/// The Yang–Baxter equation, certified on a grid. Multiplying through by
/// `(u-v)(u-w)(v-w)` gives `(u-v-P12)(u-w-P13)(v-w-P23) = (v-w-P23)(u-w-P13)(u-v-P12)`,
/// polynomial of degree 2 in each variable, so three distinct values per
/// variable certify it; the grid has `grid.len()` per variable.
pub fn yang_baxter_grid<S: Scalar>(dims: SuperDims, grid: &[S]) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!(
        "gl({dims}), cleared form of degree 2 per variable on a {0}x{0}x{0} grid {1:?}",
        grid.len(),
        grid.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    ));
    if grid.len() < 3 {
        return Err(Error::InvalidArgument("the degree-2 certificate needs at least 3 grid values".into()));
    }
    for (a, x) in grid.iter().enumerate() {
        if grid[..a].contains(x) {
            return Err(Error::InvalidArgument(format!("grid value {x} repeats")));
        }
    }
    let p12 = perm_p::<S>(dims).embed(&[1, 2], 3)?;
    let p13 = perm_p::<S>(dims).embed(&[1, 3], 3)?;
    let p23 = perm_p::<S>(dims).embed(&[2, 3], 3)?;
    let one = Operator::identity(dims, 3)?;
    let lin = |c: S, p: &Operator<S>| one.scale(&c).sub(p);
    for u in grid {
        for v in grid {
            for w in grid {
                let a = lin(u.clone() - v.clone(), &p12)?;
                let b = lin(u.clone() - w.clone(), &p13)?;
                let c = lin(v.clone() - w.clone(), &p23)?;
                let lhs = Operator::product([&a, &b, &c])?;
                let rhs = Operator::product([&c, &b, &a])?;
                record_eq(&mut report, &lhs, &rhs, || format!("(u,v,w) = ({u},{v},{w})"))?;
            }
        }
    }
    Ok(report)
}

/// The three constructions of `G^(n)` and `H^(n)` agree, `G² = n!G`,
/// `H² = n!H`, and `G^(M+1)` vanishes on the even subspace.
pub fn symmetrizer_agreement<S: Scalar>(dims: SuperDims, n_max: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({dims}), n <= {n_max}, routes direct/recursion/fusion"));
    for n in 1..=n_max {
        for antisym in [true, false] {
            let name = if antisym { "G" } else { "H" };
            let direct = symmetrizer::<S>(dims, n, antisym, SymRoute::Direct)?;
            for route in [SymRoute::Recursion, SymRoute::Fusion] {
                let other = symmetrizer::<S>(dims, n, antisym, route)?;
                record_eq(&mut report, &other, &direct, || format!("{name}^({n}) {route} = direct"))?;
            }
            let sq = direct.mul(&direct)?;
            record_eq(&mut report, &sq, &direct.scale(&q(factorial(n))), || format!("{name}^({n}) squared = {n}! {name}^({n})"))?;
        }
    }
    let m = dims.m as usize;
    if m >= 1 && m < n_max {
        let g = symmetrizer::<S>(dims, m + 1, true, SymRoute::Direct)?;
        let even = projector_string::<S>(dims, &legs(1, m + 1), &[], m + 1)?;
        let restricted = Operator::product([&even, &g, &even])?;
        record_eq(&mut report, &restricted, &Operator::zero(dims, m + 1)?, || format!("G^({}) on the even subspace", m + 1))?;
    }
    Ok(report)
}

/// `str(XY) = str(YX)(-1)^{deg X deg Y}` on random homogeneous sparse operators
/// with one or two legs.
pub fn supertrace_cyclicity<S: Scalar>(dims: SuperDims, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({dims}), {samples} random homogeneous pairs, seed {seed}"));
    let mut rng = StdRng::seed_from_u64(seed);
    for s in 0..samples {
        let legs = 1 + s % 2;
        let (px, py) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8));
        let x = random_homogeneous::<S>(dims, legs, px, &mut rng)?;
        let y = random_homogeneous::<S>(dims, legs, py, &mut rng)?;
        let lhs = x.mul(&y)?.supertrace();
        let mut rhs = y.mul(&x)?.supertrace();
        if px * py == 1 {
            rhs = -rhs;
        }
        report.record(lhs == rhs, || format!("sample {s} (legs {legs}, parities {px},{py})"), || format!("{lhs} vs {rhs}"));
    }
    // the full supertrace of P against the direct diagonal sum
    let p = perm_p::<S>(dims);
    let probe = Operator::<S>::identity(dims, 2)?;
    let brute = (0..probe.dim()).fold(S::zero(), |acc, k| {
        let idx = probe.multi(k);
        let v = p.entry(&idx, &idx).expect("in range");
        if probe.basis_parity(k) == 1 {
            acc - v
        } else {
            acc + v
        }
    });
    report.record(
        p.supertrace() == brute,
        || "str(P) by partial traces vs diagonal sum".into(),
        || format!("{} vs {brute}", p.supertrace()),
    );
    let want = q::<S>(dims.m as i64 - dims.n as i64);
    report.record(brute == want, || "str(P) = M - N".into(), || brute.to_string());
    Ok(report)
}

fn random_homogeneous<S: Scalar>(dims: SuperDims, legs: usize, parity: u8, rng: &mut StdRng) -> Result<Operator<S>> {
    let zero = Operator::<S>::zero(dims, legs)?;
    let size = zero.dim();
    let mut entries = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let (r, c) = (rng.gen_range(0..size), rng.gen_range(0..size));
        if (zero.basis_parity(r) + zero.basis_parity(c)) % 2 != parity {
            continue;
        }
        let v = S::from_i64(rng.gen_range(-3..=3)) / S::from_i64(rng.gen_range(1..=3));
        entries.push((zero.multi(r), zero.multi(c), v));
    }
    Operator::from_entries(dims, legs, entries)
}

/// The coproduct route and the R-product route to `ρ_{z_1} ⊗ ⋯ ⊗ ρ_{z_n}`
/// agree on every generator of level `<= r_max`.
pub fn representation_routes<S: Scalar>(alg: &Arc<Yangian<S>>, zs: &[S], r_max: usize) -> Result<CheckReport> {
    let points: Vec<String> = zs.iter().map(|z| z.to_string()).collect();
    let mut report = CheckReport::new(format!("gl({}), z = ({}), generators of level <= {r_max}", alg.dims(), points.join(",")));
    let rep = Representation::r_product(alg.dims(), zs, r_max)?;
    for i in alg.dims().indices() {
        for j in alg.dims().indices() {
            for r in 1..=r_max {
                let x = Element::generator(alg, i, j, r);
                let via_r = rep.apply(&x)?;
                let via_delta = multi_eval_via_coproduct(&x, zs)?;
                record_eq(&mut report, &via_r, &via_delta, || format!("T[{i},{j},{r}]"))?;
            }
        }
    }
    Ok(report)
}

/// Every raw defining relation with `r + s <= total` maps to zero under the
/// representation at the given points.
pub fn relation_images<S: Scalar>(alg: &Arc<Yangian<S>>, zs: &[S], total: usize) -> Result<CheckReport> {
    let points: Vec<String> = zs.iter().map(|z| z.to_string()).collect();
    let d = alg.dims();
    let mut report = CheckReport::new(format!("gl({d}), z = ({}), relations with r+s <= {total}", points.join(",")));
    let rep = Representation::r_product(d, zs, total + 1)?;
    let n = d.size();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    for r in 0..=total {
                        for s in 0..=total - r {
                            let mut acc = Operator::zero(d, zs.len())?;
                            for (w, c) in defining_relation_raw(alg, (i, j, k, l), r, s) {
                                acc = acc.add_scaled(&rep.apply_word(&w)?, &c)?;
                            }
                            report.record(acc.is_zero(), || format!("(i,j,k,l)=({i},{j},{k},{l}), r={r}, s={s}"), || first_entry(&acc));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The matrix relation `R_12(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R_12(u-v)` with
/// `T(u)` replaced by its image `R_{a,3}(u-z_1) ⋯ R_{a,n+2}(u-z_n)`, at
/// `samples` seeded random rational pairs `(u, v)`.
pub fn rtt_image<S: Scalar>(dims: SuperDims, zs: &[S], samples: usize, seed: u64) -> Result<CheckReport> {
    let n = zs.len();
    let total = n + 2;
    let mut report = CheckReport::new(format!("gl({dims}), {n} evaluation legs, {samples} random (u,v), seed {seed}"));
    let r = EndoSeries::<S>::r_matrix(dims);
    let image = |aux: usize, u: &S| -> Result<Operator<S>> {
        let mut acc = Operator::identity(dims, total)?;
        for (h, z) in zs.iter().enumerate() {
            acc = acc.mul(&r.embed(&[aux, h + 3], total)?.eval(&(u.clone() - z.clone()))?)?;
        }
        Ok(acc)
    };
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let u = S::from_i64(rng.gen_range(-20..=20)) / S::from_i64(rng.gen_range(1..=7));
        let v = S::from_i64(rng.gen_range(-20..=20)) / S::from_i64(rng.gen_range(1..=7));
        if u == v || zs.contains(&u) || zs.contains(&v) {
            continue;
        }
        let r12 = r.embed(&[1, 2], total)?.eval(&(u.clone() - v.clone()))?;
        let (t1, t2) = (image(1, &u)?, image(2, &v)?);
        let lhs = Operator::product([&r12, &t1, &t2])?;
        let rhs = Operator::product([&t2, &t1, &r12])?;
        record_eq(&mut report, &lhs, &rhs, || format!("(u,v) = ({u},{v})"))?;
        done += 1;
    }
    Ok(report)
}

/// Point sets whose direct sum of evaluation tensor products separates the
/// normal monomials of `filt1 <= 3` for `gl(1|1)`. Four distinct leg counts
/// are needed because the centre acts by scalars depending on `n`.
pub const SEPARATING_POINT_SETS: [&[i64]; 7] = [&[0, 1, 5], &[2], &[3, 7], &[0, 1, 5, 11], &[-1, 4, 9], &[6, -3], &[8, 13, -4]];

/// Linear independence of the images of all normal monomials with
/// `filt1 <= bound` under the direct sum of the tensor products of
/// evaluation representations at each point set. Passes when the rank
/// equals the number of monomials; the observed rank is always reported.
pub fn pbw_rank<S: Scalar>(alg: &Arc<Yangian<S>>, point_sets: &[Vec<S>], bound: u32) -> Result<CheckReport> {
    let level = bound.max(1) as usize;
    let reps = point_sets.iter().map(|zs| Representation::r_product(alg.dims(), zs, level)).collect::<Result<Vec<_>>>()?;
    let (rank, count) = image_rank(alg, &reps, bound)?;
    let sets: Vec<String> =
        point_sets.iter().map(|zs| format!("({})", zs.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(","))).collect();
    let mut report = CheckReport::new(format!(
        "gl({}), normal monomials of filt1 <= {bound}, z-sets {}; observed rank {rank} of {count}",
        alg.dims(),
        sets.join(" ⊕ ")
    ));
    if rank == count {
        report.record(true, String::new, String::new);
    } else {
        let kernel = image_kernel_element(alg, &reps, bound)?.expect("rank deficit implies a dependency");
        report.record(false, || format!("rank {rank} < {count}: nonzero element with zero image"), || kernel.to_string());
    }
    Ok(report)
}

/// `(G⊗1) T_1(u) ⋯ T_n(u-n+1) = T_n(u-n+1) ⋯ T_1(u) (G⊗1)` and the `H`
/// version with the legs `(τ⊗id)(T(u+h-1)^{-1})`, through `u^-order`.
pub fn fusion_commutation<S: Scalar>(alg: &Arc<Yangian<S>>, n: usize, order: usize) -> Result<CheckReport> {
    let d = alg.dims();
    if n == 0 || n > 3 || d.size() > 3 {
        return Err(Error::SizeGuard(format!("fusion commutation is limited to 1 <= n <= 3 and M + N <= 3, got n = {n}, gl({d})")));
    }
    let mut report = CheckReport::new(format!("gl({d}), n = {n}, through u^-{order}"));
    let t = SeriesMatrix::t_matrix(alg, order);
    let tinv = t.invert()?;
    for antisym in [true, false] {
        let sym = symmetrizer::<S>(d, n, antisym, SymRoute::Direct)?;
        let sym = MixedOperator::constant(alg, &sym, order)?;
        let mut factors = Vec::with_capacity(n);
        for h in 1..=n {
            let f = if antisym {
                MixedOperator::t_on_leg(&t, h, n, -(h as i64 - 1))?
            } else {
                MixedOperator::tau_inverse_on_leg(&tinv, h, n, h as i64 - 1)?
            };
            factors.push(f);
        }
        let forward = MixedOperator::product(factors.iter())?;
        let backward = MixedOperator::product(factors.iter().rev())?;
        let diff = sym.mul(&forward)?.sub(&backward.mul(&sym)?)?;
        let name = if antisym { "G" } else { "H" };
        record_mixed_zero(&mut report, &diff, &format!("{name}-fusion"));
    }
    Ok(report)
}

fn record_mixed_zero<S: Scalar>(report: &mut CheckReport, x: &MixedOperator<S>, label: &str) {
    match x.first_nonzero() {
        None => report.record(true, String::new, String::new),
        Some((r, c, k, v)) => report.record(false, || format!("{label}, basis entry ({r},{c}), coefficient of u^-{k}"), || v),
    }
}

/// `(Q⊗1) TS_2(u) T_1(u) = Q⊗1`, where `TS(u) = (τ⊗id)(T(u)^{-1})`.
pub fn qtt_relation<S: Scalar>(alg: &Arc<Yangian<S>>, order: usize) -> Result<CheckReport> {
    let d = alg.dims();
    let mut report = CheckReport::new(format!("gl({d}), through u^-{order}"));
    let t = SeriesMatrix::t_matrix(alg, order);
    let tinv = t.invert()?;
    let qm = MixedOperator::constant(alg, &q_op(d), order)?;
    let ts2 = MixedOperator::tau_inverse_on_leg(&tinv, 2, 2, 0)?;
    let t1 = MixedOperator::t_on_leg(&t, 1, 2, 0)?;
    let diff = MixedOperator::product([&qm, &ts2, &t1])?.sub(&qm)?;
    record_mixed_zero(&mut report, &diff, "Q TS_2 T_1 - Q");
    Ok(report)
}

/// `(R̃(u-v)⊗1) T_1(u) TS_2(v) = TS_2(v) T_1(u) (R̃(u-v)⊗1)`, cleared of the
/// denominator: `(u-v-M+N)(X - Y) + QX - YQ = 0` with `X = T_1(u)TS_2(v)`
/// and `Y = TS_2(v)T_1(u)`, through `u^-(order-1) v^-(order-1)`.
pub fn mixed_r_tilde_relation<S: Scalar>(alg: &Arc<Yangian<S>>, order: usize) -> Result<CheckReport> {
    let d = alg.dims();
    let mut report = CheckReport::new(format!("gl({d}), coefficients u^-r v^-s with r, s < {order}"));
    let t = SeriesMatrix::t_matrix(alg, order);
    let tinv = t.invert()?;
    let t1 = MixedOperator::t_on_leg(&t, 1, 2, 0)?;
    let ts2 = MixedOperator::tau_inverse_on_leg(&tinv, 2, 2, 0)?;
    let x = t1.outer_product(&ts2, false)?;
    let y = ts2.outer_product(&t1, true)?;
    let qx = constant_times_bi(&q_op(d), &x, true)?;
    let yq = constant_times_bi(&q_op(d), &y, false)?;
    let c = d.m as i64 - d.n as i64;
    let zero = Element::zero(alg, 1);
    let mut keys: Vec<(usize, usize)> = x.keys().chain(y.keys()).chain(qx.keys()).chain(yq.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    for key in keys {
        let get = |m: &std::collections::BTreeMap<(usize, usize), crate::series::BiSeriesTail<Element<S>>>| {
            m.get(&key).cloned().unwrap_or_else(|| crate::series::BiSeriesTail::from_fn(order, order, |_, _| zero.clone()))
        };
        let lin = get(&x).sub(&get(&y))?.mul_linear(c)?;
        let rest = get(&qx).sub(&get(&yq))?;
        for r in 0..order {
            for s in 0..order {
                let v = lin.coeff(r, s).add(rest.coeff(r, s))?;
                report.record(v.is_zero(), || format!("basis entry {key:?}, coefficient of u^-{r} v^-{s}"), || v.to_string());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::eval::multi_eval_rep;
    use super::*;
    use num_rational::BigRational as Q;

    fn d(m: usize, n: usize) -> SuperDims {
        SuperDims::new(m, n).unwrap()
    }

    #[test]
    fn q_identities_for_gl_1_1() {
        let rep = q_identity_suite::<Q>(d(1, 1)).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn q_identity_guard() {
        assert!(matches!(q_identity_suite::<Q>(d(2, 2)), Err(Error::SizeGuard(_))));
        assert!(q_identity_suite::<Q>(d(2, 0)).is_err());
    }

    #[test]
    fn r_identities() {
        for (m, n) in [(1, 0), (1, 1), (2, 1)] {
            let rep = r_matrix_identities::<Q>(d(m, n), 4).unwrap();
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn yang_baxter_small() {
        let grid: Vec<Q> = [0, 1, 3].iter().map(|&k| Q::from_integer(k.into())).collect();
        assert!(yang_baxter_grid(d(1, 1), &grid).unwrap().passed);
    }

    #[test]
    fn a_broken_permutation_fails_yang_baxter() {
        // the same grid test applied to the ungraded flip on C^{1|1} must fail
        let dims = d(1, 1);
        let flip = Operator::<Q>::from_entries(
            dims,
            2,
            (1..=2).flat_map(|i| (1..=2).map(move |j| (vec![j, i], vec![i, j], Q::from_integer(1.into())))),
        )
        .unwrap();
        assert_ne!(flip, perm_p(dims));
        let (f12, f13, f23) = (flip.embed(&[1, 2], 3).unwrap(), flip.embed(&[1, 3], 3).unwrap(), flip.embed(&[2, 3], 3).unwrap());
        let one = Operator::<Q>::identity(dims, 3).unwrap();
        let lin = |c: i64, p: &Operator<Q>| one.scale(&Q::from_integer(c.into())).sub(p).unwrap();
        let (a, b, c) = (lin(1, &f12), lin(3, &f13), lin(2, &f23));
        let lhs = Operator::product([&a, &b, &c]).unwrap();
        let rhs = Operator::product([&c, &b, &a]).unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn symmetrizers_small() {
        let rep = symmetrizer_agreement::<Q>(d(1, 1), 3).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn cyclicity_small() {
        let rep = supertrace_cyclicity::<Q>(d(1, 1), 20, 7).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn fusion_gl1_order_2() {
        let y = Yangian::<Q>::new(1, 0).unwrap();
        let rep = fusion_commutation(&y, 2, 2).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn qtt_gl_1_1() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        assert!(qtt_relation(&y, 3).unwrap().passed);
    }

    #[test]
    fn a_single_tensor_product_sees_the_centre_as_scalars() {
        // T11^(1) - T22^(1) is primitive and maps to -n times the identity
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let zs = vec![vec![Q::from_integer(0.into()), Q::from_integer(1.into())]];
        let rep = pbw_rank(&y, &zs, 1).unwrap();
        assert!(!rep.passed);
        assert!(rep.scope.contains("observed rank 4 of 5"), "{rep}");
        // the reported element is nonzero and its image vanishes
        let witness = Element::parse(&y, &rep.counterexample.unwrap().value).unwrap();
        assert!(!witness.is_zero());
        assert!(multi_eval_rep(&witness, &zs[0]).unwrap().is_zero());
    }

    #[test]
    fn direct_sum_separates_low_filtration() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let sets: Vec<Vec<Q>> = SEPARATING_POINT_SETS.iter().map(|v| v.iter().map(|&k| Q::from_integer(k.into())).collect()).collect();
        let rep = pbw_rank(&y, &sets, 3).unwrap();
        assert!(rep.passed, "{rep}");
        let rep = pbw_rank(&y, &sets[..1], 3).unwrap();
        assert!(rep.scope.contains("observed rank 26 of 49"), "{rep}");
    }

    #[test]
    fn direct_and_r_routes_give_multi_eval() {
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let zs: Vec<Q> = [0, 1].iter().map(|&k| Q::from_integer(k.into())).collect();
        let x = Element::parse(&y, "T[1,2,2]*T[2,1,1] - T[2,2,3]").unwrap();
        assert_eq!(multi_eval_rep(&x, &zs).unwrap(), multi_eval_via_coproduct(&x, &zs).unwrap());
    }
}
