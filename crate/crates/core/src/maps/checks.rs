//! Bounded verifications of the identities satisfied by the Yangian, its
//! maps and its distinguished series. Each returns a [`CheckReport`]; a
//! failed identity is a report outcome, never an `Err`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::central::{reflect_one_minus_u, to_even_yangian, RttData};
use super::hopf::{coproduct, coproduct_on_leg, counit_on_leg, map_leg, multiply_legs};
use super::matrix::{t_series, unit_series, ElementSeries, SeriesMatrix};
use super::morphism::{MorphismKind, MorphismTable};
use crate::algebra::{Element, GenIndex, Monomial, Word, Yangian};
use crate::check::CheckReport;
use crate::error::Result;
use crate::linalg::rank;
use crate::scalar::{Ring, Scalar};
use crate::series::BiSeriesTail;

fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

fn quadruples(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).flat_map(move |j| (1..=n).flat_map(move |k| (1..=n).map(move |l| (i, j, k, l)))))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)))
}

fn record_series_eq<S: Scalar>(report: &mut CheckReport, label: &str, lhs: &ElementSeries<S>, rhs: &ElementSeries<S>) -> Result<()> {
    let diff = lhs.sub(rhs)?;
    for (r, c) in diff.coeffs().iter().enumerate() {
        report.record(c.is_zero(), || format!("{label}, coefficient of u^-{r}"), || c.to_string());
    }
    Ok(())
}

fn record_zero<S: Scalar>(report: &mut CheckReport, x: &Element<S>, location: impl FnOnce() -> String) {
    report.record(x.is_zero(), location, || x.to_string());
}

/// `T_ab^(s) T_cd^(t)` as a raw word with `T^(0) = δ`.
fn pair_word(a: usize, b: usize, s: usize, c: usize, d: usize, t: usize) -> Option<Word> {
    let mut w = Word::new();
    for (p, q, lvl) in [(a, b, s), (c, d, t)] {
        if lvl == 0 {
            if p != q {
                return None;
            }
        } else {
            w.push(GenIndex::new(p, q, lvl));
        }
    }
    Some(w)
}

/// The coefficient of `u^-r v^-s` in
/// `(u-v)[T_ij(u), T_kl(v)](-1)^{īk̄+īl̄+k̄l̄} - T_kj(u)T_il(v) + T_kj(v)T_il(u)`
/// as a raw combination of words in the free algebra.
pub fn defining_relation_raw<S: Scalar>(
    alg: &Yangian<S>,
    (i, j, k, l): (usize, usize, usize, usize),
    r: usize,
    s: usize,
) -> Vec<(Word, S)> {
    let d = alg.dims();
    let (pi, pk, pl) = (d.parity(i) as u32, d.parity(k) as u32, d.parity(l) as u32);
    let sigma: S = sign((pi * pk + pi * pl + pk * pl) % 2 == 1);
    let p = (d.parity(i) + d.parity(j)) as u32;
    let q = (d.parity(k) + d.parity(l)) as u32;
    let swap: S = sign(p * q % 2 == 1);
    let mut out = Vec::new();
    let mut push = |w: Option<Word>, c: S| {
        if let Some(w) = w {
            out.push((w, c));
        }
    };
    // C_{a,b} = T_ij^(a) T_kl^(b) - (±) T_kl^(b) T_ij^(a)
    for (a, b, c) in [(r + 1, s, sigma.clone()), (r, s + 1, -sigma.clone())] {
        push(pair_word(i, j, a, k, l, b), c.clone());
        push(pair_word(k, l, b, i, j, a), -(c * swap.clone()));
    }
    push(pair_word(k, j, r, i, l, s), -S::one());
    push(pair_word(k, j, s, i, l, r), S::one());
    out
}

/// The defining relations expanded as two-variable series and normal-ordered,
/// for every index quadruple and every coefficient with `r + s <= total`.
pub fn relation_closure<S: Scalar>(alg: &Arc<Yangian<S>>, total: usize) -> Result<CheckReport> {
    let d = alg.dims();
    let n = d.size();
    let top = total + 1;
    let mut report = CheckReport::new(format!("gl({d}), all index quadruples, coefficients u^-r v^-s with r+s <= {total}"));
    let zero = Element::zero(alg, 1);
    for (i, j, k, l) in quadruples(n) {
        let series = |a, b| t_series(alg, a, b, top);
        let (tij, tkl, tkj, til) = (series(i, j), series(k, l), series(k, j), series(i, l));
        let (pi, pk, pl) = (d.parity(i) as u32, d.parity(k) as u32, d.parity(l) as u32);
        let sigma: S = sign((pi * pk + pi * pl + pk * pl) % 2 == 1);
        let swap: S = sign((d.parity(i) + d.parity(j)) as u32 * (d.parity(k) + d.parity(l)) as u32 % 2 == 1);
        // [T_ij(u), T_kl(v)] coefficientwise, only where needed
        let bracket = BiSeriesTail::from_fn(top, top, |r, s| {
            if r + s > top {
                return zero.clone();
            }
            let x = tij.coeff(r).mul(tkl.coeff(s)).expect("same algebra");
            let y = tkl.coeff(s).mul(tij.coeff(r)).expect("same algebra");
            x.sub(&y.scale(&swap)).expect("same algebra")
        });
        let lhs = bracket.mul_linear(0)?.map(|c| c.scale(&sigma));
        let rhs = BiSeriesTail::from_fn(total, total, |r, s| {
            if r + s > total {
                return zero.clone();
            }
            let a = tkj.coeff(r).mul(til.coeff(s)).expect("same algebra");
            let b = tkj.coeff(s).mul(til.coeff(r)).expect("same algebra");
            a.sub(&b).expect("same algebra")
        });
        let diff = lhs.sub(&rhs)?;
        for r in 0..=total {
            for s in 0..=total - r {
                let c = diff.coeff(r, s);
                record_zero(&mut report, c, || format!("(i,j,k,l)=({i},{j},{k},{l}), u^-{r} v^-{s}"));
            }
        }
    }
    Ok(report)
}

/// Substitutes the images of a map into every raw defining relation with
/// `r + s <= total`; a relation-preserving (anti)homomorphism sends each to 0.
/// With `table = None` the identity map is used.
pub fn relation_preservation<S: Scalar>(alg: &Arc<Yangian<S>>, table: Option<&MorphismTable<S>>, total: usize) -> Result<CheckReport> {
    let name = table.map(|t| t.kind().name()).unwrap_or("identity");
    let mut report = CheckReport::new(format!("{name} on gl({}), relations with r+s <= {total}", alg.dims()));
    for quad in quadruples(alg.size()) {
        for r in 0..=total {
            for s in 0..=total - r {
                let mut acc = Element::zero(alg, 1);
                for (w, c) in defining_relation_raw(alg, quad, r, s) {
                    let img = match table {
                        Some(t) => t.apply_word(&w)?,
                        None => Element::from_raw(alg, 1, [(vec![w], S::one())])?,
                    };
                    acc.add_scaled(&img, &c)?;
                }
                record_zero(&mut report, &acc, || format!("{name}, (i,j,k,l)={quad:?}, r={r}, s={s}"));
            }
        }
    }
    Ok(report)
}

/// `T(u) T(u)^{-1} = 1 = T(u)^{-1} T(u)` with the super matrix product.
pub fn inverse_identity<S: Scalar>(data: &RttData<S>) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({}), both products, through u^-{}", data.algebra().dims(), data.order()));
    for (name, prod) in [("T*T^-1", data.t().mul(data.tinv())?), ("T^-1*T", data.tinv().mul(data.t())?)] {
        record_matrix_identity(&mut report, name, &prod);
    }
    Ok(report)
}

fn record_matrix_identity<S: Scalar>(report: &mut CheckReport, name: &str, m: &SeriesMatrix<S>) {
    for (i, j) in pairs(m.size()) {
        for (r, c) in m.entry(i, j).coeffs().iter().enumerate() {
            let ok = if r == 0 && i == j { c.is_one() } else { c.is_zero() };
            report.record(ok, || format!("{name} entry ({i},{j}), u^-{r}"), || c.to_string());
        }
    }
}

/// Both families of sums defining `Z(u)` agree with `δ_ij Z(u)`; `Z^(1) = 0`;
/// every coefficient is even.
pub fn z_coherence<S: Scalar>(data: &RttData<S>) -> Result<CheckReport> {
    let d = data.algebra().dims();
    let mut report = CheckReport::new(format!("gl({d}), all (i,j) for both sums, through u^-{}", data.order()));
    let z = data.z_series_unverified()?;
    let zero = z.map(|c| c.zero_like());
    for (i, j) in pairs(d.size()) {
        let want = if i == j { &z } else { &zero };
        record_series_eq(&mut report, &format!("sum over T(u+M-N) Ť(u) at ({i},{j})"), &data.zeta_v(i, j)?, want)?;
        record_series_eq(&mut report, &format!("sum over Ť(u) T(u+M-N) at ({i},{j})"), &data.zeta_u(i, j)?, want)?;
    }
    if data.order() >= 1 {
        record_zero(&mut report, z.coeff(1), || "Z^(1)".into());
    }
    for (r, c) in z.coeffs().iter().enumerate() {
        report.record(c.is_zero() || c.parity() == Some(0), || format!("parity of Z^({r})"), || c.to_string());
    }
    Ok(report)
}

/// `[Z^(r), T_ij^(s)] = 0` for `2 <= r <= order of z`, `s <= s_max`.
pub fn z_centrality<S: Scalar>(z: &ElementSeries<S>, s_max: usize) -> Result<CheckReport> {
    let alg = z.coeff(0).algebra().clone();
    let mut report = CheckReport::new(format!("gl({}), bounded: Z^(r) for r <= {}, generators of level <= {s_max}", alg.dims(), z.order()));
    for r in 1..=z.order() {
        for (i, j) in pairs(alg.size()) {
            for s in 1..=s_max {
                let br = z.coeff(r).supercommutator(&Element::generator(&alg, i, j, s))?;
                record_zero(&mut report, &br, || format!("[Z^({r}), T[{i},{j},{s}]]"));
            }
        }
    }
    Ok(report)
}

fn apply_series<S: Scalar>(table: &MorphismTable<S>, x: &ElementSeries<S>) -> Result<ElementSeries<S>> {
    let coeffs: Result<Vec<_>> = x.coeffs().iter().map(|c| table.apply(c)).collect();
    ElementSeries::from_coeffs(coeffs?)
}

/// `Z(u) S²(T_ij(u)) = T_ij(u+M-N)` for all `i, j`.
pub fn antipode_square<S: Scalar>(data: &RttData<S>, z: &ElementSeries<S>) -> Result<CheckReport> {
    let alg = data.algebra();
    let d = alg.dims();
    let shift = d.m as i64 - d.n as i64;
    let mut report = CheckReport::new(format!("gl({d}), all (i,j), through u^-{}", data.order()));
    let s = MorphismTable::with_inverse(MorphismKind::AntipodeS, data.tinv())?;
    for (i, j) in pairs(d.size()) {
        let s2 = apply_series(&s, data.tinv().entry(i, j))?;
        let lhs = z.mul(&s2)?;
        record_series_eq(&mut report, &format!("Z(u) S^2(T_{i}{j}(u)) - T_{i}{j}(u+M-N)"), &lhs, &data.t().entry(i, j).shift(shift))?;
    }
    Ok(report)
}

/// `μ(S⊗id)Δ = μ(id⊗S)Δ = ε` on generators of level `<= r_max`.
pub fn hopf_antipode_axiom<S: Scalar>(alg: &Arc<Yangian<S>>, r_max: usize) -> Result<CheckReport> {
    let s = MorphismTable::build(MorphismKind::AntipodeS, alg, r_max)?;
    let mut report = CheckReport::new(format!("gl({}), generators of level <= {r_max}, both sides", alg.dims()));
    for (i, j) in pairs(alg.size()) {
        for r in 1..=r_max {
            let dg = coproduct(&Element::generator(alg, i, j, r))?;
            for leg in 0..2 {
                let x = multiply_legs(&map_leg(&dg, leg, |e| s.apply(e))?)?;
                let side = if leg == 0 { "S⊗id" } else { "id⊗S" };
                record_zero(&mut report, &x, || format!("μ({side})Δ(T[{i},{j},{r}]) - ε"));
            }
        }
    }
    Ok(report)
}

/// `(ε⊗id)Δ = id = (id⊗ε)Δ` and `(Δ⊗id)Δ = (id⊗Δ)Δ` on generators.
pub fn hopf_counit_coassociativity<S: Scalar>(alg: &Arc<Yangian<S>>, counit_max: usize, coassoc_max: usize) -> Result<CheckReport> {
    let mut report =
        CheckReport::new(format!("gl({}), counit on levels <= {counit_max}, coassociativity on levels <= {coassoc_max}", alg.dims()));
    for (i, j) in pairs(alg.size()) {
        for r in 1..=counit_max.max(coassoc_max) {
            let g = Element::generator(alg, i, j, r);
            let dg = coproduct(&g)?;
            if r <= counit_max {
                for leg in 0..2 {
                    let back = counit_on_leg(&dg, leg)?.sub(&g)?;
                    record_zero(&mut report, &back, || format!("counit on leg {} of Δ(T[{i},{j},{r}])", leg + 1));
                }
            }
            if r <= coassoc_max {
                let lhs = coproduct_on_leg(&dg, 0)?;
                let rhs = coproduct_on_leg(&dg, 1)?;
                record_zero(&mut report, &lhs.sub(&rhs)?, || format!("(Δ⊗id)Δ - (id⊗Δ)Δ on T[{i},{j},{r}]"));
            }
        }
    }
    Ok(report)
}

/// `Δ(X(u)) = X(u) ⊗ X(u)` and `ε(X(u)) = 1`, coefficientwise.
pub fn grouplike<S: Scalar>(name: &str, x: &ElementSeries<S>) -> Result<CheckReport> {
    let alg = x.coeff(0).algebra().clone();
    let mut report = CheckReport::new(format!("{name} on gl({}), through u^-{}", alg.dims(), x.order()));
    for r in 0..=x.order() {
        let lhs = coproduct(x.coeff(r))?;
        let mut rhs = Element::zero(&alg, 2);
        for a in 0..=r {
            rhs.add_scaled(&x.coeff(a).tensor(x.coeff(r - a))?, &S::one())?;
        }
        record_zero(&mut report, &lhs.sub(&rhs)?, || format!("Δ({name}^({r})) - Σ {name}^(a)⊗{name}^(b)"));
        let eps = x.coeff(r).constant_term();
        let want = if r == 0 { S::one() } else { S::zero() };
        report.record(eps == want, || format!("ε({name}^({r}))"), || eps.to_string());
    }
    Ok(report)
}

/// `S(Z(u)) = Z(u)^{-1}`, `ω(Z(u)) = Z(u)^{-1}` and `transpose(Z(u)) = Z(u)`.
pub fn z_symmetries<S: Scalar>(data: &RttData<S>, z: &ElementSeries<S>) -> Result<CheckReport> {
    let alg = data.algebra();
    let mut report = CheckReport::new(format!("gl({}), S, ω and transpose on Z(u) through u^-{}", alg.dims(), z.order()));
    let one = unit_series(alg, 1, z.order());
    for kind in [MorphismKind::AntipodeS, MorphismKind::Omega] {
        let table = MorphismTable::with_inverse(kind, data.tinv())?;
        let image = apply_series(&table, z)?;
        record_series_eq(&mut report, &format!("{kind}(Z(u)) Z(u) - 1"), &image.mul(z)?, &one)?;
    }
    let t = MorphismTable::build(MorphismKind::TransposeT, alg, z.order())?;
    record_series_eq(&mut report, "transpose_T(Z(u)) - Z(u)", &apply_series(&t, z)?, z)?;
    Ok(report)
}

/// `(1-r) Σ_i T_ii^(r-1) (-1)^{ī}`.
pub fn z_symbol_expected<S: Scalar>(alg: &Arc<Yangian<S>>, r: usize) -> Element<S> {
    let mut out = Element::zero(alg, 1);
    let k = S::from_i64(1 - r as i64);
    for i in alg.dims().indices() {
        let c = if alg.parity(i) == 1 { -k.clone() } else { k.clone() };
        out.add_scaled(&Element::generator(alg, i, i, r - 1), &c).expect("one leg");
    }
    out
}

/// For `2 <= r <= r_max`: `Z^(r)` has second-filtration degree `r-2` with
/// top symbol `(1-r) Σ_i T_ii^(r-1)(-1)^{ī}`, and the symbols are linearly
/// independent.
pub fn z_symbols<S: Scalar>(z: &ElementSeries<S>, r_max: usize) -> Result<CheckReport> {
    let alg = z.coeff(0).algebra().clone();
    let r_max = r_max.min(z.order());
    let mut report = CheckReport::new(format!("gl({}), Z^(r) for 2 <= r <= {r_max}", alg.dims()));
    let mut symbols = Vec::new();
    for r in 2..=r_max {
        let zr = z.coeff(r);
        let want = z_symbol_expected(&alg, r);
        match zr.filt_degree(2) {
            Ok(deg) => report.record(deg as usize == r - 2, || format!("second-filtration degree of Z^({r})"), || deg.to_string()),
            Err(_) => report.record(false, || format!("Z^({r}) vanishes"), || "0".into()),
        }
        let top = zr.component(2, (r - 2) as u32);
        record_zero(&mut report, &top.sub(&want)?, || format!("top symbol of Z^({r}) minus the expected image"));
        symbols.push(top);
    }
    let count = symbols.len();
    let rk = element_rank(&symbols);
    report.record(rk == count, || "linear independence of the top symbols".into(), || format!("rank {rk} of {count}"));
    Ok(report)
}

/// Rank of a family of elements as vectors over the monomial basis.
pub fn element_rank<S: Scalar>(elements: &[Element<S>]) -> usize {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let rows: Vec<BTreeMap<usize, S>> = elements
        .iter()
        .map(|e| {
            e.terms()
                .map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    rank(rows)
}

/// The second-filtration degree-`(r+s)` part of `[T_ij^(r+1), T_kl^(s+1)]` is
/// `(-1)^{īk̄+īl̄+k̄l̄}(δ_kj T_il^(r+s+1) - δ_il T_kj^(r+s+1))` and nothing
/// exceeds that degree.
pub fn generator_symbols<S: Scalar>(alg: &Arc<Yangian<S>>, bound: usize) -> Result<CheckReport> {
    let d = alg.dims();
    let mut report = CheckReport::new(format!("gl({d}), all quadruples, r+s <= {bound}"));
    for (i, j, k, l) in quadruples(d.size()) {
        let (pi, pk, pl) = (d.parity(i) as u32, d.parity(k) as u32, d.parity(l) as u32);
        let sigma: S = sign((pi * pk + pi * pl + pk * pl) % 2 == 1);
        for r in 0..=bound {
            for s in 0..=bound - r {
                let br = Element::generator(alg, i, j, r + 1).supercommutator(&Element::generator(alg, k, l, s + 1))?;
                let deg = (r + s) as u32;
                let mut want = Element::zero(alg, 1);
                if k == j {
                    want.add_scaled(&Element::generator(alg, i, l, r + s + 1), &sigma)?;
                }
                if i == l {
                    want.add_scaled(&Element::generator(alg, k, j, r + s + 1), &-sigma.clone())?;
                }
                let top_ok = br.is_zero() || br.filt_degree(2)? <= deg;
                let loc = || format!("[T[{i},{j},{}], T[{k},{l},{}]]", r + 1, s + 1);
                report.record(top_ok, loc, || br.to_string());
                record_zero(&mut report, &br.component(2, deg).sub(&want)?, loc);
            }
        }
    }
    Ok(report)
}

/// `B(u+1) = Z(u) B(u)`.
pub fn berezinian_theorem<S: Scalar>(data: &RttData<S>, z: &ElementSeries<S>) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({}), through u^-{}", data.algebra().dims(), data.order()));
    let b = data.berezinian()?;
    record_series_eq(&mut report, "B(u+1) - Z(u)B(u)", &b.shift(1), &z.mul(&b)?)?;
    Ok(report)
}

/// `[T_ij^(r), Ť_kl^(s)] = 0` for `i,j <= M < k,l`, `r,s >= 1`, `r+s <= bound`,
/// and the two alternated factors of `B(u)` commute.
pub fn l3_commutation<S: Scalar>(data: &RttData<S>, bound: usize) -> Result<CheckReport> {
    let alg = data.algebra();
    let d = alg.dims();
    let (m, size) = (d.m as usize, d.size());
    let mut report = CheckReport::new(format!("gl({d}), r+s <= {bound}; factors of B(u) through u^-{}", data.order()));
    for r in 1..bound {
        for s in 1..=(bound - r).min(data.order()) {
            for (i, j) in pairs(m) {
                for k in m + 1..=size {
                    for l in m + 1..=size {
                        let br = Element::generator(alg, i, j, r).supercommutator(data.tinv().entry(k, l).coeff(s))?;
                        record_zero(&mut report, &br, || format!("[T[{i},{j},{r}], Ť[{k},{l},{s}]]"));
                    }
                }
            }
        }
    }
    let a = data.even_factor()?;
    let c = data.odd_factor()?;
    record_series_eq(&mut report, "even factor * odd factor - odd factor * even factor", &a.mul(&c)?, &c.mul(&a)?)?;
    Ok(report)
}

/// `Z(u) C(u+1) = C(u)` for `M = 0`.
pub fn az_relation<S: Scalar>(data: &RttData<S>, z: &ElementSeries<S>) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({}), through u^-{}", data.algebra().dims(), data.order()));
    let c = data.c_series()?;
    record_series_eq(&mut report, "Z(u)C(u+1) - C(u)", &z.mul(&c.shift(1))?, &c)?;
    Ok(report)
}

/// The isomorphism `Y(gl(0|N)) → Y(gl_N)` sends `C(u)` to `D(1-u)`, with
/// `D(u)` the quantum determinant of `gl_N`.
pub fn c_to_reflected_d<S: Scalar>(odd: &RttData<S>, even: &RttData<S>) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("gl({}) to gl({}), through u^-{}", odd.algebra().dims(), even.algebra().dims(), odd.order()));
    let c = odd.c_series()?;
    let coeffs: Result<Vec<_>> = c.coeffs().iter().map(|x| to_even_yangian(x, even.algebra())).collect();
    let mapped = ElementSeries::from_coeffs(coeffs?)?;
    let d = even.berezinian()?;
    record_series_eq(&mut report, "image of C(u) - D(1-u)", &mapped, &reflect_one_minus_u(&d))?;
    Ok(report)
}

/// `eta_M`, `S` and `transpose_T` pairwise commute on generators, `eta_M` is
/// an involution, and `ω = S∘transpose = transpose∘S`.
pub fn morphism_commutation<S: Scalar>(alg: &Arc<Yangian<S>>, level: usize) -> Result<CheckReport> {
    let inv = SeriesMatrix::t_matrix(alg, level).invert()?;
    let eta = MorphismTable::build(MorphismKind::EtaM, alg, level)?;
    let s = MorphismTable::with_inverse(MorphismKind::AntipodeS, &inv)?;
    let t = MorphismTable::build(MorphismKind::TransposeT, alg, level)?;
    let omega = MorphismTable::with_inverse(MorphismKind::Omega, &inv)?;
    let mut report = CheckReport::new(format!("gl({}), generators of level <= {level}", alg.dims()));
    let compose = |a: &MorphismTable<S>, b: &MorphismTable<S>, x: &Element<S>| a.apply(&b.apply(x)?);
    for (i, j) in pairs(alg.size()) {
        for r in 1..=level {
            let g = Element::generator(alg, i, j, r);
            let gname = format!("T[{i},{j},{r}]");
            record_zero(&mut report, &compose(&eta, &eta, &g)?.sub(&g)?, || format!("eta_M∘eta_M - id on {gname}"));
            for (a, b) in [(&eta, &s), (&eta, &t), (&s, &t)] {
                let diff = compose(a, b, &g)?.sub(&compose(b, a, &g)?)?;
                record_zero(&mut report, &diff, || format!("[{}, {}] on {gname}", a.kind(), b.kind()));
            }
            let w = omega.apply(&g)?;
            record_zero(&mut report, &w.sub(&compose(&s, &t, &g)?)?, || format!("omega - S∘transpose on {gname}"));
            record_zero(&mut report, &w.sub(&compose(&t, &s, &g)?)?, || format!("omega - transpose∘S on {gname}"));
        }
    }
    Ok(report)
}

/// `(eta_M ∘ S)² = id` on generators, i.e. `eta_M` conjugates `S` to `S^{-1}`.
pub fn eta_conjugates_antipode<S: Scalar>(alg: &Arc<Yangian<S>>, level: usize) -> Result<CheckReport> {
    let eta = MorphismTable::build(MorphismKind::EtaM, alg, level)?;
    let s = MorphismTable::build(MorphismKind::AntipodeS, alg, level)?;
    let mut report = CheckReport::new(format!("gl({}), generators of level <= {level}", alg.dims()));
    for (i, j) in pairs(alg.size()) {
        for r in 1..=level {
            let g = Element::generator(alg, i, j, r);
            let mut x = g.clone();
            for _ in 0..2 {
                x = eta.apply(&s.apply(&x)?)?;
            }
            record_zero(&mut report, &x.sub(&g)?, || format!("(eta_M∘S)^2 - id on T[{i},{j},{r}]"));
        }
    }
    Ok(report)
}

/// The level-one generators span a copy of `gl(M|N)`:
/// `[e_ij, e_kl] = δ_jk e_il - δ_li e_kj (-1)^{(ī+j̄)(k̄+l̄)}` under
/// `e_ji ↦ -T_ij^(1)(-1)^{j̄}`.
pub fn gl_embedding<S: Scalar>(alg: &Arc<Yangian<S>>) -> Result<CheckReport> {
    let d = alg.dims();
    let mut report = CheckReport::new(format!("gl({d}), all quadruples"));
    let e = |i: usize, j: usize| Element::embed_gl(alg, j, i);
    for (i, j, k, l) in quadruples(d.size()) {
        let lhs = e(i, j).supercommutator(&e(k, l))?;
        let mut rhs = Element::zero(alg, 1);
        if j == k {
            rhs.add_scaled(&e(i, l), &S::one())?;
        }
        if l == i {
            let odd = (d.parity(i) + d.parity(j)) * (d.parity(k) + d.parity(l)) % 2 == 1;
            rhs.add_scaled(&e(k, j), &-sign::<S>(odd))?;
        }
        record_zero(&mut report, &lhs.sub(&rhs)?, || format!("[e_{i}{j}, e_{k}{l}]"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    #[test]
    fn closure_on_small_algebras() {
        for (m, n) in [(1, 0), (1, 1), (0, 2)] {
            let y = Yangian::<Q>::new(m, n).unwrap();
            let rep = relation_closure(&y, 4).unwrap();
            assert!(rep.passed, "{rep}");
            let raw = relation_preservation(&y, None, 4).unwrap();
            assert!(raw.passed, "{raw}");
        }
    }

    #[test]
    fn a_wrong_sign_is_caught() {
        // flipping the sign of the right-hand side must break the relation
        let y = Yangian::<Q>::new(1, 1).unwrap();
        let mut raw = defining_relation_raw(&y, (1, 2, 2, 1), 2, 1);
        for (_, c) in raw.iter_mut().rev().take(2) {
            *c = -c.clone();
        }
        let e = Element::from_raw(&y, 1, raw.into_iter().map(|(w, c)| (vec![w], c))).unwrap();
        assert!(!e.is_zero());
    }

    #[test]
    fn gl_relations_hold() {
        for (m, n) in [(1, 1), (2, 1)] {
            let y = Yangian::<Q>::new(m, n).unwrap();
            assert!(gl_embedding(&y).unwrap().passed);
        }
    }

    #[test]
    fn eta_and_antipode_do_not_commute_but_conjugate() {
        let y = Yangian::<Q>::new(3, 0).unwrap();
        let rep = morphism_commutation(&y, 2).unwrap();
        assert!(!rep.passed);
        let ce = rep.counterexample.unwrap();
        assert_eq!(ce.location, "[eta_M, antipode_S] on T[1,1,2]");
        assert_eq!(Element::parse(&y, &ce.value).unwrap(), Element::parse(&y, "-2*T[1,1,1] + T[2,2,1] + T[3,3,1]").unwrap());
        assert!(eta_conjugates_antipode(&y, 3).unwrap().passed);
    }
}
