//! The inverse construction on the line: a rank-3 quadric through the
//! rational normal curve splits as `x*y - z^2`; pulling the three linear
//! forms back to binary forms and splitting off odd multiplicities recovers
//! `(s, t, h)` with the quadric equal to a scalar multiple of
//! `phi(s^2 h) phi(t^2 h) - phi(s t h)^2`. Witnesses are normalized monic
//! with the scalar reported, and may live over `F_{p^2}` (flagged).

use crate::binary::{binary_gcd, odd_even_split, squarefree};
use crate::embed::{normalize_projective, QuadricSpace, SigmaEntry};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::quadform::Rank3Split;
use crate::ranklocus::{canonical_point, projective_count, ENUMERATION_CAP};
use crate::wab::{q_ab, random_params};
use crate::Error;
use num::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// A verified preimage of a rank-3 quadric: the quadric equals
/// `scalar * Q(s, t, h)` exactly, with `s, t, h` monic and `h` squarefree.
#[derive(Clone, Debug)]
pub struct MembershipWitness {
    pub ell: usize,
    pub s: MultiPoly,
    pub t: MultiPoly,
    pub h: MultiPoly,
    pub scalar: Scalar,
    pub extended: bool,
}

/// Outcome of the membership test.
#[derive(Clone, Debug)]
pub enum Membership {
    Witness(MembershipWitness),
    NotRank3 {
        rank: usize,
    },
    /// The rank-3 split needs a quadratic extension that is unavailable
    /// (rationals) or disabled; discriminants reported when known.
    ExtensionRequired {
        discriminants: Vec<BigInt>,
    },
}

fn entry_for_ell(d: usize, ell: usize) -> SigmaEntry {
    SigmaEntry {
        ell,
        b_power: d - 2 * ell,
        p: ell,
        q: d - 2 * ell,
    }
}

fn pullback_binary(
    basis: &[Monomial],
    coeffs: &[Scalar],
    field: FieldSpec,
) -> Result<MultiPoly, Error> {
    let mut out = MultiPoly::zero(field, 2);
    for (m, c) in basis.iter().zip(coeffs) {
        out.add_term(m.clone(), c.clone())?;
    }
    Ok(out)
}

/// Membership test with explicit extension policy; `ext_space` may carry a
/// precomputed base change of the quadric space to `F_{p^2}`.
pub fn membership_with(
    qs: &QuadricSpace,
    y: &[Scalar],
    allow_extension: bool,
    ext_space: Option<&QuadricSpace>,
) -> Result<Membership, Error> {
    let model = qs.model();
    let (n, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("membership needs the line model".into()))?;
    if n != 1 {
        return Err(Error::Unsupported(
            "constructive membership is implemented on the line only".into(),
        ));
    }
    match qs.field() {
        FieldSpec::Prime(p) if p as usize > d => {}
        FieldSpec::Rational => {}
        FieldSpec::Prime(p) => return Err(Error::CharTooSmall { p, need: d as u64 }),
        FieldSpec::Quadratic(_) => {
            return Err(Error::Unsupported(
                "membership starts from the base field".into(),
            ))
        }
    }
    let form = qs.combine(y)?;
    if form.is_zero() {
        return Err(Error::ZeroVector);
    }
    let rank = form.form_rank();
    if rank != 3 {
        return Ok(Membership::NotRank3 { rank });
    }
    let (xv, yv, zv, extended) = match form.rank3_split()? {
        Rank3Split::ExtensionRequired { discriminants } => {
            return Ok(Membership::ExtensionRequired { discriminants })
        }
        Rank3Split::Forms { x, y, z, extended } => (x, y, z, extended),
    };
    if extended && !allow_extension {
        return Ok(Membership::ExtensionRequired {
            discriminants: vec![],
        });
    }
    let work_field = xv[0].field();
    let basis = model.basis(d)?.to_vec();
    let xt = pullback_binary(&basis, &xv, work_field)?;
    let yt = pullback_binary(&basis, &yv, work_field)?;
    let zt = pullback_binary(&basis, &zv, work_field)?;

    // Divisor parity: the odd parts of the two product pullbacks agree and
    // give h; the even parts are perfect squares giving s and t.
    let sx = odd_even_split(&xt)?;
    let sy = odd_even_split(&yt)?;
    if sx.h != sy.h {
        return Err(Error::TheoremViolation(format!(
            "odd parts disagree: {} vs {}",
            sx.h, sy.h
        )));
    }
    let h = sx.h;
    let s = sx.s;
    let t = sy.s;
    let ell = s.degree().unwrap_or(0) as usize;
    if ell == 0 || t.degree().unwrap_or(0) as usize != ell || d < 2 * ell {
        return Err(Error::TheoremViolation(
            "recovered section degrees are inconsistent".into(),
        ));
    }
    let alpha = sx.unit;
    let beta = sy.unit;
    let gamma = zt
        .leading()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| work_field.zero());
    let scalar = alpha.try_mul(&beta)?;
    if gamma.try_mul(&gamma)? != scalar {
        return Err(Error::TheoremViolation(
            "cross-term scalar is not a square root of the product scalar".into(),
        ));
    }
    let sth = s.try_mul(&t)?.try_mul(&h)?.scale(&gamma)?;
    if sth != zt {
        return Err(Error::TheoremViolation(
            "cross term does not equal s*t*h up to scalar".into(),
        ));
    }

    // Reconstruct and compare coordinates exactly.
    let promoted;
    let verify_space = if extended {
        match ext_space {
            Some(e) => e,
            None => {
                promoted = qs.promote(work_field)?;
                &promoted
            }
        }
    } else {
        qs
    };
    let entry = entry_for_ell(d, ell);
    let rebuilt = q_ab(verify_space, entry, &s, &t, &h)?;
    let y_eff: Vec<Scalar> = y
        .iter()
        .map(|c| c.promote(work_field))
        .collect::<Result<_, _>>()?;
    let scaled: Vec<Scalar> = rebuilt
        .coords
        .iter()
        .map(|c| c.try_mul(&scalar))
        .collect::<Result<_, _>>()?;
    if scaled != y_eff {
        return Err(Error::TheoremViolation(
            "witness does not reproduce the quadric".into(),
        ));
    }
    Ok(Membership::Witness(MembershipWitness {
        ell,
        s,
        t,
        h,
        scalar,
        extended,
    }))
}

/// Membership test with extensions allowed.
pub fn membership_p1(qs: &QuadricSpace, y: &[Scalar]) -> Result<Membership, Error> {
    membership_with(qs, y, true, None)
}

/// Side-by-side comparison of the rank-3 locus with the forward images of
/// the parameter space (models with `d = 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardComparison {
    pub rank3_count: u64,
    pub forward_count: u64,
    pub equal_sets: bool,
}

/// Decomposition scan report. `unresolved` lists points (as canonical
/// residue vectors) that obtained no witness; the decomposition statement
/// predicts it stays empty.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub instance: String,
    pub scanned: u64,
    pub rank3: u64,
    pub witnessed_base: u64,
    pub witnessed_extended: u64,
    pub per_ell: BTreeMap<usize, u64>,
    pub unresolved: Vec<Vec<u64>>,
    pub forward: Option<ForwardComparison>,
}

impl DecompositionReport {
    pub fn fully_resolved(&self) -> bool {
        self.unresolved.is_empty() && self.forward.as_ref().map(|f| f.equal_sets).unwrap_or(true)
    }
}

fn residues(v: &[Scalar]) -> Vec<u64> {
    v.iter()
        .map(|s| match s {
            Scalar::Prime { a, .. } => *a,
            _ => 0,
        })
        .collect()
}

/// Exhaustive decomposition check on the line: every rank-3 point of the
/// coefficient space receives a witness, possibly over `F_{p^2}`.
pub fn decomposition_check_p1(qs: &QuadricSpace, p: u64) -> Result<DecompositionReport, Error> {
    let model = qs.model();
    let (_, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("line model required".into()))?;
    let field = FieldSpec::prime(p)?;
    if qs.field() != field {
        return Err(Error::FieldMismatch);
    }
    let mdim = qs.m() + 1;
    let total = projective_count(p, mdim);
    if total > ENUMERATION_CAP {
        return Err(Error::BudgetExceeded {
            points: total,
            cap: ENUMERATION_CAP,
        });
    }
    let ext = qs.promote(field.extension()?)?;
    let mut report = DecompositionReport {
        instance: format!("pn(1,{})/F{}", d, p),
        scanned: 0,
        rank3: 0,
        witnessed_base: 0,
        witnessed_extended: 0,
        per_ell: BTreeMap::new(),
        unresolved: Vec::new(),
        forward: None,
    };
    for index in 0..total {
        let y = canonical_point(p, mdim, index, field);
        report.scanned += 1;
        match membership_with(qs, &y, true, Some(&ext))? {
            Membership::NotRank3 { rank } => {
                if rank <= 3 {
                    // ranks 1 and 2 would contradict the empty lower locus
                    report.unresolved.push(residues(&y));
                }
            }
            Membership::ExtensionRequired { .. } => {
                report.rank3 += 1;
                report.unresolved.push(residues(&y));
            }
            Membership::Witness(w) => {
                report.rank3 += 1;
                *report.per_ell.entry(w.ell).or_insert(0) += 1;
                if w.extended {
                    report.witnessed_extended += 1;
                } else {
                    report.witnessed_base += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Sampled decomposition check on the line: `samples` rank-3 points obtained
/// by rejection from forward images (all decomposition strata) interleaved
/// with random span elements of pairs of forward images that happen to have
/// rank 3.
pub fn decomposition_check_p1_sampled(
    qs: &QuadricSpace,
    p: u64,
    samples: u64,
    seed: u64,
) -> Result<DecompositionReport, Error> {
    let model = qs.model();
    let (_, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("line model required".into()))?;
    let field = FieldSpec::prime(p)?;
    if qs.field() != field {
        return Err(Error::FieldMismatch);
    }
    let entries = model.sigma_list()?;
    let ext = qs.promote(field.extension()?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DecompositionReport {
        instance: format!("pn(1,{})/F{} sampled", d, p),
        scanned: 0,
        rank3: 0,
        witnessed_base: 0,
        witnessed_extended: 0,
        per_ell: BTreeMap::new(),
        unresolved: Vec::new(),
        forward: None,
    };
    let forward_image = |rng: &mut ChaCha8Rng| -> Result<Vec<Scalar>, Error> {
        loop {
            let entry = entries[rng.gen_range(0..entries.len())];
            let (s, t, h) = random_params(qs, entry, rng)?;
            let q = q_ab(qs, entry, &s, &t, &h)?;
            if q.hessian.form_rank() == 3 {
                return Ok(q.coords);
            }
        }
    };
    while report.scanned < samples {
        let y = if report.scanned % 5 == 4 {
            // random element of the span of two forward images, kept only
            // when it happens to have rank 3
            let a = forward_image(&mut rng)?;
            let b = forward_image(&mut rng)?;
            let la = field.random_nonzero(&mut rng);
            let lb = field.random_nonzero(&mut rng);
            let y: Vec<Scalar> = a
                .iter()
                .zip(&b)
                .map(|(x1, x2)| {
                    x1.try_mul(&la)
                        .unwrap()
                        .try_add(&x2.try_mul(&lb).unwrap())
                        .unwrap()
                })
                .collect();
            if y.iter().all(|c| c.is_zero()) {
                continue;
            }
            if qs.combine(&y)?.form_rank() != 3 {
                continue;
            }
            y
        } else {
            forward_image(&mut rng)?
        };
        report.scanned += 1;
        report.rank3 += 1;
        match membership_with(qs, &y, true, Some(&ext))? {
            Membership::Witness(w) => {
                *report.per_ell.entry(w.ell).or_insert(0) += 1;
                if w.extended {
                    report.witnessed_extended += 1;
                } else {
                    report.witnessed_base += 1;
                }
            }
            _ => report.unresolved.push(residues(&y)),
        }
    }
    Ok(report)
}

/// Canonical echelon bases of the 2-dimensional subspaces of `F_p^k`.
fn two_dim_subspaces(p: u64, k: usize, field: FieldSpec) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            // free positions: row1 over columns > i excluding j, row2 over
            // columns > j
            let free1: Vec<usize> = (i + 1..k).filter(|&c| c != j).collect();
            let free2: Vec<usize> = (j + 1..k).collect();
            let total = free1.len() + free2.len();
            let count = (p as u128).pow(total as u32);
            for mut idx in 0..count {
                let mut r1 = vec![field.zero(); k];
                let mut r2 = vec![field.zero(); k];
                r1[i] = field.one();
                r2[j] = field.one();
                for &c in &free1 {
                    r1[c] = field.from_i64((idx % p as u128) as i64);
                    idx /= p as u128;
                }
                for &c in &free2 {
                    r2[c] = field.from_i64((idx % p as u128) as i64);
                    idx /= p as u128;
                }
                out.push((r1, r2));
            }
        }
    }
    out
}

/// Forward-image comparison for `d = 2` models: the rank-3 locus equals, as
/// a point set, the image of the space of lines in the section space.
pub fn decomposition_check_forward(
    qs: &QuadricSpace,
    p: u64,
) -> Result<DecompositionReport, Error> {
    let model = qs.model();
    let (n, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("veronese model required".into()))?;
    if d != 2 {
        return Err(Error::Unsupported(
            "forward comparison is for second Veronese models".into(),
        ));
    }
    let field = FieldSpec::prime(p)?;
    if qs.field() != field {
        return Err(Error::FieldMismatch);
    }
    let mdim = qs.m() + 1;
    let total = projective_count(p, mdim);
    if total > ENUMERATION_CAP {
        return Err(Error::BudgetExceeded {
            points: total,
            cap: ENUMERATION_CAP,
        });
    }
    // rank-3 side
    let mat = crate::ranklocus::assemble_m(qs);
    let mut rank3_set: BTreeSet<Vec<u64>> = BTreeSet::new();
    for index in 0..total {
        let y = canonical_point(p, mdim, index, field);
        if crate::ranklocus::rank_at(&mat, &y)? <= 3 {
            rank3_set.insert(residues(&y));
        }
    }
    // forward side: all lines <s, t>, h = 1
    let entry = model.sigma_list()?[0];
    let basis1 = model.basis(1)?.to_vec();
    let mut forward_set: BTreeSet<Vec<u64>> = BTreeSet::new();
    let one = MultiPoly::one(field, n + 1);
    for (r1, r2) in two_dim_subspaces(p, n + 1, field) {
        let build = |coords: &[Scalar]| {
            let mut f = MultiPoly::zero(field, n + 1);
            for (m, c) in basis1.iter().zip(coords) {
                f.add_term(m.clone(), c.clone()).unwrap();
            }
            f
        };
        let s = build(&r1);
        let t = build(&r2);
        let q = q_ab(qs, entry, &s, &t, &one)?;
        if q.is_zero() {
            return Err(Error::TheoremViolation(
                "forward image of a genuine line vanished".into(),
            ));
        }
        forward_set.insert(residues(&normalize_projective(&q.coords)));
    }
    let equal = rank3_set == forward_set;
    let mut report = DecompositionReport {
        instance: format!("pn({},2)/F{} forward", n, p),
        scanned: total as u64,
        rank3: rank3_set.len() as u64,
        witnessed_base: forward_set.len() as u64,
        witnessed_extended: 0,
        per_ell: BTreeMap::new(),
        unresolved: Vec::new(),
        forward: Some(ForwardComparison {
            rank3_count: rank3_set.len() as u64,
            forward_count: forward_set.len() as u64,
            equal_sets: equal,
        }),
    };
    if !equal {
        for pt in rank3_set.symmetric_difference(&forward_set) {
            report.unresolved.push(pt.clone());
        }
    }
    Ok(report)
}

/// Round-trip report for the uniqueness statement: recovered spans must equal
/// the drawn ones exactly.
#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub instance: String,
    pub trials: u64,
    pub successes: u64,
    pub failures: Vec<String>,
}

/// Draw `(s, t, h)` in the surrogate of the irreducible locus (`h` nonzero
/// squarefree, coprime to `s` and `t`, `<s, t>` two-dimensional), apply the
/// construction, run membership, and compare the recovered spans.
pub fn uniqueness_roundtrip(
    qs: &QuadricSpace,
    entry: SigmaEntry,
    trials: u64,
    seed: u64,
) -> Result<RoundtripReport, Error> {
    let model = qs.model();
    let (n, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("line model required".into()))?;
    if n != 1 {
        return Err(Error::Unsupported(
            "round-trips are implemented on the line".into(),
        ));
    }
    let field = qs.field();
    let ext_field = field.extension().ok();
    let ext = match ext_field {
        Some(e) => Some(qs.promote(e)?),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RoundtripReport {
        instance: format!("pn(1,{}) ell={} /{}", d, entry.ell, field),
        trials,
        successes: 0,
        failures: Vec::new(),
    };
    for _ in 0..trials {
        // rejection-sample the surrogate locus
        let (s, t, h) = loop {
            let (s, t, h) = random_params(qs, entry, &mut rng)?;
            if entry.b_power > 0 {
                let dec = squarefree(&h)?;
                if dec.factors.iter().any(|(_, e)| *e > 1) {
                    continue;
                }
                let st = s.try_mul(&t)?;
                let g = binary_gcd(&h, &st)?;
                if g.degree().unwrap_or(0) > 0 {
                    continue;
                }
            }
            break (s, t, h);
        };
        let q = q_ab(qs, entry, &s, &t, &h)?;
        let outcome = membership_with(qs, &q.coords, true, ext.as_ref())?;
        let w = match outcome {
            Membership::Witness(w) => w,
            other => {
                report
                    .failures
                    .push(format!("no witness for a constructed quadric: {:?}", other));
                continue;
            }
        };
        if w.ell != entry.ell {
            report.failures.push(format!(
                "expected degree {}, recovered {}",
                entry.ell, w.ell
            ));
            continue;
        }
        // span comparisons, over the witness field
        let wf = w.s.field();
        let stack_rank = |forms: &[&MultiPoly]| -> Result<usize, Error> {
            let cols = entry.ell + 1;
            let mut data = Vec::new();
            for f in forms {
                let mut row = vec![wf.zero(); cols];
                for (m, c) in f.terms() {
                    row[m.0[1] as usize] = c.promote(wf)?;
                }
                data.extend(row);
            }
            Ok(DenseMatrix::new(wf, forms.len(), cols, data)?.rank())
        };
        let sp = s.promote(wf)?;
        let tp = t.promote(wf)?;
        let span_ok = stack_rank(&[&sp, &tp])? == 2
            && stack_rank(&[&sp, &tp, &w.s])? == 2
            && stack_rank(&[&sp, &tp, &w.t])? == 2;
        let h_ok = {
            let (hm, _) = h.promote(wf)?.monic();
            hm == w.h
        };
        if span_ok && h_ok {
            report.successes += 1;
        } else {
            report.failures.push(format!(
                "span mismatch: s={} t={} h={} vs witness s={} t={} h={}",
                s, t, h, w.s, w.t, w.h
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::EmbeddingModel;

    fn space(field: FieldSpec, d: usize) -> QuadricSpace {
        let model = EmbeddingModel::veronese(field, 1, d).unwrap();
        QuadricSpace::of_model(&model).unwrap()
    }

    fn quadric_coords(qs: &QuadricSpace, terms: &[(usize, usize, i64)]) -> Vec<Scalar> {
        let form =
            crate::quadform::SymmetricForm::from_terms(qs.field(), qs.model().r() + 1, terms);
        qs.coordinates_of(&form).unwrap()
    }

    #[test]
    fn witness_of_the_square_pencil_quadric() {
        // z0 z4 - z2^2 on the quartic curve: witness (u^2, v^2, 1), ell = 2.
        let f = FieldSpec::prime(7).unwrap();
        let qs = space(f, 4);
        let y = quadric_coords(&qs, &[(0, 4, 1), (2, 2, -1)]);
        match membership_p1(&qs, &y).unwrap() {
            Membership::Witness(w) => {
                assert_eq!(w.ell, 2);
                assert!(!w.extended);
                let u = MultiPoly::variable(f, 2, 0);
                let v = MultiPoly::variable(f, 2, 1);
                assert_eq!(w.s, u.pow(2));
                assert_eq!(w.t, v.pow(2));
                assert_eq!(w.h, MultiPoly::one(f, 2));
                assert!(w.scalar.is_one());
            }
            other => panic!("expected witness, got {:?}", other),
        }
    }

    #[test]
    fn witness_of_the_conic_inside_the_quartic() {
        // z0 z2 - z1^2: pullbacks u^4 and u^2 v^2, witness (u^2, u v, 1).
        let f = FieldSpec::prime(7).unwrap();
        let qs = space(f, 4);
        let y = quadric_coords(&qs, &[(0, 2, 1), (1, 1, -1)]);
        match membership_p1(&qs, &y).unwrap() {
            Membership::Witness(w) => {
                assert_eq!(w.ell, 2);
                let u = MultiPoly::variable(f, 2, 0);
                let v = MultiPoly::variable(f, 2, 1);
                assert_eq!(w.s, u.pow(2));
                assert_eq!(w.t, u.try_mul(&v).unwrap());
                assert_eq!(w.h, MultiPoly::one(f, 2));
            }
            other => panic!("expected witness, got {:?}", other),
        }
    }

    #[test]
    fn rank_four_quadric_is_rejected() {
        let f = FieldSpec::prime(7).unwrap();
        let qs = space(f, 4);
        let y = quadric_coords(&qs, &[(0, 3, 1), (1, 2, -1)]);
        match membership_p1(&qs, &y).unwrap() {
            Membership::NotRank3 { rank } => assert_eq!(rank, 4),
            other => panic!("expected rank refusal, got {:?}", other),
        }
    }

    #[test]
    fn nonsquarefree_h_reassociates_to_the_larger_stratum() {
        // Q(u, v, u^2) with ell = 1 equals Q(u^2, u v, 1) with ell = 2; the
        // canonical witness is the ell = 2 one.
        let f = FieldSpec::prime(7).unwrap();
        let qs = space(f, 4);
        let u = MultiPoly::variable(f, 2, 0);
        let v = MultiPoly::variable(f, 2, 1);
        let e1 = SigmaEntry {
            ell: 1,
            b_power: 2,
            p: 1,
            q: 2,
        };
        let e2 = SigmaEntry {
            ell: 2,
            b_power: 0,
            p: 2,
            q: 0,
        };
        let q1 = q_ab(&qs, e1, &u, &v, &u.pow(2)).unwrap();
        let q2 = q_ab(
            &qs,
            e2,
            &u.pow(2),
            &u.try_mul(&v).unwrap(),
            &MultiPoly::one(f, 2),
        )
        .unwrap();
        assert_eq!(q1.coords, q2.coords);
        match membership_p1(&qs, &q1.coords).unwrap() {
            Membership::Witness(w) => assert_eq!(w.ell, 2),
            other => panic!("expected witness, got {:?}", other),
        }
    }

    #[test]
    fn exhaustive_decomposition_on_the_conic() {
        // P^0: the single point is rank 3 with an ell = 1 witness.
        let f = FieldSpec::prime(5).unwrap();
        let qs = space(f, 2);
        let report = decomposition_check_p1(&qs, 5).unwrap();
        assert_eq!(report.scanned, 1);
        assert_eq!(report.rank3, 1);
        assert!(report.fully_resolved());
        assert_eq!(report.per_ell.get(&1), Some(&1));
    }

    #[test]
    fn subspace_enumeration_counts() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(two_dim_subspaces(5, 3, f).len(), 31);
        let f3 = FieldSpec::prime(3).unwrap();
        // Gaussian binomial [4 choose 2]_3 = 130
        assert_eq!(two_dim_subspaces(3, 4, f3).len(), 130);
        // all enumerated bases really span distinct planes
        let mut seen = std::collections::BTreeSet::new();
        for (r1, r2) in two_dim_subspaces(3, 4, f3) {
            let m = DenseMatrix::new(f3, 2, 4, [r1, r2].concat()).unwrap();
            assert_eq!(m.rank(), 2);
            let red = m.rref();
            let mut key = Vec::new();
            for i in 0..2 {
                for j in 0..4 {
                    key.push(format!("{}", red.matrix[(i, j)]));
                }
            }
            assert!(seen.insert(key));
        }
    }

    #[test]
    fn forward_comparison_on_the_veronese_surface() {
        let f = FieldSpec::prime(5).unwrap();
        let model = EmbeddingModel::veronese(f, 2, 2).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let report = decomposition_check_forward(&qs, 5).unwrap();
        let fwd = report.forward.unwrap();
        assert_eq!(fwd.rank3_count, 31);
        assert_eq!(fwd.forward_count, 31);
        assert!(fwd.equal_sets);
    }

    #[test]
    fn roundtrip_small_run() {
        let f = FieldSpec::prime(11).unwrap();
        let qs = space(f, 4);
        let entry = qs.model().sigma_list().unwrap()[0];
        let report = uniqueness_roundtrip(&qs, entry, 25, 3).unwrap();
        assert_eq!(report.successes, 25, "failures: {:?}", report.failures);
    }

    #[test]
    fn sampled_decomposition_on_the_quintic() {
        let f = FieldSpec::prime(7).unwrap();
        let qs = space(f, 5);
        let report = decomposition_check_p1_sampled(&qs, 7, 60, 0).unwrap();
        assert_eq!(report.scanned, 60);
        assert!(
            report.fully_resolved(),
            "unresolved: {:?}",
            report.unresolved
        );
        assert!(report.per_ell.keys().all(|&e| e == 1 || e == 2));
    }

    #[test]
    fn zero_vector_is_rejected() {
        let f = FieldSpec::prime(7).unwrap();
        let qs = space(f, 4);
        let z = vec![f.zero(); qs.m() + 1];
        assert!(matches!(membership_p1(&qs, &z), Err(Error::ZeroVector)));
    }

    #[test]
    fn small_characteristic_is_refused() {
        let f = FieldSpec::prime(5).unwrap();
        let qs = space(f, 5);
        let y = vec![f.one(); qs.m() + 1];
        assert!(matches!(
            membership_p1(&qs, &y),
            Err(Error::CharTooSmall { .. })
        ));
    }
}
