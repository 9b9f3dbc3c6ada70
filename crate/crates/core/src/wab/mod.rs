//! The rank-3 construction at the center of the crate: for a decomposition
//! `L = A^2 (x) B` and sections `s, t` of `A`, `h` of `B`, the quadric
//!
//! ```text
//! Q(s, t, h) = phi(s^2 h) * phi(t^2 h) - phi(s t h)^2
//! ```
//!
//! vanishes on the embedded variety and has rank at most 3. This module
//! computes `Q` exactly, in both Hessian form and coordinates on the quadric
//! basis, together with the algebraic identities the construction satisfies.
//! Submodules build the symbolic coefficient system with its invariant-theory
//! certificate ([`system`]), the inverse construction recovering `(s, t, h)`
//! from a rank-3 quadric on the line ([`membership`]), and the span and
//! Grassmannian identification checks ([`checks`]).

pub mod checks;
pub mod membership;
pub mod system;

use crate::embed::{QuadricSpace, SigmaEntry};
use crate::field::Scalar;
use crate::matrix::DenseMatrix;
use crate::poly::MultiPoly;
use crate::quadform::SymmetricForm;
use crate::Error;
use rand::Rng;

/// A quadric produced by the construction: coordinates on the quadric basis
/// plus its Hessian.
#[derive(Clone, Debug)]
pub struct WabQuadric {
    pub coords: Vec<Scalar>,
    pub hessian: SymmetricForm,
}

impl WabQuadric {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

fn validate_section(
    qs: &QuadricSpace,
    f: &MultiPoly,
    degree: usize,
    what: &str,
) -> Result<(), Error> {
    let model = qs.model();
    let (n, _) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("the construction needs section bases".into()))?;
    if f.arity() != n + 1 {
        return Err(Error::ArityMismatch(f.arity(), n + 1));
    }
    if f.field() != qs.field() {
        return Err(Error::FieldMismatch);
    }
    if !f.is_zero() && f.homogeneous_degree() != Some(degree as u32) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: f.degree().unwrap_or(0) as usize,
        });
    }
    let _ = what;
    Ok(())
}

/// Hessian of `Q(s, t, h)` (no coordinate solve).
pub fn q_ab_hessian(
    qs: &QuadricSpace,
    entry: SigmaEntry,
    s: &MultiPoly,
    t: &MultiPoly,
    h: &MultiPoly,
) -> Result<SymmetricForm, Error> {
    let model = qs.model();
    let (_, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("the construction needs section bases".into()))?;
    validate_section(qs, s, entry.ell, "s")?;
    validate_section(qs, t, entry.ell, "t")?;
    validate_section(qs, h, entry.b_power, "h")?;
    let ssh = s.try_mul(s)?.try_mul(h)?;
    let tth = t.try_mul(t)?.try_mul(h)?;
    let sth = s.try_mul(t)?.try_mul(h)?;
    let v1 = model.section_coords(d, &ssh)?;
    let v2 = model.section_coords(d, &tth)?;
    let v3 = model.section_coords(d, &sth)?;
    SymmetricForm::from_product_minus_square(&v1, &v2, &v3)
}

/// `Q(s, t, h)` with its coordinates in the quadric basis. The zero quadric
/// comes back as the zero vector; a quadric outside the span (impossible for
/// supported models) is an error.
pub fn q_ab(
    qs: &QuadricSpace,
    entry: SigmaEntry,
    s: &MultiPoly,
    t: &MultiPoly,
    h: &MultiPoly,
) -> Result<WabQuadric, Error> {
    let hessian = q_ab_hessian(qs, entry, s, t, h)?;
    let coords = if hessian.is_zero() {
        vec![qs.field().zero(); qs.m() + 1]
    } else {
        qs.coordinates_of(&hessian)?
    };
    Ok(WabQuadric { coords, hessian })
}

/// Dimension of the span of the given degree-`e` forms (rank of the stacked
/// coefficient matrix).
pub fn span_dimension(qs: &QuadricSpace, e: usize, forms: &[&MultiPoly]) -> Result<usize, Error> {
    let model = qs.model();
    let cols = model.h0(e)?;
    let mut data = Vec::with_capacity(forms.len() * cols);
    for f in forms {
        data.extend(model.section_coords(e, f)?);
    }
    let m = DenseMatrix::new(forms[0].field(), forms.len(), cols, data)?;
    Ok(m.rank())
}

/// Random `(s, t, h)` with `<s, t>` two-dimensional and `h != 0`.
pub fn random_params<R: Rng>(
    qs: &QuadricSpace,
    entry: SigmaEntry,
    rng: &mut R,
) -> Result<(MultiPoly, MultiPoly, MultiPoly), Error> {
    let model = qs.model();
    let (s, t) = loop {
        let s = model.random_form(entry.ell, rng)?;
        let t = model.random_form(entry.ell, rng)?;
        if span_dimension(qs, entry.ell, &[&s, &t])? == 2 {
            break (s, t);
        }
    };
    let h = loop {
        let h = model.random_form(entry.b_power, rng)?;
        if !h.is_zero() {
            break h;
        }
    };
    Ok((s, t, h))
}

/// Names of the randomized identities checked by [`identity_suite`].
pub const IDENTITY_NAMES: [&str; 9] = [
    "symmetry",
    "scaling",
    "determinant",
    "polarization-t",
    "polarization-h",
    "expansion-t3",
    "expansion-t4",
    "expansion-h3",
    "expansion-h4",
];

/// Outcome of the randomized identity suite on one model.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub instance: String,
    pub trials_per_identity: u64,
    pub passes: std::collections::BTreeMap<String, u64>,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passes.values().all(|&v| v == self.trials_per_identity)
    }
}

fn combo(parts: &[(&Scalar, &SymmetricForm)]) -> Result<SymmetricForm, Error> {
    let mut acc: Option<SymmetricForm> = None;
    for (c, f) in parts {
        let term = f.scale(c)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.try_add(&term)?,
        });
    }
    Ok(acc.unwrap())
}

/// Check the exact identities of the construction on seeded random inputs:
/// symmetry and scaling, the determinant law under substitutions
/// `(s, t) -> (a s + b t, c s + d t)`, both polarization identities, and the
/// 3- and 4-summand expansion identities. Entries of the decomposition list
/// are cycled per trial.
pub fn identity_suite(qs: &QuadricSpace, trials: u64, seed: u64) -> Result<IdentityReport, Error> {
    use rand::SeedableRng;
    let model = qs.model();
    let (n, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("identity suite needs section bases".into()))?;
    let entries = model.sigma_list()?;
    if entries.is_empty() {
        return Err(Error::Unsupported("no decompositions for d <= 1".into()));
    }
    let field = qs.field();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut passes: std::collections::BTreeMap<String, u64> = IDENTITY_NAMES
        .iter()
        .map(|s| (s.to_string(), 0u64))
        .collect();
    let mut failures = Vec::new();
    let fail = |name: &str, failures: &mut Vec<String>| {
        failures.push(format!("{} identity failed", name));
    };
    for trial in 0..trials {
        let entry = entries[(trial as usize) % entries.len()];
        let (s, t, h) = random_params(qs, entry, &mut rng)?;
        let q = q_ab_hessian(qs, entry, &s, &t, &h)?;

        // symmetry in the first two slots
        if q_ab_hessian(qs, entry, &t, &s, &h)? == q {
            *passes.get_mut("symmetry").unwrap() += 1;
        } else {
            fail("symmetry", &mut failures);
        }

        // scaling: Q(a s, b t, c h) = a^2 b^2 c^2 Q(s, t, h)
        {
            let (a, b, c) = (
                field.random(&mut rng),
                field.random(&mut rng),
                field.random(&mut rng),
            );
            let lhs = q_ab_hessian(qs, entry, &s.scale(&a)?, &t.scale(&b)?, &h.scale(&c)?)?;
            let factor = a.pow(2).try_mul(&b.pow(2))?.try_mul(&c.pow(2))?;
            if lhs == q.scale(&factor)? {
                *passes.get_mut("scaling").unwrap() += 1;
            } else {
                fail("scaling", &mut failures);
            }
        }

        // determinant law, including singular substitutions
        {
            let (a, b, c, d2) = (
                field.random(&mut rng),
                field.random(&mut rng),
                field.random(&mut rng),
                field.random(&mut rng),
            );
            let s2 = s.scale(&a)?.try_add(&t.scale(&b)?)?;
            let t2 = s.scale(&c)?.try_add(&t.scale(&d2)?)?;
            let lhs = q_ab_hessian(qs, entry, &s2, &t2, &h)?;
            let det = a.try_mul(&d2)?.try_sub(&b.try_mul(&c)?)?;
            if lhs == q.scale(&det.pow(2))? {
                *passes.get_mut("determinant").unwrap() += 1;
            } else {
                fail("determinant", &mut failures);
            }
        }

        // polarization in the middle slot:
        // Q(s, a t + b u, h) = (a^2 - a b) Q(s,t,h) + (b^2 - a b) Q(s,u,h)
        //                      + a b Q(s, t+u, h)
        {
            let u = model.random_form(entry.ell, &mut rng)?;
            let (a, b) = (field.random(&mut rng), field.random(&mut rng));
            let target = t.scale(&a)?.try_add(&u.scale(&b)?)?;
            let lhs = q_ab_hessian(qs, entry, &s, &target, &h)?;
            let ab = a.try_mul(&b)?;
            let c1 = a.pow(2).try_sub(&ab)?;
            let c2 = b.pow(2).try_sub(&ab)?;
            let q_u = q_ab_hessian(qs, entry, &s, &u, &h)?;
            let q_tu = q_ab_hessian(qs, entry, &s, &t.try_add(&u)?, &h)?;
            let rhs = combo(&[(&c1, &q), (&c2, &q_u), (&ab, &q_tu)])?;
            if lhs == rhs {
                *passes.get_mut("polarization-t").unwrap() += 1;
            } else {
                fail("polarization-t", &mut failures);
            }
        }

        // polarization in the last slot
        {
            let g = model.random_form(entry.b_power, &mut rng)?;
            let (a, b) = (field.random(&mut rng), field.random(&mut rng));
            let target = g.scale(&a)?.try_add(&h.scale(&b)?)?;
            let lhs = q_ab_hessian(qs, entry, &s, &t, &target)?;
            let ab = a.try_mul(&b)?;
            let c1 = a.pow(2).try_sub(&ab)?;
            let c2 = b.pow(2).try_sub(&ab)?;
            let q_g = q_ab_hessian(qs, entry, &s, &t, &g)?;
            let q_gh = q_ab_hessian(qs, entry, &s, &t, &g.try_add(&h)?)?;
            let rhs = combo(&[(&c1, &q_g), (&c2, &q), (&ab, &q_gh)])?;
            if lhs == rhs {
                *passes.get_mut("polarization-h").unwrap() += 1;
            } else {
                fail("polarization-h", &mut failures);
            }
        }

        // expansion identities in the middle slot for 3 and 4 summands:
        // Q(s, t_1 + ... + t_k, h) = sum_{i<j} Q(s, t_i + t_j, h)
        //                            - (k - 2) sum_i Q(s, t_i, h)
        for (name, k) in [("expansion-t3", 3usize), ("expansion-t4", 4)] {
            let ts: Vec<MultiPoly> = (0..k)
                .map(|_| model.random_form(entry.ell, &mut rng))
                .collect::<Result<_, _>>()?;
            let mut total = MultiPoly::zero(field, n + 1);
            for ti in &ts {
                total = total.try_add(ti)?;
            }
            let lhs = q_ab_hessian(qs, entry, &s, &total, &h)?;
            let mut rhs: Option<SymmetricForm> = None;
            for i in 0..k {
                for j in i + 1..k {
                    let term = q_ab_hessian(qs, entry, &s, &ts[i].try_add(&ts[j])?, &h)?;
                    rhs = Some(match rhs {
                        None => term,
                        Some(a) => a.try_add(&term)?,
                    });
                }
            }
            let km2 = field.from_i64(k as i64 - 2).neg();
            let mut rhs = rhs.unwrap();
            for ti in &ts {
                let term = q_ab_hessian(qs, entry, &s, ti, &h)?.scale(&km2)?;
                rhs = rhs.try_add(&term)?;
            }
            if lhs == rhs {
                *passes.get_mut(name).unwrap() += 1;
            } else {
                fail(name, &mut failures);
            }
        }

        // expansion identities in the last slot for 3 and 4 summands
        for (name, k) in [("expansion-h3", 3usize), ("expansion-h4", 4)] {
            let gs: Vec<MultiPoly> = (0..k)
                .map(|_| model.random_form(entry.b_power, &mut rng))
                .collect::<Result<_, _>>()?;
            let mut total = MultiPoly::zero(field, n + 1);
            for gi in &gs {
                total = total.try_add(gi)?;
            }
            let lhs = q_ab_hessian(qs, entry, &s, &t, &total)?;
            let mut rhs: Option<SymmetricForm> = None;
            for i in 0..k {
                for j in i + 1..k {
                    let term = q_ab_hessian(qs, entry, &s, &t, &gs[i].try_add(&gs[j])?)?;
                    rhs = Some(match rhs {
                        None => term,
                        Some(a) => a.try_add(&term)?,
                    });
                }
            }
            let km2 = field.from_i64(k as i64 - 2).neg();
            let mut rhs = rhs.unwrap();
            for gi in &gs {
                let term = q_ab_hessian(qs, entry, &s, &t, gi)?.scale(&km2)?;
                rhs = rhs.try_add(&term)?;
            }
            if lhs == rhs {
                *passes.get_mut(name).unwrap() += 1;
            } else {
                fail(name, &mut failures);
            }
        }
    }
    Ok(IdentityReport {
        instance: format!("pn({},{})/{}", n, d, field),
        trials_per_identity: trials,
        passes,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::EmbeddingModel;
    use crate::field::FieldSpec;
    use rand::SeedableRng;

    fn conic_space(field: FieldSpec) -> QuadricSpace {
        let model = EmbeddingModel::veronese(field, 1, 2).unwrap();
        QuadricSpace::of_model(&model).unwrap()
    }

    #[test]
    fn conic_construction_is_the_basis_quadric() {
        // s = u, t = v, h = 1 gives z0 z2 - z1^2, coordinate 1.
        let f = FieldSpec::rational();
        let qs = conic_space(f);
        let entry = qs.model().sigma_list().unwrap()[0];
        let u = MultiPoly::variable(f, 2, 0);
        let v = MultiPoly::variable(f, 2, 1);
        let one = MultiPoly::one(f, 2);
        let q = q_ab(&qs, entry, &u, &v, &one).unwrap();
        assert_eq!(q.coords, vec![f.one()]);
        assert_eq!(q.hessian, qs.basis()[0]);
    }

    #[test]
    fn degenerate_inputs_give_zero() {
        let f = FieldSpec::prime(7).unwrap();
        let qs = conic_space(f);
        let entry = qs.model().sigma_list().unwrap()[0];
        let u = MultiPoly::variable(f, 2, 0);
        let one = MultiPoly::one(f, 2);
        let zero = MultiPoly::zero(f, 2);
        // t = s
        let q = q_ab(&qs, entry, &u, &u, &one).unwrap();
        assert!(q.is_zero());
        // h = 0
        let q = q_ab(&qs, entry, &u, &MultiPoly::variable(f, 2, 1), &zero).unwrap();
        assert!(q.is_zero());
        // t = 3 s
        let q = q_ab(&qs, entry, &u, &u.scale(&f.from_i64(3)).unwrap(), &one).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn degree_validation() {
        let f = FieldSpec::prime(7).unwrap();
        let qs = conic_space(f);
        let entry = qs.model().sigma_list().unwrap()[0];
        let u = MultiPoly::variable(f, 2, 0);
        let bad = u.pow(2);
        assert!(matches!(
            q_ab(&qs, entry, &bad, &u, &MultiPoly::one(f, 2)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn vanishing_characterization_exhaustive_on_the_conic() {
        // Over F_3 check: Q(s,t,h) = 0 iff <s,t> is at most 1-dimensional or
        // h = 0, over all parameter triples.
        let f = FieldSpec::prime(3).unwrap();
        let qs = conic_space(f);
        let entry = qs.model().sigma_list().unwrap()[0];
        let scalars: Vec<Scalar> = (0..3).map(|i| f.from_i64(i)).collect();
        for s0 in 0..3usize {
            for s1 in 0..3usize {
                for t0 in 0..3usize {
                    for t1 in 0..3usize {
                        for h0 in 0..3usize {
                            let mut s = MultiPoly::zero(f, 2);
                            s.add_term(crate::poly::Monomial(vec![1, 0]), scalars[s0].clone())
                                .unwrap();
                            s.add_term(crate::poly::Monomial(vec![0, 1]), scalars[s1].clone())
                                .unwrap();
                            let mut t = MultiPoly::zero(f, 2);
                            t.add_term(crate::poly::Monomial(vec![1, 0]), scalars[t0].clone())
                                .unwrap();
                            t.add_term(crate::poly::Monomial(vec![0, 1]), scalars[t1].clone())
                                .unwrap();
                            let h = MultiPoly::constant(f, 2, scalars[h0].clone()).unwrap();
                            let q = q_ab(&qs, entry, &s, &t, &h).unwrap();
                            let span2 = if s.is_zero() || t.is_zero() {
                                false
                            } else {
                                span_dimension(&qs, 1, &[&s, &t]).unwrap() == 2
                            };
                            assert_eq!(q.is_zero(), !(span2 && !h.is_zero()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rank_is_at_most_three_and_generically_three() {
        let f = FieldSpec::prime(11).unwrap();
        let model = EmbeddingModel::veronese(f, 1, 4).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let entries = model.sigma_list().unwrap();
        let mut exactly3 = 0;
        for trial in 0..120 {
            let entry = entries[trial % entries.len()];
            let (s, t, h) = random_params(&qs, entry, &mut rng).unwrap();
            let q = q_ab(&qs, entry, &s, &t, &h).unwrap();
            let rank = q.hessian.form_rank();
            assert!(rank <= 3);
            // rank is exactly 3 whenever the three linear forms are independent
            let d = 4;
            let ssh = s.pow(2).try_mul(&h).unwrap();
            let tth = t.pow(2).try_mul(&h).unwrap();
            let sth = s.try_mul(&t).unwrap().try_mul(&h).unwrap();
            if span_dimension(&qs, d, &[&ssh, &tth, &sth]).unwrap() == 3 {
                assert_eq!(rank, 3);
                exactly3 += 1;
            }
        }
        assert!(exactly3 > 100);
    }

    #[test]
    fn identity_suite_on_two_models() {
        for (n, d) in [(1usize, 4usize), (2, 2)] {
            let f = FieldSpec::prime(11).unwrap();
            let model = EmbeddingModel::veronese(f, n, d).unwrap();
            let qs = QuadricSpace::of_model(&model).unwrap();
            let report = identity_suite(&qs, 25, 0).unwrap();
            assert!(report.all_passed(), "failures: {:?}", report.failures);
        }
        // and over the rationals
        let f = FieldSpec::rational();
        let model = EmbeddingModel::veronese(f, 1, 4).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let report = identity_suite(&qs, 5, 1).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures);
    }
}
