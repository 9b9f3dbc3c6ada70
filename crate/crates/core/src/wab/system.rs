//! The symbolic side of the construction: treating the coordinates of
//! `(s, t, h)` as variable blocks `x_0..x_p, y_0..y_p, z_0..z_q`, the quadric
//! `Q(s, t, h)` expands as `G_0 Q_0 + ... + G_m Q_m` with uniquely determined
//! coefficient polynomials `G_j` of multidegree (2, 2, 2). Invariant theory
//! places each `G_j` in the span of `p_ik p_jl z_a z_b` with
//! `p_ij = x_i y_j - x_j y_i` the Plucker coordinates of the line `<s, t>`;
//! this module computes that expression exactly and re-verifies it by
//! expansion.

use crate::embed::{upper_index, upper_len, QuadricSpace, SigmaEntry};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::poly::{Monomial, MultiPoly};
use crate::wab::q_ab;
use crate::Error;
use num::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Cap on `dim Sym^2(x-block) * dim Sym^2(z-block)`.
pub const SYMBOLIC_BUDGET: usize = 5000;

/// One basis product `p_{i j} p_{k l} z_a z_b` of the invariant block.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PluckerMono {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub z: (usize, usize),
}

/// An exact expression of one coefficient polynomial in Plucker monomials.
#[derive(Clone, Debug)]
pub struct PluckerCertificate {
    pub terms: Vec<(PluckerMono, Scalar)>,
}

/// The coefficient system of one decomposition entry.
#[derive(Clone, Debug)]
pub struct WabSystem {
    entry: SigmaEntry,
    /// sizes of the x, y, z variable blocks
    blocks: [usize; 3],
    gpolys: Vec<MultiPoly>,
    certificates: Option<Vec<PluckerCertificate>>,
}

impl WabSystem {
    pub fn entry(&self) -> SigmaEntry {
        self.entry
    }

    pub fn blocks(&self) -> [usize; 3] {
        self.blocks
    }

    pub fn arity(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn gpolys(&self) -> &[MultiPoly] {
        &self.gpolys
    }

    pub fn certificates(&self) -> Option<&[PluckerCertificate]> {
        self.certificates.as_deref()
    }

    /// Variable names `x0..xp, y0..yp, z0..zq` for display.
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.arity());
        for (block, letter) in self.blocks.iter().zip(["x", "y", "z"]) {
            for i in 0..*block {
                names.push(format!("{}{}", letter, i));
            }
        }
        names
    }

    /// Evaluate every `G_j` at a parameter point (x-block, y-block, z-block
    /// concatenated).
    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        self.gpolys.iter().map(|g| g.eval(point)).collect()
    }
}

/// Expand `Q(s, t, h)` symbolically over the parameter blocks and solve for
/// the coefficient polynomials `G_j`.
pub fn coefficient_polys(qs: &QuadricSpace, entry: SigmaEntry) -> Result<WabSystem, Error> {
    let model = qs.model();
    let (n, d) = model
        .veronese_params()
        .ok_or_else(|| Error::Unsupported("the symbolic system needs section bases".into()))?;
    let field = qs.field();
    let (p, q) = (entry.p, entry.q);
    let budget = (p + 1) * (p + 2) / 2 * ((q + 1) * (q + 2) / 2);
    if budget > SYMBOLIC_BUDGET {
        return Err(Error::BudgetExceeded {
            points: budget as u128,
            cap: SYMBOLIC_BUDGET as u128,
        });
    }
    let params = 2 * (p + 1) + (q + 1);
    let arity = params + (n + 1);

    // s, t, h with symbolic coordinates, living in a combined arena of
    // parameter variables followed by model variables.
    let mut s = MultiPoly::zero(field, arity);
    let mut t = MultiPoly::zero(field, arity);
    let mut h = MultiPoly::zero(field, arity);
    let sbasis = model.basis(entry.ell)?.to_vec();
    let hbasis = model.basis(entry.b_power)?.to_vec();
    for (i, m) in sbasis.iter().enumerate() {
        let mut es = vec![0u32; arity];
        es[i] = 1;
        es[params..].copy_from_slice(&m.0);
        s.add_term(Monomial(es), field.one())?;
        let mut et = vec![0u32; arity];
        et[p + 1 + i] = 1;
        et[params..].copy_from_slice(&m.0);
        t.add_term(Monomial(et), field.one())?;
    }
    for (a, m) in hbasis.iter().enumerate() {
        let mut eh = vec![0u32; arity];
        eh[2 * (p + 1) + a] = 1;
        eh[params..].copy_from_slice(&m.0);
        h.add_term(Monomial(eh), field.one())?;
    }

    let ssh = s.try_mul(&s)?.try_mul(&h)?;
    let tth = t.try_mul(&t)?.try_mul(&h)?;
    let sth = s.try_mul(&t)?.try_mul(&h)?;

    // Collect each product by model monomial: coordinate vectors of
    // parameter polynomials.
    let collect = |prod: &MultiPoly| -> Result<Vec<MultiPoly>, Error> {
        let mut out = vec![MultiPoly::zero(field, params); model.r() + 1];
        let index = model.basis(d)?;
        let index: BTreeMap<&[u32], usize> = index
            .iter()
            .enumerate()
            .map(|(i, m)| (m.0.as_slice(), i))
            .collect();
        for (m, c) in prod.terms() {
            let (par, mo) = m.0.split_at(params);
            let slot = *index.get(mo).ok_or(Error::DegreeMismatch {
                expected: d,
                found: m.degree() as usize,
            })?;
            out[slot].add_term(Monomial(par.to_vec()), c.clone())?;
        }
        Ok(out)
    };
    let v1 = collect(&ssh)?;
    let v2 = collect(&tth)?;
    let v3 = collect(&sth)?;

    // Upper-triangle Hessian entries as parameter polynomials.
    let size = model.r() + 1;
    let mut upper = Vec::with_capacity(upper_len(size));
    for i in 0..size {
        for j in i..size {
            let mut e = v1[i].try_mul(&v2[j])?;
            e = e.try_add(&v2[i].try_mul(&v1[j])?)?;
            let two = field.from_i64(2);
            let sq = v3[i].try_mul(&v3[j])?.scale(&two)?;
            e = e.try_sub(&sq)?;
            debug_assert_eq!(upper.len(), upper_index(i, j, size));
            upper.push(e);
        }
    }
    let gpolys = qs.coordinates_of_symbolic(&upper)?;
    // Multidegree bound (2, 2, 2) over the three blocks.
    let blocks = [p + 1, p + 1, q + 1];
    for g in &gpolys {
        let degs = g.block_degrees(&blocks);
        if degs.iter().any(|&dg| dg > 2) {
            return Err(Error::TheoremViolation(format!(
                "coefficient polynomial exceeds multidegree (2,2,2): got {:?}",
                degs
            )));
        }
    }
    Ok(WabSystem {
        entry,
        blocks,
        gpolys,
        certificates: None,
    })
}

fn plucker_products(p: usize, q: usize) -> Vec<PluckerMono> {
    let mut pairs = Vec::new();
    for i in 0..=p {
        for j in i + 1..=p {
            pairs.push((i, j));
        }
    }
    let mut out = Vec::new();
    for (a, &pa) in pairs.iter().enumerate() {
        for &pb in &pairs[a..] {
            for za in 0..=q {
                for zb in za..=q {
                    out.push(PluckerMono {
                        first: pa,
                        second: pb,
                        z: (za, zb),
                    });
                }
            }
        }
    }
    out
}

fn expand_plucker_mono(
    mono: &PluckerMono,
    blocks: [usize; 3],
    field: FieldSpec,
) -> Result<MultiPoly, Error> {
    let p1 = blocks[0];
    let arity: usize = blocks.iter().sum();
    let xvar = |i: usize| MultiPoly::variable(field, arity, i);
    let yvar = |i: usize| MultiPoly::variable(field, arity, p1 + i);
    let zvar = |i: usize| MultiPoly::variable(field, arity, 2 * p1 + i);
    let plucker = |(i, j): (usize, usize)| -> Result<MultiPoly, Error> {
        xvar(i)
            .try_mul(&yvar(j))?
            .try_sub(&xvar(j).try_mul(&yvar(i))?)
    };
    let mut out = plucker(mono.first)?.try_mul(&plucker(mono.second)?)?;
    out = out.try_mul(&zvar(mono.z.0).try_mul(&zvar(mono.z.1))?)?;
    Ok(out)
}

/// Express every `G_j` exactly in the basis of Plucker monomials, store the
/// expressions, and re-verify them by expansion. Failure to solve would
/// falsify the invariant-theoretic description and is reported as a theorem
/// violation, never silently.
pub fn plucker_certify(system: &mut WabSystem, qs: &QuadricSpace) -> Result<(), Error> {
    let field = qs.field();
    let entry = system.entry;
    let products = plucker_products(entry.p, entry.q);
    let expansions: Vec<MultiPoly> = products
        .iter()
        .map(|m| expand_plucker_mono(m, system.blocks, field))
        .collect::<Result<_, _>>()?;

    // Shared monomial support of the columns and the targets.
    let mut support: BTreeMap<Monomial, usize> = BTreeMap::new();
    for poly in expansions.iter().chain(system.gpolys.iter()) {
        for (m, _) in poly.terms() {
            let next = support.len();
            support.entry(m.clone()).or_insert(next);
        }
    }
    let rows = support.len();
    let ncols = expansions.len();
    let nrhs = system.gpolys.len();
    let mut mat = DenseMatrix::zeros(field, rows, ncols + nrhs);
    for (c, poly) in expansions.iter().enumerate() {
        for (m, coeff) in poly.terms() {
            mat[(support[m], c)] = coeff.clone();
        }
    }
    for (k, poly) in system.gpolys.iter().enumerate() {
        for (m, coeff) in poly.terms() {
            mat[(support[m], ncols + k)] = coeff.clone();
        }
    }
    let red = mat.rref();
    // Any pivot in the right block means some G_j is outside the span.
    if red.pivots.iter().any(|&c| c >= ncols) {
        return Err(Error::TheoremViolation(
            "coefficient polynomial is not an invariant of the expected multidegree".into(),
        ));
    }
    let mut certificates = Vec::with_capacity(nrhs);
    for k in 0..nrhs {
        let mut terms = Vec::new();
        for (row, &pc) in red.pivots.iter().enumerate() {
            let c = red.matrix[(row, ncols + k)].clone();
            if !c.is_zero() {
                terms.push((products[pc], c));
            }
        }
        // re-verify by expansion
        let mut rebuilt = MultiPoly::zero(field, system.arity());
        for (mono, c) in &terms {
            let e = expand_plucker_mono(mono, system.blocks, field)?.scale(c)?;
            rebuilt = rebuilt.try_add(&e)?;
        }
        if rebuilt != system.gpolys[k] {
            return Err(Error::TheoremViolation(
                "certificate does not re-expand to the coefficient polynomial".into(),
            ));
        }
        certificates.push(PluckerCertificate { terms });
    }
    system.certificates = Some(certificates);
    Ok(())
}

/// Draw a parameter point with `<s, t>` two-dimensional and `h != 0`.
fn random_point<R: Rng>(system: &WabSystem, field: FieldSpec, rng: &mut R) -> Vec<Scalar> {
    let [bx, _, bz] = system.blocks;
    loop {
        let point: Vec<Scalar> = (0..system.arity()).map(|_| field.random(rng)).collect();
        let xy = DenseMatrix::from_fn(field, 2, bx, |r, c| point[r * bx + c].clone());
        if xy.rank() != 2 {
            continue;
        }
        if point[2 * bx..2 * bx + bz].iter().all(|c| c.is_zero()) {
            continue;
        }
        return point;
    }
}

/// Check that the `G_j` have no common zero on the locus where `<s, t>` is
/// two-dimensional and `h != 0`. Returns the witness point on failure.
pub fn basepoint_free_check(
    system: &WabSystem,
    qs: &QuadricSpace,
    trials: u64,
    seed: u64,
) -> Result<(bool, Option<Vec<Scalar>>), Error> {
    let field = qs.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let point = random_point(system, field, &mut rng);
        let values = system.eval(&point)?;
        if values.iter().all(|v| v.is_zero()) {
            return Ok((false, Some(point)));
        }
        // Coherence with the numeric path on a few trials: evaluating the
        // G_j equals the coordinates of the numerically built quadric.
        if trial < 3 {
            let (s, t, h) = point_to_sections(system, qs, &point)?;
            let direct = q_ab(qs, system.entry, &s, &t, &h)?;
            if direct.coords != values {
                return Err(Error::TheoremViolation(
                    "symbolic coefficients disagree with the numeric construction".into(),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Rebuild `(s, t, h)` from a parameter point of the system.
pub fn point_to_sections(
    system: &WabSystem,
    qs: &QuadricSpace,
    point: &[Scalar],
) -> Result<(MultiPoly, MultiPoly, MultiPoly), Error> {
    let model = qs.model();
    let entry = system.entry;
    let [bx, by, bz] = system.blocks;
    let field = qs.field();
    let build = |basis_degree: usize, coords: &[Scalar]| -> Result<MultiPoly, Error> {
        let basis = model.basis(basis_degree)?;
        let arity = basis.first().map(|m| m.0.len()).unwrap_or(0);
        let mut out = MultiPoly::zero(field, arity);
        for (m, c) in basis.iter().zip(coords) {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    };
    let s = build(entry.ell, &point[..bx])?;
    let t = build(entry.ell, &point[bx..bx + by])?;
    let h = build(entry.b_power, &point[bx + by..bx + by + bz])?;
    Ok((s, t, h))
}

/// Dimension of the image variety: symbolic Jacobian of the `G_j`, evaluated
/// at up to five random parameter points; the cone rank drops by one on
/// projectivizing. The field should be large (p > 4d) to dodge accidental
/// rank drops.
pub fn image_dim(system: &WabSystem, qs: &QuadricSpace, seed: u64) -> Result<usize, Error> {
    let field = qs.field();
    let arity = system.arity();
    let jac: Vec<Vec<MultiPoly>> = system
        .gpolys
        .iter()
        .map(|g| (0..arity).map(|v| g.partial_derivative(v)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0usize;
    for _ in 0..5 {
        let point = random_point(system, field, &mut rng);
        let m = DenseMatrix::from_fn(field, system.gpolys.len(), arity, |i, j| {
            jac[i][j].eval(&point).unwrap()
        });
        best = best.max(m.rank());
        if best > 2 * system.entry.p + system.entry.q {
            break;
        }
    }
    if best == 0 {
        return Err(Error::TheoremViolation(
            "Jacobian vanished at five random points".into(),
        ));
    }
    Ok(best - 1)
}

fn big_binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut out = BigUint::from(1u32);
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

fn catalan(n: usize) -> BigUint {
    // recurrence C_0 = 1, C_{k+1} = sum_i C_i C_{k-i}
    let mut c = vec![BigUint::from(1u32)];
    for k in 0..n {
        let mut next = BigUint::from(0u32);
        for i in 0..=k {
            next += &c[i] * &c[k - i];
        }
        c.push(next);
    }
    c[n].clone()
}

/// Degree of the image variety for parameters `(p, q)`:
/// `2^(2p+q-2) / p * C(2p+q-2, 2p-2) * C(2p-2, p-1)`, cross-checked against
/// the independent product `2^(2p+q-2) * C(2p+q-2, q) * Catalan(p-1)`.
pub fn degree_formula(p: usize, q: usize) -> Result<BigUint, Error> {
    if p < 1 {
        return Err(Error::Unsupported("need p >= 1".into()));
    }
    let e = 2 * p + q - 2;
    let pow2 = BigUint::from(2u32).pow(e as u32);
    let closed_num = &pow2 * big_binom(e, 2 * p - 2) * big_binom(2 * p - 2, p - 1);
    let pbig = BigUint::from(p);
    if (&closed_num % &pbig) != BigUint::from(0u32) {
        return Err(Error::TheoremViolation(
            "closed-form degree is not divisible by p".into(),
        ));
    }
    let closed = closed_num / pbig;
    let product = &pow2 * big_binom(e, q) * catalan(p - 1);
    if closed != product {
        return Err(Error::TheoremViolation(format!(
            "degree routes disagree: {} vs {}",
            closed, product
        )));
    }
    Ok(closed)
}

impl PluckerCertificate {
    /// Readable form like `p01^2*z0^2 - 2*p01*p02*z0*z1`.
    pub fn to_display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (mono, c) in &self.terms {
            let pfmt = |(i, j): (usize, usize)| format!("p{}{}", i, j);
            let mut factors: Vec<String> = Vec::new();
            if mono.first == mono.second {
                factors.push(format!("{}^2", pfmt(mono.first)));
            } else {
                factors.push(pfmt(mono.first));
                factors.push(pfmt(mono.second));
            }
            if mono.z.0 == mono.z.1 {
                factors.push(format!("z{}^2", mono.z.0));
            } else {
                factors.push(format!("z{}*z{}", mono.z.0, mono.z.1));
            }
            let body = factors.join("*");
            let cs = format!("{}", c);
            let piece = if c.is_one() {
                body
            } else if cs == "-1" {
                format!("-{}", body)
            } else {
                format!("{}*{}", cs, body)
            };
            if out.is_empty() {
                out = piece;
            } else if let Some(rest) = piece.strip_prefix('-') {
                out = format!("{} - {}", out, rest);
            } else {
                out = format!("{} + {}", out, piece);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::EmbeddingModel;
    use crate::field::FieldSpec;

    fn system_for(field: FieldSpec, n: usize, d: usize, ell: usize) -> (QuadricSpace, WabSystem) {
        let model = EmbeddingModel::veronese(field, n, d).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let entry = model
            .sigma_list()
            .unwrap()
            .into_iter()
            .find(|e| e.ell == ell)
            .unwrap();
        let system = coefficient_polys(&qs, entry).unwrap();
        (qs, system)
    }

    #[test]
    fn conic_coefficient_is_the_squared_plucker_coordinate() {
        let f = FieldSpec::rational();
        let (qs, mut system) = system_for(f, 1, 2, 1);
        assert_eq!(system.gpolys().len(), 1);
        // G_0 = (x0 y1 - x1 y0)^2 z0^2
        let expected = expand_plucker_mono(
            &PluckerMono {
                first: (0, 1),
                second: (0, 1),
                z: (0, 0),
            },
            system.blocks(),
            f,
        )
        .unwrap();
        assert_eq!(system.gpolys()[0], expected);
        plucker_certify(&mut system, &qs).unwrap();
        let certs = system.certificates().unwrap();
        assert_eq!(certs[0].terms.len(), 1);
        assert!(certs[0].terms[0].1.is_one());
        assert_eq!(certs[0].to_display(), "p01^2*z0^2");
    }

    #[test]
    fn veronese_surface_system_certifies() {
        let f = FieldSpec::rational();
        let (qs, mut system) = system_for(f, 2, 2, 1);
        assert_eq!(system.gpolys().len(), 6);
        for g in system.gpolys() {
            let degs = g.block_degrees(&system.blocks());
            assert_eq!(degs[0], 2);
            assert_eq!(degs[1], 2);
            assert_eq!(degs[2], 2);
        }
        plucker_certify(&mut system, &qs).unwrap();
        assert!(system.certificates().is_some());
    }

    #[test]
    fn quartic_line_system_has_full_multidegree() {
        let f = FieldSpec::rational();
        let (qs, mut system) = system_for(f, 1, 4, 1);
        assert_eq!(system.gpolys().len(), 6);
        for g in system.gpolys() {
            assert_eq!(g.block_degrees(&system.blocks()), vec![2, 2, 2]);
        }
        plucker_certify(&mut system, &qs).unwrap();
    }

    #[test]
    fn sl2_invariance_spot_check() {
        // substitute (x, y) -> (a x + b y, c x + d y) with a d - b c = 1 and
        // evaluate: the G_j are unchanged.
        use rand::SeedableRng;
        let f = FieldSpec::prime(11).unwrap();
        let (_qs, system) = system_for(f, 1, 4, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let [bx, by, bz] = system.blocks();
        for _ in 0..40 {
            // random SL2 element
            let (a, b, c) = (
                f.random(&mut rng),
                f.random(&mut rng),
                f.random_nonzero(&mut rng),
            );
            // d = (1 + b c) / a if a != 0, else pick a = 0 case: a d - b c = 1
            let (a, d) = if a.is_zero() {
                // 0*d - b*c = 1 -> b = -1/c, any d
                (a, f.random(&mut rng))
            } else {
                let d = f
                    .one()
                    .try_add(&b.try_mul(&c).unwrap())
                    .unwrap()
                    .try_div(&a)
                    .unwrap();
                (a, d)
            };
            let b = if a.is_zero() {
                c.inv().unwrap().neg()
            } else {
                b
            };
            let det = a
                .try_mul(&d)
                .unwrap()
                .try_sub(&b.try_mul(&c).unwrap())
                .unwrap();
            assert!(det.is_one());
            let point: Vec<Scalar> = (0..system.arity()).map(|_| f.random(&mut rng)).collect();
            let mut moved = point.clone();
            for i in 0..bx {
                let xi = &point[i];
                let yi = &point[bx + i];
                moved[i] = a
                    .try_mul(xi)
                    .unwrap()
                    .try_add(&b.try_mul(yi).unwrap())
                    .unwrap();
                moved[bx + i] = c
                    .try_mul(xi)
                    .unwrap()
                    .try_add(&d.try_mul(yi).unwrap())
                    .unwrap();
            }
            let _ = (by, bz);
            assert_eq!(system.eval(&point).unwrap(), system.eval(&moved).unwrap());
        }
    }

    #[test]
    fn basepoint_freeness_and_negative_controls() {
        let f = FieldSpec::prime(11).unwrap();
        let (qs, system) = system_for(f, 1, 4, 1);
        let (ok, witness) = basepoint_free_check(&system, &qs, 100, 7).unwrap();
        assert!(ok, "witness: {:?}", witness);
        // negative control: t = 2 s kills every G_j
        let field = f;
        let point = vec![
            field.from_i64(3),
            field.from_i64(5),
            field.from_i64(6),
            field.from_i64(10),
            field.from_i64(1),
            field.from_i64(4),
            field.from_i64(9),
        ];
        // x = (3, 5), y = 2x = (6, 10), z arbitrary nonzero
        let values = system.eval(&point).unwrap();
        assert!(values.iter().all(|v| v.is_zero()));
        // negative control: h = 0
        let point = vec![
            field.from_i64(3),
            field.from_i64(5),
            field.from_i64(1),
            field.from_i64(0),
            field.zero(),
            field.zero(),
            field.zero(),
        ];
        let values = system.eval(&point).unwrap();
        assert!(values.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn image_dimensions_match_the_formula() {
        let f = FieldSpec::prime(101).unwrap();
        for (n, d, ell) in [(2usize, 2usize, 1usize), (1, 4, 1), (1, 4, 2)] {
            let (qs, system) = system_for(f, n, d, ell);
            let dim = image_dim(&system, &qs, 0).unwrap();
            let e = system.entry();
            assert_eq!(dim, 2 * e.p + e.q - 2, "(n,d,ell)=({},{},{})", n, d, ell);
        }
    }

    #[test]
    fn degree_formula_values() {
        assert_eq!(degree_formula(1, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(degree_formula(2, 0).unwrap(), BigUint::from(4u32));
        assert_eq!(degree_formula(1, 2).unwrap(), BigUint::from(4u32));
        for p in 1..=6 {
            for q in 0..=6 {
                degree_formula(p, q).unwrap();
            }
        }
    }
}
