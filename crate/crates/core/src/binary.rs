//! Factorization services for homogeneous binary forms: gcd, Yun squarefree
//! decomposition, splitting off the odd-multiplicity part, and exact square
//! roots. These are the computational content of the divisor-parity step in
//! the rank-3 membership construction on the line.
//!
//! Forms are treated through their dehomogenizations at the second variable;
//! the power of `v` dividing a form is tracked separately and restored on the
//! way out. Everything is normalized monic in the graded-lex largest monomial
//! with units reported explicitly.

use crate::field::{FieldSpec, Scalar};
use crate::poly::{Monomial, MultiPoly};
use crate::Error;

/// `f = unit * prod factor_i ^ multiplicity_i` with squarefree, pairwise
/// coprime, monic factors, listed by ascending multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Scalar,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self) -> MultiPoly {
        let field = self.unit.field();
        let arity = self.factors.first().map(|(f, _)| f.arity()).unwrap_or(2);
        let mut out = MultiPoly::constant(field, arity, self.unit.clone()).unwrap();
        for (f, e) in &self.factors {
            out = out.try_mul(&f.pow(*e)).unwrap();
        }
        out
    }
}

/// `f = unit * s^2 * h` with `h` the squarefree product of odd-multiplicity
/// primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddEvenSplit {
    pub h: MultiPoly,
    pub s: MultiPoly,
    pub unit: Scalar,
}

/// Dense dehomogenized view of a binary form: the polynomial `f(x, 1)` plus
/// the exact power of `v` dividing `f`.
struct DenseView {
    field: FieldSpec,
    /// coefficients of f(x,1), ascending in x
    coeffs: Vec<Scalar>,
    v_power: u32,
}

fn binary_degree(f: &MultiPoly) -> Result<u32, Error> {
    if f.arity() != 2 {
        return Err(Error::NotBinaryForm);
    }
    match f.homogeneous_degree() {
        Some(d) => Ok(d),
        None => {
            if f.is_zero() {
                Ok(0)
            } else {
                Err(Error::NotBinaryForm)
            }
        }
    }
}

fn to_dense(f: &MultiPoly) -> Result<DenseView, Error> {
    let d = binary_degree(f)?;
    let field = f.field();
    let mut by_u = vec![field.zero(); d as usize + 1];
    let mut min_v = d;
    for (m, c) in f.terms() {
        by_u[m.0[0] as usize] = c.clone();
        min_v = min_v.min(m.0[1]);
    }
    if f.is_zero() {
        return Ok(DenseView {
            field,
            coeffs: vec![],
            v_power: 0,
        });
    }
    // f = v^min_v * g with g(x,1) of degree d - min_v
    let deg = (d - min_v) as usize;
    let coeffs = by_u[..=deg].to_vec();
    Ok(DenseView {
        field,
        coeffs,
        v_power: min_v,
    })
}

fn from_dense(view: &DenseView, extra_v: u32) -> MultiPoly {
    let deg = if view.coeffs.is_empty() {
        return MultiPoly::zero(view.field, 2);
    } else {
        view.coeffs.len() as u32 - 1
    };
    let mut out = MultiPoly::zero(view.field, 2);
    for (i, c) in view.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out.add_term(
            Monomial(vec![i as u32, deg - i as u32 + view.v_power + extra_v]),
            c.clone(),
        )
        .unwrap();
    }
    out
}

// --- dense univariate helpers (ascending coefficients, exact) ---

fn uni_deg(c: &[Scalar]) -> Option<usize> {
    c.iter().rposition(|x| !x.is_zero())
}

fn uni_trim(mut c: Vec<Scalar>) -> Vec<Scalar> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

fn uni_monic(c: &[Scalar]) -> (Vec<Scalar>, Scalar) {
    match uni_deg(c) {
        None => (
            vec![],
            c.first()
                .map(|s| s.field().one())
                .unwrap_or_else(|| panic!("empty")),
        ),
        Some(d) => {
            let lc = c[d].clone();
            let inv = lc.inv().unwrap();
            (
                c[..=d].iter().map(|x| x.try_mul(&inv).unwrap()).collect(),
                lc,
            )
        }
    }
}

fn uni_divrem(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> (Vec<Scalar>, Vec<Scalar>) {
    let db = uni_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quo = vec![field.zero(); a.len().saturating_sub(db)];
    let binv = b[db].inv().unwrap();
    while let Some(dr) = uni_deg(&rem) {
        if dr < db {
            break;
        }
        let f = rem[dr].try_mul(&binv).unwrap();
        let shift = dr - db;
        for i in 0..=db {
            let t = b[i].try_mul(&f).unwrap();
            rem[i + shift] = rem[i + shift].try_sub(&t).unwrap();
        }
        quo[shift] = f;
    }
    (uni_trim(quo), uni_trim(rem))
}

fn uni_gcd(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut x = uni_trim(a.to_vec());
    let mut y = uni_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y, field);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        uni_monic(&x).0
    }
}

fn uni_derivative(a: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(c.try_mul(&field.from_i64(i as i64)).unwrap());
    }
    uni_trim(out)
}

fn uni_sub(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for k in 0..a.len().max(b.len()) {
        let x = a.get(k).cloned().unwrap_or_else(|| field.zero());
        let y = b.get(k).cloned().unwrap_or_else(|| field.zero());
        out.push(x.try_sub(&y).unwrap());
    }
    uni_trim(out)
}

fn guard_characteristic(field: FieldSpec, deg: u32) -> Result<(), Error> {
    let p = field.characteristic();
    if p != 0 && p <= deg as u64 {
        return Err(Error::CharTooSmall {
            p,
            need: deg as u64,
        });
    }
    Ok(())
}

/// Monic gcd of two binary forms under the dehomogenization-at-v convention.
/// `gcd(f, 0)` is the monic normalization of `f`.
pub fn binary_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, Error> {
    binary_degree(f)?;
    binary_degree(g)?;
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    if f.is_zero() {
        return Ok(g.monic().0);
    }
    if g.is_zero() {
        return Ok(f.monic().0);
    }
    let fv = to_dense(f)?;
    let gv = to_dense(g)?;
    let d = uni_gcd(&fv.coeffs, &gv.coeffs, f.field());
    let view = DenseView {
        field: f.field(),
        coeffs: d,
        v_power: fv.v_power.min(gv.v_power),
    };
    Ok(from_dense(&view, 0))
}

/// Yun's squarefree decomposition of a nonzero binary form. Requires
/// characteristic 0 or `p > deg f`.
pub fn squarefree(f: &MultiPoly) -> Result<SquarefreeDecomposition, Error> {
    let d = binary_degree(f)?;
    if f.is_zero() {
        return Err(Error::NotBinaryForm);
    }
    guard_characteristic(f.field(), d)?;
    let field = f.field();
    let view = to_dense(f)?;
    let (monic, unit) = uni_monic(&view.coeffs);
    let mut factors: Vec<(Vec<Scalar>, u32)> = Vec::new();
    if uni_deg(&monic).unwrap_or(0) > 0 {
        // Yun: a_i = gcd(b_i, d_i), b_{i+1} = b_i/a_i, d_{i+1} = d_i/a_i - b_{i+1}'
        let fp = uni_derivative(&monic, field);
        let a0 = uni_gcd(&monic, &fp, field);
        let (mut b, _) = uni_divrem(&monic, &a0, field);
        let (c, _) = uni_divrem(&fp, &a0, field);
        let mut dpoly = uni_sub(&c, &uni_derivative(&b, field), field);
        let mut i = 1u32;
        while uni_deg(&b).unwrap_or(0) > 0 {
            let a = uni_gcd(&b, &dpoly, field);
            if uni_deg(&a).unwrap_or(0) > 0 {
                factors.push((a.clone(), i));
            }
            let (b2, _) = uni_divrem(&b, &a, field);
            let (c2, _) = uni_divrem(&dpoly, &a, field);
            dpoly = uni_sub(&c2, &uni_derivative(&b2, field), field);
            b = b2;
            i += 1;
        }
    }
    let mut out: Vec<(MultiPoly, u32)> = factors
        .into_iter()
        .map(|(c, e)| {
            let v = DenseView {
                field,
                coeffs: c,
                v_power: 0,
            };
            (from_dense(&v, 0), e)
        })
        .collect();
    if view.v_power > 0 {
        // fold the v-power into the factor of equal multiplicity, if any
        let v = MultiPoly::variable(field, 2, 1);
        if let Some(slot) = out.iter_mut().find(|(_, e)| *e == view.v_power) {
            slot.0 = slot.0.try_mul(&v)?;
        } else {
            out.push((v, view.v_power));
        }
    }
    out.sort_by_key(|(_, e)| *e);
    Ok(SquarefreeDecomposition { unit, factors: out })
}

/// Split `f = unit * s^2 * h` with `h` squarefree (the odd part).
pub fn odd_even_split(f: &MultiPoly) -> Result<OddEvenSplit, Error> {
    let dec = squarefree(f)?;
    let field = f.field();
    let mut h = MultiPoly::one(field, 2);
    let mut s = MultiPoly::one(field, 2);
    for (factor, e) in &dec.factors {
        if e % 2 == 1 {
            h = h.try_mul(factor)?;
        }
        s = s.try_mul(&factor.pow(e / 2))?;
    }
    debug_assert_eq!(s.pow(2).try_mul(&h).unwrap().scale(&dec.unit).unwrap(), *f);
    Ok(OddEvenSplit {
        h,
        s,
        unit: dec.unit,
    })
}

/// Exact square root of a binary form, if the form is a square (including
/// its unit). Zero has root zero.
pub fn exact_sqrt(f: &MultiPoly) -> Result<Option<MultiPoly>, Error> {
    binary_degree(f)?;
    if f.is_zero() {
        return Ok(Some(f.clone()));
    }
    let dec = squarefree(f)?;
    if dec.factors.iter().any(|(_, e)| e % 2 == 1) {
        return Ok(None);
    }
    let Some(root_unit) = dec.unit.sqrt() else {
        return Ok(None);
    };
    let mut out = MultiPoly::constant(f.field(), 2, root_unit)?;
    for (factor, e) in &dec.factors {
        out = out.try_mul(&factor.pow(e / 2))?;
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn u(field: FieldSpec) -> MultiPoly {
        MultiPoly::variable(field, 2, 0)
    }

    fn v(field: FieldSpec) -> MultiPoly {
        MultiPoly::variable(field, 2, 1)
    }

    #[test]
    fn gcd_of_monomials() {
        let f = q();
        let a = u(f).pow(2).try_mul(&v(f)).unwrap();
        let b = u(f).try_mul(&v(f).pow(2)).unwrap();
        assert_eq!(binary_gcd(&a, &b).unwrap(), u(f).try_mul(&v(f)).unwrap());
    }

    #[test]
    fn gcd_of_difference_of_powers() {
        // gcd(u^4 - v^4, u^2 - v^2) = u^2 - v^2 (two Euclid steps by hand)
        let f = q();
        let a = u(f).pow(4).try_sub(&v(f).pow(4)).unwrap();
        let b = u(f).pow(2).try_sub(&v(f).pow(2)).unwrap();
        assert_eq!(binary_gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let f = q();
        let a = u(f).pow(2).scale(&f.from_i64(3)).unwrap();
        let z = MultiPoly::zero(f, 2);
        assert_eq!(binary_gcd(&a, &z).unwrap(), u(f).pow(2));
        assert_eq!(binary_gcd(&z, &z).unwrap(), z);
    }

    #[test]
    fn gcd_divides_both_inputs() {
        use rand::{Rng, SeedableRng};
        let field = FieldSpec::prime(11).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let rand_form = |rng: &mut rand_chacha::ChaCha8Rng, d: u32| loop {
                let mut p = MultiPoly::zero(field, 2);
                for i in 0..=d {
                    p.add_term(
                        Monomial(vec![d - i, i]),
                        field.from_i64(rng.gen_range(0..11) as i64),
                    )
                    .unwrap();
                }
                if !p.is_zero() {
                    return p;
                }
            };
            let c = rand_form(&mut rng, 2);
            let a = rand_form(&mut rng, 2).try_mul(&c).unwrap();
            let b = rand_form(&mut rng, 3).try_mul(&c).unwrap();
            let g = binary_gcd(&a, &b).unwrap();
            // c divides the gcd, and the gcd divides both inputs exactly
            for target in [&a, &b] {
                let tv = to_dense(target).unwrap();
                let gv = to_dense(&g).unwrap();
                let (_, r) = uni_divrem(&tv.coeffs, &gv.coeffs, field);
                assert!(r.is_empty());
                assert!(tv.v_power >= gv.v_power);
            }
            let cv = to_dense(&c).unwrap();
            let gv = to_dense(&g).unwrap();
            let (_, r) = uni_divrem(&gv.coeffs, &cv.coeffs, field);
            assert!(r.is_empty());
        }
    }

    #[test]
    fn squarefree_pure_power() {
        let f = q();
        let dec = squarefree(&u(f).pow(4)).unwrap();
        assert_eq!(dec.factors, vec![(u(f), 4)]);
        assert!(dec.unit.is_one());
    }

    #[test]
    fn squarefree_mixed_monomial() {
        let f = q();
        let input = u(f).pow(3).try_mul(&v(f).pow(2)).unwrap();
        let dec = squarefree(&input).unwrap();
        assert_eq!(dec.factors, vec![(v(f), 2), (u(f), 3)]);
        assert_eq!(dec.reassemble(), input);
    }

    #[test]
    fn squarefree_yun_example() {
        // (u^2+v^2)^2 (u+v) -> [(u+v, 1), (u^2+v^2, 2)]
        let f = q();
        let a = u(f).pow(2).try_add(&v(f).pow(2)).unwrap();
        let b = u(f).try_add(&v(f)).unwrap();
        let input = a.pow(2).try_mul(&b).unwrap();
        let dec = squarefree(&input).unwrap();
        assert_eq!(dec.factors, vec![(b, 1), (a, 2)]);
        assert_eq!(dec.reassemble(), input);
    }

    #[test]
    fn characteristic_guard() {
        let f5 = FieldSpec::prime(5).unwrap();
        let input = u(f5).pow(6);
        assert_eq!(
            squarefree(&input).unwrap_err(),
            Error::CharTooSmall { p: 5, need: 6 }
        );
    }

    #[test]
    fn odd_even_examples() {
        let f = q();
        // u^4 -> h = 1, s = u^2
        let sp = odd_even_split(&u(f).pow(4)).unwrap();
        assert_eq!(sp.h, MultiPoly::one(f, 2));
        assert_eq!(sp.s, u(f).pow(2));
        // u^3 v -> h = uv, s = u
        let sp = odd_even_split(&u(f).pow(3).try_mul(&v(f)).unwrap()).unwrap();
        assert_eq!(sp.h, u(f).try_mul(&v(f)).unwrap());
        assert_eq!(sp.s, u(f));
        // (u+v)^2 (u-v)^5 -> h = u-v, s = (u+v)(u-v)^2
        let a = u(f).try_add(&v(f)).unwrap();
        let b = u(f).try_sub(&v(f)).unwrap();
        let input = a.pow(2).try_mul(&b.pow(5)).unwrap();
        let sp = odd_even_split(&input).unwrap();
        assert_eq!(sp.h, b);
        assert_eq!(sp.s, a.try_mul(&b.pow(2)).unwrap());
        let back = sp.s.pow(2).try_mul(&sp.h).unwrap().scale(&sp.unit).unwrap();
        assert_eq!(back, input);
    }

    #[test]
    fn exact_sqrt_examples() {
        let f = q();
        let uv = u(f).try_mul(&v(f)).unwrap();
        assert_eq!(exact_sqrt(&uv.pow(2)).unwrap(), Some(uv));
        assert_eq!(
            exact_sqrt(&u(f).pow(3).try_mul(&v(f)).unwrap()).unwrap(),
            None
        );
        // 4 (u+v)^2 -> 2 (u+v)
        let a = u(f).try_add(&v(f)).unwrap();
        let input = a.pow(2).scale(&f.from_i64(4)).unwrap();
        assert_eq!(
            exact_sqrt(&input).unwrap(),
            Some(a.scale(&f.from_i64(2)).unwrap())
        );
        // 2 (u+v)^2 is not a square times a square unit over Q
        let input = a.pow(2).scale(&f.from_i64(2)).unwrap();
        assert_eq!(exact_sqrt(&input).unwrap(), None);
    }

    #[test]
    fn squarefree_over_extension_field() {
        let fe = FieldSpec::quadratic(11).unwrap();
        let w = fe.ext_element().unwrap();
        // (u + w v)^2 (u - w v) has factors over F_{121} only
        let a = u(fe).try_add(&v(fe).scale(&w).unwrap()).unwrap();
        let b = u(fe).try_sub(&v(fe).scale(&w).unwrap()).unwrap();
        let input = a.pow(2).try_mul(&b).unwrap();
        let dec = squarefree(&input).unwrap();
        assert_eq!(dec.reassemble(), input);
        assert_eq!(dec.factors.len(), 2);
        let sp = odd_even_split(&input).unwrap();
        assert_eq!(sp.h, b);
        assert_eq!(sp.s, a);
    }
}
