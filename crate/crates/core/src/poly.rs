//! Sparse multivariate polynomials over an exact field, keyed by exponent
//! vectors. Monomials are ordered graded-lexicographically (total degree
//! first, then earlier variables weigh more), which fixes the text format and
//! all leading-term conventions.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::Error;
use std::collections::BTreeMap;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given total degree in `arity` variables, listed in
/// descending graded-lex order (so `u^d`, `u^{d-1}v`, ..., `v^d` for two
/// variables).
pub fn monomials_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; arity];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if arity == 0 {
        if degree == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

/// Sparse multivariate polynomial. Invariants: no stored zero coefficients,
/// every exponent vector has the declared arity, all coefficients share one
/// field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    field: FieldSpec,
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, arity: usize) -> Self {
        MultiPoly {
            field,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, arity: usize, c: Scalar) -> Result<Self, Error> {
        if c.field() != field {
            return Err(Error::FieldMismatch);
        }
        let mut p = Self::zero(field, arity);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; arity]), c);
        }
        Ok(p)
    }

    pub fn one(field: FieldSpec, arity: usize) -> Self {
        Self::constant(field, arity, field.one()).unwrap()
    }

    pub fn variable(field: FieldSpec, arity: usize, index: usize) -> Self {
        let mut e = vec![0u32; arity];
        e[index] = 1;
        let mut p = Self::zero(field, arity);
        p.terms.insert(Monomial(e), field.one());
        p
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: Scalar) -> Result<Self, Error> {
        if c.field() != field {
            return Err(Error::FieldMismatch);
        }
        let arity = m.0.len();
        let mut p = Self::zero(field, arity);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    pub fn from_terms(
        field: FieldSpec,
        arity: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, Error> {
        let mut p = Self::zero(field, arity);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<(), Error> {
        if m.0.len() != self.arity {
            return Err(Error::ArityMismatch(m.0.len(), self.arity));
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().try_add(&c)?;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        if self.terms.keys().all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Scale so the graded-lex leading coefficient is 1; returns the removed
    /// unit. Zero stays zero with unit 1.
    pub fn monic(&self) -> (MultiPoly, Scalar) {
        match self.leading() {
            None => (self.clone(), self.field.one()),
            Some((_, lc)) => {
                let unit = lc.clone();
                (self.scale(&unit.inv().unwrap()).unwrap(), unit)
            }
        }
    }

    fn check_compat(&self, other: &MultiPoly) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Result<MultiPoly, Error> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(Self::zero(self.field, self.arity));
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.try_mul(c)?;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.field, self.arity);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_term(m1.mul(m2), c1.try_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.field, self.arity);
        for _ in 0..e {
            out = out.try_mul(self).unwrap();
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, Error> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch(point.len(), self.arity));
        }
        if point.iter().any(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        // power tables per variable
        let maxes: Vec<u32> = (0..self.arity)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let mut pows: Vec<Vec<Scalar>> = Vec::with_capacity(self.arity);
        for (i, &mx) in maxes.iter().enumerate() {
            let mut row = Vec::with_capacity(mx as usize + 1);
            row.push(self.field.one());
            for e in 1..=mx {
                let prev = row[(e - 1) as usize].clone();
                row.push(prev.try_mul(&point[i])?);
            }
            pows.push(row);
        }
        let mut acc = self.field.zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&pows[i][e as usize])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for variable `i`. The images must share arity
    /// and field among themselves.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, Error> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch(images.len(), self.arity));
        }
        let out_arity = images.first().map(|p| p.arity).unwrap_or(0);
        for im in images {
            if im.arity != out_arity {
                return Err(Error::ArityMismatch(im.arity, out_arity));
            }
            if im.field != self.field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut out = Self::zero(self.field, out_arity);
        for (m, c) in self.terms.iter() {
            let mut t = Self::constant(self.field, out_arity, c.clone())?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[i].pow(e))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Apply the invertible linear change of variables `z_i -> sum_j M[i][j]
    /// z_j`.
    pub fn linear_substitute(&self, change: &DenseMatrix) -> Result<MultiPoly, Error> {
        if change.rows() != self.arity || change.cols() != self.arity {
            return Err(Error::DimMismatch);
        }
        if change.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if change.rank() != self.arity {
            return Err(Error::Singular);
        }
        let images: Vec<MultiPoly> = (0..self.arity)
            .map(|i| {
                let mut p = Self::zero(self.field, self.arity);
                for j in 0..self.arity {
                    let mut e = vec![0u32; self.arity];
                    e[j] = 1;
                    p.add_term(Monomial(e), change[(i, j)].clone()).unwrap();
                }
                p
            })
            .collect();
        self.compose(&images)
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(self.field, self.arity);
        for (m, c) in self.terms.iter() {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            let factor = self.field.from_i64(e as i64);
            out.add_term(m2, c.try_mul(&factor).unwrap()).unwrap();
        }
        out
    }

    /// Per-block maximal degrees, `blocks` giving the size of each contiguous
    /// variable block.
    pub fn block_degrees(&self, blocks: &[usize]) -> Vec<u32> {
        let mut out = vec![0u32; blocks.len()];
        for m in self.terms.keys() {
            let mut start = 0;
            for (bi, &len) in blocks.iter().enumerate() {
                let d: u32 = m.0[start..start + len].iter().sum();
                out[bi] = out[bi].max(d);
                start += len;
            }
        }
        out
    }

    pub fn promote(&self, to: FieldSpec) -> Result<MultiPoly, Error> {
        let mut out = Self::zero(to, self.arity);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), c.promote(to)?)?;
        }
        Ok(out)
    }

    /// Deterministic text form, largest monomial first: `2*x0^2*x1 + 1/2*x2`.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.arity);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let cs = format!("{}", c);
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names[i].to_string()
                        } else {
                            format!("{}^{}", names[i], e)
                        }
                    })
                    .collect();
            let piece = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else if cs.starts_with('-')
                && cs[1..].chars().all(|ch| ch.is_ascii_digit())
                && cs[1..] == *"1"
            {
                format!("-{}", mono.join("*"))
            } else if cs.contains('+') || cs.contains('w') {
                format!("({})*{}", cs, mono.join("*"))
            } else {
                format!("{}*{}", cs, mono.join("*"))
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

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.arity).map(|i| format!("x{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_with(&refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn graded_lex_order() {
        let u2 = Monomial(vec![2, 0]);
        let uv = Monomial(vec![1, 1]);
        let v2 = Monomial(vec![0, 2]);
        let u3 = Monomial(vec![3, 0]);
        assert!(u3 > u2);
        assert!(u2 > uv);
        assert!(uv > v2);
        assert_eq!(monomials_of_degree(2, 2), vec![u2, uv, v2]);
    }

    #[test]
    fn product_of_conjugates() {
        // (u+v)(u-v) = u^2 - v^2
        let f = q();
        let u = MultiPoly::variable(f, 2, 0);
        let v = MultiPoly::variable(f, 2, 1);
        let lhs = u
            .try_add(&v)
            .unwrap()
            .try_mul(&u.try_sub(&v).unwrap())
            .unwrap();
        let rhs = u.pow(2).try_sub(&v.pow(2)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(format!("{}", lhs), "x0^2 - x1^2");
    }

    #[test]
    fn eval_example() {
        // u^3 v at (2, 3) over Q -> 24
        let f = q();
        let u = MultiPoly::variable(f, 2, 0);
        let v = MultiPoly::variable(f, 2, 1);
        let p = u.pow(3).try_mul(&v).unwrap();
        assert_eq!(
            p.eval(&[f.from_i64(2), f.from_i64(3)]).unwrap(),
            f.from_i64(24)
        );
    }

    #[test]
    fn linear_substitution_expands_square() {
        // u -> u + v turns u^2 into u^2 + 2uv + v^2
        let f = q();
        let u = MultiPoly::variable(f, 2, 0);
        let v = MultiPoly::variable(f, 2, 1);
        let change = DenseMatrix::new(f, 2, 2, vec![f.one(), f.one(), f.zero(), f.one()]).unwrap();
        let got = u.pow(2).linear_substitute(&change).unwrap();
        let want = u
            .pow(2)
            .try_add(&u.try_mul(&v).unwrap().scale(&f.from_i64(2)).unwrap())
            .unwrap()
            .try_add(&v.pow(2))
            .unwrap();
        assert_eq!(got, want);
        // singular changes are rejected
        let sing = DenseMatrix::from_fn(f, 2, 2, |_, _| f.one());
        assert_eq!(u.linear_substitute(&sing), Err(Error::Singular));
    }

    #[test]
    fn arity_and_field_mismatches() {
        let a = MultiPoly::variable(fp(5), 2, 0);
        let b = MultiPoly::variable(fp(7), 2, 0);
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        let c = MultiPoly::variable(fp(5), 3, 0);
        assert_eq!(a.try_add(&c), Err(Error::ArityMismatch(2, 3)));
    }

    #[test]
    fn eval_is_a_ring_homomorphism() {
        let f = fp(11);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let mut p = MultiPoly::zero(f, 3);
                for _ in 0..6 {
                    let m = Monomial(vec![
                        rng.gen_range(0..3),
                        rng.gen_range(0..3),
                        rng.gen_range(0..3),
                    ]);
                    p.add_term(m, f.from_i64(rng.gen_range(0..11) as i64))
                        .unwrap();
                }
                p
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let pt: Vec<Scalar> = (0..3)
                .map(|_| f.from_i64(rng.gen_range(0..11) as i64))
                .collect();
            let lhs = a.try_mul(&b).unwrap().eval(&pt).unwrap();
            let rhs = a.eval(&pt).unwrap().try_mul(&b.eval(&pt).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = a.try_add(&b).unwrap().eval(&pt).unwrap();
            let rhs = a.eval(&pt).unwrap().try_add(&b.eval(&pt).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn degree_additivity_under_mul() {
        let f = fp(13);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            let rand_poly = |rng: &mut ChaCha8Rng| loop {
                let mut p = MultiPoly::zero(f, 2);
                for _ in 0..4 {
                    let m = Monomial(vec![rng.gen_range(0..4), rng.gen_range(0..4)]);
                    p.add_term(m, f.from_i64(rng.gen_range(0..13) as i64))
                        .unwrap();
                }
                if !p.is_zero() {
                    return p;
                }
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let prod = a.try_mul(&b).unwrap();
            assert_eq!(
                prod.degree().unwrap(),
                a.degree().unwrap() + b.degree().unwrap()
            );
        }
    }

    #[test]
    fn display_formats() {
        let f = q();
        let u = MultiPoly::variable(f, 2, 0);
        let half = f.from_i64(1).try_div(&f.from_i64(2)).unwrap();
        let p = u
            .pow(2)
            .scale(&half)
            .unwrap()
            .try_sub(&MultiPoly::one(f, 2))
            .unwrap();
        assert_eq!(format!("{}", p), "1/2*x0^2 - 1");
        assert_eq!(p.to_string_with(&["u", "v"]), "1/2*u^2 - 1");
    }
}
