//! Symmetric matrices of quadratic forms, in the doubled-diagonal (Hessian)
//! convention `H[i][j] = d^2 Q / dz_i dz_j`. In characteristic != 2 the rank
//! of the form equals the rank of `H`, and a rank-3 form can be written as
//! `x*y - z^2` for linear forms `x, y, z`, possibly after one quadratic field
//! extension.

use crate::field::{rational_square_class, FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::Error;
use num::BigInt;

/// A quadratic form stored as its Hessian matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricForm {
    mat: DenseMatrix,
}

/// Result of congruence diagonalization: `basis_change^T * H * basis_change`
/// is diagonal with the returned entries.
#[derive(Clone, Debug)]
pub struct CongruenceDiag {
    pub basis_change: DenseMatrix,
    pub diagonal: Vec<Scalar>,
}

/// Outcome of splitting a rank-3 form as `x*y - z^2`.
#[derive(Clone, Debug)]
pub enum Rank3Split {
    /// Linear forms with `x*y - z^2` equal to the input form. `extended` is
    /// set when the forms live in the quadratic extension of the input field.
    Forms {
        x: Vec<Scalar>,
        y: Vec<Scalar>,
        z: Vec<Scalar>,
        extended: bool,
    },
    /// Over the rationals the split may need one or two quadratic extensions;
    /// the squarefree discriminants are reported instead of forms.
    ExtensionRequired { discriminants: Vec<BigInt> },
}

enum Block {
    /// `a * (l . z)^2`
    Diag { a: Scalar, l: Vec<Scalar> },
    /// `(x . z) * (y . z)`
    Pair { x: Vec<Scalar>, y: Vec<Scalar> },
}

impl SymmetricForm {
    pub fn new(mat: DenseMatrix) -> Result<Self, Error> {
        if !mat.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymmetricForm { mat })
    }

    /// Build the Hessian from form coefficients: each `(i, j, c)` is the
    /// coefficient of the monomial `z_i z_j` (with `i <= j`).
    pub fn from_terms(field: FieldSpec, size: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut m = DenseMatrix::zeros(field, size, size);
        for &(i, j, c) in terms {
            let c = field.from_i64(c);
            if i == j {
                m[(i, i)] = m[(i, i)].try_add(&c.try_add(&c).unwrap()).unwrap();
            } else {
                m[(i, j)] = m[(i, j)].try_add(&c).unwrap();
                m[(j, i)] = m[(j, i)].try_add(&c).unwrap();
            }
        }
        SymmetricForm { mat: m }
    }

    /// Hessian of `(v1 . z)(v2 . z) - (v3 . z)^2`.
    pub fn from_product_minus_square(
        v1: &[Scalar],
        v2: &[Scalar],
        v3: &[Scalar],
    ) -> Result<Self, Error> {
        let n = v1.len();
        if v2.len() != n || v3.len() != n {
            return Err(Error::DimMismatch);
        }
        let field = v1
            .iter()
            .chain(v2)
            .chain(v3)
            .map(|s| s.field())
            .next()
            .ok_or(Error::DimMismatch)?;
        let two = field.from_i64(2);
        let m = DenseMatrix::from_fn(field, n, n, |i, j| {
            let a = v1[i].try_mul(&v2[j]).unwrap();
            let b = v2[i].try_mul(&v1[j]).unwrap();
            let c = two.try_mul(&v3[i].try_mul(&v3[j]).unwrap()).unwrap();
            a.try_add(&b).unwrap().try_sub(&c).unwrap()
        });
        Ok(SymmetricForm { mat: m })
    }

    pub fn hessian(&self) -> &DenseMatrix {
        &self.mat
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.mat.field()
    }

    pub fn promote(&self, to: FieldSpec) -> Result<Self, Error> {
        Ok(SymmetricForm {
            mat: self.mat.promote(to)?,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self, Error> {
        let n = self.size();
        let mut m = self.mat.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = m[(i, j)].try_mul(c)?;
            }
        }
        Ok(SymmetricForm { mat: m })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        if self.size() != other.size() {
            return Err(Error::DimMismatch);
        }
        let n = self.size();
        let mut m = self.mat.clone();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = m[(i, j)].try_add(&other.mat[(i, j)])?;
            }
        }
        Ok(SymmetricForm { mat: m })
    }

    pub fn is_zero(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.mat[(i, j)].is_zero()))
    }

    /// Rank of the quadratic form (valid in characteristic != 2).
    pub fn form_rank(&self) -> usize {
        self.mat.rank()
    }

    /// Rank via the minor criterion: the largest `k` with a nonzero `k x k`
    /// minor. Exponential; kept as an independent cross-check for small sizes.
    pub fn rank_by_minors(&self) -> usize {
        let n = self.size();
        assert!(n <= 6, "minor criterion is limited to size <= 6");
        for k in (1..=n).rev() {
            for rows in subsets(n, k) {
                for cols in subsets(n, k) {
                    let sub = DenseMatrix::from_fn(self.field(), k, k, |i, j| {
                        self.mat[(rows[i], cols[j])].clone()
                    });
                    if !sub.det().unwrap().is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    /// Symmetric Gauss: returns `P` and the diagonal of `P^T H P`. Uses only
    /// row+column additions and scalings, so an already-diagonal input gets
    /// the identity change of basis.
    pub fn diagonalize_congruence(&self) -> CongruenceDiag {
        let n = self.size();
        let field = self.field();
        let mut w = self.mat.clone();
        let mut p = DenseMatrix::identity(field, n);
        for i in 0..n {
            if w[(i, i)].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !w[(i, j)].is_zero()) {
                    // Make the diagonal entry nonzero: z_j -> z_j + lambda z_i
                    // for a lambda in {1, 2} (one of the two always works in
                    // characteristic != 2).
                    let mut lambda = field.one();
                    let two_wij = &w[(i, j)] + &w[(i, j)];
                    if (&two_wij + &w[(j, j)]).is_zero() {
                        lambda = field.from_i64(2);
                    }
                    add_col_row(&mut w, i, j, &lambda);
                    add_p_col(&mut p, i, j, &lambda);
                }
            }
            if w[(i, i)].is_zero() {
                continue;
            }
            let inv = w[(i, i)].inv().unwrap();
            for j in i + 1..n {
                if w[(i, j)].is_zero() {
                    continue;
                }
                let f = w[(i, j)].try_mul(&inv).unwrap().neg();
                add_col_row(&mut w, j, i, &f);
                add_p_col(&mut p, j, i, &f);
            }
        }
        let diagonal = (0..n).map(|i| w[(i, i)].clone()).collect();
        CongruenceDiag {
            basis_change: p,
            diagonal,
        }
    }

    /// Decompose the form as a sum of `x*y` blocks and `a*l^2` terms by
    /// completing squares and products in variable order. The blocks sum back
    /// to the form exactly.
    fn block_decompose(&self) -> Vec<Block> {
        let n = self.size();
        let field = self.field();
        let mut w = self.mat.clone();
        let mut blocks = Vec::new();
        let two = field.from_i64(2);
        for i in 0..n {
            if (0..n).all(|k| w[(i, k)].is_zero()) {
                continue;
            }
            if !w[(i, i)].is_zero() {
                // a * (z_i + sum W_ik/W_ii z_k)^2 with a = W_ii / 2
                let a = w[(i, i)].try_div(&two).unwrap();
                let inv = w[(i, i)].inv().unwrap();
                let l: Vec<Scalar> = (0..n).map(|k| w[(i, k)].try_mul(&inv).unwrap()).collect();
                let twoa = w[(i, i)].clone();
                for r in 0..n {
                    for c in 0..n {
                        let t = twoa.try_mul(&l[r].try_mul(&l[c]).unwrap()).unwrap();
                        w[(r, c)] = w[(r, c)].try_sub(&t).unwrap();
                    }
                }
                blocks.push(Block::Diag { a, l });
            } else {
                // 2x2 pivot on {i, j}: extract a product block X*Y with
                // X ~ z_i, Y ~ z_j leading terms.
                let j = (i + 1..n)
                    .find(|&j| !w[(i, j)].is_zero())
                    .expect("nonzero row with zero diagonal has an off-diagonal entry");
                let c = w[(i, j)].clone();
                let cinv = c.inv().unwrap();
                let wjj = w[(j, j)].clone();
                let mut w1 = vec![field.zero(); n];
                let mut w2 = vec![field.zero(); n];
                w1[i] = field.one();
                w2[j] = field.one();
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    // rows of P^{-1} W_IK for P = [[0, c], [c, wjj]]
                    let t1 = w[(j, k)]
                        .try_mul(&cinv)
                        .unwrap()
                        .try_sub(
                            &wjj.try_mul(&w[(i, k)])
                                .unwrap()
                                .try_mul(&cinv)
                                .unwrap()
                                .try_mul(&cinv)
                                .unwrap(),
                        )
                        .unwrap();
                    let t2 = w[(i, k)].try_mul(&cinv).unwrap();
                    w1[k] = t1;
                    w2[k] = t2;
                }
                let half_wjj = wjj.try_div(&two).unwrap();
                let x: Vec<Scalar> = (0..n)
                    .map(|k| {
                        c.try_mul(&w1[k])
                            .unwrap()
                            .try_add(&half_wjj.try_mul(&w2[k]).unwrap())
                            .unwrap()
                    })
                    .collect();
                let y = w2;
                for r in 0..n {
                    for cc in 0..n {
                        let t = x[r]
                            .try_mul(&y[cc])
                            .unwrap()
                            .try_add(&y[r].try_mul(&x[cc]).unwrap())
                            .unwrap();
                        w[(r, cc)] = w[(r, cc)].try_sub(&t).unwrap();
                    }
                }
                blocks.push(Block::Pair { x, y });
            }
            debug_assert!((0..n).all(|k| w[(i, k)].is_zero() && w[(k, i)].is_zero()));
        }
        debug_assert!((0..n).all(|r| (0..n).all(|c| w[(r, c)].is_zero())));
        blocks
    }

    /// Write a rank-3 form as `x*y - z^2`. Over `F_p` the forms may live in
    /// `F_{p^2}` (flagged `extended`); over the rationals an unavoidable
    /// extension is reported with its discriminants instead of forms.
    pub fn rank3_split(&self) -> Result<Rank3Split, Error> {
        let blocks = self.block_decompose();
        let rank: usize = blocks
            .iter()
            .map(|b| match b {
                Block::Pair { .. } => 2,
                Block::Diag { .. } => 1,
            })
            .sum();
        if rank != 3 {
            return Err(Error::RankMismatch(rank));
        }
        let field = self.field();
        let split = match &blocks[..] {
            [Block::Pair { x, y }, Block::Diag { a, l }]
            | [Block::Diag { a, l }, Block::Pair { x, y }] => {
                // x*y + a*l^2: need mu with mu^2 = -a.
                let neg_a = a.neg();
                match neg_a.sqrt() {
                    Some(mu) => Rank3Split::Forms {
                        x: x.clone(),
                        y: y.clone(),
                        z: scale(l, &mu),
                        extended: false,
                    },
                    None => match field {
                        FieldSpec::Prime(_) => {
                            let ext = field.extension()?;
                            let mu = neg_a.promote(ext)?.sqrt().expect("square in F_{p^2}");
                            Rank3Split::Forms {
                                x: promote_vec(x, ext)?,
                                y: promote_vec(y, ext)?,
                                z: scale(&promote_vec(l, ext)?, &mu),
                                extended: true,
                            }
                        }
                        FieldSpec::Rational => Rank3Split::ExtensionRequired {
                            discriminants: vec![square_class(&neg_a)],
                        },
                        FieldSpec::Quadratic(_) => {
                            return Err(Error::Unsupported(
                                "rank-3 split over F_{p^2} would need a degree-4 extension".into(),
                            ))
                        }
                    },
                }
            }
            [Block::Diag { a: a0, l: l0 }, Block::Diag { a: a1, l: l1 }, Block::Diag { a: a2, l: l2 }] =>
            {
                let ds = [(a0, l0), (a1, l1), (a2, l2)];
                // Pairing: two slots form the hyperbolic product, the third
                // supplies -z^2. Try z-slot 2, then 1, then 0.
                let mut found = None;
                for zslot in [2usize, 1, 0] {
                    let (i, j) = match zslot {
                        2 => (0, 1),
                        1 => (0, 2),
                        _ => (1, 2),
                    };
                    let t2 = ds[j].0.try_div(ds[i].0)?.neg();
                    let mu2 = ds[zslot].0.neg();
                    if let (Some(t), Some(mu)) = (t2.sqrt(), mu2.sqrt()) {
                        found = Some(hyperbolic_forms(ds[i], ds[j], ds[zslot], &t, &mu, false));
                        break;
                    }
                }
                match found {
                    Some(f) => f,
                    None => match field {
                        FieldSpec::Prime(_) => {
                            let ext = field.extension()?;
                            let prom = |(a, l): (&Scalar, &Vec<Scalar>)| -> Result<(Scalar, Vec<Scalar>), Error> {
                                Ok((a.promote(ext)?, promote_vec(l, ext)?))
                            };
                            let d0 = prom((ds[0].0, ds[0].1))?;
                            let d1 = prom((ds[1].0, ds[1].1))?;
                            let d2 = prom((ds[2].0, ds[2].1))?;
                            let t =
                                d1.0.try_div(&d0.0)?
                                    .neg()
                                    .sqrt()
                                    .expect("square in F_{p^2}");
                            let mu = d2.0.neg().sqrt().expect("square in F_{p^2}");
                            hyperbolic_forms(
                                (&d0.0, &d0.1),
                                (&d1.0, &d1.1),
                                (&d2.0, &d2.1),
                                &t,
                                &mu,
                                true,
                            )
                        }
                        FieldSpec::Rational => {
                            let mut discs = Vec::new();
                            let t2 = ds[1].0.try_div(ds[0].0)?.neg();
                            let mu2 = ds[2].0.neg();
                            if t2.sqrt().is_none() {
                                discs.push(square_class(&t2));
                            }
                            if mu2.sqrt().is_none() {
                                discs.push(square_class(&mu2));
                            }
                            Rank3Split::ExtensionRequired {
                                discriminants: discs,
                            }
                        }
                        FieldSpec::Quadratic(_) => {
                            return Err(Error::Unsupported(
                                "rank-3 split over F_{p^2} would need a degree-4 extension".into(),
                            ))
                        }
                    },
                }
            }
            _ => unreachable!("rank 3 is one pair plus one square or three squares"),
        };
        if let Rank3Split::Forms { x, y, z, .. } = &split {
            let rebuilt = SymmetricForm::from_product_minus_square(x, y, z)?;
            let original = if x[0].field() == field {
                self.clone()
            } else {
                self.promote(x[0].field())?
            };
            assert_eq!(rebuilt, original, "rank-3 split must reproduce the form");
        }
        Ok(split)
    }
}

/// Congruence column+row operation `z_target += lambda * z_source` applied to
/// the Hessian: `W <- E^T W E` with `E = I + lambda e_source e_target^T`.
fn add_col_row(w: &mut DenseMatrix, target: usize, source: usize, lambda: &Scalar) {
    let n = w.rows();
    for r in 0..n {
        let t = w[(r, source)].try_mul(lambda).unwrap();
        w[(r, target)] = w[(r, target)].try_add(&t).unwrap();
    }
    for c in 0..n {
        let t = w[(source, c)].try_mul(lambda).unwrap();
        w[(target, c)] = w[(target, c)].try_add(&t).unwrap();
    }
}

/// Mirror of [`add_col_row`] on the accumulated basis change `P -> P * E`.
fn add_p_col(p: &mut DenseMatrix, target: usize, source: usize, lambda: &Scalar) {
    let n = p.rows();
    for r in 0..n {
        let t = p[(r, source)].try_mul(lambda).unwrap();
        p[(r, target)] = p[(r, target)].try_add(&t).unwrap();
    }
}

fn square_class(s: &Scalar) -> BigInt {
    match s {
        Scalar::Rational(r) => rational_square_class(r),
        _ => BigInt::from(0),
    }
}

fn scale(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|s| s.try_mul(c).unwrap()).collect()
}

fn promote_vec(v: &[Scalar], to: FieldSpec) -> Result<Vec<Scalar>, Error> {
    v.iter().map(|s| s.promote(to)).collect()
}

/// Build `(x, y, z)` from diagonal slots `a_i l_i^2 + a_j l_j^2 + a_z l_z^2`
/// given `t^2 = -a_j/a_i` and `mu^2 = -a_z`:
/// `x = a_i l_i - a_i t l_j`, `y = l_i + t l_j`, `z = mu l_z`.
fn hyperbolic_forms(
    di: (&Scalar, &Vec<Scalar>),
    dj: (&Scalar, &Vec<Scalar>),
    dz: (&Scalar, &Vec<Scalar>),
    t: &Scalar,
    mu: &Scalar,
    extended: bool,
) -> Rank3Split {
    let (ai, li) = di;
    let (_, lj) = dj;
    let (_, lz) = dz;
    let s = ai.try_mul(t).unwrap().neg();
    let x: Vec<Scalar> = li
        .iter()
        .zip(lj.iter())
        .map(|(a, b)| {
            ai.try_mul(a)
                .unwrap()
                .try_add(&s.try_mul(b).unwrap())
                .unwrap()
        })
        .collect();
    let y: Vec<Scalar> = li
        .iter()
        .zip(lj.iter())
        .map(|(a, b)| a.try_add(&t.try_mul(b).unwrap()).unwrap())
        .collect();
    let z = scale(lz, mu);
    Rank3Split::Forms { x, y, z, extended }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    // Q3 = z2 z4 - z3^2 in five variables.
    fn q3(field: FieldSpec) -> SymmetricForm {
        SymmetricForm::from_terms(field, 5, &[(2, 4, 1), (3, 3, -1)])
    }

    // Q1 = z0 z3 - z1 z2 in five variables.
    fn q1(field: FieldSpec) -> SymmetricForm {
        SymmetricForm::from_terms(field, 5, &[(0, 3, 1), (1, 2, -1)])
    }

    #[test]
    fn hessian_convention_doubles_the_diagonal() {
        let s = SymmetricForm::from_terms(fp(7), 2, &[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(s.hessian()[(0, 0)], fp(7).from_i64(2));
        assert_eq!(s.hessian()[(0, 1)], fp(7).from_i64(1));
    }

    #[test]
    fn form_rank_examples() {
        assert_eq!(q3(fp(7)).form_rank(), 3);
        assert_eq!(q1(fp(7)).form_rank(), 4);
        let zero = SymmetricForm::from_terms(fp(7), 4, &[]);
        assert_eq!(zero.form_rank(), 0);
        assert_eq!(q3(FieldSpec::rational()).form_rank(), 3);
    }

    #[test]
    fn minor_criterion_agrees_with_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = fp(7);
        for _ in 0..40 {
            let mut m = DenseMatrix::zeros(f, 4, 4);
            for i in 0..4 {
                for j in i..4 {
                    let v = f.from_i64(rng.gen_range(0..7) as i64);
                    m[(i, j)] = v.clone();
                    m[(j, i)] = v;
                }
            }
            let s = SymmetricForm::new(m).unwrap();
            assert_eq!(s.form_rank(), s.rank_by_minors());
        }
    }

    #[test]
    fn diagonalize_already_diagonal_is_identity() {
        let f = fp(7);
        let mut m = DenseMatrix::zeros(f, 3, 3);
        m[(1, 1)] = f.from_i64(5);
        let s = SymmetricForm::new(m).unwrap();
        let d = s.diagonalize_congruence();
        assert_eq!(d.basis_change, DenseMatrix::identity(f, 3));
        assert_eq!(d.diagonal[1], f.from_i64(5));
    }

    #[test]
    fn diagonalize_hyperbolic_plane_over_f7() {
        // z0 z1: two nonzero diagonal entries whose product is -1 times a
        // square (apply one symmetric Gauss step by hand to see it).
        let f = fp(7);
        let s = SymmetricForm::from_terms(f, 2, &[(0, 1, 1)]);
        let d = s.diagonalize_congruence();
        let nonzero: Vec<&Scalar> = d.diagonal.iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        let prod = nonzero[0].try_mul(nonzero[1]).unwrap();
        assert!(prod.neg().is_square());
        // and the congruence identity holds
        let pt = d.basis_change.transpose();
        let lhs = pt.mul(s.hessian()).unwrap().mul(&d.basis_change).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j {
                    d.diagonal[i].clone()
                } else {
                    f.zero()
                };
                assert_eq!(lhs[(i, j)], want);
            }
        }
    }

    #[test]
    fn congruence_diagonal_rank_matches_form_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = fp(11);
        for _ in 0..60 {
            let mut m = DenseMatrix::zeros(f, 5, 5);
            for i in 0..5 {
                for j in i..5 {
                    let v = f.from_i64(rng.gen_range(0..11) as i64);
                    m[(i, j)] = v.clone();
                    m[(j, i)] = v;
                }
            }
            let s = SymmetricForm::new(m).unwrap();
            let d = s.diagonalize_congruence();
            let nz = d.diagonal.iter().filter(|x| !x.is_zero()).count();
            assert_eq!(nz, s.form_rank());
            let pt = d.basis_change.transpose();
            let lhs = pt.mul(s.hessian()).unwrap().mul(&d.basis_change).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    if i != j {
                        assert!(lhs[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn rank3_split_of_scroll_minor_is_literal() {
        // z2 z4 - z3^2 splits as (z2, z4, z3) with no extension.
        let f = fp(7);
        match q3(f).rank3_split().unwrap() {
            Rank3Split::Forms { x, y, z, extended } => {
                assert!(!extended);
                let e = |i: usize| {
                    let mut v = vec![f.zero(); 5];
                    v[i] = f.one();
                    v
                };
                assert_eq!(x, e(2));
                assert_eq!(y, e(4));
                assert_eq!(z, e(3));
            }
            _ => panic!("expected forms"),
        }
        // Same over the rationals.
        match q3(FieldSpec::rational()).rank3_split().unwrap() {
            Rank3Split::Forms { extended, .. } => assert!(!extended),
            _ => panic!("expected forms"),
        }
    }

    #[test]
    fn rank3_split_of_diagonal_form() {
        // a^2 - b^2 - c^2 over F_7 splits without needing sqrt(-1).
        let f = fp(7);
        let s = SymmetricForm::from_terms(f, 3, &[(0, 0, 1), (1, 1, -1), (2, 2, -1)]);
        match s.rank3_split().unwrap() {
            Rank3Split::Forms { x, y, z, extended } => {
                assert!(!extended);
                // x = a - b, y = a + b, z = c under the deterministic pairing
                let one = f.one();
                assert_eq!(x, vec![one.clone(), one.neg(), f.zero()]);
                assert_eq!(y, vec![one.clone(), one.clone(), f.zero()]);
                assert_eq!(z, vec![f.zero(), f.zero(), one]);
            }
            _ => panic!("expected forms"),
        }
    }

    #[test]
    fn rank3_split_rejects_other_ranks() {
        let err = q1(fp(7)).rank3_split().unwrap_err();
        assert_eq!(err, Error::RankMismatch(4));
    }

    #[test]
    fn rank3_split_extension_over_prime_field() {
        // x^2 + y^2 + z^2 over F_7: -1 is a non-square, so the split extends.
        let f = fp(7);
        let s = SymmetricForm::from_terms(f, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, 1)]);
        match s.rank3_split().unwrap() {
            Rank3Split::Forms { extended, x, .. } => {
                assert!(extended);
                assert_eq!(x[0].field(), FieldSpec::quadratic(7).unwrap());
            }
            _ => panic!("expected extended forms"),
        }
    }

    #[test]
    fn rank3_split_extension_required_over_q() {
        // x^2 + y^2 - 3 z^2 needs two quadratic extensions over Q.
        let f = FieldSpec::rational();
        let s = SymmetricForm::from_terms(f, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, -3)]);
        match s.rank3_split().unwrap() {
            Rank3Split::ExtensionRequired { discriminants } => {
                assert_eq!(discriminants, vec![BigInt::from(-1), BigInt::from(3)]);
            }
            _ => panic!("expected extension report"),
        }
    }

    #[test]
    fn random_rank3_forms_split_and_reassemble() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = fp(11);
        let mut split_count = 0;
        for _ in 0..200 {
            let n = 5;
            let draw = |rng: &mut ChaCha8Rng| -> Vec<Scalar> {
                (0..n)
                    .map(|_| f.from_i64(rng.gen_range(0..11) as i64))
                    .collect()
            };
            let (v1, v2, v3) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let s = SymmetricForm::from_product_minus_square(&v1, &v2, &v3).unwrap();
            if s.form_rank() != 3 {
                continue;
            }
            // reconstruction identity is asserted inside rank3_split
            match s.rank3_split().unwrap() {
                Rank3Split::Forms { .. } => split_count += 1,
                _ => panic!("finite fields always split"),
            }
        }
        assert!(split_count > 100);
    }
}
