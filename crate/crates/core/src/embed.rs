//! Models of a linearly normal embedding `(X, L)`: indexed section bases of
//! the needed line-bundle powers, multiplication maps, the space of quadrics
//! through the image, and the enumeration of decompositions `L = A^2 (x) B`
//! when the Picard group is generated by one bundle.
//!
//! Two kinds of model are supported: Veronese embeddings of projective space
//! (section bases are monomials, multiplication is exponent addition) and a
//! hardcoded quintic elliptic space curve whose ideal is spanned by five
//! explicit quadrics.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::poly::{monomials_of_degree, Monomial, MultiPoly};
use crate::quadform::SymmetricForm;
use crate::Error;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

/// Upper bound on `h^0(L)`; keeps the symmetric-square kernels desk-sized.
pub const MAX_SECTIONS: usize = 36;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k.min(n - k) {
        out = out * (n - i) / (i + 1);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    /// `(P^n, O(d))` embedded by all degree-`d` monomials.
    Veronese { n: usize, d: usize },
    /// The quintic elliptic curve fixture in `P^4`.
    EllipticQuintic,
}

/// One decomposition `L = A^ell (x) B` with `h^0(A) >= 2`, `h^0(B) >= 1`;
/// `p = h^0(A) - 1`, `q = h^0(B) - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SigmaEntry {
    pub ell: usize,
    pub b_power: usize,
    pub p: usize,
    pub q: usize,
}

/// Section bases and index maps for every needed power of the embedding
/// bundle. Immutable after construction.
#[derive(Clone, Debug)]
pub struct EmbeddingModel {
    kind: ModelKind,
    field: FieldSpec,
    r: usize,
    bases: BTreeMap<usize, Vec<Monomial>>,
    index: BTreeMap<usize, HashMap<Vec<u32>, usize>>,
}

impl EmbeddingModel {
    /// The Veronese model `(P^n, O(d))` with graded-lex monomial bases for
    /// every degree up to `2d`.
    pub fn veronese(field: FieldSpec, n: usize, d: usize) -> Result<Self, Error> {
        if n < 1 || d < 1 {
            return Err(Error::Unsupported(
                "veronese model needs n >= 1 and d >= 1".into(),
            ));
        }
        let h0 = binom(n + d, n);
        if h0 > MAX_SECTIONS {
            return Err(Error::Unsupported(format!(
                "h0(O({})) = {} exceeds the supported envelope {}",
                d, h0, MAX_SECTIONS
            )));
        }
        let mut bases = BTreeMap::new();
        let mut index = BTreeMap::new();
        for e in 0..=2 * d {
            let list = monomials_of_degree(n + 1, e as u32);
            let map = list
                .iter()
                .enumerate()
                .map(|(i, m)| (m.0.clone(), i))
                .collect();
            bases.insert(e, list);
            index.insert(e, map);
        }
        Ok(EmbeddingModel {
            kind: ModelKind::Veronese { n, d },
            field,
            r: h0 - 1,
            bases,
            index,
        })
    }

    /// Model holding the quintic elliptic curve fixture (no section bases;
    /// the five quadrics are hardcoded). Characteristics 2 and 3 are
    /// rejected.
    pub fn elliptic_quintic(field: FieldSpec) -> Result<Self, Error> {
        match field {
            FieldSpec::Rational => {}
            FieldSpec::Prime(p) | FieldSpec::Quadratic(p) => {
                if p < 5 {
                    return Err(Error::Unsupported(
                        "the elliptic fixture needs characteristic 0 or p >= 5".into(),
                    ));
                }
            }
        }
        Ok(EmbeddingModel {
            kind: ModelKind::EllipticQuintic,
            field,
            r: 4,
            bases: BTreeMap::new(),
            index: BTreeMap::new(),
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Dimension of the ambient projective space: `h^0(L) - 1`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn veronese_params(&self) -> Option<(usize, usize)> {
        match self.kind {
            ModelKind::Veronese { n, d } => Some((n, d)),
            _ => None,
        }
    }

    /// Monomial basis of `H^0(O(e))` in graded-lex order.
    pub fn basis(&self, e: usize) -> Result<&[Monomial], Error> {
        self.bases
            .get(&e)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::Unsupported(format!("no section basis of degree {}", e)))
    }

    pub fn h0(&self, e: usize) -> Result<usize, Error> {
        Ok(self.basis(e)?.len())
    }

    /// Coordinate vector of a homogeneous polynomial of degree `e` in the
    /// section basis of `O(e)`.
    pub fn section_coords(&self, e: usize, f: &MultiPoly) -> Result<Vec<Scalar>, Error> {
        let idx = self
            .index
            .get(&e)
            .ok_or_else(|| Error::Unsupported(format!("no section basis of degree {}", e)))?;
        let mut out = vec![f.field().zero(); self.bases[&e].len()];
        for (m, c) in f.terms() {
            let Some(&i) = idx.get(&m.0) else {
                return Err(Error::DegreeMismatch {
                    expected: e,
                    found: m.degree() as usize,
                });
            };
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// A random homogeneous form of degree `e` in the model variables.
    pub fn random_form<R: Rng>(&self, e: usize, rng: &mut R) -> Result<MultiPoly, Error> {
        let basis = self.basis(e)?;
        let arity = basis.first().map(|m| m.0.len()).unwrap_or(0);
        let mut out = MultiPoly::zero(self.field, arity);
        for m in basis {
            out.add_term(m.clone(), self.field.random(rng))?;
        }
        Ok(out)
    }

    /// All decompositions `O(d) = O(ell)^2 (x) O(d - 2 ell)` with
    /// `1 <= ell <= d/2`. Empty when `d <= 1`.
    pub fn sigma_list(&self) -> Result<Vec<SigmaEntry>, Error> {
        let (n, d) = self
            .veronese_params()
            .ok_or_else(|| Error::Unsupported("sigma enumeration needs Pic = Z".into()))?;
        let mut out = Vec::new();
        for ell in 1..=d / 2 {
            let b_power = d - 2 * ell;
            out.push(SigmaEntry {
                ell,
                b_power,
                p: binom(n + ell, n) - 1,
                q: binom(n + b_power, n) - 1,
            });
        }
        Ok(out)
    }
}

/// A basis of the quadrics through the model, stored as Hessian matrices,
/// together with a precomputed solver expressing any quadric of the span in
/// basis coordinates.
#[derive(Clone, Debug)]
pub struct QuadricSpace {
    model: EmbeddingModel,
    basis: Vec<SymmetricForm>,
    /// upper-triangle coordinates of the basis forms, one column per form
    columns: DenseMatrix,
    pivot_rows: Vec<usize>,
    pivot_inverse: DenseMatrix,
}

/// Row index of the `(i, j)` Hessian entry (with `i <= j`) in the
/// upper-triangle vectorization of a symmetric `(r+1) x (r+1)` matrix.
pub fn upper_index(i: usize, j: usize, size: usize) -> usize {
    debug_assert!(i <= j && j < size);
    i * size - i * (i + 1) / 2 + j
}

pub fn upper_len(size: usize) -> usize {
    size * (size + 1) / 2
}

impl QuadricSpace {
    fn from_basis(model: EmbeddingModel, basis: Vec<SymmetricForm>) -> Result<Self, Error> {
        let field = model.field;
        let size = model.r + 1;
        let rows = upper_len(size);
        let columns = DenseMatrix::from_fn(field, rows, basis.len(), |row, col| {
            let (i, j) = unflatten_upper(row, size);
            basis[col].hessian()[(i, j)].clone()
        });
        let red = columns.rref();
        if red.rank != basis.len() {
            return Err(Error::Unsupported(
                "quadric basis is linearly dependent".into(),
            ));
        }
        // Select one row per pivot giving an invertible square system.
        let mut pivot_rows = Vec::with_capacity(basis.len());
        let mut chosen = DenseMatrix::zeros(field, basis.len(), basis.len());
        {
            // Greedy row selection: rows that increase the rank.
            let mut current: Vec<Vec<Scalar>> = Vec::new();
            for row in 0..rows {
                if pivot_rows.len() == basis.len() {
                    break;
                }
                let cand: Vec<Scalar> = (0..basis.len())
                    .map(|c| columns[(row, c)].clone())
                    .collect();
                let mut stack = current.clone();
                stack.push(cand.clone());
                let m = DenseMatrix::new(field, stack.len(), basis.len(), stack.concat())?;
                if m.rank() == stack.len() {
                    current.push(cand);
                    pivot_rows.push(row);
                }
            }
            if pivot_rows.len() != basis.len() {
                return Err(Error::Unsupported("quadric basis is degenerate".into()));
            }
            for (r, &row) in pivot_rows.iter().enumerate() {
                for c in 0..basis.len() {
                    chosen[(r, c)] = columns[(row, c)].clone();
                }
            }
        }
        let pivot_inverse = chosen.inverse()?;
        Ok(QuadricSpace {
            model,
            basis,
            columns,
            pivot_rows,
            pivot_inverse,
        })
    }

    /// Space spanned by an explicit list of independent quadrics (used by
    /// fixtures and negative controls).
    pub fn of_model_with_basis(
        model: &EmbeddingModel,
        basis: Vec<SymmetricForm>,
    ) -> Result<Self, Error> {
        Self::from_basis(model.clone(), basis)
    }

    /// Kernel of the multiplication map `Sym^2 H^0(L) -> H^0(L^2)`, returned
    /// as quadrics in deterministic echelon order, each scaled so its first
    /// nonzero upper-triangle form coefficient is 1.
    pub fn of_model(model: &EmbeddingModel) -> Result<Self, Error> {
        match model.kind {
            ModelKind::Veronese { d, .. } => {
                let mat = multiplication_matrix(model, d)?;
                let kernel = mat.right_kernel();
                let field = model.field;
                let size = model.r + 1;
                let pairs = sym_pairs(size);
                let basis: Vec<SymmetricForm> = kernel
                    .iter()
                    .map(|v| {
                        let lead = v.iter().find(|c| !c.is_zero()).unwrap();
                        let inv = lead.inv().unwrap();
                        let mut h = DenseMatrix::zeros(field, size, size);
                        for (k, &(i, j)) in pairs.iter().enumerate() {
                            if v[k].is_zero() {
                                continue;
                            }
                            let c = v[k].try_mul(&inv).unwrap();
                            if i == j {
                                h[(i, i)] = c.try_add(&c).unwrap();
                            } else {
                                h[(i, j)] = c.clone();
                                h[(j, i)] = c;
                            }
                        }
                        SymmetricForm::new(h).unwrap()
                    })
                    .collect();
                Self::from_basis(model.clone(), basis)
            }
            ModelKind::EllipticQuintic => {
                let field = model.field;
                let basis = elliptic_quintic_quadrics(field);
                Self::from_basis(model.clone(), basis)
            }
        }
    }

    pub fn model(&self) -> &EmbeddingModel {
        &self.model
    }

    pub fn basis(&self) -> &[SymmetricForm] {
        &self.basis
    }

    /// `m` with `m + 1` the number of basis quadrics.
    pub fn m(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.model.field
    }

    /// Coordinates of a quadric in the basis, or `NotInSpan`.
    pub fn coordinates_of(&self, form: &SymmetricForm) -> Result<Vec<Scalar>, Error> {
        let size = self.model.r + 1;
        if form.size() != size {
            return Err(Error::DimMismatch);
        }
        let rhs: Vec<Scalar> = self
            .pivot_rows
            .iter()
            .map(|&row| {
                let (i, j) = unflatten_upper(row, size);
                form.hessian()[(i, j)].clone()
            })
            .collect();
        let coords = self.pivot_inverse.mul_vec(&rhs)?;
        // Verify the remaining rows: the candidate must match everywhere.
        let full = self.columns.mul_vec(&coords)?;
        for (row, value) in full.iter().enumerate() {
            let (i, j) = unflatten_upper(row, size);
            if value != &form.hessian()[(i, j)] {
                return Err(Error::NotInSpan);
            }
        }
        Ok(coords)
    }

    /// The quadric `sum y_j Q_j` as a symmetric form.
    pub fn combine(&self, y: &[Scalar]) -> Result<SymmetricForm, Error> {
        if y.len() != self.basis.len() {
            return Err(Error::DimMismatch);
        }
        let size = self.model.r + 1;
        let field = self.field();
        let mut h = DenseMatrix::zeros(field, size, size);
        for (k, form) in self.basis.iter().enumerate() {
            if y[k].is_zero() {
                continue;
            }
            for i in 0..size {
                for j in 0..size {
                    let t = form.hessian()[(i, j)].try_mul(&y[k])?;
                    h[(i, j)] = h[(i, j)].try_add(&t)?;
                }
            }
        }
        SymmetricForm::new(h)
    }

    /// Express symbolically-valued Hessian entries (upper triangle, indexed
    /// by [`upper_index`]) in the quadric basis; the coordinates come back as
    /// polynomials in the same variables. Every row is verified, so an entry
    /// system outside the span errors with `NotInSpan`.
    pub fn coordinates_of_symbolic(&self, upper: &[MultiPoly]) -> Result<Vec<MultiPoly>, Error> {
        let size = self.model.r + 1;
        if upper.len() != upper_len(size) {
            return Err(Error::DimMismatch);
        }
        let k = self.basis.len();
        let arity = upper[0].arity();
        let field = self.field();
        let mut coords = Vec::with_capacity(k);
        for j in 0..k {
            let mut acc = MultiPoly::zero(field, arity);
            for (kk, &row) in self.pivot_rows.iter().enumerate() {
                let c = &self.pivot_inverse[(j, kk)];
                if c.is_zero() {
                    continue;
                }
                acc = acc.try_add(&upper[row].scale(c)?)?;
            }
            coords.push(acc);
        }
        for (row, target) in upper.iter().enumerate() {
            let mut acc = MultiPoly::zero(field, arity);
            for (j, coord) in coords.iter().enumerate() {
                let c = &self.columns[(row, j)];
                if c.is_zero() {
                    continue;
                }
                acc = acc.try_add(&coord.scale(c)?)?;
            }
            if &acc != target {
                return Err(Error::NotInSpan);
            }
        }
        Ok(coords)
    }

    /// Base change of every scalar in the space (used to resolve membership
    /// witnesses over the quadratic extension).
    pub fn promote(&self, to: FieldSpec) -> Result<QuadricSpace, Error> {
        let mut model = self.model.clone();
        model.field = to;
        let basis = self
            .basis
            .iter()
            .map(|b| b.promote(to))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QuadricSpace {
            model,
            basis,
            columns: self.columns.promote(to)?,
            pivot_rows: self.pivot_rows.clone(),
            pivot_inverse: self.pivot_inverse.promote(to)?,
        })
    }
}

fn sym_pairs(size: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(upper_len(size));
    for i in 0..size {
        for j in i..size {
            out.push((i, j));
        }
    }
    out
}

fn unflatten_upper(row: usize, size: usize) -> (usize, usize) {
    let mut r = row;
    for i in 0..size {
        let len = size - i;
        if r < len {
            return (i, i + r);
        }
        r -= len;
    }
    unreachable!()
}

/// Matrix of the multiplication map `Sym^2 H^0(O(d)) -> H^0(O(2d))`: one row
/// per degree-`2d` monomial, one column per unordered pair of degree-`d`
/// basis monomials.
pub fn multiplication_matrix(model: &EmbeddingModel, d: usize) -> Result<DenseMatrix, Error> {
    let field = model.field;
    let basis = model.basis(d)?.to_vec();
    let target_index = model
        .index
        .get(&(2 * d))
        .ok_or_else(|| Error::Unsupported("missing target basis".into()))?;
    let rows = model.basis(2 * d)?.len();
    let pairs = sym_pairs(basis.len());
    let mut mat = DenseMatrix::zeros(field, rows, pairs.len());
    for (col, &(i, j)) in pairs.iter().enumerate() {
        let prod = basis[i].mul(&basis[j]);
        let row = target_index[&prod.0];
        mat[(row, col)] = mat[(row, col)].try_add(&field.one())?;
    }
    Ok(mat)
}

/// The five quadrics cutting out the quintic elliptic curve, as Hessians in
/// five variables:
/// `Q1 = z0 z3 - z1 z2`, `Q2 = z0 z4 - z1 z3`, `Q3 = z2 z4 - z3^2`,
/// `Q4 = z0^2 + z0 z2 + z0 z4 + z2^2 + z3 z4`,
/// `Q5 = z0 z1 + z1 z2 + z1 z4 + z2 z3 + z4^2`.
pub fn elliptic_quintic_quadrics(field: FieldSpec) -> Vec<SymmetricForm> {
    vec![
        SymmetricForm::from_terms(field, 5, &[(0, 3, 1), (1, 2, -1)]),
        SymmetricForm::from_terms(field, 5, &[(0, 4, 1), (1, 3, -1)]),
        SymmetricForm::from_terms(field, 5, &[(2, 4, 1), (3, 3, -1)]),
        SymmetricForm::from_terms(
            field,
            5,
            &[(0, 0, 1), (0, 2, 1), (0, 4, 1), (2, 2, 1), (3, 4, 1)],
        ),
        SymmetricForm::from_terms(
            field,
            5,
            &[(0, 1, 1), (1, 2, 1), (1, 4, 1), (2, 3, 1), (4, 4, 1)],
        ),
    ]
}

/// The quadric space of the elliptic fixture plus a point sampler for its
/// curve (sampler available over prime fields).
pub fn fixture_elliptic_quintic(
    field: FieldSpec,
) -> Result<(QuadricSpace, Option<CurveSampler>), Error> {
    let model = EmbeddingModel::elliptic_quintic(field)?;
    let qs = QuadricSpace::of_model(&model)?;
    let sampler = match field {
        FieldSpec::Prime(p) => Some(CurveSampler::new(p)?),
        _ => None,
    };
    Ok((qs, sampler))
}

/// Seeded sampler of rational points of the fixture curve: the curve sits on
/// the scroll `[s x : t x : s^2 y : s t y : t^2 y]` and is cut out there by
/// `s x^2 + (s^2 + t^2) x y + (s^3 + t^3) y^2`; points come from drawing the
/// ruling parameters and solving that quadratic when its discriminant is a
/// square.
#[derive(Clone, Debug)]
pub struct CurveSampler {
    p: u64,
    field: FieldSpec,
}

impl CurveSampler {
    pub fn new(p: u64) -> Result<Self, Error> {
        let field = FieldSpec::prime(p)?;
        if p < 5 {
            return Err(Error::Unsupported(
                "the elliptic fixture needs p >= 5".into(),
            ));
        }
        Ok(CurveSampler { p, field })
    }

    /// Draw up to `count` points of the curve in `P^4`; every returned point
    /// satisfies all five quadrics exactly (asserted). Fewer points are
    /// returned when discriminants keep failing.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<Vec<Scalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = self.field;
        let quadrics = elliptic_quintic_quadrics(f);
        let mut out = Vec::new();
        let mut attempts = 0usize;
        while out.len() < count && attempts < count.max(8) * 40 {
            attempts += 1;
            let s = f.from_i64(rng.gen_range(0..self.p) as i64);
            let t = f.from_i64(rng.gen_range(0..self.p) as i64);
            if s.is_zero() && t.is_zero() {
                continue;
            }
            let s2 = s.try_mul(&s).unwrap();
            let t2 = t.try_mul(&t).unwrap();
            let a = s.clone();
            let b = s2.try_add(&t2).unwrap();
            let c = s
                .try_mul(&s2)
                .unwrap()
                .try_add(&t.try_mul(&t2).unwrap())
                .unwrap();
            // roots (x : y) of a x^2 + b x y + c y^2
            let mut roots: Vec<(Scalar, Scalar)> = Vec::new();
            if a.is_zero() {
                if b.is_zero() {
                    if c.is_zero() {
                        // the whole ruling lies on the curve; pick x = 1, y = 0
                        roots.push((f.one(), f.zero()));
                    }
                } else {
                    // b x y + c y^2 = y (b x + c y)
                    roots.push((f.one(), f.zero()));
                    roots.push((c.try_div(&b).unwrap().neg(), f.one()));
                }
            } else {
                let four = f.from_i64(4);
                let disc = b
                    .try_mul(&b)
                    .unwrap()
                    .try_sub(&four.try_mul(&a.try_mul(&c).unwrap()).unwrap())
                    .unwrap();
                if let Some(root) = disc.sqrt() {
                    let twoa = a.try_add(&a).unwrap();
                    let x1 = b.neg().try_add(&root).unwrap().try_div(&twoa).unwrap();
                    roots.push((x1, f.one()));
                    if !root.is_zero() {
                        let x2 = b.neg().try_sub(&root).unwrap().try_div(&twoa).unwrap();
                        roots.push((x2, f.one()));
                    }
                }
            }
            if roots.is_empty() {
                continue;
            }
            let pick = rng.gen_range(0..roots.len());
            let (x, y) = roots[pick].clone();
            let st = s.try_mul(&t).unwrap();
            let point = vec![
                s.try_mul(&x).unwrap(),
                t.try_mul(&x).unwrap(),
                s2.try_mul(&y).unwrap(),
                st.try_mul(&y).unwrap(),
                t2.try_mul(&y).unwrap(),
            ];
            if point.iter().all(|c| c.is_zero()) {
                continue;
            }
            let point = normalize_projective(&point);
            for q in &quadrics {
                let val = eval_quadric(q, &point);
                assert!(val.is_zero(), "sampled point must satisfy the ideal");
            }
            out.push(point);
        }
        out
    }
}

/// Scale a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_projective(v: &[Scalar]) -> Vec<Scalar> {
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero vector");
    let inv = lead.inv().unwrap();
    v.iter().map(|c| c.try_mul(&inv).unwrap()).collect()
}

/// Evaluate the quadratic form with Hessian `H` at a point: `z^T H z / 2`.
pub fn eval_quadric(form: &SymmetricForm, point: &[Scalar]) -> Scalar {
    let h = form.hessian();
    let field = form.field();
    let mut acc = field.zero();
    for i in 0..form.size() {
        if point[i].is_zero() {
            continue;
        }
        for j in 0..form.size() {
            if point[j].is_zero() {
                continue;
            }
            let t = h[(i, j)]
                .try_mul(&point[i])
                .unwrap()
                .try_mul(&point[j])
                .unwrap();
            acc = acc.try_add(&t).unwrap();
        }
    }
    acc.try_div(&field.from_i64(2)).unwrap()
}
