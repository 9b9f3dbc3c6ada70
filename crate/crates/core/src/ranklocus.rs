//! The symmetric matrix `M(y) = sum y_j H(Q_j)` of linear forms attached to a
//! quadric basis, rank evaluation at points of the projectivized coefficient
//! space, and exhaustive rank statistics over small prime fields.
//!
//! Projective points are scanned through canonical representatives (first
//! nonzero coordinate equal to 1), so per-rank counts are exact and sum to
//! `(p^{m+1} - 1)/(p - 1)`. Scans can be split into index ranges whose
//! reports merge by summation.

use crate::embed::QuadricSpace;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::quadform::SymmetricForm;
use crate::Error;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Hard cap on exhaustive projective scans.
pub const ENUMERATION_CAP: u128 = 100_000_000;

/// Symmetric matrix whose entries are linear forms in the quadric
/// coordinates `y_0, ..., y_m`, stored as coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymLinearMatrix {
    field: FieldSpec,
    size: usize,
    mdim: usize,
    entries: Vec<Vec<Scalar>>,
}

impl SymLinearMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of `y` variables (`m + 1`).
    pub fn coeff_count(&self) -> usize {
        self.mdim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Coefficient vector of the `(i, j)` entry.
    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.size + j]
    }

    /// Entry as a readable linear form in the given variable names.
    pub fn entry_string(&self, i: usize, j: usize, names: &[String]) -> String {
        let v = self.entry(i, j);
        let mut out = String::new();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let piece = if c.is_one() {
                names[k].clone()
            } else if c.neg().is_one() {
                format!("-{}", names[k])
            } else {
                format!("{}*{}", c, names[k])
            };
            if out.is_empty() {
                out = piece;
            } else if let Some(rest) = piece.strip_prefix('-') {
                out = format!("{} - {}", out, rest);
            } else {
                out = format!("{} + {}", out, piece);
            }
        }
        if out.is_empty() {
            out = "0".into();
        }
        out
    }

    /// Specialize at `y` (must be nonzero).
    pub fn specialize(&self, y: &[Scalar]) -> Result<SymmetricForm, Error> {
        if y.len() != self.mdim {
            return Err(Error::DimMismatch);
        }
        if y.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let h = DenseMatrix::from_fn(self.field, self.size, self.size, |i, j| {
            let mut acc = self.field.zero();
            for (k, c) in self.entry(i, j).iter().enumerate() {
                if !c.is_zero() && !y[k].is_zero() {
                    acc = acc.try_add(&c.try_mul(&y[k]).unwrap()).unwrap();
                }
            }
            acc
        });
        SymmetricForm::new(h)
    }
}

/// `M(y) = sum y_j Hessian(Q_j)`.
pub fn assemble_m(qs: &QuadricSpace) -> SymLinearMatrix {
    let field = qs.field();
    let size = qs.model().r() + 1;
    let mdim = qs.m() + 1;
    let mut entries = vec![vec![field.zero(); mdim]; size * size];
    for (k, form) in qs.basis().iter().enumerate() {
        for i in 0..size {
            for j in 0..size {
                entries[i * size + j][k] = form.hessian()[(i, j)].clone();
            }
        }
    }
    SymLinearMatrix {
        field,
        size,
        mdim,
        entries,
    }
}

/// Rank of `M(y)` at a nonzero point.
pub fn rank_at(mat: &SymLinearMatrix, y: &[Scalar]) -> Result<usize, Error> {
    Ok(mat.specialize(y)?.form_rank())
}

/// How a scan draws its points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// All canonical representatives of `P^m(F_p)`.
    Exhaustive,
    /// `count` seeded uniform draws (with repetition) of canonical points.
    Sample { count: u64, seed: u64 },
}

/// Rank statistics of a scan of `P^m(F_p)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PhiReport {
    pub field: String,
    pub k: usize,
    pub scanned: u64,
    pub exhaustive: bool,
    pub rank_counts: BTreeMap<usize, u64>,
    /// Canonical points of rank <= k, as residue vectors; capped.
    pub points: Vec<Vec<u64>>,
    pub points_truncated: bool,
}

impl PhiReport {
    /// Merge two partial reports (disjoint index ranges of one scan).
    pub fn merge(mut self, other: PhiReport) -> PhiReport {
        assert_eq!(self.field, other.field);
        assert_eq!(self.k, other.k);
        self.scanned += other.scanned;
        for (r, c) in other.rank_counts {
            *self.rank_counts.entry(r).or_insert(0) += c;
        }
        let cap = POINT_CAP;
        for p in other.points {
            if self.points.len() < cap {
                self.points.push(p);
            } else {
                self.points_truncated = true;
            }
        }
        self.points_truncated |= other.points_truncated;
        self
    }
}

const POINT_CAP: usize = 4096;

/// Number of canonical points of `P^m(F_p)`.
pub fn projective_count(p: u64, mdim: usize) -> u128 {
    let mut total = 0u128;
    let mut power = 1u128;
    for _ in 0..mdim {
        total += power;
        power *= p as u128;
    }
    total
}

/// The `index`-th canonical representative: coordinates before `lead` are
/// zero, the `lead` coordinate is 1, later coordinates run through `F_p` in
/// base-`p` odometer order.
pub fn canonical_point(p: u64, mdim: usize, index: u128, field: FieldSpec) -> Vec<Scalar> {
    let mut idx = index;
    let mut lead = 0usize;
    loop {
        let block = (p as u128).pow((mdim - lead - 1) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut out = vec![field.zero(); mdim];
    out[lead] = field.one();
    for pos in (lead + 1..mdim).rev() {
        out[pos] = field.from_i64((idx % p as u128) as i64);
        idx /= p as u128;
    }
    out
}

fn residues(v: &[Scalar]) -> Vec<u64> {
    v.iter()
        .map(|s| match s {
            Scalar::Prime { a, .. } => *a,
            _ => 0,
        })
        .collect()
}

/// Scan an index range of the canonical enumeration (used both directly and
/// as the per-worker unit of a partitioned scan).
pub fn enumerate_phi_range(
    mat: &SymLinearMatrix,
    p: u64,
    k: usize,
    range: std::ops::Range<u128>,
) -> Result<PhiReport, Error> {
    let field = FieldSpec::prime(p)?;
    if mat.field() != field {
        return Err(Error::FieldMismatch);
    }
    let mut rank_counts = BTreeMap::new();
    let mut points = Vec::new();
    let mut truncated = false;
    for index in range.clone() {
        let y = canonical_point(p, mat.coeff_count(), index, field);
        let rank = rank_at(mat, &y)?;
        *rank_counts.entry(rank).or_insert(0u64) += 1;
        if rank <= k {
            if points.len() < POINT_CAP {
                points.push(residues(&y));
            } else {
                truncated = true;
            }
        }
    }
    Ok(PhiReport {
        field: format!("F{}", p),
        k,
        scanned: (range.end - range.start) as u64,
        exhaustive: false,
        rank_counts,
        points,
        points_truncated: truncated,
    })
}

/// Rank statistics over `P^m(F_p)`. Exhaustive mode requires the point count
/// to fit the budget; sampling mode draws seeded canonical points.
pub fn enumerate_phi(
    mat: &SymLinearMatrix,
    p: u64,
    k: usize,
    mode: ScanMode,
) -> Result<PhiReport, Error> {
    let field = FieldSpec::prime(p)?;
    if mat.field() != field {
        return Err(Error::FieldMismatch);
    }
    match mode {
        ScanMode::Exhaustive => {
            let total = projective_count(p, mat.coeff_count());
            if total > ENUMERATION_CAP {
                return Err(Error::BudgetExceeded {
                    points: total,
                    cap: ENUMERATION_CAP,
                });
            }
            let mut report = enumerate_phi_range(mat, p, k, 0..total)?;
            report.exhaustive = true;
            debug_assert_eq!(report.scanned as u128, total);
            Ok(report)
        }
        ScanMode::Sample { count, seed } => {
            let total = projective_count(p, mat.coeff_count());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rank_counts = BTreeMap::new();
            let mut points = Vec::new();
            let mut truncated = false;
            for _ in 0..count {
                let index = rng.gen_range(0..total);
                let y = canonical_point(p, mat.coeff_count(), index, field);
                let rank = rank_at(mat, &y)?;
                *rank_counts.entry(rank).or_insert(0u64) += 1;
                if rank <= k {
                    if points.len() < POINT_CAP {
                        points.push(residues(&y));
                    } else {
                        truncated = true;
                    }
                }
            }
            Ok(PhiReport {
                field: format!("F{}", p),
                k,
                scanned: count,
                exhaustive: false,
                rank_counts,
                points,
                points_truncated: truncated,
            })
        }
    }
}

/// True when the exhaustive scan finds no point of rank <= 2.
pub fn phi2_empty_check(mat: &SymLinearMatrix, p: u64) -> Result<bool, Error> {
    let report = enumerate_phi(mat, p, 2, ScanMode::Exhaustive)?;
    Ok(report.points.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{fixture_elliptic_quintic, EmbeddingModel, QuadricSpace};

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn unit(field: FieldSpec, mdim: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![field.zero(); mdim];
        v[j] = field.one();
        v
    }

    #[test]
    fn fixture_matrix_is_the_printed_one() {
        // With coefficients named x1..x5 for Q1..Q5 the matrix reads
        //   [2x4, x5, x4, x1, x2+x4; x5, 0, x5-x1, -x2, x5; ...]
        // Signed coefficients only display literally over Q.
        let f = FieldSpec::rational();
        let (qs, _) = fixture_elliptic_quintic(f).unwrap();
        let m = assemble_m(&qs);
        let names: Vec<String> = (1..=5).map(|i| format!("x{}", i)).collect();
        let expected = [
            ["2*x4", "x5", "x4", "x1", "x2 + x4"],
            ["x5", "0", "-x1 + x5", "-x2", "x5"],
            ["x4", "-x1 + x5", "2*x4", "x5", "x3"],
            ["x1", "-x2", "x5", "-2*x3", "x4"],
            ["x2 + x4", "x5", "x3", "x4", "2*x5"],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(&m.entry_string(i, j, &names), want, "entry ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn unit_vector_specialization_recovers_the_basis() {
        let f = fp(7);
        let (qs, _) = fixture_elliptic_quintic(f).unwrap();
        let m = assemble_m(&qs);
        for j in 0..5 {
            let spec = m.specialize(&unit(f, 5, j)).unwrap();
            assert_eq!(&spec, &qs.basis()[j]);
        }
        // ranks at the unit vectors: Q3 has rank 3, Q1 has rank 4
        assert_eq!(rank_at(&m, &unit(f, 5, 2)).unwrap(), 3);
        assert_eq!(rank_at(&m, &unit(f, 5, 0)).unwrap(), 4);
        assert_eq!(m.specialize(&vec![f.zero(); 5]), Err(Error::ZeroVector));
    }

    #[test]
    fn conic_matrix_is_rank_three_everywhere() {
        let f = fp(5);
        let model = EmbeddingModel::veronese(f, 1, 2).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let m = assemble_m(&qs);
        assert_eq!(m.coeff_count(), 1);
        let report = enumerate_phi(&m, 5, 3, ScanMode::Exhaustive).unwrap();
        // P^0 has a single point, and it is the rank-3 conic
        assert_eq!(report.scanned, 1);
        assert_eq!(report.rank_counts.get(&3), Some(&1));
    }

    #[test]
    fn canonical_points_cover_the_projective_space() {
        let p = 3u64;
        let mdim = 3usize;
        let field = fp(p);
        let total = projective_count(p, mdim);
        assert_eq!(total, 13);
        let mut seen = std::collections::HashSet::new();
        for i in 0..total {
            let pt = canonical_point(p, mdim, i, field);
            let lead = pt.iter().position(|c| !c.is_zero()).unwrap();
            assert!(pt[lead].is_one());
            seen.insert(residues(&pt));
        }
        assert_eq!(seen.len(), 13);
    }

    #[test]
    fn range_partition_merges_to_the_full_scan() {
        let f = fp(5);
        let model = EmbeddingModel::veronese(f, 2, 2).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let m = assemble_m(&qs);
        let total = projective_count(5, m.coeff_count());
        let full = enumerate_phi(&m, 5, 3, ScanMode::Exhaustive).unwrap();
        let a = enumerate_phi_range(&m, 5, 3, 0..total / 2).unwrap();
        let b = enumerate_phi_range(&m, 5, 3, total / 2..total).unwrap();
        let merged = a.merge(b);
        assert_eq!(merged.rank_counts, full.rank_counts);
        assert_eq!(merged.scanned, full.scanned);
    }

    #[test]
    fn scale_invariance_of_rank() {
        use rand::{Rng, SeedableRng};
        let f = fp(7);
        let (qs, _) = fixture_elliptic_quintic(f).unwrap();
        let m = assemble_m(&qs);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let y: Vec<Scalar> = (0..5)
                .map(|_| f.from_i64(rng.gen_range(0..7) as i64))
                .collect();
            if y.iter().all(|c| c.is_zero()) {
                continue;
            }
            let lambda = f.random_nonzero(&mut rng);
            let scaled: Vec<Scalar> = y.iter().map(|c| c.try_mul(&lambda).unwrap()).collect();
            assert_eq!(rank_at(&m, &y).unwrap(), rank_at(&m, &scaled).unwrap());
        }
    }

    #[test]
    fn fixture_matrix_has_generic_full_rank() {
        // det M is not identically zero: some scanned point has rank 5
        let f = fp(7);
        let (qs, _) = fixture_elliptic_quintic(f).unwrap();
        let m = assemble_m(&qs);
        let report = enumerate_phi(&m, 7, 3, ScanMode::Exhaustive).unwrap();
        assert!(report.rank_counts.get(&5).copied().unwrap_or(0) > 0);
        let witness = (0..projective_count(7, 5))
            .map(|i| canonical_point(7, 5, i, f))
            .find(|y| rank_at(&m, y).unwrap() == 5)
            .unwrap();
        let det = m.specialize(&witness).unwrap().hessian().det().unwrap();
        assert!(!det.is_zero());
    }

    #[test]
    fn budget_guard() {
        let f = fp(101);
        let model = EmbeddingModel::veronese(f, 1, 5).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let m = assemble_m(&qs);
        // 101^10 / 100 canonical points blows the cap
        match enumerate_phi(&m, 101, 3, ScanMode::Exhaustive) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {:?}", other),
        }
        // sampling still works
        let rep = enumerate_phi(&m, 101, 3, ScanMode::Sample { count: 50, seed: 1 }).unwrap();
        assert_eq!(rep.scanned, 50);
    }

    #[test]
    fn exhaustive_counts_sum_to_the_projective_cardinality() {
        let f = fp(5);
        let model = EmbeddingModel::veronese(f, 2, 2).unwrap();
        let qs = QuadricSpace::of_model(&model).unwrap();
        let m = assemble_m(&qs);
        let report = enumerate_phi(&m, 5, 3, ScanMode::Exhaustive).unwrap();
        let total: u64 = report.rank_counts.values().sum();
        assert_eq!(total as u128, projective_count(5, 6));
        assert_eq!(total, 3906);
    }
}
