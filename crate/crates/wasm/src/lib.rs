//! Browser bindings for the interactive demo page: three operations returning
//! JSON strings, all exact and seeded. The page under `www/` renders them
//! with plain JavaScript.

use rank3locus::embed::{fixture_elliptic_quintic, EmbeddingModel, QuadricSpace};
use rank3locus::poly::MultiPoly;
use rank3locus::ranklocus::{assemble_m, enumerate_phi, projective_count, ScanMode};
use rank3locus::wab::membership::{membership_p1, Membership};
use rank3locus::wab::system::{coefficient_polys, degree_formula, image_dim, plucker_certify};
use rank3locus::wab::{q_ab, random_params};
use rank3locus::{Error, FieldSpec};
use wasm_bindgen::prelude::wasm_bindgen;

/// Keep in-browser scans comfortably under a second.
const BROWSER_POINT_CAP: u128 = 2_000_000;

fn err_json(e: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": format!("{}", e) }).to_string()
}

fn space_for(variety: &str, n: usize, d: usize, p: u64) -> Result<QuadricSpace, Error> {
    let field = FieldSpec::prime(p)?;
    match variety {
        "pn" => {
            let model = EmbeddingModel::veronese(field, n, d)?;
            QuadricSpace::of_model(&model)
        }
        "elliptic5" => Ok(fixture_elliptic_quintic(field)?.0),
        other => Err(Error::Unsupported(format!("unknown variety {}", other))),
    }
}

/// Exhaustive rank statistics over `P^m(F_p)` as JSON:
/// `{field, k, scanned, rank_counts, points, ...}`.
#[wasm_bindgen]
pub fn phi_scan(variety: &str, n: u32, d: u32, p: u32, k: u32) -> String {
    let qs = match space_for(variety, n as usize, d as usize, p as u64) {
        Ok(qs) => qs,
        Err(e) => return err_json(e),
    };
    let total = projective_count(p as u64, qs.m() + 1);
    if total > BROWSER_POINT_CAP {
        return err_json(format!(
            "{} projective points exceed the in-browser cap of {}",
            total, BROWSER_POINT_CAP
        ));
    }
    let mat = assemble_m(&qs);
    match enumerate_phi(&mat, p as u64, k as usize, ScanMode::Exhaustive) {
        Ok(report) => serde_json::to_string(&report).unwrap_or_else(err_json),
        Err(e) => err_json(e),
    }
}

/// The coefficient system of one decomposition entry of `(P^n, O(d))` over
/// the rationals: polynomials, certificates, dimension and degree data.
#[wasm_bindgen]
pub fn wab_explore(n: u32, d: u32, ell: u32) -> String {
    let inner = || -> Result<String, Error> {
        let field = FieldSpec::rational();
        let model = EmbeddingModel::veronese(field, n as usize, d as usize)?;
        let qs = QuadricSpace::of_model(&model)?;
        let entry = model
            .sigma_list()?
            .into_iter()
            .find(|e| e.ell == ell as usize)
            .ok_or_else(|| {
                Error::Unsupported(format!("no decomposition entry with ell = {}", ell))
            })?;
        let mut system = coefficient_polys(&qs, entry)?;
        plucker_certify(&mut system, &qs)?;
        let names = system.variable_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let gpolys: Vec<String> = system
            .gpolys()
            .iter()
            .map(|g| g.to_string_with(&refs))
            .collect();
        let certs: Vec<String> = system
            .certificates()
            .unwrap()
            .iter()
            .map(|c| c.to_display())
            .collect();
        let dim = image_dim(&system, &qs, 0)?;
        let degree = degree_formula(entry.p, entry.q)?;
        Ok(serde_json::json!({
            "n": n, "d": d, "ell": ell,
            "p": entry.p, "q": entry.q,
            "m_plus_1": qs.m() + 1,
            "dim": dim,
            "dim_formula": 2 * entry.p + entry.q - 2,
            "degree": degree.to_string(),
            "gpolys": gpolys,
            "certificates": certs,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Draw a random `(s, t, h)` on the line model `(P^1, O(d))` over `F_p`,
/// build the rank-3 quadric, forget the parameters, and run the membership
/// construction; returns both sides and the verification verdict.
#[wasm_bindgen]
pub fn witness_roundtrip(d: u32, p: u32, ell: u32, seed: u32) -> String {
    use rand::SeedableRng;
    let inner = || -> Result<String, Error> {
        let field = FieldSpec::prime(p as u64)?;
        if p <= d {
            return Err(Error::CharTooSmall {
                p: p as u64,
                need: d as u64,
            });
        }
        let model = EmbeddingModel::veronese(field, 1, d as usize)?;
        let qs = QuadricSpace::of_model(&model)?;
        let entry = model
            .sigma_list()?
            .into_iter()
            .find(|e| e.ell == ell as usize)
            .ok_or_else(|| {
                Error::Unsupported(format!("no decomposition entry with ell = {}", ell))
            })?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed as u64);
        let (s, t, h) = random_params(&qs, entry, &mut rng)?;
        let q = q_ab(&qs, entry, &s, &t, &h)?;
        let uv = ["u", "v"];
        let show = |f: &MultiPoly| f.to_string_with(&uv);
        let coords: Vec<String> = q.coords.iter().map(|c| format!("{}", c)).collect();
        let rank = q.hessian.form_rank();
        let outcome = membership_p1(&qs, &q.coords)?;
        let witness = match outcome {
            Membership::Witness(w) => serde_json::json!({
                "ell": w.ell,
                "s": show(&w.s), "t": show(&w.t), "h": show(&w.h),
                "scalar": format!("{}", w.scalar),
                "extended": w.extended,
                "verified": true,
            }),
            Membership::NotRank3 { rank } => serde_json::json!({
                "not_rank3": rank,
            }),
            Membership::ExtensionRequired { .. } => serde_json::json!({
                "extension_required": true,
            }),
        };
        Ok(serde_json::json!({
            "drawn": { "s": show(&s), "t": show(&t), "h": show(&h), "ell": ell },
            "quadric": { "coords": coords, "rank": rank },
            "witness": witness,
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// The fixture's symmetric matrix of linear forms, entry strings named
/// `x1..x5`, for the landing panel.
#[wasm_bindgen]
pub fn fixture_matrix() -> String {
    let inner = || -> Result<String, Error> {
        let (qs, _) = fixture_elliptic_quintic(FieldSpec::rational())?;
        let mat = assemble_m(&qs);
        let names: Vec<String> = (1..=5).map(|i| format!("x{}", i)).collect();
        let rows: Vec<Vec<String>> = (0..5)
            .map(|i| (0..5).map(|j| mat.entry_string(i, j, &names)).collect())
            .collect();
        Ok(serde_json::json!({ "matrix": rows }).to_string())
    };
    inner().unwrap_or_else(err_json)
}
