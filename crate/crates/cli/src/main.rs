//! Command-line front door: model selection, check orchestration, seeded
//! reproducibility, JSON/text reporting.
//!
//! Reports are byte-stable for a fixed `(config, seed)`: maps are ordered and
//! wall-clock timings are opt-in (`--timings`), never part of the default
//! output. The process exits nonzero exactly when some finding fails.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rank3locus::embed::{fixture_elliptic_quintic, EmbeddingModel, QuadricSpace, SigmaEntry};
use rank3locus::golden;
use rank3locus::ranklocus::{
    assemble_m, enumerate_phi, enumerate_phi_range, projective_count, PhiReport, ScanMode,
    SymLinearMatrix, ENUMERATION_CAP,
};
use rank3locus::report::{Finding, Status};
use rank3locus::wab::checks::qr3_span_check;
use rank3locus::wab::identity_suite;
use rank3locus::wab::membership::{
    decomposition_check_forward, decomposition_check_p1, decomposition_check_p1_sampled,
};
use rank3locus::wab::system::{
    basepoint_free_check, coefficient_polys, degree_formula, image_dim, plucker_certify,
};
use rank3locus::{Error, FieldSpec};
use serde::Serialize;
use std::io::Write;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rank3locus",
    version,
    about = "rank-3 loci of quadrics through embedded varieties, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Variety {
    /// Veronese embedding of projective space (needs --n and --d)
    Pn,
    /// the quintic elliptic curve fixture in P^4
    #[value(name = "elliptic5-fixture")]
    Elliptic5Fixture,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, value_enum)]
    variety: Variety,
    /// dimension of the source projective space
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// degree of the embedding bundle
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// prime modulus; omit for the rationals
    #[arg(long)]
    p: Option<u64>,
}

impl ModelArgs {
    fn field(&self) -> Result<FieldSpec, Error> {
        match self.p {
            Some(p) => FieldSpec::prime(p),
            None => Ok(FieldSpec::rational()),
        }
    }

    fn quadric_space(&self) -> Result<QuadricSpace, Error> {
        let field = self.field()?;
        match self.variety {
            Variety::Pn => {
                let model = EmbeddingModel::veronese(field, self.n, self.d)?;
                QuadricSpace::of_model(&model)
            }
            Variety::Elliptic5Fixture => Ok(fixture_elliptic_quintic(field)?.0),
        }
    }

    fn instance(&self) -> String {
        let field = match self.p {
            Some(p) => format!("F{}", p),
            None => "Q".into(),
        };
        match self.variety {
            Variety::Pn => format!("pn({},{})/{}", self.n, self.d, field),
            Variety::Elliptic5Fixture => format!("elliptic5/{}", field),
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// write the JSON report to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// human-readable tables instead of JSON
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quadric ideal basis of a model
    Ideal {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rank statistics over P^m(F_p)
    Phi {
        #[command(flatten)]
        model: ModelArgs,
        /// rank threshold for the reported point list
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// scan every projective point (within budget)
        #[arg(long)]
        exhaustive: bool,
        /// number of sampled points (when not exhaustive)
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// worker threads for exhaustive scans
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coefficient systems of one decomposition entry
    Wab {
        #[command(flatten)]
        model: ModelArgs,
        /// power of the generator defining A
        #[arg(long)]
        ell: usize,
        #[arg(value_enum)]
        action: WabAction,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decomposition check: every rank-3 point receives a witness
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        /// sampled mode with this many points (line models)
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Span check: constructed quadrics fill the coefficient space
    Qr3 {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fixture checks: matrix, phi2, phi3count, sample
    Fixture {
        #[arg(long, default_value_t = 7)]
        p: u64,
        /// comma-separated list (default: all)
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a configured list of checks on one model
    Report {
        #[command(flatten)]
        model: ModelArgs,
        /// run every applicable check
        #[arg(long)]
        all: bool,
        /// comma-separated subset of checks
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// include wall-clock timings (breaks byte determinism)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The full verification matrix (CI entry point)
    Golden {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum WabAction {
    /// expand the coefficient polynomials and certify them in Plucker monomials
    Certify,
    /// Jacobian dimension of the image
    Dim,
    /// degree of the image by the closed form and the independent product
    Degree,
    /// base-point-freeness sampling
    Bpf,
    /// membership round-trips recovering the spans
    Roundtrip,
}

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    version: String,
    config: serde_json::Value,
    findings: Vec<Finding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<std::collections::BTreeMap<String, u128>>,
}

impl RunReport {
    fn new(config: serde_json::Value) -> Self {
        RunReport {
            schema: 1,
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            findings: Vec::new(),
            timings_ms: None,
        }
    }

    fn ok(&self) -> bool {
        self.findings.iter().all(|f| f.passed())
    }
}

fn emit(report: &RunReport, output: &OutputArgs) -> std::io::Result<()> {
    let body = if output.text {
        let mut s = String::new();
        for f in &report.findings {
            let status = match f.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            s.push_str(&format!("{:<20} {:<28} {}", f.check, f.instance, status));
            if let Some(r) = &f.reason {
                s.push_str(&format!("  ({})", r));
            }
            s.push('\n');
            for w in &f.witnesses {
                s.push_str(&format!("    {}\n", w));
            }
        }
        s
    } else {
        format!("{}\n", serde_json::to_string_pretty(report)?)
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn entry_for(model: &EmbeddingModel, ell: usize) -> Result<SigmaEntry, Error> {
    model
        .sigma_list()?
        .into_iter()
        .find(|e| e.ell == ell)
        .ok_or_else(|| Error::Unsupported(format!("no decomposition entry with ell = {}", ell)))
}

fn quadric_to_text(qs: &QuadricSpace, index: usize) -> String {
    let form = &qs.basis()[index];
    let size = form.size();
    let field = qs.field();
    let two = field.from_i64(2);
    let names: Vec<String> = (0..size).map(|i| format!("z{}", i)).collect();
    let mut out = String::new();
    for i in 0..size {
        for j in i..size {
            let c = if i == j {
                form.hessian()[(i, i)].try_div(&two).unwrap()
            } else {
                form.hessian()[(i, j)].clone()
            };
            if c.is_zero() {
                continue;
            }
            let mono = if i == j {
                format!("{}^2", names[i])
            } else {
                format!("{}*{}", names[i], names[j])
            };
            let cs = format!("{}", c);
            let piece = if c.is_one() {
                mono
            } else if cs == "-1" {
                format!("-{}", mono)
            } else {
                format!("{}*{}", cs, mono)
            };
            if out.is_empty() {
                out = piece;
            } else if let Some(rest) = piece.strip_prefix('-') {
                out = format!("{} - {}", out, rest);
            } else {
                out = format!("{} + {}", out, piece);
            }
        }
    }
    out
}

fn parallel_exhaustive(
    mat: &SymLinearMatrix,
    p: u64,
    k: usize,
    threads: usize,
) -> Result<PhiReport, Error> {
    let total = projective_count(p, mat.coeff_count());
    if total > ENUMERATION_CAP {
        return Err(Error::BudgetExceeded {
            points: total,
            cap: ENUMERATION_CAP,
        });
    }
    if threads <= 1 {
        return enumerate_phi(mat, p, k, ScanMode::Exhaustive);
    }
    let chunk = total.div_ceil(threads as u128);
    let mut parts: Vec<Result<PhiReport, Error>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let start = chunk * t as u128;
            let end = (start + chunk).min(total);
            if start >= end {
                break;
            }
            handles.push(scope.spawn(move || enumerate_phi_range(mat, p, k, start..end)));
        }
        for h in handles {
            parts.push(h.join().expect("scan worker panicked"));
        }
    });
    let mut merged: Option<PhiReport> = None;
    for part in parts {
        let part = part?;
        merged = Some(match merged {
            None => part,
            Some(acc) => acc.merge(part),
        });
    }
    let mut report = merged.expect("at least one range");
    report.exhaustive = true;
    Ok(report)
}

fn phi_finding(
    qs: &QuadricSpace,
    instance: &str,
    p: u64,
    k: usize,
    mode: ScanMode,
    threads: usize,
) -> Result<(Finding, PhiReport), Error> {
    let mat = assemble_m(qs);
    let report = match mode {
        ScanMode::Exhaustive => parallel_exhaustive(&mat, p, k, threads)?,
        sample => enumerate_phi(&mat, p, k, sample)?,
    };
    let at_most_k: u64 = report
        .rank_counts
        .iter()
        .filter(|(r, _)| **r <= k)
        .map(|(_, c)| *c)
        .sum();
    let finding = Finding::pass("phi", instance).with_witnesses(vec![
        format!("scanned {} points", report.scanned),
        format!("rank counts {:?}", report.rank_counts),
        format!("{} points of rank <= {}", at_most_k, k),
    ]);
    Ok((finding, report))
}

fn check_ideal(qs: &QuadricSpace, instance: &str) -> Finding {
    let mut witnesses = vec![format!("m + 1 = {}", qs.m() + 1)];
    for i in 0..qs.basis().len() {
        witnesses.push(format!("Q{} = {}", i, quadric_to_text(qs, i)));
    }
    Finding::pass("ideal", instance).with_witnesses(witnesses)
}

fn check_phi2(margs: &ModelArgs, p: u64) -> Result<Finding, Error> {
    let qs = margs.quadric_space()?;
    let mat = assemble_m(&qs);
    let total = projective_count(p, qs.m() + 1);
    if total > ENUMERATION_CAP {
        return Ok(Finding::skipped(
            "phi2",
            &margs.instance(),
            format!(
                "budget: {} points exceed the cap {}",
                total, ENUMERATION_CAP
            ),
        ));
    }
    let empty = rank3locus::ranklocus::phi2_empty_check(&mat, p)?;
    Ok(if empty {
        Finding::pass("phi2", &margs.instance())
            .with_witnesses(vec![format!("no rank <= 2 point among {}", total)])
    } else {
        Finding::fail("phi2", &margs.instance(), "rank <= 2 point found".into())
    })
}

fn check_decompose(margs: &ModelArgs, samples: Option<u64>, seed: u64) -> Result<Finding, Error> {
    let instance = margs.instance();
    let Some(p) = margs.p else {
        return Ok(Finding::skipped(
            "decompose",
            &instance,
            "needs a prime field".into(),
        ));
    };
    let qs = margs.quadric_space()?;
    if margs.variety != Variety::Pn {
        return Ok(Finding::skipped(
            "decompose",
            &instance,
            "the fixture has no finite decomposition list".into(),
        ));
    }
    let report = if margs.n == 1 {
        if p as usize <= margs.d {
            return Ok(Finding::skipped(
                "decompose",
                &instance,
                format!("needs p > d (p = {}, d = {})", p, margs.d),
            ));
        }
        match samples {
            Some(count) => decomposition_check_p1_sampled(&qs, p, count, seed)?,
            None => {
                let total = projective_count(p, qs.m() + 1);
                if total > ENUMERATION_CAP {
                    return Ok(Finding::skipped(
                        "decompose",
                        &instance,
                        format!("budget: {} points; pass --samples", total),
                    ));
                }
                decomposition_check_p1(&qs, p)?
            }
        }
    } else if margs.d == 2 {
        decomposition_check_forward(&qs, p)?
    } else {
        return Ok(Finding::skipped(
            "decompose",
            &instance,
            "membership by factorization is implemented on the line; higher-dimensional models support d = 2 forward comparison".into(),
        ));
    };
    let mut witnesses = vec![
        format!(
            "scanned {}, rank-3 {}, witnessed base {}, extension {}",
            report.scanned, report.rank3, report.witnessed_base, report.witnessed_extended
        ),
        format!("seed {}", seed),
    ];
    if !report.per_ell.is_empty() {
        witnesses.push(format!("per-degree {:?}", report.per_ell));
    }
    if let Some(f) = &report.forward {
        witnesses.push(format!(
            "rank-3 points {}, forward images {}, equal sets {}",
            f.rank3_count, f.forward_count, f.equal_sets
        ));
    }
    Ok(if report.fully_resolved() {
        Finding::pass("decompose", &instance).with_witnesses(witnesses)
    } else {
        Finding::fail(
            "decompose",
            &instance,
            format!("{} unresolved points", report.unresolved.len()),
        )
        .with_witnesses(
            report
                .unresolved
                .iter()
                .take(16)
                .map(|pt| format!("{:?}", pt))
                .collect(),
        )
    })
}

fn check_qr3(margs: &ModelArgs, seed: u64) -> Result<Finding, Error> {
    let qs = margs.quadric_space()?;
    if margs.variety != Variety::Pn {
        return Ok(Finding::skipped(
            "qr3",
            &margs.instance(),
            "span check needs the enumeration of decompositions".into(),
        ));
    }
    let (dim, full) = qr3_span_check(&qs, seed)?;
    Ok(if full {
        Finding::pass("qr3", &margs.instance()).with_witnesses(vec![
            format!("span {} = m + 1", dim),
            format!("seed {}", seed),
        ])
    } else {
        Finding::fail(
            "qr3",
            &margs.instance(),
            format!("span {} < m + 1 = {}", dim, qs.m() + 1),
        )
    })
}

fn check_wab(
    margs: &ModelArgs,
    ell: usize,
    action: WabAction,
    trials: u64,
    seed: u64,
) -> Result<Finding, Error> {
    let instance = format!("{} ell={}", margs.instance(), ell);
    let qs = margs.quadric_space()?;
    let model = qs.model().clone();
    let entry = entry_for(&model, ell)?;
    match action {
        WabAction::Degree => {
            let value = degree_formula(entry.p, entry.q)?;
            Ok(
                Finding::pass("wab-degree", &instance).with_witnesses(vec![format!(
                    "deg W = {} (closed form = binomial x Catalan product)",
                    value
                )]),
            )
        }
        WabAction::Certify => {
            let mut system = coefficient_polys(&qs, entry)?;
            plucker_certify(&mut system, &qs)?;
            let names = system.variable_names();
            let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let mut witnesses = Vec::new();
            let certs = system.certificates().unwrap();
            for (j, (g, cert)) in system.gpolys().iter().zip(certs).enumerate() {
                witnesses.push(format!("G{} = {}", j, g.to_string_with(&name_refs)));
                witnesses.push(format!("G{} = {}", j, cert.to_display()));
            }
            Ok(Finding::pass("wab-certify", &instance).with_witnesses(witnesses))
        }
        WabAction::Dim => {
            let system = coefficient_polys(&qs, entry)?;
            let dim = image_dim(&system, &qs, seed)?;
            let want = 2 * entry.p + entry.q - 2;
            Ok(if dim == want {
                Finding::pass("wab-dim", &instance)
                    .with_witnesses(vec![format!("dim W = {} = 2p + q - 2", dim)])
            } else {
                Finding::fail(
                    "wab-dim",
                    &instance,
                    format!("dim {} != 2p + q - 2 = {}", dim, want),
                )
            })
        }
        WabAction::Bpf => {
            let system = coefficient_polys(&qs, entry)?;
            let (ok, witness) = basepoint_free_check(&system, &qs, trials, seed)?;
            Ok(if ok {
                Finding::pass("wab-bpf", &instance).with_witnesses(vec![
                    format!("{} trials, no common zero", trials),
                    format!("seed {}", seed),
                ])
            } else {
                Finding::fail(
                    "wab-bpf",
                    &instance,
                    format!("common zero at {:?}", witness),
                )
            })
        }
        WabAction::Roundtrip => {
            if margs.n != 1 {
                return Ok(Finding::skipped(
                    "wab-roundtrip",
                    &instance,
                    "membership round-trips are implemented on the line".into(),
                ));
            }
            if let Some(p) = margs.p {
                if p as usize <= margs.d {
                    return Ok(Finding::skipped(
                        "wab-roundtrip",
                        &instance,
                        format!("needs p > d (p = {}, d = {})", p, margs.d),
                    ));
                }
            } else {
                return Ok(Finding::skipped(
                    "wab-roundtrip",
                    &instance,
                    "round-trips over the rationals hit unsplittable forms; use a prime field"
                        .into(),
                ));
            }
            let rep = rank3locus::wab::membership::uniqueness_roundtrip(&qs, entry, trials, seed)?;
            Ok(if rep.failures.is_empty() {
                Finding::pass("wab-roundtrip", &instance).with_witnesses(vec![
                    format!("{} round-trips, spans recovered", rep.successes),
                    format!("seed {}", seed),
                ])
            } else {
                Finding::fail(
                    "wab-roundtrip",
                    &instance,
                    format!("{} failures", rep.failures.len()),
                )
                .with_witnesses(rep.failures.into_iter().take(8).collect())
            })
        }
    }
}

fn fixture_checks(p: u64, list: &[&str], seed: u64) -> Result<Vec<Finding>, Error> {
    let mut findings = Vec::new();
    for check in list {
        match *check {
            "matrix" => {
                let (qs, _) = fixture_elliptic_quintic(FieldSpec::rational())?;
                findings.push(golden::fixture_matrix_finding(&qs));
            }
            "phi2" => {
                let margs = ModelArgs {
                    variety: Variety::Elliptic5Fixture,
                    n: 1,
                    d: 2,
                    p: Some(p),
                };
                findings.push(check_phi2(&margs, p)?);
            }
            "phi3count" => {
                let (qs, _) = fixture_elliptic_quintic(FieldSpec::prime(p)?)?;
                let instance = format!("elliptic5/F{}", p);
                let (finding, report) = phi_finding(&qs, &instance, p, 3, ScanMode::Exhaustive, 1)?;
                let count: u64 = report
                    .rank_counts
                    .iter()
                    .filter(|(r, _)| **r <= 3)
                    .map(|(_, c)| *c)
                    .sum();
                let twosqrt = (2.0 * (p as f64).sqrt()).floor() as u64;
                let mut f = finding;
                f.check = "phi3count".into();
                f.witnesses.push(format!(
                    "Hasse window [{}, {}]: {}",
                    p + 1 - twosqrt,
                    p + 1 + twosqrt,
                    if count >= p + 1 - twosqrt && count <= p + 1 + twosqrt {
                        "inside"
                    } else {
                        "outside"
                    }
                ));
                findings.push(f);
            }
            "sample" => {
                let (_, sampler) = fixture_elliptic_quintic(FieldSpec::prime(p)?)?;
                let pts = sampler.unwrap().sample(32, seed);
                findings.push(
                    Finding::pass("sample", &format!("elliptic5/F{}", p)).with_witnesses(vec![
                        format!("{} points drawn, all satisfy the five quadrics", pts.len()),
                        format!(
                            "first points: {}",
                            pts.iter()
                                .take(4)
                                .map(|pt| format!(
                                    "{:?}",
                                    pt.iter().map(|c| format!("{}", c)).collect::<Vec<_>>()
                                ))
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                    ]),
                );
            }
            other => findings.push(Finding::skipped(
                other,
                &format!("elliptic5/F{}", p),
                "unknown fixture check".into(),
            )),
        }
    }
    Ok(findings)
}

fn run() -> Result<i32, Box<dyn std::error::Error>> {
    let cli = Cli::parse();
    match cli.command {
        Command::Ideal { model, output } => {
            let qs = model.quadric_space()?;
            let mut report = RunReport::new(serde_json::json!({
                "command": "ideal", "instance": model.instance(),
            }));
            report.findings.push(check_ideal(&qs, &model.instance()));
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Phi {
            model,
            k,
            exhaustive,
            samples,
            seed,
            threads,
            output,
        } => {
            let Some(p) = model.p else {
                return Err(Box::new(Error::Unsupported(
                    "phi scans need a prime field (--p)".into(),
                )));
            };
            let qs = model.quadric_space()?;
            let mode = if exhaustive {
                ScanMode::Exhaustive
            } else if let Some(count) = samples {
                ScanMode::Sample { count, seed }
            } else {
                let total = projective_count(p, qs.m() + 1);
                if total > ENUMERATION_CAP {
                    return Err(Box::new(Error::BudgetExceeded {
                        points: total,
                        cap: ENUMERATION_CAP,
                    }));
                }
                ScanMode::Exhaustive
            };
            let mat = assemble_m(&qs);
            let report = match mode {
                ScanMode::Exhaustive => parallel_exhaustive(&mat, p, k, threads)?,
                sample => enumerate_phi(&mat, p, k, sample)?,
            };
            let body = if output.text {
                let mut s = format!(
                    "field {}  k {}  scanned {}  exhaustive {}\n",
                    report.field, report.k, report.scanned, report.exhaustive
                );
                for (rank, count) in &report.rank_counts {
                    s.push_str(&format!("rank {:>2}: {}\n", rank, count));
                }
                s
            } else {
                format!("{}\n", serde_json::to_string_pretty(&report)?)
            };
            match &output.out {
                Some(path) => std::fs::write(path, body)?,
                None => std::io::stdout().write_all(body.as_bytes())?,
            }
            Ok(0)
        }
        Command::Wab {
            model,
            ell,
            action,
            trials,
            seed,
            output,
        } => {
            let mut report = RunReport::new(serde_json::json!({
                "command": "wab", "instance": model.instance(), "ell": ell,
                "action": format!("{:?}", action), "trials": trials, "seed": seed,
            }));
            report
                .findings
                .push(check_wab(&model, ell, action, trials, seed)?);
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Decompose {
            model,
            samples,
            seed,
            output,
        } => {
            let mut report = RunReport::new(serde_json::json!({
                "command": "decompose", "instance": model.instance(), "seed": seed,
            }));
            report
                .findings
                .push(check_decompose(&model, samples, seed)?);
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Qr3 {
            model,
            seed,
            output,
        } => {
            let mut report = RunReport::new(serde_json::json!({
                "command": "qr3", "instance": model.instance(), "seed": seed,
            }));
            report.findings.push(check_qr3(&model, seed)?);
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Fixture {
            p,
            checks,
            seed,
            output,
        } => {
            let list = checks.unwrap_or_else(|| "matrix,phi2,phi3count,sample".into());
            let names: Vec<&str> = list.split(',').map(|s| s.trim()).collect();
            let mut report = RunReport::new(serde_json::json!({
                "command": "fixture", "p": p, "checks": list, "seed": seed,
            }));
            report.findings = fixture_checks(p, &names, seed)?;
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Report {
            model,
            all,
            checks,
            seed,
            timings,
            output,
        } => {
            let list: Vec<String> = match (&checks, all) {
                (Some(list), false) => list.split(',').map(|s| s.trim().to_string()).collect(),
                _ => match model.variety {
                    Variety::Pn => vec![
                        "ideal",
                        "phi2",
                        "phi3count",
                        "qr3",
                        "certify",
                        "dim",
                        "degree",
                        "bpf",
                        "roundtrip",
                        "decompose",
                    ],
                    Variety::Elliptic5Fixture => vec!["matrix", "phi2", "phi3count", "sample"],
                }
                .into_iter()
                .map(String::from)
                .collect(),
            };
            let mut report = RunReport::new(serde_json::json!({
                "command": "report", "instance": model.instance(),
                "checks": list.join(","), "seed": seed,
            }));
            let mut times = std::collections::BTreeMap::new();
            for check in &list {
                let start = Instant::now();
                let finding = run_report_check(&model, check, seed)?;
                times.insert(check.clone(), start.elapsed().as_millis());
                report.findings.push(finding);
            }
            if timings {
                report.timings_ms = Some(times);
            }
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Golden { seed, output } => {
            let findings = golden::run_all(seed)?;
            for f in &findings {
                let verdict = match f.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skipped",
                };
                eprintln!("{:<22} {}", f.check, verdict);
            }
            let mut report = RunReport::new(serde_json::json!({
                "command": "golden", "seed": seed,
            }));
            report.findings = findings;
            emit(&report, &output)?;
            Ok(if report.ok() { 0 } else { 1 })
        }
    }
}

fn run_report_check(model: &ModelArgs, check: &str, seed: u64) -> Result<Finding, Error> {
    let instance = model.instance();
    match check {
        "ideal" => Ok(check_ideal(&model.quadric_space()?, &instance)),
        "phi2" => match model.p {
            Some(p) => check_phi2(model, p),
            None => Ok(Finding::skipped(
                "phi2",
                &instance,
                "needs a prime field".into(),
            )),
        },
        "phi3count" => match model.p {
            Some(p) => {
                let qs = model.quadric_space()?;
                let total = projective_count(p, qs.m() + 1);
                if total > ENUMERATION_CAP {
                    return Ok(Finding::skipped(
                        "phi3count",
                        &instance,
                        format!("budget: {} points", total),
                    ));
                }
                let (mut finding, _) = phi_finding(&qs, &instance, p, 3, ScanMode::Exhaustive, 1)?;
                finding.check = "phi3count".into();
                Ok(finding)
            }
            None => Ok(Finding::skipped(
                "phi3count",
                &instance,
                "needs a prime field".into(),
            )),
        },
        "qr3" => check_qr3(model, seed),
        "decompose" => check_decompose(model, None, seed),
        "matrix" | "sample" => {
            let p = model.p.unwrap_or(7);
            Ok(fixture_checks(p, &[check], seed)?.remove(0))
        }
        "identities" => {
            let qs = model.quadric_space()?;
            let rep = identity_suite(&qs, 200, seed)?;
            Ok(if rep.all_passed() {
                Finding::pass("identities", &instance)
                    .with_witnesses(vec![format!("{:?}", rep.passes)])
            } else {
                Finding::fail("identities", &instance, rep.failures.join("; "))
            })
        }
        "certify" | "dim" | "degree" | "bpf" | "roundtrip" => {
            if model.variety != Variety::Pn {
                return Ok(Finding::skipped(
                    check,
                    &instance,
                    "needs a Veronese model".into(),
                ));
            }
            let action = match check {
                "certify" => WabAction::Certify,
                "dim" => WabAction::Dim,
                "degree" => WabAction::Degree,
                "bpf" => WabAction::Bpf,
                _ => WabAction::Roundtrip,
            };
            let qs = model.quadric_space()?;
            let entries = qs.model().sigma_list()?;
            if entries.is_empty() {
                return Ok(Finding::skipped(
                    check,
                    &instance,
                    "no decompositions for d <= 1".into(),
                ));
            }
            // run the action on every decomposition entry, first failure wins
            let mut witnesses = Vec::new();
            for entry in entries {
                let f = check_wab(model, entry.ell, action, 200, seed)?;
                if f.status == Status::Fail {
                    return Ok(f);
                }
                witnesses.push(format!(
                    "ell={}: {}{}",
                    entry.ell,
                    match f.status {
                        Status::Pass => "pass",
                        Status::Skipped => "skipped",
                        Status::Fail => unreachable!(),
                    },
                    f.reason.map(|r| format!(" ({})", r)).unwrap_or_default()
                ));
            }
            Ok(Finding::pass(check, &instance).with_witnesses(witnesses))
        }
        other => Ok(Finding::skipped(other, &instance, "unknown check".into())),
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}
