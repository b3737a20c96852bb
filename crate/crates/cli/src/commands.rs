use std::fmt::Write as _;

use gaudin::bethe::{
    check_reality, check_w_power_wronskian, solve_inverse_wronskian, SolveOptions,
    SolveReport,
};
use gaudin::exactalg::{set_constant_precision, Poly};
use gaudin::repn::{check_centre, Partition};
use gaudin::schubert::{c_lambda, canonical_coords, schubert_type as cell_of, verify_duality, SchubertData};
use gaudin::symgroup::{check_all_bijections, check_commutativity, BetheConfig};
use gaudin::weylalg::check_f_vanishing;
use gaudin::wronskian::PolySubspace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{parse_coeffs, parse_points, parse_usize_list, InputError};
use crate::{CheckArgs, DualizeArgs, Global, Outcome, SchubertArgs, SolveArgs, VerifyArgs};

type CmdResult = Result<Outcome, InputError>;

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn other(e: impl std::fmt::Display) -> InputError {
    InputError::Other(e.to_string())
}

pub fn verify_identity(g: &Global, a: &VerifyArgs) -> CmdResult {
    let mut cfgs = Vec::new();
    for src in &a.z {
        let cfg = parse_points(src, g.precision_bits)?.exact(src)?;
        if let Some(n) = a.n {
            if cfg.n() != n {
                return Err(InputError::Length { expected: n, got: cfg.n() });
            }
        }
        cfgs.push(cfg);
    }
    if let (Some(count), Some(n)) = (a.random, a.n) {
        if n == 0 {
            return Err(other("n must be positive"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        for i in 0..count {
            cfgs.push(BetheConfig::random(n, &mut rng, i % 3 == 2));
        }
    }
    if let Some(big) = cfgs.iter().find(|c| c.n() >= 5) {
        if !a.allow_large {
            return Err(other(format!("n = {} needs --allow-large", big.n())));
        }
    }
    let mut summary = String::new();
    let mut reports = Vec::new();
    for cfg in &cfgs {
        let mut r = gaudin::bethe::verify_identity(cfg);
        let z: Vec<String> = r.z.iter().map(|x| x.to_string()).collect();
        let _ = write!(summary, "n={} z=({}) ", r.n, z.join(", "));
        match (&r.first_mismatch, r.passed()) {
            (_, true) => {
                let _ = writeln!(summary, "ok, max support {}, {} ms", r.max_support, r.millis.unwrap_or(0));
            }
            (Some((j, p, c)), false) => {
                let _ = writeln!(summary, "FAILED: coefficient of {p} d^{j} is {c}");
            }
            (None, false) => {
                let _ = writeln!(
                    summary,
                    "FAILED: star {} omega {} invariants {}",
                    r.star_holds, r.omega_holds, r.invariants_hold
                );
            }
        }
        if !a.timing {
            r.millis = None;
        }
        reports.push(r);
    }
    Ok(Outcome {
        passed: reports.iter().all(|r| r.passed()),
        json: json!({ "tuples": to_json(&reports) }),
        summary: summary.trim_end().to_string(),
    })
}

/// Runs every post-solve check and assembles the JSON document.
fn solve_document(report: &SolveReport, tol: &gaudin::exactalg::BigFloat) -> (Value, bool, String) {
    let cfg = report.config();
    let real_input = report.z.iter().all(|z| z.im.is_zero());
    let reality = real_input.then(|| check_reality(&report.records, tol));
    let duality = verify_duality(&report.records, tol);
    let w_power: Vec<_> = report
        .records
        .iter()
        .map(|r| check_w_power_wronskian(r, &cfg, tol))
        .collect();
    let placement = report.records.iter().all(|r| r.placement_ok(tol));
    let passed = report.complete()
        && report.duplicates.is_empty()
        && placement
        && reality.as_ref().is_none_or(|r| r.passed)
        && duality.passed
        && w_power.iter().all(|w| w.passed);
    let mut summary = String::new();
    for c in &report.counts {
        let _ = writeln!(summary, "lambda {}: {} of {} solutions", c.lambda, c.solutions, c.module_dim);
    }
    for r in &report.rejected {
        let _ = writeln!(summary, "rejected in {}: {}", r.lambda, r.reason);
    }
    let _ = writeln!(
        summary,
        "max Wronskian residual {:.3e}, max product residual {:.3e}",
        report.max_wr_residual.to_f64(),
        report.max_product_residual.to_f64()
    );
    if let Some(r) = &reality {
        let _ = writeln!(summary, "largest imaginary part {:.3e}", r.max_imaginary.to_f64());
    }
    let _ = write!(
        summary,
        "duality: {} pairs, {} unpaired",
        duality.pairs.len(),
        duality.unpaired.len()
    );
    let doc = json!({
        "report": to_json(report),
        "placement_ok": placement,
        "reality": to_json(&reality),
        "duality": to_json(&duality),
        "w_power": to_json(&w_power),
    });
    (doc, passed, summary)
}

pub fn solve(g: &Global, a: &SolveArgs) -> CmdResult {
    let prec = g.precision_bits;
    set_constant_precision(prec);
    let cfg = parse_points(&a.z, prec)?.numeric(prec);
    let opts = SolveOptions {
        precision_bits: prec,
        tolerance: g.tolerance()?,
        seed: g.seed,
    };
    let report = solve_inverse_wronskian(&cfg, &opts).map_err(other)?;
    let (json, passed, summary) = solve_document(&report, &opts.tolerance);
    Ok(Outcome { json, passed, summary })
}

fn exhaustive_cap(name: &str, n: usize, cap: usize) -> Result<(), InputError> {
    if n == 0 {
        return Err(other("n must be positive"));
    }
    if n > cap {
        return Err(other(format!("{name} is capped at n = {cap}; raise it with --cap")));
    }
    Ok(())
}

pub fn check(g: &Global, a: &CheckArgs) -> CmdResult {
    if let Some(n) = a.commute {
        exhaustive_cap("--commute", n, a.cap.unwrap_or(4))?;
        let r = check_commutativity(n);
        let summary = match r.failures.first() {
            None => format!("{} pairs of generators commute", r.pairs_checked),
            Some(f) => format!(
                "generators {:?} and {:?} do not commute: coefficient {} at {} (z exponents {:?})",
                f.a, f.b, f.coefficient, f.permutation, f.z_monomial
            ),
        };
        return Ok(Outcome {
            passed: r.passed(),
            json: to_json(&r),
            summary,
        });
    }
    if let Some(n) = a.centre {
        exhaustive_cap("--centre", n, a.cap.unwrap_or(8))?;
        let r = check_centre(n, n <= a.matrix_cap).map_err(other)?;
        let mut summary = format!(
            "{} partitions, c-tuples {}",
            r.partitions,
            if r.collisions.is_empty() { "distinct" } else { "collide" }
        );
        if let Some((p, q)) = r.collisions.first() {
            let _ = write!(summary, ": {p} and {q}");
        }
        if r.matrices_checked {
            let _ = write!(summary, "; matrix scalars checked");
        }
        if let Some((l, k, m)) = r.scalar_failures.first() {
            let _ = write!(summary, "; {l}, k = {k}: {m}");
        }
        return Ok(Outcome {
            passed: r.passed(),
            json: to_json(&r),
            summary,
        });
    }
    if let Some(n) = a.f_vanishing {
        exhaustive_cap("--f-vanishing", n, a.cap.unwrap_or(4))?;
        let cfg = match &a.z {
            Some(src) => {
                let cfg = parse_points(src, g.precision_bits)?.exact(src)?;
                if cfg.n() != n {
                    return Err(InputError::Length { expected: n, got: cfg.n() });
                }
                cfg
            }
            None => BetheConfig::random(n, &mut ChaCha8Rng::seed_from_u64(g.seed), false),
        };
        let sample = match a.sample {
            Some(m) => Some((m, g.seed)),
            None if n >= 4 => Some((200, g.seed)),
            None => None,
        };
        let r = check_f_vanishing(&cfg, sample);
        let mut summary = format!(
            "{} of {} supported permutations checked{}, {} nonvanishing; expansion = D+ D-: {}, = d^{}: {}",
            r.checked,
            r.pool,
            if r.exhaustive { " (all)" } else { "" },
            r.nonvanishing.len(),
            r.expansion_matches_product,
            2 * n,
            r.expansion_is_d2n
        );
        if let Some((p, z)) = r.nonvanishing.first() {
            let _ = write!(summary, "; first nonvanishing: {p} on {z:?}");
        }
        let z: Vec<String> = cfg.z().iter().map(|x| x.to_string()).collect();
        return Ok(Outcome {
            passed: r.passed(),
            json: json!({ "z": z, "report": to_json(&r) }),
            summary,
        });
    }
    let n = a.bijection.expect("clap requires one check");
    exhaustive_cap("--bijection", n, a.cap.unwrap_or(4))?;
    let all = check_all_bijections(n).map_err(other)?;
    let failed = all.iter().find(|r| !r.passed());
    let summary = match failed {
        None => format!(
            "{} triples (k, l, k'), {} pairs in total",
            all.len(),
            all.iter().map(|r| r.domain_size).sum::<usize>()
        ),
        Some(r) => format!("(k, l, k') = ({}, {}, {}) fails: {r:?}", r.k, r.l, r.k_prime),
    };
    Ok(Outcome {
        passed: failed.is_none(),
        json: to_json(&all),
        summary,
    })
}

pub fn dualize(g: &Global, a: &DualizeArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.input).map_err(|e| other(format!("{}: {e}", a.input.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| other(format!("malformed input: {e}")))?;
    let body = doc
        .pointer("/result/report")
        .cloned()
        .unwrap_or(doc);
    let report: SolveReport =
        serde_json::from_value(body).map_err(|e| other(format!("malformed solve report: {e}")))?;
    set_constant_precision(report.options.precision_bits);
    let n = report.z.len();
    if let Some(r) = report.records.iter().find(|r| r.lambda().part(0) > n) {
        return Err(other(format!("lambda_1 = {} exceeds n = {n}", r.lambda().part(0))));
    }
    let tol = match &g.tolerance {
        Some(_) => g.tolerance()?,
        None => report.options.tolerance.clone(),
    };
    let d = verify_duality(&report.records, &tol);
    let partner = |i: usize| d.pairs.iter().find(|p| p.index == i).map(|p| p.partner);
    let involution = d
        .pairs
        .iter()
        .all(|p| partner(p.partner) == Some(p.index));
    let table: Vec<Value> = d
        .pairs
        .iter()
        .map(|p| {
            json!({
                "index": p.index,
                "lambda": report.records[p.index].lambda().to_string(),
                "partner": p.partner,
                "partner_lambda": report.records[p.partner].lambda().to_string(),
            })
        })
        .collect();
    let summary = format!(
        "{} pairs, {} unpaired, involution {}, max coordinate residual {:.3e}, max Theta residual {:.3e}",
        d.pairs.len(),
        d.unpaired.len(),
        involution,
        d.max_coords_residual.to_f64(),
        d.max_theta_residual.to_f64()
    );
    Ok(Outcome {
        passed: d.passed && involution,
        json: json!({ "pairing": table, "involution": involution, "duality": to_json(&d) }),
        summary,
    })
}

fn cell_json(sd: &SchubertData) -> Value {
    let c: Vec<String> = c_lambda(&sd.lambda).iter().map(|x| x.to_string()).collect();
    json!({
        "lambda": sd.lambda.to_string(),
        "n": sd.n,
        "exponents": sd.d,
        "gaps": sd.e,
        "c_lambda": c,
        "module_dim": sd.lambda.dim(),
        "conjugate": sd.conjugate().ok().map(|c| c.lambda.to_string()),
    })
}

pub fn schubert_type(_g: &Global, a: &SchubertArgs) -> CmdResult {
    if let Some(src) = &a.partition {
        let lambda = Partition::new(parse_usize_list(src)?).map_err(other)?;
        let n = a.n.unwrap_or_else(|| lambda.size().max(lambda.len()));
        let sd = SchubertData::new(&lambda, n).map_err(other)?;
        let summary = format!("lambda {} in dimension {n}: exponents {:?}", sd.lambda, sd.d);
        return Ok(Outcome {
            json: cell_json(&sd),
            passed: true,
            summary,
        });
    }
    let basis: Vec<Poly<_>> = a
        .basis
        .iter()
        .map(|s| parse_coeffs(s).map(Poly::new))
        .collect::<Result<_, _>>()?;
    if let Some(n) = a.n {
        if n != basis.len() {
            return Err(InputError::Length { expected: n, got: basis.len() });
        }
    }
    if basis.iter().any(|p| p.is_zero()) {
        return Err(other("zero polynomial in basis"));
    }
    let v = PolySubspace::new(basis).map_err(other)?;
    let sd = cell_of(&v);
    let mut doc = cell_json(&sd);
    doc["wronskian"] = json!(v.monic_wronskian().to_string());
    doc["canonical_basis"] = json!(canonical_coords(&v)
        .map_err(other)?
        .basis()
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>());
    let summary = format!("Schubert type {} (exponents {:?}), Wronskian {}", sd.lambda, sd.d, v.monic_wronskian());
    Ok(Outcome {
        json: doc,
        passed: true,
        summary,
    })
}
