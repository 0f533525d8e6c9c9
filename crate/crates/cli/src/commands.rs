use std::collections::BTreeMap;
use std::fmt::Write as _;

use grassdeg_core::closure::{
    affine_member, boundary_generator, epsilon_family_check, orbit_dimension, parse_matrix, projective_member,
    rank_exact, GRMatrix, GaussianRational, ProjPoint,
};
use grassdeg_core::degree::{
    closed_form_degree, degree, interpolate_pk, plucker_degree, predict_degree, reduce_by_duality, selberg_monte_carlo,
    selberg_rhs, DegreeReport,
};
use grassdeg_core::repdim::{degree_by_differences_with, OracleConfig};
use grassdeg_core::scalar::{ratio_to_f64, Rational};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CheckArgs, Cli, ClosureCommand, Command, Method, TableFormat};
use crate::envelope::OutputEnvelope;

pub struct Outcome {
    pub envelope: OutputEnvelope,
    pub human: String,
    /// Set when two independent computations disagree.
    pub disagreement: Option<String>,
}

impl Outcome {
    fn ok(envelope: OutputEnvelope, human: String) -> Self {
        Outcome { envelope, human, disagreement: None }
    }
}

fn fail(e: impl ToString) -> String {
    e.to_string()
}

pub fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Degree { k, n, method } => cmd_degree(cli, *k, *n, *method),
        Command::Table { kmax, nmax, format } => cmd_table(cli, *kmax, *nmax, *format),
        Command::Selberg { m, p, d, mc, seed } => cmd_selberg(*m, *p, *d, *mc, *seed),
        Command::Interpolate { k, predict } => cmd_interpolate(cli, *k, *predict),
        Command::Closure(sub) => match sub {
            ClosureCommand::Check(args) => cmd_check(args),
            ClosureCommand::Boundary { n, d } => cmd_boundary(*n, *d),
            ClosureCommand::OrbitDim { n, d } => cmd_orbit_dim(*n, *d),
            ClosureCommand::Epsilon { n, k, d, eps } => cmd_epsilon(*n, *k, *d, eps),
        },
    }
}

fn ratio_string(numer: &BigInt, denom: &BigInt) -> String {
    Rational::new(numer.clone(), denom.clone()).to_string()
}

/// Fixed-width table with a header row.
fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn breakdown(report: &DegreeReport) -> String {
    let width = report.reduced_k as usize;
    let rows: Vec<Vec<String>> = report
        .terms
        .iter()
        .map(|t| {
            let lam: Vec<String> = t.lambda.padded(width).iter().map(u32::to_string).collect();
            vec![
                format!("({})", lam.join(",")),
                t.a.to_string(),
                t.b.to_string(),
                t.c.to_string(),
                t.product().to_string(),
            ]
        })
        .collect();
    let mut out = format!("alpha_{{{},{}}} = {}\n", report.reduced_k, report.n, report.alpha_kn);
    out.push_str(&render_table(&["lambda", "A", "B", "C", "A*B*C"], &rows));
    out
}

fn cmd_degree(cli: &Cli, k: u32, n: u32, method: Method) -> Result<Outcome, String> {
    let rk = reduce_by_duality(k, n).map_err(fail)?;
    let all = method == Method::All;
    let wanted = |m: Method| all || method == m;
    let mut routes: BTreeMap<&'static str, BigInt> = BTreeMap::new();
    let mut skipped: BTreeMap<&'static str, String> = BTreeMap::new();
    let mut report = None;
    let mut oracle_info = None;

    if wanted(Method::Formula) {
        if rk > cli.jack_budget {
            let why = format!("reduced rank {rk} exceeds the Jack budget {}", cli.jack_budget);
            if !all {
                return Err(why);
            }
            skipped.insert("formula", why);
        } else {
            let r = degree(k, n).map_err(fail)?;
            routes.insert("formula", r.degree.clone());
            report = Some(r);
        }
    }
    if wanted(Method::ClosedForm) {
        match closed_form_degree(rk, n) {
            Ok(v) => {
                routes.insert("closed_form", v);
            }
            Err(e) if all => {
                skipped.insert("closed_form", e.to_string());
            }
            Err(e) => return Err(fail(e)),
        }
    }
    if wanted(Method::Oracle) {
        let config = OracleConfig { max_p: cli.budget, ..OracleConfig::default() };
        match degree_by_differences_with(rk, n, config) {
            Ok(r) => {
                oracle_info = Some((r.profile.p, r.base));
                routes.insert("oracle", r.degree);
            }
            Err(e) if all => {
                skipped.insert("oracle", e.to_string());
            }
            Err(e) => return Err(fail(e)),
        }
    }

    let primary = ["formula", "closed_form", "oracle"]
        .iter()
        .find_map(|name| routes.get(name))
        .cloned()
        .ok_or_else(|| {
            let reasons: Vec<String> = skipped.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            format!("no route could compute this degree within the budgets ({})", reasons.join("; "))
        })?;
    let agree = routes.values().all(|v| *v == primary);
    let plucker = plucker_degree(k, n).map_err(fail)?;
    let ratio = ratio_string(&primary, &plucker);

    let report_json = report.as_ref().map(|r| serde_json::to_value(r).expect("report serializes"));
    let results = json!({
        "degree": primary.to_string(),
        "reduced_k": rk,
        "routes": routes.iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>(),
        "skipped": skipped,
        "agree": agree,
        "alpha": report_json.as_ref().map(|r| r["alpha"].clone()),
        "terms": report_json.as_ref().map(|r| r["terms"].clone()),
        "oracle": oracle_info.map(|(p, base)| json!({"p": p, "stable_from": base})),
        "plucker_degree": plucker.to_string(),
        "ratio_to_plucker": ratio,
    });
    let method_name = match method {
        Method::Formula => "formula",
        Method::ClosedForm => "closed-form",
        Method::Oracle => "oracle",
        Method::All => "all",
    };
    let envelope = OutputEnvelope::new("degree", json!({"k": k, "n": n, "method": method_name}), results);

    let mut human = format!("degree of Gr({k},R^{n}) in the involution model: {primary}\n");
    for (name, v) in &routes {
        let extra = match (name, oracle_info) {
            (&"oracle", Some((p, base))) => format!("  (p = {p}, p-th differences stable from d = {base})"),
            _ => String::new(),
        };
        let _ = writeln!(human, "  {name:<12} {v}{extra}");
    }
    for (name, why) in &skipped {
        let _ = writeln!(human, "  {name:<12} skipped: {why}");
    }
    if let Some(r) = &report {
        human.push('\n');
        human.push_str(&breakdown(r));
    }
    let _ = writeln!(human, "\nPlucker degree {plucker}; ratio {ratio}");

    let disagreement = (!agree).then(|| {
        let parts: Vec<String> = routes.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        format!("degree({k},{n}) routes disagree: {}", parts.join(", "))
    });
    Ok(Outcome { envelope, human, disagreement })
}

struct TableRow {
    k: u32,
    n: u32,
    degree: BigInt,
    plucker: BigInt,
}

fn cmd_table(cli: &Cli, kmax: u32, nmax: u32, format: TableFormat) -> Result<Outcome, String> {
    if kmax == 0 {
        return Err("kmax must be at least 1".into());
    }
    if kmax > cli.jack_budget {
        return Err(format!("kmax = {kmax} exceeds the Jack budget {}", cli.jack_budget));
    }
    let cells: Vec<(u32, u32)> = (1..=kmax).flat_map(|k| (2 * k..=nmax).map(move |n| (k, n))).collect();
    let rows = cells
        .par_iter()
        .map(|&(k, n)| {
            let d = degree(k, n).map_err(fail)?.degree;
            let p = plucker_degree(k, n).map_err(fail)?;
            Ok(TableRow { k, n, degree: d, plucker: p })
        })
        .collect::<Result<Vec<TableRow>, String>>()?;

    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "n": r.n,
                "degree": r.degree.to_string(),
                "plucker_degree": r.plucker.to_string(),
                "ratio": ratio_string(&r.degree, &r.plucker),
            })
        })
        .collect();
    let envelope = OutputEnvelope::new("table", json!({"kmax": kmax, "nmax": nmax}), json!({ "rows": json_rows }));
    let human = match format {
        TableFormat::Json => format!("{}\n", envelope.to_json()),
        TableFormat::Csv => {
            let mut out = String::from("k,n,degree,plucker_degree,ratio\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{},{}", r.k, r.n, r.degree, r.plucker, ratio_string(&r.degree, &r.plucker));
            }
            out
        }
    };
    Ok(Outcome::ok(envelope, human))
}

fn cmd_selberg(m: u32, p: u32, d: u32, mc: Option<u64>, seed: u64) -> Result<Outcome, String> {
    let exact = selberg_rhs(m, p, d).map_err(fail)?;
    let exact_f = ratio_to_f64(&exact);
    let estimate = mc.map(|samples| selberg_monte_carlo(m, p, d, samples, seed));
    let rel = estimate.as_ref().map(|e| (e.estimate - exact_f).abs() / exact_f);
    let results = json!({
        "exact": exact.to_string(),
        "exact_float": exact_f,
        "monte_carlo": estimate.as_ref().map(|e| json!({
            "estimate": e.estimate,
            "std_error": e.std_error,
            "samples": e.samples,
            "accepted": e.accepted,
            "relative_error": rel,
        })),
    });
    let mut envelope = OutputEnvelope::new("selberg", json!({"m": m, "p": p, "d": d, "mc": mc}), results);
    let mut human = format!("exact: {exact}  (~ {exact_f:.6e})\n");
    if let (Some(e), Some(rel)) = (&estimate, rel) {
        envelope = envelope.with_seed(seed);
        let _ = writeln!(
            human,
            "Monte-Carlo: {:.6e} +/- {:.2e}  ({} samples, {} accepted, seed {seed}, relative error {:.3}%)",
            e.estimate,
            e.std_error,
            e.samples,
            e.accepted,
            100.0 * rel
        );
    }
    Ok(Outcome::ok(envelope, human))
}

fn cmd_interpolate(cli: &Cli, k: u32, predict: Option<u32>) -> Result<Outcome, String> {
    if k > cli.jack_budget {
        return Err(format!("k = {k} exceeds the Jack budget {}", cli.jack_budget));
    }
    let fit = interpolate_pk(k).map_err(fail)?;
    let prediction = match predict {
        Some(n) => {
            let value = predict_degree(k, n, &fit.poly).map_err(fail)?;
            Some((n, value))
        }
        None => None,
    };
    let results = json!({
        "bound": fit.bound,
        "seed_n": fit.seed,
        "checked_n": fit.checked,
        "poly": fit.poly.to_string(),
        "monic": fit.poly.monic().to_string(),
        "prediction": prediction.as_ref().map(|(n, v)| json!({"n": n, "degree": v.to_string()})),
    });
    let envelope = OutputEnvelope::new("interpolate", json!({"k": k, "predict": predict}), results);
    let mut human = format!(
        "P_{k}(n) = {}\n  monic: {}\n  degree bound {}, fitted on n = {:?}, confirmed at n = {:?}\n",
        fit.poly,
        fit.poly.monic(),
        fit.bound,
        fit.seed,
        fit.checked
    );
    if let Some((n, v)) = prediction {
        let _ = writeln!(human, "  predicted degree at n = {n}: {v}");
    }
    Ok(Outcome::ok(envelope, human))
}

fn read_matrix(args: &CheckArgs) -> Result<GRMatrix, String> {
    let text = match (&args.matrix, &args.matrix_file) {
        (Some(m), _) => m.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?,
        (None, None) => return Err("one of --matrix or --matrix-file is required".into()),
    };
    parse_matrix(&text).map_err(fail)
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome, String> {
    let x = read_matrix(args)?;
    let t: GaussianRational = args.t.parse().map_err(fail)?;
    let pt = ProjPoint::new(x.clone(), t.clone()).map_err(fail)?;
    let n = x.rows();
    let member = projective_member(&pt, args.k);
    let affine = t.inv().map(|inv| affine_member(&x.scale(&inv), args.k)).transpose().map_err(fail)?;
    let t_id = GRMatrix::scalar(n, &t);
    let rank_plus = rank_exact(&(&x + &t_id));
    let rank_minus = rank_exact(&(&x - &t_id));
    let squares = (&x * &x) == GRMatrix::scalar(n, &(&t * &t));

    let results = json!({
        "n": n,
        "member": member,
        "affine_member": affine,
        "x_squared_equals_t_squared": squares,
        "rank_x_plus_t": rank_plus,
        "rank_x_minus_t": rank_minus,
    });
    let envelope = OutputEnvelope::new(
        "closure check",
        json!({"k": args.k, "t": t.to_string(), "matrix": x}),
        results,
    );
    let mut human = format!("{}\n", if member { "member" } else { "not a member" });
    let _ = writeln!(human, "  X^2 = t^2 I: {squares}");
    let _ = writeln!(human, "  rank(X + tI) = {rank_plus} (<= {} required)", args.k);
    let _ = writeln!(human, "  rank(X - tI) = {rank_minus} (<= {} required)", n.saturating_sub(args.k as usize));
    if let Some(a) = affine {
        let _ = writeln!(human, "  X/t on the affine variety: {a}");
    }
    // an affine point must also pass the projective test
    let disagreement = (affine == Some(true) && !member)
        .then(|| "affine member rejected by the projective test".to_string());
    Ok(Outcome { envelope, human, disagreement })
}

fn cmd_boundary(n: u32, d: u32) -> Result<Outcome, String> {
    let x = boundary_generator(n, d).map_err(fail)?;
    let rank = rank_exact(&x);
    let nilpotent = (&x * &x).is_zero();
    let traceless = x.trace().is_zero();
    let pt = ProjPoint::new(x.clone(), GaussianRational::zero()).map_err(fail)?;
    let membership: BTreeMap<String, bool> = (1..=n / 2).map(|k| (k.to_string(), projective_member(&pt, k))).collect();
    let wrong: Vec<u32> = (1..=n / 2).filter(|&k| membership[&k.to_string()] != (d <= k)).collect();

    let results = json!({
        "matrix": x,
        "rank": rank,
        "nilpotent": nilpotent,
        "traceless": traceless,
        "member_at_infinity_for_k": membership,
    });
    let envelope = OutputEnvelope::new("closure boundary", json!({"n": n, "d": d}), results);
    let mut human = format!("{x}");
    let _ = writeln!(human, "rank {rank}, X^2 = 0: {nilpotent}, tr X = 0: {traceless}");
    let ks: Vec<String> = membership.iter().filter(|(_, &v)| v).map(|(k, _)| k.clone()).collect();
    let _ = writeln!(human, "[X : 0] is in the closure for k = {}", if ks.is_empty() { "none".into() } else { ks.join(", ") });
    let disagreement = if rank != d as usize || !nilpotent || !traceless || !wrong.is_empty() {
        Some(format!("boundary generator checks failed (rank {rank}, membership wrong for k = {wrong:?})"))
    } else {
        None
    };
    Ok(Outcome { envelope, human, disagreement })
}

fn cmd_orbit_dim(n: u32, d: u32) -> Result<Outcome, String> {
    let dim = orbit_dimension(n, d).map_err(fail)?;
    let expected = (d * (n - d)) as usize;
    let results = json!({"dimension": dim, "expected": expected});
    let envelope = OutputEnvelope::new("closure orbit-dim", json!({"n": n, "d": d}), results);
    let human = format!("{dim}\n");
    let disagreement = (dim != expected).then(|| format!("tangent rank {dim} differs from d(n-d) = {expected}"));
    Ok(Outcome { envelope, human, disagreement })
}

fn cmd_epsilon(n: u32, k: u32, d: u32, eps: &str) -> Result<Outcome, String> {
    let eps: Rational = eps.trim().parse().map_err(|_| format!("cannot read {eps:?} as a rational"))?;
    let report = epsilon_family_check(n, k, d, &eps).map_err(fail)?;
    let envelope = OutputEnvelope::new(
        "closure epsilon",
        json!({"n": n, "k": k, "d": d, "eps": eps.to_string()}),
        serde_json::to_value(&report).expect("report serializes"),
    );
    let mut human = String::new();
    for c in &report.identities {
        let _ = writeln!(human, "  [{}] {}", if c.holds { "ok" } else { "FAILED" }, c.name);
    }
    human.push_str(if report.all_hold() { "all identities hold\n" } else { "some identities fail\n" });
    let disagreement = report.failing().map(|name| format!("identity failed: {name}"));
    Ok(Outcome { envelope, human, disagreement })
}
