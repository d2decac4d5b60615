use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cascade_lab::cascade::{
    c1_length_formula, cascade_of, chain_cascade, inversion_partition, length_additivity,
    product_formula, verify_altdef, verify_cascade_structure,
};
use cascade_lab::check::{Outcome, Status};
use cascade_lab::harness::{
    golden_counts, run_sweep, types_up_to_rank, ParabolicMode, SweepConfig,
};
use cascade_lab::minimal::{compute_d_x, enumerate_minimal_degrees, lifting};
use cascade_lab::quasihom::{certificate, format_root_list, verify_positivity, Assumption, Certificate};
use cascade_lab::rootsys::{format_vec, parse_parabolic};
use cascade_lab::weyl::longest_element;
use cascade_lab::{Context, Degree, DynkinSpec, Error, Result, RootSystem};

#[derive(Parser)]
#[command(name = "cascade-lab", version, about = "Minimal degrees, cascades and certificates for G/P")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cartan matrix and positive roots.
    Roots(Args),
    /// Longest elements and the dimension of G/P.
    Weyl(Args),
    /// Greedy decompositions, supports and z-elements of degrees.
    Greedy(Args),
    /// Number of greedy decompositions.
    CountGreedy(Args),
    /// The table of minimal degrees with z and liftings.
    Minimal(Args),
    /// The minimal degree d_X with z = w_o.
    Dx(Args),
    /// Liftings of minimal degrees to P = B.
    Lift(Args),
    /// Generalized cascade of a minimal degree with its checks.
    Cascade(Args),
    /// Quasi-homogeneity certificates.
    Certify(Args),
    /// Batch verification sweep.
    Verify(Args),
    /// The D-series counting table.
    Golden(Args),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Clone)]
struct Args {
    /// Dynkin type, e.g. A3, D4, E6.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Comma list of Bourbaki indices of Delta_P ('' for P = B).
    #[arg(long)]
    parabolic: Option<String>,
    /// Comma list of coordinates, or `all`, or `dX`.
    #[arg(long)]
    degree: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output file (for verify: the JSON report).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Comma list of check names for verify.
    #[arg(long)]
    checks: Option<String>,
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{:<1$}", c, w[i])).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    let rules: Vec<String> = w.iter().map(|&n| "-".repeat(n)).collect();
    out += &line(rules.iter().map(|s| s.as_str()).collect());
    for r in rows {
        out += &line(r.iter().map(|s| s.as_str()).collect());
    }
    out
}

fn spec_of(a: &Args) -> Result<DynkinSpec> {
    let t = a.ty.as_deref().ok_or_else(|| Error::Usage("--type is required".into()))?;
    t.parse::<DynkinSpec>().map_err(|e| match e {
        Error::Usage(m) => Error::Usage(format!("--type: {m}")),
        other => other,
    })
}

fn context_of(a: &Args) -> Result<Context> {
    let spec = spec_of(a)?;
    let rs = Arc::new(RootSystem::new(spec)?);
    let p = parse_parabolic(a.parabolic.as_deref().unwrap_or(""), spec.rank)?;
    Ok(Context::new(rs, p))
}

#[derive(Clone, Copy)]
enum AllMeans {
    Grid,
    Minimal,
}

fn degrees_of(ctx: &Context, a: &Args, all: AllMeans) -> Result<Vec<Degree>> {
    match a.degree.as_deref().map(str::trim) {
        None | Some("dX") | Some("dx") => Ok(vec![compute_d_x(ctx)?]),
        Some("all") => match all {
            AllMeans::Grid => Ok(compute_d_x(ctx)?.box_below()),
            AllMeans::Minimal => enumerate_minimal_degrees(ctx),
        },
        Some(s) => Ok(vec![Degree::parse_with_len(s, ctx.free().len())?]),
    }
}

fn header(ctx: &Context) -> String {
    format!("{}  dim {}\n", ctx.label(), ctx.dim_x())
}

fn ctx_json(ctx: &Context) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("type".into(), json!(ctx.rs().spec.to_string()));
    m.insert("parabolic".into(), json!(ctx.parabolic().to_bourbaki()));
    m
}

fn cmd_roots(a: &Args) -> Result<Output> {
    let rs = RootSystem::new(spec_of(a)?)?;
    let mut text = format!(
        "{}  rank {}  positive roots {}  highest root {}\n\nCartan matrix\n",
        rs.spec,
        rs.rank,
        rs.num_positive(),
        rs.format_root(rs.highest_root())
    );
    for row in &rs.cartan {
        text += &format!("  {}\n", row.iter().map(|c| format!("{c:>2}")).collect::<Vec<_>>().join(" "));
    }
    text += "\n";
    let rows: Vec<Vec<String>> = (0..rs.num_positive())
        .map(|k| {
            vec![
                (k + 1).to_string(),
                rs.format_root(k),
                rs.height(k).to_string(),
                if rs.is_long(k) { "long" } else { "short" }.to_string(),
            ]
        })
        .collect();
    text += &table(&["index", "root", "height", "length"], &rows);
    let json = json!({
        "type": rs.spec.to_string(),
        "rank": rs.rank,
        "cartan": rs.cartan,
        "num_positive": rs.num_positive(),
        "highest_root": rs.format_root(rs.highest_root()),
        "roots": rows.iter().map(|r| json!({
            "index": k_of(&r[0]), "root": r[1], "height": k_of(&r[2]), "length": r[3],
        })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, json))
}

fn k_of(s: &str) -> i64 {
    s.parse().expect("numeric cell")
}

fn cmd_weyl(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let rs = ctx.rs();
    let wo = ctx.w_o();
    let wp = longest_element(rs, ctx.parabolic());
    let wo_min = ctx.coset().min_rep(rs, wo);
    let order = rs.spec.weyl_order().to_string();
    let rows = vec![
        vec!["weyl_order".to_string(), order.clone()],
        vec!["w_o".to_string(), wo.word_string(rs)],
        vec!["w_o_length".to_string(), wo.length().to_string()],
        vec!["w_P".to_string(), wp.word_string(rs)],
        vec!["w_P_length".to_string(), wp.length().to_string()],
        vec!["w_o_min_rep".to_string(), wo_min.word_string(rs)],
        vec!["dim".to_string(), ctx.dim_x().to_string()],
    ];
    let text = header(&ctx) + &table(&["field", "value"], &rows);
    let mut m = ctx_json(&ctx);
    m.insert("weyl_order".into(), json!(order));
    m.insert("w_o".into(), json!(wo.word_string(rs)));
    m.insert("w_o_length".into(), json!(wo.length()));
    m.insert("w_P".into(), json!(wp.word_string(rs)));
    m.insert("w_P_length".into(), json!(wp.length()));
    m.insert("w_o_min_rep".into(), json!(wo_min.word_string(rs)));
    m.insert("dim".into(), json!(ctx.dim_x()));
    Ok(Output::ok(text, Value::Object(m)))
}

fn roots_strings(ctx: &Context, roots: &[usize]) -> Vec<String> {
    roots.iter().map(|&k| ctx.rs().format_root(k)).collect()
}

fn bracket(v: &[String]) -> String {
    v.iter().map(|r| format!("({r})")).collect::<Vec<_>>().join(" ")
}

fn cmd_greedy(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let rs = ctx.rs();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for d in degrees_of(&ctx, a, AllMeans::Grid)? {
        let g = roots_strings(&ctx, &ctx.greedy_decomposition(&d));
        let maxr = roots_strings(&ctx, &ctx.maximal_roots(&d));
        let supp = ctx.extended_support(&d).to_bourbaki();
        let comps: Vec<String> = ctx.connected_components(&d).iter().map(|c| c.to_string()).collect();
        let count = ctx.count_greedy(&d).to_string();
        let z = ctx.z_d_p(&d).word_string(rs);
        let tz = ctx.tilde_z_d_p(&d).word_string(rs);
        rows.push(vec![
            d.to_string(),
            bracket(&g),
            count.clone(),
            format_vec(&supp),
            comps.join(" "),
            z.clone(),
            tz.clone(),
        ]);
        items.push(json!({
            "degree": d.to_string(),
            "greedy": g,
            "count": count,
            "maximal_roots": maxr,
            "extended_support": supp,
            "components": comps,
            "z": z,
            "tilde_z": tz,
        }));
    }
    let text = header(&ctx)
        + &table(&["degree", "greedy", "count", "support", "components", "z", "tilde_z"], &rows);
    let mut m = ctx_json(&ctx);
    m.insert("degrees".into(), Value::Array(items));
    Ok(Output::ok(text, Value::Object(m)))
}

fn cmd_count_greedy(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for d in degrees_of(&ctx, a, AllMeans::Grid)? {
        let n = ctx.count_greedy(&d).to_string();
        rows.push(vec![d.to_string(), n.clone()]);
        items.push(json!({"degree": d.to_string(), "count": n}));
    }
    let text = header(&ctx) + &table(&["degree", "count"], &rows);
    let mut m = ctx_json(&ctx);
    m.insert("degrees".into(), Value::Array(items));
    Ok(Output::ok(text, Value::Object(m)))
}

fn cmd_minimal(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let rs = ctx.rs();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for d in enumerate_minimal_degrees(&ctx)? {
        let z = ctx.z_d_p(&d);
        let e = lifting(&ctx, &d)?;
        rows.push(vec![d.to_string(), z.word_string(rs), z.length().to_string(), e.to_string()]);
        items.push(json!({
            "degree": d.to_string(),
            "z": z.word_string(rs),
            "z_length": z.length(),
            "lifting": e.to_string(),
        }));
    }
    let text = header(&ctx) + &table(&["degree", "z", "length", "lifting"], &rows);
    let mut m = ctx_json(&ctx);
    m.insert("minimal_degrees".into(), Value::Array(items));
    Ok(Output::ok(text, Value::Object(m)))
}

fn cmd_dx(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let rs = ctx.rs();
    let dx = compute_d_x(&ctx)?;
    let z = ctx.z_d_p(&dx);
    let rows = vec![
        vec!["d_X".to_string(), dx.to_string()],
        vec!["z".to_string(), z.word_string(rs)],
        vec!["z_length".to_string(), z.length().to_string()],
        vec!["c1".to_string(), ctx.c1_pairing(&dx).to_string()],
    ];
    let text = header(&ctx) + &table(&["field", "value"], &rows);
    let mut m = ctx_json(&ctx);
    m.insert("d_x".into(), json!(dx.to_string()));
    m.insert("z".into(), json!(z.word_string(rs)));
    m.insert("z_length".into(), json!(z.length()));
    m.insert("c1".into(), json!(ctx.c1_pairing(&dx)));
    m.insert("dim".into(), json!(ctx.dim_x()));
    Ok(Output::ok(text, Value::Object(m)))
}

fn cmd_lift(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let rs = ctx.rs();
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for d in degrees_of(&ctx, a, AllMeans::Minimal)? {
        let e = lifting(&ctx, &d)?;
        let zd = ctx.z_d_p(&d).word_string(rs);
        let ze = ctx.borel().z_d_p(&e).word_string(rs);
        rows.push(vec![d.to_string(), e.to_string(), zd.clone(), ze.clone()]);
        items.push(json!({"degree": d.to_string(), "lifting": e.to_string(), "z_p": zd, "z_b": ze}));
    }
    let text = header(&ctx) + &table(&["degree", "lifting", "z_d^P", "z_e^B"], &rows);
    let mut m = ctx_json(&ctx);
    m.insert("liftings".into(), Value::Array(items));
    Ok(Output::ok(text, Value::Object(m)))
}

fn check_json(name: &str, o: &Outcome) -> (Vec<String>, Value) {
    let st = o.status();
    let row = vec![
        name.to_string(),
        st.to_string(),
        o.checked.to_string(),
        o.failures.first().cloned().unwrap_or_default(),
    ];
    let v = json!({
        "check": name,
        "status": st,
        "checked": o.checked,
        "failures": o.failures,
    });
    (row, v)
}

fn cmd_cascade(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let rs = ctx.rs();
    let cb = ctx.borel();
    let mut text = header(&ctx);
    let mut items = Vec::new();
    let mut failed = false;
    for d in degrees_of(&ctx, a, AllMeans::Minimal)? {
        let e = if ctx.is_borel() { d.clone() } else { lifting(&ctx, &d)? };
        let c = cascade_of(cb, &e)?;
        let roots = roots_strings(cb, &c.roots);
        let mut chain_rows = Vec::new();
        let mut chains = Vec::new();
        for phi in 0..rs.rank {
            let ch = chain_cascade(rs, &c, phi);
            let members = roots_strings(cb, &ch.chain);
            chain_rows.push(vec![
                format!("s{}", phi + 1),
                bracket(&members),
                ch.totally_ordered.to_string(),
            ]);
            chains.push(json!({"phi": phi + 1, "chain": members, "totally_ordered": ch.totally_ordered}));
        }
        let mut checks: Vec<(&str, Outcome)> = Vec::new();
        checks.push(("cascade.structure", verify_cascade_structure(cb, &c)));
        let mut o = Outcome::new();
        let (prod, ok) = product_formula(cb, &c);
        o.check(ok, || format!("product {} differs from z_e", prod.word_string(rs)));
        checks.push(("cascade.product", o));
        let mut o = Outcome::new();
        let (l, r) = c1_length_formula(cb, &c);
        o.check(l == r, || format!("l(z)={l} vs {r}"));
        checks.push(("cascade.c1_length", o));
        checks.push(("cascade.altdef", verify_altdef(cb, &c)?));
        checks.push(("cascade.inversion_partition", inversion_partition(cb, &c, ctx.parabolic())));
        let lp = length_additivity(cb, &c, ctx.parabolic());
        let mut o = Outcome::new();
        o.check(lp.absolute.0 == lp.absolute.1 && lp.relative.0 == lp.relative.1, || {
            format!("lengths {:?} {:?}", lp.absolute, lp.relative)
        });
        checks.push(("cascade.length_additivity", o));
        checks.push(("positivity", verify_positivity(cb, &e, ctx.parabolic())?));
        let (check_rows, check_vals): (Vec<_>, Vec<_>) = checks.iter().map(|(n, o)| check_json(n, o)).unzip();
        failed |= checks.iter().any(|(_, o)| o.status() == Status::Fail);

        text += &format!("\ndegree {d}  lifting {e}\ncascade {}\n\n", bracket(&roots));
        text += &table(&["phi", "chain", "totally_ordered"], &chain_rows);
        text += "\n";
        text += &table(&["check", "status", "checked", "witness"], &check_rows);
        items.push(json!({
            "degree": d.to_string(),
            "lifting": e.to_string(),
            "cascade": roots,
            "chains": chains,
            "checks": check_vals,
        }));
    }
    let mut m = ctx_json(&ctx);
    m.insert("cascades".into(), Value::Array(items));
    Ok(Output { text, json: Value::Object(m), code: failed as u8 })
}

fn certificate_rows(c: &Certificate) -> Vec<Vec<String>> {
    let kv = |k: &str, v: String| vec![k.to_string(), v];
    vec![
        kv("type", c.dynkin.clone()),
        kv("parabolic", format_vec(&c.parabolic)),
        kv("degree", c.degree.to_string()),
        kv("lifting", c.lifting.to_string()),
        kv("cascade_outside", format_root_list(&c.cascade_outside)),
        kv("sigma", c.sigma.to_string()),
        kv("admissible", c.admissible.to_string()),
        kv("assumption", c.assumption.to_string()),
        kv("assumption_mask", c.assumption_mask.to_string()),
        kv("c1", c.c1.to_string()),
        kv("z", c.z.clone()),
        kv("z_length", c.z_length.to_string()),
        kv("lhs", c.lhs.to_string()),
        kv("tangent_directions", format_root_list(&c.tangent_directions)),
        kv("td_card", c.td_card.to_string()),
        kv("inequality_ok", c.inequality_ok.to_string()),
        kv("dim_x", c.dim_x.to_string()),
        kv("dim_moduli", c.dim_moduli.to_string()),
        kv("dim_m2", c.dim_m2.to_string()),
        kv("endpoints", format!("{} {}", c.endpoints.0, c.endpoints.1)),
        kv(
            "curve_degrees",
            c.curve_degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
        ),
        kv("degenerate", c.degenerate.to_string()),
    ]
}

fn cmd_certify(a: &Args) -> Result<Output> {
    let ctx = context_of(a)?;
    let many = a.degree.as_deref().map(str::trim) == Some("all");
    let certs = degrees_of(&ctx, a, AllMeans::Minimal)?
        .iter()
        .map(|d| certificate(&ctx, d))
        .collect::<Result<Vec<_>>>()?;
    let failed = certs.iter().any(|c| c.assumption != Assumption::None && !c.inequality_ok);
    let mut text = String::new();
    for (i, c) in certs.iter().enumerate() {
        if i > 0 {
            text += "\n";
        }
        text += &table(&["field", "value"], &certificate_rows(c));
    }
    let json = if many {
        serde_json::to_value(&certs)
    } else {
        serde_json::to_value(&certs[0])
    }
    .map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Output { text, json, code: failed as u8 })
}

fn cmd_verify(a: &Args) -> Result<Output> {
    let types = match &a.ty {
        Some(_) => vec![spec_of(a)?],
        None => types_up_to_rank(a.max_rank.unwrap_or(3)),
    };
    let mut cfg = SweepConfig::new(types);
    if let Some(r) = a.max_rank {
        cfg.max_rank = r;
    }
    if let Some(p) = &a.parabolic {
        let rank = cfg.types.iter().map(|t| t.rank).min().unwrap_or(0);
        let set = parse_parabolic(p, rank)?;
        cfg.parabolic_mode = ParabolicMode::Listed(vec![set.to_bourbaki()]);
    }
    if let Some(c) = &a.checks {
        cfg.checks = c.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    }
    cfg.jobs = a.jobs;
    cfg.output = a.out.as_ref().map(|p| p.display().to_string());
    let report = run_sweep(&cfg)?;

    let rows: Vec<Vec<String>> = report
        .summary
        .per_check
        .iter()
        .map(|(k, c)| {
            vec![
                k.clone(),
                c.pass.to_string(),
                c.fail.to_string(),
                c.skipped.to_string(),
                c.open_case.to_string(),
            ]
        })
        .collect();
    let mut text = table(&["check", "pass", "fail", "skipped", "open-case"], &rows);
    let t = &report.summary.total;
    text += &format!(
        "\ntotal  pass {}  fail {}  skipped {}  open-case {}\n",
        t.pass, t.fail, t.skipped, t.open_case
    );
    for r in report.results.iter().filter(|r| matches!(r.status, Status::Fail | Status::Skipped)) {
        text += &format!(
            "\n{} {} {}/{{{}}}: {}\n",
            r.status,
            r.check,
            r.context.dynkin,
            format_vec(&r.context.parabolic),
            r.witness.as_deref().unwrap_or("")
        );
        if let Some(cmd) = &r.reproduce {
            text += &format!("  reproduce: {cmd}\n");
        }
    }
    let json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    if let Some(path) = &a.out {
        write_file(path, &render_json(&json))?;
    }
    Ok(Output { text, json, code: report.exit_code() as u8 })
}

fn cmd_golden(_a: &Args) -> Result<Output> {
    let rows = golden_counts()?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format!("D{}", r.p),
                r.r.to_string(),
                r.n.clone(),
                r.expected_r.to_string(),
                r.expected_n.clone(),
                if r.ok { "pass" } else { "fail" }.to_string(),
            ]
        })
        .collect();
    let text = table(&["type", "r", "N", "expected_r", "expected_N", "status"], &cells);
    let ok = rows.iter().all(|r| r.ok);
    let json = serde_json::to_value(&rows).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Output { text, json, code: (!ok) as u8 })
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn write_file(path: &PathBuf, s: &str) -> Result<()> {
    std::fs::write(path, s).map_err(|e| Error::Usage(format!("--out: {}: {e}", path.display())))
}

fn run(cmd: &Cmd) -> Result<(Output, Format, Option<PathBuf>, bool)> {
    let (out, a, is_verify) = match cmd {
        Cmd::Roots(a) => (cmd_roots(a)?, a, false),
        Cmd::Weyl(a) => (cmd_weyl(a)?, a, false),
        Cmd::Greedy(a) => (cmd_greedy(a)?, a, false),
        Cmd::CountGreedy(a) => (cmd_count_greedy(a)?, a, false),
        Cmd::Minimal(a) => (cmd_minimal(a)?, a, false),
        Cmd::Dx(a) => (cmd_dx(a)?, a, false),
        Cmd::Lift(a) => (cmd_lift(a)?, a, false),
        Cmd::Cascade(a) => (cmd_cascade(a)?, a, false),
        Cmd::Certify(a) => (cmd_certify(a)?, a, false),
        Cmd::Verify(a) => (cmd_verify(a)?, a, true),
        Cmd::Golden(a) => (cmd_golden(a)?, a, false),
    };
    Ok((out, a.format, a.out.clone(), is_verify))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok((out, fmt, path, is_verify)) => {
            let rendered = match fmt {
                Format::Text => out.text,
                Format::Json => render_json(&out.json),
            };
            match path {
                Some(p) if !is_verify => {
                    if let Err(e) = write_file(&p, &rendered) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                _ => print!("{rendered}"),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Usage(_) | Error::Contract(_) => 2,
                Error::Resource(_) | Error::Internal(_) => 1,
            };
            ExitCode::from(code)
        }
    }
}
