use std::io::Read;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use polysmooth::budget::Budget;
use polysmooth::constructions::theta::default_tolerance;
use polysmooth::constructions::{
    binomial_product_construct, cubic_family, decomposition_construct, iterate_schinzel_with, quadratic_construct,
    schinzel_step, theta_schinzel, trinomial_construct, trivial_step, verify_certificate, Binomial, Certificate,
    TrinomialVariant, VerifyMode, VerifyOptions,
};
use polysmooth::exactalg::{format_rational, parse_int_poly, parse_poly_with_var, parse_rational, IntPoly};
use polysmooth::factorz::factor_over_z;
use polysmooth::obstruction::{quadratic_substitution_scan, rational_point_search, ScanOptions};
use polysmooth::smoothness::{factor_integer_with, smooth_witnesses, smooth_witnesses_from, smoothness_sample_with};
use polysmooth::Error;

use crate::render;
use crate::{Cli, Command, ConstructArgs, MethodArg, ModeArg, Outcome, ScanKind, VariantArg};

pub enum Failure {
    Math(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::NonIntegerExponent { .. } => Failure::Usage(e.to_string()),
            e => Failure::Math(e),
        }
    }
}

type Run = Result<Outcome, Failure>;

struct Ctx {
    json: bool,
    budget: Budget,
    verify: VerifyOptions,
    timing: bool,
    start: Instant,
}

impl Ctx {
    fn elapsed_ms(&self) -> Option<u64> {
        self.timing.then(|| self.start.elapsed().as_millis() as u64)
    }

    /// A JSON document with the schema tag first, or text.
    fn emit(&self, doc: Value, text: impl FnOnce() -> String) -> String {
        if self.json {
            let mut doc = doc;
            if let Some(ms) = self.elapsed_ms() {
                doc["elapsed_ms"] = json!(ms);
            }
            render::json_document(doc)
        } else {
            let mut s = text();
            if let Some(ms) = self.elapsed_ms() {
                s.push_str(&format!("elapsed: {ms} ms\n"));
            }
            s
        }
    }
}

pub fn run(cli: &Cli) -> Run {
    let budget = cli.budget.budget();
    let ctx = Ctx {
        json: cli.json,
        budget,
        verify: VerifyOptions {
            seed: cli.seed,
            ..budget.verify_options()
        },
        timing: cli.timing,
        start: Instant::now(),
    };
    match &cli.command {
        Command::Theta { d, tol } => theta(&ctx, *d, tol.as_deref()),
        Command::Construct(args) => construct(&ctx, args),
        Command::Verify { file, mode } => verify(&ctx, file, *mode),
        Command::Scan {
            kind,
            f,
            height,
            resume_from_shell,
        } => scan(&ctx, *kind, f, *height, *resume_from_shell),
        Command::Smooth {
            f,
            certificate,
            eps,
            count,
            csv,
        } => smooth(&ctx, f.as_deref(), certificate.as_deref(), *eps, *count, *csv),
        Command::Sample {
            certificate,
            from,
            to,
            csv,
        } => sample(&ctx, certificate, *from, *to, *csv),
        Command::FactorPoly { expr } => factor_poly(&ctx, expr),
        Command::FactorInt { n } => factor_int(&ctx, n),
    }
}

fn ok(stdout: String) -> Run {
    Ok(Outcome { stdout, failure: None })
}

fn poly_arg(name: &str, v: Option<&str>) -> Result<IntPoly, Failure> {
    let text = v.ok_or_else(|| Failure::Usage(format!("this method needs {name}")))?;
    Ok(parse_int_poly(text)?)
}

fn int_arg(name: &str, v: Option<&str>) -> Result<BigInt, Failure> {
    let text = v.ok_or_else(|| Failure::Usage(format!("this method needs {name}")))?;
    text.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{name} must be an integer, got '{text}'")))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_certificate(path: &Path) -> Result<Certificate, Failure> {
    Ok(Certificate::from_json(&read_input(path)?)?)
}

fn theta(ctx: &Ctx, d: u64, tol: Option<&str>) -> Run {
    let tol = match tol {
        Some(t) => parse_rational(t)?,
        None => default_tolerance(),
    };
    let t = theta_schinzel(d, &tol)?;
    let doc = json!({
        "command": "theta",
        "d": t.d,
        "value": format_rational(&t.value),
        "decimal": t.decimal,
        "terms": t.terms.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    ok(ctx.emit(doc, || format!("theta({d}) = {}\n", t.decimal)))
}

fn binomial_arg(text: &str) -> Result<Binomial, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("binomial must be a,b,k with integers, got '{text}'"));
    let [a, b, k] = parts.as_slice() else {
        return Err(bad());
    };
    let a: BigInt = a.parse().map_err(|_| bad())?;
    let b: BigInt = b.parse().map_err(|_| bad())?;
    let k: u64 = k.parse().map_err(|_| bad())?;
    Ok(Binomial::new(a, b, k))
}

fn construct(ctx: &Ctx, args: &ConstructArgs) -> Run {
    let f = || poly_arg("-f", args.f.as_deref());
    let cert = match args.method {
        MethodArg::Trivial => trivial_step(&f()?)?,
        MethodArg::Schinzel if args.steps <= 1 => schinzel_step(&f()?)?,
        MethodArg::Schinzel => iterate_schinzel_with(&f()?, args.steps, ctx.budget.iterate)?,
        MethodArg::Binomial => {
            if args.binomials.is_empty() {
                return Err(Failure::Usage("binomial needs at least one --binomial a,b,k".into()));
            }
            let bs = args.binomials.iter().map(|s| binomial_arg(s)).collect::<Result<Vec<_>, _>>()?;
            let y = args.y.ok_or_else(|| Failure::Usage("binomial needs -y".into()))?;
            binomial_product_construct(&bs, y)?
        }
        MethodArg::Quadratic => quadratic_construct(&f()?, args.x, &ctx.budget.quadratic)?.1,
        MethodArg::Decomposition => {
            let g = poly_arg("-g", args.g.as_deref())?;
            let h = poly_arg("-h", args.h.as_deref())?;
            decomposition_construct(&f()?, &g, &h)?
        }
        MethodArg::Trinomial => {
            let a = int_arg("-a", args.a.as_deref())?;
            let b = int_arg("-b", args.b.as_deref())?;
            let k = args.k.ok_or_else(|| Failure::Usage("trinomial needs -k".into()))?;
            let v = match args.variant {
                VariantArg::I => TrinomialVariant::I,
                VariantArg::Ii => TrinomialVariant::II,
            };
            trinomial_construct(v, &a, &b, k)?
        }
        MethodArg::CubicFamily => return cubic(ctx, &f()?, args.count),
    };
    emit_certificate(ctx, cert, args.output.as_deref())
}

/// Re-verifies with the session's options before anything is printed.
fn checked(ctx: &Ctx, cert: Certificate) -> Result<Certificate, Failure> {
    let cert = cert.verified_with(&ctx.verify);
    if !cert.is_verified() {
        return Err(Failure::Math(Error::InvariantViolated(format!(
            "{} certificate failed verification",
            cert.method
        ))));
    }
    Ok(cert)
}

fn emit_certificate(ctx: &Ctx, cert: Certificate, output: Option<&Path>) -> Run {
    let cert = checked(ctx, cert)?;
    if let Some(path) = output {
        std::fs::write(path, cert.to_json_pretty() + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let stdout = if ctx.json {
        let mut doc: Value = serde_json::from_str(&cert.to_json()).expect("certificate json");
        if let Some(ms) = ctx.elapsed_ms() {
            doc["elapsed_ms"] = json!(ms);
        }
        render::json_document(doc)
    } else {
        ctx.emit(Value::Null, || render::certificate(&cert))
    };
    ok(stdout)
}

fn cubic(ctx: &Ctx, f: &IntPoly, count: usize) -> Run {
    let entries = cubic_family(f, count)?;
    let mut checked_entries = Vec::with_capacity(entries.len());
    for mut e in entries {
        e.certificate = checked(ctx, e.certificate)?;
        checked_entries.push(e);
    }
    let doc = json!({ "command": "cubic-family", "f": f.to_string(), "entries": checked_entries });
    ok(ctx.emit(doc, || render::cubic_family(f, &checked_entries)))
}

fn verify(ctx: &Ctx, file: &Path, mode: ModeArg) -> Run {
    let cert = read_certificate(file)?;
    let opts = VerifyOptions {
        mode: match mode {
            ModeArg::Auto => VerifyMode::Auto,
            ModeArg::Symbolic => VerifyMode::Symbolic,
            ModeArg::Probabilistic => VerifyMode::Probabilistic,
        },
        ..ctx.verify
    };
    let report = verify_certificate(&cert, &opts);
    let doc = json!({ "command": "verify", "report": report });
    let stdout = ctx.emit(doc, || render::verify_report(&cert, &report));
    let failure = (!report.passed).then(|| {
        let mut details = json!({
            "identity_holds": report.identity_holds,
            "degree_ok": report.degree_ok,
            "ratio_ok": report.ratio_ok,
        });
        if let Some(w) = &report.witness {
            details["witness"] = json!(w.to_string());
        }
        json!({
            "kind": "VerificationFailed",
            "message": "certificate does not verify",
            "details": details,
        })
    });
    Ok(Outcome { stdout, failure })
}

fn scan(ctx: &Ctx, kind: ScanKind, f: &str, height: Option<u64>, resume: u64) -> Run {
    let f = parse_int_poly(f)?;
    match kind {
        ScanKind::QuadraticSubst => {
            let h = height.unwrap_or(ctx.budget.scan_height);
            let opts = ScanOptions {
                resume_from_shell: resume,
                timing: ctx.timing,
                ..ScanOptions::default()
            };
            let report = quadratic_substitution_scan(&f, h, &opts)?;
            let doc = json!({ "command": "scan", "kind": "quadratic-subst", "report": report });
            ok(ctx.emit(doc, || render::scan_report(&report)))
        }
        ScanKind::RationalPoints => {
            let h = height.unwrap_or(ctx.budget.point_height);
            let points = rational_point_search(&f, h)?;
            let doc = json!({
                "command": "scan",
                "kind": "rational-points",
                "f": f.to_string(),
                "height": h,
                "points": points,
            });
            ok(ctx.emit(doc, || render::rational_points(&f, h, &points)))
        }
    }
}

fn smooth(ctx: &Ctx, f: Option<&str>, certificate: Option<&Path>, eps: f64, count: usize, csv: bool) -> Run {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Failure::Usage(format!("--eps must lie in (0, 1], got {eps}")));
    }
    let opts = ctx.budget.witness_options();
    let report = match (f, certificate) {
        (_, Some(path)) => {
            let cert = checked(ctx, read_certificate(path)?)?;
            smooth_witnesses_from(cert, eps, count, &opts)?
        }
        (Some(f), None) => smooth_witnesses(&parse_int_poly(f)?, eps, count, &opts)?,
        (None, None) => return Err(Failure::Usage("smooth needs -f or --certificate".into())),
    };
    if csv && !ctx.json {
        return ok(render::witnesses_csv(&report));
    }
    let doc = json!({ "command": "smooth", "report": report });
    ok(ctx.emit(doc, || render::witnesses(&report)))
}

fn sample(ctx: &Ctx, certificate: &Path, from: i64, to: i64, csv: bool) -> Run {
    if from > to {
        return Err(Failure::Usage(format!("empty range {from}..{to}")));
    }
    let cert = checked(ctx, read_certificate(certificate)?)?;
    let report = smoothness_sample_with(&cert, from, to, ctx.budget.factor)?;
    if csv && !ctx.json {
        return ok(report.to_csv());
    }
    let doc = json!({ "command": "sample", "report": report });
    ok(ctx.emit(doc, || report.to_table()))
}

fn factor_poly(ctx: &Ctx, expr: &str) -> Run {
    let parsed = parse_poly_with_var(expr)?;
    let var = parsed.var.unwrap_or_else(|| "t".into());
    let p = parsed.poly;
    let (content, prim) = p.to_primitive()?;
    let z = factor_over_z(&prim)?;
    let content = content * BigInt::from(z.unit) * &z.content;
    let doc = json!({
        "command": "factor-poly",
        "input": p.display_var(&var).to_string(),
        "content": format_rational(&content),
        "factors": z.factors.iter().map(|(f, m)| json!({ "poly": f.display_var(&var).to_string(), "multiplicity": m })).collect::<Vec<_>>(),
    });
    ok(ctx.emit(doc, || render::poly_factorization(&content, &z.factors, &var)))
}

fn factor_int(ctx: &Ctx, n: &str) -> Run {
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("not an integer: '{n}'")))?;
    let pf = factor_integer_with(&n, ctx.budget.factor)?;
    let sign = if n.is_negative() { "-" } else { "" };
    let doc = json!({
        "command": "factor-int",
        "n": n.to_string(),
        "sign": if n.is_negative() { -1 } else { 1 },
        "factorization": pf,
    });
    ok(ctx.emit(doc, || {
        if n.abs().is_one() {
            format!("{n} = {n}\n")
        } else {
            format!("{n} = {sign}{pf}\n")
        }
    }))
}
