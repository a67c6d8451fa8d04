//! Text and JSON rendering of command results.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::One;
use serde_json::Value;

use polysmooth::constructions::{Certificate, CubicFamilyEntry, SCHEMA_VERSION, VerifyReport};
use polysmooth::exactalg::{format_rational, IntPoly};
use polysmooth::obstruction::{RationalPoint, ScanReport};
use polysmooth::smoothness::WitnessReport;

/// Compact JSON with `"schema"` as the first key.
pub fn json_document(doc: Value) -> String {
    let body = serde_json::to_string(&doc).expect("value serializes");
    match body.strip_prefix('{') {
        Some("}") => format!("{{\"schema\":{SCHEMA_VERSION}}}\n"),
        Some(rest) if !body.starts_with("{\"schema\"") => format!("{{\"schema\":{SCHEMA_VERSION},{rest}\n"),
        _ => body + "\n",
    }
}

pub fn error_document(err: Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("error".into(), err);
    json_document(Value::Object(doc)).trim_end().to_string()
}

pub fn certificate(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "method: {}", c.method);
    let _ = writeln!(s, "f(t) = {}", c.f);
    let _ = writeln!(s, "g(t) = {}", c.g);
    let _ = writeln!(s, "scalar: {}", format_rational(&c.scalar));
    let _ = writeln!(s, "factors ({}):", c.factors.len());
    for fe in &c.factors {
        let _ = writeln!(s, "  [deg {:>4}] {fe}", fe.degree());
    }
    let _ = writeln!(
        s,
        "polysmoothness: {} (max factor degree {} of total {})",
        format_rational(&c.polysmoothness),
        c.max_factor_degree(),
        c.total_degree()
    );
    if let Some(seed) = &c.seed {
        let _ = writeln!(
            s,
            "seed: k = {}, p = {}, h = {}, (m, n) = ({}, {}), (A, B) = ({}, {}), z = {}",
            seed.k, seed.p, seed.h, seed.m, seed.n, seed.big_a, seed.big_b, seed.z
        );
    }
    if let Some(p) = &c.partition {
        let sets: Vec<String> = p
            .sets
            .iter()
            .map(|set| format!("{{{}}}", set.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        let _ = writeln!(s, "partition: y = {}, sets {}, Gamma = {}", p.y, sets.join(" "), p.gamma);
    }
    if let Some(r) = &c.verified {
        let _ = writeln!(s, "{}", verify_line(r));
    }
    for n in &c.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn verify_line(r: &VerifyReport) -> String {
    let mode = format!("{:?}", r.mode).to_lowercase();
    let verdict = if r.passed { "passed" } else { "FAILED" };
    let strength = if r.conclusive { "conclusive" } else { "probabilistic" };
    let points = if r.points > 0 {
        format!(", {} points", r.points)
    } else {
        String::new()
    };
    format!("verified: {mode}, {verdict} ({strength}{points})")
}

pub fn verify_report(c: &Certificate, r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "method: {}, total degree {}", c.method, c.total_degree());
    let _ = writeln!(s, "{}", verify_line(r));
    let _ = writeln!(s, "identity: {}", r.identity_holds);
    let _ = writeln!(s, "degrees: {}", r.degree_ok);
    let _ = writeln!(s, "ratio: {}", r.ratio_ok);
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "witness: t = {w}");
    }
    let known: Vec<String> = r
        .irreducible
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|b| format!("#{}:{}", i + 1, if b { "irreducible" } else { "reducible" })))
        .collect();
    if !known.is_empty() {
        let _ = writeln!(s, "explicit factors: {}", known.join(" "));
    }
    s
}

pub fn cubic_family(f: &IntPoly, entries: &[CubicFamilyEntry]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f(t) = {f}: {} entries", entries.len());
    for e in entries {
        let _ = writeln!(
            s,
            "beta = {}  B/A = {}  g = {}  f(g) = {} * ({}) * ({})",
            e.beta_display(),
            format_rational(&e.ratio),
            e.g,
            format_rational(&e.kappa),
            e.m_beta,
            e.m_gamma
        );
    }
    s
}

pub fn scan_report(r: &ScanReport) -> String {
    let mut s = String::new();
    let st = &r.stats;
    let _ = writeln!(
        s,
        "f(t) = {}, height {} (shells {}..={})",
        r.f, r.height, r.first_shell, r.height
    );
    let _ = writeln!(
        s,
        "candidates {}  filtered {}  factored {}  hits {}  unknown {}",
        st.candidates, st.filtered, st.factored, st.hits, st.unknowns
    );
    for h in &r.hits {
        let parts: Vec<String> = h
            .factorization
            .factors
            .iter()
            .map(|(p, m)| if *m == 1 { format!("({p})") } else { format!("({p})^{m}") })
            .collect();
        let _ = writeln!(s, "hit (a, b, c) = ({}, {}, {}): {}", h.a, h.b, h.c, parts.join(" * "));
    }
    for (a, b, c) in &r.unknown {
        let _ = writeln!(s, "undecided (a, b, c) = ({a}, {b}, {c})");
    }
    if r.hits.is_empty() && r.unknown.is_empty() {
        let _ = writeln!(s, "no reducible substitution found");
    }
    s
}

pub fn rational_points(f: &IntPoly, h: u64, pts: &[RationalPoint]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f(t) = {f}, height {h}: {} point(s) with y != 0", pts.len());
    for p in pts {
        let _ = writeln!(s, "(x, y) = ({}, {})  A*phi = {} = {}^2  z = {}", p.x, p.y, p.value, p.root, format_rational(&p.z));
    }
    s
}

pub fn witnesses(r: &WitnessReport) -> String {
    let mut s = String::new();
    let c = &r.certificate;
    let _ = writeln!(
        s,
        "certificate: {} with g(t) = {}, ratio {}",
        c.method,
        c.g,
        format_rational(&c.polysmoothness)
    );
    let _ = writeln!(
        s,
        "eps = {}, {} witness(es) in {} samples ({} not factored within budget)",
        r.eps,
        r.witnesses.len(),
        r.samples,
        r.undecided
    );
    for w in &r.witnesses {
        let _ = writeln!(
            s,
            "m = {}  n = {}  f(n) = {}  LPF = {}  log LPF / log n = {:.6}",
            w.m, w.n, w.factorization, w.lpf, w.exponent
        );
    }
    s
}

pub fn witnesses_csv(r: &WitnessReport) -> String {
    let mut s = String::from("m,n,value,lpf,exponent\n");
    for w in &r.witnesses {
        let _ = writeln!(s, "{},{},{},{},{}", w.m, w.n, w.value, w.lpf, w.exponent);
    }
    s
}

pub fn poly_factorization(content: &BigRational, factors: &[(IntPoly, usize)], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !content.is_one() || factors.is_empty() {
        parts.push(format_rational(content));
    }
    for (p, m) in factors {
        let p = p.display_var(var);
        parts.push(if *m == 1 { format!("({p})") } else { format!("({p})^{m}") });
    }
    parts.join(" * ") + "\n"
}
