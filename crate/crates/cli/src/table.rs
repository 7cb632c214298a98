//! Plain-text renderings for `--format table`.

use std::fmt::Write;

use gkm_core::gkm::{GkmGraph, ValidationReport};
use gkm_core::series::{BasicReport, BettiTable, CheckReport, DegreeSeries};

fn rows<'a>(header: [&str; 2], items: impl Iterator<Item = (String, String)> + 'a) -> String {
    let items: Vec<(String, String)> = items.collect();
    let w = items
        .iter()
        .map(|(a, _)| a.len())
        .chain([header[0].len()])
        .max()
        .unwrap_or(0);
    let mut out = format!("{:<w$}  {}\n", header[0], header[1]);
    for (a, b) in items {
        let _ = writeln!(out, "{a:<w$}  {b}");
    }
    out
}

pub fn series(label: &str, s: &DegreeSeries) -> String {
    let mut out = rows(
        ["degree", label],
        s.coeffs().iter().enumerate().map(|(k, c)| (k.to_string(), c.to_string())),
    );
    let _ = writeln!(out, "cutoff  {}", s.cutoff());
    out
}

pub fn basic(eq: &DegreeSeries, basic: &DegreeSeries, report: &BasicReport) -> String {
    let len = eq.coeffs().len().max(basic.coeffs().len());
    let mut out = format!("{:<6}  {:>11}  {:>5}\n", "degree", "equivariant", "basic");
    for k in 0..len {
        let _ = writeln!(out, "{k:<6}  {:>11}  {:>5}", eq.get(k), basic.get(k));
    }
    let _ = writeln!(out, "cutoff  {}", basic.cutoff());
    let _ = writeln!(out, "sum     {}", report.sum);
    let _ = writeln!(out, "verdict {:?}", report.verdict);
    out
}

pub fn betti(t: &BettiTable) -> String {
    let mut out = rows(
        ["degree", "betti"],
        t.betti.iter().enumerate().map(|(k, b)| (k.to_string(), b.to_string())),
    );
    let _ = writeln!(out, "dim     {}", t.manifold_dim);
    out
}

pub fn validation(r: &ValidationReport) -> String {
    let mut out = rows(
        ["check", "result"],
        r.checks.iter().map(|c| {
            let verdict = match (c.passed, c.advisory) {
                (true, _) => "ok".to_string(),
                (false, true) => format!("warn {}", c.reason),
                (false, false) => format!("FAIL {}", c.reason),
            };
            (c.name.clone(), verdict)
        }),
    );
    for c in r.checks.iter().filter(|c| !c.passed) {
        for d in &c.details {
            let _ = writeln!(out, "  {}: {d}", c.name);
        }
    }
    let _ = writeln!(out, "valid   {}", r.valid);
    out
}

pub fn checks(r: &CheckReport) -> String {
    let mut out = rows(
        ["check", "status"],
        r.checks.iter().map(|c| {
            let status = serde_json::to_value(c.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            (c.name.clone(), format!("{status}  {}", c.detail))
        }),
    );
    let basic: Vec<String> = r.basic.coeffs().iter().map(i64::to_string).collect();
    let _ = writeln!(out, "basic   [{}]", basic.join(", "));
    let _ = writeln!(out, "minimal {}", r.minimal);
    let _ = writeln!(out, "cutoff  {}", r.cutoff);
    out
}

pub fn graph(g: &GkmGraph) -> String {
    let mut out = format!("rank {}\n", g.rank());
    out += &rows(
        ["vertex", "isotropy dim"],
        g.vertices().iter().map(|v| (v.id.clone(), v.isotropy.dim().to_string())),
    );
    out += &rows(
        ["edge", "endpoints"],
        g.edges().iter().map(|e| (e.id.clone(), format!("{} {}", e.source, e.target))),
    );
    out
}
