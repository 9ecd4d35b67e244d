use std::fmt::Write as _;

use super::Report;

/// Plain-text summary: one row per field, then every assertion.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let g = &r.geometry;
    let order = match (g.s, g.t) {
        (Some(s), Some(t)) => format!("({s}, {t})"),
        _ => "-".into(),
    };
    let _ = writeln!(out, "{}  n={} order={} points={} lines={}", g.label, g.n, order, g.num_points, g.num_lines);
    let _ = writeln!(out, "status: {:?}", r.status);
    let _ = writeln!(out);
    let _ = writeln!(out, "{:>4} {:>9} {:>6} {:>5} {:>6} {:>6} {:>6}  dual", "p", "applies", "rank", "minw", "words", "lines", "traces");
    for f in &r.fields {
        let mw = f.min_weight.as_ref();
        let cell = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        let dual = match &f.dual {
            Some(d) => match &d.result {
                Some(res) => format!("{res:?}"),
                None => d.note.clone().unwrap_or_default(),
            },
            None => "-".into(),
        };
        let _ = writeln!(
            out,
            "{:>4} {:>9} {:>6} {:>5} {:>6} {:>6} {:>6}  {}",
            f.p,
            f.theorem_applicable,
            f.rank,
            cell(mw.and_then(|m| m.weight)),
            cell(mw.map(|m| m.words)),
            cell(mw.map(|m| m.line_multiples)),
            cell(f.classification.as_ref().map(|c| c.classified)),
            dual
        );
    }
    let _ = writeln!(out);
    for a in &r.assertions {
        let _ = writeln!(out, "[{}] {:<8} {}", if a.passed { "PASS" } else { "FAIL" }, a.check, a.detail);
    }
    for o in &r.observations {
        let _ = writeln!(out, "[note] {:<8} {}", o.check, o.detail);
    }
    for o in &r.guard_notes {
        let _ = writeln!(out, "[guard] {:<7} {}", o.check, o.detail);
    }
    out
}
