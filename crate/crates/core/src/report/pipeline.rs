use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    Assertion, AxiomSection, BlockingSection, Check, ClassificationSection, CxSection, DualSection, FieldSection,
    GeometryInfo, MinWeightSection, Observation, PerpSection, Report, ReportError, RunConfig, StarSection, Status,
    TraceSection, TraceStats,
};
use crate::code::{
    check_line_sums, covered, default_weight_guard, dual_min_weight, min_weight, verify_cx_dual, weighted_vector,
    CodeError, DualMinWeight, LinearCode, PointVector, Word,
};
use crate::field::{field_condition, FieldSpec};
use crate::geometry::{distances, expected_counts, verify_polygon, DistanceOracle, Element, Geometry};
use crate::par;
use crate::traces::{
    binomial, blocking_converse, enumerate_traces, is_projective_point, is_x_blocking, line_blocking_bound,
    line_meets_ball, min_x_blocking_size, projective_trace_blocking_check, star_witness, BlockingCertificate,
    PerpVariant, TraceError, TraceIndex,
};

#[derive(Default)]
struct Log {
    assertions: Vec<Assertion>,
    observations: Vec<Observation>,
    guard_notes: Vec<Observation>,
    timing: BTreeMap<String, u64>,
}

impl Log {
    fn assert(&mut self, check: Check, passed: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { check: check.name().into(), passed, detail: detail.into() });
    }

    fn observe(&mut self, check: Check, detail: impl Into<String>) {
        self.observations.push(Observation { check: check.name().into(), detail: detail.into() });
    }

    fn guard(&mut self, check: Check, detail: impl Into<String>) {
        self.guard_notes.push(Observation { check: check.name().into(), detail: detail.into() });
    }

    fn time<T>(&mut self, stage: Check, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.timing.insert(stage.name().into(), start.elapsed().as_millis() as u64);
        out
    }
}

/// Everything the stages share once the geometry is certified.
struct Ctx<'a> {
    config: &'a RunConfig,
    g: &'a Geometry,
    dist: DistanceOracle,
    s: usize,
    t: usize,
    /// Half the gonality, when it is even.
    m: Option<usize>,
    thick: bool,
    index: Option<TraceIndex>,
}

pub fn run_pipeline(config: &RunConfig, base: Option<&Path>) -> Result<Report, ReportError> {
    let (g, n) = config.geometry.load(base)?;
    if n < 3 {
        return Err(ReportError::Gonality(n));
    }
    let fields = config
        .fields
        .iter()
        .map(|&p| FieldSpec::prime(p).map_err(|source| ReportError::Field { p, source }))
        .collect::<Result<Vec<_>, _>>()?;

    let mut log = Log::default();
    let axioms = log.time(Check::Axioms, |log| axiom_stage(&g, n, log));
    let info = GeometryInfo {
        label: g.label().to_string(),
        n,
        num_points: g.num_points(),
        num_lines: g.num_lines(),
        s: axioms.report.order.map(|o| o.s),
        t: axioms.report.order.map(|o| o.t),
        thick: axioms.report.is_thick,
    };
    let mut report = Report {
        geometry: info,
        seed: config.seed,
        checks: config.checks.clone(),
        status: Status::Ok,
        axioms,
        fields: Vec::new(),
        traces: None,
        blocking: None,
        perp: None,
        assertions: Vec::new(),
        anomalies: Vec::new(),
        observations: Vec::new(),
        guard_notes: Vec::new(),
        timing_ms: None,
    };
    if !report.axioms.passed {
        return Ok(finish(report, log, config, true));
    }

    let order = report.axioms.report.order.expect("certified geometries have an order");
    let dist = distances(&g)?;
    let m = (n % 2 == 0).then_some(n / 2);
    let wants_index = config.wants(Check::Traces) || config.wants(Check::Blocking);
    let index = match m {
        Some(_) if wants_index => Some(TraceIndex::build(&g, &dist)?),
        _ => None,
    };
    let ctx = Ctx { config, g: &g, dist, s: order.s, t: order.t, m, thick: report.axioms.report.is_thick, index };

    let mut codes = Vec::with_capacity(fields.len());
    for f in &fields {
        let code = LinearCode::build(&g, f)?;
        let fc = m.map(|m| field_condition(ctx.s as u64, m as u32, f));
        let applicable = m.is_some_and(|m| m > 1)
            && ctx.thick
            && ctx.s <= ctx.t
            && fc.as_ref().is_some_and(|c| c.holds);
        report.fields.push(FieldSection {
            p: f.characteristic() as u64,
            field_condition: fc,
            theorem_applicable: applicable,
            rank: code.rank(),
            dual_dimension: code.dual_dimension(),
            cx: None,
            min_weight: None,
            classification: None,
            dual: None,
        });
        codes.push(code);
    }
    for fs in report.fields.iter().filter(|_| config.wants(Check::Minwt)) {
        if !fs.theorem_applicable {
            log.observe(Check::Minwt, format!("GF({}): {}", fs.p, not_applicable_reason(&ctx, fs)));
        }
    }

    if config.wants(Check::Cx) {
        log.time(Check::Cx, |log| {
            for (fs, code) in report.fields.iter_mut().zip(&codes) {
                fs.cx = cx_stage(&ctx, code, fs, log)?;
            }
            Ok::<_, ReportError>(())
        })?;
    }

    let mut min_words: Vec<Option<Vec<Word>>> = vec![None; codes.len()];
    if config.wants(Check::Minwt) {
        log.time(Check::Minwt, |log| {
            for ((fs, code), words) in report.fields.iter_mut().zip(&codes).zip(&mut min_words) {
                let (section, found) = minwt_stage(&ctx, code, fs, log);
                fs.min_weight = section;
                *words = found;
            }
        });
    }

    if config.wants(Check::Traces) {
        log.time(Check::Traces, |log| {
            report.traces = trace_stage(&ctx, log)?;
            for ((fs, code), words) in report.fields.iter_mut().zip(&codes).zip(&min_words) {
                if let Some(words) = words {
                    fs.classification = classification_stage(&ctx, code, fs, words, log);
                }
            }
            Ok::<_, ReportError>(())
        })?;
    }

    if config.wants(Check::Blocking) {
        report.blocking = log.time(Check::Blocking, |log| blocking_stage(&ctx, log))?;
    }

    if config.wants(Check::Perp) {
        report.perp = log.time(Check::Perp, |log| perp_stage(&ctx, log))?;
    }

    if config.wants(Check::Dualwt) {
        log.time(Check::Dualwt, |log| {
            for (fs, code) in report.fields.iter_mut().zip(&codes) {
                fs.dual = Some(dual_stage(&ctx, code, fs.p, log)?);
            }
            Ok::<_, ReportError>(())
        })?;
    }

    Ok(finish(report, log, config, false))
}

fn finish(mut report: Report, log: Log, config: &RunConfig, certification_failed: bool) -> Report {
    report.anomalies = log.assertions.iter().filter(|a| !a.passed).cloned().collect();
    report.assertions = log.assertions;
    report.observations = log.observations;
    report.guard_notes = log.guard_notes;
    report.timing_ms = config.timing.then_some(log.timing);
    report.status = if certification_failed {
        Status::CertificationFailed
    } else if !report.anomalies.is_empty() {
        Status::Anomaly
    } else if !report.guard_notes.is_empty() {
        Status::GuardExceeded
    } else {
        Status::Ok
    };
    report
}

fn not_applicable_reason(ctx: &Ctx, fs: &FieldSection) -> String {
    let mut reasons = Vec::new();
    if ctx.m.is_none() {
        reasons.push("odd gonality".to_string());
    }
    if !ctx.thick {
        reasons.push("not thick".into());
    }
    if ctx.s > ctx.t {
        reasons.push(format!("s = {} > t = {}", ctx.s, ctx.t));
    }
    if let Some(fc) = &fs.field_condition {
        if !fc.holds {
            reasons.push(format!("field condition fails at k = {:?}", fc.failing_k));
        }
    }
    format!("theorem not applicable ({}); results are observations", reasons.join(", "))
}

fn axiom_stage(g: &Geometry, n: usize, log: &mut Log) -> AxiomSection {
    let report = verify_polygon(g, n);
    let expected = report.order.and_then(|o| expected_counts(n, o.s as u64, o.t as u64).ok());
    let counts_match = expected.map(|(p, l)| p == g.num_points() as u64 && l == g.num_lines() as u64);
    let passed = report.passed() && counts_match != Some(false);
    let detail = if report.passed() {
        match (expected, counts_match) {
            (Some((p, l)), Some(true)) => format!("generalised {n}-gon, counts ({p}, {l}) as expected"),
            (Some((p, l)), _) => {
                format!("counts ({}, {}) differ from expected ({p}, {l})", g.num_points(), g.num_lines())
            }
            (None, _) => format!("generalised {n}-gon"),
        }
    } else {
        format!("violations: {}", serde_json::to_string(&report.violations).unwrap_or_default())
    };
    log.assert(Check::Axioms, passed, detail);
    AxiomSection { passed, expected_counts: expected, counts_match, report }
}

fn cx_stage(ctx: &Ctx, code: &LinearCode, fs: &FieldSection, log: &mut Log) -> Result<Option<CxSection>, ReportError> {
    let Some(m) = ctx.m else {
        log.observe(Check::Cx, format!("GF({}): weighted vectors need even gonality; skipped", fs.p));
        return Ok(None);
    };
    let (g, dist, f) = (ctx.g, &ctx.dist, code.field());
    let np = g.num_points();
    let vectors: Vec<PointVector> =
        par::map_range(0..np, |v| weighted_vector(g, dist, v, f)).into_iter().collect::<Result<_, CodeError>>()?;

    let first_violation = vectors
        .iter()
        .enumerate()
        .find_map(|(v, cv)| check_line_sums(code, cv).err().map(|e| (v, e)));
    let pair_failures: usize = par::map_range(0..np, |v| {
        (v + 1..np).filter(|&w| !verify_cx_dual(code, g, dist, v, w).unwrap_or(false)).count()
    })
    .into_iter()
    .sum();
    let constant = code.generators().iter().all(|row| {
        let row = PointVector::from_coeffs(f, row.clone());
        let first = row.inner_product(&vectors[0]).expect("same field and length");
        vectors.iter().all(|cv| row.inner_product(cv).expect("same field and length") == first)
    });
    let ball = |v: usize| dist.points_within(Element::Point(v), 2 * m as i64 - 2);
    let support_inside = (0..np).all(|v| {
        let b = ball(v);
        vectors[v].support().iter().all(|p| b.binary_search(p).is_ok())
    });
    let full_support_points = (0..np).filter(|&v| vectors[v].support() == ball(v)).count();
    let holds = fs.field_condition.as_ref().is_some_and(|c| c.holds);
    let near_lines_covered = holds.then(|| {
        (0..np).all(|v| {
            dist.lines_within(Element::Point(v), 2 * m as i64 - 3).into_iter().all(|l| covered(g, l, &vectors[v]))
        })
    });

    let p = fs.p;
    log.assert(
        Check::Cx,
        first_violation.is_none(),
        match &first_violation {
            None => format!("GF({p}): every weighted vector sums to 1 on every line"),
            Some((v, e)) => format!("GF({p}): weighted vector of point {v} sums to {} on line {}", e.value.0, e.line),
        },
    );
    log.assert(
        Check::Cx,
        pair_failures == 0,
        format!("GF({p}): differences of weighted vectors lie in the dual ({pair_failures} failing pairs)"),
    );
    log.assert(Check::Cx, constant, format!("GF({p}): each generator has a constant product with all weighted vectors"));
    log.assert(Check::Cx, support_inside, format!("GF({p}): weighted vectors vanish on opposite points"));
    if let Some(ok) = near_lines_covered {
        log.assert(Check::Cx, ok, format!("GF({p}): lines within distance 2m-3 of v are covered by its weighted vector"));
    }
    log.observe(Check::Cx, format!("GF({p}): {full_support_points} of {np} weighted vectors have full support"));
    Ok(Some(CxSection {
        line_sums_ok: first_violation.is_none(),
        first_violation,
        dual_differences_ok: pair_failures == 0,
        generator_products_constant: constant,
        full_support_points,
        near_lines_covered,
    }))
}

fn minwt_stage(
    ctx: &Ctx,
    code: &LinearCode,
    fs: &FieldSection,
    log: &mut Log,
) -> (Option<MinWeightSection>, Option<Vec<Word>>) {
    let p = fs.p;
    let default = default_weight_guard(code);
    let guards = &ctx.config.guards;
    let limit = guards.w_max.unwrap_or(default);
    if limit > default && !guards.allow_override {
        log.guard(Check::Minwt, format!("GF({p}): w_max {limit} exceeds the guard {default} without override"));
        return (None, None);
    }
    let line_weight = ctx.s + 1;
    // Assmus-Key baseline for planes whose order is a multiple of p.
    let plane_baseline = ctx.m.is_none() && ctx.thick && (ctx.s as u64).is_multiple_of(p);
    let expected = (fs.theorem_applicable || plane_baseline).then_some(line_weight);

    let (weight, words) = match min_weight(code, Some(limit)) {
        Ok(mw) => (Some(mw.weight), mw.words),
        Err(_) => (None, Vec::new()),
    };
    let line_multiples = words.iter().filter(|w| code.is_line_multiple(&w.support, &w.coefficients)).count();

    if limit >= line_weight {
        log.assert(
            Check::Minwt,
            weight.is_some_and(|w| w <= line_weight),
            format!("GF({p}): minimum weight at most the line size {line_weight}, found {weight:?}"),
        );
    } else if weight.is_none() {
        log.guard(Check::Minwt, format!("GF({p}): no codeword of weight <= {limit}"));
    }
    match expected {
        Some(e) => {
            log.assert(Check::Minwt, weight == Some(e), format!("GF({p}): minimum weight {weight:?}, expected {e}"));
            if plane_baseline {
                log.assert(
                    Check::Minwt,
                    line_multiples == words.len(),
                    format!("GF({p}): {line_multiples} of {} minimum-weight words are line multiples", words.len()),
                );
            }
        }
        None => log.observe(
            Check::Minwt,
            format!("GF({p}): observed minimum weight {weight:?} ({} words, {line_multiples} line multiples)", words.len()),
        ),
    }
    let section = MinWeightSection {
        weight,
        searched_up_to: limit,
        expected,
        asserted: expected.is_some(),
        words: words.len(),
        line_multiples,
    };
    (Some(section), weight.map(|_| words))
}

fn trace_stage(ctx: &Ctx, log: &mut Log) -> Result<Option<TraceSection>, ReportError> {
    let Some(m) = ctx.m else {
        log.observe(Check::Traces, "distance traces need even gonality; skipped");
        return Ok(None);
    };
    let mut per_d = BTreeMap::new();
    for d in 1..=m {
        let traces = enumerate_traces(ctx.g, &ctx.dist, d)?;
        let sizes: BTreeSet<usize> = traces.iter().map(|t| t.points.len()).collect();
        let blocking = traces
            .iter()
            .filter(|t| is_x_blocking(ctx.g, &ctx.dist, &t.points).map(|v| v.is_blocking).unwrap_or(false))
            .count();
        if d == 1 {
            log.assert(
                Check::Traces,
                sizes.iter().all(|&k| k == ctx.s + 1) && traces.len() == ctx.g.num_lines(),
                format!("d = 1 traces are the {} lines, sizes {sizes:?}", traces.len()),
            );
        } else {
            log.observe(
                Check::Traces,
                format!("d = {d}: {} traces, sizes {sizes:?}, {blocking} X-blocking", traces.len()),
            );
        }
        per_d.insert(d, TraceStats { count: traces.len(), sizes, blocking });
    }
    Ok(Some(TraceSection { per_d }))
}

fn classification_stage(
    ctx: &Ctx,
    code: &LinearCode,
    fs: &FieldSection,
    words: &[Word],
    log: &mut Log,
) -> Option<ClassificationSection> {
    let (m, index) = (ctx.m?, ctx.index.as_ref()?);
    let p = fs.p;
    let mut d_histogram = BTreeMap::new();
    let mut unclassified = Vec::new();
    let (mut only_top_d, mut even_only) = (0, 0);
    for w in words {
        match index.classify(&w.support) {
            Some(label) => {
                *d_histogram.entry(label.d).or_insert(0) += 1;
                let ds = index.trace_parameters(&w.support);
                if ds.iter().all(|&d| d == m) {
                    only_top_d += 1;
                }
                if ds.iter().all(|d| d % 2 == 0) {
                    even_only += 1;
                }
            }
            None => unclassified.push(w.support.clone()),
        }
    }
    let classified = words.len() - unclassified.len();
    let summary = format!(
        "GF({p}): {classified} of {} minimum-weight supports are traces, by d {d_histogram:?}",
        words.len()
    );
    let weight_is_line = words.first().is_some_and(|w| w.weight() == ctx.s + 1);
    if fs.theorem_applicable && weight_is_line {
        log.assert(Check::Traces, unclassified.is_empty(), summary);
        if ctx.s < ctx.t {
            log.assert(Check::Traces, even_only == 0, format!("GF({p}): {even_only} supports are traces only for even d"));
            if m == 2 {
                let lines = words.iter().filter(|w| code.is_line_multiple(&w.support, &w.coefficients)).count();
                log.assert(
                    Check::Traces,
                    lines == words.len(),
                    format!("GF({p}): {lines} of {} minimum-weight words are line multiples", words.len()),
                );
            }
        } else if even_only > 0 {
            log.observe(Check::Traces, format!("GF({p}): {even_only} supports are traces only for even d (s = t)"));
        }
        if only_top_d > 0 {
            log.observe(Check::Traces, format!("GF({p}): {only_top_d} supports are traces only for d = m = {m}"));
        }
    } else {
        log.observe(Check::Traces, summary);
    }
    Some(ClassificationSection { classified, unclassified, d_histogram, only_top_d, even_only })
}

fn blocking_stage(ctx: &Ctx, log: &mut Log) -> Result<Option<BlockingSection>, ReportError> {
    let Some(m) = ctx.m else {
        log.observe(Check::Blocking, "X-blocking sets need even gonality; skipped");
        return Ok(None);
    };
    let (g, dist) = (ctx.g, &ctx.dist);
    let guard = ctx.config.guards.subset_guard;
    let s = ctx.s;

    let sizes: BTreeSet<usize> = par::map_range(0..g.num_points(), |v| {
        (0..g.num_lines()).map(|l| line_meets_ball(g, dist, v, l)).collect::<BTreeSet<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    log.assert(
        Check::Blocking,
        sizes.iter().all(|&k| k == 1 || k == s + 1),
        format!("every line meets every ball of radius 2m-2 in 1 or s+1 points: sizes {sizes:?}"),
    );

    let lines_blocking = (0..g.num_lines()).all(|l| is_x_blocking(g, dist, g.points_of(l)).map(|v| v.is_blocking).unwrap_or(false));
    log.assert(Check::Blocking, lines_blocking, "every line is X-blocking");

    let min_blocking = match min_x_blocking_size(g, dist, s + 1, guard) {
        Ok(mb) => {
            match mb.certificate {
                BlockingCertificate::Exhaustive => log.assert(
                    Check::Blocking,
                    mb.size == s + 1,
                    format!("smallest X-blocking set has size {}, expected {}", mb.size, s + 1),
                ),
                BlockingCertificate::Found { checked_below } => log.guard(
                    Check::Blocking,
                    format!("smallest X-blocking size only checked exhaustively below {checked_below}"),
                ),
            }
            Some(mb)
        }
        Err(TraceError::CostGuard { requested, limit }) => {
            log.guard(Check::Blocking, format!("minimum blocking search needs {requested} subsets, guard {limit}"));
            None
        }
        Err(e) => return Err(e.into()),
    };

    let converse = match ctx.index.as_ref() {
        Some(index) if binomial(g.num_points(), s + 1) <= guard => {
            let c = blocking_converse(g, dist, index, guard)?;
            let detail = format!(
                "{} of {} blocking sets of size {} (from {} candidates) are traces, by d {:?}",
                c.classified, c.blocking_sets, c.size, c.candidates, c.d_histogram
            );
            if s <= ctx.t {
                log.assert(Check::Blocking, c.unclassified.is_empty(), detail);
                log.assert(Check::Blocking, c.smaller_blocking.is_none(), format!("no X-blocking set of size <= {s}"));
                if s < ctx.t {
                    log.assert(
                        Check::Blocking,
                        c.even_only == 0,
                        format!("{} blocking sets are traces only for even d", c.even_only),
                    );
                }
            } else {
                log.observe(Check::Blocking, format!("{detail} (s > t, not asserted)"));
            }
            Some(c)
        }
        _ => {
            log.guard(
                Check::Blocking,
                format!("{} candidate sets of size {} exceed the guard {guard}", binomial(g.num_points(), s + 1), s + 1),
            );
            None
        }
    };

    let bound = line_blocking_bound(g, dist).ok();
    if let Some(b) = bound {
        log.observe(Check::Blocking, format!("sets meeting every line have at least {b} points"));
    }

    let star = (m >= 2).then(|| star_stage(ctx, m, log));
    Ok(Some(BlockingSection {
        ball_intersection_sizes: sizes,
        lines_blocking,
        min_blocking,
        converse,
        line_blocking_bound: bound,
        star,
    }))
}

fn star_stage(ctx: &Ctx, m: usize, log: &mut Log) -> StarSection {
    let (g, dist) = (ctx.g, &ctx.dist);
    let (np, nl, s) = (g.num_points(), g.num_lines(), ctx.s);
    let guards = &ctx.config.guards;
    let sets: u128 = (0..=s).map(|k| binomial(np, k)).sum();
    let total = sets * nl as u128 * (m - 1) as u128;
    let fails = |set: &[usize], line: usize, d: usize| star_witness(g, dist, set, line, d).is_err();

    let (exhaustive, cases, failures) = if total <= guards.star_exhaustive_limit {
        let mut failures = 0u64;
        for k in 0..=s {
            for set in itertools::Itertools::combinations(0..np, k) {
                for d in 1..m {
                    failures += par::map_range(0..nl, |l| fails(&set, l, d) as u64).into_iter().sum::<u64>();
                }
            }
        }
        (true, total as u64, failures)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
        let trials: Vec<(Vec<usize>, usize, usize)> = (0..guards.star_trials)
            .map(|_| {
                let k = rng.gen_range(0..=s);
                let mut set = sample(&mut rng, np, k).into_vec();
                set.sort_unstable();
                (set, rng.gen_range(0..nl), rng.gen_range(1..m))
            })
            .collect();
        let failures = par::map_range(0..trials.len(), |i| fails(&trials[i].0, trials[i].1, trials[i].2) as u64)
            .into_iter()
            .sum();
        (false, trials.len() as u64, failures)
    };
    log.assert(
        Check::Blocking,
        failures == 0,
        format!(
            "star witnesses found for {} of {cases} {} (set, line, depth) cases",
            cases - failures,
            if exhaustive { "exhaustive" } else { "random" }
        ),
    );
    StarSection { exhaustive, cases, failures }
}

fn perp_stage(ctx: &Ctx, log: &mut Log) -> Result<Option<PerpSection>, ReportError> {
    if ctx.m.is_none_or(|m| m < 2) {
        log.observe(Check::Perp, "perp-geometries need a 2m-gon with m >= 2; skipped");
        return Ok(None);
    }
    let (g, dist) = (ctx.g, &ctx.dist);
    let np = g.num_points();
    let per_point = par::map_range(0..np, |x| -> Result<(bool, bool, Option<usize>), TraceError> {
        let aug = is_projective_point(g, dist, x, PerpVariant::Augmented)?;
        let lit = is_projective_point(g, dist, x, PerpVariant::Literal)?;
        let failure = if aug { projective_trace_blocking_check(g, dist, x)? } else { None };
        Ok((aug, lit, failure))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let projective_augmented = per_point.iter().filter(|r| r.0).count();
    let projective_literal = per_point.iter().filter(|r| r.1).count();
    let trace_blocking_failure = per_point.iter().enumerate().find_map(|(x, r)| r.2.map(|y| (x, y)));
    log.observe(
        Check::Perp,
        format!("{projective_augmented} of {np} points projective (augmented), {projective_literal} (literal)"),
    );
    if projective_augmented > 0 {
        log.assert(
            Check::Perp,
            trace_blocking_failure.is_none(),
            match trace_blocking_failure {
                None => "at projective points every point-pair trace is X-blocking".to_string(),
                Some((x, y)) => format!("trace T(2, {x}, {y}) at projective point {x} is not X-blocking"),
            },
        );
    }
    Ok(Some(PerpSection { points: np, projective_augmented, projective_literal, trace_blocking_failure }))
}

fn dual_stage(ctx: &Ctx, code: &LinearCode, p: u64, log: &mut Log) -> Result<DualSection, ReportError> {
    let lower_bound = match ctx.m {
        Some(m) if ctx.thick && m >= 2 && ctx.t > 1 => {
            let t = ctx.t as u64;
            Some(2 * (t.pow(m as u32) - 1) / (t - 1))
        }
        _ => None,
    };
    let (result, note) = match dual_min_weight(code, ctx.config.guards.dual_cap) {
        Ok(r) => (Some(r), None),
        Err(CodeError::Infeasible { dimension }) => {
            (None, Some(format!("dual dimension {dimension} too large for full enumeration; set dual_cap")))
        }
        Err(e) => return Err(e.into()),
    };
    match (&result, lower_bound) {
        (Some(DualMinWeight::Exact { weight, .. }), Some(b)) => {
            log.assert(Check::Dualwt, *weight as u64 >= b, format!("GF({p}): dual minimum weight {weight}, lower bound {b}"))
        }
        (Some(DualMinWeight::ExceedsCap { cap }), b) => log.observe(
            Check::Dualwt,
            format!("GF({p}): no dual word of weight <= {cap}; lower bound {b:?} not checked beyond the cap"),
        ),
        (Some(r), b) => log.observe(Check::Dualwt, format!("GF({p}): dual minimum weight {r:?}, bound {b:?}")),
        (None, _) => log.observe(Check::Dualwt, format!("GF({p}): {}", note.as_deref().unwrap_or_default())),
    }
    Ok(DualSection { result, lower_bound, note })
}
