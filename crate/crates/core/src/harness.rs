//! Regression harness: runs corpus entries at several seeds, compares the sampled
//! verdicts across seeds, checks the pinned expectations, and arranges all
//! checks into named suites with a pass/fail matrix.

use crate::classify::{
    classify_ideal, formula_suite, matryoshka, property_suite, verify_equivalences, verify_gbcwf_corollary, verify_ic,
    ClassificationReport, Equivalence, GbcwfCheck, IcCheck, PropertyCheck,
};
use crate::error::{Error, Result};
use crate::families::{corpus, CorpusEntry, Expect};
use crate::field::PrimeField;
use crate::geometry::{secant_ideal, InterpOptions, SecantRoute};
use crate::groebner::{Caps, Ideal};
use crate::invariants::{hilbert, slice_dim_from_generators};
use crate::pei::brute_pei_slice_dim;
use crate::ring::binomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Suite names accepted by [`run_suites`]; `all` expands to every one of them.
pub const SUITES: &[&str] =
    &["formulas", "corpus", "syzM", "syzdP", "kp1", "bounds", "secgenus", "alternating", "IC", "gBcwf-cor", "engine"];

/// Below this size there are too few points for "general" to mean anything.
const MIN_SAMPLING_PRIME: u32 = 1000;

#[derive(Clone, Copy, Debug)]
pub struct HarnessOptions {
    pub prime: u32,
    pub seed: u64,
    /// Sampled verdicts are recomputed at seed, seed+1, ….
    pub seeds: usize,
    pub include_heavy: bool,
    pub interp: InterpOptions,
    pub caps: Caps,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            prime: crate::field::DEFAULT_PRIME,
            seed: 0,
            seeds: 3,
            include_heavy: true,
            interp: InterpOptions::default(),
            caps: Caps::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Some input was beyond the caps, or a needed entry was outside the window.
    NotComputed,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRoute {
    pub equal: bool,
    pub slice_dims_elim: Vec<usize>,
    pub slice_dims_interp: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseRun {
    pub name: String,
    pub q: usize,
    pub seeds: Vec<u64>,
    pub report: ClassificationReport,
    /// Fields of the report that differed between seeds.
    pub unstable: Vec<String>,
    pub expectation_failures: Vec<String>,
    pub equivalences: Vec<Equivalence>,
    /// At the first seed; `None` if sampling is meaningless over this field.
    pub properties: Option<Vec<PropertyCheck>>,
    pub properties_stable: bool,
    pub ic: Option<IcCheck>,
    pub gbcwf: Option<GbcwfCheck>,
    pub dual_route: Option<DualRoute>,
    /// dim I_d from the Hilbert series against the generator span, d ≤ 6.
    pub hilbert_vs_brute: bool,
    /// dim (K_i)_d from the Gröbner basis against the definition.
    pub pei_vs_brute: Option<bool>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseFailure {
    pub name: String,
    pub error: String,
    /// True for cap overruns, false for genuine errors.
    pub caps: bool,
}

fn diffs(a: &ClassificationReport, b: &ClassificationReport) -> Vec<String> {
    let (fa, fb) = (a.sampled_fingerprint(), b.sampled_fingerprint());
    let mut out = Vec::new();
    let named = [
        ("dim", fa.0 != fb.0),
        ("degree", fa.1 != fb.1),
        ("genus", fa.2 != fb.2),
        ("generator degrees", fa.3 != fb.3),
        ("betti", fa.4 != fb.4),
        ("verdicts", fa.5 != fb.5),
    ];
    for (n, d) in named {
        if d {
            out.push(n.to_string());
        }
    }
    out
}

fn compare<T: PartialEq + std::fmt::Debug>(out: &mut Vec<String>, what: &str, want: &Option<T>, got: T) {
    if let Some(w) = want {
        if *w != got {
            out.push(format!("{what}: expected {w:?}, got {got:?}"));
        }
    }
}

fn expectation_failures(e: &Expect, r: &ClassificationReport, ic: Option<&IcCheck>) -> Vec<String> {
    let mut out = Vec::new();
    compare(&mut out, "codim", &e.codim, r.e);
    compare(&mut out, "degree", &e.degree, r.degree);
    if e.genus.is_some() {
        compare(&mut out, "genus", &e.genus.map(Some), r.genus);
    }
    compare(&mut out, "minimal", &e.minimal, r.verdicts.is_minimal_degree);
    compare(&mut out, "almost minimal", &e.almost_minimal, r.verdicts.is_almost_minimal_degree);
    if e.del_pezzo.is_some() {
        compare(&mut out, "del Pezzo", &e.del_pezzo.map(Some), r.verdicts.is_del_pezzo);
    }
    compare(&mut out, "dim I_(q+1)", &e.dim_q1, r.dim_q1);
    if e.betti.is_some() {
        compare(&mut out, "betti", &e.betti.clone().map(Some), r.betti.as_ref().map(|b| b.nonzero()));
    }
    if let Some(v) = e.minimal_conditions {
        if !r.minimal_conditions_all(v) {
            out.push(format!("minimal-degree conditions not all {v}: {:?}", r.thm_minimal));
        }
    }
    if let Some(v) = e.del_pezzo_conditions {
        if !r.del_pezzo_conditions_all(v) {
            out.push(format!("del Pezzo conditions not all {v}: {:?}", r.thm_del_pezzo));
        }
    }
    if let (Some(want), Some(got)) = (e.ic, ic) {
        if want != got.holds {
            out.push(format!("property IC: expected {want}, got {}", got.holds));
        }
    }
    out
}

fn slice_dims(i: &Ideal, top: u32) -> Result<Vec<usize>> {
    (0..=top).map(|d| i.graded_dim(d)).collect()
}

fn hilbert_matches_brute(i: &Ideal) -> Result<bool> {
    let h = hilbert(i)?;
    let n = i.ring().nvars as u64;
    for d in 0..=6u32 {
        let total = binomial(n + d as u64 - 1, d as u64) as i64;
        if h.hilbert_function(d as i64) != total - slice_dim_from_generators(i, d) as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Run one corpus entry at `opts.seeds` seeds.
pub fn run_case(entry: &CorpusEntry, opts: &HarnessOptions) -> Result<CaseRun> {
    let start = Instant::now();
    let field = PrimeField::new(opts.prime)?;
    let mut seeds: Vec<u64> = (0..opts.seeds.max(1) as u64).map(|k| opts.seed.wrapping_add(k)).collect();
    let mut first: Option<(ClassificationReport, Option<Vec<PropertyCheck>>, Ideal)> = None;
    let mut unstable = Vec::new();
    let mut properties_stable = true;
    let mut ic = None;
    let mut gbcwf = None;
    let mut pei_vs_brute = None;
    for k in 0..seeds.len() {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds[k]);
        let mut x = entry.spec.build(field, &mut rng)?;
        // over tiny fields (the characteristic-2 example) there are no general
        // points, and everything else is deterministic: one run suffices
        let sampling = x.ring().p() >= MIN_SAMPLING_PRIME;
        if !sampling {
            seeds.truncate(k + 1);
        }
        x.ideal = x.ideal.with_caps(opts.caps);
        let s = secant_ideal(&x, entry.q, entry.route, &opts.interp, &mut rng)?;
        let mut report = classify_ideal(&s.ideal, entry.q)?;
        report.route = Some(s.route);
        report.stop = s.stop;
        let props = if sampling && x.param.is_some() {
            let m = matryoshka(&x, &s.ideal, entry.q, entry.route, &opts.interp, &mut rng)?;
            if first.is_none() {
                let (c, q) = (&m.chain, entry.q as u32);
                let mut ok = true;
                for i in 0..=c.s {
                    for d in q..=q + 2 {
                        ok &= brute_pei_slice_dim(&c.moved, i, d)? == c.k(i).graded_dim(d)?;
                    }
                }
                pei_vs_brute = Some(ok);
            }
            Some(property_suite(&report, &m)?)
        } else {
            None
        };
        match &first {
            None => {
                if sampling && x.param.is_some() {
                    if entry.expect.ic.is_some() {
                        ic = Some(verify_ic(&x, &s.ideal, entry.q, &mut rng)?);
                    }
                    if entry.q >= 2 {
                        gbcwf = Some(verify_gbcwf_corollary(&x, entry.q, &report, &mut rng)?);
                    }
                }
                first = Some((report, props, s.ideal));
            }
            Some((r0, p0, _)) => {
                for d in diffs(r0, &report) {
                    if !unstable.contains(&d) {
                        unstable.push(d);
                    }
                }
                let oks = |p: &Option<Vec<PropertyCheck>>| p.as_ref().map(|v| v.iter().map(|c| c.ok).collect::<Vec<_>>());
                properties_stable &= oks(p0) == oks(&props);
            }
        }
        if !sampling {
            break;
        }
    }
    let (report, properties, ideal) = first.ok_or_else(|| Error::InvalidInput("no seeds".into()))?;
    let dual_route = if entry.dual_route {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let x = entry.spec.build(field, &mut rng)?;
        let other = match entry.route {
            SecantRoute::Elimination => SecantRoute::Interpolation,
            SecantRoute::Interpolation => SecantRoute::Elimination,
        };
        let b = secant_ideal(&x, entry.q, other, &opts.interp, &mut rng)?.ideal;
        let (elim, interp) = if other == SecantRoute::Elimination { (&b, &ideal) } else { (&ideal, &b) };
        let top = 6;
        let (de, di) = (slice_dims(elim, top)?, slice_dims(interp, top)?);
        Some(DualRoute { equal: de == di && elim.equals(interp)?, slice_dims_elim: de, slice_dims_interp: di })
    } else {
        None
    };
    Ok(CaseRun {
        name: entry.name.clone(),
        q: entry.q,
        expectation_failures: expectation_failures(&entry.expect, &report, ic.as_ref()),
        equivalences: verify_equivalences(&report),
        hilbert_vs_brute: hilbert_matches_brute(&ideal)?,
        seeds,
        report,
        unstable,
        properties,
        properties_stable,
        ic,
        gbcwf,
        dual_route,
        pei_vs_brute,
        millis: start.elapsed().as_millis(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub case: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub rows: Vec<SuiteRow>,
}

impl SuiteResult {
    pub fn count(&self, o: Outcome) -> usize {
        self.rows.iter().filter(|r| r.outcome == o).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Outcome::Fail) == 0 && self.count(Outcome::NotComputed) == 0
    }
}

fn row(case: &str, outcome: Outcome, detail: impl Into<String>) -> SuiteRow {
    SuiteRow { case: case.into(), outcome, detail: detail.into() }
}

fn property_row(run: &CaseRun, names: &[&str]) -> SuiteRow {
    let Some(props) = &run.properties else {
        return row(&run.name, Outcome::Skip, "no general points");
    };
    let picked: Vec<&PropertyCheck> = props.iter().filter(|c| names.iter().any(|n| c.name.starts_with(n))).collect();
    let failed: Vec<String> =
        picked.iter().filter(|c| c.ok == Some(false)).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    if !failed.is_empty() || !run.properties_stable {
        let mut d = failed.join("; ");
        if !run.properties_stable {
            d.push_str(" [differs between seeds]");
        }
        return row(&run.name, Outcome::Fail, d);
    }
    let decided = picked.iter().filter(|c| c.ok.is_some()).count();
    if decided == 0 {
        return row(&run.name, Outcome::Skip, "not applicable");
    }
    row(&run.name, Outcome::Pass, format!("{decided}/{} checks decided", picked.len()))
}

fn equivalence_row(run: &CaseRun, theorem: &str, want: Option<bool>, conds: &[crate::classify::Condition]) -> SuiteRow {
    if conds.is_empty() {
        return row(&run.name, Outcome::Skip, "codimension below 2");
    }
    let bad: Vec<String> = run
        .equivalences
        .iter()
        .filter(|e| e.theorem == theorem && !e.agreed)
        .map(|e| format!("({}) vs ({})", e.a, e.b))
        .collect();
    if !bad.is_empty() {
        return row(&run.name, Outcome::Fail, format!("disagree: {}", bad.join(", ")));
    }
    if !run.unstable.is_empty() {
        return row(&run.name, Outcome::Fail, format!("differs between seeds: {:?}", run.unstable));
    }
    if let Some(v) = want {
        if !conds.iter().all(|c| c.value == Some(v)) {
            return row(&run.name, Outcome::Fail, format!("expected all {v}: {conds:?}"));
        }
    }
    let decided = conds.iter().filter(|c| c.value.is_some()).count();
    let outcome = if decided == conds.len() { Outcome::Pass } else { Outcome::NotComputed };
    let value: Vec<String> = conds.iter().map(|c| format!("{}={:?}", c.label, c.value)).collect();
    row(&run.name, outcome, value.join(" "))
}

fn case_row(suite: &str, run: &CaseRun, entry: &CorpusEntry) -> SuiteRow {
    let r = &run.report;
    match suite {
        "corpus" => {
            let mut d = run.expectation_failures.clone();
            if !run.unstable.is_empty() {
                d.push(format!("differs between seeds: {:?}", run.unstable));
            }
            let consistency: Vec<&str> =
                r.consistency.iter().filter(|c| c.ok == Some(false)).map(|c| c.name.as_str()).collect();
            if !consistency.is_empty() {
                d.push(format!("incoherent verdicts: {consistency:?}"));
            }
            if d.is_empty() {
                row(&run.name, Outcome::Pass, format!("deg {} codim {}", r.degree, r.e))
            } else {
                row(&run.name, Outcome::Fail, d.join("; "))
            }
        }
        "syzM" => equivalence_row(run, "minimal degree", entry.expect.minimal_conditions, &r.thm_minimal),
        "syzdP" => equivalence_row(run, "del Pezzo", entry.expect.del_pezzo_conditions, &r.thm_del_pezzo),
        "kp1" => property_row(run, &["K_{p,q} = 0", "K_{e,q}"]),
        "bounds" => property_row(
            run,
            &["no q-forms", "x0-degree", "Betti bound", "Koszul rank", "basic inequality", "vanishing", "prolongation"],
        ),
        "secgenus" => property_row(run, &["Hilbert series", "degree formula", "sectional genus"]),
        "alternating" => property_row(run, &["alternating"]),
        "IC" => match (&run.ic, entry.expect.ic) {
            (Some(ic), Some(want)) => row(
                &run.name,
                if ic.holds == want { Outcome::Pass } else { Outcome::Fail },
                format!("holds={} sum degrees {:?} vs {:?}", ic.holds, ic.sum_degrees, ic.secant_degrees),
            ),
            _ => row(&run.name, Outcome::Skip, "not pinned"),
        },
        "gBcwf-cor" => match &run.gbcwf {
            Some(g) => row(
                &run.name,
                if g.agreed() { Outcome::Pass } else { Outcome::Fail },
                format!("M^q={} projection deg {} codim {}", g.lhs, g.projection_degree, g.projection_codim),
            ),
            None => row(&run.name, Outcome::Skip, "q = 1 or no general points"),
        },
        "engine" => {
            let mut d = Vec::new();
            let mut ok = run.hilbert_vs_brute;
            if !run.hilbert_vs_brute {
                d.push("Hilbert function differs from generator span".to_string());
            }
            if let Some(dr) = &run.dual_route {
                ok &= dr.equal;
                d.push(format!("routes agree={} {:?}", dr.equal, dr.slice_dims_elim));
            }
            if let Some(p) = run.pei_vs_brute {
                ok &= p;
                d.push(format!("partial elimination slices agree={p}"));
            }
            row(&run.name, if ok { Outcome::Pass } else { Outcome::Fail }, d.join("; "))
        }
        _ => row(&run.name, Outcome::Skip, "unknown suite"),
    }
}

/// Resolve `all` and validate names.
pub fn expand_suites(names: &[String]) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(SUITES.iter().map(|s| s.to_string()));
        } else if SUITES.contains(&n.as_str()) {
            out.push(n.clone());
        } else {
            return Err(Error::InvalidInput(format!("unknown suite {n:?}; known: {}, all", SUITES.join(", "))));
        }
    }
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HarnessRun {
    pub suites: Vec<SuiteResult>,
    pub cases: Vec<CaseRun>,
    pub failures: Vec<CaseFailure>,
}

impl HarnessRun {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.suites.iter().all(|s| s.passed())
    }
}

/// Run the named suites over the corpus. Corpus entries are independent and run
/// in parallel when the `parallel` feature is on; results keep corpus order.
pub fn run_suites(names: &[String], opts: &HarnessOptions, filter: Option<&str>) -> Result<HarnessRun> {
    let names = expand_suites(names)?;
    let needs_corpus = names.iter().any(|n| n != "formulas");
    let entries: Vec<CorpusEntry> = if needs_corpus {
        corpus()
            .into_iter()
            .filter(|e| opts.include_heavy || !e.heavy)
            .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
            .collect()
    } else {
        Vec::new()
    };
    let results = crate::par::map(&entries, |e| run_case(e, opts));
    let mut cases = Vec::new();
    let mut failures = Vec::new();
    let mut ran: Vec<&CorpusEntry> = Vec::new();
    for (e, r) in entries.iter().zip(results) {
        match r {
            Ok(c) => {
                cases.push(c);
                ran.push(e);
            }
            Err(err) => failures.push(CaseFailure {
                name: e.name.clone(),
                caps: matches!(err, Error::TooLarge(_)),
                error: err.to_string(),
            }),
        }
    }
    let mut suites = Vec::new();
    for n in &names {
        let rows = if n == "formulas" {
            formula_suite(8, 6)
                .into_iter()
                .map(|c| {
                    let outcome = if c.holds() { Outcome::Pass } else { Outcome::Fail };
                    row(&c.name, outcome, format!("{} cases {:?}", c.cases, c.failures))
                })
                .collect()
        } else {
            let mut rows: Vec<SuiteRow> = cases.iter().zip(&ran).map(|(c, e)| case_row(n, c, e)).collect();
            rows.extend(failures.iter().map(|f| row(&f.name, Outcome::NotComputed, f.error.clone())));
            rows
        };
        suites.push(SuiteResult { suite: n.clone(), rows });
    }
    Ok(HarnessRun { suites, cases, failures })
}

/// Text matrix: one line per (suite, case).
pub fn render(run: &HarnessRun) -> String {
    let mut s = String::new();
    for suite in &run.suites {
        s.push_str(&format!(
            "[{}] pass {} fail {} not-computed {} skip {}\n",
            suite.suite,
            suite.count(Outcome::Pass),
            suite.count(Outcome::Fail),
            suite.count(Outcome::NotComputed),
            suite.count(Outcome::Skip)
        ));
        for r in &suite.rows {
            let tag = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::NotComputed => "N/C ",
                Outcome::Skip => "skip",
            };
            s.push_str(&format!("  {tag} {:32} {}\n", r.case, r.detail));
        }
    }
    s
}
