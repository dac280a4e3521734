use crate::{
    BettiArgs, ClassifyArgs, Cli, Cmd, Failure, FamilyArgs, InvariantsArgs, Method, Outcome, PeiArgs, ProjectArgs,
    SecantArgs, Timings, VerifyArgs,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use secant_forge::classify::{
    classify_ideal, matryoshka, property_suite, verify_equivalences, verify_gbcwf_corollary, verify_ic,
};
use secant_forge::families::{Center, FamilySpec};
use secant_forge::field::DEFAULT_PRIME;
use secant_forge::geometry::{
    independent_prefix, point_on_hypersurface, secant_ideal, Frame, InterpOptions, SecantRoute, Variety,
};
use secant_forge::groebner::{Caps, Ideal};
use secant_forge::harness::{self, HarnessOptions};
use secant_forge::invariants::{betti_table, hilbert, koszul_betti};
use secant_forge::pei::{hilbert_decomposition_check, pei_chain, projection_degree, tangential_setup};
use secant_forge::ring::PointProj;
use secant_forge::{io, Error, PrimeField};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

type Res<T> = std::result::Result<T, Failure>;

pub struct Context {
    /// The field every input must live over, once known.
    pub prime: u32,
    explicit_prime: bool,
    pub seed: u64,
    pub caps: Caps,
}

impl Context {
    pub fn new(cli: &Cli) -> Res<Self> {
        let prime = cli.prime.unwrap_or(DEFAULT_PRIME);
        PrimeField::new(prime)?;
        let caps = Caps { max_degree: cli.max_degree, max_pairs: cli.max_pairs, max_matrix: cli.max_matrix };
        Ok(Context { prime, explicit_prime: cli.prime.is_some(), seed: cli.seed, caps })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.prime).expect("checked in Context::new")
    }

    /// Inputs fix the characteristic unless `--prime` was given, in which case they must agree.
    fn adopt(&mut self, p: u32, what: &str) -> Res<()> {
        if self.explicit_prime && p != self.prime {
            return Err(Failure::Usage(format!("{what} is over F_{p} but --prime {} was given", self.prime)));
        }
        self.prime = p;
        Ok(())
    }

    fn capped(&self, mut x: Variety) -> Variety {
        x.ideal = x.ideal.with_caps(self.caps);
        x
    }

    fn read_file(&mut self, path: &Path) -> Res<Variety> {
        let x = io::read_variety(path)?;
        self.adopt(x.ring().p(), &path.display().to_string())?;
        Ok(self.capped(x))
    }

    /// An ideal file if the path exists, otherwise a compact family spec.
    fn load(&mut self, input: &str) -> Res<Variety> {
        let path = Path::new(input);
        if path.exists() {
            return self.read_file(path);
        }
        let spec: FamilySpec = input
            .parse()
            .map_err(|e: Error| Failure::Usage(format!("{input:?} is neither a file nor a family spec ({e})")))?;
        self.build(&spec).map(|(x, _)| x)
    }

    fn build(&mut self, spec: &FamilySpec) -> Res<(Variety, Option<PointProj>)> {
        let (x, z) = spec.build_with_center(self.field(), &mut self.rng())?;
        self.adopt(x.ring().p(), &spec.label())?;
        Ok((self.capped(x), z))
    }
}

pub fn run(ctx: &mut Context, cmd: &Cmd, t: &mut Timings) -> Res<Outcome> {
    match cmd {
        Cmd::Family(a) => family(ctx, a, t),
        Cmd::Secant(a) => secant(ctx, a, t),
        Cmd::Project(a) => project(ctx, a, t),
        Cmd::Pei(a) => pei(ctx, a, t),
        Cmd::Invariants(a) => invariants(ctx, a, t),
        Cmd::Betti(a) => betti(ctx, a, t),
        Cmd::Classify(a) => classify(ctx, a, t),
        Cmd::Verify(a) => verify(ctx, a, t),
    }
}

fn passed(result: Value, text: String) -> Outcome {
    Outcome { result, text, ok: true }
}

fn need<T: Copy>(v: Option<T>, kind: &str, flag: &str) -> Res<T> {
    v.ok_or_else(|| Failure::Usage(format!("family {kind} needs --{flag}")))
}

fn family_spec(a: &FamilyArgs) -> Res<FamilySpec> {
    let k = a.kind.as_str();
    Ok(match k {
        "rnc" => FamilySpec::Rnc { d: need(a.d, k, "d")? },
        "scroll" if !a.a.is_empty() => FamilySpec::Scroll { a: a.a.clone() },
        "scroll" => return Err(Failure::Usage("family scroll needs --a".into())),
        "veronese" => FamilySpec::Veronese { n: need(a.n, k, "n")?, d: need(a.d, k, "d")? as u32 },
        "trigonal-g3" => FamilySpec::TrigonalG3,
        "genus2" => FamilySpec::Genus2,
        "elliptic" => FamilySpec::Elliptic { k: a.k.unwrap_or(2) },
        "grassmann" => FamilySpec::Grassmann { n: need(a.n, k, "n")? },
        "catalecticant" => FamilySpec::Catalecticant { rows: need(a.rows, k, "rows")?, d: need(a.d, k, "d")? },
        "char2" => FamilySpec::Char2,
        "project" => {
            let base = a.base.as_deref().ok_or_else(|| Failure::Usage("family project needs --base".into()))?;
            let center: Center = a.center.parse()?;
            FamilySpec::Project { base: Box::new(base.parse()?), center }
        }
        other => other.parse()?,
    })
}

fn write_out(path: &Path, x: &Variety, canonical: bool) -> Res<Value> {
    io::write_variety(path, x, canonical)?;
    let side = io::sidecar_path(path);
    Ok(json!({
        "path": path.display().to_string(),
        "sidecar": x.param.as_ref().map(|_| side.display().to_string()),
        "nvars": x.nvars(),
        "generator_degrees": x.ideal.generator_degrees(),
    }))
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(m), Value::Object(n)) = (&mut a, b) {
        m.extend(n);
    }
    a
}

fn family(ctx: &mut Context, a: &FamilyArgs, t: &mut Timings) -> Res<Outcome> {
    let spec = family_spec(a)?;
    let (x, z) = t.time("build", || ctx.build(&spec))?;
    let path = a.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}.ideal", spec.label())));
    let written = write_out(&path, &x, false)?;
    let result = merge(json!({"label": spec.label(), "center": z.map(|z| z.to_string())}), written);
    Ok(passed(result, format!("{}\n", path.display())))
}

fn stem(input: &str) -> String {
    let p = Path::new(input);
    if p.exists() {
        p.with_extension("").display().to_string()
    } else {
        input.parse::<FamilySpec>().map_or_else(|_| "input".into(), |s| s.label())
    }
}

fn route(m: Method) -> SecantRoute {
    match m {
        Method::Elim => SecantRoute::Elimination,
        Method::Interp => SecantRoute::Interpolation,
    }
}

fn secant(ctx: &mut Context, a: &SecantArgs, t: &mut Timings) -> Res<Outcome> {
    let x = t.time("load", || ctx.load(&a.input))?;
    let opts = InterpOptions { dmax: a.deg_bound, ..InterpOptions::default() };
    let s = t.time("secant", || secant_ideal(&x, a.q, route(a.method), &opts, &mut ctx.rng()))?;
    let path = a.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}-S{}.ideal", stem(&a.input), a.q)));
    let y = Variety::new(s.ideal, None, "secant");
    let written = write_out(&path, &y, a.canonical)?;
    record_base(&path, &a.input, a.q, ctx.seed)?;
    let result = merge(json!({"q": a.q, "route": s.route, "stop": s.stop}), written);
    Ok(passed(result, format!("{}\n", path.display())))
}

fn point_arg(x: &Variety, text: &str, rng: &mut ChaCha8Rng) -> Res<PointProj> {
    let z = if text == "auto" { x.sample_point(rng)? } else { PointProj::parse(&x.ring().field, text)? };
    if z.len() != x.nvars() || !x.contains_point(z.coords()) {
        return Err(Failure::Usage(format!("{z} is not a point of {}", x.label)));
    }
    Ok(z)
}

fn project(ctx: &mut Context, a: &ProjectArgs, t: &mut Timings) -> Res<Outcome> {
    let x = t.time("load", || ctx.load(&a.input))?;
    let f = x.ring().field;
    let n = x.nvars();
    let mut rng = ctx.rng();
    let (kind, center, y) = if let Some(pt) = &a.inner {
        let z = point_arg(&x, pt, &mut rng)?;
        let frame = Frame::adapted(&f, n, &[z.coords().to_vec()], &mut rng)?;
        ("inner", vec![z.to_string()], t.time("project", || x.project(&frame, "inner projection"))?)
    } else if let Some(pt) = &a.tangential {
        let z = point_arg(&x, pt, &mut rng)?;
        let setup = t.time("project", || tangential_setup(&x, &z, &mut rng))?;
        ("tangential", vec![z.to_string()], setup.projected)
    } else {
        let file = a.space.as_ref().expect("clap requires one center");
        let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
        let pts = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let p = PointProj::parse(&f, l)?;
                if p.len() == n {
                    Ok(p.coords().to_vec())
                } else {
                    Err(Error::InvalidInput(format!("{l}: expected {n} coordinates")))
                }
            })
            .collect::<secant_forge::Result<Vec<_>>>()?;
        let lead = independent_prefix(&f, n, &pts);
        let frame = Frame::adapted(&f, n, &lead, &mut rng)?;
        let shown = lead.iter().map(|c| PointProj::new(&f, c.clone()).map(|p| p.to_string())).collect::<Result<_, _>>()?;
        ("space", shown, t.time("project", || x.project(&frame, "linear projection"))?)
    };
    let path = a.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}-{kind}.ideal", stem(&a.input))));
    let written = write_out(&path, &y, false)?;
    let result = merge(json!({"kind": kind, "center": center}), written);
    Ok(passed(result, format!("{}\n", path.display())))
}

const BASE_TAG: &str = "# base ";

/// Note in a secant ideal file which X it came from, so that `pei --point auto`
/// can draw z on X.
fn record_base(path: &Path, input: &str, q: usize, seed: u64) -> Res<()> {
    let io_err = |e: std::io::Error| Failure::Usage(format!("{}: {e}", path.display()));
    let base = match std::fs::canonicalize(input) {
        Ok(p) => format!("file={}", p.display()),
        Err(_) => format!("spec={input} seed={seed}"),
    };
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    let (head, rest) = text.split_once('\n').unwrap_or((&text, ""));
    std::fs::write(path, format!("{head}\n{BASE_TAG}q={q} {base}\n{rest}")).map_err(io_err)
}

/// The variety recorded by [`record_base`], if any.
fn recorded_base(ctx: &mut Context, path: &Path) -> Res<Option<Variety>> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let Some(line) = text.lines().find_map(|l| l.strip_prefix(BASE_TAG)) else {
        return Ok(None);
    };
    let bad = || Failure::Usage(format!("{}: malformed base line {line:?}", path.display()));
    let (_, rest) = line.split_once(' ').ok_or_else(bad)?;
    if let Some(file) = rest.strip_prefix("file=") {
        return ctx.read_file(Path::new(file)).map(Some);
    }
    let (spec, seed) = rest.strip_prefix("spec=").and_then(|r| r.rsplit_once(" seed=")).ok_or_else(bad)?;
    let spec: FamilySpec = spec.parse()?;
    let seed: u64 = seed.parse().map_err(|_| bad())?;
    let (x, _) = spec.build_with_center(ctx.field(), &mut ChaCha8Rng::seed_from_u64(seed))?;
    ctx.adopt(x.ring().p(), &spec.label())?;
    Ok(Some(ctx.capped(x)))
}

/// The general point used by `pei --point auto`: on S^q of `--sample-from`, else
/// on the base X recorded by `secant`, else on the input's own parametrization,
/// else on a random line through V(I).
fn auto_point(ctx: &mut Context, a: &PeiArgs, x: &Variety, rng: &mut ChaCha8Rng) -> Res<PointProj> {
    if let Some(src) = &a.sample_from {
        let y = ctx.read_file(src)?;
        return Ok(y.sample_secant_point(a.q, rng)?);
    }
    if let Some(base) = recorded_base(ctx, &a.input)? {
        return Ok(base.sample_point(rng)?);
    }
    if x.param.is_some() {
        return Ok(x.sample_point(rng)?);
    }
    let c = point_on_hypersurface(x.ideal.gens(), rng).map_err(|e| match e {
        Error::RetryExhausted(_) => Failure::Usage(
            "no point found on random lines; V(I) is not a hypersurface, so pass --sample-from or a sidecar".into(),
        ),
        e => e.into(),
    })?;
    Ok(PointProj::new(&x.ring().field, c)?)
}

fn poly_strings(i: &Ideal) -> Res<Vec<String>> {
    let mut v: Vec<_> = i.grevlex()?.polynomials().into_iter().filter(|p| !p.is_zero()).collect();
    v.sort_by_cached_key(|p| (p.degree(), p.to_string()));
    Ok(v.iter().map(|p| p.to_string()).collect())
}

fn pei(ctx: &mut Context, a: &PeiArgs, t: &mut Timings) -> Res<Outcome> {
    let x = ctx.read_file(&a.input)?;
    let mut rng = ctx.rng();
    let z = if a.point == "auto" {
        auto_point(ctx, a, &x, &mut rng)?
    } else {
        PointProj::parse(&x.ring().field, &a.point)?
    };
    if z.len() != x.nvars() || !x.contains_point(z.coords()) {
        return Err(Failure::Usage(format!("{z} does not lie on V(I)")));
    }
    let c = t.time("chain", || pei_chain(&x.ideal, &z, &mut rng))?;
    let deg_pi = match projection_degree(&c) {
        Ok(d) => Some(d),
        Err(Error::InvalidInput(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let strict = c.strict_steps()?;
    let mut chain = Vec::new();
    let (mut dims, mut degs) = (Vec::new(), Vec::new());
    for (i, k) in c.chain.iter().enumerate() {
        let h = hilbert(k)?;
        dims.push(h.dim());
        degs.push(h.degree());
        chain.push(json!({"i": i, "dim": h.dim(), "degree": h.degree(), "generator_degrees": k.generator_degrees()}));
    }
    let mut ok = true;
    let secgenus = if a.verify_secgenus {
        let d = t.time("secgenus", || hilbert_decomposition_check(&c))?;
        ok = d.holds();
        Some(d)
    } else {
        None
    };
    let k_inf = poly_strings(c.k_inf())?;
    let mut text = format!("point {z}\ns {}\ntop x0-degree {}\n", c.s, c.top_x0_degree);
    let _ = writeln!(text, "deg pi {}", deg_pi.map_or("not finite".into(), |d| d.to_string()));
    for (i, (d, e)) in dims.iter().zip(&degs).enumerate() {
        let step = strict.get(i).map_or("", |&s| if s { "  (strict)" } else { "" });
        let _ = writeln!(text, "K_{i}: dim {d} degree {e}{step}");
    }
    if let Some(d) = &secgenus {
        let _ = writeln!(text, "decomposition {}", if d.holds() { "holds" } else { "FAILS" });
    }
    let result = json!({
        "point": z.to_string(),
        "s": c.s,
        "top_x0_degree": c.top_x0_degree,
        "deg_pi": deg_pi,
        "dims": dims,
        "degs": degs,
        "strict": strict,
        "chain": chain,
        "k_inf": k_inf,
        "secgenus": secgenus,
    });
    Ok(Outcome { result, text, ok })
}

fn invariants(ctx: &mut Context, a: &InvariantsArgs, t: &mut Timings) -> Res<Outcome> {
    let x = ctx.read_file(&a.input)?;
    let h = t.time("hilbert", || hilbert(&x.ideal))?;
    let text = format!(
        "dim {}\ncodim {}\ndegree {}\nsectional genus {}\nnumerator {:?}\n",
        h.dim(),
        h.codim(),
        h.degree(),
        h.sectional_genus().map_or("-".into(), |g| g.to_string()),
        h.numerator
    );
    let result = json!({
        "nvars": h.nvars,
        "dim": h.dim(),
        "codim": h.codim(),
        "degree": h.degree(),
        "sectional_genus": h.sectional_genus(),
        "hilbert_numerator": h.numerator,
        "h_vector": h.h_vector,
        "generator_degrees": x.ideal.generator_degrees(),
    });
    Ok(passed(result, text))
}

fn range(text: &str, flag: &str) -> Res<RangeInclusive<usize>> {
    let bad = || Failure::Usage(format!("--{flag} must look like a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn betti(ctx: &mut Context, a: &BettiArgs, t: &mut Timings) -> Res<Outcome> {
    let x = ctx.read_file(&a.input)?;
    let (w, text) = if a.rows.is_none() && a.cols.is_none() {
        let w = t.time("betti", || betti_table(&x.ideal))?;
        let text = w.render();
        (w, text)
    } else {
        let rows = a.rows.as_deref().map_or(Ok(0..=3), |r| range(r, "rows"))?;
        let cols = a.cols.as_deref().map_or(Ok(0..=x.nvars() - 1), |c| range(c, "cols"))?;
        let w = t.time("betti", || koszul_betti(&x.ideal, *cols.end(), *rows.end()))?;
        let text = w.render_range(rows, cols);
        (w, text)
    };
    let result = json!({
        "window": w,
        "nonzero": w.nonzero(),
        "complete": w.is_complete(),
        "text": text,
    });
    Ok(passed(result, text))
}

fn yes(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn classify(ctx: &mut Context, a: &ClassifyArgs, t: &mut Timings) -> Res<Outcome> {
    if a.given_secant && a.properties {
        return Err(Failure::Usage("--properties needs X itself, not its secant ideal".into()));
    }
    let x = t.time("load", || ctx.load(&a.input))?;
    let mut rng = ctx.rng();
    let opts = InterpOptions::default();
    let route = route(a.method);
    let (secant, mut report) = if a.given_secant {
        let r = t.time("classify", || classify_ideal(&x.ideal, a.q))?;
        (x.ideal.clone(), r)
    } else {
        let s = t.time("secant", || secant_ideal(&x, a.q, route, &opts, &mut rng))?;
        let mut r = t.time("classify", || classify_ideal(&s.ideal, a.q))?;
        r.route = Some(s.route);
        r.stop = s.stop;
        (s.ideal, r)
    };
    report.prime = x.ring().p();
    let equivalences = verify_equivalences(&report);
    let mut ok = report.consistent() && equivalences.iter().all(|e| e.agreed);
    let mut extra = serde_json::Map::new();
    if a.properties {
        let m = t.time("matryoshka", || matryoshka(&x, &secant, a.q, route, &opts, &mut rng))?;
        let props = property_suite(&report, &m)?;
        ok &= props.iter().all(|p| p.ok != Some(false));
        let ic = t.time("ic", || verify_ic(&x, &secant, a.q, &mut rng))?;
        let gb = if a.q >= 2 { Some(verify_gbcwf_corollary(&x, a.q, &report, &mut rng)?) } else { None };
        ok &= gb.as_ref().is_none_or(|g| g.agreed());
        extra.insert("properties".into(), json!(props));
        extra.insert("ic".into(), json!(ic));
        extra.insert("gbcwf".into(), json!(gb));
    }
    let v = &report.verdicts;
    let mut text = format!(
        "S^{}: dim {} codim {} degree {} genus {}\n",
        a.q,
        report.dim,
        report.e,
        report.degree,
        report.genus.map_or("-".into(), |g| g.to_string())
    );
    let _ = writeln!(text, "minimal degree: {}", v.is_minimal_degree);
    let _ = writeln!(text, "almost minimal degree: {}", v.is_almost_minimal_degree);
    let _ = writeln!(text, "del Pezzo: {}", yes(v.is_del_pezzo));
    for (title, conds) in [("minimal degree", &report.thm_minimal), ("del Pezzo", &report.thm_del_pezzo)] {
        if !conds.is_empty() {
            let _ = writeln!(text, "{title} conditions:");
            for c in conds.iter() {
                let _ = writeln!(text, "  {:<40} {}", c.label, yes(c.value));
            }
        }
    }
    if let Some(Value::Array(props)) = extra.get("properties") {
        let _ = writeln!(text, "properties:");
        for p in props {
            let _ = writeln!(text, "  {:<40} {}", p["name"].as_str().unwrap_or(""), yes(p["ok"].as_bool()));
        }
    }
    let _ = writeln!(text, "{}", if ok { "consistent" } else { "INCONSISTENT" });
    let result = merge(json!({"report": report, "equivalences": equivalences}), Value::Object(extra));
    Ok(Outcome { result, text, ok })
}

fn verify(ctx: &mut Context, a: &VerifyArgs, t: &mut Timings) -> Res<Outcome> {
    let opts = HarnessOptions {
        prime: ctx.prime,
        seed: ctx.seed,
        seeds: a.seeds.max(1),
        include_heavy: !a.quick,
        caps: ctx.caps,
        ..HarnessOptions::default()
    };
    let run = t.time("suites", || harness::run_suites(&a.suite, &opts, a.filter.as_deref()))?;
    let text = harness::render(&run);
    let ok = run.passed();
    let mut result = serde_json::to_value(&run).expect("harness results serialize");
    // per-case wall time belongs with the timings, not the payload
    if let Some(Value::Array(cases)) = result.get_mut("cases") {
        for c in cases {
            if let Some(Value::Object(m)) = Some(c) {
                if let (Some(ms), Some(name)) = (m.remove("millis"), m.get("name").and_then(|n| n.as_str())) {
                    t.record(&format!("case {name}"), ms.as_u64().unwrap_or(0) as u128);
                }
            }
        }
    }
    Ok(Outcome { result, text, ok })
}
