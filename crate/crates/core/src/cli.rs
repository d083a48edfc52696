//! The `abclab` command line: argument schema, dispatch, output and run log.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::abc::{
    abc_to_sunit, ingest_corpus, max_quality, orbit_triple, quality, read_corpus, search_sunit_solutions, sunit_p1_bridge,
    sunit_to_abc, ABCTriple, SUnitSolution,
};
use crate::arith::field::{split_prime, valuation, Field};
use crate::arith::integer::set_factor_caps;
use crate::belyi::{
    belyi_for_branch_set, certify_belyi, fiber_fields, parse_branch_set, FiberWitness, RationalMap,
};
use crate::bounds::{
    builtin_profile, builtin_profiles, check_discriminant_lemma, check_sigma_lemma, corpus_from_triples, corpus_report,
    exponent_pattern, min_c0, morph_fini_transform, revet_etale_transform, round_up_2dp, Affine, BoundProfile, Env,
    Provenance, Var,
};
use crate::config::{sha256_hex, Config, RunRecord};
use crate::heights::{proj_height, radical, sigma_stats, Decision, LogQuantity, PlaceSet, ProjectivePoint};
use crate::mason::{mason_check, sweep_fp, sweep_q_random, Base, FFPoly, FFTriple};
use crate::parse::{parse_element, parse_field, parse_qpoly, parse_rat, parse_zpoly};
use crate::real::Real;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "abclab", version, about = "Heights, radicals, S-unit equations, bound functions, Mason-Stothers and Belyi maps")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Global {
    /// TOML configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// JSON output (default)
    #[arg(long, global = true)]
    pub json: bool,
    /// CSV output
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true)]
    pub factor_effort: Option<u64>,
    #[arg(long, global = true)]
    pub field_degree_cap: Option<usize>,
    #[arg(long, global = true)]
    pub c0: Option<String>,
    #[arg(long, global = true)]
    pub belyi_degree_cap: Option<u64>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// JSONL run log to append to
    #[arg(long, global = true, env = "ABCLAB_RUN_LOG", default_value = "abclab-runs.jsonl")]
    pub run_log: PathBuf,
    #[arg(long, global = true)]
    pub no_log: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Cmd {
    /// Weil height of a projective point
    Height(PointArgs),
    /// Radical of a point of P²
    Radical {
        #[command(flatten)]
        point: PointArgs,
        /// primes whose places are skipped
        #[arg(long)]
        exclude: Option<String>,
    },
    /// Σ_S and place counts for the places above some primes
    Sigma(PlacesArgs),
    #[command(subcommand)]
    Abc(AbcCmd),
    #[command(subcommand)]
    Sunit(SunitCmd),
    #[command(subcommand)]
    Bound(BoundCmd),
    #[command(subcommand)]
    Mason(MasonCmd),
    #[command(subcommand)]
    Belyi(BelyiCmd),
    #[command(subcommand)]
    Field(FieldCmd),
    /// Re-run logged commands and compare payloads
    Replay {
        #[arg(long)]
        log: PathBuf,
        /// 0-based record index; all records when absent
        #[arg(long)]
        index: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// comma-separated coordinates, e.g. `1,8,9` or `1+2i,3,4+2i`
    #[arg(long)]
    pub point: String,
}

#[derive(Args, Debug, Clone)]
pub struct PlacesArgs {
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// comma-separated rational primes
    #[arg(long)]
    pub primes: String,
    #[arg(long)]
    pub archimedean: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long)]
    pub primes: String,
    #[arg(long)]
    pub height: u64,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum AbcCmd {
    /// h, rad and h/rad of a triple
    Quality(TripleArgs),
    /// Triples from the S-unit search, one per orbit
    Search(SearchArgs),
    /// abc triple → S-unit solution → P¹ point
    Transform(TripleArgs),
    /// Validate and normalize a CSV corpus of integer triples
    Ingest {
        #[arg(long)]
        corpus: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TripleArgs {
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub triple: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SunitCmd {
    /// All u with u, 1-u S-units and h(u) ≤ log H
    Search(SearchArgs),
    /// u + v = 1 → abc triple with radical report
    Transform(SunitArgs),
    /// u + v = 1 → integral point of P¹ minus {0, 1, ∞}
    Bridge(SunitArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SunitArgs {
    #[command(flatten)]
    pub places: PlacesArgs,
    #[arg(long)]
    pub u: String,
    /// defaults to 1 - u
    #[arg(long)]
    pub v: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ProfileArgs {
    /// built-in profile name
    #[arg(long, conflicts_with = "profile_file")]
    pub profile: Option<String>,
    /// profile JSON file
    #[arg(long)]
    pub profile_file: Option<PathBuf>,
    /// constant overrides `name=value`
    #[arg(long = "set")]
    pub set: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum BoundCmd {
    /// Names of the built-in profiles
    List,
    /// Evaluate a profile at (u, v, w, z, d)
    Eval {
        #[command(flatten)]
        profile: ProfileArgs,
        /// `u,v,w,z,d`
        #[arg(long)]
        env: String,
    },
    /// Apply the finite-morphism or étale-cover combinator
    Transform {
        #[command(flatten)]
        profile: ProfileArgs,
        /// `morph-fini` or `revet-etale`
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "1")]
        d_phi: u32,
        #[arg(long, default_value = "0")]
        u_phi: String,
        #[arg(long, default_value = "0")]
        v_phi: String,
        #[arg(long, default_value = "0")]
        w_phi: String,
        #[arg(long, default_value = "1")]
        gamma: String,
        /// literal log in γ_d instead of log⁺
        #[arg(long)]
        strict: bool,
    },
    /// Smallest value of a free constant making the bound hold on a corpus
    Corpus {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        free: String,
    },
    /// The c₀ scan and the two place-counting lemmas
    Lemmas {
        #[arg(long, default_value = "100000")]
        r_max: usize,
        /// primes of S for the Σ_S lemma
        #[arg(long)]
        primes: Option<String>,
        /// d for L = Q(√d) in the discriminant lemma (uses --primes as R)
        #[arg(long, allow_hyphen_values = true)]
        disc_field: Option<i64>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum MasonCmd {
    /// Check a + b = c in K[t]
    Check {
        /// `Q` or `F<p>`
        #[arg(long, default_value = "Q")]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// defaults to a + b
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Exhaustive sweep over F_p or random sweep over Q
    Sweep {
        #[arg(long)]
        base: String,
        #[arg(long)]
        max_deg: usize,
        /// exact check on every pair (F_p)
        #[arg(long)]
        full: bool,
        #[arg(long, default_value = "10000")]
        count: usize,
        #[arg(long, default_value = "9")]
        bound: i64,
        #[arg(long, default_value = "0")]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// certificate JSON from `belyi build`
    #[arg(long, conflicts_with_all = ["num", "den"])]
    pub cert: Option<PathBuf>,
    /// numerator in x
    #[arg(long, allow_hyphen_values = true)]
    pub num: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub den: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum BelyiCmd {
    /// Build and certify a Belyi map for a rational branch set
    Build {
        /// e.g. `0,1,inf,1/3`
        #[arg(long, allow_hyphen_values = true)]
        branch: String,
    },
    /// Independently certify the critical values of a map
    Certify(MapArgs),
    /// Fiber fields over a rational point
    Fiber {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "")]
        primes: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum FieldCmd {
    /// Field data from `Q`, `Q(i)`, `Q(sqrt(d))` or a minimal polynomial in x
    Make {
        #[arg(long)]
        field: String,
    },
    /// Prime ideals above p
    Split {
        #[arg(long)]
        field: String,
        #[arg(long)]
        prime: String,
    },
    /// Valuations of an element at the primes above p
    Valuation {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        prime: String,
    },
}

/// A failure, split into bad input (64) and failed computation (1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_ERROR,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
        }
    }
}

type CResult<T> = std::result::Result<T, CliError>;

fn usage<T>(r: crate::Result<T>) -> CResult<T> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

/// Payload, optional CSV table and undecided flag of one command.
pub struct Output {
    pub payload: Value,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pub undecided: bool,
    pub inputs: Vec<(String, String)>,
}

impl Output {
    fn new(payload: Value) -> Output {
        Output { payload, table: None, undecided: false, inputs: vec![] }
    }

    fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Output {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    fn decided(mut self, d: Decision) -> Output {
        self.undecided |= d == Decision::Undecided;
        self
    }
}

pub fn real_json(r: &Real) -> Value {
    json!({ "value": r.mid_string(20), "err": r.err_string(), "tag": "interval" })
}

pub fn log_json(q: &LogQuantity, prec: u32) -> Value {
    let mut v = q.to_json(prec);
    v["formal"] = json!(q.to_string());
    v["tag"] = json!(if q.is_exact() { "exact" } else { "interval" });
    v
}

fn affine_str(a: &Affine) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let c = a.coefficient(v);
        if !c.is_zero() {
            parts.push(if c.is_one() { v.name().to_string() } else { format!("{c}{}", v.name()) });
        }
    }
    match &a.constant {
        Some(c) if !c.is_zero() => parts.push(c.to_string()),
        None => parts.push("c".into()),
        _ => {}
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn parse_primes(s: &str) -> CResult<Vec<BigInt>> {
    split_list(s)
        .into_iter()
        .map(|t| {
            let p: BigInt = t.parse().map_err(|_| CliError::Usage(format!("`{t}` is not an integer")))?;
            if !crate::arith::integer::is_prime(&p) {
                return Err(CliError::Usage(format!("{p} is not prime")));
            }
            Ok(p)
        })
        .collect()
}

fn parse_prime(s: &str) -> CResult<BigInt> {
    let v = parse_primes(s)?;
    match v.as_slice() {
        [p] => Ok(p.clone()),
        _ => Err(CliError::Usage(format!("expected one prime, got `{s}`"))),
    }
}

fn field_of(s: &str, cfg: &Config) -> CResult<Field> {
    match parse_field(s, cfg.field_degree_cap) {
        Err(e @ Error::InvalidInput(_)) => Err(CliError::Usage(e.to_string())),
        r => Ok(r?),
    }
}

fn point_of(k: &Field, s: &str, arity: Option<usize>) -> CResult<ProjectivePoint> {
    let parts = split_list(s);
    if let Some(n) = arity {
        if parts.len() != n {
            return Err(CliError::Usage(format!("expected {n} comma-separated entries, got {}", parts.len())));
        }
    }
    if parts.len() < 2 {
        return Err(CliError::Usage("a point needs at least two coordinates".into()));
    }
    let coords = parts.iter().map(|t| usage(parse_element(k, t))).collect::<CResult<Vec<_>>>()?;
    Ok(ProjectivePoint::new(coords)?)
}

fn triple_of(a: &TripleArgs, cfg: &Config) -> CResult<ABCTriple> {
    let k = field_of(&a.field, cfg)?;
    let parts = split_list(&a.triple);
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("--triple needs 3 comma-separated entries, got {}", parts.len())));
    }
    if k.is_rational() {
        let v = parts
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(|_| CliError::Usage(format!("`{t}` is not an integer"))))
            .collect::<CResult<Vec<_>>>()?;
        return usage(ABCTriple::from_ints(&v[0], &v[1], &v[2]));
    }
    let e = parts.iter().map(|t| usage(parse_element(&k, t))).collect::<CResult<Vec<_>>>()?;
    usage(ABCTriple::new(e[0].clone(), e[1].clone(), e[2].clone()))
}

fn places_of(a: &PlacesArgs, cfg: &Config) -> CResult<PlaceSet> {
    let k = field_of(&a.field, cfg)?;
    Ok(PlaceSet::above_primes(&k, &parse_primes(&a.primes)?, a.archimedean)?)
}

fn read_file(path: &Path, inputs: &mut Vec<(String, String)>) -> CResult<Vec<u8>> {
    let data = std::fs::read(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    inputs.push((path.display().to_string(), sha256_hex(&data)));
    Ok(data)
}

fn profile_of(a: &ProfileArgs, inputs: &mut Vec<(String, String)>) -> CResult<BoundProfile> {
    let mut p = match (&a.profile, &a.profile_file) {
        (Some(n), None) => usage(builtin_profile(n))?,
        (None, Some(f)) => {
            let data = read_file(f, inputs)?;
            let v: Value = serde_json::from_slice(&data).map_err(|e| CliError::Usage(format!("{}: {e}", f.display())))?;
            usage(BoundProfile::from_json(&v))?
        }
        _ => return Err(CliError::Usage("give --profile or --profile-file".into())),
    };
    for s in &a.set {
        let (k, v) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects name=value, got `{s}`")))?;
        p.set_constant(k.trim(), usage(parse_rat(v))?, Provenance::UserHypothetical);
    }
    Ok(p)
}

fn map_of(a: &MapArgs, inputs: &mut Vec<(String, String)>) -> CResult<(RationalMap, Vec<FiberWitness>)> {
    if let Some(path) = &a.cert {
        let data = read_file(path, inputs)?;
        let v: Value = serde_json::from_slice(&data).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let m = usage(RationalMap::from_json(&v))?;
        let ws = match v.get("witnesses").and_then(Value::as_array) {
            Some(ws) => ws.iter().map(|w| usage(FiberWitness::from_json(w))).collect::<CResult<_>>()?,
            None => vec![],
        };
        return Ok((m, ws));
    }
    let num = a.num.as_ref().ok_or_else(|| CliError::Usage("give --cert or --num".into()))?;
    let m = usage(RationalMap::new(usage(parse_zpoly(num, "x"))?, usage(parse_zpoly(&a.den, "x"))?))?;
    Ok((m, vec![]))
}

fn ffpoly(s: &str, base: Base) -> CResult<FFPoly> {
    usage(FFPoly::from_q(&usage(parse_qpoly(s, "t"))?, base))
}

fn search_rows(sols: &[crate::abc::SearchSolution]) -> Vec<Vec<String>> {
    sols.iter().map(|s| vec![s.u.to_string(), s.v.to_string(), s.orbit_rep.to_string()]).collect()
}

fn sunit_of(a: &SunitArgs, cfg: &Config) -> CResult<SUnitSolution> {
    let s = places_of(&a.places, cfg)?;
    let k = s.field().clone();
    let u = usage(parse_element(&k, &a.u))?;
    let v = match &a.v {
        Some(v) => usage(parse_element(&k, v))?,
        None => k.from_int(1).sub(&u),
    };
    usage(SUnitSolution::new(s, u, v))
}

fn sunit_json(s: &SUnitSolution) -> Value {
    s.to_json()
}

/// Runs one command under `cfg`; no output, no logging.
pub fn execute(cmd: &Cmd, cfg: &Config) -> CResult<Output> {
    set_factor_caps(cfg.factor_effort, cfg.factor_bits);
    let prec = cfg.precision;
    let c0 = cfg.c0_value().ok_or_else(|| CliError::Usage(format!("bad c0 `{}`", cfg.c0)))?;
    let mut inputs = Vec::new();
    let mut out = match cmd {
        Cmd::Height(p) => {
            let k = field_of(&p.field, cfg)?;
            let pt = point_of(&k, &p.point, None)?;
            let h = proj_height(&pt, prec)?;
            Output::new(json!({
                "point": pt.to_string(),
                "field_degree": k.degree(),
                "relative": log_json(&h.relative, prec),
                "absolute": log_json(&h.absolute, prec),
            }))
        }
        Cmd::Radical { point, exclude } => {
            let k = field_of(&point.field, cfg)?;
            let pt = point_of(&k, &point.point, Some(3))?;
            let ex = match exclude {
                Some(e) => Some(PlaceSet::above_primes(&k, &parse_primes(e)?, false)?),
                None => None,
            };
            let r = radical(&pt, ex.as_ref())?;
            Output::new(json!({
                "point": pt.to_string(),
                "radical": log_json(&r.value, prec),
                "places": r.primes.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            }))
        }
        Cmd::Sigma(a) => {
            let s = places_of(a, cfg)?;
            let st = sigma_stats(&s);
            Output::new(json!({
                "sigma": log_json(&st.sigma, prec),
                "card": st.card,
                "residual_chars": st.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "max_p": st.max_p.to_string(),
                "places": s.to_json(),
            }))
        }
        Cmd::Abc(c) => abc_cmd(c, cfg, &mut inputs)?,
        Cmd::Sunit(c) => sunit_cmd(c, cfg)?,
        Cmd::Bound(c) => bound_cmd(c, cfg, &c0, &mut inputs)?,
        Cmd::Mason(c) => mason_cmd(c)?,
        Cmd::Belyi(c) => belyi_cmd(c, cfg, &mut inputs)?,
        Cmd::Field(c) => field_cmd(c, cfg)?,
        Cmd::Replay { .. } => return Err(CliError::Usage("replay cannot be nested".into())),
    };
    out.inputs = inputs;
    Ok(out)
}

fn abc_cmd(c: &AbcCmd, cfg: &Config, inputs: &mut Vec<(String, String)>) -> CResult<Output> {
    let prec = cfg.precision;
    Ok(match c {
        AbcCmd::Quality(t) => {
            let t = triple_of(t, cfg)?;
            let h = proj_height(&t.point(), prec)?.relative;
            let r = radical(&t.point(), None)?;
            let q = quality(&t, prec)?;
            Output::new(json!({
                "triple": t.to_string(),
                "h": h.to_string(),
                "rad": r.value.to_string(),
                "quality": q.mid_string(12),
                "h_value": log_json(&h, prec),
                "rad_value": log_json(&r.value, prec),
                "quality_value": real_json(&q),
            }))
        }
        AbcCmd::Search(a) => {
            let primes = primes_u64(&a.primes)?;
            let res = search_sunit_solutions(&primes, a.height, a.budget)?;
            let complete = res.complete;
            let mut reps: Vec<&BigRational> = res.solutions.iter().map(|s| &s.orbit_rep).collect();
            reps.sort();
            reps.dedup();
            let triples: Vec<(BigInt, BigInt, BigInt)> = reps.iter().map(|r| orbit_triple(r)).collect();
            let best = max_quality(&res.solutions, prec)?;
            let rows = triples.iter().map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string()]).collect();
            let mut o = Output::new(json!({
                "S": a.primes,
                "height_bound": a.height,
                "complete": complete,
                "solutions": res.solutions.len(),
                "orbits": triples.len(),
                "triples": triples.iter().map(|(a, b, c)| format!("({a}, {b}, {c})")).collect::<Vec<_>>(),
                "max_quality": best.map(|(t, q)| json!({"triple": t.to_string(), "quality": real_json(&q)})),
            }))
            .table(&["a", "b", "c"], rows);
            o.undecided = !complete;
            o
        }
        AbcCmd::Transform(t) => {
            let t = triple_of(t, cfg)?;
            let s = abc_to_sunit(&t)?;
            let (back, rep) = sunit_to_abc(&s)?;
            let p1 = sunit_p1_bridge(&s)?;
            Output::new(json!({
                "triple": t.to_string(),
                "sunit": sunit_json(&s),
                "round_trip": back.to_string(),
                "radical": log_json(&rep.radical, prec),
                "sigma_s": log_json(&rep.sigma_s, prec),
                "p1_point": p1.to_json(),
            }))
        }
        AbcCmd::Ingest { corpus } => {
            let data = read_file(corpus, inputs)?;
            let r = ingest_corpus(data.as_slice())?;
            let rows = r
                .accepted
                .iter()
                .map(|t| vec![t.a.to_string(), t.b.to_string(), t.c.to_string()])
                .collect();
            Output::new(r.to_json()).table(&["a", "b", "c"], rows)
        }
    })
}

fn primes_u64(s: &str) -> CResult<Vec<u64>> {
    parse_primes(s)?
        .into_iter()
        .map(|p| u64::try_from(p).map_err(|_| CliError::Usage("search primes must fit in 64 bits".into())))
        .collect()
}

fn sunit_cmd(c: &SunitCmd, cfg: &Config) -> CResult<Output> {
    let prec = cfg.precision;
    Ok(match c {
        SunitCmd::Search(a) => {
            let primes = primes_u64(&a.primes)?;
            let res = search_sunit_solutions(&primes, a.height, a.budget)?;
            let mut o = Output::new(json!({
                "S": a.primes,
                "height_bound": a.height,
                "complete": res.complete,
                "count": res.solutions.len(),
                "solutions": res.solutions.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            }))
            .table(&["u", "v", "orbit"], search_rows(&res.solutions));
            o.undecided = !res.complete;
            o
        }
        SunitCmd::Transform(a) => {
            let s = sunit_of(a, cfg)?;
            let (t, rep) = sunit_to_abc(&s)?;
            Output::new(json!({
                "sunit": sunit_json(&s),
                "triple": t.to_string(),
                "radical": log_json(&rep.radical, prec),
                "sigma_s": log_json(&rep.sigma_s, prec),
                "h_u": rep.h_u.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            }))
        }
        SunitCmd::Bridge(a) => {
            let s = sunit_of(a, cfg)?;
            let p = sunit_p1_bridge(&s)?;
            Output::new(json!({
                "sunit": sunit_json(&s),
                "p1_point": p.to_json(),
                "height": log_json(&p.height(prec)?, prec),
            }))
        }
    })
}

fn profile_summary(p: &BoundProfile) -> Value {
    json!({
        "name": p.name,
        "expr": p.expr.to_string(),
        "hypothetical": p.hypothetical(),
        "conventions": p.conventions,
    })
}

fn bound_cmd(c: &BoundCmd, cfg: &Config, c0: &BigRational, inputs: &mut Vec<(String, String)>) -> CResult<Output> {
    let prec = cfg.precision;
    Ok(match c {
        BoundCmd::List => {
            let ps = builtin_profiles();
            let rows = ps.iter().map(|p| vec![p.name.clone(), p.hypothetical().join(" ")]).collect();
            Output::new(json!({ "profiles": ps.iter().map(profile_summary).collect::<Vec<_>>() }))
                .table(&["profile", "hypothetical"], rows)
        }
        BoundCmd::Eval { profile, env } => {
            let p = profile_of(profile, inputs)?;
            let parts = split_list(env);
            if parts.len() != 5 {
                return Err(CliError::Usage("--env needs u,v,w,z,d".into()));
            }
            let q: Vec<BigRational> = parts.iter().map(|t| usage(parse_rat(t))).collect::<CResult<_>>()?;
            let e = usage(Env::from_rationals([q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone(), q[4].clone()], prec))?;
            let val = p.eval(&e, prec)?;
            let mut named = serde_json::Map::new();
            for n in p.named.keys() {
                named.insert(n.clone(), real_json(&p.eval_named(n, &e, prec)?));
            }
            let hyp = p.hypothetical();
            let mut v = real_json(&val);
            if !hyp.is_empty() {
                v["tag"] = json!("hypothetical-constant");
            }
            Output::new(json!({
                "profile": p.name,
                "env": parts,
                "value": v,
                "named": named,
                "hypothetical": hyp,
            }))
        }
        BoundCmd::Transform { profile, kind, d_phi, u_phi, v_phi, w_phi, gamma, strict } => {
            let p = profile_of(profile, inputs)?;
            let r = |s: &str| usage(parse_rat(s));
            let (u, v, w, g) = (r(u_phi)?, r(v_phi)?, r(w_phi)?, r(gamma)?);
            let out = match kind.as_str() {
                "morph-fini" => usage(morph_fini_transform(&p, &u, &v, &w, &g))?,
                "revet-etale" => usage(revet_etale_transform(&p, *d_phi, &u, &v, &w, &g, c0, *strict))?,
                k => return Err(CliError::Usage(format!("unknown transform `{k}`"))),
            };
            let pattern = exponent_pattern(&out).ok().map(|e| {
                json!({
                    "P": affine_str(&e.p),
                    "log_P": affine_str(&e.log_p),
                    "s": affine_str(&e.s),
                    "gamma_d": affine_str(&e.gamma_d),
                    "matches_elliptic": e.matches_ellip(),
                })
            });
            Output::new(json!({ "summary": profile_summary(&out), "exponent_pattern": pattern, "profile": out.to_json() }))
        }
        BoundCmd::Corpus { profile, corpus, free } => {
            let p = profile_of(profile, inputs)?;
            let data = read_file(corpus, inputs)?;
            let triples = usage(read_corpus(data.as_slice()))?;
            let entries = corpus_from_triples(&triples, prec)?;
            let rep = corpus_report(&p, &entries, free, prec)?;
            let rows = entries.iter().map(|e| vec![e.label.clone(), e.h.mid_string(12)]).collect();
            Output::new(rep.to_json()).table(&["triple", "h"], rows)
        }
        BoundCmd::Lemmas { r_max, primes, disc_field } => {
            let m = min_c0(*r_max, prec)?;
            let mut v = json!({
                "min_c0": { "r_max": m.r_max, "argmax": m.argmax, "value": real_json(&m.value), "rounded_up": round_up_2dp(&m.value).to_string() },
                "c0": c0.to_string(),
            });
            let mut dec = Decision::True;
            if let Some(ps) = primes {
                let s = PlaceSet::above_primes(&crate::arith::field::rationals(), &parse_primes(ps)?, true)?;
                let sl = check_sigma_lemma(&s, c0, prec)?;
                dec = dec.and(sl.holds);
                v["sigma_lemma"] = json!({
                    "holds": sl.holds.as_str(),
                    "card_p": sl.card_p,
                    "bound": real_json(&sl.bound_p),
                    "margin": real_json(&sl.margin),
                });
                if let Some(d) = disc_field {
                    let l = crate::arith::field::quadratic_field(*d)?;
                    let dl = check_discriminant_lemma(&crate::arith::field::rationals(), &l, &s, c0, prec)?;
                    dec = dec.and(dl.holds);
                    v["discriminant_lemma"] = json!({
                        "field_disc": l.field_disc().to_string(),
                        "holds": dl.holds.as_str(),
                        "lhs": real_json(&dl.lhs),
                        "rhs": real_json(&dl.rhs),
                    });
                }
            } else if disc_field.is_some() {
                return Err(CliError::Usage("--disc-field needs --primes for R".into()));
            }
            Output::new(v).decided(dec)
        }
    })
}

fn mason_cmd(c: &MasonCmd) -> CResult<Output> {
    Ok(match c {
        MasonCmd::Check { base, a, b, c } => {
            let base = usage(Base::parse(base))?;
            let (a, b) = (ffpoly(a, base)?, ffpoly(b, base)?);
            let c = match c {
                Some(c) => ffpoly(c, base)?,
                None => usage(a.add(&b))?,
            };
            let t = usage(FFTriple::new(a, b, c))?;
            let r = mason_check(&t)?;
            let mut v = r.to_json();
            v["triple"] = json!(t.to_string());
            Output::new(v)
        }
        MasonCmd::Sweep { base, max_deg, full, count, bound, seed } => {
            let r = match usage(Base::parse(base))? {
                Base::Fp(p) => sweep_fp(p, *max_deg, *full)?,
                Base::Q => sweep_q_random(*count, *max_deg, *bound, *seed)?,
            };
            let rows = r.csv_rows().into_iter().map(|x| x.to_vec()).collect();
            Output::new(r.to_json()).table(&["base", "max_deg", "slack", "count"], rows)
        }
    })
}

fn belyi_cmd(c: &BelyiCmd, cfg: &Config, inputs: &mut Vec<(String, String)>) -> CResult<Output> {
    Ok(match c {
        BelyiCmd::Build { branch } => {
            let b = usage(parse_branch_set(branch))?;
            let cert = belyi_for_branch_set(&b, cfg.belyi_degree_cap)?;
            Output::new(cert.to_json())
        }
        BelyiCmd::Certify(m) => {
            let (map, ws) = map_of(m, inputs)?;
            let (cv, ram, method) = certify_belyi(&map, &ws)?;
            Output::new(json!({
                "map": map.to_json(),
                "belyi": true,
                "critical_values": cv.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "ramification": ram.iter().map(|(p, r)| json!([p.to_string(), r])).collect::<Vec<_>>(),
                "method": method.as_str(),
            }))
        }
        BelyiCmd::Fiber { map, y, primes } => {
            let (m, _) = map_of(map, inputs)?;
            let y = usage(parse_rat(y))?;
            let s = parse_primes(primes)?;
            let r = fiber_fields(&m, &y, &s)?;
            let rows = r
                .factors
                .iter()
                .map(|f| {
                    vec![
                        f.poly.fmt_var("x"),
                        f.degree.to_string(),
                        f.field_disc.to_string(),
                        f.provenance.as_str().to_string(),
                        f.decision.as_str().to_string(),
                    ]
                })
                .collect();
            let holds = r.holds;
            Output::new(r.to_json())
                .table(&["min_poly", "degree", "field_disc", "provenance", "decision"], rows)
                .decided(holds)
        }
    })
}

fn field_cmd(c: &FieldCmd, cfg: &Config) -> CResult<Output> {
    Ok(match c {
        FieldCmd::Make { field } => Output::new(field_of(field, cfg)?.to_json()),
        FieldCmd::Split { field, prime } => {
            let k = field_of(field, cfg)?;
            let p = parse_prime(prime)?;
            let ids = split_prime(&k, &p)?;
            let rows = ids.iter().map(|q| vec![q.to_string(), q.e.to_string(), q.f.to_string()]).collect();
            Output::new(json!({
                "p": p.to_string(),
                "ideals": ids.iter().map(|q| q.to_json()).collect::<Vec<_>>(),
            }))
            .table(&["ideal", "e", "f"], rows)
        }
        FieldCmd::Valuation { field, element, prime } => {
            let k = field_of(field, cfg)?;
            let x = usage(parse_element(&k, element))?;
            let p = parse_prime(prime)?;
            let mut vals = Vec::new();
            for q in split_prime(&k, &p)? {
                vals.push(json!({ "ideal": q.to_json(), "valuation": valuation(&x, &q)? }));
            }
            Output::new(json!({ "element": x.to_string(), "valuations": vals }))
        }
    })
}

fn subcommand_name(cmd: &Cmd) -> String {
    let s = format!("{cmd:?}");
    let head: String = s.chars().take_while(|c| c.is_alphanumeric()).collect();
    let inner = match cmd {
        Cmd::Abc(c) => format!("{c:?}"),
        Cmd::Sunit(c) => format!("{c:?}"),
        Cmd::Bound(c) => format!("{c:?}"),
        Cmd::Mason(c) => format!("{c:?}"),
        Cmd::Belyi(c) => format!("{c:?}"),
        Cmd::Field(c) => format!("{c:?}"),
        _ => String::new(),
    };
    let inner: String = inner.chars().take_while(|c| c.is_alphanumeric()).collect();
    if inner.is_empty() {
        head.to_lowercase()
    } else {
        format!("{} {}", head.to_lowercase(), inner.to_lowercase())
    }
}

pub fn resolve_config(g: &Global) -> CResult<Config> {
    let mut c = match &g.config {
        Some(p) => usage(Config::load(p))?,
        None => Config::default(),
    };
    if let Some(x) = g.precision {
        c.precision = x;
    }
    if let Some(x) = g.factor_effort {
        c.factor_effort = x;
    }
    if let Some(x) = g.field_degree_cap {
        c.field_degree_cap = x;
    }
    if let Some(x) = &g.c0 {
        c.c0 = usage(parse_rat(x))?.to_string();
    }
    if let Some(x) = g.belyi_degree_cap {
        c.belyi_degree_cap = x;
    }
    if let Some(x) = g.workers {
        c.workers = x;
    }
    usage(c.validate())?;
    Ok(c)
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_csv(w: &mut dyn Write, o: &Output) -> std::io::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    match &o.table {
        Some((h, rows)) => {
            wr.write_record(h)?;
            for r in rows {
                wr.write_record(r)?;
            }
        }
        None => {
            wr.write_record(["key", "value"])?;
            if let Value::Object(m) = &o.payload {
                for (k, v) in m {
                    wr.write_record([k.as_str(), &csv_cell(v)])?;
                }
            }
        }
    }
    wr.flush()
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn replay(log: &Path, index: Option<usize>) -> CResult<Output> {
    let recs = usage(RunRecord::read_all(log))?;
    let picked: Vec<(usize, &RunRecord)> = match index {
        Some(i) => vec![(i, recs.get(i).ok_or_else(|| CliError::Usage(format!("no record {i} in {}", log.display())))?)],
        None => recs.iter().enumerate().collect(),
    };
    let mut results = Vec::new();
    let mut mismatches = 0;
    for (i, r) in picked {
        let cli = Cli::try_parse_from(&r.argv).map_err(|e| CliError::Usage(format!("record {i}: {e}")))?;
        let (payload, status) = match in_pool(r.config.workers, || execute(&cli.cmd, &r.config)) {
            Ok(o) => (o.payload, if o.undecided { EXIT_UNDECIDED } else { EXIT_OK }),
            Err(e) => (json!({ "error": e.to_string() }), e.status()),
        };
        let same = serde_json::to_string(&payload).ok() == serde_json::to_string(&r.payload).ok() && status == r.status;
        let mut drift = Vec::new();
        for (path, digest) in &r.input_digests {
            match std::fs::read(path) {
                Ok(d) if &sha256_hex(&d) == digest => {}
                _ => drift.push(path.clone()),
            }
        }
        if !same {
            mismatches += 1;
        }
        results.push(json!({ "index": i, "subcommand": r.subcommand, "identical": same, "changed_inputs": drift }));
    }
    let v = json!({ "log": log.display().to_string(), "replayed": results.len(), "mismatches": mismatches, "records": results });
    if mismatches > 0 {
        return Err(CliError::Compute(Error::InvariantViolated(format!("{mismatches} replayed payloads differ: {v}"))));
    }
    Ok(Output::new(v))
}

/// Full command-line entry point; returns the exit status.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let cfg = match resolve_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return e.status();
        }
    };
    let result = match &cli.cmd {
        Cmd::Replay { log, index } => replay(log, *index),
        cmd => in_pool(cfg.workers, || execute(cmd, &cfg)),
    };
    let (status, payload) = match &result {
        Ok(o) => {
            let st = if o.undecided { EXIT_UNDECIDED } else { EXIT_OK };
            let w = if cli.global.csv {
                write_csv(stdout, o)
            } else {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&o.payload).expect("json"))
            };
            if let Err(e) = w {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_ERROR;
            }
            (st, o.payload.clone())
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            (e.status(), json!({ "error": e.to_string() }))
        }
    };
    if !cli.global.no_log && !matches!(cli.cmd, Cmd::Replay { .. }) && status != EXIT_USAGE {
        let rec = RunRecord {
            timestamp: chrono::Utc::now().to_rfc3339(),
            subcommand: subcommand_name(&cli.cmd),
            argv: argv.clone(),
            config_hash: cfg.hash(),
            config: cfg.clone(),
            input_digests: result.as_ref().map(|o| o.inputs.clone()).unwrap_or_default(),
            status,
            payload,
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        if let Err(e) = rec.append(&cli.global.run_log) {
            let _ = writeln!(stderr, "warning: run log not written: {e}");
        }
    }
    status
}

/// Writes `v` to `path` as pretty JSON.
pub fn write_json(path: &Path, v: &Value) -> std::io::Result<()> {
    let mut f = File::create(path)?;
    writeln!(f, "{}", serde_json::to_string_pretty(v).expect("json"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["abclab", "--no-log"];
        argv.extend_from_slice(args);
        let st = run(argv, &mut out, &mut err);
        (st, String::from_utf8(out).unwrap())
    }

    #[test]
    fn quality_of_1_8_9() {
        let (st, out) = call(&["abc", "quality", "--triple", "1,8,9"]);
        assert_eq!(st, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["h"], "log 9");
        assert_eq!(v["rad"], "log 6");
        assert!(v["quality"].as_str().unwrap().starts_with("1.2262"));
    }

    #[test]
    fn malformed_triple_is_usage() {
        assert_eq!(call(&["abc", "quality", "--triple", "1,8"]).0, 64);
        assert_eq!(call(&["abc", "quality", "--triple", "1,2,4"]).0, 64);
        assert_eq!(call(&["bogus"]).0, 64);
    }

    #[test]
    fn mason_frobenius_is_inapplicable() {
        let (st, out) = call(&["mason", "check", "--base", "F5", "--a", "t^5", "--b", "1-t^5", "--c", "1"]);
        assert_eq!(st, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["applicable"], false);
    }

    #[test]
    fn csv_table() {
        let (st, out) = call(&["--csv", "abc", "search", "--primes", "2,3", "--height", "9"]);
        assert_eq!(st, 0);
        assert!(out.starts_with("a,b,c\n"));
        assert!(out.contains("1,8,9"));
    }

    #[test]
    fn subcommand_names() {
        let cli = Cli::try_parse_from(["abclab", "belyi", "build", "--branch", "0,1,inf"]).unwrap();
        assert_eq!(subcommand_name(&cli.cmd), "belyi build");
    }
}
