use std::io::Write as _;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use trapset::census::{census, census_csv, CensusSpec, Criterion};
use trapset::ets::{
    bound_girth6, bound_girth8, GirthSixBound, min_b_girth6, min_b_girth8, min_ets_size, vn_spectral_radius, MinSizeOptions, Regime,
    TVariant,
};
use trapset::graph::{make_named, registry, NamedGraph};
use trapset::qc::{
    builtin, detect_shared_8cycles, detect_t, enumerate_cycles, ets_search, ets_search_in_code, girth_bfs, girth_qc,
    ExponentMatrix, SparseMatrix, TannerGraph,
};
use trapset::reproduce::{reproduce, ReproOptions, ReproTarget};
use trapset::sim::{emit_fer_csv, emit_plot_script, parse_ebn0_list, simulate, simulate_tanner, DecoderConfig, StopRule};
use trapset::turan::{brute_force_ex_with_ceiling, ex_exact, family_cap_th2, family_h, family_upper_th2, theta222_cap, theta222_upper, Target};
use trapset::{Error, Graph};

const EXIT_MISMATCH: u8 = 2;
const EXIT_CEILING: u8 = 3;

#[derive(Parser)]
#[command(name = "trapset", version, about = "Extremal-graph tools for elementary trapping sets of LDPC codes")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Key-value file supplying defaults for `threads`, `json`, `seed` and `ceiling`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Turán numbers: exact values, closed-form bounds, brute-force search.
    #[command(subcommand)]
    Turan(TuranCmd),
    /// Spectral-radius census of VN graphs.
    Census(CensusArgs),
    /// ETS bounds, minimum sizes and spectral radii.
    #[command(subcommand)]
    Ets(EtsCmd),
    /// Structural audits of QC-LDPC codes.
    #[command(subcommand)]
    Qc(QcCmd),
    /// BPSK/AWGN frame-error-rate simulation.
    Sim(SimArgs),
    /// Regenerate a published table or claim and diff it against the golden data.
    Reproduce(ReproArgs),
}

#[derive(Subcommand)]
enum TuranCmd {
    /// ex(n, G_i) with its extremal graphs.
    Exact {
        #[arg(long)]
        target: Target,
        #[arg(long)]
        n: usize,
    },
    /// Closed-form upper bound for the θ(2,2,2)-free or the family-free case.
    Bound {
        /// `theta222` or `family`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Brute-force maximum over graphs avoiding every listed graph.
    Search {
        /// Forbidden graph: a name such as `G1`, `theta 2 2 2`, `cycle 4`, or `family`.
        #[arg(long = "forbid", required = true)]
        forbid: Vec<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ceiling: Option<usize>,
    },
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    gamma: usize,
    /// Tanner girth (6 or 8).
    #[arg(long)]
    girth: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<usize>,
    /// `c4` or a chorded-cycle target `G1`, `G2`, `G3`; repeatable.
    #[arg(long = "criterion", required = true)]
    criteria: Vec<Criterion>,
    #[arg(long)]
    ceiling: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EtsCmd {
    /// Lower bounds on b for a given a.
    Bound {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        gamma: usize,
    },
    /// Smallest a admitting an (a, b)-ETS under a regime (`girth8`, `T1`, `T2`, `T3`).
    MinSize {
        #[arg(long)]
        gamma: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        regime: Regime,
        #[arg(long)]
        a_start: Option<usize>,
        #[arg(long)]
        ceiling: Option<usize>,
        /// Report only the bound, without searching for a realizing graph.
        #[arg(long)]
        no_confirm: bool,
    },
    /// Spectral radius of a VN graph's system matrix.
    Spectrum {
        /// Edge-list file (`n m` header, then `u v` lines).
        #[arg(long, conflicts_with = "named")]
        graph: Option<PathBuf>,
        /// Named graph, e.g. `petersen`-style names from the registry or `theta 2 2 2`.
        #[arg(long)]
        named: Option<String>,
    },
}

#[derive(Args)]
struct CodeArg {
    /// Built-in code (`C1`, `C2`), exponent-matrix file, or `.alist` file.
    #[arg(long)]
    code: String,
}

#[derive(Subcommand)]
enum QcCmd {
    Girth(CodeArg),
    /// List cycles up to a length.
    Cycles {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Pairs of 8-cycles sharing a variable node.
    #[command(name = "audit-8cycles")]
    Audit8Cycles(CodeArg),
    /// Embeddings of the T1, T2, T3 patterns.
    #[command(name = "audit-T", alias = "audit-t")]
    AuditT {
        #[command(flatten)]
        code: CodeArg,
        /// Restrict to one variant.
        #[arg(long)]
        variant: Option<TVariant>,
    },
    /// Exhaustive search for small elementary trapping sets.
    EtsSearch {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        a_max: usize,
        #[arg(long)]
        b_max: usize,
    },
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    code: CodeArg,
    /// `sum-product`, `min-sum` or `nms:<factor>`.
    #[arg(long, default_value = "min-sum")]
    decoder: String,
    #[arg(long, default_value_t = 50)]
    iters: usize,
    /// `start:step:stop` or a comma list; `inf` means noiseless.
    #[arg(long)]
    ebn0: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10_000_000)]
    max_frames: u64,
    #[arg(long, default_value_t = 200)]
    max_errors: u64,
    #[arg(long)]
    no_early_stop: bool,
    #[arg(long, default_value_t = 30.0)]
    llr_clip: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a matplotlib script next to the CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// `table1`, `table2`, `table3` or `girth-claims`.
    target: ReproTarget,
    /// Skip the extended rows (Table II a ≥ 13, Table III a = 10).
    #[arg(long)]
    core_only: bool,
    /// Write the per-cell report here as well.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default)]
struct RunConfig {
    threads: Option<usize>,
    json: bool,
    seed: Option<u64>,
    ceiling: Option<usize>,
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment; unknown keys are errors.
    fn parse(text: &str) -> anyhow::Result<Self> {
        let mut c = RunConfig::default();
        let mut seen = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("config line {}: expected key = value", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if seen.insert(k.to_string(), i).is_some() {
                bail!("config line {}: duplicate key '{k}'", i + 1);
            }
            let bad = || anyhow!("config line {}: bad value '{v}' for '{k}'", i + 1);
            match k {
                "threads" => c.threads = Some(v.parse().map_err(|_| bad())?),
                "json" => c.json = v.parse().map_err(|_| bad())?,
                "seed" => c.seed = Some(v.parse().map_err(|_| bad())?),
                "ceiling" => c.ceiling = Some(v.parse().map_err(|_| bad())?),
                _ => bail!("config line {}: unknown key '{k}'", i + 1),
            }
        }
        if c.threads == Some(0) || c.ceiling == Some(0) {
            bail!("config: threads and ceiling must be positive");
        }
        Ok(c)
    }
}

enum Code {
    Qc(ExponentMatrix),
    Plain(TannerGraph),
}

impl Code {
    fn load(spec: &str) -> anyhow::Result<Code> {
        if let Ok(e) = builtin(spec) {
            return Ok(Code::Qc(e));
        }
        let path = Path::new(spec);
        let text = std::fs::read_to_string(path).with_context(|| format!("reading code '{spec}'"))?;
        if path.extension().is_some_and(|x| x == "alist") {
            Ok(Code::Plain(TannerGraph::from_matrix(&SparseMatrix::from_alist(&text)?)))
        } else {
            Ok(Code::Qc(ExponentMatrix::parse(&text)?))
        }
    }

    fn require_qc(&self, what: &str) -> anyhow::Result<&ExponentMatrix> {
        match self {
            Code::Qc(e) => Ok(e),
            Code::Plain(_) => bail!("{what} needs an exponent matrix"),
        }
    }
}

fn named_graph(s: &str) -> anyhow::Result<Graph> {
    if let Ok(g) = registry().graph(s) {
        return Ok(g);
    }
    let kind: NamedGraph = s.parse()?;
    Ok(make_named(kind)?)
}

fn print_out(json_mode: bool, value: serde_json::Value, text: String) {
    let mut body = if json_mode { serde_json::to_string_pretty(&value).expect("serializable") } else { text };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    // a closed pipe (`| head`) is not an error
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::parse(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
        None => RunConfig::default(),
    };
    let json_mode = cli.json || cfg.json;
    if let Some(t) = cli.threads.or(cfg.threads) {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match cli.cmd {
        Cmd::Turan(t) => turan_cmd(t, &cfg, json_mode),
        Cmd::Census(c) => {
            let mut spec = CensusSpec::new(c.gamma, c.girth, c.criteria);
            spec.a_values = c.a;
            spec.b_values = c.b;
            if let Some(x) = c.ceiling.or(cfg.ceiling) {
                spec.ceiling = x;
            }
            let rows = census(&spec)?;
            let csv = census_csv(&rows);
            if let Some(p) = &c.out {
                std::fs::write(p, &csv)?;
            }
            print_out(json_mode, json!(rows), csv);
            Ok(0)
        }
        Cmd::Ets(e) => ets_cmd(e, &cfg, json_mode),
        Cmd::Qc(q) => qc_cmd(q, json_mode),
        Cmd::Sim(s) => sim_cmd(s, &cfg, json_mode),
        Cmd::Reproduce(r) => {
            let report = reproduce(r.target, ReproOptions { extended: !r.core_only })?;
            let text = report.render();
            if let Some(p) = &r.out {
                std::fs::write(p, &text)?;
            }
            print_out(json_mode, json!(report), text);
            Ok(if report.passed() { 0 } else { EXIT_MISMATCH })
        }
    }
}

fn turan_cmd(t: TuranCmd, cfg: &RunConfig, json_mode: bool) -> anyhow::Result<u8> {
    let r = match t {
        TuranCmd::Exact { target, n } => ex_exact(target, n)?,
        TuranCmd::Bound { family, n } => {
            let (value, cap) = match family.to_ascii_lowercase().as_str() {
                "theta222" | "theta" => (theta222_upper(n)?, theta222_cap(n)?),
                "family" | "h" => (family_upper_th2(n)?, family_cap_th2(n)?),
                _ => bail!("unknown family '{family}' (expected theta222 or family)"),
            };
            print_out(json_mode, json!({ "n": n, "value": value, "cap": cap }), format!("n={n} bound={value:.6} cap={cap}"));
            return Ok(0);
        }
        TuranCmd::Search { forbid, n, ceiling } => {
            let mut fam = Vec::new();
            for f in &forbid {
                if f.eq_ignore_ascii_case("family") {
                    fam.extend(family_h());
                } else {
                    fam.push(named_graph(f)?);
                }
            }
            brute_force_ex_with_ceiling(&fam, n, ceiling.or(cfg.ceiling).unwrap_or(8))?
        }
    };
    let mut text = format!("n = {}: {} edges ({:?})\n", r.n, r.cap, r.kind);
    if let Some(ext) = &r.extremal {
        for (i, g) in ext.iter().enumerate() {
            text.push_str(&format!("# extremal {}\n{}", i + 1, g.to_text()));
        }
    }
    print_out(json_mode, json!(r), text);
    Ok(0)
}

fn ets_cmd(e: EtsCmd, cfg: &RunConfig, json_mode: bool) -> anyhow::Result<u8> {
    match e {
        EtsCmd::Bound { a, gamma } => {
            let mut text = format!("girth 8, no shared 8-cycles: b >= {:.4} (min b {})\n", bound_girth8(a, gamma), min_b_girth8(a, gamma));
            let mut rows = vec![json!({ "regime": "girth8", "bound": bound_girth8(a, gamma), "min_b": min_b_girth8(a, gamma) })];
            for v in TVariant::ALL {
                let m = min_b_girth6(a, gamma, v);
                match m {
                    GirthSixBound::MinB(x) => text.push_str(&format!("girth 6, {v}-free: b >= {:.4} (min b {x})\n", bound_girth6(a, gamma, v))),
                    GirthSixBound::Inapplicable => text.push_str(&format!("girth 6, {v}-free: bound inapplicable for a = {a}\n")),
                }
                rows.push(json!({ "regime": v.to_string(), "bound": bound_girth6(a, gamma, v), "min_b": m }));
            }
            print_out(json_mode, json!(rows), text);
            Ok(0)
        }
        EtsCmd::MinSize { gamma, b, regime, a_start, ceiling, no_confirm } => {
            let mut opts = MinSizeOptions { confirm_existence: !no_confirm, a_start, ..Default::default() };
            if let Some(c) = ceiling.or(cfg.ceiling) {
                opts.ceiling = c;
            }
            let m = min_ets_size(gamma, b, regime, opts)?;
            let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
            let mut text = format!("a_lower={} a_confirmed={}\n", show(m.a_lower), show(m.a_confirmed));
            if let Some(w) = &m.witness {
                text.push_str(&w.to_text());
            }
            print_out(json_mode, json!(m), text);
            Ok(if m.lower_bound_only && opts.confirm_existence { EXIT_CEILING } else { 0 })
        }
        EtsCmd::Spectrum { graph, named } => {
            let g = match (graph, named) {
                (Some(p), _) => Graph::parse(&std::fs::read_to_string(&p)?)?,
                (None, Some(n)) => named_graph(&n)?,
                (None, None) => bail!("give --graph or --named"),
            };
            let rho = vn_spectral_radius(&g)?;
            print_out(json_mode, json!({ "rho": rho }), format!("{rho:.10}"));
            Ok(0)
        }
    }
}

fn qc_cmd(q: QcCmd, json_mode: bool) -> anyhow::Result<u8> {
    match q {
        QcCmd::Girth(c) => {
            let code = Code::load(&c.code)?;
            let g = match &code {
                Code::Qc(e) => girth_qc(e),
                Code::Plain(t) => girth_bfs(t),
            };
            let s = g.map_or("inf".to_string(), |x| x.to_string());
            print_out(json_mode, json!({ "girth": g }), format!("girth {s}"));
            Ok(0)
        }
        QcCmd::Cycles { code, max_len } => {
            let code = Code::load(&code.code)?;
            let r = enumerate_cycles(code.require_qc("cycle listing")?, max_len)?;
            let mut text = String::new();
            for (len, (orbits, raw)) in &r.by_length {
                text.push_str(&format!("length {len}: {orbits} orbits, {raw} cycles\n"));
            }
            print_out(json_mode, json!(r), text);
            Ok(0)
        }
        QcCmd::Audit8Cycles(c) => {
            let code = Code::load(&c.code)?;
            let w = detect_shared_8cycles(code.require_qc("the 8-cycle audit")?)?;
            let raw: usize = w.iter().map(|x| x.orbit_size).sum();
            let text = format!("{} pair orbits, {raw} pairs of 8-cycles sharing a variable node", w.len());
            print_out(json_mode, json!(w), text);
            Ok(if w.is_empty() { 0 } else { EXIT_MISMATCH })
        }
        QcCmd::AuditT { code, variant } => {
            let code = Code::load(&code.code)?;
            let e = code.require_qc("the T audit")?;
            let variants = variant.map_or(TVariant::ALL.to_vec(), |v| vec![v]);
            let mut audits = Vec::new();
            let mut text = String::new();
            for v in variants {
                let a = detect_t(e, v)?;
                text.push_str(&format!("{v}: {} orbits, {} embeddings\n", a.witnesses.len(), a.raw_count));
                audits.push(a);
            }
            let clean = audits.iter().all(|a| a.witnesses.is_empty());
            print_out(json_mode, json!(audits), text);
            Ok(if clean { 0 } else { EXIT_MISMATCH })
        }
        QcCmd::EtsSearch { code, a_max, b_max } => {
            let code = Code::load(&code.code)?;
            let r = match &code {
                Code::Qc(e) => ets_search(e, a_max, b_max)?,
                Code::Plain(t) => ets_search_in_code(t, a_max, b_max)?,
            };
            let mut text = String::new();
            for ((a, b), (orbits, raw)) in &r.counts {
                text.push_str(&format!("({a},{b}): {orbits} orbits, {raw} sets\n"));
            }
            if r.counts.is_empty() {
                text.push_str("no elementary trapping sets in range\n");
            }
            print_out(json_mode, json!(r), text);
            Ok(0)
        }
    }
}

fn sim_cmd(s: SimArgs, cfg: &RunConfig, json_mode: bool) -> anyhow::Result<u8> {
    let code = Code::load(&s.code.code)?;
    let dec = DecoderConfig {
        variant: s.decoder.parse()?,
        max_iterations: s.iters,
        early_stop: !s.no_early_stop,
        llr_clip: s.llr_clip,
    };
    let ebn0 = parse_ebn0_list(&s.ebn0)?;
    let stop = StopRule { max_frames: s.max_frames, max_frame_errors: s.max_errors };
    let seed = s.seed.or(cfg.seed).unwrap_or(0);
    let r = match &code {
        Code::Qc(e) => simulate(e, &s.code.code, dec, &ebn0, stop, seed)?,
        Code::Plain(t) => {
            let rate = (t.num_vars() - t.num_checks()) as f64 / t.num_vars() as f64;
            simulate_tanner(t, &s.code.code, rate, dec, &ebn0, stop, seed)?
        }
    };
    if let Some(p) = &s.out {
        emit_fer_csv(&r, p)?;
    }
    if let Some(p) = &s.plot {
        emit_plot_script(&r, p)?;
    }
    print_out(json_mode, json!(r), trapset::sim::fer_csv(&r));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let ceiling = e.downcast_ref::<Error>().is_some_and(|x| matches!(x, Error::ResourceCeiling(_)));
            ExitCode::from(if ceiling { EXIT_CEILING } else { 1 })
        }
    }
}
