//! BPSK/AWGN Monte-Carlo harness with belief-propagation decoding.
//!
//! The all-zero codeword is sent (bit 0 maps to +1). Every frame draws its
//! noise from its own ChaCha stream keyed by (seed, point, frame), and frames
//! are folded in frame order, so results do not depend on the worker count.

use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qc::{ExponentMatrix, TannerGraph};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "factor")]
pub enum DecoderVariant {
    SumProduct,
    MinSum,
    NormalizedMinSum(f64),
}

impl std::fmt::Display for DecoderVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecoderVariant::SumProduct => write!(f, "sum-product"),
            DecoderVariant::MinSum => write!(f, "min-sum"),
            DecoderVariant::NormalizedMinSum(a) => write!(f, "nms:{a}"),
        }
    }
}

impl std::str::FromStr for DecoderVariant {
    type Err = Error;
    /// `sum-product`, `min-sum`, or `nms:<factor>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        match s.as_str() {
            "sum-product" | "spa" | "bp" => Ok(DecoderVariant::SumProduct),
            "min-sum" | "ms" => Ok(DecoderVariant::MinSum),
            _ => {
                let f = s
                    .strip_prefix("nms:")
                    .or_else(|| s.strip_prefix("normalized-min-sum:"))
                    .ok_or_else(|| Error::Parameter(format!("unknown decoder '{s}'")))?;
                let a: f64 = f.parse().map_err(|_| Error::Parameter(format!("bad normalization factor '{f}'")))?;
                Ok(DecoderVariant::NormalizedMinSum(a))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecoderConfig {
    pub variant: DecoderVariant,
    pub max_iterations: usize,
    /// Stop as soon as the hard decision satisfies every check.
    pub early_stop: bool,
    /// Messages are clipped to ±llr_clip.
    pub llr_clip: f64,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig { variant: DecoderVariant::MinSum, max_iterations: 50, early_stop: true, llr_clip: 30.0 }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Parameter("max_iterations must be at least 1".into()));
        }
        if let DecoderVariant::NormalizedMinSum(a) = self.variant {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::Parameter(format!("normalization factor {a} not in (0, 1]")));
            }
        }
        if !(self.llr_clip > 0.0) {
            return Err(Error::Parameter("llr_clip must be positive".into()));
        }
        Ok(())
    }
}

/// Result of decoding one frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoded {
    pub hard: Vec<u8>,
    pub iterations: usize,
    /// Hard decision satisfies every parity check.
    pub syndrome_ok: bool,
}

/// Flooding-schedule decoder. Edges are stored check-major.
#[derive(Clone, Debug)]
pub struct Decoder {
    cfg: DecoderConfig,
    n: usize,
    /// Per check, the range of its edges.
    chk_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    /// Per variable, its edge indices.
    var_edges: Vec<Vec<usize>>,
    c2v: Vec<f64>,
    v2c: Vec<f64>,
    total: Vec<f64>,
    scratch: Vec<f64>,
}

impl Decoder {
    pub fn new(t: &TannerGraph, cfg: DecoderConfig) -> Result<Self> {
        cfg.validate()?;
        let n = t.num_vars();
        let mut chk_ptr = vec![0];
        let mut edge_var = Vec::new();
        let mut var_edges = vec![Vec::new(); n];
        for nb in &t.chk_adj {
            for &v in nb {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            chk_ptr.push(edge_var.len());
        }
        let e = edge_var.len();
        Ok(Decoder {
            cfg,
            n,
            chk_ptr,
            edge_var,
            var_edges,
            c2v: vec![0.0; e],
            v2c: vec![0.0; e],
            total: vec![0.0; n],
            scratch: Vec::new(),
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    /// Decodes channel LLRs (positive favours bit 0).
    pub fn decode(&mut self, llr: &[f64]) -> Decoded {
        assert_eq!(llr.len(), self.n, "LLR length");
        let clip = self.cfg.llr_clip;
        let ch: Vec<f64> = llr.iter().map(|&l| l.clamp(-clip, clip)).collect();
        for (e, &v) in self.edge_var.iter().enumerate() {
            self.v2c[e] = ch[v];
        }
        self.c2v.iter_mut().for_each(|m| *m = 0.0);
        let mut hard = vec![0u8; self.n];
        let mut iterations = 0;
        let mut ok = false;
        for it in 1..=self.cfg.max_iterations {
            iterations = it;
            self.check_update();
            for v in 0..self.n {
                let s: f64 = ch[v] + self.var_edges[v].iter().map(|&e| self.c2v[e]).sum::<f64>();
                self.total[v] = s;
                hard[v] = u8::from(s < 0.0);
                for &e in &self.var_edges[v] {
                    self.v2c[e] = (s - self.c2v[e]).clamp(-clip, clip);
                }
            }
            ok = self.syndrome_ok(&hard);
            if ok && self.cfg.early_stop {
                break;
            }
        }
        Decoded { hard, iterations, syndrome_ok: ok }
    }

    fn check_update(&mut self) {
        let clip = self.cfg.llr_clip;
        for c in 0..self.chk_ptr.len() - 1 {
            let (lo, hi) = (self.chk_ptr[c], self.chk_ptr[c + 1]);
            match self.cfg.variant {
                DecoderVariant::SumProduct => {
                    // leave-one-out products of tanh(m/2) by prefix/suffix sweeps
                    let d = hi - lo;
                    self.scratch.clear();
                    self.scratch.extend(self.v2c[lo..hi].iter().map(|&m| (0.5 * m).tanh()));
                    let mut prefix = 1.0;
                    for i in 0..d {
                        self.c2v[lo + i] = prefix;
                        prefix *= self.scratch[i];
                    }
                    let mut suffix = 1.0;
                    for i in (0..d).rev() {
                        let p = (self.c2v[lo + i] * suffix).clamp(-0.999_999_999_999, 0.999_999_999_999);
                        self.c2v[lo + i] = (2.0 * p.atanh()).clamp(-clip, clip);
                        suffix *= self.scratch[i];
                    }
                }
                DecoderVariant::MinSum | DecoderVariant::NormalizedMinSum(_) => {
                    let scale = match self.cfg.variant {
                        DecoderVariant::NormalizedMinSum(a) => a,
                        _ => 1.0,
                    };
                    let (mut m1, mut m2, mut arg) = (f64::INFINITY, f64::INFINITY, lo);
                    let mut neg = false;
                    for e in lo..hi {
                        let m = self.v2c[e];
                        neg ^= m < 0.0;
                        let a = m.abs();
                        if a < m1 {
                            m2 = m1;
                            m1 = a;
                            arg = e;
                        } else if a < m2 {
                            m2 = a;
                        }
                    }
                    for e in lo..hi {
                        let mag = if e == arg { m2 } else { m1 };
                        let sign = neg ^ (self.v2c[e] < 0.0);
                        let out = scale * mag.min(clip);
                        self.c2v[e] = if sign { -out } else { out };
                    }
                }
            }
        }
    }

    fn syndrome_ok(&self, hard: &[u8]) -> bool {
        (0..self.chk_ptr.len() - 1).all(|c| {
            self.edge_var[self.chk_ptr[c]..self.chk_ptr[c + 1]].iter().fold(0u8, |acc, &v| acc ^ hard[v]) == 0
        })
    }
}

/// True when `hard` satisfies every check of `t`.
pub fn syndrome_ok(t: &TannerGraph, hard: &[u8]) -> bool {
    t.chk_adj.iter().all(|nb| nb.iter().fold(0u8, |acc, &v| acc ^ hard[v]) == 0)
}

/// Noise standard deviation for BPSK at the given Eb/N0 (dB) and code rate.
/// Infinite Eb/N0 gives 0.
pub fn noise_sigma(ebn0_db: f64, rate: f64) -> f64 {
    if ebn0_db == f64::INFINITY {
        return 0.0;
    }
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    (1.0 / (2.0 * rate * ebn0)).sqrt()
}

/// Deterministic RNG for one frame.
pub fn frame_rng(seed: u64, point: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 48) ^ frame);
    rng
}

/// Channel LLRs for the all-zero codeword.
pub fn channel_llrs(rng: &mut ChaCha8Rng, n: usize, sigma: f64, clip: f64) -> Vec<f64> {
    if sigma == 0.0 {
        return vec![clip; n];
    }
    let s2 = sigma * sigma;
    (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            2.0 * (1.0 + sigma * z) / s2
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StopRule {
    pub max_frames: u64,
    pub max_frame_errors: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule { max_frames: 10_000_000, max_frame_errors: 200 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimPoint {
    pub ebn0_db: f64,
    pub sigma: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub avg_iterations: f64,
    /// Frames whose hard decision satisfied every check.
    pub syndrome_satisfied: u64,
    /// Frames that satisfied every check but differ from the sent word.
    pub undetected_errors: u64,
}

impl SimPoint {
    pub fn fer(&self) -> f64 {
        if self.frames == 0 {
            0.0
        } else {
            self.frame_errors as f64 / self.frames as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub code_id: String,
    pub n: usize,
    pub design_rate: f64,
    pub actual_rate: f64,
    pub seed: u64,
    pub decoder: DecoderConfig,
    pub stop: StopRule,
    pub points: Vec<SimPoint>,
}

/// Frames decoded per parallel batch.
const BATCH: u64 = 512;

#[derive(Clone, Copy)]
struct FrameOutcome {
    error: bool,
    bits: u64,
    iterations: usize,
    syndrome_ok: bool,
}

/// Simulates a lifted code. The design rate (η−γ)/η sets the noise level.
pub fn simulate(
    code: &ExponentMatrix,
    code_id: &str,
    cfg: DecoderConfig,
    ebn0_db: &[f64],
    stop: StopRule,
    seed: u64,
) -> Result<SimResult> {
    let rate = (code.cols() - code.rows()) as f64 / code.cols() as f64;
    simulate_tanner(&code.tanner(), code_id, rate, cfg, ebn0_db, stop, seed)
}

/// Simulates an arbitrary code at the given design rate.
pub fn simulate_tanner(
    t: &TannerGraph,
    code_id: &str,
    design_rate: f64,
    cfg: DecoderConfig,
    ebn0_db: &[f64],
    stop: StopRule,
    seed: u64,
) -> Result<SimResult> {
    cfg.validate()?;
    if ebn0_db.is_empty() {
        return Err(Error::Parameter("empty Eb/N0 list".into()));
    }
    if let Some(x) = ebn0_db.iter().find(|x| x.is_nan() || **x == f64::NEG_INFINITY) {
        return Err(Error::Parameter(format!("invalid Eb/N0 {x}")));
    }
    if !(design_rate > 0.0 && design_rate <= 1.0) {
        return Err(Error::Parameter(format!("rate {design_rate} not in (0, 1]")));
    }
    if stop.max_frames == 0 || stop.max_frame_errors == 0 {
        return Err(Error::Parameter("stop rule limits must be positive".into()));
    }
    let n = t.num_vars();
    let rank = t.to_matrix().rank_gf2();
    let actual_rate = (n - rank) as f64 / n as f64;
    let proto = Decoder::new(t, cfg)?;
    let mut points = Vec::new();
    for (pi, &snr) in ebn0_db.iter().enumerate() {
        let sigma = noise_sigma(snr, design_rate);
        let mut p = SimPoint {
            ebn0_db: snr,
            sigma,
            frames: 0,
            frame_errors: 0,
            bit_errors: 0,
            avg_iterations: 0.0,
            syndrome_satisfied: 0,
            undetected_errors: 0,
        };
        let mut iters = 0u64;
        'point: while p.frames < stop.max_frames && p.frame_errors < stop.max_frame_errors {
            let start = p.frames;
            let end = (start + BATCH).min(stop.max_frames);
            let batch: Vec<FrameOutcome> = (start..end)
                .into_par_iter()
                .map_init(
                    || proto.clone(),
                    |dec, f| {
                        let mut rng = frame_rng(seed, pi, f);
                        let llr = channel_llrs(&mut rng, n, sigma, cfg.llr_clip);
                        let d = dec.decode(&llr);
                        let bits = d.hard.iter().map(|&b| u64::from(b)).sum::<u64>();
                        FrameOutcome { error: bits > 0, bits, iterations: d.iterations, syndrome_ok: d.syndrome_ok }
                    },
                )
                .collect();
            for o in batch {
                p.frames += 1;
                iters += o.iterations as u64;
                p.bit_errors += o.bits;
                p.frame_errors += u64::from(o.error);
                p.syndrome_satisfied += u64::from(o.syndrome_ok);
                p.undetected_errors += u64::from(o.syndrome_ok && o.error);
                if p.frame_errors >= stop.max_frame_errors {
                    break 'point;
                }
            }
        }
        p.avg_iterations = iters as f64 / p.frames as f64;
        points.push(p);
    }
    Ok(SimResult {
        code_id: code_id.to_string(),
        n,
        design_rate,
        actual_rate,
        seed,
        decoder: cfg,
        stop,
        points,
    })
}

/// Parses `start:step:stop` (inclusive) or a comma-separated list.
pub fn parse_ebn0_list(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parameter(format!("bad Eb/N0 list '{s}'"));
    let num = |x: &str| -> Result<f64> {
        match x.trim() {
            "inf" | "+inf" => Ok(f64::INFINITY),
            t => t.parse().map_err(|_| bad()),
        }
    };
    let parts: Vec<&str> = s.split(':').collect();
    let out = match parts[..] {
        [a, step, b] => {
            let (a, step, b) = (num(a)?, num(step)?, num(b)?);
            if !(step > 0.0) || !a.is_finite() || !b.is_finite() || b < a {
                return Err(bad());
            }
            let k = ((b - a) / step + 1e-9).floor() as usize;
            (0..=k).map(|i| a + i as f64 * step).collect()
        }
        [_] => s.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(bad()),
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub const FER_HEADER: &str = "ebn0_db,frames,frame_errors,fer,avg_iters";

pub fn fer_csv(r: &SimResult) -> String {
    let mut s = format!("{FER_HEADER}\n");
    for p in &r.points {
        writeln!(s, "{},{},{},{:e},{}", p.ebn0_db, p.frames, p.frame_errors, p.fer(), p.avg_iterations).unwrap();
    }
    s
}

pub fn emit_fer_csv(r: &SimResult, path: &Path) -> Result<()> {
    if r.points.is_empty() {
        return Err(Error::Parameter("no simulation points".into()));
    }
    std::fs::write(path, fer_csv(r))?;
    Ok(())
}

/// A self-contained matplotlib script drawing FER against Eb/N0 on a log
/// scale. The data are embedded, so re-running it gives the same figure.
pub fn plot_script(r: &SimResult, image: &str) -> String {
    let pts: Vec<&SimPoint> = r.points.iter().filter(|p| p.ebn0_db.is_finite() && p.frame_errors > 0).collect();
    let xs: Vec<String> = pts.iter().map(|p| format!("{}", p.ebn0_db)).collect();
    let ys: Vec<String> = pts.iter().map(|p| format!("{:e}", p.fer())).collect();
    let mut s = String::new();
    s.push_str("import matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n");
    writeln!(s, "ebn0 = [{}]", xs.join(", ")).unwrap();
    writeln!(s, "fer = [{}]", ys.join(", ")).unwrap();
    s.push_str("\nfig, ax = plt.subplots(figsize=(5, 4))\n");
    writeln!(s, "ax.semilogy(ebn0, fer, \"o-\", label=\"{} ({})\")", r.code_id, r.decoder.variant).unwrap();
    s.push_str("ax.set_xlabel(\"Eb/N0 (dB)\")\nax.set_ylabel(\"FER\")\nax.grid(True, which=\"both\", alpha=0.3)\nax.legend()\n");
    writeln!(s, "fig.tight_layout()\nfig.savefig(\"{image}\", dpi=150, metadata={{\"Software\": None}})").unwrap();
    s
}

pub fn emit_plot_script(r: &SimResult, path: &Path) -> Result<()> {
    if r.points.is_empty() {
        return Err(Error::Parameter("no simulation points".into()));
    }
    let image = path.with_extension("png");
    let name = image.file_name().and_then(|s| s.to_str()).unwrap_or("fer.png");
    std::fs::write(path, plot_script(r, name))?;
    Ok(())
}
