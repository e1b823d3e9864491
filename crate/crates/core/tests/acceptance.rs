//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the terminal.

mod common;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trapset::ets::{
    build_system_matrix, c4_class, min_ets_size, spectral_radius, vn_spectral_radius, C4Class, MinSizeOptions, Regime,
};
use trapset::graph::{enumerate_graphs, is_isomorphic, make_named, EnumConstraints, NamedGraph};
use trapset::qc::builtin;
use trapset::reproduce::{reproduce, ReproOptions, ReproTarget};
use trapset::sim::{channel_llrs, frame_rng, noise_sigma, simulate, Decoder, DecoderConfig, SimResult, StopRule};
use trapset::turan::{brute_force_ex, ex_exact, family_h, family_upper_th2, theta222_upper, Target};
use trapset::Graph;

use common::dense_rho;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn same_classes(a: &[Graph], b: &[Graph]) -> bool {
    a.len() == b.len() && a.iter().all(|g| b.iter().any(|h| is_isomorphic(g, h)))
}

fn criterion1() -> Outcome {
    let cases: [(Target, &[(usize, usize)]); 3] = [
        (Target::G1, &[(5, 7), (6, 10), (7, 14), (8, 18)]),
        (Target::G2, &[(6, 11), (7, 13), (8, 17)]),
        (Target::G3, &[(6, 12), (7, 15), (8, 19)]),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    for (t, rows) in cases {
        for &(n, want) in rows {
            let bf = brute_force_ex(&[t.graph()], n).expect("brute force");
            let exact = ex_exact(t, n).expect("exact");
            let count_ok = bf.cap == want && exact.cap == want;
            let class_ok = match &exact.extremal {
                Some(ext) => same_classes(bf.extremal.as_deref().unwrap_or(&[]), ext),
                None => true,
            };
            if !count_ok || !class_ok {
                pass = false;
                notes.push(format!(
                    "ex({n},{t}) brute {} exact {} want {want}, classes {} vs {}",
                    bf.cap,
                    exact.cap,
                    bf.extremal.as_ref().map_or(0, Vec::len),
                    exact.extremal.as_ref().map_or(0, Vec::len)
                ));
            }
        }
    }
    let detail = if pass { "all 10 values and characterized extremal classes match".into() } else { notes.join("; ") };
    outcome(pass, detail)
}

fn criterion2() -> Outcome {
    let c = EnumConstraints::default().max_degree(3).min_degree(3);
    let gs = enumerate_graphs(6, &c).expect("enumeration");
    let k33 = make_named(NamedGraph::K33).unwrap();
    let h3 = make_named(NamedGraph::H3).unwrap();
    let pass = gs.len() == 2 && same_classes(&gs, &[k33, h3]);
    outcome(pass, format!("{} cubic classes on 6 vertices", gs.len()))
}

fn criterion3() -> Outcome {
    let theta = make_named(NamedGraph::Theta(2, 2, 2)).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 5..=8 {
        let a = brute_force_ex(std::slice::from_ref(&theta), n).unwrap().cap;
        let b = brute_force_ex(&family_h(), n).unwrap().cap;
        let (ta, tb) = (theta222_upper(n).unwrap().floor() as usize, family_upper_th2(n).unwrap().floor() as usize);
        pass &= a <= ta && b <= tb;
        parts.push(format!("n={n}: {a}<={ta}, {b}<={tb}"));
    }
    outcome(pass, parts.join("; "))
}

fn repro(target: ReproTarget, core: bool) -> Outcome {
    let r = reproduce(target, ReproOptions { extended: !core }).expect("reproduce");
    let cells: Vec<_> = r.cells.iter().filter(|c| !core || !c.extended).collect();
    let bad: Vec<String> =
        cells.iter().filter(|c| !c.ok).map(|c| format!("{} want {} got {}", c.label, c.expected, c.actual)).collect();
    let detail = if bad.is_empty() {
        format!("{} cells match", cells.len())
    } else {
        format!("{}/{} cells differ: {}", bad.len(), cells.len(), bad.join("; "))
    };
    outcome(bad.is_empty(), detail)
}

fn extended_only(target: ReproTarget) -> Outcome {
    let r = reproduce(target, ReproOptions { extended: true }).expect("reproduce");
    let cells: Vec<_> = r.cells.iter().filter(|c| c.extended).collect();
    let bad: Vec<String> =
        cells.iter().filter(|c| !c.ok).map(|c| format!("{} want {} got {}", c.label, c.expected, c.actual)).collect();
    let detail = if bad.is_empty() { format!("{} rows match", cells.len()) } else { bad.join("; ") };
    outcome(bad.is_empty(), detail)
}

fn criterion7() -> Outcome {
    let want = [10, 11, 10, 7];
    let mut pass = true;
    let mut parts = Vec::new();
    for (b, &a) in want.iter().enumerate() {
        let m = min_ets_size(3, b, Regime::Girth8NoShared8Cycles, MinSizeOptions::default()).unwrap();
        let ok = m.a_confirmed == Some(a)
            && m.witness.as_ref().is_some_and(|w| {
                w.order() == a && 3 * a - 2 * w.edge_count() == b && c4_class(w) == C4Class::IndC4
            });
        pass &= ok;
        parts.push(format!("b={b}: a={:?}", m.a_confirmed));
    }
    outcome(pass, parts.join(", "))
}

fn criterion8() -> Outcome {
    let t0 = Instant::now();
    let r = reproduce(ReproTarget::GirthClaims, ReproOptions::default()).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let parts: Vec<String> = r.cells.iter().map(|c| format!("{}={}{}", c.label, c.actual, if c.ok { "" } else { " (want 0)" })).collect();
    outcome(r.passed() && secs <= 60.0, format!("{} [{secs:.1}s]", parts.join("; ")))
}

fn criterion9() -> Outcome {
    // every connected graph with minimum degree 2 and at most 12 edges on up to 8 vertices
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for n in 3..=8 {
        for m in n..=12.min(n * (n - 1) / 2) {
            let c = EnumConstraints::default().edges(m).min_degree(2).connected();
            for g in enumerate_graphs(n, &c).unwrap() {
                let it = vn_spectral_radius(&g).unwrap();
                worst = worst.max((it - dense_rho(&g)).abs());
                checked += 1;
            }
        }
    }
    let mut regular_ok = true;
    let reg: Vec<(Graph, f64)> = vec![
        (make_named(NamedGraph::Cycle(5)).unwrap(), 1.0),
        (make_named(NamedGraph::Cycle(9)).unwrap(), 1.0),
        (make_named(NamedGraph::Complete(4)).unwrap(), 2.0),
        (make_named(NamedGraph::K33).unwrap(), 2.0),
        (petersen(), 2.0),
        (make_named(NamedGraph::Complete(5)).unwrap(), 3.0),
    ];
    for (g, want) in &reg {
        let r = spectral_radius(&build_system_matrix(g).unwrap()).unwrap();
        regular_ok &= (r - want).abs() <= 1e-8;
    }
    outcome(
        worst <= 1e-8 && regular_ok,
        format!("{checked} graphs, max |iterative - dense| = {worst:.2e}; regular graphs give d-1: {regular_ok}"),
    )
}

fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &e).unwrap()
}

/// One-sided two-proportion z statistic for p1 > p2.
fn z_decrease(p: &SimResult, i: usize) -> f64 {
    let (a, b) = (&p.points[i], &p.points[i + 1]);
    let (x1, n1, x2, n2) = (a.frame_errors as f64, a.frames as f64, b.frame_errors as f64, b.frames as f64);
    let pooled = (x1 + x2) / (n1 + n2);
    let se = (pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2)).sqrt();
    (x1 / n1 - x2 / n2) / se
}

fn criterion10() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    // decoded frames satisfy H c = 0, checked on the lifted matrix
    let code = builtin("C1").unwrap();
    let h = code.lift().to_dense();
    let t = code.tanner();
    let sigma = noise_sigma(2.0, 0.5);
    let mut dec = Decoder::new(&t, DecoderConfig::default()).unwrap();
    let mut declared = 0;
    let mut bad = 0;
    for f in 0..400 {
        let mut rng = frame_rng(11, 0, f);
        let out = dec.decode(&channel_llrs(&mut rng, t.num_vars(), sigma, 30.0));
        if out.syndrome_ok {
            declared += 1;
            let ok = h.iter().all(|row| row.iter().zip(&out.hard).fold(0u8, |acc, (&x, &c)| acc ^ (x & c)) == 0);
            bad += usize::from(!ok);
        }
    }
    pass &= bad == 0 && declared > 0;
    notes.push(format!("syndrome {declared} decoded/{bad} invalid"));

    // channel calibration over 10^6 samples
    let sigma = noise_sigma(1.5, 3.0 / 7.0);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let llr = channel_llrs(&mut rng, 1_000_000, sigma, 30.0);
    let noise: Vec<f64> = llr.iter().map(|l| l * sigma * sigma / 2.0 - 1.0).collect();
    let mean = noise.iter().sum::<f64>() / noise.len() as f64;
    let var = noise.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (noise.len() - 1) as f64;
    let rel = (var / (sigma * sigma) - 1.0).abs();
    pass &= rel < 0.01;
    notes.push(format!("variance rel. error {rel:.4}"));

    // bit-exact across worker counts
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            simulate(&code, "C1", DecoderConfig::default(), &[2.0, 3.0], StopRule { max_frames: 2000, max_frame_errors: 50 }, 7)
                .unwrap()
        })
    };
    let same = run(1) == run(3);
    pass &= same;
    notes.push(format!("thread-independent {same}"));

    // FER monotone over 2, 3, 4 dB with 100 frame errors per point
    for name in ["C1", "C2"] {
        let r = simulate(
            &builtin(name).unwrap(),
            name,
            DecoderConfig::default(),
            &[2.0, 3.0, 4.0],
            StopRule { max_frames: 10_000_000, max_frame_errors: 100 },
            2024,
        )
        .unwrap();
        let enough = r.points.iter().all(|p| p.frame_errors >= 100);
        let z: Vec<f64> = (0..2).map(|i| z_decrease(&r, i)).collect();
        let ok = enough && z.iter().all(|&z| z > 1.645);
        pass &= ok;
        let fers: Vec<String> = r.points.iter().map(|p| format!("{:.2e}", p.fer())).collect();
        notes.push(format!("{name} FER {} (z {:.1}, {:.1})", fers.join(" > "), z[0], z[1]));
    }
    outcome(pass, notes.join("; "))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 Turan exactness", criterion1),
        ("2 cubic graphs on 6 vertices", criterion2),
        ("3 upper-bound consistency", criterion3),
        ("4 Table I", || repro(ReproTarget::Table1, true)),
        ("5 Table II (a <= 12)", || repro(ReproTarget::Table2, true)),
        ("6 Table III (a <= 9)", || repro(ReproTarget::Table3, true)),
        ("7 minimum sizes, girth 8", criterion7),
        ("8 QC audits", criterion8),
        ("9 spectral-radius oracle", criterion9),
        ("10 FER simulation", criterion10),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t0 = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("criterion {name}: {tag} ({:.1}s) {}", t0.elapsed().as_secs_f64(), o.detail);
    }
    for (name, target) in [("5x Table II a in {13,14}", ReproTarget::Table2), ("6x Table III a = 10", ReproTarget::Table3)] {
        let o = extended_only(target);
        println!("extended {name}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{failed} of 10 criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
