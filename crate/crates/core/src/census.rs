//! Census of VN graphs: enumeration per (a, b) cell, classification and
//! spectral-radius statistics.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ets::{c4_class, chord_class, vn_spectral_radius, C4Class, ChordClass, EtsParams, VnGraph};
use crate::graph::{enumerate_graphs, EnumConstraints, Graph};
use crate::turan::Target;

/// Conditions a VN graph must meet to be counted.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VnConvention {
    pub connected: bool,
    pub min_degree: usize,
}

impl Default for VnConvention {
    /// Connected with minimum degree 2; this reproduces the published counts.
    fn default() -> Self {
        VnConvention { connected: true, min_degree: 2 }
    }
}

pub fn default_ceiling(gamma: usize) -> usize {
    if gamma <= 3 {
        14
    } else {
        10
    }
}

/// All VN graphs for (a, b, γ) at the given Tanner girth, canonically sorted.
/// Cells that cannot be realized (parity, too many edges) give an empty list.
pub fn enumerate_vn(a: usize, b: usize, gamma: usize, tanner_girth: usize) -> Result<Vec<VnGraph>> {
    enumerate_vn_with(a, b, gamma, tanner_girth, VnConvention::default(), default_ceiling(gamma))
}

pub fn enumerate_vn_with(
    a: usize,
    b: usize,
    gamma: usize,
    tanner_girth: usize,
    conv: VnConvention,
    ceiling: usize,
) -> Result<Vec<VnGraph>> {
    if a > ceiling {
        return Err(Error::ResourceCeiling(format!("a = {a} exceeds the census ceiling {ceiling}")));
    }
    let Ok(params) = EtsParams::new(a, b, gamma, tanner_girth) else {
        return Ok(Vec::new());
    };
    let e = params.vn_edge_count();
    if e > a * a.saturating_sub(1) / 2 {
        return Ok(Vec::new());
    }
    let mut c = EnumConstraints::default()
        .edges(e)
        .max_degree(gamma)
        .min_degree(conv.min_degree)
        .girth_at_least(params.vn_girth())
        .ceiling(ceiling);
    c.connected = conv.connected;
    let graphs = enumerate_graphs(a, &c)?;
    graphs.into_iter().map(|g| VnGraph::new(g, params)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    C4Sharing,
    Chord(Target),
}

impl Criterion {
    /// Labels of the (free, containing) sets.
    pub fn labels(self) -> (String, String) {
        match self {
            Criterion::C4Sharing => ("ind_C4".into(), "int_C4".into()),
            Criterion::Chord(t) => (format!("F_{t}"), format!("U_{t}")),
        }
    }

    pub fn is_free(self, g: &Graph) -> bool {
        match self {
            Criterion::C4Sharing => c4_class(g) == C4Class::IndC4,
            Criterion::Chord(t) => chord_class(g, t) == ChordClass::Free,
        }
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c4" | "c4_sharing" | "c4-sharing" => Ok(Criterion::C4Sharing),
            other => Ok(Criterion::Chord(other.parse()?)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusSpec {
    pub gamma: usize,
    pub a_values: Vec<usize>,
    pub b_values: Vec<usize>,
    pub tanner_girth: usize,
    pub criteria: Vec<Criterion>,
    pub convention: VnConvention,
    pub ceiling: usize,
}

impl CensusSpec {
    pub fn new(gamma: usize, tanner_girth: usize, criteria: Vec<Criterion>) -> Self {
        CensusSpec {
            gamma,
            a_values: Vec::new(),
            b_values: Vec::new(),
            tanner_girth,
            criteria,
            convention: VnConvention::default(),
            ceiling: default_ceiling(gamma),
        }
    }

    /// Cells (a, b) with matching parity and b ≤ aγ, in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in &self.a_values {
            for &b in &self.b_values {
                if b <= a * self.gamma && (a * self.gamma - b) % 2 == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub set: String,
    pub a: usize,
    pub b: usize,
    pub gamma: usize,
    pub count: usize,
    pub rho_mean: f64,
    pub rho_median: f64,
}

impl CensusRow {
    pub fn label(&self) -> String {
        format!("{}({},{})", self.set, self.a, self.b)
    }
}

/// Count, mean and median (central-pair average for even counts).
pub fn stats(values: &[f64]) -> (usize, f64, f64) {
    if values.is_empty() {
        return (0, f64::NAN, f64::NAN);
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let mean = v.iter().sum::<f64>() / n as f64;
    let median = if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) };
    (n, mean, median)
}

/// VN graphs of one cell with their spectral radii, canonically ordered.
pub fn cell_spectra(spec: &CensusSpec, a: usize, b: usize) -> Result<Vec<(Graph, f64)>> {
    let vns = enumerate_vn_with(a, b, spec.gamma, spec.tanner_girth, spec.convention, spec.ceiling)?;
    vns.into_par_iter()
        .map(|vn| vn_spectral_radius(&vn.graph).map(|r| (vn.graph, r)))
        .collect()
}

/// Two rows per (cell, criterion): the free set, then the containing set.
pub fn census(spec: &CensusSpec) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for (a, b) in spec.cells() {
        let spectra = cell_spectra(spec, a, b)?;
        for &crit in &spec.criteria {
            let free: Vec<bool> = spectra.par_iter().map(|(g, _)| crit.is_free(g)).collect();
            let (lf, lc) = crit.labels();
            for (label, want) in [(lf, true), (lc, false)] {
                let vals: Vec<f64> = spectra
                    .iter()
                    .zip(&free)
                    .filter(|(_, &f)| f == want)
                    .map(|((_, r), _)| *r)
                    .collect();
                let (count, rho_mean, rho_median) = stats(&vals);
                rows.push(CensusRow { set: label, a, b, gamma: spec.gamma, count, rho_mean, rho_median });
            }
        }
    }
    Ok(rows)
}

pub const CENSUS_HEADER: &str = "set,a,b,gamma,count,rho_mean,rho_median";

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut s = String::from(CENSUS_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{:.5},{:.5}\n",
            r.set, r.a, r.b, r.gamma, r.count, r.rho_mean, r.rho_median
        ));
    }
    s
}

pub fn emit_census_csv(rows: &[CensusRow], path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(census_csv(rows).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_cell() {
        let v = enumerate_vn(3, 3, 3, 6).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].graph.edge_count(), 3);
    }

    #[test]
    fn impossible_cells_are_empty() {
        assert!(enumerate_vn(3, 2, 3, 8).unwrap().is_empty());
        assert!(enumerate_vn(3, 20, 3, 8).unwrap().is_empty());
        assert!(matches!(enumerate_vn(15, 1, 3, 8), Err(Error::ResourceCeiling(_))));
    }

    #[test]
    fn median_convention() {
        assert_eq!(stats(&[3.0, 1.0, 2.0]), (3, 2.0, 2.0));
        assert_eq!(stats(&[4.0, 1.0, 2.0, 3.0]), (4, 2.5, 2.5));
        assert_eq!(stats(&[]).0, 0);
    }

    #[test]
    fn csv_layout() {
        let mut spec = CensusSpec::new(3, 8, vec![Criterion::C4Sharing]);
        assert_eq!(census_csv(&census(&spec).unwrap()), format!("{CENSUS_HEADER}\n"));
        spec.a_values = vec![6];
        spec.b_values = vec![0];
        let rows = census(&spec).unwrap();
        // cubic girth-4 graphs on 6 vertices: K33 only, which is int_C4
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].count, rows[1].count), (0, 1));
        assert!((rows[1].rho_mean - 2.0).abs() < 1e-10);
        let csv = census_csv(&rows);
        assert!(csv.lines().nth(2).unwrap().starts_with("int_C4,6,0,3,1,2.00000,2.00000"));
    }
}
