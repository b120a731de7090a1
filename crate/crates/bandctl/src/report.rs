//! Output documents: band and chain JSON, envelope CSV, and the
//! benchmark report. JSON key order follows struct declaration order and
//! stays fixed so outputs are byte-stable.

use confband::{Band, BandChain, SeriesMatrix};
use serde::Serialize;
use std::fmt::Write as _;

/// Normalized scores against the full-set envelope, scaled to [0, 100].
pub struct Normalizer {
    total_area: f64,
    total_width: f64,
}

impl Normalizer {
    pub fn new(matrix: &SeriesMatrix) -> Self {
        let full = confband::envelope(matrix, &matrix.all_indices()).expect("full envelope");
        Normalizer {
            total_area: full.area,
            total_width: full.width,
        }
    }

    pub fn area(&self, area: f64) -> f64 {
        if self.total_area > 0.0 {
            100.0 * area / self.total_area
        } else {
            100.0
        }
    }

    pub fn width(&self, width: f64) -> f64 {
        if self.total_width > 0.0 {
            100.0 * width / self.total_width
        } else {
            100.0
        }
    }
}

#[derive(Serialize)]
pub struct BandDocument {
    pub algorithm: String,
    pub k: usize,
    /// True when a derived (median/mean) seed was appended, shifting the
    /// requested size by one.
    pub seed_appended: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub area: f64,
    pub width: f64,
    pub normalized_area: f64,
    pub normalized_width: f64,
}

impl BandDocument {
    pub fn new(
        algorithm: &str,
        band: &Band,
        matrix: &SeriesMatrix,
        seed_appended: bool,
        norm: &Normalizer,
    ) -> Self {
        BandDocument {
            algorithm: algorithm.to_string(),
            k: band.members.len(),
            seed_appended,
            alpha: None,
            objective: None,
            members: band.members.clone(),
            labels: member_labels(matrix, &band.members),
            lower: band.lower.clone(),
            upper: band.upper.clone(),
            area: band.area,
            width: band.width,
            normalized_area: norm.area(band.area),
            normalized_width: norm.width(band.width),
        }
    }
}

#[derive(Serialize)]
pub struct ChainDocument {
    pub algorithm: String,
    pub delta: f64,
    pub regband_calls: usize,
    pub breakpoints: Vec<f64>,
    pub first_inclusion: Vec<usize>,
    pub bands: Vec<BandDocument>,
}

impl ChainDocument {
    pub fn new(chain: &BandChain, matrix: &SeriesMatrix, seed_appended: bool) -> Self {
        let norm = Normalizer::new(matrix);
        ChainDocument {
            algorithm: "enum".to_string(),
            delta: chain.delta,
            regband_calls: chain.regband_calls,
            breakpoints: chain.breakpoints.clone(),
            first_inclusion: chain.first_inclusion.clone(),
            bands: chain
                .bands
                .iter()
                .map(|b| BandDocument::new("regband", b, matrix, seed_appended, &norm))
                .collect(),
        }
    }
}

fn member_labels(matrix: &SeriesMatrix, members: &[usize]) -> Vec<String> {
    members
        .iter()
        .map(|&l| {
            matrix
                .label(l)
                .map(str::to_string)
                .unwrap_or_else(|| format!("series_{}", l))
        })
        .collect()
}

pub fn to_json(doc: &impl Serialize) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("serializable document");
    out.push('\n');
    out
}

/// Envelope curves of a chain as CSV, innermost band first. Nesting keeps
/// the curves non-crossing, so columns read outward from the center.
pub fn envelope_csv(chain: &BandChain, positions: usize) -> String {
    let mut out = String::from("position");
    for level in 1..=chain.bands.len() {
        write!(out, ",lower_{}", level).unwrap();
    }
    for level in 1..=chain.bands.len() {
        write!(out, ",upper_{}", level).unwrap();
    }
    out.push('\n');
    for i in 0..positions {
        write!(out, "{}", i).unwrap();
        for band in &chain.bands {
            write!(out, ",{}", band.lower[i]).unwrap();
        }
        for band in &chain.bands {
            write!(out, ",{}", band.upper[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// One benchmark row per dataset, mirroring normalized-score tables at
/// k = floor(0.9 n) and floor(0.95 n).
pub struct RunReport {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub chain_len: usize,
    /// Size of the first band with more than one member (n if none).
    pub b1: usize,
    pub enum_secs: f64,
    pub findsum_secs: f64,
    pub peel_secs: f64,
    pub findinf_secs: f64,
    /// [k90, k95] per algorithm.
    pub ks: [usize; 2],
    pub findsum_area: [f64; 2],
    pub peel_area: [f64; 2],
    pub findinf_area: [f64; 2],
    pub findsum_width: [f64; 2],
    pub peel_width: [f64; 2],
    pub findinf_width: [f64; 2],
}

pub fn bench_csv(rows: &[RunReport]) -> String {
    let mut out = String::from(
        "dataset,n,m,chain_len,b1,enum_secs,findsum_secs,peel_secs,findinf_secs,\
         k90,findsum_area_90,peel_area_90,findinf_area_90,\
         findsum_width_90,peel_width_90,findinf_width_90,\
         k95,findsum_area_95,peel_area_95,findinf_area_95,\
         findsum_width_95,peel_width_95,findinf_width_95\n",
    );
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},\
             {},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4},\
             {},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
            r.dataset,
            r.n,
            r.m,
            r.chain_len,
            r.b1,
            r.enum_secs,
            r.findsum_secs,
            r.peel_secs,
            r.findinf_secs,
            r.ks[0],
            r.findsum_area[0],
            r.peel_area[0],
            r.findinf_area[0],
            r.findsum_width[0],
            r.peel_width[0],
            r.findinf_width[0],
            r.ks[1],
            r.findsum_area[1],
            r.peel_area[1],
            r.findinf_area[1],
            r.findsum_width[1],
            r.peel_width[1],
            r.findinf_width[1],
        )
        .unwrap();
    }
    out
}

pub fn bench_table(rows: &[RunReport]) -> String {
    let name_w = rows
        .iter()
        .map(|r| r.dataset.len())
        .chain(std::iter::once("dataset".len()))
        .max()
        .unwrap_or(7);
    let mut out = String::new();
    writeln!(out, "normalized envelope area (100 * s1 / s1(T))").unwrap();
    writeln!(
        out,
        "{:<name_w$}  {:>6} {:>6} {:>5} {:>4} {:>9}  {:>8} {:>8} {:>8}  {:>8} {:>8} {:>8}",
        "dataset",
        "n",
        "m",
        "|B|",
        "|B1|",
        "enum(s)",
        "sum@.90",
        "peel@.90",
        "inf@.90",
        "sum@.95",
        "peel@.95",
        "inf@.95",
    )
    .unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<name_w$}  {:>6} {:>6} {:>5} {:>4} {:>9.3}  {:>8.2} {:>8.2} {:>8.2}  {:>8.2} {:>8.2} {:>8.2}",
            r.dataset,
            r.n,
            r.m,
            r.chain_len,
            r.b1,
            r.enum_secs,
            r.findsum_area[0],
            r.peel_area[0],
            r.findinf_area[0],
            r.findsum_area[1],
            r.peel_area[1],
            r.findinf_area[1],
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "normalized envelope width (100 * sinf / sinf(T))").unwrap();
    writeln!(
        out,
        "{:<name_w$}  {:>8} {:>8} {:>8}  {:>8} {:>8} {:>8}",
        "dataset", "sum@.90", "peel@.90", "inf@.90", "sum@.95", "peel@.95", "inf@.95",
    )
    .unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<name_w$}  {:>8.2} {:>8.2} {:>8.2}  {:>8.2} {:>8.2} {:>8.2}",
            r.dataset,
            r.findsum_width[0],
            r.peel_width[0],
            r.findinf_width[0],
            r.findsum_width[1],
            r.peel_width[1],
            r.findinf_width[1],
        )
        .unwrap();
    }
    out
}
