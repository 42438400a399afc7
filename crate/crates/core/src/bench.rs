//! Scaling benchmark: time the verifier on random hulls of growing size.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generator::random_hull3;
use crate::verifier::{check_convexity_parallel, Mode, ModeKind, Report, Verdict};

pub const DEFAULT_SIZES: [usize; 4] = [100, 1_000, 10_000, 100_000];

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub mode: Mode,
    pub jobs: usize,
    pub seed: u64,
    /// Timed runs per size; the minimum is reported.
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { sizes: DEFAULT_SIZES.to_vec(), mode: Mode::exact(0), jobs: 1, seed: 0, repeats: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub num_points: usize,
    pub f0: usize,
    pub f_sub: usize,
    pub f_ridge: usize,
    pub f_facet: usize,
    /// `f_{n-3,n-2}`: incidences between (n-3)- and (n-2)-faces.
    pub incidences: usize,
    pub elapsed_ms: f64,
    pub mode: &'static str,
    pub jobs: usize,
    /// Serial time over this row's time; present when `jobs > 1`.
    pub speedup: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `log elapsed` against `log incidences`.
    pub slope: f64,
}

fn timed(surface: &crate::complex::PlSurface, mode: Mode, jobs: usize, repeats: usize) -> (Report, f64) {
    let mut best = f64::INFINITY;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let r = check_convexity_parallel(surface, mode, jobs);
        best = best.min(r.elapsed.as_secs_f64() * 1e3);
        last = Some(r);
    }
    (last.expect("at least one run"), best)
}

pub fn run_bench(cfg: &BenchConfig) -> BenchResult {
    run_bench_with(cfg, |_| {})
}

/// As [`run_bench`], calling `progress` after each row.
pub fn run_bench_with(cfg: &BenchConfig, mut progress: impl FnMut(&BenchRow)) -> BenchResult {
    let mut rows = Vec::new();
    for (i, &m) in cfg.sizes.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        let surface = random_hull3(m, &mut rng).expect("random hull sample");
        let (report, ms) = timed(&surface, cfg.mode, cfg.jobs, cfg.repeats);
        let speedup = (cfg.jobs > 1).then(|| {
            let (_, serial) = timed(&surface, cfg.mode, 1, cfg.repeats);
            serial / ms
        });
        let c = report.counts;
        let row = BenchRow {
            num_points: m,
            f0: c.f0,
            f_sub: c.f_sub,
            f_ridge: c.f_ridge,
            f_facet: c.f_facet,
            incidences: c.f_sub_ridge,
            elapsed_ms: ms,
            mode: match cfg.mode.kind {
                ModeKind::Exact => "exact",
                ModeKind::Float => "float",
            },
            jobs: cfg.jobs,
            speedup,
            verdict: report.verdict,
        };
        progress(&row);
        rows.push(row);
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.incidences as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.elapsed_ms).collect();
    BenchResult { slope: loglog_slope(&xs, &ys), rows }
}

/// Least-squares slope of `ln y` on `ln x`. NaN with fewer than two points.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.max(1e-9).ln())).collect();
    let k = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub const CSV_HEADER: &str = "num_points,f0,f_sub,f_ridge,f_facet,incidences,elapsed_ms,mode,jobs,speedup";

impl BenchRow {
    pub fn csv(&self) -> String {
        let speedup = self.speedup.map(|s| format!("{s:.3}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{:.3},{},{},{}",
            self.num_points,
            self.f0,
            self.f_sub,
            self.f_ridge,
            self.f_facet,
            self.incidences,
            self.elapsed_ms,
            self.mode,
            self.jobs,
            speedup
        )
    }
}

impl BenchResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv());
            out.push('\n');
        }
        writeln!(out, "# slope,{:.4}", self.slope).expect("string write");
        out
    }
}
