//! Exhaustive scan of small connected graphs against the gap interval: no
//! connected path metric graph has its supremal p-negative type strictly
//! inside (log2(2 + sqrt(3)), 2).

use negtype_core::formulas::gap_interval;
use negtype_core::graph::enumerate_connected_graphs;
use negtype_core::{supremal_pnt, PntConfig, PntStatus};
use rayon::prelude::*;

/// Margin around the interval; values this close to an endpoint count as
/// attaining it rather than violating the gap.
const GAP_EPSILON: f64 = 1e-6;

/// How close a value must come to an endpoint to be counted as touching it.
const ENDPOINT_TOL: f64 = 1e-8;

const HISTOGRAM_BUCKETS: usize = 20;
const HISTOGRAM_MAX: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct Violation {
    pub n: usize,
    pub mask: u64,
    pub edges: Vec<(usize, usize)>,
    pub wp: f64,
}

#[derive(Debug, Clone)]
pub struct GapScanReport {
    pub n_max: usize,
    pub total: usize,
    pub infinite: usize,
    pub at_two_or_more: usize,
    pub left_endpoint_hits: usize,
    pub right_endpoint_hits: usize,
    /// Counts of finite values in [0, 2), bucket width 0.1.
    pub histogram: Vec<usize>,
    pub violations: Vec<Violation>,
}

pub fn run_gap_scan(n_max: usize, grid_step: f64) -> GapScanReport {
    let (gap_lo, gap_hi) = gap_interval();
    let cfg = PntConfig {
        grid_step,
        ..PntConfig::default()
    };
    let mut report = GapScanReport {
        n_max,
        total: 0,
        infinite: 0,
        at_two_or_more: 0,
        left_endpoint_hits: 0,
        right_endpoint_hits: 0,
        histogram: vec![0; HISTOGRAM_BUCKETS],
        violations: Vec::new(),
    };
    type ScanRow = (u64, Vec<(usize, usize)>, Option<f64>);
    for n in 2..=n_max {
        let graphs: Vec<_> = enumerate_connected_graphs(n)
            .expect("n_max is validated against the enumeration cap")
            .collect();
        let values: Vec<ScanRow> = graphs
            .par_iter()
            .map(|g| {
                let space = g.path_metric().expect("enumerated graphs are connected");
                let result = supremal_pnt(&space, &cfg);
                let wp = match result.status {
                    PntStatus::Finite(p) => Some(p),
                    PntStatus::InfiniteBeyond(_) => None,
                };
                let edges = g.edges().iter().map(|e| (e.u, e.v)).collect();
                (g.edge_bitmask().unwrap_or(0), edges, wp)
            })
            .collect();
        for (mask, edges, wp) in values {
            report.total += 1;
            match wp {
                None => report.infinite += 1,
                Some(w) => {
                    if w >= HISTOGRAM_MAX {
                        report.at_two_or_more += 1;
                    } else {
                        let bucket = ((w / HISTOGRAM_MAX * HISTOGRAM_BUCKETS as f64) as usize)
                            .min(HISTOGRAM_BUCKETS - 1);
                        report.histogram[bucket] += 1;
                    }
                    if (w - gap_lo).abs() <= ENDPOINT_TOL {
                        report.left_endpoint_hits += 1;
                    }
                    if (w - gap_hi).abs() <= ENDPOINT_TOL {
                        report.right_endpoint_hits += 1;
                    }
                    if w > gap_lo + GAP_EPSILON && w < gap_hi - GAP_EPSILON {
                        report.violations.push(Violation {
                            n,
                            mask,
                            edges,
                            wp: w,
                        });
                    }
                }
            }
        }
    }
    report.violations.sort_by_key(|v| (v.n, v.mask));
    report
}

pub fn print_report(report: &GapScanReport) {
    let (gap_lo, gap_hi) = gap_interval();
    println!(
        "scanned {} labeled connected graphs on 2..={} vertices",
        report.total, report.n_max
    );
    println!("histogram of supremal p-negative type values:");
    let max_count = report
        .histogram
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(report.at_two_or_more)
        .max(report.infinite)
        .max(1);
    let bar = |count: usize| "#".repeat((count * 50).div_ceil(max_count).min(50));
    for (i, count) in report.histogram.iter().enumerate() {
        if *count == 0 {
            continue;
        }
        let lo = i as f64 * HISTOGRAM_MAX / HISTOGRAM_BUCKETS as f64;
        let hi = lo + HISTOGRAM_MAX / HISTOGRAM_BUCKETS as f64;
        println!("  [{lo:.2}, {hi:.2})  {count:6}  {}", bar(*count));
    }
    if report.at_two_or_more > 0 {
        println!(
            "  [2.00, ...)  {:6}  {}",
            report.at_two_or_more,
            bar(report.at_two_or_more)
        );
    }
    if report.infinite > 0 {
        println!(
            "  no failure up to p_max  {:6}  {}",
            report.infinite,
            bar(report.infinite)
        );
    }
    println!(
        "endpoint attainment: {} graphs at log2(2+sqrt3) = {gap_lo:.8}, {} graphs at {gap_hi}",
        report.left_endpoint_hits, report.right_endpoint_hits
    );
    if report.violations.is_empty() {
        println!("0 violations of the gap ({gap_lo:.8}, {gap_hi})");
    } else {
        println!("{} GAP VIOLATIONS:", report.violations.len());
        for v in &report.violations {
            println!("  n = {}, wp = {:.10}, edges = {:?}", v.n, v.wp, v.edges);
        }
    }
}
