use jigsaw_core::generators::{erdos_renyi, power_law_people, CoupledPairs};
use jigsaw_core::stats::Moments;
use jigsaw_core::Seed;

#[test]
fn er_edge_counts_follow_binomial() {
    let (n, p) = (200usize, 0.05);
    let pairs = (n * (n - 1) / 2) as f64;
    let mut counts = Moments::default();
    for t in 0..400 {
        counts.push(erdos_renyi(n, p, Seed::new(9, 0).with_stream(t)).unwrap().edge_count() as f64);
    }
    let mean = counts.mean().unwrap();
    let expected_sd = (pairs * p * (1.0 - p)).sqrt();
    // standard error of the mean is expected_sd / 20
    assert!((mean - pairs * p).abs() < 4.0 * expected_sd / 20.0, "mean {mean}");
    let sd = counts.sd().unwrap();
    assert!((sd / expected_sd - 1.0).abs() < 0.15, "sd {sd} vs {expected_sd}");
}

#[test]
fn er_degrees_are_uniform_over_vertices() {
    // geometric skipping must not favor early or late vertices
    let (n, p) = (100usize, 0.1);
    let mut first = 0usize;
    let mut last = 0usize;
    for t in 0..300 {
        let g = erdos_renyi(n, p, Seed::new(2, 0).with_stream(t)).unwrap();
        first += (0..10).map(|v| g.degree(v)).sum::<usize>();
        last += (90..100).map(|v| g.degree(v)).sum::<usize>();
    }
    let expected = 300.0 * 10.0 * 99.0 * p;
    for s in [first, last] {
        assert!((s as f64 / expected - 1.0).abs() < 0.05, "{s} vs {expected}");
    }
}

#[test]
fn coupled_thresholds_are_er_marginals() {
    let (n, cap) = (150usize, 0.2);
    let pairs = (n * (n - 1) / 2) as f64;
    for p in [0.02, 0.1, 0.2] {
        let mut m = Moments::default();
        for t in 0..200 {
            let c = CoupledPairs::sample(n, cap, Seed::new(4, 0).with_stream(t)).unwrap();
            m.push(c.graph_at(p).unwrap().edge_count() as f64);
        }
        let se = (pairs * p * (1.0 - p)).sqrt() / (200f64).sqrt();
        assert!((m.mean().unwrap() - pairs * p).abs() < 4.0 * se);
    }
}

/// Least-squares slope of log CCDF against log k over integer k in `range`.
fn ccdf_slope(degrees: &[usize], range: std::ops::RangeInclusive<usize>) -> f64 {
    let total = degrees.len() as f64;
    let mut pts = Vec::new();
    for k in range {
        let tail = degrees.iter().filter(|&&d| d >= k).count();
        if tail > 0 {
            pts.push(((k as f64).ln(), (tail as f64 / total).ln()));
        }
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn power_law_tail_and_max_degree() {
    let (n, gamma) = (10_000usize, 2.5);
    let g = power_law_people(n, gamma, Seed::new(1, 0)).unwrap();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let slope = ccdf_slope(&degrees, 1..=100);
    assert!((slope - (1.0 - gamma)).abs() < 0.2, "slope {slope}");
    let cap = (n as f64).powf(1.0 / (gamma - 1.0)) * (n as f64).ln();
    assert!((g.max_degree() as f64) < cap);
    assert!(g.edges().all(|(u, v)| u < v));
}
