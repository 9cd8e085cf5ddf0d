//! Parallel Monte Carlo estimates of the solve probability.
//!
//! Trial `t` of any experiment draws its people graph from
//! `seed.with_stream(t)`, and per-trial results are collected in trial order
//! before aggregation. Output therefore does not depend on the worker count
//! or on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use jigsaw_core::generators::{erdos_renyi, power_law_people, CoupledPairs};
use jigsaw_core::stats::{wilson_interval, Moments, Z_95};
use jigsaw_core::theory::upper_bound_pc;
use jigsaw_core::{Graph, JigsawInstance, MergeRule, Seed};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// How people graphs are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PeopleModel {
    ErdosRenyi { p: f64 },
    PowerLaw { gamma: f64 },
}

/// How the grid points of a sweep share randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coupling {
    /// One uniform per vertex pair and trial, thresholded at every grid `p`:
    /// each trial's people graphs are nested and its solve indicator is
    /// non-decreasing in `p`.
    #[default]
    Shared,
    /// Fresh randomness for every grid point.
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    pub solved: bool,
    pub rounds: usize,
    pub people_edges: usize,
}

/// Aggregate of the trials at one edge probability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    /// Edge probability; for power-law people graphs, the mean edge density.
    pub p: f64,
    pub trials: usize,
    pub solves: usize,
    /// Solve fraction.
    pub fraction: f64,
    /// 95% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_rounds_solved: Option<f64>,
    pub mean_rounds_unsolved: Option<f64>,
    pub mean_rounds: f64,
    pub sd_rounds: f64,
}

impl SweepPoint {
    pub fn from_records(p: f64, records: &[TrialRecord]) -> Self {
        let trials = records.len();
        let solves = records.iter().filter(|r| r.solved).count();
        let (ci_low, ci_high) = wilson_interval(solves as u64, trials as u64, Z_95);
        let mut all = Moments::default();
        let mut solved = Moments::default();
        let mut unsolved = Moments::default();
        for r in records {
            let x = r.rounds as f64;
            all.push(x);
            if r.solved {
                solved.push(x);
            } else {
                unsolved.push(x);
            }
        }
        SweepPoint {
            p,
            trials,
            solves,
            fraction: if trials == 0 { 0.0 } else { solves as f64 / trials as f64 },
            ci_low,
            ci_high,
            mean_rounds_solved: solved.mean(),
            mean_rounds_unsolved: unsolved.mean(),
            mean_rounds: all.mean().unwrap_or(0.0),
            sd_rounds: all.sd().unwrap_or(0.0),
        }
    }
}

/// Round counts conditioned on the outcome at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepStats {
    pub p: f64,
    pub solved: usize,
    pub unsolved: usize,
    pub mean_rounds_solved: Option<f64>,
    pub sd_rounds_solved: Option<f64>,
    pub mean_rounds_unsolved: Option<f64>,
    pub sd_rounds_unsolved: Option<f64>,
}

impl StepStats {
    pub fn from_records(p: f64, records: &[TrialRecord]) -> Self {
        let mut solved = Moments::default();
        let mut unsolved = Moments::default();
        for r in records {
            if r.solved {
                solved.push(r.rounds as f64);
            } else {
                unsolved.push(r.rounds as f64);
            }
        }
        StepStats {
            p,
            solved: solved.count() as usize,
            unsolved: unsolved.count() as usize,
            mean_rounds_solved: solved.mean(),
            sd_rounds_solved: solved.sd(),
            mean_rounds_unsolved: unsolved.mean(),
            sd_rounds_unsolved: unsolved.sd(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PcStrategy {
    /// Sweep `points` equally spaced values in `[0, p_max]` with shared
    /// randomness, then interpolate between the two points whose solve
    /// fractions straddle 1/2.
    Grid { points: usize, p_max: f64 },
    /// Halve the bracket `[0, 1]` until it is narrower than `tolerance`, then
    /// interpolate between its ends. Every step reuses the same trial seeds.
    Bisect { tolerance: f64, max_steps: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcEstimate {
    pub strategy: &'static str,
    pub p_low: f64,
    pub p_high: f64,
    pub fraction_low: f64,
    pub fraction_high: f64,
    /// Linear interpolation of the solve fraction to 1/2 on `[p_low, p_high]`.
    pub p_c_hat: f64,
    pub trials_per_point: usize,
    pub master_seed: u64,
    /// Every evaluated point, sorted by `p`.
    pub points: Vec<SweepPoint>,
}

/// `points` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        k => (0..k)
            .map(|i| {
                if i == k - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (k - 1) as f64
                }
            })
            .collect(),
    }
}

/// The 21-point grid on `[0, 1.05 π²/(6 ln n)]`, capped at 1.
pub fn default_grid(n: usize) -> Result<Vec<f64>> {
    let top = (1.05 * upper_bound_pc(n as u64)?).min(1.0);
    Ok(linspace(0.0, top, 21))
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(jigsaw_core::Error::InvalidParameter("trials must be at least 1".into()).into());
    }
    Ok(())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(jigsaw_core::Error::InvalidParameter("p grid is empty".into()).into());
    }
    if let Some(p) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(jigsaw_core::Error::InvalidParameter(format!("grid value {p} is not in [0, 1]")).into());
    }
    Ok(())
}

fn check_puzzle(puzzle: &Graph) -> Result<()> {
    // validates size and connectivity once, up front
    JigsawInstance::new(Graph::empty(puzzle.vertex_count()), puzzle.clone())?;
    Ok(())
}

fn run_trial(people: Graph, puzzle: &Graph, rule: MergeRule) -> TrialRecord {
    let people_edges = people.edge_count();
    let inst = JigsawInstance::new(people, puzzle.clone()).expect("sizes checked up front");
    let out = inst.run(rule);
    TrialRecord {
        solved: out.solved,
        rounds: out.rounds.expect("synchronous engine counts rounds"),
        people_edges,
    }
}

type Progress = Arc<dyn Fn(usize, usize) + Send + Sync>;

/// Runs trials on a fixed-size thread pool.
pub struct Harness {
    pool: rayon::ThreadPool,
    progress: Option<Progress>,
}

impl Harness {
    /// `workers = 0` uses the available parallelism.
    pub fn new(workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Output(format!("cannot start worker pool: {e}")))?;
        Ok(Harness { pool, progress: None })
    }

    /// Calls `f(done, total)` after every finished trial of a batch.
    pub fn with_progress(mut self, f: impl Fn(usize, usize) + Send + Sync + 'static) -> Self {
        self.progress = Some(Arc::new(f));
        self
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// `f(t)` for every trial, returned in trial order.
    fn map_trials<T, F>(&self, trials: usize, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64) -> Result<T> + Sync,
    {
        let done = AtomicUsize::new(0);
        let progress = self.progress.as_deref();
        self.pool.install(|| {
            (0..trials as u64)
                .into_par_iter()
                .map(|t| {
                    let out = f(t);
                    if let Some(report) = progress {
                        report(done.fetch_add(1, Ordering::Relaxed) + 1, trials);
                    }
                    out
                })
                .collect()
        })
    }

    /// Estimates the solve probability with `trials` independent people
    /// graphs from `model`.
    pub fn estimate_solve_prob(
        &self,
        puzzle: &Graph,
        model: PeopleModel,
        trials: usize,
        seed: Seed,
        rule: MergeRule,
    ) -> Result<SweepPoint> {
        check_trials(trials)?;
        check_puzzle(puzzle)?;
        let n = puzzle.vertex_count();
        if let PeopleModel::ErdosRenyi { p } = model {
            check_grid(&[p])?;
        }
        let records = self.map_trials(trials, |t| {
            let s = seed.with_stream(t);
            let people = match model {
                PeopleModel::ErdosRenyi { p } => erdos_renyi(n, p, s)?,
                PeopleModel::PowerLaw { gamma } => power_law_people(n, gamma, s)?,
            };
            Ok(run_trial(people, puzzle, rule))
        })?;
        let p = match model {
            PeopleModel::ErdosRenyi { p } => p,
            PeopleModel::PowerLaw { .. } => {
                let pairs = (n * n.saturating_sub(1) / 2).max(1) as f64;
                records.iter().map(|r| r.people_edges as f64).sum::<f64>() / (trials as f64 * pairs)
            }
        };
        Ok(SweepPoint::from_records(p, &records))
    }

    /// Per-trial records for every grid point: `result[i][t]` is trial `t`
    /// at `grid[i]`.
    pub fn sweep_records(
        &self,
        puzzle: &Graph,
        grid: &[f64],
        trials: usize,
        seed: Seed,
        rule: MergeRule,
        coupling: Coupling,
    ) -> Result<Vec<Vec<TrialRecord>>> {
        check_trials(trials)?;
        check_grid(grid)?;
        check_puzzle(puzzle)?;
        let n = puzzle.vertex_count();
        let cap = grid.iter().copied().fold(0.0, f64::max);
        let per_trial = self.map_trials(trials, |t| {
            let s = seed.with_stream(t);
            match coupling {
                Coupling::Shared => {
                    let pairs = CoupledPairs::sample(n, cap, s)?;
                    grid.iter()
                        .map(|&p| Ok(run_trial(pairs.graph_at(p)?, puzzle, rule)))
                        .collect::<Result<Vec<_>>>()
                }
                Coupling::Independent => grid
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| {
                        let people = erdos_renyi(n, p, seed.derive(i as u64).with_stream(t))?;
                        Ok(run_trial(people, puzzle, rule))
                    })
                    .collect(),
            }
        })?;
        Ok((0..grid.len())
            .map(|i| per_trial.iter().map(|row| row[i]).collect())
            .collect())
    }

    /// One [`SweepPoint`] per grid value, in grid order.
    pub fn sweep(
        &self,
        puzzle: &Graph,
        grid: &[f64],
        trials: usize,
        seed: Seed,
        rule: MergeRule,
        coupling: Coupling,
    ) -> Result<Vec<SweepPoint>> {
        let records = self.sweep_records(puzzle, grid, trials, seed, rule, coupling)?;
        Ok(grid
            .iter()
            .zip(&records)
            .map(|(&p, r)| SweepPoint::from_records(p, r))
            .collect())
    }

    /// Mean and standard deviation of the round count, conditioned on
    /// solving and on not solving, over a shared-randomness sweep.
    pub fn step_statistics(
        &self,
        puzzle: &Graph,
        grid: &[f64],
        trials: usize,
        seed: Seed,
        rule: MergeRule,
    ) -> Result<Vec<StepStats>> {
        let records = self.sweep_records(puzzle, grid, trials, seed, rule, Coupling::Shared)?;
        Ok(grid
            .iter()
            .zip(&records)
            .map(|(&p, r)| StepStats::from_records(p, r))
            .collect())
    }

    /// Estimates the `p` at which the solve probability crosses 1/2.
    pub fn estimate_pc(
        &self,
        puzzle: &Graph,
        trials: usize,
        strategy: PcStrategy,
        seed: Seed,
        rule: MergeRule,
    ) -> Result<PcEstimate> {
        match strategy {
            PcStrategy::Grid { points, p_max } => {
                if points < 2 {
                    return Err(jigsaw_core::Error::InvalidParameter("grid needs at least 2 points".into()).into());
                }
                let grid = linspace(0.0, p_max, points);
                let swept = self.sweep(puzzle, &grid, trials, seed, rule, Coupling::Shared)?;
                let hi = swept
                    .iter()
                    .position(|pt| pt.fraction >= 0.5)
                    .ok_or_else(|| Error::NoBracket(format!("every fraction on [0, {p_max}] is below 1/2")))?;
                if hi == 0 {
                    return Err(Error::NoBracket("the solve fraction is already 1/2 at p = 0".into()));
                }
                let (lo_pt, hi_pt) = (&swept[hi - 1], &swept[hi]);
                Ok(PcEstimate {
                    strategy: "grid",
                    p_low: lo_pt.p,
                    p_high: hi_pt.p,
                    fraction_low: lo_pt.fraction,
                    fraction_high: hi_pt.fraction,
                    p_c_hat: interpolate(lo_pt.p, lo_pt.fraction, hi_pt.p, hi_pt.fraction),
                    trials_per_point: trials,
                    master_seed: seed.master,
                    points: swept,
                })
            }
            PcStrategy::Bisect { tolerance, max_steps } => {
                if !(tolerance > 0.0) {
                    return Err(jigsaw_core::Error::InvalidParameter("tolerance must be positive".into()).into());
                }
                check_puzzle(puzzle)?;
                if puzzle.vertex_count() < 2 {
                    return Err(Error::NoBracket("a one-vertex puzzle is solved at every p".into()));
                }
                // exact at the ends for a connected puzzle on n >= 2 vertices:
                // nothing merges without people edges, and a complete people
                // graph solves in one round
                let (mut lo, mut f_lo) = (0.0, 0.0);
                let (mut hi, mut f_hi) = (1.0, 1.0);
                let mut points = Vec::new();
                for _ in 0..max_steps {
                    if hi - lo < tolerance {
                        break;
                    }
                    let mid = 0.5 * (lo + hi);
                    let pt = self.estimate_solve_prob(puzzle, PeopleModel::ErdosRenyi { p: mid }, trials, seed, rule)?;
                    if pt.fraction < 0.5 {
                        (lo, f_lo) = (mid, pt.fraction);
                    } else {
                        (hi, f_hi) = (mid, pt.fraction);
                    }
                    points.push(pt);
                }
                points.sort_by(|a, b| a.p.total_cmp(&b.p));
                Ok(PcEstimate {
                    strategy: "bisect",
                    p_low: lo,
                    p_high: hi,
                    fraction_low: f_lo,
                    fraction_high: f_hi,
                    p_c_hat: interpolate(lo, f_lo, hi, f_hi),
                    trials_per_point: trials,
                    master_seed: seed.master,
                    points,
                })
            }
        }
    }

    /// Solve fraction with power-law people graphs against a bounded-degree
    /// puzzle. Puzzles whose maximum degree exceeds `max_degree_cap` are
    /// refused: the vanishing solve probability is only expected when the
    /// puzzle degree stays bounded as `n` grows.
    pub fn power_law_failure_check(
        &self,
        gamma: f64,
        puzzle: &Graph,
        trials: usize,
        seed: Seed,
        max_degree_cap: usize,
    ) -> Result<SweepPoint> {
        let d = puzzle.max_degree();
        if d > max_degree_cap {
            return Err(Error::Refused(format!(
                "puzzle maximum degree {d} exceeds the bounded-degree cap {max_degree_cap}"
            )));
        }
        self.estimate_solve_prob(puzzle, PeopleModel::PowerLaw { gamma }, trials, seed, MergeRule::Standard)
    }
}

fn interpolate(p_lo: f64, f_lo: f64, p_hi: f64, f_hi: f64) -> f64 {
    if f_hi <= f_lo {
        return p_hi;
    }
    p_lo + (0.5 - f_lo) / (f_hi - f_lo) * (p_hi - p_lo)
}
