//! The full pipeline: linear fast path, then for each rank the incidence
//! systems of every row normalization, solved, certified and filtered.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{RatInterval, UniPoly};
use crate::certify::{certify_point, certify_rational, Certificate};
use crate::incidence::{build_incidence_system, enumerate_normalizations, RowSubset};
use crate::pencil::LinearPencil;
use crate::realroots::{real_points, AlgebraicReal, RurPoint};
use crate::rng::{derive_seed, entropy_seed};
use crate::zerodim::{reduce_to_dimension_zero, rur_from_basis, Rur};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Return every certified point instead of stopping at the first.
    pub all: bool,
    pub rnk: bool,
    pub par: bool,
    pub deg: bool,
    /// Ranks to try; `None` means `0..m`.
    pub ranks: Option<Vec<usize>>,
    pub digits: u32,
    pub seed: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { all: false, rnk: false, par: false, deg: false, ranks: None, digits: 10, seed: None, threads: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("rank {r} is outside 0..{m}")]
    InvalidRank { r: usize, m: usize },
    #[error("digits must be positive")]
    InvalidDigits,
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

/// A certified point. Optional fields follow the `rnk`, `deg` and `par`
/// options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub boxes: Vec<RatInterval>,
    pub rank: Option<usize>,
    pub deg: Option<usize>,
    pub rur: Option<Rur>,
}

/// A normalization whose solving failed; the run went on without it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFailure {
    pub rank: usize,
    pub subset: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub records: Vec<SolutionRecord>,
    pub seed: u64,
    pub ranks: Vec<usize>,
    pub digits: u32,
    pub failures: Vec<SystemFailure>,
    pub systems_solved: usize,
}

impl SolveOutcome {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// A certified point before option filtering.
#[derive(Clone, Debug)]
pub struct Hit {
    pub point: RurPoint,
    pub cert: Certificate,
    pub rur: Rur,
}

impl Hit {
    fn record(&self, opts: &SolveOptions) -> SolutionRecord {
        SolutionRecord {
            boxes: self.point.boxes(opts.digits),
            rank: opts.rnk.then_some(self.cert.rank),
            deg: opts.deg.then(|| self.rur.degree()),
            rur: opts.par.then(|| self.rur.clone()),
        }
    }
}

enum TaskResult {
    Skipped,
    Done(Vec<Hit>),
    Failed(SystemFailure),
}

fn normalized_ranks(p: &LinearPencil, opts: &SolveOptions) -> Result<Vec<usize>, SolveError> {
    let m = p.m();
    let mut ranks = opts.ranks.clone().unwrap_or_else(|| (0..m).collect());
    ranks.sort_unstable();
    ranks.dedup();
    if let Some(&r) = ranks.iter().find(|&&r| r >= m) {
        return Err(SolveError::InvalidRank { r, m });
    }
    Ok(ranks)
}

pub fn solve_lmi(p: &LinearPencil, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let ranks = normalized_ranks(p, opts)?;
    run_ranks(p, opts, ranks)
}

/// Points from rank-`r` incidence systems only; their certified rank may
/// be smaller than `r`.
pub fn solve_rank_restricted(p: &LinearPencil, r: usize, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if r >= p.m() {
        return Err(SolveError::InvalidRank { r, m: p.m() });
    }
    run_ranks(p, opts, vec![r])
}

fn run_ranks(p: &LinearPencil, opts: &SolveOptions, ranks: Vec<usize>) -> Result<SolveOutcome, SolveError> {
    if opts.digits == 0 {
        return Err(SolveError::InvalidDigits);
    }
    let seed = opts.seed.unwrap_or_else(entropy_seed);
    let run = || collect_hits(p, opts, &ranks, seed);
    let (hits, failures, systems_solved) = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| SolveError::ThreadPool(e.to_string()))?.install(run),
        None => run(),
    };
    let records = hits.iter().map(|h| h.record(opts)).collect();
    Ok(SolveOutcome { records, seed, ranks, digits: opts.digits, failures, systems_solved })
}

/// Certified points in output order, plus per-system failures.
pub fn collect_hits(p: &LinearPencil, opts: &SolveOptions, ranks: &[usize], seed: u64) -> (Vec<Hit>, Vec<SystemFailure>, usize) {
    let mut hits: Vec<Hit> = Vec::new();
    let mut failures = Vec::new();
    let mut solved = 0;
    for &r in ranks {
        if r == 0 {
            if let Some(x) = p.solve_linear_zero() {
                log::info!("linear system A(x) = 0 is consistent");
                return (vec![rational_hit(p, &x)], failures, solved);
            }
            continue;
        }
        let subsets = enumerate_normalizations(p.m(), r).expect("rank checked");
        let stop_at = AtomicUsize::new(usize::MAX);
        let results: Vec<TaskResult> = subsets
            .par_iter()
            .enumerate()
            .map(|(idx, s)| {
                if !opts.all && stop_at.load(Ordering::Acquire) < idx {
                    return TaskResult::Skipped;
                }
                let res = solve_system(p, r, s, derive_seed(seed, &[r as u64, idx as u64]), &|| !opts.all && stop_at.load(Ordering::Acquire) < idx);
                if let TaskResult::Done(h) = &res {
                    if !h.is_empty() && !opts.all {
                        stop_at.fetch_min(idx, Ordering::AcqRel);
                    }
                }
                res
            })
            .collect();
        for res in results {
            match res {
                TaskResult::Skipped => {}
                TaskResult::Failed(f) => {
                    log::warn!("rank {} subset {}: {}", f.rank, f.subset, f.message);
                    failures.push(f);
                }
                TaskResult::Done(found) => {
                    solved += 1;
                    for h in found {
                        if !hits.iter().any(|k| k.point.same_point(&h.point)) {
                            hits.push(h);
                        }
                        if !opts.all {
                            return (hits, failures, solved);
                        }
                    }
                }
            }
        }
    }
    (hits, failures, solved)
}

fn solve_system(p: &LinearPencil, r: usize, s: &RowSubset, seed: u64, cancelled: &dyn Fn() -> bool) -> TaskResult {
    let fail = |message: String| TaskResult::Failed(SystemFailure { rank: r, subset: s.to_string(), message });
    let sys = match build_incidence_system(p, r, s) {
        Ok(sys) => sys,
        Err(e) => return fail(e.to_string()),
    };
    let systems = match reduce_to_dimension_zero(&sys, seed) {
        Ok(z) => z,
        Err(e) => return fail(e.to_string()),
    };
    let cp = p.char_poly_coeffs();
    let mut found = Vec::new();
    for (k, z) in systems.iter().enumerate() {
        if cancelled() {
            return TaskResult::Skipped;
        }
        let rur = match rur_from_basis(&z.basis, &z.x_forms, sys.nx, derive_seed(seed, &[0x7a, k as u64])) {
            Ok(rur) => rur,
            Err(e) => return fail(e.to_string()),
        };
        let points = match real_points(&rur) {
            Ok(pts) => pts,
            Err(e) => return fail(e.to_string()),
        };
        let mut local: Vec<Hit> = Vec::new();
        for point in points {
            let cert = certify_point(cp, &rur, &point.root);
            if cert.psd {
                local.push(Hit { point, cert, rur: rur.clone() });
            }
        }
        local.sort_by(|a, b| b.point.cmp_coords(&a.point));
        log::debug!("rank {r} subset {s} system {k}: degree {}, {} certified", rur.degree(), local.len());
        found.extend(local);
    }
    TaskResult::Done(found)
}

/// A rational point as a degree-one parametrization `q = z`.
fn rational_hit(p: &LinearPencil, x: &[Rational]) -> Hit {
    let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let coords: Vec<_> = x.iter().map(|v| UniPoly::constant(v.numer() * (&den / v.denom()))).collect();
    let eliminants = x.iter().map(|v| UniPoly::new(vec![-v.numer().clone(), v.denom().clone()])).collect();
    let rur = Rur {
        q: UniPoly::new(vec![BigInt::zero(), BigInt::one()]),
        q0: UniPoly::constant(den),
        system_coords: coords.clone(),
        coords,
        separating_form: Vec::new(),
        eliminants,
    };
    let cert = certify_rational(p.char_poly_coeffs(), x);
    let point = RurPoint { root: AlgebraicReal::from_rational(Rational::zero()), coords: x.iter().cloned().map(AlgebraicReal::from_rational).collect() };
    Hit { point, cert, rur }
}
