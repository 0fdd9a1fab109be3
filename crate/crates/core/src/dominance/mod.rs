//! Fibers of polynomial maps and sampling-based dominancy verdicts.

mod fiber;
mod roots;

pub use fiber::{fiber_solve, residual, Fiber};
pub use roots::{cluster_roots, residual_ok, univariate_roots, CLUSTER_TOL, MAX_ITERATIONS};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotic::{curve_sample, AsymptoticCurve};
use crate::coeff::ComplexF;
use crate::PolyMap;

#[derive(Clone, Debug)]
pub struct DominanceOptions {
    pub samples: usize,
    pub seed: u64,
    /// residual tolerance for fiber points
    pub tol: f64,
    /// targets have real and imaginary parts in `[-B, B]`
    pub box_size: f64,
    /// targets this close to a curve point are skipped
    pub near_curve_eps: f64,
    pub z_grid_points: usize,
    pub z_radius: f64,
}

impl Default for DominanceOptions {
    fn default() -> Self {
        DominanceOptions {
            samples: 50,
            seed: 42,
            tol: 1e-9,
            box_size: 5.0,
            near_curve_eps: 1e-6,
            z_grid_points: 512,
            z_radius: 10.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleOutcome {
    Nonempty,
    Empty,
    SkippedNearCurve,
    SolverFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceReport {
    pub samples: usize,
    pub nonempty_fibers: usize,
    pub empty_fibers: usize,
    pub skipped_near_sf: usize,
    pub solver_failures: usize,
    pub seed: u64,
    /// every non-skipped sample has a nonempty fiber and no solve failed
    pub dominant_consistent: bool,
    pub outcomes: Vec<SampleOutcome>,
}

/// The sample target with index `i`: an independent ChaCha8 stream per
/// index, so results do not depend on scheduling.
pub fn sample_target(seed: u64, index: u64, box_size: f64) -> (ComplexF, ComplexF) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut coord = || rng.gen_range(-box_size..=box_size);
    let a = ComplexF::new(coord(), coord());
    let b = ComplexF::new(coord(), coord());
    (a, b)
}

/// Deterministic polar grid of `count` parameters with `|z| <= radius`.
pub fn z_grid(count: usize, radius: f64) -> Vec<ComplexF> {
    let rings = (count as f64).sqrt().floor().max(1.0) as usize;
    let per_ring = count.div_ceil(rings);
    let mut out = Vec::with_capacity(count);
    'outer: for i in 0..rings {
        let r = radius * (i + 1) as f64 / rings as f64;
        for j in 0..per_ring {
            if out.len() == count {
                break 'outer;
            }
            out.push(ComplexF::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / per_ring as f64));
        }
    }
    out
}

fn near_curves(a: (ComplexF, ComplexF), curve_points: &[(ComplexF, ComplexF)], eps: f64) -> bool {
    curve_points
        .iter()
        .any(|p| ((p.0 - a.0).norm_sqr() + (p.1 - a.1).norm_sqr()).sqrt() < eps)
}

/// Seeded fiber sampling. `curves` are the known asymptotic curves used to
/// skip targets near `S_F`; skipping never counts as evidence.
pub fn dominancy_check(map: &PolyMap, curves: &[AsymptoticCurve], opts: &DominanceOptions) -> DominanceReport {
    let grid = z_grid(opts.z_grid_points, opts.z_radius);
    let curve_points: Vec<(ComplexF, ComplexF)> = curves
        .iter()
        .flat_map(|c| grid.iter().map(move |&z| curve_sample(c, z)))
        .collect();
    let outcomes: Vec<SampleOutcome> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let a = sample_target(opts.seed, i, opts.box_size);
            if near_curves(a, &curve_points, opts.near_curve_eps) {
                return SampleOutcome::SkippedNearCurve;
            }
            match fiber_solve(map, a, opts.tol) {
                Ok(f) if f.is_empty() => SampleOutcome::Empty,
                Ok(_) => SampleOutcome::Nonempty,
                Err(_) => SampleOutcome::SolverFailure,
            }
        })
        .collect();
    let count = |o: SampleOutcome| outcomes.iter().filter(|&&x| x == o).count();
    let nonempty_fibers = count(SampleOutcome::Nonempty);
    let empty_fibers = count(SampleOutcome::Empty);
    let solver_failures = count(SampleOutcome::SolverFailure);
    DominanceReport {
        samples: opts.samples,
        nonempty_fibers,
        empty_fibers,
        skipped_near_sf: count(SampleOutcome::SkippedNearCurve),
        solver_failures,
        seed: opts.seed,
        dominant_consistent: empty_fibers == 0 && solver_failures == 0,
        outcomes,
    }
}
