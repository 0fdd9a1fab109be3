mod common;

use common::close;
use proptest::prelude::*;

use jlab::asymptotic::{asymptotic_curve, curve_sample};
use jlab::coeff::ComplexF;
use jlab::corpus;
use jlab::dominance::{dominancy_check, fiber_solve, residual_ok, univariate_roots, DominanceOptions};
use jlab::numeric::{limit_check, SeqSpec, DEFAULT_SCHEDULE, RAW_AGREEMENT_TOL};
use jlab::pertinent::{recognize, RecognizeBounds};
use jlab::PolyMap;

fn c(re: f64, im: f64) -> ComplexF {
    ComplexF::new(re, im)
}

fn coeffs() -> impl Strategy<Value = Vec<ComplexF>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..=9).prop_map(|v| {
        let mut out: Vec<ComplexF> = v.into_iter().map(|(a, b)| c(a, b)).collect();
        let last = out.len() - 1;
        if out[last].norm() < 0.1 {
            out[last] = c(1.0, 0.0);
        }
        out
    })
}

fn horner(cs: &[ComplexF], z: ComplexF) -> ComplexF {
    cs.iter().rev().fold(c(0.0, 0.0), |acc, a| acc * z + a)
}

/// Coefficients of `p(a z + b)`.
fn affine_substitute(cs: &[ComplexF], a: ComplexF, b: ComplexF) -> Vec<ComplexF> {
    let mut out = vec![c(0.0, 0.0); cs.len()];
    let mut power = vec![c(1.0, 0.0)];
    for coeff in cs {
        for (k, p) in power.iter().enumerate() {
            out[k] += coeff * p;
        }
        let mut next = vec![c(0.0, 0.0); power.len() + 1];
        for (k, p) in power.iter().enumerate() {
            next[k] += p * b;
            next[k + 1] += p * a;
        }
        power = next;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn root_count_residual_and_vieta(cs in coeffs()) {
        let roots = univariate_roots(&cs, 1e-12).unwrap();
        let deg = cs.len() - 1;
        prop_assert_eq!(roots.len(), deg);
        for r in &roots {
            prop_assert!(residual_ok(&cs, *r, 1e-10), "residual {} at {}", horner(&cs, *r).norm(), r);
        }
        let sum: ComplexF = roots.iter().sum();
        prop_assert!(close(sum, -cs[deg - 1] / cs[deg], 1e-7));
    }

    #[test]
    fn roots_are_affine_equivariant(cs in coeffs(), ar in 0.5f64..2.0, ai in -1.0f64..1.0, br in -1.0f64..1.0, bi in -1.0f64..1.0) {
        let (a, b) = (c(ar, ai), c(br, bi));
        let shifted = affine_substitute(&cs, a, b);
        let direct = univariate_roots(&cs, 1e-12).unwrap();
        let moved = univariate_roots(&shifted, 1e-12).unwrap();
        prop_assert_eq!(direct.len(), moved.len());
        // every root w of p(az + b) maps to a root a w + b of p
        for w in moved {
            let image = a * w + b;
            let best = direct.iter().map(|r| (r - image).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best <= 1e-4 * image.norm().max(1.0), "{} vs {:?}", image, direct);
        }
    }
}

#[test]
fn exact_zero_roots_are_factored_out() {
    let roots = univariate_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)], 1e-12).unwrap();
    assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
    assert_eq!(roots.len(), 3);
}

/// Multi-start Newton over a grid of starting points, deduplicated.
fn brute_force_fiber(map: &PolyMap, a: (ComplexF, ComplexF)) -> Vec<(ComplexF, ComplexF)> {
    let fx = map.f.partial(jlab::Var::X);
    let fy = map.f.partial(jlab::Var::Y);
    let gx = map.g.partial(jlab::Var::X);
    let gy = map.g.partial(jlab::Var::Y);
    let grid: Vec<f64> = (-4..=4).map(|k| k as f64 * 0.9).collect();
    let mut found: Vec<(ComplexF, ComplexF)> = Vec::new();
    for &xr in &grid {
        for &xi in &grid {
            for &yr in &grid {
                for &yi in &grid {
                    let (mut x, mut y) = (c(xr, xi), c(yr, yi));
                    for _ in 0..60 {
                        let (Ok(f), Ok(g)) = (map.f.eval_complex(x, y), map.g.eval_complex(x, y)) else { break };
                        let (f, g) = (f - a.0, g - a.1);
                        let j = [
                            fx.eval_complex(x, y).unwrap(),
                            fy.eval_complex(x, y).unwrap(),
                            gx.eval_complex(x, y).unwrap(),
                            gy.eval_complex(x, y).unwrap(),
                        ];
                        let det = j[0] * j[3] - j[1] * j[2];
                        if det.norm() < 1e-14 {
                            break;
                        }
                        x -= (j[3] * f - j[1] * g) / det;
                        y -= (j[0] * g - j[2] * f) / det;
                    }
                    let (Ok(f), Ok(g)) = (map.f.eval_complex(x, y), map.g.eval_complex(x, y)) else { continue };
                    if (f - a.0).norm() + (g - a.1).norm() < 1e-10
                        && !found.iter().any(|p| (p.0 - x).norm() + (p.1 - y).norm() < 1e-6)
                    {
                        found.push((x, y));
                    }
                }
            }
        }
    }
    found
}

#[test]
fn fibers_agree_with_brute_force() {
    let map = corpus::F_STAR.map();
    let values = [-1.0, -0.5, 0.5, 1.0, 2.0];
    let mut targets = 0;
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[..] {
            let target = (c(a, 0.0), c(b, 0.25 * i as f64));
            let fiber = fiber_solve(&map, target, 1e-9).unwrap();
            let brute = brute_force_fiber(&map, target);
            assert_eq!(fiber.points.len(), brute.len(), "target {target:?}: {:?} vs {brute:?}", fiber.points);
            for p in &brute {
                assert!(fiber.points.iter().any(|q| (q.0 - p.0).norm() + (q.1 - p.1).norm() < 1e-6));
            }
            targets += 1;
        }
    }
    assert_eq!(targets, 25);
}

#[test]
fn dominance_is_reproducible() {
    let map = corpus::SQUARE_BRANCH.map();
    let rec = recognize(&map, &RecognizeBounds::default()).recognitions.remove(0);
    let curves = asymptotic_curve(&rec).unwrap();
    let opts = DominanceOptions {
        samples: 12,
        seed: 9,
        ..DominanceOptions::default()
    };
    let first = dominancy_check(&map, &curves, &opts);
    let second = dominancy_check(&map, &curves, &opts);
    assert_eq!(first, second);
    assert_eq!(first.samples, 12);
    assert!(first.dominant_consistent);
}

#[test]
fn empty_fibers_are_detected() {
    let map = corpus::EMPTY_FIBER_PROBE.map();
    // (x, xy) misses (0, 1)
    let fiber = fiber_solve(&map, (c(0.0, 0.0), c(1.0, 0.0)), 1e-9).unwrap();
    assert!(fiber.points.is_empty());
}

#[test]
fn limits_are_monotone_with_unit_slope() {
    let map = corpus::F_STAR.map();
    let rec = recognize(&map, &RecognizeBounds::default()).recognitions.remove(0);
    let curve = asymptotic_curve(&rec).unwrap().remove(0);
    for z in [c(1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)] {
        let spec = SeqSpec::for_curve(&curve, z, DEFAULT_SCHEDULE.to_vec()).unwrap();
        let rep = limit_check(&rec, &curve, &spec, 1e-3).unwrap();
        assert!(rep.converged && rep.diverging && rep.monotone, "z = {z}");
        let slope = rep.slope.unwrap();
        assert!((-1.3..=-0.7).contains(&slope), "z = {z}: {slope}");
        assert!(close(rep.predicted.0, -z, 1e-12));
        assert!(rep.max_raw_disagreement().unwrap() < RAW_AGREEMENT_TOL);
    }
}

#[test]
fn square_branch_curve_is_reached() {
    let map = corpus::SQUARE_BRANCH.map();
    let rec = recognize(&map, &RecognizeBounds::default()).recognitions.remove(0);
    for curve in asymptotic_curve(&rec).unwrap() {
        for z in [c(0.5, 0.0), c(-1.0, 1.0)] {
            let spec = SeqSpec::for_curve(&curve, z, DEFAULT_SCHEDULE.to_vec()).unwrap();
            let rep = limit_check(&rec, &curve, &spec, 1e-3).unwrap();
            assert!(rep.converged, "z = {z}: {}", rep.final_error);
            assert!(close(rep.predicted.0, curve_sample(&curve, z).0, 1e-15));
        }
    }
}

#[test]
fn raw_evaluation_agrees_on_c1_minus_c2_corpus() {
    for entry in corpus::ALL.iter().filter(|e| e.expected == jlab::pertinent::ClassLabel::C1MinusC2) {
        let map = entry.map();
        for rec in recognize(&map, &RecognizeBounds::default()).recognitions {
            for curve in asymptotic_curve(&rec).unwrap() {
                let spec = SeqSpec::for_curve(&curve, c(0.5, 0.5), DEFAULT_SCHEDULE.to_vec()).unwrap();
                let rep = limit_check(&rec, &curve, &spec, 1e-3).unwrap();
                // the error decays like k^{-(r-1)/s}, so only the trend is checked here
                assert!(rep.diverging && rep.monotone, "{} {}", entry.name, rec.family);
                let gap = rep.max_raw_disagreement().expect("raw values finite");
                assert!(gap < RAW_AGREEMENT_TOL, "{} {}: {gap:e}", entry.name, rec.family);
            }
        }
    }
}
