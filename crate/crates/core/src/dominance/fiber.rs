//! Fibers `F^{-1}(a)` through `Res_y(f - alpha, g - beta)`.

use serde::Serialize;

use crate::coeff::{BiPoly, ComplexF, GaussRat, Var};
use crate::dominance::roots::{cluster_roots, univariate_roots};
use crate::elimination::resultant_y;
use crate::error::{Error, Result};
use crate::PolyMap;

/// Tolerance of the root-finding contract used inside the fiber solver.
const ROOT_TOL: f64 = 1e-9;

/// Relative distance below which two fiber points are merged.
const POINT_MERGE_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fiber {
    pub target: (ComplexF, ComplexF),
    pub points: Vec<(ComplexF, ComplexF)>,
    /// `|F(point) - a|` per point
    pub residuals: Vec<f64>,
}

impl Fiber {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `|F(p) - a|` (Euclidean norm in `C^2`).
pub fn residual(map: &PolyMap, p: (ComplexF, ComplexF), a: (ComplexF, ComplexF)) -> f64 {
    match map.eval_complex(p.0, p.1) {
        Ok((f, g)) => ((f - a.0).norm_sqr() + (g - a.1).norm_sqr()).sqrt(),
        Err(_) => f64::INFINITY,
    }
}

/// Coefficients in `y` of `p(x0, y)`.
fn y_coeffs_at(p: &BiPoly, x0: ComplexF) -> Vec<ComplexF> {
    let Some(deg) = p.degree_in(Var::Y) else {
        return Vec::new();
    };
    let mut out = vec![ComplexF::new(0.0, 0.0); deg as usize + 1];
    for (e, c) in p.terms() {
        out[e.y as usize] += c.to_complex() * x0.powu(e.x);
    }
    out
}

fn numerically_zero(c: &[ComplexF], scale: f64) -> bool {
    c.iter().all(|a| a.norm() <= 1e-10 * scale)
}

struct Newton {
    f: BiPoly,
    g: BiPoly,
    fx: BiPoly,
    fy: BiPoly,
    gx: BiPoly,
    gy: BiPoly,
}

impl Newton {
    fn new(p: &BiPoly, q: &BiPoly) -> Self {
        Newton {
            f: p.clone(),
            g: q.clone(),
            fx: p.partial(Var::X),
            fy: p.partial(Var::Y),
            gx: q.partial(Var::X),
            gy: q.partial(Var::Y),
        }
    }

    fn norm(&self, x: ComplexF, y: ComplexF) -> Option<(ComplexF, ComplexF, f64)> {
        let f = self.f.eval_complex(x, y).ok()?;
        let g = self.g.eval_complex(x, y).ok()?;
        Some((f, g, (f.norm_sqr() + g.norm_sqr()).sqrt()))
    }

    /// Damped-free Newton on `(p, q) = 0`, accepting only improving steps.
    fn polish(&self, mut x: ComplexF, mut y: ComplexF) -> (ComplexF, ComplexF) {
        let Some((mut f, mut g, mut r)) = self.norm(x, y) else {
            return (x, y);
        };
        for _ in 0..12 {
            if r == 0.0 {
                break;
            }
            let ev = |p: &BiPoly| p.eval_complex(x, y).unwrap_or(ComplexF::new(f64::NAN, 0.0));
            let (a, b, c, d) = (ev(&self.fx), ev(&self.fy), ev(&self.gx), ev(&self.gy));
            let det = a * d - b * c;
            if det.norm() == 0.0 || !det.re.is_finite() {
                break;
            }
            let dx = (d * f - b * g) / det;
            let dy = (a * g - c * f) / det;
            let (nx, ny) = (x - dx, y - dy);
            match self.norm(nx, ny) {
                Some((nf, ng, nr)) if nr < r => {
                    x = nx;
                    y = ny;
                    f = nf;
                    g = ng;
                    r = nr;
                }
                _ => break,
            }
        }
        (x, y)
    }
}

/// Exact shift `p - c` with `c` the exact rational value of a double.
fn shifted(p: &BiPoly, c: ComplexF) -> Result<BiPoly> {
    let exact = GaussRat::from_complex_f64(c)
        .ok_or_else(|| Error::InvalidArgument("non-finite target".into()))?;
    Ok(p - &BiPoly::constant(exact))
}

fn solve_oriented(map: &PolyMap, a: (ComplexF, ComplexF), tol: f64) -> Result<Vec<(ComplexF, ComplexF)>> {
    let p = shifted(&map.f, a.0)?;
    let q = shifted(&map.g, a.1)?;
    let res = resultant_y(&p, &q)?;
    if res.is_zero() {
        return Err(Error::Degenerate(
            "resultant vanishes identically: positive-dimensional or degenerate fiber".into(),
        ));
    }
    let res_c: Vec<ComplexF> = res
        .to_uni_x()
        .expect("resultant is univariate in x")
        .to_complex();
    if res_c.len() < 2 {
        return Ok(Vec::new());
    }
    let x_roots = cluster_roots(&univariate_roots(&res_c, ROOT_TOL)?);
    let newton = Newton::new(&p, &q);
    let scale = |poly: &BiPoly, x0: ComplexF| {
        poly.terms()
            .map(|(e, c)| c.to_complex().norm() * x0.norm().powi(e.x as i32))
            .sum::<f64>()
            .max(f64::MIN_POSITIVE)
    };
    let mut points: Vec<(ComplexF, ComplexF)> = Vec::new();
    for (x0, _) in x_roots {
        let mut candidates = Vec::new();
        for poly in [&p, &q] {
            let c = y_coeffs_at(poly, x0);
            if c.len() < 2 || numerically_zero(&c[1..], scale(poly, x0)) {
                continue;
            }
            let mut c = c;
            let s = scale(poly, x0);
            while c.len() > 2 && c.last().is_some_and(|l| l.norm() <= 1e-12 * s) {
                c.pop();
            }
            if let Ok(ys) = univariate_roots(&c, ROOT_TOL) {
                candidates.extend(ys);
            }
        }
        for y0 in candidates {
            let pt = newton.polish(x0, y0);
            if residual(map, pt, a) > tol {
                continue;
            }
            let dup = points.iter().any(|o| {
                let d = ((o.0 - pt.0).norm_sqr() + (o.1 - pt.1).norm_sqr()).sqrt();
                d <= POINT_MERGE_TOL * (o.0.norm() + o.1.norm()).max(1.0)
            });
            if !dup {
                points.push(pt);
            }
        }
    }
    Ok(points)
}

/// Approximates `F^{-1}(a)`. Every returned point has residual at most
/// `tol`; points are sorted by `(re x, im x, re y, im y)`.
pub fn fiber_solve(map: &PolyMap, a: (ComplexF, ComplexF), tol: f64) -> Result<Fiber> {
    let y_free = |p: &BiPoly| p.degree_in(Var::Y).unwrap_or(0) == 0;
    let x_free = |p: &BiPoly| p.degree_in(Var::X).unwrap_or(0) == 0;
    let mut points = if y_free(&map.f) && y_free(&map.g) {
        if x_free(&map.f) && x_free(&map.g) {
            return Err(Error::Degenerate("constant map".into()));
        }
        solve_oriented(&map.mirrored(), a, tol)?
            .into_iter()
            .map(|(y, x)| (x, y))
            .collect()
    } else {
        solve_oriented(map, a, tol)?
    };
    points.sort_by(|u, v| {
        u.0.re
            .total_cmp(&v.0.re)
            .then(u.0.im.total_cmp(&v.0.im))
            .then(u.1.re.total_cmp(&v.1.re))
            .then(u.1.im.total_cmp(&v.1.im))
    });
    let residuals = points.iter().map(|&p| residual(map, p, a)).collect();
    Ok(Fiber {
        target: a,
        points,
        residuals,
    })
}
