//! Diverging-sequence harness: builds `xi_k -> infinity` along a pertinent
//! family and checks that `F(xi_k)` approaches a predicted point.
//!
//! `F(xi_k)` is evaluated through the tag form: on the sequence,
//! `x^{r-1} y^s = 1 + delta` with `delta = z / k^j`, hence
//! `u_i = -k^i sum_{l=1}^{i} C(i, l) delta^l`, which avoids the cancellation
//! between the two huge terms of `x^i - x^{ir} y^{is}`. The raw
//! polynomial value is reported alongside.

use std::io::Write;

use serde::Serialize;

use crate::asymptotic::{curve_sample, root_of_unity, AsymptoticCurve, U0Value};
use crate::coeff::{BiPoly, ComplexF};
use crate::error::{Error, Result};
use crate::pertinent::{Orientation, PertinentFamily, Recognition};

pub const DEFAULT_SCHEDULE: [u64; 4] = [100, 1_000, 10_000, 100_000];

/// Tolerance between tag-form and raw evaluation, relative to the raw
/// evaluation's magnitude scale `sum |c| |x|^a |y|^b`.
pub const RAW_AGREEMENT_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SeqSpec {
    pub family: PertinentFamily,
    /// correction exponent `j` in `1 + z / k^j`
    pub j: u32,
    pub z: ComplexF,
    /// `y_k` is multiplied by `exp(2 pi i zeta_index / s)`
    pub zeta_index: u32,
    pub schedule: Vec<u64>,
}

impl SeqSpec {
    pub fn new(family: PertinentFamily, j: u32, z: ComplexF, schedule: Vec<u64>) -> Result<Self> {
        if j == 0 || j > family.n {
            return Err(Error::InvalidArgument(format!(
                "branch j = {j} must lie in 1..={}",
                family.n
            )));
        }
        if schedule.is_empty() || schedule[0] == 0 || schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "schedule must be a nonempty strictly increasing list of positive integers".into(),
            ));
        }
        Ok(SeqSpec {
            family,
            j,
            z,
            zeta_index: 0,
            schedule,
        })
    }

    /// Sequence matching a computed curve (same family, branch and root).
    pub fn for_curve(curve: &AsymptoticCurve, z: ComplexF, schedule: Vec<u64>) -> Result<Self> {
        let mut spec = SeqSpec::new(curve.family, curve.branch_index, z, schedule)?;
        spec.zeta_index = match curve.u0 {
            U0Value::Zero => 0,
            U0Value::Exact { k, .. } | U0Value::Symbolic { k } => k,
        };
        Ok(spec)
    }

    pub fn with_zeta_index(mut self, k: u32) -> Self {
        self.zeta_index = k;
        self
    }

    fn delta(&self, k: u64) -> ComplexF {
        self.z / (k as f64).powi(self.j as i32)
    }
}

fn finite(z: ComplexF) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `xi_k = (k, zeta (k^{-(r-1)} (1 + z / k^j))^{1/s})` with the principal
/// root (mirrored for the y-dominant orientation).
pub fn sequence_point(spec: &SeqSpec, k: u64) -> Result<(ComplexF, ComplexF)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let fam = &spec.family;
    let kf = k as f64;
    let base = (ComplexF::new(1.0, 0.0) + spec.delta(k)) / kf.powi(fam.r as i32 - 1);
    let other = base.powf(1.0 / fam.s as f64) * root_of_unity(spec.zeta_index, fam.s);
    let dominant = ComplexF::new(kf, 0.0);
    if !finite(other) || !finite(dominant) {
        return Err(Error::Overflow(format!("sequence point at k = {k}")));
    }
    Ok(match fam.orientation {
        Orientation::XDominant => (dominant, other),
        Orientation::YDominant => (other, dominant),
    })
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

/// `u_0 .. u_N` on the sequence, evaluated in the cancellation-free form.
pub fn tag_values(spec: &SeqSpec, k: u64) -> Result<Vec<ComplexF>> {
    let (x, y) = sequence_point(spec, k)?;
    let u0 = match spec.family.orientation {
        Orientation::XDominant => y,
        Orientation::YDominant => x,
    };
    let kf = k as f64;
    let mut out = vec![u0];
    for i in 1..=spec.family.n {
        let mut acc = ComplexF::new(0.0, 0.0);
        for l in 1..=i {
            let scale = kf.powi(i as i32 - (spec.j * l) as i32);
            acc += spec.z.powu(l) * (binomial(i, l) * scale);
        }
        out.push(-acc);
    }
    if out.iter().any(|v| !finite(*v)) {
        return Err(Error::Overflow(format!("pertinent values at k = {k}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitStep {
    pub k: u64,
    pub point: (ComplexF, ComplexF),
    /// `F(xi_k)` through the tag form
    pub value: (ComplexF, ComplexF),
    /// `F(xi_k)` by direct evaluation, `None` on overflow
    pub raw_value: Option<(ComplexF, ComplexF)>,
    /// `sum |c| |x|^a |y|^b` for `f` and `g`: rounding in the raw value is
    /// proportional to this, not to the value itself
    pub raw_scale: (f64, f64),
    pub u: Vec<ComplexF>,
    /// `|F(xi_k) - (P(z), Q(z))|`
    pub error: f64,
    /// `|u_i(xi_k) - lim u_i|` for `1 <= i <= D`
    pub u_errors: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub predicted: (ComplexF, ComplexF),
    pub steps: Vec<LimitStep>,
    pub final_error: f64,
    pub final_u_error: f64,
    /// Least-squares slope of `log error` against `log k`.
    pub slope: Option<f64>,
    pub tol: f64,
    pub converged: bool,
    /// `|xi_k|` strictly increasing along the schedule
    pub diverging: bool,
    /// errors non-increasing after the first point
    pub monotone: bool,
}

impl LimitReport {
    /// Largest gap between tag-form and raw evaluation, relative to the
    /// raw evaluation's magnitude scale.
    pub fn max_raw_disagreement(&self) -> Option<f64> {
        let mut worst: f64 = 0.0;
        for s in &self.steps {
            let (rf, rg) = s.raw_value?;
            let (tf, tg) = s.value;
            for (r, t, scale) in [(rf, tf, s.raw_scale.0), (rg, tg, s.raw_scale.1)] {
                worst = worst.max((r - t).norm() / scale.max(1.0));
            }
        }
        Some(worst)
    }

    /// CSV trace: `k, x_re, x_im, y_re, y_im, f_re, f_im, g_re, g_im, error`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,x_re,x_im,y_re,y_im,f_re,f_im,g_re,g_im,error")?;
        for s in &self.steps {
            let (x, y) = s.point;
            let (f, g) = s.value;
            writeln!(
                w,
                "{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                s.k, x.re, x.im, y.re, y.im, f.re, f.im, g.re, g.im, s.error
            )?;
        }
        Ok(())
    }
}

/// Least-squares slope of `log10 e` against `log10 k`, skipping zero errors.
pub fn loglog_slope(points: &[(u64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, e)| *e > 0.0 && e.is_finite())
        .map(|&(k, e)| ((k as f64).log10(), e.log10()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn magnitude_scale(p: &BiPoly, (x, y): (ComplexF, ComplexF)) -> f64 {
    p.terms()
        .map(|(e, c)| c.to_complex().norm() * x.norm().powi(e.x as i32) * y.norm().powi(e.y as i32))
        .sum()
}

fn run_sequence(rec: &Recognition, spec: &SeqSpec, target: (ComplexF, ComplexF), tol: f64) -> Result<LimitReport> {
    let map = rec.substitute();
    let d = spec.j as usize;
    let mut steps = Vec::with_capacity(spec.schedule.len());
    for &k in &spec.schedule {
        let point = sequence_point(spec, k)?;
        let u = tag_values(spec, k)?;
        let value = (rec.e_f.eval_tags_complex(&u), rec.e_g.eval_tags_complex(&u));
        let raw_value = map.eval_complex(point.0, point.1).ok();
        let raw_scale = (
            magnitude_scale(&map.f, point),
            magnitude_scale(&map.g, point),
        );
        let error = ((value.0 - target.0).norm_sqr() + (value.1 - target.1).norm_sqr()).sqrt();
        let u_errors = (1..=d)
            .map(|i| {
                let lim = if i == d {
                    spec.z * -(d as f64)
                } else {
                    ComplexF::new(0.0, 0.0)
                };
                (u[i] - lim).norm()
            })
            .collect();
        steps.push(LimitStep {
            k,
            point,
            value,
            raw_value,
            raw_scale,
            u,
            error,
            u_errors,
        });
    }
    let last = steps.last().expect("nonempty schedule");
    let final_error = last.error;
    let final_u_error = last.u_errors.iter().cloned().fold(0.0, f64::max);
    let slope = loglog_slope(&steps.iter().map(|s| (s.k, s.error)).collect::<Vec<_>>());
    let norms: Vec<f64> = steps
        .iter()
        .map(|s| (s.point.0.norm_sqr() + s.point.1.norm_sqr()).sqrt())
        .collect();
    let diverging = norms.windows(2).all(|w| w[0] < w[1]);
    let monotone = steps.windows(2).skip(1).all(|w| w[1].error <= w[0].error)
        || steps.len() <= 2;
    Ok(LimitReport {
        predicted: target,
        converged: final_error <= tol && final_u_error <= tol && final_error.is_finite(),
        steps,
        final_error,
        final_u_error,
        slope,
        tol,
        diverging,
        monotone,
    })
}

/// Runs the sequence of `spec` and compares `F(xi_k)` with
/// `(P(z), Q(z))`. Non-convergence is reported in the result, not as an
/// error.
pub fn limit_check(rec: &Recognition, curve: &AsymptoticCurve, spec: &SeqSpec, tol: f64) -> Result<LimitReport> {
    if spec.j != curve.branch_index {
        return Err(Error::InvalidArgument(format!(
            "sequence branch j = {} does not match curve branch D = {}",
            spec.j, curve.branch_index
        )));
    }
    if spec.family != rec.family || curve.family != rec.family {
        return Err(Error::InvalidArgument("sequence, curve and recognition use different families".into()));
    }
    let target = curve_sample(curve, spec.z);
    run_sequence(rec, spec, target, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    pub target: (ComplexF, ComplexF),
    pub converged: bool,
    pub errors: Vec<(u64, f64)>,
}

/// Confirms that `a` (a point of the curve at parameter `spec.z`) is a limit
/// of `F(xi_k)`, i.e. lies in the closure of the image.
pub fn closure_check(
    rec: &Recognition,
    curve: &AsymptoticCurve,
    a: (ComplexF, ComplexF),
    spec: &SeqSpec,
    tol: f64,
) -> Result<ClosureReport> {
    let on_curve = curve_sample(curve, spec.z);
    let gap = ((on_curve.0 - a.0).norm_sqr() + (on_curve.1 - a.1).norm_sqr()).sqrt();
    if gap > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "target is {gap:e} away from the curve point at z = {}",
            spec.z
        )));
    }
    if spec.j != curve.branch_index {
        return Err(Error::InvalidArgument("sequence branch does not match curve".into()));
    }
    let rep = run_sequence(rec, spec, a, tol)?;
    Ok(ClosureReport {
        target: a,
        converged: rep.final_error <= tol,
        errors: rep.steps.iter().map(|s| (s.k, s.error)).collect(),
    })
}
