//! Aberth-Ehrlich simultaneous iteration for complex univariate roots.

use crate::coeff::ComplexF;
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 1000;

/// Relative distance under which two roots are one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

fn horner_with_derivative(c: &[ComplexF], z: ComplexF) -> (ComplexF, ComplexF) {
    let mut p = ComplexF::new(0.0, 0.0);
    let mut dp = ComplexF::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn cmp_complex(a: &ComplexF, b: &ComplexF) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Residual contract of [`univariate_roots`].
pub fn residual_ok(coeffs: &[ComplexF], root: ComplexF, tol: f64) -> bool {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let deg = coeffs.len().saturating_sub(1) as i32;
    let (p, _) = horner_with_derivative(coeffs, root);
    p.norm() <= tol * scale * root.norm().max(1.0).powi(deg)
}

/// All roots of `sum coeffs[i] z^i`, repeated by multiplicity and sorted by
/// `(re, im)`.
///
/// Zero low-order coefficients give exact zero roots. The iteration starts
/// from a fixed circle sized by the Fujiwara bound, so the output depends
/// only on the input. Each returned root satisfies
/// `|p(root)| <= tol * max|coeff| * max(1, |root|)^deg`.
pub fn univariate_roots(coeffs: &[ComplexF], tol: f64) -> Result<Vec<ComplexF>> {
    let mut c: Vec<ComplexF> = coeffs.to_vec();
    while c.last().is_some_and(|a| *a == ComplexF::new(0.0, 0.0)) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::InvalidArgument(
            "root finding needs a polynomial of degree >= 1".into(),
        ));
    }
    if c.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let zeros = c.iter().take_while(|a| **a == ComplexF::new(0.0, 0.0)).count();
    let mut roots = vec![ComplexF::new(0.0, 0.0); zeros];
    let reduced: Vec<ComplexF> = c[zeros..].to_vec();
    let n = reduced.len() - 1;
    if n > 0 {
        roots.extend(aberth(&reduced, tol)?);
    }
    roots.sort_by(cmp_complex);
    Ok(roots)
}

fn aberth(c: &[ComplexF], tol: f64) -> Result<Vec<ComplexF>> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<ComplexF> = c.iter().map(|a| a / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    // Fujiwara bound
    let bound = (0..n)
        .map(|k| {
            let m = monic[k].norm();
            let m = if k == 0 { m / 2.0 } else { m };
            m.powf(1.0 / (n - k) as f64)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<ComplexF> = (0..n)
        .map(|k| ComplexF::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner_with_derivative(&monic, z[i]);
            if p == ComplexF::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = ComplexF::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d != ComplexF::new(0.0, 0.0) {
                        sum += d.inv();
                    }
                }
            }
            let denom = ComplexF::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() > 0.0 && ratio.re.is_finite() {
                ratio / denom
            } else {
                ComplexF::new(1e-8, 1e-8)
            };
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    if z.iter().all(|r| residual_ok(c, *r, tol)) {
        Ok(z)
    } else {
        Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
        })
    }
}

/// Groups roots closer than [`CLUSTER_TOL`] (relative) into
/// `(mean, multiplicity)` pairs, preserving sorted order.
pub fn cluster_roots(roots: &[ComplexF]) -> Vec<(ComplexF, usize)> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![roots[i]];
        used[i] = true;
        for j in i + 1..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() <= CLUSTER_TOL * roots[i].norm().max(1.0) {
                used[j] = true;
                members.push(roots[j]);
            }
        }
        let mean = members.iter().sum::<ComplexF>() / members.len() as f64;
        out.push((mean, members.len()));
    }
    out.sort_by(|a, b| cmp_complex(&a.0, &b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexF {
        ComplexF::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<ComplexF> {
        v.iter().map(|&a| c(a, 0.0)).collect()
    }

    #[test]
    fn simple_roots() {
        let r = univariate_roots(&real(&[-1.0, 0.0, 1.0]), 1e-12).unwrap();
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-14);

        let r = univariate_roots(&real(&[0.0, -1.0, 1.0]), 1e-12).unwrap();
        assert_eq!(r[0], c(0.0, 0.0));
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn double_root_clusters() {
        // (z - (1 + i))^2 = z^2 - 2(1+i) z + 2i
        let a = c(1.0, 1.0);
        let coeffs = vec![a * a, -a * 2.0, c(1.0, 0.0)];
        let r = univariate_roots(&coeffs, 1e-12).unwrap();
        assert_eq!(r.len(), 2);
        let cl = cluster_roots(&r);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].1, 2);
        assert!((cl[0].0 - a).norm() < 1e-7);
    }

    #[test]
    fn rejects_constants() {
        assert!(univariate_roots(&real(&[3.0]), 1e-12).is_err());
        assert!(univariate_roots(&real(&[3.0, 0.0]), 1e-12).is_err());
    }

    #[test]
    fn wilkinson_like() {
        // prod_{k=1}^{8} (z - k)
        let mut p = vec![c(1.0, 0.0)];
        for k in 1..=8 {
            let mut q = vec![c(0.0, 0.0); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                q[i + 1] += a;
                q[i] -= a * k as f64;
            }
            p = q;
        }
        let r = univariate_roots(&p, 1e-10).unwrap();
        for (k, root) in r.iter().enumerate() {
            assert!((root - c(k as f64 + 1.0, 0.0)).norm() < 1e-6);
        }
    }
}
