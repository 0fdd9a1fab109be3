//! Parametric asymptotic curves `z -> (P(z), Q(z))` read off a recognition.
//!
//! The branch index `D` is the largest tag index `i >= 1` used by either
//! rewrite. Along `x_k = k`, `y_k = (k^{-(r-1)} (1 + z / k^D))^{1/s}` every
//! `u_i` with `i < D` tends to zero and `u_D` tends to `-D z`, so the curve
//! is the rewrite evaluated at `U_i = 0 (1 <= i < D)`, `U_D = -D z` and
//! `U_0 = lim y_k`: zero for `r >= 2`, an `s`-th root of unity for `r = 1`.

use std::f64::consts::PI;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{BiPoly, ComplexF, GaussRat, UniPoly, Var};
use crate::elimination::TagPoly;
use crate::error::{Error, Result};
use crate::pertinent::{PertinentFamily, Recognition};

/// Value substituted for `U_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum U0Value {
    /// `r >= 2`: `y_k -> 0`.
    Zero,
    /// `r = 1` with `zeta = exp(2 pi i k / s)` exactly in `Q(i)`.
    Exact { k: u32, value: GaussRat },
    /// `r = 1` with `zeta = exp(2 pi i k / s)` outside `Q(i)`; the curve is
    /// kept as a polynomial in `(z, zeta)` reduced modulo `zeta^s - 1`.
    Symbolic { k: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticCurve {
    pub family: PertinentFamily,
    pub branch_index: u32,
    pub root_order: u32,
    pub u0: U0Value,
    /// `true` for the `r = 1` branches, which the separated-form
    /// construction does not cover.
    pub extension: bool,
    /// `P` as a polynomial in `x = z` and, for symbolic roots, `y = zeta`.
    pub p: BiPoly,
    pub q: BiPoly,
}

impl AsymptoticCurve {
    /// Numeric value of the substituted root of unity (`0` for `r >= 2`).
    pub fn zeta(&self) -> ComplexF {
        match &self.u0 {
            U0Value::Zero => ComplexF::new(0.0, 0.0),
            U0Value::Exact { value, .. } => value.to_complex(),
            U0Value::Symbolic { k } => root_of_unity(*k, self.root_order),
        }
    }

    /// `P` as an exact univariate polynomial in `z`, when `zeta` does not
    /// appear.
    pub fn p_uni(&self) -> Option<UniPoly> {
        self.p.to_uni_x()
    }

    pub fn q_uni(&self) -> Option<UniPoly> {
        self.q.to_uni_x()
    }

    /// `deg_z P`, `deg_z Q` (`None` for the zero polynomial).
    pub fn degrees_in_z(&self) -> (Option<u32>, Option<u32>) {
        (self.p.degree_in(Var::X), self.q.degree_in(Var::X))
    }

    pub fn is_nonconstant(&self) -> bool {
        let (dp, dq) = self.degrees_in_z();
        dp.is_some_and(|d| d >= 1) || dq.is_some_and(|d| d >= 1)
    }
}

/// `exp(2 pi i k / s)`.
pub fn root_of_unity(k: u32, s: u32) -> ComplexF {
    ComplexF::from_polar(1.0, 2.0 * PI * k as f64 / s as f64)
}

/// `exp(2 pi i k / s)` when it lies in `Q(i)`, i.e. is one of `1, i, -1, -i`.
pub fn exact_root_of_unity(k: u32, s: u32) -> Option<GaussRat> {
    let k = k % s;
    if !(4 * k).is_multiple_of(s) {
        return None;
    }
    Some(match 4 * k / s {
        0 => GaussRat::from_int(1),
        1 => GaussRat::i(),
        2 => GaussRat::from_int(-1),
        _ => -GaussRat::i(),
    })
}

fn reduce_mod_zeta(p: &BiPoly, s: u32) -> BiPoly {
    let mut out = BiPoly::zero();
    for (e, c) in p.terms() {
        out = &out + &BiPoly::monomial(c.clone(), e.x, e.y % s);
    }
    out
}

fn eval_branch(e: &TagPoly, d: u32, u0: &BiPoly) -> BiPoly {
    let n_tags = e.n_tags();
    let mut values = vec![BiPoly::zero(); n_tags];
    values[0] = u0.clone();
    values[d as usize] = BiPoly::monomial(GaussRat::from_int(-(d as i64)), 1, 0);
    e.substitute_tags(&values)
}

/// Curves of the `D`-branch: one for `r >= 2`, one per `s`-th root of unity
/// for `r = 1` (extension mode).
pub fn asymptotic_curve(rec: &Recognition) -> Result<Vec<AsymptoticCurve>> {
    let family = rec.family;
    let d = rec
        .branch_index()
        .ok_or_else(|| Error::InvalidArgument("recognition uses no tag U_i with i >= 1".into()))?;
    let make = |u0: U0Value, u0_poly: BiPoly| {
        let s = family.s;
        AsymptoticCurve {
            family,
            branch_index: d,
            root_order: s,
            extension: family.r == 1,
            p: reduce_mod_zeta(&eval_branch(&rec.e_f, d, &u0_poly), s),
            q: reduce_mod_zeta(&eval_branch(&rec.e_g, d, &u0_poly), s),
            u0,
        }
    };
    if family.r >= 2 {
        return Ok(vec![make(U0Value::Zero, BiPoly::zero())]);
    }
    Ok((0..family.s)
        .map(|k| match exact_root_of_unity(k, family.s) {
            Some(value) => make(
                U0Value::Exact {
                    k,
                    value: value.clone(),
                },
                BiPoly::constant(value),
            ),
            None => make(U0Value::Symbolic { k }, BiPoly::y()),
        })
        .collect())
}

/// `(P(z), Q(z))` in floating point.
pub fn curve_sample(curve: &AsymptoticCurve, z: ComplexF) -> (ComplexF, ComplexF) {
    let zeta = curve.zeta();
    let ev = |p: &BiPoly| {
        p.eval_complex(z, zeta)
            .unwrap_or(ComplexF::new(f64::INFINITY, f64::INFINITY))
    };
    (ev(&curve.p), ev(&curve.q))
}

/// The separated-form recipe for `r >= 2`: split off `h(U_n)`, `k(U_m)`
/// (the pure powers of the top tag of each rewrite) and evaluate the three
/// cases `n = m`, `n > m`, `n < m` literally. Returns `(P, Q)` in `z`.
pub fn separated_form_curve(rec: &Recognition) -> Option<(UniPoly, UniPoly)> {
    if rec.family.r < 2 {
        return None;
    }
    let top = |e: &TagPoly| e.max_tag_used().filter(|&i| i >= 1);
    let n = top(&rec.e_f)?;
    let m = top(&rec.e_g)?;

    // constant part after all tags vanish, and the pure part in one tag
    let split = |e: &TagPoly, t: usize| -> (GaussRat, UniPoly) {
        let mut constant = GaussRat::zero();
        let mut h = vec![GaussRat::zero(); 1];
        for (mono, c) in e.terms() {
            let tag_exps = &mono.0[2..];
            if tag_exps.iter().all(|&a| a == 0) {
                constant += c;
            } else if tag_exps
                .iter()
                .enumerate()
                .all(|(i, &a)| a == 0 || i == t)
            {
                let deg = tag_exps[t] as usize;
                if h.len() <= deg {
                    h.resize(deg + 1, GaussRat::zero());
                }
                h[deg] += c;
            }
        }
        (constant, UniPoly::from_coeffs(h))
    };
    let (f0, h) = split(&rec.e_f, n);
    let (g0, k) = split(&rec.e_g, m);
    let compose_linear = |h: &UniPoly, scale: i64| {
        // h(scale * z)
        let lin = UniPoly::from_coeffs(vec![GaussRat::zero(), GaussRat::from_int(scale)]);
        let mut acc = UniPoly::zero();
        for c in h.coeffs().iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    };
    let c = |v: GaussRat| UniPoly::constant(v);
    let h0 = h.coeff(0);
    let k0 = k.coeff(0);
    let (p, q) = match n.cmp(&m) {
        std::cmp::Ordering::Equal => (
            &c(f0) + &compose_linear(&h, -(n as i64)),
            &c(g0) + &compose_linear(&k, -(n as i64)),
        ),
        std::cmp::Ordering::Greater => (
            &c(f0) + &compose_linear(&h, -(n as i64)),
            c(&g0 + &k0),
        ),
        std::cmp::Ordering::Less => (
            c(&f0 + &h0),
            &c(g0) + &compose_linear(&k, -(m as i64)),
        ),
    };
    Some((p, q))
}
