use num_traits::One;

use crate::coeff::{BiPoly, GaussRat, UniPoly, Var};
use crate::error::{Error, Result};

/// Fraction-free (Bareiss) determinant of a square matrix with univariate
/// polynomial entries. Every intermediate division is exact.
pub fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(GaussRat::one());
    }
    let mut sign_negative = false;
    let mut prev = UniPoly::constant(GaussRat::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_negative = !sign_negative;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step is an exact division");
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of `p, q` viewed as polynomials in `y` with coefficients
/// in `Q(i)[x]`. Row layout: `deg q` shifted copies of `p`, then `deg p`
/// shifted copies of `q`, leading coefficients first.
pub fn sylvester_matrix_y(p: &BiPoly, q: &BiPoly) -> Vec<Vec<UniPoly>> {
    let pc: Vec<UniPoly> = p.coeffs_in(Var::Y).iter().map(|c| c.to_uni_x().unwrap()).collect();
    let qc: Vec<UniPoly> = q.coeffs_in(Var::Y).iter().map(|c| c.to_uni_x().unwrap()).collect();
    let m = pc.len().saturating_sub(1);
    let n = qc.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        for (k, c) in pc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UniPoly::zero(); size];
        for (k, c) in qc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_y(p, q)`, a polynomial in `x` alone.
///
/// A factor independent of `y` is allowed: `Res_y(p, c) = c^{deg_y p}`.
/// Both factors independent of `y` is a degenerate input.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> Result<BiPoly> {
    let dp = p.degree_in(Var::Y).unwrap_or(0);
    let dq = q.degree_in(Var::Y).unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(Error::Degenerate(
            "both polynomials are independent of y".into(),
        ));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(BiPoly::zero());
    }
    Ok(bareiss_det(sylvester_matrix_y(p, q)).to_bipoly_x())
}

/// Exact quotient `p / d`, or `None` when `d` does not divide `p`.
pub fn exact_divide(p: &BiPoly, d: &BiPoly) -> Option<BiPoly> {
    let (lm, lc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
    let mut work = p.clone();
    let mut quot = BiPoly::zero();
    while let Some((m, c)) = work.leading().map(|(m, c)| (*m, c.clone())) {
        if m.x < lm.x || m.y < lm.y {
            // with a single divisor a non-reducible head means a nonzero remainder
            return None;
        }
        let q = BiPoly::monomial(&c / &lc, m.x - lm.x, m.y - lm.y);
        work = &work - &(&q * d);
        quot = &quot + &q;
    }
    Some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn linear_resultant() {
        // Res_y(y - c, y - d) with c = x, d = 3
        let r = resultant_y(&p(&[(0, 1, 1), (1, 0, -1)]), &p(&[(0, 1, 1), (0, 0, -3)])).unwrap();
        assert_eq!(r, p(&[(1, 0, 1), (0, 0, -3)]));
    }

    #[test]
    fn fiber_resultant_of_reference_map() {
        // f - 1 = y + x - x^2 y - 1, g - 2 = 2y + x - x^2 y - 2
        let f = p(&[(0, 1, 1), (1, 0, 1), (2, 1, -1), (0, 0, -1)]);
        let g = p(&[(0, 1, 2), (1, 0, 1), (2, 1, -1), (0, 0, -2)]);
        assert_eq!(resultant_y(&f, &g).unwrap(), p(&[(2, 0, 1), (1, 0, -1)]));
    }

    #[test]
    fn quadratic_against_linear() {
        let r = resultant_y(&p(&[(0, 2, 1), (1, 0, -1)]), &p(&[(0, 1, 1)])).unwrap();
        assert_eq!(r, p(&[(1, 0, -1)]));
    }

    #[test]
    fn degenerate_when_both_free_of_y() {
        assert!(resultant_y(&p(&[(1, 0, 1)]), &p(&[(0, 0, 2)])).is_err());
    }

    #[test]
    fn exact_division_cases() {
        let one_minus_y = p(&[(0, 0, 1), (0, 1, -1)]);
        assert_eq!(
            exact_divide(&p(&[(0, 0, 1), (0, 2, -1)]), &one_minus_y),
            Some(p(&[(0, 0, 1), (0, 1, 1)]))
        );
        assert_eq!(
            exact_divide(&p(&[(2, 0, 1), (2, 2, -1)]), &one_minus_y),
            Some(p(&[(2, 0, 1), (2, 1, 1)]))
        );
        assert_eq!(exact_divide(&BiPoly::x(), &BiPoly::y()), None);
        assert_eq!(exact_divide(&BiPoly::zero(), &BiPoly::y()), Some(BiPoly::zero()));
    }
}
