//! Jacobian determinant, the Non-Zero Condition and good-map classification.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{BiPoly, GaussRat, Var};
use crate::PolyMap;

/// Which of the four linear coefficients of `f = a x + b y + ...`,
/// `g = a' x + b' y + ...` is missing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearTerm {
    Alpha,
    Beta,
    AlphaPrime,
    BetaPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "which")]
pub enum Violation {
    DegFLeOne,
    DegGLeOne,
    MissingLinearTerm(LinearTerm),
    DeterminantZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoodMapReport {
    pub is_good: bool,
    pub alpha: GaussRat,
    pub beta: GaussRat,
    pub alpha_prime: GaussRat,
    pub beta_prime: GaussRat,
    /// `alpha * beta' - alpha' * beta`
    pub linear_det: GaussRat,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NzcVerdict {
    pub holds: bool,
    pub det: BiPoly,
    pub constant_value: Option<GaussRat>,
}

/// `f_x g_y - f_y g_x`.
pub fn jacobian_det(map: &PolyMap) -> BiPoly {
    let fx = map.f.partial(Var::X);
    let fy = map.f.partial(Var::Y);
    let gx = map.g.partial(Var::X);
    let gy = map.g.partial(Var::Y);
    &(&fx * &gy) - &(&fy * &gx)
}

/// Exact Non-Zero Condition: the determinant is a single nonzero constant
/// term.
pub fn check_nzc(map: &PolyMap) -> NzcVerdict {
    let det = jacobian_det(map);
    let constant_value = det.as_constant();
    let holds = constant_value.as_ref().is_some_and(|c| !c.is_zero());
    NzcVerdict {
        holds,
        det,
        constant_value,
    }
}

/// Good-map test: `deg f > 1`, `deg g > 1`, all four linear coefficients
/// nonzero and `alpha beta' - alpha' beta != 0`. Every violation is listed.
pub fn check_good(map: &PolyMap) -> GoodMapReport {
    let alpha = map.f.coeff(1, 0);
    let beta = map.f.coeff(0, 1);
    let alpha_prime = map.g.coeff(1, 0);
    let beta_prime = map.g.coeff(0, 1);
    let linear_det = &(&alpha * &beta_prime) - &(&alpha_prime * &beta);

    let mut violations = Vec::new();
    if map.f.total_degree().is_none_or(|d| d <= 1) {
        violations.push(Violation::DegFLeOne);
    }
    if map.g.total_degree().is_none_or(|d| d <= 1) {
        violations.push(Violation::DegGLeOne);
    }
    for (c, which) in [
        (&alpha, LinearTerm::Alpha),
        (&beta, LinearTerm::Beta),
        (&alpha_prime, LinearTerm::AlphaPrime),
        (&beta_prime, LinearTerm::BetaPrime),
    ] {
        if c.is_zero() {
            violations.push(Violation::MissingLinearTerm(which));
        }
    }
    if linear_det.is_zero() {
        violations.push(Violation::DeterminantZero);
    }
    GoodMapReport {
        is_good: violations.is_empty(),
        alpha,
        beta,
        alpha_prime,
        beta_prime,
        linear_det,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapio::parse_poly;

    fn map(f: &str, g: &str) -> PolyMap {
        PolyMap::new(parse_poly(f).unwrap(), parse_poly(g).unwrap())
    }

    #[test]
    fn linear_maps() {
        assert_eq!(jacobian_det(&map("x + y", "x + 2*y")), BiPoly::one());
        let v = check_nzc(&map("x + y", "x - y"));
        assert!(v.holds);
        assert_eq!(v.constant_value, Some(GaussRat::from_int(-2)));
        let v = check_nzc(&map("x", "x"));
        assert!(!v.holds);
        assert!(v.det.is_zero());
    }

    #[test]
    fn reference_map_fails_nzc() {
        let v = check_nzc(&map("y + x - x^2*y", "2*y + x - x^2*y"));
        assert!(!v.holds);
        assert_eq!(v.det, parse_poly("1 - 2*x*y").unwrap());
        assert_eq!(v.constant_value, None);
    }

    #[test]
    fn linear_family_determinant() {
        // (a U0 + b U1, c U0 + d U1) with U0 = y, U1 = x - x^2 y
        for a in [1i64, -1] {
            for b in [1i64, -1] {
                for c in [1i64, -1] {
                    for d in [1i64, -1] {
                        let u0 = BiPoly::y();
                        let u1 = parse_poly("x - x^2*y").unwrap();
                        let f = &u0.scale(&a.into()) + &u1.scale(&b.into());
                        let g = &u0.scale(&c.into()) + &u1.scale(&d.into());
                        let det = jacobian_det(&PolyMap::new(f, g));
                        let expect = parse_poly("1 - 2*x*y")
                            .unwrap()
                            .scale(&GaussRat::from_int(b * c - a * d));
                        assert_eq!(det, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn good_map_classification() {
        let r = check_good(&map(
            "x + y - x*y",
            "x + 2*y - x*y^2 - 3*x^6 + 6*x^6*y^3 - 3*x^6*y^6",
        ));
        assert!(r.is_good);
        assert_eq!(
            [r.alpha, r.beta, r.alpha_prime, r.beta_prime],
            [1i64, 1, 1, 2].map(GaussRat::from_int)
        );
        assert_eq!(r.linear_det, GaussRat::from_int(1));

        let r = check_good(&map("x + y", "2*x + 2*y + x^2"));
        assert!(!r.is_good);
        assert!(r.violations.contains(&Violation::DeterminantZero));

        let r = check_good(&map("x^2 + y^2", "x + y"));
        assert!(r.violations.contains(&Violation::MissingLinearTerm(LinearTerm::Alpha)));
        assert!(r.violations.contains(&Violation::MissingLinearTerm(LinearTerm::Beta)));
        assert!(r.violations.contains(&Violation::DegGLeOne));
    }

    #[test]
    fn swapping_components_flips_the_constant() {
        let m = map("x + y + y^2", "y");
        let a = check_nzc(&m);
        let b = check_nzc(&m.swapped());
        assert_eq!(a.holds, b.holds);
        assert_eq!(a.constant_value.map(|c| -c), b.constant_value);
    }
}
