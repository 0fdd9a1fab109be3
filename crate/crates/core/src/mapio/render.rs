use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{BiPoly, GaussRat};

fn rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn imag_literal(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", rat(im))
    }
}

/// Splits a coefficient into a sign and a printable body for the term
/// `c * factors`, e.g. `(-3, ["x^2"])` becomes `(true, "3*x^2")`.
pub(crate) fn signed_term(c: &GaussRat, factors: &[String]) -> (bool, String) {
    let (neg, coef) = if c.im.is_zero() {
        let neg = c.re.is_negative();
        let mag = c.re.abs();
        let s = if mag.is_one() && !factors.is_empty() {
            None
        } else {
            Some(rat(&mag))
        };
        (neg, s)
    } else if c.re.is_zero() {
        (c.im.is_negative(), Some(imag_literal(&c.im.abs())))
    } else {
        let sign = if c.im.is_negative() { " - " } else { " + " };
        (
            false,
            Some(format!("({}{}{})", rat(&c.re), sign, imag_literal(&c.im.abs()))),
        )
    };
    let mut parts: Vec<String> = coef.into_iter().collect();
    parts.extend(factors.iter().cloned());
    (neg, parts.join("*"))
}

/// Canonical text form: terms in descending graded-lex order (x before y),
/// `*` between factors, e.g. `x^2*y - x + 2*i`.
pub fn render_poly(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let mut factors = Vec::new();
        match e.x {
            0 => {}
            1 => factors.push("x".to_string()),
            n => factors.push(format!("x^{n}")),
        }
        match e.y {
            0 => {}
            1 => factors.push("y".to_string()),
            n => factors.push(format!("y^{n}")),
        }
        let (neg, body) = signed_term(c, &factors);
        match (k == 0, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

/// Renders a scalar in expression syntax (parseable by the map grammar).
pub fn render_scalar(c: &GaussRat) -> String {
    render_poly(&BiPoly::constant(c.clone()))
}
