//! JSON report builders. Exact scalars are strings (`"p/q"` or
//! `"p/q+r/s i"`); floating values are `[re, im]` pairs.

use serde_json::{json, Map, Value};

use crate::asymptotic::{AsymptoticCurve, U0Value};
use crate::classify::{GoodMapReport, NzcVerdict};
use crate::coeff::{BiPoly, ComplexF, GaussRat, Var};
use crate::dominance::{DominanceReport, Fiber};
use crate::elimination::TagPoly;
use crate::mapio::render_poly;
use crate::numeric::LimitReport;
use crate::pertinent::{ClassReport, PertinentFamily, Recognition, RefutationCertificate};
use crate::search::SweepReport;
use crate::PolyMap;

pub fn scalar(c: &GaussRat) -> Value {
    Value::String(c.to_exact_string())
}

pub fn complex(z: ComplexF) -> Value {
    json!([z.re, z.im])
}

/// `{"text": ..., "terms": [[i, j, "c"], ...]}`, terms in descending order.
pub fn poly(p: &BiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(e, c)| json!([e.x, e.y, c.to_exact_string()]))
        .collect();
    json!({"text": render_poly(p), "terms": terms})
}

pub fn tag_poly(e: &TagPoly) -> Value {
    Value::String(e.to_string())
}

pub fn map(m: &PolyMap, name: Option<&str>) -> Value {
    json!({"name": name, "f": poly(&m.f), "g": poly(&m.g)})
}

pub fn good(g: &GoodMapReport) -> Value {
    json!({
        "is_good": g.is_good,
        "alpha": scalar(&g.alpha),
        "beta": scalar(&g.beta),
        "alpha_prime": scalar(&g.alpha_prime),
        "beta_prime": scalar(&g.beta_prime),
        "linear_det": scalar(&g.linear_det),
        "violations": serde_json::to_value(&g.violations).expect("violations serialize"),
    })
}

pub fn nzc(v: &NzcVerdict) -> Value {
    json!({
        "holds": v.holds,
        "det": poly(&v.det),
        "constant_value": v.constant_value.as_ref().map(scalar),
    })
}

pub fn family(f: &PertinentFamily) -> Value {
    json!({"orientation": f.orientation.label(), "r": f.r, "s": f.s, "N": f.n})
}

pub fn recognition(r: &Recognition) -> Value {
    json!({
        "family": family(&r.family),
        "E_f": tag_poly(&r.e_f),
        "E_g": tag_poly(&r.e_g),
        "uses_U0": r.uses_u0,
        "uses_U1": r.uses_u1,
    })
}

/// The `class` object. `orientation`, `r`, `s`, `N` describe the
/// recognition that decides the label (first `r = 1` success for C2).
pub fn class(rep: &ClassReport) -> Value {
    let primary = rep
        .first_with_r1(true)
        .or_else(|| rep.recognitions.first());
    let mut obj = Map::new();
    obj.insert("class".into(), json!(rep.label.as_str()));
    obj.insert("orientation".into(), json!(primary.map(|p| p.family.orientation.label())));
    obj.insert("r".into(), json!(primary.map(|p| p.family.r)));
    obj.insert("s".into(), json!(primary.map(|p| p.family.s)));
    obj.insert("N".into(), json!(primary.map(|p| p.family.n)));
    obj.insert(
        "recognitions".into(),
        Value::Array(rep.recognitions.iter().map(recognition).collect()),
    );
    obj.insert(
        "undecided".into(),
        Value::Array(rep.undecided().map(family).collect()),
    );
    obj.insert("candidates_tested".into(), json!(rep.candidates.len()));
    Value::Object(obj)
}

fn coefficient_list(p: &BiPoly) -> Value {
    // coefficients of z^0, z^1, ... ; each is exact, possibly in zeta
    let coeffs = p.coeffs_in(Var::X);
    Value::Array(
        coeffs
            .iter()
            .map(|c| match c.as_constant() {
                Some(k) => scalar(&k),
                None => Value::String(render_poly(c).replace('y', "zeta")),
            })
            .collect(),
    )
}

pub fn curve(c: &AsymptoticCurve) -> Value {
    let u0 = match &c.u0 {
        U0Value::Zero => json!("0"),
        U0Value::Exact { value, .. } => scalar(value),
        U0Value::Symbolic { k } => json!(format!("exp(2*pi*i*{k}/{})", c.root_order)),
    };
    json!({
        "family": family(&c.family),
        "branch_index": c.branch_index,
        "root_order": c.root_order,
        "U0": u0,
        "extension": c.extension,
        "P": coefficient_list(&c.p),
        "Q": coefficient_list(&c.q),
        "P_text": render_poly(&c.p).replace('x', "z").replace('y', "zeta"),
        "Q_text": render_poly(&c.q).replace('x', "z").replace('y', "zeta"),
    })
}

pub fn curves(cs: &[AsymptoticCurve]) -> Value {
    Value::Array(cs.iter().map(curve).collect())
}

pub fn certificate(c: &RefutationCertificate) -> Value {
    json!({
        "family": family(&c.family),
        "divisor": poly(&c.divisor),
        "q_f": poly(&c.q_f),
        "q_g": poly(&c.q_g),
        "q_det": poly(&c.q_det),
    })
}

pub fn fiber(f: &Fiber) -> Value {
    json!({
        "target": [complex(f.target.0), complex(f.target.1)],
        "points": f.points.iter().map(|p| json!([complex(p.0), complex(p.1)])).collect::<Vec<_>>(),
        "residuals": f.residuals,
    })
}

pub fn dominance(d: &DominanceReport) -> Value {
    json!({
        "samples": d.samples,
        "nonempty_fibers": d.nonempty_fibers,
        "empty_fibers": d.empty_fibers,
        "skipped_near_SF": d.skipped_near_sf,
        "solver_failures": d.solver_failures,
        "seed": d.seed,
        "dominant_consistent": d.dominant_consistent,
    })
}

pub fn limit(l: &LimitReport) -> Value {
    serde_json::to_value(l).expect("limit report serializes")
}

pub fn sweep(s: &SweepReport) -> Value {
    serde_json::to_value(s).expect("sweep report serializes")
}

/// The top-level report object with keys `map`, `good`, `class`,
/// `asymptotic`, `dominance`; sections not computed are `null`.
pub fn full(
    m: &PolyMap,
    name: Option<&str>,
    good_report: &GoodMapReport,
    class_report: Option<&ClassReport>,
    asymptotic: Option<&[AsymptoticCurve]>,
    dominance_report: Option<&DominanceReport>,
) -> Value {
    json!({
        "map": map(m, name),
        "good": good(good_report),
        "class": class_report.map(class),
        "asymptotic": asymptotic.map(curves),
        "dominance": dominance_report.map(dominance),
    })
}
