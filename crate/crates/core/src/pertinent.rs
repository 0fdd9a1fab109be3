//! Pertinent-variable families, rewriting maps into them, C1/C2
//! recognition and the exact refutation machinery for `r = 1`.
//!
//! For the x-dominant orientation the generators are `u_0 = y` and
//! `u_i = x^i - x^{ir} y^{is}`, `i = 1..N`; the y-dominant family is the
//! mirror image. A map is recognized under a family when both components
//! lie in the subalgebra `C[u_0, ..., u_N]` and both rewrites use `u_0`
//! and `u_1`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{check_good, GoodMapReport};
use crate::coeff::{BiPoly, GaussRat, UniPoly, Var};
use crate::elimination::{
    exact_divide, groebner_basis, normal_form, MonomialOrder, ResourceGuard, TagPoly,
};
use crate::error::{Error, Result};
use crate::PolyMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "X_DOMINANT")]
    XDominant,
    #[serde(rename = "Y_DOMINANT")]
    YDominant,
}

impl Orientation {
    /// The variable that tends to infinity along the family's sequences.
    pub fn dominant(self) -> Var {
        match self {
            Orientation::XDominant => Var::X,
            Orientation::YDominant => Var::Y,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Orientation::XDominant => "X_DOMINANT",
            Orientation::YDominant => "Y_DOMINANT",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A family of pertinent generators `u_0, ..., u_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PertinentFamily {
    pub orientation: Orientation,
    pub r: u32,
    pub s: u32,
    /// top index `N`
    pub n: u32,
}

impl PertinentFamily {
    /// Validates `r, s, N >= 1` and, for `r >= 2`, `gcd(r - 1, s) = 1`.
    pub fn new(orientation: Orientation, r: u32, s: u32, n: u32) -> Result<Self> {
        let fam = PertinentFamily::new_unchecked_gcd(orientation, r, s, n)?;
        if r >= 2 && (r - 1).gcd(&s) != 1 {
            return Err(Error::InvalidFamily(format!(
                "gcd(r - 1, s) = gcd({}, {s}) != 1",
                r - 1
            )));
        }
        Ok(fam)
    }

    /// Like [`PertinentFamily::new`] without the coprimality constraint.
    pub fn new_unchecked_gcd(orientation: Orientation, r: u32, s: u32, n: u32) -> Result<Self> {
        if r == 0 || s == 0 || n == 0 {
            return Err(Error::InvalidFamily(format!(
                "r, s, N must be positive (got r={r}, s={s}, N={n})"
            )));
        }
        Ok(PertinentFamily {
            orientation,
            r,
            s,
            n,
        })
    }

    pub fn n_tags(&self) -> usize {
        self.n as usize + 1
    }

    pub fn is_c2(&self) -> bool {
        self.r == 1
    }

    /// Same exponents, x-dominant orientation.
    pub fn as_x_dominant(&self) -> PertinentFamily {
        PertinentFamily {
            orientation: Orientation::XDominant,
            ..*self
        }
    }

    /// `u_i` for `0 <= i <= N`.
    pub fn generator(&self, i: u32) -> BiPoly {
        let p = if i == 0 {
            BiPoly::y()
        } else {
            BiPoly::from_int_terms(&[(i, 0, 1), (i * self.r, i * self.s, -1)])
        };
        match self.orientation {
            Orientation::XDominant => p,
            Orientation::YDominant => p.swap_xy(),
        }
    }

    pub fn generators(&self) -> Vec<BiPoly> {
        (0..=self.n).map(|i| self.generator(i)).collect()
    }

    /// The exact factor `1 - y^s` (mirrored: `1 - x^s`) dividing the
    /// dominant-variable derivative of every map in a `r = 1` family.
    pub fn c2_divisor(&self) -> BiPoly {
        let d = BiPoly::from_int_terms(&[(0, 0, 1), (0, self.s, -1)]);
        match self.orientation {
            Orientation::XDominant => d,
            Orientation::YDominant => d.swap_xy(),
        }
    }
}

impl fmt::Display for PertinentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, r={}, s={}, N={})", self.orientation, self.r, self.s, self.n)
    }
}

/// Generator list `u_0 .. u_N` of a family.
pub fn family_generators(family: &PertinentFamily) -> Vec<BiPoly> {
    family.generators()
}

/// A successful rewrite of both components in a family's tag variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Recognition {
    pub family: PertinentFamily,
    pub e_f: TagPoly,
    pub e_g: TagPoly,
    /// `[f uses U_0, g uses U_0]`
    pub uses_u0: [bool; 2],
    /// `[f uses U_1, g uses U_1]`
    pub uses_u1: [bool; 2],
}

impl Recognition {
    /// Substitutes the generators back into both tag forms.
    pub fn substitute(&self) -> PolyMap {
        let gens = self.family.generators();
        PolyMap::new(self.e_f.substitute_tags(&gens), self.e_g.substitute_tags(&gens))
    }

    /// Largest tag index `i >= 1` used by either component.
    pub fn branch_index(&self) -> Option<u32> {
        let top = |e: &TagPoly| e.max_tag_used().filter(|&i| i >= 1);
        top(&self.e_f).max(top(&self.e_g)).map(|i| i as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    #[serde(rename = "NOT_C1")]
    NotC1,
    #[serde(rename = "C1_MINUS_C2")]
    C1MinusC2,
    #[serde(rename = "C2")]
    C2,
    /// Some candidate exceeded the elimination resource cap and no
    /// candidate settled the label.
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::NotC1 => "NOT_C1",
            ClassLabel::C1MinusC2 => "C1_MINUS_C2",
            ClassLabel::C2 => "C2",
            ClassLabel::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of testing one `(orientation, r, s)` candidate.
#[derive(Clone, Debug, PartialEq)]
pub enum CandidateOutcome {
    /// Rejected by the root-of-unity specialization before elimination.
    Prefiltered,
    /// At least one component is not in the subalgebra.
    NotMember,
    /// Both components are members but a rewrite misses `U_0` or `U_1`.
    MissingRequiredTags,
    Recognized(Box<Recognition>),
    /// Elimination exceeded the resource cap.
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateRecord {
    pub family: PertinentFamily,
    pub outcome: CandidateOutcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub good: GoodMapReport,
    pub recognitions: Vec<Recognition>,
    pub candidates: Vec<CandidateRecord>,
    pub label: ClassLabel,
}

impl ClassReport {
    pub fn undecided(&self) -> impl Iterator<Item = &PertinentFamily> {
        self.candidates
            .iter()
            .filter(|c| c.outcome == CandidateOutcome::Undecided)
            .map(|c| &c.family)
    }

    /// The first recognition in `(orientation, r, s)` order with the given
    /// C2-ness.
    pub fn first_with_r1(&self, r_is_one: bool) -> Option<&Recognition> {
        self.recognitions.iter().find(|r| r.family.is_c2() == r_is_one)
    }
}

/// Search limits for [`recognize`]. `None` picks the degree-based defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct RecognizeBounds {
    pub r_max: Option<u32>,
    pub s_max: Option<u32>,
    pub guard: ResourceGuard,
}

/// Exact necessary condition for membership of `p` in the x-dominant
/// subalgebra: on the Laurent curve `x = t^s, y = z t^{1-r}` with `z^s = 1`
/// every `u_i` (`i >= 1`) vanishes and `u_0 = z t^{1-r}`, so `p` must
/// collapse to a polynomial in `z t^{1-r}` there. Checked in
/// `Q(i)[z] / (z^s - 1)`.
pub fn specialization_filter(p: &BiPoly, r: u32, s: u32) -> bool {
    // tau exponent -> coefficients of z^0 .. z^{s-1}
    let mut buckets: BTreeMap<i64, Vec<GaussRat>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let tau = s as i64 * e.x as i64 - (r as i64 - 1) * e.y as i64;
        let slot = buckets
            .entry(tau)
            .or_insert_with(|| vec![GaussRat::zero(); s as usize]);
        slot[(e.y % s) as usize] += c;
    }
    for (tau, coeffs) in buckets {
        let nonzero: Vec<usize> = (0..s as usize).filter(|&j| !coeffs[j].is_zero()).collect();
        if nonzero.is_empty() {
            continue;
        }
        if r == 1 {
            if tau != 0 {
                return false;
            }
            continue;
        }
        let step = r as i64 - 1;
        if tau > 0 || (-tau) % step != 0 {
            return false;
        }
        let k = (-tau) / step;
        if nonzero != [(k % s as i64) as usize] {
            return false;
        }
    }
    true
}

/// Membership test for both components under one x-dominant family.
fn test_candidate_x(map: &PolyMap, family: PertinentFamily, guard: &ResourceGuard) -> CandidateOutcome {
    debug_assert_eq!(family.orientation, Orientation::XDominant);
    if !specialization_filter(&map.f, family.r, family.s)
        || !specialization_filter(&map.g, family.r, family.s)
    {
        return CandidateOutcome::Prefiltered;
    }
    let n_tags = family.n_tags();
    let gens: Vec<TagPoly> = family
        .generators()
        .iter()
        .enumerate()
        .map(|(i, u)| &TagPoly::tag(n_tags, i) - &TagPoly::from_bipoly(u, n_tags))
        .collect();
    let order = MonomialOrder::Elimination;
    let outcome = groebner_basis(&gens, order, guard).and_then(|basis| {
        let e_f = normal_form(&TagPoly::from_bipoly(&map.f, n_tags), &basis, order, guard)?;
        let e_g = normal_form(&TagPoly::from_bipoly(&map.g, n_tags), &basis, order, guard)?;
        Ok((e_f, e_g))
    });
    let (e_f, e_g) = match outcome {
        Ok(v) => v,
        Err(Error::ResourceCap { .. }) => return CandidateOutcome::Undecided,
        Err(e) => panic!("elimination failed unexpectedly: {e}"),
    };
    if !e_f.is_tag_only() || !e_g.is_tag_only() {
        return CandidateOutcome::NotMember;
    }
    let uses_u0 = [e_f.uses_tag(0), e_g.uses_tag(0)];
    let uses_u1 = [e_f.uses_tag(1), e_g.uses_tag(1)];
    let rec = Recognition {
        family,
        e_f,
        e_g,
        uses_u0,
        uses_u1,
    };
    assert_eq!(
        rec.substitute(),
        *map,
        "normal form does not substitute back to the map"
    );
    if uses_u0.contains(&false) || uses_u1.contains(&false) {
        return CandidateOutcome::MissingRequiredTags;
    }
    CandidateOutcome::Recognized(Box::new(rec))
}

/// Candidate families for one orientation, in `(r, s)` order.
pub fn candidate_families(map: &PolyMap, orientation: Orientation, bounds: &RecognizeBounds) -> Vec<PertinentFamily> {
    let frame = match orientation {
        Orientation::XDominant => map.clone(),
        Orientation::YDominant => map.mirrored(),
    };
    let (Some(df), Some(dg)) = (frame.f.degrees(), frame.g.degrees()) else {
        return Vec::new();
    };
    let n = df.pure_x.unwrap_or(0).max(dg.pure_x.unwrap_or(0));
    if n == 0 {
        return Vec::new();
    }
    let r_max = bounds.r_max.unwrap_or(df.in_x.max(dg.in_x));
    let s_max = bounds.s_max.unwrap_or(df.in_y.max(dg.in_y));
    let mut out = Vec::new();
    for r in 1..=r_max {
        for s in 1..=s_max {
            if let Ok(f) = PertinentFamily::new(orientation, r, s, n) {
                out.push(f);
            }
        }
    }
    out
}

/// Tests one family (either orientation) against the map.
pub fn test_family(map: &PolyMap, family: PertinentFamily, guard: &ResourceGuard) -> CandidateOutcome {
    match family.orientation {
        Orientation::XDominant => test_candidate_x(map, family, guard),
        Orientation::YDominant => {
            match test_candidate_x(&map.mirrored(), family.as_x_dominant(), guard) {
                CandidateOutcome::Recognized(mut rec) => {
                    rec.family = family;
                    CandidateOutcome::Recognized(rec)
                }
                other => other,
            }
        }
    }
}

/// Classifies a map: good-map test plus pertinent-variable recognition over
/// all admissible `(orientation, r, s)` within `bounds`.
pub fn recognize(map: &PolyMap, bounds: &RecognizeBounds) -> ClassReport {
    let good = check_good(map);
    let mut families = candidate_families(map, Orientation::XDominant, bounds);
    families.extend(candidate_families(map, Orientation::YDominant, bounds));
    let candidates: Vec<CandidateRecord> = families
        .par_iter()
        .map(|&family| CandidateRecord {
            family,
            outcome: test_family(map, family, &bounds.guard),
        })
        .collect();
    let recognitions: Vec<Recognition> = candidates
        .iter()
        .filter_map(|c| match &c.outcome {
            CandidateOutcome::Recognized(r) => Some((**r).clone()),
            _ => None,
        })
        .collect();
    let any_undecided = candidates
        .iter()
        .any(|c| c.outcome == CandidateOutcome::Undecided);
    let label = if !good.is_good {
        ClassLabel::NotC1
    } else if recognitions.iter().any(|r| r.family.is_c2()) {
        ClassLabel::C2
    } else if any_undecided {
        ClassLabel::Undecided
    } else if !recognitions.is_empty() {
        ClassLabel::C1MinusC2
    } else {
        ClassLabel::NotC1
    };
    ClassReport {
        good,
        recognitions,
        candidates,
        label,
    }
}

/// Divisibility certificate that a map rewritten under an `r = 1` family
/// fails the Non-Zero Condition: both dominant-variable derivatives, and
/// hence the Jacobian determinant, carry the factor `1 - y^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct RefutationCertificate {
    pub family: PertinentFamily,
    pub divisor: BiPoly,
    pub q_f: BiPoly,
    pub q_g: BiPoly,
    /// `det JF / divisor`
    pub q_det: BiPoly,
}

impl RefutationCertificate {
    /// Recomposes `divisor * q` and compares with the derivatives.
    pub fn verify(&self, map: &PolyMap) -> bool {
        let v = self.family.orientation.dominant();
        let det = crate::classify::jacobian_det(map);
        &self.divisor * &self.q_f == map.f.partial(v)
            && &self.divisor * &self.q_g == map.g.partial(v)
            && &self.divisor * &self.q_det == det
    }
}

pub fn c2_refute(map: &PolyMap, family: &PertinentFamily) -> Result<RefutationCertificate> {
    if family.r != 1 {
        return Err(Error::InvalidFamily(format!(
            "refutation needs r = 1, got r = {}",
            family.r
        )));
    }
    let v = family.orientation.dominant();
    let divisor = family.c2_divisor();
    let divide = |p: &BiPoly, what: &str| {
        exact_divide(p, &divisor).ok_or_else(|| {
            Error::Internal(format!("{what} is not divisible by {divisor}"))
        })
    };
    let q_f = divide(&map.f.partial(v), "dominant derivative of f")?;
    let q_g = divide(&map.g.partial(v), "dominant derivative of g")?;
    let q_det = divide(&crate::classify::jacobian_det(map), "det JF")?;
    Ok(RefutationCertificate {
        family: *family,
        divisor,
        q_f,
        q_g,
        q_det,
    })
}

/// Result of deciding whether `du_1/dx = ... = du_n/dx = 0` has a
/// solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub solvable: bool,
    pub witness: Option<String>,
}

/// Decides solvability of the derivative system of the x-dominant family
/// `(r, s)` with `n` generators.
///
/// Every equation factors exactly as `i x^{i-1} (1 - r w^i)` with
/// `w = x^{r-1} y^s`. On `x != 0` the system reduces to the univariate
/// system `r w^i = 1`, solvable iff the gcd of those polynomials is not a
/// constant (any `w` is attained by some `x != 0`). On `x = 0` the
/// equations are substituted directly.
pub fn lemma_system_check(r: u32, s: u32, n: u32) -> Result<LemmaVerdict> {
    if r == 0 || s == 0 || n == 0 {
        return Err(Error::InvalidArgument("r, s, n must be positive".into()));
    }
    let family = PertinentFamily::new_unchecked_gcd(Orientation::XDominant, r, s, n)?;
    let rr = GaussRat::from_int(r as i64);
    let w = BiPoly::from_int_terms(&[(r - 1, s, 1)]);
    let mut w_gcd = UniPoly::zero();
    let mut at_zero: Vec<UniPoly> = Vec::new();
    for i in 1..=n {
        let d = family.generator(i).partial(Var::X);
        // exact factorization check
        let factored = &BiPoly::monomial(GaussRat::from_int(i as i64), i - 1, 0)
            * &(&BiPoly::one() - &w.pow(i).scale(&rr));
        if factored != d {
            return Err(Error::Internal(format!("factorization of du_{i}/dx failed")));
        }
        let mut in_w = vec![GaussRat::zero(); i as usize + 1];
        in_w[0] = GaussRat::one();
        in_w[i as usize] = -&rr;
        w_gcd = w_gcd.gcd(&UniPoly::from_coeffs(in_w));

        let mut in_y = vec![GaussRat::zero(); d.degree_in(Var::Y).unwrap_or(0) as usize + 1];
        for (e, c) in d.terms().filter(|(e, _)| e.x == 0) {
            in_y[e.y as usize] = c.clone();
        }
        at_zero.push(UniPoly::from_coeffs(in_y));
    }

    if w_gcd.degree().is_some_and(|d| d >= 1) {
        let witness = if r == 1 {
            format!("(x, z) with z^{s} = 1, x arbitrary nonzero")
        } else {
            let roots = w_gcd.coeffs();
            format!(
                "x^{} y^{s} = w with w a root of {}",
                r - 1,
                crate::mapio::render_poly(&UniPoly::from_coeffs(roots.to_vec()).to_bipoly_x())
                    .replace('x', "w")
            )
        };
        return Ok(LemmaVerdict {
            solvable: true,
            witness: Some(witness),
        });
    }

    // x = 0 branch: common root in y of the specialized equations
    let mut g = UniPoly::zero();
    for p in &at_zero {
        g = g.gcd(p);
    }
    let solvable_at_zero = at_zero.iter().all(UniPoly::is_zero) || g.degree().is_some_and(|d| d >= 1);
    Ok(LemmaVerdict {
        solvable: solvable_at_zero,
        witness: solvable_at_zero.then(|| "x = 0".to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapio::parse_poly;

    fn map(f: &str, g: &str) -> PolyMap {
        PolyMap::new(parse_poly(f).unwrap(), parse_poly(g).unwrap())
    }

    #[test]
    fn generator_templates() {
        let fam = PertinentFamily::new(Orientation::XDominant, 1, 1, 3).unwrap();
        let expect: Vec<BiPoly> = ["y", "x - x*y", "x^2 - x^2*y^2", "x^3 - x^3*y^3"]
            .iter()
            .map(|s| parse_poly(s).unwrap())
            .collect();
        assert_eq!(family_generators(&fam), expect);

        let fam = PertinentFamily::new(Orientation::XDominant, 2, 1, 1).unwrap();
        assert_eq!(fam.generators()[1], parse_poly("x - x^2*y").unwrap());

        let fam = PertinentFamily::new(Orientation::YDominant, 2, 3, 2).unwrap();
        let expect: Vec<BiPoly> = ["x", "y - y^2*x^3", "y^2 - y^4*x^6"]
            .iter()
            .map(|s| parse_poly(s).unwrap())
            .collect();
        assert_eq!(fam.generators(), expect);
    }

    #[test]
    fn invalid_families_rejected() {
        assert!(PertinentFamily::new(Orientation::XDominant, 3, 2, 1).is_err());
        assert!(PertinentFamily::new(Orientation::XDominant, 0, 1, 1).is_err());
        assert!(PertinentFamily::new_unchecked_gcd(Orientation::XDominant, 3, 2, 1).is_ok());
    }

    #[test]
    fn specialization_filter_cases() {
        let f = parse_poly("y + x - x^2*y").unwrap();
        assert!(specialization_filter(&f, 2, 1));
        assert!(!specialization_filter(&f, 1, 1));
        let e = parse_poly("x + y - x*y").unwrap();
        assert!(specialization_filter(&e, 1, 1));
        assert!(!specialization_filter(&e, 1, 2));
        assert!(!specialization_filter(&e, 2, 1));
    }

    #[test]
    fn recognizes_reference_map() {
        let m = map("y + x - x^2*y", "2*y + x - x^2*y");
        let rep = recognize(&m, &RecognizeBounds::default());
        assert_eq!(rep.label, ClassLabel::C1MinusC2);
        assert_eq!(rep.recognitions.len(), 1);
        let rec = &rep.recognitions[0];
        assert_eq!(
            rec.family,
            PertinentFamily::new(Orientation::XDominant, 2, 1, 1).unwrap()
        );
        let u = |i| TagPoly::tag(2, i);
        assert_eq!(rec.e_f, &u(0) + &u(1));
        assert_eq!(rec.e_g, &u(0).scale(&2.into()) + &u(1));
    }

    #[test]
    fn linear_map_is_not_c1() {
        let rep = recognize(&map("x + y", "x - y"), &RecognizeBounds::default());
        assert_eq!(rep.label, ClassLabel::NotC1);
        assert!(!rep.good.is_good);
    }

    #[test]
    fn c2_refutation_certificates() {
        let fam = PertinentFamily::new(Orientation::XDominant, 1, 1, 6).unwrap();
        let m = map(
            "x + y - x*y",
            "x + 2*y - x*y^2 - 3*x^6 + 6*x^6*y^3 - 3*x^6*y^6",
        );
        let cert = c2_refute(&m, &fam).unwrap();
        assert!(cert.verify(&m));
        assert_eq!(cert.q_f, BiPoly::one());
        let det = crate::classify::jacobian_det(&m);
        assert!(det.eval(&2.into(), &1.into()).is_zero());

        let fam2 = PertinentFamily::new(Orientation::XDominant, 1, 2, 1).unwrap();
        let m2 = map("y + x - x*y^2", "2*y + x - x*y^2");
        let cert = c2_refute(&m2, &fam2).unwrap();
        assert_eq!(cert.q_f, BiPoly::one());
        assert!(c2_refute(&m2, &PertinentFamily::new(Orientation::XDominant, 2, 1, 1).unwrap()).is_err());
    }

    #[test]
    fn c2_refutation_mirrored() {
        let fam = PertinentFamily::new(Orientation::YDominant, 1, 1, 1).unwrap();
        let m = map("x + y - x*y", "2*x + y - x*y").mirrored().mirrored();
        let cert = c2_refute(&m, &fam).unwrap();
        assert!(cert.verify(&m));
    }

    #[test]
    fn lemma_small_cases() {
        let v = lemma_system_check(1, 1, 3).unwrap();
        assert!(v.solvable);
        assert!(v.witness.unwrap().contains("z^1 = 1"));
        assert!(!lemma_system_check(2, 1, 2).unwrap().solvable);
        assert!(!lemma_system_check(3, 2, 5).unwrap().solvable);
        // a single equation 1 - r x^{r-1} y^s = 0 always has solutions
        assert!(lemma_system_check(2, 1, 1).unwrap().solvable);
    }

    #[test]
    fn lemma_grid_law() {
        for r in 1..=6 {
            for s in 1..=6 {
                for n in 1..=6 {
                    let v = lemma_system_check(r, s, n).unwrap();
                    assert_eq!(v.solvable, r == 1 || n == 1, "r={r} s={s} n={n}");
                }
            }
        }
    }
}
