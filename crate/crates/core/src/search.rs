//! Bounded sweeps over the pertinent-variable model.
//!
//! A candidate is a pair of tag expressions `E_f, E_g` of the shape
//! `a U_0 + b U_1 [+ c m]` with `m` an extra tag monomial, expanded under a
//! family. The model sweep (`r >= 2`) looks for maps satisfying the
//! Non-Zero Condition; the C2 sweep (`r = 1`) additionally certifies every
//! candidate's failure by divisibility.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{check_good, check_nzc, Violation};
use crate::coeff::{BiPoly, GaussRat};
use crate::elimination::TagPoly;
use crate::error::{Error, Result};
use crate::mapio::render_poly;
use crate::pertinent::{c2_refute, Orientation, PertinentFamily};
use crate::PolyMap;

/// Candidates evaluated between two checkpoint writes.
pub const CHECKPOINT_CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// `r >= 2`: the model sweep.
    Model,
    /// `r = 1`.
    C2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeSet {
    /// `a U_0 + b U_1` only.
    Linear,
    /// `a U_0 + b U_1` plus at most one extra monomial of tag-degree
    /// `1..=d` (other than `U_0`, `U_1`).
    UpToDegree(u32),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub mode: SweepMode,
    pub orientations: Vec<Orientation>,
    pub n_max: u32,
    /// upper bound on `r` (ignored in C2 mode)
    pub r_max: u32,
    pub s_max: u32,
    pub coeffs: Vec<GaussRat>,
    pub shapes: ShapeSet,
    /// admit `(r, s)` with `gcd(r - 1, s) != 1`
    pub lift_gcd: bool,
}

impl SearchBounds {
    pub fn model(r_max: u32, s_max: u32, n_max: u32, coeffs: Vec<GaussRat>) -> Self {
        SearchBounds {
            mode: SweepMode::Model,
            orientations: vec![Orientation::XDominant],
            n_max,
            r_max,
            s_max,
            coeffs,
            shapes: ShapeSet::UpToDegree(2),
            lift_gcd: false,
        }
    }

    pub fn c2(s_max: u32, n_max: u32, coeffs: Vec<GaussRat>) -> Self {
        SearchBounds {
            mode: SweepMode::C2,
            r_max: 1,
            ..SearchBounds::model(1, s_max, n_max, coeffs)
        }
    }

    pub fn with_shapes(mut self, shapes: ShapeSet) -> Self {
        self.shapes = shapes;
        self
    }

    /// Families in sweep order `(orientation, r, s, N)`.
    pub fn families(&self) -> Vec<PertinentFamily> {
        let rs: Vec<u32> = match self.mode {
            SweepMode::C2 => vec![1],
            SweepMode::Model => (2..=self.r_max).collect(),
        };
        let mut orientations = self.orientations.clone();
        orientations.sort();
        orientations.dedup();
        let mut out = Vec::new();
        for &o in &orientations {
            for &r in &rs {
                for s in 1..=self.s_max {
                    for n in 1..=self.n_max {
                        let fam = if self.lift_gcd {
                            PertinentFamily::new_unchecked_gcd(o, r, s, n)
                        } else {
                            PertinentFamily::new(o, r, s, n)
                        };
                        if let Ok(f) = fam {
                            out.push(f);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Tag monomials (exponent vectors over `U_0..U_N`) of degree `1..=d`
/// other than `U_0`, `U_1`, by degree then descending exponents.
pub fn extra_monomials(n_tags: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    for deg in 1..=d {
        let mut cur = vec![0; n_tags];
        rec(0, deg, &mut cur, &mut out);
    }
    out.retain(|m| {
        let deg: u32 = m.iter().sum();
        !(deg == 1 && (m[0] == 1 || m[1] == 1))
    });
    out
}

struct FamilyTable {
    family: PertinentFamily,
    exprs: Vec<TagPoly>,
    expansions: Vec<BiPoly>,
    pairs: Vec<(u32, u32)>,
}

impl FamilyTable {
    fn build(family: PertinentFamily, coeffs: &[GaussRat], shapes: ShapeSet) -> Self {
        let n_tags = family.n_tags();
        let gens = family.generators();
        let u0 = TagPoly::tag(n_tags, 0);
        let u1 = TagPoly::tag(n_tags, 1);
        let mut exprs = Vec::new();
        for a in coeffs {
            for b in coeffs {
                exprs.push(&u0.scale(a) + &u1.scale(b));
            }
        }
        let linear = exprs.len();
        if let ShapeSet::UpToDegree(d) = shapes {
            for m in extra_monomials(n_tags, d) {
                for i in 0..linear {
                    for c in coeffs {
                        exprs.push(&exprs[i] + &TagPoly::tag_monomial(c.clone(), &m));
                    }
                }
            }
        }
        let expansions: Vec<BiPoly> = exprs.iter().map(|e| e.substitute_tags(&gens)).collect();
        let top = n_tags - 1;
        let uses_top: Vec<bool> = exprs.iter().map(|e| e.uses_tag(top)).collect();
        let mut pairs = Vec::new();
        for i in 0..exprs.len() {
            for j in 0..exprs.len() {
                // at N >= 2 pairs without U_N already appear at a lower N
                if family.n == 1 || uses_top[i] || uses_top[j] {
                    pairs.push((i as u32, j as u32));
                }
            }
        }
        FamilyTable {
            family,
            exprs,
            expansions,
            pairs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub index: u64,
    pub family: PertinentFamily,
    pub e_f: TagPoly,
    pub e_g: TagPoly,
    pub map: PolyMap,
}

/// The finite, deterministically ordered candidate space of a bound set.
pub struct CandidateSpace {
    tables: Vec<FamilyTable>,
    offsets: Vec<u64>,
}

impl CandidateSpace {
    pub fn len(&self) -> u64 {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: u64) -> Option<Candidate> {
        if index >= self.len() {
            return None;
        }
        let t = self.offsets.partition_point(|&o| o <= index) - 1;
        let table = &self.tables[t];
        let (i, j) = table.pairs[(index - self.offsets[t]) as usize];
        let (i, j) = (i as usize, j as usize);
        Some(Candidate {
            index,
            family: table.family,
            e_f: table.exprs[i].clone(),
            e_g: table.exprs[j].clone(),
            map: PolyMap::new(table.expansions[i].clone(), table.expansions[j].clone()),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Candidate> + '_ {
        (0..self.len()).map(move |i| self.get(i).expect("index in range"))
    }
}

/// Builds the candidate space; zero coefficients are dropped so that every
/// candidate uses `U_0` and `U_1` in both components.
pub fn enumerate_candidates(bounds: &SearchBounds) -> CandidateSpace {
    let coeffs: Vec<GaussRat> = bounds
        .coeffs
        .iter()
        .filter(|c| !num_traits::Zero::is_zero(*c))
        .cloned()
        .collect();
    let mut tables = Vec::new();
    let mut offsets = vec![0u64];
    if !coeffs.is_empty() {
        for fam in bounds.families() {
            let t = FamilyTable::build(fam, &coeffs, bounds.shapes);
            offsets.push(offsets.last().unwrap() + t.pairs.len() as u64);
            tables.push(t);
        }
    }
    CandidateSpace { tables, offsets }
}

/// A candidate satisfying the Non-Zero Condition, with full provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NzcHit {
    pub index: u64,
    pub family: PertinentFamily,
    pub e_f: String,
    pub e_g: String,
    pub f: String,
    pub g: String,
    pub det: String,
    pub is_good: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub tested: u64,
    pub passed_good: u64,
    pub failed_good: u64,
    /// NZC verdicts among good candidates
    pub good_nzc_fail: u64,
    pub good_nzc_hold: u64,
    pub nzc_holds: Vec<NzcHit>,
    /// violation kind -> number of candidates showing it
    pub failure_statistics: BTreeMap<String, u64>,
    /// C2 mode only
    pub certificates_verified: u64,
    pub certificate_failures: Vec<u64>,
}

struct Outcome {
    good: bool,
    violations: Vec<Violation>,
    hit: Option<NzcHit>,
    certificate: Option<bool>,
}

fn violation_key(v: &Violation) -> String {
    match v {
        Violation::DegFLeOne => "deg_f_le_1".into(),
        Violation::DegGLeOne => "deg_g_le_1".into(),
        Violation::MissingLinearTerm(t) => {
            format!("missing_linear_term:{}", serde_json::to_value(t).unwrap().as_str().unwrap())
        }
        Violation::DeterminantZero => "determinant_zero".into(),
    }
}

fn evaluate(c: &Candidate, mode: SweepMode) -> Outcome {
    let good = check_good(&c.map);
    let nzc = check_nzc(&c.map);
    let hit = nzc.holds.then(|| NzcHit {
        index: c.index,
        family: c.family,
        e_f: c.e_f.to_string(),
        e_g: c.e_g.to_string(),
        f: render_poly(&c.map.f),
        g: render_poly(&c.map.g),
        det: render_poly(&nzc.det),
        is_good: good.is_good,
    });
    let certificate = (mode == SweepMode::C2).then(|| {
        c2_refute(&c.map, &c.family)
            .map(|cert| cert.verify(&c.map))
            .unwrap_or(false)
    });
    Outcome {
        good: good.is_good,
        violations: good.violations,
        hit,
        certificate,
    }
}

impl SweepReport {
    fn absorb(&mut self, index: u64, o: Outcome) {
        self.tested += 1;
        if o.good {
            self.passed_good += 1;
            if o.hit.is_some() {
                self.good_nzc_hold += 1;
            } else {
                self.good_nzc_fail += 1;
            }
        } else {
            self.failed_good += 1;
            for v in &o.violations {
                *self.failure_statistics.entry(violation_key(v)).or_default() += 1;
            }
        }
        if let Some(h) = o.hit {
            self.nzc_holds.push(h);
        }
        match o.certificate {
            Some(true) => self.certificates_verified += 1,
            Some(false) => self.certificate_failures.push(index),
            None => {}
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    bounds: SearchBounds,
    next_index: u64,
    report: SweepReport,
}

fn read_checkpoint(path: &Path, bounds: &SearchBounds) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let cp: Checkpoint = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if cp.bounds != *bounds {
        return Err(Error::InvalidArgument(format!(
            "checkpoint {} was written for different bounds",
            path.display()
        )));
    }
    Ok(Some(cp))
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(cp)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs the sweep over the whole space. With a checkpoint path, progress is
/// saved every [`CHECKPOINT_CHUNK`] candidates and an existing checkpoint
/// for the same bounds is resumed. Output does not depend on the thread
/// count.
pub fn nzc_sweep_resumable(bounds: &SearchBounds, checkpoint: Option<&Path>) -> Result<SweepReport> {
    let space = enumerate_candidates(bounds);
    let (mut next, mut report) = match checkpoint.map(|p| read_checkpoint(p, bounds)).transpose()?.flatten() {
        Some(cp) => (cp.next_index, cp.report),
        None => (0, SweepReport::default()),
    };
    while next < space.len() {
        let end = (next + CHECKPOINT_CHUNK).min(space.len());
        let outcomes: Vec<Outcome> = (next..end)
            .into_par_iter()
            .map(|i| evaluate(&space.get(i).expect("index in range"), bounds.mode))
            .collect();
        for (i, o) in (next..end).zip(outcomes) {
            report.absorb(i, o);
        }
        next = end;
        if let Some(p) = checkpoint {
            write_checkpoint(
                p,
                &Checkpoint {
                    bounds: bounds.clone(),
                    next_index: next,
                    report: report.clone(),
                },
            )?;
        }
    }
    Ok(report)
}

pub fn nzc_sweep(bounds: &SearchBounds) -> SweepReport {
    nzc_sweep_resumable(bounds, None).expect("sweep without checkpoint performs no I/O")
}
