//! Buchberger's algorithm with the Gebauer-Moeller pair update and the
//! normal selection strategy.

use num_traits::Zero;

use super::tagpoly::{Mono, MonomialOrder, TagPoly};
use crate::error::{Error, Result};

/// Default bound on intermediate polynomial size.
pub const DEFAULT_RESOURCE_CAP: usize = 1_000_000;

/// Size guard for elimination. Every intermediate polynomial and the basis
/// as a whole must stay below `cap` terms.
#[derive(Clone, Copy, Debug)]
pub struct ResourceGuard {
    pub cap: usize,
}

impl Default for ResourceGuard {
    fn default() -> Self {
        ResourceGuard {
            cap: DEFAULT_RESOURCE_CAP,
        }
    }
}

impl ResourceGuard {
    pub fn new(cap: usize) -> Self {
        ResourceGuard { cap }
    }

    /// Reads `JLAB_RESOURCE_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var("JLAB_RESOURCE_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(ResourceGuard::new)
            .unwrap_or_default()
    }

    fn check(&self, terms: usize) -> Result<()> {
        if terms > self.cap {
            Err(Error::ResourceCap {
                terms,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

fn lt(p: &TagPoly) -> &Mono {
    p.leading().expect("nonzero polynomial").0
}

/// Full reduction of `p` modulo `basis` (all terms, not only the head).
/// Divisors are tried in list order.
pub(crate) fn reduce(p: &TagPoly, basis: &[&TagPoly], guard: &ResourceGuard) -> Result<TagPoly> {
    let mut work = p.clone();
    let mut rem = TagPoly::zero(p.n_tags());
    while let Some((m, c)) = work.pop_leading() {
        match basis.iter().find(|g| lt(g).divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let q = m.div(gm);
                let factor = -(&c / gc);
                for (tm, tc) in g.terms().rev().skip(1) {
                    work.add_term(tm.mul(&q), tc * &factor);
                }
                guard.check(work.len() + rem.len())?;
            }
            None => rem.add_term(m, c),
        }
    }
    Ok(rem)
}

fn spoly(f: &TagPoly, g: &TagPoly) -> TagPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &gc.clone());
    let b = g.mul_term(&l.div(gm), &fc.clone());
    &a - &b
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

impl Pair {
    fn key(&self) -> (u32, &Mono, usize, usize) {
        (self.lcm.degree(), &self.lcm, self.i, self.j)
    }
}

/// Reduced Groebner basis of the ideal generated by `generators`, sorted by
/// ascending leading monomial. Deterministic for a fixed input order.
pub fn groebner_basis(
    generators: &[TagPoly],
    order: MonomialOrder,
    guard: &ResourceGuard,
) -> Result<Vec<TagPoly>> {
    let MonomialOrder::Elimination = order;
    if generators.is_empty() {
        return Err(Error::InvalidArgument("empty generator list".into()));
    }
    let mut polys: Vec<TagPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in generators {
        let refs: Vec<&TagPoly> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let h = reduce(g, &refs, guard)?;
        if !h.is_zero() {
            update(&mut polys, &mut active, &mut pairs, h.monic());
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.key().cmp(&b.1.key()))
            .unwrap();
        let pair = pairs.swap_remove(idx);
        let s = spoly(&polys[pair.i], &polys[pair.j]);
        guard.check(s.len())?;
        let refs: Vec<&TagPoly> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let h = reduce(&s, &refs, guard)?;
        if !h.is_zero() {
            update(&mut polys, &mut active, &mut pairs, h.monic());
            let basis_terms: usize = polys
                .iter()
                .zip(&active)
                .filter(|(_, a)| **a)
                .map(|(p, _)| p.len())
                .sum();
            guard.check(basis_terms)?;
        }
    }

    let basis: Vec<TagPoly> = polys
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    interreduce(basis, guard)
}

/// Gebauer-Moeller installation of a new basis element `h`.
fn update(polys: &mut Vec<TagPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: TagPoly) {
    let hn = polys.len();
    let hlt = lt(&h).clone();

    let mut cands: Vec<Pair> = (0..hn)
        .filter(|&k| active[k])
        .map(|k| Pair {
            i: k,
            j: hn,
            lcm: lt(&polys[k]).lcm(&hlt),
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    while !cands.is_empty() {
        let p = cands.remove(0);
        let coprime = lt(&polys[p.i]).coprime(&hlt);
        let dominated = cands
            .iter()
            .chain(kept.iter())
            .any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    // product criterion
    let fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|p| !lt(&polys[p.i]).coprime(&hlt))
        .collect();

    // prune old pairs whose lcm is strictly divisible through h
    pairs.retain(|p| {
        !hlt.divides(&p.lcm)
            || lt(&polys[p.i]).lcm(&hlt) == p.lcm
            || lt(&polys[p.j]).lcm(&hlt) == p.lcm
    });
    pairs.extend(fresh);

    for k in 0..hn {
        if active[k] && hlt.divides(lt(&polys[k])) {
            active[k] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

fn interreduce(mut basis: Vec<TagPoly>, guard: &ResourceGuard) -> Result<Vec<TagPoly>> {
    basis.sort_by(|a, b| lt(a).cmp(lt(b)));
    // minimal basis: drop elements whose head is divisible by another head
    let mut minimal: Vec<TagPoly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(m, q)| {
            m != k && lt(q).divides(lt(p)) && (lt(q) != lt(p) || m < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&TagPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, q)| q)
            .collect();
        let (head_m, head_c) = minimal[k].leading().unwrap();
        let mut tail = minimal[k].clone();
        tail.pop_leading();
        let mut r = reduce(&tail, &others, guard)?;
        r.add_term(head_m.clone(), head_c.clone());
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| lt(a).cmp(lt(b)));
    Ok(reduced)
}

/// Unique remainder of `p` modulo a Groebner basis.
pub fn normal_form(p: &TagPoly, basis: &[TagPoly], order: MonomialOrder, guard: &ResourceGuard) -> Result<TagPoly> {
    let MonomialOrder::Elimination = order;
    let refs: Vec<&TagPoly> = basis.iter().collect();
    reduce(p, &refs, guard)
}

/// True when `basis` generates the unit ideal.
pub fn is_unit_ideal(basis: &[TagPoly]) -> bool {
    basis
        .iter()
        .any(|g| g.len() == 1 && g.is_constant() && !g.leading().unwrap().1.is_zero())
}
