use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::{BiPoly, ComplexF, GaussRat};

/// Exponent vector over `(x, y, U_0, ..., U_{N})`.
///
/// The derived ordering is the elimination order: the `{x, y}` block
/// dominates the tag block, graded-lex (x before y, `U_0` before `U_1`, ...)
/// inside each block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Box<[u32]>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars].into_boxed_slice())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn block_degree(&self, block: std::ops::Range<usize>) -> u32 {
        self.0[block].iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_tag_only(&self) -> bool {
        self.0[0] == 0 && self.0[1] == 0
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        grlex(&self.0[..2], &o.0[..2]).then_with(|| grlex(&self.0[2..], &o.0[2..]))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Monomial orders available to the elimination machinery.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Block order `{x, y} >> {U_*}`, graded-lex within each block.
    #[default]
    Elimination,
}

/// Polynomial in `x, y` and the tag variables `U_0 .. U_{n_tags - 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TagPoly {
    nvars: usize,
    terms: BTreeMap<Mono, GaussRat>,
}

impl TagPoly {
    pub fn zero(n_tags: usize) -> Self {
        TagPoly {
            nvars: n_tags + 2,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_tags: usize, c: GaussRat) -> Self {
        let mut p = TagPoly::zero(n_tags);
        p.add_term(Mono::one(n_tags + 2), c);
        p
    }

    pub fn one(n_tags: usize) -> Self {
        TagPoly::constant(n_tags, GaussRat::one())
    }

    /// The tag variable `U_i`.
    pub fn tag(n_tags: usize, i: usize) -> Self {
        assert!(i < n_tags, "tag index out of range");
        let mut e = vec![0; n_tags + 2];
        e[i + 2] = 1;
        let mut p = TagPoly::zero(n_tags);
        p.add_term(Mono(e.into_boxed_slice()), GaussRat::one());
        p
    }

    /// `c * prod U_i^{e_i}` from tag exponents only.
    pub fn tag_monomial(c: GaussRat, tag_exps: &[u32]) -> Self {
        let n_tags = tag_exps.len();
        let mut e = vec![0; n_tags + 2];
        e[2..].copy_from_slice(tag_exps);
        let mut p = TagPoly::zero(n_tags);
        p.add_term(Mono(e.into_boxed_slice()), c);
        p
    }

    pub fn from_bipoly(p: &BiPoly, n_tags: usize) -> Self {
        let mut out = TagPoly::zero(n_tags);
        for (e, c) in p.terms() {
            let mut v = vec![0; n_tags + 2];
            v[0] = e.x;
            v[1] = e.y;
            out.add_term(Mono(v.into_boxed_slice()), c.clone());
        }
        out
    }

    pub fn n_tags(&self) -> usize {
        self.nvars - 2
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Mono, c: GaussRat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Mono, GaussRat)> {
        self.terms.pop_last()
    }

    pub fn is_tag_only(&self) -> bool {
        self.terms.keys().all(Mono::is_tag_only)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn scale(&self, c: &GaussRat) -> TagPoly {
        let mut out = TagPoly::zero(self.n_tags());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn monic(&self) -> TagPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &GaussRat) -> TagPoly {
        TagPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> TagPoly {
        (0..e).fold(TagPoly::one(self.n_tags()), |acc, _| &acc * self)
    }

    /// Formal partial derivative with respect to `U_i`.
    pub fn partial_tag(&self, i: usize) -> TagPoly {
        let k = i + 2;
        let mut out = TagPoly::zero(self.n_tags());
        for (m, c) in &self.terms {
            if m.0[k] > 0 {
                let mut e = m.0.clone();
                e[k] -= 1;
                out.add_term(Mono(e), c * &GaussRat::from_int(m.0[k] as i64));
            }
        }
        out
    }

    pub fn uses_tag(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i + 2] > 0)
    }

    /// Largest tag index appearing in the polynomial.
    pub fn max_tag_used(&self) -> Option<usize> {
        (0..self.n_tags()).rev().find(|&i| self.uses_tag(i))
    }

    /// Re-embeds into a ring with `n_tags` tag variables; `None` if a tag
    /// that does not fit is used.
    pub fn with_n_tags(&self, n_tags: usize) -> Option<TagPoly> {
        if let Some(top) = self.max_tag_used() {
            if top >= n_tags {
                return None;
            }
        }
        let mut out = TagPoly::zero(n_tags);
        for (m, c) in &self.terms {
            let mut e = vec![0; n_tags + 2];
            let keep = (n_tags + 2).min(self.nvars);
            e[..keep].copy_from_slice(&m.0[..keep]);
            out.add_term(Mono(e.into_boxed_slice()), c.clone());
        }
        Some(out)
    }

    /// Substitutes `U_i -> values[i]` and keeps `x, y` as themselves.
    pub fn substitute_tags(&self, values: &[BiPoly]) -> BiPoly {
        assert_eq!(values.len(), self.n_tags());
        let mut cache: Vec<Vec<BiPoly>> = values.iter().map(|v| vec![BiPoly::one(), v.clone()]).collect();
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = BiPoly::monomial(c.clone(), m.0[0], m.0[1]);
            for (i, &e) in m.0[2..].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &values[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Floating evaluation of a tag-only polynomial at `U_i = values[i]`.
    pub fn eval_tags_complex(&self, values: &[ComplexF]) -> ComplexF {
        let mut acc = ComplexF::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, &e) in m.0[2..].iter().enumerate() {
                if e > 0 {
                    t *= values[i].powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Collapses a polynomial without tags back to a [`BiPoly`].
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        if self.terms.keys().any(|m| m.0[2..].iter().any(|&e| e > 0)) {
            return None;
        }
        Some(BiPoly::from_terms(
            self.terms.iter().map(|(m, c)| (m.0[0], m.0[1], c.clone())),
        ))
    }
}

impl<'a> Add<&'a TagPoly> for &'a TagPoly {
    type Output = TagPoly;
    fn add(self, o: &TagPoly) -> TagPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TagPoly> for &'a TagPoly {
    type Output = TagPoly;
    fn sub(self, o: &TagPoly) -> TagPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a TagPoly> for &'a TagPoly {
    type Output = TagPoly;
    fn mul(self, o: &TagPoly) -> TagPoly {
        let mut out = TagPoly::zero(self.n_tags());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TagPoly {
    type Output = TagPoly;
    fn neg(self) -> TagPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

impl fmt::Display for TagPoly {
    /// Terms in descending elimination order, e.g. `U_0*U_1 + 2*U_0 + U_1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match k {
                    0 => "x".to_string(),
                    1 => "y".to_string(),
                    _ => format!("U_{}", k - 2),
                };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            let (neg, body) = crate::mapio::signed_term(c, &factors);
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TagPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xy_block_dominates_tags() {
        let x = Mono(vec![1, 0, 0, 0].into());
        let u0_sq = Mono(vec![0, 0, 5, 0].into());
        assert!(x > u0_sq);
        let u0 = Mono(vec![0, 0, 1, 0].into());
        let u1 = Mono(vec![0, 0, 0, 1].into());
        assert!(u0 > u1);
    }

    #[test]
    fn display_tag_form() {
        let n = 4;
        let e = &(&TagPoly::tag(n, 0).scale(&2.into()) + &TagPoly::tag(n, 1))
            - &TagPoly::tag(n, 3).pow(2).scale(&3.into());
        assert_eq!(e.to_string(), "-3*U_3^2 + 2*U_0 + U_1");
    }

    #[test]
    fn tag_partials_and_usage() {
        let n = 2;
        let e = &TagPoly::tag(n, 0) * &TagPoly::tag(n, 1);
        assert!(e.uses_tag(0) && e.uses_tag(1));
        assert_eq!(e.partial_tag(0), TagPoly::tag(n, 1));
        assert_eq!(e.max_tag_used(), Some(1));
    }
}
