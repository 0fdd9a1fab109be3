use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ComplexF, Diverged, GaussRat, UniPoly};

/// Exponent pair `x^x * y^y`.
///
/// Ordered graded-lexicographically with `x` before `y`, so the *largest*
/// key is the leading monomial and rendering iterates in reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exp2 {
    pub x: u32,
    pub y: u32,
}

impl Exp2 {
    pub const fn new(x: u32, y: u32) -> Self {
        Exp2 { x, y }
    }

    pub fn total(&self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Exp2 {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total()
            .cmp(&o.total())
            .then_with(|| self.x.cmp(&o.x))
    }
}

impl PartialOrd for Exp2 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

/// Degree data of a nonzero polynomial. The zero polynomial has no
/// `Degrees` (its degree is minus infinity).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub total: u32,
    pub in_x: u32,
    pub in_y: u32,
    /// degree of `p(x, 0)`, `None` when `p(x, 0) = 0`
    pub pure_x: Option<u32>,
    /// degree of `p(0, y)`, `None` when `p(0, y) = 0`
    pub pure_y: Option<u32>,
}

/// Sparse polynomial in `x, y` over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exp2, GaussRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::monomial(GaussRat::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(GaussRat::one(), 0, 1)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => BiPoly::x(),
            Var::Y => BiPoly::y(),
        }
    }

    pub fn monomial(c: GaussRat, x: u32, y: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(Exp2::new(x, y), c);
        p
    }

    /// Builds from `(x_exp, y_exp, coeff)` triples, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, GaussRat)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (x, y, c) in it {
            p.add_term(Exp2::new(x, y), c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        BiPoly::from_terms(terms.iter().map(|&(x, y, c)| (x, y, GaussRat::from_int(c))))
    }

    pub fn add_term(&mut self, e: Exp2, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp2, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: u32, y: u32) -> GaussRat {
        self.terms
            .get(&Exp2::new(x, y))
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn leading(&self) -> Option<(&Exp2, &GaussRat)> {
        self.terms.iter().next_back()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Exp2::new(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn degrees(&self) -> Option<Degrees> {
        if self.is_zero() {
            return None;
        }
        let mut d = Degrees {
            total: 0,
            in_x: 0,
            in_y: 0,
            pure_x: None,
            pure_y: None,
        };
        for e in self.terms.keys() {
            d.total = d.total.max(e.total());
            d.in_x = d.in_x.max(e.x);
            d.in_y = d.in_y.max(e.y);
            if e.y == 0 {
                d.pure_x = Some(d.pure_x.map_or(e.x, |p| p.max(e.x)));
            }
            if e.x == 0 {
                d.pure_y = Some(d.pure_y.map_or(e.y, |p| p.max(e.y)));
            }
        }
        Some(d)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exp2::total).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| match v {
                Var::X => e.x,
                Var::Y => e.y,
            })
            .max()
    }

    pub fn scale(&self, c: &GaussRat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, x: u32, y: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (Exp2::new(e.x + x, e.y + y), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e, c) in &self.terms {
            let (k, ne) = match v {
                Var::X if e.x > 0 => (e.x, Exp2::new(e.x - 1, e.y)),
                Var::Y if e.y > 0 => (e.y, Exp2::new(e.x, e.y - 1)),
                _ => continue,
            };
            out.add_term(ne, c * &GaussRat::from_int(k as i64));
        }
        out
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exp2::new(e.y, e.x), c.clone()))
                .collect(),
        }
    }

    /// Substitution homomorphism at an exact point.
    pub fn eval(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for cx in self.coeffs_in(Var::Y).iter().rev() {
            acc = &acc * y;
            acc += &cx.eval_x(x);
        }
        acc
    }

    /// Univariate Horner evaluation in `x`; `y` exponents are ignored.
    fn eval_x(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        let mut last: Option<u32> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(prev) = last {
                acc = &acc * &x.pow(prev - e.x);
            }
            acc += c;
            last = Some(e.x);
        }
        if let Some(prev) = last {
            acc = &acc * &x.pow(prev);
        }
        acc
    }

    /// Floating evaluation, Horner in `x` per `y`-power then Horner in `y`.
    pub fn eval_complex(&self, x: ComplexF, y: ComplexF) -> Result<ComplexF, Diverged> {
        let rows = self.complex_rows();
        let mut acc = ComplexF::new(0.0, 0.0);
        for row in rows.iter().rev() {
            let mut inner = ComplexF::new(0.0, 0.0);
            for c in row.iter().rev() {
                inner = inner * x + c;
            }
            acc = acc * y + inner;
        }
        if acc.re.is_finite() && acc.im.is_finite() {
            Ok(acc)
        } else {
            Err(Diverged)
        }
    }

    /// Dense float coefficient table `rows[j][i]` for `x^i y^j`.
    pub fn complex_rows(&self) -> Vec<Vec<ComplexF>> {
        let Some(d) = self.degrees() else {
            return Vec::new();
        };
        let mut rows = vec![Vec::new(); d.in_y as usize + 1];
        for (e, c) in &self.terms {
            let row = &mut rows[e.y as usize];
            if row.len() <= e.x as usize {
                row.resize(e.x as usize + 1, ComplexF::new(0.0, 0.0));
            }
            row[e.x as usize] = c.to_complex();
        }
        rows
    }

    /// Coefficients with respect to `v`: entry `j` is the coefficient of
    /// `v^j`, a polynomial in the other variable (kept on its own axis).
    pub fn coeffs_in(&self, v: Var) -> Vec<BiPoly> {
        let Some(deg) = self.degree_in(v) else {
            return Vec::new();
        };
        let mut out = vec![BiPoly::zero(); deg as usize + 1];
        for (e, c) in &self.terms {
            match v {
                Var::X => out[e.x as usize].add_term(Exp2::new(0, e.y), c.clone()),
                Var::Y => out[e.y as usize].add_term(Exp2::new(e.x, 0), c.clone()),
            }
        }
        out
    }

    /// Dense univariate view of a polynomial in `x` alone.
    pub fn to_uni_x(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|e| e.y != 0) {
            return None;
        }
        Some(UniPoly::from_coeffs(
            (0..=self.degree_in(Var::X).unwrap_or(0))
                .map(|i| self.coeff(i, 0))
                .collect(),
        ))
    }

    /// `p(a(x,y), b(x,y))`.
    pub fn compose(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        let rows = self.coeffs_in(Var::Y);
        let mut bpow = BiPoly::one();
        for row in rows {
            if !row.is_zero() {
                let mut inner = BiPoly::zero();
                let mut apow = BiPoly::one();
                let mut cur = 0u32;
                for (e, c) in row.terms() {
                    while cur < e.x {
                        apow = &apow * a;
                        cur += 1;
                    }
                    inner = &inner + &apow.scale(c);
                }
                out = &out + &(&inner * &bpow);
            }
            bpow = &bpow * b;
        }
        out
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(Exp2::new(e1.x + e2.x, e1.y + e2.y), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::mapio::render_poly(self))
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::mapio::render_poly(self))
    }
}
