//! Named reference maps used by tests, the CLI and the Python bindings.

use crate::mapio::parse_poly;
use crate::pertinent::ClassLabel;
use crate::PolyMap;

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub f: &'static str,
    pub g: &'static str,
    pub expected: ClassLabel,
}

impl CorpusEntry {
    pub fn map(&self) -> PolyMap {
        PolyMap::new(
            parse_poly(self.f).expect("corpus entry parses"),
            parse_poly(self.g).expect("corpus entry parses"),
        )
    }

    /// Contents of a map file for this entry.
    pub fn map_file(&self) -> String {
        format!("# name: {}\nf = {}\ng = {}\n", self.name, self.f, self.g)
    }
}

/// C2 map with `f = u_0 + u_1`, `g = 2 u_0 + u_1 - 3 u_3^2 + u_0 u_1` under
/// `(X, r=1, s=1)`. The last monomial of `g` is `-3 x^6 y^6`; the printed
/// `-3 y^6` does not admit that rewrite.
pub const C2_SAMPLE: CorpusEntry = CorpusEntry {
    name: "c2-sample",
    f: "x + y - x*y",
    g: "x + 2*y - x*y^2 - 3*x^6 + 6*x^6*y^3 - 3*x^6*y^6",
    expected: ClassLabel::C2,
};

/// `(u_0 + u_1, 2 u_0 + u_1)` with `u_1 = x - x^2 y`.
pub const F_STAR: CorpusEntry = CorpusEntry {
    name: "f-star",
    f: "y + x - x^2*y",
    g: "2*y + x - x^2*y",
    expected: ClassLabel::C1MinusC2,
};

pub const F_STAR_MIRROR: CorpusEntry = CorpusEntry {
    name: "f-star-mirror",
    f: "x + y - y^2*x",
    g: "2*x + y - y^2*x",
    expected: ClassLabel::C1MinusC2,
};

/// `(u_0 + u_1 + u_1^2, 2 u_0 + u_1)`: top pure degree comes from `U_1^2`.
pub const SQUARE_BRANCH: CorpusEntry = CorpusEntry {
    name: "square-branch",
    f: "y + x - x^2*y + x^2 - 2*x^3*y + x^4*y^2",
    g: "2*y + x - x^2*y",
    expected: ClassLabel::C1MinusC2,
};

/// `(u_0 + u_1, u_0 - u_1 + u_2^2)` under `(X, r=3, s=1)`.
pub const CUBIC_FAMILY: CorpusEntry = CorpusEntry {
    name: "r3-family",
    f: "y + x - x^3*y",
    g: "y - x + x^3*y + x^4 - 2*x^8*y^2 + x^12*y^4",
    expected: ClassLabel::C1MinusC2,
};

/// `(u_0 + u_1, 2 u_0 - u_1 + u_0 u_1)` under `(X, r=2, s=3)`.
pub const R2_S3: CorpusEntry = CorpusEntry {
    name: "r2-s3",
    f: "y + x - x^2*y^3",
    g: "2*y - x + x^2*y^3 + x*y - x^2*y^4",
    expected: ClassLabel::C1MinusC2,
};

pub const LINEAR: CorpusEntry = CorpusEntry {
    name: "linear",
    f: "x + y",
    g: "x - y",
    expected: ClassLabel::NotC1,
};

/// A proper map: good, but in no pertinent family.
pub const PROPER_CUBIC: CorpusEntry = CorpusEntry {
    name: "proper-cubic",
    f: "x + y + x^3",
    g: "x + 2*y + y^3",
    expected: ClassLabel::NotC1,
};

/// `(x, x y)`: fiber over `(0, 1)` is empty.
pub const EMPTY_FIBER_PROBE: CorpusEntry = CorpusEntry {
    name: "empty-fiber-probe",
    f: "x",
    g: "x*y",
    expected: ClassLabel::NotC1,
};

pub const ALL: [CorpusEntry; 9] = [
    C2_SAMPLE,
    F_STAR,
    F_STAR_MIRROR,
    SQUARE_BRANCH,
    CUBIC_FAMILY,
    R2_S3,
    LINEAR,
    PROPER_CUBIC,
    EMPTY_FIBER_PROBE,
];

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    ALL.iter().copied().find(|e| e.name == name)
}
