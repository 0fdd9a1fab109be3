use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{BiPoly, GaussRat};
use crate::error::{Error, Result};
use crate::PolyMap;

const MAX_EXPONENT: u64 = i32::MAX as u64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = col0 + k;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, col });
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Spanned {
                tok: Tok::Int(digits.parse().unwrap()),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..k].iter().collect()),
                col,
            });
        } else {
            return Err(Error::Syntax {
                line,
                column: col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        col: col0 + chars.len(),
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        match self.bump().tok {
            Tok::Int(n) => {
                let e: u64 = match u64::try_from(&n) {
                    Ok(e) if e <= MAX_EXPONENT => e,
                    _ => {
                        return Err(Error::ExponentOverflow {
                            line: self.line,
                            column: col,
                        })
                    }
                };
                Ok(base.pow(e as u32))
            }
            _ => Err(Error::Syntax {
                line: self.line,
                column: col,
                message: "expected a non-negative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let col = self.col();
        match self.bump().tok {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dcol = self.col();
                    match self.bump().tok {
                        Tok::Int(d) if !d.is_zero() => Ok(BiPoly::constant(GaussRat::from_real(
                            BigRational::new(n, d),
                        ))),
                        Tok::Int(_) => Err(Error::Syntax {
                            line: self.line,
                            column: dcol,
                            message: "zero denominator".into(),
                        }),
                        _ => Err(Error::Syntax {
                            line: self.line,
                            column: dcol,
                            message: "expected an integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(BiPoly::constant(GaussRat::from_real(BigRational::from_integer(n))))
                }
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(BiPoly::x()),
                "y" => Ok(BiPoly::y()),
                "i" => Ok(BiPoly::constant(GaussRat::i())),
                _ => Err(Error::UnknownIdentifier {
                    name,
                    line: self.line,
                    column: col,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                line: self.line,
                column: col,
                message: "unexpected end of expression".into(),
            }),
            other => Err(Error::Syntax {
                line: self.line,
                column: col,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }
}

fn parse_expr_at(src: &str, line: usize, col0: usize) -> Result<BiPoly> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser { toks, pos: 0, line };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("expected operator or end of expression"));
    }
    Ok(value)
}

/// Parses a single polynomial expression in `x`, `y` (and the unit `i`).
pub fn parse_poly(src: &str) -> Result<BiPoly> {
    parse_expr_at(src, 1, 1)
}

/// Parses an exact constant such as `3/2 - 2*i`.
pub fn parse_scalar(src: &str) -> Result<GaussRat> {
    let p = parse_poly(src)?;
    p.as_constant().ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: format!("expected a constant, found {p}"),
    })
}

/// A parsed map file together with its sources and metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct MapFile {
    pub f_source: String,
    pub g_source: String,
    pub name: Option<String>,
    pub comments: Vec<String>,
    pub map: PolyMap,
}

/// Parses a map file: `f = ...` and `g = ...` assignments, `#` comments,
/// optional `# name: ...` metadata line.
pub fn parse_map_file(text: &str) -> Result<MapFile> {
    let mut f: Option<(String, BiPoly)> = None;
    let mut g: Option<(String, BiPoly)> = None;
    let mut name = None;
    let mut comments = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let (code, comment) = match raw.find('#') {
            Some(h) => (&raw[..h], Some(raw[h + 1..].trim())),
            None => (raw, None),
        };
        if let Some(c) = comment {
            match c.strip_prefix("name:") {
                Some(n) => name = Some(n.trim().to_string()),
                None => comments.push(c.to_string()),
            }
        }
        if code.trim().is_empty() {
            continue;
        }
        let Some(eq) = code.find('=') else {
            return Err(Error::Syntax {
                line: line_no,
                column: 1,
                message: "expected `f = ...` or `g = ...`".into(),
            });
        };
        let lhs = code[..eq].trim();
        let rhs = &code[eq + 1..];
        let col0 = code[..eq + 1].chars().count() + 1;
        let poly = parse_expr_at(rhs, line_no, col0)?;
        let slot = match lhs {
            "f" => &mut f,
            "g" => &mut g,
            other => {
                return Err(Error::UnknownIdentifier {
                    name: other.to_string(),
                    line: line_no,
                    column: 1,
                })
            }
        };
        if slot.is_some() {
            return Err(Error::Syntax {
                line: line_no,
                column: 1,
                message: format!("duplicate assignment to `{lhs}`"),
            });
        }
        *slot = Some((rhs.trim().to_string(), poly));
    }
    let missing = |which: &str| Error::Syntax {
        line: last_line,
        column: 1,
        message: format!("missing assignment `{which} = ...`"),
    };
    let (f_source, fp) = f.ok_or_else(|| missing("f"))?;
    let (g_source, gp) = g.ok_or_else(|| missing("g"))?;
    Ok(MapFile {
        f_source,
        g_source,
        name: name.clone(),
        comments,
        map: PolyMap::new(fp, gp),
    })
}

/// Parses map text into the polynomial pair.
pub fn parse_map(text: &str) -> Result<PolyMap> {
    parse_map_file(text).map(|m| m.map)
}

/// Accepts a map given either as file text or as a single `f` line for
/// quick checks in tests (`"f = x + y - x*y"` yields `g = 0`).
pub fn parse_assignment(text: &str) -> Result<(String, BiPoly)> {
    let eq = text.find('=').ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "expected an assignment".into(),
    })?;
    let col0 = text[..eq + 1].chars().count() + 1;
    Ok((
        text[..eq].trim().to_string(),
        parse_expr_at(&text[eq + 1..], 1, col0)?,
    ))
}
