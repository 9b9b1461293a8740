//! The shape DSL naming forbidden sets on the command line.
//!
//! ```text
//! shape  := "none" | "fano"
//!         | "diag:" int
//!         | "straight:" ints
//!         | "skew:" ints "/" ints
//!         | "complement(" shape ")"
//!         | "explicit:[" [pair ("," pair)*] "]"
//!         | "graph:" edge ("," edge)*
//! ints   := int ("," int)*
//! pair   := "(" int "," int ")"
//! edge   := int "-" int
//! ```
//!
//! Whitespace between tokens is ignored. `diag`, `straight`, `skew`,
//! `explicit` and `none` take their grid from the command's dimensions;
//! `fano` is 7×7 and `graph` is (v-1)×(v-1) where v, the largest vertex
//! label, must be adjacent to every other vertex.

use std::fmt;

use qmatcount::support::{Partition, SupportSet};
use qmatcount::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeError {
    Syntax { offset: usize, expected: Vec<&'static str> },
    /// Well-formed text describing an impossible set.
    Invalid { offset: usize, error: Error },
    MissingDimension { offset: usize },
}

impl ShapeError {
    pub fn offset(&self) -> usize {
        match self {
            ShapeError::Syntax { offset, .. }
            | ShapeError::Invalid { offset, .. }
            | ShapeError::MissingDimension { offset } => *offset,
        }
    }
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::Syntax { offset, expected } => {
                write!(f, "byte {offset}: expected one of {}", expected.join(", "))
            }
            ShapeError::Invalid { offset, error } => write!(f, "byte {offset}: {error}"),
            ShapeError::MissingDimension { offset } => {
                write!(f, "byte {offset}: this shape needs --n")
            }
        }
    }
}

impl std::error::Error for ShapeError {}

/// Grid size supplied by the command; `m` defaults to `n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Dims {
    pub m: Option<usize>,
    pub n: Option<usize>,
}

impl Dims {
    pub fn square(n: usize) -> Self {
        Dims { m: Some(n), n: Some(n) }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    dims: Dims,
}

type PResult<T> = Result<T, ShapeError>;

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &'static str) -> PResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax(vec![token]))
        }
    }

    fn syntax(&self, expected: Vec<&'static str>) -> ShapeError {
        ShapeError::Syntax {
            offset: self.pos,
            expected,
        }
    }

    fn int(&mut self) -> PResult<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax(vec!["integer"]));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ShapeError::Invalid {
                offset: start,
                error: Error::OutOfRange("integer too large".into()),
            })
    }

    fn ints(&mut self) -> PResult<Vec<usize>> {
        let mut out = vec![self.int()?];
        while self.eat(",") {
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn square(&self, at: usize) -> PResult<usize> {
        let n = self.dims.n.ok_or(ShapeError::MissingDimension { offset: at })?;
        if self.dims.m.is_some_and(|m| m != n) {
            return Err(ShapeError::Invalid {
                offset: at,
                error: Error::DimensionMismatch("this shape needs a square grid".into()),
            });
        }
        Ok(n)
    }

    fn grid(&self, at: usize) -> PResult<(usize, usize)> {
        let n = self.dims.n.ok_or(ShapeError::MissingDimension { offset: at })?;
        Ok((self.dims.m.unwrap_or(n), n))
    }

    fn spec(&mut self) -> PResult<SupportSet> {
        self.skip_ws();
        let at = self.pos;
        let invalid = |error| ShapeError::Invalid { offset: at, error };
        if self.eat("none") {
            let (m, n) = self.grid(at)?;
            SupportSet::empty(m, n).map_err(invalid)
        } else if self.eat("fano") {
            Ok(SupportSet::fano())
        } else if self.eat("diag:") {
            let k = self.int()?;
            let (m, n) = self.grid(at)?;
            if k > m.min(n) {
                return Err(invalid(Error::OutOfRange(format!("diag:{k} exceeds the {m}x{n} grid"))));
            }
            SupportSet::from_positions(m, n, (1..=k).map(|i| (i, i))).map_err(invalid)
        } else if self.eat("straight:") {
            let lambda = self.partition()?;
            let n = self.square(at)?;
            SupportSet::straight(&lambda, n).map_err(invalid)
        } else if self.eat("skew:") {
            let lambda = self.partition()?;
            self.expect("/")?;
            let mu = self.partition()?;
            let n = self.square(at)?;
            SupportSet::skew(&lambda, &mu, n).map_err(invalid)
        } else if self.eat("complement(") {
            let inner = self.spec()?;
            self.expect(")")?;
            Ok(inner.complement())
        } else if self.eat("explicit:") {
            self.expect("[")?;
            let mut cells = Vec::new();
            if !self.eat("]") {
                loop {
                    self.expect("(")?;
                    let i = self.int()?;
                    self.expect(",")?;
                    let j = self.int()?;
                    self.expect(")")?;
                    cells.push((i, j));
                    if self.eat("]") {
                        break;
                    }
                    if !self.eat(",") {
                        return Err(self.syntax(vec![",", "]"]));
                    }
                }
            }
            let (m, n) = self.grid(at)?;
            SupportSet::from_positions(m, n, cells).map_err(invalid)
        } else if self.eat("graph:") {
            let mut edges = Vec::new();
            loop {
                let a = self.int()?;
                self.expect("-")?;
                let b = self.int()?;
                edges.push((a, b));
                if !self.eat(",") {
                    break;
                }
            }
            let vertices = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
            SupportSet::graph(vertices, &edges).map_err(invalid)
        } else {
            Err(self.syntax(vec![
                "none",
                "fano",
                "diag:",
                "straight:",
                "skew:",
                "complement(",
                "explicit:",
                "graph:",
            ]))
        }
    }

    fn partition(&mut self) -> PResult<Partition> {
        let at = self.pos;
        let parts = self.ints()?;
        Partition::new(parts).map_err(|error| ShapeError::Invalid { offset: at, error })
    }
}

/// Parses a shape, checking its grid against any dimensions given.
pub fn parse_shape_spec(text: &str, dims: Dims) -> Result<SupportSet, ShapeError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        dims,
    };
    let s = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.syntax(vec!["end of input"]));
    }
    let clash = dims.n.is_some_and(|n| n != s.n()) || dims.m.is_some_and(|m| m != s.m());
    if clash {
        return Err(ShapeError::Invalid {
            offset: 0,
            error: Error::DimensionMismatch(format!("shape is {}x{}", s.m(), s.n())),
        });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse_shape_spec("diag:3", Dims::square(5)).unwrap(),
            SupportSet::diagonal_prefix(5, 3).unwrap()
        );
        assert_eq!(
            parse_shape_spec("straight:4,3,2", Dims::square(5)).unwrap(),
            SupportSet::straight(&part(&[4, 3, 2]), 5).unwrap()
        );
        assert_eq!(parse_shape_spec("fano", Dims::default()).unwrap(), SupportSet::fano());
        assert_eq!(
            parse_shape_spec("skew:5,5,4,3,1/2,2,1", Dims::square(5)).unwrap(),
            SupportSet::skew(&part(&[5, 5, 4, 3, 1]), &part(&[2, 2, 1]), 5).unwrap()
        );
        assert_eq!(
            parse_shape_spec("complement( diag:2 )", Dims::square(2)).unwrap(),
            SupportSet::diagonal_prefix(2, 2).unwrap().complement()
        );
        assert_eq!(
            parse_shape_spec("explicit:[(1,1),(2,2)]", Dims::square(3)).unwrap(),
            SupportSet::diagonal_prefix(3, 2).unwrap()
        );
        assert_eq!(parse_shape_spec("explicit:[]", Dims::square(2)).unwrap().forbidden_count(), 0);
        assert_eq!(
            parse_shape_spec("graph:1-3,2-3", Dims::default()).unwrap(),
            SupportSet::from_positions(2, 2, [(1, 2), (2, 1)]).unwrap()
        );
        let rect = parse_shape_spec("diag:2", Dims { m: Some(2), n: Some(4) }).unwrap();
        assert_eq!((rect.m(), rect.n(), rect.forbidden_count()), (2, 4, 2));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_shape_spec("diag:x", Dims::square(3)).unwrap_err();
        assert_eq!(e, ShapeError::Syntax { offset: 5, expected: vec!["integer"] });
        let e = parse_shape_spec("bogus", Dims::square(3)).unwrap_err();
        assert_eq!(e.offset(), 0);
        let e = parse_shape_spec("complement(diag:1", Dims::square(3)).unwrap_err();
        assert_eq!(e, ShapeError::Syntax { offset: 17, expected: vec![")"] });
        let e = parse_shape_spec("diag:1 extra", Dims::square(3)).unwrap_err();
        assert_eq!(e.offset(), 7);
        assert_eq!(
            parse_shape_spec("diag:2", Dims::default()).unwrap_err(),
            ShapeError::MissingDimension { offset: 0 }
        );
        assert!(matches!(
            parse_shape_spec("skew:1/2", Dims::square(3)).unwrap_err(),
            ShapeError::Invalid { error: Error::NotNested { .. }, .. }
        ));
        assert!(matches!(
            parse_shape_spec("graph:1-3", Dims::default()).unwrap_err(),
            ShapeError::Invalid { error: Error::ApexMissing(_), .. }
        ));
        assert!(matches!(
            parse_shape_spec("fano", Dims::square(5)).unwrap_err(),
            ShapeError::Invalid { error: Error::DimensionMismatch(_), .. }
        ));
        let e = parse_shape_spec("explicit:[(1,1)(2,2)]", Dims::square(3)).unwrap_err();
        assert_eq!(e, ShapeError::Syntax { offset: 15, expected: vec![",", "]"] });
    }
}
