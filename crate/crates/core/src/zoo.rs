//! Textual identifiers for generated and bundled complexes.
//!
//! Grammar, in prefix form so that nested binary constructions need no
//! brackets:
//!
//! ```text
//! id := "sphere:" N | "torus:" N | "surface:" N
//!     | "product:" id "," id | "connsum:" id "," id
//!     | "data:" NAME | "file:" PATH
//! ```
//!
//! `PATH` and `NAME` run to the next comma or the end of input.
//! `product:torus:1,product:torus:1,torus:1` is the 3-torus.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::complex::generators::binomial;
use crate::complex::{connected_sum, product_complex, sphere, surface, torus, ComplexFile, SimplicialComplex};
use crate::error::{Error, Result};

pub const MAX_SPHERE_DIMENSION: usize = 16;
pub const MAX_TORUS_DIMENSION: usize = 5;
pub const MAX_GENUS: usize = 32;
/// Nesting limit for products and connected sums.
pub const MAX_DEPTH: usize = 12;
/// Upper bound on the facet count of any constructed complex.
pub const MAX_FACETS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ZooId {
    Sphere(usize),
    Torus(usize),
    Surface(usize),
    Product(Box<ZooId>, Box<ZooId>),
    ConnectedSum(Box<ZooId>, Box<ZooId>),
    Data(String),
    File(PathBuf),
}

impl fmt::Display for ZooId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooId::Sphere(n) => write!(f, "sphere:{n}"),
            ZooId::Torus(n) => write!(f, "torus:{n}"),
            ZooId::Surface(g) => write!(f, "surface:{g}"),
            ZooId::Product(a, b) => write!(f, "product:{a},{b}"),
            ZooId::ConnectedSum(a, b) => write!(f, "connsum:{a},{b}"),
            ZooId::Data(name) => write!(f, "data:{name}"),
            ZooId::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

struct Parser<'s> {
    input: &'s str,
    rest: &'s str,
}

impl<'s> Parser<'s> {
    fn fail<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::BadIdentifier(self.input.to_owned(), reason.into()))
    }

    /// Text up to the next comma or the end.
    fn token(&mut self) -> &'s str {
        let end = self.rest.find(',').unwrap_or(self.rest.len());
        let (tok, rest) = self.rest.split_at(end);
        self.rest = rest;
        tok
    }

    fn number(&mut self, limit: usize, what: &str) -> Result<usize> {
        let tok = self.token();
        let Ok(n) = tok.parse::<usize>() else {
            return self.fail(format!("expected a {what}, found {tok:?}"));
        };
        if n > limit {
            return self.fail(format!("{what} {n} exceeds the limit {limit}"));
        }
        Ok(n)
    }

    fn comma(&mut self) -> Result<()> {
        match self.rest.strip_prefix(',') {
            Some(r) => {
                self.rest = r;
                Ok(())
            }
            None => self.fail("expected ',' between operands"),
        }
    }

    fn id(&mut self, depth: usize) -> Result<ZooId> {
        if depth > MAX_DEPTH {
            return self.fail(format!("nesting deeper than {MAX_DEPTH}"));
        }
        let Some(colon) = self.rest.find(':') else {
            return self.fail(format!("missing ':' in {:?}", self.rest));
        };
        let head = &self.rest[..colon];
        self.rest = &self.rest[colon + 1..];
        match head {
            "sphere" => Ok(ZooId::Sphere(self.number(MAX_SPHERE_DIMENSION, "dimension")?)),
            "torus" => {
                let n = self.number(MAX_TORUS_DIMENSION, "dimension")?;
                if n == 0 {
                    return self.fail("torus dimension must be positive");
                }
                Ok(ZooId::Torus(n))
            }
            "surface" => Ok(ZooId::Surface(self.number(MAX_GENUS, "genus")?)),
            "product" | "connsum" => {
                let a = self.id(depth + 1)?;
                self.comma()?;
                let b = self.id(depth + 1)?;
                Ok(if head == "product" {
                    ZooId::Product(Box::new(a), Box::new(b))
                } else {
                    ZooId::ConnectedSum(Box::new(a), Box::new(b))
                })
            }
            "data" => {
                let name = self.token();
                if !crate::complex::DATA_FILES.iter().any(|(n, _)| *n == name) {
                    return self.fail(format!("unknown data file {name:?}"));
                }
                Ok(ZooId::Data(name.to_owned()))
            }
            "file" => {
                let path = self.token();
                if path.is_empty() {
                    return self.fail("empty file path");
                }
                Ok(ZooId::File(PathBuf::from(path)))
            }
            other => self.fail(format!("unknown constructor {other:?}")),
        }
    }
}

impl FromStr for ZooId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { input: s, rest: s.trim() };
        let id = p.id(0)?;
        if !p.rest.is_empty() {
            return p.fail(format!("trailing input {:?}", p.rest));
        }
        Ok(id)
    }
}

/// Facet count and dimension, when known without building.
fn shape(id: &ZooId) -> Option<(usize, usize)> {
    let fact = |n: usize| (1..=n).product::<usize>();
    match id {
        ZooId::Sphere(n) => Some((n + 2, *n)),
        // Staircase product of n circles: 3^n cubes, n! simplices each.
        ZooId::Torus(n) => Some((3usize.pow(*n as u32) * fact(*n), *n)),
        ZooId::Surface(g) => Some(if *g == 0 { (4, 2) } else { (18 * g - 2 * (g - 1), 2) }),
        ZooId::Product(a, b) => {
            let (fa, da) = shape(a)?;
            let (fb, db) = shape(b)?;
            let f = fa.checked_mul(fb)?.checked_mul(binomial(da + db, da))?;
            Some((f, da + db))
        }
        ZooId::ConnectedSum(a, b) => {
            let (fa, da) = shape(a)?;
            let (fb, _) = shape(b)?;
            Some((fa + fb - 2, da))
        }
        ZooId::Data(_) | ZooId::File(_) => None,
    }
}

impl ZooId {
    pub fn build(&self) -> Result<SimplicialComplex> {
        if let Some((f, d)) = shape(self) {
            if f > MAX_FACETS {
                return Err(Error::BadIdentifier(
                    self.to_string(),
                    format!("{f} facets exceed the limit {MAX_FACETS}"),
                ));
            }
            if d + 1 > crate::complex::MAX_FACET_VERTICES {
                return Err(Error::DimensionTooLarge(d));
            }
        }
        Ok(match self {
            ZooId::Sphere(n) => sphere(*n),
            ZooId::Torus(n) => torus(*n),
            ZooId::Surface(g) => surface(*g),
            ZooId::Product(a, b) => {
                let (a, b) = (a.build()?, b.build()?);
                check_size(self, a.facets().len().saturating_mul(b.facets().len()))?;
                product_complex(&a, &b)
            }
            ZooId::ConnectedSum(a, b) => connected_sum(&a.build()?, &b.build()?)?,
            ZooId::Data(name) => SimplicialComplex::from_data(name)?,
            ZooId::File(path) => {
                let text = std::fs::read_to_string(path)?;
                ComplexFile::parse(&text)?.to_complex()?
            }
        })
    }
}

fn check_size(id: &ZooId, facets: usize) -> Result<()> {
    if facets > MAX_FACETS {
        return Err(Error::BadIdentifier(id.to_string(), format!("{facets} facets exceed the limit {MAX_FACETS}")));
    }
    Ok(())
}

/// Parses and builds in one step.
pub fn build(id: &str) -> Result<SimplicialComplex> {
    id.parse::<ZooId>()?.build()
}
