use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Bundled literature triangulations, addressable as `data:<name>`.
pub const DATA_FILES: &[(&str, &str)] =
    &[("rp2", include_str!("../../data/rp2.json")), ("torus7", include_str!("../../data/torus7.json"))];

/// Upper bound on `facets × 2^(vertices per facet)` accepted by the loader.
const MAX_FACE_EXPANSION: usize = 1 << 24;

/// On-disk complex: `{ "name": string, "facets": [[int, ...], ...] }` plus
/// optional derived counts, which are checked against the facets when read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub facets: Vec<Vec<usize>>,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
}

impl ComplexFile {
    /// Canonical form: facets as stored in the built complex (dense vertex
    /// ids, each facet increasing, facets sorted).
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self {
            facets: k.facets().to_vec(),
            name: k.name().to_owned(),
            f_vector: Some(k.f_vector()),
            euler_characteristic: Some(k.euler_characteristic()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        if let Some(first) = self.facets.first() {
            let per_facet = 1usize.checked_shl(first.len() as u32).unwrap_or(usize::MAX);
            if first.len() > super::MAX_FACET_VERTICES
                || self.facets.len().saturating_mul(per_facet) > MAX_FACE_EXPANSION
            {
                return Err(Error::FacetTooLarge { index: 0, found: first.len(), limit: super::MAX_FACET_VERTICES });
            }
        }
        let k = SimplicialComplex::from_facets(self.name.clone(), &self.facets)?;
        if let Some(f) = &self.f_vector {
            if *f != k.f_vector() {
                return Err(Error::InvalidComplexFile(format!(
                    "recorded f-vector {f:?} differs from {:?}",
                    k.f_vector()
                )));
            }
        }
        if let Some(chi) = self.euler_characteristic {
            if chi != k.euler_characteristic() {
                return Err(Error::InvalidComplexFile(format!(
                    "recorded Euler characteristic {chi} differs from {}",
                    k.euler_characteristic()
                )));
            }
        }
        Ok(k)
    }
}

impl SimplicialComplex {
    /// Parses and canonicalizes a complex file.
    pub fn from_json(text: &str) -> Result<Self> {
        ComplexFile::parse(text)?.to_complex()
    }

    pub fn to_json(&self) -> String {
        crate::io::canonical_json(&ComplexFile::from_complex(self))
    }

    /// Looks up a bundled triangulation by name.
    pub fn from_data(name: &str) -> Result<Self> {
        let (_, text) = DATA_FILES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::BadIdentifier(format!("data:{name}"), "no such data file".into()))?;
        Self::from_json(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_canonical() {
        let k = crate::complex::torus(2);
        let text = k.to_json();
        let back = SimplicialComplex::from_json(&text).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn loader_rejects_bad_input() {
        assert!(SimplicialComplex::from_json(r#"{"name":"x","facets":[]}"#).is_err());
        assert!(SimplicialComplex::from_json(r#"{"name":"x","facets":[[0,0,1]]}"#).is_err());
        assert!(SimplicialComplex::from_json(r#"{"name":"x","facets":[[0,-1]]}"#).is_err());
        assert!(SimplicialComplex::from_json(r#"{"name":"x","facets":[[0,1]],"extra":1}"#).is_err());
        let huge: Vec<usize> = (0..30).collect();
        let text = serde_json::to_string(&ComplexFile {
            facets: vec![huge],
            name: "h".into(),
            f_vector: None,
            euler_characteristic: None,
        })
        .unwrap();
        assert!(matches!(SimplicialComplex::from_json(&text), Err(Error::FacetTooLarge { .. })));
    }

    #[test]
    fn derived_counts_are_checked() {
        let ok = r#"{"name":"e","facets":[[0,1]],"f_vector":[2,1],"euler_characteristic":1}"#;
        assert!(SimplicialComplex::from_json(ok).is_ok());
        let bad = r#"{"name":"e","facets":[[0,1]],"euler_characteristic":2}"#;
        assert!(matches!(SimplicialComplex::from_json(bad), Err(Error::InvalidComplexFile(_))));
        assert!(crate::complex::surface(2).to_json().contains("\"euler_characteristic\": -2"));
    }

    #[test]
    fn bundled_data() {
        let rp2 = SimplicialComplex::from_data("rp2").unwrap();
        assert_eq!(rp2.f_vector(), vec![6, 15, 10]);
        assert!(rp2.is_closed_pseudomanifold());
        assert!(matches!(rp2.orient(), Err(Error::NonOrientable)));
        let t7 = SimplicialComplex::from_data("torus7").unwrap();
        assert_eq!(t7.f_vector(), vec![7, 21, 14]);
        assert!(t7.is_orientable());
        assert!(SimplicialComplex::from_data("nope").is_err());
    }
}
