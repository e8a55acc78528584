//! Finite simplicial complexes over a single global vertex order.
//!
//! Every simplex is stored as a strictly increasing vertex tuple, and every
//! sign convention in the crate (boundary faces, cup products, orientations)
//! is read off that one order.

pub(crate) mod generators;
mod io;

pub use generators::{connected_sum, product_complex, sphere, surface, torus};
pub use io::{ComplexFile, DATA_FILES};

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Facets are expanded into all their faces, so their size is capped.
pub const MAX_FACET_VERTICES: usize = 20;

/// A simplex as a strictly increasing list of vertex ids.
pub type Simplex = Vec<usize>;

/// A pure finite simplicial complex with every face enumerated.
///
/// Vertices are dense ids `0..vertex_count()`. `simplices(k)` is sorted
/// lexicographically, and the position of a simplex in that list is its index
/// in every matrix and cochain of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    simplices: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets`.
    ///
    /// Vertex ids are compressed to `0..V` preserving their relative order, so
    /// the orientation conventions of the input are kept.
    pub fn from_facets(name: impl Into<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let first = facets.first().ok_or(Error::EmptyFacets)?;
        let arity = first.len();
        if arity == 0 {
            return Err(Error::EmptyFacets);
        }
        if arity > MAX_FACET_VERTICES {
            return Err(Error::FacetTooLarge { index: 0, found: arity, limit: MAX_FACET_VERTICES });
        }
        let mut used = BTreeSet::new();
        let mut sorted_facets = Vec::with_capacity(facets.len());
        for (index, facet) in facets.iter().enumerate() {
            if facet.len() != arity {
                return Err(Error::MixedArity { index, expected: arity, found: facet.len() });
            }
            let mut f = facet.clone();
            f.sort_unstable();
            if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex { index, vertex: w[0] });
            }
            used.extend(f.iter().copied());
            sorted_facets.push(f);
        }
        let relabel: Vec<usize> = used.into_iter().collect();
        let dim = arity - 1;
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); dim + 1];
        for f in &sorted_facets {
            let f: Vec<usize> = f.iter().map(|v| relabel.binary_search(v).expect("vertex was recorded")).collect();
            // Every nonempty subset, via bitmask.
            for mask in 1u64..(1u64 << arity) {
                let face: Simplex = (0..arity).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                simplices[face.len() - 1].push(face);
            }
        }
        for list in &mut simplices {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { name: name.into(), simplices })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Top nonempty degree.
    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices[0].len()
    }

    /// Number of `k`-simplices; zero above the dimension.
    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn facets(&self) -> &[Simplex] {
        self.simplices(self.dimension())
    }

    /// Face counts `(f_0, ..., f_n)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Index of `simplex` among the `k`-simplices, `k = simplex.len() - 1`.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.simplices.get(k)?.binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    /// Alternating sum of face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// For every ridge (codimension-one face), the facets containing it
    /// together with the position of the vertex removed to reach the ridge.
    pub(crate) fn ridge_incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.dimension();
        if n == 0 {
            return Vec::new();
        }
        let mut incidence = vec![Vec::new(); self.count(n - 1)];
        let mut ridge = Vec::with_capacity(n);
        for (fi, facet) in self.facets().iter().enumerate() {
            for skip in 0..=n {
                ridge.clear();
                ridge.extend(facet.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                let r = self.index_of(&ridge).expect("complex is downward closed");
                incidence[r].push((fi, skip));
            }
        }
        incidence
    }

    /// True iff the complex has dimension at least one, every ridge lies in
    /// exactly two facets, and the facets are connected through ridges.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        if self.dimension() == 0 {
            return false;
        }
        let incidence = self.ridge_incidence();
        if incidence.iter().any(|facets| facets.len() != 2) {
            return false;
        }
        let adjacency = facet_adjacency(self.count(self.dimension()), &incidence);
        let mut seen = vec![false; adjacency.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(f) = queue.pop_front() {
            for &(g, _, _) in &adjacency[f] {
                if !seen[g] {
                    seen[g] = true;
                    reached += 1;
                    queue.push_back(g);
                }
            }
        }
        reached == adjacency.len()
    }

    /// Propagates facet signs across ridges so that induced boundary
    /// orientations cancel.
    pub fn orient(&self) -> Result<Orientation> {
        if !self.is_closed_pseudomanifold() {
            return Err(Error::NotClosedPseudomanifold);
        }
        let incidence = self.ridge_incidence();
        let adjacency = facet_adjacency(self.count(self.dimension()), &incidence);
        let mut signs = vec![0i8; adjacency.len()];
        signs[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for &(g, i, j) in &adjacency[f] {
                // s_f (-1)^i + s_g (-1)^j = 0
                let want = if (i + j) % 2 == 0 { -signs[f] } else { signs[f] };
                if signs[g] == 0 {
                    signs[g] = want;
                    queue.push_back(g);
                } else if signs[g] != want {
                    return Err(Error::NonOrientable);
                }
            }
        }
        Ok(Orientation { facet_signs: signs })
    }

    pub fn is_orientable(&self) -> bool {
        self.orient().is_ok()
    }

    /// Disjoint union, with the second complex's vertices shifted after the first.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch(self.dimension(), other.dimension()));
        }
        let shift = self.vertex_count();
        let mut facets: Vec<Vec<usize>> = self.facets().to_vec();
        facets.extend(other.facets().iter().map(|f| f.iter().map(|v| v + shift).collect()));
        Self::from_facets(format!("{}+{}", self.name, other.name), &facets)
    }
}

/// Facet neighbours through shared ridges: `(neighbour, my_skip, their_skip)`.
fn facet_adjacency(facets: usize, incidence: &[Vec<(usize, usize)>]) -> Vec<Vec<(usize, usize, usize)>> {
    let mut adjacency = vec![Vec::new(); facets];
    for pair in incidence {
        if let [(f, i), (g, j)] = pair[..] {
            adjacency[f].push((g, i, j));
            adjacency[g].push((f, j, i));
        }
    }
    adjacency
}

/// One sign per facet making the signed facet sum a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub facet_signs: Vec<i8>,
}

impl Orientation {
    pub fn reversed(&self) -> Self {
        Self { facet_signs: self.facet_signs.iter().map(|s| -s).collect() }
    }
}

/// Real coefficients on the `k`-simplices, indexed like `simplices(k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn zeros(k: &SimplicialComplex, degree: usize) -> Self {
        Self { degree, values: vec![0.0; k.count(degree)] }
    }

    pub fn constant(k: &SimplicialComplex, degree: usize, value: f64) -> Self {
        Self { degree, values: vec![value; k.count(degree)] }
    }

    pub fn new(k: &SimplicialComplex, degree: usize, values: Vec<f64>) -> Result<Self> {
        if degree > k.dimension() {
            return Err(Error::DegreeOutOfRange { degree, max: k.dimension() });
        }
        if values.len() != k.count(degree) {
            return Err(Error::CochainLength { degree, expected: k.count(degree), found: values.len() });
        }
        Ok(Self { degree, values })
    }

    pub(crate) fn check(&self, k: &SimplicialComplex) -> Result<()> {
        if self.degree > k.dimension() {
            return Err(Error::DegreeOutOfRange { degree: self.degree, max: k.dimension() });
        }
        if self.values.len() != k.count(self.degree) {
            return Err(Error::CochainLength {
                degree: self.degree,
                expected: k.count(self.degree),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
