use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Staircase triangulation of `|a| × |b|`.
///
/// Vertex `(u, v)` gets id `u * |V(b)| + v`, so the global order is
/// lexicographic on pairs. Each pair of facets contributes one simplex per
/// monotone lattice path through the grid of their vertices.
pub fn product_complex(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let width = b.vertex_count();
    let (n, m) = (a.dimension(), b.dimension());
    let mut facets = Vec::with_capacity(a.facets().len() * b.facets().len() * binomial(n + m, n));
    let mut path = Vec::with_capacity(n + m + 1);
    for s in a.facets() {
        for t in b.facets() {
            staircases(s, t, 0, 0, width, &mut path, &mut facets);
        }
    }
    SimplicialComplex::from_facets(format!("product:{},{}", a.name(), b.name()), &facets)
        .expect("product of nonempty complexes is nonempty")
}

fn staircases(
    s: &[usize],
    t: &[usize],
    i: usize,
    j: usize,
    width: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    path.push(s[i] * width + t[j]);
    if i + 1 == s.len() && j + 1 == t.len() {
        out.push(path.clone());
    }
    if i + 1 < s.len() {
        staircases(s, t, i + 1, j, width, path, out);
    }
    if j + 1 < t.len() {
        staircases(s, t, i, j + 1, width, path, out);
    }
    path.pop();
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Connected sum of two closed oriented pseudomanifolds of equal dimension.
///
/// The lexicographically first facet is removed from each input. The removed
/// facet of `b` is glued onto that of `a` matching sorted positions; if that
/// gluing does not produce an orientable result the first two positions are
/// swapped. The remaining vertices of `b` are numbered after those of `a`.
pub fn connected_sum(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(a.dimension(), b.dimension()));
    }
    a.orient()?;
    b.orient()?;
    let name = format!("connsum:{},{}", a.name(), b.name());
    let fa = &a.facets()[0];
    let fb = &b.facets()[0];
    let mut position: Vec<usize> = (0..fa.len()).collect();
    for attempt in 0..2 {
        if attempt == 1 {
            position.swap(0, 1);
        }
        let shift = a.vertex_count();
        let relabel = |v: usize| -> usize {
            match fb.binary_search(&v) {
                Ok(p) => fa[position[p]],
                // Vertices of `b` outside the glued facet keep their relative order.
                Err(p) => shift + v - p,
            }
        };
        let mut facets: Vec<Vec<usize>> = a.facets()[1..].to_vec();
        facets.extend(b.facets()[1..].iter().map(|f| f.iter().map(|&v| relabel(v)).collect()));
        let glued = SimplicialComplex::from_facets(name.clone(), &facets)?;
        if glued.is_orientable() {
            return Ok(glued);
        }
    }
    Err(Error::NonOrientable)
}

/// Boundary of the `(n+1)`-simplex.
pub fn sphere(n: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..n + 2).map(|skip| (0..n + 2).filter(|&v| v != skip).collect()).collect();
    SimplicialComplex::from_facets(format!("sphere:{n}"), &facets).expect("nonempty")
}

/// `n`-fold staircase product of the three-vertex circle.
pub fn torus(n: usize) -> SimplicialComplex {
    let circle = SimplicialComplex::from_facets("torus:1", &[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("nonempty");
    let mut t = circle.clone();
    for _ in 1..n {
        t = product_complex(&t, &circle);
    }
    t.with_name(format!("torus:{n}"))
}

/// Closed orientable surface of genus `g`: iterated connected sums of `torus(2)`.
pub fn surface(g: usize) -> SimplicialComplex {
    if g == 0 {
        return sphere(2).with_name("surface:0");
    }
    let handle = torus(2);
    let mut s = handle.clone();
    for _ in 1..g {
        s = connected_sum(&s, &handle).expect("tori are closed and orientable");
    }
    s.with_name(format!("surface:{g}"))
}
