//! Fixture complexes: simplex and cross-polytope boundaries, the octahedron,
//! cubical tori and their Kuhn triangulations.

use std::fmt;
use std::str::FromStr;

use super::{Incidence, PolyComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Boundary of the `d`-simplex, a triangulated `(d-1)`-sphere.
    SimplexBoundary(usize),
    Octahedron,
    /// `a × b` square grid on the 2-torus.
    GridTorus(usize, usize),
    /// `a × b × c` cube grid on the 3-torus.
    CubeTorus(usize, usize, usize),
    /// Boundary of the `d`-dimensional cross-polytope.
    CrossPolytope(usize),
    /// Kuhn triangulation of the `a × b` grid torus (each square cut along a diagonal).
    TriTorus(usize, usize),
    /// Kuhn triangulation of the `a × b × c` cube torus (six tetrahedra per cube).
    TetTorus(usize, usize, usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::SimplexBoundary(d) => write!(f, "simplex_boundary({d})"),
            Generator::Octahedron => write!(f, "octahedron"),
            Generator::GridTorus(a, b) => write!(f, "grid_torus({a},{b})"),
            Generator::CubeTorus(a, b, c) => write!(f, "cube_torus({a},{b},{c})"),
            Generator::CrossPolytope(d) => write!(f, "cross_polytope({d})"),
            Generator::TriTorus(a, b) => write!(f, "tri_torus({a},{b})"),
            Generator::TetTorus(a, b, c) => write!(f, "tet_torus({a},{b},{c})"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Accepts `name`, `name:p,q` or `name(p,q)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.find([':', '(']) {
            Some(i) => (&s[..i], s[i + 1..].trim_end_matches(')')),
            None => (s, ""),
        };
        let params: Vec<usize> = if params.trim().is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| Error::GeneratorParameters(format!("`{p}`")))
                })
                .collect::<Result<_>>()?
        };
        let arity = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::GeneratorParameters(format!(
                    "{name} takes {n} parameters"
                )))
            }
        };
        match name {
            "simplex_boundary" => {
                arity(1)?;
                Ok(Generator::SimplexBoundary(params[0]))
            }
            "octahedron" => {
                arity(0)?;
                Ok(Generator::Octahedron)
            }
            "grid_torus" => {
                arity(2)?;
                Ok(Generator::GridTorus(params[0], params[1]))
            }
            "cube_torus" => {
                arity(3)?;
                Ok(Generator::CubeTorus(params[0], params[1], params[2]))
            }
            "cross_polytope" => {
                arity(1)?;
                Ok(Generator::CrossPolytope(params[0]))
            }
            "tri_torus" => {
                arity(2)?;
                Ok(Generator::TriTorus(params[0], params[1]))
            }
            "tet_torus" => {
                arity(3)?;
                Ok(Generator::TetTorus(params[0], params[1], params[2]))
            }
            other => Err(Error::UnsupportedGenerator(other.to_string())),
        }
    }
}

/// Builds a fixture complex. Every output passes validation.
pub fn generate(g: &Generator) -> Result<PolyComplex> {
    match *g {
        Generator::SimplexBoundary(d) => {
            if !(3..=5).contains(&d) {
                return Err(Error::GeneratorParameters(format!(
                    "simplex_boundary needs d in 3..=5, got {d}"
                )));
            }
            simplex_boundary(d)
        }
        Generator::Octahedron => octahedron(),
        Generator::GridTorus(a, b) => {
            if a < 3 || b < 3 {
                return Err(Error::GeneratorParameters(format!(
                    "grid_torus needs a, b >= 3, got ({a},{b})"
                )));
            }
            cubical_torus(&[a, b])
        }
        Generator::CubeTorus(a, b, c) => {
            if a < 3 || b < 3 || c < 3 {
                return Err(Error::GeneratorParameters(format!(
                    "cube_torus needs a, b, c >= 3, got ({a},{b},{c})"
                )));
            }
            cubical_torus(&[a, b, c])
        }
        Generator::CrossPolytope(d) => {
            if !(3..=5).contains(&d) {
                return Err(Error::GeneratorParameters(format!(
                    "cross_polytope needs d in 3..=5, got {d}"
                )));
            }
            cross_polytope(d)
        }
        Generator::TriTorus(a, b) => {
            if a < 3 || b < 3 {
                return Err(Error::GeneratorParameters(format!(
                    "tri_torus needs a, b >= 3, got ({a},{b})"
                )));
            }
            kuhn_torus(&[a, b])
        }
        Generator::TetTorus(a, b, c) => {
            if a < 3 || b < 3 || c < 3 {
                return Err(Error::GeneratorParameters(format!(
                    "tet_torus needs a, b, c >= 3, got ({a},{b},{c})"
                )));
            }
            kuhn_torus(&[a, b, c])
        }
    }
}

/// Simplicial complex spanned by the given top simplices (vertex lists).
/// Cells of each dimension are the distinct vertex sets in lexicographic
/// order, each oriented by increasing vertex index.
pub fn simplicial_complex(tops: &[Vec<usize>]) -> Result<PolyComplex> {
    let sorted_tops: Vec<Vec<usize>> = tops.iter().map(|t| sorted(t)).collect();
    ordered_simplicial_complex(&sorted_tops)
}

/// Like [`simplicial_complex`], but each face is oriented by the order its
/// vertices have in the listed top simplices. The orders must agree on
/// shared faces.
pub fn ordered_simplicial_complex(tops: &[Vec<usize>]) -> Result<PolyComplex> {
    use std::collections::{BTreeMap, BTreeSet};
    let n = match tops.first() {
        Some(t) if t.len() >= 3 => t.len() - 1,
        Some(t) => return Err(Error::DimensionTooSmall(t.len().saturating_sub(1))),
        None => return Err(Error::InvalidComplex("no top simplices".into())),
    };
    // sorted vertex set -> oriented vertex list
    let mut levels: Vec<BTreeMap<Vec<usize>, Vec<usize>>> = vec![BTreeMap::new(); n + 1];
    for top in tops {
        if top.len() != n + 1 || top.iter().collect::<BTreeSet<_>>().len() != n + 1 {
            return Err(Error::InvalidComplex(format!(
                "degenerate top simplex {top:?}"
            )));
        }
        for (k, level) in levels.iter_mut().enumerate() {
            for idx in subsets(n + 1, k + 1) {
                let ordered: Vec<usize> = idx.iter().map(|&i| top[i]).collect();
                match level.get(&sorted(&ordered)) {
                    Some(prev) if *prev != ordered => {
                        return Err(Error::InvalidComplex(format!(
                            "face {:?} ordered inconsistently",
                            sorted(&ordered)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        level.insert(sorted(&ordered), ordered);
                    }
                }
            }
        }
    }
    let index: Vec<BTreeMap<&[usize], usize>> = levels
        .iter()
        .map(|l| {
            l.keys()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let mut boundaries = vec![vec![Vec::new(); levels[0].len()]];
    for k in 1..=n {
        let lists = levels[k]
            .values()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        let key = sorted(&face);
                        let sign: i8 = if i % 2 == 0 { 1 } else { -1 };
                        (
                            index[k - 1][key.as_slice()],
                            sign * permutation_sign(&face, &levels[k - 1][&key]),
                        )
                    })
                    .collect()
            })
            .collect();
        boundaries.push(lists);
    }
    PolyComplex::new(n, levels.iter().map(BTreeMap::len).collect(), boundaries)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Sign of the permutation taking `b` to `a` (same elements).
fn permutation_sign(a: &[usize], b: &[usize]) -> i8 {
    let pos: Vec<usize> = a
        .iter()
        .map(|x| b.iter().position(|y| y == x).expect("same set"))
        .collect();
    let mut inversions = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn from_simplex_levels(n: usize, levels: &[Vec<Vec<usize>>]) -> Result<PolyComplex> {
    let index: Vec<std::collections::HashMap<&[usize], usize>> = levels
        .iter()
        .map(|l| {
            l.iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect()
        })
        .collect();
    let mut boundaries = vec![vec![Vec::new(); levels[0].len()]];
    for k in 1..=n {
        let lists = levels[k]
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        (
                            index[k - 1][face.as_slice()],
                            if i % 2 == 0 { 1 } else { -1 },
                        )
                    })
                    .collect()
            })
            .collect();
        boundaries.push(lists);
    }
    PolyComplex::new(n, levels.iter().map(Vec::len).collect(), boundaries)
}

/// Boundary of the `d`-dimensional cross-polytope. Vertex `2i` is `+e_i`,
/// vertex `2i + 1` is `−e_i`.
pub fn cross_polytope(d: usize) -> Result<PolyComplex> {
    if d < 3 {
        return Err(Error::GeneratorParameters(format!(
            "cross_polytope needs d >= 3, got {d}"
        )));
    }
    let tops: Vec<Vec<usize>> = (0..1usize << d)
        .map(|bits| (0..d).map(|i| 2 * i + ((bits >> i) & 1)).collect())
        .collect();
    simplicial_complex(&tops)
}

/// Kuhn triangulation of the torus `(ℤ/d_0) × … × (ℤ/d_{n-1})`: every unit
/// cube is cut into the `n!` simplices `p, p + e_{π(1)}, p + e_{π(1)} + e_{π(2)}, …`.
/// Vertices are numbered as in [`cubical_torus`]. Every simplex is oriented
/// by this lattice chain order, so translations preserve orientations.
pub fn kuhn_torus(dims: &[usize]) -> Result<PolyComplex> {
    let n = dims.len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if dims.iter().any(|&d| d < 3) {
        return Err(Error::GeneratorParameters(format!(
            "torus sizes must be >= 3, got {dims:?}"
        )));
    }
    let positions: usize = dims.iter().product();
    let pack = |p: &[usize]| -> usize { p.iter().zip(dims).fold(0, |acc, (&c, &d)| acc * d + c) };
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for a in (0..n).filter(|a| !p.contains(a)) {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut tops = Vec::with_capacity(positions * perms.len());
    for pos in 0..positions {
        let mut start = vec![0; n];
        let mut idx = pos;
        for axis in (0..n).rev() {
            start[axis] = idx % dims[axis];
            idx /= dims[axis];
        }
        for perm in &perms {
            let mut p = start.clone();
            let mut simplex = vec![pack(&p)];
            for &axis in perm {
                p[axis] = (p[axis] + 1) % dims[axis];
                simplex.push(pack(&p));
            }
            tops.push(simplex);
        }
    }
    ordered_simplicial_complex(&tops)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Boundary complex of the `d`-simplex on vertices `0..=d`. Cells are vertex
/// subsets in lexicographic order, oriented by increasing vertex order.
pub fn simplex_boundary(d: usize) -> Result<PolyComplex> {
    if d < 3 {
        return Err(Error::GeneratorParameters(format!(
            "simplex_boundary needs d >= 3, got {d}"
        )));
    }
    let n = d - 1;
    let levels: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(d + 1, k + 1)).collect();
    from_simplex_levels(n, &levels)
}

/// The octahedron: vertices `±x, ±y, ±z` (indices 0..6 in that order),
/// triangles oriented outward.
pub fn octahedron() -> Result<PolyComplex> {
    let coords: [[i64; 3]; 6] = [
        [1, 0, 0],
        [-1, 0, 0],
        [0, 1, 0],
        [0, -1, 0],
        [0, 0, 1],
        [0, 0, -1],
    ];
    let antipodal = |a: usize, b: usize| a / 2 == b / 2;
    let mut edges = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            if !antipodal(a, b) {
                edges.push((a, b));
            }
        }
    }
    let edge_index = |a: usize, b: usize| -> Incidence {
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        (
            edges
                .iter()
                .position(|&e| e == (lo, hi))
                .expect("edge exists"),
            s,
        )
    };
    let mut triangles = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                let (p, q, r) = (coords[x], coords[y], coords[z]);
                let det = p[0] * (q[1] * r[2] - q[2] * r[1]) - p[1] * (q[0] * r[2] - q[2] * r[0])
                    + p[2] * (q[0] * r[1] - q[1] * r[0]);
                triangles.push(if det > 0 { [x, y, z] } else { [x, z, y] });
            }
        }
    }
    let b1 = edges.iter().map(|&(a, b)| vec![(b, 1), (a, -1)]).collect();
    let b2 = triangles
        .iter()
        .map(|&[a, b, c]| vec![edge_index(a, b), edge_index(b, c), edge_index(c, a)])
        .collect();
    PolyComplex::new(
        2,
        vec![6, edges.len(), triangles.len()],
        vec![vec![], b1, b2],
    )
}

/// Cubical decomposition of the torus `(ℤ/d_0) × … × (ℤ/d_{n-1})`.
///
/// A `k`-cell is a pair (position, sorted set of `k` directions). Cells are
/// ordered position-major, the first coordinate most significant, then by
/// direction set in lexicographic order. Each size must be at least 2; sizes
/// below 3 produce complexes that fail pair uniqueness.
pub fn cubical_torus(dims: &[usize]) -> Result<PolyComplex> {
    let n = dims.len();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if dims.iter().any(|&d| d < 2) {
        return Err(Error::GeneratorParameters(format!(
            "torus sizes must be >= 2, got {dims:?}"
        )));
    }
    let positions: usize = dims.iter().product();
    let dir_sets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();

    let unpack = |mut idx: usize| -> Vec<usize> {
        let mut p = vec![0; n];
        for axis in (0..n).rev() {
            p[axis] = idx % dims[axis];
            idx /= dims[axis];
        }
        p
    };
    let pack = |p: &[usize]| -> usize { p.iter().zip(dims).fold(0, |acc, (&c, &d)| acc * d + c) };

    let mut boundaries = vec![vec![Vec::new(); positions]];
    for k in 1..=n {
        let mut lists = Vec::with_capacity(positions * dir_sets[k].len());
        for pos in 0..positions {
            let p = unpack(pos);
            for dirs in &dir_sets[k] {
                let mut faces = Vec::with_capacity(2 * k);
                for (r, &axis) in dirs.iter().enumerate() {
                    let mut rest = dirs.clone();
                    rest.remove(r);
                    let rank = dir_sets[k - 1]
                        .iter()
                        .position(|s| *s == rest)
                        .expect("subset");
                    let width = dir_sets[k - 1].len();
                    let sign: i8 = if r % 2 == 0 { 1 } else { -1 };
                    let mut shifted = p.clone();
                    shifted[axis] = (shifted[axis] + 1) % dims[axis];
                    faces.push((pack(&shifted) * width + rank, sign));
                    faces.push((pos * width + rank, -sign));
                }
                lists.push(faces);
            }
        }
        boundaries.push(lists);
    }
    let counts = dir_sets.iter().map(|s| positions * s.len()).collect();
    PolyComplex::new(n, counts, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts() {
        let s4 = generate(&Generator::SimplexBoundary(4)).unwrap();
        assert_eq!(s4.counts(), &[5, 10, 10, 5]);
        assert_eq!(s4.dim(), 3);
        let t = generate(&Generator::GridTorus(3, 3)).unwrap();
        assert_eq!(t.counts(), &[9, 18, 9]);
        assert_eq!(t.euler_characteristic(), 0);
        let o = generate(&Generator::Octahedron).unwrap();
        assert_eq!(o.counts(), &[6, 12, 8]);
        assert_eq!(o.euler_characteristic(), 2);
        let c = generate(&Generator::CubeTorus(3, 3, 3)).unwrap();
        assert_eq!(c.counts(), &[27, 81, 81, 27]);
        let x = generate(&Generator::CrossPolytope(4)).unwrap();
        assert_eq!(x.counts(), &[8, 24, 32, 16]);
        let t = generate(&Generator::TriTorus(3, 3)).unwrap();
        assert_eq!(t.counts(), &[9, 27, 18]);
        let k = generate(&Generator::TetTorus(3, 3, 3)).unwrap();
        assert_eq!(k.counts(), &[27, 189, 324, 162]);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn cross_polytope_three_matches_octahedron_counts() {
        let x = generate(&Generator::CrossPolytope(3)).unwrap();
        assert_eq!(
            x.counts(),
            generate(&Generator::Octahedron).unwrap().counts()
        );
    }

    #[test]
    fn all_fixtures_validate() {
        for g in [
            Generator::SimplexBoundary(3),
            Generator::SimplexBoundary(4),
            Generator::SimplexBoundary(5),
            Generator::Octahedron,
            Generator::GridTorus(3, 3),
            Generator::GridTorus(4, 5),
            Generator::CubeTorus(3, 3, 3),
            Generator::CrossPolytope(4),
            Generator::CrossPolytope(5),
            Generator::TriTorus(3, 3),
            Generator::TriTorus(3, 4),
            Generator::TetTorus(3, 3, 3),
        ] {
            let x = generate(&g).unwrap();
            assert!(x.validation().passed(), "{g}: {}", x.validation().summary());
        }
        assert_eq!(
            generate(&Generator::Octahedron).unwrap().regularity(),
            Some(2)
        );
        assert_eq!(
            generate(&Generator::CubeTorus(3, 4, 5))
                .unwrap()
                .regularity(),
            Some(4)
        );
        assert_eq!(
            generate(&Generator::TetTorus(3, 3, 3))
                .unwrap()
                .regularity(),
            Some(3)
        );
    }

    #[test]
    fn parameters_below_minimum_rejected() {
        assert!(generate(&Generator::GridTorus(2, 3)).is_err());
        assert!(generate(&Generator::SimplexBoundary(6)).is_err());
        assert!(generate(&Generator::SimplexBoundary(2)).is_err());
        assert!("moebius:3".parse::<Generator>().is_err());
    }

    #[test]
    fn generator_names_parse() {
        assert_eq!(
            "grid_torus:3,4".parse::<Generator>().unwrap(),
            Generator::GridTorus(3, 4)
        );
        assert_eq!(
            "grid_torus(3,4)".parse::<Generator>().unwrap(),
            Generator::GridTorus(3, 4)
        );
        assert_eq!(
            "octahedron".parse::<Generator>().unwrap(),
            Generator::Octahedron
        );
        assert_eq!(
            "simplex_boundary:4".parse::<Generator>().unwrap(),
            Generator::SimplexBoundary(4)
        );
        let g = Generator::CubeTorus(3, 4, 5);
        assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
    }

    #[test]
    fn deterministic() {
        let a = generate(&Generator::GridTorus(4, 5)).unwrap();
        let b = generate(&Generator::GridTorus(4, 5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
    }
}
