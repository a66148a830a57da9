//! Full-dimensional simplicial lattice polytopes with the origin in their
//! interior.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, det, int, rat_int, snf, Int, IntMatrix, Rat};
use crate::fanbox::Fan;

/// A facet `F` together with the functional `u_F` normalized so that
/// `<u_F, v> = 1` on the vertices of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub vertex_indices: Vec<usize>,
    pub normal: Vec<Rat>,
}

impl Facet {
    pub fn eval(&self, v: &[Int]) -> Rat {
        self.normal.iter().zip(v).map(|(u, x)| u * rat_int(x)).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.normal.iter().all(|u| u.is_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<Int>>,
    facets: Vec<Facet>,
}

/// Ehrhart delta-vector `(δ_0, ..., δ_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaVector(pub Vec<Int>);

impl DeltaVector {
    pub fn entries(&self) -> &[Int] {
        &self.0
    }

    pub fn sum(&self) -> Int {
        self.0.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl LatticePolytope {
    pub fn from_vertices(dim: usize, vertices: Vec<Vec<Int>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("dimension must be positive".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "vertex of length {} in dimension {dim}",
                v.len()
            )));
        }
        if vertices.len() < dim + 1 {
            return Err(Error::Dimension(format!(
                "{} vertices cannot span dimension {dim}",
                vertices.len()
            )));
        }
        for i in 0..vertices.len() {
            if vertices[i + 1..].contains(&vertices[i]) {
                return Err(Error::Validation(format!(
                    "repeated vertex {}",
                    fmt_point(&vertices[i])
                )));
            }
        }
        if affine_rank(&vertices) != dim {
            return Err(Error::Dimension("polytope is not full-dimensional".into()));
        }

        let hyperplanes = supporting_hyperplanes(dim, &vertices)?;
        let mut on_facet = vec![false; vertices.len()];
        for (idx, _, _) in &hyperplanes {
            for &i in idx {
                on_facet[i] = true;
            }
        }
        if let Some(i) = on_facet.iter().position(|&b| !b) {
            return Err(Error::Validation(format!(
                "{} is not a vertex of the convex hull",
                fmt_point(&vertices[i])
            )));
        }
        if hyperplanes.iter().any(|(_, _, c)| !c.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let facets = hyperplanes
            .into_iter()
            .map(|(vertex_indices, a, c)| Facet {
                vertex_indices,
                normal: a.iter().map(|x| Rat::new(x.clone(), c.clone())).collect(),
            })
            .collect();
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    pub fn from_i64(dim: usize, vertices: &[Vec<i64>]) -> Result<Self> {
        Self::from_vertices(
            dim,
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    /// Facets in ascending order of their sorted vertex index sets.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Square matrix whose columns are the vertices of facet `f`.
    pub fn facet_matrix(&self, f: usize) -> IntMatrix {
        let cols: Vec<&[Int]> = self.facets[f]
            .vertex_indices
            .iter()
            .map(|&i| self.vertices[i].as_slice())
            .collect();
        IntMatrix::from_columns(&cols).expect("facet vertices have equal length")
    }

    /// The polar polytope is a lattice polytope iff every `u_F` is integral.
    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(Facet::is_integral)
    }

    /// `n! vol(P)`, summed over the cones of the face fan.
    pub fn normalized_volume(&self) -> Int {
        (0..self.facets.len())
            .map(|f| det(&self.facet_matrix(f)).expect("square").abs())
            .sum()
    }

    /// The Newton function: `max_F <u_F, v>`.
    pub fn newton_nu(&self, v: &[Int]) -> Rat {
        self.facets
            .iter()
            .map(|f| f.eval(v))
            .max()
            .expect("a polytope has facets")
    }

    pub fn contains_dilate(&self, v: &[Int], level: u64) -> bool {
        let bound = Rat::from_integer(Int::from(level));
        self.facets.iter().all(|f| f.eval(v) <= bound)
    }

    /// Lattice points of `level * P` in lexicographic order.
    pub fn lattice_points(&self, level: u64) -> Vec<Vec<Int>> {
        Fan::new(self).graded_points(level).into_keys().collect()
    }

    /// Reference enumeration: scan the integer bounding box of `level * P`
    /// and keep the points satisfying every facet inequality.
    pub fn lattice_points_scan(&self, level: u64) -> Vec<Vec<Int>> {
        let level_int = Int::from(level);
        let lo: Vec<Int> = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| &v[k]).min().unwrap() * &level_int)
            .collect();
        let hi: Vec<Int> = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| &v[k]).max().unwrap() * &level_int)
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains_dilate(&cur, level) {
                out.push(cur.clone());
            }
            // odometer, last coordinate fastest
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    for (c, l) in cur.iter_mut().zip(&lo).skip(k + 1) {
                        *c = l.clone();
                    }
                    break;
                }
            }
        }
    }

    /// Ehrhart counts `L_P(0), ..., L_P(level)` from a single enumeration of
    /// `level * P` graded by the Newton function.
    pub fn ehrhart_counts(&self, level: u64) -> Vec<Int> {
        let points = Fan::new(self).graded_points(level);
        let mut counts = vec![Int::zero(); level as usize + 1];
        for nu in points.values() {
            let start = nu.ceil().to_integer();
            let start: usize = num_traits::ToPrimitive::to_usize(&start).expect("nu <= level");
            counts[start] += 1;
        }
        for j in 1..counts.len() {
            let prev = counts[j - 1].clone();
            counts[j] += prev;
        }
        counts
    }

    /// δ-vector by binomial inversion of the Ehrhart series numerator.
    pub fn delta_vector(&self) -> DeltaVector {
        let n = self.dim as u64;
        let counts = self.ehrhart_counts(n);
        DeltaVector(delta_from_counts(n, &counts))
    }
}

/// `δ_j = Σ_{i<=j} (-1)^i C(n+1, i) L(j-i)` for `j = 0..=n`.
pub fn delta_from_counts(n: u64, counts: &[Int]) -> Vec<Int> {
    (0..=n as usize)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let term = binomial(n + 1, i as u64) * &counts[j - i];
                    if i % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

pub(crate) fn fmt_point(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn affine_rank(vertices: &[Vec<Int>]) -> usize {
    let base = &vertices[0];
    let rows: Vec<Int> = vertices[1..]
        .iter()
        .flat_map(|v| v.iter().zip(base).map(|(a, b)| a - b))
        .collect();
    let m = IntMatrix::new(vertices.len() - 1, base.len(), rows).expect("consistent shape");
    snf(&m)
        .invariant_factors()
        .iter()
        .filter(|d| !d.is_zero())
        .count()
}

/// Facet hyperplanes `<a, x> = c` (with every vertex satisfying `<a, x> <= c`)
/// found by testing every `dim`-subset of vertices.
fn supporting_hyperplanes(
    dim: usize,
    vertices: &[Vec<Int>],
) -> Result<Vec<(Vec<usize>, Vec<Int>, Int)>> {
    let mut out = Vec::new();
    for subset in combinations(vertices.len(), dim) {
        // null vector of the rows (v_j, -1) by signed maximal minors
        let entries: Vec<Int> = subset
            .iter()
            .flat_map(|&j| {
                vertices[j]
                    .iter()
                    .cloned()
                    .chain(std::iter::once(-Int::one()))
            })
            .collect();
        let m = IntMatrix::new(dim, dim + 1, entries).expect("consistent shape");
        let mut normal: Vec<Int> = (0..=dim)
            .map(|k| {
                let cols: Vec<usize> = (0..=dim).filter(|&c| c != k).collect();
                let sub = select_columns(&m, &cols);
                let d = det(&sub).expect("square");
                if k % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let mut offset = normal.pop().unwrap();
        let mut a = normal;
        let side = |w: &Vec<Int>, a: &[Int], c: &Int| -> Int {
            a.iter().zip(w).map(|(x, y)| x * y).sum::<Int>() - c
        };
        let values: Vec<Int> = vertices.iter().map(|w| side(w, &a, &offset)).collect();
        let pos = values.iter().any(Signed::is_positive);
        let neg = values.iter().any(Signed::is_negative);
        if pos && neg {
            continue;
        }
        if pos {
            a.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        if let Some(extra) =
            (0..vertices.len()).find(|i| values[*i].is_zero() && !subset.contains(i))
        {
            return Err(Error::NonSimplicial(format!(
                "vertex {} lies on the facet spanned by {:?}",
                fmt_point(&vertices[extra]),
                subset
            )));
        }
        out.push((subset, a, offset));
    }
    Ok(out)
}

fn select_columns(m: &IntMatrix, cols: &[usize]) -> IntMatrix {
    let entries = (0..m.rows())
        .flat_map(|i| cols.iter().map(move |&j| m[(i, j)].clone()))
        .collect();
    IntMatrix::new(m.rows(), cols.len(), entries).expect("consistent shape")
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lattice points of `level * P` keyed by point, with their Newton degree.
pub type GradedPoints = BTreeMap<Vec<Int>, Rat>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    pub(crate) fn poly(dim: usize, v: &[&[i64]]) -> Result<LatticePolytope> {
        LatticePolytope::from_i64(dim, &v.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn triangle() -> LatticePolytope {
        poly(2, &[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn square() -> LatticePolytope {
        poly(2, &[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap()
    }

    fn w113() -> LatticePolytope {
        poly(2, &[&[1, 0], &[-1, 3], &[0, -1]]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(triangle().facets().len(), 3);
        assert!(matches!(
            poly(2, &[&[1, 0], &[0, 1]]),
            Err(Error::Dimension(_))
        ));
        assert_eq!(
            poly(2, &[&[1, 0], &[0, 1], &[1, 1]]),
            Err(Error::OriginNotInterior)
        );
        assert!(matches!(
            poly(2, &[&[1, 0], &[2, 0], &[3, 0]]),
            Err(Error::Dimension(_))
        ));
        // the octahedron's facets are triangles but the cube's are squares
        assert!(matches!(
            poly(
                3,
                &[
                    &[1, 1, 1],
                    &[1, 1, -1],
                    &[1, -1, 1],
                    &[1, -1, -1],
                    &[-1, 1, 1],
                    &[-1, 1, -1],
                    &[-1, -1, 1],
                    &[-1, -1, -1]
                ]
            ),
            Err(Error::NonSimplicial(_))
        ));
        assert!(matches!(
            poly(2, &[&[1, 0], &[0, 1], &[-1, -1], &[0, 0]]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            poly(2, &[&[1, 0], &[0, 1], &[-1, -1], &[1, 0]]),
            Err(Error::Validation(_))
        ));
        // origin on the boundary
        assert_eq!(
            poly(2, &[&[1, 0], &[0, 1], &[-1, 0]]),
            Err(Error::OriginNotInterior)
        );
    }

    #[test]
    fn facet_normals() {
        let t = triangle();
        let idx: Vec<_> = t
            .facets()
            .iter()
            .map(|f| f.vertex_indices.clone())
            .collect();
        assert_eq!(idx, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        for f in t.facets() {
            for &i in &f.vertex_indices {
                assert_eq!(f.eval(&t.vertices()[i]), rat(1, 1));
            }
        }
        assert_eq!(t.facets()[0].normal, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(t.facets()[1].normal, vec![rat(1, 1), rat(-2, 1)]);

        let s = square();
        let mut normals: Vec<_> = s.facets().iter().map(|f| f.normal.clone()).collect();
        normals.sort();
        assert_eq!(
            normals,
            vec![
                vec![rat(-1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(-1, 1)],
                vec![rat(0, 1), rat(1, 1)],
                vec![rat(1, 1), rat(0, 1)],
            ]
        );
        assert_eq!(w113().facets().len(), 3);
    }

    #[test]
    fn reflexivity_and_volume() {
        assert!(square().is_reflexive());
        assert!(triangle().is_reflexive());
        assert!(!w113().is_reflexive());
        assert_eq!(triangle().normalized_volume(), int(3));
        assert_eq!(w113().normalized_volume(), int(5));
        assert_eq!(square().normalized_volume(), int(8));
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(triangle().lattice_points(1).len(), 4);
        assert_eq!(square().lattice_points(1).len(), 9);
        assert_eq!(square().lattice_points(2).len(), 25);
        for p in [triangle(), square(), w113()] {
            for l in 1..=3 {
                assert_eq!(p.lattice_points(l), p.lattice_points_scan(l));
            }
        }
    }

    #[test]
    fn delta_vectors() {
        assert_eq!(square().delta_vector().0, ints(&[1, 6, 1]));
        assert_eq!(triangle().delta_vector().0, ints(&[1, 1, 1]));
        let w112 = poly(2, &[&[1, 0], &[-1, 2], &[0, -1]]).unwrap();
        assert_eq!(w112.delta_vector().0, ints(&[1, 2, 1]));
    }

    #[test]
    fn newton_function() {
        let p = w113();
        assert_eq!(p.newton_nu(&ints(&[0, 0])), rat(0, 1));
        for v in p.vertices() {
            assert_eq!(p.newton_nu(v), rat(1, 1));
        }
        assert_eq!(p.newton_nu(&ints(&[0, 1])), rat(2, 3));
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
