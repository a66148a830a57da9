//! The face fan of a polytope, box elements of its maximal cones and their
//! ages.
//!
//! Every lattice point `v` of a simplicial cone with generators `b_i` splits
//! uniquely as `v = e + Σ m_i b_i` with `m_i ∈ N` and `e` in the box
//! `{Σ q_i b_i : 0 <= q_i < 1}`. Box elements are enumerated from Smith normal
//! form coset representatives, and the same splitting drives
//! [`Fan::graded_points`], the lattice-point kernel used for Ehrhart counts and
//! spectra.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{det, rat_int, snf, solve_rational, Int, IntMatrix, Rat};
use crate::polytope::{fmt_point, GradedPoints, LatticePolytope};

#[derive(Debug, Clone)]
pub struct MaximalCone {
    pub facet_index: usize,
    pub generator_indices: Vec<usize>,
    /// Columns are the generators `b_i`.
    pub generator_matrix: IntMatrix,
    pub index: Int,
}

impl MaximalCone {
    pub fn dim(&self) -> usize {
        self.generator_matrix.rows()
    }

    pub fn generator(&self, i: usize) -> Vec<Int> {
        self.generator_matrix.column(i)
    }

    /// Coordinates of `v` in the generator basis.
    pub fn coordinates(&self, v: &[Int]) -> Vec<Rat> {
        solve_rational(&self.generator_matrix, v).expect("generators are independent")
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).iter().all(|q| !q.is_negative())
    }

    fn combine(&self, coeffs: &[Rat]) -> Vec<Int> {
        (0..self.dim())
            .map(|r| {
                let s: Rat = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, q)| q * rat_int(&self.generator_matrix[(r, i)]))
                    .sum();
                debug_assert!(s.is_integer());
                s.to_integer()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxElement {
    pub point: Vec<Int>,
    /// Facet index of a maximal cone containing the point.
    pub cone: usize,
    /// `point = Σ coords_i b_i` with `0 <= coords_i < 1`.
    pub coords: Vec<Rat>,
    /// Dimension of the smallest cone containing the point.
    pub support_dim: usize,
    pub nu: Rat,
}

impl BoxElement {
    fn from_coords(cone: &MaximalCone, coords: Vec<Rat>) -> Self {
        let point = cone.combine(&coords);
        let support_dim = coords.iter().filter(|q| q.is_positive()).count();
        let nu = coords.iter().sum();
        Self {
            point,
            cone: cone.facet_index,
            coords,
            support_dim,
            nu,
        }
    }

    /// Element with coordinates `residues_i / denom`, each in `[0, 1)`.
    fn from_residues(cone: &MaximalCone, residues: &[Int], denom: &Int) -> Self {
        let n = cone.dim();
        let point = (0..n)
            .map(|r| {
                let s: Int = (0..n)
                    .map(|i| &cone.generator_matrix[(r, i)] * &residues[i])
                    .sum();
                debug_assert!(s.is_multiple_of(denom));
                s / denom
            })
            .collect();
        let support_dim = residues.iter().filter(|q| !q.is_zero()).count();
        let nu = Rat::new(residues.iter().sum(), denom.clone());
        let coords = residues
            .iter()
            .map(|q| Rat::new(q.clone(), denom.clone()))
            .collect();
        Self {
            point,
            cone: cone.facet_index,
            coords,
            support_dim,
            nu,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.point.iter().all(Zero::is_zero)
    }
}

/// A box element paired with its involution image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgePair {
    pub element: BoxElement,
    pub inverse: BoxElement,
    pub age: Rat,
    pub inverse_age: Rat,
}

/// The face fan `Σ_P`: one simplicial cone over each facet.
#[derive(Debug, Clone)]
pub struct Fan<'a> {
    polytope: &'a LatticePolytope,
    cones: Vec<MaximalCone>,
}

impl<'a> Fan<'a> {
    pub fn new(polytope: &'a LatticePolytope) -> Self {
        let cones = (0..polytope.facets().len())
            .map(|f| {
                let generator_matrix = polytope.facet_matrix(f);
                let index = det(&generator_matrix).expect("square").abs();
                MaximalCone {
                    facet_index: f,
                    generator_indices: polytope.facets()[f].vertex_indices.clone(),
                    generator_matrix,
                    index,
                }
            })
            .collect();
        Self { polytope, cones }
    }

    pub fn polytope(&self) -> &LatticePolytope {
        self.polytope
    }

    pub fn cones(&self) -> &[MaximalCone] {
        &self.cones
    }

    pub fn cone(&self, facet_index: usize) -> &MaximalCone {
        &self.cones[facet_index]
    }

    /// ν through barycentric coordinates in a maximal cone containing `v`.
    pub fn nu_barycentric(&self, v: &[Int]) -> Rat {
        for cone in &self.cones {
            let q = cone.coordinates(v);
            if q.iter().all(|x| !x.is_negative()) {
                return q.into_iter().sum();
            }
        }
        unreachable!("the face fan of a polytope with interior origin is complete")
    }

    /// The box of `cone`, sorted by point.
    ///
    /// With `U B V = D`, the vectors `U^{-1} x` (`0 <= x_j < d_j`) represent
    /// `Z^n / B Z^n`, and their coordinates are `B^{-1} U^{-1} x = V D^{-1} x`;
    /// taking fractional parts lands each coset in the box. Coordinates are
    /// carried as integer numerators over the largest invariant factor.
    pub fn box_elements(&self, cone: &MaximalCone) -> Vec<BoxElement> {
        let n = cone.dim();
        let s = snf(&cone.generator_matrix);
        let d = s.invariant_factors();
        let top = d[n - 1].clone();
        // step[k] = V e_k * (top / d_k)
        let step: Vec<Vec<Int>> = (0..n)
            .map(|k| {
                let scale = &top / &d[k];
                (0..n).map(|i| &s.v[(i, k)] * &scale).collect()
            })
            .collect();
        let mut numer = vec![Int::zero(); n];
        let mut x = vec![Int::zero(); n];
        let mut out = Vec::new();
        loop {
            let residues: Vec<Int> = numer.iter().map(|a| a.mod_floor(&top)).collect();
            out.push(BoxElement::from_residues(cone, &residues, &top));

            let mut k = n;
            loop {
                if k == 0 {
                    out.sort_by(|a, b| a.point.cmp(&b.point));
                    return out;
                }
                k -= 1;
                x[k] += 1;
                for (a, b) in numer.iter_mut().zip(&step[k]) {
                    *a += b;
                }
                if x[k] < d[k] {
                    break;
                }
                for (a, b) in numer.iter_mut().zip(&step[k]) {
                    *a -= b * &d[k];
                }
                x[k] = Int::zero();
            }
        }
    }

    /// Reference enumeration of the box by scanning the bounding box of the
    /// half-open parallelepiped.
    pub fn box_elements_scan(&self, cone: &MaximalCone) -> Vec<BoxElement> {
        let n = cone.dim();
        let mut lo = vec![Int::zero(); n];
        let mut hi = vec![Int::zero(); n];
        for i in 0..n {
            for r in 0..n {
                let g = &cone.generator_matrix[(r, i)];
                if g.is_negative() {
                    lo[r] += g;
                } else {
                    hi[r] += g;
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let q = cone.coordinates(&cur);
            if q.iter().all(|x| !x.is_negative() && x < &Rat::one()) {
                out.push(BoxElement::from_coords(cone, q));
            }
            let mut k = n;
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

    /// Union of the boxes of all maximal cones, deduplicated by point.
    pub fn box_union(&self) -> Result<Vec<BoxElement>> {
        let mut seen: BTreeMap<Vec<Int>, BoxElement> = BTreeMap::new();
        for cone in &self.cones {
            for e in self.box_elements(cone) {
                match seen.get(&e.point) {
                    Some(prev) => {
                        if prev.nu != e.nu || prev.support_dim != e.support_dim {
                            return Err(Error::Invariant(format!(
                                "box element {} has inconsistent data across cones",
                                fmt_point(&e.point)
                            )));
                        }
                    }
                    None => {
                        seen.insert(e.point.clone(), e);
                    }
                }
            }
        }
        Ok(seen.into_values().collect())
    }

    /// The involution `q_i -> 1 - q_i` on the nonzero coordinates.
    pub fn box_inverse(&self, e: &BoxElement) -> BoxElement {
        let cone = &self.cones[e.cone];
        let coords = e
            .coords
            .iter()
            .map(|q| {
                if q.is_zero() {
                    q.clone()
                } else {
                    Rat::one() - q
                }
            })
            .collect();
        BoxElement::from_coords(cone, coords)
    }

    /// Pairs each element of [`Fan::box_union`] with its inverse, checking
    /// that the two ages add up to the dimension of the minimal cone.
    pub fn age_pairs(&self) -> Result<Vec<AgePair>> {
        self.box_union()?
            .into_iter()
            .map(|element| {
                let inverse = self.box_inverse(&element);
                let element_age = age(&element);
                let inverse_age = age(&inverse);
                if &element_age + &inverse_age != Rat::from_integer(Int::from(element.support_dim))
                    || inverse.support_dim != element.support_dim
                {
                    return Err(Error::Invariant(format!(
                        "ages of {} and its inverse do not sum to {}",
                        fmt_point(&element.point),
                        element.support_dim
                    )));
                }
                Ok(AgePair {
                    element,
                    inverse,
                    age: element_age,
                    inverse_age,
                })
            })
            .collect()
    }

    /// Lattice points of `level * P` with their Newton degree.
    ///
    /// Walks every cone as `box element + Σ m_i b_i` with
    /// `ν(e) + Σ m_i <= level`; points on shared faces are reached from each
    /// adjacent cone and merged.
    pub fn graded_points(&self, level: u64) -> GradedPoints {
        let mut out = GradedPoints::new();
        let bound = Rat::from_integer(Int::from(level));
        for cone in &self.cones {
            let gens: Vec<Vec<Int>> = (0..cone.dim()).map(|i| cone.generator(i)).collect();
            for e in self.box_elements(cone) {
                if e.nu > bound {
                    continue;
                }
                let budget = (&bound - &e.nu)
                    .floor()
                    .to_integer()
                    .to_u64()
                    .expect("nonnegative");
                walk(&gens, 0, budget, e.point.clone(), 0, &mut |p, steps| {
                    out.entry(p.to_vec())
                        .or_insert_with(|| &e.nu + Rat::from_integer(Int::from(steps)));
                });
            }
        }
        out
    }
}

fn walk(
    gens: &[Vec<Int>],
    from: usize,
    budget: u64,
    point: Vec<Int>,
    steps: u64,
    visit: &mut impl FnMut(&[Int], u64),
) {
    visit(&point, steps);
    if budget == 0 {
        return;
    }
    for i in from..gens.len() {
        let next: Vec<Int> = point.iter().zip(&gens[i]).map(|(a, b)| a + b).collect();
        walk(gens, i, budget - 1, next, steps + 1, visit);
    }
}

/// The age of the sector labelled by `e`, which is `ν(e)`.
pub fn age(e: &BoxElement) -> Rat {
    e.nu.clone()
}
