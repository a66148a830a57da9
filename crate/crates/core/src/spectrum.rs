//! Polynomials with rational exponents and the Newton spectrum.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, fmt_rat, frac, Int, Rat};
use crate::fanbox::Fan;
use crate::polytope::LatticePolytope;

/// Finite sum `Σ c_α z^α` with rational `α` and integer `c_α`. Zero
/// coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FractionalPolynomial {
    terms: BTreeMap<Rat, i64>,
}

impl FractionalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::zero(), 1)
    }

    pub fn monomial(exponent: Rat, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    /// `Σ coeffs[i] z^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Rat::from_integer(Int::from(i)), c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: Rat, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn coeff(&self, exponent: &Rat) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `z = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    /// Coefficients `(c_0, ..., c_d)` when every exponent is a nonnegative
    /// integer.
    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        if !is_polynomial(self) {
            return None;
        }
        let top = self
            .max_exponent()
            .map_or(0, |e| e.to_integer().to_usize().unwrap());
        let mut out = vec![0; if self.is_zero() { 0 } else { top + 1 }];
        for (e, c) in self.terms() {
            out[e.to_integer().to_usize().unwrap()] = c;
        }
        Some(out)
    }

    /// `(numerator, denominator, coefficient)` triples, ascending.
    pub fn to_triples(&self) -> Vec<(String, String, i64)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.numer().to_string(), e.denom().to_string(), *c))
            .collect()
    }
}

impl fmt::Debug for FractionalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FractionalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if e.is_zero() {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}")?;
            }
            if e.is_one() {
                f.write_str("z")?;
            } else {
                write!(f, "z^{}", fmt_rat(e))?;
            }
        }
        Ok(())
    }
}

/// Convolution with exact exponent addition.
pub fn fp_mul(a: &FractionalPolynomial, b: &FractionalPolynomial) -> FractionalPolynomial {
    let mut out = FractionalPolynomial::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            out.add_term(ea + eb, ca * cb);
        }
    }
    out
}

/// `z^n f(1/z)`: exponent `α` becomes `n - α`.
pub fn reciprocal_transform(f: &FractionalPolynomial, n: u64) -> Result<FractionalPolynomial> {
    let top = Rat::from_integer(Int::from(n));
    if let Some((e, _)) = f.terms().find(|(e, _)| e.is_negative() || **e > top) {
        return Err(Error::Range(format!(
            "exponent {} outside [0, {n}]",
            fmt_rat(e)
        )));
    }
    Ok(FractionalPolynomial::from_terms(
        f.terms().map(|(e, c)| (&top - e, c)),
    ))
}

pub fn is_symmetric(f: &FractionalPolynomial, n: u64) -> bool {
    reciprocal_transform(f, n).is_ok_and(|g| &g == f)
}

/// `Spec_P(z) = (1 - z)^n Σ_{v ∈ N} z^{ν(v)}`, truncated at exponent `n`.
///
/// Points with `ν(v) > n` only feed exponents above `n`, so summing over
/// `nP ∩ N` is exact.
pub fn spectrum_direct(p: &LatticePolytope) -> Result<FractionalPolynomial> {
    let n = p.dim() as u64;
    let points = Fan::new(p).graded_points(n);
    let mut series: BTreeMap<Rat, i64> = BTreeMap::new();
    for nu in points.values() {
        *series.entry(nu.clone()).or_insert(0) += 1;
    }
    let factor: Vec<i64> = (0..=n)
        .map(|i| {
            let c = binomial(n, i).to_i64().expect("small binomial");
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let top = Rat::from_integer(Int::from(n));
    let mut spec = FractionalPolynomial::zero();
    for (e, count) in &series {
        for (i, c) in factor.iter().enumerate() {
            let shifted = e + Rat::from_integer(Int::from(i));
            if shifted <= top {
                spec.add_term(shifted, count * c);
            }
        }
    }

    if let Some((e, c)) = spec.terms().find(|(_, c)| *c < 0) {
        return Err(Error::Invariant(format!(
            "negative spectral multiplicity {c} at {}",
            fmt_rat(e)
        )));
    }
    if !is_symmetric(&spec, n) {
        return Err(Error::Invariant(format!(
            "spectrum {spec} is not symmetric"
        )));
    }
    let volume = p.normalized_volume();
    if Int::from(spec.eval_one()) != volume {
        return Err(Error::Invariant(format!(
            "spectrum {spec} has {} terms but the normalized volume is {volume}",
            spec.eval_one()
        )));
    }
    Ok(spec)
}

/// The same spectrum assembled from box elements: each face `τ` of the
/// boundary complex contributes `Σ_{e ∈ Box(τ)} z^{ν(e)} · h_{lk τ}(z)`,
/// where `h_{lk τ}` is the h-polynomial of the link of `τ`.
pub fn spectrum_box(p: &LatticePolytope) -> Result<FractionalPolynomial> {
    let n = p.dim();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for facet in p.facets() {
        let verts = &facet.vertex_indices;
        for mask in 0u32..(1 << verts.len()) {
            let face: Vec<usize> = (0..verts.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| verts[i])
                .collect();
            faces.insert(face);
        }
    }
    let link_h = |tau: &[usize]| -> FractionalPolynomial {
        let mut f = vec![0i64; n - tau.len() + 1];
        for sigma in &faces {
            if tau.iter().all(|v| sigma.contains(v)) {
                f[sigma.len() - tau.len()] += 1;
            }
        }
        let d = (n - tau.len()) as u64;
        let mut h = FractionalPolynomial::zero();
        for (i, fi) in f.iter().enumerate() {
            let i = i as u64;
            for j in 0..=(d - i) {
                let c = binomial(d - i, j).to_i64().expect("small binomial");
                let sign = if j % 2 == 0 { 1 } else { -1 };
                h.add_term(Rat::from_integer(Int::from(i + j)), fi * c * sign);
            }
        }
        h
    };

    let fan = Fan::new(p);
    let mut by_face: BTreeMap<Vec<usize>, FractionalPolynomial> = BTreeMap::new();
    for e in fan.box_union()? {
        let cone = fan.cone(e.cone);
        let mut tau: Vec<usize> = cone
            .generator_indices
            .iter()
            .zip(&e.coords)
            .filter(|(_, q)| !q.is_zero())
            .map(|(v, _)| *v)
            .collect();
        tau.sort_unstable();
        by_face
            .entry(tau)
            .or_insert_with(FractionalPolynomial::zero)
            .add_term(e.nu, 1);
    }
    let mut spec = FractionalPolynomial::zero();
    for (tau, boxes) in &by_face {
        for (e, c) in fp_mul(boxes, &link_h(tau)).terms() {
            spec.add_term(e.clone(), c);
        }
    }
    if spec.terms().any(|(_, c)| c < 0) {
        return Err(Error::Invariant(format!(
            "box spectrum {spec} has a negative term"
        )));
    }
    Ok(spec)
}

/// Every exponent is a nonnegative integer.
pub fn is_polynomial(f: &FractionalPolynomial) -> bool {
    f.terms().all(|(e, _)| e.is_integer() && !e.is_negative())
}

/// There is an index `j` with `a_0 <= ... <= a_j >= a_{j+1} >= ...`.
pub fn is_unimodal(coeffs: &[i64]) -> bool {
    let mut i = 0;
    while i + 1 < coeffs.len() && coeffs[i] <= coeffs[i + 1] {
        i += 1;
    }
    while i + 1 < coeffs.len() && coeffs[i] >= coeffs[i + 1] {
        i += 1;
    }
    i + 1 >= coeffs.len()
}

/// Coefficients over exponents `<= n/2`, read in ascending order, never
/// decrease.
pub fn lower_half_nondecreasing(f: &FractionalPolynomial, n: u64) -> Result<bool> {
    if !is_symmetric(f, n) {
        return Err(Error::Domain(format!("{f} is not symmetric about {n}/2")));
    }
    let half = Rat::new(Int::from(n), Int::from(2));
    let lower: Vec<i64> = f
        .terms()
        .take_while(|(e, _)| **e <= half)
        .map(|(_, c)| c)
        .collect();
    Ok(lower.windows(2).all(|w| w[0] <= w[1]))
}

/// `1 <= d(1) <= d(i)` for `2 <= i <= n/2`.
pub fn hibi_inequalities(f: &FractionalPolynomial, n: u64) -> Result<bool> {
    if !is_polynomial(f) {
        return Err(Error::Domain(format!("{f} has non-integral exponents")));
    }
    if f.coeff(&Rat::zero()) != 1 {
        return Err(Error::Domain(format!("{f} does not start with 1")));
    }
    let d = |i: u64| f.coeff(&Rat::from_integer(Int::from(i)));
    let d1 = d(1);
    Ok(d1 >= 1 && (2..=n / 2).all(|i| d1 <= d(i)))
}

/// Groups terms by the fractional part `α` of their exponent; slice `α` is
/// the ordinary polynomial `Spec^α` with `f = Σ_α z^α Spec^α(z)`.
pub fn alpha_slices(f: &FractionalPolynomial) -> Result<BTreeMap<Rat, Vec<i64>>> {
    if let Some(e) = f.min_exponent().filter(|e| e.is_negative()) {
        return Err(Error::Domain(format!("negative exponent {}", fmt_rat(e))));
    }
    let mut out: BTreeMap<Rat, Vec<i64>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let alpha = frac(e);
        let degree = e.floor().to_integer().to_usize().expect("nonnegative");
        let slot = out.entry(alpha).or_default();
        if slot.len() <= degree {
            slot.resize(degree + 1, 0);
        }
        slot[degree] += c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn ex55() -> FractionalPolynomial {
        FractionalPolynomial::from_terms([
            (rat(0, 1), 1),
            (rat(1, 1), 2),
            (rat(4, 3), 1),
            (rat(5, 3), 1),
            (rat(2, 1), 2),
            (rat(3, 1), 1),
        ])
    }

    #[test]
    fn box_route() {
        let p = LatticePolytope::from_i64(
            3,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-2, -2, -3],
            ],
        )
        .unwrap();
        assert_eq!(spectrum_box(&p).unwrap(), ex55());
        let square =
            LatticePolytope::from_i64(2, &[vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]])
                .unwrap();
        assert_eq!(
            spectrum_box(&square).unwrap(),
            FractionalPolynomial::from_coeffs(&[1, 6, 1])
        );
    }

    #[test]
    fn multiplication() {
        let a = FractionalPolynomial::from_terms([(rat(1, 2), 3), (rat(2, 1), -1)]);
        assert_eq!(fp_mul(&a, &FractionalPolynomial::one()), a);
        assert_eq!(
            fp_mul(
                &FractionalPolynomial::from_coeffs(&[1, -1]),
                &FractionalPolynomial::from_coeffs(&[1, 1])
            ),
            FractionalPolynomial::from_coeffs(&[1, 0, -1])
        );
        let b = FractionalPolynomial::from_terms([(rat(0, 1), 1), (rat(1, 3), 1)]);
        assert_eq!(
            fp_mul(&b, &b),
            FractionalPolynomial::from_terms([(rat(0, 1), 1), (rat(1, 3), 2), (rat(2, 3), 1)])
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = FractionalPolynomial::from_coeffs(&[1, 2]);
        p.add_term(rat(1, 1), -2);
        assert_eq!(p, FractionalPolynomial::one());
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn reciprocal() {
        let p = FractionalPolynomial::from_coeffs(&[1, 0, 1]);
        assert_eq!(reciprocal_transform(&p, 2).unwrap(), p);
        assert_eq!(
            reciprocal_transform(&FractionalPolynomial::from_coeffs(&[1, 2]), 2).unwrap(),
            FractionalPolynomial::from_coeffs(&[0, 2, 1])
        );
        assert_eq!(reciprocal_transform(&ex55(), 3).unwrap(), ex55());
        assert!(matches!(
            reciprocal_transform(&FractionalPolynomial::from_coeffs(&[1, 0, 0, 1]), 2),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn polynomial_test() {
        assert!(is_polynomial(&FractionalPolynomial::from_coeffs(&[
            1, 1, 1
        ])));
        assert!(!is_polynomial(&FractionalPolynomial::from_terms([
            (rat(0, 1), 1),
            (rat(2, 3), 1)
        ])));
        assert!(!is_polynomial(&ex55()));
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 2, 1]));
        assert!(!is_unimodal(&[1, 1, 2, 1, 2, 1, 1]));
        assert!(is_unimodal(&[]));
        assert!(is_unimodal(&[5]));
        assert!(is_unimodal(&[1, 3, 3, 2]));
        assert!(is_unimodal(&[0, 1]));
        assert!(!is_unimodal(&[2, 1, 2]));
    }

    #[test]
    fn lower_half() {
        assert!(!lower_half_nondecreasing(&ex55(), 3).unwrap());
        assert!(
            lower_half_nondecreasing(&FractionalPolynomial::from_coeffs(&[1, 1, 1]), 2).unwrap()
        );
        assert!(
            lower_half_nondecreasing(&FractionalPolynomial::from_coeffs(&[1, 2, 2, 1]), 3).unwrap()
        );
        assert!(matches!(
            lower_half_nondecreasing(&FractionalPolynomial::from_coeffs(&[1, 2]), 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn hibi() {
        assert!(hibi_inequalities(&FractionalPolynomial::from_coeffs(&[1, 6, 1]), 2).unwrap());
        assert!(hibi_inequalities(
            &FractionalPolynomial::from_coeffs(&[1, 1, 2, 1, 2, 1, 1]),
            6
        )
        .unwrap());
        assert!(!hibi_inequalities(&FractionalPolynomial::from_coeffs(&[1, 0, 1]), 2).unwrap());
        assert!(!hibi_inequalities(
            &FractionalPolynomial::from_coeffs(&[1, 2, 1, 1, 1, 2, 1]),
            6
        )
        .unwrap());
        assert!(matches!(
            hibi_inequalities(&ex55(), 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn slices() {
        let s = alpha_slices(&ex55()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[&rat(0, 1)], vec![1, 2, 2, 1]);
        assert_eq!(s[&rat(1, 3)], vec![0, 1]);
        assert_eq!(s[&rat(2, 3)], vec![0, 1]);
        let s = alpha_slices(&FractionalPolynomial::from_coeffs(&[1, 1, 1])).unwrap();
        assert_eq!(s.keys().collect::<Vec<_>>(), vec![&rat(0, 1)]);
        let s = alpha_slices(&FractionalPolynomial::monomial(rat(1, 2), 1)).unwrap();
        assert_eq!(s[&rat(1, 2)], vec![1]);
    }

    #[test]
    fn display() {
        assert_eq!(ex55().to_string(), "1 + 2z + z^4/3 + z^5/3 + 2z^2 + z^3");
        assert_eq!(
            FractionalPolynomial::from_coeffs(&[1, -1]).to_string(),
            "1 - z"
        );
    }

    #[test]
    fn direct_spectra() {
        let tri = LatticePolytope::from_i64(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(
            spectrum_direct(&tri).unwrap(),
            FractionalPolynomial::from_coeffs(&[1, 1, 1])
        );
        let w113 = LatticePolytope::from_i64(2, &[vec![1, 0], vec![-1, 3], vec![0, -1]]).unwrap();
        assert_eq!(
            spectrum_direct(&w113).unwrap(),
            FractionalPolynomial::from_terms([
                (rat(0, 1), 1),
                (rat(2, 3), 1),
                (rat(1, 1), 1),
                (rat(4, 3), 1),
                (rat(2, 1), 1)
            ])
        );
        let w1223 = LatticePolytope::from_i64(
            3,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-2, -2, -3],
            ],
        )
        .unwrap();
        assert_eq!(spectrum_direct(&w1223).unwrap(), ex55());
    }
}
