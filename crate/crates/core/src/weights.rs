//! Weight systems of lattice simplices.
//!
//! A simplex `conv(v_0, ..., v_n)` with the origin inside has weights
//! `q_i = |det(v_0, ..., v̂_i, ..., v_n)|`, and `Σ q_i v_i = 0`. Reduced
//! (`gcd = 1`) weight systems determine the simplex up to unimodular
//! transformation.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{det, unimodular_completion, Int, IntMatrix, Rat};
use crate::polytope::LatticePolytope;
use crate::spectrum::{spectrum_direct, FractionalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSystem {
    q: Vec<u64>,
    mu: u64,
}

impl WeightSystem {
    /// Canonicalizes to ascending order.
    pub fn new(mut q: Vec<u64>) -> Result<Self> {
        if q.len() < 2 {
            return Err(Error::Dimension(format!(
                "a weight system needs at least two entries, got {}",
                q.len()
            )));
        }
        if q.contains(&0) {
            return Err(Error::Domain("weights must be positive".into()));
        }
        q.sort_unstable();
        let mu = q
            .iter()
            .try_fold(0u64, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| Error::Range("weight sum overflows 64 bits".into()))?;
        Ok(Self { q, mu })
    }

    pub fn weights(&self) -> &[u64] {
        &self.q
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// Dimension `n` of the simplex (`n + 1` weights).
    pub fn dim(&self) -> usize {
        self.q.len() - 1
    }

    pub fn max_weight(&self) -> u64 {
        *self.q.last().unwrap()
    }

    /// Multiplicity of the largest weight.
    pub fn top_multiplicity(&self) -> usize {
        let top = self.max_weight();
        self.q.iter().filter(|&&x| x == top).count()
    }

    pub fn is_reduced(&self) -> bool {
        self.q.iter().fold(0u64, |g, &x| g.gcd(&x)) == 1
    }

    pub(crate) fn require_reduced(&self) -> Result<()> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(Error::NotReduced(self.to_string()))
        }
    }

    /// Reflexive iff every `q_i` divides `μ`.
    pub fn is_reflexive(&self) -> Result<bool> {
        self.require_reduced()?;
        Ok(self.q.iter().all(|&x| self.mu.is_multiple_of(x)))
    }

    pub(crate) fn require_reflexive(&self) -> Result<()> {
        if self.is_reflexive()? {
            Ok(())
        } else {
            Err(Error::NotReflexive(self.to_string()))
        }
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.q.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for WeightSystem {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `1,2,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let q = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Domain(format!("bad weight {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q)
    }
}

pub fn is_reduced(w: &WeightSystem) -> bool {
    w.is_reduced()
}

pub fn is_reflexive_weights(w: &WeightSystem) -> Result<bool> {
    w.is_reflexive()
}

/// The absolute maximal minors of the vertex matrix, sorted ascending.
pub fn weight_of_simplex(p: &LatticePolytope) -> Result<WeightSystem> {
    if !p.is_simplex() {
        return Err(Error::NotSimplex(p.vertices().len(), p.dim()));
    }
    let n = p.dim();
    let q = (0..=n)
        .map(|skip| {
            let cols: Vec<&[Int]> = p
                .vertices()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| v.as_slice())
                .collect();
            let m = IntMatrix::from_columns(&cols)?;
            let d = det(&m)?;
            d.magnitude()
                .to_u64()
                .ok_or_else(|| Error::Range(format!("weight {d} does not fit in 64 bits")))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightSystem::new(q)
}

/// A simplex of weight `w`.
///
/// With `U` unimodular and `U q = e_{n+1}`, the columns of `U` truncated to
/// their first `n` coordinates satisfy `Σ q_i v_i = 0` and span `Z^n`. The
/// vertex coordinates are then shortened by pairwise row reduction, which
/// is a unimodular change of coordinates.
pub fn construct_simplex(w: &WeightSystem) -> Result<LatticePolytope> {
    w.require_reduced()?;
    let n = w.dim();
    let q: Vec<Int> = w.weights().iter().map(|&x| Int::from(x)).collect();
    let u = unimodular_completion(&q)?;
    let mut rows: Vec<Vec<Int>> = (0..n).map(|r| u.row(r).to_vec()).collect();
    reduce_rows(&mut rows);
    let vertices: Vec<Vec<Int>> = (0..=n)
        .map(|i| rows.iter().map(|r| r[i].clone()).collect())
        .collect();
    let p = LatticePolytope::from_vertices(n, vertices)
        .map_err(|e| Error::Invariant(format!("constructed simplex for {w} is invalid: {e}")))?;
    let back = weight_of_simplex(&p)?;
    if &back != w {
        return Err(Error::Invariant(format!(
            "constructed simplex has weight {back}, expected {w}"
        )));
    }
    Ok(p)
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Repeatedly subtracts the nearest-integer multiple of one row from another
/// while that shortens it.
fn reduce_rows(rows: &mut [Vec<Int>]) {
    loop {
        let mut changed = false;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&rows[j], &rows[j]);
                if nj.is_zero() {
                    continue;
                }
                let num = dot(&rows[i], &rows[j]);
                // round(num / nj)
                let c: Int = (Int::from(2) * &num + &nj).div_floor(&(Int::from(2) * &nj));
                if c.is_zero() {
                    continue;
                }
                let candidate: Vec<Int> = rows[i]
                    .iter()
                    .zip(&rows[j])
                    .map(|(a, b)| a - &c * b)
                    .collect();
                if dot(&candidate, &candidate) < dot(&rows[i], &rows[i]) {
                    rows[i] = candidate;
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Sector data of a weight system: the elements `f_1 < ... < f_k` of
/// `F = {ℓ/q_i : 0 <= ℓ < q_i}`, the counts `d_i = #{j : q_j f_i ∈ Z}`, and
/// `β_i = Σ_{ℓ<i} d_ℓ - μ f_i` (which is also the age of sector `f_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorData {
    pub f: Vec<Rat>,
    pub d: Vec<u64>,
    pub beta: Vec<Rat>,
    pub ages: Vec<Rat>,
}

impl SectorData {
    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}

/// One sector in machine integers: `f = num/den` in lowest terms, its count
/// `d`, and `prefix = Σ_{ℓ<i} d_ℓ`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RawSector {
    pub num: u64,
    pub den: u64,
    pub d: u64,
    pub prefix: u64,
}

impl RawSector {
    /// `β = prefix - μ f` as a reduced `(numerator, denominator)`.
    pub fn beta(&self, mu: u64) -> (i128, u64) {
        let n = self.prefix as i128 * self.den as i128 - mu as i128 * self.num as i128;
        let g = (n.unsigned_abs() as u64).gcd(&self.den).max(1);
        (n / g as i128, self.den / g)
    }
}

pub(crate) fn raw_sectors(w: &WeightSystem) -> Result<Vec<RawSector>> {
    w.require_reduced()?;
    let mut fracs: Vec<(u64, u64)> = Vec::new();
    for &q in w.weights() {
        for l in 0..q {
            let g = l.gcd(&q);
            fracs.push((l / g, q / g));
        }
    }
    fracs.sort_unstable_by(|a, b| cmp_frac(*a, *b));
    fracs.dedup();
    let mut prefix = 0u64;
    Ok(fracs
        .into_iter()
        .map(|(num, den)| {
            let d = w.weights().iter().filter(|&&q| q % den == 0).count() as u64;
            let s = RawSector {
                num,
                den,
                d,
                prefix,
            };
            prefix += d;
            s
        })
        .collect())
}

pub(crate) fn small_rat(num: i128, den: u64) -> Rat {
    Rat::new_raw(Int::from(num), Int::from(den))
}

pub fn sector_data(w: &WeightSystem) -> Result<SectorData> {
    let raw = raw_sectors(w)?;
    let mut f = Vec::with_capacity(raw.len());
    let mut d = Vec::with_capacity(raw.len());
    let mut beta = Vec::with_capacity(raw.len());
    for s in &raw {
        let (bn, bd) = s.beta(w.mu());
        f.push(small_rat(s.num as i128, s.den));
        d.push(s.d);
        beta.push(small_rat(bn, bd));
    }
    let ages = beta.clone();
    Ok(SectorData { f, d, beta, ages })
}

fn cmp_frac(a: (u64, u64), b: (u64, u64)) -> Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

/// The spectrum as the multiset union of `{β_i, β_i + 1, ..., β_i + d_i - 1}`.
pub fn spectrum_formula(w: &WeightSystem) -> Result<FractionalPolynomial> {
    let mut counts: HashMap<(i128, u64), i64> = HashMap::new();
    for s in raw_sectors(w)? {
        let (bn, bd) = s.beta(w.mu());
        for t in 0..s.d {
            *counts.entry((bn + t as i128 * bd as i128, bd)).or_insert(0) += 1;
        }
    }
    Ok(FractionalPolynomial::from_terms(
        counts.into_iter().map(|((n, d), c)| (small_rat(n, d), c)),
    ))
}

/// [`spectrum_formula`] cross-checked against the lattice-point summation on
/// a constructed simplex.
pub fn spectrum_from_weights(w: &WeightSystem) -> Result<FractionalPolynomial> {
    let formula = spectrum_formula(w)?;
    let direct = spectrum_direct(&construct_simplex(w)?)?;
    if formula != direct {
        return Err(Error::Invariant(format!(
            "weight spectrum {formula} disagrees with lattice-point spectrum {direct} for {w}"
        )));
    }
    Ok(formula)
}

/// All reduced reflexive weight systems with `n + 1` entries, sorted
/// lexicographically.
///
/// These correspond to multisets `k_0 <= ... <= k_n` with `Σ 1/k_i = 1`
/// through `k_i = μ / q_i`.
pub fn enumerate_reflexive(n: usize) -> Result<Vec<WeightSystem>> {
    if !(2..=6).contains(&n) {
        return Err(Error::Range(format!(
            "enumeration supports dimensions 2 to 6, got {n}"
        )));
    }
    let mut solutions = Vec::new();
    let mut stack = Vec::with_capacity(n + 1);
    unit_fractions(
        &Rat::from_integer(Int::from(1)),
        n + 1,
        &Int::from(1),
        &mut stack,
        &mut solutions,
    );

    let mut out = Vec::with_capacity(solutions.len());
    for ks in solutions {
        let lcm = ks.iter().fold(Int::from(1), |l, k| l.lcm(k));
        let raw: Vec<Int> = ks.iter().map(|k| &lcm / k).collect();
        let g = raw.iter().fold(Int::zero(), |g, x| g.gcd(x));
        let q = raw
            .iter()
            .map(|x| {
                (x / &g)
                    .to_u64()
                    .ok_or_else(|| Error::Range(format!("weight {x} does not fit in 64 bits")))
            })
            .collect::<Result<Vec<_>>>()?;
        let w = WeightSystem::new(q)?;
        if !w.is_reduced() || !w.is_reflexive()? {
            return Err(Error::Invariant(format!(
                "unit-fraction solution {ks:?} gave {w}, which is not reduced and reflexive"
            )));
        }
        out.push(w);
    }
    out.sort();
    if out.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::Invariant("duplicate weight systems".into()));
    }
    Ok(out)
}

/// Multisets of `count` denominators `>= min` (nondecreasing) whose unit
/// fractions sum to `remaining`.
fn unit_fractions(
    remaining: &Rat,
    count: usize,
    min: &Int,
    stack: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    if count == 1 {
        let inv = remaining.recip();
        if inv.is_integer() && inv.numer() >= min {
            stack.push(inv.to_integer());
            out.push(stack.clone());
            stack.pop();
        }
        return;
    }
    // 1/k <= remaining and count/k >= remaining
    let lo = remaining.recip().ceil().to_integer().max(min.clone());
    let hi = (Rat::from_integer(Int::from(count)) / remaining)
        .floor()
        .to_integer();
    let mut k = lo;
    while k <= hi {
        let rest = remaining - Rat::new(Int::from(1), k.clone());
        if rest > Rat::zero() {
            stack.push(k.clone());
            unit_fractions(&rest, count - 1, &k, stack, out);
            stack.pop();
        }
        k += 1;
    }
}

/// The weight system `(1, ..., 1, s)` with `s k` ones and its closed-form
/// spectrum `1 + z + ... + z^{sk} + z^{(s-1)k} + ... + z^k`.
pub fn payne_weights(s: u64, k: u64) -> Result<(WeightSystem, FractionalPolynomial)> {
    if s < 2 || k < 2 {
        return Err(Error::Domain(format!(
            "the family needs s >= 2 and k >= 2, got s = {s}, k = {k}"
        )));
    }
    let n = s * k;
    let mut q = vec![1u64; n as usize];
    q.push(s);
    let w = WeightSystem::new(q)?;
    let mut spec = FractionalPolynomial::zero();
    for i in 0..=n {
        spec.add_term(Rat::from_integer(Int::from(i)), 1);
    }
    for j in 1..s {
        spec.add_term(Rat::from_integer(Int::from(j * k)), 1);
    }
    Ok((w, spec))
}
