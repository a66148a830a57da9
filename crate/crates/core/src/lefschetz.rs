//! Hard Lefschetz (HL) and KKP decision procedures.
//!
//! HL holds for a simplicial polytope iff every box element `v` satisfies
//! `⌊ν(v)⌋ = (dim σ(v) - 1)/2` when `ν(v)` is fractional and
//! `ν(v) = dim σ(v)/2` when it is an integer. For a reduced simplex the same
//! test reads off the sector data of its weight system, with
//! `dim σ = d_1 - d_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rat, Int, Rat};
use crate::fanbox::Fan;
use crate::polytope::{fmt_point, LatticePolytope};
use crate::weights::{raw_sectors, small_rat, WeightSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BoxCriterion,
    WeightCriterion,
}

/// A failing check. `required` is what `⌊age⌋` (fractional age) or `age`
/// (integral age) should have been; it is a half-integer when no integer
/// could satisfy the equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    BoxElement {
        point: Vec<Int>,
        nu: Rat,
        support_dim: usize,
        required: Rat,
    },
    Sector {
        /// 1-based position of `f_i` in `F`.
        index: usize,
        f: Rat,
        d: u64,
        age: Rat,
        required: Rat,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::BoxElement {
                point,
                nu,
                support_dim,
                required,
            } => write!(
                f,
                "v={} nu={} dim_sigma={} required={}",
                fmt_point(point),
                fmt_rat(nu),
                support_dim,
                fmt_rat(required)
            ),
            Witness::Sector {
                index,
                f: fi,
                d,
                age,
                required,
            } => write!(
                f,
                "i={} f={} d={} age={} required={}",
                index,
                fmt_rat(fi),
                d,
                fmt_rat(age),
                fmt_rat(required)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HLVerdict {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub method: Method,
}

impl HLVerdict {
    fn from_witnesses(witnesses: Vec<Witness>, method: Method) -> Self {
        Self {
            holds: witnesses.is_empty(),
            witnesses,
            method,
        }
    }
}

fn half(x: i64) -> Rat {
    Rat::new(Int::from(x), Int::from(2))
}

/// Checks one age against a cone dimension; returns the required value on
/// failure.
fn age_condition(age: &Rat, cone_dim: i64) -> Option<Rat> {
    if age.is_integer() {
        let required = half(cone_dim);
        (age != &required).then_some(required)
    } else {
        let required = half(cone_dim - 1);
        (!required.is_integer() || age.floor() != required).then_some(required)
    }
}

pub fn hl_box_criterion(p: &LatticePolytope) -> Result<HLVerdict> {
    let fan = Fan::new(p);
    let witnesses = fan
        .box_union()?
        .into_iter()
        .filter_map(|e| {
            age_condition(&e.nu, e.support_dim as i64).map(|required| Witness::BoxElement {
                point: e.point,
                nu: e.nu,
                support_dim: e.support_dim,
                required,
            })
        })
        .collect();
    Ok(HLVerdict::from_witnesses(witnesses, Method::BoxCriterion))
}

pub fn hl_weight_criterion(w: &WeightSystem) -> Result<HLVerdict> {
    w.require_reduced()?;
    if w.max_weight() == 1 {
        return Ok(HLVerdict::from_witnesses(vec![], Method::WeightCriterion));
    }
    let sectors = raw_sectors(w)?;
    let d1 = sectors[0].d as i64;
    let mut witnesses = vec![];
    for (i, s) in sectors.iter().enumerate().skip(1) {
        let cone_dim = d1 - s.d as i64;
        let (num, den) = s.beta(w.mu());
        let ok = if den == 1 {
            2 * num == cone_dim as i128
        } else {
            (cone_dim - 1) % 2 == 0 && 2 * num.div_euclid(den as i128) == (cone_dim - 1) as i128
        };
        if ok {
            continue;
        }
        let age = small_rat(num, den);
        let required = age_condition(&age, cone_dim).expect("integer check failed");
        witnesses.push(Witness::Sector {
            index: i + 1,
            f: small_rat(s.num as i128, s.den),
            d: s.d,
            age,
            required,
        });
    }
    Ok(HLVerdict::from_witnesses(
        witnesses,
        Method::WeightCriterion,
    ))
}

/// `2μ/q_n = n + 1 + m(q_n)`, where `m(q_n)` is the multiplicity of the
/// largest weight.
pub fn hl_necessary_condition(w: &WeightSystem) -> Result<bool> {
    w.require_reflexive()?;
    let top = w.max_weight();
    if top == 1 {
        return Err(Error::NotApplicable(format!("{w} has no weight >= 2")));
    }
    let lhs = Rat::new(Int::from(2 * w.mu()), Int::from(top));
    let rhs = Rat::from_integer(Int::from(w.dim() + 1 + w.top_multiplicity()));
    Ok(lhs == rhs)
}

/// For reflexive weight systems: `Σ_{ℓ<i} d_ℓ - μ f_i = (d_1 - d_i)/2` for
/// every `i >= 2`.
pub fn kkp_check(w: &WeightSystem) -> Result<bool> {
    w.require_reflexive()?;
    let sectors = raw_sectors(w)?;
    let d1 = sectors[0].d as i64;
    Ok(sectors.iter().skip(1).all(|s| {
        let (num, den) = s.beta(w.mu());
        den == 1 && 2 * num == (d1 - s.d as i64) as i128
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn ws(q: &[u64]) -> WeightSystem {
        WeightSystem::new(q.to_vec()).unwrap()
    }

    fn poly(dim: usize, v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_i64(dim, &v.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn box_criterion_examples() {
        let tri = poly(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(hl_box_criterion(&tri).unwrap().holds);

        let v = hl_box_criterion(&poly(2, &[&[1, 0], &[-1, 3], &[0, -1]])).unwrap();
        assert!(!v.holds);
        assert_eq!(v.method, Method::BoxCriterion);
        assert_eq!(
            v.witnesses[0],
            Witness::BoxElement {
                point: vec![Int::from(0), Int::from(1)],
                nu: rat(2, 3),
                support_dim: 2,
                required: rat(1, 2),
            }
        );

        let p = poly(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-2, -2, -3]]);
        assert!(hl_box_criterion(&p).unwrap().holds);
    }

    #[test]
    fn weight_criterion_examples() {
        let v = hl_weight_criterion(&ws(&[1, 1, 3])).unwrap();
        assert!(!v.holds);
        match &v.witnesses[0] {
            Witness::Sector {
                index,
                age,
                required,
                ..
            } => {
                assert_eq!(*index, 2);
                assert_eq!(age, &rat(4, 3));
                assert_eq!(required, &rat(1, 2));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(hl_weight_criterion(&ws(&[1, 2, 2, 3])).unwrap().holds);
        assert!(hl_weight_criterion(&ws(&[1, 1, 1, 1])).unwrap().holds);
        assert!(matches!(
            hl_weight_criterion(&ws(&[2, 2, 6])),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn necessary_condition() {
        assert!(!hl_necessary_condition(&ws(&[1, 1, 1, 3])).unwrap());
        assert!(hl_necessary_condition(&ws(&[1, 1, 2, 2])).unwrap());
        assert!(hl_necessary_condition(&ws(&[1, 1, 1, 1, 2])).unwrap());
        assert!(matches!(
            hl_necessary_condition(&ws(&[1, 1, 1])),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            hl_necessary_condition(&ws(&[1, 1, 3])),
            Err(Error::NotReflexive(_))
        ));
    }

    #[test]
    fn kkp() {
        assert!(kkp_check(&ws(&[1, 1, 2, 2])).unwrap());
        assert!(!kkp_check(&ws(&[1, 1, 1, 3])).unwrap());
        assert!(kkp_check(&ws(&[1, 1, 1, 1])).unwrap());
        assert!(matches!(
            kkp_check(&ws(&[1, 1, 3])),
            Err(Error::NotReflexive(_))
        ));
    }
}
