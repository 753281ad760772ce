//! Reference data for small toric Fano spaces: their standard Laurent
//! potentials and closed-form regularized quantum periods.
//!
//! Curve classes live in a "split" free monoid with one weight-one generator
//! per toric boundary divisor. A class `β` of the space is recorded by its
//! intersection numbers with the divisors, so its degree is `d_β`. For
//! example the line in P² becomes `(1,1,1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::frobenius::{multinomial, SPartition};
use crate::mori::{CurveClass, CurveClassMonoid, MoriElement};
use crate::period::{
    quantum_period_series, specialize_sequence, Component, PeriodSequence, PotentialSpec,
};
use crate::poly::LaurentPoly;
use crate::ring::{rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReferenceSpace {
    P1,
    P2,
    P1xP1,
    P3,
}

impl ReferenceSpace {
    pub const ALL: [ReferenceSpace; 4] = [Self::P1, Self::P2, Self::P1xP1, Self::P3];

    pub fn name(self) -> &'static str {
        match self {
            Self::P1 => "P1",
            Self::P2 => "P2",
            Self::P1xP1 => "P1xP1",
            Self::P3 => "P3",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            Self::P1 => 1,
            Self::P2 | Self::P1xP1 => 2,
            Self::P3 => 3,
        }
    }

    /// Anticanonical degrees of the generators of the effective cone.
    pub fn generator_degrees(self) -> &'static [u32] {
        match self {
            Self::P1 => &[2],
            Self::P2 => &[3],
            Self::P1xP1 => &[2, 2],
            Self::P3 => &[4],
        }
    }

    /// Exponent vectors of the potential, one per toric boundary divisor.
    fn rays(self) -> Vec<Vec<i32>> {
        match self {
            Self::P1 => vec![vec![1], vec![-1]],
            Self::P2 => vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            Self::P1xP1 => vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            Self::P3 => vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, -1],
            ],
        }
    }

    /// Number of toric boundary divisors.
    pub fn boundary_components(self) -> usize {
        self.rays().len()
    }

    /// Split monoid: one weight-one generator per boundary divisor.
    pub fn split_monoid(self) -> CurveClassMonoid {
        CurveClassMonoid::new(vec![1; self.boundary_components()]).expect("positive weights")
    }
}

impl fmt::Display for ReferenceSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P1" => Ok(Self::P1),
            "P2" => Ok(Self::P2),
            "P1XP1" | "P1P1" => Ok(Self::P1xP1),
            "P3" => Ok(Self::P3),
            _ => Err(Error::UnknownSpace(s.to_string())),
        }
    }
}

/// `x + 1/x`, `x + y + 1/(xy)`, `x + 1/x + y + 1/y`, `x + y + z + 1/(xyz)`.
pub fn reference_potential(space: ReferenceSpace) -> LaurentPoly<Rational> {
    LaurentPoly::normalize(
        space.dimension(),
        space.rays().into_iter().map(|e| (e, rational(1))),
    )
    .expect("reference rays have the space's rank")
}

/// The potential as labelled components `D1, D2, ...`, each tagged with its
/// own generator of the split monoid.
pub fn reference_potential_spec(space: ReferenceSpace) -> (PotentialSpec, CurveClassMonoid) {
    let rank = space.dimension();
    let s = space.boundary_components();
    let components = space
        .rays()
        .into_iter()
        .enumerate()
        .map(|(i, ray)| Component {
            label: format!("D{}", i + 1),
            weight: 1,
            chart: LaurentPoly::normalize(rank, [(ray, rational(1))]).expect("valid ray"),
            class: Some(CurveClass::generator(s, i)),
        })
        .collect();
    (
        PotentialSpec::new(components).expect("shared rank"),
        space.split_monoid(),
    )
}

/// Degree-`d` maps `P¹ → P¹` through a fixed point with the `2d` preimages
/// of `{0, ∞}` prescribed: choose which `d` of them lie over `0`, so
/// `C(2d, d)`.
pub fn naive_count_p1(d: u32) -> BigUint {
    multinomial(2 * d, &SPartition::new(vec![d, d])).expect("parts sum to 2d")
}

fn class_coefficients(space: ReferenceSpace, max_degree: usize) -> BTreeMap<CurveClass, BigInt> {
    let mut out = BTreeMap::new();
    let mut put = |mults: Vec<u32>, parts: Vec<u32>| {
        let total: u32 = parts.iter().sum();
        let p = multinomial(total, &SPartition::new(parts)).expect("consistent parts");
        out.insert(CurveClass::new(mults), BigInt::from(p));
    };
    match space {
        ReferenceSpace::P1 | ReferenceSpace::P2 | ReferenceSpace::P3 => {
            let s = space.boundary_components();
            for k in 1..=(max_degree / s) as u32 {
                put(vec![k; s], vec![k; s]);
            }
        }
        ReferenceSpace::P1xP1 => {
            for a in 0..=(max_degree / 2) as u32 {
                for b in 0..=(max_degree / 2) as u32 - a {
                    if a + b > 0 {
                        put(vec![a, a, b, b], vec![a, a, b, b]);
                    }
                }
            }
        }
    }
    out
}

/// Regularized quantum period `Ĝ_Y` in the split monoid, to degree `D`.
///
/// For these spaces `p_β` is the multinomial coefficient of the class's
/// intersection profile, e.g. `(3k)!/(k!)³` for `k` times the line in P².
pub fn reference_quantum_series(
    space: ReferenceSpace,
    degree: usize,
) -> Result<PeriodSequence<MoriElement>> {
    quantum_period_series(
        &class_coefficients(space, degree),
        &space.split_monoid(),
        degree,
    )
}

/// `Ĝ_Y` specialized to a series in `t`.
pub fn reference_quantum_period(
    space: ReferenceSpace,
    degree: usize,
) -> Result<PeriodSequence<Rational>> {
    let series = reference_quantum_series(space, degree)?;
    specialize_sequence(&series, &space.split_monoid(), degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::classical_period_bruteforce;
    use crate::ring::Coefficient;

    fn ints(seq: &PeriodSequence<Rational>) -> Vec<i64> {
        seq.entries()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn parsing_space_names() {
        assert_eq!("P1".parse::<ReferenceSpace>().unwrap(), ReferenceSpace::P1);
        assert_eq!(
            "p1xp1".parse::<ReferenceSpace>().unwrap(),
            ReferenceSpace::P1xP1
        );
        assert_eq!(
            "P5".parse::<ReferenceSpace>().unwrap_err(),
            Error::UnknownSpace("P5".into())
        );
    }

    #[test]
    fn potentials() {
        assert_eq!(
            reference_potential(ReferenceSpace::P2).to_string(),
            "x + y + x^-1*y^-1"
        );
        assert_eq!(
            reference_potential(ReferenceSpace::P1).to_string(),
            "x + x^-1"
        );
        let p1 = reference_potential(ReferenceSpace::P1).embed(2).unwrap();
        let swap = vec![vec![0, 1], vec![1, 0]];
        let product = p1.add(&p1.substitute_unimodular(&swap).unwrap()).unwrap();
        assert_eq!(reference_potential(ReferenceSpace::P1xP1), product);
    }

    /// Count `d`-subsets of `2d` labelled points directly.
    fn subsets_of_half(n: u32) -> u64 {
        (0u64..1 << (2 * n))
            .filter(|mask| mask.count_ones() == n)
            .count() as u64
    }

    #[test]
    fn naive_counts_match_subset_enumeration() {
        assert_eq!(naive_count_p1(1), BigUint::from(2u32));
        assert_eq!(naive_count_p1(2), BigUint::from(6u32));
        for d in 1..=8 {
            assert_eq!(naive_count_p1(d), BigUint::from(subsets_of_half(d)));
        }
    }

    #[test]
    fn quantum_periods() {
        assert_eq!(
            ints(&reference_quantum_period(ReferenceSpace::P1, 6).unwrap()),
            [1, 0, 2, 0, 6, 0, 20]
        );
        let p2 = ints(&reference_quantum_period(ReferenceSpace::P2, 9).unwrap());
        assert_eq!((p2[3], p2[6], p2[9]), (6, 90, 1680));
        assert_eq!(
            ints(&reference_quantum_period(ReferenceSpace::P1xP1, 4).unwrap()),
            [1, 0, 4, 0, 36]
        );
    }

    #[test]
    fn closed_forms_match_expansion() {
        for space in ReferenceSpace::ALL {
            let expansion = classical_period_bruteforce(&reference_potential(space), 8);
            assert_eq!(
                reference_quantum_period(space, 8).unwrap(),
                expansion,
                "{space}"
            );
        }
    }

    #[test]
    fn split_series_has_unit_and_no_degree_one() {
        for space in ReferenceSpace::ALL {
            let series = reference_quantum_series(space, 5).unwrap();
            assert_eq!(
                series.entries()[0],
                MoriElement::unit(space.boundary_components())
            );
            assert!(series.entries()[1].is_zero());
        }
    }
}
