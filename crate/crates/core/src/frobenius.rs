//! s-partitions, multinomial coefficients, and assembly of period
//! coefficients from per-partition curve counts.
//!
//! Expanding `W^d` for `W = ϑ_1 + ... + ϑ_s` gives one term per s-partition
//! `P` of `d` with weight `d! / (P(1)! ⋯ P(s)!)`. A curve class `β` belongs to
//! exactly one partition, the one whose parts are its intersection numbers
//! with the boundary components.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::mori::{CurveClass, CurveClassMonoid, MoriElement};
use crate::ring::{Coefficient, Rational};

/// Composition `P(1) + ... + P(s) = d` into non-negative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPartition {
    parts: Vec<u32>,
}

impl SPartition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty(), "an s-partition has s >= 1 parts");
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn check_total(&self, d: u32) -> Result<()> {
        if self.total() == d {
            Ok(())
        } else {
            Err(Error::PartitionMismatch {
                parts: self.parts.clone(),
                expected: d,
            })
        }
    }
}

/// All `C(d+s-1, s-1)` s-partitions of `d`, lexicographically ascending.
pub fn enumerate_s_partitions(d: u32, s: usize) -> Vec<SPartition> {
    assert!(s >= 1, "s must be positive");
    let mut out = Vec::new();
    let mut current = vec![0u32; s];
    fill(&mut current, 0, d, &mut out);
    out
}

fn fill(current: &mut [u32], index: usize, remaining: u32, out: &mut Vec<SPartition>) {
    if index + 1 == current.len() {
        current[index] = remaining;
        out.push(SPartition::new(current.to_vec()));
        return;
    }
    for part in 0..=remaining {
        current[index] = part;
        fill(current, index + 1, remaining - part, out);
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `d! / (P(1)! ⋯ P(s)!)`.
pub fn multinomial(d: u32, partition: &SPartition) -> Result<BigUint> {
    partition.check_total(d)?;
    let denominator = partition
        .parts()
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * factorial(p));
    Ok(factorial(d) / denominator)
}

/// Per-partition values `Σ_β z^β N_β(q_P)` for a fixed degree `d`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartitionCountTable {
    entries: BTreeMap<SPartition, MoriElement>,
}

impl PartitionCountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, partition: SPartition, value: MoriElement) {
        self.entries.insert(partition, value);
    }

    pub fn get(&self, partition: &SPartition) -> Option<&MoriElement> {
        self.entries.get(partition)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SPartition, &MoriElement)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn biguint_to_rational(n: BigUint) -> Rational {
    Rational::from_integer(n.into())
}

/// `c_{W,d} = Σ_P multinomial(d, P) · table(P)`.
pub fn assemble_period_coefficient(table: &PartitionCountTable, d: u32) -> Result<MoriElement> {
    let mut out = MoriElement::zero();
    for (partition, value) in table.iter() {
        let weight = biguint_to_rational(multinomial(d, partition)?);
        out = out.try_add(&value.scale(&weight))?;
    }
    Ok(out)
}

/// `p_β = multinomial(d, P) · N_β^naive(q_P)` where `d` is the total of `P`.
pub fn p_from_naive(partition: &SPartition, naive_count: &BigUint) -> Result<BigUint> {
    Ok(multinomial(partition.total(), partition)? * naive_count)
}

/// A curve class with its intersection numbers `β·[D_i]` against the `s`
/// boundary components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfiledClass {
    pub class: CurveClass,
    pub profile: Vec<u32>,
}

impl ProfiledClass {
    pub fn partition(&self) -> SPartition {
        SPartition::new(self.profile.clone())
    }
}

fn check_profile(item: &ProfiledClass, monoid: &CurveClassMonoid) -> Result<u64> {
    monoid.check_class(&item.class)?;
    let degree = monoid.degree(&item.class);
    let sum: u64 = item.profile.iter().map(|&p| p as u64).sum();
    if sum != degree {
        return Err(Error::ProfileDegreeMismatch {
            profile: item.profile.clone(),
            sum,
            degree,
        });
    }
    Ok(degree)
}

/// Assign each class to the partition `P` with `P(i) = β·[D_i]`.
pub fn group_classes_by_partition(
    classes: &[ProfiledClass],
    monoid: &CurveClassMonoid,
) -> Result<BTreeMap<SPartition, Vec<CurveClass>>> {
    let mut groups: BTreeMap<SPartition, Vec<CurveClass>> = BTreeMap::new();
    for item in classes {
        check_profile(item, monoid)?;
        groups
            .entry(item.partition())
            .or_default()
            .push(item.class.clone());
    }
    Ok(groups)
}

/// Table of `Σ_{β ∈ [P]} N_β z^β` for classes of degree `d`, built through
/// [`group_classes_by_partition`]. Classes of other degrees contribute
/// nothing since their counts vanish.
pub fn table_from_counts(
    counts: &[(ProfiledClass, BigUint)],
    monoid: &CurveClassMonoid,
    d: u32,
) -> Result<PartitionCountTable> {
    let items: Vec<ProfiledClass> = counts.iter().map(|(c, _)| c.clone()).collect();
    let groups = group_classes_by_partition(&items, monoid)?;
    let mut lookup: BTreeMap<&CurveClass, Rational> = BTreeMap::new();
    for (item, n) in counts {
        let entry = lookup
            .entry(&item.class)
            .or_insert_with(<Rational as Coefficient>::zero);
        *entry += biguint_to_rational(n.clone());
    }
    let mut table = PartitionCountTable::new();
    for (partition, members) in groups {
        if partition.total() != d {
            continue;
        }
        let members: BTreeSet<CurveClass> = members.into_iter().collect();
        let value = MoriElement::from_terms(
            members
                .into_iter()
                .map(|class| (class.clone(), lookup[&class].clone())),
        );
        table.insert(partition, value);
    }
    Ok(table)
}

/// `Σ_{β : d_β = d} p_β z^β` with `p_β` from [`p_from_naive`], summed class
/// by class without forming the partition table.
pub fn period_coefficient_by_classes(
    counts: &[(ProfiledClass, BigUint)],
    monoid: &CurveClassMonoid,
    d: u32,
) -> Result<MoriElement> {
    let mut out = MoriElement::zero();
    for (item, n) in counts {
        let degree = check_profile(item, monoid)?;
        if degree != d as u64 {
            continue;
        }
        let p = p_from_naive(&item.partition(), n)?;
        out.add_assign_ref(&MoriElement::monomial(
            item.class.clone(),
            biguint_to_rational(p),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    fn sp(parts: &[u32]) -> SPartition {
        SPartition::new(parts.to_vec())
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            enumerate_s_partitions(2, 2),
            vec![sp(&[0, 2]), sp(&[1, 1]), sp(&[2, 0])]
        );
        assert_eq!(enumerate_s_partitions(0, 3), vec![sp(&[0, 0, 0])]);
        assert_eq!(enumerate_s_partitions(3, 2).len(), 4);
        assert_eq!(enumerate_s_partitions(5, 1), vec![sp(&[5])]);
    }

    #[test]
    fn multinomials() {
        assert_eq!(
            multinomial(3, &sp(&[1, 1, 1])).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(multinomial(4, &sp(&[4, 0])).unwrap(), BigUint::from(1u32));
        assert_eq!(
            multinomial(6, &sp(&[2, 2, 2])).unwrap(),
            BigUint::from(90u32)
        );
        assert_eq!(
            multinomial(5, &sp(&[2, 2])).unwrap_err(),
            Error::PartitionMismatch {
                parts: vec![2, 2],
                expected: 5
            }
        );
    }

    #[test]
    fn naive_to_p() {
        assert_eq!(
            p_from_naive(&sp(&[1, 1]), &BigUint::from(1u32)).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            p_from_naive(&sp(&[3, 1]), &BigUint::from(0u32)).unwrap(),
            BigUint::from(0u32)
        );
        assert_eq!(
            p_from_naive(&sp(&[2, 2]), &BigUint::from(1u32)).unwrap(),
            BigUint::from(6u32)
        );
    }

    #[test]
    fn assembly_edge_cases() {
        assert!(assemble_period_coefficient(&PartitionCountTable::new(), 3)
            .unwrap()
            .is_zero());

        let beta = MoriElement::monomial(CurveClass::new(vec![1]), rational(1));
        let mut single = PartitionCountTable::new();
        single.insert(sp(&[4]), beta.clone());
        assert_eq!(assemble_period_coefficient(&single, 4).unwrap(), beta);

        let mut wrong = PartitionCountTable::new();
        wrong.insert(sp(&[1, 2]), beta);
        assert!(matches!(
            assemble_period_coefficient(&wrong, 4),
            Err(Error::PartitionMismatch { .. })
        ));
    }

    #[test]
    fn projective_line_degree_two() {
        // D = {0} + {∞}; the line class has degree 2 and meets each point once.
        let monoid = CurveClassMonoid::new(vec![2]).unwrap();
        let line = ProfiledClass {
            class: CurveClass::new(vec![1]),
            profile: vec![1, 1],
        };
        let counts = vec![(line, BigUint::from(1u32))];
        let table = table_from_counts(&counts, &monoid, 2).unwrap();
        assert_eq!(table.len(), 1);
        let c2 = assemble_period_coefficient(&table, 2).unwrap();
        assert_eq!(
            c2,
            MoriElement::monomial(CurveClass::new(vec![1]), rational(2))
        );
        assert_eq!(
            c2,
            period_coefficient_by_classes(&counts, &monoid, 2).unwrap()
        );
        assert_eq!(monoid.specialize(&c2).coeff(2), rational(2));
    }

    #[test]
    fn grouping() {
        let monoid = CurveClassMonoid::new(vec![1, 1]).unwrap();
        let a = ProfiledClass {
            class: CurveClass::new(vec![2, 0]),
            profile: vec![2, 0],
        };
        let b = ProfiledClass {
            class: CurveClass::new(vec![0, 2]),
            profile: vec![0, 2],
        };
        let groups = group_classes_by_partition(&[a.clone(), b.clone()], &monoid).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[&sp(&[2, 0])], vec![a.class.clone()]);

        let bad = ProfiledClass {
            class: CurveClass::new(vec![1, 0]),
            profile: vec![1, 1],
        };
        assert_eq!(
            group_classes_by_partition(&[bad], &monoid).unwrap_err(),
            Error::ProfileDegreeMismatch {
                profile: vec![1, 1],
                sum: 2,
                degree: 1
            }
        );
    }
}
