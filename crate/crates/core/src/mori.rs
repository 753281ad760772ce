//! Curve-class coefficients: the monoid algebra of a free commutative monoid
//! graded by anticanonical degree, and its specialization to one variable `t`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Coefficient, Rational, UniPoly};

/// Free commutative monoid on `rank` generators, generator `i` having
/// anticanonical degree `weights[i] >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MonoidDescription", into = "MonoidDescription")]
pub struct CurveClassMonoid {
    weights: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct MonoidDescription {
    rank: usize,
    weights: Vec<i64>,
}

impl TryFrom<MonoidDescription> for CurveClassMonoid {
    type Error = Error;

    fn try_from(desc: MonoidDescription) -> Result<Self> {
        if desc.rank != desc.weights.len() {
            return Err(Error::Format(format!(
                "monoid rank {} but {} weights",
                desc.rank,
                desc.weights.len()
            )));
        }
        Self::new(desc.weights)
    }
}

impl From<CurveClassMonoid> for MonoidDescription {
    fn from(m: CurveClassMonoid) -> Self {
        Self {
            rank: m.weights.len(),
            weights: m.weights.iter().map(|&w| w as i64).collect(),
        }
    }
}

impl CurveClassMonoid {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(index, weight)| {
                if weight >= 1 && weight <= u32::MAX as i64 {
                    Ok(weight as u32)
                } else {
                    Err(Error::NonPositiveWeight { index, weight })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { weights })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Anticanonical degree `β · [-K_Y]`.
    pub fn degree(&self, class: &CurveClass) -> u64 {
        debug_assert_eq!(class.rank(), self.rank());
        class
            .multiplicities()
            .iter()
            .zip(&self.weights)
            .map(|(&m, &w)| m as u64 * w as u64)
            .sum()
    }

    pub fn check_class(&self, class: &CurveClass) -> Result<()> {
        if class.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::MonoidMismatch {
                left: self.rank(),
                right: class.rank(),
            })
        }
    }

    pub fn check_element(&self, a: &MoriElement) -> Result<()> {
        a.classes().try_for_each(|c| self.check_class(c))
    }

    /// Replace each `z^β` by `t^{deg β}`.
    pub fn specialize(&self, a: &MoriElement) -> UniPoly {
        let mut out = UniPoly::zero();
        for (class, c) in &a.terms {
            out.add_assign_ref(&UniPoly::monomial(c.clone(), self.degree(class) as usize));
        }
        out
    }

    /// Drop every term whose class has degree above `max_degree`.
    pub fn truncate(&self, a: &MoriElement, max_degree: u64) -> MoriElement {
        MoriElement {
            terms: a
                .terms
                .iter()
                .filter(|(class, _)| self.degree(class) <= max_degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Smallest degree in the support, `None` for zero.
    pub fn min_degree(&self, a: &MoriElement) -> Option<u64> {
        a.classes().map(|c| self.degree(c)).min()
    }
}

/// Element `β` of the monoid, by generator multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(Vec<u32>);

impl CurveClass {
    pub fn new(multiplicities: Vec<u32>) -> Self {
        Self(multiplicities)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn generator(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        Self(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// Finite sum `Σ c_β z^β` with rational coefficients, none zero.
///
/// The zero element carries no classes, so it combines with elements of any
/// monoid; [`MoriElement::try_add`] and [`MoriElement::try_mul`] check that
/// nonzero operands agree on the monoid rank.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MoriElement {
    terms: BTreeMap<CurveClass, Rational>,
}

impl MoriElement {
    /// `c · z^β`.
    pub fn monomial(class: CurveClass, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(class, c);
        }
        Self { terms }
    }

    /// Unit `z^0` of a monoid of the given rank.
    pub fn unit(rank: usize) -> Self {
        Self::monomial(CurveClass::zero(rank), <Rational as Coefficient>::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (CurveClass, Rational)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (class, c) in terms {
            out.add_monomial(class, &c);
        }
        out
    }

    fn add_monomial(&mut self, class: CurveClass, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&class) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&class);
                }
            }
            None => {
                self.terms.insert(class, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, &Rational)> {
        self.terms.iter()
    }

    pub fn classes(&self) -> impl Iterator<Item = &CurveClass> {
        self.terms.keys()
    }

    pub fn coefficient(&self, class: &CurveClass) -> Rational {
        self.terms
            .get(class)
            .cloned()
            .unwrap_or_else(<Rational as Coefficient>::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monoid rank shared by the support, `None` for zero.
    pub fn class_rank(&self) -> Option<usize> {
        self.terms.keys().next().map(CurveClass::rank)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        let mut ranks = self.classes().chain(other.classes()).map(CurveClass::rank);
        if let Some(first) = ranks.next() {
            if let Some(bad) = ranks.find(|&r| r != first) {
                return Err(Error::MonoidMismatch {
                    left: first,
                    right: bad,
                });
            }
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_ref(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_ref(other))
    }

    /// Rewrites the rank-free unit `z^0` (from [`Coefficient::one`]) as the
    /// unit of a monoid of the given rank.
    pub fn with_rank(&self, rank: usize) -> Self {
        let mut out = Self::default();
        for (class, c) in &self.terms {
            let class = if class.rank() == 0 {
                CurveClass::zero(rank)
            } else {
                class.clone()
            };
            out.add_monomial(class, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }
}

impl Coefficient for MoriElement {
    /// The empty sum.
    fn zero() -> Self {
        Self::default()
    }

    /// Rank-free unit: `z^0` of the empty monoid. Products with it are
    /// re-tagged to the other operand's rank by [`MoriElement::mul_ref`].
    fn one() -> Self {
        Self::unit(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (class, c) in &other.terms {
            if class.rank() == 0 {
                let rank = self.class_rank().unwrap_or(0);
                self.add_monomial(CurveClass::zero(rank), c);
            } else if self.class_rank() == Some(0) {
                // promote a rank-free unit to this monoid
                let units = std::mem::take(&mut self.terms);
                for (_, u) in units {
                    self.add_monomial(CurveClass::zero(class.rank()), &u);
                }
                self.add_monomial(class.clone(), c);
            } else {
                self.add_monomial(class.clone(), c);
            }
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ca, a) in &self.terms {
            for (cb, b) in &other.terms {
                let class = match (ca.rank(), cb.rank()) {
                    (0, _) => cb.clone(),
                    (_, 0) => ca.clone(),
                    _ => ca.add(cb),
                };
                out.add_monomial(class, &(a * b));
            }
        }
        out
    }
}

impl fmt::Debug for MoriElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MoriElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (class, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*z^{class}")?;
        }
        Ok(())
    }
}
