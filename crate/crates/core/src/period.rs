//! Classical periods: `c_d` is the constant term of `f^d`.
//!
//! [`classical_period`] multiplies incrementally and discards any monomial
//! that cannot return to the origin in the remaining steps. A monomial `m`
//! reached after `k` of `D` multiplications survives only if `-m` lies in
//! `(D - k) · Newton(f)`. When the origin is in `Newton(f)` the dilates are
//! nested, so one pass to `D` gives every `c_d` with `d <= D`; otherwise every
//! `c_d` with `d >= 1` vanishes.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::mori::{CurveClass, CurveClassMonoid, MoriElement};
use crate::newton::NewtonPolytope;
use crate::poly::{LaurentPoly, Monomial, MAX_RANK};
use crate::ring::{Coefficient, Rational};

/// Truncated period `c_0, ..., c_D`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodSequence<C> {
    entries: Vec<C>,
}

impl<C: Coefficient> PeriodSequence<C> {
    /// Entries must be nonempty.
    pub fn new(entries: Vec<C>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Format("a period sequence has at least c_0".into()));
        }
        Ok(Self { entries })
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    pub fn entry(&self, d: usize) -> Option<&C> {
        self.entries.get(d)
    }

    pub fn into_entries(self) -> Vec<C> {
        self.entries
    }

    /// First `degree + 1` entries.
    pub fn truncate(&self, degree: usize) -> Result<Self> {
        if degree > self.degree() {
            return Err(Error::TruncationExceeded {
                requested: degree,
                available: self.degree(),
            });
        }
        Ok(Self {
            entries: self.entries[..=degree].to_vec(),
        })
    }
}

fn negated_exponents(m: &Monomial) -> [i64; MAX_RANK] {
    let mut out = [0i64; MAX_RANK];
    for (o, &e) in out.iter_mut().zip(m.exponents()) {
        *o = -(e as i64);
    }
    out
}

fn trivial_sequence<C: Coefficient>(degree: usize) -> PeriodSequence<C> {
    let mut entries = vec![C::zero(); degree + 1];
    entries[0] = C::one();
    PeriodSequence { entries }
}

/// `c_0..c_D` of `f` with Newton-polytope pruning. Total: the zero
/// polynomial yields `[1, 0, ..., 0]`.
pub fn classical_period<C: Coefficient>(f: &LaurentPoly<C>, degree: usize) -> PeriodSequence<C> {
    let Ok(polytope) = NewtonPolytope::of(f) else {
        return trivial_sequence(degree);
    };
    let rank = f.rank();
    if !polytope.contains(&vec![0; rank]) {
        return trivial_sequence(degree);
    }
    let mut entries = Vec::with_capacity(degree + 1);
    let mut power = LaurentPoly::one(rank);
    entries.push(power.constant_term());
    for k in 1..=degree {
        let remaining = (degree - k) as i64;
        power = power.mul_filtered(f, |m| {
            polytope.contains_dilate(&negated_exponents(m)[..rank], remaining)
        });
        entries.push(power.constant_term());
    }
    PeriodSequence { entries }
}

/// As [`classical_period`], but the zero polynomial with `degree > 0` is an
/// error.
pub fn classical_period_strict<C: Coefficient>(
    f: &LaurentPoly<C>,
    degree: usize,
) -> Result<PeriodSequence<C>> {
    if f.is_zero() && degree > 0 {
        return Err(Error::EmptySupport);
    }
    Ok(classical_period(f, degree))
}

/// Reference implementation: expands every power `f^d` in full.
pub fn classical_period_bruteforce<C: Coefficient>(
    f: &LaurentPoly<C>,
    degree: usize,
) -> PeriodSequence<C> {
    let entries = (0..=degree)
        .map(|d| f.pow(d as u32).constant_term())
        .collect();
    PeriodSequence { entries }
}

/// One boundary component of a potential: `weight · z^class · chart`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub label: String,
    pub weight: u32,
    pub chart: LaurentPoly<Rational>,
    pub class: Option<CurveClass>,
}

/// A potential `W` written as a sum of labelled components.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec {
    components: Vec<Component>,
}

impl PotentialSpec {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if let Some(first) = components.first() {
            let rank = first.chart.rank();
            if let Some(bad) = components.iter().find(|c| c.chart.rank() != rank) {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: bad.chart.rank(),
                });
            }
        }
        if let Some(bad) = components.iter().find(|c| c.weight == 0) {
            return Err(Error::Format(format!(
                "component `{}` has weight 0",
                bad.label
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> Option<usize> {
        self.components.first().map(|c| c.chart.rank())
    }

    /// `Σ weight · chart`, forgetting class tags.
    pub fn rational_potential(&self) -> Result<LaurentPoly<Rational>> {
        let rank = self.rank().ok_or(Error::EmptySupport)?;
        let mut out = LaurentPoly::zero(rank);
        for c in &self.components {
            out = out.add(
                &c.chart
                    .scale(&<Rational as Coefficient>::from_integer(c.weight.into())),
            )?;
        }
        Ok(out)
    }

    /// `Σ weight · z^class · chart` over the curve-class ring.
    pub fn mori_potential(&self, monoid: &CurveClassMonoid) -> Result<LaurentPoly<MoriElement>> {
        let rank = self.rank().ok_or(Error::EmptySupport)?;
        let mut out = LaurentPoly::zero(rank);
        for c in &self.components {
            let class = c
                .class
                .as_ref()
                .ok_or_else(|| Error::MissingClassTag(c.label.clone()))?;
            monoid.check_class(class)?;
            let tag = MoriElement::monomial(
                class.clone(),
                <Rational as Coefficient>::from_integer(c.weight.into()),
            );
            out = out.add(&c.chart.map_coefficients(|q| tag.scale(q)))?;
        }
        Ok(out)
    }
}

/// A component whose tagged class has degree below one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingViolation {
    pub label: String,
    pub class: CurveClass,
    pub degree: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradingReport {
    pub violations: Vec<GradingViolation>,
}

impl GradingReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every tagged class must have degree at least one. Degrees add under
/// multiplication, so this certifies that the degree-`d` period entry is
/// supported on classes of degree at least `d`.
pub fn check_grading(spec: &PotentialSpec, monoid: &CurveClassMonoid) -> Result<GradingReport> {
    let mut report = GradingReport::default();
    for c in spec.components() {
        let class = c
            .class
            .as_ref()
            .ok_or_else(|| Error::MissingClassTag(c.label.clone()))?;
        monoid.check_class(class)?;
        let degree = monoid.degree(class);
        if degree < 1 && !c.chart.is_zero() {
            report.violations.push(GradingViolation {
                label: c.label.clone(),
                class: class.clone(),
                degree,
            });
        }
    }
    Ok(report)
}

/// Whether entry `d` of a curve-class period is supported in degrees `>= d`.
pub fn supported_above_diagonal(
    seq: &PeriodSequence<MoriElement>,
    monoid: &CurveClassMonoid,
) -> bool {
    seq.entries().iter().enumerate().all(|(d, entry)| {
        entry
            .classes()
            .filter(|c| c.rank() != 0)
            .all(|c| monoid.degree(c) >= d as u64)
    })
}

/// Period of a class-tagged potential, with `c_0` written as `z^0` of the
/// monoid.
pub fn mori_period(
    spec: &PotentialSpec,
    monoid: &CurveClassMonoid,
    degree: usize,
) -> Result<PeriodSequence<MoriElement>> {
    let report = check_grading(spec, monoid)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::ConventionViolation(format!(
            "component `{}` is tagged with class {} of degree {}",
            v.label, v.class, v.degree
        )));
    }
    let f = spec.mori_potential(monoid)?;
    let seq = classical_period(&f, degree);
    Ok(PeriodSequence {
        entries: seq
            .entries
            .iter()
            .map(|e| e.with_rank(monoid.rank()))
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchOutcome {
    Equal,
    Mismatch { index: usize },
}

/// Exact comparison of `c_0..c_D`.
pub fn period_match<C: Coefficient>(
    a: &PeriodSequence<C>,
    b: &PeriodSequence<C>,
    degree: usize,
) -> Result<MatchOutcome> {
    let available = a.degree().min(b.degree());
    if degree > available {
        return Err(Error::TruncationExceeded {
            requested: degree,
            available,
        });
    }
    Ok(a.entries[..=degree]
        .iter()
        .zip(&b.entries[..=degree])
        .position(|(x, y)| x != y)
        .map_or(MatchOutcome::Equal, |index| MatchOutcome::Mismatch {
            index,
        }))
}

/// Collapse a curve-class period to its series in `t` under `z^β ↦ t^{d_β}`:
/// the `t^k` coefficient sums contributions from every stored entry. Exact
/// up to `t^D` when entry `d` is supported in degrees `>= d`.
pub fn specialize_sequence(
    seq: &PeriodSequence<MoriElement>,
    monoid: &CurveClassMonoid,
    degree: usize,
) -> Result<PeriodSequence<Rational>> {
    if degree > seq.degree() {
        return Err(Error::TruncationExceeded {
            requested: degree,
            available: seq.degree(),
        });
    }
    let mut out = vec![<Rational as Coefficient>::zero(); degree + 1];
    for entry in seq.entries() {
        for (class, c) in entry.terms() {
            let k = if class.rank() == 0 {
                0
            } else {
                monoid.degree(class) as usize
            };
            if k <= degree {
                out[k] += c;
            }
        }
    }
    Ok(PeriodSequence { entries: out })
}

/// Compare a curve-class period with a pure `t` period after specializing.
pub fn period_match_mixed(
    graded: &PeriodSequence<MoriElement>,
    monoid: &CurveClassMonoid,
    plain: &PeriodSequence<Rational>,
    degree: usize,
) -> Result<MatchOutcome> {
    let specialized = specialize_sequence(graded, monoid, degree)?;
    period_match(&specialized, plain, degree)
}

/// `Ĝ_Y = Σ p_β z^β` arranged by degree, with `p_0 = 1` and `p_β = 0` in
/// degree one enforced.
pub fn quantum_period_series(
    coefficients: &BTreeMap<CurveClass, BigInt>,
    monoid: &CurveClassMonoid,
    degree: usize,
) -> Result<PeriodSequence<MoriElement>> {
    let rank = monoid.rank();
    let mut entries = vec![MoriElement::zero(); degree + 1];
    entries[0] = MoriElement::unit(rank);
    for (class, p) in coefficients {
        monoid.check_class(class)?;
        let d = monoid.degree(class) as usize;
        let value = Rational::from_integer(p.clone());
        match d {
            0 => {
                if value != <Rational as Coefficient>::one() {
                    return Err(Error::ConventionViolation(format!(
                        "p_0 must be 1, got {value}"
                    )));
                }
                continue;
            }
            1 if !Coefficient::is_zero(&value) => {
                return Err(Error::ConventionViolation(format!(
                    "p_β must vanish in degree 1, got {value} at class {class}"
                )));
            }
            _ => {}
        }
        if d > degree {
            return Err(Error::TruncationExceeded {
                requested: d,
                available: degree,
            });
        }
        entries[d].add_assign_ref(&MoriElement::monomial(class.clone(), value));
    }
    Ok(PeriodSequence { entries })
}
