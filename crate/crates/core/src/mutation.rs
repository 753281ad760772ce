//! Algebraic mutations of Laurent potentials.
//!
//! Given a primitive covector `w` and a factor `h` supported on `w^⊥`, split
//! `f = Σ_k C_k` by the level `<w, m> = k` and set `f' = Σ_k h^k C_k`. This is
//! a Laurent polynomial exactly when `h^{|k|}` divides `C_k` for every
//! negative level.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::period::{classical_period, period_match, MatchOutcome};
use crate::poly::{LaurentPoly, Monomial};
use crate::ring::{Coefficient, Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct MutationData {
    w: Vec<i64>,
    factor: LaurentPoly<Rational>,
}

impl MutationData {
    pub fn new(w: Vec<i64>, factor: LaurentPoly<Rational>) -> Result<Self> {
        if w.len() != factor.rank() {
            return Err(Error::DimensionMismatch {
                expected: factor.rank(),
                found: w.len(),
            });
        }
        let g = w.iter().fold(0i64, |g, x| g.gcd(x));
        if g != 1 {
            return Err(Error::InvalidMutation(format!(
                "grading vector {w:?} is not primitive"
            )));
        }
        if factor.is_zero() {
            return Err(Error::InvalidMutation("factor is zero".into()));
        }
        if let Some(m) = factor.support().find(|m| m.pairing(&w) != 0) {
            return Err(Error::InvalidMutation(format!(
                "factor monomial {:?} has level {} under {w:?}",
                m.exponents(),
                m.pairing(&w)
            )));
        }
        Ok(Self { w, factor })
    }

    pub fn w(&self) -> &[i64] {
        &self.w
    }

    pub fn factor(&self) -> &LaurentPoly<Rational> {
        &self.factor
    }

    /// The same factor with the grading reversed.
    pub fn inverse(&self) -> Self {
        Self {
            w: self.w.iter().map(|x| -x).collect(),
            factor: self.factor.clone(),
        }
    }
}

/// Pieces `C_k` of `f` by level `k = <w, m>`.
pub fn w_decompose<C: Coefficient>(f: &LaurentPoly<C>, w: &[i64]) -> BTreeMap<i64, LaurentPoly<C>> {
    let mut levels: BTreeMap<i64, Vec<(Monomial, C)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        levels
            .entry(m.pairing(w))
            .or_default()
            .push((*m, c.clone()));
    }
    levels
        .into_iter()
        .map(|(k, terms)| (k, LaurentPoly::from_terms(f.rank(), terms)))
        .collect()
}

/// `numerator / divisor` in the Laurent ring, or `None` when the division
/// leaves a remainder.
///
/// Both operands are shifted to honest polynomials with no monomial factor.
/// A single divisor is its own Gröbner basis, so multivariate division under
/// the graded order has zero remainder exactly when it divides.
pub fn divide_exact<F: Field>(
    numerator: &LaurentPoly<F>,
    divisor: &LaurentPoly<F>,
) -> Option<LaurentPoly<F>> {
    let rank = numerator.rank();
    if numerator.is_zero() {
        return Some(LaurentPoly::zero(rank));
    }
    let num_shift = numerator.min_exponents()?;
    let div_shift = divisor.min_exponents()?;
    let mut remaining = numerator.shift(&num_shift.inverse());
    let divisor = divisor.shift(&div_shift.inverse());
    let (lead_m, lead_c) = divisor.leading_term().map(|(m, c)| (*m, c.inverse()))?;

    let mut quotient = LaurentPoly::zero(rank);
    while let Some((m, c)) = remaining.leading_term().map(|(m, c)| (*m, c.clone())) {
        if !m.dominates(&lead_m) {
            return None;
        }
        let step = LaurentPoly::from_monomial(m.mul(&lead_m.inverse()), c.mul_ref(&lead_c));
        remaining = &remaining - &(&step * &divisor);
        quotient = &quotient + &step;
    }
    Some(quotient.shift(&num_shift.mul(&div_shift.inverse())))
}

#[derive(Clone, Debug, PartialEq)]
pub enum MutationOutcome {
    Mutated(LaurentPoly<Rational>),
    /// `h^{|level|}` does not divide the piece at this (negative) level.
    NotMutable {
        level: i64,
    },
}

pub fn mutate(f: &LaurentPoly<Rational>, data: &MutationData) -> Result<MutationOutcome> {
    if f.rank() != data.factor.rank() {
        return Err(Error::DimensionMismatch {
            expected: data.factor.rank(),
            found: f.rank(),
        });
    }
    let mut out = LaurentPoly::zero(f.rank());
    for (level, piece) in w_decompose(f, &data.w) {
        let image = if level < 0 {
            let mut p = piece;
            for _ in 0..level.unsigned_abs() {
                match divide_exact(&p, &data.factor) {
                    Some(q) => p = q,
                    None => return Ok(MutationOutcome::NotMutable { level }),
                }
            }
            p
        } else {
            &data.factor.pow(level as u32) * &piece
        };
        out = &out + &image;
    }
    Ok(MutationOutcome::Mutated(out))
}

/// Compare the classical periods of two potentials up to degree `D`.
pub fn check_period_invariance(
    f: &LaurentPoly<Rational>,
    g: &LaurentPoly<Rational>,
    degree: usize,
) -> Result<MatchOutcome> {
    if f.rank() != g.rank() {
        return Err(Error::DimensionMismatch {
            expected: f.rank(),
            found: g.rank(),
        });
    }
    period_match(
        &classical_period(f, degree),
        &classical_period(g, degree),
        degree,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    fn poly(rank: usize, terms: &[(&[i32], i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::normalize(rank, terms.iter().map(|(e, c)| (e.to_vec(), rational(*c)))).unwrap()
    }

    fn one_plus_x() -> LaurentPoly<Rational> {
        poly(2, &[(&[0, 0], 1), (&[1, 0], 1)])
    }

    #[test]
    fn decomposition() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]);
        let pieces = w_decompose(&f, &[0, 1]);
        assert_eq!(pieces.len(), 3);
        assert_eq!(pieces[&1], poly(2, &[(&[0, 1], 1)]));
        assert_eq!(pieces[&0], poly(2, &[(&[1, 0], 1)]));
        assert_eq!(pieces[&-1], poly(2, &[(&[-1, -1], 1)]));
        let total = pieces
            .values()
            .fold(LaurentPoly::zero(2), |acc, p| &acc + p);
        assert_eq!(total, f);

        let c = LaurentPoly::constant(2, rational(4));
        assert_eq!(w_decompose(&c, &[3, -2]).keys().collect::<Vec<_>>(), [&0]);
    }

    #[test]
    fn exact_division() {
        let h = one_plus_x();
        let c = poly(2, &[(&[0, 1], 1), (&[1, 1], 1)]);
        assert_eq!(divide_exact(&c, &h), Some(poly(2, &[(&[0, 1], 1)])));

        let square = &h * &h;
        let shifted = square.shift(&Monomial::new(&[-3, 2]).unwrap());
        assert_eq!(
            divide_exact(&shifted, &h),
            Some(h.shift(&Monomial::new(&[-3, 2]).unwrap()))
        );
        assert_eq!(divide_exact(&poly(2, &[(&[-1, -1], 1)]), &h), None);
        assert_eq!(
            divide_exact(&poly(2, &[(&[2, 0], 1), (&[0, 0], 1)]), &h),
            None
        );
    }

    #[test]
    fn validation() {
        assert!(matches!(
            MutationData::new(vec![0, 2], one_plus_x()),
            Err(Error::InvalidMutation(_))
        ));
        assert!(matches!(
            MutationData::new(vec![1, 0], one_plus_x()),
            Err(Error::InvalidMutation(_))
        ));
        assert!(matches!(
            MutationData::new(vec![1], one_plus_x()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mutable_example() {
        let f = poly(2, &[(&[0, 1], 1), (&[1, 1], 1), (&[0, -1], 1)]);
        let data = MutationData::new(vec![0, -1], one_plus_x()).unwrap();
        let expected = poly(2, &[(&[0, 1], 1), (&[0, -1], 1), (&[1, -1], 1)]);
        assert_eq!(
            mutate(&f, &data).unwrap(),
            MutationOutcome::Mutated(expected.clone())
        );
        assert_eq!(
            mutate(&expected, &data.inverse()).unwrap(),
            MutationOutcome::Mutated(f.clone())
        );
        assert_eq!(
            check_period_invariance(&f, &expected, 8).unwrap(),
            MatchOutcome::Equal
        );
    }

    #[test]
    fn identity_mutation() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]);
        let data = MutationData::new(vec![0, 1], LaurentPoly::one(2)).unwrap();
        assert_eq!(mutate(&f, &data).unwrap(), MutationOutcome::Mutated(f));
    }

    #[test]
    fn projective_plane_is_not_mutable_along_y() {
        let f = poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]);
        let data = MutationData::new(vec![0, 1], one_plus_x()).unwrap();
        assert_eq!(
            mutate(&f, &data).unwrap(),
            MutationOutcome::NotMutable { level: -1 }
        );
    }
}
