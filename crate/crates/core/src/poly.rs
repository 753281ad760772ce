//! Sparse Laurent polynomials in up to [`MAX_RANK`] variables.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic on the exponent vector. No stored coefficient is zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::{Coefficient, Rational};

pub const MAX_RANK: usize = 8;

/// Exponent vector of a Laurent monomial. Entries may be negative.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    rank: u8,
    exps: [i32; MAX_RANK],
}

fn check_rank(rank: usize) -> Result<()> {
    if (1..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange(rank))
    }
}

impl Monomial {
    /// The unit monomial of the given rank. Panics if `rank` is not in `1..=8`.
    pub fn one(rank: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&rank), "rank {rank} out of range");
        Self {
            rank: rank as u8,
            exps: [0; MAX_RANK],
        }
    }

    pub fn new(exps: &[i32]) -> Result<Self> {
        check_rank(exps.len())?;
        let mut m = Self::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        Ok(m)
    }

    /// The variable `x_index` as a monomial.
    pub fn variable(rank: usize, index: usize) -> Self {
        let mut m = Self::one(rank);
        m.exps[index] = 1;
        m
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps[..self.rank as usize]
    }

    pub fn total_degree(&self) -> i64 {
        self.exponents().iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents().iter().all(|&e| e == 0)
    }

    /// Product of monomials (exponent addition).
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = *self;
        for i in 0..self.rank() {
            out.exps[i] += other.exps[i];
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = -*e;
        }
        out
    }

    /// Pairing `<w, m>` with an integer covector.
    pub fn pairing(&self, w: &[i64]) -> i64 {
        self.exponents()
            .iter()
            .zip(w)
            .map(|(&e, &wi)| e as i64 * wi)
            .sum()
    }

    /// `true` when every exponent of `self` is at least the matching one of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.exponents()
            .iter()
            .zip(other.exponents())
            .all(|(a, b)| a >= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| self.exponents().cmp(other.exponents()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Name of variable `index` in a polynomial of the given rank: `x, y, z, w`
/// up to rank 4, `x1..x8` beyond.
pub fn variable_name(index: usize, rank: usize) -> String {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if rank <= SHORT.len() {
        SHORT[index].to_string()
    } else {
        format!("x{}", index + 1)
    }
}

/// Laurent polynomial with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    rank: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    /// Panics if `rank` is not in `1..=8`; see [`LaurentPoly::normalize`] for
    /// the checked constructor.
    pub fn zero(rank: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&rank), "rank {rank} out of range");
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: C) -> Self {
        Self::from_monomial(Monomial::one(rank), c)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, C::one())
    }

    pub fn from_monomial(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.rank());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(rank: usize, index: usize) -> Self {
        Self::from_monomial(Monomial::variable(rank, index), C::one())
    }

    /// Canonical form of a raw term list: duplicates merged, zeros dropped.
    pub fn normalize<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
    {
        check_rank(rank)?;
        let mut out = Self::zero(rank);
        for (exps, c) in terms {
            if exps.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: exps.len(),
                });
            }
            out.add_term(Monomial::new(&exps)?, &c);
        }
        Ok(out)
    }

    /// Builds from monomials that already share this rank.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut out = Self::zero(rank);
        for (m, c) in terms {
            assert_eq!(m.rank(), rank, "monomial rank mismatch");
            out.add_term(m, &c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign_ref(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    fn check_same_rank(&self, other: &Self) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank,
                found: other.rank,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only monomials accepted by `keep`.
    pub fn mul_filtered<F>(&self, other: &Self, keep: F) -> Self
    where
        F: Fn(&Monomial) -> bool,
    {
        debug_assert_eq!(self.rank, other.rank);
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let prod = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(existing) => existing.add_assign_ref(&prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Self {
            rank: self.rank,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `self^d` by repeated squaring; `pow(0)` is one.
    pub fn pow(&self, d: u32) -> Self {
        let mut result = Self::one(self.rank);
        let mut base = self.clone();
        let mut k = d;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_filtered(&base, |_| true);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_filtered(&base, |_| true);
            }
        }
        result
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.mul_ref(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Multiply by a monomial (shift every exponent).
    pub fn shift(&self, m: &Monomial) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn coefficient_at(&self, m: &Monomial) -> Result<C> {
        if m.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: m.rank(),
            });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(C::zero))
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::one(self.rank))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Replace each exponent vector `m` by `A·m`. `A` must be square of the
    /// polynomial's rank with determinant ±1.
    pub fn substitute_unimodular(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        if matrix.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|row| row.len() != self.rank) {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: row.len(),
            });
        }
        let det = determinant(matrix);
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { det });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut image = Monomial::one(self.rank);
            for (i, row) in matrix.iter().enumerate() {
                let e: i64 = row
                    .iter()
                    .zip(m.exponents())
                    .map(|(a, &x)| a * x as i64)
                    .sum();
                image.exps[i] = i32::try_from(e).map_err(|_| {
                    Error::Format(format!("exponent {e} overflows after substitution"))
                })?;
            }
            terms.insert(image, c.clone());
        }
        Ok(Self {
            rank: self.rank,
            terms,
        })
    }

    /// Apply `f` to every coefficient, dropping any that become zero.
    pub fn map_coefficients<D, F>(&self, f: F) -> LaurentPoly<D>
    where
        D: Coefficient,
        F: Fn(&C) -> D,
    {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Same polynomial viewed in a larger rank (new variables absent).
    pub fn embed(&self, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        if rank < self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: rank,
            });
        }
        Ok(Self {
            rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = Monomial::one(rank);
                    e.exps[..self.rank].copy_from_slice(m.exponents());
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Componentwise minimum of the support exponents, or `None` for zero.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut iter = self.terms.keys();
        let mut out = *iter.next()?;
        for m in iter {
            for i in 0..self.rank {
                out.exps[i] = out.exps[i].min(m.exps[i]);
            }
        }
        Some(out)
    }
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> i64 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let rank = m.rank();
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let name = variable_name(i, rank);
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Prints in descending monomial order using the syntax accepted by the
/// expression parser, e.g. `x + y + x^-1*y^-1`.
impl fmt::Display for LaurentPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write_monomial(f, m)?;
            } else {
                write!(f, "{magnitude}*")?;
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::add(self, rhs).expect("rank mismatch in polynomial addition")
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::sub(self, rhs).expect("rank mismatch in polynomial subtraction")
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::mul(self, rhs).expect("rank mismatch in polynomial multiplication")
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly::neg(self)
    }
}
