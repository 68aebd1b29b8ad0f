use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::MultiIndex;
use crate::error::{Error, Result};

/// Sparse polynomial in `n` variables with complex coefficients.
///
/// Terms are keyed by exponent vector in graded-lex order. Exact zero
/// coefficients are pruned after every operation; nothing else is, so
/// identities over integer-valued inputs compare exactly.
#[derive(Clone, PartialEq, Debug)]
pub struct CPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

fn is_exact_zero(c: &Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

impl CPoly {
    pub fn zero(n: usize) -> Self {
        CPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Complex64::new(1.0, 0.0))
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn monomial(alpha: MultiIndex, c: Complex64) -> Self {
        let n = alpha.dim();
        let mut terms = BTreeMap::new();
        if !is_exact_zero(&c) {
            terms.insert(alpha, c);
        }
        CPoly { n, terms }
    }

    /// The coordinate function `x_axis` (zero-based axis).
    pub fn var(n: usize, axis: usize) -> Self {
        Self::monomial(MultiIndex::axis_power(n, axis, 1), Complex64::new(1.0, 0.0))
    }

    /// `x_axis + shift` (zero-based axis); `x_j - i` is `var_shifted(n, j, -i)`.
    pub fn var_shifted(n: usize, axis: usize, shift: Complex64) -> Self {
        let mut p = Self::var(n, axis);
        p.add_term(MultiIndex::zero(n), shift);
        p
    }

    /// `1 + x_axis^2` (zero-based axis).
    pub fn one_plus_square(n: usize, axis: usize) -> Self {
        let mut p = Self::one(n);
        p.add_term(MultiIndex::axis_power(n, axis, 2), Complex64::new(1.0, 0.0));
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut p = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.dim(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Real polynomial from `(exponents, coefficient)` pairs.
    pub fn from_real_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        Self::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (MultiIndex::new(e), Complex64::new(c, 0.0))),
        )
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Complex64) {
        debug_assert_eq!(alpha.dim(), self.n);
        let slot = self.terms.entry(alpha).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if is_exact_zero(slot) {
            self.terms.retain(|_, v| !is_exact_zero(v));
        }
    }

    pub fn dim(&self) -> usize {
        self.n
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

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|a| a.degree()).max().unwrap_or(0)
    }

    /// Highest power of the zero-based `axis` appearing in any term.
    pub fn degree_in(&self, axis: usize) -> u32 {
        self.terms.keys().map(|a| a.get(axis)).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Coefficientwise complex conjugate (real variables).
    pub fn conj(&self) -> CPoly {
        CPoly {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.conj())).collect(),
        }
    }

    /// Coefficientwise real part.
    pub fn real_part(&self) -> CPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.re != 0.0)
            .map(|(a, c)| (a.clone(), Complex64::new(c.re, 0.0)))
            .collect();
        CPoly { n: self.n, terms }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    pub fn scale(&self, s: Complex64) -> CPoly {
        if is_exact_zero(&s) {
            return CPoly::zero(self.n);
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), c * s))
            .filter(|(_, c)| !is_exact_zero(c))
            .collect();
        CPoly { n: self.n, terms }
    }

    fn check_dim(&self, other: &CPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CPoly) -> Result<CPoly> {
        self.check_dim(other)?;
        let mut terms = self.terms.clone();
        for (a, c) in &other.terms {
            *terms.entry(a.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        terms.retain(|_, c| !is_exact_zero(c));
        Ok(CPoly { n: self.n, terms })
    }

    pub fn try_sub(&self, other: &CPoly) -> Result<CPoly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &CPoly) -> Result<CPoly> {
        self.check_dim(other)?;
        let mut acc: HashMap<MultiIndex, Complex64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *acc.entry(a.add(b)).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !is_exact_zero(c)).collect();
        Ok(CPoly { n: self.n, terms })
    }

    pub fn pow(&self, k: u32) -> CPoly {
        let mut out = CPoly::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn neg_ref(&self) -> CPoly {
        CPoly {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    /// Evaluates at a real point.
    pub fn eval(&self, point: &[f64]) -> Result<Complex64> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, c)| c * a.eval(point))
            .sum()
    }

    /// `self * x^shift`.
    pub fn shift(&self, shift: &MultiIndex) -> CPoly {
        CPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.add(shift), *c))
                .collect(),
        }
    }

    /// Largest coefficient modulus, 0 for the zero polynomial.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Exact division by `1 + x_axis^2` (zero-based axis); `None` unless the
    /// remainder is exactly zero.
    pub fn div_one_plus_square(&self, axis: usize) -> Option<CPoly> {
        let mut rem = self.terms.clone();
        let mut quot = CPoly::zero(self.n);
        loop {
            // Highest-power term in x_axis still at least quadratic.
            let lead = rem
                .iter()
                .filter(|(a, _)| a.get(axis) >= 2)
                .max_by(|(a, _), (b, _)| a.get(axis).cmp(&b.get(axis)).then_with(|| a.cmp(b)))
                .map(|(a, c)| (a.clone(), *c));
            let Some((alpha, c)) = lead else { break };
            let lower = {
                let mut e = alpha.exponents().to_vec();
                e[axis] -= 2;
                MultiIndex::new(e)
            };
            quot.add_term(lower.clone(), c);
            for (mono, coef) in [(alpha, c), (lower, c)] {
                let slot = rem.entry(mono).or_insert(Complex64::new(0.0, 0.0));
                *slot -= coef;
            }
            rem.retain(|_, v| !is_exact_zero(v));
        }
        if rem.is_empty() {
            Some(quot)
        } else {
            None
        }
    }
}

impl Add for &CPoly {
    type Output = CPoly;
    fn add(self, rhs: &CPoly) -> CPoly {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &CPoly) -> CPoly {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &CPoly) -> CPoly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        self.neg_ref()
    }
}

impl Add for CPoly {
    type Output = CPoly;
    fn add(self, rhs: CPoly) -> CPoly {
        &self + &rhs
    }
}

impl Sub for CPoly {
    type Output = CPoly;
    fn sub(self, rhs: CPoly) -> CPoly {
        &self - &rhs
    }
}

impl Mul for CPoly {
    type Output = CPoly;
    fn mul(self, rhs: CPoly) -> CPoly {
        &self * &rhs
    }
}
