use num_complex::Complex64;

use super::CPoly;
use crate::error::{Error, Result};

/// Element `numerator / prod_j (1 + x_j^2)^{m_j}` of the localization of the
/// polynomial ring at `p = prod_j (1 + x_j^2)`.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalizedElement {
    numerator: CPoly,
    den_exponents: Vec<u32>,
}

impl LocalizedElement {
    /// Builds and canonicalizes: a factor `1 + x_j^2` is cancelled whenever
    /// the numerator is exactly divisible by it.
    pub fn new(numerator: CPoly, den_exponents: Vec<u32>) -> Result<Self> {
        if den_exponents.len() != numerator.dim() {
            return Err(Error::DimensionMismatch {
                expected: numerator.dim(),
                found: den_exponents.len(),
            });
        }
        let mut e = LocalizedElement {
            numerator,
            den_exponents,
        };
        e.reduce();
        Ok(e)
    }

    pub fn from_poly(p: CPoly) -> Self {
        let n = p.dim();
        LocalizedElement {
            numerator: p,
            den_exponents: vec![0; n],
        }
    }

    pub fn numerator(&self) -> &CPoly {
        &self.numerator
    }

    pub fn den_exponents(&self) -> &[u32] {
        &self.den_exponents
    }

    pub fn dim(&self) -> usize {
        self.numerator.dim()
    }

    pub fn has_trivial_denominator(&self) -> bool {
        self.den_exponents.iter().all(|&m| m == 0)
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.den_exponents.iter_mut().for_each(|m| *m = 0);
            return;
        }
        for axis in 0..self.den_exponents.len() {
            while self.den_exponents[axis] > 0 {
                match self.numerator.div_one_plus_square(axis) {
                    Some(q) => {
                        self.numerator = q;
                        self.den_exponents[axis] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    /// Value of the denominator at a real point; always `>= 1`.
    pub fn denominator_at(&self, point: &[f64]) -> f64 {
        self.den_exponents
            .iter()
            .zip(point)
            .map(|(&m, &x)| (1.0 + x * x).powi(m as i32))
            .product()
    }

    pub fn eval(&self, point: &[f64]) -> Result<Complex64> {
        let num = self.numerator.eval(point)?;
        Ok(num / self.denominator_at(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[f64]) -> Complex64 {
        self.numerator.eval_unchecked(point) / self.denominator_at(point)
    }

    pub fn conj(&self) -> Self {
        LocalizedElement {
            numerator: self.numerator.conj(),
            den_exponents: self.den_exponents.clone(),
        }
    }

    fn lift(&self, target: &[u32]) -> CPoly {
        let n = self.dim();
        let mut num = self.numerator.clone();
        for (axis, (&have, &want)) in self.den_exponents.iter().zip(target).enumerate() {
            if want > have {
                num = &num * &CPoly::one_plus_square(n, axis).pow(want - have);
            }
        }
        num
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let common: Vec<u32> = self
            .den_exponents
            .iter()
            .zip(&other.den_exponents)
            .map(|(a, b)| *a.max(b))
            .collect();
        let num = &self.lift(&common) + &other.lift(&common);
        Self::new(num, common)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let den = self
            .den_exponents
            .iter()
            .zip(&other.den_exponents)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.numerator.try_mul(&other.numerator)?, den)
    }

    pub fn neg(&self) -> Self {
        LocalizedElement {
            numerator: -&self.numerator,
            den_exponents: self.den_exponents.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

/// Binary ring operation selector for [`localized_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
}

pub fn localized_arith(a: &LocalizedElement, b: &LocalizedElement, op: RingOp) -> Result<LocalizedElement> {
    match op {
        RingOp::Add => a.add(b),
        RingOp::Mul => a.mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_sum_to_one() {
        let a = LocalizedElement::new(CPoly::one(1), vec![1]).unwrap();
        let x2 = CPoly::from_real_terms(1, [(vec![2], 1.0)]).unwrap();
        let b = LocalizedElement::new(x2, vec![1]).unwrap();
        let s = localized_arith(&a, &b, RingOp::Add).unwrap();
        assert_eq!(s.numerator(), &CPoly::one(1));
        assert_eq!(s.den_exponents(), &[0]);
    }

    #[test]
    fn trivial_denominators_multiply_as_polynomials() {
        let f = CPoly::from_real_terms(2, [(vec![1, 0], 2.0), (vec![0, 0], 1.0)]).unwrap();
        let g = CPoly::from_real_terms(2, [(vec![0, 3], -1.0)]).unwrap();
        let prod = localized_arith(
            &LocalizedElement::from_poly(f.clone()),
            &LocalizedElement::from_poly(g.clone()),
            RingOp::Mul,
        )
        .unwrap();
        assert_eq!(prod, LocalizedElement::from_poly(&f * &g));
    }

    #[test]
    fn square_of_x_over_p() {
        let h = LocalizedElement::new(CPoly::var(1, 0), vec![1]).unwrap();
        let sq = h.mul(&h).unwrap();
        let v = sq.eval(&[1.0]).unwrap();
        assert!((v.re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn reduces_exactly_divisible_numerators() {
        let num = &CPoly::one_plus_square(1, 0) * &CPoly::one_plus_square(1, 0);
        let e = LocalizedElement::new(num, vec![1]).unwrap();
        assert_eq!(e.den_exponents(), &[0]);
        assert_eq!(e.numerator(), &CPoly::one_plus_square(1, 0));
    }

    #[test]
    fn zero_clears_denominator() {
        let e = LocalizedElement::new(CPoly::zero(2), vec![3, 1]).unwrap();
        assert_eq!(e.den_exponents(), &[0, 0]);
    }
}
