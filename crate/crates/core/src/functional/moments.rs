use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{CPoly, MultiIndex};

/// Truncated linear functional `L`, given by its moments `L(x^alpha)` for every
/// `|alpha| <= max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    n: usize,
    max_degree: u32,
    moments: HashMap<MultiIndex, f64>,
}

impl MomentSequence {
    /// Fills every moment up to `max_degree` from `f`.
    pub fn from_fn<F>(n: usize, max_degree: u32, mut f: F) -> Result<Self>
    where
        F: FnMut(&MultiIndex) -> Result<f64>,
    {
        let mut moments = HashMap::new();
        for alpha in MultiIndex::up_to_degree(n, max_degree) {
            let v = f(&alpha)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteMoment {
                    alpha: alpha.exponents().to_vec(),
                });
            }
            moments.insert(alpha, v);
        }
        Ok(MomentSequence {
            n,
            max_degree,
            moments,
        })
    }

    /// Builds from explicit entries; every `|alpha| <= max_degree` must appear.
    pub fn from_entries<I>(n: usize, max_degree: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, f64)>,
    {
        let mut moments = HashMap::new();
        for (alpha, v) in entries {
            if alpha.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.dim(),
                });
            }
            if alpha.degree() > max_degree {
                return Err(Error::Invalid(format!(
                    "moment {alpha:?} above declared max_degree {max_degree}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::NonFiniteMoment {
                    alpha: alpha.exponents().to_vec(),
                });
            }
            if moments.insert(alpha.clone(), v).is_some() {
                return Err(Error::Invalid(format!("duplicate moment {alpha:?}")));
            }
        }
        for alpha in MultiIndex::up_to_degree(n, max_degree) {
            if !moments.contains_key(&alpha) {
                return Err(Error::IncompleteMoments {
                    alpha: alpha.exponents().to_vec(),
                });
            }
        }
        Ok(MomentSequence {
            n,
            max_degree,
            moments,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `L(1)`.
    pub fn mass(&self) -> f64 {
        self.moments[&MultiIndex::zero(self.n)]
    }

    pub fn get(&self, alpha: &MultiIndex) -> Result<f64> {
        if alpha.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: alpha.dim(),
            });
        }
        self.moments
            .get(alpha)
            .copied()
            .ok_or(Error::DegreeExceeded {
                needed: alpha.degree(),
                available: self.max_degree,
            })
    }

    /// Requires `degree <= max_degree`.
    pub fn require_degree(&self, degree: u32) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::DegreeExceeded {
                needed: degree,
                available: self.max_degree,
            });
        }
        Ok(())
    }

    /// Moments in graded-lex order.
    pub fn entries(&self) -> Vec<(MultiIndex, f64)> {
        MultiIndex::up_to_degree(self.n, self.max_degree)
            .into_iter()
            .map(|a| {
                let v = self.moments[&a];
                (a, v)
            })
            .collect()
    }

    /// Restriction to total degree `<= degree`.
    pub fn truncate(&self, degree: u32) -> Result<Self> {
        self.require_degree(degree)?;
        Self::from_fn(self.n, degree, |a| self.get(a))
    }

    /// Moments `L(x_j^k)` for `k = 0..=max_degree` (1-based axis).
    pub fn axis_moments(&self, axis: usize) -> Result<Vec<f64>> {
        let j = crate::poly::identities::axis_index(axis, self.n)?;
        Ok((0..=self.max_degree)
            .map(|k| self.moments[&MultiIndex::axis_power(self.n, j, k)])
            .collect())
    }

    /// `L(f)` for a complex polynomial, extended linearly.
    pub fn apply(&self, f: &CPoly) -> Result<Complex64> {
        if f.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.dim(),
            });
        }
        self.require_degree(f.degree())?;
        Ok(f.terms().map(|(a, c)| c * self.moments[a]).sum())
    }

    /// `<f, g> = L(f conj(g))`.
    pub fn inner(&self, f: &CPoly, g: &CPoly) -> Result<Complex64> {
        if f.dim() != self.n || g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: if f.dim() != self.n { f.dim() } else { g.dim() },
            });
        }
        self.require_degree(f.degree() + g.degree())?;
        self.apply(&f.try_mul(&g.conj())?)
    }

    /// `sqrt(<f, f>)`, with small negative rounding clamped to zero.
    pub fn norm(&self, f: &CPoly) -> Result<f64> {
        Ok(self.inner(f, f)?.re.max(0.0).sqrt())
    }

    pub fn to_file(&self) -> MomentFile {
        MomentFile {
            n: self.n,
            max_degree: self.max_degree,
            moments: self
                .entries()
                .into_iter()
                .map(|(a, v)| MomentEntry {
                    alpha: a.exponents().to_vec(),
                    value: v,
                })
                .collect(),
        }
    }

    pub fn from_file(file: &MomentFile) -> Result<Self> {
        Self::from_entries(
            file.n,
            file.max_degree,
            file.moments
                .iter()
                .map(|e| (MultiIndex::new(e.alpha.clone()), e.value)),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("moment file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MomentFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("moment file: {e}")))?;
        Self::from_file(&file)
    }
}

/// On-disk moment file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentFile {
    pub n: usize,
    pub max_degree: u32,
    pub moments: Vec<MomentEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentEntry {
    pub alpha: Vec<u32>,
    pub value: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_atoms() -> MomentSequence {
        // atoms at +-1 with weight 1/2
        MomentSequence::from_fn(1, 6, |a| Ok(if a.degree() % 2 == 0 { 1.0 } else { 0.0 })).unwrap()
    }

    fn dirac0(n: usize, d: u32) -> MomentSequence {
        MomentSequence::from_fn(n, d, |a| Ok(if a.is_zero() { 1.0 } else { 0.0 })).unwrap()
    }

    #[test]
    fn apply_examples() {
        let five = CPoly::constant(1, Complex64::new(5.0, 0.0));
        assert_eq!(dirac0(1, 2).apply(&five).unwrap(), Complex64::new(5.0, 0.0));
        let x2 = CPoly::from_real_terms(1, [(vec![2], 1.0)]).unwrap();
        assert_eq!(two_atoms().apply(&x2).unwrap(), Complex64::new(1.0, 0.0));
        let ix = CPoly::var(1, 0).scale(Complex64::new(0.0, 1.0));
        assert_eq!(dirac0(1, 2).apply(&ix).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn degree_is_strict() {
        let x7 = CPoly::from_real_terms(1, [(vec![7], 1.0)]).unwrap();
        assert!(matches!(two_atoms().apply(&x7), Err(Error::DegreeExceeded { needed: 7, available: 6 })));
        let x4 = CPoly::from_real_terms(1, [(vec![4], 1.0)]).unwrap();
        assert!(two_atoms().inner(&x4, &x4).is_err());
    }

    #[test]
    fn inner_examples() {
        assert_eq!(dirac0(1, 2).inner(&CPoly::one(1), &CPoly::one(1)).unwrap().re, 1.0);
        let x = CPoly::var(1, 0);
        assert_eq!(two_atoms().inner(&x, &x).unwrap().re, 1.0);
    }

    #[test]
    fn rejects_non_finite_and_incomplete() {
        assert!(matches!(
            MomentSequence::from_fn(1, 2, |a| Ok(if a.degree() == 2 { f64::NAN } else { 1.0 })),
            Err(Error::NonFiniteMoment { .. })
        ));
        let partial = vec![(MultiIndex::new(vec![0]), 1.0), (MultiIndex::new(vec![2]), 1.0)];
        assert!(matches!(
            MomentSequence::from_entries(1, 2, partial),
            Err(Error::IncompleteMoments { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = MomentSequence::from_fn(2, 4, |a| Ok(0.1f64.powi(a.degree() as i32) / 3.0 + a.get(0) as f64)).unwrap();
        let back = MomentSequence::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
