use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial `x1^a1 ... xn^an`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x1` descending, so the degree-1 block reads `x1, x2, ..., xn`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `x_axis^power`, with `axis` zero-based.
    pub fn axis_power(n: usize, axis: usize, power: u32) -> Self {
        let mut e = vec![0; n];
        e[axis] = power;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum, the exponent of a monomial product.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` if some component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn with_axis_shift(&self, axis: usize, by: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[axis] += by;
        MultiIndex(e)
    }

    /// Monomial evaluated at a real point.
    pub fn eval(&self, point: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(point)
            .map(|(&e, &x)| x.powi(e as i32))
            .product()
    }

    /// All exponent vectors of dimension `n` with total degree `<= max_degree`,
    /// in graded-lex order.
    pub fn up_to_degree(n: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            out.extend(Self::of_degree(n, d));
        }
        out
    }

    /// Exponent vectors restricted to a single axis: `1, x_j, ..., x_j^max_degree`.
    pub fn axis_only(n: usize, axis: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree)
            .map(|p| Self::axis_power(n, axis, p))
            .collect()
    }

    /// Exponent vectors of exactly total degree `d`, descending in `x1` first.
    pub fn of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(remaining);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e);
                rec(n, remaining - e, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return if d == 0 { vec![MultiIndex(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}
