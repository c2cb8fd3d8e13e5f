//! Exact LLL reduction of integer row bases.
//!
//! Integral variant of LLL: instead of rational Gram-Schmidt coefficients
//! `μ_{k,j}` it keeps the integers `λ_{k,j} = d_j μ_{k,j}` and the Gram
//! determinants `d_j = ∏_{i<=j} |b*_i|²`, so every update is an exact
//! integer operation (all divisions below are exact).
//!
//! Reference: H. Cohen, *A Course in Computational Algebraic Number Theory*,
//! Algorithm 2.6.7.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Cooperative cancellation flag shared between a caller and a long reduction.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Lovász constant `δ = num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Delta {
    pub num: u32,
    pub den: u32,
}

impl Default for Delta {
    fn default() -> Self {
        Delta { num: 99, den: 100 }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Round `a/b` to the nearest integer, `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    // lambda[k][j] for j < k
    lambda: Vec<Vec<BigInt>>,
    // d[0] = 1, d[i+1] = Gram determinant of the first i+1 rows
    d: Vec<BigInt>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if (&self.lambda[k][l] * BigInt::from(2)).abs() <= *dl {
            return;
        }
        let q = round_div(&self.lambda[k][l], dl);
        let (lo, hi) = self.b.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * dl;
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let (lo, hi) = self.lambda.split_at_mut(k);
            std::mem::swap(&mut lo[k - 1][j], &mut hi[0][j]);
        }
        let lam = self.lambda[k][k - 1].clone();
        // d indices are shifted by one: d[k] is the determinant through row k-1
        let dk = self.d[k + 1].clone();
        let dk1 = self.d[k].clone();
        let dk2 = self.d[k - 1].clone();
        let bnew = (&dk2 * &dk + &lam * &lam) / &dk1;
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            let lik = (&dk * &self.lambda[i][k - 1] - &lam * &t) / &dk1;
            let lik1 = (&bnew * &t + &lam * &lik) / &dk;
            self.lambda[i][k] = lik;
            self.lambda[i][k - 1] = lik1;
        }
        self.d[k] = bnew;
    }
}

/// LLL-reduces the rows of `basis`, which must be linearly independent.
pub fn lll_reduce(basis: Vec<Vec<BigInt>>, delta: Delta, cancel: &CancelToken) -> Result<Vec<Vec<BigInt>>> {
    let n = basis.len();
    if n <= 1 {
        return Ok(basis);
    }
    let mut st = State {
        lambda: (0..n).map(|k| vec![BigInt::zero(); k]).collect(),
        d: vec![BigInt::zero(); n + 1],
        b: basis,
    };
    st.d[0] = BigInt::one();
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(Error::Domain("zero vector in lattice basis".into()));
    }
    let (dn, dd) = (BigInt::from(delta.num), BigInt::from(delta.den));
    let mut k = 1usize;
    let mut kmax = 0usize;
    let mut steps = 0u64;
    while k < n {
        steps += 1;
        if steps % 64 == 1 && cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * u - &st.lambda[k][i] * &st.lambda[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Domain("lattice basis is linearly dependent".into()));
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        st.red(k, k - 1);
        // Lovász: d_k d_{k-2} < δ d_{k-1}² − λ², scaled by den
        let lam = &st.lambda[k][k - 1];
        let lhs = &dd * &st.d[k + 1] * &st.d[k - 1];
        let rhs = &dn * &st.d[k] * &st.d[k] - &dd * lam * lam;
        if lhs < rhs {
            st.swap(k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                st.red(k, l);
            }
            k += 1;
        }
    }
    Ok(st.b)
}
