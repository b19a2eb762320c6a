//! Integer solutions of the power-sum system
//!
//! ```text
//! sum_j j^i * l_j = 0    for i = 1, ..., k-1
//! sum_j j^k * l_j = m    with m != 0
//! ```
//!
//! Two independent routes: the closed form from the k-th finite difference,
//! and exact rational elimination on the Vandermonde-type matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported order; `20!` still fits in an `i64`.
pub const MAX_ORDER: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSolution {
    pub k: u32,
    /// `(l_1, ..., l_k)`.
    pub l: Vec<i64>,
    pub m: i64,
    /// `sum_j |l_j|`.
    pub total: u64,
}

impl LemmaSolution {
    fn new(k: u32, l: Vec<i64>, m: i64) -> Result<Self> {
        let total = l.iter().map(|x| x.unsigned_abs()).sum();
        let sol = Self { k, l, m, total };
        sol.verify()?;
        Ok(sol)
    }

    /// Re-checks every equation by exact integer evaluation.
    pub fn verify(&self) -> Result<()> {
        if self.l.len() != self.k as usize {
            return Err(Error::InvalidParameter(format!(
                "solution has {} coefficients for k={}",
                self.l.len(),
                self.k
            )));
        }
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be nonzero".into()));
        }
        for i in 1..=self.k {
            let expected = if i == self.k { BigInt::from(self.m) } else { BigInt::zero() };
            let got = power_sum(&self.l, i);
            if got != expected {
                return Err(Error::InvalidParameter(format!(
                    "equation {i} evaluates to {got}, expected {expected}"
                )));
            }
        }
        let total: u64 = self.l.iter().map(|x| x.unsigned_abs()).sum();
        if total != self.total {
            return Err(Error::InvalidParameter("M does not match sum |l_j|".into()));
        }
        Ok(())
    }

    /// `l_1 + ... + l_k`, the coefficient of `t_k` in the orbit identity.
    pub fn coefficient_sum(&self) -> i64 {
        self.l.iter().sum()
    }
}

/// `sum_j j^i * l_j` with `j` running over `1..=l.len()`.
pub fn power_sum(l: &[i64], i: u32) -> BigInt {
    l.iter().enumerate().map(|(idx, &lj)| BigInt::from(idx as u64 + 1).pow(i) * lj).sum()
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 || k > MAX_ORDER {
        return Err(Error::OrderOutOfRange(k));
    }
    Ok(())
}

pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(k: u32) -> Result<i64> {
    (1..=k as i64)
        .try_fold(1i64, |acc, x| acc.checked_mul(x).ok_or_else(|| Error::Overflow(format!("{k}!"))))
}

/// `l_j = (-1)^(k-j) C(k, j)`, `m = k!`.
pub fn solve_canonical(k: u32) -> Result<LemmaSolution> {
    check_order(k)?;
    let l = (1..=k)
        .map(|j| {
            let c = binomial(k as u64, j as u64) as i64;
            if (k - j).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .collect();
    LemmaSolution::new(k, l, factorial(k)?)
}

/// Gauss-Jordan elimination over the rationals with right-hand side
/// `(0, ..., 0, 1)`, then scaled by the lcm of the denominators.
pub fn solve_by_elimination(k: u32) -> Result<LemmaSolution> {
    check_order(k)?;
    let n = k as usize;
    // Row i (0-based) is the equation with exponent i + 1.
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (1..=n)
                .map(|j| BigRational::from_integer(BigInt::from(j).pow(i as u32 + 1)))
                .collect();
            let rhs = if i + 1 == n { BigRational::one() } else { BigRational::zero() };
            row.push(rhs);
            row
        })
        .collect();

    for col in 0..n {
        let pivot =
            (col..n).find(|&r| !rows[r][col].is_zero()).expect("power-sum matrix is nonsingular");
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
    }

    let solution: Vec<BigRational> = rows.into_iter().map(|row| row[n].clone()).collect();
    let lcm = solution.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let to_i64 = |x: BigInt| {
        x.to_i64().ok_or_else(|| Error::Overflow(format!("elimination coefficient {x}")))
    };
    let mut l = Vec::with_capacity(n);
    for x in &solution {
        l.push(to_i64((x * BigRational::from_integer(lcm.clone())).to_integer())?);
    }
    // Right-hand side scaled the same way; lcm is the smallest positive m
    // making every coefficient integral.
    let m = to_i64(lcm.abs())?;
    LemmaSolution::new(k, l, m)
}
