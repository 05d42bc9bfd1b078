//! Exact base-p digit arithmetic: digits, layers, partners, completions,
//! p-adic valuation and the floor/ceiling of a step index at a position.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair (p, n) with q = p^n, for the group SL2(q) and its Borel normalizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupParams {
    pub p: u32,
    pub n: u32,
    /// q = p^n, exact.
    pub q: i64,
    /// q - 1, the order of the torus; all U-subscripts are reduced mod this.
    pub modulus: i64,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GroupParams {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidParams("n must be >= 1".into()));
        }
        let mut q: i64 = 1;
        for _ in 0..n {
            q = q
                .checked_mul(p as i64)
                .filter(|&v| v <= 1 << 31)
                .ok_or_else(|| {
                    Error::InvalidParams(format!("p^n = {p}^{n} exceeds the exact range 2^31"))
                })?;
        }
        Ok(Self {
            p,
            n,
            q,
            modulus: q - 1,
        })
    }

    /// p^e as an exact i64. `e` must keep p^e <= q.
    pub fn pow(&self, e: u32) -> i64 {
        (self.p as i64).pow(e)
    }

    /// Reduce a U-subscript to its canonical residue mod q-1.
    pub fn reduce_twist(&self, u: i64) -> i64 {
        u.rem_euclid(self.modulus)
    }

    pub fn check_index(&self, a: i64) -> Result<()> {
        if (0..self.q).contains(&a) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                value: a,
                max: self.q - 1,
            })
        }
    }

    /// Simple indices 0..q-2 (the Steinberg index q-1 excluded), optionally
    /// restricted by parity.
    pub fn simple_indices(&self, parity: Option<u8>) -> Vec<i64> {
        (0..self.modulus)
            .filter(|a| match parity {
                None => true,
                Some(r) => (a % 2) as u8 == r,
            })
            .collect()
    }
}

/// An integer 0..q-1 together with its n base-p digits (little-endian).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitVector {
    pub digits: Vec<u32>,
    pub value: i64,
}

pub fn to_digits(a: i64, params: &GroupParams) -> Result<DigitVector> {
    params.check_index(a)?;
    let mut digits = Vec::with_capacity(params.n as usize);
    let mut rest = a;
    for _ in 0..params.n {
        digits.push((rest % params.p as i64) as u32);
        rest /= params.p as i64;
    }
    Ok(DigitVector { digits, value: a })
}

pub fn from_digits(digits: &[u32], params: &GroupParams) -> Result<i64> {
    if digits.len() != params.n as usize {
        return Err(Error::InvalidParams(format!(
            "expected {} digits, got {}",
            params.n,
            digits.len()
        )));
    }
    let mut value = 0i64;
    for (i, &d) in digits.iter().enumerate() {
        if d >= params.p {
            return Err(Error::InvalidParams(format!(
                "digit {d} at position {i} not in 0..{}",
                params.p - 1
            )));
        }
        value += (d as i64) * params.pow(i as u32);
    }
    Ok(value)
}

/// The i-th base-p digit of a.
pub fn digit(a: i64, i: u32, params: &GroupParams) -> u32 {
    ((a / params.pow(i)) % params.p as i64) as u32
}

/// The layer of a: the unique i with digits above i all equal to p-1 and
/// digit i different from p-1. Undefined for a = q-1.
pub fn layer(a: i64, params: &GroupParams) -> Result<u32> {
    params.check_index(a)?;
    if a == params.q - 1 {
        return Err(Error::NoLayer(a));
    }
    let dv = to_digits(a, params)?;
    let top = params.p - 1;
    for i in (0..params.n).rev() {
        if dv.digits[i as usize] != top {
            return Ok(i);
        }
    }
    unreachable!("a < q-1 has a digit below p-1")
}

/// The partner a': the digit at layer(a) replaced by p-2-a_s. Involutive.
pub fn partner(a: i64, params: &GroupParams) -> Result<i64> {
    let s = layer(a, params)?;
    let mut dv = to_digits(a, params)?;
    let d = dv.digits[s as usize];
    dv.digits[s as usize] = params.p - 2 - d;
    from_digits(&dv.digits, params)
}

/// The completion a-bar: the digit at layer(a) replaced by p-1.
pub fn completion(a: i64, params: &GroupParams) -> Result<i64> {
    let s = layer(a, params)?;
    let mut dv = to_digits(a, params)?;
    dv.digits[s as usize] = params.p - 1;
    from_digits(&dv.digits, params)
}

/// r_m: the largest r with p^r | m.
pub fn val_p(m: i64, params: &GroupParams) -> Result<u32> {
    if m <= 0 {
        return Err(Error::InvalidParams(format!(
            "val_p requires m >= 1, got {m}"
        )));
    }
    let mut r = 0;
    let mut rest = m;
    while rest % params.p as i64 == 0 {
        rest /= params.p as i64;
        r += 1;
    }
    Ok(r)
}

/// Floor of m at s: the largest multiple of p^s that is <= m.
pub fn floor_at(m: i64, s: u32, params: &GroupParams) -> i64 {
    let ps = params.pow(s);
    (m / ps) * ps
}

/// Ceiling of m at s: floor_at(m, s) + p^s. (Equals m + p^s when p^s | m.)
pub fn ceil_at(m: i64, s: u32, params: &GroupParams) -> i64 {
    floor_at(m, s, params) + params.pow(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of k_s = floor_at(m, s) / p^s.
pub fn k_parity(m: i64, s: u32, params: &GroupParams) -> Parity {
    if (floor_at(m, s, params) / params.pow(s)) % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}
