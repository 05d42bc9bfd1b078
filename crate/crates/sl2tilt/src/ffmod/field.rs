//! Exact arithmetic in F_q = F_p[x]/(f) with precomputed operation tables.
//! Elements are encoded as u16 values: the base-p packing of the coefficient
//! vector of the residue polynomial.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FiniteField {
    pub p: u32,
    pub n: u32,
    pub q: usize,
    /// Monic irreducible polynomial, coefficients c_0..c_n (c_n = 1).
    pub poly: Vec<u32>,
    /// Fixed generator of the multiplicative group, order q-1.
    pub alpha: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

fn decode(v: usize, p: u32, n: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(n as usize);
    let mut rest = v;
    for _ in 0..n {
        c.push((rest % p as usize) as u32);
        rest /= p as usize;
    }
    c
}

fn encode(c: &[u32], p: u32) -> usize {
    c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Remainder of polynomial `a` (any degree) modulo the monic `f`, over F_p.
fn poly_rem(mut a: Vec<u32>, f: &[u32], p: u32) -> Vec<u32> {
    let deg_f = f.len() - 1;
    while a.len() > deg_f {
        let lead = *a.last().unwrap();
        let k = a.len() - 1 - deg_f;
        if lead != 0 {
            for (i, &fc) in f.iter().enumerate() {
                let idx = k + i;
                a[idx] = (a[idx] + p - (lead * fc) % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Trial division by every monic polynomial of degree 1..=n/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as usize).pow(d as u32);
        for v in 0..count {
            let mut g = decode(v, p, d as u32);
            g.push(1);
            let mut r = poly_rem(f.to_vec(), &g, p);
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds F_{p^n} with the lexicographically first monic irreducible
    /// polynomial of degree n.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        let count = (p as usize).pow(n);
        for v in 0..count {
            let mut f = decode(v, p, n);
            f.push(1);
            if is_irreducible(&f, p) {
                return Self::with_poly(p, n, f);
            }
        }
        Err(Error::InvalidParams(format!(
            "no irreducible polynomial found at p = {p}, n = {n}"
        )))
    }

    /// Builds F_{p^n} over a caller-chosen monic irreducible polynomial
    /// (coefficients c_0..c_n, low degree first).
    pub fn with_poly(p: u32, n: u32, poly: Vec<u32>) -> Result<Self> {
        if poly.len() != n as usize + 1 || poly[n as usize] != 1 {
            return Err(Error::InvalidParams(
                "polynomial must be monic of degree n".into(),
            ));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParams("coefficients must be reduced mod p".into()));
        }
        if !is_irreducible(&poly, p) {
            return Err(Error::InvalidParams("polynomial is reducible".into()));
        }
        let q = (p as usize).pow(n);
        if q > u16::MAX as usize {
            return Err(Error::InvalidParams(format!(
                "q = {q} exceeds the oracle's table range"
            )));
        }
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let ca = decode(a, p, n);
            for b in 0..=a {
                let cb = decode(b, p, n);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                let s = encode(&sum, p) as u16;
                add[a * q + b] = s;
                add[b * q + a] = s;
                let prod = poly_rem(poly_mul(&ca, &cb, p), &poly, p);
                let m = encode(&prod, p) as u16;
                mul[a * q + b] = m;
                mul[b * q + a] = m;
            }
        }
        let mut inv = vec![0u16; q];
        for a in 1..q {
            for b in 1..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
            debug_assert!(inv[a] != 0, "field axiom failure: {a} has no inverse");
        }
        let mut field = Self {
            p,
            n,
            q,
            poly,
            alpha: 0,
            add,
            mul,
            inv,
        };
        field.alpha = field
            .find_generator()
            .ok_or_else(|| Error::InvalidParams("no multiplicative generator found".into()))?;
        Ok(field)
    }

    fn find_generator(&self) -> Option<u16> {
        (1..self.q as u16).find(|&g| self.order(g) == self.q - 1)
    }

    fn order(&self, g: u16) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, g);
            k += 1;
            if k > self.q {
                return usize::MAX;
            }
        }
        k
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        let c: Vec<u32> = decode(a as usize, self.p, self.n)
            .iter()
            .map(|&d| (self.p - d) % self.p)
            .collect();
        encode(&c, self.p) as u16
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; a must be nonzero.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// a^e for any integer e (a nonzero when e < 0); exponents act mod q-1.
    pub fn pow(&self, a: u16, e: i64) -> u16 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let e = e.rem_euclid(self.q as i64 - 1);
        let mut out = 1u16;
        for _ in 0..e {
            out = self.mul(out, a);
        }
        out
    }

    /// alpha^e for any integer e.
    pub fn alpha_pow(&self, e: i64) -> u16 {
        self.pow(self.alpha, e)
    }

    /// The field Frobenius x -> x^p.
    pub fn frob(&self, a: u16) -> u16 {
        self.pow(a, self.p as i64)
    }

    /// Embedding of the prime field: k mod p as a constant polynomial.
    pub fn scalar(&self, k: u32) -> u16 {
        (k % self.p) as u16
    }

    /// Coefficients of the element over the prime field (length n).
    pub fn coords(&self, a: u16) -> Vec<u32> {
        decode(a as usize, self.p, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold() {
        for (p, n) in [(2, 3), (3, 2), (5, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            let q = f.q as u16;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (7, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            assert_eq!(f.order(f.alpha), f.q - 1);
            assert_eq!(f.alpha_pow(f.q as i64 - 1), 1);
            assert_eq!(f.alpha_pow(-1), f.inv(f.alpha));
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_field() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in 0..f.q as u16 {
            for b in 0..f.q as u16 {
                assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
            }
        }
        for k in 0..3 {
            let s = f.scalar(k);
            assert_eq!(f.frob(s), s);
        }
    }

    #[test]
    fn custom_polynomial_constructor() {
        // x^2 + 1 and x^2 + x + 2 are both irreducible over F_3
        assert!(FiniteField::with_poly(3, 2, vec![1, 0, 1]).is_ok());
        assert!(FiniteField::with_poly(3, 2, vec![2, 1, 1]).is_ok());
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert!(FiniteField::with_poly(3, 2, vec![2, 0, 1]).is_err());
    }
}
