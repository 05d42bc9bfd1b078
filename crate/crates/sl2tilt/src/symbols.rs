//! Formal stable-category symbols U_u Omega^e M_a with canonicalization via
//! the rim-module rewrite and tensoring by one-dimensional modules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basep::{self, GroupParams};
use crate::error::{Error, Result};

/// A formal symbol U_u Omega^omega M_idx, or the zero symbol (idx = q-1,
/// the Steinberg restriction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StableSymbol {
    pub zero: bool,
    /// Twist, stored reduced mod q-1.
    pub u: i64,
    /// Heller-translate exponent, restricted to {0, 1}.
    pub omega: u8,
    /// M-subscript, 0..q-1.
    pub idx: i64,
}

/// FH-block of a symbol: the two blocks of FH for odd p, one block for p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockLabel {
    Even,
    Odd,
    Single,
}

impl StableSymbol {
    pub fn new(u: i64, omega: i64, idx: i64, params: &GroupParams) -> Result<Self> {
        if !(0..=1).contains(&omega) {
            return Err(Error::OmegaOutOfRange(omega));
        }
        params.check_index(idx)?;
        if idx == params.q - 1 {
            Ok(Self::zero(params))
        } else {
            Ok(Self {
                zero: false,
                u: params.reduce_twist(u),
                omega: omega as u8,
                idx,
            })
        }
    }

    pub fn zero(params: &GroupParams) -> Self {
        Self {
            zero: true,
            u: 0,
            omega: 0,
            idx: params.q - 1,
        }
    }

    /// Plain M_a.
    pub fn module(idx: i64, params: &GroupParams) -> Result<Self> {
        Self::new(0, 0, idx, params)
    }
}

/// The position of the unique digit of `idx` below p-1, when all other digits
/// equal p-1. None for q-1 (no free digit) and for non-rim indices.
pub fn rim_free_digit(idx: i64, params: &GroupParams) -> Option<u32> {
    let dv = basep::to_digits(idx, params).ok()?;
    let top = params.p - 1;
    let mut free = None;
    for (i, &d) in dv.digits.iter().enumerate() {
        if d != top {
            if free.is_some() {
                return None;
            }
            free = Some(i as u32);
        }
    }
    free
}

/// Tensor by the one-dimensional module U_j: shifts the twist.
pub fn tensor_u(s: StableSymbol, j: i64, params: &GroupParams) -> StableSymbol {
    if s.zero {
        return s;
    }
    StableSymbol {
        u: params.reduce_twist(s.u + j),
        ..s
    }
}

/// Canonical form: an Omega in front of a rim index is rewritten away,
/// Omega M_(p-1,..,b_i,..,p-1) = U_(-p^(i+1)) M_(p-1,..,p-2-b_i,..,p-1).
pub fn canonicalize(s: StableSymbol, params: &GroupParams) -> StableSymbol {
    if s.zero || s.omega == 0 {
        return s;
    }
    match rim_free_digit(s.idx, params) {
        Some(i) => {
            let mut dv = basep::to_digits(s.idx, params).expect("valid idx");
            let d = dv.digits[i as usize];
            dv.digits[i as usize] = params.p - 2 - d;
            let idx = basep::from_digits(&dv.digits, params).expect("valid digits");
            StableSymbol {
                zero: false,
                u: params.reduce_twist(s.u - params.pow(i + 1)),
                omega: 0,
                idx,
            }
        }
        None => s,
    }
}

/// Equality of canonical forms.
pub fn symbols_equal(s1: StableSymbol, s2: StableSymbol, params: &GroupParams) -> bool {
    canonicalize(s1, params) == canonicalize(s2, params)
}

/// Omega^(-1) of a symbol, staying within omega in {0, 1}: drop an Omega, or
/// apply the inverse rim rewrite to an omega = 0 rim symbol.
pub fn omega_inverse(s: StableSymbol, params: &GroupParams) -> Result<StableSymbol> {
    if s.zero {
        return Err(Error::ZeroSymbol("Heller inverse"));
    }
    if s.omega == 1 {
        return Ok(StableSymbol { omega: 0, ..s });
    }
    match rim_free_digit(s.idx, params) {
        Some(i) => {
            let mut dv = basep::to_digits(s.idx, params).expect("valid idx");
            let d = dv.digits[i as usize];
            dv.digits[i as usize] = params.p - 2 - d;
            let idx = basep::from_digits(&dv.digits, params).expect("valid digits");
            Ok(StableSymbol {
                zero: false,
                u: params.reduce_twist(s.u + params.pow(i + 1)),
                omega: 0,
                idx,
            })
        }
        None => Err(Error::NotInvertibleSymbolically(render(&s, params))),
    }
}

/// FH-block of a non-zero symbol: parity of u + idx for odd p.
pub fn block_of(s: StableSymbol, params: &GroupParams) -> Result<BlockLabel> {
    if s.zero {
        return Err(Error::ZeroSymbol("block"));
    }
    if params.p == 2 {
        return Ok(BlockLabel::Single);
    }
    Ok(if (s.u + s.idx) % 2 == 0 {
        BlockLabel::Even
    } else {
        BlockLabel::Odd
    })
}

/// Long form, e.g. "U_3 Omega M_7".
pub fn render(s: &StableSymbol, params: &GroupParams) -> String {
    if s.zero {
        return format!("M_{} = 0", params.q - 1);
    }
    let mut out = String::new();
    if s.u != 0 {
        out.push_str(&format!("U_{} ", s.u));
    }
    if s.omega == 1 {
        out.push_str("Omega ");
    }
    out.push_str(&format!("M_{}", s.idx));
    out
}

/// The standard shorthand "^e_u M_a" ("_u M_a" when e = 0, "M_a" when both
/// decorations vanish).
pub fn shorthand(s: &StableSymbol, _params: &GroupParams) -> String {
    if s.zero {
        return "0".into();
    }
    match (s.omega, s.u) {
        (0, 0) => format!("M_{}", s.idx),
        (0, u) => format!("_{} M_{}", u, s.idx),
        (e, u) => format!("^{}_{} M_{}", e, u, s.idx),
    }
}

impl fmt::Display for StableSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            write!(f, "0")
        } else {
            match (self.omega, self.u) {
                (0, 0) => write!(f, "M_{}", self.idx),
                (0, u) => write!(f, "U_{} M_{}", u, self.idx),
                (_, u) => write!(f, "U_{} Omega M_{}", u, self.idx),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(p: u32, n: u32) -> GroupParams {
        GroupParams::new(p, n).unwrap()
    }

    fn sym(u: i64, omega: i64, idx: i64, params: &GroupParams) -> StableSymbol {
        StableSymbol::new(u, omega, idx, params).unwrap()
    }

    #[test]
    fn tensor_u_examples() {
        let p52 = gp(5, 2);
        let s = sym(5, 1, 23, &p52);
        assert_eq!(tensor_u(s, 20, &p52), sym(1, 1, 23, &p52));
        let p32 = gp(3, 2);
        let t = sym(0, 0, 4, &p32);
        assert_eq!(tensor_u(t, 0, &p32), t);
        let z = StableSymbol::zero(&p32);
        assert_eq!(tensor_u(z, 5, &p32), z);
    }

    #[test]
    fn canonicalize_examples() {
        let p32 = gp(3, 2);
        assert_eq!(canonicalize(sym(6, 1, 6, &p32), &p32), sym(3, 0, 7, &p32));
        let p52 = gp(5, 2);
        // U_5 Omega M_(3,4) -> M_20
        assert_eq!(canonicalize(sym(5, 1, 23, &p52), &p52), sym(0, 0, 20, &p52));
        // (1,1) is not a rim index
        let s = sym(1, 1, 4, &p32);
        assert_eq!(canonicalize(s, &p32), s);
    }

    #[test]
    fn canonicalize_is_idempotent_and_preserves_block() {
        for (p, n) in [(2, 3), (3, 2), (5, 2)] {
            let params = gp(p, n);
            for idx in 0..params.q {
                for u in 0..params.modulus {
                    for omega in 0..=1 {
                        let s = StableSymbol::new(u, omega, idx, &params).unwrap();
                        let c = canonicalize(s, &params);
                        assert_eq!(canonicalize(c, &params), c);
                        if !s.zero {
                            assert_eq!(
                                block_of(s, &params).unwrap(),
                                block_of(c, &params).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symbols_equal_examples() {
        let p32 = gp(3, 2);
        assert!(symbols_equal(sym(3, 0, 7, &p32), sym(6, 1, 6, &p32), &p32));
        assert!(symbols_equal(sym(0, 0, 6, &p32), sym(3, 1, 7, &p32), &p32));
        assert!(!symbols_equal(sym(1, 0, 3, &p32), sym(1, 0, 5, &p32), &p32));
    }

    #[test]
    fn omega_inverse_examples() {
        let p32 = gp(3, 2);
        assert_eq!(
            omega_inverse(sym(3, 1, 7, &p32), &p32).unwrap(),
            sym(3, 0, 7, &p32)
        );
        // rim rewrite route: U_3 M_7 -> U_6 M_6
        assert_eq!(
            omega_inverse(sym(3, 0, 7, &p32), &p32).unwrap(),
            sym(6, 0, 6, &p32)
        );
        assert!(omega_inverse(sym(1, 0, 4, &p32), &p32).is_err());
    }

    #[test]
    fn omega_inverse_undoes_formal_omega() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
            let params = gp(p, n);
            for idx in 0..params.modulus {
                for u in 0..params.modulus {
                    let c = canonicalize(sym(u, 0, idx, &params), &params);
                    let with_omega = StableSymbol { omega: 1, ..c };
                    let back = omega_inverse(canonicalize(with_omega, &params), &params).unwrap();
                    assert!(symbols_equal(back, c, &params));
                }
            }
        }
    }

    #[test]
    fn block_examples() {
        let p32 = gp(3, 2);
        assert_eq!(block_of(sym(0, 0, 4, &p32), &p32).unwrap(), BlockLabel::Even);
        assert_eq!(block_of(sym(3, 0, 7, &p32), &p32).unwrap(), BlockLabel::Even);
        let p22 = gp(2, 2);
        assert_eq!(
            block_of(sym(0, 0, 1, &p22), &p22).unwrap(),
            BlockLabel::Single
        );
        assert!(block_of(StableSymbol::zero(&p32), &p32).is_err());
    }

    #[test]
    fn tensor_is_additive() {
        let p52 = gp(5, 2);
        for idx in 0..p52.modulus {
            let s = sym(7, 1, idx, &p52);
            for j in 0..10 {
                for k in 0..10 {
                    assert_eq!(
                        tensor_u(s, j + k, &p52),
                        tensor_u(tensor_u(s, j, &p52), k, &p52)
                    );
                }
            }
        }
    }

    #[test]
    fn zero_symbol_conventions() {
        let p32 = gp(3, 2);
        let z = StableSymbol::new(4, 1, 8, &p32).unwrap();
        assert!(z.zero);
        assert_eq!(z, StableSymbol::zero(&p32));
        assert!(omega_inverse(z, &p32).is_err());
        assert!(StableSymbol::new(0, 2, 3, &p32).is_err());
    }
}
