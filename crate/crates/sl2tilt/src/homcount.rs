//! Tuple-counting dimension formulas for stable Hom and Ext^1 between the
//! modules U_j M_b, plus the closed-form extension predicates used by the
//! tilt engine.

use serde::{Deserialize, Serialize};

use crate::basep::{self, GroupParams};
use crate::error::{Error, Result};
use crate::symbols::StableSymbol;

/// PHom / Ext^1 query between U_j M_b and U_jj M_c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomQuery {
    pub j: i64,
    pub b: i64,
    pub jj: i64,
    pub c: i64,
}

/// Outcome of the closed-form extension test at a step m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtensionVerdict {
    None,
    Unique {
        partner_index: i64,
        result: StableSymbol,
    },
}

/// Digit-bound sanity inequalities, asserted on every enumerated tuple:
/// 0 <= |b-c| <= b-c+2k <= b+c <= 2p-2 away from l, and
/// -p <= -b-c+2k-2 <= -2 at l.
pub fn digit_bounds_check(b_i: i64, c_i: i64, k_i: i64, l_case: bool, p: i64) -> bool {
    if l_case {
        let v = -b_i - c_i + 2 * k_i - 2;
        -p <= v && v <= -2
    } else {
        let v = b_i - c_i + 2 * k_i;
        (b_i - c_i).abs() <= v && v <= b_i + c_i && b_i + c_i <= 2 * p - 2
    }
}

/// dim PHom(U_j M_b, U_jj M_c): the number of tuples (k_0,..,k_{n-1}) with
/// max{0, c_i-b_i} <= k_i <= c_i, some k_l <= p-2-b_l, and
/// j - jj + sum p^i (b_i - c_i + 2 k_i) = 0 mod q-1.
pub fn stable_hom_dim(query: HomQuery, params: &GroupParams) -> Result<u64> {
    params.check_index(query.b)?;
    params.check_index(query.c)?;
    // Either side equal to M_{q-1} is projective: the stable group is zero.
    if query.b == params.q - 1 || query.c == params.q - 1 {
        return Ok(0);
    }
    let b = basep::to_digits(query.b, params)?.digits;
    let c = basep::to_digits(query.c, params)?.digits;
    let p = params.p as i64;
    let base = params.reduce_twist(query.j - query.jj);
    let mut count = 0u64;
    let mut ks = vec![0i64; params.n as usize];
    enumerate_k(&b, &c, None, p, &mut ks, 0, &mut |ks| {
        let escapes_injective = ks
            .iter()
            .enumerate()
            .any(|(l, &k)| k <= p - 2 - b[l] as i64);
        if !escapes_injective {
            return;
        }
        let mut total = base;
        for (i, &k) in ks.iter().enumerate() {
            let term = b[i] as i64 - c[i] as i64 + 2 * k;
            debug_assert!(digit_bounds_check(b[i] as i64, c[i] as i64, k, false, p));
            total += params.pow(i as u32) * term;
        }
        if total % params.modulus == 0 {
            count += 1;
        }
    });
    Ok(count)
}

/// dim Ext^1(U_j M_b, U_jj M_c): the number of tuples (l, k_0,..,k_{n-1})
/// with b_l, c_l <= p-2, the Carlson k-ranges, and the shifted congruence
/// carrying -b_l - c_l + 2 k_l - 2 at position l.
pub fn ext1_dim(query: HomQuery, params: &GroupParams) -> Result<u64> {
    params.check_index(query.b)?;
    params.check_index(query.c)?;
    if query.b == params.q - 1 || query.c == params.q - 1 {
        return Ok(0);
    }
    let b = basep::to_digits(query.b, params)?.digits;
    let c = basep::to_digits(query.c, params)?.digits;
    let p = params.p as i64;
    let base = params.reduce_twist(query.j - query.jj);
    let mut count = 0u64;
    for l in 0..params.n as usize {
        if b[l] as i64 > p - 2 || c[l] as i64 > p - 2 {
            continue;
        }
        let mut ks = vec![0i64; params.n as usize];
        enumerate_k(&b, &c, Some(l), p, &mut ks, 0, &mut |ks| {
            let mut total = base;
            for (i, &k) in ks.iter().enumerate() {
                let term = if i == l {
                    -(b[i] as i64) - c[i] as i64 + 2 * k - 2
                } else {
                    b[i] as i64 - c[i] as i64 + 2 * k
                };
                debug_assert!(digit_bounds_check(b[i] as i64, c[i] as i64, k, i == l, p));
                total += params.pow(i as u32) * term;
            }
            if total % params.modulus == 0 {
                count += 1;
            }
        });
    }
    Ok(count)
}

/// Recurse over the k-ranges in lexicographic position order, calling `f`
/// on each complete tuple. `l` marks the Carlson position, if any.
fn enumerate_k(
    b: &[u32],
    c: &[u32],
    l: Option<usize>,
    p: i64,
    ks: &mut [i64],
    i: usize,
    f: &mut impl FnMut(&[i64]),
) {
    if i == b.len() {
        f(ks);
        return;
    }
    let (bi, ci) = (b[i] as i64, c[i] as i64);
    let (lo, hi) = if l == Some(i) {
        ((bi + ci + 2 - p).max(0), bi.min(ci))
    } else {
        ((ci - bi).max(0), ci)
    };
    for k in lo..=hi {
        ks[i] = k;
        enumerate_k(b, c, l, p, ks, i + 1, f);
    }
}

/// Closed-form extension test at step m for a layer-s module M_b with
/// s > r_m: None when m_{s-1} + b_s < p-1, and the unique extension by
/// U_{mp} M_{completion(b)} with middle term U_{ceil(m,s) p} Omega M_{b'}
/// when m_{s-1} + b_s = p-1 and m has no nonzero digits below s-1.
pub fn ext_cor1(m: i64, b: i64, params: &GroupParams) -> Result<ExtensionVerdict> {
    if !(1..=params.pow(params.n - 1)).contains(&m) {
        return Err(Error::InvalidParams(format!(
            "step m = {m} out of range 1..=p^(n-1)"
        )));
    }
    let s = basep::layer(b, params)?;
    let r = basep::val_p(m, params)?;
    if s <= r {
        return Err(Error::InvalidParams(format!(
            "ext_cor1 needs layer(b) > r_m, got layer({b}) = {s} <= {r}"
        )));
    }
    let m_digits = basep::to_digits(m, params)?.digits;
    let b_s = basep::digit(b, s, params) as i64;
    let m_prev = m_digits[(s - 1) as usize] as i64;
    let lower_zero = m_digits[..(s - 1) as usize].iter().all(|&d| d == 0);
    let top = params.p as i64 - 1;
    match (m_prev + b_s).cmp(&top) {
        std::cmp::Ordering::Less => Ok(ExtensionVerdict::None),
        std::cmp::Ordering::Equal if lower_zero => {
            let u = basep::ceil_at(m, s, params) * params.p as i64;
            let result = StableSymbol::new(u, 1, basep::partner(b, params)?, params)?;
            Ok(ExtensionVerdict::Unique {
                partner_index: basep::completion(b, params)?,
                result,
            })
        }
        _ => Err(Error::InvalidCase { m, b }),
    }
}

/// Checks that the ceiling-form symbol U_{ceil(m,s) p} Omega M_{b'} admits
/// no extension by U_{mp} M_c once m_{s-1} + b_s >= p-1 and c sits in a
/// layer <= r_m. Returns true iff the Ext^1 count vanishes.
pub fn ext_cor2_zero(m: i64, b: i64, c: i64, params: &GroupParams) -> Result<bool> {
    let s = basep::layer(b, params)?;
    let r = basep::val_p(m, params)?;
    if s <= r {
        return Err(Error::InvalidParams(format!(
            "ext_cor2 needs layer(b) > r_m, got layer({b}) = {s} <= {r}"
        )));
    }
    let m_prev = basep::digit(m, s - 1, params) as i64;
    let b_s = basep::digit(b, s, params) as i64;
    if m_prev + b_s < params.p as i64 - 1 {
        return Err(Error::InvalidParams(format!(
            "ext_cor2 needs m_(s-1) + b_s >= p-1 at m = {m}, b = {b}"
        )));
    }
    if basep::layer(c, params)? > r {
        return Err(Error::InvalidParams(format!(
            "ext_cor2 needs layer(c) <= r_m, got layer({c}) > {r}"
        )));
    }
    // PHom(U_j Omega M_b', U_jj M_c) = Ext^1(U_j M_b', U_jj M_c).
    let query = HomQuery {
        j: basep::ceil_at(m, s, params) * params.p as i64,
        b: basep::partner(b, params)?,
        jj: m * params.p as i64,
        c,
    };
    Ok(ext1_dim(query, params)? == 0)
}
