//! Frobenius-invariant perversity data: digit rotation, layer sequences,
//! partitions of n and the perversity function phi'.

use serde::{Deserialize, Serialize};

use crate::basep::{self, GroupParams};
use crate::error::Result;

/// Everything the Frobenius construction attaches to a simple index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionData {
    pub a: i64,
    pub z: Vec<u32>,
    /// Partition of n, padded with zeros to length n.
    pub lambda: Vec<u32>,
    /// omega^(sigma^i)(S_a) = -p^(n-1-Z_i) for each i.
    pub omega_values: Vec<i64>,
    pub phi: i64,
}

/// The Frobenius action on indices: p*a mod q-1, a left rotation of the
/// digit vector.
pub fn sigma(a: i64, params: &GroupParams) -> i64 {
    (a * params.p as i64).rem_euclid(params.modulus)
}

/// (Z_a)_i = layer of p^i a mod q-1.
pub fn z_sequence(a: i64, params: &GroupParams) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(params.n as usize);
    let mut x = a;
    for _ in 0..params.n {
        out.push(basep::layer(x, params)?);
        x = sigma(x, params);
    }
    Ok(out)
}

/// lambda_j = number of occurrences of n-1-j in the Z-sequence; a weakly
/// decreasing partition of n.
pub fn partition_of(a: i64, params: &GroupParams) -> Result<Vec<u32>> {
    let z = z_sequence(a, params)?;
    let n = params.n;
    let lambda: Vec<u32> = (0..n)
        .map(|j| z.iter().filter(|&&zi| zi == n - 1 - j).count() as u32)
        .collect();
    debug_assert!(lambda.windows(2).all(|w| w[0] >= w[1]));
    debug_assert_eq!(lambda.iter().sum::<u32>(), n);
    Ok(lambda)
}

/// phi'(lambda) = sum_j -lambda_j p^j. (Some sources display the exponent as
/// n-1-j, but its worked example and the omega rearrangement force p^j.)
pub fn phi_prime(lambda: &[u32], params: &GroupParams) -> i64 {
    lambda
        .iter()
        .enumerate()
        .map(|(j, &l)| -(l as i64) * params.pow(j as u32))
        .sum()
}

/// Sum of the conjugated perversity values, sum_i -p^(n-1-Z_i).
pub fn total_omega(a: i64, params: &GroupParams) -> Result<i64> {
    Ok(z_sequence(a, params)?
        .iter()
        .map(|&zi| -params.pow(params.n - 1 - zi))
        .sum())
}

pub fn partition_data(a: i64, params: &GroupParams) -> Result<PartitionData> {
    let z = z_sequence(a, params)?;
    let lambda = partition_of(a, params)?;
    let omega_values: Vec<i64> = z.iter().map(|&zi| -params.pow(params.n - 1 - zi)).collect();
    let phi = phi_prime(&lambda, params);
    debug_assert_eq!(phi, omega_values.iter().sum::<i64>());
    Ok(PartitionData {
        a,
        z,
        lambda,
        omega_values,
        phi,
    })
}

/// Simple indices grouped by partition, classes ordered lexicographically
/// from (1^n) upward. Returns (partition, member indices); empty classes are
/// kept so the filtration shape is visible.
pub fn lex_filtration(params: &GroupParams) -> Result<Vec<(Vec<u32>, Vec<i64>)>> {
    let mut classes: Vec<(Vec<u32>, Vec<i64>)> = partitions_of(params.n)
        .into_iter()
        .map(|mut lam| {
            lam.resize(params.n as usize, 0);
            (lam, Vec::new())
        })
        .collect();
    classes.sort_by(|a, b| lex_key(&a.0).cmp(&lex_key(&b.0)));
    for a in 0..params.modulus {
        let lam = partition_of(a, params)?;
        let slot = classes
            .iter_mut()
            .find(|(l, _)| *l == lam)
            .expect("partition_of yields a partition of n");
        slot.1.push(a);
    }
    Ok(classes)
}

/// Lexicographic comparison key: (1^n) smallest, (n) largest.
fn lex_key(lambda: &[u32]) -> Vec<u32> {
    lambda.to_vec()
}

/// All partitions of n, parts weakly decreasing.
fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            acc.push(part);
            rec(rest - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The strict dominance-of-(p-1)-digit-sets order: a has strictly more p-1
/// digits, at a superset of the positions where b has them.
pub fn partial_order_b(a: i64, b: i64, params: &GroupParams) -> Result<bool> {
    let da = basep::to_digits(a, params)?.digits;
    let db = basep::to_digits(b, params)?.digits;
    let top = params.p - 1;
    let count_a = da.iter().filter(|&&d| d == top).count();
    let count_b = db.iter().filter(|&&d| d == top).count();
    Ok(count_a > count_b
        && da
            .iter()
            .zip(&db)
            .all(|(&x, &y)| y != top || x == top))
}
