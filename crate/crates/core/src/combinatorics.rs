//! Binary entropy, saturating binomials and integer logarithms.

use crate::error::{GraphError, Result};

/// `h₂(x) = -x lg x - (1-x) lg(1-x)`, with `h₂(0) = h₂(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(GraphError::Parameter(format!("entropy argument {x} outside [0, 1]")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n-i)/(i+1) is an integer and acc/g is coprime to (i+1)/g,
        // so (i+1)/g divides n-i.
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        match (acc / g).checked_mul(num / (den / g)) {
            Some(v) => acc = v,
            None => return u128::MAX,
        }
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `⌈lg n⌉`, with `⌈lg 0⌉ = ⌈lg 1⌉ = 0`.
pub fn ceil_lg(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// `⌊n^(1/k)⌋` computed exactly.
pub fn integer_root(n: u64, k: u32) -> u64 {
    if k <= 1 || n <= 1 {
        return n;
    }
    let mut x = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow = |b: u64| (0..k).try_fold(1u64, |acc, _| acc.checked_mul(b));
    while pow(x).is_none_or(|p| p > n) {
        x -= 1;
    }
    while pow(x + 1).is_some_and(|p| p <= n) {
        x += 1;
    }
    x
}
