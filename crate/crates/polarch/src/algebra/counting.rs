//! Switch-size counting: how many binary symmetric sub-channels a compound
//! transform can produce, and the exact weight `φ(α)` governing the
//! asymptotic collapse of output-alphabet classes.

use num::{BigUint, Integer, One, Zero};

use crate::channel::BscMixture;
use crate::error::{Error, Result};
use crate::pattern::PatternIndex;

/// Number of sub-channels in the canonical switch form.
pub fn phi_count(w: &BscMixture) -> usize {
    w.part_count()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num::integer::binomial(BigUint::from(n), BigUint::from(k))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `m! / Π parts_i!`; the parts must sum to `m`.
pub fn multinomial(m: u64, parts: &[u64]) -> BigUint {
    debug_assert_eq!(parts.iter().sum::<u64>(), m);
    let mut remaining = m;
    let mut out = BigUint::one();
    for &p in parts {
        out *= binomial(remaining, p);
        remaining -= p;
    }
    out
}

/// `Σ_{s+2b = 2^k - a} multinomial(2^k; s, a+b, b) 2^s = C(2^{k+1}, 2^k - a)`.
pub fn multinomial_identity_holds(k: u32, a: u64) -> bool {
    let n = 1u64 << k;
    if a > n {
        return false;
    }
    let mut lhs = BigUint::zero();
    let mut b = 0u64;
    while a + 2 * b <= n {
        let s = n - a - 2 * b;
        lhs += multinomial(n, &[s, a + b, b]) * BigUint::from(2u32).pow(s as u32);
        b += 1;
    }
    lhs == binomial(2 * n, n - a)
}

/// Printed upper bound on the switch size of `A_α(W)` for a switch with `n`
/// crossovers strictly below 1/2 plus one part at exactly 1/2.
///
/// Supported patterns: uniform blocks `0^k` / `1^k` of any length, plus the
/// two-step mixed patterns `01` and `10`.
pub fn phi_bound(alpha: &PatternIndex, n: u64) -> Result<BigUint> {
    let bits = alpha.bits();
    if bits.is_empty() {
        return Err(Error::UnsupportedPattern(alpha.to_string()));
    }
    let nn = n * n + n; // n^2 + n, the one-step bit-side count without B(1/2)
    let exact_div = |num: BigUint, den: u64| -> BigUint {
        let (q, r) = num.div_rem(&BigUint::from(den));
        debug_assert!(r.is_zero());
        q
    };
    if bits.iter().all(|&b| b == 0) {
        // m-fold check side, m = 2^k: one crossover per multiset plus B(1/2).
        let m = 1u64 << bits.len();
        return Ok(binomial(m + n - 1, m) + BigUint::one());
    }
    if bits.iter().all(|&b| b == 1) {
        // m-fold bit side, m = 2^k.
        let m = 1u64 << bits.len();
        let mut sum = BigUint::one();
        for omega in 1..=m.min(n) {
            sum += BigUint::from(2u32).pow(omega as u32 - 1)
                * binomial(n, omega)
                * binomial(m, omega);
        }
        return Ok(sum);
    }
    match bits {
        [0, 1] => Ok(exact_div(BigUint::from(nn) * BigUint::from(nn + 2), 4) + BigUint::one()),
        [1, 0] => Ok(exact_div(BigUint::from(nn) * BigUint::from(nn + 1), 2) + BigUint::one()),
        _ => Err(Error::UnsupportedPattern(alpha.to_string())),
    }
}

/// The recursive weight `φ(α)`: `φ(0^l) = φ(1^l) = (2^l)! 2^(2^l)`, and a
/// trailing run of `l` opposite bits multiplies as
/// `φ(β c r^l) = (2^l)! φ(β c)^(2^l)`.
pub fn varphi_alpha(alpha: &PatternIndex) -> Result<BigUint> {
    fn rec(bits: &[u8]) -> BigUint {
        let last = *bits.last().expect("nonempty by construction");
        let run = bits.iter().rev().take_while(|&&b| b == last).count();
        if run == bits.len() {
            let l = bits.len() as u32;
            return factorial(1u64 << l) * BigUint::from(2u32).pow(1 << l);
        }
        let m = 1u32 << run;
        factorial(u64::from(m)) * rec(&bits[..bits.len() - run]).pow(m)
    }
    if alpha.is_empty() {
        return Err(Error::UnsupportedPattern("empty pattern has no weight".into()));
    }
    Ok(rec(alpha.bits()))
}

/// `2^(2^(k+1) - 1) <= φ(α) <= (2^k)! 2^(2^k)`, and `φ(α) 2^(1 - 2^(k+1))`
/// is an odd integer.
pub fn varphi_in_bracket(alpha: &PatternIndex) -> Result<bool> {
    let phi = varphi_alpha(alpha)?;
    let k = alpha.len() as u32;
    let low_exp = (1u64 << (k + 1)) - 1;
    let lower = BigUint::from(2u32).pow(low_exp as u32);
    let upper = factorial(1u64 << k) * BigUint::from(2u32).pow(1 << k);
    let odd_shifted = phi.trailing_zeros() == Some(low_exp);
    Ok(lower <= phi && phi <= upper && odd_shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nabla_m;
    use crate::rational::rat;

    #[test]
    fn part_counts() {
        assert_eq!(phi_count(&BscMixture::bsc(&rat(1, 4)).unwrap()), 1);
        assert_eq!(phi_count(&BscMixture::bec(&rat(1, 3)).unwrap()), 2);
        assert_eq!(phi_count(&nabla_m(&BscMixture::bsc(&rat(1, 4)).unwrap(), 2)), 2);
    }

    #[test]
    fn binomial_and_multinomial() {
        assert_eq!(binomial(8, 4), BigUint::from(70u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
        assert_eq!(multinomial(4, &[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(6, &[6]), BigUint::one());
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }

    #[test]
    fn multinomial_identity_small() {
        for k in 0..=6 {
            for a in 0..=(1u64 << k) {
                assert!(multinomial_identity_holds(k, a), "k={k} a={a}");
            }
        }
        assert!(!multinomial_identity_holds(2, 5));
    }

    #[test]
    fn printed_bounds() {
        let b = |s: &str, n: u64| phi_bound(&s.parse().unwrap(), n).unwrap();
        assert_eq!(b("0", 2), BigUint::from(4u32));
        assert_eq!(b("1", 3), BigUint::from(13u32));
        assert_eq!(b("11", 1), BigUint::from(5u32));
        assert_eq!(b("00", 2), BigUint::from(6u32)); // C(5,4)+1
        assert_eq!(b("01", 1), BigUint::from(3u32)); // 2*4/4+1
        assert_eq!(b("10", 1), BigUint::from(4u32)); // 2*3/2+1
        assert_eq!(b("000", 1), BigUint::from(2u32)); // C(8,8) + 1
        assert_eq!(b("000", 2), BigUint::from(10u32)); // C(9,8) + 1
        assert!(phi_bound(&"010".parse().unwrap(), 2).is_err());
        assert!(phi_bound(&PatternIndex::empty(), 2).is_err());
    }

    #[test]
    fn varphi_values_and_bracket() {
        let v = |s: &str| varphi_alpha(&s.parse().unwrap()).unwrap();
        assert_eq!(v("0"), BigUint::from(8u32));
        assert_eq!(v("1"), BigUint::from(8u32));
        assert_eq!(v("00"), BigUint::from(384u32));
        assert_eq!(v("11"), BigUint::from(384u32));
        assert_eq!(v("01"), BigUint::from(128u32));
        assert_eq!(v("10"), BigUint::from(128u32));
        // Trailing run of two 1s: strip it and raise what is left.
        assert_eq!(v("011"), factorial(4) * v("0").pow(4));
        assert_eq!(v("100"), factorial(4) * v("1").pow(4));
        for k in 1..=6u32 {
            for alpha in PatternIndex::all_of_length(k) {
                assert!(varphi_in_bracket(&alpha).unwrap(), "alpha {alpha}");
            }
        }
    }
}
