//! Counting inequalities that gate the greedy constructions, plus the
//! entropy-rate calculator. All comparisons are exact big-integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of length-`n` vectors of weight at most `radius`.
pub fn hamming_ball(n: usize, radius: usize) -> BigInt {
    let mut total = BigInt::zero();
    let mut term = BigInt::one();
    for i in 0..=radius.min(n) {
        if i > 0 {
            term = term * (n - i + 1) / i;
        }
        total += &term;
    }
    total
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// A strict inequality `lhs < rhs` with a short name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub name: &'static str,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.lhs < self.rhs
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds() { "OK" } else { "FAIL" };
        write!(f, "{}: {} < {} {}", self.name, self.lhs, self.rhs, verdict)
    }
}

/// Feasibility of picking `n` independent greedy coset vectors:
/// `(n-1) 2^k |B(d-1)| < 2^{n-1}`.
pub fn greedy_bound(n: usize, k: usize, d: usize) -> Inequality {
    let ball = hamming_ball(n, d.saturating_sub(1));
    Inequality {
        name: "greedy",
        lhs: BigInt::from(n.saturating_sub(1)) * pow2(k) * ball,
        rhs: pow2(n.saturating_sub(1)),
    }
}

/// One step of the greedy scan with `m` vectors already chosen:
/// `2^m + m 2^k |B(d-1)| < 2^n`.
pub fn greedy_step_bound(n: usize, k: usize, d: usize, m: usize) -> Inequality {
    let ball = hamming_ball(n, d.saturating_sub(1));
    Inequality {
        name: "greedy-step",
        lhs: pow2(m) + BigInt::from(m) * pow2(k) * ball,
        rhs: pow2(n),
    }
}

/// Room for the plain coset vectors added to a twisted CSS code:
/// `(2^{n-k} + (k-1) 2^k) |B(d-1)| < 2^{n-1}`.
pub fn twisted_css_bound(n: usize, k: usize, d: usize) -> Inequality {
    let ball = hamming_ball(n, d.saturating_sub(1));
    let k_minus_one = BigInt::from(k as i64 - 1);
    Inequality {
        name: "twisted-css",
        lhs: (pow2(n.saturating_sub(k)) + k_minus_one * pow2(k)) * ball,
        rhs: pow2(n.saturating_sub(1)),
    }
}

/// Enough cosets of a weakly self-dual `[n,k]` code in its dual to hold
/// `n-k` independent representatives: `2^{n-2k-1} > n-k-1`, compared as
/// `2(n-k-1) < 2^{n-2k}`.
pub fn coset_room_bound(n: usize, k: usize) -> Inequality {
    Inequality {
        name: "coset-room",
        lhs: BigInt::from(2 * (n as i64 - k as i64 - 1)),
        rhs: pow2(n.saturating_sub(2 * k)),
    }
}

/// Greatest `ℓ` with `2^ℓ |B(d-1)| ≤ 2^{n-k}`, or `None` if even `ℓ = 0`
/// fails.
pub fn family_ell(n: usize, k: usize, d: usize) -> Option<usize> {
    let ball = hamming_ball(n, d.saturating_sub(1));
    let quotient = pow2(n.saturating_sub(k)) / ball;
    if quotient.is_zero() {
        None
    } else {
        Some(quotient.bits() as usize - 1)
    }
}

/// `⌈n - 1 - log2(n+1)⌉`, the dimension exponent quoted for the
/// distance-2 repetition-code family. Can exceed [`family_ell`].
pub fn repetition_family_ell(n: usize) -> i64 {
    // ceil(n - 1 - log2(n+1)) = n - 1 - floor(log2(n+1))
    let floor_log = (usize::BITS - 1 - (n + 1).leading_zeros()) as i64;
    n as i64 - 1 - floor_log
}

pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Asymptotic rate `1 - 2 H2(d/n)`.
pub fn entropy_rate_bound(n: usize, d: usize) -> f64 {
    1.0 - 2.0 * binary_entropy(d as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(11, 2), 55);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(hamming_ball(8, 1), BigInt::from(9));
        assert_eq!(hamming_ball(7, 2), BigInt::from(29));
        assert_eq!(hamming_ball(4, 9), BigInt::from(16));
    }

    #[test]
    fn greedy_bound_examples() {
        let b = greedy_bound(8, 1, 2);
        assert_eq!(
            (b.lhs.clone(), b.rhs.clone()),
            (BigInt::from(126), BigInt::from(128))
        );
        assert!(b.holds());
        assert_eq!(b.to_string(), "greedy: 126 < 128 OK");
        let b = greedy_bound(10, 1, 2);
        assert_eq!(
            (b.lhs.clone(), b.rhs.clone()),
            (BigInt::from(198), BigInt::from(512))
        );
        assert!(!greedy_bound(7, 1, 2).holds());
    }

    #[test]
    fn ell_examples() {
        assert_eq!(family_ell(8, 1, 2), Some(3));
        assert_eq!(family_ell(10, 1, 2), Some(5));
        assert_eq!(family_ell(5, 4, 3), None);
        assert_eq!(repetition_family_ell(8), 4);
        assert_eq!(repetition_family_ell(10), 6);
    }

    #[test]
    fn twisted_css_example() {
        // n=7, k=3, d=3: (16 + 2*8) * 29 = 928 vs 64.
        let b = twisted_css_bound(7, 3, 3);
        assert_eq!(b.lhs, BigInt::from(928));
        assert!(!b.holds());
        assert!(twisted_css_bound(17, 6, 2).holds());
        assert!(!coset_room_bound(7, 3).holds());
        assert!(coset_room_bound(17, 6).holds());
        // d = 1 makes the ball a single point.
        assert_eq!(hamming_ball(9, 0), BigInt::from(1));
    }

    #[test]
    fn entropy() {
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-12);
        assert!((entropy_rate_bound(100, 1) - (1.0 - 2.0 * binary_entropy(0.01))).abs() < 1e-12);
    }
}
