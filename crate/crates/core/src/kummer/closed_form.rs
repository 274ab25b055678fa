//! Divisor-sum closed forms for the low-dimensional cases.

use super::int_pow;
use crate::Rational;
use num_bigint::BigInt;

/// `sigma_s(n) = sum_{d | n} d^s`, by trial division up to `sqrt(n)`.
pub fn divisor_sum(n: u64, s: u32) -> BigInt {
    assert!(n >= 1, "divisor sums start at n = 1");
    let mut total = BigInt::from(0);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += int_pow(d, s);
            let other = n / d;
            if other != d {
                total += int_pow(other, s);
            }
        }
        d += 1;
    }
    total
}

/// Abelian surface, `Y` a point: `n^3 sigma_1(n)`.
pub fn closed_form_g2(n: u64) -> BigInt {
    int_pow(n, 3) * divisor_sum(n, 1)
}

/// Elliptic curve times a curve `Y`: `chi(Y) n sigma_1(n)`.
pub fn closed_form_g1r1(chi_y: i64, n: u64) -> BigInt {
    BigInt::from(chi_y) * BigInt::from(n) * divisor_sum(n, 1)
}

/// Total dimension three (`g + r = 3`): `chi(Y) n^{2g-1} sigma_2(n)`.
pub fn closed_form_dim3(g: u32, chi_y: i64, n: u64) -> BigInt {
    assert!(g >= 1);
    BigInt::from(chi_y) * int_pow(n, 2 * g - 1) * divisor_sum(n, 2)
}

/// Degree-zero Donaldson-Thomas invariant of an abelian threefold,
/// `(-1)^{n-1} sigma_2(n) / n`.
pub fn dt_degree_zero(n: u64) -> Rational {
    let sign = if n % 2 == 1 { 1 } else { -1 };
    Rational::new(divisor_sum(n, 2) * sign, BigInt::from(n))
}

/// `(-1)^{n-1} chi(K_n) / n^6`, the same invariant read off an Euler
/// characteristic computed for `g = 3`, `Y` a point.
pub fn dt_from_euler(n: u64, chi_kn: &BigInt) -> Rational {
    let v = Rational::new(chi_kn.clone(), int_pow(n, 6));
    if n % 2 == 1 {
        v
    } else {
        -v
    }
}
