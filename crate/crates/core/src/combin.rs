//! Exact counting helpers.

use num_bigint::BigUint;
use num_traits::One;

/// `n!` for `n <= 34`, the largest that fits a `u128`.
pub fn factorial(n: u32) -> u128 {
    assert!(n <= 34, "{n}! overflows u128");
    (1..=n as u128).product()
}

pub fn big_factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `(Σ parts)! / Π part!` in arbitrary precision.
pub fn big_multinomial(parts: &[usize]) -> BigUint {
    let total: usize = parts.iter().sum();
    let denom = parts
        .iter()
        .fold(BigUint::one(), |acc, &m| acc * big_factorial(m as u32));
    big_factorial(total as u32) / denom
}

/// Multinomial in `u128`, built as a product of binomials so intermediates
/// never exceed the result times the current part. `None` on overflow.
pub fn multinomial(parts: &[usize]) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut filled: u128 = 0;
    for &m in parts {
        for k in 1..=m as u128 {
            filled += 1;
            // acc * filled / k stays integral: acc * C(filled, k) / C(filled-1, k-1)
            acc = acc.checked_mul(filled)? / k;
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(16), 20_922_789_888_000);
        assert_eq!(multinomial(&[2, 2]), Some(6));
        assert_eq!(multinomial(&[4, 4, 4, 4]), Some(63_063_000));
        assert_eq!(multinomial(&[]), Some(1));
        assert_eq!(big_multinomial(&[2, 2, 1, 1]), BigUint::from(180u32));
    }

    #[test]
    fn u128_agrees_with_bigint() {
        let cases: [&[usize]; 5] = [
            &[30],
            &[
                2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
            ],
            &[5, 5, 5, 5, 5, 5],
            &[7, 0, 3],
            &[1; 34],
        ];
        for parts in cases {
            assert_eq!(
                BigUint::from(multinomial(parts).unwrap()),
                big_multinomial(parts),
                "{parts:?}"
            );
        }
    }
}
