//! Exact integer and rational helpers for factorial-heavy coefficients.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::scalar::Real;

const FACTORIAL_TABLE_LEN: usize = 171;

fn factorial_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_TABLE_LEN);
        let mut acc = BigInt::one();
        table.push(acc.clone());
        for k in 1..FACTORIAL_TABLE_LEN {
            acc *= k;
            table.push(acc.clone());
        }
        table
    })
}

/// k! as an exact integer.
pub fn factorial(k: u32) -> BigInt {
    match factorial_table().get(k as usize) {
        Some(v) => v.clone(),
        None => {
            (FACTORIAL_TABLE_LEN as u32..=k).fold(factorial_table()[FACTORIAL_TABLE_LEN - 1].clone(), |acc, j| acc * j)
        }
    }
}

/// Rounds an exact rational to the working scalar.
pub fn to_real<T: Real>(q: &BigRational) -> T {
    T::lit(q.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000u64));
        assert_eq!(factorial(172), factorial(171) * 172);
    }

    #[test]
    fn rational_rounding() {
        let q = BigRational::new(factorial(40), factorial(38));
        assert_eq!(to_real::<f64>(&q), 1560.0);
    }
}
