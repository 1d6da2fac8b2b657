use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;

/// A value in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn from_parity(n: usize) -> Sign {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_i64(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i8())
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    /// Multiplies an integer by this sign.
    pub fn apply(self, value: &BigInt) -> BigInt {
        match self {
            Sign::Plus => value.clone(),
            Sign::Minus => -value,
        }
    }

    /// "+" or "−" as drawn on Hasse diagram edges.
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Sign of a permutation given in one-line notation, by inversion parity.
pub fn permutation_sign(word: &[usize]) -> Sign {
    let inversions = word
        .iter()
        .enumerate()
        .map(|(i, a)| word[i + 1..].iter().filter(|b| *b < a).count())
        .sum();
    Sign::from_parity(inversions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[]), Sign::Plus);
        assert_eq!(permutation_sign(&[2, 1]), Sign::Minus);
        assert_eq!(permutation_sign(&[3, 1, 2]), Sign::Plus);
        for n in 0..8usize {
            let rev: Vec<usize> = (1..=n).rev().collect();
            assert_eq!(permutation_sign(&rev), Sign::from_parity(n * n.saturating_sub(1) / 2));
        }
    }

    #[test]
    fn group_law() {
        for a in [Sign::Plus, Sign::Minus] {
            assert_eq!(a * a, Sign::Plus);
            assert_eq!(-(-a), a);
            assert_eq!(a * Sign::Plus, a);
        }
        assert_eq!(Sign::from_parity(0), Sign::Plus);
        assert_eq!(Sign::from_parity(7), Sign::Minus);
        assert_eq!(Sign::from_i64(0), None);
    }
}
