use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Polynomial;

/// An integral linear form `a_0 t_0 + ... + a_n t_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t_i - t_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); nvars];
        coeffs[i] += 1;
        coeffs[j] -= 1;
        Self { coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &BigInt {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first variable with a nonzero coefficient.
    pub fn leading_var(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The gcd of the nonzero coefficients; zero for the zero form.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The form divided by its content. The zero form is its own primitive part.
    pub fn primitive_part(&self) -> LinearForm {
        let content = self.content();
        if content.is_zero() {
            return self.clone();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_linear(self)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs == BigInt::from(1) {
                write!(f, "t{i}")?;
            } else {
                write!(f, "{abs}*t{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
