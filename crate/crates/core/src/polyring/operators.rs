use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinearForm, Monomial, Polynomial, RingMode};
use crate::error::{check_index, Error, Result};

impl Polynomial {
    /// `s_j p`: exchanges `t_j` and `t_{j+1}`.
    pub fn swap_vars(&self, j: usize) -> Result<Polynomial> {
        self.check_adjacent(j)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.swapped(j, j + 1), c.clone());
        }
        Ok(out)
    }

    /// `∂_j p = (s_j p - p) / (t_j - t_{j+1})`.
    pub fn divided_difference(&self, j: usize) -> Result<Polynomial> {
        self.check_adjacent(j)?;
        let numer = &self.swap_vars(j)? - self;
        let root = LinearForm::difference(self.nvars, j, j + 1);
        numer
            .exact_div_linear(&root, RingMode::Rationals)?
            .ok_or_else(|| {
                Error::InvariantViolation(format!("s_{j}p - p not divisible by t{j} - t{}", j + 1))
            })
    }

    fn check_adjacent(&self, j: usize) -> Result<()> {
        if self.nvars < 2 {
            return Err(Error::IndexOutOfRange {
                what: "swap",
                index: j,
                bound: "absent (fewer than two variables)".into(),
            });
        }
        check_index("swap", j, self.nvars - 2)
    }

    /// Divides by a linear form if the quotient exists in the chosen ring.
    ///
    /// Works in the rational ring by synthetic division in the leading
    /// variable `v` of `l = a t_v + r`; the remainder is free of `t_v` and
    /// must vanish. Integer mode additionally demands an integral quotient.
    pub fn exact_div_linear(&self, l: &LinearForm, mode: RingMode) -> Result<Option<Polynomial>> {
        if l.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: l.nvars(),
            });
        }
        let v = l.leading_var().ok_or(Error::InvalidDivisor)?;
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(self.nvars)));
        }
        let lead_inv = BigRational::from_integer(l.coeff(v).clone()).recip();
        let mut rest_coeffs = l.coeffs().to_vec();
        rest_coeffs[v] = BigInt::zero();
        let rest = Polynomial::from_linear(&LinearForm::new(rest_coeffs));

        // slices[d] = coefficient of t_v^d, as a t_v-free polynomial
        let top = self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0) as usize;
        if top == 0 {
            return Ok(None);
        }
        let mut slices = vec![Polynomial::zero(self.nvars); top + 1];
        for (m, c) in &self.terms {
            slices[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
        }

        // quot[d] = coefficient of t_v^d in the quotient
        let mut quot = vec![Polynomial::zero(self.nvars); top];
        quot[top - 1] = slices[top].scale(&lead_inv);
        for d in (1..top).rev() {
            let numer = &slices[d] - &(&rest * &quot[d]);
            quot[d - 1] = numer.scale(&lead_inv);
        }
        let remainder = &slices[0] - &(&rest * &quot[0]);
        if !remainder.is_zero() {
            return Ok(None);
        }

        let mut q = Polynomial::zero(self.nvars);
        for (d, slice) in quot.into_iter().enumerate() {
            for (m, c) in slice.terms {
                q.add_term(m.with_exp(v, d as u32), c);
            }
        }
        if mode == RingMode::Integers && !q.is_integral() {
            return Ok(None);
        }
        Ok(Some(q))
    }

    /// Substitutes `t_i -> weights[i] * t_i` for positive integer weights.
    pub fn scale_vars(&self, weights: &[i64]) -> Result<Polynomial> {
        let factors = positive_factors(weights)?;
        self.scale_each_var(&factors)
    }

    /// Substitutes `t_i -> t_i / weights[i]` for positive integer weights.
    pub fn unscale_vars(&self, weights: &[i64]) -> Result<Polynomial> {
        let factors: Vec<BigRational> = positive_factors(weights)?
            .into_iter()
            .map(|f| f.recip())
            .collect();
        self.scale_each_var(&factors)
    }

    pub fn is_translation_invariant(&self) -> bool {
        self.partial_derivative_sum().is_zero()
    }

    /// Rewrites a translation-invariant polynomial in the simple roots
    /// `α_i = t_i - t_{i+1}`, via `t_i -> α_i + ... + α_{n-1}`, `t_n -> 0`.
    pub fn to_alpha_basis(&self) -> Option<AlphaPolynomial> {
        if !self.is_translation_invariant() {
            return None;
        }
        let n = self.nvars.checked_sub(1)?;
        let images: Vec<Polynomial> = (0..=n)
            .map(|i| {
                let mut p = Polynomial::zero(n);
                for m in i..n {
                    p.add_term(Monomial::var(n, m), BigRational::one());
                }
                p
            })
            .collect();
        let alpha = self
            .substitute(&images)
            .expect("one image per variable, all in the root ring");
        Some(AlphaPolynomial(alpha))
    }
}

fn positive_factors(weights: &[i64]) -> Result<Vec<BigRational>> {
    weights
        .iter()
        .enumerate()
        .map(|(position, &w)| {
            if w < 1 {
                Err(Error::InvalidWeight { position, value: w })
            } else {
                Ok(BigRational::from_integer(BigInt::from(w)))
            }
        })
        .collect()
}

/// A polynomial in the simple roots `α_0, ..., α_{n-1}`, stored as a
/// polynomial in `n` variables where variable `i` stands for `α_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaPolynomial(pub Polynomial);

impl AlphaPolynomial {
    pub fn as_poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.has_nonneg_coeffs()
    }

    /// Back-substitutes `α_i = t_i - t_{i+1}` into `n + 1` variables.
    pub fn to_t_basis(&self) -> Polynomial {
        let n = self.0.nvars();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::from_linear(&LinearForm::difference(n + 1, i, i + 1)))
            .collect();
        if n == 0 {
            let c = self.0.as_constant().unwrap_or_else(BigRational::zero);
            return Polynomial::constant(1, c);
        }
        self.0
            .substitute(&images)
            .expect("one image per root, all in the t ring")
    }
}

impl fmt::Display for AlphaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_with_prefix(f, "a")
    }
}
