//! Exact sparse multivariate polynomials in `t_0, ..., t_n` over the rationals.
//!
//! A [`Polynomial`] is a map from exponent vectors to nonzero rational
//! coefficients, kept in canonical form at all times: no stored coefficient
//! is zero, so structural equality is polynomial equality. Integer
//! polynomials are the ones for which [`Polynomial::is_integral`] holds.

mod linear;
mod monomial;
mod operators;
mod serial;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use linear::LinearForm;
pub use monomial::Monomial;
pub use operators::AlphaPolynomial;
pub use serial::{coeff_from_str, coeff_to_string, TermJson};

use crate::error::{Error, Result};

/// Coefficient ring used by divisibility tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingMode {
    Integers,
    Rationals,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `t_index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        crate::error::check_index("variable", index, nvars.saturating_sub(1))?;
        if nvars == 0 {
            return Err(Error::IndexOutOfRange {
                what: "variable",
                index,
                bound: "< 0".into(),
            });
        }
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, index), BigRational::one());
        Ok(p)
    }

    pub fn monomial(mono: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(mono.nvars());
        p.add_term(mono, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponent vectors and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let nvars = form.nvars();
        let mut p = Self::zero(nvars);
        for (i, c) in form.coeffs().iter().enumerate() {
            p.add_term(
                Monomial::var(nvars, i),
                BigRational::from_integer(c.clone()),
            );
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The constant coefficient, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => lo.degree() == hi.degree(),
            _ => true,
        }
    }

    /// True iff every term has total degree `d`. The zero polynomial is
    /// homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True iff `t_index` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exp(index) > 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Polynomial {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Sum of all first partial derivatives. Zero exactly when the
    /// polynomial is invariant under `t_i -> t_i + c` for all `i`.
    pub fn partial_derivative_sum(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let mono = m.with_exp(i, e - 1);
                    out.add_term(mono, c * BigRational::from_integer(BigInt::from(e)));
                }
            }
        }
        out
    }

    /// Evaluates the polynomial at the given images of `t_0, ..., t_n`,
    /// which may live in a ring with a different number of variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        for img in images {
            if img.nvars != target {
                return Err(Error::DimensionMismatch {
                    expected: target,
                    found: img.nvars,
                });
            }
        }
        // powers[i][e] = images[i]^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|_| vec![Polynomial::one(target)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Substitutes `t_i -> factors[i] * t_i`.
    pub fn scale_each_var(&self, factors: &[BigRational]) -> Result<Polynomial> {
        if factors.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: factors.len(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (f, &e) in factors.iter().zip(m.exps()) {
                for _ in 0..e {
                    coeff *= f;
                }
            }
            out.add_term(m.clone(), coeff);
        }
        Ok(out)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics if the operands have different numbers of variables.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs)
                    .expect("polynomial operands must share variables")
            }
        }

        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
