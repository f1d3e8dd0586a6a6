//! Equivariant structure constants `c_{ij}^k` of `P^n` in the Schubert
//! basis, `p_i p_j = Σ_k c_{ij}^k p_k`.
//!
//! Two independent routes compute them:
//!
//! * [`struct_const_closed`]: `c_{ij}^j = p_i(x_j)` and
//!   `c_{ij}^k = ∂_{k-1} ⋯ ∂_{j+1} ∂_j p_i(x_j)` for `j < k <= min(i+j, n)`.
//! * [`struct_consts_oracle`]: localize the product at `x_0, x_1, …, x_n`
//!   and solve the resulting lower-triangular system one fixed point at a
//!   time. No divided differences are involved.
//!
//! Weighted projective space reuses the same constants rescaled by Kawasaki
//! constants, see [`weighted_struct_row`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::canonical::{
    kawasaki_constant, rational_weighted_class, schubert_class, schubert_localization,
};
use crate::error::{check_index, Error, Result};
use crate::gkm::{LocalizedClass, WeightVector};
use crate::polyring::{AlphaPolynomial, LinearForm, Polynomial, RingMode};

fn normalize(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

fn check_degrees(i: usize, j: usize, n: usize) -> Result<()> {
    check_index("degree i", i, n)?;
    check_index("degree j", j, n)
}

/// The closed divided-difference formula. Indices are normalized so that
/// `i <= j`.
pub fn struct_const_closed(i: usize, j: usize, k: usize, n: usize) -> Result<Polynomial> {
    check_degrees(i, j, n)?;
    check_index("degree k", k, n)?;
    let (i, j) = normalize(i, j);
    if k < j || k > (i + j).min(n) {
        return Ok(Polynomial::zero(n + 1));
    }
    let mut c = schubert_localization(i, j, n)?;
    for m in j..k {
        c = c.divided_difference(m)?;
    }
    Ok(c)
}

/// The whole row `(c_{ij}^0, …, c_{ij}^n)` by the closed formula, reusing
/// each step of the `∂` chain.
pub fn struct_const_row_closed(i: usize, j: usize, n: usize) -> Result<Vec<Polynomial>> {
    check_degrees(i, j, n)?;
    let (i, j) = normalize(i, j);
    let mut row = vec![Polynomial::zero(n + 1); n + 1];
    let mut c = schubert_localization(i, j, n)?;
    let top = (i + j).min(n);
    for (k, slot) in row.iter_mut().enumerate().take(top + 1).skip(j) {
        if k > j {
            c = c.divided_difference(k - 1)?;
        }
        *slot = c.clone();
    }
    Ok(row)
}

/// Divides by `p_k(x_k) = Π_{m<k} (t_m - t_k)`, one linear factor at a time.
fn div_by_leading_localization(p: &Polynomial, k: usize, n: usize) -> Result<Polynomial> {
    let mut q = p.clone();
    for m in 0..k {
        let l = LinearForm::difference(n + 1, m, k);
        q = q
            .exact_div_linear(&l, RingMode::Rationals)?
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "triangular solve at x_{k}: numerator not divisible by t{m} - t{k}"
                ))
            })?;
    }
    Ok(q)
}

/// Solves `p_i p_j = Σ_k c^k p_k` by localizing at `x_0, …, x_n` in turn:
/// `c^k = [p_i(x_k) p_j(x_k) - Σ_{m<k} c^m p_m(x_k)] / p_k(x_k)`.
///
/// Returns `n + 1` coefficients. Divisions are exact over the rationals and
/// the result is asserted integral.
pub fn struct_consts_oracle(i: usize, j: usize, n: usize) -> Result<Vec<Polynomial>> {
    check_degrees(i, j, n)?;
    let basis: Vec<LocalizedClass> = (0..=n)
        .map(|k| schubert_class(k, n))
        .collect::<Result<_>>()?;
    let product = basis[i].mul(&basis[j])?;
    let mut coeffs: Vec<Polynomial> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut numer = product.part(k).clone();
        for (m, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                numer = &numer - &(c * basis[m].part(k));
            }
        }
        let c = div_by_leading_localization(&numer, k, n)?;
        if !c.is_integral() {
            return Err(Error::InvariantViolation(format!(
                "oracle coefficient c_{i}{j}^{k} is not integral: {c}"
            )));
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Structure constants of `P^n`, stored for `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    n: usize,
    entries: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl StructureTable {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    fn from_rows(
        n: usize,
        row: impl Fn(usize, usize) -> Result<Vec<Polynomial>> + Sync,
    ) -> Result<Self> {
        let pairs: Vec<(usize, usize)> =
            (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
        let rows: Vec<((usize, usize), Vec<Polynomial>)> = pairs
            .into_par_iter()
            .map(|(i, j)| row(i, j).map(|r| ((i, j), r)))
            .collect::<Result<_>>()?;
        let mut table = Self::empty(n);
        for ((i, j), r) in rows {
            table.insert_row(i, j, r);
        }
        Ok(table)
    }

    /// Every row by the closed divided-difference formula.
    pub fn closed(n: usize) -> Result<Self> {
        Self::from_rows(n, |i, j| struct_const_row_closed(i, j, n))
    }

    /// Every row by the triangular localization solve.
    pub fn oracle(n: usize) -> Result<Self> {
        Self::from_rows(n, |i, j| struct_consts_oracle(i, j, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stores a row `(c^0, …, c^n)`, dropping zero entries.
    pub fn insert_row(&mut self, i: usize, j: usize, row: Vec<Polynomial>) {
        let (i, j) = normalize(i, j);
        for (k, c) in row.into_iter().enumerate() {
            self.insert(i, j, k, c);
        }
    }

    pub fn insert(&mut self, i: usize, j: usize, k: usize, c: Polynomial) {
        let (i, j) = normalize(i, j);
        if c.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), c);
        }
    }

    /// `c_{ij}^k`, with `i > j` looked up as `(j, i)`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Polynomial {
        let (i, j) = normalize(i, j);
        self.entries
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n + 1))
    }

    /// Nonzero entries in `(i, j, k)` order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Polynomial)> {
        self.entries.iter().map(|(&key, c)| (key, c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionVerdict {
    Pass,
    /// The first fixed point where `Σ_k c^k p_k` and `p_i p_j` differ.
    FailsAt(usize),
}

impl ExpansionVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ExpansionVerdict::Pass)
    }
}

/// Checks `Σ_k c_{ij}^k p_k = p_i p_j` at every fixed point.
pub fn verify_expansion(i: usize, j: usize, table: &StructureTable) -> Result<ExpansionVerdict> {
    let n = table.n();
    check_degrees(i, j, n)?;
    let basis: Vec<LocalizedClass> = (0..=n)
        .map(|k| schubert_class(k, n))
        .collect::<Result<_>>()?;
    let lhs = basis[i].mul(&basis[j])?;
    let mut rhs = LocalizedClass::zero(n);
    for (k, p_k) in basis.iter().enumerate() {
        let c = table.get(i, j, k);
        if !c.is_zero() {
            rhs = rhs.add(&p_k.scale_by(&c)?)?;
        }
    }
    Ok(match (0..=n).find(|&x| lhs.part(x) != rhs.part(x)) {
        None => ExpansionVerdict::Pass,
        Some(x) => ExpansionVerdict::FailsAt(x),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub alpha: AlphaPolynomial,
    pub nonneg: bool,
}

impl PositivityCertificate {
    /// `(α-exponents, coefficient)` in descending monomial order.
    pub fn coefficients(&self) -> Vec<(Vec<u32>, BigRational)> {
        self.alpha
            .as_poly()
            .terms()
            .rev()
            .map(|(m, c)| (m.exps().to_vec(), c.clone()))
            .collect()
    }
}

/// Rewrites `c` in the simple roots `α_i = t_i - t_{i+1}` and reports
/// whether every coefficient is nonnegative.
pub fn positivity_certificate(c: &Polynomial) -> Result<PositivityCertificate> {
    let alpha = c.to_alpha_basis().ok_or(Error::NotRepresentable)?;
    let nonneg = alpha.is_nonneg();
    Ok(PositivityCertificate { alpha, nonneg })
}

/// A structure constant of `w^λ P^n` in both coordinate systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedStructConst {
    pub k: usize,
    /// `(κ_i κ_j / κ_k) c_{ij}^k`, the constant for the classes `κ_i p_i`
    /// of `P^n`.
    pub image: Polynomial,
    /// `image` under `t_m -> t_m / λ_m`: the constant for the classes
    /// `p_i^λ` themselves.
    pub native: Polynomial,
}

impl WeightedStructConst {
    pub fn image_integral(&self) -> bool {
        self.image.is_integral()
    }

    pub fn native_integral(&self) -> bool {
        self.native.is_integral()
    }
}

/// All weighted constants `c_{ij}^{k,λ}` for `k = 0..=n`, after verifying
/// both expansion identities exactly:
///
/// * `(κ_i p_i)(κ_j p_j) = Σ_k image_k (κ_k p_k)` in `⊕ Q[t]`, and
/// * `p_i^λ p_j^λ = Σ_k native_k p_k^λ`, with `p_k^λ` the rational weighted
///   classes.
pub fn weighted_struct_row(
    i: usize,
    j: usize,
    lambda: &WeightVector,
) -> Result<Vec<WeightedStructConst>> {
    let n = lambda.n();
    check_degrees(i, j, n)?;
    let (i, j) = normalize(i, j);
    let kappa: Vec<BigInt> = (0..=n)
        .map(|k| kawasaki_constant(k, lambda).map(|c| c.value))
        .collect::<Result<_>>()?;
    let row = struct_const_row_closed(i, j, n)?;

    let ratio = |k: usize| BigRational::new(&kappa[i] * &kappa[j], kappa[k].clone());
    let consts: Vec<WeightedStructConst> = row
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let image = c.scale(&ratio(k));
            let native = image.unscale_vars(lambda.entries())?;
            Ok(WeightedStructConst { k, image, native })
        })
        .collect::<Result<_>>()?;

    let kappa_class = |m: usize| -> Result<LocalizedClass> {
        Ok(schubert_class(m, n)?.scale(&BigRational::from_integer(kappa[m].clone())))
    };
    let lhs = kappa_class(i)?.mul(&kappa_class(j)?)?;
    let mut rhs = LocalizedClass::zero(n);
    for c in &consts {
        if !c.image.is_zero() {
            rhs = rhs.add(&kappa_class(c.k)?.scale_by(&c.image)?)?;
        }
    }
    if lhs != rhs {
        return Err(Error::InvariantViolation(format!(
            "image-coordinate expansion fails for (i, j) = ({i}, {j}), λ = {lambda}"
        )));
    }

    let weighted: Vec<LocalizedClass> = (0..=n)
        .map(|m| rational_weighted_class(m, lambda).map(|w| w.class))
        .collect::<Result<_>>()?;
    let lhs = weighted[i].mul(&weighted[j])?;
    let mut rhs = LocalizedClass::zero(n);
    for c in &consts {
        if !c.native.is_zero() {
            rhs = rhs.add(&weighted[c.k].scale_by(&c.native)?)?;
        }
    }
    if lhs != rhs {
        return Err(Error::InvariantViolation(format!(
            "native-coordinate expansion fails for (i, j) = ({i}, {j}), λ = {lambda}"
        )));
    }
    Ok(consts)
}

/// A single weighted constant; see [`weighted_struct_row`].
pub fn weighted_struct_const(
    i: usize,
    j: usize,
    k: usize,
    lambda: &WeightVector,
) -> Result<WeightedStructConst> {
    check_index("degree k", k, lambda.n())?;
    let mut row = weighted_struct_row(i, j, lambda)?;
    Ok(row.swap_remove(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(s, nvars).unwrap()
    }

    #[test]
    fn closed_examples() {
        for n in 1..5 {
            for j in 0..=n {
                for k in 0..=n {
                    let expected = if k == j {
                        Polynomial::one(n + 1)
                    } else {
                        Polynomial::zero(n + 1)
                    };
                    assert_eq!(struct_const_closed(0, j, k, n).unwrap(), expected);
                }
            }
        }
        assert_eq!(struct_const_closed(1, 1, 1, 2).unwrap(), p("t0 - t1", 3));
        assert_eq!(struct_const_closed(1, 1, 2, 2).unwrap(), p("1", 3));
        assert_eq!(
            struct_const_closed(2, 2, 3, 4).unwrap(),
            p("t0 + t1 - t2 - t3", 5)
        );
        assert_eq!(struct_const_closed(2, 2, 4, 4).unwrap(), p("1", 5));
    }

    #[test]
    fn closed_normalizes_and_validates() {
        assert_eq!(
            struct_const_closed(2, 1, 2, 3).unwrap(),
            struct_const_closed(1, 2, 2, 3).unwrap()
        );
        assert!(struct_const_closed(0, 4, 4, 3).is_err());
        assert!(struct_const_closed(0, 1, 4, 3).is_err());
        assert!(struct_const_closed(1, 1, 0, 3).unwrap().is_zero());
        assert!(struct_const_closed(1, 1, 3, 3).unwrap().is_zero());
    }

    #[test]
    fn oracle_examples() {
        let row = struct_consts_oracle(1, 1, 2).unwrap();
        assert_eq!(row, vec![p("0", 3), p("t0 - t1", 3), p("1", 3)]);

        let row = struct_consts_oracle(0, 2, 3).unwrap();
        assert_eq!(row, vec![p("0", 4), p("0", 4), p("1", 4), p("0", 4)]);

        let n = 3;
        let row = struct_consts_oracle(n, n, n).unwrap();
        for (k, c) in row.iter().enumerate() {
            if k == n {
                assert_eq!(c, &schubert_localization(n, n, n).unwrap());
            } else {
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn table_symmetric_lookup() {
        let t = StructureTable::closed(3).unwrap();
        assert_eq!(t.get(2, 1, 2), t.get(1, 2, 2));
        assert_eq!(t.get(1, 1, 1), p("t0 - t1", 4));
        assert!(t.get(1, 1, 0).is_zero());
        assert!(t.nonzero_entries().all(|((i, j, _), _)| i <= j));
    }

    #[test]
    fn expansion_examples() {
        let t = StructureTable::closed(2).unwrap();
        assert_eq!(verify_expansion(1, 1, &t).unwrap(), ExpansionVerdict::Pass);

        let mut bad = t.clone();
        bad.insert(1, 1, 2, p("2", 3));
        assert_eq!(
            verify_expansion(1, 1, &bad).unwrap(),
            ExpansionVerdict::FailsAt(2)
        );

        for n in 0..=8 {
            let mut identity = StructureTable::empty(n);
            for j in 0..=n {
                identity.insert(0, j, j, Polynomial::one(n + 1));
            }
            for j in 0..=n {
                assert!(verify_expansion(0, j, &identity).unwrap().passed());
            }
        }
    }

    #[test]
    fn positivity_examples() {
        let cert = positivity_certificate(&p("t0 - t1", 3)).unwrap();
        assert_eq!(cert.alpha.to_string(), "a0");
        assert!(cert.nonneg);

        let cert = positivity_certificate(&struct_const_closed(2, 2, 3, 4).unwrap()).unwrap();
        assert_eq!(cert.alpha.to_string(), "a0 + 2*a1 + a2");
        assert!(cert.nonneg);
        assert_eq!(cert.coefficients().len(), 3);

        let q = schubert_localization(2, 3, 3).unwrap();
        let cert = positivity_certificate(&q).unwrap();
        assert_eq!(cert.alpha.0, p("t0 + t1 + t2", 3) * p("t1 + t2", 3));
        assert!(cert.nonneg);

        assert_eq!(
            positivity_certificate(&p("t0", 2)),
            Err(Error::NotRepresentable)
        );
        assert!(!positivity_certificate(&p("t1 - t0", 2)).unwrap().nonneg);
    }

    #[test]
    fn weighted_examples() {
        let unit = WeightVector::unit(3);
        for k in 1..=3 {
            let w = weighted_struct_const(1, 2, k, &unit).unwrap();
            let c = struct_const_closed(1, 2, k, 3).unwrap();
            assert_eq!(w.image, c);
            assert_eq!(w.native, c);
        }

        let lambda = WeightVector::new(vec![1, 2, 2]).unwrap();
        let w = weighted_struct_const(1, 1, 2, &lambda).unwrap();
        assert_eq!(w.image, p("1", 3));
        assert_eq!(w.native, p("1", 3));
        let w = weighted_struct_const(1, 1, 1, &lambda).unwrap();
        assert_eq!(w.image, p("2*t0 - 2*t1", 3));
        assert_eq!(w.native, p("2*t0 - t1", 3));
        assert!(w.image_integral() && w.native_integral());
    }

    #[test]
    fn weighted_row_verifies_for_non_integral_classes() {
        // p_2^λ is not integral for λ = (1, 2, 3); the identities still hold over Q
        let lambda = WeightVector::new(vec![1, 2, 3]).unwrap();
        let row = weighted_struct_row(1, 1, &lambda).unwrap();
        assert_eq!(row.len(), 3);
        assert!(row[0].image.is_zero());
    }
}
