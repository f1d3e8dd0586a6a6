//! Canonical classes: the Schubert classes `p_i` of `P^n`, the Kawasaki
//! constants `κ_i^λ`, and the weighted classes `p_i^λ` whose pullback to
//! `P^n` is `κ_i^λ p_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::gkm::{
    is_gkm_member, GkmGraph, LocalizedClass, LocalizedClassJson, Membership, WeightVector,
};
use crate::polyring::{coeff_to_string, LinearForm, Monomial, Polynomial, RingMode};

/// `Π_{j<i} (t_j - t_k)` in `n + 1` variables.
fn root_product(i: usize, k: usize, n: usize) -> Polynomial {
    (0..i).fold(Polynomial::one(n + 1), |acc, j| {
        &acc * &Polynomial::from_linear(&LinearForm::difference(n + 1, j, k))
    })
}

/// The Schubert class `p_i` of `P^n`: `p_i(x_k) = Π_{j<i} (t_j - t_k)` for
/// `k >= i` and zero below.
pub fn schubert_class(i: usize, n: usize) -> Result<LocalizedClass> {
    check_index("degree", i, n)?;
    let parts = (0..=n)
        .map(|k| {
            if k < i {
                Polynomial::zero(n + 1)
            } else {
                root_product(i, k, n)
            }
        })
        .collect();
    LocalizedClass::new(parts)
}

/// `p_i(x_k)` without building the whole class.
pub fn schubert_localization(i: usize, k: usize, n: usize) -> Result<Polynomial> {
    check_index("degree", i, n)?;
    check_index("fixed point", k, n)?;
    Ok(if k < i {
        Polynomial::zero(n + 1)
    } else {
        root_product(i, k, n)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KawasakiConstant {
    pub degree: usize,
    pub value: BigInt,
}

/// Calls `f` on every `size`-subset of `0..len`, in lexicographic order.
fn for_each_subset(len: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size > len {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        // advance the rightmost index that still has room
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < len - size + p) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// `κ_i^λ = lcm { λ_{j_0}⋯λ_{j_i} / gcd(λ_{j_0}, …, λ_{j_i}) }` over all
/// `(i+1)`-subsets `j_0 < ⋯ < j_i` of `0..=n`.
pub fn kawasaki_constant(i: usize, lambda: &WeightVector) -> Result<KawasakiConstant> {
    check_index("degree", i, lambda.n())?;
    let weights: Vec<BigInt> = lambda.entries().iter().map(|&w| BigInt::from(w)).collect();
    let mut value = BigInt::one();
    for_each_subset(weights.len(), i + 1, |subset| {
        let mut prod = BigInt::one();
        let mut gcd = BigInt::zero();
        for &s in subset {
            prod *= &weights[s];
            gcd = gcd.gcd(&weights[s]);
        }
        value = value.lcm(&(prod / gcd));
    });
    Ok(KawasakiConstant { degree: i, value })
}

pub fn kawasaki_constants(lambda: &WeightVector) -> Vec<KawasakiConstant> {
    (0..=lambda.n())
        .map(|i| kawasaki_constant(i, lambda).expect("degree within range"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCanonicalClass {
    pub degree: usize,
    pub lambda: WeightVector,
    pub kappa: BigInt,
    pub class: LocalizedClass,
}

/// `{"i": int, "lambda": [ints], "kappa": "int", "class": {...}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedClassJson {
    pub i: usize,
    pub lambda: Vec<i64>,
    pub kappa: String,
    pub class: LocalizedClassJson,
}

impl WeightedCanonicalClass {
    pub fn to_json(&self) -> WeightedClassJson {
        WeightedClassJson {
            i: self.degree,
            lambda: self.lambda.entries().to_vec(),
            kappa: self.kappa.to_string(),
            class: self.class.to_json(),
        }
    }
}

/// The class `κ_i^λ Π_{j<i} (t_j/λ_j - t_k/λ_k)` at each `x_k`, `k >= i`,
/// over the rationals and without an integrality check.
///
/// Its pullback under `t_m -> λ_m t_m` is `κ_i^λ p_i` for every `λ`, but its
/// coefficients need not be integers: the `t_k^i` coefficient is
/// `±κ_i^λ / λ_k^i`.
pub fn rational_weighted_class(i: usize, lambda: &WeightVector) -> Result<WeightedCanonicalClass> {
    let n = lambda.n();
    check_index("degree", i, n)?;
    let kappa = kawasaki_constant(i, lambda)?.value;
    let class = unit_weighted_product(i, lambda).scale(&BigRational::from_integer(kappa.clone()));
    Ok(WeightedCanonicalClass {
        degree: i,
        lambda: lambda.clone(),
        kappa,
        class,
    })
}

/// `Π_{j<i} (t_j/λ_j - t_k/λ_k)` at each `x_k`, `k >= i`; zero below.
fn unit_weighted_product(i: usize, lambda: &WeightVector) -> LocalizedClass {
    let n = lambda.n();
    let inv: Vec<BigRational> = lambda
        .entries()
        .iter()
        .map(|&w| BigRational::new(BigInt::one(), BigInt::from(w)))
        .collect();
    let parts = (0..=n)
        .map(|k| {
            if k < i {
                return Polynomial::zero(n + 1);
            }
            (0..i).fold(Polynomial::one(n + 1), |acc, j| {
                let mut factor = Polynomial::zero(n + 1);
                factor.add_term(Monomial::var(n + 1, j), inv[j].clone());
                factor.add_term(Monomial::var(n + 1, k), -inv[k].clone());
                &acc * &factor
            })
        })
        .collect();
    LocalizedClass::new(parts).expect("n + 1 parts in n + 1 variables")
}

/// The integral canonical class `p_i^λ = κ_i^λ Π_{j<i} (t_j/λ_j - t_k/λ_k)`,
/// certified integral.
///
/// Fails with [`Error::InvariantViolation`] when the rational class has a
/// non-integer coefficient, e.g. `λ = (1, 2, 3)`, `i = 2`.
pub fn weighted_canonical_class(i: usize, lambda: &WeightVector) -> Result<WeightedCanonicalClass> {
    let w = rational_weighted_class(i, lambda)?;
    if let Some(k) = w.class.parts().iter().position(|p| !p.is_integral()) {
        return Err(Error::InvariantViolation(format!(
            "weighted canonical class p_{i} for λ = {lambda} with κ = {} is not integral at x_{k}: {}",
            w.kappa,
            w.class.part(k)
        )));
    }
    Ok(w)
}

/// Smallest positive integer `c` such that `c Π_{j<i} (t_j/λ_j - t_k/λ_k)`
/// is integral at every fixed point and passes integer-mode membership on
/// the `μ = (1, ..., 1)` graph.
pub fn minimal_integral_multiple(i: usize, lambda: &WeightVector) -> Result<BigInt> {
    check_index("degree", i, lambda.n())?;
    let base = unit_weighted_product(i, lambda);
    let graph = GkmGraph::integral(lambda.clone());
    let mut denoms = BigInt::one();
    let mut absorb = |p: &Polynomial| {
        for (_, c) in p.terms() {
            denoms = denoms.lcm(c.denom());
        }
    };
    base.parts().iter().for_each(&mut absorb);
    match is_gkm_member(&base, &graph, RingMode::Rationals)? {
        Membership::Member { quotients } => quotients.iter().for_each(|(_, _, q)| absorb(q)),
        other => {
            return Err(Error::InvariantViolation(format!(
                "weighted product class of degree {i} fails rational membership for λ = {lambda}: {other:?}"
            )))
        }
    }
    Ok(denoms)
}

/// The scalar `r` with `p_i^λ(x_i) = r Π_{j<i} w_{ji}` on the `μ = (1,…,1)`
/// graph: `κ_i^λ / Π_{j<i} lcm(λ_j, λ_i)`. Not always an integer.
pub fn weighted_leading_multiplier(i: usize, lambda: &WeightVector) -> Result<BigRational> {
    let kappa = kawasaki_constant(i, lambda)?.value;
    let li = BigInt::from(lambda.get(i));
    let denom = (0..i).fold(BigInt::one(), |acc, j| {
        acc * BigInt::from(lambda.get(j)).lcm(&li)
    });
    Ok(BigRational::new(kappa, denom))
}

/// Per-axiom outcome of [`verify_canonical_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Axiom 2: every localization is homogeneous of degree `i`.
    pub homogeneous: bool,
    /// Axiom 3: `p(x_j) = 0` for `j < i`.
    pub vanishing: bool,
    /// The scalar `c` with `p(x_i) = c Π_{j<i} w_{ji}`, if one exists.
    pub multiplier: Option<BigRational>,
}

impl AxiomReport {
    /// Axiom 1′: `p(x_i)` is a nonzero integer multiple of the product of
    /// the incoming edge weights.
    pub fn leading_integral(&self) -> bool {
        self.multiplier
            .as_ref()
            .is_some_and(|c| !c.is_zero() && c.is_integer())
    }

    /// Axiom 1′ relaxed to a nonzero rational multiple.
    pub fn leading_proportional(&self) -> bool {
        self.multiplier.as_ref().is_some_and(|c| !c.is_zero())
    }

    pub fn all_pass(&self) -> bool {
        self.homogeneous && self.vanishing && self.leading_integral()
    }

    pub fn multiplier_string(&self) -> String {
        self.multiplier
            .as_ref()
            .map(coeff_to_string)
            .unwrap_or_else(|| "none".into())
    }
}

/// Checks the canonical-class axioms for a degree-`i` class against `graph`.
pub fn verify_canonical_axioms(
    class: &LocalizedClass,
    i: usize,
    graph: &GkmGraph,
) -> Result<AxiomReport> {
    let n = graph.n();
    if class.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: class.n() + 1,
        });
    }
    check_index("degree", i, n)?;
    let homogeneous = class.is_homogeneous_of(i as u32);
    let vanishing = class.parts()[..i].iter().all(Polynomial::is_zero);

    let mut target = Polynomial::one(n + 1);
    for j in 0..i {
        target = &target * &graph.weight(j, i)?.to_polynomial();
    }
    let leading = class.part(i);
    let (tm, tc) = target
        .leading_term()
        .expect("product of nonzero edge weights is nonzero");
    let c = leading.coeff(tm) / tc;
    let multiplier = (target.scale(&c) == *leading).then_some(c);

    Ok(AxiomReport {
        homogeneous,
        vanishing,
        multiplier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::ActionVector;
    use crate::polyring::rat;

    fn p(s: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(s, nvars).unwrap()
    }

    fn lam(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn class(parts: &[&str]) -> LocalizedClass {
        let nvars = parts.len();
        LocalizedClass::new(parts.iter().map(|s| p(s, nvars)).collect()).unwrap()
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(schubert_class(0, 3).unwrap(), LocalizedClass::one(3));
        assert_eq!(
            schubert_class(1, 2).unwrap(),
            class(&["0", "t0 - t1", "t0 - t2"])
        );
        assert_eq!(
            schubert_class(2, 2).unwrap(),
            class(&["0", "0", "t0*t1 - t0*t2 - t1*t2 + t2^2"])
        );
        assert!(schubert_class(3, 2).is_err());
    }

    #[test]
    fn schubert_localization_is_substitution() {
        // p_i(x_k) is p_i(x_i) with t_i replaced by t_k
        let n = 5;
        for i in 0..=n {
            let lead = schubert_localization(i, i, n).unwrap();
            for k in i + 1..=n {
                let mut images: Vec<Polynomial> = (0..=n)
                    .map(|m| Polynomial::var(n + 1, m).unwrap())
                    .collect();
                images[i] = Polynomial::var(n + 1, k).unwrap();
                assert_eq!(
                    lead.substitute(&images).unwrap(),
                    schubert_localization(i, k, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn subset_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_subset(3, 3, |_| count += 1);
        assert_eq!(count, 1);
        for_each_subset(2, 3, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn kawasaki_examples() {
        for i in 0..4 {
            assert_eq!(
                kawasaki_constant(i, &lam(&[1, 1, 1, 1])).unwrap().value,
                BigInt::one()
            );
        }
        assert_eq!(
            kawasaki_constant(1, &lam(&[1, 2, 3])).unwrap().value,
            BigInt::from(6)
        );
        assert_eq!(
            kawasaki_constant(1, &lam(&[2, 4])).unwrap().value,
            BigInt::from(4)
        );
        assert_eq!(
            kawasaki_constant(0, &lam(&[2, 4])).unwrap().value,
            BigInt::one()
        );
        assert!(kawasaki_constant(2, &lam(&[2, 4])).is_err());
        let all: Vec<BigInt> = kawasaki_constants(&lam(&[1, 2, 3]))
            .into_iter()
            .map(|k| k.value)
            .collect();
        assert_eq!(all, vec![BigInt::from(1), BigInt::from(6), BigInt::from(6)]);
    }

    #[test]
    fn weighted_examples() {
        for i in 0..=3 {
            let w = weighted_canonical_class(i, &WeightVector::unit(3)).unwrap();
            assert_eq!(w.class, schubert_class(i, 3).unwrap());
            assert_eq!(w.kappa, BigInt::one());
        }
        let w = weighted_canonical_class(1, &lam(&[1, 2, 2])).unwrap();
        assert_eq!(w.kappa, BigInt::from(2));
        assert_eq!(w.class, class(&["0", "2*t0 - t1", "2*t0 - t2"]));
        let w = weighted_canonical_class(2, &lam(&[1, 2, 2])).unwrap();
        assert_eq!(w.kappa, BigInt::from(4));
        assert_eq!(
            w.class,
            class(&["0", "0", "2*t0*t1 - 2*t0*t2 - t1*t2 + t2^2"])
        );
    }

    #[test]
    fn weighted_class_json_shape() {
        let w = weighted_canonical_class(1, &lam(&[1, 2])).unwrap();
        let json = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"i":1,"lambda":[1,2],"kappa":"2","class":{"n":1,"parts":[[],[{"coeff":"2","exps":[1,0]},{"coeff":"-1","exps":[0,1]}]]}}"#
        );
    }

    #[test]
    fn weighted_class_is_integral_member_but_not_for_mu_equal_lambda() {
        let l = lam(&[1, 2]);
        let w = weighted_canonical_class(1, &l).unwrap();
        let integral = GkmGraph::integral(l.clone());
        assert!(is_gkm_member(&w.class, &integral, RingMode::Integers)
            .unwrap()
            .is_member());
        let mu = ActionVector::new(vec![1, 2]).unwrap();
        let twisted = GkmGraph::new(l, mu).unwrap();
        assert!(!is_gkm_member(&w.class, &twisted, RingMode::Integers)
            .unwrap()
            .is_member());
    }

    #[test]
    fn axiom_examples() {
        let g = GkmGraph::unit(3);
        for i in 0..=3 {
            let r = verify_canonical_axioms(&schubert_class(i, 3).unwrap(), i, &g).unwrap();
            assert!(r.all_pass());
            assert_eq!(r.multiplier, Some(rat(1)));
        }

        let r = verify_canonical_axioms(&LocalizedClass::zero(3), 2, &g).unwrap();
        assert!(r.homogeneous && r.vanishing);
        assert!(!r.leading_integral());
        assert_eq!(r.multiplier, Some(rat(0)));

        let g2 = GkmGraph::unit(2);
        let doubled = class(&["0", "2*t0 - 2*t1", "2*t0 - 2*t2"]);
        let r = verify_canonical_axioms(&doubled, 1, &g2).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.multiplier, Some(rat(2)));
    }

    #[test]
    fn axiom_failures_are_reported_separately() {
        let g = GkmGraph::unit(2);
        // not vanishing at x_0, wrong leading polynomial
        let c = class(&["t0", "t0 + t1", "t2"]);
        let r = verify_canonical_axioms(&c, 1, &g).unwrap();
        assert!(r.homogeneous);
        assert!(!r.vanishing);
        assert_eq!(r.multiplier, None);
        assert!(verify_canonical_axioms(&c, 3, &g).is_err());
        assert!(verify_canonical_axioms(&LocalizedClass::zero(1), 0, &g).is_err());
    }

    #[test]
    fn weighted_leading_multiplier_can_be_fractional() {
        let l = lam(&[1, 2, 3]);
        let w = rational_weighted_class(2, &l).unwrap();
        let r = verify_canonical_axioms(&w.class, 2, &GkmGraph::integral(l.clone())).unwrap();
        let expected = weighted_leading_multiplier(2, &l).unwrap();
        assert_eq!(expected, BigRational::new(1.into(), 3.into()));
        assert_eq!(r.multiplier, Some(expected));
        assert!(r.leading_proportional() && !r.leading_integral());
    }

    #[test]
    fn weighted_class_integrality_can_fail() {
        for l in [lam(&[1, 2, 3]), lam(&[1, 1, 2])] {
            let err = weighted_canonical_class(2, &l).unwrap_err();
            assert!(matches!(err, Error::InvariantViolation(_)), "{err}");
            let raw = rational_weighted_class(2, &l).unwrap();
            assert!(!raw.class.is_integral());
        }
        assert!(weighted_canonical_class(1, &lam(&[1, 2, 3])).is_ok());
    }

    #[test]
    fn minimal_multiple_examples() {
        // unit weights: the Schubert class itself
        assert_eq!(
            minimal_integral_multiple(2, &WeightVector::unit(3)).unwrap(),
            BigInt::one()
        );
        // κ suffices here
        assert_eq!(
            minimal_integral_multiple(2, &lam(&[1, 2, 2])).unwrap(),
            BigInt::from(4)
        );
        // (1,1,2), i = 2: (t0 - t2/2)(t1 - t2/2) has t2^2 / 4, κ = 2
        assert_eq!(
            minimal_integral_multiple(2, &lam(&[1, 1, 2])).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            kawasaki_constant(2, &lam(&[1, 1, 2])).unwrap().value,
            BigInt::from(2)
        );
    }

    #[test]
    fn rational_class_pulls_back_to_kappa_schubert() {
        let l = lam(&[1, 2, 3]);
        for i in 0..=2 {
            let w = rational_weighted_class(i, &l).unwrap();
            let pulled = w.class.map_parts(|p| p.scale_vars(l.entries())).unwrap();
            let expected = schubert_class(i, 2)
                .unwrap()
                .scale(&BigRational::from_integer(w.kappa.clone()));
            assert_eq!(pulled, expected);
        }
    }
}
