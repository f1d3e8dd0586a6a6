//! GKM data of weighted projective space: fixed points `x_0, ..., x_n`,
//! the edge weight on each one-dimensional orbit, and the divisibility
//! test that cuts the equivariant cohomology out of `⊕ Q[t]` or `⊕ Z[t]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::polyring::{LinearForm, Polynomial, RingMode, TermJson};

macro_rules! positive_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash)]
        pub struct $name(Vec<i64>);

        impl $name {
            pub fn new(entries: Vec<i64>) -> Result<Self> {
                if entries.is_empty() {
                    return Err(Error::IndexOutOfRange {
                        what: "dimension",
                        index: 0,
                        bound: "at least one entry".into(),
                    });
                }
                if let Some((position, &value)) =
                    entries.iter().enumerate().find(|(_, &v)| v < 1)
                {
                    return Err(Error::InvalidWeight { position, value });
                }
                Ok(Self(entries))
            }

            /// `(1, ..., 1)` of length `n + 1`.
            pub fn unit(n: usize) -> Self {
                Self(vec![1; n + 1])
            }

            /// The dimension `n`; the vector has `n + 1` entries.
            pub fn n(&self) -> usize {
                self.0.len() - 1
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn entries(&self) -> &[i64] {
                &self.0
            }

            pub fn get(&self, i: usize) -> i64 {
                self.0[i]
            }

            pub fn is_unit(&self) -> bool {
                self.0.iter().all(|&v| v == 1)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    };
}

positive_vector!(
    /// Weights `λ` of the weighted projective space.
    WeightVector
);
positive_vector!(
    /// Exponents `μ` of the coordinate torus action.
    ActionVector
);

/// `(m/λ_i) μ_i t_i - (m/λ_j) μ_j t_j` with `m = lcm(λ_i, λ_j)`, for `i < j`.
pub fn edge_weight(
    i: usize,
    j: usize,
    lambda: &WeightVector,
    mu: &ActionVector,
) -> Result<LinearForm> {
    if lambda.len() != mu.len() {
        return Err(Error::WeightLengthMismatch {
            lambda: lambda.len(),
            mu: mu.len(),
        });
    }
    let n = lambda.n();
    check_index("fixed point", j, n)?;
    if i >= j {
        return Err(Error::IndexOutOfRange {
            what: "edge start",
            index: i,
            bound: format!("< {j}"),
        });
    }
    let (li, lj) = (BigInt::from(lambda.get(i)), BigInt::from(lambda.get(j)));
    let m = li.lcm(&lj);
    let mut coeffs = vec![BigInt::from(0); n + 1];
    coeffs[i] = &m / &li * mu.get(i);
    coeffs[j] = -(&m / &lj * mu.get(j));
    Ok(LinearForm::new(coeffs))
}

/// The complete graph on the fixed points with its edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmGraph {
    lambda: WeightVector,
    mu: ActionVector,
    // row-major upper triangle, see `slot`
    weights: Vec<LinearForm>,
}

impl GkmGraph {
    pub fn new(lambda: WeightVector, mu: ActionVector) -> Result<Self> {
        if lambda.len() != mu.len() {
            return Err(Error::WeightLengthMismatch {
                lambda: lambda.len(),
                mu: mu.len(),
            });
        }
        let n = lambda.n();
        let mut weights = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..=n {
            for j in i + 1..=n {
                weights.push(edge_weight(i, j, &lambda, &mu)?);
            }
        }
        Ok(Self {
            lambda,
            mu,
            weights,
        })
    }

    /// Ordinary projective space `P^n` with the standard action.
    pub fn unit(n: usize) -> Self {
        Self::new(WeightVector::unit(n), ActionVector::unit(n)).expect("unit weights are valid")
    }

    /// The graph on which integral classes of `w^λ P^n` live: `μ = (1, ..., 1)`.
    pub fn integral(lambda: WeightVector) -> Self {
        let mu = ActionVector::unit(lambda.n());
        Self::new(lambda, mu).expect("matching lengths")
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn lambda(&self) -> &WeightVector {
        &self.lambda
    }

    pub fn mu(&self) -> &ActionVector {
        &self.mu
    }

    /// Whether integer-mode membership models integral equivariant
    /// cohomology; that description holds only for `μ = (1, ..., 1)`.
    pub fn models_integral_cohomology(&self) -> bool {
        self.mu.is_unit()
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        // rows r < i contribute n - r edges each
        i * n - i * i.saturating_sub(1) / 2 + (j - i - 1)
    }

    /// Weight on the orbit joining `x_i` and `x_j`, `i < j`.
    pub fn weight(&self, i: usize, j: usize) -> Result<&LinearForm> {
        check_index("fixed point", j, self.n())?;
        if i >= j {
            return Err(Error::IndexOutOfRange {
                what: "edge start",
                index: i,
                bound: format!("< {j}"),
            });
        }
        Ok(&self.weights[self.slot(i, j)])
    }

    /// All edges `(i, j, weight)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &LinearForm)> {
        let n = self.n();
        (0..=n)
            .flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
            .zip(self.weights.iter())
            .map(|((i, j), w)| (i, j, w))
    }
}

/// An equivariant class given by its localizations `p(x_0), ..., p(x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalizedClass {
    parts: Vec<Polynomial>,
}

impl LocalizedClass {
    pub fn new(parts: Vec<Polynomial>) -> Result<Self> {
        let nvars = parts.len();
        if nvars == 0 {
            return Err(Error::IndexOutOfRange {
                what: "dimension",
                index: 0,
                bound: "at least one fixed point".into(),
            });
        }
        for p in &parts {
            if p.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: p.nvars(),
                });
            }
        }
        Ok(Self { parts })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            parts: vec![Polynomial::zero(n + 1); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Polynomial::one(n + 1))
    }

    /// The class `(c, c, ..., c)`.
    pub fn constant(n: usize, c: Polynomial) -> Self {
        assert_eq!(c.nvars(), n + 1, "constant class needs n + 1 variables");
        Self {
            parts: vec![c; n + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[Polynomial] {
        &self.parts
    }

    pub fn part(&self, k: usize) -> &Polynomial {
        &self.parts[k]
    }

    pub fn into_parts(self) -> Vec<Polynomial> {
        self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Polynomial::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.parts.iter().all(Polynomial::is_integral)
    }

    /// Every nonzero part is homogeneous of polynomial degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.parts.iter().all(|p| p.is_homogeneous_of(d))
    }

    fn check_same(&self, other: &LocalizedClass) -> Result<()> {
        if self.parts.len() != other.parts.len() {
            return Err(Error::DimensionMismatch {
                expected: self.parts.len(),
                found: other.parts.len(),
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &LocalizedClass,
        f: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
    ) -> Result<LocalizedClass> {
        self.check_same(other)?;
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(LocalizedClass { parts })
    }

    pub fn add(&self, other: &LocalizedClass) -> Result<LocalizedClass> {
        self.zip_with(other, Polynomial::checked_add)
    }

    pub fn sub(&self, other: &LocalizedClass) -> Result<LocalizedClass> {
        self.zip_with(other, Polynomial::checked_sub)
    }

    pub fn mul(&self, other: &LocalizedClass) -> Result<LocalizedClass> {
        self.zip_with(other, Polynomial::checked_mul)
    }

    /// Multiplies every localization by the same polynomial, i.e. the
    /// module action of `H_T(pt)`.
    pub fn scale_by(&self, c: &Polynomial) -> Result<LocalizedClass> {
        let parts = self
            .parts
            .iter()
            .map(|p| p.checked_mul(c))
            .collect::<Result<_>>()?;
        Ok(LocalizedClass { parts })
    }

    pub fn scale(&self, c: &BigRational) -> LocalizedClass {
        LocalizedClass {
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Applies a polynomial map to each localization.
    pub fn map_parts(
        &self,
        f: impl Fn(&Polynomial) -> Result<Polynomial>,
    ) -> Result<LocalizedClass> {
        LocalizedClass::new(self.parts.iter().map(f).collect::<Result<_>>()?)
    }

    pub fn to_json(&self) -> LocalizedClassJson {
        LocalizedClassJson {
            n: self.n(),
            parts: self.parts.iter().map(Polynomial::to_json_terms).collect(),
        }
    }

    pub fn from_json(json: &LocalizedClassJson) -> Result<Self> {
        if json.parts.len() != json.n + 1 {
            return Err(Error::Parse(format!(
                "class with n = {} needs {} parts, found {}",
                json.n,
                json.n + 1,
                json.parts.len()
            )));
        }
        let parts = json
            .parts
            .iter()
            .map(|terms| Polynomial::from_json_terms(terms, json.n + 1))
            .collect::<Result<_>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for LocalizedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `{"n": int, "parts": [poly-json, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedClassJson {
    pub n: usize,
    pub parts: Vec<Vec<TermJson>>,
}

/// `{"n": int, "lambda": [ints], "mu": [ints]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
}

impl GraphJson {
    pub fn from_graph(g: &GkmGraph) -> Self {
        Self {
            n: g.n(),
            lambda: g.lambda().entries().to_vec(),
            mu: g.mu().entries().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<GkmGraph> {
        let lambda = WeightVector::new(self.lambda.clone())?;
        if lambda.n() != self.n {
            return Err(Error::Parse(format!(
                "graph with n = {} needs {} weights, found {}",
                self.n,
                self.n + 1,
                lambda.len()
            )));
        }
        GkmGraph::new(lambda, ActionVector::new(self.mu.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Every edge difference is divisible; `quotients` holds
    /// `(i, j, (p(x_i) - p(x_j)) / w_ij)` for each edge.
    Member {
        quotients: Vec<(usize, usize, Polynomial)>,
    },
    /// Integer mode only: the class has a non-integral localization.
    NonIntegralPart { index: usize },
    /// The first edge whose difference is not divisible.
    Violation { i: usize, j: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Tests whether `p(x_i) - p(x_j)` lies in the ideal of the edge weight
/// for every edge, with coefficients in the chosen ring.
pub fn is_gkm_member(
    class: &LocalizedClass,
    graph: &GkmGraph,
    mode: RingMode,
) -> Result<Membership> {
    if class.n() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n() + 1,
            found: class.n() + 1,
        });
    }
    if mode == RingMode::Integers {
        if let Some(index) = class.parts.iter().position(|p| !p.is_integral()) {
            return Ok(Membership::NonIntegralPart { index });
        }
    }
    let mut quotients = Vec::new();
    for (i, j, w) in graph.edges() {
        let diff = &class.parts[i] - &class.parts[j];
        match diff.exact_div_linear(w, mode)? {
            Some(q) => quotients.push((i, j, q)),
            None => return Ok(Membership::Violation { i, j }),
        }
    }
    Ok(Membership::Member { quotients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn p(s: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(s, nvars).unwrap()
    }

    fn lam(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn mu(v: &[i64]) -> ActionVector {
        ActionVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn edge_weight_examples() {
        assert_eq!(
            edge_weight(0, 1, &lam(&[1, 1, 1]), &mu(&[1, 1, 1])).unwrap(),
            LinearForm::from_i64s(&[1, -1, 0])
        );
        assert_eq!(
            edge_weight(0, 1, &lam(&[1, 2]), &mu(&[1, 1])).unwrap(),
            LinearForm::from_i64s(&[2, -1])
        );
        assert_eq!(
            edge_weight(0, 1, &lam(&[2, 3]), &mu(&[2, 3])).unwrap(),
            LinearForm::from_i64s(&[6, -6])
        );
    }

    #[test]
    fn edge_weight_errors() {
        let l = lam(&[1, 1, 1]);
        let m = mu(&[1, 1, 1]);
        assert!(edge_weight(1, 1, &l, &m).is_err());
        assert!(edge_weight(2, 1, &l, &m).is_err());
        assert!(edge_weight(0, 3, &l, &m).is_err());
        assert!(matches!(
            edge_weight(0, 1, &l, &mu(&[1, 1])),
            Err(Error::WeightLengthMismatch { .. })
        ));
    }

    #[test]
    fn weight_vectors_reject_nonpositive() {
        assert_eq!(
            WeightVector::new(vec![1, 0, 2]),
            Err(Error::InvalidWeight {
                position: 1,
                value: 0
            })
        );
        assert!(ActionVector::new(vec![-3]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn graph_lookup_matches_direct_formula() {
        let l = lam(&[3, 1, 4, 1, 5]);
        let m = mu(&[2, 7, 1, 8, 2]);
        let g = GkmGraph::new(l.clone(), m.clone()).unwrap();
        let mut count = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                let w = g.weight(i, j).unwrap();
                assert_eq!(w, &edge_weight(i, j, &l, &m).unwrap());
                count += 1;
            }
        }
        assert_eq!(g.edges().count(), count);
        for (i, j, w) in g.edges() {
            assert_eq!(w, g.weight(i, j).unwrap());
        }
    }

    #[test]
    fn unit_graph_weights_are_root_differences() {
        let g = GkmGraph::unit(4);
        for (i, j, w) in g.edges() {
            assert_eq!(w, &LinearForm::difference(5, i, j));
        }
    }

    #[test]
    fn point_has_no_edges() {
        let g = GkmGraph::unit(0);
        assert_eq!(g.edges().count(), 0);
        let c = LocalizedClass::new(vec![p("t0^3 + 1/2", 1)]).unwrap();
        assert!(is_gkm_member(&c, &g, RingMode::Rationals)
            .unwrap()
            .is_member());
    }

    #[test]
    fn membership_examples() {
        let g = GkmGraph::unit(2);
        let c = LocalizedClass::constant(2, p("t0*t2 - 5", 3));
        assert!(is_gkm_member(&c, &g, RingMode::Integers)
            .unwrap()
            .is_member());

        let c = LocalizedClass::new(vec![p("0", 3), p("t0 - t1", 3), p("t0 - t2", 3)]).unwrap();
        match is_gkm_member(&c, &g, RingMode::Integers).unwrap() {
            Membership::Member { quotients } => {
                assert_eq!(quotients.len(), 3);
                assert_eq!(quotients[0], (0, 1, p("-1", 3)));
                assert_eq!(quotients[2], (1, 2, p("-1", 3)));
            }
            other => panic!("expected member, got {other:?}"),
        }

        let c = LocalizedClass::new(vec![p("0", 3), p("t0", 3), p("0", 3)]).unwrap();
        assert_eq!(
            is_gkm_member(&c, &g, RingMode::Rationals).unwrap(),
            Membership::Violation { i: 0, j: 1 }
        );
    }

    #[test]
    fn integer_mode_requires_integral_parts() {
        let g = GkmGraph::unit(1);
        let c = LocalizedClass::constant(1, p("1/2", 2));
        assert_eq!(
            is_gkm_member(&c, &g, RingMode::Integers).unwrap(),
            Membership::NonIntegralPart { index: 0 }
        );
        assert!(is_gkm_member(&c, &g, RingMode::Rationals)
            .unwrap()
            .is_member());
    }

    #[test]
    fn non_primitive_weight_separates_rings() {
        // weight 2t0 - 2t1: the difference t0 - t1 is a rational but not an integral multiple
        let g = GkmGraph::new(lam(&[1, 1]), mu(&[2, 2])).unwrap();
        let c = LocalizedClass::new(vec![p("t0 - t1", 2), p("0", 2)]).unwrap();
        assert!(is_gkm_member(&c, &g, RingMode::Rationals)
            .unwrap()
            .is_member());
        assert_eq!(
            is_gkm_member(&c, &g, RingMode::Integers).unwrap(),
            Membership::Violation { i: 0, j: 1 }
        );
    }

    #[test]
    fn membership_dimension_mismatch() {
        let g = GkmGraph::unit(2);
        assert!(is_gkm_member(&LocalizedClass::zero(3), &g, RingMode::Rationals).is_err());
    }

    #[test]
    fn class_arith_examples() {
        let a = LocalizedClass::new(vec![p("0", 3), p("t0 - t1", 3), p("t0 - t2", 3)]).unwrap();
        assert_eq!(a.add(&LocalizedClass::zero(2)).unwrap(), a);
        assert_eq!(LocalizedClass::one(2).mul(&a).unwrap(), a);
        let sq = LocalizedClass::new(vec![
            p("0", 3),
            p("t0^2 - 2*t0*t1 + t1^2", 3),
            p("t0^2 - 2*t0*t2 + t2^2", 3),
        ])
        .unwrap();
        assert_eq!(a.mul(&a).unwrap(), sq);
        assert_eq!(a.scale(&rat(0)), LocalizedClass::zero(2));
        assert!(a.mul(&LocalizedClass::one(3)).is_err());
        assert!(a.is_homogeneous_of(1));
        assert!(!sq.is_homogeneous_of(1));
    }

    #[test]
    fn class_json_round_trip() {
        let a = LocalizedClass::new(vec![p("0", 3), p("t0 - 1/2*t1", 3), p("t0 - t2", 3)]).unwrap();
        let json = serde_json::to_string(&a.to_json()).unwrap();
        let back: LocalizedClassJson = serde_json::from_str(&json).unwrap();
        assert_eq!(LocalizedClass::from_json(&back).unwrap(), a);
        let bad = LocalizedClassJson {
            n: 3,
            parts: back.parts.clone(),
        };
        assert!(LocalizedClass::from_json(&bad).is_err());
    }

    #[test]
    fn graph_json() {
        let json: GraphJson =
            serde_json::from_str(r#"{"n":2,"lambda":[1,2,2],"mu":[1,1,1]}"#).unwrap();
        let g = json.to_graph().unwrap();
        assert_eq!(g.weight(1, 2).unwrap(), &LinearForm::from_i64s(&[0, 1, -1]));
        assert_eq!(GraphJson::from_graph(&g), json);
        let bad: GraphJson =
            serde_json::from_str(r#"{"n":3,"lambda":[1,2,2],"mu":[1,1,1]}"#).unwrap();
        assert!(bad.to_graph().is_err());
    }
}
