//! End-to-end self-checks at a chosen scale, used by the `verify` command.
//!
//! Each check recomputes a family of results from scratch and compares two
//! independent routes (or a result and its defining property) exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{
    kawasaki_constant, kawasaki_constants, minimal_integral_multiple, rational_weighted_class,
    schubert_class, verify_canonical_axioms, weighted_canonical_class, weighted_leading_multiplier,
};
use crate::error::Result;
use crate::gkm::{is_gkm_member, GkmGraph, LocalizedClass, WeightVector};
use crate::polyring::{Polynomial, RingMode};
use crate::structconst::{
    positivity_certificate, verify_expansion, weighted_struct_row, StructureTable,
};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest `n` for the `P^n` table checks.
    pub max_n: usize,
    /// Random trials for the property checks.
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 8,
            trials: 500,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Every weight vector of length `n + 1` with entries in `1..=max_entry`,
/// in lexicographic order.
pub fn all_weight_vectors(n: usize, max_entry: i64) -> Vec<WeightVector> {
    let mut out = Vec::new();
    let mut cur = vec![1i64; n + 1];
    loop {
        out.push(WeightVector::new(cur.clone()).expect("entries are positive"));
        let Some(pos) = (0..=n).rev().find(|&p| cur[p] < max_entry) else {
            return out;
        };
        cur[pos] += 1;
        for v in &mut cur[pos + 1..] {
            *v = 1;
        }
    }
}

pub fn random_weight_vector(rng: &mut impl Rng, n: usize, max_entry: i64) -> WeightVector {
    WeightVector::new((0..=n).map(|_| rng.gen_range(1..=max_entry)).collect())
        .expect("entries are positive")
}

/// A random integer polynomial with at most `max_terms` terms of degree at
/// most `max_degree`.
pub fn random_polynomial(
    rng: &mut impl Rng,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let count = rng.gen_range(0..=max_terms);
    let terms = (0..count).map(|_| {
        let deg = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; nvars];
        for _ in 0..deg {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let c = rng.gen_range(-9i64..=9);
        (exps, BigRational::from_integer(BigInt::from(c)))
    });
    Polynomial::from_terms(nvars, terms).expect("exponent vectors have nvars entries")
}

/// `Σ_i q_i p_i` with random integer polynomial coefficients.
pub fn random_schubert_combination(rng: &mut impl Rng, n: usize) -> Result<LocalizedClass> {
    let mut out = LocalizedClass::zero(n);
    for i in 0..=n {
        let q = random_polynomial(rng, n + 1, 2, 3);
        out = out.add(&schubert_class(i, n)?.scale_by(&q)?)?;
    }
    Ok(out)
}

fn outcome(id: usize, name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        id,
        name,
        passed,
        detail,
    }
}

fn check_tables(cfg: &VerifyConfig) -> Result<(CheckOutcome, CheckOutcome, CheckOutcome)> {
    let mut mismatches = 0usize;
    let mut expansion_failures = 0usize;
    let mut positivity_failures = 0usize;
    let mut entries = 0usize;
    let mut rows = 0usize;
    for n in 0..=cfg.max_n {
        let closed = StructureTable::closed(n)?;
        let oracle = StructureTable::oracle(n)?;
        for i in 0..=n {
            for j in i..=n {
                rows += 1;
                for k in 0..=n {
                    entries += 1;
                    if closed.get(i, j, k) != oracle.get(i, j, k) {
                        mismatches += 1;
                    }
                }
                if !verify_expansion(i, j, &closed)?.passed() {
                    expansion_failures += 1;
                }
            }
        }
        for (_, c) in closed.nonzero_entries() {
            match positivity_certificate(c) {
                Ok(cert) if cert.nonneg => {}
                _ => positivity_failures += 1,
            }
        }
    }
    Ok((
        outcome(
            1,
            "oracle equivalence",
            mismatches == 0,
            format!(
                "{entries} entries, {mismatches} mismatches, n <= {}",
                cfg.max_n
            ),
        ),
        outcome(
            2,
            "expansion identity",
            expansion_failures == 0,
            format!("{rows} rows, {expansion_failures} failures"),
        ),
        outcome(
            4,
            "alpha positivity",
            positivity_failures == 0,
            format!("{positivity_failures} entries not nonnegative"),
        ),
    ))
}

fn check_named_values(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    use crate::structconst::struct_const_closed;
    let p = |s: &str, nvars: usize| Polynomial::parse(s, nvars);
    let mut ok = struct_const_closed(1, 1, 1, 2)? == p("t0 - t1", 3)?
        && struct_const_closed(1, 1, 2, 2)? == p("1", 3)?
        && struct_const_closed(2, 2, 3, 4)? == p("t0 + t1 - t2 - t3", 5)?
        && struct_const_closed(2, 2, 4, 4)? == p("1", 5)?;
    ok &= positivity_certificate(&struct_const_closed(2, 2, 3, 4)?)?
        .alpha
        .to_string()
        == "a0 + 2*a1 + a2";
    let mut monk = 0;
    for n in 1..=cfg.max_n.max(1) {
        for j in 0..n {
            let first = p(&format!("t0 - t{j}"), n + 1)?;
            ok &= struct_const_closed(1, j, j, n)? == first;
            ok &= struct_const_closed(1, j, j + 1, n)?.is_one();
            monk += 1;
        }
    }
    Ok(outcome(
        3,
        "named values",
        ok,
        format!("4 named constants, {monk} Chevalley-Monk pairs"),
    ))
}

fn check_kawasaki(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let named: Vec<BigInt> = kawasaki_constants(&WeightVector::new(vec![1, 2, 3])?)
        .into_iter()
        .map(|k| k.value)
        .collect();
    let mut ok = named == [1, 6, 6].map(BigInt::from);
    ok &= (0..=6).all(|n| {
        kawasaki_constants(&WeightVector::unit(n))
            .iter()
            .all(|k| k.value == BigInt::from(1))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut violations = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let lambda = random_weight_vector(&mut rng, n, 30);
        // κ_0 = 1, so the lemma is about degrees i >= 1
        for i in 1..=n {
            let kappa = kawasaki_constant(i, &lambda)?.value;
            for j in 0..=n {
                for k in 0..=n {
                    let m = BigInt::from(lambda.get(j)).lcm(&BigInt::from(lambda.get(k)));
                    if !kappa.is_multiple_of(&m) {
                        violations += 1;
                    }
                }
            }
        }
    }
    ok &= violations == 0;
    Ok(outcome(
        5,
        "Kawasaki constants",
        ok,
        format!("κ(1,2,3) = {named:?}, lcm divisibility violations over 300 random λ (i >= 1): {violations}"),
    ))
}

/// The λ sample for weighted canonical classes: all vectors with entries
/// `<= 4` for `1 <= n <= max_n`, plus random ones with entries `<= 10`.
pub fn weighted_class_sample(max_n: usize, extra: usize, seed: u64) -> Vec<WeightVector> {
    let mut out: Vec<WeightVector> = (1..=max_n).flat_map(|n| all_weight_vectors(n, 4)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        let n = rng.gen_range(1..=max_n.max(1));
        out.push(random_weight_vector(&mut rng, n, 10));
    }
    out
}

/// Counts for the weighted canonical class checks over a λ sample.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedClassTally {
    pub cases: usize,
    pub integral: usize,
    pub axioms_rational: usize,
    pub axioms_integral: usize,
    pub gkm_integral: usize,
    pub pullback: usize,
    pub kappa_sufficient: usize,
    pub first_failure: Option<String>,
}

impl WeightedClassTally {
    pub fn all_pass(&self) -> bool {
        let c = self.cases;
        self.integral == c
            && self.axioms_rational == c
            && self.axioms_integral == c
            && self.gkm_integral == c
            && self.pullback == c
    }
}

pub fn tally_weighted_classes(sample: &[WeightVector]) -> Result<WeightedClassTally> {
    let mut t = WeightedClassTally::default();
    for lambda in sample {
        let n = lambda.n();
        let graph = GkmGraph::integral(lambda.clone());
        for i in 0..=n {
            t.cases += 1;
            let raw = rational_weighted_class(i, lambda)?;
            let certified = weighted_canonical_class(i, lambda);
            let integral = certified.is_ok();
            let report = verify_canonical_axioms(&raw.class, i, &graph)?;
            let expected = weighted_leading_multiplier(i, lambda)?;
            let axioms_rational = report.homogeneous
                && report.vanishing
                && report.multiplier.as_ref() == Some(&expected);
            let axioms_integral = axioms_rational && report.leading_integral();
            let gkm = is_gkm_member(&raw.class, &graph, RingMode::Integers)?.is_member();
            let pulled = raw.class.map_parts(|p| p.scale_vars(lambda.entries()))?;
            let target = schubert_class(i, n)?.scale(&BigRational::from_integer(raw.kappa.clone()));
            let pullback = pulled == target;
            let minimal = minimal_integral_multiple(i, lambda)?;

            t.integral += integral as usize;
            t.axioms_rational += axioms_rational as usize;
            t.axioms_integral += axioms_integral as usize;
            t.gkm_integral += gkm as usize;
            t.pullback += pullback as usize;
            t.kappa_sufficient += raw.kappa.is_multiple_of(&minimal) as usize;
            if t.first_failure.is_none() && !(integral && axioms_integral && gkm && pullback) {
                t.first_failure = Some(format!(
                    "λ = {lambda}, i = {i}: κ = {}, minimal integral multiple = {minimal}, leading multiplier = {}",
                    raw.kappa,
                    report.multiplier_string()
                ));
            }
        }
    }
    Ok(t)
}

fn check_weighted_classes(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let sample = weighted_class_sample(cfg.max_n.min(4), 500, cfg.seed);
    let t = tally_weighted_classes(&sample)?;
    let mut detail = format!(
        "{} (λ, i) cases: integral {}, axioms (rational multiplier) {}, axioms (integer multiplier) {}, integer GKM {}, pullback {}, κ sufficient {}",
        t.cases, t.integral, t.axioms_rational, t.axioms_integral, t.gkm_integral, t.pullback, t.kappa_sufficient
    );
    if let Some(f) = &t.first_failure {
        detail.push_str(&format!("; first failure: {f}"));
    }
    Ok(outcome(
        6,
        "weighted canonical classes",
        t.all_pass(),
        detail,
    ))
}

/// The λ sample for weighted structure constants: every λ with entries
/// `<= max_entry` for `n <= 2`, plus `per_n` random ones for each larger `n`.
pub fn weighted_struct_sample(
    max_n: usize,
    max_entry: i64,
    per_n: usize,
    seed: u64,
) -> Vec<WeightVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 1..=max_n {
        if n <= 2 {
            out.extend(all_weight_vectors(n, max_entry));
        } else {
            out.extend((0..per_n).map(|_| random_weight_vector(&mut rng, n, max_entry)));
        }
    }
    out
}

fn check_weighted_struct(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let sample = weighted_struct_sample(cfg.max_n.min(5), 6, 20, cfg.seed);
    let mut rows = 0;
    let mut failures = 0;
    for lambda in &sample {
        let n = lambda.n();
        for i in 0..=n {
            for j in i..=n {
                rows += 1;
                if weighted_struct_row(i, j, lambda).is_err() {
                    failures += 1;
                }
            }
        }
    }
    Ok(outcome(
        7,
        "weighted structure constants",
        failures == 0,
        format!(
            "{} λ, {rows} rows, {failures} failed identities",
            sample.len()
        ),
    ))
}

fn check_operator_properties(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd1ff);
    let mut failures = 0;
    for _ in 0..cfg.trials {
        let nvars = rng.gen_range(2..=6);
        let p = random_polynomial(&mut rng, nvars, 5, 6);
        let q = random_polynomial(&mut rng, nvars, 5, 6);
        let j = rng.gen_range(0..nvars - 1);
        let dp = p.divided_difference(j)?;
        let nil = dp.divided_difference(j)?.is_zero();
        let lhs = (&p * &q).divided_difference(j)?;
        let rhs = &(&dp * &q) + &(&p.swap_vars(j)? * &q.divided_difference(j)?);
        let invol = p.swap_vars(j)?.swap_vars(j)? == p;
        if !(nil && lhs == rhs && invol) {
            failures += 1;
        }
    }
    let mut closure_failures = 0;
    for _ in 0..cfg.trials {
        let n = rng.gen_range(1..=5);
        let g = GkmGraph::unit(n);
        let a = random_schubert_combination(&mut rng, n)?;
        let b = random_schubert_combination(&mut rng, n)?;
        for c in [&a, &b, &a.add(&b)?, &a.mul(&b)?] {
            if !is_gkm_member(c, &g, RingMode::Integers)?.is_member() {
                closure_failures += 1;
            }
        }
    }
    Ok(outcome(
        8,
        "operator properties",
        failures == 0 && closure_failures == 0,
        format!(
            "{} trials: {failures} operator failures, {closure_failures} closure failures",
            cfg.trials
        ),
    ))
}

fn check_schubert_lemma(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let top = cfg.max_n + 2;
    let mut failures = 0;
    let mut cases = 0;
    for n in 0..=top {
        let g = GkmGraph::unit(n);
        for i in 0..=n {
            cases += 1;
            let c = schubert_class(i, n)?;
            let gkm = is_gkm_member(&c, &g, RingMode::Integers)?.is_member();
            let vanish = c.parts()[..i].iter().all(Polynomial::is_zero);
            if !(gkm && vanish && c.is_homogeneous_of(i as u32)) {
                failures += 1;
            }
        }
    }
    Ok(outcome(
        9,
        "Schubert class lemma",
        failures == 0,
        format!("{cases} classes up to n = {top}, {failures} failures"),
    ))
}

/// Runs every check and returns outcomes ordered by id.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let (c1, c2, c4) = check_tables(cfg)?;
    let mut out = vec![
        c1,
        c2,
        check_named_values(cfg)?,
        c4,
        check_kawasaki(cfg)?,
        check_weighted_classes(cfg)?,
        check_weighted_struct(cfg)?,
        check_operator_properties(cfg)?,
        check_schubert_lemma(cfg)?,
    ];
    out.sort_by_key(|c| c.id);
    Ok(out)
}
