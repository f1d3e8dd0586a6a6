use std::cmp::Ordering;

/// An exponent vector `t_0^{e_0} ... t_n^{e_n}`.
///
/// Ordered graded-lexicographically with `t_0 > t_1 > ... > t_n`: total
/// degree first, then the exponent of `t_0`, then `t_1`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            degree: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self { degree: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn with_exp(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] = exp;
        Monomial::new(exps)
    }

    pub fn swapped(&self, a: usize, b: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.swap(a, b);
        Monomial {
            degree: self.degree,
            exps,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
