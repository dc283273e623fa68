//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

/// Exponent vector of a monomial, with cached total degree.
///
/// Variable indices are 1-based in the public interface, matching the
/// `z1..zN` naming of the text grammar.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent {
    exps: Vec<u32>,
    degree: u32,
}

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Exponent { exps, degree }
    }

    /// The constant monomial `1` in `nvars` variables.
    pub fn constant(nvars: usize) -> Self {
        Exponent::new(vec![0; nvars])
    }

    /// The monomial `z_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            1 <= i && i <= nvars,
            "variable index {i} out of range 1..={nvars}"
        );
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        Exponent::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Exponent of `z_i`.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    /// Indices (1-based) of the variables occurring in the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.nvars(), other.nvars(), "variable-count mismatch");
        Exponent::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Exponent) -> Option<Exponent> {
        assert_eq!(self.nvars(), other.nvars(), "variable-count mismatch");
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Exponent::new(exps))
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.nvars(), other.nvars(), "variable-count mismatch");
        Exponent::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Zero-pad to a larger variable count.
    pub fn pad(&self, nvars: usize) -> Exponent {
        assert!(nvars >= self.nvars());
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Exponent::new(exps)
    }

    pub(crate) fn exps(&self) -> &[u32] {
        &self.exps
    }
}

/// The order tag: graded reverse lexicographic, graded lexicographic, or
/// plain lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    DegRevLex,
    DegLex,
    Lex,
}

/// A monomial order: a tag plus an optional variable permutation.
///
/// The permutation lists variable indices (1-based) from least to most
/// significant; the default is the natural order `z1 < z2 < ... < zN`.
/// Every variant is a total, multiplicative well-ordering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    significance: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            significance: None,
        }
    }

    pub fn deglex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegLex,
            significance: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            significance: None,
        }
    }

    /// Same tag, with variables compared in the given significance order
    /// (least significant first; must be a permutation of `1..=nvars`).
    pub fn with_significance(mut self, vars: Vec<usize>) -> Self {
        let mut seen = vars.clone();
        seen.sort_unstable();
        assert!(
            seen.iter().enumerate().all(|(k, v)| *v == k + 1),
            "significance list must be a permutation of 1..=n"
        );
        self.significance = Some(vars);
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    fn exp_at(&self, e: &Exponent, slot: usize) -> u32 {
        match &self.significance {
            None => e.exps()[slot],
            Some(vars) => e.exps()[vars[slot] - 1],
        }
    }

    /// Lexicographic comparison scanning from the most significant variable.
    fn lex_cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        for slot in (0..a.nvars()).rev() {
            let (ea, eb) = (self.exp_at(a, slot), self.exp_at(b, slot));
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        Ordering::Equal
    }

    /// Reverse-lexicographic tiebreak: at the least significant variable
    /// where the exponents differ, the smaller exponent wins.
    fn revlex_cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        for slot in 0..a.nvars() {
            let (ea, eb) = (self.exp_at(a, slot), self.exp_at(b, slot));
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars(), "variable-count mismatch");
        match self.kind {
            OrderKind::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| self.revlex_cmp(a, b)),
            OrderKind::DegLex => a.degree().cmp(&b.degree()).then_with(|| self.lex_cmp(a, b)),
            OrderKind::Lex => self.lex_cmp(a, b),
        }
    }
}

impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.kind {
            OrderKind::DegRevLex => "degrevlex",
            OrderKind::DegLex => "deglex",
            OrderKind::Lex => "lex",
        };
        match &self.significance {
            None => write!(f, "{name}"),
            Some(vars) => write!(f, "{name}{vars:?}"),
        }
    }
}
