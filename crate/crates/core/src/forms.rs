//! Exterior algebra on the charts of `X_n`: the chart volume forms and
//! their gluing signs, the generator vector fields `delta(i,j)` with their
//! Lie brackets, interior products, and the chart exterior derivative.
//!
//! Chart `i` solves `z_i` implicitly from `p_n = 0`, so its coordinates are
//! the remaining variables. Forms on chart `i` are stored with ascending
//! wedge subsets that omit `i`, polynomial numerators in all `n` ambient
//! variables, and one shared denominator `(∂p/∂z_i)^m`. Identities are
//! asserted on denominator-cleared numerators modulo `p_n`. The chart
//! derivative of a coefficient is `D_k = ∂_k - (∂_k p / ∂_i p) ∂_i`, the
//! implicit-function rule for the solved variable.

use crate::family;
use crate::groebner::{self, GroebnerBasis, Ideal};
use crate::poly::text::{ParseError, Parser, Token};
use crate::poly::{Coeff, MonomialOrder, Polynomial};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormsError {
    /// The field does not annihilate `p_n` modulo `p_n`.
    NotTangent,
    /// No sign makes the two chart volume forms agree; this would falsify
    /// the implementation, not the construction.
    NoCompatibleSign { i: usize, j: usize },
}

impl fmt::Display for FormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormsError::NotTangent => write!(f, "vector field is not tangent to the hypersurface"),
            FormsError::NoCompatibleSign { i, j } => {
                write!(f, "charts {i} and {j} admit no compatible gluing sign")
            }
        }
    }
}

impl std::error::Error for FormsError {}

/// One level of the family with its gradient and mod-`p_n` reduction
/// context cached.
#[derive(Debug, Clone)]
pub struct Hypersurface {
    level: usize,
    p: Polynomial,
    grad: Vec<Polynomial>,
    hessian: Vec<Vec<Polynomial>>,
    nf_basis: GroebnerBasis,
}

impl Hypersurface {
    pub fn new(n: usize) -> Self {
        let p = family::build_pn(n);
        let grad: Vec<Polynomial> = (1..=n).map(|i| p.partial_derivative(i)).collect();
        let hessian = grad
            .iter()
            .map(|g| (1..=n).map(|j| g.partial_derivative(j)).collect())
            .collect();
        let nf_basis = groebner::buchberger(
            &Ideal::new(n, vec![p.clone()]),
            &MonomialOrder::degrevlex(),
            u64::MAX,
        )
        .expect("principal ideal basis");
        Hypersurface {
            level: n,
            p,
            grad,
            hessian,
            nf_basis,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn defining_polynomial(&self) -> &Polynomial {
        &self.p
    }

    /// `∂p/∂z_i`.
    pub fn partial(&self, i: usize) -> &Polynomial {
        &self.grad[i - 1]
    }

    fn second_partial(&self, i: usize, j: usize) -> &Polynomial {
        &self.hessian[i - 1][j - 1]
    }

    /// Normal form modulo `p_n`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        groebner::normal_form(f, &self.nf_basis)
    }

    /// Exact divisibility by `p_n`.
    pub fn is_zero_mod(&self, f: &Polynomial) -> bool {
        f.divide_exact(&self.p, &MonomialOrder::degrevlex())
            .is_some()
    }

    /// The antisymmetric generator field
    /// `delta(i,j) = ∂_i p ∂/∂z_j - ∂_j p ∂/∂z_i`.
    pub fn delta(&self, i: usize, j: usize) -> VectorField {
        let n = self.level;
        assert!(
            (1..=n).contains(&i) && (1..=n).contains(&j),
            "index out of range"
        );
        assert_ne!(i, j, "delta needs two distinct indices");
        let mut coeffs = vec![Polynomial::zero(n); n];
        coeffs[j - 1] = self.partial(i).clone();
        coeffs[i - 1] = self.partial(j).neg();
        VectorField { level: n, coeffs }
    }

    pub fn is_tangent(&self, field: &VectorField) -> bool {
        assert_eq!(field.level, self.level, "level mismatch");
        self.is_zero_mod(&field.apply(&self.p))
    }

    /// The chart volume form `ω_i = (1/∂_i p) dz_1 ∧ .. (omit i) .. ∧ dz_n`.
    pub fn volume_chart(&self, i: usize) -> ChartForm {
        let n = self.level;
        assert!((1..=n).contains(&i), "chart index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(full_subset(n, i), Polynomial::one(n));
        ChartForm {
            level: n,
            chart: i,
            degree: n - 1,
            denom_pow: 1,
            terms,
        }
    }

    /// Contraction `ι_ξ φ` with the ascending-order sign convention.
    pub fn interior_product(&self, field: &VectorField, form: &ChartForm) -> ChartForm {
        assert_eq!(field.level, self.level, "level mismatch");
        assert_eq!(form.level, self.level, "level mismatch");
        assert!(form.degree >= 1, "cannot contract a 0-form");
        let mut out = ChartForm::zero(form.level, form.chart, form.degree - 1);
        out.denom_pow = form.denom_pow;
        for (subset, num) in &form.terms {
            for (idx, t) in subset.iter().enumerate() {
                let coeff = field.coeff(*t);
                if coeff.is_zero() {
                    continue;
                }
                let mut rest = subset.clone();
                rest.remove(idx);
                let mut piece = num.mul(coeff);
                if idx % 2 == 1 {
                    piece = piece.neg();
                }
                out.accumulate(rest, piece);
            }
        }
        out
    }

    /// Chart exterior derivative, with the quotient rule applied to the
    /// shared `(∂_c p)^m` denominator.
    pub fn exterior_derivative(&self, form: &ChartForm) -> ChartForm {
        assert_eq!(form.level, self.level, "level mismatch");
        let n = self.level;
        let c = form.chart;
        let m = form.denom_pow;
        let g_c = self.partial(c);
        let mut out = ChartForm::zero(n, c, form.degree + 1);
        out.denom_pow = if m == 0 { 1 } else { m + 2 };
        for (subset, num) in &form.terms {
            let d_c_num = num.partial_derivative(c);
            for k in 1..=n {
                if k == c || subset.contains(&k) {
                    continue;
                }
                let g_k = self.partial(k);
                // D_k(num / g_c^m) over g_c^(m+2), or over g_c when m = 0.
                let numerator = if m == 0 {
                    num.partial_derivative(k).mul(g_c).sub(&g_k.mul(&d_c_num))
                } else {
                    let scale = Polynomial::constant(n, crate::poly::int(m as i64));
                    num.partial_derivative(k)
                        .mul(g_c)
                        .sub(&scale.mul(num).mul(self.second_partial(c, k)))
                        .mul(g_c)
                        .sub(&g_k.mul(
                            &d_c_num
                                .mul(g_c)
                                .sub(&scale.mul(num).mul(self.second_partial(c, c))),
                        ))
                };
                if numerator.is_zero() {
                    continue;
                }
                let (wedge, sign) = insert_signed(subset, k).expect("k not in subset");
                out.accumulate(wedge, if sign < 0 { numerator.neg() } else { numerator });
            }
        }
        out
    }

    /// Rewrite a denominator-free form in the dz-basis of chart `j` by the
    /// relation `dz_j = -(1/∂_j p) Σ_{k≠j} ∂_k p dz_k`; coefficients stay
    /// ambient. A form already free of `dz_j` passes through unchanged.
    pub fn restrict_to_chart(&self, form: &ChartForm, j: usize) -> ChartForm {
        assert_eq!(form.level, self.level, "level mismatch");
        assert!((1..=self.level).contains(&j), "chart index out of range");
        assert_eq!(
            form.denom_pow, 0,
            "restriction is defined on denominator-cleared forms"
        );
        assert!(
            !self.partial(j).is_zero(),
            "degenerate chart: the partial derivative vanishes identically"
        );
        let touched = form.terms.keys().any(|subset| subset.contains(&j));
        let mut out = ChartForm::zero(self.level, j, form.degree);
        if !touched {
            out.terms = form.terms.clone();
            return out;
        }
        out.denom_pow = 1;
        let g_j = self.partial(j);
        for (subset, num) in &form.terms {
            match subset.iter().position(|t| *t == j) {
                None => out.accumulate(subset.clone(), num.mul(g_j)),
                Some(idx) => {
                    let mut rest = subset.clone();
                    rest.remove(idx);
                    let outer_negative = idx % 2 == 1;
                    for k in 1..=self.level {
                        if k == j || rest.contains(&k) {
                            continue;
                        }
                        let (wedge, sign) = insert_signed(&rest, k).expect("k not in rest");
                        let mut piece = num.mul(self.partial(k)).neg();
                        if outer_negative {
                            piece = piece.neg();
                        }
                        if sign < 0 {
                            piece = piece.neg();
                        }
                        out.accumulate(wedge, piece);
                    }
                }
            }
        }
        out
    }

    /// Gluing sign between chart volume forms: the cleared identity
    /// `restrict(∂_i p · ω_i, j) ≡ ε · ∂_i p · ω_j (mod p_n)`.
    pub fn chart_compatibility(&self, i: usize, j: usize) -> Result<i8, FormsError> {
        assert_ne!(i, j, "distinct charts required");
        let restricted = self.restrict_to_chart(&self.volume_chart(i).cleared(), j);
        let mut target = self.volume_chart(j);
        target.terms = target
            .terms
            .into_iter()
            .map(|(s, num)| (s, num.mul(self.partial(i))))
            .collect();
        for sign in [1i8, -1] {
            let candidate = if sign == 1 {
                target.clone()
            } else {
                target.neg()
            };
            if self.form_equal_mod(&restricted, &candidate) {
                return Ok(sign);
            }
        }
        Err(FormsError::NoCompatibleSign { i, j })
    }

    /// All chart forms with the full pairwise sign table.
    pub fn volume_atlas(&self) -> Result<VolumeAtlas, FormsError> {
        let n = self.level;
        let charts: Vec<ChartForm> = (1..=n).map(|i| self.volume_chart(i)).collect();
        let mut signs = vec![vec![0i8; n]; n];
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    signs[i - 1][j - 1] = self.chart_compatibility(i, j)?;
                }
            }
        }
        Ok(VolumeAtlas {
            level: n,
            charts,
            signs,
        })
    }

    /// `Θ(ξ) = ι_ξ ω` in the designated chart (the last one).
    pub fn theta(&self, field: &VectorField) -> Result<ChartForm, FormsError> {
        if !self.is_tangent(field) {
            return Err(FormsError::NotTangent);
        }
        Ok(self.interior_product(field, &self.volume_chart(self.level)))
    }

    /// `d(ι_ξ ω) ≡ 0 (mod p_n)` on the designated chart. The test does
    /// not depend on the overall sign of the glued volume form: negating
    /// `ω` negates `ι_ξ ω` and leaves the vanishing of its differential
    /// unchanged.
    pub fn divergence_free(&self, field: &VectorField) -> Result<bool, FormsError> {
        let theta = self.theta(field)?;
        Ok(self.form_is_zero_mod(&self.exterior_derivative(&theta)))
    }

    pub fn form_add(&self, a: &ChartForm, b: &ChartForm) -> ChartForm {
        assert_eq!(a.level, b.level, "level mismatch");
        assert_eq!(a.chart, b.chart, "chart mismatch");
        assert_eq!(a.degree, b.degree, "degree mismatch");
        let denom = a.denom_pow.max(b.denom_pow);
        let mut out = ChartForm::zero(a.level, a.chart, a.degree);
        out.denom_pow = denom;
        let g = self.partial(a.chart);
        for form in [a, b] {
            let lift = g.pow(denom - form.denom_pow);
            for (subset, num) in &form.terms {
                out.accumulate(subset.clone(), num.mul(&lift));
            }
        }
        out
    }

    pub fn form_sub(&self, a: &ChartForm, b: &ChartForm) -> ChartForm {
        self.form_add(a, &b.neg())
    }

    /// Every cleared numerator is divisible by `p_n`.
    pub fn form_is_zero_mod(&self, form: &ChartForm) -> bool {
        form.terms.values().all(|num| self.is_zero_mod(num))
    }

    /// Equality after clearing denominators and reducing modulo `p_n`.
    pub fn form_equal_mod(&self, a: &ChartForm, b: &ChartForm) -> bool {
        self.form_is_zero_mod(&self.form_sub(a, b))
    }
}

/// An algebraic vector field in ambient coordinates,
/// `Σ c_k ∂/∂z_k` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    level: usize,
    coeffs: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(level: usize, coeffs: Vec<Polynomial>) -> Self {
        assert_eq!(coeffs.len(), level, "one coefficient per variable");
        for c in &coeffs {
            assert_eq!(c.nvars(), level, "variable-count mismatch");
        }
        VectorField { level, coeffs }
    }

    pub fn zero(level: usize) -> Self {
        VectorField {
            level,
            coeffs: vec![Polynomial::zero(level); level],
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Coefficient of `∂/∂z_i`.
    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Apply the derivation: `Σ c_k ∂h/∂z_k`.
    pub fn apply(&self, h: &Polynomial) -> Polynomial {
        assert_eq!(h.nvars(), self.level, "level mismatch");
        let mut out = Polynomial::zero(self.level);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul(&h.partial_derivative(k + 1)));
            }
        }
        out
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.level, other.level, "level mismatch");
        VectorField {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> VectorField {
        VectorField {
            level: self.level,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, h: &Polynomial) -> VectorField {
        VectorField {
            level: self.level,
            coeffs: self.coeffs.iter().map(|p| p.mul(h)).collect(),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c}) d/dz{}", k + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Commutator of derivations in ambient coordinates:
/// `[ξ, η]_l = Σ_k (ξ_k ∂_k η_l - η_k ∂_k ξ_l)`.
pub fn lie_bracket(a: &VectorField, b: &VectorField) -> VectorField {
    assert_eq!(a.level, b.level, "level mismatch");
    let n = a.level;
    let coeffs = (1..=n)
        .map(|l| a.apply(b.coeff(l)).sub(&b.apply(a.coeff(l))))
        .collect();
    VectorField { level: n, coeffs }
}

/// A differential form in one chart: coefficients indexed by ascending
/// wedge subsets omitting the chart variable, over the shared denominator
/// `(∂p/∂z_chart)^denom_pow`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartForm {
    level: usize,
    chart: usize,
    degree: usize,
    denom_pow: u32,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl ChartForm {
    pub fn zero(level: usize, chart: usize, degree: usize) -> Self {
        assert!((1..=level).contains(&chart), "chart index out of range");
        assert!(degree <= level, "degree exceeds the ambient dimension");
        ChartForm {
            level,
            chart,
            degree,
            denom_pow: 0,
            terms: BTreeMap::new(),
        }
    }

    /// Build a denominator-free form from wedge/coefficient pairs.
    pub fn from_terms(
        level: usize,
        chart: usize,
        degree: usize,
        terms: Vec<(Vec<usize>, Polynomial)>,
    ) -> Self {
        let mut out = ChartForm::zero(level, chart, degree);
        for (subset, num) in terms {
            assert_eq!(subset.len(), degree, "wedge length mismatch");
            assert!(
                subset.windows(2).all(|w| w[0] < w[1]),
                "wedge subsets must be strictly ascending"
            );
            assert!(
                subset.iter().all(|t| (1..=level).contains(t) && *t != chart),
                "wedge subsets must avoid the chart variable"
            );
            assert_eq!(num.nvars(), level, "variable-count mismatch");
            out.accumulate(subset, num);
        }
        out
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The numerator form: identical terms, denominator dropped.
    pub fn cleared(&self) -> ChartForm {
        let mut out = self.clone();
        out.denom_pow = 0;
        out
    }

    pub fn neg(&self) -> ChartForm {
        let mut out = self.clone();
        out.terms = out.terms.into_iter().map(|(s, n)| (s, n.neg())).collect();
        out
    }

    pub fn scale(&self, c: &Coeff) -> ChartForm {
        let mut out = self.clone();
        out.terms = out
            .terms
            .into_iter()
            .filter_map(|(s, n)| {
                let scaled = n.scale(c);
                (!scaled.is_zero()).then_some((s, scaled))
            })
            .collect();
        out
    }

    fn accumulate(&mut self, subset: Vec<usize>, num: Polynomial) {
        if num.is_zero() {
            return;
        }
        match self.terms.remove(&subset) {
            None => {
                self.terms.insert(subset, num);
            }
            Some(existing) => {
                let sum = existing.add(&num);
                if !sum.is_zero() {
                    self.terms.insert(subset, sum);
                }
            }
        }
    }
}

impl fmt::Display for ChartForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Polynomial::one(self.level);
        let body = self
            .terms
            .iter()
            .map(|(subset, num)| {
                let wedge = subset
                    .iter()
                    .map(|t| format!("dz{t}"))
                    .collect::<Vec<_>>()
                    .join("^");
                if subset.is_empty() {
                    format!("{num}")
                } else if *num == one {
                    wedge
                } else if num.num_terms() == 1 {
                    format!("{num}*{wedge}")
                } else {
                    format!("({num})*{wedge}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ");
        if self.denom_pow == 0 {
            write!(f, "{body}")
        } else if self.denom_pow == 1 {
            write!(f, "({body}) / (D{}p)", self.chart)
        } else {
            write!(f, "({body}) / (D{}p)^{}", self.chart, self.denom_pow)
        }
    }
}

/// The chart atlas of volume forms with the computed gluing signs.
#[derive(Debug, Clone)]
pub struct VolumeAtlas {
    pub level: usize,
    pub charts: Vec<ChartForm>,
    /// `signs[i-1][j-1]` is the gluing sign between charts `i` and `j`;
    /// zero on the diagonal.
    pub signs: Vec<Vec<i8>>,
}

fn full_subset(level: usize, excluded: usize) -> Vec<usize> {
    (1..=level).filter(|t| *t != excluded).collect()
}

/// Insert `k` into an ascending subset, with the sign of moving `dz_k`
/// past the earlier factors. `None` when `k` is already present.
fn insert_signed(subset: &[usize], k: usize) -> Option<(Vec<usize>, i32)> {
    if subset.contains(&k) {
        return None;
    }
    let pos = subset.iter().filter(|t| **t < k).count();
    let mut out = subset.to_vec();
    out.insert(pos, k);
    Some((out, if pos % 2 == 0 { 1 } else { -1 }))
}

/// Parse a form in the polynomial grammar extended with `dz_k` wedges,
/// e.g. `z2 dz3 - 1/2 dz1^dz2`. The result is a denominator-free form in
/// the given chart; `dz_chart` is rejected since that differential is
/// solved away on the chart.
pub fn parse_form(input: &str, level: usize, chart: usize) -> Result<ChartForm, ParseError> {
    let mut parser = Parser::new(input, level)?;
    let mut pieces: Vec<(Vec<usize>, Polynomial)> = Vec::new();
    let mut degree: Option<usize> = None;
    let mut first = true;
    while !(first && parser.at_end()) {
        let mut negate = false;
        if !first {
            match parser.peek() {
                Some(Token::Plus) => {
                    parser.bump();
                }
                Some(Token::Minus) => {
                    parser.bump();
                    negate = true;
                }
                _ => return parser.err("expected '+' or '-' between terms"),
            }
        } else if matches!(parser.peek(), Some(Token::Minus)) {
            parser.bump();
            negate = true;
        } else if matches!(parser.peek(), Some(Token::Plus)) {
            parser.bump();
        }
        first = false;
        // Optional polynomial coefficient, then an optional wedge.
        let mut coeff = Polynomial::one(level);
        if !matches!(parser.peek(), Some(Token::Wedge(_))) {
            coeff = parser.parse_term()?;
        }
        let mut wedge: Vec<usize> = Vec::new();
        if matches!(parser.peek(), Some(Token::Wedge(_))) {
            loop {
                match parser.bump() {
                    Some(Token::Wedge(t)) => wedge.push(t),
                    _ => return parser.err("expected a dz factor"),
                }
                if matches!(parser.peek(), Some(Token::Caret)) {
                    parser.bump();
                    if !matches!(parser.peek(), Some(Token::Wedge(_))) {
                        return parser.err("expected a dz factor after '^'");
                    }
                    continue;
                }
                break;
            }
        }
        if negate {
            coeff = coeff.neg();
        }
        // Sort the wedge, tracking the permutation sign; repeats vanish.
        let mut sign = 1i32;
        let mut sorted = wedge.clone();
        for a in 0..sorted.len() {
            for b in (a + 1)..sorted.len() {
                if sorted[a] > sorted[b] {
                    sorted.swap(a, b);
                    sign = -sign;
                }
            }
        }
        for t in &sorted {
            if *t > level {
                return parser.err(format!("dz{t} exceeds {level} variables"));
            }
            if *t == chart {
                return parser.err(format!(
                    "dz{t} is solved away on chart {chart}; use the other differentials"
                ));
            }
        }
        match degree {
            None => degree = Some(sorted.len()),
            Some(d) if d != sorted.len() => return parser.err("mixed degrees in one form"),
            _ => {}
        }
        let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
        if !repeated {
            if sign < 0 {
                coeff = coeff.neg();
            }
            pieces.push((sorted, coeff));
        }
        if parser.at_end() {
            break;
        }
    }
    Ok(ChartForm::from_terms(
        level,
        chart,
        degree.unwrap_or(0),
        pieces,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn delta_is_antisymmetric_and_annihilates_p() {
        for n in 3..=6 {
            let surface = Hypersurface::new(n);
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let d = surface.delta(i, j);
                    assert!(d.add(&surface.delta(j, i)).is_zero());
                    assert!(d.apply(surface.defining_polynomial()).is_zero());
                }
            }
        }
    }

    #[test]
    fn delta_coefficients_at_level_three() {
        let surface = Hypersurface::new(3);
        let d12 = surface.delta(1, 2);
        assert_eq!(*d12.coeff(1), p("-z1*z3", 3));
        assert_eq!(*d12.coeff(2), p("1 + z2*z3", 3));
        assert!(d12.coeff(3).is_zero());
    }

    #[test]
    fn kernel_variables_of_delta() {
        let surface = Hypersurface::new(4);
        let d23 = surface.delta(2, 3);
        assert!(d23.apply(&p("z1", 4)).is_zero());
        assert!(d23.apply(&p("z4", 4)).is_zero());
        let s3 = Hypersurface::new(3);
        assert_eq!(s3.delta(1, 2).apply(&p("z2", 3)), p("1 + z2*z3", 3));
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi() {
        let surface = Hypersurface::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pool: Vec<VectorField> = vec![
            surface.delta(1, 2),
            surface.delta(1, 3),
            surface.delta(2, 4),
            surface.delta(3, 4),
        ];
        for _ in 0..25 {
            let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            assert!(lie_bracket(&a, &a).is_zero());
            assert!(lie_bracket(&a, &b).add(&lie_bracket(&b, &a)).is_zero());
            let jacobi = lie_bracket(&a, &lie_bracket(&b, &c))
                .add(&lie_bracket(&b, &lie_bracket(&c, &a)))
                .add(&lie_bracket(&c, &lie_bracket(&a, &b)));
            assert!(jacobi.is_zero());
        }
    }

    #[test]
    fn brackets_stay_tangent() {
        let surface = Hypersurface::new(5);
        let b = lie_bracket(&surface.delta(1, 2), &surface.delta(3, 4));
        assert!(surface.is_tangent(&b));
        assert!(surface.is_zero_mod(&b.apply(surface.defining_polynomial())));
    }

    #[test]
    fn volume_chart_examples() {
        let surface = Hypersurface::new(3);
        let w2 = surface.volume_chart(2);
        assert_eq!(w2.denom_pow(), 1);
        assert_eq!(w2.terms().len(), 1);
        assert_eq!(*w2.terms().get(&vec![1, 3]).unwrap(), Polynomial::one(3));
        assert_eq!(*surface.partial(2), p("z1*z3", 3));
        assert_eq!(*surface.partial(1), p("1 + z2*z3", 3));
    }

    #[test]
    fn contraction_basics() {
        let surface = Hypersurface::new(3);
        // ι_{d/dz1} (dz1 ∧ dz2) = dz2, and contracting twice kills it.
        let field = VectorField::new(
            3,
            vec![
                Polynomial::one(3),
                Polynomial::zero(3),
                Polynomial::zero(3),
            ],
        );
        let form = ChartForm::from_terms(3, 3, 2, vec![(vec![1, 2], Polynomial::one(3))]);
        let contracted = surface.interior_product(&field, &form);
        assert_eq!(
            contracted,
            ChartForm::from_terms(3, 3, 1, vec![(vec![2], Polynomial::one(3))])
        );
        assert!(surface.interior_product(&field, &contracted).is_empty());
    }

    #[test]
    fn double_contraction_by_a_field_vanishes() {
        let surface = Hypersurface::new(4);
        let field = surface.delta(2, 4);
        let omega = surface.volume_chart(4);
        let once = surface.interior_product(&field, &omega);
        let twice = surface.interior_product(&field, &once);
        assert!(twice.is_empty());
    }

    #[test]
    fn exterior_derivative_basics() {
        let surface = Hypersurface::new(3);
        let constant = ChartForm::from_terms(3, 3, 0, vec![(vec![], Polynomial::one(3))]);
        assert!(surface.exterior_derivative(&constant).is_empty());
        // d(z1 dz2) = dz1 ∧ dz2: numerator ∂_3 p over the chart denominator.
        let form = ChartForm::from_terms(3, 3, 1, vec![(vec![2], p("z1", 3))]);
        let d = surface.exterior_derivative(&form);
        assert_eq!(d.denom_pow(), 1);
        let mut expected =
            ChartForm::from_terms(3, 3, 2, vec![(vec![1, 2], surface.partial(3).clone())]);
        expected.denom_pow = 1;
        assert!(surface.form_equal_mod(&d, &expected));
    }

    #[test]
    fn d_squared_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for n in [3usize, 4] {
            let surface = Hypersurface::new(n);
            for _ in 0..50 {
                let chart = rng.gen_range(1..=n);
                let degree = rng.gen_range(0..n - 1);
                let mut terms = Vec::new();
                for _ in 0..rng.gen_range(1..=3) {
                    let mut subset: Vec<usize> = (1..=n).filter(|t| *t != chart).collect();
                    while subset.len() > degree {
                        subset.remove(rng.gen_range(0..subset.len()));
                    }
                    terms.push((subset, random_poly(&mut rng, n)));
                }
                let form = ChartForm::from_terms(n, chart, degree, terms);
                let dd = surface.exterior_derivative(&surface.exterior_derivative(&form));
                assert!(surface.form_is_zero_mod(&dd));
            }
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> Polynomial {
        use crate::poly::{ratio, Exponent};
        let nterms = rng.gen_range(1..=4);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
            terms.push((
                Exponent::new(exps),
                ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)),
            ));
        }
        Polynomial::from_terms(nvars, terms)
    }

    #[test]
    fn restriction_example() {
        let surface = Hypersurface::new(3);
        // dz1 ∧ dz2 restricted to chart 1 becomes (∂_3 p / ∂_1 p) dz2 ∧ dz3.
        let form = ChartForm::from_terms(3, 3, 2, vec![(vec![1, 2], Polynomial::one(3))]);
        let restricted = surface.restrict_to_chart(&form, 1);
        assert_eq!(restricted.chart(), 1);
        assert_eq!(restricted.denom_pow(), 1);
        assert_eq!(
            *restricted.terms().get(&vec![2, 3]).unwrap(),
            surface.partial(3).clone()
        );
        // A form free of dz_j passes through unchanged.
        let free = ChartForm::from_terms(3, 3, 1, vec![(vec![2], p("z1", 3))]);
        let same = surface.restrict_to_chart(&free, 1);
        assert_eq!(same.denom_pow(), 0);
        assert_eq!(same.terms(), free.terms());
    }

    #[test]
    fn chart_compatibility_signs() {
        for n in [3usize, 4] {
            let surface = Hypersurface::new(n);
            let atlas = surface.volume_atlas().unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        let e_ij = atlas.signs[i - 1][j - 1] as i32;
                        let e_ji = atlas.signs[j - 1][i - 1] as i32;
                        assert_eq!(e_ij * e_ji, 1, "sign involution failed at ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_volume_form_matches_up_to_sign() {
        let surface = Hypersurface::new(3);
        let r = surface.restrict_to_chart(&surface.volume_chart(1).cleared(), 3);
        let mut scaled = surface.volume_chart(3);
        scaled.terms = scaled
            .terms
            .into_iter()
            .map(|(s, n)| (s, n.mul(surface.partial(1))))
            .collect();
        let sign = surface.chart_compatibility(1, 3).unwrap();
        let target = if sign == 1 { scaled } else { scaled.neg() };
        assert!(surface.form_equal_mod(&r, &target));
    }

    #[test]
    fn theta_of_the_generators_is_closed() {
        for n in [3usize, 4, 5] {
            let surface = Hypersurface::new(n);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let field = surface.delta(i, j);
                    assert!(
                        surface.divergence_free(&field).unwrap(),
                        "delta({i},{j}) failed at level {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn theta_of_delta_23_at_level_three_is_dz1() {
        let surface = Hypersurface::new(3);
        let theta = surface.theta(&surface.delta(2, 3)).unwrap();
        let mut expected =
            ChartForm::from_terms(3, 3, 1, vec![(vec![1], surface.partial(3).clone())]);
        expected.denom_pow = 1;
        assert!(surface.form_equal_mod(&theta, &expected));
    }

    #[test]
    fn theta_of_zero_is_zero_and_nontangent_rejected() {
        let surface = Hypersurface::new(3);
        assert!(surface.theta(&VectorField::zero(3)).unwrap().is_empty());
        let bad = VectorField::new(
            3,
            vec![
                Polynomial::zero(3),
                Polynomial::zero(3),
                p("z3", 3),
            ],
        );
        assert_eq!(surface.theta(&bad), Err(FormsError::NotTangent));
    }

    #[test]
    fn kernel_multiples_stay_divergence_free() {
        let surface = Hypersurface::new(4);
        // z1 and z4 lie in the kernel of delta(2,3).
        let field = surface.delta(2, 3).scale_poly(&p("z1^2*z4", 4));
        assert!(surface.divergence_free(&field).unwrap());
    }

    #[test]
    fn brackets_of_generators_are_divergence_free() {
        let surface = Hypersurface::new(4);
        let b = lie_bracket(&surface.delta(1, 2), &surface.delta(3, 4));
        assert!(surface.divergence_free(&b).unwrap());
    }

    #[test]
    fn parse_form_handles_the_grammar() {
        let f = parse_form("z2 dz3", 4, 4).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(*f.terms().get(&vec![3]).unwrap(), p("z2", 4));
        let g = parse_form("dz3^dz1", 4, 4).unwrap();
        assert_eq!(*g.terms().get(&vec![1, 3]).unwrap(), p("-1", 4));
        let h = parse_form("z1 + 2*z2", 3, 3).unwrap();
        assert_eq!(h.degree(), 0);
        assert!(parse_form("dz4", 4, 4).is_err());
        assert!(parse_form("dz1 + z2 dz1^dz3", 4, 4).is_err());
        let zero = parse_form("dz1^dz1", 4, 4).unwrap();
        assert!(zero.is_empty());
    }
}
