//! Constructive realization: given an algebraic `(n-3)`-form `alpha` with
//! polynomial coefficients, produce an element of the Lie algebra spanned
//! by kernel multiples and brackets of the generator fields whose
//! contraction image equals `d(alpha)` modulo `p_n`, certified by a zero
//! residual.
//!
//! The generators never come with pinned constants, so every scalar is
//! resolved by exact linear algebra: the contraction images of a candidate
//! pool are expanded in the monomial basis modulo `p_n` and the weights
//! solved over the rationals. The pool follows the shape of the
//! construction first (a single kernel-multiplied generator when the
//! coefficient avoids the two complementary variables, divisor-split
//! brackets otherwise) and widens to a full degree-capped pool of depth-2
//! bracket expressions before a target is declared unrealizable.

use crate::forms::{lie_bracket, ChartForm, Hypersurface, VectorField};
use crate::poly::{Coeff, Exponent, Polynomial};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerationError {
    /// A leaf multiplier is not annihilated by its generator.
    KernelViolated { i: usize, j: usize, kernel: String },
    /// The input form carries a denominator.
    NotPolynomial,
    /// A coefficient exceeds the configured degree bound.
    DegreeTooHigh { degree: u32, bound: u32 },
    /// The widened candidate pool still cannot match the target.
    Unrealizable { target: String },
}

impl fmt::Display for GenerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerationError::KernelViolated { i, j, kernel } => {
                write!(f, "multiplier {kernel} is not in the kernel of delta({i},{j})")
            }
            GenerationError::NotPolynomial => {
                write!(f, "the form must have polynomial coefficients")
            }
            GenerationError::DegreeTooHigh { degree, bound } => {
                write!(f, "coefficient degree {degree} exceeds the bound {bound}")
            }
            GenerationError::Unrealizable { target } => {
                write!(f, "no candidate combination matches the target {target}")
            }
        }
    }
}

impl std::error::Error for GenerationError {}

/// An expression in the Lie algebra generated by kernel multiples of the
/// generator fields: leaves are `c * h * delta(i,j)` with
/// `delta(i,j)(h) = 0`, internal nodes are brackets, scalings, and sums.
#[derive(Debug, Clone, PartialEq)]
pub enum BracketExpr {
    Leaf {
        scale: Coeff,
        kernel: Polynomial,
        i: usize,
        j: usize,
    },
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
    Scale(Coeff, Box<BracketExpr>),
    Sum(Vec<BracketExpr>),
}

impl BracketExpr {
    pub fn leaf(kernel: Polynomial, i: usize, j: usize) -> Self {
        BracketExpr::Leaf {
            scale: Coeff::one(),
            kernel,
            i,
            j,
        }
    }

    pub fn bracket(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Bracket(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Leaf { scale, kernel, i, j } => {
                write!(f, "leaf(")?;
                if !scale.is_one() {
                    write!(f, "{scale}, ")?;
                }
                if *kernel != Polynomial::one(kernel.nvars()) {
                    write!(f, "h={kernel}, ")?;
                }
                write!(f, "d=δ[{i},{j}])")
            }
            BracketExpr::Bracket(a, b) => write!(f, "bracket({a}, {b})"),
            BracketExpr::Scale(c, e) => write!(f, "scale({c}, {e})"),
            BracketExpr::Sum(parts) => {
                if parts.is_empty() {
                    return write!(f, "0");
                }
                write!(f, "sum(")?;
                for (k, part) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{part}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Evaluate an expression to an ambient vector field, checking the kernel
/// condition at every leaf.
pub fn evaluate(surface: &Hypersurface, expr: &BracketExpr) -> Result<VectorField, GenerationError> {
    match expr {
        BracketExpr::Leaf { scale, kernel, i, j } => {
            let delta = surface.delta(*i, *j);
            if !delta.apply(kernel).is_zero() {
                return Err(GenerationError::KernelViolated {
                    i: *i,
                    j: *j,
                    kernel: kernel.to_string(),
                });
            }
            Ok(delta.scale_poly(kernel).scale(scale))
        }
        BracketExpr::Bracket(a, b) => Ok(lie_bracket(
            &evaluate(surface, a)?,
            &evaluate(surface, b)?,
        )),
        BracketExpr::Scale(c, e) => Ok(evaluate(surface, e)?.scale(c)),
        BracketExpr::Sum(parts) => {
            let mut acc = VectorField::zero(surface.level());
            for part in parts {
                acc = acc.add(&evaluate(surface, part)?);
            }
            Ok(acc)
        }
    }
}

/// Options for the realization solver.
#[derive(Debug, Clone, Copy)]
pub struct GenOptions {
    /// Cap on the coefficient degrees of the input form and on the kernel
    /// monomials of the widened pool.
    pub degree_bound: u32,
    /// Allow the fallback to the widened candidate pools.
    pub widen: bool,
    /// Largest candidate pool the solver will expand symbolically; a
    /// widening stage that would exceed it is not attempted.
    pub max_candidates: usize,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            degree_bound: 3,
            widen: true,
            max_candidates: 4000,
        }
    }
}

/// A certified realization: the expression, its field, and the residual
/// `Θ(ξ) - dα` with numerators reduced modulo `p_n`. Valid iff the
/// residual is identically zero.
#[derive(Debug, Clone)]
pub struct RealizationCertificate {
    pub level: usize,
    pub alpha: ChartForm,
    pub expr: BracketExpr,
    pub field: VectorField,
    pub residual: ChartForm,
    /// Whether the recipe pool had to be widened.
    pub widened: bool,
}

impl RealizationCertificate {
    pub fn is_valid(&self) -> bool {
        self.residual.is_empty()
    }

    /// The residual in print form; a valid certificate prints `0`.
    pub fn residual_text(&self) -> String {
        self.residual.to_string()
    }
}

/// Candidate pool for one target `m * dz_wedge`, a single term of a
/// differential image: the `(n-2)`-subset selects the complementary pair
/// of generator indices, and the monomial decides between a direct kernel
/// multiple and divisor-split brackets.
pub fn realize_monomial(
    surface: &Hypersurface,
    monomial: &Exponent,
    wedge: &[usize],
) -> Vec<BracketExpr> {
    let n = surface.level();
    assert_eq!(wedge.len(), n - 2, "selector must omit exactly two indices");
    let complement: Vec<usize> = (1..=n).filter(|k| !wedge.contains(k)).collect();
    let (a, b) = (complement[0], complement[1]);
    let mut pool = Vec::new();
    let support = monomial.support();
    if !support.contains(&a) && !support.contains(&b) {
        pool.push(BracketExpr::leaf(
            Polynomial::monomial(n, monomial.clone(), Coeff::one()),
            a,
            b,
        ));
        return pool;
    }
    // The coefficient touches a complementary variable: bracket shapes,
    // splitting the monomial between the two kernels.
    let degree = monomial.degree();
    for h in divisors(monomial) {
        let rest = monomial.try_div(&h).expect("divisor");
        for g in divisors(&rest) {
            if h.degree() + g.degree() + 2 < degree {
                continue;
            }
            for (p1, q1) in variable_pairs(n) {
                if h.exp(p1) > 0 || h.exp(q1) > 0 {
                    continue;
                }
                for (p2, q2) in variable_pairs(n) {
                    if g.exp(p2) > 0 || g.exp(q2) > 0 {
                        continue;
                    }
                    if (p1, q1) == (p2, q2) && h == g {
                        continue;
                    }
                    pool.push(BracketExpr::bracket(
                        BracketExpr::leaf(Polynomial::monomial(n, h.clone(), Coeff::one()), p1, q1),
                        BracketExpr::leaf(Polynomial::monomial(n, g.clone(), Coeff::one()), p2, q2),
                    ));
                }
            }
        }
    }
    pool
}

fn variable_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn divisors(m: &Exponent) -> Vec<Exponent> {
    let n = m.nvars();
    let mut out = vec![Exponent::constant(n)];
    for i in 1..=n {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            for k in 0..=e {
                let mut exps: Vec<u32> = (1..=n).map(|v| d.exp(v)).collect();
                exps[i - 1] = k;
                next.push(Exponent::new(exps));
            }
        }
        out = next;
    }
    out
}

/// Kernel monomials for a pair: monomials of degree at most `bound` in the
/// variables outside `{i, j}`.
fn kernel_monomials(n: usize, i: usize, j: usize, bound: u32) -> Vec<Exponent> {
    let vars: Vec<usize> = (1..=n).filter(|k| *k != i && *k != j).collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Exponent::constant(n))];
    while let Some((idx, current)) = stack.pop() {
        if idx == vars.len() {
            out.push(current);
            continue;
        }
        let remaining = bound - current.degree();
        for e in 0..=remaining {
            let mut exps: Vec<u32> = (1..=n).map(|v| current.exp(v)).collect();
            exps[vars[idx] - 1] = e;
            stack.push((idx + 1, Exponent::new(exps)));
        }
    }
    out.sort_by(|x, y| x.exps().cmp(y.exps()));
    out
}

/// First widening stage: every kernel-multiplied generator and every
/// bracket of two of them, with kernel degrees summing within the bound.
fn targeted_pool(surface: &Hypersurface, bound: u32) -> Vec<BracketExpr> {
    let n = surface.level();
    let pairs = variable_pairs(n);
    let mut leaves: Vec<(Exponent, usize, usize)> = Vec::new();
    for (i, j) in &pairs {
        for m in kernel_monomials(n, *i, *j, bound) {
            leaves.push((m, *i, *j));
        }
    }
    let make_leaf = |(m, i, j): &(Exponent, usize, usize)| {
        BracketExpr::leaf(Polynomial::monomial(n, m.clone(), Coeff::one()), *i, *j)
    };
    let mut pool: Vec<BracketExpr> = leaves.iter().map(make_leaf).collect();
    for (x, a) in leaves.iter().enumerate() {
        for b in leaves.iter().skip(x + 1) {
            if a.0.degree() + b.0.degree() <= bound {
                pool.push(BracketExpr::bracket(make_leaf(a), make_leaf(b)));
            }
        }
    }
    pool
}

/// Second widening stage: kernel multiples bracketed against bare
/// generator brackets (depth two).
fn depth_two_pool(surface: &Hypersurface, bound: u32) -> Vec<BracketExpr> {
    let n = surface.level();
    let pairs = variable_pairs(n);
    let mut pool = Vec::new();
    for (i, j) in &pairs {
        for m in kernel_monomials(n, *i, *j, bound) {
            let outer = BracketExpr::leaf(Polynomial::monomial(n, m, Coeff::one()), *i, *j);
            for (p1, q1) in &pairs {
                for (p2, q2) in &pairs {
                    if (p1, q1) >= (p2, q2) {
                        continue;
                    }
                    pool.push(BracketExpr::bracket(
                        outer.clone(),
                        BracketExpr::bracket(
                            BracketExpr::leaf(Polynomial::one(n), *p1, *q1),
                            BracketExpr::leaf(Polynomial::one(n), *p2, *q2),
                        ),
                    ));
                }
            }
        }
    }
    pool
}

/// Recipe-shaped candidate pool for a whole form: the union of the pools
/// of every formal differential term of `alpha`, plus the bare generators.
fn recipe_pool(surface: &Hypersurface, alpha: &ChartForm) -> Vec<BracketExpr> {
    let n = surface.level();
    let mut pool: Vec<BracketExpr> = variable_pairs(n)
        .into_iter()
        .map(|(i, j)| BracketExpr::leaf(Polynomial::one(n), i, j))
        .collect();
    for (subset, coeff) in alpha.terms() {
        for (monomial, _) in coeff.terms() {
            for s in monomial.support() {
                if subset.contains(&s) {
                    continue;
                }
                let mut image = monomial.exps().to_vec();
                image[s - 1] -= 1;
                let image = Exponent::new(image);
                let mut wedge = subset.clone();
                let pos = wedge.iter().filter(|t| **t < s).count();
                wedge.insert(pos, s);
                pool.extend(realize_monomial(surface, &image, &wedge));
            }
        }
    }
    pool
}

fn dedupe(pool: Vec<BracketExpr>) -> Vec<BracketExpr> {
    let mut seen = HashSet::new();
    pool.into_iter()
        .filter(|e| seen.insert(e.to_string()))
        .collect()
}

/// Solve `Σ w_t Θ(candidate_t) ≡ target (mod p_n)` for rational weights.
/// Rows are indexed by wedge subset and reduced monomial; any solution of
/// the resulting exact linear system is accepted.
fn solve_weights(
    surface: &Hypersurface,
    images: &[ChartForm],
    target: &ChartForm,
) -> Option<Vec<Coeff>> {
    let mut row_keys: BTreeMap<(Vec<usize>, Vec<u32>), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Coeff>> = Vec::with_capacity(images.len());
    let index_of = |key: (Vec<usize>, Vec<u32>), rows: &mut BTreeMap<(Vec<usize>, Vec<u32>), usize>| {
        let next = rows.len();
        *rows.entry(key).or_insert(next)
    };
    for image in images {
        let mut column = BTreeMap::new();
        for (subset, num) in image.terms() {
            let reduced = surface.reduce(num);
            for (m, c) in reduced.terms() {
                let row = index_of((subset.clone(), m.exps().to_vec()), &mut row_keys);
                column.insert(row, c.clone());
            }
        }
        columns.push(column);
    }
    let mut rhs_sparse = BTreeMap::new();
    for (subset, num) in target.terms() {
        let reduced = surface.reduce(num);
        for (m, c) in reduced.terms() {
            let row = index_of((subset.clone(), m.exps().to_vec()), &mut row_keys);
            rhs_sparse.insert(row, c.clone());
        }
    }
    let nrows = row_keys.len();
    let ncols = images.len();
    let mut matrix: Vec<Vec<Coeff>> = vec![vec![Coeff::zero(); ncols]; nrows];
    for (col, column) in columns.iter().enumerate() {
        for (row, c) in column {
            matrix[*row][col] = c.clone();
        }
    }
    let mut rhs = vec![Coeff::zero(); nrows];
    for (row, c) in rhs_sparse {
        rhs[row] = c;
    }
    gauss_solve(matrix, rhs)
}

/// Exact Gaussian elimination over the rationals; returns any solution,
/// with free variables set to zero.
fn gauss_solve(mut a: Vec<Vec<Coeff>>, mut b: Vec<Coeff>) -> Option<Vec<Coeff>> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..nrows).find(|r| !a[*r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        a.swap(row, pivot);
        b.swap(row, pivot);
        let lead = a[row][col].clone();
        for k in col..ncols {
            a[row][k] = &a[row][k] / &lead;
        }
        b[row] = &b[row] / &lead;
        for r in 0..nrows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in col..ncols {
                    let delta = &a[row][k] * &factor;
                    a[r][k] = &a[r][k] - &delta;
                }
                let delta = &b[row] * &factor;
                b[r] = &b[r] - &delta;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    // Inconsistent when a zero row has a nonzero right side.
    for r in row..nrows {
        if !b[r].is_zero() {
            return None;
        }
    }
    let mut solution = vec![Coeff::zero(); ncols];
    for (r, col) in pivot_col_of_row.iter().enumerate() {
        solution[*col] = b[r].clone();
    }
    Some(solution)
}

/// Realize `dα` as the contraction image of a Lie algebra element,
/// verified symbolically. The input must have polynomial coefficients in
/// the designated chart and degrees within the bound.
pub fn realize_exact(
    surface: &Hypersurface,
    alpha: &ChartForm,
    options: &GenOptions,
) -> Result<RealizationCertificate, GenerationError> {
    let n = surface.level();
    assert_eq!(alpha.level(), n, "level mismatch");
    assert_eq!(alpha.chart(), n, "the designated chart is the last one");
    assert_eq!(alpha.degree(), n - 3, "expected an (n-3)-form");
    if alpha.denom_pow() != 0 {
        return Err(GenerationError::NotPolynomial);
    }
    for num in alpha.terms().values() {
        if num.degree() > options.degree_bound {
            return Err(GenerationError::DegreeTooHigh {
                degree: num.degree(),
                bound: options.degree_bound,
            });
        }
    }
    let target = surface.exterior_derivative(alpha);
    let omega = surface.volume_chart(n);
    let alpha_degree = alpha
        .terms()
        .values()
        .map(|num| num.degree())
        .max()
        .unwrap_or(0);

    // Widening stages, attempted in order until one solves or the pool
    // budget is exhausted.
    let stages: Vec<Option<Vec<BracketExpr>>> = vec![
        None,
        Some(targeted_pool(surface, alpha_degree.max(1))),
        Some(targeted_pool(surface, options.degree_bound)),
        Some(depth_two_pool(surface, options.degree_bound)),
    ];
    let mut pool = dedupe(recipe_pool(surface, alpha));
    let mut widened = false;
    for (stage, extra) in stages.into_iter().enumerate() {
        if stage > 0 {
            if !options.widen {
                break;
            }
            let mut extended = pool.clone();
            extended.extend(extra.expect("widening stage"));
            let extended = dedupe(extended);
            if extended.len() == pool.len() {
                continue;
            }
            if extended.len() > options.max_candidates {
                break;
            }
            pool = extended;
            widened = true;
        }
        let fields: Vec<VectorField> = pool
            .iter()
            .map(|e| evaluate(surface, e).expect("pool leaves satisfy their kernels"))
            .collect();
        let images: Vec<ChartForm> = fields
            .iter()
            .map(|xi| surface.interior_product(xi, &omega))
            .collect();
        if let Some(weights) = solve_weights(surface, &images, &target) {
            let mut parts = Vec::new();
            let mut field = VectorField::zero(n);
            for ((w, expr), xi) in weights.iter().zip(&pool).zip(&fields) {
                if w.is_zero() {
                    continue;
                }
                parts.push(BracketExpr::Scale(w.clone(), Box::new(expr.clone())));
                field = field.add(&xi.scale(w));
            }
            let expr = BracketExpr::Sum(parts);
            let image = surface.interior_product(&field, &omega);
            let mut residual = surface.form_sub(&image, &target);
            residual = reduce_form(surface, &residual);
            debug_assert!(
                surface.divergence_free(&field).unwrap_or(false),
                "realized field must annihilate the volume form"
            );
            return Ok(RealizationCertificate {
                level: n,
                alpha: alpha.clone(),
                expr,
                field,
                residual,
                widened,
            });
        }
    }
    Err(GenerationError::Unrealizable {
        target: target.to_string(),
    })
}

fn reduce_form(surface: &Hypersurface, form: &ChartForm) -> ChartForm {
    let mut out = ChartForm::zero(form.level(), form.chart(), form.degree());
    let reduced: Vec<(Vec<usize>, Polynomial)> = form
        .terms()
        .iter()
        .map(|(s, num)| (s.clone(), surface.reduce(num)))
        .filter(|(_, num)| !num.is_zero())
        .collect();
    if reduced.is_empty() {
        return out;
    }
    out = ChartForm::from_terms(form.level(), form.chart(), form.degree(), reduced);
    out
}

/// One case of a batch run.
#[derive(Debug)]
pub struct GenerationCase {
    pub description: String,
    pub result: Result<RealizationCertificate, GenerationError>,
}

/// Batch report over all monomial `(n-3)`-form generators up to the
/// degree bound.
#[derive(Debug)]
pub struct GenerationReport {
    pub level: usize,
    pub degree_bound: u32,
    /// Bookkeeping carried by every batch: in the degree the contraction
    /// map targets, closed forms are exact because the homology group in
    /// degree `n-2` vanishes; the realization map is read as inverse to
    /// the contraction followed by `d`.
    pub header: String,
    pub cases: Vec<GenerationCase>,
}

impl GenerationReport {
    pub fn passes(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(&c.result, Ok(cert) if cert.is_valid()))
            .count()
    }

    pub fn failures(&self) -> usize {
        self.cases.len() - self.passes()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }
}

/// Run [`realize_exact`] over every monomial `(n-3)`-form generator with
/// coefficient degree up to the bound.
pub fn verify_generation(
    surface: &Hypersurface,
    degree_bound: u32,
    options: &GenOptions,
) -> GenerationReport {
    let n = surface.level();
    assert!(
        (3..=5).contains(&n),
        "batch runs are budgeted for levels 3 through 5"
    );
    let header = format!(
        "H_{}(X_{n}) = 0, so closed {}-forms are exact in the targeted degree; \
         the realization map is the inverse of the contraction isomorphism composed with d",
        n - 2,
        n - 2
    );
    debug_assert_eq!(crate::homology::closed_form(n).rank(n - 2), 0);
    let options = GenOptions {
        degree_bound,
        ..*options
    };
    let mut cases = Vec::new();
    for subset in wedge_subsets(n) {
        for monomial in monomials_up_to(n, degree_bound) {
            let coeff = Polynomial::monomial(n, monomial.clone(), Coeff::one());
            let alpha = ChartForm::from_terms(n, n, n - 3, vec![(subset.clone(), coeff.clone())]);
            let description = if subset.is_empty() {
                format!("alpha = {coeff}")
            } else {
                format!(
                    "alpha = {coeff} {}",
                    subset
                        .iter()
                        .map(|t| format!("dz{t}"))
                        .collect::<Vec<_>>()
                        .join("^")
                )
            };
            let result = realize_exact(surface, &alpha, &options);
            cases.push(GenerationCase {
                description,
                result,
            });
        }
    }
    GenerationReport {
        level: n,
        degree_bound,
        header,
        cases,
    }
}

fn wedge_subsets(n: usize) -> Vec<Vec<usize>> {
    // (n-3)-subsets of the chart coordinates 1..n-1.
    let k = n - 3;
    let vars: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    while let Some((idx, current)) = stack.pop() {
        if current.len() == k {
            out.push(current);
            continue;
        }
        if idx >= vars.len() {
            continue;
        }
        let mut with = current.clone();
        with.push(vars[idx]);
        stack.push((idx + 1, current));
        stack.push((idx + 1, with));
    }
    out.sort();
    out
}

fn monomials_up_to(n: usize, bound: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut stack = vec![(1usize, Exponent::constant(n))];
    while let Some((var, current)) = stack.pop() {
        if var > n {
            out.push(current);
            continue;
        }
        let remaining = bound - current.degree();
        for e in 0..=remaining {
            let mut exps: Vec<u32> = (1..=n).map(|v| current.exp(v)).collect();
            exps[var - 1] = e;
            stack.push((var + 1, Exponent::new(exps)));
        }
    }
    out.sort_by(|a, b| (a.degree(), a.exps()).cmp(&(b.degree(), b.exps())));
    out
}
