//! Buchberger-based ideal certificates: reduced bases, normal forms,
//! emptiness (`1 ∈ I`), ideal equality, and staircase Krull dimension.
//!
//! The instances handled here are small, so the implementation favours
//! clarity: plain Buchberger with the sugar selection strategy and both
//! classical pair criteria. Every computation runs against an explicit step
//! budget; exhausting it is an error, never a silent wrong answer.

use crate::poly::{Coeff, Exponent, MonomialOrder, Polynomial};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

/// Default number of reduction steps allowed per basis computation.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    /// The configured reduction budget ran out before the basis stabilised.
    BudgetExceeded { budget: u64 },
    /// An operation that requires a proper ideal was given the unit ideal.
    UnitIdeal,
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::BudgetExceeded { budget } => {
                write!(f, "step budget of {budget} reductions exceeded")
            }
            GroebnerError::UnitIdeal => write!(f, "the ideal is the unit ideal"),
        }
    }
}

impl std::error::Error for GroebnerError {}

/// A finitely generated ideal in `Q[z1..zn]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; the remaining ones must share `nvars`.
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "variable-count mismatch");
        }
        Ideal { nvars, gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }
}

/// A reduced Groebner basis together with the order that produced it.
///
/// Reduced means: leading coefficients are 1, no leading term divides
/// another, and no term of any element is divisible by the leading term of
/// another element. The reduced basis of an ideal is unique for a fixed
/// order, so equality of ideals is equality of bases.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub nvars: usize,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn contains_constant(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

struct Budget {
    remaining: u64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget {
            remaining: limit,
            limit,
        }
    }

    fn spend(&mut self) -> Result<(), GroebnerError> {
        if self.remaining == 0 {
            return Err(GroebnerError::BudgetExceeded { budget: self.limit });
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Polynomial as a term list sorted descending under the active order.
#[derive(Clone)]
struct OPoly {
    terms: Vec<(Exponent, Coeff)>,
}

impl OPoly {
    fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Exponent, Coeff)> = p.terms().to_vec();
        terms.sort_unstable_by(|(a, _), (b, _)| order.cmp(b, a));
        OPoly { terms }
    }

    fn into_polynomial(self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Exponent, Coeff) {
        &self.terms[0]
    }

    fn sugar(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first().cloned() {
            if !lc.is_one() {
                for (_, c) in &mut self.terms {
                    *c /= &lc;
                }
            }
        }
    }

    /// `self - c * x^m * g`, merging sorted term lists.
    fn sub_scaled(&self, c: &Coeff, m: &Exponent, g: &OPoly, order: &MonomialOrder) -> OPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < g.terms.len() {
            if i >= self.terms.len() {
                let (gm, gc) = &g.terms[j];
                out.push((gm.mul(m), -(gc * c)));
                j += 1;
                continue;
            }
            if j >= g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let shifted = g.terms[j].0.mul(m);
            match order.cmp(&self.terms[i].0, &shifted) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted, -(&g.terms[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &self.terms[i].1 - &(&g.terms[j].1 * c);
                    if !coeff.is_zero() {
                        out.push((shifted, coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OPoly { terms: out }
    }
}

/// Fully reduce `f` modulo the basis: no remaining term is divisible by any
/// basis leading term. The result is the unique normal form when the basis
/// is a Groebner basis.
fn reduce_full(
    f: &OPoly,
    basis: &[OPoly],
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<OPoly, GroebnerError> {
    let mut rem = f.clone();
    let mut frozen = 0; // terms checked against every divisor already
    while frozen < rem.terms.len() {
        let (tm, tc) = rem.terms[frozen].clone();
        let reducer = basis
            .iter()
            .find(|g| !g.is_zero() && g.leading().0.divides(&tm));
        match reducer {
            Some(g) => {
                budget.spend()?;
                let (gm, gc) = g.leading();
                let q = tm.try_div(gm).expect("divisibility checked");
                let c = &tc / gc;
                rem = rem.sub_scaled(&c, &q, g, order);
            }
            None => frozen += 1,
        }
    }
    Ok(rem)
}

fn s_poly(f: &OPoly, g: &OPoly, order: &MonomialOrder) -> OPoly {
    let (fm, fc) = f.leading();
    let (gm, gc) = g.leading();
    let lcm = fm.lcm(gm);
    let fq = lcm.try_div(fm).expect("lcm divisibility");
    let gq = lcm.try_div(gm).expect("lcm divisibility");
    // f/lc(f) * lcm/lt(f) - g/lc(g) * lcm/lt(g)
    let scaled_f = OPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&fq), c / fc))
            .collect(),
    };
    scaled_f.sub_scaled(&(Coeff::one() / gc), &gq, g, order)
}

#[derive(Clone, PartialEq, Eq)]
struct Pair {
    sugar: u32,
    lcm_degree: u32,
    i: usize,
    j: usize,
    lcm: Exponent,
}

impl Pair {
    fn key(&self) -> (u32, u32, usize, usize) {
        (self.sugar, self.lcm_degree, self.i, self.j)
    }
}

/// Compute the reduced Groebner basis of `ideal` with respect to `order`.
///
/// Termination is guaranteed; the budget bounds the number of single
/// reduction steps and aborts runaway instances with a distinct error.
/// The computation is idempotent on its own output.
pub fn buchberger(
    ideal: &Ideal,
    order: &MonomialOrder,
    budget: u64,
) -> Result<GroebnerBasis, GroebnerError> {
    assert!(!ideal.generators().is_empty(), "empty generator list");
    let mut budget = Budget::new(budget);
    let mut basis: Vec<OPoly> = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut o = OPoly::from_polynomial(g, order);
            o.make_monic();
            o
        })
        .collect();
    let mut sugars: Vec<u32> = basis.iter().map(|g| g.sugar()).collect();

    let mut pending: Vec<Pair> = Vec::new();
    let mut in_queue: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |basis: &[OPoly],
                         sugars: &[u32],
                         pending: &mut Vec<Pair>,
                         in_queue: &mut HashSet<(usize, usize)>,
                         i: usize,
                         j: usize| {
        let (li, _) = basis[i].leading();
        let (lj, _) = basis[j].leading();
        let lcm = li.lcm(lj);
        let sugar = (sugars[i] + (lcm.degree() - li.degree()))
            .max(sugars[j] + (lcm.degree() - lj.degree()));
        pending.push(Pair {
            sugar,
            lcm_degree: lcm.degree(),
            i,
            j,
            lcm,
        });
        in_queue.insert((i, j));
    };

    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&basis, &sugars, &mut pending, &mut in_queue, i, j);
        }
    }

    while !pending.is_empty() {
        // Sugar selection: lowest sugar first, ties broken deterministically.
        let best = pending
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| p.key())
            .map(|(k, _)| k)
            .unwrap();
        let pair = pending.swap_remove(best);
        in_queue.remove(&(pair.i, pair.j));

        let (li, _) = basis[pair.i].leading();
        let (lj, _) = basis[pair.j].leading();

        // First criterion: coprime leading terms reduce to zero.
        if li.mul(lj) == pair.lcm {
            continue;
        }
        // Chain criterion: skip when some other leading term divides the
        // lcm and both companion pairs have already been handled.
        let chained = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading().0.divides(&pair.lcm)
                && !in_queue.contains(&key(pair.i, k))
                && !in_queue.contains(&key(pair.j, k))
        });
        if chained {
            continue;
        }

        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let mut rem = reduce_full(&s, &basis, order, &mut budget)?;
        if rem.is_zero() {
            continue;
        }
        rem.make_monic();
        let rem_sugar = pair.sugar.max(rem.sugar());
        let constant = rem.leading().0.is_constant();
        basis.push(rem);
        sugars.push(rem_sugar);
        let new = basis.len() - 1;
        if constant {
            // The ideal is the unit ideal; no further pairs matter.
            break;
        }
        for i in 0..new {
            push_pair(&basis, &sugars, &mut pending, &mut in_queue, i, new);
        }
    }

    let reduced = interreduce(basis, order, &mut budget)?;
    let mut out: Vec<Polynomial> = reduced
        .into_iter()
        .map(|g| g.into_polynomial(ideal.nvars()))
        .collect();
    out.sort_by(|a, b| {
        let la = a.leading_term(order).expect("nonzero").0;
        let lb = b.leading_term(order).expect("nonzero").0;
        order.cmp(la, lb)
    });
    Ok(GroebnerBasis {
        order: order.clone(),
        nvars: ideal.nvars(),
        basis: out,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn interreduce(
    mut basis: Vec<OPoly>,
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<OPoly>, GroebnerError> {
    // Minimalise: drop elements whose leading term another one divides.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] || basis[i].is_zero() {
            keep[i] = false;
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && !basis[j].is_zero() {
                let li = basis[i].leading().0.clone();
                let lj = basis[j].leading().0.clone();
                if lj.divides(&li) && (li != lj || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<OPoly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Tail-reduce each element against the others.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = reduce_full(&minimal[i], &others, order, budget)?;
        r.make_monic();
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    Ok(reduced)
}

/// The unique remainder of `f` modulo the basis; zero iff `f` lies in the
/// ideal the basis generates.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    assert_eq!(f.nvars(), basis.nvars, "variable-count mismatch");
    let elements: Vec<OPoly> = basis
        .basis
        .iter()
        .map(|g| OPoly::from_polynomial(g, &basis.order))
        .collect();
    let mut budget = Budget::new(u64::MAX);
    reduce_full(
        &OPoly::from_polynomial(f, &basis.order),
        &elements,
        &basis.order,
        &mut budget,
    )
    .expect("normal form within budget")
    .into_polynomial(f.nvars())
}

/// Emptiness certificate: the basis together with the `1 ∈ I` verdict.
#[derive(Debug, Clone)]
pub struct EmptinessCertificate {
    pub basis: GroebnerBasis,
    pub contains_one: bool,
}

/// Decide `1 ∈ I` by reduction; the certificate records the basis.
pub fn contains_one(
    ideal: &Ideal,
    order: &MonomialOrder,
    budget: u64,
) -> Result<EmptinessCertificate, GroebnerError> {
    let basis = buchberger(ideal, order, budget)?;
    let verdict = basis.contains_constant();
    debug_assert_eq!(
        verdict,
        normal_form(&Polynomial::one(ideal.nvars()), &basis).is_zero()
    );
    Ok(EmptinessCertificate {
        basis,
        contains_one: verdict,
    })
}

/// Ideal equality through uniqueness of the reduced basis.
pub fn ideal_equal(
    a: &Ideal,
    b: &Ideal,
    order: &MonomialOrder,
    budget: u64,
) -> Result<bool, GroebnerError> {
    assert_eq!(a.nvars(), b.nvars(), "variable-count mismatch");
    let ga = buchberger(a, order, budget)?;
    let gb = buchberger(b, order, budget)?;
    Ok(ga.elements() == gb.elements())
}

/// Krull dimension of `Q[z]/I`, computed from the staircase of leading
/// terms: the largest set of variables meeting the support of no leading
/// monomial is a maximal independent set.
pub fn dimension(
    ideal: &Ideal,
    order: &MonomialOrder,
    budget: u64,
) -> Result<usize, GroebnerError> {
    let basis = buchberger(ideal, order, budget)?;
    if basis.contains_constant() {
        return Err(GroebnerError::UnitIdeal);
    }
    let n = ideal.nvars();
    assert!(n <= 16, "staircase search limited to 16 variables");
    let supports: Vec<u32> = basis
        .elements()
        .iter()
        .map(|g| {
            let lt = g.leading_term(order).expect("nonzero").0;
            lt.support().iter().fold(0u32, |acc, v| acc | 1 << (v - 1))
        })
        .collect();
    let mut best = 0;
    for subset in 0u32..(1 << n) {
        if supports.iter().all(|s| s & !subset != 0) {
            best = best.max(subset.count_ones() as usize);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn gb(gens: &[&str], n: usize) -> GroebnerBasis {
        let ideal = Ideal::new(n, gens.iter().map(|s| p(s, n)).collect());
        buchberger(&ideal, &MonomialOrder::degrevlex(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn already_a_basis() {
        let basis = gb(&["z1", "z2"], 2);
        assert_eq!(basis.elements(), &[p("z1", 2), p("z2", 2)]);
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let basis = gb(&["z1*z2 - 1", "z1"], 2);
        assert_eq!(basis.elements(), &[p("1", 2)]);
    }

    #[test]
    fn idempotent_on_its_own_output() {
        let basis = gb(&["z1^2 + z2", "z1*z2 - 1"], 2);
        let again = buchberger(
            &Ideal::new(2, basis.elements().to_vec()),
            &MonomialOrder::degrevlex(),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(basis.elements(), again.elements());
    }

    #[test]
    fn s_polynomials_reduce_to_zero_post_hoc() {
        let basis = gb(&["z1^2*z3 - z2", "z1*z2 - z3", "z2^2 - z1*z3"], 3);
        let ord = MonomialOrder::degrevlex();
        let elements: Vec<OPoly> = basis
            .elements()
            .iter()
            .map(|g| OPoly::from_polynomial(g, &ord))
            .collect();
        let mut budget = Budget::new(u64::MAX);
        for i in 0..elements.len() {
            for j in (i + 1)..elements.len() {
                let s = s_poly(&elements[i], &elements[j], &ord);
                let r = reduce_full(&s, &elements, &ord, &mut budget).unwrap();
                assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn random_bases_verify_post_hoc() {
        // The defining property, rechecked from scratch on random ideals:
        // every S-polynomial reduces to zero against the computed basis,
        // and every original generator lies in the ideal it spans.
        let ord = MonomialOrder::degrevlex();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..40 {
            let ngens = rng.gen_range(1..=3);
            let gens: Vec<Polynomial> = (0..ngens)
                .map(|_| {
                    let mut g = random_poly(&mut rng, 3);
                    if g.is_zero() {
                        g = Polynomial::var(3, 1);
                    }
                    g
                })
                .collect();
            let ideal = Ideal::new(3, gens.clone());
            let basis = buchberger(&ideal, &ord, DEFAULT_BUDGET).unwrap();
            for g in &gens {
                assert!(normal_form(g, &basis).is_zero(), "generator escaped");
            }
            let elements: Vec<OPoly> = basis
                .elements()
                .iter()
                .map(|g| OPoly::from_polynomial(g, &ord))
                .collect();
            let mut budget = Budget::new(u64::MAX);
            for i in 0..elements.len() {
                for j in (i + 1)..elements.len() {
                    let s = s_poly(&elements[i], &elements[j], &ord);
                    let r = reduce_full(&s, &elements, &ord, &mut budget).unwrap();
                    assert!(r.is_zero(), "S-polynomial survived reduction");
                }
            }
        }
    }

    #[test]
    fn lex_and_deglex_bases_are_consistent() {
        // The same ideal under three orders: membership of the original
        // generators must hold in every basis.
        let gens = vec![p("z1^2 + z2*z3 - 1", 3), p("z1*z3 - z2", 3)];
        for order in [
            MonomialOrder::degrevlex(),
            MonomialOrder::deglex(),
            MonomialOrder::lex(),
        ] {
            let basis = buchberger(&Ideal::new(3, gens.clone()), &order, DEFAULT_BUDGET).unwrap();
            for g in &gens {
                assert!(normal_form(g, &basis).is_zero());
            }
            assert!(!normal_form(&Polynomial::one(3), &basis).is_zero());
        }
    }

    #[test]
    fn normal_form_examples() {
        let basis = gb(&["z1 + z3 + z1*z2*z3 - 1"], 3);
        assert!(normal_form(&p("z1 + z3 + z1*z2*z3 - 1", 3), &basis).is_zero());
        let one_basis = gb(&["1"], 3);
        assert!(normal_form(&Polynomial::one(3), &one_basis).is_zero());
        let z2_basis = gb(&["z2"], 3);
        assert_eq!(normal_form(&p("z1", 3), &z2_basis), p("z1", 3));
    }

    #[test]
    fn normal_form_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let basis = gb(&["z1^2 - z2", "z2^2 - z3"], 3);
        for _ in 0..100 {
            let f = random_poly(&mut rng, 3);
            let g = random_poly(&mut rng, 3);
            let a = ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3));
            let b = ratio(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3));
            let lhs = normal_form(&f.scale(&a).add(&g.scale(&b)), &basis);
            let rhs = normal_form(&f, &basis)
                .scale(&a)
                .add(&normal_form(&g, &basis).scale(&b));
            assert_eq!(lhs, rhs);
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> Polynomial {
        let nterms = rng.gen_range(0..=6);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2)).collect();
            terms.push((
                Exponent::new(exps),
                ratio(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)),
            ));
        }
        Polynomial::from_terms(nvars, terms)
    }

    #[test]
    fn contains_one_examples() {
        let ord = MonomialOrder::degrevlex();
        let unit = Ideal::new(2, vec![p("z1*z2 - 1", 2), p("z1", 2)]);
        assert!(contains_one(&unit, &ord, DEFAULT_BUDGET).unwrap().contains_one);
        let proper = Ideal::new(2, vec![p("z1", 2)]);
        assert!(!contains_one(&proper, &ord, DEFAULT_BUDGET).unwrap().contains_one);
    }

    #[test]
    fn ideal_equal_handles_scaling_and_distinguishes_lines() {
        let ord = MonomialOrder::degrevlex();
        let a = Ideal::new(2, vec![p("z1", 2)]);
        let b = Ideal::new(2, vec![p("2*z1", 2)]);
        let c = Ideal::new(2, vec![p("z2", 2)]);
        assert!(ideal_equal(&a, &b, &ord, DEFAULT_BUDGET).unwrap());
        assert!(!ideal_equal(&a, &c, &ord, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn ideal_equal_is_an_equivalence_on_instances() {
        let ord = MonomialOrder::degrevlex();
        let ideals = [
            Ideal::new(2, vec![p("z1 + z2", 2), p("z2", 2)]),
            Ideal::new(2, vec![p("z1", 2), p("z2", 2)]),
            Ideal::new(2, vec![p("z2", 2), p("3*z1 - z2", 2)]),
            Ideal::new(2, vec![p("z1*z2", 2)]),
        ];
        for a in &ideals {
            assert!(ideal_equal(a, a, &ord, DEFAULT_BUDGET).unwrap());
        }
        for a in &ideals {
            for b in &ideals {
                assert_eq!(
                    ideal_equal(a, b, &ord, DEFAULT_BUDGET).unwrap(),
                    ideal_equal(b, a, &ord, DEFAULT_BUDGET).unwrap()
                );
            }
        }
        // The first three agree, the monomial ideal differs.
        for a in &ideals[..3] {
            for b in &ideals[..3] {
                assert!(ideal_equal(a, b, &ord, DEFAULT_BUDGET).unwrap());
            }
            assert!(!ideal_equal(a, &ideals[3], &ord, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn dimension_examples() {
        let ord = MonomialOrder::degrevlex();
        let line = Ideal::new(3, vec![p("z1", 3), p("z2", 3)]);
        assert_eq!(dimension(&line, &ord, DEFAULT_BUDGET).unwrap(), 1);
        let hypersurface = Ideal::new(3, vec![p("z1 + z3 + z1*z2*z3 - 1", 3)]);
        assert_eq!(dimension(&hypersurface, &ord, DEFAULT_BUDGET).unwrap(), 2);
        let unit = Ideal::new(2, vec![p("1", 2)]);
        assert_eq!(
            dimension(&unit, &ord, DEFAULT_BUDGET),
            Err(GroebnerError::UnitIdeal)
        );
    }

    #[test]
    fn principal_ideal_dimension() {
        let ord = MonomialOrder::degrevlex();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            let mut f = random_poly(&mut rng, 3);
            if f.is_constant() {
                f = f.add(&p("z1*z2", 3));
            }
            let ideal = Ideal::new(3, vec![f]);
            assert_eq!(dimension(&ideal, &ord, DEFAULT_BUDGET).unwrap(), 2);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let ideal = Ideal::new(
            3,
            vec![p("z1^2*z3 - z2", 3), p("z1*z2 - z3", 3), p("z2^2 - z1*z3", 3)],
        );
        let result = buchberger(&ideal, &MonomialOrder::degrevlex(), 2);
        assert_eq!(result.err(), Some(GroebnerError::BudgetExceeded { budget: 2 }));
    }
}
