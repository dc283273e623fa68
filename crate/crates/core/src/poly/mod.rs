//! Sparse multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are immutable values in canonical form: no zero coefficients
//! are stored, terms are kept sorted ascending under the default graded
//! reverse lexicographic order, and the variable count is fixed per value.
//! Equality is structural. All arithmetic is exact.

mod monomial;
pub(crate) mod text;

pub use monomial::{Exponent, MonomialOrder, OrderKind};
pub use text::{parse_polynomial, ParseError};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Coeff = BigRational;

/// Build an exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an exact rational from an integer.
pub fn int(num: i64) -> Coeff {
    BigRational::from(BigInt::from(num))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    /// Terms sorted ascending under the canonical degrevlex order.
    terms: Vec<(Exponent, Coeff)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Coeff::one())
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        Polynomial::from_terms(nvars, vec![(Exponent::constant(nvars), c)])
    }

    /// The variable `z_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial::from_terms(nvars, vec![(Exponent::var(nvars, i), Coeff::one())])
    }

    /// The monomial `c * m`.
    pub fn monomial(nvars: usize, m: Exponent, c: Coeff) -> Self {
        assert_eq!(m.nvars(), nvars, "variable-count mismatch");
        Polynomial::from_terms(nvars, vec![(m, c)])
    }

    /// Normalise an arbitrary term list into canonical form.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Exponent, Coeff)>) -> Self {
        let ord = MonomialOrder::degrevlex();
        for (m, _) in &terms {
            assert_eq!(m.nvars(), nvars, "variable-count mismatch");
        }
        terms.sort_unstable_by(|(a, _), (b, _)| ord.cmp(a, b));
        let mut canonical: Vec<(Exponent, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some((prev_m, prev_c)) = canonical.last_mut() {
                if *prev_m == m {
                    *prev_c += c;
                    if prev_c.is_zero() {
                        canonical.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                canonical.push((m, c));
            }
        }
        Polynomial {
            nvars,
            terms: canonical,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_constant())
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> &[(Exponent, Coeff)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponent, &Coeff)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .map(|(m, c)| (m, c))
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, m: &Exponent) -> Coeff {
        self.terms
            .iter()
            .find(|(e, _)| e == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Add an integer constant.
    pub fn add_int(&self, c: i64) -> Polynomial {
        self.add(&Polynomial::constant(self.nvars, int(c)))
    }

    /// Formal partial derivative with respect to `z_i` (1-based).
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        assert!(
            1 <= i && i <= self.nvars,
            "variable index {i} out of range 1..={}",
            self.nvars
        );
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                let mut exps: Vec<u32> = m.exps().to_vec();
                exps[i - 1] -= 1;
                (Exponent::new(exps), c * int(e as i64))
            })
            .collect();
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Exact composition `self[z_i := q]`.
    pub fn substitute(&self, i: usize, q: &Polynomial) -> Polynomial {
        assert!(
            1 <= i && i <= self.nvars,
            "variable index {i} out of range 1..={}",
            self.nvars
        );
        assert_eq!(self.nvars, q.nvars, "variable-count mismatch");
        let max_e = self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0);
        // Slices of `self` by the exponent of z_i, with that exponent removed.
        let mut slices = vec![Vec::new(); (max_e + 1) as usize];
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let mut exps: Vec<u32> = m.exps().to_vec();
            exps[i - 1] = 0;
            slices[e as usize].push((Exponent::new(exps), c.clone()));
        }
        let mut out = Polynomial::zero(self.nvars);
        let mut q_pow = Polynomial::one(self.nvars);
        for (e, slice) in slices.into_iter().enumerate() {
            if !slice.is_empty() {
                let part = Polynomial::from_terms(self.nvars, slice);
                out = out.add(&part.mul(&q_pow));
            }
            if e < max_e as usize {
                q_pow = q_pow.mul(q);
            }
        }
        out
    }

    /// Exact single-divisor division: `Some(q)` with `self = q * d` when the
    /// multivariate division remainder is zero, `None` otherwise.
    pub fn divide_exact(&self, d: &Polynomial, order: &MonomialOrder) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, d.nvars, "variable-count mismatch");
        let (dm, dc) = d.leading_term(order).expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot: Vec<(Exponent, Coeff)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term(order).expect("nonzero remainder");
            let t = rm.try_div(&dm)?;
            let c = rc / &dc;
            quot.push((t.clone(), c.clone()));
            rem = rem.sub(&d.mul(&Polynomial::monomial(self.nvars, t, c)));
        }
        Some(Polynomial::from_terms(self.nvars, quot))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, e) in m.exps().iter().enumerate() {
                for _ in 0..*e {
                    t *= &point[k];
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (k, e) in m.exps().iter().enumerate() {
                t *= point[k].powi(*e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Embed into a ring with more variables by zero-padding exponents.
    pub fn embed(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars, "cannot embed into fewer variables");
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.pad(nvars), c.clone()))
                .collect(),
        }
    }

    /// Drop trailing unused variables. Panics if any dropped variable occurs.
    pub fn truncate(&self, nvars: usize) -> Polynomial {
        assert!(nvars <= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert!(
                    m.exps()[nvars..].iter().all(|e| *e == 0),
                    "polynomial uses a dropped variable"
                );
                (Exponent::new(m.exps()[..nvars].to_vec()), c.clone())
            })
            .collect();
        Polynomial::from_terms(nvars, terms)
    }

    /// Reindex variables: `keep[k]` is the old 1-based index mapped to the
    /// new variable `z_{k+1}`. Panics if a discarded variable occurs.
    pub fn compress(&self, keep: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; keep.len()];
                let mut seen = 0;
                for (k, old) in keep.iter().enumerate() {
                    exps[k] = m.exp(*old);
                    seen += exps[k];
                }
                assert_eq!(seen, m.degree(), "polynomial uses a discarded variable");
                (Exponent::new(exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(keep.len(), terms)
    }

    /// Render under an explicit order (terms descending).
    pub fn to_text(&self, order: &MonomialOrder) -> String {
        text::format_polynomial(self, order)
    }
}

pub(crate) fn rational_to_f64(c: &Coeff) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for huge values.
        let n = c.numer().to_f64().unwrap_or(if c.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&MonomialOrder::degrevlex()))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} vars, {})", self.nvars, self)
    }
}
