//! Homology tables and Euler ledgers for the family.
//!
//! Two independent engines produce the table of `H_*(X_n)`: a recurrence
//! that steps from level `n-2` by the explicit case rules of the inductive
//! argument, and a closed form. They are cross-checked against each other
//! and against the Euler recurrence `e(X_n) = 1 + e(X_{n-2}) - e(X_{n-1}^0)`.
//!
//! Every computed group is free of rank 0 or 1, so tables store ranks; the
//! torsion slots exist but must stay zero (the top group of a smooth
//! affine variety carries no torsion, and the case rules only ever produce
//! free groups).

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Variety {
    /// The hypersurface `X_n`.
    X(usize),
    /// The shifted divisor `X_n^0`.
    X0(usize),
    /// The surface `{p(x) + q(y) + xyz = 1}` with `k` and `l` simple roots
    /// of `1-p` and `1-q`.
    Xpq { k: u32, l: u32 },
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::X(n) => write!(f, "X_{n}"),
            Variety::X0(n) => write!(f, "X_{n}^0"),
            Variety::Xpq { k, l } => write!(f, "X_pq(k={k},l={l})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    LevelTooSmall { n: usize, minimum: usize },
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::LevelTooSmall { n, minimum } => {
                write!(f, "level {n} below the minimum {minimum}")
            }
        }
    }
}

impl std::error::Error for HomologyError {}

/// Ranks of `H_0 .. H_dim`; all groups are free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub variety: Variety,
    pub ranks: Vec<u32>,
    /// Torsion ranks, kept for shape; writing a nonzero entry is an error.
    pub torsion: Vec<u32>,
    /// Fundamental-group statement carried by the construction, when one
    /// is available: `Some(true)` means simply connected.
    pub pi1_trivial: Option<bool>,
}

impl HomologyTable {
    pub fn new(variety: Variety, ranks: Vec<u32>, pi1_trivial: Option<bool>) -> Self {
        let torsion = vec![0; ranks.len()];
        HomologyTable {
            variety,
            ranks,
            torsion,
            pi1_trivial,
        }
    }

    /// Complex dimension covered by the table.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, j: usize) -> u32 {
        self.ranks.get(j).copied().unwrap_or(0)
    }

    /// Alternating sum of ranks.
    pub fn euler_sum(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(j, r)| if j % 2 == 0 { *r as i64 } else { -(*r as i64) })
            .sum()
    }

    /// Aligned text rendering, one group per column.
    pub fn to_aligned(&self) -> String {
        let header: Vec<String> = (0..self.ranks.len()).map(|j| format!("H_{j}")).collect();
        let row: Vec<String> = self.ranks.iter().map(|r| group_name(*r)).collect();
        let widths: Vec<usize> = header
            .iter()
            .zip(&row)
            .map(|(h, r)| h.len().max(r.len()))
            .collect();
        let fmt_row = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        format!(
            "{}:\n  {}\n  {}",
            self.variety,
            fmt_row(&header),
            fmt_row(&row)
        )
    }

    /// A tabular block for papers.
    pub fn to_tex(&self) -> String {
        let cols = "c".repeat(self.ranks.len() + 1);
        let header: Vec<String> = (0..self.ranks.len()).map(|j| format!("$H_{{{j}}}$")).collect();
        let row: Vec<String> = self
            .ranks
            .iter()
            .map(|r| match r {
                0 => "$0$".to_string(),
                1 => "$\\mathbb{Z}$".to_string(),
                r => format!("$\\mathbb{{Z}}^{{{r}}}$"),
            })
            .collect();
        format!(
            "\\begin{{tabular}}{{{cols}}}\n${}$ & {} \\\\\n & {} \\\\\n\\end{{tabular}}",
            self.variety,
            header.join(" & "),
            row.join(" & ")
        )
    }
}

fn group_name(rank: u32) -> String {
    match rank {
        0 => "0".to_string(),
        1 => "Z".to_string(),
        r => format!("Z^{r}"),
    }
}

/// The five base tables of the family, transcribed exactly, plus their
/// Euler characteristics through [`euler`].
pub fn base_tables() -> Vec<HomologyTable> {
    vec![
        HomologyTable::new(Variety::X(3), vec![1, 0, 1], Some(true)),
        HomologyTable::new(Variety::X0(3), vec![1, 1, 1], None),
        HomologyTable::new(Variety::X(4), vec![1, 0, 0, 1], Some(true)),
        HomologyTable::new(Variety::X(5), vec![1, 0, 1, 0, 1], Some(true)),
        HomologyTable::new(Variety::X(6), vec![1, 0, 1, 1, 0, 1], Some(true)),
    ]
}

/// Closed-form table of `H_*(X_n)`.
///
/// Odd levels alternate `Z, 0, Z, ...` from `H_0 = Z`. Even levels
/// alternate upward from `H_0 = Z` through the lower half and downward
/// from `H_{n-1} = Z` through the upper half; in particular the group in
/// degree `n-2` always vanishes.
pub fn closed_form(n: usize) -> HomologyTable {
    assert!(n >= 3, "the family starts at level 3");
    let mut ranks = vec![0u32; n];
    if n % 2 == 1 {
        for (j, r) in ranks.iter_mut().enumerate() {
            *r = if j % 2 == 0 { 1 } else { 0 };
        }
    } else {
        for j in 0..=(n - 2) / 2 {
            ranks[j] = if j % 2 == 0 { 1 } else { 0 };
        }
        for j in n / 2..n {
            ranks[j] = if (n - 1 - j) % 2 == 0 { 1 } else { 0 };
        }
    }
    HomologyTable::new(Variety::X(n), ranks, Some(true))
}

/// Recurrence engine: compute `H_*(X_n)` from `H_*(X_{n-2})` by the
/// explicit case rules, starting from the closed base tables at levels 3
/// and 4. Connectedness pins `H_0`, the modification argument kills `H_1`
/// and `π_1`, and the remaining groups follow the alternating case
/// analysis; the hypotheses each case places on the lower level are
/// asserted, so a wrong table cannot propagate silently.
pub fn table_recursive(n: usize) -> Result<HomologyTable, HomologyError> {
    if n < 5 {
        return Err(HomologyError::LevelTooSmall { n, minimum: 5 });
    }
    let lower = if n - 2 < 5 {
        HomologyTable::new(
            Variety::X(n - 2),
            if n - 2 == 3 {
                vec![1, 0, 1]
            } else {
                vec![1, 0, 0, 1]
            },
            Some(true),
        )
    } else {
        table_recursive(n - 2)?
    };

    let mut ranks = vec![0u32; n];
    ranks[0] = 1; // connected
    ranks[1] = 0; // first homology dies under the modification

    if n % 2 == 1 {
        // Case analysis driven by the group three degrees down a level:
        // a vanishing pivot forces Z in degree j, a surviving pivot
        // forces 0. Each case also presumes an alternating block at the
        // lower level and draws conclusions about the neighbours; both
        // are checked so a wrong lower table cannot propagate silently.
        let dim = lower.dim();
        for j in 2..n {
            let pivot = if j >= 3 { lower.rank(j - 3) } else { 0 };
            ranks[j] = if pivot == 0 { 1 } else { 0 };
            let hypotheses: [(usize, u32); 3] = if pivot == 0 {
                [(j - 2, 1), (j - 1, 0), (j, 1)]
            } else {
                [(j - 2, 0), (j - 1, 1), (j, 0)]
            };
            for (idx, expected) in hypotheses {
                if idx <= dim {
                    assert_eq!(
                        lower.rank(idx),
                        expected,
                        "case hypothesis H_{idx} at level {}",
                        n - 2
                    );
                }
            }
        }
        for j in 2..n {
            let pivot = if j >= 3 { lower.rank(j - 3) } else { 0 };
            // Side conclusions of each case about the neighbours.
            let (side_low, side_high) = if pivot == 0 { (0, 0) } else { (1, 1) };
            assert_eq!(ranks[j - 1], side_low, "case conclusion below degree {j}");
            if j + 1 < n {
                assert_eq!(ranks[j + 1], side_high, "case conclusion above degree {j}");
            }
        }
    } else {
        // Upper block: alternate down from the top group.
        ranks[n - 1] = 1;
        for j in (n / 2 + 1..n - 1).rev() {
            ranks[j] = if (n - 1 - j) % 2 == 0 { 1 } else { 0 };
        }
        // Lower block: alternate up from degree 0.
        for (j, r) in ranks.iter_mut().enumerate().take((n - 2) / 2).skip(2) {
            *r = if j % 2 == 0 { 1 } else { 0 };
        }
        // Middle pair, resolved by the parity of the middle of the lower
        // table; the two middle groups down a level must agree, and each
        // case presumes the group just below them.
        let m1 = lower.rank((n - 4) / 2);
        let m2 = lower.rank((n - 2) / 2);
        assert_eq!(m1, m2, "middle groups of level {} disagree", n - 2);
        if (n - 4) / 2 >= 1 {
            let below = lower.rank((n - 4) / 2 - 1);
            assert_eq!(below, 1 - m1, "middle case hypothesis at level {}", n - 2);
        }
        let middle = if m1 == 0 { 1 } else { 0 };
        ranks[n / 2] = middle;
        ranks[(n - 2) / 2] = middle;
    }
    Ok(HomologyTable::new(Variety::X(n), ranks, Some(true)))
}

/// Euler ledger for one level: the characteristic of `X_n`, of the shifted
/// divisor `X_n^0`, and the recurrence trace that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerLedger {
    pub level: usize,
    pub e_x: i64,
    pub e_x0: i64,
    pub trace: Vec<String>,
}

/// Euler characteristics by the recurrences
/// `e(X_n) = 1 + e(X_{n-2}) - e(X_{n-1}^0)` and
/// `e(X_n^0) = 1 - e(X_{n-1}^0)`, with closed forms `(n+1)/2` for odd and
/// `0` for even levels.
pub fn euler(n: usize) -> EulerLedger {
    assert!(n >= 3, "the family starts at level 3");
    let mut trace = Vec::new();
    // e(X_k^0) alternates 1, 0, 1, ... from e(X_3^0) = 1.
    let e_x0 = |k: usize| -> i64 {
        if k % 2 == 1 {
            1
        } else {
            0
        }
    };
    let mut e = vec![0i64; n + 1];
    if n >= 3 {
        e[3] = 2;
        trace.push("e(X_3) = 2".to_string());
    }
    if n >= 4 {
        e[4] = 0;
        trace.push("e(X_4) = 0".to_string());
    }
    for k in 5..=n {
        e[k] = 1 + e[k - 2] - e_x0(k - 1);
        trace.push(format!(
            "e(X_{k}) = 1 + e(X_{}) - e(X_{}^0) = 1 + {} - {} = {}",
            k - 2,
            k - 1,
            e[k - 2],
            e_x0(k - 1),
            e[k]
        ));
    }
    for k in 4..=n {
        debug_assert_eq!(e_x0(k), 1 - e_x0(k - 1));
    }
    let closed = if n % 2 == 1 { (n as i64 + 1) / 2 } else { 0 };
    assert_eq!(e[n], closed, "recurrence disagrees with the closed form");
    trace.push(format!("closed form: e(X_{n}) = {closed}"));
    EulerLedger {
        level: n,
        e_x: e[n],
        e_x0: e_x0(n),
        trace,
    }
}

/// Table for the surface `{p(x) + q(y) + xyz = 1}` where `1-p` has `k` and
/// `1-q` has `l` simple roots: `(Z, 0, Z^{k+l-1})` with Euler sum `k+l`.
pub fn xpq_table(k: u32, l: u32) -> HomologyTable {
    assert!(k >= 1 && l >= 1, "both root counts must be at least 1");
    // Only the first homology statement is carried for this variant.
    HomologyTable::new(Variety::Xpq { k, l }, vec![1, 0, k + l - 1], None)
}

/// Cross-check report over `5 <= n <= n_max`.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub n_max: usize,
    pub levels_checked: Vec<usize>,
    pub failures: Vec<String>,
    pub all_pass: bool,
}

/// Both engines agree, alternating sums match the Euler ledger, and the
/// group in degree `n-2` vanishes at every level.
pub fn cross_check(n_max: usize) -> CrossCheck {
    assert!(n_max >= 6, "cross-checks need at least level 6");
    let mut failures = Vec::new();
    let mut levels = Vec::new();
    for n in 5..=n_max {
        levels.push(n);
        let recursive = match table_recursive(n) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("level {n}: {e}"));
                continue;
            }
        };
        let closed = closed_form(n);
        if recursive != closed {
            failures.push(format!(
                "level {n}: engines disagree ({:?} vs {:?})",
                recursive.ranks, closed.ranks
            ));
        }
        let ledger = euler(n);
        if recursive.euler_sum() != ledger.e_x {
            failures.push(format!(
                "level {n}: alternating sum {} differs from e = {}",
                recursive.euler_sum(),
                ledger.e_x
            ));
        }
        if recursive.rank(n - 2) != 0 {
            failures.push(format!("level {n}: group in degree {} is nonzero", n - 2));
        }
        if recursive.torsion.iter().any(|t| *t != 0) {
            failures.push(format!("level {n}: unexpected torsion"));
        }
    }
    CrossCheck {
        n_max,
        levels_checked: levels,
        all_pass: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_tables_are_transcribed_exactly() {
        let tables = base_tables();
        assert_eq!(tables[0].ranks, vec![1, 0, 1]);
        assert_eq!(tables[1].ranks, vec![1, 1, 1]);
        assert_eq!(tables[2].ranks, vec![1, 0, 0, 1]);
        assert_eq!(tables[3].ranks, vec![1, 0, 1, 0, 1]);
        assert_eq!(tables[4].ranks, vec![1, 0, 1, 1, 0, 1]);
        // The shifted divisor table carries its own Euler value.
        assert_eq!(tables[1].euler_sum(), 1);
        assert_eq!(tables[1].pi1_trivial, None);
    }

    #[test]
    fn recursive_engine_reproduces_the_bases() {
        assert_eq!(table_recursive(5).unwrap().ranks, vec![1, 0, 1, 0, 1]);
        assert_eq!(table_recursive(6).unwrap().ranks, vec![1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(4).ranks, vec![1, 0, 0, 1]);
        assert_eq!(closed_form(7).ranks, vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(closed_form(6).rank(4), 0);
        assert_eq!(closed_form(8).ranks, vec![1, 0, 1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn engines_agree_up_to_twenty() {
        let check = cross_check(20);
        assert!(check.all_pass, "failures: {:?}", check.failures);
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler(3).e_x, 2);
        assert_eq!(euler(4).e_x, 0);
        assert_eq!(euler(5).e_x, 3);
        assert_eq!(euler(6).e_x, 0);
        assert_eq!(euler(21).e_x, 11);
        assert_eq!(euler(3).e_x0, 1);
        assert_eq!(euler(4).e_x0, 0);
    }

    #[test]
    fn euler_trace_shows_the_recurrence() {
        let ledger = euler(5);
        assert!(ledger
            .trace
            .iter()
            .any(|line| line.contains("1 + 2 - 0 = 3")));
        let ledger6 = euler(6);
        assert!(ledger6
            .trace
            .iter()
            .any(|line| line.contains("1 + 0 - 1 = 0")));
    }

    #[test]
    fn xpq_examples() {
        assert_eq!(xpq_table(1, 1).ranks, vec![1, 0, 1]);
        assert_eq!(xpq_table(2, 1).ranks, vec![1, 0, 2]);
        let t = xpq_table(2, 1);
        assert_eq!(t.euler_sum(), 3);
        assert_eq!(xpq_table(3, 2).euler_sum(), 5);
    }

    #[test]
    fn structural_invariants() {
        for n in 3..=20 {
            let t = closed_form(n);
            assert_eq!(t.rank(0), 1, "connectedness at level {n}");
            assert_eq!(t.rank(1), 0, "first homology at level {n}");
            assert_eq!(t.rank(n - 2), 0, "degree n-2 at level {n}");
            assert_eq!(t.euler_sum(), euler(n).e_x, "euler at level {n}");
            assert!(t.torsion.iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn rendering() {
        let t = closed_form(4);
        let text = t.to_aligned();
        assert!(text.contains("X_4"));
        assert!(text.contains("H_3"));
        let tex = t.to_tex();
        assert!(tex.contains("\\begin{tabular}"));
        assert!(tex.contains("\\mathbb{Z}"));
    }
}
