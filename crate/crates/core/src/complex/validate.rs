use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::PolyComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    /// `∂_k ∘ ∂_{k+1} = 0` for every `k`.
    BoundarySquaredZero,
    /// Every `(n-1)`-cell has the same number `N` of `(n-2)`-faces.
    Regularity,
    /// Every `(n-1)`-cell is a face of exactly two `n`-cells.
    TwoCofaces,
    /// Distinct `(n-1)`-cells share at most one `(n-2)`-face and at most one `n`-cell.
    PairUniqueness,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::BoundarySquaredZero => "boundary_squared_zero",
            Invariant::Regularity => "regularity",
            Invariant::TwoCofaces => "two_cofaces",
            Invariant::PairUniqueness => "pair_uniqueness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub invariant: Invariant,
    pub passed: bool,
    /// Offending cell indices; their degree depends on the invariant
    /// (`k+1` for the boundary check, `n-1` otherwise).
    pub offending: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<InvariantCheck>,
    /// Modal face count of the `(n-1)`-cells.
    pub regularity: Option<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, inv: Invariant) -> &InvariantCheck {
        self.checks
            .iter()
            .find(|c| c.invariant == inv)
            .expect("all invariants are checked")
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} ({})", c.invariant, c.detail))
            .collect();
        if failed.is_empty() {
            "all invariants hold".into()
        } else {
            failed.join("; ")
        }
    }
}

pub fn validate(x: &PolyComplex) -> ValidationReport {
    let n = x.dim();
    let mut checks = Vec::with_capacity(4);

    // ∂∂ = 0, cell by cell.
    let mut bad = Vec::new();
    let mut bad_degrees = BTreeSet::new();
    for k in 2..=n {
        for cell in 0..x.count(k) {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(f, s) in x.boundary(k, cell) {
                for &(g, t) in x.boundary(k - 1, f) {
                    *acc.entry(g).or_default() += i64::from(s) * i64::from(t);
                }
            }
            if acc.values().any(|&v| v != 0) {
                bad.push(cell);
                bad_degrees.insert(k);
            }
        }
    }
    checks.push(InvariantCheck {
        invariant: Invariant::BoundarySquaredZero,
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "ok".into()
        } else {
            format!(
                "{} cells in degrees {:?} have nonzero ∂∂",
                bad.len(),
                bad_degrees
            )
        },
        offending: bad,
    });

    // N-regularity: compare every (n-1)-cell against the modal face count.
    let sizes: Vec<usize> = (0..x.count(n - 1))
        .map(|c| x.boundary(n - 1, c).len())
        .collect();
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in &sizes {
        *freq.entry(s).or_default() += 1;
    }
    let modal = freq
        .iter()
        .max_by_key(|(s, c)| (**c, std::cmp::Reverse(**s)))
        .map(|(s, _)| *s);
    let bad: Vec<usize> = sizes
        .iter()
        .enumerate()
        .filter(|(_, s)| Some(**s) != modal)
        .map(|(i, _)| i)
        .collect();
    checks.push(InvariantCheck {
        invariant: Invariant::Regularity,
        passed: bad.is_empty() && modal.is_some_and(|m| m > 0),
        detail: match modal {
            Some(m) if bad.is_empty() && m > 0 => format!("N = {m}"),
            Some(m) => format!("{} cells differ from modal face count {m}", bad.len()),
            None => "no (n-1)-cells".into(),
        },
        offending: bad,
    });

    // Every (n-1)-cell bounds exactly two n-cells.
    let cofaces = x.cofaces(n - 1);
    let bad: Vec<usize> = cofaces
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() != 2)
        .map(|(i, _)| i)
        .collect();
    checks.push(InvariantCheck {
        invariant: Invariant::TwoCofaces,
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "ok".into()
        } else {
            format!("{} cells without exactly two cofaces", bad.len())
        },
        offending: bad,
    });

    // Pair uniqueness.
    let mut shared_faces: HashMap<(usize, usize), usize> = HashMap::new();
    for containing in x.cofaces(n - 2) {
        let cells: Vec<usize> = containing.iter().map(|&(c, _)| c).collect();
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                *shared_faces.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
    }
    let mut shared_tops: HashMap<(usize, usize), usize> = HashMap::new();
    for top in 0..x.count(n) {
        let cells: Vec<usize> = x.boundary(n, top).iter().map(|&(c, _)| c).collect();
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                *shared_tops.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
    }
    let mut bad = BTreeSet::new();
    for (&(a, b), &c) in shared_faces.iter().chain(shared_tops.iter()) {
        if c > 1 {
            bad.insert(a);
            bad.insert(b);
        }
    }
    checks.push(InvariantCheck {
        invariant: Invariant::PairUniqueness,
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "ok".into()
        } else {
            format!(
                "{} cells share more than one face or top cell with a neighbour",
                bad.len()
            )
        },
        offending: bad.into_iter().collect(),
    });

    ValidationReport {
        checks,
        regularity: modal,
    }
}
