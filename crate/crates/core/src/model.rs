//! Data model: curve, summands, arrows, and the structural operations on
//! split Higgs bundles (validation, slopes, exterior powers, etale
//! pullback).

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::rat::{rat_int, Rat};

/// A smooth projective curve, carried only through its genus. The degree
/// of the canonical bundle is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSpec {
    pub genus: u32,
}

impl CurveSpec {
    pub fn new(genus: u32) -> Self {
        CurveSpec { genus }
    }

    /// Degree of the canonical bundle, `2g - 2`.
    pub fn canonical_degree(&self) -> i64 {
        2 * i64::from(self.genus) - 2
    }
}

/// One direct summand of the bundle: a formal stable sheaf of the given
/// rank and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub label: String,
    pub rank: i64,
    pub degree: i64,
    /// Stability of a rank > 1 summand is an assumption supplied by the
    /// caller; verdicts that involve such summands are conditional on it.
    /// A rank-1 summand is always stable, so the flag is forced on.
    pub assumed_stable: bool,
}

impl Atom {
    pub fn new(label: impl Into<String>, rank: i64, degree: i64, assumed_stable: bool) -> Self {
        Atom {
            label: label.into(),
            rank,
            degree,
            assumed_stable: assumed_stable || rank == 1,
        }
    }

    /// A line-bundle summand.
    pub fn line(label: impl Into<String>, degree: i64) -> Self {
        Atom::new(label, 1, degree, true)
    }

    pub fn slope(&self) -> Result<Rat> {
        if self.rank < 1 {
            return Err(Error::InvalidBundle(format!(
                "atom {} has nonpositive rank {}",
                self.label, self.rank
            )));
        }
        Ok(Rat::new(self.degree.into(), self.rank.into()))
    }
}

/// A component of the Higgs field: the summand `from` maps into
/// `to ⊗ Ω_C`. Indices refer to positions in the atom list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
}

impl Arrow {
    pub fn new(from: usize, to: usize) -> Self {
        Arrow { from, to }
    }
}

/// A split bundle `E = A_1 ⊕ ... ⊕ A_n` on a curve together with a
/// nilpotent Higgs field described by arrows between summands.
///
/// Values are immutable after construction and every operation is a pure
/// function, so the type is freely shareable across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitHiggsBundle {
    pub curve: CurveSpec,
    pub atoms: Vec<Atom>,
    pub arrows: BTreeSet<Arrow>,
}

/// One structural defect found by [`SplitHiggsBundle::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoAtoms,
    NonpositiveRank {
        atom: String,
        rank: i64,
    },
    ArrowOutOfRange {
        from: usize,
        to: usize,
    },
    /// The arrows contain a directed cycle (a self-loop counts).
    Cycle {
        atoms: Vec<String>,
    },
    /// `mu(to) + (2g-2) < mu(from)`: the twisted Hom line bundle has
    /// negative degree, so the declared arrow cannot be nonzero.
    InfeasibleArrow {
        from: String,
        to: String,
        slack: Rat,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoAtoms => write!(f, "at least one atom is required"),
            Violation::NonpositiveRank { atom, rank } => {
                write!(f, "nonpositive rank {rank} on atom {atom}")
            }
            Violation::ArrowOutOfRange { from, to } => {
                write!(f, "arrow ({from} -> {to}) references a missing atom")
            }
            Violation::Cycle { atoms } => {
                write!(f, "cycle in arrows: {}", atoms.join(" -> "))
            }
            Violation::InfeasibleArrow { from, to, slack } => write!(
                f,
                "infeasible arrow {from} -> {to}: mu(to) + (2g-2) - mu(from) = {}",
                crate::rat::fmt_rat(slack)
            ),
        }
    }
}

/// Outcome of validation. Diagnostics are data, not failures: an invalid
/// bundle still produces a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SplitHiggsBundle {
    pub fn new(
        curve: CurveSpec,
        atoms: Vec<Atom>,
        arrows: impl IntoIterator<Item = Arrow>,
    ) -> Self {
        SplitHiggsBundle {
            curve,
            atoms,
            arrows: arrows.into_iter().collect(),
        }
    }

    /// A direct sum of line bundles with the given degrees and no Higgs
    /// field; labels are `L1, L2, ...`.
    pub fn split_lines(genus: u32, degrees: &[i64]) -> Self {
        let atoms = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| Atom::line(format!("L{}", i + 1), d))
            .collect();
        SplitHiggsBundle::new(CurveSpec::new(genus), atoms, [])
    }

    /// A single chain `L1 -> L2 -> ... -> Ln` of line bundles.
    pub fn chain(genus: u32, degrees: &[i64]) -> Self {
        let mut bundle = Self::split_lines(genus, degrees);
        bundle.arrows = (1..degrees.len()).map(|i| Arrow::new(i - 1, i)).collect();
        bundle
    }

    pub fn total_rank(&self) -> i64 {
        self.atoms.iter().map(|a| a.rank).sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.atoms.iter().map(|a| a.degree).sum()
    }

    pub fn labels(&self, subset: &[usize]) -> Vec<String> {
        subset
            .iter()
            .map(|&i| self.atoms[i].label.clone())
            .collect()
    }

    /// Checks all structural invariants and reports every violation:
    /// missing atoms, nonpositive ranks, dangling or cyclic arrows, and
    /// arrows whose degree feasibility condition fails.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.atoms.is_empty() {
            violations.push(Violation::NoAtoms);
        }
        for atom in &self.atoms {
            if atom.rank < 1 {
                violations.push(Violation::NonpositiveRank {
                    atom: atom.label.clone(),
                    rank: atom.rank,
                });
            }
        }
        let n = self.atoms.len();
        let in_range: Vec<Arrow> = self
            .arrows
            .iter()
            .copied()
            .filter(|a| {
                let ok = a.from < n && a.to < n;
                if !ok {
                    violations.push(Violation::ArrowOutOfRange {
                        from: a.from,
                        to: a.to,
                    });
                }
                ok
            })
            .collect();
        if let Some(cycle) = find_cycle(n, &in_range) {
            violations.push(Violation::Cycle {
                atoms: self.labels(&cycle),
            });
        }
        for arrow in &in_range {
            if arrow.from == arrow.to {
                continue; // already reported as a cycle
            }
            let (from, to) = (&self.atoms[arrow.from], &self.atoms[arrow.to]);
            if from.rank < 1 || to.rank < 1 {
                continue;
            }
            let slack = to.slope().unwrap() + rat_int(self.curve.canonical_degree())
                - from.slope().unwrap();
            if slack < rat_int(0) {
                violations.push(Violation::InfeasibleArrow {
                    from: from.label.clone(),
                    to: to.label.clone(),
                    slack,
                });
            }
        }
        ValidationReport { violations }
    }

    /// Errors with the first violation unless the bundle is valid.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidBundle(v.to_string())),
        }
    }

    /// True when every atom is a line bundle.
    pub fn all_line_atoms(&self) -> bool {
        self.atoms.iter().all(|a| a.rank == 1)
    }

    /// True when some atom has rank > 1, so that stability verdicts are
    /// conditional on the assumed stability of those summands.
    pub fn has_conditional_atoms(&self) -> bool {
        !self.all_line_atoms()
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubobject);
        }
        for &i in subset {
            if i >= self.atoms.len() {
                return Err(Error::AtomIndexOutOfRange(i));
            }
        }
        Ok(())
    }

    pub fn subset_rank(&self, subset: &[usize]) -> i64 {
        subset.iter().map(|&i| self.atoms[i].rank).sum()
    }

    pub fn subset_degree(&self, subset: &[usize]) -> i64 {
        subset.iter().map(|&i| self.atoms[i].degree).sum()
    }

    /// Exact slope `deg/rank` of the subbundle spanned by `subset`
    /// (all atoms when `None`).
    pub fn slope(&self, subset: Option<&[usize]>) -> Result<Rat> {
        let all: Vec<usize> = (0..self.atoms.len()).collect();
        let subset = subset.unwrap_or(&all);
        self.check_subset(subset)?;
        let rank = self.subset_rank(subset);
        if rank < 1 {
            return Err(Error::InvalidBundle(format!(
                "subset has nonpositive rank {rank}"
            )));
        }
        Ok(Rat::new(self.subset_degree(subset).into(), rank.into()))
    }

    /// The `s`-th exterior power of a direct sum of line bundles: one line
    /// atom per `s`-element subset, carrying the subset's degree sum. The
    /// Higgs field is dropped.
    pub fn exterior_power(&self, s: i64) -> Result<SplitHiggsBundle> {
        self.require_valid()?;
        if !self.all_line_atoms() {
            return Err(Error::ExteriorPowerRequiresLineAtoms);
        }
        let r = self.total_rank();
        if s <= 0 || s >= r {
            return Err(Error::ExteriorPowerOutOfRange { s, rank: r });
        }
        let atoms = (0..self.atoms.len())
            .combinations(s as usize)
            .map(|subset| {
                let label = subset.iter().map(|&i| &self.atoms[i].label).join("^");
                Atom::line(label, self.subset_degree(&subset))
            })
            .collect();
        Ok(SplitHiggsBundle::new(self.curve, atoms, []))
    }

    /// Pullback along a connected etale cover of degree `n`: degrees are
    /// multiplied by `n`, the genus becomes `n(g-1) + 1`, and the arrows
    /// are preserved.
    pub fn pullback_etale(&self, n: i64) -> Result<SplitHiggsBundle> {
        self.require_valid()?;
        if n < 1 {
            return Err(Error::PullbackDegree(n));
        }
        if self.curve.genus == 0 && n > 1 {
            return Err(Error::NoEtaleCover(n));
        }
        let genus = n * (i64::from(self.curve.genus) - 1) + 1;
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.label.clone(), a.rank, a.degree * n, a.assumed_stable))
            .collect();
        Ok(SplitHiggsBundle::new(
            CurveSpec::new(genus as u32),
            atoms,
            self.arrows.iter().copied(),
        ))
    }
}

/// Finds a directed cycle among `arrows` on `n` vertices, if any, and
/// returns it as a vertex list `v0 -> v1 -> ... -> v0`. Deterministic:
/// DFS from the smallest vertex over sorted adjacency.
pub(crate) fn find_cycle(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); n];
    for a in arrows {
        if a.from == a.to {
            return Some(vec![a.from, a.to]);
        }
        adjacency[a.from].push(a.to);
    }
    for neighbours in &mut adjacency {
        neighbours.sort_unstable();
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adjacency[v].len() {
                let w = adjacency[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        // back edge v -> w closes a cycle
                        let mut cycle = vec![w];
                        let mut cur = v;
                        while cur != w {
                            cycle.push(cur);
                            cur = parent[cur];
                        }
                        cycle.push(w);
                        cycle[1..].reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn genus2_chain_is_valid() {
        let bundle = SplitHiggsBundle::chain(2, &[3, 1, 3]);
        assert!(bundle.validate().is_valid());
    }

    #[test]
    fn single_atom_no_arrows_is_valid() {
        let bundle = SplitHiggsBundle::split_lines(0, &[5]);
        assert!(bundle.validate().is_valid());
    }

    #[test]
    fn two_cycle_is_reported() {
        let bundle = SplitHiggsBundle::new(
            CurveSpec::new(2),
            vec![Atom::line("L1", 0), Atom::line("L2", 0)],
            [Arrow::new(0, 1), Arrow::new(1, 0)],
        );
        let report = bundle.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Cycle { .. })));
    }

    #[test]
    fn infeasible_arrow_is_reported() {
        // g = 0: mu(to) - 2 >= mu(from) fails for degrees 0 -> 1.
        let bundle = SplitHiggsBundle::new(
            CurveSpec::new(0),
            vec![Atom::line("L1", 1), Atom::line("L2", 0)],
            [Arrow::new(0, 1)],
        );
        let report = bundle.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Violation::InfeasibleArrow { .. }
        ));
    }

    #[test]
    fn nonpositive_rank_is_reported() {
        let bundle =
            SplitHiggsBundle::new(CurveSpec::new(1), vec![Atom::new("A", 0, 3, false)], []);
        assert!(!bundle.validate().is_valid());
    }

    #[test]
    fn slopes() {
        let bundle = SplitHiggsBundle::chain(2, &[3, 1, 3]);
        assert_eq!(bundle.slope(None).unwrap(), rat(7, 3));
        assert_eq!(bundle.slope(Some(&[1, 2])).unwrap(), rat_int(2));
        assert_eq!(bundle.slope(Some(&[])), Err(Error::EmptySubobject));
        let single = SplitHiggsBundle::split_lines(2, &[-4]);
        assert_eq!(single.slope(None).unwrap(), rat_int(-4));
    }

    #[test]
    fn exterior_power_degrees() {
        let bundle = SplitHiggsBundle::chain(2, &[3, 1, 3]);
        let wedge = bundle.exterior_power(2).unwrap();
        let degrees: Vec<i64> = wedge.atoms.iter().map(|a| a.degree).collect();
        assert_eq!(degrees, vec![4, 6, 4]);
        assert!(wedge.arrows.is_empty());
        assert_eq!(wedge.atoms[0].label, "L1^L2");

        // s = 1 is the identity on atoms.
        let first = bundle.exterior_power(1).unwrap();
        let degrees: Vec<i64> = first.atoms.iter().map(|a| a.degree).collect();
        assert_eq!(degrees, vec![3, 1, 3]);

        // equal degrees stay equal
        let equal = SplitHiggsBundle::split_lines(1, &[2, 2, 2, 2]);
        let wedge = equal.exterior_power(3).unwrap();
        assert!(wedge.atoms.iter().all(|a| a.degree == 6));
    }

    #[test]
    fn exterior_power_errors() {
        let bundle = SplitHiggsBundle::new(CurveSpec::new(2), vec![Atom::new("A", 2, 3, true)], []);
        assert_eq!(
            bundle.exterior_power(1),
            Err(Error::ExteriorPowerRequiresLineAtoms)
        );
        let lines = SplitHiggsBundle::split_lines(2, &[1, 2]);
        assert!(matches!(
            lines.exterior_power(2),
            Err(Error::ExteriorPowerOutOfRange { .. })
        ));
    }

    #[test]
    fn pullback_scales_degrees_and_genus() {
        let bundle = SplitHiggsBundle::chain(2, &[3, 1, 3]);
        let pulled = bundle.pullback_etale(2).unwrap();
        assert_eq!(pulled.curve.genus, 3);
        let degrees: Vec<i64> = pulled.atoms.iter().map(|a| a.degree).collect();
        assert_eq!(degrees, vec![6, 2, 6]);
        assert_eq!(pulled.arrows, bundle.arrows);

        assert_eq!(bundle.pullback_etale(1).unwrap(), bundle);
        assert_eq!(bundle.pullback_etale(0), Err(Error::PullbackDegree(0)));
        let rational_curve = SplitHiggsBundle::split_lines(0, &[1]);
        assert_eq!(
            rational_curve.pullback_etale(3),
            Err(Error::NoEtaleCover(3))
        );
    }

    #[test]
    fn validate_is_order_independent_and_idempotent() {
        let a = SplitHiggsBundle::new(
            CurveSpec::new(2),
            vec![
                Atom::line("L1", 3),
                Atom::line("L2", 1),
                Atom::line("L3", 3),
            ],
            [Arrow::new(0, 1), Arrow::new(1, 2)],
        );
        let b = SplitHiggsBundle::new(
            CurveSpec::new(2),
            vec![
                Atom::line("L1", 3),
                Atom::line("L2", 1),
                Atom::line("L3", 3),
            ],
            [Arrow::new(1, 2), Arrow::new(0, 1)],
        );
        assert_eq!(a.validate(), b.validate());
        assert_eq!(a.validate(), a.validate());
    }
}
