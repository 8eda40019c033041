//! The scheme of rank-one Higgs quotients of a nilpotent chain.
//!
//! For a chain-shaped Higgs field the scheme sitting inside `P(E)`
//! decomposes (away from embedded components, which carry no cycle class)
//! into the projectivized torsion-free part of `Q = coker(phi ⊗ 1)` and
//! the image of the corresponding scheme of the truncation `E / E_top`,
//! where `E_top` is the top graded piece of the nilpotent filtration.
//! This module computes that decomposition, the cycle classes of its
//! components, the torsion bookkeeping for `Q`, the restrictions of the
//! `lambda` and `theta_s` classes, the local hyperquadric equations, and
//! the genus-2 demonstration bundle.
//!
//! Class formulas are implemented for chain shapes only (at most one
//! arrow in and out of each atom, all atoms line bundles); general
//! acyclic Higgs fields still get stability verdicts elsewhere, but no
//! Grassmannian classes here. A declared arrow is taken to be injective
//! with full-rank image in its target, which is what makes `Q/T(Q)` the
//! sum of the source atoms.

use std::collections::BTreeSet;
use std::fmt;

use crate::chow::{
    divisor_pairing, projectivized_quotient_class, pushforward_sub, ChowAmbient, ChowClass,
    DivisorClass,
};
use crate::error::{Error, Result};
use crate::model::{Arrow, SplitHiggsBundle};
use crate::rat::{rat, rat_int, Rat};
use crate::stability::{higgs_semistability, Verdict};

/// Bookkeeping for the Higgs-quotient sheaf `Q = coker(phi ⊗ 1)` of a
/// chain: the atoms surviving in `Q/T(Q)`, the torsion length, and the
/// rank and degree of the image of `phi ⊗ 1` inside `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QProfile {
    /// Atoms with no incoming arrow; `Q/T(Q)` is their direct sum.
    pub source_atoms: Vec<usize>,
    /// `deg T(Q) = sum over arrows i -> j of (d_j - d_i + 2g - 2)`; each
    /// term is nonnegative exactly when the arrow is feasible.
    pub torsion_degree: i64,
    /// Rank of the image of `phi`, one per arrow in the chain model.
    pub image_rank: i64,
    /// Degree of `(phi ⊗ 1)(E ⊗ Ω*)` as a subsheaf of `E`:
    /// `sum over arrows i -> j of (d_i - (2g - 2))`.
    pub image_degree: i64,
}

/// Which branch of the decomposition a component comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// `P(Q/T(Q))`, the projectivized torsion-free quotient of
    /// `coker(phi ⊗ 1)`.
    CokernelFamily,
    /// The image of the rank-one Higgs-quotient scheme of the truncation
    /// `E / E_top` under the natural immersion `P(E/E_top) -> P(E)`,
    /// with all multiplicity carried in the cycle class.
    TruncationPushforward,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::CokernelFamily => write!(f, "cokernel family"),
            ComponentKind::TruncationPushforward => write!(f, "truncation pushforward"),
        }
    }
}

/// One component of the rank-one Higgs-quotient scheme, with its cycle
/// class in `P(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Greatest number of truncation steps among the families aggregated
    /// into this component.
    pub depth: usize,
    pub cycle_class: ChowClass,
    /// `cycle_class . lambda` when the component is a curve over the
    /// base; flagged `None` otherwise.
    pub restricted_lambda: Option<Rat>,
    /// True when the reduced support of the component is a section of
    /// `P(E) -> C`, hence isomorphic to the base curve.
    pub isomorphic_to_base: bool,
}

fn require_chain_shape(bundle: &SplitHiggsBundle) -> Result<()> {
    bundle.require_valid()?;
    if !bundle.all_line_atoms() {
        return Err(Error::ChainShapeRequired(
            "all atoms must be line bundles".into(),
        ));
    }
    let n = bundle.atoms.len();
    let mut incoming = vec![0usize; n];
    let mut outgoing = vec![0usize; n];
    for arrow in &bundle.arrows {
        outgoing[arrow.from] += 1;
        incoming[arrow.to] += 1;
    }
    for i in 0..n {
        if incoming[i] > 1 || outgoing[i] > 1 {
            return Err(Error::ChainShapeRequired(format!(
                "atom {} has {} incoming and {} outgoing arrows",
                bundle.atoms[i].label, incoming[i], outgoing[i]
            )));
        }
    }
    Ok(())
}

/// Cokernel bookkeeping for a disjoint union of chains of line atoms.
pub fn cokernel_profile(bundle: &SplitHiggsBundle) -> Result<QProfile> {
    require_chain_shape(bundle)?;
    let canonical = bundle.curve.canonical_degree();
    let has_incoming: BTreeSet<usize> = bundle.arrows.iter().map(|a| a.to).collect();
    let source_atoms: Vec<usize> = (0..bundle.atoms.len())
        .filter(|i| !has_incoming.contains(i))
        .collect();
    let mut torsion_degree = 0i64;
    let mut image_degree = 0i64;
    for arrow in &bundle.arrows {
        let from_degree = bundle.atoms[arrow.from].degree;
        let to_degree = bundle.atoms[arrow.to].degree;
        let term = to_degree - from_degree + canonical;
        if term < 0 {
            return Err(Error::NegativeTorsion(term));
        }
        torsion_degree += term;
        image_degree += from_degree - canonical;
    }
    Ok(QProfile {
        source_atoms,
        torsion_degree,
        image_rank: bundle.arrows.len() as i64,
        image_degree,
    })
}

/// Level of each atom in the nilpotent grading: the number of arrows on
/// the (unique) path from its chain's source. Assumes chain shape.
fn chain_levels(bundle: &SplitHiggsBundle) -> Vec<usize> {
    let n = bundle.atoms.len();
    let mut parent = vec![usize::MAX; n];
    for arrow in &bundle.arrows {
        parent[arrow.to] = arrow.from;
    }
    (0..n)
        .map(|i| {
            let mut level = 0;
            let mut cur = i;
            while parent[cur] != usize::MAX {
                level += 1;
                cur = parent[cur];
            }
            level
        })
        .collect()
}

/// Splits off the top graded piece: returns the truncated bundle
/// `E / E_top` (atoms in their original order, arrows re-indexed) and the
/// indices of the removed top-level atoms.
fn truncate_top_level(bundle: &SplitHiggsBundle) -> (SplitHiggsBundle, Vec<usize>) {
    let levels = chain_levels(bundle);
    let max_level = *levels.iter().max().unwrap();
    let top: Vec<usize> = (0..bundle.atoms.len())
        .filter(|&i| levels[i] == max_level)
        .collect();
    let keep: Vec<usize> = (0..bundle.atoms.len())
        .filter(|&i| levels[i] != max_level)
        .collect();
    let mut new_index = vec![usize::MAX; bundle.atoms.len()];
    for (new, &old) in keep.iter().enumerate() {
        new_index[old] = new;
    }
    let atoms = keep.iter().map(|&i| bundle.atoms[i].clone()).collect();
    let arrows: Vec<Arrow> = bundle
        .arrows
        .iter()
        .filter(|a| new_index[a.from] != usize::MAX && new_index[a.to] != usize::MAX)
        .map(|a| Arrow::new(new_index[a.from], new_index[a.to]))
        .collect();
    (SplitHiggsBundle::new(bundle.curve, atoms, arrows), top)
}

/// True when the reduced support of the rank-one Higgs-quotient scheme
/// (fibre components removed) is a single section of `P(E) -> C`.
fn reduced_support_is_section(bundle: &SplitHiggsBundle) -> bool {
    if bundle.arrows.is_empty() {
        return bundle.total_rank() == 1;
    }
    let has_incoming: BTreeSet<usize> = bundle.arrows.iter().map(|a| a.to).collect();
    let sources = bundle.atoms.len() - has_incoming.len();
    if sources != 1 {
        return false;
    }
    let (truncated, _) = truncate_top_level(bundle);
    reduced_support_is_section(&truncated)
}

fn component_from_class(
    kind: ComponentKind,
    depth: usize,
    cycle_class: ChowClass,
    lambda: &DivisorClass,
    isomorphic_to_base: bool,
) -> Result<Component> {
    let restricted_lambda = if cycle_class.pure_dimension() == Some(1) {
        Some(divisor_pairing(&cycle_class, lambda)?)
    } else {
        None
    };
    Ok(Component {
        kind,
        depth,
        cycle_class,
        restricted_lambda,
        isomorphic_to_base,
    })
}

/// Component decomposition of the rank-one Higgs-quotient scheme of a
/// chain, with cycle classes in `P(E)`.
///
/// With no arrows the scheme is all of `P(E)` (a single component with
/// the fundamental class). Otherwise there are two components: the
/// cokernel family `P(Q/T(Q))` and the pushforward of the decomposition
/// of the truncation `E / E_top`, aggregated into a single cycle class.
/// Components lying inside fibres are excluded throughout, and embedded
/// components are never represented by classes.
pub fn hg1_components(bundle: &SplitHiggsBundle) -> Result<Vec<Component>> {
    require_chain_shape(bundle)?;
    let ambient = ChowAmbient::from_bundle(bundle)?;
    let lambda = DivisorClass::lambda(ambient);
    if bundle.arrows.is_empty() {
        let class = ChowClass::one(ambient);
        return Ok(vec![component_from_class(
            ComponentKind::TruncationPushforward,
            0,
            class,
            &lambda,
            bundle.total_rank() == 1,
        )?]);
    }
    let profile = cokernel_profile(bundle)?;
    let quotient_rank = ambient.rank - profile.image_rank;
    let cokernel_class = projectivized_quotient_class(
        ambient,
        quotient_rank,
        profile.image_degree,
        profile.torsion_degree,
    )?;
    let cokernel = component_from_class(
        ComponentKind::CokernelFamily,
        0,
        cokernel_class,
        &lambda,
        profile.source_atoms.len() == 1,
    )?;

    let (truncated, top) = truncate_top_level(bundle);
    let top_rank: i64 = top.iter().map(|&i| bundle.atoms[i].rank).sum();
    let top_degree: i64 = top.iter().map(|&i| bundle.atoms[i].degree).sum();
    let sub_class = projectivized_quotient_class(ambient, ambient.rank - top_rank, top_degree, 0)?;
    let inner = hg1_components(&truncated)?;
    let mut inner_total = ChowClass::zero(ChowAmbient::from_bundle(&truncated)?);
    let mut inner_depth = 0usize;
    for component in &inner {
        inner_total = inner_total.add(&component.cycle_class)?;
        inner_depth = inner_depth.max(component.depth);
    }
    let pushed = pushforward_sub(&inner_total, &sub_class)?;
    let truncation = component_from_class(
        ComponentKind::TruncationPushforward,
        inner_depth + 1,
        pushed,
        &lambda,
        reduced_support_is_section(&truncated),
    )?;
    Ok(vec![cokernel, truncation])
}

/// Total cycle class of the rank-one Higgs-quotient scheme, evaluated
/// along the closed formula with bracket
/// `deg(phi(E)) + r(phi)(2 - 2g) + deg T(Q)`:
///
/// `xi^{r(phi)} - [bracket] xi^{r(phi)-1} F + j_* [class of the truncation]`
///
/// where `deg(phi(E))` is the sum of source degrees over arrows and
/// `r(phi) = rank(phi(E))` is the codimension of the cokernel quotient.
/// The result is asserted equal to the sum of the component classes of
/// [`hg1_components`]; a mismatch is surfaced as an error carrying both
/// classes.
pub fn hg1_total_class(bundle: &SplitHiggsBundle) -> Result<ChowClass> {
    let total = hg1_total_class_formula(bundle)?;
    let mut component_sum = ChowClass::zero(total.ambient());
    for component in hg1_components(bundle)? {
        component_sum = component_sum.add(&component.cycle_class)?;
    }
    if total != component_sum {
        return Err(Error::ComponentSumMismatch {
            total: total.to_string(),
            component_sum: component_sum.to_string(),
        });
    }
    Ok(total)
}

fn hg1_total_class_formula(bundle: &SplitHiggsBundle) -> Result<ChowClass> {
    require_chain_shape(bundle)?;
    let ambient = ChowAmbient::from_bundle(bundle)?;
    if bundle.arrows.is_empty() {
        return Ok(ChowClass::one(ambient));
    }
    let canonical = bundle.curve.canonical_degree();
    let image_rank = bundle.arrows.len() as i64;
    // degree of phi(E) as an abstract sheaf: each arrow contributes its
    // source line bundle
    let phi_image_degree: i64 = bundle
        .arrows
        .iter()
        .map(|a| bundle.atoms[a.from].degree)
        .sum();
    let torsion: i64 = bundle
        .arrows
        .iter()
        .map(|a| bundle.atoms[a.to].degree - bundle.atoms[a.from].degree + canonical)
        .sum();
    let bracket = phi_image_degree + image_rank * (-canonical) + torsion;
    let mut first_term = ChowClass::monomial(ambient, image_rank as usize, false, rat_int(1));
    first_term = first_term.add(&ChowClass::monomial(
        ambient,
        image_rank as usize - 1,
        true,
        rat_int(-bracket),
    ))?;

    let (truncated, top) = truncate_top_level(bundle);
    let top_rank: i64 = top.iter().map(|&i| bundle.atoms[i].rank).sum();
    let top_degree: i64 = top.iter().map(|&i| bundle.atoms[i].degree).sum();
    let sub_class = projectivized_quotient_class(ambient, ambient.rank - top_rank, top_degree, 0)?;
    let inner_total = hg1_total_class_formula(&truncated)?;
    first_term.add(&pushforward_sub(&inner_total, &sub_class)?)
}

/// Restriction of `theta_s` to the section of the rank-`s` quotient
/// Grassmannian given by the coordinate quotient with kernel `subset`:
/// `deg(E/E_S) - (s/r) deg(E)`, which is `s (mu(E') - mu(E))`.
pub fn theta_restriction(bundle: &SplitHiggsBundle, subset: &[usize]) -> Result<Rat> {
    bundle.require_valid()?;
    let n = bundle.atoms.len();
    for &i in subset {
        if i >= n {
            return Err(Error::AtomIndexOutOfRange(i));
        }
    }
    if subset.is_empty() || subset.len() == n {
        return Err(Error::EmptySubobject);
    }
    let closed = bundle
        .arrows
        .iter()
        .all(|a| !subset.contains(&a.from) || subset.contains(&a.to));
    if !closed {
        return Err(Error::KernelNotPhiInvariant(
            bundle.labels(subset).join(", "),
        ));
    }
    let complement: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
    let quotient_degree = bundle.subset_degree(&complement);
    let s = bundle.subset_rank(&complement);
    let r = bundle.total_rank();
    Ok(rat_int(quotient_degree) - rat(s, r) * rat_int(bundle.total_degree()))
}

/// Homogeneous equations cutting the rank-one Higgs-quotient scheme out
/// of `P(E)`, one per unordered coordinate pair, in the fixed format
/// documented on the CLI: for every `1 <= a < b <= r` the quadric
/// `sum_g e_g (phi_{g b} e_a - phi_{g a} e_b)` with vanishing terms
/// pruned, monomials ordered by `(g, a, b)`, coefficient symbols
/// `phi_{g}{source}`, and variables of each monomial in ascending order.
/// Identically-zero equations are emitted as `0`, so the list always has
/// `C(r, 2)` entries.
pub fn local_equations(rank: usize, arrows: &BTreeSet<Arrow>) -> Result<Vec<String>> {
    if rank < 2 {
        return Err(Error::RankTooSmall {
            got: rank as i64,
            min: 2,
        });
    }
    for arrow in arrows {
        if arrow.from >= rank || arrow.to >= rank {
            return Err(Error::AtomIndexOutOfRange(arrow.from.max(arrow.to)));
        }
    }
    let in_range: Vec<Arrow> = arrows.iter().copied().collect();
    if let Some(cycle) = crate::model::find_cycle(rank, &in_range) {
        let path = cycle
            .iter()
            .map(|&i| format!("e{}", i + 1))
            .collect::<Vec<_>>()
            .join(" -> ");
        return Err(Error::NonNilpotentSupport(path));
    }
    // support[(target, source)] = phi_{target+1, source+1} is nonzero
    let support: BTreeSet<(usize, usize)> = arrows.iter().map(|a| (a.to, a.from)).collect();
    let mut equations = Vec::new();
    for a in 0..rank {
        for b in (a + 1)..rank {
            let mut line = String::new();
            for g in 0..rank {
                if support.contains(&(g, b)) {
                    push_term(&mut line, true, g, b, g.min(a), g.max(a));
                }
                if support.contains(&(g, a)) {
                    push_term(&mut line, false, g, a, g.min(b), g.max(b));
                }
            }
            if line.is_empty() {
                line.push('0');
            }
            equations.push(line);
        }
    }
    Ok(equations)
}

fn push_term(line: &mut String, positive: bool, g: usize, source: usize, lo: usize, hi: usize) {
    if line.is_empty() {
        if !positive {
            line.push('-');
        }
    } else if positive {
        line.push_str(" + ");
    } else {
        line.push_str(" - ");
    }
    line.push_str(&format!(
        "phi_{}{}*e{}*e{}",
        g + 1,
        source + 1,
        lo + 1,
        hi + 1
    ));
}

/// Convenience wrapper: equations for a bundle of line atoms.
pub fn local_equations_for(bundle: &SplitHiggsBundle) -> Result<Vec<String>> {
    bundle.require_valid()?;
    if !bundle.all_line_atoms() {
        return Err(Error::ChainShapeRequired(
            "equations index atoms as basis elements, so all atoms must be line bundles".into(),
        ));
    }
    local_equations(bundle.atoms.len(), &bundle.arrows)
}

/// The fixed genus-2 demonstration: a chain of three line bundles with
/// degrees (3, 1, 3) whose `lambda_1` restrictions are all nef although
/// the bundle is Higgs-unstable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoReport {
    pub bundle: SplitHiggsBundle,
    /// `2 d1 - d2 - d3`; nonnegativity says the subbundle `L2 + L3` does
    /// not destabilize. Value 2.
    pub ineq_l2_l3: Rat,
    /// `d1 + d2 - 2 d3`; nonnegativity says the subbundle `L3` does not
    /// destabilize. Value -2.
    pub ineq_l3: Rat,
    /// `lambda` restricted to the truncation-pushforward component. 4/3.
    pub lambda_truncation: Rat,
    /// `lambda` restricted to the cokernel-family component. 2/3.
    pub lambda_cokernel: Rat,
    /// `theta_2` restricted to the rank-2 quotient section with kernel
    /// `L3`. -2/3.
    pub theta_rank2_section: Rat,
    pub verdict: Verdict,
}

/// Builds the demonstration bundle and checks all of its numbers exactly;
/// any deviation is an internal error.
pub fn counterexample_demo() -> Result<DemoReport> {
    let bundle = SplitHiggsBundle::chain(2, &[3, 1, 3]);
    let degrees: Vec<i64> = bundle.atoms.iter().map(|a| a.degree).collect();
    let ineq_l2_l3 = rat_int(2 * degrees[0] - degrees[1] - degrees[2]);
    let ineq_l3 = rat_int(degrees[0] + degrees[1] - 2 * degrees[2]);

    let components = hg1_components(&bundle)?;
    let mut lambda_cokernel = None;
    let mut lambda_truncation = None;
    for component in &components {
        match component.kind {
            ComponentKind::CokernelFamily => lambda_cokernel = component.restricted_lambda.clone(),
            ComponentKind::TruncationPushforward => {
                lambda_truncation = component.restricted_lambda.clone()
            }
        }
    }
    let lambda_cokernel = lambda_cokernel
        .ok_or_else(|| Error::InternalCheck("demo: cokernel component is not a curve".into()))?;
    let lambda_truncation = lambda_truncation
        .ok_or_else(|| Error::InternalCheck("demo: truncation component is not a curve".into()))?;
    let theta_rank2_section = theta_restriction(&bundle, &[2])?;
    let verdict = higgs_semistability(&bundle)?;

    let checks: [(&str, &Rat, Rat); 5] = [
        ("2d1 - d2 - d3", &ineq_l2_l3, rat_int(2)),
        ("d1 + d2 - 2d3", &ineq_l3, rat_int(-2)),
        (
            "lambda on truncation component",
            &lambda_truncation,
            rat(4, 3),
        ),
        ("lambda on cokernel component", &lambda_cokernel, rat(2, 3)),
        (
            "theta_2 on quotient section",
            &theta_rank2_section,
            rat(-2, 3),
        ),
    ];
    for (name, got, want) in &checks {
        if *got != want {
            return Err(Error::InternalCheck(format!(
                "demo value {name}: got {}, want {}",
                crate::rat::fmt_rat(got),
                crate::rat::fmt_rat(want)
            )));
        }
    }
    if verdict.semistable {
        return Err(Error::InternalCheck(
            "demo bundle must be Higgs-unstable".into(),
        ));
    }
    match &verdict.destabilizer {
        Some(record) if record.subset == vec![2] => {}
        other => {
            return Err(Error::InternalCheck(format!(
                "demo destabilizer: got {other:?}, want L3"
            )))
        }
    }
    Ok(DemoReport {
        bundle,
        ineq_l2_l3,
        ineq_l3,
        lambda_truncation,
        lambda_cokernel,
        theta_rank2_section,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Atom, CurveSpec};

    fn genus2_chain() -> SplitHiggsBundle {
        SplitHiggsBundle::chain(2, &[3, 1, 3])
    }

    #[test]
    fn profile_of_genus2_chain() {
        let profile = cokernel_profile(&genus2_chain()).unwrap();
        assert_eq!(profile.source_atoms, vec![0]);
        assert_eq!(profile.torsion_degree, 4);
        assert_eq!(profile.image_rank, 2);
        assert_eq!(profile.image_degree, 0);
    }

    #[test]
    fn profile_without_arrows() {
        let bundle = SplitHiggsBundle::split_lines(2, &[1, 2, 3]);
        let profile = cokernel_profile(&bundle).unwrap();
        assert_eq!(profile.source_atoms, vec![0, 1, 2]);
        assert_eq!(profile.torsion_degree, 0);
        assert_eq!(profile.image_rank, 0);
        assert_eq!(profile.image_degree, 0);
    }

    #[test]
    fn profile_of_rank2_chain() {
        let bundle = SplitHiggsBundle::chain(2, &[2, 1]);
        let profile = cokernel_profile(&bundle).unwrap();
        assert_eq!(profile.source_atoms, vec![0]);
        assert_eq!(profile.torsion_degree, 1);
        assert_eq!(profile.image_rank, 1);
        assert_eq!(profile.image_degree, 0);
    }

    #[test]
    fn branching_is_rejected() {
        let bundle = SplitHiggsBundle::new(
            CurveSpec::new(2),
            vec![Atom::line("A", 0), Atom::line("B", 0), Atom::line("C", 2)],
            [Arrow::new(0, 2), Arrow::new(1, 2)],
        );
        assert!(matches!(
            cokernel_profile(&bundle),
            Err(Error::ChainShapeRequired(_))
        ));
    }

    #[test]
    fn components_of_genus2_chain() {
        let components = hg1_components(&genus2_chain()).unwrap();
        assert_eq!(components.len(), 2);
        assert_eq!(components[0].kind, ComponentKind::CokernelFamily);
        assert_eq!(components[0].cycle_class.to_string(), "xi^2 - 4 xi F");
        assert_eq!(components[0].restricted_lambda, Some(rat(2, 3)));
        assert!(components[0].isomorphic_to_base);
        assert_eq!(components[1].kind, ComponentKind::TruncationPushforward);
        assert_eq!(components[1].cycle_class.to_string(), "2 xi^2 - 8 xi F");
        assert_eq!(components[1].restricted_lambda, Some(rat(4, 3)));
        assert!(components[1].isomorphic_to_base);
    }

    #[test]
    fn components_without_higgs_field() {
        let bundle = SplitHiggsBundle::split_lines(2, &[1, 2]);
        let components = hg1_components(&bundle).unwrap();
        assert_eq!(components.len(), 1);
        assert_eq!(components[0].cycle_class.to_string(), "1");
        assert!(components[0].restricted_lambda.is_none());
        assert!(!components[0].isomorphic_to_base);
    }

    #[test]
    fn rank2_chain_base_case() {
        // both components of a rank-2 chain carry the class xi - d2 F
        let bundle = SplitHiggsBundle::chain(2, &[2, 1]);
        let components = hg1_components(&bundle).unwrap();
        assert_eq!(components.len(), 2);
        for component in &components {
            assert_eq!(component.cycle_class.to_string(), "xi - F");
        }
        assert_eq!(components[0].kind, ComponentKind::CokernelFamily);
        assert_eq!(components[1].kind, ComponentKind::TruncationPushforward);
        assert_eq!(components[1].depth, 1);
    }

    #[test]
    fn total_class_examples() {
        let total = hg1_total_class(&genus2_chain()).unwrap();
        assert_eq!(total.to_string(), "3 xi^2 - 12 xi F");

        let no_field = SplitHiggsBundle::split_lines(2, &[1, 2]);
        assert_eq!(hg1_total_class(&no_field).unwrap().to_string(), "1");

        let rank2 = SplitHiggsBundle::chain(2, &[2, 1]);
        assert_eq!(hg1_total_class(&rank2).unwrap().to_string(), "2 xi - 2 F");
    }

    #[test]
    fn theta_restriction_values() {
        assert_eq!(
            theta_restriction(&genus2_chain(), &[2]).unwrap(),
            rat(-2, 3)
        );
        let equal = SplitHiggsBundle::chain(2, &[4, 4, 4]);
        assert_eq!(theta_restriction(&equal, &[2]).unwrap(), rat_int(0));
        let descending = SplitHiggsBundle::chain(2, &[5, 3, 1]);
        assert_eq!(theta_restriction(&descending, &[1, 2]).unwrap(), rat_int(2));
        assert!(matches!(
            theta_restriction(&genus2_chain(), &[0]),
            Err(Error::KernelNotPhiInvariant(_))
        ));
    }

    #[test]
    fn equations_for_rank2_chain() {
        let bundle = SplitHiggsBundle::chain(2, &[2, 1]);
        let equations = local_equations_for(&bundle).unwrap();
        assert_eq!(equations, vec!["-phi_21*e2*e2"]);
    }

    #[test]
    fn equations_for_rank3_chain() {
        let equations = local_equations_for(&genus2_chain()).unwrap();
        assert_eq!(
            equations,
            vec![
                "-phi_21*e2*e2 + phi_32*e1*e3",
                "-phi_21*e2*e3",
                "-phi_32*e3*e3",
            ]
        );
    }

    #[test]
    fn equations_with_zero_field() {
        let equations = local_equations(3, &BTreeSet::new()).unwrap();
        assert_eq!(equations, vec!["0", "0", "0"]);
    }

    #[test]
    fn equations_reject_cycles() {
        let arrows: BTreeSet<Arrow> = [Arrow::new(0, 1), Arrow::new(1, 0)].into();
        assert!(matches!(
            local_equations(2, &arrows),
            Err(Error::NonNilpotentSupport(_))
        ));
    }

    #[test]
    fn demo_is_exact_and_deterministic() {
        let report = counterexample_demo().unwrap();
        assert_eq!(report.ineq_l2_l3, rat_int(2));
        assert_eq!(report.ineq_l3, rat_int(-2));
        assert_eq!(report.lambda_truncation, rat(4, 3));
        assert_eq!(report.lambda_cokernel, rat(2, 3));
        assert_eq!(report.theta_rank2_section, rat(-2, 3));
        assert!(!report.verdict.semistable);
        assert_eq!(report, counterexample_demo().unwrap());
    }

    #[test]
    fn demo_values_scale_under_pullback() {
        // degree homogeneity: after an etale pullback of degree 2 all
        // restricted values double
        let pulled = SplitHiggsBundle::chain(2, &[3, 1, 3])
            .pullback_etale(2)
            .unwrap();
        assert_eq!(theta_restriction(&pulled, &[2]).unwrap(), rat(-4, 3));
        let components = hg1_components(&pulled).unwrap();
        let values: Vec<Rat> = components
            .iter()
            .map(|c| c.restricted_lambda.clone().unwrap())
            .collect();
        assert_eq!(values, vec![rat(4, 3), rat(8, 3)]);
    }
}
