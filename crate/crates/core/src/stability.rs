//! Semistability verdicts over coordinate subsheaves, nefness of divisor
//! classes on `P(E)`, and nef/curve cone reports with explicit witnesses.
//!
//! Subobjects are always coordinate ones: subsets of atoms, closed under
//! the arrows in the Higgs case. For split bundles of stable summands this
//! search space is exhaustive for ordinary semistability, and for chains
//! of line bundles it is also sufficient on the Higgs side; verdicts carry
//! that qualifier.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::chow::{divisor_pairing, ChowAmbient, ChowClass, DivisorClass};
use crate::error::{Error, Result};
use crate::model::SplitHiggsBundle;
use crate::rat::{rat_int, Rat};

/// Which family of coordinate subsheaves a verdict ranged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityMode {
    /// All nonempty proper atom subsets (the Higgs field is ignored).
    Ordinary,
    /// Only arrow-closed subsets (kernels of Higgs quotients).
    Higgs,
}

/// One checked subobject: its atom subset, slope, and margin
/// `slope - mu(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetRecord {
    pub subset: Vec<usize>,
    pub slope: Rat,
    pub margin: Rat,
}

/// A semistability decision together with the full certificate of checked
/// subobjects. `semistable` holds exactly when every margin is <= 0; when
/// it fails, `destabilizer` is the checked subset with maximal margin
/// (ties broken by smallest cardinality, then lexicographically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub mode: StabilityMode,
    pub semistable: bool,
    pub mu: Rat,
    pub certificate: Vec<SubsetRecord>,
    pub destabilizer: Option<SubsetRecord>,
    /// True when some atom of rank > 1 was involved, making the verdict
    /// conditional on the assumed stability of those summands.
    pub conditional: bool,
}

/// Fixed qualifier attached to every rendered verdict.
pub const COORDINATE_NOTE: &str =
    "subobject search is coordinate-level (atom subsets; arrow-closed in the Higgs case)";

/// All nonempty proper subsets of `0..n`, ordered by size then
/// lexicographically.
fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << n) - 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

fn is_closed(bundle: &SplitHiggsBundle, subset: &[usize]) -> bool {
    bundle
        .arrows
        .iter()
        .all(|arrow| !subset.contains(&arrow.from) || subset.contains(&arrow.to))
}

/// The arrow-closed nonempty proper atom subsets, i.e. the coordinate
/// subsheaves preserved by the Higgs field, by size then lexicographic.
pub fn closed_subsets(bundle: &SplitHiggsBundle) -> Result<Vec<Vec<usize>>> {
    bundle.require_valid()?;
    Ok(proper_subsets(bundle.atoms.len())
        .into_iter()
        .filter(|s| is_closed(bundle, s))
        .collect())
}

fn verdict_over(
    bundle: &SplitHiggsBundle,
    subsets: Vec<Vec<usize>>,
    mode: StabilityMode,
) -> Result<Verdict> {
    let mu = bundle.slope(None)?;
    let mut certificate = Vec::with_capacity(subsets.len());
    let mut destabilizer: Option<SubsetRecord> = None;
    for subset in subsets {
        let slope = bundle.slope(Some(&subset))?;
        let margin = slope.clone() - mu.clone();
        let record = SubsetRecord {
            subset,
            slope,
            margin,
        };
        // subsets arrive in (size, lex) order, so a strict comparison
        // implements the tie-break for free
        if record.margin > Rat::zero()
            && destabilizer
                .as_ref()
                .is_none_or(|best| record.margin > best.margin)
        {
            destabilizer = Some(record.clone());
        }
        certificate.push(record);
    }
    Ok(Verdict {
        mode,
        semistable: destabilizer.is_none(),
        mu,
        certificate,
        destabilizer,
        conditional: bundle.has_conditional_atoms(),
    })
}

/// Higgs semistability: every arrow-closed coordinate subsheaf must have
/// slope at most `mu(E)`.
pub fn higgs_semistability(bundle: &SplitHiggsBundle) -> Result<Verdict> {
    let subsets = closed_subsets(bundle)?;
    verdict_over(bundle, subsets, StabilityMode::Higgs)
}

/// Ordinary semistability: every nonempty proper coordinate subsheaf is
/// checked, arrows ignored. For split bundles of stable summands this is
/// equivalent to all atom slopes being equal, but the verdict is produced
/// by enumeration.
pub fn ordinary_semistability(bundle: &SplitHiggsBundle) -> Result<Verdict> {
    bundle.require_valid()?;
    let subsets = proper_subsets(bundle.atoms.len());
    verdict_over(bundle, subsets, StabilityMode::Ordinary)
}

/// Maximal and minimal atom slopes. For a split bundle these are the
/// extreme subsheaf and quotient slopes.
pub fn mu_extremes(bundle: &SplitHiggsBundle) -> Result<(Rat, Rat)> {
    bundle.require_valid()?;
    let mut slopes = bundle
        .atoms
        .iter()
        .map(|a| a.slope())
        .collect::<Result<Vec<_>>>()?;
    slopes.sort();
    Ok((
        slopes.last().cloned().unwrap(),
        slopes.first().cloned().unwrap(),
    ))
}

/// The curve on which a failed nef check was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NefWitness {
    /// The section of `P(E)` cut out by the coordinate quotient onto the
    /// atom of minimal slope; its pairing with `a xi + b F` is
    /// `a mu_min + b`.
    SectionQuotient {
        atom: usize,
        label: String,
        atom_slope: Rat,
        pairing: Rat,
    },
    /// A line inside a fibre; its pairing with `a xi + b F` is `a`.
    /// On a rank-1 ambient this obstruction is formal: the (a, b)
    /// coordinates are not independent in `N^1` there.
    FibreLine { pairing: Rat },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NefVerdict {
    Nef,
    NotNef { witness: NefWitness },
}

impl NefVerdict {
    pub fn is_nef(&self) -> bool {
        matches!(self, NefVerdict::Nef)
    }
}

/// Decides nefness of `d = a xi + b F` on `P(E)`: nef if and only if
/// `a >= 0` and `a mu_min + b >= 0`, where `mu_min` is the minimal atom
/// slope. Fibre lines enforce the first inequality and the coordinate
/// quotient sections onto single atoms realize the second as their
/// minimum.
pub fn nef_check(divisor: &DivisorClass, bundle: &SplitHiggsBundle) -> Result<NefVerdict> {
    let ambient = ChowAmbient::from_bundle(bundle)?;
    if divisor.ambient != ambient {
        return Err(Error::AmbientMismatch {
            left_rank: divisor.ambient.rank,
            left_deg: divisor.ambient.deg_e,
            right_rank: ambient.rank,
            right_deg: ambient.deg_e,
        });
    }
    let (a, b) = (&divisor.xi_coeff, &divisor.fib_coeff);
    let (_, mu_min) = mu_extremes(bundle)?;
    let section_pairing = a.clone() * mu_min.clone() + b.clone();
    if section_pairing < Rat::zero() {
        let atom = min_slope_atom(bundle)?;
        return Ok(NefVerdict::NotNef {
            witness: NefWitness::SectionQuotient {
                atom,
                label: bundle.atoms[atom].label.clone(),
                atom_slope: bundle.atoms[atom].slope()?,
                pairing: section_pairing,
            },
        });
    }
    if a < &Rat::zero() {
        return Ok(NefVerdict::NotNef {
            witness: NefWitness::FibreLine { pairing: a.clone() },
        });
    }
    Ok(NefVerdict::Nef)
}

/// Index of the atom of minimal slope (smallest index on ties).
fn min_slope_atom(bundle: &SplitHiggsBundle) -> Result<usize> {
    let mut best = 0usize;
    let mut best_slope = bundle.atoms[0].slope()?;
    for (i, atom) in bundle.atoms.iter().enumerate().skip(1) {
        let slope = atom.slope()?;
        if slope < best_slope {
            best = i;
            best_slope = slope;
        }
    }
    Ok(best)
}

/// For an arrow-closed subset `S`, the self-intersection number
/// `(lambda_s)^s` of the lambda class on the projectivized quotient
/// `E' = E / E_S`, which equals `s (mu(E') - mu(E))` with
/// `s = rank(E')`.
pub fn lambda_quotient_pairing(bundle: &SplitHiggsBundle, subset: &[usize]) -> Result<Rat> {
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
    if !is_closed(bundle, subset) {
        return Err(Error::KernelNotPhiInvariant(
            bundle.labels(subset).join(", "),
        ));
    }
    let complement: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
    let s = bundle.subset_rank(&complement);
    let mu_quotient = bundle.slope(Some(&complement))?;
    let mu = bundle.slope(None)?;
    Ok(rat_int(s) * (mu_quotient - mu))
}

/// An effective divisor class on `P(E)` that fails nefness, produced for
/// unstable bundles: `N (lambda + (mu(E) - alpha) F)` with `alpha`
/// strictly between `mu(E)` and the maximal subsheaf slope, and `N` the
/// smallest positive integer making the class integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveNonNef {
    /// The integral class `N xi - N alpha F`.
    pub class: DivisorClass,
    pub scale: BigInt,
    pub alpha: Rat,
    /// Pairing against the section through the minimal-slope atom;
    /// negative by construction.
    pub witness_pairing: Rat,
    pub witness_atom: usize,
    pub witness_label: String,
}

/// Builds the effective-but-not-nef witness class for an (ordinarily)
/// unstable bundle, or `None` when the bundle is semistable. `alpha` is
/// the midpoint of `(mu(E), mu_max)`; effectivity of the class for the
/// chosen scale is guaranteed for large multiples, and is reported, not
/// certified.
pub fn effective_non_nef_witness(bundle: &SplitHiggsBundle) -> Result<Option<EffectiveNonNef>> {
    let (mu_max, mu_min) = mu_extremes(bundle)?;
    let mu = bundle.slope(None)?;
    if mu_max <= mu {
        return Ok(None);
    }
    let alpha = (mu_max + mu) / rat_int(2);
    let scale = alpha.denom().abs();
    let n = Rat::from_integer(scale.clone());
    let ambient = ChowAmbient::from_bundle(bundle)?;
    let class = DivisorClass::new(ambient, n.clone(), -(n.clone() * alpha.clone()));
    let witness_atom = min_slope_atom(bundle)?;
    let witness_pairing = n * (mu_min - alpha.clone());
    Ok(Some(EffectiveNonNef {
        class,
        scale,
        alpha,
        witness_pairing,
        witness_atom,
        witness_label: bundle.atoms[witness_atom].label.clone(),
    }))
}

/// The curve-cone generators `lambda^{r-1}` and `lambda^{r-2} F` together
/// with their intersection table against the nef-cone generators
/// `lambda` and `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConeGenerators {
    /// `lambda^{r-1}`, the class of a balanced section family.
    pub section_generator: ChowClass,
    /// `lambda^{r-2} F`, a line in a fibre; absent when r = 1.
    pub fibre_generator: Option<ChowClass>,
    /// `(description, value)` rows; every pairing of a curve generator
    /// with a nef generator.
    pub pairings: Vec<(String, Rat)>,
}

/// Cone description of `P(E)`: for a semistable bundle, the nef cone is
/// spanned by `lambda` and `F` and the curve cone by `lambda^{r-1}` and
/// `lambda^{r-2} F`; for an unstable one, explicit non-nef witnesses are
/// produced instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    pub semistable: bool,
    pub conditional: bool,
    pub mu: Rat,
    pub nef_generators: Option<(DivisorClass, DivisorClass)>,
    pub curve_generators: Option<CurveConeGenerators>,
    pub nef_witness: Option<NefWitness>,
    pub effective_non_nef: Option<EffectiveNonNef>,
}

pub fn miyaoka_report(bundle: &SplitHiggsBundle) -> Result<ConeReport> {
    let verdict = ordinary_semistability(bundle)?;
    let ambient = ChowAmbient::from_bundle(bundle)?;
    let lambda = DivisorClass::lambda(ambient);
    let fibre = DivisorClass::fibre(ambient);
    if verdict.semistable {
        let r = ambient.rank;
        let lambda_class = lambda.to_class();
        let section_generator = lambda_class.pow(r as u32 - 1)?;
        let fibre_generator = if r >= 2 {
            Some(lambda_class.pow(r as u32 - 2)?.mul(&fibre.to_class())?)
        } else {
            None
        };
        let mut pairings = Vec::new();
        let sec = &section_generator;
        pairings.push((
            format!("lambda^{} . lambda", r - 1),
            divisor_pairing(sec, &lambda)?,
        ));
        pairings.push((
            format!("lambda^{} . F", r - 1),
            divisor_pairing(sec, &fibre)?,
        ));
        if let Some(fib_gen) = &fibre_generator {
            pairings.push((
                format!("lambda^{} F . lambda", r - 2),
                divisor_pairing(fib_gen, &lambda)?,
            ));
            pairings.push((
                format!("lambda^{} F . F", r - 2),
                divisor_pairing(fib_gen, &fibre)?,
            ));
        }
        Ok(ConeReport {
            semistable: true,
            conditional: verdict.conditional,
            mu: verdict.mu,
            nef_generators: Some((lambda, fibre)),
            curve_generators: Some(CurveConeGenerators {
                section_generator,
                fibre_generator,
                pairings,
            }),
            nef_witness: None,
            effective_non_nef: None,
        })
    } else {
        let nef_witness = match nef_check(&lambda, bundle)? {
            NefVerdict::Nef => {
                return Err(Error::InternalCheck(
                    "unstable bundle with nef lambda".into(),
                ))
            }
            NefVerdict::NotNef { witness } => witness,
        };
        let effective = effective_non_nef_witness(bundle)?.ok_or_else(|| {
            Error::InternalCheck("unstable bundle without effective witness".into())
        })?;
        Ok(ConeReport {
            semistable: false,
            conditional: verdict.conditional,
            mu: verdict.mu,
            nef_generators: None,
            curve_generators: None,
            nef_witness: Some(nef_witness),
            effective_non_nef: Some(effective),
        })
    }
}
