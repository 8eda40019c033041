//! Property tests spanning the library: ring axioms against a naive
//! reduction oracle, the semistability/nefness equivalence with both
//! sides computed by independent code paths, cross-module pairing
//! identities, and pullback invariance.

use std::collections::BTreeMap;

use proptest::prelude::*;

use higgsnef::chow::{projectivized_quotient_class, ChowAmbient, ChowClass, DivisorClass};
use higgsnef::higgs_grass::{hg1_components, hg1_total_class, theta_restriction};
use higgsnef::model::{Arrow, CurveSpec, SplitHiggsBundle};
use higgsnef::rat::{rat, rat_int, Rat};
use higgsnef::stability::{
    closed_subsets, higgs_semistability, lambda_quotient_pairing, nef_check, ordinary_semistability,
};

// ---- strategies ----

fn arb_ambient() -> impl Strategy<Value = ChowAmbient> {
    (1i64..=5, -12i64..=12).prop_map(|(r, d)| ChowAmbient::new(r, d).unwrap())
}

/// A reduced class with small rational coefficients in the given ambient.
fn class_from_seed(ambient: ChowAmbient, seed: &[(i64, i64)]) -> ChowClass {
    let r = ambient.rank as usize;
    let mut class = ChowClass::zero(ambient);
    for (k, (num, den)) in seed.iter().enumerate().take(2 * r) {
        let coeff = rat(*num, *den);
        let term = if k < r {
            ChowClass::monomial(ambient, k, false, coeff)
        } else {
            ChowClass::monomial(ambient, k - r, true, coeff)
        };
        class = class.add(&term).unwrap();
    }
    class
}

prop_compose! {
    fn arb_class_triple()(ambient in arb_ambient())(
        ambient in Just(ambient),
        xs in prop::collection::vec((-9i64..=9, 1i64..=4), 2 * ambient.rank as usize),
        ys in prop::collection::vec((-9i64..=9, 1i64..=4), 2 * ambient.rank as usize),
        zs in prop::collection::vec((-9i64..=9, 1i64..=4), 2 * ambient.rank as usize),
    ) -> (ChowAmbient, ChowClass, ChowClass, ChowClass) {
        (
            ambient,
            class_from_seed(ambient, &xs),
            class_from_seed(ambient, &ys),
            class_from_seed(ambient, &zs),
        )
    }
}

/// Line-atom bundle with arrows restricted to the feasible forward pairs
/// selected by `mask`; always valid by construction.
fn bundle_from(genus: u32, degrees: &[i64], mask: u64) -> SplitHiggsBundle {
    let canonical = 2 * i64::from(genus) - 2;
    let n = degrees.len();
    let mut arrows = Vec::new();
    let mut bit = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> (bit % 64) & 1 == 1 && degrees[j] + canonical >= degrees[i] {
                arrows.push(Arrow::new(i, j));
            }
            bit += 1;
        }
    }
    let mut bundle = SplitHiggsBundle::split_lines(genus, degrees);
    bundle.arrows = arrows.into_iter().collect();
    bundle
}

fn arb_line_bundle() -> impl Strategy<Value = SplitHiggsBundle> {
    (
        0u32..=3,
        prop::collection::vec(-20i64..=20, 1..=6),
        any::<u64>(),
    )
        .prop_map(|(genus, degrees, mask)| bundle_from(genus, &degrees, mask))
}

/// Disjoint chains along the atom order: consecutive links chosen by the
/// mask, kept only when feasible.
fn chain_from(genus: u32, degrees: &[i64], mask: u32) -> SplitHiggsBundle {
    let canonical = 2 * i64::from(genus) - 2;
    let arrows: Vec<Arrow> = (0..degrees.len().saturating_sub(1))
        .filter(|&i| mask >> (i % 32) & 1 == 1 && degrees[i + 1] + canonical >= degrees[i])
        .map(|i| Arrow::new(i, i + 1))
        .collect();
    let mut bundle = SplitHiggsBundle::split_lines(genus, degrees);
    bundle.arrows = arrows.into_iter().collect();
    bundle
}

fn arb_chain() -> impl Strategy<Value = SplitHiggsBundle> {
    (
        0u32..=3,
        prop::collection::vec(-10i64..=10, 1..=5),
        any::<u32>(),
    )
        .prop_map(|(genus, degrees, mask)| chain_from(genus, &degrees, mask))
}

// ---- oracle: naive polynomial multiplication, reduced only at the end ----

/// Unreduced bivariate polynomial in (xi, F); reduction is applied once,
/// at the end, first rewriting xi^r and then truncating F^2.
#[derive(Clone, Debug, Default)]
struct NaivePoly {
    coeffs: BTreeMap<(usize, usize), Rat>,
}

impl NaivePoly {
    fn from_class(class: &ChowClass) -> Self {
        let r = class.ambient().rank as usize;
        let mut coeffs = BTreeMap::new();
        for k in 0..r {
            let a = class.xi_coeff(k);
            if a != rat_int(0) {
                coeffs.insert((k, 0), a);
            }
            let b = class.fib_coeff(k);
            if b != rat_int(0) {
                coeffs.insert((k, 1), b);
            }
        }
        NaivePoly { coeffs }
    }

    fn mul(&self, other: &NaivePoly) -> NaivePoly {
        let mut coeffs: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for ((xa, fa), ca) in &self.coeffs {
            for ((xb, fb), cb) in &other.coeffs {
                let key = (xa + xb, fa + fb);
                let entry = coeffs.entry(key).or_insert_with(|| rat_int(0));
                *entry += ca.clone() * cb.clone();
            }
        }
        NaivePoly { coeffs }
    }

    fn reduce(&self, ambient: ChowAmbient) -> ChowClass {
        let r = ambient.rank as usize;
        let deg = rat_int(ambient.deg_e);
        // first: xi^k -> deg^{k-r+1} xi^{r-1} F^{k-r+1} for k >= r
        let mut rewritten: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        for ((x, f), c) in &self.coeffs {
            let (mut x, mut f, mut c) = (*x, *f, c.clone());
            while x >= r {
                x -= 1;
                f += 1;
                c *= deg.clone();
            }
            *rewritten.entry((x, f)).or_insert_with(|| rat_int(0)) += c;
        }
        // then: truncate F^2
        let mut out = ChowClass::zero(ambient);
        for ((x, f), c) in rewritten {
            if f <= 1 {
                out = out
                    .add(&ChowClass::monomial(ambient, x, f == 1, c))
                    .unwrap();
            }
        }
        out
    }
}

// ---- properties ----

proptest! {
    #[test]
    fn chow_ring_axioms((_, x, y, z) in arb_class_triple()) {
        let xy = x.mul(&y).unwrap();
        let yx = y.mul(&x).unwrap();
        prop_assert_eq!(&xy, &yx);
        let x_yz = x.mul(&y.mul(&z).unwrap()).unwrap();
        let xy_z = xy.mul(&z).unwrap();
        prop_assert_eq!(x_yz, xy_z);
        let x_y_plus_z = x.mul(&y.add(&z).unwrap()).unwrap();
        let xy_plus_xz = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(x_y_plus_z, xy_plus_xz);
    }

    #[test]
    fn reduction_is_canonical((ambient, x, y, z) in arb_class_triple()) {
        // multiplying unreduced polynomials and reducing once agrees with
        // reducing at every intermediate step
        let naive = NaivePoly::from_class(&x)
            .mul(&NaivePoly::from_class(&y))
            .mul(&NaivePoly::from_class(&z))
            .reduce(ambient);
        let stepwise = x.mul(&y).unwrap().mul(&z).unwrap();
        prop_assert_eq!(naive, stepwise);
    }

    #[test]
    fn lambda_powers_pin_the_cone(ambient in arb_ambient()) {
        let r = ambient.rank as u32;
        let lambda = DivisorClass::lambda(ambient).to_class();
        prop_assert!(lambda.pow(r).unwrap().is_zero());
        let fibre = DivisorClass::fibre(ambient).to_class();
        let top = lambda.pow(r - 1).unwrap().mul(&fibre).unwrap();
        prop_assert_eq!(top.degree(), rat_int(1));
    }

    #[test]
    fn quotient_class_normalization(
        (r, d, q, deg_n) in (2i64..=6, -12i64..=12, 1i64..=5, -9i64..=9)
            .prop_filter("q < r", |(r, _, q, _)| q < r)
    ) {
        let ambient = ChowAmbient::new(r, d).unwrap();
        let class = projectivized_quotient_class(ambient, q, deg_n, 0).unwrap();
        let probe = class
            .mul(&ChowClass::monomial(ambient, q as usize - 1, false, rat_int(1)))
            .unwrap()
            .mul(&DivisorClass::fibre(ambient).to_class())
            .unwrap();
        prop_assert_eq!(probe.degree(), rat_int(1));
    }

    #[test]
    fn semistable_iff_lambda_nef(bundle in arb_line_bundle()) {
        // two independent routes: subset enumeration vs the mu_min formula
        let by_enumeration = ordinary_semistability(&bundle)?.semistable;
        let ambient = ChowAmbient::from_bundle(&bundle).unwrap();
        let by_nefness = nef_check(&DivisorClass::lambda(ambient), &bundle)?.is_nef();
        prop_assert_eq!(by_enumeration, by_nefness);
    }

    #[test]
    fn theta_equals_lambda_quotient_pairing(bundle in arb_chain()) {
        for subset in closed_subsets(&bundle)? {
            let theta = theta_restriction(&bundle, &subset)?;
            let lambda = lambda_quotient_pairing(&bundle, &subset)?;
            prop_assert_eq!(theta, lambda);
        }
    }

    #[test]
    fn higgs_semistability_matches_pairing_signs(bundle in arb_line_bundle()) {
        let verdict = higgs_semistability(&bundle)?;
        let pairings: Vec<Rat> = closed_subsets(&bundle)?
            .iter()
            .map(|s| lambda_quotient_pairing(&bundle, s).unwrap())
            .collect();
        if verdict.semistable {
            prop_assert!(pairings.iter().all(|p| p >= &rat_int(0)));
        } else {
            prop_assert!(pairings.iter().any(|p| p < &rat_int(0)));
        }
    }

    #[test]
    fn exterior_power_preserves_semistability(
        // rank capped at 5: the exterior powers themselves are enumerated
        // exhaustively, and C(5, 2) = 10 atoms is already 2^10 subsets
        (genus, degrees, mask) in (0u32..=3, prop::collection::vec(-20i64..=20, 1..=5), any::<u64>())
    ) {
        let bundle = bundle_from(genus, &degrees, mask);
        let r = bundle.total_rank();
        let base = ordinary_semistability(&bundle)?.semistable;
        for s in 1..r {
            let wedge = bundle.exterior_power(s)?;
            prop_assert_eq!(ordinary_semistability(&wedge)?.semistable, base);
        }
    }

    #[test]
    fn exterior_power_slope_scales(bundle in arb_line_bundle(), s in 1i64..=5) {
        let r = bundle.total_rank();
        prop_assume!(s < r);
        let wedge = bundle.exterior_power(s)?;
        prop_assert_eq!(wedge.slope(None)?, rat_int(s) * bundle.slope(None)?);
    }

    #[test]
    fn pullback_preserves_higgs_verdicts(bundle in arb_line_bundle(), n in 1i64..=4) {
        prop_assume!(bundle.curve.genus >= 1 || n == 1);
        let pulled = bundle.pullback_etale(n)?;
        let before = higgs_semistability(&bundle)?;
        let after = higgs_semistability(&pulled)?;
        prop_assert_eq!(before.semistable, after.semistable);
        prop_assert_eq!(
            before.destabilizer.map(|r| r.subset),
            after.destabilizer.map(|r| r.subset)
        );
    }

    #[test]
    fn component_sum_matches_total_class(bundle in arb_chain()) {
        let total = hg1_total_class(&bundle)?;
        let mut sum = ChowClass::zero(total.ambient());
        for component in hg1_components(&bundle)? {
            sum = sum.add(&component.cycle_class).unwrap();
        }
        prop_assert_eq!(total, sum);
    }

    #[test]
    fn rank2_chain_components(d1 in -8i64..=8, d2 in -8i64..=8, genus in 0u32..=3) {
        let canonical = 2 * i64::from(genus) - 2;
        prop_assume!(d2 + canonical >= d1);
        let bundle = chain_from(genus, &[d1, d2], u32::MAX);
        let components = hg1_components(&bundle)?;
        prop_assert_eq!(components.len(), 2);
        let ambient = ChowAmbient::from_bundle(&bundle).unwrap();
        let expected = projectivized_quotient_class(
            ambient,
            1,
            d1 - canonical,
            d2 - d1 + canonical,
        )?;
        for component in &components {
            prop_assert_eq!(&component.cycle_class, &expected);
        }
    }

    #[test]
    fn cone_xi_pairing_bound_always_holds(
        (an, ad, bn, bd, mn, md) in (0i64..=50, 1i64..=9, 0i64..=50, 1i64..=9, -50i64..=50, 1i64..=9)
    ) {
        let (a, b, mu) = (rat(an, ad), rat(bn, bd), rat(mn, md));
        let pairing = higgsnef::chow::cone_xi_pairing(&a, &b, &mu)?;
        prop_assert!(pairing.ok);
        prop_assert_eq!(pairing.value - pairing.bound, b);
    }

    #[test]
    fn equation_count_is_r_choose_2(bundle in arb_chain()) {
        let r = bundle.total_rank();
        prop_assume!(r >= 2);
        let equations = higgsnef::higgs_grass::local_equations_for(&bundle)?;
        prop_assert_eq!(equations.len() as i64, r * (r - 1) / 2);
    }
}

#[test]
fn equal_degree_chain_scales_are_all_zero() {
    for degree in [-3i64, 0, 5] {
        let bundle = SplitHiggsBundle::chain(2, &[degree, degree, degree]);
        for subset in closed_subsets(&bundle).unwrap() {
            assert_eq!(
                lambda_quotient_pairing(&bundle, &subset).unwrap(),
                rat_int(0)
            );
        }
    }
}

#[test]
fn infeasible_chain_is_rejected_by_class_formulas() {
    // degree drop 5 -> 0 on genus 1 (canonical degree 0) is infeasible
    let bundle = SplitHiggsBundle::new(
        CurveSpec::new(1),
        vec![
            higgsnef::model::Atom::line("A", 5),
            higgsnef::model::Atom::line("B", 0),
        ],
        [Arrow::new(0, 1)],
    );
    assert!(!bundle.validate().is_valid());
    assert!(higgsnef::higgs_grass::cokernel_profile(&bundle).is_err());
}
