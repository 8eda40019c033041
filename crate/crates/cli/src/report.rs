//! Deterministic human- and machine-readable rendering of every command's
//! result. Rationals are always printed exactly, as `p` or `p/q`; the
//! JSON object carries the same values as strings, plus a
//! `schema_version` key.

use higgsnef::chern::FormalClass;
use higgsnef::chow::{ChowAmbient, DivisorClass};
use higgsnef::higgs_grass::{Component, DemoReport, QProfile};
use higgsnef::model::{SplitHiggsBundle, ValidationReport};
use higgsnef::rat::{fmt_rat, Rat};
use higgsnef::stability::{
    ConeReport, EffectiveNonNef, NefVerdict, NefWitness, StabilityMode, Verdict, COORDINATE_NOTE,
};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Result of one CLI command: text for people, JSON for machines, and
/// the process exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub human: String,
    pub json: Value,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, human: String, mut json: Value) -> Self {
        let map = json.as_object_mut().expect("report JSON is an object");
        map.insert("command".into(), json!(command));
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        Report {
            human,
            json,
            exit_code: 0,
        }
    }
}

fn subset_labels(bundle: &SplitHiggsBundle, subset: &[usize]) -> String {
    format!("{{{}}}", bundle.labels(subset).join(", "))
}

fn ambient_line(ambient: &ChowAmbient) -> String {
    format!(
        "P(E): rank {}, deg E = {}, mu = {}",
        ambient.rank,
        ambient.deg_e,
        fmt_rat(&ambient.slope())
    )
}

pub fn render_validate(report: &ValidationReport) -> Report {
    let mut human = String::new();
    if report.is_valid() {
        human.push_str("VALID\n");
    } else {
        human.push_str("INVALID\n");
        for violation in &report.violations {
            human.push_str(&format!("- {violation}\n"));
        }
    }
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    let mut out = Report::new(
        "validate",
        human,
        json!({ "valid": report.is_valid(), "violations": violations }),
    );
    if !report.is_valid() {
        out.exit_code = 2;
    }
    out
}

pub fn render_slope(bundle: &SplitHiggsBundle, subset: Option<&[usize]>, slope: &Rat) -> Report {
    let subset_text = match subset {
        Some(s) => subset_labels(bundle, s),
        None => "all".to_string(),
    };
    let human = format!("subset: {subset_text}\nslope = {}\n", fmt_rat(slope));
    let subset_json = subset.map(|s| bundle.labels(s));
    Report::new(
        "slope",
        human,
        json!({ "subset": subset_json, "slope": fmt_rat(slope) }),
    )
}

fn verdict_json(bundle: &SplitHiggsBundle, verdict: &Verdict) -> Value {
    let record = |r: &higgsnef::stability::SubsetRecord| {
        json!({
            "subset": bundle.labels(&r.subset),
            "slope": fmt_rat(&r.slope),
            "margin": fmt_rat(&r.margin),
        })
    };
    json!({
        "mode": match verdict.mode {
            StabilityMode::Ordinary => "ordinary",
            StabilityMode::Higgs => "higgs",
        },
        "semistable": verdict.semistable,
        "mu": fmt_rat(&verdict.mu),
        "destabilizer": verdict.destabilizer.as_ref().map(record),
        "certificate": verdict.certificate.iter().map(record).collect::<Vec<_>>(),
        "conditional": verdict.conditional,
    })
}

pub fn render_verdict(bundle: &SplitHiggsBundle, verdict: &Verdict) -> Report {
    let (command, kind) = match verdict.mode {
        StabilityMode::Ordinary => ("stability", "ordinary"),
        StabilityMode::Higgs => ("higgs-stability", "higgs"),
    };
    let mut human = format!(
        "{kind} semistability: {}\n",
        if verdict.semistable {
            "SEMISTABLE"
        } else {
            "UNSTABLE"
        }
    );
    human.push_str(&format!("mu(E) = {}\n", fmt_rat(&verdict.mu)));
    if let Some(destabilizer) = &verdict.destabilizer {
        human.push_str(&format!(
            "destabilizer: {} slope {} margin {}\n",
            subset_labels(bundle, &destabilizer.subset),
            fmt_rat(&destabilizer.slope),
            fmt_rat(&destabilizer.margin),
        ));
    }
    human.push_str("checked subsets:\n");
    for record in &verdict.certificate {
        human.push_str(&format!(
            "  {} slope {} margin {}\n",
            subset_labels(bundle, &record.subset),
            fmt_rat(&record.slope),
            fmt_rat(&record.margin),
        ));
    }
    human.push_str(&format!("note: {COORDINATE_NOTE}\n"));
    if verdict.conditional {
        human.push_str("note: conditional on assumed stability of rank > 1 summands\n");
    }
    Report::new(command, human, verdict_json(bundle, verdict))
}

fn witness_text(witness: &NefWitness) -> String {
    match witness {
        NefWitness::SectionQuotient { label, pairing, .. } => {
            format!("witness quotient {label}, pairing {}", fmt_rat(pairing))
        }
        NefWitness::FibreLine { pairing } => {
            format!("witness fibre line, pairing {}", fmt_rat(pairing))
        }
    }
}

fn witness_json(witness: &NefWitness) -> Value {
    match witness {
        NefWitness::SectionQuotient {
            label,
            atom_slope,
            pairing,
            ..
        } => json!({
            "kind": "section-quotient",
            "atom": label,
            "atom_slope": fmt_rat(atom_slope),
            "pairing": fmt_rat(pairing),
        }),
        NefWitness::FibreLine { pairing } => json!({
            "kind": "fibre-line",
            "pairing": fmt_rat(pairing),
        }),
    }
}

pub fn render_nef(divisor: &DivisorClass, verdict: &NefVerdict) -> Report {
    let mut human = format!(
        "class: {} on P(E) (rank {}, deg E = {})\n",
        divisor, divisor.ambient.rank, divisor.ambient.deg_e
    );
    let json_witness = match verdict {
        NefVerdict::Nef => {
            human.push_str("NEF\n");
            Value::Null
        }
        NefVerdict::NotNef { witness } => {
            human.push_str(&format!("NOT NEF, {}\n", witness_text(witness)));
            witness_json(witness)
        }
    };
    Report::new(
        "nef",
        human,
        json!({
            "class": { "xi": fmt_rat(&divisor.xi_coeff), "fibre": fmt_rat(&divisor.fib_coeff) },
            "nef": verdict.is_nef(),
            "witness": json_witness,
        }),
    )
}

pub fn render_classes(
    ambient: &ChowAmbient,
    lambda: &DivisorClass,
    thetas: &[(i64, DivisorClass)],
    line_atoms: bool,
) -> Report {
    let mut human = ambient_line(ambient);
    human.push('\n');
    human.push_str(&format!("lambda = {lambda}\n"));
    for (s, theta) in thetas {
        human.push_str(&format!(
            "theta_{s} on P(Lambda^{s} E) (rank {}, deg {}): {}\n",
            theta.ambient.rank, theta.ambient.deg_e, theta
        ));
    }
    if !line_atoms {
        human.push_str("note: theta classes require line atoms\n");
    }
    let thetas_json: Vec<Value> = thetas
        .iter()
        .map(|(s, theta)| {
            json!({
                "s": s,
                "rank": theta.ambient.rank,
                "deg": theta.ambient.deg_e,
                "xi": fmt_rat(&theta.xi_coeff),
                "fibre": fmt_rat(&theta.fib_coeff),
                "class": theta.to_string(),
            })
        })
        .collect();
    Report::new(
        "classes",
        human,
        json!({
            "rank": ambient.rank,
            "deg_e": ambient.deg_e,
            "mu": fmt_rat(&ambient.slope()),
            "lambda": {
                "xi": fmt_rat(&lambda.xi_coeff),
                "fibre": fmt_rat(&lambda.fib_coeff),
                "class": lambda.to_string(),
            },
            "theta": thetas_json,
        }),
    )
}

pub fn render_grass1(
    bundle: &SplitHiggsBundle,
    profile: &QProfile,
    components: &[Component],
    total: &higgsnef::chow::ChowClass,
) -> Report {
    let sources: Vec<String> = bundle.labels(&profile.source_atoms);
    let mut human = format!(
        "cokernel profile: sources {{{}}}, torsion degree {}, image rank {}, image degree {}\n",
        sources.join(", "),
        profile.torsion_degree,
        profile.image_rank,
        profile.image_degree,
    );
    for (i, component) in components.iter().enumerate() {
        let lambda = match &component.restricted_lambda {
            Some(value) => fmt_rat(value),
            None => "n/a (not a curve)".to_string(),
        };
        human.push_str(&format!(
            "component {}: {}, depth {}, class {}, lambda restriction {}, section of P(E): {}\n",
            i + 1,
            component.kind,
            component.depth,
            component.cycle_class,
            lambda,
            if component.isomorphic_to_base {
                "yes"
            } else {
                "no"
            },
        ));
    }
    human.push_str(&format!("total class: {total}\n"));
    human.push_str("component sum check: OK\n");
    human.push_str("note: embedded components carry no class and fibre components are excluded\n");
    let components_json: Vec<Value> = components
        .iter()
        .map(|c| {
            json!({
                "kind": match c.kind {
                    higgsnef::higgs_grass::ComponentKind::CokernelFamily => "cokernel-family",
                    higgsnef::higgs_grass::ComponentKind::TruncationPushforward =>
                        "truncation-pushforward",
                },
                "depth": c.depth,
                "class": c.cycle_class.to_string(),
                "lambda_restriction": c.restricted_lambda.as_ref().map(fmt_rat),
                "isomorphic_to_base": c.isomorphic_to_base,
            })
        })
        .collect();
    Report::new(
        "grass1",
        human,
        json!({
            "profile": {
                "sources": sources,
                "torsion_degree": profile.torsion_degree,
                "image_rank": profile.image_rank,
                "image_degree": profile.image_degree,
            },
            "components": components_json,
            "total_class": total.to_string(),
            "component_sum_check": "ok",
        }),
    )
}

pub fn render_equations(equations: &[String]) -> Report {
    let mut human = String::new();
    for equation in equations {
        human.push_str(equation);
        human.push('\n');
    }
    Report::new("equations", human, json!({ "equations": equations }))
}

pub fn render_theta(
    bundle: &SplitHiggsBundle,
    subset: &[usize],
    quotient_rank: i64,
    value: &Rat,
) -> Report {
    let human = format!(
        "theta_{quotient_rank} restriction (kernel {}, quotient rank {quotient_rank}) = {}\n",
        subset_labels(bundle, subset),
        fmt_rat(value),
    );
    Report::new(
        "theta",
        human,
        json!({
            "subset": bundle.labels(subset),
            "s": quotient_rank,
            "value": fmt_rat(value),
        }),
    )
}

pub fn render_pairing(
    bundle: &SplitHiggsBundle,
    subset: &[usize],
    quotient_rank: i64,
    value: &Rat,
) -> Report {
    let human = format!(
        "(lambda_{quotient_rank})^{quotient_rank} (kernel {}, quotient rank {quotient_rank}) = {}\n",
        subset_labels(bundle, subset),
        fmt_rat(value),
    );
    Report::new(
        "pairing",
        human,
        json!({
            "subset": bundle.labels(subset),
            "s": quotient_rank,
            "value": fmt_rat(value),
        }),
    )
}

fn effective_json(effective: &EffectiveNonNef) -> Value {
    json!({
        "class": effective.class.to_string(),
        "xi": fmt_rat(&effective.class.xi_coeff),
        "fibre": fmt_rat(&effective.class.fib_coeff),
        "scale": effective.scale.to_string(),
        "alpha": fmt_rat(&effective.alpha),
        "witness_atom": effective.witness_label.clone(),
        "witness_pairing": fmt_rat(&effective.witness_pairing),
    })
}

pub fn render_miyaoka(report: &ConeReport) -> Report {
    let mut human = format!(
        "ordinary semistability: {}\n",
        if report.semistable {
            "SEMISTABLE"
        } else {
            "UNSTABLE"
        }
    );
    human.push_str(&format!("mu(E) = {}\n", fmt_rat(&report.mu)));
    let mut pairings_json = Vec::new();
    if let (Some((lambda, fibre)), Some(curve_cone)) =
        (&report.nef_generators, &report.curve_generators)
    {
        human.push_str(&format!(
            "nef cone: spanned by lambda = {lambda} and {fibre}\n"
        ));
        match &curve_cone.fibre_generator {
            Some(fibre_generator) => human.push_str(&format!(
                "curve cone: spanned by {} and {}\n",
                curve_cone.section_generator, fibre_generator
            )),
            None => human.push_str(&format!(
                "curve cone: spanned by {} (rank 1: no fibre lines)\n",
                curve_cone.section_generator
            )),
        }
        human.push_str("pairings:\n");
        for (name, value) in &curve_cone.pairings {
            human.push_str(&format!("  {name} = {}\n", fmt_rat(value)));
            pairings_json.push(json!({ "name": name, "value": fmt_rat(value) }));
        }
    }
    let mut witness_value = Value::Null;
    let mut effective_value = Value::Null;
    if let Some(witness) = &report.nef_witness {
        human.push_str(&format!("lambda is NOT NEF, {}\n", witness_text(witness)));
        witness_value = witness_json(witness);
    }
    if let Some(effective) = &report.effective_non_nef {
        human.push_str(&format!(
            "effective non-nef class: {} (scale {}, alpha = {})\n",
            effective.class,
            effective.scale,
            fmt_rat(&effective.alpha),
        ));
        human.push_str(&format!(
            "  pairing against the section through {}: {}\n",
            effective.witness_label,
            fmt_rat(&effective.witness_pairing),
        ));
        human.push_str(
            "  effectivity holds for large multiples of the class (reported, not certified)\n",
        );
        effective_value = effective_json(effective);
    }
    if report.conditional {
        human.push_str("note: conditional on assumed stability of rank > 1 summands\n");
    }
    Report::new(
        "miyaoka",
        human,
        json!({
            "semistable": report.semistable,
            "mu": fmt_rat(&report.mu),
            "nef_generators": report.nef_generators.as_ref().map(|(l, f)| json!({
                "lambda": l.to_string(),
                "fibre": f.to_string(),
            })),
            "curve_generators": report.curve_generators.as_ref().map(|c| json!({
                "section": c.section_generator.to_string(),
                "fibre_line": c.fibre_generator.as_ref().map(|g| g.to_string()),
            })),
            "pairings": pairings_json,
            "nef_witness": witness_value,
            "effective_non_nef": effective_value,
            "conditional": report.conditional,
        }),
    )
}

fn formal_json(class: &FormalClass) -> Value {
    json!({
        "c1": fmt_rat(&class.c1),
        "c1_sq": fmt_rat(&class.c1_sq),
        "c2": fmt_rat(&class.c2),
        "display": class.to_string(),
    })
}

pub fn render_delta(
    rank: i64,
    delta: &FormalClass,
    tensor: Option<&FormalClass>,
    verified: bool,
) -> Report {
    let mut human = format!("Delta = {delta}\n");
    match tensor {
        Some(tensor) => {
            human.push_str(&format!("c2(E tensor E*) = {tensor}\n"));
            human.push_str(&format!(
                "identity 2r * Delta = c2(E tensor E*): {}\n",
                if verified { "VERIFIED" } else { "FAILED" }
            ));
        }
        None => human.push_str(&format!(
            "tensor expansion is only run for ranks 2..{}\n",
            higgsnef::chern::MAX_EXPANSION_RANK
        )),
    }
    Report::new(
        "delta",
        human,
        json!({
            "rank": rank,
            "delta": formal_json(delta),
            "c2_tensor_dual": tensor.map(formal_json),
            "verified": tensor.map(|_| verified),
        }),
    )
}

pub fn render_demo(report: &DemoReport) -> Report {
    let bundle = &report.bundle;
    let chain_text: Vec<String> = bundle
        .atoms
        .iter()
        .map(|a| format!("{} (deg {})", a.label, a.degree))
        .collect();
    let mut human = format!(
        "genus {} chain: {}\n",
        bundle.curve.genus,
        chain_text.join(" -> ")
    );
    human.push_str(&format!(
        "subbundle inequality 2a1 - a2 - a3 = {} (holds)\n",
        fmt_rat(&report.ineq_l2_l3)
    ));
    human.push_str(&format!(
        "subbundle inequality a1 + a2 - 2a3 = {} (violated)\n",
        fmt_rat(&report.ineq_l3)
    ));
    human.push_str(&format!(
        "lambda_1 on truncation component = {}\n",
        fmt_rat(&report.lambda_truncation)
    ));
    human.push_str(&format!(
        "lambda_1 on cokernel component = {}\n",
        fmt_rat(&report.lambda_cokernel)
    ));
    human.push_str(&format!(
        "theta_2 on rank-2 quotient section = {}\n",
        fmt_rat(&report.theta_rank2_section)
    ));
    let destabilizer = report
        .verdict
        .destabilizer
        .as_ref()
        .map(|r| bundle.labels(&r.subset))
        .unwrap_or_default();
    human.push_str(&format!(
        "HIGGS-UNSTABLE (destabilizer: {})\n",
        destabilizer.join(", ")
    ));
    let degrees: Vec<i64> = bundle.atoms.iter().map(|a| a.degree).collect();
    Report::new(
        "demo-counterexample",
        human,
        json!({
            "genus": bundle.curve.genus,
            "degrees": degrees,
            "inequality_2a1_a2_a3": fmt_rat(&report.ineq_l2_l3),
            "inequality_a1_a2_2a3": fmt_rat(&report.ineq_l3),
            "lambda_truncation": fmt_rat(&report.lambda_truncation),
            "lambda_cokernel": fmt_rat(&report.lambda_cokernel),
            "theta_rank2_section": fmt_rat(&report.theta_rank2_section),
            "higgs_semistable": report.verdict.semistable,
            "destabilizer": destabilizer,
        }),
    )
}
