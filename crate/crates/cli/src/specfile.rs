//! On-disk bundle description: a small TOML document.
//!
//! ```toml
//! [curve]
//! genus = 2
//!
//! [[atom]]
//! label = "L1"
//! rank = 1
//! degree = 3
//!
//! [[arrow]]
//! from = "L1"
//! to = "L2"
//! ```
//!
//! Atoms may carry `assumed_stable = true` (meaningful for rank > 1;
//! rank-1 atoms are always stable). Unknown keys are rejected, labels
//! must be unique identifiers, and arrows refer to atoms by label.

use std::collections::BTreeMap;

use higgsnef::model::{Arrow, Atom, CurveSpec, SplitHiggsBundle};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum SpecFileError {
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("at least one atom is required")]
    NoAtoms,
    #[error("label {0:?} is not an identifier (letters, digits, '_')")]
    BadLabel(String),
    #[error("duplicate atom label {0}")]
    DuplicateLabel(String),
    #[error("arrow references unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate arrow {0} -> {1}")]
    DuplicateArrow(String, String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    curve: CurveSection,
    #[serde(default)]
    atom: Vec<AtomSection>,
    #[serde(default)]
    arrow: Vec<ArrowSection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveSection {
    genus: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomSection {
    label: String,
    rank: i64,
    degree: i64,
    #[serde(default)]
    assumed_stable: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowSection {
    from: String,
    to: String,
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_bundle_spec(text: &str) -> Result<SplitHiggsBundle, SpecFileError> {
    let doc: Document = toml::from_str(text)?;
    if doc.atom.is_empty() {
        return Err(SpecFileError::NoAtoms);
    }
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, atom) in doc.atom.iter().enumerate() {
        if !is_identifier(&atom.label) {
            return Err(SpecFileError::BadLabel(atom.label.clone()));
        }
        if index.insert(atom.label.clone(), i).is_some() {
            return Err(SpecFileError::DuplicateLabel(atom.label.clone()));
        }
    }
    let atoms: Vec<Atom> = doc
        .atom
        .iter()
        .map(|a| Atom::new(a.label.clone(), a.rank, a.degree, a.assumed_stable))
        .collect();
    let mut arrows = std::collections::BTreeSet::new();
    for arrow in &doc.arrow {
        let from = *index
            .get(&arrow.from)
            .ok_or_else(|| SpecFileError::UnknownLabel(arrow.from.clone()))?;
        let to = *index
            .get(&arrow.to)
            .ok_or_else(|| SpecFileError::UnknownLabel(arrow.to.clone()))?;
        if !arrows.insert(Arrow::new(from, to)) {
            return Err(SpecFileError::DuplicateArrow(
                arrow.from.clone(),
                arrow.to.clone(),
            ));
        }
    }
    Ok(SplitHiggsBundle::new(
        CurveSpec::new(doc.curve.genus),
        atoms,
        arrows,
    ))
}

/// Canonical serialization: sections in a fixed order, arrows sorted by
/// atom index, `assumed_stable` written only where it is information
/// (rank > 1). `parse(serialize(b)) == b` and serialization is
/// idempotent under re-parsing.
pub fn serialize_bundle_spec(bundle: &SplitHiggsBundle) -> String {
    let mut out = String::new();
    out.push_str("[curve]\n");
    out.push_str(&format!("genus = {}\n", bundle.curve.genus));
    for atom in &bundle.atoms {
        out.push_str("\n[[atom]]\n");
        out.push_str(&format!("label = \"{}\"\n", atom.label));
        out.push_str(&format!("rank = {}\n", atom.rank));
        out.push_str(&format!("degree = {}\n", atom.degree));
        if atom.rank > 1 && atom.assumed_stable {
            out.push_str("assumed_stable = true\n");
        }
    }
    for arrow in &bundle.arrows {
        out.push_str("\n[[arrow]]\n");
        out.push_str(&format!("from = \"{}\"\n", bundle.atoms[arrow.from].label));
        out.push_str(&format!("to = \"{}\"\n", bundle.atoms[arrow.to].label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENUS2: &str = r#"
[curve]
genus = 2

[[atom]]
label = "L1"
rank = 1
degree = 3

[[atom]]
label = "L2"
rank = 1
degree = 1

[[atom]]
label = "L3"
rank = 1
degree = 3

[[arrow]]
from = "L1"
to = "L2"

[[arrow]]
from = "L2"
to = "L3"
"#;

    #[test]
    fn parses_the_genus2_chain() {
        let bundle = parse_bundle_spec(GENUS2).unwrap();
        assert_eq!(bundle, SplitHiggsBundle::chain(2, &[3, 1, 3]));
    }

    #[test]
    fn round_trip_is_canonical() {
        let bundle = parse_bundle_spec(GENUS2).unwrap();
        let canonical = serialize_bundle_spec(&bundle);
        let reparsed = parse_bundle_spec(&canonical).unwrap();
        assert_eq!(reparsed, bundle);
        assert_eq!(serialize_bundle_spec(&reparsed), canonical);
    }

    #[test]
    fn rejects_empty_atom_list() {
        let text = "[curve]\ngenus = 1\n";
        assert!(matches!(
            parse_bundle_spec(text),
            Err(SpecFileError::NoAtoms)
        ));
    }

    #[test]
    fn rejects_unknown_arrow_label() {
        let text = r#"
[curve]
genus = 1
[[atom]]
label = "A"
rank = 1
degree = 0
[[arrow]]
from = "A"
to = "B"
"#;
        match parse_bundle_spec(text) {
            Err(SpecFileError::UnknownLabel(label)) => assert_eq!(label, "B"),
            other => panic!("expected UnknownLabel, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicates_and_unknown_keys() {
        let dup = r#"
[curve]
genus = 1
[[atom]]
label = "A"
rank = 1
degree = 0
[[atom]]
label = "A"
rank = 1
degree = 1
"#;
        assert!(matches!(
            parse_bundle_spec(dup),
            Err(SpecFileError::DuplicateLabel(_))
        ));
        let unknown_key = "[curve]\ngenus = 1\ncolor = \"blue\"\n";
        assert!(matches!(
            parse_bundle_spec(unknown_key),
            Err(SpecFileError::Toml(_))
        ));
    }

    #[test]
    fn toml_errors_carry_position() {
        let text = "[curve\ngenus = 1\n";
        let err = parse_bundle_spec(text).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("line 1"), "got: {message}");
    }
}
