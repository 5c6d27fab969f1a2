//! Instance documents: one JSON file describing a space and optionally a code.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use pbcode::codes::Code;
use pbcode::{BlockSpace, Caps, LabelMap, Poset, WeightFunction};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub m: u32,
    pub weight: WeightSpec,
    pub poset: PosetSpec,
    pub pi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<CapsSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightName {
    Hamming,
    Lee,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub kind: WeightName,
    /// `w(0), ..., w(m - 1)` for a custom weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetShape {
    Chain,
    Antichain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub n: usize,
    /// Pairs `[a, b]` with `a ⪯ b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<PosetShape>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeSpec {
    Explicit { words: Vec<Vec<u32>> },
    Linear { generators: Vec<Vec<u32>> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codeword_cap: Option<u64>,
}

/// A validated instance: the document plus the objects built from it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub doc: InstanceDoc,
    pub space: BlockSpace,
    pub code: Option<Code>,
    pub caps: Caps,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.doc == other.doc
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        let what = match e.classify() {
            Category::Syntax | Category::Eof => "syntax error",
            Category::Data | Category::Io => "invalid instance",
        };
        invalid(format!(
            "{what} at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    build(doc)
}

pub fn to_json(doc: &InstanceDoc) -> String {
    serde_json::to_string_pretty(doc).expect("instance documents always serialize")
}

pub fn build(doc: InstanceDoc) -> Result<Instance, CliError> {
    let weight = match (doc.weight.kind, &doc.weight.table) {
        (WeightName::Custom, Some(table)) => {
            if table.len() != doc.m as usize {
                return Err(invalid(format!(
                    "weight.table has {} entries but m = {}",
                    table.len(),
                    doc.m
                )));
            }
            let map: BTreeMap<u32, u32> = (0..doc.m).zip(table.iter().copied()).collect();
            WeightFunction::custom(doc.m, &map)?
        }
        (WeightName::Custom, None) => {
            return Err(invalid("weight.kind \"custom\" needs weight.table"))
        }
        (_, Some(_)) => return Err(invalid("weight.table is only allowed with kind \"custom\"")),
        (WeightName::Hamming, None) => WeightFunction::hamming(doc.m)?,
        (WeightName::Lee, None) => WeightFunction::lee(doc.m)?,
    };

    let n = doc.poset.n;
    let poset = match (&doc.poset.covers, doc.poset.kind) {
        (Some(_), Some(_)) => return Err(invalid("poset takes either covers or kind, not both")),
        (Some(covers), None) => Poset::new(n, covers)?,
        (None, Some(PosetShape::Chain)) => Poset::chain(n)?,
        (None, Some(PosetShape::Antichain)) | (None, None) => Poset::antichain(n)?,
    };
    if doc.pi.len() != n {
        return Err(invalid(format!(
            "poset.n = {n} but pi has {} entries",
            doc.pi.len()
        )));
    }
    let space = BlockSpace::new(poset, LabelMap::new(doc.pi.clone())?, weight)?;

    let code = match &doc.code {
        None => None,
        Some(spec) => {
            let vectors = match spec {
                CodeSpec::Explicit { words } => words,
                CodeSpec::Linear { generators } => generators,
            };
            let big_n = space.total_length();
            if let Some(bad) = vectors.iter().find(|v| v.len() != big_n) {
                return Err(invalid(format!(
                    "code vector {bad:?} has length {} but N = {big_n}",
                    bad.len()
                )));
            }
            Some(match spec {
                CodeSpec::Explicit { words } => Code::explicit(&space, words.clone())?,
                CodeSpec::Linear { generators } => Code::linear(&space, generators.clone())?,
            })
        }
    };

    let mut caps = Caps::default();
    if let Some(spec) = &doc.caps {
        caps.brute_cap = spec.brute_cap.unwrap_or(caps.brute_cap);
        caps.ideal_cap = spec.ideal_cap.unwrap_or(caps.ideal_cap);
        caps.codeword_cap = spec.codeword_cap.unwrap_or(caps.codeword_cap);
    }

    Ok(Instance {
        doc,
        space,
        code,
        caps,
    })
}
