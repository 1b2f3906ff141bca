//! JSON file formats for structures and generator pairs.
//!
//! A form is written as a list of `[indices, expression]` entries, e.g.
//! `[[[0, 1], "1"], [[2], "y"]]`, with 0-based strictly increasing indices. An object
//! keyed by comma-separated indices (`{"0,1": "1"}`) is accepted on input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Chart;
use crate::error::{Error, Result};
use crate::exterior::{Alternating, DiffForm, Variance};
use crate::structures::CovariantPair;
use crate::symmetries::GeneratorPair;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Entries(Vec<(Vec<usize>, String)>),
    Keyed(BTreeMap<String, String>),
}

impl FormSpec {
    fn entries(&self) -> Result<Vec<(Vec<usize>, String)>> {
        match self {
            FormSpec::Entries(e) => Ok(e.clone()),
            FormSpec::Keyed(map) => map
                .iter()
                .map(|(k, v)| {
                    let body = k.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
                    let idx = if body.trim().is_empty() {
                        Vec::new()
                    } else {
                        body.split(',')
                            .map(|s| s.trim().parse::<usize>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(|_| Error::Parse { pos: 0, msg: format!("bad index key `{k}`") })?
                    };
                    Ok((idx, v.clone()))
                })
                .collect(),
        }
    }
}

/// Parses a form or multivector of the given degree; index tuples must be strictly increasing.
pub fn parse_alternating<V: Variance>(spec: &FormSpec, chart: &Chart, degree: usize) -> Result<Alternating<V>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut comps = Vec::new();
    for (idx, text) in spec.entries()? {
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Index { indices: idx, reason: "indices must be strictly increasing".into() });
        }
        if !seen.insert(idx.clone()) {
            return Err(Error::Index { indices: idx, reason: "duplicate entry".into() });
        }
        comps.push((idx, chart.parse(&text)?));
    }
    Alternating::from_components(chart.dim(), degree, comps)
}

pub fn alternating_to_spec<V: Variance>(a: &Alternating<V>, chart: &Chart) -> FormSpec {
    FormSpec::Entries(a.components().map(|(idx, v)| (idx.clone(), chart.show(v))).collect())
}

/// `{"dimension", "coordinates", "omega", "Omega"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureFile {
    pub dimension: usize,
    pub coordinates: Vec<String>,
    pub omega: FormSpec,
    #[serde(rename = "Omega")]
    pub two_form: FormSpec,
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure file serializes")
    }

    pub fn to_structure(&self) -> Result<(Chart, CovariantPair)> {
        let chart = Chart::new(&self.coordinates)?;
        if chart.dim() != self.dimension {
            return Err(Error::InvalidChart(format!(
                "dimension {} does not match {} coordinates",
                self.dimension,
                chart.dim()
            )));
        }
        let omega = parse_alternating(&self.omega, &chart, 1)?;
        let two_form = parse_alternating(&self.two_form, &chart, 2)?;
        Ok((chart, CovariantPair::new(omega, two_form)?))
    }

    pub fn from_structure(chart: &Chart, cov: &CovariantPair) -> Self {
        StructureFile {
            dimension: chart.dim(),
            coordinates: chart.names().to_vec(),
            omega: alternating_to_spec(cov.omega(), chart),
            two_form: alternating_to_spec(cov.two_form(), chart),
        }
    }
}

/// `{"alpha", "h"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub alpha: FormSpec,
    pub h: String,
}

/// A single pair or a list of pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairFile {
    One(PairSpec),
    Many(Vec<PairSpec>),
}

impl PairSpec {
    pub fn to_pair(&self, chart: &Chart) -> Result<GeneratorPair> {
        let alpha: DiffForm = parse_alternating(&self.alpha, chart, 1)?;
        GeneratorPair::new(alpha, chart.parse(&self.h)?)
    }

    pub fn from_pair(g: &GeneratorPair, chart: &Chart) -> Self {
        PairSpec { alpha: alternating_to_spec(&g.alpha, chart), h: chart.show(&g.h) }
    }
}

impl PairFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_pairs(&self, chart: &Chart) -> Result<Vec<GeneratorPair>> {
        match self {
            PairFile::One(p) => Ok(vec![p.to_pair(chart)?]),
            PairFile::Many(ps) => ps.iter().map(|p| p.to_pair(chart)).collect(),
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { pos: e.column(), msg: format!("malformed JSON at line {}: {e}", e.line()) }
}

