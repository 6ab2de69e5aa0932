//! JSON documents emitted by the command-line tool. Arbitrary-precision
//! values (counts, λ, ρ, matrix entries) are always decimal strings.
//!
//! The schema lives in `schema/output.schema.json`; bump [`SCHEMA_VERSION`]
//! together with it.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::corridor::{corridor_to_document, Corridor, CorridorDocument, Disposition};
use crate::counting::{CountResult, Matrix2};
use crate::invariants::binary_to_turns;
use crate::stats::LengthSummary;

pub const SCHEMA_VERSION: &str = "1.0";

/// The published JSON schema for every document below.
pub const SCHEMA: &str = include_str!("../schema/output.schema.json");

type MatrixCells = [[String; 2]; 2];

fn matrix_cells(m: &Matrix2) -> MatrixCells {
    m.rows().map(|row| row.map(|x| x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub input: String,
    /// `null` for the simple tunnel.
    pub binary: Option<String>,
    pub steps: String,
    /// `null` for the simple tunnel.
    pub turns: Option<String>,
    pub configs: Vec<String>,
    pub matrices: Vec<MatrixCells>,
    pub product: MatrixCells,
    pub lambda_profile: Vec<String>,
    pub rho_profile: Vec<String>,
    pub disposition: Disposition,
    pub depth: usize,
    pub count: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corridor: Option<CorridorDocument>,
}

impl OutputDocument {
    pub fn new(command: &str, input: &str, r: &CountResult, corridor: Option<&Corridor>) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            input: input.to_string(),
            binary: r.binary.as_ref().map(|b| b.to_string()),
            steps: r.steps.to_string(),
            turns: r.binary.as_ref().map(|b| binary_to_turns(b).to_string()),
            configs: r.configs.iter().map(|c| c.to_string()).collect(),
            matrices: r.matrices.iter().map(matrix_cells).collect(),
            product: matrix_cells(&r.product),
            lambda_profile: r.profile.iter().map(|(l, _)| l.to_string()).collect(),
            rho_profile: r.profile.iter().map(|(_, r)| r.to_string()).collect(),
            disposition: r.disposition,
            depth: r.depth,
            count: r.count.to_string(),
            corridor: corridor.map(corridor_to_document),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyDocument {
    pub schema_version: String,
    pub command: String,
    pub u: String,
    pub v: String,
    pub distance: usize,
    pub count: String,
}

impl FareyDocument {
    pub fn new(u: &str, v: &str, distance: usize, count: &BigUint) -> Self {
        FareyDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: "farey".to_string(),
            u: u.to_string(),
            v: v.to_string(),
            distance,
            count: count.to_string(),
        }
    }
}

fn count_histogram<S: Serializer>(h: &BTreeMap<BigUint, u64>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(h.len()))?;
    for (k, v) in h {
        map.serialize_entry(&k.to_string(), v)?;
    }
    map.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthRecord {
    pub length: usize,
    pub total: u64,
    /// Keyed by the decimal count, in increasing numeric order.
    #[serde(serialize_with = "count_histogram")]
    pub histogram: BTreeMap<BigUint, u64>,
    pub depth_histogram: BTreeMap<usize, u64>,
    pub unique_count: u64,
    pub unique_fraction: String,
    pub block_count: u64,
    pub block_fraction: String,
    pub block_with_unique_count: u64,
}

fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl From<&LengthSummary> for LengthRecord {
    fn from(s: &LengthSummary) -> Self {
        LengthRecord {
            length: s.length,
            total: s.total(),
            histogram: s.histogram.clone(),
            depth_histogram: s.depth_histogram.clone(),
            unique_count: s.unique_count(),
            unique_fraction: ratio_string(s.unique_fraction()),
            block_count: s.block_count,
            block_fraction: ratio_string(s.block_fraction()),
            block_with_unique_count: s.block_with_unique_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsDocument {
    pub schema_version: String,
    pub command: String,
    pub lengths: Vec<LengthRecord>,
}

impl StatsDocument {
    pub fn new(rows: &[LengthSummary]) -> Self {
        StatsDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: "stats".to_string(),
            lengths: rows.iter().map(LengthRecord::from).collect(),
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}
