//! Exhaustive statistics over all binary invariants of a given length.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{count_minimal_sequences, Config};
use crate::invariants::{binary_to_steps, BinaryInvariants};

pub const DEFAULT_LENGTH_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("length {length} exceeds the enumeration cap of {cap}")]
pub struct CapExceeded {
    pub length: usize,
    pub cap: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LengthSummary {
    pub length: usize,
    /// Count value to number of inputs with that count.
    pub histogram: BTreeMap<BigUint, u64>,
    pub depth_histogram: BTreeMap<usize, u64>,
    /// Inputs whose configuration sequence contains `L1 R1 L1 R1`.
    pub block_count: u64,
    /// Inputs containing the block whose count is 1. Expected to stay 0.
    pub block_with_unique_count: u64,
}

impl LengthSummary {
    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn unique_count(&self) -> u64 {
        self.histogram.get(&BigUint::one()).copied().unwrap_or(0)
    }

    /// Inputs with a unique minimal construction, over `2^length`.
    pub fn unique_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.unique_count(), 1 << self.length)
    }

    pub fn block_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.block_count, 1 << self.length)
    }

    fn merge(mut self, other: LengthSummary) -> LengthSummary {
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        for (k, v) in other.depth_histogram {
            *self.depth_histogram.entry(k).or_default() += v;
        }
        self.block_count += other.block_count;
        self.block_with_unique_count += other.block_with_unique_count;
        self
    }
}

const BLOCK: [Config; 4] = [Config::L1, Config::R1, Config::L1, Config::R1];

pub fn block_occurrence(configs: &[Config]) -> bool {
    configs.windows(4).any(|w| w == BLOCK)
}

pub fn enumerate_counts(length: usize) -> Result<LengthSummary, CapExceeded> {
    enumerate_counts_capped(length, DEFAULT_LENGTH_CAP)
}

pub fn enumerate_counts_capped(length: usize, cap: usize) -> Result<LengthSummary, CapExceeded> {
    if length > cap || length >= 63 {
        return Err(CapExceeded { length, cap });
    }
    let empty = || LengthSummary {
        length,
        ..Default::default()
    };
    Ok((0..1u64 << length)
        .into_par_iter()
        .fold(empty, |mut acc, i| {
            let r =
                count_minimal_sequences(&binary_to_steps(&BinaryInvariants::from_index(i, length)));
            let block = block_occurrence(&r.configs);
            if block {
                acc.block_count += 1;
                if r.count.is_one() {
                    acc.block_with_unique_count += 1;
                }
            }
            *acc.depth_histogram.entry(r.depth).or_default() += 1;
            *acc.histogram.entry(r.count).or_default() += 1;
            acc
        })
        .reduce(empty, LengthSummary::merge))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub rows: Vec<LengthSummary>,
}

pub fn genericity_report(
    min_length: usize,
    max_length: usize,
) -> Result<GenericityReport, CapExceeded> {
    genericity_report_capped(min_length, max_length, DEFAULT_LENGTH_CAP)
}

pub fn genericity_report_capped(
    min_length: usize,
    max_length: usize,
    cap: usize,
) -> Result<GenericityReport, CapExceeded> {
    if max_length > cap {
        return Err(CapExceeded {
            length: max_length,
            cap,
        });
    }
    let rows = (min_length..=max_length)
        .map(|len| enumerate_counts_capped(len, cap))
        .collect::<Result<_, _>>()?;
    Ok(GenericityReport { rows })
}

fn ratio_cell(r: Ratio<u64>) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

impl GenericityReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6}  {:>9}  {:>9}  {:>10}  {:>9}  {:>10}  {:>16}",
            "length", "inputs", "block", "block_frac", "unique", "unique_frac", "block_and_unique"
        );
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>6}  {:>9}  {:>9}  {:>10}  {:>9}  {:>10}  {:>16}",
                row.length,
                row.total(),
                row.block_count,
                ratio_cell(row.block_fraction()),
                row.unique_count(),
                ratio_cell(row.unique_fraction()),
                row.block_with_unique_count
            );
        }
        out
    }
}

impl LengthSummary {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "length {}: {} inputs", self.length, self.total());
        let _ = writeln!(
            out,
            "unique constructions: {} ({})",
            self.unique_count(),
            self.unique_fraction()
        );
        let _ = writeln!(out, "containing L1 R1 L1 R1: {}", self.block_count);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>12}  {:>9}", "count", "inputs");
        for (count, freq) in &self.histogram {
            let _ = writeln!(out, "{count:>12}  {freq:>9}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>12}  {:>9}", "depth", "inputs");
        for (depth, freq) in &self.depth_histogram {
            let _ = writeln!(out, "{depth:>12}  {freq:>9}");
        }
        out
    }
}
