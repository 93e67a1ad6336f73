//! JSON instance files.
//!
//! An instance file carries the supply vector `h` plus exactly one description
//! of the demand side:
//!
//! * **explicit form** — a (0,1) pattern under the key `"F"` (one inner array
//!   per row) together with row sums `"r"` and optional per-row ceilings
//!   `"rbar"`;
//! * **service form** — shared special times `"times"` (strictly increasing,
//!   starting at 0 and ending at the horizon) and a list of `"loads"`, each
//!   `{"r": duration, "a": arrival, "d": deadline, "rbar": rate}` with `a`/`d`
//!   indexing into `times` and `rbar` defaulting to 1.
//!
//! Either form may add `"ones"`: a list of 1-based `[row, column]` cells that a
//! completion must set to 1. Fixed ones only make sense for (0,1) instances,
//! so every ceiling must be 1.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::instance::Instance;
use crate::pattern::{PatternMatrix, ServiceSpec};

/// One load in the service form of an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadEntry {
    /// Requested units (total duration).
    pub r: u32,
    /// Arrival, as an index into `times`.
    pub a: usize,
    /// Deadline, as an index into `times`; the window is `[times[a], times[d])`.
    pub d: usize,
    /// Per-slot rate ceiling.
    #[serde(default = "unit_rate", skip_serializing_if = "is_unit_rate")]
    pub rbar: u32,
}

fn unit_rate() -> u32 {
    1
}

#[allow(clippy::trivially_copy_pass_by_ref)] // signature dictated by serde
fn is_unit_rate(rate: &u32) -> bool {
    *rate == 1
}

/// The raw content of an instance file, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// Supply per slot (the column-sum vector).
    pub h: Vec<u32>,
    /// Explicit pattern rows, row-major 0/1.
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<Vec<u8>>>,
    /// Row sums; required with `F`, forbidden with `loads`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<u32>>,
    /// Per-row entry ceilings; optional with `F`, forbidden with `loads`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rbar: Option<Vec<u32>>,
    /// Special times for the service form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<usize>>,
    /// Loads for the service form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loads: Option<Vec<LoadEntry>>,
    /// Cells fixed to 1, as 1-based `[row, column]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ones: Option<Vec<[usize; 2]>>,
}

/// A parsed and validated instance file.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    /// The instance itself.
    pub instance: Instance,
    /// The service specs, when the file used the service form.
    pub specs: Option<Vec<ServiceSpec>>,
    /// The special times, when the file used the service form.
    pub times: Option<Vec<usize>>,
    /// Fixed-one cells, 0-based.
    pub fixed_ones: Vec<(usize, usize)>,
    /// The raw file content.
    pub file: InstanceFile,
}

/// Parses and validates an instance from its JSON text.
pub fn parse_instance(text: &str) -> Result<LoadedInstance, Error> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    instantiate(file)
}

/// Reads and parses an instance file from disk.
pub fn load_instance(path: &Path) -> Result<LoadedInstance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

/// Serializes an instance file as pretty-printed JSON.
pub fn to_json(file: &InstanceFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("instance files always serialize");
    text.push('\n');
    text
}

/// Builds the [`Instance`] a validated file describes.
fn instantiate(file: InstanceFile) -> Result<LoadedInstance, Error> {
    let explicit = file.pattern.is_some();
    let service = file.times.is_some() || file.loads.is_some();
    if explicit && service {
        return Err(Error::Parse(
            "give either \"F\"/\"r\" or \"times\"/\"loads\", not both".into(),
        ));
    }

    let (instance, specs, times) = if explicit {
        if file.times.is_some() || file.loads.is_some() {
            unreachable!("service keys rejected above");
        }
        let rows: Vec<Vec<u8>> = file.pattern.clone().unwrap();
        let demand = file
            .r
            .clone()
            .ok_or_else(|| Error::Parse("the explicit form needs row sums under \"r\"".into()))?;
        let pattern = PatternMatrix::from_rows(&rows)?;
        let instance = match file.rbar.clone() {
            Some(ceilings) => {
                Instance::with_ceilings(file.h.clone(), demand, pattern, ceilings)?
            }
            None => Instance::new(file.h.clone(), demand, pattern)?,
        };
        (instance, None, None)
    } else if service {
        let times = file
            .times
            .clone()
            .ok_or_else(|| Error::Parse("the service form needs \"times\"".into()))?;
        let loads = file
            .loads
            .clone()
            .ok_or_else(|| Error::Parse("the service form needs \"loads\"".into()))?;
        if file.r.is_some() || file.rbar.is_some() {
            return Err(Error::Parse(
                "in the service form, demands and rates live inside \"loads\"".into(),
            ));
        }
        let specs: Vec<ServiceSpec> = loads
            .iter()
            .map(|l| ServiceSpec::with_ceiling(l.r, l.a, l.d, l.rbar))
            .collect();
        let instance = Instance::from_services(&specs, &times, file.h.clone())?;
        (instance, Some(specs), Some(times))
    } else {
        return Err(Error::Parse(
            "no demand side: give \"F\"/\"r\" or \"times\"/\"loads\"".into(),
        ));
    };

    let fixed_ones = convert_ones(file.ones.as_deref().unwrap_or(&[]), &instance)?;
    Ok(LoadedInstance { instance, specs, times, fixed_ones, file })
}

/// Converts 1-based `[row, column]` pairs to 0-based cells, checking bounds
/// and the unit-ceiling requirement.
fn convert_ones(ones: &[[usize; 2]], instance: &Instance) -> Result<Vec<(usize, usize)>, Error> {
    if ones.is_empty() {
        return Ok(Vec::new());
    }
    if !instance.has_unit_ceilings() {
        return Err(Error::InvalidFixedOnes(
            "fixed ones need every ceiling to be 1".into(),
        ));
    }
    let (rows, cols) = (instance.n_rows(), instance.n_cols());
    let mut converted = Vec::with_capacity(ones.len());
    for &[row, col] in ones {
        if row == 0 || col == 0 {
            return Err(Error::Parse(format!(
                "fixed one [{row}, {col}] is 0-indexed; cells are 1-based"
            )));
        }
        if row > rows || col > cols {
            return Err(Error::IndexOutOfRange(format!(
                "fixed one [{row}, {col}] outside a {rows}x{cols} instance"
            )));
        }
        converted.push((row - 1, col - 1));
    }
    Ok(converted)
}
