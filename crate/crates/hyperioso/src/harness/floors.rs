//! Regression floors for the ratio checks.
//!
//! Existential constants are never hard-coded into assertions. Instead,
//! each `(check, corpus)` pair that has been calibrated carries the minimum
//! ratio measured on that corpus at calibration time, together with the
//! witness attaining it; verification asserts the measured minimum never
//! drops below the floor (to 1e-9) on the same corpus. Regenerate the table
//! with the `calibrate` subcommand after intentional changes.

use std::collections::HashMap;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Floor {
    pub check: &'static str,
    pub corpus: &'static str,
    pub min_ratio: f64,
    pub witness: Option<&'static str>,
}

// Calibrated values are appended by scripts/not by hand edits; see the
// calibrate subcommand. Placeholder until first calibration.
pub static FLOORS: &[Floor] = &[];

/// A floor table loadable at run time (the `--floors` flag), overriding the
/// built-in table.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct FloorTable {
    pub floors: Vec<FloorEntry>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FloorEntry {
    pub check: String,
    pub corpus: String,
    pub min_ratio: f64,
    #[serde(default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct FloorSet {
    entries: HashMap<(String, String), FloorEntry>,
}

impl FloorSet {
    pub fn builtin() -> Self {
        let mut entries = HashMap::new();
        for floor in FLOORS {
            entries.insert(
                (floor.check.to_string(), floor.corpus.to_string()),
                FloorEntry {
                    check: floor.check.to_string(),
                    corpus: floor.corpus.to_string(),
                    min_ratio: floor.min_ratio,
                    witness: floor.witness.map(str::to_string),
                },
            );
        }
        Self { entries }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let table: FloorTable =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut entries = HashMap::new();
        for entry in table.floors {
            entries.insert((entry.check.clone(), entry.corpus.clone()), entry);
        }
        Ok(Self { entries })
    }

    pub fn get(&self, check: &str, corpus: &str) -> Option<&FloorEntry> {
        self.entries
            .get(&(check.to_string(), corpus.to_string()))
    }
}
