//! Serializable check reports: JSON for machines, CSV rows per function.

use serde::Serialize;

use crate::analyze::{LIBRARY_VERSION, SCHEMA_VERSION};

/// One `(function, parameter point)` outcome.
#[derive(Clone, Debug, Serialize)]
pub struct FunctionRow {
    /// The corpus label (a `tt:` string or a family spec).
    pub function: String,
    /// The witness form, always a `tt:` string.
    pub tt: String,
    pub detail: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; absent on degenerate rows.
    pub ratio: Option<f64>,
    pub degenerate: bool,
    /// Hard checks only.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckAggregates {
    pub rows: usize,
    pub degenerate_rows: usize,
    pub failed_rows: usize,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    /// Truth table of the function attaining the minimum ratio; ties break
    /// to the smaller `(tt, detail)` pair, so the witness is reproducible.
    pub argmin_witness: Option<String>,
    pub argmin_detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema_version: &'static str,
    pub library_version: &'static str,
    pub check: String,
    pub kind: String,
    pub statement: String,
    pub corpus: String,
    /// Hard checks: every row passed. Ratio checks: all recorded ratios are
    /// strictly positive and the calibration floor (when one is registered)
    /// is met. Surface checks: absent.
    pub pass: Option<bool>,
    pub floor: Option<f64>,
    pub floor_met: Option<bool>,
    pub aggregates: CheckAggregates,
    pub rows: Vec<FunctionRow>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct")
    }

    /// CSV with one row per `(function, parameter point)`:
    /// check id, function spec, lhs, rhs, ratio, degenerate flag.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,function,lhs,rhs,ratio,degenerate\n");
        for row in &self.rows {
            let ratio = row.ratio.map(|r| r.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.check, row.function, row.lhs, row.rhs, ratio, row.degenerate
            ));
        }
        out
    }

    /// First failing row, if any; the verify command prints its witness.
    pub fn first_failure(&self) -> Option<&FunctionRow> {
        self.rows.iter().find(|r| r.pass == Some(false))
    }
}

pub fn aggregate(rows: &[FunctionRow]) -> CheckAggregates {
    let mut agg = CheckAggregates {
        rows: rows.len(),
        ..Default::default()
    };
    for row in rows {
        if row.degenerate {
            agg.degenerate_rows += 1;
        }
        if row.pass == Some(false) {
            agg.failed_rows += 1;
        }
        let Some(ratio) = row.ratio else { continue };
        agg.max_ratio = Some(agg.max_ratio.map_or(ratio, |m: f64| m.max(ratio)));
        let better = match agg.min_ratio {
            None => true,
            Some(best) => {
                ratio < best
                    || (ratio == best
                        && (row.tt.as_str(), row.detail.as_str())
                            < (
                                agg.argmin_witness.as_deref().unwrap_or(""),
                                agg.argmin_detail.as_deref().unwrap_or(""),
                            ))
            }
        };
        if better {
            agg.min_ratio = Some(ratio);
            agg.argmin_witness = Some(row.tt.clone());
            agg.argmin_detail = Some(row.detail.clone());
        }
    }
    agg
}

pub fn new_report(
    check: &str,
    kind: &str,
    statement: &str,
    corpus: &str,
    rows: Vec<FunctionRow>,
) -> CheckReport {
    let aggregates = aggregate(&rows);
    CheckReport {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        check: check.to_string(),
        kind: kind.to_string(),
        statement: statement.to_string(),
        corpus: corpus.to_string(),
        pass: None,
        floor: None,
        floor_met: None,
        aggregates,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(tt: &str, detail: &str, ratio: Option<f64>) -> FunctionRow {
        FunctionRow {
            function: tt.to_string(),
            tt: tt.to_string(),
            detail: detail.to_string(),
            lhs: ratio.unwrap_or(0.0),
            rhs: if ratio.is_some() { 1.0 } else { 0.0 },
            ratio,
            degenerate: ratio.is_none(),
            pass: None,
        }
    }

    #[test]
    fn aggregation_tracks_min_with_lexicographic_ties() {
        let rows = vec![
            row("tt:1:3", "", Some(2.0)),
            row("tt:1:2", "", Some(1.5)),
            row("tt:1:1", "", Some(1.5)),
            row("tt:1:0", "", None),
        ];
        let agg = aggregate(&rows);
        assert_eq!(agg.min_ratio, Some(1.5));
        assert_eq!(agg.max_ratio, Some(2.0));
        assert_eq!(agg.argmin_witness.as_deref(), Some("tt:1:1"));
        assert_eq!(agg.degenerate_rows, 1);
    }

    #[test]
    fn csv_has_fixed_columns() {
        let report = new_report(
            "demo",
            "ratio",
            "statement",
            "exhaustive:1",
            vec![row("tt:1:2", "", Some(1.25)), row("tt:1:0", "", None)],
        );
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("check,function,lhs,rhs,ratio,degenerate"));
        assert_eq!(lines.next(), Some("demo,tt:1:2,1.25,1,1.25,false"));
        assert_eq!(lines.next(), Some("demo,tt:1:0,0,0,,true"));
    }
}
