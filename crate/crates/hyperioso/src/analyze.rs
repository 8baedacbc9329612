//! The scalar-quantity report produced for one function: everything the
//! library can say about it in one serializable bundle.

use serde::Serialize;

use crate::error::Result;
use crate::function::BooleanFunction;
use crate::geometry;
use crate::spectral;

pub const SCHEMA_VERSION: &str = "1";
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Reported multiplier inside `2^{-c (A / var)^{1/p}}` for the largest
/// influence; the bound is recorded, never asserted.
pub const INFLUENCE_BOUND_C: f64 = 1.0;

#[derive(Clone, Debug, Serialize)]
pub struct MomentEntry {
    pub p: f64,
    /// `E[s_f^p]`.
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityEntry {
    pub eps: f64,
    /// `<f, T_{1-eps} f>`.
    pub stability: f64,
    /// `Pr[f(x) != f(y)]` over `(1-eps)`-correlated pairs.
    pub mismatch: f64,
}

/// `max_i I_i` against `2^{-c (A / var)^{1/p}}`; report-only.
#[derive(Clone, Debug, Serialize)]
pub struct InfluenceBoundEntry {
    pub p: f64,
    pub a: f64,
    pub max_influence: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub schema_version: &'static str,
    pub library_version: &'static str,
    pub spec: String,
    pub tt: String,
    pub n: u32,
    pub mean: f64,
    pub variance: f64,
    pub influences: Vec<f64>,
    pub total_influence: f64,
    pub influence_sq_sum: f64,
    pub max_influence: f64,
    pub edge_boundary: f64,
    pub vertex_boundary: f64,
    /// `E[s^p]` for each requested exponent; `p = 1/2` is the
    /// square-root boundary `E[||grad f||_2]`.
    pub sensitivity_moments: Vec<MomentEntry>,
    pub level_weights: Vec<f64>,
    pub noise: Vec<StabilityEntry>,
    pub influence_lower_bounds: Vec<InfluenceBoundEntry>,
}

pub const DEFAULT_MOMENTS: [f64; 3] = [0.5, 0.75, 1.0];
pub const DEFAULT_NOISE_EPS: [f64; 6] = [0.0, 0.0625, 0.125, 0.25, 0.5, 1.0];

/// Computes the full report. `spec` is echoed verbatim so reports stay
/// self-describing.
pub fn analyze(
    f: &BooleanFunction,
    spec: &str,
    moments: &[f64],
    noise_eps: &[f64],
) -> Result<AnalyzeReport> {
    let profile = geometry::sensitivity_profile(f);
    let influences = geometry::influence_vector(f);
    let total_influence: f64 = influences.iter().sum();
    let influence_sq_sum: f64 = influences.iter().map(|v| v * v).sum();
    let max_influence = influences.iter().copied().fold(0.0, f64::max);
    let variance = f.variance();

    let mut sensitivity_moments = Vec::new();
    for &p in moments {
        // Route through the range-checked entry point.
        sensitivity_moments.push(MomentEntry {
            p,
            value: geometry::talagrand_boundary(f, p)?,
        });
    }

    let mut noise = Vec::new();
    for &eps in noise_eps {
        noise.push(StabilityEntry {
            eps,
            stability: spectral::noise_stability(f, eps)?,
            mismatch: spectral::noise_mismatch(f, eps)?,
        });
    }

    let mut influence_lower_bounds = Vec::new();
    if variance > 0.0 {
        for entry in &sensitivity_moments {
            if entry.p > 0.5 {
                let exponent = (entry.value / variance).powf(1.0 / entry.p);
                influence_lower_bounds.push(InfluenceBoundEntry {
                    p: entry.p,
                    a: entry.value,
                    max_influence,
                    bound: (-INFLUENCE_BOUND_C * exponent).exp2(),
                });
            }
        }
    }

    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        library_version: LIBRARY_VERSION,
        spec: spec.to_string(),
        tt: f.to_tt_string(),
        n: f.n(),
        mean: f.mean(),
        variance,
        influences,
        total_influence,
        influence_sq_sum,
        max_influence,
        edge_boundary: geometry::edge_boundary_measure(f),
        vertex_boundary: profile.vertex_boundary(),
        sensitivity_moments,
        level_weights: spectral::level_weights(f).weights().to_vec(),
        noise,
        influence_lower_bounds,
    })
}

impl AnalyzeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct")
    }
}
