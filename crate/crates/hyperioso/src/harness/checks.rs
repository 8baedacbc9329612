//! The registry of numeric checks, one per inequality or identity the
//! harness knows how to evaluate.
//!
//! Hard checks carry an explicit constant and assert per row. Ratio checks
//! track existential constants: they record `lhs / rhs` and never assert
//! beyond positivity and the calibration floors. Surface checks emit a
//! parameter grid with no verdict at all. Natural logarithms throughout.

use rand::Rng;

use crate::function::{full_set, BooleanFunction};
use crate::geometry;
use crate::junta;
use crate::rng::substream;
use crate::spectral;

/// Absolute slack for comparisons between exactly-representable dyadic
/// quantities (means, weights, boundary measures).
pub const EXACT_TOL: f64 = 1e-12;
/// Relative slack for fractional-exponent norm comparisons through
/// `exp`/`log`.
pub const NORM_REL_TOL: f64 = 1e-9;
/// Absolute tolerance for the dual-route derivative-correlation identity.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Floors are matched to this absolute tolerance.
pub const FLOOR_TOL: f64 = 1e-9;

/// Colorings drawn per function for the two-color boundary check.
pub const COLORINGS_SMALL_N: usize = 100; // n <= 3
pub const COLORINGS_LARGE_N: usize = 8;

const ROBUST_SEED: u64 = 0x0b_0001;
const NOISE_SEED: u64 = 0x0b_0002;
const LOWDEG_SEED: u64 = 0x0b_0003;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Hard,
    Ratio,
    Surface,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Hard => "hard",
            CheckKind::Ratio => "ratio",
            CheckKind::Surface => "surface",
        }
    }
}

/// One evaluated row: a `(lhs, rhs)` pair for one function at one parameter
/// point. `pass` is set by hard checks only; `degenerate` rows are excluded
/// from ratio aggregates.
#[derive(Clone, Debug)]
pub struct CheckRow {
    pub detail: String,
    pub lhs: f64,
    pub rhs: f64,
    pub degenerate: bool,
    pub pass: Option<bool>,
}

impl CheckRow {
    pub fn ratio(&self) -> Option<f64> {
        (!self.degenerate && self.rhs > 0.0).then(|| self.lhs / self.rhs)
    }

    fn ge(detail: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            detail: detail.into(),
            lhs,
            rhs,
            degenerate: rhs <= 0.0,
            pass: Some(lhs >= rhs - EXACT_TOL),
        }
    }

    fn ratio_row(detail: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            detail: detail.into(),
            lhs,
            rhs,
            degenerate: !(rhs > 0.0),
            pass: None,
        }
    }
}

/// Per-function evaluation context: the corpus index feeds the seeded
/// randomness (colorings, noise vectors, candidate sets), so every report
/// is reproducible and independent of scheduling.
#[derive(Clone, Copy, Debug)]
pub struct EvalCtx {
    pub index: usize,
}

type EvalFn = fn(&BooleanFunction, &EvalCtx) -> Vec<CheckRow>;

pub struct CheckDef {
    pub id: &'static str,
    pub kind: CheckKind,
    /// Self-contained statement of what the rows compare, including the
    /// logarithm convention where one applies.
    pub statement: &'static str,
    pub eval: EvalFn,
}

pub fn registry() -> &'static [CheckDef] {
    REGISTRY
}

pub fn find(id: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|def| def.id == id)
}

static REGISTRY: &[CheckDef] = &[
    CheckDef {
        id: "lemma-tal-lvl1",
        kind: CheckKind::Hard,
        statement: "E[sqrt(s_f)] >= 2*sqrt(W1[f]), exact constant 2",
        eval: eval_tal_lvl1,
    },
    CheckDef {
        id: "lemma-lp",
        kind: CheckKind::Hard,
        statement: "E[s_f^p] >= W1[f]^(1/p) for p in {0.5, 0.75, 1}",
        eval: eval_lp,
    },
    CheckDef {
        id: "lemma-robust",
        kind: CheckKind::Hard,
        statement: "E[sqrt(s_red)] + E[sqrt(s_blue)] >= sqrt(W1[f])/2 for seeded random \
                    colorings (100 per function at n <= 3, 8 above)",
        eval: eval_robust,
    },
    CheckDef {
        id: "poincare",
        kind: CheckKind::Hard,
        statement: "|E_f|/2^n >= var(f)",
        eval: eval_poincare,
    },
    CheckDef {
        id: "thm-hyper",
        kind: CheckKind::Hard,
        statement: "||f^(<=d)||_4 <= sqrt(3)^d * ||f^(<=d)||_2 for d in 0..=min(4, n)",
        eval: eval_hyper,
    },
    CheckDef {
        id: "fact-restriction",
        kind: CheckKind::Hard,
        statement: "closed-form E[W1[f restricted at rate 1/d]] equals full (J, z) \
                    enumeration (n <= 4) or the noisy-influence route (n > 4), d in {2, 3}",
        eval: eval_fact_restriction,
    },
    CheckDef {
        id: "claim-noise-decreases",
        kind: CheckKind::Hard,
        statement: "E[||grad(T f)||_p] <= E[||grad f||_p] for a seeded product noise \
                    vector, p in {1, 2}",
        eval: eval_noise_decreases,
    },
    CheckDef {
        id: "claim-lowdeg",
        kind: CheckKind::Hard,
        statement: "derivative-correlation mass outside a seeded candidate set: operator \
                    route equals subset scan to 1e-10, k in {1, 2}, d in {2, 4}",
        eval: eval_lowdeg,
    },
    CheckDef {
        id: "thm-tal-iso",
        kind: CheckKind::Ratio,
        statement: "E[sqrt(s_f)] vs var(f)*sqrt(ln(1/var(f))) (natural log)",
        eval: eval_tal_iso,
    },
    CheckDef {
        id: "thm-eg",
        kind: CheckKind::Ratio,
        statement: "E[sqrt(s_f)] vs var(f)*sqrt(ln(1 + 1/M[f])) (natural log)",
        eval: eval_eg,
    },
    CheckDef {
        id: "lemma-tal-lvld-exact",
        kind: CheckKind::Ratio,
        statement: "E[sqrt(s_f)] vs sqrt(d)*W~d[f] over dyadic d",
        eval: eval_lvld_exact,
    },
    CheckDef {
        id: "lemma-tal-lvld-above",
        kind: CheckKind::Ratio,
        statement: "E[sqrt(s_f)] vs sqrt(d)*W>=d[f] over dyadic d",
        eval: eval_lvld_above,
    },
    CheckDef {
        id: "cor-noise-stable",
        kind: CheckKind::Ratio,
        statement: "E[s^(1/2+delta)]*eps^(1/2+delta) vs the correlated disagreement \
                    probability, delta in {0, 1/4, 1/2}, eps in {1/16..1/2}",
        eval: eval_noise_stable,
    },
    CheckDef {
        id: "cor-stab",
        kind: CheckKind::Ratio,
        statement: "Pr[sqrt(s_f) >= Z/2] vs Z^2/E[s_f] with Z = E[sqrt(s_f)]",
        eval: eval_stab,
    },
    CheckDef {
        id: "claim-main",
        kind: CheckKind::Ratio,
        statement: "localization bound: d^-p tau^(2p-1) E[s^p] + tau^(-1/100d) * \
                    tempered norm-power sum, vs the outside influence mass; pipeline \
                    sets at (c1=1, c2=10) and the stress point (c1=1, c2=1)",
        eval: eval_claim_main,
    },
    CheckDef {
        id: "claim-outside",
        kind: CheckKind::Ratio,
        statement: "eps/16 vs the banded low-degree mass outside the extracted set; \
                    pipeline sets at (c1=1, c2=10) and the stress point (c1=1, c2=1)",
        eval: eval_claim_outside,
    },
    CheckDef {
        id: "thm-kk",
        kind: CheckKind::Surface,
        statement: "W<=d[f] vs M[f] with d = floor(c1*ln(1/M[f])), grid c1 in \
                    {0.1..1.0} (natural log); report-only surface",
        eval: eval_kk,
    },
];

fn eval_tal_lvl1(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let lhs = geometry::sensitivity_profile(f).moment(0.5);
    let rhs = 2.0 * spectral::level_weights(f).at(1).sqrt();
    vec![CheckRow::ge("", lhs, rhs)]
}

fn eval_lp(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let profile = geometry::sensitivity_profile(f);
    let w1 = spectral::level_weights(f).at(1);
    [0.5, 0.75, 1.0]
        .iter()
        .map(|&p| CheckRow::ge(format!("p={p}"), profile.moment(p), w1.powf(1.0 / p)))
        .collect()
}

fn eval_robust(f: &BooleanFunction, ctx: &EvalCtx) -> Vec<CheckRow> {
    let rhs = 0.5 * spectral::level_weights(f).at(1).sqrt();
    let count = if f.n() <= 3 {
        COLORINGS_SMALL_N
    } else {
        COLORINGS_LARGE_N
    };
    (0..count)
        .map(|j| {
            let mut rng = substream(ROBUST_SEED, (ctx.index * COLORINGS_SMALL_N + j) as u64);
            let col = geometry::EdgeColoring::random(f.n(), &mut rng);
            let lhs = geometry::talagrand_colored(f, &col).expect("matching dimensions");
            CheckRow::ge(format!("coloring={j}"), lhs, rhs)
        })
        .collect()
}

fn eval_poincare(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    vec![CheckRow::ge(
        "",
        geometry::edge_boundary_measure(f),
        f.variance(),
    )]
}

fn eval_hyper(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    (0..=f.n().min(4))
        .map(|d| {
            let (lhs, rhs) = spectral::hypercontractivity_gap(f, d);
            CheckRow {
                detail: format!("d={d}"),
                lhs,
                rhs,
                degenerate: !(rhs > 0.0),
                pass: Some(lhs <= rhs * (1.0 + NORM_REL_TOL) + EXACT_TOL),
            }
        })
        .collect()
}

fn eval_fact_restriction(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    [2u32, 3]
        .iter()
        .map(|&d| {
            let lhs = crate::restrictions::expected_level1_exact(f, d).expect("d >= 1");
            let (rhs, tol, route) = if f.n() <= 4 {
                let e = crate::restrictions::expected_level1_enumeration(f, d)
                    .expect("within budget");
                (e, EXACT_TOL, "enumeration")
            } else {
                let v = crate::restrictions::expected_level1_via_influences(f, d)
                    .expect("d >= 2");
                (v, NORM_REL_TOL * lhs.abs().max(1.0), "influences")
            };
            CheckRow {
                detail: format!("d={d},route={route}"),
                lhs,
                rhs,
                degenerate: !(rhs > 0.0),
                pass: Some((lhs - rhs).abs() <= tol),
            }
        })
        .collect()
}

fn eval_noise_decreases(f: &BooleanFunction, ctx: &EvalCtx) -> Vec<CheckRow> {
    let mut rng = substream(NOISE_SEED, ctx.index as u64);
    let rho = spectral::NoiseVector::new((0..f.n()).map(|_| rng.random::<f64>()).collect())
        .expect("draws lie in [0, 1)");
    let g = f.to_real();
    let noisy = spectral::noise_operator_real(&g, &rho).expect("matching dimensions");
    [1.0, 2.0]
        .iter()
        .map(|&p| {
            let lhs = geometry::gradient_lp_mean(&noisy, p).expect("p >= 1");
            let rhs = geometry::gradient_lp_mean(&g, p).expect("p >= 1");
            CheckRow {
                detail: format!("p={p}"),
                lhs,
                rhs,
                degenerate: !(rhs > 0.0),
                pass: Some(lhs <= rhs * (1.0 + NORM_REL_TOL) + EXACT_TOL),
            }
        })
        .collect()
}

fn eval_lowdeg(f: &BooleanFunction, ctx: &EvalCtx) -> Vec<CheckRow> {
    let mut rng = substream(LOWDEG_SEED, ctx.index as u64);
    let j_set = rng.random::<u32>() & full_set(f.n());
    let mut rows = Vec::new();
    for k in [1u32, 2] {
        for d in [2u32, 4] {
            let lhs = junta::tempered_outside_influence(f, j_set, k, d)
                .expect("valid operator parameters");
            let rhs = junta::tempered_outside_influence_scan(f, j_set, k, d)
                .expect("valid operator parameters");
            rows.push(CheckRow {
                detail: format!("J={j_set:#x},k={k},d={d}"),
                lhs,
                rhs,
                degenerate: !(rhs > 0.0),
                pass: Some((lhs - rhs).abs() <= IDENTITY_TOL),
            });
        }
    }
    rows
}

fn eval_tal_iso(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let var = f.variance();
    if var <= 0.0 {
        return vec![CheckRow {
            detail: "".into(),
            lhs: 0.0,
            rhs: 0.0,
            degenerate: true,
            pass: None,
        }];
    }
    let lhs = geometry::sensitivity_profile(f).moment(0.5);
    let rhs = var * (1.0 / var).ln().sqrt();
    vec![CheckRow::ratio_row("", lhs, rhs)]
}

fn eval_eg(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let var = f.variance();
    let m = geometry::influence_sq_sum(f);
    if var <= 0.0 || m <= 0.0 {
        return vec![CheckRow {
            detail: "".into(),
            lhs: 0.0,
            rhs: 0.0,
            degenerate: true,
            pass: None,
        }];
    }
    let lhs = geometry::sensitivity_profile(f).moment(0.5);
    let rhs = var * (1.0 + 1.0 / m).ln().sqrt();
    vec![CheckRow::ratio_row("", lhs, rhs)]
}

fn dyadic_levels(n: u32) -> impl Iterator<Item = u32> {
    (0..).map(|j| 1u32 << j).take_while(move |&d| d <= n)
}

fn eval_lvld_exact(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let lhs = geometry::sensitivity_profile(f).moment(0.5);
    let w = spectral::level_weights(f);
    dyadic_levels(f.n())
        .map(|d| CheckRow::ratio_row(format!("d={d}"), lhs, (d as f64).sqrt() * w.approx(d)))
        .collect()
}

fn eval_lvld_above(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let lhs = geometry::sensitivity_profile(f).moment(0.5);
    let w = spectral::level_weights(f);
    dyadic_levels(f.n())
        .map(|d| CheckRow::ratio_row(format!("d={d}"), lhs, (d as f64).sqrt() * w.above(d)))
        .collect()
}

fn eval_noise_stable(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let profile = geometry::sensitivity_profile(f);
    let mut rows = Vec::new();
    for delta in [0.0, 0.25, 0.5] {
        let p = 0.5 + delta;
        let a = profile.moment(p);
        for eps in [0.0625, 0.125, 0.25, 0.5] {
            let mismatch = spectral::noise_mismatch(f, eps).expect("eps in range");
            rows.push(CheckRow::ratio_row(
                format!("delta={delta},eps={eps}"),
                a * eps.powf(p),
                mismatch,
            ));
        }
    }
    rows
}

fn eval_stab(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let profile = geometry::sensitivity_profile(f);
    let z = profile.moment(0.5);
    let es = profile.expectation();
    if z <= 0.0 || es <= 0.0 {
        return vec![CheckRow {
            detail: "".into(),
            lhs: 0.0,
            rhs: 0.0,
            degenerate: true,
            pass: None,
        }];
    }
    let threshold = z / 2.0;
    let tail = profile
        .histogram()
        .iter()
        .enumerate()
        .filter(|(s, _)| (*s as f64).sqrt() >= threshold)
        .map(|(_, &count)| count)
        .sum::<u64>() as f64
        / f.len() as f64;
    vec![CheckRow::ratio_row("", tail, z * z / es)]
}

/// The two pipeline parameter points exercised by the localization checks.
const PIPELINE_POINTS: [(f64, f64, &str); 2] =
    [(1.0, 10.0, "default"), (1.0, 1.0, "stress")];
const PIPELINE_EPS: f64 = 0.1;

fn eval_claim_main(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for (c1, c2, tag) in PIPELINE_POINTS {
        let params = junta::JuntaParams::with_constants(PIPELINE_EPS, 1.0, c1, c2)
            .expect("valid parameters");
        let result = junta::extract_junta(f, &params).expect("pipeline never errors");
        let d = result.d_used;
        let a = geometry::sensitivity_profile(f).moment(1.0);
        // tau = delta^(1/4), handled in log space.
        let log2_tau = result.log2_delta / 4.0;
        let tau_pow = log2_tau.exp2(); // tau^(2p-1) with p = 1
        let tau_neg = (-log2_tau / (100.0 * d as f64)).exp2();
        for k in 1..=d.ilog2().max(1) {
            let mass = junta::outside_influence_mass(f, result.coord_set, k, d)
                .expect("valid operator parameters");
            let t1 = (d as f64).powi(-1) * tau_pow * a;
            let t2 = tau_neg
                * junta::tempered_norm_power_sum(f, result.coord_set, k, d)
                    .expect("valid operator parameters");
            rows.push(CheckRow::ratio_row(
                format!("set={tag},k={k},d={d}"),
                t1 + t2,
                mass,
            ));
        }
    }
    rows
}

fn eval_claim_outside(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for (c1, c2, tag) in PIPELINE_POINTS {
        let params = junta::JuntaParams::with_constants(PIPELINE_EPS, 1.0, c1, c2)
            .expect("valid parameters");
        let result = junta::extract_junta(f, &params).expect("pipeline never errors");
        let pw = spectral::proof_weights(f, result.coord_set, result.d_used);
        rows.push(CheckRow::ratio_row(
            format!("set={tag},d={}", result.d_used),
            PIPELINE_EPS / 16.0,
            pw.w_sum(),
        ));
    }
    rows
}

fn eval_kk(f: &BooleanFunction, _ctx: &EvalCtx) -> Vec<CheckRow> {
    let m = geometry::influence_sq_sum(f);
    let w = spectral::level_weights(f);
    let mut rows = Vec::new();
    for step in 1..=10 {
        let c1 = step as f64 / 10.0;
        if !(m > 0.0 && m < 1.0) {
            rows.push(CheckRow {
                detail: format!("c1={c1}"),
                lhs: 0.0,
                rhs: m,
                degenerate: true,
                pass: None,
            });
            continue;
        }
        let d = (c1 * (1.0 / m).ln()).floor() as u32;
        rows.push(CheckRow {
            detail: format!("c1={c1},d={d}"),
            lhs: w.up_to(d.min(f.n())),
            rhs: m,
            degenerate: false,
            pass: None,
        });
    }
    rows
}
