//! JSON run report emitted by `negtype compute`.

use negtype_core::{ExtremalCertificate, PntConfig, PntResult, PntStatus, Trigger};
use serde::{Deserialize, Serialize};

use crate::input::LoadedInput;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub p_max: f64,
    pub grid_step: f64,
    pub tol_p: f64,
    pub tol_eig: f64,
    pub tol_det: f64,
    pub normalize: bool,
    /// Factor the input distances were divided by before the computation.
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedIndex {
    pub index: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub a_side: Vec<WeightedIndex>,
    pub b_side: Vec<WeightedIndex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub det: f64,
    pub bordered_det: f64,
    /// `None` when the restricted spectrum is empty (single-point input).
    pub lambda_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub input: String,
    pub config: ConfigEcho,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    pub trigger: String,
    pub bracket: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub simplex: Option<SimplexJson>,
    pub diagnostics: DiagnosticsJson,
    pub wall_ms: f64,
}

pub fn trigger_name(trigger: Trigger) -> &'static str {
    match trigger {
        Trigger::DetZero => "det_zero",
        Trigger::InnerZero => "inner_zero",
        Trigger::NotApplicable => "not_applicable",
    }
}

pub fn build_report(
    input: &LoadedInput,
    cfg: &PntConfig,
    result: &PntResult,
    certificate: Option<&ExtremalCertificate>,
    wall_ms: f64,
) -> RunReport {
    let (status, p) = match result.status {
        PntStatus::Finite(p) => ("finite".to_string(), Some(p)),
        PntStatus::InfiniteBeyond(_) => ("infinite_beyond".to_string(), None),
    };
    RunReport {
        input: input.descriptor.clone(),
        config: ConfigEcho {
            p_max: cfg.p_max,
            grid_step: cfg.grid_step,
            tol_p: cfg.tol_p,
            tol_eig: cfg.tol_eig,
            tol_det: cfg.tol_det,
            normalize: input.normalized,
            scale: input.scale,
        },
        status,
        p,
        trigger: trigger_name(result.trigger).to_string(),
        bracket: [result.bracket.0, result.bracket.1],
        alpha: certificate.map(|c| c.alpha.clone()),
        simplex: certificate.map(|c| SimplexJson {
            a_side: c
                .simplex
                .a_side
                .iter()
                .map(|v| WeightedIndex {
                    index: v.index,
                    weight: v.weight,
                })
                .collect(),
            b_side: c
                .simplex
                .b_side
                .iter()
                .map(|v| WeightedIndex {
                    index: v.index,
                    weight: v.weight,
                })
                .collect(),
        }),
        diagnostics: DiagnosticsJson {
            det: result.diagnostics.det,
            bordered_det: result.diagnostics.bordered_det,
            lambda_max: result
                .lambda_max_at_p
                .is_finite()
                .then_some(result.lambda_max_at_p),
        },
        wall_ms,
    }
}
