use super::input::InstanceSpec;
use crate::exact::{Matrix, Rational};
use crate::lambdadet::{CrossCheckReport, MethodOutcome};
use crate::tsystem::CoeffWindow;
use serde::Serialize;
use std::collections::BTreeMap;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceEcho {
    pub spec: InstanceSpec,
    pub n: usize,
    pub matrix: Vec<Vec<Rational>>,
    pub coefficients: CoeffWindow<Rational>,
}

impl InstanceEcho {
    pub fn new(spec: InstanceSpec, a: &Matrix<Rational>, coeffs: &CoeffWindow<Rational>) -> Self {
        InstanceEcho {
            spec,
            n: a.rows(),
            matrix: a.to_rows(),
            coefficients: coeffs.clone(),
        }
    }
}

/// Output of `compute`. Without timings the JSON is a pure function of the
/// instance and the tool version.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub instance: InstanceEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub agreement: bool,
    pub complete: bool,
    pub methods: Vec<MethodOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method_timings: Option<BTreeMap<String, u64>>,
}

impl RunReport {
    pub fn new(instance: InstanceEcho, check: CrossCheckReport, timings: bool) -> Self {
        let method_timings = timings.then(|| {
            check
                .outcomes
                .iter()
                .filter_map(|o| o.micros.map(|t| (o.method.name().to_string(), t)))
                .collect()
        });
        let check = check.without_timings();
        RunReport {
            version: TOOL_VERSION,
            instance,
            value: check.value,
            agreement: check.agreement,
            complete: check.complete,
            methods: check.outcomes,
            method_timings,
        }
    }

    pub fn passed(&self) -> bool {
        self.agreement && self.complete
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed())
    }
}

/// One line of the `verify` stream.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub redraws: usize,
    pub report: CrossCheckReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub version: &'static str,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub redraws: usize,
    pub methods: Vec<String>,
}

impl VerifySummary {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed > 0)
    }
}
