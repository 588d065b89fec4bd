use super::weights::{asm_sum, asm_sum_with_cap, statistics_form};
use crate::asm6v::{transform_matrix, Symmetry};
use crate::error::{Error, Result};
use crate::exact::{LaurentPolynomial, Matrix, Scalar, VarSet};
use crate::network::lgv_lambda_det;
use crate::tsystem::{dodgson, lambda_det_via_tsystem, lambda_name, mu_name, needed_range, CoeffWindow, ShiftConvention};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dodgson,
    Tsystem,
    Asm,
    Statistics,
    Lgv,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Dodgson,
        Method::Tsystem,
        Method::Asm,
        Method::Statistics,
        Method::Lgv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dodgson => "dodgson",
            Method::Tsystem => "tsystem",
            Method::Asm => "asm",
            Method::Statistics => "statistics",
            Method::Lgv => "lgv",
        }
    }

    pub fn evaluate<S: Scalar>(self, a: &Matrix<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
        match self {
            Method::Dodgson => dodgson(a, coeffs, ShiftConvention::Lattice),
            Method::Tsystem => lambda_det_via_tsystem(a, coeffs),
            Method::Asm => asm_sum(a, coeffs),
            Method::Statistics => statistics_form(a, coeffs),
            Method::Lgv => lgv_lambda_det(a, coeffs),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodOutcome {
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: usize,
    pub outcomes: Vec<MethodOutcome>,
    /// Common value when at least one method succeeded and all successes agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// All successful methods returned the same value.
    pub agreement: bool,
    /// No method failed.
    pub complete: bool,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.agreement && self.complete
    }

    pub fn without_timings(mut self) -> Self {
        for o in &mut self.outcomes {
            o.micros = None;
        }
        self
    }
}

/// Runs each method independently; a failing method is recorded and does not
/// stop the others.
pub fn cross_check<S: Scalar>(
    a: &Matrix<S>,
    coeffs: &CoeffWindow<S>,
    methods: &[Method],
) -> CrossCheckReport {
    let mut outcomes = Vec::new();
    let mut values: Vec<S> = Vec::new();
    for &m in methods {
        let start = Instant::now();
        let res = m.evaluate(a, coeffs);
        let micros = Some(start.elapsed().as_micros() as u64);
        match res {
            Ok(v) => {
                outcomes.push(MethodOutcome {
                    method: m,
                    value: Some(v.to_string()),
                    error: None,
                    micros,
                });
                values.push(v);
            }
            Err(e) => outcomes.push(MethodOutcome {
                method: m,
                value: None,
                error: Some(e.to_string()),
                micros,
            }),
        }
    }
    let agreement = values.windows(2).all(|w| w[0] == w[1]);
    CrossCheckReport {
        n: a.rows(),
        complete: values.len() == methods.len(),
        value: values.first().filter(|_| agreement).map(|v| v.to_string()),
        agreement,
        outcomes,
    }
}

/// Generic `n × n` instance: entries `a{i}_{j}` (1-based) and coefficients
/// `λ{a}`, `μ{a}` on `[2−n, n−2]`.
pub struct GenericInstance {
    pub vars: Arc<VarSet>,
    pub matrix: Matrix<LaurentPolynomial>,
    pub coeffs: CoeffWindow<LaurentPolynomial>,
}

pub fn entry_name(i: usize, j: usize) -> String {
    format!("a{i}_{j}")
}

pub fn generic_instance(n: usize) -> Result<GenericInstance> {
    let mut names = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            names.push(entry_name(i, j));
        }
    }
    for a in needed_range(n) {
        names.push(lambda_name(a));
        names.push(mu_name(a));
    }
    let vars = VarSet::new(names)?;
    let zero = LaurentPolynomial::zero(&vars);
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(LaurentPolynomial::var(&vars, &entry_name(i, j))?);
        }
        rows.push(row);
    }
    let matrix = Matrix::from_rows(&zero, rows)?;
    let coeffs = CoeffWindow::symbolic(&vars, needed_range(n))?;
    Ok(GenericInstance {
        vars,
        matrix,
        coeffs,
    })
}

/// Default largest size for symbolic expansion.
pub const SYMBOLIC_CAP: usize = 5;

/// The generic Lambda-determinant as a Laurent polynomial. Sizes above the
/// symbolic cap need `allow_large`.
pub fn symbolic_lambda_det(n: usize, allow_large: bool) -> Result<(GenericInstance, LaurentPolynomial)> {
    let cap = if allow_large {
        crate::enumeration_cap(super::weights::ASM_SUM_CAP + 1)
    } else {
        crate::enumeration_cap(SYMBOLIC_CAP)
    };
    let inst = generic_instance(n)?;
    let value = asm_sum_with_cap(&inst.matrix, &inst.coeffs, cap)?;
    Ok((inst, value))
}

/// `|φ(A)|_{φ(λ), φ(μ)}` next to `|A|_{λ,μ}`, both by the given method.
pub fn covariance_pair<S: Scalar>(
    a: &Matrix<S>,
    coeffs: &CoeffWindow<S>,
    phi: Symmetry,
    method: Method,
) -> Result<(S, S)> {
    let left = method.evaluate(&transform_matrix(a, phi), &coeffs.transform(phi))?;
    let right = method.evaluate(a, coeffs)?;
    Ok((left, right))
}
