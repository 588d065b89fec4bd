use crate::error::{Error, Result};
use crate::exact::{Jet, Rational, Scalar};
use crate::tsystem::{CoeffWindow, InitialData, TSystemFrame};
use serde::Serialize;
use std::collections::BTreeMap;

/// `ρ` on `0 ≤ k ≤ K`, `|i|+|j| ≤ K`, `i+j+k` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityTable {
    k_max: usize,
    values: BTreeMap<(i64, i64, i64), Rational>,
}

impl DensityTable {
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn get(&self, i: i64, j: i64, k: i64) -> Option<&Rational> {
        self.values.get(&(i, j, k))
    }

    /// Ordered by `k`, then `i`, then `j`.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64, i64), &Rational)> {
        let mut keys: Vec<_> = self.values.keys().copied().collect();
        keys.sort_by_key(|&(i, j, k)| (k, i, j));
        keys.into_iter().map(move |p| (p, &self.values[&p]))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Points with `ρ ≠ 0`.
    pub fn support(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.iter().filter(|(_, v)| !v.is_zero()).map(|(p, _)| p)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,k,rho\n");
        for ((i, j, k), v) in self.iter() {
            out.push_str(&format!("{i},{j},{k},{v}\n"));
        }
        out
    }
}

/// Evolves all-ones data with `t_{0,0} = 1 + ε` to layer `K`. The window must
/// cover `[−2K, 2K]`.
pub fn rho_table(k_max: usize, coeffs: &CoeffWindow<Rational>) -> Result<DensityTable> {
    let kk = k_max as i64;
    coeffs.require(-2 * kk..=2 * kk)?;
    let n = 2 * k_max + 1;
    let one = Rational::one();
    let unit = Jet::constant(one.clone());
    let init = InitialData::new(n, (0, 0), &unit, |i, j| {
        if (i, j) == (0, 0) {
            Jet::variable(one.clone())
        } else {
            unit.clone()
        }
    });
    let frame = TSystemFrame::build(&init, &coeffs.map(|c| Jet::constant(c.clone())), k_max)?;
    let mut values = BTreeMap::new();
    for k in 0..=k_max {
        for (&(i, j), t) in frame.layer(k) {
            if i.abs() + j.abs() <= kk {
                values.insert((i, j, k as i64), t.log_derivative()?);
            }
        }
    }
    Ok(DensityTable { k_max, values })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QViolation {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub left: Rational,
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QCheckReport {
    pub k_max: usize,
    pub q: Rational,
    pub checked: usize,
    /// Points whose stencil leaves the table.
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<QViolation>,
}

impl QCheckReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.checked > 0
    }

    pub fn into_result(self) -> Result<Self> {
        match &self.violation {
            Some(v) => Err(Error::Mismatch {
                location: format!("rho({},{},{})", v.i, v.j, v.k),
                left: v.left.to_string(),
                right: v.right.to_string(),
            }),
            None => Ok(self),
        }
    }
}

/// With `λ_a = μ_a = q^a`, checks at every stored point with `k ≥ 1`
///
/// `(1+q^{j−i})(ρ_{i,j,k} + ρ_{i,j,k−2}) − ρ_{i±1,j,k−1} − q^{j−i} ρ_{i,j±1,k−1} = 2[i=j=0, k=1]`
///
/// where `ρ_{·,·,−1}` is zero. Reports the first violation in table order.
pub fn q_functional_check(k_max: usize, q: &Rational) -> Result<QCheckReport> {
    let kk = k_max as i64;
    let table = rho_table(k_max, &CoeffWindow::q_power(-2 * kk..=2 * kk, q)?)?;
    let zero = Rational::zero();
    let mut report = QCheckReport {
        k_max,
        q: q.clone(),
        checked: 0,
        skipped: 0,
        violation: None,
    };
    for ((i, j, k), rho) in table.iter() {
        if k == 0 {
            continue;
        }
        let prev2 = if k == 1 { Some(&zero) } else { table.get(i, j, k - 2) };
        let around = [(1, 0), (-1, 0), (0, 1), (0, -1)].map(|(di, dj)| table.get(i + di, j + dj, k - 1));
        let (Some(prev2), [Some(ip), Some(im), Some(jp), Some(jm)]) = (prev2, around) else {
            report.skipped += 1;
            continue;
        };
        let w = q.pow_i(j - i)?;
        let left = w
            .plus(&Rational::one())
            .times(&rho.plus(prev2))
            .minus(&ip.plus(im))
            .minus(&w.times(&jp.plus(jm)));
        let right = if (i, j, k) == (0, 0, 1) { Rational::from(2) } else { zero.clone() };
        report.checked += 1;
        if left != right {
            report.violation = Some(QViolation { i, j, k, left, right });
            break;
        }
    }
    Ok(report)
}
