use super::{evolve, CoeffWindow, InitialData};
use crate::error::{Error, Result};
use crate::exact::{bareiss_det, Matrix, Scalar};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChipKind {
    U,
    #[serde(rename = "U'")]
    UPrime,
    V,
    #[serde(rename = "V'")]
    VPrime,
}

impl ChipKind {
    fn name(self) -> &'static str {
        match self {
            ChipKind::U => "U",
            ChipKind::UPrime => "U'",
            ChipKind::V => "V",
            ChipKind::VPrime => "V'",
        }
    }

    fn uses_lambda(self) -> bool {
        matches!(self, ChipKind::V | ChipKind::VPrime)
    }

    fn uses_mu(self) -> bool {
        matches!(self, ChipKind::V | ChipKind::UPrime)
    }

    /// Grey triangle above the chip's edge (U types) or below it (V types).
    fn triangle_above(self) -> bool {
        matches!(self, ChipKind::U | ChipKind::UPrime)
    }

    /// Unprimed triangles cut their square NW–SE, which puts the lower chip
    /// first; primed ones cut SW–NE and put the upper chip first.
    fn lower_first(self) -> bool {
        matches!(self, ChipKind::U | ChipKind::V)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaFlavor {
    ThetaMin,
    ThetaMax,
}

/// One chip of a plan: kind, 1-based embedding index, the three label
/// vertices as `(i, j)` indices of `t_{i,j}` / `u_{i,j}`, and the coefficient
/// indices it reads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChipSpec {
    pub kind: ChipKind,
    pub position: usize,
    pub labels: [(i64, i64); 3],
    pub lambda: Option<i64>,
    pub mu: Option<i64>,
    /// Left end `(x, y)` of the horizontal lattice edge carrying the chip.
    pub edge: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChipPlan {
    pub n: usize,
    pub flavor: ThetaFlavor,
    pub chips: Vec<ChipSpec>,
    pub matrix_size: usize,
}

/// A chip with its values filled in: labels `(d, a, b)` for V types,
/// `(a, b, c)` for U types.
#[derive(Clone, Debug, PartialEq)]
pub struct UVChip<S: Scalar> {
    pub kind: ChipKind,
    pub position: usize,
    pub labels: [S; 3],
    pub coeffs: (S, S),
}

impl<S: Scalar> UVChip<S> {
    pub fn matrix(&self) -> Result<[[S; 2]; 2]> {
        let [p, q, r] = &self.labels;
        let (lam, mu) = &self.coeffs;
        let zero = p.zero_like();
        let one = p.one_like();
        let div = |x: &S, y: &S| -> Result<S> {
            if y.is_zero() {
                Err(Error::ZeroDivision(format!("{} chip label at position {}", self.kind.name(), self.position)))
            } else {
                x.try_div(y)
            }
        };
        Ok(match self.kind {
            // V(d, a, b) = [[μ a/b, λ d/b], [0, 1]]
            ChipKind::V | ChipKind::VPrime => {
                let (d, a, b) = (p, q, r);
                [[mu.times(&div(a, b)?), lam.times(&div(d, b)?)], [zero, one]]
            }
            // U(a, b, c) = [[1, 0], [c/b, μ a/b]]
            ChipKind::U | ChipKind::UPrime => {
                let (a, b, c) = (p, q, r);
                [[one, zero], [div(c, b)?, mu.times(&div(a, b)?)]]
            }
        })
    }
}

impl fmt::Display for ChipSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .labels
            .iter()
            .map(|(i, j)| format!("{i},{j}"))
            .collect();
        let lam = self.lambda.map_or("1".to_string(), |a| format!("λ{a}"));
        let mu = self.mu.map_or("1".to_string(), |b| format!("μ{b}"));
        write!(
            f,
            "{}_{}({};{},{})",
            self.kind.name(),
            self.position,
            labels.join(" "),
            lam,
            mu
        )
    }
}

fn chip_kind(flavor: ThetaFlavor, n: i64, x: i64, y: i64) -> ChipKind {
    match flavor {
        ThetaFlavor::ThetaMin => {
            if (x + y + n).rem_euclid(2) == 1 {
                ChipKind::V
            } else {
                ChipKind::U
            }
        }
        ThetaFlavor::ThetaMax => match (x < 0, y) {
            (true, y) if y < 0 => ChipKind::U,
            (true, _) => ChipKind::UPrime,
            (false, y) if y <= 0 => ChipKind::VPrime,
            (false, _) => ChipKind::V,
        },
    }
}

/// Builds the chip sequence of the decorated tiling of `D_n`.
///
/// Chips sit on horizontal edges `(x, y) → (x+1, y)`; vertex `(x, y)` carries
/// the label with `(i, j) = (y, x)`. Columns are read left to right; inside a
/// column the square between two stacked chips fixes their order through its
/// diagonal, and chips left unordered commute, so ties go to the lower one.
pub fn chip_plan(n: usize, flavor: ThetaFlavor) -> ChipPlan {
    let ni = n as i64;
    let r = ni - 1;
    let mut chips = Vec::new();
    for x in -r..r {
        let mut column: Vec<ChipSpec> = Vec::new();
        let h = r - x.abs().max((x + 1).abs());
        for y in -h..=h {
            let kind = chip_kind(flavor, ni, x, y);
            let (a, b) = ((y, x), (y, x + 1));
            let labels = match kind {
                ChipKind::V => [(y - 1, x + 1), a, b],
                ChipKind::VPrime => [(y - 1, x), a, b],
                ChipKind::U => [a, b, (y + 1, x)],
                ChipKind::UPrime => [a, b, (y + 1, x + 1)],
            };
            for &(i, j) in &labels {
                assert!(i.abs() + j.abs() <= r, "chip label ({i},{j}) outside D_{n}");
            }
            column.push(ChipSpec {
                kind,
                position: (y + ni - 1) as usize,
                labels,
                lambda: kind.uses_lambda().then_some(y),
                mu: kind.uses_mu().then_some(x + 1),
                edge: (x, y),
            });
        }
        chips.extend(order_column(column));
    }
    ChipPlan {
        n,
        flavor,
        chips,
        matrix_size: 2 * n.saturating_sub(1),
    }
}

/// Topological order of one column (chips listed bottom to top).
fn order_column(column: Vec<ChipSpec>) -> Vec<ChipSpec> {
    let m = column.len();
    // before[k]: chip k must precede chip k+1 (Some(true)), follow it
    // (Some(false)) or commute with it (None)
    let mut lower_before_upper: Vec<Option<bool>> = Vec::with_capacity(m.saturating_sub(1));
    for k in 0..m.saturating_sub(1) {
        let (lo, hi) = (column[k].kind, column[k + 1].kind);
        let from_lo = lo.triangle_above().then(|| lo.lower_first());
        let from_hi = (!hi.triangle_above()).then(|| hi.lower_first());
        let rule = match (from_lo, from_hi) {
            (Some(p), Some(q)) => {
                assert_eq!(p, q, "square with two conflicting diagonals");
                Some(p)
            }
            (p, q) => p.or(q),
        };
        lower_before_upper.push(rule);
    }
    let mut indeg = vec![0usize; m];
    for (k, rule) in lower_before_upper.iter().enumerate() {
        match rule {
            Some(true) => indeg[k + 1] += 1,
            Some(false) => indeg[k] += 1,
            None => {}
        }
    }
    let mut done = vec![false; m];
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let k = (0..m)
            .find(|&k| !done[k] && indeg[k] == 0)
            .expect("column order is acyclic");
        done[k] = true;
        if k + 1 < m && lower_before_upper[k] == Some(true) {
            indeg[k + 1] -= 1;
        }
        if k > 0 && lower_before_upper[k - 1] == Some(false) {
            indeg[k - 1] -= 1;
        }
        out.push(k);
    }
    let mut column: Vec<Option<ChipSpec>> = column.into_iter().map(Some).collect();
    out.into_iter().map(|k| column[k].take().unwrap()).collect()
}

impl ChipPlan {
    pub fn instantiate<S: Scalar>(
        &self,
        values: impl Fn(i64, i64) -> Option<S>,
        coeffs: &CoeffWindow<S>,
        unit: &S,
    ) -> Result<Vec<UVChip<S>>> {
        self.chips
            .iter()
            .map(|c| {
                let label = |(i, j): (i64, i64)| {
                    values(i, j).ok_or_else(|| {
                        Error::InvalidArgument(format!("no vertex value at ({i},{j})"))
                    })
                };
                let lam = match c.lambda {
                    Some(a) => coeffs.lambda(a)?.clone(),
                    None => unit.one_like(),
                };
                let mu = match c.mu {
                    Some(b) => coeffs.mu(b)?.clone(),
                    None => unit.one_like(),
                };
                Ok(UVChip {
                    kind: c.kind,
                    position: c.position,
                    labels: [label(c.labels[0])?, label(c.labels[1])?, label(c.labels[2])?],
                    coeffs: (lam, mu),
                })
            })
            .collect()
    }
}

/// Product of the embedded chips, left to right.
pub fn chip_product<S: Scalar>(size: usize, chips: &[UVChip<S>], unit: &S) -> Result<Matrix<S>> {
    let mut m = Matrix::identity(&unit.zero_like(), size);
    for chip in chips {
        let [[c00, c01], [c10, c11]] = chip.matrix()?;
        let (p, q) = (chip.position - 1, chip.position);
        for r in 0..size {
            let (x, y) = (m.get(r, p).clone(), m.get(r, q).clone());
            m.set(r, p, x.times(&c00).plus(&y.times(&c10)));
            m.set(r, q, x.times(&c01).plus(&y.times(&c11)));
        }
    }
    Ok(m)
}

/// Θ_min from initial data `t`, or Θ_max from the pyramid values `u`.
pub fn build_theta<S: Scalar>(
    flavor: ThetaFlavor,
    init: &InitialData<S>,
    coeffs: &CoeffWindow<S>,
) -> Result<Matrix<S>> {
    let n = init.n();
    let plan = chip_plan(n, flavor);
    let chips = match flavor {
        ThetaFlavor::ThetaMin => plan.instantiate(|i, j| init.get(i, j).cloned(), coeffs, init.unit())?,
        ThetaFlavor::ThetaMax => {
            let (_, frame) = evolve(init, coeffs, (0, 0, n))?;
            plan.instantiate(|i, j| frame.u_value(i, j).cloned(), coeffs, init.unit())?
        }
    };
    chip_product(plan.matrix_size, &chips, init.unit())
}

/// `T_{0,0,n}` from the leading `(n−1)×(n−1)` minor of Θ_min and the SW/SE
/// boundary data. Requires `n ≥ 2`.
pub fn soltsys_value<S: Scalar>(init: &InitialData<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
    let n = init.n() as i64;
    if n < 2 {
        return Err(Error::InvalidArgument("minor formula needs n ≥ 2".into()));
    }
    let theta = build_theta(ThetaFlavor::ThetaMin, init, coeffs)?;
    let mut v = bareiss_det(&theta.leading((n - 1) as usize))?;
    let t = |i: i64, j: i64| init.get(i, j).cloned().expect("boundary label");
    for i in (2 - n)..=-1 {
        let d = t(i, 1 - n - i);
        if d.is_zero() {
            return Err(Error::ZeroDivision(format!("t({i},{})", 1 - n - i)));
        }
        v = v.try_div(&d)?;
    }
    for i in (2 - n)..=0 {
        v = v.times(&t(i, n - 1 + i));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaReport {
    pub n: usize,
    pub identity: bool,
    pub minors: bool,
    pub soltsys: bool,
    /// First differing entry of Θ_min − Θ_max, with both values.
    pub mismatch: Option<(usize, usize, String, String)>,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.identity && self.minors && self.soltsys
    }
}

/// Compares Θ_min with Θ_max entrywise, their leading minors, and the minor
/// formula against the evolved `T_{0,0,n}`.
pub fn theta_identity_check<S: Scalar>(
    init: &InitialData<S>,
    coeffs: &CoeffWindow<S>,
) -> Result<ThetaReport> {
    let n = init.n();
    let tmin = build_theta(ThetaFlavor::ThetaMin, init, coeffs)?;
    let tmax = build_theta(ThetaFlavor::ThetaMax, init, coeffs)?;
    let mismatch = tmin.first_difference(&tmax).map(|(r, c)| {
        (r + 1, c + 1, tmin.get(r, c).to_string(), tmax.get(r, c).to_string())
    });
    let k = n.saturating_sub(1);
    let minors = bareiss_det(&tmin.leading(k))? == bareiss_det(&tmax.leading(k))?;
    let soltsys = if n >= 2 {
        soltsys_value(init, coeffs)? == evolve(init, coeffs, (0, 0, n))?.0
    } else {
        true
    };
    Ok(ThetaReport {
        n,
        identity: mismatch.is_none(),
        minors,
        soltsys,
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn describe(plan: &ChipPlan) -> Vec<String> {
        plan.chips.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn theta_min_3_sequence() {
        let got = describe(&chip_plan(3, ThetaFlavor::ThetaMin));
        let want = [
            "V_2(-1,-1 0,-2 0,-1;λ0,μ-1)",
            "V_1(-2,0 -1,-1 -1,0;λ-1,μ0)",
            "U_2(0,-1 0,0 1,-1;1,1)",
            "V_3(0,0 1,-1 1,0;λ1,μ0)",
            "U_1(-1,0 -1,1 0,0;1,1)",
            "V_2(-1,1 0,0 0,1;λ0,μ1)",
            "U_3(1,0 1,1 2,0;1,1)",
            "U_2(0,1 0,2 1,1;1,1)",
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn theta_max_3_sequence() {
        let got = describe(&chip_plan(3, ThetaFlavor::ThetaMax));
        let want = [
            "U'_2(0,-2 0,-1 1,-1;1,μ-1)",
            "U_1(-1,-1 -1,0 0,-1;1,1)",
            "U'_3(1,-1 1,0 2,0;1,μ0)",
            "U'_2(0,-1 0,0 1,0;1,μ0)",
            "V'_2(-1,0 0,0 0,1;λ0,1)",
            "V'_1(-2,0 -1,0 -1,1;λ-1,1)",
            "V_3(0,1 1,0 1,1;λ1,μ1)",
            "V'_2(-1,1 0,1 0,2;λ0,1)",
        ];
        assert_eq!(got, want);
    }

    fn random_init(n: usize, seed: i64) -> (InitialData<Rational>, CoeffWindow<Rational>) {
        let mut s = seed;
        let mut next = move || {
            s = (s * 1103515245 + 12345).rem_euclid(1 << 31);
            Rational::new(s % 17 + 1, s % 5 + 1).unwrap()
        };
        let init = InitialData::new(n, (0, 0), &Rational::one(), |_, _| next());
        let w = CoeffWindow::from_fn(
            super::super::full_range(n),
            |a| Rational::new(a + 2 * n as i64, 3).unwrap(),
            |b| Rational::new(2 * b + 3 * n as i64, 5).unwrap(),
        )
        .unwrap();
        (init, w)
    }

    #[test]
    fn identity_small_n() {
        for n in 2..=4 {
            for seed in 0..5 {
                let (init, w) = random_init(n, seed);
                let rep = theta_identity_check(&init, &w).unwrap();
                assert!(rep.passed(), "n={n} seed={seed}: {rep:?}");
            }
        }
    }
}
