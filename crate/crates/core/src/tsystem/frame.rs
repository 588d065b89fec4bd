use super::CoeffWindow;
use crate::error::{Error, Result};
use crate::exact::{LaurentPolynomial, Matrix, Scalar, VarSet};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Initial values `t_{i,j}` on the diamond `|i−ci| + |j−cj| ≤ n−1`.
///
/// The value at `(i, j)` sits on layer `ε = (i+j+n+ci+cj) mod 2`, so that the
/// apex `(ci, cj, n)` has the right parity.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialData<S: Scalar> {
    n: usize,
    center: (i64, i64),
    t: BTreeMap<(i64, i64), S>,
    unit: S,
}

fn diamond(n: usize, center: (i64, i64)) -> impl Iterator<Item = (i64, i64)> {
    let r = n as i64 - 1;
    (-r..=r).flat_map(move |di| {
        let w = r - di.abs();
        (-w..=w).map(move |dj| (center.0 + di, center.1 + dj))
    })
}

impl<S: Scalar> InitialData<S> {
    pub fn new(
        n: usize,
        center: (i64, i64),
        unit: &S,
        mut f: impl FnMut(i64, i64) -> S,
    ) -> Self {
        let t = diamond(n, center).map(|(i, j)| ((i, j), f(i, j))).collect();
        InitialData {
            n,
            center,
            t,
            unit: unit.one_like(),
        }
    }

    /// Centered at the origin; the key set must be exactly the diamond.
    pub fn from_map(n: usize, unit: &S, t: BTreeMap<(i64, i64), S>) -> Result<Self> {
        let expected: Vec<(i64, i64)> = {
            let mut v: Vec<_> = diamond(n, (0, 0)).collect();
            v.sort();
            v
        };
        let got: Vec<(i64, i64)> = t.keys().copied().collect();
        if got != expected {
            let missing = expected.iter().find(|p| !t.contains_key(p));
            let extra = got.iter().find(|p| expected.binary_search(p).is_err());
            return Err(Error::InvalidArgument(format!(
                "initial data domain mismatch (missing {missing:?}, unexpected {extra:?})"
            )));
        }
        Ok(InitialData {
            n,
            center: (0, 0),
            t,
            unit: unit.one_like(),
        })
    }

    pub fn ones(n: usize, unit: &S) -> Self {
        Self::new(n, (0, 0), unit, |_, _| unit.one_like())
    }

    /// Lambda-determinant data: 1 on layer 0 and the matrix entry
    /// `a_{(j−i+n+1)/2, (i+j+n+1)/2}` on layer 1.
    pub fn from_matrix(a: &Matrix<S>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let n = a.rows();
        let ni = n as i64;
        Ok(Self::new(n, (0, 0), a.zero(), |i, j| {
            if (i + j + ni).rem_euclid(2) == 0 {
                a.zero().one_like()
            } else {
                let r = ((j - i + ni + 1) / 2 - 1) as usize;
                let c = ((i + j + ni + 1) / 2 - 1) as usize;
                a.get(r, c).clone()
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn center(&self) -> (i64, i64) {
        self.center
    }

    pub fn unit(&self) -> &S {
        &self.unit
    }

    pub fn get(&self, i: i64, j: i64) -> Option<&S> {
        self.t.get(&(i, j))
    }

    pub fn set(&mut self, i: i64, j: i64, v: S) -> Result<()> {
        match self.t.get_mut(&(i, j)) {
            Some(slot) => {
                *slot = v;
                Ok(())
            }
            None => Err(Error::InvalidArgument(format!("({i},{j}) is outside the diamond"))),
        }
    }

    pub fn layer(&self, i: i64, j: i64) -> usize {
        (i + j + self.n as i64 + self.center.0 + self.center.1).rem_euclid(2) as usize
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &S)> {
        self.t.iter()
    }

    pub fn map<T: Scalar>(&self, unit: &T, f: impl Fn(&S) -> T) -> InitialData<T> {
        InitialData {
            n: self.n,
            center: self.center,
            t: self.t.iter().map(|(k, v)| (*k, f(v))).collect(),
            unit: unit.one_like(),
        }
    }
}

pub fn t_name(i: i64, j: i64) -> String {
    format!("t{i},{j}")
}

impl InitialData<LaurentPolynomial> {
    pub fn symbolic(n: usize, vars: &Arc<VarSet>) -> Result<Self> {
        let unit = LaurentPolynomial::constant(vars, 1);
        let mut t = BTreeMap::new();
        for (i, j) in diamond(n, (0, 0)) {
            t.insert((i, j), LaurentPolynomial::var(vars, &t_name(i, j))?);
        }
        Self::from_map(n, &unit, t)
    }
}

/// All values `T_{i,j,k}` of the pyramid `|i−ci| + |j−cj| ≤ n−k` up to a layer.
#[derive(Clone, Debug)]
pub struct TSystemFrame<S: Scalar> {
    n: usize,
    center: (i64, i64),
    layers: Vec<HashMap<(i64, i64), S>>,
}

impl<S: Scalar> TSystemFrame<S> {
    /// Layer-by-layer evolution up to `k_max ≤ n`.
    pub fn build(init: &InitialData<S>, coeffs: &CoeffWindow<S>, k_max: usize) -> Result<Self> {
        let n = init.n;
        if k_max > n.max(1) {
            return Err(Error::InvalidArgument(format!("layer {k_max} above apex {n}")));
        }
        let mut layers = vec![HashMap::new(), HashMap::new()];
        for (&(i, j), v) in &init.t {
            layers[init.layer(i, j)].insert((i, j), v.clone());
        }
        let (ci, cj) = init.center;
        for k in 2..=k_max {
            let mut layer = HashMap::new();
            let prev = &layers[k - 1];
            let prev2 = &layers[k - 2];
            let r = (n - k) as i64;
            for di in -r..=r {
                let w = r - di.abs();
                for dj in -w..=w {
                    if (di + dj + (n - k) as i64).rem_euclid(2) != 0 {
                        continue;
                    }
                    let (i, j) = (ci + di, cj + dj);
                    let num = coeffs
                        .mu(j)?
                        .times(&at(prev, (i, j + 1)).times(at(prev, (i, j - 1))))
                        .plus(
                            &coeffs
                                .lambda(i)?
                                .times(&at(prev, (i + 1, j)).times(at(prev, (i - 1, j)))),
                        );
                    let den = at(prev2, (i, j));
                    if den.is_zero() {
                        return Err(Error::ZeroDivision(format!("T({i},{j},{})", k - 2)));
                    }
                    layer.insert((i, j), num.try_div(den)?);
                }
            }
            layers.push(layer);
        }
        layers.truncate(k_max + 1);
        Ok(TSystemFrame {
            n,
            center: init.center,
            layers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_layer(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn get(&self, i: i64, j: i64, k: usize) -> Option<&S> {
        self.layers.get(k)?.get(&(i, j))
    }

    pub fn layer(&self, k: usize) -> impl Iterator<Item = (&(i64, i64), &S)> {
        self.layers.get(k).into_iter().flat_map(|l| l.iter())
    }

    /// `u_{i,j} = T_{i,j,n−|i|−|j|}` on the diamond (origin-centred frames).
    pub fn u_value(&self, i: i64, j: i64) -> Option<&S> {
        let d = (i - self.center.0).abs() + (j - self.center.1).abs();
        let k = self.n as i64 - d;
        if k < 0 {
            return None;
        }
        self.get(i, j, k as usize)
    }

    /// Re-checks the recurrence at every stored point of layer ≥ 2.
    pub fn verify_relation(&self, coeffs: &CoeffWindow<S>) -> Result<bool> {
        for k in 2..self.layers.len() {
            for (&(i, j), v) in &self.layers[k] {
                let g = |di: i64, dj: i64, kk: usize| self.layers[kk][&(i + di, j + dj)].clone();
                let lhs = v.times(&g(0, 0, k - 2));
                let rhs = coeffs
                    .mu(j)?
                    .times(&g(0, 1, k - 1).times(&g(0, -1, k - 1)))
                    .plus(&coeffs.lambda(i)?.times(&g(1, 0, k - 1).times(&g(-1, 0, k - 1))));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn at<S>(layer: &HashMap<(i64, i64), S>, p: (i64, i64)) -> &S {
    layer.get(&p).expect("pyramid neighbour present")
}

/// `T` at `target`, computed by evolving the whole pyramid below it.
pub fn evolve<S: Scalar>(
    init: &InitialData<S>,
    coeffs: &CoeffWindow<S>,
    target: (i64, i64, usize),
) -> Result<(S, TSystemFrame<S>)> {
    let (i, j, k) = target;
    let n = init.n as i64;
    let (ci, cj) = init.center;
    let d = (i - ci).abs() + (j - cj).abs();
    if (i + j + k as i64 - n - ci - cj).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!(
            "target ({i},{j},{k}) has the wrong parity"
        )));
    }
    if d + k as i64 > n || (init.n == 0 && k > 0) {
        return Err(Error::InvalidArgument(format!(
            "target ({i},{j},{k}) lies outside the pyramid"
        )));
    }
    if init.n == 0 {
        let frame = TSystemFrame {
            n: 0,
            center: init.center,
            layers: vec![HashMap::new()],
        };
        return Ok((init.unit.clone(), frame));
    }
    let frame = TSystemFrame::build(init, coeffs, k)?;
    let v = frame
        .get(i, j, k)
        .cloned()
        .expect("target inside the pyramid");
    Ok((v, frame))
}

/// `T_{0,0,n}` for the matrix initial data, i.e. the Lambda-determinant.
pub fn lambda_det_via_tsystem<S: Scalar>(a: &Matrix<S>, coeffs: &CoeffWindow<S>) -> Result<S> {
    let init = InitialData::from_matrix(a)?;
    Ok(evolve(&init, coeffs, (0, 0, a.rows()))?.0)
}
