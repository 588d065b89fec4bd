use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational, Scalar};
use crate::lambdadet::vandermonde_matrix;
use crate::tsystem::{dodgson, full_range, needed_range, CoeffWindow, InitialData, ShiftConvention};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// A rational from a JSON string `"p/q"` or a JSON integer. Floats are rejected.
pub fn rational_at(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|e: Error| schema(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().unwrap_or_default())),
        Value::Number(_) => Err(schema(path, "expected an exact rational, got a float")),
        _ => Err(schema(path, "expected a rational string")),
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| schema("$", e.to_string()))
}

/// `{"n": N, "entries": [[...], ...]}`.
pub fn parse_matrix(v: &Value) -> Result<Matrix<Rational>> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("$.n", "expected a non-negative integer"))? as usize;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("$.entries", "expected an array of rows"))?;
    if rows.len() != n {
        return Err(schema("$.entries", format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let p = format!("$.entries[{i}]");
        let row = row.as_array().ok_or_else(|| schema(&p, "expected an array"))?;
        if row.len() != n {
            return Err(schema(&p, format!("expected {n} entries, found {}", row.len())));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| rational_at(x, &format!("{p}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(&Rational::zero(), out)
}

fn parse_indexed(v: &Value, path: &str) -> Result<BTreeMap<i64, Rational>> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object keyed by offset"))?;
    let mut out = BTreeMap::new();
    for (k, x) in obj {
        let p = format!("{path}[\"{k}\"]");
        let idx: i64 = k.trim().parse().map_err(|_| schema(&p, "offset is not an integer"))?;
        out.insert(idx, rational_at(x, &p)?);
    }
    Ok(out)
}

/// `{"lambda": {"-1": "1/2", ...}, "mu": {...}}`.
pub fn parse_coeffs(v: &Value) -> Result<CoeffWindow<Rational>> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let lambda = parse_indexed(obj.get("lambda").ok_or_else(|| schema("$.lambda", "missing"))?, "$.lambda")?;
    let mu = parse_indexed(obj.get("mu").ok_or_else(|| schema("$.mu", "missing"))?, "$.mu")?;
    for (which, map) in [("$.lambda", &lambda), ("$.mu", &mu)] {
        if let Some((k, _)) = map.iter().find(|(_, x)| x.is_zero()) {
            return Err(schema(format!("{which}[\"{k}\"]"), "coefficients must be non-zero"));
        }
    }
    CoeffWindow::new(lambda, mu)
}

/// `{"n": N, "t": {"i,j": value, ...}}` on the diamond `|i|+|j| ≤ N−1`.
pub fn parse_initial(v: &Value) -> Result<InitialData<Rational>> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("$.n", "expected a non-negative integer"))? as usize;
    let t = obj
        .get("t")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("$.t", "expected an object keyed by \"i,j\""))?;
    let mut map = BTreeMap::new();
    for (k, x) in t {
        let p = format!("$.t[\"{k}\"]");
        let (i, j) = parse_pair(k).map_err(|_| schema(&p, "key must be \"i,j\""))?;
        map.insert((i, j), rational_at(x, &p)?);
    }
    InitialData::from_map(n, &Rational::one(), map)
}

pub fn parse_pair(s: &str) -> Result<(i64, i64)> {
    match parse_ints(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::Parse(format!("expected two integers, got `{s}`"))),
    }
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{x}` in `{s}`"))))
        .collect()
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| x.trim().parse()).collect()
}

/// Draws for random instances: non-zero numerators in `[−max_num, max_num]`
/// over denominators in `[1, max_den]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValueRange {
    pub max_num: i64,
    pub max_den: i64,
}

impl Default for ValueRange {
    fn default() -> Self {
        ValueRange { max_num: 9, max_den: 4 }
    }
}

impl ValueRange {
    pub fn validate(self) -> Result<Self> {
        if self.max_num < 1 || self.max_den < 1 {
            return Err(Error::InvalidArgument("value range bounds must be at least 1".into()));
        }
        Ok(self)
    }

    pub fn draw(self, rng: &mut ChaCha8Rng) -> Rational {
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-self.max_num..=self.max_num);
        }
        Rational::new(num, rng.gen_range(1..=self.max_den)).expect("positive denominator")
    }

    pub fn matrix(self, n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
        Matrix::from_fn(&Rational::zero(), n, n, |_, _| self.draw(rng))
    }

    /// Coefficients on the range the Lambda-determinant of size `n` reads.
    pub fn window(self, n: usize, rng: &mut ChaCha8Rng) -> CoeffWindow<Rational> {
        let lambda = needed_range(n).map(|a| (a, self.draw(rng))).collect();
        let mu = needed_range(n).map(|b| (b, self.draw(rng))).collect();
        CoeffWindow::new(lambda, mu).expect("non-zero draws")
    }
}

/// Stream `stream` of the generator seeded by `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random instance whose condensation never divides by zero, with the number
/// of rejected draws.
pub fn random_instance(
    n: usize,
    range: ValueRange,
    rng: &mut ChaCha8Rng,
) -> (Matrix<Rational>, CoeffWindow<Rational>, usize) {
    let mut redraws = 0;
    loop {
        let a = range.matrix(n, rng);
        let w = range.window(n, rng);
        if dodgson(&a, &w, ShiftConvention::Lattice).is_ok() {
            return (a, w, redraws);
        }
        redraws += 1;
    }
}

/// Where the matrix comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MatrixSource {
    File { path: String },
    Random { seed: u64, n: usize, range: ValueRange },
    AllOnes { n: usize },
    Vandermonde { a: Vec<Rational> },
}

/// Where the coefficients come from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CoeffSource {
    File { path: String },
    Homogeneous { lambda: Rational, mu: Rational },
    QPower { q: Rational },
    Random { seed: u64, range: ValueRange },
}

/// A fully resolved instance description.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSpec {
    pub matrix: MatrixSource,
    pub coefficients: CoeffSource,
}

impl InstanceSpec {
    /// Builds the instance and checks window coverage for its size.
    pub fn materialize(&self) -> Result<(Matrix<Rational>, CoeffWindow<Rational>)> {
        let a = match &self.matrix {
            MatrixSource::File { path } => parse_matrix(&read_json(Path::new(path))?)?,
            MatrixSource::Random { seed, n, range } => range.validate()?.matrix(*n, &mut trial_rng(*seed, 0)),
            MatrixSource::AllOnes { n } => Matrix::from_fn(&Rational::zero(), *n, *n, |_, _| Rational::one()),
            MatrixSource::Vandermonde { a } => vandermonde_matrix(a),
        };
        let n = a.rows();
        let w = coefficients_for(&self.coefficients, n)?;
        w.require_for(n)?;
        Ok((a, w))
    }
}

/// Coefficients for a problem of size `n`; generated windows span `[1−n, n−1]`.
pub fn coefficients_for(src: &CoeffSource, n: usize) -> Result<CoeffWindow<Rational>> {
    match src {
        CoeffSource::File { path } => parse_coeffs(&read_json(Path::new(path))?),
        CoeffSource::Homogeneous { lambda, mu } => CoeffWindow::homogeneous(n, lambda.clone(), mu.clone()),
        CoeffSource::QPower { q } => CoeffWindow::q_power(full_range(n), q),
        CoeffSource::Random { seed, range } => {
            let range = range.validate()?;
            let mut rng = trial_rng(*seed, 1);
            let lambda = full_range(n).map(|a| (a, range.draw(&mut rng))).collect();
            let mu = full_range(n).map(|b| (b, range.draw(&mut rng))).collect();
            CoeffWindow::new(lambda, mu)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrix_file_shape() {
        let m = parse_matrix(&json!({"n": 3, "entries": [["1","2","3"],["1/2","0","-1"],[1,2,3]]})).unwrap();
        assert_eq!(m.get(1, 0), &"1/2".parse::<Rational>().unwrap());
        let e = parse_matrix(&json!({"n": 2, "entries": [["1","2"],["1", 0.5]]})).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.entries[1][1]"), "{e:?}");
        let e = parse_matrix(&json!({"n": 2, "entries": [["1","2"]]})).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.entries"));
        let e = parse_matrix(&json!({"entries": []})).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.n"));
    }

    #[test]
    fn coefficient_file() {
        let w = parse_coeffs(&json!({"lambda": {"-1": "1/2", "0": 1, "1": "3"}, "mu": {"-1": "2", "0": "1", "1": "1"}})).unwrap();
        assert_eq!(w.lambda(-1).unwrap(), &"1/2".parse::<Rational>().unwrap());
        let e = parse_coeffs(&json!({"lambda": {"x": "1"}, "mu": {}})).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.lambda[\"x\"]"));
        let e = parse_coeffs(&json!({"lambda": {"0": "0"}, "mu": {"0": "1"}})).unwrap_err();
        assert!(matches!(e, Error::Schema { .. }));
    }

    #[test]
    fn missing_index_is_window_too_small() {
        let w = parse_coeffs(&json!({"lambda": {"1": "1"}, "mu": {"1": "1"}})).unwrap();
        assert!(matches!(w.require_for(2), Err(Error::WindowTooSmall { index: 0, .. })));
    }

    #[test]
    fn vandermonde_spec() {
        let spec = InstanceSpec {
            matrix: MatrixSource::Vandermonde { a: parse_rationals("1,2,3").unwrap() },
            coefficients: CoeffSource::Homogeneous {
                lambda: "2/1".parse().unwrap(),
                mu: "1/1".parse().unwrap(),
            },
        };
        let (a, w) = spec.materialize().unwrap();
        assert_eq!(a.get(2, 2), &Rational::from_int(9));
        assert_eq!(w.lambda(0).unwrap(), &Rational::from_int(2));
        assert_eq!(w.mu(2).unwrap(), &Rational::one());
    }

    #[test]
    fn seeds_determine_instances() {
        let r = ValueRange::default();
        let (a1, w1, _) = random_instance(4, r, &mut trial_rng(5, 3));
        let (a2, w2, _) = random_instance(4, r, &mut trial_rng(5, 3));
        assert_eq!(a1, a2);
        assert_eq!(w1, w2);
        let (a3, _, _) = random_instance(4, r, &mut trial_rng(5, 4));
        assert_ne!(a1, a3);
        for i in 0..4 {
            for j in 0..4 {
                assert!(!a1.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn initial_data_file() {
        let init = parse_initial(&json!({"n": 2, "t": {"0,0": "1", "1,0": "2", "-1,0": "3", "0,1": "4", "0,-1": "5"}})).unwrap();
        assert_eq!(init.get(-1, 0), Some(&Rational::from_int(3)));
        assert!(parse_initial(&json!({"n": 2, "t": {"0,0": "1"}})).is_err());
    }
}
