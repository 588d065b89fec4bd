use crate::cli::{random_instance, ValueRange};
use crate::exact::{Matrix, Rational};
use crate::tsystem::CoeffWindow;
use rand_chacha::ChaCha8Rng;

pub fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Non-zero `p/d` with `p ∈ [−9, 9]`, `d ∈ [1, 4]`.
pub fn rnd(rng: &mut ChaCha8Rng) -> Rational {
    ValueRange::default().draw(rng)
}

pub fn rand_matrix(n: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    ValueRange::default().matrix(n, rng)
}

/// Random instance on which condensation divides only by non-zero minors.
pub fn nondegenerate(n: usize, rng: &mut ChaCha8Rng) -> (Matrix<Rational>, CoeffWindow<Rational>) {
    let (a, w, _) = random_instance(n, ValueRange::default(), rng);
    (a, w)
}

pub fn rand_window(n: usize, rng: &mut ChaCha8Rng) -> CoeffWindow<Rational> {
    ValueRange::default().window(n, rng)
}
