//! Seeded random forms for property checks.

use std::sync::Arc;

use rand::Rng;

use crate::clique::CliqueComplex;
use crate::error::Result;
use crate::forms::Form;
use crate::rational::{frac, Rational};

/// A small non-zero rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-5..=5);
        if p != 0 {
            return frac(p, rng.gen_range(1..=4));
        }
    }
}

/// Random form of degree `k`: each (k+1)-clique independently carries a
/// random non-zero coefficient with probability `density`.
pub fn random_form<R: Rng + ?Sized>(
    rng: &mut R,
    complex: &Arc<CliqueComplex>,
    degree: usize,
    density: f64,
) -> Result<Form> {
    let mut entries = Vec::new();
    for c in complex.level(degree + 1) {
        if rng.gen_bool(density) {
            entries.push((c.vertices().to_vec(), small_rational(rng)));
        }
    }
    Form::from_entries(complex, degree, entries)
}

/// Random 0-form with a value at every vertex (zeros allowed).
pub fn random_function<R: Rng + ?Sized>(rng: &mut R, complex: &Arc<CliqueComplex>) -> Form {
    let values: Vec<Rational> = complex
        .graph()
        .vertices()
        .map(|_| {
            if rng.gen_bool(0.2) {
                Rational::from_integer(0.into())
            } else {
                small_rational(rng)
            }
        })
        .collect();
    Form::from_fn0(complex, |v| values[v.0].clone())
}
