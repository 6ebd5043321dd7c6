//! Deterministic randomness and the dense linear-algebra kernels the rest
//! of the crate is built on.

pub mod eig;
pub mod kmeans;
pub mod matrix;
pub mod rng;
pub mod svd;

pub use eig::{sym_eig, SymEig};
pub use kmeans::{kmeans, KmeansResult, DEFAULT_MAX_ITER};
pub use matrix::{cholesky, cholesky_solve, Matrix};
pub use rng::Rng64;
pub use svd::{pseudoinverse, svd, Svd};

/// Population standard deviation (divisor n). Returns 0 for empty input.
pub fn population_std(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Mean of a slice; 0 for empty input.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_std_divides_by_n() {
        // Var([0,3,0,0.1,0]) with divisor n is 1.4176.
        let s = population_std(&[0.0, 3.0, 0.0, 0.1, 0.0]);
        assert!((s - 1.4176_f64.sqrt()).abs() < 1e-12);
        assert_eq!(population_std(&[]), 0.0);
        assert_eq!(population_std(&[2.0, 2.0, 2.0]), 0.0);
    }
}
