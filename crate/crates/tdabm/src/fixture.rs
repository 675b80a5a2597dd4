//! Synthetic datasets: `k` independent U[0,1) axes and an optional outcome.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdabm_core::{OutcomeVector, PointCloud};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Formula {
    /// `Y = X1 + ... + Xk`, summed left to right.
    #[default]
    Sum,
    /// No outcome column.
    None,
}

/// Columns are filled one after another (all of `X1`, then all of `X2`, ...)
/// from a single ChaCha8 stream seeded with `seed`.
pub fn generate(
    n: usize,
    k: usize,
    seed: u64,
    formula: Formula,
) -> Result<(PointCloud, Option<OutcomeVector>)> {
    if n == 0 || k == 0 {
        return Err(Error::Usage("fixture needs n >= 1 and k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let mut values = Vec::with_capacity(n * k);
    for i in 0..n {
        values.extend(columns.iter().map(|c| c[i]));
    }
    let names = (1..=k).map(|j| format!("X{j}")).collect();
    let pc = PointCloud::new(names, values)?;
    let y = match formula {
        Formula::Sum => Some(OutcomeVector::new(
            "Y",
            pc.rows().map(|r| r.iter().sum()).collect(),
        )?),
        Formula::None => None,
    };
    Ok((pc, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_outcome_is_exact() {
        let (pc, y) = generate(500, 2, 123, Formula::Sum).unwrap();
        let y = y.unwrap();
        assert_eq!(pc.len(), 500);
        for (r, &v) in pc.rows().zip(y.values()) {
            assert_eq!(r[0] + r[1], v);
            assert!((0.0..1.0).contains(&r[0]) && (0.0..1.0).contains(&r[1]));
        }
    }

    #[test]
    fn single_row_and_no_outcome() {
        let (pc, y) = generate(1, 3, 0, Formula::None).unwrap();
        assert_eq!((pc.len(), pc.dim()), (1, 3));
        assert!(y.is_none());
        assert!(generate(0, 2, 0, Formula::Sum).is_err());
    }

    #[test]
    fn means_within_three_standard_errors() {
        // U[0,1) has sd sqrt(1/12); the mean of 10000 draws has
        // standard error sqrt(1/12)/100 ≈ 0.00289
        let n = 10_000;
        let (pc, _) = generate(n, 3, 2024, Formula::None).unwrap();
        let se = (1.0f64 / 12.0).sqrt() / (n as f64).sqrt();
        for j in 0..3 {
            let mean = pc.column(j).sum::<f64>() / n as f64;
            assert!((mean - 0.5).abs() < 3.0 * se, "column {j}: {mean}");
        }
    }

    #[test]
    fn seeded() {
        assert_eq!(
            generate(20, 2, 9, Formula::Sum).unwrap(),
            generate(20, 2, 9, Formula::Sum).unwrap()
        );
    }
}
