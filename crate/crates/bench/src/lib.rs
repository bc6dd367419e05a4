//! Fixtures shared by the benchmarks.

use prolong_core::linalg::IntMatrix;

/// A dense `n × n` integer matrix with small, deterministic, full-rank-ish
/// entries.
pub fn sample_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((i * 7 + j * 13 + i * j * 3) % 11) as i64 - 5)
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    #[test]
    fn sample_matrix_has_requested_shape() {
        let m = super::sample_matrix(5);
        assert_eq!((m.rows(), m.cols()), (5, 5));
    }
}
