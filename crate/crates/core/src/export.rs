//! Two-dimensional coordinates for external plotting.

use std::io::{self, Write};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::embedding::EmbeddingTable;

/// Projects every row onto the two leading principal components.
///
/// Component signs are fixed so the largest-magnitude loading is positive,
/// which makes the output independent of the eigen solver's sign choice.
pub fn pca_2d(table: &EmbeddingTable) -> Vec<[f64; 2]> {
    let n = table.node_count();
    let d = table.dimension();
    if n == 0 {
        return Vec::new();
    }
    let mut mean = vec![0.0; d];
    for row in table.rows() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v / n as f64;
        }
    }
    let centered = DMatrix::from_fn(n, d, |i, j| table.as_slice()[i * d + j] - mean[j]);
    let cov = centered.transpose() * &centered / n as f64;
    let eigen = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let axes: Vec<Vec<f64>> = order
        .iter()
        .take(2)
        .map(|&c| {
            let mut v: Vec<f64> = eigen.eigenvectors.column(c).iter().copied().collect();
            let lead = v
                .iter()
                .copied()
                .fold(0.0, |a: f64, b| if b.abs() > a.abs() { b } else { a });
            if lead < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect();

    (0..n)
        .map(|i| {
            let row = centered.row(i);
            let mut p = [0.0; 2];
            for (k, axis) in axes.iter().enumerate() {
                p[k] = row.iter().zip(axis).map(|(a, b)| a * b).sum();
            }
            p
        })
        .collect()
}

/// Writes `label,x,y` rows with a header.
pub fn write_coordinates<W: Write>(labels: &[String], coords: &[[f64; 2]], mut out: W) -> io::Result<()> {
    writeln!(out, "label,x,y")?;
    for (l, [x, y]) in labels.iter().zip(coords) {
        writeln!(out, "{l},{x},{y}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_on_a_line_have_no_second_component() {
        let rows = (0..5).map(|i| vec![i as f64, 2.0 * i as f64, 1.0]).collect();
        let p = pca_2d(&EmbeddingTable::from_rows(rows));
        let spread: Vec<f64> = p.iter().map(|q| q[0]).collect();
        assert!((spread[4] - spread[0] - 4.0 * 5f64.sqrt()).abs() < 1e-9);
        assert!(p.iter().all(|q| q[1].abs() < 1e-9));
    }

    #[test]
    fn one_dimension_pads_with_zero() {
        let p = pca_2d(&EmbeddingTable::from_rows(vec![vec![1.0], vec![3.0]]));
        assert_eq!(p, vec![[-1.0, 0.0], [1.0, 0.0]]);
    }
}
