//! Coboundary matrices of `d` and Betti numbers over the rationals.

use num_traits::Zero;

use crate::clique::CliqueComplex;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Matrix of `d` from degree `k` to degree `k + 1`.
///
/// Rows are the canonical `(k+2)`-cliques, columns the `(k+1)`-cliques; the
/// entry at `(c', c)` is `(-1)^i` when `c` is `c'` without its `i`-th vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryMatrix {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` in row-major order.
    pub entries: Vec<(usize, usize, i64)>,
}

impl CoboundaryMatrix {
    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = v;
        }
        m
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.dense()
            .into_iter()
            .map(|row| row.into_iter().map(rational::int).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.to_rational())
    }

    pub fn to_triplet_text(&self) -> String {
        crate::io::triplets_to_text(self.rows, self.cols, &self.entries)
    }
}

pub fn coboundary_matrix(cx: &CliqueComplex, k: usize) -> Result<CoboundaryMatrix> {
    cx.require_card(k + 2)?;
    let rows = cx.level(k + 2);
    let cols = cx.level(k + 1).len();
    let mut entries = Vec::with_capacity(rows.len() * (k + 2));
    for (r, c) in rows.iter().enumerate() {
        let mut row: Vec<(usize, usize, i64)> = (0..c.len())
            .map(|i| {
                let col = cx.index_of(&c.face(i)).expect("complex is downward closed");
                (r, col, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        row.sort_unstable();
        entries.extend(row);
    }
    Ok(CoboundaryMatrix {
        degree: k,
        rows: rows.len(),
        cols,
        entries,
    })
}

/// Integer matrix product, used to check `D_{k+1} · D_k = 0`.
pub fn product(a: &CoboundaryMatrix, b: &CoboundaryMatrix) -> Result<Vec<Vec<i64>>> {
    if a.cols != b.rows {
        return Err(Error::Domain(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let bd = b.dense();
    let mut out = vec![vec![0i64; b.cols]; a.rows];
    for &(r, k, v) in &a.entries {
        for (c, &w) in bd[k].iter().enumerate() {
            out[r][c] += v * w;
        }
    }
    Ok(out)
}

/// Rank over ℚ by Gaussian elimination with exact arithmetic.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = Rational::from_integer(1.into()) / &a[rank][col];
        for c in col..cols {
            a[rank][c] = &a[rank][c] * &inv;
        }
        for r in 0..rows {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..cols {
                let delta = &factor * &a[rank][c];
                a[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// All coboundary matrices `D_0 .. D_{top-1}` of a complete complex.
pub fn coboundary_matrices(cx: &CliqueComplex) -> Result<Vec<CoboundaryMatrix>> {
    let top = cx.top_card();
    (0..top).map(|k| coboundary_matrix(cx, k)).collect()
}

/// `b_k = dim C^k - rank D_k - rank D_{k-1}` for `k = 0 .. top`.
///
/// The complex must contain every clique of the graph (an empty top level),
/// otherwise truncated levels would fake the ranks.
pub fn betti(cx: &CliqueComplex) -> Result<Vec<usize>> {
    if !cx.is_complete() {
        return Err(Error::Capacity {
            required: cx.max_card() + 1,
            max_card: cx.max_card(),
        });
    }
    let mats = coboundary_matrices(cx)?;
    let ranks: Vec<usize> = mats.iter().map(CoboundaryMatrix::rank).collect();
    Ok((0..cx.top_card())
        .map(|k| {
            let dim = cx.level(k + 1).len();
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            dim - ranks[k] - below
        })
        .collect())
}

/// `Σ_k (-1)^k |C_{k+1}|`.
pub fn euler_characteristic(cx: &CliqueComplex) -> i64 {
    (1..=cx.max_card())
        .map(|k| {
            let n = cx.level(k).len() as i64;
            if k % 2 == 1 {
                n
            } else {
                -n
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Graph};
    use std::sync::Arc;

    fn full(g: Graph) -> Arc<CliqueComplex> {
        CliqueComplex::build_full(Arc::new(g)).unwrap()
    }

    #[test]
    fn edge_and_triangle_matrices() {
        let e = full(named::path(2));
        assert_eq!(coboundary_matrix(&e, 0).unwrap().dense(), vec![vec![-1, 1]]);
        let t = full(named::complete(3));
        assert_eq!(coboundary_matrix(&t, 1).unwrap().dense(), vec![vec![1, -1, 1]]);
        assert_eq!(coboundary_matrix(&t, 0).unwrap().rank(), 2);
    }

    #[test]
    fn missing_level_is_capacity_error() {
        let cx = CliqueComplex::build(Arc::new(named::complete(4)), 2).unwrap();
        assert!(matches!(coboundary_matrix(&cx, 1), Err(Error::Capacity { .. })));
        assert!(matches!(betti(&cx), Err(Error::Capacity { .. })));
    }

    #[test]
    fn small_ranks() {
        let z = vec![vec![rational::int(0); 3]; 2];
        assert_eq!(rational_rank(&z), 0);
        let id: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| rational::int((i == j) as i64)).collect())
            .collect();
        assert_eq!(rational_rank(&id), 3);
        assert_eq!(rational_rank(&[]), 0);
    }

    #[test]
    fn d_squared_matrix_on_k4() {
        let cx = full(named::complete(4));
        let p = product(&coboundary_matrix(&cx, 1).unwrap(), &coboundary_matrix(&cx, 0).unwrap()).unwrap();
        assert!(p.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti(&full(named::cycle(4))).unwrap(), [1, 1]);
        assert_eq!(betti(&full(named::complete(5))).unwrap(), [1, 0, 0, 0, 0]);
        assert_eq!(betti(&full(named::octahedron())).unwrap(), [1, 0, 1]);
        assert_eq!(betti(&full(named::petersen())).unwrap(), [1, 6]);
        assert_eq!(euler_characteristic(&full(named::petersen())), -5);
    }
}
