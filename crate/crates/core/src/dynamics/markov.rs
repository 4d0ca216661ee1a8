use std::collections::VecDeque;

use crate::hyperbolic::BoundaryPoint;
use crate::polygon::side_count;
use crate::tolerance;
use crate::{Error, Result};

use super::BoundaryMap;

/// Markov partition `I_{2i-1} = [P_i, Q_i)`, `I_{2i} = [Q_i, P_{i+1})` and
/// its 0/1 transition matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovData {
    pub genus: usize,
    /// Left endpoints `P_1, Q_1, P_2, …, Q_n`.
    pub points: Vec<BoundaryPoint>,
    pub matrix: Vec<Vec<u8>>,
}

impl MarkovData {
    /// Matches the images of interval endpoints against the partition
    /// points and marks the intervals covered by each image arc.
    pub fn build(bm: &BoundaryMap) -> Result<Self> {
        let poly = bm.polygon();
        let n = poly.n();
        let m = 2 * n;
        let points: Vec<BoundaryPoint> = (1..=n).flat_map(|i| [poly.p(i), poly.q(i)]).collect();
        let nearest = |x: BoundaryPoint, interval: usize| -> Result<usize> {
            let (k, d) = points
                .iter()
                .enumerate()
                .map(|(k, y)| (k, x.circular_distance(y)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("partition is non-empty");
            if d <= tolerance::MARKOV_MATCH {
                Ok(k)
            } else {
                Err(Error::MarkovViolation { interval, angle: x.angle() })
            }
        };
        let mut matrix = vec![vec![0u8; m]; m];
        for k in 0..m {
            let branch = bm.branch_map(k / 2 + 1);
            let a = nearest(branch.apply_boundary(points[k]), k + 1)?;
            let b = nearest(branch.apply_boundary(points[(k + 1) % m]), k + 1)?;
            if a == b {
                return Err(Error::MarkovViolation {
                    interval: k + 1,
                    angle: points[a].angle(),
                });
            }
            let mut j = a;
            while j != b {
                matrix[k][j] = 1;
                j = (j + 1) % m;
            }
        }
        let md = MarkovData { genus: poly.genus(), points, matrix };
        if let Some(row) = md.matrix.iter().position(|r| r.iter().map(|&x| x as usize).sum::<usize>() < 2) {
            return Err(Error::InvariantViolation {
                name: format!("markov_row_{}_has_two_ones", row + 1),
                observed: 0.0,
                tolerance: 0.0,
            });
        }
        if !md.is_irreducible() {
            return Err(Error::InvariantViolation {
                name: "markov_irreducible".into(),
                observed: 0.0,
                tolerance: 0.0,
            });
        }
        Ok(md)
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// Strong connectivity: every state reachable from state 0 in the graph
    /// and in its transpose.
    pub fn is_irreducible(&self) -> bool {
        let m = self.size();
        let reach = |forward: bool| {
            let mut seen = vec![false; m];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(x) = queue.pop_front() {
                for y in 0..m {
                    let edge = if forward { self.matrix[x][y] } else { self.matrix[y][x] };
                    if edge == 1 && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        m > 0 && reach(true) && reach(false)
    }

    /// One row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.size() * self.size() * 2);
        for row in &self.matrix {
            let line: Vec<&str> = row.iter().map(|&x| if x == 1 { "1" } else { "0" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).filter(|(&m, _)| m == 1).map(|(_, x)| x).sum())
            .collect()
    }
}

/// Perron root and eigenvector (max-normalized) of a nonnegative irreducible
/// matrix, by power iteration on `M + I` with Collatz–Wielandt bounds.
pub fn perron_root(md: &MarkovData) -> Result<(f64, Vec<f64>)> {
    let m = md.size();
    let mut x = vec![1.0; m];
    for _ in 0..tolerance::PERRON_MAX_ITER {
        let y: Vec<f64> = md.apply(&x).iter().zip(&x).map(|(a, b)| a + b).collect();
        let ratios = y.iter().zip(&x).map(|(a, b)| a / b);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let top = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| v / top).collect();
        if hi - lo <= tolerance::PERRON_REL * hi {
            return Ok((0.5 * (lo + hi) - 1.0, x));
        }
    }
    Err(Error::NoConvergence { iterations: tolerance::PERRON_MAX_ITER })
}

/// `log` of the spectral radius of the transition matrix.
pub fn topological_entropy(md: &MarkovData) -> Result<f64> {
    perron_root(md).map(|(l, _)| l.ln())
}

/// `λ = 4g-3 + √((4g-3)²-1)` with `v = (1, λ-1, 1, λ-1, …)`.
pub fn analytic_eigenpair(genus: usize) -> Result<(f64, Vec<f64>)> {
    let n = side_count(genus)?;
    let k = 4.0 * genus as f64 - 3.0;
    let lambda = k + (k * k - 1.0).sqrt();
    let v = (0..2 * n).map(|j| if j % 2 == 0 { 1.0 } else { lambda - 1.0 }).collect();
    Ok((lambda, v))
}

/// `‖Mv - λv‖∞`.
pub fn eigenpair_residual(md: &MarkovData, lambda: f64, v: &[f64]) -> f64 {
    md.apply(v)
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0, f64::max)
}
