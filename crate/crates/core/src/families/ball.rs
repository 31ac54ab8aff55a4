//! Finite balls in the graph `Γ(a, b)` for integer parameters.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use serde::Serialize;

use super::GabFamily;
use crate::error::{Error, Result};
use crate::linalg::{real_psd_certificate, PsdCertificate};
use crate::tolerance;

pub const DEFAULT_VERTEX_BUDGET: usize = 5000;

/// Ball around vertex `0`; every vertex lies in `a` cliques of size `b`.
#[derive(Clone, Debug)]
pub struct GabBall {
    a: usize,
    b: usize,
    radius: usize,
    level: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    distances: Vec<Vec<usize>>,
}

impl GabBall {
    /// Vertex count without building: `1 + a(b−1) Σ_{k<r} ((a−1)(b−1))^k`.
    pub fn size(a: usize, b: usize, radius: usize) -> usize {
        let mut total = 1usize;
        let mut layer = 0usize;
        for d in 1..=radius {
            layer = if d == 1 {
                a * (b - 1)
            } else {
                layer.saturating_mul((a - 1) * (b - 1))
            };
            total = total.saturating_add(layer);
        }
        total
    }

    pub fn new(family: &GabFamily, radius: usize, budget: usize) -> Result<Self> {
        let (a, b) = family.integer_params().ok_or_else(|| {
            Error::ParameterOutOfRange(format!(
                "graph balls need integer a, b, got {}, {}",
                family.a(),
                family.b()
            ))
        })?;
        if radius == 0 {
            return Err(Error::ParameterOutOfRange("radius must be at least 1".into()));
        }
        let vertices = Self::size(a, b, radius);
        if vertices > budget {
            return Err(Error::BallTooLarge { vertices, budget });
        }
        let mut level = vec![0];
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier = vec![0];
        for d in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                let new_cliques = if v == 0 { a } else { a - 1 };
                for _ in 0..new_cliques {
                    let mut clique = vec![v];
                    for _ in 1..b {
                        let u = level.len();
                        level.push(d);
                        adjacency.push(Vec::new());
                        clique.push(u);
                        next.push(u);
                    }
                    for (i, &x) in clique.iter().enumerate() {
                        for &y in &clique[i + 1..] {
                            adjacency[x].push(y);
                            adjacency[y].push(x);
                        }
                    }
                }
            }
            frontier = next;
        }
        let n = level.len();
        let distances = (0..n).map(|s| bfs(&adjacency, s)).collect();
        Ok(Self {
            a,
            b,
            radius,
            level,
            adjacency,
            distances,
        })
    }

    pub fn params(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn num_vertices(&self) -> usize {
        self.level.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Distance from the centre.
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn distance(&self, v: usize, w: usize) -> usize {
        self.distances[v][w]
    }

    /// `K(v, w) = P_{d(v, w)}(x)`.
    pub fn kernel(&self, family: &GabFamily, x: f64) -> DMatrix<f64> {
        let p = family.eval_all(2 * self.radius, x);
        let n = self.num_vertices();
        DMatrix::from_fn(n, n, |v, w| p[self.distances[v][w]])
    }

    /// `#{w : d(0, w) = m, d(w, u) = n}`.
    pub fn intersection_count(&self, u: usize, m: usize, n: usize) -> usize {
        (0..self.num_vertices())
            .filter(|&w| self.distances[0][w] == m && self.distances[w][u] == n)
            .count()
    }
}

fn bfs(adjacency: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adjacency.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &u in &adjacency[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelPsd {
    pub x: f64,
    pub radius: usize,
    pub vertices: usize,
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// PSD test of `(v, w) ↦ P_{d(v,w)}(x)` on the ball of the given radius.
pub fn gab_kernel_psd(family: &GabFamily, x: f64, radius: usize, budget: usize) -> Result<KernelPsd> {
    let ball = GabBall::new(family, radius, budget)?;
    Ok(kernel_psd_on(&ball, family, x))
}

pub fn kernel_psd_on(ball: &GabBall, family: &GabFamily, x: f64) -> KernelPsd {
    let cert: PsdCertificate = real_psd_certificate(&ball.kernel(family, x), tolerance::PSD).expect("kernel is square");
    KernelPsd {
        x,
        radius: ball.radius(),
        vertices: ball.num_vertices(),
        psd: cert.psd,
        min_eigenvalue: cert.min_eigenvalue,
    }
}
