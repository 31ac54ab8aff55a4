//! Generalized association schemes: stochastic matrices `S̃_i` supported
//! exactly on the relations `R_i`, closed under multiplication and
//! reversible with respect to a positive vertex weight.
//!
//! Schemes on infinite point sets are represented by finite windows. A
//! [`Window`] records, per point, how far the window extends around it and,
//! per class, how far a single step of that class reaches. Axioms are checked
//! only where the window holds the whole neighbourhood involved.

mod kernels;
mod window;

pub use kernels::{
    adjoint_residual, dual_product_generalized, kernel_f, operator_norms, pi_positive_definite,
    positive_connection_check, s_tilde_f, schur_product_check, ConnectionCertificate, GeneralizedDual, SchurCheck,
};
pub use window::{window_characters, window_dual_product, WindowCharacters};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergroup::{verify_hypergroup_with_tol, FiniteHypergroup, Origin};
use crate::scheme::Scheme;
use crate::tensor::Tensor3;
use crate::tolerance;

/// Point set, class labels and relation partition, without the requirement
/// that intersection counts be constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    points: Vec<String>,
    classes: Vec<String>,
    relation: Vec<usize>,
    identity: usize,
    involution: Vec<usize>,
}

impl Partition {
    pub fn new(points: Vec<String>, classes: Vec<String>, relation: Vec<usize>) -> Result<Self> {
        let n = points.len();
        let d = classes.len();
        if n == 0 || d == 0 || relation.len() != n * n || relation.iter().any(|&c| c >= d) {
            return Err(Error::InvalidInput("partition data has inconsistent sizes".into()));
        }
        let identity = relation[0];
        for x in 0..n {
            for y in 0..n {
                if (relation[x * n + y] == identity) != (x == y) {
                    return Err(Error::NoIdentityClass);
                }
            }
        }
        let mut involution = vec![usize::MAX; d];
        for x in 0..n {
            for y in 0..n {
                let (i, t) = (relation[x * n + y], relation[y * n + x]);
                if involution[i] != usize::MAX && involution[i] != t {
                    return Err(Error::NoInvolution {
                        class: classes[i].clone(),
                    });
                }
                involution[i] = t;
            }
        }
        if let Some(c) = involution.iter().position(|&t| t == usize::MAX) {
            return Err(Error::EmptyClass(classes[c].clone()));
        }
        Ok(Self {
            points,
            classes,
            relation,
            identity,
            involution,
        })
    }

    pub fn from_scheme(s: &Scheme) -> Self {
        Self {
            points: s.points().to_vec(),
            classes: s.classes().to_vec(),
            relation: s.relation_matrix().to_vec(),
            identity: s.identity_class(),
            involution: s.involution().to_vec(),
        }
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn relation_of(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.points.len() + y]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }
}

/// Finite window into an infinite scheme. Row `x` is complete for the pair
/// `(i, j)` when `depth[x] ≥ reach[i] + reach[j]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Window {
    pub depth: Vec<usize>,
    pub reach: Vec<usize>,
}

/// Intersection data indexed by `(i, j)`, some of which a window may leave
/// undetermined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialTensor {
    d: usize,
    rows: Vec<Option<Vec<f64>>>,
}

impl PartialTensor {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize, j: usize) -> Option<&[f64]> {
        self.rows[i * self.d + j].as_deref()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<f64> {
        self.row(i, j).map(|r| r[k])
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(Option::is_some)
    }

    pub fn determined_fraction(&self) -> f64 {
        self.rows.iter().filter(|r| r.is_some()).count() as f64 / self.rows.len() as f64
    }

    pub fn to_tensor(&self) -> Option<Tensor3<f64>> {
        self.is_complete()
            .then(|| Tensor3::from_fn(self.d, |i, j, k| self.get(i, j, k).expect("complete")))
    }
}

/// Largest residuals seen while checking the axioms.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GeneralizedAudit {
    pub stochastic: f64,
    pub detailed_balance: f64,
    pub invariance: f64,
    pub closure: f64,
    pub deformed_row_sum: f64,
    pub window_size: Option<usize>,
    /// Share of `(row, class)` pairs whose row lies deep enough to be checked.
    pub interior_fraction: f64,
    /// Share of `(i, j)` pairs whose deformed coefficients are determined.
    pub determined_fraction: f64,
}

#[derive(Clone, Debug)]
pub struct GeneralizedScheme {
    partition: Partition,
    base: PartialTensor,
    base_valencies: Vec<Option<f64>>,
    stoch: Vec<DMatrix<f64>>,
    vertex_weight: Vec<f64>,
    base_point: usize,
    window: Option<Window>,
    deformed: PartialTensor,
    haar: Vec<Option<f64>>,
    audit: GeneralizedAudit,
}

impl GeneralizedScheme {
    /// Checks all axioms on a finite scheme.
    pub fn build(base: &Scheme, stoch: Vec<DMatrix<f64>>, vertex_weight: Vec<f64>, base_point: usize) -> Result<Self> {
        Self::assemble(Partition::from_scheme(base), stoch, vertex_weight, base_point, None)
    }

    /// Checks the axioms on the rows a window determines.
    pub fn build_windowed(
        partition: Partition,
        stoch: Vec<DMatrix<f64>>,
        vertex_weight: Vec<f64>,
        base_point: usize,
        window: Window,
    ) -> Result<Self> {
        if window.depth.len() != partition.num_points() || window.reach.len() != partition.num_classes() {
            return Err(Error::InvalidInput("window does not match the partition".into()));
        }
        Self::assemble(partition, stoch, vertex_weight, base_point, Some(window))
    }

    /// `S̃_i = A_i / ω_i` with constant vertex weight.
    pub fn classical(s: &Scheme) -> Self {
        let n = s.num_points();
        let w = s.valencies();
        let stoch = (0..s.num_classes())
            .map(|i| {
                DMatrix::from_fn(n, n, |x, y| {
                    if s.relation_of(x, y) == i {
                        1.0 / w[i] as f64
                    } else {
                        0.0
                    }
                })
            })
            .collect();
        Self::build(s, stoch, vec![1.0; n], 0).expect("classical embedding satisfies the axioms")
    }

    fn assemble(
        partition: Partition,
        stoch: Vec<DMatrix<f64>>,
        vertex_weight: Vec<f64>,
        base_point: usize,
        window: Option<Window>,
    ) -> Result<Self> {
        let n = partition.num_points();
        let d = partition.num_classes();
        if stoch.len() != d {
            return Err(Error::InvalidInput(format!(
                "{} stochastic matrices for {d} classes",
                stoch.len()
            )));
        }
        for m in &stoch {
            if m.nrows() != m.ncols() {
                return Err(Error::NonSquare {
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
            if m.nrows() != n {
                return Err(Error::InvalidInput(format!(
                    "matrix is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        if vertex_weight.len() != n || base_point >= n {
            return Err(Error::InvalidInput("vertex weight does not match the points".into()));
        }
        if let Some(x) = vertex_weight.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "vertex weight at `{}` is not positive",
                partition.points[x]
            )));
        }
        let norm = vertex_weight[base_point];
        let vertex_weight: Vec<f64> = vertex_weight.iter().map(|v| v / norm).collect();

        let mut g = Self {
            base: PartialTensor {
                d,
                rows: vec![None; d * d],
            },
            base_valencies: vec![None; d],
            deformed: PartialTensor {
                d,
                rows: vec![None; d * d],
            },
            haar: vec![None; d],
            audit: GeneralizedAudit {
                window_size: window.as_ref().map(|_| n),
                ..Default::default()
            },
            partition,
            stoch,
            vertex_weight,
            base_point,
            window,
        };
        g.check_support()?;
        g.check_stochastic()?;
        g.check_detailed_balance()?;
        g.count_base();
        g.extract_deformed()?;
        g.compute_haar();
        Ok(g)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn stoch(&self) -> &[DMatrix<f64>] {
        &self.stoch
    }

    pub fn vertex_weight(&self) -> &[f64] {
        &self.vertex_weight
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn window(&self) -> Option<&Window> {
        self.window.as_ref()
    }

    /// Deformed intersection numbers `p̃[i][j][k]`.
    pub fn deformed(&self) -> &PartialTensor {
        &self.deformed
    }

    /// Intersection counts of the underlying partition.
    pub fn base_numbers(&self) -> &PartialTensor {
        &self.base
    }

    /// Haar weights `ω_i = 1 / p̃[i][ī][e]` where the window determines them.
    pub fn haar(&self) -> &[Option<f64>] {
        &self.haar
    }

    pub fn audit(&self) -> &GeneralizedAudit {
        &self.audit
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.partition.num_classes();
        (0..d).all(|i| {
            (0..d).all(|j| match (self.deformed.row(i, j), self.deformed.row(j, i)) {
                (Some(a), Some(b)) => a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tolerance::CLOSURE),
                _ => true,
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.partition.involution.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// Fills Haar weights the window cannot determine from known closed
    /// forms, after checking agreement where both are available.
    pub fn with_haar(mut self, haar: Vec<f64>) -> Result<Self> {
        if haar.len() != self.haar.len() {
            return Err(Error::InvalidInput("Haar weights do not match the classes".into()));
        }
        for (i, (known, given)) in self.haar.iter().zip(&haar).enumerate() {
            if let Some(k) = known {
                if (k - given).abs() > tolerance::DETAILED_BALANCE * k.abs().max(1.0) {
                    return Err(Error::AxiomViolation {
                        axiom: "haar".into(),
                        witness: format!("class {}: computed {k} but given {given}", self.partition.classes[i]),
                    });
                }
            }
        }
        self.haar = haar.into_iter().map(Some).collect();
        Ok(self)
    }

    fn depth(&self, x: usize) -> usize {
        self.window.as_ref().map_or(usize::MAX, |w| w.depth[x])
    }

    fn reach(&self, i: usize) -> usize {
        self.window.as_ref().map_or(0, |w| w.reach[i])
    }

    /// Row `x` holds every path that starts with a step in `i` followed by
    /// one in `j`.
    fn row_complete(&self, x: usize, i: usize, j: usize) -> bool {
        self.depth(x) >= self.reach(i).saturating_add(self.reach(j))
    }

    fn max_depth(&self) -> usize {
        (0..self.partition.num_points())
            .map(|x| self.depth(x))
            .max()
            .unwrap_or(0)
    }

    /// Whether `(i, j)` pairs are determined at all.
    pub(crate) fn pair_determined(&self, i: usize, j: usize) -> bool {
        self.max_depth() >= self.reach(i).saturating_add(self.reach(j))
    }

    fn check_support(&self) -> Result<()> {
        let n = self.partition.num_points();
        let e = self.partition.identity;
        for (i, m) in self.stoch.iter().enumerate() {
            for x in 0..n {
                for y in 0..n {
                    let inside = self.partition.relation_of(x, y) == i;
                    let v = m[(x, y)];
                    if inside != (v > 0.0) || v < 0.0 || !v.is_finite() {
                        return Err(Error::SupportMismatch {
                            class: self.partition.classes[i].clone(),
                            x: self.partition.points[x].clone(),
                            y: self.partition.points[y].clone(),
                        });
                    }
                }
            }
        }
        for x in 0..n {
            if (self.stoch[e][(x, x)] - 1.0).abs() > tolerance::STOCHASTIC {
                return Err(Error::AxiomViolation {
                    axiom: "identity matrix".into(),
                    witness: format!("S̃_e({0},{0}) = {1}", self.partition.points[x], self.stoch[e][(x, x)]),
                });
            }
        }
        Ok(())
    }

    fn check_stochastic(&mut self) -> Result<()> {
        let n = self.partition.num_points();
        let d = self.partition.num_classes();
        let mut worst = 0.0f64;
        let mut interior = 0usize;
        for i in 0..d {
            for x in 0..n {
                if self.depth(x) < self.reach(i) {
                    continue;
                }
                interior += 1;
                let sum: f64 = self.stoch[i].row(x).iter().sum();
                worst = worst.max((sum - 1.0).abs());
                if (sum - 1.0).abs() > tolerance::STOCHASTIC {
                    return Err(Error::NotStochastic {
                        class: self.partition.classes[i].clone(),
                        row: self.partition.points[x].clone(),
                        sum,
                    });
                }
            }
        }
        self.audit.stochastic = worst;
        self.audit.interior_fraction = interior as f64 / (n * d) as f64;
        Ok(())
    }

    fn check_detailed_balance(&mut self) -> Result<()> {
        let n = self.partition.num_points();
        let d = self.partition.num_classes();
        let pi = &self.vertex_weight;
        let inv = &self.partition.involution;
        let mut worst = 0.0f64;
        for i in 0..d {
            for x in 0..n {
                if self.depth(x) < self.reach(i) {
                    continue;
                }
                for y in 0..n {
                    let a = pi[y] * self.stoch[inv[i]][(y, x)];
                    let b = pi[x] * self.stoch[i][(x, y)];
                    let scale = a.abs().max(b.abs());
                    if scale == 0.0 {
                        continue;
                    }
                    let residual = (a - b).abs() / scale;
                    worst = worst.max(residual);
                    if residual > tolerance::DETAILED_BALANCE {
                        return Err(Error::DetailedBalanceViolation {
                            class: self.partition.classes[i].clone(),
                            x: self.partition.points[x].clone(),
                            y: self.partition.points[y].clone(),
                            residual,
                        });
                    }
                }
            }
        }
        self.audit.detailed_balance = worst;

        let mut worst = 0.0f64;
        for i in 0..d {
            for y in 0..n {
                if self.depth(y) < self.reach(i) {
                    continue;
                }
                let mass: f64 = (0..n).map(|x| pi[x] * self.stoch[i][(x, y)]).sum();
                let residual = (mass - pi[y]).abs() / pi[y];
                worst = worst.max(residual);
                if residual > tolerance::DETAILED_BALANCE {
                    return Err(Error::AxiomViolation {
                        axiom: "invariance".into(),
                        witness: format!(
                            "class {} at {}: relative residual {residual:e}",
                            self.partition.classes[i], self.partition.points[y]
                        ),
                    });
                }
            }
        }
        self.audit.invariance = worst;
        Ok(())
    }

    /// Intersection counts and valencies of the partition, read at complete
    /// rows.
    fn count_base(&mut self) {
        let n = self.partition.num_points();
        let d = self.partition.num_classes();
        let rel = |x: usize, y: usize| self.partition.relation_of(x, y);
        for i in 0..d {
            if let Some(x) = (0..n).find(|&x| self.depth(x) >= self.reach(i)) {
                self.base_valencies[i] = Some((0..n).filter(|&z| rel(x, z) == i).count() as f64);
            }
        }
        for i in 0..d {
            for j in 0..d {
                if !self.pair_determined(i, j) {
                    continue;
                }
                let mut row = vec![0.0; d];
                let mut seen = vec![false; d];
                for x in (0..n).filter(|&x| self.row_complete(x, i, j)) {
                    for y in 0..n {
                        let k = rel(x, y);
                        if !seen[k] {
                            seen[k] = true;
                            row[k] = (0..n).filter(|&z| rel(x, z) == i && rel(z, y) == j).count() as f64;
                        }
                    }
                }
                self.base.rows[i * d + j] = Some(row);
            }
        }
    }

    fn extract_deformed(&mut self) -> Result<()> {
        let n = self.partition.num_points();
        let d = self.partition.num_classes();
        let mut closure = 0.0f64;
        let mut row_sum = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                if !self.pair_determined(i, j) {
                    continue;
                }
                let rows: Vec<usize> = (0..n).filter(|&x| self.row_complete(x, i, j)).collect();
                let product = &self.stoch[i] * &self.stoch[j];
                let mut witness: Vec<Option<(usize, usize)>> = vec![None; d];
                for &x in &rows {
                    for y in 0..n {
                        let k = self.partition.relation_of(x, y);
                        let better = witness[k].is_none_or(|(wx, wy)| self.stoch[k][(x, y)] > self.stoch[k][(wx, wy)]);
                        if better {
                            witness[k] = Some((x, y));
                        }
                    }
                }
                let coeffs: Vec<f64> = (0..d)
                    .map(|k| witness[k].map_or(0.0, |(x, y)| product[(x, y)] / self.stoch[k][(x, y)]))
                    .collect();
                let mut residual = 0.0f64;
                for &x in &rows {
                    for y in 0..n {
                        let k = self.partition.relation_of(x, y);
                        residual = residual.max((product[(x, y)] - coeffs[k] * self.stoch[k][(x, y)]).abs());
                    }
                }
                closure = closure.max(residual);
                if residual > tolerance::CLOSURE {
                    return Err(Error::ClosureResidual {
                        i: self.partition.classes[i].clone(),
                        j: self.partition.classes[j].clone(),
                        residual,
                    });
                }
                let sum: f64 = coeffs.iter().sum();
                row_sum = row_sum.max((sum - 1.0).abs());
                if (sum - 1.0).abs() > tolerance::DEFORMED_ROW_SUM {
                    return Err(Error::AxiomViolation {
                        axiom: "deformed row sum".into(),
                        witness: format!(
                            "Σ_k p̃[{}][{}][k] = {sum}",
                            self.partition.classes[i], self.partition.classes[j]
                        ),
                    });
                }
                let base = self.base.row(i, j).expect("determined with the deformed row");
                if let Some(k) = (0..d).find(|&k| (coeffs[k] > 0.0) != (base[k] > 0.0)) {
                    return Err(Error::AxiomViolation {
                        axiom: "positivity pattern".into(),
                        witness: format!(
                            "p̃[{a}][{b}][{c}] = {} but p[{a}][{b}][{c}] = {}",
                            coeffs[k],
                            base[k],
                            a = self.partition.classes[i],
                            b = self.partition.classes[j],
                            c = self.partition.classes[k]
                        ),
                    });
                }
                self.deformed.rows[i * d + j] = Some(coeffs);
            }
        }
        self.audit.closure = closure;
        self.audit.deformed_row_sum = row_sum;
        self.audit.determined_fraction = self.deformed.determined_fraction();
        Ok(())
    }

    /// `p̃[i][ī][e]` only needs the diagonal of `S̃_i S̃_ī`, which a row of
    /// depth `reach_i` already holds.
    fn compute_haar(&mut self) {
        let n = self.partition.num_points();
        let inv = &self.partition.involution;
        for i in 0..self.partition.num_classes() {
            if let Some(x) = (0..n).find(|&x| self.depth(x) >= self.reach(i)) {
                let back: f64 = (0..n).map(|y| self.stoch[i][(x, y)] * self.stoch[inv[i]][(y, x)]).sum();
                self.haar[i] = Some(1.0 / back);
            }
        }
    }

    /// Valencies `|{z : (x, z) ∈ R_i}|` of the underlying partition.
    pub fn base_valencies(&self) -> &[Option<f64>] {
        &self.base_valencies
    }
}

/// `c[i][j][k] = p̃[i][j][k]` with `ω_i = 1/p̃[i][ī][e]`; requires every
/// coefficient to be determined.
pub fn hypergroup_from_generalized(g: &GeneralizedScheme) -> Result<FiniteHypergroup<f64>> {
    let conv = g.deformed.to_tensor().ok_or_else(|| {
        let d = g.partition.num_classes();
        let missing = (0..d * d).find(|&p| g.deformed.rows[p].is_none()).expect("incomplete");
        Error::IncompleteWindow(format!(
            "p̃[{}][{}][·]",
            g.partition.classes[missing / d],
            g.partition.classes[missing % d]
        ))
    })?;
    let h = FiniteHypergroup::from_parts(
        g.partition.classes.clone(),
        conv,
        g.partition.identity,
        g.partition.involution.clone(),
        Origin::Generalized,
    )?;
    let report = verify_hypergroup_with_tol(&h, tolerance::CLOSURE);
    if let Some(failure) = report.failures().next() {
        return Err(Error::AxiomViolation {
            axiom: failure.name.clone(),
            witness: failure.witness.clone().unwrap_or_default(),
        });
    }
    Ok(h)
}

#[cfg(test)]
mod tests;
