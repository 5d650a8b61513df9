//! Discrete G-spaces: weighted graphs carrying a weight-preserving group action.
//!
//! Functions on vertices carry the representation `(g·f)(x) = f(g⁻¹·x)`. The
//! spectrum of a quotient by a subgroup `H` is the spectrum of the Laplacian on
//! the `H`-invariant functions; for free actions this coincides with the
//! Laplacian of the orbit graph ([`quotient_graph`]).

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::chartab::{decompose, g_hat_k, permutation_character, CharacterTable, MULT_TOL};
use crate::error::{to_count, Error, Result};
use crate::permgrp::{are_conjugate_subgroups, coset_space, Permutation, PermutationGroup, Subgroup};

/// Default relative eigenvalue clustering tolerance.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
/// Tolerance for matching cluster values across two spectra.
pub const MATCH_TOL: f64 = 1e-8;

const EIGEN_EPS: f64 = 1e-14;
const EIGEN_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    weights: DMatrix<f64>,
}

impl WeightedGraph {
    /// Validates a symmetric nonnegative weight matrix with zero diagonal.
    pub fn new(weights: DMatrix<f64>) -> Result<Self> {
        if !weights.is_square() {
            return Err(Error::precondition("weight matrix must be square"));
        }
        let n = weights.nrows();
        for u in 0..n {
            if weights[(u, u)] != 0.0 {
                return Err(Error::precondition(format!("self-loop at vertex {u}")));
            }
            for v in 0..n {
                let w = weights[(u, v)];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::precondition(format!("invalid weight {w} on ({u}, {v})")));
                }
                if w != weights[(v, u)] {
                    return Err(Error::precondition(format!("weights on ({u}, {v}) are not symmetric")));
                }
            }
        }
        Ok(WeightedGraph { weights })
    }

    /// Builds a graph from undirected edges; each edge may be listed once.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut weights = DMatrix::zeros(n, n);
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::precondition(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::precondition(format!("self-loop at vertex {u}")));
            }
            if weights[(u, v)] != 0.0 {
                return Err(Error::precondition(format!("edge ({u}, {v}) listed twice")));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::precondition(format!("edge ({u}, {v}) has non-positive weight {w}")));
            }
            weights[(u, v)] = w;
            weights[(v, u)] = w;
        }
        Ok(WeightedGraph { weights })
    }

    /// Unit-weight cycle on `n ≥ 3` vertices (`n = 2` gives a single edge).
    pub fn cycle(n: usize) -> Self {
        let mut weights = DMatrix::zeros(n, n);
        for u in 0..n {
            let v = (u + 1) % n;
            if u != v {
                weights[(u, v)] = 1.0;
                weights[(v, u)] = 1.0;
            }
        }
        WeightedGraph { weights }
    }

    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let (a, b) = (self.n(), other.n());
        let mut weights = DMatrix::zeros(a + b, a + b);
        weights.view_mut((0, 0), (a, a)).copy_from(&self.weights);
        weights.view_mut((a, a), (b, b)).copy_from(&other.weights);
        WeightedGraph { weights }
    }

    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[(u, v)]
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    /// Edges with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.weights[(u, v)] != 0.0 {
                    out.push((u, v, self.weights[(u, v)]));
                }
            }
        }
        out
    }

    fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| self.weights[(u, v)] != 0.0)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn hop_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices are reached");
            for v in self.neighbours(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.hop_distances(0).iter().all(Option::is_some)
    }
}

/// `L = D − W`
pub fn laplacian(graph: &WeightedGraph) -> DMatrix<f64> {
    let n = graph.n();
    let mut lap = -graph.weights.clone();
    for u in 0..n {
        lap[(u, u)] = graph.weights.row(u).sum();
    }
    lap
}

/// A group acting on the vertices of a graph, one permutation per element.
#[derive(Debug, Clone)]
pub struct GroupAction {
    group: Arc<PermutationGroup>,
    vertex_perms: Vec<Permutation>,
}

impl GroupAction {
    /// Extends generator images to the whole group, checking that the
    /// assignment is a homomorphism.
    pub fn from_generator_images(group: Arc<PermutationGroup>, images: &[Permutation]) -> Result<Self> {
        let gens = group.generator_indices();
        if images.len() != gens.len() {
            return Err(Error::precondition(format!(
                "action lists {} permutations but the group has {} generators",
                images.len(),
                gens.len()
            )));
        }
        let n = match images.first() {
            Some(p) => p.degree(),
            None => {
                return Err(Error::precondition(
                    "cannot infer the vertex count of an action of a group without generators; use GroupAction::trivial",
                ))
            }
        };
        if let Some(p) = images.iter().find(|p| p.degree() != n) {
            return Err(Error::precondition(format!("action permutation {p} has the wrong degree")));
        }

        let mut perms: Vec<Option<Permutation>> = vec![None; group.order()];
        perms[group.identity()] = Some(Permutation::identity(n));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let px = perms[x].clone().expect("queued elements are assigned");
            for (&s, ps) in gens.iter().zip(images) {
                let y = group.mul(x, s);
                let py = px.compose(ps);
                match &perms[y] {
                    Some(existing) if *existing != py => {
                        return Err(Error::precondition(format!(
                            "generator images do not define a homomorphism (conflict at element {})",
                            group.element(y)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        perms[y] = Some(py);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(GroupAction {
            group,
            vertex_perms: perms.into_iter().map(|p| p.expect("group is generated")).collect(),
        })
    }

    pub fn trivial(group: Arc<PermutationGroup>, n: usize) -> Self {
        let vertex_perms = vec![Permutation::identity(n); group.order()];
        GroupAction { group, vertex_perms }
    }

    /// Left translation of the group on itself, vertices = element indices.
    pub fn left_regular(group: Arc<PermutationGroup>) -> Self {
        let n = group.order();
        let vertex_perms = (0..n)
            .map(|g| {
                Permutation::from_images((0..n).map(|x| group.mul(g, x) as u32).collect())
                    .expect("left translation is a bijection")
            })
            .collect();
        GroupAction { group, vertex_perms }
    }

    /// Disjoint union of the coset actions `G/H_1 ⊔ … ⊔ G/H_r`, blocks in order.
    pub fn on_cosets(group: Arc<PermutationGroup>, subgroups: &[Subgroup]) -> Self {
        let spaces: Vec<_> = subgroups.iter().map(|h| coset_space(&group, h)).collect();
        let vertex_perms = (0..group.order())
            .map(|g| {
                let mut images = Vec::new();
                let mut offset = 0;
                for cs in &spaces {
                    images.extend((0..cs.num_cosets()).map(|c| (offset + cs.act(&group, g, c)) as u32));
                    offset += cs.num_cosets();
                }
                Permutation::from_images(images).expect("coset actions are permutations")
            })
            .collect();
        GroupAction { group, vertex_perms }
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_perms[0].degree()
    }

    pub fn vertex_perm(&self, element: usize) -> &Permutation {
        &self.vertex_perms[element]
    }

    /// Orbits of `h` on the vertices, each sorted, ordered by smallest vertex.
    pub fn orbits(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut orbit: Vec<usize> = h.elements().iter().map(|&g| self.vertex_perms[g].apply(v)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Elements of `h` fixing `vertex`.
    pub fn stabilizer(&self, h: &Subgroup, vertex: usize) -> Subgroup {
        let elems: Vec<usize> = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| self.vertex_perms[g].apply(vertex) == vertex)
            .collect();
        Subgroup::from_elements(&self.group, &elems).expect("stabilizers are subgroups")
    }

    pub fn is_free(&self, h: &Subgroup) -> bool {
        h.elements()
            .iter()
            .filter(|&&g| g != self.group.identity())
            .all(|&g| {
                let p = &self.vertex_perms[g];
                (0..p.degree()).all(|x| p.apply(x) != x)
            })
    }

    /// Averaging projector `(1/|H|) Σ_h Π(h)` with `(Π(h) f)(x) = f(h⁻¹ x)`.
    pub fn averaging_projector(&self, h: &Subgroup) -> DMatrix<f64> {
        let n = self.num_vertices();
        let mut p = DMatrix::zeros(n, n);
        let w = 1.0 / h.order() as f64;
        for &g in h.elements() {
            let perm = &self.vertex_perms[self.group.inv(g)];
            for x in 0..n {
                p[(x, perm.apply(x))] += w;
            }
        }
        p
    }
}

/// A weighted graph with a weight-preserving group action.
#[derive(Debug, Clone)]
pub struct GSpace {
    graph: WeightedGraph,
    action: GroupAction,
}

impl GSpace {
    pub fn new(graph: WeightedGraph, action: GroupAction) -> Result<Self> {
        if action.num_vertices() != graph.n() {
            return Err(Error::precondition(format!(
                "action is on {} points but the graph has {} vertices",
                action.num_vertices(),
                graph.n()
            )));
        }
        // generators preserving weights is enough for the whole group
        let scale = graph.weights.iter().fold(0.0f64, |m, w| m.max(*w));
        for g in action.group.generator_indices() {
            let p = &action.vertex_perms[g];
            for u in 0..graph.n() {
                for v in 0..graph.n() {
                    let (a, b) = (graph.weight(u, v), graph.weight(p.apply(u), p.apply(v)));
                    if (a - b).abs() > 1e-12 * scale {
                        return Err(Error::precondition(format!(
                            "generator {} does not preserve the weight of ({u}, {v})",
                            action.group.element(g)
                        )));
                    }
                }
            }
        }
        Ok(GSpace { graph, action })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.action.group
    }
}

/// Smallest invariant graph containing the seed edges: every edge in the orbit
/// of a seed receives its weight, summed where seed orbits coincide.
pub fn invariant_graph(action: GroupAction, seeds: &[(usize, usize, f64)]) -> Result<GSpace> {
    let n = action.num_vertices();
    let mut w = DMatrix::zeros(n, n);
    for &(u, v, weight) in seeds {
        if u >= n || v >= n || u == v {
            return Err(Error::precondition(format!("invalid seed edge ({u}, {v})")));
        }
        if !weight.is_finite() || weight <= 0.0 {
            return Err(Error::precondition(format!("non-positive seed weight {weight}")));
        }
        let mut orbit: Vec<(usize, usize)> = action
            .vertex_perms
            .iter()
            .map(|p| {
                let (a, b) = (p.apply(u), p.apply(v));
                (a.min(b), a.max(b))
            })
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for (a, b) in orbit {
            w[(a, b)] += weight;
            w[(b, a)] += weight;
        }
    }
    GSpace::new(WeightedGraph::new(w)?, action)
}

/// One eigenvalue cluster with an orthonormal basis of its eigenspace
/// (columns, in vertex coordinates).
#[derive(Debug, Clone)]
pub struct Cluster {
    pub value: f64,
    pub basis: DMatrix<f64>,
}

impl Cluster {
    pub fn multiplicity(&self) -> usize {
        self.basis.ncols()
    }
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    clusters: Vec<Cluster>,
    cluster_tol: f64,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `(value, multiplicity)` per cluster.
    pub fn cluster_summary(&self) -> Vec<(f64, usize)> {
        self.clusters.iter().map(|c| (c.value, c.multiplicity())).collect()
    }
}

/// Eigendecomposes `op` (symmetric, in an orthonormal frame) and lifts the
/// eigenvectors through `frame` into vertex coordinates.
fn decompose_in_frame(
    op: DMatrix<f64>,
    frame: Option<&DMatrix<f64>>,
    cluster_tol: Option<f64>,
) -> Result<SpectralDecomposition> {
    let m = op.nrows();
    if m == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            clusters: Vec::new(),
            cluster_tol: cluster_tol.unwrap_or(DEFAULT_CLUSTER_TOL),
        });
    }
    let eig = SymmetricEigen::try_new(op, EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    let radius = eigenvalues.iter().fold(0.0f64, |r, x| r.max(x.abs()));
    let tol = cluster_tol.unwrap_or(DEFAULT_CLUSTER_TOL * radius.max(1.0));

    let mut clusters = Vec::new();
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && eigenvalues[end] - eigenvalues[end - 1] < tol {
            end += 1;
        }
        let cols: Vec<usize> = order[start..end].to_vec();
        let local = DMatrix::from_fn(m, cols.len(), |r, c| eig.eigenvectors[(r, cols[c])]);
        let basis = match frame {
            Some(f) => f * local,
            None => local,
        };
        let value = eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
        clusters.push(Cluster { value, basis });
        start = end;
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        clusters,
        cluster_tol: tol,
    })
}

/// Full Laplacian spectrum with eigenvalue clusters.
pub fn spectrum(graph: &WeightedGraph, cluster_tol: Option<f64>) -> Result<SpectralDecomposition> {
    decompose_in_frame(laplacian(graph), None, cluster_tol)
}

/// Orthonormal basis of the `H`-invariant functions: normalised orbit indicators.
fn invariant_frame(action: &GroupAction, h: &Subgroup) -> DMatrix<f64> {
    let orbits = action.orbits(h);
    let mut frame = DMatrix::zeros(action.num_vertices(), orbits.len());
    for (c, orbit) in orbits.iter().enumerate() {
        let w = 1.0 / (orbit.len() as f64).sqrt();
        for &v in orbit {
            frame[(v, c)] = w;
        }
    }
    frame
}

/// Spectrum of the Laplacian restricted to `H`-invariant functions; this is
/// the quotient spectrum of `H \ X`, free or not.
pub fn invariant_spectrum(space: &GSpace, h: &Subgroup, cluster_tol: Option<f64>) -> Result<SpectralDecomposition> {
    let frame = invariant_frame(&space.action, h);
    let restricted = frame.transpose() * laplacian(&space.graph) * &frame;
    let restricted = (&restricted + restricted.transpose()) * 0.5;
    decompose_in_frame(restricted, Some(&frame), cluster_tol)
}

/// Orbit graph of a free action: `w([u],[v]) = Σ_{v' ∈ [v]} w(u, v')`.
pub fn quotient_graph(space: &GSpace, h: &Subgroup) -> Result<WeightedGraph> {
    if !space.action.is_free(h) {
        return Err(Error::NotFree(
            "quotient_graph needs a free action; use invariant_spectrum for general quotients".into(),
        ));
    }
    let orbits = space.action.orbits(h);
    let mut orbit_of = vec![0; space.graph.n()];
    for (i, o) in orbits.iter().enumerate() {
        for &v in o {
            orbit_of[v] = i;
        }
    }
    let k = orbits.len();
    let mut weights = DMatrix::zeros(k, k);
    for (i, o) in orbits.iter().enumerate() {
        let u = o[0];
        for (v, &j) in orbit_of.iter().enumerate() {
            if i != j {
                weights[(i, j)] += space.graph.weight(u, v);
            }
        }
    }
    // symmetric by invariance; average away rounding in the sums
    let weights = (&weights + weights.transpose()) * 0.5;
    WeightedGraph::new(weights)
}

/// Cayley graph with edges `x ~ x·s` and the left-translation action.
pub fn cayley_graph(group: Arc<PermutationGroup>, gen_indices: &[usize], weights: &[f64]) -> Result<GSpace> {
    if gen_indices.len() != weights.len() {
        return Err(Error::precondition("one weight per generator is required"));
    }
    let mut weight_of: BTreeMap<usize, f64> = BTreeMap::new();
    for (&s, &w) in gen_indices.iter().zip(weights) {
        if s >= group.order() {
            return Err(Error::precondition(format!("generator index {s} out of range")));
        }
        if s == group.identity() {
            return Err(Error::precondition("the identity cannot be a Cayley generator"));
        }
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::precondition(format!("non-positive Cayley weight {w}")));
        }
        if let Some(prev) = weight_of.insert(s, w) {
            if prev != w {
                return Err(Error::precondition(format!(
                    "generator {} listed twice with different weights",
                    group.element(s)
                )));
            }
        }
    }
    for (&s, &w) in &weight_of {
        match weight_of.get(&group.inv(s)) {
            None => {
                return Err(Error::precondition(format!(
                    "generating set is not closed under inverses: {} is missing",
                    group.element(group.inv(s))
                )))
            }
            Some(&wi) if wi != w => {
                return Err(Error::precondition(format!(
                    "generator {} and its inverse carry different weights",
                    group.element(s)
                )))
            }
            Some(_) => {}
        }
    }

    let n = group.order();
    let mut w = DMatrix::zeros(n, n);
    for x in 0..n {
        for (&s, &ws) in &weight_of {
            let y = group.mul(x, s);
            w[(x, y)] = ws;
            w[(y, x)] = ws;
        }
    }
    let graph = WeightedGraph::new(w)?;
    let action = GroupAction::left_regular(group);
    GSpace::new(graph, action)
}

/// `[τ_λ : ρ]` for every cluster `λ` and irrep `ρ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotypicTable {
    pub cluster_values: Vec<f64>,
    pub cluster_dims: Vec<usize>,
    pub multiplicities: Vec<Vec<u64>>,
}

impl IsotypicTable {
    /// Irreps occurring anywhere in `L²(X)`.
    pub fn support(&self) -> Vec<usize> {
        let r = self.multiplicities.first().map_or(0, Vec::len);
        (0..r)
            .filter(|&rho| self.multiplicities.iter().any(|row| row[rho] > 0))
            .collect()
    }

    /// Total multiplicity of each irrep over all clusters.
    pub fn totals(&self) -> Vec<u64> {
        let r = self.multiplicities.first().map_or(0, Vec::len);
        (0..r)
            .map(|rho| self.multiplicities.iter().map(|row| row[rho]).sum())
            .collect()
    }
}

/// `trace(B* Π(g) B)` for an orthonormal block `B`.
fn block_trace(basis: &DMatrix<f64>, perm_inv: &Permutation) -> f64 {
    let mut tr = 0.0;
    for x in 0..basis.nrows() {
        let y = perm_inv.apply(x);
        tr += basis.row(x).dot(&basis.row(y));
    }
    tr
}

pub fn isotypic_multiplicities(
    space: &GSpace,
    decomposition: &SpectralDecomposition,
    table: &CharacterTable,
) -> Result<IsotypicTable> {
    isotypic_multiplicities_with_tol(space, decomposition, table, MULT_TOL)
}

pub fn isotypic_multiplicities_with_tol(
    space: &GSpace,
    decomposition: &SpectralDecomposition,
    table: &CharacterTable,
    mult_tol: f64,
) -> Result<IsotypicTable> {
    let group = space.group();
    if table.group_order() != group.order() {
        return Err(Error::precondition("character table belongs to a different group"));
    }
    let classes = group.classes();
    let mut multiplicities = Vec::with_capacity(decomposition.clusters.len());
    for (ci, cluster) in decomposition.clusters.iter().enumerate() {
        let chi: Vec<f64> = classes
            .representatives()
            .iter()
            .map(|&g| block_trace(&cluster.basis, space.action.vertex_perm(group.inv(g))))
            .collect();
        let mut row = Vec::with_capacity(table.num_irreps());
        for rho in 0..table.num_irreps() {
            let sum: f64 = chi
                .iter()
                .zip(table.row(rho).values())
                .zip(classes.class_sizes())
                .map(|((c, z), &s)| c * z.re * s as f64)
                .sum();
            let m = sum / group.order() as f64;
            row.push(to_count(m, mult_tol, || {
                format!(
                    "multiplicity of irrep {rho} in cluster {ci} (λ = {}); the clustering tolerance may be too loose or too tight",
                    cluster.value
                )
            })?);
        }
        let dim: u64 = row.iter().zip(table.degrees()).map(|(m, d)| m * d).sum();
        if dim as usize != cluster.multiplicity() {
            return Err(Error::Numerical(format!(
                "isotypic dimensions {dim} disagree with cluster {ci} of dimension {}",
                cluster.multiplicity()
            )));
        }
        multiplicities.push(row);
    }
    Ok(IsotypicTable {
        cluster_values: decomposition.clusters.iter().map(|c| c.value).collect(),
        cluster_dims: decomposition.clusters.iter().map(Cluster::multiplicity).collect(),
        multiplicities,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceReport {
    pub equivariantly_isospectral: bool,
    pub spectra_agree: bool,
    pub diagnostics: Vec<String>,
}

fn values_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Compares the (cluster value, irrep) multiplicity tables of two G-spaces.
pub fn equivariantly_isospectral(
    s1: &GSpace,
    s2: &GSpace,
    table: &CharacterTable,
    cluster_tol: Option<f64>,
) -> Result<EquivarianceReport> {
    if s1.group().elements() != s2.group().elements() {
        return Err(Error::precondition("both spaces must carry actions of the same group"));
    }
    let d1 = spectrum(&s1.graph, cluster_tol)?;
    let d2 = spectrum(&s2.graph, cluster_tol)?;
    let t1 = isotypic_multiplicities(s1, &d1, table)?;
    let t2 = isotypic_multiplicities(s2, &d2, table)?;

    let mut diagnostics = Vec::new();
    let spectra_agree = d1.len() == d2.len()
        && d1
            .eigenvalues
            .iter()
            .zip(&d2.eigenvalues)
            .all(|(a, b)| values_match(*a, *b));
    if t1.cluster_values.len() != t2.cluster_values.len() {
        diagnostics.push(format!(
            "cluster counts differ: {} vs {}",
            t1.cluster_values.len(),
            t2.cluster_values.len()
        ));
    } else {
        for (i, (a, b)) in t1.cluster_values.iter().zip(&t2.cluster_values).enumerate() {
            if !values_match(*a, *b) {
                diagnostics.push(format!("cluster {i}: eigenvalue {a} vs {b}"));
            } else if t1.multiplicities[i] != t2.multiplicities[i] {
                diagnostics.push(format!(
                    "cluster {i} (λ = {a}): isotypic multiplicities {:?} vs {:?}",
                    t1.multiplicities[i], t2.multiplicities[i]
                ));
            }
        }
    }
    Ok(EquivarianceReport {
        equivariantly_isospectral: diagnostics.is_empty(),
        spectra_agree,
        diagnostics,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRow {
    pub value: f64,
    pub dim: usize,
    /// `dim` of the `H`-invariants in the eigenspace, from `trace(B* P_H B)`.
    pub lhs: u64,
    /// `Σ_{ρ∈Ĝ_K} [τ_λ : ρ][π_H : ρ]`
    pub rhs: u64,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SunadaIdentityReport {
    pub g_hat_k: Vec<usize>,
    pub perm_multiplicities: Vec<u64>,
    pub rows: Vec<IdentityRow>,
    pub holds: bool,
}

/// Checks `[τ_λ^H : 1_H] = Σ_{ρ∈Ĝ_K} [τ_λ^G : ρ][π_H^G : ρ]` cluster by cluster.
pub fn sunada_identity_check(
    space: &GSpace,
    decomposition: &SpectralDecomposition,
    h: &Subgroup,
    k: &Subgroup,
    table: &CharacterTable,
) -> Result<SunadaIdentityReport> {
    let group = space.group();
    let iso = isotypic_multiplicities(space, decomposition, table)?;
    let support_k = g_hat_k(table, k)?;
    if let Some(rho) = iso.support().into_iter().find(|&rho| !support_k.contains(rho)) {
        return Err(Error::precondition(format!(
            "irrep {rho} occurs in L²(X) but has no K-fixed vectors; choose a smaller K"
        )));
    }
    let perm_mult = decompose(&permutation_character(group, h), table)?;
    let projector = space.action.averaging_projector(h);

    let mut rows = Vec::with_capacity(decomposition.clusters.len());
    for (ci, cluster) in decomposition.clusters.iter().enumerate() {
        let b = &cluster.basis;
        let raw = (b.transpose() * &projector * b).trace();
        let lhs = to_count(raw, MULT_TOL, || format!("H-invariant dimension of cluster {ci}"))?;
        let rhs: u64 = support_k
            .indices()
            .iter()
            .map(|&rho| iso.multiplicities[ci][rho] * perm_mult[rho])
            .sum();
        rows.push(IdentityRow {
            value: cluster.value,
            dim: cluster.multiplicity(),
            lhs,
            rhs,
            equal: lhs == rhs,
        });
    }
    Ok(SunadaIdentityReport {
        g_hat_k: support_k.indices().to_vec(),
        perm_multiplicities: perm_mult,
        holds: rows.iter().all(|r| r.equal),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitInfo {
    pub representative: usize,
    pub size: usize,
    pub stabilizer_order: usize,
    /// Index into [`DonnellyReport::stabilizer_classes`].
    pub stabilizer_class: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerClass {
    pub order: usize,
    /// Orbit whose stabilizer represents the class.
    pub orbit: usize,
    pub g_hat: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DonnellyReport {
    pub orbits: Vec<OrbitInfo>,
    pub stabilizer_classes: Vec<StabilizerClass>,
    pub support: Vec<usize>,
    pub union_of_stabilizer_supports: Vec<usize>,
    pub union_law_holds: bool,
    /// Stabilizer class contained (up to conjugacy) in every stabilizer.
    pub generic_stabilizer: Option<usize>,
    pub donnelly_holds: Option<bool>,
}

/// Compares the irreps occurring in `L²(X)` with the stabilizers of the orbits.
pub fn donnelly_support(
    space: &GSpace,
    decomposition: &SpectralDecomposition,
    table: &CharacterTable,
) -> Result<DonnellyReport> {
    let group = space.group();
    let iso = isotypic_multiplicities(space, decomposition, table)?;
    let support = iso.support();

    let orbits = space.action.orbits(&group.full_subgroup());
    let mut classes: Vec<(Subgroup, StabilizerClass)> = Vec::new();
    let mut infos = Vec::with_capacity(orbits.len());
    for (oi, orbit) in orbits.iter().enumerate() {
        let stab = space.action.stabilizer(&group.full_subgroup(), orbit[0]);
        let existing = classes
            .iter()
            .position(|(s, _)| are_conjugate_subgroups(group, s, &stab));
        let class = match existing {
            Some(c) => c,
            None => {
                let g_hat = g_hat_k(table, &stab)?.indices().to_vec();
                classes.push((
                    stab.clone(),
                    StabilizerClass {
                        order: stab.order(),
                        orbit: oi,
                        g_hat,
                    },
                ));
                classes.len() - 1
            }
        };
        infos.push(OrbitInfo {
            representative: orbit[0],
            size: orbit.len(),
            stabilizer_order: stab.order(),
            stabilizer_class: class,
        });
    }

    let mut union: Vec<usize> = classes.iter().flat_map(|(_, c)| c.g_hat.iter().copied()).collect();
    union.sort_unstable();
    union.dedup();

    let contains_conjugate = |big: &Subgroup, small: &Subgroup| {
        (0..group.order()).any(|x| small.conjugated_by(group, x).is_subgroup_of(big))
    };
    let generic = (0..classes.len())
        .filter(|&c| classes.iter().all(|(s, _)| contains_conjugate(s, &classes[c].0)))
        .min_by_key(|&c| classes[c].0.order());
    let donnelly_holds = generic.map(|c| classes[c].1.g_hat == support);

    Ok(DonnellyReport {
        orbits: infos,
        union_law_holds: union == support,
        union_of_stabilizer_supports: union,
        support,
        stabilizer_classes: classes.into_iter().map(|(_, c)| c).collect(),
        generic_stabilizer: generic,
        donnelly_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCells {
    pub center: usize,
    pub fiber: Vec<usize>,
    /// One cell per fiber point, in fiber order.
    pub cells: Vec<Vec<usize>>,
    /// Vertices equidistant from two or more fiber points.
    pub boundary: Vec<usize>,
}

impl DirichletCells {
    pub fn cell_of(&self, fiber_point: usize) -> Option<&[usize]> {
        self.fiber
            .iter()
            .position(|&x| x == fiber_point)
            .map(|i| self.cells[i].as_slice())
    }
}

/// Voronoi cells of the `H`-orbit of `center` under hop distance.
pub fn fundamental_domain(space: &GSpace, h: &Subgroup, center: usize) -> Result<DirichletCells> {
    let n = space.graph.n();
    if center >= n {
        return Err(Error::precondition(format!("center {center} is not a vertex")));
    }
    if !space.action.is_free(h) {
        return Err(Error::NotFree("Dirichlet cells need a free action".into()));
    }
    if !space.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut fiber: Vec<usize> = h
        .elements()
        .iter()
        .map(|&g| space.action.vertex_perm(g).apply(center))
        .collect();
    fiber.sort_unstable();
    fiber.dedup();

    let dists: Vec<Vec<usize>> = fiber
        .iter()
        .map(|&x| {
            space
                .graph
                .hop_distances(x)
                .into_iter()
                .map(|d| d.expect("graph is connected"))
                .collect()
        })
        .collect();
    let mut cells = vec![Vec::new(); fiber.len()];
    let mut boundary = Vec::new();
    for v in 0..n {
        let best = dists.iter().map(|d| d[v]).min().expect("fiber is nonempty");
        let nearest: Vec<usize> = (0..fiber.len()).filter(|&i| dists[i][v] == best).collect();
        if let [only] = nearest[..] {
            cells[only].push(v);
        } else {
            boundary.push(v);
        }
    }
    Ok(DirichletCells {
        center,
        fiber,
        cells,
        boundary,
    })
}

/// Heat-trace value at `t = 0` is the vertex count; used as an independent
/// check of cover degrees.
const DEGREE_PROBE_T: f64 = 1e-8;

/// Degree of the covering `X → H\X` for a free action, cross-checked against
/// the small-time heat traces of both spectra.
pub fn cover_degree(space: &GSpace, h: &Subgroup) -> Result<usize> {
    if !space.action.is_free(h) {
        return Err(Error::NotFree("cover degree needs a free action".into()));
    }
    let n = space.graph.n();
    let orbits = space.action.orbits(h).len();
    let degree = n / orbits;

    let cover = spectrum(&space.graph, None)?;
    let base = invariant_spectrum(space, h, None)?;
    let trace = |d: &SpectralDecomposition| -> f64 {
        d.eigenvalues.iter().map(|l| (-l * DEGREE_PROBE_T).exp()).sum()
    };
    let (vc, vb) = (trace(&cover), trace(&base));
    let probe = (vc / vb).round() as usize;
    if (vc - n as f64).abs() > 1e-6 * n as f64 || probe != degree || degree != h.order() {
        return Err(Error::Numerical(format!(
            "cover degree {degree} (|H| = {}) disagrees with heat-trace volumes {vc} / {vb}",
            h.order()
        )));
    }
    Ok(degree)
}
