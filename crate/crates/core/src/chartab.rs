//! Irreducible characters via the Burnside class-algebra method.
//!
//! The class sums `C_j` of a finite group span a commutative algebra with
//! structure constants `C_j C_i = Σ_k c_{jik} C_k`. Each irreducible character
//! `χ` gives a common eigenvector `ω_χ(C_i) = |C_i| χ(g_i) / χ(1)` of the
//! matrices `(A_j)_{ik} = c_{jik}`. A generic Hermitian combination of the
//! rescaled class matrices has simple spectrum, so its eigenvectors give
//! exactly the `ω_χ`; each
//! candidate is then re-verified against every `A_j` and the finished table
//! against both orthogonality relations.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{to_count, Error, Result};
use crate::permgrp::{coset_space, ConjugacyClassPartition, PermutationGroup, Subgroup};

/// Integer-validation tolerance for multiplicities.
pub const MULT_TOL: f64 = 1e-6;
/// Orthogonality tolerance, relative to the group order.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

const SNAP_TOL: f64 = 1e-9;
const EIGENVECTOR_TOL: f64 = 1e-7;
const ATTEMPTS: usize = 6;

/// A complex-valued function on conjugacy classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        ClassFunction { values }
    }

    pub fn from_integers(values: &[u64]) -> Self {
        ClassFunction {
            values: values.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect(),
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    classes: ConjugacyClassPartition,
    rows: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

/// Rows of a character table, e.g. `Ĝ_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepSubset {
    indices: Vec<usize>,
}

impl IrrepSubset {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IrrepSubset { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, row: usize) -> bool {
        self.indices.binary_search(&row).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// `(A_j)_{ik} = #{(x, y) ∈ C_j × C_i : x y = z_k}` for each class `j`.
fn class_matrices(group: &PermutationGroup, classes: &ConjugacyClassPartition) -> Vec<DMatrix<f64>> {
    let r = classes.num_classes();
    let mut mats = vec![DMatrix::<f64>::zeros(r, r); r];
    for (k, &z) in classes.representatives().iter().enumerate() {
        for x in 0..group.order() {
            let y = group.mul(group.inv(x), z);
            mats[classes.class_of(x)][(classes.class_of(y), k)] += 1.0;
        }
    }
    mats
}

fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < SNAP_TOL {
        r + 0.0
    } else {
        x
    }
}

fn grid(x: f64) -> i64 {
    (x * 1e9).round() as i64
}

/// Trivial first, then by degree, then by descending real parts, then by
/// descending imaginary parts.
fn row_order(a: &(u64, Vec<Complex64>), b: &(u64, Vec<Complex64>)) -> Ordering {
    a.0.cmp(&b.0)
        .then_with(|| {
            let ka: Vec<i64> = a.1.iter().map(|z| grid(z.re)).collect();
            let kb: Vec<i64> = b.1.iter().map(|z| grid(z.re)).collect();
            kb.cmp(&ka)
        })
        .then_with(|| {
            let ka: Vec<i64> = a.1.iter().map(|z| grid(z.im)).collect();
            let kb: Vec<i64> = b.1.iter().map(|z| grid(z.im)).collect();
            kb.cmp(&ka)
        })
}

/// Deterministic mixing coefficients `1/4 + frac(k √p)` over distinct primes
/// `p`, which admit no rational relations.
fn coefficients(r: usize, offset: usize, attempt: usize) -> Vec<f64> {
    let mut primes = Vec::with_capacity(offset + r);
    let mut candidate = 2u64;
    while primes.len() < offset + r {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes[offset..]
        .iter()
        .map(|&p| 0.25 + ((attempt + 1) as f64 * (p as f64).sqrt()).fract())
        .collect()
}

/// One attempt at extracting the normalised class-algebra eigenvectors.
///
/// In the orthonormal basis `C_i / √|C_i|` multiplication by `C_j` is a real
/// normal matrix `N_j` whose transpose is `N_{j*}` (the inverse class), so
/// `Σ a_j (N_j + N_jᵀ) + i b_j (N_j − N_jᵀ)` is Hermitian and shares its
/// eigenvectors with every `N_j` once its spectrum is simple.
fn eigenvectors(mats: &[DMatrix<f64>], sizes: &[usize], attempt: usize) -> Result<Vec<Vec<Complex64>>> {
    let r = mats.len();
    let alpha = coefficients(r, 0, attempt);
    let beta = coefficients(r, r, attempt);
    let root: Vec<f64> = sizes.iter().map(|&s| (s as f64).sqrt()).collect();

    let mut herm = DMatrix::<Complex64>::zeros(r, r);
    for (j, m) in mats.iter().enumerate() {
        let n = DMatrix::from_fn(r, r, |k, i| m[(i, k)] * root[k] / root[i]);
        let sym = &n + n.transpose();
        let skew = &n - n.transpose();
        herm += sym.map(|x| Complex64::new(alpha[j] * x, 0.0));
        herm += skew.map(|x| Complex64::new(0.0, beta[j] * x));
    }
    let eig = nalgebra::SymmetricEigen::try_new(herm, 1e-14, 10_000).ok_or_else(|| Error::CharacterTable {
        class: 0,
        message: "Hermitian eigensolver did not converge".into(),
    })?;

    let mut out = Vec::with_capacity(r);
    for c in 0..r {
        let u = eig.eigenvectors.column(c);
        // ω_χ(C_i) is proportional to √|C_i| · conj(u_i)
        let v: Vec<Complex64> = (0..r).map(|i| u[i].conj() * root[i]).collect();
        if v[0].norm() < 1e-10 {
            return Err(Error::CharacterTable {
                class: 0,
                message: "eigenvector vanishes on the identity class".into(),
            });
        }
        let w: Vec<Complex64> = v.iter().map(|z| z / v[0]).collect();

        // w must be a common eigenvector of every class matrix
        let wmax = w.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (j, m) in mats.iter().enumerate() {
            let omega = w[j];
            let scale = wmax * (1.0 + m.iter().map(|x| x.abs()).sum::<f64>());
            for i in 0..r {
                let mut lhs = Complex64::new(0.0, 0.0);
                for k in 0..r {
                    lhs += w[k] * m[(i, k)];
                }
                if (lhs - omega * w[i]).norm() > EIGENVECTOR_TOL * scale {
                    return Err(Error::CharacterTable {
                        class: j,
                        message: format!(
                            "candidate vector is not an eigenvector of the class matrix (residual {:e})",
                            (lhs - omega * w[i]).norm()
                        ),
                    });
                }
            }
        }
        out.push(w);
    }

    // coincident eigenvalues of the combination show up as repeated vectors
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            let gap = out[a]
                .iter()
                .zip(&out[b])
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            if gap < 1e-6 {
                let class = (0..r)
                    .max_by(|&i, &j| alpha[i].total_cmp(&alpha[j]))
                    .unwrap_or(0);
                return Err(Error::CharacterTable {
                    class,
                    message: "class-matrix combination failed to separate two characters".into(),
                });
            }
        }
    }
    Ok(out)
}

/// Computes the complete character table of `group`.
pub fn character_table(group: &PermutationGroup) -> Result<CharacterTable> {
    let classes = group.classes();
    let r = classes.num_classes();
    let order = group.order();
    let mats = class_matrices(group, classes);

    let mut last_err = None;
    let mut vectors = None;
    for attempt in 0..ATTEMPTS {
        match eigenvectors(&mats, classes.class_sizes(), attempt) {
            Ok(v) => {
                vectors = Some(v);
                break;
            }
            Err(e) => last_err = Some(e),
        }
    }
    let vectors = match vectors {
        Some(v) => v,
        None => return Err(last_err.expect("at least one attempt")),
    };

    let sizes = classes.class_sizes();
    let mut rows: Vec<(u64, Vec<Complex64>)> = Vec::with_capacity(r);
    for w in vectors {
        let norm: f64 = w
            .iter()
            .zip(sizes)
            .map(|(z, &s)| z.norm_sqr() / s as f64)
            .sum();
        let degree_sq = order as f64 / norm;
        let degree = degree_sq.sqrt();
        let d = degree.round();
        if d < 1.0 || (degree - d).abs() > 1e-6 * d.max(1.0) {
            return Err(Error::CharacterTable {
                class: 0,
                message: format!("degree {degree} is not a positive integer"),
            });
        }
        let values: Vec<Complex64> = w
            .iter()
            .zip(sizes)
            .map(|(z, &s)| {
                let chi = z * d / s as f64;
                Complex64::new(snap(chi.re), snap(chi.im))
            })
            .collect();
        rows.push((d as u64, values));
    }
    rows.sort_by(row_order);

    let table = CharacterTable {
        order,
        classes: classes.clone(),
        degrees: rows.iter().map(|r| r.0).collect(),
        rows: rows.into_iter().map(|r| ClassFunction::new(r.1)).collect(),
    };
    table.validate()?;
    Ok(table)
}

impl CharacterTable {
    fn validate(&self) -> Result<()> {
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order as u64 {
            return Err(Error::CharacterTable {
                class: 0,
                message: format!("sum of squared degrees {sum_sq} differs from |G| = {}", self.order),
            });
        }
        if self.rows[0].values.iter().any(|z| *z != Complex64::new(1.0, 0.0)) {
            return Err(Error::CharacterTable {
                class: 0,
                message: "first row is not the trivial character".into(),
            });
        }
        let (row_defect, col_defect) = self.orthogonality_defect();
        if row_defect > ORTHOGONALITY_TOL || col_defect > ORTHOGONALITY_TOL {
            let class = self.worst_column();
            return Err(Error::CharacterTable {
                class,
                message: format!(
                    "orthogonality violated (rows {row_defect:e}, columns {col_defect:e})"
                ),
            });
        }
        Ok(())
    }

    fn worst_column(&self) -> usize {
        let r = self.num_classes();
        (0..r)
            .max_by(|&a, &b| {
                let da = (self.column_inner(a, a).re - self.classes.centralizer_order(a) as f64).abs();
                let db = (self.column_inner(b, b).re - self.classes.centralizer_order(b) as f64).abs();
                da.total_cmp(&db)
            })
            .unwrap_or(0)
    }

    fn column_inner(&self, a: usize, b: usize) -> Complex64 {
        self.rows
            .iter()
            .map(|row| row.values[a] * row.values[b].conj())
            .sum()
    }

    /// Largest deviations from the row and column orthogonality relations,
    /// each divided by `|G|`.
    pub fn orthogonality_defect(&self) -> (f64, f64) {
        let r = self.num_classes();
        let n = self.order as f64;
        let mut row_defect: f64 = 0.0;
        for a in 0..r {
            for b in 0..r {
                let ip = self.inner_product(&self.rows[a], &self.rows[b]) * n;
                let expected = if a == b { n } else { 0.0 };
                row_defect = row_defect.max((ip - expected).norm() / n);
            }
        }
        let mut col_defect: f64 = 0.0;
        for a in 0..r {
            for b in 0..r {
                let expected = if a == b {
                    self.classes.centralizer_order(a) as f64
                } else {
                    0.0
                };
                col_defect = col_defect.max((self.column_inner(a, b) - expected).norm() / n);
            }
        }
        (row_defect, col_defect)
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &ConjugacyClassPartition {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.num_classes()
    }

    pub fn num_irreps(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    /// Character value of irrep `row` at group element `element`.
    pub fn value_at(&self, row: usize, element: usize) -> Complex64 {
        self.rows[row].values[self.classes.class_of(element)]
    }

    /// `(1/|G|) Σ_g χ(g) conj(ψ(g))`
    pub fn inner_product(&self, chi: &ClassFunction, psi: &ClassFunction) -> Complex64 {
        let sum: Complex64 = chi
            .values
            .iter()
            .zip(&psi.values)
            .zip(self.classes.class_sizes())
            .map(|((a, b), &s)| a * b.conj() * s as f64)
            .sum();
        sum / self.order as f64
    }

    pub fn trivial_character(&self) -> ClassFunction {
        self.rows[0].clone()
    }

    /// `|G|` at the identity class, zero elsewhere.
    pub fn regular_character(&self) -> ClassFunction {
        let mut values = vec![Complex64::new(0.0, 0.0); self.num_classes()];
        values[0] = Complex64::new(self.order as f64, 0.0);
        ClassFunction::new(values)
    }
}

/// `[χ : ρ]`, validated to be a nonnegative integer within [`MULT_TOL`].
pub fn multiplicity(chi: &ClassFunction, rho: usize, table: &CharacterTable) -> Result<u64> {
    multiplicity_with_tol(chi, rho, table, MULT_TOL)
}

pub fn multiplicity_with_tol(
    chi: &ClassFunction,
    rho: usize,
    table: &CharacterTable,
    tol: f64,
) -> Result<u64> {
    if chi.len() != table.num_classes() {
        return Err(Error::precondition(format!(
            "class function has {} values but the group has {} classes",
            chi.len(),
            table.num_classes()
        )));
    }
    let ip = table.inner_product(chi, table.row(rho));
    if ip.im.abs() > tol {
        return Err(Error::NonIntegral {
            value: ip.im,
            tol,
            context: format!("imaginary part of the multiplicity of irrep {rho}"),
        });
    }
    to_count(ip.re, tol, || format!("multiplicity of irrep {rho}"))
}

/// Number of cosets `xH` fixed by each class representative.
pub fn permutation_character_counts(group: &PermutationGroup, subgroup: &Subgroup) -> Vec<u64> {
    let classes = group.classes();
    let cosets = coset_space(group, subgroup);
    classes
        .representatives()
        .iter()
        .map(|&g| cosets.fixed_cosets(group, g) as u64)
        .collect()
}

/// Character of the quasi-regular representation on `G/H`.
pub fn permutation_character(group: &PermutationGroup, subgroup: &Subgroup) -> ClassFunction {
    ClassFunction::from_integers(&permutation_character_counts(group, subgroup))
}

/// `[Res_K ρ : 1_K] = (1/|K|) Σ_{k∈K} χ_ρ(k)`
pub fn trivial_multiplicity_on_restriction(
    table: &CharacterTable,
    rho: usize,
    k: &Subgroup,
) -> Result<u64> {
    let sum: Complex64 = k.elements().iter().map(|&e| table.value_at(rho, e)).sum();
    let avg = sum / k.order() as f64;
    if avg.im.abs() > MULT_TOL {
        return Err(Error::NonIntegral {
            value: avg.im,
            tol: MULT_TOL,
            context: format!("imaginary part of the restriction of irrep {rho}"),
        });
    }
    to_count(avg.re, MULT_TOL, || {
        format!("trivial multiplicity in the restriction of irrep {rho}")
    })
}

/// Irreps with nonzero `K`-fixed vectors.
pub fn g_hat_k(table: &CharacterTable, k: &Subgroup) -> Result<IrrepSubset> {
    let mut indices = Vec::new();
    for rho in 0..table.num_irreps() {
        if trivial_multiplicity_on_restriction(table, rho, k)? > 0 {
            indices.push(rho);
        }
    }
    Ok(IrrepSubset::new(indices))
}

/// Decomposes a character into irreducible multiplicities.
pub fn decompose(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<u64>> {
    (0..table.num_irreps())
        .map(|rho| multiplicity(chi, rho, table))
        .collect()
}
