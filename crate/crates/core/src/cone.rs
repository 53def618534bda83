//! Rational polyhedral cones by brute-force double description.
//!
//! A [`PolyCone`] is stored by inward facet normals, `{v : n . v >= 0}`.
//! Extreme rays and the lineality space are derived lazily: a candidate ray
//! is the one-dimensional solution of a maximal independent family of tight
//! normals. That is exponential in general but instant at desk scale.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::linalg::{kernel_basis, rank_of, QMat, QVec, Rat, SubspaceBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Generators {
    rays: Vec<QVec>,
    lineality: SubspaceBasis,
}

#[derive(Debug)]
pub struct PolyCone {
    dim: usize,
    normals: Vec<QVec>,
    gens: OnceLock<Generators>,
}

impl Clone for PolyCone {
    fn clone(&self) -> Self {
        PolyCone {
            dim: self.dim,
            normals: self.normals.clone(),
            gens: self.gens.clone(),
        }
    }
}

/// Visits every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn dedup_primitive(vs: impl IntoIterator<Item = QVec>) -> Vec<QVec> {
    let mut out: Vec<QVec> = Vec::new();
    for v in vs {
        let p = v.primitive();
        if !p.is_zero() && !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    out
}

impl PolyCone {
    /// `{v in Q^dim : n . v >= 0 for every normal n}`.
    pub fn from_inequalities(dim: usize, normals: Vec<QVec>) -> Self {
        assert!(normals.iter().all(|n| n.len() == dim));
        PolyCone {
            dim,
            normals: dedup_primitive(normals),
            gens: OnceLock::new(),
        }
    }

    /// The cone generated by `gens` (the zero cone if empty).
    pub fn from_generators(dim: usize, gens: &[QVec]) -> Self {
        let dual = PolyCone::from_inequalities(dim, gens.to_vec());
        let mut normals = dual.rays().to_vec();
        for l in dual.lineality().vectors() {
            normals.push(l.clone());
            normals.push(l.neg());
        }
        PolyCone::from_inequalities(dim, normals)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Inward normals as given (deduplicated, possibly redundant).
    pub fn normals(&self) -> &[QVec] {
        &self.normals
    }

    fn generators(&self) -> &Generators {
        self.gens
            .get_or_init(|| compute_generators(self.dim, &self.normals))
    }

    /// Extreme rays modulo the lineality space, integral and primitive.
    pub fn rays(&self) -> &[QVec] {
        &self.generators().rays
    }

    pub fn lineality(&self) -> &SubspaceBasis {
        &self.generators().lineality
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.normals.iter().all(|n| !n.dot(v).is_negative())
    }

    /// Strict satisfaction of every normal. For a full-dimensional cone whose
    /// normals are all facets this is membership in the interior.
    pub fn strictly_satisfies(&self, v: &QVec) -> bool {
        self.normals.iter().all(|n| n.dot(v).is_positive())
    }

    /// Dimension of the linear span of the cone.
    pub fn cone_dim(&self) -> usize {
        let mut vs: Vec<QVec> = self.rays().to_vec();
        vs.extend(self.lineality().vectors().iter().cloned());
        rank_of(self.dim, &vs)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.cone_dim() == self.dim
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality().dim() == 0
    }

    /// The dual cone `{y : y . v >= 0 for all v in self}`; its rays are the
    /// facet normals of `self`.
    pub fn dual(&self) -> PolyCone {
        PolyCone::from_generators(self.dim, &self.normals)
    }

    /// Facet normals of a full-dimensional cone: the normals that are tight on
    /// a codimension-one family of generators.
    pub fn facets(&self) -> Vec<QVec> {
        irredundant(self.dim, &self.normals, self.rays(), self.lineality())
    }

    /// A point satisfying every normal strictly, if the interior is nonempty.
    pub fn interior_point(&self) -> Option<QVec> {
        let mut p = QVec::zeros(self.dim);
        for r in self.rays() {
            p = p.add(r);
        }
        self.strictly_satisfies(&p).then_some(p)
    }
}

fn irredundant(dim: usize, normals: &[QVec], rays: &[QVec], lin: &SubspaceBasis) -> Vec<QVec> {
    normals
        .iter()
        .filter(|n| {
            let mut tight: Vec<QVec> = rays
                .iter()
                .filter(|r| n.dot(r).is_zero())
                .cloned()
                .collect();
            tight.extend(lin.vectors().iter().cloned());
            tight.len() + 1 >= dim && rank_of(dim, &tight) + 1 == dim
        })
        .cloned()
        .collect()
}

fn compute_generators(dim: usize, normals: &[QVec]) -> Generators {
    let lineality = if normals.is_empty() {
        kernel_basis(&QMat::zeros(0, dim))
    } else {
        kernel_basis(&QMat::from_rows(dim, normals))
    };
    let l = lineality.dim();
    if l == dim {
        return Generators {
            rays: Vec::new(),
            lineality,
        };
    }
    let need = dim - l - 1;
    let mut rays = Vec::new();
    for_each_subset(normals.len(), need, |idx| {
        let mut rows: Vec<QVec> = idx.iter().map(|&i| normals[i].clone()).collect();
        rows.extend(lineality.vectors().iter().cloned());
        if rows.is_empty() {
            rows.push(QVec::zeros(dim));
        }
        let k = kernel_basis(&QMat::from_rows(dim, &rows));
        if k.dim() != 1 {
            return;
        }
        let v = &k.vectors()[0];
        for cand in [v.clone(), v.neg()] {
            if normals.iter().all(|n| !n.dot(&cand).is_negative()) {
                rays.push(cand);
            }
        }
    });
    Generators {
        rays: dedup_primitive(rays),
        lineality,
    }
}

/// Evaluates each normal at `v`.
pub fn slacks(normals: &[QVec], v: &QVec) -> Vec<Rat> {
    normals.iter().map(|n| n.dot(v)).collect()
}
