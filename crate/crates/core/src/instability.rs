//! Adapted one-parameter subgroups and destabilizers.
//!
//! Two independent routes compute the adapted one-parameter subgroup
//! `λ^D_S` of a state set `S`:
//!
//! - [`PotentialTable`] precomputes `-Proj_{W_Z} χ*_D` symbolically for
//!   every `Z` in the state-set family, with `W_Z` the relations vanishing on
//!   `Z`, computed in the ambient space `Q^{rays}`. Evaluating a row and
//!   filtering by sign gives the candidates.
//! - [`WeightedAction`] works in coordinates on the Lie algebra of the torus
//!   with an explicit Gram matrix and brute-forces every subset `Z ⊆ S`. It
//!   only needs a weight list, so it also serves non-toric diagonal actions.
//!
//! Both pick the candidate of largest norm; a tie between distinct vectors
//! would contradict uniqueness and is reported as [`Error::InternalTie`].

use std::collections::HashMap;
use std::sync::Mutex;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ample::ample_inequalities;
use crate::divisor::{indicator, is_cartier, Divisor};
use crate::error::{Error, Result};
use crate::fan::{
    is_complete, is_simplicial, primitive_collections, relation_lattice, Fan, PrimitiveCollection,
    RaySet, StateSet,
};
use crate::linalg::{
    inverse, kernel_basis, rank_of, solve_particular, QMat, QVec, Rat, SubspaceBasis,
};
use crate::poly::{LinearForm, QuadraticForm, SymbolicVector};

/// A diagonal torus action: weight `i` is the linear functional `weights.row(i)`
/// on coordinates of the Lie algebra, whose inner product has Gram matrix `gram`.
#[derive(Debug)]
pub struct WeightedAction {
    weights: QMat,
    gram: QMat,
    cache: Mutex<HashMap<RaySet, QMat>>,
}

/// Outcome of a brute-force search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// The adapted vector in Lie-algebra coordinates.
    pub coords: QVec,
    pub norm2: Rat,
}

impl WeightedAction {
    /// `gram` must be symmetric positive definite of size `weights.ncols()`.
    pub fn new(weights: QMat, gram: QMat) -> Result<Self> {
        let k = weights.ncols();
        if gram.nrows() != k || gram.ncols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: gram.nrows(),
            });
        }
        if !gram.is_symmetric() || inverse(&gram).is_err() {
            return Err(Error::Precondition(
                "gram matrix must be symmetric and nonsingular".into(),
            ));
        }
        Ok(WeightedAction {
            weights,
            gram,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The torus `G` acting on `C^{rays}`, with Lie algebra the relation
    /// space: coordinates are taken in its primitive basis.
    pub fn toric(fan: &Fan) -> Self {
        let basis = relation_lattice(fan);
        let c = QMat::from_cols(fan.n_rays(), basis.vectors());
        let gram = basis.gram();
        WeightedAction::new(c, gram).expect("relation basis is independent")
    }

    pub fn n_weights(&self) -> usize {
        self.weights.nrows()
    }

    pub fn lie_dim(&self) -> usize {
        self.weights.ncols()
    }

    pub fn weights(&self) -> &QMat {
        &self.weights
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn norm2(&self, v: &QVec) -> Rat {
        v.dot(&self.gram.mul_vec(v))
    }

    /// `K (K^T G K)^{-1} K^T` for a basis `K` of `{v : <χ_i, v> = 0, i in z}`;
    /// applied to a functional it gives the projection of its dual vector.
    fn dual_projector(&self, z: RaySet) -> QMat {
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some(p) = cache.get(&z) {
            return p.clone();
        }
        let k = self.lie_dim();
        let rows: Vec<QVec> = z.iter().map(|i| self.weights.row(i)).collect();
        let w = if rows.is_empty() {
            kernel_basis(&QMat::zeros(0, k))
        } else {
            kernel_basis(&QMat::from_rows(k, &rows))
        };
        let p = if w.dim() == 0 {
            QMat::zeros(k, k)
        } else {
            let kk = QMat::from_cols(k, w.vectors());
            let a = kk.transpose().mul(&self.gram).mul(&kk);
            kk.mul(&inverse(&a).expect("restricted gram is definite"))
                .mul(&kk.transpose())
        };
        cache.insert(z, p.clone());
        p
    }

    /// Brute force over all `Z ⊆ s`: the largest-norm vector among
    /// `-Proj_{W_Z} χ*` that pairs nonnegatively with every weight in `s`.
    /// `chi` is the character as a functional on Lie-algebra coordinates.
    pub fn kempf_oracle(&self, s: RaySet, chi: &QVec) -> Result<OracleResult> {
        let mut best: Option<OracleResult> = None;
        for z in s.subsets() {
            let v = self.dual_projector(z).mul_vec(chi).neg();
            if !s.iter().all(|i| !self.weights.row(i).dot(&v).is_negative()) {
                continue;
            }
            let n2 = self.norm2(&v);
            match &best {
                Some(b) if b.norm2 > n2 => {}
                Some(b) if b.norm2 == n2 => {
                    if b.coords != v {
                        return Err(Error::InternalTie(format!("state set {s}")));
                    }
                }
                _ => {
                    best = Some(OracleResult {
                        coords: v,
                        norm2: n2,
                    })
                }
            }
        }
        best.ok_or_else(|| Error::InternalTie(format!("no candidate for {s}")))
    }
}

/// One row of the potential table: state sets sharing the same symbolic
/// vector `-Proj_{W_Z} χ*_D`.
#[derive(Clone, Debug, Serialize)]
pub struct PotentialEntry {
    /// `-Proj_{W_Z} χ*_D`, linear in the coefficients.
    pub vector: SymbolicVector,
    /// `||vector||^2`, quadratic in the coefficients.
    pub norm2: QuadraticForm,
    /// The state sets `Z` producing this vector, in canonical order.
    pub members: Vec<StateSet>,
    /// `W_Z` for the first member.
    #[serde(skip)]
    pub subspace: SubspaceBasis,
}

impl PotentialEntry {
    /// True for the entry of the state sets with `W_Z = 0`.
    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }
}

/// The adapted one-parameter subgroup of a state set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdaptedOps {
    /// `λ^D_S` as a vector over the rays.
    #[serde(serialize_with = "ser_qvec")]
    pub lambda: QVec,
    #[serde(serialize_with = "ser_rat")]
    pub norm2: Rat,
    /// `M^D(S) = -||λ||^2`.
    #[serde(serialize_with = "ser_rat")]
    pub m: Rat,
    /// Potential-table entry that produced `lambda`.
    pub entry: usize,
}

pub(crate) fn ser_qvec<S: serde::Serializer>(
    v: &QVec,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_rat<S: serde::Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// The symbolic candidates `-Proj_{W_Z} χ*_D` for every state set `Z`.
#[derive(Debug)]
pub struct PotentialTable {
    fan: Fan,
    primitive: Vec<PrimitiveCollection>,
    state_sets: Vec<StateSet>,
    relations: SubspaceBasis,
    inequalities: Vec<LinearForm>,
    entries: Vec<PotentialEntry>,
    entry_of: HashMap<StateSet, usize>,
}

/// `W_Z`: relations vanishing on the rays of `z`, as the kernel of the
/// transpose of the ray matrix augmented by the unit columns of `z`.
pub fn w_subspace(fan: &Fan, z: RaySet) -> SubspaceBasis {
    let n = fan.n_rays();
    let units: Vec<QVec> = z.iter().map(|i| QVec::unit(n, i)).collect();
    let b = fan.ray_matrix();
    let bz = if units.is_empty() {
        b
    } else {
        b.hstack(&QMat::from_cols(n, &units))
    };
    kernel_basis(&bz.transpose())
}

impl PotentialTable {
    /// Requires a complete fan.
    pub fn build(fan: &Fan) -> Result<Self> {
        if !is_complete(fan) {
            return Err(Error::NotComplete);
        }
        let n = fan.n_rays();
        let primitive = primitive_collections(fan);
        let state_sets = crate::fan::state_sets_from(fan.all_rays(), &primitive);
        let mut entries: Vec<PotentialEntry> = Vec::new();
        let mut entry_of = HashMap::new();
        for &z in &state_sets {
            let w = w_subspace(fan, z);
            let mut cols = Vec::with_capacity(n);
            for i in 0..n {
                cols.push(crate::linalg::project_onto(&w, &QVec::unit(n, i)).neg());
            }
            let vector = SymbolicVector(QMat::from_cols(n, &cols));
            let idx = match entries.iter().position(|e| e.vector == vector) {
                Some(i) => {
                    entries[i].members.push(z);
                    i
                }
                None => {
                    entries.push(PotentialEntry {
                        norm2: vector.norm2(),
                        vector,
                        members: vec![z],
                        subspace: w,
                    });
                    entries.len() - 1
                }
            };
            entry_of.insert(z, idx);
        }
        Ok(PotentialTable {
            fan: fan.clone(),
            primitive,
            state_sets,
            relations: relation_lattice(fan),
            inequalities: ample_inequalities(fan),
            entries,
            entry_of,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn primitive_collections(&self) -> &[PrimitiveCollection] {
        &self.primitive
    }

    /// The state-set family, in canonical order.
    pub fn state_sets(&self) -> &[StateSet] {
        &self.state_sets
    }

    pub fn relations(&self) -> &SubspaceBasis {
        &self.relations
    }

    pub fn entries(&self) -> &[PotentialEntry] {
        &self.entries
    }

    /// Index of the entry containing `z`.
    pub fn entry_index(&self, z: StateSet) -> Result<usize> {
        self.entry_of
            .get(&z)
            .copied()
            .ok_or_else(|| Error::NotStateSet(z.to_string()))
    }

    pub fn entry(&self, z: StateSet) -> Result<&PotentialEntry> {
        Ok(&self.entries[self.entry_index(z)?])
    }

    /// `-Proj_{W_Z} χ*_D` at a concrete divisor.
    pub fn value(&self, z: StateSet, d: &Divisor) -> Result<QVec> {
        Ok(self.entry(z)?.vector.eval(&d.0))
    }

    /// Q-Cartier and strictly inside every ampleness form.
    pub fn is_ample(&self, d: &Divisor) -> Result<bool> {
        self.check_len(d)?;
        if is_cartier(&self.fan, d, false)?.is_none() {
            return Ok(false);
        }
        Ok(self.inequalities.iter().all(|f| f.eval(&d.0).is_positive()))
    }

    pub(crate) fn require_ample(&self, d: &Divisor) -> Result<()> {
        if self.is_ample(d)? {
            Ok(())
        } else {
            Err(Error::NotAmple)
        }
    }

    fn check_len(&self, d: &Divisor) -> Result<()> {
        if d.0.len() != self.fan.n_rays() {
            return Err(Error::DimensionMismatch {
                expected: self.fan.n_rays(),
                found: d.0.len(),
            });
        }
        Ok(())
    }

    /// `Λ^D_S`: pairs `(Z, v)` with `Z ⊆ S` and `v = -Proj_{W_Z} χ*_D`
    /// nonnegative on every ray of `S`.
    pub fn candidate_set(&self, s: StateSet, d: &Divisor) -> Result<Vec<(StateSet, QVec)>> {
        self.check_len(d)?;
        self.entry_index(s)?;
        let mut out = Vec::new();
        let mut zs: Vec<StateSet> = s.subsets().collect();
        zs.sort();
        for z in zs {
            let v = self.value(z, d)?;
            if s.iter().all(|i| !v[i].is_negative()) {
                out.push((z, v));
            }
        }
        Ok(out)
    }

    /// `λ^D_S`, the unique largest-norm candidate. `d` must be ample.
    pub fn adapted_ops(&self, s: StateSet, d: &Divisor) -> Result<AdaptedOps> {
        self.require_ample(d)?;
        self.adapted_unchecked(s, d)
    }

    pub(crate) fn adapted_unchecked(&self, s: StateSet, d: &Divisor) -> Result<AdaptedOps> {
        let mut best: Option<AdaptedOps> = None;
        for (z, v) in self.candidate_set(s, d)? {
            let n2 = v.norm2();
            let entry = self.entry_index(z)?;
            match &best {
                Some(b) if b.norm2 > n2 => {}
                Some(b) if b.norm2 == n2 => {
                    if b.lambda != v {
                        return Err(Error::InternalTie(format!("state set {s}")));
                    }
                }
                _ => {
                    best = Some(AdaptedOps {
                        m: -n2.clone(),
                        lambda: v,
                        norm2: n2,
                        entry,
                    })
                }
            }
        }
        best.ok_or_else(|| Error::InternalTie(format!("no candidate for {s}")))
    }
}

/// Brute-force `λ^D_S` through [`WeightedAction::toric`], returned over the rays.
pub fn kempf_oracle(fan: &Fan, s: StateSet, d: &Divisor) -> Result<(QVec, Rat)> {
    kempf_oracle_with(&WeightedAction::toric(fan), fan, s, d)
}

/// [`kempf_oracle`] reusing a prepared action (and its projector cache).
pub fn kempf_oracle_with(
    action: &WeightedAction,
    fan: &Fan,
    s: StateSet,
    d: &Divisor,
) -> Result<(QVec, Rat)> {
    if d.0.len() != fan.n_rays() {
        return Err(Error::DimensionMismatch {
            expected: fan.n_rays(),
            found: d.0.len(),
        });
    }
    let c = action.weights();
    let chi = c.transpose().mul_vec(&d.0);
    let r = action.kempf_oracle(s, &chi)?;
    Ok((c.mul_vec(&r.coords), r.norm2))
}

fn check_primitive(fan: &Fan, c: RaySet) -> Result<()> {
    if primitive_collections(fan).contains(&c) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{c} is not a primitive collection"
        )))
    }
}

fn ray_sum(fan: &Fan, c: RaySet) -> QVec {
    c.iter()
        .fold(QVec::zeros(fan.dim()), |acc, i| acc.add(&fan.ray(i)))
}

/// Coefficients `b >= 0` with `sum b_i u_i = v` over a linearly independent
/// subset of `cone`, trying subsets by size and then lexicographically.
fn simplicial_expression(fan: &Fan, cone: RaySet, v: &QVec) -> Option<QVec> {
    let mut subsets: Vec<RaySet> = cone.subsets().collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for s in subsets {
        let gens: Vec<QVec> = s.iter().map(|i| fan.ray(i)).collect();
        if rank_of(fan.dim(), &gens) != gens.len() {
            continue;
        }
        let coef = if gens.is_empty() {
            v.is_zero().then(QVec::default)
        } else {
            solve_particular(&QMat::from_cols(fan.dim(), &gens), v)
        };
        let Some(coef) = coef else { continue };
        if coef.iter().any(Signed::is_negative) {
            continue;
        }
        let mut b = QVec::zeros(fan.n_rays());
        for (x, i) in coef.iter().zip(s.iter()) {
            b[i] = x.clone();
        }
        return Some(b);
    }
    None
}

/// An integral one-parameter subgroup destabilizing every point whose zero
/// coordinates include `c`, for a primitive collection `c`.
///
/// With `u = sum_{i in c} u_i` lying in a simplicial subcone as
/// `sum b_i u_i`, the result is `K (b - 1_c)` for the least `K` clearing
/// denominators. It is a relation, nonnegative off `c`.
pub fn destabilizer(fan: &Fan, c: PrimitiveCollection) -> Result<QVec> {
    check_primitive(fan, c)?;
    let u = ray_sum(fan, c);
    let k = fan.max_cone_containing(&u).ok_or(Error::NotComplete)?;
    let b = simplicial_expression(fan, fan.max_cones()[k], &u)
        .ok_or_else(|| Error::Precondition("no simplicial subcone contains the ray sum".into()))?;
    let scale = Rat::from_integer(b.denominator_lcm());
    let out = b.sub(&indicator(fan.n_rays(), c)).scale(&scale);
    debug_assert!(fan.ray_matrix().transpose().mul_vec(&out).is_zero());
    Ok(out)
}

/// `1_c - b` where `u = sum_{i in c} u_i = sum b_i u_i` is the expression of
/// `u` in the cone containing it. Requires a simplicial fan.
pub fn primitive_relation(fan: &Fan, c: PrimitiveCollection) -> Result<QVec> {
    if !is_simplicial(fan) {
        return Err(Error::NotSimplicial);
    }
    check_primitive(fan, c)?;
    let u = ray_sum(fan, c);
    let k = fan.max_cone_containing(&u).ok_or(Error::NotComplete)?;
    let b = simplicial_expression(fan, fan.max_cones()[k], &u).expect("simplicial cone contains u");
    Ok(indicator(fan.n_rays(), c).sub(&b))
}

/// `r = c * s` for some positive rational `c`.
pub fn positive_multiple(r: &QVec, s: &QVec) -> bool {
    let Some(i) = (0..s.len()).find(|&i| !s[i].is_zero()) else {
        return r.is_zero();
    };
    let c = &r[i] / &s[i];
    c.is_positive() && s.scale(&c) == *r
}

/// Least common multiple of the denominators of a rational list.
pub fn lcm_denominators(xs: &[Rat]) -> num_bigint::BigInt {
    xs.iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;
    use crate::linalg::ratio;

    fn p1p1() -> Fan {
        parse_fan(r#"{"rays":[[1,0],[-1,0],[0,1],[0,-1]],"max_cones":[[0,2],[1,2],[1,3],[0,3]]}"#)
            .unwrap()
    }

    fn blp2() -> Fan {
        parse_fan(r#"{"rays":[[-1,1],[0,1],[1,0],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[0,3]]}"#)
            .unwrap()
    }

    fn rs(xs: &[usize]) -> RaySet {
        RaySet::from_indices(xs.iter().copied())
    }

    #[test]
    fn p1p1_table_has_three_entries() {
        let t = PotentialTable::build(&p1p1()).unwrap();
        assert_eq!(t.entries().len(), 3);
        let e = t.entry(rs(&[0])).unwrap();
        assert_eq!(e.members, vec![rs(&[0]), rs(&[0, 1]), rs(&[1])]);
        assert_eq!(
            e.vector.to_string(),
            "[0, 0, -1/2*a2 - 1/2*a3, -1/2*a2 - 1/2*a3]"
        );
        assert_eq!(e.norm2.to_string(), "1/2*a2^2 + a2*a3 + 1/2*a3^2");
    }

    #[test]
    fn blp2_candidates_and_adapted() {
        let f = blp2();
        let t = PotentialTable::build(&f).unwrap();
        let d = Divisor::from_ints(&[4, 1, 0, 0]);
        let c = t.candidate_set(rs(&[1]), &d).unwrap();
        assert!(c
            .iter()
            .any(|(z, v)| z.is_empty() && v[0] == ratio(-7, 5) && v[1] == ratio(1, 5)));
        let a = t.adapted_ops(rs(&[1]), &d).unwrap();
        assert_eq!(a.lambda, t.value(RaySet::EMPTY, &d).unwrap());
        let (o, n2) = kempf_oracle(&f, rs(&[1]), &d).unwrap();
        assert_eq!(o, a.lambda);
        assert_eq!(n2, a.norm2);
        assert_eq!(a.m, -a.norm2.clone());
    }

    #[test]
    fn not_ample_and_not_state_set() {
        let f = blp2();
        let t = PotentialTable::build(&f).unwrap();
        assert_eq!(
            t.adapted_ops(rs(&[1]), &Divisor::from_ints(&[1, 2, 0, 0])),
            Err(Error::NotAmple)
        );
        assert!(matches!(
            t.adapted_ops(rs(&[0, 1]), &Divisor::from_ints(&[4, 1, 0, 0])),
            Err(Error::NotStateSet(_))
        ));
    }

    #[test]
    fn destabilizer_examples() {
        assert_eq!(
            destabilizer(&p1p1(), rs(&[0, 1])).unwrap(),
            QVec::from_ints(&[-1, -1, 0, 0])
        );
        let f = blp2();
        assert_eq!(
            destabilizer(&f, rs(&[0, 2])).unwrap(),
            QVec::from_ints(&[-1, 1, -1, 0])
        );
        assert_eq!(
            destabilizer(&f, rs(&[1, 3])).unwrap(),
            QVec::from_ints(&[0, -1, 0, -1])
        );
        assert!(destabilizer(&f, rs(&[0, 1])).is_err());
    }

    #[test]
    fn primitive_relation_matches_destabilizer() {
        let f = blp2();
        for c in primitive_collections(&f) {
            let r = primitive_relation(&f, c).unwrap();
            assert!(positive_multiple(&destabilizer(&f, c).unwrap().neg(), &r));
        }
    }
}
