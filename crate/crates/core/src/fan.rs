//! Complete fans and their combinatorics.
//!
//! Rays are indexed `0..n_rays` in file order; every set of rays is a
//! [`RaySet`] and sorts lexicographically by its ascending index list.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use crate::cone::{for_each_subset, PolyCone};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank_of, QMat, QVec, SubspaceBasis};

/// Maximum number of rays; ray sets are bitmasks.
pub const MAX_RAYS: usize = 64;

/// A set of ray indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RaySet(u64);

/// A minimal set of rays not contained in any maximal cone.
pub type PrimitiveCollection = RaySet;

/// A member of the state-set family: a ray set disjoint from some primitive collection.
pub type StateSet = RaySet;

impl RaySet {
    pub const EMPTY: RaySet = RaySet(0);

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0u64;
        for i in idx {
            assert!(i < MAX_RAYS, "ray index {i} out of range");
            bits |= 1 << i;
        }
        RaySet(bits)
    }

    /// All rays `0..n`.
    pub fn full(n: usize) -> Self {
        Self::from_indices(0..n)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RAYS && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RaySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: RaySet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: RaySet) -> RaySet {
        RaySet(self.0 | other.0)
    }

    pub fn intersection(self, other: RaySet) -> RaySet {
        RaySet(self.0 & other.0)
    }

    pub fn difference(self, other: RaySet) -> RaySet {
        RaySet(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> RaySet {
        self.union(RaySet::from_indices([i]))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_RAYS).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = RaySet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == full {
                None
            } else {
                Some((out.wrapping_sub(full)) & full)
            };
            Some(RaySet(out))
        })
    }

    /// The image under an index map.
    pub fn map(self, f: &[usize]) -> RaySet {
        RaySet::from_indices(self.iter().map(|i| f[i]))
    }
}

impl Ord for RaySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for RaySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RaySet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// On-disk form of a fan.
#[derive(Serialize, Deserialize)]
struct FanFile {
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

/// A fan given by primitive integral rays and its maximal cones.
pub struct Fan {
    rays: Vec<Vec<i64>>,
    max_cones: Vec<RaySet>,
    cones: OnceLock<Vec<PolyCone>>,
}

impl Clone for Fan {
    fn clone(&self) -> Self {
        Fan {
            rays: self.rays.clone(),
            max_cones: self.max_cones.clone(),
            cones: OnceLock::new(),
        }
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("rays", &self.rays)
            .field("max_cones", &self.max_cones)
            .finish()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Fan {
    /// Builds and validates a fan. Non-primitive rays are divided by their
    /// content; the notes describing each change are returned alongside.
    pub fn new(rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<(Fan, Vec<String>)> {
        let bad = |m: String| Err(Error::InvalidFan(m));
        let mut warnings = Vec::new();
        let Some(dim) = rays.first().map(Vec::len) else {
            return bad("no rays".into());
        };
        if dim == 0 {
            return bad("rays must have positive length".into());
        }
        if rays.len() > MAX_RAYS {
            return bad(format!("at most {MAX_RAYS} rays are supported"));
        }
        let mut prim = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return bad(format!("ray {i} has length {}, expected {dim}", r.len()));
            }
            let g = r.iter().fold(0, |acc, &x| gcd(acc, x));
            if g == 0 {
                return bad(format!("ray {i} is zero"));
            }
            if g != 1 {
                let p: Vec<i64> = r.iter().map(|x| x / g).collect();
                warnings.push(format!("ray {i} {r:?} normalized to {p:?}"));
                prim.push(p);
            } else {
                prim.push(r.clone());
            }
        }
        for i in 0..prim.len() {
            if let Some(j) = (i + 1..prim.len()).find(|&j| prim[j] == prim[i]) {
                return bad(format!("rays {i} and {j} coincide"));
            }
        }
        if max_cones.is_empty() {
            return bad("no maximal cones".into());
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (k, c) in max_cones.iter().enumerate() {
            if c.is_empty() {
                return bad(format!("maximal cone {k} is empty"));
            }
            if let Some(&i) = c.iter().find(|&&i| i >= prim.len()) {
                return bad(format!("maximal cone {k} refers to missing ray {i}"));
            }
            let s = RaySet::from_indices(c.iter().copied());
            if s.len() != c.len() {
                return bad(format!("maximal cone {k} repeats a ray"));
            }
            cones.push(s);
        }
        let fan = Fan {
            rays: prim,
            max_cones: cones,
            cones: OnceLock::new(),
        };
        fan.validate()?;
        Ok((fan, warnings))
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFan(m));
        for (k, &c) in self.max_cones.iter().enumerate() {
            if let Some(j) =
                (0..self.max_cones.len()).find(|&j| j != k && c.is_subset(self.max_cones[j]))
            {
                return bad(format!("maximal cone {k} is contained in maximal cone {j}"));
            }
            let pc = &self.polycones()[k];
            if !pc.is_strongly_convex() {
                return bad(format!("maximal cone {k} is not strongly convex"));
            }
            for i in c.iter() {
                if !pc.rays().contains(&self.ray(i)) {
                    return bad(format!(
                        "ray {i} is not an extremal ray of maximal cone {k}"
                    ));
                }
            }
        }
        if let Some(i) = (0..self.n_rays()).find(|&i| !self.max_cones.iter().any(|c| c.contains(i)))
        {
            return bad(format!("ray {i} lies in no maximal cone"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.rays[0].len()
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn all_rays(&self) -> RaySet {
        RaySet::full(self.n_rays())
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Ray `i` as a rational vector.
    pub fn ray(&self, i: usize) -> QVec {
        QVec::from_ints(&self.rays[i])
    }

    pub fn max_cones(&self) -> &[RaySet] {
        &self.max_cones
    }

    /// Matrix whose row `i` is ray `i`.
    pub fn ray_matrix(&self) -> QMat {
        QMat::from_ints(&self.rays)
    }

    /// Maximal cones as polyhedral cones, in order.
    pub fn polycones(&self) -> &[PolyCone] {
        self.cones.get_or_init(|| {
            self.max_cones
                .iter()
                .map(|c| {
                    let gens: Vec<QVec> = c.iter().map(|i| self.ray(i)).collect();
                    PolyCone::from_generators(self.dim(), &gens)
                })
                .collect()
        })
    }

    /// First maximal cone containing `v`.
    pub fn max_cone_containing(&self, v: &QVec) -> Option<usize> {
        self.polycones().iter().position(|c| c.contains(v))
    }

    /// True if some maximal cone contains all rays of `s`.
    pub fn is_face_subset(&self, s: RaySet) -> bool {
        self.max_cones.iter().any(|&c| s.is_subset(c))
    }

    /// JSON text in the input format; `parse_fan(f.to_json())` returns `f`.
    pub fn to_json(&self) -> String {
        let file = FanFile {
            rays: self.rays.clone(),
            max_cones: self.max_cones.iter().map(|c| c.to_vec()).collect(),
        };
        serde_json::to_string(&file).expect("fan serializes")
    }
}

impl Serialize for Fan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FanFile {
            rays: self.rays.clone(),
            max_cones: self.max_cones.iter().map(|c| c.to_vec()).collect(),
        }
        .serialize(s)
    }
}

/// Parses `{"rays": [[int, ...], ...], "max_cones": [[int, ...], ...]}`.
pub fn parse_fan(text: &str) -> Result<Fan> {
    parse_fan_with_warnings(text).map(|(f, _)| f)
}

/// Like [`parse_fan`], also returning notes about normalized rays.
pub fn parse_fan_with_warnings(text: &str) -> Result<(Fan, Vec<String>)> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Fan::new(file.rays, file.max_cones)
}

/// Each maximal cone is full-dimensional and each of its facets is a facet of
/// exactly one other maximal cone, lying on the opposite side; one interior
/// point is covered exactly once.
pub fn is_complete(fan: &Fan) -> bool {
    let n = fan.dim();
    let cones = fan.polycones();
    if !cones.iter().all(PolyCone::is_full_dimensional) {
        return false;
    }
    let mut facets: BTreeMap<RaySet, Vec<QVec>> = BTreeMap::new();
    for (k, pc) in cones.iter().enumerate() {
        for f in pc.facets() {
            let key = RaySet::from_indices(
                fan.max_cones[k]
                    .iter()
                    .filter(|&i| f.dot(&fan.ray(i)).is_zero()),
            );
            facets.entry(key).or_default().push(f);
        }
    }
    let paired = facets
        .values()
        .all(|ns| ns.len() == 2 && ns[0] == ns[1].neg());
    if !paired {
        return false;
    }
    let mut p = QVec::zeros(n);
    for i in fan.max_cones[0].iter() {
        p = p.add(&fan.ray(i));
    }
    cones.iter().filter(|c| c.contains(&p)).count() == 1
}

/// Every maximal cone is generated by linearly independent rays.
pub fn is_simplicial(fan: &Fan) -> bool {
    fan.max_cones.iter().all(|c| {
        let gens: Vec<QVec> = c.iter().map(|i| fan.ray(i)).collect();
        rank_of(fan.dim(), &gens) == gens.len()
    })
}

/// Minimal ray sets not contained in any maximal cone, in canonical order.
pub fn primitive_collections(fan: &Fan) -> Vec<PrimitiveCollection> {
    let n = fan.n_rays();
    let max_size = fan.max_cones.iter().map(|c| c.len()).max().unwrap_or(0) + 1;
    let mut found: Vec<RaySet> = Vec::new();
    for k in 1..=max_size.min(n) {
        let mut level = Vec::new();
        for_each_subset(n, k, |idx| {
            let s = RaySet::from_indices(idx.iter().copied());
            if !fan.is_face_subset(s) && !found.iter().any(|c| c.is_subset(s)) {
                level.push(s);
            }
        });
        found.extend(level);
    }
    found.sort();
    found
}

/// All ray sets disjoint from at least one primitive collection, sorted.
pub fn state_sets(fan: &Fan) -> Vec<StateSet> {
    state_sets_from(fan.all_rays(), &primitive_collections(fan))
}

pub(crate) fn state_sets_from(all: RaySet, pcs: &[PrimitiveCollection]) -> Vec<StateSet> {
    let mut out = BTreeSet::new();
    for &c in pcs {
        out.extend(all.difference(c).subsets());
    }
    out.into_iter().collect()
}

/// The relation space `{v : sum_i v_i u_i = 0}`, a subspace of `Q^{n_rays}`
/// of dimension `n_rays - dim` for a complete fan.
pub fn relation_lattice(fan: &Fan) -> SubspaceBasis {
    kernel_basis(&fan.ray_matrix().transpose())
}

/// A bijection between the rays of two fans: ray `i` of the first maps to
/// ray `map[i]` of the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RayBijection(Vec<usize>);

impl RayBijection {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &j in &map {
            if j >= map.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Parse(format!("{map:?} is not a permutation")));
            }
        }
        Ok(RayBijection(map))
    }

    pub fn identity(n: usize) -> Self {
        RayBijection((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, s: RaySet) -> RaySet {
        s.map(&self.0)
    }

    /// Moves coordinates: `out[map[i]] = v[i]`.
    pub fn push_vector(&self, v: &QVec) -> QVec {
        let mut out = QVec::zeros(v.len());
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = v[i].clone();
        }
        out
    }

    /// Pulls coordinates back: `out[i] = v[map[i]]`.
    pub fn pull_vector(&self, v: &QVec) -> QVec {
        self.0.iter().map(|&j| v[j].clone()).collect()
    }
}

/// Whether `psi` identifies primitive collections in both directions and
/// carries one relation space onto the other.
pub fn check_amply_equivalent(fan1: &Fan, fan2: &Fan, psi: &RayBijection) -> Result<bool> {
    if fan1.n_rays() != fan2.n_rays() || psi.len() != fan1.n_rays() {
        return Err(Error::DimensionMismatch {
            expected: fan1.n_rays(),
            found: if psi.len() != fan1.n_rays() {
                psi.len()
            } else {
                fan2.n_rays()
            },
        });
    }
    let pc1: BTreeSet<RaySet> = primitive_collections(fan1)
        .into_iter()
        .map(|c| psi.apply(c))
        .collect();
    let pc2: BTreeSet<RaySet> = primitive_collections(fan2).into_iter().collect();
    if pc1 != pc2 {
        return Ok(false);
    }
    let moved: Vec<QVec> = relation_lattice(fan1)
        .vectors()
        .iter()
        .map(|v| psi.push_vector(v))
        .collect();
    let g1 = SubspaceBasis::span(fan1.n_rays(), &moved);
    Ok(g1.same_subspace(&relation_lattice(fan2)))
}

/// Searches all bijections for an ample equivalence. Only for at most 8 rays.
pub fn find_ample_equivalence(fan1: &Fan, fan2: &Fan) -> Result<Option<RayBijection>> {
    let n = fan1.n_rays();
    if n > 8 {
        return Err(Error::Precondition(
            "bijection search is limited to 8 rays".into(),
        ));
    }
    if fan2.n_rays() != n {
        return Ok(None);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let psi = RayBijection(perm.clone());
        if check_amply_equivalent(fan1, fan2, &psi)? {
            return Ok(Some(psi));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1p1() -> Fan {
        parse_fan(r#"{"rays":[[1,0],[-1,0],[0,1],[0,-1]],"max_cones":[[0,2],[1,2],[1,3],[0,3]]}"#)
            .unwrap()
    }

    fn rs(xs: &[usize]) -> RaySet {
        RaySet::from_indices(xs.iter().copied())
    }

    #[test]
    fn rayset_order_and_subsets() {
        let mut v = vec![rs(&[1]), rs(&[0, 1]), rs(&[]), rs(&[0])];
        v.sort();
        assert_eq!(v, vec![rs(&[]), rs(&[0]), rs(&[0, 1]), rs(&[1])]);
        assert_eq!(rs(&[0, 2, 3]).subsets().count(), 8);
        assert_eq!(rs(&[]).subsets().collect::<Vec<_>>(), vec![rs(&[])]);
    }

    #[test]
    fn p1p1_combinatorics() {
        let f = p1p1();
        assert!(is_complete(&f));
        assert!(is_simplicial(&f));
        assert_eq!(primitive_collections(&f), vec![rs(&[0, 1]), rs(&[2, 3])]);
        let l = state_sets(&f);
        let expect = [&[][..], &[2], &[3], &[2, 3], &[0], &[1], &[0, 1]];
        assert_eq!(l.len(), 7);
        for e in expect {
            assert!(l.contains(&rs(e)));
        }
        let g = relation_lattice(&f);
        assert_eq!(
            g.vectors(),
            &[
                QVec::from_ints(&[1, 1, 0, 0]),
                QVec::from_ints(&[0, 0, 1, 1])
            ]
        );
    }

    #[test]
    fn non_primitive_ray_is_normalized() {
        let (f, w) = Fan::new(
            vec![vec![2, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(f.rays()[0], vec![1, 0]);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn invalid_fans_are_rejected() {
        assert!(matches!(parse_fan("{"), Err(Error::Parse(_))));
        let line = Fan::new(vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]);
        assert!(matches!(line, Err(Error::InvalidFan(_))));
        let interior = Fan::new(
            vec![vec![1, 0], vec![1, 1], vec![0, 1]],
            vec![vec![0, 1, 2]],
        );
        assert!(matches!(interior, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn incomplete_fan() {
        let (f, _) = Fan::new(vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(!is_complete(&f));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"rays":[[1,0],[-1,0],[0,1],[0,-1]],"max_cones":[[0,2],[1,2],[1,3],[0,3]]}"#;
        let f = parse_fan(text).unwrap();
        assert_eq!(f.to_json(), text);
        assert_eq!(parse_fan(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn bijection_validation() {
        assert!(RayBijection::new(vec![1, 0, 2]).is_ok());
        assert!(RayBijection::new(vec![1, 1, 2]).is_err());
        assert!(RayBijection::new(vec![0, 3]).is_err());
    }
}
