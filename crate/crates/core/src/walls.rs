//! Walls in the ample cone where the stratification may change.
//!
//! Type-one walls are linear: for `Z` and `{j}` in the state-set family with
//! `W_{Z ∪ {j}}` of codimension one in `W_Z`, the `j`-th coordinate of
//! `Proj_{W_Z} χ*_D` vanishes. Only those whose zero set meets the open ample
//! cone are kept. Type-two walls are quadratic: differences of squared norms
//! of two potential-table entries whose subspaces are incomparable. Both
//! kinds are stored in Picard coordinates and grouped under proportional
//! polynomials.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ample::AmpleCone;
use crate::divisor::{Divisor, PicBasis};
use crate::fan::{RaySet, StateSet};
use crate::instability::{w_subspace, PotentialTable};
use crate::linalg::{QVec, SubspaceBasis};
use crate::poly::WallPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallKind {
    TypeOne,
    TypeTwo,
}

/// Where a wall comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `(Z, {j})`.
    TypeOne { z: StateSet, ray: usize },
    /// Two potential-table entries, given by index and member list.
    TypeTwo {
        first: usize,
        second: usize,
        first_members: Vec<StateSet>,
        second_members: Vec<StateSet>,
    },
}

fn fmt_members(f: &mut fmt::Formatter<'_>, ms: &[StateSet]) -> fmt::Result {
    write!(f, "[")?;
    for (i, m) in ms.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{m}")?;
    }
    write!(f, "]")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::TypeOne { z, ray } => write!(f, "({z}, [{ray}])"),
            Witness::TypeTwo {
                first_members,
                second_members,
                ..
            } => {
                write!(f, "(")?;
                fmt_members(f, first_members)?;
                write!(f, ", ")?;
                fmt_members(f, second_members)?;
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Wall {
    pub kind: WallKind,
    /// Polynomial of the first witness, in Picard coordinates.
    pub poly: WallPoly,
    /// The same polynomial before setting the base-cone coefficients to zero.
    pub generic: WallPoly,
    /// Integral primitive multiple with positive leading coefficient.
    pub canonical: WallPoly,
    pub witnesses: Vec<Witness>,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, [", self.poly)?;
        for (i, w) in self.witnesses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]]")
    }
}

/// One coordinate of a chamber signature: a distinct wall polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureSlot {
    pub poly: WallPoly,
    pub kinds: Vec<WallKind>,
}

/// Signs of every distinct wall polynomial at a divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChamberSignature(pub Vec<i8>);

impl ChamberSignature {
    /// No wall vanishes here.
    pub fn is_generic(&self) -> bool {
        self.0.iter().all(|&s| s != 0)
    }

    /// Slots where the two signatures differ or one vanishes.
    pub fn differences(&self, other: &ChamberSignature) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&i| self.0[i] != other.0[i] || self.0[i] == 0)
            .collect()
    }
}

impl fmt::Display for ChamberSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

/// `W_1 ⊇ W_2`.
pub fn subspace_contains(w1: &SubspaceBasis, w2: &SubspaceBasis) -> bool {
    w1.contains_subspace(w2)
}

fn push_grouped(
    walls: &mut Vec<Wall>,
    kind: WallKind,
    generic: WallPoly,
    poly: WallPoly,
    witness: Witness,
) {
    let canonical = poly.canonical();
    match walls.iter_mut().find(|w| w.canonical == canonical) {
        Some(w) => w.witnesses.push(witness),
        None => walls.push(Wall {
            kind,
            poly,
            generic,
            canonical,
            witnesses: vec![witness],
        }),
    }
}

/// Linear walls meeting the open ample cone, in enumeration order.
pub fn type_one_walls(table: &PotentialTable, cone: &AmpleCone) -> Vec<Wall> {
    let fan = table.fan();
    let basis = cone.basis();
    let zeroed = basis.zeroed();
    let family = table.state_sets();
    let singles: Vec<usize> = (0..fan.n_rays())
        .filter(|&j| family.contains(&RaySet::from_indices([j])))
        .collect();
    let mut walls = Vec::new();
    for &z in family {
        let entry = table.entry(z).expect("member of the family");
        let dz = entry.subspace.dim();
        for &j in &singles {
            if z.contains(j) || dz != w_subspace(fan, z.with(j)).dim() + 1 {
                continue;
            }
            let generic = entry.vector.slot(j).neg();
            let nu = generic.restrict(&zeroed);
            if nu.is_zero() {
                continue;
            }
            let f = basis.project(&nu.0);
            if cone.in_nef_dual(&f) || cone.in_nef_dual(&f.neg()) {
                continue;
            }
            push_grouped(
                &mut walls,
                WallKind::TypeOne,
                WallPoly::Linear(generic),
                WallPoly::Linear(nu),
                Witness::TypeOne { z, ray: j },
            );
        }
    }
    walls
}

/// Quadratic walls for every pair of entries with incomparable subspaces.
/// The polynomial of the pair `(i, j)`, `i < j`, is `norm2_i - norm2_j`.
pub fn type_two_walls(table: &PotentialTable, basis: &PicBasis) -> Vec<Wall> {
    let zeroed = basis.zeroed();
    let entries = table.entries();
    let mut walls = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (a, b) = (&entries[i], &entries[j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if subspace_contains(&a.subspace, &b.subspace)
                || subspace_contains(&b.subspace, &a.subspace)
            {
                continue;
            }
            let generic = a.norm2.sub(&b.norm2);
            let q = generic.restrict(&zeroed);
            if q.is_zero() {
                continue;
            }
            push_grouped(
                &mut walls,
                WallKind::TypeTwo,
                WallPoly::Quadratic(generic),
                WallPoly::Quadratic(q),
                Witness::TypeTwo {
                    first: i,
                    second: j,
                    first_members: a.members.clone(),
                    second_members: b.members.clone(),
                },
            );
        }
    }
    walls
}

/// All walls of a fan in one Picard basis, with the distinct polynomials
/// used for chamber signatures.
#[derive(Clone, Debug, Serialize)]
pub struct WallAtlas {
    pub type_one: Vec<Wall>,
    pub type_two: Vec<Wall>,
    pub slots: Vec<SignatureSlot>,
}

impl WallAtlas {
    pub fn build(table: &PotentialTable, cone: &AmpleCone) -> Self {
        let type_one = type_one_walls(table, cone);
        let type_two = type_two_walls(table, cone.basis());
        let mut slots: Vec<SignatureSlot> = Vec::new();
        for w in type_one.iter().chain(&type_two) {
            match slots.iter_mut().find(|s| s.poly == w.canonical) {
                Some(s) => {
                    if !s.kinds.contains(&w.kind) {
                        s.kinds.push(w.kind);
                    }
                }
                None => slots.push(SignatureSlot {
                    poly: w.canonical.clone(),
                    kinds: vec![w.kind],
                }),
            }
        }
        WallAtlas {
            type_one,
            type_two,
            slots,
        }
    }

    pub fn walls(&self) -> impl Iterator<Item = &Wall> {
        self.type_one.iter().chain(&self.type_two)
    }

    /// The type-two wall separating the entries of `z1` and `z2`, if any.
    pub fn type_two_between(
        &self,
        table: &PotentialTable,
        z1: StateSet,
        z2: StateSet,
    ) -> Option<&Wall> {
        let (i, j) = (table.entry_index(z1).ok()?, table.entry_index(z2).ok()?);
        let (i, j) = (i.min(j), i.max(j));
        self.type_two.iter().find(|w| {
            w.witnesses
                .iter()
                .any(|x| matches!(x, Witness::TypeTwo { first, second, .. } if *first == i && *second == j))
        })
    }

    /// Index of the signature slot holding a polynomial proportional to `p`.
    pub fn slot_of(&self, p: &WallPoly) -> Option<usize> {
        let c = p.canonical();
        self.slots.iter().position(|s| s.poly == c)
    }
}

/// Signs of every distinct wall polynomial at a divisor supported on the
/// free rays of the atlas's Picard basis.
pub fn chamber_signature(atlas: &WallAtlas, d: &Divisor) -> ChamberSignature {
    ChamberSignature(
        atlas
            .slots
            .iter()
            .map(|s| {
                let v = s.poly.eval(&d.0);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect(),
    )
}

/// Heuristic: for each type-two wall, whether its sign changes across
/// `samples` random ample divisors. `false` suggests the wall misses the
/// ample cone but proves nothing.
pub fn probe_type_two(atlas: &WallAtlas, cone: &AmpleCone, samples: usize, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<QVec> = (0..samples)
        .map(|_| cone.sample(&mut rng, 1000).0)
        .collect();
    atlas
        .type_two
        .iter()
        .map(|w| {
            let signs: Vec<bool> = points
                .iter()
                .map(|p| w.poly.eval(p))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.iter().any(|&s| s) && signs.iter().any(|&s| !s)
        })
        .collect()
}
