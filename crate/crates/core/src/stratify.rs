//! Kempf-Ness stratifications of the unstable locus at a fixed ample divisor.
//!
//! The unstable locus is the union of the coordinate strata `L_S` over the
//! state sets `S`; `L_S` and `L_T` lie in the same stratum exactly when
//! `λ^D_S = λ^D_T`. Strata are ordered by the norm of their one-parameter
//! subgroup, and the semistable locus sits at the bottom.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::fan::{check_amply_equivalent, RayBijection, RaySet, StateSet};
use crate::instability::{ser_qvec, ser_rat, PotentialTable};
use crate::linalg::{QVec, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// State sets whose coordinate strata make up this stratum; empty for
    /// the semistable locus.
    pub members: Vec<StateSet>,
    /// The adapted one-parameter subgroup (zero for the semistable locus).
    #[serde(serialize_with = "ser_qvec")]
    pub lambda: QVec,
    #[serde(serialize_with = "ser_rat")]
    pub norm2: Rat,
    pub semistable: bool,
}

impl Stratum {
    /// Node label: the member sets as a tuple of tuples, or `ss`.
    pub fn label(&self) -> String {
        if self.semistable {
            return "ss".into();
        }
        let parts: Vec<String> = self
            .members
            .iter()
            .map(|s| match s.len() {
                0 => "()".into(),
                1 => format!("({},)", s.to_vec()[0]),
                _ => format!(
                    "({})",
                    s.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            })
            .collect();
        if parts.len() == 1 {
            format!("({},)", parts[0])
        } else {
            format!("({})", parts.join(", "))
        }
    }
}

/// All strata at one divisor, highest norm first; the semistable stratum is last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    pub divisor: Divisor,
    pub strata: Vec<Stratum>,
}

/// How two stratifications differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variation {
    Equivalent,
    /// The partitions of the state-set family differ.
    TypeOne,
    /// Same partition, different order.
    TypeTwo,
}

impl fmt::Display for Variation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variation::Equivalent => "equivalent",
            Variation::TypeOne => "type_one",
            Variation::TypeTwo => "type_two",
        })
    }
}

/// Hasse diagram of the stratum order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poset {
    pub nodes: Vec<String>,
    /// `(upper, lower)` index pairs of covering relations.
    pub covers: Vec<(usize, usize)>,
    /// Hasse height of each node; strata of equal norm share a level.
    pub levels: Vec<usize>,
}

impl Poset {
    /// Graphviz rendering, edges pointing down.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strata {\n  rankdir=TB;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{n}\"];\n"));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        let top = self.levels.iter().max().copied().unwrap_or(0);
        for level in 0..=top {
            let same: Vec<String> = (0..self.nodes.len())
                .filter(|&i| self.levels[i] == level)
                .map(|i| format!("n{i}"))
                .collect();
            if same.len() > 1 {
                out.push_str(&format!("  {{ rank=same; {}; }}\n", same.join("; ")));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Groups the state-set family by adapted one-parameter subgroup.
pub fn stratify(table: &PotentialTable, d: &Divisor) -> Result<Stratification> {
    table.require_ample(d)?;
    let mut strata: Vec<Stratum> = Vec::new();
    let mut by_lambda: HashMap<QVec, usize> = HashMap::new();
    for &s in table.state_sets() {
        let a = table.adapted_unchecked(s, d)?;
        match by_lambda.get(&a.lambda) {
            Some(&i) => strata[i].members.push(s),
            None => {
                by_lambda.insert(a.lambda.clone(), strata.len());
                strata.push(Stratum {
                    members: vec![s],
                    lambda: a.lambda,
                    norm2: a.norm2,
                    semistable: false,
                });
            }
        }
    }
    strata.sort_by(|a, b| {
        b.norm2
            .cmp(&a.norm2)
            .then_with(|| a.members.cmp(&b.members))
    });
    strata.push(Stratum {
        members: Vec::new(),
        lambda: QVec::zeros(table.fan().n_rays()),
        norm2: Rat::zero(),
        semistable: true,
    });
    Ok(Stratification {
        divisor: d.clone(),
        strata,
    })
}

impl Stratification {
    /// Unstable strata only.
    pub fn unstable(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| !s.semistable)
    }

    /// The stratum containing the coordinate stratum of `s`.
    pub fn stratum_of(&self, s: StateSet) -> Option<&Stratum> {
        self.strata.iter().find(|t| t.members.contains(&s))
    }

    /// `a > b` in the stratum order.
    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.strata[a].norm2 > self.strata[b].norm2
    }

    /// The partition of the state-set family, as sorted member lists.
    pub fn partition(&self) -> Vec<Vec<StateSet>> {
        let mut p: Vec<Vec<StateSet>> = self.unstable().map(|s| s.members.clone()).collect();
        p.sort();
        p
    }

    /// Sizes of the levels of equal norm, from the top. Two stratum orders
    /// are isomorphic as unlabeled posets exactly when these agree.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut last: Option<&Rat> = None;
        for s in &self.strata {
            if last == Some(&s.norm2) {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(1);
            }
            last = Some(&s.norm2);
        }
        out
    }
}

/// The Hasse diagram of the stratum order.
pub fn to_poset(strat: &Stratification) -> Poset {
    let n = strat.strata.len();
    let nodes = strat.strata.iter().map(Stratum::label).collect();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if strat.greater(a, b) && !(0..n).any(|c| strat.greater(a, c) && strat.greater(c, b)) {
                covers.push((a, b));
            }
        }
    }
    let mut levels = Vec::with_capacity(n);
    for (i, st) in strat.strata.iter().enumerate() {
        let level = match i {
            0 => 0,
            _ if strat.strata[i - 1].norm2 == st.norm2 => levels[i - 1],
            _ => levels[i - 1] + 1,
        };
        levels.push(level);
    }
    Poset {
        nodes,
        covers,
        levels,
    }
}

fn order_signs(s: &Stratification) -> HashMap<(Vec<StateSet>, Vec<StateSet>), std::cmp::Ordering> {
    let mut out = HashMap::new();
    for a in s.unstable() {
        for b in s.unstable() {
            out.insert(
                (a.members.clone(), b.members.clone()),
                a.norm2.cmp(&b.norm2),
            );
        }
    }
    out
}

/// Same partition of the state-set family and the same order between
/// corresponding strata.
pub fn equivalent(s1: &Stratification, s2: &Stratification) -> bool {
    classify_variation(s1, s2) == Variation::Equivalent
}

pub fn classify_variation(s1: &Stratification, s2: &Stratification) -> Variation {
    if s1.partition() != s2.partition() {
        Variation::TypeOne
    } else if order_signs(s1) != order_signs(s2) {
        Variation::TypeTwo
    } else {
        Variation::Equivalent
    }
}

/// Combinatorial shape of one unstable stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumStructure {
    /// The largest member; the closure is cut out by the other coordinates.
    pub maxset: RaySet,
    /// Inclusion-minimal members.
    pub minimal_sets: Vec<RaySet>,
    /// Coordinates vanishing on the closure: the complement of `maxset`.
    pub closure_zeros: RaySet,
}

impl fmt::Display for StratumStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |s: RaySet| {
            s.iter()
                .map(|i| format!("x{i}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.maxset.is_empty() {
            // only the origin
            return write!(f, "0");
        }
        write!(f, "V({})", v(self.closure_zeros))?;
        for t in self.removed() {
            write!(f, " - V({})", v(t))?;
        }
        Ok(())
    }
}

impl StratumStructure {
    /// The closure minus the stratum is the union of `V(x_t : t in T)` over
    /// these `T`: the minimal sets meeting every minimal member.
    pub fn removed(&self) -> Vec<RaySet> {
        if self.minimal_sets.iter().any(|a| a.is_empty()) {
            return Vec::new();
        }
        let hitting: Vec<RaySet> = self
            .maxset
            .subsets()
            .filter(|t| self.minimal_sets.iter().all(|a| !a.is_disjoint(*t)))
            .collect();
        let mut out: Vec<RaySet> = hitting
            .iter()
            .copied()
            .filter(|&t| !hitting.iter().any(|&u| u != t && u.is_subset(t)))
            .collect();
        out.sort();
        out
    }
}

/// Verifies and returns the shape of `stratum`: a unique largest member `M`
/// equal to `{i : λ_i >= 0}`, and every state set between a minimal member
/// and `M` is a member.
pub fn stratum_structure(n_rays: usize, stratum: &Stratum) -> Result<StratumStructure> {
    let bad = |m: String| Err(Error::StructureViolation(m));
    if stratum.semistable || stratum.members.is_empty() {
        return bad("the semistable stratum has no member sets".into());
    }
    let union = stratum
        .members
        .iter()
        .fold(RaySet::EMPTY, |a, &b| a.union(b));
    if !stratum.members.contains(&union) {
        return bad(format!("union {union} of the members is not a member"));
    }
    let nonneg = RaySet::from_indices((0..n_rays).filter(|&i| !stratum.lambda[i].is_negative()));
    if nonneg != union {
        return bad(format!(
            "largest member {union} differs from the nonnegative support {nonneg}"
        ));
    }
    let minimal: Vec<RaySet> = stratum
        .members
        .iter()
        .copied()
        .filter(|&a| !stratum.members.iter().any(|&b| b != a && b.is_subset(a)))
        .collect();
    for &a in &minimal {
        for extra in union.difference(a).subsets() {
            let b = a.union(extra);
            if !stratum.members.contains(&b) {
                return bad(format!(
                    "{b} lies between {a} and {union} but is not a member"
                ));
            }
        }
    }
    Ok(StratumStructure {
        maxset: union,
        minimal_sets: minimal,
        closure_zeros: RaySet::full(n_rays).difference(union),
    })
}

/// The stratum whose closure is cut out by the coordinates of `c`.
pub fn primitive_collection_stratum(strat: &Stratification, c: RaySet) -> Result<&Stratum> {
    let n = strat.divisor.0.len();
    for s in strat.unstable() {
        if stratum_structure(n, s)?.closure_zeros == c {
            return Ok(s);
        }
    }
    Err(Error::Precondition(format!(
        "no stratum has closure V({c})"
    )))
}

/// For amply equivalent fans, pulls `d2` back along `psi` and checks that the
/// pulled-back divisor is ample and that both stratifications agree after
/// identifying rays, including the one-parameter subgroups and norms.
pub fn adjunction_check(
    table1: &PotentialTable,
    table2: &PotentialTable,
    psi: &RayBijection,
    d2: &Divisor,
) -> Result<bool> {
    if !check_amply_equivalent(table1.fan(), table2.fan(), psi)? {
        return Err(Error::Precondition(
            "fans are not amply equivalent under the bijection".into(),
        ));
    }
    let d1 = Divisor(psi.pull_vector(&d2.0));
    if !table1.is_ample(&d1)? {
        return Ok(false);
    }
    let s1 = stratify(table1, &d1)?;
    let s2 = stratify(table2, d2)?;
    if s1.strata.len() != s2.strata.len() {
        return Ok(false);
    }
    let moved = Stratification {
        divisor: d2.clone(),
        strata: s1
            .strata
            .iter()
            .map(|s| {
                let mut members: Vec<StateSet> = s.members.iter().map(|&m| psi.apply(m)).collect();
                members.sort();
                Stratum {
                    members,
                    lambda: psi.push_vector(&s.lambda),
                    norm2: s.norm2.clone(),
                    semistable: s.semistable,
                }
            })
            .collect(),
    };
    if !equivalent(&moved, &s2) {
        return Ok(false);
    }
    Ok(moved.strata.iter().all(|s| {
        s.semistable
            || s2
                .strata
                .iter()
                .any(|t| t.members == s.members && t.lambda == s.lambda && t.norm2 == s.norm2)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    fn p1p1() -> PotentialTable {
        let f = parse_fan(
            r#"{"rays":[[1,0],[-1,0],[0,1],[0,-1]],"max_cones":[[0,2],[1,2],[1,3],[0,3]]}"#,
        )
        .unwrap();
        PotentialTable::build(&f).unwrap()
    }

    #[test]
    fn p1p1_shapes() {
        let t = p1p1();
        let chain = stratify(&t, &Divisor::from_ints(&[2, 0, 1, 0])).unwrap();
        assert_eq!(chain.level_sizes(), vec![1, 1, 1, 1]);
        let fork = stratify(&t, &Divisor::from_ints(&[1, 0, 1, 0])).unwrap();
        assert_eq!(fork.level_sizes(), vec![1, 2, 1]);
        let swapped = stratify(&t, &Divisor::from_ints(&[1, 0, 2, 0])).unwrap();
        assert_eq!(classify_variation(&chain, &swapped), Variation::TypeTwo);
        assert_eq!(classify_variation(&chain, &fork), Variation::TypeTwo);
        let p = to_poset(&fork);
        assert_eq!(p.covers.len(), 4);
        assert_eq!(p.nodes[0], "((),)");
    }

    #[test]
    fn structures_hold() {
        let t = p1p1();
        let s = stratify(&t, &Divisor::from_ints(&[2, 0, 1, 0])).unwrap();
        for st in s.unstable() {
            stratum_structure(4, st).unwrap();
        }
        let c = RaySet::from_indices([0, 1]);
        let pc = primitive_collection_stratum(&s, c).unwrap();
        assert!(pc.members.contains(&RaySet::from_indices([2, 3])));
    }
}
