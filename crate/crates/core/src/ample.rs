//! The ample cone, in generic coefficients and in Picard coordinates.
//!
//! For a maximal cone `σ` and a ray `j` outside it, write `u_j = sum b_i u_i`
//! over the rays of `σ`; the linear form `a_j - sum b_i a_i` is positive on
//! every ample divisor. These forms, one per pair, cut out the ample cone.

use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

pub use crate::cone::PolyCone;
use crate::divisor::{is_cartier, Divisor, PicBasis};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{parse_rat, rat, solve_particular, QMat, QVec, Rat};
use crate::poly::LinearForm;

/// Ampleness forms in the generic coefficients, deduplicated by primitive
/// normal, in enumeration order.
pub fn ample_inequalities(fan: &Fan) -> Vec<LinearForm> {
    let n = fan.n_rays();
    let mut out: Vec<LinearForm> = Vec::new();
    for &c in fan.max_cones() {
        let gens: Vec<QVec> = c.iter().map(|i| fan.ray(i)).collect();
        let a = QMat::from_cols(fan.dim(), &gens);
        let idx = c.to_vec();
        for j in fan.all_rays().difference(c).iter() {
            let Some(b) = solve_particular(&a, &fan.ray(j)) else {
                continue;
            };
            let mut normal = QVec::unit(n, j);
            for (bi, &i) in b.iter().zip(&idx) {
                normal[i] -= bi;
            }
            let form = LinearForm(normal.primitive());
            if !out.contains(&form) {
                out.push(form);
            }
        }
    }
    out
}

/// Q-Cartier, and every ampleness form is strictly positive.
pub fn is_ample(fan: &Fan, d: &Divisor) -> Result<bool> {
    if is_cartier(fan, d, false)?.is_none() {
        return Ok(false);
    }
    Ok(ample_inequalities(fan)
        .iter()
        .all(|f| f.eval(&d.0).is_positive()))
}

/// The dual cone; its generators are the facet normals of `c` and vice versa.
pub fn dual_cone(c: &PolyCone) -> PolyCone {
    c.dual()
}

/// The ample cone in the coordinates of a Picard basis.
#[derive(Clone, Debug)]
pub struct AmpleCone {
    basis: PicBasis,
    generic: Vec<LinearForm>,
    reduced: Vec<LinearForm>,
    nef: PolyCone,
}

impl AmpleCone {
    /// Fails with [`Error::NonProjective`] if the interior is empty.
    pub fn new(fan: &Fan, basis: PicBasis) -> Result<Self> {
        let generic = ample_inequalities(fan);
        let zeroed = basis.zeroed();
        let mut reduced: Vec<LinearForm> = Vec::new();
        for f in &generic {
            let r = LinearForm(f.restrict(&zeroed).0.primitive());
            if !reduced.contains(&r) {
                reduced.push(r);
            }
        }
        if reduced.iter().any(LinearForm::is_zero) {
            return Err(Error::NonProjective);
        }
        let normals: Vec<QVec> = reduced.iter().map(|f| basis.project(&f.0)).collect();
        let nef = PolyCone::from_inequalities(basis.rank(), normals);
        if !nef.is_strongly_convex() || nef.interior_point().is_none() {
            return Err(Error::NonProjective);
        }
        Ok(AmpleCone {
            basis,
            generic,
            reduced,
            nef,
        })
    }

    pub fn basis(&self) -> &PicBasis {
        &self.basis
    }

    /// Forms in the generic coefficients.
    pub fn generic(&self) -> &[LinearForm] {
        &self.generic
    }

    /// Forms with the base-cone coefficients set to zero, deduplicated.
    pub fn reduced(&self) -> &[LinearForm] {
        &self.reduced
    }

    /// The nef cone in Picard coordinates.
    pub fn nef(&self) -> &PolyCone {
        &self.nef
    }

    /// Irredundant facet normals in Picard coordinates.
    pub fn facets(&self) -> Vec<QVec> {
        self.nef.facets()
    }

    /// Facets as linear forms over all rays.
    pub fn facet_forms(&self) -> Vec<LinearForm> {
        self.facets()
            .iter()
            .map(|f| LinearForm(self.basis.embed(f).expect("rank matches").0))
            .collect()
    }

    /// Ampleness of Picard coordinates.
    pub fn contains_coords(&self, coords: &QVec) -> bool {
        self.nef.strictly_satisfies(coords)
    }

    /// Ampleness of a divisor supported on the free rays.
    pub fn contains(&self, d: &Divisor) -> bool {
        self.reduced.iter().all(|f| f.eval(&d.0).is_positive())
    }

    /// A random ample divisor: a positive integer combination of the nef rays.
    pub fn sample<R: Rng>(&self, rng: &mut R, max_weight: i64) -> Divisor {
        let mut p = QVec::zeros(self.basis.rank());
        for r in self.nef.rays() {
            p = p.add(&r.scale(&rat(rng.random_range(1..=max_weight))));
        }
        self.basis.embed(&p).expect("rank matches")
    }

    /// `f` is in the dual of the nef cone: nonnegative on every nef ray.
    pub fn in_nef_dual(&self, f: &QVec) -> bool {
        self.nef.rays().iter().all(|r| !f.dot(r).is_negative())
    }
}

/// An affine plane `normal . v = level` in Picard coordinates of rank 3,
/// charted by the two coordinates other than `eliminated`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    #[serde(serialize_with = "ser_qvec")]
    pub normal: QVec,
    #[serde(serialize_with = "ser_rat")]
    pub level: Rat,
    pub eliminated: usize,
    pub kept: [usize; 2],
}

fn ser_qvec<S: serde::Serializer>(v: &QVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_rat<S: serde::Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Slice {
    pub fn new(normal: QVec, level: Rat) -> Result<Self> {
        if normal.len() != 3 {
            return Err(Error::DimUnsupported(normal.len()));
        }
        let Some(e) = (0..3)
            .rev()
            .find(|&i| !num_traits::Zero::is_zero(&normal[i]))
        else {
            return Err(Error::Parse("slice normal is zero".into()));
        };
        let kept: Vec<usize> = (0..3).filter(|&i| i != e).collect();
        Ok(Slice {
            normal,
            level,
            eliminated: e,
            kept: [kept[0], kept[1]],
        })
    }

    /// Parses `c0,c1,c2=c`.
    pub fn parse(s: &str) -> Result<Self> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("slice {s:?} needs the form c0,c1,c2=c")))?;
        let normal: QVec = lhs
            .split(',')
            .map(parse_rat)
            .collect::<Result<Vec<_>>>()
            .map(QVec)?;
        Slice::new(normal, parse_rat(rhs)?)
    }

    /// The Picard coordinates of the chart point `(x, y)`.
    pub fn lift(&self, x: &Rat, y: &Rat) -> QVec {
        let mut v = QVec::zeros(3);
        v[self.kept[0]] = x.clone();
        v[self.kept[1]] = y.clone();
        let rest = &self.level - &self.normal.dot(&v);
        v[self.eliminated] = rest / &self.normal[self.eliminated];
        v
    }

    /// Affine substitution as `(constant, coefficient of x, coefficient of y)`
    /// for each Picard coordinate.
    pub fn substitution(&self) -> [[Rat; 3]; 3] {
        let zero = rat(0);
        let one = rat(1);
        let mut out: [[Rat; 3]; 3] =
            std::array::from_fn(|_| [zero.clone(), zero.clone(), zero.clone()]);
        out[self.kept[0]][1] = one.clone();
        out[self.kept[1]][2] = one;
        let e = self.eliminated;
        let c = &self.normal[e];
        out[e] = [
            &self.level / c,
            -&self.normal[self.kept[0]] / c,
            -&self.normal[self.kept[1]] / c,
        ];
        out
    }
}

/// The default slice: the sum of the generators of the dual of the nef cone,
/// set equal to its value at the first nef ray.
pub fn slice_hyperplane(cone: &AmpleCone) -> Result<Slice> {
    let k = cone.basis().rank();
    if k != 3 {
        return Err(Error::DimUnsupported(k));
    }
    let mut f = QVec::zeros(3);
    for g in cone.facets() {
        f = f.add(&g);
    }
    let level = f.dot(&cone.nef().rays()[0]);
    Slice::new(f, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::picard_basis;
    use crate::fan::parse_fan;

    #[test]
    fn p1p1_inequalities() {
        let f = parse_fan(
            r#"{"rays":[[1,0],[-1,0],[0,1],[0,-1]],"max_cones":[[0,2],[1,2],[1,3],[0,3]]}"#,
        )
        .unwrap();
        let g = ample_inequalities(&f);
        assert_eq!(g.len(), 2);
        assert!(g.contains(&LinearForm(QVec::from_ints(&[1, 1, 0, 0]))));
        assert!(g.contains(&LinearForm(QVec::from_ints(&[0, 0, 1, 1]))));
        let cone = AmpleCone::new(&f, picard_basis(&f, 2).unwrap()).unwrap();
        assert_eq!(
            cone.facets(),
            vec![QVec::from_ints(&[0, 1]), QVec::from_ints(&[1, 0])]
        );
        assert!(matches!(
            slice_hyperplane(&cone),
            Err(Error::DimUnsupported(2))
        ));
    }

    #[test]
    fn p2_is_ample_for_positive_degree() {
        let f =
            parse_fan(r#"{"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert!(is_ample(&f, &Divisor::from_ints(&[0, 0, 1])).unwrap());
        assert!(!is_ample(&f, &Divisor::from_ints(&[0, 0, -1])).unwrap());
    }

    #[test]
    fn slice_parse_and_lift() {
        let s = Slice::parse("1,0,1=1").unwrap();
        assert_eq!(s.eliminated, 2);
        assert_eq!(s.kept, [0, 1]);
        let v = s.lift(&rat(1), &rat(5));
        assert_eq!(v, QVec::from_ints(&[1, 5, 0]));
        assert!(Slice::parse("1,0=1").is_err());
    }
}
