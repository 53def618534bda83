//! Torus-invariant divisors and their characters.
//!
//! A divisor `D = sum a_i D_i` is a coefficient vector over the rays. Its
//! character `chi_D` pairs with a one-parameter subgroup `lambda` (a vector of
//! the relation space) as `sum a_i lambda_i`; the dual vector `chi*_D` is the
//! orthogonal projection of the coefficient vector onto the relation space.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{relation_lattice, Fan, RaySet};
use crate::linalg::{integer_solution, project_onto, rank_of, solve_particular, QMat, QVec, Rat};
use crate::poly::SymbolicVector;

/// Coefficients of a torus-invariant Q-divisor, one per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor(pub QVec);

impl Divisor {
    pub fn new(coeffs: QVec) -> Self {
        Divisor(coeffs)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Divisor(QVec::from_ints(xs))
    }

    pub fn coeffs(&self) -> &QVec {
        &self.0
    }

    /// `D_i`, the divisor of ray `i`.
    pub fn prime(n_rays: usize, i: usize) -> Self {
        Divisor(QVec::unit(n_rays, i))
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

fn check_len(fan: &Fan, v: &QVec) -> Result<()> {
    if v.len() != fan.n_rays() {
        return Err(Error::DimensionMismatch {
            expected: fan.n_rays(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `<chi_D, lambda> = sum_i a_i lambda_i`.
pub fn pairing(d: &Divisor, lambda: &QVec) -> Rat {
    d.0.dot(lambda)
}

/// `chi*_D`: the projection of the coefficient vector onto the relation space.
pub fn chi_star(fan: &Fan, d: &Divisor) -> Result<QVec> {
    check_len(fan, &d.0)?;
    Ok(project_onto(&relation_lattice(fan), &d.0))
}

/// `chi*_D` as a symbolic vector in the coefficients `a_i`.
pub fn chi_star_symbolic(fan: &Fan) -> SymbolicVector {
    SymbolicVector(relation_lattice(fan).projector())
}

/// Local data `m_sigma` of a Cartier divisor: `<m_sigma, u_i> = -a_i` on each
/// maximal cone. `None` when some cone has no solution (over Q, or over Z
/// when `integral` is set).
pub fn is_cartier(fan: &Fan, d: &Divisor, integral: bool) -> Result<Option<Vec<QVec>>> {
    check_len(fan, &d.0)?;
    if integral && !d.0.iter().all(|x| x.is_integer()) {
        return Ok(None);
    }
    let mut local = Vec::with_capacity(fan.max_cones().len());
    for &c in fan.max_cones() {
        let rows: Vec<QVec> = c.iter().map(|i| fan.ray(i)).collect();
        let a = QMat::from_rows(fan.dim(), &rows);
        let rhs: QVec = c.iter().map(|i| -d.0[i].clone()).collect();
        let m = if integral {
            integer_solution(&a, &rhs).map(|x| x.into_iter().map(Rat::from_integer).collect())
        } else {
            solve_particular(&a, &rhs)
        };
        match m {
            Some(m) => local.push(m),
            None => return Ok(None),
        }
    }
    Ok(Some(local))
}

/// Coordinates on the Picard group obtained by zeroing the coefficients of
/// the rays of a full-dimensional base cone.
///
/// Every Q-Cartier divisor is linearly equivalent to exactly one divisor
/// supported on the free rays, so those coefficients are coordinates on
/// `Pic(X)_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicBasis {
    pub base_cone: usize,
    pub base_rays: RaySet,
    pub free_rays: Vec<usize>,
    n_rays: usize,
}

/// Builds the Picard coordinates for base cone `k`, checking that every free
/// `D_i` is Q-Cartier.
pub fn picard_basis(fan: &Fan, k: usize) -> Result<PicBasis> {
    let Some(&base) = fan.max_cones().get(k) else {
        return Err(Error::BadBaseCone(k));
    };
    let gens: Vec<QVec> = base.iter().map(|i| fan.ray(i)).collect();
    if rank_of(fan.dim(), &gens) != fan.dim() {
        return Err(Error::BadBaseCone(k));
    }
    let free: Vec<usize> = fan.all_rays().difference(base).to_vec();
    for &i in &free {
        if is_cartier(fan, &Divisor::prime(fan.n_rays(), i), false)?.is_none() {
            return Err(Error::ConditionFails { ray: i });
        }
    }
    Ok(PicBasis {
        base_cone: k,
        base_rays: base,
        free_rays: free,
        n_rays: fan.n_rays(),
    })
}

impl PicBasis {
    /// The Picard rank.
    pub fn rank(&self) -> usize {
        self.free_rays.len()
    }

    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    /// Indices whose coefficients are zero in these coordinates.
    pub fn zeroed(&self) -> Vec<usize> {
        self.base_rays.to_vec()
    }

    /// The divisor with the given coefficients on the free rays.
    pub fn embed(&self, coords: &QVec) -> Result<Divisor> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        let mut a = QVec::zeros(self.n_rays);
        for (c, &i) in coords.iter().zip(&self.free_rays) {
            a[i] = c.clone();
        }
        Ok(Divisor(a))
    }

    /// Free-ray coefficients of a divisor already supported on the free rays.
    pub fn coords(&self, d: &Divisor) -> QVec {
        self.free_rays.iter().map(|&i| d.0[i].clone()).collect()
    }

    /// Restricts a vector over all rays to the free rays.
    pub fn project(&self, v: &QVec) -> QVec {
        self.free_rays.iter().map(|&i| v[i].clone()).collect()
    }

    /// The linearly equivalent divisor supported on the free rays.
    pub fn reduce(&self, fan: &Fan, d: &Divisor) -> Result<Divisor> {
        check_len(fan, &d.0)?;
        let rows: Vec<QVec> = self.base_rays.iter().map(|i| fan.ray(i)).collect();
        let a = QMat::from_rows(fan.dim(), &rows);
        let rhs: QVec = self.base_rays.iter().map(|i| d.0[i].clone()).collect();
        let m = solve_particular(&a, &rhs).ok_or_else(|| {
            Error::Precondition("divisor is not Q-Cartier on the base cone".into())
        })?;
        let principal = fan.ray_matrix().mul_vec(&m);
        let out = d.0.sub(&principal);
        debug_assert!(self.base_rays.iter().all(|i| out[i].is_zero()));
        Ok(Divisor(out))
    }
}

/// `1` on the rays of `s`, `0` elsewhere.
pub fn indicator(n: usize, s: RaySet) -> QVec {
    (0..n)
        .map(|i| {
            if s.contains(i) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;
    use crate::linalg::ratio;

    fn blp2() -> Fan {
        parse_fan(r#"{"rays":[[-1,1],[0,1],[1,0],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[0,3]]}"#)
            .unwrap()
    }

    #[test]
    fn pairing_example() {
        let d = Divisor::from_ints(&[1, 2, 0, 0]);
        assert_eq!(pairing(&d, &QVec::from_ints(&[1, 0, 1, 1])), ratio(1, 1));
    }

    #[test]
    fn chi_star_in_relation_coordinates() {
        let f = blp2();
        let d = Divisor::from_ints(&[4, 1, 0, 0]);
        let c = chi_star(&f, &d).unwrap();
        // (2 a0 - a1) / 5 and (-a0 + 3 a1) / 5 on the first two slots
        assert_eq!(c[0], ratio(7, 5));
        assert_eq!(c[1], ratio(-1, 5));
        assert_eq!(chi_star_symbolic(&f).eval(&d.0), c);
    }

    #[test]
    fn cartier_checks() {
        let p2 =
            parse_fan(r#"{"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert!(is_cartier(&p2, &Divisor::from_ints(&[0, 0, 1]), true)
            .unwrap()
            .is_some());
        let w = parse_fan(r#"{"rays":[[2,3],[1,-1],[-3,-2]],"max_cones":[[0,1],[1,2],[0,2]]}"#)
            .unwrap();
        let d = Divisor::from_ints(&[1, 0, 0]);
        assert!(is_cartier(&w, &d, false).unwrap().is_some());
        assert!(is_cartier(&w, &d, true).unwrap().is_none());
    }

    #[test]
    fn picard_basis_and_reduction() {
        let f = blp2();
        let b = picard_basis(&f, 2).unwrap();
        assert_eq!(b.free_rays, vec![0, 1]);
        let d = Divisor::from_ints(&[1, 1, 1, 1]);
        let r = b.reduce(&f, &d).unwrap();
        assert!(r.0[2].is_zero() && r.0[3].is_zero());
        assert_eq!(chi_star(&f, &r).unwrap(), chi_star(&f, &d).unwrap());
        assert!(matches!(picard_basis(&f, 9), Err(Error::BadBaseCone(9))));
    }
}
