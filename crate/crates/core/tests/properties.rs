use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_vsit::ample::AmpleCone;
use toric_vsit::cone::PolyCone;
use toric_vsit::divisor::{picard_basis, Divisor};
use toric_vsit::fan::{check_amply_equivalent, parse_fan, Fan, RayBijection, RaySet};
use toric_vsit::instability::PotentialTable;
use toric_vsit::linalg::{
    integer_solution, inverse, kernel_basis, project_onto, rank, ratio, QMat, QVec, Rat,
    SubspaceBasis,
};
use toric_vsit::stratify::{adjunction_check, equivalent, stratify};

const FIXTURES: [&str; 6] = [
    include_str!("../fixtures/p1xp1.json"),
    include_str!("../fixtures/bl_pt_p2.json"),
    include_str!("../fixtures/bl_pt_hirzebruch.json"),
    include_str!("../fixtures/p2.json"),
    include_str!("../fixtures/p2_weighted.json"),
    include_str!("../fixtures/bl_2pts_p3.json"),
];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn qvec(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(small_rat(), n).prop_map(QVec)
}

fn vector_and_span() -> impl Strategy<Value = (QVec, Vec<QVec>)> {
    (1usize..=6).prop_flat_map(|n| (qvec(n), prop::collection::vec(qvec(n), 0..=n + 1)))
}

fn matrix() -> impl Strategy<Value = QMat> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(qvec(c), r).prop_map(move |rows| QMat::from_rows(c, &rows))
    })
}

fn permuted(fan: &Fan, perm: &[usize]) -> Fan {
    let mut rays = vec![Vec::new(); perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        rays[j] = fan.rays()[i].clone();
    }
    let cones = fan
        .max_cones()
        .iter()
        .map(|c| c.map(perm).to_vec())
        .collect();
    Fan::new(rays, cones).expect("relabelled fan").0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_orthogonal((v, gens) in vector_and_span()) {
        let w = SubspaceBasis::span(v.len(), &gens);
        let p = project_onto(&w, &v);
        let r = v.sub(&p);
        prop_assert_eq!(v.norm2(), p.norm2() + r.norm2());
        prop_assert_eq!(project_onto(&w, &p), p.clone());
        prop_assert!(w.contains(&p));
        prop_assert_eq!(w.projector().mul_vec(&v), p);
        prop_assert!(gens.iter().all(|g| w.contains(g)));
    }

    #[test]
    fn kernel_has_complementary_dimension(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + rank(&m), m.ncols());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn inverse_is_two_sided(m in matrix()) {
        if let Ok(inv) = inverse(&m) {
            prop_assert_eq!(m.nrows(), m.ncols());
            prop_assert_eq!(m.mul(&inv), QMat::identity(m.nrows()));
            prop_assert_eq!(inv.mul(&m), QMat::identity(m.nrows()));
        } else {
            prop_assert!(m.nrows() != m.ncols() || rank(&m) < m.nrows());
        }
    }

    #[test]
    fn integer_solutions_solve(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=3),
        x in prop::collection::vec(-5i64..=5, 3),
    ) {
        let a = QMat::from_ints(&rows);
        let b = a.mul_vec(&QVec::from_ints(&x));
        let y = integer_solution(&a, &b);
        prop_assert!(y.is_some());
        let y: QVec = y.unwrap().into_iter().map(Rat::from_integer).collect();
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn cone_generators_satisfy_facets(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=6),
    ) {
        let gens: Vec<QVec> = gens.iter().map(|g| QVec::from_ints(g)).collect();
        let c = PolyCone::from_generators(3, &gens);
        prop_assert!(gens.iter().all(|g| c.contains(g)));
        prop_assert!(c.rays().iter().all(|r| c.contains(r)));
        let dual = c.dual();
        for y in dual.rays().iter().chain(dual.lineality().vectors()) {
            prop_assert!(gens.iter().all(|g| !y.dot(g).is_negative()));
        }
        let mut back: Vec<QVec> = c.rays().to_vec();
        for l in c.lineality().vectors() {
            back.push(l.clone());
            back.push(l.neg());
        }
        let rebuilt = PolyCone::from_generators(3, &back);
        prop_assert!(gens.iter().all(|g| rebuilt.contains(g)));
        prop_assert_eq!(rebuilt.cone_dim(), c.cone_dim());
    }

    #[test]
    fn rayset_laws(a in 0u64..1 << 12, b in 0u64..1 << 12) {
        let (a, b) = (RaySet::from_indices((0..12).filter(|i| a >> i & 1 == 1)), RaySet::from_indices((0..12).filter(|i| b >> i & 1 == 1)));
        prop_assert_eq!(a.union(b).len() + a.intersection(b).len(), a.len() + b.len());
        prop_assert!(a.difference(b).is_disjoint(b));
        prop_assert_eq!(a.is_subset(b), a.union(b) == b);
        prop_assert_eq!(a.subsets().count(), 1usize << a.len());
        prop_assert_eq!(RaySet::from_indices(a.to_vec()), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_preserves_stratifications(
        which in 0usize..FIXTURES.len(),
        seed in any::<u64>(),
        shuffle in prop::collection::vec(any::<u32>(), 8),
    ) {
        let fan = parse_fan(FIXTURES[which]).unwrap();
        let n = fan.n_rays();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| shuffle[i % shuffle.len()].wrapping_mul(i as u32 + 1));
        let other = permuted(&fan, &perm);
        let psi = RayBijection::new(perm).unwrap();
        prop_assert!(check_amply_equivalent(&fan, &other, &psi).unwrap());

        let t1 = PotentialTable::build(&fan).unwrap();
        let t2 = PotentialTable::build(&other).unwrap();
        let cone = AmpleCone::new(&other, picard_basis(&other, 0).unwrap()).unwrap();
        let d2 = cone.sample(&mut ChaCha8Rng::seed_from_u64(seed), 40);
        prop_assert!(adjunction_check(&t1, &t2, &psi, &d2).unwrap());
    }

    #[test]
    fn stratification_depends_on_the_class_up_to_scale(
        which in 0usize..FIXTURES.len(),
        seed in any::<u64>(),
        m in prop::collection::vec(-5i64..=5, 3),
        t in 1i64..=7,
    ) {
        let fan = parse_fan(FIXTURES[which]).unwrap();
        let table = PotentialTable::build(&fan).unwrap();
        let cone = AmpleCone::new(&fan, picard_basis(&fan, 0).unwrap()).unwrap();
        let d = cone.sample(&mut ChaCha8Rng::seed_from_u64(seed), 40);
        let m = QVec::from_ints(&m[..fan.dim()]);
        let principal: QVec = (0..fan.n_rays()).map(|i| m.dot(&fan.ray(i))).collect();
        let moved = Divisor(d.0.add(&principal));
        let scaled = Divisor(d.0.scale(&ratio(t, 3)));
        let s = stratify(&table, &d).unwrap();
        let s_moved = stratify(&table, &moved).unwrap();
        let s_scaled = stratify(&table, &scaled).unwrap();
        prop_assert!(equivalent(&s, &s_moved));
        prop_assert!(equivalent(&s, &s_scaled));
        let lambdas = |s: &toric_vsit::stratify::Stratification| -> BTreeSet<String> {
            s.strata.iter().map(|x| x.lambda.to_string()).collect()
        };
        prop_assert_eq!(lambdas(&s), lambdas(&s_moved));
    }
}

#[test]
fn fixtures_round_trip_through_json() {
    for text in FIXTURES {
        let fan = parse_fan(text).unwrap();
        assert_eq!(parse_fan(&fan.to_json()).unwrap(), fan);
    }
}
