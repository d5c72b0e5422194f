use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::*;
use crate::charring::{orbit_sum, TorusMap};
use crate::rootsys::{build_root_datum, LatticeChoice, RootDatum};

fn group(name: &str, label: &str, lattice: LatticeChoice) -> Group {
    Group::new(name, build_root_datum(label, lattice).unwrap()).unwrap()
}

fn map(src: usize, dst: usize, rows: Vec<Vec<i64>>) -> TorusMap {
    TorusMap::new(src, dst, rows).unwrap()
}

fn sp2() -> Diagram {
    let c2 = build_root_datum("C2", LatticeChoice::Standard).unwrap();
    let g = Group::new("Sp(2)", c2.clone()).unwrap();
    let k = Group::subgroup("Sp(1)xSp(1)", &c2, vec![vec![2, 0], vec![0, 2]]).unwrap();
    let h = Group::subgroup("Sp(1)xU(1)", &c2, vec![vec![2, 0]]).unwrap();
    Diagram::full_rank(g, k.clone(), k, h, [2, 2]).unwrap()
}

fn suspension(label: &str) -> Diagram {
    let g = group("G", label, LatticeChoice::Weight);
    Diagram::full_rank(g.clone(), g.clone(), g.clone(), g, [0, 0]).unwrap()
}

#[test]
fn point_suspension() {
    let t = Group::new("1", RootDatum::trivial()).unwrap();
    let d = Diagram::full_rank(t.clone(), t.clone(), t.clone(), t, [0, 0]).unwrap();
    let w = d.windows(3, 3).unwrap();
    let p = mv_presentation(&d, &w).unwrap();
    assert_eq!(p.k0_rank(), 1);
    assert!(p.k1.is_trivial());
}

#[test]
fn suspension_gives_rg() {
    let d = suspension("A2");
    let w = d.windows(3, 3).unwrap();
    let p = mv_presentation(&d, &w).unwrap();
    assert!(p.k1.is_trivial());
    assert_eq!(p.k0_rank(), p.rh.len());
    assert!(p.is_exact() && p.fiber_equation_holds());
    // diagonal pairs
    for i in 0..p.k0_rank() {
        let (a, b) = p.k0_pair(i);
        assert_eq!(a, b);
    }
}

#[test]
fn sp2_k1_basis() {
    let d = sp2();
    let w = d.windows(4, 4).unwrap();
    let p = mv_presentation(&d, &w).unwrap();
    assert!(p.k1.torsion.is_empty());
    let expect: Vec<Vec<i64>> = w.h.weights.iter().filter(|x| x[0] >= 0 && x[1] > 0).cloned().collect();
    let mut reps: Vec<Vec<i64>> = p.k1_representatives().into_iter().cloned().collect();
    reps.sort();
    assert_eq!(reps, expect);
    assert_eq!(p.k1.free_rank, expect.len());
    // K⁰: both components equal, and restriction agrees
    assert!(p.fiber_equation_holds() && p.is_exact());
    for i in 0..p.k0_rank() {
        let (a, b) = p.k0_pair(i);
        assert_eq!(a, b);
    }
    assert!(formality_rank_check(&d));
}

#[test]
fn unit_acts_trivially_and_action_is_well_defined() {
    let d = sp2();
    let w = d.windows(4, 4).unwrap();
    let p = mv_presentation(&d, &w).unwrap();
    let n = p.rk_minus.len();
    let zero = vec![0i64; 2];
    let mut unit = vec![BigInt::zero(); n + p.rk_plus.len()];
    unit[p.rk_minus.orbit_index(&zero).unwrap()] = BigInt::one();
    unit[n + p.rk_plus.orbit_index(&zero).unwrap()] = BigInt::one();
    for j in 0..p.k1_generator_count() {
        let mut e = vec![BigInt::zero(); p.k1_generator_count()];
        e[j] = BigInt::one();
        assert_eq!(k1_module_action(&p, &unit, &e).unwrap(), e);
    }
    // changing a representative by an image element leaves σ·x unchanged
    let sigma = orbit_sum(&[1, 0], &d.k_minus.weyl);
    let gen = p.k1_lift(&{
        let mut e = vec![BigInt::zero(); p.k1_generator_count()];
        e[0] = BigInt::one();
        e
    });
    let base = p.act_on_rh(&sigma, &gen).unwrap();
    let shifted: Vec<BigInt> = gen.iter().zip(p.f_minus.column(0)).map(|(a, b)| a + b).collect();
    assert_eq!(p.act_on_rh(&sigma, &shifted).unwrap(), base);
    // odd × odd vanishes
    assert!(p.odd_times_odd(&gen, &gen).iter().all(Zero::is_zero));
}

#[test]
fn action_table_has_entries() {
    let d = sp2();
    let w = d.windows(3, 3).unwrap();
    let p = mv_presentation(&d, &w).unwrap();
    assert_eq!(p.action_table.len(), p.k0_rank() * p.k1_generator_count());
    assert!(p.action_table.values().any(|e| matches!(e, ActionEntry::Value(_))));
    assert!(p.action_table.values().any(|e| matches!(e, ActionEntry::Escaped)));
}

#[test]
fn sp2_even_case_is_free_cyclic() {
    let d = sp2();
    let w = d.windows(4, 4).unwrap();
    let (_, r) = even_case(&d, &w).unwrap();
    assert_eq!(r.shift.lambda0, vec![0, 1]);
    assert!(r.representatives_match);
    assert!(r.certified, "{r:?}");
    assert_eq!(r.rank_two, [Some(true), Some(true)]);
}

#[test]
fn rank_two() {
    let d = sp2();
    assert!(check_rank_two(&d.k_minus, &d.h).unwrap());
    assert!(!check_rank_two(&d.h, &d.h).unwrap());
    let g = group("Spin(9)", "B4", LatticeChoice::Standard);
    let d4 = Group::subgroup(
        "Spin(8)",
        &g.datum,
        vec![vec![2, -2, 0, 0], vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 2, 2]],
    )
    .unwrap();
    assert!(check_rank_two(&g, &d4).unwrap());
    assert!(check_rank_two(&d4, &g).is_err());
}

#[test]
fn validation_rejects_bad_diagrams() {
    let c2 = build_root_datum("C2", LatticeChoice::Standard).unwrap();
    let g = Group::new("Sp(2)", c2.clone()).unwrap();
    let k = Group::subgroup("K", &c2, vec![vec![2, 0], vec![0, 2]]).unwrap();
    let h = Group::subgroup("H", &c2, vec![vec![2, 0]]).unwrap();
    assert!(matches!(
        Diagram::full_rank(g.clone(), k.clone(), k.clone(), h.clone(), [2, 4]),
        Err(crate::Error::Semantic(_))
    ));
    // H not inside K
    let h2 = Group::subgroup("H", &c2, vec![vec![1, -1]]).unwrap();
    assert!(Diagram::full_rank(g, k.clone(), k, h2, [2, 2]).is_err());
}

fn a1() -> Group {
    group("SU(2)", "A1", LatticeChoice::Weight)
}

fn torus(n: usize) -> Group {
    if n == 0 {
        return Group::new("1", RootDatum::trivial()).unwrap();
    }
    group(&format!("T{n}"), &format!("T{n}"), LatticeChoice::Standard)
}

#[test]
fn circle_and_even_sphere() {
    let g = group("SU(2)xU(1)", "A1xT1", LatticeChoice::Weight);
    let d = Diagram::new(
        g,
        a1(),
        torus(2),
        torus(1),
        map(2, 1, vec![vec![1, 0]]),
        TorusMap::identity(2),
        TorusMap::identity(1),
        map(2, 1, vec![vec![1, 0]]),
        [2, 1],
    )
    .unwrap();
    assert!(formality_rank_check(&d));
    let w = d.windows(3, 6).unwrap();
    let (p, r) = odd_case(&d, &w).unwrap();
    assert_eq!(r.shape, OddShape::CircleAndEven);
    assert_eq!(r.sides[0].weight, vec![0, 1]);
    assert!(r.certified, "{r:?}");
    assert!(p.k1.is_trivial());
}

#[test]
fn odd_sphere_over_a_point() {
    let d = Diagram::new(
        a1(),
        torus(0),
        a1(),
        torus(0),
        map(1, 0, vec![]),
        TorusMap::identity(1),
        map(0, 0, vec![]),
        map(1, 0, vec![]),
        [0, 3],
    )
    .unwrap()
    .with_rho(Side::Plus, vec![1])
    .unwrap();
    let w = d.windows(0, 6).unwrap();
    let (_, r) = odd_case(&d, &w).unwrap();
    assert_eq!(r.shape, OddShape::SphereAndEven);
    assert!(r.certified, "{r:?}");
}

#[test]
fn two_odd_sides() {
    let two_circles = Diagram::new(
        torus(2),
        torus(1),
        torus(1),
        torus(0),
        map(2, 1, vec![vec![1, 0]]),
        map(2, 1, vec![vec![0, 1]]),
        map(1, 0, vec![]),
        map(1, 0, vec![]),
        [1, 1],
    )
    .unwrap();
    let w = two_circles.windows(0, 4).unwrap();
    let (_, r) = odd_case(&two_circles, &w).unwrap();
    assert_eq!(r.shape, OddShape::TwoCircles);
    assert!(r.certified, "{r:?}");
    assert_eq!(r.cross_relation, Some(true));

    let mixed = Diagram::new(
        group("U(1)xSU(2)", "T1xA1", LatticeChoice::Weight),
        torus(1),
        a1(),
        torus(0),
        map(2, 1, vec![vec![1, 0]]),
        map(2, 1, vec![vec![0, 1]]),
        map(1, 0, vec![]),
        map(1, 0, vec![]),
        [1, 3],
    )
    .unwrap()
    .with_rho(Side::Plus, vec![1])
    .unwrap();
    let (_, r) = odd_case(&mixed, &mixed.windows(0, 4).unwrap()).unwrap();
    assert_eq!(r.shape, OddShape::CircleAndSphere);
    assert!(r.certified, "{r:?}");

    let spheres = Diagram::new(
        group("SU(2)xSU(2)", "A1xA1", LatticeChoice::Weight),
        a1(),
        a1(),
        torus(0),
        map(2, 1, vec![vec![1, 0]]),
        map(2, 1, vec![vec![0, 1]]),
        map(1, 0, vec![]),
        map(1, 0, vec![]),
        [3, 3],
    )
    .unwrap()
    .with_rho(Side::Minus, vec![1])
    .unwrap()
    .with_rho(Side::Plus, vec![1])
    .unwrap();
    let (_, r) = odd_case(&spheres, &spheres.windows(0, 4).unwrap()).unwrap();
    assert_eq!(r.shape, OddShape::TwoSpheres);
    assert!(r.certified, "{r:?}");
}

#[test]
fn odd_case_needs_rho() {
    let d = Diagram::new(
        a1(),
        torus(0),
        a1(),
        torus(0),
        map(1, 0, vec![]),
        TorusMap::identity(1),
        map(0, 0, vec![]),
        map(1, 0, vec![]),
        [0, 3],
    )
    .unwrap();
    assert!(matches!(odd_case(&d, &d.windows(0, 3).unwrap()), Err(crate::Error::Precondition(_))));
    assert!(matches!(even_case(&d, &d.windows(0, 3).unwrap()), Err(crate::Error::Precondition(_))));
}

fn u3_and_su3() -> (Diagram, Diagram) {
    let u3 =
        build_root_datum("A2", LatticeChoice::Explicit(vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]])).unwrap();
    let g = Group::new("U(3)", u3.clone()).unwrap();
    let km = Group::subgroup("U(2)xU(1)", &u3, vec![vec![3, -3, 0]]).unwrap();
    let kp = Group::subgroup("U(1)xU(2)", &u3, vec![vec![0, 3, -3]]).unwrap();
    let h = Group::subgroup("T3", &u3, vec![]).unwrap();
    let big = Diagram::full_rank(g, km, kp, h, [2, 2]).unwrap();
    let su3 = build_root_datum("A2", LatticeChoice::Weight).unwrap();
    let g = Group::new("SU(3)", su3.clone()).unwrap();
    let km = Group::subgroup("S(U(2)xU(1))", &su3, vec![vec![3, -3, 0]]).unwrap();
    let kp = Group::subgroup("S(U(1)xU(2))", &su3, vec![vec![0, 3, -3]]).unwrap();
    let h = Group::subgroup("T2", &su3, vec![]).unwrap();
    let small = Diagram::full_rank(g, km, kp, h, [2, 2]).unwrap();
    (big, small)
}

#[test]
fn factoring_out_the_center_of_u3() {
    let (big, small) = u3_and_su3();
    let split = CentralSplit {
        quotient: map(3, 2, vec![vec![1, -1, 0], vec![0, 1, -1]]),
        degree: vec![vec![1, 1, 1]],
        reduced: small.clone(),
    };
    let (_, cof) = factor_diagram(&big, &split).unwrap();
    assert_eq!(cof, Cofactor { rank: 1, index: BigInt::from(3) });
    let win = small.windows(3, 3).unwrap().h;
    let rt = factor_round_trip(&big, &split, &win, 1).unwrap();
    assert!(rt.holds, "{rt:?}");
    assert_eq!(rt.degrees, 3);
    // identity split
    let id = CentralSplit::identity(&small);
    let rt = factor_round_trip(&small, &id, &win, 0).unwrap();
    assert!(rt.holds);
    // a split whose quotient ignores the Weyl action is rejected
    let bad = CentralSplit { quotient: map(3, 2, vec![vec![1, 0, 0], vec![0, 1, 0]]), ..split };
    assert!(factor_diagram(&big, &bad).is_err());
}
