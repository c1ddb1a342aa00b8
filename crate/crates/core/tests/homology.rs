mod common;

use common::oracle::connes_hc;
use common::K;
use hopfcyc::builtins;
use hopfcyc::cm::build_cm;
use hopfcyc::homology::{build_bicomplex, induced_map_on_hc, point_module, total_homology};
use hopfcyc::linalg::Matrix;
use hopfcyc::scalar::{Field, FieldSpec, One};
use hopfcyc::simplicial::{hom_transport, CyclicModuleData, Direction, Variance};
use hopfcyc::Error;
use proptest::prelude::RngExt;
use proptest::test_runner::{RngAlgorithm, TestRng};

/// Cyclic cohomology of a point in degrees 0..=4, checked against the oracle below.
const POINT_HC: [usize; 5] = [1, 0, 1, 0, 1];

fn point_cocyclic(top: usize) -> CyclicModuleData<K> {
    point_module::<K>(FieldSpec::Rationals, top).transpose()
}

fn transported(name: &str, pair: &str, top: usize) -> CyclicModuleData<K> {
    let ex = builtins::builtin::<K>(name, None).unwrap();
    let p = build_cm(&ex.hopf, ex.pair(pair).unwrap(), top).unwrap();
    hom_transport(&p, Direction::FromUnit)
}

#[test]
fn point_module_matches_the_oracle() {
    let x = point_cocyclic(7);
    assert_eq!(x.variance, Variance::Cocyclic);
    assert!(x.check().passed());
    assert_eq!(connes_hc(&x)[..5], POINT_HC);
    let bc = build_bicomplex(&x, 7).unwrap();
    assert!(bc.checks.passed(), "{:?}", bc.checks.first_failure());
    for id in ["n=6 DD", "q=6 bb", "q=6 b'b'", "q=6 b(1-l)=(1-l)b'", "q=6 b'N=Nb", "q=6 (1-l)N", "q=6 N(1-l)"] {
        assert!(bc.checks.get(id).is_some(), "{id} missing");
    }
    let rep = total_homology(&bc);
    assert_eq!(rep.homology_dims()[..5], POINT_HC);
    assert!(rep.degrees[..6].iter().all(|d| d.trusted));
    assert_eq!(rep.flagged, vec![6]);
    assert_eq!(rep.variance, "Cocyclic");
}

#[test]
fn requested_bound_is_clamped_by_the_truncation() {
    let bc = build_bicomplex(&point_cocyclic(3), 10).unwrap();
    assert_eq!((bc.effective_bound, bc.requested_bound), (3, 10));
    assert_eq!(bc.degrees().len(), 3);
    assert!(bc.is_trusted(1) && !bc.is_trusted(2));
}

#[test]
fn zero_module_has_no_homology() {
    let top = 4;
    let z = |r: usize, c: usize| Matrix::<K>::zeros(r, c);
    let x = CyclicModuleData {
        variance: Variance::Cyclic,
        field: FieldSpec::Rationals,
        dims: vec![0; top + 1],
        up: (0..=top).map(|n| if n < top { (0..=n).map(|_| z(0, 0)).collect() } else { vec![] }).collect(),
        down: (0..=top).map(|n| if n == 0 { vec![] } else { (0..=n).map(|_| z(0, 0)).collect() }).collect(),
        tau: (0..=top).map(|_| z(0, 0)).collect(),
    };
    let rep = total_homology(&build_bicomplex(&x, top).unwrap());
    assert!(rep.homology_dims().iter().all(|d| *d == 0));
}

#[test]
fn trivial_algebra_transports_to_the_point() {
    let x = transported("trivial", "eu", 5);
    let pt = point_cocyclic(5);
    assert_eq!(x.dims, pt.dims);
    for n in 0..=5 {
        assert_eq!(x.tau[n], pt.tau[n]);
        assert_eq!(x.up[n], pt.up[n]);
        assert_eq!(x.down[n], pt.down[n]);
    }
}

#[test]
fn transported_modules_match_the_oracle() {
    for (name, pair, top) in [("group_c2", "eu", 5), ("sweedler", "eg", 4), ("anyonic_line_q", "eu", 4)] {
        let x = if name == "anyonic_line_q" {
            let ex = builtins::builtin::<K>(name, Some(K::from_i64(-1))).unwrap();
            hom_transport(&build_cm(&ex.hopf, &ex.pairs[0], top).unwrap(), Direction::FromUnit)
        } else {
            transported(name, pair, top)
        };
        let want = connes_hc(&x);
        let rep = total_homology(&build_bicomplex(&x, top).unwrap());
        let trusted: Vec<usize> = rep.degrees.iter().filter(|d| d.trusted).map(|d| d.homology).collect();
        assert_eq!(trusted[..], want[..trusted.len()], "{name}/{pair}");
    }
}

#[test]
fn sweedler_regression_to_degree_six() {
    let x = transported("sweedler", "eg", 6);
    let bc = build_bicomplex(&x, 6).unwrap();
    assert!(bc.checks.passed(), "{:?}", bc.checks.first_failure());
    assert!(bc.checks.get("q=6 bb").is_some());
    let rep = total_homology(&bc);
    assert_eq!(rep.homology_dims(), vec![0, 1, 0, 2, 0, 3]);
    assert_eq!(rep.flagged, vec![5]);
}

#[test]
fn non_cyclic_modules_are_rejected() {
    let x = transported("sweedler", "eu", 3);
    assert!(matches!(build_bicomplex(&x, 3), Err(Error::NotCyclic(_))));
}

/// Upper unitriangular change of basis with small integer entries.
fn random_unitriangular(rng: &mut TestRng, d: usize) -> Matrix<K> {
    let mut t = Vec::new();
    for i in 0..d {
        t.push((i, i, K::one()));
        for j in i + 1..d {
            t.push((i, j, K::from_i64(rng.random_range(-2..=2))));
        }
    }
    Matrix::from_triplets(d, d, t)
}

fn change_basis(x: &CyclicModuleData<K>, p: &[Matrix<K>]) -> CyclicModuleData<K> {
    let inv: Vec<Matrix<K>> = p.iter().map(|m| m.inverse().unwrap()).collect();
    let top = x.top();
    CyclicModuleData {
        variance: x.variance,
        field: x.field,
        dims: x.dims.clone(),
        up: (0..=top).map(|n| x.up[n].iter().map(|s| p[n + 1].mul(s).mul(&inv[n])).collect()).collect(),
        down: (0..=top).map(|n| x.down[n].iter().map(|d| p[n - 1].mul(d).mul(&inv[n])).collect()).collect(),
        tau: (0..=top).map(|n| p[n].mul(&x.tau[n]).mul(&inv[n])).collect(),
    }
}

#[test]
fn homology_is_invariant_under_change_of_basis() {
    let mut rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[11; 32]);
    let x = transported("group_c2", "eu", 4).as_cyclic();
    let p: Vec<Matrix<K>> = x.dims.iter().map(|d| random_unitriangular(&mut rng, *d)).collect();
    let y = change_basis(&x, &p);
    assert!(y.check().passed());
    let hx = total_homology(&build_bicomplex(&x, 4).unwrap());
    let hy = total_homology(&build_bicomplex(&y, 4).unwrap());
    assert_eq!(hx.homology_dims(), hy.homology_dims());
    let maps = induced_map_on_hc(&x, &y, &p, 4).unwrap();
    for (n, m) in maps.iter().enumerate() {
        assert_eq!(m.rank(), hx.degrees[n].homology, "degree {n}");
    }
}

#[test]
fn identity_and_zero_induce_identity_and_zero() {
    let x = transported("group_c2", "eu", 4);
    let id: Vec<Matrix<K>> = x.dims.iter().map(|d| Matrix::identity(*d)).collect();
    let zero: Vec<Matrix<K>> = x.dims.iter().map(|d| Matrix::zeros(*d, *d)).collect();
    let h = total_homology(&build_bicomplex(&x, 4).unwrap()).homology_dims();
    let ids = induced_map_on_hc(&x, &x, &id, 4).unwrap();
    let zs = induced_map_on_hc(&x, &x, &zero, 4).unwrap();
    for n in 0..ids.len() {
        assert!(ids[n].rows() == h[n] && ids[n].is_identity(), "degree {n}");
        assert!(zs[n].is_zero());
    }
}

#[test]
fn maps_that_ignore_tau_are_not_morphisms() {
    let x = transported("group_c2", "eu", 3);
    let mut f: Vec<Matrix<K>> = x.dims.iter().map(|d| Matrix::identity(*d)).collect();
    f[1] = Matrix::from_triplets(2, 2, vec![(0, 0, K::one())]);
    assert!(matches!(induced_map_on_hc(&x, &x, &f, 3), Err(Error::NotAMorphism(_))));
    let cyc = x.transpose();
    let id: Vec<Matrix<K>> = x.dims.iter().map(|d| Matrix::identity(*d)).collect();
    assert!(matches!(induced_map_on_hc(&x, &cyc, &id, 3), Err(Error::NotAMorphism(_))));
}
