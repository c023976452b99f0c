use super::*;
use crate::classify::{c_lambda_mu_subspace, class_subspace, ClassLabel, ClassSet};
use crate::forms::eta_wedge;
use crate::geometry::{abelian_model, heisenberg_model, perturbed_heisenberg_model, random_lie_model, synthetic};
use crate::intrinsic::{d_eta_from_s, reconstruct_h_parallel, IntrinsicData};
use crate::sampling::{gaussian, gaussian_matrix, random_admissible_sp, random_cv, rng};
use crate::space::{inner, norm};
use crate::structure::{random_structure, Structure};
use crate::tensor::Tensor3;
use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn random_metric_difference(st: &Structure, g: &mut ChaCha8Rng) -> Tensor3 {
    let dim = st.dim();
    let endos: Vec<DMatrix<f64>> = (0..dim)
        .map(|_| {
            let k = gaussian_matrix(g, dim, dim);
            (&k - st.adjoint(&k)) * 0.5
        })
        .collect();
    Tensor3::from_fn(dim, |i, j, k| st.lower(&endos[i])[(j, k)])
}

/// A random difference tensor with every `A_X` in 𝔪, the complement of 𝔲(n)⊕0.
fn random_m_valued(st: &Structure, g: &mut ChaCha8Rng) -> Tensor3 {
    let dim = st.dim();
    let pi = st.horizontal_projector();
    let phi = st.phi();
    let endos: Vec<DMatrix<f64>> = (0..dim)
        .map(|_| {
            let k = gaussian_matrix(g, dim, dim);
            let k = (&k - st.adjoint(&k)) * 0.5;
            let u = (&pi * &k * &pi - phi * &k * phi) * 0.5;
            k - u
        })
        .collect();
    Tensor3::from_fn(dim, |i, j, k| st.lower(&endos[i])[(j, k)])
}

fn random_element(label: ClassLabel, st: &Structure, g: &mut ChaCha8Rng) -> Tensor3 {
    let mut out = Tensor3::zeros(st.dim());
    for b in &class_subspace(label, st).basis {
        out.axpy(gaussian(g), b);
    }
    out
}

#[test]
fn zero_tensor_gives_levi_civita() {
    let st = random_structure(2, 1);
    let r = connection_report(&Tensor3::zeros(5), &st, None, TOL);
    assert!(r.levi_civita && r.a.frobenius() == 0.0 && r.t.frobenius() == 0.0);
    assert!(r.characteristic.exists);
}

#[test]
fn minimal_connection_is_adapted_on_lie_models() {
    for n in 1..=2 {
        for seed in 0..30 {
            let m = random_lie_model(n, seed);
            let alpha = m.nabla_phi_tensor();
            let a = minimal_connection(&alpha, m.structure());
            let scale = 1.0 + m.constants().frobenius();
            let r = verify_adapted(&a, &m);
            assert!(r.max() < 1e-9 * scale, "n={n} seed={seed}: {r:?}");
            let d = minimality_defect(&a, &alpha, m.structure());
            assert!(d.metric.max(d.m_valued).max(d.xi_row) < 1e-9 * scale, "{d:?}");
        }
    }
}

#[test]
fn minimal_connection_is_unique() {
    let m = heisenberg_model(2, &[1.0, 0.5]).unwrap();
    let st = m.structure();
    let a = minimal_connection(&m.nabla_phi_tensor(), st);
    assert!(verify_adapted(&Tensor3::zeros(5), &m).phi > 0.1);
    let mut g = rng(77);
    for _ in 0..20 {
        let b = random_m_valued(st, &mut g);
        let r = verify_adapted(&(&a + &b), &m);
        assert!(r.max() > 1e-4);
    }
}

#[test]
fn pointwise_adaptedness_and_minimality_on_random_tensors() {
    for n in 1..=3 {
        let st = random_structure(n, 30 + n as u64);
        for seed in 0..10 {
            let alpha = random_cv(&st, seed);
            let a = minimal_connection(&alpha, &st);
            let scale = 1.0 + norm(&alpha, &st);
            assert!(verify_adapted_pointwise(&a, &alpha, &st).max() < 1e-9 * scale);
            let d = minimality_defect(&a, &alpha, &st);
            assert!(d.metric.max(d.m_valued).max(d.xi_row) < 1e-9 * scale);
        }
    }
}

#[test]
fn h_parallel_formula_matches_general_formula() {
    for n in 1..=3 {
        let st = random_structure(n, 3 * n as u64);
        let mut g = rng(n as u64 + 100);
        for _ in 0..10 {
            let (s, p) = random_admissible_sp(&st, &mut g);
            let alpha = reconstruct_h_parallel(&s, &p, &st).unwrap();
            let general = minimal_connection(&alpha, &st);
            let special = minimal_connection_h_parallel(&s, &p, &st);
            assert!((&general - &special).max_abs() < 1e-10 * (1.0 + general.max_abs()));
        }
    }
}

#[test]
fn torsion_round_trip_and_type_split() {
    let st = random_structure(2, 9);
    let mut g = rng(5);
    for _ in 0..10 {
        let a = random_metric_difference(&st, &mut g);
        let t = torsion_from_difference(&a);
        assert!((&difference_from_torsion(&t) - &a).max_abs() < 1e-12);

        let ty = torsion_type_decompose(&a, &st);
        let sum = &(&ty.a1 + &ty.a2) + &ty.a3;
        assert!((&sum - &a).max_abs() < 1e-12);
        let parts = [&ty.a1, &ty.a2, &ty.a3];
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(inner(parts[i], parts[j], &st).abs() < 1e-10 * norm(&a, &st).powi(2));
            }
        }
        let [n1, n2, n3] = ty.norms(&st);
        assert!((n1 * n1 + n2 * n2 + n3 * n3 - norm(&a, &st).powi(2)).abs() < 1e-10 * norm(&a, &st).powi(2));
        assert!(ty.a1.cyclic_sum().max_abs() < 1e-12 && ty.a2.cyclic_sum().max_abs() < 1e-12);
        assert!(trace_12(&ty.a2, &st).norm() < 1e-12 && trace_12(&ty.a3, &st).norm() < 1e-12);
    }
    assert!(difference_from_torsion(&Tensor3::zeros(5)).frobenius() == 0.0);
}

#[test]
fn pure_types() {
    let st = random_structure(2, 10);
    let data_s = st.phi() * 0.7;
    let skew = eta_wedge(st.eta(), &d_eta_from_s(&st.horizontal_projector(), &st));
    let [n1, n2, _] = torsion_type_decompose(&skew, &st).norms(&st);
    assert!(n1 + n2 < 1e-12);

    let g = st.g();
    let theta = st.eta() * 1.3;
    let vec = Tensor3::from_fn(5, |x, y, z| g[(x, y)] * theta[z] - g[(x, z)] * theta[y]);
    let [_, n2, n3] = torsion_type_decompose(&vec, &st).norms(&st);
    assert!(n2 + n3 < 1e-12);

    let kenmotsu = reconstruct_h_parallel(&data_s, &DMatrix::zeros(5, 5), &st).unwrap();
    let [_, n2, n3] = torsion_type_decompose(&minimal_connection(&kenmotsu, &st), &st).norms(&st);
    assert!(n2 + n3 < 1e-12);
}

#[test]
fn torsion_type_table_holds() {
    for n in 2..=3 {
        let st = random_structure(n, 50 + n as u64);
        for class in 5..=12u8 {
            let check = torsion_type_table_check(class, &st, 1e-8).unwrap();
            assert!(check.passes, "C{class} n={n}: {check:?}");
            assert_eq!(check.seen, check.allowed, "C{class} n={n}");
        }
    }
    assert!(torsion_type_table(3).is_none());
}

#[test]
fn c6_minimal_connection_splits_as_in_the_table() {
    let st = random_structure(2, 61);
    let a0 = 1.7;
    let alpha = reconstruct_h_parallel(&(st.horizontal_projector() * a0), &DMatrix::zeros(5, 5), &st).unwrap();
    let ty = torsion_type_decompose(&minimal_connection(&alpha, &st), &st);
    let eta_phi = eta_wedge(st.eta(), &st.fundamental_form());
    let expected_a3 = &eta_phi * (2.0 * a0 / 3.0);
    let ratio = (&ty.a3 - &expected_a3).max_abs().min((&ty.a3 + &expected_a3).max_abs());
    assert!(ratio < 1e-12);
}

#[test]
fn heisenberg_characteristic_connection() {
    for (n, lambda) in [(1, vec![1.0]), (2, vec![1.0, 1.0]), (2, vec![0.5, -2.0])] {
        let m = heisenberg_model(n, &lambda).unwrap();
        let st = m.structure();
        let alpha = m.nabla_phi_tensor();
        let r = connection_report(&alpha, st, Some(&m), TOL);
        assert!(r.characteristic.exists && r.characteristic.consistent, "{:?}", r.characteristic.criteria);
        assert!(r.characteristic.eta_wedge_d_eta.unwrap().holds);
        assert!(r.characteristic.adapted.unwrap().max() < 1e-9);
        let pt = r.parallel_torsion.unwrap();
        assert!(pt.all_hold(), "{pt:?}");
    }
    let m = heisenberg_model(1, &[1.0]).unwrap();
    let t = characteristic_torsion(&m.nabla_phi_tensor(), m.structure(), Some(&m), TOL).unwrap();
    assert!((t[(2, 0, 1)] + 2.0).abs() < 1e-12 && (t[(0, 1, 2)] + 2.0).abs() < 1e-12);
}

#[test]
fn abelian_has_zero_characteristic_torsion() {
    let m = abelian_model(2);
    let r = connection_report(&m.nabla_phi_tensor(), m.structure(), Some(&m), TOL);
    assert!(r.characteristic.exists);
    assert!(r.characteristic.t.unwrap().frobenius() == 0.0);
    assert!(r.parallel_torsion.unwrap().all_hold());
}

#[test]
fn c9_has_no_characteristic_connection() {
    let st = random_structure(2, 70);
    let alpha = synthetic::c9_tensor(&st, 4);
    let r = connection_report(&alpha, &st, None, TOL);
    assert!(!r.characteristic.exists && r.characteristic.consistent);
    assert!(r.characteristic.t.is_none());
    assert!(characteristic_torsion(&alpha, &st, None, TOL).is_err());
}

#[test]
fn cmin_minimal_and_characteristic_coincide() {
    for n in 2..=3 {
        let st = random_structure(n, 80 + n as u64);
        let alpha = synthetic::cmin_tensor(&st, 2);
        let r = connection_report(&alpha, &st, None, TOL);
        assert!(r.characteristic.exists && r.characteristic.consistent);
        assert!(r.minimal_skew);
        assert!(r.characteristic.matches_minimal.unwrap().holds);
        assert!(r.characteristic.eta_wedge_d_eta.unwrap().holds);
        assert!(r.characteristic.adapted.unwrap().max() < 1e-9);
    }
}

#[test]
fn existence_routes_agree_on_h_parallel_battery() {
    let families: [(&[u8], bool); 9] = [
        (&[6], true),
        (&[7], true),
        (&[6, 7], true),
        (&[5], false),
        (&[8], false),
        (&[9], false),
        (&[10], false),
        (&[11], false),
        (&[12], false),
    ];
    for n in 2..=3 {
        let st = random_structure(n, 90 + n as u64);
        let mut g = rng(n as u64);
        let cmin = c_lambda_mu_subspace(1.0, -2.0, &st).unwrap();
        for _ in 0..5 {
            for (classes, expected) in families {
                let alpha = random_element(ClassLabel::Sum(ClassSet::of(classes)), &st, &mut g);
                let routes = characteristic_exists(&alpha, &st, None, TOL);
                assert_eq!(routes.exists(), expected, "{classes:?}");
                assert!(routes.consistent(), "{classes:?}: {routes:?}");
            }
            let mut alpha = random_element(ClassLabel::Sum(ClassSet::of(&[6, 7])), &st, &mut g);
            for b in &cmin.basis {
                alpha.axpy(gaussian(&mut g), b);
            }
            let routes = characteristic_exists(&alpha, &st, None, TOL);
            assert!(routes.exists() && routes.consistent());
            let t = characteristic_torsion(&alpha, &st, None, TOL).unwrap();
            let data = IntrinsicData::from_alpha(&alpha, &st).unwrap();
            let ew = eta_wedge(st.eta(), &d_eta_from_s(&data.s, &st));
            assert!(norm(&(&t - &ew), &st) < 1e-9 * norm(&alpha, &st));
        }
    }
}

#[test]
fn existence_routes_agree_on_lie_models() {
    for n in 1..=2 {
        for seed in 0..20 {
            let m = random_lie_model(n, seed);
            let routes = characteristic_exists(&m.nabla_phi_tensor(), m.structure(), Some(&m), TOL);
            assert!(routes.consistent(), "n={n} seed={seed}: {routes:?}");
        }
    }
}

#[test]
fn perturbed_heisenberg_breaks_all_three_conditions() {
    for n in 1..=2 {
        let m = perturbed_heisenberg_model(n, &vec![1.0; n], 0.2, 3).unwrap();
        let pt = parallel_torsion_check(&m, TOL);
        assert!(pt.agree() && !pt.i.holds, "{pt:?}");
    }
}
