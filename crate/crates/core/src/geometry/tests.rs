use super::*;
use crate::classify::{classify_full, ClassSet};
use crate::intrinsic::IntrinsicData;
use crate::space::cv_residual;
use crate::structure::{validate_structure, Structure};
use crate::tensor::Tensor3;
use crate::DEFAULT_CLASS_TOL;
use nalgebra::{DMatrix, DVector};

fn e(dim: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(dim, |k, _| f64::from(k == i))
}

fn label_of(alpha: &Tensor3, st: &Structure) -> ClassSet {
    let r = classify_full(alpha, st, DEFAULT_CLASS_TOL);
    assert!(r.agreement, "routes disagree");
    r.label
}

#[test]
fn heisenberg_levi_civita_table() {
    let m = heisenberg_model(1, &[1.0]).unwrap();
    let g = m.levi_civita().gamma;
    let expect = [
        ((0, 1, 2), 1.0),
        ((1, 0, 2), -1.0),
        ((0, 2, 1), -1.0),
        ((1, 2, 0), 1.0),
        ((2, 0, 1), -1.0),
        ((2, 1, 0), 1.0),
    ];
    let mut reference = Tensor3::zeros(3);
    for (idx, v) in expect {
        reference[idx] = v;
    }
    assert!((&g - &reference).frobenius() < 1e-14);
}

#[test]
fn abelian_is_flat_and_cokahler() {
    let m = abelian_model(2);
    assert!(m.levi_civita().gamma.frobenius() == 0.0);
    assert!(m.nabla_phi_tensor().frobenius() == 0.0);
    assert!(m.curvature().magnitude(m.structure()) == 0.0);
    assert!(label_of(&m.nabla_phi_tensor(), m.structure()).is_empty());
}

#[test]
fn heisenberg_intrinsic_data() {
    let m = heisenberg_model(1, &[2.0]).unwrap();
    let st = m.structure();
    let data = IntrinsicData::from_alpha(&m.nabla_phi_tensor(), st).unwrap();
    assert!((&data.s - st.horizontal_projector() * 2.0).norm() < 1e-12);
    assert!(data.p.norm() < 1e-12 && data.h.norm() < 1e-12);

    let cases: [(&[f64], &[u8]); 4] = [(&[1.0], &[6]), (&[1.0, 1.0], &[6]), (&[1.0, 2.0], &[6, 7]), (&[1.0, -1.0], &[7])];
    for (lambda, classes) in cases {
        let m = heisenberg_model(lambda.len(), lambda).unwrap();
        assert_eq!(label_of(&m.nabla_phi_tensor(), m.structure()), ClassSet::of(classes), "λ = {lambda:?}");
    }
}

#[test]
fn heisenberg_d_eta_matches_the_closed_form() {
    let m = heisenberg_model(1, &[1.0]).unwrap();
    let mut expected = DMatrix::zeros(3, 3);
    expected[(0, 1)] = -2.0;
    expected[(1, 0)] = 2.0;
    assert!((m.d_eta_bracket() - &expected).norm() < 1e-14);
}

#[test]
fn random_models_give_metric_torsion_free_connections() {
    for n in 1..=3 {
        for seed in 0..6 {
            let m = random_lie_model(n, seed);
            let lc = m.levi_civita();
            let scale = 1.0 + m.constants().frobenius();
            assert!(lc.metric_defect(m.structure()) < 1e-10 * scale);
            assert!(lc.torsion_defect(&m) < 1e-10 * scale);
            assert!(cv_residual(&m.nabla_phi_tensor(), m.structure()) < 1e-9 * scale);
        }
    }
}

#[test]
fn two_routes_agree_on_random_models_and_catalog() {
    for n in 1..=2 {
        for seed in 0..50 {
            let r = two_route_residuals(&random_lie_model(n, seed));
            assert!(r.max() < 1e-8, "n={n} seed={seed}: {r:?}");
        }
    }
    for ex in default_catalog() {
        if let Some(m) = &ex.model {
            let r = two_route_residuals(m);
            assert!(r.max() < 1e-8, "{}: {r:?}", ex.name);
        }
    }
}

#[test]
fn curvature_has_the_riemannian_symmetries() {
    for seed in 0..4 {
        let m = random_lie_model(2, seed);
        let r = m.curvature();
        let scale = 1.0 + r.magnitude(m.structure());
        assert!(r.symmetry_defect() < 1e-10 * scale);
        assert!(r.bianchi_defect() < 1e-10 * scale);
    }
}

#[test]
fn heisenberg_curvature_along_xi() {
    let m = heisenberg_model(1, &[1.0]).unwrap();
    let r = m.curvature();
    let (t1, t2, xi) = (e(3, 0), e(3, 1), e(3, 2));
    assert!(r.apply(&t1, &t2, &xi).norm() < 1e-14);
    assert!((r.apply(&t1, &xi, &xi) - &t1).norm() < 1e-14);

    let m = heisenberg_model(2, &[1.0, -0.5]).unwrap();
    let st = m.structure();
    let s = m.s_direct();
    let s2 = &s * &s;
    let r = m.curvature();
    for i in 0..5 {
        for j in 0..5 {
            let (x, y) = (e(5, i), e(5, j));
            let expected = &s2 * &x * st.eta().dot(&y) - &s2 * &y * st.eta().dot(&x);
            assert!((r.apply(&x, &y, st.xi()) - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn killing_reeb_field_satisfies_the_curvature_identity() {
    let m = heisenberg_model(2, &[1.0, 3.0]).unwrap();
    let st = m.structure();
    let lc = m.levi_civita();
    let psi = m.nabla_xi();
    let r = m.curvature();
    for i in 0..5 {
        let gi = lc.endo(i);
        let nabla_psi = &gi * &psi - &psi * &gi;
        for j in 0..5 {
            let y = e(5, j);
            let lhs = &nabla_psi * &y;
            let rhs = -r.apply(st.xi(), &e(5, i), &y);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}

#[test]
fn predicate_tables() {
    let heis = model_predicates(&heisenberg_model(2, &[1.0, 1.0]).unwrap(), 1e-9);
    assert!(heis.consistent());
    assert!(heis.holds("normal") && heis.holds("xi-killing") && !heis.holds("d-eta-closed"));

    let ab = model_predicates(&abelian_model(2), 1e-9);
    assert!(ab.consistent());
    for name in ["normal", "anti-normal", "xi-killing", "d-eta-closed", "cr-integrable", "h-parallel"] {
        assert!(ab.holds(name), "{name}");
    }

    let st = crate::structure::random_structure(2, 5);
    let c9 = predicates(&synthetic::c9_tensor(&st, 1), &st, 1e-9);
    assert!(c9.consistent());
    assert!(c9.holds("cr-integrable") && !c9.holds("normal"));

    for n in 1..=2 {
        for seed in 0..20 {
            let t = model_predicates(&random_lie_model(n, seed), 1e-9);
            assert!(t.consistent(), "n={n} seed={seed}: {t:?}");
        }
    }
    for ex in default_catalog() {
        let t = match &ex.model {
            Some(m) => model_predicates(m, 1e-9),
            None => predicates(&ex.alpha, &ex.structure, 1e-9),
        };
        assert!(t.consistent(), "{}", ex.name);
    }
}

#[test]
fn three_structures_are_quaternionic() {
    let t = models::three_structure_tensors();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let st = Structure::new(3, DMatrix::identity(7, 7), t[i].0.clone(), t[i].1.clone(), None).unwrap();
        assert!(validate_structure(&st).is_ok());
        let composed = &t[i].0 * &t[j].0 - &t[i].1 * t[j].1.transpose();
        assert!((composed - &t[k].0).norm() < 1e-14, "φ_{k} = φ_{i}φ_{j} − η_{j}⊗ξ_{i}");
    }
}

#[test]
fn three_alpha_delta_classes() {
    let hp = |a: f64, d: f64| -> Vec<ClassSet> {
        three_alpha_delta_point_model(a, d).unwrap().iter().map(|p| label_of(&p.h_parallel, &p.structure)).collect()
    };
    assert!(hp(1.0, 1.0).iter().all(|&l| l == ClassSet::single(6)));
    assert!(hp(1.0, 2.0).iter().all(|&l| l == ClassSet::of(&[6, 7])));
    assert!(hp(1.0, -2.0).iter().all(|&l| l == ClassSet::single(7)));

    for p in three_alpha_delta_point_model(1.0, 2.0).unwrap() {
        assert_eq!(label_of(&p.horizontal, &p.structure), ClassSet::single(3));
        assert_eq!(label_of(&p.alpha(), &p.structure), ClassSet::of(&[3, 6, 7]));
        assert!(p.intrinsic.h.norm() < 1e-14);
    }
    for p in three_alpha_delta_point_model(1.5, 1.5).unwrap() {
        assert_eq!(label_of(&p.alpha(), &p.structure), ClassSet::single(6));
    }
}

#[test]
fn three_classes_families() {
    use synthetic::ThreeClasses;
    let st = crate::structure::random_structure(2, 8);
    let h0 = synthetic::symmetric_anticommuting(&st, 3);
    let expected = [ClassSet::of(&[6, 9]), ClassSet::single(9), ClassSet::of(&[5, 9])];
    for (family, classes) in ThreeClasses::ALL.into_iter().zip(expected) {
        let alpha = family.tensor(&h0, &st);
        let data = IntrinsicData::from_alpha(&alpha, &st).unwrap();
        assert!(st.endo_norm(&(&data.h - &h0)) < 1e-10);
        let nabla_xi = crate::intrinsic::nabla_xi_from_s(&data.s, &st);
        assert!(st.endo_norm(&(nabla_xi - family.expected_nabla_xi(&h0, &st))) < 1e-10);
        assert_eq!(label_of(&alpha, &st), classes, "{family:?}");
        let without_h = family.tensor(&DMatrix::zeros(5, 5), &st);
        let reduced = label_of(&without_h, &st);
        assert!(!reduced.contains(9));
    }
}

#[test]
fn nearly_sasakian_and_cosymplectic() {
    let st = crate::structure::random_structure(3, 12);
    let ns = synthetic::nearly_sasakian_tensor(&st, 4);
    assert_eq!(label_of(&ns, &st), ClassSet::of(&[1, 6, 10, 11]));
    let data = IntrinsicData::from_alpha(&ns, &st).unwrap();
    assert!(st.endo_norm(&(&data.p + &data.h * (2.0 / 3.0))) < 1e-10);

    let nc = synthetic::nearly_cosymplectic_tensor(&st, 4);
    assert_eq!(label_of(&nc, &st), ClassSet::of(&[1, 10, 11]));
    let r = classify_full(&nc, &st, DEFAULT_CLASS_TOL);
    assert_eq!(r.hparallel_label, ClassSet::of(&[10, 11]));
}

#[test]
fn cmin_tensor_has_h_equal_2s() {
    let st = crate::structure::random_structure(2, 21);
    let a = synthetic::cmin_tensor(&st, 2);
    let data = IntrinsicData::from_alpha(&a, &st).unwrap();
    assert!(st.endo_norm(&(&data.h - &data.s * 2.0)) < 1e-10);
    assert_eq!(label_of(&a, &st), ClassSet::of(&[10, 11]));
}

#[test]
fn invalid_constants_are_rejected() {
    let mut c = Tensor3::zeros(3);
    c[(0, 1, 2)] = 1.0;
    assert!(LieAlgebraModel::new(c, crate::structure::canonical_structure(1)).is_err());
    assert!(heisenberg_model(2, &[1.0]).is_err());
    assert!(catalog_example("no-such-example", &ExampleParams::default()).is_err());
}
