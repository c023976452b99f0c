use super::characteristic::torsion_formula;
use crate::geometry::{DefiningTensors, LieAlgebraModel};
use crate::intrinsic::{Flag, IntrinsicData};
use crate::space::norm;
use crate::tensor::Tensor3;
use nalgebra::DVector;
use serde::Serialize;

/// The three conditions, with `X̃ = (S² − hS)X`:
/// (i) `∇T = 0` for `∇ = ∇^g + ½T`;
/// (ii) `R(ξ,X)Y = −η(Y)X̃ + g(X̃,Y)ξ`;
/// (iii) `R(X,Y)ξ = η(Y)X̃ − η(X)Ỹ`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParallelTorsion {
    pub i: Flag,
    pub ii: Flag,
    pub iii: Flag,
}

impl ParallelTorsion {
    pub fn agree(&self) -> bool {
        self.i.holds == self.ii.holds && self.ii.holds == self.iii.holds
    }

    pub fn all_hold(&self) -> bool {
        self.i.holds && self.ii.holds && self.iii.holds
    }
}

/// Evaluates the three conditions on a Lie algebra, with `T` from the torsion formula.
pub fn parallel_torsion_check(m: &LieAlgebraModel, tol: f64) -> ParallelTorsion {
    let st = m.structure();
    let dim = m.dim();
    let t = torsion_formula(&DefiningTensors::from_model(m), st);
    let lc = m.levi_civita();
    let mut nabla_t = 0.0;
    for i in 0..dim {
        let c = lc.endo(i) + st.raise(&t.slice(i)) * 0.5;
        let d: Tensor3 = t.apply(0, &c) + t.apply(1, &c) + t.apply(2, &c);
        nabla_t += norm(&d, st).powi(2);
    }

    let data = IntrinsicData::from_alpha_unchecked(&m.nabla_phi_tensor(), st);
    let tilde = &data.s * &data.s - &data.h * &data.s;
    let r = m.curvature();
    let (xi, eta) = (st.xi(), st.eta());
    let unit = |k: usize| DVector::from_fn(dim, |a, _| f64::from(a == k));
    let (mut ii, mut iii) = (0.0, 0.0);
    for a in 0..dim {
        let x = unit(a);
        let xt = &tilde * &x;
        for b in 0..dim {
            let y = unit(b);
            let yt = &tilde * &y;
            let lhs = r.apply(xi, &x, &y);
            let rhs = -&xt * eta[b] + xi * (st.g() * &xt).dot(&y);
            ii += (lhs - rhs).norm_squared();
            let lhs = r.apply(&x, &y, xi);
            let rhs = &xt * eta[b] - &yt * eta[a];
            iii += (lhs - rhs).norm_squared();
        }
    }
    let scale = 1.0 + r.magnitude(st) + st.endo_norm(&tilde) + norm(&t, st).powi(2);
    let thr = tol * scale;
    ParallelTorsion { i: Flag::new(nabla_t.sqrt(), thr), ii: Flag::new(ii.sqrt(), thr), iii: Flag::new(iii.sqrt(), thr) }
}
