//! Named examples, addressable from the command line.

use super::lie::LieAlgebraModel;
use super::models::{
    abelian_model, heisenberg_model, kenmotsu_model, perturbed_heisenberg_model, random_lie_model,
    three_alpha_delta_point_model,
};
use super::synthetic::{c9_tensor, cmin_tensor, nearly_cosymplectic_tensor, nearly_sasakian_tensor, symmetric_anticommuting, ThreeClasses};
use crate::error::{AcmsError, Result};
use crate::structure::{canonical_structure, Structure};
use crate::tensor::Tensor3;

/// A point of some almost contact metric space together with its `∇Φ`.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub structure: Structure,
    pub alpha: Tensor3,
    pub model: Option<LieAlgebraModel>,
}

impl Example {
    fn from_model(name: impl Into<String>, m: LieAlgebraModel) -> Self {
        Self { name: name.into(), structure: m.structure().clone(), alpha: m.nabla_phi_tensor(), model: Some(m) }
    }

    fn point(name: impl Into<String>, structure: Structure, alpha: Tensor3) -> Self {
        Self { name: name.into(), structure, alpha, model: None }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExampleParams {
    pub n: Option<usize>,
    pub lambda: Option<Vec<f64>>,
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
    pub seed: u64,
}

/// `(name, description)` of every catalog entry.
pub const CATALOG: &[(&str, &str)] = &[
    ("zero", "the zero tensor on the canonical structure (cokähler)"),
    ("abelian", "abelian Lie algebra with the canonical structure"),
    ("heisenberg", "Heisenberg algebra [τ_i, τ_{n+i}] = 2λ_i ξ (quasi-Sasakian)"),
    ("kenmotsu", "[ξ, X] = −βX on the horizontal part, β = --alpha (β-Kenmotsu)"),
    ("three-alpha-delta", "point model of the three structures of a 3-(α,δ)-Sasaki space, dimension 7"),
    ("nearly-sasakian", "S = −φ² + ⅔h₀, P = −⅔h₀ plus a random C1 part"),
    ("nearly-cosymplectic", "S = ⅔h₀, P = −⅔h₀ plus a random C1 part"),
    ("contact-metric", "H-parallel contact metric tensor, S = −φ² + h₀"),
    ("almost-cokahler", "H-parallel almost cokähler tensor, S = h₀"),
    ("almost-kenmotsu", "H-parallel almost Kenmotsu tensor, S = φ + h₀"),
    ("c9", "S = h₀ symmetric and anticommuting with φ, P = 0"),
    ("cmin", "S skew and anticommuting with φ, P = −2S"),
    ("random-lie", "random almost abelian or 2-step nilpotent algebra with a random structure"),
    ("perturbed-heisenberg", "Heisenberg algebra with a structure rebuilt from a perturbed frame"),
];

fn lambdas(p: &ExampleParams) -> Result<(usize, Vec<f64>)> {
    match (&p.lambda, p.n) {
        (Some(l), Some(n)) if l.len() == 1 && n > 1 => Ok((n, vec![l[0]; n])),
        (Some(l), Some(n)) if l.len() != n => {
            Err(AcmsError::InvalidArgument(format!("--lambda has {} entries but --n is {n}", l.len())))
        }
        (Some(l), _) => Ok((l.len(), l.clone())),
        (None, n) => {
            let n = n.unwrap_or(1);
            Ok((n, vec![1.0; n]))
        }
    }
}

fn dimension(p: &ExampleParams, default: usize) -> Result<usize> {
    let n = p.n.unwrap_or(default);
    if n == 0 {
        return Err(AcmsError::InvalidArgument("n must be at least 1".into()));
    }
    Ok(n)
}

/// Builds the named example; multi-structure entries yield one example per structure.
pub fn catalog_example(name: &str, p: &ExampleParams) -> Result<Vec<Example>> {
    let one = |e: Example| Ok(vec![e]);
    match name {
        "zero" => {
            let n = dimension(p, 2)?;
            one(Example::point("zero", canonical_structure(n), Tensor3::zeros(2 * n + 1)))
        }
        "abelian" => one(Example::from_model("abelian", abelian_model(dimension(p, 1)?))),
        "heisenberg" => {
            let (n, l) = lambdas(p)?;
            one(Example::from_model("heisenberg", heisenberg_model(n, &l)?))
        }
        "kenmotsu" => one(Example::from_model("kenmotsu", kenmotsu_model(dimension(p, 1)?, p.alpha.unwrap_or(1.0)))),
        "three-alpha-delta" => {
            let pts = three_alpha_delta_point_model(p.alpha.unwrap_or(1.0), p.delta.unwrap_or(1.0))?;
            Ok(pts
                .into_iter()
                .enumerate()
                .map(|(i, pt)| {
                    let alpha = pt.alpha();
                    Example::point(format!("three-alpha-delta[{}]", i + 1), pt.structure, alpha)
                })
                .collect())
        }
        "nearly-sasakian" | "nearly-cosymplectic" | "c9" | "cmin" | "contact-metric" | "almost-cokahler"
        | "almost-kenmotsu" => {
            let default_n = if name.starts_with("nearly") { 3 } else { 2 };
            let st = canonical_structure(dimension(p, default_n)?);
            let alpha = match name {
                "nearly-sasakian" => nearly_sasakian_tensor(&st, p.seed),
                "nearly-cosymplectic" => nearly_cosymplectic_tensor(&st, p.seed),
                "c9" => c9_tensor(&st, p.seed),
                "cmin" => cmin_tensor(&st, p.seed),
                _ => {
                    let family = match name {
                        "contact-metric" => ThreeClasses::ContactMetric,
                        "almost-cokahler" => ThreeClasses::AlmostCokahler,
                        _ => ThreeClasses::AlmostKenmotsu,
                    };
                    family.tensor(&symmetric_anticommuting(&st, p.seed), &st)
                }
            };
            one(Example::point(name, st, alpha))
        }
        "random-lie" => one(Example::from_model("random-lie", random_lie_model(dimension(p, 2)?, p.seed))),
        "perturbed-heisenberg" => {
            let (n, l) = lambdas(p)?;
            one(Example::from_model("perturbed-heisenberg", perturbed_heisenberg_model(n, &l, 0.2, p.seed)?))
        }
        other => Err(AcmsError::InvalidArgument(format!("unknown example `{other}`"))),
    }
}

/// Every catalog entry at its default parameters.
pub fn default_catalog() -> Vec<Example> {
    let p = ExampleParams::default();
    CATALOG.iter().flat_map(|(name, _)| catalog_example(name, &p).expect("defaults are valid")).collect()
}

