//! Invariant battery behind `acms selftest`.

use acms::classify::{c_lambda_mu_subspace, class_subspace, classify_full, component_norms, formula_dimension, ClassLabel, ClassSet};
use acms::connections::{characteristic_exists, minimal_connection, torsion_type_table_check, verify_adapted};
use acms::geometry::{heisenberg_model, random_lie_model, two_route_residuals};
use acms::intrinsic::{extract_p, extract_s, reconstruct_h_parallel};
use acms::sampling::{gaussian, random_admissible_sp, random_cv, rng};
use acms::space::{cv_dimension, cv_rank_by_projection, norm};
use acms::structure::validate_structure;
use acms::{random_structure, DEFAULT_CLASS_TOL};
use serde::Serialize;
use std::fmt::Write as _;

const TOL: f64 = 1e-8;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub n: usize,
    pub passed: bool,
    /// Worst residual, or a count of failures.
    pub worst: f64,
}

#[derive(Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn text(&self) -> String {
        let mut t = String::new();
        for c in &self.checks {
            let _ = writeln!(t, "{} n={} {} ({:.2e})", if c.passed { "ok  " } else { "FAIL" }, c.n, c.name, c.worst);
        }
        let _ = writeln!(t, "{} passed, {} failed", self.passed, self.failed);
        t
    }
}

struct Battery {
    n: usize,
    seed: u64,
    fault: bool,
    checks: Vec<Check>,
}

impl Battery {
    fn record(&mut self, name: &str, worst: f64, passed: bool) {
        self.checks.push(Check { name: name.to_string(), n: self.n, passed, worst });
    }

    fn below(&mut self, name: &str, worst: f64, limit: f64) {
        self.record(name, worst, worst < limit);
    }

    fn structures(&mut self) {
        let worst = (0..10)
            .map(|k| validate_structure(&random_structure(self.n, self.seed + k)))
            .filter(|r| !r.is_ok())
            .count();
        self.record("random structures validate", worst as f64, worst == 0);
        let st = random_structure(self.n, self.seed);
        let rank = cv_rank_by_projection(&st);
        self.record("rank of C(V)", rank as f64, rank == cv_dimension(self.n));
    }

    fn dimensions(&mut self) {
        let st = random_structure(self.n, self.seed);
        let mut total = 0;
        let mut bad = 0;
        for i in 1..=12u8 {
            let d = class_subspace(ClassLabel::irreducible(i), &st).dim();
            total += d;
            bad += usize::from(formula_dimension(i, self.n).is_some_and(|f| f != d));
        }
        bad += usize::from(total != cv_dimension(self.n));
        let lm = c_lambda_mu_subspace(1.0, -2.0, &st).map_or(usize::MAX, |s| s.dim());
        bad += usize::from(lm != self.n * self.n - self.n);
        self.record("class dimensions", bad as f64, bad == 0);
    }

    fn parseval(&mut self) {
        let st = random_structure(self.n, self.seed);
        let worst = (0..20)
            .map(|k| {
                let a = random_cv(&st, self.seed * 100 + k);
                let total = norm(&a, &st).powi(2);
                let sum: f64 = component_norms(&a, &st).iter().map(|x| x * x).sum();
                (sum - total).abs() / total
            })
            .fold(0.0, f64::max);
        self.below("Parseval identity", worst, TOL);
    }

    fn flowchart(&mut self) {
        let st = random_structure(self.n, self.seed + 1);
        let mut r = rng(self.seed);
        let mut bad = 0;
        let bases: Vec<_> = (5..=12u8).map(|i| (i, class_subspace(ClassLabel::irreducible(i), &st).basis)).collect();
        for (i, basis) in &bases {
            for b in basis {
                let rep = classify_full(b, &st, DEFAULT_CLASS_TOL);
                bad += usize::from(!rep.agreement || rep.label != ClassSet::single(*i));
            }
        }
        let nonempty: Vec<_> = bases.iter().filter(|(_, b)| !b.is_empty()).collect();
        for k in 0..20 {
            let (i, bi) = nonempty[k % nonempty.len()];
            let (j, bj) = nonempty[(k * 7 + 3) % nonempty.len()];
            let mut a = bi[k % bi.len()].clone();
            a.axpy(1.0 + gaussian(&mut r).abs(), &bj[(k + 1) % bj.len()]);
            let rep = classify_full(&a, &st, DEFAULT_CLASS_TOL);
            bad += usize::from(!rep.agreement || rep.label != ClassSet::of(&[*i, *j]));
        }
        self.record("flowchart agrees with projections", bad as f64, bad == 0);
    }

    fn intrinsic(&mut self) {
        let st = random_structure(self.n, self.seed + 2);
        let mut r = rng(self.seed + 2);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let (s, p) = random_admissible_sp(&st, &mut r);
            let Ok(alpha) = reconstruct_h_parallel(&s, &p, &st) else {
                worst = f64::INFINITY;
                continue;
            };
            let (Ok(s2), Ok(p2)) = (extract_s(&alpha, &st), extract_p(&alpha, &st)) else {
                worst = f64::INFINITY;
                continue;
            };
            let scale = 1.0 + st.endo_norm(&s) + st.endo_norm(&p);
            worst = worst.max((st.endo_norm(&(s2 - &s)) + st.endo_norm(&(p2 - &p))) / scale);
        }
        self.below("(S, P) round trip", worst, TOL);
    }

    fn connections(&mut self) {
        let mut adapted: f64 = 0.0;
        let mut routes: f64 = 0.0;
        for k in 0..10 {
            let m = random_lie_model(self.n, self.seed + k);
            let alpha = m.nabla_phi_tensor();
            let mut a = minimal_connection(&alpha, m.structure());
            if self.fault {
                a = &a * -1.0;
            }
            let scale = 1.0 + norm(&alpha, m.structure());
            adapted = adapted.max(verify_adapted(&a, &m).max() / scale);
            routes = routes.max(two_route_residuals(&m).max());
        }
        self.below("minimal connection is adapted", adapted, TOL);
        self.below("two-route agreement on Lie models", routes, TOL);
    }

    fn torsion_table(&mut self) {
        if self.n < 2 {
            return;
        }
        let st = random_structure(self.n, self.seed + 3);
        let mut worst: f64 = 0.0;
        let mut ok = true;
        for class in 5..=12u8 {
            if let Some(c) = torsion_type_table_check(class, &st, TOL) {
                worst = worst.max(c.off_table);
                ok &= c.passes && c.seen == c.allowed;
            }
        }
        self.record("torsion type table", worst, ok);
    }

    fn characteristic(&mut self) {
        let mut bad = 0;
        let mut cases = Vec::new();
        for k in 0..4 {
            let m = random_lie_model(self.n, self.seed + k);
            cases.push((m.nabla_phi_tensor(), m.structure().clone(), Some(m)));
        }
        let lambda: Vec<f64> = (1..=self.n).map(|i| i as f64).collect();
        if let Ok(m) = heisenberg_model(self.n, &lambda) {
            cases.push((m.nabla_phi_tensor(), m.structure().clone(), Some(m)));
        }
        for (alpha, st, m) in &cases {
            bad += usize::from(!characteristic_exists(alpha, st, m.as_ref(), acms::DEFAULT_TOL).consistent());
        }
        self.record("characteristic existence routes agree", bad as f64, bad == 0);
    }
}

pub fn run(only: Option<usize>, seed: u64, fault: bool) -> SelftestReport {
    let ns: Vec<usize> = match only {
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    let mut checks = Vec::new();
    for n in ns {
        if n == 0 {
            checks.push(Check { name: "n must be at least 1".into(), n, passed: false, worst: 0.0 });
            continue;
        }
        let mut b = Battery { n, seed, fault, checks: Vec::new() };
        b.structures();
        b.dimensions();
        b.parseval();
        b.flowchart();
        b.intrinsic();
        b.connections();
        b.torsion_table();
        b.characteristic();
        checks.extend(b.checks);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    SelftestReport { checks, passed, failed }
}
