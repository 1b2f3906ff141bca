//! Randomized exact identity suite over one structure.
//!
//! Trials are independent and seeded from `(seed, trial index)`, so they run in parallel and
//! the assembled report is identical for identical seeds.

use rayon::prelude::*;

use crate::algebra::Scalar;
use crate::exterior::{interior_product, schouten, schouten_rhs, DiffForm, Multivector};
use crate::random::Sampler;
use crate::report::{ConditionReport, Residual};
use crate::structures::{verify_contravariant_identities, verify_duality, CovariantPair, DualPair};
use crate::symmetries::{
    antisymmetrization_identity, canonical_pair, check_generator_conditions, check_symmetry_direct,
    derivation_check_d, derivation_check_lx, find_generators, lambda_split_conditions, leibniz_defect,
    musical_commutation_iff, omega_split_conditions, pair_bracket, pair_to_vector, reduced_bracket,
    theorem_equivalence_check, BracketMode, GeneratorPair, SymmetryTarget,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub degree: u32,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 10, degree: 2, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    /// Set when structure-dependent checks could not run, with the reason.
    pub skipped: Option<String>,
    pub sections: Vec<ConditionReport>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.sections.iter().all(ConditionReport::pass)
    }

    pub fn checks(&self) -> usize {
        self.sections.iter().map(|s| s.entries.len()).sum()
    }
}

fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn trial_seed(seed: u64, trial: usize, salt: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((trial as u64) << 8) ^ salt
}

/// The defining formula of the bracket on a random form, plus graded symmetry, Leibniz and Jacobi.
pub fn schouten_trial(s: &mut Sampler, dim: usize) -> ConditionReport {
    let mut r = ConditionReport::new("Schouten bracket");
    let (p, q, k) = (1 + s.index(2), 1 + s.index(2), 1 + s.index(2));
    let a: Multivector = s.alternating(dim, p);
    let b: Multivector = s.alternating(dim, q);
    let c: Multivector = s.alternating(dim, k);
    let br = |x: &Multivector, y: &Multivector| schouten(x, y).expect("degrees within range");
    let ab = br(&a, &b);

    let beta: DiffForm = s.alternating(dim, p + q - 1);
    let lhs = interior_product(&ab, &beta).expect("matching degrees").as_scalar();
    let rhs = schouten_rhs(&a, &b, &beta).expect("matching degrees");
    r.push("i_[P,Q] beta = defining right-hand side", Residual::Scalar(&lhs - &rhs));
    r.push("[P,Q] - (-1)^(pq) [Q,P] = 0", Residual::Multivector(&ab - &br(&b, &a).scale(&sign(p * q))));
    if p + q + k - 1 <= dim {
        let lhs = br(&a, &b.wedge(&c));
        let rhs = &ab.wedge(&c) + &b.wedge(&br(&a, &c)).scale(&sign(p * q + q));
        r.push("[P,Q^R] - [P,Q]^R - (-1)^(pq+q) Q^[P,R] = 0", Residual::Multivector(&lhs - &rhs));
    }
    if p + q + k - 2 <= dim {
        let jac = [
            br(&a, &br(&b, &c)).scale(&sign(p * (k + 1))),
            br(&b, &br(&c, &a)).scale(&sign(q * (p + 1))),
            br(&c, &ab).scale(&sign(k * (q + 1))),
        ]
        .into_iter()
        .fold(Multivector::zero(dim, p + q + k - 2), |acc, t| &acc + &t);
        r.push("(-1)^(p(r-1)) [P,[Q,R]] + cyclic = 0", Residual::Multivector(jac));
    }
    r
}

fn combine(s: &mut Sampler, basis: &[GeneratorPair], dim: usize) -> GeneratorPair {
    let mut g = GeneratorPair::zero(dim);
    for b in basis {
        let c = s.int(-3, 3);
        if c != 0 {
            g = &g + &b.scale(&Scalar::from_int(c));
        }
    }
    g
}

/// Per-target polynomial generator bases, shared by all trials.
struct Bases {
    by_target: Vec<(SymmetryTarget, Vec<GeneratorPair>)>,
}

impl Bases {
    fn new(dp: &DualPair, degree: u32) -> crate::Result<Self> {
        let by_target = SymmetryTarget::ALL
            .iter()
            .map(|&t| Ok((t, find_generators(dp, t, degree)?)))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(Bases { by_target })
    }

    fn get(&self, t: SymmetryTarget) -> &[GeneratorPair] {
        &self.by_target.iter().find(|(x, _)| *x == t).expect("every target has a basis").1
    }
}

fn equivalence_entries(dp: &DualPair, g: &GeneratorPair, kind: &str, r: &mut ConditionReport) {
    let x = pair_to_vector(dp, g);
    for t in SymmetryTarget::ALL {
        let rep = if t.requires_kernel_representative() { canonical_pair(dp, g) } else { g.clone() };
        let by_conditions = check_generator_conditions(dp, &rep, t).pass();
        let direct = check_symmetry_direct(dp, &x, t).pass();
        r.push_verdict(
            format!("{kind}: conditions for {t} agree with direct Lie derivatives"),
            by_conditions == direct,
            format!("conditions {by_conditions}, direct {direct}"),
        );
    }
    let whole = check_generator_conditions(dp, g, SymmetryTarget::OneForm).pass();
    let split = omega_split_conditions(dp, g).pass();
    r.push_verdict(format!("{kind}: split omega conditions agree with the single one"), whole == split, "");
    let whole = check_generator_conditions(dp, g, SymmetryTarget::Lambda).pass();
    let split = lambda_split_conditions(dp, g).pass();
    r.push_verdict(format!("{kind}: split Lambda conditions agree with the single one"), whole == split, "");
    let eq = theorem_equivalence_check(dp, g).expect("class checked by caller");
    r.push_verdict(
        format!("{kind}: covariant, contravariant and direct verdicts agree"),
        eq.agree(),
        format!("{} / {} / {}", eq.covariant_conditions, eq.contravariant_conditions, eq.direct),
    );
}

fn structure_trial(dp: &DualPair, bases: &Bases, s: &mut Sampler) -> ConditionReport {
    let dim = dp.dim();
    let mut r = ConditionReport::new("structure identities");
    let (g1, g2) = (s.pair(dim), s.pair(dim));

    let b12 = pair_bracket(dp, &g1, &g2).expect("class checked by caller");
    let b21 = pair_bracket(dp, &g2, &g1).expect("class checked by caller");
    let vf = schouten(&pair_to_vector(dp, &g1), &pair_to_vector(dp, &g2)).expect("vector fields");
    r.push("X_[[g1;g2]] = [X_g1, X_g2]", Residual::Multivector(&pair_to_vector(dp, &b12) - &vf));
    r.push(
        "X_[[g1;g2]] + X_[[g2;g1]] = 0",
        Residual::Multivector(&pair_to_vector(dp, &b12) + &pair_to_vector(dp, &b21)),
    );
    r.push("h-part of [[g1;g2]] + [[g2;g1]] = 0", Residual::Scalar(&b12.h + &b21.h));

    let f = s.scalar();
    let lz = leibniz_defect(dp, &g1, &g2, &f).expect("class checked by caller");
    r.push_verdict(
        "[[g1; f g2]] = f [[g1; g2]] + (X_g1.f) g2 (mod omega)",
        lz.anchored_leibniz_holds(),
        "",
    );

    equivalence_entries(dp, &g1, "random pair", &mut r);
    for t in [SymmetryTarget::OneForm, SymmetryTarget::TwoForm, SymmetryTarget::CovPair, SymmetryTarget::Lambda] {
        let basis = bases.get(t);
        if basis.is_empty() {
            continue;
        }
        let g = combine(s, basis, dim);
        equivalence_entries(dp, &g, &format!("{t} generator"), &mut r);
        let perturbed = &g + &s.pair(dim);
        equivalence_entries(dp, &perturbed, &format!("perturbed {t} generator"), &mut r);
    }

    let gis_omega = bases.get(SymmetryTarget::TwoForm);
    let (a, b, c) = (combine(s, gis_omega, dim), combine(s, gis_omega, dim), combine(s, gis_omega, dim));
    r.absorb("", derivation_check_d(dp, &a, &b, &c).expect("generators of Omega"));

    let gis = bases.get(SymmetryTarget::CovPair);
    let (a, b) = (combine(s, gis, dim), combine(s, gis, dim));
    r.absorb("", antisymmetrization_identity(dp, &a, &b).expect("generators of (omega, Omega)"));
    r.absorb("", reduced_bracket(dp, &a, &b, BracketMode::FullSym).expect("generators of (omega, Omega)").report);
    let x = pair_to_vector(dp, &combine(s, gis, dim));
    r.absorb("", derivation_check_lx(dp, &x, &a, &b).expect("symmetry and generators of (omega, Omega)"));

    let random_x: Multivector = s.alternating(dim, 1);
    r.absorb("random X", musical_commutation_iff(dp, &random_x).expect("vector field").report);
    let lambda_basis = bases.get(SymmetryTarget::Lambda);
    let lambda_x = pair_to_vector(dp, &combine(s, lambda_basis, dim));
    r.absorb("Lambda symmetry X", musical_commutation_iff(dp, &lambda_x).expect("vector field").report);
    r
}

/// Duality, the contravariant identities, and `trials` randomized trials.
pub fn run_suite(cov: &CovariantPair, config: SuiteConfig) -> SuiteReport {
    let dim = cov.dim();
    let mut sections = Vec::new();
    let dp = crate::structures::dualize(cov).and_then(|con| {
        let cert = verify_duality(cov, &con)?;
        sections.push(cert.to_report());
        DualPair::from_parts(cov.clone(), con)
    });
    let mut skipped = None;
    let structure = match dp {
        Ok(dp) if dp.class().is_almost_cosymplectic_contact() => {
            sections.push(verify_contravariant_identities(&dp).expect("dual pair on one chart"));
            match Bases::new(&dp, config.degree.min(2)) {
                Ok(bases) => Some((dp, bases)),
                Err(e) => {
                    skipped = Some(format!("generator search failed: {e}"));
                    None
                }
            }
        }
        Ok(dp) => {
            skipped = Some(format!("structure is {}, not almost-cosymplectic-contact", dp.class()));
            None
        }
        Err(e) => {
            skipped = Some(format!("no dual pair: {e}"));
            None
        }
    };

    let trials: Vec<ConditionReport> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut report = ConditionReport::new(format!("trial {t}"));
            let mut s = Sampler::new(trial_seed(config.seed, t, 1), dim, config.degree);
            report.absorb("", schouten_trial(&mut s, dim));
            if let Some((dp, bases)) = &structure {
                let mut s = Sampler::new(trial_seed(config.seed, t, 2), dim, config.degree);
                report.absorb("", structure_trial(dp, bases, &mut s));
            }
            report
        })
        .collect();
    sections.extend(trials);
    SuiteReport { config, skipped, sections }
}

