//! Case certification: exact containment in the defining ideal, radical
//! equality of target and candidate, and an independent finite-field
//! zero-locus oracle, assembled into a machine-readable report.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError, PrimeField, Rationals};
use crate::groebner::{
    normal_form, radical_containment_witness, GbConfig, GbError, Ideal,
};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Ring};
use crate::segre::{CandidateCase, CaseKind, CaseRecipe, SegreError};
use crate::textform;

pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("zero-locus enumeration needs a finite field")]
    NotFinite,
    #[error("enumeration budget exceeded: P^{n}(F_{q}) has {points} points, budget {budget}")]
    EnumerationBudget { n: usize, q: u64, points: u128, budget: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Segre(#[from] SegreError),
}

/// Coefficient field selection, parsed from `Q` or `Fp:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl std::str::FromStr for FieldSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| format!("bad prime in `{s}`"))?;
            PrimeField::new(p).map_err(|e| e.to_string())?;
            return Ok(FieldSpec::Fp(p));
        }
        Err(format!("unknown field `{s}` (use Q or Fp:<prime>)"))
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Q => f.write_str("Q"),
            FieldSpec::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// The F_q-points of a projective variety, canonical representatives only
/// (first nonzero coordinate 1, lexicographic scan order).
#[derive(Debug, Clone)]
pub struct ZeroLocus<F: Field> {
    pub q: u64,
    pub ambient_dim: usize,
    pub points: Vec<Vec<F::Elem>>,
}

fn projective_point_count(q: u64, n: usize) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=n {
        total += power;
        power *= q as u128;
    }
    total
}

/// Exhaustive zero locus of a (finite-field) ideal in P^N, N + 1 the ring
/// arity. Uses only polynomial evaluation, never Gröbner machinery.
pub fn zero_locus<F: Field>(ideal: &Ideal<F>, budget: u64) -> Result<ZeroLocus<F>, VerifyError> {
    let ring = ideal.ring();
    let field = ring.field().clone();
    let q = field.characteristic();
    if q == 0 {
        return Err(VerifyError::NotFinite);
    }
    let n = ring.arity() - 1;
    let total = projective_point_count(q, n);
    if total > budget as u128 {
        return Err(VerifyError::EnumerationBudget { n, q, points: total, budget });
    }
    let gens = ideal.generators();
    let mut points: Vec<Vec<F::Elem>> = Vec::new();
    for pivot in 0..=n {
        let tail = n - pivot;
        let count: u64 = (q as u128).pow(tail as u32) as u64;
        let mut chunk: Vec<Vec<F::Elem>> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let mut coords = vec![field.zero(); n + 1];
                coords[pivot] = field.one();
                let mut rest = idx;
                // Most significant digit first keeps the scan lexicographic.
                for k in (0..tail).rev() {
                    coords[pivot + 1 + k] = field.from_i64((rest % q) as i64);
                    rest /= q;
                }
                let vanishes = gens
                    .iter()
                    .all(|g| field.is_zero(&g.eval(&coords).expect("arity checked")));
                vanishes.then_some(coords)
            })
            .collect();
        points.append(&mut chunk);
    }
    Ok(ZeroLocus { q, ambient_dim: n, points })
}

/// Set equality of two zero loci; on inequality returns a witness point lying
/// in exactly one of them.
pub fn zero_loci_equal<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    budget: u64,
) -> Result<(bool, usize, usize, Option<Vec<F::Elem>>), VerifyError> {
    let za = zero_locus(a, budget)?;
    let zb = zero_locus(b, budget)?;
    // Both enumerations scan in the same deterministic order.
    if za.points == zb.points {
        return Ok((true, za.points.len(), zb.points.len(), None));
    }
    let witness = za
        .points
        .iter()
        .find(|p| !zb.points.contains(p))
        .or_else(|| zb.points.iter().find(|p| !za.points.contains(p)))
        .cloned();
    Ok((false, za.points.len(), zb.points.len(), witness))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub degree: Option<u32>,
    pub curve: String,
    pub candidate_count: usize,
    pub expected_count: usize,
    pub expected_ara: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadicalOutcome {
    Decided(bool),
    /// The literal string "budget exceeded".
    Aborted(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroLocusCheck {
    pub q: u64,
    pub equal: Option<bool>,
    pub target_points: Option<usize>,
    pub candidate_points: Option<usize>,
    pub witness: Option<String>,
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Timings {
    pub construction_ms: u64,
    pub containment_ms: u64,
    pub radical_ms: u64,
    pub oracle_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: CaseDescriptor,
    pub field: String,
    pub containment_exact: bool,
    pub containment_witness: Option<String>,
    pub radical_equal: RadicalOutcome,
    pub radical_witness: Option<String>,
    pub zero_locus_checks: Vec<ZeroLocusCheck>,
    /// True when the symbolic path fully certifies: exact containment plus
    /// radical equality over the configured field.
    pub certified: bool,
    /// True when every non-skipped zero-locus check came back equal.
    pub oracles_ok: bool,
    pub timings: Timings,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub field: FieldSpec,
    pub oracle_primes: Vec<u64>,
    pub budget: u64,
    pub enum_budget: u64,
    /// Skip the symbolic path entirely; only the finite-field oracles run.
    pub oracle_only: bool,
    /// Drop this candidate generator after construction (mutation testing).
    pub drop_candidate: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            field: FieldSpec::Fp(32003),
            oracle_primes: vec![3, 5],
            budget: crate::groebner::DEFAULT_BUDGET,
            enum_budget: DEFAULT_ENUM_BUDGET,
            oracle_only: false,
            drop_candidate: None,
        }
    }
}

/// Membership of `g` in the defining (prime) ideal of the case's variety,
/// decided exactly through the Segre parametrization: substitute
/// z_ij -> x_i*y_j and reduce modulo the hypersurface form. This is the
/// membership the constructions promise; the finitely generated target only
/// contains some candidate generators up to radical.
pub fn defining_ideal_membership<F: Field>(
    g: &Polynomial<F>,
    case: &CandidateCase<F>,
) -> Result<bool, VerifyError> {
    let field = case.ring.field().clone();
    match case.kind {
        CaseKind::Diagonal => {
            // Parametrization z_ij -> x_i * x_j of the diagonal of P^n x P^n.
            let xr = Ring::new(
                field,
                (0..=case.n).map(|i| format!("x{i}")).collect(),
                MonomialOrder::GrevLex,
            )?;
            let mut images = Vec::with_capacity((case.n + 1) * (case.n + 1));
            for i in 0..=case.n {
                for j in 0..=case.n {
                    images.push(
                        Polynomial::var(&xr, i)?.mul(&Polynomial::var(&xr, j)?)?,
                    );
                }
            }
            Ok(g.substitute(&xr, &images)?.is_zero())
        }
        _ => {
            let f = case.curve_used.as_ref().expect("hypersurface cases carry their curve");
            let mixed = Ring::new(
                field,
                (0..=case.n)
                    .map(|i| format!("x{i}"))
                    .chain((0..=case.m).map(|j| format!("y{j}")))
                    .collect(),
                MonomialOrder::GrevLex,
            )?;
            let mut images = Vec::with_capacity((case.n + 1) * (case.m + 1));
            for i in 0..=case.n {
                for j in 0..=case.m {
                    images.push(
                        Polynomial::var(&mixed, i)?
                            .mul(&Polynomial::var(&mixed, case.n + 1 + j)?)?,
                    );
                }
            }
            let image = g.substitute(&mixed, &images)?;
            let f_mixed = f.rename(&mixed, &(0..=case.n).collect::<Vec<_>>())?;
            // A single polynomial is a Gröbner basis of its principal ideal.
            let rem = normal_form(&image, std::slice::from_ref(&f_mixed), &GbConfig::default())?;
            Ok(rem.is_zero())
        }
    }
}

fn descriptor<F: Field>(recipe: &CaseRecipe, case: Option<&CandidateCase<F>>) -> CaseDescriptor {
    CaseDescriptor {
        kind: recipe.kind.to_string(),
        n: recipe.n,
        m: recipe.m,
        degree: case.and_then(|c| c.degree),
        curve: recipe.curve.describe(),
        candidate_count: case.map(|c| c.candidate.generators().len()).unwrap_or(0),
        expected_count: case.map(|c| c.expected_count).unwrap_or(0),
        expected_ara: case.and_then(|c| c.expected_ara.clone()),
    }
}

fn failure_report(recipe: &CaseRecipe, field: String, note: String) -> VerificationReport {
    VerificationReport {
        case: descriptor::<Rationals>(recipe, None),
        field,
        containment_exact: false,
        containment_witness: None,
        radical_equal: RadicalOutcome::Decided(false),
        radical_witness: None,
        zero_locus_checks: Vec::new(),
        certified: false,
        oracles_ok: false,
        timings: Timings::default(),
        notes: vec![note],
    }
}

fn drop_generator<F: Field>(
    ideal: &Ideal<F>,
    idx: Option<usize>,
) -> Result<Ideal<F>, VerifyError> {
    let Some(idx) = idx else {
        return Ok(ideal.clone());
    };
    let gens: Vec<Polynomial<F>> = ideal
        .generators()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, g)| g.clone())
        .collect();
    Ok(Ideal::new(ideal.ring(), gens)?)
}

/// Certifies a case over the configured field and cross-checks with the
/// zero-locus oracles. Failures are recorded in the report, never thrown.
pub fn verify_case(recipe: &CaseRecipe, cfg: &VerifyConfig) -> VerificationReport {
    match cfg.field {
        FieldSpec::Q => verify_over(recipe, Rationals, cfg),
        FieldSpec::Fp(p) => match PrimeField::new(p) {
            Ok(f) => verify_over(recipe, f, cfg),
            Err(e) => failure_report(recipe, format!("Fp:{p}"), format!("bad field: {e}")),
        },
    }
}

fn verify_over<F: Field>(recipe: &CaseRecipe, field: F, cfg: &VerifyConfig) -> VerificationReport {
    let field_name = field.name();
    let t0 = Instant::now();
    let case = match recipe.build(field.clone()) {
        Ok(c) => c,
        Err(e) => {
            return failure_report(recipe, field_name, format!("construction failed: {e}"));
        }
    };
    let candidate = match drop_generator(&case.candidate, cfg.drop_candidate) {
        Ok(c) => c,
        Err(e) => return failure_report(recipe, field_name, format!("mutation failed: {e}")),
    };
    let mut notes = case.notes.clone();
    if let Some(idx) = cfg.drop_candidate {
        notes.push(format!("mutation: candidate generator #{idx} dropped"));
    }
    let mut timings = Timings { construction_ms: ms(t0), ..Timings::default() };

    let gb_cfg = GbConfig { budget: cfg.budget };
    let mut containment_exact = true;
    let mut containment_witness = None;
    let mut radical_equal = RadicalOutcome::Decided(true);
    let mut radical_witness = None;

    if !cfg.oracle_only {
        let t = Instant::now();
        for g in candidate.generators() {
            match defining_ideal_membership(g, &case) {
                Ok(true) => {}
                Ok(false) => {
                    containment_exact = false;
                    containment_witness = Some(textform::print(g));
                    break;
                }
                Err(e) => {
                    containment_exact = false;
                    notes.push(format!("containment check failed: {e}"));
                    break;
                }
            }
        }
        timings.containment_ms = ms(t);

        let t = Instant::now();
        let outcome = radical_containment_witness(&candidate, &case.target, &gb_cfg)
            .and_then(|w| match w {
                Some(w) => Ok(Some(w)),
                None => radical_containment_witness(&case.target, &candidate, &gb_cfg),
            });
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => {
                radical_equal = RadicalOutcome::Decided(false);
                radical_witness = Some(textform::print(&w));
            }
            Err(GbError::BudgetExceeded { spent }) => {
                radical_equal = RadicalOutcome::Aborted("budget exceeded".to_string());
                notes.push(format!("radical check aborted after {spent} reduction steps"));
            }
            Err(e) => {
                radical_equal = RadicalOutcome::Decided(false);
                notes.push(format!("radical check failed: {e}"));
            }
        }
        timings.radical_ms = ms(t);
    }

    let t = Instant::now();
    let zero_locus_checks: Vec<ZeroLocusCheck> = cfg
        .oracle_primes
        .iter()
        .map(|&q| oracle_check(recipe, q, cfg))
        .collect();
    timings.oracle_ms = ms(t);

    let oracles_ok = zero_locus_checks
        .iter()
        .all(|c| c.skipped.is_some() || c.equal == Some(true));
    let certified = !cfg.oracle_only
        && containment_exact
        && radical_equal == RadicalOutcome::Decided(true);
    // Soundness consistency: symbolic equality must never contradict an
    // exhaustive point enumeration.
    if certified {
        assert!(
            oracles_ok,
            "radical_equal holds but a zero-locus oracle disagrees: verifier bug"
        );
    }

    VerificationReport {
        case: descriptor(recipe, Some(&case)),
        field: field_name,
        containment_exact,
        containment_witness,
        radical_equal,
        radical_witness,
        zero_locus_checks,
        certified,
        oracles_ok,
        timings,
        notes,
    }
}

fn oracle_check(recipe: &CaseRecipe, q: u64, cfg: &VerifyConfig) -> ZeroLocusCheck {
    let skipped = |why: String| ZeroLocusCheck {
        q,
        equal: None,
        target_points: None,
        candidate_points: None,
        witness: None,
        skipped: Some(why),
    };
    let field = match PrimeField::new(q) {
        Ok(f) => f,
        Err(e) => return skipped(format!("bad oracle prime: {e}")),
    };
    let case = match recipe.build(field) {
        Ok(c) => c,
        Err(e) => return skipped(format!("construction over F_{q} unavailable: {e}")),
    };
    let candidate = match drop_generator(&case.candidate, cfg.drop_candidate) {
        Ok(c) => c,
        Err(e) => return skipped(format!("mutation failed: {e}")),
    };
    match zero_loci_equal(&case.target, &candidate, cfg.enum_budget) {
        Ok((equal, tp, cp, witness)) => ZeroLocusCheck {
            q,
            equal: Some(equal),
            target_points: Some(tp),
            candidate_points: Some(cp),
            witness: witness.map(|w| format_point(case.ring.field(), &w)),
            skipped: None,
        },
        Err(e) => skipped(format!("enumeration failed: {e}")),
    }
}

fn format_point<F: Field>(field: &F, coords: &[F::Elem]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| field.format(c)).collect();
    format!("[{}]", parts.join(", "))
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}
