//! Sweeps invariants across prime loci and ring families.
//!
//! A *locus* is a homogeneous prime of a presented ring (assumed prime and
//! containing the relations; primality itself is trusted, with the
//! degree-ratio integrality check acting as a tripwire). For each locus the
//! probe computes the localized Hilbert–Kunz series, its normalized and
//! scaled forms, a limit estimate, and a fitted growth cap
//! `λ_q ≤ C·q^ht`. Reports are then cross-compared:
//!
//! * [`semicontinuity_report`] checks the expected orderings — for loci
//!   `P ⊆ m` the limit at the generic point must not exceed the limit at the
//!   special point (plus tolerance), and across a user-declared family of
//!   rings each member's F-signature must not exceed that of the rings it
//!   specializes.
//! * [`uniform_convergence_report`] measures, per `q`, the sup over series
//!   of `|normalized entry − limit estimate|` and fits a log-log decay
//!   slope; the expected slope is −1.
//!
//! Design notes: loci are evaluated as independent pure tasks (optionally in
//! parallel), but every report list is reassembled sorted by label, so the
//! outcome is deterministic regardless of scheduling. Failures of the
//! degree-ratio preconditions mark the individual locus as invalid instead
//! of aborting the sweep; configuration errors abort.

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fsplit::{fsig_series, ParameterChainSpec, SplittingSeries};
use crate::groebner::IdealHandle;
use crate::hilbert::{krull_dim, ring_dimension};
use crate::hk::{ehk_estimate, hk_length, hk_series, BoundFit, BoundWitness, EhkEstimate, HkSeries};
use crate::polyring::RingPresentation;

/// A labeled prime locus with an optional primary-ideal override
/// (default: the prime itself).
#[derive(Debug, Clone)]
pub struct Locus {
    pub label: String,
    pub prime: IdealHandle,
    pub ideal_override: Option<IdealHandle>,
}

impl Locus {
    pub fn new(label: impl Into<String>, prime: IdealHandle) -> Self {
        Locus { label: label.into(), prime, ideal_override: None }
    }

    pub fn with_ideal(mut self, ideal: IdealHandle) -> Self {
        self.ideal_override = Some(ideal);
        self
    }

    fn ideal(&self) -> &IdealHandle {
        self.ideal_override.as_ref().unwrap_or(&self.prime)
    }
}

/// Everything measured at one locus. `series`/`estimate` are absent when
/// the locus was marked invalid; `note` then explains why.
#[derive(Debug, Clone)]
pub struct LocusReport {
    pub locus: Locus,
    /// Height of the prime: `dim R − dim(R/P)`.
    pub ht: usize,
    /// `dim(R/P)` (the α-convention value).
    pub alpha: usize,
    /// `ht + alpha`; equals `dim R` by construction, recorded for display.
    pub gamma: usize,
    /// `λ((R/I(P))_P)`, the `q = 1` length used for scaling.
    pub lambda_1: Option<u64>,
    pub series: Option<HkSeries>,
    /// `λ_q / (q^ht · λ_1)` per `q`.
    pub scaled: Vec<(u64, BigRational)>,
    pub estimate: Option<EhkEstimate>,
    /// Fitted caps; first entry is the growth cap `λ_q ≤ C·q^ht`.
    pub bound_fits: Vec<BoundFit>,
    pub note: Option<String>,
}

impl LocusReport {
    pub fn is_valid(&self) -> bool {
        self.note.is_none()
    }
}

/// A member of a user-declared ring family for F-signature comparisons.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub label: String,
    pub presentation: RingPresentation,
    pub chain: ParameterChainSpec,
    /// Labels of members this one specializes (its F-signature estimate
    /// must be ≤ theirs, up to tolerance).
    pub declared_specializes: Vec<String>,
}

/// One ordering check `lower ≤ upper + tolerance`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCheck {
    pub lower_label: String,
    pub upper_label: String,
    pub lower: BigRational,
    pub upper: BigRational,
    pub ok: bool,
}

/// Outcome of the semicontinuity orderings.
#[derive(Debug, Clone)]
pub struct SemicontinuityReport {
    pub tolerance: BigRational,
    /// Limit-estimate orderings across comparable loci (generic ≤ special).
    pub ehk_checks: Vec<OrderCheck>,
    /// F-signature orderings along declared specializations.
    pub fsig_checks: Vec<OrderCheck>,
    /// F-signature estimates per family member, sorted by label.
    pub family_values: Vec<(String, BigRational)>,
}

impl SemicontinuityReport {
    pub fn violations(&self) -> usize {
        self.ehk_checks
            .iter()
            .chain(self.fsig_checks.iter())
            .filter(|c| !c.ok)
            .count()
    }
}

/// A normalized series with its extrapolated limit, the common input shape
/// for convergence measurement.
#[derive(Debug, Clone)]
pub struct NormalizedSeries {
    pub label: String,
    pub points: Vec<(u64, BigRational)>,
    pub limit: BigRational,
}

impl NormalizedSeries {
    /// Extracts the normalized Hilbert–Kunz data from a locus report, if
    /// the locus was valid and has an estimate.
    pub fn from_locus_report(report: &LocusReport) -> Option<NormalizedSeries> {
        let series = report.series.as_ref()?;
        let estimate = report.estimate.as_ref()?;
        Some(NormalizedSeries {
            label: report.locus.label.clone(),
            points: series.entries.iter().map(|e| (e.q, e.normalized.clone())).collect(),
            limit: estimate.ehk.clone(),
        })
    }

    /// Extracts the normalized splitting data `q ↦ s_q` from a series.
    pub fn from_splitting_series(label: impl Into<String>, series: &SplittingSeries) -> Option<NormalizedSeries> {
        let estimate = series.fsig_estimate.as_ref()?;
        Some(NormalizedSeries {
            label: label.into(),
            points: series.entries.iter().map(|e| (e.q, e.s_q.clone())).collect(),
            limit: estimate.fsig.clone(),
        })
    }
}

/// Per-`q` sup errors and the fitted decay slope.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// For each `q` (ascending): sup over series of `|normalized − limit|`.
    pub sup_errors: Vec<(u64, BigRational)>,
    /// True when every error is exactly zero (the fit is then meaningless).
    pub exact: bool,
    /// Least-squares slope of `log(sup error)` against `log q`, fitted over
    /// the nonzero errors; absent when fewer than two of those exist.
    pub slope: Option<f64>,
    /// Implied constant: `exp(intercept)` of the same fit.
    pub constant: Option<f64>,
    /// The decay the theory predicts.
    pub predicted_slope: f64,
}

/// Aggregated result of a probe job.
#[derive(Debug, Clone)]
pub struct ProbeOutcome {
    /// Per-locus reports, sorted by label.
    pub reports: Vec<LocusReport>,
    /// Splitting series of the base ring, when a system of parameters was
    /// supplied.
    pub splitting: Option<SplittingSeries>,
    pub semicontinuity: SemicontinuityReport,
    /// Present when at least one series was eligible (valid, ≥ 2 entries).
    pub convergence: Option<ConvergenceReport>,
    /// Table-wide maximum of the per-locus growth-cap constants.
    pub growth_constant: Option<BigRational>,
}

// ---------------------------------------------------------------------------
// Locus evaluation
// ---------------------------------------------------------------------------

/// True for error kinds that indicate a locus whose preconditions fail
/// (rather than a malformed job or an engine problem).
fn marks_locus_invalid(err: &Error) -> bool {
    matches!(
        err,
        Error::NonIntegerRatio { .. }
            | Error::RadicalCheckFailed { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotFiniteLength { .. }
            | Error::ZeroArgument { .. }
    )
}

/// Evaluates one locus: localized series, scaled entries, estimate, and
/// growth cap. Precondition failures of the degree-ratio machinery produce
/// a report with a `note` instead of an error.
pub fn evaluate_locus(locus: &Locus, e_max: u32) -> Result<LocusReport> {
    let presentation = locus.prime.ring();
    for rel in presentation.relations() {
        if !locus.prime.contains(rel)? {
            return Err(Error::InvalidConfig {
                detail: format!(
                    "locus `{}`: the prime does not contain the ring relation `{rel}`",
                    locus.label
                ),
            });
        }
    }
    let dim_r = ring_dimension(presentation)?;
    let alpha = krull_dim(&locus.prime.including_relations()?)?;
    let ht = dim_r - alpha;
    let mut report = LocusReport {
        locus: locus.clone(),
        ht,
        alpha,
        gamma: ht + alpha,
        lambda_1: None,
        series: None,
        scaled: Vec::new(),
        estimate: None,
        bound_fits: Vec::new(),
        note: None,
    };
    let computed = (|| -> Result<(u64, HkSeries)> {
        let lambda_1 = hk_length(locus.ideal(), 1, Some(&locus.prime))?;
        let series = hk_series(locus.ideal(), e_max, Some(&locus.prime))?;
        Ok((lambda_1, series))
    })();
    let (lambda_1, series) = match computed {
        Ok(v) => v,
        Err(err) if marks_locus_invalid(&err) => {
            report.note = Some(err.to_string());
            return Ok(report);
        }
        Err(err) => return Err(err),
    };
    report.lambda_1 = Some(lambda_1);
    report.scaled = series
        .entries
        .iter()
        .map(|e| (e.q, &e.normalized / BigRational::from(BigInt::from(lambda_1))))
        .collect();
    let witnesses: Vec<BoundWitness> = series
        .entries
        .iter()
        .map(|e| BoundWitness {
            q1: e.q,
            q2: None,
            lhs: BigRational::from(BigInt::from(e.length)),
            rhs: BigRational::from(num::pow(BigInt::from(e.q), ht)),
        })
        .collect();
    let constant = witnesses
        .iter()
        .map(|w| &w.lhs / &w.rhs)
        .max()
        .unwrap_or_else(BigRational::zero);
    report.bound_fits.push(BoundFit { constant, witnesses, satisfied: true });
    report.estimate = if series.entries.len() >= 2 {
        Some(ehk_estimate(&series)?)
    } else {
        None
    };
    report.series = Some(series);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Semicontinuity
// ---------------------------------------------------------------------------

fn check_family_labels(family: &[FamilyMember]) -> Result<()> {
    let mut labels: Vec<&str> = family.iter().map(|m| m.label.as_str()).collect();
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidConfig { detail: "duplicate family member labels".into() });
    }
    // The declared relation must reference known labels and stay acyclic.
    let index = |label: &str| family.iter().position(|m| m.label == label);
    let mut color = vec![0u8; family.len()]; // 0 new, 1 active, 2 done
    fn dfs(
        i: usize,
        family: &[FamilyMember],
        color: &mut [u8],
        index: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<()> {
        color[i] = 1;
        for target in &family[i].declared_specializes {
            let j = index(target).ok_or_else(|| Error::InvalidConfig {
                detail: format!(
                    "family member `{}` specializes unknown label `{target}`",
                    family[i].label
                ),
            })?;
            match color[j] {
                1 => {
                    return Err(Error::InvalidConfig {
                        detail: format!("specialization declarations form a cycle through `{target}`"),
                    })
                }
                0 => dfs(j, family, color, index)?,
                _ => {}
            }
        }
        color[i] = 2;
        Ok(())
    }
    for i in 0..family.len() {
        if color[i] == 0 {
            dfs(i, family, &mut color, &index)?;
        }
    }
    Ok(())
}

fn tolerance_ratio(tolerance: f64) -> Result<BigRational> {
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidConfig {
            detail: format!("tolerance must be a nonnegative number, got {tolerance}"),
        });
    }
    BigRational::from_float(tolerance).ok_or(Error::InvalidConfig {
        detail: "tolerance must be finite".into(),
    })
}

/// Checks the semicontinuity orderings over evaluated loci and a declared
/// ring family. Locus pairs are derived from prime containment: whenever
/// `P ⊆ m` (both valid, with estimates), the generic limit at `P` must not
/// exceed the special limit at `m` by more than the tolerance. Family
/// members are compared along their declared specialization edges.
pub fn semicontinuity_report(
    reports: &[LocusReport],
    family: &[FamilyMember],
    e_max: u32,
    tolerance: f64,
) -> Result<SemicontinuityReport> {
    let tol = tolerance_ratio(tolerance)?;
    check_family_labels(family)?;

    let mut ehk_checks = Vec::new();
    for special in reports {
        for generic in reports {
            if special.locus.label == generic.locus.label {
                continue;
            }
            let (Some(se), Some(ge)) = (&special.estimate, &generic.estimate) else { continue };
            if !special.locus.prime.contains_ideal(&generic.locus.prime)? {
                continue;
            }
            if special.locus.prime.ideal_eq(&generic.locus.prime)? {
                continue;
            }
            ehk_checks.push(OrderCheck {
                lower_label: generic.locus.label.clone(),
                upper_label: special.locus.label.clone(),
                lower: ge.ehk.clone(),
                upper: se.ehk.clone(),
                ok: ge.ehk <= &se.ehk + &tol,
            });
        }
    }
    ehk_checks.sort_by(|a, b| {
        (&a.upper_label, &a.lower_label).cmp(&(&b.upper_label, &b.lower_label))
    });

    let mut values: Vec<(String, BigRational)> = Vec::with_capacity(family.len());
    for member in family {
        let series = fsig_series(&member.presentation, &member.chain, e_max)?;
        let estimate = series.fsig_estimate.ok_or(Error::InsufficientData {
            detail: format!(
                "family member `{}`: series too short for an estimate",
                member.label
            ),
        })?;
        values.push((member.label.clone(), estimate.fsig));
    }
    let value_of = |label: &str| values.iter().find(|(l, _)| l == label).map(|(_, v)| v.clone());
    let mut fsig_checks = Vec::new();
    for member in family {
        let lower = value_of(&member.label).expect("estimated above");
        for target in &member.declared_specializes {
            let upper = value_of(target).expect("labels validated");
            fsig_checks.push(OrderCheck {
                lower_label: member.label.clone(),
                upper_label: target.clone(),
                lower: lower.clone(),
                ok: lower <= &upper + &tol,
                upper,
            });
        }
    }
    fsig_checks.sort_by(|a, b| {
        (&a.lower_label, &a.upper_label).cmp(&(&b.lower_label, &b.upper_label))
    });
    values.sort_by(|a, b| a.0.cmp(&b.0));

    Ok(SemicontinuityReport { tolerance: tol, ehk_checks, fsig_checks, family_values: values })
}

// ---------------------------------------------------------------------------
// Uniform convergence
// ---------------------------------------------------------------------------

/// Measures the per-`q` sup distance to the limit over a collection of
/// normalized series and fits the decay slope on a log-log scale.
pub fn uniform_convergence_report(series: &[NormalizedSeries]) -> Result<ConvergenceReport> {
    if series.is_empty() {
        return Err(Error::InsufficientData { detail: "no series to measure".into() });
    }
    for s in series {
        if s.points.len() < 2 {
            return Err(Error::InsufficientData {
                detail: format!("series `{}` has fewer than 2 entries", s.label),
            });
        }
    }
    let mut qs: Vec<u64> = series.iter().flat_map(|s| s.points.iter().map(|(q, _)| *q)).collect();
    qs.sort_unstable();
    qs.dedup();
    let mut sup_errors = Vec::with_capacity(qs.len());
    for &q in &qs {
        let sup = series
            .iter()
            .flat_map(|s| {
                s.points
                    .iter()
                    .filter(|(pq, _)| *pq == q)
                    .map(|(_, v)| abs_ratio(v - &s.limit))
            })
            .max()
            .expect("every q comes from some series");
        sup_errors.push((q, sup));
    }
    let exact = sup_errors.iter().all(|(_, e)| e.is_zero());
    let fit_points: Vec<(f64, f64)> = sup_errors
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(q, e)| ((*q as f64).ln(), e.to_f64().expect("finite ratio").ln()))
        .collect();
    let (slope, constant) = if fit_points.len() >= 2 {
        let n = fit_points.len() as f64;
        let sx: f64 = fit_points.iter().map(|(x, _)| x).sum();
        let sy: f64 = fit_points.iter().map(|(_, y)| y).sum();
        let sxx: f64 = fit_points.iter().map(|(x, _)| x * x).sum();
        let sxy: f64 = fit_points.iter().map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        (Some(slope), Some(intercept.exp()))
    } else {
        (None, None)
    };
    Ok(ConvergenceReport { sup_errors, exact, slope, constant, predicted_slope: -1.0 })
}

fn abs_ratio(r: BigRational) -> BigRational {
    if r < BigRational::zero() {
        -r
    } else {
        r
    }
}

// ---------------------------------------------------------------------------
// The probe driver
// ---------------------------------------------------------------------------

/// Runs a full probe: evaluates every locus (in up to `jobs` parallel
/// tasks), optionally measures the base ring's splitting series, derives
/// the semicontinuity and convergence reports, and aggregates the growth
/// constants. All output lists are sorted by label.
pub fn run_probe(
    loci: &[Locus],
    family: &[FamilyMember],
    chain: Option<&ParameterChainSpec>,
    e_max: u32,
    tolerance: f64,
    jobs: usize,
) -> Result<ProbeOutcome> {
    if loci.is_empty() {
        return Err(Error::InvalidConfig { detail: "a probe needs at least one locus".into() });
    }
    let mut labels: Vec<&str> = loci.iter().map(|l| l.label.as_str()).collect();
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidConfig { detail: "duplicate locus labels".into() });
    }
    let presentation = loci[0].prime.ring();
    for locus in loci {
        if locus.prime.ring().ring() != presentation.ring() {
            return Err(Error::AmbientMismatch {
                detail: format!("locus `{}` lives in a different ring", locus.label),
            });
        }
    }

    let jobs = jobs.max(1).min(loci.len());
    let chunk = loci.len().div_ceil(jobs);
    let mut slots: Vec<Option<Result<LocusReport>>> = loci.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        for (locus_chunk, slot_chunk) in loci.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (locus, slot) in locus_chunk.iter().zip(slot_chunk.iter_mut()) {
                    *slot = Some(evaluate_locus(locus, e_max));
                }
            });
        }
    });
    let mut reports = Vec::with_capacity(loci.len());
    for slot in slots {
        reports.push(slot.expect("every slot is filled")?);
    }
    reports.sort_by(|a, b| a.locus.label.cmp(&b.locus.label));

    let splitting = match chain {
        Some(c) => Some(fsig_series(presentation, c, e_max)?),
        None => None,
    };

    let semicontinuity = semicontinuity_report(&reports, family, e_max, tolerance)?;

    let mut normalized: Vec<NormalizedSeries> =
        reports.iter().filter_map(NormalizedSeries::from_locus_report).collect();
    if let Some(s) = &splitting {
        if let Some(ns) = NormalizedSeries::from_splitting_series("(splitting)", s) {
            normalized.push(ns);
        }
    }
    let convergence = if normalized.is_empty() {
        None
    } else {
        Some(uniform_convergence_report(&normalized)?)
    };

    let growth_constant = reports
        .iter()
        .filter_map(|r| r.bound_fits.first().map(|f| f.constant.clone()))
        .max();

    Ok(ProbeOutcome { reports, splitting, semicontinuity, convergence, growth_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyRing;
    use num::One;

    fn presentation(p: u64, vars: &[&str], rels: &[&str]) -> RingPresentation {
        let ring = PolyRing::new(p, vars).unwrap();
        let rels = rels.iter().map(|s| ring.parse(s).unwrap()).collect();
        RingPresentation::new(&ring, rels).unwrap()
    }

    fn ideal(r: &RingPresentation, gens: &[&str]) -> IdealHandle {
        let polys = gens.iter().map(|s| r.ring().parse(s).unwrap()).collect();
        IdealHandle::new(r, polys).unwrap()
    }

    fn chain(r: &RingPresentation, sop: &[&str]) -> ParameterChainSpec {
        let polys = sop.iter().map(|s| r.ring().parse(s).unwrap()).collect();
        ParameterChainSpec::with_default_cap(polys).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn regular_loci_are_exactly_flat() {
        let r = presentation(3, &["x", "y"], &[]);
        let loci = vec![
            Locus::new("max", ideal(&r, &["x", "y"])),
            Locus::new("axis", ideal(&r, &["x"])),
        ];
        let outcome = run_probe(&loci, &[], None, 2, 0.0, 2).unwrap();
        assert_eq!(outcome.reports.len(), 2);
        for report in &outcome.reports {
            assert!(report.is_valid());
            let est = report.estimate.as_ref().unwrap();
            assert!(est.ehk.is_one());
            assert_eq!(report.lambda_1, Some(1));
            assert!(report.scaled.iter().all(|(_, v)| v.is_one()));
        }
        // axis ⊆ max gives one ordering check: 1 ≤ 1.
        assert_eq!(outcome.semicontinuity.ehk_checks.len(), 1);
        assert!(outcome.semicontinuity.violations() == 0);
        let conv = outcome.convergence.unwrap();
        assert!(conv.exact);
        assert!(conv.slope.is_none());
        assert_eq!(outcome.growth_constant, Some(BigRational::one()));
    }

    #[test]
    fn quadric_cone_probe_end_to_end() {
        let r = presentation(3, &["x", "y", "z"], &["x*y - z^2"]);
        let plane = presentation(3, &["x", "y"], &[]);
        let loci = vec![
            Locus::new("m", ideal(&r, &["x", "y", "z"])),
            Locus::new("line", ideal(&r, &["x", "z"])),
        ];
        let family = vec![
            FamilyMember {
                label: "cone".into(),
                presentation: r.clone(),
                chain: chain(&r, &["x", "y"]),
                declared_specializes: vec!["plane".into()],
            },
            FamilyMember {
                label: "plane".into(),
                presentation: plane.clone(),
                chain: chain(&plane, &["x", "y"]),
                declared_specializes: vec![],
            },
        ];
        let sop = chain(&r, &["x", "y"]);
        let outcome = run_probe(&loci, &family, Some(&sop), 2, 0.05, 1).unwrap();

        let line = &outcome.reports[0];
        assert_eq!(line.locus.label, "line");
        assert_eq!((line.ht, line.alpha, line.gamma), (1, 1, 2));
        assert!(line.series.as_ref().unwrap().entries.iter().all(|e| e.normalized.is_one()));
        assert!(line.estimate.as_ref().unwrap().ehk.is_one());

        let m = &outcome.reports[1];
        assert_eq!(m.locus.label, "m");
        assert_eq!((m.ht, m.alpha, m.gamma), (2, 0, 2));
        let lengths: Vec<u64> =
            m.series.as_ref().unwrap().entries.iter().map(|e| e.length).collect();
        assert_eq!(lengths, vec![13, 121]);
        assert_eq!(m.estimate.as_ref().unwrap().ehk, rat(41, 27));
        assert_eq!(m.bound_fits[0].constant, rat(121, 81));

        // Orderings: ê(line) = 1 ≤ ê(m) = 41/27; s(cone) = 13/27 ≤ s(plane) = 1.
        assert_eq!(outcome.semicontinuity.violations(), 0);
        assert_eq!(outcome.semicontinuity.ehk_checks.len(), 1);
        let check = &outcome.semicontinuity.ehk_checks[0];
        assert_eq!(check.lower_label, "line");
        assert_eq!(check.upper_label, "m");
        assert_eq!(outcome.semicontinuity.fsig_checks.len(), 1);
        assert_eq!(outcome.semicontinuity.fsig_checks[0].lower, rat(13, 27));
        assert!(outcome.semicontinuity.fsig_checks[0].ok);

        // Growth constants: max(121/81, 1) over the HK loci.
        assert_eq!(outcome.growth_constant, Some(rat(121, 81)));
        assert!(outcome.splitting.is_some());
        let conv = outcome.convergence.unwrap();
        assert!(!conv.exact);
    }

    #[test]
    fn degree_ratio_failures_mark_but_do_not_abort() {
        let r = presentation(3, &["x", "y", "z"], &["x*y - z^2"]);
        // (x*y) is not primary to the line: its zero set has two components.
        let loci = vec![
            Locus::new("good", ideal(&r, &["x", "z"])),
            Locus::new("bad", ideal(&r, &["x", "z"])).with_ideal(ideal(&r, &["x*y"])),
        ];
        let outcome = run_probe(&loci, &[], None, 2, 0.0, 1).unwrap();
        let bad = outcome.reports.iter().find(|r| r.locus.label == "bad").unwrap();
        assert!(!bad.is_valid());
        assert!(bad.series.is_none());
        let good = outcome.reports.iter().find(|r| r.locus.label == "good").unwrap();
        assert!(good.is_valid());
    }

    #[test]
    fn config_errors_abort() {
        let r = presentation(3, &["x", "y", "z"], &["x*y - z^2"]);
        // (y) does not contain the relation xy − z².
        let loci = vec![Locus::new("broken", ideal(&r, &["y"]))];
        assert!(matches!(
            run_probe(&loci, &[], None, 2, 0.0, 1),
            Err(Error::InvalidConfig { .. })
        ));
        let dup = vec![
            Locus::new("same", ideal(&r, &["x", "y", "z"])),
            Locus::new("same", ideal(&r, &["x", "z"])),
        ];
        assert!(matches!(
            run_probe(&dup, &[], None, 2, 0.0, 1),
            Err(Error::InvalidConfig { .. })
        ));
    }

    #[test]
    fn family_declaration_validation() {
        let plane = presentation(3, &["x", "y"], &[]);
        let member = |label: &str, specializes: Vec<String>| FamilyMember {
            label: label.into(),
            presentation: plane.clone(),
            chain: chain(&plane, &["x", "y"]),
            declared_specializes: specializes,
        };
        let cyclic = vec![
            member("a", vec!["b".into()]),
            member("b", vec!["a".into()]),
        ];
        assert!(matches!(
            semicontinuity_report(&[], &cyclic, 2, 0.0),
            Err(Error::InvalidConfig { .. })
        ));
        let dangling = vec![member("a", vec!["ghost".into()])];
        assert!(matches!(
            semicontinuity_report(&[], &dangling, 2, 0.0),
            Err(Error::InvalidConfig { .. })
        ));
        assert!(matches!(
            semicontinuity_report(&[], &[], 2, -0.5),
            Err(Error::InvalidConfig { .. })
        ));
    }

    #[test]
    fn convergence_requires_enough_data() {
        assert!(matches!(
            uniform_convergence_report(&[]),
            Err(Error::InsufficientData { .. })
        ));
        let short = NormalizedSeries {
            label: "s".into(),
            points: vec![(3, rat(1, 1))],
            limit: rat(1, 1),
        };
        assert!(matches!(
            uniform_convergence_report(&[short]),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn convergence_slope_matches_hand_computation() {
        // Errors 14/243, 2/243, 2/729 at q = 3, 9, 27 (the cone numbers).
        let s = NormalizedSeries {
            label: "cone".into(),
            points: vec![
                (3, rat(13, 9)),
                (9, rat(121, 81)),
                (27, rat(1093, 729)),
            ],
            limit: rat(365, 243),
        };
        let report = uniform_convergence_report(&[s]).unwrap();
        assert_eq!(report.sup_errors[0].1, rat(14, 243));
        assert_eq!(report.sup_errors[1].1, rat(2, 243));
        assert_eq!(report.sup_errors[2].1, rat(2, 729));
        let slope = report.slope.unwrap();
        assert!((-1.4..=-0.6).contains(&slope), "slope {slope} out of range");
        assert!(!report.exact);
    }
}
