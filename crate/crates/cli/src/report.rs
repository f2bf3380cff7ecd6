//! Report serialization: deterministic JSON and CSV renderings of the
//! kernel's result types.
//!
//! Output contract: values the kernel computes exactly (lengths, normalized
//! ratios, bound constants) are printed as integers or reduced fractions;
//! extrapolated estimates and fitted slopes are printed as decimals rounded
//! to six significant digits. Struct field order fixes the JSON key order,
//! so identical reports serialize to identical bytes.

use kunzite_core::fsplit::{FSigEstimate, SplittingSeries};
use kunzite_core::hk::{BoundFit, EhkEstimate, HkSeries};
use kunzite_core::probe::{
    ConvergenceReport, LocusReport, OrderCheck, ProbeOutcome, SemicontinuityReport,
};
use num::BigRational;
use serde::Serialize;

/// Rounds to six significant digits and renders without an exponent; the
/// shared formatting for every extrapolated (inexact) quantity.
pub fn sig6_string(value: f64) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let formatted = format!("{value:.decimals$}");
    // Trim a trailing ".000000" tail but keep at least one digit.
    if formatted.contains('.') {
        formatted.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        formatted
    }
}

fn sig6_value(value: f64) -> f64 {
    sig6_string(value).parse().expect("sig6 output is numeric")
}

fn rational(r: &BigRational) -> String {
    r.to_string()
}

#[derive(Serialize)]
pub struct HkEntryDto {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub normalized: String,
}

#[derive(Serialize)]
pub struct EhkEstimateDto {
    pub raw_last: String,
    pub ehk: f64,
    pub correction: f64,
    pub dimension_warning: bool,
    pub method: String,
}

#[derive(Serialize)]
pub struct HkSeriesDto {
    pub d: usize,
    pub entries: Vec<HkEntryDto>,
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EhkEstimateDto>,
}

pub fn hk_series_dto(series: &HkSeries, estimate: Option<&EhkEstimate>) -> HkSeriesDto {
    HkSeriesDto {
        d: series.d,
        entries: series
            .entries
            .iter()
            .map(|e| HkEntryDto {
                e: e.e,
                q: e.q,
                length: e.length,
                normalized: rational(&e.normalized),
            })
            .collect(),
        partial: series.partial,
        estimate: estimate.map(ehk_estimate_dto),
    }
}

fn ehk_estimate_dto(est: &EhkEstimate) -> EhkEstimateDto {
    EhkEstimateDto {
        raw_last: rational(&est.raw_last),
        ehk: sig6_value(to_f64(&est.ehk)),
        correction: sig6_value(to_f64(&est.correction)),
        dimension_warning: est.dimension_warning,
        method: est.method.to_string(),
    }
}

fn to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("report values are finite")
}

/// CSV rendering of a Hilbert-Kunz series: columns `e,q,length,normalized`.
pub fn hk_series_csv(series: &HkSeries) -> String {
    let mut out = String::from("e,q,length,normalized\n");
    for e in &series.entries {
        out.push_str(&format!("{},{},{},{}\n", e.e, e.q, e.length, e.normalized));
    }
    out
}

#[derive(Serialize)]
pub struct SplittingEntryDto {
    pub e: u32,
    pub q: u64,
    pub b_q: u64,
    pub s_q: String,
    pub stabilized_at_t: u32,
}

#[derive(Serialize)]
pub struct FsigEstimateDto {
    pub raw_last: String,
    pub fsig: f64,
    pub correction: f64,
    pub method: String,
}

#[derive(Serialize)]
pub struct SplittingSeriesDto {
    pub alpha: u32,
    pub d: usize,
    pub entries: Vec<SplittingEntryDto>,
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<FsigEstimateDto>,
}

pub fn splitting_series_dto(series: &SplittingSeries) -> SplittingSeriesDto {
    SplittingSeriesDto {
        alpha: series.alpha,
        d: series.d,
        entries: series
            .entries
            .iter()
            .map(|e| SplittingEntryDto {
                e: e.e,
                q: e.q,
                b_q: e.b_q,
                s_q: rational(&e.s_q),
                stabilized_at_t: e.stabilized_at_t,
            })
            .collect(),
        partial: series.partial,
        estimate: series.fsig_estimate.as_ref().map(fsig_estimate_dto),
    }
}

fn fsig_estimate_dto(est: &FSigEstimate) -> FsigEstimateDto {
    FsigEstimateDto {
        raw_last: rational(&est.raw_last),
        fsig: sig6_value(to_f64(&est.fsig)),
        correction: sig6_value(to_f64(&est.correction)),
        method: est.method.to_string(),
    }
}

/// CSV rendering of a splitting series: columns `e,q,b_q,s_q`.
pub fn splitting_series_csv(series: &SplittingSeries) -> String {
    let mut out = String::from("e,q,b_q,s_q\n");
    for e in &series.entries {
        out.push_str(&format!("{},{},{},{}\n", e.e, e.q, e.b_q, e.s_q));
    }
    out
}

#[derive(Serialize)]
pub struct GbDto {
    pub p: u64,
    pub vars: Vec<String>,
    pub basis: Vec<String>,
}

/// CSV rendering of a basis: one generator per row.
pub fn gb_csv(basis: &[String]) -> String {
    let mut out = String::from("generator\n");
    for g in basis {
        out.push_str(g);
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct LengthDto {
    pub length: u64,
}

#[derive(Serialize)]
pub struct WitnessDto {
    pub q1: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q2: Option<u64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize)]
pub struct BoundFitDto {
    pub constant: String,
    pub satisfied: bool,
    pub witnesses: Vec<WitnessDto>,
}

fn bound_fit_dto(fit: &BoundFit) -> BoundFitDto {
    BoundFitDto {
        constant: rational(&fit.constant),
        satisfied: fit.satisfied,
        witnesses: fit
            .witnesses
            .iter()
            .map(|w| WitnessDto {
                q1: w.q1,
                q2: w.q2,
                lhs: rational(&w.lhs),
                rhs: rational(&w.rhs),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct ScaledDto {
    pub q: u64,
    pub value: String,
}

#[derive(Serialize)]
pub struct LocusDto {
    pub label: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub ht: usize,
    pub alpha: usize,
    pub gamma: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<HkSeriesDto>,
    pub scaled: Vec<ScaledDto>,
    pub bound_fits: Vec<BoundFitDto>,
}

fn locus_dto(report: &LocusReport) -> LocusDto {
    LocusDto {
        label: report.locus.label.clone(),
        valid: report.is_valid(),
        note: report.note.clone(),
        ht: report.ht,
        alpha: report.alpha,
        gamma: report.gamma,
        lambda_1: report.lambda_1,
        series: report
            .series
            .as_ref()
            .map(|s| hk_series_dto(s, report.estimate.as_ref())),
        scaled: report
            .scaled
            .iter()
            .map(|(q, v)| ScaledDto { q: *q, value: rational(v) })
            .collect(),
        bound_fits: report.bound_fits.iter().map(bound_fit_dto).collect(),
    }
}

#[derive(Serialize)]
pub struct OrderCheckDto {
    pub lower_label: String,
    pub upper_label: String,
    pub lower: String,
    pub upper: String,
    pub ok: bool,
}

fn order_check_dto(check: &OrderCheck) -> OrderCheckDto {
    OrderCheckDto {
        lower_label: check.lower_label.clone(),
        upper_label: check.upper_label.clone(),
        lower: rational(&check.lower),
        upper: rational(&check.upper),
        ok: check.ok,
    }
}

#[derive(Serialize)]
pub struct FamilyValueDto {
    pub label: String,
    pub fsig: String,
}

#[derive(Serialize)]
pub struct SemicontinuityDto {
    pub tolerance: f64,
    pub ehk_checks: Vec<OrderCheckDto>,
    pub fsig_checks: Vec<OrderCheckDto>,
    pub family_values: Vec<FamilyValueDto>,
    pub violations: usize,
}

fn semicontinuity_dto(report: &SemicontinuityReport) -> SemicontinuityDto {
    SemicontinuityDto {
        // The stored rational is the exact value of the f64 the user gave,
        // so converting back is lossless.
        tolerance: to_f64(&report.tolerance),
        ehk_checks: report.ehk_checks.iter().map(order_check_dto).collect(),
        fsig_checks: report.fsig_checks.iter().map(order_check_dto).collect(),
        family_values: report
            .family_values
            .iter()
            .map(|(label, v)| FamilyValueDto { label: label.clone(), fsig: rational(v) })
            .collect(),
        violations: report.violations(),
    }
}

#[derive(Serialize)]
pub struct SupErrorDto {
    pub q: u64,
    pub error: String,
}

#[derive(Serialize)]
pub struct ConvergenceDto {
    pub sup_errors: Vec<SupErrorDto>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    pub predicted_slope: f64,
}

fn convergence_dto(report: &ConvergenceReport) -> ConvergenceDto {
    ConvergenceDto {
        sup_errors: report
            .sup_errors
            .iter()
            .map(|(q, e)| SupErrorDto { q: *q, error: rational(e) })
            .collect(),
        exact: report.exact,
        slope: report.slope.map(sig6_value),
        constant: report.constant.map(sig6_value),
        predicted_slope: report.predicted_slope,
    }
}

#[derive(Serialize)]
pub struct ProbeDto {
    pub reports: Vec<LocusDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingSeriesDto>,
    pub semicontinuity: SemicontinuityDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth_constant: Option<String>,
}

pub fn probe_dto(outcome: &ProbeOutcome) -> ProbeDto {
    ProbeDto {
        reports: outcome.reports.iter().map(locus_dto).collect(),
        splitting: outcome.splitting.as_ref().map(splitting_series_dto),
        semicontinuity: semicontinuity_dto(&outcome.semicontinuity),
        convergence: outcome.convergence.as_ref().map(convergence_dto),
        growth_constant: outcome.growth_constant.as_ref().map(rational),
    }
}

/// Pretty JSON with a trailing newline; key order is fixed by the DTO
/// field order, so identical reports yield identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}
