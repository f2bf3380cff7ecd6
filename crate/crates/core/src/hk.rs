//! Hilbert–Kunz length series, limit estimation, and uniform-bound checks.
//!
//! For an ideal `I` in `R = S/relations` and `q = p^e`, the `q`th
//! Hilbert–Kunz length is `λ(R/I^[q]R)` (or its localization at a prime).
//! Normalizing by `q^d` gives a sequence converging to the Hilbert–Kunz
//! multiplicity; [`ehk_estimate`] extrapolates it from the last two entries
//! via the model `λ_q = ê·q^d + ĉ·q^(d-1)`.
//!
//! Key operations:
//! * [`hk_length`] / [`hk_series`] — single lengths and whole series, global
//!   or localized at a prime.
//! * [`relative_hk_length`] — `λ(J^[q]/I^[q])` for a containment `I ⊆ J`,
//!   computed as a difference of absolute lengths (no colon ideals needed).
//! * [`verify_primary_pair_bound`] — checks
//!   `λ(J^[q]/I^[q]) ≤ λ(R/m^[q])·λ(J/I)` witness by witness.
//! * [`verify_double_index_bound`] — fits the constant in
//!   `|λ_rel(q1)·q2^d − λ_rel(q1·q2)| ≤ C·q2^d·q1^(d-1)·λ(J/I)` over a grid
//!   and reports whether the column at the smallest `q1` already covers it.
//!
//! Design notes: all arithmetic on lengths and fits is exact (`BigInt` /
//! `BigRational`); bound constants are always *fitted* from witnesses, never
//! assumed. Normalization exponents are `dim R` globally and
//! `ht(P) = dim R − dim(R/P)` locally, which pins the exponent for the
//! graded equidimensional rings this library targets.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::hilbert::{finite_length, krull_dim, local_length_at_prime, ring_dimension};

/// One measured point of a Hilbert–Kunz series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkEntry {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    /// `length / q^d`, exact.
    pub normalized: BigRational,
}

/// The sequence `q ↦ λ(R/I^[q]R)` together with the normalization used.
#[derive(Debug, Clone)]
pub struct HkSeries {
    pub ideal: IdealHandle,
    /// Localization prime, when lengths are local.
    pub locus: Option<IdealHandle>,
    /// Exponent used for normalization: `dim R` globally, `ht(P)` locally.
    pub d: usize,
    pub entries: Vec<HkEntry>,
    /// True when a work limit truncated the series early.
    pub partial: bool,
}

/// Two-point extrapolation of a Hilbert–Kunz series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhkEstimate {
    /// The last normalized entry, as measured.
    pub raw_last: BigRational,
    /// `ê` in the fit `λ_q = ê·q^d + ĉ·q^(d-1)` through the last two points.
    pub ehk: BigRational,
    /// `ĉ` in the same fit.
    pub correction: BigRational,
    /// Set when `ê ≤ 0`: the series grows strictly slower than `q^d`, which
    /// signals a wrong normalization dimension.
    pub dimension_warning: bool,
    pub method: &'static str,
}

/// One grid point of a bound check: `q2` is absent for single-index bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundWitness {
    pub q1: u64,
    pub q2: Option<u64>,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

/// Empirical fit of an inequality `lhs ≤ C·rhs` over a list of witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundFit {
    /// The smallest constant making every witness pass: `max lhs/rhs`.
    /// Zero when every left-hand side vanishes.
    pub constant: BigRational,
    pub witnesses: Vec<BoundWitness>,
    /// For absolute bounds: every witness satisfies `lhs ≤ rhs`. For fitted
    /// bounds: the constant is finite (no witness has `lhs > 0, rhs = 0`).
    pub satisfied: bool,
}

/// Result of the double-index uniformity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleIndexFit {
    pub fit: BoundFit,
    /// Constant fitted using only the column at the smallest `q1`.
    pub fitted_at_min_q1: BigRational,
    /// Whether that cheaper constant already covers the whole grid.
    pub covers: bool,
}

fn big_pow(q: u64, d: usize) -> BigInt {
    num::pow(BigInt::from(q), d)
}

fn ratio(n: u64, q: u64, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), big_pow(q, d))
}

/// `λ(R/I^[q]R)`, or `λ(R_P/I^[q]R_P)` when a locus is given. `q` must be
/// a power of the characteristic (`q = 1` is allowed and means no Frobenius).
pub fn hk_length(ideal: &IdealHandle, q: u64, locus: Option<&IdealHandle>) -> Result<u64> {
    let bracket = ideal.bracket_power(q)?.including_relations()?;
    match locus {
        None => finite_length(&bracket),
        Some(p) => local_length_at_prime(&bracket, &p.including_relations()?),
    }
}

/// The height of `locus` in `R`, as `dim R − dim(R/locus)`.
fn locus_height(ideal: &IdealHandle, locus: &IdealHandle) -> Result<usize> {
    let dim_r = ring_dimension(ideal.ring())?;
    let alpha = krull_dim(&locus.including_relations()?)?;
    Ok(dim_r - alpha)
}

/// The full series for `e = 1..=e_max`. A work-limit failure after the
/// first entry truncates the series and sets `partial`; other errors
/// propagate.
pub fn hk_series(ideal: &IdealHandle, e_max: u32, locus: Option<&IdealHandle>) -> Result<HkSeries> {
    if e_max < 2 {
        return Err(Error::InsufficientData {
            detail: format!("a series needs e_max >= 2, got {e_max}"),
        });
    }
    if ideal.including_relations()?.is_unit_ideal()? {
        return Err(Error::ZeroArgument {
            detail: "the ideal is the unit ideal, so every Hilbert-Kunz length is zero".into(),
        });
    }
    let p = ideal.ring().ring().characteristic();
    let d = match locus {
        None => ring_dimension(ideal.ring())?,
        Some(pr) => locus_height(ideal, pr)?,
    };
    let mut entries: Vec<HkEntry> = Vec::with_capacity(e_max as usize);
    let mut partial = false;
    for e in 1..=e_max {
        let q = p
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow { detail: format!("p^{e} exceeds u64") })?;
        match hk_length(ideal, q, locus) {
            Ok(length) => {
                if length == 0 {
                    return Err(Error::ZeroArgument {
                        detail: format!("length vanished at q = {q}: the ideal is not proper at the locus"),
                    });
                }
                if let Some(prev) = entries.last() {
                    if length < prev.length {
                        return Err(Error::internal(format!(
                            "lengths must be nondecreasing in q, got {} then {length}",
                            prev.length
                        )));
                    }
                }
                entries.push(HkEntry { e, q, length, normalized: ratio(length, q, d) });
            }
            Err(err) if err.is_resource_limit() && !entries.is_empty() => {
                partial = true;
                break;
            }
            Err(err) => return Err(err),
        }
    }
    Ok(HkSeries { ideal: ideal.clone(), locus: locus.cloned(), d, entries, partial })
}

/// Solves `λ_q = a·q^d + b·q^(d-1)` through two points exactly. For `d = 0`
/// the second basis function is `1/q`; the system is scaled by `q` so all
/// arithmetic stays in `BigRational`.
pub(crate) fn two_point_power_fit(
    d: usize,
    (q1, l1): (u64, BigRational),
    (q2, l2): (u64, BigRational),
) -> Result<(BigRational, BigRational)> {
    if q1 == q2 {
        return Err(Error::DegenerateFit {
            detail: format!("both sample points sit at q = {q1}"),
        });
    }
    let (a1, b1, r1, a2, b2, r2) = if d == 0 {
        // a + b/q = λ  →  a·q + b = λ·q
        let br = |q: u64| BigRational::from(BigInt::from(q));
        (br(q1), BigRational::one(), l1 * br(q1), br(q2), BigRational::one(), l2 * br(q2))
    } else {
        let br = |q: u64, k: usize| BigRational::from(big_pow(q, k));
        (br(q1, d), br(q1, d - 1), l1, br(q2, d), br(q2, d - 1), l2)
    };
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return Err(Error::DegenerateFit { detail: "singular two-point system".into() });
    }
    let lead = (&r1 * &b2 - &r2 * &b1) / &det;
    let corr = (&a1 * &r2 - &a2 * &r1) / &det;
    Ok((lead, corr))
}

/// Two-point extrapolation of the limit from the last two series entries.
pub fn ehk_estimate(series: &HkSeries) -> Result<EhkEstimate> {
    let n = series.entries.len();
    if n < 2 {
        return Err(Error::InsufficientData {
            detail: format!("estimation needs at least 2 series entries, got {n}"),
        });
    }
    let p1 = &series.entries[n - 2];
    let p2 = &series.entries[n - 1];
    let (ehk, correction) = two_point_power_fit(
        series.d,
        (p1.q, BigRational::from(BigInt::from(p1.length))),
        (p2.q, BigRational::from(BigInt::from(p2.length))),
    )?;
    let dimension_warning = ehk <= BigRational::zero();
    Ok(EhkEstimate {
        raw_last: p2.normalized.clone(),
        ehk,
        correction,
        dimension_warning,
        method: "two-point",
    })
}

/// `λ(J^[q]/I^[q]) = λ(R/I^[q]) − λ(R/J^[q])` for a verified containment
/// `I ⊆ J` with `R/I` Artinian. `J` may be the unit ideal.
pub fn relative_hk_length(ideal: &IdealHandle, larger: &IdealHandle, q: u64) -> Result<u64> {
    if !larger.including_relations()?.contains_ideal(ideal)? {
        return Err(Error::ContainmentFailed {
            detail: "relative lengths need I contained in J".into(),
        });
    }
    let li = hk_length(ideal, q, None)?;
    let lj = hk_length(larger, q, None)?;
    li.checked_sub(lj).ok_or_else(|| {
        Error::internal(format!(
            "relative length is negative despite containment: {li} - {lj} at q = {q}"
        ))
    })
}

fn max_ratio(witnesses: &[BoundWitness]) -> (BigRational, bool) {
    let mut constant = BigRational::zero();
    let mut finite = true;
    for w in witnesses {
        if w.rhs.is_zero() {
            if !w.lhs.is_zero() {
                finite = false;
            }
            continue;
        }
        let r = &w.lhs / &w.rhs;
        if r > constant {
            constant = r;
        }
    }
    (constant, finite)
}

/// Checks `λ(J^[q]/I^[q]) ≤ λ(R/m^[q])·λ(J/I)` for each listed `q`, where
/// `m` is the irrelevant maximal ideal. An optional chain
/// `I = C_0 ⊆ C_1 ⊆ … ⊆ C_n = J` is validated link by link, and the step
/// lengths must add up to the total at every `q`.
pub fn verify_primary_pair_bound(
    ideal: &IdealHandle,
    larger: &IdealHandle,
    chain: Option<&[IdealHandle]>,
    q_list: &[u64],
) -> Result<BoundFit> {
    if q_list.is_empty() {
        return Err(Error::InsufficientData { detail: "empty q list".into() });
    }
    let presentation = ideal.ring();
    let maximal = IdealHandle::new(presentation, presentation.irrelevant_ideal_gens())?;
    let unit_length = relative_hk_length(ideal, larger, 1)?;
    if let Some(links) = chain {
        validate_chain(ideal, larger, links)?;
    }
    let mut witnesses = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let lhs = relative_hk_length(ideal, larger, q)?;
        let ambient = hk_length(&maximal, q, None)?;
        let rhs = BigInt::from(ambient) * BigInt::from(unit_length);
        if let Some(links) = chain {
            let mut total: u64 = 0;
            for pair in links.windows(2) {
                total += relative_hk_length(&pair[0], &pair[1], q)?;
            }
            if total != lhs {
                return Err(Error::internal(format!(
                    "chain steps sum to {total} but the total relative length is {lhs} at q = {q}"
                )));
            }
        }
        witnesses.push(BoundWitness {
            q1: q,
            q2: None,
            lhs: BigRational::from(BigInt::from(lhs)),
            rhs: BigRational::from(rhs),
        });
    }
    let satisfied = witnesses.iter().all(|w| w.lhs <= w.rhs);
    let (constant, _) = max_ratio(&witnesses);
    Ok(BoundFit { constant, witnesses, satisfied })
}

fn validate_chain(ideal: &IdealHandle, larger: &IdealHandle, links: &[IdealHandle]) -> Result<()> {
    let (first, last) = match (links.first(), links.last()) {
        (Some(f), Some(l)) if links.len() >= 2 => (f, l),
        _ => {
            return Err(Error::InsufficientData {
                detail: "a chain needs at least its two endpoints".into(),
            })
        }
    };
    if !first.ideal_eq(ideal)? || !last.ideal_eq(larger)? {
        return Err(Error::ContainmentFailed {
            detail: "chain endpoints do not match the primary pair".into(),
        });
    }
    for pair in links.windows(2) {
        if !pair[1].including_relations()?.contains_ideal(&pair[0])? {
            return Err(Error::ContainmentFailed {
                detail: "chain is not ascending: a link is missing a containment".into(),
            });
        }
    }
    Ok(())
}

/// Fits the constant in
/// `|λ_rel(q1)·q2^d − λ_rel(q1·q2)| ≤ C·q2^d·q1^(d-1)·λ(J/I)` over the grid
/// `q1_list × q2_list`, where `λ_rel(q) = λ(J^[q]/I^[q])` (localized at the
/// optional prime). Also reports whether the constant fitted on the
/// smallest-`q1` column alone covers the whole grid.
pub fn verify_double_index_bound(
    ideal: &IdealHandle,
    larger: &IdealHandle,
    locus: Option<&IdealHandle>,
    q1_list: &[u64],
    q2_list: &[u64],
) -> Result<DoubleIndexFit> {
    if q1_list.is_empty() || q2_list.is_empty() {
        return Err(Error::InsufficientData { detail: "empty q1 or q2 list".into() });
    }
    let d = match locus {
        None => ring_dimension(ideal.ring())?,
        Some(pr) => locus_height(ideal, pr)?,
    };
    let relative = |q: u64| -> Result<u64> {
        match locus {
            None => relative_hk_length(ideal, larger, q),
            Some(pr) => {
                let li = hk_length(ideal, q, Some(pr))?;
                let lj = if larger.including_relations()?.is_unit_ideal()? {
                    0
                } else {
                    hk_length(larger, q, Some(pr))?
                };
                li.checked_sub(lj).ok_or_else(|| {
                    Error::internal("negative localized relative length".to_string())
                })
            }
        }
    };
    let unit_length = relative(1)?;
    let mut q1s = q1_list.to_vec();
    q1s.sort_unstable();
    q1s.dedup();
    let mut q2s = q2_list.to_vec();
    q2s.sort_unstable();
    q2s.dedup();

    let mut witnesses = Vec::with_capacity(q1s.len() * q2s.len());
    for &q1 in &q1s {
        let base = BigInt::from(relative(q1)?);
        for &q2 in &q2s {
            let product = q1.checked_mul(q2).ok_or(Error::ExponentOverflow {
                detail: format!("q1*q2 = {q1}*{q2} exceeds u64"),
            })?;
            let fine = BigInt::from(relative(product)?);
            let lhs = (&base * big_pow(q2, d) - fine).abs();
            // rhs = q2^d · q1^(d-1) · λ(J/I); for d = 0 the q1 factor is 1/q1.
            let rhs = if d == 0 {
                BigRational::new(BigInt::from(unit_length), BigInt::from(q1))
            } else {
                BigRational::from(big_pow(q2, d) * big_pow(q1, d - 1) * BigInt::from(unit_length))
            };
            witnesses.push(BoundWitness {
                q1,
                q2: Some(q2),
                lhs: BigRational::from(lhs),
                rhs,
            });
        }
    }
    let (constant, finite) = max_ratio(&witnesses);
    let min_q1 = q1s[0];
    let column: Vec<BoundWitness> =
        witnesses.iter().filter(|w| w.q1 == min_q1).cloned().collect();
    let (fitted_at_min_q1, column_finite) = max_ratio(&column);
    let covers = column_finite
        && witnesses
            .iter()
            .all(|w| &w.lhs <= &(&fitted_at_min_q1 * &w.rhs));
    Ok(DoubleIndexFit {
        fit: BoundFit { constant, witnesses, satisfied: finite },
        fitted_at_min_q1,
        covers,
    })
}
