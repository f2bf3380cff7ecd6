//! Frobenius splitting numbers and F-signature estimation.
//!
//! For a graded ring `R` of dimension `d` over `F_p` with a homogeneous
//! system of parameters `f_1, …, f_d`, set `I_t = (f_1^t, …, f_d^t)` and let
//! `u_t` generate the one-dimensional socle of `R/I_t`. The `q`th splitting
//! number is the stable value of
//!
//! ```text
//! v_t = λ(R / (I_t^[q] : u_t^q)) = λ(R/I_t^[q]) − λ(R/(I_t^[q] + (u_t^q)))
//! ```
//!
//! The colon ideals ascend with `t` (their union is the ideal of
//! non-splitting directions), so `v_t` is nonincreasing and eventually
//! constant; we accept the value once two consecutive `t` agree. The
//! normalized numbers `s_q = b_q / q^d` converge to the F-signature. The
//! residue field here is `F_p` (perfect), so the paper-level correction
//! exponent `alpha` is identically zero and is recorded as such.
//!
//! Key operations:
//! * [`socle_generator`] — linear algebra over the standard-monomial basis;
//!   errors when the socle is not simple (the parameter ideal is then not
//!   irreducible and the chain construction does not apply).
//! * [`splitting_number`] — one `b_q` with its stabilization index.
//! * [`fsig_series`] — the series `q ↦ (b_q, s_q)` plus a two-point
//!   extrapolation of the F-signature.
//!
//! Design notes: lengths are computed by the difference formula above, so no
//! colon-ideal elimination is ever needed on the hot path; reducedness of
//! `R` is the caller's responsibility (checking it is out of scope, and
//! non-reduced input yields meaningless numbers).

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::hilbert::{finite_length, ring_dimension, standard_monomials};
use crate::hk::two_point_power_fit;
use crate::polyring::{Monomial, MonomialOrder, Polynomial, RingPresentation};

/// Default cap on the chain index `t` tried before giving up.
pub const DEFAULT_T_MAX: u32 = 6;

/// A user-supplied homogeneous system of parameters and the chain cap.
#[derive(Debug, Clone)]
pub struct ParameterChainSpec {
    sop: Vec<Polynomial>,
    t_max: u32,
}

impl ParameterChainSpec {
    /// Checks the syntactic requirements (nonzero homogeneous elements,
    /// positive cap). Whether the elements really form a system of
    /// parameters is checked against a concrete ring by the consumers.
    pub fn new(sop: Vec<Polynomial>, t_max: u32) -> Result<Self> {
        if sop.is_empty() {
            return Err(Error::ZeroArgument {
                detail: "a parameter chain needs at least one element".into(),
            });
        }
        if t_max == 0 {
            return Err(Error::InvalidConfig { detail: "t_max must be positive".into() });
        }
        for f in &sop {
            if f.is_zero() {
                return Err(Error::ZeroArgument {
                    detail: "zero polynomial in the system of parameters".into(),
                });
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous {
                    detail: format!("parameter `{f}` is not homogeneous"),
                });
            }
        }
        Ok(ParameterChainSpec { sop, t_max })
    }

    /// Same as [`ParameterChainSpec::new`] with the default cap.
    pub fn with_default_cap(sop: Vec<Polynomial>) -> Result<Self> {
        ParameterChainSpec::new(sop, DEFAULT_T_MAX)
    }

    pub fn sop(&self) -> &[Polynomial] {
        &self.sop
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    /// Semantic validation against a ring: `|sop| = dim R` and the
    /// parameters cut the ring down to dimension zero.
    fn validate_against(&self, presentation: &RingPresentation) -> Result<usize> {
        let d = ring_dimension(presentation)?;
        if self.sop.len() != d {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "the ring has dimension {d} but {} parameters were supplied",
                    self.sop.len()
                ),
            });
        }
        let ideal = IdealHandle::new(presentation, self.sop.clone())?;
        finite_length(&ideal.including_relations()?).map_err(|_| Error::NotFiniteLength {
            detail: "the supplied elements do not cut the ring to dimension zero".into(),
        })?;
        Ok(d)
    }

    /// The ideal `I_t = (f_1^t, …, f_d^t)`.
    fn power_ideal(&self, presentation: &RingPresentation, t: u32) -> Result<IdealHandle> {
        let gens = self
            .sop
            .iter()
            .map(|f| f.pow(u64::from(t)))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(presentation, gens)
    }
}

/// One measured splitting number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingEntry {
    pub e: u32,
    pub q: u64,
    pub b_q: u64,
    /// `b_q / q^d`, exact.
    pub s_q: BigRational,
    /// The first chain index whose value persisted.
    pub stabilized_at_t: u32,
}

/// Two-point extrapolation of the F-signature from `b_q = s·q^d + c·q^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSigEstimate {
    /// The last normalized entry `s_q`, as measured.
    pub raw_last: BigRational,
    /// `s` in the two-point fit.
    pub fsig: BigRational,
    /// `c` in the two-point fit.
    pub correction: BigRational,
    pub method: &'static str,
}

/// The sequence `q ↦ b_q` with stabilization metadata.
#[derive(Debug, Clone)]
pub struct SplittingSeries {
    /// Correction exponent for imperfect residue fields; always 0 here
    /// (the residue field is `F_p`), recorded so `s_q = b_q / q^(alpha + d)`
    /// reads off the stored data directly.
    pub alpha: u32,
    /// Normalization exponent (the ring dimension).
    pub d: usize,
    pub entries: Vec<SplittingEntry>,
    /// True when a work limit truncated the series early.
    pub partial: bool,
    /// Present whenever at least two entries were measured.
    pub fsig_estimate: Option<FSigEstimate>,
}

// ---------------------------------------------------------------------------
// Socle computation
// ---------------------------------------------------------------------------

/// Reduced row echelon form over `F_p`, in place. Returns pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<usize> {
    let field = crate::polyring::PrimeCharField::new(p).expect("characteristic already validated");
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let sub = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// A generator of the socle `(I : m) / I` of the Artinian quotient `R/I`,
/// returned as its unique normal-form representative with leading
/// coefficient 1. Errors with [`Error::SocleNotSimple`] when the socle has
/// dimension other than 1 (the ideal is not irreducible).
pub fn socle_generator(ideal: &IdealHandle) -> Result<Polynomial> {
    let full = ideal.including_relations()?;
    let basis = standard_monomials(&full)?;
    let n = basis.len();
    if n == 0 {
        return Err(Error::ZeroArgument {
            detail: "the unit ideal has no socle".into(),
        });
    }
    let ring = ideal.ring().ring();
    let p = ring.characteristic();
    let nvars = ring.nvars();
    let locate = |m: &Monomial| -> Result<usize> {
        basis
            .binary_search(m)
            .map_err(|_| Error::internal("normal form left the standard-monomial basis"))
    };
    // Stack the multiplication-by-x_i matrices; the socle is their kernel.
    let mut rows: Vec<Vec<u64>> = vec![vec![0; n]; nvars * n];
    for (j, b) in basis.iter().enumerate() {
        for v in 0..nvars {
            let shifted = b.checked_mul(&Monomial::variable(nvars, v))?;
            let nf = full.normal_form(&Polynomial::from_term(ring, shifted, 1))?;
            for (m, c) in nf.terms() {
                rows[v * n + locate(m)?][j] = *c;
            }
        }
    }
    let pivots = rref(&mut rows, n, p);
    let kernel_dim = n - pivots.len();
    if kernel_dim != 1 {
        return Err(Error::SocleNotSimple {
            dim: kernel_dim,
            detail: "the parameter ideal is not irreducible; choose a different system of parameters"
                .into(),
        });
    }
    // Back-substitute the single free column into a kernel vector.
    let free = (0..n).find(|c| !pivots.contains(c)).expect("kernel is nontrivial");
    let field = crate::polyring::PrimeCharField::new(p)?;
    let mut coords = vec![0u64; n];
    coords[free] = 1;
    for (row, &pc) in pivots.iter().enumerate() {
        coords[pc] = field.neg(rows[row][free]);
    }
    let terms: Vec<(Monomial, u64)> = coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (basis[i].clone(), c))
        .collect();
    let u = Polynomial::from_terms(ring, terms);
    Ok(u.monic(MonomialOrder::Grevlex))
}

// ---------------------------------------------------------------------------
// Splitting numbers
// ---------------------------------------------------------------------------

/// `v_t = λ(R/(I_t^[q] : u_t^q))` via the length-difference identity.
fn chain_value(
    presentation: &RingPresentation,
    chain: &ParameterChainSpec,
    t: u32,
    q: u64,
) -> Result<u64> {
    let it = chain.power_ideal(presentation, t)?;
    let u = socle_generator(&it)?;
    let bracket = it.bracket_power(q)?;
    let total = finite_length(&bracket.including_relations()?)?;
    let mut gens = bracket.gens().to_vec();
    gens.push(u.frobenius_power(q)?);
    let with_socle = IdealHandle::new(presentation, gens)?;
    let cut = finite_length(&with_socle.including_relations()?)?;
    total.checked_sub(cut).ok_or_else(|| {
        Error::internal(format!(
            "adding a socle power increased the length: {total} -> {cut} at t = {t}, q = {q}"
        ))
    })
}

/// The `q`th Frobenius splitting number `b_q` and the chain index at which
/// it stabilized. `q` must be a power of the characteristic; `q = 1` is
/// allowed and yields 1 for every ring with a simple-socle chain.
pub fn splitting_number(
    presentation: &RingPresentation,
    chain: &ParameterChainSpec,
    q: u64,
) -> Result<(u64, u32)> {
    chain.validate_against(presentation)?;
    let mut prev = chain_value(presentation, chain, 1, q)?;
    for t in 2..=chain.t_max {
        let next = chain_value(presentation, chain, t, q)?;
        if next == prev {
            return Ok((next, t - 1));
        }
        if next > prev {
            return Err(Error::InvalidConfig {
                detail: format!(
                    "chain values must not increase (got {prev} then {next} at t = {t}); \
                     the ring is not Cohen-Macaulay along the given parameters"
                ),
            });
        }
        prev = next;
    }
    Err(Error::NotStabilized { t_max: chain.t_max, last: (prev, prev) })
}

/// The splitting-number series for `e = 1..=e_max` with its F-signature
/// extrapolation. A work-limit failure after the first entry truncates the
/// series and sets `partial`.
pub fn fsig_series(
    presentation: &RingPresentation,
    chain: &ParameterChainSpec,
    e_max: u32,
) -> Result<SplittingSeries> {
    if e_max < 2 {
        return Err(Error::InsufficientData {
            detail: format!("a series needs e_max >= 2, got {e_max}"),
        });
    }
    let d = chain.validate_against(presentation)?;
    let p = presentation.ring().characteristic();
    let mut entries: Vec<SplittingEntry> = Vec::with_capacity(e_max as usize);
    let mut partial = false;
    for e in 1..=e_max {
        let q = p
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow { detail: format!("p^{e} exceeds u64") })?;
        match splitting_number(presentation, chain, q) {
            Ok((b_q, stabilized_at_t)) => {
                let s_q = BigRational::new(BigInt::from(b_q), num::pow(BigInt::from(q), d));
                if s_q > BigRational::one() {
                    return Err(Error::InvalidConfig {
                        detail: format!(
                            "s_q = {b_q}/{q}^{d} exceeds 1; the input ring is probably not reduced"
                        ),
                    });
                }
                entries.push(SplittingEntry { e, q, b_q, s_q, stabilized_at_t });
            }
            Err(err) if err.is_resource_limit() && !entries.is_empty() => {
                partial = true;
                break;
            }
            Err(err) => return Err(err),
        }
    }
    let fsig_estimate = if entries.len() >= 2 {
        let p1 = &entries[entries.len() - 2];
        let p2 = &entries[entries.len() - 1];
        let (fsig, correction) = two_point_power_fit(
            d,
            (p1.q, BigRational::from(BigInt::from(p1.b_q))),
            (p2.q, BigRational::from(BigInt::from(p2.b_q))),
        )?;
        Some(FSigEstimate {
            raw_last: p2.s_q.clone(),
            fsig,
            correction,
            method: "two-point",
        })
    } else {
        None
    };
    Ok(SplittingSeries { alpha: 0, d, entries, partial, fsig_estimate })
}
