//! Hilbert series, Krull dimension, multiplicity, and lengths.
//!
//! Everything here reduces to combinatorics of the leading-term ideal: by
//! Macaulay's principle the standard monomials (those outside the
//! leading-term ideal) form a vector-space basis of the quotient, and for
//! homogeneous ideals the graded dimensions agree degree by degree.
//!
//! Two deliberately different algorithms count Artinian quotients:
//!
//! * [`finite_length`] counts standard monomials directly, slicing the
//!   staircase along one variable at a time and batching runs of exponents
//!   with identical fibers (so pure powers like `x^625` cost nothing);
//! * [`hilbert_series`] computes the series numerator by the classic
//!   pivot-variable recursion `N(M) = N(M + (v)) + t * N(M : v)`.
//!
//! They must agree whenever both apply; the test suite exploits that as a
//! cross-check, so please do not "simplify" one into the other.

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::polyring::{Monomial, MonomialOrder};

/// The Hilbert series of a graded quotient `S/I`, written as
/// `numerator(t) / (1-t)^dim` with `numerator(1) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    numerator: Vec<i128>,
    dim: usize,
    degree: u64,
    finite_length: Option<u64>,
}

impl HilbertData {
    /// Coefficients of the reduced numerator, constant term first.
    pub fn numerator(&self) -> &[i128] {
        &self.numerator
    }

    /// Krull dimension of `S/I`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Multiplicity: the reduced numerator evaluated at 1. For the zero
    /// ring (unit ideal) this is 0, otherwise strictly positive.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Total vector-space dimension, present exactly when `dim == 0`.
    pub fn finite_length(&self) -> Option<u64> {
        self.finite_length
    }
}

// ---------------------------------------------------------------------------
// Monomial-ideal combinatorics
// ---------------------------------------------------------------------------

/// Drops generators divisible by another generator.
fn minimalize(gens: &mut Vec<Vec<u32>>) {
    gens.sort();
    gens.dedup();
    let snapshot = gens.clone();
    gens.retain(|g| {
        !snapshot
            .iter()
            .any(|h| h != g && h.iter().zip(g).all(|(&a, &b)| a <= b))
    });
    gens.sort();
}

/// The exponent a pure power of variable `v` needs to lie in the ideal, if
/// any generator is supported on `v` alone.
fn pure_power(gens: &[Vec<u32>], v: usize) -> Option<u32> {
    gens.iter()
        .filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0))
        .map(|g| g[v])
        .min()
}

/// Counts monomials outside the monomial ideal by slicing along the last
/// variable: the fiber over `x_v^j` only changes when `j` crosses an
/// exponent that actually occurs, so runs of `j` are counted in one step.
fn count_standard(gens: &[Vec<u32>], nvars: usize) -> Result<u128> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Ok(0); // unit ideal: the quotient is the zero ring
    }
    if nvars == 0 {
        return Ok(1);
    }
    let v = nvars - 1;
    let cap = pure_power(gens, v).ok_or_else(|| Error::NotFiniteLength {
        detail: format!(
            "no pure power of variable #{v} lies in the leading-term ideal"
        ),
    })?;
    let mut thresholds: Vec<u32> = gens
        .iter()
        .map(|g| g[v])
        .filter(|&e| e < cap)
        .chain(std::iter::once(0))
        .collect();
    thresholds.sort_unstable();
    thresholds.dedup();
    thresholds.push(cap);
    let mut total: u128 = 0;
    for w in thresholds.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mut fiber: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g[v] <= lo)
            .map(|g| g[..v].to_vec())
            .collect();
        minimalize(&mut fiber);
        let below = count_standard(&fiber, v)?;
        total = total
            .checked_add((hi - lo) as u128 * below)
            .ok_or_else(|| Error::internal("standard monomial count overflowed u128"))?;
    }
    Ok(total)
}

/// Dense polynomials in `t` with integer coefficients (index = degree).
fn poly_add(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn poly_mul_one_minus_power(a: &[i128], d: usize) -> Vec<i128> {
    // a(t) * (1 - t^d)
    let mut out = a.to_vec();
    out.resize(a.len() + d, 0);
    for (i, &c) in a.iter().enumerate() {
        out[i + d] -= c;
    }
    out
}

fn poly_eval_at_one(a: &[i128]) -> i128 {
    a.iter().sum()
}

/// Numerator of the Hilbert series of `S/M` over `(1-t)^nvars`, by the
/// pivot-variable recursion. `gens` must be minimal.
fn series_numerator(gens: &[Vec<u32>], nvars: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    // Pairwise coprime generators contribute independent factors.
    let coprime = gens.iter().enumerate().all(|(i, g)| {
        gens[i + 1..]
            .iter()
            .all(|h| g.iter().zip(h).all(|(&a, &b)| a == 0 || b == 0))
    });
    if coprime {
        let mut out = vec![1];
        for g in gens {
            let d: usize = g.iter().map(|&e| e as usize).sum();
            out = poly_mul_one_minus_power(&out, d);
        }
        return out;
    }
    // Pivot on the variable hitting the most generators (ties: lowest index).
    let pivot = (0..nvars)
        .max_by_key(|&v| (gens.iter().filter(|g| g[v] > 0).count(), usize::MAX - v))
        .expect("nvars > 0 when generators exist");

    // M + (x_pivot): generators touching the pivot collapse into it.
    let mut plus: Vec<Vec<u32>> = gens.iter().filter(|g| g[pivot] == 0).cloned().collect();
    let mut pivot_gen = vec![0u32; nvars];
    pivot_gen[pivot] = 1;
    plus.push(pivot_gen);
    minimalize(&mut plus);

    // M : x_pivot.
    let mut colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[pivot] = h[pivot].saturating_sub(1);
            h
        })
        .collect();
    minimalize(&mut colon);

    let mut out = series_numerator(&plus, nvars);
    let colon_num = series_numerator(&colon, nvars);
    poly_add(&mut out, &colon_num, 1);
    out
}

/// Divides out every `(1-t)` factor, returning the multiplicity of the root
/// at 1 and the reduced numerator. The zero numerator stays zero.
fn strip_unit_root(mut num: Vec<i128>) -> (usize, Vec<i128>) {
    while num.last() == Some(&0) {
        num.pop();
    }
    if num.is_empty() {
        return (0, vec![0]);
    }
    let mut k = 0;
    while poly_eval_at_one(&num) == 0 {
        // Synthetic division by (1 - t): q_i = sum of c_0..c_i.
        let mut acc: i128 = 0;
        let mut quot = Vec::with_capacity(num.len() - 1);
        for &c in &num[..num.len() - 1] {
            acc += c;
            quot.push(acc);
        }
        num = quot;
        k += 1;
        if num.is_empty() {
            return (k, vec![0]);
        }
    }
    (k, num)
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

fn leading_exponents(ideal: &IdealHandle) -> Result<Vec<Vec<u32>>> {
    let lts = ideal.leading_monomials(MonomialOrder::Grevlex)?;
    let mut gens: Vec<Vec<u32>> = lts.iter().map(|m| m.exponents().to_vec()).collect();
    minimalize(&mut gens);
    Ok(gens)
}

/// The vector-space dimension of `S/I` over `F_p`, by direct staircase
/// counting. Works for arbitrary (not necessarily homogeneous) ideals;
/// errors with [`Error::NotFiniteLength`] when the quotient has positive
/// dimension.
pub fn finite_length(ideal: &IdealHandle) -> Result<u64> {
    let gens = leading_exponents(ideal)?;
    let n = ideal.ring().ring().nvars();
    let count = count_standard(&gens, n)?;
    u64::try_from(count).map_err(|_| Error::internal("length exceeds u64"))
}

/// Krull dimension of `S/I` (via the flat Gröbner degeneration to the
/// leading-term ideal, so no homogeneity is required).
pub fn krull_dim(ideal: &IdealHandle) -> Result<usize> {
    let gens = leading_exponents(ideal)?;
    let n = ideal.ring().ring().nvars();
    let (k, _) = strip_unit_root(series_numerator(&gens, n));
    Ok(n - k)
}

/// The Hilbert series of `S/I` for an ideal with homogeneous generators.
pub fn hilbert_series(ideal: &IdealHandle) -> Result<HilbertData> {
    for g in ideal.gens() {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous {
                detail: format!("generator `{g}` is not homogeneous"),
            });
        }
    }
    let gens = leading_exponents(ideal)?;
    let n = ideal.ring().ring().nvars();
    let (k, num) = strip_unit_root(series_numerator(&gens, n));
    let at_one = poly_eval_at_one(&num);
    if num == vec![0] {
        // Unit ideal: the zero ring.
        return Ok(HilbertData { numerator: num, dim: 0, degree: 0, finite_length: Some(0) });
    }
    if at_one <= 0 {
        return Err(Error::internal(format!(
            "reduced Hilbert numerator evaluates to {at_one} at t = 1"
        )));
    }
    let degree = u64::try_from(at_one).map_err(|_| Error::internal("degree exceeds u64"))?;
    let dim = n - k;
    let finite_length = if dim == 0 { Some(degree) } else { None };
    Ok(HilbertData { numerator: num, dim, degree, finite_length })
}

/// All standard monomials of an Artinian ideal, sorted ascending (grevlex).
/// These form a deterministic vector-space basis of `S/I`.
pub fn standard_monomials(ideal: &IdealHandle) -> Result<Vec<Monomial>> {
    let gens = leading_exponents(ideal)?;
    let ring = ideal.ring().ring();
    let n = ring.nvars();
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Ok(Vec::new());
    }
    let mut caps = Vec::with_capacity(n);
    for v in 0..n {
        caps.push(pure_power(&gens, v).ok_or_else(|| Error::NotFiniteLength {
            detail: format!("no pure power of variable #{v} in the leading-term ideal"),
        })?);
    }
    let mut out: Vec<Monomial> = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate_standard(&gens, &caps, &mut exps, 0, &mut out);
    out.sort();
    Ok(out)
}

fn enumerate_standard(
    gens: &[Vec<u32>],
    caps: &[u32],
    exps: &mut Vec<u32>,
    v: usize,
    out: &mut Vec<Monomial>,
) {
    if v == exps.len() {
        let standard = !gens
            .iter()
            .any(|g| g.iter().zip(exps.iter()).all(|(&a, &b)| a <= b));
        if standard {
            out.push(Monomial::from_exponents(exps.clone()).expect("below the cap"));
        }
        return;
    }
    for e in 0..caps[v] {
        exps[v] = e;
        enumerate_standard(gens, caps, exps, v + 1, out);
    }
    exps[v] = 0;
}

/// Length of the localization `(S/I)_P` at a homogeneous prime `P`, by the
/// multiplicity ratio `degree(S/I) / degree(S/P)`.
///
/// Preconditions checked here: both quotients have the same dimension, and
/// every generator of `P` lies in `I` after raising to `N` = (max degree in
/// the reduced basis of `I`) + 1 — a heuristic certificate that `S/I` is
/// supported on `V(P)`. Primality of `P` is trusted. A non-integer ratio
/// means some precondition was violated and is reported as an error.
pub fn local_length_at_prime(ideal: &IdealHandle, prime: &IdealHandle) -> Result<u64> {
    // Multiplicities must be taken in the presented ring, not the free
    // cover, so fold the presentation's relations into both ideals first.
    let ideal = &ideal.including_relations()?;
    let prime = &prime.including_relations()?;
    let hi = hilbert_series(ideal)?;
    let hp = hilbert_series(prime)?;
    if hi.dim != hp.dim {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "dim(S/I) = {} but dim(S/P) = {}; the quotient is not supported on V(P)",
                hi.dim, hp.dim
            ),
        });
    }
    let gb = ideal.groebner_basis(MonomialOrder::Grevlex)?;
    let max_deg = gb.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let n = max_deg + 1;
    for g in prime.gens() {
        if !ideal.contains(&g.pow(n)?)? {
            return Err(Error::RadicalCheckFailed {
                detail: format!("({g})^{n} does not lie in the ideal"),
            });
        }
    }
    if hp.degree == 0 || hi.degree % hp.degree != 0 {
        return Err(Error::NonIntegerRatio {
            num: hi.degree,
            den: hp.degree,
            detail: "multiplicity of the quotient does not divide by the prime's".into(),
        });
    }
    Ok(hi.degree / hp.degree)
}

/// Krull dimension of the presented ring itself (the quotient of the free
/// polynomial ring by the presentation's relations).
pub fn ring_dimension(ring: &crate::polyring::RingPresentation) -> Result<usize> {
    let rels = IdealHandle::new(ring, ring.relations().to_vec())?;
    krull_dim(&rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, RingPresentation};

    fn free_ring(p: u64, vars: &[&str]) -> RingPresentation {
        RingPresentation::free(&PolyRing::new(p, vars).unwrap())
    }

    fn ideal(r: &RingPresentation, gens: &[&str]) -> IdealHandle {
        let polys = gens.iter().map(|s| r.ring().parse(s).unwrap()).collect();
        IdealHandle::new(r, polys).unwrap()
    }

    #[test]
    fn length_of_the_maximal_ideal_is_one() {
        let r = free_ring(5, &["x", "y"]);
        assert_eq!(finite_length(&ideal(&r, &["x", "y"])).unwrap(), 1);
        // Non-homogeneous generators are fine for lengths.
        assert_eq!(finite_length(&ideal(&r, &["x - y^2", "y"])).unwrap(), 1);
    }

    #[test]
    fn positive_dimensional_quotients_are_rejected() {
        let r = free_ring(5, &["x", "y"]);
        assert!(matches!(
            finite_length(&ideal(&r, &["x^2", "x*y"])),
            Err(Error::NotFiniteLength { .. })
        ));
    }

    #[test]
    fn unit_ideal_has_length_zero() {
        let r = free_ring(5, &["x", "y"]);
        assert_eq!(finite_length(&ideal(&r, &["x", "x + 1"])).unwrap(), 0);
    }

    #[test]
    fn quadric_cone_bracket_length_is_thirteen() {
        let r = free_ring(3, &["x", "y", "z"]);
        let i = ideal(&r, &["x*y - z^2", "x^3", "y^3", "z^3"]);
        assert_eq!(finite_length(&i).unwrap(), 13);
        let h = hilbert_series(&i).unwrap();
        assert_eq!(h.dim(), 0);
        assert_eq!(h.finite_length(), Some(13));
    }

    #[test]
    fn quadric_surface_series() {
        let r = free_ring(3, &["x", "y", "z"]);
        let h = hilbert_series(&ideal(&r, &["x*y - z^2"])).unwrap();
        assert_eq!(h.numerator(), &[1, 1]); // 1 + t
        assert_eq!(h.dim(), 2);
        assert_eq!(h.degree(), 2);
        assert_eq!(h.finite_length(), None);
    }

    #[test]
    fn dimension_one_quotient_with_embedded_point() {
        let r = free_ring(3, &["x", "y"]);
        let h = hilbert_series(&ideal(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.degree(), 1);
        assert_eq!(krull_dim(&ideal(&r, &["x^2", "x*y"])).unwrap(), 1);
    }

    #[test]
    fn standard_monomial_enumeration_matches_length() {
        let r = free_ring(3, &["x", "y", "z"]);
        let i = ideal(&r, &["x*y - z^2", "x^3", "y^3", "z^3"]);
        let basis = standard_monomials(&i).unwrap();
        assert_eq!(basis.len(), 13);
        // Sorted ascending and starting at 1.
        assert!(basis[0].is_one());
        assert!(basis.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn local_length_at_a_line() {
        let r = free_ring(5, &["x", "y"]);
        // (S/(x^4))_(x) is Artinian of length 4 over the DVR's residue field.
        let i = ideal(&r, &["x^4"]);
        let p = ideal(&r, &["x"]);
        assert_eq!(local_length_at_prime(&i, &p).unwrap(), 4);
        // Embedded points at the origin do not contribute.
        let j = ideal(&r, &["x^2", "x*y"]);
        assert_eq!(local_length_at_prime(&j, &p).unwrap(), 1);
    }

    #[test]
    fn local_length_preconditions_trip() {
        let r = free_ring(5, &["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        // dim(S/(y)) = 1 matches, but y^N never lies in (x^2, xy).
        assert!(matches!(
            local_length_at_prime(&i, &ideal(&r, &["y"])),
            Err(Error::RadicalCheckFailed { .. })
        ));
        // Wrong dimension.
        assert!(matches!(
            local_length_at_prime(&i, &ideal(&r, &["x", "y"])),
            Err(Error::DimensionMismatch { .. })
        ));
        // Garbage "prime" (x^2): passes the heuristic, fails integrality.
        let r1 = free_ring(5, &["x"]);
        assert!(matches!(
            local_length_at_prime(&ideal(&r1, &["x^3"]), &ideal(&r1, &["x^2"])),
            Err(Error::NonIntegerRatio { num: 3, den: 2, .. })
        ));
    }

    #[test]
    fn series_requires_homogeneous_generators() {
        let r = free_ring(5, &["x", "y"]);
        assert!(matches!(
            hilbert_series(&ideal(&r, &["x - y^2"])),
            Err(Error::NotHomogeneous { .. })
        ));
    }
}
