//! Shared integration-test support: a dense linear-algebra model of graded
//! quotients that is independent of the Groebner engine.
//!
//! The model represents polynomials as exponent-vector maps with its own
//! modular arithmetic, enumerates whole graded slices of an ideal, and row
//! reduces them over F_p. Lengths, graded dimensions, and ideal membership
//! computed here share no code with the engine beyond reading `terms()` off
//! engine polynomials at the boundary, so agreement between the two is
//! meaningful evidence of correctness.
//!
//! Key Operations
//! - [`DensePoly`]: map-based polynomial with independent add/mul.
//! - [`oracle_length`]: vector-space length of an Artinian graded quotient,
//!   summing graded slice dimensions until a slice vanishes.
//! - [`oracle_contains`]: graded membership test via row reduction of the
//!   ideal's degree slices.
//! - [`oracle_graded_dim`]: dimension of a single graded slice of a quotient.
//! - Seeded random generators for homogeneous polynomials and Artinian
//!   ideals, so differential suites are reproducible.

#![allow(dead_code)]

use std::collections::BTreeMap;

use kunzite_core::{Monomial, PolyRing, Polynomial};
use rand::Rng;
use std::sync::Arc;

/// Hard cap on the degree scanned by [`oracle_length`]; reaching it means the
/// quotient is almost certainly not Artinian and the test input is wrong.
const MAX_SCAN_DEGREE: u32 = 512;

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// A polynomial over F_p stored densely as exponent vector -> coefficient,
/// with arithmetic written from scratch for cross-checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    pub p: u64,
    pub nvars: usize,
    /// Nonzero coefficients only, keyed by exponent vector.
    pub coeffs: BTreeMap<Vec<u32>, u64>,
}

impl DensePoly {
    pub fn zero(p: u64, nvars: usize) -> Self {
        DensePoly { p, nvars, coeffs: BTreeMap::new() }
    }

    /// Reads an engine polynomial into the dense model (boundary conversion
    /// only; no engine arithmetic is reused).
    pub fn from_engine(f: &Polynomial) -> Self {
        let p = f.ring().characteristic();
        let nvars = f.ring().nvars();
        let mut out = Self::zero(p, nvars);
        for (m, c) in f.terms() {
            out.add_term(m.exponents().to_vec(), *c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: u64) {
        assert_eq!(exps.len(), self.nvars);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(exps.clone()).or_insert(0);
        *entry = add_mod(*entry, c, self.p);
        if *entry == 0 {
            self.coeffs.remove(&exps);
        }
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        assert_eq!(self.p, other.p);
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> DensePoly {
        let c = c % self.p;
        let mut out = DensePoly::zero(self.p, self.nvars);
        for (e, v) in &self.coeffs {
            out.add_term(e.clone(), mul_mod(*v, c, self.p));
        }
        out
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        assert_eq!(self.p, other.p);
        assert_eq!(self.nvars, other.nvars);
        let mut out = DensePoly::zero(self.p, self.nvars);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let exps: Vec<u32> =
                    ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, mul_mod(*ca, *cb, self.p));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> DensePoly {
        let mut out = DensePoly::zero(self.p, self.nvars);
        out.add_term(vec![0; self.nvars], 1);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn graded_parts(&self) -> BTreeMap<u32, DensePoly> {
        let mut parts: BTreeMap<u32, DensePoly> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let d: u32 = e.iter().sum();
            parts
                .entry(d)
                .or_insert_with(|| DensePoly::zero(self.p, self.nvars))
                .add_term(e.clone(), *c);
        }
        parts
    }

    pub fn is_homogeneous(&self) -> bool {
        self.graded_parts().len() <= 1
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| e.iter().sum()).max()
    }
}

/// All exponent vectors of the given total degree, in a fixed deterministic
/// order (lexicographic on the exponent vector).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// Row reduces `rows` in place over F_p and returns the rank. Each row is a
/// dense coefficient vector; all rows must share a length.
pub fn row_reduce(rows: &mut Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0)
        else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..ncols {
                    let sub = mul_mod(factor, rows[rank][c], p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn slice_vector(f: &DensePoly, index: &BTreeMap<Vec<u32>, usize>) -> Vec<u64> {
    let mut row = vec![0u64; index.len()];
    for (e, c) in &f.coeffs {
        let col = *index.get(e).expect("monomial outside the degree slice");
        row[col] = *c % f.p;
    }
    row
}

/// Spanning rows for the degree-`d` slice of the ideal generated by the
/// (homogeneous) `gens`: every monomial multiple of every generator that
/// lands in degree `d`.
fn ideal_slice_rows(
    p: u64,
    nvars: usize,
    gens: &[DensePoly],
    d: u32,
    index: &BTreeMap<Vec<u32>, usize>,
) -> Vec<Vec<u64>> {
    let mut rows = Vec::new();
    for g in gens {
        let Some(gd) = g.degree() else { continue };
        assert!(g.is_homogeneous(), "oracle requires homogeneous generators");
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(nvars, d - gd) {
            let mut mono = DensePoly::zero(p, nvars);
            mono.add_term(m, 1);
            rows.push(slice_vector(&mono.mul(g), index));
        }
    }
    rows
}

/// Dimension over F_p of the degree-`d` slice of the quotient by the ideal
/// generated by the homogeneous `gens`.
pub fn oracle_graded_dim(p: u64, nvars: usize, gens: &[DensePoly], d: u32) -> usize {
    let monos = monomials_of_degree(nvars, d);
    let index: BTreeMap<Vec<u32>, usize> =
        monos.iter().cloned().zip(0..).collect();
    let mut rows = ideal_slice_rows(p, nvars, gens, d, &index);
    let rank = row_reduce(&mut rows, p);
    monos.len() - rank
}

/// Vector-space length of the quotient by the ideal generated by the
/// homogeneous `gens`, assuming it is Artinian. Sums graded slice dimensions
/// until a slice vanishes, which in a standard-graded quotient forces all
/// later slices to vanish too.
pub fn oracle_length(p: u64, nvars: usize, gens: &[DensePoly]) -> u64 {
    let mut total = 0u64;
    for d in 0..=MAX_SCAN_DEGREE {
        let dim = oracle_graded_dim(p, nvars, gens, d);
        if dim == 0 {
            return total;
        }
        total += dim as u64;
    }
    panic!("oracle_length: quotient does not look Artinian (scanned to degree {MAX_SCAN_DEGREE})");
}

/// Membership of `f` in the ideal generated by the homogeneous `gens`,
/// decided degree by degree: each graded component of `f` must reduce to
/// zero against the row-reduced slice of the ideal in its own degree.
pub fn oracle_contains(p: u64, nvars: usize, gens: &[DensePoly], f: &DensePoly) -> bool {
    for (d, part) in f.graded_parts() {
        let monos = monomials_of_degree(nvars, d);
        let index: BTreeMap<Vec<u32>, usize> =
            monos.iter().cloned().zip(0..).collect();
        let mut rows = ideal_slice_rows(p, nvars, gens, d, &index);
        rows.push(slice_vector(&part, &index));
        let with = row_reduce(&mut rows, p);
        let mut rows_without = ideal_slice_rows(p, nvars, gens, d, &index);
        let without = row_reduce(&mut rows_without, p);
        if with != without {
            return false;
        }
    }
    true
}

/// Converts engine ideal generators (plus any ring relations) into dense
/// models in one call.
pub fn dense_gens(polys: &[Polynomial]) -> Vec<DensePoly> {
    polys.iter().map(DensePoly::from_engine).collect()
}

/// Random nonzero homogeneous polynomial of the exact degree given.
pub fn rand_homogeneous<R: Rng>(
    rng: &mut R,
    ring: &Arc<PolyRing>,
    degree: u32,
) -> Polynomial {
    let p = ring.characteristic();
    loop {
        let terms = monomials_of_degree(ring.nvars(), degree)
            .into_iter()
            .map(|exps| {
                let c = rng.gen_range(0..p);
                (Monomial::from_exponents(exps).expect("valid exponents"), c)
            })
            .collect::<Vec<_>>();
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random monomial of the exact degree given, as an engine polynomial.
pub fn rand_monomial<R: Rng>(
    rng: &mut R,
    ring: &Arc<PolyRing>,
    degree: u32,
) -> Polynomial {
    let choices = monomials_of_degree(ring.nvars(), degree);
    let pick = rng.gen_range(0..choices.len());
    let m = Monomial::from_exponents(choices[pick].clone()).expect("valid exponents");
    Polynomial::from_term(ring, m, 1)
}

/// Random Artinian ideal: one pure power of each variable (exponent 1..=4)
/// plus up to `max_extra` random homogeneous generators of degree 1..=3.
pub fn rand_artinian_gens<R: Rng>(
    rng: &mut R,
    ring: &Arc<PolyRing>,
    max_extra: usize,
) -> Vec<Polynomial> {
    let mut gens = Vec::new();
    for i in 0..ring.nvars() {
        let a = rng.gen_range(1..=4u64);
        gens.push(
            Polynomial::variable(ring, i).pow(a).expect("small power"),
        );
    }
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        let d = rng.gen_range(1..=3u32);
        gens.push(rand_homogeneous(rng, ring, d));
    }
    gens
}
