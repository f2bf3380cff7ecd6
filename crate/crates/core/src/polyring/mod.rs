//! Multivariate polynomial arithmetic over prime fields `F_p`.
//!
//! Key design points:
//!
//! * Coefficients are machine integers kept reduced into `0..p`; `p < 2^16`
//!   so products fit comfortably in `u64` before reduction.
//! * Monomial exponents are `u32` capped at [`MAX_EXPONENT`] per variable;
//!   overflowing the cap is a loud error, never silent wraparound.
//! * A [`Polynomial`] is a sorted term list (graded reverse lexicographic,
//!   descending), so equal polynomials have identical representations and
//!   printing is canonical.
//! * Every polynomial carries a shared handle to its ambient ring; combining
//!   polynomials from different ambients is an [`Error::AmbientMismatch`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

mod parse;

/// Largest exponent a single variable may carry (inclusive).
pub const MAX_EXPONENT: u32 = 1 << 20;

/// Largest supported characteristic (exclusive): primes must fit in 16 bits.
pub const MAX_CHAR: u64 = 1 << 16;

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// The field `F_p` for a prime `p < 2^16`. Elements are `u64` in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeCharField {
    p: u64,
}

impl PrimeCharField {
    /// Validates primality by trial division (cheap at this size).
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_CHAR {
            return Err(Error::NotPrime { p });
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotPrime { p });
            }
            d += 1;
        }
        Ok(PrimeCharField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // a, b < 2^16 so the product fits in u64 with room to spare.
        (a * b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by Fermat: `a^(p-2)`. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        base %= self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduces a signed integer into `0..p`.
    pub fn from_signed(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u64
    }
}

// ---------------------------------------------------------------------------
// Monomials and term orders
// ---------------------------------------------------------------------------

/// An exponent vector. Comparisons outside [`MonomialOrder`] use grevlex,
/// which is also the canonical storage order for polynomial terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    // Equal degree: the monomial whose trailing exponent is smaller wins.
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Result<Self> {
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentOverflow {
                detail: format!("exponent {e} exceeds the cap {MAX_EXPONENT}"),
            });
        }
        Ok(Monomial { exps })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            let e = a as u64 + b as u64;
            if e > MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow {
                    detail: format!("product exponent {e} exceeds the cap {MAX_EXPONENT}"),
                });
            }
            exps.push(e as u32);
        }
        Ok(Monomial { exps })
    }

    pub fn checked_pow(&self, e: u64) -> Result<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for &a in &self.exps {
            let v = a as u64 * e;
            if v > MAX_EXPONENT as u64 {
                return Err(Error::ExponentOverflow {
                    detail: format!("power exponent {v} exceeds the cap {MAX_EXPONENT}"),
                });
            }
            exps.push(v as u32);
        }
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must have checked divisibility.
    pub fn divide_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    /// True when the supports are disjoint, i.e. `lcm = self * other`.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.exps, &other.exps)
    }
}

/// A global monomial order: total, multiplicative, with 1 minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic (the default everywhere).
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `k` variables: compares the leading
    /// block by grevlex, breaking ties by grevlex on the remaining block.
    /// Any monomial involving an eliminated variable beats any that does not.
    ElimFirst(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps.len(), b.exps.len());
        match *self {
            MonomialOrder::Grevlex => grevlex_cmp(&a.exps, &b.exps),
            MonomialOrder::Lex => lex_cmp(&a.exps, &b.exps),
            MonomialOrder::ElimFirst(k) => match grevlex_cmp(&a.exps[..k], &b.exps[..k]) {
                Ordering::Equal => grevlex_cmp(&a.exps[k..], &b.exps[k..]),
                ord => ord,
            },
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::ElimFirst(k) => write!(f, "elim({k})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Ambient rings
// ---------------------------------------------------------------------------

/// The free polynomial ring `F_p[x_1, ..., x_n]`: a field plus named
/// variables. Shared behind `Arc` by every polynomial it contains.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeCharField,
    vars: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        let field = PrimeCharField::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidConfig { detail: "a ring needs at least one variable".into() });
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidConfig {
                    detail: format!("`{v}` is not a valid variable name"),
                });
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidConfig {
                    detail: format!("duplicate variable name `{v}`"),
                });
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }))
    }

    pub fn field(&self) -> &PrimeCharField {
        &self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Parses a polynomial in the strict grammar
    /// `expr := ['-'] term { ('+'|'-') term }`,
    /// `term := factor { '*' factor }`,
    /// `factor := INT | VAR ['^' INT]`.
    pub fn parse(self: &Arc<Self>, src: &str) -> Result<Polynomial> {
        parse::parse_polynomial(self, src)
    }

    /// True when `q` is a power of the characteristic (including `q = 1`).
    pub fn is_frobenius_power(&self, q: u64) -> bool {
        let mut q = q;
        if q == 0 {
            return false;
        }
        while q % self.field.p == 0 {
            q /= self.field.p;
        }
        q == 1
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Ambient-equality used by every cross-object check: pointer identity
/// first (the common case), structural equality as the fallback so that
/// independently constructed but identical rings interoperate.
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A polynomial in canonical form: terms sorted grevlex-descending, all
/// coefficients nonzero and reduced into `0..p`.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u64)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: Arc::clone(ring), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: u64) -> Self {
        let c = c % ring.field.p;
        let mut poly = Polynomial::zero(ring);
        if c != 0 {
            poly.terms.push((Monomial::one(ring.nvars()), c));
        }
        poly
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn variable(ring: &Arc<PolyRing>, index: usize) -> Self {
        assert!(index < ring.nvars());
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::variable(ring.nvars(), index), 1)],
        }
    }

    pub fn from_term(ring: &Arc<PolyRing>, m: Monomial, c: u64) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.field.p;
        let mut poly = Polynomial::zero(ring);
        if c != 0 {
            poly.terms.push((m, c));
        }
        poly
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let p = ring.field.p;
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            let entry = map.entry(m).or_insert(0);
            *entry = (*entry + c % p) % p;
        }
        let mut terms: Vec<(Monomial, u64)> =
            map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.reverse(); // BTreeMap yields grevlex-ascending
        Polynomial { ring: Arc::clone(ring), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.total_degree();
                self.terms.iter().all(|(m, _)| m.total_degree() == d)
            }
        }
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::AmbientMismatch {
                detail: format!(
                    "F_{}[{}] vs F_{}[{}]",
                    self.ring.characteristic(),
                    self.ring.vars.join(","),
                    other.ring.characteristic(),
                    other.ring.vars.join(",")
                ),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        Ok(self.merge(other, true))
    }

    /// Merge two canonical term lists (linear time).
    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = &self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    Ordering::Greater => Some(true),
                    Ordering::Less => Some(false),
                    Ordering::Equal => None,
                },
                (Some(_), None) => Some(true),
                (None, Some(_)) => Some(false),
                (None, None) => unreachable!(),
            };
            match take_left {
                Some(true) => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Some(false) => {
                    let (m, c) = other.terms[j].clone();
                    let c = if negate_other { field.neg(c) } else { c };
                    terms.push((m, c));
                    j += 1;
                }
                None => {
                    let (m, ca) = self.terms[i].clone();
                    let cb = other.terms[j].1;
                    let c = if negate_other { field.sub(ca, cb) } else { field.add(ca, cb) };
                    if c != 0 {
                        terms.push((m, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: Arc::clone(&self.ring), terms }
    }

    pub fn neg(&self) -> Polynomial {
        let field = &self.ring.field;
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let field = &self.ring.field;
        let c = c % field.p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Result<Polynomial> {
        let field = &self.ring.field;
        let c = c % field.p;
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.checked_mul(m)?, field.mul(*tc, c)));
        }
        // Multiplying by a fixed monomial preserves grevlex order.
        Ok(Polynomial { ring: Arc::clone(&self.ring), terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let field = &self.ring.field;
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let entry = map.entry(m).or_insert(0);
                *entry = (*entry + field.mul(*ca, *cb)) % field.p;
            }
        }
        let mut terms: Vec<(Monomial, u64)> =
            map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.reverse();
        Ok(Polynomial { ring: Arc::clone(&self.ring), terms })
    }

    /// `f^e` for an arbitrary exponent, by square-and-multiply.
    pub fn pow(&self, e: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The `q`-th power under Frobenius: `f^q` for `q` a power of `p`.
    /// Coefficients are fixed by Frobenius over the prime field, so this is
    /// a per-term exponent scaling.
    pub fn frobenius_power(&self, q: u64) -> Result<Polynomial> {
        if !self.ring.is_frobenius_power(q) {
            return Err(Error::NotPowerOfChar { q, p: self.ring.characteristic() });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, *c));
        }
        // Exponent scaling by a constant preserves grevlex order.
        Ok(Polynomial { ring: Arc::clone(&self.ring), terms })
    }

    /// Leading (monomial, coefficient) under `order`, or `None` if zero.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, u64)> {
        match order {
            MonomialOrder::Grevlex => self.terms.first().map(|(m, c)| (m, *c)),
            _ => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.cmp(a, b))
                .map(|(m, c)| (m, *c)),
        }
    }

    /// Rescales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) if c == 1 => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: grevlex-descending terms joined by ` + `, coefficients
    /// printed as representatives in `1..p`, so output re-parses to the same
    /// polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = &self.ring.vars;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (vi, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[vi].clone()),
                    _ => factors.push(format!("{}^{}", vars[vi], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Ring presentations
// ---------------------------------------------------------------------------

/// A standard-graded quotient `R = F_p[x_1..x_n] / (relations)`.
///
/// The relations must be homogeneous of positive degree; the empty list
/// presents the polynomial ring itself. Reducedness of `R` is trusted, not
/// verified (establishing it is out of scope for this kernel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    relations: Vec<Polynomial>,
}

impl RingPresentation {
    pub fn new(ring: &Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            if !same_ring(r.ring(), ring) {
                return Err(Error::AmbientMismatch {
                    detail: "relation from a different ambient ring".into(),
                });
            }
            if r.is_zero() {
                return Err(Error::InvalidConfig { detail: "zero relation".into() });
            }
            if !r.is_homogeneous() || r.degree() == Some(0) {
                return Err(Error::NotHomogeneous {
                    detail: format!("relation `{r}` must be homogeneous of degree >= 1"),
                });
            }
        }
        Ok(RingPresentation { ring: Arc::clone(ring), relations })
    }

    /// The polynomial ring `F_p[x_1..x_n]` presented with no relations.
    pub fn free(ring: &Arc<PolyRing>) -> Self {
        RingPresentation { ring: Arc::clone(ring), relations: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Generators of the irrelevant maximal ideal `(x_1, ..., x_n)`.
    pub fn irrelevant_ideal_gens(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars()).map(|i| Polynomial::variable(&self.ring, i)).collect()
    }
}
