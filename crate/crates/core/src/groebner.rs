//! Gröbner bases over `F_p` via Buchberger's algorithm.
//!
//! The pair queue uses Gebauer–Möller style pruning (product criterion,
//! lcm-minimality, chain criterion) and the *normal* selection strategy
//! (smallest lcm first), which keeps the algorithm deterministic: inputs are
//! sorted on construction, ties break on indices, and the final basis is the
//! unique reduced Gröbner basis sorted ascending by leading monomial.
//!
//! Every run is metered: processing an S-pair costs one unit against a
//! configurable budget, and exhausting it aborts with
//! [`Error::WorkLimitExceeded`] rather than hanging.

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeCharField, RingPresentation};

/// Default number of S-pair processing steps before a computation aborts.
pub const DEFAULT_PAIR_BUDGET: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// Order-sorted term lists (internal Buchberger representation)
// ---------------------------------------------------------------------------

/// Terms sorted descending under the active order (not necessarily grevlex).
type Terms = Vec<(Monomial, u64)>;

fn sorted_terms(f: &Polynomial, order: MonomialOrder) -> Terms {
    let mut terms: Terms = f.terms().to_vec();
    if order != MonomialOrder::Grevlex {
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    }
    terms
}

fn terms_to_poly(ring: &Arc<PolyRing>, terms: Terms) -> Polynomial {
    Polynomial::from_terms(ring, terms)
}

fn scale_terms(f: &Terms, c: u64, field: &PrimeCharField) -> Terms {
    f.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect()
}

/// `a - c * m * b`, all inputs and the output sorted under `order`.
fn sub_mul(
    a: &Terms,
    b: &Terms,
    m: &Monomial,
    c: u64,
    field: &PrimeCharField,
    order: MonomialOrder,
) -> Result<Terms> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    // Materialize the scaled multiple lazily, term by term.
    let mut bj: Option<(Monomial, u64)> = None;
    let next_b = |j: &mut usize| -> Result<Option<(Monomial, u64)>> {
        if *j >= b.len() {
            return Ok(None);
        }
        let (bm, bc) = &b[*j];
        *j += 1;
        Ok(Some((bm.checked_mul(m)?, field.neg(field.mul(*bc, c)))))
    };
    if bj.is_none() {
        bj = next_b(&mut j)?;
    }
    loop {
        match (a.get(i), &bj) {
            (None, None) => break,
            (Some((am, ac)), None) => {
                out.push((am.clone(), *ac));
                i += 1;
            }
            (None, Some((bm, bc))) => {
                out.push((bm.clone(), *bc));
                bj = next_b(&mut j)?;
            }
            (Some((am, ac)), Some((bm, bc))) => match order.cmp(am, bm) {
                Ordering::Greater => {
                    out.push((am.clone(), *ac));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm.clone(), *bc));
                    bj = next_b(&mut j)?;
                }
                Ordering::Equal => {
                    let s = field.add(*ac, *bc);
                    if s != 0 {
                        out.push((am.clone(), s));
                    }
                    i += 1;
                    bj = next_b(&mut j)?;
                }
            },
        }
    }
    Ok(out)
}

/// Fully reduces `f` against `basis` (every term, not just the leading one).
/// Basis elements must be monic under `order`. The first basis element whose
/// leading monomial divides the current term wins, which together with the
/// fixed basis order makes reduction deterministic.
fn reduce_full(
    mut work: Terms,
    basis: &[Terms],
    field: &PrimeCharField,
    order: MonomialOrder,
) -> Result<Terms> {
    let mut tail: Terms = Vec::new();
    'outer: while let Some((m, c)) = work.first().cloned() {
        for g in basis {
            let (gm, _) = &g[0];
            if gm.divides(&m) {
                let quot = gm.divide_into(&m);
                work = sub_mul(&work, g, &quot, c, field, order)?;
                continue 'outer;
            }
        }
        tail.push((m, c));
        work.remove(0);
    }
    Ok(tail)
}

fn spoly(
    f: &Terms,
    g: &Terms,
    lcm: &Monomial,
    field: &PrimeCharField,
    order: MonomialOrder,
) -> Result<Terms> {
    // Both inputs are monic: S(f, g) = (lcm/lt f) f - (lcm/lt g) g.
    let mf = f[0].0.divide_into(lcm);
    let mg = g[0].0.divide_into(lcm);
    let mut lifted = Vec::with_capacity(f.len());
    for (m, c) in f {
        lifted.push((m.checked_mul(&mf)?, *c));
    }
    sub_mul(&lifted, g, &mg, 1, field, order)
}

// ---------------------------------------------------------------------------
// Buchberger with Gebauer–Möller pruning
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
}

fn pair_cmp(a: &Pair, b: &Pair, order: MonomialOrder) -> Ordering {
    a.degree
        .cmp(&b.degree)
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then(a.i.cmp(&b.i))
        .then(a.j.cmp(&b.j))
}

/// Installs element `t` into the pair queue, pruning with the product,
/// lcm-minimality, and chain criteria.
fn update_pairs(basis: &[Terms], pairs: &mut Vec<Pair>, t: usize, order: MonomialOrder) {
    let lt_t = &basis[t][0].0;

    let mut fresh: Vec<Pair> = (0..t)
        .map(|i| {
            let lcm = basis[i][0].0.lcm(lt_t);
            let degree = lcm.total_degree();
            Pair { i, j: t, lcm, degree }
        })
        .collect();
    fresh.sort_by(|a, b| pair_cmp(a, b, order));

    // Keep only lcm-minimal representatives (equal lcms: first survives).
    let mut kept: Vec<Pair> = Vec::new();
    'cand: for cand in fresh {
        for k in &kept {
            if k.lcm.divides(&cand.lcm) {
                continue 'cand;
            }
        }
        kept.push(cand);
    }
    // Product criterion: coprime leading monomials reduce to zero.
    kept.retain(|pr| !basis[pr.i][0].0.is_coprime(lt_t));

    // Chain criterion on pairs that predate t.
    pairs.retain(|pr| {
        let lcm_it = basis[pr.i][0].0.lcm(lt_t);
        let lcm_jt = basis[pr.j][0].0.lcm(lt_t);
        !(lt_t.divides(&pr.lcm) && lcm_it != pr.lcm && lcm_jt != pr.lcm)
    });

    pairs.extend(kept);
}

/// Core Buchberger loop over monic, order-sorted term lists.
fn buchberger(
    mut basis: Vec<Terms>,
    field: &PrimeCharField,
    order: MonomialOrder,
    budget: u64,
) -> Result<Vec<Terms>> {
    let mut pairs: Vec<Pair> = Vec::new();
    for t in 0..basis.len() {
        update_pairs(&basis, &mut pairs, t, order);
    }
    let mut processed: u64 = 0;
    while !pairs.is_empty() {
        processed += 1;
        if processed > budget {
            return Err(Error::WorkLimitExceeded { processed, budget });
        }
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| pair_cmp(a, b, order))
            .map(|(idx, _)| idx)
            .expect("nonempty pair queue");
        let pair = pairs.swap_remove(best);
        let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm, field, order)?;
        let nf = reduce_full(s, &basis, field, order)?;
        if !nf.is_empty() {
            let lc = nf[0].1;
            let monic = if lc == 1 { nf } else { scale_terms(&nf, field.inv(lc), field) };
            basis.push(monic);
            update_pairs(&basis, &mut pairs, basis.len() - 1, order);
        }
    }
    Ok(basis)
}

/// Turns a Gröbner basis into *the* reduced one: minimal, monic, tails
/// irreducible, sorted ascending by leading monomial.
fn reduce_basis(
    basis: Vec<Terms>,
    field: &PrimeCharField,
    order: MonomialOrder,
) -> Result<Vec<Terms>> {
    // Minimalize: drop any element whose leading monomial is divisible by
    // another's. Process ascending so survivors are found first.
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<Terms> = Vec::new();
    'outer: for g in sorted {
        for h in &minimal {
            if h[0].0.divides(&g[0].0) {
                continue 'outer;
            }
        }
        minimal.push(g);
    }
    // Tail-reduce each element against the rest. Leading monomials are
    // pairwise indivisible, so full reduction preserves them.
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = reduce_full(minimal[i].clone(), &others, field, order)?;
        debug_assert_eq!(nf[0].0, minimal[i][0].0);
        reduced.push(nf);
    }
    Ok(reduced)
}

// ---------------------------------------------------------------------------
// Ideal handles
// ---------------------------------------------------------------------------

/// An ideal of the ambient polynomial ring, held as a generator list plus a
/// lazily computed, cached reduced Gröbner basis.
///
/// The handle also records the [`RingPresentation`] it was built against so
/// quotient-ring computations can recover the presentation's relations; the
/// generators themselves always live in the free polynomial ring.
#[derive(Debug, Clone)]
pub struct IdealHandle {
    ring: RingPresentation,
    gens: Vec<Polynomial>,
    budget: u64,
    cache: OnceLock<(MonomialOrder, Arc<Vec<Polynomial>>)>,
}

impl IdealHandle {
    /// Builds a handle; zero generators are dropped, duplicates merged, and
    /// the rest sorted by (degree, grevlex) so downstream runs are
    /// reproducible regardless of input order.
    pub fn new(ring: &RingPresentation, gens: Vec<Polynomial>) -> Result<Self> {
        let mut cleaned: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !crate::polyring::same_ring(g.ring(), ring.ring()) {
                return Err(Error::AmbientMismatch {
                    detail: "ideal generator from a different ambient ring".into(),
                });
            }
            if !g.is_zero() && !cleaned.contains(&g) {
                cleaned.push(g);
            }
        }
        cleaned.sort_by(compare_polys);
        Ok(IdealHandle {
            ring: ring.clone(),
            gens: cleaned,
            budget: DEFAULT_PAIR_BUDGET,
            cache: OnceLock::new(),
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self.cache = OnceLock::new();
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// A handle for `relations + gens`: the preimage in the free ring of the
    /// ideal this handle generates in the presented quotient.
    pub fn including_relations(&self) -> Result<IdealHandle> {
        let mut gens = self.ring.relations().to_vec();
        gens.extend(self.gens.iter().cloned());
        Ok(IdealHandle::new(&self.ring, gens)?.with_budget(self.budget))
    }

    /// The reduced Gröbner basis under `order`, cached on first use. A basis
    /// computed for a different order is recomputed (only one slot is kept);
    /// reduced bases are unique, so identical requests always agree.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some((cached_order, gb)) = self.cache.get() {
            if *cached_order == order {
                return Ok(Arc::clone(gb));
            }
        }
        let field = *self.ring.ring().field();
        let seeds: Vec<Terms> = self
            .gens
            .iter()
            .map(|g| {
                let t = sorted_terms(g, order);
                let lc = t[0].1;
                if lc == 1 {
                    t
                } else {
                    scale_terms(&t, field.inv(lc), &field)
                }
            })
            .collect();
        let raw = buchberger(seeds, &field, order, self.budget)?;
        let reduced = reduce_basis(raw, &field, order)?;
        let polys: Vec<Polynomial> = reduced
            .into_iter()
            .map(|t| terms_to_poly(self.ring.ring(), t))
            .collect();
        let arc = Arc::new(polys);
        let _ = self.cache.set((order, Arc::clone(&arc)));
        Ok(arc)
    }

    /// Minimal generators of the leading-term ideal under `order` (the
    /// leading monomials of the reduced basis).
    pub fn leading_monomials(&self, order: MonomialOrder) -> Result<Vec<Monomial>> {
        let gb = self.groebner_basis(order)?;
        Ok(gb
            .iter()
            .map(|g| g.leading_term(order).expect("basis elements are nonzero").0.clone())
            .collect())
    }

    /// The unique normal form of `f` modulo this ideal under grevlex: every
    /// term of the result is outside the leading-term ideal, and
    /// `normal_form(f) == 0` iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !crate::polyring::same_ring(f.ring(), self.ring.ring()) {
            return Err(Error::AmbientMismatch {
                detail: "normal form argument from a different ambient ring".into(),
            });
        }
        let order = MonomialOrder::Grevlex;
        let gb = self.groebner_basis(order)?;
        let basis: Vec<Terms> = gb.iter().map(|g| sorted_terms(g, order)).collect();
        let field = *self.ring.ring().field();
        let nf = reduce_full(sorted_terms(f, order), &basis, &field, order)?;
        Ok(terms_to_poly(self.ring.ring(), nf))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mathematical equality of the generated ideals (reduced bases agree).
    pub fn ideal_eq(&self, other: &IdealHandle) -> Result<bool> {
        let a = self.groebner_basis(MonomialOrder::Grevlex)?;
        let b = other.groebner_basis(MonomialOrder::Grevlex)?;
        Ok(*a == *b)
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        let gb = self.groebner_basis(MonomialOrder::Grevlex)?;
        Ok(gb.len() == 1 && gb[0].is_one())
    }

    /// The bracket power `I^[q] = (g^q : g in gens)` for `q` a power of `p`.
    ///
    /// In characteristic `p` this ideal does not depend on the chosen
    /// generators: any `h = sum a_i g_i` has `h^q = sum a_i^q g_i^q`.
    pub fn bracket_power(&self, q: u64) -> Result<IdealHandle> {
        if !self.ring.ring().is_frobenius_power(q) {
            return Err(Error::NotPowerOfChar { q, p: self.ring.ring().characteristic() });
        }
        let gens: Result<Vec<Polynomial>> =
            self.gens.iter().map(|g| g.frobenius_power(q)).collect();
        Ok(IdealHandle::new(&self.ring, gens?)?.with_budget(self.budget))
    }

    /// The ideal quotient `(I : f) = {g : g f in I}`, computed by
    /// intersecting `I` with `(f)` via a single auxiliary elimination
    /// variable and then dividing the intersection's generators by `f`.
    pub fn colon(&self, f: &Polynomial) -> Result<IdealHandle> {
        if f.is_zero() {
            return Err(Error::ZeroArgument { detail: "colon by the zero polynomial".into() });
        }
        if !crate::polyring::same_ring(f.ring(), self.ring.ring()) {
            return Err(Error::AmbientMismatch {
                detail: "colon argument from a different ambient ring".into(),
            });
        }
        if self.gens.is_empty() {
            // (0 : f) = 0 in a polynomial ring.
            return Ok(self.clone());
        }
        let ring = self.ring.ring();
        let (ext, lift) = extension_ring(ring)?;
        // t*I + (1-t)*(f), then eliminate t to get I ∩ (f).
        let t = Polynomial::variable(&ext, 0);
        let one_minus_t = Polynomial::one(&ext).sub(&t)?;
        let mut ext_gens = Vec::with_capacity(self.gens.len() + 1);
        for g in &self.gens {
            ext_gens.push(t.mul(&lift(g))?);
        }
        ext_gens.push(one_minus_t.mul(&lift(f))?);
        let ext_ring = RingPresentation::free(&ext);
        let ext_ideal = IdealHandle::new(&ext_ring, ext_gens)?.with_budget(self.budget);
        let gb = ext_ideal.groebner_basis(MonomialOrder::ElimFirst(1))?;
        let mut quotient_gens = Vec::new();
        for g in gb.iter() {
            if g.terms().iter().all(|(m, _)| m.exponents()[0] == 0) {
                let lowered = lower(ring, g);
                quotient_gens.push(exact_divide(&lowered, f)?);
            }
        }
        Ok(IdealHandle::new(&self.ring, quotient_gens)?.with_budget(self.budget))
    }

    /// The saturation `(I : f^∞)`: colon repeatedly until the ideal stops
    /// growing.
    pub fn saturation(&self, f: &Polynomial) -> Result<IdealHandle> {
        let mut current = self.clone();
        loop {
            let next = current.colon(f)?;
            if next.ideal_eq(&current)? {
                return Ok(current);
            }
            current = next;
        }
    }
}

fn compare_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for ((ma, ca), (mb, cb)) in a.terms().iter().zip(b.terms()) {
            match ma.cmp(mb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        a.terms().len().cmp(&b.terms().len())
    })
}

/// Builds `F_p[t, x_1..x_n]` with a fresh elimination variable up front, and
/// returns it with a lift that prepends a zero exponent.
fn extension_ring(
    ring: &Arc<PolyRing>,
) -> Result<(Arc<PolyRing>, impl Fn(&Polynomial) -> Polynomial + '_)> {
    let mut aux = "aux".to_string();
    let mut counter = 0;
    while ring.variables().iter().any(|v| *v == aux) {
        aux = format!("aux{counter}");
        counter += 1;
    }
    let mut vars: Vec<&str> = vec![&aux];
    let user_vars: Vec<String> = ring.variables().to_vec();
    vars.extend(user_vars.iter().map(|s| s.as_str()));
    let ext = PolyRing::new(ring.characteristic(), &vars)?;
    let ext_for_lift = Arc::clone(&ext);
    let lift = move |f: &Polynomial| -> Polynomial {
        let terms = f.terms().iter().map(|(m, c)| {
            let mut exps = vec![0u32];
            exps.extend_from_slice(m.exponents());
            (Monomial::from_exponents(exps).expect("lift preserves the cap"), *c)
        });
        Polynomial::from_terms(&ext_for_lift, terms.collect::<Vec<_>>())
    };
    Ok((ext, lift))
}

/// Drops the leading elimination exponent (which must be zero on all terms).
fn lower(ring: &Arc<PolyRing>, f: &Polynomial) -> Polynomial {
    let terms: Vec<(Monomial, u64)> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(m.exponents()[0], 0);
            (
                Monomial::from_exponents(m.exponents()[1..].to_vec()).expect("within cap"),
                *c,
            )
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Exact division `h / f` for `h` a multiple of `f`. Division by a single
/// divisor leaves no remainder exactly when `f` divides `h`, so a nonzero
/// remainder here indicates a kernel bug.
fn exact_divide(h: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    let ring = Arc::clone(h.ring());
    let field = *ring.field();
    let order = MonomialOrder::Grevlex;
    let fl = sorted_terms(f, order);
    let (fm, fc) = fl[0].clone();
    let mut rem = sorted_terms(h, order);
    let mut quot: Vec<(Monomial, u64)> = Vec::new();
    while let Some((m, c)) = rem.first().cloned() {
        if !fm.divides(&m) {
            return Err(Error::internal(format!(
                "exact division failed: `{h}` is not a multiple of `{f}`"
            )));
        }
        let qm = fm.divide_into(&m);
        let qc = field.mul(c, field.inv(fc));
        rem = sub_mul(&rem, &fl, &qm, qc, &field, order)?;
        quot.push((qm, qc));
    }
    Ok(Polynomial::from_terms(&ring, quot))
}

/// Checks the Buchberger criterion post hoc: every S-polynomial of `basis`
/// reduces to zero against `basis`. Used by tests and diagnostics to verify
/// claimed Gröbner bases independently of how they were produced.
pub fn is_groebner_basis(basis: &[Polynomial], order: MonomialOrder) -> Result<bool> {
    if basis.is_empty() {
        return Ok(true);
    }
    let field = *basis[0].ring().field();
    let lists: Vec<Terms> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let t = sorted_terms(g, order);
            let lc = t[0].1;
            if lc == 1 {
                t
            } else {
                scale_terms(&t, field.inv(lc), &field)
            }
        })
        .collect();
    for i in 0..lists.len() {
        for j in (i + 1)..lists.len() {
            let lcm = lists[i][0].0.lcm(&lists[j][0].0);
            let s = spoly(&lists[i], &lists[j], &lcm, &field, order)?;
            if !reduce_full(s, &lists, &field, order)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
