//! Exact multivariate polynomial algebra over the rationals: Buchberger's
//! algorithm with the normal selection strategy and the standard criteria,
//! reduced Groebner bases, elimination, ring map kernels, ideal
//! intersections, truncated Hilbert functions, Krull dimension by independent
//! variable sets, and toric ideals with saturation.
//!
//! The engine is deterministic: given the same generators and order it always
//! produces the same reduced basis, so basis outputs are usable as golden
//! values. All potentially long computations draw from an explicit
//! [`StepBudget`] and fail hard with [`GrobnerError::BudgetExceeded`] rather
//! than silently running away.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::integer_kernel;
use crate::linalg::IntMatrix;
use crate::{Int, Rat};

// ---------------------------------------------------------------------------
// polynomials

/// Exponent vector; index = variable.
pub type Exponents = Vec<u32>;

/// Multivariate polynomial with exact rational coefficients, stored as a
/// canonical exponent-to-coefficient map (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Polynomial {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rat) -> Polynomial {
        let mut p = Polynomial::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Polynomial {
        Polynomial::constant(arity, Rat::one())
    }

    pub fn variable(arity: usize, index: usize) -> Polynomial {
        assert!(index < arity, "variable index out of range");
        let mut e = vec![0u32; arity];
        e[index] = 1;
        Polynomial::monomial(arity, e, Rat::one())
    }

    pub fn monomial(arity: usize, exponents: Exponents, coeff: Rat) -> Polynomial {
        assert_eq!(exponents.len(), arity);
        let mut p = Polynomial::zero(arity);
        p.add_term(exponents, coeff);
        p
    }

    pub fn from_terms(arity: usize, terms: &[(Exponents, Rat)]) -> Polynomial {
        let mut p = Polynomial::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity);
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, other.arity);
        let mut out = Polynomial::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(exp_add(ea, eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(self.arity);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Relabels variables: old variable `i` becomes `map[i]` in a ring of
    /// `new_arity` variables. `map` must be injective.
    pub fn map_variables(&self, new_arity: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.arity);
        let mut out = Polynomial::zero(new_arity);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; new_arity];
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    assert!(map[i] < new_arity);
                    ne[map[i]] += x;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Drops the first `k` variables, which must not occur.
    pub fn restrict_to_suffix(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.arity - k);
        for (e, c) in &self.terms {
            assert!(e[..k].iter().all(|&x| x == 0), "variable to drop still occurs");
            out.add_term(e[k..].to_vec(), c.clone());
        }
        out
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.arity);
        let target_arity = images.first().map_or(0, Polynomial::arity);
        let mut out = Polynomial::zero(target_arity);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target_arity, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = term.mul(&images[i].pow(x));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

pub fn exp_add(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_lcm(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// `a / b` when `b` divides `a`.
pub fn exp_div(a: &Exponents, b: &Exponents) -> Option<Exponents> {
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(out)
}

fn exp_coprime(a: &Exponents, b: &Exponents) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// True iff every term of `f` maps to the same character sum zero under the
/// monomial substitution `x_i -> t^(images[i])`; i.e. `f` vanishes identically
/// on the torus parametrized by those characters.
pub fn vanishes_under_monomial_map(f: &Polynomial, images: &[Vec<Int>]) -> bool {
    assert_eq!(images.len(), f.arity());
    let mut sums: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut character = vec![Int::zero(); images.first().map_or(0, Vec::len)];
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                let scaled = crate::linalg::vscale(&Int::from(x), &images[i]);
                character = crate::linalg::vadd(&character, &scaled);
            }
        }
        *sums.entry(character).or_insert_with(Rat::zero) += c;
    }
    sums.values().all(Rat::is_zero)
}

// ---------------------------------------------------------------------------
// monomial orders

/// Global monomial orders. `Block { first }` compares the leading block of
/// `first` variables degrevlex-first, making it an elimination order for
/// those variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block { first: usize },
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // same degree: the one whose last nonzero difference is negative is larger
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp_exponents(&self, a: &Exponents, b: &Exponents) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::Block { first } => {
                match grevlex_cmp(&a[..first], &b[..first]) {
                    Ordering::Equal => grevlex_cmp(&a[first..], &b[first..]),
                    other => other,
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// budget and errors

pub const DEFAULT_BUDGET_STEPS: u64 = 20_000_000;

/// Reduction-step budget shared across one computation.
#[derive(Clone, Debug)]
pub struct StepBudget {
    remaining: u64,
    spent: u64,
}

impl StepBudget {
    pub fn new(steps: u64) -> StepBudget {
        StepBudget { remaining: steps, spent: 0 }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    fn spend(&mut self, n: u64) -> Result<(), GrobnerError> {
        self.spent += n;
        if self.remaining < n {
            self.remaining = 0;
            return Err(GrobnerError::BudgetExceeded { spent: self.spent });
        }
        self.remaining -= n;
        Ok(())
    }
}

impl Default for StepBudget {
    fn default() -> StepBudget {
        StepBudget::new(DEFAULT_BUDGET_STEPS)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrobnerError {
    /// The configured reduction-step budget ran out.
    BudgetExceeded { spent: u64 },
}

impl fmt::Display for GrobnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrobnerError::BudgetExceeded { spent } => {
                write!(f, "computation budget exceeded after {} reduction steps", spent)
            }
        }
    }
}

impl core::error::Error for GrobnerError {}

// ---------------------------------------------------------------------------
// engine representation

/// Terms sorted strictly descending under the active order.
#[derive(Clone, Debug)]
struct OrderedPoly {
    terms: Vec<(Exponents, Rat)>,
}

impl OrderedPoly {
    fn from_polynomial(p: &Polynomial, order: MonomialOrder) -> OrderedPoly {
        let mut terms: Vec<(Exponents, Rat)> =
            p.terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp_exponents(b, a));
        OrderedPoly { terms }
    }

    fn to_polynomial(&self, arity: usize) -> Polynomial {
        Polynomial::from_terms(arity, &self.terms)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lt_exp(&self) -> &Exponents {
        &self.terms[0].0
    }

    fn lt_coeff(&self) -> &Rat {
        &self.terms[0].1
    }

    /// `self + c * x^shift * other`, merging sorted term lists.
    fn add_scaled_shifted(
        &self,
        other: &OrderedPoly,
        c: &Rat,
        shift: &Exponents,
        order: MonomialOrder,
    ) -> OrderedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < other.terms.len() {
            if j == other.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let shifted = exp_add(&other.terms[j].0, shift);
            if i == self.terms.len() {
                let coeff = c * &other.terms[j].1;
                if !coeff.is_zero() {
                    out.push((shifted, coeff));
                }
                j += 1;
                continue;
            }
            match order.cmp_exponents(&self.terms[i].0, &shifted) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let coeff = c * &other.terms[j].1;
                    if !coeff.is_zero() {
                        out.push((shifted, coeff));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &self.terms[i].1 + c * &other.terms[j].1;
                    if !coeff.is_zero() {
                        out.push((self.terms[i].0.clone(), coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OrderedPoly { terms: out }
    }

    /// Scales to primitive integer coefficients with positive leading
    /// coefficient; keeps intermediate arithmetic small.
    fn normalize_content(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut denom_lcm = Int::one();
        for (_, c) in &self.terms {
            denom_lcm = num_integer::Integer::lcm(&denom_lcm, c.denom());
        }
        let mut numer_gcd = Int::zero();
        for (_, c) in &self.terms {
            let scaled = (c * Rat::from(denom_lcm.clone())).to_integer();
            numer_gcd = num_integer::Integer::gcd(&numer_gcd, &scaled);
        }
        if numer_gcd.is_zero() {
            return;
        }
        let mut factor = Rat::new(denom_lcm, numer_gcd);
        if (self.lt_coeff() * &factor).is_negative() {
            factor = -factor;
        }
        for (_, c) in &mut self.terms {
            *c *= &factor;
        }
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let lead = self.lt_coeff().clone();
        for (_, c) in &mut self.terms {
            *c /= &lead;
        }
    }
}

/// Full normal form of `work` against `basis` (also reduces lower terms).
fn reduce_full(
    mut work: OrderedPoly,
    basis: &[OrderedPoly],
    order: MonomialOrder,
    budget: &mut StepBudget,
) -> Result<OrderedPoly, GrobnerError> {
    let mut done: Vec<(Exponents, Rat)> = Vec::new();
    'outer: while !work.is_zero() {
        let (e, c) = work.terms[0].clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            if let Some(shift) = exp_div(&e, g.lt_exp()) {
                budget.spend(1)?;
                let factor = -(&c / g.lt_coeff());
                work = work.add_scaled_shifted(g, &factor, &shift, order);
                continue 'outer;
            }
        }
        done.push((e, c));
        work.terms.remove(0);
    }
    Ok(OrderedPoly { terms: done })
}

fn s_polynomial(f: &OrderedPoly, g: &OrderedPoly, order: MonomialOrder) -> OrderedPoly {
    let lcm = exp_lcm(f.lt_exp(), g.lt_exp());
    let sf = exp_div(&lcm, f.lt_exp()).unwrap();
    let sg = exp_div(&lcm, g.lt_exp()).unwrap();
    let zero = OrderedPoly { terms: Vec::new() };
    let a = zero.add_scaled_shifted(f, &f.lt_coeff().recip(), &sf, order);
    a.add_scaled_shifted(g, &(-g.lt_coeff().recip()), &sg, order)
}

// ---------------------------------------------------------------------------
// reduced Groebner bases

/// Reduced Groebner basis: autoreduced, monic, deterministic for a fixed
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGB {
    arity: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
}

impl ReducedGB {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_trivial_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant() && !self.generators[0].is_zero()
    }

    pub fn leading_exponents(&self) -> Vec<Exponents> {
        self.generators
            .iter()
            .map(|g| {
                OrderedPoly::from_polynomial(g, self.order).lt_exp().clone()
            })
            .collect()
    }
}

pub fn buchberger(
    arity: usize,
    generators: &[Polynomial],
    order: MonomialOrder,
    budget: &mut StepBudget,
) -> Result<ReducedGB, GrobnerError> {
    let mut basis: Vec<OrderedPoly> = Vec::new();
    for g in generators {
        assert_eq!(g.arity(), arity, "generator arity mismatch");
        if g.is_zero() {
            continue;
        }
        let mut p = OrderedPoly::from_polynomial(g, order);
        p.normalize_content();
        basis.push(p);
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm in the active order
        let &(i, j) = pairs
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let lab = exp_lcm(basis[a].lt_exp(), basis[b].lt_exp());
                let lcd = exp_lcm(basis[c].lt_exp(), basis[d].lt_exp());
                order.cmp_exponents(&lab, &lcd).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pairs.remove(&(i, j));
        if exp_coprime(basis[i].lt_exp(), basis[j].lt_exp()) {
            continue; // product criterion
        }
        let lcm_ij = exp_lcm(basis[i].lt_exp(), basis[j].lt_exp());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && exp_div(&lcm_ij, basis[k].lt_exp()).is_some()
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue; // chain criterion
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce_full(s, &basis, order, budget)?;
        if r.is_zero() {
            continue;
        }
        r.normalize_content();
        let t = basis.len();
        basis.push(r);
        for k in 0..t {
            pairs.insert((k, t));
        }
    }

    // minimalize: drop elements whose leading term another leading term divides
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if exp_div(basis[i].lt_exp(), basis[j].lt_exp()).is_some() {
                // LT(j) divides LT(i): drop i unless equal LTs (then drop the
                // later index)
                if basis[i].lt_exp() != basis[j].lt_exp() || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let mut minimal: Vec<OrderedPoly> =
        basis.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| p).collect();

    // autoreduce to fixpoint
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<OrderedPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = reduce_full(minimal[i].clone(), &others, order, budget)?;
            assert!(!r.is_zero(), "minimal basis element reduced to zero");
            if r.terms != minimal[i].terms {
                minimal[i] = r;
                minimal[i].normalize_content();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for p in &mut minimal {
        p.make_monic();
    }
    minimal.sort_by(|a, b| order.cmp_exponents(b.lt_exp(), a.lt_exp()));
    let generators = minimal.iter().map(|p| p.to_polynomial(arity)).collect();
    Ok(ReducedGB { arity, order, generators })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn normal_form(
    f: &Polynomial,
    gb: &ReducedGB,
    budget: &mut StepBudget,
) -> Result<Polynomial, GrobnerError> {
    assert_eq!(f.arity(), gb.arity);
    let basis: Vec<OrderedPoly> =
        gb.generators.iter().map(|g| OrderedPoly::from_polynomial(g, gb.order)).collect();
    let work = OrderedPoly::from_polynomial(f, gb.order);
    let r = reduce_full(work, &basis, gb.order, budget)?;
    Ok(r.to_polynomial(gb.arity))
}

pub fn ideal_membership(
    f: &Polynomial,
    gb: &ReducedGB,
    budget: &mut StepBudget,
) -> Result<bool, GrobnerError> {
    Ok(normal_form(f, gb, budget)?.is_zero())
}

/// Equality of the ideals generated by `a` and `b`, via reduced-basis
/// uniqueness under a fixed order.
pub fn ideal_equality(
    arity: usize,
    a: &[Polynomial],
    b: &[Polynomial],
    budget: &mut StepBudget,
) -> Result<bool, GrobnerError> {
    let ga = buchberger(arity, a, MonomialOrder::GrevLex, budget)?;
    let gb = buchberger(arity, b, MonomialOrder::GrevLex, budget)?;
    Ok(ga.generators == gb.generators)
}

// ---------------------------------------------------------------------------
// elimination and derived operations

/// Generators of the elimination ideal `I ∩ k[x_k, ..., x_{n-1}]`, re-indexed
/// to arity `n - k`.
pub fn eliminate(
    arity: usize,
    generators: &[Polynomial],
    drop_first: usize,
    budget: &mut StepBudget,
) -> Result<Vec<Polynomial>, GrobnerError> {
    assert!(drop_first <= arity);
    if drop_first == 0 {
        let gb = buchberger(arity, generators, MonomialOrder::GrevLex, budget)?;
        return Ok(gb.generators);
    }
    let gb = buchberger(arity, generators, MonomialOrder::Block { first: drop_first }, budget)?;
    let kept: Vec<Polynomial> = gb
        .generators
        .iter()
        .filter(|g| g.terms().keys().all(|e| e[..drop_first].iter().all(|&x| x == 0)))
        .map(|g| g.restrict_to_suffix(drop_first))
        .collect();
    Ok(kept)
}

/// Eliminates an arbitrary set of variables; the result lives in the kept
/// variables in their original relative order.
pub fn eliminate_vars(
    arity: usize,
    generators: &[Polynomial],
    drop: &[usize],
    budget: &mut StepBudget,
) -> Result<Vec<Polynomial>, GrobnerError> {
    let drop_set: BTreeSet<usize> = drop.iter().cloned().collect();
    assert_eq!(drop_set.len(), drop.len(), "duplicate variable to drop");
    let kept: Vec<usize> = (0..arity).filter(|i| !drop_set.contains(i)).collect();
    // permutation old -> new: dropped vars first
    let mut map = vec![0usize; arity];
    for (new_idx, &old) in drop_set.iter().enumerate() {
        map[old] = new_idx;
    }
    for (offset, &old) in kept.iter().enumerate() {
        map[old] = drop_set.len() + offset;
    }
    let permuted: Vec<Polynomial> =
        generators.iter().map(|g| g.map_variables(arity, &map)).collect();
    eliminate(arity, &permuted, drop_set.len(), budget)
}

/// Kernel of the ring map `k[y_0..y_{s-1}] -> k[x_0..x_{m-1}]/Q`, sending
/// `y_j` to `images[j]`. Computed from the graph ideal by elimination.
pub fn ring_map_kernel(
    target_arity: usize,
    images: &[Polynomial],
    quotient_relations: &[Polynomial],
    budget: &mut StepBudget,
) -> Result<Vec<Polynomial>, GrobnerError> {
    let s = images.len();
    let total = target_arity + s;
    let embed_target: Vec<usize> = (0..target_arity).collect();
    let mut gens: Vec<Polynomial> = Vec::new();
    for q in quotient_relations {
        assert_eq!(q.arity(), target_arity);
        gens.push(q.map_variables(total, &embed_target));
    }
    for (j, img) in images.iter().enumerate() {
        assert_eq!(img.arity(), target_arity);
        let y = Polynomial::variable(total, target_arity + j);
        gens.push(y.sub(&img.map_variables(total, &embed_target)));
    }
    eliminate(total, &gens, target_arity, budget)
}

/// `I ∩ J` via the auxiliary-variable trick `t·I + (1-t)·J`.
pub fn ideal_intersection(
    arity: usize,
    a: &[Polynomial],
    b: &[Polynomial],
    budget: &mut StepBudget,
) -> Result<Vec<Polynomial>, GrobnerError> {
    let total = arity + 1;
    let shift: Vec<usize> = (1..=arity).collect();
    let t = Polynomial::variable(total, 0);
    let one_minus_t = Polynomial::one(total).sub(&t);
    let mut gens: Vec<Polynomial> = Vec::new();
    for f in a {
        assert_eq!(f.arity(), arity);
        gens.push(t.mul(&f.map_variables(total, &shift)));
    }
    for g in b {
        assert_eq!(g.arity(), arity);
        gens.push(one_minus_t.mul(&g.map_variables(total, &shift)));
    }
    eliminate(total, &gens, 1, budget)
}

/// Counts of standard monomials (monomials outside the leading-term ideal)
/// for each total degree `0..=max_degree`.
pub fn hilbert_function_truncated(
    arity: usize,
    generators: &[Polynomial],
    max_degree: u32,
    budget: &mut StepBudget,
) -> Result<Vec<usize>, GrobnerError> {
    let gb = buchberger(arity, generators, MonomialOrder::GrevLex, budget)?;
    let lts = gb.leading_exponents();
    let mut counts = vec![0usize; max_degree as usize + 1];
    let mut exps = vec![0u32; arity];
    count_standard_monomials(&lts, &mut exps, 0, 0, max_degree, &mut counts);
    Ok(counts)
}

fn count_standard_monomials(
    lts: &[Exponents],
    exps: &mut Vec<u32>,
    var: usize,
    degree: u32,
    max_degree: u32,
    counts: &mut [usize],
) {
    if var == exps.len() {
        if lts.iter().all(|lt| exp_div(exps, lt).is_none()) {
            counts[degree as usize] += 1;
        }
        return;
    }
    for d in 0..=(max_degree - degree) {
        exps[var] = d;
        count_standard_monomials(lts, exps, var + 1, degree + d, max_degree, counts);
    }
    exps[var] = 0;
}

/// Krull dimension of the quotient by the ideal: the largest variable subset
/// supporting no leading term. `None` for the unit ideal.
pub fn krull_dimension(
    arity: usize,
    generators: &[Polynomial],
    budget: &mut StepBudget,
) -> Result<Option<usize>, GrobnerError> {
    let gb = buchberger(arity, generators, MonomialOrder::GrevLex, budget)?;
    if gb.is_trivial_ideal() {
        return Ok(None);
    }
    let lts = gb.leading_exponents();
    let mut best: Option<usize> = None;
    for mask in 0..(1u64 << arity) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size <= b) {
            continue;
        }
        // independent iff no leading term is supported inside the subset
        let independent = lts.iter().all(|lt| {
            lt.iter().enumerate().any(|(i, &x)| x > 0 && mask & (1 << i) == 0)
        });
        if independent {
            best = Some(size);
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// toric ideals

/// The toric ideal of a point configuration: the kernel of
/// `k[x_0..x_{s-1}] -> k[t^{±}]`, `x_i -> t^(points[i])`, as binomials from a
/// kernel-lattice basis saturated by every variable in turn. For a graded
/// presentation (a projective embedding) place the configuration at a common
/// height first; affine semigroup charts pass their generators as-is.
pub fn toric_ideal(
    points: &[Vec<Int>],
    budget: &mut StepBudget,
) -> Result<Vec<Polynomial>, GrobnerError> {
    let s = points.len();
    if s == 0 {
        return Ok(Vec::new());
    }
    let d = points[0].len();
    let mut rows = Vec::with_capacity(d);
    for r in 0..d {
        rows.push(points.iter().map(|p| p[r].clone()).collect::<Vec<Int>>());
    }
    let kernel = integer_kernel(&IntMatrix::from_rows(rows));
    let mut gens: Vec<Polynomial> = kernel.iter().map(|u| lattice_binomial(s, u)).collect();
    // saturate by each variable: (I : x_i^∞) via I + (1 - w·x_i), eliminate w
    for i in 0..s {
        let total = s + 1;
        let shift: Vec<usize> = (1..=s).collect();
        let mut aug: Vec<Polynomial> =
            gens.iter().map(|g| g.map_variables(total, &shift)).collect();
        let w = Polynomial::variable(total, 0);
        let xi = Polynomial::variable(total, i + 1);
        aug.push(Polynomial::one(total).sub(&w.mul(&xi)));
        gens = eliminate(total, &aug, 1, budget)?;
    }
    let gb = buchberger(s, &gens, MonomialOrder::GrevLex, budget)?;
    Ok(gb.generators().to_vec())
}

/// `x^(u+) - x^(u-)` for an integer vector `u`.
pub fn lattice_binomial(arity: usize, u: &[Int]) -> Polynomial {
    assert_eq!(u.len(), arity);
    let mut plus = vec![0u32; arity];
    let mut minus = vec![0u32; arity];
    for (i, x) in u.iter().enumerate() {
        if x.is_positive() {
            plus[i] = u32::try_from(x.magnitude().clone()).expect("exponent fits in u32");
        } else if x.is_negative() {
            minus[i] = u32::try_from(x.magnitude().clone()).expect("exponent fits in u32");
        }
    }
    Polynomial::monomial(arity, plus, Rat::one())
        .sub(&Polynomial::monomial(arity, minus, Rat::one()))
}

// ---------------------------------------------------------------------------
// text format

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial syntax error: {}", self.message)
    }
}

impl core::error::Error for PolyParseError {}

fn parse_err(msg: &str) -> PolyParseError {
    PolyParseError { message: String::from(msg) }
}

/// Parses `2*x^2*y - 3/4*z + 1` style syntax against a declared variable
/// list. No parentheses; terms separated by top-level `+`/`-`.
pub fn parse_polynomial(input: &str, vars: &[&str]) -> Result<Polynomial, PolyParseError> {
    let arity = vars.len();
    let mut out = Polynomial::zero(arity);
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_err("empty polynomial"));
    }
    let bytes = compact.as_bytes();
    let mut idx = 0;
    while idx < bytes.len() {
        let mut sign = Rat::one();
        while idx < bytes.len() && (bytes[idx] == b'+' || bytes[idx] == b'-') {
            if bytes[idx] == b'-' {
                sign = -sign;
            }
            idx += 1;
        }
        let start = idx;
        while idx < bytes.len() && bytes[idx] != b'+' && bytes[idx] != b'-' {
            idx += 1;
        }
        if start == idx {
            return Err(parse_err("empty term"));
        }
        let term_src = &compact[start..idx];
        let (exps, coeff) = parse_term(term_src, vars)?;
        out.add_term(exps, sign * coeff);
    }
    Ok(out)
}

fn parse_term(src: &str, vars: &[&str]) -> Result<(Exponents, Rat), PolyParseError> {
    let mut exps = vec![0u32; vars.len()];
    let mut coeff = Rat::one();
    for factor in src.split('*') {
        if factor.is_empty() {
            return Err(parse_err("empty factor"));
        }
        if factor.chars().next().unwrap().is_ascii_digit() {
            let mut parts = factor.splitn(2, '/');
            let num_src = parts.next().unwrap();
            let num: Int =
                num_src.parse().map_err(|_| parse_err("bad integer coefficient"))?;
            let den: Int = match parts.next() {
                Some(d) => d.parse().map_err(|_| parse_err("bad denominator"))?,
                None => Int::one(),
            };
            if den.is_zero() {
                return Err(parse_err("zero denominator"));
            }
            coeff *= Rat::new(num, den);
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let power: u32 = p.parse().map_err(|_| parse_err("bad exponent"))?;
                (n, power)
            }
            None => (factor, 1u32),
        };
        let var_idx = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| parse_err("unknown variable"))?;
        exps[var_idx] += power;
    }
    Ok((exps, coeff))
}

/// Renders with terms in descending grevlex order.
pub fn polynomial_to_string(f: &Polynomial, vars: &[&str]) -> String {
    use core::fmt::Write;
    assert_eq!(vars.len(), f.arity());
    if f.is_zero() {
        return String::from("0");
    }
    let ordered = OrderedPoly::from_polynomial(f, MonomialOrder::GrevLex);
    let mut out = String::new();
    for (k, (e, c)) in ordered.terms.iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let is_const_term = e.iter().all(|&x| x == 0);
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || is_const_term {
            let mut s = String::new();
            if abs.is_integer() {
                write!(s, "{}", abs.numer()).unwrap();
            } else {
                write!(s, "{}/{}", abs.numer(), abs.denom()).unwrap();
            }
            factors.push(s);
        }
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let mut s = String::from(vars[i]);
            if x > 1 {
                write!(s, "^{}", x).unwrap();
            }
            factors.push(s);
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivec;

    fn p(src: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(src, vars).unwrap()
    }

    fn fresh() -> StepBudget {
        StepBudget::default()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let vars = ["x", "y", "z"];
        let f = p("2*x^2*y - 3/4*z + 1", &vars);
        assert_eq!(polynomial_to_string(&f, &vars), "2*x^2*y - 3/4*z + 1");
        let g = p("-x + x", &vars);
        assert!(g.is_zero());
        assert!(parse_polynomial("q + 1", &vars).is_err());
    }

    #[test]
    fn grevlex_order_basics() {
        let ord = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 > x in grevlex with x before y
        let x2 = vec![2, 0];
        let xy = vec![1, 1];
        let y2 = vec![0, 2];
        let x = vec![1, 0];
        assert_eq!(ord.cmp_exponents(&x2, &xy), Ordering::Greater);
        assert_eq!(ord.cmp_exponents(&xy, &y2), Ordering::Greater);
        assert_eq!(ord.cmp_exponents(&y2, &x), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        let ord = MonomialOrder::Block { first: 1 };
        // any power of the first variable beats anything without it
        assert_eq!(ord.cmp_exponents(&vec![1, 0], &vec![0, 9]), Ordering::Greater);
    }

    #[test]
    fn principal_ideal_basis() {
        let vars = ["x"];
        let gb = buchberger(1, &[p("3*x", &vars)], MonomialOrder::GrevLex, &mut fresh()).unwrap();
        assert_eq!(gb.generators(), &[p("x", &vars)]);
    }

    #[test]
    fn lex_basis_of_twisted_pair() {
        let vars = ["x", "y", "z"];
        let gens = [p("x^2 - y", &vars), p("x^3 - z", &vars)];
        let gb = buchberger(3, &gens, MonomialOrder::Lex, &mut fresh()).unwrap();
        assert!(gb.generators().contains(&p("y^3 - z^2", &vars)));
        // the whole basis reduces the original generators to zero
        for g in &gens {
            assert!(ideal_membership(g, &gb, &mut fresh()).unwrap());
        }
    }

    #[test]
    fn normal_form_single_substitution() {
        let vars = ["x", "y"];
        let gb = buchberger(2, &[p("x - y", &vars)], MonomialOrder::Lex, &mut fresh()).unwrap();
        let nf = normal_form(&p("x^2", &vars), &gb, &mut fresh()).unwrap();
        assert_eq!(nf, p("y^2", &vars));
    }

    #[test]
    fn monomial_ideal_membership() {
        let vars = ["t1", "t2", "t3", "t4", "t5", "t6", "t7"];
        let gens = [
            p("t1*t2", &vars),
            p("t1*t3", &vars),
            p("t4*t5", &vars),
            p("t4*t6", &vars),
        ];
        let gb = buchberger(7, &gens, MonomialOrder::GrevLex, &mut fresh()).unwrap();
        assert!(ideal_membership(&p("t1*t2*t7", &vars), &gb, &mut fresh()).unwrap());
        assert!(!ideal_membership(&p("t2*t3", &vars), &gb, &mut fresh()).unwrap());
    }

    #[test]
    fn elimination_examples() {
        // eliminate t from (t*x - 1, y - t): the relation x*y - 1 remains
        let vars = ["t", "x", "y"];
        let gens = [p("t*x - 1", &vars), p("y - t", &vars)];
        let out = eliminate(3, &gens, 1, &mut fresh()).unwrap();
        assert_eq!(out, alloc::vec![p("x*y - 1", &["x", "y"])]);

        let gens2 = [p("x - y", &["x", "y"])];
        let out2 = eliminate(2, &gens2, 1, &mut fresh()).unwrap();
        assert!(out2.is_empty());
    }

    #[test]
    fn eliminate_arbitrary_variables() {
        // drop the middle variable
        let vars = ["x", "t", "y"];
        let gens = [p("t*x - 1", &vars), p("y - t", &vars)];
        let out = eliminate_vars(3, &gens, &[1], &mut fresh()).unwrap();
        assert_eq!(out, alloc::vec![p("x*y - 1", &["x", "y"])]);
    }

    #[test]
    fn intersection_examples() {
        let vars = ["x", "y"];
        let meet = ideal_intersection(2, &[p("x", &vars)], &[p("y", &vars)], &mut fresh()).unwrap();
        assert!(ideal_equality(2, &meet, &[p("x*y", &vars)], &mut fresh()).unwrap());

        let vars3 = ["x", "y", "z"];
        let meet2 = ideal_intersection(
            3,
            &[p("x", &vars3), p("y", &vars3)],
            &[p("z", &vars3)],
            &mut fresh(),
        )
        .unwrap();
        assert!(ideal_equality(
            3,
            &meet2,
            &[p("x*z", &vars3), p("y*z", &vars3)],
            &mut fresh()
        )
        .unwrap());
    }

    #[test]
    fn kernel_of_segre_map() {
        // y_ij -> t_i * s_j for 2x2: one relation, the 2x2 determinant
        let t = |i: usize| Polynomial::variable(4, i);
        let images = [
            t(0).mul(&t(2)),
            t(0).mul(&t(3)),
            t(1).mul(&t(2)),
            t(1).mul(&t(3)),
        ];
        let kernel = ring_map_kernel(4, &images, &[], &mut fresh()).unwrap();
        let vars = ["a", "b", "c", "d"];
        assert!(ideal_equality(4, &kernel, &[p("a*d - b*c", &vars)], &mut fresh()).unwrap());
    }

    #[test]
    fn kernel_of_identity_map() {
        let images = [Polynomial::variable(2, 0), Polynomial::variable(2, 1)];
        let kernel = ring_map_kernel(2, &images, &[], &mut fresh()).unwrap();
        assert!(kernel.is_empty());
    }

    #[test]
    fn hilbert_function_examples() {
        let zero: [Polynomial; 0] = [];
        assert_eq!(
            hilbert_function_truncated(2, &zero, 3, &mut fresh()).unwrap(),
            alloc::vec![1, 2, 3, 4]
        );
        let vars = ["x", "y"];
        let gens = [p("x^2", &vars), p("y^2", &vars)];
        assert_eq!(
            hilbert_function_truncated(2, &gens, 3, &mut fresh()).unwrap(),
            alloc::vec![1, 2, 1, 0]
        );
    }

    #[test]
    fn krull_dimension_examples() {
        let zero: [Polynomial; 0] = [];
        assert_eq!(krull_dimension(9, &zero, &mut fresh()).unwrap(), Some(9));
        let vars = ["x", "y"];
        assert_eq!(
            krull_dimension(2, &[p("x", &vars)], &mut fresh()).unwrap(),
            Some(1)
        );
        assert_eq!(
            krull_dimension(2, &[p("1", &vars)], &mut fresh()).unwrap(),
            None
        );
    }

    #[test]
    fn toric_ideal_of_collinear_points() {
        // exponents 0..3 at height one: the classical three quadrics
        let pts = [ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[2, 1]), ivec(&[3, 1])];
        let ideal = toric_ideal(&pts, &mut fresh()).unwrap();
        let vars = ["a", "b", "c", "d"];
        let expected = [
            p("a*c - b^2", &vars),
            p("a*d - b*c", &vars),
            p("b*d - c^2", &vars),
        ];
        assert_eq!(ideal.len(), 3);
        assert!(ideal_equality(4, &ideal, &expected, &mut fresh()).unwrap());
        for g in &ideal {
            assert!(vanishes_under_monomial_map(g, &pts));
        }
    }

    #[test]
    fn toric_ideal_of_single_point_is_zero() {
        let ideal = toric_ideal(&[ivec(&[2, 5])], &mut fresh()).unwrap();
        assert!(ideal.is_empty());
    }

    /// Distinct sums of `degree`-element multisets of the configuration; the
    /// graded semigroup count the toric ideal's standard monomials must hit.
    fn semigroup_counts(points: &[Vec<Int>], max_degree: u32) -> Vec<usize> {
        fn sums(
            points: &[Vec<Int>],
            from: usize,
            left: u32,
            acc: &Vec<Int>,
            out: &mut BTreeSet<Vec<Int>>,
        ) {
            if left == 0 {
                out.insert(acc.clone());
                return;
            }
            for i in from..points.len() {
                let next = crate::linalg::vadd(acc, &points[i]);
                sums(points, i, left - 1, &next, out);
            }
        }
        let dim = points.first().map_or(0, Vec::len);
        (0..=max_degree)
            .map(|d| {
                let mut seen = BTreeSet::new();
                sums(points, 0, d, &vec![Int::zero(); dim], &mut seen);
                seen.len()
            })
            .collect()
    }

    #[test]
    fn toric_ideal_matches_semigroup_counting() {
        // graded configurations (common last coordinate); the second has a
        // generator gap and exercises the saturation rounds
        let configs = [
            alloc::vec![ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[2, 1]), ivec(&[3, 1])],
            alloc::vec![ivec(&[0, 1]), ivec(&[1, 1]), ivec(&[3, 1]), ivec(&[4, 1])],
            alloc::vec![ivec(&[0, 0, 1]), ivec(&[1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[1, 1, 1])],
        ];
        for pts in &configs {
            let ideal = toric_ideal(pts, &mut fresh()).unwrap();
            let hilbert = hilbert_function_truncated(pts.len(), &ideal, 4, &mut fresh()).unwrap();
            assert_eq!(hilbert, semigroup_counts(pts, 4));
            for g in &ideal {
                assert!(vanishes_under_monomial_map(g, pts));
            }
        }
    }

    #[test]
    fn reduced_basis_is_permutation_invariant() {
        let vars = ["x", "y", "z"];
        let gens = [
            p("x*y - z^2", &vars),
            p("x^2 - y*z", &vars),
            p("y^2 - x*z", &vars),
        ];
        let g1 = buchberger(3, &gens, MonomialOrder::GrevLex, &mut fresh()).unwrap();
        let permuted = [gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let g2 = buchberger(3, &permuted, MonomialOrder::GrevLex, &mut fresh()).unwrap();
        assert_eq!(g1.generators(), g2.generators());
    }

    #[test]
    fn absorption_by_ideal_members() {
        let vars = ["x", "y"];
        let gens = [p("x^2 - y", &vars)];
        let gb = buchberger(2, &gens, MonomialOrder::GrevLex, &mut fresh()).unwrap();
        let f = gens[0].mul(&p("x*y - 2", &vars));
        let r = p("y^3 + x", &vars);
        let a = normal_form(&f.add(&r), &gb, &mut fresh()).unwrap();
        let b = normal_form(&r, &gb, &mut fresh()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let vars = ["x", "y", "z"];
        let gens = [
            p("x^4 - y*z^2", &vars),
            p("x*y^3 - z^3", &vars),
            p("y^5 - x^2*z^2", &vars),
        ];
        let mut tiny = StepBudget::new(3);
        let err = buchberger(3, &gens, MonomialOrder::GrevLex, &mut tiny);
        assert!(matches!(err, Err(GrobnerError::BudgetExceeded { .. })));
    }

    #[test]
    fn substitution_and_vanishing() {
        let vars = ["a", "b", "c", "d"];
        let minor = p("a*d - b*c", &vars);
        // a -> (1,0), b -> (1,1), c -> (0,... characters of the 2x2 Segre
        let chars = [ivec(&[1, 0, 1, 0]), ivec(&[1, 0, 0, 1]), ivec(&[0, 1, 1, 0]), ivec(&[0, 1, 0, 1])];
        assert!(vanishes_under_monomial_map(&minor, &chars));
        let not_in = p("a*d - 2*b*c", &vars);
        assert!(!vanishes_under_monomial_map(&not_in, &chars));
    }
}
