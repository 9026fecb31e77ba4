//! Exact truncated multivariate formal power series, and the analytic
//! ingredients built on them: the tree function `w = x·exp(w^{k-1})`, its
//! Euler derivative in rational form, umbral composition against the
//! all-positive complete homogeneous sums `h+`, divided differences, and
//! exact division by Vandermonde factors.
//!
//! A [`Series`] is a sparse coefficient map from exponent vectors to scalars,
//! together with an optional *cap*: the weighted total degree up to which the
//! series is complete. Every operation re-imposes and propagates caps, so a
//! stored series never silently misses a term at or below its cap. A series
//! with `cap == None` is an exact polynomial.
//!
//! Quotients are never formed by generic series division. The three quotient
//! shapes that occur — difference quotients `(a^j - b^j)/(a - b)`, division by
//! Vandermonde factors of an antisymmetric polynomial, and unit denominators
//! `1/(1 - v)` with `v` of positive valuation — each have a dedicated
//! constructor that stays inside the ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::Coeff;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("logarithm requires constant term 1")]
    LogConstantTerm,
    #[error("exponential requires constant term 0")]
    ExpConstantTerm,
    #[error("inversion requires constant term 1")]
    InverseConstantTerm,
    #[error("variable sets differ")]
    VarMismatch,
    #[error("division by {0} left a nonzero remainder (input not antisymmetric)")]
    NonZeroRemainder(String),
    #[error("umbral composition over {0} variables requires zero constant term")]
    UmbralConstantTerm(usize),
}

// ---------------------------------------------------------------------------
// Variable sets
// ---------------------------------------------------------------------------

/// An ordered set of named indeterminates, each with a weight used for
/// truncation. Ordinary variables have weight 1; bookkeeping variables (the
/// factor-count marker `u`, the redundant size marker `z`) have weight 0, and
/// the cycle-length variables `p_j` have weight `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSet {
    /// Variables of weight 1.
    pub fn unit<S: AsRef<str>>(names: &[S]) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            weights: vec![1; names.len()],
        })
    }

    /// Variables with explicit weights.
    pub fn weighted<S: AsRef<str>>(vars: &[(S, u32)]) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: vars.iter().map(|(s, _)| s.as_ref().to_string()).collect(),
            weights: vars.iter().map(|&(_, w)| w).collect(),
        })
    }

    /// The standard set `x1..xm`.
    pub fn xs(m: usize) -> Arc<VarSet> {
        let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
        VarSet::unit(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weighted total degree of an exponent vector.
    pub fn wdeg(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }
}

pub type Exps = Vec<u16>;

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn min_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (None, c) | (c, None) => c,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn cap_plus_val(cap: Option<u32>, val: Option<u32>) -> Option<u32> {
    // completeness bound of a product: cap of one factor + valuation of the
    // other; a zero factor (val = None = infinity) makes the product exact
    match (cap, val) {
        (None, _) | (_, None) => None,
        (Some(c), Some(v)) => Some(c.saturating_add(v)),
    }
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

/// Sparse truncated formal power series over the scalar `C`.
#[derive(Debug, Clone)]
pub struct Series<C: Coeff> {
    vars: Arc<VarSet>,
    cap: Option<u32>,
    terms: BTreeMap<Exps, C>,
}

impl<C: Coeff> PartialEq for Series<C> {
    /// Equality of coefficient maps (zeros dropped); caps are not compared.
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<C: Coeff> Series<C> {
    pub fn zero(vars: &Arc<VarSet>, cap: Option<u32>) -> Self {
        Series {
            vars: vars.clone(),
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, cap: Option<u32>, c: C) -> Self {
        let mut s = Series::zero(vars, cap);
        s.insert(vec![0; vars.len()], c);
        s
    }

    pub fn one(vars: &Arc<VarSet>, cap: Option<u32>) -> Self {
        Series::constant(vars, cap, C::one())
    }

    /// The monomial `x_i`.
    pub fn var(vars: &Arc<VarSet>, cap: Option<u32>, i: usize) -> Self {
        let mut exps = vec![0u16; vars.len()];
        exps[i] = 1;
        Series::monomial(vars, cap, exps, C::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, cap: Option<u32>, exps: Exps, c: C) -> Self {
        let mut s = Series::zero(vars, cap);
        s.insert(exps, c);
        s
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// Drops terms above `cap` and lowers the stored cap.
    pub fn truncated(mut self, cap: u32) -> Self {
        let vars = self.vars.clone();
        self.terms.retain(|e, _| vars.wdeg(e) <= cap);
        self.cap = min_cap(self.cap, Some(cap));
        self
    }

    /// Forgets the cap, declaring the series an exact polynomial. Only valid
    /// when the caller knows no terms were truncated away.
    pub fn into_polynomial(mut self) -> Self {
        self.cap = None;
        self
    }

    fn insert(&mut self, exps: Exps, c: C) {
        if c.is_zero() {
            return;
        }
        if let Some(cap) = self.cap {
            if self.vars.wdeg(&exps) > cap {
                return;
            }
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Least weighted degree of a nonzero term; `None` for the zero series.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.vars.wdeg(e)).min()
    }

    /// Largest weighted degree of a stored term (0 for the zero series).
    pub fn max_wdeg(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| self.vars.wdeg(e))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(same_vars(&self.vars, &other.vars), "variable sets differ");
        let mut out = Series::zero(&self.vars, min_cap(self.cap, other.cap));
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone());
        }
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Series::zero(&self.vars, self.cap);
        for (e, c) in &self.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Series::zero(&self.vars, self.cap);
        for (e, v) in &self.terms {
            out.insert(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(same_vars(&self.vars, &other.vars), "variable sets differ");
        let cap = min_cap(
            cap_plus_val(self.cap, other.valuation()),
            cap_plus_val(other.cap, self.valuation()),
        );
        let mut out = Series::zero(&self.vars, cap);
        let nv = self.vars.len();
        for (ea, ca) in &self.terms {
            let wa = self.vars.wdeg(ea);
            if let Some(cp) = cap {
                if wa > cp {
                    continue;
                }
            }
            for (eb, cb) in &other.terms {
                if let Some(cp) = cap {
                    if wa + self.vars.wdeg(eb) > cp {
                        continue;
                    }
                }
                let mut e = vec![0u16; nv];
                for i in 0..nv {
                    e[i] = ea[i] + eb[i];
                }
                out.insert(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::one(&self.vars, None);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let cap = self.cap.map(|c| c.saturating_sub(self.vars.weight(i)));
        let mut out = Series::zero(&self.vars, cap);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert(e2, c.clone() * C::from_int(e[i] as usize));
        }
        out
    }

    /// The Euler-type operator `x_i d/dx_i`: scales each term by its exponent
    /// in variable `i`. Preserves weighted degrees, hence the cap.
    pub fn euler(&self, i: usize) -> Self {
        let mut out = Series::zero(&self.vars, self.cap);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            out.insert(e.clone(), c.clone() * C::from_int(e[i] as usize));
        }
        out
    }

    /// The full Euler operator `sum_i x_i d/dx_i`: scales each term by its
    /// total (unweighted) degree.
    pub fn euler_all(&self) -> Self {
        let mut out = Series::zero(&self.vars, self.cap);
        for (e, c) in &self.terms {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            if d == 0 {
                continue;
            }
            out.insert(e.clone(), c.clone() * C::from_int(d));
        }
        out
    }

    /// Re-expresses the series over `target`, sending variable `i` of `self`
    /// to variable `map[i]` of `target`. Weights must agree.
    pub fn embed(&self, target: &Arc<VarSet>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.vars.len());
        for (i, &t) in map.iter().enumerate() {
            assert_eq!(
                self.vars.weight(i),
                target.weight(t),
                "variable weights must agree under embedding"
            );
        }
        let mut out = Series::zero(target, self.cap);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u16; target.len()];
            for (i, &t) in map.iter().enumerate() {
                e2[t] += e[i];
            }
            out.insert(e2, c.clone());
        }
        out
    }

    /// Applies a permutation of the variables: variable `i` becomes variable
    /// `perm[i]`. Weights must match along the permutation.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        self.embed(&self.vars.clone(), perm)
    }

    /// Swaps two variables of equal weight.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.vars.len()).collect();
        perm.swap(i, j);
        self.permute_vars(&perm)
    }

    /// Substitutes `subs[i]` for variable `i`, for every variable at once.
    /// Every substituted series must live over one common variable set; a
    /// substitution with a nonzero constant term is only allowed when `self`
    /// is an exact polynomial (otherwise truncation soundness is lost).
    pub fn subst_all(&self, subs: &[&Series<C>]) -> Self {
        assert_eq!(subs.len(), self.vars.len());
        let target = subs
            .first()
            .map(|s| s.vars.clone())
            .expect("substitution needs at least one variable");
        for s in subs {
            assert!(
                same_vars(&target, &s.vars),
                "substituted series must share one variable set"
            );
            if self.cap.is_some() && !s.constant_term().is_zero() {
                panic!("substituting a series with nonzero constant term into a truncated series");
            }
        }
        let mut powers: Vec<Vec<Series<C>>> = (0..subs.len())
            .map(|_| vec![Series::one(&target, None)])
            .collect();
        let mut out = Series::zero(&target, None);
        for (e, c) in &self.terms {
            let mut term = Series::constant(&target, None, c.clone());
            for (v, &ev) in e.iter().enumerate() {
                while powers[v].len() <= ev as usize {
                    let next = powers[v].last().unwrap().mul(subs[v]);
                    powers[v].push(next);
                }
                if ev > 0 {
                    term = term.mul(&powers[v][ev as usize]);
                }
            }
            out = out.add(&term);
        }
        match min_cap(out.cap, self.cap) {
            Some(c) => out.truncated(c),
            None => out,
        }
    }

    /// Sorted `(exponents, coefficient)` pairs, by weighted degree then
    /// exponent vector.
    pub fn sorted_terms(&self) -> Vec<(Exps, C)> {
        let mut v: Vec<(Exps, C)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| {
            self.vars
                .wdeg(a)
                .cmp(&self.vars.wdeg(b))
                .then_with(|| a.cmp(b))
        });
        v
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &ev) in e.iter().enumerate() {
                if ev == 1 {
                    write!(f, " {}", self.vars.name(v))?;
                } else if ev > 1 {
                    write!(f, " {}^{}", self.vars.name(v), ev)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// log / exp / unit inverse
// ---------------------------------------------------------------------------

fn assert_positive_weights<C: Coeff>(f: &Series<C>) {
    assert!(
        (0..f.vars().len()).all(|i| f.vars().weight(i) >= 1),
        "series exponential/logarithm needs positively weighted variables"
    );
    assert!(
        f.cap().is_some(),
        "series exponential/logarithm needs a truncation cap"
    );
}

/// `log f` for a truncated series with constant term 1.
pub fn log_series<C: Coeff>(f: &Series<C>) -> Result<Series<C>, SeriesError> {
    assert_positive_weights(f);
    if !f.constant_term().is_one() {
        return Err(SeriesError::LogConstantTerm);
    }
    let cap = f.cap().unwrap();
    let u = f.sub(&Series::one(f.vars(), f.cap()));
    let mut out = Series::zero(f.vars(), f.cap());
    let mut upow = u.clone();
    let mut i = 1usize;
    while !upow.is_zero() {
        let sign = if i % 2 == 1 { C::one() } else { -C::one() };
        out = out.add(&upow.scale(&(sign / C::from_int(i))));
        upow = upow.mul(&u).truncated(cap);
        i += 1;
    }
    Ok(out)
}

/// `exp f` for a truncated series with constant term 0.
pub fn exp_series<C: Coeff>(f: &Series<C>) -> Result<Series<C>, SeriesError> {
    assert_positive_weights(f);
    if !f.constant_term().is_zero() {
        return Err(SeriesError::ExpConstantTerm);
    }
    let cap = f.cap().unwrap();
    let mut out = Series::one(f.vars(), f.cap());
    let mut fpow = f.clone();
    let mut fact = C::one();
    let mut i = 1usize;
    while !fpow.is_zero() {
        fact = fact * C::from_int(i);
        out = out.add(&fpow.scale(&(C::one() / fact.clone())));
        fpow = fpow.mul(f).truncated(cap);
        i += 1;
    }
    Ok(out)
}

/// `1/f` for a truncated series with constant term 1, via the geometric
/// expansion of the positive-valuation part.
pub fn inverse_unit<C: Coeff>(f: &Series<C>) -> Result<Series<C>, SeriesError> {
    assert_positive_weights(f);
    if !f.constant_term().is_one() {
        return Err(SeriesError::InverseConstantTerm);
    }
    let cap = f.cap().unwrap();
    let v = Series::one(f.vars(), f.cap()).sub(f); // valuation >= 1
    let mut out = Series::one(f.vars(), f.cap());
    let mut vpow = v.clone();
    while !vpow.is_zero() {
        out = out.add(&vpow);
        vpow = vpow.mul(&v).truncated(cap);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Homogeneous sums
// ---------------------------------------------------------------------------

fn exponent_vectors(nv: usize, group: &[usize], degree: usize, min_each: usize) -> Vec<Exps> {
    fn rec(
        group: &[usize],
        pos: usize,
        remaining: usize,
        min_each: usize,
        cur: &mut Exps,
        out: &mut Vec<Exps>,
    ) {
        if pos == group.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail_min = (group.len() - pos - 1) * min_each;
        if remaining < min_each + tail_min {
            return;
        }
        let hi = remaining - tail_min;
        for e in min_each..=hi {
            cur[group[pos]] = e as u16;
            rec(group, pos + 1, remaining - e, min_each, cur, out);
        }
        cur[group[pos]] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; nv];
    rec(group, 0, degree, min_each, &mut cur, &mut out);
    out
}

/// `h+_d` over the given variables: the sum of all monomials of total degree
/// `d` with every exponent at least 1 (`h+_0 = 1`).
pub fn h_plus<C: Coeff>(
    vars: &Arc<VarSet>,
    cap: Option<u32>,
    group: &[usize],
    d: usize,
) -> Series<C> {
    if d == 0 {
        return Series::one(vars, cap);
    }
    let mut out = Series::zero(vars, cap);
    for e in exponent_vectors(vars.len(), group, d, 1) {
        out.insert(e, C::one());
    }
    out
}

/// Complete homogeneous sum `h_d`: all monomials of total degree `d` over the
/// given variables (`h_0 = 1`).
pub fn complete_homogeneous<C: Coeff>(
    vars: &Arc<VarSet>,
    cap: Option<u32>,
    group: &[usize],
    d: usize,
) -> Series<C> {
    if d == 0 {
        return Series::one(vars, cap);
    }
    let mut out = Series::zero(vars, cap);
    for e in exponent_vectors(vars.len(), group, d, 0) {
        out.insert(e, C::one());
    }
    out
}

// ---------------------------------------------------------------------------
// Difference quotients and Vandermonde division
// ---------------------------------------------------------------------------

/// `(a^j - b^j)/(a - b)` as the polynomial identity
/// `sum_{s=0}^{j-1} a^s b^{j-1-s}`; never performs a division.
pub fn power_difference_quotient<C: Coeff>(a: &Series<C>, b: &Series<C>, j: u32) -> Series<C> {
    assert!(same_vars(a.vars(), b.vars()));
    let mut out = Series::zero(a.vars(), min_cap(a.cap(), b.cap()));
    for s in 0..j {
        out = out.add(&a.pow(s).mul(&b.pow(j - 1 - s)));
    }
    out
}

/// `(f(x_{i1}) - f(x_{i2}))/(x_{i1} - x_{i2})` for a univariate `f`, expanded
/// as a genuine bivariate series inside `target`: the degree-`d` coefficient
/// `c_d` of `f` contributes `c_d · sum_{a+b=d-1} x_{i1}^a x_{i2}^b`.
pub fn divided_difference<C: Coeff>(
    f: &Series<C>,
    target: &Arc<VarSet>,
    i1: usize,
    i2: usize,
) -> Series<C> {
    assert_eq!(f.vars().len(), 1, "divided difference needs a univariate series");
    let cap = f.cap().map(|c| c.saturating_sub(1));
    let mut out = Series::zero(target, cap);
    for (e, c) in f.terms() {
        let d = e[0] as usize;
        if d == 0 {
            continue;
        }
        for a in 0..d {
            let mut exps = vec![0u16; target.len()];
            exps[i1] = a as u16;
            exps[i2] = (d - 1 - a) as u16;
            out.insert(exps, c.clone());
        }
    }
    out
}

/// Exact division of a polynomial by `x_i - x_j` via synthetic division in
/// `x_i`. Returns the quotient; errors if the remainder is nonzero.
pub fn divide_by_var_difference<C: Coeff>(
    g: &Series<C>,
    i: usize,
    j: usize,
) -> Result<Series<C>, SeriesError> {
    assert!(
        g.cap().is_none(),
        "exact division needs an untruncated polynomial"
    );
    let vars = g.vars().clone();
    // split by exponent of x_i
    let mut layers: BTreeMap<u16, Series<C>> = BTreeMap::new();
    for (e, c) in g.terms() {
        let ei = e[i];
        let mut e2 = e.clone();
        e2[i] = 0;
        layers
            .entry(ei)
            .or_insert_with(|| Series::zero(&vars, None))
            .insert(e2, c.clone());
    }
    let top = layers.keys().next_back().copied().unwrap_or(0);
    let layer = |e: u16, layers: &BTreeMap<u16, Series<C>>| -> Series<C> {
        layers
            .get(&e)
            .cloned()
            .unwrap_or_else(|| Series::zero(&vars, None))
    };
    let xj = Series::var(&vars, None, j);
    let mut quotient = Series::zero(&vars, None);
    let mut carry = Series::zero(&vars, None);
    for e in (1..=top).rev() {
        let b = layer(e, &layers).add(&carry.mul(&xj));
        // b is the coefficient of x_i^{e-1} in the quotient
        let mut xi_pow = vec![0u16; vars.len()];
        xi_pow[i] = e - 1;
        quotient = quotient.add(&b.mul(&Series::monomial(&vars, None, xi_pow, C::one())));
        carry = b;
    }
    let remainder = layer(0, &layers).add(&carry.mul(&xj));
    if !remainder.is_zero() {
        return Err(SeriesError::NonZeroRemainder(format!(
            "{} - {}",
            vars.name(i),
            vars.name(j)
        )));
    }
    Ok(quotient)
}

/// Exact quotient `g / V(x_{g_1},..,x_{g_m})` of an antisymmetric polynomial
/// by the Vandermonde product `prod_{a<b} (x_{g_a} - x_{g_b})`, performed as
/// sequential exact divisions. Errors if any remainder is nonzero (i.e. `g`
/// was not antisymmetric).
pub fn divide_by_vandermonde<C: Coeff>(
    g: &Series<C>,
    group: &[usize],
) -> Result<Series<C>, SeriesError> {
    let mut out = g.clone();
    for a in 0..group.len() {
        for b in (a + 1)..group.len() {
            out = divide_by_var_difference(&out, group[a], group[b])?;
        }
    }
    Ok(out)
}

/// The Vandermonde polynomial `prod_{a<b} (x_{g_a} - x_{g_b})`.
pub fn vandermonde<C: Coeff>(vars: &Arc<VarSet>, group: &[usize]) -> Series<C> {
    let mut out = Series::one(vars, None);
    for a in 0..group.len() {
        for b in (a + 1)..group.len() {
            let diff = Series::var(vars, None, group[a]).sub(&Series::var(vars, None, group[b]));
            out = out.mul(&diff);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Umbral composition against H+
// ---------------------------------------------------------------------------

/// Definitional umbral composition `f(t) ∘ H+(t; group)`: replaces `t^d` by
/// `h+_d(group)`. `f` lives in `target` with designated variable `t` (which
/// must not be in `group`); passenger variables ride along unchanged.
pub fn umbral_direct_in<C: Coeff>(f: &Series<C>, t: usize, group: &[usize]) -> Series<C> {
    assert!(!group.contains(&t));
    let vars = f.vars().clone();
    let mut out = Series::zero(&vars, f.cap());
    for (e, c) in f.terms() {
        let d = e[t] as usize;
        let mut base = e.clone();
        base[t] = 0;
        let h: Series<C> = h_plus(&vars, f.cap(), group, d);
        let m = Series::monomial(&vars, f.cap(), base, c.clone());
        out = out.add(&m.mul(&h));
    }
    out
}

/// Definitional umbral composition for a univariate `f`, expanded over the
/// variable group inside `target`.
pub fn umbral_direct<C: Coeff>(f: &Series<C>, target: &Arc<VarSet>, group: &[usize]) -> Series<C> {
    assert_eq!(f.vars().len(), 1);
    let mut out = Series::zero(target, f.cap());
    for (e, c) in f.terms() {
        let h: Series<C> = h_plus(target, f.cap(), group, e[0] as usize);
        out = out.add(&h.scale(c));
    }
    out
}

/// Closed-form umbral composition
/// `sum_i f(x_i) · prod_{p != i} x_p/(x_i - x_p)`, evaluated exactly by
/// clearing the common Vandermonde denominator and dividing back out.
pub fn umbral_closed_form<C: Coeff>(
    f: &Series<C>,
    target: &Arc<VarSet>,
    group: &[usize],
) -> Series<C> {
    assert_eq!(f.vars().len(), 1);
    let m = group.len();
    assert!(m >= 1);
    if m == 1 {
        return f.embed(target, &[group[0]]);
    }
    let cap = f.cap();
    let fpoly = f.clone().into_polynomial();
    // numerator of (closed form) * V(group):
    //   sum_i (-1)^i f(x_{g_i}) (prod_{p != i} x_{g_p}) V(group minus g_i)
    let mut num = Series::zero(target, None);
    for i in 0..m {
        let others: Vec<usize> = group
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != i)
            .map(|(_, &v)| v)
            .collect();
        let fi = fpoly.embed(target, &[group[i]]);
        let mut prod = fi.mul(&vandermonde::<C>(target, &others));
        for &p in &others {
            prod = prod.mul(&Series::var(target, None, p));
        }
        let signed = if i % 2 == 0 { prod } else { prod.neg() };
        num = num.add(&signed);
    }
    let q = divide_by_vandermonde(&num, group)
        .expect("umbral numerator is antisymmetric by construction");
    match cap {
        Some(c) => q.truncated(c),
        None => q,
    }
}

/// Umbral composition of a univariate series against `H+` over the given
/// variables, computed by both the definitional expansion and the closed form
/// and checked for agreement. For two or more variables the two routes agree
/// only when `f` has zero constant term, which is therefore a precondition.
pub fn umbral_h_plus<C: Coeff>(
    f: &Series<C>,
    target: &Arc<VarSet>,
    group: &[usize],
) -> Result<Series<C>, SeriesError> {
    if group.len() >= 2 && !f.constant_term().is_zero() {
        return Err(SeriesError::UmbralConstantTerm(group.len()));
    }
    let direct = umbral_direct(f, target, group);
    let closed = umbral_closed_form(f, target, group);
    assert_eq!(direct, closed, "umbral composition routes disagree");
    Ok(direct)
}

// ---------------------------------------------------------------------------
// The tree function w = x exp(w^{k-1})
// ---------------------------------------------------------------------------

/// The unique formal power series solution of `w = x·exp(w^{k-1})`, truncated
/// at degree `n_max`, computed by fixed-point iteration.
pub fn w_series<C: Coeff>(k: usize, n_max: u32) -> Series<C> {
    assert!(k >= 2);
    let vars = VarSet::unit(&["x"]);
    let cap = Some(n_max);
    let x = Series::var(&vars, cap, 0);
    let mut w = x.clone();
    for _ in 0..=n_max + 1 {
        let next =
            x.mul(&exp_series(&w.pow(k as u32 - 1).truncated(n_max)).expect("zero constant term"));
        if next == w {
            return w;
        }
        w = next;
    }
    panic!("fixed-point iteration for w did not stabilise");
}

/// Lagrange-inversion closed form of the same series:
/// `w = sum_{m>=0} (1+(k-1)m)^{m-1}/m! · x^{1+(k-1)m}`.
pub fn w_series_closed_form<C: Coeff>(k: usize, n_max: u32) -> Series<C> {
    assert!(k >= 2);
    let vars = VarSet::unit(&["x"]);
    let mut out = Series::zero(&vars, Some(n_max));
    let mut m = 0usize;
    loop {
        let deg = 1 + (k - 1) * m;
        if deg as u32 > n_max {
            break;
        }
        let base = C::from_int(1 + (k - 1) * m);
        // base^{m-1}/m!; for m = 0 read base^{-1} = 1 since base = 1
        let mut c = C::one();
        if m >= 1 {
            for _ in 0..(m - 1) {
                c = c * base.clone();
            }
            for i in 1..=m {
                c = c / C::from_int(i);
            }
        }
        out.insert(vec![deg as u16], c);
        m += 1;
    }
    out
}

/// `x·dw/dx`, computed both termwise and through the rational form
/// `w/(1-(k-1)w^{k-1})`; the two evaluations must agree exactly.
pub fn x_dw_dx<C: Coeff>(k: usize, n_max: u32) -> Series<C> {
    let w = w_series::<C>(k, n_max);
    let termwise = w.euler(0);
    let denom = Series::one(w.vars(), w.cap()).sub(
        &w.pow(k as u32 - 1)
            .truncated(n_max)
            .scale(&C::from_int(k - 1)),
    );
    let rational = w.mul(&inverse_unit(&denom).expect("denominator has constant term 1"));
    assert_eq!(
        termwise, rational,
        "Euler derivative of w disagrees with its rational form"
    );
    termwise
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num::BigInt;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> Rat {
        q(n, 1)
    }

    type S = Series<Rat>;

    #[test]
    fn log_of_one_plus_x() {
        let vars = VarSet::unit(&["x"]);
        let f = S::one(&vars, Some(3)).add(&S::var(&vars, Some(3), 0));
        let l = log_series(&f).unwrap();
        assert_eq!(l.coeff(&[1]), qi(1));
        assert_eq!(l.coeff(&[2]), q(-1, 2));
        assert_eq!(l.coeff(&[3]), q(1, 3));
        assert_eq!(l.num_terms(), 3);
    }

    #[test]
    fn square_of_sum() {
        let vars = VarSet::xs(2);
        let f = S::var(&vars, Some(4), 0).add(&S::var(&vars, Some(4), 1));
        let sq = f.pow(2);
        assert_eq!(sq.coeff(&[2, 0]), qi(1));
        assert_eq!(sq.coeff(&[1, 1]), qi(2));
        assert_eq!(sq.coeff(&[0, 2]), qi(1));
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn exp_log_round_trip() {
        let vars = VarSet::unit(&["x"]);
        let f = S::one(&vars, Some(6)).add(&S::var(&vars, Some(6), 0));
        let round = exp_series(&log_series(&f).unwrap()).unwrap();
        assert_eq!(round, f);
    }

    #[test]
    fn log_and_exp_preconditions() {
        let vars = VarSet::unit(&["x"]);
        let x = S::var(&vars, Some(4), 0);
        assert_eq!(log_series(&x), Err(SeriesError::LogConstantTerm));
        let one_plus = S::one(&vars, Some(4)).add(&x);
        assert_eq!(exp_series(&one_plus), Err(SeriesError::ExpConstantTerm));
    }

    #[test]
    fn w_series_low_coefficients() {
        let w = w_series::<Rat>(2, 4);
        assert_eq!(w.coeff(&[1]), qi(1));
        assert_eq!(w.coeff(&[2]), qi(1));
        assert_eq!(w.coeff(&[3]), q(3, 2));
        assert_eq!(w.coeff(&[4]), q(8, 3));

        let w3 = w_series::<Rat>(3, 7);
        assert_eq!(w3.coeff(&[1]), qi(1));
        assert_eq!(w3.coeff(&[3]), qi(1));
        assert_eq!(w3.coeff(&[5]), q(5, 2));
        assert_eq!(w3.coeff(&[7]), q(49, 6));
        assert_eq!(w3.coeff(&[2]), qi(0));
    }

    #[test]
    fn w_series_matches_closed_form_and_functional_equation() {
        for k in 2..=5usize {
            let n = 16u32;
            let w = w_series::<Rat>(k, n);
            assert_eq!(w, w_series_closed_form::<Rat>(k, n), "k={k}");
            // residual w - x exp(w^{k-1}) = 0
            let x = S::var(w.vars(), w.cap(), 0);
            let resid = w.sub(&x.mul(&exp_series(&w.pow(k as u32 - 1).truncated(n)).unwrap()));
            assert!(resid.is_zero(), "k={k}");
            // support: nonzero only in degrees = 1 mod (k-1)
            for (e, _) in w.terms() {
                assert_eq!((e[0] as usize) % (k - 1), 1 % (k - 1), "k={k}");
            }
        }
    }

    #[test]
    fn x_dw_dx_values() {
        let s = x_dw_dx::<Rat>(2, 3);
        assert_eq!(s.coeff(&[1]), qi(1));
        assert_eq!(s.coeff(&[2]), qi(2));
        assert_eq!(s.coeff(&[3]), q(9, 2));
        let s3 = x_dw_dx::<Rat>(3, 4);
        assert_eq!(s3.coeff(&[1]), qi(1));
        assert_eq!(s3.coeff(&[3]), qi(3));
        for k in 2..=5usize {
            let _ = x_dw_dx::<Rat>(k, 16); // internal agreement asserted inside
        }
    }

    #[test]
    fn umbral_examples() {
        let tvars = VarSet::unit(&["t"]);
        let xvars = VarSet::xs(2);
        let t = S::var(&tvars, Some(8), 0);
        // f = t over one variable
        let x1only = VarSet::xs(1);
        let u = umbral_h_plus(&t, &x1only, &[0]).unwrap();
        assert_eq!(u, S::var(&x1only, Some(8), 0));
        // f = t^2 over two variables -> x1 x2
        let u2 = umbral_h_plus(&t.pow(2).truncated(8), &xvars, &[0, 1]).unwrap();
        assert_eq!(u2, S::monomial(&xvars, Some(8), vec![1, 1], qi(1)));
        // f = w (k=2): coefficient of x1 x2 is w's t^2 coefficient (= 1)
        let w = w_series::<Rat>(2, 8);
        let uw = umbral_h_plus(&w, &xvars, &[0, 1]).unwrap();
        assert_eq!(uw.coeff(&[1, 1]), qi(1));
    }

    #[test]
    fn umbral_constant_term_caveat() {
        // f = 1 over two variables: definitional gives 1, closed form gives -1
        let tvars = VarSet::unit(&["t"]);
        let xvars = VarSet::xs(2);
        let one = S::one(&tvars, Some(6));
        assert_eq!(
            umbral_h_plus(&one, &xvars, &[0, 1]),
            Err(SeriesError::UmbralConstantTerm(2))
        );
        let direct = umbral_direct(&one, &xvars, &[0, 1]);
        let closed = umbral_closed_form(&one, &xvars, &[0, 1]);
        assert_eq!(direct, S::one(&xvars, Some(6)));
        assert_eq!(closed, S::one(&xvars, Some(6)).neg());
    }

    #[test]
    fn umbral_two_routes_agree_without_constant_term() {
        let xs3 = VarSet::xs(3);
        for k in [2usize, 3] {
            let w = w_series::<Rat>(k, 12);
            let w2 = w.pow(2).truncated(12);
            for f in [&w, &w2] {
                for group in [vec![0], vec![0, 1], vec![0, 1, 2]] {
                    let d = umbral_direct(f, &xs3, &group);
                    let c = umbral_closed_form(f, &xs3, &group);
                    assert_eq!(d, c, "k={k} group={group:?}");
                }
            }
        }
    }

    #[test]
    fn power_difference_quotient_examples() {
        let vars = VarSet::xs(2);
        let x1 = S::var(&vars, None, 0);
        let x2 = S::var(&vars, None, 1);
        assert_eq!(power_difference_quotient(&x1, &x2, 2), x1.add(&x2));
        assert_eq!(power_difference_quotient(&x1, &x2, 1), S::one(&vars, None));
        let q3 = power_difference_quotient(&x1, &x2, 3);
        assert_eq!(q3, x1.pow(2).add(&x1.mul(&x2)).add(&x2.pow(2)));
        // identity check: (a - b) * pdq = a^j - b^j
        let lhs = x1.sub(&x2).mul(&q3);
        assert_eq!(lhs, x1.pow(3).sub(&x2.pow(3)));
    }

    #[test]
    fn divided_difference_examples() {
        let tvars = VarSet::unit(&["t"]);
        let xvars = VarSet::xs(2);
        let t = S::var(&tvars, Some(9), 0);
        assert_eq!(
            divided_difference(&t.pow(2).truncated(9), &xvars, 0, 1),
            S::var(&xvars, Some(8), 0).add(&S::var(&xvars, Some(8), 1))
        );
        assert_eq!(
            divided_difference(&t, &xvars, 0, 1),
            S::one(&xvars, Some(8))
        );
        // constant term of (w(x1) - w(x2))/(x1 - x2) is 1
        let w = w_series::<Rat>(2, 9);
        let dd = divided_difference(&w, &xvars, 0, 1);
        assert_eq!(dd.constant_term(), qi(1));
        // (x1 - x2) * dd + f(x2) - f(x1) = 0
        let f1 = w.embed(&xvars, &[0]);
        let f2 = w.embed(&xvars, &[1]);
        let x1 = S::var(&xvars, Some(8), 0);
        let x2 = S::var(&xvars, Some(8), 1);
        let resid = x1.sub(&x2).mul(&dd).add(&f2).sub(&f1);
        assert!(resid.is_zero());
    }

    #[test]
    fn vandermonde_division_examples() {
        let vars = VarSet::unit(&["w1", "w2", "w3"]);
        let w1 = S::var(&vars, None, 0);
        let w2 = S::var(&vars, None, 1);
        assert_eq!(
            divide_by_vandermonde(&w1.sub(&w2), &[0, 1]).unwrap(),
            S::one(&vars, None)
        );
        assert_eq!(
            divide_by_vandermonde(&w1.pow(2).sub(&w2.pow(2)), &[0, 1]).unwrap(),
            w1.add(&w2)
        );
        // non-antisymmetric input is rejected
        assert!(divide_by_vandermonde(&w1.add(&w2), &[0, 1]).is_err());
        // V / V = 1 over three variables
        let v = vandermonde::<Rat>(&vars, &[0, 1, 2]);
        assert_eq!(
            divide_by_vandermonde(&v, &[0, 1, 2]).unwrap(),
            S::one(&vars, None)
        );
    }

    #[test]
    fn complete_homogeneous_examples() {
        let vars = VarSet::unit(&["w1", "w2", "w3"]);
        assert_eq!(
            complete_homogeneous::<Rat>(&vars, None, &[0, 1, 2], 0),
            S::one(&vars, None)
        );
        let h1 = complete_homogeneous::<Rat>(&vars, None, &[0, 1, 2], 1);
        assert_eq!(h1.num_terms(), 3);
        let h2 = complete_homogeneous::<Rat>(&vars, None, &[0, 1], 2);
        assert_eq!(h2.num_terms(), 3);
        assert_eq!(h2.coeff(&[1, 1, 0]), qi(1));
    }

    #[test]
    fn euler_operator_transfers_through_w() {
        // (1-(k-1)w^{k-1}) x d/dx (Q ∘ w) = (w dQ/dw) ∘ w, up to degree 14
        let n = 14u32;
        for k in [2usize, 3, 4] {
            let w = w_series::<Rat>(k, n);
            let wvars = VarSet::unit(&["w"]);
            // Q = 3w^2 - w^k + 2w
            let wv = S::var(&wvars, None, 0);
            let q_poly = wv
                .pow(2)
                .scale(&qi(3))
                .sub(&wv.pow(k as u32))
                .add(&wv.scale(&qi(2)));
            let lhs = {
                let composed = q_poly.subst_all(&[&w]);
                let factor = S::one(w.vars(), w.cap())
                    .sub(&w.pow(k as u32 - 1).truncated(n).scale(&qi((k - 1) as i64)));
                factor.mul(&composed.euler(0))
            };
            let rhs = q_poly.euler(0).subst_all(&[&w]);
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn display_is_sorted_and_readable() {
        let vars = VarSet::xs(2);
        let s = S::var(&vars, Some(4), 0).add(&S::monomial(&vars, Some(4), vec![1, 2], q(3, 2)));
        assert_eq!(format!("{s}"), "1 x1 + 3/2 x1 x2^2");
    }

    #[test]
    fn geometric_inverse_is_complete_to_cap() {
        let vars = VarSet::unit(&["x"]);
        let x = S::var(&vars, Some(5), 0);
        let g = inverse_unit(&S::one(&vars, Some(5)).sub(&x)).unwrap();
        assert_eq!(g.coeff(&[5]), qi(1));
        assert_eq!(g.num_terms(), 6);
        let check = g.mul(&S::one(&vars, Some(5)).sub(&x));
        assert_eq!(check, S::one(&vars, Some(5)));
    }
}
