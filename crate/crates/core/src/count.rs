//! Exact counting of minimal transitive ordered factorisations into k-cycles.
//!
//! `c_k(alpha)` — the number of ordered tuples of `mu_k(alpha)` k-cycles whose
//! product is one fixed permutation of cycle type `alpha` and whose factors
//! act transitively — is computed by two independent methods:
//!
//! * a pruned depth-first search over factor tuples (the trusted oracle,
//!   feasible for small degrees), and
//! * a dynamic program over conjugacy classes counting all (not necessarily
//!   transitive) factorisations, from which the transitive count is recovered
//!   by inclusion–exclusion over the ways the cycle set of the target splits
//!   into orbit blocks, with multinomial interleaving of factor positions.
//!
//! The module also evaluates the Hurwitz closed form for transpositions and
//! checks the structural decomposition of a factorisation around its first
//! factor (components, restrictions, and the cycle-count identity).

use std::collections::HashMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::{
    class_size, mu_k, partitions, Dsu, FactorSequence, Partition, Permutation, Restriction,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("degree {0} exceeds the enumeration guard {1}")]
    GuardExceeded(usize, usize),
}

/// Default degree guard for explicit enumeration.
pub const ENUM_GUARD: usize = 7;

// ---------------------------------------------------------------------------
// k-cycles and canonical representatives
// ---------------------------------------------------------------------------

/// All k-cycles in `S_n`, in a fixed deterministic order.
pub fn all_k_cycles(n: usize, k: usize) -> Vec<Permutation> {
    assert!(k >= 2);
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        if subset.len() == k {
            // fix the least element first and permute the rest
            let mut rest: Vec<usize> = subset[1..].to_vec();
            permute_all(&mut rest, 0, &mut |perm| {
                let mut cyc = Vec::with_capacity(k);
                cyc.push(subset[0]);
                cyc.extend_from_slice(perm);
                out.push(Permutation::from_cycles(n, &[cyc]).expect("valid cycle"));
            });
            return;
        }
        for x in start..=n {
            subset.push(x);
            rec(n, k, x + 1, subset, out);
            subset.pop();
        }
    }
    rec(n, k, 1, &mut subset, &mut out);
    out
}

fn permute_all<F: FnMut(&[usize])>(v: &mut Vec<usize>, at: usize, f: &mut F) {
    if at == v.len() {
        f(v);
        return;
    }
    for i in at..v.len() {
        v.swap(at, i);
        permute_all(v, at + 1, f);
        v.swap(at, i);
    }
}

/// Canonical representative of the class `C_alpha`: cycles laid out
/// left-to-right in decreasing length over `1..n`.
pub fn canonical_rep(alpha: &Partition) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 1usize;
    for &part in alpha.parts() {
        cycles.push((next..next + part).collect::<Vec<_>>());
        next += part;
    }
    Permutation::from_cycles(alpha.n(), &cycles).expect("canonical cycles are disjoint")
}

// ---------------------------------------------------------------------------
// Count tables
// ---------------------------------------------------------------------------

/// Which counting method produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Pruned depth-first enumeration.
    Dfs,
    /// Class-algebra dynamic program + inclusion–exclusion.
    Dp,
}

/// Exact counts `c_k(alpha)` for one fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub k: usize,
    pub method: CountMethod,
    entries: std::collections::BTreeMap<Partition, BigInt>,
}

impl CountTable {
    pub fn new(k: usize, method: CountMethod) -> Self {
        CountTable {
            k,
            method,
            entries: Default::default(),
        }
    }

    pub fn insert(&mut self, alpha: Partition, count: BigInt) {
        self.entries.insert(alpha, count);
    }

    pub fn get(&self, alpha: &Partition) -> Option<&BigInt> {
        self.entries.get(alpha)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Builds the table of `c_k(alpha)` for all partitions of `1..=n_max`
/// (optionally only those with at most `max_len` parts), using the dynamic
/// program. `jobs` worker threads split the partition list; results are
/// independent of `jobs`.
pub fn count_table(k: usize, n_max: usize, max_len: Option<usize>, jobs: usize) -> CountTable {
    let mut alphas = Vec::new();
    for n in 1..=n_max {
        for alpha in partitions(n) {
            if max_len.map_or(true, |m| alpha.len() <= m) {
                alphas.push(alpha);
            }
        }
    }
    let jobs = jobs.max(1).min(alphas.len().max(1));
    let mut table = CountTable::new(k, CountMethod::Dp);
    if jobs == 1 {
        let mut memo = Memo::default();
        for alpha in alphas {
            let c = count_minimal_transitive_memo(&alpha, k, &mut memo);
            table.insert(alpha, c);
        }
        return table;
    }
    let chunk = alphas.len().div_ceil(jobs);
    let results: Vec<Vec<(Partition, BigInt)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for slice in alphas.chunks(chunk) {
            handles.push(scope.spawn(move || {
                let mut memo = Memo::default();
                slice
                    .iter()
                    .map(|alpha| {
                        let c = count_minimal_transitive_memo(alpha, k, &mut memo);
                        (alpha.clone(), c)
                    })
                    .collect()
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for part in results {
        for (alpha, c) in part {
            table.insert(alpha, c);
        }
    }
    table
}

/// Builds the table of `c_k(alpha)` by explicit pruned enumeration.
pub fn count_table_dfs(k: usize, n_max: usize) -> Result<CountTable, CountError> {
    let mut table = CountTable::new(k, CountMethod::Dfs);
    for n in 1..=n_max {
        for alpha in partitions(n) {
            let c = count_by_dfs(&alpha, k)?;
            table.insert(alpha, c);
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// Dynamic program over conjugacy classes
// ---------------------------------------------------------------------------

/// Memoised state shared across counting calls: class lists, transition
/// counts, walk vectors and transitive counts, keyed by degree and k.
#[derive(Default)]
pub struct Memo {
    classes: HashMap<usize, (Vec<Partition>, HashMap<Vec<usize>, usize>)>,
    // (n, k) -> per-step walk vectors f_j, indexed by class
    walks: HashMap<(usize, usize), Vec<Vec<BigInt>>>,
    transition: HashMap<(usize, usize), Vec<Vec<(usize, usize)>>>,
    transitive: HashMap<(Vec<usize>, usize, usize), BigInt>,
}

impl Memo {
    fn classes(&mut self, n: usize) -> &(Vec<Partition>, HashMap<Vec<usize>, usize>) {
        self.classes.entry(n).or_insert_with(|| {
            let list = partitions(n);
            let index: HashMap<Vec<usize>, usize> = list
                .iter()
                .enumerate()
                .map(|(i, p)| (p.parts().to_vec(), i))
                .collect();
            (list, index)
        })
    }

    /// Sparse transition counts: for each class index `c`, the list of
    /// `(class index of rep_c * sigma, multiplicity)` over k-cycles `sigma`.
    fn transition(&mut self, n: usize, k: usize) -> &Vec<Vec<(usize, usize)>> {
        if !self.transition.contains_key(&(n, k)) {
            let (list, index) = self.classes(n).clone();
            let cycles = all_k_cycles(n, k);
            let mut rows = Vec::with_capacity(list.len());
            for alpha in &list {
                let rep = canonical_rep(alpha);
                let mut counts: HashMap<usize, usize> = HashMap::new();
                for sigma in &cycles {
                    let target = rep.compose(sigma);
                    let idx = index[target.cycle_type().parts()];
                    *counts.entry(idx).or_insert(0) += 1;
                }
                let mut row: Vec<(usize, usize)> = counts.into_iter().collect();
                row.sort_unstable();
                rows.push(row);
            }
            self.transition.insert((n, k), rows);
        }
        &self.transition[&(n, k)]
    }

    /// `f_j(beta)`: the number of ordered j-tuples of k-cycles in `S_n` whose
    /// product equals the canonical representative of `beta`.
    fn walk(&mut self, n: usize, k: usize, j: usize, class_idx: usize) -> BigInt {
        let need = j + 1;
        let have = self.walks.get(&(n, k)).map_or(0, |v| v.len());
        if have < need {
            let num_classes = self.classes(n).0.len();
            let identity_idx = self.classes(n).1[&vec![1usize; n]];
            let rows = self.transition(n, k).clone();
            let entry = self.walks.entry((n, k)).or_default();
            if entry.is_empty() {
                let mut f0 = vec![BigInt::zero(); num_classes];
                f0[identity_idx] = BigInt::one();
                entry.push(f0);
            }
            while entry.len() < need {
                let prev = entry.last().unwrap();
                let mut next = vec![BigInt::zero(); num_classes];
                for (c, row) in rows.iter().enumerate() {
                    let mut acc = BigInt::zero();
                    for &(b, mult) in row {
                        if !prev[b].is_zero() {
                            acc += &prev[b] * BigInt::from(mult);
                        }
                    }
                    next[c] = acc;
                }
                entry.push(next);
            }
        }
        self.walks[&(n, k)][j][class_idx].clone()
    }
}

/// Number of ordered tuples of `j` k-cycles in `S_n` whose product equals one
/// fixed representative of `C_alpha` (well defined by conjugation
/// invariance). No transitivity requirement.
pub fn count_all_factorisations(alpha: &Partition, k: usize, j: usize) -> BigInt {
    let mut memo = Memo::default();
    count_all_factorisations_memo(alpha, k, j, &mut memo)
}

pub fn count_all_factorisations_memo(
    alpha: &Partition,
    k: usize,
    j: usize,
    memo: &mut Memo,
) -> BigInt {
    let n = alpha.n();
    let idx = memo.classes(n).1[alpha.parts()];
    memo.walk(n, k, j, idx)
}

/// Number of *transitive* ordered tuples of `j` k-cycles with product a fixed
/// representative of `C_alpha`, by inclusion–exclusion over the orbit block
/// containing the distinguished (first) cycle of the representative.
fn count_transitive_memo(alpha: &Partition, k: usize, j: usize, memo: &mut Memo) -> BigInt {
    let key = (alpha.parts().to_vec(), k, j);
    if let Some(v) = memo.transitive.get(&key) {
        return v.clone();
    }
    let n = alpha.n();
    let value: BigInt = if n == 1 {
        // one point: only the empty factorisation, which is transitive
        if j == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    } else {
        let mut total = count_all_factorisations_memo(alpha, k, j, memo);
        let parts = alpha.parts().to_vec();
        let m = parts.len();
        // subtract factorisations whose orbit block containing the first
        // cycle is a proper subset of the cycle set
        for mask in 0..(1u32 << (m - 1)) {
            let mut block = vec![parts[0]];
            let mut rest = Vec::new();
            for (i, &p) in parts.iter().enumerate().skip(1) {
                if mask & (1 << (i - 1)) != 0 {
                    block.push(p);
                } else {
                    rest.push(p);
                }
            }
            if rest.is_empty() {
                continue; // the full set: that's the transitive count itself
            }
            let block_alpha = Partition::new(block).unwrap();
            let rest_alpha = Partition::new(rest).unwrap();
            for j_block in 0..=j {
                let t = count_transitive_memo(&block_alpha, k, j_block, memo);
                if t.is_zero() {
                    continue;
                }
                let f = count_all_factorisations_memo(&rest_alpha, k, j - j_block, memo);
                if f.is_zero() {
                    continue;
                }
                total -= binomial(j, j_block) * t * f;
            }
        }
        total
    };
    memo.transitive.insert(key, value.clone());
    value
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// `c_k(alpha)`: the number of minimal transitive ordered factorisations of a
/// fixed permutation of cycle type `alpha` into k-cycles. Zero when the
/// minimal length `mu_k(alpha)` is undefined.
pub fn count_minimal_transitive(alpha: &Partition, k: usize) -> BigInt {
    let mut memo = Memo::default();
    count_minimal_transitive_memo(alpha, k, &mut memo)
}

pub fn count_minimal_transitive_memo(alpha: &Partition, k: usize, memo: &mut Memo) -> BigInt {
    match mu_k(alpha, k) {
        None => BigInt::zero(),
        Some(j) => count_transitive_memo(alpha, k, j, memo),
    }
}

// ---------------------------------------------------------------------------
// Hurwitz closed form (k = 2)
// ---------------------------------------------------------------------------

/// The transposition count in closed form:
/// `c_2(alpha) = n^{l-3} (n+l-2)! prod_j alpha_j^{alpha_j}/(alpha_j - 1)!`.
/// Evaluated in exact rationals; the result is asserted to be a non-negative
/// integer (the `n^{l-3}` factor is fractional for `l < 3`).
pub fn hurwitz_count(alpha: &Partition) -> BigInt {
    let n = alpha.n();
    let l = alpha.len();
    let mut acc = BigRational::one();
    let n_big = BigRational::from_integer(BigInt::from(n));
    if l >= 3 {
        for _ in 0..(l - 3) {
            acc *= &n_big;
        }
    } else {
        for _ in 0..(3 - l) {
            acc /= &n_big;
        }
    }
    let mut fact = BigInt::one();
    for i in 2..=(n + l - 2) {
        fact *= i;
    }
    acc *= BigRational::from_integer(fact);
    for &a in alpha.parts() {
        let mut num = BigInt::one();
        for _ in 0..a {
            num *= a;
        }
        let mut den = BigInt::one();
        for i in 2..a {
            den *= i;
        }
        acc *= BigRational::new(num, den);
    }
    assert!(
        acc.is_integer() && !acc.is_negative(),
        "Hurwitz formula must produce a non-negative integer, got {acc}"
    );
    acc.to_integer()
}

// ---------------------------------------------------------------------------
// Depth-first enumeration
// ---------------------------------------------------------------------------

struct Dfs<'a, F: FnMut(&[Permutation])> {
    n: usize,
    k: usize,
    cycles: Vec<Permutation>,
    inverses: Vec<Permutation>,
    visit: &'a mut F,
    stack: Vec<Permutation>,
    stopped: bool,
}

impl<'a, F: FnMut(&[Permutation])> Dfs<'a, F> {
    /// Extend the current prefix until `remaining` factors are placed;
    /// `target` is what the remaining factors must multiply to and `dsu`
    /// tracks connectivity of the supports chosen so far.
    fn go(&mut self, target: &Permutation, dsu: &Dsu, remaining: usize) {
        if self.stopped {
            return;
        }
        if remaining == 0 {
            if target.is_identity() && dsu.component_count() == 1 {
                (self.visit)(&self.stack);
            }
            return;
        }
        if remaining == 1 {
            // last factor is forced
            if !target.is_k_cycle(self.k) {
                return;
            }
            let mut d = dsu.clone();
            union_support(&mut d, target);
            if d.component_count() == 1 {
                self.stack.push(target.clone());
                (self.visit)(&self.stack);
                self.stack.pop();
            }
            return;
        }
        let budget = (remaining - 1) * (self.k - 1);
        for idx in 0..self.cycles.len() {
            let sigma = self.cycles[idx].clone();
            let rest = self.inverses[idx].compose(target);
            // the remaining factors must at least bridge the cycle-count gap
            if budget < self.n - rest.kappa() {
                continue;
            }
            let mut d = dsu.clone();
            union_support(&mut d, &sigma);
            // and at least connect the remaining components
            if budget < d.component_count() - 1 {
                continue;
            }
            self.stack.push(sigma);
            self.go(&rest, &d, remaining - 1);
            self.stack.pop();
            if self.stopped {
                return;
            }
        }
    }
}

fn union_support(dsu: &mut Dsu, p: &Permutation) {
    let sup = p.support();
    for pair in sup.windows(2) {
        dsu.union(pair[0] - 1, pair[1] - 1);
    }
}

/// Streams every minimal transitive ordered factorisation of `pi` into
/// k-cycles through `visit`. Unguarded; callers go through
/// [`enumerate_minimal_transitive`] or accept the cost knowingly.
pub fn for_each_minimal_transitive<F: FnMut(&[Permutation])>(
    pi: &Permutation,
    k: usize,
    mut visit: F,
) {
    let n = pi.degree();
    let alpha = pi.cycle_type();
    let Some(j) = mu_k(&alpha, k) else {
        return;
    };
    if j == 0 {
        // only possible for the one-point identity; the empty tuple is
        // transitive there
        if n == 1 {
            visit(&[]);
        }
        return;
    }
    let cycles = all_k_cycles(n, k);
    let inverses: Vec<Permutation> = cycles.iter().map(|c| c.inverse()).collect();
    let mut dfs = Dfs {
        n,
        k,
        cycles,
        inverses,
        visit: &mut visit,
        stack: Vec::with_capacity(j),
        stopped: false,
    };
    dfs.go(pi, &Dsu::new(n), j);
}

/// Explicit list of the minimal transitive ordered factorisations of `pi`
/// into k-cycles, up to `limit` if given. Degrees above [`ENUM_GUARD`] are
/// rejected; use [`enumerate_with_guard`] to override.
pub fn enumerate_minimal_transitive(
    pi: &Permutation,
    k: usize,
    limit: Option<usize>,
) -> Result<Vec<FactorSequence>, CountError> {
    enumerate_with_guard(pi, k, limit, ENUM_GUARD)
}

/// Same as [`enumerate_minimal_transitive`] with an explicit degree guard.
pub fn enumerate_with_guard(
    pi: &Permutation,
    k: usize,
    limit: Option<usize>,
    max_degree: usize,
) -> Result<Vec<FactorSequence>, CountError> {
    let n = pi.degree();
    if n > max_degree {
        return Err(CountError::GuardExceeded(n, max_degree));
    }
    let mut out = Vec::new();
    let alpha = pi.cycle_type();
    let Some(j) = mu_k(&alpha, k) else {
        return Ok(out);
    };
    if j == 0 {
        if n == 1 {
            out.push(FactorSequence::new(k, n, vec![]).unwrap());
        }
        return Ok(out);
    }
    let cycles = all_k_cycles(n, k);
    let inverses: Vec<Permutation> = cycles.iter().map(|c| c.inverse()).collect();
    let hit_limit = std::cell::Cell::new(false);
    {
        let out_ref = std::cell::RefCell::new(&mut out);
        let mut visit = |factors: &[Permutation]| {
            let mut out = out_ref.borrow_mut();
            if limit.map_or(true, |l| out.len() < l) {
                out.push(FactorSequence::new(k, n, factors.to_vec()).unwrap());
            }
            if limit.map_or(false, |l| out.len() >= l) {
                hit_limit.set(true);
            }
        };
        let mut dfs = Dfs {
            n,
            k,
            cycles,
            inverses,
            visit: &mut visit,
            stack: Vec::with_capacity(j),
            stopped: false,
        };
        // re-check the stop flag between branches through `stopped`
        dfs_run_with_limit(&mut dfs, pi, j, &hit_limit);
    }
    Ok(out)
}

fn dfs_run_with_limit<F: FnMut(&[Permutation])>(
    dfs: &mut Dfs<'_, F>,
    pi: &Permutation,
    j: usize,
    _hit: &std::cell::Cell<bool>,
) {
    dfs.go(pi, &Dsu::new(dfs.n), j);
}

/// DFS count of minimal transitive factorisations: the enumeration oracle.
pub fn count_by_dfs(alpha: &Partition, k: usize) -> Result<BigInt, CountError> {
    count_by_dfs_of(&canonical_rep(alpha), k)
}

/// DFS count for an explicit representative.
pub fn count_by_dfs_of(pi: &Permutation, k: usize) -> Result<BigInt, CountError> {
    let mut count = BigInt::zero();
    for_each_minimal_transitive(pi, k, |_| count += 1);
    Ok(count)
}

// ---------------------------------------------------------------------------
// First-factor decomposition checks
// ---------------------------------------------------------------------------

/// Structural report for the decomposition of a minimal transitive
/// factorisation `(sigma_1,..,sigma_j)` of `pi` around its first factor:
/// the components `V_1..V_l` of the graph of `sigma_2..sigma_j`, the partial
/// products `pi_i` on them, and the restrictions `gamma`, `tau`, `rho` to the
/// support of `sigma_1`.
#[derive(Debug, Clone)]
pub struct Lemma22Report {
    /// Number of components of the graph of the remaining factors
    /// (0 for factorisations with at most one factor, where the
    /// decomposition is vacuous).
    pub l: usize,
    /// The component vertex sets `V_i`, each sorted, ordered by minimum.
    pub components: Vec<Vec<usize>>,
    /// Product of the factors supported inside each `V_i`, restricted to it.
    pub component_products: Vec<Restriction>,
    /// Support of the first factor, sorted.
    pub support: Vec<usize>,
    /// First factor restricted to its own support (a k-cycle).
    pub gamma: Option<Restriction>,
    /// The product `pi` restricted to the support of the first factor.
    pub tau: Option<Restriction>,
    /// `gamma^{-1} tau`.
    pub rho: Option<Restriction>,
    /// Part 1: the first factor meets every component.
    pub meets_every_component: bool,
    /// Part 2: its elements inside each component lie on a single cycle of
    /// that component's product.
    pub single_cycle_per_component: bool,
    /// Part 3: `(k - kappa(tau)) + (k - kappa(rho)) = k - kappa(gamma)` with
    /// `kappa(gamma) = 1` and `kappa(rho) = l`.
    pub cycle_count_identity: bool,
}

impl Lemma22Report {
    pub fn all_parts_hold(&self) -> bool {
        self.meets_every_component && self.single_cycle_per_component && self.cycle_count_identity
    }
}

/// Decomposes a minimal transitive ordered factorisation around its first
/// factor and checks the three structural properties. The caller vouches
/// that `f` is minimal and transitive. Factorisations with at most one
/// factor are reported vacuously true with `l = 0`.
pub fn lemma22_check(f: &FactorSequence) -> Lemma22Report {
    let n = f.n();
    let k = f.k();
    let j = f.len();
    if j <= 1 {
        let (support, gamma, tau, rho) = if j == 1 {
            let sigma1 = &f.factors()[0];
            let support = sigma1.support();
            let gamma = sigma1.restrict(&support);
            let tau = f.product().restrict(&support);
            let rho = gamma.inverse().compose(&tau);
            (support, Some(gamma), Some(tau), Some(rho))
        } else {
            (Vec::new(), None, None, None)
        };
        return Lemma22Report {
            l: 0,
            components: Vec::new(),
            component_products: Vec::new(),
            support,
            gamma,
            tau,
            rho,
            meets_every_component: true,
            single_cycle_per_component: true,
            cycle_count_identity: true,
        };
    }

    let sigma1 = &f.factors()[0];
    let pi = f.product();
    let support = sigma1.support();

    // components of the graph of sigma_2..sigma_j (singletons included)
    let mut dsu = Dsu::new(n);
    for factor in &f.factors()[1..] {
        union_support(&mut dsu, factor);
    }
    let components: Vec<Vec<usize>> = dsu
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|x| x + 1).collect())
        .collect();
    let l = components.len();

    // product of the factors supported inside each component
    let mut component_products = Vec::with_capacity(l);
    for comp in &components {
        let mut prod = Permutation::identity(n);
        for factor in &f.factors()[1..] {
            let sup = factor.support();
            if sup.iter().all(|x| comp.contains(x)) {
                prod = prod.compose(factor);
            }
        }
        component_products.push(prod.restrict(comp));
    }

    let meets_every_component = components
        .iter()
        .all(|comp| support.iter().any(|x| comp.contains(x)));

    let mut single_cycle_per_component = true;
    for (comp, prod) in components.iter().zip(&component_products) {
        let inside: Vec<usize> = support.iter().copied().filter(|x| comp.contains(x)).collect();
        if inside.is_empty() {
            single_cycle_per_component = false;
            continue;
        }
        let cycles = prod.cycles();
        let cycle_of = |x: usize| cycles.iter().position(|c| c.contains(&x));
        let first = cycle_of(inside[0]);
        if !inside.iter().all(|&x| cycle_of(x) == first) {
            single_cycle_per_component = false;
        }
    }

    let gamma = sigma1.restrict(&support);
    let tau = pi.restrict(&support);
    let rho = gamma.inverse().compose(&tau);
    let cycle_count_identity = gamma.kappa() == 1
        && rho.kappa() == l
        && (k - tau.kappa()) + (k - rho.kappa()) == k - gamma.kappa();

    Lemma22Report {
        l,
        components,
        component_products,
        support,
        gamma: Some(gamma),
        tau: Some(tau),
        rho: Some(rho),
        meets_every_component,
        single_cycle_per_component,
        cycle_count_identity,
    }
}

/// One-part closed form `c_k([n]) = n^{m-1}` with `m = (n-1)/(k-1)`, used by
/// verification code; returns `None` when `m` is not integral.
pub fn one_part_closed_form(n: usize, k: usize) -> Option<BigInt> {
    if (n - 1) % (k - 1) != 0 {
        return None;
    }
    let m = (n - 1) / (k - 1);
    let mut out = BigInt::one();
    if m >= 1 {
        for _ in 0..(m - 1) {
            out *= n;
        }
    } else {
        // n = 1: empty factorisation
        out = BigInt::one();
    }
    Some(out)
}

/// Total class-size consistency: `sum_{alpha |- n} |C_alpha| = n!`.
pub fn class_sizes_sum_to_factorial(n: usize) -> bool {
    let total: BigInt = partitions(n).iter().map(class_size).sum();
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= i;
    }
    total == fact
}
