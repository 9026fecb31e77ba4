//! Permutations, partitions and the basic quantities every other module
//! consumes: cycle types, kappa (cycle count), conjugacy-class sizes, the
//! minimal transitive factor count `mu_k`, transitivity of a factor tuple,
//! and restriction of a permutation to a subset of its ground set.
//!
//! Ground sets are `{1..n}` (1-based labels); permutations always carry their
//! full degree, and cycle types include fixed points as parts equal to 1.
//!
//! Composition convention, fixed globally: in a product the **right factor
//! acts first**, so `sigma_1 sigma_2 ... sigma_j` applied to `x` is
//! `sigma_1(sigma_2(...sigma_j(x)...))`. The worked 3-cycle product
//! `(247)(586)(479)(136)(235) = (1386)(254)(79)` verifies under this
//! convention and under no other (see README).

use std::fmt;

use num::BigInt;
use num::One;
use thiserror::Error;

/// Errors from constructing or parsing permutation-layer values.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("partition parts must be positive")]
    NonPositivePart,
    #[error("partition must have at least one part")]
    EmptyPartition,
    #[error("images do not form a bijection of 1..{0}")]
    NotABijection(usize),
    #[error("cycle entry {0} outside ground set 1..{1}")]
    LabelOutOfRange(usize, usize),
    #[error("label {0} appears in more than one cycle")]
    RepeatedLabel(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("factor is not a {0}-cycle")]
    NotAKCycle(usize),
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// A partition of a positive integer: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order; parts are sorted weakly
    /// decreasing. Fails on an empty list or a non-positive part.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PermError> {
        if parts.is_empty() {
            return Err(PermError::EmptyPartition);
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(PermError::NonPositivePart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(alpha)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one part
    }

    /// Multiplicity of each part value as (part, multiplicity), descending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n`, parts weakly decreasing, in lexicographically
/// decreasing order of part lists.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `n! / prod_i i^{m_i} m_i!` — the size of the conjugacy class `C_alpha`.
pub fn class_size(alpha: &Partition) -> BigInt {
    let n = alpha.n();
    let mut num = BigInt::one();
    for i in 2..=n {
        num *= i;
    }
    let mut den = BigInt::one();
    for (part, mult) in alpha.multiplicities() {
        for _ in 0..mult {
            den *= part;
        }
        for m in 2..=mult {
            den *= m;
        }
    }
    num / den
}

/// Minimal number of k-cycle factors in a transitive factorisation of a
/// permutation of cycle type `alpha`: `(n + l(alpha) - 2) / (k - 1)`.
///
/// Returns `None` when `k - 1` does not divide `n + l - 2`; in that case no
/// minimal transitive factorisation length exists and `c_k(alpha) = 0`.
pub fn mu_k(alpha: &Partition, k: usize) -> Option<usize> {
    assert!(k >= 2, "factors must be k-cycles with k >= 2");
    let t = alpha.n() + alpha.len() - 2;
    if t % (k - 1) == 0 {
        Some(t / (k - 1))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

/// A permutation of `{1..n}`, stored as the image vector (0-based inside).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>, // images[i] = image of i, 0-based
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images_1based(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut v = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(PermError::NotABijection(n));
            }
            seen[im - 1] = true;
            v.push(im - 1);
        }
        Ok(Permutation { images: v })
    }

    /// From disjoint cycles over `{1..n}`; labels absent from every cycle are
    /// fixed points. A cycle `(a b c)` maps a -> b -> c -> a.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cyc in cycles {
            for &x in cyc {
                if x == 0 || x > n {
                    return Err(PermError::LabelOutOfRange(x, n));
                }
                if seen[x - 1] {
                    return Err(PermError::RepeatedLabel(x));
                }
                seen[x - 1] = true;
            }
            for (i, &x) in cyc.iter().enumerate() {
                let y = cyc[(i + 1) % cyc.len()];
                images[x - 1] = y - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// `self * other` under the global convention: `other` acts first,
    /// so `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in composition"
        );
        let images = other.images.iter().map(|&i| self.images[i]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Cycles as 1-based label lists, each rotated to start at its least
    /// element, ordered by least element. Fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Number of cycles, fixed points included (kappa).
    pub fn kappa(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    /// Cycle type as a partition of `n` (weakly decreasing, with 1-parts).
    pub fn cycle_type(&self) -> Partition {
        let lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        Partition::new(lens).expect("cycle lengths form a partition")
    }

    /// Support: 1-based points moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &im)| i != im)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// True iff the permutation is a single k-cycle fixing everything else.
    pub fn is_k_cycle(&self, k: usize) -> bool {
        let sup = self.support();
        if sup.len() != k || k < 2 {
            return false;
        }
        // one cycle through the whole support
        let mut len = 1;
        let x = sup[0];
        let mut y = self.apply(x);
        while y != x {
            len += 1;
            y = self.apply(y);
        }
        len == k
    }

    /// `g^{-1} * self * g` under the global convention.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(&self.compose(g))
    }

    /// Restriction to a subset of the ground set: elements outside the subset
    /// are deleted from each cycle, preserving the cyclic order of survivors.
    /// The result is re-indexed over `{1..|subset|}` but remembers the
    /// original labels for display.
    pub fn restrict(&self, subset: &[usize]) -> Restriction {
        assert!(!subset.is_empty(), "restriction subset must be nonempty");
        let n = self.degree();
        let mut labels: Vec<usize> = subset.to_vec();
        labels.sort_unstable();
        labels.dedup();
        assert!(
            labels.iter().all(|&x| x >= 1 && x <= n),
            "restriction subset outside ground set"
        );
        let mut member = vec![false; n + 1];
        for &x in &labels {
            member[x] = true;
        }
        let index_of = |x: usize| labels.binary_search(&x).unwrap();
        let mut images = vec![0; labels.len()];
        for &x in &labels {
            // walk the cycle of `self` from x to the next surviving element
            let mut y = self.apply(x);
            while !member[y] {
                y = self.apply(y);
            }
            images[index_of(x)] = index_of(y);
        }
        Restriction {
            perm: Permutation { images },
            labels,
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cycles(f, &self.cycles(), self.degree())
    }
}

/// A permutation of a subset of some larger ground set, re-indexed over
/// `{1..m}` internally but displayed with the original labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    perm: Permutation,
    labels: Vec<usize>, // sorted original labels; labels[i] <-> internal i+1
}

impl Restriction {
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn kappa(&self) -> usize {
        self.perm.kappa()
    }

    pub fn cycle_type(&self) -> Partition {
        self.perm.cycle_type()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    /// Compose two restrictions over the same label set (right acts first).
    pub fn compose(&self, other: &Restriction) -> Restriction {
        assert_eq!(self.labels, other.labels, "label sets differ");
        Restriction {
            perm: self.perm.compose(&other.perm),
            labels: self.labels.clone(),
        }
    }

    pub fn inverse(&self) -> Restriction {
        Restriction {
            perm: self.perm.inverse(),
            labels: self.labels.clone(),
        }
    }

    /// Cycles in original labels.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.perm
            .cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.labels[i - 1]).collect())
            .collect()
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.labels.last().copied().unwrap_or(0);
        write_cycles(f, &self.cycles(), max)
    }
}

fn write_cycles(f: &mut fmt::Formatter<'_>, cycles: &[Vec<usize>], max_label: usize) -> fmt::Result {
    let compact = max_label <= 9;
    let mut wrote = false;
    for cyc in cycles {
        if cyc.len() == 1 {
            continue;
        }
        wrote = true;
        write!(f, "(")?;
        for (i, x) in cyc.iter().enumerate() {
            if i > 0 && !compact {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")?;
    }
    if !wrote {
        write!(f, "()")?;
    }
    Ok(())
}

/// Parses cycle notation like `"(247)(586)"`. Whitespace-insensitive. Inside
/// a cycle, elements may be separated by spaces or commas; if no separators
/// are present every digit is one element (valid for ground sets up to 9).
/// Labels absent from every cycle are fixed points of the result.
pub fn parse_cycles(s: &str, n: usize) -> Result<Permutation, PermError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| PermError::Parse(format!("expected '(' in {rest:?}")))?;
        if !rest[..open].trim().is_empty() {
            return Err(PermError::Parse(format!("unexpected {:?}", &rest[..open])));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| PermError::Parse("unbalanced '('".into()))?;
        let inner = &rest[open + 1..close];
        let cyc = if inner.contains(|c: char| c == ',' || c.is_whitespace()) {
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| PermError::Parse(t.into())))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            inner
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::Parse(c.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
        rest = rest[close + 1..].trim_start();
    }
    Permutation::from_cycles(n, &cycles)
}

// ---------------------------------------------------------------------------
// Factor sequences
// ---------------------------------------------------------------------------

/// An ordered tuple of k-cycles in `S_n`; the factorisation object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSequence {
    k: usize,
    n: usize,
    factors: Vec<Permutation>,
}

impl FactorSequence {
    /// Validates that every factor is a single k-cycle of the common degree.
    pub fn new(k: usize, n: usize, factors: Vec<Permutation>) -> Result<Self, PermError> {
        for f in &factors {
            if f.degree() != n {
                return Err(PermError::DegreeMismatch(f.degree(), n));
            }
            if !f.is_k_cycle(k) {
                return Err(PermError::NotAKCycle(k));
            }
        }
        Ok(FactorSequence { k, n, factors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    /// Product `sigma_1 * ... * sigma_j` (rightmost applied first).
    pub fn product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.n);
        for f in &self.factors {
            acc = acc.compose(f);
        }
        acc
    }
}

/// True iff the factors act transitively on `{1..n}`: the multigraph with
/// vertex set `{1..n}` and an edge set joining the support of each factor is
/// connected. Computed by disjoint-set union over factor supports.
pub fn is_transitive(f: &FactorSequence) -> bool {
    let mut dsu = Dsu::new(f.n());
    for factor in f.factors() {
        let sup = factor.support();
        for pair in sup.windows(2) {
            dsu.union(pair[0] - 1, pair[1] - 1);
        }
    }
    dsu.component_count() == 1
}

// ---------------------------------------------------------------------------
// Disjoint-set union
// ---------------------------------------------------------------------------

/// Small union-find over `0..n` with path halving.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    components: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Component members grouped and sorted, components ordered by minimum.
    pub fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..n {
            let r = self.find(x);
            groups.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn p(s: &str, n: usize) -> Permutation {
        parse_cycles(s, n).unwrap()
    }

    #[test]
    fn worked_three_cycle_product() {
        // (247)(586)(479)(136)(235), rightmost factor applied first
        let factors = ["(247)", "(586)", "(479)", "(136)", "(235)"];
        let mut acc = Permutation::identity(9);
        for f in factors {
            acc = acc.compose(&p(f, 9));
        }
        assert_eq!(acc, p("(1386)(254)(79)", 9));
        assert_eq!(acc.cycle_type(), Partition::new(vec![4, 3, 2]).unwrap());
    }

    #[test]
    fn prose_variant_568_fails_under_both_conventions() {
        let display = ["(247)", "(568)", "(479)", "(136)", "(235)"];
        let target = p("(1386)(254)(79)", 9);
        let mut right_first = Permutation::identity(9);
        let mut left_first = Permutation::identity(9);
        for f in display {
            right_first = right_first.compose(&p(f, 9));
            left_first = p(f, 9).compose(&left_first);
        }
        assert_ne!(right_first, target);
        assert_ne!(left_first, target);
    }

    #[test]
    fn compose_identity_and_involution() {
        let pi = p("(1386)(254)(79)", 9);
        assert_eq!(pi.compose(&Permutation::identity(9)), pi);
        assert_eq!(Permutation::identity(9).compose(&pi), pi);
        let t = p("(12)", 2);
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(
            p("(1386)(254)(79)", 9).cycle_type(),
            Partition::new(vec![4, 3, 2]).unwrap()
        );
        assert_eq!(
            Permutation::identity(4).cycle_type(),
            Partition::new(vec![1, 1, 1, 1]).unwrap()
        );
        assert_eq!(
            p("(12)", 3).cycle_type(),
            Partition::new(vec![2, 1]).unwrap()
        );
    }

    #[test]
    fn class_size_of_21_by_full_enumeration_of_s3() {
        // independent oracle: tally cycle types over all 6 permutations of S_3
        let mut count = 0;
        let perms = [
            vec![1, 2, 3],
            vec![1, 3, 2],
            vec![2, 1, 3],
            vec![2, 3, 1],
            vec![3, 1, 2],
            vec![3, 2, 1],
        ];
        let target = Partition::new(vec![2, 1]).unwrap();
        for im in &perms {
            if Permutation::from_images_1based(im).unwrap().cycle_type() == target {
                count += 1;
            }
        }
        assert_eq!(count, 3);
        assert_eq!(class_size(&target), BigInt::from(3));
    }

    #[test]
    fn class_size_trivial_and_sum_identity() {
        for n in 1..=12usize {
            let alpha = Partition::new(vec![1; n]).unwrap();
            assert_eq!(class_size(&alpha), BigInt::one());
            let total: BigInt = partitions(n).iter().map(class_size).sum();
            let mut fact = BigInt::one();
            for i in 2..=n {
                fact *= i;
            }
            assert_eq!(total, fact, "class sizes of S_{n} must sum to n!");
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_k(&Partition::new(vec![4, 3, 2]).unwrap(), 3), Some(5));
        assert_eq!(mu_k(&Partition::new(vec![1, 1]).unwrap(), 2), Some(2));
        assert_eq!(mu_k(&Partition::new(vec![2, 1]).unwrap(), 3), None);
    }

    #[test]
    fn transitivity_examples() {
        let factors: Vec<Permutation> = ["(247)", "(586)", "(479)", "(136)", "(235)"]
            .iter()
            .map(|s| p(s, 9))
            .collect();
        let f = FactorSequence::new(3, 9, factors).unwrap();
        assert!(is_transitive(&f));

        let single = FactorSequence::new(2, 3, vec![p("(12)", 3)]).unwrap();
        assert!(!is_transitive(&single));

        let empty = FactorSequence::new(2, 1, vec![]).unwrap();
        assert!(is_transitive(&empty));
    }

    #[test]
    fn restriction_examples() {
        let pi = p("(1538)(27469)", 9);
        let r = pi.restrict(&[1, 4, 6, 7, 8]);
        assert_eq!(format!("{r}"), "(18)(467)");

        let full: Vec<usize> = (1..=9).collect();
        assert_eq!(pi.restrict(&full).perm(), &pi);

        let id = Permutation::identity(9);
        assert!(id.restrict(&[2, 5, 7]).is_identity());
    }

    fn random_perm(n: usize, rng: &mut StdRng) -> Permutation {
        let mut v: Vec<usize> = (1..=n).collect();
        v.shuffle(rng);
        Permutation::from_images_1based(&v).unwrap()
    }

    #[test]
    fn subadditivity_of_transposition_distance() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for n in 3..=8usize {
            for _ in 0..1000 {
                let a = random_perm(n, &mut rng);
                let b = random_perm(n, &mut rng);
                let lhs = (n - a.kappa()) + (n - b.kappa());
                let rhs = n - a.compose(&b).kappa();
                assert!(lhs >= rhs);
            }
        }
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        let mut rng = StdRng::seed_from_u64(0xc0ffee);
        for _ in 0..200 {
            let n = rng.gen_range(2..=9);
            let a = random_perm(n, &mut rng);
            let g = random_perm(n, &mut rng);
            assert_eq!(a.conjugate_by(&g).cycle_type(), a.cycle_type());
        }
    }

    #[test]
    fn parser_accepts_spacing_and_round_trips() {
        assert_eq!(p("(247)(586)", 9), p(" ( 2 4 7 ) (5,8,6) ", 9));
        let pi = p("(1386)(254)(79)", 9);
        assert_eq!(parse_cycles(&format!("{pi}"), 9).unwrap(), pi);
        // multi-digit labels need separators
        let big = parse_cycles("(1 10)(2,11)", 12).unwrap();
        assert_eq!(big.apply(1), 10);
        assert_eq!(big.apply(11), 2);
        assert!(parse_cycles("(1 2", 3).is_err());
    }

    #[test]
    fn restriction_of_compose_matches_compose_of_restrictions_on_closed_sets() {
        // when the subset is invariant under both permutations, restriction
        // commutes with composition
        let a = p("(12)(345)", 6);
        let b = p("(13)(45)", 6);
        let u = [1, 2, 3, 4, 5];
        let lhs = a.compose(&b).restrict(&u);
        let rhs = a.restrict(&u).compose(&b.restrict(&u));
        assert_eq!(lhs, rhs);
    }
}
