//! Coefficient-level verification of the symmetrised generating series
//! identity: the counts `c_k(alpha)` assembled into the symmetric series
//! `P_k^{(m)}(x_1..x_m)` on one side, and the closed form
//! `S_k^{(m)}(w_1..w_m) · prod_i x_i dw_i/dx_i` (after applying the inverse
//! `(3-m)`-th power of the Euler operator) on the other.
//!
//! The `S` polynomials are known for `m <= 3`:
//! `S^{(1)} = 1`,
//! `S^{(2)} = ((w_1^{k-1}-w_2^{k-1})/(w_1-w_2))^2`, and
//! `S^{(3)} = (G/V(w_1,w_2,w_3))^2` for an explicit antisymmetric cubic `G`.
//! For `k = 2` the polynomial is identically 1 for every `m`, which gives an
//! additional pipeline that exercises the negative Euler powers.

use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::count::CountTable;
use crate::perm::{class_size, mu_k, partitions, Partition};
use crate::series::{
    divide_by_vandermonde, divided_difference, log_series, power_difference_quotient, Exps,
    Series, VarSet,
};
use crate::{ExactSeries, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("count table is for k={0}, requested k={1}")]
    TableMismatch(usize, usize),
    #[error("count table is missing c_{k}({alpha})")]
    MissingCount { k: usize, alpha: String },
    #[error("no closed form is available for k={0}, m={1}")]
    Unsupported(usize, usize),
}

/// Provenance of a symmetric series in `x_1..x_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    FromCounts,
    FromClosedForm,
}

/// A symmetric truncated series in `x_1..x_m`.
#[derive(Debug, Clone)]
pub struct SymSeries {
    pub k: usize,
    pub m: usize,
    pub provenance: Provenance,
    pub series: ExactSeries,
}

impl SymSeries {
    /// Exact invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (1..self.m).all(|i| self.series.swap_vars(i - 1, i) == self.series)
    }
}

/// One coefficient disagreement between the two sides of a verification.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub exponents: Exps,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Outcome of an exact coefficientwise comparison.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub k: usize,
    pub m: usize,
    pub n_max: u32,
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
}

impl ConjectureReport {
    fn from_sides(k: usize, m: usize, n_max: u32, lhs: &ExactSeries, rhs: &ExactSeries) -> Self {
        let mut keys: std::collections::BTreeSet<Exps> = Default::default();
        for (e, _) in lhs.terms() {
            keys.insert(e.clone());
        }
        for (e, _) in rhs.terms() {
            keys.insert(e.clone());
        }
        let mut mismatches = Vec::new();
        for e in keys {
            let a = lhs.coeff(&e);
            let b = rhs.coeff(&e);
            if a != b {
                mismatches.push(Mismatch {
                    exponents: e,
                    lhs: a,
                    rhs: b,
                });
            }
        }
        ConjectureReport {
            k,
            m,
            n_max,
            pass: mismatches.is_empty(),
            mismatches,
        }
    }
}

fn rat(n: &BigInt) -> Rat {
    BigRational::from_integer(n.clone())
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= i;
    }
    f
}

fn permutations_of(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v: Vec<usize> = (0..m).collect();
    fn rec(v: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == v.len() {
            out.push(v.clone());
            return;
        }
        for i in at..v.len() {
            v.swap(at, i);
            rec(v, at + 1, out);
            v.swap(at, i);
        }
    }
    rec(&mut v, 0, &mut out);
    out
}

/// The symmetrised count series
/// `P_k^{(m)} = sum_{alpha: l(alpha)=m, |alpha|<=n_max}
///    c_k(alpha) |C_alpha| / (mu_k(alpha)! n!) · sum_{sigma in S_m}
///    x_1^{alpha_sigma(1)} ... x_m^{alpha_sigma(m)}`.
///
/// The sum over `sigma` runs over all `m!` permutations, duplicates from
/// repeated parts included.
pub fn p_from_counts(
    k: usize,
    m: usize,
    n_max: u32,
    table: &CountTable,
) -> Result<SymSeries, ConjectureError> {
    if table.k != k {
        return Err(ConjectureError::TableMismatch(table.k, k));
    }
    let vars = VarSet::xs(m);
    let mut series = ExactSeries::zero(&vars, Some(n_max));
    let sigmas = permutations_of(m);
    for n in 1..=(n_max as usize) {
        for alpha in partitions(n) {
            if alpha.len() != m {
                continue;
            }
            let Some(mu) = mu_k(&alpha, k) else {
                continue; // c_k(alpha) = 0
            };
            let c = table.get(&alpha).ok_or_else(|| ConjectureError::MissingCount {
                k,
                alpha: alpha.to_string(),
            })?;
            if c.is_zero() {
                continue;
            }
            let coeff = rat(c) * rat(&class_size(&alpha))
                / (rat(&factorial(mu)) * rat(&factorial(n)));
            for sigma in &sigmas {
                let exps: Exps = (0..m).map(|t| alpha.parts()[sigma[t]] as u16).collect();
                series = series.add(&ExactSeries::monomial(
                    &vars,
                    Some(n_max),
                    exps,
                    coeff.clone(),
                ));
            }
        }
    }
    Ok(SymSeries {
        k,
        m,
        provenance: Provenance::FromCounts,
        series,
    })
}

/// The symmetric polynomial `S_k^{(m)}(w_1..w_m)` for `m <= 3`, as an exact
/// polynomial over the variables `w1..wm`.
pub fn s_poly(k: usize, m: usize) -> Result<ExactSeries, ConjectureError> {
    assert!(k >= 2);
    let names: Vec<String> = (1..=m).map(|i| format!("w{i}")).collect();
    let vars = VarSet::unit(&names);
    match m {
        1 => Ok(ExactSeries::one(&vars, None)),
        2 => {
            let w1 = ExactSeries::var(&vars, None, 0);
            let w2 = ExactSeries::var(&vars, None, 1);
            let q = power_difference_quotient(&w1, &w2, k as u32 - 1);
            Ok(q.pow(2))
        }
        3 => {
            let g = three_part_antisymmetric(k, &vars);
            // antisymmetry under each adjacent transposition
            assert_eq!(g.swap_vars(0, 1), g.neg(), "G must be antisymmetric");
            assert_eq!(g.swap_vars(1, 2), g.neg(), "G must be antisymmetric");
            let q = divide_by_vandermonde(&g, &[0, 1, 2])
                .expect("antisymmetric numerator divides exactly");
            Ok(q.pow(2))
        }
        _ => Err(ConjectureError::Unsupported(k, m)),
    }
}

/// The antisymmetric cubic numerator for the three-variable closed form:
/// `G = sum_cyc w_a (1-(k-1)w_a^{k-1}) (w_{a-1}^{k-1} - w_{a+1}^{k-1})`.
fn three_part_antisymmetric(k: usize, vars: &Arc<VarSet>) -> ExactSeries {
    let w: Vec<ExactSeries> = (0..3).map(|i| ExactSeries::var(vars, None, i)).collect();
    let km1 = k as u32 - 1;
    let mut g = ExactSeries::zero(vars, None);
    for a in 0..3usize {
        let prev = (a + 2) % 3;
        let next = (a + 1) % 3;
        let unit = ExactSeries::one(vars, None)
            .sub(&w[a].pow(km1).scale(&Rat::from_integer(BigInt::from(k as i64 - 1))));
        let diff = w[prev].pow(km1).sub(&w[next].pow(km1));
        g = g.add(&w[a].mul(&unit).mul(&diff));
    }
    g
}

/// `S ≡ 1` in `m` variables; the closed form valid for `k = 2` at every `m`.
pub fn s_one(m: usize) -> ExactSeries {
    let names: Vec<String> = (1..=m).map(|i| format!("w{i}")).collect();
    ExactSeries::one(&VarSet::unit(&names), None)
}

/// The closed-form side: `S(w(x_1),..,w(x_m)) · prod_i x_i dw_i/dx_i`,
/// truncated at total degree `n_max`.
pub fn rhs_series(k: usize, m: usize, n_max: u32, s: &ExactSeries) -> SymSeries {
    assert_eq!(s.vars().len(), m);
    let vars = VarSet::xs(m);
    let w = crate::series::w_series::<Rat>(k, n_max);
    let ws: Vec<ExactSeries> = (0..m).map(|i| w.embed(&vars, &[i])).collect();
    let w_refs: Vec<&ExactSeries> = ws.iter().collect();
    let s_sub = s.subst_all(&w_refs);
    let xdw = crate::series::x_dw_dx::<Rat>(k, n_max);
    let mut out = s_sub;
    for i in 0..m {
        out = out.mul(&xdw.embed(&vars, &[i]));
    }
    SymSeries {
        k,
        m,
        provenance: Provenance::FromClosedForm,
        series: out.truncated(n_max),
    }
}

/// The count side after the Euler-operator power: applies
/// `(sum_i x_i d/dx_i)^{3-m}` to `P`. For `m <= 3` this is literal repeated
/// application; for `m >= 4` the negative power acts on each homogeneous
/// component of total degree `d` as division by `d^{m-3}` (well defined since
/// every monomial has total degree >= m >= 1).
pub fn lhs_series(m: usize, p: &SymSeries) -> ExactSeries {
    if m <= 3 {
        let mut out = p.series.clone();
        for _ in 0..(3 - m) {
            out = out.euler_all();
        }
        out
    } else {
        let mut out = ExactSeries::zero(p.series.vars(), p.series.cap());
        for (e, c) in p.series.terms() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            assert!(d >= 1, "no degree-0 component can occur");
            let mut den = BigInt::one();
            for _ in 0..(m - 3) {
                den *= d;
            }
            let scaled = c.clone() / Rat::from_integer(den);
            out = out.add(&ExactSeries::monomial(
                p.series.vars(),
                p.series.cap(),
                e.clone(),
                scaled,
            ));
        }
        out
    }
}

/// Full coefficientwise comparison for `(k, m)` up to total degree `n_max`.
/// Uses the known `S` polynomial for `m <= 3`, and `S ≡ 1` for `k = 2` with
/// arbitrary `m`; other combinations are unsupported.
pub fn check_conjecture(
    k: usize,
    m: usize,
    n_max: u32,
    table: &CountTable,
) -> Result<ConjectureReport, ConjectureError> {
    let s = if m <= 3 {
        s_poly(k, m)?
    } else if k == 2 {
        s_one(m)
    } else {
        return Err(ConjectureError::Unsupported(k, m));
    };
    let p = p_from_counts(k, m, n_max, table)?;
    let lhs = lhs_series(m, &p);
    let rhs = rhs_series(k, m, n_max, &s);
    Ok(ConjectureReport::from_sides(k, m, n_max, &lhs, &rhs.series))
}

/// Two-variable closed form
/// `P^{(2)} = log((w_1-w_2)/(x_1-x_2)) - (w_1^k - w_2^k)/(w_1 - w_2)`,
/// normalised so that `P^{(2)}(0,0) = 0`, compared against the series
/// assembled from counts.
pub fn p2_closed_form_check(
    k: usize,
    n_max: u32,
    table: &CountTable,
) -> Result<ConjectureReport, ConjectureError> {
    let vars = VarSet::xs(2);
    let w = crate::series::w_series::<Rat>(k, n_max + 1);
    let dd = divided_difference(&w, &vars, 0, 1); // (w1 - w2)/(x1 - x2), constant term 1
    let log_part = log_series(&dd).expect("divided difference has constant term 1");
    let w1 = w.clone().truncated(n_max).embed(&vars, &[0]);
    let w2 = w.truncated(n_max).embed(&vars, &[1]);
    let quot = power_difference_quotient(&w1, &w2, k as u32); // (w1^k - w2^k)/(w1 - w2)
    let mut candidate = log_part.sub(&quot).truncated(n_max);
    let c0 = candidate.constant_term();
    if !c0.is_zero() {
        candidate = candidate.sub(&ExactSeries::constant(&vars, Some(n_max), c0));
    }
    let p = p_from_counts(k, 2, n_max, table)?;
    Ok(ConjectureReport::from_sides(
        k,
        2,
        n_max,
        &p.series,
        &candidate,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_table;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn p_series_low_coefficients() {
        let t2 = count_table(2, 4, Some(1), 1);
        let p = p_from_counts(2, 1, 4, &t2).unwrap();
        // coefficient of x1^3 = c_2([3]) / 3! / (3) ... = n^{n-2}/(n·(n-1)!)
        assert_eq!(p.series.coeff(&[3]), q(1, 2));
        assert_eq!(p.series.coeff(&[1]), q(1, 1));

        let t3 = count_table(3, 4, Some(1), 1);
        let p3 = p_from_counts(3, 1, 4, &t3).unwrap();
        assert_eq!(p3.series.coeff(&[3]), q(1, 3));

        // m = 2: the n = 2 coefficient vanishes for k >= 3 by divisibility
        let t3b = count_table(3, 4, Some(2), 1);
        let p32 = p_from_counts(3, 2, 4, &t3b).unwrap();
        assert_eq!(p32.series.coeff(&[1, 1]), q(0, 1));
    }

    #[test]
    fn p_series_is_symmetric_with_divisible_support() {
        let t = count_table(3, 7, Some(2), 1);
        let p = p_from_counts(3, 2, 7, &t).unwrap();
        assert!(p.is_symmetric());
        for (e, _) in p.series.terms() {
            let n: usize = e.iter().map(|&x| x as usize).sum();
            assert!(e.iter().all(|&x| x >= 1));
            assert_eq!((n + 2 - 2) % 2, 0);
        }
    }

    #[test]
    fn s_poly_specialisations() {
        // k = 2 collapses to 1 for m = 2 and m = 3
        assert_eq!(s_poly(2, 2).unwrap(), s_one(2));
        assert_eq!(s_poly(2, 3).unwrap(), s_one(3));
        // any k at m = 1
        assert_eq!(s_poly(5, 1).unwrap(), s_one(1));
        // k = 3, m = 2: ((w1^2 - w2^2)/(w1 - w2))^2 = (w1 + w2)^2
        let s = s_poly(3, 2).unwrap();
        let vars = s.vars().clone();
        let w1 = ExactSeries::var(&vars, None, 0);
        let w2 = ExactSeries::var(&vars, None, 1);
        assert_eq!(s, w1.add(&w2).pow(2));
        assert!(s_poly(3, 4).is_err());
    }

    #[test]
    fn s_poly_outputs_are_symmetric() {
        for k in 2..=5usize {
            for m in [2usize, 3] {
                let s = s_poly(k, m).unwrap();
                for i in 1..m {
                    assert_eq!(s.swap_vars(i - 1, i), s, "k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn rhs_low_coefficients() {
        let s1 = s_poly(2, 1).unwrap();
        let r = rhs_series(2, 1, 3, &s1);
        // x dw/dx for k=2
        assert_eq!(r.series.coeff(&[1]), q(1, 1));
        assert_eq!(r.series.coeff(&[2]), q(2, 1));
        assert_eq!(r.series.coeff(&[3]), q(9, 2));

        let r3 = rhs_series(3, 1, 3, &s_poly(3, 1).unwrap());
        assert_eq!(r3.series.coeff(&[3]), q(3, 1));

        let r22 = rhs_series(2, 2, 3, &s_poly(2, 2).unwrap());
        assert_eq!(r22.series.coeff(&[1, 1]), q(1, 1));
    }

    #[test]
    fn euler_power_cases() {
        let vars = VarSet::xs(1);
        let p = SymSeries {
            k: 2,
            m: 1,
            provenance: Provenance::FromCounts,
            series: ExactSeries::monomial(&vars, Some(8), vec![5], q(1, 1)),
        };
        let l = lhs_series(1, &p);
        assert_eq!(l.coeff(&[5]), q(25, 1));

        // m = 3 leaves the series unchanged
        let vars3 = VarSet::xs(3);
        let p3 = SymSeries {
            k: 2,
            m: 3,
            provenance: Provenance::FromCounts,
            series: ExactSeries::monomial(&vars3, Some(8), vec![1, 1, 2], q(7, 3)),
        };
        assert_eq!(lhs_series(3, &p3), p3.series);

        // m = 4: x1x2x3x4 picks up 1/4
        let vars4 = VarSet::xs(4);
        let p4 = SymSeries {
            k: 2,
            m: 4,
            provenance: Provenance::FromCounts,
            series: ExactSeries::monomial(&vars4, Some(8), vec![1, 1, 1, 1], q(1, 1)),
        };
        assert_eq!(lhs_series(4, &p4).coeff(&[1, 1, 1, 1]), q(1, 4));
    }

    #[test]
    fn conjecture_small_instances() {
        let t2 = count_table(2, 6, Some(2), 1);
        let r = check_conjecture(2, 1, 6, &t2).unwrap();
        assert!(r.pass, "k=2 m=1 mismatches: {:?}", r.mismatches);
        let r = check_conjecture(2, 2, 6, &t2).unwrap();
        assert!(r.pass, "k=2 m=2 mismatches: {:?}", r.mismatches);

        let t3 = count_table(3, 6, Some(2), 1);
        let r = check_conjecture(3, 2, 6, &t3).unwrap();
        assert!(r.pass, "k=3 m=2 mismatches: {:?}", r.mismatches);
    }

    #[test]
    fn inverse_euler_pipeline_small() {
        let t2 = count_table(2, 6, Some(4), 1);
        let r = check_conjecture(2, 4, 6, &t2).unwrap();
        assert!(r.pass, "k=2 m=4 mismatches: {:?}", r.mismatches);
        // unsupported beyond the k = 2 mode
        assert!(matches!(
            check_conjecture(3, 4, 6, &t2),
            Err(ConjectureError::Unsupported(3, 4))
        ));
    }

    #[test]
    fn p2_closed_form_small() {
        for k in [2usize, 3] {
            let t = count_table(k, 6, Some(2), 1);
            let r = p2_closed_form_check(k, 6, &t).unwrap();
            assert!(r.pass, "k={k} mismatches: {:?}", r.mismatches);
        }
    }
}
