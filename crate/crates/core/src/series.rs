//! Sparse truncated formal power series with lattice-monomial exponents.
//!
//! An element is a finite sum of terms `c * t^j * w^m` where `j` is a
//! multi-index over `params` deformation variables, `m` is a vector in a
//! rank-`rank` lattice (Laurent exponents, any sign), and `c` is a scalar.
//! Everything is computed modulo total t-degree `> max_order`, i.e. in the
//! quotient by the `(max_order + 1)`-th power of the ideal (t_1, ..., t_l).
//!
//! Invariants maintained by every operation:
//! * no term with zero coefficient is stored;
//! * every stored term has `|j| <= max_order`;
//! * terms are kept in the canonical order (|j|, j, m), so equality of the
//!   underlying maps is semantic equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Exponent multi-index over the deformation parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(params: usize) -> Self {
        MultiIndex(vec![0; params])
    }

    /// Total degree |j|, the grading used for truncation.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.0.len(), other.0.len(), "parameter count mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Point of the exponent lattice (also reused for base-plane directions).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

/// Vector of the dual lattice; pairs integrally with `LatticeVector`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        assert_eq!(self.0.len(), other.0.len(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|&c| -c).collect())
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|&c| k * c).collect())
    }

    /// Divides out the content (gcd of coordinates), keeping orientation.
    pub fn primitive(&self) -> LatticeVector {
        let g = self.content();
        assert!(g > 0, "zero vector has no primitive representative");
        LatticeVector(self.0.iter().map(|&c| c / g).collect())
    }

    /// Gcd of the coordinates; 0 for the zero vector.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| gcd(g, c.abs()))
    }
}

impl DualVector {
    pub fn zero(rank: usize) -> Self {
        DualVector(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integral pairing between the lattice and its dual.
pub fn pairing(m: &LatticeVector, n: &DualVector) -> i64 {
    assert_eq!(m.0.len(), n.0.len(), "rank mismatch");
    m.0.iter().zip(&n.0).map(|(a, b)| a * b).sum()
}

/// Key of one series term, ordered lexicographically on (|j|, j, m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermKey {
    pub j: MultiIndex,
    pub m: LatticeVector,
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j.total(), &self.j.0, &self.m.0).cmp(&(other.j.total(), &other.j.0, &other.m.0))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Truncated series; see the module docs for the term model.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    params: usize,
    rank: usize,
    max_order: u32,
    terms: BTreeMap<TermKey, S>,
}

impl<S: Scalar> Series<S> {
    pub fn zero(params: usize, rank: usize, max_order: u32) -> Self {
        Series { params, rank, max_order, terms: BTreeMap::new() }
    }

    pub fn one(params: usize, rank: usize, max_order: u32) -> Self {
        Series::term(
            params,
            rank,
            max_order,
            MultiIndex::zero(params),
            LatticeVector::zero(rank),
            S::one(),
        )
    }

    /// Single term `c * t^j * w^m`; terms beyond the truncation order are
    /// identified with zero.
    pub fn term(
        params: usize,
        rank: usize,
        max_order: u32,
        j: MultiIndex,
        m: LatticeVector,
        coeff: S,
    ) -> Self {
        assert_eq!(j.0.len(), params, "parameter count mismatch");
        assert_eq!(m.0.len(), rank, "rank mismatch");
        let mut s = Series::zero(params, rank, max_order);
        if j.total() <= max_order && !coeff.is_zero() {
            s.terms.insert(TermKey { j, m }, coeff);
        }
        s
    }

    /// The pure lattice monomial `w^m`.
    pub fn monomial(params: usize, max_order: u32, m: LatticeVector) -> Self {
        let rank = m.0.len();
        Series::term(params, rank, max_order, MultiIndex::zero(params), m, S::one())
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^j * w^m` (zero when absent).
    pub fn coefficient(&self, j: &MultiIndex, m: &LatticeVector) -> S {
        self.terms
            .get(&TermKey { j: j.clone(), m: m.clone() })
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Smallest total t-degree among stored terms; `None` for the zero series.
    pub fn min_t_order(&self) -> Option<u32> {
        // Keys are sorted by (|j|, ...), so the first key has minimal degree.
        self.terms.keys().next().map(|k| k.j.total())
    }

    /// True when every term has zero lattice part (a pure t-series).
    pub fn is_pure_t(&self) -> bool {
        self.terms.keys().all(|k| k.m.is_zero())
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.params, other.params, "parameter count mismatch");
        assert_eq!(self.rank, other.rank, "rank mismatch");
        assert_eq!(self.max_order, other.max_order, "truncation order mismatch");
    }

    fn insert(&mut self, key: TermKey, c: S) {
        if key.j.total() > self.max_order || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    /// In-place `self += other`; avoids rebuilding the map in accumulation
    /// loops.
    pub fn add_assign(&mut self, other: &Self) {
        self.assert_compatible(other);
        for (k, c) in &other.terms {
            self.insert(k.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -(c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Series::zero(self.params, self.rank, self.max_order);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * k.clone();
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Convolution product; t-degrees above the truncation order are dropped.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Series::zero(self.params, self.rank, self.max_order);
        for (ka, ca) in &self.terms {
            let ta = ka.j.total();
            for (kb, cb) in &other.terms {
                if ta + kb.j.total() > self.max_order {
                    continue;
                }
                out.insert(
                    TermKey { j: ka.j.add(&kb.j), m: ka.m.add(&kb.m) },
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }

    /// Multiplies by `c * t^j * w^m` without building a second series.
    pub fn mul_term(&self, j: &MultiIndex, m: &LatticeVector, c: &S) -> Self {
        let mut out = Series::zero(self.params, self.rank, self.max_order);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.insert(
                TermKey { j: k.j.add(j), m: k.m.add(m) },
                v.clone() * c.clone(),
            );
        }
        out
    }

    /// Keeps only the terms of total t-degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut out = Series::zero(self.params, self.rank, self.max_order);
        for (key, c) in &self.terms {
            if key.j.total() == k {
                out.terms.insert(key.clone(), c.clone());
            }
        }
        out
    }

    /// Drops terms of total t-degree above `order` and lowers the truncation
    /// bound to `order`.
    pub fn truncated(&self, order: u32) -> Self {
        let mut out = Series::zero(self.params, self.rank, order);
        for (k, c) in &self.terms {
            if k.j.total() <= order {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterprets the series at a higher truncation bound. Sound because a
    /// representative mod m^(k+1) also represents its class mod nothing new;
    /// callers use it when a low-order result is inserted into a higher-order
    /// context.
    pub fn with_max_order(&self, order: u32) -> Self {
        assert!(order >= self.max_order, "cannot raise precision by relabeling");
        let mut out = self.clone();
        out.max_order = order;
        out
    }

    /// `exp(a) = sum a^k / k!` for `a` with every term of t-degree >= 1.
    pub fn exp_positive(&self) -> Self {
        assert!(
            self.min_t_order().map_or(true, |o| o >= 1),
            "exp requires all terms in the parameter ideal"
        );
        let mut out = Series::one(self.params, self.rank, self.max_order);
        let mut pow = Series::one(self.params, self.rank, self.max_order);
        for k in 1..=self.max_order as i64 {
            pow = pow.mul(self).scale(&S::from_ratio(1, k));
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow);
        }
        out
    }

    /// `log(1 + a) = sum (-1)^(k+1) a^k / k` for `a` in the parameter ideal.
    pub fn log_one_plus(&self) -> Self {
        assert!(
            self.min_t_order().map_or(true, |o| o >= 1),
            "log requires all terms in the parameter ideal"
        );
        let mut out = Series::zero(self.params, self.rank, self.max_order);
        let mut pow = Series::one(self.params, self.rank, self.max_order);
        for k in 1..=self.max_order as i64 {
            pow = pow.mul(self);
            if pow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&pow.scale(&S::from_ratio(sign, k)));
        }
        out
    }
}

impl<S: Scalar> std::ops::Add for &Series<S> {
    type Output = Series<S>;
    fn add(self, rhs: &Series<S>) -> Series<S> {
        Series::add(self, rhs)
    }
}

impl<S: Scalar> std::ops::Sub for &Series<S> {
    type Output = Series<S>;
    fn sub(self, rhs: &Series<S>) -> Series<S> {
        Series::sub(self, rhs)
    }
}

impl<S: Scalar> std::ops::Mul for &Series<S> {
    type Output = Series<S>;
    fn mul(self, rhs: &Series<S>) -> Series<S> {
        Series::mul(self, rhs)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = vec![format!("{}", c)];
            for (i, &e) in k.j.0.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("t{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("t{}^{}", i + 1, e));
                }
            }
            if !k.m.is_zero() {
                let coords: Vec<String> = k.m.0.iter().map(|c| c.to_string()).collect();
                factors.push(format!("w^({})", coords.join(",")));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, QSeries};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn t1_w(max_order: u32) -> QSeries {
        // t1 * w^(-1,0)
        QSeries::term(2, 2, max_order, mi(&[1, 0]), lv(&[-1, 0]), rat(1, 1))
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let a = t1_w(4);
        let s = a.sub(&a);
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
        let also = a.add(&a.neg());
        assert_eq!(also, s);
    }

    #[test]
    fn truncation_drops_high_degrees() {
        let a = t1_w(2);
        let sq = a.mul(&a);
        assert_eq!(sq.coefficient(&mi(&[2, 0]), &lv(&[-2, 0])), rat(1, 1));
        let cube = sq.mul(&a);
        assert!(cube.is_zero(), "degree 3 exceeds the bound");
    }

    // Oracle for mul: binomial expansion of (1 + t1 w^(-1,0))^2.
    #[test]
    fn square_of_binomial_matches_expansion() {
        let n = 4;
        let one = QSeries::one(2, 2, n);
        let f = one.add(&t1_w(n));
        let sq = f.mul(&f);
        let mut expect = QSeries::one(2, 2, n);
        expect = expect.add(&QSeries::term(2, 2, n, mi(&[1, 0]), lv(&[-1, 0]), rat(2, 1)));
        expect = expect.add(&QSeries::term(2, 2, n, mi(&[2, 0]), lv(&[-2, 0]), rat(1, 1)));
        assert_eq!(sq, expect);
    }

    // Oracle for exp_positive: Taylor expansion of exp(t1 w^(-1,0)) at order 3.
    #[test]
    fn exp_matches_taylor() {
        let n = 3;
        let e = t1_w(n).exp_positive();
        let mut expect = QSeries::one(2, 2, n);
        expect = expect.add(&QSeries::term(2, 2, n, mi(&[1, 0]), lv(&[-1, 0]), rat(1, 1)));
        expect = expect.add(&QSeries::term(2, 2, n, mi(&[2, 0]), lv(&[-2, 0]), rat(1, 2)));
        expect = expect.add(&QSeries::term(2, 2, n, mi(&[3, 0]), lv(&[-3, 0]), rat(1, 6)));
        assert_eq!(e, expect);
    }

    // Oracle for log_one_plus: -4 log(1 - u) with u = t1 t2 w^(-1,-1) is
    // 4u + 2u^2 + 4/3 u^3 at order 6, term for term the series sum 4 u^k / k.
    #[test]
    fn log_matches_wall_function_expansion() {
        let n = 6;
        let u = QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[-1, -1]), rat(1, 1));
        let f = u.neg().log_one_plus().scale(&rat(-4, 1));
        let mut expect = QSeries::zero(2, 2, n);
        let mut pow = QSeries::one(2, 2, n);
        for k in 1..=3i64 {
            pow = pow.mul(&u);
            expect = expect.add(&pow.scale(&rat(4, k)));
        }
        assert_eq!(f, expect);
        assert_eq!(f.coefficient(&mi(&[3, 3]), &lv(&[-3, -3])), rat(4, 3));
        assert_eq!(f.len(), 3, "u^4 exceeds order 6");
    }

    #[test]
    fn exp_log_round_trip() {
        let n = 6;
        let u = QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[-1, -1]), rat(3, 2));
        let v = QSeries::term(2, 2, n, mi(&[2, 0]), lv(&[1, 1]), rat(-1, 3));
        let a = u.add(&v);
        let one = QSeries::one(2, 2, n);
        let round = a.exp_positive().sub(&one).log_one_plus();
        assert_eq!(round, a);
    }

    #[test]
    fn min_t_order_reads_leading_block() {
        let n = 5;
        assert_eq!(QSeries::zero(2, 2, n).min_t_order(), None);
        let u = QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[-1, -1]), rat(1, 1));
        let v = QSeries::term(2, 2, n, mi(&[0, 3]), lv(&[0, 1]), rat(1, 1));
        assert_eq!(u.add(&v).min_t_order(), Some(2));
    }

    #[test]
    fn term_order_is_by_total_degree_then_lex() {
        let n = 6;
        let mut s = QSeries::zero(2, 2, n);
        s = s.add(&QSeries::term(2, 2, n, mi(&[0, 2]), lv(&[0, 0]), rat(1, 1)));
        s = s.add(&QSeries::term(2, 2, n, mi(&[1, 0]), lv(&[0, 0]), rat(1, 1)));
        s = s.add(&QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[5, 0]), rat(1, 1)));
        let keys: Vec<u32> = s.terms().map(|(k, _)| k.j.total()).collect();
        assert_eq!(keys, vec![1, 2, 2]);
    }

    #[test]
    fn display_is_readable() {
        let n = 4;
        let s = QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[-1, -1]), rat(4, 1))
            .add(&QSeries::term(2, 2, n, mi(&[2, 2]), lv(&[-2, -2]), rat(4, 3)));
        assert_eq!(format!("{}", s), "4*t1*t2*w^(-1,-1) + 4/3*t1^2*t2^2*w^(-2,-2)");
    }

    #[test]
    fn float_scalars_are_usable() {
        let n = 3;
        let a = Series::<f64>::term(1, 1, n, mi(&[1]), lv(&[0]), 0.5);
        let e = a.exp_positive();
        let c = e.coefficient(&mi(&[2]), &lv(&[0]));
        assert!((c - 0.125).abs() < 1e-12);
    }

    #[test]
    #[should_panic(expected = "truncation order mismatch")]
    fn mixed_orders_are_rejected() {
        let a = t1_w(3);
        let b = t1_w(4);
        let _ = a.add(&b);
    }

    #[test]
    fn caps_at_max_order_not_above() {
        // |j| = max_order itself is kept; only |j| > max_order vanishes.
        let n = 2;
        let u = QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[-1, -1]), rat(1, 1));
        assert!(!u.is_zero());
        let v: QSeries = QSeries::term(2, 2, n, mi(&[2, 1]), lv(&[0, 0]), rat(1, 1));
        assert!(v.is_zero());
    }
}
