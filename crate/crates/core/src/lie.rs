//! Lattice-monomial derivations, their brackets, exponentials, and the
//! Baker-Campbell-Hausdorff product.
//!
//! An element is a finite sum over lattice monomials `w^m` of columns
//! `sum_k f_{m,k}(t) * w^m * D_k`, where `D_k` is the logarithmic derivative
//! `D_k(w^a) = a_k w^a` and each `f_{m,k}` is a pure-t series.  The
//! wall-crossing subalgebra is cut out by the tangency condition: for every
//! monomial `m` and every t-exponent, the column vector pairs to zero with
//! `m` itself.  Tangency is what makes `exp` of a single wall log act by the
//! closed substitution formula, and it is preserved by the bracket; the
//! constructors enforce it and `is_tangent` re-checks it.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::Ratio;
use num::Zero;

use crate::scalar::Scalar;
use crate::series::{pairing, DualVector, LatticeVector, MultiIndex, Series};

/// Derivation with monomial weights; see the module docs for the component
/// model. Equality is semantic: columns that cancel are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<S> {
    params: usize,
    rank: usize,
    max_order: u32,
    comps: BTreeMap<LatticeVector, Vec<Series<S>>>,
}

impl<S: Scalar> LieElement<S> {
    pub fn zero(params: usize, rank: usize, max_order: u32) -> Self {
        LieElement { params, rank, max_order, comps: BTreeMap::new() }
    }

    /// The derivation `f * D_n` for `n` in the dual lattice.  Every monomial
    /// of `f` must pair to zero with `n`; this is the tangency condition that
    /// keeps the element inside the wall-crossing algebra.
    pub fn from_derivation(f: &Series<S>, n: &DualVector) -> Self {
        assert_eq!(n.0.len(), f.rank(), "rank mismatch");
        let mut out = Self::zero(f.params(), f.rank(), f.max_order());
        for (key, c) in f.terms() {
            assert_eq!(
                pairing(&key.m, n),
                0,
                "derivation direction must annihilate its own monomial"
            );
            for (k, &nk) in n.0.iter().enumerate() {
                if nk != 0 {
                    let piece = Series::term(
                        out.params,
                        out.rank,
                        out.max_order,
                        key.j.clone(),
                        LatticeVector::zero(out.rank),
                        c.clone() * S::from_int(nk),
                    );
                    out.add_into(&key.m, k, &piece);
                }
            }
        }
        out.prune();
        out
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
        self.comps.is_empty()
    }

    /// Iterates (monomial, column) pairs; columns have one pure-t series per
    /// lattice coordinate.
    pub fn components(&self) -> impl Iterator<Item = (&LatticeVector, &Vec<Series<S>>)> {
        self.comps.iter()
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.params, other.params, "parameter count mismatch");
        assert_eq!(self.rank, other.rank, "rank mismatch");
        assert_eq!(self.max_order, other.max_order, "truncation order mismatch");
    }

    fn column_mut(&mut self, m: &LatticeVector) -> &mut Vec<Series<S>> {
        let (params, rank, max_order) = (self.params, self.rank, self.max_order);
        self.comps
            .entry(m.clone())
            .or_insert_with(|| vec![Series::zero(params, rank, max_order); rank])
    }

    pub(crate) fn add_into(&mut self, m: &LatticeVector, k: usize, f: &Series<S>) {
        self.column_mut(m)[k].add_assign(f);
    }

    pub(crate) fn add_column(&mut self, m: &LatticeVector, col: &[Series<S>]) {
        assert_eq!(col.len(), self.rank, "rank mismatch");
        for (k, f) in col.iter().enumerate() {
            self.add_into(m, k, f);
        }
        self.prune();
    }

    fn prune(&mut self) {
        self.comps.retain(|_, col| col.iter().any(|s| !s.is_zero()));
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.assert_compatible(other);
        for (m, col) in &other.comps {
            let mine = self.column_mut(m);
            for (k, f) in col.iter().enumerate() {
                mine[k].add_assign(f);
            }
        }
        self.prune();
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        for col in out.comps.values_mut() {
            for f in col.iter_mut() {
                *f = f.scale(c);
            }
        }
        out.prune();
        out
    }

    /// Smallest total t-degree appearing in any column.
    pub fn min_t_order(&self) -> Option<u32> {
        self.comps
            .values()
            .flat_map(|col| col.iter().filter_map(|f| f.min_t_order()))
            .min()
    }

    pub fn truncated(&self, order: u32) -> Self {
        let mut out = Self::zero(self.params, self.rank, order);
        for (m, col) in &self.comps {
            let tc: Vec<Series<S>> = col.iter().map(|f| f.truncated(order)).collect();
            out.comps.insert(m.clone(), tc);
        }
        out.prune();
        out
    }

    pub fn with_max_order(&self, order: u32) -> Self {
        let mut out = Self::zero(self.params, self.rank, order);
        for (m, col) in &self.comps {
            let rc: Vec<Series<S>> = col.iter().map(|f| f.with_max_order(order)).collect();
            out.comps.insert(m.clone(), rc);
        }
        out
    }

    /// Keeps only the part of total t-degree exactly `k`.
    pub fn order_part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.params, self.rank, self.max_order);
        for (m, col) in &self.comps {
            let hc: Vec<Series<S>> = col.iter().map(|f| f.homogeneous_part(k)).collect();
            out.comps.insert(m.clone(), hc);
        }
        out.prune();
        out
    }

    /// Checks the defining tangency condition: per monomial and t-exponent
    /// the column pairs to zero with the monomial.  Exact-scalar check; with
    /// floats rounding can leave residue.
    pub fn is_tangent(&self) -> bool {
        for (m, col) in &self.comps {
            let mut sums: BTreeMap<Vec<u32>, S> = BTreeMap::new();
            for (k, f) in col.iter().enumerate() {
                let weight = S::from_int(m.0[k]);
                for (key, c) in f.terms() {
                    let e = sums.entry(key.j.0.clone()).or_insert_with(S::zero);
                    *e = e.clone() + c.clone() * weight.clone();
                }
            }
            if sums.values().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Lie bracket of derivations:
    /// `[f w^a D_n, g w^b D_n'] = fg w^(a+b) (<b,n> D_n' - <a,n'> D_n)`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.params, self.rank, self.max_order);
        for (a, fa) in &self.comps {
            for (b, gb) in &other.comps {
                let m_out = a.add(b);
                for (k, f) in fa.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    for (kp, g) in gb.iter().enumerate() {
                        if g.is_zero() {
                            continue;
                        }
                        let prod = f.mul(g);
                        if prod.is_zero() {
                            continue;
                        }
                        let bk = b.0[k];
                        let akp = a.0[kp];
                        if bk != 0 {
                            out.add_into(&m_out, kp, &prod.scale(&S::from_int(bk)));
                        }
                        if akp != 0 {
                            out.add_into(&m_out, k, &prod.scale(&S::from_int(-akp)));
                        }
                    }
                }
            }
        }
        out.prune();
        out
    }

    /// Action as a derivation of the series ring.
    pub fn apply(&self, s: &Series<S>) -> Series<S> {
        assert_eq!(self.params, s.params(), "parameter count mismatch");
        assert_eq!(self.rank, s.rank(), "rank mismatch");
        assert_eq!(self.max_order, s.max_order(), "truncation order mismatch");
        let mut out = Series::zero(self.params, self.rank, self.max_order);
        for (m, col) in &self.comps {
            for (k, f) in col.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                for (key, c) in s.terms() {
                    let w = key.m.0[k];
                    if w == 0 {
                        continue;
                    }
                    out.add_assign(&f.mul_term(
                        &key.j,
                        &m.add(&key.m),
                        &(c.clone() * S::from_int(w)),
                    ));
                }
            }
        }
        out
    }

    /// Action of `exp(self)` as a ring automorphism.  Requires every term in
    /// the parameter ideal so that the exponential series terminates.
    pub fn exp_apply(&self, s: &Series<S>) -> Series<S> {
        assert!(
            self.min_t_order().map_or(true, |o| o >= 1),
            "exponential requires all terms in the parameter ideal"
        );
        let mut out = s.clone();
        let mut cur = s.clone();
        for k in 1..=self.max_order as i64 {
            cur = self.apply(&cur).scale(&S::from_ratio(1, k));
            if cur.is_zero() {
                break;
            }
            out.add_assign(&cur);
        }
        out
    }

    /// Rank-2 factorization: each monomial component written as
    /// `g_m(t) * w^m * D_{n0}` with `n0` the lex-positive primitive dual
    /// vector annihilating `m`.  `None` when the element does not factor
    /// (wrong rank, a constant-monomial component, or tangency violated).
    pub fn factored_terms(&self) -> Option<Vec<(LatticeVector, DualVector, Series<S>)>> {
        if self.rank != 2 {
            return None;
        }
        let mut out = Vec::new();
        for (m, col) in &self.comps {
            if m.is_zero() {
                return None;
            }
            let n0 = perp_lex_positive(m);
            let k0 = n0.0.iter().position(|&c| c != 0).expect("perp of nonzero is nonzero");
            let lambda = col[k0].scale(&S::from_ratio(1, n0.0[k0]));
            for k in 0..2 {
                if col[k] != lambda.scale(&S::from_int(n0.0[k])) {
                    return None;
                }
            }
            out.push((m.clone(), n0, lambda));
        }
        Some(out)
    }
}

/// Lex-positive primitive dual vector annihilating `m` (rank 2 only).
pub fn perp_lex_positive(m: &LatticeVector) -> DualVector {
    assert_eq!(m.0.len(), 2, "rank-2 only");
    assert!(!m.is_zero(), "no canonical perpendicular for the zero vector");
    let raw = LatticeVector(vec![-m.0[1], m.0[0]]).primitive();
    let sign = match raw.0.iter().find(|&&c| c != 0) {
        Some(&c) if c < 0 => -1,
        _ => 1,
    };
    DualVector(raw.0.iter().map(|&c| c * sign).collect())
}

/// Baker-Campbell-Hausdorff product `log(exp(x) exp(y))`, truncated at the
/// elements' order bound, by direct word enumeration: for each word over
/// {x, y} add its right-nested bracket weighted by the word's rational
/// coefficient.  Suffixes with vanishing bracket are pruned, which is exact
/// because extending a word only wraps more brackets around its suffix.
pub fn bch<S: Scalar>(x: &LieElement<S>, y: &LieElement<S>) -> LieElement<S> {
    x.assert_compatible(y);
    let n = x.max_order();
    assert!(n <= 16, "word coefficients overflow i64 beyond order 16");
    for e in [x, y] {
        assert!(
            e.min_t_order().map_or(true, |o| o >= 1),
            "bch requires arguments in the parameter ideal"
        );
    }
    let mut acc = LieElement::zero(x.params(), x.rank(), n);
    let letters = [x, y];
    let mut word_rev = Vec::new();
    for l in 0..2usize {
        if letters[l].is_zero() {
            continue;
        }
        word_rev.push(l as u8);
        bch_walk(letters, &mut word_rev, letters[l], &mut acc, n);
        word_rev.pop();
    }
    acc
}

fn bch_walk<S: Scalar>(
    letters: [&LieElement<S>; 2],
    word_rev: &mut Vec<u8>,
    suffix: &LieElement<S>,
    acc: &mut LieElement<S>,
    depth_cap: u32,
) {
    let word: Vec<u8> = word_rev.iter().rev().copied().collect();
    let c = dynkin_coefficient(&word);
    if !c.numer().is_zero() {
        acc.add_assign(&suffix.scale(&S::from_ratio(*c.numer(), *c.denom())));
    }
    if word_rev.len() as u32 >= depth_cap {
        return;
    }
    for l in 0..2usize {
        let b = letters[l].bracket(suffix);
        if b.is_zero() {
            continue;
        }
        word_rev.push(l as u8);
        bch_walk(letters, word_rev, &b, acc, depth_cap);
        word_rev.pop();
    }
}

/// Rational coefficient of a word (0 = x, 1 = y, leftmost first) in the
/// word-expanded product formula: (1/L) * sum over splittings of the word
/// into n blocks `x^r y^s` of (-1)^(n-1) / (n * prod r_i! s_i!).
fn dynkin_coefficient(word: &[u8]) -> Ratio<i64> {
    let l = word.len();
    // p[i][n]: weighted count of splittings of word[i..] into n blocks.
    let mut p = vec![vec![Ratio::from_integer(0i64); l + 1]; l + 1];
    p[l][0] = Ratio::from_integer(1);
    for i in (0..l).rev() {
        let mut r = 0i64;
        let mut s = 0i64;
        for j in i..l {
            if word[j] == 0 {
                if s > 0 {
                    break; // an x after a y ends the block form
                }
                r += 1;
            } else {
                s += 1;
            }
            let weight = Ratio::new(1, factorial(r) * factorial(s));
            for count in 1..=(l - i) {
                let tail = p[j + 1][count - 1];
                if !tail.numer().is_zero() {
                    p[i][count] = p[i][count] + weight * tail;
                }
            }
        }
    }
    let mut total = Ratio::from_integer(0i64);
    for (count, row) in p[0].iter().enumerate().skip(1) {
        if !row.numer().is_zero() {
            let sign = if count % 2 == 1 { 1 } else { -1 };
            total = total + Ratio::new(sign, count as i64) * *row;
        }
    }
    total / Ratio::from_integer(l as i64)
}

fn factorial(k: i64) -> i64 {
    (1..=k).product::<i64>().max(1)
}

/// Log of a composite automorphism; `factors[0]` acts first, i.e. it is the
/// rightmost factor of the operator product.
pub fn log_product<S: Scalar>(factors: &[LieElement<S>]) -> LieElement<S> {
    let first = factors.first().expect("log of an empty product");
    let mut acc = LieElement::zero(first.params(), first.rank(), first.max_order());
    for f in factors {
        acc = bch(f, &acc);
    }
    acc
}

impl<S: Scalar + fmt::Display> fmt::Display for LieElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(parts) = self.factored_terms() {
            let mut first = true;
            for (m, n, g) in parts {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let full = g.mul_term(&MultiIndex::zero(self.params), &m, &S::one());
                let coords: Vec<String> = n.0.iter().map(|c| c.to_string()).collect();
                write!(f, "({})*d({})", full, coords.join(","))?;
            }
            return Ok(());
        }
        let mut first = true;
        for (m, col) in &self.comps {
            for (k, g) in col.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let coords: Vec<String> = m.0.iter().map(|c| c.to_string()).collect();
                write!(f, "({})*w^({})*d{}", g, coords.join(","), k + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, QLieElement, QSeries};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector(v.to_vec())
    }

    fn dv(v: &[i64]) -> DualVector {
        DualVector(v.to_vec())
    }

    fn gen(order: u32, num: i64, j: &[u32], m: &[i64], n: &[i64]) -> QLieElement {
        let f = QSeries::term(2, 2, order, mi(j), lv(m), rat(num, 1));
        LieElement::from_derivation(&f, &dv(n))
    }

    #[test]
    fn bracket_matches_hand_computation() {
        // [2 t1 w^(-1,0) D(0,1), 2 t2 w^(0,-1) D(1,0)] = 4 t1 t2 w^(-1,-1) D(-1,1)
        let x = gen(2, 2, &[1, 0], &[-1, 0], &[0, 1]);
        let y = gen(2, 2, &[0, 1], &[0, -1], &[1, 0]);
        let expect = gen(2, 4, &[1, 1], &[-1, -1], &[-1, 1]);
        assert_eq!(x.bracket(&y), expect);
    }

    #[test]
    fn same_direction_brackets_vanish() {
        // Both tangent to the same line of monomials: the bracket collapses.
        let x = gen(4, 2, &[1, 0], &[-1, 0], &[0, 1]);
        let y = gen(4, -1, &[2, 0], &[-2, 0], &[0, 1]);
        assert!(x.bracket(&y).is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi() {
        let x = gen(5, 2, &[1, 0], &[1, 0], &[0, 1]);
        let y = gen(5, 3, &[0, 1], &[0, 1], &[1, 0]);
        let z = gen(5, -1, &[1, 1], &[1, 1], &[1, -1]);
        assert_eq!(x.bracket(&y), y.bracket(&x).neg());
        let cyc = x
            .bracket(&y)
            .bracket(&z)
            .add(&y.bracket(&z).bracket(&x))
            .add(&z.bracket(&x).bracket(&y));
        assert!(cyc.is_zero());
    }

    #[test]
    fn bracket_preserves_tangency() {
        let x = gen(6, 2, &[1, 0], &[-1, 0], &[0, 1]);
        let y = gen(6, 5, &[0, 1], &[0, -1], &[1, 0]);
        let b = x.bracket(&y);
        assert!(b.is_tangent());
        assert!(x.bracket(&b).is_tangent());
    }

    #[test]
    fn tangency_check_rejects_raw_columns() {
        let mut e = QLieElement::zero(2, 2, 3);
        // w^(1,0) D_1 pairs to 1 with its own monomial.
        let f = QSeries::term(2, 2, 3, mi(&[1, 0]), lv(&[0, 0]), rat(1, 1));
        e.add_into(&lv(&[1, 0]), 0, &f);
        assert!(!e.is_tangent());
    }

    #[test]
    fn apply_scales_by_the_pairing() {
        // f D_n on w^m' multiplies by <m', n>.
        let f = QSeries::term(2, 2, 3, mi(&[1, 0]), lv(&[-1, 0]), rat(2, 1));
        let xi = LieElement::from_derivation(&f, &dv(&[0, 1]));
        let target = QSeries::monomial(2, 3, lv(&[1, 2]));
        let image = xi.apply(&target);
        let expect = QSeries::term(2, 2, 3, mi(&[1, 0]), lv(&[0, 2]), rat(4, 1));
        assert_eq!(image, expect);
        // Pairing zero: the monomial is fixed.
        assert!(xi.apply(&QSeries::monomial(2, 3, lv(&[1, 0]))).is_zero());
    }

    #[test]
    fn apply_is_a_derivation() {
        let xi = gen(5, 2, &[1, 0], &[-1, 0], &[0, 1]);
        let f = QSeries::one(2, 2, 5).add(&QSeries::term(2, 2, 5, mi(&[1, 0]), lv(&[-1, 0]), rat(1, 1)));
        let g = QSeries::monomial(2, 5, lv(&[0, 1]))
            .add(&QSeries::term(2, 2, 5, mi(&[0, 1]), lv(&[0, -1]), rat(3, 1)));
        let lhs = xi.apply(&f.mul(&g));
        let rhs = xi.apply(&f).mul(&g).add(&f.mul(&xi.apply(&g)));
        assert_eq!(lhs, rhs);
    }

    // Independent oracle for exp_apply: tangency makes the exponential act by
    // substitution, w^m' -> w^m' * exp(<m',n> f).
    #[test]
    fn exp_apply_matches_closed_form() {
        let n = 5;
        let f = QSeries::term(2, 2, n, mi(&[1, 0]), lv(&[-1, 0]), rat(2, 1));
        let xi = LieElement::from_derivation(&f, &dv(&[0, 1]));
        for mp in [lv(&[0, 1]), lv(&[0, 2]), lv(&[1, 1]), lv(&[2, -3])] {
            let pair = pairing(&mp, &dv(&[0, 1]));
            let expect =
                QSeries::monomial(2, n, mp.clone()).mul(&f.scale(&rat(pair, 1)).exp_positive());
            assert_eq!(xi.exp_apply(&QSeries::monomial(2, n, mp)), expect);
        }
    }

    #[test]
    fn exp_apply_is_an_automorphism() {
        let xi = gen(4, 2, &[1, 0], &[-1, 0], &[0, 1]).add(&gen(4, 1, &[0, 1], &[0, -1], &[1, 0]));
        let f = QSeries::monomial(2, 4, lv(&[1, 0])).add(&QSeries::one(2, 2, 4));
        let g = QSeries::monomial(2, 4, lv(&[0, 1]))
            .add(&QSeries::term(2, 2, 4, mi(&[1, 1]), lv(&[-1, -1]), rat(1, 2)));
        assert_eq!(xi.exp_apply(&f.mul(&g)), xi.exp_apply(&f).mul(&xi.exp_apply(&g)));
    }

    #[test]
    fn word_coefficients_match_hand_values() {
        assert_eq!(dynkin_coefficient(&[0, 1]), Ratio::new(1, 4));
        assert_eq!(dynkin_coefficient(&[1, 0]), Ratio::new(-1, 4));
        assert_eq!(dynkin_coefficient(&[0, 0, 1]), Ratio::new(1, 36));
        assert_eq!(dynkin_coefficient(&[0, 1, 0]), Ratio::new(-1, 18));
        assert_eq!(dynkin_coefficient(&[0]), Ratio::from_integer(1));
    }

    // Independent oracle for bch: the closed formula through order 4.
    #[test]
    fn bch_matches_closed_formula_through_order_four() {
        let x = gen(4, 2, &[1, 0], &[-1, 0], &[0, 1]).add(&gen(4, 1, &[1, 0], &[1, 0], &[0, 1]));
        let y = gen(4, 2, &[0, 1], &[0, -1], &[1, 0]).add(&gen(4, -3, &[0, 1], &[0, 1], &[1, 0]));
        let xy = x.bracket(&y);
        let xxy = x.bracket(&xy);
        let yyx = y.bracket(&xy.neg());
        let yxxy = y.bracket(&xxy);
        let mut expect = x.add(&y);
        expect.add_assign(&xy.scale(&rat(1, 2)));
        expect.add_assign(&xxy.scale(&rat(1, 12)));
        expect.add_assign(&yyx.scale(&rat(1, 12)));
        expect.add_assign(&yxxy.scale(&rat(-1, 24)));
        assert_eq!(bch(&x, &y), expect);
    }

    // Cross-check bch against the group it linearizes: exp(bch(x,y)) must act
    // exactly as exp(x) after exp(y).
    #[test]
    fn bch_matches_action_composition() {
        let x = gen(4, 2, &[1, 0], &[-1, 0], &[0, 1]);
        let y = gen(4, 2, &[0, 1], &[0, -1], &[1, 0]);
        let z = bch(&x, &y);
        for m in [lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 2])] {
            let s = QSeries::monomial(2, 4, m);
            assert_eq!(z.exp_apply(&s), x.exp_apply(&y.exp_apply(&s)));
        }
    }

    #[test]
    fn log_product_of_inverse_pair_vanishes() {
        let x = gen(4, 2, &[1, 0], &[-1, 0], &[0, 1]).add(&gen(4, 1, &[1, 1], &[-1, -1], &[-1, 1]));
        assert_eq!(log_product(&[x.clone()]), x);
        assert!(log_product(&[x.clone(), x.neg()]).is_zero());
    }

    #[test]
    fn factoring_recovers_the_derivation_form() {
        let n = 6;
        let u = QSeries::term(2, 2, n, mi(&[1, 1]), lv(&[-1, -1]), rat(1, 1));
        let f = u
            .scale(&rat(4, 1))
            .add(&u.mul(&u).scale(&rat(2, 1)))
            .add(&u.mul(&u).mul(&u).scale(&rat(4, 3)));
        let e = LieElement::from_derivation(&f, &dv(&[-1, 1]));
        let parts = e.factored_terms().expect("rank-2 tangent element factors");
        assert_eq!(parts.len(), 3);
        let mut rebuilt = QLieElement::zero(2, 2, n);
        for (m, n0, g) in &parts {
            assert_eq!(n0, &dv(&[1, -1]), "lex-positive normal");
            let shifted = g.mul_term(&mi(&[0, 0]), m, &rat(1, 1));
            rebuilt.add_assign(&LieElement::from_derivation(&shifted, n0));
        }
        assert_eq!(rebuilt, e);
    }

    #[test]
    fn order_part_extracts_homogeneous_layers() {
        let x = gen(4, 2, &[1, 0], &[-1, 0], &[0, 1]);
        let y = gen(4, 2, &[0, 1], &[0, -1], &[1, 0]);
        let z = bch(&x, &y);
        assert_eq!(z.order_part(1), x.add(&y));
        assert_eq!(z.order_part(2), x.bracket(&y).scale(&rat(1, 2)));
        let resum = z.order_part(1).add(&z.order_part(2)).add(&z.order_part(3)).add(&z.order_part(4));
        assert_eq!(resum, z);
    }

    #[test]
    fn display_factors_rank_two_elements() {
        let e = gen(3, 4, &[1, 1], &[-1, -1], &[-1, 1]);
        assert_eq!(format!("{}", e), "(-4*t1*t2*w^(-1,-1))*d(1,-1)");
    }
}
