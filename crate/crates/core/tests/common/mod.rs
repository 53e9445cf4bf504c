//! Shared builders for the integration suites: standard seed diagrams and
//! seeded random generators for algebra elements.

#![allow(dead_code)]

use rand::Rng;

use tropex_core::lie::{perp_lex_positive, LieElement};
use tropex_core::polyform::{FormKey, FormPart, MatBasis, PolyForm};
use tropex_core::scattering::{Diagram, Support, Wall};
use tropex_core::series::{DualVector, LatticeVector, MultiIndex, Series};
use tropex_core::{rat, QDiagram, QLieElement, QSeries, Rat};

pub fn lv(p: i64, q: i64) -> LatticeVector {
    LatticeVector(vec![p, q])
}

pub fn dv(p: i64, q: i64) -> DualVector {
    DualVector(vec![p, q])
}

fn alt(k: u32) -> i64 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Standard two-line seed on the coordinate axes; wall i's log is
/// sum_k coeff(i, k) t_i^k w^{-k e_i} (x) d_{n_i}.
pub fn seed_diagram(max_order: u32, mut coeff: impl FnMut(usize, u32) -> Rat) -> QDiagram {
    let params = 2;
    let modes = [lv(1, 0), lv(0, 1)];
    let nus = [dv(0, 1), dv(1, 0)];
    let mut walls = Vec::new();
    for i in 0..2 {
        let mut f = Series::zero(params, 2, max_order);
        for k in 1..=max_order {
            let mut j = vec![0u32; params];
            j[i] = k;
            f.add_assign(&Series::term(
                params,
                2,
                max_order,
                MultiIndex(j),
                modes[i].scale(-(k as i64)),
                coeff(i, k),
            ));
        }
        walls.push(Wall {
            mode: modes[i].clone(),
            support: Support::line(modes[i].clone()),
            coorientation: nus[i].clone(),
            log_factor: LieElement::from_derivation(&f, &nus[i]),
        });
    }
    Diagram::new(params, max_order, walls).unwrap()
}

/// Seed with factors 2 log(1 + t_i w^{-e_i}).
pub fn two_log_seed(max_order: u32) -> QDiagram {
    seed_diagram(max_order, |_, k| rat(2 * alt(k), k as i64))
}

/// Seed with factors log(1 + t_i w^{-e_i}).
pub fn pentagon_seed(max_order: u32) -> QDiagram {
    seed_diagram(max_order, |_, k| rat(alt(k), k as i64))
}

pub fn random_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_multi_index(rng: &mut impl Rng, params: usize, total: u32) -> MultiIndex {
    let mut j = vec![0u32; params];
    for _ in 0..total {
        j[rng.gen_range(0..params)] += 1;
    }
    MultiIndex(j)
}

/// Random tangent element in the parameter ideal: a few monomial directions,
/// each carrying a short random series along its canonical perpendicular.
pub fn random_lie(rng: &mut impl Rng, params: usize, max_order: u32) -> QLieElement {
    let mut out = LieElement::zero(params, 2, max_order);
    for _ in 0..rng.gen_range(1..=3usize) {
        let m = loop {
            let c = lv(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            if !c.is_zero() {
                break c;
            }
        };
        let n = perp_lex_positive(&m);
        let mut f = Series::zero(params, 2, max_order);
        for _ in 0..rng.gen_range(1..=2usize) {
            let total = rng.gen_range(1..=max_order);
            let j = random_multi_index(rng, params, total);
            let scale = rng.gen_range(1..=2i64);
            f.add_assign(&Series::term(
                params,
                2,
                max_order,
                j,
                m.scale(scale),
                random_rat(rng),
            ));
        }
        out = out.add(&LieElement::from_derivation(&f, &n));
    }
    out
}

/// Random series with mixed parameter degrees and lattice monomials.
pub fn random_series(rng: &mut impl Rng, params: usize, max_order: u32) -> QSeries {
    let mut f = Series::zero(params, 2, max_order);
    for _ in 0..rng.gen_range(1..=4usize) {
        let total = rng.gen_range(0..=max_order);
        let j = random_multi_index(rng, params, total);
        let m = lv(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        f.add_assign(&Series::term(params, 2, max_order, j, m, random_rat(rng)));
    }
    f
}

const BASES: [MatBasis; 3] = [MatBasis::E12, MatBasis::E13, MatBasis::E23];

/// Random matrix-valued polynomial form with the given form parts, positive
/// s-order, and polynomial degree at most 6.
pub fn random_polyform(rng: &mut impl Rng, forms: &[FormPart]) -> PolyForm<Rat> {
    let mut out = PolyForm::zero();
    for _ in 0..rng.gen_range(1..=5usize) {
        let key = FormKey {
            s_pow: rng.gen_range(1..=3),
            basis: BASES[rng.gen_range(0..3)],
            form: forms[rng.gen_range(0..forms.len())],
            px: rng.gen_range(0..=3),
            py: rng.gen_range(0..=3),
        };
        out = out.add(&PolyForm::term(key, random_rat(rng)));
    }
    out
}

pub const ALL_FORMS: [FormPart; 4] =
    [FormPart::One, FormPart::Dx1, FormPart::Dx2, FormPart::Dx12];

pub const ONE_FORMS: [FormPart; 2] = [FormPart::Dx1, FormPart::Dx2];
