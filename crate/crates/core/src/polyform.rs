//! A small, exactly computable differential graded Lie algebra: strictly
//! upper-triangular 3x3 matrices tensored with polynomial differential forms
//! in two variables, filtered by powers of a formal parameter s.
//!
//! The matrix factor is nilpotent of step two ([E12, E23] = E13 is the only
//! nonzero basic bracket), so all triple brackets vanish and Maurer-Cartan
//! solutions close after one correction.  The homotopy is the radial
//! (contract-to-origin) operator; on a monomial coefficient of x-degree n it
//! divides by n + p for a p-form, which makes dH + Hd = I - iP an exact
//! identity of rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MatBasis {
    E12,
    E13,
    E23,
}

impl MatBasis {
    /// Matrix product; strictly upper-triangular 3x3 admits only E12*E23.
    fn times(self, other: MatBasis) -> Option<MatBasis> {
        match (self, other) {
            (MatBasis::E12, MatBasis::E23) => Some(MatBasis::E13),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MatBasis::E12 => "E12",
            MatBasis::E13 => "E13",
            MatBasis::E23 => "E23",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormPart {
    One,
    Dx1,
    Dx2,
    Dx12,
}

impl FormPart {
    pub fn degree(self) -> u32 {
        match self {
            FormPart::One => 0,
            FormPart::Dx1 | FormPart::Dx2 => 1,
            FormPart::Dx12 => 2,
        }
    }

    /// Wedge product with orientation sign, None when it vanishes.
    fn wedge(self, other: FormPart) -> Option<(FormPart, i8)> {
        use FormPart::*;
        match (self, other) {
            (One, f) | (f, One) => Some((f, 1)),
            (Dx1, Dx2) => Some((Dx12, 1)),
            (Dx2, Dx1) => Some((Dx12, -1)),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormPart::One => "1",
            FormPart::Dx1 => "dx1",
            FormPart::Dx2 => "dx2",
            FormPart::Dx12 => "dx1^dx2",
        }
    }
}

/// One basis term: E * s^s_pow * x1^px * x2^py * form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormKey {
    pub s_pow: u32,
    pub basis: MatBasis,
    pub form: FormPart,
    pub px: u32,
    pub py: u32,
}

/// Matrix-valued polynomial form; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyForm<S> {
    terms: BTreeMap<FormKey, S>,
}

impl<S: Scalar> PolyForm<S> {
    pub fn zero() -> Self {
        PolyForm { terms: BTreeMap::new() }
    }

    pub fn term(key: FormKey, coeff: S) -> Self {
        let mut out = Self::zero();
        out.insert(key, coeff);
        out
    }

    fn insert(&mut self, key: FormKey, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = c.clone() + coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormKey, &S)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-S::one()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Terms of s-power at most `n`.
    pub fn truncate_s(&self, n: u32) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            if k.s_pow <= n {
                out.insert(k.clone(), v.clone());
            }
        }
        out
    }

    pub fn min_s_order(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.s_pow).min()
    }

    /// Terms of the given form degree.
    pub fn degree_part(&self, deg: u32) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            if k.form.degree() == deg {
                out.insert(k.clone(), v.clone());
            }
        }
        out
    }

    /// Exterior derivative; matrix and s factors ride along.
    pub fn d(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            // Partial derivatives of x1^px x2^py.
            let dx = (k.px, |key: &mut FormKey| key.px -= 1);
            let dy = (k.py, |key: &mut FormKey| key.py -= 1);
            match k.form {
                FormPart::One => {
                    if dx.0 > 0 {
                        let mut key = k.clone();
                        (dx.1)(&mut key);
                        key.form = FormPart::Dx1;
                        out.insert(key, c.clone() * S::from_int(dx.0 as i64));
                    }
                    if dy.0 > 0 {
                        let mut key = k.clone();
                        (dy.1)(&mut key);
                        key.form = FormPart::Dx2;
                        out.insert(key, c.clone() * S::from_int(dy.0 as i64));
                    }
                }
                FormPart::Dx1 => {
                    // d(f dx1) = f_y dx2 ^ dx1 = -f_y dx1 ^ dx2.
                    if dy.0 > 0 {
                        let mut key = k.clone();
                        (dy.1)(&mut key);
                        key.form = FormPart::Dx12;
                        out.insert(key, c.clone() * S::from_int(-(dy.0 as i64)));
                    }
                }
                FormPart::Dx2 => {
                    if dx.0 > 0 {
                        let mut key = k.clone();
                        (dx.1)(&mut key);
                        key.form = FormPart::Dx12;
                        out.insert(key, c.clone() * S::from_int(dx.0 as i64));
                    }
                }
                FormPart::Dx12 => {}
            }
        }
        out
    }

    /// Radial homotopy: on a p-form term with coefficient of x-degree n,
    /// contract with the Euler field and divide by n + p.  Degree -1; kills
    /// 0-forms; inverts d away from constants.
    pub fn homotopy(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let n = (k.px + k.py) as i64;
            match k.form {
                FormPart::One => {}
                FormPart::Dx1 => {
                    let mut key = k.clone();
                    key.form = FormPart::One;
                    key.px += 1;
                    out.insert(key, c.clone() * S::from_ratio(1, n + 1));
                }
                FormPart::Dx2 => {
                    let mut key = k.clone();
                    key.form = FormPart::One;
                    key.py += 1;
                    out.insert(key, c.clone() * S::from_ratio(1, n + 1));
                }
                FormPart::Dx12 => {
                    // i_E(dx1^dx2) = x1 dx2 - x2 dx1.
                    let mut key = k.clone();
                    key.form = FormPart::Dx2;
                    key.px += 1;
                    out.insert(key, c.clone() * S::from_ratio(1, n + 2));
                    let mut key = k.clone();
                    key.form = FormPart::Dx1;
                    key.py += 1;
                    out.insert(key, c.clone() * S::from_ratio(-1, n + 2));
                }
            }
        }
        out
    }

    /// iota P: the constant part of the 0-form component, extended back as a
    /// constant form.
    pub fn constant_part(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if k.form == FormPart::One && k.px == 0 && k.py == 0 {
                out.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Graded bracket: matrix commutator extended by wedge,
    /// [A a, B b] = (AB - BA) a^b.  The Koszul sign of the graded
    /// antisymmetry is carried entirely by the wedge orientation.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let Some((form, wsign)) = ka.form.wedge(kb.form) else {
                    continue;
                };
                let coeff = ca.clone() * cb.clone() * S::from_int(i64::from(wsign));
                let key = |basis| FormKey {
                    s_pow: ka.s_pow + kb.s_pow,
                    basis,
                    form,
                    px: ka.px + kb.px,
                    py: ka.py + kb.py,
                };
                if let Some(prod) = ka.basis.times(kb.basis) {
                    out.insert(key(prod), coeff.clone());
                }
                if let Some(prod) = kb.basis.times(ka.basis) {
                    out.insert(key(prod), -coeff.clone());
                }
            }
        }
        out
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for PolyForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*{}*s^{}", c, k.basis.name(), k.s_pow)?;
            if k.px > 0 {
                write!(f, "*x1^{}", k.px)?;
            }
            if k.py > 0 {
                write!(f, "*x2^{}", k.py)?;
            }
            if k.form != FormPart::One {
                write!(f, "*{}", k.form.name())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rat};

    fn key(basis: MatBasis, form: FormPart, s_pow: u32, px: u32, py: u32) -> FormKey {
        FormKey { s_pow, basis, form, px, py }
    }

    fn t(basis: MatBasis, form: FormPart, s_pow: u32, px: u32, py: u32, num: i64, den: i64) -> PolyForm<Rat> {
        PolyForm::term(key(basis, form, s_pow, px, py), rat(num, den))
    }

    #[test]
    fn d_squares_to_zero() {
        // x1^3 x2^2 in every form slot.
        for form in [FormPart::One, FormPart::Dx1, FormPart::Dx2, FormPart::Dx12] {
            let a = t(MatBasis::E12, form, 1, 3, 2, 7, 3);
            assert!(a.d().d().is_zero());
        }
    }

    #[test]
    fn derivative_of_a_monomial_is_the_gradient() {
        let a = t(MatBasis::E23, FormPart::One, 2, 2, 1, 1, 1);
        let expected = t(MatBasis::E23, FormPart::Dx1, 2, 1, 1, 2, 1)
            .add(&t(MatBasis::E23, FormPart::Dx2, 2, 2, 0, 1, 1));
        assert_eq!(a.d(), expected);
    }

    #[test]
    fn homotopy_identity_holds_exactly() {
        // dH + Hd = I - iP on a spread of monomial terms.
        let mut samples = Vec::new();
        for form in [FormPart::One, FormPart::Dx1, FormPart::Dx2, FormPart::Dx12] {
            for px in 0..4 {
                for py in 0..4 {
                    samples.push(t(MatBasis::E12, form, 1, px, py, 5, 2));
                }
            }
        }
        // And a random-ish mixed element.
        let mixed = samples[3].add(&samples[7]).add(&samples[12].scale(&rat(-2, 3)));
        samples.push(mixed);
        for a in samples {
            let lhs = a.d().homotopy().add(&a.homotopy().d());
            let rhs = a.sub(&a.constant_part());
            assert_eq!(lhs, rhs, "failed on {}", a);
        }
    }

    #[test]
    fn homotopy_of_the_volume_form_is_the_angular_potential() {
        // H(dx1^dx2) = (x1 dx2 - x2 dx1) / 2.
        let vol = t(MatBasis::E13, FormPart::Dx12, 2, 0, 0, 1, 1);
        let expected = t(MatBasis::E13, FormPart::Dx2, 2, 1, 0, 1, 2)
            .add(&t(MatBasis::E13, FormPart::Dx1, 2, 0, 1, -1, 2));
        assert_eq!(vol.homotopy(), expected);
    }

    #[test]
    fn bracket_realizes_the_step_two_nilpotent_algebra() {
        let a = t(MatBasis::E12, FormPart::One, 1, 0, 0, 1, 1);
        let b = t(MatBasis::E23, FormPart::One, 1, 0, 0, 1, 1);
        let c = t(MatBasis::E13, FormPart::One, 2, 0, 0, 1, 1);
        assert_eq!(a.bracket(&b), c);
        assert_eq!(b.bracket(&a), c.neg());
        assert!(a.bracket(&c).is_zero());
        assert!(b.bracket(&c).is_zero());
        assert!(a.bracket(&a).is_zero());
    }

    #[test]
    fn bracket_of_one_forms_is_symmetric_and_wedges() {
        // [E12 dx1, E23 dx2] = E13 dx1^dx2 and the graded flip agrees:
        // [E23 dx2, E12 dx1] = +E13 dx1^dx2 as well (odd-odd symmetry).
        let a = t(MatBasis::E12, FormPart::Dx1, 1, 0, 0, 1, 1);
        let b = t(MatBasis::E23, FormPart::Dx2, 1, 0, 0, 1, 1);
        let c = t(MatBasis::E13, FormPart::Dx12, 2, 0, 0, 1, 1);
        assert_eq!(a.bracket(&b), c);
        assert_eq!(b.bracket(&a), c);
    }

    #[test]
    fn self_bracket_of_the_standard_instance() {
        // Pi = E12 s dx1 + E23 s dx2; [Pi, Pi] = 2 E13 s^2 dx1^dx2.
        let pi = t(MatBasis::E12, FormPart::Dx1, 1, 0, 0, 1, 1)
            .add(&t(MatBasis::E23, FormPart::Dx2, 1, 0, 0, 1, 1));
        let expected = t(MatBasis::E13, FormPart::Dx12, 2, 0, 0, 2, 1);
        assert_eq!(pi.bracket(&pi), expected);
    }

    #[test]
    fn grading_and_truncation_selectors() {
        let a = t(MatBasis::E12, FormPart::Dx1, 1, 1, 0, 1, 1)
            .add(&t(MatBasis::E13, FormPart::Dx12, 3, 0, 0, 1, 1));
        assert_eq!(a.degree_part(1), t(MatBasis::E12, FormPart::Dx1, 1, 1, 0, 1, 1));
        assert_eq!(a.truncate_s(2), t(MatBasis::E12, FormPart::Dx1, 1, 1, 0, 1, 1));
        assert_eq!(a.min_s_order(), Some(1));
        assert!(PolyForm::<Rat>::zero().min_s_order().is_none());
    }

    #[test]
    fn display_is_readable() {
        let a = t(MatBasis::E12, FormPart::Dx1, 1, 0, 2, -3, 2);
        assert_eq!(a.to_string(), "-3/2*E12*s^1*x2^2*dx1");
    }
}
