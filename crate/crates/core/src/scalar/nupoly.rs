use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Cyclotomic, Rational, ScalarError};

/// Polynomial in the coupling constants `ν_1, ..., ν_k` (one per conjugacy
/// class of reflections) with cyclotomic coefficients.
///
/// Exponent vectors are stored with trailing zeros trimmed, so constants have
/// the empty key. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct NuPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Cyclotomic>,
}

fn trim_key(mut k: Vec<u32>) -> Vec<u32> {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

impl NuPoly {
    pub fn zero(nvars: usize) -> Self {
        NuPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Cyclotomic, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Cyclotomic::from_int(1), nvars)
    }

    pub fn from_rational(q: Rational, nvars: usize) -> Self {
        Self::constant(Cyclotomic::from_rational(q), nvars)
    }

    /// The indeterminate `ν_i` (0-based).
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut key = vec![0; i + 1];
        key[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(key, Cyclotomic::from_int(1));
        p
    }

    /// `c · ν_i`.
    pub fn var_times(i: usize, c: Cyclotomic, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            let mut key = vec![0; i + 1];
            key[i] = 1;
            p.terms.insert(key, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Cyclotomic)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant coefficient (value at `ν = 0`).
    pub fn constant_term(&self) -> Cyclotomic {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| Cyclotomic::from_int(0))
    }

    /// `Some(c)` if the polynomial has no ν-dependence.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::from_int(0)),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, key: Vec<u32>, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let key = trim_key(key);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &NuPoly) {
        self.nvars = self.nvars.max(other.nvars);
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &NuPoly, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(other.nvars);
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> NuPoly {
        let mut out = NuPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> NuPoly {
        self.scale(&Cyclotomic::from_rational(q.clone()))
    }

    fn check_vars(&self, other: &NuPoly) -> Result<(), ScalarError> {
        if self.nvars != other.nvars {
            return Err(ScalarError::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NuPoly) -> Result<NuPoly, ScalarError> {
        self.check_vars(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &NuPoly) -> Result<NuPoly, ScalarError> {
        self.check_vars(other)?;
        Ok(self * other)
    }

    /// Ring homomorphism `ν_i ↦ point[i]`.
    pub fn evaluate(&self, point: &[Cyclotomic]) -> Result<Cyclotomic, ScalarError> {
        if point.len() < self.nvars {
            return Err(ScalarError::VariableMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Cyclotomic::from_int(0);
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn evaluate_rational(&self, point: &[Rational]) -> Result<Cyclotomic, ScalarError> {
        let p: Vec<Cyclotomic> = point.iter().cloned().map(Cyclotomic::from_rational).collect();
        self.evaluate(&p)
    }

    /// Substitutes `ν_i ↦ point[i]` as a constant polynomial.
    pub fn specialize(&self, point: &[Cyclotomic]) -> Result<NuPoly, ScalarError> {
        Ok(NuPoly::constant(self.evaluate(point)?, self.nvars))
    }
}

impl fmt::Debug for NuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NuPoly {
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
            let mono: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = if self.nvars <= 1 { "nu".to_string() } else { format!("nu_{}", i + 1) };
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a NuPoly> for &'a NuPoly {
    type Output = NuPoly;
    fn add(self, rhs: &NuPoly) -> NuPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a NuPoly> for &'a NuPoly {
    type Output = NuPoly;
    fn sub(self, rhs: &NuPoly) -> NuPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Cyclotomic::from_int(-1));
        out
    }
}

impl<'a> Mul<&'a NuPoly> for &'a NuPoly {
    type Output = NuPoly;
    fn mul(self, rhs: &NuPoly) -> NuPoly {
        let mut out = NuPoly::zero(self.nvars.max(rhs.nvars));
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let len = ka.len().max(kb.len());
                let key: Vec<u32> = (0..len)
                    .map(|i| ka.get(i).copied().unwrap_or(0) + kb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(key, va * vb);
            }
        }
        out
    }
}

impl Neg for &NuPoly {
    type Output = NuPoly;
    fn neg(self) -> NuPoly {
        self.scale(&Cyclotomic::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    #[test]
    fn difference_of_squares() {
        let nu = NuPoly::var(0, 1);
        let one = NuPoly::one(1);
        let two_nu = nu.scale_rational(&int(2));
        let p = &(&one + &two_nu) * &(&one - &two_nu);
        let expected = &one - &(&nu * &nu).scale_rational(&int(4));
        assert_eq!(p, expected);
        assert!(p.evaluate_rational(&[rat(1, 2)]).unwrap().is_zero());
    }

    #[test]
    fn augmentation_ideal() {
        let nu = NuPoly::var(0, 2);
        let mu = NuPoly::var(1, 2);
        let a = &nu + &mu.scale_rational(&int(3));
        let b = &(&nu * &mu) - &nu;
        let prod = &(&a * &b) * &a;
        assert!(prod.evaluate_rational(&[int(0), int(0)]).unwrap().is_zero());
        assert!(!prod.is_zero());
    }

    #[test]
    fn mismatch_is_reported() {
        let a = NuPoly::var(0, 1);
        let b = NuPoly::var(0, 2);
        assert!(matches!(a.try_add(&b), Err(ScalarError::VariableMismatch { left: 1, right: 2 })));
        assert!(a.evaluate_rational(&[]).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let nu = NuPoly::var(0, 1);
        assert!((&nu - &nu).is_zero());
        assert_eq!((&nu - &nu).len(), 0);
    }
}
