//! Dense polynomials over `O_K`, exact modulo `π^N`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{same_field, Coords, Field, OkElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Coords>,
}

impl Polynomial {
    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<Coords>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero_raw(c)) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub(crate) fn raw(&self) -> &[Coords] {
        &self.coeffs
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::from_raw(field, vec![field.one_raw()])
    }

    pub fn x_pow(field: &Field, k: usize) -> Self {
        let mut c = vec![field.zero_raw(); k + 1];
        c[k] = field.one_raw();
        Self::from_raw(field, c)
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&a| field.int_raw(a)).collect())
    }

    pub fn from_elements(field: &Field, coeffs: &[OkElement]) -> Result<Self> {
        if coeffs.iter().any(|c| !same_field(c.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_raw(field, coeffs.iter().map(|c| c.raw().clone()).collect()))
    }

    /// `∏ (X - z_i)`.
    pub fn from_roots(field: &Field, roots: &[OkElement]) -> Self {
        let mut acc = Self::one(field);
        for z in roots {
            let lin = Self::from_raw(field, vec![field.neg_raw(z.raw()), field.one_raw()]);
            acc = acc.mul(&lin);
        }
        acc
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> OkElement {
        match self.coeffs.get(i) {
            Some(c) => OkElement::from_raw(&self.field, c.clone()),
            None => OkElement::zero(&self.field),
        }
    }

    pub fn coefficients(&self) -> Vec<OkElement> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub(crate) fn raw_coeff(&self, i: usize) -> Coords {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero_raw())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one_raw())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add_raw(&self.raw_coeff(i), &other.raw_coeff(i))).collect();
        Self::from_raw(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.sub_raw(&self.raw_coeff(i), &other.raw_coeff(i))).collect();
        Self::from_raw(f, c)
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().map(|c| self.field.neg_raw(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let c = (0..n)
            .map(|k| {
                let lo = k.saturating_sub(other.coeffs.len() - 1);
                let hi = k.min(self.coeffs.len() - 1);
                f.dot_raw((lo..=hi).map(|i| (&self.coeffs[i], &other.coeffs[k - i])))
            })
            .collect();
        Self::from_raw(f, c)
    }

    pub fn scale(&self, a: &OkElement) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().map(|c| self.field.mul_raw(c, a.raw())).collect())
    }

    /// Drops every coefficient of degree `> max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// Division with remainder by a monic polynomial.
    pub fn divrem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::Precondition("divisor must be monic".into()));
        }
        let f = &self.field;
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![f.zero_raw(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], f.zero_raw());
            if f.is_zero_raw(&c) {
                continue;
            }
            for (i, dc) in divisor.coeffs[..d].iter().enumerate() {
                let prod = f.mul_raw(&c, dc);
                f.sub_assign_raw(&mut rem[k - d + i], &prod);
            }
            quo[k - d] = c;
        }
        rem.truncate(d);
        Ok((Self::from_raw(f, quo), Self::from_raw(f, rem)))
    }

    pub fn eval(&self, x: &OkElement) -> OkElement {
        let f = &self.field;
        let mut acc = f.zero_raw();
        for c in self.coeffs.iter().rev() {
            acc = f.add_raw(&f.mul_raw(&acc, x.raw()), c);
        }
        OkElement::from_raw(f, acc)
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::from_raw(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.scale_int_raw(c, i as u64)).collect(),
        )
    }

    /// Coefficient-wise residues in `F_p`.
    pub fn residues(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| self.field.residue_raw(c)).collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coefficients())
    }
}
