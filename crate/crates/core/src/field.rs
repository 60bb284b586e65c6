//! Finite-precision arithmetic in the ring of integers `O_K` of a totally
//! ramified extension `K/Q_p`.
//!
//! `O_K = Z_p[π]/(E(π))` for a monic Eisenstein polynomial `E` of degree `e`.
//! An element is stored by its `e` Z_p-coordinates `a_0 + a_1 π + … + a_{e-1} π^{e-1}`.
//! Internally all products are taken modulo `p^B` with `B = ceil(N/e) + 1`, and
//! every result is then brought to the canonical representative of its class
//! modulo `π^N`: coordinate `a_i` is reduced modulo `p^{ceil((N-i)/e)}`. Because
//! `π^N O_K` is exactly the lattice cut out by those per-coordinate moduli,
//! two elements are congruent mod `π^N` iff their coordinates are equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

pub(crate) type Coords = SmallVec<[u64; 2]>;

/// Shared handle to a field description. Cheap to clone.
pub type Field = Arc<FieldSpec>;

/// Description of `O_K` together with the working π-adic precision `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    eisenstein: Vec<i64>,
    precision: u32,
    e: usize,
    coeff_precision: u32,
    modulus: u64,
    coord_moduli: Vec<u64>,
    /// Coordinates of `π^e = -(c_0 + … + c_{e-1} π^{e-1})` modulo `p^B`.
    pi_e: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    /// Builds `O_K = Z_p[x]/(E)` with working precision `precision` (the `N` of
    /// the crate docs). `eisenstein` lists `c_0, …, c_e` with `c_e = 1`.
    pub fn new(p: u64, eisenstein: Vec<i64>, precision: u32) -> Result<Field> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        if eisenstein.len() < 2 {
            return Err(Error::InvalidField("Eisenstein polynomial must have degree >= 1".into()));
        }
        if *eisenstein.last().unwrap() != 1 {
            return Err(Error::InvalidField("Eisenstein polynomial must be monic".into()));
        }
        let e = eisenstein.len() - 1;
        let pi = p as i64;
        for (i, c) in eisenstein[..e].iter().enumerate() {
            if c.rem_euclid(pi) != 0 {
                return Err(Error::InvalidField(format!("c_{i} = {c} is not divisible by {p}")));
            }
        }
        if eisenstein[0].rem_euclid(pi * pi) == 0 {
            return Err(Error::InvalidField(format!("c_0 = {} is divisible by p^2", eisenstein[0])));
        }
        if precision == 0 {
            return Err(Error::InvalidField("precision must be >= 1".into()));
        }
        let coeff_precision = precision.div_ceil(e as u32) + 1;
        let modulus = p
            .checked_pow(coeff_precision)
            .ok_or(Error::PrecisionTooLarge { p, precision, e: e as u32 })?;
        let coord_moduli = (0..e as u32)
            .map(|i| p.pow((precision.saturating_sub(i)).div_ceil(e as u32)))
            .collect();
        let pi_e = eisenstein[..e]
            .iter()
            .map(|&c| {
                let r = (c as i128).rem_euclid(modulus as i128) as u64;
                (modulus - r) % modulus
            })
            .collect();
        Ok(Arc::new(FieldSpec {
            p,
            eisenstein,
            precision,
            e,
            coeff_precision,
            modulus,
            coord_moduli,
            pi_e,
        }))
    }

    /// The unramified case `O_K = Z_p`, `π = p`.
    pub fn zp(p: u64, precision: u32) -> Result<Field> {
        Self::new(p, vec![-(p as i64), 1], precision)
    }

    /// Same ring at a different working precision.
    pub fn with_precision(&self, precision: u32) -> Result<Field> {
        Self::new(self.p, self.eisenstein.clone(), precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ramification(&self) -> usize {
        self.e
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn eisenstein(&self) -> &[i64] {
        &self.eisenstein
    }

    /// `B`, the p-adic precision of each coordinate.
    pub fn coeff_precision(&self) -> u32 {
        self.coeff_precision
    }

    // ---- raw coordinate arithmetic -------------------------------------------------

    pub(crate) fn zero_raw(&self) -> Coords {
        smallvec![0; self.e]
    }

    pub(crate) fn one_raw(&self) -> Coords {
        let mut c = self.zero_raw();
        c[0] = 1 % self.coord_moduli[0];
        c
    }

    pub(crate) fn int_raw(&self, a: i64) -> Coords {
        let mut c = self.zero_raw();
        c[0] = (a as i128).rem_euclid(self.coord_moduli[0] as i128) as u64;
        c
    }

    pub(crate) fn bigint_raw(&self, a: &BigInt) -> Coords {
        let mut c = self.zero_raw();
        let m = BigInt::from(self.coord_moduli[0]);
        c[0] = a.mod_floor(&m).to_u64().expect("reduced below a u64 modulus");
        c
    }

    pub(crate) fn canonicalize(&self, c: &mut Coords) {
        for (a, &m) in c.iter_mut().zip(&self.coord_moduli) {
            *a %= m;
        }
    }

    pub(crate) fn is_zero_raw(&self, a: &Coords) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub(crate) fn add_raw(&self, a: &Coords, b: &Coords) -> Coords {
        a.iter()
            .zip(b.iter())
            .zip(&self.coord_moduli)
            .map(|((&x, &y), &m)| add_mod(x, y, m))
            .collect()
    }

    pub(crate) fn add_assign_raw(&self, a: &mut Coords, b: &Coords) {
        for ((x, &y), &m) in a.iter_mut().zip(b.iter()).zip(&self.coord_moduli) {
            *x = add_mod(*x, y, m);
        }
    }

    pub(crate) fn sub_raw(&self, a: &Coords, b: &Coords) -> Coords {
        a.iter()
            .zip(b.iter())
            .zip(&self.coord_moduli)
            .map(|((&x, &y), &m)| sub_mod(x, y, m))
            .collect()
    }

    pub(crate) fn sub_assign_raw(&self, a: &mut Coords, b: &Coords) {
        for ((x, &y), &m) in a.iter_mut().zip(b.iter()).zip(&self.coord_moduli) {
            *x = sub_mod(*x, y, m);
        }
    }

    pub(crate) fn neg_raw(&self, a: &Coords) -> Coords {
        a.iter()
            .zip(&self.coord_moduli)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect()
    }

    pub(crate) fn mul_raw(&self, a: &Coords, b: &Coords) -> Coords {
        if self.e == 1 {
            return smallvec![mul_mod(a[0], b[0], self.coord_moduli[0])];
        }
        let m = self.modulus;
        let e = self.e;
        let mut acc = [0u64; 64];
        let acc: &mut [u64] = if 2 * e - 1 <= acc.len() {
            &mut acc[..2 * e - 1]
        } else {
            return self.mul_raw_slow(a, b);
        };
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = add_mod(acc[i + j], mul_mod(x, y, m), m);
            }
        }
        self.fold_high(acc);
        let mut out: Coords = acc[..e].iter().copied().collect();
        self.canonicalize(&mut out);
        out
    }

    fn mul_raw_slow(&self, a: &Coords, b: &Coords) -> Coords {
        let m = self.modulus;
        let e = self.e;
        let mut acc = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = add_mod(acc[i + j], mul_mod(x, y, m), m);
            }
        }
        self.fold_high(&mut acc);
        let mut out: Coords = acc[..e].iter().copied().collect();
        self.canonicalize(&mut out);
        out
    }

    /// Rewrites `π^k` for `k >= e` using `E(π) = 0`, top degree first.
    fn fold_high(&self, acc: &mut [u64]) {
        let e = self.e;
        let m = self.modulus;
        for k in (e..acc.len()).rev() {
            let c = acc[k];
            if c == 0 {
                continue;
            }
            acc[k] = 0;
            for (i, &r) in self.pi_e.iter().enumerate() {
                let idx = k - e + i;
                acc[idx] = add_mod(acc[idx], mul_mod(c, r, m), m);
            }
        }
    }

    /// Inner product `Σ a_i b_i`, reducing lazily where the modulus allows.
    pub(crate) fn dot_raw<'a, I>(&self, pairs: I) -> Coords
    where
        I: Iterator<Item = (&'a Coords, &'a Coords)>,
    {
        if self.e == 1 {
            let m = self.coord_moduli[0];
            if m < 1 << 32 {
                let mut acc: u128 = 0;
                for (x, y) in pairs {
                    acc += x[0] as u128 * y[0] as u128;
                }
                return smallvec![(acc % m as u128) as u64];
            }
            let mut acc = 0u64;
            for (x, y) in pairs {
                acc = add_mod(acc, mul_mod(x[0], y[0], m), m);
            }
            return smallvec![acc];
        }
        let mut acc = self.zero_raw();
        for (x, y) in pairs {
            let prod = self.mul_raw(x, y);
            self.add_assign_raw(&mut acc, &prod);
        }
        acc
    }

    pub(crate) fn scale_int_raw(&self, a: &Coords, k: u64) -> Coords {
        let k = k % self.modulus;
        a.iter()
            .zip(&self.coord_moduli)
            .map(|(&x, &m)| mul_mod(x, k % m, m))
            .collect()
    }

    pub(crate) fn valuation_raw(&self, a: &Coords) -> Valuation {
        let mut best: Option<u32> = None;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut y = x;
            while y % self.p == 0 {
                y /= self.p;
                v += 1;
            }
            let cand = self.e as u32 * v + i as u32;
            best = Some(best.map_or(cand, |b| b.min(cand)));
        }
        match best {
            Some(v) if v < self.precision => Valuation::Finite(v),
            _ => Valuation::AtLeast(self.precision),
        }
    }

    pub(crate) fn residue_raw(&self, a: &Coords) -> u64 {
        a[0] % self.p
    }

    pub(crate) fn is_unit_raw(&self, a: &Coords) -> bool {
        self.residue_raw(a) != 0
    }

    pub(crate) fn inv_unit_raw(&self, a: &Coords) -> Result<Coords> {
        let r = self.residue_raw(a);
        if r == 0 {
            return Err(Error::NotAUnit);
        }
        // Newton: y <- y (2 - a y) doubles the number of correct π-digits.
        let mut y = self.int_raw(pow_mod(r, self.p - 2, self.p) as i64);
        let two = self.int_raw(2);
        let mut correct = 1u32;
        while correct < self.precision {
            let ay = self.mul_raw(a, &y);
            y = self.mul_raw(&y, &self.sub_raw(&two, &ay));
            correct *= 2;
        }
        Ok(y)
    }

    pub(crate) fn pi_pow_raw(&self, k: u32) -> Coords {
        let mut base = self.zero_raw();
        if self.e == 1 {
            base[0] = self.p % self.coord_moduli[0];
        } else {
            base[1] = 1 % self.coord_moduli[1];
        }
        let mut acc = self.one_raw();
        for _ in 0..k {
            acc = self.mul_raw(&acc, &base);
        }
        acc
    }

    /// Canonical representative modulo `π^prec` (`prec <= N`).
    pub(crate) fn reduce_raw(&self, a: &Coords, prec: u32) -> Coords {
        let prec = prec.min(self.precision);
        a.iter()
            .enumerate()
            .map(|(i, &x)| x % self.p.pow(prec.saturating_sub(i as u32).div_ceil(self.e as u32)))
            .collect()
    }

    pub(crate) fn random_raw<R: Rng + ?Sized>(&self, rng: &mut R, min_valuation: u32) -> Coords {
        if min_valuation >= self.precision {
            return self.zero_raw();
        }
        let x: Coords = self.coord_moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        self.mul_raw(&x, &self.pi_pow_raw(min_valuation))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "Z_{} mod {}^{}", self.p, self.p, self.precision)
        } else {
            write!(f, "Z_{}[pi]/(", self.p)?;
            let mut first = true;
            for (i, c) in self.eisenstein.iter().enumerate().rev() {
                if *c == 0 {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match i {
                    0 => write!(f, "{c}")?,
                    1 => write!(f, "{c}*x")?,
                    _ => write!(f, "{c}*x^{i}")?,
                }
            }
            write!(f, ") mod pi^{}", self.precision)
        }
    }
}

/// π-adic valuation at finite precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    /// Exact valuation, strictly below the working precision.
    Finite(u32),
    /// The element is zero modulo `π^N`; its true valuation is at least `N`.
    AtLeast(u32),
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// A value the true valuation is guaranteed to reach.
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |v: &Valuation| (v.lower_bound(), !v.is_finite());
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// An element of `O_K` known modulo `π^N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OkElement {
    field: Field,
    coords: Coords,
}

pub(crate) fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl OkElement {
    pub(crate) fn from_raw(field: &Field, coords: Coords) -> Self {
        OkElement { field: field.clone(), coords }
    }

    pub(crate) fn raw(&self) -> &Coords {
        &self.coords
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_raw(field, field.zero_raw())
    }

    pub fn one(field: &Field) -> Self {
        Self::from_raw(field, field.one_raw())
    }

    pub fn from_int(field: &Field, a: i64) -> Self {
        Self::from_raw(field, field.int_raw(a))
    }

    pub fn from_bigint(field: &Field, a: &BigInt) -> Self {
        Self::from_raw(field, field.bigint_raw(a))
    }

    /// `Σ a_i π^i` from signed big-integer coordinates (missing ones are zero).
    pub fn from_coords(field: &Field, coords: &[BigInt]) -> Result<Self> {
        if coords.len() > field.e {
            return Err(Error::Precondition(format!(
                "element has {} coordinates, field has ramification {}",
                coords.len(),
                field.e
            )));
        }
        let m = BigInt::from(field.modulus);
        let mut c = field.zero_raw();
        for (dst, src) in c.iter_mut().zip(coords) {
            *dst = src.mod_floor(&m).to_u64().unwrap();
        }
        field.canonicalize(&mut c);
        Ok(Self::from_raw(field, c))
    }

    /// The uniformizer `π` raised to `k`.
    pub fn pi_pow(field: &Field, k: u32) -> Self {
        Self::from_raw(field, field.pi_pow_raw(k))
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rng: &mut R, min_valuation: u32) -> Self {
        Self::from_raw(field, field.random_raw(rng, min_valuation))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical Z_p-coordinates `a_0, …, a_{e-1}`.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_raw(&self.coords)
    }

    pub fn valuation(&self) -> Valuation {
        self.field.valuation_raw(&self.coords)
    }

    pub fn residue(&self) -> u64 {
        self.field.residue_raw(&self.coords)
    }

    pub fn is_unit(&self) -> bool {
        self.field.is_unit_raw(&self.coords)
    }

    pub fn invert_unit(&self) -> Result<Self> {
        Ok(Self::from_raw(&self.field, self.field.inv_unit_raw(&self.coords)?))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, self.field.add_raw(&self.coords, &other.coords)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, self.field.sub_raw(&self.coords, &other.coords)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.field, self.field.mul_raw(&self.coords, &other.coords)))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let f = &self.field;
        let mut acc = f.one_raw();
        let mut base = self.coords.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = f.mul_raw(&acc, &base);
            }
            base = f.mul_raw(&base, &base);
            k >>= 1;
        }
        Self::from_raw(f, acc)
    }

    /// Canonical representative modulo `π^prec`.
    pub fn reduce_precision(&self, prec: u32) -> Self {
        Self::from_raw(&self.field, self.field.reduce_raw(&self.coords, prec))
    }

    /// `self ≡ other (mod π^prec)`.
    pub fn eq_mod(&self, other: &Self, prec: u32) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.valuation().lower_bound() >= prec.min(self.field.precision),
            Err(_) => false,
        }
    }

    /// Coordinates as decimal strings, the JSON wire form.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    /// Coordinate `a_0` lifted to a signed integer in `(-m/2, m/2]`; only
    /// meaningful for `e = 1`.
    pub fn to_signed(&self) -> BigInt {
        let m = BigInt::from(self.field.coord_moduli[0]);
        let a = BigInt::from(self.coords[0]);
        if &a * 2 > m {
            a - m
        } else {
            a
        }
    }
}

impl fmt::Debug for OkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*pi")?,
                _ => write!(f, "{c}*pi^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&OkElement> for &OkElement {
            type Output = OkElement;
            fn $method(self, rhs: &OkElement) -> OkElement {
                self.$checked(rhs).expect("operands belong to different fields")
            }
        }
        impl $tr<OkElement> for OkElement {
            type Output = OkElement;
            fn $method(self, rhs: OkElement) -> OkElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &OkElement {
    type Output = OkElement;
    fn neg(self) -> OkElement {
        OkElement::from_raw(&self.field, self.field.neg_raw(&self.coords))
    }
}

impl Neg for OkElement {
    type Output = OkElement;
    fn neg(self) -> OkElement {
        -&self
    }
}

/// A value together with the π-adic precision to which it is proven correct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certified {
    pub value: OkElement,
    pub precision: u32,
}

impl Certified {
    pub(crate) fn new(value: OkElement, precision: u32) -> Self {
        let precision = precision.min(value.field().precision());
        Certified { value: value.reduce_precision(precision), precision }
    }

    /// Valuation of the value, capped at the certified precision.
    pub fn valuation(&self) -> Valuation {
        match self.value.valuation() {
            Valuation::Finite(v) if v < self.precision => Valuation::Finite(v),
            _ => Valuation::AtLeast(self.precision),
        }
    }

    /// Whether the value is provably nonzero.
    pub fn is_certified_nonzero(&self) -> bool {
        self.valuation().is_finite()
    }

    /// Agreement with `other` to the certified precision.
    pub fn agrees_with(&self, other: &OkElement) -> bool {
        self.value.eq_mod(other, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(p: u64, n: u32) -> Field {
        FieldSpec::zp(p, n).unwrap()
    }

    fn ram2(n: u32) -> Field {
        FieldSpec::new(2, vec![-2, 0, 1], n).unwrap()
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::zp(4, 8).is_err());
        assert!(FieldSpec::new(2, vec![-4, 0, 1], 8).is_err());
        assert!(FieldSpec::new(2, vec![-2, 1, 1], 8).is_err());
        assert!(FieldSpec::new(2, vec![-2, 0, 2], 8).is_err());
        assert!(FieldSpec::zp(2, 0).is_err());
        assert!(matches!(FieldSpec::zp(2, 200), Err(Error::PrecisionTooLarge { .. })));
    }

    #[test]
    fn derived_coefficient_precision() {
        assert_eq!(z(2, 8).coeff_precision(), 9);
        assert_eq!(ram2(8).coeff_precision(), 5);
        assert_eq!(ram2(7).coeff_precision(), 5);
    }

    #[test]
    fn small_arithmetic() {
        let f = z(2, 8);
        let one = OkElement::one(&f);
        assert_eq!((&one + &one).coords(), &[2]);

        let g = ram2(8);
        let pi = OkElement::pi_pow(&g, 1);
        assert_eq!((&pi * &pi).coords(), &[2, 0]);

        let h = z(3, 4);
        let x = OkElement::from_int(&h, 40) * OkElement::from_int(&h, 2);
        assert_eq!(x.coords(), &[80]);
    }

    #[test]
    fn valuations() {
        assert_eq!(OkElement::from_int(&z(2, 8), 12).valuation(), Valuation::Finite(2));
        assert_eq!(OkElement::from_int(&ram2(8), 2).valuation(), Valuation::Finite(2));
        assert_eq!(OkElement::from_int(&z(5, 3), 0).valuation(), Valuation::AtLeast(3));
        assert_eq!(OkElement::from_int(&z(5, 3), 125).valuation(), Valuation::AtLeast(3));
        assert_eq!(OkElement::pi_pow(&ram2(8), 3).valuation(), Valuation::Finite(3));
    }

    #[test]
    fn unit_inversion() {
        let f = z(2, 4);
        assert_eq!(OkElement::from_int(&f, 3).invert_unit().unwrap().coords(), &[11]);
        assert_eq!(OkElement::one(&f).invert_unit().unwrap(), OkElement::one(&f));
        assert!(matches!(OkElement::from_int(&f, 2).invert_unit(), Err(Error::NotAUnit)));
    }

    #[test]
    fn residues() {
        assert_eq!(OkElement::from_int(&z(3, 5), 7).residue(), 1);
        assert_eq!(OkElement::pi_pow(&ram2(6), 1).residue(), 0);
        assert_eq!(OkElement::from_int(&z(2, 5), 5).residue(), 1);
    }

    #[test]
    fn canonical_form_is_per_coordinate() {
        // In Z_2[√2] mod π^5, a_0 lives mod 2^3 and a_1 mod 2^2.
        let f = ram2(5);
        let x = OkElement::from_coords(&f, &[BigInt::from(9), BigInt::from(5)]).unwrap();
        assert_eq!(x.coords(), &[1, 1]);
    }

    #[test]
    fn mismatched_fields() {
        let a = OkElement::one(&z(2, 8));
        let b = OkElement::one(&z(3, 8));
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch)));
    }

    #[test]
    fn random_respects_min_valuation() {
        let f = FieldSpec::new(3, vec![3, 3, 0, 1], 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = OkElement::random(&f, &mut rng, 4);
            assert!(x.valuation().lower_bound() >= 4);
        }
    }
}
