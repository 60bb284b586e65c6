//! Weierstrass division and preparation over `O_K` at finite precision.
//!
//! For `f` of Weierstrass degree `n`, write `f = t + X^n e` with `t` of degree
//! `< n` (coefficients in `𝔪_K`) and `e` a unit series. Dividing `g` by `f`
//! runs the fixed-point iteration
//!
//! ```text
//! g_0 = g,  g_k = r_k + X^n s_k,  q_k = s_k e^{-1},  g_{k+1} = -q_k t
//! ```
//!
//! so that `g = (Σ q_k) f + Σ r_k` and `g_k ≡ 0 mod π^k`. `N` sweeps suffice.

use crate::error::{Error, Result};
use crate::field::{same_field, Coords, Field, OkElement};
use crate::poly::Polynomial;
use crate::series::{mul_truncated, PowerSeries};

/// Monic `X^n + p_{n-1} X^{n-1} + … + p_0` with every `p_i ∈ 𝔪_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishedPoly {
    field: Field,
    lows: Vec<OkElement>,
}

impl DistinguishedPoly {
    pub fn new(field: &Field, lows: Vec<OkElement>) -> Result<Self> {
        if lows.iter().any(|c| !same_field(c.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        if let Some(i) = lows.iter().position(|c| c.is_unit()) {
            return Err(Error::Precondition(format!("coefficient p_{i} is a unit; polynomial is not distinguished")));
        }
        Ok(DistinguishedPoly { field: field.clone(), lows })
    }

    /// `X^n` itself.
    pub fn monomial(field: &Field, n: usize) -> Self {
        DistinguishedPoly { field: field.clone(), lows: vec![OkElement::zero(field); n] }
    }

    /// Accepts a monic polynomial whose lower coefficients lie in `𝔪_K`.
    pub fn from_polynomial(poly: &Polynomial) -> Result<Self> {
        if !poly.is_monic() {
            return Err(Error::Precondition("polynomial is not monic".into()));
        }
        let mut c = poly.coefficients();
        c.pop();
        Self::new(poly.field(), c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.lows.len()
    }

    /// `p_0, …, p_{n-1}`.
    pub fn lows(&self) -> &[OkElement] {
        &self.lows
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut c: Vec<Coords> = self.lows.iter().map(|x| x.raw().clone()).collect();
        c.push(self.field.one_raw());
        Polynomial::from_raw(&self.field, c)
    }
}

/// `g ≡ q f + r mod (π^N, X^M)` with `deg r < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassDivision {
    /// Determined to X-precision `M - n`.
    pub quotient: PowerSeries,
    pub remainder: Polynomial,
    /// Iterations actually run before the residual vanished.
    pub sweeps: u32,
    /// `min(N, ⌊M/n⌋)`: the remainder's dependence on the unknown tails.
    pub certified_precision: u32,
}

impl WeierstrassDivision {
    /// Re-checks `g ≡ q f + r mod (π^N, X^M)`, reading the quotient as the
    /// polynomial it was computed as.
    pub fn verify(&self, g: &PowerSeries, f: &PowerSeries) -> bool {
        let m = g.xprec().min(f.xprec());
        let q = self.quotient.extend_with_zeros(m);
        match q.mul(&f.truncate(m)) {
            Ok(qf) => {
                let rhs = PowerSeries::from_polynomial(&self.remainder, m);
                qf.add(&rhs).is_ok_and(|s| s.congruent(&g.truncate(m)))
            }
            Err(_) => false,
        }
    }
}

/// Distinguished polynomial times unit, `f ≡ p u mod (π^N, X^M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassFactorization {
    pub p: DistinguishedPoly,
    /// Kept at X-precision `M` so the product can be re-checked mod `X^M`.
    /// Coefficients from degree `M - n` on depend on the truncation of `f`.
    pub u: PowerSeries,
    /// Precision to which `p` agrees with the distinguished factor of every
    /// series that matches `f` mod `(π^N, X^M)`: `min(N, ⌊M/n⌋)`.
    pub certified_precision: u32,
}

impl WeierstrassFactorization {
    /// Re-multiplies and compares with `f` mod `(π^N, X^M)`.
    pub fn verify(&self, f: &PowerSeries) -> bool {
        let m = f.xprec().min(self.u.xprec());
        let Ok(pu) = self.u.truncate(m).mul_polynomial(&self.p.to_polynomial()) else {
            return false;
        };
        pu.congruent(&f.truncate(m)) && self.p.lows().iter().all(|c| !c.is_unit()) && self.u.coeff(0).is_unit()
    }
}

/// Precision to which the class of a degree-`n` distinguished factor (or a
/// reduction modulo it) is determined by the first `xprec` coefficients:
/// monomials `X^j` with `j >= n k` reduce into `π^k`.
pub(crate) fn tail_precision(field: &Field, n: usize, xprec: usize) -> u32 {
    if n == 0 {
        return field.precision();
    }
    ((xprec / n).min(u32::MAX as usize) as u32).min(field.precision())
}

pub fn weierstrass_divide(g: &PowerSeries, f: &PowerSeries) -> Result<WeierstrassDivision> {
    if !same_field(g.field(), f.field()) {
        return Err(Error::FieldMismatch);
    }
    let field = f.field().clone();
    let n = f.wideg()?;
    let m = g.xprec().min(f.xprec());
    if m <= n {
        return Err(Error::InsufficientXPrecision { xprec: m, needed: n });
    }
    let t: Vec<Coords> = f.raw()[..n].to_vec();
    let e_inv = f.truncate(m).shift_down(n).inverse()?;
    let e_inv = e_inv.raw();

    let mut residual: Vec<Coords> = g.raw()[..m].to_vec();
    let mut quotient = vec![field.zero_raw(); m - n];
    let mut remainder = vec![field.zero_raw(); n];
    let mut sweeps = 0;
    for _ in 0..=field.precision() {
        if residual.iter().all(|c| field.is_zero_raw(c)) {
            break;
        }
        sweeps += 1;
        for (acc, c) in remainder.iter_mut().zip(&residual[..n]) {
            field.add_assign_raw(acc, c);
        }
        let q_k = mul_truncated(&field, &residual[n..], e_inv, m - n);
        for (acc, c) in quotient.iter_mut().zip(&q_k) {
            field.add_assign_raw(acc, c);
        }
        let next = mul_truncated(&field, &q_k, &t, m);
        residual = next.iter().map(|c| field.neg_raw(c)).collect();
    }
    debug_assert!(residual.iter().all(|c| field.is_zero_raw(c)));
    Ok(WeierstrassDivision {
        quotient: PowerSeries::from_raw(&field, quotient),
        remainder: Polynomial::from_raw(&field, remainder),
        sweeps,
        certified_precision: tail_precision(&field, n, m),
    })
}

pub fn weierstrass_prepare(f: &PowerSeries) -> Result<WeierstrassFactorization> {
    let field = f.field().clone();
    let n = f.wideg()?;
    let m = f.xprec();
    if m <= n {
        return Err(Error::InsufficientXPrecision { xprec: m, needed: n });
    }
    let x_n = PowerSeries::monomial(&field, n, m);
    let div = weierstrass_divide(&x_n, f)?;
    // X^n - r = q f, hence f = (X^n - r) q^{-1}.
    let lows: Vec<OkElement> = (0..n).map(|i| -div.remainder.coeff(i)).collect();
    let p = DistinguishedPoly::new(&field, lows)?;
    let u = div.quotient.extend_with_zeros(m).inverse()?;
    Ok(WeierstrassFactorization { p, u, certified_precision: tail_precision(&field, n, m) })
}
