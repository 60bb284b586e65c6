//! Hensel factorisation of restricted power series: `f = P·U` with `P` monic of
//! degree `μ_max - μ_min` carrying exactly the roots on the unit sphere.
//!
//! At finite precision a restricted series is stored like any [`PowerSeries`];
//! its coefficients from `X^M` on are taken to be `O(π^N)`, so it is the
//! polynomial of its known coefficients.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::series::PowerSeries;

/// How the residue factorisation is lifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftStrategy {
    /// Quadratic lifting that also lifts the Bézout cofactors.
    #[default]
    Quadratic,
    /// One π-digit per step with the residue cofactors held fixed.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselFactorization {
    /// Monic of degree `d`, `P(0)` a unit.
    pub p: Polynomial,
    /// `U ≡ f_{n+d} X^n mod 𝔪_K`, at the X-precision of the input.
    pub u: PowerSeries,
    /// `μ_min`.
    pub n: usize,
    /// `μ_max - μ_min`.
    pub d: usize,
}

impl HenselFactorization {
    pub fn verify(&self, f: &PowerSeries) -> bool {
        self.u
            .mul_polynomial(&self.p)
            .is_ok_and(|pu| pu.congruent(f))
    }
}

/// `(μ_min, μ_max - μ_min)` over the known coefficients.
pub fn mu_indices(f: &PowerSeries) -> Result<(usize, usize)> {
    let field = f.field();
    let units: Vec<usize> = (0..f.xprec()).filter(|&i| field.is_unit_raw(f.raw_coeff(i))).collect();
    match (units.first(), units.last()) {
        (Some(&lo), Some(&hi)) => Ok((lo, hi - lo)),
        _ => Err(Error::NoUnitCoefficient),
    }
}

pub fn hensel_factor(f: &PowerSeries) -> Result<HenselFactorization> {
    hensel_factor_with(f, LiftStrategy::Quadratic)
}

pub fn hensel_factor_with(f: &PowerSeries, strategy: LiftStrategy) -> Result<HenselFactorization> {
    let (n, d) = mu_indices(f)?;
    let field = f.field().clone();
    let m = f.xprec();
    if d == 0 {
        return Ok(HenselFactorization { p: Polynomial::one(&field), u: f.clone(), n, d });
    }
    let full = f.to_polynomial();
    let lead = f.coeff(n + d);
    let lead_inv = lead.invert_unit()?;
    let p0 = Polynomial::from_raw(&field, f.raw()[n..=n + d].to_vec()).scale(&lead_inv);
    let mut u0 = vec![field.zero_raw(); n + 1];
    u0[n] = lead.raw().clone();
    let u0 = Polynomial::from_raw(&field, u0);

    // Residue-level Bézout identity s·ū + t·p̄ = 1 in F_p[X].
    let prime = field.p();
    let (s_bar, t_bar) = fp::bezout(&u0.residues(), &p0.residues(), prime)
        .ok_or_else(|| Error::Precondition("residue factors are not coprime".into()))?;
    let s = lift_residues(&field, &s_bar);
    let t = lift_residues(&field, &t_bar);

    let u_max_deg = m - 1 - d;
    let (p, u) = match strategy {
        LiftStrategy::Quadratic => lift_quadratic(&full, u0, p0, s, t, u_max_deg)?,
        LiftStrategy::Linear => lift_linear(&full, u0, p0, &s, &t, u_max_deg)?,
    };
    let out = HenselFactorization { p, u: PowerSeries::from_polynomial(&u, m), n, d };
    if !out.verify(f) {
        return Err(Error::Precondition("Hensel lifting failed to converge".into()));
    }
    Ok(out)
}

fn lift_residues(field: &Field, r: &[u64]) -> Polynomial {
    Polynomial::from_raw(field, r.iter().map(|&a| field.int_raw(a as i64)).collect())
}

/// One quadratic step per round (von zur Gathen–Gerhard), with `g = U`,
/// monic `h = P` and `s g + t h ≡ 1`.
fn lift_quadratic(
    f: &Polynomial,
    mut g: Polynomial,
    mut h: Polynomial,
    mut s: Polynomial,
    mut t: Polynomial,
    g_max_deg: usize,
) -> Result<(Polynomial, Polynomial)> {
    let field = f.field().clone();
    let rounds = (field.precision() as f64).log2().ceil() as u32 + 1;
    let one = Polynomial::one(&field);
    for _ in 0..rounds {
        let e = f.sub(&g.mul(&h));
        let (q, r) = s.mul(&e).divrem_monic(&h)?;
        let g_new = g.add(&t.mul(&e)).add(&q.mul(&g)).truncate(g_max_deg);
        let h_new = h.add(&r);
        let b = s.mul(&g_new).add(&t.mul(&h_new)).sub(&one);
        let (c, dd) = s.mul(&b).divrem_monic(&h_new)?;
        s = s.sub(&dd);
        t = t.sub(&t.mul(&b)).sub(&c.mul(&g_new));
        t = if g_max_deg == 0 { Polynomial::zero(&field) } else { t.truncate(g_max_deg - 1) };
        g = g_new;
        h = h_new;
    }
    Ok((h, g))
}

/// Solves `ΔP·U + P·ΔU ≡ f - P U` one π-digit at a time.
fn lift_linear(
    f: &Polynomial,
    mut g: Polynomial,
    mut h: Polynomial,
    s: &Polynomial,
    t: &Polynomial,
    g_max_deg: usize,
) -> Result<(Polynomial, Polynomial)> {
    for _ in 0..f.field().precision() {
        let e = f.sub(&g.mul(&h));
        if e.is_zero() {
            break;
        }
        let (q, r) = e.mul(s).divrem_monic(&h)?;
        let dg = q.mul(&g).add(&e.mul(t)).truncate(g_max_deg);
        h = h.add(&r);
        g = g.add(&dg);
    }
    Ok((h, g))
}

/// Monic factor of `F` whose roots all have valuation 0.
pub fn slope_zero_factor(poly: &Polynomial) -> Result<Polynomial> {
    let len = poly.len();
    if len == 0 {
        return Err(Error::NoUnitCoefficient);
    }
    Ok(hensel_factor(&PowerSeries::from_polynomial(poly, len))?.p)
}

/// Polynomials over `F_p` as coefficient vectors, lowest degree first.
pub(crate) mod fp {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub(crate) fn inv(a: u64, p: u64) -> u64 {
        let (mut r0, mut r1) = (p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(p as i128) as u64
    }

    #[cfg(test)]
    pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    /// `(s, t)` with `s a + t b = 1`, or `None` when `gcd(a, b) ≠ 1`.
    pub(crate) fn bezout(a: &[u64], b: &[u64], p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv(r0[0], p);
        let scale = |v: Vec<u64>| trim(v.into_iter().map(|x| x * c % p).collect());
        Some((scale(s0), scale(t0)))
    }

    /// Monic gcd.
    pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        while !r1.is_empty() {
            let (_, r) = divrem(&r0, &r1, p);
            (r0, r1) = (r1, r);
        }
        match r0.last() {
            Some(&l) => {
                let c = inv(l, p);
                r0.into_iter().map(|x| x * c % p).collect()
            }
            None => r0,
        }
    }
}

/// Residues of the two factors share no root over `F_p`.
pub fn residues_coprime(a: &Polynomial, b: &Polynomial) -> bool {
    let p = a.field().p();
    fp::gcd(&a.residues(), &b.residues(), p).len() == 1
}
