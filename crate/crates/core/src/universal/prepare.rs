//! Universal Weierstrass preparation of `F(X) = Σ F_k X^k` over
//! `Z[F_n, F_n^{-1}, F_{n+1}, …][[F_0, …, F_{n-1}]]`, and the closed form for
//! `P_0` when `n = 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Context, Monomial, UniversalSeries, Var, DEFAULT_TERM_CAP};
use crate::error::{Error, Result};

/// `F ≡ P·U` with `P = X^n + P_{n-1} X^{n-1} + … + P_0`, modulo small-degree
/// `order + 1`, with `F_k = 0` for `k > kmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalPreparation {
    pub n: u32,
    pub order: u32,
    pub kmax: u32,
    /// `P_0, …, P_{n-1}`.
    pub p: Vec<UniversalSeries>,
    /// Coefficients of `U` below the X-degree bound.
    pub u: Vec<UniversalSeries>,
}

impl UniversalPreparation {
    pub fn context(&self) -> &Arc<Context> {
        self.p[0].context()
    }

    /// `P·U - F` below the X-degree bound of `U`; zero when the
    /// factorisation is consistent.
    pub fn reconstruction_defect(&self) -> Result<Vec<UniversalSeries>> {
        let ctx = self.context();
        let bound = self.u.len();
        let mut poly: Vec<UniversalSeries> = self.p.clone();
        poly.push(UniversalSeries::one(ctx));
        let mut out = xmul(&poly, &self.u, bound)?;
        for (k, c) in out.iter_mut().enumerate() {
            *c = c.sub(&f_coeff(ctx, k, self.kmax));
        }
        Ok(out)
    }
}

fn f_coeff(ctx: &Arc<Context>, k: usize, kmax: u32) -> UniversalSeries {
    if k as u32 <= kmax {
        UniversalSeries::var(ctx, Var::F(k as u32))
    } else {
        UniversalSeries::zero(ctx)
    }
}

/// Truncated product of X-series with universal coefficients.
fn xmul(a: &[UniversalSeries], b: &[UniversalSeries], len: usize) -> Result<Vec<UniversalSeries>> {
    let ctx = a.first().or(b.first()).expect("nonempty operand").context().clone();
    let mut out = vec![UniversalSeries::zero(&ctx); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul(y)?);
            }
        }
    }
    Ok(out)
}

/// [`universal_prepare_with`] with `U` kept below `X^{kmax+1}`.
pub fn universal_prepare(n: u32, order: u32, kmax: u32) -> Result<UniversalPreparation> {
    universal_prepare_with(n, order, kmax, kmax as usize + 1, DEFAULT_TERM_CAP)
}

/// Divides `X^n` by `F = t + X^n e` by successive approximation: each sweep
/// multiplies by `t`, so raises small-degree by one, and `order + 1` sweeps
/// fix `P` modulo small-degree `order + 1`.
pub fn universal_prepare_with(n: u32, order: u32, kmax: u32, xbound: usize, term_cap: usize) -> Result<UniversalPreparation> {
    if n == 0 || order == 0 || kmax < n {
        return Err(Error::Precondition(format!("need n >= 1, order >= 1, kmax >= n (got {n}, {order}, {kmax})")));
    }
    let small: Vec<Var> = (0..n).map(Var::F).collect();
    let ctx = Context::with_term_cap(small, Some(Var::F(n)), Some(order), term_cap);
    let nu = n as usize;
    let mx = (order as usize + 1) * nu + xbound;

    let t: Vec<UniversalSeries> = (0..nu).map(|k| f_coeff(&ctx, k, kmax)).collect();
    let e: Vec<UniversalSeries> = (0..mx).map(|k| f_coeff(&ctx, k + nu, kmax)).collect();
    let v = UniversalSeries::var_pow(&ctx, Var::F(n), -1);
    // e^{-1}_m = -V Σ_{i=1}^m e_i e^{-1}_{m-i}
    let mut einv: Vec<UniversalSeries> = vec![v.clone()];
    for m in 1..mx - nu {
        let mut s = UniversalSeries::zero(&ctx);
        for i in 1..=m {
            if !e[i].is_zero() {
                s.add_assign(&e[i].mul(&einv[m - i])?);
            }
        }
        einv.push(s.mul(&v)?.neg());
    }

    let overflow = |k: u32| move |err| match err {
        Error::TruncationOverflow { .. } => Error::TruncationOverflow { completed_order: k.checked_sub(1) },
        other => other,
    };

    let mut g: Vec<UniversalSeries> = vec![UniversalSeries::zero(&ctx); mx];
    g[nu] = UniversalSeries::one(&ctx);
    let mut r = vec![UniversalSeries::zero(&ctx); nu];
    let mut q = vec![UniversalSeries::zero(&ctx); mx - nu];
    for k in 0..=order {
        for (ri, gi) in r.iter_mut().zip(&g) {
            ri.add_assign(gi);
        }
        let qk = xmul(&g[nu..], &einv, g.len() - nu).map_err(overflow(k))?;
        for (a, b) in q.iter_mut().zip(&qk) {
            a.add_assign(b);
        }
        if k < order {
            g = xmul(&qk, &t, qk.len()).map_err(overflow(k))?.iter().map(UniversalSeries::neg).collect();
        }
    }
    let p: Vec<UniversalSeries> = r.iter().map(UniversalSeries::neg).collect();

    // U = q^{-1} = e (1 + δ)^{-1} with δ = e (q - e^{-1}) of small-degree >= 1.
    let u = if xbound == 0 {
        Vec::new()
    } else {
        let e_short = &e[..xbound];
        let dq: Vec<UniversalSeries> = q.iter().zip(&einv).take(xbound).map(|(a, b)| a.sub(b)).collect();
        let delta = xmul(e_short, &dq, xbound).map_err(overflow(order + 1))?;
        let mut power = vec![UniversalSeries::zero(&ctx); xbound];
        power[0] = UniversalSeries::one(&ctx);
        let mut sum = power.clone();
        for _ in 0..order {
            power = xmul(&power, &delta, xbound).map_err(overflow(order + 1))?.iter().map(UniversalSeries::neg).collect();
            for (a, b) in sum.iter_mut().zip(&power) {
                a.add_assign(b);
            }
        }
        xmul(e_short, &sum, xbound).map_err(overflow(order + 1))?
    };
    Ok(UniversalPreparation { n, order, kmax, p, u })
}

/// Partitions of `m` as multiplicity vectors `i_1, …, i_m`.
fn partitions(m: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, largest: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=largest.min(rest)).rev() {
            cur[part - 1] += 1;
            go(rest - part, part, cur, out);
            cur[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut vec![0; m], &mut out);
    out
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// The closed form
/// `Σ_{m≥0} F_0^{m+1} Σ_{j=0}^{m} (-F_1)^{-m-j} Σ (m+j)!/((m+1)! i_1!⋯i_m!) F_2^{i_1}⋯F_{m+1}^{i_m}`,
/// inner sum over `i_1+…+i_m = j`, `i_1+2i_2+…+m i_m = m`, kept to
/// `F_0`-degree `order`. Each coefficient is checked to be an integer.
pub fn bgw_p0(order: u32, kmax: u32) -> Result<UniversalSeries> {
    if order == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let ctx = Context::new(vec![Var::F(0)], Some(Var::F(1)), Some(order));
    let mut out = UniversalSeries::zero(&ctx);
    for m in 0..order as usize {
        for mult in partitions(m) {
            let j: u32 = mult.iter().sum();
            let num = factorial((m as u64) + j as u64);
            let den = mult.iter().fold(factorial(m as u64 + 1), |acc, &i| acc * factorial(i as u64));
            let (c, rem) = num.div_rem(&den);
            if !rem.is_zero() {
                return Err(Error::IntegralityViolation { numerator: num.to_string(), denominator: den.to_string() });
            }
            if mult.iter().enumerate().any(|(k, &i)| i > 0 && k as u32 + 2 > kmax) {
                continue;
            }
            let mut mono: Monomial = Monomial::new();
            mono.push((Var::F(0), m as i32 + 1));
            if m as u32 + j > 0 {
                mono.push((Var::F(1), -(m as i32 + j as i32)));
            }
            for (k, &i) in mult.iter().enumerate() {
                if i > 0 {
                    mono.push((Var::F(k as u32 + 2), i as i32));
                }
            }
            let c = if (m as u32 + j) % 2 == 1 { -c } else { c };
            out.add_assign(&UniversalSeries::term(&ctx, mono, c));
        }
    }
    Ok(out)
}

/// Outcome of comparing [`bgw_p0`] with `P_0` from [`universal_prepare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BgwComparison {
    /// The closed form equals `P_0`.
    pub equals_p0: bool,
    /// The closed form equals `F_1·P_0`.
    pub equals_f1_times_p0: bool,
}

impl BgwComparison {
    pub fn consistent_under_exactly_one(&self) -> bool {
        self.equals_p0 != self.equals_f1_times_p0
    }
}

pub fn compare_bgw_with_prepare(order: u32, kmax: u32) -> Result<BgwComparison> {
    let closed = bgw_p0(order, kmax)?;
    let prep = universal_prepare_with(1, order, kmax, 0, DEFAULT_TERM_CAP)?;
    let p0 = &prep.p[0];
    // Re-home the closed form in the preparation's context, which has the
    // same small variable, inverse and order.
    let ctx = p0.context();
    let mut b = UniversalSeries::zero(ctx);
    for (m, c) in closed.terms() {
        b.add_assign(&UniversalSeries::term(ctx, m.clone(), c.clone()));
    }
    let scaled = p0.mul(&UniversalSeries::var(ctx, Var::F(1)))?;
    Ok(BgwComparison { equals_p0: &b == p0, equals_f1_times_p0: b == scaled })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(parts: &[(Var, i32)]) -> Vec<(Var, i32)> {
        parts.to_vec()
    }

    #[test]
    fn partitions_of_four() {
        let p = partitions(4);
        assert_eq!(p.len(), 5);
        assert!(p.contains(&vec![0, 2, 0, 0]));
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn prepare_n1_order2() {
        let prep = universal_prepare(1, 2, 3).unwrap();
        let p0 = &prep.p[0];
        // P_0 = F_0 V + F_0^2 F_2 V^3 mod F_0^3
        assert_eq!(p0.len(), 2);
        assert_eq!(p0.coefficient(&mono(&[(Var::F(0), 1), (Var::F(1), -1)])), BigInt::from(1));
        assert_eq!(p0.coefficient(&mono(&[(Var::F(0), 2), (Var::F(1), -3), (Var::F(2), 1)])), BigInt::from(1));
    }

    #[test]
    fn prepare_n2_order1() {
        let prep = universal_prepare(2, 1, 2).unwrap();
        assert_eq!(prep.p[0].len(), 1);
        assert_eq!(prep.p[0].coefficient(&mono(&[(Var::F(0), 1), (Var::F(2), -1)])), BigInt::from(1));
        assert_eq!(prep.p[1].len(), 1);
        assert_eq!(prep.p[1].coefficient(&mono(&[(Var::F(1), 1), (Var::F(2), -1)])), BigInt::from(1));
    }

    #[test]
    fn prepared_polynomial_is_distinguished_and_reconstructs() {
        for (n, order, kmax) in [(1, 3, 4), (2, 2, 4), (3, 2, 4)] {
            let prep = universal_prepare(n, order, kmax).unwrap();
            assert!(prep.p.iter().all(|pi| pi.min_small_degree().is_none_or(|d| d >= 1)));
            assert!(prep.reconstruction_defect().unwrap().iter().all(UniversalSeries::is_zero), "n = {n}");
        }
    }

    #[test]
    fn overflow_reports_partial_order() {
        match universal_prepare_with(1, 6, 6, 7, 10) {
            Err(Error::TruncationOverflow { completed_order }) => assert!(completed_order.is_none_or(|k| k < 6)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bgw_leading_terms() {
        let one = bgw_p0(1, 4).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.coefficient(&mono(&[(Var::F(0), 1)])), BigInt::from(1));
        let two = bgw_p0(2, 4).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two.coefficient(&mono(&[(Var::F(0), 2), (Var::F(1), -2), (Var::F(2), 1)])), BigInt::from(1));
        // m = 2: 2 F_2^2 F_1^{-4} - F_3 F_1^{-3}
        let three = bgw_p0(3, 4).unwrap();
        assert_eq!(three.coefficient(&mono(&[(Var::F(0), 3), (Var::F(1), -4), (Var::F(2), 2)])), BigInt::from(2));
        assert_eq!(three.coefficient(&mono(&[(Var::F(0), 3), (Var::F(1), -3), (Var::F(3), 1)])), BigInt::from(-1));
    }

    #[test]
    fn bgw_is_integral_through_order_12() {
        assert!(bgw_p0(12, 13).is_ok());
    }

    #[test]
    fn bgw_normalization() {
        let c = compare_bgw_with_prepare(5, 6).unwrap();
        assert!(!c.equals_p0);
        assert!(c.equals_f1_times_p0);
    }
}
