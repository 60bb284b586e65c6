//! `ResPol_n` as a series in `P_0, …, P_{n-1}` over `Z[G_0, G_1, …]`:
//! `∏_i Σ_k G_k Z_i^k = Σ_λ G_λ m_λ(Z)`, each monomial symmetric
//! polynomial `m_λ` rewritten in the elementary ones
//! `e_j = (-1)^j P_{n-j}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Context, Monomial, UniversalSeries, Var};
use crate::error::{Error, Result};

type ZPoly = BTreeMap<Vec<u32>, BigInt>;

fn zpoly_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `e_j(z_1, …, z_n)`.
fn elementary(n: usize, j: usize) -> ZPoly {
    let mut out = ZPoly::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == j {
            let e = (0..n).map(|i| (mask >> i) & 1).collect();
            out.insert(e, BigInt::from(1));
        }
    }
    out
}

/// `m_λ`: the sum of the distinct permutations of `z^λ`.
fn monomial_symmetric(lambda: &[u32]) -> ZPoly {
    let mut perm = lambda.to_vec();
    perm.sort_unstable();
    let mut out = ZPoly::new();
    loop {
        out.insert(perm.clone(), BigInt::from(1));
        // next lexicographic permutation
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// Writes a symmetric polynomial as `Σ c_b e_1^{b_1} ⋯ e_n^{b_n}`.
fn to_elementary(mut poly: ZPoly, n: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let es: Vec<ZPoly> = (1..=n).map(|j| elementary(n, j)).collect();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = poly.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let b: Vec<u32> = (0..n).map(|j| lead[j] - lead.get(j + 1).copied().unwrap_or(0)).collect();
        let mut prod: ZPoly = [(vec![0; n], BigInt::from(1))].into_iter().collect();
        for (j, &bj) in b.iter().enumerate() {
            for _ in 0..bj {
                prod = zpoly_mul(&prod, &es[j]);
            }
        }
        for (e, d) in prod {
            *poly.entry(e).or_default() -= &c * d;
        }
        poly.retain(|_, x| !x.is_zero());
        *out.entry(b).or_default() += c;
    }
    out
}

/// Non-increasing `λ` with `n` parts in `0..=gmax` and total at most `dmax`.
fn partitions(n: usize, gmax: u32, dmax: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, cap: u32, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for part in 0..=cap.min(rest) {
            cur.push(part);
            go(n, part, rest - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, gmax, dmax, &mut Vec::new(), &mut out);
    out
}

/// `ResPol_n` truncated to `G_k = 0` for `k > gmax`, with roots of total
/// degree at most `dmax`.
///
/// A monomial `m_λ` with `|λ| = s` has `P`-degree at least `s/n`, so the
/// result is correct up to `P`-degree `⌊dmax/n⌋`. When `dmax >= n·gmax`
/// nothing is dropped and the result is exact.
pub fn respol_symmetric(n: u32, dmax: u32, gmax: u32) -> Result<UniversalSeries> {
    if !(1..=3).contains(&n) {
        return Err(Error::Precondition(format!("symmetric resultant supports 1 <= n <= 3, got {n}")));
    }
    let order = if dmax >= n * gmax { None } else { Some(dmax / n) };
    let ctx = Context::new((0..n).map(Var::P).collect(), None, order);
    let nu = n as usize;
    let mut out = UniversalSeries::zero(&ctx);
    for lambda in partitions(nu, gmax, dmax) {
        let mut g_mono = Monomial::new();
        for &k in lambda.iter().rev() {
            match g_mono.last_mut() {
                Some((Var::G(last), e)) if *last == k => *e += 1,
                _ => g_mono.push((Var::G(k), 1)),
            }
        }
        for (b, c) in to_elementary(monomial_symmetric(&lambda), nu) {
            // e_j = (-1)^j P_{n-j}
            let sign_odd = b.iter().enumerate().map(|(j, &bj)| (j as u32 + 1) * bj).sum::<u32>() % 2 == 1;
            let mut mono = Monomial::new();
            for (j, &bj) in b.iter().enumerate().rev() {
                if bj > 0 {
                    mono.push((Var::P((nu - 1 - j) as u32), bj as i32));
                }
            }
            mono.extend(g_mono.iter().copied());
            let c = if sign_odd { -c } else { c };
            out.add_assign(&UniversalSeries::term(&ctx, mono, c));
            if out.len() > super::DEFAULT_TERM_CAP {
                return Err(Error::TruncationOverflow { completed_order: None });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sums_in_elementary() {
        // z1^2 + z2^2 = e1^2 - 2 e2
        let r = to_elementary(monomial_symmetric(&[2, 0]), 2);
        assert_eq!(r[&vec![2, 0]], BigInt::from(1));
        assert_eq!(r[&vec![0, 1]], BigInt::from(-2));
        assert_eq!(r.len(), 2);
        // m_{(1,1,0)} = e2 in three variables
        let r = to_elementary(monomial_symmetric(&[1, 1, 0]), 3);
        assert_eq!(r.len(), 1);
        assert_eq!(r[&vec![0, 1, 0]], BigInt::from(1));
    }

    #[test]
    fn n1_is_substitution_of_the_root() {
        // Σ G_k (-P_0)^k
        let s = respol_symmetric(1, 3, 3).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.coefficient(&[(Var::P(0), 3), (Var::G(3), 1)]), BigInt::from(-1));
        assert_eq!(s.coefficient(&[(Var::P(0), 2), (Var::G(2), 1)]), BigInt::from(1));
    }

    #[test]
    fn n2_linear_g() {
        // G_0^2 - G_0 G_1 P_1 + G_1^2 P_0
        let s = respol_symmetric(2, 2, 1).unwrap();
        assert_eq!(s.context().order(), None);
        assert_eq!(s.len(), 3);
        assert_eq!(s.coefficient(&[(Var::G(0), 2)]), BigInt::from(1));
        assert_eq!(s.coefficient(&[(Var::P(1), 1), (Var::G(0), 1), (Var::G(1), 1)]), BigInt::from(-1));
        assert_eq!(s.coefficient(&[(Var::P(0), 1), (Var::G(1), 2)]), BigInt::from(1));
    }

    #[test]
    fn truncated_when_dmax_is_small() {
        let s = respol_symmetric(2, 3, 4).unwrap();
        assert_eq!(s.context().order(), Some(1));
        assert!(s.terms().all(|(m, _)| s.context().small_degree(m) <= 1));
    }

    #[test]
    fn rejects_large_n() {
        assert!(respol_symmetric(4, 4, 1).is_err());
    }
}
