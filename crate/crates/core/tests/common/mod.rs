//! Generators and independent reference computations shared by the
//! integration tests. Nothing here calls the library's multiplication,
//! division or determinant code.

#![allow(dead_code)]

use padic_series::{Field, FieldSpec, OkElement, PowerSeries};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn zp(p: u64, n: u32) -> Field {
    FieldSpec::zp(p, n).unwrap()
}

/// `Z_2[π]/(π² - 2)`.
pub fn ramified2(n: u32) -> Field {
    FieldSpec::new(2, vec![-2, 0, 1], n).unwrap()
}

/// `Z_3[π]/(π² + 3)`.
pub fn ramified3(n: u32) -> Field {
    FieldSpec::new(3, vec![3, 0, 1], n).unwrap()
}

pub fn elem(f: &Field, a: i64) -> OkElement {
    OkElement::from_int(f, a)
}

pub fn random_nonunit<R: Rng>(f: &Field, rng: &mut R) -> OkElement {
    OkElement::random(f, rng, 1)
}

pub fn random_unit<R: Rng>(f: &Field, rng: &mut R) -> OkElement {
    loop {
        let x = OkElement::random(f, rng, 0);
        if x.is_unit() {
            return x;
        }
    }
}

pub fn random_series<R: Rng>(f: &Field, m: usize, rng: &mut R) -> PowerSeries {
    let c: Vec<OkElement> = (0..m).map(|_| OkElement::random(f, rng, 0)).collect();
    PowerSeries::from_elements(f, &c, m).unwrap()
}

pub fn random_unit_series<R: Rng>(f: &Field, m: usize, rng: &mut R) -> PowerSeries {
    let mut c: Vec<OkElement> = (0..m).map(|_| OkElement::random(f, rng, 0)).collect();
    c[0] = random_unit(f, rng);
    PowerSeries::from_elements(f, &c, m).unwrap()
}

/// A series with certified Weierstrass degree `n`.
pub fn random_with_wideg<R: Rng>(f: &Field, n: usize, m: usize, rng: &mut R) -> PowerSeries {
    let c: Vec<OkElement> = (0..m)
        .map(|i| match i.cmp(&n) {
            std::cmp::Ordering::Less => random_nonunit(f, rng),
            std::cmp::Ordering::Equal => random_unit(f, rng),
            std::cmp::Ordering::Greater => OkElement::random(f, rng, 0),
        })
        .collect();
    PowerSeries::from_elements(f, &c, m).unwrap()
}

pub fn series(f: &Field, c: &[OkElement], m: usize) -> PowerSeries {
    PowerSeries::from_elements(f, c, m).unwrap()
}

/// Schoolbook product of coefficient lists, truncated to `len`.
pub fn naive_mul(a: &[OkElement], b: &[OkElement], len: usize) -> Vec<OkElement> {
    let f = a.first().or(b.first()).unwrap().field().clone();
    let mut out = vec![OkElement::zero(&f); len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// `Σ c_k z^k` term by term.
pub fn naive_eval(c: &[OkElement], z: &OkElement) -> OkElement {
    let f = z.field();
    c.iter().enumerate().fold(OkElement::zero(f), |acc, (k, a)| &acc + &(a * &z.pow(k as u64)))
}

/// `∏ (X - z_i)`, constant term first.
pub fn poly_from_roots(f: &Field, roots: &[OkElement]) -> Vec<OkElement> {
    roots.iter().fold(vec![OkElement::one(f)], |acc, z| naive_mul(&acc, &[-z.clone(), OkElement::one(f)], acc.len() + 1))
}

/// Permutation expansion of the determinant.
pub fn leibniz_det(rows: &[Vec<OkElement>], f: &Field) -> OkElement {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = OkElement::zero(f);
    // Heap's algorithm; each swap flips the sign.
    let mut c = vec![0usize; n];
    let mut sign_even = true;
    let term = |perm: &[usize]| perm.iter().enumerate().fold(OkElement::one(f), |t, (i, &j)| &t * &rows[i][j]);
    acc = &acc + &term(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign_even = !sign_even;
            let t = term(&perm);
            acc = if sign_even { &acc + &t } else { &acc - &t };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

/// Sylvester resultant of `a` and `b` (constant term first, nonzero leading
/// coefficients). For monic `a` this is `∏_{a(z)=0} b(z)`.
pub fn sylvester_resultant(a: &[OkElement], b: &[OkElement]) -> OkElement {
    let f = a[0].field().clone();
    let (m, k) = (a.len() - 1, b.len() - 1);
    let size = m + k;
    let mut rows = Vec::with_capacity(size);
    for r in 0..k {
        let mut row = vec![OkElement::zero(&f); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[r + j] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![OkElement::zero(&f); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[r + j] = c.clone();
        }
        rows.push(row);
    }
    leibniz_det(&rows, &f)
}

pub fn derivative(c: &[OkElement]) -> Vec<OkElement> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * &elem(a.field(), k as i64)).collect()
}

/// `a ∘ b` mod `X^len` as `Σ a_k b^k`.
pub fn naive_compose(a: &[OkElement], b: &[OkElement], len: usize) -> Vec<OkElement> {
    let f = a[0].field().clone();
    let mut out = vec![OkElement::zero(&f); len];
    let mut power = vec![OkElement::zero(&f); len];
    power[0] = OkElement::one(&f);
    for ak in a.iter().take(len) {
        for (o, pk) in out.iter_mut().zip(&power) {
            *o = &*o + &(ak * pk);
        }
        power = naive_mul(&power, b, len);
    }
    out
}

/// Composition over `F_p` as `Σ a_k b^k`.
pub fn naive_compose_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().min(b.len());
    let mut out = vec![0u64; len];
    let mut power = vec![0u64; len];
    power[0] = 1;
    for &ak in a.iter().take(len) {
        for (o, &pk) in out.iter_mut().zip(&power) {
            *o = (*o + ak * pk) % p;
        }
        let mut next = vec![0u64; len];
        for (i, &x) in power.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate().take(len - i) {
                next[i + j] = (next[i + j] + x * y) % p;
            }
        }
        power = next;
    }
    out
}
