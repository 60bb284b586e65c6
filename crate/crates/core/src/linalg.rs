//! Division-free linear algebra over `O_K/π^N`.
//!
//! `O_K/π^N` has zero divisors, so elimination with pivots is unreliable.
//! Berkowitz's algorithm computes the characteristic polynomial using only
//! ring operations, and the determinant falls out of its constant term.

use crate::field::{Coords, Field, OkElement};

/// Square matrix over `O_K`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Vec<Coords>,
}

impl Matrix {
    pub(crate) fn from_raw(field: &Field, n: usize, entries: Vec<Coords>) -> Self {
        assert_eq!(entries.len(), n * n);
        Matrix { field: field.clone(), n, entries }
    }

    pub fn from_elements(field: &Field, rows: &[Vec<OkElement>]) -> Self {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "matrix must be square");
                r.iter().map(|x| x.raw().clone())
            })
            .collect();
        Self::from_raw(field, n, entries)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> OkElement {
        OkElement::from_raw(&self.field, self.at(i, j).clone())
    }

    fn at(&self, i: usize, j: usize) -> &Coords {
        &self.entries[i * self.n + j]
    }

    /// Coefficients `c_0 = 1, c_1, …, c_n` of `det(λI - A) = Σ c_k λ^{n-k}`.
    pub fn charpoly(&self) -> Vec<OkElement> {
        berkowitz(self).into_iter().map(|c| OkElement::from_raw(&self.field, c)).collect()
    }

    pub fn determinant(&self) -> OkElement {
        let f = &self.field;
        let c = berkowitz(self);
        let last = c[self.n].clone();
        let det = if self.n.is_multiple_of(2) { last } else { f.neg_raw(&last) };
        OkElement::from_raw(f, det)
    }
}

fn berkowitz(a: &Matrix) -> Vec<Coords> {
    let f = &a.field;
    let n = a.n;
    if n == 0 {
        return vec![f.one_raw()];
    }
    let mut v: Vec<Coords> = vec![f.one_raw(), f.neg_raw(a.at(0, 0))];
    for r in 1..n {
        // Leading r×r block A_r, row R = a[r][..r], column C = a[..r][r].
        let mut t: Vec<Coords> = Vec::with_capacity(r + 2);
        t.push(f.one_raw());
        t.push(f.neg_raw(a.at(r, r)));
        let mut w: Vec<Coords> = (0..r).map(|i| a.at(i, r).clone()).collect();
        for k in 0..r {
            let rw = f.dot_raw((0..r).map(|j| (a.at(r, j), &w[j])));
            t.push(f.neg_raw(&rw));
            if k + 1 < r {
                w = (0..r).map(|i| f.dot_raw((0..r).map(|j| (a.at(i, j), &w[j])))).collect();
            }
        }
        let next: Vec<Coords> =
            (0..r + 2).map(|i| f.dot_raw((0..=i.min(r)).map(|j| (&t[i - j], &v[j])))).collect();
        v = next;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Leibniz expansion over all permutations.
    fn leibniz(m: &Matrix) -> OkElement {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let f = &m.field;
        let mut acc = OkElement::zero(f);
        for p in perms(m.n) {
            let inversions = (0..m.n).flat_map(|i| (i + 1..m.n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = OkElement::one(f);
            for (i, &j) in p.iter().enumerate() {
                term = &term * &m.get(i, j);
            }
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn determinant_matches_permutation_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [FieldSpec::zp(2, 12).unwrap(), FieldSpec::zp(5, 7).unwrap(), FieldSpec::new(3, vec![3, 0, 1], 9).unwrap()] {
            for n in 0..=5 {
                let rows: Vec<Vec<OkElement>> =
                    (0..n).map(|_| (0..n).map(|_| OkElement::random(&field, &mut rng, 0)).collect()).collect();
                let m = Matrix::from_elements(&field, &rows);
                assert_eq!(m.determinant(), leibniz(&m), "n = {n} over {field}");
            }
        }
    }

    #[test]
    fn charpoly_of_diagonal() {
        let f = FieldSpec::zp(7, 5).unwrap();
        let e = |a| OkElement::from_int(&f, a);
        let m = Matrix::from_elements(&f, &[vec![e(2), e(0)], vec![e(0), e(3)]]);
        // (λ-2)(λ-3) = λ² - 5λ + 6
        assert_eq!(m.charpoly(), vec![e(1), e(-5), e(6)]);
    }
}
