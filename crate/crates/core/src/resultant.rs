//! Resultants and discriminants of power series over `O_K`.
//!
//! `Res_n(f, g)` is the product of `g` over the `n = wideg(f)` roots of `f` in
//! the open unit disk. With `f = p·u` prepared, it equals the norm of `g` in
//! `O_K[X]/(p)`: the determinant of multiplication by `g mod p`, which is a
//! polynomial in the coefficients and therefore exact modulo `π^N`.

use crate::error::{Error, Result};
use crate::field::{same_field, Certified, Coords, OkElement};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::series::PowerSeries;
use crate::weierstrass::{tail_precision, weierstrass_prepare, DistinguishedPoly};

/// `g mod p`, valid modulo `π^precision`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub remainder: Polynomial,
    pub precision: u32,
}

/// Reduces `g` modulo the distinguished polynomial `p`.
///
/// `X^{nk} mod p` has all coefficients in `π^k`, so only the terms of degree
/// `< n·N` matter and the unknown tail beyond `X^M` costs precision
/// `⌊M/n⌋`.
pub fn reduce_mod_distinguished(g: &PowerSeries, p: &DistinguishedPoly) -> Result<Reduced> {
    if !same_field(g.field(), p.field()) {
        return Err(Error::FieldMismatch);
    }
    let field = g.field();
    let n = p.degree();
    if n == 0 {
        return Ok(Reduced { remainder: Polynomial::zero(field), precision: field.precision() });
    }
    let keep = g.xprec().min(n.saturating_mul(field.precision() as usize));
    let head = Polynomial::from_raw(field, g.raw()[..keep].to_vec());
    let (_, remainder) = head.divrem_monic(&p.to_polynomial())?;
    Ok(Reduced { remainder, precision: tail_precision(field, n, g.xprec()) })
}

/// Matrix of multiplication by `h` on `O_K[X]/(p)` in the basis `1, X, …, X^{n-1}`.
fn multiplication_matrix(h: &Polynomial, p: &DistinguishedPoly) -> Matrix {
    let field = p.field();
    let n = p.degree();
    let lows: Vec<Coords> = p.lows().iter().map(|c| c.raw().clone()).collect();
    let mut col: Vec<Coords> = (0..n).map(|i| h.raw_coeff(i)).collect();
    let mut entries = vec![field.zero_raw(); n * n];
    for j in 0..n {
        for i in 0..n {
            entries[i * n + j] = col[i].clone();
        }
        // col <- X·col mod p
        let top = col.pop().expect("n >= 1");
        col.insert(0, field.zero_raw());
        for (c, low) in col.iter_mut().zip(&lows) {
            let prod = field.mul_raw(&top, low);
            field.sub_assign_raw(c, &prod);
        }
    }
    Matrix::from_raw(field, n, entries)
}

/// `∏_{p(z)=0} g(z)`.
pub fn respol(p: &DistinguishedPoly, g: &PowerSeries) -> Result<Certified> {
    let field = g.field();
    if p.degree() == 0 {
        return Ok(Certified::new(OkElement::one(field), field.precision()));
    }
    let reduced = reduce_mod_distinguished(g, p)?;
    let det = multiplication_matrix(&reduced.remainder, p).determinant();
    Ok(Certified::new(det, reduced.precision))
}

/// `Res_n(f, g)` for `n = wideg(f)`; the empty product `1` when `n = 0`.
pub fn res_n(f: &PowerSeries, g: &PowerSeries) -> Result<Certified> {
    if !same_field(f.field(), g.field()) {
        return Err(Error::FieldMismatch);
    }
    let prep = weierstrass_prepare(f)?;
    let r = respol(&prep.p, g)?;
    let precision = r.precision.min(prep.certified_precision);
    Ok(Certified::new(r.value, precision))
}

/// `Disc_n(f) = Res_n(f, f')`.
pub fn disc_n(f: &PowerSeries) -> Result<Certified> {
    res_n(f, &f.derivative()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonRootVerdict {
    /// The resultant is certified nonzero.
    NoCommonRoot { resultant: Certified },
    /// The resultant vanishes modulo `π^precision`; zero cannot be certified.
    PossibleCommonRoot { precision: u32 },
}

pub fn common_root_test(f: &PowerSeries, g: &PowerSeries) -> Result<CommonRootVerdict> {
    let r = res_n(f, g)?;
    Ok(if r.is_certified_nonzero() {
        CommonRootVerdict::NoCommonRoot { resultant: r }
    } else {
        CommonRootVerdict::PossibleCommonRoot { precision: r.precision }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldSpec, Valuation};

    fn z2(n: u32) -> Field {
        FieldSpec::zp(2, n).unwrap()
    }

    fn dp(f: &Field, lows: &[i64]) -> DistinguishedPoly {
        DistinguishedPoly::new(f, lows.iter().map(|&a| OkElement::from_int(f, a)).collect()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = z2(8);
        let p = dp(&f, &[2, 4]);
        let g = PowerSeries::from_ints(&f, &[1, 3], 20);
        assert_eq!(reduce_mod_distinguished(&g, &p).unwrap().remainder, Polynomial::from_ints(&f, &[1, 3]));

        let p = dp(&f, &[2]);
        let g = PowerSeries::from_ints(&f, &[0, 0, 1], 20);
        assert_eq!(reduce_mod_distinguished(&g, &p).unwrap().remainder, Polynomial::from_ints(&f, &[4]));
    }

    #[test]
    fn reduction_of_geometric_series() {
        // Σ X^k at X = -2 mod 16: 1 - 2 + 4 - 8 = -5.
        let f = z2(4);
        let g = PowerSeries::from_ints(&f, &[1; 8], 8);
        let r = reduce_mod_distinguished(&g, &dp(&f, &[2])).unwrap();
        assert_eq!(r.precision, 4);
        assert_eq!(r.remainder, Polynomial::from_ints(&f, &[11]));
    }

    #[test]
    fn short_series_lose_precision() {
        let f = z2(10);
        let g = PowerSeries::from_ints(&f, &[1; 6], 6);
        let r = reduce_mod_distinguished(&g, &dp(&f, &[2, 2])).unwrap();
        assert_eq!(r.precision, 3);
    }

    #[test]
    fn respol_examples() {
        let f = z2(10);
        assert_eq!(respol(&dp(&f, &[8, -6]), &PowerSeries::one(&f, 30)).unwrap().value, OkElement::one(&f));
        let g = PowerSeries::from_ints(&f, &[1, 1], 30);
        assert_eq!(respol(&dp(&f, &[8, -6]), &g).unwrap().value, OkElement::from_int(&f, 15));
        // (X-2)(X-4)(X-6) = X³ - 12X² + 44X - 48
        let x = PowerSeries::monomial(&f, 1, 30);
        assert_eq!(respol(&dp(&f, &[-48, 44, -12]), &x).unwrap().value, OkElement::from_int(&f, 48));
    }

    #[test]
    fn res_n_examples() {
        let f = z2(8);
        let x = PowerSeries::monomial(&f, 1, 10);
        let g = PowerSeries::from_ints(&f, &[5, 3, 7], 10);
        assert_eq!(res_n(&x, &g).unwrap().value, OkElement::from_int(&f, 5));

        let unit = PowerSeries::from_ints(&f, &[1, 2], 10);
        assert_eq!(res_n(&unit, &g).unwrap().value, OkElement::one(&f));

        let h = PowerSeries::from_ints(&f, &[-2, 0, 1], 20);
        assert_eq!(res_n(&h, &h).unwrap().valuation(), Valuation::AtLeast(8));
    }

    #[test]
    fn discriminant_examples() {
        let f = z2(8);
        assert!(disc_n(&PowerSeries::monomial(&f, 2, 20)).unwrap().value.is_zero());
        let d = disc_n(&PowerSeries::from_ints(&f, &[-2, 0, 1], 20)).unwrap();
        assert_eq!(d.precision, 8);
        assert_eq!(d.value, OkElement::from_int(&f, 248));
        let d = disc_n(&PowerSeries::from_ints(&f, &[8, -6, 1], 20)).unwrap();
        assert_eq!(d.value, OkElement::from_int(&f, -4));
    }

    #[test]
    fn common_root_verdicts() {
        let f = z2(8);
        let a = PowerSeries::from_ints(&f, &[2, 1], 10);
        let b = PowerSeries::from_ints(&f, &[1, 1], 10);
        match common_root_test(&a, &b).unwrap() {
            CommonRootVerdict::NoCommonRoot { resultant } => {
                assert_eq!(resultant.value, OkElement::from_int(&f, -1))
            }
            v => panic!("unexpected {v:?}"),
        }
        let h = PowerSeries::from_ints(&f, &[-2, 0, 1], 20);
        assert!(matches!(common_root_test(&h, &h).unwrap(), CommonRootVerdict::PossibleCommonRoot { .. }));
        let x = PowerSeries::monomial(&f, 1, 10);
        assert!(matches!(
            common_root_test(&x, &PowerSeries::one(&f, 10)).unwrap(),
            CommonRootVerdict::NoCommonRoot { .. }
        ));
    }
}
