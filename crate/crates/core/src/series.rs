//! Truncated power series over `O_K`.
//!
//! A [`PowerSeries`] with X-precision `M` stands for a series known modulo
//! `(π^N, X^M)`. Binary operations truncate to the smaller X-precision; nothing
//! is ever silently extended.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::{same_field, Certified, Coords, Field, OkElement, Valuation};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    field: Field,
    coeffs: Vec<Coords>,
}

impl PowerSeries {
    pub(crate) fn from_raw(field: &Field, coeffs: Vec<Coords>) -> Self {
        PowerSeries { field: field.clone(), coeffs }
    }

    pub(crate) fn raw(&self) -> &[Coords] {
        &self.coeffs
    }

    pub(crate) fn raw_coeff(&self, i: usize) -> &Coords {
        &self.coeffs[i]
    }

    /// Series with the given integer coefficients, zero-padded or truncated to `xprec`.
    pub fn from_ints(field: &Field, coeffs: &[i64], xprec: usize) -> Self {
        let c = (0..xprec)
            .map(|i| coeffs.get(i).map_or_else(|| field.zero_raw(), |&a| field.int_raw(a)))
            .collect();
        Self::from_raw(field, c)
    }

    pub fn from_elements(field: &Field, coeffs: &[OkElement], xprec: usize) -> Result<Self> {
        if coeffs.iter().any(|c| !same_field(c.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        let c = (0..xprec)
            .map(|i| coeffs.get(i).map_or_else(|| field.zero_raw(), |a| a.raw().clone()))
            .collect();
        Ok(Self::from_raw(field, c))
    }

    pub fn from_polynomial(poly: &Polynomial, xprec: usize) -> Self {
        let f = poly.field();
        Self::from_raw(f, (0..xprec).map(|i| poly.raw_coeff(i)).collect())
    }

    pub fn zero(field: &Field, xprec: usize) -> Self {
        Self::from_raw(field, vec![field.zero_raw(); xprec])
    }

    pub fn one(field: &Field, xprec: usize) -> Self {
        Self::monomial(field, 0, xprec)
    }

    /// `X^k` at X-precision `xprec`.
    pub fn monomial(field: &Field, k: usize, xprec: usize) -> Self {
        let mut s = Self::zero(field, xprec);
        if k < xprec {
            s.coeffs[k] = field.one_raw();
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The X-adic precision `M`.
    pub fn xprec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> OkElement {
        OkElement::from_raw(&self.field, self.coeffs[i].clone())
    }

    pub fn coefficients(&self) -> Vec<OkElement> {
        (0..self.xprec()).map(|i| self.coeff(i)).collect()
    }

    /// The known coefficients as a polynomial of degree `< M`.
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_raw(&self.field, self.coeffs.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        Ok(Self::from_raw(f, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add_raw(a, b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        Ok(Self::from_raw(f, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub_raw(a, b)).collect()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.xprec().min(other.xprec());
        Ok(Self::from_raw(&self.field, mul_truncated(&self.field, &self.coeffs, &other.coeffs, m)))
    }

    /// Product with a polynomial, kept at this series' X-precision.
    pub fn mul_polynomial(&self, poly: &Polynomial) -> Result<Self> {
        if !same_field(&self.field, poly.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_raw(&self.field, mul_truncated(&self.field, &self.coeffs, poly.raw(), self.xprec())))
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().map(|c| self.field.neg_raw(c)).collect())
    }

    pub fn scale(&self, a: &OkElement) -> Result<Self> {
        if !same_field(&self.field, a.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_raw(&self.field, self.coeffs.iter().map(|c| self.field.mul_raw(c, a.raw())).collect()))
    }

    /// Keeps the first `xprec` coefficients (`xprec` must not exceed `M`).
    pub fn truncate(&self, xprec: usize) -> Self {
        Self::from_raw(&self.field, self.coeffs[..xprec.min(self.xprec())].to_vec())
    }

    /// Pads with zero coefficients up to `xprec`. Only correct when the
    /// series is known to be a polynomial of degree `< M`.
    pub fn extend_with_zeros(&self, xprec: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(xprec.max(c.len()), self.field.zero_raw());
        Self::from_raw(&self.field, c)
    }

    /// `(f - (f mod X^n)) / X^n`, at X-precision `M - n`.
    pub fn shift_down(&self, n: usize) -> Self {
        Self::from_raw(&self.field, self.coeffs.iter().skip(n).cloned().collect())
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::InsufficientXPrecision { xprec: 0, needed: 0 });
        }
        let f = &self.field;
        Ok(Self::from_raw(
            f,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.scale_int_raw(c, i as u64)).collect(),
        ))
    }

    /// Multiplicative inverse of a series whose constant term is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let f = &self.field;
        let m = self.xprec();
        if m == 0 {
            return Ok(self.clone());
        }
        let c0_inv = f.inv_unit_raw(&self.coeffs[0])?;
        let mut inv: Vec<Coords> = Vec::with_capacity(m);
        inv.push(c0_inv.clone());
        for k in 1..m {
            let s = f.dot_raw((1..=k).map(|i| (&self.coeffs[i], &inv[k - i])));
            inv.push(f.neg_raw(&f.mul_raw(&s, &c0_inv)));
        }
        Ok(Self::from_raw(f, inv))
    }

    /// `self ∘ inner`, for `inner` with zero constant term, at X-precision
    /// `min(M_self, M_inner)`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        let m = self.xprec().min(inner.xprec());
        if m == 0 {
            return Ok(Self::zero(&self.field, 0));
        }
        if !self.field.is_zero_raw(&inner.coeffs[0]) {
            return Err(Error::CompositionDomain);
        }
        let f = &self.field;
        // Horner from the top; the accumulator for step k only matters mod X^{m-k}
        // because it is later multiplied by inner^k = O(X^k).
        let mut acc: Vec<Coords> = vec![self.coeffs[m - 1].clone()];
        for k in (0..m - 1).rev() {
            let len = m - k;
            let mut next = Vec::with_capacity(len);
            next.push(self.coeffs[k].clone());
            for j in 1..len {
                let s = f.dot_raw((1..=j).map(|i| (&inner.coeffs[i], &acc[j - i])));
                next.push(s);
            }
            acc = next;
        }
        Ok(Self::from_raw(f, acc))
    }

    /// `self^{∘k}` by binary powering (iterates of one series commute).
    pub fn iterate(&self, k: u64) -> Result<Self> {
        let mut result = Self::monomial(&self.field, 1, self.xprec());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(result)
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.coeffs.iter().map(|c| self.field.valuation_raw(c)).collect()
    }

    /// Index of the first unit coefficient.
    pub fn wideg(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .position(|c| self.field.is_unit_raw(c))
            .ok_or(Error::WidegNotCertified { xprec: self.xprec() })
    }

    /// Number of roots in the open unit disk of `C_p`, with multiplicity.
    pub fn count_roots_open_disk(&self) -> Result<usize> {
        self.wideg()
    }

    /// Multiplicity of the root `0` that can be seen at this precision: the
    /// index of the first coefficient that is nonzero mod `π^N`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().position(|c| !self.field.is_zero_raw(c)).unwrap_or(self.xprec())
    }

    pub fn newton_polygon(&self) -> Result<NewtonPolygon> {
        let n = self.wideg()?;
        let vals = self.valuations();
        let i0 = self.zero_root_multiplicity();
        let points: Vec<(usize, u32)> = (i0..=n).filter_map(|i| vals[i].finite().map(|v| (i, v))).collect();
        let hull = lower_hull(&points);
        let precision = self.field.precision() as i64;
        let first_unknown = (0..=n).find(|&i| !vals[i].is_finite());

        let mut segments = Vec::new();
        for w in hull.windows(2) {
            let ((a, va), (b, vb)) = (w[0], w[1]);
            let slope = Ratio::new(va as i64 - vb as i64, (b - a) as i64);
            // An unknown coefficient at j < b has valuation >= N; the segment is
            // unaffected as long as its line passes strictly below N there.
            let certified = match first_unknown {
                Some(j) if j < b => Ratio::from_integer(va as i64) + slope * Ratio::from_integer(a as i64 - j as i64)
                    < Ratio::from_integer(precision),
                _ => true,
            };
            segments.push((Segment { slope, length: b - a }, certified));
        }
        let complete = segments.iter().all(|s| s.1);
        let emitted: Vec<Segment> = segments.iter().filter(|s| s.1).map(|s| s.0).collect();
        let certified_up_to = emitted.first().map(|s| s.slope);
        Ok(NewtonPolygon { segments: emitted, certified_up_to, complete, zero_root_multiplicity: i0 })
    }

    /// Evaluates the known coefficients at `z` with `val(z) >= 1`, with the
    /// precision proven in spite of the unknown tail: `min(N, val(z)·M)`.
    pub fn eval_in_disk(&self, z: &OkElement) -> Result<Certified> {
        if !same_field(&self.field, z.field()) {
            return Err(Error::FieldMismatch);
        }
        let vz = z.valuation();
        if vz.lower_bound() == 0 {
            return Err(Error::Precondition("evaluation point must lie in the maximal ideal".into()));
        }
        let value = self.to_polynomial().eval(z);
        let prec = (vz.lower_bound() as usize).saturating_mul(self.xprec()).min(u32::MAX as usize) as u32;
        Ok(Certified::new(value, prec))
    }

    /// Whether `self ≡ other mod (π^N, X^m)` with `m` the smaller X-precision.
    pub fn congruent(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

/// Truncated convolution of two coefficient slices, `m` output terms.
pub(crate) fn mul_truncated(f: &Field, a: &[Coords], b: &[Coords], m: usize) -> Vec<Coords> {
    (0..m)
        .map(|k| {
            if a.is_empty() || b.is_empty() || k > a.len() + b.len() - 2 {
                return f.zero_raw();
            }
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            f.dot_raw((lo..=hi).map(|i| (&a[i], &b[k - i])))
        })
        .collect()
}

/// Lower convex hull of points sorted by abscissa.
fn lower_hull(points: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut hull: Vec<(usize, u32)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 as i64 - o.0 as i64) * (pt.1 as i64 - o.1 as i64)
                - (a.1 as i64 - o.1 as i64) * (pt.0 as i64 - o.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries{:?} + O(X^{})", self.coefficients(), self.xprec())
    }
}

/// One edge of a Newton polygon. `slope` is the common valuation of the roots
/// it accounts for; `length` is their number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub slope: Ratio<i64>,
    pub length: usize,
}

/// Newton polygon of the part of a series that governs its roots in the open
/// unit disk, from the first nonzero coefficient to the Weierstrass degree.
///
/// Segments are listed left to right, so root valuations decrease. A segment
/// is only emitted when no coefficient that is zero at the working precision
/// could pull the hull below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
    /// Largest root valuation among the emitted segments.
    pub certified_up_to: Option<Ratio<i64>>,
    /// Every hull segment was certified.
    pub complete: bool,
    /// Multiplicity of the root 0 seen at this precision (not part of the hull).
    pub zero_root_multiplicity: usize,
}

impl NewtonPolygon {
    /// Number of nonzero roots accounted for by emitted segments.
    pub fn root_count(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn z2(n: u32) -> Field {
        FieldSpec::zp(2, n).unwrap()
    }

    #[test]
    fn products() {
        let f = z2(8);
        let a = PowerSeries::from_ints(&f, &[1, 1], 3);
        let b = PowerSeries::from_ints(&f, &[1, -1], 3);
        assert_eq!(a.mul(&b).unwrap(), PowerSeries::from_ints(&f, &[1, 0, -1], 3));
        assert_eq!(a.mul(&PowerSeries::zero(&f, 3)).unwrap(), PowerSeries::zero(&f, 3));
        let c = PowerSeries::from_ints(&f, &[2, 1], 4);
        assert_eq!(c.mul(&c).unwrap(), PowerSeries::from_ints(&f, &[4, 4, 1], 4));
    }

    #[test]
    fn product_truncates_to_smaller_precision() {
        let f = z2(8);
        let a = PowerSeries::from_ints(&f, &[1, 1], 5);
        let b = PowerSeries::from_ints(&f, &[1, 1], 3);
        assert_eq!(a.mul(&b).unwrap().xprec(), 3);
    }

    #[test]
    fn derivatives() {
        let f = z2(8);
        assert_eq!(PowerSeries::from_ints(&f, &[0, 0, 1], 3).derivative().unwrap(), PowerSeries::from_ints(&f, &[0, 2], 2));
        assert_eq!(PowerSeries::from_ints(&f, &[7], 3).derivative().unwrap(), PowerSeries::zero(&f, 2));
        assert_eq!(
            PowerSeries::from_ints(&f, &[1, 3, 0, 5], 4).derivative().unwrap(),
            PowerSeries::from_ints(&f, &[3, 0, 15], 3)
        );
        assert!(PowerSeries::zero(&f, 0).derivative().is_err());
    }

    #[test]
    fn compositions() {
        let f = z2(8);
        let x = PowerSeries::monomial(&f, 1, 5);
        let a = PowerSeries::from_ints(&f, &[3, 1, 4, 1, 5], 5);
        assert_eq!(a.compose(&x).unwrap(), a);

        let sq = PowerSeries::from_ints(&f, &[0, 0, 1], 4);
        let g = PowerSeries::from_ints(&f, &[0, 1, 1], 4);
        assert_eq!(sq.compose(&g).unwrap(), PowerSeries::from_ints(&f, &[0, 0, 1, 2], 4));

        let h = PowerSeries::from_ints(&f, &[0, 1, 1], 5);
        assert_eq!(h.compose(&h).unwrap(), PowerSeries::from_ints(&f, &[0, 1, 2, 2, 1], 5));

        let bad = PowerSeries::from_ints(&f, &[1, 1], 3);
        assert!(matches!(a.compose(&bad), Err(Error::CompositionDomain)));
    }

    #[test]
    fn iterate_matches_repeated_composition() {
        let f = FieldSpec::zp(3, 6).unwrap();
        let g = PowerSeries::from_ints(&f, &[0, 1, 2, 0, 1, 1], 9);
        let mut manual = g.clone();
        for _ in 1..5 {
            manual = manual.compose(&g).unwrap();
        }
        assert_eq!(g.iterate(5).unwrap(), manual);
        assert_eq!(g.iterate(0).unwrap(), PowerSeries::monomial(&f, 1, 9));
    }

    #[test]
    fn weierstrass_degree() {
        let f = z2(8);
        assert_eq!(PowerSeries::monomial(&f, 3, 6).wideg().unwrap(), 3);
        assert_eq!(PowerSeries::from_ints(&f, &[2, 2, 1, 1], 6).wideg().unwrap(), 2);
        assert!(matches!(
            PowerSeries::from_ints(&f, &[2, 4], 2).wideg(),
            Err(Error::WidegNotCertified { xprec: 2 })
        ));
    }

    #[test]
    fn root_counts() {
        let f = z2(8);
        assert_eq!(PowerSeries::from_ints(&f, &[2, 1], 4).count_roots_open_disk().unwrap(), 1);
        assert_eq!(PowerSeries::from_ints(&f, &[4, 2, 0, 1], 6).count_roots_open_disk().unwrap(), 3);
        assert_eq!(PowerSeries::from_ints(&f, &[3, 2, 2], 6).count_roots_open_disk().unwrap(), 0);
    }

    #[test]
    fn newton_polygons() {
        let f = z2(8);
        let np = PowerSeries::from_ints(&f, &[2, 1], 4).newton_polygon().unwrap();
        assert_eq!(np.segments, vec![Segment { slope: Ratio::from_integer(1), length: 1 }]);

        // Hull of (0,2), (1,1), (3,0).
        let np = PowerSeries::from_ints(&f, &[4, 2, 0, 1], 6).newton_polygon().unwrap();
        assert_eq!(
            np.segments,
            vec![
                Segment { slope: Ratio::from_integer(1), length: 1 },
                Segment { slope: Ratio::new(1, 2), length: 2 },
            ]
        );
        assert!(np.complete);

        let np = PowerSeries::monomial(&f, 4, 6).newton_polygon().unwrap();
        assert!(np.segments.is_empty());
        assert_eq!(np.zero_root_multiplicity, 4);
    }

    #[test]
    fn newton_polygon_withholds_uncertified_segments() {
        // 2^6 X + X^2 at N = 8 with c_0 unknown: the slope-6 edge passes at
        // height 12 over X^0, so c_0 = 2^8 could undercut it.
        let f = z2(8);
        let np = PowerSeries::from_ints(&f, &[0, 64, 1], 4).newton_polygon().unwrap();
        assert!(!np.complete);
        assert!(np.segments.is_empty());
        // 2 X + X^2: height 2 over X^0 stays below N.
        let np = PowerSeries::from_ints(&f, &[0, 2, 1], 4).newton_polygon().unwrap();
        assert!(np.complete);
        assert_eq!(np.root_count(), 1);
        assert_eq!(np.zero_root_multiplicity, 1);
    }
}
