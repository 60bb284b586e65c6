//! Truncated universal formulas over `Z`.
//!
//! A [`UniversalSeries`] is a finite sum of monomials with exact integer
//! coefficients. A designated set of "small" variables carries a truncation
//! order `D`: monomials whose small-degree exceeds `D` are discarded, so a
//! series stands for its class modulo the ideal generated by the small
//! variables to the power `D + 1`. One variable may be inverted; its negative
//! powers are written `V^k` and cancel against positive ones on
//! multiplication.

mod prepare;
mod symmetric;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{same_field, Certified, OkElement, Valuation};
use crate::series::PowerSeries;

pub use prepare::{bgw_p0, compare_bgw_with_prepare, universal_prepare, universal_prepare_with, BgwComparison, UniversalPreparation};
pub use symmetric::respol_symmetric;

/// Default bound on the number of terms in a single series.
pub const DEFAULT_TERM_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Coefficient `F_k` of the universal series `F(X) = Σ F_k X^k`.
    F(u32),
    /// Coefficient `P_i` of a distinguished polynomial.
    P(u32),
    /// Coefficient `G_k` of the series `g` in a resultant.
    G(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::F(k) => write!(f, "F{k}"),
            Var::P(k) => write!(f, "P{k}"),
            Var::G(k) => write!(f, "G{k}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UncoveredVariable(s.to_string());
        let (head, idx) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let k: u32 = idx.parse().map_err(|_| bad())?;
        match head {
            "F" => Ok(Var::F(k)),
            "P" => Ok(Var::P(k)),
            "G" => Ok(Var::G(k)),
            _ => Err(bad()),
        }
    }
}

/// Sparse exponent vector, sorted by variable, without zero entries.
pub type Monomial = SmallVec<[(Var, i32); 4]>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let e = a[i].1 + b[j].1;
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Which variables are small, which one is inverted, and the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    small: Vec<Var>,
    inverted: Option<Var>,
    order: Option<u32>,
    term_cap: usize,
}

impl Context {
    /// `order = None` means no truncation: the series are exact polynomials.
    pub fn new(small: Vec<Var>, inverted: Option<Var>, order: Option<u32>) -> Arc<Self> {
        Self::with_term_cap(small, inverted, order, DEFAULT_TERM_CAP)
    }

    pub fn with_term_cap(mut small: Vec<Var>, inverted: Option<Var>, order: Option<u32>, term_cap: usize) -> Arc<Self> {
        small.sort_unstable();
        small.dedup();
        Arc::new(Context { small, inverted, order, term_cap })
    }

    pub fn small(&self) -> &[Var] {
        &self.small
    }

    pub fn inverted(&self) -> Option<Var> {
        self.inverted
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    pub fn small_degree(&self, m: &Monomial) -> u32 {
        m.iter().filter(|(v, _)| self.small.binary_search(v).is_ok()).map(|&(_, e)| e as u32).sum()
    }

    fn keeps(&self, small_degree: u32) -> bool {
        self.order.is_none_or(|d| small_degree <= d)
    }

    /// Display name and exponent of one factor; negative powers of the
    /// inverted variable are named `V`.
    pub fn factor_name(&self, v: Var, e: i32) -> (String, u32) {
        if e < 0 {
            ("V".to_string(), e.unsigned_abs())
        } else {
            (v.to_string(), e as u32)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSeries {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl UniversalSeries {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        UniversalSeries { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<Context>, c: impl Into<BigInt>) -> Self {
        Self::term(ctx, Monomial::new(), c)
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, 1)
    }

    /// `v^e`; only the inverted variable may have `e < 0`.
    pub fn var_pow(ctx: &Arc<Context>, v: Var, e: i32) -> Self {
        assert!(e >= 0 || ctx.inverted == Some(v), "{v} is not invertible");
        let mono: Monomial = if e == 0 { Monomial::new() } else { [(v, e)].into_iter().collect() };
        Self::term(ctx, mono, 1)
    }

    pub fn var(ctx: &Arc<Context>, v: Var) -> Self {
        Self::var_pow(ctx, v, 1)
    }

    /// A single term, dropped if it lies beyond the truncation order.
    pub fn term(ctx: &Arc<Context>, mono: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut s = Self::zero(ctx);
        if !c.is_zero() && ctx.keeps(ctx.small_degree(&mono)) {
            s.terms.insert(mono, c);
        }
        s
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &[(Var, i32)]) -> BigInt {
        let key: Monomial = mono.iter().copied().collect();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&[])
    }

    /// Terms sorted by total degree, then by exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| m.iter().map(|&(_, e)| e.unsigned_abs()).sum::<u32>());
        v
    }

    /// Least small-degree of a term, or `None` for zero.
    pub fn min_small_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ctx.small_degree(m)).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            add_term(&mut self.terms, m.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniversalSeries { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        UniversalSeries { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Truncated product; fails with [`Error::TruncationOverflow`] past the
    /// term cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ctx = &self.ctx;
        let degs: Vec<u32> = other.terms.keys().map(|m| ctx.small_degree(m)).collect();
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ctx.small_degree(ma);
            for ((mb, cb), &db) in other.terms.iter().zip(&degs) {
                if !ctx.keeps(da + db) {
                    continue;
                }
                add_term(&mut terms, mono_mul(ma, mb), &(ca * cb));
            }
            if terms.len() > ctx.term_cap {
                return Err(Error::TruncationOverflow { completed_order: None });
            }
        }
        Ok(UniversalSeries { ctx: ctx.clone(), terms })
    }

    /// Evaluates at `assignment`.
    ///
    /// The value is certified modulo `π^{min(N, (D+1)·v)}`, `v` the least
    /// valuation of the values assigned to small variables, or modulo `π^N`
    /// when the series is exact.
    pub fn specialize(&self, assignment: &BTreeMap<Var, OkElement>) -> Result<Certified> {
        specialize(self, assignment)
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: &BigInt) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for UniversalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_empty() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m {
                let (name, k) = self.ctx.factor_name(v, e);
                factors.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        if let Some(d) = self.ctx.order {
            write!(f, " + O(deg {})", d + 1)?;
        }
        Ok(())
    }
}

/// See [`UniversalSeries::specialize`].
pub fn specialize(s: &UniversalSeries, assignment: &BTreeMap<Var, OkElement>) -> Result<Certified> {
    let Some(first) = assignment.values().next() else {
        return match s.terms.keys().flat_map(|m| m.iter()).next() {
            Some(&(v, _)) => Err(Error::UncoveredVariable(v.to_string())),
            None => Err(Error::Precondition("specialization needs a field".into())),
        };
    };
    let field = first.field().clone();
    if assignment.values().any(|x| !same_field(x.field(), &field)) {
        return Err(Error::FieldMismatch);
    }
    let ctx = &s.ctx;
    let n = field.precision();
    let mut min_small = Valuation::AtLeast(n);
    for v in &ctx.small {
        if let Some(x) = assignment.get(v) {
            let val = x.valuation();
            if val.lower_bound() == 0 {
                return Err(Error::Precondition(format!("{v} must have positive valuation")));
            }
            min_small = min_small.min(val);
        }
    }
    let mut inverse = None;
    if let Some(v) = ctx.inverted {
        if let Some(x) = assignment.get(&v) {
            inverse = Some(x.invert_unit()?);
        }
    }
    let precision = match ctx.order {
        None => n,
        Some(d) => n.min(((d as u64 + 1) * min_small.lower_bound() as u64).min(n as u64) as u32),
    };

    let mut acc = OkElement::zero(&field);
    for (m, c) in &s.terms {
        let mut t = OkElement::from_bigint(&field, c);
        for &(v, e) in m {
            let base = if e < 0 {
                inverse.as_ref().ok_or_else(|| Error::UncoveredVariable("V".into()))?
            } else {
                assignment.get(&v).ok_or_else(|| Error::UncoveredVariable(v.to_string()))?
            };
            t = &t * &base.pow(e.unsigned_abs() as u64);
        }
        acc = &acc + &t;
    }
    Ok(Certified::new(acc, precision))
}

/// `F_k ↦ f_k` for `k <= kmax` below the X-precision of `f`.
pub fn coefficient_assignment(f: &PowerSeries, kmax: u32) -> BTreeMap<Var, OkElement> {
    (0..=kmax as usize).take_while(|&k| k < f.xprec()).map(|k| (Var::F(k as u32), f.coeff(k))).collect()
}

/// `P_i ↦ p_i` and `G_k ↦ g_k` for `k <= gmax` below the X-precision of `g`.
pub fn resultant_assignment(p: &[OkElement], g: &PowerSeries, gmax: u32) -> BTreeMap<Var, OkElement> {
    let mut a: BTreeMap<Var, OkElement> = p.iter().enumerate().map(|(i, x)| (Var::P(i as u32), x.clone())).collect();
    a.extend((0..=gmax as usize).take_while(|&k| k < g.xprec()).map(|k| (Var::G(k as u32), g.coeff(k))));
    a
}
