//! Iteration of power series `w(X) = X + Σ_{i≥2} w_i X^i` over `F_p`: lower
//! ramification indices `i_n(w) = i(w^{∘p^n})`, Sen's congruences
//! `i_{n-1} ≡ i_n mod p^n`, and a randomised search for characteristic-zero
//! lifts all of whose iterates `f^{∘p^n}(X) - X` have simple roots.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{Field, OkElement};
use crate::resultant::disc_n;
use crate::series::PowerSeries;

/// `w ∈ F_p[[X]]` of the form `X + w_2 X^2 + …`, known mod `X^M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueSeries {
    p: u64,
    coeffs: Vec<u64>,
}

impl ResidueSeries {
    /// `coeffs` are reduced mod `p` and zero-padded or truncated to `xprec`.
    pub fn new(p: u64, coeffs: &[i64], xprec: usize) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        if xprec < 2 {
            return Err(Error::InsufficientXPrecision { xprec, needed: 1 });
        }
        let c: Vec<u64> = (0..xprec)
            .map(|i| coeffs.get(i).map_or(0, |&a| (a as i128).rem_euclid(p as i128) as u64))
            .collect();
        if c[0] != 0 || c[1] != 1 {
            return Err(Error::Precondition("series must be of the form X + O(X^2)".into()));
        }
        Ok(ResidueSeries { p, coeffs: c })
    }

    /// The identity `X`.
    pub fn identity(p: u64, xprec: usize) -> Result<Self> {
        Self::new(p, &[0, 1], xprec)
    }

    /// Uniformly random higher coefficients.
    pub fn random<R: Rng + ?Sized>(p: u64, xprec: usize, rng: &mut R) -> Result<Self> {
        let mut c: Vec<i64> = (0..xprec).map(|_| rng.gen_range(0..p) as i64).collect();
        c[0] = 0;
        c[1] = 1;
        Self::new(p, &c, xprec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn xprec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `self ∘ inner` mod `X^M`.
    pub fn compose(&self, inner: &Self) -> Self {
        let p = self.p;
        let m = self.xprec().min(inner.xprec());
        let (a, b) = (&self.coeffs, &inner.coeffs);
        // Horner; the step-k accumulator is only needed mod X^{m-k}.
        let mut acc: Vec<u64> = vec![a[m - 1]];
        for k in (0..m - 1).rev() {
            let len = m - k;
            let mut next = Vec::with_capacity(len);
            next.push(a[k]);
            for j in 1..len {
                let s: u128 = (1..=j).map(|i| b[i] as u128 * acc[j - i] as u128).sum();
                next.push((s % p as u128) as u64);
            }
            acc = next;
        }
        ResidueSeries { p, coeffs: acc }
    }

    /// `self^{∘k}`.
    pub fn iterate(&self, k: u64) -> Self {
        let mut result = ResidueSeries::identity(self.p, self.xprec()).expect("valid identity");
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        result
    }

    /// The lift with coefficients in `[0, p)` over `field`.
    pub fn teichmuller_free_lift(&self, field: &Field) -> Result<PowerSeries> {
        if field.p() != self.p {
            return Err(Error::FieldMismatch);
        }
        let c: Vec<i64> = self.coeffs.iter().map(|&a| a as i64).collect();
        Ok(PowerSeries::from_ints(field, &c, self.xprec()))
    }
}

/// `i(w)`, or a lower bound when no `w_m` with `m < M` is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RamificationIndex {
    Finite(u64),
    AtLeast(u64),
}

impl RamificationIndex {
    pub fn finite(self) -> Option<u64> {
        match self {
            RamificationIndex::Finite(i) => Some(i),
            RamificationIndex::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for RamificationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RamificationIndex::Finite(i) => write!(f, "{i}"),
            RamificationIndex::AtLeast(i) => write!(f, ">={i}"),
        }
    }
}

/// `w^{∘p^n}`.
pub fn iterate_p(w: &ResidueSeries, n: u32) -> ResidueSeries {
    w.iterate(w.p.pow(n))
}

/// `m - 1` for the smallest `m >= 2` with `w_m ≠ 0`.
pub fn i_index(w: &ResidueSeries) -> RamificationIndex {
    match w.coeffs.iter().skip(2).position(|&c| c != 0) {
        Some(k) => RamificationIndex::Finite(k as u64 + 1),
        None => RamificationIndex::AtLeast(w.xprec() as u64 - 1),
    }
}

pub fn i_n(w: &ResidueSeries, n: u32) -> RamificationIndex {
    i_index(&iterate_p(w, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SenOutcome {
    Pass,
    Fail,
    /// Both indices exceed the precision, as they do when `w^{∘p^{n-1}} = X`.
    Vacuous,
    /// One index is known and the other is not.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenPair {
    pub n: u32,
    pub i_prev: RamificationIndex,
    pub i: RamificationIndex,
    /// `p^n`.
    pub modulus: u64,
    pub outcome: SenOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenReport {
    pub pairs: Vec<SenPair>,
}

impl SenReport {
    /// No comparison failed (vacuous and indeterminate pairs do not count).
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.outcome != SenOutcome::Fail)
    }

    pub fn determined(&self) -> impl Iterator<Item = &SenPair> {
        self.pairs.iter().filter(|p| matches!(p.outcome, SenOutcome::Pass | SenOutcome::Fail))
    }
}

/// Checks `i_{n-1}(w) ≡ i_n(w) mod p^n` for `1 <= n <= n_max`, reporting
/// undetermined pairs instead of failing on them.
pub fn sen_report(w: &ResidueSeries, n_max: u32) -> SenReport {
    let mut prev_series = w.clone();
    let mut prev = i_index(w);
    let mut pairs = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let cur_series = prev_series.iterate(w.p);
        let cur = i_index(&cur_series);
        let modulus = w.p.pow(n);
        let outcome = match (prev, cur) {
            (RamificationIndex::Finite(a), RamificationIndex::Finite(b)) => {
                if a.abs_diff(b) % modulus == 0 {
                    SenOutcome::Pass
                } else {
                    SenOutcome::Fail
                }
            }
            (RamificationIndex::AtLeast(_), RamificationIndex::AtLeast(_)) => SenOutcome::Vacuous,
            _ => SenOutcome::Indeterminate,
        };
        pairs.push(SenPair { n, i_prev: prev, i: cur, modulus, outcome });
        prev_series = cur_series;
        prev = cur;
    }
    SenReport { pairs }
}

/// Like [`sen_report`], but an undetermined comparison is an error.
pub fn sen_check(w: &ResidueSeries, n_max: u32) -> Result<SenReport> {
    let report = sen_report(w, n_max);
    if let Some(p) = report.pairs.iter().find(|p| p.outcome == SenOutcome::Indeterminate) {
        return Err(Error::IndeterminateAtPrecision { n: p.n, xprec: w.xprec() });
    }
    Ok(report)
}

pub fn sen_corpus(ws: &[ResidueSeries], n_max: u32, exec: Execution) -> Vec<SenReport> {
    exec.map(ws, |w| sen_report(w, n_max))
}

/// `wideg(f^{∘p^n}(X) - X)` for `f ∈ X·O_K[[X]]`.
pub fn wideg_of_iterate_minus_x(f: &PowerSeries, n: u32) -> Result<usize> {
    iterate_minus_x(f, n)?.wideg()
}

fn iterate_minus_x(f: &PowerSeries, n: u32) -> Result<PowerSeries> {
    let field = f.field();
    let it = f.iterate(field.p().pow(n))?;
    it.sub(&PowerSeries::monomial(field, 1, f.xprec()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub lift: PowerSeries,
    /// Index of the accepted candidate; 0 is the lift with digits in `[0, p)`.
    pub candidate: u64,
    pub checked: Vec<u32>,
    /// `val_π Disc_{i_n+1}(f^{∘p^n} - X)` for each checked `n`.
    pub disc_valuations: BTreeMap<u32, u32>,
    /// Precision to which each discriminant was certified.
    pub certified_precision: BTreeMap<u32, u32>,
    pub seed: u64,
    pub budget: u64,
}

/// Candidate `k >= 1` is `w̃ + π h` with `h` drawn from ChaCha8 stream `k` of
/// `seed`, supported on `X^1 … X^s` with `s = min(max_n (i_n + 1), M - 1)`
/// and coefficients uniform mod `π^{N-1}`.
fn candidate(base: &PowerSeries, k: u64, seed: u64, support: usize) -> PowerSeries {
    if k == 0 {
        return base.clone();
    }
    let field = base.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let pi = OkElement::pi_pow(field, 1);
    let precision = field.precision();
    let mut h = vec![OkElement::zero(field); base.xprec()];
    for slot in h.iter_mut().take(support + 1).skip(1) {
        // Uniform mod π^{N-1}: a uniform class mod π^N, then reduced.
        *slot = OkElement::random(field, &mut rng, 0).reduce_precision(precision.saturating_sub(1));
    }
    let h = PowerSeries::from_elements(field, &h, base.xprec()).expect("same field");
    base.add(&h.scale(&pi).expect("same field")).expect("same field")
}

/// Searches for a lift `f` of `w` over `field` such that `f^{∘p^n}(X) - X` has
/// only simple roots in the open unit disk for every `n ∈ ns`.
///
/// The accepted candidate is the one with the smallest index, whatever the
/// execution mode.
pub fn good_lift_search(
    w: &ResidueSeries,
    field: &Field,
    ns: &[u32],
    budget: u64,
    seed: u64,
    exec: Execution,
) -> Result<LiftReport> {
    let base = w.teichmuller_free_lift(field)?;
    let mut ns: Vec<u32> = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut expected = BTreeMap::new();
    for &n in &ns {
        match i_n(w, n) {
            RamificationIndex::Finite(i) => {
                expected.insert(n, i as usize + 1);
            }
            RamificationIndex::AtLeast(_) => {
                return Err(Error::IndeterminateAtPrecision { n, xprec: w.xprec() });
            }
        }
    }
    let report = |lift: PowerSeries, candidate: u64, vals, precs| LiftReport {
        lift,
        candidate,
        checked: ns.clone(),
        disc_valuations: vals,
        certified_precision: precs,
        seed,
        budget,
    };
    if ns.is_empty() {
        return Ok(report(base, 0, BTreeMap::new(), BTreeMap::new()));
    }
    let support = expected.values().copied().max().unwrap_or(1).min(w.xprec() - 1);

    let evaluate = |k: u64| -> Option<Result<LiftReport>> {
        let f = candidate(&base, k, seed, support);
        let mut vals = BTreeMap::new();
        let mut precs = BTreeMap::new();
        for &n in &ns {
            let outcome = iterate_minus_x(&f, n).and_then(|g| {
                let m = g.wideg()?;
                if m != expected[&n] {
                    return Err(Error::Precondition(format!(
                        "wideg of iterate minus X is {m}, expected i_{n}(w) + 1 = {}",
                        expected[&n]
                    )));
                }
                disc_n(&g)
            });
            match outcome {
                Ok(d) => {
                    let v = d.valuation().finite()?;
                    vals.insert(n, v);
                    precs.insert(n, d.precision);
                },
                Err(e) => return Some(Err(e)),
            }
        }
        Some(Ok(report(f, k, vals, precs)))
    };
    match exec.find_first(0..budget, evaluate) {
        Some((_, r)) => r,
        None => Err(Error::BudgetExhausted { budget }),
    }
}

/// Whether every coefficient of `lift` reduces to the matching one of `w`.
pub fn reduces_to(lift: &PowerSeries, w: &ResidueSeries) -> bool {
    lift.field().p() == w.p
        && lift.xprec() == w.xprec()
        && lift.coefficients().iter().zip(&w.coeffs).all(|(c, &r)| c.residue() == r)
}
