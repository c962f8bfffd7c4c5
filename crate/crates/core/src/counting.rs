//! Number of twist isoclasses of irreducible `p^N`-dimensional representations.
//!
//! Three independent routes: brute-force enumeration of standard-form tails
//! up to twist-and-shout, the closed-form case analysis, and the `t^N`
//! coefficient of the zeta function.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootlog::PrimePower;
use crate::twistshout::{is_canonical_tail, orbit_period};
use crate::zeta::{series_coefficients, zeta_closed_form};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Orbit size `p^m` to number of orbits of that size.
pub type OrbitCensus = BTreeMap<u64, u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Enumerate,
    ClosedForm,
    Series,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Enumerate, Method::ClosedForm, Method::Series];
}

/// Enumeration settings. `threads = 0` uses the global rayon pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: u64,
    pub threads: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub p: u64,
    #[serde(rename = "N")]
    pub exponent: u32,
    #[serde(serialize_with = "as_decimal")]
    pub r_enumerated: Option<BigUint>,
    #[serde(serialize_with = "as_decimal")]
    pub r_closed_form: Option<BigUint>,
    #[serde(serialize_with = "as_decimal")]
    pub r_series: Option<BigUint>,
    pub orbit_census: Option<OrbitCensus>,
}

fn as_decimal<S: serde::Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl CountReport {
    fn empty(n: usize, p: u64, exponent: u32) -> Self {
        Self {
            n,
            p,
            exponent,
            r_enumerated: None,
            r_closed_form: None,
            r_series: None,
            orbit_census: None,
        }
    }

    /// The computed counts, in enumeration / closed form / series order.
    pub fn values(&self) -> impl Iterator<Item = &BigUint> {
        [&self.r_enumerated, &self.r_closed_form, &self.r_series]
            .into_iter()
            .flatten()
    }

    /// True when every computed count is equal (and at least one was computed).
    pub fn agree(&self) -> bool {
        let mut it = self.values();
        match it.next() {
            Some(first) => it.all(|v| v == first),
            None => false,
        }
    }

    /// The common value when all computed counts agree.
    pub fn r(&self) -> Option<&BigUint> {
        if self.agree() {
            self.values().next()
        } else {
            None
        }
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} p={} N={}", self.n, self.p, self.exponent)?;
        for (label, v) in [
            ("enumerated", &self.r_enumerated),
            ("closed_form", &self.r_closed_form),
            ("series", &self.r_series),
        ] {
            if let Some(v) = v {
                write!(f, " {label}={v}")?;
            }
        }
        Ok(())
    }
}

fn check_inputs(n: usize, p: u64, exponent: u32) -> Result<PrimePower> {
    if n < 2 {
        return Err(Error::ClassTooSmall(n));
    }
    let pp = PrimePower::new(p, exponent)?;
    if (p as u128) < n as u128 {
        return Err(Error::ExceptionalPrime { p, n });
    }
    Ok(pp)
}

/// Size of the tail space `p^{(n-1)N}`.
pub fn tail_space_size(n: usize, p: u64, exponent: u32) -> BigUint {
    BigUint::from(p).pow(exponent * (n as u32 - 1))
}

fn decode_tail(mut index: u64, q: u64, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
}

#[derive(Default)]
struct Tally {
    count: u64,
    census: OrbitCensus,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.count += other.count;
        for (size, k) in other.census {
            *self.census.entry(size).or_default() += k;
        }
        self
    }
}

fn tally_range(pp: PrimePower, len: usize, range: std::ops::Range<u64>) -> Tally {
    let q = pp.dim();
    let mut tail = vec![0u64; len];
    let mut tally = Tally::default();
    for index in range {
        decode_tail(index, q, &mut tail);
        if !tail.iter().any(|&e| e % pp.p() != 0) {
            continue;
        }
        if is_canonical_tail(&tail, q) {
            tally.count += 1;
            *tally.census.entry(orbit_period(&tail, q)).or_default() += 1;
        }
    }
    tally
}

/// Counts twist-and-shout orbits of irreducible standard-form tails by brute force.
pub fn enumerate_isoclasses(n: usize, p: u64, exponent: u32) -> Result<CountReport> {
    enumerate_isoclasses_with(n, p, exponent, EnumerationOptions::default())
}

pub fn enumerate_isoclasses_with(
    n: usize,
    p: u64,
    exponent: u32,
    opts: EnumerationOptions,
) -> Result<CountReport> {
    let pp = check_inputs(n, p, exponent)?;
    let mut report = CountReport::empty(n, p, exponent);
    if exponent == 0 {
        report.r_enumerated = Some(BigUint::one());
        report.orbit_census = Some(OrbitCensus::from([(1, 1)]));
        return Ok(report);
    }
    let total_big = tail_space_size(n, p, exponent);
    let total = match total_big.to_u64() {
        Some(t) if t <= opts.budget => t,
        _ => {
            return Err(Error::BudgetExceeded {
                tails: total_big.to_string(),
                budget: opts.budget,
            })
        }
    };

    let len = n - 1;
    let chunk = (total / 256).max(1024);
    let run = || {
        (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|c| tally_range(pp, len, c * chunk..((c + 1) * chunk).min(total)))
            .reduce(Tally::default, Tally::merge)
    };
    let tally = if opts.threads == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run)
    };
    report.r_enumerated = Some(BigUint::from(tally.count));
    report.orbit_census = Some(tally.census);
    Ok(report)
}

fn rational_pow(p: u64, exp: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p)).pow(exp as i32)
}

fn to_natural(value: BigRational) -> Result<BigUint> {
    if !value.is_integer() {
        return Err(Error::NonIntegral(value.to_string()));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(value.to_string()))
}

/// Orbit counts by size from the case analysis, as exact rationals.
fn case_terms(n: usize, p: u64, exponent: u32) -> Vec<(u32, BigRational)> {
    let n = n as i64;
    let big_n = exponent as i64;
    let one = BigRational::one();
    let unit_share = &one - rational_pow(p, -1);
    let tail_share = &one - rational_pow(p, -(n - 2));
    let mut terms = vec![(exponent, &tail_share * rational_pow(p, (n - 2) * big_n))];
    for ell in 1..big_n {
        let c = &unit_share * &tail_share * rational_pow(p, big_n) * rational_pow(p, (n - 3) * ell);
        terms.push((ell as u32, c));
    }
    terms.push((0, unit_share * rational_pow(p, big_n)));
    terms
}

/// Closed-form count: orbits of size `p^N`, of size `p^ℓ` for `1 <= ℓ < N`, and fixed points.
pub fn closed_form_r(n: usize, p: u64, exponent: u32) -> Result<BigUint> {
    check_inputs(n, p, exponent)?;
    if exponent == 0 {
        return Ok(BigUint::one());
    }
    let total = case_terms(n, p, exponent)
        .into_iter()
        .fold(BigRational::zero(), |acc, (_, c)| acc + c);
    to_natural(total)
}

/// Closed-form orbit census; sizes with no orbits are omitted.
pub fn closed_form_census(n: usize, p: u64, exponent: u32) -> Result<OrbitCensus> {
    let pp = check_inputs(n, p, exponent)?;
    if exponent == 0 {
        return Ok(OrbitCensus::from([(1, 1)]));
    }
    let mut census = OrbitCensus::new();
    for (m, c) in case_terms(n, p, exponent) {
        let c = to_natural(c)?;
        if c.is_zero() {
            continue;
        }
        let c = c
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("orbit count {c} overflows u64")))?;
        *census.entry(pp.power(m)).or_default() += c;
    }
    Ok(census)
}

/// `t^N` coefficient of the zeta function at the prime `p`.
pub fn series_r(n: usize, p: u64, exponent: u32) -> Result<BigUint> {
    check_inputs(n, p, exponent)?;
    let f = zeta_closed_form(n)?.to_rational();
    let coeffs = series_coefficients(&f, p, exponent as usize)?;
    let c = coeffs[exponent as usize].clone();
    c.to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("negative coefficient {c}")))
}

/// Runs the requested methods and collects the results.
pub fn count(n: usize, p: u64, exponent: u32, methods: &[Method]) -> Result<CountReport> {
    count_with(n, p, exponent, methods, EnumerationOptions::default())
}

pub fn count_with(
    n: usize,
    p: u64,
    exponent: u32,
    methods: &[Method],
    opts: EnumerationOptions,
) -> Result<CountReport> {
    check_inputs(n, p, exponent)?;
    let mut report = CountReport::empty(n, p, exponent);
    if methods.contains(&Method::Enumerate) {
        report = enumerate_isoclasses_with(n, p, exponent, opts)?;
    }
    if methods.contains(&Method::ClosedForm) {
        report.r_closed_form = Some(closed_form_r(n, p, exponent)?);
    }
    if methods.contains(&Method::Series) {
        report.r_series = Some(series_r(n, p, exponent)?);
    }
    Ok(report)
}
