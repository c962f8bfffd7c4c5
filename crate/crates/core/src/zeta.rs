//! Exact rational functions in `p` and `t = p^{-s}`, and the p-local
//! representation zeta functions of `M_n` for `p >= n`:
//!
//! ```text
//! ζ(s) = (1 - t)^2 / ((1 - p^{n-2} t)(1 - p t))
//! ```
//!
//! Two representations are used. [`BivariateRationalFunction`] is a plain
//! numerator/denominator pair of Laurent polynomials with integer coefficients;
//! equality is decided by cross-multiplication. [`FactoredRational`] keeps a
//! monomial unit and lists of factors `(1 - p^a t^b)`, which makes cancellation,
//! the variable inversion `(p, t) -> (1/p, 1/t)`, and reading off poles exact
//! without any polynomial factorization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Laurent polynomial in `p` and `t` with integer coefficients; keys are `(p-exponent, t-exponent)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coef: impl Into<BigInt>, p_exp: i64, t_exp: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(coef.into(), p_exp, t_exp);
        out
    }

    /// `1 - p^a t^b`.
    pub fn one_minus(p_exp: i64, t_exp: i64) -> Self {
        Self::one() - Self::monomial(1, p_exp, t_exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, i64, i64)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (c, a, b) in terms {
            out.add_term(c.into(), a, b);
        }
        out
    }

    fn add_term(&mut self, coef: BigInt, p_exp: i64, t_exp: i64) {
        if coef.is_zero() {
            return;
        }
        let key = (p_exp, t_exp);
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms in lexicographic `(p-exponent, t-exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, i64, i64)> {
        self.terms.iter().map(|(&(a, b), c)| (c, a, b))
    }

    pub fn coefficient(&self, p_exp: i64, t_exp: i64) -> BigInt {
        self.terms.get(&(p_exp, t_exp)).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift(&self, p_exp: i64, t_exp: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + p_exp, b + t_exp), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Substitutes `p -> 1/p`, `t -> 1/t`.
    pub fn invert_variables(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((-a, -b), c.clone()))
                .collect(),
        }
    }

    /// Smallest `p` and `t` exponents occurring (independently).
    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let a = self.terms.keys().map(|k| k.0).min()?;
        let b = self.terms.keys().map(|k| k.1).min()?;
        Some((a, b))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient by `1 - p^a t^b`, or `None` if it does not divide.
    pub fn div_exact_factor(&self, factor: Factor) -> Option<Self> {
        // Long division with the monomial order in which p^a t^b leads: compare
        // t-exponents first, then p-exponents.
        let (a, b) = (factor.p_exp, factor.t_exp);
        let key = |&(pe, te): &(i64, i64)| (te, pe);
        let (floor_p, floor_t) = self.min_exponents().unwrap_or((0, 0));
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&lead, coef)) = rem.terms.iter().max_by_key(|(k, _)| key(k)) {
            let (pe, te) = lead;
            let (qp, qt) = (pe - a, te - b);
            if qt < floor_t || (b == 0 && qp < floor_p) {
                return None;
            }
            // lead = c p^{pe} t^{te} = (-c p^{qp} t^{qt}) * (-p^a t^b)
            let q_coef = -coef.clone();
            quot.add_term(q_coef.clone(), qp, qt);
            rem.add_term(-q_coef.clone(), qp, qt);
            rem.add_term(q_coef, qp + a, qt + b);
        }
        Some(quot)
    }

    /// Substitutes the integer `p` and groups by powers of `t`.
    pub fn specialize_p(&self, p: u64) -> BTreeMap<i64, BigRational> {
        let base = BigRational::from_integer(BigInt::from(p));
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let v = BigRational::from_integer(c.clone()) * base.pow(a as i32);
            let e = out.entry(b).or_insert_with(BigRational::zero);
            *e += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(c.clone(), a, b);
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(c1 * c2, a1 + a2, b1 + b2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $m(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        -&self
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // descending t, then descending p reads naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(x, _)| (x.1, x.0));
        for (idx, (&(a, b), c)) in terms.iter().enumerate() {
            let body = monomial_body(a, b);
            let mag = c.abs();
            let coef = match (mag.is_one(), body.is_empty()) {
                (true, false) => String::new(),
                (_, true) => mag.to_string(),
                (false, false) => format!("{mag} "),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, "{lead}{coef}{body}")?;
            } else {
                write!(f, " {sign} {coef}{body}")?;
            }
        }
        Ok(())
    }
}

fn monomial_body(p_exp: i64, t_exp: i64) -> String {
    let part = |name: &str, e: i64| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [part("p", p_exp), part("t", t_exp)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" ")
}

/// The factor `1 - p^a t^b`, oriented so that `b > 0`, or `b = 0` and `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub p_exp: i64,
    pub t_exp: i64,
}

impl Factor {
    /// `1 - p^a t^b = unit * factor` with `factor` in canonical orientation.
    pub fn oriented(p_exp: i64, t_exp: i64) -> Result<(Monomial, Factor)> {
        match (t_exp.cmp(&0), p_exp.cmp(&0)) {
            (Ordering::Equal, Ordering::Equal) => Err(Error::InvalidArgument(
                "1 - p^0 t^0 is the zero factor".to_string(),
            )),
            (Ordering::Greater, _) | (Ordering::Equal, Ordering::Greater) => {
                Ok((Monomial::one(), Factor { p_exp, t_exp }))
            }
            _ => Ok((
                Monomial::new(-1, p_exp, t_exp),
                Factor {
                    p_exp: -p_exp,
                    t_exp: -t_exp,
                },
            )),
        }
    }

    pub fn to_poly(self) -> BivariatePolynomial {
        BivariatePolynomial::one_minus(self.p_exp, self.t_exp)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1 - {}", monomial_body(self.p_exp, self.t_exp))
    }
}

/// `coef * p^a * t^b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coef: BigInt,
    pub p_exp: i64,
    pub t_exp: i64,
}

impl Monomial {
    pub fn new(coef: impl Into<BigInt>, p_exp: i64, t_exp: i64) -> Self {
        Self {
            coef: coef.into(),
            p_exp,
            t_exp,
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            &self.coef * &other.coef,
            self.p_exp + other.p_exp,
            self.t_exp + other.t_exp,
        )
    }

    /// `self / other` when the coefficient division is exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.coef.is_zero() {
            return None;
        }
        let (q, r) = self.coef.div_rem(&other.coef);
        r.is_zero()
            .then(|| Monomial::new(q, self.p_exp - other.p_exp, self.t_exp - other.t_exp))
    }

    pub fn to_poly(&self) -> BivariatePolynomial {
        BivariatePolynomial::monomial(self.coef.clone(), self.p_exp, self.t_exp)
    }

    pub fn is_one(&self) -> bool {
        self.coef.is_one() && self.p_exp == 0 && self.t_exp == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = monomial_body(self.p_exp, self.t_exp);
        match (body.is_empty(), self.coef.abs().is_one()) {
            (true, _) => write!(f, "{}", self.coef),
            (false, true) => write!(
                f,
                "{}{body}",
                if self.coef.is_negative() { "-" } else { "" }
            ),
            (false, false) => write!(f, "{} {body}", self.coef),
        }
    }
}

/// Numerator over denominator, both Laurent polynomials.
#[derive(Debug, Clone)]
pub struct BivariateRationalFunction {
    numerator: BivariatePolynomial,
    denominator: BivariatePolynomial,
}

impl BivariateRationalFunction {
    pub fn new(numerator: BivariatePolynomial, denominator: BivariatePolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".to_string()));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: BivariatePolynomial) -> Self {
        Self {
            numerator: p,
            denominator: BivariatePolynomial::one(),
        }
    }

    pub fn numerator(&self) -> &BivariatePolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &BivariatePolynomial {
        &self.denominator
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            numerator: &(&self.numerator * &other.denominator)
                + &(&other.numerator * &self.denominator),
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(
            &self.numerator * &other.denominator,
            &self.denominator * &other.numerator,
        )
    }

    pub fn invert_variables(&self) -> Self {
        Self {
            numerator: self.numerator.invert_variables(),
            denominator: self.denominator.invert_variables(),
        }
    }

    /// Equality as rational functions (cross-multiplication).
    pub fn same_value(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    /// Cancels `1 - p^a t^b` from numerator and denominator while it divides both.
    pub fn cancel_factor(&mut self, factor: Factor) -> u32 {
        let mut count = 0;
        while let (Some(n), Some(d)) = (
            self.numerator.div_exact_factor(factor),
            self.denominator.div_exact_factor(factor),
        ) {
            if self.numerator.is_zero() {
                break;
            }
            self.numerator = n;
            self.denominator = d;
            count += 1;
        }
        count
    }

    /// Multiplies through by the least monomial making all exponents nonnegative,
    /// removes the common integer content and makes the lexicographically least
    /// denominator term positive.
    pub fn normalize(&mut self) {
        let mins = [
            self.numerator.min_exponents(),
            self.denominator.min_exponents(),
        ];
        let min_p = mins.iter().flatten().map(|m| m.0).min().unwrap_or(0);
        let min_t = mins.iter().flatten().map(|m| m.1).min().unwrap_or(0);
        self.numerator = self.numerator.shift(-min_p, -min_t);
        self.denominator = self.denominator.shift(-min_p, -min_t);

        let content = self
            .numerator
            .terms
            .values()
            .chain(self.denominator.terms.values())
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        let lead_negative = self
            .denominator
            .terms
            .values()
            .next()
            .is_some_and(|c| c.is_negative());
        let divisor = if lead_negative { -content } else { content };
        if !divisor.is_zero() && !divisor.is_one() {
            let div = |p: &BivariatePolynomial| BivariatePolynomial {
                terms: p.terms.iter().map(|(&k, v)| (k, v / &divisor)).collect(),
            };
            self.numerator = div(&self.numerator);
            self.denominator = div(&self.denominator);
        }
    }
}

impl PartialEq for BivariateRationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

/// `unit * ∏ num_factors / ∏ den_factors` with factors `(1 - p^a t^b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredRational {
    unit: Monomial,
    num: BTreeMap<Factor, u32>,
    den: BTreeMap<Factor, u32>,
}

impl FactoredRational {
    pub fn new(
        unit: Monomial,
        num: impl IntoIterator<Item = (i64, i64)>,
        den: impl IntoIterator<Item = (i64, i64)>,
    ) -> Result<Self> {
        if unit.coef.is_zero() {
            return Err(Error::InvalidArgument("zero unit".to_string()));
        }
        let mut out = Self {
            unit,
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        };
        for (a, b) in num {
            let (u, f) = Factor::oriented(a, b)?;
            out.unit = out.unit.mul(&u);
            *out.num.entry(f).or_default() += 1;
        }
        for (a, b) in den {
            let (u, f) = Factor::oriented(a, b)?;
            // 1/(u f) = u^{-1} / f, and u = ±p^x t^y is invertible
            out.unit = out.unit.div(&u).expect("orientation units are ±monomials");
            *out.den.entry(f).or_default() += 1;
        }
        Ok(out)
    }

    pub fn unit(&self) -> &Monomial {
        &self.unit
    }

    pub fn numerator_factors(&self) -> &BTreeMap<Factor, u32> {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<Factor, u32> {
        &self.den
    }

    /// Cancels factors common to numerator and denominator.
    pub fn reduce(&mut self) {
        let common: Vec<(Factor, u32)> = self
            .num
            .iter()
            .filter_map(|(f, &m)| self.den.get(f).map(|&d| (*f, m.min(d))))
            .collect();
        for (f, m) in common {
            for side in [&mut self.num, &mut self.den] {
                let e = side.get_mut(&f).expect("present");
                *e -= m;
                if *e == 0 {
                    side.remove(&f);
                }
            }
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    pub fn scaled(&self, m: &Monomial) -> Self {
        Self {
            unit: self.unit.mul(m),
            ..self.clone()
        }
    }

    /// `(p, t) -> (1/p, 1/t)` applied factor by factor:
    /// `1 - p^{-a} t^{-b} = -p^{-a} t^{-b} (1 - p^a t^b)`.
    pub fn invert_variables(&self) -> Self {
        let mut unit = Monomial::new(self.unit.coef.clone(), -self.unit.p_exp, -self.unit.t_exp);
        for (f, &m) in &self.num {
            for _ in 0..m {
                unit = unit.mul(&Monomial::new(-1, -f.p_exp, -f.t_exp));
            }
        }
        for (f, &m) in &self.den {
            for _ in 0..m {
                unit = unit.mul(&Monomial::new(-1, f.p_exp, f.t_exp));
            }
        }
        Self {
            unit,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn numerator_poly(&self) -> BivariatePolynomial {
        self.num.iter().fold(self.unit.to_poly(), |acc, (f, &m)| {
            &acc * &f.to_poly().pow(m)
        })
    }

    pub fn denominator_poly(&self) -> BivariatePolynomial {
        self.den
            .iter()
            .fold(BivariatePolynomial::one(), |acc, (f, &m)| {
                &acc * &f.to_poly().pow(m)
            })
    }

    pub fn to_rational(&self) -> BivariateRationalFunction {
        BivariateRationalFunction {
            numerator: self.numerator_poly(),
            denominator: self.denominator_poly(),
        }
    }

    /// `max a/b` over denominator factors `(1 - p^a t^b)` with `b >= 1`.
    pub fn abscissa(&self) -> Option<Ratio<i64>> {
        self.den
            .keys()
            .filter(|f| f.t_exp >= 1)
            .map(|f| Ratio::new(f.p_exp, f.t_exp))
            .max()
    }

    /// Denominator factors listed with multiplicity, largest `p` exponent first.
    fn den_display_order(&self) -> Vec<(Factor, u32)> {
        let mut v: Vec<_> = self.den.iter().map(|(f, &m)| (*f, m)).collect();
        v.sort_by_key(|(f, _)| std::cmp::Reverse((f.t_exp, f.p_exp)));
        v
    }

    /// Plain-text rendering such as `(1 - t)^2 / ((1 - p^2 t)(1 - p t))`.
    pub fn render_text(&self) -> String {
        let group = |factors: Vec<(Factor, u32)>| -> String {
            factors
                .into_iter()
                .map(|(f, m)| {
                    if m == 1 {
                        format!("({f})")
                    } else {
                        format!("({f})^{m}")
                    }
                })
                .collect::<String>()
        };
        let mut num_factors: Vec<_> = self.num.iter().map(|(f, &m)| (*f, m)).collect();
        num_factors.sort_by_key(|(f, _)| std::cmp::Reverse((f.t_exp, f.p_exp)));
        let factors = group(num_factors);
        let numerator = match (self.unit.is_one(), factors.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => factors,
            (false, true) => self.unit.to_string(),
            (false, false)
                if self.unit.coef == BigInt::from(-1)
                    && self.unit.p_exp == 0
                    && self.unit.t_exp == 0 =>
            {
                format!("-{factors}")
            }
            (false, false) => format!("{} {factors}", self.unit),
        };
        if self.den.is_empty() {
            numerator
        } else {
            format!("{numerator} / ({})", group(self.den_display_order()))
        }
    }

    /// `{"num": [[coef, p_exp, t_exp], ...], "den_factors": [[a, b], ...]}` with
    /// coefficients as decimal strings and factors repeated by multiplicity.
    pub fn to_json(&self) -> Value {
        let num: Vec<Value> = self
            .numerator_poly()
            .terms()
            .map(|(c, a, b)| json!([c.to_string(), a, b]))
            .collect();
        let den: Vec<Value> = self
            .den_display_order()
            .into_iter()
            .flat_map(|(f, m)| std::iter::repeat_n(json!([f.p_exp, f.t_exp]), m as usize))
            .collect();
        json!({ "num": num, "den_factors": den })
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// `(1 - t)^2 / ((1 - p^{n-2} t)(1 - p t))`, reduced (for `n = 2` one `(1 - t)` cancels).
pub fn zeta_closed_form(n: usize) -> Result<FactoredRational> {
    if n < 2 {
        return Err(Error::ClassTooSmall(n));
    }
    let shift = n as i64 - 2;
    Ok(FactoredRational::new(Monomial::one(), [(0, 1), (0, 1)], [(shift, 1), (1, 1)])?.reduced())
}

/// Power-series coefficients `r_{p^0}, ..., r_{p^{n_max}}` in `t` after substituting `p`.
pub fn series_coefficients(
    f: &BivariateRationalFunction,
    p_value: u64,
    n_max: usize,
) -> Result<Vec<BigInt>> {
    let num = f.numerator.specialize_p(p_value);
    let den = f.denominator.specialize_p(p_value);
    let Some((&den_low, _)) = den.iter().next() else {
        return Err(Error::NotPowerSeries(format!(
            "denominator vanishes at p = {p_value}"
        )));
    };
    if num.keys().next().is_some_and(|&low| low < den_low) {
        return Err(Error::NotPowerSeries("pole at t = 0".to_string()));
    }
    let coeff = |m: &BTreeMap<i64, BigRational>, k: i64| {
        m.get(&(k + den_low))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    };
    let d0 = coeff(&den, 0);

    let mut out: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max as i64 {
        let mut acc = coeff(&num, k);
        for l in 1..=k {
            let d = coeff(&den, l);
            if !d.is_zero() {
                acc -= d * &out[(k - l) as usize];
            }
        }
        out.push(acc / &d0);
    }
    out.into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegral(c.to_string()))
            }
        })
        .collect()
}

/// Result of comparing `ζ(1/p, 1/t)` with `ζ(p, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalEquation {
    /// Monomial `m` with `ζ(1/p, 1/t) = m ζ(p, t)`, if one exists.
    pub factor: Option<Monomial>,
    /// The identity re-checked on expanded polynomials.
    pub expanded_agrees: bool,
}

impl FunctionalEquation {
    pub fn holds_with(&self, expected: &Monomial) -> bool {
        self.expanded_agrees && self.factor.as_ref() == Some(expected)
    }
}

pub fn functional_equation_of(f: &FactoredRational) -> FunctionalEquation {
    let inverted = f.invert_variables();
    let factor = (inverted.num == f.num && inverted.den == f.den)
        .then(|| inverted.unit.div(&f.unit))
        .flatten();
    let expanded_agrees = match &factor {
        Some(m) => {
            let lhs = f.to_rational().invert_variables();
            let rhs = f.scaled(m).to_rational();
            lhs.same_value(&rhs)
        }
        None => false,
    };
    FunctionalEquation {
        factor,
        expanded_agrees,
    }
}

/// `ζ|_{(p,t) -> (1/p,1/t)} = p^{n-1} ζ`.
pub fn functional_equation_check(n: usize) -> Result<bool> {
    let f = zeta_closed_form(n)?;
    Ok(functional_equation_of(&f).holds_with(&Monomial::new(1, n as i64 - 1, 0)))
}

/// Abscissa of convergence of the p-local zeta function: `n - 2` for `n >= 3`, `1` for `n = 2`.
pub fn abscissa(n: usize) -> Result<Ratio<i64>> {
    zeta_closed_form(n)?
        .abscissa()
        .ok_or_else(|| Error::InvalidArgument("zeta function has no poles".to_string()))
}

/// Geometric-series assembly of the three counting cases before simplification.
///
/// The middle case is summed in the split form with the constant factor
/// `1/(1 - p^{3-n})`, which is singular at `n = 3`.
pub fn three_case_assembly(n: usize) -> Result<BivariateRationalFunction> {
    if n < 2 {
        return Err(Error::ClassTooSmall(n));
    }
    if n == 3 {
        return Err(Error::InvalidArgument(
            "the split geometric form divides by 1 - p^{3-n} = 0 at n = 3".to_string(),
        ));
    }
    let k = n as i64 - 2;
    let poly = BivariateRationalFunction::from_poly;
    let one = poly(BivariatePolynomial::one());
    let c_high = poly(BivariatePolynomial::one_minus(-k, 0));
    let c_low = poly(BivariatePolynomial::one_minus(-1, 0));
    let geo = |a: i64| {
        BivariateRationalFunction::new(
            BivariatePolynomial::monomial(1, a, 1),
            BivariatePolynomial::one_minus(a, 1),
        )
        .expect("nonzero denominator")
    };
    let first = c_high.mul(&geo(k));
    let split = BivariateRationalFunction::new(
        BivariatePolynomial::monomial(1, 1, 1),
        BivariatePolynomial::one_minus(k, 1),
    )?
    .sub(&geo(1));
    let middle = c_low
        .mul(&c_high)
        .div(&poly(BivariatePolynomial::one_minus(1 - k, 0)))?
        .mul(&split);
    let last = c_low.mul(&geo(1));
    Ok(one.add(&first).add(&middle).add(&last))
}

/// Same assembly with the middle case written as a product of two geometric
/// series, valid for every `n >= 2`.
pub fn three_case_product_assembly(n: usize) -> Result<BivariateRationalFunction> {
    if n < 2 {
        return Err(Error::ClassTooSmall(n));
    }
    let k = n as i64 - 2;
    let poly = BivariateRationalFunction::from_poly;
    let geo = |a: i64| {
        BivariateRationalFunction::new(
            BivariatePolynomial::monomial(1, a, 1),
            BivariatePolynomial::one_minus(a, 1),
        )
        .expect("nonzero denominator")
    };
    let c_high = poly(BivariatePolynomial::one_minus(-k, 0));
    let c_low = poly(BivariatePolynomial::one_minus(-1, 0));
    let first = c_high.mul(&geo(k));
    let middle = c_low.mul(&c_high).mul(&geo(k)).mul(&geo(1));
    let last = c_low.mul(&geo(1));
    Ok(poly(BivariatePolynomial::one())
        .add(&first)
        .add(&middle)
        .add(&last))
}
