//! `p^N`-th roots of unity as discrete logarithms.
//!
//! A root `λ = ζ^e` for a fixed (never chosen) primitive `p^N`-th root `ζ` is
//! stored as the exponent `e mod p^N`. Multiplication of roots is addition of
//! exponents; the depth `s(λ)` is the least `k` with `λ^{p^k} = 1`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default guard for operations that materialize `p^N`-sized tables.
pub const DEFAULT_TABLE_LIMIT: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A prime power `p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    p: u64,
    exponent: u32,
    dim: u64,
}

impl PrimePower {
    pub fn new(p: u64, exponent: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let dim = BigUint::from(p)
            .pow(exponent)
            .to_u64()
            .ok_or(Error::DimensionTooLarge {
                p,
                exponent,
                limit: u64::MAX,
            })?;
        Ok(Self { p, exponent, dim })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The exponent `N`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `p^N`.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn check_table_limit(&self, limit: u64) -> Result<()> {
        if self.dim > limit {
            return Err(Error::DimensionTooLarge {
                p: self.p,
                exponent: self.exponent,
                limit,
            });
        }
        Ok(())
    }

    /// `p^j` for `j <= N`.
    pub fn power(&self, j: u32) -> u64 {
        assert!(j <= self.exponent, "p^{j} exceeds p^N");
        self.p.pow(j)
    }

    pub fn residue(&self, value: u64) -> ExponentResidue {
        ExponentResidue {
            value: value % self.dim,
            context: *self,
        }
    }

    /// p-adic valuation of a nonzero residue, capped at `N`.
    pub fn valuation(&self, value: u64) -> u32 {
        let mut v = value % self.dim;
        if v == 0 {
            return self.exponent;
        }
        let mut k = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            k += 1;
        }
        k
    }

    /// Depth of the root `ζ^value`.
    pub fn depth_of(&self, value: u64) -> u32 {
        self.exponent - self.valuation(value)
    }
}

/// `λ = ζ^value` with `ζ` a primitive `p^N`-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentResidue {
    value: u64,
    context: PrimePower,
}

impl ExponentResidue {
    pub fn new(value: u64, context: PrimePower) -> Result<Self> {
        if value >= context.dim() {
            return Err(Error::InvalidArgument(format!(
                "exponent {value} is not reduced modulo {}",
                context.dim()
            )));
        }
        Ok(Self { value, context })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn context(&self) -> PrimePower {
        self.context
    }

    pub fn depth(&self) -> u32 {
        depth(self)
    }

    /// Exponent of the product of the two roots.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let q = self.context.dim();
        let value = ((u128::from(self.value) + u128::from(other.value)) % u128::from(q)) as u64;
        Ok(Self {
            value,
            context: self.context,
        })
    }

    /// Exponent of `λ^k`.
    pub fn pow(&self, k: u64) -> Self {
        let q = self.context.dim();
        let value = ((u128::from(self.value) * u128::from(k)) % u128::from(q)) as u64;
        Self {
            value,
            context: self.context,
        }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.context != other.context {
            return Err(Error::ContextMismatch {
                left: self.context.dim(),
                right: other.context.dim(),
            });
        }
        Ok(())
    }
}

/// `s(λ)`: `0` for `λ = 1`, otherwise `N - v_p(e)`.
pub fn depth(e: &ExponentResidue) -> u32 {
    if e.value == 0 {
        0
    } else {
        e.context.depth_of(e.value)
    }
}

/// Whether `s(λ_a λ_b) <= max(s(λ_a), s(λ_b))`.
pub fn depth_product_bound(a: &ExponentResidue, b: &ExponentResidue) -> Result<bool> {
    let product = a.mul(b)?;
    Ok(depth(&product) <= depth(a).max(depth(b)))
}
