//! Standard-form representations of `M_n = <a_1, ..., a_n, b | [a_i, b] = a_{i+1}>`
//! in dimension `p^N`.
//!
//! In standard form `y = ρ(b)` is the `p^N`-cycle `e_j -> e_{j+1}` and every
//! `x_i = ρ(a_i)` is diagonal. The diagonal of `x_i` is stored as exponents
//! `E[i][j]` with `λ_{i,j} = ζ^{E[i][j]}`, and everything is determined by the
//! first column `(λ_1 = 1, λ_2, ..., λ_n)`:
//!
//! ```text
//! E[i][j] = Σ_{k=i}^{n} e_k T_{k-i}(j - 1)  (mod p^N)
//! ```
//!
//! The commutator convention is `[a, b] = a b a^{-1} b^{-1}`, under which
//! `[x_i, y] = x_{i+1}` is equivalent to `E[i][j+1] = E[i+1][j+1] + E[i][j]`.
//!
//! Rows and columns are 1-indexed at the public surface; columns are cyclic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootlog::{ExponentResidue, PrimePower, DEFAULT_TABLE_LIMIT};
use crate::simplex::{simplex_mod_in, SimplexResidues};

/// The defining tuple `(e_1 = 0, e_2, ..., e_n)` of a standard-form representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaSpec {
    pp: PrimePower,
    exponents: Vec<u64>,
}

impl LambdaSpec {
    /// `exponents` is the full tuple including `e_1`, which must be `0`.
    pub fn new(pp: PrimePower, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::ClassTooSmall(exponents.len()));
        }
        if pp.exponent() == 0 {
            return Err(Error::InvalidSpec("standard forms need N >= 1".to_string()));
        }
        if exponents[0] != 0 {
            return Err(Error::InvalidSpec(format!(
                "e_1 must be 0 after twisting, got {}",
                exponents[0]
            )));
        }
        if let Some((i, e)) = exponents.iter().enumerate().find(|(_, &e)| e >= pp.dim()) {
            return Err(Error::InvalidSpec(format!(
                "e_{} = {e} is not reduced modulo {}",
                i + 1,
                pp.dim()
            )));
        }
        Ok(Self { pp, exponents })
    }

    /// Builds the spec `(0, tail...)`.
    pub fn from_tail(pp: PrimePower, tail: &[u64]) -> Result<Self> {
        let mut exponents = Vec::with_capacity(tail.len() + 1);
        exponents.push(0);
        exponents.extend_from_slice(tail);
        Self::new(pp, exponents)
    }

    /// Nilpotency class `n`.
    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn pp(&self) -> PrimePower {
        self.pp
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `(e_2, ..., e_n)`.
    pub fn tail(&self) -> &[u64] {
        &self.exponents[1..]
    }

    /// `e_i`, 1-indexed.
    pub fn e(&self, i: usize) -> u64 {
        self.exponents[i - 1]
    }

    pub fn residue(&self, i: usize) -> ExponentResidue {
        self.pp.residue(self.e(i))
    }

    pub fn is_non_exceptional(&self) -> bool {
        self.pp.p() >= self.n() as u64
    }

    /// `max_{i >= first} s(λ_i)`.
    pub fn max_depth_from(&self, first: usize) -> u32 {
        (first..=self.n())
            .map(|i| self.pp.depth_of(self.e(i)))
            .max()
            .unwrap_or(0)
    }
}

/// Exponent table of a standard-form representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardFormRep {
    spec: LambdaSpec,
    rows: Vec<Vec<u64>>,
    y_scalar: u64,
}

#[derive(Serialize)]
struct RepJson<'a> {
    n: usize,
    p: u64,
    #[serde(rename = "N")]
    exponent: u32,
    dim: u64,
    lambda: &'a [u64],
    y_scalar: u64,
    rows: &'a [Vec<u64>],
}

impl StandardFormRep {
    pub fn spec(&self) -> &LambdaSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn pp(&self) -> PrimePower {
        self.spec.pp
    }

    pub fn dim(&self) -> u64 {
        self.spec.pp.dim()
    }

    /// The scalar `k` in the corner of `y`; always `1` in standard form.
    pub fn y_scalar(&self) -> u64 {
        self.y_scalar
    }

    /// Diagonal of `x_i` as exponents, 1-indexed row.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `E[i][j]` with `j` taken cyclically (`j = 1` is the first column).
    pub fn entry(&self, i: usize, j: u64) -> u64 {
        self.rows[i - 1][self.col_index(j)]
    }

    /// Column `j` restricted to rows `first..=n`.
    pub fn column_from(&self, j: u64, first: usize) -> Vec<u64> {
        let c = self.col_index(j);
        self.rows[first - 1..].iter().map(|row| row[c]).collect()
    }

    pub fn column(&self, j: u64) -> Vec<u64> {
        self.column_from(j, 1)
    }

    /// Whether restricted columns `a` and `b` coincide.
    pub fn columns_equal_from(&self, a: u64, b: u64, first: usize) -> bool {
        let (a, b) = (self.col_index(a), self.col_index(b));
        self.rows[first - 1..].iter().all(|row| row[a] == row[b])
    }

    fn col_index(&self, j: u64) -> usize {
        assert!(j >= 1, "columns are 1-indexed");
        ((j - 1) % self.dim()) as usize
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RepJson {
            n: self.n(),
            p: self.pp().p(),
            exponent: self.pp().exponent(),
            dim: self.dim(),
            lambda: self.spec.exponents(),
            y_scalar: self.y_scalar,
            rows: &self.rows,
        })
        .expect("plain data serializes")
    }
}

/// Every spec of class `n` over `pp`, tails in lexicographic order.
pub fn all_specs(n: usize, pp: PrimePower) -> impl Iterator<Item = LambdaSpec> {
    let q = pp.dim();
    let len = n.saturating_sub(1) as u32;
    let total = if pp.exponent() == 0 || n < 2 {
        0
    } else {
        q.pow(len)
    };
    (0..total).map(move |mut index| {
        let mut exponents = vec![0u64; n];
        for slot in exponents[1..].iter_mut().rev() {
            *slot = index % q;
            index /= q;
        }
        LambdaSpec { pp, exponents }
    })
}

pub fn build_rep(spec: &LambdaSpec) -> Result<StandardFormRep> {
    build_rep_with_limit(spec, DEFAULT_TABLE_LIMIT)
}

pub fn build_rep_with_limit(spec: &LambdaSpec, limit: u64) -> Result<StandardFormRep> {
    let pp = spec.pp();
    pp.check_table_limit(limit)?;
    let q = pp.dim();
    let n = spec.n();
    let width = q as usize;
    let t = SimplexResidues::new(n - 1, width, q);

    let mut rows = vec![vec![0u64; width]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = 0u128;
            for k in i..n {
                acc += u128::from(spec.exponents[k]) * u128::from(t.get(k - i, j));
            }
            *slot = (acc % u128::from(q)) as u64;
        }
    }
    let rep = StandardFormRep {
        spec: spec.clone(),
        rows,
        y_scalar: 1,
    };
    debug_assert!(
        recursion_holds(&rep),
        "closed form disagrees with the recursion"
    );
    debug_assert!(
        !closing_constraint_holds(spec) || wraparound_holds(&rep),
        "wraparound fails although the constraint holds"
    );
    Ok(rep)
}

/// `E[i][j+1] = E[i+1][j+1] + E[i][j]` for `1 <= i < n`, `1 <= j < p^N`.
pub fn recursion_holds(rep: &StandardFormRep) -> bool {
    let q = rep.dim();
    let width = q as usize;
    (0..rep.n() - 1).all(|i| {
        (0..width - 1).all(|j| rep.rows[i][j + 1] == (rep.rows[i + 1][j + 1] + rep.rows[i][j]) % q)
    }) && rep.rows[rep.n() - 1]
        .iter()
        .all(|&e| e == rep.rows[rep.n() - 1][0])
}

/// `E[i][1] = E[i+1][1] + E[i][p^N]`, i.e. the table closes up cyclically.
pub fn wraparound_holds(rep: &StandardFormRep) -> bool {
    let q = rep.dim();
    let last = q as usize - 1;
    (0..rep.n() - 1).all(|i| rep.rows[i][0] == (rep.rows[i + 1][0] + rep.rows[i][last]) % q)
}

/// The closing condition `λ_i^{p^N} ∏_{k>i} λ_k^{T_{k-i+1}(p^N - 1)} = 1` for
/// `2 <= i <= n`, which is exactly what the cyclic wraparound of row `i - 1`
/// requires. It holds automatically for `p >= n`.
pub fn closing_constraint_holds(spec: &LambdaSpec) -> bool {
    let pp = spec.pp();
    let q = pp.dim();
    let n = spec.n();
    (2..=n).all(|i| {
        let mut acc = (u128::from(q) * u128::from(spec.e(i))) % u128::from(q);
        for k in i + 1..=n {
            let t = simplex_mod_in((k - i + 1) as u32, q - 1, &pp);
            acc += u128::from(spec.e(k)) * u128::from(t);
        }
        acc % u128::from(q) == 0
    })
}
