//! Column tuples `Λ_n(k)`, the chain of candidate stable subspaces `V_{p^j}`,
//! and the two irreducibility tests.
//!
//! `V_{p^j}` is spanned by the `<y>`-orbit of `e_1 + e_{p^j+1} + ...`. It is
//! stable exactly when the table is `p^j`-periodic in the column index, and by
//! column-tuple propagation it suffices to compare column `1` with column
//! `p^j + 1`.

use crate::error::{Error, Result};
use crate::standard_form::{LambdaSpec, StandardFormRep};

/// Column `k` of the exponent table, `(E[1][k], ..., E[n][k])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EigenTuple {
    pub k: u64,
    pub values: Vec<u64>,
}

pub fn eigen_tuple(rep: &StandardFormRep, k: u64) -> EigenTuple {
    EigenTuple {
        k,
        values: rep.column(k),
    }
}

/// Index `j` of the subspace `V_{p^j}`; `j = N` is the whole space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableIndex(pub u32);

impl StableIndex {
    pub fn j(self) -> u32 {
        self.0
    }
}

/// Least `j` such that rows `first..=n` of column `1` and column `p^j + 1` agree.
///
/// `first = 1` gives `V(ρ)`, `first = n - k + 1` gives `V(ρ|_{M_k})`.
pub fn minimal_stable(rep: &StandardFormRep, first: usize) -> StableIndex {
    assert!(
        (1..=rep.n()).contains(&first),
        "row range must be a suffix of 1..=n"
    );
    let pp = rep.pp();
    let j = (0..=pp.exponent())
        .find(|&j| rep.columns_equal_from(1, pp.power(j) + 1, first))
        .expect("j = N always qualifies");
    debug_assert!(
        is_periodic_from(rep, pp.power(j), first),
        "first-column test disagrees with full periodicity"
    );
    StableIndex(j)
}

/// Whether restricted columns satisfy `Λ(k) = Λ(k + period)` for every `k`.
pub fn is_periodic_from(rep: &StandardFormRep, period: u64, first: usize) -> bool {
    (1..=rep.dim()).all(|k| rep.columns_equal_from(k, k + period, first))
}

/// Irreducible iff `V_{p^{N-1}}` is not stable, i.e. the minimal stable index is `N`.
pub fn is_irreducible_structural(rep: &StandardFormRep) -> bool {
    minimal_stable(rep, 1).j() == rep.pp().exponent()
}

/// Irreducible iff some `λ_i`, `i >= 2`, is a primitive `p^N`-th root. Needs `p >= n`.
pub fn is_irreducible_depth(spec: &LambdaSpec) -> Result<bool> {
    if !spec.is_non_exceptional() {
        return Err(Error::ExceptionalPrime {
            p: spec.pp().p(),
            n: spec.n(),
        });
    }
    Ok(spec.max_depth_from(2) == spec.pp().exponent())
}

/// Whether `V(ρ)` is at least `V(ρ|_{M_k})`, with `M_k = <a_{n-k+1}, ..., a_n, b>`.
pub fn restriction_monotonicity_check(rep: &StandardFormRep, k: usize) -> Result<bool> {
    let n = rep.n();
    if k < 2 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "subgroup index k must satisfy 2 <= k < n = {n}, got {k}"
        )));
    }
    Ok(minimal_stable(rep, 1) >= minimal_stable(rep, n - k + 1))
}

/// `m_* = N - min_{i >= 2} v_p(e_i)`, the largest depth among `λ_2, ..., λ_n`.
/// The table is `p^{m_*}`-periodic.
pub fn periodicity_exponent(spec: &LambdaSpec) -> u32 {
    spec.max_depth_from(2)
}
