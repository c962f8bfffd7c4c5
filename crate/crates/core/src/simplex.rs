//! k-simplex numbers `T_k(j) = binomial(j + k - 1, k)`.
//!
//! `T_0(j) = 1`, `T_k(0) = 0` for `k >= 1`, and `T_k(j) = T_k(j - 1) + T_{k-1}(j)`.
//! These drive every eigenvalue exponent of a standard-form representation, so
//! both an exact big-integer route and a residue route are provided.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootlog::{is_prime, PrimePower};

/// Exact value of `T_k(j)` via the falling-product form `j (j+1) ... (j+k-1) / k!`.
pub fn simplex(k: u32, j: u64) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if j == 0 {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for m in 0..u64::from(k) {
        num *= BigUint::from(j) + BigUint::from(m);
        den *= BigUint::from(m + 1);
    }
    num / den
}

/// `T_k(j) mod p^N`.
///
/// For `p > k` the denominator `k!` is a unit mod `p^N` and the product is
/// reduced term by term; otherwise the exact value is reduced.
pub fn simplex_mod(k: u32, j: u64, p: u64, exponent: u32) -> Result<u64> {
    let pp = PrimePower::new(p, exponent)?;
    Ok(simplex_mod_in(k, j, &pp))
}

pub(crate) fn simplex_mod_in(k: u32, j: u64, pp: &PrimePower) -> u64 {
    let q = pp.dim();
    if q == 1 {
        return 0;
    }
    if k == 0 {
        return 1 % q;
    }
    if j == 0 {
        return 0;
    }
    if pp.p() > u64::from(k) {
        let mut num = 1u64;
        let mut fact = 1u64;
        for m in 0..u64::from(k) {
            let factor = ((u128::from(j) + u128::from(m)) % u128::from(q)) as u64;
            num = mul_mod(num, factor, q);
            fact = mul_mod(fact, (m + 1) % q, q);
        }
        let inv = inverse_mod(fact, q).expect("k! is a unit modulo p^N when p > k");
        mul_mod(num, inv, q)
    } else {
        (simplex(k, j) % BigUint::from(q))
            .to_u64()
            .expect("residue fits in u64")
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub(crate) fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let g = BigInt::from(a).extended_gcd(&BigInt::from(m));
    if !g.gcd.is_one() {
        return None;
    }
    g.x.mod_floor(&BigInt::from(m)).to_u64()
}

/// Exhaustively checks `Γ(k, β p^{N-m} + j + 1) ≡ Γ(k, j + 1) (mod p^N)` where
/// `Γ(k, j) = α p^m T_k(j - 1)`, over `1 <= β < p^m` and `0 <= j < p^{N-m}`.
pub fn gamma_congruence_check(k: u32, p: u64, exponent: u32, m: u32, alpha: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || u64::from(k) >= p {
        return Err(Error::InvalidArgument(format!(
            "the congruence needs 1 <= k < p, got k={k}, p={p}"
        )));
    }
    if exponent == 0 || m == 0 || m > exponent {
        return Err(Error::InvalidArgument(format!(
            "the congruence needs 1 <= m <= N, got m={m}, N={exponent}"
        )));
    }
    if alpha.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "alpha={alpha} must be coprime to p={p}"
        )));
    }
    let pp = PrimePower::new(p, exponent)?;
    pp.check_table_limit(crate::rootlog::DEFAULT_TABLE_LIMIT)?;
    let q = pp.dim();
    let pm = p.pow(m);
    let period = p.pow(exponent - m);
    let scale = mul_mod(alpha % q, pm % q, q);
    let gamma = |j: u64| -> u64 { mul_mod(scale, simplex_mod_in(k, j - 1, &pp), q) };

    for beta in 1..pm {
        for j in 0..period {
            if gamma(beta * period + j + 1) != gamma(j + 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Table of exact `T_k(j)` for `0 <= k <= max_k`, `0 <= j <= max_j`, filled by the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexTable {
    max_k: u32,
    max_j: u64,
    values: Vec<Vec<BigUint>>,
}

impl SimplexTable {
    pub fn new(max_k: u32, max_j: u64) -> Self {
        let width = max_j as usize + 1;
        let mut values: Vec<Vec<BigUint>> = Vec::with_capacity(max_k as usize + 1);
        values.push(vec![BigUint::one(); width]);
        for k in 1..=max_k as usize {
            let mut row = vec![BigUint::zero(); width];
            for j in 1..width {
                row[j] = &row[j - 1] + &values[k - 1][j];
            }
            values.push(row);
        }
        Self {
            max_k,
            max_j,
            values,
        }
    }

    pub fn max_k(&self) -> u32 {
        self.max_k
    }

    pub fn max_j(&self) -> u64 {
        self.max_j
    }

    pub fn get(&self, k: u32, j: u64) -> Option<&BigUint> {
        self.values.get(k as usize)?.get(usize::try_from(j).ok()?)
    }
}

/// `T_k(j) mod p^N` for `0 <= k <= max_k` and `0 <= j < len`, filled by the recursion.
#[derive(Debug, Clone)]
pub(crate) struct SimplexResidues {
    rows: Vec<Vec<u64>>,
}

impl SimplexResidues {
    pub(crate) fn new(max_k: usize, len: usize, q: u64) -> Self {
        let mut rows = Vec::with_capacity(max_k + 1);
        rows.push(vec![1 % q; len]);
        for k in 1..=max_k {
            let mut row = vec![0u64; len];
            for j in 1..len {
                row[j] = (row[j - 1] + rows[k - 1][j]) % q;
            }
            rows.push(row);
        }
        Self { rows }
    }

    #[inline]
    pub(crate) fn get(&self, k: usize, j: usize) -> u64 {
        self.rows[k][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> BigUint {
        // Pascal's triangle, independent of the product form
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row.get(k as usize).cloned().unwrap_or_default()
    }

    #[test]
    fn spot_values() {
        assert_eq!(simplex(3, 0), BigUint::zero());
        assert_eq!(simplex(0, 7), BigUint::one());
        assert_eq!(simplex(2, 3), BigUint::from(6u32));
        assert_eq!(simplex(0, 0), BigUint::one());
    }

    #[test]
    fn residue_spot_values() {
        assert_eq!(simplex_mod(3, 4, 5, 1).unwrap(), 0);
        assert_eq!(simplex_mod(2, 0, 3, 2).unwrap(), 0);
        assert_eq!(simplex_mod(1, 13, 3, 2).unwrap(), 4);
    }

    #[test]
    fn table_matches_binomial_and_pascal_sum() {
        let table = SimplexTable::new(8, 64);
        for k in 0..=8u32 {
            for j in 0..=64u64 {
                let t = table.get(k, j).unwrap();
                assert_eq!(t, &simplex(k, j), "T_{k}({j})");
                if j >= 1 || k == 0 {
                    let n = j + u64::from(k);
                    if n >= 1 {
                        assert_eq!(t, &binomial(n - 1, u64::from(k)), "binomial T_{k}({j})");
                    }
                }
                if j < 64 {
                    let sum: BigUint = (0..=k).map(|l| table.get(l, j).unwrap().clone()).sum();
                    assert_eq!(
                        table.get(k, j + 1).unwrap(),
                        &sum,
                        "tail sum at k={k} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn vandermonde_identity() {
        let table = SimplexTable::new(6, 40);
        for k in 0..=6u32 {
            for i in 0..=20u64 {
                for j in 0..=20u64 {
                    let rhs: BigUint = (0..=k)
                        .map(|l| table.get(l, i).unwrap() * table.get(k - l, j).unwrap())
                        .sum();
                    assert_eq!(
                        table.get(k, i + j).unwrap(),
                        &rhs,
                        "Vandermonde k={k} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn difference_divisibility() {
        for k in 0..=6u32 {
            let fact: BigInt = (1..=i64::from(k)).map(BigInt::from).product();
            for i in 0..=40u64 {
                for j in 0..=40u64 {
                    if i == j {
                        continue;
                    }
                    let diff = BigInt::from(simplex(k, i)) - BigInt::from(simplex(k, j));
                    let d = BigInt::from(i) - BigInt::from(j);
                    assert!(
                        (&fact * diff).is_multiple_of(&d),
                        "difference divisibility k={k} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn vanishing_at_last_index() {
        for p in [5u64, 7, 11] {
            for n in 1..=3u32 {
                let q = p.pow(n);
                for k in 2..p as u32 {
                    assert_eq!(
                        simplex_mod(k, q - 1, p, n).unwrap(),
                        0,
                        "vanishing p={p} N={n} k={k}"
                    );
                    let exact = simplex(k, q - 1) % BigUint::from(q);
                    assert!(exact.is_zero());
                }
                for k in 1..p as u32 {
                    assert_eq!(simplex_mod(k, q, p, n).unwrap(), 0);
                }
                assert_eq!(simplex_mod(1, q - 1, p, n).unwrap(), q - 1);
            }
        }
    }

    #[test]
    fn residues_agree_with_exact_for_every_prime() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=3u32 {
                let q = p.pow(n);
                for k in 0..=6u32 {
                    for j in [0u64, 1, 2, 5, 17, 100, 12345, q - 1, q, 3 * q + 2] {
                        let exact = (simplex(k, j) % BigUint::from(q)).to_u64().unwrap();
                        assert_eq!(
                            simplex_mod(k, j, p, n).unwrap(),
                            exact,
                            "p={p} N={n} k={k} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn periodicity_modulo_lower_power() {
        // T_k(α p^b + j) ≡ T_k(j) mod p^b for p > k
        for p in [5u64, 7] {
            for b in 1..=2u32 {
                let pb = p.pow(b);
                for k in 0..p as u32 {
                    for alpha in 1..p {
                        for j in 0..30u64 {
                            let lhs = simplex(k, alpha * pb + j) % BigUint::from(pb);
                            let rhs = simplex(k, j) % BigUint::from(pb);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn residue_table_matches_direct() {
        let r = SimplexResidues::new(5, 50, 49);
        let pp = PrimePower::new(7, 2).unwrap();
        for k in 0..=5 {
            for j in 0..50 {
                assert_eq!(r.get(k, j), simplex_mod_in(k as u32, j as u64, &pp));
            }
        }
    }

    #[test]
    fn gamma_congruence_examples() {
        assert!(gamma_congruence_check(1, 5, 2, 1, 2).unwrap());
        assert!(gamma_congruence_check(2, 3, 1, 1, 1).unwrap());
        assert!(gamma_congruence_check(3, 3, 2, 1, 1).is_err());
        assert!(gamma_congruence_check(1, 5, 2, 1, 5).is_err());
        assert!(gamma_congruence_check(1, 5, 2, 3, 1).is_err());
    }

    #[test]
    fn gamma_congruence_exhaustive() {
        for p in [3u64, 5, 7] {
            for n in 1..=3u32 {
                for m in 1..=n {
                    for k in 1..p as u32 {
                        for alpha in [1u64, 2, p + 1, 2 * p - 1] {
                            if alpha % p == 0 {
                                continue;
                            }
                            assert!(gamma_congruence_check(k, p, n, m, alpha).unwrap());
                        }
                    }
                }
            }
        }
    }
}
