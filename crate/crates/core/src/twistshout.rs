//! Twist-and-shout equivalence of standard forms.
//!
//! Conjugating by `y^ℓ` moves column `ℓ + 1` of the table to the front; twisting
//! then resets `λ_1` to `1`. Only the tail `(e_2, ..., e_n)` survives, so a
//! twist-and-shout class is the set of restricted columns of rows `2..=n`,
//! and it has `p^m` elements where `V(ρ|_{M_{n-1}}) = V_{p^m}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::stability::minimal_stable;
use crate::standard_form::{build_rep, LambdaSpec, StandardFormRep};

/// Exponent tail `(e_2, ..., e_n)`.
pub type Tail = Vec<u64>;

/// Spec obtained by shouting with `y^ℓ` and re-twisting; `ℓ = 0` is the identity.
pub fn shout_shift(spec: &LambdaSpec, ell: u64) -> Result<LambdaSpec> {
    let rep = build_rep(spec)?;
    Ok(shout_shift_rep(&rep, ell))
}

pub fn shout_shift_rep(rep: &StandardFormRep, ell: u64) -> LambdaSpec {
    let tail = rep.column_from(ell % rep.dim() + 1, 2);
    LambdaSpec::from_tail(rep.pp(), &tail).expect("table entries are reduced")
}

/// Advances a restricted column of rows `2..=n` to the next column in place,
/// using `E[i][j+1] = E[i+1][j+1] + E[i][j]` from the bottom row up.
#[inline]
pub fn advance_tail(tail: &mut [u64], modulus: u64) {
    for idx in (0..tail.len().saturating_sub(1)).rev() {
        tail[idx] = (tail[idx] + tail[idx + 1]) % modulus;
    }
}

/// Iterator over the shouted tails for `ℓ = 0, 1, ..., p^N - 1`.
#[derive(Debug, Clone)]
pub struct ShoutWalk {
    current: Tail,
    modulus: u64,
    remaining: u64,
}

impl ShoutWalk {
    pub fn new(tail: &[u64], modulus: u64) -> Self {
        Self {
            current: tail.to_vec(),
            modulus,
            remaining: modulus,
        }
    }
}

impl Iterator for ShoutWalk {
    type Item = Tail;

    fn next(&mut self) -> Option<Tail> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current.clone();
        advance_tail(&mut self.current, self.modulus);
        Some(out)
    }
}

/// Number of distinct tails in the orbit: the first return time of the walk.
///
/// The step map is invertible, so the walk always returns; for `p >= n - 1`
/// the period divides `p^N`.
pub fn orbit_period(tail: &[u64], modulus: u64) -> u64 {
    let mut cur = tail.to_vec();
    let mut step = 0;
    loop {
        advance_tail(&mut cur, modulus);
        step += 1;
        if cur == tail {
            return step;
        }
    }
}

/// Whether `tail` is the lexicographic minimum of its orbit.
pub fn is_canonical_tail(tail: &[u64], modulus: u64) -> bool {
    let mut cur = tail.to_vec();
    loop {
        advance_tail(&mut cur, modulus);
        if cur == tail {
            return true;
        }
        if cur.as_slice() < tail {
            return false;
        }
    }
}

/// Lexicographically least tail in the orbit of `spec`.
pub fn canonical_tail(spec: &LambdaSpec) -> Tail {
    ShoutWalk::new(spec.tail(), spec.pp().dim())
        .min()
        .expect("orbit is non-empty")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShoutOrbit {
    pub base: LambdaSpec,
    pub tails: BTreeSet<Tail>,
    pub size: u64,
}

/// Orbit of `spec` read off the table, checked against the orbit-size law.
pub fn shout_orbit(spec: &LambdaSpec) -> Result<ShoutOrbit> {
    let rep = build_rep(spec)?;
    let tails: BTreeSet<Tail> = (1..=rep.dim()).map(|j| rep.column_from(j, 2)).collect();
    let size = tails.len() as u64;
    let m = minimal_stable(&rep, 2).j();
    let expected = rep.pp().power(m);
    if size != expected {
        return Err(Error::OrbitSizeLaw {
            tail: spec.tail().to_vec(),
            observed: size,
            expected,
        });
    }
    Ok(ShoutOrbit {
        base: spec.clone(),
        tails,
        size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlog::PrimePower;

    fn spec(p: u64, n: u32, e: &[u64]) -> LambdaSpec {
        LambdaSpec::new(PrimePower::new(p, n).unwrap(), e.to_vec()).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            shout_shift(&spec(5, 1, &[0, 0, 1]), 2).unwrap(),
            spec(5, 1, &[0, 2, 1])
        );
        let s = spec(7, 2, &[0, 3, 10, 1]);
        assert_eq!(shout_shift(&s, 0).unwrap(), s);
        for ell in 0..5 {
            assert_eq!(
                shout_shift(&spec(5, 1, &[0, 1, 0]), ell).unwrap(),
                spec(5, 1, &[0, 1, 0])
            );
        }
    }

    #[test]
    fn orbit_examples() {
        let o = shout_orbit(&spec(5, 1, &[0, 0, 1])).unwrap();
        assert_eq!(o.size, 5);
        let expected: BTreeSet<Tail> = (0..5).map(|c| vec![c, 1]).collect();
        assert_eq!(o.tails, expected);
        assert_eq!(shout_orbit(&spec(5, 1, &[0, 1, 0])).unwrap().size, 1);
        assert_eq!(shout_orbit(&spec(5, 1, &[0, 0, 0])).unwrap().size, 1);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_tail(&spec(5, 1, &[0, 3, 1])), vec![0, 1]);
        assert_eq!(canonical_tail(&spec(5, 1, &[0, 1, 0])), vec![1, 0]);
        assert_eq!(canonical_tail(&spec(5, 1, &[0, 0, 0])), vec![0, 0]);
        assert!(is_canonical_tail(&[0, 1], 5));
        assert!(!is_canonical_tail(&[3, 1], 5));
    }

    #[test]
    fn walk_matches_table_columns() {
        let s = spec(3, 2, &[0, 4, 2]);
        let rep = build_rep(&s).unwrap();
        let walked: Vec<Tail> = ShoutWalk::new(s.tail(), 9).collect();
        let read: Vec<Tail> = (1..=9).map(|j| rep.column_from(j, 2)).collect();
        assert_eq!(walked, read);
        assert_eq!(orbit_period(s.tail(), 9), shout_orbit(&s).unwrap().size);
    }
}
