//! Numerical cross-checks on explicit complex matrices.
//!
//! Everything here works on `x_1, ..., x_n, y` as dense complex matrices and
//! rederives stability, irreducibility and eigenspace structure with plain
//! linear algebra, without touching the column-tuple machinery of
//! [`crate::stability`].

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::stability::StableIndex;
use crate::standard_form::StandardFormRep;

pub const DEFAULT_ORACLE_LIMIT: u64 = 64;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Singular values below this fraction of the largest count as zero.
pub const NULLITY_THRESHOLD: f64 = 1e-8;

type CMat = DMatrix<Complex64>;

/// Dense complex realization of a standard form.
#[derive(Debug, Clone)]
pub struct ComplexRep {
    p: u64,
    exponent: u32,
    dim: usize,
    xs: Vec<CMat>,
    y: CMat,
    pub tol: f64,
}

/// Which defining identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `x_i y x_i^{-1} y^{-1} = x_{i+1}`, 1-indexed `i`.
    Commutator(usize),
    /// `x_n y = y x_n`.
    Central,
    /// `x_n` is a scalar matrix.
    Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub max_residual: f64,
    pub failed: Option<Relation>,
}

impl RelationCheck {
    pub fn is_ok(&self) -> bool {
        self.failed.is_none()
    }
}

fn root_of_unity(e: u64, q: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (e % q) as f64 / q as f64)
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl ComplexRep {
    /// Builds `x_i = diag(ζ^{rows[i][j]})` and the cycle `y: e_j -> e_{j+1}` with
    /// corner entry `y_scalar`.
    pub fn from_exponent_rows(
        p: u64,
        exponent: u32,
        rows: &[Vec<u64>],
        y_scalar: Complex64,
        limit: u64,
    ) -> Result<Self> {
        let q = p.pow(exponent);
        if q > limit {
            return Err(Error::DimensionTooLarge { p, exponent, limit });
        }
        let dim = q as usize;
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument(format!(
                "rows must have length {dim}"
            )));
        }
        let xs = rows
            .iter()
            .map(|row| {
                let diag = DVector::from_iterator(dim, row.iter().map(|&e| root_of_unity(e, q)));
                CMat::from_diagonal(&diag)
            })
            .collect();
        let mut y = CMat::zeros(dim, dim);
        for j in 0..dim {
            let next = (j + 1) % dim;
            // column j is the image of e_j
            y[(next, j)] = if next == 0 {
                y_scalar
            } else {
                Complex64::new(1.0, 0.0)
            };
        }
        if dim == 1 {
            y[(0, 0)] = y_scalar;
        }
        Ok(Self {
            p,
            exponent,
            dim,
            xs,
            y,
            tol: DEFAULT_TOLERANCE,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn xs(&self) -> &[CMat] {
        &self.xs
    }

    pub fn y(&self) -> &CMat {
        &self.y
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn generators(&self) -> impl Iterator<Item = &CMat> {
        self.xs.iter().chain(std::iter::once(&self.y))
    }
}

pub fn realize(rep: &StandardFormRep) -> Result<ComplexRep> {
    realize_with_limit(rep, DEFAULT_ORACLE_LIMIT)
}

pub fn realize_with_limit(rep: &StandardFormRep, limit: u64) -> Result<ComplexRep> {
    let pp = rep.pp();
    ComplexRep::from_exponent_rows(
        pp.p(),
        pp.exponent(),
        rep.rows(),
        Complex64::new(rep.y_scalar() as f64, 0.0),
        limit,
    )
}

/// Checks `[x_i, y] = x_{i+1}` with `[a, b] = a b a^{-1} b^{-1}`, centrality
/// and scalarity of `x_n`.
pub fn check_relations(c: &ComplexRep) -> RelationCheck {
    let mut worst = 0.0f64;
    let mut failed = None;
    let mut record = |residual: f64, rel: Relation, failed: &mut Option<Relation>| {
        worst = worst.max(residual);
        if residual > c.tol && failed.is_none() {
            *failed = Some(rel);
        }
    };
    let y_inv =
        c.y.clone()
            .try_inverse()
            .expect("y is a permutation matrix");
    let n = c.xs.len();
    for i in 0..n - 1 {
        let x = &c.xs[i];
        let x_inv = x.clone().try_inverse().expect("x_i is unitary");
        let comm = x * &c.y * x_inv * &y_inv;
        record(
            max_abs(&(comm - &c.xs[i + 1])),
            Relation::Commutator(i + 1),
            &mut failed,
        );
    }
    let xn = &c.xs[n - 1];
    record(
        max_abs(&(xn * &c.y - &c.y * xn)),
        Relation::Central,
        &mut failed,
    );
    let scalar = xn[(0, 0)];
    let off = xn - CMat::identity(c.dim, c.dim) * scalar;
    record(max_abs(&off), Relation::Scalar, &mut failed);
    RelationCheck {
        max_residual: worst,
        failed,
    }
}

fn nullity(m: &CMat) -> usize {
    if m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let rank = sv
        .iter()
        .filter(|&&s| s > NULLITY_THRESHOLD * smax && s > 0.0)
        .count();
    m.ncols() - rank
}

/// `vec` index of entry `(r, c)` in column-major order.
fn vec_index(dim: usize, r: usize, c: usize) -> usize {
    c * dim + r
}

/// Matrix of `A -> g A - A g` on `vec(A)`, restricted to the given basis columns.
fn commutator_operator(g: &CMat, basis: &[(usize, usize)], dim: usize) -> CMat {
    let mut op = CMat::zeros(dim * dim, basis.len());
    for (col, &(r, c)) in basis.iter().enumerate() {
        let mut unit = CMat::zeros(dim, dim);
        unit[(r, c)] = Complex64::new(1.0, 0.0);
        let image = g * &unit - &unit * g;
        for cc in 0..dim {
            for rr in 0..dim {
                op[(vec_index(dim, rr, cc), col)] = image[(rr, cc)];
            }
        }
    }
    op
}

/// Dimension of `{A : A g = g A for all generators g}`; `1` means irreducible.
///
/// The diagonal generators act on `vec(A)` by the diagonal operator with
/// entries `(λ_r - λ_c)`, whose singular values are those moduli; their common
/// null space is spanned by the unit matrices `E_{rc}` with matching joint
/// eigenvalues. The operator of `y` is then restricted to that span and its
/// nullity is read from an SVD.
pub fn commutant_dimension(c: &ComplexRep) -> Result<usize> {
    let d = c.dim;
    let diag: Vec<Vec<Complex64>> =
        c.xs.iter()
            .map(|x| x.diagonal().iter().cloned().collect())
            .collect();
    let gap = |r: usize, col: usize| -> f64 {
        diag.iter()
            .map(|dv| (dv[r] - dv[col]).norm())
            .fold(0.0, f64::max)
    };
    let mut smax = 0.0f64;
    for r in 0..d {
        for col in 0..d {
            smax = smax.max(gap(r, col));
        }
    }
    let basis: Vec<(usize, usize)> = (0..d)
        .flat_map(|col| (0..d).map(move |r| (r, col)))
        .filter(|&(r, col)| smax == 0.0 || gap(r, col) <= NULLITY_THRESHOLD * smax)
        .collect();
    let op = commutator_operator(&c.y, &basis, d);
    Ok(nullity(&op))
}

/// Nullity of the full stacked operator over all generators, with no use of
/// diagonal structure. Quadratic in `dim^2`; meant for small dimensions.
pub fn commutant_dimension_dense(c: &ComplexRep) -> usize {
    let d = c.dim;
    let all: Vec<(usize, usize)> = (0..d)
        .flat_map(|col| (0..d).map(move |r| (r, col)))
        .collect();
    let blocks: Vec<CMat> = c
        .generators()
        .map(|g| commutator_operator(g, &all, d))
        .collect();
    let mut stacked = CMat::zeros(blocks.len() * d * d, d * d);
    for (b, block) in blocks.iter().enumerate() {
        stacked.rows_mut(b * d * d, d * d).copy_from(block);
    }
    nullity(&stacked)
}

/// Groups basis vectors by joint eigenvalue across `x_1, ..., x_n`.
/// Returns `(number of classes, largest class size)`.
pub fn mutual_eigenspace_census(c: &ComplexRep) -> Result<(usize, usize)> {
    let commutant = commutant_dimension(c)?;
    if commutant != 1 {
        return Err(Error::Reducible(commutant));
    }
    let signature = |j: usize| -> Vec<Complex64> { c.xs.iter().map(|x| x[(j, j)]).collect() };
    let mut classes: Vec<(Vec<Complex64>, usize)> = Vec::new();
    for j in 0..c.dim {
        let sig = signature(j);
        match classes
            .iter_mut()
            .find(|(rep, _)| rep.iter().zip(&sig).all(|(a, b)| (a - b).norm() <= c.tol))
        {
            Some(class) => class.1 += 1,
            None => classes.push((sig, 1)),
        }
    }
    let max = classes.iter().map(|c| c.1).max().unwrap_or(0);
    Ok((classes.len(), max))
}

/// Whether `V_{p^j}`, the span of the `<y>`-orbit of
/// `e_1 + e_{p^j + 1} + ... + e_{(p^{N-j} - 1) p^j + 1}`, is invariant under
/// every generator.
pub fn check_subspace_stable(c: &ComplexRep, j: StableIndex) -> Result<bool> {
    let j = j.j();
    if j > c.exponent {
        return Err(Error::InvalidArgument(format!(
            "stable index {j} exceeds N = {}",
            c.exponent
        )));
    }
    let step = c.p.pow(j) as usize;
    let mut seed = DVector::<Complex64>::zeros(c.dim);
    for idx in (0..c.dim).step_by(step) {
        seed[idx] = Complex64::new(1.0, 0.0);
    }
    let mut spanning = CMat::zeros(c.dim, step);
    let mut v = seed;
    for s in 0..step {
        spanning.set_column(s, &v);
        v = &c.y * v;
    }
    let q = spanning.qr().q();
    let qh = q.adjoint();
    for g in c.generators() {
        let image = g * &q;
        let residual = &image - &q * (&qh * &image);
        if max_abs(&residual) > c.tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlog::PrimePower;
    use crate::standard_form::{build_rep, LambdaSpec};

    fn complex(p: u64, n: u32, e: &[u64]) -> ComplexRep {
        let spec = LambdaSpec::new(PrimePower::new(p, n).unwrap(), e.to_vec()).unwrap();
        realize(&build_rep(&spec).unwrap()).unwrap()
    }

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-12
    }

    #[test]
    fn realize_smallest_example() {
        let c = complex(2, 1, &[0, 1]);
        let x2 = &c.xs()[1];
        assert!(close(x2[(0, 0)], -1.0, 0.0) && close(x2[(1, 1)], -1.0, 0.0));
        let x1 = &c.xs()[0];
        assert!(close(x1[(0, 0)], 1.0, 0.0) && close(x1[(1, 1)], -1.0, 0.0));
        assert!(close(c.y()[(0, 1)], 1.0, 0.0) && close(c.y()[(1, 0)], 1.0, 0.0));
        assert!(close(c.y()[(0, 0)], 0.0, 0.0));
    }

    #[test]
    fn realize_guard() {
        let spec = LambdaSpec::new(PrimePower::new(3, 4).unwrap(), vec![0, 1]).unwrap();
        assert!(matches!(
            realize(&build_rep(&spec).unwrap()),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn trivial_rep() {
        let c = complex(3, 1, &[0, 0, 0]);
        assert!(c
            .xs()
            .iter()
            .all(|x| (x - CMat::identity(3, 3)).iter().all(|z| z.norm() < 1e-12)));
        assert!(check_relations(&c).is_ok());
        assert_eq!(commutant_dimension(&c).unwrap(), 3);
        assert_eq!(commutant_dimension_dense(&c), 3);
        assert!(matches!(
            mutual_eigenspace_census(&c),
            Err(Error::Reducible(3))
        ));
    }

    #[test]
    fn relations_hold_and_corruption_is_caught() {
        let spec = LambdaSpec::new(PrimePower::new(5, 1).unwrap(), vec![0, 1, 1]).unwrap();
        let rep = build_rep(&spec).unwrap();
        let c = realize(&rep).unwrap();
        let check = check_relations(&c);
        assert!(check.is_ok());
        assert!(check.max_residual < 1e-12);

        let mut rows = rep.rows().to_vec();
        rows[0][2] = (rows[0][2] + 1) % 5;
        let bad =
            ComplexRep::from_exponent_rows(5, 1, &rows, Complex64::new(1.0, 0.0), 64).unwrap();
        assert_eq!(check_relations(&bad).failed, Some(Relation::Commutator(1)));

        let mut rows = rep.rows().to_vec();
        rows[2][3] = 0;
        let bad =
            ComplexRep::from_exponent_rows(5, 1, &rows, Complex64::new(1.0, 0.0), 64).unwrap();
        assert!(!check_relations(&bad).is_ok());
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant_dimension(&complex(2, 1, &[0, 1])).unwrap(), 1);
        assert_eq!(commutant_dimension(&complex(5, 1, &[0, 0, 1])).unwrap(), 1);
        assert_eq!(commutant_dimension(&complex(3, 2, &[0, 0])).unwrap(), 9);
        assert_eq!(commutant_dimension(&complex(3, 2, &[0, 3])).unwrap(), 3);
    }

    #[test]
    fn staged_commutant_matches_dense() {
        for (p, n, e) in [
            (2u64, 1u32, vec![0u64, 1]),
            (2, 2, vec![0, 2]),
            (2, 2, vec![0, 1]),
            (3, 1, vec![0, 0, 1]),
            (3, 1, vec![0, 1, 0]),
            (3, 1, vec![0, 0, 0]),
            (2, 2, vec![0, 0]),
            (5, 1, vec![0, 2, 3]),
        ] {
            let c = complex(p, n, &e);
            assert_eq!(
                commutant_dimension(&c).unwrap(),
                commutant_dimension_dense(&c),
                "{e:?}"
            );
        }
    }

    #[test]
    fn census_examples() {
        assert_eq!(
            mutual_eigenspace_census(&complex(5, 1, &[0, 0, 1])).unwrap(),
            (5, 1)
        );
        assert_eq!(
            mutual_eigenspace_census(&complex(3, 1, &[0, 1])).unwrap(),
            (3, 1)
        );
        assert_eq!(
            mutual_eigenspace_census(&complex(2, 1, &[0, 1])).unwrap(),
            (2, 1)
        );
    }

    #[test]
    fn subspace_examples() {
        assert!(!check_subspace_stable(&complex(5, 1, &[0, 1, 0]), StableIndex(0)).unwrap());
        assert!(check_subspace_stable(&complex(5, 1, &[0, 1, 0]), StableIndex(1)).unwrap());
        assert!(check_subspace_stable(&complex(3, 2, &[0, 3]), StableIndex(1)).unwrap());
        assert!(!check_subspace_stable(&complex(3, 2, &[0, 3]), StableIndex(0)).unwrap());
        assert!(check_subspace_stable(&complex(3, 2, &[0, 1]), StableIndex(2)).unwrap());
        assert!(check_subspace_stable(&complex(3, 2, &[0, 1]), StableIndex(3)).is_err());
    }
}
