//! Invariant suites over small exhaustive grids, one outcome per property.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counting::{closed_form_census, count, Method};
use crate::error::{Error, Result};
use crate::oracle::{
    check_relations, check_subspace_stable, commutant_dimension, mutual_eigenspace_census, realize,
};
use crate::rootlog::PrimePower;
use crate::simplex::{gamma_congruence_check, simplex, simplex_mod, SimplexTable};
use crate::stability::{
    is_irreducible_depth, is_irreducible_structural, is_periodic_from, minimal_stable,
    periodicity_exponent, restriction_monotonicity_check, StableIndex,
};
use crate::standard_form::{
    all_specs, build_rep, closing_constraint_holds, recursion_holds, wraparound_holds, LambdaSpec,
};
use crate::twistshout::{canonical_tail, orbit_period, shout_orbit, shout_shift};
use crate::zeta::{
    abscissa, functional_equation_of, series_coefficients, three_case_product_assembly,
    zeta_closed_form, Monomial,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Simplex,
    StandardForm,
    Stability,
    Shout,
    Counting,
    Zeta,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Simplex,
        Suite::StandardForm,
        Suite::Stability,
        Suite::Shout,
        Suite::Counting,
        Suite::Zeta,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Simplex => "simplex",
            Suite::StandardForm => "standardform",
            Suite::Stability => "stability",
            Suite::Shout => "shout",
            Suite::Counting => "counting",
            Suite::Zeta => "zeta",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// A single `(n, p, N)` grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub n: usize,
    pub p: u64,
    pub exponent: u32,
}

impl Cell {
    pub const fn new(n: usize, p: u64, exponent: u32) -> Self {
        Self { n, p, exponent }
    }

    fn pp(self) -> Result<PrimePower> {
        PrimePower::new(self.p, self.exponent)
    }

    fn specs(self) -> Result<impl Iterator<Item = LambdaSpec>> {
        if self.n < 2 {
            return Err(Error::ClassTooSmall(self.n));
        }
        Ok(all_specs(self.n, self.pp()?))
    }
}

/// Result of checking one property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub suite: Suite,
    pub property: String,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} ({} cases)",
            self.suite, self.property, self.checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}

struct Check {
    outcome: PropertyOutcome,
}

impl Check {
    fn new(suite: Suite, property: impl Into<String>) -> Self {
        Self {
            outcome: PropertyOutcome {
                suite,
                property: property.into(),
                checked: 0,
                counterexample: None,
            },
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.outcome.checked += 1;
        if !ok && self.outcome.counterexample.is_none() {
            self.outcome.counterexample = Some(describe());
        }
    }

    fn done(self) -> PropertyOutcome {
        self.outcome
    }
}

fn describe(spec: &LambdaSpec) -> String {
    let pp = spec.pp();
    format!(
        "n={} p={} N={} lambda={:?}",
        spec.n(),
        pp.p(),
        pp.exponent(),
        spec.exponents()
    )
}

const FORM_GRID: [Cell; 7] = [
    Cell::new(2, 2, 3),
    Cell::new(2, 3, 2),
    Cell::new(3, 2, 2),
    Cell::new(3, 3, 2),
    Cell::new(3, 5, 1),
    Cell::new(4, 3, 1),
    Cell::new(4, 5, 1),
];

const COUNT_GRID: [Cell; 20] = [
    Cell::new(2, 2, 1),
    Cell::new(2, 2, 2),
    Cell::new(2, 2, 3),
    Cell::new(2, 2, 4),
    Cell::new(2, 3, 1),
    Cell::new(2, 3, 2),
    Cell::new(2, 3, 3),
    Cell::new(3, 3, 1),
    Cell::new(3, 3, 2),
    Cell::new(3, 3, 3),
    Cell::new(3, 5, 1),
    Cell::new(3, 5, 2),
    Cell::new(3, 7, 1),
    Cell::new(3, 7, 2),
    Cell::new(4, 5, 1),
    Cell::new(4, 5, 2),
    Cell::new(5, 5, 1),
    Cell::new(5, 7, 1),
    Cell::new(2, 5, 0),
    Cell::new(4, 5, 0),
];

const ORACLE_GRID: [Cell; 6] = [
    Cell::new(2, 2, 3),
    Cell::new(2, 3, 2),
    Cell::new(3, 3, 1),
    Cell::new(3, 3, 2),
    Cell::new(3, 5, 1),
    Cell::new(4, 5, 1),
];

/// Runs `suite` on its default grid, or on the single `target` cell.
pub fn run_suite(suite: Suite, target: Option<Cell>) -> Result<Vec<PropertyOutcome>> {
    let pick = |default: &[Cell]| target.map_or_else(|| default.to_vec(), |c| vec![c]);
    match suite {
        Suite::Simplex => simplex_suite(target),
        Suite::StandardForm => standard_form_suite(&pick(&FORM_GRID)),
        Suite::Stability => stability_suite(&pick(&FORM_GRID)),
        Suite::Shout => shout_suite(&pick(&FORM_GRID)),
        Suite::Counting => counting_suite(&pick(&COUNT_GRID)),
        Suite::Zeta => zeta_suite(target.map(|c| c.n)),
        Suite::Oracle => oracle_suite(&pick(&ORACLE_GRID)),
    }
}

pub fn run_all(target: Option<Cell>) -> Result<Vec<PropertyOutcome>> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        out.extend(run_suite(suite, target)?);
    }
    Ok(out)
}

fn simplex_suite(target: Option<Cell>) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::Simplex;
    let cells: Vec<(u64, u32)> = match target {
        Some(c) => {
            c.pp()?;
            vec![(c.p, c.exponent)]
        }
        None => [2u64, 3, 5, 7, 11]
            .into_iter()
            .flat_map(|p| (1..=3u32).map(move |e| (p, e)))
            .collect(),
    };
    let table = SimplexTable::new(8, 64);

    let mut closed = Check::new(s, "binomial product form matches the recursive table");
    let mut tail_sum = Check::new(s, "T_k(j+1) = T_k(j) + ... + T_0(j)");
    let mut vandermonde = Check::new(s, "T_k(i+j) = sum_l T_l(i) T_{k-l}(j)");
    for k in 0..=8u32 {
        for j in 0..=63u64 {
            closed.record(table.get(k, j) == Some(&simplex(k, j)), || {
                format!("k={k} j={j}")
            });
            if j < 63 {
                let sum: BigUint = (0..=k).map(|l| simplex(l, j)).sum();
                tail_sum.record(simplex(k, j + 1) == sum, || format!("k={k} j={j}"));
            }
        }
    }
    for k in 0..=6u32 {
        for i in 0..=20u64 {
            for j in 0..=20u64 {
                let rhs: BigUint = (0..=k).map(|l| simplex(l, i) * simplex(k - l, j)).sum();
                vandermonde.record(simplex(k, i + j) == rhs, || format!("k={k} i={i} j={j}"));
            }
        }
    }

    let mut difference = Check::new(s, "k! (T_k(i) - T_k(j)) is divisible by i - j");
    for k in 1..=6u32 {
        let fact: BigUint = (1..=k).map(BigUint::from).product();
        for i in 0..=25u64 {
            for j in 0..i {
                let diff = &fact * (simplex(k, i) - simplex(k, j));
                difference.record((diff % BigUint::from(i - j)).is_zero(), || {
                    format!("k={k} i={i} j={j}")
                });
            }
        }
    }

    let mut periodic = Check::new(s, "T_k(a p^b + j) = T_k(j) mod p^b for k < p");
    let mut vanishing = Check::new(s, "T_k(p^N - 1) = 0 mod p^N for 2 <= k < p");
    let mut fast_path = Check::new(s, "modular evaluation matches exact residues");
    let mut gamma = Check::new(s, "shifted-index congruence for p^m T_k");
    for &(p, e) in &cells {
        let q = p.pow(e);
        let big_q = BigUint::from(q);
        for k in 1..(p as u32).min(9) {
            for alpha in 1..p.min(6) {
                for j in 0..12u64 {
                    let lhs = simplex(k, alpha * q + j) % &big_q;
                    periodic.record(lhs == simplex(k, j) % &big_q, || {
                        format!("k={k} p={p} b={e} alpha={alpha} j={j}")
                    });
                }
            }
            if k >= 2 {
                vanishing.record(simplex_mod(k, q - 1, p, e)? == 0, || {
                    format!("k={k} p={p} N={e}")
                });
            }
            for m in 1..=e {
                for alpha in (1..2 * p).filter(|a| a % p != 0) {
                    gamma.record(gamma_congruence_check(k, p, e, m, alpha)?, || {
                        format!("k={k} p={p} N={e} m={m} alpha={alpha}")
                    });
                }
            }
        }
        for k in 0..=7u32 {
            for j in [0u64, 1, 2, q - 1, q, q + 1, 3 * q + 2, 1000] {
                let exact = simplex(k, j) % &big_q;
                fast_path.record(BigUint::from(simplex_mod(k, j, p, e)?) == exact, || {
                    format!("k={k} j={j} p={p} N={e}")
                });
            }
        }
    }

    Ok([
        closed,
        tail_sum,
        vandermonde,
        difference,
        periodic,
        vanishing,
        gamma,
        fast_path,
    ]
    .into_iter()
    .map(Check::done)
    .collect())
}

fn standard_form_suite(cells: &[Cell]) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::StandardForm;
    let mut recursion = Check::new(s, "closed-form table satisfies the commutator recursion");
    let mut closing = Check::new(
        s,
        "closing constraint holds exactly when the table wraps around",
    );
    let mut automatic = Check::new(s, "closing constraint holds for p >= n");
    let mut geometric = Check::new(s, "row n - 1 is geometric in the column index");
    let mut depth = Check::new(
        s,
        "every table entry has depth at most the largest depth of the spec",
    );
    for &cell in cells {
        for spec in cell.specs()? {
            let rep = build_rep(&spec)?;
            let q = rep.dim();
            recursion.record(recursion_holds(&rep), || describe(&spec));
            let constraint = closing_constraint_holds(&spec);
            closing.record(constraint == wraparound_holds(&rep), || describe(&spec));
            if spec.is_non_exceptional() {
                automatic.record(constraint, || describe(&spec));
            }
            let n = spec.n();
            let ok = (1..=q)
                .all(|j| rep.entry(n - 1, j) == (spec.e(n - 1) + (j - 1) % q * spec.e(n)) % q);
            geometric.record(ok, || describe(&spec));
            let bound = spec.max_depth_from(1);
            let pp = spec.pp();
            let ok = rep
                .rows()
                .iter()
                .flatten()
                .all(|&e| pp.depth_of(e) <= bound);
            depth.record(ok, || describe(&spec));
        }
    }
    Ok([recursion, closing, automatic, geometric, depth]
        .into_iter()
        .map(Check::done)
        .collect())
}

fn stability_suite(cells: &[Cell]) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::Stability;
    let mut first_column = Check::new(s, "first-column comparison agrees with full periodicity");
    let mut equivalence = Check::new(
        s,
        "depth criterion agrees with the structural criterion (p >= n)",
    );
    let mut largest_depth = Check::new(s, "minimal stable index equals the largest depth (p >= n)");
    let mut monotone = Check::new(
        s,
        "stable index of a restriction never exceeds the full one",
    );
    for &cell in cells {
        for spec in cell.specs()? {
            let rep = build_rep(&spec)?;
            let pp = spec.pp();
            for first in 1..=spec.n() {
                for j in 0..=pp.exponent() {
                    let period = pp.power(j);
                    first_column.record(
                        rep.columns_equal_from(1, period + 1, first)
                            == is_periodic_from(&rep, period, first),
                        || format!("{} rows {first}.. j={j}", describe(&spec)),
                    );
                }
            }
            if spec.is_non_exceptional() {
                let structural = is_irreducible_structural(&rep);
                equivalence.record(is_irreducible_depth(&spec)? == structural, || {
                    describe(&spec)
                });
                largest_depth.record(
                    minimal_stable(&rep, 1).j() == periodicity_exponent(&spec),
                    || describe(&spec),
                );
            }
            for k in 2..spec.n() {
                monotone.record(restriction_monotonicity_check(&rep, k)?, || {
                    format!("{} k={k}", describe(&spec))
                });
            }
        }
    }
    Ok([first_column, equivalence, largest_depth, monotone]
        .into_iter()
        .map(Check::done)
        .collect())
}

fn shout_suite(cells: &[Cell]) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::Shout;
    let mut law = Check::new(
        s,
        "orbit size is p to the minimal stable index of rows 2..n (p >= n - 1)",
    );
    let mut walk = Check::new(s, "walking the recursion reproduces the orbit size");
    let mut canonical = Check::new(s, "canonical tail is constant on orbits");
    let mut compose = Check::new(s, "shout shifts compose additively");
    let mut irreducible = Check::new(s, "irreducibility is constant on orbits (p >= n)");
    let mut partition = Check::new(
        s,
        "orbit size is p to the largest depth among e_3..e_n (p >= n)",
    );
    for &cell in cells {
        let non_exceptional_minus_one = cell.p as u128 + 1 >= cell.n as u128;
        for spec in cell.specs()? {
            let pp = spec.pp();
            let q = pp.dim();
            let shifts: Vec<u64> = (0..q.min(6)).chain([q - 1]).collect();
            if non_exceptional_minus_one {
                let orbit = shout_orbit(&spec);
                law.record(orbit.is_ok(), || describe(&spec));
                if let Ok(orbit) = orbit {
                    walk.record(orbit_period(spec.tail(), q) == orbit.size, || {
                        describe(&spec)
                    });
                    if spec.is_non_exceptional() {
                        let base = is_irreducible_depth(&spec)?;
                        let ok = orbit.tails.iter().all(|t| {
                            LambdaSpec::from_tail(pp, t)
                                .and_then(|s| is_irreducible_depth(&s))
                                .is_ok_and(|v| v == base)
                        });
                        irreducible.record(ok, || describe(&spec));
                        partition.record(orbit.size == pp.power(spec.max_depth_from(3)), || {
                            describe(&spec)
                        });
                    }
                }
            }
            let base = canonical_tail(&spec);
            for &a in &shifts {
                let shifted = shout_shift(&spec, a)?;
                canonical.record(canonical_tail(&shifted) == base, || {
                    format!("{} shift={a}", describe(&spec))
                });
                for &b in &shifts[..3.min(shifts.len())] {
                    let twice = shout_shift(&shifted, b)?;
                    compose.record(twice == shout_shift(&spec, a + b)?, || {
                        format!("{} shifts={a},{b}", describe(&spec))
                    });
                }
            }
        }
    }
    Ok([law, walk, canonical, compose, irreducible, partition]
        .into_iter()
        .map(Check::done)
        .collect())
}

fn counting_suite(cells: &[Cell]) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::Counting;
    let mut agree = Check::new(s, "enumeration, closed form and series agree");
    let mut census = Check::new(s, "enumerated orbit census matches the case analysis");
    let mut total = Check::new(s, "orbit census sums to the count");
    for &c in cells {
        let report = count(c.n, c.p, c.exponent, &Method::ALL)?;
        let label = || report.to_string();
        agree.record(report.agree(), label);
        let enumerated = report.orbit_census.clone().unwrap_or_default();
        census.record(
            enumerated == closed_form_census(c.n, c.p, c.exponent)?,
            label,
        );
        let sum: u64 = enumerated.values().sum();
        total.record(report.r_enumerated == Some(BigUint::from(sum)), label);
    }
    Ok([agree, census, total]
        .into_iter()
        .map(Check::done)
        .collect())
}

fn zeta_suite(n: Option<usize>) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::Zeta;
    let classes: Vec<usize> = n.map_or_else(|| (2..=10).collect(), |n| vec![n]);
    let mut funceq = Check::new(s, "Z(1/p, 1/t) = p^{n-1} Z(p, t)");
    let mut abscissa_check = Check::new(s, "abscissa is n - 2 (n >= 3) or 1 (n = 2)");
    let mut assembly = Check::new(s, "case-by-case assembly equals the closed form");
    let mut series = Check::new(
        s,
        "series coefficients are natural numbers matching the closed-form count",
    );
    for &n in &classes {
        let f = zeta_closed_form(n)?;
        let eq = functional_equation_of(&f);
        funceq.record(eq.holds_with(&Monomial::new(1, n as i64 - 1, 0)), || {
            format!("n={n}")
        });
        let expected = if n == 2 { 1 } else { n as i64 - 2 };
        abscissa_check.record(abscissa(n)? == expected.into(), || format!("n={n}"));
        assembly.record(three_case_product_assembly(n)? == f.to_rational(), || {
            format!("n={n}")
        });
        let rational = f.to_rational();
        for p in [2u64, 3, 5, 7, 11, 13]
            .into_iter()
            .filter(|&p| p as usize >= n)
        {
            let coeffs = series_coefficients(&rational, p, 5)?;
            for (big_n, c) in coeffs.iter().enumerate() {
                let expected = crate::counting::closed_form_r(n, p, big_n as u32)?;
                let ok = c.to_biguint() == Some(expected);
                series.record(ok, || format!("n={n} p={p} N={big_n}"));
            }
        }
    }
    Ok([funceq, abscissa_check, assembly, series]
        .into_iter()
        .map(Check::done)
        .collect())
}

/// Tolerances swept by the robustness property.
pub const TOLERANCE_SWEEP: [f64; 5] = [1e-11, 1e-10, 1e-9, 1e-8, 1e-7];

fn oracle_suite(cells: &[Cell]) -> Result<Vec<PropertyOutcome>> {
    let s = Suite::Oracle;
    let mut relations = Check::new(s, "relations hold with residual below 1e-9");
    let mut structural = Check::new(
        s,
        "commutant dimension 1 iff the structural criterion holds",
    );
    let mut depth = Check::new(
        s,
        "commutant dimension 1 iff the depth criterion holds (p >= n)",
    );
    let mut census = Check::new(s, "mutual eigenspaces of irreducibles are p^N lines");
    let mut subspace = Check::new(
        s,
        "V_{p^j} is stable iff j is at least the minimal stable index",
    );
    let mut robust = Check::new(s, "verdicts are unchanged across tolerances 1e-11..1e-7");
    for &cell in cells {
        for spec in cell.specs()? {
            let rep = build_rep(&spec)?;
            let c = realize(&rep)?;
            let rel = check_relations(&c);
            relations.record(rel.is_ok() && rel.max_residual < 1e-9, || describe(&spec));
            let irreducible = commutant_dimension(&c)? == 1;
            structural.record(irreducible == is_irreducible_structural(&rep), || {
                describe(&spec)
            });
            if spec.is_non_exceptional() {
                depth.record(irreducible == is_irreducible_depth(&spec)?, || {
                    describe(&spec)
                });
            }
            if irreducible {
                let ok = mutual_eigenspace_census(&c).is_ok_and(|v| v == (rep.dim() as usize, 1));
                census.record(ok, || describe(&spec));
            }
            let minimal = minimal_stable(&rep, 1);
            let pp = spec.pp();
            let verdicts: Vec<bool> = (0..=pp.exponent())
                .map(|j| check_subspace_stable(&c, StableIndex(j)))
                .collect::<Result<_>>()?;
            let ok = verdicts
                .iter()
                .enumerate()
                .all(|(j, &v)| v == (j as u32 >= minimal.j()));
            subspace.record(ok, || describe(&spec));
            let mut same = true;
            for tol in TOLERANCE_SWEEP {
                let ct = c.clone().with_tolerance(tol);
                same &= check_relations(&ct).is_ok();
                for (j, &v) in verdicts.iter().enumerate() {
                    same &= check_subspace_stable(&ct, StableIndex(j as u32))? == v;
                }
            }
            robust.record(same, || describe(&spec));
        }
    }
    Ok([relations, structural, depth, census, subspace, robust]
        .into_iter()
        .map(Check::done)
        .collect())
}
