//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use maxclass::counting::{
    closed_form_census, closed_form_r, enumerate_isoclasses_with, series_r, EnumerationOptions,
    DEFAULT_BUDGET,
};
use maxclass::oracle::{check_relations, commutant_dimension, mutual_eigenspace_census, realize};
use maxclass::stability::{is_irreducible_depth, is_irreducible_structural};
use maxclass::standard_form::all_specs;
use maxclass::twistshout::shout_orbit;
use maxclass::verify::{run_suite, Suite};
use maxclass::zeta::{abscissa, functional_equation_of, zeta_closed_form, Monomial};
use maxclass::{build_rep, PrimePower};
use num_bigint::BigUint;
use num_rational::Ratio;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn counting_grid() -> Vec<(usize, u64, u32)> {
    let mut grid = Vec::new();
    for (n, p, max_n) in [
        (2usize, 2u64, 4u32),
        (2, 3, 3),
        (3, 3, 3),
        (3, 5, 2),
        (3, 7, 2),
        (4, 5, 2),
        (5, 5, 1),
        (5, 7, 1),
    ] {
        for big_n in 1..=max_n {
            grid.push((n, p, big_n));
        }
    }
    grid
}

fn single_thread() -> EnumerationOptions {
    EnumerationOptions {
        budget: DEFAULT_BUDGET,
        threads: 1,
    }
}

fn within(start: Instant, limit: Duration, summary: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed <= limit {
        Ok(format!("{summary} in {:.2?}", elapsed))
    } else {
        Err(format!(
            "{summary} but took {:.2?} (limit {:?})",
            elapsed, limit
        ))
    }
}

fn triple_agreement() -> Outcome {
    let start = Instant::now();
    let grid = counting_grid();
    for &(n, p, big_n) in &grid {
        let enumerated = enumerate_isoclasses_with(n, p, big_n, single_thread())
            .map_err(|e| e.to_string())?
            .r_enumerated
            .expect("enumeration fills its count");
        let closed = closed_form_r(n, p, big_n).map_err(|e| e.to_string())?;
        let series = series_r(n, p, big_n).map_err(|e| e.to_string())?;
        if enumerated != closed || closed != series {
            return Err(format!(
                "n={n} p={p} N={big_n}: enumerated {enumerated}, closed {closed}, series {series}"
            ));
        }
    }
    for (n, p, big_n, r) in [(3, 5, 1, 8u32), (3, 5, 2, 56), (2, 3, 2, 6), (4, 5, 1, 28)] {
        let got = closed_form_r(n, p, big_n).map_err(|e| e.to_string())?;
        if got != BigUint::from(r) {
            return Err(format!("spot value n={n} p={p} N={big_n}: {got} != {r}"));
        }
    }
    within(
        start,
        Duration::from_secs(60),
        format!("{} cells agree", grid.len()),
    )
}

fn functional_equation() -> Outcome {
    let start = Instant::now();
    for n in 2..=10usize {
        let f = zeta_closed_form(n).map_err(|e| e.to_string())?;
        let eq = functional_equation_of(&f);
        let expected = Monomial::new(1, n as i64 - 1, 0);
        if !eq.holds_with(&expected) {
            return Err(format!("n={n}: factor {:?}", eq.factor));
        }
    }
    within(
        start,
        Duration::from_secs(1),
        "factor p^{n-1} for n=2..10".to_string(),
    )
}

fn abscissae() -> Outcome {
    for n in 2..=10usize {
        let got = abscissa(n).map_err(|e| e.to_string())?;
        let expected = if n == 2 { 1 } else { n as i64 - 2 };
        if got != Ratio::from_integer(expected) {
            return Err(format!("n={n}: abscissa {got}, expected {expected}"));
        }
    }
    let two = zeta_closed_form(2).map_err(|e| e.to_string())?;
    if two.render_text() != "(1 - t) / ((1 - p t))" {
        return Err(format!("n=2 did not cancel: {}", two.render_text()));
    }
    Ok("n-2 for n=3..10, 1 for n=2 after cancellation".to_string())
}

fn orbit_size_law() -> Outcome {
    let mut checked = 0;
    for (n, p, big_n) in [(3, 5, 1), (3, 3, 2), (2, 3, 2), (4, 5, 1), (2, 2, 3)] {
        let pp = PrimePower::new(p, big_n).map_err(|e| e.to_string())?;
        for spec in all_specs(n, pp) {
            shout_orbit(&spec).map_err(|e| e.to_string())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} tails"))
}

fn irreducibility_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut irreducible = 0;
    let mut worst = 0.0f64;
    let grid = [
        (2usize, 2u64, 1u32),
        (2, 2, 2),
        (2, 2, 3),
        (2, 2, 4),
        (2, 2, 5),
        (2, 3, 1),
        (2, 3, 2),
        (2, 3, 3),
        (3, 3, 1),
        (3, 3, 2),
        (3, 3, 3),
        (3, 5, 1),
        (4, 5, 1),
        (5, 5, 1),
    ];
    for (n, p, big_n) in grid {
        let pp = PrimePower::new(p, big_n).map_err(|e| e.to_string())?;
        for spec in all_specs(n, pp) {
            let at = || format!("{:?} at p={p} N={big_n}", spec.exponents());
            let rep = build_rep(&spec).map_err(|e| e.to_string())?;
            let c = realize(&rep).map_err(|e| e.to_string())?;
            let rel = check_relations(&c);
            worst = worst.max(rel.max_residual);
            if rel.max_residual >= 1e-9 {
                return Err(format!(
                    "relation residual {} for {}",
                    rel.max_residual,
                    at()
                ));
            }
            let depth = is_irreducible_depth(&spec).map_err(|e| e.to_string())?;
            let structural = is_irreducible_structural(&rep);
            let commutant = commutant_dimension(&c).map_err(|e| e.to_string())?;
            if depth != structural || structural != (commutant == 1) {
                return Err(format!(
                    "depth {depth}, structural {structural}, commutant {commutant} for {}",
                    at()
                ));
            }
            if structural {
                irreducible += 1;
                let census = mutual_eigenspace_census(&c).map_err(|e| e.to_string())?;
                if census != (rep.dim() as usize, 1) {
                    return Err(format!("census {census:?} for {}", at()));
                }
            }
            checked += 1;
        }
    }
    within(
        start,
        Duration::from_secs(300),
        format!("{checked} specs ({irreducible} irreducible), max residual {worst:.1e}"),
    )
}

fn simplex_suite() -> Outcome {
    let outcomes = run_suite(Suite::Simplex, None).map_err(|e| e.to_string())?;
    match outcomes.iter().find(|o| !o.passed()) {
        Some(o) => Err(o.to_string()),
        None => Ok(format!("{} properties", outcomes.len())),
    }
}

fn census_structure() -> Outcome {
    let grid = counting_grid();
    for &(n, p, big_n) in &grid {
        let report =
            enumerate_isoclasses_with(n, p, big_n, single_thread()).map_err(|e| e.to_string())?;
        let enumerated = report.orbit_census.expect("enumeration fills its census");
        let expected = closed_form_census(n, p, big_n).map_err(|e| e.to_string())?;
        if enumerated != expected {
            return Err(format!(
                "n={n} p={p} N={big_n}: enumerated {enumerated:?}, case analysis {expected:?}"
            ));
        }
    }
    Ok(format!("{} cells", grid.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 triple-agreement counting", triple_agreement),
        ("2 functional equation", functional_equation),
        ("3 abscissa of convergence", abscissae),
        ("4 orbit-size law", orbit_size_law),
        ("5 irreducibility equivalence", irreducibility_equivalence),
        ("6 simplex number identities", simplex_suite),
        ("7 orbit census structure", census_structure),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
