//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p divisible-sets --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use divisible_sets::cli;
use divisible_sets::constructions::{direct_sum, lifted_mrd, spread};
use divisible_sets::criteria::{
    excluded_intervals, heden_tail_bound, min_cardinality, min_cardinality_multiple, quadratic_excludes,
};
use divisible_sets::incidence::{
    check_counting_identities, classify_spectrum, divisibility_exponent, exponent_of_spectrum, hyperplane_spectrum,
    triple_spectrum, Classification, IncidenceSpectrum,
};
use divisible_sets::lp::{build_system, ilp_feasible, lp_feasible, scan_dimensions, ScanOptions, Variable};
use divisible_sets::spectrum::{constructible_set, report, SpectrumOptions};
use divisible_sets::Limits;
use num_bigint::BigInt;
use num_rational::BigRational;

mod common;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Check {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

const PAPER_LIST: [u64; 23] = [
    21, 31, 32, 33, 42, 43, 44, 52, 53, 54, 55, 62, 63, 64, 65, 66, 72, 73, 74, 75, 76, 77, 78,
];

fn spectrum_reproduction() -> Check {
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run_with(
        [
            "divsets", "spectrum", "--q", "2", "--k", "2", "--r", "3", "--nmax", "81",
        ],
        &mut out,
        &mut err,
    );
    within(start, Duration::from_secs(1))?;
    ensure!(code == 0, "exit code {code}");
    let text = String::from_utf8(out).unwrap();
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("admissible: "))
        .ok_or("no admissible line")?;
    let listed: Vec<u64> = line
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(|x| x.trim().parse().unwrap())
        .collect();
    ensure!(listed == PAPER_LIST, "cli listed {listed:?}");
    let rep = report(2, 2, 3, 81, &SpectrumOptions::default()).map_err(|e| e.to_string())?;
    ensure!(rep.admissible() == PAPER_LIST, "report admits {:?}", rep.admissible());
    Ok(())
}

fn construction_semigroup() -> Check {
    let got: BTreeSet<u64> = constructible_set(2, 2, 3, 81)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|e| e.n)
        .collect();
    let mut expected = BTreeSet::new();
    for a in 0..=3 {
        for b in 0..=2 {
            let n = 21 * a + 32 * b;
            if (1..=81).contains(&n) {
                expected.insert(n);
            }
        }
    }
    ensure!(got == expected, "got {got:?}, expected {expected:?}");
    ensure!(got == BTreeSet::from([21, 32, 42, 53, 63, 64, 74]), "got {got:?}");
    Ok(())
}

fn spread_verification() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let s = spread(2, 2, 3, &limits).map_err(|e| e.to_string())?;
    ensure!(
        s.len() == 21 && s.ambient_dim() == 6,
        "shape {} in {}",
        s.len(),
        s.ambient_dim()
    );
    ensure!(s.pairwise_disjoint(), "not disjoint");
    ensure!(
        s.span_basis().rows() == 6,
        "span has dimension {}",
        s.span_basis().rows()
    );
    let a = hyperplane_spectrum(&s, &limits).map_err(|e| e.to_string())?;
    ensure!(a.counts == BTreeMap::from([(5, 63)]), "spectrum {:?}", a.counts);
    let b = triple_spectrum(&s);
    let ids = check_counting_identities(&a, Some(&b), 2, 6, 2, 21);
    ensure!(ids.all_hold() && ids.checks.len() == 5, "identities {ids:?}");
    let e = divisibility_exponent(&s, &limits).map_err(|e| e.to_string())?;
    ensure!(e == 4, "exponent {e}");
    within(start, Duration::from_secs(1))
}

fn lifted_mrd_verification() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let s = lifted_mrd(2, 2, 3, &limits).map_err(|e| e.to_string())?;
    ensure!(
        s.len() == 32 && s.ambient_dim() == 7,
        "shape {} in {}",
        s.len(),
        s.ambient_dim()
    );
    ensure!(s.pairwise_disjoint(), "not disjoint");
    // covered points: exactly the 127 - 31 points with a nonzero among the first two coordinates
    let cover = s.point_multiplicities();
    ensure!(cover.len() == 96, "{} points covered", cover.len());
    ensure!(
        cover.keys().all(|p| p[0] != 0 || p[1] != 0),
        "covers a point of the special 5-subspace"
    );
    let a = hyperplane_spectrum(&s, &limits).map_err(|e| e.to_string())?;
    ensure!(
        a.counts == BTreeMap::from([(0, 3), (8, 124)]),
        "spectrum {:?}",
        a.counts
    );
    let b = triple_spectrum(&s);
    let ids = check_counting_identities(&a, Some(&b), 2, 7, 2, 32);
    ensure!(ids.all_hold() && ids.checks.len() == 5, "identities {ids:?}");
    let e = exponent_of_spectrum(&a);
    ensure!(e == 3, "exponent {e}");
    within(start, Duration::from_secs(1))
}

fn classification_lemmas() -> Check {
    let limits = Limits::default();
    let s = spread(2, 2, 2, &limits).map_err(|e| e.to_string())?;
    ensure!(s.ambient_dim() == 4 && s.len() == 5, "spread(2,2,2) shape");
    let a = hyperplane_spectrum(&s, &limits).map_err(|e| e.to_string())?;
    let c = classify_spectrum(&a, 2, 4, 2).map_err(|e| e.to_string())?;
    ensure!(c == Classification::PartitionOf2k, "spread(2,2,2) classified as {c:?}");
    let a = IncidenceSpectrum {
        q: 2,
        v: 6,
        k: 2,
        n: 21,
        counts: BTreeMap::from([(5, 63)]),
    };
    let c = classify_spectrum(&a, 2, 6, 2).map_err(|e| e.to_string())?;
    ensure!(
        c == Classification::Spread {
            s: 3,
            r: BigInt::from(5)
        },
        "{{5: 63}} classified as {c:?}"
    );
    Ok(())
}

fn tight_bounds() -> Check {
    let int = BigInt::from;
    ensure!(
        min_cardinality(2, 2, 3) == int(21),
        "min_cardinality(2,2,3) = {}",
        min_cardinality(2, 2, 3)
    );
    ensure!(min_cardinality_multiple(2, 2, 3) == int(32), "multiple (2,2,3)");
    ensure!(min_cardinality_multiple(2, 2, 1) == int(6), "multiple (2,2,1)");
    let iii = heden_tail_bound(2, 2, 3, true).map_err(|e| e.to_string())?;
    ensure!(
        iii.improved_bound == int(6) && iii.heden_minimum() == int(6),
        "(2,2,3,multiple): {iii:?}"
    );
    let iv = heden_tail_bound(2, 2, 4, true).map_err(|e| e.to_string())?;
    ensure!(
        iv.improved_bound == int(16) && iv.heden_minimum() == int(16),
        "(2,2,4,multiple): {iv:?}"
    );
    let ii = heden_tail_bound(2, 2, 5, false).map_err(|e| e.to_string())?;
    ensure!(
        ii.improved_bound == int(21) && ii.heden_bound == int(16) && ii.heden_strict,
        "(2,2,5): {ii:?}"
    );
    Ok(())
}

fn lp_engine() -> Check {
    let one_second = Duration::from_secs(1);
    let sys = build_system(2, 2, 3, 21, 6, false).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let lp = lp_feasible(&sys);
    within(start, one_second)?;
    ensure!(lp.is_feasible(), "n = 21, v = 6 LP infeasible");
    let start = Instant::now();
    let ilp = ilp_feasible(&sys, 10_000);
    within(start, one_second)?;
    ensure!(ilp.is_feasible(), "n = 21, v = 6 ILP status {:?}", ilp.status);
    let point = ilp.point.as_ref().unwrap();
    ensure!(sys.is_solution(point), "ILP point does not solve the system");
    let a5 = ilp.value(&sys, Variable::Hyperplane(5)).cloned();
    ensure!(a5 == Some(BigRational::from_integer(BigInt::from(63))), "a_5 = {a5:?}");
    ensure!(point.iter().all(|x| x.is_integer()), "ILP point not integral");

    let sys = build_system(2, 2, 3, 13, 6, false).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let lp = lp_feasible(&sys);
    within(start, one_second)?;
    ensure!(!lp.is_feasible(), "n = 13, v = 6 LP feasible");
    let y = lp.farkas.as_ref().ok_or("no certificate for n = 13")?;
    ensure!(sys.is_infeasibility_certificate(y), "bad certificate for n = 13");

    let start = Instant::now();
    let scan = scan_dimensions(2, 2, 3, 22, 4, 12, ScanOptions::default()).map_err(|e| e.to_string())?;
    within(start, one_second * 9)?;
    ensure!(
        scan.excluded_on_range && scan.feasible_dims.is_empty(),
        "n = 22 feasible at {:?}",
        scan.feasible_dims
    );
    for entry in &scan.entries {
        if let Some(lp) = &entry.lp {
            let sys = build_system(2, 2, 3, 22, entry.v, false).map_err(|e| e.to_string())?;
            let y = lp.farkas.as_ref().ok_or(format!("no certificate at v = {}", entry.v))?;
            ensure!(
                sys.is_infeasibility_certificate(y),
                "bad certificate at v = {}",
                entry.v
            );
        } else {
            ensure!(entry.skipped.is_some(), "v = {} neither solved nor skipped", entry.v);
        }
    }
    Ok(())
}

fn direct_sum_closure() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    let left = spread(2, 2, 3, &limits).map_err(|e| e.to_string())?;
    let right = lifted_mrd(2, 2, 3, &limits).map_err(|e| e.to_string())?;
    let s = direct_sum(&left, &right).map_err(|e| e.to_string())?;
    ensure!(
        s.len() == 53 && s.ambient_dim() == 13,
        "shape {} in {}",
        s.len(),
        s.ambient_dim()
    );
    let v = cli::verify(&s, 3, false, &limits).map_err(|e| e.to_string())?;
    ensure!(v.verified, "not verified: {v:?}");
    ensure!(v.exponent == Some(3), "exponent {:?}", v.exponent);
    ensure!(
        v.hyperplane_spectrum.as_ref().map(|a| a.total()) == Some(8191),
        "hyperplane total"
    );
    within(start, Duration::from_secs(10))
}

/// tau with machine integers, written out from its definition.
fn tau_i128(n: i128, d: i128, u: i128, m: i128) -> i128 {
    d * d * u * u * m * (m - 1) - n * (2 * m - 1) * u * (u - 1) * d + n * (u - 1) * (n * (u - 1) + 1)
}

fn oracle_equivalence() -> Check {
    for (q, k, r) in [(2u64, 2u32, 3u32), (3, 1, 1)] {
        let (d, u) = ((q as i128).pow(r), (q as i128).pow(k));
        let rep = excluded_intervals(q, k, r);
        for n in 1..=200u64 {
            let nb = BigInt::from(n);
            let in_interval = rep.interval_containing(&nb).is_some();
            // every m >= 2 with tau <= 0, far past the last possible interval
            let brute = (2..=4 * rep.m_max as i128 + 4).any(|m| tau_i128(n as i128, d, u, m) <= 0);
            ensure!(
                in_interval == brute,
                "({q},{k},{r}) n = {n}: interval {in_interval}, scan {brute}"
            );
            // m = 1 gives tau < 0 exactly below (du - 1)/(u - 1), which contains the base interval
            let below_m1 = tau_i128(n as i128, d, u, 1) < 0;
            ensure!(
                !rep.base_contains(&nb) || below_m1,
                "({q},{k},{r}) n = {n}: base interval not below m = 1"
            );
            let scanned = quadratic_excludes(q, k, r, n).excluded;
            ensure!(
                scanned == (in_interval || below_m1),
                "({q},{k},{r}) n = {n}: quadratic_excludes {scanned}, intervals {in_interval}, m = 1 {below_m1}"
            );
        }
    }
    Ok(())
}

fn property_suite() -> Check {
    let limits = Limits::default();
    let mut failures = Vec::new();
    for (recipe, guaranteed) in common::catalogue() {
        let set = recipe.build(&limits).map_err(|e| e.to_string())?;
        let (restricted, v) = set.span_and_restrict();
        let a = hyperplane_spectrum(&restricted, &limits).map_err(|e| e.to_string())?;
        let b = triple_spectrum(&restricted);
        let ids = check_counting_identities(&a, Some(&b), set.q(), v, set.member_dim(), set.len());
        if !set.pairwise_disjoint() || !ids.all_hold() || ids.checks.len() != 5 {
            failures.push(format!("{recipe}: identities"));
        }
        let e = exponent_of_spectrum(&a);
        if e < guaranteed {
            failures.push(format!("{recipe}: exponent {e} < {guaranteed}"));
        }
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("spectrum reproduction", spectrum_reproduction),
        ("construction semigroup", construction_semigroup),
        ("spread verification", spread_verification),
        ("lifted MRD verification", lifted_mrd_verification),
        ("classification lemmas", classification_lemmas),
        ("tight bounds", tight_bounds),
        ("LP engine", lp_engine),
        ("direct-sum closure", direct_sum_closure),
        ("oracle equivalence", oracle_equivalence),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
