//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bec_core::code::{Code, ConvexityKind, Deficit};
use bec_core::enumeration::{
    check_unimodal, enumerate_benzenoids, enumerate_unbranched_fusenes,
    max_cd_unbranched_benzenoids, EnumerationReport, Enumerator, SearchConfig,
};
use bec_core::families::{dataset, helicene, spiral, Family, FamilySpec};
use bec_core::lattice::{canonical_cells, embed, trace, Condensation};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c(s: &str) -> Code {
    s.parse().expect("literal code")
}

const TABLE1_BUDGET: Duration = Duration::from_secs(1);
const TABLE3_BUDGET: Duration = Duration::from_secs(600);
const TABLE3_WORKERS: usize = 4;
const TABLE3_H_MAX: u32 = 12;
/// mcd(h) and ex(h) for h = 2..=12, with one printed extremal code per row.
const TABLE3: [(u32, u32, u64, &str); 11] = [
    (2, 0, 1, "55"),
    (3, 1, 1, "5351"),
    (4, 2, 2, "532521"),
    (5, 3, 6, "52325212"),
    (6, 4, 16, "5232252212"),
    (7, 6, 3, "523315151112"),
    (8, 8, 2, "53323325211211"),
    (9, 10, 3, "5332332252211211"),
    (10, 12, 6, "533233222522211211"),
    (11, 14, 16, "52311121225223233312"),
    (12, 16, 37, "5332332222252222211211"),
];
const PROPERTY_CASES: u32 = 10_000;

fn table1() -> Outcome {
    let start = Instant::now();
    let rows = dataset();
    for row in rows {
        let class = row.bec.classify();
        ensure!(
            class.deficit == Deficit::Defined(row.deficit),
            "{}: cd {} != printed {}",
            row.name,
            class.deficit,
            row.deficit
        );
        ensure!(
            class.kind == row.class,
            "{}: class {} != printed {}",
            row.name,
            class.kind,
            row.class
        );
        let b = embed(&row.bec).map_err(|e| format!("{}: {e}", row.name))?;
        ensure!(
            b.hexagons() as u32 == row.hexagons,
            "{}: embeds to {} hexagons, printed {}",
            row.name,
            b.hexagons(),
            row.hexagons
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < TABLE1_BUDGET, "took {elapsed:?}");
    Ok(format!("{} rows in {elapsed:?}", rows.len()))
}

fn table3(reports: &[EnumerationReport], elapsed: Duration) -> Outcome {
    let mut problems = Vec::new();
    for &(h, mcd, ex, example) in &TABLE3 {
        let Some(r) = reports.iter().find(|r| r.h == h) else {
            problems.push(format!("no report for h={h}"));
            continue;
        };
        if r.mcd != mcd {
            problems.push(format!("h={h}: mcd {} != {mcd}", r.mcd));
        }
        if r.ex != ex {
            problems.push(format!("h={h}: ex {} != {ex}", r.ex));
        }
        let code = c(example);
        if !r.extremal_codes.contains(&code.canonical()) {
            problems.push(format!(
                "h={h}: printed example {example} (cd {}) not among extremal codes",
                code.convexity_deficit()
            ));
        }
    }
    if elapsed > TABLE3_BUDGET {
        problems.push(format!("took {elapsed:?}"));
    }
    if problems.is_empty() {
        Ok(format!("h=2..={TABLE3_H_MAX}, {TABLE3_WORKERS} workers, {elapsed:?}"))
    } else {
        Err(problems.join("; "))
    }
}

fn benzenoid_counts(reports: &[EnumerationReport]) -> Outcome {
    let count = |h: u32| reports.iter().find(|r| r.h == h).map(|r| r.count);
    ensure!(count(3) == Some(3), "h=3: {:?}", count(3));
    ensure!(count(4) == Some(7), "h=4: {:?}", count(4));
    let frozen = [22u64, 81, 331, 1435, 6505, 30086];
    for (h, expected) in (5u32..=10).zip(frozen) {
        let oracle = support::free_benzenoid_count(h as usize);
        ensure!(oracle == expected, "oracle h={h}: {oracle} != frozen {expected}");
        ensure!(count(h) == Some(oracle), "h={h}: engine {:?} != oracle {oracle}", count(h));
    }
    Ok("h=3..=10 match".into())
}

fn spiral_law() -> Outcome {
    for h in 2..=40u32 {
        let code = spiral(h).map_err(|e| e.to_string())?;
        let expected = (h as i64 - 2).max(2 * h as i64 - 8) as u32;
        ensure!(code.winding() == 6, "S({h}) winding {}", code.winding());
        ensure!(
            code.convexity_deficit() == Deficit::Defined(expected),
            "cd(S({h})) = {} != {expected}",
            code.convexity_deficit()
        );
        if h <= 20 {
            let b = embed(&code).map_err(|e| format!("S({h}): {e}"))?;
            ensure!(b.hexagons() as u32 == h, "S({h}) has {} cells", b.hexagons());
        }
    }
    Ok("h=2..=40 deficit, h=2..=20 embedded".into())
}

fn helicene_law() -> Outcome {
    for h in 2..=9u32 {
        let codes = enumerate_unbranched_fusenes(h).map_err(|e| e.to_string())?;
        let best = codes
            .iter()
            .filter_map(|code| code.convexity_deficit().value())
            .max()
            .unwrap_or(0);
        let expected = (2 * h as i64 - 7).max(h as i64 - 2) as u32;
        ensure!(best == expected, "h={h}: max cd {best} != {expected}");
        let heli = helicene(h).map_err(|e| e.to_string())?.canonical();
        ensure!(codes.contains(&heli), "h={h}: helicene missing from scan");
        ensure!(
            heli.convexity_deficit() == Deficit::Defined(best),
            "h={h}: helicene cd {}",
            heli.convexity_deficit()
        );
    }
    Ok("h=2..=9".into())
}

fn unbranched_maximum() -> Outcome {
    for h in 2..=10u32 {
        let (best, witnesses) = max_cd_unbranched_benzenoids(h).map_err(|e| e.to_string())?;
        let expected = (h as i64 - 2).max(2 * h as i64 - 8) as u32;
        ensure!(best == expected, "h={h}: max cd {best} != {expected}");
        let s = spiral(h).map_err(|e| e.to_string())?.canonical();
        ensure!(witnesses.contains(&s), "h={h}: spiral not a witness");
        for w in &witnesses {
            let b = embed(w).map_err(|e| format!("{w}: {e}"))?;
            ensure!(
                b.condensation == Condensation::CatacondensedUnbranched,
                "witness {w} is {}",
                b.condensation
            );
        }
    }
    Ok("h=2..=10".into())
}

fn family_grid() -> Outcome {
    let mut checked = 0;
    for family in Family::ALL.into_iter().filter(|f| f.is_benzenoid_family()) {
        let max = if family == Family::Spiral { 20 } else { 6 };
        let lo = family.min_param();
        let arity = family.arity();
        let mut params = vec![lo; arity];
        'grid: loop {
            let spec = FamilySpec::new(family, params.clone()).map_err(|e| e.to_string())?;
            let code = spec.generate();
            let b = embed(&code).map_err(|e| format!("{spec} = {code}: {e}"))?;
            ensure!(
                b.hexagons() as u32 == spec.expected_h(),
                "{spec}: {} cells, formula {}",
                b.hexagons(),
                spec.expected_h()
            );
            ensure!(
                code.convexity_deficit() == Deficit::Defined(spec.expected_cd()),
                "{spec}: cd {}, formula {}",
                code.convexity_deficit(),
                spec.expected_cd()
            );
            checked += 1;
            for slot in params.iter_mut() {
                *slot += 1;
                if *slot <= max {
                    continue 'grid;
                }
                *slot = lo;
            }
            break;
        }
    }
    Ok(format!("{checked} family members"))
}

fn arb_code(max_len: usize) -> impl Strategy<Value = Code> {
    prop::collection::vec(1u8..=5, 1..=max_len).prop_map(|v| Code::new(v).unwrap())
}

fn quasi_pattern(code: &Code) -> bool {
    let s = code.symbols();
    let n = s.len();
    s.contains(&1) && (0..n).all(|i| s[i] + s[(i + 1) % n] >= 4)
}

fn brute_deficit(s: &[u8]) -> Option<u32> {
    let n = s.len();
    (1..=n)
        .find(|&w| {
            (0..n).all(|start| {
                let sum: u32 = (0..w).map(|t| u32::from(s[(start + t) % n])).sum();
                sum >= 2 * w as u32
            })
        })
        .map(|w| w as u32 - 1)
}

fn property_suites() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let run = |name: &str, outcome: Result<(), String>| outcome.map_err(|e| format!("{name}: {e}"));

    run(
        "reverse involution",
        runner
            .run(&arb_code(30), |code| {
                prop_assert_eq!(code.reverse().reverse(), code);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    run(
        "rotation inverse",
        runner
            .run(&(arb_code(30), -100i64..100), |(code, i)| {
                prop_assert_eq!(code.rotate(-i).rotate(i), code);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    run(
        "canonical invariance",
        runner
            .run(&(arb_code(30), -100i64..100), |(code, i)| {
                let canon = code.canonical();
                prop_assert_eq!(code.rotate(i).canonical(), canon.clone());
                prop_assert_eq!(code.reverse().canonical(), canon.clone());
                prop_assert_eq!(code.reverse().rotate(i).canonical(), canon);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    run(
        "winding additivity",
        runner
            .run(&(arb_code(30), arb_code(30)), |(a, b)| {
                prop_assert_eq!(a.concat(&b).unwrap().winding(), a.winding() + b.winding());
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    let attach = (arb_code(30), any::<prop::sample::Index>(), 1u8..=3);
    run(
        "one-contact addition keeps winding",
        runner
            .run(&attach, |(code, pos, s1)| {
                let big: Vec<usize> = (0..code.len()).filter(|&i| code.symbols()[i] >= 3).collect();
                prop_assume!(!big.is_empty());
                let at = big[pos.index(big.len())];
                let s1 = 1 + (s1 - 1) % (code.symbols()[at] - 2);
                let grown = code.one_contact_attach(at, s1).unwrap();
                prop_assert_eq!(grown.winding(), code.winding());
                prop_assert_eq!(grown.len(), code.len() + 2);
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    run(
        "deficit bound",
        runner
            .run(&arb_code(30), |code| {
                prop_assume!(code.winding() > 0);
                let cd = code.convexity_deficit().value();
                prop_assert!(matches!(cd, Some(k) if (k as usize) < code.len()));
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    run(
        "convex iff no 1",
        runner
            .run(&arb_code(30), |code| {
                prop_assert_eq!(
                    code.convexity_deficit() == Deficit::Defined(0),
                    !code.symbols().contains(&1)
                );
                prop_assert_eq!(
                    code.classify().kind == ConvexityKind::Convex,
                    !code.symbols().contains(&1)
                );
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;
    let long = prop::collection::vec(1u8..=5, 2..=30).prop_map(|v| Code::new(v).unwrap());
    run(
        "deficit 1 iff quasi-convex pattern",
        runner
            .run(&long, |code| {
                prop_assert_eq!(code.convexity_deficit() == Deficit::Defined(1), quasi_pattern(&code));
                let kind = code.classify().kind;
                prop_assert_eq!(
                    matches!(kind, ConvexityKind::QuasiConvex | ConvexityKind::PseudoConvex),
                    quasi_pattern(&code)
                );
                Ok(())
            })
            .map_err(|e| e.to_string()),
    )?;

    let mut roundtrips = 0usize;
    for h in 1..=10u32 {
        for cells in enumerate_benzenoids(h).map_err(|e| e.to_string())? {
            let code = trace(&cells).map_err(|e| e.to_string())?;
            let b = embed(&code).map_err(|e| format!("{code}: {e}"))?;
            ensure!(b.hexagons() as u32 == h, "{code}: {} cells", b.hexagons());
            ensure!(trace(&b.cells).as_ref() == Ok(&code), "trace(embed({code})) differs");
            ensure!(
                canonical_cells(&b.cells) == canonical_cells(&cells),
                "embed(trace(S)) not congruent to S for {code}"
            );
            if h >= 2 {
                ensure!(code.winding() == 6, "{code}: winding {}", code.winding());
            }
            roundtrips += 1;
        }
    }

    let mut exhaustive = 0usize;
    for len in 1..=8u32 {
        for index in 0..5u32.pow(len) {
            let symbols: Vec<u8> = (0..len).map(|p| (index / 5u32.pow(p) % 5 + 1) as u8).collect();
            let code = Code::new(symbols.clone()).unwrap();
            ensure!(
                code.convexity_deficit().value() == brute_deficit(&symbols),
                "{code}: k-search {} vs brute force {:?}",
                code.convexity_deficit(),
                brute_deficit(&symbols)
            );
            exhaustive += 1;
        }
    }
    Ok(format!(
        "8 randomized suites x {PROPERTY_CASES}, {roundtrips} roundtrips (h<=10), {exhaustive} codes of length <=8"
    ))
}

fn pericondensed_extremal(reports: &[EnumerationReport]) -> Outcome {
    let mut found = Vec::new();
    for r in reports.iter().filter(|r| r.h <= TABLE3_H_MAX) {
        for code in &r.extremal_codes {
            let b = embed(code).map_err(|e| format!("{code}: {e}"))?;
            if b.condensation == Condensation::Pericondensed {
                found.push((r.h, code.clone()));
            }
        }
    }
    ensure!(
        found == [(6, c("533244111").canonical())],
        "pericondensed extremal benzenoids: {found:?}"
    );
    let branched: Vec<u32> = reports
        .iter()
        .filter(|r| r.extremal_breakdown.contains_key(&Condensation::CatacondensedBranched))
        .map(|r| r.h)
        .collect();
    Ok(format!(
        "only h=6 {}; branched extremals at h={branched:?}; h>=14 not run at desk scale",
        found[0].1
    ))
}

fn unimodality(reports: &[EnumerationReport]) -> Outcome {
    for h in 2..=11u32 {
        let r = reports
            .iter()
            .find(|r| r.h == h)
            .ok_or_else(|| format!("no report for h={h}"))?;
        let f = r.frequencies();
        ensure!(check_unimodal(&f), "FINDING: F({h}, .) = {f:?} is not unimodal");
    }
    Ok("F(h, .) unimodal for h=2..=11".into())
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    })
}

fn main() -> ExitCode {
    let start = Instant::now();
    let search: Result<Vec<EnumerationReport>, String> = catch_unwind(|| {
        let mut config = SearchConfig::new(TABLE3_H_MAX);
        config.workers = TABLE3_WORKERS;
        Enumerator::new(config).and_then(|e| e.run()).map_err(|e| e.to_string())
    })
    .unwrap_or_else(|_| Err("enumeration panicked".into()));
    let elapsed = start.elapsed();
    let with_reports = |f: &dyn Fn(&[EnumerationReport]) -> Outcome| match &search {
        Ok(reports) => guarded(|| f(reports)),
        Err(e) => Err(format!("enumeration failed: {e}")),
    };

    let results: Vec<(&str, Outcome)> = vec![
        ("AC1 Table 1 fixtures", guarded(table1)),
        ("AC2 Table 3 reproduction", with_reports(&|r| table3(r, elapsed))),
        ("AC3 benzenoid counts vs oracle", with_reports(&benzenoid_counts)),
        ("AC4 spiral law", guarded(spiral_law)),
        ("AC5 helicene law", guarded(helicene_law)),
        ("AC6 unbranched benzenoid maximum", guarded(unbranched_maximum)),
        ("AC7 family grid", guarded(family_grid)),
        ("AC8 property suites", guarded(property_suites)),
        ("AC9 pericondensed extremal", with_reports(&pericondensed_extremal)),
        ("AC10 unimodality", with_reports(&unimodality)),
    ];

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
