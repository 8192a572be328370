//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! reach the output.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qecc_core::bounds::greedy_bound;
use qecc_core::css::{build_css, build_tau, build_twisted_css, LinearBinaryCode};
use qecc_core::gf2::coset_reps;
use qecc_core::nonadditive::{
    build_greedy_family, hadamard11, hadamard_codebook, hadamard_rows, translation_set,
    CodebookCode, GreedyConfig,
};
use qecc_core::stabilizer::{
    codespace, extract_signs, rebuild_stabilizer, verify_sign_identities, StabilizerGroup,
};
use qecc_core::states::matrix_element;
use qecc_core::verify::{
    dual_distance_check, find_distance, find_stabilizer, kl_check, nonadd_verdict, KlMode, Verdict,
};
use qecc_core::{BitMatrix, BitVector, PauliWord};
use rand::Rng;

const CODEBOOK_LIMIT: Duration = Duration::from_millis(1);
const HADAMARD_KL_LIMIT: Duration = Duration::from_secs(1);
const STEANE_LIMIT: Duration = Duration::from_secs(1);
const FAMILY_LIMIT: Duration = Duration::from_secs(30);
const ROUND_TRIPS: usize = 60;
const ORACLE_CASES: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    ensure!(took < limit, "{detail}; took {took:?}, limit {limit:?}");
    Ok(format!("{detail} [{took:?} < {limit:?}]"))
}

fn steane_code() -> LinearBinaryCode {
    LinearBinaryCode::from_strs(7, &["0001111", "0110011", "1010101"]).unwrap()
}

fn hadamard_codebook_criterion() -> Outcome {
    let start = Instant::now();
    let rows = hadamard_rows();
    let mut pair_distances_ok = true;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            pair_distances_ok &= (a ^ b).weight() == 6;
        }
    }
    let ones = BitVector::ones(11);
    let mut extended = rows.clone();
    extended.extend(rows.iter().map(|r| r ^ &ones));
    let mut min = usize::MAX;
    for (i, a) in extended.iter().enumerate() {
        for b in &extended[i + 1..] {
            min = min.min((a ^ b).weight());
        }
    }
    let elapsed = within(
        start,
        CODEBOOK_LIMIT,
        format!("66 row distances all 6, extended min distance {min}"),
    )?;
    ensure!(
        rows.len() == 12 && pair_distances_ok,
        "row distances are not all 6"
    );
    ensure!(min >= 5, "extended set has distance {min}");
    Ok(elapsed)
}

fn hadamard_kl_criterion() -> Outcome {
    let start = Instant::now();
    let basis = hadamard11();
    let strict = kl_check(&basis, 3, KlMode::Strict).map_err(|e| e.to_string())?;
    ensure!(
        strict.passed(),
        "d=3 strict check failed: {}",
        strict.violations[0]
    );
    ensure!(
        strict.errors_checked == 528,
        "checked {} errors",
        strict.errors_checked
    );
    let four = kl_check(&basis, 4, KlMode::General).map_err(|e| e.to_string())?;
    ensure!(!four.passed(), "d=4 check unexpectedly passed");
    within(
        start,
        HADAMARD_KL_LIMIT,
        format!(
            "{}; d=4 fails at {}",
            strict.summary(),
            four.violations[0].error
        ),
    )
}

fn hadamard_stabilizer_criterion() -> Outcome {
    let basis = hadamard11();
    let st = find_stabilizer(&basis).map_err(|e| e.to_string())?;
    ensure!(st.is_empty(), "stabilizer has {} generators", st.len());
    let book = hadamard_codebook();
    ensure!(
        translation_set(&book) == vec![BitVector::zeros(11)],
        "T(C) is not {{0}}"
    );
    let v = nonadd_verdict(&basis, &book, 1).map_err(|e| e.to_string())?;
    ensure!(
        v.translation_obstruction,
        "a nonzero translation fixes both supports"
    );
    ensure!(
        v.verdict == Verdict::StronglyNonadditiveCriteriaMet,
        "verdict {}",
        v.verdict
    );
    Ok(format!("stabilizer = {{I}}, verdict={}", v.verdict))
}

fn steane_criterion() -> Outcome {
    let start = Instant::now();
    let code = steane_code();
    ensure!(code.is_weakly_self_dual(), "C is not weakly self-dual");
    ensure!(
        code.min_distance().map_err(|e| e.to_string())? == 4,
        "dist(C) is not 4"
    );
    let basis = build_css(&code).map_err(|e| e.to_string())?;
    ensure!(
        basis.dimension() == 2,
        "basis has {} vectors",
        basis.dimension()
    );
    let mut gens: Vec<PauliWord> = code
        .generator()
        .rows()
        .iter()
        .cloned()
        .map(PauliWord::x_type)
        .collect();
    gens.extend(
        code.generator()
            .rows()
            .iter()
            .cloned()
            .map(PauliWord::z_type),
    );
    let s = StabilizerGroup::new(7, gens).map_err(|e| e.to_string())?;
    ensure!(
        dual_distance_check(&s, 3),
        "dual distance check fails at d=3"
    );
    ensure!(
        !dual_distance_check(&s, 4),
        "dual distance check passes at d=4"
    );
    let report = kl_check(&basis, 3, KlMode::General).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "KL fails at d=3");
    let d = find_distance(&basis, KlMode::General, None).map_err(|e| e.to_string())?;
    ensure!(d == 3, "find_distance = {d}");
    within(
        start,
        STEANE_LIMIT,
        format!(
            "K=2, dual distance 3 not 4, {}, distance {d}",
            report.summary()
        ),
    )
}

fn sign_round_trip_criterion() -> Outcome {
    let mut rng = common::rng(0x5eed_0005);
    for case in 0..ROUND_TRIPS {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=n);
        let s = common::random_stabilizer(&mut rng, n, m);
        let cs = codespace(&s).map_err(|e| format!("case {case}: {e}"))?;
        let table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma)
            .map_err(|e| format!("case {case}: {e}"))?;
        let report = verify_sign_identities(&table);
        ensure!(
            report.passed(),
            "case {case}: sign identities fail: {:?}",
            report.violation
        );
        let rebuilt = rebuild_stabilizer(&table).map_err(|e| format!("case {case}: {e}"))?;
        let again = codespace(&rebuilt).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            again.basis.dimension() == cs.basis.dimension(),
            "case {case}: dimensions differ"
        );
        for v in again.basis.vectors() {
            ensure!(
                s.fixes(v).unwrap(),
                "case {case}: original group moves a rebuilt vector"
            );
        }
        for v in cs.basis.vectors() {
            ensure!(
                rebuilt.fixes(v).unwrap(),
                "case {case}: rebuilt group moves an original vector"
            );
        }
    }
    Ok(format!(
        "{ROUND_TRIPS} random groups with n <= 6 round-trip"
    ))
}

fn oracle_criterion() -> Outcome {
    let mut rng = common::rng(0x5eed_0006);
    for case in 0..ORACLE_CASES {
        let n = rng.gen_range(1..=3);
        let p = common::random_word(&mut rng, n);
        let q = common::random_word(&mut rng, n);
        ensure!(
            p.commutes(&q).unwrap() == common::dense_commutes(&p, &q),
            "commutes disagrees on {p} and {q}"
        );
        let x = common::random_superposition(&mut rng, n);
        let y = common::random_superposition(&mut rng, n);
        let fast = matrix_element(&x, &p, &y).unwrap();
        ensure!(
            fast == common::dense_element(&x, &p, &y).into(),
            "matrix_element disagrees for {p}"
        );
        let basis = common::random_basis(&mut rng, n);
        let d = rng.gen_range(1..=n + 1);
        for mode in [KlMode::Strict, KlMode::General] {
            let ours = kl_check(&basis, d, mode).unwrap().passed();
            ensure!(
                ours == common::dense_kl(&basis, d, mode),
                "case {case}: kl_check disagrees (d={d}, {mode})"
            );
        }
    }
    Ok(format!(
        "{ORACLE_CASES} cases each for commutes, matrix_element, kl_check (n <= 3)"
    ))
}

fn greedy_family_criterion() -> Outcome {
    let start = Instant::now();
    let eight = greedy_bound(8, 1, 2);
    ensure!(
        eight.to_string() == "greedy: 126 < 128 OK",
        "n=8 bound reads {eight}"
    );
    let code = LinearBinaryCode::repetition(10);
    let cfg = GreedyConfig::new(code.clone(), 2).map_err(|e| e.to_string())?;
    let fam = build_greedy_family(&cfg).map_err(|e| e.to_string())?;
    ensure!(fam.ell == 5, "ell = {}", fam.ell);
    ensure!(fam.basis.dimension() == 32, "K = {}", fam.basis.dimension());
    ensure!(
        fam.basis.header() == "10 32 2",
        "header {}",
        fam.basis.header()
    );
    let report = kl_check(&fam.basis, 2, KlMode::General).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "KL fails at d=2");
    let st = find_stabilizer(&fam.basis).map_err(|e| e.to_string())?;
    ensure!(st.is_empty(), "stabilizer has {} generators", st.len());
    let book = CodebookCode::from_linear(&code).map_err(|e| e.to_string())?;
    let v = nonadd_verdict(&fam.basis, &book, fam.ell).map_err(|e| e.to_string())?;
    ensure!(v.verdict == Verdict::Nonadditive, "verdict {}", v.verdict);
    within(
        start,
        FAMILY_LIMIT,
        format!(
            "((10,32,2)), ell=5, trivial stabilizer, verdict={}; n=8 {eight}",
            v.verdict
        ),
    )
}

fn twisted_css_criterion() -> Outcome {
    let code = steane_code();
    let tau = build_tau(&code).map_err(|e| e.to_string())?;
    let basis = build_twisted_css(&code, &tau).map_err(|e| e.to_string())?;
    let report = kl_check(&basis, 3, KlMode::General).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "KL fails at d=3");
    let reps = coset_reps(code.generator(), code.parity_check()).map_err(|e| e.to_string())?;
    let gamma = BitMatrix::new(7, vec![reps[1].clone()]).unwrap();
    let table = extract_signs(&basis, code.generator(), &gamma).map_err(|e| e.to_string())?;
    ensure!(
        verify_sign_identities(&table).passed(),
        "sign identities fail"
    );
    let mut checked = 0;
    for g_mask in 0..2 {
        for c_mask in 0..8 {
            let (c, a) = table.parts(c_mask, g_mask);
            let expected = if tau.apply(&c).unwrap().dot(&a) {
                -1
            } else {
                1
            };
            ensure!(
                table.sgn(c_mask, g_mask) == expected,
                "sgn({c} + {a}) differs"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{}; {checked} signs equal (-1)^(tau(c).a)",
        report.summary()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "hadamard codebook is (11,12,6), extended distance >= 5",
            hadamard_codebook_criterion,
        ),
        (
            "((11,2,3)) passes strict KL at d=3 and fails at d=4",
            hadamard_kl_criterion,
        ),
        (
            "((11,2,3)) stabilizer is trivial and strong criteria hold",
            hadamard_stabilizer_criterion,
        ),
        ("Steane CSS pipeline", steane_criterion),
        (
            "sign-table round trip on random stabilizer groups",
            sign_round_trip_criterion,
        ),
        ("dense-matrix oracle agreement for n <= 3", oracle_criterion),
        ("greedy ((10,32,2)) family", greedy_family_criterion),
        ("twisted Steane code", twisted_css_criterion),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
