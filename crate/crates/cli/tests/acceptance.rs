//! Acceptance criteria, one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Run with `cargo test -p glab-cli --test acceptance -- --nocapture` to see
//! the lines.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use glab_core::identity::{
    compare_bounds, verify_corollary_eqq5, verify_inversion, verify_lcm_identity, verify_rockett,
    verify_theorem1, verify_theorem2,
};
use glab_core::report::{read_csv, read_jsonl, write_csv};
use glab_core::{
    check_orthogonality, egf_coefficients, legendre_valuation, EgfKind, Engine, GenocchiRoute,
    Integer, Prime, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn glab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_glab"))
        .args(args)
        .env_remove("GLAB_CACHE_DIR")
        .output()
        .expect("failed to run glab")
}

fn ac1_a_routes() -> Check {
    let start = Instant::now();
    let mut e = Engine::new();
    for n in 0..=300 {
        let d = e.a_direct(n);
        let r = e.a_recurrence(n).map_err(|x| x.to_string())?;
        let k = e.a_rockett(n).map_err(|x| x.to_string())?;
        ensure(d == r && r == k, format!("routes differ at n={n}"))?;
    }
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("a003149.txt");
    let mut f = fs::File::create(&path).map_err(|x| x.to_string())?;
    for n in 0..25 {
        writeln!(f, "{}", e.a_direct(n)).map_err(|x| x.to_string())?;
    }
    drop(f);
    let fixture: Vec<Integer> = fs::read_to_string(&path)
        .map_err(|x| x.to_string())?
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    ensure(fixture.len() == 25, "fixture length")?;
    let prefix = [0, 1, 2, 5, 16, 64, 312].map(Integer::from);
    ensure(fixture[..7] == prefix, "fixture prefix")?;
    for (n, t) in fixture.iter().enumerate() {
        ensure(*t == e.a_recurrence(n).unwrap(), format!("fixture term {n}"))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("n <= 300, 25-term fixture, {:?}", start.elapsed()))
}

fn ac2_genocchi_routes() -> Check {
    let start = Instant::now();
    let mut e = Engine::new();
    let r = verify_theorem1(&mut e, 100);
    ensure(r.all_pass() && r.covers_range(), "route mismatch")?;
    for n in (3..=100).step_by(2) {
        let g = e.genocchi(n, GenocchiRoute::StirlingIdentity).unwrap();
        ensure(g == Integer::from(0), format!("G_{n} = {g}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("n <= 100, {:?}", start.elapsed()))
}

fn ac3_genocchi_stirling_sum() -> Check {
    let r = verify_corollary_eqq5(&mut Engine::new(), 100);
    ensure(r.all_pass() && r.covers_range(), "eqq5 failed")?;
    Ok("n <= 100".into())
}

fn ac4_rockett() -> Check {
    let r = verify_rockett(200);
    ensure(r.all_pass() && r.covers_range(), "rockett failed")?;
    Ok("n <= 200".into())
}

fn ac5_valuation_bounds() -> Check {
    let start = Instant::now();
    let r = verify_theorem2(2000).map_err(|x| x.to_string())?;
    ensure(r.all_pass() && r.covers_range(), "bound violated")?;
    let head: Vec<_> = r.records[..4].iter().map(|x| x.lhs.clone().unwrap().to_string()).collect();
    ensure(head == ["1", "2", "2", "5"], format!("valuations {head:?}"))?;
    within(start, Duration::from_secs(30))?;
    let dominated = compare_bounds(2000).iter().filter(|c| c.log_bound_dominates()).count();
    Ok(format!(
        "n <= 2000, {:?}; log bound >= digit bound at {dominated}/2000",
        start.elapsed()
    ))
}

fn ac6_lcm() -> Check {
    let r = verify_lcm_identity(500);
    ensure(r.all_pass() && r.covers_range(), "lcm failed")?;
    Ok("m <= 500".into())
}

fn ac7_orthogonality_inversion() -> Check {
    let r = check_orthogonality(60);
    ensure(r.all_pass() && r.records.len() == 61 * 62 / 2, "orthogonality failed")?;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<Integer> = (0..=30)
            .map(|_| Integer::from(rng.gen_range(-1_000_000i64..=1_000_000)))
            .collect();
        let r = verify_inversion(&v).map_err(|x| x.to_string())?;
        ensure(r.all_pass(), format!("inversion seed {seed}"))?;
    }
    Ok("n <= 60 both orders; 50 seeds at n_max = 30".into())
}

fn ac8_legendre() -> Check {
    for p in [2u64, 3, 5, 7, 11, 97] {
        let prime = Prime::new(p).unwrap();
        for n in 1..=10_000u64 {
            let mut floor_sum = 0;
            let mut pk = p;
            while pk <= n {
                floor_sum += n / pk;
                pk *= p;
            }
            let got = legendre_valuation(&Integer::from(n), prime).map_err(|x| x.to_string())?;
            ensure(got == Integer::from(floor_sum), format!("n={n} p={p}"))?;
        }
    }
    Ok("n <= 10^4, p in {2,3,5,7,11,97}".into())
}

fn ac9_egf() -> Check {
    let mut e = Engine::new();
    let a = egf_coefficients(EgfKind::A, 64).map_err(|x| x.to_string())?;
    for (n, t) in a.egf_terms().iter().enumerate() {
        ensure(*t == Rational::from_integer(e.a_direct(n)), format!("a-egf n={n}"))?;
    }
    for k in 0..=8 {
        let s = egf_coefficients(EgfKind::LogPower { k, negated: false }, 25).map_err(|x| x.to_string())?;
        for n in k..=24 {
            let want = e.stirling_first(n, k).unwrap();
            ensure(s.egf_terms()[n] == Rational::from_integer(want), format!("log-power k={k} n={n}"))?;
        }
    }
    let g = egf_coefficients(EgfKind::Genocchi, 32).map_err(|x| x.to_string())?;
    for (n, t) in g.egf_terms().iter().enumerate() {
        let want = e.genocchi(n, GenocchiRoute::Seidel).map_err(|x| x.to_string())?;
        ensure(*t == Rational::from_integer(want), format!("genocchi-egf n={n}"))?;
    }
    Ok("a-egf n < 64; log-power k <= 8, n <= 24; genocchi-egf n < 32".into())
}

fn ac10_digit_bound() -> Check {
    let o = glab(&["search-open1", "3", "10", "--format", "csv"]);
    ensure(o.status.code() == Some(0), "non-zero exit")?;
    let rows = read_csv(o.stdout.as_slice()).map_err(|x| x.to_string())?;
    let two = rows.iter().find(|r| r.n == 2).ok_or("n = 2 not reported")?;
    ensure(two.lhs.as_deref() == Some("1") && two.rhs.as_deref() == Some("2"), "wrong values at n = 2")?;
    Ok("p = 3: n = 2 reported with v_3 = 1 < s_3 = 2".into())
}

const VERIFY_RUNS: [&[&str]; 9] = [
    &["verify", "rockett", "--n-max", "40"],
    &["verify", "eqq5", "--n-max", "40"],
    &["verify", "theorem1", "--n-max", "40"],
    &["verify", "theorem2", "--n-max", "200"],
    &["verify", "lcm", "--m-max", "60"],
    &["verify", "orthogonality", "--n-max", "12"],
    &["verify", "inversion", "--n-max", "30", "--seed", "3"],
    &["verify", "legendre", "--p", "5", "--n-max", "300"],
    &["verify", "digit-bound", "--p", "3", "--n-max", "50"],
];

fn ac11_cli_contract() -> Check {
    // exit codes
    ensure(glab(&["verify", "rockett", "--n-max", "5"]).status.code() == Some(0), "exit 0")?;
    ensure(glab(&["verify", "digit-bound", "--p", "3", "--n-max", "5"]).status.code() == Some(1), "exit 1")?;
    ensure(glab(&["verify", "nonsense", "--n-max", "5"]).status.code() == Some(2), "exit 2 (identity)")?;
    ensure(glab(&["search-open1", "4", "5"]).status.code() == Some(2), "exit 2 (prime)")?;

    for args in VERIFY_RUNS {
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let a = glab(&csv_args);
        let b = glab(&csv_args);
        ensure(a.stdout == b.stdout, format!("{args:?} not byte-identical"))?;
        // parse, re-emit, compare bytes
        let rows = read_csv(a.stdout.as_slice()).map_err(|x| x.to_string())?;
        let records: Vec<_> = rows.iter().map(|r| r.to_record()).collect::<Result<_, _>>().map_err(|x| x.to_string())?;
        let mut again = Vec::new();
        let rows_back: Vec<_> = records.iter().zip(&rows).map(|(rec, row)| rec.to_row(&row.identity)).collect();
        write_csv(&mut again, &rows_back).map_err(|x| x.to_string())?;
        ensure(again == a.stdout, format!("{args:?} CSV round trip"))?;
        // the JSON-lines stream carries the same records
        let mut jl_args = args.to_vec();
        jl_args.extend(["--format", "jsonl"]);
        let jl = glab(&jl_args);
        let jl_rows = read_jsonl(jl.stdout.as_slice()).map_err(|x| x.to_string())?;
        ensure(jl_rows == rows, format!("{args:?} csv/jsonl mismatch"))?;
    }
    for args in [&["seq", "genocchi", "30"][..], &["stirling", "first", "15", "--format", "jsonl"], &["search-open1", "7", "100"]] {
        ensure(glab(args).stdout == glab(args).stdout, format!("{args:?} not byte-identical"))?;
    }
    Ok("exit codes 0/1/2; CSV round trip on 9 verify identities; byte-identical reruns".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("AC1  a_n triple-route agreement + A003149 fixture", ac1_a_routes),
        ("AC2  Genocchi via Stirling sum, Bernoulli scaling and Seidel", ac2_genocchi_routes),
        ("AC3  a_n as a Genocchi-weighted Stirling sum", ac3_genocchi_stirling_sum),
        ("AC4  Rockett identity", ac4_rockett),
        ("AC5  2-adic valuation bounds for a_n", ac5_valuation_bounds),
        ("AC6  lcm of binomial row", ac6_lcm),
        ("AC7  Stirling orthogonality + inversion", ac7_orthogonality_inversion),
        ("AC8  Legendre formula", ac8_legendre),
        ("AC9  EGF oracles", ac9_egf),
        ("AC10 odd-prime digit-sum bound counterexample", ac10_digit_bound),
        ("AC11 CLI contract", ac11_cli_contract),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
