use std::process::Command;

use avoidlab::finring::FiniteRing;
use avoidlab::spectra::PrimeFamily;
use avoidlab_cli::{run, Outcome};
use proptest::prelude::*;
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("avoidlab").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["--format", "json"];
    argv.extend_from_slice(args);
    let out = cli(&argv);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn certificate<'a>(report: &'a Value, kind: &str) -> &'a Value {
    report["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["kind"] == kind)
        .unwrap_or_else(|| panic!("no {kind} certificate in {report}"))
}

#[test]
fn finite_family_coverage_names_the_containing_prime() {
    let r = json(&["avoid", "check", "--family", "finite:Z/6:(2),(3)", "--ideal", "(2)"]);
    assert_eq!(r["verdict"], "covered");
    let c = certificate(&r, "coverage");
    assert_eq!(c["data"]["outcome"], "contained");
    assert_eq!(c["data"]["containing_prime"], "(2)");
}

#[test]
fn chain_counterexample_escapes_the_named_prime() {
    let r = json(&["counterexample", "chain", "--n", "4"]);
    let esc = certificate(&r, "escape");
    assert_eq!(esc["data"]["witness"], "x5");
    assert_eq!(esc["data"]["in_I_omega"], true);
    assert_eq!(esc["data"]["in_P_4"], false);
    let cover = certificate(&r, "noncompact-cover");
    assert_eq!(cover["data"]["prefix"], serde_json::json!(["U_1", "U_2", "U_3", "U_4"]));
    assert_eq!(cover["data"]["missed_member"], "P_5");
}

#[test]
fn davis_valuation_over_the_rationals() {
    let r = json(&["valuation", "davis", "--V", "p=5", "--others", "p=3,p=2", "--x", "1/2"]);
    assert_eq!(r["verdict"], "v = 1/3");
    let c = certificate(&r, "davis-valuation");
    assert_eq!(c["data"]["v_plus_x"], "5/6");
}

#[test]
fn class_group_of_minus_five() {
    let r = json(&["quad", "class", "--d", "-5"]);
    assert_eq!(r["verdict"], "h = 2");
    assert_eq!(certificate(&r, "class-group")["data"]["reduced_forms"], serde_json::json!(["(1,0,5)", "(2,2,3)"]));
}

#[test]
fn reports_have_a_fixed_shape() {
    let r = json(&["ring", "info", "--ring", "Z/12"]);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["scenario", "inputs", "verdict", "certificates", "timing_ms"]);
    assert!(r["timing_ms"].is_null());
    for c in r["certificates"].as_array().unwrap() {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["kind", "status", "data"]);
        assert_eq!(c["status"], "checked");
    }
}

#[test]
fn timing_flag_fills_timing_ms() {
    let r = json(&["--timing", "ring", "primes", "--ring", "Z/30"]);
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn bad_input_and_unmet_preconditions_exit_with_one() {
    for args in [
        &["avoid", "check", "--family", "bogus", "--ideal", "(2)"][..],
        &["ring", "info", "--ring", "Z/0"],
        &["ring", "info"],
        &["no-such-command"],
        &["quad", "class", "--d", "5"],
        &["valuation", "davis", "--V", "p=2", "--others", "p=2", "--x", "1"],
        &["valuation", "value", "--V", "inf", "--x", "t"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 1, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("avoid"));
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let cases: [&[&str]; 4] = [
        &["--format", "json", "avoid", "pa", "--family", "chain:Q:all"],
        &["avoid", "davis", "--family", "Max(Z)", "--ideal", "(6)", "--a", "1", "--q-list", "(5)"],
        &["--format", "json", "quad", "smith", "--d", "-23", "--p", "2"],
        &["ring", "ideals", "--ring", "F2[x]/(x^2) x Z/3"],
    ];
    for args in cases {
        let first = cli(args);
        assert_eq!(first.code, 0, "{args:?}: {}", first.stderr);
        assert_eq!(first, cli(args));
    }
}

#[test]
fn binary_matches_the_library_entry_point() {
    let args = ["--format", "json", "avoid", "check", "--family", "Z:(5)", "--ideal", "(10)"];
    let out = Command::new(env!("CARGO_BIN_EXE_avoidlab")).args(args).output().unwrap();
    let lib = cli(&args);
    assert_eq!(out.status.code(), Some(lib.code));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout);

    let out = Command::new(env!("CARGO_BIN_EXE_avoidlab")).args(["ring", "info", "--ring", "Z/"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

fn ring_spec() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (2u32..40).prop_map(|n| format!("Z/{n}")),
        Just("F2[x]/(x^2+x+1)".to_string()),
        Just("F2[x]/(x^3)".to_string()),
        Just("F3[x]/(x^2+1)".to_string()),
    ];
    prop::collection::vec(atom, 1..3).prop_map(|parts| parts.join(" x "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn echoed_ring_reparses_to_the_same_ring(spec in ring_spec()) {
        let r = json(&["ring", "info", "--ring", &spec]);
        let echoed = r["inputs"]["ring"].as_str().unwrap();
        let a = FiniteRing::parse(&spec).unwrap();
        let b = FiniteRing::parse(echoed).unwrap();
        prop_assert_eq!(a.expr(), b.expr());
        prop_assert_eq!(a.order(), b.order());
    }

    #[test]
    fn echoed_family_reparses_to_the_same_family(
        n in 2u32..60,
        picks in prop::collection::vec(any::<bool>(), 4),
    ) {
        let primes: Vec<u32> = [2, 3, 5, 7].into_iter().filter(|p| n % p == 0).collect();
        prop_assume!(!primes.is_empty());
        let chosen: Vec<String> = primes
            .iter()
            .zip(&picks)
            .filter(|(_, keep)| **keep)
            .map(|(p, _)| format!("({p})"))
            .collect();
        let spec = format!("finite:Z/{n}:{}", chosen.join(","));
        let r = json(&["avoid", "pa", "--family", &spec]);
        let echoed = r["inputs"]["family"].as_str().unwrap();
        prop_assert_eq!(PrimeFamily::parse(&spec).unwrap(), PrimeFamily::parse(echoed).unwrap());

        let z = format!("Z:{}", chosen.join(","));
        if !chosen.is_empty() {
            let r = json(&["avoid", "pa", "--family", &z]);
            let echoed = r["inputs"]["family"].as_str().unwrap();
            prop_assert_eq!(PrimeFamily::parse(&z).unwrap(), PrimeFamily::parse(echoed).unwrap());
        }
    }
}
