use qinv_cli::{run, ResultRecord};
use std::process::Command;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qinv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn records(s: &str) -> Vec<ResultRecord> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn poincare_reports_both_routes() {
    let (code, out, _) = call(&["poincare", "--r", "5"]);
    assert_eq!(code, 0);
    let rec = &records(&out)[0];
    assert!((rec.value_re + 0.8090169943749473).abs() < 1e-8);
    assert!((rec.value_im + 2.4898982848827806).abs() < 1e-8);
    assert_eq!(rec.meta["routes_agree"], true);
    assert!(rec.meta["symmetric"].is_array());
}

#[test]
fn lens_sums_differ() {
    let (_, a, _) = call(&["lens-sum", "--r", "3", "--framings", "8,-8"]);
    let (_, b, _) = call(&["lens-sum", "--r", "3", "--framings", "4,3,2,-3"]);
    let (a, b) = (&records(&a)[0], &records(&b)[0]);
    assert!((a.value() - b.value()).norm() > 1e-6);
    assert_eq!(a.meta["classes"], 64);
}

#[test]
fn lens_multiset_csv_has_one_row_per_class() {
    let (code, out, _) = call(&["lens-sum", "--r", "3", "--framings", "8,-8", "--multiset", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["class", "value_re", "value_im"]);
    assert_eq!(rdr.records().count(), 64);
}

#[test]
fn delta_at_level_four_warns() {
    let (code, out, err) = call(&["delta", "--r", "4"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    let recs = records(&out);
    let minus = recs.iter().find(|r| r.inputs["sign"] == "-").unwrap();
    assert_eq!((minus.value_re, minus.value_im), (0.0, 0.0));
}

#[test]
fn dmod_accepts_exact_rationals() {
    let (code, out, _) = call(&["dmod", "--r", "5", "--alpha", "1/3+1/5i"]);
    assert_eq!(code, 0);
    let v = records(&out)[0].value();
    let q = qinv_core::QParams::<f64>::new(5).unwrap();
    let want = q.mdim(qinv_core::Color(num_complex::Complex::new(1.0 / 3.0, 0.2))).unwrap();
    assert!((v - want).norm() < 1e-14);
}

#[test]
fn sixj_zero_colors() {
    let (_, out, _) = call(&["sixj", "--r", "3", "--colors", "0,0,0,0,0,0"]);
    let rec = &records(&out)[0];
    assert!((rec.value_re - 2.0).abs() < 1e-12);
    assert_eq!(rec.meta["status"], "computed");
    let (code, _, _) = call(&["sixj", "--r", "3", "--colors", "0,0,0"]);
    assert_eq!(code, 2);
}

#[test]
fn chain_by_class_and_by_colors() {
    let (code, out, _) = call(&["chain", "--r", "3", "--framings", "8,-8", "--class", "3", "--lifts", "2,-4"]);
    assert_eq!(code, 0);
    let a = records(&out)[0].value();
    let (_, out, _) = call(&["chain", "--r", "3", "--framings", "8,-8", "--class", "3"]);
    let rec = &records(&out)[0];
    assert!((rec.value() - a).norm() < 1e-8 * a.norm());
    assert_eq!(rec.meta["signature"], serde_json::json!([1, 1]));
    let (code, out, _) = call(&["chain", "--r", "5", "--framings", "0", "--colors", "0.3"]);
    assert_eq!(code, 0);
    let d = qinv_core::QParams::<f64>::new(5).unwrap().mdim(qinv_core::Color::real(0.3)).unwrap();
    assert!((records(&out)[0].value() - d).norm() < 1e-12);
}

#[test]
fn torus_surgery_and_integral_class() {
    let (code, out, _) = call(&["torus-surgery", "--r", "5", "--f", "0", "--n", "1", "--class", "1"]);
    assert_eq!(code, 0);
    let v = records(&out)[0].value();
    assert!((v - num_complex::Complex::new(0.1967233145831711, 0.3407347758913864)).norm() < 1e-10);
    let (code, _, err) = call(&["torus-surgery", "--r", "5", "--f", "-2", "--n", "1", "--class", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("NotComputable"), "{err}");
}

#[test]
fn domain_errors_carry_their_names() {
    let (code, _, err) = call(&["chain", "--r", "4", "--framings", "5", "--class", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("EvenLevelMod4"), "{err}");
    let (code, _, err) = call(&["dmod", "--r", "5", "--alpha", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("InadmissibleColor"), "{err}");
    let (code, _, err) = call(&["delta", "--r", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("InvalidLevel"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&[]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["delta"]).0, 2);
    assert_eq!(call(&["dmod", "--r", "5", "--alpha", "1+2j"]).0, 2);
    assert_eq!(call(&["chain", "--r", "3", "--framings", "8,x", "--class", "1"]).0, 2);
    assert_eq!(call(&["volume", "--rmin", "9", "--rmax", "3"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn volume_sequence_and_target() {
    let (code, out, _) = call(&["volume", "--k", "2", "--rmin", "51", "--rmax", "201", "--step", "50"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    assert_eq!(recs.len(), 4);
    let target = recs[0].meta["target"].as_f64().unwrap();
    assert!((target - 7.32772).abs() < 1e-5);
    let vs: Vec<f64> = recs.iter().map(|r| r.value_re).collect();
    assert!(vs.windows(2).all(|w| w[1] < w[0] && w[1] > target));
}

#[test]
fn json_output_regenerates_identically() {
    let (_, out, _) = call(&["lens-sum", "--r", "3", "--framings", "8,-8", "--multiset"]);
    for line in out.lines() {
        let rec: ResultRecord = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&rec).unwrap(), line);
    }
}

#[test]
fn selftest_is_deterministic() {
    let a = call(&["selftest", "--seed", "11", "--samples", "4"]);
    let b = call(&["selftest", "--seed", "11", "--samples", "4"]);
    assert_eq!(a.0, 0, "{}", a.1);
    let summary = |s: &str| records(s).into_iter().last().unwrap();
    let (sa, sb) = (summary(&a.1), summary(&b.1));
    assert_eq!(sa.command, "selftest");
    assert_eq!(sa.meta["failed"], 0);
    assert_eq!(sa.meta, sb.meta);
    assert_eq!(records(&a.1), records(&b.1));
}

#[test]
fn binary_exit_codes_and_thread_variable() {
    let bin = env!("CARGO_BIN_EXE_qinv");
    let ok = Command::new(bin)
        .args(["poincare", "--r", "5", "--format", "plain"])
        .env("QINV_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("poincare:"));
    let bad = Command::new(bin).args(["delta"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let threads = Command::new(bin).args(["delta", "--r", "5"]).env("QINV_THREADS", "lots").output().unwrap();
    assert_eq!(threads.status.code(), Some(2));
}
