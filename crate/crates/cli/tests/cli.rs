use std::path::PathBuf;
use std::process::{Command, Output};

use gwa_core::rea::{rea_instance, reduce};
use gwa_core::repr::{classify, vn_module};
use gwa_core::spectrum::{pi_certificates, stratum_ideal, StratumDescriptor};
use gwa_core::wire::{decode_elem, decode_family, decode_module, encode_module, encode_stratum};
use gwa_core::QRat;
use serde_json::Value;

fn gwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwa")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn reduce_examples() {
    let inst = rea_instance();
    let out = gwa(&["reduce", "u21*u12 - u12*u21"]);
    assert_eq!(out.status.code(), Some(0));
    let a = decode_elem(&json_of(&out)["normal_form"], &inst).unwrap();
    assert_eq!(a, reduce("(q^-2 - 1)*u22*(u22 - u11)").unwrap());
    assert_eq!(a, reduce("x*y - y*x").unwrap());

    let out = gwa(&["reduce", "q^2"]);
    let a = decode_elem(&json_of(&out)["normal_form"], &inst).unwrap();
    assert_eq!(a.as_ring().unwrap().as_constant(), Some(QRat::q_pow(2)));

    let out = gwa(&["reduce", "x*y", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2() {
    let out = gwa(&["reduce", "u21*("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));
    assert_eq!(gwa(&["module", "simple", "--n", "2", "--u0", "1/0"]).status.code(), Some(2));
    assert_eq!(gwa(&["spectrum", "stratum", "--kind", "T4"]).status.code(), Some(2));
    assert_eq!(gwa(&["verify", "nothing"]).status.code(), Some(2));
    let bad = tmp("bad.json", "{\"dim\": 2");
    assert_eq!(gwa(&["module", "decompose", "--in", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_rea_and_fault() {
    let out = gwa(&["verify", "rea"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["failed"], 0);
    let names: Vec<&str> = v["details"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names.iter().filter(|n| n.contains(" = ") && !n.contains("spanned")).count(), 6);

    let out = gwa(&["verify", "gwa", "--inject-fault", "zz"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["failed"].as_u64().unwrap() > 0);
}

#[test]
fn other_seeds_pass() {
    for seed in ["1", "2"] {
        let out = gwa(&["verify", "gwa", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
    }
}

#[test]
fn module_commands_round_trip() {
    let inst = rea_instance();
    let out = gwa(&["module", "simple", "--n", "3", "--u0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let m = decode_module(&json_of(&out), &inst).unwrap();
    assert_eq!(m, vn_module(3, QRat::one()).unwrap());

    let out = gwa(&["module", "pullback", "--n", "2", "--alpha", "q"]);
    let v = json_of(&out);
    assert_eq!(v["match"], true);
    assert_eq!(QRat::parse(v["u0"].as_str().unwrap()).unwrap(), QRat::q_pow(2));
    let m = decode_module(&v["module"], &inst).unwrap();
    let c = classify(&m).unwrap();
    assert_eq!((c.dim, c.u0().clone()), (2, QRat::q_pow(2)));

    let sum = vn_module(2, QRat::one()).unwrap().direct_sum(&vn_module(3, QRat::q()).unwrap()).unwrap();
    let sum = sum.direct_sum(&vn_module(2, QRat::one()).unwrap()).unwrap();
    let p = tmp("sum.json", &encode_module(&sum).to_string());
    let out = gwa(&["module", "decompose", "--in", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["semisimple"], true);
    let mut got: Vec<(u64, u64)> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["dim"].as_u64().unwrap(), s["multiplicity"].as_u64().unwrap()))
        .collect();
    got.sort();
    assert_eq!(got, vec![(2, 2), (3, 1)]);
}

#[test]
fn spectrum_commands() {
    let out = gwa(&["spectrum", "xn-ideal", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let f = decode_family(&json_of(&out)).unwrap();
    assert_eq!(f.window(), (-4, 4));
    assert!(pi_certificates(&f, 2).unwrap().all_passed());

    let out = gwa(&["spectrum", "stratum", "--kind", "T3", "--n", "1", "--p", "t-1"]);
    assert_eq!(out.status.code(), Some(0));
    let f = decode_family(&json_of(&out)).unwrap();
    assert_eq!(f, stratum_ideal(&StratumDescriptor::T3 { n: 1, c: Some(QRat::one()) }).unwrap());
    let t3 = tmp("t3.json", &String::from_utf8(out.stdout).unwrap());

    let out = gwa(&["spectrum", "stratum", "--kind", "T2", "--p", "(q^2+1)^2*d + q^2*t^2"]);
    let r1 = tmp("r1.json", &String::from_utf8(out.stdout).unwrap());
    let includes = |p: &PathBuf, q: &PathBuf| {
        let out = gwa(&["spectrum", "includes", "--P", p.to_str().unwrap(), "--Q", q.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        json_of(&out)["includes"].as_bool().unwrap()
    };
    assert!(includes(&r1, &t3));
    assert!(!includes(&t3, &r1));

    let desc = tmp("t3n0.json", &encode_stratum(&StratumDescriptor::T3 { n: 1, c: None }).to_string());
    assert!(includes(&r1, &desc));

    assert_eq!(gwa(&["spectrum", "stratum", "--kind", "T3", "--n", "1", "--p", "t"]).status.code(), Some(2));
    assert_eq!(gwa(&["spectrum", "stratum", "--kind", "T1", "--p", "u11 + u12"]).status.code(), Some(2));

    let out = gwa(&["spectrum", "product-check", "--n", "1", "--a", "t-1", "--b", "t-q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["failed"], 0);
}

#[test]
fn degree_cap_is_enforced() {
    let out = gwa(&["spectrum", "xn-ideal", "--n", "2", "--degree-cap", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree cap"));
}
