use std::io::Write;
use std::process::{Command as Proc, Stdio};

use cocompact::cli::{run, Command, Options, Status, Verdict};
use cocompact::salem::quadratic;
use cocompact::sympmat::build_a_for_theorem1;
use serde_json::{json, Value};

fn call(cmd: Command, input: Value) -> Verdict {
    run(cmd, &input.to_string(), &Options::default())
}

/// Runs the binary and returns (exit code, stdout).
fn exe(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Proc::new(env!("CARGO_BIN_EXE_cocompact"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn t2_mu(family: &str) -> Value {
    json!({"entries": [[1, 0], [0, 1], [1, 1]], "family": family})
}

#[test]
fn salem_check_verdicts() {
    assert_eq!(call(Command::SalemCheck, json!({"poly": [1, 0, -1, -1, -1, 0, 1]})).status, Status::Yes);
    let v = call(Command::SalemCheck, json!({"poly": [1, -2, 1]}));
    assert_eq!(v.status, Status::No);
}

#[test]
fn build_then_verify_round_trips() {
    let inputs = [
        json!({"theorem": "t1", "f": [1, -3, 1], "q": 1}),
        json!({"theorem": "t2", "mu": t2_mu("osc2")}),
        json!({"theorem": "t2", "mu": t2_mu("d")}),
        json!({"theorem": "d0"}),
    ];
    for inp in inputs {
        let built = call(Command::BuildLattice, inp.clone());
        assert_eq!(built.status, Status::Yes, "{inp}");
        let lattice = built.witness.expect("lattice witness");
        let checked = call(Command::VerifyLattice, json!({"lattice": lattice, "word_length": 2}));
        assert_eq!(checked.status, Status::Yes, "{inp}");
        // The bare witness is accepted too.
        assert_eq!(call(Command::VerifyLattice, lattice).status, Status::Yes);
    }
}

#[test]
fn decide_t2_basis_is_reverified() {
    let found = call(Command::DecideT2, json!({"mu": t2_mu("d")}));
    assert_eq!(found.status, Status::Yes);
    let basis = found.witness.unwrap();
    let again = call(Command::DecideT2, json!({"mu": t2_mu("d"), "basis": basis.clone()}));
    assert_eq!(again.status, Status::Yes);

    let mut bad = basis;
    bad["coords"][2] = json!(["1", "2"]);
    let rejected = call(Command::DecideT2, json!({"mu": t2_mu("d"), "basis": bad}));
    assert_eq!(rejected.status, Status::No);
}

#[test]
fn commensurability_witness_is_reverified() {
    let g1 = build_a_for_theorem1(&quadratic(3), 1).unwrap();
    let g2 = build_a_for_theorem1(&quadratic(7), 1).unwrap();
    let found = call(Command::Commensurable, json!({"g1": g1, "g2": g2}));
    assert_eq!(found.status, Status::Yes);
    let w = found.witness.unwrap();
    let again = call(Command::Commensurable, json!({"g1": g1, "g2": g2, "witness": w.clone()}));
    assert_eq!(again.status, Status::Yes);

    let mut bad = w;
    bad["m"] = json!("1/3");
    let rejected = call(Command::Commensurable, json!({"g1": g1, "g2": g2, "witness": bad}));
    assert_eq!(rejected.status, Status::No);
}

#[test]
fn output_is_deterministic() {
    let inp = json!({"theorem": "t1", "f": [1, -1, -1, -1, 1], "q": 1}).to_string();
    let (c1, o1) = exe(&["build-lattice"], &inp);
    let (c2, o2) = exe(&["build-lattice"], &inp);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);

    let (_, e1) = exe(&["salem-enum"], "{}");
    let (_, e2) = exe(&["salem-enum"], "{}");
    assert_eq!(e1, e2);
}

#[test]
fn exit_codes() {
    let (code, out) = exe(&["salem-check"], r#"{"poly": [1, -3, 1]}"#);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["status"], "yes");

    // A "no" answer is still a successful run.
    let (code, _) = exe(&["salem-check"], r#"{"poly": [1, 1, 1]}"#);
    assert_eq!(code, 0);

    let (code, out) = exe(&["salem-check"], r#"{"poly": "x"}"#);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["detail"]["kind"], "schema");
    assert_eq!(v["detail"]["path"], "poly");

    let (code, _) = exe(&["salem-check"], "not json");
    assert_eq!(code, 2);

    // A lattice whose generator was shifted off the lattice fails closure.
    let built = call(Command::BuildLattice, json!({"theorem": "t2", "mu": t2_mu("d")}));
    let mut lat = built.witness.unwrap();
    lat["generators"][3]["zeta"][0] = json!("1/18");
    let (code, out) = exe(&["verify-lattice", "--bound", "2"], &lat.to_string());
    assert_eq!(code, 3, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["detail"]["word"].is_array());

    let (code, _) = exe(&["build-lattice"], r#"{"theorem": "t1", "f": [1, -2, 1], "q": 1}"#);
    assert_eq!(code, 1);
}
