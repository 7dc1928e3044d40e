//! End-to-end behaviour of the command line, run in-process.

use std::path::PathBuf;

use qga::spec::{FamilySpec, PcSpec};
use qga::sweep::SweepTable;
use qga::{run, Outcome};
use qga_core::WeddDecomp;

fn qga(args: &str) -> Outcome {
    run(std::iter::once("qga").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let out = qga(args);
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    out.stdout
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qga-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn decompose_text_lines() {
    assert_eq!(
        ok("decompose --family two_gen --p 3 --tuple 2,2,2,2,2"),
        "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))\n"
    );
    assert_eq!(ok("decompose --abelian 3:1,2"), "Q + 4 Q(z3) + 3 Q(z9)\n");
    assert_eq!(
        ok("decompose --family nenciu --n 1 --p 5"),
        "Q + 6 Q(z5) + M5(Q(z5))\n"
    );
}

#[test]
fn decompose_json_round_trips() {
    let text = ok("decompose --family lewis --n 2 --p 3 --format json");
    let d: WeddDecomp = serde_json::from_str(&text).unwrap();
    assert_eq!(d.components().len(), 5);
    assert_eq!(d.group_order(), 243);
    assert_eq!(format!("{d}\n"), ok("decompose --family lewis --n 2 --p 3"));
    assert_eq!(serde_json::to_string_pretty(&d).unwrap() + "\n", text);
}

#[test]
fn output_is_deterministic() {
    for args in [
        "decompose --family two_gen --p 5 --tuple 3,2,1,1,0 --format json",
        "oracle --family lewis --n 1 --p 3",
        "sweep --p 3,5 --gamma 1..3 --format json",
        "verify --family two_gen --p 3 --tuple 2,1,1,0,1",
    ] {
        assert_eq!(qga(args), qga(args), "{args}");
    }
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        "verify --family nenciu --n 3 --p 3",
        "decompose --family two_gen --p 3 --tuple 1,2,3,0,0",
        "decompose --family two_gen --p 4 --tuple 1,1,1,0,0",
        "decompose --family two_gen --p 3 --tuple 1,1,1",
        "decompose --family lewis --p 3",
        "decompose --abelian 3:1 --family lewis --n 1 --p 3",
        "decompose",
        "decompose --abelian 6:1",
        "verify --corpus huge",
        "sweep --gamma 1..",
        "frobnicate",
    ] {
        let out = qga(args);
        assert_eq!(out.code, 2, "{args}: {out:?}");
        assert!(!out.stderr.is_empty(), "{args}");
    }
    let out = qga("verify --family nenciu --n 3 --p 3");
    assert!(out.stderr.contains("too small"), "{}", out.stderr);
}

#[test]
fn help_and_version_exit_0() {
    assert!(ok("--help").contains("example-729"));
    assert!(ok("sweep --help").contains("--gamma"));
    assert!(ok("--version").starts_with("qga "));
}

#[test]
fn oracle_bound_comes_from_flag_or_env() {
    let wreath = qga::corpus::control_group();
    let qga::spec::GroupSpec::Presentation(pc) = &wreath.spec else {
        panic!("control group is a presentation")
    };
    let path = temp_file("bound-wreath.json", &serde_json::to_string(pc).unwrap());
    let args = format!("oracle --pc {}", path.display());
    let out = qga(&format!("{args} --bound 80"));
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bound"), "{}", out.stderr);
    assert_eq!(qga(&format!("{args} --bound 81")).code, 0);
    // Families with witnesses fall back to the fast path above the bound.
    let fast = ok("oracle --family two_gen --p 3 --tuple 1,1,1,1,1 --bound 1");
    assert!(fast.contains("GvzFastPath"), "{fast}");

    let bin = env!("CARGO_BIN_EXE_qga");
    let status = |bound: &str| {
        std::process::Command::new(bin)
            .args(["oracle", "--pc"])
            .arg(&path)
            .env("QGA_ORACLE_BOUND", bound)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status("80"), Some(2));
    assert_eq!(status("81"), Some(0));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn oracle_json_summary() {
    let v: serde_json::Value = serde_json::from_str(&ok(
        "oracle --family two_gen --p 3 --tuple 2,2,2,0,2 --format json",
    ))
    .unwrap();
    assert_eq!(v["order"], 729);
    assert_eq!(v["nested_gvz"], true);
    assert_eq!(v["method"], "dixon");
    let d: WeddDecomp = serde_json::from_value(v["decomposition"].clone()).unwrap();
    assert_eq!(
        d.to_string(),
        "Q + 4 Q(z3) + 12 Q(z9) + 3 M3(Q(z9)) + M9(Q(z9))"
    );
}

#[test]
fn verify_single_group_passes() {
    let text = ok("verify --family two_gen --p 3 --tuple 2,2,2,0,2");
    assert!(text.contains("PASS formula = oracle"), "{text}");
    assert!(text.contains("PASS nested GVZ"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
    let json: serde_json::Value =
        serde_json::from_str(&ok("verify --family lewis --n 1 --p 3 --format json")).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 1);
}

#[test]
fn spec_and_pc_files() {
    let spec = serde_json::to_string(&FamilySpec::Lewis { n: 2, p: 3 }).unwrap();
    let path = temp_file("lewis.json", &spec);
    assert_eq!(
        ok(&format!("decompose --spec {}", path.display())),
        ok("decompose --family lewis --n 2 --p 3")
    );

    let wreath = qga::corpus::control_group();
    let qga::spec::GroupSpec::Presentation(pc) = &wreath.spec else {
        panic!("control group is a presentation")
    };
    let pc_path = temp_file("wreath.json", &serde_json::to_string_pretty(pc).unwrap());
    let summary: serde_json::Value = serde_json::from_str(&ok(&format!(
        "oracle --pc {} --format json",
        pc_path.display()
    )))
    .unwrap();
    assert_eq!(summary["order"], 81);
    assert_eq!(summary["gvz"], false);
    let report = qga(&format!("verify --pc {}", pc_path.display()));
    assert_eq!(report.code, 0, "{}", report.stdout);

    let broken = temp_file("broken.json", r#"{"family":"lewis","n":2}"#);
    assert_eq!(
        qga(&format!("decompose --spec {}", broken.display())).code,
        2
    );
    let bad_pc: PcSpec = PcSpec {
        label: None,
        generators: vec!["a".into(), "b".into()],
        orders: vec![3, 3],
        powers: Default::default(),
        commutators: [("[a,c]".to_string(), vec![0, 1])].into_iter().collect(),
    };
    let bad_path = temp_file("bad-pc.json", &serde_json::to_string(&bad_pc).unwrap());
    assert_eq!(qga(&format!("oracle --pc {}", bad_path.display())).code, 2);
    assert_eq!(qga("decompose --spec /nonexistent/qga.json").code, 2);
    for p in [path, pc_path, broken, bad_path] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn count_cyclic_rows() {
    assert_eq!(
        ok("count-cyclic --abelian 3:1,2"),
        "C3 x C9\nalpha  order  cyclic subgroups  elements\n\
         0      1      1                 1\n\
         1      3      4                 8\n\
         2      9      3                 18\n"
    );
    let v: serde_json::Value = serde_json::from_str(&ok(
        "count-cyclic --abelian 2:1,1,3 --alpha 1 --format json",
    ))
    .unwrap();
    assert_eq!(v[0]["cyclic_subgroups"], 7);
    assert_eq!(v[0]["elements"], 7);
}

#[test]
fn idempotents_pass_on_extraspecial_and_lewis() {
    let text = ok("idempotents --family two_gen --p 3 --tuple 1,1,1,1,1");
    assert!(text.contains("1 groups, 2 checks, 0 failed"), "{text}");
    let v: serde_json::Value =
        serde_json::from_str(&ok("idempotents --family lewis --n 2 --p 3 --format json")).unwrap();
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.iter().filter(|c| c["degree"] != 1).count(), 4);
}

fn sweep_json(args: &str) -> SweepTable {
    serde_json::from_str(&ok(&format!("sweep --format json {args}"))).unwrap()
}

#[test]
fn sweep_groups_rows_by_decomposition() {
    let t = sweep_json("--p 3 --gamma 2 --rho 0,1,2");
    let fp: Vec<&str> = t.rows.iter().map(|r| r.fingerprint.as_str()).collect();
    assert_eq!(fp.len(), 3);
    assert_ne!(fp[0], fp[1]);
    assert_eq!(fp[1], fp[2]);
    assert_eq!(t.classes, 2);

    let t = sweep_json("--p 3 --gamma 3 --rho 1..3");
    assert_eq!(t.rows.len(), 3);
    assert!(t
        .rows
        .iter()
        .all(|r| r.fingerprint == t.rows[0].fingerprint && r.tau == "tau_n5"));
}

#[test]
fn empty_and_partially_invalid_grids() {
    let out = qga("sweep --gamma 2 --rho 3..2");
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "0 tuples, 0 distinct decompositions, 0 grid points skipped\n"
    );
    let t = sweep_json("--gamma 2 --rho 3..2");
    assert!(t.rows.is_empty());
    // ρ > γ is not a valid tuple and is skipped rather than rejected.
    let t = sweep_json("--gamma 1 --rho 0..2");
    assert_eq!((t.rows.len(), t.skipped), (2, 1));
    assert_eq!(qga("sweep --gamma 1 --p 9").code, 2);
}

#[test]
fn example_729_output() {
    let out = qga("example-729");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "G1 = G(2,2,2;2,2) p=3: Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))\n\
         G2 = G(2,2,2;1,2) p=3: Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))\n\
         G3 = G(2,2,2;0,2) p=3: Q + 4 Q(z3) + 12 Q(z9) + 3 M3(Q(z9)) + M9(Q(z9))\n\
         QG1, QG2: isomorphic\n\
         QG1, QG3: not isomorphic\n\
         expected decompositions confirmed\n"
    );
    assert!(out.stderr.contains("formula path"));
    let v: serde_json::Value = serde_json::from_str(&ok("example-729 --format json")).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["g1_g3_isomorphic"], false);
}
