use std::process::{Command, Output};

use rncdim::oracle::SweepRecord;
use rncdim::report::StructuredReport;

fn rncdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rncdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn worked_example_end_to_end() {
    let out = rncdim(&["dim", "-n", "5", "-d", "8", "-m", "7,6^2,5^7,2^3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dimension   6\n"), "{text}");
    assert_eq!(text.matches("redundant, dropped").count(), 3);
}

#[test]
fn repeated_multiplicity_flags_concatenate() {
    let out = rncdim(&[
        "dim", "-n", "5", "-d", "8", "-m", "7,6^2", "-m", "5^7", "--format", "json",
    ]);
    let report = StructuredReport::from_json(stdout(&out).trim()).unwrap();
    assert_eq!(report.mults, vec![7, 6, 6, 5, 5, 5, 5, 5, 5, 5]);
    assert_eq!(report.dimension, 6.into());
}

#[test]
fn small_cases() {
    let out = rncdim(&["dim", "-n", "2", "-d", "4", "-m", "2,2,2,2,2"]);
    assert!(stdout(&out).contains("dimension   1\n"));
    let out = rncdim(&["dim", "-n", "3", "-d", "1", "-m", "1,1"]);
    let text = stdout(&out);
    assert!(text.contains("dimension   2\n"));
    assert!(text.contains("evaluator   ldim"));
}

#[test]
fn structured_output_round_trips() {
    let out = rncdim(&[
        "dim",
        "-n",
        "5",
        "-d",
        "8",
        "-m",
        "7,6^2,5^7,2^3",
        "--format",
        "json",
    ]);
    let text = stdout(&out);
    let report = StructuredReport::from_json(text.trim()).unwrap();
    assert_eq!(report.to_json(), text.trim());
    assert_eq!(report.normalized_mults.len(), 10);
    assert_eq!(report.kc, Some(5));
    assert_eq!(report.epsilon, Some(1));
    assert_eq!(report.trace.len(), 3);
    assert!(report
        .special_effects
        .iter()
        .any(|e| (e.c, e.sigma, e.t, e.k) == (1, 6, 1, 3)
            && e.f == 8.into()
            && e.signed == (-16).into()));
}

#[test]
fn human_and_structured_agree() {
    let args = ["dim", "-n", "3", "-d", "6", "-m", "2^10"];
    let human = stdout(&rncdim(&args));
    let json = stdout(&rncdim(&[&args[..], &["--format", "json"]].concat()));
    let report = StructuredReport::from_json(json.trim()).unwrap();
    assert!(human.contains(&format!("dimension   {}\n", report.dimension)));
    assert!(human.contains(&format!("vdim        {}\n", report.vdim)));
    assert!(human.contains(&format!("kC          {}\n", report.kc.unwrap())));
}

#[test]
fn report_groups_by_dimension() {
    let out = rncdim(&["report", "-n", "5", "-d", "8", "-m", "7,6^2,5^7,2^3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let groups: Vec<&str> = text.lines().filter(|l| l.ends_with(':')).collect();
    assert_eq!(groups, vec!["curves:", "surfaces:", "3folds:", "4folds:"]);
    assert!(text.contains("c=1 sigma=6 t=1 k=3 r=2 count=2 f=8 signed=-16"));
    assert!(text.ends_with("dimension = 6\n"));
}

#[test]
fn report_homogeneous_and_plain() {
    let text = stdout(&rncdim(&["report", "-n", "3", "-d", "6", "-m", "2^10"]));
    assert!(text.contains("curves:\n  c=0 sigma=0 t=1 k=1 r=1 count=1 f=1 signed=1\n"));
    assert_eq!(text.matches("r=").count(), 1);
    let text = stdout(&rncdim(&["report", "-n", "2", "-d", "5", "-m", "2^5"]));
    assert!(text.contains("no special-effect varieties"));
}

#[test]
fn verify_single_instance() {
    let out = rncdim(&[
        "verify",
        "-n",
        "5",
        "-d",
        "8",
        "-m",
        "7,6^2,5^7,2^3",
        "--evaluators",
        "all",
        "--oracle",
        "modular:3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["formula", "recursive", "oracle"] {
        assert!(
            text.lines()
                .any(|l| l.starts_with(name) && l.contains(" 6")),
            "{text}"
        );
    }
    assert!(text.contains("verdict    agree-normalized"));
}

#[test]
fn verify_reports_domain_gaps() {
    let out = rncdim(&["verify", "-n", "3", "-d", "2", "-m", "1,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("formula    n/a"));
    assert!(text.contains("verdict    agree"));
}

#[test]
fn verify_grid() {
    let out = rncdim(&["verify", "--grid", "n=2..3,s=n+3..n+4,d=0..5,m=1..3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("0 disagreements, 0 errors"));
}

#[test]
fn regindex() {
    let text = stdout(&rncdim(&[
        "regindex",
        "-n",
        "2",
        "-m",
        "2,2,2,2,2",
        "--window",
        "1",
    ]));
    assert!(text.starts_with("regularity index 5\n"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("d=4") && l.ends_with(" special")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("d=5") && l.ends_with("non-special")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("d=6") && l.ends_with("non-special")));
    let text = stdout(&rncdim(&[
        "regindex",
        "-n",
        "5",
        "-m",
        "7,6,6,5,5,5,5,5,5,5",
    ]));
    assert_eq!(text, "regularity index 12\n");
    let text = stdout(&rncdim(&["regindex", "-n", "3", "-m", "2^10"]));
    assert_eq!(text, "regularity index 7\n");
}

#[test]
fn sweep_emits_records() {
    let out = rncdim(&["sweep", "--grid", "n=2..2,s=5..5,d=2..3,m=1..2"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2 * 6);
    for line in &lines {
        assert!(line.starts_with(r#"{"n":2,"d":"#));
        let rec: SweepRecord = serde_json::from_str(line).unwrap();
        assert!(rec.verdict.is_agreement(), "{line}");
    }
}

#[test]
fn exit_codes() {
    // Bad input.
    assert_eq!(
        code(&rncdim(&["dim", "-n", "3", "-d", "2", "-m", "1,x"])),
        2
    );
    assert_eq!(code(&rncdim(&["dim", "-n", "0", "-d", "2", "-m", "1"])), 2);
    assert_eq!(
        code(&rncdim(&[
            "dim", "-n", "3", "-d", "2", "-m", "1", "--oracle", "exact"
        ])),
        2
    );
    assert_eq!(
        code(&rncdim(&[
            "dim",
            "-n",
            "3",
            "-d",
            "2",
            "-m",
            "1",
            "--evaluators",
            "all"
        ])),
        2
    );
    assert_eq!(
        code(&rncdim(&[
            "verify",
            "-n",
            "3",
            "-d",
            "2",
            "-m",
            "1",
            "--oracle",
            "modular:0"
        ])),
        2
    );
    assert_eq!(code(&rncdim(&["sweep", "--grid", "n=2..3"])), 2);
    // Domain violations.
    assert_eq!(
        code(&rncdim(&[
            "dim",
            "-n",
            "3",
            "-d",
            "2",
            "-m",
            "1,1",
            "--evaluators",
            "formula"
        ])),
        3
    );
    assert_eq!(
        code(&rncdim(&[
            "dim",
            "-n",
            "3",
            "-d",
            "6",
            "-m",
            "2^10",
            "--evaluators",
            "planar"
        ])),
        3
    );
    assert_eq!(code(&rncdim(&["regindex", "-n", "3", "-m", "1,1"])), 3);
    assert_eq!(
        code(&rncdim(&[
            "dim",
            "-n",
            "3",
            "-d",
            "6",
            "-m",
            "2^10",
            "--evaluators",
            "oracle",
            "--cap-cells",
            "100"
        ])),
        3
    );
}

#[test]
fn negative_inputs_are_accepted() {
    let out = rncdim(&[
        "dim", "-n", "3", "-d", "-1", "-m", "-2,1", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let report = StructuredReport::from_json(stdout(&out).trim()).unwrap();
    assert_eq!(report.dimension, 0.into());
    assert!(report.flags.contains(&"negative-degree".to_string()));
}
