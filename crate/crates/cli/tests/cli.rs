use std::process::Command;

use novikov_cli::commands::{
    cmd_check, cmd_examples, cmd_novikov, cmd_spectrum, cmd_ss, CheckSource, ExitStatus, Format, RunConfig,
    StrategyKind,
};
use novikov_cli::corpus;
use novikov_cli::document::Document;

fn json_cfg(seed: u64) -> RunConfig {
    RunConfig { seed, format: Format::Json, ..RunConfig::default() }
}

/// Runs whatever command fits the document kind.
fn run_any(doc: &Document, cfg: &RunConfig) -> String {
    match doc {
        Document::Complex(_) => {
            let mut s = cmd_novikov(doc, &[], cfg).unwrap().text;
            s += &cmd_spectrum(doc, &[0.7, 1.9], cfg).unwrap().text;
            s
        }
        Document::Morse(_) => cmd_check(doc, &CheckSource::Betti(vec![1, 0, 1]), cfg).unwrap().text,
        Document::Family(_) => cmd_ss(doc, None, None, cfg).unwrap().text,
    }
}

#[test]
fn documents_round_trip() {
    let cfg = json_cfg(5);
    for doc in corpus::all() {
        let text = cmd_examples(Some(doc.name())).unwrap().text;
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(run_any(&back, &cfg), run_any(&doc, &cfg), "{}", doc.name());
    }
}

#[test]
fn repeated_runs_agree() {
    for doc in corpus::all() {
        assert_eq!(run_any(&doc, &json_cfg(11)), run_any(&doc, &json_cfg(11)));
    }
}

#[test]
fn strategies_agree_on_corpus() {
    let exact = RunConfig { strategy: StrategyKind::Exact, format: Format::Csv, ..RunConfig::default() };
    for doc in corpus::all() {
        if let Document::Complex(_) = doc {
            for seed in [0, 1, 99] {
                let rnd = RunConfig { seed, format: Format::Csv, ..RunConfig::default() };
                assert_eq!(
                    cmd_novikov(&doc, &[], &rnd).unwrap().text,
                    cmd_novikov(&doc, &[], &exact).unwrap().text,
                    "{}",
                    doc.name()
                );
            }
        }
    }
}

#[test]
fn check_examples() {
    let cfg = RunConfig::default();
    let morse = corpus::get("sphere_morse").unwrap();
    let out = cmd_check(&morse, &CheckSource::Complex(corpus::get("sphere_complex").unwrap()), &cfg).unwrap();
    assert_eq!(out.status, ExitStatus::Success);
    assert!(out.text.contains("Q(λ)       0"));
    // a Betti vector violating the inequalities
    let out = cmd_check(&morse, &CheckSource::Betti(vec![1, 1, 1]), &cfg).unwrap();
    assert_eq!(out.status, ExitStatus::NegativeCertificate);
    // mismatched fiber dimensions
    let companion = corpus::get("alexander_trefoil_companion").unwrap();
    let err = cmd_check(&morse, &CheckSource::Complex(companion), &cfg).unwrap_err();
    assert_eq!(err.status(), ExitStatus::Malformed);
}

#[test]
fn trefoil_rational_probes_show_no_jump() {
    let doc = corpus::get("alexander_trefoil").unwrap();
    let probes: Vec<_> = novikov_cli::commands::parse_points("2;3").unwrap();
    let out = cmd_novikov(&doc, &probes, &RunConfig::default()).unwrap();
    assert!(!out.text.contains("jump"), "{}", out.text);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_novikov"))
}

#[test]
fn binary_exit_codes() {
    let ok = bin().args(["novikov", "circle_xi1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("betti      0 0"));

    let fails = bin().args(["check", "sphere_morse", "--betti", "1,1,1"]).output().unwrap();
    assert_eq!(fails.status.code(), Some(1));

    let missing = bin().args(["novikov", "no_such_document"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let bad_prime = bin().args(["--prime", "97", "novikov", "circle_xi1"]).output().unwrap();
    assert_eq!(bad_prime.status.code(), Some(2));

    let vague = bin().args(["spectrum", "circle_xi1", "--s", "0.0002"]).output().unwrap();
    assert_eq!(vague.status.code(), Some(3));

    let short = bin().args(["ss", "circle_linear_family", "--pages", "1"]).output().unwrap();
    assert_eq!(short.status.code(), Some(3));
}

#[test]
fn binary_reads_files_and_writes_out() {
    let dir = std::env::temp_dir().join(format!("novikov-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let doc = dir.join("torus.json");
    let out = dir.join("out.csv");
    let emitted = bin().args(["examples", "torus_xi10"]).output().unwrap();
    std::fs::write(&doc, &emitted.stdout).unwrap();
    let status = bin()
        .args(["--format", "csv", "--out"])
        .arg(&out)
        .arg("spectrum")
        .arg(&doc)
        .args(["--s", "1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("s,degree,index,eigenvalue\n"));
    assert_eq!(csv.lines().count(), 1 + 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_document_reports_location() {
    let dir = std::env::temp_dir().join(format!("novikov-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let doc = dir.join("bad.json");
    std::fs::write(&doc, "{\"kind\": \"complex\", \"name\": 3}").unwrap();
    let out = bin().arg("novikov").arg(&doc).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("name"));
    std::fs::remove_dir_all(&dir).unwrap();
}
