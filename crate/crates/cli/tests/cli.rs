use std::fs;
use std::path::PathBuf;

use wreath_cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_USAGE};
use wreath_core::oracle::abelian_coefficient_bruteforce;
use wreath_core::{equivalent, AutomatonFile, InitialAutomaton};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn wreath(args: &[&str]) -> Outcome {
    run(std::iter::once("wreath").chain(args.iter().copied()))
}

fn field<'a>(doc: &'a str, key: &str) -> Option<&'a str> {
    doc.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn load(path: &str) -> AutomatonFile {
    AutomatonFile::parse(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn odometer_is_transitive() {
    let out = wreath(&["transitive", &fixture("odometer.aut")]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(field(&out.stdout, "transitive"), Some("true"));
    assert_eq!(field(&out.stdout, "period"), Some("[1]"));
    assert_eq!(field(&out.stdout, "command"), Some("transitive"));
    assert_eq!(field(&out.stdout, "input.1.sha256").map(str::len), Some(64));
}

#[test]
fn fast2_reports_checked_prefix() {
    let out = wreath(&["transitive", "--fast2", &fixture("lamplighter_b.aut")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(field(&out.stdout, "transitive"), Some("false"));
    assert_eq!(field(&out.stdout, "first_bad_index"), Some("2"));
    assert_eq!(field(&out.stdout, "checked_terms"), Some("[1, 1, 0]"));
}

#[test]
fn undecided_conjugacy_still_exits_zero() {
    let out = wreath(&[
        "conjugate",
        &fixture("lamplighter.aut"),
        &fixture("lamplighter_b.aut"),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(field(&out.stdout, "verdict"), Some("Undecided"));
}

#[test]
fn non_cyclic_input_is_an_input_error() {
    let out = wreath(&["transitive", &fixture("ternary_labeled.aut")]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.starts_with("error: "));
    assert!(out.stderr.contains("ternary_labeled.aut"));
}

#[test]
fn explicit_labels_serve_non_cyclic_input() {
    let out = wreath(&["coeffs", &fixture("ternary_labeled.aut"), "--count", "4"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(field(&out.stdout, "modulus"), Some("2"));
}

#[test]
fn bad_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.aut");
    fs::write(&broken, "alphabet 2\nstate a perm 0 0 to a a\n").unwrap();
    let broken = broken.display().to_string();
    assert_eq!(wreath(&["validate", &broken]).code, EXIT_INPUT);
    assert_eq!(
        wreath(&["validate", &fixture("missing.aut")]).code,
        EXIT_INPUT
    );
    let out = wreath(&["apply", &fixture("odometer.aut"), "--word", "12"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn usage_errors() {
    assert_eq!(wreath(&[]).code, EXIT_USAGE);
    assert_eq!(wreath(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(
        wreath(&["coeffs", &fixture("odometer.aut")]).code,
        EXIT_USAGE
    );
    assert_eq!(wreath(&["--help"]).code, EXIT_OK);
}

#[test]
fn coefficients_match_enumeration() {
    for name in [
        "odometer.aut",
        "lamplighter.aut",
        "lamplighter_b.aut",
        "ternary_labeled.aut",
    ] {
        let path = fixture(name);
        let out = wreath(&["coeffs", &path, "--count", "12"]);
        assert_eq!(out.code, EXIT_OK);
        let terms: Vec<u64> = field(&out.stdout, "terms")
            .unwrap()
            .trim_matches(['[', ']'])
            .split(", ")
            .map(|t| t.parse().unwrap())
            .collect();
        let g = load(&path).labeled_or_cyclic().unwrap();
        for (n, &t) in terms.iter().enumerate().take(9) {
            assert_eq!(
                abelian_coefficient_bruteforce(&g, n, 0).unwrap(),
                t,
                "{name} level {n}"
            );
        }
    }
}

#[test]
fn odometer_rational_form() {
    let out = wreath(&["rational", &fixture("odometer.aut")]);
    assert_eq!(field(&out.stdout, "numerator"), Some("[1]"));
    assert_eq!(field(&out.stdout, "denominator"), Some("[1, 1]"));
}

#[test]
fn apply_adds_one_with_carry() {
    let out = wreath(&["apply", &fixture("odometer.aut"), "--word", "1101"]);
    assert_eq!(field(&out.stdout, "image"), Some("0011"));
}

#[test]
fn orbit_counts() {
    let out = wreath(&["orbit", &fixture("lamplighter_b.aut"), "--level", "3"]);
    assert_eq!(field(&out.stdout, "transitive"), Some("false"));
    assert_eq!(field(&out.stdout, "orbit_count"), Some("2"));
    let capped = wreath(&[
        "orbit",
        &fixture("odometer.aut"),
        "--level",
        "5",
        "--max-words",
        "10",
    ]);
    assert_eq!(capped.code, EXIT_INPUT);
}

#[test]
fn fixtures_survive_validate_and_roundtrip() {
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path().display().to_string();
        let out = wreath(&["validate", &path]);
        assert_eq!(out.code, EXIT_OK, "{path}: {}", out.stderr);
        let file = load(&path);
        assert_eq!(AutomatonFile::parse(&file.to_string()).unwrap(), file);
    }
}

#[test]
fn transformations_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = |n: &str| dir.path().join(n).display().to_string();
    let (odo, lamp) = (fixture("odometer.aut"), fixture("lamplighter_b.aut"));

    let composed = out_path("fg.aut");
    let out = wreath(&["compose", &odo, &lamp, "-o", &composed]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(field(&out.stdout, "output"), Some(composed.as_str()));
    let fg = load(&composed).initial_automaton().unwrap();
    let f = load(&odo).initial_automaton().unwrap();
    let g = load(&lamp).initial_automaton().unwrap();
    assert!(equivalent(&fg, &f.compose(&g).unwrap()).unwrap());

    let inv = out_path("inv.aut");
    assert_eq!(wreath(&["inverse", &lamp, "-o", &inv]).code, EXIT_OK);
    let back = load(&inv).initial_automaton().unwrap().compose(&g).unwrap();
    assert!(equivalent(&back, &InitialAutomaton::identity(2)).unwrap());

    let min = out_path("min.aut");
    assert_eq!(
        wreath(&["minimize", &fixture("odometer_twin.aut"), "--output", &min]).code,
        EXIT_OK
    );
    let m = load(&min).initial_automaton().unwrap();
    let twin = load(&fixture("odometer_twin.aut"))
        .initial_automaton()
        .unwrap();
    assert!(equivalent(&m, &twin).unwrap());
    assert!(m.num_states() <= 2);

    // without -o the automaton goes to stdout
    let printed = wreath(&["inverse", &lamp]);
    assert_eq!(printed.stdout, fs::read_to_string(&inv).unwrap());
}

#[test]
fn labels_follow_transformations() {
    let path = fixture("ternary_labeled.aut");
    let out = wreath(&["inverse", &path]);
    let inv = AutomatonFile::parse(&out.stdout).unwrap();
    assert!(inv.labels.is_some());
    let out = wreath(&["compose", &path, &path]);
    let sq = AutomatonFile::parse(&out.stdout).unwrap();
    assert_eq!(sq.labels.unwrap().label(sq.initial.unwrap()), &[0]);
}

#[test]
fn dot_output() {
    let out = wreath(&["dot", &fixture("odometer.aut")]);
    assert!(out.stdout.starts_with("digraph mealy {"));
    assert!(out.stdout.contains("\"a\" -> \"e\" [label=\"0|1\"];"));
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (fixture("odometer.aut"), fixture("odometer_twin.aut"));
    for args in [
        vec!["equal-ab", a.as_str(), b.as_str()],
        vec!["conjugate", a.as_str(), b.as_str()],
        vec!["compose", b.as_str(), a.as_str()],
    ] {
        assert_eq!(wreath(&args), wreath(&args));
    }
}
