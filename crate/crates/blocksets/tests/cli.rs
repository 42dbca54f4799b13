use blocksets::cli::{run, EXIT_BUDGET, EXIT_OK, EXIT_USAGE};
use blocksets::report::SearchReport;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn blocksets(args: &[&str]) -> Run {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = run(
        std::iter::once("blocksets").chain(args.iter().copied()),
        &mut stdout,
        &mut stderr,
    );
    Run {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn report(args: &[&str]) -> SearchReport {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = blocksets(&full);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn colour_eval_prints_the_vector() {
    let r = blocksets(&[
        "colour",
        "eval",
        "--colouring",
        "contribution:m=2,l=2",
        "--word",
        "121",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.starts_with("(0,0)"), "{}", r.stdout);
}

#[test]
fn blockset_points_lists_thirty_words() {
    let r = blocksets(&[
        "blockset",
        "points",
        "--template",
        "11223",
        "--blocks",
        "1;2;3;4;5",
        "--n",
        "5",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let words: Vec<&str> = r
        .stdout
        .lines()
        .filter(|l| l.bytes().all(|b| b.is_ascii_digit()))
        .collect();
    assert_eq!(words.len(), 30);
    assert!(r.stdout.ends_with("30 points\n"));
    assert!(words.contains(&"11223") && words.contains(&"32211"));
}

#[test]
fn verify_thm2_d1_is_clean() {
    let rep = report(&["verify", "thm2", "--d", "1", "--n", "8"]);
    assert!(rep.found.is_empty());
    assert!(rep.examined > 0);
    assert!(!rep.budget_exhausted);
}

#[test]
fn json_reports_round_trip() {
    let args = [
        "search",
        "mono",
        "--colouring",
        "constant:c=0",
        "--template",
        "123",
        "--n",
        "4",
        "--all",
        "--stable",
    ];
    let rep = report(&args);
    assert!(!rep.found.is_empty());
    let again = serde_json::to_string_pretty(&serde_json::to_value(&rep).unwrap()).unwrap() + "\n";
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(&args);
    assert_eq!(blocksets(&full).stdout, again);
}

#[test]
fn csv_has_a_row_per_hit() {
    let args = [
        "search",
        "mono",
        "--colouring",
        "constant:c=0",
        "--template",
        "12",
        "--n",
        "4",
        "--all",
    ];
    let rep = report(&args);
    let mut full = vec!["--format", "csv"];
    full.extend_from_slice(&args);
    let r = blocksets(&full);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout.lines().count(), rep.found.len() + 1);
}

#[test]
fn stable_output_is_byte_identical() {
    let args = [
        "--format",
        "json",
        "--stable",
        "--seed",
        "7",
        "search",
        "mono",
        "--colouring",
        "random:k=2",
        "--template",
        "112",
        "--n",
        "6",
        "--size",
        "mixed:2",
        "--all",
    ];
    let a = blocksets(&args);
    let b = blocksets(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let one = blocksets(&[&["--workers", "1"], &args[..]].concat());
    let four = blocksets(&[&["--workers", "4"], &args[..]].concat());
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains("\"workers\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&one.stdout), strip(&four.stdout));
}

#[test]
fn budget_exhaustion_exits_with_two() {
    let r = blocksets(&[
        "search",
        "witness",
        "--template",
        "123",
        "--n",
        "6",
        "--k",
        "2",
        "--budget",
        "0",
    ]);
    assert_eq!(r.code, EXIT_BUDGET);
    assert!(r.stdout.contains("budget exhausted"), "{}", r.stdout);
}

#[test]
fn witness_tables_feed_back_into_searches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.json");
    let path = path.to_str().unwrap();
    let r = blocksets(&[
        "search",
        "witness",
        "--template",
        "123",
        "--n",
        "3",
        "--k",
        "2",
        "--table-out",
        path,
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let spec = format!("table:@{path}");
    let rep = report(&[
        "search",
        "mono",
        "--colouring",
        &spec,
        "--template",
        "123",
        "--n",
        "3",
        "--all",
    ]);
    assert!(rep.found.is_empty());
    assert!(report(&[
        "search",
        "mono",
        "--colouring",
        &spec,
        "--template",
        "123",
        "--n",
        "3",
        "--size",
        "mixed:3"
    ])
    .found
    .is_empty());
    let r = blocksets(&[
        "search",
        "witness",
        "--template",
        "12",
        "--n",
        "3",
        "--size",
        "mixed:2",
        "--k",
        "2",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("exhausted"), "{}", r.stdout);
}

#[test]
fn output_file_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let r = blocksets(&[
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
        "verify",
        "thm2",
        "--d",
        "1",
        "--n",
        "5",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let rep: SearchReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(rep.found.is_empty());

    let missing = dir.path().join("no/such/dir/report.json");
    let r = blocksets(&[
        "--output",
        missing.to_str().unwrap(),
        "verify",
        "thm2",
        "--d",
        "1",
        "--n",
        "5",
    ]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.starts_with("error:"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_with_one_and_print_nothing() {
    for args in [
        &["search", "frobnicate"][..],
        &["colour", "eval", "--colouring", "paint:x=1", "--word", "12"],
        &[
            "search",
            "mono",
            "--colouring",
            "coordsum:d=1",
            "--template",
            "123",
            "--n",
            "3",
        ],
        &[
            "search",
            "mono",
            "--colouring",
            "table:@/nonexistent.json",
            "--template",
            "12",
            "--n",
            "3",
        ],
        &["verify", "thm2", "--d", "0", "--n", "5"],
    ] {
        let r = blocksets(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn extract_thm3_on_a_constant_colouring() {
    let rep = report(&[
        "extract",
        "thm3",
        "--colouring",
        "constant:c=0",
        "--k",
        "1",
        "--n",
        "6",
    ]);
    assert_eq!(rep.found.len(), 1);
    let text = serde_json::to_string(&rep.found[0]).unwrap();
    assert!(text.contains("ABCCBA"), "{text}");
}

#[test]
fn lattice_commands() {
    let rep = report(&[
        "lattice",
        "ap",
        "--colouring",
        "coordsum:d=1",
        "--box",
        "0..4^2",
        "--d",
        "1",
    ]);
    assert!(rep.found.is_empty());
    let rep = report(&[
        "lattice",
        "ball",
        "--colouring",
        "constant:c=0",
        "--box",
        "0..4^4",
        "--r",
        "1",
        "--t",
        "2",
        "--d",
        "2",
    ]);
    assert_eq!(rep.found.len(), 1);
}
