use gdwl::generators::Family;
use gdwl::harness::{
    check_negative_expressivity, check_positive_expressivity, expressivity_table, run_suite, Cell,
    Corpus, Probe, RunOptions, Suite, Verdict, TABLE_ROWS,
};
use gdwl::refine::Algorithm;
use gdwl::Error;

fn small() -> RunOptions {
    RunOptions {
        seeds: 40,
        trees: 10,
        timing: false,
    }
}

#[test]
fn every_suite_passes_on_a_small_corpus() {
    for name in Suite::NAMES {
        let reports = run_suite(name.parse().unwrap(), small()).unwrap();
        assert!(!reports.is_empty(), "{name}");
        for r in reports {
            assert_eq!(r.verdict == Verdict::Pass, r.violations.is_empty());
            assert!(r.passed(), "{name}: {:?}", r.violations.first());
            assert_eq!(r.elapsed_ms, 0);
        }
    }
}

#[test]
fn reports_serialize_with_the_fixed_schema() {
    let reports = run_suite(Suite::Drg, small()).unwrap();
    let value = serde_json::to_value(&reports[0]).unwrap();
    for key in [
        "check_id",
        "population",
        "verdict",
        "violations",
        "elapsed_ms",
    ] {
        assert!(value.get(key).is_some(), "{key}");
    }
    assert_eq!(value["verdict"], "pass");
}

#[test]
fn suites_are_deterministic() {
    let a = serde_json::to_string(&run_suite(Suite::All, small()).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::All, small()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn violations_are_reported_with_items() {
    // biconnectivity-aware refinement does separate the pair, so the
    // negative expectation must fail
    let gdwl: Algorithm = "gdwl".parse().unwrap();
    let r = check_negative_expressivity(
        "probe",
        &[gdwl],
        &[Family::Example1 { m: 1, k: 4 }],
        Probe::Node(8),
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let json = serde_json::to_value(&r.violations[0]).unwrap();
    assert_eq!(json["items"], serde_json::json!([8, 8]));
    assert_eq!(json["graphs"][1], "example1(m=1,k=4)/G2");
}

#[test]
fn positive_check_rejects_unclaimed_algorithms() {
    let corpus = Corpus::standard(4).unwrap();
    let wl: Algorithm = "1wl".parse().unwrap();
    assert!(matches!(
        check_positive_expressivity(&wl, &corpus),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn observed_table_matches_expected_pattern() {
    let corpus = Corpus::standard(30).unwrap();
    let (table, report) = expressivity_table(&corpus).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    for (row, (name, expected)) in table.rows.iter().zip(TABLE_ROWS) {
        assert_eq!(row.algorithm, name);
        let cells = [&row.cut_vertex, &row.cut_edge, &row.bcv_tree, &row.bce_tree];
        for (cell, want) in cells.into_iter().zip(expected) {
            if let Some(want) = want {
                assert_eq!(*cell == Cell::Expressive, want, "{name}");
            }
        }
    }
}
