//! Golden transcripts for every command in the table, plus checks that the
//! commands print exactly what the library returns.
//!
//! Set `FAMFIB_UPDATE_GOLDEN=1` to rewrite the transcripts after an intended
//! output change.

mod common;

use std::fs;
use std::sync::Arc;

use common::{check_corpus_round_trip, check_golden_cases, fixture_dir, run_case, Case, CASES};
use famfib_cli::EXIT_INPUT;
use famfib_core::coinductive::{check_coinduction_premise, lift_relation_generic, minimize};
use famfib_core::format::{parse, serialize, FormatError, SpecDocument};
use famfib_core::inductive::{enumerate_trees, fold, lift_predicate_generic};
use famfib_core::registry::FunctorRegistry;
use famfib_core::stdlib;

fn fixture(name: &str) -> SpecDocument {
    parse(&fs::read_to_string(fixture_dir().join(name)).unwrap()).unwrap()
}

fn stdout_of(name: &str) -> String {
    let case: &Case = CASES.iter().find(|c| c.name == name).unwrap();
    run_case(case, "lib").stdout
}

#[test]
fn golden_transcripts_are_stable_and_match() {
    let update = std::env::var_os("FAMFIB_UPDATE_GOLDEN").is_some();
    let problems = check_golden_cases(update);
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn corpus_round_trips_canonically() {
    let problems = check_corpus_round_trip();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn container_fixtures_are_the_stdlib_exports() {
    for entry in stdlib::containers() {
        let file = format!("container-{}.json", entry.name.replace(':', "-"));
        let c = fixture(&file).to_container().unwrap();
        assert_eq!(c.decl(), entry.container.as_ref().unwrap().decl(), "{file}");
        let text = fs::read_to_string(fixture_dir().join(&file)).unwrap();
        assert_eq!(
            serialize(&SpecDocument::from_container(&c)),
            text,
            "{file} is not canonical"
        );
    }
    assert_eq!(
        fixture("container-nat.json").to_container().unwrap().decl(),
        stdlib::nat_container().decl()
    );
}

#[test]
fn undeclared_state_is_a_referential_error() {
    let text = fs::read_to_string(fixture_dir().join("invalid-undeclared-state.json")).unwrap();
    assert!(matches!(parse(&text), Err(FormatError::Reference(_))));
    let text = fs::read_to_string(fixture_dir().join("invalid-syntax.json")).unwrap();
    assert!(matches!(
        parse(&text),
        Err(FormatError::Syntax { line: 5, .. })
    ));
}

#[test]
fn input_errors_print_usage_for_bad_flags() {
    for name in ["unknown-flag", "unknown-subcommand", "missing-argument"] {
        let case = CASES.iter().find(|c| c.name == name).unwrap();
        let run = run_case(case, "usage");
        assert_eq!(run.exit, EXIT_INPUT);
        assert!(run.stderr.contains("Usage:"), "{name}: {}", run.stderr);
    }
}

#[test]
fn commands_print_the_library_result() {
    let registry = FunctorRegistry::builtin();

    let q = fixture("pred-pfin.json").to_predicate().unwrap();
    let lifted = lift_predicate_generic(registry.resolve("pfin").unwrap().as_ref(), &q).unwrap();
    assert_eq!(
        stdout_of("lift-pred-pfin"),
        serialize(&SpecDocument::from_predicate(&lifted))
    );

    let r = fixture("rel-nat-heads.json").to_relation().unwrap();
    let lifted = lift_relation_generic(registry.resolve("nat").unwrap().as_ref(), &r).unwrap();
    assert_eq!(
        stdout_of("lift-rel-nat"),
        serialize(&SpecDocument::from_relation(&lifted))
    );

    let k = fixture("lts-branching.json")
        .to_coalgebra(&registry)
        .unwrap();
    let (m, _) = minimize(&k).unwrap();
    assert_eq!(
        stdout_of("minimize-branching"),
        serialize(&SpecDocument::from_coalgebra(&m))
    );

    let k = fixture("lts-mismatch.json")
        .to_coalgebra(&registry)
        .unwrap();
    let r = fixture("rel-s0-s1.json").to_relation().unwrap();
    let report = check_coinduction_premise(&k, &r).unwrap();
    assert_eq!(
        report.violations,
        [("*".to_string(), "s0".to_string(), "s1".to_string())]
    );
    assert!(stdout_of("coind-mismatch").contains("violation: *: s0 ~ s1"));

    let nat = Arc::new(stdlib::nat_container());
    let h = fixture("algebra-nat-parity.json").to_algebra(&nat).unwrap();
    let t = fixture("tree-nat-three.json").to_tree(&nat).unwrap();
    assert_eq!(
        stdout_of("fold-parity"),
        format!("{}\n", fold(&nat, &h, &t).unwrap())
    );

    let trees = enumerate_trees(&nat, 3).unwrap();
    let listed: Vec<String> = stdout_of("enum-nat")
        .lines()
        .skip(1)
        .map(|l| l.trim().to_string())
        .collect();
    assert_eq!(
        listed,
        trees[0].iter().map(|t| t.label()).collect::<Vec<_>>()
    );
    assert_eq!(listed, ["z", "s(z)", "s(s(z))"]);
}

#[test]
fn dot_has_one_node_per_bisimilarity_class() {
    let case = CASES
        .iter()
        .find(|c| c.name == "minimize-branching")
        .unwrap();
    let dot = run_case(case, "nodes").dot.unwrap();
    let registry = FunctorRegistry::builtin();
    let k = fixture("lts-branching.json")
        .to_coalgebra(&registry)
        .unwrap();
    let classes = famfib_core::coinductive::largest_bisimulation(&k)
        .unwrap()
        .num_classes();
    assert_eq!(
        dot.lines().filter(|l| l.contains("[label=\"{")).count(),
        classes
    );
    assert!(dot.starts_with("digraph quotient {") && dot.ends_with("}\n"));
}
