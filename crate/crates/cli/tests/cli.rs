use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use proptest::prelude::*;
use serde_json::Value;

use eqprop_cli::term::{parse, Term};
use eqprop_core::crossed::Family;
use eqprop_core::groups::FiniteGroup;
use eqprop_core::semantics::{group_algebra_model, trivial_action};

fn eqprop(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eqprop"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eqprop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn boxed(t: Term) -> Box<Term> {
    Box::new(t)
}

/// `n → 1` by multiplying from the left; `u` when `n = 0`.
fn collapse(n: usize) -> Term {
    match n {
        0 => Term::Unit,
        1 => Term::Id(1),
        _ => Term::Seq(
            boxed(Term::Tensor(boxed(Term::Mult), boxed(Term::Id(n - 2)))),
            boxed(collapse(n - 1)),
        ),
    }
}

fn op(t: Term) -> Term {
    match t {
        Term::Op(inner) => *inner,
        Term::Id(n) => Term::Id(n),
        other => Term::Op(boxed(other)),
    }
}

/// Some well-typed `n → m` term without recursion.
fn filler(n: usize, m: usize) -> Term {
    match (n, m) {
        (0, 0) => Term::Id(0),
        (a, b) if a == b => Term::Id(a),
        (a, 0) => Term::Seq(boxed(collapse(a)), boxed(Term::Op(boxed(Term::Unit)))),
        (a, b) => Term::Seq(boxed(collapse(a)), boxed(op(collapse(b)))),
    }
}

fn labels(n: usize) -> impl Strategy<Value = Term> {
    let names = ["e", "(12)", "(23)", "(13)", "(123)", "(132)"];
    prop::collection::vec(prop::sample::select(names.to_vec()), n)
        .prop_map(|ls| Term::Labels(ls.into_iter().map(String::from).collect()))
}

/// Well-typed `n → m` terms. `decorations` admits `f` and `tw`, which only
/// evaluate in their own families.
fn typed(n: usize, m: usize, depth: u32, decorations: bool) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = vec![Just(filler(n, m)).boxed()];
    if n == m {
        leaves.push(labels(n).boxed());
        if n >= 2 {
            leaves.push((1..n).prop_map(move |i| {
                let cross = Term::Cross(i);
                if i + 1 == n { cross } else { Term::Tensor(boxed(cross), boxed(Term::Id(n - i - 1))) }
            }).boxed());
        }
        if decorations && n >= 1 {
            leaves.push(prop_oneof![Just(Term::Flag(n)), Just(Term::Twist(n))].boxed());
        }
    }
    match (n, m) {
        (2, 1) => leaves.push(Just(Term::Mult).boxed()),
        (0, 1) => leaves.push(Just(Term::Unit).boxed()),
        (1, 2) => leaves.push(Just(Term::Op(boxed(Term::Mult))).boxed()),
        (1, 0) => leaves.push(Just(Term::Op(boxed(Term::Unit))).boxed()),
        _ => {}
    }
    let leaf = prop::strategy::Union::new(leaves).boxed();
    if depth == 0 {
        return leaf;
    }
    let seq = (0usize..=3)
        .prop_flat_map(move |k| (typed(n, k, depth - 1, decorations), typed(k, m, depth - 1, decorations)))
        .prop_map(|(a, b)| Term::Seq(boxed(a), boxed(b)));
    let tensor = (0..=n, 0..=m)
        .prop_flat_map(move |(n1, m1)| {
            (
                typed(n1, m1, depth - 1, decorations),
                typed(n - n1, m - m1, depth - 1, decorations),
            )
        })
        .prop_map(|(a, b)| Term::Tensor(boxed(a), boxed(b)));
    let flipped = typed(m, n, depth - 1, decorations).prop_map(op);
    prop_oneof![2 => leaf, 2 => seq, 2 => tensor, 1 => flipped].boxed()
}

fn any_typed(decorations: bool) -> impl Strategy<Value = Term> {
    (0usize..=3, 0usize..=3).prop_flat_map(move |(n, m)| typed(n, m, 3, decorations))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_then_parsing_round_trips(t in any_typed(true)) {
        let printed = t.to_string();
        let reparsed = parse(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
        prop_assert_eq!(&reparsed, &t);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn fully_parenthesised_text_parses_to_the_same_term(t in any_typed(true)) {
        fn explicit(t: &Term) -> String {
            match t {
                Term::Seq(a, b) => format!("({};{})", explicit(a), explicit(b)),
                Term::Tensor(a, b) => format!("({} + {})", explicit(a), explicit(b)),
                Term::Op(a) => format!("op({})", explicit(a)),
                other => other.to_string(),
            }
        }
        prop_assert_eq!(parse(&explicit(&t)).unwrap(), t);
    }

    #[test]
    fn evaluation_respects_arity(t in any_typed(false), fam in prop::sample::select(vec![Family::Symmetric, Family::Braid])) {
        let g = Arc::new(FiniteGroup::symmetric3());
        let (n, m) = t.arity().unwrap();
        let c = t.evaluate(fam, &g).unwrap();
        prop_assert_eq!((c.in_mono.codomain(), c.out_mono.codomain()), (n, m));
    }

    #[test]
    fn sequencing_is_associative(
        a in typed(2, 2, 2, false), b in typed(2, 1, 2, false), c in typed(1, 2, 2, false),
    ) {
        let g = Arc::new(FiniteGroup::symmetric3());
        let left = Term::Seq(boxed(Term::Seq(boxed(a.clone()), boxed(b.clone()))), boxed(c.clone()));
        let right = Term::Seq(boxed(a), boxed(Term::Seq(boxed(b), boxed(c))));
        prop_assert_eq!(
            left.evaluate(Family::Symmetric, &g).unwrap(),
            right.evaluate(Family::Symmetric, &g).unwrap()
        );
    }
}

#[test]
fn associativity_of_multiplication_holds() {
    let (code, out, _) = eqprop(&["eq", "(m+id(1));m", "(id(1)+m);m"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["equal"], Value::Bool(true));
    assert_eq!(v["left"]["normal_form"], v["right"]["normal_form"]);
}

#[test]
fn unequal_terms_exit_one() {
    let (code, out, _) = eqprop(&["--family", "braid", "eq", "s(1);s(1)", "id(2)"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["equal"], Value::Bool(false));
    let (code, _, _) = eqprop(&["eq", "s(1);s(1)", "id(2)"]);
    assert_eq!(code, 0);
}

#[test]
fn ill_typed_terms_are_usage_errors() {
    let (code, out, err) = eqprop(&["nf", "m;u"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(json(&err)["error"].as_str().unwrap().contains("arity"));
    let (code, _, err) = eqprop(&["nf", "m;;m"]);
    assert_eq!(code, 2);
    assert!(json(&err)["error"].as_str().unwrap().contains("column"));
    let (code, _, _) = eqprop(&["nf"]);
    assert_eq!(code, 2);
    let (code, _, _) = eqprop(&["--group", "/nonexistent/group.json", "nf", "m"]);
    assert_eq!(code, 2);
}

#[test]
fn decorations_require_their_family() {
    let (code, _, _) = eqprop(&["nf", "f(1)"]);
    assert_eq!(code, 2);
    let (code, _, _) = eqprop(&["--family", "hyperoctahedral", "eq", "f(1);f(1)", "id(1)"]);
    assert_eq!(code, 0);
    let (code, _, _) = eqprop(&["--family", "ribbon", "eq", "tw(1);tw(1)", "id(1)"]);
    assert_eq!(code, 1);
}

#[test]
fn compose_runs_first_then_second() {
    let (code, out, _) = eqprop(&["compose", "m+id(1)", "m"]);
    assert_eq!(code, 0);
    let composed = json(&out);
    let (_, direct, _) = eqprop(&["nf", "(m+id(1));m"]);
    assert_eq!(composed["normal_form"], json(&direct)["normal_form"]);
    let (code, _, _) = eqprop(&["compose", "m", "m"]);
    assert_eq!(code, 2);
}

#[test]
fn labelled_enumeration_matches_closed_form() {
    let (code, out, _) = eqprop(&["--group", "c2", "enum", "--cat", "dpg", "--n", "2", "--m", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["count"], 8);
    assert_eq!(v["matches_formula"], Value::Bool(true));
    // |G|^n · n! · C(n+m-1, n) for n = 3, m = 2 over C3: 27 · 6 · 4
    let (_, out, _) = eqprop(&["--group", "c3", "enum", "--cat", "dpg", "--n", "3", "--m", "2"]);
    assert_eq!(json(&out)["count"], 648);
    let (_, out, _) = eqprop(&["enum", "--cat", "delta", "--n", "3", "--m", "2", "--list"]);
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["items"].as_array().unwrap().len(), 4);
    let (code, _, _) = eqprop(&["--family", "braid", "enum", "--cat", "elements", "--n", "2", "--m", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn group_files_are_accepted() {
    let path = scratch("c3.json", &FiniteGroup::cyclic(3).to_json());
    let (code, out, _) = eqprop(&["--group", path.to_str().unwrap(), "enum", "--cat", "gfas", "--n", "2", "--m", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["matches_formula"], Value::Bool(true));
    assert_eq!(v["count"], 18);
}

#[test]
fn crossed_suite_passes_for_braids() {
    let (code, out, _) = eqprop(&["--family", "braid", "--max-n", "3", "check", "--suite", "crossed"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["passed"], Value::Bool(true));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let runs = [
        vec!["--group", "c2", "--seed", "11", "check", "--suite", "rewrite", "--max-n", "2", "--samples", "200"],
        vec!["--group", "s3", "--seed", "11", "check", "--suite", "category", "--max-n", "2", "--samples", "50"],
        vec!["--seed", "11", "check", "--suite", "semantics", "--max-n", "2", "--samples", "20"],
    ];
    for args in runs {
        let first = eqprop(&args);
        let second = eqprop(&args);
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn interpretation_in_a_group_algebra() {
    let h = FiniteGroup::cyclic(2);
    let g = Arc::new(FiniteGroup::cyclic(2));
    let model = group_algebra_model(5, &h, Arc::clone(&g), &trivial_action(&h, &g)).unwrap();
    let path = scratch("kc2.json", &model.to_json().to_string());
    let path = path.to_str().unwrap();

    // e_a ⊗ e_b ↦ e_{ab}
    let (code, out, _) = eqprop(&["interp", "--model", path, "m"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["matrix"], serde_json::json!([[1, 0, 0, 1], [0, 1, 1, 0]]));
    assert_eq!(v["model_axiom_failures"].as_array().unwrap().len(), 0);

    // group-like comultiplication e_h ↦ e_h ⊗ e_h
    let (_, out, _) = eqprop(&["interp", "--model", path, "op(m)"]);
    assert_eq!(json(&out)["matrix"], serde_json::json!([[1, 0], [0, 0], [0, 0], [0, 1]]));

    let (code, out, _) = eqprop(&["--group", "c2", "check", "--suite", "semantics", "--model", path, "--samples", "30"]);
    assert_eq!(code, 0, "{out}");
}
