use dpc_core::cli::syntax::{AlgStmt, BinOp, Entry, Expr, GenDecl, RoidStmt, Section};
use dpc_core::cli::{parse_spec, resolve, run, Flags, SpecFile};
use dpc_core::dbracket::kt_family;
use dpc_core::error::DpcError;
use dpc_core::ncalg::q;
use proptest::prelude::*;

const KT: &str = "algebra { base = 1; gens = t }
options { L = 1; M = 0; V = 0 }
dbracket { t,t = L*(t#1 - 1#t) + M*(t^2#1 - 1#t^2) + V*(t^2#t - t#t^2) }";

fn kt_file(l: i64, m: i64, v: i64) -> String {
    KT.replace("L = 1; M = 0; V = 0", &format!("L = {l}; M = {m}; V = {v}"))
}

#[test]
fn kt_file_evaluates_to_the_family() {
    let m = resolve(&parse_spec(KT).unwrap()).unwrap();
    let db = m.db.unwrap();
    let t = db.algebra().gen("t");
    assert_eq!(db.eval(&t, &t), kt_family(q(1), q(0), q(0)).eval(&t, &t));
}

#[test]
fn empty_gens_is_the_base() {
    let m = resolve(&parse_spec("algebra { base = 2; gens = }\ndbracket { }").unwrap()).unwrap();
    assert_eq!(m.alg.gen_count(), 0);
    assert_eq!(m.alg.vertices(), 2);
    assert!(m.db.unwrap().is_zero());
}

#[test]
fn incomposable_literal_is_rejected() {
    let src = "algebra { base = 2; gens = x: 1 -> 2, y: 1 -> 2 }\ndbracket { x,y = (x*y)#1 }";
    assert!(matches!(resolve(&parse_spec(src).unwrap()), Err(DpcError::Semantic(_))));
    // endpoints of {{x,y}} must be e_{s(y)} A e_{t(x)} ⊗ e_{s(x)} A e_{t(y)}
    let src = "algebra { base = 2; gens = x: 1 -> 2, y: 1 -> 2 }\ndbracket { x,y = e(1)#e(1) }";
    assert!(matches!(resolve(&parse_spec(src).unwrap()), Err(DpcError::Semantic(_))));
}

#[test]
fn undeclared_names_are_rejected() {
    for src in ["algebra { gens = x }\ndbracket { x,z = 1#1 }", "algebra { gens = x }\ndbracket { x,x = y#1 - 1#y }"] {
        assert!(matches!(resolve(&parse_spec(src).unwrap()), Err(DpcError::Semantic(_))), "{src}");
    }
}

#[test]
fn syntax_errors_carry_locations() {
    let e = parse_spec("algebra { gens = x }\ndbracket {\n  x,x = (x#1 - 1#x\n}").unwrap_err();
    assert_eq!(e, DpcError::Parse { line: 4, col: 1, msg: "expected ')', found '}'".into() });
    let e = parse_spec("algebra { gens = x }\nbrackets { }").unwrap_err();
    assert!(matches!(e, DpcError::Parse { line: 2, col: 1, .. }), "{e:?}");
}

#[test]
fn classification_through_the_driver() {
    let f = Flags::default();
    assert_eq!(run("check-poisson", &kt_file(1, 0, 0), &f).unwrap().exit_code(), 0);
    let r = run("check-poisson", &kt_file(0, 1, 0), &f).unwrap();
    assert_eq!(r.exit_code(), 1);
    assert!(r.witnesses.iter().any(|(k, _)| k == "residual"));
    assert_eq!(run("check-poisson", &kt_file(-2, 2, -2), &f).unwrap().exit_code(), 0);
}

#[test]
fn cohomology_command_on_der() {
    let f = Flags { degree: Some(1), weight: Some(2), ..Flags::default() };
    let r = run("cohomology", "algebra { gens = x }\nalgebroid { kind = der }", &f).unwrap();
    assert!(r.data.contains(&("cohomology".to_string(), "0".to_string())));
}

#[test]
fn usage_errors() {
    let f = Flags::default();
    assert!(matches!(run("nope", KT, &f), Err(DpcError::Semantic(_))));
    assert!(matches!(run("d", KT, &f), Err(DpcError::Semantic(_))));
    assert!(matches!(run("loday", "algebra { gens = x }", &f), Err(DpcError::Semantic(_))));
    let tilde = "algebra { gens = x }\ndbracket { }\nalgebroid { kind = tilde_omega }";
    assert!(matches!(run("check-algebroid", tilde, &f), Err(DpcError::Experimental(_))));
}

#[test]
fn output_is_deterministic() {
    let f = Flags::default();
    let strip = |r: dpc_core::cli::Report| r.lines().into_iter().filter(|l| !l.starts_with("elapsed_ms")).collect::<Vec<_>>();
    let a = strip(run("loday", KT, &f).unwrap());
    let b = strip(run("loday", KT, &f).unwrap());
    assert_eq!(a, b);
}

#[test]
fn json_mirrors_lines() {
    let r = run("check-poisson", &kt_file(0, 1, 0), &Flags::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["checks"][0]["name"], "double_poisson");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), r.witnesses.len());
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "t", "L", "a_1", "b'"]).prop_map(String::from)
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..20).prop_map(|n| Expr::Int(n.into())),
        name().prop_map(Expr::Name),
        (1u32..4).prop_map(Expr::Idem),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let op = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Tensor]);
        prop_oneof![
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::Bin(o, Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

fn entry() -> impl Strategy<Value = Entry> {
    (name(), name(), expr()).prop_map(|(left, right, value)| Entry { left, right, value })
}

fn section() -> impl Strategy<Value = Section> {
    let gen = (name(), prop::option::of((1u32..4, 1u32..4))).prop_map(|(name, ends)| GenDecl { name, ends });
    let alg = prop::collection::vec(
        prop_oneof![(1u32..5).prop_map(AlgStmt::Base), prop::collection::vec(gen, 0..3).prop_map(AlgStmt::Gens)],
        0..3,
    );
    let roid = prop::collection::vec(
        prop_oneof![
            prop::sample::select(vec!["der", "assoc"]).prop_map(|k| RoidStmt::Kind(k.into())),
            prop::collection::vec(name(), 1..3).prop_map(RoidStmt::Basis),
            entry().prop_map(RoidStmt::Product),
        ],
        0..3,
    );
    prop_oneof![
        alg.prop_map(Section::Algebra),
        prop::collection::vec((name(), expr()), 0..3).prop_map(Section::Options),
        prop::collection::vec(entry(), 0..3).prop_map(Section::DBracket),
        roid.prop_map(Section::Algebroid),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_is_identity(sections in prop::collection::vec(section(), 0..4)) {
        let file = SpecFile { sections };
        let text = file.to_string();
        prop_assert_eq!(parse_spec(&text).unwrap(), file, "{}", text);
    }

    #[test]
    fn parser_never_panics(s in "[a-z{}();,=#*+^/ 0-9:>\n-]{0,60}") {
        let _ = parse_spec(&s);
    }
}
