//! Command dispatch and report emission.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::model::{resolve, Model};
use super::show::Namer;
use super::syntax::parse_spec;
use crate::algebroid::AlgebroidSpec;
use crate::calculus::Calculus;
use crate::error::{DpcError, Result};
use crate::gerstenhaber::Axioms;
use crate::ncalg::{Poly, Word};
use crate::polyvect::{bivector_check, invert_mu, polyvector_words, BivectorMode, Schouten};
use crate::repn::{display_poly, display_var, induced_bracket, jacobi_on_entries, trace_bracket_check, RepAlgebroid, RepContext};

pub const COMMANDS: [&str; 9] =
    ["check-poisson", "check-quasi", "check-algebroid", "schouten", "d", "cohomology", "rep", "cartan", "loday"];

#[derive(Clone, Debug)]
pub struct Flags {
    pub seed: u64,
    pub max_weight: Option<usize>,
    pub weight: Option<usize>,
    pub degree: Option<usize>,
    pub n: Option<u16>,
    pub checks: Option<Vec<String>>,
    pub experimental_tilde_omega: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { seed: 7, max_weight: None, weight: None, degree: None, n: None, checks: None, experimental_tilde_omega: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub data: Vec<(String, String)>,
    pub witnesses: Vec<(String, String)>,
    pub elapsed_ms: u128,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    fn check(&mut self, name: &str, pass: bool) {
        self.checks.push(Check { name: name.into(), pass });
    }

    fn datum(&mut self, k: impl Into<String>, v: impl Into<String>) {
        self.data.push((k.into(), v.into()));
    }

    fn witness(&mut self, k: impl Into<String>, v: impl Into<String>) {
        self.witnesses.push((k.into(), v.into()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// `key=value` lines; the first line names the command, the last one
    /// gives the overall status.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("command={}", self.command)];
        for c in &self.checks {
            out.push(format!("check.{}={}", c.name, if c.pass { "pass" } else { "fail" }));
        }
        for (k, v) in &self.data {
            out.push(format!("{k}={v}"));
        }
        for (k, v) in &self.witnesses {
            out.push(format!("witness.{k}={v}"));
        }
        out.push(format!("elapsed_ms={}", self.elapsed_ms));
        out.push(format!("status={}", if self.passed() { "pass" } else { "fail" }));
        out
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "command": self.command,
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": self.checks,
            "data": self.data.iter().map(|(k, v)| serde_json::json!({"key": k, "value": v})).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(|(k, v)| serde_json::json!({"key": k, "value": v})).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed_ms,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

/// Errors map to exit code 2 (usage, parse, semantic or unsupported input)
/// or 1 (a mathematical precondition failed).
pub fn error_exit_code(e: &DpcError) -> i32 {
    match e {
        DpcError::Precondition(_) => 1,
        _ => 2,
    }
}

pub fn run(command: &str, text: &str, flags: &Flags) -> Result<Report> {
    if !COMMANDS.contains(&command) {
        return Err(DpcError::Semantic(format!("unknown command '{command}'")));
    }
    let model = resolve(&parse_spec(text)?)?;
    let start = Instant::now();
    let mut rep = Report::new(command);
    match command {
        "check-poisson" | "check-quasi" => check_bracket(&model, flags, &mut rep, command == "check-quasi")?,
        "check-algebroid" => check_algebroid(&model, flags, &mut rep)?,
        "schouten" => schouten(&model, flags, &mut rep)?,
        "d" => differential(&model, flags, &mut rep)?,
        "cohomology" => cohomology(&model, flags, &mut rep)?,
        "rep" => representation(&model, flags, &mut rep)?,
        "cartan" => cartan(&model, flags, &mut rep)?,
        _ => loday(&model, flags, &mut rep)?,
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

fn check_bracket(m: &Model, f: &Flags, rep: &mut Report, quasi: bool) -> Result<()> {
    let db = m.bracket()?;
    let mw = f.max_weight.unwrap_or(2);
    let v = if quasi { db.is_quasi_poisson(mw) } else { db.is_double_poisson(mw) };
    rep.check(if quasi { "quasi_poisson" } else { "double_poisson" }, v.holds);
    if let Some((args, r)) = v.witness {
        let n = Namer::for_algebra(&m.alg);
        rep.witness("arguments", n.words(&args));
        rep.witness("residual", n.tensor(&r));
    }
    Ok(())
}

fn algebroid(m: &Model, f: &Flags, rep: &mut Report) -> Result<AlgebroidSpec> {
    let (spec, r) = m.build_algebroid(f.experimental_tilde_omega)?;
    if let Some(r) = r {
        rep.datum("tilde_omega.verified", r.passed().to_string());
    }
    Ok(spec)
}

fn calculus<'a>(spec: &'a AlgebroidSpec) -> Result<Calculus<'a>> {
    Calculus::new(spec)
}

fn check_algebroid(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    let spec = algebroid(m, f, rep)?;
    let r = spec.verify(f.max_weight.unwrap_or(1));
    rep.check("skew", r.skew);
    rep.check("anchor_morphism", r.anchor_morphism);
    rep.check("jacobi", r.jacobi);
    rep.check("jacobi_projected", r.jacobi_projected);
    rep.check("jacobi_decorated", r.spot_check);
    if let Some((what, args)) = r.witness {
        rep.witness(what.replace(' ', "_"), args.join(", "));
    }
    rep.datum("rank", spec.rank().to_string());
    if spec.is_anchor_zero() {
        let s = spec.split_assoc_check()?;
        rep.check("left_associative", s.left_associative);
        rep.check("right_associative", s.right_associative);
        rep.check("opposite_mod_commutators", s.opposite_mod_commutators);
    }
    Ok(())
}

fn schouten(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    let sch = Schouten::new(&m.alg);
    let n = Namer::for_algebra(&m.alg);
    let mw = f.max_weight.unwrap_or(2);
    let deg = f.degree.unwrap_or(3);
    let mut words = vec![];
    for d in 0..=deg {
        words.extend(polyvector_words(&m.alg, d, mw));
    }
    let ax = Axioms::new(sch.engine());
    let fail = ax.check_all(&words, deg as u32);
    rep.check("double_gerstenhaber", fail.is_none());
    rep.datum("words", words.len().to_string());
    if let Some((what, args)) = fail {
        rep.witness(what, n.words(&args));
    }
    if let Some(db) = &m.db {
        let p = invert_mu(&m.alg, 2, mw, |ix| {
            let g = |i: usize| Poly::basis(Word::letter(m.alg.gen_letter(i)));
            db.eval(&g(ix[0]), &g(ix[1]))
        });
        match p {
            Some(p) => {
                rep.datum("bivector", n.poly(&p));
                let (ok, res) = bivector_check(&sch, &p, BivectorMode::Poisson);
                rep.check("bivector_poisson", ok);
                if !ok {
                    rep.witness("bivector_residual", format!("{res:?}"));
                }
            }
            None => rep.datum("bivector", "none within the weight bound"),
        }
    }
    Ok(())
}

fn differential(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    let spec = algebroid(m, f, rep)?;
    let c = calculus(&spec)?;
    let n = Namer::for_algebroid(&spec);
    for g in 0..m.alg.gen_count() {
        let x = Poly::basis(Word::letter(spec.algebra().gen_letter(g)));
        rep.datum(format!("d({})", spec.algebra().gen_name(g)), n.poly(&c.d(&x)));
    }
    for k in 0..spec.rank() {
        rep.datum(format!("d(λ{})", spec.basis()[k].name), n.poly(&c.d(&c.lambda(k))));
    }
    let (deg, mw) = (f.degree.unwrap_or(2), f.max_weight.unwrap_or(2));
    let mut ok = true;
    for d in 0..=deg {
        for w in c.monomials(d, mw) {
            if ok && !c.d(&c.d(&Poly::basis(w.clone()))).is_zero() {
                ok = false;
                rep.witness("d_squared", n.word(&w));
            }
        }
    }
    rep.check("d_squared", ok);
    Ok(())
}

fn cohomology(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    let spec = algebroid(m, f, rep)?;
    let c = calculus(&spec)?;
    let (deg, w) = (f.degree.unwrap_or(1), f.weight.or(f.max_weight).unwrap_or(2));
    let win = c.cohomology(deg, w)?;
    rep.datum("degree", deg.to_string());
    rep.datum("weight", w.to_string());
    rep.datum("dim", win.dim.to_string());
    rep.datum("kernel", win.kernel.to_string());
    rep.datum("image", win.image.to_string());
    rep.datum("cohomology", win.cohomology.to_string());
    Ok(())
}

fn wanted(f: &Flags, name: &str) -> bool {
    f.checks.as_ref().map_or(true, |c| c.iter().any(|x| x == name))
}

fn representation(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    if let Some(c) = &f.checks {
        if let Some(bad) = c.iter().find(|x| !["jacobi", "trace", "dcompat"].contains(&x.as_str())) {
            return Err(DpcError::Semantic(format!("unknown rep check '{bad}'")));
        }
    }
    let size = f.n.unwrap_or(2);
    rep.datum("N", size.to_string());
    if m.algebroid.is_some() {
        let spec = algebroid(m, f, rep)?;
        let ra = RepAlgebroid::new(&spec, size)?;
        let r = ra.check(f.degree.unwrap_or(1), f.max_weight.unwrap_or(1));
        if wanted(f, "jacobi") {
            rep.check("algebroid_jacobi", r.jacobi);
            rep.check("algebroid_anchor", r.anchor_morphism);
        }
        if wanted(f, "trace") {
            rep.check("algebroid_trace", r.trace_bracket);
        }
        if wanted(f, "dcompat") {
            rep.check("dcompat", r.d_compat);
        }
        if let Some(w) = r.witness {
            rep.witness("algebroid", w);
        }
        return Ok(());
    }
    let db = m.bracket()?;
    let ctx = RepContext::new(&m.alg, size)?;
    let br = induced_bracket(&ctx, db)?;
    for x in ctx.vars() {
        for y in ctx.vars() {
            let v = br.on_vars(x, y);
            if !v.is_zero() {
                rep.datum(format!("bracket[{},{}]", display_var(&m.alg, x), display_var(&m.alg, y)), display_poly(&m.alg, &v));
            }
        }
    }
    if wanted(f, "jacobi") {
        let w = jacobi_on_entries(&ctx, &br);
        rep.check("jacobi", w.is_none());
        if let Some(t) = w {
            let s: Vec<String> = t.iter().map(|v| display_var(&m.alg, *v)).collect();
            rep.witness("jacobi", s.join(", "));
        }
    }
    if wanted(f, "trace") {
        let w = trace_bracket_check(&ctx, db, &br, f.max_weight.unwrap_or(3));
        rep.check("trace", w.is_none());
        if let Some((a, b)) = w {
            let n = Namer::for_algebra(&m.alg);
            rep.witness("trace", format!("{}, {}", n.word(&a), n.word(&b)));
        }
    }
    Ok(())
}

fn cartan(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    let spec = algebroid(m, f, rep)?;
    let c = calculus(&spec)?;
    let n = Namer::for_algebroid(&spec);
    let (deg, mw) = (f.degree.unwrap_or(2), f.max_weight.unwrap_or(1));
    let elems: Vec<Word> = spec.decorated_words(1);
    let (mut unreduced, mut reduced) = (true, true);
    for dd in &elems {
        let d = Poly::basis(dd.clone());
        for k in 0..=deg {
            for w in c.monomials(k, mw) {
                let psi = Poly::basis(w.clone());
                if unreduced && !c.cartan_residual(&d, &psi).is_zero() {
                    unreduced = false;
                    rep.witness("unreduced", format!("{}, {}", n.word(dd), n.word(&w)));
                }
                if reduced && !c.dr_reduce(&c.reduced_cartan_residual(&d, &psi)).is_zero() {
                    reduced = false;
                    rep.witness("reduced", format!("{}, {}", n.word(dd), n.word(&w)));
                }
            }
        }
    }
    rep.check("cartan_unreduced", unreduced);
    rep.check("cartan_reduced", reduced);
    Ok(())
}

fn loday(m: &Model, f: &Flags, rep: &mut Report) -> Result<()> {
    let db = m.bracket()?;
    let mw = f.max_weight.unwrap_or(2);
    let mut samples = m.alg.words_up_to(mw);
    let longer: Vec<Word> = m.alg.words_up_to(mw + 1).into_iter().filter(|w| w.len() == mw + 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(f.seed);
    samples.extend(longer.choose_multiple(&mut rng, 3).cloned());
    let r = db.loday_report(&samples);
    rep.datum("samples", samples.len().to_string());
    rep.check("derivation", r.derivation);
    rep.check("loday", r.loday);
    rep.check("antisymmetric_mod_commutators", r.antisymmetric_mod_commutators);
    if let Some(w) = r.witness {
        rep.witness("arguments", Namer::for_algebra(&m.alg).words(&w));
    }
    Ok(())
}
