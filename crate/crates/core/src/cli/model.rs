//! Name resolution and evaluation of a parsed spec file.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::syntax::{AlgStmt, BinOp, Entry, Expr, RoidStmt, Section, SpecFile};
use crate::algebroid::{AlgebroidReport, AlgebroidSpec};
use crate::dbracket::DoubleBracketSpec;
use crate::error::{DpcError, Result};
use crate::ncalg::{poly, AlgebraSpec, BaseRing, Generator, Poly, Tensor, Word, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoidKind {
    Der,
    Cotangent,
    TildeOmega,
    Assoc,
}

#[derive(Clone, Debug)]
pub struct RoidDecl {
    pub kind: RoidKind,
    pub basis: Vec<String>,
    pub products: Vec<Entry>,
}

/// A resolved spec: the algebra, bound parameters and the optional
/// bracket and algebroid sections.
#[derive(Clone, Debug)]
pub struct Model {
    pub alg: AlgebraSpec,
    pub params: BTreeMap<String, Q>,
    pub db: Option<DoubleBracketSpec>,
    pub algebroid: Option<RoidDecl>,
}

#[derive(Clone, Debug)]
enum Val {
    S(Q),
    P(Poly),
    T(Tensor),
}

fn sem<T>(msg: impl Into<String>) -> Result<T> {
    Err(DpcError::Semantic(msg.into()))
}

struct Env<'a> {
    alg: &'a AlgebraSpec,
    params: &'a BTreeMap<String, Q>,
}

impl Env<'_> {
    fn to_poly(&self, v: Val) -> Result<Poly> {
        match v {
            Val::S(c) => Ok(self.alg.one().scale(&c)),
            Val::P(p) => Ok(p),
            Val::T(_) => sem("a tensor appears where an element of the algebra is expected"),
        }
    }

    fn checked_mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        for x in a.keys() {
            for y in b.keys() {
                if x.concat(y).is_none() {
                    return sem(format!("incomposable product of {} and {}", show_word(self.alg, x), show_word(self.alg, y)));
                }
            }
        }
        Ok(poly::mul(a, b))
    }

    fn eval(&self, e: &Expr) -> Result<Val> {
        match e {
            Expr::Int(n) => Ok(Val::S(Q::from_integer(n.clone()))),
            Expr::Name(s) => {
                if let Some(c) = self.params.get(s) {
                    Ok(Val::S(c.clone()))
                } else if self.alg.index_of(s).is_some() {
                    Ok(Val::P(self.alg.gen(s)))
                } else {
                    sem(format!("undeclared name '{s}'"))
                }
            }
            Expr::Idem(v) => {
                if *v == 0 || *v > self.alg.vertices() as u32 {
                    return sem(format!("vertex {v} is outside the base"));
                }
                Ok(Val::P(self.alg.idempotent(*v as u16 - 1)))
            }
            Expr::Neg(x) => Ok(match self.eval(x)? {
                Val::S(c) => Val::S(-c),
                Val::P(p) => Val::P(-&p),
                Val::T(t) => Val::T(t.neg()),
            }),
            Expr::Pow(b, n) => match self.eval(b)? {
                Val::S(c) => Ok(Val::S(num_traits::pow(c, *n as usize))),
                Val::P(p) => {
                    let mut out = self.alg.one();
                    for _ in 0..*n {
                        out = self.checked_mul(&out, &p)?;
                    }
                    Ok(Val::P(out))
                }
                Val::T(_) => sem("powers of tensors are not defined"),
            },
            Expr::Bin(op, a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.binary(op, x, y)
            }
        }
    }

    fn binary(&self, op: &BinOp, x: Val, y: Val) -> Result<Val> {
        use Val::*;
        match op {
            BinOp::Add | BinOp::Sub => {
                let s = if *op == BinOp::Add { Q::one() } else { -Q::one() };
                match (x, y) {
                    (S(a), S(b)) => Ok(S(a + b * s)),
                    (T(a), T(b)) => Ok(T(a.plus(&b.scale(&s)))),
                    (T(_), _) | (_, T(_)) => sem("cannot add a tensor and an algebra element"),
                    (a, b) => {
                        let mut p = self.to_poly(a)?;
                        p.add_scaled(&self.to_poly(b)?, &s);
                        Ok(P(p))
                    }
                }
            }
            BinOp::Mul => match (x, y) {
                (S(a), S(b)) => Ok(S(a * b)),
                (S(c), P(p)) | (P(p), S(c)) => Ok(P(p.scale(&c))),
                (S(c), T(t)) | (T(t), S(c)) => Ok(T(t.scale(&c))),
                (P(a), P(b)) => Ok(P(self.checked_mul(&a, &b)?)),
                (P(p), T(t)) => {
                    let first: Poly = t.iter().map(|(s, _)| (s[0].clone(), Q::one())).collect();
                    self.checked_mul(&p, &first)?;
                    Ok(T(t.outer_left_poly(&p)))
                }
                (T(t), P(p)) => {
                    let last: Poly = t.iter().map(|(s, _)| (s[s.len() - 1].clone(), Q::one())).collect();
                    self.checked_mul(&last, &p)?;
                    Ok(T(t.outer_right_poly(&p)))
                }
                (T(_), T(_)) => sem("products of tensors are not defined"),
            },
            BinOp::Div => match y {
                S(c) if !c.is_zero() => {
                    let r = Q::one() / c;
                    self.binary(&BinOp::Mul, x, S(r))
                }
                S(_) => sem("division by zero"),
                _ => sem("division by a non-scalar"),
            },
            BinOp::Tensor => {
                let (a, b) = (self.to_poly(x)?, self.to_poly(y)?);
                Ok(T(Tensor::product2(&a, &b)))
            }
        }
    }
}

pub fn show_word(alg: &AlgebraSpec, w: &Word) -> String {
    super::show::Namer::for_algebra(alg).word(w)
}

fn build_algebra(stmts: &[AlgStmt]) -> Result<AlgebraSpec> {
    let mut base = None;
    let mut gens = None;
    for s in stmts {
        match s {
            AlgStmt::Base(b) => {
                if base.replace(*b).is_some() {
                    return sem("base is given twice");
                }
            }
            AlgStmt::Gens(g) => {
                if gens.replace(g.clone()).is_some() {
                    return sem("gens is given twice");
                }
            }
        }
    }
    let base = base.unwrap_or(1);
    if base == 0 || base > u16::MAX as u32 {
        return sem("base must have between 1 and 65535 idempotents");
    }
    let mut out = vec![];
    for g in gens.unwrap_or_default() {
        let (s, t) = g.ends.unwrap_or((1, 1));
        if s == 0 || t == 0 || s > base || t > base {
            return sem(format!("generator {} has a vertex outside 1..{base}", g.name));
        }
        if g.name == "e" {
            return sem("'e' is reserved for idempotents");
        }
        out.push(Generator { name: g.name.clone(), src: s as u16 - 1, tgt: t as u16 - 1 });
    }
    AlgebraSpec::new(BaseRing::new(base as u16)?, out).map_err(|e| DpcError::Semantic(e.to_string()))
}

fn eval_params(opts: &[(String, Expr)]) -> Result<BTreeMap<String, Q>> {
    let empty = AlgebraSpec::free(&[]);
    let mut params = BTreeMap::new();
    for (k, e) in opts {
        let env = Env { alg: &empty, params: &params };
        let v = match env.eval(e)? {
            Val::S(c) => c,
            _ => return sem(format!("option {k} must be a rational number")),
        };
        if params.insert(k.clone(), v).is_some() {
            return sem(format!("option {k} is given twice"));
        }
    }
    Ok(params)
}

/// Resolves names, evaluates literals and builds the double bracket.
pub fn resolve(file: &SpecFile) -> Result<Model> {
    let mut seen = BTreeMap::new();
    for s in &file.sections {
        let key = match s {
            Section::Algebra(_) => "algebra",
            Section::Options(_) => "options",
            Section::DBracket(_) => "dbracket",
            Section::Algebroid(_) => "algebroid",
        };
        if seen.insert(key, ()).is_some() {
            return sem(format!("section {key} appears twice"));
        }
    }
    let alg = match file.sections.iter().find_map(|s| if let Section::Algebra(a) = s { Some(a) } else { None }) {
        Some(a) => build_algebra(a)?,
        None => AlgebraSpec::free(&[]),
    };
    let params = match file.sections.iter().find_map(|s| if let Section::Options(o) = s { Some(o) } else { None }) {
        Some(o) => eval_params(o)?,
        None => BTreeMap::new(),
    };
    for k in params.keys() {
        if alg.index_of(k).is_some() {
            return sem(format!("'{k}' is both an option and a generator"));
        }
    }
    let env = Env { alg: &alg, params: &params };
    let mut db = None;
    let mut algebroid = None;
    for s in &file.sections {
        match s {
            Section::DBracket(es) => {
                let mut entries = vec![];
                for e in es {
                    let (Some(i), Some(j)) = (alg.index_of(&e.left), alg.index_of(&e.right)) else {
                        return sem(format!("bracket entry {},{} names an undeclared generator", e.left, e.right));
                    };
                    let t = match env.eval(&e.value)? {
                        Val::T(t) => t,
                        Val::S(c) if c.is_zero() => Tensor::zero(2),
                        _ => return sem(format!("value of {{{{{},{}}}}} must be a tensor", e.left, e.right)),
                    };
                    entries.push(((i, j), t));
                }
                db = Some(DoubleBracketSpec::new(&alg, entries).map_err(|e| DpcError::Semantic(e.to_string()))?);
            }
            Section::Algebroid(st) => algebroid = Some(roid_decl(st)?),
            _ => {}
        }
    }
    Ok(Model { alg, params, db, algebroid })
}

fn roid_decl(st: &[RoidStmt]) -> Result<RoidDecl> {
    let mut kind = None;
    let mut basis = vec![];
    let mut products = vec![];
    for s in st {
        match s {
            RoidStmt::Kind(k) => {
                let v = match k.as_str() {
                    "der" => RoidKind::Der,
                    "cotangent" => RoidKind::Cotangent,
                    "tilde_omega" => RoidKind::TildeOmega,
                    "assoc" => RoidKind::Assoc,
                    _ => return sem(format!("unknown algebroid kind '{k}'")),
                };
                if kind.replace(v).is_some() {
                    return sem("kind is given twice");
                }
            }
            RoidStmt::Basis(b) => basis = b.clone(),
            RoidStmt::Product(e) => products.push(e.clone()),
        }
    }
    let Some(kind) = kind else { return sem("algebroid section needs a kind") };
    if kind != RoidKind::Assoc && (!basis.is_empty() || !products.is_empty()) {
        return sem("basis and products are only meaningful for kind = assoc");
    }
    Ok(RoidDecl { kind, basis, products })
}

impl Model {
    pub fn bracket(&self) -> Result<&DoubleBracketSpec> {
        self.db.as_ref().ok_or_else(|| DpcError::Semantic("missing required section dbracket".into()))
    }

    /// Builds the declared algebroid; `tilde_omega` also returns its
    /// verification report.
    pub fn build_algebroid(&self, experimental: bool) -> Result<(AlgebroidSpec, Option<AlgebroidReport>)> {
        let Some(decl) = &self.algebroid else {
            return sem("missing required section algebroid");
        };
        match decl.kind {
            RoidKind::Der => Ok((AlgebroidSpec::der(&self.alg), None)),
            RoidKind::Cotangent => Ok((AlgebroidSpec::cotangent(self.bracket()?)?, None)),
            RoidKind::TildeOmega => {
                let (s, r) = AlgebroidSpec::tilde_omega(self.bracket()?, experimental)?;
                Ok((s, Some(r)))
            }
            RoidKind::Assoc => {
                let names: Vec<&str> = decl.basis.iter().map(String::as_str).collect();
                let free = AlgebraSpec::free(&names);
                let no_params = BTreeMap::new();
                let env = Env { alg: &free, params: &no_params };
                let mut mult: BTreeMap<(usize, usize), Vec<(Q, usize)>> = BTreeMap::new();
                for e in &decl.products {
                    let (Some(i), Some(j)) = (free.index_of(&e.left), free.index_of(&e.right)) else {
                        return sem(format!("product {},{} names an undeclared basis element", e.left, e.right));
                    };
                    let p = env.to_poly(env.eval(&e.value)?)?;
                    let mut row = vec![];
                    for (w, c) in p.iter() {
                        if w.len() != 1 {
                            return sem(format!("product {},{} must be a linear combination of basis elements", e.left, e.right));
                        }
                        row.push((c.clone(), w.letters()[0].index as usize));
                    }
                    if mult.insert((i, j), row).is_some() {
                        return sem(format!("product {},{} is given twice", e.left, e.right));
                    }
                }
                Ok((AlgebroidSpec::assoc(&names, &mult)?, None))
            }
        }
    }
}
