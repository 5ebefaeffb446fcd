//! The representation functor at `B = k`: matrix-entry coordinates,
//! induced Poisson brackets, the Lie algebroid `(L)_N` and trace checks.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebroid::{split, AlgebroidSpec, LElement};
use crate::calculus::{Calculus, LForm};
use crate::dbracket::DoubleBracketSpec;
use crate::error::{DpcError, Result};
use crate::ncalg::{AlgebraSpec, LetterKind, LinComb, Perm, Poly, Tensor, Word, Q};

/// The entry `g_{ij}` of the matrix of generator `g` (zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub gen: u16,
    pub i: u16,
    pub j: u16,
}

/// Sorted exponent vector.
pub type Monomial = Vec<(Var, u32)>;
/// Commutative polynomial in the entry variables.
pub type RepPoly = LinComb<Monomial>;
/// Element of the free `O_N`-module on the symbols `u_{k,ij}`.
pub type RepVec = BTreeMap<(usize, u16, u16), RepPoly>;

pub fn rp_const(c: Q) -> RepPoly {
    RepPoly::term(vec![], c)
}

pub fn rp_var(v: Var) -> RepPoly {
    RepPoly::basis(vec![(v, 1)])
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: Monomial = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rp_mul(a: &RepPoly, b: &RepPoly) -> RepPoly {
    let mut out = RepPoly::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            out.add_term(mono_mul(ma, mb), ca * cb);
        }
    }
    out
}

pub fn rp_deriv(p: &RepPoly, v: Var) -> RepPoly {
    let mut out = RepPoly::zero();
    for (m, c) in p.iter() {
        let Some(pos) = m.iter().position(|(x, _)| *x == v) else { continue };
        let e = m[pos].1;
        let mut m2 = m.clone();
        if e == 1 {
            m2.remove(pos);
        } else {
            m2[pos].1 = e - 1;
        }
        out.add_term(m2, c * Q::from_integer(e.into()));
    }
    out
}

pub fn rp_vars(p: &RepPoly) -> Vec<Var> {
    let mut vs: Vec<Var> = p.keys().flat_map(|m| m.iter().map(|(v, _)| *v)).collect();
    vs.sort();
    vs.dedup();
    vs
}

fn vec_add_scaled(out: &mut RepVec, x: &RepVec, f: &RepPoly) {
    for (k, p) in x {
        let e = out.entry(*k).or_insert_with(RepPoly::zero);
        *e += &rp_mul(p, f);
    }
    out.retain(|_, p| !p.is_zero());
}

/// Matrix size and the underlying free algebra.
#[derive(Clone, Debug)]
pub struct RepContext {
    alg: AlgebraSpec,
    n: u16,
}

impl RepContext {
    pub fn new(alg: &AlgebraSpec, n: u16) -> Result<Self> {
        if alg.vertices() != 1 {
            return Err(DpcError::Unsupported("representation spaces are built over B = k only".into()));
        }
        if n == 0 {
            return Err(DpcError::Precondition("matrix size must be at least 1".into()));
        }
        Ok(RepContext { alg: alg.clone(), n })
    }

    pub fn size(&self) -> u16 {
        self.n
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.alg
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = vec![];
        for g in 0..self.alg.gen_count() as u16 {
            for i in 0..self.n {
                for j in 0..self.n {
                    out.push(Var { gen: g, i, j });
                }
            }
        }
        out
    }

    /// `(x_1 … x_m)_{ij} = Σ (x_1)_{i p_1} … (x_m)_{p_{m-1} j}` on generator words.
    pub fn entry_word(&self, w: &Word, i: u16, j: u16) -> RepPoly {
        let mut row: BTreeMap<u16, RepPoly> = BTreeMap::new();
        row.insert(i, rp_const(Q::one()));
        for l in w.letters() {
            debug_assert_eq!(l.kind, LetterKind::Gen);
            let mut next: BTreeMap<u16, RepPoly> = BTreeMap::new();
            for (p, c) in &row {
                for q in 0..self.n {
                    let t = rp_mul(c, &rp_var(Var { gen: l.index, i: *p, j: q }));
                    *next.entry(q).or_insert_with(RepPoly::zero) += &t;
                }
            }
            row = next;
        }
        row.remove(&j).unwrap_or_else(RepPoly::zero)
    }

    pub fn entry_poly(&self, a: &Poly, i: u16, j: u16) -> RepPoly {
        let mut out = RepPoly::zero();
        for (w, c) in a.iter() {
            out.add_scaled(&self.entry_word(w, i, j), c);
        }
        out
    }

    pub fn trace(&self, a: &Poly) -> RepPoly {
        let mut out = RepPoly::zero();
        for i in 0..self.n {
            out += &self.entry_poly(a, i, i);
        }
        out
    }

    /// `(p ⊗ q) ↦ p_{uj} q_{iv}`.
    fn tensor_entry(&self, t: &Tensor, i: u16, j: u16, u: u16, v: u16) -> RepPoly {
        let mut out = RepPoly::zero();
        for (s, c) in t.iter() {
            let x = rp_mul(&self.entry_word(&s[0], u, j), &self.entry_word(&s[1], i, v));
            out.add_scaled(&x, c);
        }
        out
    }
}

/// Biderivation on `O_N(A)` given on pairs of entry variables.
#[derive(Clone, Debug)]
pub struct RepBracket {
    table: BTreeMap<(Var, Var), RepPoly>,
}

impl RepBracket {
    pub fn on_vars(&self, x: Var, y: Var) -> RepPoly {
        self.table.get(&(x, y)).cloned().unwrap_or_else(RepPoly::zero)
    }

    pub fn bracket(&self, f: &RepPoly, g: &RepPoly) -> RepPoly {
        let mut out = RepPoly::zero();
        let gv = rp_vars(g);
        for x in rp_vars(f) {
            let fx = rp_deriv(f, x);
            for &y in &gv {
                let b = self.on_vars(x, y);
                if b.is_zero() {
                    continue;
                }
                out += &rp_mul(&rp_mul(&fx, &rp_deriv(g, y)), &b);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(RepPoly::is_zero)
    }
}

/// `{a_{ij}, b_{uv}} = {{a,b}}'_{uj} {{a,b}}''_{iv}` on generator entries.
pub fn induced_bracket(ctx: &RepContext, db: &DoubleBracketSpec) -> Result<RepBracket> {
    if !db.is_double_poisson(2).holds {
        return Err(DpcError::Precondition("the double bracket is not double Poisson".into()));
    }
    Ok(induced_bracket_unchecked(ctx, db))
}

pub fn induced_bracket_unchecked(ctx: &RepContext, db: &DoubleBracketSpec) -> RepBracket {
    let mut table = BTreeMap::new();
    let alg = db.algebra();
    for x in ctx.vars() {
        for y in ctx.vars() {
            let a = Poly::basis(Word::letter(alg.gen_letter(x.gen as usize)));
            let b = Poly::basis(Word::letter(alg.gen_letter(y.gen as usize)));
            let v = ctx.tensor_entry(&db.eval(&a, &b), x.i, x.j, y.i, y.j);
            if !v.is_zero() {
                table.insert((x, y), v);
            }
        }
    }
    RepBracket { table }
}

/// First failing generator-entry triple of the Jacobi identity, if any.
pub fn jacobi_on_entries(ctx: &RepContext, br: &RepBracket) -> Option<[Var; 3]> {
    let vars = ctx.vars();
    for &x in &vars {
        for &y in &vars {
            for &z in &vars {
                let (px, py, pz) = (rp_var(x), rp_var(y), rp_var(z));
                let mut r = br.bracket(&px, &br.bracket(&py, &pz));
                r += &br.bracket(&py, &br.bracket(&pz, &px));
                r += &br.bracket(&pz, &br.bracket(&px, &py));
                if !r.is_zero() {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// `Tr {a,b} = {Tr a, Tr b}` on all word pairs up to `max_len`.
pub fn trace_bracket_check(ctx: &RepContext, db: &DoubleBracketSpec, br: &RepBracket, max_len: usize) -> Option<(Word, Word)> {
    let words = ctx.alg.words_up_to(max_len);
    let traces: Vec<RepPoly> = words.iter().map(|w| ctx.trace(&Poly::basis(w.clone()))).collect();
    for (a, ta) in words.iter().zip(&traces) {
        for (b, tb) in words.iter().zip(&traces) {
            let lhs = ctx.trace(&db.assoc(&Poly::basis(a.clone()), &Poly::basis(b.clone())));
            if lhs != br.bracket(ta, tb) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// The commutative Lie algebroid `(L)_N` on the symbols `u_{k,ij}`.
#[derive(Clone, Debug)]
pub struct RepAlgebroid<'a> {
    ctx: RepContext,
    spec: &'a AlgebroidSpec,
}

/// Outcome of the `(L)_N` checks.
#[derive(Clone, Debug, PartialEq)]
pub struct RepAlgebroidReport {
    pub jacobi: bool,
    pub anchor_morphism: bool,
    pub trace_bracket: bool,
    pub d_compat: bool,
    pub witness: Option<String>,
}

impl RepAlgebroidReport {
    pub fn passed(&self) -> bool {
        self.jacobi && self.anchor_morphism && self.trace_bracket && self.d_compat
    }
}

fn sym(k: usize, i: u16, j: u16) -> RepVec {
    let mut v = RepVec::new();
    v.insert((k, i, j), rp_const(Q::one()));
    v
}

impl<'a> RepAlgebroid<'a> {
    pub fn new(spec: &'a AlgebroidSpec, n: u16) -> Result<Self> {
        if !spec.verify(1).passed() {
            return Err(DpcError::Precondition("algebroid fails verification".into()));
        }
        Ok(RepAlgebroid { ctx: RepContext::new(spec.algebra(), n)?, spec })
    }

    pub fn context(&self) -> &RepContext {
        &self.ctx
    }

    pub fn symbols(&self) -> Vec<(usize, u16, u16)> {
        let n = self.ctx.n;
        let mut out = vec![];
        for k in 0..self.spec.rank() {
            for i in 0..n {
                for j in 0..n {
                    out.push((k, i, j));
                }
            }
        }
        out
    }

    /// `(α u_k β)_{ij} = Σ α_{ip} u_{k,pq} β_{qj}`.
    pub fn entry_l(&self, x: &LElement, i: u16, j: u16) -> RepVec {
        let n = self.ctx.n;
        let mut out = RepVec::new();
        for (w, c) in x.iter() {
            let Some(p) = w.letters().iter().position(|l| l.kind != LetterKind::Gen) else { continue };
            let k = w.letters()[p].index as usize;
            let (alpha, beta) = (w.sub(0, p), w.sub(p + 1, w.len()));
            for r in 0..n {
                let a = self.ctx.entry_word(&alpha, i, r);
                if a.is_zero() {
                    continue;
                }
                for s in 0..n {
                    let f = rp_mul(&a, &self.ctx.entry_word(&beta, s, j)).scale(c);
                    vec_add_scaled(&mut out, &sym(k, r, s), &f);
                }
            }
        }
        out
    }

    pub fn trace_l(&self, x: &LElement) -> RepVec {
        let mut out = RepVec::new();
        for i in 0..self.ctx.n {
            vec_add_scaled(&mut out, &self.entry_l(x, i, i), &rp_const(Q::one()));
        }
        out
    }

    /// `ρ(u_{k,ij})(g_{uv}) = ω(u_k)(g)'_{uj} ω(u_k)(g)''_{iv}`.
    pub fn anchor_on_var(&self, (k, i, j): (usize, u16, u16), v: Var) -> RepPoly {
        let g = Poly::basis(Word::letter(self.spec.algebra().gen_letter(v.gen as usize)));
        let t = self.spec.act(&self.spec.element(k), &g);
        self.ctx.tensor_entry(&t, i, j, v.i, v.j)
    }

    pub fn anchor(&self, x: &RepVec, f: &RepPoly) -> RepPoly {
        let mut out = RepPoly::zero();
        let vars = rp_vars(f);
        for (s, c) in x {
            for &v in &vars {
                let a = self.anchor_on_var(*s, v);
                if a.is_zero() {
                    continue;
                }
                out += &rp_mul(&rp_mul(c, &rp_deriv(f, v)), &a);
            }
        }
        out
    }

    /// `[u_{k,ij}, u_{l,uv}] = {{u_k,u_l}}'_{uj} {{u_k,u_l}}''_{iv}`.
    pub fn bracket_symbols(&self, (k, i, j): (usize, u16, u16), (l, u, v): (usize, u16, u16)) -> RepVec {
        let t = self.spec.engine().bracket(&self.spec.element(k), &self.spec.element(l));
        let parts = split(&t);
        let mut out = RepVec::new();
        for (s, c) in parts.left.iter() {
            let lv = self.entry_l(&Poly::basis(s[0].clone()), u, j);
            let f = self.ctx.entry_word(&s[1], i, v).scale(c);
            vec_add_scaled(&mut out, &lv, &f);
        }
        for (s, c) in parts.right.iter() {
            let lv = self.entry_l(&Poly::basis(s[1].clone()), i, v);
            let f = self.ctx.entry_word(&s[0], u, j).scale(c);
            vec_add_scaled(&mut out, &lv, &f);
        }
        out
    }

    /// `[fX, gY] = fg[X,Y] + f ρ(X)(g) Y - g ρ(Y)(f) X`, bilinearly.
    pub fn bracket(&self, x: &RepVec, y: &RepVec) -> RepVec {
        let mut out = RepVec::new();
        for (a, f) in x {
            for (b, g) in y {
                vec_add_scaled(&mut out, &self.bracket_symbols(*a, *b), &rp_mul(f, g));
            }
        }
        for (b, g) in y {
            let rg = self.anchor(x, g);
            vec_add_scaled(&mut out, &sym(b.0, b.1, b.2), &rg);
        }
        for (a, f) in x {
            let rf = self.anchor(y, f).scale(&-Q::one());
            vec_add_scaled(&mut out, &sym(a.0, a.1, a.2), &rf);
        }
        out
    }

    /// `λ_{k,ij}(u_{m,uv}) = δ_{km} δ_{iv} δ_{uj}`, evaluated on module elements.
    pub fn pairing(&self, (k, i, j): (usize, u16, u16), m: &RepVec) -> RepPoly {
        let mut out = RepPoly::zero();
        for (&(l, u, v), c) in m {
            if l == k && i == v && u == j {
                out += c;
            }
        }
        out
    }

    /// `λ_{ij}(m_{uv}) = λ(m)'_{iv} λ(m)''_{uj}` for an `L`-element `m`.
    pub fn rep_form_pairing(&self, k: usize, m: &LElement, i: u16, j: u16, u: u16, v: u16) -> RepPoly {
        let calc = Calculus::unchecked(self.spec);
        let lam = calc.dual_eval(k, m);
        self.ctx.tensor_entry(&lam, u, v, i, j)
    }

    /// `ψ_{ij}` evaluated on module elements, with the alternating
    /// convention `(θ_1 ∧ … ∧ θ_n)(X_1, …, X_n) = Σ_σ sgn σ Π θ_t(X_{σ(t)})`.
    pub fn eval_rep_form(&self, psi: &LForm, i: u16, j: u16, args: &[RepVec]) -> RepPoly {
        let n = self.ctx.n;
        let mut out = RepPoly::zero();
        for (w, c) in psi.iter() {
            if w.degree() as usize != args.len() {
                continue;
            }
            // paths through the matrix product: (row index, coefficient, dual symbols so far)
            let mut paths: Vec<(u16, RepPoly, Vec<(usize, u16, u16)>)> = vec![(i, rp_const(Q::one()), vec![])];
            for l in w.letters() {
                let mut next = vec![];
                for (p, f, lams) in &paths {
                    for q in 0..n {
                        if l.kind == LetterKind::Gen {
                            let g = rp_mul(f, &rp_var(Var { gen: l.index, i: *p, j: q }));
                            next.push((q, g, lams.clone()));
                        } else {
                            let mut ls = lams.clone();
                            ls.push((l.index as usize, *p, q));
                            next.push((q, f.clone(), ls));
                        }
                    }
                }
                paths = next;
            }
            for (p, f, lams) in paths {
                if p != j {
                    continue;
                }
                let mut total = RepPoly::zero();
                for s in Perm::all(lams.len()) {
                    let mut prod = rp_const(if s.sign_odd() { -Q::one() } else { Q::one() });
                    for (t, lam) in lams.iter().enumerate() {
                        prod = rp_mul(&prod, &self.pairing(*lam, &args[s.image(t)]));
                        if prod.is_zero() {
                            break;
                        }
                    }
                    total += &prod;
                }
                out += &rp_mul(&total, &f).scale(c);
            }
        }
        out
    }

    /// The Chevalley–Eilenberg differential of `ψ_{ij}` evaluated on `args`.
    pub fn ce_differential(&self, psi: &LForm, i: u16, j: u16, args: &[RepVec]) -> RepPoly {
        let m = args.len();
        let mut out = RepPoly::zero();
        for a in 0..m {
            let rest: Vec<RepVec> = args.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, x)| x.clone()).collect();
            let v = self.anchor(&args[a], &self.eval_rep_form(psi, i, j, &rest));
            out.add_scaled(&v, &crate::ncalg::sign(a as u32));
        }
        for a in 0..m {
            for b in a + 1..m {
                let mut rest = vec![self.bracket(&args[a], &args[b])];
                rest.extend(args.iter().enumerate().filter(|(c, _)| *c != a && *c != b).map(|(_, x)| x.clone()));
                let v = self.eval_rep_form(psi, i, j, &rest);
                out.add_scaled(&v, &crate::ncalg::sign((a + b) as u32));
            }
        }
        out
    }

    /// `d(ψ)_{ij} = d(ψ_{ij})` on symbol arguments.
    pub fn d_compat_check(&self, psi: &LForm, i: u16, j: u16, args: &[(usize, u16, u16)]) -> bool {
        let calc = Calculus::unchecked(self.spec);
        let vs: Vec<RepVec> = args.iter().map(|&(k, a, b)| sym(k, a, b)).collect();
        self.eval_rep_form(&calc.d(psi), i, j, &vs) == self.ce_differential(psi, i, j, &vs)
    }

    /// Jacobi and the anchor morphism property on symbol triples, the
    /// trace compatibility of the bracket on basis elements and
    /// `d(ψ)_{ij} = d(ψ_{ij})` on forms up to `max_form_degree`.
    pub fn check(&self, max_form_degree: usize, max_form_weight: usize) -> RepAlgebroidReport {
        let mut rep =
            RepAlgebroidReport { jacobi: true, anchor_morphism: true, trace_bracket: true, d_compat: true, witness: None };
        let syms = self.symbols();
        let vars = self.ctx.vars();
        for &a in &syms {
            for &b in &syms {
                let (xa, xb) = (sym(a.0, a.1, a.2), sym(b.0, b.1, b.2));
                let ab = self.bracket(&xa, &xb);
                for &v in &vars {
                    let f = rp_var(v);
                    let lhs = self.anchor(&ab, &f);
                    let rhs = &self.anchor(&xa, &self.anchor(&xb, &f)) - &self.anchor(&xb, &self.anchor(&xa, &f));
                    if rep.anchor_morphism && lhs != rhs {
                        rep.anchor_morphism = false;
                        rep.witness.get_or_insert(format!("anchor on {a:?}, {b:?}, {v:?}"));
                    }
                }
                for &c in &syms {
                    let xc = sym(c.0, c.1, c.2);
                    let mut r = self.bracket(&xa, &self.bracket(&xb, &xc));
                    vec_add_scaled(&mut r, &self.bracket(&xb, &self.bracket(&xc, &xa)), &rp_const(Q::one()));
                    vec_add_scaled(&mut r, &self.bracket(&xc, &self.bracket(&xa, &xb)), &rp_const(Q::one()));
                    if rep.jacobi && !r.is_empty() {
                        rep.jacobi = false;
                        rep.witness.get_or_insert(format!("jacobi on {a:?}, {b:?}, {c:?}"));
                    }
                }
            }
        }
        let m = self.spec.rank();
        for k in 0..m {
            for l in 0..m {
                let (d, e) = (self.spec.element(k), self.spec.element(l));
                let lhs = self.bracket(&self.trace_l(&d), &self.trace_l(&e));
                let assoc = self.spec.engine().bracket(&d, &e).mult();
                if rep.trace_bracket && lhs != self.trace_l(&assoc) {
                    rep.trace_bracket = false;
                    rep.witness.get_or_insert(format!("trace bracket on basis ({k}, {l})"));
                }
            }
        }
        let calc = Calculus::unchecked(self.spec);
        let n = self.ctx.n;
        let mut arg_sets: Vec<Vec<(usize, u16, u16)>> = vec![vec![]];
        for deg in 0..=max_form_degree {
            arg_sets = arg_sets.iter().flat_map(|a| syms.iter().map(move |&s| [a.clone(), vec![s]].concat())).collect();
            for w in calc.monomials(deg, max_form_weight) {
                let psi = Poly::basis(w.clone());
                for i in 0..n {
                    for j in 0..n {
                        for args in &arg_sets {
                            if rep.d_compat && !self.d_compat_check(&psi, i, j, args) {
                                rep.d_compat = false;
                                rep.witness.get_or_insert(format!("d-compatibility on {w:?} entry ({i},{j}) at {args:?}"));
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}

/// Trace of a form: `Σ_i ψ_{ii}`, evaluated on symbol arguments.
pub fn trace_form(ra: &RepAlgebroid, psi: &LForm, args: &[RepVec]) -> RepPoly {
    let mut out = RepPoly::zero();
    for i in 0..ra.context().size() {
        out += &ra.eval_rep_form(psi, i, i, args);
    }
    out
}

pub fn symbol(k: usize, i: u16, j: u16) -> RepVec {
    sym(k, i, j)
}

pub fn display_var(alg: &AlgebraSpec, v: Var) -> String {
    format!("{}_{}{}", alg.gen_name(v.gen as usize), v.i + 1, v.j + 1)
}

pub fn display_poly(alg: &AlgebraSpec, p: &RepPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = vec![];
    for (m, c) in p.iter() {
        let mono: Vec<String> = m
            .iter()
            .map(|(v, e)| if *e == 1 { display_var(alg, *v) } else { format!("{}^{}", display_var(alg, *v), e) })
            .collect();
        let body = mono.join("*");
        parts.push(match (body.is_empty(), c.is_one()) {
            (true, _) => format!("{c}"),
            (false, true) => body,
            (false, false) => format!("{c}*{body}"),
        });
    }
    parts.join(" + ")
}
