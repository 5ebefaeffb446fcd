//! Differential calculus of a double Lie algebroid: forms in the dual
//! letters `λ_k`, evaluation, `d`, contraction, Lie derivative, their
//! reduced versions and finite windows of the DR complex.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::algebroid::{split, AlgebroidSpec, LElement};
use crate::dbracket::DoubleBracketSpec;
use crate::error::{DpcError, Result};
use crate::linalg::{self, SparseRow};
use crate::ncalg::{
    cyclic_reduce, cyclic_reduce_poly, cyclic_to_poly, sign, CyclicPoly, CyclicWord, Letter, LetterKind, Perm, Poly,
    Slots, Tensor, Word, Q,
};
use crate::polyvect::{PolyVector, Schouten};

/// Forms: polynomials in algebra generators and dual letters.
pub type LForm = Poly;
pub type DRClass = CyclicPoly;

/// Dimensions of one `(degree, weight)` window of the DR complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub degree: usize,
    pub weight: usize,
    pub dim: usize,
    pub kernel: usize,
    pub image: usize,
    pub cohomology: usize,
}

#[derive(Clone, Debug)]
pub struct Calculus<'a> {
    spec: &'a AlgebroidSpec,
    d_gen: Vec<LForm>,
    d_form: Vec<LForm>,
}

impl<'a> Calculus<'a> {
    /// Refuses specs failing `verify`, since `d² = 0` rests on Jacobi.
    pub fn new(spec: &'a AlgebroidSpec) -> Result<Self> {
        let rep = spec.verify(1);
        if !rep.passed() {
            return Err(DpcError::Precondition(format!("algebroid fails verification: {:?}", rep.witness)));
        }
        Ok(Self::unchecked(spec))
    }

    pub fn unchecked(spec: &'a AlgebroidSpec) -> Self {
        let mut c = Calculus { spec, d_gen: vec![], d_form: vec![] };
        c.d_gen = (0..spec.algebra().gen_count()).map(|g| c.d_generator(g)).collect();
        c.d_form = (0..spec.rank()).map(|k| c.d_dual(k)).collect();
        c
    }

    pub fn spec(&self) -> &AlgebroidSpec {
        self.spec
    }

    pub fn form_letter(&self, k: usize) -> Letter {
        let b = &self.spec.basis()[k];
        Letter::new(LetterKind::Form, k as u16, b.tgt, b.src)
    }

    pub fn lambda(&self, k: usize) -> LForm {
        Poly::basis(Word::letter(self.form_letter(k)))
    }

    fn word(w: &Word) -> Poly {
        Poly::basis(w.clone())
    }

    /// `d(x) = Σ_k Σ c p λ_k q` over the terms `p ⊗ q` of `ω(u_k)(x)`.
    fn d_generator(&self, g: usize) -> LForm {
        let x = Self::word(&Word::letter(self.spec.algebra().gen_letter(g)));
        let mut out = Poly::zero();
        for k in 0..self.spec.rank() {
            let lam = Word::letter(self.form_letter(k));
            for (s, c) in self.spec.act(&self.spec.element(k), &x).iter() {
                if let Some(w) = s[0].concat(&lam).and_then(|w| w.concat(&s[1])) {
                    out.add_term(w, c.clone());
                }
            }
        }
        out
    }

    /// `d(λ_k) = -Σ_{i,j} Σ c β λ_i l'' λ_j α` over the terms
    /// `(α u_k β) ⊗ l''` of `{{u_i, u_j}}_l`.
    fn d_dual(&self, k: usize) -> LForm {
        let m = self.spec.rank();
        let mut out = Poly::zero();
        for i in 0..m {
            for j in 0..m {
                let left = split(&self.spec.engine().bracket(&self.spec.element(i), &self.spec.element(j))).left;
                let (li, lj) = (Word::letter(self.form_letter(i)), Word::letter(self.form_letter(j)));
                for (s, c) in left.iter() {
                    let x = &s[0];
                    let Some(p) = x.letters().iter().position(|l| l.kind == LetterKind::Vector) else { continue };
                    if x.letters()[p].index as usize != k {
                        continue;
                    }
                    let (alpha, beta) = (x.sub(0, p), x.sub(p + 1, x.len()));
                    let w = beta.concat(&li).and_then(|w| w.concat(&s[1])).and_then(|w| w.concat(&lj)).and_then(|w| w.concat(&alpha));
                    if let Some(w) = w {
                        out.add_term(w, -c);
                    }
                }
            }
        }
        out
    }

    /// `λ_k(m)`: `λ_k(α u_k β) = β ⊗ α`.
    pub fn dual_eval(&self, k: usize, m: &LElement) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in m.iter() {
            let Some(p) = w.letters().iter().position(|l| l.kind == LetterKind::Vector) else { continue };
            if w.letters()[p].index as usize == k {
                out.add_slots(smallvec::smallvec![w.sub(p + 1, w.len()), w.sub(0, p)], c.clone());
            }
        }
        out
    }

    /// `Ψ(a_0 λ_1 a_1 … λ_n a_n)(D_1, …, D_n)` with values in `A^{⊗ n+1}`.
    pub fn eval_form(&self, psi: &LForm, args: &[LElement]) -> Result<Tensor> {
        let n = args.len();
        let mut out = Tensor::zero(n + 1);
        for (w, c) in psi.iter() {
            if w.degree() as usize != n {
                return Err(DpcError::Arity { expected: w.degree() as usize, found: n });
            }
            let mut t = Tensor::pure(smallvec::smallvec![Word::trivial(w.src())], Q::one());
            let mut i = 0;
            for l in w.letters() {
                let last = t.arity() - 1;
                if l.kind == LetterKind::Form {
                    let v = self.dual_eval(l.index as usize, &args[i]);
                    i += 1;
                    t = t.expand_slot(last, 2, |s| {
                        let mut r = Tensor::zero(2);
                        for (vs, vc) in v.iter() {
                            if let Some(x) = s[last].concat(&vs[0]) {
                                r.add_slots(smallvec::smallvec![x, vs[1].clone()], vc.clone());
                            }
                        }
                        r
                    });
                } else {
                    t = t.slot_right(last, &Word::letter(*l));
                }
                if t.is_zero() {
                    break;
                }
            }
            out.add_scaled(&t, c);
        }
        Ok(out)
    }

    /// `Φ(ψ)`: the first and last slots of `Ψ(ψ)` are joined.
    pub fn phi(&self, psi: &LForm, args: &[LElement]) -> Result<Tensor> {
        let t = self.eval_form(psi, args)?;
        let n = args.len();
        let mut out = Tensor::zero(n.max(1));
        for (s, c) in t.iter() {
            let Some(first) = s[n].concat(&s[0]) else { continue };
            let mut slots = Slots::new();
            slots.push(first);
            slots.extend(s[1..n].iter().cloned());
            out.add_slots(slots, c.clone());
        }
        Ok(out)
    }

    /// `μ(ψ) = Σ_i (-1)^{(n-1)i} τ^i ∘ Φ(ψ) ∘ τ^{-i}`.
    pub fn mu_form(&self, psi: &LForm, args: &[LElement]) -> Result<Tensor> {
        let n = args.len();
        if n == 0 {
            return Err(DpcError::Arity { expected: 1, found: 0 });
        }
        let rot = Perm::rotation(n);
        let mut out = Tensor::zero(n);
        for i in 0..n {
            let rotated: Vec<LElement> = (0..n).map(|k| args[(k + i) % n].clone()).collect();
            let t = self.phi(psi, &rotated)?.permute(&rot.pow(i));
            out.add_scaled(&t, &sign(((n - 1) * i) as u32));
        }
        Ok(out)
    }

    fn d_letter(&self, l: &Letter) -> &LForm {
        match l.kind {
            LetterKind::Gen => &self.d_gen[l.index as usize],
            _ => &self.d_form[l.index as usize],
        }
    }

    pub fn d_word(&self, w: &Word) -> LForm {
        let mut out = Poly::zero();
        for p in 0..w.len() {
            let dl = self.d_letter(&w.letters()[p]);
            if dl.is_zero() {
                continue;
            }
            let pre = Self::word(&w.sub(0, p));
            let post = Self::word(&w.sub(p + 1, w.len()));
            let t = crate::ncalg::poly::mul(&crate::ncalg::poly::mul(&pre, dl), &post);
            out.add_scaled(&t, &sign(w.prefix_degree(p)));
        }
        out
    }

    /// The degree-one derivation `d_L`.
    pub fn d(&self, psi: &LForm) -> LForm {
        let mut out = Poly::zero();
        for (w, c) in psi.iter() {
            out.add_scaled(&self.d_word(w), c);
        }
        out
    }

    /// `d(x_1 ⊗ … ⊗ x_n) = Σ (-1)^{|x_1|+…+|x_{i-1}|} … ⊗ d x_i ⊗ …`.
    pub fn d_tensor(&self, t: &Tensor) -> Tensor {
        let n = t.arity();
        let mut out = Tensor::zero(n);
        for i in 0..n {
            out.add(&t.expand_slot(i, 1, |s| {
                let pre: u32 = s[..i].iter().map(Word::degree).sum();
                Tensor::from_poly(&self.d_word(&s[i])).scale(&sign(pre))
            }));
        }
        out
    }

    /// The odd double derivation `i_D`, `i_D(λ) = λ(D)`.
    pub fn contract(&self, dd: &LElement, psi: &LForm) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in psi.iter() {
            for p in 0..w.len() {
                let l = w.letters()[p];
                if l.kind != LetterKind::Form {
                    continue;
                }
                let v = self.dual_eval(l.index as usize, dd);
                let t = v.outer_left(&w.sub(0, p)).outer_right(&w.sub(p + 1, w.len()));
                out.add_scaled(&t, &(c * sign(w.prefix_degree(p))));
            }
        }
        out
    }

    /// `i_D` on tensors, slotwise with Koszul signs; arity grows by one.
    pub fn contract_tensor(&self, dd: &LElement, t: &Tensor) -> Tensor {
        let n = t.arity();
        let mut out = Tensor::zero(n + 1);
        for i in 0..n {
            out.add(&t.expand_slot(i, 2, |s| {
                let pre: u32 = s[..i].iter().map(Word::degree).sum();
                self.contract(dd, &Self::word(&s[i])).scale(&sign(pre))
            }));
        }
        out
    }

    /// `ι_D(ψ) = (i_D ψ)^∘`.
    pub fn iota(&self, dd: &LElement, psi: &LForm) -> LForm {
        self.contract(dd, psi).circ()
    }

    fn lie_letter(&self, dd: &LElement, l: &Letter) -> Tensor {
        let w = Self::word(&Word::letter(*l));
        match l.kind {
            LetterKind::Gen => self.spec.act(dd, &w),
            _ => self.d_tensor(&self.contract(dd, &w)).plus(&self.contract(dd, &self.d(&w))),
        }
    }

    /// The even double derivation `L_D`, fixed on generators by Cartan.
    pub fn lie(&self, dd: &LElement, psi: &LForm) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in psi.iter() {
            for p in 0..w.len() {
                let v = self.lie_letter(dd, &w.letters()[p]);
                out.add_scaled(&v.outer_left(&w.sub(0, p)).outer_right(&w.sub(p + 1, w.len())), c);
            }
        }
        out
    }

    /// `L_D` on tensors, slotwise; arity grows by one.
    pub fn lie_tensor(&self, dd: &LElement, t: &Tensor) -> Tensor {
        let n = t.arity();
        let mut out = Tensor::zero(n + 1);
        for i in 0..n {
            out.add(&t.expand_slot(i, 2, |s| self.lie(dd, &Self::word(&s[i]))));
        }
        out
    }

    /// `𝓛_D(ψ) = (L_D ψ)^∘`.
    pub fn lie_red(&self, dd: &LElement, psi: &LForm) -> LForm {
        self.lie(dd, psi).circ()
    }

    /// `d i_D + i_D d - L_D` on `ψ`.
    pub fn cartan_residual(&self, dd: &LElement, psi: &LForm) -> Tensor {
        let mut r = self.d_tensor(&self.contract(dd, psi));
        r.add(&self.contract(dd, &self.d(psi)));
        r.sub(&self.lie(dd, psi));
        r
    }

    /// `d ι_D + ι_D d - 𝓛_D` on `ψ`.
    pub fn reduced_cartan_residual(&self, dd: &LElement, psi: &LForm) -> LForm {
        let mut r = self.d(&self.iota(dd, psi));
        r += &self.iota(dd, &self.d(psi));
        r -= &self.lie_red(dd, psi);
        r
    }

    /// The paper's explicit display of `L_D(λ)(Δ)` as an element of `A^{⊗3}`.
    pub fn lie_display(&self, dd: &LElement, k: usize, delta: &LElement) -> Tensor {
        let lam = self.lambda(k);
        let ev = |m: &LElement| self.eval_form(&lam, std::slice::from_ref(m)).expect("one argument");
        let v = ev(delta);
        let mut out = Tensor::zero(3);
        out.add(&v.expand_slot(1, 2, |s| self.spec.act(dd, &Self::word(&s[1]))));
        out.add(&v.expand_slot(0, 2, |s| self.spec.act(dd, &Self::word(&s[0]))));
        let br = split(&self.spec.engine().bracket(dd, delta));
        for (s, c) in br.right.iter() {
            let t = ev(&Self::word(&s[1])).tensor(&Tensor::from_poly(&Self::word(&s[0])));
            out.add_scaled(&t.permute(&Perm::cycle(3, &[2, 3])), &-c);
        }
        for (s, c) in br.left.iter() {
            let t = ev(&Self::word(&s[0])).tensor(&Tensor::from_poly(&Self::word(&s[1])));
            out.add_scaled(&t.permute(&Perm::cycle(3, &[2, 3])), &-c);
        }
        out
    }

    /// Evaluates `L_D(λ_k)` at `Δ` by feeding `Δ` to the form slot.
    pub fn lie_eval(&self, dd: &LElement, k: usize, delta: &LElement) -> Tensor {
        let l = self.lie(dd, &self.lambda(k));
        let mut out = Tensor::zero(3);
        for (s, c) in l.iter() {
            let (a, b) = (&s[0], &s[1]);
            let t = if a.degree() == 1 {
                self.eval_form(&Self::word(a), std::slice::from_ref(delta)).unwrap().tensor(&Tensor::from_poly(&Self::word(b)))
            } else {
                Tensor::from_poly(&Self::word(a)).tensor(&self.eval_form(&Self::word(b), std::slice::from_ref(delta)).unwrap())
            };
            out.add_scaled(&t, c);
        }
        out
    }

    /// The pointwise formula for `d ψ` on `D_1, …, D_{n+1}`.
    pub fn d_hom_side(&self, psi: &LForm, args: &[LElement]) -> Result<Tensor> {
        let n1 = args.len();
        if n1 == 0 {
            return Err(DpcError::Arity { expected: 1, found: 0 });
        }
        let mut out = Tensor::zero(n1 + 1);
        for i in 0..n1 {
            let rest: Vec<LElement> = args.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a.clone()).collect();
            let v = self.eval_form(psi, &rest)?;
            let t = v.expand_slot(i, 2, |s| self.spec.act(&args[i], &Self::word(&s[i])));
            out.add_scaled(&t, &sign(i as u32));
        }
        for i in 0..n1 - 1 {
            let left = split(&self.spec.engine().bracket(&args[i], &args[i + 1])).left;
            for (s, c) in left.iter() {
                let mut inner: Vec<LElement> = args[..i].to_vec();
                inner.push(Self::word(&s[0]));
                inner.extend(args[i + 2..].iter().cloned());
                let v = self.eval_form(psi, &inner)?;
                // the inserted slot sits between the two slots fed by the bracket argument
                let t = v.expand_slot(i + 1, 2, |x| Tensor::pure2(s[1].clone(), x[i + 1].clone(), Q::one()));
                out.add_scaled(&t, &(c * sign(i as u32 + 1)));
            }
        }
        Ok(out)
    }

    /// `Ψ(dψ)(args)` against the pointwise formula.
    pub fn d_hom_check(&self, psi: &LForm, args: &[LElement]) -> Result<bool> {
        Ok(self.eval_form(&self.d(psi), args)? == self.d_hom_side(psi, args)?)
    }

    pub fn dr_reduce(&self, psi: &LForm) -> DRClass {
        cyclic_reduce_poly(psi)
    }

    pub fn dr_d(&self, c: &DRClass) -> DRClass {
        cyclic_reduce_poly(&self.d(&cyclic_to_poly(c)))
    }

    /// Weight change of `d`, or an error when the tables are not
    /// weight-homogeneous.
    pub fn weight_shift(&self) -> Result<i64> {
        let mut shifts = BTreeSet::new();
        for p in &self.d_gen {
            shifts.extend(p.keys().map(|w| w.weight() as i64 - 1));
        }
        for p in &self.d_form {
            shifts.extend(p.keys().map(|w| w.weight() as i64));
        }
        match shifts.len() {
            0 => Ok(0),
            1 => Ok(*shifts.iter().next().unwrap()),
            _ => Err(DpcError::Precondition(format!(
                "d is not weight-homogeneous (weight shifts {:?})",
                shifts
            ))),
        }
    }

    /// Monomial forms of form degree `n` with at most `max_weight`
    /// generator letters.
    pub fn monomials(&self, n: usize, max_weight: usize) -> Vec<Word> {
        let alg = self.spec.algebra();
        let mut letters = alg.gen_letters();
        letters.extend((0..self.spec.rank()).map(|k| self.form_letter(k)));
        let mut out = vec![];
        let mut frontier: Vec<Word> = (0..alg.vertices()).map(Word::trivial).collect();
        if n == 0 {
            out.extend(frontier.iter().cloned());
        }
        for _ in 0..n + max_weight {
            let mut next = vec![];
            for x in &frontier {
                for &l in &letters {
                    let Some(y) = x.concat(&Word::letter(l)) else { continue };
                    if y.count_kind(LetterKind::Form) > n || y.weight() as usize > max_weight {
                        continue;
                    }
                    if y.count_kind(LetterKind::Form) == n {
                        out.push(y.clone());
                    }
                    next.push(y);
                }
            }
            frontier = next;
        }
        out
    }

    /// Closed monomial forms of form degree `n` and weight `w`, up to rotation.
    pub fn dr_basis(&self, n: usize, w: usize) -> Vec<CyclicWord> {
        let mut out = BTreeSet::new();
        for y in self.monomials(n, w) {
            if y.weight() as usize == w && y.is_closed() {
                if let Some((c, _)) = cyclic_reduce(&y) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    fn d_matrix(&self, src: &[CyclicWord], tgt: &[CyclicWord]) -> Result<Vec<SparseRow>> {
        let index: BTreeMap<&CyclicWord, usize> = tgt.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut rows = vec![];
        for c in src {
            let img = cyclic_reduce_poly(&self.d_word(c.word()));
            let mut row = SparseRow::new();
            for (cw, q) in img.iter() {
                let Some(&j) = index.get(cw) else {
                    return Err(DpcError::Precondition("d leaves the expected weight window".into()));
                };
                row.insert(j, q.clone());
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// Exact dimensions of `H^n` of the DR complex in weight `w`.
    pub fn cohomology(&self, n: usize, w: usize) -> Result<Window> {
        let s = self.weight_shift()?;
        let here = self.dr_basis(n, w);
        let up_w = w as i64 + s;
        let rank_out = if up_w < 0 {
            0
        } else {
            let next = self.dr_basis(n + 1, up_w as usize);
            linalg::rank(&self.d_matrix(&here, &next)?, next.len())
        };
        let down_w = w as i64 - s;
        let image = if n == 0 || down_w < 0 {
            0
        } else {
            let prev = self.dr_basis(n - 1, down_w as usize);
            linalg::rank(&self.d_matrix(&prev, &here)?, here.len())
        };
        let kernel = here.len() - rank_out;
        Ok(Window { degree: n, weight: w, dim: here.len(), kernel, image, cohomology: kernel - image })
    }
}

/// Degree-zero comparison on a cotangent algebroid: `d(a)(df)` against
/// `-{{f, {P, a}}}` for a bivector `P` realising the double bracket.
pub fn poisson_compare(spec: &AlgebroidSpec, p: &PolyVector, a: &Poly, f: &Poly) -> Result<(bool, Tensor, Tensor)> {
    let calc = Calculus::unchecked(spec);
    let df = crate::algebroid::formal_d(f);
    let lhs = calc.eval_form(&calc.d(a), &[df])?;
    let sch: &Schouten = spec.schouten();
    let rhs = sch.bracket(f, &sch.assoc(p, a)).neg();
    Ok((lhs == rhs, lhs, rhs))
}

/// True when `db` is the double bracket `μ(P)` on generator pairs.
pub fn realizes(db: &DoubleBracketSpec, p: &PolyVector) -> bool {
    let alg = db.algebra();
    let n = alg.gen_count();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (x, y) = (
                Poly::basis(Word::letter(alg.gen_letter(i))),
                Poly::basis(Word::letter(alg.gen_letter(j))),
            );
            crate::polyvect::mu_n_bracket(p, &[x.clone(), y.clone()]).map(|t| t == db.eval(&x, &y)).unwrap_or(false)
        })
    })
}
