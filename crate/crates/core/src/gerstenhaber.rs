//! Graded double brackets of degree `d` on free (path) tensor algebras,
//! determined by their values on pairs of letters, and the axiom suite of
//! double Gerstenhaber algebras of degree `d`.

use std::collections::HashMap;

use crate::ncalg::{sign, Letter, Perm, Poly, Tensor, Word};

fn parity(x: i64) -> u32 {
    x.rem_euclid(2) as u32
}

/// A degree-`shift` double bracket given on letters, extended by the
/// outer Leibniz rule in the second argument and graded antisymmetry.
#[derive(Clone, Debug)]
pub struct GradedBracket {
    shift: i32,
    table: HashMap<(Letter, Letter), Tensor>,
}

impl GradedBracket {
    pub fn new(shift: i32) -> Self {
        GradedBracket { shift, table: HashMap::new() }
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn set(&mut self, a: Letter, b: Letter, value: Tensor) {
        if value.is_zero() {
            self.table.remove(&(a, b));
        } else {
            self.table.insert((a, b), value);
        }
    }

    pub fn letter_value(&self, a: Letter, b: Letter) -> Tensor {
        self.table.get(&(a, b)).cloned().unwrap_or_else(|| Tensor::zero(2))
    }

    /// `|w| + d` for a word.
    pub fn sdeg(&self, w: &Word) -> i64 {
        w.degree() as i64 + self.shift as i64
    }

    /// Sets `{{a,b}}` and fills `{{b,a}}` by graded antisymmetry.
    pub fn set_antisymmetric(&mut self, a: Letter, b: Letter, value: Tensor) {
        let wa = Word::letter(a);
        let wb = Word::letter(b);
        let e = parity(self.sdeg(&wa) * self.sdeg(&wb)) + 1;
        let flipped = value.permute_graded(&Perm::cycle(2, &[1, 2])).scale(&sign(e));
        self.set(b, a, flipped);
        self.set(a, b, value);
    }

    /// `{{a, y}}` for a word `a` and a single letter `y`.
    fn word_letter(&self, a: &Word, y: Letter) -> Tensor {
        if a.len() == 1 {
            return self.letter_value(a.letters()[0], y);
        }
        let wy = Word::letter(y);
        let sy = self.sdeg(&wy);
        let mut inner = Tensor::zero(2);
        for p in 0..a.len() {
            let v = self.letter_value(y, a.letters()[p]);
            if v.is_zero() {
                continue;
            }
            let e = parity(sy * a.prefix_degree(p) as i64);
            let t = v.outer_left(&a.sub(0, p)).outer_right(&a.sub(p + 1, a.len()));
            inner.add_scaled(&t, &sign(e));
        }
        let e = parity(self.sdeg(a) * sy) + 1;
        inner.permute_graded(&Perm::cycle(2, &[1, 2])).scale(&sign(e))
    }

    pub fn words(&self, a: &Word, b: &Word) -> Tensor {
        let mut out = Tensor::zero(2);
        if a.is_trivial() || b.is_trivial() {
            return out;
        }
        let sa = self.sdeg(a);
        for q in 0..b.len() {
            let v = self.word_letter(a, b.letters()[q]);
            if v.is_zero() {
                continue;
            }
            let e = parity(sa * b.prefix_degree(q) as i64);
            let t = v.outer_left(&b.sub(0, q)).outer_right(&b.sub(q + 1, b.len()));
            out.add_scaled(&t, &sign(e));
        }
        out
    }

    pub fn bracket(&self, p: &Poly, q: &Poly) -> Tensor {
        let mut out = Tensor::zero(2);
        for (a, ca) in p.iter() {
            for (b, cb) in q.iter() {
                out.add_scaled(&self.words(a, b), &(ca * cb));
            }
        }
        out
    }

    /// The associated bracket `{a, b} = m({{a, b}})`.
    pub fn assoc(&self, p: &Poly, q: &Poly) -> Poly {
        self.bracket(p, q).mult()
    }

    /// `{{a, t}}_L = {{a, t_1}} ⊗ t_2 ⊗ … ⊗ t_n`.
    pub fn left(&self, a: &Poly, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero(t.arity() + 1);
        for (w, c) in a.iter() {
            out.add_scaled(&t.expand_slot(0, 2, |s| self.words(w, &s[0])), c);
        }
        out
    }

    /// `{{a, t}}_R = t_1 ⊗ … ⊗ {{a, t_n}}` with the Koszul sign of `a` passing
    /// the earlier slots.
    pub fn right(&self, a: &Poly, t: &Tensor) -> Tensor {
        let n = t.arity();
        let mut out = Tensor::zero(n + 1);
        for (w, c) in a.iter() {
            let sa = self.sdeg(w);
            out.add_scaled(
                &t.expand_slot(n - 1, 2, |s| {
                    let pre: u32 = s[..n - 1].iter().map(Word::degree).sum();
                    self.words(w, &s[n - 1]).scale(&sign(parity(sa * pre as i64)))
                }),
                c,
            );
        }
        out
    }

    /// `{a, -}` applied as a graded derivation to every slot of a tensor.
    pub fn assoc_on_tensor(&self, a: &Poly, t: &Tensor) -> Tensor {
        let n = t.arity();
        let mut out = Tensor::zero(n);
        for (w, c) in a.iter() {
            let sa = self.sdeg(w);
            for i in 0..n {
                let part = t.expand_slot(i, 1, |s| {
                    let pre: u32 = s[..i].iter().map(Word::degree).sum();
                    let b = Poly::basis(s[i].clone());
                    Tensor::from_poly(&self.assoc(&Poly::basis(w.clone()), &b)).scale(&sign(parity(sa * pre as i64)))
                });
                out.add_scaled(&part, c);
            }
        }
        out
    }
}

/// Residuals of the defining identities; each is zero when the identity holds.
pub struct Axioms<'a> {
    pub br: &'a GradedBracket,
}

impl<'a> Axioms<'a> {
    pub fn new(br: &'a GradedBracket) -> Self {
        Axioms { br }
    }

    fn d(&self) -> i64 {
        self.br.shift as i64
    }

    fn p(w: &Word) -> Poly {
        Poly::basis(w.clone())
    }

    /// 1) `{{α, βγ}} = (-1)^{(|α|+d)|β|} β {{α,γ}} + {{α,β}} γ`.
    pub fn leibniz(&self, a: &Word, b: &Word, c: &Word) -> Tensor {
        let Some(bc) = b.concat(c) else { return Tensor::zero(2) };
        let mut r = self.br.words(a, &bc);
        let e = parity(self.br.sdeg(a) * b.degree() as i64);
        r.add_scaled(&self.br.words(a, c).outer_left(b), &-sign(e));
        r.sub(&self.br.words(a, b).outer_right(c));
        r
    }

    /// 1') `{{βγ, α}} = β * {{γ, α}} + (-1)^{(|α|+d)|γ|} {{β, α}} * γ`
    /// (inner actions), the form forced by 1) and 2).
    pub fn leibniz_first(&self, b: &Word, c: &Word, a: &Word) -> Tensor {
        let Some(bc) = b.concat(c) else { return Tensor::zero(2) };
        let mut r = self.br.words(&bc, a);
        r.sub(&self.br.words(c, a).inner_left(b));
        let e = parity(self.br.sdeg(a) * c.degree() as i64);
        r.add_scaled(&self.br.words(b, a).inner_right(c), &-sign(e));
        r
    }

    /// 2) `{{α,β}} + (-1)^{(|α|+d)(|β|+d)} σ_(12) {{β,α}}`.
    pub fn antisymmetry(&self, a: &Word, b: &Word) -> Tensor {
        let mut r = self.br.words(a, b);
        let e = parity(self.br.sdeg(a) * self.br.sdeg(b));
        r.add_scaled(&self.br.words(b, a).permute_graded(&Perm::cycle(2, &[1, 2])), &sign(e));
        r
    }

    /// 3) the graded double Jacobi identity.
    pub fn jacobi(&self, a: &Word, b: &Word, c: &Word) -> Tensor {
        let (pa, pb, pc) = (Self::p(a), Self::p(b), Self::p(c));
        let (da, db, dc) = (a.degree() as i64, b.degree() as i64, c.degree() as i64);
        let d = self.d();
        let mut r = self.br.left(&pa, &self.br.words(b, c));
        let t2 = self.br.left(&pb, &self.br.words(c, a)).permute_graded(&Perm::cycle(3, &[1, 2, 3]));
        r.add_scaled(&t2, &sign(parity((da + d) * (db + dc))));
        let t3 = self.br.left(&pc, &self.br.words(a, b)).permute_graded(&Perm::cycle(3, &[1, 3, 2]));
        r.add_scaled(&t3, &sign(parity((dc + d) * (da + db))));
        r
    }

    /// `{αβ - (-1)^{|α||β|} βα, γ}`.
    pub fn commutator_kills(&self, a: &Word, b: &Word, c: &Word) -> Poly {
        let comm = crate::ncalg::poly::graded_commutator(a, b);
        self.br.assoc(&comm, &Self::p(c))
    }

    /// `{α,β} + (-1)^{(|α|+d)(|β|+d)} {β,α}`, to be reduced modulo commutators.
    pub fn assoc_antisymmetry(&self, a: &Word, b: &Word) -> Poly {
        let mut r = self.br.assoc(&Self::p(a), &Self::p(b));
        let e = parity(self.br.sdeg(a) * self.br.sdeg(b));
        r.add_scaled(&self.br.assoc(&Self::p(b), &Self::p(a)), &sign(e));
        r
    }

    /// `{α, {{β,γ}}} - {{{α,β}, γ}} - (-1)^{(|α|+d)(|β|+d)} {{β, {α,γ}}}`.
    pub fn loday(&self, a: &Word, b: &Word, c: &Word) -> Tensor {
        let (pa, pb, pc) = (Self::p(a), Self::p(b), Self::p(c));
        let mut r = self.br.assoc_on_tensor(&pa, &self.br.words(b, c));
        r.sub(&self.br.bracket(&self.br.assoc(&pa, &pb), &pc));
        let e = parity(self.br.sdeg(a) * self.br.sdeg(b));
        r.add_scaled(&self.br.bracket(&pb, &self.br.assoc(&pa, &pc)), &-sign(e));
        r
    }

    /// Runs every identity on all triples from `words`; returns the first
    /// failing identity name and the triple.
    pub fn check_all(&self, words: &[Word], max_total_degree: u32) -> Option<(String, Vec<Word>)> {
        for a in words {
            for b in words {
                if !self.antisymmetry(a, b).is_zero() {
                    return Some(("antisymmetry".into(), vec![a.clone(), b.clone()]));
                }
                if !crate::ncalg::cyclic_reduce_poly(&self.assoc_antisymmetry(a, b)).is_zero() {
                    return Some(("antisymmetry mod commutators".into(), vec![a.clone(), b.clone()]));
                }
                for c in words {
                    if a.degree() + b.degree() + c.degree() > max_total_degree {
                        continue;
                    }
                    let checks: [(&str, bool); 5] = [
                        ("leibniz", self.leibniz(a, b, c).is_zero()),
                        ("leibniz'", self.leibniz_first(b, c, a).is_zero()),
                        ("jacobi", self.jacobi(a, b, c).is_zero()),
                        ("commutator", self.commutator_kills(a, b, c).is_zero()),
                        ("loday", self.loday(a, b, c).is_zero()),
                    ];
                    for (name, ok) in checks {
                        if !ok {
                            return Some((name.into(), vec![a.clone(), b.clone(), c.clone()]));
                        }
                    }
                }
            }
        }
        None
    }
}
