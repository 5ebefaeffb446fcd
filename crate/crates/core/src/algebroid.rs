//! Double Lie algebroids presented on a free `A^e`-basis, realised inside
//! the tensor algebra `T_A(L)` with its degree `-1` bracket.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dbracket::{DoubleBracketSpec, DoubleLieAlgebraSpec};
use crate::error::{DpcError, Result};
use crate::gerstenhaber::{Axioms, GradedBracket};
use crate::ncalg::{poly, AlgebraSpec, BaseRing, Letter, LetterKind, LinComb, Perm, Poly, Slots, Tensor, Word, Q};
use crate::polyvect::{self, PolyVector, Schouten};

/// Elements of `L`: sums of `a · u_k · b`.
pub type LElement = Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub src: u16,
    pub tgt: u16,
}

/// `{{X, Y}}` split into its `L ⊗ A` and `A ⊗ L` components.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedBracketValue {
    pub left: Tensor,
    pub right: Tensor,
}

impl MixedBracketValue {
    pub fn total(&self) -> Tensor {
        self.left.plus(&self.right)
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebroidKind {
    Custom,
    Der,
    Assoc,
    DoubleLie,
    Cotangent,
    TildeOmega,
}

#[derive(Clone, Debug)]
pub struct AlgebroidSpec {
    alg: AlgebraSpec,
    basis: Vec<BasisElem>,
    anchor: Vec<PolyVector>,
    table: BTreeMap<(usize, usize), Tensor>,
    kind: AlgebroidKind,
    sch: Schouten,
    br: GradedBracket,
}

/// Pass/fail record of `verify`, with the first witness found.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidReport {
    pub skew: bool,
    pub anchor_morphism: bool,
    pub jacobi: bool,
    pub jacobi_projected: bool,
    pub spot_check: bool,
    pub witness: Option<(String, Vec<String>)>,
}

impl AlgebroidReport {
    pub fn passed(&self) -> bool {
        self.skew && self.anchor_morphism && self.jacobi && self.jacobi_projected && self.spot_check
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub left_associative: bool,
    pub right_associative: bool,
    pub opposite_mod_commutators: bool,
    pub witness: Option<Vec<usize>>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.left_associative && self.right_associative && self.opposite_mod_commutators
    }
}

fn flip(t: &Tensor) -> Tensor {
    t.permute(&Perm::cycle(2, &[1, 2]))
}

fn slot_degrees(s: &Slots) -> (u32, u32) {
    (s[0].degree(), s[1].degree())
}

impl AlgebroidSpec {
    /// Builds the algebroid from basis data, anchors `ω(u_k)` (degree-one
    /// polyvectors) and `(i, j) ↦ {{u_i, u_j}}` entries; `i > j` entries are
    /// converted by skew-symmetry.
    pub fn new(
        alg: &AlgebraSpec,
        basis: Vec<BasisElem>,
        anchor: Vec<PolyVector>,
        entries: Vec<((usize, usize), Tensor)>,
    ) -> Result<Self> {
        Self::build(alg, basis, anchor, entries, AlgebroidKind::Custom, true)
    }

    fn build(
        alg: &AlgebraSpec,
        basis: Vec<BasisElem>,
        anchor: Vec<PolyVector>,
        entries: Vec<((usize, usize), Tensor)>,
        kind: AlgebroidKind,
        strict: bool,
    ) -> Result<Self> {
        if anchor.len() != basis.len() {
            return Err(DpcError::Arity { expected: basis.len(), found: anchor.len() });
        }
        for b in &basis {
            if b.src >= alg.vertices() || b.tgt >= alg.vertices() {
                return Err(DpcError::Structure(format!("basis element {} has an unknown vertex", b.name)));
            }
        }
        for (k, w) in anchor.iter().enumerate() {
            for (word, _) in w.iter() {
                if word.degree() != 1 || word.src() != basis[k].src || word.tgt() != basis[k].tgt {
                    return Err(DpcError::Semantic(format!(
                        "anchor of {} must be a degree-one polyvector with the endpoints of {}",
                        basis[k].name, basis[k].name
                    )));
                }
            }
        }
        let letter = |k: usize| Letter::new(LetterKind::Vector, k as u16, basis[k].src, basis[k].tgt);
        let mut table: BTreeMap<(usize, usize), Tensor> = BTreeMap::new();
        for ((i, j), v) in entries {
            if i >= basis.len() || j >= basis.len() {
                return Err(DpcError::Structure(format!("bracket entry ({i},{j}) outside the basis")));
            }
            let (key, val) = if i <= j { ((i, j), v) } else { ((j, i), flip(&v).neg()) };
            check_entry(&basis, key, &val)?;
            if strict {
                if let Some(old) = table.get(&key) {
                    if *old != val {
                        return Err(DpcError::Semantic(format!(
                            "entries for ({}, {}) contradict skew-symmetry",
                            basis[key.0].name, basis[key.1].name
                        )));
                    }
                }
                if key.0 == key.1 && val != flip(&val).neg() {
                    return Err(DpcError::Semantic(format!(
                        "{{{{{0},{0}}}}} is not skew-symmetric",
                        basis[key.0].name
                    )));
                }
            }
            table.insert(key, val);
        }
        let sch = Schouten::new(alg);
        let mut br = GradedBracket::new(-1);
        for (k, om) in anchor.iter().enumerate() {
            for g in 0..alg.gen_count() {
                let gl = alg.gen_letter(g);
                let v = sch.bracket(om, &Poly::basis(Word::letter(gl)));
                br.set_antisymmetric(letter(k), gl, v);
            }
        }
        for (&(i, j), v) in &table {
            if i == j {
                br.set(letter(i), letter(i), v.clone());
            } else {
                br.set_antisymmetric(letter(i), letter(j), v.clone());
            }
        }
        Ok(AlgebroidSpec { alg: alg.clone(), basis, anchor, table, kind, sch, br })
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.alg
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn kind(&self) -> AlgebroidKind {
        self.kind
    }

    pub fn anchors(&self) -> &[PolyVector] {
        &self.anchor
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), Tensor> {
        &self.table
    }

    pub fn schouten(&self) -> &Schouten {
        &self.sch
    }

    /// The degree `-1` bracket on `T_A(L)`.
    pub fn engine(&self) -> &GradedBracket {
        &self.br
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn basis_letter(&self, k: usize) -> Letter {
        Letter::new(LetterKind::Vector, k as u16, self.basis[k].src, self.basis[k].tgt)
    }

    pub fn element(&self, k: usize) -> LElement {
        Poly::basis(Word::letter(self.basis_letter(k)))
    }

    pub fn is_anchor_zero(&self) -> bool {
        self.anchor.iter().all(Poly::is_zero)
    }

    /// `ω` on a word of `T_A(L)`: every basis letter is replaced by its anchor.
    pub fn anchor_word(&self, w: &Word) -> PolyVector {
        let mut out = Poly::basis(Word::trivial(w.src()));
        for l in w.letters() {
            let f = match l.kind {
                LetterKind::Vector => self.anchor[l.index as usize].clone(),
                _ => Poly::basis(Word::letter(*l)),
            };
            out = poly::mul(&out, &f);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    pub fn anchor_of(&self, x: &LElement) -> PolyVector {
        let mut out = Poly::zero();
        for (w, c) in x.iter() {
            out.add_scaled(&self.anchor_word(w), c);
        }
        out
    }

    pub fn anchor_tensor(&self, t: &Tensor) -> Tensor {
        let mut out = t.clone();
        for i in 0..t.arity() {
            out = out.expand_slot(i, 1, |s| Tensor::from_poly(&self.anchor_word(&s[i])));
        }
        out
    }

    /// `D(a) = ω(D)(a)`.
    pub fn act(&self, d: &LElement, a: &Poly) -> Tensor {
        polyvect::apply_decorated(&self.anchor_of(d), a)
    }

    /// `{{X, Y}}` for `X, Y ∈ L`, split into its left and right parts.
    pub fn extend_bracket(&self, x: &LElement, y: &LElement) -> Result<MixedBracketValue> {
        for p in [x, y] {
            if p.keys().any(|w| w.degree() != 1) {
                return Err(DpcError::Precondition("bracket arguments must lie in L".into()));
            }
        }
        Ok(split(&self.br.bracket(x, y)))
    }

    fn name_word(&self, w: &Word) -> String {
        format!("{w:?}")
    }

    /// Skew-symmetry, anchor morphism, Jacobi and its `L ⊗ A ⊗ A`
    /// projection on basis pairs and triples, then Jacobi on decorated
    /// degree-one words of weight at most `max_weight`.
    pub fn verify(&self, max_weight: usize) -> AlgebroidReport {
        let mut rep = AlgebroidReport {
            skew: true,
            anchor_morphism: true,
            jacobi: true,
            jacobi_projected: true,
            spot_check: true,
            witness: None,
        };
        let m = self.rank();
        let ax = Axioms::new(&self.br);
        let el: Vec<LElement> = (0..m).map(|k| self.element(k)).collect();
        let lw: Vec<Word> = (0..m).map(|k| Word::letter(self.basis_letter(k))).collect();
        let names = |ks: &[usize]| ks.iter().map(|&k| self.basis[k].name.clone()).collect::<Vec<_>>();
        for i in 0..m {
            for j in 0..m {
                if rep.skew && !ax.antisymmetry(&lw[i], &lw[j]).is_zero() {
                    rep.skew = false;
                    rep.witness.get_or_insert(("skew".into(), names(&[i, j])));
                }
                let lhs = self.anchor_tensor(&self.br.words(&lw[i], &lw[j]));
                let rhs = self.sch.bracket(&self.anchor[i], &self.anchor[j]);
                if rep.anchor_morphism && lhs != rhs {
                    rep.anchor_morphism = false;
                    rep.witness.get_or_insert(("anchor".into(), names(&[i, j])));
                }
                for k in 0..m {
                    if rep.jacobi && !ax.jacobi(&lw[i], &lw[j], &lw[k]).is_zero() {
                        rep.jacobi = false;
                        rep.witness.get_or_insert(("jacobi".into(), names(&[i, j, k])));
                    }
                    if rep.jacobi_projected && !self.jacobi_projected(&el[i], &el[j], &el[k]).is_zero() {
                        rep.jacobi_projected = false;
                        rep.witness.get_or_insert(("jacobi projected".into(), names(&[i, j, k])));
                    }
                }
            }
        }
        let dec = self.decorated_words(max_weight);
        'outer: for a in &dec {
            for b in &dec {
                for c in &dec {
                    if a.weight() + b.weight() + c.weight() > max_weight as u32 {
                        continue;
                    }
                    if !ax.jacobi(a, b, c).is_zero() {
                        rep.spot_check = false;
                        let w = vec![self.name_word(a), self.name_word(b), self.name_word(c)];
                        rep.witness.get_or_insert(("jacobi on decorated words".into(), w));
                        break 'outer;
                    }
                }
            }
        }
        rep
    }

    /// Degree-one words `α u_k β` with at most `max_weight` generator letters.
    pub fn decorated_words(&self, max_weight: usize) -> Vec<Word> {
        let mut coeffs = vec![];
        for v in 0..self.alg.vertices() {
            coeffs.push(Word::trivial(v));
        }
        coeffs.extend(self.alg.words_up_to(max_weight).into_iter().filter(|w| !w.is_trivial()));
        let mut out = vec![];
        for k in 0..self.rank() {
            let u = Word::letter(self.basis_letter(k));
            for a in &coeffs {
                for b in &coeffs {
                    if (a.weight() + b.weight()) as usize > max_weight {
                        continue;
                    }
                    if let Some(w) = a.concat(&u).and_then(|x| x.concat(b)) {
                        out.push(w);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The `L ⊗ A ⊗ A` component identity implied by Jacobi.
    pub fn jacobi_projected(&self, d1: &LElement, d2: &LElement, d3: &LElement) -> Tensor {
        let left = |x: &LElement, y: &LElement| split(&self.br.bracket(x, y)).left;
        let mut out = Tensor::zero(3);
        for (s, c) in left(d2, d3).iter() {
            let inner = left(d1, &Poly::basis(s[0].clone()));
            out.add_scaled(&inner.tensor(&Tensor::from_poly(&Poly::basis(s[1].clone()))), c);
        }
        for (s, c) in left(d1, d3).iter() {
            let inner = self.act(d2, &Poly::basis(s[1].clone()));
            out.add_scaled(&Tensor::from_poly(&Poly::basis(s[0].clone())).tensor(&inner), &-c);
        }
        for (s, c) in left(d1, d2).iter() {
            let inner = left(&Poly::basis(s[0].clone()), d3);
            let t = inner.expand_slot(0, 2, |x| {
                Tensor::pure2(x[0].clone(), s[1].clone(), Q::one())
            });
            out.add_scaled(&t, &-c);
        }
        out
    }

    /// `X ∙_l Y = m({{X,Y}}_l)`.
    pub fn bullet_left(&self, x: &LElement, y: &LElement) -> LElement {
        split(&self.br.bracket(x, y)).left.mult()
    }

    /// `X ∙_r Y = -m({{X,Y}}_r)`.
    pub fn bullet_right(&self, x: &LElement, y: &LElement) -> LElement {
        split(&self.br.bracket(x, y)).right.mult().scale(&-Q::one())
    }

    /// For zero anchor: associativity of `∙_l`, `∙_r` on basis triples and
    /// `X ∙_r Y ≡ Y ∙_l X` modulo `[A, L]`.
    pub fn split_assoc_check(&self) -> Result<SplitReport> {
        if !self.is_anchor_zero() {
            return Err(DpcError::Precondition("split products need a zero anchor".into()));
        }
        let m = self.rank();
        let el: Vec<LElement> = (0..m).map(|k| self.element(k)).collect();
        let mut rep =
            SplitReport { left_associative: true, right_associative: true, opposite_mod_commutators: true, witness: None };
        for i in 0..m {
            for j in 0..m {
                let a = reduce_mod_al(&self.bullet_right(&el[i], &el[j]));
                let b = reduce_mod_al(&self.bullet_left(&el[j], &el[i]));
                if rep.opposite_mod_commutators && a != b {
                    rep.opposite_mod_commutators = false;
                    rep.witness.get_or_insert(vec![i, j]);
                }
                for k in 0..m {
                    let l1 = self.bullet_left(&self.bullet_left(&el[i], &el[j]), &el[k]);
                    let l2 = self.bullet_left(&el[i], &self.bullet_left(&el[j], &el[k]));
                    if rep.left_associative && l1 != l2 {
                        rep.left_associative = false;
                        rep.witness.get_or_insert(vec![i, j, k]);
                    }
                    let r1 = self.bullet_right(&self.bullet_right(&el[i], &el[j]), &el[k]);
                    let r2 = self.bullet_right(&el[i], &self.bullet_right(&el[j], &el[k]));
                    if rep.right_associative && r1 != r2 {
                        rep.right_associative = false;
                        rep.witness.get_or_insert(vec![i, j, k]);
                    }
                }
            }
        }
        Ok(rep)
    }

    /// Words of `T_A(L)` of the given degree and at most `max_weight`
    /// generator letters.
    pub fn tensor_words(&self, degree: usize, max_weight: usize) -> Vec<Word> {
        let mut letters: Vec<Letter> = self.alg.gen_letters();
        letters.extend((0..self.rank()).map(|k| self.basis_letter(k)));
        let mut out = vec![];
        let mut frontier: Vec<Word> = (0..self.alg.vertices()).map(Word::trivial).collect();
        if degree == 0 {
            out.extend(frontier.iter().cloned());
        }
        for _ in 0..degree + max_weight {
            let mut next = vec![];
            for w in &frontier {
                for &l in &letters {
                    if let Some(x) = w.concat(&Word::letter(l)) {
                        if x.degree() as usize <= degree && x.weight() as usize <= max_weight {
                            if x.degree() as usize == degree {
                                out.push(x.clone());
                            }
                            next.push(x);
                        }
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// The degree `-1` double Gerstenhaber axioms on `T_A(L)` for
    /// homogeneous words of degree at most `max_degree`.
    pub fn tensor_gerstenhaber_check(&self, max_degree: usize, max_weight: usize) -> Option<(String, Vec<Word>)> {
        let mut words = vec![];
        for d in 0..=max_degree {
            words.extend(self.tensor_words(d, max_weight).into_iter().filter(|w| !w.is_trivial()));
        }
        Axioms::new(&self.br).check_all(&words, max_degree as u32)
    }

    /// Example 1: `L = Der(A)` with basis `∂_x`, identity anchor, zero bracket
    /// on the basis.
    pub fn der(alg: &AlgebraSpec) -> Self {
        let basis = alg
            .gens()
            .iter()
            .map(|g| BasisElem { name: format!("D{}", g.name), src: g.tgt, tgt: g.src })
            .collect();
        let anchor = (0..alg.gen_count()).map(|i| Poly::basis(Word::letter(alg.der_letter(i)))).collect();
        Self::build(alg, basis, anchor, vec![], AlgebroidKind::Der, true).expect("derivation algebroid")
    }

    /// Example 2: over `A = k`, an associative table `z_i z_j = Σ c_k z_k`
    /// gives `{{X,Y}} = XY ⊗ 1 - 1 ⊗ YX`.
    pub fn assoc(names: &[&str], mult: &BTreeMap<(usize, usize), Vec<(Q, usize)>>) -> Result<Self> {
        let m = names.len();
        let prod = |i: usize, j: usize| -> BTreeMap<usize, Q> {
            let mut out = BTreeMap::new();
            for (c, k) in mult.get(&(i, j)).into_iter().flatten() {
                *out.entry(*k).or_insert_with(Q::zero) += c;
            }
            out.retain(|_, c| !c.is_zero());
            out
        };
        let times = |v: &BTreeMap<usize, Q>, k: usize, left: bool| -> BTreeMap<usize, Q> {
            let mut out = BTreeMap::new();
            for (&i, c) in v {
                let p = if left { prod(i, k) } else { prod(k, i) };
                for (l, d) in p {
                    *out.entry(l).or_insert_with(Q::zero) += c * d;
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        };
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if times(&prod(i, j), k, true) != times(&prod(j, k), i, false) {
                        return Err(DpcError::Semantic(format!(
                            "multiplication table is not associative on ({}, {}, {})",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let alg = AlgebraSpec::new(BaseRing::field(), vec![])?;
        let basis: Vec<BasisElem> = names.iter().map(|n| BasisElem { name: n.to_string(), src: 0, tgt: 0 }).collect();
        let u = |k: usize| Word::letter(Letter::new(LetterKind::Vector, k as u16, 0, 0));
        let one = Word::trivial(0);
        let mut entries = vec![];
        for i in 0..m {
            for j in i..m {
                let mut t = Tensor::zero(2);
                for (k, c) in prod(i, j) {
                    t.add_slots(smallvec::smallvec![u(k), one.clone()], c);
                }
                for (k, c) in prod(j, i) {
                    t.add_slots(smallvec::smallvec![one.clone(), u(k)], -c);
                }
                entries.push(((i, j), t));
            }
        }
        let anchor = vec![Poly::zero(); m];
        Self::build(&alg, basis, anchor, entries, AlgebroidKind::Assoc, true)
    }

    /// Example 5: `L = Ω¹A` of a double Poisson algebra, basis `dx`,
    /// `ω(da) = {{a, -}}`, `{{da, db}} = d{{a,b}}' ⊗ {{a,b}}'' + {{a,b}}' ⊗ d{{a,b}}''`.
    pub fn cotangent(db: &DoubleBracketSpec) -> Result<Self> {
        let v = db.is_double_poisson(2);
        if !v.holds {
            return Err(DpcError::Precondition("the double bracket is not double Poisson".into()));
        }
        let (alg, basis, anchor, entries) = cotangent_data(db);
        Self::build(&alg, basis, anchor, entries, AlgebroidKind::Cotangent, true)
    }

    /// Example 3: `L = T(g) ⊗ g ⊗ T(g)` over `T(g)`, realised as the
    /// cotangent algebroid of the linear double Poisson bracket of `g`.
    pub fn double_lie(g: &DoubleLieAlgebraSpec, names: &[&str]) -> Result<Self> {
        let rep = crate::dbracket::r_matrix_check(g);
        if !rep.skew || !rep.holds {
            return Err(DpcError::Precondition("structure tensor fails the r-matrix equation".into()));
        }
        let db = g.to_bracket(names)?;
        let (alg, basis, anchor, entries) = cotangent_data(&db);
        Self::build(&alg, basis, anchor, entries, AlgebroidKind::DoubleLie, true)
    }

    /// Example 6 (experimental): basis `{dx} ∪ {E}` for a quasi-Poisson
    /// bracket over a single vertex, with the quarter correction read as
    /// iterated inner commutators.
    pub fn tilde_omega(db: &DoubleBracketSpec, enabled: bool) -> Result<(Self, AlgebroidReport)> {
        if !enabled {
            return Err(DpcError::Experimental("the tilde-Omega algebroid needs --experimental-tilde-omega".into()));
        }
        let alg = db.algebra().clone();
        if alg.vertices() != 1 {
            return Err(DpcError::Unsupported("the tilde-Omega algebroid is built over B = k only".into()));
        }
        let (_, mut basis, mut anchor, mut entries) = cotangent_data(db);
        let n = alg.gen_count();
        basis.push(BasisElem { name: "E".into(), src: 0, tgt: 0 });
        anchor.push(polyvect::gauge_polyvector(&alg));
        let u = |k: usize| Word::letter(Letter::new(LetterKind::Vector, k as u16, 0, 0));
        let one = Word::trivial(0);
        let e_term = Tensor::pure2(u(n), one.clone(), Q::one()).minus(&Tensor::pure2(one.clone(), u(n), Q::one()));
        for k in 0..=n {
            let t = Tensor::pure2(u(k), one.clone(), Q::one()).minus(&Tensor::pure2(one.clone(), u(k), Q::one()));
            entries.push(((n, k), t));
        }
        for ((i, j), t) in entries.iter_mut() {
            if *i < n && *j < n {
                let a = Word::letter(alg.gen_letter(*i));
                let b = Word::letter(alg.gen_letter(*j));
                let inner = inner_commutator(&b, &inner_commutator(&a, &e_term));
                t.add_scaled(&inner, &crate::ncalg::qf(1, 4));
            }
        }
        let spec = Self::build(&alg, basis, anchor, entries, AlgebroidKind::TildeOmega, false)?;
        let rep = spec.verify(1);
        Ok((spec, rep))
    }
}

/// `[a, T]_* = a * T - T * a` for the inner actions.
pub fn inner_commutator(a: &Word, t: &Tensor) -> Tensor {
    t.inner_left(a).minus(&t.inner_right(a))
}

fn check_entry(basis: &[BasisElem], (i, j): (usize, usize), v: &Tensor) -> Result<()> {
    if v.is_zero() {
        return Ok(());
    }
    if v.arity() != 2 {
        return Err(DpcError::Arity { expected: 2, found: v.arity() });
    }
    let (x, y) = (&basis[i], &basis[j]);
    for (s, _) in v.iter() {
        let ok_deg = matches!(slot_degrees(s), (1, 0) | (0, 1));
        let ok_ends = s[0].src() == y.src && s[0].tgt() == x.tgt && s[1].src() == x.src && s[1].tgt() == y.tgt;
        if !ok_deg || !ok_ends {
            return Err(DpcError::Semantic(format!(
                "value of {{{{{}, {}}}}} must lie in L⊗A ⊕ A⊗L with matching endpoints",
                x.name, y.name
            )));
        }
    }
    Ok(())
}

/// Splits a tensor into its `(1,0)` and `(0,1)` degree components.
pub fn split(t: &Tensor) -> MixedBracketValue {
    MixedBracketValue {
        left: t.filter(|s| slot_degrees(s) == (1, 0)),
        right: t.filter(|s| slot_degrees(s) == (0, 1)),
    }
}

/// The formal differential `d: A → Ω¹A`, `x ↦ dx`, extended by Leibniz.
pub fn formal_d(a: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (w, c) in a.iter() {
        for p in 0..w.len() {
            let l = w.letters()[p];
            if l.kind != LetterKind::Gen {
                continue;
            }
            let dl = Letter::new(LetterKind::Vector, l.index, l.src, l.tgt);
            let word = w.sub(0, p).concat(&Word::letter(dl)).and_then(|x| x.concat(&w.sub(p + 1, w.len())));
            if let Some(word) = word {
                out.add_term(word, c.clone());
            }
        }
    }
    out
}

type SpecData = (AlgebraSpec, Vec<BasisElem>, Vec<PolyVector>, Vec<((usize, usize), Tensor)>);

fn cotangent_data(db: &DoubleBracketSpec) -> SpecData {
    let alg = db.algebra().clone();
    let n = alg.gen_count();
    let basis = alg.gens().iter().map(|g| BasisElem { name: format!("d{}", g.name), src: g.src, tgt: g.tgt }).collect();
    let x = |i: usize| Poly::basis(Word::letter(alg.gen_letter(i)));
    // ω(dx) = Σ_y Σ c q ∂_y p over the terms p ⊗ q of {{x, y}}.
    let anchor = (0..n)
        .map(|i| {
            let mut om = Poly::zero();
            for j in 0..n {
                for (s, c) in db.eval(&x(i), &x(j)).iter() {
                    let d = Word::letter(alg.der_letter(j));
                    if let Some(w) = s[1].concat(&d).and_then(|w| w.concat(&s[0])) {
                        om.add_term(w, c.clone());
                    }
                }
            }
            om
        })
        .collect();
    let mut entries = vec![];
    for (&(i, j), v) in db.table() {
        let mut t = Tensor::zero(2);
        for (s, c) in v.iter() {
            let (p, q) = (Poly::basis(s[0].clone()), Poly::basis(s[1].clone()));
            t.add_scaled(&Tensor::product2(&formal_d(&p), &q), c);
            t.add_scaled(&Tensor::product2(&p, &formal_d(&q)), c);
        }
        entries.push(((i, j), t));
    }
    (alg, basis, anchor, entries)
}

/// `L / [A, L]`: `α u β ↦ u β α` for closed words, zero otherwise.
pub fn reduce_mod_al(x: &LElement) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (w, c) in x.iter() {
        if !w.is_closed() {
            continue;
        }
        let Some(p) = w.letters().iter().position(|l| l.kind != LetterKind::Gen) else { continue };
        out.add_term(w.rotate(p), c.clone());
    }
    out
}
