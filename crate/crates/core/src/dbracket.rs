//! Double brackets on path algebras: evaluation, the triple bracket,
//! double Poisson / quasi-Poisson checks, Loday properties and the
//! r-matrix equation for linear double brackets.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{DpcError, Result};
use crate::gerstenhaber::GradedBracket;
use crate::ncalg::{cyclic_reduce_poly, poly, AlgebraSpec, Perm, Poly, Tensor, Word, Q};
use crate::polyvect::{self, DoubleDerivation};

/// A double bracket presented by its values on ordered generator pairs.
#[derive(Clone, Debug)]
pub struct DoubleBracketSpec {
    alg: AlgebraSpec,
    table: BTreeMap<(usize, usize), Tensor>,
    br: GradedBracket,
}

/// Outcome of a vanishing check, with a witness argument tuple on failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<(Vec<Word>, Tensor)>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(args: Vec<Word>, residual: Tensor) -> Self {
        Verdict { holds: false, witness: Some((args, residual)) }
    }
}

fn flip(t: &Tensor) -> Tensor {
    t.permute(&Perm::cycle(2, &[1, 2]))
}

impl DoubleBracketSpec {
    /// Builds the bracket from `(i, j) ↦ {{x_i, x_j}}` entries. Entries with
    /// `i > j` are converted by antisymmetry; contradictory or
    /// non-antisymmetric data is rejected.
    pub fn new(alg: &AlgebraSpec, entries: Vec<((usize, usize), Tensor)>) -> Result<Self> {
        let mut table: BTreeMap<(usize, usize), Tensor> = BTreeMap::new();
        for ((i, j), v) in entries {
            if i >= alg.gen_count() || j >= alg.gen_count() {
                return Err(DpcError::Structure(format!("bracket entry ({i},{j}) outside the generators")));
            }
            let (key, val) = if i <= j { ((i, j), v) } else { ((j, i), flip(&v).neg()) };
            Self::check_endpoints(alg, key.0, key.1, &val)?;
            if let Some(old) = table.get(&key) {
                if *old != val {
                    return Err(DpcError::Semantic(format!(
                        "entries for ({}, {}) contradict antisymmetry",
                        alg.gen_name(key.0),
                        alg.gen_name(key.1)
                    )));
                }
            }
            if key.0 == key.1 && val != flip(&val).neg() {
                return Err(DpcError::Semantic(format!(
                    "{{{{{0},{0}}}}} is not antisymmetric",
                    alg.gen_name(key.0)
                )));
            }
            table.insert(key, val);
        }
        let mut br = GradedBracket::new(0);
        for (&(i, j), v) in &table {
            br.set_antisymmetric(alg.gen_letter(i), alg.gen_letter(j), v.clone());
        }
        Ok(DoubleBracketSpec { alg: alg.clone(), table, br })
    }

    pub fn zero(alg: &AlgebraSpec) -> Self {
        Self::new(alg, vec![]).expect("zero bracket")
    }

    /// `{{x, y}}` must lie in `e_{s(y)} A e_{t(x)} ⊗ e_{s(x)} A e_{t(y)}`.
    fn check_endpoints(alg: &AlgebraSpec, i: usize, j: usize, v: &Tensor) -> Result<()> {
        if v.is_zero() {
            return Ok(());
        }
        if v.arity() != 2 {
            return Err(DpcError::Arity { expected: 2, found: v.arity() });
        }
        let (x, y) = (alg.gen_letter(i), alg.gen_letter(j));
        for (s, _) in v.iter() {
            if s[0].src() != y.src || s[0].tgt() != x.tgt || s[1].src() != x.src || s[1].tgt() != y.tgt {
                return Err(DpcError::Semantic(format!(
                    "value of {{{{{}, {}}}}} has a term incompatible with the quiver endpoints",
                    alg.gen_name(i),
                    alg.gen_name(j)
                )));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.alg
    }

    pub fn engine(&self) -> &GradedBracket {
        &self.br
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), Tensor> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(Tensor::is_zero)
    }

    pub fn eval(&self, a: &Poly, b: &Poly) -> Tensor {
        self.br.bracket(a, b)
    }

    /// `{a, b} = m({{a, b}})`.
    pub fn assoc(&self, a: &Poly, b: &Poly) -> Poly {
        self.br.assoc(a, b)
    }

    /// `{{a,b,c}} = {{a,{{b,c}}}}_L + τ_(123){{b,{{c,a}}}}_L + τ_(132){{c,{{a,b}}}}_L`.
    pub fn triple(&self, a: &Poly, b: &Poly, c: &Poly) -> Tensor {
        let mut out = self.br.left(a, &self.eval(b, c));
        out.add(&self.br.left(b, &self.eval(c, a)).permute(&Perm::cycle(3, &[1, 2, 3])));
        out.add(&self.br.left(c, &self.eval(a, b)).permute(&Perm::cycle(3, &[1, 3, 2])));
        out
    }

    fn gen_polys(&self) -> Vec<(Word, Poly)> {
        (0..self.alg.gen_count())
            .map(|i| {
                let w = Word::letter(self.alg.gen_letter(i));
                (w.clone(), Poly::basis(w))
            })
            .collect()
    }

    fn sample_words(&self, max_word_len: usize) -> Vec<Word> {
        self.alg.words_up_to(max_word_len)
    }

    /// Compares `{{-,-,-}}` with `expected` on generator triples, then on
    /// word triples up to `max_word_len`.
    fn triple_against(&self, max_word_len: usize, expected: impl Fn(&[Poly]) -> Tensor) -> Verdict {
        let gens = self.gen_polys();
        for (wa, a) in &gens {
            for (wb, b) in &gens {
                for (wc, c) in &gens {
                    let r = self.triple(a, b, c).minus(&expected(&[a.clone(), b.clone(), c.clone()]));
                    if !r.is_zero() {
                        return Verdict::fail(vec![wa.clone(), wb.clone(), wc.clone()], r);
                    }
                }
            }
        }
        let words = self.sample_words(max_word_len);
        for wa in &words {
            for wb in &words {
                for wc in &words {
                    if wa.len() + wb.len() + wc.len() > max_word_len + 2 {
                        continue;
                    }
                    let (a, b, c) = (Poly::basis(wa.clone()), Poly::basis(wb.clone()), Poly::basis(wc.clone()));
                    let r = self.triple(&a, &b, &c).minus(&expected(&[a.clone(), b.clone(), c.clone()]));
                    if !r.is_zero() {
                        return Verdict::fail(vec![wa.clone(), wb.clone(), wc.clone()], r);
                    }
                }
            }
        }
        Verdict::pass()
    }

    pub fn is_double_poisson(&self, max_word_len: usize) -> Verdict {
        self.triple_against(max_word_len, |_| Tensor::zero(3))
    }

    /// `{{-,-,-}} = μ(E^3)` on generator triples and sampled word triples.
    pub fn is_quasi_poisson(&self, max_word_len: usize) -> Verdict {
        let e = polyvect::gauge_polyvector(&self.alg);
        let e3 = poly::mul(&poly::mul(&e, &e), &e);
        self.triple_against(max_word_len, |args| polyvect::mu_n_bracket(&e3, args).expect("degree three"))
    }

    /// Loday properties of `{a,b} = m({{a,b}})` on the sampled words.
    pub fn loday_report(&self, samples: &[Word]) -> LodayReport {
        let mut rep = LodayReport { derivation: true, loday: true, antisymmetric_mod_commutators: true, witness: None };
        let p = |w: &Word| Poly::basis(w.clone());
        for a in samples {
            for b in samples {
                let sym = &self.assoc(&p(a), &p(b)) + &self.assoc(&p(b), &p(a));
                if rep.antisymmetric_mod_commutators && !cyclic_reduce_poly(&sym).is_zero() {
                    rep.antisymmetric_mod_commutators = false;
                    rep.witness.get_or_insert_with(|| vec![a.clone(), b.clone()]);
                }
                for c in samples {
                    if let Some(bc) = b.concat(c) {
                        let mut d = self.assoc(&p(a), &p(&bc));
                        d -= &poly::mul(&p(b), &self.assoc(&p(a), &p(c)));
                        d -= &poly::mul(&self.assoc(&p(a), &p(b)), &p(c));
                        if rep.derivation && !d.is_zero() {
                            rep.derivation = false;
                            rep.witness.get_or_insert_with(|| vec![a.clone(), b.clone(), c.clone()]);
                        }
                    }
                    let lhs = self.assoc(&p(a), &self.assoc(&p(b), &p(c)));
                    let rhs = &self.assoc(&self.assoc(&p(a), &p(b)), &p(c))
                        + &self.assoc(&p(b), &self.assoc(&p(a), &p(c)));
                    if rep.loday && lhs != rhs {
                        rep.loday = false;
                        rep.witness.get_or_insert_with(|| vec![a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
        rep
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LodayReport {
    pub derivation: bool,
    pub loday: bool,
    pub antisymmetric_mod_commutators: bool,
    pub witness: Option<Vec<Word>>,
}

impl LodayReport {
    pub fn all_pass(&self) -> bool {
        self.derivation && self.loday && self.antisymmetric_mod_commutators
    }
}

/// The gauge double derivation `E = Σ_i E_i`, `E_i(a) = a e_i ⊗ e_i - e_i ⊗ e_i a`.
pub fn gauge_e(alg: &AlgebraSpec) -> DoubleDerivation {
    let values = (0..alg.gen_count())
        .map(|i| {
            let x = Word::letter(alg.gen_letter(i));
            let mut t = Tensor::pure2(x.clone(), Word::trivial(x.tgt()), Q::one());
            t.add(&Tensor::pure2(Word::trivial(x.src()), x, -Q::one()));
            t
        })
        .collect();
    DoubleDerivation::new(values)
}

/// Structure tensor of a linear double bracket on `V`:
/// `r(v_i ⊗ v_j) = Σ c v_k ⊗ v_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleLieAlgebraSpec {
    pub dim: usize,
    pub r: BTreeMap<(usize, usize), Vec<(Q, usize, usize)>>,
}

pub type Triple = (usize, usize, usize);

impl DoubleLieAlgebraSpec {
    pub fn zero(dim: usize) -> Self {
        DoubleLieAlgebraSpec { dim, r: BTreeMap::new() }
    }

    pub fn apply(&self, i: usize, j: usize) -> BTreeMap<(usize, usize), Q> {
        let mut out = BTreeMap::new();
        for (c, k, l) in self.r.get(&(i, j)).into_iter().flatten() {
            *out.entry((*k, *l)).or_insert_with(Q::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `r(v ⊗ u) = -r(u ⊗ v)^∘`.
    pub fn is_skew(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.apply(i, j);
                let mut b: BTreeMap<(usize, usize), Q> =
                    self.apply(j, i).into_iter().map(|((k, l), c)| ((l, k), -c)).collect();
                b.retain(|_, c| !c.is_zero());
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    fn act(&self, slots: (usize, usize), v: &BTreeMap<Triple, Q>) -> BTreeMap<Triple, Q> {
        let mut out: BTreeMap<Triple, Q> = BTreeMap::new();
        for (&(a, b, c), coeff) in v {
            let arr = [a, b, c];
            let (p, q) = slots;
            for ((x, y), rc) in self.apply(arr[p], arr[q]) {
                let mut img = arr;
                img[p] = x;
                img[q] = y;
                *out.entry((img[0], img[1], img[2])).or_insert_with(Q::zero) += coeff * &rc;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `(r^{23} r^{12} + r^{31} r^{23} + r^{12} r^{31})(v_a ⊗ v_b ⊗ v_c)`,
    /// where `r^{31}` feeds slots 3 and 1 (in that order) to `r`.
    pub fn residual(&self, a: usize, b: usize, c: usize) -> BTreeMap<Triple, Q> {
        let mut start = BTreeMap::new();
        start.insert((a, b, c), Q::one());
        let (r12, r23, r31) = ((0, 1), (1, 2), (2, 0));
        let mut total: BTreeMap<Triple, Q> = BTreeMap::new();
        for (first, second) in [(r12, r23), (r23, r31), (r31, r12)] {
            for (k, v) in self.act(second, &self.act(first, &start)) {
                *total.entry(k).or_insert_with(Q::zero) += v;
            }
        }
        total.retain(|_, c| !c.is_zero());
        total
    }

    /// Linear double bracket on the free algebra on `v_1, …, v_m`.
    pub fn to_bracket(&self, names: &[&str]) -> Result<DoubleBracketSpec> {
        let alg = AlgebraSpec::free(names);
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut t = Tensor::zero(2);
                for ((k, l), c) in self.apply(i, j) {
                    t.add(&Tensor::pure2(Word::letter(alg.gen_letter(k)), Word::letter(alg.gen_letter(l)), c));
                }
                entries.push(((i, j), t));
            }
        }
        DoubleBracketSpec::new(&alg, entries)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixReport {
    pub skew: bool,
    pub holds: bool,
    pub residual: Option<(Triple, BTreeMap<Triple, Q>)>,
}

pub fn r_matrix_check(g: &DoubleLieAlgebraSpec) -> RMatrixReport {
    let skew = g.is_skew();
    for a in 0..g.dim {
        for b in 0..g.dim {
            for c in 0..g.dim {
                let r = g.residual(a, b, c);
                if !r.is_empty() {
                    return RMatrixReport { skew, holds: false, residual: Some(((a, b, c), r)) };
                }
            }
        }
    }
    RMatrixReport { skew, holds: skew, residual: None }
}

/// `Σ c (x ⊗ y)` from polynomial pairs, convenience for literals.
pub fn tensor2(terms: &[(Q, &Poly, &Poly)]) -> Tensor {
    let mut t = Tensor::zero(2);
    for (c, a, b) in terms {
        t.add_scaled(&Tensor::product2(a, b), c);
    }
    t
}

/// The `k[t]` family `λ(t⊗1 - 1⊗t) + μ(t²⊗1 - 1⊗t²) + ν(t²⊗t - t⊗t²)`.
pub fn kt_family(lambda: Q, mu: Q, nu: Q) -> DoubleBracketSpec {
    let alg = AlgebraSpec::free(&["t"]);
    let t = alg.gen("t");
    let one = alg.one();
    let t2 = poly::mul(&t, &t);
    let m1 = -Q::one();
    let v = tensor2(&[
        (lambda.clone(), &t, &one),
        (-lambda, &one, &t),
        (mu.clone(), &t2, &one),
        (mu * &m1, &one, &t2),
        (nu.clone(), &t2, &t),
        (-nu, &t, &t2),
    ]);
    DoubleBracketSpec::new(&alg, vec![((0, 0), v)]).expect("antisymmetric family")
}

/// `{{x, y}} = 1 ⊗ 1` on `k<x, y>`.
pub fn symplectic_pair() -> DoubleBracketSpec {
    let alg = AlgebraSpec::free(&["x", "y"]);
    let one = alg.one();
    DoubleBracketSpec::new(&alg, vec![((0, 1), Tensor::product2(&one, &one))]).expect("valid")
}
