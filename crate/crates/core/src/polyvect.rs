//! Double derivations, the polyvector algebra `D_B A` with its double
//! Schouten bracket, and the map from polyvectors to n-brackets.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::gerstenhaber::GradedBracket;
use crate::linalg::{self, SparseRow};
use crate::ncalg::{
    cyclic_reduce_poly, poly, q, sign, AlgebraSpec, CyclicPoly, LetterKind, Perm, Poly, Slots, Tensor, Word, Q,
};

/// A polyvector is a polynomial in generator letters and `∂` letters.
pub type PolyVector = Poly;

/// A double derivation given on generators and extended by the outer
/// Leibniz rule.
#[derive(Clone, Debug)]
pub struct DoubleDerivation {
    values: Vec<Tensor>,
}

impl DoubleDerivation {
    pub fn new(values: Vec<Tensor>) -> Self {
        DoubleDerivation { values }
    }

    /// Double derivation with the generator values of a degree-one polyvector.
    pub fn from_polyvector(alg: &AlgebraSpec, delta: &PolyVector) -> Self {
        let values = (0..alg.gen_count())
            .map(|i| apply_decorated(delta, &Poly::basis(Word::letter(alg.gen_letter(i)))))
            .collect();
        DoubleDerivation { values }
    }

    pub fn apply_word(&self, w: &Word) -> Tensor {
        let mut out = Tensor::zero(2);
        for p in 0..w.len() {
            let l = w.letters()[p];
            let v = &self.values[l.index as usize];
            if v.is_zero() {
                continue;
            }
            out.add(&v.outer_left(&w.sub(0, p)).outer_right(&w.sub(p + 1, w.len())));
        }
        out
    }

    pub fn apply(&self, a: &Poly) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in a.iter() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }
}

/// `(α ∂_x β)(a) = Σ_{a = u x v} u β ⊗ α v`, extended linearly over the
/// degree-one words of `delta`.
pub fn apply_decorated(delta: &PolyVector, a: &Poly) -> Tensor {
    let mut out = Tensor::zero(2);
    for (dw, dc) in delta.iter() {
        let Some(pos) = dw.letters().iter().position(|l| l.kind == LetterKind::Vector) else { continue };
        let x = dw.letters()[pos].index;
        let alpha = dw.sub(0, pos);
        let beta = dw.sub(pos + 1, dw.len());
        for (aw, ac) in a.iter() {
            for (k, l) in aw.letters().iter().enumerate() {
                if l.kind != LetterKind::Gen || l.index != x {
                    continue;
                }
                let (Some(first), Some(second)) = (aw.sub(0, k).concat(&beta), alpha.concat(&aw.sub(k + 1, aw.len())))
                else {
                    continue;
                };
                out.add_slots(smallvec::smallvec![first, second], dc * ac);
            }
        }
    }
    out
}

/// The double Schouten bracket on `D_B A` for a path algebra.
#[derive(Clone, Debug)]
pub struct Schouten {
    alg: AlgebraSpec,
    br: GradedBracket,
}

impl Schouten {
    pub fn new(alg: &AlgebraSpec) -> Self {
        let mut br = GradedBracket::new(-1);
        for i in 0..alg.gen_count() {
            let g = alg.gen_letter(i);
            let value = Tensor::pure2(Word::trivial(g.src), Word::trivial(g.tgt), Q::one());
            br.set_antisymmetric(alg.der_letter(i), g, value);
        }
        Schouten { alg: alg.clone(), br }
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.alg
    }

    pub fn engine(&self) -> &GradedBracket {
        &self.br
    }

    pub fn bracket(&self, p: &PolyVector, q: &PolyVector) -> Tensor {
        self.br.bracket(p, q)
    }

    /// `{P, Q} = m({{P, Q}})`.
    pub fn assoc(&self, p: &PolyVector, q: &PolyVector) -> PolyVector {
        self.br.assoc(p, q)
    }

    /// The gauge element `E = Σ_x (∂_x x - x ∂_x)`, acting as
    /// `a ↦ Σ_i (a e_i ⊗ e_i - e_i ⊗ e_i a)`.
    pub fn gauge(&self) -> PolyVector {
        gauge_polyvector(&self.alg)
    }
}

pub fn gauge_polyvector(alg: &AlgebraSpec) -> PolyVector {
    let mut e = Poly::zero();
    for i in 0..alg.gen_count() {
        let d = Word::letter(alg.der_letter(i));
        let x = Word::letter(alg.gen_letter(i));
        e.add_term(d.concat(&x).expect("∂_x x composes"), Q::one());
        e.add_term(x.concat(&d).expect("x ∂_x composes"), -Q::one());
    }
    e
}

/// Positions of the vector letters in a polyvector word.
fn vector_positions(w: &Word) -> Vec<usize> {
    w.letters().iter().enumerate().filter(|(_, l)| l.kind == LetterKind::Vector).map(|(i, _)| i).collect()
}

/// Splits `a_0 ∂_1 a_1 … ∂_n a_n` into `δ_1 = a_0 ∂_1 a_1`, `δ_k = ∂_k a_k`.
fn split_factors(w: &Word) -> Vec<Word> {
    let pos = vector_positions(w);
    let n = pos.len();
    (0..n)
        .map(|k| {
            let start = if k == 0 { 0 } else { pos[k] };
            let end = if k + 1 < n { pos[k + 1] } else { w.len() };
            w.sub(start, end)
        })
        .collect()
}

fn tilde_word(w: &Word, args: &[Poly]) -> Tensor {
    let factors = split_factors(w);
    let n = factors.len();
    let vals: Vec<Tensor> =
        factors.iter().zip(args).map(|(f, a)| apply_decorated(&Poly::basis(f.clone()), a)).collect();
    if vals.iter().any(Tensor::is_zero) {
        return Tensor::zero(n);
    }
    // slot 1 = δ_n(a_n)' δ_1(a_1)'', slot k = δ_{k-1}(a_{k-1})' δ_k(a_k)''.
    let terms: Vec<Vec<(&Slots, &Q)>> = vals.iter().map(|v| v.iter().collect()).collect();
    let mut out = Tensor::zero(n);
    let mut choice = vec![0usize; n];
    loop {
        let pick = |k: usize| terms[k][choice[k]];
        let mut slots = Slots::new();
        let mut coeff = Q::one();
        let mut ok = true;
        for k in 0..n {
            let prev = if k == 0 { n - 1 } else { k - 1 };
            match pick(prev).0[0].concat(&pick(k).0[1]) {
                Some(w) => slots.push(w),
                None => {
                    ok = false;
                    break;
                }
            }
            coeff *= pick(k).1;
        }
        if ok {
            out.add_slots(slots, coeff);
        }
        let mut k = 0;
        while k < n {
            choice[k] += 1;
            if choice[k] < terms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out
}

/// `{{a_1, …, a_n}}_Q = Σ_i (-1)^{(n-1)i} τ^i ∘ {{…}}~_Q ∘ τ^{-i}`.
pub fn mu_n_bracket(qv: &PolyVector, args: &[Poly]) -> crate::Result<Tensor> {
    let n = args.len();
    let mut out = Tensor::zero(n.max(1));
    if n == 0 {
        return Err(crate::DpcError::Arity { expected: 1, found: 0 });
    }
    let rot = Perm::rotation(n);
    for (w, c) in qv.iter() {
        let deg = w.degree() as usize;
        if deg != n {
            return Err(crate::DpcError::Arity { expected: deg, found: n });
        }
        for i in 0..n {
            let rotated: Vec<Poly> = (0..n).map(|k| args[(k + i) % n].clone()).collect();
            let t = tilde_word(w, &rotated).permute(&rot.pow(i));
            out.add_scaled(&t, &(c * sign(((n - 1) * i) as u32)));
        }
    }
    Ok(out)
}

/// Compares `μ(Q)` with `(-1)^{n(n-1)/2} {{a_1, … {{a_{n-1}, {Q, a_n}}}_L …}}_L`.
pub fn iterated_formula_check(sch: &Schouten, qv: &PolyVector, args: &[Poly]) -> crate::Result<bool> {
    let lhs = mu_n_bracket(qv, args)?;
    let rhs = iterated_side(sch, qv, args);
    Ok(lhs == rhs)
}

pub fn iterated_side(sch: &Schouten, qv: &PolyVector, args: &[Poly]) -> Tensor {
    let n = args.len();
    let mut t = Tensor::from_poly(&sch.assoc(qv, &args[n - 1]));
    for k in (0..n - 1).rev() {
        t = sch.engine().left(&args[k], &t);
    }
    t.scale(&sign((n * (n - 1) / 2) as u32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BivectorMode {
    Poisson,
    Quasi,
}

/// Residual of `{P,P}` (or `{P,P} - E^3/6`) modulo graded commutators.
pub fn bivector_check(sch: &Schouten, p: &PolyVector, mode: BivectorMode) -> (bool, CyclicPoly) {
    let mut pp = sch.assoc(p, p);
    if mode == BivectorMode::Quasi {
        let e = sch.gauge();
        let e3 = poly::mul(&poly::mul(&e, &e), &e);
        pp.add_scaled(&e3, &-crate::ncalg::qf(1, 6));
    }
    let red = cyclic_reduce_poly(&pp);
    (red.is_zero(), red)
}

/// All polyvector words of the given degree with at most `max_weight`
/// generator letters (composable, any endpoints).
pub fn polyvector_words(alg: &AlgebraSpec, degree: usize, max_weight: usize) -> Vec<Word> {
    let mut letters = alg.gen_letters();
    letters.extend(alg.der_letters());
    let mut out = Vec::new();
    let mut layer: Vec<Word> = (0..alg.vertices()).map(Word::trivial).collect();
    for v in 0..alg.vertices() {
        if degree == 0 {
            out.push(Word::trivial(v));
        }
    }
    for _ in 0..degree + max_weight {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if let Some(v) = w.concat(&Word::letter(l)) {
                    if (v.degree() as usize) <= degree && (v.weight() as usize) <= max_weight {
                        next.push(v);
                    }
                }
            }
        }
        out.extend(next.iter().filter(|w| w.degree() as usize == degree).cloned());
        layer = next;
    }
    out
}

/// Finds a degree-`n` polyvector of weight at most `max_weight` whose
/// n-bracket agrees with `target` on all generator tuples.
pub fn invert_mu(
    alg: &AlgebraSpec,
    n: usize,
    max_weight: usize,
    target: impl Fn(&[usize]) -> Tensor,
) -> Option<PolyVector> {
    let basis = polyvector_words(alg, n, max_weight);
    let gens = alg.gen_count();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        tuples = tuples.into_iter().flat_map(|t| (0..gens).map(move |g| [t.clone(), vec![g]].concat())).collect();
    }
    let mut keys: BTreeMap<(Vec<usize>, Slots), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Q)>> = Vec::new();
    for w in &basis {
        let mut col = Vec::new();
        for t in &tuples {
            let args: Vec<Poly> = t.iter().map(|&g| Poly::basis(Word::letter(alg.gen_letter(g)))).collect();
            let val = mu_n_bracket(&Poly::basis(w.clone()), &args).ok()?;
            for (s, c) in val.iter() {
                let len = keys.len();
                let k = *keys.entry((t.clone(), s.clone())).or_insert(len);
                col.push((k, c.clone()));
            }
        }
        columns.push(col);
    }
    let mut rhs_terms = Vec::new();
    for t in &tuples {
        for (s, c) in target(t).iter() {
            let len = keys.len();
            let k = *keys.entry((t.clone(), s.clone())).or_insert(len);
            rhs_terms.push((k, c.clone()));
        }
    }
    let nrows = keys.len();
    let mut rows = vec![SparseRow::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            *rows[*i].entry(j).or_insert_with(Q::zero) += c;
        }
    }
    let mut b = vec![Q::zero(); nrows];
    for (i, c) in rhs_terms {
        b[i] += c;
    }
    let x = linalg::solve(&rows, &b, basis.len())?;
    Some(basis.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

/// `-∂_x x ∂_x` style helper: the bivector `c · ∂_x w ∂_y`.
pub fn bivector(alg: &AlgebraSpec, x: &str, mid: &[&str], y: &str, c: i64) -> PolyVector {
    let dx = Word::letter(alg.der_letter(alg.index_of(x).expect("generator")));
    let dy = Word::letter(alg.der_letter(alg.index_of(y).expect("generator")));
    let m = if mid.is_empty() { Word::trivial(dx.tgt()) } else { alg.word(mid).expect("composable") };
    let w = dx.concat(&m).and_then(|v| v.concat(&dy)).expect("composable bivector");
    Poly::term(w, q(c))
}
