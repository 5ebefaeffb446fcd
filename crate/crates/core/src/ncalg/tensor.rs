use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::perm::Perm;
use super::{LinComb, Poly, Q, Word};
use crate::error::{DpcError, Result};

pub type Slots = SmallVec<[Word; 3]>;

fn koszul(a: u32, b: u32) -> bool {
    (a * b) % 2 == 1
}

fn signed(neg: bool) -> Q {
    if neg {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Formal sum of `arity`-fold word tuples.
#[derive(Clone, Eq)]
pub struct Tensor {
    arity: usize,
    terms: LinComb<Slots>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: LinComb::zero() }
    }

    pub fn pure(slots: Slots, coeff: Q) -> Self {
        let arity = slots.len();
        Tensor { arity, terms: LinComb::term(slots, coeff) }
    }

    pub fn pure2(a: Word, b: Word, coeff: Q) -> Self {
        let mut s = Slots::new();
        s.push(a);
        s.push(b);
        Self::pure(s, coeff)
    }

    /// The elementary tensor `p ⊗ q` of two polynomials.
    pub fn product2(p: &Poly, q: &Poly) -> Self {
        let mut out = Tensor::zero(2);
        for (a, ca) in p.iter() {
            for (b, cb) in q.iter() {
                out.add_slots(smallvec::smallvec![a.clone(), b.clone()], ca * cb);
            }
        }
        out
    }

    /// Arity-one tensor holding a polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        let mut out = Tensor::zero(1);
        for (w, c) in p.iter() {
            out.add_slots(smallvec::smallvec![w.clone()], c.clone());
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Slots, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &Slots) -> Q {
        self.terms.coeff(slots)
    }

    pub fn add_slots(&mut self, slots: Slots, coeff: Q) {
        debug_assert_eq!(slots.len(), self.arity);
        self.terms.add_term(slots, coeff);
    }

    pub fn check_arity(&self, other: &Tensor) -> Result<()> {
        if self.arity != other.arity && !self.is_zero() && !other.is_zero() {
            return Err(DpcError::Arity { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    /// Adds `factor * other`. A zero tensor adopts the arity of the other.
    pub fn add_scaled(&mut self, other: &Tensor, factor: &Q) {
        if other.is_zero() || factor.is_zero() {
            return;
        }
        if self.is_zero() {
            self.arity = other.arity;
        }
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        self.terms.add_scaled(&other.terms, factor);
    }

    pub fn add(&mut self, other: &Tensor) {
        self.add_scaled(other, &Q::one());
    }

    pub fn sub(&mut self, other: &Tensor) {
        self.add_scaled(other, &-Q::one());
    }

    pub fn plus(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add(other);
        out
    }

    pub fn minus(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.sub(other);
        out
    }

    pub fn scale(&self, factor: &Q) -> Tensor {
        Tensor { arity: self.arity, terms: self.terms.scale(factor) }
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&-Q::one())
    }

    fn map_terms(&self, arity: usize, mut f: impl FnMut(&Slots) -> Option<(Slots, Q)>) -> Tensor {
        Tensor { arity, terms: self.terms.filter_map_keys(|s| f(s)) }
    }

    /// Outer left action `w (x1 ⊗ … ⊗ xn) = w x1 ⊗ … ⊗ xn`.
    pub fn outer_left(&self, w: &Word) -> Tensor {
        self.map_terms(self.arity, |s| {
            let mut s2 = s.clone();
            s2[0] = w.concat(&s[0])?;
            Some((s2, Q::one()))
        })
    }

    /// Outer right action `(x1 ⊗ … ⊗ xn) w = x1 ⊗ … ⊗ xn w`.
    pub fn outer_right(&self, w: &Word) -> Tensor {
        let last = self.arity - 1;
        self.map_terms(self.arity, |s| {
            let mut s2 = s.clone();
            s2[last] = s[last].concat(w)?;
            Some((s2, Q::one()))
        })
    }

    pub fn outer_left_poly(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (w, c) in p.iter() {
            out.add_scaled(&self.outer_left(w), c);
        }
        out
    }

    pub fn outer_right_poly(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (w, c) in p.iter() {
            out.add_scaled(&self.outer_right(w), c);
        }
        out
    }

    /// Left multiplication of slot `i` by a word, without sign.
    pub fn slot_left(&self, i: usize, w: &Word) -> Tensor {
        self.map_terms(self.arity, |s| {
            let mut s2 = s.clone();
            s2[i] = w.concat(&s[i])?;
            Some((s2, Q::one()))
        })
    }

    /// Right multiplication of slot `i` by a word, without sign.
    pub fn slot_right(&self, i: usize, w: &Word) -> Tensor {
        self.map_terms(self.arity, |s| {
            let mut s2 = s.clone();
            s2[i] = s[i].concat(w)?;
            Some((s2, Q::one()))
        })
    }

    /// Graded inner left action on arity two: `a * (x ⊗ y) = (-1)^{|a||x|} x ⊗ a y`.
    pub fn inner_left(&self, a: &Word) -> Tensor {
        assert_eq!(self.arity, 2);
        self.map_terms(2, |s| {
            let y = a.concat(&s[1])?;
            Some((smallvec::smallvec![s[0].clone(), y], signed(koszul(a.degree(), s[0].degree()))))
        })
    }

    /// Graded inner right action on arity two: `(x ⊗ y) * b = (-1)^{|b||y|} x b ⊗ y`.
    pub fn inner_right(&self, b: &Word) -> Tensor {
        assert_eq!(self.arity, 2);
        self.map_terms(2, |s| {
            let x = s[0].concat(b)?;
            Some((smallvec::smallvec![x, s[1].clone()], signed(koszul(b.degree(), s[1].degree()))))
        })
    }

    /// Ungraded permutation action `τ_s`: slot `k` of the result is slot
    /// `s^{-1}(k)` of the input.
    pub fn permute(&self, s: &Perm) -> Tensor {
        assert_eq!(s.len(), self.arity);
        self.map_terms(self.arity, |slots| Some((s.apply(slots), Q::one())))
    }

    /// Graded permutation action `σ_s`, with the Koszul sign of the slot degrees.
    pub fn permute_graded(&self, s: &Perm) -> Tensor {
        assert_eq!(s.len(), self.arity);
        self.map_terms(self.arity, |slots| {
            let degs: SmallVec<[u32; 4]> = slots.iter().map(Word::degree).collect();
            Some((s.apply(slots), signed(s.koszul_odd(&degs))))
        })
    }

    /// Full multiplication `x1 ⊗ … ⊗ xn ↦ x1 … xn`.
    pub fn mult(&self) -> Poly {
        let mut out = Poly::zero();
        for (s, c) in self.terms.iter() {
            let mut w = s[0].clone();
            let mut ok = true;
            for x in &s[1..] {
                match w.concat(x) {
                    Some(v) => w = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.add_term(w, c.clone());
            }
        }
        out
    }

    /// Multiplies slots `i` and `i+1` together.
    pub fn merge(&self, i: usize) -> Tensor {
        assert!(i + 1 < self.arity);
        self.map_terms(self.arity - 1, |s| {
            let m = s[i].concat(&s[i + 1])?;
            let mut s2 = Slots::new();
            s2.extend(s[..i].iter().cloned());
            s2.push(m);
            s2.extend(s[i + 2..].iter().cloned());
            Some((s2, Q::one()))
        })
    }

    /// `x ⊗ y ↦ (-1)^{|x||y|} y x`.
    pub fn circ(&self) -> Poly {
        assert_eq!(self.arity, 2);
        let mut out = Poly::zero();
        for (s, c) in self.terms.iter() {
            if let Some(w) = s[1].concat(&s[0]) {
                let sign = signed(koszul(s[0].degree(), s[1].degree()));
                out.add_term(w, c * sign);
            }
        }
        out
    }

    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.arity + other.arity);
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                let mut s = a.clone();
                s.extend(b.iter().cloned());
                out.add_slots(s, ca * cb);
            }
        }
        out
    }

    /// Replaces slot `i` by the tensor `f(slot_i)` (of arity `k`), giving
    /// arity `n - 1 + k`. `f` receives the full slot tuple for sign needs.
    pub fn expand_slot(&self, i: usize, k: usize, mut f: impl FnMut(&Slots) -> Tensor) -> Tensor {
        let mut out = Tensor::zero(self.arity - 1 + k);
        for (s, c) in self.terms.iter() {
            let img = f(s);
            if img.is_zero() {
                continue;
            }
            assert_eq!(img.arity, k);
            for (t, ct) in img.terms.iter() {
                let mut s2 = Slots::new();
                s2.extend(s[..i].iter().cloned());
                s2.extend(t.iter().cloned());
                s2.extend(s[i + 1..].iter().cloned());
                out.add_slots(s2, c * ct);
            }
        }
        out
    }

    /// Total degree of each term, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut d = None;
        for (s, _) in self.terms.iter() {
            let x: u32 = s.iter().map(Word::degree).sum();
            match d {
                None => d = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        d
    }

    pub fn filter(&self, mut keep: impl FnMut(&Slots) -> bool) -> Tensor {
        self.map_terms(self.arity, |s| keep(s).then(|| (s.clone(), Q::one())))
    }
}

/// Zero tensors compare equal regardless of arity.
impl PartialEq for Tensor {
    fn eq(&self, other: &Tensor) -> bool {
        (self.is_zero() && other.is_zero()) || (self.arity == other.arity && self.terms == other.terms)
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}{:?}", self.arity, self.terms)
    }
}
