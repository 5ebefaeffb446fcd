use num_traits::One;

use super::{LinComb, Poly, Q, Word};

/// Canonical representative of a word modulo graded commutators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

pub type CyclicPoly = LinComb<CyclicWord>;

fn rotation_sign_odd(w: &Word, k: usize) -> bool {
    let p = w.prefix_degree(k);
    let q = w.degree() - p;
    (p * q) % 2 == 1
}

/// Reduces a word modulo graded commutators. Returns `None` when the class
/// vanishes (open paths, or words equal to minus one of their rotations);
/// otherwise the least rotation and whether `w ≡ -rep`.
pub fn cyclic_reduce(w: &Word) -> Option<(CyclicWord, bool)> {
    if !w.is_closed() {
        return None;
    }
    let n = w.len();
    if n == 0 {
        return Some((CyclicWord(w.clone()), false));
    }
    let mut best = w.clone();
    let mut best_k = 0;
    for k in 1..n {
        let r = w.rotate(k);
        if r < best {
            best = r;
            best_k = k;
        }
    }
    for k in 1..n {
        if best.rotate(k) == best && rotation_sign_odd(&best, k) {
            return None;
        }
    }
    Some((CyclicWord(best), rotation_sign_odd(w, best_k)))
}

pub fn cyclic_reduce_poly(p: &Poly) -> CyclicPoly {
    let mut out = CyclicPoly::zero();
    for (w, c) in p.iter() {
        if let Some((cw, neg)) = cyclic_reduce(w) {
            out.add_term(cw, if neg { -c.clone() } else { c.clone() });
        }
    }
    out
}

pub fn cyclic_to_poly(c: &CyclicPoly) -> Poly {
    c.filter_map_keys(|cw| Some((cw.word().clone(), Q::one())))
}
