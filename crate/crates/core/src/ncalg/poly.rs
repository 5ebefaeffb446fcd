use num_traits::One;

use super::{LinComb, Q, Word};

/// Element of a (graded) path algebra.
pub type Poly = LinComb<Word>;

pub fn word_poly(w: Word) -> Poly {
    Poly::basis(w)
}

/// The unit: the sum of all trivial paths.
pub fn unit(vertices: u16) -> Poly {
    (0..vertices).map(|v| (Word::trivial(v), Q::one())).collect()
}

pub fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (a, ca) in p.iter() {
        for (b, cb) in q.iter() {
            if let Some(w) = a.concat(b) {
                out.add_term(w, ca * cb);
            }
        }
    }
    out
}

pub fn mul_word_left(w: &Word, p: &Poly) -> Poly {
    p.filter_map_keys(|b| w.concat(b).map(|x| (x, Q::one())))
}

pub fn mul_word_right(p: &Poly, w: &Word) -> Poly {
    p.filter_map_keys(|a| a.concat(w).map(|x| (x, Q::one())))
}

pub fn pow(p: &Poly, n: u32, vertices: u16) -> Poly {
    let mut out = unit(vertices);
    for _ in 0..n {
        out = mul(&out, p);
    }
    out
}

/// Graded commutator `pq - (-1)^{|p||q|} qp` for homogeneous words.
pub fn graded_commutator(a: &Word, b: &Word) -> Poly {
    let mut out = Poly::zero();
    if let Some(w) = a.concat(b) {
        out.add_term(w, Q::one());
    }
    if let Some(w) = b.concat(a) {
        let s = if (a.degree() * b.degree()) % 2 == 1 { Q::one() } else { -Q::one() };
        out.add_term(w, s);
    }
    out
}

/// Splits a polynomial into its components of fixed word degree.
pub fn homogeneous_part(p: &Poly, degree: u32) -> Poly {
    p.filter_map_keys(|w| (w.degree() == degree).then(|| (w.clone(), Q::one())))
}
