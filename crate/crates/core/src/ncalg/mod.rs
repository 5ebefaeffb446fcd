//! Exact noncommutative polynomials and tensors over a quiver base.

mod algebra;
mod cyclic;
mod lin;
mod perm;
pub mod poly;
mod tensor;
mod word;

pub use algebra::{AlgebraSpec, BaseRing, Generator};
pub use cyclic::{cyclic_reduce, cyclic_reduce_poly, cyclic_to_poly, CyclicPoly, CyclicWord};
pub use lin::LinComb;
pub use perm::Perm;
pub use poly::Poly;
pub use tensor::{Slots, Tensor};
pub use word::{Letter, LetterKind, Letters, Word};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// `(-1)^e` as a rational.
pub fn sign(e: u32) -> Q {
    if e % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

pub fn nc_mul(p: &Poly, q: &Poly) -> Poly {
    poly::mul(p, q)
}

/// `τ_s` or, when `graded`, `σ_s`.
pub fn perm_apply(s: &Perm, t: &Tensor, graded: bool) -> crate::error::Result<Tensor> {
    if s.len() != t.arity() && !t.is_zero() {
        return Err(crate::error::DpcError::Arity { expected: s.len(), found: t.arity() });
    }
    Ok(if graded { t.permute_graded(s) } else { t.permute(s) })
}

pub fn circ(t: &Tensor) -> crate::error::Result<Poly> {
    if t.arity() != 2 && !t.is_zero() {
        return Err(crate::error::DpcError::Arity { expected: 2, found: t.arity() });
    }
    if t.is_zero() {
        return Ok(Poly::zero());
    }
    Ok(t.circ())
}
