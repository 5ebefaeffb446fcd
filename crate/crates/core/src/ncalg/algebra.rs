use std::collections::HashMap;

use super::{Letter, LetterKind, Poly, Word};
use crate::error::{DpcError, Result};

/// `B = k e_1 ⊕ … ⊕ k e_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    idempotents: u16,
}

impl BaseRing {
    pub fn new(idempotents: u16) -> Result<Self> {
        if idempotents == 0 {
            return Err(DpcError::Structure("base ring needs at least one idempotent".into()));
        }
        Ok(BaseRing { idempotents })
    }

    pub fn field() -> Self {
        BaseRing { idempotents: 1 }
    }

    pub fn count(&self) -> u16 {
        self.idempotents
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub src: u16,
    pub tgt: u16,
}

/// Free path algebra of a quiver over `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    base: BaseRing,
    gens: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl AlgebraSpec {
    pub fn new(base: BaseRing, gens: Vec<Generator>) -> Result<Self> {
        let mut by_name = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.src >= base.count() || g.tgt >= base.count() {
                return Err(DpcError::Structure(format!("generator {} has a vertex outside the base", g.name)));
            }
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(DpcError::Structure(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(AlgebraSpec { base, gens, by_name })
    }

    /// Free algebra `k<x1, …, xn>` on the given names.
    pub fn free(names: &[&str]) -> Self {
        let gens = names.iter().map(|n| Generator { name: n.to_string(), src: 0, tgt: 0 }).collect();
        Self::new(BaseRing::field(), gens).expect("valid free algebra")
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn vertices(&self) -> u16 {
        self.base.count()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn gen_letter(&self, i: usize) -> Letter {
        let g = &self.gens[i];
        Letter::new(LetterKind::Gen, i as u16, g.src, g.tgt)
    }

    /// The double derivation letter `∂_x`; it runs from `t(x)` to `s(x)` so
    /// that `a ∂_x b` is composable exactly when `(a ∂_x b)(x) = b ⊗ a` is.
    pub fn der_letter(&self, i: usize) -> Letter {
        let g = &self.gens[i];
        Letter::new(LetterKind::Vector, i as u16, g.tgt, g.src)
    }

    pub fn gen_letters(&self) -> Vec<Letter> {
        (0..self.gens.len()).map(|i| self.gen_letter(i)).collect()
    }

    pub fn der_letters(&self) -> Vec<Letter> {
        (0..self.gens.len()).map(|i| self.der_letter(i)).collect()
    }

    pub fn gen(&self, name: &str) -> Poly {
        let i = self.index_of(name).unwrap_or_else(|| panic!("unknown generator {name}"));
        Poly::basis(Word::letter(self.gen_letter(i)))
    }

    pub fn der(&self, name: &str) -> Poly {
        let i = self.index_of(name).unwrap_or_else(|| panic!("unknown generator {name}"));
        Poly::basis(Word::letter(self.der_letter(i)))
    }

    pub fn one(&self) -> Poly {
        super::poly::unit(self.vertices())
    }

    pub fn idempotent(&self, v: u16) -> Poly {
        Poly::basis(Word::trivial(v))
    }

    /// Word built from generator names, `None` if incomposable.
    pub fn word(&self, names: &[&str]) -> Option<Word> {
        let letters: Vec<Letter> = names.iter().map(|n| self.gen_letter(self.index_of(n).expect("generator"))).collect();
        Word::from_letters(&letters)
    }

    /// All nonempty generator words of length at most `max_len`.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Word> = (0..self.vertices()).map(Word::trivial).collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in self.gen_letters() {
                    if let Some(v) = w.concat(&Word::letter(l)) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// `true` when the base is `k` and no generator names collide.
    pub fn is_free_over_field(&self) -> bool {
        self.base.count() == 1
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.gens[i].name
    }
}
