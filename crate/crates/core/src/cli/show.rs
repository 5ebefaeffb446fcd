//! Human-readable printing of words, polynomials and tensors.

use num_traits::One;

use crate::algebroid::AlgebroidSpec;
use crate::ncalg::{AlgebraSpec, LetterKind, Poly, Tensor, Word, Q};

pub struct Namer {
    gens: Vec<String>,
    vectors: Vec<String>,
    forms: Vec<String>,
    vertices: u16,
}

impl Namer {
    /// Vector letters print as `D<gen>`.
    pub fn for_algebra(alg: &AlgebraSpec) -> Self {
        let gens: Vec<String> = (0..alg.gen_count()).map(|i| alg.gen_name(i).to_string()).collect();
        let vectors = gens.iter().map(|g| format!("D{g}")).collect();
        Namer { gens, vectors, forms: vec![], vertices: alg.vertices() }
    }

    /// Vector letters print as basis names, form letters as `λ<name>`.
    pub fn for_algebroid(spec: &AlgebroidSpec) -> Self {
        let mut n = Self::for_algebra(spec.algebra());
        n.vectors = spec.basis().iter().map(|b| b.name.clone()).collect();
        n.forms = n.vectors.iter().map(|b| format!("λ{b}")).collect();
        n
    }

    pub fn word(&self, w: &Word) -> String {
        if w.is_trivial() {
            return if self.vertices == 1 { "1".into() } else { format!("e({})", w.src() + 1) };
        }
        let mut parts: Vec<(String, usize)> = vec![];
        for l in w.letters() {
            let i = l.index as usize;
            let name = match l.kind {
                LetterKind::Gen => self.gens.get(i).cloned(),
                LetterKind::Vector => self.vectors.get(i).cloned(),
                LetterKind::Form => self.forms.get(i).cloned(),
            }
            .unwrap_or_else(|| format!("{l:?}"));
            match parts.last_mut() {
                Some((n, k)) if *n == name => *k += 1,
                _ => parts.push((name, 1)),
            }
        }
        let s: Vec<String> = parts.into_iter().map(|(n, k)| if k == 1 { n } else { format!("{n}^{k}") }).collect();
        s.join("*")
    }

    fn term(&self, c: &Q, body: String, first: bool) -> String {
        let neg = *c < Q::from_integer(0.into());
        let a = if neg { -c.clone() } else { c.clone() };
        let mag = if a.is_one() { body } else { format!("{a}*{body}") };
        match (first, neg) {
            (true, false) => mag,
            (true, true) => format!("-{mag}"),
            (false, false) => format!(" + {mag}"),
            (false, true) => format!(" - {mag}"),
        }
    }

    pub fn poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.iter().enumerate().map(|(i, (w, c))| self.term(c, self.word(w), i == 0)).collect()
    }

    pub fn tensor(&self, t: &Tensor) -> String {
        if t.is_zero() {
            return "0".into();
        }
        t.iter()
            .enumerate()
            .map(|(i, (s, c))| {
                let body: Vec<String> = s.iter().map(|w| self.word(w)).collect();
                self.term(c, body.join("#"), i == 0)
            })
            .collect()
    }

    pub fn words(&self, ws: &[Word]) -> String {
        ws.iter().map(|w| self.word(w)).collect::<Vec<_>>().join(", ")
    }
}
