use std::fmt;

use smallvec::SmallVec;

/// Letter families. The derived ordering is the canonical one used for
/// cyclic representatives: algebra generators, then vector letters
/// (double derivations or algebroid basis elements), then dual letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    Gen,
    Vector,
    Form,
}

/// A single arrow of the (graded) quiver underlying a tensor algebra.
/// Vertices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: u16,
    pub src: u16,
    pub tgt: u16,
}

impl Letter {
    pub fn new(kind: LetterKind, index: u16, src: u16, tgt: u16) -> Self {
        Letter { kind, index, src, tgt }
    }

    pub fn gen(index: u16, src: u16, tgt: u16) -> Self {
        Self::new(LetterKind::Gen, index, src, tgt)
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            LetterKind::Gen => 0,
            _ => 1,
        }
    }
}

pub type Letters = SmallVec<[Letter; 4]>;

/// A path: either the trivial path at a vertex or a composable letter
/// sequence read left to right (`x` then `y` needs `tgt(x) == src(y)`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Letters,
    src: u16,
    tgt: u16,
}

impl Word {
    pub fn trivial(vertex: u16) -> Self {
        Word { letters: SmallVec::new(), src: vertex, tgt: vertex }
    }

    pub fn letter(l: Letter) -> Self {
        let mut letters = SmallVec::new();
        letters.push(l);
        Word { letters, src: l.src, tgt: l.tgt }
    }

    /// Builds a nonempty word, or `None` when some junction is incomposable.
    pub fn from_letters(letters: &[Letter]) -> Option<Self> {
        let first = letters.first()?;
        for w in letters.windows(2) {
            if w[0].tgt != w[1].src {
                return None;
            }
        }
        Some(Word { letters: letters.into(), src: first.src, tgt: letters[letters.len() - 1].tgt })
    }

    pub fn src(&self) -> u16 {
        self.src
    }

    pub fn tgt(&self) -> u16 {
        self.tgt
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.src == self.tgt
    }

    pub fn degree(&self) -> u32 {
        self.letters.iter().map(Letter::degree).sum()
    }

    /// Number of algebra-generator letters.
    pub fn weight(&self) -> u32 {
        self.letters.iter().filter(|l| l.kind == LetterKind::Gen).count() as u32
    }

    pub fn count_kind(&self, kind: LetterKind) -> usize {
        self.letters.iter().filter(|l| l.kind == kind).count()
    }

    pub fn concat(&self, other: &Word) -> Option<Word> {
        if self.tgt != other.src {
            return None;
        }
        if self.is_trivial() {
            return Some(other.clone());
        }
        if other.is_trivial() {
            return Some(self.clone());
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Some(Word { letters, src: self.src, tgt: other.tgt })
    }

    /// The subword on letter positions `start..end`; an empty range yields
    /// the trivial path at the corresponding junction.
    pub fn sub(&self, start: usize, end: usize) -> Word {
        debug_assert!(start <= end && end <= self.len());
        if start == end {
            let v = if start == 0 { self.src } else { self.letters[start - 1].tgt };
            return Word::trivial(v);
        }
        let letters: Letters = self.letters[start..end].into();
        Word { src: letters[0].src, tgt: letters[letters.len() - 1].tgt, letters }
    }

    pub fn prefix_degree(&self, end: usize) -> u32 {
        self.letters[..end].iter().map(Letter::degree).sum()
    }

    /// Rotation moving the first `k` letters to the end (closed words only).
    pub fn rotate(&self, k: usize) -> Word {
        let n = self.len();
        if n == 0 || k % n == 0 {
            return self.clone();
        }
        let mut letters: Letters = SmallVec::with_capacity(n);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word { src: letters[0].src, tgt: letters[n - 1].tgt, letters }
    }

    /// Replaces every letter by the image under `f` (an endpoint-preserving
    /// relabelling).
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        let letters: Letters = self.letters.iter().map(|&l| f(l)).collect();
        Word { letters, src: self.src, tgt: self.tgt }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e{}", self.src + 1);
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            let tag = match l.kind {
                LetterKind::Gen => "g",
                LetterKind::Vector => "v",
                LetterKind::Form => "f",
            };
            write!(f, "{}{}", tag, l.index)?;
        }
        Ok(())
    }
}
