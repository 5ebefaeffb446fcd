use smallvec::SmallVec;

/// A permutation of `0..n`, stored as its image vector `s[i] = s(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    /// The cycle `(c1 c2 … ck)` on `n` points, written with one-based labels.
    pub fn cycle(n: usize, labels: &[usize]) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        for (i, &a) in labels.iter().enumerate() {
            let b = labels[(i + 1) % labels.len()];
            p[a - 1] = b - 1;
        }
        Perm(p)
    }

    /// The long cycle `(1 2 … n)`.
    pub fn rotation(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut out = Perm::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Moves item `i` to position `s(i)`.
    pub fn apply<T: Clone, const N: usize>(&self, items: &SmallVec<[T; N]>) -> SmallVec<[T; N]>
    where
        [T; N]: smallvec::Array<Item = T>,
    {
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, x) in items.iter().enumerate() {
            out[self.0[i]] = Some(x.clone());
        }
        out.into_iter().map(|x| x.expect("permutation image")).collect()
    }

    /// Parity of the Koszul sign picked up when reordering items of the
    /// given degrees by this permutation.
    pub fn koszul_odd(&self, degrees: &[u32]) -> bool {
        let n = self.0.len();
        let mut odd = false;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] && degrees[i] % 2 == 1 && degrees[j] % 2 == 1 {
                    odd = !odd;
                }
            }
        }
        odd
    }

    pub fn sign_odd(&self) -> bool {
        self.koszul_odd(&vec![1; self.len()])
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        permute_rec(&mut cur, 0, &mut out);
        out
    }
}

fn permute_rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm(cur.clone()));
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute_rec(cur, k + 1, out);
        cur.swap(k, i);
    }
}
