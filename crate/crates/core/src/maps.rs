//! Endofunctions, permutations and pair-maps on `{0, .., n-1}`.
//!
//! All tables are dense and 0-based. Values are immutable once built; every
//! operation returns a fresh value.

use std::fmt;

use crate::error::{Error, Result};

fn check_range(table: &[usize], n: usize) -> Result<()> {
    match table.iter().find(|&&v| v >= n) {
        Some(&index) => Err(Error::OutOfRange { index, n }),
        None => Ok(()),
    }
}

fn check_same(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left, right })
    }
}

/// Rearranges `p` into the next permutation in lexicographic order.
///
/// Returns `false` (and leaves `p` sorted ascending) once the last
/// permutation has been passed.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A self-map `f: X -> X` of a finite set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoMap {
    map: Vec<usize>,
}

impl fmt::Debug for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndoMap{:?}", self.map)
    }
}

impl EndoMap {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::EmptySet);
        }
        check_range(&map, map.len())?;
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "empty set");
        Self { map: (0..n).collect() }
    }

    pub fn constant(n: usize, c: usize) -> Self {
        assert!(c < n, "constant {c} out of range for n = {n}");
        Self { map: vec![c; n] }
    }

    /// The cycle `x -> x + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        assert!(n > 0, "empty set");
        Self { map: (0..n).map(|x| (x + 1) % n).collect() }
    }

    /// Decodes `code` as a base-`n` digit string (least significant digit is
    /// `f(0)`). Used to walk all `n^n` maps.
    pub fn from_index(n: usize, mut code: u64) -> Self {
        let mut map = Vec::with_capacity(n);
        for _ in 0..n {
            map.push((code % n as u64) as usize);
            code /= n as u64;
        }
        Self { map }
    }

    /// Iterator over all `n^n` self-maps in index order.
    pub fn all(n: usize) -> impl Iterator<Item = EndoMap> {
        let total = (n as u64).pow(n as u32);
        (0..total).map(move |c| EndoMap::from_index(n, c))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    /// `self ∘ g`, i.e. `x -> self(g(x))`.
    pub fn compose(&self, g: &EndoMap) -> Result<EndoMap> {
        check_same(self.len(), g.len())?;
        Ok(EndoMap { map: g.map.iter().map(|&y| self.map[y]).collect() })
    }

    /// `σ ∘ self ∘ σ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Perm) -> Result<EndoMap> {
        check_same(sigma.len(), self.len())?;
        let mut map = vec![0; self.len()];
        for x in 0..self.len() {
            map[sigma.apply(x)] = sigma.apply(self.map[x]);
        }
        Ok(EndoMap { map })
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().all(|&y| self.map[y] == y)
    }

    /// `f^k(x)`, with `f^0(x) = x`.
    pub fn iterate(&self, k: u64, x: usize) -> Result<usize> {
        if x >= self.len() {
            return Err(Error::OutOfRange { index: x, n: self.len() });
        }
        // Walk until the orbit repeats, then reduce k modulo the cycle.
        let n = self.len();
        let mut seen = vec![usize::MAX; n];
        let mut cur = x;
        let mut step = 0u64;
        while step < k {
            if seen[cur] != usize::MAX {
                let period = step - seen[cur] as u64;
                let rest = (k - step) % period;
                for _ in 0..rest {
                    cur = self.map[cur];
                }
                return Ok(cur);
            }
            seen[cur] = step as usize;
            cur = self.map[cur];
            step += 1;
        }
        Ok(cur)
    }

    /// `f^k` as a map.
    pub fn power(&self, k: u64) -> EndoMap {
        EndoMap { map: (0..self.len()).map(|x| self.iterate(k, x).expect("in range")).collect() }
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.len()];
        for &y in &self.map {
            if hit[y] {
                return false;
            }
            hit[y] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        self.is_bijective()
    }

    pub fn to_perm(&self) -> Option<Perm> {
        Perm::new(self.map.clone()).ok()
    }

    /// Sorted list of the distinct values of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        (0..self.len()).filter(|&y| hit[y]).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.map.iter().all(|&y| y == self.map[0])
    }

    pub fn commutes_with(&self, sigma: &Perm) -> bool {
        (0..self.len()).all(|x| sigma.apply(self.map[x]) == self.map[sigma.apply(x)])
    }
}

/// A permutation of `{0, .., n-1}` together with its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    fwd: Vec<usize>,
    inv: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.fwd)
    }
}

impl Perm {
    pub fn new(fwd: Vec<usize>) -> Result<Self> {
        let n = fwd.len();
        if n == 0 {
            return Err(Error::EmptySet);
        }
        check_range(&fwd, n)?;
        let mut inv = vec![usize::MAX; n];
        for (x, &y) in fwd.iter().enumerate() {
            if inv[y] != usize::MAX {
                return Err(Error::NotAPermutation { len: n });
            }
            inv[y] = x;
        }
        Ok(Self { fwd, inv })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "empty set");
        let fwd: Vec<usize> = (0..n).collect();
        Self { inv: fwd.clone(), fwd }
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        let mut cur: Option<Vec<usize>> = Some((0..n).collect());
        std::iter::from_fn(move || {
            let p = cur.take()?;
            let mut next = p.clone();
            if next_permutation(&mut next) {
                cur = Some(next);
            }
            Some(Perm::new(p).expect("permutation"))
        })
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.fwd[x]
    }

    #[inline]
    pub fn apply_inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.fwd
    }

    pub fn inverse(&self) -> Perm {
        Perm { fwd: self.inv.clone(), inv: self.fwd.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        check_same(self.len(), other.len())?;
        let fwd: Vec<usize> = other.fwd.iter().map(|&y| self.fwd[y]).collect();
        let mut inv = vec![0; fwd.len()];
        for (x, &y) in fwd.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Perm { fwd, inv })
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn to_endo(&self) -> EndoMap {
        EndoMap { map: self.fwd.clone() }
    }

    /// Multiplicative order, computed as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, len| num_integer::lcm(acc, len as u64))
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.fwd[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }
}

/// A map `R: X×X -> X×X`, stored as `R(x, y) = (l[x][y], r[x][y])`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairMap {
    n: usize,
    l: Vec<usize>,
    r: Vec<usize>,
}

impl fmt::Debug for PairMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairMap(n={}, l={:?}, r={:?})", self.n, self.l, self.r)
    }
}

impl PairMap {
    /// Builds from row-major `n×n` tables.
    pub fn new(n: usize, l: Vec<usize>, r: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySet);
        }
        check_same(l.len(), n * n)?;
        check_same(r.len(), n * n)?;
        check_range(&l, n)?;
        check_range(&r, n)?;
        Ok(Self { n, l, r })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> (usize, usize)) -> Result<Self> {
        let mut l = Vec::with_capacity(n * n);
        let mut r = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (a, b) = f(x, y);
                l.push(a);
                r.push(b);
            }
        }
        Self::new(n, l, r)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |x, y| (x, y)).expect("identity")
    }

    /// The flip `τ(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        Self::from_fn(n, |x, y| (y, x)).expect("flip")
    }

    /// All `n^(2n²)` pair-maps; only sensible for `n <= 2`.
    pub fn all(n: usize) -> impl Iterator<Item = PairMap> {
        let cells = 2 * n * n;
        let total = (n as u64).pow(cells as u32);
        (0..total).map(move |mut code| {
            let mut digits = Vec::with_capacity(cells);
            for _ in 0..cells {
                digits.push((code % n as u64) as usize);
                code /= n as u64;
            }
            let r = digits.split_off(n * n);
            PairMap { n, l: digits, r }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn left(&self, x: usize, y: usize) -> usize {
        self.l[x * self.n + y]
    }

    #[inline]
    pub fn right(&self, x: usize, y: usize) -> usize {
        self.r[x * self.n + y]
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.left(x, y), self.right(x, y))
    }

    pub fn left_table(&self) -> &[usize] {
        &self.l
    }

    pub fn right_table(&self) -> &[usize] {
        &self.r
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PairMap) -> Result<PairMap> {
        check_same(self.n, other.n)?;
        Self::from_fn(self.n, |x, y| {
            let (u, v) = other.apply(x, y);
            self.apply(u, v)
        })
    }

    /// `τ ∘ self ∘ τ`.
    pub fn flipped(&self) -> PairMap {
        Self::from_fn(self.n, |x, y| {
            let (u, v) = self.apply(y, x);
            (v, u)
        })
        .expect("flip conjugate")
    }

    /// Transport along `σ`: the pair-map `(σ×σ) ∘ R ∘ (σ×σ)⁻¹`.
    pub fn relabel(&self, sigma: &Perm) -> Result<PairMap> {
        check_same(self.n, sigma.len())?;
        let n = self.n;
        let mut l = vec![0; n * n];
        let mut r = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = self.apply(x, y);
                let idx = sigma.apply(x) * n + sigma.apply(y);
                l[idx] = sigma.apply(a);
                r[idx] = sigma.apply(b);
            }
        }
        Ok(PairMap { n, l, r })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.apply(x, y) == (x, y)))
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.n * self.n];
        for (a, b) in self.l.iter().zip(&self.r) {
            let idx = a * self.n + b;
            if hit[idx] {
                return false;
            }
            hit[idx] = true;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[usize]) -> EndoMap {
        EndoMap::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let c3 = e(&[1, 2, 0]);
        assert_eq!(EndoMap::identity(3).compose(&c3).unwrap(), c3);
        assert_eq!(c3.compose(&c3).unwrap(), e(&[2, 0, 1]));
        let swap = e(&[1, 0]);
        assert_eq!(EndoMap::constant(2, 0).compose(&swap).unwrap(), EndoMap::constant(2, 0));
        assert!(matches!(c3.compose(&swap), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn conjugate_examples() {
        let f = e(&[2, 2, 0, 1]);
        assert_eq!(f.conjugate_by(&Perm::identity(4)).unwrap(), f);
        let swap = Perm::new(vec![1, 0]).unwrap();
        assert_eq!(EndoMap::constant(2, 0).conjugate_by(&swap).unwrap(), EndoMap::constant(2, 1));
        let c = Perm::new(vec![1, 2, 0]).unwrap();
        assert_eq!(e(&[1, 2, 0]).conjugate_by(&c).unwrap(), e(&[1, 2, 0]));
    }

    #[test]
    fn idempotent_examples() {
        assert!(EndoMap::identity(3).is_idempotent());
        assert!(EndoMap::constant(4, 2).is_idempotent());
        assert!(!e(&[1, 0]).is_idempotent());
    }

    #[test]
    fn iterate_examples() {
        let f = e(&[3, 0, 1, 2]);
        for x in 0..4 {
            assert_eq!(f.iterate(0, x).unwrap(), x);
        }
        assert_eq!(e(&[1, 2, 0]).iterate(3, 0).unwrap(), 0);
        assert_eq!(EndoMap::constant(2, 0).iterate(5, 1).unwrap(), 0);
        assert!(matches!(f.iterate(1, 4), Err(Error::OutOfRange { index: 4, n: 4 })));
        // long iterate agrees with naive stepping
        let g = e(&[1, 2, 3, 1, 0]);
        let mut x = 4;
        for k in 0..40u64 {
            assert_eq!(g.iterate(k, 4).unwrap(), x);
            x = g.apply(x);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(EndoMap::new(vec![]), Err(Error::EmptySet));
        assert_eq!(EndoMap::new(vec![0, 2]), Err(Error::OutOfRange { index: 2, n: 2 }));
        assert_eq!(Perm::new(vec![0, 0]), Err(Error::NotAPermutation { len: 2 }));
        assert!(PairMap::new(2, vec![0; 3], vec![0; 4]).is_err());
    }

    #[test]
    fn conjugation_is_an_action_exhaustive() {
        for n in 1..=4 {
            let perms: Vec<Perm> = Perm::all(n).collect();
            for f in EndoMap::all(n) {
                for s in &perms {
                    let sf = f.conjugate_by(s).unwrap();
                    for t in &perms {
                        let st = s.compose(t).unwrap();
                        assert_eq!(f.conjugate_by(&st).unwrap(), f.conjugate_by(t).unwrap().conjugate_by(s).unwrap());
                    }
                    assert_eq!(sf.conjugate_by(&s.inverse()).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn compose_associative_exhaustive() {
        for n in 1..=3 {
            let all: Vec<EndoMap> = EndoMap::all(n).collect();
            for f in &all {
                for g in &all {
                    let fg = f.compose(g).unwrap();
                    for h in &all {
                        assert_eq!(fg.compose(h).unwrap(), f.compose(&g.compose(h).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn perm_enumeration_and_order() {
        assert_eq!(Perm::all(4).count(), 24);
        assert_eq!(Perm::all(1).count(), 1);
        let p = Perm::new(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn pair_map_basics() {
        assert_eq!(PairMap::all(2).count(), 256);
        let t = PairMap::flip(3);
        assert!(t.compose(&t).unwrap().is_identity());
        assert!(t.is_bijective());
        let s = Perm::new(vec![2, 0, 1]).unwrap();
        assert_eq!(t.relabel(&s).unwrap(), t);
    }
}
