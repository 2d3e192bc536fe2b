//! Finite Kimura semigroups (`xyz = xz`) and rectangular bands (`xyx = x`).
//!
//! A Kimura table is determined by its squaring map `h(x) = x·x`, which is
//! idempotent, together with a rectangular-band structure on `Im h`; the
//! product is `x·y = (A-coordinate of h(x), B-coordinate of h(y))`.
//! [`kimura_structure`] extracts exactly this data.

use crate::canon::{canonical_min, render_tables};
use crate::error::{Error, Result};
use crate::maps::{EndoMap, Perm};

/// Multiplication table of a binary operation, `m[x][y] = x·y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OpTable {
    n: usize,
    m: Vec<usize>,
}

impl OpTable {
    pub fn new(n: usize, m: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySet);
        }
        if m.len() != n * n {
            return Err(Error::SizeMismatch { left: m.len(), right: n * n });
        }
        if let Some(&index) = m.iter().find(|&&v| v >= n) {
            return Err(Error::OutOfRange { index, n });
        }
        Ok(Self { n, m })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut m = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                m.push(f(x, y));
            }
        }
        Self::new(n, m)
    }

    /// Decodes a base-`n` index into a table; walks all `n^(n²)` tables.
    pub fn from_index(n: usize, mut code: u64) -> Self {
        let mut m = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            m.push((code % n as u64) as usize);
            code /= n as u64;
        }
        Self { n, m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.m[x * self.n + y]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.m
    }

    /// The squaring map `x -> x·x`.
    pub fn squares(&self) -> EndoMap {
        EndoMap::new((0..self.n).map(|x| self.get(x, x)).collect()).expect("in range")
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.get(self.get(x, y), z) == self.get(x, self.get(y, z)))))
    }

    /// Transport along `σ`.
    pub fn relabel(&self, sigma: &Perm) -> Result<OpTable> {
        if sigma.len() != self.n {
            return Err(Error::SizeMismatch { left: sigma.len(), right: self.n });
        }
        let n = self.n;
        let mut m = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                m[sigma.apply(x) * n + sigma.apply(y)] = sigma.apply(self.get(x, y));
            }
        }
        Ok(OpTable { n, m })
    }

    /// Whether `φ` is a semigroup endomorphism.
    pub fn is_endomorphism(&self, phi: &EndoMap) -> bool {
        phi.len() == self.n
            && (0..self.n)
                .all(|x| (0..self.n).all(|y| phi.apply(self.get(x, y)) == self.get(phi.apply(x), phi.apply(y))))
    }

    fn element_keys(&self) -> Vec<[usize; 6]> {
        let n = self.n;
        let mut as_product = vec![0; n];
        for &v in &self.m {
            as_product[v] += 1;
        }
        (0..n)
            .map(|x| {
                let mut row = vec![false; n];
                let mut col = vec![false; n];
                let mut left_fixed = 0;
                let mut right_fixed = 0;
                for y in 0..n {
                    row[self.get(x, y)] = true;
                    col[self.get(y, x)] = true;
                    left_fixed += usize::from(self.get(x, y) == x);
                    right_fixed += usize::from(self.get(y, x) == x);
                }
                [
                    usize::from(self.get(x, x) != x),
                    as_product[x],
                    left_fixed,
                    right_fixed,
                    row.iter().filter(|&&b| b).count(),
                    col.iter().filter(|&&b| b).count(),
                ]
            })
            .collect()
    }

    /// Relabeling-invariant code: the least serialized table over all
    /// relabelings, searched within classes of an invariant row profile.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.canonical_labeling().0
    }

    /// The canonical code together with a relabeling that produces it.
    pub fn canonical_labeling(&self) -> (Vec<u8>, Perm) {
        let keys = self.element_keys();
        canonical_min(&keys, |s| render_tables(self.n, &[&self.m], s))
    }

    /// The table in canonical labeling.
    pub fn canonical_table(&self) -> OpTable {
        let (_, sigma) = self.canonical_labeling();
        self.relabel(&sigma).expect("same size")
    }
}

/// First triple violating `(x·y)·z = x·z` or `x·(y·z) = x·z`.
pub fn kimura_witness(t: &OpTable) -> Option<(usize, usize, usize)> {
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            for z in 0..n {
                let xz = t.get(x, z);
                if t.get(xy, z) != xz || t.get(x, t.get(y, z)) != xz {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_kimura(t: &OpTable) -> bool {
    kimura_witness(t).is_none()
}

pub fn rectangular_witness(t: &OpTable) -> Option<(usize, usize)> {
    let n = t.n();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| t.get(t.get(x, y), x) != x)
}

pub fn is_rectangular(t: &OpTable) -> bool {
    rectangular_witness(t).is_none()
}

/// Identification of a rectangular (sub)semigroup with an `a×b` band.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RectFactorization {
    a: usize,
    b: usize,
    coords: Vec<Option<(usize, usize)>>,
    grid: Vec<usize>,
}

impl RectFactorization {
    /// Builds from a grid listing the element at each `(i, j)` cell, row-major.
    pub fn from_grid(n: usize, a: usize, b: usize, grid: Vec<usize>) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::EmptySet);
        }
        if grid.len() != a * b {
            return Err(Error::SizeMismatch { left: grid.len(), right: a * b });
        }
        let mut coords = vec![None; n];
        for (cell, &x) in grid.iter().enumerate() {
            if x >= n {
                return Err(Error::OutOfRange { index: x, n });
            }
            if coords[x].is_some() {
                return Err(Error::InvalidParams(format!("element {x} appears twice in the grid")));
            }
            coords[x] = Some((cell / b, cell % b));
        }
        Ok(Self { a, b, coords, grid })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn coord(&self, x: usize) -> Option<(usize, usize)> {
        self.coords.get(x).copied().flatten()
    }

    pub fn coord_a(&self, x: usize) -> usize {
        self.coord(x).expect("element outside the band").0
    }

    pub fn coord_b(&self, x: usize) -> usize {
        self.coord(x).expect("element outside the band").1
    }

    /// Element with coordinates `(i, j)`.
    #[inline]
    pub fn combine(&self, i: usize, j: usize) -> usize {
        self.grid[i * self.b + j]
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }
}

/// Factors the rectangular subsemigroup on `support` (sorted, closed under
/// the operation). A-classes are the distinct sets `xS`, B-classes the
/// distinct sets `Sx`, both numbered by first appearance.
fn factorize_on(t: &OpTable, support: &[usize]) -> Result<RectFactorization> {
    let n = t.n();
    for &x in support {
        for &y in support {
            if t.get(t.get(x, y), x) != x {
                return Err(Error::NotRectangular { witness: (x, y) });
            }
        }
    }
    let mut row_sets: Vec<Vec<usize>> = Vec::new();
    let mut col_sets: Vec<Vec<usize>> = Vec::new();
    let mut pairs = Vec::with_capacity(support.len());
    for &x in support {
        let mut row: Vec<usize> = support.iter().map(|&y| t.get(x, y)).collect();
        let mut col: Vec<usize> = support.iter().map(|&y| t.get(y, x)).collect();
        row.sort_unstable();
        row.dedup();
        col.sort_unstable();
        col.dedup();
        let i = match row_sets.iter().position(|r| *r == row) {
            Some(i) => i,
            None => {
                row_sets.push(row);
                row_sets.len() - 1
            }
        };
        let j = match col_sets.iter().position(|c| *c == col) {
            Some(j) => j,
            None => {
                col_sets.push(col);
                col_sets.len() - 1
            }
        };
        pairs.push((x, i, j));
    }
    let (a, b) = (row_sets.len(), col_sets.len());
    if a * b != support.len() {
        return Err(Error::Inconsistent(format!("{a} row classes × {b} column classes != {} elements", support.len())));
    }
    let mut grid = vec![usize::MAX; a * b];
    for (x, i, j) in pairs {
        if grid[i * b + j] != usize::MAX {
            return Err(Error::Inconsistent("coordinates are not injective".into()));
        }
        grid[i * b + j] = x;
    }
    let f = RectFactorization::from_grid(n, a, b, grid)?;
    for &x in support {
        for &y in support {
            if f.combine(f.coord_a(x), f.coord_b(y)) != t.get(x, y) {
                return Err(Error::Inconsistent("factorization is not a band isomorphism".into()));
            }
        }
    }
    Ok(f)
}

/// Factors a rectangular table as an `a×b` rectangular band.
pub fn rect_factorize(t: &OpTable) -> Result<RectFactorization> {
    let support: Vec<usize> = (0..t.n()).collect();
    factorize_on(t, &support)
}

/// The squaring map, band structure on its image and the fiber partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KimuraStructure {
    h: EndoMap,
    rect: RectFactorization,
    fibers: Vec<Vec<usize>>,
}

impl KimuraStructure {
    pub fn h(&self) -> &EndoMap {
        &self.h
    }

    pub fn rect(&self) -> &RectFactorization {
        &self.rect
    }

    /// `fibers()[r] = h⁻¹(r)`; empty for `r` outside `Im h`.
    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn image(&self) -> Vec<usize> {
        self.h.image()
    }

    /// `x·y` rebuilt from the structure data.
    #[inline]
    pub fn product(&self, x: usize, y: usize) -> usize {
        let (i, _) = self.rect.coord(self.h.apply(x)).expect("h lands in the band");
        let (_, j) = self.rect.coord(self.h.apply(y)).expect("h lands in the band");
        self.rect.combine(i, j)
    }
}

pub fn kimura_structure(t: &OpTable) -> Result<KimuraStructure> {
    if let Some(witness) = kimura_witness(t) {
        return Err(Error::NotKimura { witness });
    }
    let n = t.n();
    let h = t.squares();
    if !h.is_idempotent() {
        return Err(Error::Inconsistent("squaring map of a Kimura table is not idempotent".into()));
    }
    let image = h.image();
    for &x in &image {
        for &y in &image {
            if h.apply(t.get(x, y)) != t.get(x, y) {
                return Err(Error::Inconsistent("image of the squaring map is not closed".into()));
            }
        }
    }
    let rect = factorize_on(t, &image)?;
    let mut fibers = vec![Vec::new(); n];
    for x in 0..n {
        fibers[h.apply(x)].push(x);
    }
    let s = KimuraStructure { h, rect, fibers };
    for x in 0..n {
        for y in 0..n {
            if s.product(x, y) != t.get(x, y) {
                return Err(Error::Inconsistent(format!("structure does not rebuild {x}·{y}")));
            }
        }
    }
    Ok(s)
}

/// Rebuilds the table `x·y = (A(h x), B(h y))` from an idempotent `h` and a
/// band on `Im h`.
pub fn table_from_structure(h: &EndoMap, rect: &RectFactorization) -> Result<OpTable> {
    if !h.is_idempotent() {
        let witness = (0..h.len()).find(|&x| h.apply(h.apply(x)) != h.apply(x)).unwrap_or(0);
        return Err(Error::NotIdempotent { witness });
    }
    for r in h.image() {
        if rect.coord(r).is_none() {
            return Err(Error::InvalidParams(format!("image element {r} has no band coordinates")));
        }
    }
    if rect.a() * rect.b() != h.image().len() {
        return Err(Error::InvalidParams("band size differs from |Im h|".into()));
    }
    OpTable::from_fn(h.len(), |x, y| rect.combine(rect.coord_a(h.apply(x)), rect.coord_b(h.apply(y))))
}

/// First pair with `y·ϑ(x·y) != y·ϑ(y)`.
pub fn quasi_endo_witness(t: &OpTable, theta: &EndoMap) -> Option<(usize, usize)> {
    let n = t.n();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| t.get(y, theta.apply(t.get(x, y))) != t.get(y, theta.apply(y)))
}

/// Whether `theta` is a quasi-endomorphism of the Kimura table `t`.
///
/// When it is, the stronger identity `z·ϑ(x·y) = z·ϑ(y)` is asserted too.
pub fn is_quasi_endo(t: &OpTable, theta: &EndoMap) -> bool {
    if theta.len() != t.n() || quasi_endo_witness(t, theta).is_some() {
        return false;
    }
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            let lhs = theta.apply(t.get(x, y));
            let rhs = theta.apply(y);
            for z in 0..n {
                assert_eq!(t.get(z, lhs), t.get(z, rhs), "quasi-endomorphism identity fails for a Kimura table");
            }
        }
    }
    true
}

/// Named constructions of Kimura tables.
#[derive(Clone, Debug)]
pub enum KimuraKind {
    LeftZero(usize),
    RightZero(usize),
    /// `x·y = f(x)` for idempotent `f`.
    FLeft(EndoMap),
    /// `x·y = f(y)` for idempotent `f`.
    FRight(EndoMap),
    /// `A×B` with `(a1, b1)·(a2, b2) = (a1, b2)`; element `(i, j)` is `i·b + j`.
    RectBand(usize, usize),
    /// Direct product; element `(s, t)` is `s·|T| + t`.
    Product(OpTable, OpTable),
    /// `(s, t)·(s', t') = (s·(t ▷ s'), t·t')` with `action[t]` an endomorphism
    /// of `s_table`; element `(s, t)` is `s·|T| + t`.
    Semidirect {
        s_table: OpTable,
        t_table: OpTable,
        action: Vec<EndoMap>,
    },
}

fn require_idempotent(f: &EndoMap) -> Result<()> {
    match (0..f.len()).find(|&x| f.apply(f.apply(x)) != f.apply(x)) {
        Some(witness) => Err(Error::NotIdempotent { witness }),
        None => Ok(()),
    }
}

pub fn build_kimura(kind: KimuraKind) -> Result<OpTable> {
    let table = match kind {
        KimuraKind::LeftZero(n) => OpTable::from_fn(n, |x, _| x)?,
        KimuraKind::RightZero(n) => OpTable::from_fn(n, |_, y| y)?,
        KimuraKind::FLeft(f) => {
            require_idempotent(&f)?;
            OpTable::from_fn(f.len(), |x, _| f.apply(x))?
        }
        KimuraKind::FRight(f) => {
            require_idempotent(&f)?;
            OpTable::from_fn(f.len(), |_, y| f.apply(y))?
        }
        KimuraKind::RectBand(a, b) => {
            if a == 0 || b == 0 {
                return Err(Error::EmptySet);
            }
            OpTable::from_fn(a * b, |x, y| (x / b) * b + y % b)?
        }
        KimuraKind::Product(s, t) => {
            for table in [&s, &t] {
                if let Some(witness) = kimura_witness(table) {
                    return Err(Error::NotKimura { witness });
                }
            }
            let nt = t.n();
            OpTable::from_fn(s.n() * nt, |x, y| s.get(x / nt, y / nt) * nt + t.get(x % nt, y % nt))?
        }
        KimuraKind::Semidirect { s_table, t_table, action } => build_semidirect(&s_table, &t_table, &action)?,
    };
    if let Some(witness) = kimura_witness(&table) {
        return Err(Error::NotKimura { witness });
    }
    Ok(table)
}

fn build_semidirect(s: &OpTable, t: &OpTable, action: &[EndoMap]) -> Result<OpTable> {
    let (ns, nt) = (s.n(), t.n());
    for table in [s, t] {
        if let Some(witness) = kimura_witness(table) {
            return Err(Error::NotKimura { witness });
        }
    }
    if action.len() != nt {
        return Err(Error::SizeMismatch { left: action.len(), right: nt });
    }
    for (ti, phi) in action.iter().enumerate() {
        if !s.is_endomorphism(phi) {
            return Err(Error::InvalidParams(format!("action of {ti} is not an endomorphism of S")));
        }
    }
    for t1 in 0..nt {
        for t2 in 0..nt {
            let composed = action[t1].compose(&action[t2])?;
            if composed != action[t.get(t1, t2)] {
                return Err(Error::InvalidParams(format!("action is not a semigroup morphism at ({t1}, {t2})")));
            }
        }
    }
    // s((t t') ▷ s') = s(t ▷ s')
    for s1 in 0..ns {
        for s2 in 0..ns {
            for t1 in 0..nt {
                for t2 in 0..nt {
                    let lhs = s.get(s1, action[t.get(t1, t2)].apply(s2));
                    let rhs = s.get(s1, action[t1].apply(s2));
                    if lhs != rhs {
                        return Err(Error::InvalidParams(format!(
                            "semidirect Kimura condition fails at s={s1}, s'={s2}, t={t1}, t'={t2}"
                        )));
                    }
                }
            }
        }
    }
    OpTable::from_fn(ns * nt, |x, y| {
        let (s1, t1) = (x / nt, x % nt);
        let (s2, t2) = (y / nt, y % nt);
        s.get(s1, action[t1].apply(s2)) * nt + t.get(t1, t2)
    })
}

/// The free Kimura semigroup on `k` letters: words of length 1 and 2, where a
/// product keeps only the first and last letter.
///
/// Generators come first (`0..k`), then the 2-letter word `ij` at `k + i·k + j`.
/// Returns the table and the generator indices.
pub fn free_kimura(k: usize) -> Result<(OpTable, Vec<usize>)> {
    if k == 0 {
        return Err(Error::EmptySet);
    }
    let first = |w: usize| if w < k { w } else { (w - k) / k };
    let last = |w: usize| if w < k { w } else { (w - k) % k };
    let table = OpTable::from_fn(k + k * k, |x, y| k + first(x) * k + last(y))?;
    Ok((table, (0..k).collect()))
}
