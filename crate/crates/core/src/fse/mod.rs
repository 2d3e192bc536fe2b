//! Set-theoretic solutions of the Frobenius–Separability equation
//! `R¹²R²³ = R²³R¹³ = R¹³R¹²`.
//!
//! Writing `R(x, y) = (x·y, x∗y)`, a map is a solution iff `(X, ·)` is a
//! Kimura semigroup and `x∗y = y·ϑ(x)` for a quasi-endomorphism `ϑ`; the
//! table is then fixed by the squaring map `h`, the band `Im h ≅ A×B` and a
//! self-map `ϑ′` of `B` (see [`Quadruple`]).

mod build;
mod classify;
mod iso;

pub use build::{build_solution, SolutionKind};
pub use classify::{classify, power, power_iterated, powers_all_solutions, solution_order, ClassFlags};
pub use iso::{
    are_isomorphic, aut_brute, aut_group, canonical_form, canonical_representative, is_decomposable, AutGroup,
    Decomposition, MAX_DECOMPOSE_N,
};

use crate::error::{Error, Result};
use crate::kimura::{
    is_quasi_endo, kimura_structure, kimura_witness, quasi_endo_witness, KimuraStructure, OpTable, RectFactorization,
};
use crate::maps::{EndoMap, PairMap};

/// Outcome of [`verify_fs`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FsReport {
    pub valid: bool,
    /// First failing triple in lexicographic order.
    pub witness: Option<(usize, usize, usize)>,
    /// Whether the triple-wise check and the structural check agree.
    pub path_agreement: bool,
}

fn fs_direct_holds(pm: &PairMap, x: usize, y: usize, z: usize) -> bool {
    let (l, r) = (|a, b| pm.left(a, b), |a, b| pm.right(a, b));
    // R¹²R²³, R²³R¹³, R¹³R¹² applied to (x, y, z)
    let yz = l(y, z);
    let first = (l(x, yz), r(x, yz), r(y, z));
    let xz = r(x, z);
    let second = (l(x, z), l(y, xz), r(y, xz));
    let xy = l(x, y);
    let third = (l(xy, z), r(x, y), r(xy, z));
    first == second && second == third
}

fn fs_direct_witness(pm: &PairMap) -> Option<(usize, usize, usize)> {
    let n = pm.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !fs_direct_holds(pm, x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Structural route: the left table is Kimura and
/// `x∗(y·z) = y·(x∗z) = x∗y`, `(x·y)∗z = y∗(x∗z) = y∗z`.
fn fs_structural_witness(pm: &PairMap) -> Option<(usize, usize, usize)> {
    let n = pm.n();
    let table = OpTable::new(n, pm.left_table().to_vec()).expect("entries in range");
    if let Some(w) = kimura_witness(&table) {
        return Some(w);
    }
    let (l, r) = (|a, b| pm.left(a, b), |a, b| pm.right(a, b));
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let middle = r(x, l(y, z)) == l(y, r(x, z)) && l(y, r(x, z)) == r(x, y);
                let last = r(l(x, y), z) == r(y, r(x, z)) && r(y, r(x, z)) == r(y, z);
                if !(middle && last) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn verify_fs(pm: &PairMap) -> FsReport {
    let direct = fs_direct_witness(pm);
    let structural = fs_structural_witness(pm);
    FsReport {
        valid: direct.is_none(),
        witness: direct.or(structural),
        path_agreement: direct.is_none() == structural.is_none(),
    }
}

/// `R¹²R²³R¹² = R²³R¹²R²³` on every triple.
pub fn verify_braid(pm: &PairMap) -> bool {
    let n = pm.n();
    let r12 = |(a, b, c): (usize, usize, usize)| {
        let (p, q) = pm.apply(a, b);
        (p, q, c)
    };
    let r23 = |(a, b, c): (usize, usize, usize)| {
        let (p, q) = pm.apply(b, c);
        (a, p, q)
    };
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| r12(r23(r12((x, y, z)))) == r23(r12(r23((x, y, z)))))))
}

/// A verified solution with its derived Kimura structure.
#[derive(Clone, Debug)]
pub struct Solution {
    pm: PairMap,
    table: OpTable,
    structure: KimuraStructure,
    theta: EndoMap,
}

impl PartialEq for Solution {
    fn eq(&self, other: &Self) -> bool {
        self.pm == other.pm
    }
}

impl Eq for Solution {}

impl Solution {
    pub fn new(pm: PairMap) -> Result<Self> {
        let report = verify_fs(&pm);
        assert!(report.path_agreement, "solution checks disagree on {pm:?}");
        if let Some(witness) = report.witness {
            return Err(Error::NotASolution { witness });
        }
        let n = pm.n();
        let table = OpTable::new(n, pm.left_table().to_vec())?;
        let structure = kimura_structure(&table)?;
        let theta = EndoMap::new((0..n).map(|x| pm.right(x, 0)).collect())?;
        Ok(Self { pm, table, structure, theta })
    }

    pub fn n(&self) -> usize {
        self.pm.n()
    }

    pub fn pm(&self) -> &PairMap {
        &self.pm
    }

    pub fn into_pair_map(self) -> PairMap {
        self.pm
    }

    /// The operation `x·y`.
    pub fn table(&self) -> &OpTable {
        &self.table
    }

    pub fn structure(&self) -> &KimuraStructure {
        &self.structure
    }

    /// `ϑ(x) = x∗0`.
    pub fn theta(&self) -> &EndoMap {
        &self.theta
    }
}

/// `R(x, y) = (x·y, y·ϑ(x))`.
pub fn from_pointed(t: &OpTable, theta: &EndoMap) -> Result<Solution> {
    if let Some(witness) = kimura_witness(t) {
        return Err(Error::NotKimura { witness });
    }
    if theta.len() != t.n() {
        return Err(Error::SizeMismatch { left: theta.len(), right: t.n() });
    }
    if !is_quasi_endo(t, theta) {
        let witness = quasi_endo_witness(t, theta).expect("failure has a witness");
        return Err(Error::NotQuasiEndo { witness });
    }
    let pm = PairMap::from_fn(t.n(), |x, y| (t.get(x, y), t.get(y, theta.apply(x))))?;
    Solution::new(pm)
}

pub fn to_pointed(s: &Solution) -> (OpTable, EndoMap) {
    (s.table().clone(), s.theta().clone())
}

/// As [`to_pointed`], reading `ϑ(x) = x∗z₀`.
pub fn to_pointed_at(s: &Solution, z0: usize) -> Result<(OpTable, EndoMap)> {
    if z0 >= s.n() {
        return Err(Error::OutOfRange { index: z0, n: s.n() });
    }
    let theta = EndoMap::new((0..s.n()).map(|x| s.pm().right(x, z0)).collect())?;
    Ok((s.table().clone(), theta))
}

/// Normal form of a solution: idempotent `h`, a band structure on `Im h`
/// and `ϑ′: B → B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quadruple {
    h: EndoMap,
    rect: RectFactorization,
    theta_prime: EndoMap,
}

impl Quadruple {
    pub fn new(h: EndoMap, rect: RectFactorization, theta_prime: EndoMap) -> Result<Self> {
        let n = h.len();
        if let Some(witness) = (0..n).find(|&x| h.apply(h.apply(x)) != h.apply(x)) {
            return Err(Error::NotIdempotent { witness });
        }
        let image = h.image();
        if rect.a() * rect.b() != image.len() {
            return Err(Error::InvalidQuadruple(format!(
                "{}×{} band on an image of size {}",
                rect.a(),
                rect.b(),
                image.len()
            )));
        }
        for x in 0..n {
            let in_image = h.apply(x) == x;
            if in_image != rect.coord(x).is_some() {
                return Err(Error::InvalidQuadruple(format!("element {x}: coordinates must be given exactly on Im h")));
            }
        }
        if theta_prime.len() != rect.b() {
            return Err(Error::InvalidQuadruple(format!(
                "ϑ′ acts on {} points, B has {}",
                theta_prime.len(),
                rect.b()
            )));
        }
        Ok(Self { h, rect, theta_prime })
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &EndoMap {
        &self.h
    }

    pub fn rect(&self) -> &RectFactorization {
        &self.rect
    }

    pub fn a(&self) -> usize {
        self.rect.a()
    }

    pub fn b(&self) -> usize {
        self.rect.b()
    }

    pub fn theta_prime(&self) -> &EndoMap {
        &self.theta_prime
    }

    #[inline]
    fn pa(&self, x: usize) -> usize {
        self.rect.coord_a(self.h.apply(x))
    }

    #[inline]
    fn pb(&self, x: usize) -> usize {
        self.rect.coord_b(self.h.apply(x))
    }

    pub fn pair_map(&self) -> PairMap {
        PairMap::from_fn(self.n(), |x, y| {
            (
                self.rect.combine(self.pa(x), self.pb(y)),
                self.rect.combine(self.pa(y), self.theta_prime.apply(self.pb(x))),
            )
        })
        .expect("grid elements are in range")
    }
}

pub fn from_quadruple(q: &Quadruple) -> Result<Solution> {
    Solution::new(q.pair_map())
}

pub fn to_quadruple(s: &Solution) -> Quadruple {
    let st = s.structure();
    let (h, rect) = (st.h(), st.rect());
    let mut theta_prime = vec![usize::MAX; rect.b()];
    for x in 0..s.n() {
        let from = rect.coord_b(h.apply(x));
        let to = rect.coord_b(h.apply(s.theta().apply(x)));
        assert!(theta_prime[from] == usize::MAX || theta_prime[from] == to, "ϑ does not descend to B");
        theta_prime[from] = to;
    }
    let theta_prime = EndoMap::new(theta_prime).expect("every B-coordinate is hit by Im h");
    Quadruple::new(h.clone(), rect.clone(), theta_prime).expect("derived quadruple is valid")
}
