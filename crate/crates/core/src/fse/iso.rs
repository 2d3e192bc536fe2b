use std::collections::HashSet;

use num_bigint::BigUint;

use super::{to_quadruple, Solution};
use crate::canon::{canonical_min, render_tables};
use crate::error::{Error, Result};
use crate::maps::{PairMap, Perm};

/// Largest set searched by [`is_decomposable`].
pub const MAX_DECOMPOSE_N: usize = 20;
const MAX_BRUTE_AUT_N: usize = 8;
const MAX_STRUCTURAL_PAIRS: u128 = 5_000_000;

/// Relabeling invariants of an element, used to prune every search.
fn element_keys(s: &Solution) -> Vec<[usize; 12]> {
    let pm = s.pm();
    let n = pm.n();
    let st = s.structure();
    let q = to_quadruple(s);
    let (h, rect) = (st.h(), st.rect());
    let mut l_hits = vec![0; n];
    let mut r_hits = vec![0; n];
    for (&a, &b) in pm.left_table().iter().zip(pm.right_table()) {
        l_hits[a] += 1;
        r_hits[b] += 1;
    }
    let mut col_size = vec![0; rect.b()];
    let mut row_size = vec![0; rect.a()];
    let mut theta_in = vec![0; rect.b()];
    for x in 0..n {
        col_size[rect.coord_b(h.apply(x))] += 1;
        row_size[rect.coord_a(h.apply(x))] += 1;
    }
    for j in 0..rect.b() {
        theta_in[q.theta_prime().apply(j)] += 1;
    }
    (0..n)
        .map(|x| {
            let hx = h.apply(x);
            let (i, j) = rect.coord(hx).expect("image has coordinates");
            let count = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&y| f(y)).count();
            [
                usize::from(hx != x),
                st.fibers()[hx].len(),
                row_size[i],
                col_size[j],
                theta_in[j],
                usize::from(q.theta_prime().apply(j) == j),
                l_hits[x],
                r_hits[x],
                count(&|y| pm.left(x, y) == x),
                count(&|y| pm.right(x, y) == x),
                count(&|y| pm.right(y, x) == x),
                usize::from(pm.right(x, x) == x),
            ]
        })
        .collect()
}

/// Backtracking isomorphism search with forced-image propagation.
struct Matcher<'a> {
    p: &'a PairMap,
    q: &'a PairMap,
    keys_p: &'a [[usize; 12]],
    keys_q: &'a [[usize; 12]],
    fwd: Vec<usize>,
    inv: Vec<usize>,
    trail: Vec<usize>,
}

impl Matcher<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.fwd[x] != usize::MAX {
            return self.fwd[x] == y;
        }
        if self.inv[y] != usize::MAX || self.keys_p[x] != self.keys_q[y] {
            return false;
        }
        self.fwd[x] = y;
        self.inv[y] = x;
        self.trail.push(x);
        let assigned = self.trail.len();
        for i in 0..assigned {
            let z = self.trail[i];
            for (u, v) in [(x, z), (z, x)] {
                let (l, r) = self.p.apply(u, v);
                let (l2, r2) = self.q.apply(self.fwd[u], self.fwd[v]);
                if !self.assign(l, l2) || !self.assign(r, r2) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().expect("nonempty");
            self.inv[self.fwd[x]] = usize::MAX;
            self.fwd[x] = usize::MAX;
        }
    }

    fn search(&mut self) -> bool {
        let Some(x) = (0..self.fwd.len()).find(|&x| self.fwd[x] == usize::MAX) else {
            return true;
        };
        for y in 0..self.inv.len() {
            if self.inv[y] != usize::MAX || self.keys_p[x] != self.keys_q[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.search() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// A relabeling `σ` with `(σ×σ)∘R₁ = R₂∘(σ×σ)`, if one exists.
pub fn are_isomorphic(s1: &Solution, s2: &Solution) -> Option<Perm> {
    let n = s1.n();
    if n != s2.n() {
        return None;
    }
    let (k1, k2) = (element_keys(s1), element_keys(s2));
    let mut sorted1 = k1.clone();
    let mut sorted2 = k2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return None;
    }
    let mut m = Matcher {
        p: s1.pm(),
        q: s2.pm(),
        keys_p: &k1,
        keys_q: &k2,
        fwd: vec![usize::MAX; n],
        inv: vec![usize::MAX; n],
        trail: Vec::with_capacity(n),
    };
    if !m.search() {
        return None;
    }
    let sigma = Perm::new(m.fwd).expect("complete matching is a bijection");
    debug_assert_eq!(&s1.pm().relabel(&sigma).expect("same size"), s2.pm());
    Some(sigma)
}

/// Canonical code and a relabeling realising it.
pub(crate) fn canonical_labeling(s: &Solution) -> (Vec<u8>, Perm) {
    let keys = element_keys(s);
    let pm = s.pm();
    canonical_min(&keys, |sigma| render_tables(pm.n(), &[pm.left_table(), pm.right_table()], sigma))
}

/// Least serialized `(l, r)` table over relabelings; equal codes ⟺ isomorphic.
pub fn canonical_form(s: &Solution) -> Vec<u8> {
    canonical_labeling(s).0
}

/// The solution relabeled into canonical position.
pub fn canonical_representative(s: &Solution) -> Solution {
    let (_, sigma) = canonical_labeling(s);
    Solution::new(s.pm().relabel(&sigma).expect("same size")).expect("relabeling preserves solutions")
}

/// All automorphisms by filtering the full symmetric group.
pub fn aut_brute(s: &Solution) -> Result<Vec<Perm>> {
    let n = s.n();
    if n > MAX_BRUTE_AUT_N {
        return Err(Error::TooLarge { n, max: MAX_BRUTE_AUT_N, what: "brute-force automorphism search" });
    }
    let pm = s.pm();
    Ok(Perm::all(n)
        .filter(|sigma| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    let (l, r) = pm.apply(x, y);
                    pm.apply(sigma.apply(x), sigma.apply(y)) == (sigma.apply(l), sigma.apply(r))
                })
            })
        })
        .collect())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutGroup {
    pub order: BigUint,
    pub generators: Vec<Perm>,
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// Automorphism group from the normal form: pairs `(σ₁, σ₂) ∈ Σ_A × C(ϑ′)`
/// preserving fiber sizes, times free permutations inside each `h`-fiber.
/// For `n ≤ 8` the order is asserted against the brute-force count.
pub fn aut_group(s: &Solution) -> Result<AutGroup> {
    let n = s.n();
    let q = to_quadruple(s);
    let st = s.structure();
    let (a, b) = (q.a(), q.b());
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    if fact(a).saturating_mul(fact(b)) > MAX_STRUCTURAL_PAIRS {
        return Err(Error::TooLarge { n, max: a.max(b), what: "structural automorphism search" });
    }
    let rect = q.rect();
    let fiber_size = |i: usize, j: usize| st.fibers()[rect.combine(i, j)].len();
    let centralizer: Vec<Perm> = Perm::all(b).filter(|p| q.theta_prime().commutes_with(p)).collect();
    let mut pairs = Vec::new();
    for s1 in Perm::all(a) {
        for s2 in &centralizer {
            let ok = (0..a).all(|i| (0..b).all(|j| fiber_size(s1.apply(i), s2.apply(j)) == fiber_size(i, j)));
            if ok {
                pairs.push((s1.clone(), s2.clone()));
            }
        }
    }
    let mut order = BigUint::from(pairs.len());
    for r in q.h().image() {
        order *= factorial(st.fibers()[r].len() - 1);
    }

    let lift = |s1: &Perm, s2: &Perm| -> Perm {
        let mut fwd = vec![usize::MAX; n];
        for i in 0..a {
            for j in 0..b {
                let (src, dst) = (rect.combine(i, j), rect.combine(s1.apply(i), s2.apply(j)));
                fwd[src] = dst;
                let from = st.fibers()[src].iter().filter(|&&x| x != src);
                let to = st.fibers()[dst].iter().filter(|&&x| x != dst);
                for (&x, &y) in from.zip(to) {
                    fwd[x] = y;
                }
            }
        }
        Perm::new(fwd).expect("lift is a permutation")
    };

    // greedy generating set for the pair group
    let mut generators: Vec<(Perm, Perm)> = Vec::new();
    let mut closure: HashSet<(Perm, Perm)> = HashSet::from([(Perm::identity(a), Perm::identity(b))]);
    for pair in &pairs {
        if closure.contains(pair) {
            continue;
        }
        generators.push(pair.clone());
        let mut frontier: Vec<(Perm, Perm)> = closure.iter().cloned().collect();
        while let Some((p1, p2)) = frontier.pop() {
            for (g1, g2) in &generators {
                let next = (g1.compose(&p1)?, g2.compose(&p2)?);
                if closure.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    debug_assert_eq!(closure.len(), pairs.len());
    let mut gens: Vec<Perm> = generators.iter().map(|(s1, s2)| lift(s1, s2)).collect();
    for r in q.h().image() {
        let rest: Vec<usize> = st.fibers()[r].iter().copied().filter(|&x| x != r).collect();
        if rest.len() >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(rest[0], rest[1]);
            gens.push(Perm::new(swap)?);
        }
        if rest.len() >= 3 {
            let mut cycle: Vec<usize> = (0..n).collect();
            for (k, &x) in rest.iter().enumerate() {
                cycle[x] = rest[(k + 1) % rest.len()];
            }
            gens.push(Perm::new(cycle)?);
        }
    }
    let pm = s.pm();
    for g in &gens {
        assert_eq!(&pm.relabel(g)?, pm, "generator is not an automorphism");
    }
    if n <= MAX_BRUTE_AUT_N {
        let brute = aut_brute(s)?.len();
        assert_eq!(order, BigUint::from(brute), "structural and brute-force automorphism counts differ");
    }
    Ok(AutGroup { order, generators: gens })
}

/// Result of the decomposability search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decomposition {
    /// One-point set; the notion does not apply.
    Trivial,
    Indecomposable,
    /// `X = Y ⊔ Z`, both blocks closed; `0 ∈ Y`.
    Decomposable {
        y: Vec<usize>,
        z: Vec<usize>,
    },
}

/// Searches bipartitions `Y ⊔ Z` with `R(Y×Y) ⊆ Y×Y` and `R(Z×Z) ⊆ Z×Z`,
/// trying `Y ∋ 0` by increasing size and then increasing bitmask.
pub fn is_decomposable(s: &Solution) -> Result<Decomposition> {
    let n = s.n();
    if n == 1 {
        return Ok(Decomposition::Trivial);
    }
    if n > MAX_DECOMPOSE_N {
        return Err(Error::TooLarge { n, max: MAX_DECOMPOSE_N, what: "decomposition search" });
    }
    let pm = s.pm();
    let hits: Vec<u32> = (0..n * n).map(|i| (1u32 << pm.left_table()[i]) | (1u32 << pm.right_table()[i])).collect();
    let closed = |mask: u32| {
        (0..n)
            .filter(|&x| mask >> x & 1 == 1)
            .all(|x| (0..n).filter(|&y| mask >> y & 1 == 1).all(|y| hits[x * n + y] & !mask == 0))
    };
    let full = (1u32 << n) - 1;
    // Y = {0} ∪ (rest << 1) with |rest| = k
    for k in 0..n - 1 {
        let mut rest: u32 = (1u32 << k) - 1;
        let limit = 1u32 << (n - 1);
        while rest < limit {
            let y = 1 | (rest << 1);
            if closed(y) && closed(full & !y) {
                let members = |m: u32| (0..n).filter(|&x| m >> x & 1 == 1).collect();
                return Ok(Decomposition::Decomposable { y: members(y), z: members(full & !y) });
            }
            if rest == 0 {
                break;
            }
            // next mask with the same popcount
            let c = rest & rest.wrapping_neg();
            let r = rest + c;
            rest = (((r ^ rest) >> 2) / c) | r;
        }
    }
    Ok(Decomposition::Indecomposable)
}
