use std::fmt;

use super::{rho_decomposition, Component, RootedTree};
use crate::maps::{EndoMap, Perm};

/// Parenthesis code of a rooted tree: a leaf is `()`, an inner node wraps
/// the sorted codes of its children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TreeCode(pub String);

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn ahu_code(tree: &RootedTree) -> TreeCode {
    let mut child: Vec<TreeCode> = tree.children.iter().map(ahu_code).collect();
    child.sort_unstable();
    let mut s = String::with_capacity(2 + child.iter().map(|c| c.0.len()).sum::<usize>());
    s.push('(');
    for c in &child {
        s.push_str(&c.0);
    }
    s.push(')');
    TreeCode(s)
}

/// Least rotation offset of `seq` (naive; cycles are short).
pub(crate) fn least_rotation<T: Ord>(seq: &[T]) -> usize {
    let n = seq.len();
    (0..n).min_by(|&a, &b| (0..n).map(|k| &seq[(a + k) % n]).cmp((0..n).map(|k| &seq[(b + k) % n]))).unwrap_or(0)
}

/// Smallest `t ≥ 1` with `seq` invariant under rotation by `t`.
pub(crate) fn rotation_period<T: Eq>(seq: &[T]) -> usize {
    let n = seq.len();
    (1..=n).find(|&t| n.is_multiple_of(t) && (0..n).all(|k| seq[k] == seq[(k + t) % n])).unwrap_or(n)
}

pub(crate) fn tree_codes(c: &Component) -> Vec<TreeCode> {
    c.trees.iter().map(ahu_code).collect()
}

/// Component code: the least rotation of the cyclic sequence of tree codes,
/// bracketed.
pub fn component_code(c: &Component) -> String {
    let codes = tree_codes(c);
    let start = least_rotation(&codes);
    let mut s = String::from("[");
    for k in 0..codes.len() {
        s.push_str(&codes[(start + k) % codes.len()].0);
    }
    s.push(']');
    s
}

/// Conjugacy invariant of `f`: sorted component codes. Equal codes ⟺
/// `g = σfσ⁻¹` for some `σ`.
pub fn canonical_code(f: &EndoMap) -> Vec<u8> {
    let d = rho_decomposition(f);
    let mut codes: Vec<String> = d.components.iter().map(component_code).collect();
    codes.sort_unstable();
    codes.concat().into_bytes()
}

fn align_trees(a: &RootedTree, b: &RootedTree, sigma: &mut [usize]) {
    sigma[a.root] = b.root;
    let mut ca: Vec<(TreeCode, &RootedTree)> = a.children.iter().map(|t| (ahu_code(t), t)).collect();
    let mut cb: Vec<(TreeCode, &RootedTree)> = b.children.iter().map(|t| (ahu_code(t), t)).collect();
    ca.sort_by(|x, y| x.0.cmp(&y.0));
    cb.sort_by(|x, y| x.0.cmp(&y.0));
    for ((_, ta), (_, tb)) in ca.iter().zip(&cb) {
        align_trees(ta, tb, sigma);
    }
}

/// A permutation `σ` with `σfσ⁻¹ = g`, built by aligning components, cycles
/// and trees with equal codes; verified before it is returned.
pub fn are_conjugate(f: &EndoMap, g: &EndoMap) -> Option<Perm> {
    if f.len() != g.len() || canonical_code(f) != canonical_code(g) {
        return None;
    }
    let prepare = |h: &EndoMap| {
        let mut comps: Vec<(String, Component)> =
            rho_decomposition(h).components.into_iter().map(|c| (component_code(&c), c)).collect();
        comps.sort_by(|x, y| x.0.cmp(&y.0));
        comps
    };
    let (cf, cg) = (prepare(f), prepare(g));
    let mut sigma = vec![usize::MAX; f.len()];
    for ((code_f, a), (code_g, b)) in cf.iter().zip(&cg) {
        debug_assert_eq!(code_f, code_g);
        let (ta, tb) = (tree_codes(a), tree_codes(b));
        let (sa, sb) = (least_rotation(&ta), least_rotation(&tb));
        let len = a.cycle.len();
        for k in 0..len {
            align_trees(&a.trees[(sa + k) % len], &b.trees[(sb + k) % len], &mut sigma);
        }
    }
    let sigma = Perm::new(sigma).ok()?;
    (f.conjugate_by(&sigma).ok()? == *g).then_some(sigma)
}
