//! Functional digraphs `Γ_f` of self-maps `f: X → X`: edges `x → f(x)` with
//! fixed-point loops dropped. Every component carries exactly one cycle
//! (a fixed point counts as a cycle of length one) with rooted trees of
//! predecessors hanging off its vertices.

mod aut;
mod code;

pub use aut::{
    aut_brute, aut_order, aut_order_tree, glue_fh, verify_glue, ComponentClass, GlueReport, WreathDescriptor,
};
pub use code::{ahu_code, are_conjugate, canonical_code, component_code, TreeCode};

use crate::maps::EndoMap;

/// Largest set on which the invariant-bipartition route of
/// [`is_connected`] is run.
pub const MAX_BIPARTITION_N: usize = 12;

/// A vertex together with its non-cycle predecessors, recursively.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootedTree {
    pub root: usize,
    /// Ordered by vertex label.
    pub children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(RootedTree::size).sum::<usize>()
    }

    fn collect(&self, out: &mut Vec<usize>) {
        out.push(self.root);
        for c in &self.children {
            c.collect(out);
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    /// Sorted.
    pub vertices: Vec<usize>,
    /// Starts at the least cycle vertex and follows `f`.
    pub cycle: Vec<usize>,
    /// `trees[i]` hangs off `cycle[i]`.
    pub trees: Vec<RootedTree>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuncDigraph {
    pub f: EndoMap,
    /// Ordered by least vertex.
    pub components: Vec<Component>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Weak components, each sorted, ordered by least element.
pub fn components(f: &EndoMap) -> Vec<Vec<usize>> {
    let n = f.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for x in 0..n {
        let (a, b) = (find(&mut parent, x), find(&mut parent, f.apply(x)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(x);
    }
    blocks
}

fn forward_orbit(f: &EndoMap, x: usize) -> Vec<bool> {
    let mut seen = vec![false; f.len()];
    let mut cur = x;
    while !seen[cur] {
        seen[cur] = true;
        cur = f.apply(cur);
    }
    seen
}

fn connected_by_orbits(f: &EndoMap) -> bool {
    let n = f.len();
    let orbits: Vec<Vec<bool>> = (0..n).map(|x| forward_orbit(f, x)).collect();
    (0..n).all(|x| (0..n).all(|y| (0..n).any(|z| orbits[x][z] && orbits[y][z])))
}

fn has_invariant_bipartition(f: &EndoMap) -> bool {
    let n = f.len();
    let full = (1u32 << n) - 1;
    let invariant = |m: u32| (0..n).all(|x| m >> x & 1 == 0 || m >> f.apply(x) & 1 == 1);
    // proper Y containing 0
    (0..1u32 << (n - 1)).map(|rest| 1 | rest << 1).any(|y| y != full && invariant(y) && invariant(full & !y))
}

/// Whether `Γ_f` is connected; the union-find count, the meeting-orbits
/// criterion and (up to [`MAX_BIPARTITION_N`]) the absence of an invariant
/// bipartition are asserted to agree.
pub fn is_connected(f: &EndoMap) -> bool {
    let by_components = components(f).len() == 1;
    let by_orbits = connected_by_orbits(f);
    assert_eq!(by_components, by_orbits, "connectivity routes disagree on {f:?}");
    if f.len() <= MAX_BIPARTITION_N {
        assert_eq!(by_components, !has_invariant_bipartition(f), "connectivity routes disagree on {f:?}");
    }
    by_components
}

pub fn rho_decomposition(f: &EndoMap) -> FuncDigraph {
    let n = f.len();
    let mut on_cycle = vec![false; n];
    for (x, cyclic) in on_cycle.iter_mut().enumerate() {
        // x is cyclic iff it returns to itself within n steps
        let mut cur = f.apply(x);
        for _ in 0..n {
            if cur == x {
                *cyclic = true;
                break;
            }
            cur = f.apply(cur);
        }
    }
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        if !on_cycle[x] {
            preds[f.apply(x)].push(x);
        }
    }
    fn tree(v: usize, preds: &[Vec<usize>]) -> RootedTree {
        RootedTree { root: v, children: preds[v].iter().map(|&u| tree(u, preds)).collect() }
    }
    let comps = components(f)
        .into_iter()
        .map(|vertices| {
            let start = *vertices.iter().find(|&&x| on_cycle[x]).expect("every component has a cycle");
            let mut cycle = vec![start];
            let mut cur = f.apply(start);
            while cur != start {
                cycle.push(cur);
                cur = f.apply(cur);
            }
            let trees = cycle.iter().map(|&c| tree(c, &preds)).collect();
            Component { vertices, cycle, trees }
        })
        .collect();
    FuncDigraph { f: f.clone(), components: comps }
}

impl Component {
    /// Vertices of the tree hanging at `cycle[i]`, root first.
    pub fn tree_vertices(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.trees[i].collect(&mut out);
        out
    }
}

/// `Γ_f` in dot format; loops at fixed points are omitted.
pub fn export_dot(f: &EndoMap) -> String {
    let mut out = String::from("digraph f {\n");
    for x in 0..f.len() {
        out.push_str(&format!("  {x};\n"));
    }
    for x in 0..f.len() {
        if f.apply(x) != x {
            out.push_str(&format!("  {x} -> {};\n", f.apply(x)));
        }
    }
    out.push_str("}\n");
    out
}
