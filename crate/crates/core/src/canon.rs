//! Canonical relabeling of small table structures.
//!
//! A structure on `{0, .., n-1}` is canonized by taking the lexicographically
//! least serialization over all relabelings that list the elements in
//! nondecreasing order of an isomorphism-invariant key. Restricting to
//! key-sorted relabelings keeps the result canonical while cutting the search
//! from `n!` down to the product of the key-class factorials.

use crate::maps::{next_permutation, Perm};

/// Odometer over all relabelings `old -> new` that sort elements by `keys`.
pub(crate) struct SortedRelabelings {
    classes: Vec<Vec<usize>>,
    current: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    n: usize,
    done: bool,
}

impl SortedRelabelings {
    pub(crate) fn new<K: Ord>(keys: &[K]) -> Self {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &x in &order {
            match classes.last_mut() {
                Some(last) if keys[last[0]] == keys[x] => last.push(x),
                _ => classes.push(vec![x]),
            }
        }
        let mut offsets = Vec::with_capacity(classes.len());
        let mut acc = 0;
        for c in &classes {
            offsets.push(acc);
            acc += c.len();
        }
        Self {
            current: classes.iter().map(|c| (0..c.len()).collect()).collect(),
            classes,
            offsets,
            n: keys.len(),
            done: keys.is_empty(),
        }
    }
}

impl Iterator for SortedRelabelings {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let mut fwd = vec![0; self.n];
        for (ci, class) in self.classes.iter().enumerate() {
            for (slot, &pos) in self.current[ci].iter().enumerate() {
                fwd[class[pos]] = self.offsets[ci] + slot;
            }
        }
        // advance: rightmost class first
        let mut ci = self.classes.len();
        loop {
            if ci == 0 {
                self.done = true;
                break;
            }
            ci -= 1;
            if next_permutation(&mut self.current[ci]) {
                break;
            }
        }
        Some(Perm::new(fwd).expect("relabeling is a permutation"))
    }
}

/// Least `render(σ)` over all key-sorted relabelings `σ`, together with a
/// minimizing relabeling.
pub(crate) fn canonical_min<K: Ord>(keys: &[K], mut render: impl FnMut(&Perm) -> Vec<u8>) -> (Vec<u8>, Perm) {
    let mut best: Option<(Vec<u8>, Perm)> = None;
    for sigma in SortedRelabelings::new(keys) {
        let code = render(&sigma);
        match &best {
            Some((b, _)) if *b <= code => {}
            _ => best = Some((code, sigma)),
        }
    }
    best.expect("at least one relabeling")
}

/// Serializes `n×n` tables after transport along `σ`: the new table at
/// `(σx, σy)` holds `σ(t[x][y])`.
pub(crate) fn render_tables(n: usize, tables: &[&[usize]], sigma: &Perm) -> Vec<u8> {
    let mut out = vec![0u8; 1 + tables.len() * n * n];
    out[0] = n as u8;
    for (ti, t) in tables.iter().enumerate() {
        let base = 1 + ti * n * n;
        for x in 0..n {
            let nx = sigma.apply(x);
            for y in 0..n {
                out[base + nx * n + sigma.apply(y)] = sigma.apply(t[x * n + y]) as u8;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelings_respect_key_order() {
        let keys = [1, 0, 1, 0, 2];
        let all: Vec<Perm> = SortedRelabelings::new(&keys).collect();
        assert_eq!(all.len(), 4);
        for p in &all {
            // elements with key 0 get labels 0,1; key 1 -> 2,3; key 2 -> 4
            assert!(p.apply(1) < 2 && p.apply(3) < 2);
            assert!((2..4).contains(&p.apply(0)) && (2..4).contains(&p.apply(2)));
            assert_eq!(p.apply(4), 4);
        }
    }

    #[test]
    fn uniform_keys_give_all_permutations() {
        let it = SortedRelabelings::new(&[0u8; 4]);
        assert_eq!(it.count(), 24);
    }
}
