use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use super::code::{ahu_code, component_code, rotation_period, tree_codes, TreeCode};
use super::{rho_decomposition, RootedTree};
use crate::error::{Error, Result};
use crate::maps::{EndoMap, Perm};

const MAX_BRUTE_N: usize = 8;
const MAX_GLUE_CHECK_N: usize = 6;
const MAX_GLUE_SEARCH_N: usize = 5;

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// `|Aut|` of a rooted tree: children are grouped by code, each class of
/// size `m` with subtree order `o` contributes `m!·o^m`.
pub fn aut_order_tree(tree: &RootedTree) -> BigUint {
    let mut classes: BTreeMap<TreeCode, (usize, BigUint)> = BTreeMap::new();
    for c in &tree.children {
        let entry = classes.entry(ahu_code(c)).or_insert_with(|| (0, aut_order_tree(c)));
        entry.0 += 1;
    }
    classes.into_values().map(|(m, o)| factorial(m) * o.pow(m as u32)).product()
}

/// One isomorphism class of components of `Γ_f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentClass {
    pub code: String,
    pub multiplicity: usize,
    pub cycle_len: usize,
    /// Rotations of the cycle that preserve the attached trees.
    pub rotations: usize,
    /// Minimal rotation period of the tree-code sequence.
    pub period: usize,
    /// Per cycle vertex, starting from the component's first cycle vertex.
    pub tree_orders: Vec<BigUint>,
    pub component_order: BigUint,
}

/// `Aut(f) ≅ ∏ Aut(f_i) ≀ Σ_{m_i}` over component classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WreathDescriptor {
    pub classes: Vec<ComponentClass>,
    pub order: BigUint,
}

pub fn aut_order(f: &EndoMap) -> (BigUint, WreathDescriptor) {
    let d = rho_decomposition(f);
    let mut classes: BTreeMap<String, ComponentClass> = BTreeMap::new();
    for c in &d.components {
        let code = component_code(c);
        if let Some(cls) = classes.get_mut(&code) {
            cls.multiplicity += 1;
            continue;
        }
        let codes = tree_codes(c);
        let period = rotation_period(&codes);
        let rotations = codes.len() / period;
        let tree_orders: Vec<BigUint> = c.trees.iter().map(aut_order_tree).collect();
        let component_order = BigUint::from(rotations) * tree_orders.iter().product::<BigUint>();
        classes.insert(
            code.clone(),
            ComponentClass {
                code,
                multiplicity: 1,
                cycle_len: codes.len(),
                rotations,
                period,
                tree_orders,
                component_order,
            },
        );
    }
    let classes: Vec<ComponentClass> = classes.into_values().collect();
    let mut order = BigUint::one();
    for cls in &classes {
        debug_assert_eq!(cls.rotations * cls.period, cls.cycle_len);
        order *= cls.component_order.pow(cls.multiplicity as u32) * factorial(cls.multiplicity);
    }
    (order.clone(), WreathDescriptor { classes, order })
}

/// The centralizer of `f` in `Σ_n`, by filtering.
pub fn aut_brute(f: &EndoMap) -> Result<Vec<Perm>> {
    let n = f.len();
    if n > MAX_BRUTE_N {
        return Err(Error::TooLarge { n, max: MAX_BRUTE_N, what: "brute-force centralizer" });
    }
    Ok(Perm::all(n).filter(|p| f.commutes_with(p)).collect())
}

fn check_pair(h: &EndoMap, f: &EndoMap) -> Result<()> {
    if h.len() != f.len() {
        return Err(Error::SizeMismatch { left: h.len(), right: f.len() });
    }
    if let Some(witness) = (0..h.len()).find(|&x| h.apply(h.apply(x)) != h.apply(x)) {
        return Err(Error::NotIdempotent { witness });
    }
    if let Some(x) = (0..f.len()).find(|&x| f.apply(h.apply(x)) != f.apply(x) || h.apply(f.apply(x)) != f.apply(x)) {
        return Err(Error::InvalidParams(format!("f∘h = h∘f = f fails at {x}")));
    }
    Ok(())
}

/// `g = f` on `Im h` and `g = h` off it.
pub fn glue_fh(h: &EndoMap, f: &EndoMap) -> Result<EndoMap> {
    check_pair(h, f)?;
    EndoMap::new((0..h.len()).map(|x| if h.apply(x) == x { f.apply(x) } else { h.apply(x) }).collect())
}

/// The swapped gluing: `g = h` (the identity) on `Im h`, `g = f` off it.
fn glue_alternative(h: &EndoMap, f: &EndoMap) -> EndoMap {
    EndoMap::new((0..h.len()).map(|x| if h.apply(x) == x { x } else { f.apply(x) }).collect()).expect("in range")
}

/// Brute-force check of whether a single function has the centralizer
/// `Aut(h, f) = {σ : σh = hσ, σf = fσ}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlueReport {
    pub target_order: usize,
    /// [`glue_fh`] has the right centralizer.
    pub primary_ok: bool,
    /// The swapped gluing has the right centralizer.
    pub alternative_ok: bool,
    /// Least-index `g` over all `n^n` maps with the right centralizer, when
    /// `n` is small enough to search.
    pub any_single: Option<EndoMap>,
    pub searched: bool,
}

pub fn verify_glue(h: &EndoMap, f: &EndoMap) -> Result<GlueReport> {
    check_pair(h, f)?;
    let n = h.len();
    if n > MAX_GLUE_CHECK_N {
        return Err(Error::TooLarge { n, max: MAX_GLUE_CHECK_N, what: "gluing check" });
    }
    let perms: Vec<Perm> = Perm::all(n).collect();
    let target: Vec<bool> = perms.iter().map(|p| h.commutes_with(p) && f.commutes_with(p)).collect();
    let same = |g: &EndoMap| perms.iter().zip(&target).all(|(p, &t)| g.commutes_with(p) == t);
    let searched = n <= MAX_GLUE_SEARCH_N;
    let any_single = if searched { EndoMap::all(n).find(|g| same(g)) } else { None };
    Ok(GlueReport {
        target_order: target.iter().filter(|&&t| t).count(),
        primary_ok: same(&glue_fh(h, f)?),
        alternative_ok: same(&glue_alternative(h, f)),
        any_single,
        searched,
    })
}
