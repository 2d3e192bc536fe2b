//! Exhaustive enumeration of isomorphism classes, with independent
//! generation paths used as oracles for each other and for the counting
//! formulas.
//!
//! Every engine dedupes by canonical code and returns classes sorted by
//! code, so output does not depend on the parallel schedule.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::counting::{self, DavisMethod};
use crate::error::{Error, Result};
use crate::fse::{
    aut_group, canonical_form, canonical_representative, classify, from_pointed, from_quadruple, verify_braid,
    verify_fs, ClassFlags, Quadruple, Solution,
};
use crate::funcgraph::{canonical_code, is_connected};
use crate::kimura::{is_kimura, is_rectangular, table_from_structure, OpTable, RectFactorization};
use crate::maps::{EndoMap, PairMap, Perm};

pub const MAX_ENDO_N: usize = 7;
pub const MAX_KIMURA_N: usize = 4;
const MAX_KIMURA_FILTER_N: usize = 3;
pub const MAX_LABELED_N: usize = 4;

fn check_range(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::TooSmall { n, min: 1, what });
    }
    if n > max {
        return Err(Error::TooLarge { n, max, what });
    }
    Ok(())
}

/// One representative per conjugacy class of self-maps of an `n`-set: the
/// lexicographically least map in the class. Sorted by conjugacy code.
pub fn endo_classes(n: usize) -> Result<Vec<EndoMap>> {
    check_range(n, MAX_ENDO_N, "self-map enumeration")?;
    let total = (n as u64).pow(n as u32);
    let best: HashMap<Vec<u8>, EndoMap> = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Vec<u8>, EndoMap>, code| {
            let f = EndoMap::from_index(n, code);
            let key = canonical_code(&f);
            match acc.get(&key) {
                Some(g) if g.as_slice() <= f.as_slice() => {}
                _ => {
                    acc.insert(key, f);
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, f) in b {
                match a.get(&k) {
                    Some(g) if g.as_slice() <= f.as_slice() => {}
                    _ => {
                        a.insert(k, f);
                    }
                }
            }
            a
        });
    let mut out: Vec<(Vec<u8>, EndoMap)> = best.into_iter().collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out.into_iter().map(|(_, f)| f).collect())
}

pub fn connected_classes(n: usize) -> Result<Vec<EndoMap>> {
    Ok(endo_classes(n)?.into_iter().filter(is_connected).collect())
}

pub fn idempotent_classes(n: usize) -> Result<Vec<EndoMap>> {
    Ok(endo_classes(n)?.into_iter().filter(EndoMap::is_idempotent).collect())
}

fn dedupe_tables(tables: impl IntoIterator<Item = OpTable>) -> Vec<OpTable> {
    let mut seen: BTreeMap<Vec<u8>, OpTable> = BTreeMap::new();
    for t in tables {
        let (code, sigma) = t.canonical_labeling();
        seen.entry(code).or_insert_with(|| t.relabel(&sigma).expect("same size"));
    }
    seen.into_values().collect()
}

fn kimura_by_filter(n: usize) -> Vec<OpTable> {
    let total = (n as u64).pow((n * n) as u32);
    dedupe_tables((0..total).map(|c| OpTable::from_index(n, c)).filter(is_kimura))
}

/// Cell arrangements of `image` on a grid, one per distinct pattern of
/// fiber sizes (arrangements with equal patterns are conjugate under the
/// centralizer of `h`).
fn arrangements(image: &[usize], fiber_size: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in Perm::all(image.len()) {
        let cells: Vec<usize> = (0..image.len()).map(|i| image[p.apply(i)]).collect();
        let pattern: Vec<usize> = cells.iter().map(|&x| fiber_size[x]).collect();
        if seen.insert(pattern) {
            out.push(cells);
        }
    }
    out
}

/// `(h, band)` data for every Kimura class on `n` points, possibly repeated.
fn kimura_structures(n: usize) -> Result<Vec<(EndoMap, RectFactorization)>> {
    let mut out = Vec::new();
    for h in idempotent_classes(n)? {
        let image = h.image();
        let mut fiber_size = vec![0; n];
        for x in 0..n {
            fiber_size[h.apply(x)] += 1;
        }
        let k = image.len();
        for cells in arrangements(&image, &fiber_size) {
            for a in counting::divisors(k) {
                let rect = RectFactorization::from_grid(n, a, k / a, cells.clone())?;
                out.push((h.clone(), rect));
            }
        }
    }
    Ok(out)
}

fn kimura_by_structure(n: usize) -> Result<Vec<OpTable>> {
    let tables = kimura_structures(n)?
        .into_iter()
        .map(|(h, rect)| table_from_structure(&h, &rect))
        .collect::<Result<Vec<_>>>()?;
    Ok(dedupe_tables(tables))
}

/// Kimura tables up to isomorphism, in canonical labeling, sorted by code.
/// Up to 3 points every table is filtered and the structural generator is
/// asserted to agree; at 4 points only the structural generator runs.
pub fn kimura_classes(n: usize) -> Result<Vec<OpTable>> {
    check_range(n, MAX_KIMURA_N, "Kimura table enumeration")?;
    let structural = kimura_by_structure(n)?;
    if n <= MAX_KIMURA_FILTER_N {
        assert_eq!(kimura_by_filter(n), structural, "Kimura generators disagree at n = {n}");
    }
    Ok(structural)
}

pub fn rectangular_classes(n: usize) -> Result<Vec<OpTable>> {
    Ok(kimura_classes(n)?.into_iter().filter(is_rectangular).collect())
}

/// Generation path for solution classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Method {
    /// Filter every pair-map; `n ≤ 2`.
    Brute,
    /// Kimura tables × quasi-endomorphisms; `n ≤ 3`.
    ViaPointed,
    /// Idempotent `h` × band arrangement × `ϑ′`; `n ≤ 5`.
    ViaQuadruple,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Brute, Method::ViaPointed, Method::ViaQuadruple];

    pub fn max_n(self) -> usize {
        match self {
            Method::Brute => 2,
            Method::ViaPointed => 3,
            Method::ViaQuadruple => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::ViaPointed => "via_pointed",
            Method::ViaQuadruple => "via_quadruple",
        }
    }
}

fn solutions_brute(n: usize) -> Vec<Solution> {
    PairMap::all(n).filter(|pm| verify_fs(pm).valid).map(|pm| Solution::new(pm).expect("verified")).collect()
}

fn solutions_via_pointed(n: usize) -> Vec<Solution> {
    let total = (n as u64).pow((n * n) as u32);
    let tables: Vec<OpTable> = (0..total).map(|c| OpTable::from_index(n, c)).filter(is_kimura).collect();
    tables.par_iter().flat_map_iter(|t| EndoMap::all(n).filter_map(move |theta| from_pointed(t, &theta).ok())).collect()
}

fn solutions_via_quadruple(n: usize) -> Result<Vec<Solution>> {
    let mut quads = Vec::new();
    for (h, rect) in kimura_structures(n)? {
        for theta in EndoMap::all(rect.b()) {
            quads.push(Quadruple::new(h.clone(), rect.clone(), theta)?);
        }
    }
    quads.par_iter().map(from_quadruple).collect()
}

/// Canonical codes of all solution classes, deduped, by one method.
fn class_map(n: usize, method: Method) -> Result<BTreeMap<Vec<u8>, Solution>> {
    check_range(n, method.max_n(), method.name())?;
    let sols = match method {
        Method::Brute => solutions_brute(n),
        Method::ViaPointed => solutions_via_pointed(n),
        Method::ViaQuadruple => solutions_via_quadruple(n)?,
    };
    let coded: Vec<(Vec<u8>, Solution)> = sols.into_par_iter().map(|s| (canonical_form(&s), s)).collect();
    let mut out = BTreeMap::new();
    for (code, s) in coded {
        out.entry(code).or_insert(s);
    }
    Ok(out)
}

/// Sorted canonical codes of all solution classes on `n` points.
pub fn solution_class_codes(n: usize, method: Method) -> Result<Vec<Vec<u8>>> {
    Ok(class_map(n, method)?.into_keys().collect())
}

#[derive(Clone, Debug)]
pub struct SolutionClass {
    pub code: Vec<u8>,
    /// In canonical labeling.
    pub representative: Solution,
    pub flags: ClassFlags,
    pub aut_order: BigUint,
}

#[derive(Clone, Debug)]
pub struct ClassTable {
    pub n: usize,
    pub method: Method,
    pub classes: Vec<SolutionClass>,
    /// Count of classes per flag name (see [`flag_counts`]).
    pub counts: BTreeMap<String, usize>,
}

/// Per-flag class counts, including the combined predicates that appear in
/// the classification results.
pub fn flag_counts(classes: &[SolutionClass]) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    counts.insert("total".into(), classes.len());
    for c in classes {
        let f = &c.flags;
        for (name, v) in f.named() {
            *counts.entry(name.into()).or_default() += usize::from(v);
        }
        let indecomposable = !f.decomposable;
        let combos = [
            ("indecomposable", indecomposable),
            ("indecomposable_left_nondeg", indecomposable && f.left_nondeg),
            ("indecomposable_right_nondeg", indecomposable && f.right_nondeg),
            ("indecomposable_idempotent", indecomposable && f.idempotent),
            ("finite_order_ge2", f.finite_order.is_some_and(|o| o >= 2)),
        ];
        for (name, v) in combos {
            *counts.entry(name.into()).or_default() += usize::from(v);
        }
    }
    counts
}

/// Solution classes on `n` points with representatives in canonical
/// labeling, their flags and automorphism orders.
pub fn solution_classes(n: usize, method: Method) -> Result<ClassTable> {
    let map = class_map(n, method)?;
    let classes: Vec<SolutionClass> = map
        .into_par_iter()
        .map(|(code, s)| {
            let representative = canonical_representative(&s);
            debug_assert_eq!(canonical_form(&representative), code);
            let flags = classify(&representative)?;
            let aut_order = aut_group(&representative)?.order;
            Ok(SolutionClass { code, representative, flags, aut_order })
        })
        .collect::<Result<Vec<_>>>()?;
    let counts = flag_counts(&classes);
    Ok(ClassTable { n, method, classes, counts })
}

/// Every labeled solution on `n ≤ 4` points: all relabelings of every class
/// representative.
pub fn all_labeled_solutions(n: usize) -> Result<Vec<Solution>> {
    check_range(n, MAX_LABELED_N, "labeled solution enumeration")?;
    let reps = class_map(n, Method::ViaQuadruple)?;
    let perms: Vec<Perm> = Perm::all(n).collect();
    let mut seen: HashSet<PairMap> = HashSet::new();
    let mut out = Vec::new();
    for s in reps.into_values() {
        for p in &perms {
            let pm = s.pm().relabel(p)?;
            if seen.insert(pm.clone()) {
                out.push(Solution::new(pm)?);
            }
        }
    }
    out.sort_by(|a, b| a.pm().cmp(b.pm()));
    Ok(out)
}

/// One line of [`class_count_table`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountRow {
    pub name: String,
    pub observed: usize,
    /// Formula value; absent where no closed form is claimed.
    pub expected: Option<BigUint>,
}

impl CountRow {
    pub fn ok(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == BigUint::from(self.observed))
    }
}

/// Enumerated class counts per predicate next to the closed-form values.
pub fn class_count_table(n: usize) -> Result<Vec<CountRow>> {
    let table = solution_classes(n, Method::ViaQuadruple)?;
    Ok(count_rows(n, &table.counts))
}

fn count_rows(n: usize, counts: &BTreeMap<String, usize>) -> Vec<CountRow> {
    let p = counting::partition_p(n);
    let d = counting::davis_d(n, DavisMethod::EulerProduct);
    let c = counting::harary_c(n);
    let one = BigUint::one();
    let expected: Vec<(&str, Option<BigUint>)> = vec![
        ("total", None),
        ("involutive", Some(BigUint::from(counting::tau(n)))),
        ("diagonal", Some(BigUint::from(counting::tau(n)))),
        ("idempotent", Some(p.get(n).clone())),
        ("commutative", Some(p.get(n).clone())),
        ("cocommutative", Some(p.get(n).clone())),
        ("left_nondeg", Some(d.get(n).clone())),
        ("right_nondeg", Some(p.get(n).clone())),
        ("bijective", Some(counting::fsb(n))),
        ("pi1_surjective", Some(counting::fs1(n))),
        ("pi2_surjective", Some(counting::fsb(n))),
        ("unitary", Some(counting::unitary_count(n))),
        ("symmetric", Some(one.clone())),
        ("indecomposable_left_nondeg", Some(c.get(n).clone())),
        ("indecomposable_right_nondeg", Some(one.clone())),
        ("indecomposable_idempotent", Some(one)),
        ("finite_order_ge2", Some(counting::finite_order_count(n))),
        ("decomposable", None),
        ("indecomposable", None),
    ];
    expected
        .into_iter()
        .map(|(name, expected)| CountRow {
            name: name.to_string(),
            observed: counts.get(name).copied().unwrap_or(0),
            expected,
        })
        .collect()
}

/// Result of the self-test battery.
#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub lines: Vec<(String, bool)>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|(_, ok)| *ok)
    }

    fn push(&mut self, line: String, ok: bool) {
        self.lines.push((line, ok));
    }
}

/// Runs, for every size up to `n`: agreement of all applicable solution
/// generators, the class-count table against its formulas, and the
/// self-map class counts against `d`, `c` and `p`.
pub fn selftest(n: usize) -> Result<SelftestReport> {
    check_range(n, Method::ViaQuadruple.max_n(), "self-test")?;
    let mut report = SelftestReport::default();
    let p = counting::partition_p(n);
    let d = counting::davis_d(n, DavisMethod::BruijnSum);
    let c = counting::harary_c(n);
    for k in 1..=n {
        let methods: Vec<Method> = Method::ALL.into_iter().filter(|m| k <= m.max_n()).collect();
        let codes = methods.iter().map(|&m| solution_class_codes(k, m)).collect::<Result<Vec<_>>>()?;
        let agree = codes.windows(2).all(|w| w[0] == w[1]);
        let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
        report.push(format!("n={k} generators agree ({}): {} classes", names.join(", "), codes[0].len()), agree);

        let table = solution_classes(k, Method::ViaQuadruple)?;
        let valid = table
            .classes
            .iter()
            .all(|cl| verify_fs(cl.representative.pm()).valid && verify_braid(cl.representative.pm()));
        report.push(format!("n={k} every representative is a braided solution"), valid);
        for row in count_rows(k, &table.counts) {
            if let Some(e) = &row.expected {
                report.push(format!("n={k} {} = {} (formula {e})", row.name, row.observed), row.ok());
            }
        }
        let endo = endo_classes(k)?;
        let connected = endo.iter().filter(|f| is_connected(f)).count();
        let idempotent = endo.iter().filter(|f| f.is_idempotent()).count();
        for (name, got, want) in [
            ("self-map classes", endo.len(), d.get(k)),
            ("connected self-map classes", connected, c.get(k)),
            ("idempotent self-map classes", idempotent, p.get(k)),
        ] {
            report.push(format!("n={k} {name} = {got} (formula {want})"), BigUint::from(got) == *want);
        }
    }
    Ok(report)
}

/// Class counts per `n`, as plain integers; used for reporting.
pub fn total_class_counts(upto: usize) -> Result<Vec<usize>> {
    (1..=upto).map(|n| Ok(solution_class_codes(n, Method::ViaQuadruple)?.len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endo_class_examples() {
        assert_eq!(endo_classes(1).unwrap().len(), 1);
        assert_eq!(endo_classes(2).unwrap().len(), 3);
        assert_eq!(endo_classes(4).unwrap().len(), 19);
        assert_eq!(connected_classes(4).unwrap().len(), 9);
        assert_eq!(connected_classes(1).unwrap().len(), 1);
        assert_eq!(idempotent_classes(4).unwrap().len(), 5);
        assert!(matches!(endo_classes(8), Err(Error::TooLarge { .. })));
        assert!(matches!(endo_classes(0), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn endo_representatives_are_least() {
        let reps = endo_classes(3).unwrap();
        for f in &reps {
            for g in EndoMap::all(3) {
                if canonical_code(&g) == canonical_code(f) {
                    assert!(f.as_slice() <= g.as_slice());
                }
            }
        }
    }

    #[test]
    fn kimura_class_examples() {
        assert_eq!(kimura_classes(1).unwrap().len(), 1);
        let two = kimura_classes(2).unwrap();
        assert!(two.len() >= 3);
        for n in [2usize, 3] {
            assert_eq!(rectangular_classes(n).unwrap().len(), 2);
        }
    }

    #[test]
    fn small_generators_agree() {
        assert_eq!(solution_class_codes(1, Method::Brute).unwrap().len(), 1);
        for n in 1..=2 {
            let b = solution_class_codes(n, Method::Brute).unwrap();
            assert_eq!(b, solution_class_codes(n, Method::ViaPointed).unwrap());
            assert_eq!(b, solution_class_codes(n, Method::ViaQuadruple).unwrap());
        }
        assert!(matches!(solution_class_codes(3, Method::Brute), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn left_nondegenerate_classes_at_three() {
        let t = solution_classes(3, Method::ViaQuadruple).unwrap();
        assert_eq!(t.counts["left_nondeg"], 7);
    }

    #[test]
    fn count_rows_at_four() {
        let rows = class_count_table(4).unwrap();
        let get = |name: &str| rows.iter().find(|r| r.name == name).unwrap().clone();
        assert_eq!(get("involutive").observed, 3);
        assert_eq!(get("bijective").observed, 8);
        assert_eq!(get("indecomposable_left_nondeg").observed, 9);
        for r in &rows {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn labeled_counts() {
        // labeled idempotent solutions are the idempotent self-maps
        for n in 1..=3 {
            let all = all_labeled_solutions(n).unwrap();
            let idem = all.iter().filter(|s| s.pm().compose(s.pm()).unwrap() == *s.pm()).count();
            assert_eq!(BigUint::from(idem), counting::idempotent_total(n));
        }
    }
}
