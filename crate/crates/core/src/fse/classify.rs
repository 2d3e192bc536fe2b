use std::collections::HashMap;

use super::{is_decomposable, to_quadruple, verify_braid, verify_fs, Decomposition, Solution};
use crate::error::Result;
use crate::maps::PairMap;

/// Classification predicates of a solution.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ClassFlags {
    pub fs_valid: bool,
    pub braid_valid: bool,
    pub involutive: bool,
    pub diagonal: bool,
    pub idempotent: bool,
    pub commutative: bool,
    pub cocommutative: bool,
    pub unitary: bool,
    pub symmetric: bool,
    pub left_nondeg: bool,
    pub right_nondeg: bool,
    pub pi1_surjective: bool,
    pub pi2_surjective: bool,
    pub bijective: bool,
    pub decomposable: bool,
    pub finite_order: Option<u64>,
}

impl ClassFlags {
    /// `(name, value)` for every boolean flag, in declaration order.
    pub fn named(&self) -> [(&'static str, bool); 15] {
        [
            ("fs_valid", self.fs_valid),
            ("braid_valid", self.braid_valid),
            ("involutive", self.involutive),
            ("diagonal", self.diagonal),
            ("idempotent", self.idempotent),
            ("commutative", self.commutative),
            ("cocommutative", self.cocommutative),
            ("unitary", self.unitary),
            ("symmetric", self.symmetric),
            ("left_nondeg", self.left_nondeg),
            ("right_nondeg", self.right_nondeg),
            ("pi1_surjective", self.pi1_surjective),
            ("pi2_surjective", self.pi2_surjective),
            ("bijective", self.bijective),
            ("decomposable", self.decomposable),
        ]
    }
}

type Triple = (usize, usize, usize);

fn on_triples(n: usize, mut f: impl FnMut(Triple) -> bool) -> bool {
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f((x, y, z)))))
}

fn surjective(n: usize, values: &[usize]) -> bool {
    let mut seen = vec![false; n];
    for &v in values {
        seen[v] = true;
    }
    seen.into_iter().all(|b| b)
}

pub fn classify(s: &Solution) -> Result<ClassFlags> {
    let pm = s.pm();
    let n = pm.n();
    let r12 = |(a, b, c): Triple| {
        let (p, q) = pm.apply(a, b);
        (p, q, c)
    };
    let r13 = |(a, b, c): Triple| {
        let (p, q) = pm.apply(a, c);
        (p, b, q)
    };
    let r23 = |(a, b, c): Triple| {
        let (p, q) = pm.apply(b, c);
        (a, p, q)
    };
    let square = pm.compose(pm)?;
    let r21 = pm.flipped();
    let bijective = pm.is_bijective();
    let rows_bijective = |get: &dyn Fn(usize, usize) -> usize| {
        (0..n).all(|x| {
            let mut seen = vec![false; n];
            (0..n).all(|y| !std::mem::replace(&mut seen[get(x, y)], true))
        })
    };
    let decomposable = matches!(is_decomposable(s)?, Decomposition::Decomposable { .. });
    let flags = ClassFlags {
        fs_valid: verify_fs(pm).valid,
        braid_valid: verify_braid(pm),
        involutive: square.is_identity(),
        diagonal: (0..n).all(|x| pm.apply(x, x) == (x, x)),
        idempotent: square == *pm,
        commutative: on_triples(n, |t| r12(r13(t)) == r13(r12(t))),
        cocommutative: on_triples(n, |t| r13(r23(t)) == r23(r13(t))),
        unitary: r21.compose(pm)?.is_identity(),
        symmetric: (0..n).all(|x| (0..n).all(|y| pm.apply(x, y) == pm.apply(y, x))),
        // l_x = x·(-), r_y = (-)∗y
        left_nondeg: rows_bijective(&|x, y| pm.left(x, y)),
        right_nondeg: rows_bijective(&|y, x| pm.right(x, y)),
        pi1_surjective: surjective(n, pm.left_table()),
        pi2_surjective: surjective(n, pm.right_table()),
        bijective,
        decomposable,
        finite_order: solution_order(s),
    };
    assert_eq!(flags.involutive, flags.diagonal, "involutive ⟺ diagonal");
    assert!(
        flags.idempotent == flags.commutative && flags.commutative == flags.cocommutative,
        "idempotent ⟺ commutative ⟺ cocommutative"
    );
    assert!(
        !flags.right_nondeg || (flags.left_nondeg && flags.bijective),
        "right non-degenerate ⇒ left non-degenerate, bijective"
    );
    assert!(!flags.fs_valid || flags.braid_valid, "solutions are braided");
    Ok(flags)
}

/// `R^k` by the closed form
/// `R^{2j} = (x·ϑ^j(x), y·ϑ^j(y))`, `R^{2j+1} = (x·ϑ^j(y), y·ϑ^{j+1}(x))`,
/// asserted equal to repeated composition.
pub fn power(s: &Solution, k: u64) -> PairMap {
    let closed = power_closed(s, k);
    assert_eq!(closed, power_iterated(s.pm(), k), "closed form of R^{k} disagrees with composition");
    closed
}

fn power_closed(s: &Solution, k: u64) -> PairMap {
    let n = s.n();
    if k == 0 {
        return PairMap::identity(n);
    }
    let (t, theta) = (s.table(), s.theta());
    let it = |j: u64, x: usize| theta.iterate(j, x).expect("in range");
    let j = k / 2;
    PairMap::from_fn(n, |x, y| {
        if k.is_multiple_of(2) {
            (t.get(x, it(j, x)), t.get(y, it(j, y)))
        } else {
            (t.get(x, it(j, y)), t.get(y, it(j + 1, x)))
        }
    })
    .expect("in range")
}

/// `R^k` by composition; the eventually periodic power sequence is
/// short-circuited once it repeats.
pub fn power_iterated(pm: &PairMap, k: u64) -> PairMap {
    let mut seen: HashMap<PairMap, u64> = HashMap::new();
    let mut powers = vec![PairMap::identity(pm.n())];
    let mut i = 0u64;
    loop {
        if i == k {
            return powers.pop().expect("nonempty");
        }
        let current = powers.last().expect("nonempty").clone();
        if let Some(&start) = seen.get(&current) {
            let period = i - start;
            let idx = start + (k - start) % period;
            return powers[idx as usize].clone();
        }
        seen.insert(current.clone(), i);
        powers.push(current.compose(pm).expect("same size"));
        i += 1;
    }
}

/// Least `k ≥ 1` with `R^k = id`; `None` unless `R` is bijective.
pub fn solution_order(s: &Solution) -> Option<u64> {
    if !s.pm().is_bijective() {
        return None;
    }
    // bijective ⇒ h = id and R ≅ R_ω with ω = ϑ′ a permutation
    let q = to_quadruple(s);
    let shortcut = if q.b() == 1 {
        1
    } else {
        2 * q.theta_prime().to_perm().expect("ϑ′ of a bijective solution is a permutation").order()
    };
    let mut current = s.pm().clone();
    let mut k = 1u64;
    while !current.is_identity() {
        current = current.compose(s.pm()).expect("same size");
        k += 1;
        assert!(k <= shortcut, "iterated order exceeds the ω-order bound");
    }
    assert_eq!(k, shortcut, "solution order disagrees with 2·ord(ω)");
    Some(k)
}

/// Whether every power `R^k` is a solution, via `x·ϑ²(y) = x·ϑ(y)`.
pub fn powers_all_solutions(s: &Solution) -> bool {
    let (t, theta) = (s.table(), s.theta());
    let n = s.n();
    let criterion = (0..n).all(|x| (0..n).all(|y| t.get(x, theta.apply(theta.apply(y))) == t.get(x, theta.apply(y))));
    let square = power(s, 2);
    let cube = power(s, 3);
    assert_eq!(criterion, verify_fs(&cube).valid, "R³ is a solution exactly under the power criterion");
    if criterion {
        assert!(verify_fs(&square).valid);
        for k in 2..=4 {
            assert_eq!(power(s, 2 * k), square);
            assert_eq!(power(s, 2 * k + 1), cube);
        }
    }
    criterion
}
