use super::Solution;
use crate::error::{Error, Result};
use crate::maps::{EndoMap, PairMap};

/// Named solution families. On `A×B` the pair `(i, j)` is element `i·|B| + j`.
#[derive(Clone, Debug)]
pub enum SolutionKind {
    Identity(usize),
    Flip(usize),
    /// `R(x, y) = (a, a)`.
    Constant {
        n: usize,
        a: usize,
    },
    /// `R(x, y) = (y, f(x))`.
    RF(EndoMap),
    /// `R(x, y) = (f(x), f(y))`, `f` idempotent.
    RUpperF(EndoMap),
    /// `R(x, y) = (h(y), f(x))` with `h² = h`, `f = f∘h = h∘f`.
    RHF {
        h: EndoMap,
        f: EndoMap,
    },
    /// On `A×B`: `((a1, b1), (a2, b2)) ↦ ((a1, b2), (a2, ω(b1)))`.
    ROmega {
        a: usize,
        omega: EndoMap,
    },
    /// On `A×B`: `((a1, b1), (a2, b2)) ↦ ((f(a1), b2), (f(a2), ω(b1)))`, `f` idempotent.
    FROmega {
        f: EndoMap,
        omega: EndoMap,
    },
    /// Componentwise on `X×Y`; `(x, y)` is element `x·|Y| + y`.
    Product(Box<Solution>, Box<Solution>),
}

fn idempotent_witness(f: &EndoMap) -> Option<usize> {
    (0..f.len()).find(|&x| f.apply(f.apply(x)) != f.apply(x))
}

fn require_idempotent(f: &EndoMap) -> Result<()> {
    match idempotent_witness(f) {
        Some(witness) => Err(Error::NotIdempotent { witness }),
        None => Ok(()),
    }
}

fn require_point(n: usize, a: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if a >= n {
        return Err(Error::OutOfRange { index: a, n });
    }
    Ok(())
}

pub fn build_solution(kind: SolutionKind) -> Result<Solution> {
    let pm = match kind {
        SolutionKind::Identity(n) => PairMap::from_fn(n, |x, y| (x, y))?,
        SolutionKind::Flip(n) => PairMap::from_fn(n, |x, y| (y, x))?,
        SolutionKind::Constant { n, a } => {
            require_point(n, a)?;
            PairMap::from_fn(n, |_, _| (a, a))?
        }
        SolutionKind::RF(f) => PairMap::from_fn(f.len(), |x, y| (y, f.apply(x)))?,
        SolutionKind::RUpperF(f) => {
            require_idempotent(&f)?;
            PairMap::from_fn(f.len(), |x, y| (f.apply(x), f.apply(y)))?
        }
        SolutionKind::RHF { h, f } => {
            if h.len() != f.len() {
                return Err(Error::SizeMismatch { left: h.len(), right: f.len() });
            }
            require_idempotent(&h)?;
            if let Some(x) = (0..f.len()).find(|&x| f.apply(h.apply(x)) != f.apply(x)) {
                return Err(Error::InvalidParams(format!("f∘h ≠ f at {x}")));
            }
            if let Some(x) = (0..f.len()).find(|&x| h.apply(f.apply(x)) != f.apply(x)) {
                return Err(Error::InvalidParams(format!("h∘f ≠ f at {x}")));
            }
            PairMap::from_fn(f.len(), |x, y| (h.apply(y), f.apply(x)))?
        }
        SolutionKind::ROmega { a, omega } => {
            if a == 0 {
                return Err(Error::EmptySet);
            }
            let b = omega.len();
            PairMap::from_fn(a * b, |x, y| {
                let (a1, b1) = (x / b, x % b);
                let (a2, b2) = (y / b, y % b);
                (a1 * b + b2, a2 * b + omega.apply(b1))
            })?
        }
        SolutionKind::FROmega { f, omega } => {
            require_idempotent(&f)?;
            let b = omega.len();
            PairMap::from_fn(f.len() * b, |x, y| {
                let (a1, b1) = (x / b, x % b);
                let (a2, b2) = (y / b, y % b);
                (f.apply(a1) * b + b2, f.apply(a2) * b + omega.apply(b1))
            })?
        }
        SolutionKind::Product(s1, s2) => {
            let (p, q) = (s1.pm(), s2.pm());
            let m = q.n();
            PairMap::from_fn(p.n() * m, |x, y| {
                let (x1, x2) = (x / m, x % m);
                let (y1, y2) = (y / m, y % m);
                let (l1, r1) = p.apply(x1, y1);
                let (l2, r2) = q.apply(x2, y2);
                (l1 * m + l2, r1 * m + r2)
            })?
        }
    };
    Solution::new(pm)
}
