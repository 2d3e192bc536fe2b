//! Deterministic inputs for the benchmarks.

use fse_core::fse::{from_quadruple, Quadruple, Solution};
use fse_core::{EndoMap, RectFactorization};

/// `x ↦ (x² + c) mod n`: a fixed, irregular self-map.
pub fn quadratic_map(n: usize, c: usize) -> EndoMap {
    EndoMap::new((0..n).map(|x| (x * x + c) % n).collect()).expect("in range")
}

/// A solution on `n` points whose band is `a × b` on the first `a·b`
/// points, with the rest hung on them and `ϑ′` a quadratic map.
pub fn banded_solution(n: usize, a: usize, b: usize) -> Solution {
    let k = a * b;
    assert!(k >= 1 && k <= n);
    let h = EndoMap::new((0..n).map(|x| if x < k { x } else { x % k }).collect()).expect("in range");
    let rect = RectFactorization::from_grid(n, a, b, (0..k).collect()).expect("valid grid");
    let q = Quadruple::new(h, rect, quadratic_map(b, 1)).expect("valid quadruple");
    from_quadruple(&q).expect("valid solution")
}
