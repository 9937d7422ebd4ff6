//! Independent combinatorial count of torus-fixed ideals for the cyclic
//! quotient C²/(Z/k), used to cross-check the root-of-unity series for the
//! type A_{k−1} root system.
//!
//! The invariant monomials x^a y^b under (x, y) ↦ (ωx, ω⁻¹y) are the pairs
//! S_k = {(a, b) ∈ N² : a ≡ b (mod k)}.  Torus-fixed colength-n ideals of
//! the invariant ring correspond to n-element subsets of S_k that are closed
//! downward under componentwise ≤ (the quotient of two comparable invariant
//! monomials is again invariant).  Counting those subsets by depth-first
//! search, adding elements in graded-lexicographic order, is exact and makes
//! no reference to root systems, cyclotomic arithmetic, or the Fock space.
//!
//! For k = 1 the count is the ordinary partition number p(n).

use num_bigint::BigInt;

/// Number of downward-closed n-element subsets of {(a,b) ∈ N²: a ≡ b mod k}.
pub fn count_staircases(k: u64, n: u64) -> u64 {
    assert!(k >= 1);
    if n == 0 {
        return 1;
    }
    let k = k as i64;
    let n = n as usize;
    // Any element of an n-element ideal admits a chain down to (0,0) whose
    // steps (k,0), (0,k), (1,1) each drop the degree by at most k + 2, so
    // degrees beyond (n−1)(k+2) cannot occur.
    let max_deg = (n as i64 - 1) * (k + 2);
    let mut pool: Vec<(i64, i64)> = Vec::new();
    for d in 0..=max_deg {
        for a in 0..=d {
            let b = d - a;
            if (a - b).rem_euclid(k) == 0 {
                pool.push((a, b));
            }
        }
    }
    // pool is in graded order (degree, then a ascending); any downward-closed
    // set listed in this order has downward-closed prefixes, because strictly
    // smaller elements have strictly smaller degree.
    let below: Vec<Vec<usize>> = pool
        .iter()
        .map(|&(a, b)| {
            pool.iter()
                .enumerate()
                .filter(|&(_, &(x, y))| x <= a && y <= b && (x, y) != (a, b))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();

    fn dfs(
        pool_len: usize,
        below: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        from: usize,
        remaining: usize,
        count: &mut u64,
    ) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        for i in from..pool_len {
            if below[i].iter().all(|&j| chosen[j]) {
                chosen[i] = true;
                dfs(pool_len, below, chosen, i + 1, remaining - 1, count);
                chosen[i] = false;
            }
        }
    }

    let mut chosen = vec![false; pool.len()];
    let mut count = 0;
    dfs(pool.len(), &below, &mut chosen, 0, n, &mut count);
    count
}

/// The sequence n ↦ count_staircases(k, n) for n = 0, …, order.
pub fn euler_series_oracle(k: u64, order: usize) -> Vec<BigInt> {
    (0..=order as u64)
        .map(|n| BigInt::from(count_staircases(k, n)))
        .collect()
}
