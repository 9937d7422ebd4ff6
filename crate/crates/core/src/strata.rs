//! Stratification of the degree-m quiver varieties attached to an affine
//! dimension vector, and the recursion computing the Euler number of each
//! open stratum.
//!
//! Fix v = mδ + Σ_i c_i α_i (affine coordinates (m; v_1, …, v_r)).  Strata of
//! the corresponding variety are indexed by lattice points m⃗′ ∈ Z^r with
//!
//!   (i)   m′_i ≤ c_i for all i          (the removed part v^s = Σ(c_i−m′_i)α_i ≥ 0),
//!   (ii)  w^s = −Cm⃗′ dominant           (which forces m⃗′ ≤ 0),
//!   (iii) Q(m⃗′) ≤ m                     (the stratum is nonempty),
//!
//! where Q(x) = xᵀCx/2.  The stratum for m⃗′ has dimension 2(m − Q(m⃗′)) and is
//! the regular locus for the smaller vector v′ = mδ + Σm′_iα_i; its closure
//! contains exactly the strata t with m⃗′_t ≤ m⃗′ componentwise.
//!
//! The coefficient of e^{−v′} in the Fock character decomposes over the
//! strata below v′, weighted by standard-module weight multiplicities:
//!
//!   z(v′_s) = Σ_{t ≤ s} χ(t) · mult_{SM(w^s_t)}(w^s_s),
//!
//! and since the highest weight of SM(w^s_s) has multiplicity one, the Euler
//! numbers χ(t) of the open strata follow by induction from the deepest
//! stratum upward.  Summing χ over all strata of v = nδ yields the Euler
//! number of the n-point Hilbert scheme of the simple singularity, matching
//! the root-of-unity series from `fock::euler_series` term by term.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::charlab::FullChar;
use crate::error::{Error, Result};
use crate::fock::{lattice_points_up_to, z_coefficient};
use crate::repdata::standard_module_character;
use crate::rootsys::{RootSystem, Weight};

/// One stratum of the variety attached to an affine dimension vector v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// The indexing lattice point m⃗′ (all entries ≤ 0).
    pub m_prime: Vec<i64>,
    /// Root coordinates of the removed finite part v^s = Σ(c_i − m′_i)α_i.
    pub v_s: Vec<i64>,
    /// The dominant weight w^s = −Cm⃗′.
    pub w_s: Weight,
    /// Q(m⃗′) = m⃗′ᵀCm⃗′/2.
    pub norm: i64,
    /// Real dimension 2(m − Q(m⃗′)) of the stratum.
    pub dim: i64,
    /// Affine coordinates of v′ = v − v^s = mδ + Σm′_iα_i.
    pub v_prime: Vec<i64>,
}

/// Affine coordinates of nδ.
pub fn delta_multiple(rs: &RootSystem, n: i64) -> Vec<i64> {
    rs.marks().iter().map(|a| n * a).collect()
}

fn cartan_times(rs: &RootSystem, x: &[i64]) -> Vec<i64> {
    rs.cartan()
        .iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// All strata of the variety for affine v, deepest first (ascending Σm′,
/// then lexicographic), so every stratum is preceded by all strata in its
/// closure.
pub fn enumerate_strata(rs: &RootSystem, v: &[i64]) -> Result<Vec<Stratum>> {
    let n = rs.rank();
    if v.len() != n + 1 {
        return Err(Error::InvalidDimensionVector(format!(
            "expected {} affine coordinates, got {}",
            n + 1,
            v.len()
        )));
    }
    let m = v[0];
    if m < 0 {
        return Err(Error::InvalidDimensionVector(format!(
            "negative multiplicity {m} of the imaginary root"
        )));
    }
    let c: Vec<i64> = (0..n).map(|i| v[i + 1] - m * rs.marks()[i + 1]).collect();

    let mut strata = Vec::new();
    for (mp, q) in lattice_points_up_to(rs, m) {
        if mp.iter().zip(&c).any(|(mi, ci)| mi > ci) {
            continue;
        }
        let w = cartan_times(rs, &mp);
        if w.iter().any(|&x| -x < 0) {
            continue;
        }
        debug_assert!(mp.iter().all(|&x| x <= 0));
        let w_s = Weight(w.iter().map(|&x| -x).collect());
        let v_s: Vec<i64> = c.iter().zip(&mp).map(|(ci, mi)| ci - mi).collect();
        let mut v_prime = Vec::with_capacity(n + 1);
        v_prime.push(m);
        for (mark, mi) in rs.marks()[1..].iter().zip(&mp) {
            v_prime.push(m * mark + mi);
        }
        strata.push(Stratum {
            m_prime: mp,
            v_s,
            w_s,
            norm: q,
            dim: 2 * (m - q),
            v_prime,
        });
    }
    strata.sort_by_key(|s| (s.m_prime.iter().sum::<i64>(), s.m_prime.clone()));
    Ok(strata)
}

/// Strata of v together with the Euler number χ of each open stratum, by the
/// induction described in the module docs.  Requires the standard-module
/// characters of every w^s, so it fails with `IncompleteTable` where those
/// are unavailable (E8).
pub fn strata_euler(
    rs: &RootSystem,
    v: &[i64],
    guard: u64,
    mass_guard: u64,
) -> Result<Vec<(Stratum, BigInt)>> {
    let strata = enumerate_strata(rs, v)?;
    let mut sm_chars: BTreeMap<Weight, FullChar> = BTreeMap::new();
    for s in &strata {
        if !sm_chars.contains_key(&s.w_s) {
            let ch = standard_module_character(rs, &s.w_s, guard, mass_guard)?;
            sm_chars.insert(s.w_s.clone(), ch);
        }
    }
    let mut chi: Vec<BigInt> = Vec::with_capacity(strata.len());
    for (si, s) in strata.iter().enumerate() {
        let mut acc = z_coefficient(rs, &s.v_prime)?;
        for (ti, t) in strata.iter().enumerate().take(si) {
            if t.m_prime.iter().zip(&s.m_prime).all(|(a, b)| a <= b) {
                let mult = sm_chars[&t.w_s]
                    .get(&s.w_s)
                    .cloned()
                    .unwrap_or_else(BigInt::zero);
                acc -= &chi[ti] * mult;
            }
        }
        chi.push(acc);
    }
    Ok(strata.into_iter().zip(chi).collect())
}

/// Euler number of the n-point Hilbert scheme of the simple singularity:
/// the sum of χ over all strata of v = nδ.
pub fn hilbert_euler_via_strata(
    rs: &RootSystem,
    n: i64,
    guard: u64,
    mass_guard: u64,
) -> Result<BigInt> {
    let with_chi = strata_euler(rs, &delta_multiple(rs, n), guard, mass_guard)?;
    Ok(with_chi.into_iter().map(|(_, chi)| chi).sum())
}
