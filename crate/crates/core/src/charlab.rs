//! Weight multiplicities and character manipulation for finite-dimensional
//! highest-weight modules.
//!
//! Multiplicities come from Freudenthal's recursion arranged so that every
//! intermediate quantity is an integer:
//!
//!   (λ+μ+2ρ, λ−μ) · mult(μ) = 2 Σ_{α>0} Σ_{j≥1} (⟨μ, α∨⟩ + 2j) · mult(μ+jα),
//!
//! where, writing λ − μ = Σ c_i α_i, the left factor equals
//! Σ_i c_i (λ_i + μ_i + 2) — a positive integer for dominant μ ≠ λ.
//! The dominant weights of V(λ) are generated by repeatedly subtracting
//! positive roots from λ and keeping dominant results (every covering
//! relation in the dominance order on dominant weights is a positive root).
//!
//! Characters of tensor products are convolved as multisets of weights and
//! decomposed greedily from the highest surviving dominant weight; a
//! negative leading coefficient means the input was not the character of an
//! actual module.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qdim::weyl_dimension;
use crate::rootsys::{RootSystem, Weight};

/// A Weyl-invariant character recorded on dominant weights only.
pub type DominantChar = BTreeMap<Weight, BigInt>;

/// A character as a full multiset of weights (fundamental coordinates).
pub type FullChar = BTreeMap<Weight, BigInt>;

fn ensure_dimension_guard(rs: &RootSystem, lambda: &Weight, guard: u64) -> Result<BigInt> {
    let dim = weyl_dimension(rs, lambda)?;
    if dim > BigInt::from(guard) {
        return Err(Error::ResourceGuard {
            what: "module dimension",
            needed: dim.to_u128().unwrap_or(u128::MAX),
            guard: guard as u128,
        });
    }
    Ok(dim)
}

/// All dominant weights μ with μ ≤ λ in the dominance order, together with
/// the root coordinates of λ − μ, sorted by increasing depth Σ c_i.
fn dominant_weights_with_offsets(rs: &RootSystem, lambda: &Weight) -> Vec<(Weight, Vec<i64>)> {
    let rank = rs.rank();
    let mut seen: BTreeMap<Weight, Vec<i64>> = BTreeMap::new();
    seen.insert(lambda.clone(), vec![0; rank]);
    let mut queue: VecDeque<Weight> = VecDeque::new();
    queue.push_back(lambda.clone());
    while let Some(nu) = queue.pop_front() {
        let off = seen[&nu].clone();
        for alpha in rs.positive_roots() {
            let af = rs.root_to_weight(alpha);
            let cand = Weight(nu.0.iter().zip(&af.0).map(|(a, b)| a - b).collect());
            if !rs.is_dominant(&cand) || seen.contains_key(&cand) {
                continue;
            }
            let mut noff = off.clone();
            for (o, a) in noff.iter_mut().zip(&alpha.0) {
                *o += a;
            }
            seen.insert(cand.clone(), noff);
            queue.push_back(cand);
        }
    }
    let mut out: Vec<(Weight, Vec<i64>)> = seen.into_iter().collect();
    out.sort_by_key(|(w, off)| (off.iter().sum::<i64>(), w.clone()));
    out
}

/// The dominant weights of V(λ) and their root-coordinate offsets from λ.
pub fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    dominant_weights_with_offsets(rs, lambda)
        .into_iter()
        .map(|(w, _)| w)
        .collect()
}

/// Weight multiplicities of V(λ) on dominant weights, by the all-integer
/// Freudenthal recursion.
pub fn dominant_multiplicities(
    rs: &RootSystem,
    lambda: &Weight,
    guard: u64,
) -> Result<DominantChar> {
    ensure_dimension_guard(rs, lambda, guard)?;
    let layers = dominant_weights_with_offsets(rs, lambda);
    let mut mult: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for (mu, off) in &layers {
        if off.iter().all(|&c| c == 0) {
            mult.insert(mu.clone(), BigInt::one());
            continue;
        }
        let mut numerator = BigInt::zero();
        for alpha in rs.positive_roots() {
            let pairing_mu = rs.pairing(mu, alpha);
            let af = rs.root_to_weight(alpha);
            let jmax = off
                .iter()
                .zip(&alpha.0)
                .filter(|&(_, &a)| a > 0)
                .map(|(&c, &a)| c / a)
                .min()
                .unwrap_or(0);
            for j in 1..=jmax {
                let shifted = Weight(
                    mu.0.iter()
                        .zip(&af.0)
                        .map(|(x, a)| x + j * a)
                        .collect(),
                );
                let rep = rs.dominant_representative(&shifted);
                if let Some(m) = mult.get(&rep) {
                    numerator += BigInt::from(pairing_mu + 2 * j) * m;
                }
            }
        }
        numerator *= BigInt::from(2);
        let denominator: i64 = off
            .iter()
            .zip(lambda.0.iter().zip(&mu.0))
            .map(|(&c, (&li, &mi))| c * (li + mi + 2))
            .sum();
        assert!(denominator > 0);
        let (q, r) = num_integer::Integer::div_rem(&numerator, &BigInt::from(denominator));
        assert!(r.is_zero(), "Freudenthal division must be exact");
        if !q.is_zero() {
            mult.insert(mu.clone(), q);
        }
    }
    Ok(mult)
}

/// The Weyl orbit of a weight (works for any starting point).
pub fn weyl_orbit(rs: &RootSystem, w: &Weight) -> Vec<Weight> {
    let mut seen: std::collections::BTreeSet<Weight> = std::collections::BTreeSet::new();
    let start = rs.dominant_representative(w);
    seen.insert(start.clone());
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for i in 1..=rs.rank() {
            let r = rs.simple_reflection(i, &v);
            if seen.insert(r.clone()) {
                queue.push(r);
            }
        }
    }
    seen.into_iter().collect()
}

/// Full weight multiset of V(λ): dominant multiplicities spread over orbits.
pub fn full_multiplicities(rs: &RootSystem, lambda: &Weight, guard: u64) -> Result<FullChar> {
    let dom = dominant_multiplicities(rs, lambda, guard)?;
    let mut out: FullChar = BTreeMap::new();
    for (mu, m) in &dom {
        for w in weyl_orbit(rs, mu) {
            out.insert(w, m.clone());
        }
    }
    Ok(out)
}

/// Character of a tensor product: pointwise convolution of weight multisets.
/// `mass_guard` bounds the number of weight pairs touched.
pub fn convolve(a: &FullChar, b: &FullChar, mass_guard: u64) -> Result<FullChar> {
    let work = a.len() as u128 * b.len() as u128;
    if work > mass_guard as u128 {
        return Err(Error::ResourceGuard {
            what: "tensor character size",
            needed: work,
            guard: mass_guard as u128,
        });
    }
    let mut out: FullChar = BTreeMap::new();
    for (u, mu) in a {
        for (v, mv) in b {
            let sum = Weight(u.0.iter().zip(&v.0).map(|(x, y)| x + y).collect());
            let e = out.entry(sum).or_insert_with(BigInt::zero);
            *e += mu * mv;
        }
    }
    Ok(out)
}

/// Restriction of a full character to its dominant weights.
pub fn dominant_part(rs: &RootSystem, full: &FullChar) -> DominantChar {
    full.iter()
        .filter(|(w, _)| rs.is_dominant(w))
        .map(|(w, m)| (w.clone(), m.clone()))
        .collect()
}

/// A decomposition into irreducibles: pairs (highest weight, multiplicity).
pub type IsoDecomposition = Vec<(Weight, BigInt)>;

/// Scaled height functional refining the dominance order: if μ < ν then
/// h(μ) < h(ν).  Equals det(C) · Σ (root coordinates of w), an integer since
/// det·C⁻¹ is the (integral) adjugate.
fn scaled_height(rs: &RootSystem, w: &Weight) -> i64 {
    let scaled = Weight(w.0.iter().map(|c| c * rs.det_cartan()).collect());
    rs.weight_root_coords(&scaled)
        .expect("det·w lies in the root lattice")
        .iter()
        .sum()
}

/// Decompose the dominant part of a module character into irreducibles.
/// Fails with `NotACharacter` if some virtual multiplicity turns negative.
pub fn decompose_dominant(
    rs: &RootSystem,
    character: &DominantChar,
    guard: u64,
) -> Result<IsoDecomposition> {
    let mut rest: BTreeMap<Weight, BigInt> = character
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(w, m)| (w.clone(), m.clone()))
        .collect();
    let mut out: IsoDecomposition = Vec::new();
    while !rest.is_empty() {
        let top = rest
            .iter()
            .max_by_key(|(w, _)| (scaled_height(rs, w), (*w).clone()))
            .map(|(w, _)| w.clone())
            .unwrap();
        let coeff = rest[&top].clone();
        if coeff.is_negative() {
            return Err(Error::NotACharacter(top.0.clone()));
        }
        let mults = dominant_multiplicities(rs, &top, guard)?;
        for (mu, m) in &mults {
            let e = rest.entry(mu.clone()).or_insert_with(BigInt::zero);
            *e -= &coeff * m;
        }
        rest.retain(|_, m| !m.is_zero());
        out.push((top, coeff));
    }
    out.sort_by_key(|(w, _)| (std::cmp::Reverse(scaled_height(rs, w)), w.clone()));
    Ok(out)
}

/// Multiplicity of the weight μ in V(λ).
pub fn weight_multiplicity(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
    guard: u64,
) -> Result<BigInt> {
    let dom = dominant_multiplicities(rs, lambda, guard)?;
    let rep = rs.dominant_representative(mu);
    Ok(dom.get(&rep).cloned().unwrap_or_else(BigInt::zero))
}

/// Multiplicity of the trivial module in a tensor product ⊗ V(λ_i).
pub fn trivial_multiplicity(
    rs: &RootSystem,
    factors: &[Weight],
    guard: u64,
    mass_guard: u64,
) -> Result<BigInt> {
    let mut prod: FullChar = BTreeMap::new();
    prod.insert(Weight::zero(rs.rank()), BigInt::one());
    for lam in factors {
        let f = full_multiplicities(rs, lam, guard)?;
        prod = convolve(&prod, &f, mass_guard)?;
    }
    let decomp = decompose_dominant(rs, &dominant_part(rs, &prod), guard)?;
    Ok(decomp
        .into_iter()
        .find(|(w, _)| w.is_zero())
        .map(|(_, c)| c)
        .unwrap_or_else(BigInt::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_label(s).unwrap()
    }

    const G: u64 = 1_000_000;
    const MG: u64 = 10_000_000;

    fn wt(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn total_dimension(r: &RootSystem, dom: &DominantChar) -> BigInt {
        let mut acc = BigInt::zero();
        for (mu, m) in dom {
            acc += m * BigInt::from(weyl_orbit(r, mu).len());
        }
        acc
    }

    #[test]
    fn sl2_string_module() {
        let r = rs("A1");
        let dom = dominant_multiplicities(&r, &wt(&[4]), G).unwrap();
        let want: DominantChar = [(wt(&[4]), 1), (wt(&[2]), 1), (wt(&[0]), 1)]
            .into_iter()
            .map(|(w, m)| (w, BigInt::from(m)))
            .collect();
        assert_eq!(dom, want);
    }

    #[test]
    fn a2_adjoint_zero_weight() {
        let r = rs("A2");
        let dom = dominant_multiplicities(&r, &wt(&[1, 1]), G).unwrap();
        assert_eq!(dom[&wt(&[0, 0])], BigInt::from(2));
        assert_eq!(total_dimension(&r, &dom), BigInt::from(8));
    }

    #[test]
    fn d4_adjoint_zero_weight_is_rank() {
        let r = rs("D4");
        let dom = dominant_multiplicities(&r, &Weight::fundamental(4, 2), G).unwrap();
        assert_eq!(dom[&wt(&[0, 0, 0, 0])], BigInt::from(4));
        assert_eq!(total_dimension(&r, &dom), BigInt::from(28));
    }

    #[test]
    fn a3_symmetric_square_weight_space() {
        // V(0,2,0) of A3 is 20-dimensional with zero-weight space of dim 2.
        let r = rs("A3");
        let lam = wt(&[0, 2, 0]);
        let dom = dominant_multiplicities(&r, &lam, G).unwrap();
        assert_eq!(total_dimension(&r, &dom), BigInt::from(20));
        assert_eq!(
            weight_multiplicity(&r, &lam, &wt(&[0, 0, 0]), G).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn freudenthal_total_mass_matches_weyl_dimension() {
        for (s, lam) in [
            ("A3", vec![1, 1, 1]),
            ("D4", vec![0, 1, 0, 0]),
            ("E6", vec![1, 0, 0, 0, 0, 0]),
            ("D5", vec![0, 0, 0, 0, 2]),
        ] {
            let r = rs(s);
            let lam = wt(&lam);
            let dom = dominant_multiplicities(&r, &lam, G).unwrap();
            assert_eq!(
                total_dimension(&r, &dom),
                weyl_dimension(&r, &lam).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(weyl_orbit(&rs("A2"), &wt(&[1, 0])).len(), 3);
        assert_eq!(weyl_orbit(&rs("A2"), &wt(&[1, 1])).len(), 6);
        assert_eq!(weyl_orbit(&rs("D4"), &Weight::fundamental(4, 2)).len(), 24);
        assert_eq!(weyl_orbit(&rs("E6"), &Weight::fundamental(6, 1)).len(), 27);
        // Orbit of a non-dominant input agrees with its dominant form.
        assert_eq!(weyl_orbit(&rs("A2"), &wt(&[-1, 1])).len(), 3);
    }

    #[test]
    fn dominant_set_matches_box_scan() {
        for (s, lam) in [
            ("A2", vec![2, 2]),
            ("A3", vec![1, 1, 1]),
            ("D4", vec![0, 1, 0, 0]),
        ] {
            let r = rs(s);
            let lam = wt(&lam);
            let got: std::collections::BTreeSet<Weight> =
                dominant_weights_below(&r, &lam).into_iter().collect();

            // Brute force: c_i ≤ Σ_j (C⁻¹)_{ij} λ_j since μ = λ − C·c is
            // dominant and C⁻¹ has positive entries.
            let n = r.rank();
            let det = r.det_cartan();
            let mut bounds = vec![0i64; n];
            for i in 0..n {
                let mut num = 0i64;
                for j in 0..n {
                    let mut e = vec![0i64; n];
                    e[j] = det;
                    let adj = r.weight_root_coords(&Weight(e)).unwrap();
                    num += adj[i] * lam.0[j];
                }
                bounds[i] = num / det;
            }
            let mut want = std::collections::BTreeSet::new();
            let mut c = vec![0i64; n];
            'outer: loop {
                let cf = r.root_to_weight(&crate::rootsys::RootCoords(c.clone()));
                let mu = Weight(lam.0.iter().zip(&cf.0).map(|(a, b)| a - b).collect());
                if r.is_dominant(&mu) {
                    want.insert(mu);
                }
                for i in 0..n {
                    c[i] += 1;
                    if c[i] <= bounds[i] {
                        continue 'outer;
                    }
                    c[i] = 0;
                }
                break;
            }
            assert_eq!(got, want, "{s}");
        }
    }

    #[test]
    fn sl2_fourfold_tensor_decomposition() {
        let r = rs("A1");
        let v1 = full_multiplicities(&r, &wt(&[1]), G).unwrap();
        let mut prod = v1.clone();
        for _ in 0..3 {
            prod = convolve(&prod, &v1, MG).unwrap();
        }
        let decomp = decompose_dominant(&r, &dominant_part(&r, &prod), G).unwrap();
        let want: IsoDecomposition = vec![
            (wt(&[4]), BigInt::from(1)),
            (wt(&[2]), BigInt::from(3)),
            (wt(&[0]), BigInt::from(2)),
        ];
        assert_eq!(decomp, want);
        assert_eq!(
            trivial_multiplicity(&r, &[wt(&[1]), wt(&[1]), wt(&[1]), wt(&[1])], G, MG).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn a3_wedge_squared_tensor() {
        // ⋀²C⁴ ⊗ ⋀²C⁴ = V(0,2,0) ⊕ V(1,0,1) ⊕ V(0,0,0): 36 = 20 + 15 + 1.
        let r = rs("A3");
        let w2 = full_multiplicities(&r, &wt(&[0, 1, 0]), G).unwrap();
        let prod = convolve(&w2, &w2, MG).unwrap();
        let decomp = decompose_dominant(&r, &dominant_part(&r, &prod), G).unwrap();
        let want: IsoDecomposition = vec![
            (wt(&[0, 2, 0]), BigInt::one()),
            (wt(&[1, 0, 1]), BigInt::one()),
            (wt(&[0, 0, 0]), BigInt::one()),
        ];
        assert_eq!(decomp, want);
    }

    #[test]
    fn non_character_is_rejected() {
        let r = rs("A1");
        let mut bad: DominantChar = BTreeMap::new();
        bad.insert(wt(&[2]), BigInt::from(-1));
        assert!(matches!(
            decompose_dominant(&r, &bad, G),
            Err(Error::NotACharacter(_))
        ));
    }

    #[test]
    fn dimension_guard_trips() {
        let r = rs("A1");
        let res = dominant_multiplicities(&r, &wt(&[2000]), 1000);
        assert!(matches!(res, Err(Error::ResourceGuard { .. })));
    }
}
