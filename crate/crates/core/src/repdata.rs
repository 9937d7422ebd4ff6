//! Branching data for loop-fundamental modules and the standard modules
//! built from them.
//!
//! The k-th loop-fundamental module restricts to the finite-dimensional
//! subalgebra as a multiset of irreducibles V(μ).  In type A it stays
//! irreducible; in type D the nodes k ≤ n−2 restrict to the alternating
//! chain ⋀^k ⊕ ⋀^{k−2} ⊕ ⋯ (ending in ⋀¹ for odd k, ⋀⁰ for even k) while the
//! two spin nodes stay irreducible; for E6/E7/E8 the rows are tabulated in
//! `data/lfundamental_e.toml`.  The E8 rows record only constituents of
//! nonzero quantum dimension — enough for quantum-dimension totals, not for
//! weight multiplicities — and are flagged `complete = false`.
//!
//! A standard module attached to a dominant w = Σ w_k Λ_k restricts to
//! ⊗_k W(Λ_k)^{⊗ w_k}, so its character is a convolution of the rows above
//! and its quantum dimension is the corresponding product.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::charlab::{convolve, full_multiplicities, FullChar};
use crate::cyclo::{CycloField, CycloNum};
use crate::error::{Error, Result};
use crate::qdim::quantum_dimension;
use crate::rootsys::{Family, RootSystem, Weight};

/// Restriction of one loop-fundamental module: multiset of highest weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LFundamental {
    pub node: usize,
    /// False when only the constituents of nonzero quantum dimension are
    /// recorded (the E8 rows); such rows cannot answer character queries.
    pub complete: bool,
    pub constituents: Vec<(Weight, u64)>,
}

#[derive(Deserialize)]
struct RawTable {
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
struct RawRow {
    label: String,
    node: usize,
    complete: bool,
    constituents: Vec<RawConstituent>,
}

#[derive(Deserialize)]
struct RawConstituent {
    weight: Vec<i64>,
    mult: u64,
}

fn exceptional_rows() -> &'static [RawRow] {
    static TABLE: OnceLock<Vec<RawRow>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let raw: RawTable = toml::from_str(include_str!("../data/lfundamental_e.toml"))
            .expect("embedded branching table parses");
        raw.row
    })
}

fn check_node(rs: &RootSystem, node: usize) -> Result<()> {
    if node == 0 || node > rs.rank() {
        return Err(Error::InvalidNode {
            label: rs.label().to_string(),
            node,
            rank: rs.rank(),
        });
    }
    Ok(())
}

/// The restriction of the k-th loop-fundamental module.
pub fn l_fundamental(rs: &RootSystem, node: usize) -> Result<LFundamental> {
    check_node(rs, node)?;
    let rank = rs.rank();
    match rs.label().family {
        Family::A => Ok(LFundamental {
            node,
            complete: true,
            constituents: vec![(Weight::fundamental(rank, node), 1)],
        }),
        Family::D => {
            if node >= rank - 1 {
                // Spin nodes restrict irreducibly.
                return Ok(LFundamental {
                    node,
                    complete: true,
                    constituents: vec![(Weight::fundamental(rank, node), 1)],
                });
            }
            let mut constituents = Vec::new();
            let mut k = node as i64;
            while k > 0 {
                constituents.push((Weight::fundamental(rank, k as usize), 1));
                k -= 2;
            }
            if k == 0 {
                constituents.push((Weight::zero(rank), 1));
            }
            Ok(LFundamental {
                node,
                complete: true,
                constituents,
            })
        }
        Family::E => {
            let label = rs.label().to_string();
            let row = exceptional_rows()
                .iter()
                .find(|r| r.label == label && r.node == node)
                .expect("every exceptional node is tabulated");
            Ok(LFundamental {
                node,
                complete: row.complete,
                constituents: row
                    .constituents
                    .iter()
                    .map(|c| (Weight(c.weight.clone()), c.mult))
                    .collect(),
            })
        }
    }
}

/// Quantum dimension of the k-th loop-fundamental module: Σ mult · dim_q V(μ).
/// Valid even for the incomplete E8 rows, since the omitted constituents
/// have quantum dimension zero by construction.
pub fn l_fundamental_qdim(rs: &RootSystem, field: &CycloField, node: usize) -> Result<CycloNum> {
    let lf = l_fundamental(rs, node)?;
    let mut acc = field.zero();
    for (mu, mult) in &lf.constituents {
        let d = quantum_dimension(rs, field, mu)?;
        field.add_assign(&mut acc, &field.mul_int(&d, &BigInt::from(*mult)));
    }
    Ok(acc)
}

/// Quantum dimensions of all loop-fundamental modules, node by node.
pub fn l_fundamental_qdims(rs: &RootSystem, field: &CycloField) -> Result<Vec<(usize, CycloNum)>> {
    (1..=rs.rank())
        .map(|k| l_fundamental_qdim(rs, field, k).map(|d| (k, d)))
        .collect()
}

/// Quantum dimension of the standard module for dominant w: the product of
/// the loop-fundamental quantum dimensions with multiplicities w_k.
pub fn standard_module_qdim(
    rs: &RootSystem,
    field: &CycloField,
    w: &Weight,
) -> Result<CycloNum> {
    if !rs.is_dominant(w) {
        return Err(Error::NotDominant(w.0.clone()));
    }
    let mut acc = field.one();
    for (k, &mult) in w.0.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let d = l_fundamental_qdim(rs, field, k + 1)?;
        for _ in 0..mult {
            acc = field.mul(&acc, &d);
        }
    }
    Ok(acc)
}

/// Full weight multiset of the k-th loop-fundamental module.
pub fn l_fundamental_character(rs: &RootSystem, node: usize, guard: u64) -> Result<FullChar> {
    let lf = l_fundamental(rs, node)?;
    if !lf.complete {
        return Err(Error::IncompleteTable);
    }
    let mut out: FullChar = std::collections::BTreeMap::new();
    for (mu, mult) in &lf.constituents {
        let f = full_multiplicities(rs, mu, guard)?;
        for (w, m) in f {
            let e = out.entry(w).or_insert_with(BigInt::zero);
            *e += m * BigInt::from(*mult);
        }
    }
    Ok(out)
}

/// Full weight multiset of the standard module attached to dominant w,
/// namely ⊗_k W(Λ_k)^{⊗ w_k}.
pub fn standard_module_character(
    rs: &RootSystem,
    w: &Weight,
    guard: u64,
    mass_guard: u64,
) -> Result<FullChar> {
    if !rs.is_dominant(w) {
        return Err(Error::NotDominant(w.0.clone()));
    }
    let mut prod: FullChar = std::collections::BTreeMap::new();
    prod.insert(Weight::zero(rs.rank()), BigInt::one());
    for (k, &mult) in w.0.iter().enumerate() {
        if mult == 0 {
            continue;
        }
        let f = l_fundamental_character(rs, k + 1, guard)?;
        for _ in 0..mult {
            prod = convolve(&prod, &f, mass_guard)?;
        }
    }
    Ok(prod)
}

/// Multiplicity of a single weight in the standard module for w.
pub fn standard_module_weight_multiplicity(
    rs: &RootSystem,
    w: &Weight,
    target: &Weight,
    guard: u64,
    mass_guard: u64,
) -> Result<BigInt> {
    let ch = standard_module_character(rs, w, guard, mass_guard)?;
    Ok(ch.get(target).cloned().unwrap_or_else(BigInt::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdim::field_for;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_label(s).unwrap()
    }

    const G: u64 = 1_000_000;
    const MG: u64 = 10_000_000;

    fn wt(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    /// Every loop-fundamental module has quantum dimension exactly 1, on
    /// every node of every simply-laced type up to rank 8.
    #[test]
    fn loop_fundamental_qdim_is_one_everywhere() {
        for s in [
            "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6",
            "E7", "E8",
        ] {
            let r = rs(s);
            let f = field_for(&r);
            for (k, d) in l_fundamental_qdims(&r, &f).unwrap() {
                assert_eq!(d, f.one(), "{s}, node {k}");
            }
        }
    }

    #[test]
    fn type_d_alternating_chain() {
        let r = rs("D5");
        assert_eq!(
            l_fundamental(&r, 3).unwrap().constituents,
            vec![(wt(&[0, 0, 1, 0, 0]), 1), (wt(&[1, 0, 0, 0, 0]), 1)]
        );
        assert_eq!(
            l_fundamental(&r, 2).unwrap().constituents,
            vec![(wt(&[0, 1, 0, 0, 0]), 1), (wt(&[0, 0, 0, 0, 0]), 1)]
        );
        // Spin nodes restrict irreducibly.
        assert_eq!(
            l_fundamental(&r, 4).unwrap().constituents,
            vec![(wt(&[0, 0, 0, 1, 0]), 1)]
        );
        assert_eq!(
            l_fundamental(&r, 5).unwrap().constituents,
            vec![(wt(&[0, 0, 0, 0, 1]), 1)]
        );
    }

    /// In the largest E7 row the only nonzero quantum dimensions are
    /// dim_q V(2Λ1) = −1 and dim_q V(0) = 1 (twice): total (−1) + 2 = 1.
    #[test]
    fn e7_node4_row_contributions() {
        let r = rs("E7");
        let f = field_for(&r);
        let lf = l_fundamental(&r, 4).unwrap();
        assert!(lf.complete);
        let total: u64 = lf.constituents.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 19);
        let mut nonzero = Vec::new();
        for (mu, mult) in &lf.constituents {
            let d = quantum_dimension(&r, &f, mu).unwrap();
            if !d.is_zero() {
                nonzero.push((mu.0.clone(), d.as_integer().unwrap(), *mult));
            }
        }
        assert_eq!(
            nonzero,
            vec![
                (vec![2, 0, 0, 0, 0, 0, 0], BigInt::from(-1), 1),
                (vec![0, 0, 0, 0, 0, 0, 0], BigInt::from(1), 2),
            ]
        );
    }

    /// The E8 node-4 row sums to (−4) + 18 + (−23) + 10 = 1.
    #[test]
    fn e8_node4_row_contributions() {
        let r = rs("E8");
        let f = field_for(&r);
        let lf = l_fundamental(&r, 4).unwrap();
        assert!(!lf.complete);
        let want = [
            (vec![0, 0, 0, 0, 0, 1, 0, 1], -1i64, 4u64),
            (vec![0, 0, 0, 0, 0, 0, 1, 1], 1, 18),
            (vec![0, 0, 0, 0, 0, 0, 0, 2], -1, 23),
            (vec![0, 0, 0, 0, 0, 0, 0, 0], 1, 10),
        ];
        assert_eq!(lf.constituents.len(), want.len());
        let mut total = BigInt::zero();
        for ((mu, mult), (wc, wd, wm)) in lf.constituents.iter().zip(&want) {
            assert_eq!(&mu.0, wc);
            assert_eq!(mult, wm);
            let d = quantum_dimension(&r, &f, mu).unwrap().as_integer().unwrap();
            assert_eq!(d, BigInt::from(*wd));
            total += d * BigInt::from(*mult);
        }
        assert_eq!(total, BigInt::one());
    }

    #[test]
    fn sl2_standard_module_character() {
        // (y + y^{-1})^4: weight multiplicities 1, 4, 6, 4, 1.
        let r = rs("A1");
        let ch = standard_module_character(&r, &wt(&[4]), G, MG).unwrap();
        assert_eq!(ch[&wt(&[4])], BigInt::from(1));
        assert_eq!(ch[&wt(&[2])], BigInt::from(4));
        assert_eq!(ch[&wt(&[0])], BigInt::from(6));
        assert_eq!(ch[&wt(&[-2])], BigInt::from(4));
        assert_eq!(ch[&wt(&[-4])], BigInt::from(1));
        let mass: BigInt = ch.values().sum();
        assert_eq!(mass, BigInt::from(16));
    }

    #[test]
    fn d4_vector_square_zero_weight() {
        // W(Λ1)^{⊗2} for D4: (C^8)^{⊗2} has an 8-dimensional zero weight space.
        let r = rs("D4");
        let m = standard_module_weight_multiplicity(&r, &wt(&[2, 0, 0, 0]), &wt(&[0, 0, 0, 0]), G, MG)
            .unwrap();
        assert_eq!(m, BigInt::from(8));
    }

    #[test]
    fn e8_characters_are_refused() {
        let r = rs("E8");
        assert!(matches!(
            standard_module_character(&r, &Weight::fundamental(8, 1), G, MG),
            Err(Error::IncompleteTable)
        ));
        // Quantum-dimension totals still work.
        let f = field_for(&r);
        assert_eq!(
            standard_module_qdim(&r, &f, &Weight::fundamental(8, 4)).unwrap(),
            f.one()
        );
    }

    #[test]
    fn node_out_of_range() {
        let r = rs("A3");
        assert!(matches!(
            l_fundamental(&r, 0),
            Err(Error::InvalidNode { .. })
        ));
        assert!(matches!(
            l_fundamental(&r, 4),
            Err(Error::InvalidNode { .. })
        ));
    }

    #[test]
    fn standard_module_qdim_is_one_for_arbitrary_dominant_w() {
        for (s, w) in [
            ("A3", vec![1, 2, 0]),
            ("D6", vec![2, 0, 0, 0, 1, 1]),
            ("E6", vec![1, 1, 0, 1, 0, 2]),
        ] {
            let r = rs(s);
            let f = field_for(&r);
            assert_eq!(standard_module_qdim(&r, &f, &wt(&w)).unwrap(), f.one(), "{s}");
        }
    }
}
