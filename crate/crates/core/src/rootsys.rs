//! Simply-laced (ADE) root systems in the Bourbaki vertex numbering.
//!
//! Weights are stored by their pairings with the simple coroots (coordinates
//! in the fundamental-weight basis), roots by their coordinates in the
//! simple-root basis.  With every root normalized to squared length 2 the
//! two bases are exchanged by the Cartan matrix, the coroot of α is α itself,
//! and ⟨μ, α∨⟩ = Σ_j α_j μ_j is a plain integer dot product.
//!
//! Vertex numbering: A_r is the path 1—2—…—r; D_r is the path 1—…—(r−2) with
//! both r−1 and r attached to r−2; E_r is the path 1—3—4—…—r with 2 attached
//! to 4.  The affine vertex 0 attaches where the highest root θ pairs to 1
//! (doubly for A_1), which the constructor derives rather than hardcodes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The three simply-laced families.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
            Family::E => write!(f, "E"),
        }
    }
}

/// A validated family-plus-rank label such as `A5`, `D4`, `E8`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(TypeLabel { family, rank })
        } else {
            Err(Error::InvalidLabel(format!("{family}{rank}")))
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidLabel(s.to_string());
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        TypeLabel::new(family, rank).map_err(|_| bad())
    }
}

/// A weight in fundamental-weight coordinates: `w.0[i] = ⟨w, α_{i+1}∨⟩`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(pub Vec<i64>);

/// An element of the root lattice in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RootCoords(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Single fundamental weight Λ_node (1-based node).
    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut c = vec![0; rank];
        c[node - 1] = 1;
        Weight(c)
    }
}

impl RootCoords {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Everything derived from a Cartan matrix of type ADE.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Adjugate matrix: `det * C^{-1}`, always integral.
    inv_scaled: Vec<Vec<i64>>,
    det: i64,
    positive_roots: Vec<RootCoords>,
    /// The same roots in fundamental coordinates (rows of C applied to them).
    positive_roots_fund: Vec<Vec<i64>>,
    rho: Weight,
    dual_coxeter: u64,
    /// Affine marks a_0..a_r with a_0 = 1; (a_1..a_r) are the coordinates of θ.
    marks: Vec<i64>,
    /// Sum of all positive roots (= 2ρ) in root coordinates.
    two_rho_root: Vec<i64>,
}

impl RootSystem {
    pub fn new(label: TypeLabel) -> Result<Self> {
        let rank = label.rank;
        let cartan = cartan_matrix(label);
        let (det, inv_scaled) = adjugate(&cartan)?;
        let positive_roots = close_positive_roots(&cartan);

        let mut two_rho_root = vec![0i64; rank];
        for r in &positive_roots {
            for (t, c) in two_rho_root.iter_mut().zip(&r.0) {
                *t += c;
            }
        }

        // θ is the unique root of maximal height; its coordinates are the
        // finite marks, and h∨ = 1 + Σ marks.
        let max_h = positive_roots.iter().map(|r| r.height()).max().unwrap();
        let tallest: Vec<_> = positive_roots
            .iter()
            .filter(|r| r.height() == max_h)
            .collect();
        assert_eq!(tallest.len(), 1, "highest root must be unique");
        let theta = tallest[0].clone();
        let dual_coxeter = (1 + theta.height()) as u64;

        let mut marks = Vec::with_capacity(rank + 1);
        marks.push(1);
        marks.extend_from_slice(&theta.0);

        let positive_roots_fund = positive_roots
            .iter()
            .map(|r| mat_vec(&cartan, &r.0))
            .collect();

        Ok(RootSystem {
            label,
            rank,
            cartan,
            inv_scaled,
            det,
            positive_roots,
            positive_roots_fund,
            rho: Weight(vec![1; rank]),
            dual_coxeter,
            marks,
            two_rho_root,
        })
    }

    pub fn from_label(s: &str) -> Result<Self> {
        RootSystem::new(s.parse()?)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[RootCoords] {
        &self.positive_roots
    }

    /// Positive roots in fundamental-weight coordinates, in the same order as
    /// [`Self::positive_roots`].
    pub fn positive_roots_fund(&self) -> &[Vec<i64>] {
        &self.positive_roots_fund
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn dual_coxeter(&self) -> u64 {
        self.dual_coxeter
    }

    /// Order of the root of unity in play: m = 2(h∨ + 1).
    pub fn conductor(&self) -> u64 {
        2 * (self.dual_coxeter + 1)
    }

    /// Affine marks a_0..a_r (a_0 = 1), the coordinates of δ.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn highest_root(&self) -> RootCoords {
        RootCoords(self.marks[1..].to_vec())
    }

    /// Sum of all positive roots (= 2ρ) in root coordinates.
    pub fn two_rho_root(&self) -> &[i64] {
        &self.two_rho_root
    }

    pub fn det_cartan(&self) -> i64 {
        self.det
    }

    /// ⟨w, α∨⟩ for α given in root coordinates.
    pub fn pairing(&self, w: &Weight, alpha: &RootCoords) -> i64 {
        assert_eq!(w.0.len(), self.rank);
        assert_eq!(alpha.0.len(), self.rank);
        w.0.iter().zip(&alpha.0).map(|(a, b)| a * b).sum()
    }

    /// Symmetric bilinear form (a, b) = aᵀ C⁻¹ b on the weight lattice,
    /// normalized so that (α, α) = 2 for every root.
    pub fn inner_product(&self, a: &Weight, b: &Weight) -> BigRational {
        assert_eq!(a.0.len(), self.rank);
        assert_eq!(b.0.len(), self.rank);
        let mut acc = BigInt::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += BigInt::from(a.0[i]) * BigInt::from(self.inv_scaled[i][j]) * BigInt::from(b.0[j]);
            }
        }
        BigRational::new(acc, BigInt::from(self.det))
    }

    /// Fundamental coordinates of a root-lattice element: C · r.
    pub fn root_to_weight(&self, r: &RootCoords) -> Weight {
        Weight(mat_vec(&self.cartan, &r.0))
    }

    /// Root coordinates of a weight if it lies in the root lattice.
    pub fn weight_root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        assert_eq!(w.0.len(), self.rank);
        let mut out = Vec::with_capacity(self.rank);
        for row in &self.inv_scaled {
            let y: i64 = row.iter().zip(&w.0).map(|(a, b)| a * b).sum();
            if y % self.det != 0 {
                return None;
            }
            out.push(y / self.det);
        }
        Some(out)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0.iter().all(|&c| c >= 0)
    }

    pub fn check_weight(&self, coords: &[i64]) -> Result<Weight> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: coords.len(),
            });
        }
        Ok(Weight(coords.to_vec()))
    }

    /// s_i(w) = w − ⟨w, α_i∨⟩ α_i (node is 1-based).
    pub fn simple_reflection(&self, node: usize, w: &Weight) -> Weight {
        let i = node - 1;
        let c = w.0[i];
        let mut out = w.0.clone();
        for (j, o) in out.iter_mut().enumerate() {
            *o -= c * self.cartan[i][j];
        }
        Weight(out)
    }

    /// The dominant chamber representative of the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        loop {
            match cur.0.iter().position(|&c| c < 0) {
                Some(i) => cur = self.simple_reflection(i + 1, &cur),
                None => return cur,
            }
        }
    }

    /// Q(m) = mᵀ C m / 2, the norm attached to the theta function of the
    /// root lattice.  Always a nonnegative integer (the lattice is even).
    pub fn q_norm(&self, m: &[i64]) -> i64 {
        assert_eq!(m.len(), self.rank);
        let mut acc: i64 = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += m[i] * self.cartan[i][j] * m[j];
            }
        }
        debug_assert!(acc >= 0 && acc % 2 == 0);
        acc / 2
    }

    /// The (r+1)×(r+1) affine Cartan matrix, vertex 0 first.
    pub fn affine_cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let theta_fund = mat_vec(&self.cartan, &self.marks[1..]);
        let mut aff = vec![vec![0i64; n + 1]; n + 1];
        aff[0][0] = 2;
        for j in 0..n {
            aff[0][j + 1] = -theta_fund[j];
            aff[j + 1][0] = -theta_fund[j];
            for k in 0..n {
                aff[j + 1][k + 1] = self.cartan[j][k];
            }
        }
        aff
    }

    /// Finite vertices adjacent to the affine vertex, with multiplicity
    /// (A1 returns `[1, 1]` for its double bond).
    pub fn affine_attachments(&self) -> Vec<usize> {
        let theta_fund = mat_vec(&self.cartan, &self.marks[1..]);
        let mut out = Vec::new();
        for (j, &c) in theta_fund.iter().enumerate() {
            for _ in 0..c {
                out.push(j + 1);
            }
        }
        out
    }
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn cartan_matrix(label: TypeLabel) -> Vec<Vec<i64>> {
    let r = label.rank;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match label.family {
        Family::A => {
            for i in 1..r {
                edges.push((i, i + 1));
            }
        }
        Family::D => {
            for i in 1..r - 2 {
                edges.push((i, i + 1));
            }
            edges.push((r - 2, r - 1));
            edges.push((r - 2, r));
        }
        Family::E => {
            edges.push((1, 3));
            for i in 3..r {
                edges.push((i, i + 1));
            }
            edges.push((2, 4));
        }
    }
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

/// All positive roots by upward closure: starting from the simple roots,
/// γ + α_i is a root exactly when ⟨γ, α_i∨⟩ < 0 (simply-laced, so all root
/// strings have length ≤ 2).  Returned sorted by (height, coordinates).
fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<RootCoords> {
    let n = cartan.len();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        set.insert(e.clone());
        queue.push(e);
    }
    while let Some(g) = queue.pop() {
        for i in 0..n {
            let p: i64 = (0..n).map(|j| cartan[i][j] * g[j]).sum();
            if p < 0 {
                let mut h = g.clone();
                h[i] += 1;
                if set.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = set.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots.into_iter().map(RootCoords).collect()
}

/// Determinant and adjugate (det·inverse) of an integer matrix, computed by
/// exact rational elimination.
fn adjugate(m: &[Vec<i64>]) -> Result<(i64, Vec<Vec<i64>>)> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    assert!(det.is_integer() && det.is_positive());
    let det_int = det.to_integer().to_i64().expect("determinant fits i64");
    let scaled = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let s = x * &det;
                    assert!(s.is_integer(), "adjugate must be integral");
                    s.to_integer().to_i64().expect("adjugate entry fits i64")
                })
                .collect()
        })
        .collect();
    Ok((det_int, scaled))
}
