//! Character coefficients of the rank-(r+1) Fock space and their
//! root-of-unity specialization.
//!
//! The graded character is, with C the finite Cartan matrix and δ the grading
//! variable,
//!
//!   Z = ∏_{m≥1} (1 − e^{−mδ})^{−(r+1)} · Σ_{m⃗ ∈ Z^r} e^{−Q(m⃗)δ} ∏_i e^{−m_i α_i},
//!
//! where Q(m⃗) = m⃗ᵀCm⃗/2.  Two exact extractions are provided:
//!
//! * `z_coefficient`: the coefficient of a single e^{−v} for an affine
//!   dimension vector v = v₀δ + Σ c_i α_i, which is the colored-partition
//!   number p_{r+1}(v₀ − Q(c⃗)).
//! * `euler_series`: the q = e^{−δ} series of Z after substituting
//!   e^{−α_i} ↦ ω, a primitive (h∨+1)-th root of unity.  The lattice sum is
//!   collapsed to exact point counts per (norm, Σm_i mod h∨+1) class by a
//!   depth-first walk of the quadratic form's LDLᵀ factorization with exact
//!   rational bounds — no floating point is involved anywhere.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{CycloField, CycloNum};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Coefficients of ∏_{m≥1}(1 − q^m)^{−colors} up to q^order, exactly.
pub fn colored_partition_series(colors: usize, order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for _ in 0..colors {
        for m in 1..=order {
            for j in m..=order {
                let prev = c[j - m].clone();
                c[j] += prev;
            }
        }
    }
    c
}

/// Exact LDLᵀ data of the Cartan form q(x) = xᵀCx = Σ_i d_i (x_i + Σ_{j>i} u_{ij} x_j)².
struct LdlForm {
    d: Vec<Ratio<i64>>,
    /// u[i][j] stored for j > i (offset j − i − 1).
    u: Vec<Vec<Ratio<i64>>>,
}

fn ldl(cartan: &[Vec<i64>]) -> LdlForm {
    let n = cartan.len();
    let mut a: Vec<Vec<Ratio<i64>>> = cartan
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    for i in 0..n {
        let di = a[i][i];
        assert!(di.is_positive(), "Cartan form is positive definite");
        d.push(di);
        let row: Vec<Ratio<i64>> = a[i][i + 1..n].iter().map(|&x| x / di).collect();
        for j in i + 1..n {
            for k in j..n {
                let t = a[i][j] * a[i][k] / di;
                a[j][k] -= t;
                a[k][j] = a[j][k];
            }
        }
        u.push(row);
    }
    LdlForm { d, u }
}

/// Largest integer x with x² ≤ n.
fn isqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i128;
    // Floating point only seeds the guess; correct it exactly.
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Exact integer range of x with d(x + c)² ≤ t, for rationals d > 0, t, c.
/// Empty range is signalled by (1, 0).
fn coordinate_range(d: Ratio<i64>, t: Ratio<i64>, c: Ratio<i64>) -> (i64, i64) {
    if t.is_negative() {
        return (1, 0);
    }
    // (x + a/b)² ≤ u/v  ⟺  |bx + a| ≤ b√(u/v); with y = bx + a integral,
    // y² ≤ u b² / v  ⟺  y² ≤ ⌊u b² / v⌋.
    let q = t / d;
    let (u, v) = (*q.numer() as i128, *q.denom() as i128);
    let (a, b) = (*c.numer() as i128, *c.denom() as i128);
    debug_assert!(b > 0 && v > 0);
    let s = isqrt(u * b * b / v);
    let lo = div_ceil_i128(-s - a, b);
    let hi = div_floor_i128(s - a, b);
    (lo as i64, hi as i64)
}

fn div_floor_i128(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn div_ceil_i128(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Walk all m⃗ ∈ Z^r with m⃗ᵀCm⃗ ≤ 2·max_q, feeding each point and its norm
/// Q = m⃗ᵀCm⃗/2 to the sink.  `outer` restricts the values taken by the last
/// coordinate (used to split work across threads).
fn walk_lattice(
    rs: &RootSystem,
    form: &LdlForm,
    max_q: i64,
    outer: &[i64],
    sink: &mut dyn FnMut(&[i64], i64),
) {
    let n = rs.rank();
    let budget = Ratio::from_integer(2 * max_q);
    let mut coords = vec![0i64; n];

    fn descend(
        rs: &RootSystem,
        form: &LdlForm,
        level: usize,
        budget: Ratio<i64>,
        coords: &mut Vec<i64>,
        sink: &mut dyn FnMut(&[i64], i64),
    ) {
        // Levels run from the last coordinate down to the first; at `level`
        // the coordinates level+1.. are fixed.
        let shift: Ratio<i64> = form.u[level]
            .iter()
            .zip(coords[level + 1..].iter())
            .map(|(uij, &x)| *uij * Ratio::from_integer(x))
            .sum();
        let (lo, hi) = coordinate_range(form.d[level], budget, shift);
        for x in lo..=hi {
            coords[level] = x;
            let term = Ratio::from_integer(x) + shift;
            let spent = form.d[level] * term * term;
            if level == 0 {
                let q2 = rs.q_norm(coords);
                sink(coords, q2);
            } else {
                descend(rs, form, level - 1, budget - spent, coords, sink);
            }
        }
        coords[level] = 0;
    }

    if n == 1 {
        for &x in outer {
            coords[0] = x;
            let q = rs.q_norm(&coords);
            if q <= max_q {
                sink(&coords, q);
            }
        }
        return;
    }
    let top = n - 1;
    for &x in outer {
        coords[top] = x;
        let term = Ratio::from_integer(x);
        let spent = form.d[top] * term * term;
        if spent <= budget {
            descend(rs, form, top - 1, budget - spent, &mut coords, sink);
        }
    }
}

fn outer_values(form: &LdlForm, max_q: i64, rank: usize) -> Vec<i64> {
    let budget = Ratio::from_integer(2 * max_q);
    let (lo, hi) = coordinate_range(form.d[rank - 1], budget, Ratio::zero());
    (lo..=hi).collect()
}

/// Lattice point counts per (norm Q, class σ = Σ m_i mod h∨+1), for Q ≤ max_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSlice {
    max_q: i64,
    classes: usize,
    /// counts[Q][σ]
    counts: Vec<Vec<u64>>,
}

impl ThetaSlice {
    /// Exact counts by the LDLᵀ walk.  `threads` ≥ 1 splits the range of the
    /// outermost coordinate; the merged counts are independent of the split.
    pub fn compute(rs: &RootSystem, max_q: i64, threads: usize) -> ThetaSlice {
        assert!(max_q >= 0);
        let classes = (rs.dual_coxeter() + 1) as usize;
        let form = ldl(rs.cartan());
        let outer = outer_values(&form, max_q, rs.rank());
        let threads = threads.max(1).min(outer.len().max(1));

        let run = |chunk: &[i64]| -> Vec<Vec<u64>> {
            let mut counts = vec![vec![0u64; classes]; (max_q + 1) as usize];
            walk_lattice(rs, &form, max_q, chunk, &mut |m, q| {
                let sigma = m.iter().sum::<i64>().rem_euclid(classes as i64) as usize;
                counts[q as usize][sigma] += 1;
            });
            counts
        };

        let counts = if threads <= 1 {
            run(&outer)
        } else {
            let chunk_len = outer.len().div_ceil(threads);
            let partials: Vec<Vec<Vec<u64>>> = std::thread::scope(|scope| {
                let handles: Vec<_> = outer
                    .chunks(chunk_len)
                    .map(|chunk| scope.spawn(move || run(chunk)))
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            let mut total = vec![vec![0u64; classes]; (max_q + 1) as usize];
            for p in partials {
                for (t_row, p_row) in total.iter_mut().zip(p) {
                    for (t, v) in t_row.iter_mut().zip(p_row) {
                        *t += v;
                    }
                }
            }
            total
        };

        ThetaSlice {
            max_q,
            classes,
            counts,
        }
    }

    /// Independent rederivation by scanning the full coordinate box
    /// |m_i| ≤ √(2Q·(C⁻¹)_ii); exponentially slower, used as a cross-check.
    pub fn compute_box_scan(rs: &RootSystem, max_q: i64) -> ThetaSlice {
        assert!(max_q >= 0);
        let classes = (rs.dual_coxeter() + 1) as usize;
        let n = rs.rank();
        let det = rs.det_cartan() as i128;
        let bounds: Vec<i64> = (0..n)
            .map(|i| {
                // (C⁻¹)_ii = adj_ii / det; m_i² ≤ 2·max_q·adj_ii/det.
                let mut e = vec![0i64; n];
                e[i] = rs.det_cartan();
                let adj_ii =
                    rs.weight_root_coords(&crate::rootsys::Weight(e)).unwrap()[i] as i128;
                isqrt(2 * max_q as i128 * adj_ii / det) as i64
            })
            .collect();
        let mut counts = vec![vec![0u64; classes]; (max_q + 1) as usize];
        let mut m = vec![0i64; n];
        // Odometer over the box ∏ [−bound_i, bound_i].
        for (mi, b) in m.iter_mut().zip(&bounds) {
            *mi = -b;
        }
        loop {
            let q2: i64 = {
                let mut acc = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        acc += m[i] * rs.cartan()[i][j] * m[j];
                    }
                }
                acc
            };
            if q2 % 2 == 0 && q2 / 2 <= max_q {
                let sigma = m.iter().sum::<i64>().rem_euclid(classes as i64) as usize;
                counts[(q2 / 2) as usize][sigma] += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return ThetaSlice {
                        max_q,
                        classes,
                        counts,
                    };
                }
                m[i] += 1;
                if m[i] <= bounds[i] {
                    break;
                }
                m[i] = -bounds[i];
                i += 1;
            }
        }
    }

    pub fn max_norm(&self) -> i64 {
        self.max_q
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn count(&self, q: i64, sigma: usize) -> u64 {
        self.counts[q as usize][sigma]
    }

    /// Total number of points of norm exactly q.
    pub fn points_of_norm(&self, q: i64) -> u64 {
        self.counts[q as usize].iter().sum()
    }
}

/// All lattice points with norm Q(m⃗) ≤ max_q, with their norms, sorted.
pub fn lattice_points_up_to(rs: &RootSystem, max_q: i64) -> Vec<(Vec<i64>, i64)> {
    let form = ldl(rs.cartan());
    let outer = outer_values(&form, max_q, rs.rank());
    let mut pts = Vec::new();
    walk_lattice(rs, &form, max_q, &outer, &mut |m, q| {
        pts.push((m.to_vec(), q));
    });
    pts.sort();
    pts
}

/// Coefficient of e^{−v} in Z for an affine dimension vector
/// v = (v₀; v₁, …, v_r): equals p_{r+1}(v₀ − Q(c⃗)) with c_i = v_i − v₀ a_i.
pub fn z_coefficient(rs: &RootSystem, v: &[i64]) -> Result<BigInt> {
    let n = rs.rank();
    if v.len() != n + 1 {
        return Err(Error::InvalidDimensionVector(format!(
            "expected {} affine coordinates, got {}",
            n + 1,
            v.len()
        )));
    }
    let v0 = v[0];
    let c: Vec<i64> = (0..n).map(|i| v[i + 1] - v0 * rs.marks()[i + 1]).collect();
    if v0 < 0 {
        return Ok(BigInt::zero());
    }
    let exponent = v0 - rs.q_norm(&c);
    if exponent < 0 {
        return Ok(BigInt::zero());
    }
    let series = colored_partition_series(n + 1, exponent as usize);
    Ok(series[exponent as usize].clone())
}

/// The q-expansion of Z after e^{−α_i} ↦ ω (primitive (h∨+1)-th root of
/// unity): exact integer coefficients.  Fails with `NonIntegralCoefficient`
/// if a coefficient were not a rational integer.
pub fn euler_series(rs: &RootSystem, order: usize, threads: usize) -> Result<Vec<BigInt>> {
    let theta = ThetaSlice::compute(rs, order as i64, threads);
    euler_series_from_theta(rs, &theta, order)
}

/// Same series, reusing precomputed lattice counts (needs theta.max_norm() ≥ order).
pub fn euler_series_from_theta(
    rs: &RootSystem,
    theta: &ThetaSlice,
    order: usize,
) -> Result<Vec<BigInt>> {
    assert!(theta.max_norm() >= order as i64);
    let field = CycloField::new(rs.conductor());
    let classes = theta.classes();
    // ω = ζ², so the class σ contributes ζ^{2σ}.
    let theta_coeffs: Vec<CycloNum> = (0..=order)
        .map(|q| {
            let mut acc = field.zero();
            for sigma in 0..classes {
                let cnt = theta.count(q as i64, sigma);
                if cnt != 0 {
                    field.add_assign(
                        &mut acc,
                        &field.mul_int(&field.zeta_pow(2 * sigma as i64), &BigInt::from(cnt)),
                    );
                }
            }
            acc
        })
        .collect();
    let parts = colored_partition_series(rs.rank() + 1, order);
    let mut out = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = field.zero();
        for q in 0..=m {
            field.add_assign(&mut acc, &field.mul_int(&theta_coeffs[q], &parts[m - q]));
        }
        match acc.as_integer() {
            Some(i) => out.push(i),
            None => return Err(Error::NonIntegralCoefficient { order: m }),
        }
    }
    Ok(out)
}
