//! Exact arithmetic in the cyclotomic field Q(ζ_m).
//!
//! Elements are represented by their coordinates in the power basis
//! 1, x, …, x^{φ(m)−1} of Q[x]/(Φ_m), with Φ_m computed from
//! ∏_{d ∣ m} (x^d − 1)^{μ(m/d)} by exact integer polynomial division.
//! Everything is rational arithmetic — no floating point anywhere — so a
//! value equal to 1 is literally the vector (1, 0, …, 0).
//!
//! The balanced q-integers [k] = (ζ^k − ζ^{−k}) / (ζ − ζ^{−1}) at ζ = ζ_m
//! drive the quantum-dimension formula.  With m = 2L they satisfy
//! [k + m] = [k], [−k] = −[k], [L] = 0 and [L − k] = [k], so every [k]
//! reduces to ±[r] with 0 ≤ r ≤ ⌊L/2⌋.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of Q(ζ_m), tagged with the conductor m of its field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloNum {
    m: u64,
    /// Coordinates in the basis 1, x, …, x^{deg−1}; length = φ(m).
    c: Vec<BigRational>,
}

impl CycloNum {
    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Some(r) when the element is the rational number r.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Some(n) when the element is the integer n.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Human-readable polynomial in ζ, e.g. `1 - 2ζ^3 + (1/2)ζ^5`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            let _ = match k {
                0 => write!(out, "{}", if coeff.is_empty() { "1".into() } else { coeff }),
                1 => write!(out, "{coeff}ζ"),
                _ => write!(out, "{coeff}ζ^{k}"),
            };
        }
        out
    }
}

/// The field Q(ζ_m) with precomputed reduction tables.
#[derive(Clone, Debug)]
pub struct CycloField {
    m: u64,
    deg: usize,
    /// Monic minimal polynomial Φ_m, length deg + 1, integer coefficients.
    phi: Vec<BigInt>,
    /// zeta_pow_table[k] = coordinates of x^k mod Φ_m, for 0 ≤ k < m.
    zeta_pow_table: Vec<Vec<BigInt>>,
    /// (ζ − ζ^{−1})^{−1}, the denominator of every balanced q-integer.
    inv_diff: CycloNum,
}

impl CycloField {
    /// Field of m-th roots of unity; requires m ≥ 3 so that ζ ≠ ζ^{−1}.
    pub fn new(m: u64) -> Self {
        assert!(m >= 3, "conductor must be at least 3");
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;

        let mut zeta_pow_table: Vec<Vec<BigInt>> = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        zeta_pow_table.push(cur.clone());
        for _ in 1..m {
            // Multiply by x, reducing x^deg = −(phi_0 + phi_1 x + …).
            let top = cur[deg - 1].clone();
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..deg {
                    cur[i] -= &top * &phi[i];
                }
            }
            zeta_pow_table.push(cur.clone());
        }

        let mut field = CycloField {
            m,
            deg,
            phi,
            zeta_pow_table,
            inv_diff: CycloNum {
                m,
                c: vec![BigRational::zero()],
            },
        };
        let diff = field.sub(&field.zeta_pow(1), &field.zeta_pow(-1));
        field.inv_diff = field.inv(&diff).expect("ζ − ζ^{-1} ≠ 0 for m ≥ 3");
        field
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.phi
    }

    fn check(&self, x: &CycloNum) {
        assert_eq!(
            x.m, self.m,
            "mixing elements of Q(ζ_{}) and Q(ζ_{})",
            x.m, self.m
        );
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum {
            m: self.m,
            c: vec![BigRational::zero(); self.deg],
        }
    }

    pub fn one(&self) -> CycloNum {
        self.from_integer(BigInt::one())
    }

    pub fn from_integer(&self, n: BigInt) -> CycloNum {
        let mut z = self.zero();
        z.c[0] = BigRational::from(n);
        z
    }

    pub fn from_rational(&self, r: BigRational) -> CycloNum {
        let mut z = self.zero();
        z.c[0] = r;
        z
    }

    /// ζ^k for any integer k (reduced mod m).
    pub fn zeta_pow(&self, k: i64) -> CycloNum {
        let r = k.rem_euclid(self.m as i64) as usize;
        CycloNum {
            m: self.m,
            c: self.zeta_pow_table[r]
                .iter()
                .map(|n| BigRational::from(n.clone()))
                .collect(),
        }
    }

    pub fn add(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        self.check(a);
        self.check(b);
        CycloNum {
            m: self.m,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        self.check(a);
        self.check(b);
        CycloNum {
            m: self.m,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &CycloNum) -> CycloNum {
        self.check(a);
        CycloNum {
            m: self.m,
            c: a.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn add_assign(&self, a: &mut CycloNum, b: &CycloNum) {
        self.check(a);
        self.check(b);
        for (x, y) in a.c.iter_mut().zip(&b.c) {
            *x += y;
        }
    }

    /// a · n for an integer scalar n.
    pub fn mul_int(&self, a: &CycloNum, n: &BigInt) -> CycloNum {
        self.check(a);
        CycloNum {
            m: self.m,
            c: a.c.iter().map(|x| x * n).collect(),
        }
    }

    pub fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        self.check(a);
        self.check(b);
        let mut prod = vec![BigRational::zero(); 2 * self.deg - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        // Reduce degrees ≥ deg using x^deg ≡ −(phi_0 + … + phi_{deg−1} x^{deg−1}).
        for k in (self.deg..prod.len()).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let top = std::mem::replace(&mut prod[k], BigRational::zero());
            for i in 0..self.deg {
                prod[k - self.deg + i] -= &top * BigRational::from(self.phi[i].clone());
            }
        }
        prod.truncate(self.deg);
        CycloNum { m: self.m, c: prod }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in Q[x];
    /// Φ_m is irreducible, so every nonzero element is invertible.
    pub fn inv(&self, a: &CycloNum) -> Option<CycloNum> {
        self.check(a);
        if a.is_zero() {
            return None;
        }
        // r0 = Φ_m, r1 = a;  maintain t with t·a ≡ r (mod Φ_m).
        let mut r0: Vec<BigRational> = self
            .phi
            .iter()
            .map(|n| BigRational::from(n.clone()))
            .collect();
        let mut r1 = trim(a.c.clone());
        let mut t0 = vec![BigRational::zero()];
        let mut t1 = vec![BigRational::one()];
        while !is_zero_poly(&r1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant gcd; divide through.
        assert_eq!(r0.len(), 1, "Φ_m must be coprime to any nonzero element");
        let g = r0[0].clone();
        let mut c: Vec<BigRational> = t0.into_iter().map(|x| x / &g).collect();
        c.resize(self.deg, BigRational::zero());
        Some(CycloNum { m: self.m, c })
    }

    /// Balanced q-integer [k] = (ζ^k − ζ^{−k})/(ζ − ζ^{−1}).
    pub fn q_integer(&self, k: i64) -> CycloNum {
        let num = self.sub(&self.zeta_pow(k), &self.zeta_pow(-k));
        self.mul(&num, &self.inv_diff)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|x| x.is_zero())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Quotient and remainder of polynomial division over Q.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    assert!(!is_zero_poly(&b), "division by the zero polynomial");
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !is_zero_poly(&rem) {
        let dr = rem.len() - 1;
        let f = &rem[dr] / &lead;
        quo[dr - db] = f.clone();
        for i in 0..=db {
            let t = &f * &b[i];
            rem[dr - db + i] -= t;
        }
        rem = trim(rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    (trim(quo), trim(rem))
}

/// Coefficients of the m-th cyclotomic polynomial (constant term first),
/// from Φ_m = ∏_{d ∣ m} (x^d − 1)^{μ(m/d)}.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut num = vec![BigInt::one()];
    let mut dens: Vec<u64> = Vec::new();
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        match moebius(m / d) {
            1 => num = int_poly_mul_xd_minus_1(&num, d as usize),
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        num = int_poly_div_xd_minus_1(&num, d as usize);
    }
    num
}

fn moebius(mut n: u64) -> i64 {
    let mut mu = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn int_poly_mul_xd_minus_1(a: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + d];
    for (i, x) in a.iter().enumerate() {
        out[i + d] += x;
        out[i] -= x;
    }
    out
}

/// Exact division by (x^d − 1): with p = q·(x^d − 1), comparing coefficients
/// gives p_i = q_{i−d} − q_i and hence q_{i−d} = p_i + q_i from the top down.
fn int_poly_div_xd_minus_1(p: &[BigInt], d: usize) -> Vec<BigInt> {
    assert!(p.len() > d);
    let n = p.len() - 1 - d;
    let mut q = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        let upper = if i + d <= n {
            q[i + d].clone()
        } else {
            BigInt::zero()
        };
        q[i] = &p[i + d] + upper;
    }
    // Check the constant term to guarantee exactness.
    debug_assert_eq!(-&q[0], p[0]);
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // Φ_26(x) = Φ_13(−x): alternating signs of degree 12.
        assert_eq!(
            cyclotomic_polynomial(26),
            ints(&[1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1])
        );
    }

    #[test]
    fn cyclotomic_degrees_are_euler_phi() {
        for (m, phi) in [(6, 2), (8, 4), (10, 4), (12, 4), (14, 6), (16, 8),
                         (18, 6), (20, 8), (22, 10), (26, 12), (30, 8), (38, 18), (62, 30)] {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, phi, "m = {m}");
        }
    }

    /// ∏_{d | 26} Φ_d = x^26 − 1.
    #[test]
    fn cyclotomic_product_reconstructs_x26_minus_1() {
        let mut prod = vec![BigInt::one()];
        for d in [1u64, 2, 13, 26] {
            let f = cyclotomic_polynomial(d);
            let mut out = vec![BigInt::zero(); prod.len() + f.len() - 1];
            for (i, x) in prod.iter().enumerate() {
                for (j, y) in f.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            prod = out;
        }
        let mut want = vec![BigInt::zero(); 27];
        want[0] = BigInt::from(-1);
        want[26] = BigInt::one();
        assert_eq!(prod, want);
    }

    #[test]
    fn zeta_is_primitive_m_th_root() {
        for m in [6u64, 10, 14, 26] {
            let f = CycloField::new(m);
            assert_eq!(f.zeta_pow(m as i64), f.one(), "ζ^m = 1 for m = {m}");
            assert_eq!(
                f.zeta_pow((m / 2) as i64),
                f.neg(&f.one()),
                "ζ^(m/2) = −1 for m = {m}"
            );
            for k in 1..m {
                assert_ne!(f.zeta_pow(k as i64), f.one(), "ζ^{k} ≠ 1, m = {m}");
            }
        }
    }

    #[test]
    fn inverse_of_simple_elements() {
        let f = CycloField::new(14);
        for a in [
            f.add(&f.one(), &f.zeta_pow(1)),
            f.sub(&f.zeta_pow(3), &f.from_integer(BigInt::from(2))),
            f.q_integer(2),
        ] {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), f.one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn q_integer_identities() {
        // m = 2L; the balanced q-integers vanish exactly at multiples of L.
        for m in [6i64, 10, 14, 26] {
            let f = CycloField::new(m as u64);
            let l = m / 2;
            assert_eq!(f.q_integer(0), f.zero());
            assert_eq!(f.q_integer(1), f.one());
            assert_eq!(f.q_integer(l), f.zero(), "[L] = 0 at m = {m}");
            for k in 1..l {
                assert!(!f.q_integer(k).is_zero(), "[{k}] ≠ 0 at m = {m}");
                assert_eq!(f.q_integer(l - k), f.q_integer(k), "[L−k] = [k]");
                assert_eq!(f.q_integer(-k), f.neg(&f.q_integer(k)), "[−k] = −[k]");
                assert_eq!(f.q_integer(k + m), f.q_integer(k), "[k+m] = [k]");
            }
            // Chebyshev-style recurrence [2][k] = [k+1] + [k−1].
            for k in 1..m {
                let lhs = f.mul(&f.q_integer(2), &f.q_integer(k));
                let rhs = f.add(&f.q_integer(k + 1), &f.q_integer(k - 1));
                assert_eq!(lhs, rhs, "recurrence at k = {k}, m = {m}");
            }
        }
    }

    #[test]
    fn integer_detection() {
        let f = CycloField::new(10);
        assert_eq!(f.one().as_integer(), Some(BigInt::one()));
        assert_eq!(f.from_integer(BigInt::from(-7)).as_integer(), Some(BigInt::from(-7)));
        assert_eq!(f.zeta_pow(1).as_integer(), None);
        assert_eq!(
            f.from_rational(BigRational::new(BigInt::one(), BigInt::from(2))).as_integer(),
            None
        );
        // ζ + ζ^{-1} + ζ^3 + ζ^{-3}: both pairs are roots of x² − x... not an
        // integer for m = 10; but ζ^5 = −1 certainly is.
        assert_eq!(f.zeta_pow(5).as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn render_text() {
        let f = CycloField::new(10);
        assert_eq!(f.zero().render(), "0");
        assert_eq!(f.one().render(), "1");
        assert_eq!(f.neg(&f.one()).render(), "-1");
        assert_eq!(f.zeta_pow(1).render(), "ζ");
        let x = f.sub(&f.from_integer(BigInt::from(2)), &f.zeta_pow(3));
        assert_eq!(x.render(), "2 - ζ^3");
    }

    fn arb_elem(m: u64) -> impl Strategy<Value = CycloNum> {
        let deg = CycloField::new(m).degree();
        proptest::collection::vec(-4i64..=4, deg).prop_map(move |v| {
            let f = CycloField::new(m);
            let mut z = f.zero();
            for (i, x) in v.into_iter().enumerate() {
                z.c[i] = BigRational::from(BigInt::from(x));
            }
            z
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms_m14(a in arb_elem(14), b in arb_elem(14), c in arb_elem(14)) {
            let f = CycloField::new(14);
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
        }

        #[test]
        fn inverses_m14(a in arb_elem(14)) {
            let f = CycloField::new(14);
            if let Some(ai) = f.inv(&a) {
                prop_assert_eq!(f.mul(&a, &ai), f.one());
            } else {
                prop_assert!(a.is_zero());
            }
        }
    }
}
