//! Quantum dimensions of irreducible highest-weight modules at the root of
//! unity of order m = 2(h∨ + 1).
//!
//! With L = h∨ + 1 and ζ a primitive m-th root of unity, the balanced
//! q-integers obey [k + m] = [k], [−k] = −[k] and [L − k] = [k], so every
//! index folds to a canonical representative 0 ≤ r ≤ ⌊L/2⌋ with an explicit
//! sign, and [k] = 0 exactly when r = 0.  The quantum dimension
//!
//!   dim_q V(λ) = ∏_{α>0} [⟨λ+ρ, α∨⟩] / [⟨ρ, α∨⟩]
//!
//! is computed by cancelling folded indices between numerator and
//! denominator first; the denominator indices ⟨ρ, α∨⟩ lie in 1..h∨−1 < L,
//! so they never vanish and the quotient is always defined.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::charlab;
use crate::cyclo::{CycloField, CycloNum};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// The cyclotomic field matching a root system's conductor 2(h∨ + 1).
pub fn field_for(rs: &RootSystem) -> CycloField {
    CycloField::new(rs.conductor())
}

/// Fold a q-integer index: returns (sign, r) with [k] = sign · [r] and
/// 0 ≤ r ≤ ⌊L/2⌋; r = 0 if and only if [k] = 0.
pub fn fold(k: i64, l: i64) -> (i64, i64) {
    debug_assert!(l >= 2);
    let mut r = k.rem_euclid(2 * l);
    let mut sign = 1i64;
    if r >= l {
        r -= l;
        sign = -1;
    }
    (sign, r.min(l - r))
}

/// dim_q V(λ) for a dominant integral weight λ, exactly, by folded-index
/// cancellation followed by at most one field inversion.
pub fn quantum_dimension(
    rs: &RootSystem,
    field: &CycloField,
    lambda: &Weight,
) -> Result<CycloNum> {
    assert_eq!(
        field.conductor(),
        rs.conductor(),
        "field does not match the root system's conductor"
    );
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let l = (rs.dual_coxeter() + 1) as i64;
    let mut sign = 1i64;
    let mut expo: BTreeMap<i64, i64> = BTreeMap::new();
    for alpha in rs.positive_roots() {
        let den = rs.pairing(rs.rho(), alpha);
        let num = den + rs.pairing(lambda, alpha);
        let (s, r) = fold(num, l);
        if r == 0 {
            return Ok(field.zero());
        }
        sign *= s;
        *expo.entry(r).or_insert(0) += 1;
        let (s_den, r_den) = fold(den, l);
        debug_assert!(s_den == 1 && r_den > 0, "0 < ⟨ρ, α∨⟩ < L");
        *expo.entry(r_den).or_insert(0) -= 1;
    }
    expo.remove(&1); // [1] = 1
    expo.retain(|_, e| *e != 0);
    let signed_one = field.from_integer(BigInt::from(sign));
    if expo.is_empty() {
        return Ok(signed_one);
    }
    let mut num = field.one();
    let mut den = field.one();
    for (&r, &e) in &expo {
        let q = field.q_integer(r);
        let target = if e > 0 { &mut num } else { &mut den };
        for _ in 0..e.abs() {
            *target = field.mul(target, &q);
        }
    }
    let den_inv = field.inv(&den).expect("folded indices 0 < r < L are nonzero");
    Ok(field.mul(&signed_one, &field.mul(&num, &den_inv)))
}

/// The same quantity computed along an independent route: expand the full
/// weight-multiplicity character and specialize, dim_q V(λ) =
/// Σ_μ mult_λ(μ) ζ^{(2ρ, μ)}.
pub fn quantum_dimension_via_character(
    rs: &RootSystem,
    field: &CycloField,
    lambda: &Weight,
    guard: u64,
) -> Result<CycloNum> {
    assert_eq!(field.conductor(), rs.conductor());
    let dominant = charlab::dominant_multiplicities(rs, lambda, guard)?;
    let mut acc = field.zero();
    for (mu, mult) in dominant.iter() {
        for w in charlab::weyl_orbit(rs, mu) {
            let e: i64 = rs.two_rho_root().iter().zip(&w.0).map(|(a, b)| a * b).sum();
            field.add_assign(&mut acc, &field.mul_int(&field.zeta_pow(e), mult));
        }
    }
    Ok(acc)
}

/// Ordinary Weyl dimension ∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩ as an exact integer.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigInt> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in rs.positive_roots() {
        let d = rs.pairing(rs.rho(), alpha);
        num *= BigInt::from(d + rs.pairing(lambda, alpha));
        den *= BigInt::from(d);
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "Weyl dimension is an integer");
    Ok(q)
}

/// Gaussian binomial coefficient [n over k] at the field's root of unity,
/// via the same folded-index cancellation.
pub fn q_binomial(field: &CycloField, n: i64, k: i64) -> CycloNum {
    assert!(field.conductor().is_multiple_of(2), "need m = 2L");
    assert!((0..=n).contains(&k));
    let l = (field.conductor() / 2) as i64;
    let mut sign = 1i64;
    let mut expo: BTreeMap<i64, i64> = BTreeMap::new();
    let mut zero = false;
    for j in 1..=k {
        let (s, r) = fold(n - k + j, l);
        if r == 0 {
            zero = true;
            break;
        }
        sign *= s;
        *expo.entry(r).or_insert(0) += 1;
        let (s_den, r_den) = fold(j, l);
        if r_den == 0 {
            panic!("[{j}] = 0: Gaussian binomial undefined at this root of unity");
        }
        sign *= s_den;
        *expo.entry(r_den).or_insert(0) -= 1;
    }
    if zero {
        return field.zero();
    }
    expo.remove(&1);
    expo.retain(|_, e| *e != 0);
    let signed_one = field.from_integer(BigInt::from(sign));
    if expo.is_empty() {
        return signed_one;
    }
    let mut num = field.one();
    let mut den = field.one();
    for (&r, &e) in &expo {
        let q = field.q_integer(r);
        let target = if e > 0 { &mut num } else { &mut den };
        for _ in 0..e.abs() {
            *target = field.mul(target, &q);
        }
    }
    let den_inv = field.inv(&den).expect("nonzero folded q-integers");
    field.mul(&signed_one, &field.mul(&num, &den_inv))
}
