//! The hom-associative algebra `A_n^k`: the star product `a * b := α_k(ab)`,
//! hom-associativity and weak-unitality defects, and the star
//! commutator/associator giving the hom-Lie structure.
//!
//! Defect-returning operations return the full polynomial defect rather than
//! a boolean, so failures localize in tests.

use crate::arith::WeylPoly;
use crate::twist::{apply_twist, TwistVector};
use crate::Result;

/// The star product of `A_n^k`: `p * q = α_k(pq)`. Reduces to the
/// associative product when `k = 0`.
pub fn star(k: &TwistVector, p: &WeylPoly, q: &WeylPoly) -> Result<WeylPoly> {
    apply_twist(k, &p.mul_assoc(q)?)
}

/// `α_k(a) * (b * c) - (a * b) * α_k(c)`; identically zero by
/// hom-associativity.
pub fn hom_assoc_defect(
    k: &TwistVector,
    a: &WeylPoly,
    b: &WeylPoly,
    c: &WeylPoly,
) -> Result<WeylPoly> {
    let lhs = star(k, &apply_twist(k, a)?, &star(k, b, c)?)?;
    let rhs = star(k, &star(k, a, b)?, &apply_twist(k, c)?)?;
    lhs.sub(&rhs)
}

/// `(a * 1 - α_k(a), 1 * a - α_k(a))`; both zero since `1` is the weak
/// identity element of `A_n^k`.
pub fn weak_unit_defect(k: &TwistVector, a: &WeylPoly) -> Result<(WeylPoly, WeylPoly)> {
    let one = WeylPoly::one(a.n());
    let ta = apply_twist(k, a)?;
    Ok((star(k, a, &one)?.sub(&ta)?, star(k, &one, a)?.sub(&ta)?))
}

/// Star commutator `[p, q]_* = p * q - q * p`.
pub fn commutator_star(k: &TwistVector, p: &WeylPoly, q: &WeylPoly) -> Result<WeylPoly> {
    star(k, p, q)?.sub(&star(k, q, p)?)
}

/// Star associator `(a * b) * c - a * (b * c)`.
pub fn associator_star(
    k: &TwistVector,
    a: &WeylPoly,
    b: &WeylPoly,
    c: &WeylPoly,
) -> Result<WeylPoly> {
    star(k, &star(k, a, b)?, c)?.sub(&star(k, a, &star(k, b, c)?)?)
}

/// Alternativity and hom-Jacobi defects of the star-commutator bracket:
/// `([a, a]_*, [α(a),[b,c]_*]_* + [α(c),[a,b]_*]_* + [α(b),[c,a]_*]_*)`.
/// Both are zero: the commutator makes `A_n^k` a hom-Lie algebra with
/// twisting map `α_k`.
pub fn hom_lie_defects(
    k: &TwistVector,
    a: &WeylPoly,
    b: &WeylPoly,
    c: &WeylPoly,
) -> Result<(WeylPoly, WeylPoly)> {
    let alternativity = commutator_star(k, a, a)?;
    let ta = apply_twist(k, a)?;
    let tb = apply_twist(k, b)?;
    let tc = apply_twist(k, c)?;
    let jacobi = commutator_star(k, &ta, &commutator_star(k, b, c)?)?
        .add(&commutator_star(k, &tc, &commutator_star(k, a, b)?)?)?
        .add(&commutator_star(k, &tb, &commutator_star(k, c, a)?)?)?;
    Ok((alternativity, jacobi))
}
