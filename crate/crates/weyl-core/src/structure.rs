//! Structural probes of `A_n^k`: inner derivations, the derivation
//! membership criterion, the simplicity reduction to a scalar, and
//! commuter/nuclei witnesses.
//!
//! Commuter and nuclei membership are decided by finite witness sets
//! (the generators; `{1, y_1..y_n}`): those witnesses suffice because the
//! twist is injective and the classical `A_n` has center `K`, so the
//! universally quantified statements reduce to the generator checks.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{Coefficient, Degree, WeylPoly};
use crate::homstar::commutator_star;
use crate::twist::{apply_twist, TwistVector};
use crate::{Result, WeylError};

/// Inner derivation `ad_p(q) = [p, q]` in the associative product.
pub fn ad(p: &WeylPoly, q: &WeylPoly) -> Result<WeylPoly> {
    p.commutator(q)
}

/// Structural membership test for `ad_p ∈ Der(A_n^k)`: every monomial of `p`
/// containing some `y_i` with `k_i ≠ 0` must be exactly the degree-one
/// monomial `y_i` itself. Equivalently, `p = Σ_{k_i ≠ 0} f_i y_i + q` where
/// `q` involves only the `y`'s of the zero set and the `x`'s.
pub fn is_hom_derivation(k: &TwistVector, p: &WeylPoly) -> Result<bool> {
    if k.n() != p.n() {
        return Err(WeylError::DimensionMismatch {
            left: k.n(),
            right: p.n(),
        });
    }
    'terms: for (m, _) in p.terms() {
        for i in 0..p.n() {
            if k.entries()[i].is_zero() || m.yexp()[i] == 0 {
                continue;
            }
            // The monomial touches a forbidden y_i; only y_i itself passes.
            let single = m.yexp()[i] == 1
                && m.total_degree() == 1
                && m.xexp().iter().all(|&e| e == 0);
            if single {
                continue 'terms;
            }
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `2n + 1` defects `[ad_p(1); ad_p(α_k(g)) - α_k(ad_p(g))]` for `g`
/// ranging over `x_1..x_n, y_1..y_n`. All zero iff `ad_p ∈ Der(A_n^k)`.
/// This is an independent route from [`is_hom_derivation`]: membership
/// reduces to `δ(1) = 0` plus `δ∘α_k = α_k∘δ` on the generators.
pub fn derivation_defect_on_generators(k: &TwistVector, p: &WeylPoly) -> Result<Vec<WeylPoly>> {
    if k.n() != p.n() {
        return Err(WeylError::DimensionMismatch {
            left: k.n(),
            right: p.n(),
        });
    }
    let n = p.n();
    let mut defects = Vec::with_capacity(2 * n + 1);
    defects.push(ad(p, &WeylPoly::one(n))?);
    let mut gens = Vec::with_capacity(2 * n);
    for l in 1..=n {
        gens.push(WeylPoly::gen_x(n, l)?);
    }
    for l in 1..=n {
        gens.push(WeylPoly::gen_y(n, l)?);
    }
    for g in &gens {
        let lhs = ad(p, &apply_twist(k, g)?)?;
        let rhs = apply_twist(k, &ad(p, g)?)?;
        defects.push(lhs.sub(&rhs)?);
    }
    Ok(defects)
}

/// One move of the simplicity reduction: a star commutator with a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceStep {
    /// `p ← [x_ℓ, p]_*` (kills one unit of `y_ℓ`-degree).
    CommuteWithX(usize),
    /// `p ← [p, y_ℓ]_*` (kills one unit of `x_ℓ`-degree).
    CommuteWithY(usize),
}

impl ReduceStep {
    /// Replay the step on `p`.
    pub fn apply(&self, k: &TwistVector, p: &WeylPoly) -> Result<WeylPoly> {
        let n = p.n();
        match self {
            ReduceStep::CommuteWithX(l) => commutator_star(k, &WeylPoly::gen_x(n, *l)?, p),
            ReduceStep::CommuteWithY(l) => commutator_star(k, p, &WeylPoly::gen_y(n, *l)?),
        }
    }
}

/// The simplicity-reduction procedure: shrink a nonzero `p` to a nonzero
/// scalar via star commutators with generators. Step 1 applies `[x_i, ·]_*`
/// to kill `y_i`-degrees (in increasing index order), Step 2 applies
/// `[·, y_j]_*` to kill `x_j`-degrees; the surviving constant term is the
/// scalar. Replaying the returned trace from `p` reproduces the scalar.
pub fn reduce_to_scalar(
    k: &TwistVector,
    p: &WeylPoly,
) -> Result<(Vec<ReduceStep>, Coefficient)> {
    if k.n() != p.n() {
        return Err(WeylError::DimensionMismatch {
            left: k.n(),
            right: p.n(),
        });
    }
    if p.is_zero() {
        return Err(WeylError::ZeroInput);
    }
    let n = p.n();
    let mut trace = Vec::new();
    let mut cur = p.clone();
    for i in 1..=n {
        while matches!(cur.deg_y(i)?, Degree::Finite(d) if d > 0) {
            let step = ReduceStep::CommuteWithX(i);
            cur = step.apply(k, &cur)?;
            trace.push(step);
        }
    }
    for j in 1..=n {
        while matches!(cur.deg_x(j)?, Degree::Finite(d) if d > 0) {
            let step = ReduceStep::CommuteWithY(j);
            cur = step.apply(k, &cur)?;
            trace.push(step);
        }
    }
    debug_assert_eq!(cur.total_degree(), Degree::Finite(0));
    let scalar = cur.coefficient(&crate::arith::NormalMonomial::unit(n));
    Ok((trace, scalar))
}

/// Membership in the commuter `C(A_n^k) = K`, decided on the `2n`
/// generators: `p` star-commutes with everything iff it star-commutes with
/// every generator, iff `p` is a scalar.
pub fn commuter_probe(k: &TwistVector, p: &WeylPoly) -> Result<bool> {
    if k.n() != p.n() {
        return Err(WeylError::DimensionMismatch {
            left: k.n(),
            right: p.n(),
        });
    }
    let n = p.n();
    for l in 1..=n {
        if !commutator_star(k, p, &WeylPoly::gen_x(n, l)?)?.is_zero() {
            return Ok(false);
        }
        if !commutator_star(k, p, &WeylPoly::gen_y(n, l)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nucleus {
    Left,
    Middle,
    Right,
}

/// Nucleus membership, decided by the finite witness set `{1, y_1..y_n}`.
/// For `k ≠ 0` exactly `p = 0` passes; for `k = 0` everything passes.
pub fn nucleus_probe(k: &TwistVector, p: &WeylPoly, which: Nucleus) -> Result<bool> {
    if k.n() != p.n() {
        return Err(WeylError::DimensionMismatch {
            left: k.n(),
            right: p.n(),
        });
    }
    let n = p.n();
    let one = WeylPoly::one(n);
    let assoc = |a: &WeylPoly, b: &WeylPoly, c: &WeylPoly| -> Result<bool> {
        Ok(crate::homstar::associator_star(k, a, b, c)?.is_zero())
    };
    match which {
        Nucleus::Left => {
            if !assoc(p, &one, &one)? {
                return Ok(false);
            }
            for l in 1..=n {
                if !assoc(p, &one, &WeylPoly::gen_y(n, l)?)? {
                    return Ok(false);
                }
            }
        }
        Nucleus::Middle => {
            if !assoc(&one, p, &one)? {
                return Ok(false);
            }
            for l in 1..=n {
                if !assoc(&WeylPoly::gen_y(n, l)?, p, &one)? {
                    return Ok(false);
                }
            }
        }
        Nucleus::Right => {
            if !assoc(&one, &one, p)? {
                return Ok(false);
            }
            for l in 1..=n {
                if !assoc(&WeylPoly::gen_y(n, l)?, &one, p)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
