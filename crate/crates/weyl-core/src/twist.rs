//! The twisting endomorphism `α_k`: the unique unital algebra endomorphism
//! of `A_n` sending `y_ℓ ↦ y_ℓ + k_ℓ` and fixing every `x_ℓ`. It equals the
//! exponential `e^{k ∂/∂y}` of the derivation `Σ k_ℓ ∂/∂y_ℓ`, and its integer
//! powers satisfy `α_k^i = α_{ik}`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{Coefficient, NormalMonomial, WeylPoly};
use crate::{Result, WeylError};

/// The vector `k ∈ ℚ^n` parameterizing `α_k` and the algebra `A_n^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistVector {
    k: Vec<Coefficient>,
}

impl TwistVector {
    pub fn new(k: Vec<Coefficient>) -> Self {
        TwistVector { k }
    }

    pub fn zeros(n: usize) -> Self {
        TwistVector {
            k: vec![Coefficient::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    pub fn entries(&self) -> &[Coefficient] {
        &self.k
    }

    pub fn entry(&self, l: usize) -> &Coefficient {
        &self.k[l - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.k.iter().all(Zero::is_zero)
    }

    /// Indices `ℓ` (1-based) with `k_ℓ = 0`.
    pub fn zero_set(&self) -> Vec<usize> {
        self.k
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Indices `ℓ` (1-based) with `k_ℓ ≠ 0`.
    pub fn nonzero_set(&self) -> Vec<usize> {
        self.k
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn negate(&self) -> TwistVector {
        TwistVector {
            k: self.k.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale_int(&self, i: i64) -> TwistVector {
        let f = Coefficient::from_integer(BigInt::from(i));
        TwistVector {
            k: self.k.iter().map(|c| c * &f).collect(),
        }
    }

    fn check_dim(&self, p: &WeylPoly) -> Result<()> {
        if self.k.len() != p.n() {
            return Err(WeylError::DimensionMismatch {
                left: self.k.len(),
                right: p.n(),
            });
        }
        Ok(())
    }
}

/// `α_k(p)`, computed by binomial shift of every `y`-exponent.
pub fn apply_twist(k: &TwistVector, p: &WeylPoly) -> Result<WeylPoly> {
    k.check_dim(p)?;
    let n = p.n();
    let mut out = WeylPoly::zero(n);
    for (m, c) in p.terms() {
        // Expand Π_ℓ (y_ℓ + k_ℓ)^{a_ℓ}, keeping the x block fixed.
        let mut partial: Vec<(Vec<u32>, Coefficient)> = vec![(m.yexp().to_vec(), c.clone())];
        for l in 0..n {
            let kl = &k.k[l];
            if kl.is_zero() || m.yexp()[l] == 0 {
                continue;
            }
            let a = m.yexp()[l];
            let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
            for (yexp, coef) in partial {
                let mut kpow = Coefficient::one();
                for d in 0..=a {
                    let b = num_integer::binomial(BigInt::from(a), BigInt::from(d));
                    let mut y2 = yexp.clone();
                    y2[l] = a - d;
                    next.push((y2, &coef * Ratio::from_integer(b) * &kpow));
                    kpow *= kl;
                }
            }
            partial = next;
        }
        for (yexp, coef) in partial {
            let term = WeylPoly::monomial(NormalMonomial::new(yexp, m.xexp().to_vec()), coef);
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// `α_k(p)` via the exponential series `Σ_i (k ∂/∂y)^i p / i!`, which is a
/// finite sum since the derivation is locally nilpotent. Kept as an
/// independently coded path for cross-validation against [`apply_twist`].
pub fn twist_via_exp(k: &TwistVector, p: &WeylPoly) -> Result<WeylPoly> {
    k.check_dim(p)?;
    let n = p.n();
    let mut out = p.clone();
    let mut deriv = p.clone();
    let mut factorial = BigInt::one();
    let mut i = BigInt::one();
    loop {
        // deriv ← (Σ_ℓ k_ℓ ∂/∂y_ℓ)(deriv)
        let mut next = WeylPoly::zero(n);
        for l in 1..=n {
            if k.k[l - 1].is_zero() {
                continue;
            }
            next = next.add(&deriv.partial_y(l)?.scale(&k.k[l - 1]))?;
        }
        if next.is_zero() {
            return Ok(out);
        }
        factorial *= &i;
        i += BigInt::one();
        out = out.add(&next.scale(&Ratio::new(BigInt::one(), factorial.clone())))?;
        deriv = next;
    }
}

/// `α_k^i(p)` for any integer `i`, via the identity `α_k^i = α_{ik}`.
/// Negative powers are inverses: `α_k^{-1} = α_{-k}`.
pub fn twist_power(k: &TwistVector, i: i64, p: &WeylPoly) -> Result<WeylPoly> {
    apply_twist(&k.scale_int(i), p)
}
