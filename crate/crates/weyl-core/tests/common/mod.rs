//! Shared random generators for the integration suites. Everything is
//! seeded, so failures reproduce deterministically.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weyl_core::{Coefficient, NormalMonomial, TwistVector, WeylPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coeff(rng: &mut ChaCha8Rng) -> Coefficient {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=4);
    Coefficient::new(BigInt::from(num), BigInt::from(den))
}

fn random_nonzero_coeff(rng: &mut ChaCha8Rng) -> Coefficient {
    loop {
        let c = random_coeff(rng);
        if c != Coefficient::from_integer(BigInt::from(0)) {
            return c;
        }
    }
}

/// Random polynomial with up to `max_terms` monomials, each of total degree
/// at most `max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> WeylPoly {
    let mut p = WeylPoly::zero(n);
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mut yexp = vec![0u32; n];
        let mut xexp = vec![0u32; n];
        let total = rng.gen_range(0..=max_deg);
        for _ in 0..total {
            let slot = rng.gen_range(0..2 * n);
            if slot < n {
                yexp[slot] += 1;
            } else {
                xexp[slot - n] += 1;
            }
        }
        let c = random_coeff(rng);
        p = p
            .add(&WeylPoly::monomial(NormalMonomial::new(yexp, xexp), c))
            .unwrap();
    }
    p
}

pub fn random_nonzero_poly(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> WeylPoly {
    loop {
        let p = random_poly(rng, n, max_deg, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// The three twist-vector shapes used across the suites: all zero, exactly
/// one nonzero entry, all entries nonzero.
pub enum KShape {
    AllZero,
    OneNonzero,
    AllNonzero,
}

pub fn random_twist(rng: &mut ChaCha8Rng, n: usize, shape: KShape) -> TwistVector {
    match shape {
        KShape::AllZero => TwistVector::zeros(n),
        KShape::OneNonzero => {
            let mut k = vec![Coefficient::from_integer(BigInt::from(0)); n];
            let slot = rng.gen_range(0..n);
            k[slot] = random_nonzero_coeff(rng);
            TwistVector::new(k)
        }
        KShape::AllNonzero => {
            TwistVector::new((0..n).map(|_| random_nonzero_coeff(rng)).collect())
        }
    }
}

/// A twist vector with each entry independently zero or nonzero.
pub fn random_mixed_twist(rng: &mut ChaCha8Rng, n: usize) -> TwistVector {
    TwistVector::new(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Coefficient::from_integer(BigInt::from(0))
                } else {
                    random_nonzero_coeff(rng)
                }
            })
            .collect(),
    )
}
