//! Multi-parameter formal deformation: the star product, twist, and
//! commutator bracket expanded as polynomial series in formal parameters
//! `t_1..t_m`, one per chosen `y`-position. For polynomial inputs the series
//! are finite, so they are stored exactly; no truncation order is involved.
//!
//! Specializing the parameters at the entries of a twist vector recovers the
//! corresponding `A_n^k` operation; the order-0 coefficients recover `A_n`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;

use crate::arith::{Coefficient, WeylPoly};
use crate::twist::TwistVector;
use crate::{Result, WeylError};

/// Assignment of parameter slot `s` (0-based) to the `y`-index
/// `positions[s]` (1-based). Parameters attach directly to chosen positions;
/// no pre-permutation of indices is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamMap {
    n: usize,
    positions: Vec<usize>,
}

impl ParamMap {
    pub fn new(n: usize, positions: Vec<usize>) -> Result<Self> {
        for (s, &pos) in positions.iter().enumerate() {
            if pos == 0 || pos > n {
                return Err(WeylError::IndexOutOfRange { index: pos, n });
            }
            if positions[..s].contains(&pos) {
                return Err(WeylError::IndexOutOfRange { index: pos, n });
            }
        }
        Ok(ParamMap { n, positions })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Assemble the twist vector with `values` at the mapped positions and
    /// zeros elsewhere.
    pub fn twist_vector(&self, values: &[Coefficient]) -> Result<TwistVector> {
        if values.len() != self.m() {
            return Err(WeylError::LengthMismatch {
                expected: self.m(),
                found: values.len(),
            });
        }
        let mut k = vec![Coefficient::from_integer(BigInt::from(0)); self.n];
        for (s, &pos) in self.positions.iter().enumerate() {
            k[pos - 1] = values[s].clone();
        }
        Ok(TwistVector::new(k))
    }
}

/// Polynomial in the formal parameters `t_1..t_m` with `WeylPoly`
/// coefficients. Stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoly {
    n: usize,
    m: usize,
    terms: BTreeMap<Vec<u32>, WeylPoly>,
}

impl ParamPoly {
    pub fn zero(n: usize, m: usize) -> Self {
        ParamPoly {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &WeylPoly)> {
        self.terms.iter()
    }

    fn insert(&mut self, idx: Vec<u32>, p: WeylPoly) {
        if !p.is_zero() {
            self.terms.insert(idx, p);
        }
    }

    pub fn add(&self, other: &ParamPoly) -> Result<ParamPoly> {
        if self.n != other.n || self.m != other.m {
            return Err(WeylError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (idx, p) in &other.terms {
            let sum = match out.terms.get(idx) {
                Some(q) => q.add(p)?,
                None => p.clone(),
            };
            if sum.is_zero() {
                out.terms.remove(idx);
            } else {
                out.terms.insert(idx.clone(), sum);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ParamPoly) -> Result<ParamPoly> {
        let mut neg = other.clone();
        for p in neg.terms.values_mut() {
            *p = p.neg();
        }
        self.add(&neg)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient polynomial at a parameter multi-index.
    pub fn order_term(&self, idx: &[u32]) -> Result<WeylPoly> {
        if idx.len() != self.m {
            return Err(WeylError::LengthMismatch {
                expected: self.m,
                found: idx.len(),
            });
        }
        Ok(self
            .terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| WeylPoly::zero(self.n)))
    }

    /// Exact substitution `t_s := values[s]`.
    pub fn specialize(&self, values: &[Coefficient]) -> Result<WeylPoly> {
        if values.len() != self.m {
            return Err(WeylError::LengthMismatch {
                expected: self.m,
                found: values.len(),
            });
        }
        let mut out = WeylPoly::zero(self.n);
        for (idx, p) in &self.terms {
            let mut c = Coefficient::one();
            for (s, &e) in idx.iter().enumerate() {
                for _ in 0..e {
                    c *= &values[s];
                }
            }
            out = out.add(&p.scale(&c))?;
        }
        Ok(out)
    }
}

/// Taylor-expand `p` along the mapped `y`-positions:
/// `Σ_i (t^i / i!) (∂/∂y)^i p`. The order-0 term is `p` itself.
pub fn deform_twist(p: &WeylPoly, pm: &ParamMap) -> Result<ParamPoly> {
    if p.n() != pm.n {
        return Err(WeylError::DimensionMismatch {
            left: pm.n,
            right: p.n(),
        });
    }
    let m = pm.m();
    let mut out = ParamPoly::zero(pm.n, m);
    // Expand one parameter at a time.
    let mut partial: Vec<(Vec<u32>, WeylPoly)> = vec![(vec![0; m], p.clone())];
    for (s, &pos) in pm.positions.iter().enumerate() {
        let mut next = Vec::new();
        for (idx, q) in partial {
            let mut deriv = q.clone();
            let mut factorial = BigInt::one();
            let mut order = 0u32;
            next.push((idx.clone(), q));
            loop {
                deriv = deriv.partial_y(pos)?;
                if deriv.is_zero() {
                    break;
                }
                order += 1;
                factorial *= BigInt::from(order);
                let mut idx2 = idx.clone();
                idx2[s] = order;
                next.push((
                    idx2,
                    deriv.scale(&Ratio::new(BigInt::one(), factorial.clone())),
                ));
            }
        }
        partial = next;
    }
    for (idx, q) in partial {
        let mut single = ParamPoly::zero(pm.n, m);
        single.insert(idx, q);
        out = out.add(&single)?;
    }
    Ok(out)
}

/// The star product as a formal series: `a * b` expanded as
/// `Σ_i (t^i / i!) (∂/∂y)^i (ab)`. The order-0 coefficient is the
/// associative product.
pub fn deform_star(a: &WeylPoly, b: &WeylPoly, pm: &ParamMap) -> Result<ParamPoly> {
    deform_twist(&a.mul_assoc(b)?, pm)
}

/// The commutator bracket as a formal series; order 0 is `[a, b]` and the
/// whole series equals `deform_star(a, b) - deform_star(b, a)`.
pub fn deform_bracket(a: &WeylPoly, b: &WeylPoly, pm: &ParamMap) -> Result<ParamPoly> {
    deform_twist(&a.commutator(b)?, pm)
}

/// Parameters print as `t1..tm`, lowest orders first.
impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (idx, p)) in self.terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            let mut prefix = alloc::string::String::new();
            for (s, &e) in idx.iter().enumerate() {
                if e > 0 {
                    if !prefix.is_empty() {
                        prefix.push('*');
                    }
                    prefix.push_str(&alloc::format!("t{}", s + 1));
                    if e > 1 {
                        prefix.push_str(&alloc::format!("^{e}"));
                    }
                }
            }
            if prefix.is_empty() {
                write!(f, "({p})")?;
            } else {
                write!(f, "{prefix}*({p})")?;
            }
        }
        Ok(())
    }
}
