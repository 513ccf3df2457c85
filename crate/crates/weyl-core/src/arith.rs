//! Normal-ordered arithmetic in the associative Weyl algebra `A_n`, plus an
//! independent free-word rewriting oracle used to cross-check the product.
//!
//! Elements are finite rational linear combinations of the basis monomials
//! `y_1^{i_1}···y_n^{i_n} x_1^{j_1}···x_n^{j_n}` (all `y` factors before all
//! `x` factors). The product of two basis monomials is
//!
//! ```text
//! (y^a x^i)(y^c x^j) = Σ_{ℓ≤i} Π_m binom(i_m, ℓ_m) · y^a · ∂^{i−ℓ}(y^c) · x^{j+ℓ}
//! ```
//!
//! where `∂^{i−ℓ}` is the composition of the formal partials
//! `(∂/∂y_m)^{i_m−ℓ_m}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::{Result, WeylError};

/// Exact rational coefficient. `Ratio<BigInt>` keeps values in lowest terms
/// with a positive denominator.
pub type Coefficient = Ratio<BigInt>;

/// Shorthand for a rational from an integer pair.
pub fn coeff(num: i64, den: i64) -> Coefficient {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn coeff_int(value: i64) -> Coefficient {
    Ratio::from_integer(BigInt::from(value))
}

fn binom(i: u32, l: u32) -> BigInt {
    num_integer::binomial(BigInt::from(i), BigInt::from(l))
}

/// Falling factorial `c (c-1) ··· (c-d+1)`, the coefficient produced by
/// `(∂/∂y)^d y^c`.
fn falling(c: u32, d: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..d {
        acc *= BigInt::from(c - t);
    }
    acc
}

/// Degree of a polynomial in a given indeterminate. The zero polynomial has
/// no monomials, so its degree is a sentinel rather than a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Basis monomial `y_1^{i_1}···y_n^{i_n} x_1^{j_1}···x_n^{j_n}`.
///
/// Ordered graded-lexicographically: first by total degree, then by the
/// concatenated exponent vector `(yexp, xexp)`. This fixes iteration,
/// printing, and equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalMonomial {
    yexp: Vec<u32>,
    xexp: Vec<u32>,
}

impl NormalMonomial {
    pub fn new(yexp: Vec<u32>, xexp: Vec<u32>) -> Self {
        assert_eq!(yexp.len(), xexp.len(), "exponent vectors must agree in length");
        NormalMonomial { yexp, xexp }
    }

    /// The empty monomial, i.e. the basis element 1.
    pub fn unit(n: usize) -> Self {
        NormalMonomial {
            yexp: vec![0; n],
            xexp: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.yexp.len()
    }

    pub fn yexp(&self) -> &[u32] {
        &self.yexp
    }

    pub fn xexp(&self) -> &[u32] {
        &self.xexp
    }

    pub fn total_degree(&self) -> u32 {
        self.yexp.iter().sum::<u32>() + self.xexp.iter().sum::<u32>()
    }

    fn is_unit(&self) -> bool {
        self.yexp.iter().all(|&e| e == 0) && self.xexp.iter().all(|&e| e == 0)
    }
}

impl Ord for NormalMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.yexp.cmp(&other.yexp))
            .then_with(|| self.xexp.cmp(&other.xexp))
    }
}

impl PartialOrd for NormalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `A_n`: a sparse rational linear combination of normal-ordered
/// monomials. Stored coefficients are never zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylPoly {
    n: usize,
    terms: BTreeMap<NormalMonomial, Coefficient>,
}

impl WeylPoly {
    pub fn zero(n: usize) -> Self {
        WeylPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        WeylPoly::scalar(n, Coefficient::one())
    }

    pub fn scalar(n: usize, c: Coefficient) -> Self {
        WeylPoly::monomial(NormalMonomial::unit(n), c)
    }

    pub fn monomial(mono: NormalMonomial, c: Coefficient) -> Self {
        let n = mono.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        WeylPoly { n, terms }
    }

    /// The generator `y_ℓ`, `1 ≤ ℓ ≤ n`.
    pub fn gen_y(n: usize, l: usize) -> Result<Self> {
        if l == 0 || l > n {
            return Err(WeylError::IndexOutOfRange { index: l, n });
        }
        let mut yexp = vec![0; n];
        yexp[l - 1] = 1;
        Ok(WeylPoly::monomial(
            NormalMonomial::new(yexp, vec![0; n]),
            Coefficient::one(),
        ))
    }

    /// The generator `x_ℓ`, `1 ≤ ℓ ≤ n`.
    pub fn gen_x(n: usize, l: usize) -> Result<Self> {
        if l == 0 || l > n {
            return Err(WeylError::IndexOutOfRange { index: l, n });
        }
        let mut xexp = vec![0; n];
        xexp[l - 1] = 1;
        Ok(WeylPoly::monomial(
            NormalMonomial::new(vec![0; n], xexp),
            Coefficient::one(),
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &NormalMonomial) -> Coefficient {
        self.terms.get(mono).cloned().unwrap_or_else(Coefficient::zero)
    }

    fn check_dim(&self, other: &WeylPoly) -> Result<()> {
        if self.n != other.n {
            return Err(WeylError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn insert_term(&mut self, mono: NormalMonomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &WeylPoly) -> Result<WeylPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylPoly) -> Result<WeylPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeylPoly {
        self.scale(&-Coefficient::one())
    }

    pub fn scale(&self, c: &Coefficient) -> WeylPoly {
        if c.is_zero() {
            return WeylPoly::zero(self.n);
        }
        WeylPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c))
                .collect(),
        }
    }

    /// The associative product of `A_n`, in normal order.
    pub fn mul_assoc(&self, other: &WeylPoly) -> Result<WeylPoly> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = WeylPoly::zero(n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                mono_mul_into(&mut out, m1, m2, &(c1 * c2), n);
            }
        }
        Ok(out)
    }

    /// Associative `i`-th power, `i ≥ 0`.
    pub fn pow_assoc(&self, i: u32) -> WeylPoly {
        let mut out = WeylPoly::one(self.n);
        for _ in 0..i {
            out = out.mul_assoc(self).expect("same dimension");
        }
        out
    }

    /// Commutator `[p, q] = pq - qp` in the associative product.
    pub fn commutator(&self, other: &WeylPoly) -> Result<WeylPoly> {
        self.mul_assoc(other)?.sub(&other.mul_assoc(self)?)
    }

    /// Formal partial derivative with respect to `y_ℓ`, `1 ≤ ℓ ≤ n`.
    pub fn partial_y(&self, l: usize) -> Result<WeylPoly> {
        self.partial(l, true)
    }

    /// Formal partial derivative with respect to `x_ℓ`, `1 ≤ ℓ ≤ n`.
    pub fn partial_x(&self, l: usize) -> Result<WeylPoly> {
        self.partial(l, false)
    }

    fn partial(&self, l: usize, wrt_y: bool) -> Result<WeylPoly> {
        if l == 0 || l > self.n {
            return Err(WeylError::IndexOutOfRange { index: l, n: self.n });
        }
        let idx = l - 1;
        let mut out = WeylPoly::zero(self.n);
        for (m, c) in &self.terms {
            let exp = if wrt_y { m.yexp[idx] } else { m.xexp[idx] };
            if exp == 0 {
                continue;
            }
            let mut m2 = m.clone();
            if wrt_y {
                m2.yexp[idx] -= 1;
            } else {
                m2.xexp[idx] -= 1;
            }
            out.insert_term(m2, c * Coefficient::from_integer(BigInt::from(exp)));
        }
        Ok(out)
    }

    /// Largest exponent of `y_i` over the stored monomials.
    pub fn deg_y(&self, i: usize) -> Result<Degree> {
        self.deg(i, true)
    }

    /// Largest exponent of `x_j` over the stored monomials.
    pub fn deg_x(&self, j: usize) -> Result<Degree> {
        self.deg(j, false)
    }

    fn deg(&self, l: usize, wrt_y: bool) -> Result<Degree> {
        if l == 0 || l > self.n {
            return Err(WeylError::IndexOutOfRange { index: l, n: self.n });
        }
        let idx = l - 1;
        Ok(self
            .terms
            .keys()
            .map(|m| if wrt_y { m.yexp[idx] } else { m.xexp[idx] })
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite))
    }

    /// Largest total degree over the stored monomials.
    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(NormalMonomial::total_degree)
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// The nonzero terms of minimal total degree, as a polynomial.
    pub fn lowest_degree_part(&self) -> WeylPoly {
        let Some(min) = self.terms.keys().map(NormalMonomial::total_degree).min() else {
            return WeylPoly::zero(self.n);
        };
        WeylPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == min)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Accumulate the normal-ordered product of two basis monomials, scaled by
/// `scale`, into `out`.
fn mono_mul_into(
    out: &mut WeylPoly,
    m1: &NormalMonomial,
    m2: &NormalMonomial,
    scale: &Coefficient,
    n: usize,
) {
    // Iterate over ℓ ≤ i componentwise; components with i_m - ℓ_m > c_m
    // differentiate y_m^{c_m} to zero, so start ℓ_m at max(0, i_m - c_m).
    let i = &m1.xexp;
    let a = &m1.yexp;
    let c = &m2.yexp;
    let j = &m2.xexp;

    let lo: Vec<u32> = (0..n).map(|m| i[m].saturating_sub(c[m])).collect();
    let mut l: Vec<u32> = lo.clone();
    loop {
        let mut factor = BigInt::one();
        for m in 0..n {
            let d = i[m] - l[m];
            factor *= binom(i[m], l[m]) * falling(c[m], d);
        }
        let yexp: Vec<u32> = (0..n).map(|m| a[m] + c[m] - (i[m] - l[m])).collect();
        let xexp: Vec<u32> = (0..n).map(|m| j[m] + l[m]).collect();
        out.insert_term(
            NormalMonomial::new(yexp, xexp),
            scale * Coefficient::from_integer(factor),
        );

        // Odometer over lo[m]..=i[m].
        let mut m = 0;
        loop {
            if m == n {
                return;
            }
            if l[m] < i[m] {
                l[m] += 1;
                break;
            }
            l[m] = lo[m];
            m += 1;
        }
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (idx, &e) in self.yexp.iter().enumerate() {
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "y{}", idx + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        for (idx, &e) in self.xexp.iter().enumerate() {
            if e > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", idx + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical printing: terms in descending graded-lexicographic order,
/// coefficients as reduced fractions, `1` for the empty monomial.
impl fmt::Display for WeylPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Generator symbols of the free unital algebra on `x_1..x_n, y_1..y_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeSymbol {
    X(usize),
    Y(usize),
    Scalar(Coefficient),
}

/// A word in the free algebra; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeWord {
    n: usize,
    symbols: Vec<FreeSymbol>,
}

impl FreeWord {
    pub fn new(n: usize, symbols: Vec<FreeSymbol>) -> Result<Self> {
        for s in &symbols {
            match s {
                FreeSymbol::X(l) | FreeSymbol::Y(l) => {
                    if *l == 0 || *l > n {
                        return Err(WeylError::IndexOutOfRange { index: *l, n });
                    }
                }
                FreeSymbol::Scalar(_) => {}
            }
        }
        Ok(FreeWord { n, symbols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Normal form of the word in `A_n`, computed purely by rewriting
    /// `x_i y_j → y_j x_i + δ_ij` and sorting commuting generators. This is
    /// an independent implementation path from [`WeylPoly::mul_assoc`].
    pub fn normal_form(&self) -> WeylPoly {
        #[derive(Clone, PartialEq, Eq)]
        enum Gen {
            X(usize),
            Y(usize),
        }

        // Pull out scalar symbols first.
        let mut coeff = Coefficient::one();
        let mut word: Vec<Gen> = Vec::new();
        for s in &self.symbols {
            match s {
                FreeSymbol::X(l) => word.push(Gen::X(*l)),
                FreeSymbol::Y(l) => word.push(Gen::Y(*l)),
                FreeSymbol::Scalar(c) => coeff *= c,
            }
        }

        let mut result = WeylPoly::zero(self.n);
        if coeff.is_zero() {
            return result;
        }
        let mut work: Vec<(Coefficient, Vec<Gen>)> = vec![(coeff, word)];
        'outer: while let Some((c, w)) = work.pop() {
            for pos in 0..w.len().saturating_sub(1) {
                let rewrite = match (&w[pos], &w[pos + 1]) {
                    (Gen::X(_), Gen::Y(_)) => true,
                    (Gen::X(i), Gen::X(j)) | (Gen::Y(i), Gen::Y(j)) => i > j,
                    _ => false,
                };
                if !rewrite {
                    continue;
                }
                let mut swapped = w.clone();
                swapped.swap(pos, pos + 1);
                if let (Gen::X(i), Gen::Y(j)) = (&w[pos], &w[pos + 1]) {
                    if i == j {
                        let mut deleted = w.clone();
                        deleted.drain(pos..pos + 2);
                        work.push((c.clone(), deleted));
                    }
                }
                work.push((c, swapped));
                continue 'outer;
            }
            // Normal-ordered: all y ascending, then all x ascending.
            let mut yexp = vec![0u32; self.n];
            let mut xexp = vec![0u32; self.n];
            for g in &w {
                match g {
                    Gen::Y(l) => yexp[*l - 1] += 1,
                    Gen::X(l) => xexp[*l - 1] += 1,
                }
            }
            result.insert_term(NormalMonomial::new(yexp, xexp), c);
        }
        result
    }
}

/// Normal form of the concatenation `w1 w2`, by free-word rewriting.
pub fn oracle_mul(w1: &FreeWord, w2: &FreeWord) -> Result<WeylPoly> {
    if w1.n != w2.n {
        return Err(WeylError::DimensionMismatch {
            left: w1.n,
            right: w2.n,
        });
    }
    let mut symbols = w1.symbols.clone();
    symbols.extend(w2.symbols.iter().cloned());
    Ok(FreeWord::new(w1.n, symbols)?.normal_form())
}
