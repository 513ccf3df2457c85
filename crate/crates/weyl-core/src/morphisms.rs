//! Construction of the classifying isomorphisms `A_n^k ≅ A_n^{k'}` and two
//! independent checkers for the homomorphism equations.
//!
//! `A_n^k` and `A_n^{k'}` are isomorphic exactly when `k` and `k'` contain
//! equally many nonzero entries. The witness maps send each generator to a
//! scaled generator; the index bijections are fixed to the order-preserving
//! ones so that outputs are reproducible.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{Coefficient, WeylPoly};
use crate::twist::{apply_twist, TwistVector};
use crate::{Result, WeylError};

/// Candidate generator images `φ(x_ℓ)`, `φ(y_ℓ)` defining a morphism
/// between twisted Weyl algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorImages {
    n: usize,
    x_img: Vec<WeylPoly>,
    y_img: Vec<WeylPoly>,
}

impl GeneratorImages {
    pub fn new(x_img: Vec<WeylPoly>, y_img: Vec<WeylPoly>) -> Result<Self> {
        let n = x_img.len();
        if y_img.len() != n {
            return Err(WeylError::LengthMismatch {
                expected: n,
                found: y_img.len(),
            });
        }
        for p in x_img.iter().chain(y_img.iter()) {
            if p.n() != n {
                return Err(WeylError::DimensionMismatch {
                    left: n,
                    right: p.n(),
                });
            }
        }
        Ok(GeneratorImages { n, x_img, y_img })
    }

    pub fn identity(n: usize) -> Self {
        GeneratorImages {
            n,
            x_img: (1..=n).map(|l| WeylPoly::gen_x(n, l).unwrap()).collect(),
            y_img: (1..=n).map(|l| WeylPoly::gen_y(n, l).unwrap()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_img(&self, l: usize) -> &WeylPoly {
        &self.x_img[l - 1]
    }

    pub fn y_img(&self, l: usize) -> &WeylPoly {
        &self.y_img[l - 1]
    }

    /// Replace one image; used by tests to build corrupted candidates.
    pub fn with_x_img(mut self, l: usize, img: WeylPoly) -> Self {
        self.x_img[l - 1] = img;
        self
    }

    pub fn with_y_img(mut self, l: usize, img: WeylPoly) -> Self {
        self.y_img[l - 1] = img;
        self
    }
}

fn check_pair(k: &TwistVector, k2: &TwistVector) -> Result<usize> {
    if k.n() != k2.n() {
        return Err(WeylError::DimensionMismatch {
            left: k.n(),
            right: k2.n(),
        });
    }
    Ok(k.n())
}

/// The classifying isomorphism `φ: A_n^k → A_n^{k'}`:
///
/// ```text
/// φ(x_ℓ) = x_{β(ℓ)}                    φ(y_ℓ) = y_{β(ℓ)}            if k_ℓ = 0,
/// φ(x_ℓ) = (k'_{β'(ℓ)}/k_ℓ) x_{β'(ℓ)}  φ(y_ℓ) = (k_ℓ/k'_{β'(ℓ)}) y_{β'(ℓ)}  else,
/// ```
///
/// with `β`, `β'` the order-preserving bijections between the zero index
/// sets and between the nonzero index sets. Errors when the nonzero counts
/// differ: no isomorphism exists in that case.
pub fn build_iso(k: &TwistVector, k2: &TwistVector) -> Result<GeneratorImages> {
    let n = check_pair(k, k2)?;
    let (zk, zk2) = (k.zero_set(), k2.zero_set());
    let (nk, nk2) = (k.nonzero_set(), k2.nonzero_set());
    if nk.len() != nk2.len() {
        return Err(WeylError::NotIsomorphic {
            nonzero_left: nk.len(),
            nonzero_right: nk2.len(),
        });
    }
    let mut x_img = Vec::with_capacity(n);
    let mut y_img = Vec::with_capacity(n);
    for l in 1..=n {
        if k.entry(l).is_zero() {
            let pos = zk.iter().position(|&z| z == l).unwrap();
            let target = zk2[pos];
            x_img.push(WeylPoly::gen_x(n, target)?);
            y_img.push(WeylPoly::gen_y(n, target)?);
        } else {
            let pos = nk.iter().position(|&z| z == l).unwrap();
            let target = nk2[pos];
            let ratio = k2.entry(target) / k.entry(l);
            x_img.push(WeylPoly::gen_x(n, target)?.scale(&ratio));
            y_img.push(WeylPoly::gen_y(n, target)?.scale(&ratio.recip()));
        }
    }
    GeneratorImages::new(x_img, y_img)
}

/// The inverse `φ': A_n^{k'} → A_n^k` of [`build_iso`], with
/// `φ∘φ' = φ'∘φ = id` on generators.
pub fn build_inverse_iso(k: &TwistVector, k2: &TwistVector) -> Result<GeneratorImages> {
    build_iso(k2, k)
}

/// Extend generator images to all of `A_n`: a monomial `y^a x^b` maps to the
/// associative product of the images in basis order (all `φ(y)` factors,
/// then all `φ(x)` factors), extended linearly.
pub fn apply_morphism(images: &GeneratorImages, p: &WeylPoly) -> Result<WeylPoly> {
    if images.n != p.n() {
        return Err(WeylError::DimensionMismatch {
            left: images.n,
            right: p.n(),
        });
    }
    let n = images.n;
    let mut out = WeylPoly::zero(n);
    for (m, c) in p.terms() {
        let mut acc = WeylPoly::scalar(n, c.clone());
        for l in 0..n {
            for _ in 0..m.yexp()[l] {
                acc = acc.mul_assoc(&images.y_img[l])?;
            }
        }
        for l in 0..n {
            for _ in 0..m.xexp()[l] {
                acc = acc.mul_assoc(&images.x_img[l])?;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// One failed equation: an identifying label and the nonzero defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub equation: String,
    pub defect: WeylPoly,
}

/// Outcome of a morphism check: the empty report means the candidate is a
/// valid hom-morphism.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MorphismReport {
    pub defects: Vec<Defect>,
    /// Set when the candidate is rejected before any equation is evaluated
    /// (the equation-set checker requires images linear in the `y_i` with
    /// `k'_i ≠ 0`).
    pub structural_rejection: Option<String>,
}

impl MorphismReport {
    pub fn accepted(&self) -> bool {
        self.defects.is_empty() && self.structural_rejection.is_none()
    }

    fn push(&mut self, equation: String, defect: WeylPoly) {
        if !defect.is_zero() {
            self.defects.push(Defect { equation, defect });
        }
    }
}

/// First characterization: `φ` is a hom-morphism `A_n^k → A_n^{k'}` iff it
/// preserves the Weyl relations and intertwines the twists on generators
/// (`φ∘α_k = α_{k'}∘φ`). Reported defects:
/// `[φx_j, φx_ℓ]`, `[φy_j, φy_ℓ]`, `[φx_j, φy_ℓ] - δ_jℓ`, and
/// `φ(α_k(g)) - α_{k'}(φ(g))` per generator.
pub fn check_relations_and_intertwine(
    k: &TwistVector,
    k2: &TwistVector,
    images: &GeneratorImages,
) -> Result<MorphismReport> {
    let n = check_pair(k, k2)?;
    if images.n != n {
        return Err(WeylError::DimensionMismatch {
            left: n,
            right: images.n,
        });
    }
    let mut report = MorphismReport::default();
    for j in 1..=n {
        for l in 1..=n {
            report.push(
                format!("[phi(x{j}), phi(x{l})]"),
                images.x_img(j).commutator(images.x_img(l))?,
            );
            report.push(
                format!("[phi(y{j}), phi(y{l})]"),
                images.y_img(j).commutator(images.y_img(l))?,
            );
            let mut comm = images.x_img(j).commutator(images.y_img(l))?;
            if j == l {
                comm = comm.sub(&WeylPoly::one(n))?;
            }
            report.push(format!("[phi(x{j}), phi(y{l})] - delta"), comm);
        }
    }
    // Intertwining on generators. φ is linear with φ(1) = 1, so
    // φ(α_k(x_ℓ)) = φ(x_ℓ) and φ(α_k(y_ℓ)) = φ(y_ℓ) + k_ℓ.
    for l in 1..=n {
        let lhs = images.x_img(l).clone();
        let rhs = apply_twist(k2, images.x_img(l))?;
        report.push(format!("phi(alpha(x{l})) - alpha'(phi(x{l}))"), lhs.sub(&rhs)?);

        let lhs = images
            .y_img(l)
            .add(&WeylPoly::scalar(n, k.entry(l).clone()))?;
        let rhs = apply_twist(k2, images.y_img(l))?;
        report.push(format!("phi(alpha(y{l})) - alpha'(phi(y{l}))"), lhs.sub(&rhs)?);
    }
    Ok(report)
}

/// Split an image into `(rest, lin)` where `lin[i]` is the coefficient of
/// the pure linear monomial `y_{i+1}` for each `i` with `k'_{i+1} ≠ 0`, and
/// `rest` involves only the `y`'s of the zero set of `k'` and the `x`'s.
/// Returns `None` when the image has some other monomial touching a
/// forbidden `y_i`.
fn decompose(img: &WeylPoly, k2: &TwistVector) -> Option<(WeylPoly, Vec<Coefficient>)> {
    let n = img.n();
    let mut lin = alloc::vec![Coefficient::zero(); n];
    let mut rest = WeylPoly::zero(n);
    'terms: for (m, c) in img.terms() {
        for i in 0..n {
            if k2.entries()[i].is_zero() || m.yexp()[i] == 0 {
                continue;
            }
            let single = m.yexp()[i] == 1
                && m.total_degree() == 1
                && m.xexp().iter().all(|&e| e == 0);
            if !single {
                return None;
            }
            lin[i] = c.clone();
            continue 'terms;
        }
        rest = rest
            .add(&WeylPoly::monomial(m.clone(), c.clone()))
            .expect("same dimension");
    }
    Some((rest, lin))
}

/// Second, independently derived characterization: decompose the images as
/// `φ(x_ℓ) = p_ℓ + Σ f_iℓ y_i` and `φ(y_ℓ) = q_ℓ + Σ g_iℓ y_i` (with `p_ℓ`,
/// `q_ℓ` free of the `y_i` having `k'_i ≠ 0`) and verify the coefficient
/// equations and the three PDE families:
///
/// ```text
/// coeff1:  Σ_i f_iℓ k'_i = 0
/// coeff2:  Σ_i g_iℓ k'_i = k_ℓ
/// PDE1:    Σ_i ∂/∂x_i (f_iℓ p_j - f_ij p_ℓ) = [p_ℓ, p_j]
/// PDE2:    Σ_i ∂/∂x_i (g_iℓ q_j - g_ij q_ℓ) = [q_ℓ, q_j]
/// PDE3:    Σ_i ∂/∂x_i (g_iℓ p_j - f_ij q_ℓ) = [q_ℓ, p_j] + δ_jℓ
/// ```
pub fn check_hom_constraints(
    k: &TwistVector,
    k2: &TwistVector,
    images: &GeneratorImages,
) -> Result<MorphismReport> {
    let n = check_pair(k, k2)?;
    if images.n != n {
        return Err(WeylError::DimensionMismatch {
            left: n,
            right: images.n,
        });
    }
    let mut report = MorphismReport::default();
    let mut p_parts = Vec::with_capacity(n);
    let mut q_parts = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n); // f[l-1][i] = f_{(i+1) l}
    let mut g = Vec::with_capacity(n);
    for l in 1..=n {
        match decompose(images.x_img(l), k2) {
            Some((p, lin)) => {
                p_parts.push(p);
                f.push(lin);
            }
            None => {
                report.structural_rejection =
                    Some(format!("phi(x{l}) is not linear in the forbidden y's"));
                return Ok(report);
            }
        }
        match decompose(images.y_img(l), k2) {
            Some((q, lin)) => {
                q_parts.push(q);
                g.push(lin);
            }
            None => {
                report.structural_rejection =
                    Some(format!("phi(y{l}) is not linear in the forbidden y's"));
                return Ok(report);
            }
        }
    }

    for l in 1..=n {
        let mut sum_f = Coefficient::zero();
        let mut sum_g = Coefficient::zero();
        for i in 0..n {
            sum_f += &f[l - 1][i] * &k2.entries()[i];
            sum_g += &g[l - 1][i] * &k2.entries()[i];
        }
        report.push(
            format!("coeff1 (l={l})"),
            WeylPoly::scalar(n, sum_f),
        );
        report.push(
            format!("coeff2 (l={l})"),
            WeylPoly::scalar(n, sum_g - k.entry(l)),
        );
    }

    // Σ_i ∂/∂x_i (a_i u - b_i v) - [v, u], as a defect polynomial.
    let pde_defect = |a: &[Coefficient],
                      b: &[Coefficient],
                      u: &WeylPoly,
                      v: &WeylPoly|
     -> Result<WeylPoly> {
        let mut lhs = WeylPoly::zero(n);
        for i in 1..=n {
            let term = u.scale(&a[i - 1]).sub(&v.scale(&b[i - 1]))?.partial_x(i)?;
            lhs = lhs.add(&term)?;
        }
        lhs.sub(&v.commutator(u)?)
    };

    for j in 1..=n {
        for l in 1..=n {
            report.push(
                format!("PDE1 (j={j}, l={l})"),
                pde_defect(&f[l - 1], &f[j - 1], &p_parts[j - 1], &p_parts[l - 1])?,
            );
            report.push(
                format!("PDE2 (j={j}, l={l})"),
                pde_defect(&g[l - 1], &g[j - 1], &q_parts[j - 1], &q_parts[l - 1])?,
            );
            let mut d = pde_defect(&g[l - 1], &f[j - 1], &p_parts[j - 1], &q_parts[l - 1])?;
            if j == l {
                d = d.sub(&WeylPoly::one(n))?;
            }
            report.push(format!("PDE3 (j={j}, l={l})"), d);
        }
    }
    Ok(report)
}
