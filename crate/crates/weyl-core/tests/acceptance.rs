//! End-to-end acceptance gate: one test per criterion, exact rational
//! arithmetic throughout, all randomness seeded. Each test prints a single
//! summary line on success; a failed assertion fails the build.

mod common;

use common::{random_mixed_twist, random_nonzero_poly, random_poly, random_twist, rng, KShape};
use num_bigint::BigInt;
use rand::Rng;
use weyl_core::homstar::{
    associator_star, commutator_star, hom_assoc_defect, star, weak_unit_defect,
};
use weyl_core::morphisms::{
    apply_morphism, build_inverse_iso, build_iso, check_hom_constraints,
    check_relations_and_intertwine, GeneratorImages,
};
use weyl_core::structure::{ad, derivation_defect_on_generators, is_hom_derivation, reduce_to_scalar};
use weyl_core::twist::{apply_twist, twist_power, twist_via_exp};
use weyl_core::deform::{deform_bracket, deform_star, deform_twist, ParamMap};
use weyl_core::{
    arith::{coeff_int, oracle_mul, FreeSymbol, FreeWord},
    Coefficient, Degree, TwistVector, WeylPoly,
};

/// All words of the given length over the 2n generators.
fn all_words(n: usize, len: usize) -> Vec<FreeWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 2 * n);
        for w in &out {
            for l in 1..=n {
                let mut w2 = w.clone();
                w2.push(FreeSymbol::X(l));
                next.push(w2);
                let mut w2 = w.clone();
                w2.push(FreeSymbol::Y(l));
                next.push(w2);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|symbols| FreeWord::new(n, symbols).unwrap())
        .collect()
}

#[test]
fn criterion_01_oracle_equivalence() {
    // Exhaustive: all monomial word pairs of total length <= 6, n in {1, 2}.
    let mut checked = 0u64;
    for n in [1usize, 2] {
        let by_len: Vec<Vec<FreeWord>> = (0..=6).map(|len| all_words(n, len)).collect();
        for a in 0..=6usize {
            for b in 0..=(6 - a) {
                for w1 in &by_len[a] {
                    for w2 in &by_len[b] {
                        let expected = oracle_mul(w1, w2).unwrap();
                        let got = w1.normal_form().mul_assoc(&w2.normal_form()).unwrap();
                        assert_eq!(got, expected, "oracle mismatch: n={n} a={a} b={b}");
                        checked += 1;
                    }
                }
            }
        }
    }
    // Randomized: 500 pairs of degree <= 3 words for n = 3.
    let mut r = rng(0xACC1);
    for _ in 0..500 {
        let mut words = Vec::new();
        for _ in 0..2 {
            let len = r.gen_range(0..=3);
            let symbols: Vec<FreeSymbol> = (0..len)
                .map(|_| {
                    let l = r.gen_range(1..=3);
                    if r.gen_bool(0.5) {
                        FreeSymbol::X(l)
                    } else {
                        FreeSymbol::Y(l)
                    }
                })
                .collect();
            words.push(FreeWord::new(3, symbols).unwrap());
        }
        let expected = oracle_mul(&words[0], &words[1]).unwrap();
        let got = words[0]
            .normal_form()
            .mul_assoc(&words[1].normal_form())
            .unwrap();
        assert_eq!(got, expected);
        checked += 1;
    }
    println!("PASS criterion 1: oracle equivalence on {checked} products");
}

#[test]
fn criterion_02_hom_associativity() {
    let mut r = rng(0xACC2);
    let mut checked = 0u64;
    for n in [1usize, 2, 3] {
        for shape in [KShape::AllZero, KShape::OneNonzero, KShape::AllNonzero] {
            let k = random_twist(&mut r, n, shape);
            for _ in 0..200 {
                let a = random_poly(&mut r, n, 4, 3);
                let b = random_poly(&mut r, n, 4, 3);
                let c = random_poly(&mut r, n, 4, 3);
                assert!(
                    hom_assoc_defect(&k, &a, &b, &c).unwrap().is_zero(),
                    "hom-associativity defect: n={n} k={:?}",
                    k.entries()
                );
                checked += 1;
            }
        }
    }
    println!("PASS criterion 2: hom-associativity on {checked} triples");
}

#[test]
fn criterion_03_twist_laws() {
    let mut r = rng(0xACC3);
    for trial in 0..100 {
        let n = 1 + (trial % 3) as usize;
        let k = random_mixed_twist(&mut r, n);
        let p = random_poly(&mut r, n, 4, 3);

        // Shift form equals exponential-series form.
        assert_eq!(apply_twist(&k, &p).unwrap(), twist_via_exp(&k, &p).unwrap());

        // Powers: alpha_k^i = alpha_{ik} for i in -3..=3.
        for i in -3i64..=3 {
            let direct = twist_power(&k, i, &p).unwrap();
            let mut iterated = p.clone();
            let step = if i >= 0 { k.clone() } else { k.negate() };
            for _ in 0..i.unsigned_abs() {
                iterated = apply_twist(&step, &iterated).unwrap();
            }
            assert_eq!(direct, iterated);
        }

        // Sequential single-variable shifts equal the simultaneous shift.
        let mut sequential = p.clone();
        for l in 0..n {
            let mut single = vec![Coefficient::from_integer(BigInt::from(0)); n];
            single[l] = k.entries()[l].clone();
            sequential = apply_twist(&TwistVector::new(single), &sequential).unwrap();
        }
        assert_eq!(sequential, apply_twist(&k, &p).unwrap());
    }
    println!("PASS criterion 3: twist laws on 100 random elements");
}

#[test]
fn criterion_04_power_associativity_dichotomy() {
    let mut r = rng(0xACC4);
    for n in [1usize, 2, 3] {
        for _ in 0..10 {
            let k = random_mixed_twist(&mut r, n);
            for l in 1..=n {
                let p = WeylPoly::gen_y(n, l)
                    .unwrap()
                    .mul_assoc(&WeylPoly::gen_x(n, l).unwrap())
                    .unwrap();
                let assoc = associator_star(&k, &p, &p, &p).unwrap();
                if k.entry(l) == &coeff_int(0) {
                    assert!(assoc.is_zero(), "expected vanishing associator: l={l}");
                } else {
                    assert!(!assoc.is_zero());
                    let expected = WeylPoly::gen_x(n, l).unwrap().scale(k.entry(l));
                    assert_eq!(assoc.lowest_degree_part(), expected);
                }
            }
        }
    }
    println!("PASS criterion 4: power-associativity dichotomy with exact lowest terms");
}

#[test]
fn criterion_05_simplicity_reduction() {
    let mut r = rng(0xACC5);
    for n in [1usize, 2, 3] {
        for _ in 0..100 {
            let k = random_mixed_twist(&mut r, n);
            let p = random_nonzero_poly(&mut r, n, 4, 3);
            let (trace, scalar) = reduce_to_scalar(&k, &p).unwrap();
            assert!(scalar != coeff_int(0), "reduction hit zero: n={n}");
            let Degree::Finite(d) = p.total_degree() else {
                unreachable!()
            };
            assert!(trace.len() <= d as usize, "trace longer than total degree");
            let mut cur = p;
            for step in &trace {
                cur = step.apply(&k, &cur).unwrap();
            }
            assert_eq!(cur, WeylPoly::scalar(n, scalar));
        }
    }
    println!("PASS criterion 5: simplicity reduction on 300 nonzero inputs");
}

#[test]
fn criterion_06_derivation_theorem() {
    let mut r = rng(0xACC6);
    let mut accepted_count = 0u32;
    for trial in 0..200 {
        let n = 1 + (trial % 3) as usize;
        let k = random_mixed_twist(&mut r, n);
        // Mix fully random p with structurally valid ones so both verdicts
        // are exercised.
        let p = if trial % 2 == 0 {
            random_poly(&mut r, n, 3, 3)
        } else {
            let mut q = random_poly(&mut r, n, 3, 3);
            for (l, e) in k.entries().iter().enumerate() {
                if *e != coeff_int(0) {
                    while let Degree::Finite(d) = q.deg_y(l + 1).unwrap() {
                        if d == 0 {
                            break;
                        }
                        q = q.partial_y(l + 1).unwrap();
                    }
                }
            }
            q.add(&WeylPoly::gen_y(n, 1).unwrap().scale(&random_coeff_of(&mut r)))
                .unwrap()
        };
        let structural = is_hom_derivation(&k, &p).unwrap();
        let defects = derivation_defect_on_generators(&k, &p).unwrap();
        let by_defects = defects.iter().all(WeylPoly::is_zero);
        assert_eq!(
            structural, by_defects,
            "derivation checkers disagree: n={n} k={:?} p={p}",
            k.entries()
        );
        if structural {
            accepted_count += 1;
            for _ in 0..20 {
                let a = random_poly(&mut r, n, 3, 2);
                let b = random_poly(&mut r, n, 3, 2);
                let lhs = ad(&p, &star(&k, &a, &b).unwrap()).unwrap();
                let rhs = star(&k, &ad(&p, &a).unwrap(), &b)
                    .unwrap()
                    .add(&star(&k, &a, &ad(&p, &b).unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "star-Leibniz failed for accepted p");
            }
        }
    }
    assert!(accepted_count > 0, "no accepted derivations were exercised");
    // ad_{y_l} accepted always; ad_{y_l^2} rejected exactly when k_l != 0.
    for n in [1usize, 2, 3] {
        for _ in 0..5 {
            let k = random_mixed_twist(&mut r, n);
            for l in 1..=n {
                let y = WeylPoly::gen_y(n, l).unwrap();
                assert!(is_hom_derivation(&k, &y).unwrap());
                let y2 = y.pow_assoc(2);
                let expected = k.entry(l) == &coeff_int(0);
                assert_eq!(is_hom_derivation(&k, &y2).unwrap(), expected);
            }
        }
    }
    println!(
        "PASS criterion 6: derivation checkers agree on 200 candidates ({accepted_count} accepted), star-Leibniz and y^2 dichotomy hold"
    );
}

fn random_coeff_of(r: &mut rand_chacha::ChaCha8Rng) -> Coefficient {
    common::random_coeff(r)
}

/// The 20 (k, k') pairs with equal nonzero counts used by criteria 7 and 8.
fn iso_pairs() -> Vec<(TwistVector, TwistVector)> {
    let mut r = rng(0xACC7);
    let mut pairs = Vec::new();
    while pairs.len() < 20 {
        let n = 1 + (pairs.len() % 3);
        let k = random_mixed_twist(&mut r, n);
        let k2 = loop {
            let cand = random_mixed_twist(&mut r, n);
            if cand.nonzero_set().len() == k.nonzero_set().len() {
                break cand;
            }
        };
        pairs.push((k, k2));
    }
    pairs
}

#[test]
fn criterion_07_isomorphism_classification() {
    let mut r = rng(0xACC8);
    let mut transported = 0u32;
    for (k, k2) in iso_pairs() {
        let n = k.n();
        let phi = build_iso(&k, &k2).unwrap();
        assert!(check_relations_and_intertwine(&k, &k2, &phi).unwrap().accepted());
        assert!(check_hom_constraints(&k, &k2, &phi).unwrap().accepted());

        while transported < 50 {
            let a = random_poly(&mut r, n, 3, 2);
            let b = random_poly(&mut r, n, 3, 2);
            let lhs = apply_morphism(&phi, &star(&k, &a, &b).unwrap()).unwrap();
            let rhs = star(
                &k2,
                &apply_morphism(&phi, &a).unwrap(),
                &apply_morphism(&phi, &b).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "star transport failed");
            transported += 1;
            if transported % 3 == 0 {
                break;
            }
        }

        let psi = build_inverse_iso(&k, &k2).unwrap();
        for l in 1..=n {
            assert_eq!(
                apply_morphism(&psi, phi.x_img(l)).unwrap(),
                WeylPoly::gen_x(n, l).unwrap()
            );
            assert_eq!(
                apply_morphism(&psi, phi.y_img(l)).unwrap(),
                WeylPoly::gen_y(n, l).unwrap()
            );
        }
    }
    assert!(transported >= 50);

    // Negative direction: unequal nonzero counts. build_iso refuses, and the
    // derivation invariant ad_{y_l^2} separates the algebras.
    let k = TwistVector::new(vec![coeff_int(1), coeff_int(0)]);
    let k2 = TwistVector::new(vec![coeff_int(1), coeff_int(2)]);
    assert!(build_iso(&k, &k2).is_err());
    let y2sq = WeylPoly::gen_y(2, 2).unwrap().pow_assoc(2);
    assert!(is_hom_derivation(&k, &y2sq).unwrap());
    assert!(!is_hom_derivation(&k2, &y2sq).unwrap());
    println!("PASS criterion 7: 20 isomorphism pairs verified, inverse composition and negative direction hold");
}

#[test]
fn criterion_08_checker_agreement() {
    let mut corrupted = 0u32;
    let mut disagreements = Vec::new();
    let mut verdict = |k: &TwistVector, k2: &TwistVector, images: &GeneratorImages, tag: &str| {
        let a = check_relations_and_intertwine(k, k2, images).unwrap().accepted();
        let b = check_hom_constraints(k, k2, images).unwrap().accepted();
        if a != b {
            disagreements.push(format!(
                "{tag}: relations-checker={a}, equation-checker={b}, k={:?}, k'={:?}",
                k.entries(),
                k2.entries()
            ));
        }
        (a, b)
    };
    for (k, k2) in iso_pairs() {
        let n = k.n();
        let phi = build_iso(&k, &k2).unwrap();
        let (a, b) = verdict(&k, &k2, &phi, "valid iso");
        assert!(a && b, "valid isomorphism rejected");
        // Systematic corruptions of every generator image.
        for l in 1..=n {
            let variants = [
                ("x scaled", phi.clone().with_x_img(l, phi.x_img(l).scale(&coeff_int(2)))),
                ("y squared", phi.clone().with_y_img(l, phi.y_img(l).pow_assoc(2))),
                ("x zeroed", phi.clone().with_x_img(l, WeylPoly::zero(n))),
                (
                    "y bumped by x",
                    phi.clone()
                        .with_y_img(l, phi.y_img(l).add(&WeylPoly::gen_x(n, l).unwrap()).unwrap()),
                ),
                (
                    "x and y swapped",
                    phi.clone()
                        .with_x_img(l, phi.y_img(l).clone())
                        .with_y_img(l, phi.x_img(l).clone()),
                ),
            ];
            for (tag, images) in variants {
                verdict(&k, &k2, &images, tag);
                corrupted += 1;
            }
        }
    }
    assert!(corrupted >= 40, "corpus too small: {corrupted}");
    assert!(
        disagreements.is_empty(),
        "checker disagreement on {} candidates:\n{}",
        disagreements.len(),
        disagreements.join("\n")
    );
    println!("PASS criterion 8: checkers agree on 20 valid isomorphisms and {corrupted} corrupted variants");
}

#[test]
fn criterion_09_deformation_coherence() {
    let mut r = rng(0xACC9);
    // Specialization and order-0 coefficients, 100 random pairs.
    for trial in 0..100 {
        let n = 1 + (trial % 2) as usize;
        let pm = ParamMap::new(n, (1..=n).collect()).unwrap();
        let a = random_poly(&mut r, n, 3, 2);
        let b = random_poly(&mut r, n, 3, 2);
        let series = deform_star(&a, &b, &pm).unwrap();
        assert_eq!(
            series.order_term(&vec![0; n]).unwrap(),
            a.mul_assoc(&b).unwrap()
        );
        let bracket = deform_bracket(&a, &b, &pm).unwrap();
        assert_eq!(
            bracket.order_term(&vec![0; n]).unwrap(),
            a.commutator(&b).unwrap()
        );
        let values: Vec<Coefficient> = (0..n).map(|_| random_coeff_of(&mut r)).collect();
        let k = pm.twist_vector(&values).unwrap();
        assert_eq!(series.specialize(&values).unwrap(), star(&k, &a, &b).unwrap());
        assert_eq!(
            bracket.specialize(&values).unwrap(),
            commutator_star(&k, &a, &b).unwrap()
        );
    }
    // Alternativity coefficient-wise; hom-Jacobi coefficient-wise via
    // evaluation at more points than the t-degree of the defect.
    for trial in 0..100 {
        let n = 1 + (trial % 2) as usize;
        let pm = ParamMap::new(n, (1..=n).collect()).unwrap();
        let a = random_poly(&mut r, n, 3, 2);
        let b = random_poly(&mut r, n, 3, 2);
        let c = random_poly(&mut r, n, 3, 2);
        assert!(deform_bracket(&a, &a, &pm).unwrap().is_zero());
        // Nested brackets keep total degree <= 9, so each defect coefficient
        // has t-degree <= 9; 11 sample points per parameter force zero.
        for point in -5i64..=5 {
            let values = vec![coeff_int(point); n];
            let k = pm.twist_vector(&values).unwrap();
            let (alt, jac) = weyl_core::homstar::hom_lie_defects(&k, &a, &b, &c).unwrap();
            assert!(alt.is_zero());
            assert!(jac.is_zero());
        }
    }
    // deform_twist order-0 term is the input itself.
    let pm = ParamMap::new(1, vec![1]).unwrap();
    let p = random_poly(&mut r, 1, 4, 3);
    assert_eq!(deform_twist(&p, &pm).unwrap().order_term(&[0]).unwrap(), p);
    println!("PASS criterion 9: deformation specialization, order-0 terms, and hom-Lie laws verified");
}

#[test]
fn criterion_10_weak_unitality() {
    let mut r = rng(0xACCA);
    for trial in 0..100 {
        let n = 1 + (trial % 3) as usize;
        let k = random_mixed_twist(&mut r, n);
        let a = random_poly(&mut r, n, 4, 3);
        let (l, rdef) = weak_unit_defect(&k, &a).unwrap();
        assert!(l.is_zero() && rdef.is_zero());
    }
    // Uniqueness spot check: every monomial e != 1 of degree <= 2 fails the
    // weak-identity equations against some probe.
    for n in [1usize, 2] {
        let k = random_mixed_twist(&mut r, n);
        // All normal monomials of total degree 1 or 2: one or two degree
        // units distributed over the 2n exponent slots.
        let mut monomials = Vec::new();
        for i in 0..2 * n {
            for j in i..=2 * n {
                let mut exp = vec![0u32; 2 * n];
                exp[i] += 1;
                if j < 2 * n {
                    exp[j] += 1;
                }
                let m = weyl_core::NormalMonomial::new(exp[..n].to_vec(), exp[n..].to_vec());
                monomials.push(WeylPoly::monomial(m, coeff_int(1)));
            }
        }
        monomials.dedup();
        assert!(!monomials.is_empty());
        for e in &monomials {
            let mut refuted = false;
            let mut probes = vec![WeylPoly::one(n)];
            for _ in 0..3 {
                probes.push(random_poly(&mut r, n, 2, 2));
            }
            for a in &probes {
                let ta = apply_twist(&k, a).unwrap();
                if star(&k, a, e).unwrap() != ta || star(&k, e, a).unwrap() != ta {
                    refuted = true;
                    break;
                }
            }
            assert!(refuted, "spurious weak identity candidate: {e}");
        }
    }
    println!("PASS criterion 10: weak unitality on 100 elements; degree-<=2 uniqueness spot check");
}
