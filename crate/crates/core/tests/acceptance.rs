//! The ten acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;

use common::checks::{actor_is_crossed_module, closure, single_space_matches, spaces_match, Outcome};
use common::*;
use dias::actor::{split_extension_report, XModActionData};
use dias::fixtures::{abelian, d2, dual_numbers, k1};
use dias::tetra::tetra_space;
use dias::{
    action_data_to_hom, canonical_morphism, check_axioms, check_conditions, check_crossed_module, check_xmod_action_data,
    generate_mixed_identities, hom_to_action_data, semidirect_xmod, verify_center_is_kernel, Action, Bilinear,
    CrossedModule, Dialgebra, Field, Matrix, Rational, Sort, SubspaceBasis, Zp,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axiom_suite() -> Outcome {
    for (name, d) in [
        ("A2", abelian::<Rational>(2)),
        ("K1", k1()),
        ("D2", d2()),
        ("dual numbers", dual_numbers()),
    ] {
        let r = check_axioms(&d);
        ensure(r.is_empty(), || format!("{name}: {:?}", r.labels()))?;
        ensure(axiom_failures(&d).is_empty(), || format!("{name}: oracle disagrees"))?;
    }
    let base = d2::<Rational>();
    let (mut breaking, mut total) = (0, 0);
    for op in [L, R] {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    total += 1;
                    let mut t = base.product(op).clone();
                    let bumped = t.get(i, j)[k].clone() + Rational::one();
                    t.set(i, j, k, bumped);
                    let (left, right) = if op == L {
                        (t, base.product(R).clone())
                    } else {
                        (base.product(L).clone(), t)
                    };
                    let d = Dialgebra::from_tensors(left, right).unwrap();
                    let expected = axiom_failures(&d);
                    let mut found: Vec<(String, [usize; 3])> = check_axioms(&d)
                        .violations
                        .iter()
                        .map(|v| (v.label.clone(), [v.witness[0], v.witness[1], v.witness[2]]))
                        .collect();
                    found.sort();
                    found.dedup();
                    ensure(found == expected, || {
                        format!("perturbation {op} ({i},{j},{k}): found {found:?}, oracle {expected:?}")
                    })?;
                    breaking += usize::from(!expected.is_empty());
                }
            }
        }
    }
    Ok(format!("4 fixtures clean; {breaking}/{total} perturbations break an axiom, all witnesses exact"))
}

fn identity_counts() -> Outcome {
    let a = generate_mixed_identities(&[(Sort::D, 1), (Sort::L, 2)]).map_err(|e| e.to_string())?.len();
    let b = generate_mixed_identities(&[(Sort::L, 1), (Sort::D, 2)]).map_err(|e| e.to_string())?.len();
    let c = generate_mixed_identities(&[(Sort::P, 1), (Sort::D, 1), (Sort::L, 1)]).map_err(|e| e.to_string())?.len();
    ensure((a, b, c) == (15, 15, 30), || format!("counts {a}/{b}/{c}"))?;
    Ok("15 / 15 / 30".into())
}

fn tetra_dimensions() -> Outcome {
    for n in 1..=3 {
        let a = abelian::<Rational>(n);
        let dim = tetra_space(&a).dim();
        ensure(dim == 4 * n * n, || format!("dim Tetra(A{n}) = {dim}"))?;
        single_space_matches(&format!("A{n}"), &a)?;
    }
    let s = tetra_space(&k1::<Rational>());
    let one = vec![Rational::one(); 4];
    ensure(s.dim() == 1 && s.basis().vectors()[0] == one, || format!("Tetra(K1) basis {:?}", s.basis().vectors()))?;
    single_space_matches("K1", &k1::<Rational>())?;
    let brute = brute_force_tetra_k1();
    ensure(brute == vec![[0; 4], [1; 4], [2; 4]], || format!("enumeration over Z/3 found {brute:?}"))?;
    Ok("4n² for n = 1, 2, 3; Tetra(K1) = span (1,1,1,1), confirmed by assembler and enumeration".into())
}

fn closure_suite() -> Outcome {
    let mut total = Vec::new();
    for (name, xm) in fixture_xmods() {
        spaces_match(name, &xm)?;
        total.push(closure(name, &xm)?);
    }
    Ok(total.join("; "))
}

fn actor_suite() -> Outcome {
    let fixtures = fixture_xmods();
    let mut out = Vec::new();
    for want in ["(A2,A2,0)", "(span(e2),D2,i)", "(D2,D2,id)"] {
        let (name, xm) = fixtures.iter().find(|(n, _)| *n == want).unwrap();
        out.push(actor_is_crossed_module(name, xm)?);
    }
    Ok(out.join("; "))
}

fn round_trip() -> Outcome {
    let xm = CrossedModule::identity(&d2::<Rational>());
    ensure(check_conditions(&xm).con1, || "CON1 fails on (D2,D2,id)".into())?;
    let m = canonical_morphism(&xm).map_err(|e| e.to_string())?;
    ensure(m.report.is_empty(), || format!("canonical morphism: {:?}", m.report.labels()))?;
    let data = hom_to_action_data(&m.phi, &m.psi, &xm, &m.actor).map_err(|e| e.to_string())?;
    let ledger = check_xmod_action_data(&data);
    ensure(ledger.is_empty(), || format!("ledger: {:?}", ledger.labels()))?;
    // conjugation evaluated directly: every map is a product in D2
    ensure(data == XModActionData::conjugation(&xm), || "recovered data is not conjugation".into())?;
    let back = action_data_to_hom(&data).map_err(|e| e.to_string())?;
    ensure(back.phi == m.phi && back.psi == m.psi, || "φ/ψ not reproduced".into())?;
    Ok(format!(
        "ledger clean, φ {}×{} and ψ {}×{} reproduced exactly",
        m.phi.rows(),
        m.phi.cols(),
        m.psi.rows(),
        m.psi.cols()
    ))
}

fn fixture_action_data() -> Vec<(&'static str, XModActionData<Rational>)> {
    let d = d2::<Rational>();
    let e2 = span(2, vec![vec![q("0"), q("1")]]);
    let ideal = CrossedModule::from_ideal(&d, &e2).unwrap();
    vec![
        ("conjugation on (D2,D2,id)", XModActionData::conjugation(&CrossedModule::identity(&d))),
        ("conjugation on (span(e2),D2,i)", XModActionData::conjugation(&ideal)),
        (
            "(0,D2,0) on (span(e2),D2,i)",
            XModActionData::from_zero_source(&d, &ideal, ideal.action.clone(), Action::by_products(&d)).unwrap(),
        ),
        ("conjugation on (K1,K1,id)", XModActionData::conjugation(&CrossedModule::identity(&k1()))),
    ]
}

fn semidirect_suite() -> Outcome {
    let mut names = Vec::new();
    for (name, data) in fixture_action_data() {
        let s = semidirect_xmod(&data).map_err(|e| format!("{name}: {e}"))?;
        let r = check_crossed_module(&s.xmod).map_err(|e| e.to_string())?;
        ensure(r.is_empty(), || format!("{name}: {:?}", r.labels()))?;
        ensure(xmod_failures(&s.xmod) == 0, || format!("{name}: oracle rejects the semidirect product"))?;
        let (src, tgt) = (&data.source, &data.target);
        let (nl, nm, nd, np) = (tgt.l.dim(), src.l.dim(), tgt.d.dim(), src.d.dim());
        let n = nl + nm;
        for op in [L, R] {
            for i in 0..n {
                for j in 0..n {
                    let (u, v) = (dias::linalg::unit(n, i), dias::linalg::unit(n, j));
                    let want = semidirect_mul(&tgt.l, &src.l, &src.mu, &data.p_on_l, op, &u, &v);
                    ensure(s.xmod.l.mul(op, &u, &v) == want, || format!("{name}: L⋊M {op} product {i},{j}"))?;
                }
            }
        }
        let (pl, pd) = &s.projection;
        let (sl, sd) = &s.section;
        let (il, id) = &s.inclusion;
        ensure(pl.mul(sl) == Matrix::identity(nm) && pd.mul(sd) == Matrix::identity(np), || {
            format!("{name}: projection ∘ section ≠ id")
        })?;
        ensure(pl.mul(il).is_zero() && pd.mul(id).is_zero(), || format!("{name}: projection ∘ inclusion ≠ 0"))?;
        ensure(s.xmod.mu.mul(sl) == sd.mul(&src.mu) && pd.mul(&s.xmod.mu) == src.mu.mul(pl), || {
            format!("{name}: split maps do not commute with the structure maps")
        })?;
        ensure(
            s.xmod.mu.mul(il) == id.mul(&tgt.mu) && il.rows() == nl + nm && id.rows() == nd + np,
            || format!("{name}: inclusion does not commute with the structure maps"),
        )?;
        let split = split_extension_report(&s, &data).map_err(|e| e.to_string())?;
        ensure(split.is_empty(), || format!("{name}: {:?}", split.labels()))?;
        names.push(name);
    }
    Ok(format!("{} semidirect products are split extensions", names.len()))
}

/// `L^D` and `st_D(L) ∩ Ann(D)` by direct evaluation.
fn oracle_center(xm: &CrossedModule<Rational>) -> (SubspaceBasis<Rational>, SubspaceBasis<Rational>) {
    let w = World::of(xm);
    let (nl, nd) = (xm.l.dim(), xm.d.dim());
    let fixed = solve(nl, |a| {
        let a = e(S::L, a.to_vec());
        let mut out = Vec::new();
        for x in w.basis(S::D) {
            for op in [L, R] {
                out.extend(w.mul(op, &x, &a).v);
                out.extend(w.mul(op, &a, &x).v);
            }
        }
        out
    });
    let central = solve(nd, |x| {
        let x = e(S::D, x.to_vec());
        let mut out = Vec::new();
        for op in [L, R] {
            for a in w.basis(S::L) {
                out.extend(w.mul(op, &x, &a).v);
                out.extend(w.mul(op, &a, &x).v);
            }
            for y in w.basis(S::D) {
                out.extend(w.mul(op, &x, &y).v);
                out.extend(w.mul(op, &y, &x).v);
            }
        }
        out
    });
    (fixed, central)
}

fn center_suite() -> Outcome {
    let d = d2::<Rational>();
    let cases = [
        ("(D2,D2,id)", CrossedModule::identity(&d), true),
        ("(0,D2,0)", CrossedModule::zero_over(&d), false),
        ("(K1,K1,id)", CrossedModule::identity(&k1()), true),
    ];
    for (name, xm, identity_shape) in cases {
        let c = verify_center_is_kernel(&xm).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.report.is_empty() && !c.report.advisory, || format!("{name}: {:?}", c.report.labels()))?;
        ensure(c.ker_phi == c.center.l_fixed && c.ker_psi == c.center.d_center, || format!("{name}: kernel ≠ center"))?;
        let (fixed, central) = oracle_center(&xm);
        ensure(c.center.l_fixed == fixed && c.center.d_center == central, || format!("{name}: center differs from oracle"))?;
        let ann = dias::annihilator(&xm.d);
        ensure(c.center.d_center == ann, || format!("{name}: st∩Z is not Z(D)"))?;
        if identity_shape {
            ensure(c.center.l_fixed == ann, || format!("{name}: L^D is not Z(D)"))?;
        } else {
            ensure(c.center.l_fixed.dim() == 0, || format!("{name}: L^D is not 0"))?;
        }
    }
    Ok("ker φ = L^D and ker ψ = st∩Z(D) on all three; shapes (0,Z(D),0) and (Z(D),Z(D),id)".into())
}

fn associative_consistency() -> Outcome {
    let d = dual_numbers::<Rational>();
    let t = tetra_space(&d).dim();
    let b = oracle_bimultipliers(&d).dim();
    ensure(t == b, || format!("dim Tetra = {t}, bimultipliers = {b}"))?;
    single_space_matches("dual numbers", &d)?;
    Ok(format!("dim Tetra(dual numbers) = {t} = dim bimultipliers"))
}

fn random_dialgebra<F: Field>(rng: &mut ChaCha8Rng, p: i64) -> Dialgebra<F> {
    let n = rng.random_range(1..=3);
    let density = [0.15, 0.3, 0.5][rng.random_range(0..3)];
    let mut tensor = || {
        let mut t = Bilinear::zeros(n, n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rng.random_bool(density) {
                        t.set(i, j, k, F::from_i64(rng.random_range(1..p)));
                    }
                }
            }
        }
        t
    };
    let left = tensor();
    let right = tensor();
    Dialgebra::from_tensors(left, right).unwrap()
}

fn fuzz_one<F: Field>(rng: &mut ChaCha8Rng, p: i64, runs: usize) -> Result<(usize, usize), String> {
    let mut survivors = 0;
    let mut nonabelian = 0;
    for run in 0..runs {
        let d = random_dialgebra::<F>(rng, p);
        if !check_axioms(&d).is_empty() {
            continue;
        }
        survivors += 1;
        nonabelian += usize::from(!d.is_abelian());
        let tag = format!("Z/{p} #{run} (dim {})", d.dim());
        single_space_matches(&tag, &d)?;
        for xm in [CrossedModule::identity(&d), CrossedModule::zero_over(&d)] {
            spaces_match(&tag, &xm)?;
            closure(&tag, &xm)?;
            actor_is_crossed_module(&tag, &xm)?;
        }
    }
    Ok((survivors, nonabelian))
}

fn fuzz_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0d1a);
    let (s2, n2) = fuzz_one::<Zp<2>>(&mut rng, 2, 100)?;
    let (s3, n3) = fuzz_one::<Zp<3>>(&mut rng, 3, 100)?;
    ensure(n2 + n3 > 0, || "no nonabelian survivors; the suite would be vacuous".into())?;
    Ok(format!("200 tensors, {} survivors ({} nonabelian), criteria 3–5 clean on each", s2 + s3, n2 + n3))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axiom suite", axiom_suite),
        ("identity-generator counts", identity_counts),
        ("tetra dimensions", tetra_dimensions),
        ("closure", closure_suite),
        ("Δ and the actor crossed module", actor_suite),
        ("hom/action-data round trip", round_trip),
        ("semidirect product split extension", semidirect_suite),
        ("center equals kernel", center_suite),
        ("associative consistency", associative_consistency),
        ("fuzz", fuzz_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
