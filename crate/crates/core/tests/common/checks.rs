//! Tetra-space comparisons against the oracles, shared by the acceptance
//! harness, the fuzz suite and the integration tests. Each returns a short
//! summary or the first discrepancy.

use dias::tetra::{build_actor, octuple_act, tetra_dl_space, tetra_product, tetra_space, xmod_tetra_product, xmod_tetra_space};
use dias::{check_crossed_module, CrossedModule, Dialgebra, Field, Side};

use super::*;

pub type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_zero<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

/// `Tetra(L)` equals the space cut out by the transcribed equations.
pub fn single_space_matches<F: Field>(name: &str, l: &Dialgebra<F>) -> Outcome {
    let s = tetra_space(l);
    let o = oracle_tetra_l(l);
    ensure(s.basis() == &o, || format!("{name}: Tetra(L) dim {} differs from oracle dim {}", s.dim(), o.dim()))?;
    Ok(format!("{name}: dim Tetra(L) = {}", s.dim()))
}

/// All three spaces of a crossed module agree with the oracles.
pub fn spaces_match<F: Field>(name: &str, xm: &CrossedModule<F>) -> Outcome {
    single_space_matches(name, &xm.l)?;
    let dl = tetra_dl_space(xm).map_err(|e| format!("{name}: {e}"))?;
    let od = oracle_tetra_dl(xm);
    ensure(dl.basis() == &od, || format!("{name}: Tetra(D,L) dim {} vs oracle {}", dl.dim(), od.dim()))?;
    let xs = xmod_tetra_space(xm).map_err(|e| format!("{name}: {e}"))?;
    let ox = oracle_tetra_xmod(xm);
    ensure(xs.basis() == &ox, || format!("{name}: Tetra(L,D,mu) dim {} vs oracle {}", xs.dim(), ox.dim()))?;
    Ok(format!("{name}: dims {}/{}/{}", tetra_space(&xm.l).dim(), dl.dim(), xs.dim()))
}

/// Products of basis pairs and the four octuple actions stay in their
/// spaces, judged by the transcribed equations; the library's products
/// agree with the transcribed formulas.
pub fn closure<F: Field>(name: &str, xm: &CrossedModule<F>) -> Outcome {
    let (nl, nd) = (xm.l.dim(), xm.d.dim());
    let single = tetra_space(&xm.l);
    let dl = tetra_dl_space(xm).map_err(|e| format!("{name}: {e}"))?;
    let xs = xmod_tetra_space(xm).map_err(|e| format!("{name}: {e}"))?;
    let sq: Vec<Quad<F>> = single.basis().vectors().iter().map(|v| quad_from_flat(nl, nl, v)).collect();
    let dq: Vec<Quad<F>> = dl.basis().vectors().iter().map(|v| quad_from_flat(nl, nd, v)).collect();
    let oq: Vec<(Quad<F>, Quad<F>)> = xs.basis().vectors().iter().map(|v| oct_from_flat(nl, nd, v)).collect();
    let mut checked = 0;
    for op in [L, R] {
        for (i, t1) in sq.iter().enumerate() {
            for (j, t2) in sq.iter().enumerate() {
                let p = quad_product(t1, t2, op, None);
                ensure(all_zero(&single_equations(&xm.l, &p)), || format!("{name}: Tetra(L) {op} product {i},{j} left the space"))?;
                let lib = tetra_product(&single, &single.quad(i), &single.quad(j), op).map_err(|e| e.to_string())?;
                ensure(lib.flatten() == quad_flat(&p), || format!("{name}: Tetra(L) {op} product {i},{j} differs from formula"))?;
                checked += 1;
            }
        }
        for (i, t1) in dq.iter().enumerate() {
            for (j, t2) in dq.iter().enumerate() {
                let p = quad_product(t1, t2, op, Some(&xm.mu));
                ensure(all_zero(&relative_equations(xm, &p)), || format!("{name}: Tetra(D,L) {op} product {i},{j} left the space"))?;
                let lib = tetra_product(&dl, &dl.quad(i), &dl.quad(j), op).map_err(|e| e.to_string())?;
                ensure(lib.flatten() == quad_flat(&p), || format!("{name}: Tetra(D,L) {op} product {i},{j} differs from formula"))?;
                checked += 1;
            }
        }
        for (i, o1) in oq.iter().enumerate() {
            for (j, o2) in oq.iter().enumerate() {
                let p = oct_product(o1, o2, op);
                ensure(all_zero(&octuple_equations(xm, &p)), || format!("{name}: octuple {op} product {i},{j} left the space"))?;
                let lib = xmod_tetra_product(&xs.oct(i), &xs.oct(j), op).map_err(|e| e.to_string())?;
                ensure(lib.flatten() == oct_flat(&p), || format!("{name}: octuple {op} product {i},{j} differs from formula"))?;
                checked += 1;
            }
            for (j, t) in dq.iter().enumerate() {
                for (left, side) in [(true, Side::Left), (false, Side::Right)] {
                    let p = oct_on_quad(o1, t, op, left);
                    ensure(all_zero(&relative_equations(xm, &p)), || {
                        format!("{name}: octuple {i} {op} quadruple {j} ({side:?}) left Tetra(D,L)")
                    })?;
                    let lib = octuple_act(&xs.oct(i), &dl.quad(j), op, side).map_err(|e| e.to_string())?;
                    ensure(lib.flatten() == quad_flat(&p), || format!("{name}: octuple action {i},{j} ({side:?}) differs from formula"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{name}: {checked} products closed"))
}

/// `Δ` is multiplicative and lands in the octuple space; the assembled
/// actor has the oracle's structure and is a crossed module.
pub fn actor_is_crossed_module<F: Field>(name: &str, xm: &CrossedModule<F>) -> Outcome {
    let (nl, nd) = (xm.l.dim(), xm.d.dim());
    let actor = build_actor(xm).map_err(|e| format!("{name}: {e}"))?;
    let dq: Vec<Quad<F>> = actor.dl_space.basis().vectors().iter().map(|v| quad_from_flat(nl, nd, v)).collect();
    let oq: Vec<(Quad<F>, Quad<F>)> = actor.xmod_space.basis().vectors().iter().map(|v| oct_from_flat(nl, nd, v)).collect();
    for (i, t) in dq.iter().enumerate() {
        let image = delta(&xm.mu, t);
        ensure(all_zero(&octuple_equations(xm, &image)), || format!("{name}: Δ of basis {i} is not an octuple"))?;
        let col = actor.xmod.mu.column(i);
        ensure(actor.xmod_space.combine_oct(&col).flatten() == oct_flat(&image), || format!("{name}: Δ column {i} differs"))?;
    }
    for op in [L, R] {
        for (i, t1) in dq.iter().enumerate() {
            for (j, t2) in dq.iter().enumerate() {
                let p = quad_product(t1, t2, op, Some(&xm.mu));
                let lhs = delta(&xm.mu, &p);
                let rhs = oct_product(&delta(&xm.mu, t1), &delta(&xm.mu, t2), op);
                ensure(oct_flat(&lhs) == oct_flat(&rhs), || format!("{name}: Δ not multiplicative at {op} {i},{j}"))?;
                let coords = actor.xmod.l.product(op).get(i, j).to_vec();
                ensure(actor.dl_space.combine_quad(&coords).flatten() == quad_flat(&p), || {
                    format!("{name}: actor structure constant {op} {i},{j} differs")
                })?;
            }
        }
        for (i, o1) in oq.iter().enumerate() {
            for (j, o2) in oq.iter().enumerate() {
                let coords = actor.xmod.d.product(op).get(i, j).to_vec();
                ensure(actor.xmod_space.combine_oct(&coords).flatten() == oct_flat(&oct_product(o1, o2, op)), || {
                    format!("{name}: octuple structure constant {op} {i},{j} differs")
                })?;
            }
            for (j, t) in dq.iter().enumerate() {
                let acts = [
                    (if op == L { &actor.xmod.action.dl } else { &actor.xmod.action.dl_r }).get(i, j).to_vec(),
                    (if op == L { &actor.xmod.action.ld } else { &actor.xmod.action.ld_r }).get(j, i).to_vec(),
                ];
                for (coords, left) in acts.iter().zip([true, false]) {
                    ensure(actor.dl_space.combine_quad(coords).flatten() == quad_flat(&oct_on_quad(o1, t, op, left)), || {
                        format!("{name}: action constant {op} {i},{j} differs")
                    })?;
                }
            }
        }
    }
    let report = check_crossed_module(&actor.xmod).map_err(|e| e.to_string())?;
    ensure(report.is_empty(), || format!("{name}: actor fails {:?}", report.labels()))?;
    let failures = xmod_failures(&actor.xmod);
    ensure(failures == 0, || format!("{name}: oracle finds {failures} failed crossed-module equations in the actor"))?;
    Ok(format!("{name}: actor {}→{} is a crossed module", actor.dl_space.dim(), actor.xmod_space.dim()))
}
