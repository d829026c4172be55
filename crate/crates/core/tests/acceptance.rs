//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use hallq::coeff::CoeffRing;
use hallq::complex::{class_degree_dims, class_ue, complex_classes_up_to, complex_classes_with_ue, C2Category, ComplexClass};
use hallq::generic::canonical::{identity, mat_bar, mat_mul};
use hallq::generic::{
    canonical_basis, interpolate_structure_poly, phi_embedding_check, three_orbit_check, ComplexSide, GenericStructureTable,
    QPoly, RepSide,
};
use hallq::gf::FiniteField;
use hallq::hall::{
    associativity, filtration_number_oracle, filtration_number_rp, hall_number_c2, res_coassociativity, res_duality,
    subcomplex_tally, ue_fits, verify_qgroup_relations, verify_ringel_serre, BridgelandHall, HallStructure, RingelHall,
};
use hallq::quiver::{classes_of_dim, classes_up_to, DimVector, DynkinQuiver, RepCategory, RepIsoClass};
use hallq::Result;

const CAP: u64 = 1 << 24;
const WINDOW_UE: ([usize; 2], [usize; 2]) = ([1, 1], [1, 1]);

fn a2() -> Arc<DynkinQuiver> {
    Arc::new(DynkinQuiver::a_linear(2))
}

fn quivers() -> Vec<(&'static str, Arc<DynkinQuiver>)> {
    vec![
        ("A1", Arc::new(DynkinQuiver::a_linear(1))),
        ("A2", a2()),
        ("A2 (2->1)", Arc::new(DynkinQuiver::from_pairs(2, &[(2, 1)]).unwrap())),
        ("A3", Arc::new(DynkinQuiver::a_linear(3))),
    ]
}

fn cat(q: &Arc<DynkinQuiver>, p: u32) -> RepCategory {
    RepCategory::new(q.clone(), FiniteField::prime(p).unwrap())
}

fn ringel(q: &Arc<DynkinQuiver>, p: u32) -> RingelHall {
    RingelHall::new(cat(q, p), CAP)
}

fn bridge(q: &Arc<DynkinQuiver>, p: u32) -> BridgelandHall {
    BridgelandHall::new(C2Category::new(cat(q, p)), CAP)
}

fn window(q: &DynkinQuiver) -> Vec<ComplexClass> {
    complex_classes_up_to(q, &WINDOW_UE.0, &WINDOW_UE.1)
}

fn radicals(q: &DynkinQuiver) -> Vec<ComplexClass> {
    window(q).into_iter().filter(|c| c.is_radical()).collect()
}

type Outcome = Result<(bool, String)>;

fn c1_quantum_group() -> Outcome {
    let (mut checks, mut bad) = (0, Vec::new());
    for (name, q) in quivers() {
        for p in [2, 3, 5] {
            let rep = verify_qgroup_relations(&bridge(&q, p))?;
            checks += rep.checks.len();
            bad.extend(rep.failures().map(|c| format!("{name} q={p}: {}", c.relation)));
        }
    }
    Ok((bad.is_empty(), format!("{checks} relations over A1, A2 (both orientations), A3 at q=2,3,5; failures {bad:?}")))
}

fn c2_ringel_serre() -> Outcome {
    let (mut checks, mut bad) = (0, Vec::new());
    for (name, q) in quivers() {
        for p in [2, 3, 5] {
            let rep = verify_ringel_serre(&ringel(&q, p))?;
            checks += rep.checks.len();
            bad.extend(rep.failures().map(|c| format!("{name} q={p}: {}", c.relation)));
        }
    }
    Ok((bad.is_empty(), format!("{checks} Serre relations; failures {bad:?}")))
}

fn c3_oracles() -> Outcome {
    let q = a2();
    let (mut a_checked, mut c_checked, mut bad) = (0, 0, Vec::new());
    for p in [2, 3] {
        let c = cat(&q, p);
        let classes = classes_up_to(&q, &[2, 2]);
        for l in &classes {
            for m in &classes {
                let rest: DimVector = l.dim().iter().zip(m.dim()).map(|(a, b)| a - b).collect();
                if rest.iter().any(|&x| x < 0) {
                    continue;
                }
                for n in classes_of_dim(&q, &rest) {
                    a_checked += 1;
                    let rp = filtration_number_rp(&c, l, m, &n, CAP)?;
                    let oracle = filtration_number_oracle(&c, l, m, &n, CAP)?;
                    if rp != oracle {
                        bad.push(format!("A q={p} ({l}; {m}, {n}): {rp} vs {oracle}"));
                    }
                }
            }
        }
        let c2 = C2Category::new(cat(&q, p));
        let w = window(&q);
        for l in &w {
            let (l1, l0) = class_ue(&q, l);
            for n in &w {
                let (n1, n0) = class_ue(&q, n);
                if (0..2).any(|i| n1[i] > l1[i] || n0[i] > l0[i]) {
                    continue;
                }
                let tally = subcomplex_tally(&c2, l, &n1, &n0, CAP)?;
                let m1: Vec<usize> = (0..2).map(|i| l1[i] - n1[i]).collect();
                let m0: Vec<usize> = (0..2).map(|i| l0[i] - n0[i]).collect();
                for m in complex_classes_with_ue(&q, &m1, &m0) {
                    c_checked += 1;
                    let oracle = tally.get(&(n.clone(), m.clone())).cloned().unwrap_or_default();
                    let g = hall_number_c2(&c2, l, &m, n, CAP)?;
                    if g != oracle {
                        bad.push(format!("C2 q={p} ({l}; {m}, {n}): {g} vs {oracle}"));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{a_checked} A-side and {c_checked} C2-side triples at q=2,3; {} mismatches", bad.len())))
}

fn diff(q: &DynkinQuiver, r: &ComplexClass) -> DimVector {
    let (r1, r0) = class_degree_dims(q, r);
    r0.iter().zip(&r1).map(|(a, b)| a - b).collect()
}

fn projective_mults() -> Vec<Vec<usize>> {
    vec![vec![1, 0], vec![0, 1], vec![1, 1]]
}

fn c4_commutation() -> Outcome {
    let q = a2();
    let (mut checked, mut bad) = (0, Vec::new());
    for p in [2, 3, 5] {
        let h = bridge(&q, p);
        let r = *h.ring();
        for rad in radicals(&q) {
            let ar = h.au(&rad)?;
            let d = diff(&q, &rad);
            for e in projective_mults() {
                let pd = q.projective_sum_dim(&e);
                for (b, sign) in [(h.b_k(&e)?, 1), (h.b_k_star(&e)?, -1)] {
                    checked += 1;
                    let lhs = h.multiply(&b, &ar)?;
                    let rhs = h.multiply(&ar, &b)?.scale(&r.v_pow(sign * q.sym_euler_form(&pd, &d)));
                    if lhs != rhs {
                        bad.push(format!("q={p} r={rad} P={e:?} sign {sign}"));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} instances at q=2,3,5; failures {bad:?}")))
}

fn c5_maximal_orbit() -> Outcome {
    let q = a2();
    let (mut checked, mut bad) = (0, Vec::new());
    let mut mults = projective_mults();
    mults.push(vec![0, 0]);
    for p in [2, 3, 5] {
        let h = bridge(&q, p);
        let r = *h.ring();
        for kp in &mults {
            for kq in &mults {
                let b = h.multiply(&h.b_k(kp)?, &h.b_k_star(kq)?)?;
                let alpha: DimVector =
                    q.projective_sum_dim(kp).iter().zip(q.projective_sum_dim(kq)).map(|(a, b)| a - b).collect();
                for rad in radicals(&q) {
                    checked += 1;
                    let full = rad.direct_sum(&ComplexClass::k(kp)).direct_sum(&ComplexClass::k_star(kq));
                    let lhs = h.multiply(&b, &h.au(&rad)?)?;
                    let rhs = h.au(&full)?.scale(&r.v_pow(q.euler_form(&alpha, &diff(&q, &rad))));
                    if lhs != rhs {
                        bad.push(format!("q={p} {full}"));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} instances at q=2,3,5; failures {bad:?}")))
}

fn c6_interpolation() -> Outcome {
    let q = a2();
    let primes = [2, 3, 5, 7, 11];
    let a = GenericStructureTable::<RepSide>::build(q.clone(), vec![2, 2], &primes, CAP)?;
    let c = GenericStructureTable::<ComplexSide>::build(q.clone(), (WINDOW_UE.0.to_vec(), WINDOW_UE.1.to_vec()), &primes, CAP)?;
    let s1 = RepIsoClass::from_root(&[1, 0]);
    let s2 = RepIsoClass::from_root(&[0, 1]);
    let p1 = RepIsoClass::from_root(&[1, 1]);
    let g_p1 = a.poly(&p1, &s1, &s2)?;
    let cs2 = ComplexClass::c(&s2);
    let g_cs2 = interpolate_structure_poly::<ComplexSide>(&q, &ComplexClass::c(&s2.scale(2)), &cs2, &cs2, &primes, CAP)?;
    let (k, ks) = (ComplexClass::k(&[0, 1]), ComplexClass::k_star(&[0, 1]));
    let g_k = interpolate_structure_poly::<ComplexSide>(&q, &k.direct_sum(&ks), &k, &ks, &primes, CAP)?;
    let ok = g_p1 == QPoly::from_ints(&[1]) && g_cs2 == QPoly::from_ints(&[1, 1]) && g_k == QPoly::from_ints(&[0, 1]);
    Ok((
        ok,
        format!(
            "{} A-side and {} C2-side triples reproduce q=11; g^P1_(S1,S2) = {g_p1}, g^(C_S2^2)_(C_S2,C_S2) = {g_cs2}, g^(K+K*)_(K_P2,K*_P2) = {g_k}",
            a.rows().len(),
            c.rows().len()
        ),
    ))
}

fn c7_three_orbits() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for (name, q) in quivers().into_iter().skip(1) {
        let checks = three_orbit_check(&q, &[2, 3, 5, 7])?;
        total += checks.len();
        bad.extend(checks.into_iter().filter(|c| !c.passed).map(|c| format!("{name}: {} ({})", c.name, c.detail)));
    }
    Ok((bad.is_empty(), format!("{total} checks over A2 (both orientations), A3; failures {bad:?}")))
}

fn c8_canonical() -> Outcome {
    let t = GenericStructureTable::<RepSide>::build(a2(), vec![2, 2], &[2, 3, 5, 7, 11], CAP)?;
    let h = t.algebra();
    let mut bad = Vec::new();
    let mut sizes = Vec::new();
    for nu in [[1, 1], [2, 1], [1, 2], [2, 2]] {
        let cb = canonical_basis(&h, &nu)?;
        let inv = mat_mul(&mat_bar(&cb.bar), &cb.bar) == identity(cb.classes.len());
        if !(cb.is_bar_invariant() && cb.is_unitriangular() && inv) {
            bad.push(format!("{nu:?}"));
        }
        sizes.push(format!("{nu:?}: {} classes", cb.classes.len()));
    }
    Ok((bad.is_empty(), format!("{}; failures {bad:?}", sizes.join(", "))))
}

fn c9_phi() -> Outcome {
    let q = a2();
    let (mut classes, mut decomposable, mut bad) = (0, 0, Vec::new());
    for p in [2, 3, 5] {
        let (r, b) = (ringel(&q, p), bridge(&q, p));
        for m in classes_up_to(&q, &[2, 2]) {
            let rep = phi_embedding_check(&r, &b, &m)?;
            classes += 1;
            if rep.parts.len() > 1 {
                decomposable += 1;
            }
            bad.extend(rep.checks.iter().filter(|c| !c.passed).map(|c| format!("q={p} {m}: {}", c.name)));
        }
    }
    Ok((bad.is_empty(), format!("{classes} classes ({decomposable} with several isotypic parts) at q=2,3,5; failures {bad:?}")))
}

fn c10_duality() -> Outcome {
    let q = a2();
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in [2, 3] {
        let t = res_duality(&bridge(&q, p), &window(&q))?;
        checked += t.checked;
        bad.extend(t.failures);
    }
    Ok((bad.is_empty(), format!("{checked} triples at q=2,3; failures {bad:?}")))
}

fn c11_associativity() -> Outcome {
    let q = a2();
    let bound = (WINDOW_UE.0.to_vec(), WINDOW_UE.1.to_vec());
    let mut lines = Vec::new();
    let mut ok = true;
    let mut note = |name: &str, t: hallq::hall::Tally| {
        ok &= t.passed();
        lines.push(format!("{name} {}/{}", t.checked - t.failures.len(), t.checked));
    };
    for p in [2, 3] {
        let h = bridge(&q, p);
        let w = window(&q);
        note(&format!("res coassociativity q={p}"), res_coassociativity(&h, &w, &bound)?);
        note(&format!("C2 product q={p}"), associativity(&h, &w, |a, b, c| ue_fits(&h, &bound, &[a, b, c]))?);
        let r = ringel(&q, p);
        let cl = classes_up_to(&q, &[2, 2]);
        let fits = |a: &RepIsoClass, b: &RepIsoClass, c: &RepIsoClass| (0..2).all(|i| a.dim()[i] + b.dim()[i] + c.dim()[i] <= 2);
        note(&format!("Ringel product q={p}"), associativity(&r, &cl, fits)?);
    }
    let t = GenericStructureTable::<RepSide>::build(q.clone(), vec![2, 2], &[2, 3, 5, 7, 11], CAP)?;
    let cl = t.classes().to_vec();
    let fits = |a: &RepIsoClass, b: &RepIsoClass, c: &RepIsoClass| (0..2).all(|i| a.dim()[i] + b.dim()[i] + c.dim()[i] <= 2);
    note("generic Ringel product", associativity(&t.algebra(), &cl, fits)?);
    let h = bridge(&q, 2);
    let dh = h.dh();
    let keys: Vec<_> = [vec![0, 0], vec![1, 0], vec![0, -1]]
        .into_iter()
        .flat_map(|a| radicals(&q).into_iter().map(move |r| (a.clone(), r)))
        .collect();
    let dh_fits = |a: &(DimVector, ComplexClass), b: &(DimVector, ComplexClass), c: &(DimVector, ComplexClass)| {
        ue_fits(&h, &bound, &[&a.1, &b.1, &c.1])
    };
    note("reduced DH product q=2", associativity(&dh, &keys, dh_fits)?);
    Ok((ok, lines.join("; ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("quantum-group relations in the reduced Drinfeld double", c1_quantum_group),
        ("quantum Serre relations of the u_{S_i}", c2_ringel_serre),
        ("oracle equivalence on both sides", c3_oracles),
        ("commutation exponents of b_{K_P} and b_{K_Q*}", c4_commutation),
        ("maximal-orbit products", c5_maximal_orbit),
        ("interpolation with a held-out prime", c6_interpolation),
        ("three-orbit example and golden matrices", c7_three_orbits),
        ("canonical basis properties", c8_canonical),
        ("embedding coefficients of M -> C_M", c9_phi),
        ("res coefficients versus twisted Hall numbers", c10_duality),
        ("coassociativity and associativity", c11_associativity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!("[{}] {:>2}. {name} ({:.2?}): {detail}", if ok { "PASS" } else { "FAIL" }, i + 1, t.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
