mod common;

use std::collections::BTreeSet;

use hecke_core::graph::graph_phi;
use hecke_core::ramified::*;
use hecke_core::{Field, FqElem};

fn all_gammas(f: &Field) -> Vec<GL2Fq> {
    let q = f.q() as u32;
    let mut out = Vec::new();
    for i in 0..q.pow(4) {
        let e = [i % q, i / q % q, i / q / q % q, i / q / q / q].map(FqElem);
        if let Ok(g) = GL2Fq::new(f, e[0], e[1], e[2], e[3]) {
            out.push(g);
        }
    }
    out
}

#[test]
fn action_is_a_bijection() {
    for q in [2, 3, 4, 5] {
        let f = Field::with_q(q).unwrap();
        let points: BTreeSet<_> = f.projective_line().into_iter().collect();
        for g in all_gammas(&f).iter().step_by(7) {
            let image: BTreeSet<_> = points.iter().map(|&w| proj_action(w, g)).collect();
            assert_eq!(image, points);
        }
    }
}

#[test]
fn action_is_a_right_action() {
    let f = Field::with_q(3).unwrap();
    let gs = all_gammas(&f);
    for a in gs.iter().step_by(5) {
        for b in gs.iter().step_by(11) {
            for w in f.projective_line() {
                assert_eq!(proj_action(proj_action(w, a), b), proj_action(w, &a.mul(b)));
            }
        }
    }
}

#[test]
fn projection_and_symmetry_for_every_gamma() {
    for q in [2, 3] {
        let f = Field::with_q(q).unwrap();
        let unramified = graph_phi(&f, 1, 5).unwrap();
        for g in all_gammas(&f) {
            let rg = graph_ramified(&g, 5).unwrap();
            assert_eq!(project_to_unramified(&rg).unwrap(), unramified);
            for v in rg.vertices() {
                assert_eq!(rg.out_edges(v).map(|(_, m)| m).sum::<u64>(), q + 1);
            }
            let report = verify_ram_symmetry(&rg);
            assert!(report.passed(), "{}", g.format());
        }
    }
}
