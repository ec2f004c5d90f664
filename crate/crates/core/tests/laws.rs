mod common;

use common::{floyd, largest, oracle_rho2, oracle_spectrum};
use distpareto::graph::make_family;
use distpareto::laws::{
    bound_report, brute_force, closed_form, evaluate_bound, BoundId, Direction, Formula, TIGHT_TOL,
};
use distpareto::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every valid parameter tuple whose instance has order at most 10.
fn parameter_grid(f: Formula) -> Vec<Vec<usize>> {
    match f {
        Formula::Rho2Kab => (1..=10)
            .flat_map(|a| (a..=10 - a).map(move |b| vec![a, b]))
            .filter(|p| p[0] + p[1] >= 2)
            .collect(),
        Formula::CompleteSpectrum => (1..=10).map(|n| vec![n]).collect(),
        Formula::StarRadius => (2..=10).map(|n| vec![n]).collect(),
        Formula::Rho2TwoNonincident => (5..=10).map(|n| vec![n]).collect(),
        _ => (3..=10).map(|n| vec![n]).collect(),
    }
}

#[test]
fn closed_forms_match_brute_force_up_to_order_ten() {
    for f in Formula::ALL {
        for p in parameter_grid(f) {
            let c = closed_form(f.as_str(), &p).unwrap();
            let b = brute_force(f.as_str(), &p).unwrap();
            assert_eq!(c.values.len(), b.len(), "{f:?} {p:?}");
            for (x, y) in c.values.iter().zip(&b) {
                assert!((x - y).abs() <= 1e-9, "{f:?} {p:?}: {x} vs {y}");
            }
        }
    }
}

/// The same comparison against nalgebra on the instance graphs.
#[test]
fn closed_forms_match_the_nalgebra_oracle() {
    for f in Formula::ALL {
        for p in parameter_grid(f) {
            let g = f.instance(&p).unwrap();
            let c = closed_form(f.as_str(), &p).unwrap();
            let want = match f {
                Formula::CompleteSpectrum => oracle_spectrum(&g),
                Formula::StarRadius | Formula::KnMinusERadius => {
                    let d = floyd(&g).unwrap();
                    let all: Vec<usize> = (0..g.order()).collect();
                    vec![largest(&common::submatrix(&d, &all))]
                }
                _ => vec![oracle_rho2(&g)],
            };
            for (x, y) in c.values.iter().zip(&want) {
                assert!((x - y).abs() <= 1e-9, "{f:?} {p:?}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn catalogue_values() {
    let v = |name: &str, p: &[usize]| closed_form(name, p).unwrap().values[0];
    assert!((v("star_radius", &[4]) - 4.6457513).abs() < 1e-7);
    assert!((v("rho2_kn_minus_e", &[5]) - 3.5615528).abs() < 1e-7);
    assert!((v("rho2_kab", &[2, 3]) - 4.6457513).abs() < 1e-7);
    assert_eq!(
        closed_form("rho2_kab", &[2, 3]).unwrap().exact,
        vec!["2+sqrt(7)"]
    );
}

#[test]
fn rejects_unknown_and_out_of_range() {
    assert!(closed_form("no_such_formula", &[4]).is_err());
    assert!(closed_form("rho2_kab", &[4, 3]).is_err());
    assert!(closed_form("rho2_kab", &[0, 3]).is_err());
    assert!(closed_form("rho2_k_pendant", &[2]).is_err());
    assert!(closed_form("star_radius", &[3, 3]).is_err());
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n, 0.0f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| {
        Graph::random_connected(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn single(g: &Graph, id: BoundId) -> distpareto::laws::BoundResult {
    evaluate_bound(id, g).unwrap().remove(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn report_is_total_ordered_and_consistent(g in connected_graph(8)) {
        let report = bound_report(&g).unwrap();
        prop_assert_eq!(&report, &bound_report(&g).unwrap());
        let ids: Vec<BoundId> = report.iter().map(|r| r.bound_id).collect();
        let mut sorted = ids.clone();
        sorted.sort_by_key(|id| BoundId::ALL.iter().position(|x| x == id));
        prop_assert_eq!(&ids, &sorted);
        for id in BoundId::ALL {
            prop_assert!(ids.contains(&id));
        }
        for r in &report {
            if r.applicable {
                let (b, a, s) = (r.bound_value.unwrap(), r.actual_value.unwrap(), r.slack.unwrap());
                let want = match r.direction {
                    Direction::Lower => a - b,
                    Direction::Upper => b - a,
                };
                prop_assert_eq!(s, want);
                prop_assert_eq!(r.tight, s.abs() <= TIGHT_TOL);
            } else {
                prop_assert!(r.reason.is_some());
                prop_assert!(r.slack.is_none() && !r.tight);
            }
        }
    }

    /// Bound values recomputed from hand-written formulas and Floyd–Warshall.
    #[test]
    fn bound_values_match_independent_formulas(g in connected_graph(8)) {
        let n = g.order();
        let nf = n as f64;
        let d = floyd(&g).unwrap();
        let rho2 = oracle_rho2(&g);
        let tr: Vec<f64> = d.iter().map(|r| r.iter().sum::<u32>() as f64).collect();
        let w = tr.iter().sum::<f64>() / 2.0;
        let tmin = tr.iter().copied().fold(f64::INFINITY, f64::min);
        let complete = g.size() == n * (n - 1) / 2;

        let r = single(&g, BoundId::Rho2WienerLower);
        prop_assert!((r.bound_value.unwrap() - 2.0 * (w - tmin) / (nf - 1.0)).abs() < 1e-9);
        prop_assert!((r.actual_value.unwrap() - rho2).abs() < 1e-9);

        let r = single(&g, BoundId::Rho2NoncompleteLower);
        prop_assert_eq!(r.applicable, !complete);
        if !complete {
            let want = (nf - 2.0 + (nf * nf - 4.0 * nf + 12.0).sqrt()) / 2.0;
            prop_assert!((r.bound_value.unwrap() - want).abs() < 1e-9);
            let r = single(&g, BoundId::Rho2SimpleLower);
            prop_assert!((r.bound_value.unwrap() - (nf - 2.0 + 2.0 / (nf - 1.0))).abs() < 1e-9);
        }

        let dominating = (0..n).any(|v| g.degree(v) == n - 1);
        let r = single(&g, BoundId::Rho2DominatingUpper);
        prop_assert_eq!(r.applicable, dominating);
        if dominating {
            prop_assert!((r.bound_value.unwrap() - 2.0 * (nf - 2.0)).abs() < 1e-12);
            let r = single(&g, BoundId::Rho2DominatingLower);
            prop_assert!((r.bound_value.unwrap() - (nf - 2.0)).abs() < 1e-12);
        }

        let diam = d.iter().flatten().copied().max().unwrap();
        prop_assert_eq!(single(&g, BoundId::Rho2Diam2Upper).applicable, diam == 2);

        let r = single(&g, BoundId::Rho2TminLower);
        let dd = diam as f64;
        let x = tmin - 2.0 * dd;
        let want = (x + (x * x + 4.0 * (nf - dd - 1.0)).sqrt()) / 2.0;
        prop_assert!((r.bound_value.unwrap() - want).abs() < 1e-9);

        let r = single(&g, BoundId::CountLower);
        prop_assert_eq!(r.bound_value.unwrap(), nf + dd - 1.0);
        prop_assert_eq!(r.actual_value.unwrap(), oracle_spectrum(&g).len() as f64);

        let r = single(&g, BoundId::Rho2VsLambda2);
        let rows: Vec<Vec<f64>> = d.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let ev = common::eigenvalues(&rows);
        prop_assert!((r.bound_value.unwrap() - ev[n - 2]).abs() < 1e-9);
        prop_assert!(r.slack.unwrap() > 0.0);
    }

    #[test]
    fn rho_k_lower_holds_for_every_k(g in connected_graph(8)) {
        let rows = evaluate_bound(BoundId::RhoKLower, &g).unwrap();
        prop_assert_eq!(rows.len(), g.order());
        for (k, r) in rows.iter().enumerate() {
            prop_assert_eq!(r.index, Some(k + 1));
            prop_assert!(!r.violated(), "{:?}", r);
        }
    }
}

#[test]
fn bound_examples() {
    let fam = |name: &str, p: &[usize]| make_family(name, p).unwrap();
    let r = evaluate_bound(BoundId::RhoKLower, &fam("complete", &[4])).unwrap();
    let k2 = r.iter().find(|b| b.index == Some(2)).unwrap();
    assert_eq!(k2.bound_value, Some(2.0));
    assert!((k2.actual_value.unwrap() - 2.0).abs() < 1e-12 && k2.tight);

    let r = single(&fam("path", &[3]), BoundId::CountLower);
    assert_eq!(
        (r.bound_value, r.actual_value, r.tight),
        (Some(4.0), Some(4.0), true)
    );

    // W(S₅) = 16 and Tr(center) = 4.
    let r = single(&fam("star", &[5]), BoundId::Rho2WienerLower);
    assert!((r.bound_value.unwrap() - 6.0).abs() < 1e-12);
    assert!((r.actual_value.unwrap() - 6.0).abs() < 1e-9);
    assert!(r.tight);

    let r = single(&fam("complete", &[5]), BoundId::Rho2NoncompleteLower);
    assert!(!r.applicable);
    let r = single(
        &fam("complete_minus_edge", &[5]),
        BoundId::Rho2NoncompleteLower,
    );
    assert!(r.tight);
}

/// P₃: ρ₂ = 2 while the second-component bound gives (1+√5)/2.
#[test]
fn second_component_bound_fails_on_p3() {
    let r = single(
        &make_family("path", &[3]).unwrap(),
        BoundId::Rho2SecondComponentUpper,
    );
    assert!((r.actual_value.unwrap() - 2.0).abs() < 1e-9);
    assert!((r.bound_value.unwrap() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
    assert!(r.violated());
}
