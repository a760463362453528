mod common;

use common::{build, listing_diff, params, INF};
use mdm_active_sets::{
    adequate_universe, choose_s, gamma_bar, oracle_opt_set, ActiveSet, Error, Method, Subset,
    TruncatedUniverse, WeightParams,
};

fn grid() -> Vec<(f64, f64, f64, f64)> {
    let mut cases = Vec::new();
    for p in [2.0, INF] {
        for a in [2.0, 3.0, 4.0] {
            for c in [0.5, 1.0, 2.0] {
                for eps in [0.3, 0.1, 0.03] {
                    cases.push((p, a, c, eps));
                }
            }
        }
    }
    cases
}

/// Universe of every set at least as heavy as `floor`.
fn universe_above(wp: &WeightParams, floor: f64) -> TruncatedUniverse {
    let w = wp.modified_weights().unwrap();
    let growth: f64 = (1..)
        .map(|j| w.element(j))
        .take_while(|&x| x > 1.0)
        .product();
    let mut max_index = 1;
    while w.element(max_index + 1) * growth >= floor {
        max_index += 1;
    }
    let mut max_card = 0;
    while w.eval(&Subset::first_of_cardinality(max_card + 1)) >= floor {
        max_card += 1;
    }
    TruncatedUniverse::new(max_index, max_card).with_min_weight(floor)
}

fn lightest(wp: &WeightParams, set: &ActiveSet) -> f64 {
    set.members
        .iter()
        .map(|u| gamma_bar(wp, u).unwrap())
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn optimal_sets_are_heaviest_prefixes() {
    for (p, a, c, eps) in grid() {
        let wp = params(a, c, p);
        let opt = build(p, a, c, eps, Method::Opt).unwrap();
        let cut = lightest(&wp, &opt);
        let heavier = universe_above(&wp, cut)
            .enumerate(&wp.modified_weights().unwrap())
            .unwrap();
        for (u, w) in heavier {
            assert!(
                opt.contains(&u) || w <= cut,
                "p={p} a={a} c={c} eps={eps}: {u} is heavier than the cut but missing"
            );
        }
    }
}

#[test]
fn optimal_sets_match_brute_force() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (p, a, c, eps) in grid() {
        let case = format!("p={p} a={a} c={c} eps={eps}");
        let wp = params(a, c, p);
        let opt = build(p, a, c, eps, Method::Opt).unwrap();
        let s = choose_s(&wp, eps).unwrap();
        let universe = match adequate_universe(&wp, eps, s) {
            Ok(u) => u,
            Err(e @ (Error::UniverseTooLarge { .. } | Error::UniverseTooSmall { .. })) => {
                eprintln!("{case}: no certified universe ({e})");
                continue;
            }
            Err(e) => panic!("{case}: {e}"),
        };
        let oracle = oracle_opt_set(&wp, eps, &universe, s).unwrap();
        checked += 1;
        if let Some(diff) = listing_diff(&oracle.members, &opt.members) {
            let cut = lightest(&wp, &oracle);
            let w = |u: &Subset| gamma_bar(&wp, u).unwrap();
            let tied = opt
                .members
                .iter()
                .filter(|u| !oracle.contains(u))
                .chain(oracle.members.iter().filter(|u| !opt.contains(u)))
                .all(|u| w(u) == cut);
            if tied && opt.len() == oracle.len() {
                eprintln!("{case}: tie at the cut: {diff}");
            } else {
                failures.push(format!("{case}: {diff}"));
            }
        }
        let budget = wp.budget(eps).unwrap();
        if oracle.len() > 1 {
            assert!(
                oracle.residual_certificate + lightest(&wp, &oracle) > budget,
                "{case}: not minimal"
            );
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(
        checked >= 40,
        "only {checked} cases had a certified universe"
    );
}
