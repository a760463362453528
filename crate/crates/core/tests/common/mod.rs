#![allow(dead_code)]

use std::path::PathBuf;

use mdm_active_sets::{
    construct, parse_notation, ActiveSet, ConstructionConfig, Method, Subset, WeightParams,
};

pub const INF: f64 = f64::INFINITY;

pub fn params(a: f64, c: f64, p: f64) -> WeightParams {
    mdm_active_sets::validate_params(a, c, p).expect("valid parameters")
}

pub fn build(
    p: f64,
    a: f64,
    c: f64,
    eps: f64,
    method: Method,
) -> mdm_active_sets::Result<ActiveSet> {
    construct(
        &params(a, c, p),
        eps,
        method,
        &ConstructionConfig::default(),
    )
}

/// A listing case stored as `p{p}_a{a}_{method}_eps{k}.txt` with `ε = 10^{-k}`.
#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub name: String,
    pub p: f64,
    pub a: f64,
    pub method: Method,
    pub eps: f64,
    pub members: Vec<Subset>,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut cases: Vec<GoldenCase> = std::fs::read_dir(&dir)
        .expect("golden directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .map(|path| {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            let parts: Vec<&str> = name.split('_').collect();
            assert_eq!(parts.len(), 4, "bad golden file name {name}");
            let p = match parts[0].trim_start_matches('p') {
                "inf" => INF,
                x => x.parse().unwrap(),
            };
            let a = parts[1].trim_start_matches('a').parse().unwrap();
            let method = parts[2].parse().unwrap();
            let k: i32 = parts[3].trim_start_matches("eps").parse().unwrap();
            let text = std::fs::read_to_string(&path).unwrap();
            let members = parse_notation(text.trim()).unwrap_or_else(|e| panic!("{name}: {e}"));
            GoldenCase {
                name,
                p,
                a,
                method,
                eps: 10f64.powi(-k),
                members,
            }
        })
        .collect();
    cases.sort_by(|x, y| x.name.cmp(&y.name));
    cases
}

/// Canonically sorted copy.
pub fn sorted(members: &[Subset]) -> Vec<Subset> {
    let mut v = members.to_vec();
    v.sort_by(Subset::canonical_cmp);
    v
}

/// First difference between two canonically sorted listings.
pub fn listing_diff(expected: &[Subset], actual: &[Subset]) -> Option<String> {
    let e = sorted(expected);
    let a = sorted(actual);
    if e == a {
        return None;
    }
    let missing: Vec<String> = e
        .iter()
        .filter(|u| !a.contains(u))
        .map(|u| u.to_string())
        .collect();
    let extra: Vec<String> = a
        .iter()
        .filter(|u| !e.contains(u))
        .map(|u| u.to_string())
        .collect();
    Some(format!(
        "expected {} sets, got {}; missing [{}] extra [{}]",
        e.len(),
        a.len(),
        missing.join(" "),
        extra.join(" ")
    ))
}
