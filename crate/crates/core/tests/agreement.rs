use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snacs::agreement::{
    average_kappa, cohen_kappa, construal_item, pair_confusions, pairwise_agreement, plurality_agreement, AgreementTable,
};
use snacs::hierarchy::BUNDLED_DEFINITION;
use snacs::{Construal, Dimension, Hierarchy};

const POOL: &[&str] = &[
    "Locus", "Goal", "Source", "Time", "StartTime", "Duration", "Topic", "Theme", "Beneficiary", "Recipient",
    "Possessor", "Gestalt", "SocialRel", "OrgRole", "Purpose", "Explanation", "Instrument", "Means",
];

/// Five annotators who usually copy a shared reference label.
fn five_annotators(seed: u64, items: usize) -> (Vec<Vec<(String, String)>>, AgreementTable) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::new();
    for _ in 0..items {
        let role = *POOL.choose(&mut rng).unwrap();
        let function = if rng.gen_bool(0.6) { role } else { *POOL.choose(&mut rng).unwrap() };
        let row: Vec<(String, String)> = (0..5)
            .map(|a| {
                let skill = 0.55 + 0.08 * a as f64;
                let r = if rng.gen_bool(skill) { role } else { POOL.choose(&mut rng).unwrap() };
                let f = if rng.gen_bool(skill) { function } else { POOL.choose(&mut rng).unwrap() };
                (r.to_string(), f.to_string())
            })
            .collect();
        raw.push(row);
    }
    let h = Hierarchy::bundled();
    let table_items = raw
        .iter()
        .enumerate()
        .map(|(i, row)| construal_item("s", vec![i + 1], row.iter().map(|(r, f)| Construal::new(r, f)).collect()))
        .collect();
    let t = AgreementTable::new((1..=5).map(|a| format!("A{a}")).collect(), table_items, &h).unwrap();
    (raw, t)
}

/// Ancestor walk over the raw definition text, independent of the library's index.
fn coarsen_oracle(label: &str, depth: usize) -> String {
    let parent: HashMap<&str, &str> = BUNDLED_DEFINITION
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| l.split_once('\t'))
        .filter(|(_, p)| !p.is_empty())
        .collect();
    let mut chain = vec![label];
    while let Some(p) = parent.get(chain.last().unwrap()) {
        chain.push(p);
    }
    chain.reverse();
    chain[(depth - 1).min(chain.len() - 1)].to_string()
}

fn slot(raw: &(String, String), dim: Dimension) -> &str {
    match dim {
        Dimension::Role => &raw.0,
        Dimension::Function => &raw.1,
    }
}

#[test]
fn pairwise_matrix_matches_brute_force_recount() {
    let (raw, t) = five_annotators(2024, 150);
    let h = Hierarchy::bundled();
    for dim in Dimension::BOTH {
        for depth in 1..=4u8 {
            let m = pairwise_agreement(&t, &h, dim, depth).unwrap();
            let mut total = 0.0;
            for a in 0..5 {
                for b in 0..5 {
                    let same = raw
                        .iter()
                        .filter(|row| coarsen_oracle(slot(&row[a], dim), depth as usize) == coarsen_oracle(slot(&row[b], dim), depth as usize))
                        .count();
                    let pct = 100.0 * same as f64 / raw.len() as f64;
                    assert!((m.matrix[a][b] - pct).abs() < 1e-9, "{dim} depth {depth} ({a},{b})");
                    if a < b {
                        total += pct;
                    }
                }
            }
            assert!((m.average - total / 10.0).abs() < 1e-9);
        }
    }
}

#[test]
fn kappa_and_plurality_match_recount() {
    let (raw, t) = five_annotators(99, 120);
    let h = Hierarchy::bundled();
    let n = raw.len() as f64;
    let mut sum = 0.0;
    for a in 0..5 {
        for b in a + 1..5 {
            let po = raw.iter().filter(|r| r[a].0 == r[b].0).count() as f64 / n;
            let pe: f64 = POOL
                .iter()
                .map(|l| {
                    let ca = raw.iter().filter(|r| r[a].0 == *l).count() as f64 / n;
                    let cb = raw.iter().filter(|r| r[b].0 == *l).count() as f64 / n;
                    ca * cb
                })
                .sum();
            let k = (po - pe) / (1.0 - pe);
            let got = cohen_kappa(&t, &h, a, b, Dimension::Role, 4).unwrap();
            assert!((got - k).abs() < 1e-12);
            assert!(got <= po + 1e-12);
            sum += k;
        }
    }
    assert!((average_kappa(&t, &h, Dimension::Role, 4).unwrap() - sum / 10.0).abs() < 1e-12);

    let plr = plurality_agreement(&t, &h, Dimension::Function, 4).unwrap();
    for a in 0..5 {
        let hits = raw
            .iter()
            .filter(|r| {
                let mine = &r[a].1;
                let votes = |l: &String| r.iter().filter(|x| &x.1 == l).count();
                let best = r.iter().map(|x| votes(&x.1)).max().unwrap();
                let mut winners: Vec<&String> = r.iter().map(|x| &x.1).filter(|l| votes(l) == best).collect();
                winners.dedup();
                winners.sort();
                winners.dedup();
                winners.len() == 1 && winners[0] == mine
            })
            .count();
        assert!((plr[a] - 100.0 * hits as f64 / n).abs() < 1e-9);
    }
}

#[test]
fn pair_confusions_total_and_symmetry() {
    let (raw, t) = five_annotators(5, 80);
    let h = Hierarchy::bundled();
    let c = pair_confusions(&t, &h, Dimension::Role, 4).unwrap();
    assert_eq!(c.total(), raw.len() * 10);
    for a in &c.labels {
        for b in &c.labels {
            assert_eq!(c.get(a, b), c.get(b, a));
        }
    }
    let diag: usize = c.labels.iter().map(|l| c.get(l, l)).sum();
    let agreeing_pairs: usize =
        raw.iter().map(|r| (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).filter(|&(a, b)| r[a].0 == r[b].0).count()).sum();
    assert_eq!(diag, agreeing_pairs);
}
