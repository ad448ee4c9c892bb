mod common;

use common::{cover, etale_g3, general_g3, p, special_g3};
use trigonal::covers::CoverPoint;
use trigonal::toolkit::{sample_tower, SampleConfig};
use trigonal::tower::{
    block_action, f_ramification_points, flip_weight, BlockSystem, Tower, TowerMode,
    TowerViolation, ValidationOptions,
};

fn codes(entries: &[(&str, &[&[usize]])]) -> Vec<&'static str> {
    match Tower::validate(cover(6, entries), BlockSystem::standard()) {
        Ok(_) => Vec::new(),
        Err(e) => e.0.iter().map(TowerViolation::code).collect(),
    }
}

#[test]
fn block_action_examples() {
    let b = BlockSystem::standard();
    assert_eq!(block_action(&p(6, &[&[1, 3], &[2, 4]]), &b).unwrap(), p(3, &[&[1, 2]]));
    assert!(block_action(&p(6, &[&[1, 2]]), &b).unwrap().is_identity());
    assert_eq!(block_action(&p(6, &[&[1, 3, 5], &[2, 4, 6]]), &b).unwrap(), p(3, &[&[1, 2, 3]]));
    assert!(block_action(&p(6, &[&[1, 3]]), &b).is_err());
    // other block systems are honoured
    let b2 = BlockSystem::from_one_based(&[vec![1, 4], vec![2, 5], vec![3, 6]]).unwrap();
    assert_eq!(block_action(&p(6, &[&[1, 2], &[4, 5]]), &b2).unwrap(), p(3, &[&[1, 2]]));
    assert_eq!(flip_weight(&p(6, &[&[1, 4], &[2, 5]]), &b2), 2);
}

#[test]
fn f_ramification_examples() {
    let b = BlockSystem::standard();
    let c = cover(6, &[("a", &[&[1, 2]]), ("b", &[&[1, 2]])]);
    let pts = f_ramification_points(&c, &b).unwrap();
    assert_eq!(pts, vec![CoverPoint::new("a", vec![0]), CoverPoint::new("b", vec![0])]);

    // block transposition lifted as two 2-cycles: f is étale there
    let c = cover(6, &[("a", &[&[1, 3], &[2, 4]]), ("b", &[&[1, 3], &[2, 4]])]);
    assert!(f_ramification_points(&c, &b).unwrap().is_empty());
    // lifted as a 4-cycle: ramified over the moved block pair
    let c = cover(6, &[("a", &[&[1, 3, 2, 4]]), ("b", &[&[1, 4, 2, 3]])]);
    let pts = f_ramification_points(&c, &b).unwrap();
    assert_eq!(pts.len(), 2);
    assert_eq!(pts[0].cycle, vec![0, 1]);

    let c = cover(6, &[("s", &[&[1, 2], &[3, 4]]), ("t", &[&[1, 2], &[3, 4]])]);
    let pts = f_ramification_points(&c, &b).unwrap();
    assert_eq!(pts.iter().filter(|q| q.label == "s").count(), 2);
}

#[test]
fn modes_of_the_reference_towers() {
    let g = general_g3();
    assert_eq!(g.mode(), TowerMode::General);
    assert_eq!(g.genus(), 3);
    assert_eq!(g.flip_labels(), vec!["f1", "f2"]);
    assert_eq!(g.genus_c_tilde().unwrap(), 6);

    let s = special_g3();
    assert_eq!(s.mode(), TowerMode::Special);
    assert_eq!(s.flip_labels(), vec!["s"]);
    let blocks: Vec<Vec<usize>> = s.flip_points().iter().map(|q| q.cycle.clone()).collect();
    assert_eq!(blocks, vec![vec![0], vec![1]]);
    assert_eq!(s.genus_c_tilde().unwrap(), 6);
    assert_eq!(s.flip_points_upstairs()[0].cycle, vec![0, 1]);

    let e = etale_g3();
    assert_eq!(e.mode(), TowerMode::Etale);
    assert!(e.flip_points().is_empty());
    assert_eq!(e.genus_c_tilde().unwrap(), 5);
    assert_eq!(e.prym_dimension().unwrap(), 2);
}

#[test]
fn trigonal_quotient_has_ramification_2g_plus_4() {
    for t in [general_g3(), special_g3(), etale_g3()] {
        assert_eq!(t.h_cover().ramification_degree() as u64, 2 * t.genus() + 4);
    }
}

#[test]
fn violations_are_all_reported() {
    // C disconnected and C~ disconnected: only block 1 moves
    assert_eq!(
        codes(&[("a", &[&[1, 2]]), ("b", &[&[1, 2]])]),
        vec!["c_disconnected", "c_tilde_disconnected"]
    );
    // block system violated
    assert_eq!(codes(&[("a", &[&[1, 3]]), ("b", &[&[1, 3]])]), vec!["blocks_not_preserved", "blocks_not_preserved"]);
    // flip weight three, and too many flip points as a consequence
    let w3: &[&[usize]] = &[&[1, 2], &[3, 4], &[5, 6]];
    let a: &[&[usize]] = &[&[1, 3], &[2, 4]];
    let b: &[&[usize]] = &[&[3, 5], &[4, 6]];
    let mut entries: Vec<(&str, &[&[usize]])> = vec![("w", w3), ("v", w3)];
    let names = ["b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9", "b10"];
    for (i, n) in names.iter().enumerate() {
        entries.push((n, if i % 4 < 2 { a } else { b }));
    }
    let got = codes(&entries);
    assert!(got.contains(&"flip_weight_three"));
    assert!(got.contains(&"flip_count"));
}

#[test]
fn flip_over_a_branch_point_is_rejected() {
    // a 4-cycle over a block transposition ramifies f over a branch point of h
    let a: &[&[usize]] = &[&[1, 3], &[2, 4]];
    let b: &[&[usize]] = &[&[3, 5], &[4, 6]];
    let mut entries: Vec<(&str, &[&[usize]])> = vec![("x", &[&[1, 3, 2, 4]]), ("y", &[&[1, 4, 2, 3]])];
    let names = ["b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"];
    for (i, n) in names.iter().enumerate() {
        entries.push((n, if i % 4 < 2 { a } else { b }));
    }
    let got = codes(&entries);
    assert_eq!(got, vec!["flip_over_branch_point", "flip_over_branch_point"]);
}

#[test]
fn low_genus_needs_opt_in() {
    // genus 1: six transpositions on blocks, two weight-1 flips
    let a: &[&[usize]] = &[&[1, 3], &[2, 4]];
    let b: &[&[usize]] = &[&[3, 5], &[4, 6]];
    let c: &[&[usize]] = &[&[1, 5], &[2, 6]];
    let f: &[&[usize]] = &[&[1, 2]];
    let entries: Vec<(&str, &[&[usize]])> =
        vec![("b1", a), ("b2", a), ("b3", b), ("b4", b), ("b5", c), ("b6", c), ("f1", f), ("f2", f)];
    assert_eq!(codes(&entries), vec!["genus_too_low"]);
    let t = Tower::validate_with(
        cover(6, &entries),
        BlockSystem::standard(),
        ValidationOptions { allow_low_genus: true },
    )
    .unwrap();
    assert!(t.low_genus());
    assert_eq!(t.genus(), 1);
}

#[test]
fn sampled_towers_satisfy_the_genus_bookkeeping() {
    for g in 3..=8 {
        for (mode, dim) in [(TowerMode::General, g), (TowerMode::Special, g), (TowerMode::Etale, g - 1)] {
            let t = sample_tower(&SampleConfig::new(g, mode, 7 * g)).unwrap();
            assert_eq!(t.prym_dimension().unwrap(), dim, "{mode} g={g}");
            assert_eq!(t.h_cover().ramification_degree() as u64, 2 * g + 4);
            // every label is an h-branch label or a flip label of weight 1 or 2
            for bp in t.cover().branch_points() {
                let act = block_action(&bp.monodromy, t.blocks()).unwrap();
                let w = flip_weight(&bp.monodromy, t.blocks());
                assert!(!act.is_identity() || w == 1 || w == 2);
            }
        }
    }
}
