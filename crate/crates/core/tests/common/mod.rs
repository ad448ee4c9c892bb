#![allow(dead_code)]

use std::path::PathBuf;

use trigonal::covers::{BranchPoint, BranchedCover, Permutation};
use trigonal::tower::{BlockSystem, Tower};

/// Permutation from 1-based cycles.
pub fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(n, &cycles).unwrap()
}

pub fn cover(n: usize, entries: &[(&str, &[&[usize]])]) -> BranchedCover {
    BranchedCover::new(
        n,
        entries
            .iter()
            .map(|(l, c)| BranchPoint::new(*l, p(n, c)))
            .collect(),
    )
    .unwrap()
}

pub fn tower(entries: &[(&str, &[&[usize]])]) -> Tower {
    Tower::validate(cover(6, entries), BlockSystem::standard()).unwrap()
}

const A: &[&[usize]] = &[&[1, 3], &[2, 4]];
const B: &[&[usize]] = &[&[3, 5], &[4, 6]];
const C: &[&[usize]] = &[&[1, 5], &[2, 6]];

/// Genus 3, flips over two different points with block 1 flipped at each.
pub fn general_g3() -> Tower {
    tower(&[
        ("b1", A),
        ("b2", A),
        ("b3", B),
        ("b4", B),
        ("b5", A),
        ("b6", A),
        ("b7", B),
        ("b8", B),
        ("b9", C),
        ("b10", C),
        ("f1", &[&[1, 2]]),
        ("f2", &[&[1, 2]]),
    ])
}

/// Genus 3, blocks 1 and 2 flipped over `s`.
pub fn special_g3() -> Tower {
    tower(&[
        ("b1", &[&[1, 4], &[2, 3]]),
        ("b2", A),
        ("b3", B),
        ("b4", B),
        ("b5", C),
        ("b6", C),
        ("b7", B),
        ("b8", B),
        ("b9", C),
        ("b10", C),
        ("s", &[&[1, 2], &[3, 4]]),
    ])
}

/// Genus 3, unramified double cover.
pub fn etale_g3() -> Tower {
    tower(&[
        ("b1", &[&[1, 4], &[2, 3]]),
        ("b2", &[&[1, 4], &[2, 3]]),
        ("b3", A),
        ("b4", A),
        ("b5", B),
        ("b6", B),
        ("b7", C),
        ("b8", C),
        ("b9", B),
        ("b10", B),
    ])
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// All permutations of `0..n` as image vectors.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for q in rec(n - 1) {
            for pos in 0..n {
                let mut v = q.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out
    }
    rec(n)
        .into_iter()
        .map(|v| Permutation::from_images(v).unwrap())
        .collect()
}
