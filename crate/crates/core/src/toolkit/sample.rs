use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::covers::{orbits, BranchPoint, BranchedCover, Permutation};
use crate::inverse::TetragonalCover;
use crate::tower::{BlockSystem, Tower, TowerMode};
use crate::Error;

pub const DEFAULT_MAX_RETRIES: u32 = 2000;

/// How the `2g + 4` branch points of the trigonal map are split between
/// simple branching (transpositions) and total branching (3-cycles).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileMix {
    pub transpositions: usize,
    pub three_cycles: usize,
}

impl ProfileMix {
    /// Transpositions only.
    pub fn simple(genus: u64) -> Self {
        ProfileMix {
            transpositions: 2 * genus as usize + 4,
            three_cycles: 0,
        }
    }

    pub fn ramification_degree(&self) -> usize {
        self.transpositions + 2 * self.three_cycles
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub genus: u64,
    pub mode: TowerMode,
    pub seed: u64,
    pub max_retries: u32,
    pub mix: ProfileMix,
}

impl SampleConfig {
    pub fn new(genus: u64, mode: TowerMode, seed: u64) -> Self {
        SampleConfig {
            genus,
            mode,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
            mix: ProfileMix::simple(genus),
        }
    }

    pub fn with_mix(mut self, mix: ProfileMix) -> Self {
        self.mix = mix;
        self
    }

    pub fn check(&self) -> Result<(), Error> {
        if self.genus < 3 {
            return Err(Error::Config(format!("genus must be at least 3, got {}", self.genus)));
        }
        if self.max_retries == 0 {
            return Err(Error::Config("max_retries must be positive".into()));
        }
        let want = 2 * self.genus as usize + 4;
        if self.mix.ramification_degree() != want {
            return Err(Error::Config(format!(
                "{} transpositions and {} 3-cycles give ramification {}, genus {} needs {want}",
                self.mix.transpositions,
                self.mix.three_cycles,
                self.mix.ramification_degree(),
                self.genus
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Transposition,
    ThreeCycle,
}

fn class(degree: usize, kind: Kind) -> Vec<Permutation> {
    let mut out = Vec::new();
    match kind {
        Kind::Transposition => {
            for a in 0..degree {
                for b in a + 1..degree {
                    out.push(Permutation::transposition(degree, a, b));
                }
            }
        }
        Kind::ThreeCycle => {
            for a in 0..degree {
                for b in 0..degree {
                    for c in 0..degree {
                        if a < b && a < c && b != c {
                            let cyc = vec![vec![a + 1, b + 1, c + 1]];
                            out.push(Permutation::from_cycles(degree, &cyc).unwrap());
                        }
                    }
                }
            }
        }
    }
    out
}

fn cycle_type_of(kind: Kind, degree: usize) -> Vec<usize> {
    let moved = match kind {
        Kind::Transposition => 2,
        Kind::ThreeCycle => 3,
    };
    let mut t = vec![moved];
    t.extend(std::iter::repeat(1).take(degree - moved));
    t
}

/// One attempt at a transitive product-one tuple with the given kinds: all
/// but the last two entries are drawn uniformly from their class, and the last
/// two are chosen uniformly among the pairs that close the product.
fn attempt_tuple(degree: usize, kinds: &[Kind], rng: &mut ChaCha8Rng) -> Option<Vec<Permutation>> {
    let m = kinds.len();
    let mut tuple = Vec::with_capacity(m);
    let mut acc = Permutation::identity(degree);
    for &k in &kinds[..m - 2] {
        let p = class(degree, k).choose(rng).unwrap().clone();
        acc = acc.then(&p).unwrap();
        tuple.push(p);
    }
    let want_last = cycle_type_of(kinds[m - 1], degree);
    let candidates: Vec<(Permutation, Permutation)> = class(degree, kinds[m - 2])
        .into_iter()
        .filter_map(|x| {
            let y = acc.then(&x).unwrap().inverse();
            (y.cycle_type() == want_last).then_some((x, y))
        })
        .collect();
    let (x, y) = candidates.choose(rng)?.clone();
    tuple.push(x);
    tuple.push(y);
    (orbits(degree, tuple.iter()).len() == 1).then_some(tuple)
}

/// A transitive product-one tuple in `S₃` with `mix` branch types in random order.
pub fn sample_h_tuple(mix: ProfileMix, rng: &mut ChaCha8Rng, max_retries: u32) -> Result<Vec<Permutation>, Error> {
    let mut kinds = vec![Kind::Transposition; mix.transpositions];
    kinds.extend(std::iter::repeat(Kind::ThreeCycle).take(mix.three_cycles));
    if kinds.len() < 2 {
        return Err(Error::Config("need at least two branch points".into()));
    }
    for _ in 0..max_retries {
        kinds.shuffle(rng);
        if let Some(t) = attempt_tuple(3, &kinds, rng) {
            return Ok(t);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries,
        reason: "no transitive degree-3 tuple".into(),
    })
}

/// Sheet `2i + c` is choice `c` in block `i`.
fn lift(sigma: &Permutation, eps: [usize; 3]) -> Permutation {
    let images = (0..6)
        .map(|s| {
            let (i, c) = (s / 2, s % 2);
            2 * sigma.apply(i) + (c ^ eps[i])
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// Flip bits with an even sum along every cycle of `sigma`, so the lift is
/// unramified over the trigonal curve.
fn unramified_flips(sigma: &Permutation, rng: &mut ChaCha8Rng) -> [usize; 3] {
    let mut eps = [0; 3];
    for cycle in sigma.cycles() {
        let mut parity = 0;
        for &i in &cycle[..cycle.len() - 1] {
            eps[i] = rng.gen_range(0..2);
            parity ^= eps[i];
        }
        eps[cycle[cycle.len() - 1]] = parity;
    }
    eps
}

fn flip_perm(flipped: &[usize]) -> Permutation {
    let mut eps = [0; 3];
    for &b in flipped {
        eps[b] = 1;
    }
    lift(&Permutation::identity(3), eps)
}

fn attempt_tower(cfg: &SampleConfig, rng: &mut ChaCha8Rng) -> Result<Option<Tower>, Error> {
    let h = sample_h_tuple(cfg.mix, rng, cfg.max_retries)?;
    let m = h.len();
    let flips: Vec<Permutation> = match cfg.mode {
        TowerMode::Etale => Vec::new(),
        TowerMode::General => (0..2).map(|_| flip_perm(&[rng.gen_range(0..3)])).collect(),
        TowerMode::Special => {
            let kept = rng.gen_range(0..3);
            let flipped: Vec<usize> = (0..3).filter(|&b| b != kept).collect();
            vec![flip_perm(&flipped)]
        }
    };
    let mut lifts: Vec<Permutation> = h[..m - 1]
        .iter()
        .map(|s| lift(s, unramified_flips(s, rng)))
        .collect();
    let head = lifts
        .iter()
        .try_fold(Permutation::identity(6), |acc, p| acc.then(p))?;
    let tail = flips
        .iter()
        .try_fold(Permutation::identity(6), |acc, p| acc.then(p))?;
    lifts.push(head.inverse().then(&tail.inverse())?);

    let mut points: Vec<BranchPoint> = lifts
        .into_iter()
        .enumerate()
        .map(|(i, p)| BranchPoint::new(format!("b{}", i + 1), p))
        .collect();
    points.extend(
        flips
            .into_iter()
            .enumerate()
            .map(|(i, p)| BranchPoint::new(format!("f{}", i + 1), p)),
    );
    let cover = BranchedCover::new(6, points)?;
    // the closing lift may ramify or C~ may be disconnected: reject
    match Tower::validate(cover, BlockSystem::standard()) {
        Ok(t) if t.mode() == cfg.mode && t.genus() == cfg.genus => Ok(Some(t)),
        _ => Ok(None),
    }
}

/// Rejection sampler for towers of the requested mode and genus.
pub fn sample_tower(cfg: &SampleConfig) -> Result<Tower, Error> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.max_retries {
        if let Some(t) = attempt_tower(cfg, &mut rng)? {
            return Ok(t);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: cfg.max_retries,
        reason: format!("no valid {} tower of genus {}", cfg.mode, cfg.genus),
    })
}

/// A connected simply branched tetragonal cover of genus `genus`, which lies in
/// stratum M0 (no `(2,2)` or `(4)` fibres).
pub fn sample_m0_tetragonal(genus: u64, seed: u64, max_retries: u32) -> Result<TetragonalCover, Error> {
    let kinds = vec![Kind::Transposition; 2 * genus as usize + 6];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_retries {
        if let Some(tuple) = attempt_tuple(4, &kinds, &mut rng) {
            let points = tuple
                .into_iter()
                .enumerate()
                .map(|(i, p)| BranchPoint::new(format!("b{}", i + 1), p))
                .collect();
            return TetragonalCover::new(BranchedCover::new(4, points)?);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries,
        reason: format!("no transitive tetragonal tuple of genus {genus}"),
    })
}
