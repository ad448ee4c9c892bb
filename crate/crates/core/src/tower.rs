//! Towers `C̃ → C → P¹`: a double cover of a trigonal curve, given as a
//! degree-6 cover of the line whose monodromy preserves three blocks of two
//! sheets. The blocks are the fibres of `C̃ → C`; the induced action on blocks
//! is the monodromy of the trigonal map `C → P¹`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::covers::{BranchedCover, CoverError, CoverPoint, Permutation};
use crate::Error;

/// Three disjoint pairs of sheets covering `0..6`, normalised so that each
/// pair is sorted and the pairs are ordered by smallest element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    blocks: [[usize; 2]; 3],
}

impl BlockSystem {
    /// `{1,2},{3,4},{5,6}` in 1-based notation.
    pub fn standard() -> Self {
        BlockSystem {
            blocks: [[0, 1], [2, 3], [4, 5]],
        }
    }

    /// Builds a block system from 0-based pairs.
    pub fn new(pairs: [[usize; 2]; 3]) -> Result<Self, TowerViolation> {
        let mut seen = [false; 6];
        for pair in &pairs {
            for &s in pair {
                if s >= 6 || seen[s] {
                    return Err(TowerViolation::InvalidBlocks(format!("{pairs:?}")));
                }
                seen[s] = true;
            }
        }
        let mut blocks = pairs.map(|[a, b]| [a.min(b), a.max(b)]);
        blocks.sort_unstable();
        Ok(BlockSystem { blocks })
    }

    pub fn from_one_based(pairs: &[Vec<usize>]) -> Result<Self, TowerViolation> {
        let bad = || TowerViolation::InvalidBlocks(format!("{pairs:?}"));
        if pairs.len() != 3 || pairs.iter().any(|p| p.len() != 2 || p.contains(&0)) {
            return Err(bad());
        }
        Self::new([0, 1, 2].map(|i| [pairs[i][0] - 1, pairs[i][1] - 1]))
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| vec![b[0] + 1, b[1] + 1]).collect()
    }

    pub fn blocks(&self) -> &[[usize; 2]; 3] {
        &self.blocks
    }

    pub fn block_of(&self, sheet: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&sheet))
            .expect("sheet out of range")
    }

    /// Position (0 or 1) of a sheet inside its block.
    pub fn choice_of(&self, sheet: usize) -> usize {
        usize::from(self.blocks[self.block_of(sheet)][1] == sheet)
    }

    pub fn sheet(&self, block: usize, choice: usize) -> usize {
        self.blocks[block][choice]
    }

    /// Image of a block system under a sheet relabelling.
    pub fn map_sheets(&self, rho: &Permutation) -> BlockSystem {
        BlockSystem::new(self.blocks.map(|[a, b]| [rho.apply(a), rho.apply(b)]))
            .expect("bijection maps a partition to a partition")
    }
}

/// Induced permutation of the three blocks.
pub fn block_action(p: &Permutation, blocks: &BlockSystem) -> Result<Permutation, CoverError> {
    if p.degree() != 6 {
        return Err(CoverError::DegreeMismatch {
            expected: 6,
            found: p.degree(),
        });
    }
    let mut images = [0usize; 3];
    for (i, [a, b]) in blocks.blocks().iter().enumerate() {
        let (ja, jb) = (blocks.block_of(p.apply(*a)), blocks.block_of(p.apply(*b)));
        if ja != jb {
            return Err(CoverError::NotAPermutation(format!(
                "{p} does not preserve blocks {:?}",
                blocks.to_one_based()
            )));
        }
        images[i] = ja;
    }
    Permutation::from_images(images.to_vec())
}

/// Number of blocks fixed by the block action whose two sheets are swapped.
pub fn flip_weight(p: &Permutation, blocks: &BlockSystem) -> usize {
    blocks
        .blocks()
        .iter()
        .filter(|[a, b]| p.apply(*a) == *b)
        .count()
}

/// Points of `C` over which `C̃ → C` ramifies: for each cycle of the block
/// action of length `ℓ`, the `2ℓ` sheets above it either form one `2ℓ`-cycle
/// (ramified, included) or two `ℓ`-cycles (excluded).
pub fn f_ramification_points(
    cover: &BranchedCover,
    blocks: &BlockSystem,
) -> Result<Vec<CoverPoint>, CoverError> {
    let mut out = Vec::new();
    for bp in cover.branch_points() {
        let action = block_action(&bp.monodromy, blocks)?;
        for cycle in action.cycles() {
            let start = blocks.sheet(cycle[0], 0);
            let upstairs = sheet_cycle_through(&bp.monodromy, start);
            if upstairs.len() == 2 * cycle.len() {
                out.push(CoverPoint::new(bp.label.clone(), cycle));
            }
        }
    }
    Ok(out)
}

fn sheet_cycle_through(p: &Permutation, start: usize) -> Vec<usize> {
    let mut cycle = vec![start];
    let mut s = p.apply(start);
    while s != start {
        cycle.push(s);
        s = p.apply(s);
    }
    cycle
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerMode {
    /// `C̃ → C` unramified.
    Etale,
    /// Two branch points in distinct fibres of `C → P¹`.
    General,
    /// Both branch points in one fibre.
    Special,
}

impl fmt::Display for TowerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerMode::Etale => "etale",
            TowerMode::General => "general",
            TowerMode::Special => "special",
        })
    }
}

impl std::str::FromStr for TowerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "etale" => Ok(TowerMode::Etale),
            "general" => Ok(TowerMode::General),
            "special" => Ok(TowerMode::Special),
            other => Err(format!("unknown mode {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TowerViolation {
    #[error("tower cover has degree {0}, expected 6")]
    NotDegreeSix(usize),
    #[error("invalid block system {0}")]
    InvalidBlocks(String),
    #[error("monodromy at {label} does not preserve the blocks")]
    BlocksNotPreserved { label: String },
    #[error("C disconnected")]
    CDisconnected,
    #[error("C~ disconnected")]
    CTildeDisconnected,
    #[error("double cover ramifies over {label}, where the trigonal map is branched")]
    FlipOverBranchPoint { label: String },
    #[error("double cover ramifies at all three points over {label}")]
    FlipWeightThree { label: String },
    #[error("double cover has {0} ramification points, expected 0 or 2")]
    FlipCount(usize),
    #[error("genus of C is {0}, below the minimum 3")]
    GenusTooLow(u64),
}

impl TowerViolation {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            TowerViolation::NotDegreeSix(_) => "not_degree_six",
            TowerViolation::InvalidBlocks(_) => "invalid_blocks",
            TowerViolation::BlocksNotPreserved { .. } => "blocks_not_preserved",
            TowerViolation::CDisconnected => "c_disconnected",
            TowerViolation::CTildeDisconnected => "c_tilde_disconnected",
            TowerViolation::FlipOverBranchPoint { .. } => "flip_over_branch_point",
            TowerViolation::FlipWeightThree { .. } => "flip_weight_three",
            TowerViolation::FlipCount(_) => "flip_count",
            TowerViolation::GenusTooLow(_) => "genus_too_low",
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            TowerViolation::BlocksNotPreserved { label }
            | TowerViolation::FlipOverBranchPoint { label }
            | TowerViolation::FlipWeightThree { label } => Some(label),
            _ => None,
        }
    }
}

/// Every invariant a tower failed, in check order.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid tower: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct TowerError(pub Vec<TowerViolation>);

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidationOptions {
    /// Accept `g < 3`; the resulting tower carries [`Tower::low_genus`].
    pub allow_low_genus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    cover: BranchedCover,
    blocks: BlockSystem,
    h_cover: BranchedCover,
    genus: u64,
    flip_points: Vec<CoverPoint>,
    mode: TowerMode,
    low_genus: bool,
}

impl Tower {
    pub fn validate(cover: BranchedCover, blocks: BlockSystem) -> Result<Tower, TowerError> {
        Self::validate_with(cover, blocks, ValidationOptions::default())
    }

    pub fn validate_with(
        cover: BranchedCover,
        blocks: BlockSystem,
        opts: ValidationOptions,
    ) -> Result<Tower, TowerError> {
        if cover.degree() != 6 {
            return Err(TowerError(vec![TowerViolation::NotDegreeSix(cover.degree())]));
        }
        let mut violations = Vec::new();
        let mut actions = Vec::new();
        for bp in cover.branch_points() {
            match block_action(&bp.monodromy, &blocks) {
                Ok(a) => actions.push((bp.label.clone(), a)),
                Err(_) => violations.push(TowerViolation::BlocksNotPreserved {
                    label: bp.label.clone(),
                }),
            }
        }
        if !violations.is_empty() {
            return Err(TowerError(violations));
        }
        let h_cover = BranchedCover::induced(3, actions.iter().cloned())
            .expect("block action of a valid cover is a valid cover");

        let c_connected = h_cover.is_connected();
        if !c_connected {
            violations.push(TowerViolation::CDisconnected);
        }
        if !cover.is_connected() {
            violations.push(TowerViolation::CTildeDisconnected);
        }

        let flip_points = f_ramification_points(&cover, &blocks).expect("blocks checked");
        for (bp, (_, action)) in cover.branch_points().iter().zip(&actions) {
            if action.is_identity() {
                if flip_weight(&bp.monodromy, &blocks) == 3 {
                    violations.push(TowerViolation::FlipWeightThree {
                        label: bp.label.clone(),
                    });
                }
            } else if flip_points.iter().any(|p| p.label == bp.label) {
                violations.push(TowerViolation::FlipOverBranchPoint {
                    label: bp.label.clone(),
                });
            }
        }
        if flip_points.len() != 0 && flip_points.len() != 2 {
            violations.push(TowerViolation::FlipCount(flip_points.len()));
        }

        let mut genus = 0;
        let mut low_genus = false;
        if c_connected {
            genus = h_cover.genus().expect("connected trigonal cover");
            if genus < 3 {
                if opts.allow_low_genus {
                    low_genus = true;
                } else {
                    violations.push(TowerViolation::GenusTooLow(genus));
                }
            }
        }
        if !violations.is_empty() {
            return Err(TowerError(violations));
        }

        let mode = match flip_points.as_slice() {
            [] => TowerMode::Etale,
            [a, b] if a.label == b.label => TowerMode::Special,
            _ => TowerMode::General,
        };
        Ok(Tower {
            cover,
            blocks,
            h_cover,
            genus,
            flip_points,
            mode,
            low_genus,
        })
    }

    /// The degree-6 cover `C̃ → P¹`.
    pub fn cover(&self) -> &BranchedCover {
        &self.cover
    }

    pub fn blocks(&self) -> &BlockSystem {
        &self.blocks
    }

    /// The degree-3 quotient `C → P¹`.
    pub fn h_cover(&self) -> &BranchedCover {
        &self.h_cover
    }

    /// Genus of `C`.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn mode(&self) -> TowerMode {
        self.mode
    }

    /// Set when validation accepted `g < 3` on request.
    pub fn low_genus(&self) -> bool {
        self.low_genus
    }

    /// Branch points of `C̃ → C`, as points of `C`.
    pub fn flip_points(&self) -> &[CoverPoint] {
        &self.flip_points
    }

    /// Ramification points of `C̃ → C`, as points of `C̃` (the `2ℓ`-cycles).
    pub fn flip_points_upstairs(&self) -> Vec<CoverPoint> {
        self.flip_points
            .iter()
            .map(|p| {
                let sigma = self.cover.monodromy(&p.label).expect("flip label present");
                let start = self.blocks.sheet(p.cycle[0], 0);
                CoverPoint::new(p.label.clone(), sheet_cycle_through(sigma, start))
            })
            .collect()
    }

    /// Labels carrying a branch point of `C̃ → C`, deduplicated, in label order.
    pub fn flip_labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for l in self.cover.labels() {
            if self.flip_points.iter().any(|p| p.label == l) {
                out.push(l);
            }
        }
        out
    }

    /// Genus of `C̃`, checked against `2g` (ramified) or `2g − 1` (étale).
    pub fn genus_c_tilde(&self) -> Result<u64, Error> {
        let g_tilde = self.cover.genus()?;
        let expected = match self.mode {
            TowerMode::Etale => 2 * self.genus - 1,
            _ => 2 * self.genus,
        };
        if g_tilde != expected {
            return Err(Error::Invariant(format!(
                "genus of C~ is {g_tilde}, expected {expected} for a {} tower of genus {}",
                self.mode, self.genus
            )));
        }
        Ok(g_tilde)
    }

    /// `dim P(f) = g(C̃) − g(C)`.
    pub fn prym_dimension(&self) -> Result<u64, Error> {
        Ok(self.genus_c_tilde()? - self.genus)
    }
}
