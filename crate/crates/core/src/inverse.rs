//! The inverse direction: from a tetragonal cover `X′ → P¹` back to a tower.
//!
//! Over a point of the line, the degree-6 cover `C̃′` has the six unordered
//! pairs of `X′`-sheets as its fibre, the complement involution `κ` swaps a
//! pair with its complementary pair, and `C′ = C̃′/κ` has the three splittings
//! of the four sheets into two pairs as its fibre. Where `X′` has a fibre of
//! type `(2,2)` or `(4)` the resulting tower is only admissible; those points
//! are recorded as node markers on the normalizations.
//!
//! Pair indexing is lexicographic: `{1,2},{1,3},{1,4},{2,3},{2,4},{3,4}`, and
//! partitions are `{12|34},{13|24},{14|23}`, so pair `p` and its complement
//! `5 − p` lie over partition `min(p, 5 − p)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covers::{
    are_isomorphic, find_isomorphism, points_over, BranchedCover, CoverError, CoverPoint,
    NodalCoverModel, Node, Permutation,
};
use crate::forward::{component_tetragonal, construct};
use crate::report::CheckReport;
use crate::tower::{BlockSystem, Tower, TowerMode, ValidationOptions};
use crate::Error;

pub const PAIRS: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

pub fn pair_index(a: usize, b: usize) -> usize {
    let key = [a.min(b), a.max(b)];
    PAIRS.iter().position(|p| *p == key).expect("distinct sheets below 4")
}

pub fn complement_pair(p: usize) -> usize {
    5 - p
}

pub fn partition_of_pair(p: usize) -> usize {
    p.min(complement_pair(p))
}

fn check_degree_four(sigma: &Permutation) -> Result<(), CoverError> {
    if sigma.degree() != 4 {
        return Err(CoverError::DegreeMismatch {
            expected: 4,
            found: sigma.degree(),
        });
    }
    Ok(())
}

/// Induced action on the six unordered pairs.
pub fn pairs_action(sigma: &Permutation) -> Result<Permutation, CoverError> {
    check_degree_four(sigma)?;
    let images = PAIRS
        .iter()
        .map(|&[a, b]| pair_index(sigma.apply(a), sigma.apply(b)))
        .collect();
    Permutation::from_images(images)
}

/// Induced action on the three pair-partitions.
pub fn partition_action(sigma: &Permutation) -> Result<Permutation, CoverError> {
    let pairs = pairs_action(sigma)?;
    let images = (0..3).map(|p| partition_of_pair(pairs.apply(p))).collect();
    Permutation::from_images(images)
}

/// The complement involution on pairs.
pub fn kappa() -> Permutation {
    Permutation::from_images((0..6).map(complement_pair).collect()).unwrap()
}

/// Local fibre types of a tetragonal cover, numbered 1 to 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FibreType {
    /// Unramified.
    Etale,
    /// `(2,1,1)`.
    Simple,
    /// `(3,1)`.
    IndexTwo,
    /// `(2,2)`: gives a node of `C′` next to a smooth point.
    DoubleSimple,
    /// `(4)`: gives a node of `C′` with one ramified branch.
    IndexThree,
}

impl FibreType {
    pub fn number(self) -> u8 {
        match self {
            FibreType::Etale => 1,
            FibreType::Simple => 2,
            FibreType::IndexTwo => 3,
            FibreType::DoubleSimple => 4,
            FibreType::IndexThree => 5,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Some(match n {
            1 => FibreType::Etale,
            2 => FibreType::Simple,
            3 => FibreType::IndexTwo,
            4 => FibreType::DoubleSimple,
            5 => FibreType::IndexThree,
            _ => return None,
        })
    }

    pub fn is_nodal(self) -> bool {
        matches!(self, FibreType::DoubleSimple | FibreType::IndexThree)
    }
}

pub fn classify_fiber(sigma: &Permutation) -> Result<FibreType, CoverError> {
    check_degree_four(sigma)?;
    Ok(match sigma.cycle_type().as_slice() {
        [1, 1, 1, 1] => FibreType::Etale,
        [2, 1, 1] => FibreType::Simple,
        [3, 1] => FibreType::IndexTwo,
        [2, 2] => FibreType::DoubleSimple,
        _ => FibreType::IndexThree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    /// No `(2,2)` or `(4)` fibre.
    M0,
    /// Exactly one `(2,2)` fibre, no `(4)`.
    M1,
    /// Exactly two `(2,2)` fibres, no `(4)`.
    M2,
    Other,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetragonalCover {
    cover: BranchedCover,
    stratum: Stratum,
}

impl TetragonalCover {
    pub fn new(cover: BranchedCover) -> Result<Self, Error> {
        if cover.degree() != 4 {
            return Err(Error::Precondition(format!(
                "tetragonal cover must have degree 4, got {}",
                cover.degree()
            )));
        }
        if !cover.is_connected() {
            return Err(Error::Precondition("tetragonal cover is disconnected".into()));
        }
        let mut double = 0;
        let mut quadruple = 0;
        for bp in cover.branch_points() {
            match classify_fiber(&bp.monodromy)? {
                FibreType::DoubleSimple => double += 1,
                FibreType::IndexThree => quadruple += 1,
                _ => {}
            }
        }
        let stratum = match (double, quadruple) {
            (0, 0) => Stratum::M0,
            (1, 0) => Stratum::M1,
            (2, 0) => Stratum::M2,
            _ => Stratum::Other,
        };
        Ok(TetragonalCover { cover, stratum })
    }

    pub fn cover(&self) -> &BranchedCover {
        &self.cover
    }

    pub fn stratum(&self) -> Stratum {
        self.stratum
    }

    pub fn genus(&self) -> u64 {
        self.cover.genus().expect("connected by construction")
    }
}

/// At a `(4)` fibre, the branch of the node of `C′` at which `C′ → P¹` ramifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type5Marker {
    pub label: String,
    pub ramified_branch: CoverPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseResult {
    pub labels: Vec<String>,
    /// `C̃′` normalization on the six pairs.
    pub c_tilde: BranchedCover,
    /// Fibres of `C̃′ → C′`: `{12,34},{13,24},{14,23}` as pair indices.
    pub blocks: BlockSystem,
    pub kappa: Permutation,
    /// `C′` normalization on the three partitions.
    pub c: BranchedCover,
    pub fibres: Vec<(String, FibreType)>,
    pub c_tilde_model: NodalCoverModel,
    pub c_model: NodalCoverModel,
    pub type5: Vec<Type5Marker>,
}

impl InverseResult {
    /// The normalization as a tower, if it satisfies the tower invariants.
    pub fn tower(&self, opts: ValidationOptions) -> Result<Tower, Error> {
        Ok(Tower::validate_with(self.c_tilde.clone(), self.blocks, opts)?)
    }
}

/// Partition points whose pair-preimage is a single cycle, with that cycle.
/// These are exactly the points where the unramified-double-cover criterion
/// (two pair cycles over every partition cycle) fails.
pub fn ramified_partition_points(sigma: &Permutation) -> Result<Vec<(Vec<usize>, Vec<usize>)>, CoverError> {
    let pairs = pairs_action(sigma)?;
    let parts = partition_action(sigma)?;
    let pair_cycles = pairs.cycles();
    let mut out = Vec::new();
    for pc in parts.cycles() {
        let above: Vec<&Vec<usize>> = pair_cycles
            .iter()
            .filter(|c| pc.contains(&partition_of_pair(c[0])))
            .collect();
        if above.len() == 1 {
            out.push((pc, above[0].clone()));
        }
    }
    Ok(out)
}

pub fn invert(x: &TetragonalCover) -> InverseResult {
    let cover = x.cover();
    let labels: Vec<String> = cover.labels().map(String::from).collect();
    let mut pair_entries = Vec::new();
    let mut part_entries = Vec::new();
    let mut fibres = Vec::new();
    for bp in cover.branch_points() {
        pair_entries.push((bp.label.clone(), pairs_action(&bp.monodromy).unwrap()));
        part_entries.push((bp.label.clone(), partition_action(&bp.monodromy).unwrap()));
        fibres.push((bp.label.clone(), classify_fiber(&bp.monodromy).unwrap()));
    }
    let c_tilde = BranchedCover::induced(6, pair_entries).expect("induced action of a valid cover");
    let c = BranchedCover::induced(3, part_entries).expect("induced action of a valid cover");

    let mut c_tilde_nodes = Vec::new();
    let mut c_nodes = Vec::new();
    let mut c_reference = Vec::new();
    let mut type5 = Vec::new();
    for (bp, (label, ty)) in cover.branch_points().iter().zip(&fibres) {
        if !ty.is_nodal() {
            continue;
        }
        let ramified = ramified_partition_points(&bp.monodromy).unwrap();
        assert_eq!(ramified.len(), 2, "nodal fibre has two ramified partition points");
        let (p0, q0) = &ramified[0];
        let (p1, q1) = &ramified[1];
        c_nodes.push(Node::new(
            CoverPoint::new(label.clone(), p0.clone()),
            CoverPoint::new(label.clone(), p1.clone()),
        ));
        c_tilde_nodes.push(Node::new(
            CoverPoint::new(label.clone(), q0.clone()),
            CoverPoint::new(label.clone(), q1.clone()),
        ));
        if !c.has_label(label) {
            c_reference.push(label.clone());
        }
        if *ty == FibreType::IndexThree {
            let branch = ramified
                .iter()
                .find(|(p, _)| p.len() == 2)
                .expect("transposition on partitions");
            type5.push(Type5Marker {
                label: label.clone(),
                ramified_branch: CoverPoint::new(label.clone(), branch.0.clone()),
            });
        }
    }
    let c_tilde_model = NodalCoverModel::new(c_tilde.clone(), Vec::new(), c_tilde_nodes)
        .expect("node rule produces valid markers");
    let c_model =
        NodalCoverModel::new(c.clone(), c_reference, c_nodes).expect("node rule produces valid markers");
    InverseResult {
        labels,
        c_tilde,
        blocks: BlockSystem::new([[0, 5], [1, 4], [2, 3]]).unwrap(),
        kappa: kappa(),
        c,
        fibres,
        c_tilde_model,
        c_model,
        type5,
    }
}

/// A special tower with its two branch points identified: `q₁ ∼ q₂` on `C̃`
/// and `p₁ ∼ p₂` on `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedTower {
    pub tower: Tower,
    pub c_tilde_model: NodalCoverModel,
    pub c_model: NodalCoverModel,
}

impl GluedTower {
    /// Forgets the nodes, returning the smooth tower.
    pub fn normalize(&self) -> Result<Tower, Error> {
        let t = Tower::validate_with(
            self.c_tilde_model.normalization().clone(),
            *self.tower.blocks(),
            ValidationOptions {
                allow_low_genus: self.tower.low_genus(),
            },
        )?;
        Ok(t)
    }
}

pub fn glue_special(t: &Tower) -> Result<GluedTower, Error> {
    if t.mode() != TowerMode::Special {
        return Err(Error::Precondition(format!(
            "gluing needs a special tower, got {}",
            t.mode()
        )));
    }
    let down = t.flip_points();
    let up = t.flip_points_upstairs();
    let label = down[0].label.clone();
    let c_reference = if t.h_cover().has_label(&label) {
        Vec::new()
    } else {
        vec![label.clone()]
    };
    let c_model = NodalCoverModel::new(
        t.h_cover().clone(),
        c_reference,
        vec![Node::new(down[0].clone(), down[1].clone())],
    )?;
    let c_tilde_model = NodalCoverModel::new(
        t.cover().clone(),
        Vec::new(),
        vec![Node::new(up[0].clone(), up[1].clone())],
    )?;
    Ok(GluedTower {
        tower: t.clone(),
        c_tilde_model,
        c_model,
    })
}

fn map_nodes(nodes: &[Node], rho: &Permutation) -> Vec<Node> {
    let mut out: Vec<Node> = nodes
        .iter()
        .map(|n| {
            let (a, b) = n.branches();
            Node::new(a.map_sheets(rho), b.map_sheets(rho))
        })
        .collect();
    out.sort();
    out
}

fn sorted(nodes: &[Node]) -> Vec<Node> {
    let mut v = nodes.to_vec();
    v.sort();
    v
}

/// Induced map on blocks of a block-compatible sheet map.
fn block_map(rho: &Permutation, from: &BlockSystem, to: &BlockSystem) -> Permutation {
    let images = (0..3).map(|b| to.block_of(rho.apply(from.sheet(b, 0)))).collect();
    Permutation::from_images(images).expect("block-compatible map")
}

/// Looks for an isomorphism of nodal towers from the inverse construction to a
/// glued tower: a conjugator of the degree-6 normalizations carrying blocks to
/// blocks and node markers to node markers on both levels.
pub fn compare_with_glued(inv: &InverseResult, glued: &GluedTower) -> CheckReport {
    let mut rep = CheckReport::new();
    let target = glued.tower.cover();
    let target_blocks = glued.tower.blocks();
    let want_up = sorted(glued.c_tilde_model.nodes());
    let want_down = sorted(glued.c_model.nodes());
    let found = find_isomorphism(&inv.c_tilde, target, |rho| {
        if inv.blocks.map_sheets(rho) != *target_blocks {
            return false;
        }
        if map_nodes(inv.c_tilde_model.nodes(), rho) != want_up {
            return false;
        }
        let beta = block_map(rho, &inv.blocks, target_blocks);
        map_nodes(inv.c_model.nodes(), &beta) == want_down
    });
    match found {
        Err(e) => rep.fail("c_tilde_isomorphic_with_nodes", e.to_string()),
        Ok(None) => rep.fail(
            "c_tilde_isomorphic_with_nodes",
            "no block- and node-compatible conjugator",
        ),
        Ok(Some(rho)) => {
            rep.check("c_tilde_isomorphic_with_nodes", true, "");
            let beta = block_map(&rho, &inv.blocks, target_blocks);
            let c_ok = inv.c.conjugate_by(&beta).ok().as_ref() == Some(glued.tower.h_cover());
            rep.check("c_isomorphic_under_block_map", c_ok, "");
        }
    }
    rep
}

/// Runs the special round trip on an explicit `X′` (normally
/// `component_tetragonal(construct(t))`).
pub fn roundtrip_special_with(t: &Tower, x_prime: &BranchedCover) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new();
    let glued = glue_special(t)?;
    match glued.normalize() {
        Ok(n) => rep.check_eq("normalization_recovers_tower", &n, t),
        Err(e) => rep.check("normalization_recovers_tower", false, e.to_string()),
    };
    rep.check_eq(
        "glued_c_arithmetic_genus",
        glued.c_model.arithmetic_genus().ok(),
        Some(t.genus() as i64 + 1),
    );
    rep.check_eq(
        "glued_c_tilde_arithmetic_genus",
        glued.c_tilde_model.arithmetic_genus().ok(),
        Some(2 * t.genus() as i64 + 1),
    );
    let x = match TetragonalCover::new(x_prime.clone()) {
        Ok(x) => x,
        Err(e) => {
            rep.fail("x_prime_tetragonal", e.to_string());
            return Ok(rep);
        }
    };
    rep.check_eq("x_prime_stratum", x.stratum(), Stratum::M1);
    rep.check_eq("x_prime_genus", x.genus(), t.genus());
    let inv = invert(&x);
    rep.extend(compare_with_glued(&inv, &glued));
    Ok(rep)
}

pub fn roundtrip_special(t: &Tower) -> Result<CheckReport, Error> {
    if t.mode() != TowerMode::Special {
        return Err(Error::Precondition(format!(
            "special round trip needs a special tower, got {}",
            t.mode()
        )));
    }
    let r = construct(t);
    let x_prime = component_tetragonal(&r)?;
    roundtrip_special_with(t, &x_prime.cover)
}

pub fn roundtrip_etale(x: &TetragonalCover) -> Result<CheckReport, Error> {
    if x.stratum() != Stratum::M0 {
        return Err(Error::Precondition(format!(
            "etale round trip needs stratum M0, got {}",
            x.stratum()
        )));
    }
    let mut rep = CheckReport::new();
    let inv = invert(x);
    rep.check_eq("no_node_markers", inv.c_tilde_model.nodes().len(), 0);
    let tower = match inv.tower(ValidationOptions {
        allow_low_genus: true,
    }) {
        Ok(t) => t,
        Err(e) => {
            rep.fail("inverse_is_tower", e.to_string());
            return Ok(rep);
        }
    };
    rep.check_eq("inverse_is_etale", tower.mode(), TowerMode::Etale);
    rep.check_eq("trigonal_genus_shift", tower.genus(), x.genus() + 1);
    let r = construct(&tower);
    let comps = r.y.components();
    rep.check_eq("y_two_components", comps.len(), 2);
    let iso: Vec<bool> = comps
        .iter()
        .map(|c| matches!(are_isomorphic(&c.cover, x.cover()), Ok(Some(_))))
        .collect();
    rep.check_eq("components_isomorphic_to_input", iso, vec![true; comps.len()]);
    Ok(rep)
}

/// On a general tower, inverting the tetragonal quotient gives a trigonal
/// curve of arithmetic genus `g + 2` with two nodes.
pub fn general_inverse_consistency(t: &Tower, x: &BranchedCover) -> CheckReport {
    let mut rep = CheckReport::new();
    let x = match TetragonalCover::new(x.clone()) {
        Ok(x) => x,
        Err(e) => {
            rep.fail("x_tetragonal", e.to_string());
            return rep;
        }
    };
    rep.check_eq("x_stratum", x.stratum(), Stratum::M2);
    let inv = invert(&x);
    rep.check_eq("inverse_c_node_count", inv.c_model.nodes().len(), 2);
    rep.check_eq(
        "inverse_c_arithmetic_genus",
        inv.c_model.arithmetic_genus().ok(),
        Some(t.genus() as i64 + 2),
    );
    rep
}

/// Points of `C′` over `label`, for callers inspecting a single fibre.
pub fn c_points_over(inv: &InverseResult, label: &str) -> Vec<CoverPoint> {
    points_over(&inv.c, label)
}
