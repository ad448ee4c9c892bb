//! JSON wire formats.
//!
//! Sheets are 1-based on the wire. A permutation is written as its nontrivial
//! cycles, each starting at its smallest sheet, ordered by that sheet. A point
//! of a cover is `[label, k]`: the `k`-th (1-based) cycle over `label` when all
//! cycles including fixed sheets are ordered by smallest sheet. Over a label
//! where the cover is unbranched that is simply sheet `k`.
//!
//! Output is pretty-printed with a trailing newline, so serializing a parsed
//! document written by this module reproduces it byte for byte.

use std::str::FromStr;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::covers::{points_over, BranchPoint, BranchedCover, CoverPoint, NodalCoverModel, Node, Permutation};
use crate::forward::{ForwardResult, SpecialNodes};
use crate::inverse::{FibreType, InverseResult, Type5Marker};
use crate::tower::{BlockSystem, Tower, ValidationOptions};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchPointJson {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<String>,
    pub monodromy: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub degree: usize,
    pub branch_points: Vec<BranchPointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerJson {
    pub degree: usize,
    pub blocks: Vec<Vec<usize>>,
    pub branch_points: Vec<BranchPointJson>,
}

/// `[label, k]`, see the module docs.
pub type PointJson = (String, usize);
pub type NodeJson = [PointJson; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForwardNodesJson {
    pub y: Vec<NodeJson>,
    pub x: Vec<NodeJson>,
    pub o: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForwardJson {
    pub labels: Vec<String>,
    pub y: CoverJson,
    pub x: CoverJson,
    pub o: CoverJson,
    pub iota: Vec<Vec<usize>>,
    pub pi: Vec<usize>,
    pub psi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_markers: Option<ForwardNodesJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreJson {
    pub label: String,
    #[serde(rename = "type")]
    pub fibre_type: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InverseNodesJson {
    pub c_tilde: Vec<NodeJson>,
    pub c: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InverseJson {
    pub labels: Vec<String>,
    pub c_tilde: CoverJson,
    pub blocks: Vec<Vec<usize>>,
    pub kappa: Vec<Vec<usize>>,
    pub c: CoverJson,
    pub fibres: Vec<FibreJson>,
    pub node_markers: InverseNodesJson,
    /// Ramified branch of the `C′` node at each `(4)` fibre.
    pub type5: Vec<PointJson>,
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T, Error> {
    Ok(serde_json::from_str(s)?)
}

fn branch_points_to_json(cover: &BranchedCover) -> Vec<BranchPointJson> {
    cover
        .branch_points()
        .iter()
        .map(|bp| BranchPointJson {
            label: bp.label.clone(),
            position: bp.position.as_ref().map(ToString::to_string),
            monodromy: bp.monodromy.to_cycles_one_based(),
        })
        .collect()
}

fn branch_points_from_json(degree: usize, points: &[BranchPointJson]) -> Result<BranchedCover, Error> {
    let points = points
        .iter()
        .map(|p| {
            let position = p
                .position
                .as_deref()
                .map(|s| {
                    BigRational::from_str(s)
                        .map_err(|e| Error::Format(format!("position {s:?} of {}: {e}", p.label)))
                })
                .transpose()?;
            Ok(BranchPoint {
                label: p.label.clone(),
                position,
                monodromy: Permutation::from_cycles(degree, &p.monodromy)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(BranchedCover::new(degree, points)?)
}

pub fn cover_to_json(cover: &BranchedCover) -> CoverJson {
    CoverJson {
        degree: cover.degree(),
        branch_points: branch_points_to_json(cover),
    }
}

pub fn cover_from_json(j: &CoverJson) -> Result<BranchedCover, Error> {
    branch_points_from_json(j.degree, &j.branch_points)
}

pub fn tower_to_json(t: &Tower) -> TowerJson {
    TowerJson {
        degree: 6,
        blocks: t.blocks().to_one_based(),
        branch_points: branch_points_to_json(t.cover()),
    }
}

/// The cover and block system, without checking the tower invariants.
pub fn tower_parts_from_json(j: &TowerJson) -> Result<(BranchedCover, BlockSystem), Error> {
    let blocks = BlockSystem::from_one_based(&j.blocks)
        .map_err(|v| Error::Format(v.to_string()))?;
    Ok((branch_points_from_json(j.degree, &j.branch_points)?, blocks))
}

pub fn tower_from_json(j: &TowerJson, opts: ValidationOptions) -> Result<Tower, Error> {
    let (cover, blocks) = tower_parts_from_json(j)?;
    Ok(Tower::validate_with(cover, blocks, opts)?)
}

fn point_to_json(cover: &BranchedCover, p: &CoverPoint) -> PointJson {
    let k = points_over(cover, &p.label)
        .iter()
        .position(|q| q == p)
        .expect("point lies on the cover");
    (p.label.clone(), k + 1)
}

fn point_from_json(cover: &BranchedCover, (label, k): &PointJson) -> Result<CoverPoint, Error> {
    let points = points_over(cover, label);
    if *k == 0 || *k > points.len() {
        return Err(Error::Format(format!("no point {k} over {label}")));
    }
    Ok(points[k - 1].clone())
}

fn nodes_to_json(model: &NodalCoverModel) -> Vec<NodeJson> {
    let cover = model.normalization();
    model
        .nodes()
        .iter()
        .map(|n| {
            let (a, b) = n.branches();
            [point_to_json(cover, a), point_to_json(cover, b)]
        })
        .collect()
}

/// Node markers over labels where `cover` is unbranched make those labels
/// reference labels.
fn nodes_from_json(cover: &BranchedCover, nodes: &[NodeJson]) -> Result<NodalCoverModel, Error> {
    let mut reference: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for [a, b] in nodes {
        for (label, _) in [a, b] {
            if !cover.has_label(label) && !reference.contains(label) {
                reference.push(label.clone());
            }
        }
        out.push(Node::new(point_from_json(cover, a)?, point_from_json(cover, b)?));
    }
    Ok(NodalCoverModel::new(cover.clone(), reference, out)?)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn zero_based(v: &[usize], what: &str) -> Result<Vec<usize>, Error> {
    v.iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| Error::Format(format!("{what} has a zero entry"))))
        .collect()
}

pub fn forward_to_json(r: &ForwardResult) -> ForwardJson {
    ForwardJson {
        labels: r.labels.clone(),
        y: cover_to_json(&r.y),
        x: cover_to_json(&r.x),
        o: cover_to_json(&r.o),
        iota: r.iota.to_cycles_one_based(),
        pi: one_based(&r.pi),
        psi: one_based(&r.psi),
        node_markers: r.nodes.as_ref().map(|n| ForwardNodesJson {
            y: nodes_to_json(&n.y),
            x: nodes_to_json(&n.x),
            o: nodes_to_json(&n.o),
        }),
    }
}

pub fn forward_from_json(j: &ForwardJson) -> Result<ForwardResult, Error> {
    let y = cover_from_json(&j.y)?;
    let x = cover_from_json(&j.x)?;
    let o = cover_from_json(&j.o)?;
    let nodes = j
        .node_markers
        .as_ref()
        .map(|n| -> Result<SpecialNodes, Error> {
            Ok(SpecialNodes {
                y: nodes_from_json(&y, &n.y)?,
                x: nodes_from_json(&x, &n.x)?,
                o: nodes_from_json(&o, &n.o)?,
            })
        })
        .transpose()?;
    Ok(ForwardResult {
        labels: j.labels.clone(),
        iota: Permutation::from_cycles(y.degree(), &j.iota)?,
        pi: zero_based(&j.pi, "pi")?,
        psi: zero_based(&j.psi, "psi")?,
        y,
        x,
        o,
        nodes,
    })
}

pub fn inverse_to_json(r: &InverseResult) -> InverseJson {
    InverseJson {
        labels: r.labels.clone(),
        c_tilde: cover_to_json(&r.c_tilde),
        blocks: r.blocks.to_one_based(),
        kappa: r.kappa.to_cycles_one_based(),
        c: cover_to_json(&r.c),
        fibres: r
            .fibres
            .iter()
            .map(|(l, t)| FibreJson {
                label: l.clone(),
                fibre_type: t.number(),
            })
            .collect(),
        node_markers: InverseNodesJson {
            c_tilde: nodes_to_json(&r.c_tilde_model),
            c: nodes_to_json(&r.c_model),
        },
        type5: r
            .type5
            .iter()
            .map(|m| point_to_json(&r.c, &m.ramified_branch))
            .collect(),
    }
}

pub fn inverse_from_json(j: &InverseJson) -> Result<InverseResult, Error> {
    let c_tilde = cover_from_json(&j.c_tilde)?;
    let c = cover_from_json(&j.c)?;
    let fibres = j
        .fibres
        .iter()
        .map(|f| {
            FibreType::from_number(f.fibre_type)
                .map(|t| (f.label.clone(), t))
                .ok_or_else(|| Error::Format(format!("unknown fibre type {}", f.fibre_type)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let type5 = j
        .type5
        .iter()
        .map(|p| {
            Ok(Type5Marker {
                label: p.0.clone(),
                ramified_branch: point_from_json(&c, p)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(InverseResult {
        labels: j.labels.clone(),
        blocks: BlockSystem::from_one_based(&j.blocks).map_err(|v| Error::Format(v.to_string()))?,
        kappa: Permutation::from_cycles(c_tilde.degree(), &j.kappa)?,
        c_tilde_model: nodes_from_json(&c_tilde, &j.node_markers.c_tilde)?,
        c_model: nodes_from_json(&c, &j.node_markers.c)?,
        c_tilde,
        c,
        fibres,
        type5,
    })
}

pub fn write_cover(cover: &BranchedCover) -> Result<String, Error> {
    to_pretty(&cover_to_json(cover))
}

pub fn read_cover(s: &str) -> Result<BranchedCover, Error> {
    cover_from_json(&from_str(s)?)
}

pub fn write_tower(t: &Tower) -> Result<String, Error> {
    to_pretty(&tower_to_json(t))
}

pub fn read_tower(s: &str, opts: ValidationOptions) -> Result<Tower, Error> {
    tower_from_json(&from_str(s)?, opts)
}

pub fn write_forward(r: &ForwardResult) -> Result<String, Error> {
    to_pretty(&forward_to_json(r))
}

pub fn read_forward(s: &str) -> Result<ForwardResult, Error> {
    forward_from_json(&from_str(s)?)
}

pub fn write_inverse(r: &InverseResult) -> Result<String, Error> {
    to_pretty(&inverse_to_json(r))
}

pub fn read_inverse(s: &str) -> Result<InverseResult, Error> {
    inverse_from_json(&from_str(s)?)
}
