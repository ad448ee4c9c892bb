//! Nodal covers, modelled as a smooth normalization plus identified point pairs.

use super::cover::{BranchedCover, CoverPoint};
use super::CoverError;

/// An unordered pair of points identified to a node. Stored with the smaller
/// point first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    first: CoverPoint,
    second: CoverPoint,
}

impl Node {
    pub fn new(a: CoverPoint, b: CoverPoint) -> Self {
        if a <= b {
            Node { first: a, second: b }
        } else {
            Node { first: b, second: a }
        }
    }

    pub fn branches(&self) -> (&CoverPoint, &CoverPoint) {
        (&self.first, &self.second)
    }

    pub fn label(&self) -> &str {
        &self.first.label
    }
}

/// A nodal curve over the line: the normalization as a [`BranchedCover`] and
/// the node pairs glued on it.
///
/// Node branches may sit over labels where the normalization is unbranched;
/// such labels must be listed in `reference_labels`, and points over them are
/// single sheets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalCoverModel {
    normalization: BranchedCover,
    reference_labels: Vec<String>,
    nodes: Vec<Node>,
}

impl NodalCoverModel {
    pub fn smooth(normalization: BranchedCover) -> Self {
        NodalCoverModel {
            normalization,
            reference_labels: Vec::new(),
            nodes: Vec::new(),
        }
    }

    pub fn new(
        normalization: BranchedCover,
        reference_labels: Vec<String>,
        nodes: Vec<Node>,
    ) -> Result<Self, CoverError> {
        for r in &reference_labels {
            if normalization.has_label(r) {
                return Err(CoverError::InvalidNode(format!(
                    "reference label {r} is a branch label"
                )));
            }
        }
        let mut used: Vec<&CoverPoint> = Vec::new();
        for node in &nodes {
            let (a, b) = node.branches();
            if a.label != b.label {
                return Err(CoverError::InvalidNode(format!(
                    "branches over different labels {} and {}",
                    a.label, b.label
                )));
            }
            if a == b {
                return Err(CoverError::InvalidNode(format!(
                    "node joins a point to itself over {}",
                    a.label
                )));
            }
            for p in [a, b] {
                check_point(&normalization, &reference_labels, p)?;
                if used.contains(&p) {
                    return Err(CoverError::InvalidNode(format!(
                        "point {:?} over {} lies on two nodes",
                        p.cycle, p.label
                    )));
                }
                used.push(p);
            }
        }
        Ok(NodalCoverModel {
            normalization,
            reference_labels,
            nodes,
        })
    }

    pub fn normalization(&self) -> &BranchedCover {
        &self.normalization
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn reference_labels(&self) -> &[String] {
        &self.reference_labels
    }

    /// `p_a = Σ g(components) + #nodes − #components + 1`.
    pub fn arithmetic_genus(&self) -> Result<i64, CoverError> {
        let comps = self.normalization.components();
        let genus_sum: i64 = comps
            .iter()
            .map(|c| c.cover.genus().map(|g| g as i64))
            .sum::<Result<i64, _>>()?;
        Ok(genus_sum + self.nodes.len() as i64 - comps.len() as i64 + 1)
    }
}

fn check_point(
    cover: &BranchedCover,
    reference_labels: &[String],
    p: &CoverPoint,
) -> Result<(), CoverError> {
    match cover.monodromy(&p.label) {
        Some(sigma) => {
            if !sigma.cycles().iter().any(|c| *c == p.cycle) {
                return Err(CoverError::InvalidNode(format!(
                    "{:?} is not a cycle over {}",
                    p.cycle, p.label
                )));
            }
        }
        None => {
            if !reference_labels.iter().any(|r| *r == p.label) {
                return Err(CoverError::UnknownLabel(p.label.clone()));
            }
            if p.cycle.len() != 1 || p.cycle[0] >= cover.degree() {
                return Err(CoverError::InvalidNode(format!(
                    "{:?} is not a sheet over unbranched label {}",
                    p.cycle, p.label
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{BranchPoint, Permutation};

    fn hyperelliptic(g: usize, prefix: &str) -> BranchedCover {
        let t = Permutation::from_cycles(2, &[vec![1, 2]]).unwrap();
        BranchedCover::new(
            2,
            (0..2 * g + 2)
                .map(|i| BranchPoint::new(format!("{prefix}{i}"), t.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn smooth_model_has_geometric_genus() {
        let m = NodalCoverModel::smooth(hyperelliptic(3, "b"));
        assert_eq!(m.arithmetic_genus().unwrap(), 3);
    }

    #[test]
    fn two_components_joined_twice() {
        for g in 1..5 {
            let a = hyperelliptic(g, "b");
            let u = a.disjoint_union(&a).unwrap();
            // points over the reference label "r": single sheets
            let nodes = vec![
                Node::new(CoverPoint::new("r", vec![0]), CoverPoint::new("r", vec![2])),
                Node::new(CoverPoint::new("r", vec![1]), CoverPoint::new("r", vec![3])),
            ];
            let m = NodalCoverModel::new(u, vec!["r".into()], nodes).unwrap();
            assert_eq!(m.arithmetic_genus().unwrap(), 2 * g as i64 + 1);
        }
    }

    #[test]
    fn one_component_one_node() {
        for g in 0..5 {
            let m = NodalCoverModel::new(
                hyperelliptic(g, "b"),
                vec!["r".into()],
                vec![Node::new(
                    CoverPoint::new("r", vec![0]),
                    CoverPoint::new("r", vec![1]),
                )],
            )
            .unwrap();
            assert_eq!(m.arithmetic_genus().unwrap(), g as i64 + 1);
        }
    }

    #[test]
    fn invalid_nodes_are_rejected() {
        let c = hyperelliptic(1, "b");
        let r = vec!["r".to_string()];
        // different labels
        assert!(NodalCoverModel::new(
            c.clone(),
            r.clone(),
            vec![Node::new(CoverPoint::new("r", vec![0]), CoverPoint::new("b0", vec![0, 1]))]
        )
        .is_err());
        // not a cycle of the monodromy
        assert!(NodalCoverModel::new(
            c.clone(),
            r.clone(),
            vec![Node::new(CoverPoint::new("b0", vec![0]), CoverPoint::new("b0", vec![1]))]
        )
        .is_err());
        // point used twice
        let c2 = c.disjoint_union(&c).unwrap();
        assert!(NodalCoverModel::new(
            c2,
            r.clone(),
            vec![
                Node::new(CoverPoint::new("r", vec![0]), CoverPoint::new("r", vec![1])),
                Node::new(CoverPoint::new("r", vec![0]), CoverPoint::new("r", vec![2])),
            ]
        )
        .is_err());
        // unknown label
        assert!(matches!(
            NodalCoverModel::new(
                c,
                vec![],
                vec![Node::new(CoverPoint::new("r", vec![0]), CoverPoint::new("r", vec![1]))]
            ),
            Err(CoverError::UnknownLabel(_))
        ));
    }
}
