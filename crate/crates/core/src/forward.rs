//! The forward construction: from a tower `C̃ → C → P¹` to the curve `Y` of
//! sections, its involution `ι`, the tetragonal quotient `X = Y/ι` and the
//! orientation cover `O`.
//!
//! Over a point of the line, the fibre of `Y` is the set of eight transversals
//! of the block system (one sheet chosen per block). Transversal `t` encodes
//! its choices as the bits of `t`, block 0 most significant, so transversals
//! are indexed lexicographically. Consequences used below:
//!
//! - `ι` complements every choice: `ι(t) = 7 − t`;
//! - the `ι`-classes `{t, 7 − t}` are indexed by their member with block-0
//!   choice 0, so `π(t) = min(t, 7 − t)`;
//! - two transversals are equivalent for `O` when they differ in an even number
//!   of blocks, so relative to transversal 0, `ψ(t) = popcount(t) mod 2`.

use crate::covers::{
    are_isomorphic, BranchedCover, Component, CoverError, CoverPoint, NodalCoverModel, Node,
    Permutation,
};
use crate::report::CheckReport;
use crate::tower::{block_action, BlockSystem, Tower, TowerMode};
use crate::Error;

pub const SECTIONS: usize = 8;

/// One sheet per block, ordered by block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transversal {
    pub sheets: [usize; 3],
}

impl Transversal {
    pub fn from_index(index: usize, blocks: &BlockSystem) -> Self {
        Transversal {
            sheets: [0, 1, 2].map(|b| blocks.sheet(b, choice_bit(index, b))),
        }
    }

    pub fn index(&self, blocks: &BlockSystem) -> usize {
        self.sheets
            .iter()
            .enumerate()
            .map(|(b, &s)| blocks.choice_of(s) << (2 - b))
            .sum()
    }
}

fn choice_bit(index: usize, block: usize) -> usize {
    (index >> (2 - block)) & 1
}

pub fn iota_of(t: usize) -> usize {
    SECTIONS - 1 - t
}

pub fn pi_of(t: usize) -> usize {
    t.min(iota_of(t))
}

pub fn psi_of(t: usize) -> usize {
    (t.count_ones() % 2) as usize
}

/// Induced action of a block-preserving permutation on the eight transversals.
pub fn sections_action(sigma: &Permutation, blocks: &BlockSystem) -> Result<Permutation, CoverError> {
    block_action(sigma, blocks)?;
    let images = (0..SECTIONS)
        .map(|t| {
            let tr = Transversal::from_index(t, blocks);
            let mut image = [0usize; 3];
            for &s in &tr.sheets {
                let s2 = sigma.apply(s);
                image[blocks.block_of(s2)] = s2;
            }
            Transversal { sheets: image }.index(blocks)
        })
        .collect();
    Permutation::from_images(images)
}

fn quotient_action(y_sigma: &Permutation, project: fn(usize) -> usize, degree: usize) -> Permutation {
    let mut images = vec![usize::MAX; degree];
    for t in 0..SECTIONS {
        images[project(t)] = project(y_sigma.apply(t));
    }
    Permutation::from_images(images).expect("well-defined quotient action")
}

/// Nodal models of `Y`, `X` and `O` for a special tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialNodes {
    pub y: NodalCoverModel,
    pub x: NodalCoverModel,
    pub o: NodalCoverModel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForwardResult {
    /// Labels of the tower, including those where a derived cover is unbranched.
    pub labels: Vec<String>,
    pub y: BranchedCover,
    pub iota: Permutation,
    pub x: BranchedCover,
    pub o: BranchedCover,
    /// `Y` sheet to `X` sheet.
    pub pi: Vec<usize>,
    /// `Y` sheet to `O` sheet.
    pub psi: Vec<usize>,
    pub nodes: Option<SpecialNodes>,
}

impl ForwardResult {
    /// Monodromy of `Y` at a tower label (identity where `Y` is unbranched).
    pub fn y_monodromy(&self, label: &str) -> Permutation {
        self.y.monodromy_or_identity(label)
    }
}

pub fn construct(tower: &Tower) -> ForwardResult {
    let blocks = tower.blocks();
    let labels: Vec<String> = tower.cover().labels().map(String::from).collect();
    let y_actions: Vec<(String, Permutation)> = tower
        .cover()
        .branch_points()
        .iter()
        .map(|bp| {
            let a = sections_action(&bp.monodromy, blocks).expect("validated tower");
            (bp.label.clone(), a)
        })
        .collect();
    let x_actions: Vec<(String, Permutation)> = y_actions
        .iter()
        .map(|(l, a)| (l.clone(), quotient_action(a, pi_of, 4)))
        .collect();
    let o_actions: Vec<(String, Permutation)> = y_actions
        .iter()
        .map(|(l, a)| (l.clone(), quotient_action(a, psi_of, 2)))
        .collect();

    let y = BranchedCover::induced(SECTIONS, y_actions).expect("induced action of a valid tower");
    let x = BranchedCover::induced(4, x_actions).expect("quotient of a valid cover");
    let o = BranchedCover::induced(2, o_actions).expect("quotient of a valid cover");
    let iota = Permutation::from_images((0..SECTIONS).map(iota_of).collect()).unwrap();
    let mut result = ForwardResult {
        labels,
        y,
        iota,
        x,
        o,
        pi: (0..SECTIONS).map(pi_of).collect(),
        psi: (0..SECTIONS).map(psi_of).collect(),
        nodes: None,
    };
    if tower.mode() == TowerMode::Special {
        result.nodes = Some(special_nodes(tower, &result).expect("special tower"));
    }
    result
}

/// Node markers for a special tower. Over the special label the four points of
/// `Y` (the 2-cycles of its `(2,2,2,2)` monodromy) are glued in pairs: two
/// points meet when their transversals agree on the unflipped block. `X` gets
/// the single image node, `O` a node joining its two sheets.
pub fn special_nodes(tower: &Tower, result: &ForwardResult) -> Result<SpecialNodes, Error> {
    if tower.mode() != TowerMode::Special {
        return Err(Error::Precondition(format!(
            "node markers need a special tower, got {}",
            tower.mode()
        )));
    }
    let label = tower.flip_points()[0].label.clone();
    let flipped: Vec<usize> = tower.flip_points().iter().map(|p| p.cycle[0]).collect();
    let unflipped = (0..3).find(|b| !flipped.contains(b)).expect("two flipped blocks");

    let y_sigma = result.y_monodromy(&label);
    let y_points: Vec<Vec<usize>> = y_sigma.cycles();
    let mut y_nodes = Vec::new();
    for choice in 0..2 {
        let pair: Vec<&Vec<usize>> = y_points
            .iter()
            .filter(|c| choice_bit(c[0], unflipped) == choice)
            .collect();
        if pair.len() != 2 {
            return Err(Error::Invariant(format!(
                "expected two points of Y with choice {choice} on block {unflipped}, got {}",
                pair.len()
            )));
        }
        y_nodes.push(Node::new(
            CoverPoint::new(label.clone(), pair[0].clone()),
            CoverPoint::new(label.clone(), pair[1].clone()),
        ));
    }
    y_nodes.sort();

    let x_points = result.x.monodromy_or_identity(&label).cycles();
    if x_points.len() != 2 {
        return Err(Error::Invariant(format!(
            "expected two points of X over {label}, got {}",
            x_points.len()
        )));
    }
    let x_node = Node::new(
        CoverPoint::new(label.clone(), x_points[0].clone()),
        CoverPoint::new(label.clone(), x_points[1].clone()),
    );
    let o_node = Node::new(
        CoverPoint::new(label.clone(), vec![0]),
        CoverPoint::new(label.clone(), vec![1]),
    );
    let reference = |c: &BranchedCover| -> Vec<String> {
        if c.has_label(&label) {
            Vec::new()
        } else {
            vec![label.clone()]
        }
    };
    Ok(SpecialNodes {
        y: NodalCoverModel::new(result.y.clone(), reference(&result.y), y_nodes)?,
        x: NodalCoverModel::new(result.x.clone(), reference(&result.x), vec![x_node])?,
        o: NodalCoverModel::new(result.o.clone(), reference(&result.o), vec![o_node])?,
    })
}

/// Checks every structural prediction that applies to the tower's mode.
pub fn verify_predictions(tower: &Tower, r: &ForwardResult) -> CheckReport {
    let mut rep = CheckReport::new();
    let g = tower.genus();
    common_checks(tower, r, &mut rep);
    match tower.mode() {
        TowerMode::General => general_checks(tower, r, &mut rep),
        TowerMode::Special => special_checks(tower, r, &mut rep),
        TowerMode::Etale => {
            let comps = r.y.components();
            rep.check_eq("y_two_components", comps.len(), 2);
            let genera: Vec<Option<u64>> = comps.iter().map(|c| c.cover.genus().ok()).collect();
            rep.check_eq("y_component_genera", genera, vec![Some(g - 1); comps.len()]);
            match component_tetragonal(r) {
                Ok(_) => rep.check("y_components_swapped_by_iota", true, ""),
                Err(e) => rep.check("y_components_swapped_by_iota", false, e.to_string()),
            };
        }
    }
    rep
}

fn common_checks(tower: &Tower, r: &ForwardResult, rep: &mut CheckReport) {
    let fixed: Vec<usize> = (0..SECTIONS).filter(|&t| r.iota.apply(t) == t).collect();
    rep.check("iota_fixed_point_free", fixed.is_empty(), format!("fixes {fixed:?}"));

    let mut commutes = true;
    let mut cycle_rule = Vec::new();
    let mut square = Vec::new();
    let mut o_parity = Vec::new();
    for bp in tower.cover().branch_points() {
        let l = bp.label.as_str();
        let ys = r.y_monodromy(l);
        let xs = r.x.monodromy_or_identity(l);
        let os = r.o.monodromy_or_identity(l);
        if ys.then(&r.iota).unwrap() != r.iota.then(&ys).unwrap() {
            commutes = false;
        }
        if ys.num_cycles() != 2 * xs.num_cycles() {
            cycle_rule.push(l.to_string());
        }
        let ok = (0..SECTIONS).all(|t| {
            r.pi[ys.apply(t)] == xs.apply(r.pi[t]) && r.psi[ys.apply(t)] == os.apply(r.psi[t])
        });
        if !ok {
            square.push(l.to_string());
        }
        let expected = sections_action(&bp.monodromy, tower.blocks()).unwrap();
        if expected != ys {
            square.push(format!("{l} (sections action)"));
        }
        let weight = tower.flip_points().iter().filter(|p| p.label == l).count();
        if (weight % 2 == 1) == os.is_identity() {
            o_parity.push(l.to_string());
        }
    }
    rep.check("iota_commutes_with_monodromy", commutes, "");
    rep.check(
        "y_cycles_twice_x_cycles",
        cycle_rule.is_empty(),
        format!("fails at {cycle_rule:?}"),
    );
    rep.check("diagram_commutes", square.is_empty(), format!("fails at {square:?}"));
    rep.check(
        "o_branched_iff_odd_flip_weight",
        o_parity.is_empty(),
        format!("fails at {o_parity:?}"),
    );
}

fn general_checks(tower: &Tower, r: &ForwardResult, rep: &mut CheckReport) {
    let g = tower.genus();
    rep.check("y_connected", r.y.is_connected(), "");
    rep.check_eq("y_genus", r.y.genus().ok(), Some(2 * g + 1));
    rep.check_eq("y_ramification_degree", r.y.ramification_degree() as u64, 4 * g + 16);
    rep.check_eq("x_genus", r.x.genus().ok(), Some(g + 1));
    rep.check("o_connected", r.o.is_connected(), "");
    rep.check_eq("o_genus", r.o.genus().ok(), Some(0));
    let o_labels: Vec<&str> = r.o.labels().collect();
    rep.check_eq("o_branched_at_flip_labels", o_labels, tower.flip_labels());

    let double: Vec<&str> = r
        .x
        .branch_points()
        .iter()
        .filter(|bp| bp.monodromy.cycle_type() == [2, 2])
        .map(|bp| bp.label.as_str())
        .collect();
    rep.check_eq("x_two_double_simple_fibres", double, tower.flip_labels());
    let without_fixed: Vec<&str> = r
        .x
        .branch_points()
        .iter()
        .filter(|bp| bp.monodromy.cycle_type() != [2, 2] && !bp.monodromy.cycle_type().contains(&1))
        .map(|bp| bp.label.as_str())
        .collect();
    rep.check(
        "x_other_fibres_have_fixed_sheet",
        without_fixed.is_empty(),
        format!("no fixed sheet at {without_fixed:?}"),
    );

    match (r.y.genus(), r.x.genus(), tower.prym_dimension()) {
        (Ok(gy), Ok(gx), Ok(dim)) => {
            rep.check(
                "prym_dimensions_agree",
                gy - gx == dim && dim == g,
                format!("g(Y)-g(X) = {}, g(C~)-g(C) = {dim}, g = {g}", gy as i64 - gx as i64),
            );
        }
        (a, b, c) => rep.fail(
            "prym_dimensions_agree",
            format!("genus failure: {a:?} {b:?} {:?}", c.map_err(|e| e.to_string())),
        ),
    }
}

fn special_checks(tower: &Tower, r: &ForwardResult, rep: &mut CheckReport) {
    let g = tower.genus();
    let comps = r.y.components();
    rep.check_eq("y_two_components", comps.len(), 2);
    let genera: Vec<Option<u64>> = comps.iter().map(|c| c.cover.genus().ok()).collect();
    rep.check_eq("y_component_genera", genera, vec![Some(g); comps.len()]);
    let ram: Vec<u64> = comps
        .iter()
        .map(|c| c.cover.ramification_degree() as u64)
        .collect();
    rep.check_eq("y_component_ramification_degree", ram, vec![2 * g + 6; comps.len()]);
    let swapped = comps.len() == 2
        && comps[0]
            .sheets
            .iter()
            .all(|&s| comps[1].sheets.contains(&r.iota.apply(s)));
    rep.check("y_components_swapped_by_iota", swapped, "");

    let Some(nodes) = &r.nodes else {
        rep.fail("node_markers_present", "special tower without node markers");
        return;
    };
    rep.check_eq("y_node_count", nodes.y.nodes().len(), 2);
    rep.check_eq("x_node_count", nodes.x.nodes().len(), 1);
    rep.check_eq("o_node_count", nodes.o.nodes().len(), 1);
    let swaps = iota_swaps_nodes(&r.iota, nodes.y.nodes());
    rep.check("iota_swaps_y_nodes", swaps, "");
    let joins_components = comps.len() == 2
        && nodes.y.nodes().iter().all(|n| {
            let (a, b) = n.branches();
            comps[0].sheets.contains(&a.cycle[0]) != comps[0].sheets.contains(&b.cycle[0])
        });
    rep.check("y_nodes_join_components", joins_components, "");
    let pa_y = nodes.y.arithmetic_genus().ok();
    let pa_x = nodes.x.arithmetic_genus().ok();
    rep.check_eq("y_arithmetic_genus", pa_y, Some(2 * g as i64 + 1));
    rep.check_eq("x_arithmetic_genus", pa_x, Some(g as i64 + 1));
    let fixed_free = (0..SECTIONS).all(|t| r.iota.apply(t) != t);
    rep.check("wirtinger_cover", fixed_free && swaps, "");
    match (pa_y, pa_x) {
        (Some(y), Some(x)) => rep.check_eq("prym_dimensions_agree", y - x, g as i64),
        _ => rep.check("prym_dimensions_agree", false, "arithmetic genus unavailable"),
    };
    match component_tetragonal(r) {
        Ok(c) => {
            rep.check_eq("x_prime_genus", c.cover.genus().ok(), Some(g));
            let double = c
                .cover
                .branch_points()
                .iter()
                .filter(|bp| bp.monodromy.cycle_type() == [2, 2])
                .count();
            rep.check_eq("x_prime_single_double_simple_fibre", double, 1);
        }
        Err(e) => rep.fail("x_prime_genus", e.to_string()),
    }
}

/// `ι` maps the two branches of one node onto the two branches of the other.
pub fn iota_swaps_nodes(iota: &Permutation, nodes: &[Node]) -> bool {
    let [n1, n2] = nodes else {
        return false;
    };
    let (a, b) = n1.branches();
    Node::new(a.map_sheets(iota), b.map_sheets(iota)) == *n2
}

/// The component of `Y` containing transversal 0, as a degree-4 cover, when
/// `Y` splits. It is checked that `ι` maps it isomorphically onto the other
/// component, i.e. that `Y → X` restricted to it is trivial.
pub fn component_tetragonal(r: &ForwardResult) -> Result<Component, Error> {
    let comps = r.y.components();
    if comps.len() != 2 {
        return Err(Error::Precondition(format!(
            "Y has {} component(s), expected 2",
            comps.len()
        )));
    }
    let (first, second) = (&comps[0], &comps[1]);
    // sheet map component 1 -> component 2 induced by iota
    let images: Vec<usize> = first
        .sheets
        .iter()
        .map(|&s| {
            let t = r.iota.apply(s);
            second.sheets.iter().position(|&u| u == t)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invariant("iota does not swap the components of Y".into()))?;
    let rho = Permutation::from_images(images)?;
    if first.cover.conjugate_by(&rho)? != second.cover {
        return Err(Error::Invariant(
            "iota does not intertwine the monodromy of the two components".into(),
        ));
    }
    if are_isomorphic(&first.cover, &second.cover)?.is_none() {
        return Err(Error::Invariant("components of Y are not isomorphic".into()));
    }
    Ok(first.clone())
}
