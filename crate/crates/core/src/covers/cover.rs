use num_rational::BigRational;

use super::perm::{orbits, Permutation};
use super::CoverError;

/// One labelled branch point with its local monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub label: String,
    /// Optional position on the line; never used by any construction.
    pub position: Option<BigRational>,
    pub monodromy: Permutation,
}

impl BranchPoint {
    pub fn new(label: impl Into<String>, monodromy: Permutation) -> Self {
        BranchPoint {
            label: label.into(),
            position: None,
            monodromy,
        }
    }
}

/// A (possibly disconnected) branched cover of the line, given by an ordered
/// monodromy tuple satisfying the product-one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedCover {
    degree: usize,
    points: Vec<BranchPoint>,
}

/// A connected component of a cover together with the sheets it occupies in
/// the parent (`sheets[i]` is the parent sheet of component sheet `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cover: BranchedCover,
    pub sheets: Vec<usize>,
}

impl BranchedCover {
    pub fn new(degree: usize, points: Vec<BranchPoint>) -> Result<Self, CoverError> {
        if degree == 0 {
            return Err(CoverError::ZeroDegree);
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| q.label == p.label) {
                return Err(CoverError::DuplicateLabel(p.label.clone()));
            }
            if p.monodromy.degree() != degree {
                return Err(CoverError::DegreeMismatch {
                    expected: degree,
                    found: p.monodromy.degree(),
                });
            }
            if p.monodromy.is_identity() {
                return Err(CoverError::IdentityMonodromy(p.label.clone()));
            }
        }
        let cover = BranchedCover { degree, points };
        if !cover.product().is_identity() {
            return Err(CoverError::ProductNotIdentity);
        }
        Ok(cover)
    }

    /// Builds a cover from an induced action, silently dropping labels whose
    /// monodromy is the identity.
    pub fn induced<I, S>(degree: usize, entries: I) -> Result<Self, CoverError>
    where
        I: IntoIterator<Item = (S, Permutation)>,
        S: Into<String>,
    {
        let points = entries
            .into_iter()
            .filter(|(_, p)| !p.is_identity())
            .map(|(l, p)| BranchPoint::new(l, p))
            .collect();
        Self::new(degree, points)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.points
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.points.iter().map(|p| p.label.as_str())
    }

    pub fn monodromy(&self, label: &str) -> Option<&Permutation> {
        self.points
            .iter()
            .find(|p| p.label == label)
            .map(|p| &p.monodromy)
    }

    /// Monodromy at `label`, or the identity when the cover is unbranched there.
    pub fn monodromy_or_identity(&self, label: &str) -> Permutation {
        self.monodromy(label)
            .cloned()
            .unwrap_or_else(|| Permutation::identity(self.degree))
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.monodromy(label).is_some()
    }

    fn product(&self) -> Permutation {
        self.points
            .iter()
            .fold(Permutation::identity(self.degree), |acc, p| {
                acc.then(&p.monodromy).expect("degrees checked")
            })
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(self.degree, self.points.iter().map(|p| &p.monodromy))
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Total ramification degree `Σ_b (n − c_b)`.
    pub fn ramification_degree(&self) -> usize {
        self.points
            .iter()
            .map(|p| self.degree - p.monodromy.num_cycles())
            .sum()
    }

    /// Riemann–Hurwitz genus of a connected cover.
    pub fn genus(&self) -> Result<u64, CoverError> {
        if !self.is_connected() {
            return Err(CoverError::Disconnected);
        }
        let r = self.ramification_degree();
        if r % 2 == 1 {
            return Err(CoverError::OddRamification(r));
        }
        // 2g - 2 = -2n + r
        let twice = r as i64 - 2 * self.degree as i64 + 2;
        if twice < 0 {
            return Err(CoverError::OddRamification(r));
        }
        Ok((twice / 2) as u64)
    }

    /// Cycle lengths at `label`, largest first.
    pub fn ramification_profile(&self, label: &str) -> Result<Vec<usize>, CoverError> {
        self.monodromy(label)
            .map(Permutation::cycle_type)
            .ok_or_else(|| CoverError::UnknownLabel(label.to_string()))
    }

    /// One cover per monodromy orbit, ordered by smallest sheet. Labels that
    /// act trivially on a component are dropped from it.
    pub fn components(&self) -> Vec<Component> {
        self.orbits()
            .into_iter()
            .map(|sheets| {
                let mut local = vec![usize::MAX; self.degree];
                for (i, &s) in sheets.iter().enumerate() {
                    local[s] = i;
                }
                let entries = self.points.iter().map(|p| {
                    let images = sheets.iter().map(|&s| local[p.monodromy.apply(s)]).collect();
                    (
                        p.label.clone(),
                        Permutation::from_images(images).expect("orbit is invariant"),
                    )
                });
                let cover = Self::induced(sheets.len(), entries)
                    .expect("restriction of a valid cover to an orbit is valid");
                Component { cover, sheets }
            })
            .collect()
    }

    /// Disjoint union; `other`'s sheets are shifted past `self`'s. Labels are
    /// merged so that both covers keep their order (labels of `self` first
    /// where free); covers ordering two shared labels differently are rejected.
    pub fn disjoint_union(&self, other: &BranchedCover) -> Result<BranchedCover, CoverError> {
        let order = merge_label_orders(
            &self.labels().collect::<Vec<_>>(),
            &other.labels().collect::<Vec<_>>(),
        )?;
        let n = self.degree + other.degree;
        let entries = order.into_iter().map(|label| {
            let a = self.monodromy_or_identity(&label);
            let b = other.monodromy_or_identity(&label);
            let images = a
                .images()
                .iter()
                .copied()
                .chain(b.images().iter().map(|&i| i + self.degree))
                .collect();
            (label, Permutation::from_images(images).expect("block sum"))
        });
        Self::induced(n, entries)
    }

    /// Simultaneous conjugation `σ ↦ ρ⁻¹σρ` of every monodromy entry.
    pub fn conjugate_by(&self, rho: &Permutation) -> Result<BranchedCover, CoverError> {
        let points = self
            .points
            .iter()
            .map(|p| {
                Ok(BranchPoint {
                    label: p.label.clone(),
                    position: p.position.clone(),
                    monodromy: p.monodromy.conjugate_by(rho)?,
                })
            })
            .collect::<Result<Vec<_>, CoverError>>()?;
        Self::new(self.degree, points)
    }

    /// Renames a branch label; used to build negative controls.
    pub fn relabel(&self, from: &str, to: &str) -> Result<BranchedCover, CoverError> {
        if !self.has_label(from) {
            return Err(CoverError::UnknownLabel(from.to_string()));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                let mut p = p.clone();
                if p.label == from {
                    p.label = to.to_string();
                }
                p
            })
            .collect();
        Self::new(self.degree, points)
    }
}

fn merge_label_orders(a: &[&str], b: &[&str]) -> Result<Vec<String>, CoverError> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if i < a.len() && !b.contains(&a[i]) {
            out.push(a[i].to_string());
            i += 1;
        } else if j < b.len() && !a.contains(&b[j]) {
            out.push(b[j].to_string());
            j += 1;
        } else if i < a.len() && j < b.len() && a[i] == b[j] {
            out.push(a[i].to_string());
            i += 1;
            j += 1;
        } else {
            return Err(CoverError::LabelMismatch(
                "label orders of the two covers are incompatible".into(),
            ));
        }
    }
    Ok(out)
}

/// A point of a cover: a cycle of the monodromy over a label. Cycles are
/// stored 0-based and rotated to start at their smallest sheet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverPoint {
    pub label: String,
    pub cycle: Vec<usize>,
}

impl CoverPoint {
    pub fn new(label: impl Into<String>, cycle: Vec<usize>) -> Self {
        CoverPoint {
            label: label.into(),
            cycle: canonical_cycle(cycle),
        }
    }

    pub fn ramification_index(&self) -> usize {
        self.cycle.len()
    }

    /// Image of this point under a sheet relabelling.
    pub fn map_sheets(&self, rho: &Permutation) -> CoverPoint {
        CoverPoint::new(
            self.label.clone(),
            self.cycle.iter().map(|&s| rho.apply(s)).collect(),
        )
    }

    pub fn contains(&self, sheet: usize) -> bool {
        self.cycle.contains(&sheet)
    }
}

fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if let Some(pos) = cycle.iter().enumerate().min_by_key(|(_, &s)| s).map(|(i, _)| i) {
        cycle.rotate_left(pos);
    }
    cycle
}

/// All points of `cover` over `label`; over a label where the cover is
/// unbranched each sheet is its own point.
pub fn points_over(cover: &BranchedCover, label: &str) -> Vec<CoverPoint> {
    cover
        .monodromy_or_identity(label)
        .cycles()
        .into_iter()
        .map(|c| CoverPoint::new(label, c))
        .collect()
}
