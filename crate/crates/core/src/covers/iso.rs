//! Isomorphism of covers as simultaneous conjugacy of monodromy tuples.
//!
//! A relabelling `ρ` from the sheets of `c1` to the sheets of `c2` is an
//! isomorphism when `ρ(σᵢ(x)) = σ′ᵢ(ρ(x))` for every label, i.e.
//! `ρ⁻¹·σᵢ·ρ = σ′ᵢ` in the crate's composition order. The search picks the
//! image of one representative per orbit and propagates along the generators;
//! once a representative is fixed its whole orbit is forced.

use super::cover::BranchedCover;
use super::perm::Permutation;
use super::CoverError;

/// Returns a conjugator from `c1` to `c2`, or `None` if the covers are not
/// isomorphic. Differing label lists are an error.
pub fn are_isomorphic(
    c1: &BranchedCover,
    c2: &BranchedCover,
) -> Result<Option<Permutation>, CoverError> {
    find_isomorphism(c1, c2, |_| true)
}

/// Like [`are_isomorphic`], but keeps searching until `accept` approves a
/// conjugator. Useful when the isomorphism must also carry extra structure
/// (block systems, marked points).
pub fn find_isomorphism<F>(
    c1: &BranchedCover,
    c2: &BranchedCover,
    mut accept: F,
) -> Result<Option<Permutation>, CoverError>
where
    F: FnMut(&Permutation) -> bool,
{
    let labels1: Vec<&str> = c1.labels().collect();
    let labels2: Vec<&str> = c2.labels().collect();
    if labels1 != labels2 {
        return Err(CoverError::LabelMismatch(format!(
            "{labels1:?} vs {labels2:?}"
        )));
    }
    if c1.degree() != c2.degree() {
        return Err(CoverError::DegreeMismatch {
            expected: c1.degree(),
            found: c2.degree(),
        });
    }
    let gens1: Vec<&Permutation> = c1.branch_points().iter().map(|p| &p.monodromy).collect();
    let gens2: Vec<&Permutation> = c2.branch_points().iter().map(|p| &p.monodromy).collect();
    if gens1
        .iter()
        .zip(&gens2)
        .any(|(a, b)| a.cycle_type() != b.cycle_type())
    {
        return Ok(None);
    }
    let reps: Vec<usize> = c1.orbits().iter().map(|o| o[0]).collect();
    let n = c1.degree();
    let mut search = Search {
        gens1,
        gens2,
        forward: vec![None; n],
        backward: vec![None; n],
    };
    Ok(search.run(&reps, &mut accept))
}

struct Search<'a> {
    gens1: Vec<&'a Permutation>,
    gens2: Vec<&'a Permutation>,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl Search<'_> {
    fn run<F: FnMut(&Permutation) -> bool>(
        &mut self,
        reps: &[usize],
        accept: &mut F,
    ) -> Option<Permutation> {
        let Some((&rep, rest)) = reps.split_first() else {
            let images = self.forward.iter().map(|x| x.unwrap()).collect();
            let rho = Permutation::from_images(images).expect("search builds bijections");
            return accept(&rho).then_some(rho);
        };
        for target in 0..self.forward.len() {
            if self.backward[target].is_some() {
                continue;
            }
            let snapshot = (self.forward.clone(), self.backward.clone());
            if self.propagate(rep, target) {
                if let Some(rho) = self.run(rest, accept) {
                    return Some(rho);
                }
            }
            (self.forward, self.backward) = snapshot;
        }
        None
    }

    fn propagate(&mut self, x: usize, y: usize) -> bool {
        let mut stack = vec![(x, y)];
        self.forward[x] = Some(y);
        self.backward[y] = Some(x);
        while let Some((a, b)) = stack.pop() {
            for (s1, s2) in self.gens1.iter().zip(&self.gens2) {
                let (na, nb) = (s1.apply(a), s2.apply(b));
                match (self.forward[na], self.backward[nb]) {
                    (Some(m), _) if m == nb => {}
                    (None, None) => {
                        self.forward[na] = Some(nb);
                        self.backward[nb] = Some(na);
                        stack.push((na, nb));
                    }
                    _ => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::BranchPoint;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    fn cover(n: usize, entries: &[(&str, &[&[usize]])]) -> BranchedCover {
        BranchedCover::new(
            n,
            entries
                .iter()
                .map(|(l, c)| BranchPoint::new(*l, perm(n, c)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let c = cover(3, &[("a", &[&[1, 2]]), ("b", &[&[2, 3]]), ("c", &[&[1, 2, 3]])]);
        let rho = are_isomorphic(&c, &c).unwrap().unwrap();
        assert!(rho.is_identity());
    }

    #[test]
    fn recovers_conjugator() {
        let c = cover(3, &[("a", &[&[1, 2]]), ("b", &[&[2, 3]]), ("c", &[&[1, 2, 3]])]);
        let rho = perm(3, &[&[1, 2]]);
        let d = c.conjugate_by(&rho).unwrap();
        let found = are_isomorphic(&c, &d).unwrap().unwrap();
        assert_eq!(c.conjugate_by(&found).unwrap(), d);
    }

    #[test]
    fn cycle_types_must_agree() {
        let a = cover(3, &[("a", &[&[1, 2]]), ("b", &[&[1, 2]])]);
        let b = cover(3, &[("a", &[&[1, 2, 3]]), ("b", &[&[1, 3, 2]])]);
        assert_eq!(are_isomorphic(&a, &b).unwrap(), None);
    }

    #[test]
    fn label_mismatch_is_an_error() {
        let a = cover(2, &[("a", &[&[1, 2]]), ("b", &[&[1, 2]])]);
        let b = cover(2, &[("a", &[&[1, 2]]), ("c", &[&[1, 2]])]);
        assert!(matches!(
            are_isomorphic(&a, &b),
            Err(CoverError::LabelMismatch(_))
        ));
    }

    #[test]
    fn same_cycle_types_but_not_conjugate() {
        // Matching profiles at every label, different orbit structure.
        let a = cover(
            4,
            &[("a", &[&[1, 2]]), ("b", &[&[1, 2]]), ("c", &[&[3, 4]]), ("d", &[&[3, 4]])],
        );
        let b = cover(
            4,
            &[("a", &[&[1, 2]]), ("b", &[&[2, 3]]), ("c", &[&[2, 3]]), ("d", &[&[1, 2]])],
        );
        assert_eq!(are_isomorphic(&a, &b).unwrap(), None);
    }

    #[test]
    fn constrained_search_enumerates_alternatives() {
        // Two identical components, each with a 2-element centralizer.
        let c = cover(4, &[("a", &[&[1, 2], &[3, 4]]), ("b", &[&[1, 2], &[3, 4]])]);
        let mut seen = Vec::new();
        let none = find_isomorphism(&c, &c, |rho| {
            seen.push(rho.clone());
            false
        })
        .unwrap();
        assert!(none.is_none());
        // sheet 0 can go anywhere (4 ways), then sheet 2 to one of the two
        // remaining sheets
        assert_eq!(seen.len(), 8);
    }
}
