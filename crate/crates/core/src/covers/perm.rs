//! Permutations of sheet indices.
//!
//! Sheets are stored 0-based. Everything that crosses the crate boundary in
//! text form (JSON, `Display`) is 1-based.
//!
//! Composition follows a single convention throughout the crate: `p.then(&q)`
//! applies `p` first and `q` second, so the product-one relation of a cover
//! with monodromy `σ1, …, σm` reads `σ1.then(σ2)…then(σm) == id`.

use std::fmt;

use super::CoverError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, CoverError> {
        let n = images.len();
        if n == 0 {
            return Err(CoverError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(CoverError::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self, CoverError> {
        if images.iter().any(|&i| i == 0) {
            return Err(CoverError::NotAPermutation(format!("{images:?}")));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// Builds a permutation from disjoint 1-based cycles; unlisted sheets are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, CoverError> {
        if degree == 0 {
            return Err(CoverError::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &s) in cycle.iter().enumerate() {
                if s == 0 || s > degree || touched[s - 1] {
                    return Err(CoverError::NotAPermutation(format!("cycles {cycles:?}")));
                }
                touched[s - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[s - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Transposition of two 0-based sheets.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, sheet: usize) -> usize {
        self.images[sheet]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation, CoverError> {
        if self.degree() != other.degree() {
            return Err(CoverError::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `ρ⁻¹·self·ρ` in the crate's order, i.e. the permutation `x ↦ ρ(self(ρ⁻¹(x)))`.
    pub fn conjugate_by(&self, rho: &Permutation) -> Result<Permutation, CoverError> {
        rho.inverse().then(self)?.then(rho)
    }

    /// All cycles including fixed points, each starting at its smallest sheet,
    /// ordered by that smallest sheet.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                cycle.push(s);
                s = self.images[s];
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths, largest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Nontrivial cycles in canonical 1-based form, the JSON representation.
    pub fn to_cycles_one_based(&self) -> Vec<Vec<usize>> {
        self.cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|s| s + 1).collect())
            .collect()
    }

    /// Parity of the permutation (`true` for odd).
    pub fn is_odd(&self) -> bool {
        (self.degree() - self.num_cycles()) % 2 == 1
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_cycles_one_based();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Orbits of the group generated by `perms` on `0..degree`, each sorted,
/// ordered by smallest element.
pub fn orbits<'a, I>(degree: usize, perms: I) -> Vec<Vec<usize>>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in perms {
        assert_eq!(p.degree(), degree, "orbit computation over mixed degrees");
        for (i, &j) in p.images().iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for s in 0..degree {
        let root = find(&mut parent, s);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(s);
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = cyc(2, &[&[1, 2]]);
        assert!(t.then(&t).unwrap().is_identity());
    }

    #[test]
    fn composition_applies_left_first() {
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        let p = cyc(3, &[&[1, 2]]);
        let q = cyc(3, &[&[2, 3]]);
        let r = p.then(&q).unwrap();
        assert_eq!(r, Permutation::from_images_one_based(&[3, 1, 2]).unwrap());
    }

    #[test]
    fn identity_is_neutral() {
        let p = cyc(4, &[&[1, 3, 4]]);
        assert_eq!(p.then(&Permutation::identity(4)).unwrap(), p);
        assert_eq!(Permutation::identity(4).then(&p).unwrap(), p);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = Permutation::identity(3).then(&Permutation::identity(4));
        assert!(matches!(err, Err(CoverError::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(3, [&cyc(3, &[&[1, 2]])]), vec![vec![0, 1], vec![2]]);
        assert_eq!(orbits(3, [&cyc(3, &[&[1, 2, 3]])]), vec![vec![0, 1, 2]]);
        let a = cyc(4, &[&[1, 2]]);
        let b = cyc(4, &[&[3, 4]]);
        assert_eq!(orbits(4, [&a, &b]), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn cycle_type_and_display() {
        let p = cyc(6, &[&[4, 2], &[5, 6, 3]]);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.to_string(), "(2 4)(3 5 6)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn conjugation_convention() {
        let s = cyc(3, &[&[1, 2, 3]]);
        let rho = cyc(3, &[&[1, 2]]);
        let c = s.conjugate_by(&rho).unwrap();
        // rho maps sheets of s to sheets of c: c(rho(x)) == rho(s(x))
        for x in 0..3 {
            assert_eq!(c.apply(rho.apply(x)), rho.apply(s.apply(x)));
        }
    }
}
