//! Diagram decomposition and the finite-type classification.
//!
//! The diagram has the generators as vertices and an edge wherever the bond
//! is at least 3 (or infinite).  Connected components pairwise commute, and a
//! component generates a finite group exactly when its diagram appears in the
//! classical list `A_n, B_n, D_n, E6, E7, E8, F4, H3, H4, I2(m)`.

use super::{Bond, CoxeterSystem};
use std::fmt;

/// A classical finite type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H3,
    H4,
    I2(u32),
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H3 => write!(f, "H3"),
            FiniteType::H4 => write!(f, "H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// One connected component of the diagram.
#[derive(Clone, Debug)]
pub struct DiagramComponent {
    /// Generator indices, ascending.
    pub gens: Vec<usize>,
    /// The classical type when the component spans a finite group.
    pub finite: Option<FiniteType>,
}

/// All components, ordered by their least generator.
#[derive(Clone, Debug)]
pub struct DiagramDecomposition {
    pub components: Vec<DiagramComponent>,
}

impl DiagramDecomposition {
    pub fn is_all_finite(&self) -> bool {
        self.components.iter().all(|c| c.finite.is_some())
    }

    /// The component containing a generator.
    pub fn component_of(&self, g: usize) -> Option<&DiagramComponent> {
        self.components.iter().find(|c| c.gens.contains(&g))
    }
}

pub(crate) fn decompose(sys: &CoxeterSystem) -> DiagramDecomposition {
    let n = sys.rank();
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for u in 0..n {
                if u != v && comp[u] == usize::MAX && edge(sys, v, u) {
                    comp[u] = id;
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    DiagramDecomposition {
        components: components
            .into_iter()
            .map(|gens| {
                let finite = classify(sys, &gens);
                DiagramComponent { gens, finite }
            })
            .collect(),
    }
}

fn edge(sys: &CoxeterSystem, i: usize, j: usize) -> bool {
    match sys.bond(i, j) {
        Bond::Finite(m) => m >= 3,
        Bond::Infinite => true,
    }
}

/// Classify one connected component against the finite-type list.
fn classify(sys: &CoxeterSystem, gens: &[usize]) -> Option<FiniteType> {
    let n = gens.len();
    // Any infinite bond rules the component out immediately.
    for (a, &i) in gens.iter().enumerate() {
        for &j in &gens[a + 1..] {
            if sys.bond(i, j).is_infinite() {
                return None;
            }
        }
    }
    if n == 1 {
        return Some(FiniteType::A(1));
    }
    if n == 2 {
        let m = sys.bond(gens[0], gens[1]).finite()?;
        return Some(match m {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            _ => FiniteType::I2(m),
        });
    }
    // Rank >= 3: must be a tree with constrained degrees and labels.
    let deg = |v: usize| gens.iter().filter(|&&u| u != v && edge(sys, v, u)).count();
    let edge_count: usize = gens
        .iter()
        .enumerate()
        .map(|(a, &i)| gens[a + 1..].iter().filter(|&&j| edge(sys, i, j)).count())
        .sum();
    if edge_count != n - 1 {
        return None; // has a cycle
    }
    let degrees: Vec<usize> = gens.iter().map(|&v| deg(v)).collect();
    if degrees.iter().any(|&d| d >= 4) {
        return None;
    }
    let branch: Vec<usize> = gens
        .iter()
        .enumerate()
        .filter(|(a, _)| degrees[*a] == 3)
        .map(|(_, &v)| v)
        .collect();
    if branch.len() >= 2 {
        return None;
    }

    // Collect labels of edges with bond > 3.
    let mut heavy: Vec<(usize, usize, u32)> = Vec::new();
    for (a, &i) in gens.iter().enumerate() {
        for &j in &gens[a + 1..] {
            if let Bond::Finite(m) = sys.bond(i, j) {
                if m >= 4 {
                    heavy.push((i, j, m));
                }
            }
        }
    }
    if heavy.len() >= 2 {
        return None;
    }

    if let Some(&center) = branch.first() {
        if !heavy.is_empty() {
            return None;
        }
        // Arm lengths from the branch vertex.
        let mut arms: Vec<usize> = Vec::new();
        for &nb in gens.iter().filter(|&&v| v != center && edge(sys, v, center)) {
            let mut len = 1;
            let mut prev = center;
            let mut cur = nb;
            loop {
                let next: Vec<usize> = gens
                    .iter()
                    .copied()
                    .filter(|&v| v != prev && v != cur && edge(sys, v, cur))
                    .collect();
                match next.as_slice() {
                    [] => break,
                    [only] => {
                        prev = cur;
                        cur = *only;
                        len += 1;
                    }
                    _ => return None,
                }
            }
            arms.push(len);
        }
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, _] => Some(FiniteType::D(n)),
            [1, 2, 2] => Some(FiniteType::E(6)),
            [1, 2, 3] => Some(FiniteType::E(7)),
            [1, 2, 4] => Some(FiniteType::E(8)),
            _ => None,
        };
    }

    // A path: walk it from one endpoint and read off the labels.
    let endpoints: Vec<usize> = gens
        .iter()
        .enumerate()
        .filter(|(a, _)| degrees[*a] == 1)
        .map(|(_, &v)| v)
        .collect();
    debug_assert_eq!(endpoints.len(), 2);
    let mut order = vec![endpoints[0]];
    let mut prev = usize::MAX;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let next = gens
            .iter()
            .copied()
            .find(|&v| v != prev && v != cur && edge(sys, v, cur))
            .expect("path continues");
        prev = cur;
        order.push(next);
    }
    let labels: Vec<u32> = order
        .windows(2)
        .map(|w| sys.bond(w[0], w[1]).finite().expect("finite bonds on path"))
        .collect();

    match heavy.first() {
        None => Some(FiniteType::A(n)),
        Some(&(_, _, m)) => {
            let pos = labels.iter().position(|&l| l >= 4).expect("heavy edge on path");
            let at_end = pos == 0 || pos == labels.len() - 1;
            match m {
                4 if at_end => Some(FiniteType::B(n)),
                4 if n == 4 => Some(FiniteType::F4), // interior edge of a 4-vertex path
                5 if at_end && n == 3 => Some(FiniteType::H3),
                5 if at_end && n == 4 => Some(FiniteType::H4),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;

    fn sys_of(rank: usize, entries: &[(usize, usize, Bond)]) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::from_entries(rank, entries).unwrap())
    }

    fn path(labels: &[u32]) -> CoxeterSystem {
        let entries: Vec<(usize, usize, Bond)> = labels
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, Bond::Finite(m)))
            .collect();
        sys_of(labels.len() + 1, &entries)
    }

    fn single_type(sys: &CoxeterSystem) -> Option<FiniteType> {
        let d = sys.decompose_diagram();
        assert_eq!(d.components.len(), 1);
        d.components[0].finite
    }

    #[test]
    fn three_commuting_generators_split() {
        let sys = sys_of(3, &[]);
        let d = sys.decompose_diagram();
        assert_eq!(d.components.len(), 3);
        for c in &d.components {
            assert_eq!(c.finite, Some(FiniteType::A(1)));
        }
    }

    #[test]
    fn mixed_rank3_example() {
        // t commutes with r and s; bond(r, s) = ∞.
        let sys = sys_of(3, &[(1, 2, Bond::Infinite)]);
        let d = sys.decompose_diagram();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].gens, vec![0]);
        assert_eq!(d.components[0].finite, Some(FiniteType::A(1)));
        assert_eq!(d.components[1].gens, vec![1, 2]);
        assert_eq!(d.components[1].finite, None);
        assert!(!d.is_all_finite());
    }

    #[test]
    fn classical_positives() {
        assert_eq!(single_type(&path(&[3, 3])), Some(FiniteType::A(3)));
        assert_eq!(single_type(&path(&[4, 3])), Some(FiniteType::B(3)));
        assert_eq!(single_type(&path(&[3, 3, 4])), Some(FiniteType::B(4)));
        assert_eq!(single_type(&path(&[3, 4, 3])), Some(FiniteType::F4));
        assert_eq!(single_type(&path(&[5, 3])), Some(FiniteType::H3));
        assert_eq!(single_type(&path(&[5, 3, 3])), Some(FiniteType::H4));
        assert_eq!(
            single_type(&sys_of(2, &[(0, 1, Bond::Finite(7))])),
            Some(FiniteType::I2(7))
        );
        assert_eq!(
            single_type(&sys_of(2, &[(0, 1, Bond::Finite(6))])),
            Some(FiniteType::I2(6))
        );

        // D4: a center joined to three leaves.
        let d4 = sys_of(
            4,
            &[
                (0, 1, Bond::Finite(3)),
                (0, 2, Bond::Finite(3)),
                (0, 3, Bond::Finite(3)),
            ],
        );
        assert_eq!(single_type(&d4), Some(FiniteType::D(4)));

        // E6: arms (1, 2, 2) around vertex 2 of a path 0-1-2-3-4 plus leaf 5.
        let e6 = sys_of(
            6,
            &[
                (0, 1, Bond::Finite(3)),
                (1, 2, Bond::Finite(3)),
                (2, 3, Bond::Finite(3)),
                (3, 4, Bond::Finite(3)),
                (2, 5, Bond::Finite(3)),
            ],
        );
        assert_eq!(single_type(&e6), Some(FiniteType::E(6)));

        // E8: arms (1, 2, 4).
        let e8 = sys_of(
            8,
            &[
                (0, 1, Bond::Finite(3)),
                (1, 2, Bond::Finite(3)),
                (2, 3, Bond::Finite(3)),
                (3, 4, Bond::Finite(3)),
                (4, 5, Bond::Finite(3)),
                (5, 6, Bond::Finite(3)),
                (2, 7, Bond::Finite(3)),
            ],
        );
        assert_eq!(single_type(&e8), Some(FiniteType::E(8)));
    }

    #[test]
    fn affine_and_hyperbolic_negatives() {
        // Triangle (cycle) is affine Ã2.
        let tri = sys_of(
            3,
            &[
                (0, 1, Bond::Finite(3)),
                (1, 2, Bond::Finite(3)),
                (0, 2, Bond::Finite(3)),
            ],
        );
        assert_eq!(single_type(&tri), None);
        // Two heavy edges.
        assert_eq!(single_type(&path(&[4, 3, 4])), None);
        // Affine F̃4-like path.
        assert_eq!(single_type(&path(&[3, 4, 3, 3])), None);
        // Label 6 on a rank-3 path.
        assert_eq!(single_type(&path(&[6, 3])), None);
        // Five-vertex path with an end label 5.
        assert_eq!(single_type(&path(&[5, 3, 3, 3])), None);
        // Degree-4 star.
        let star = sys_of(
            5,
            &[
                (0, 1, Bond::Finite(3)),
                (0, 2, Bond::Finite(3)),
                (0, 3, Bond::Finite(3)),
                (0, 4, Bond::Finite(3)),
            ],
        );
        assert_eq!(single_type(&star), None);
        // Two branch vertices.
        let twobranch = sys_of(
            6,
            &[
                (0, 2, Bond::Finite(3)),
                (1, 2, Bond::Finite(3)),
                (2, 3, Bond::Finite(3)),
                (3, 4, Bond::Finite(3)),
                (3, 5, Bond::Finite(3)),
            ],
        );
        assert_eq!(single_type(&twobranch), None);
        // Branch vertex plus a heavy edge.
        let branch_heavy = sys_of(
            4,
            &[
                (0, 1, Bond::Finite(3)),
                (0, 2, Bond::Finite(3)),
                (0, 3, Bond::Finite(4)),
            ],
        );
        assert_eq!(single_type(&branch_heavy), None);
        // Infinite bond.
        assert_eq!(
            single_type(&sys_of(2, &[(0, 1, Bond::Infinite)])),
            None
        );
    }

    #[test]
    fn enumeration_agrees_with_classification() {
        // |A2| = 6, |A3| = 24, |B2| = 8, |B3| = 48, |A1×A1| = 4.
        let a3 = path(&[3, 3]);
        assert_eq!(a3.enumerate_subgroup(&[0, 1, 2], 100).unwrap().0.len(), 24);
        let b3 = path(&[4, 3]);
        assert_eq!(b3.enumerate_subgroup(&[0, 1, 2], 100).unwrap().0.len(), 48);
        let b2 = sys_of(2, &[(0, 1, Bond::Finite(4))]);
        assert_eq!(b2.enumerate_subgroup(&[0, 1], 100).unwrap().0.len(), 8);
        let sq = sys_of(2, &[]);
        assert_eq!(sq.enumerate_subgroup(&[0, 1], 100).unwrap().0.len(), 4);
    }

    #[test]
    fn finite_factor_extraction() {
        let sys = sys_of(3, &[(1, 2, Bond::Infinite)]);
        assert_eq!(sys.finite_factor(), Some(vec![0]));
        let dinf = sys_of(2, &[(0, 1, Bond::Infinite)]);
        assert_eq!(dinf.finite_factor(), None);
        let c2xc2 = sys_of(2, &[]);
        assert_eq!(c2xc2.finite_factor(), Some(vec![0, 1]));
    }
}
