//! Coxeter matrices: symmetric rank×rank arrays of bond orders.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Order of the product of two distinct generators: finite `m >= 2` or infinite.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn is_infinite(self) -> bool {
        self == Bond::Infinite
    }

    /// The finite order, if any.
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

/// A symmetric Coxeter matrix.  The diagonal is implicitly 1 and unlisted
/// off-diagonal pairs default to 2 (commuting generators).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoxeterMatrix {
    rank: usize,
    // Row-major off-diagonal storage; entry (i, i) holds Finite(1) and is unused.
    entries: Vec<Bond>,
}

impl CoxeterMatrix {
    /// Build a matrix from a list of `(i, j, m)` entries.
    ///
    /// Listing a pair in both orders is fine as long as the values agree;
    /// conflicting values are rejected as an asymmetric matrix.
    pub fn from_entries(rank: usize, given: &[(usize, usize, Bond)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankZero);
        }
        let mut chosen: BTreeMap<(usize, usize), Bond> = BTreeMap::new();
        for &(i, j, m) in given {
            for idx in [i, j] {
                if idx >= rank {
                    return Err(Error::GeneratorOutOfRange { index: idx, rank });
                }
            }
            if i == j {
                return Err(Error::DiagonalEntry { i });
            }
            if let Bond::Finite(m) = m {
                if m < 2 {
                    return Err(Error::EntryTooSmall { i, j, m });
                }
            }
            let key = (i.min(j), i.max(j));
            if let Some(&prev) = chosen.get(&key) {
                if prev != m {
                    return Err(Error::AsymmetricEntry { i: key.0, j: key.1 });
                }
            } else {
                chosen.insert(key, m);
            }
        }
        let mut entries = vec![Bond::Finite(2); rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Bond::Finite(1);
        }
        for ((i, j), m) in chosen {
            entries[i * rank + j] = m;
            entries[j * rank + i] = m;
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// Dihedral matrix of rank 2 with the given bond.
    pub fn dihedral(m: Bond) -> Self {
        CoxeterMatrix::from_entries(2, &[(0, 1, m)]).expect("valid dihedral matrix")
    }

    /// Rank-n matrix with all off-diagonal bonds equal to 2 (a direct product
    /// of n copies of the order-2 group).
    pub fn right_angled_free_abelian(rank: usize) -> Result<Self> {
        CoxeterMatrix::from_entries(rank, &[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bond order between generators `i` and `j`; `Finite(1)` on the diagonal.
    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.entries[i * self.rank + j]
    }

    /// All off-diagonal entries with `i < j`, row by row.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, Bond)> + '_ {
        (0..self.rank).flat_map(move |i| {
            ((i + 1)..self.rank).map(move |j| (i, j, self.bond(i, j)))
        })
    }

    /// True when every off-diagonal bond lies in {2, 3, ∞}; exactly then the
    /// geometric representation has integer matrices.
    pub fn is_small_bond(&self) -> bool {
        self.upper_entries()
            .all(|(_, _, m)| matches!(m, Bond::Finite(2) | Bond::Finite(3) | Bond::Infinite))
    }

    /// Restrict to a subset of generators, reindexing them in the given order.
    pub fn restrict(&self, gens: &[usize]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::RankZero);
        }
        let mut entries = Vec::new();
        for (a, &i) in gens.iter().enumerate() {
            if i >= self.rank {
                return Err(Error::GeneratorOutOfRange { index: i, rank: self.rank });
            }
            for (b, &j) in gens.iter().enumerate() {
                if a < b {
                    entries.push((a, b, self.bond(i, j)));
                }
            }
        }
        CoxeterMatrix::from_entries(gens.len(), &entries)
    }

    /// Block sum: generators of `other` are appended after those of `self`,
    /// with all cross bonds equal to 2.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let rank = self.rank + other.rank;
        let mut entries: Vec<(usize, usize, Bond)> = Vec::new();
        for (i, j, m) in self.upper_entries() {
            entries.push((i, j, m));
        }
        for (i, j, m) in other.upper_entries() {
            entries.push((self.rank + i, self.rank + j, m));
        }
        CoxeterMatrix::from_entries(rank, &entries).expect("valid block sum")
    }
}
