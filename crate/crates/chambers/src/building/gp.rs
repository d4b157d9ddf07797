//! Graph-product normal forms.
//!
//! A graph product of finite cyclic groups has one vertex generator per
//! generator of a right-angled Coxeter system: two vertex groups commute
//! exactly when the Coxeter bond is 2, and satisfy no relation when it is
//! infinite.  Elements are written as syllable sequences `(vertex, exponent)`;
//! the canonical form first merges syllables that can be brought together by
//! commutation, then emits the lexicographically least linearization.  Two
//! syllable words represent the same group element exactly when their
//! canonical forms agree, which gives O(1) equality for chamber bookkeeping.

use crate::coxeter::{Bond, CoxeterMatrix};
use crate::error::{Error, Result};

/// Syllable: vertex index plus exponent in `1..size`.
pub type Syl = (u8, u32);

/// The data a graph product needs: the right-angled matrix (bond 2 = commute)
/// and the vertex group sizes.
#[derive(Clone, Debug)]
pub struct GpContext {
    pub matrix: CoxeterMatrix,
    pub sizes: Vec<u32>,
}

impl GpContext {
    pub fn new(matrix: CoxeterMatrix, sizes: Vec<u32>) -> Result<Self> {
        if sizes.len() != matrix.rank() {
            return Err(Error::MalformedExplicit {
                reason: "vertex size list does not match the generator count".into(),
            });
        }
        if let Some((i, &n)) = sizes.iter().enumerate().find(|&(_, &n)| n < 2) {
            return Err(Error::VertexGroupTooSmall {
                name: format!("vertex {i}"),
                size: n,
            });
        }
        for i in 0..matrix.rank() {
            for j in i + 1..matrix.rank() {
                if !matches!(matrix.bond(i, j), Bond::Finite(2) | Bond::Infinite) {
                    return Err(Error::MalformedExplicit {
                        reason: format!(
                            "graph products need bonds 2 or inf; found another at ({i},{j})"
                        ),
                    });
                }
            }
        }
        Ok(GpContext { matrix, sizes })
    }

    pub fn commutes(&self, u: u8, v: u8) -> bool {
        self.matrix.bond(u as usize, v as usize) == Bond::Finite(2)
    }

    /// Whether the whole group is finite (complete commutation graph, so the
    /// product is a direct product of the vertex groups).
    pub fn is_finite_group(&self) -> bool {
        let n = self.matrix.rank();
        (0..n).all(|i| (i + 1..n).all(|j| self.matrix.bond(i, j) == Bond::Finite(2)))
    }

    /// Merge syllables movable together by commutation; drop trivial ones.
    fn merge(&self, list: &mut Vec<Syl>) {
        let mut i = 0;
        'outer: while i < list.len() {
            let (v, _) = list[i];
            let mut j = i + 1;
            while j < list.len() {
                let (u, e) = list[j];
                if u == v {
                    list.remove(j);
                    let sum = (list[i].1 + e) % self.sizes[v as usize];
                    if sum == 0 {
                        list.remove(i);
                        // Earlier syllables may now merge across the gap.
                        i = 0;
                    } else {
                        list[i].1 = sum;
                    }
                    continue 'outer;
                }
                if !self.commutes(u, v) {
                    break;
                }
                j += 1;
            }
            i += 1;
        }
    }

    /// Canonical form: fully merged, then the lexicographically least
    /// linearization of the commutation class.
    pub fn canon(&self, syllables: Vec<Syl>) -> Vec<Syl> {
        let mut list: Vec<Syl> = syllables
            .into_iter()
            .filter_map(|(v, e)| {
                let e = e % self.sizes[v as usize];
                (e != 0).then_some((v, e))
            })
            .collect();
        self.merge(&mut list);
        let mut out = Vec::with_capacity(list.len());
        while !list.is_empty() {
            let mut best: Option<usize> = None;
            'cand: for p in 0..list.len() {
                for q in 0..p {
                    if !self.commutes(list[q].0, list[p].0) {
                        continue 'cand;
                    }
                }
                if best.is_none_or(|b| list[p] < list[b]) {
                    best = Some(p);
                }
            }
            out.push(list.remove(best.expect("position 0 is always movable")));
        }
        out
    }

    pub fn mul(&self, a: &[Syl], b: &[Syl]) -> Vec<Syl> {
        let mut joined = Vec::with_capacity(a.len() + b.len());
        joined.extend_from_slice(a);
        joined.extend_from_slice(b);
        self.canon(joined)
    }

    pub fn inv(&self, a: &[Syl]) -> Vec<Syl> {
        self.canon(
            a.iter()
                .rev()
                .map(|&(v, e)| (v, self.sizes[v as usize] - e))
                .collect(),
        )
    }

    /// The generator word of the image in the right-angled Coxeter group:
    /// one letter per syllable.
    pub fn vertex_word(a: &[Syl]) -> Vec<u8> {
        a.iter().map(|&(v, _)| v).collect()
    }

    /// Render a syllable word with the given vertex generator names.
    pub fn display(&self, a: &[Syl], names: &[String]) -> String {
        if a.is_empty() {
            return "1".into();
        }
        let compact = names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<String> = a
            .iter()
            .map(|&(v, e)| {
                let name = &names[v as usize];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join(if compact { "" } else { "·" })
    }

    /// Parse a syllable word over the given vertex generator names.
    /// Accepts `1` for the identity, optional `·`, `*`, `.` or space
    /// separators, and `^e` exponents.
    pub fn parse(&self, input: &str, names: &[String]) -> Result<Vec<Syl>> {
        let cleaned: String = input
            .chars()
            .map(|c| if c == '·' || c == '*' || c == '.' { ' ' } else { c })
            .collect();
        let text = cleaned.trim();
        if text.is_empty() || text == "1" || text == "ε" || text == "e" {
            return Ok(Vec::new());
        }
        let mut syllables = Vec::new();
        let mut rest = text;
        'token: while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            // Longest generator name match first.
            let mut ordered: Vec<usize> = (0..names.len()).collect();
            ordered.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
            for i in ordered {
                if let Some(after) = rest.strip_prefix(names[i].as_str()) {
                    let mut exponent = 1u32;
                    let mut tail = after;
                    if let Some(exp_text) = after.strip_prefix('^') {
                        let digits: String =
                            exp_text.chars().take_while(|c| c.is_ascii_digit()).collect();
                        if digits.is_empty() {
                            return Err(Error::UnknownGenerator { name: input.into() });
                        }
                        exponent = digits.parse().map_err(|_| Error::UnknownGenerator { name: input.into() })?;
                        tail = &exp_text[digits.len()..];
                    }
                    syllables.push((i as u8, exponent));
                    rest = tail;
                    continue 'token;
                }
            }
            return Err(Error::UnknownGenerator { name: input.into() });
        }
        Ok(self.canon(syllables))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn free_c3_c3() -> GpContext {
        let m = CoxeterMatrix::from_entries(2, &[(0, 1, Bond::Infinite)]).unwrap();
        GpContext::new(m, vec![3, 3]).unwrap()
    }

    fn rank3_with_edge() -> GpContext {
        // r-t commute; r-s and s-t are free.
        let m = CoxeterMatrix::from_entries(
            3,
            &[(0, 1, Bond::Infinite), (1, 2, Bond::Infinite), (0, 2, Bond::Finite(2))],
        )
        .unwrap();
        GpContext::new(m, vec![3, 3, 3]).unwrap()
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cyclic_relations() {
        let gp = free_c3_c3();
        assert_eq!(gp.canon(vec![(0, 1), (0, 1)]), vec![(0, 2)]);
        assert_eq!(gp.canon(vec![(0, 1), (0, 1), (0, 1)]), vec![]);
        assert_eq!(gp.canon(vec![(0, 2), (0, 2)]), vec![(0, 1)]);
    }

    #[test]
    fn free_factors_do_not_commute() {
        let gp = free_c3_c3();
        let xy = gp.canon(vec![(0, 1), (1, 1)]);
        let yx = gp.canon(vec![(1, 1), (0, 1)]);
        assert_ne!(xy, yx);
        assert_eq!(xy, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn commuting_vertices_sort() {
        let gp = rank3_with_edge();
        // t·r = r·t, and the canonical form carries the smaller vertex first.
        assert_eq!(gp.canon(vec![(2, 1), (0, 2)]), vec![(0, 2), (2, 1)]);
        // s blocks the move.
        assert_eq!(
            gp.canon(vec![(2, 1), (1, 1), (0, 1)]),
            vec![(2, 1), (1, 1), (0, 1)]
        );
    }

    #[test]
    fn hidden_merge_across_commuting_block() {
        let gp = rank3_with_edge();
        // r t r² = t (r and t commute, the r-syllables meet and cancel).
        assert_eq!(gp.canon(vec![(0, 1), (2, 1), (0, 2)]), vec![(2, 1)]);
        // Cancellation opens a second merge: r t r² t² = 1.
        assert_eq!(gp.canon(vec![(0, 1), (2, 1), (0, 2), (2, 2)]), vec![]);
    }

    #[test]
    fn inverse_and_product() {
        let gp = free_c3_c3();
        let xy = vec![(0, 1), (1, 1)];
        let inv = gp.inv(&xy);
        assert_eq!(inv, vec![(1, 2), (0, 2)]);
        assert_eq!(gp.mul(&xy, &inv), vec![]);
        assert_eq!(gp.mul(&inv, &xy), vec![]);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let gp = free_c3_c3();
        let ns = names(&["x", "y"]);
        let e = gp.canon(vec![(0, 2), (1, 1), (0, 2), (1, 1), (0, 2), (1, 2), (0, 1)]);
        let shown = gp.display(&e, &ns);
        assert_eq!(shown, "x^2yx^2yx^2y^2x");
        assert_eq!(gp.parse(&shown, &ns).unwrap(), e);
        assert_eq!(gp.parse("1", &ns).unwrap(), vec![]);
        assert_eq!(gp.parse("x^3", &ns).unwrap(), vec![]);
        assert_eq!(gp.parse("y·y", &ns).unwrap(), vec![(1, 2)]);
        assert!(gp.parse("q", &ns).is_err());
    }

    #[test]
    fn rejects_small_vertex_groups_and_bad_bonds() {
        let m = CoxeterMatrix::from_entries(2, &[(0, 1, Bond::Infinite)]).unwrap();
        assert!(matches!(
            GpContext::new(m, vec![1, 3]),
            Err(Error::VertexGroupTooSmall { size: 1, .. })
        ));
        let m3 = CoxeterMatrix::from_entries(2, &[(0, 1, Bond::Finite(3))]).unwrap();
        assert!(GpContext::new(m3, vec![2, 2]).is_err());
    }

    proptest! {
        #[test]
        fn canon_is_stable_under_split_products(raw in proptest::collection::vec((0u8..3, 1u32..3), 0..12), cut in 0usize..12) {
            let gp = rank3_with_edge();
            let whole = gp.canon(raw.clone());
            let cut = cut.min(raw.len());
            let split = gp.mul(&gp.canon(raw[..cut].to_vec()), &gp.canon(raw[cut..].to_vec()));
            prop_assert_eq!(whole, split);
        }

        #[test]
        fn canon_idempotent_and_inverse_law(raw in proptest::collection::vec((0u8..3, 1u32..3), 0..10)) {
            let gp = rank3_with_edge();
            let c = gp.canon(raw);
            prop_assert_eq!(gp.canon(c.clone()), c.clone());
            prop_assert_eq!(gp.mul(&c, &gp.inv(&c)), vec![]);
        }
    }
}
