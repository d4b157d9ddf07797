//! Coxeter systems and their word problem.
//!
//! A Coxeter system `(W, S)` is presented by `⟨S | s² = 1 = (rs)^{m_rs}⟩`.
//! Words are sequences of generator indices; elements are represented by
//! their shortlex-least reduced word, computed with the classical braid-move
//! procedure: a word is non-reduced iff some sequence of braid moves exposes
//! an adjacent equal pair, and two reduced words are equal in `W` iff they
//! are connected by braid moves alone.  Both facts together make the closure
//! under braid moves a complete decision procedure.

pub mod diagram;
pub mod geom;
pub mod matrix;

pub use diagram::{DiagramComponent, DiagramDecomposition, FiniteType};
pub use matrix::{Bond, CoxeterMatrix};

use crate::error::{Error, Result};
use std::collections::{BTreeSet, VecDeque};
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A word in the generators: a sequence of indices in `[0, rank)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

/// A group element in shortlex-least reduced form.
///
/// Elements remember a fingerprint of the system they belong to; mixing
/// elements of different systems is rejected by the arithmetic operations.
/// Ordering is shortlex: first by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elem {
    pub(crate) sys: u64,
    pub(crate) letters: Vec<u8>,
}

impl Elem {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn word(&self) -> Word {
        Word(self.letters.clone())
    }

    /// Set of generator indices appearing in the reduced word.
    pub fn support(&self) -> BTreeSet<u8> {
        self.letters.iter().copied().collect()
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sys
            .cmp(&other.sys)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

/// Result of an order computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderResult {
    /// The minimal `n >= 1` with `aⁿ = ε`.
    Finite(u64),
    /// Infinite order, established by an exact certificate.
    InfiniteCertified,
    /// No certificate applies and no power up to the cap was trivial.
    UnknownBeyond(u64),
}

/// A Coxeter system: a matrix plus generator names and a braid-search cap.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    names: Vec<String>,
    id: u64,
    braid_cap: usize,
}

impl CoxeterSystem {
    /// Build a system with default generator names `s0, s1, …`.
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let names = (0..matrix.rank()).map(|i| format!("s{i}")).collect();
        CoxeterSystem::with_names(matrix, names).expect("default names are valid")
    }

    /// Build a system with the given generator names (must be distinct and
    /// nonempty, one per generator).
    pub fn with_names(matrix: CoxeterMatrix, names: Vec<String>) -> Result<Self> {
        if names.len() != matrix.rank() {
            return Err(Error::Document(format!(
                "expected {} generator names, got {}",
                matrix.rank(),
                names.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if n.is_empty() || !seen.insert(n.clone()) {
                return Err(Error::Document(format!(
                    "generator names must be distinct and nonempty (offender {n:?})"
                )));
            }
        }
        let mut h = DefaultHasher::new();
        matrix.hash(&mut h);
        let id = h.finish();
        Ok(CoxeterSystem {
            matrix,
            names,
            id,
            braid_cap: crate::config::Config::default().braid_cap,
        })
    }

    /// Convenience constructor: the dihedral system on two named generators.
    pub fn dihedral(m: Bond, a: &str, b: &str) -> Self {
        CoxeterSystem::with_names(CoxeterMatrix::dihedral(m), vec![a.into(), b.into()])
            .expect("valid dihedral system")
    }

    pub fn set_braid_cap(&mut self, cap: usize) {
        self.braid_cap = cap;
    }

    pub fn braid_cap(&self) -> usize {
        self.braid_cap
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.matrix.bond(i, j)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator { name: name.into() })
    }

    /// Fingerprint identifying the matrix (not the names).
    pub fn fingerprint(&self) -> u64 {
        self.id
    }

    pub fn identity(&self) -> Elem {
        Elem { sys: self.id, letters: Vec::new() }
    }

    pub fn generator(&self, i: usize) -> Result<Elem> {
        self.check_letter(i)?;
        Ok(Elem { sys: self.id, letters: vec![i as u8] })
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::LetterOutOfRange { letter: i, rank: self.rank() });
        }
        Ok(())
    }

    pub(crate) fn check_elem(&self, e: &Elem) -> Result<()> {
        if e.sys != self.id {
            return Err(Error::SystemMismatch);
        }
        Ok(())
    }

    /// Wrap letters that are already known to be a shortlex-least reduced
    /// word.  Used by backends with their own normal forms; debug builds
    /// re-check the claim.
    pub(crate) fn elem_from_canonical(&self, letters: Vec<u8>) -> Elem {
        debug_assert_eq!(
            self.reduce_slice(&letters).expect("canonical word reduces").letters,
            letters,
            "letters were not in canonical form"
        );
        Elem { sys: self.id, letters }
    }

    // --- word problem -----------------------------------------------------

    /// Reduce a word to the canonical (shortlex-least reduced) element.
    pub fn reduce(&self, word: &Word) -> Result<Elem> {
        self.reduce_slice(&word.0)
    }

    pub(crate) fn reduce_slice(&self, letters: &[u8]) -> Result<Elem> {
        for &l in letters {
            self.check_letter(l as usize)?;
        }
        let mut w = cancel_adjacent(letters.to_vec());
        loop {
            let closure = self.braid_closure(&w)?;
            let mut shorter: Option<Vec<u8>> = None;
            for cand in &closure {
                if let Some(i) = adjacent_equal_at(cand) {
                    let mut v = cand.clone();
                    v.drain(i..i + 2);
                    shorter = Some(cancel_adjacent(v));
                    break;
                }
            }
            match shorter {
                Some(v) => w = v,
                None => {
                    let least = closure.into_iter().next().expect("closure contains the word");
                    return Ok(Elem { sys: self.id, letters: least });
                }
            }
        }
    }

    /// All words reachable from `w` by braid moves alone (same length).
    /// For a reduced input this is exactly the set of its reduced words.
    pub(crate) fn braid_closure(&self, w: &[u8]) -> Result<BTreeSet<Vec<u8>>> {
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        seen.insert(w.to_vec());
        let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
        queue.push_back(w.to_vec());
        let mut scratch = Vec::new();
        while let Some(cur) = queue.pop_front() {
            scratch.clear();
            self.braid_neighbors(&cur, &mut scratch);
            for nb in scratch.drain(..) {
                if seen.insert(nb.clone()) {
                    if seen.len() > self.braid_cap {
                        return Err(Error::BraidCapExceeded { cap: self.braid_cap });
                    }
                    queue.push_back(nb);
                }
            }
        }
        Ok(seen)
    }

    fn braid_neighbors(&self, w: &[u8], out: &mut Vec<Vec<u8>>) {
        for i in 0..w.len().saturating_sub(1) {
            let a = w[i];
            let b = w[i + 1];
            if a == b {
                continue;
            }
            if let Bond::Finite(m) = self.bond(a as usize, b as usize) {
                let m = m as usize;
                if i + m > w.len() {
                    continue;
                }
                let alternates = (0..m).all(|t| w[i + t] == if t % 2 == 0 { a } else { b });
                if alternates {
                    let mut v = w.to_vec();
                    for t in 0..m {
                        v[i + t] = if t % 2 == 0 { b } else { a };
                    }
                    out.push(v);
                }
            }
        }
    }

    /// All reduced words of an element (the braid closure of its canonical word).
    pub fn reduced_words(&self, e: &Elem) -> Result<Vec<Word>> {
        self.check_elem(e)?;
        Ok(self
            .braid_closure(&e.letters)?
            .into_iter()
            .map(Word)
            .collect())
    }

    pub fn is_reduced(&self, word: &Word) -> Result<bool> {
        Ok(self.reduce(word)?.len() == word.len())
    }

    /// All elements of length at most `max_len`, in shortlex order.
    ///
    /// Grows level by level, so finite groups saturate early and the cost is
    /// proportional to the ball actually enumerated.
    pub fn elements_up_to(&self, max_len: usize) -> Result<Vec<Elem>> {
        let mut out = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        for _ in 0..max_len {
            let mut next = BTreeSet::new();
            for e in &frontier {
                for s in 0..self.rank() as u8 {
                    let mut letters = e.letters.clone();
                    letters.push(s);
                    let f = self.reduce_slice(&letters)?;
                    if f.len() == e.len() + 1 {
                        next.insert(f);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        Ok(out)
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        let mut letters = a.letters.clone();
        letters.extend_from_slice(&b.letters);
        self.reduce_slice(&letters)
    }

    pub fn invert(&self, a: &Elem) -> Result<Elem> {
        self.check_elem(a)?;
        let letters: Vec<u8> = a.letters.iter().rev().copied().collect();
        // The reversal of a reduced word is reduced; this call only picks the
        // shortlex-least representative.
        self.reduce_slice(&letters)
    }

    /// The reflection `u s u⁻¹`.
    pub fn reflection(&self, u: &Elem, s: usize) -> Result<Elem> {
        self.check_elem(u)?;
        self.check_letter(s)?;
        let mut letters = u.letters.clone();
        letters.push(s as u8);
        letters.extend(u.letters.iter().rev().copied());
        self.reduce_slice(&letters)
    }

    /// Gallery-metric distance `|x⁻¹ y|` between two elements.
    pub fn distance(&self, a: &Elem, b: &Elem) -> Result<usize> {
        Ok(self.multiply(&self.invert(a)?, b)?.len())
    }

    // --- orders -----------------------------------------------------------

    /// Order of an element, with exact infinitude certificates where available.
    ///
    /// Certificates, tried in this sequence:
    /// 1. all bonds in {2, 3, ∞}: the integral geometric representation
    ///    decides the order exactly (reduction mod 3 is injective on
    ///    finite-order integer matrices);
    /// 2. the reduced word is supported on a single infinite bond: even
    ///    length means infinite order in that infinite dihedral subgroup;
    /// 3. power iteration up to `cap`, else `UnknownBeyond(cap)`.
    pub fn order_of(&self, a: &Elem, cap: u64) -> Result<OrderResult> {
        self.check_elem(a)?;
        if a.is_identity() {
            return Ok(OrderResult::Finite(1));
        }
        if let Some(res) = geom::order_from_matrix(self, &a.letters) {
            return Ok(res);
        }
        let support: Vec<u8> = a.support().into_iter().collect();
        if support.len() == 2 && self.bond(support[0] as usize, support[1] as usize).is_infinite()
        {
            // Inside the infinite dihedral subgroup on this pair, elements of
            // even reduced length are nontrivial translations or identity
            // (identity was excluded), and odd length means a reflection.
            return Ok(if a.len() % 2 == 0 {
                OrderResult::InfiniteCertified
            } else {
                OrderResult::Finite(2)
            });
        }
        let mut acc = a.clone();
        for n in 2..=cap {
            acc = self.multiply(&acc, a)?;
            if acc.is_identity() {
                return Ok(OrderResult::Finite(n));
            }
        }
        Ok(OrderResult::UnknownBeyond(cap))
    }

    // --- diagram ----------------------------------------------------------

    pub fn decompose_diagram(&self) -> DiagramDecomposition {
        diagram::decompose(self)
    }

    /// Union of the finite diagram components, if any.
    pub fn finite_factor(&self) -> Option<Vec<usize>> {
        let mut gens = Vec::new();
        for comp in self.decompose_diagram().components {
            if comp.finite.is_some() {
                gens.extend(comp.gens);
            }
        }
        if gens.is_empty() {
            None
        } else {
            gens.sort_unstable();
            Some(gens)
        }
    }

    /// Enumerate the standard subgroup spanned by `gens`, which must induce a
    /// finite-type subdiagram.  Returns the elements (sorted shortlex) and
    /// the maximal reduced length over the subgroup.
    pub fn enumerate_subgroup(&self, gens: &[usize], cap: usize) -> Result<(Vec<Elem>, usize)> {
        for &g in gens {
            self.check_letter(g)?;
        }
        let sub = self.matrix.restrict(gens)?;
        let sub_sys = CoxeterSystem::new(sub);
        let all_finite = sub_sys
            .decompose_diagram()
            .components
            .iter()
            .all(|c| c.finite.is_some());
        if !all_finite {
            return Err(Error::SubgroupNotFinite {
                gens: gens.iter().map(|&g| self.names[g].clone()).collect(),
            });
        }
        let mut seen: BTreeSet<Elem> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for &g in gens {
                    let f = self.multiply(e, &self.generator(g)?)?;
                    if seen.insert(f.clone()) {
                        if seen.len() > cap {
                            return Err(Error::SubgroupCapExceeded { cap });
                        }
                        next.push(f);
                    }
                }
            }
            frontier = next;
        }
        let max_len = seen.iter().map(Elem::len).max().unwrap_or(0);
        Ok((seen.into_iter().collect(), max_len))
    }

    // --- parsing and display ----------------------------------------------

    /// Parse a word: either whitespace/`·`-separated generator names, or a
    /// plain concatenation when every name is a single character.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "ε" || trimmed == "e" || trimmed == "1" {
            return Ok(Word::empty());
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c.is_whitespace() || c == '·' || c == '*' || c == '.')
            .filter(|t| !t.is_empty())
            .collect();
        let mut letters = Vec::new();
        if tokens.len() == 1 && self.names.iter().all(|n| n.chars().count() == 1) {
            let single = self.index_of(tokens[0]);
            if let Ok(i) = single {
                return Ok(Word(vec![i as u8]));
            }
            for ch in tokens[0].chars() {
                letters.push(self.index_of(&ch.to_string())? as u8);
            }
        } else {
            for t in tokens {
                letters.push(self.index_of(t)? as u8);
            }
        }
        Ok(Word(letters))
    }

    /// Render letters with this system's generator names; `ε` for the empty word.
    pub fn display_word(&self, letters: &[u8]) -> String {
        if letters.is_empty() {
            return "ε".into();
        }
        let compact = self.names.iter().all(|n| n.chars().count() == 1);
        let sep = if compact { "" } else { " " };
        letters
            .iter()
            .map(|&l| self.names[l as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn display(&self, e: &Elem) -> String {
        self.display_word(&e.letters)
    }
}

/// Delete adjacent equal pairs until none remain (stack pass).
fn cancel_adjacent(letters: Vec<u8>) -> Vec<u8> {
    let mut stack: Vec<u8> = Vec::with_capacity(letters.len());
    for l in letters {
        if stack.last() == Some(&l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

fn adjacent_equal_at(w: &[u8]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&i| w[i] == w[i + 1])
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dinf() -> CoxeterSystem {
        CoxeterSystem::dihedral(Bond::Infinite, "r", "s")
    }

    fn s3() -> CoxeterSystem {
        CoxeterSystem::dihedral(Bond::Finite(3), "r", "s")
    }

    fn c2xc2() -> CoxeterSystem {
        CoxeterSystem::dihedral(Bond::Finite(2), "r", "s")
    }

    /// Rank 3: t commutes with r and s, bond(r, s) = ∞.
    fn rank3_right_angled() -> CoxeterSystem {
        let m = CoxeterMatrix::from_entries(3, &[(1, 2, Bond::Infinite)]).unwrap();
        CoxeterSystem::with_names(m, vec!["t".into(), "r".into(), "s".into()]).unwrap()
    }

    fn a3() -> CoxeterSystem {
        let m = CoxeterMatrix::from_entries(
            3,
            &[(0, 1, Bond::Finite(3)), (1, 2, Bond::Finite(3))],
        )
        .unwrap();
        CoxeterSystem::with_names(m, vec!["a".into(), "b".into(), "c".into()]).unwrap()
    }

    #[test]
    fn square_cancels() {
        let sys = dinf();
        let e = sys.reduce(&Word(vec![0, 0])).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn braid_move_shortens_in_s3() {
        // rsrs = sr when (rs)³ = 1.
        let sys = s3();
        let e = sys.reduce(&Word(vec![0, 1, 0, 1])).unwrap();
        assert_eq!(e.letters(), &[1, 0]);
        assert_eq!(sys.display(&e), "sr");
    }

    #[test]
    fn infinite_bond_words_stay_reduced() {
        let sys = dinf();
        let e = sys.reduce(&Word(vec![0, 1, 0, 1])).unwrap();
        assert_eq!(e.letters(), &[0, 1, 0, 1]);
    }

    #[test]
    fn commuting_letters_sort_to_shortlex() {
        let sys = c2xc2();
        let e = sys.reduce(&Word(vec![1, 0])).unwrap();
        assert_eq!(e.letters(), &[0, 1]);
    }

    #[test]
    fn multiply_and_invert() {
        let sys = dinf();
        let rs = sys.reduce(&Word(vec![0, 1])).unwrap();
        let rsrs = sys.multiply(&rs, &rs).unwrap();
        assert_eq!(rsrs.letters(), &[0, 1, 0, 1]);
        let inv = sys.invert(&rs).unwrap();
        assert_eq!(inv.letters(), &[1, 0]);
        assert!(sys.multiply(&rs, &inv).unwrap().is_identity());
    }

    #[test]
    fn invert_reverses_three_letters() {
        let sys = rank3_right_angled();
        // Word "t r s" (all distinct, t commutes with both).
        let e = sys.reduce(&Word(vec![0, 1, 2])).unwrap();
        let inv = sys.invert(&e).unwrap();
        // (trs)⁻¹ = srt, canonically written with t shuffled forward past s? t
        // commutes with s and r, so shortlex-least is t first.
        assert_eq!(
            sys.multiply(&e, &inv).unwrap(),
            sys.identity()
        );
        assert_eq!(inv.len(), 3);
    }

    #[test]
    fn reflection_examples() {
        let sys = dinf();
        let eps = sys.identity();
        let s = sys.reflection(&eps, 1).unwrap();
        assert_eq!(s.letters(), &[1]);
        let r = sys.generator(0).unwrap();
        let rsr = sys.reflection(&r, 1).unwrap();
        assert_eq!(rsr.letters(), &[0, 1, 0]);
        // Reflections square to the identity.
        assert!(sys.multiply(&rsr, &rsr).unwrap().is_identity());
    }

    #[test]
    fn element_arithmetic_rejects_foreign_elements() {
        let a = dinf();
        let b = s3();
        let e = b.generator(0).unwrap();
        assert!(matches!(
            a.multiply(&a.identity(), &e),
            Err(Error::SystemMismatch)
        ));
    }

    #[test]
    fn letters_out_of_range_rejected() {
        let sys = dinf();
        assert!(matches!(
            sys.reduce(&Word(vec![7])),
            Err(Error::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn orders() {
        let sys = dinf();
        let r = sys.generator(0).unwrap();
        assert_eq!(sys.order_of(&r, 64).unwrap(), OrderResult::Finite(2));
        let rs = sys.reduce(&Word(vec![0, 1])).unwrap();
        assert_eq!(sys.order_of(&rs, 64).unwrap(), OrderResult::InfiniteCertified);

        let sys3 = s3();
        let rs3 = sys3.reduce(&Word(vec![0, 1])).unwrap();
        assert_eq!(sys3.order_of(&rs3, 64).unwrap(), OrderResult::Finite(3));

        let sys2 = c2xc2();
        let rs2 = sys2.reduce(&Word(vec![0, 1])).unwrap();
        assert_eq!(sys2.order_of(&rs2, 64).unwrap(), OrderResult::Finite(2));
    }

    #[test]
    fn order_of_identity_is_one() {
        let sys = s3();
        assert_eq!(
            sys.order_of(&sys.identity(), 64).unwrap(),
            OrderResult::Finite(1)
        );
    }

    #[test]
    fn odd_dihedral_elements_are_reflections() {
        let sys = dinf();
        let rsr = sys.reduce(&Word(vec![0, 1, 0])).unwrap();
        assert_eq!(sys.order_of(&rsr, 64).unwrap(), OrderResult::Finite(2));
    }

    #[test]
    fn power_iteration_handles_pentagon() {
        // I2(5) is outside the small-bond certificates; iteration finds order 5.
        let sys = CoxeterSystem::dihedral(Bond::Finite(5), "r", "s");
        let rs = sys.reduce(&Word(vec![0, 1])).unwrap();
        assert_eq!(sys.order_of(&rs, 64).unwrap(), OrderResult::Finite(5));
    }

    #[test]
    fn unknown_order_reported_honestly() {
        // I2(7): rs has order 7, but with cap 3 and no certificate the
        // computation must admit ignorance rather than guess.
        let sys = CoxeterSystem::dihedral(Bond::Finite(7), "r", "s");
        let rs = sys.reduce(&Word(vec![0, 1])).unwrap();
        assert_eq!(sys.order_of(&rs, 3).unwrap(), OrderResult::UnknownBeyond(3));
    }

    #[test]
    fn subgroup_enumeration() {
        let sys = rank3_right_angled();
        let (elems, max_len) = sys.enumerate_subgroup(&[0], 100).unwrap();
        assert_eq!(elems.len(), 2);
        assert_eq!(max_len, 1);

        let sys3 = a3();
        let (elems, max_len) = sys3.enumerate_subgroup(&[0, 1], 100).unwrap();
        assert_eq!(elems.len(), 6);
        assert_eq!(max_len, 3);

        let (all, longest) = sys3.enumerate_subgroup(&[0, 1, 2], 100).unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(longest, 6);
    }

    #[test]
    fn subgroup_enumeration_rejects_infinite_span() {
        let sys = rank3_right_angled();
        assert!(matches!(
            sys.enumerate_subgroup(&[1, 2], 100),
            Err(Error::SubgroupNotFinite { .. })
        ));
    }

    #[test]
    fn braid_cap_is_a_hard_error() {
        let mut sys = a3();
        sys.set_braid_cap(2);
        // The longest element of A3 has 16 reduced words; cap 2 must trip.
        let w = Word(vec![0, 1, 0, 2, 1, 0]);
        assert!(matches!(
            sys.reduce(&w),
            Err(Error::BraidCapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let sys = dinf();
        let w = sys.parse_word("rsr").unwrap();
        assert_eq!(w.letters(), &[0, 1, 0]);
        let e = sys.reduce(&w).unwrap();
        assert_eq!(sys.display(&e), "rsr");
        assert_eq!(sys.parse_word("ε").unwrap(), Word::empty());
        assert_eq!(sys.parse_word("r s r").unwrap().letters(), &[0, 1, 0]);
    }

    #[test]
    fn distance_is_word_length_of_quotient() {
        let sys = dinf();
        let r = sys.generator(0).unwrap();
        let rs = sys.reduce(&Word(vec![0, 1])).unwrap();
        assert_eq!(sys.distance(&r, &rs).unwrap(), 1);
        assert_eq!(sys.distance(&rs, &r).unwrap(), 1);
        assert_eq!(sys.distance(&r, &r).unwrap(), 0);
    }

    #[test]
    fn reduced_words_of_longest_a2_element() {
        let sys = s3();
        let w0 = sys.reduce(&Word(vec![0, 1, 0])).unwrap();
        let words = sys.reduced_words(&w0).unwrap();
        assert_eq!(words.len(), 2); // rsr and srs
    }
}
