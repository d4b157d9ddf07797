//! Chamber systems carrying a Weyl-group-valued distance.
//!
//! A [`Building`] is a set of chambers indexed over the generators of a
//! [`CoxeterSystem`]: for every generator `s`, the chambers split into
//! *panels* (mutual `s`-adjacency classes), and any two chambers are joined
//! by galleries whose types multiply out to a well-defined group element
//! `δ(x, y)`.  The axioms relating panels, galleries and `δ` are not assumed:
//! [`Building::verify`] checks them exhaustively on a ball, and everything
//! downstream (apartments, walls, quotients, dynamics) only relies on the
//! checked operations exposed here.
//!
//! Four backends cover the inputs the crate works with:
//!
//! * **Thin** — the Cayley ball of the group itself, `δ(x, y) = x⁻¹y`; every
//!   panel has exactly two chambers.
//! * **Graph product** — chambers are normal forms of a graph product of
//!   finite cyclic groups, materialized lazily around the identity; panels
//!   are vertex-group cosets, so their degrees equal the vertex group sizes.
//! * **Explicit** — a finite list of named chambers with panel partitions
//!   given outright, optionally truncated at a stated horizon.
//! * **Product** — tuples of chambers of two or more factors with the
//!   product metric.
//!
//! Lazy backends are materialized on demand but only inside a *horizon*: a
//! radius around the base chamber within which every panel is complete.  The
//! [`Building::safe_len`] of a chamber says how many further steps may be
//! taken from it without leaving the horizon; operations that would need more
//! room fail with [`Error::HorizonExceeded`] rather than ever returning a
//! truncated panel or a wrong distance.

pub mod gp;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::coxeter::{CoxeterSystem, Elem};
use crate::error::{Error, Result};
use crate::report::Report;

use gp::{GpContext, Syl};

/// Safe length reported for chambers of a complete (horizon-free) building.
const UNBOUNDED: u32 = u32::MAX / 2;

/// Identifier of a materialized chamber.
///
/// Ids are dense indices into the interning table of one [`Building`]; they
/// are meaningless across buildings.  Equal chambers always receive equal
/// ids because every backend interns a canonical key.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChamberId(pub u32);

impl fmt::Display for ChamberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A walk through pairwise-adjacent chambers, one type letter per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gallery {
    pub chambers: Vec<ChamberId>,
    pub letters: Vec<u8>,
}

impl Gallery {
    pub fn trivial(start: ChamberId) -> Self {
        Gallery {
            chambers: vec![start],
            letters: Vec::new(),
        }
    }

    pub fn start(&self) -> ChamberId {
        self.chambers[0]
    }

    pub fn end(&self) -> ChamberId {
        *self.chambers.last().expect("galleries are nonempty")
    }

    /// Number of steps (one less than the number of chambers).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// All chambers mutually adjacent along one letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Panel {
    pub letter: u8,
    /// Member chambers in canonical order.
    pub chambers: Vec<ChamberId>,
}

impl Panel {
    pub fn degree(&self) -> usize {
        self.chambers.len()
    }

    /// Degree at least three: the panel offers a genuine choice of chamber.
    pub fn is_branching(&self) -> bool {
        self.chambers.len() >= 3
    }

    pub fn contains(&self, c: ChamberId) -> bool {
        self.chambers.contains(&c)
    }

    /// Members other than `c`, in canonical order.
    pub fn others(&self, c: ChamberId) -> Vec<ChamberId> {
        self.chambers.iter().copied().filter(|&d| d != c).collect()
    }
}

/// Canonical interning key of a chamber, one form per backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    /// Thin: canonical (shortlex-least reduced) word of a group element.
    Word(Vec<u8>),
    /// Graph product: canonical syllable normal form.
    Gp(Vec<Syl>),
    /// Explicit: index into the stored chamber list.
    Ext(u32),
    /// Product: one factor chamber per coordinate.
    Tuple(Vec<ChamberId>),
}

enum Backend {
    Thin,
    GraphProduct {
        gp: GpContext,
        vertex_names: Vec<String>,
    },
    Explicit {
        names: Vec<String>,
        index_of_name: HashMap<String, u32>,
        /// `class_of[s][i]` = index of the `s`-panel class containing chamber `i`.
        class_of: Vec<Vec<u32>>,
        /// `classes[s][k]` = sorted member list of the `k`-th `s`-panel class.
        classes: Vec<Vec<Vec<u32>>>,
        /// Gallery distance from the base chamber.
        depth: Vec<u32>,
        base: u32,
    },
    Product {
        factors: Vec<Arc<Building>>,
        /// First generator index of each factor in the combined system.
        offsets: Vec<usize>,
    },
}

#[derive(Default)]
struct Inner {
    keys: Vec<Key>,
    index: HashMap<Key, u32>,
}

/// A chamber system over a Coxeter system, materialized inside a horizon.
pub struct Building {
    sys: Arc<CoxeterSystem>,
    backend: Backend,
    /// `None` for complete buildings; otherwise panels are only guaranteed
    /// for chambers at depth strictly below the horizon.
    horizon: Option<u32>,
    /// Hard cap on the number of materialized chambers.
    budget: usize,
    inner: Mutex<Inner>,
}

impl fmt::Debug for Building {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Building")
            .field("rank", &self.sys.rank())
            .field("horizon", &self.horizon)
            .field("chambers", &self.chamber_count())
            .finish()
    }
}

fn product_letter(offsets: &[usize], s: u8) -> (usize, u8) {
    let mut fi = 0;
    while fi + 1 < offsets.len() && (s as usize) >= offsets[fi + 1] {
        fi += 1;
    }
    (fi, s - offsets[fi] as u8)
}

impl Building {
    // --- constructors -----------------------------------------------------

    /// The Cayley ball of radius `radius` of the group itself.
    ///
    /// Chambers are group elements, `s`-panels are the pairs `{w, ws}`.  The
    /// ball is materialized eagerly, level by level in shortlex order, so
    /// chamber ids enumerate the ball canonically.  If the group is exhausted
    /// within the radius the building is marked complete.
    pub fn thin(sys: CoxeterSystem, radius: u32, budget: usize) -> Result<Arc<Building>> {
        let sys = Arc::new(sys);
        let b = Building {
            sys: sys.clone(),
            backend: Backend::Thin,
            horizon: Some(radius),
            budget,
            inner: Mutex::new(Inner::default()),
        };
        b.intern(Key::Word(Vec::new()))?;
        let mut frontier = vec![sys.identity()];
        let mut saturated = false;
        let mut level = 0u32;
        // One level beyond the radius is probed (but not interned) so that a
        // group exhausted exactly at the radius is still marked complete.
        while level <= radius {
            let mut next = BTreeSet::new();
            for e in &frontier {
                for s in 0..sys.rank() as u8 {
                    let mut letters = e.letters().to_vec();
                    letters.push(s);
                    let f = sys.reduce_slice(&letters)?;
                    if f.len() == e.len() + 1 {
                        next.insert(f);
                    }
                }
            }
            if next.is_empty() {
                saturated = true;
                break;
            }
            if level == radius {
                break;
            }
            level += 1;
            frontier = next.into_iter().collect();
            for e in &frontier {
                b.intern(Key::Word(e.letters().to_vec()))?;
            }
        }
        let mut b = b;
        if saturated {
            b.horizon = None;
        }
        Ok(Arc::new(b))
    }

    /// Building of a graph product of finite cyclic groups.
    ///
    /// The system's Coxeter matrix must have all bonds equal to 2 or ∞; bond
    /// 2 means the two vertex groups commute.  Chambers are group elements in
    /// syllable normal form, `s`-panels are cosets of the vertex group at
    /// `s`, so every `s`-panel has degree `sizes[s]`.  Materialization is
    /// lazy within the given radius unless the group is finite (all vertex
    /// groups commute), in which case the whole group is materialized and
    /// the building is complete.
    pub fn graph_product(
        sys: CoxeterSystem,
        sizes: Vec<u32>,
        vertex_names: Vec<String>,
        radius: u32,
        budget: usize,
    ) -> Result<Arc<Building>> {
        let gp = GpContext::new(sys.matrix().clone(), sizes)?;
        if vertex_names.len() != sys.rank() {
            return Err(Error::MalformedExplicit {
                reason: format!(
                    "expected {} vertex group generator names, got {}",
                    sys.rank(),
                    vertex_names.len()
                ),
            });
        }
        let mut seen = BTreeSet::new();
        for n in &vertex_names {
            let bad = n.is_empty()
                || n.chars()
                    .any(|c| c.is_whitespace() || c.is_ascii_digit() || "|^·*.".contains(c));
            if bad {
                return Err(Error::MalformedExplicit {
                    reason: format!("vertex group generator name {n:?} is not usable"),
                });
            }
            if !seen.insert(n.clone()) {
                return Err(Error::MalformedExplicit {
                    reason: format!("duplicate vertex group generator name {n:?}"),
                });
            }
        }
        let finite = gp.is_finite_group();
        let sizes = gp.sizes.clone();
        let b = Building {
            sys: Arc::new(sys),
            backend: Backend::GraphProduct { gp, vertex_names },
            horizon: if finite { None } else { Some(radius) },
            budget,
            inner: Mutex::new(Inner::default()),
        };
        if finite {
            let total: u64 = sizes.iter().map(|&n| n as u64).product();
            if total > budget as u64 {
                return Err(Error::ChamberBudgetExceeded { cap: budget });
            }
            // All vertex groups commute, so the canonical form of an element
            // is its exponent vector with zero entries dropped, syllables in
            // vertex order.
            let mut elems: Vec<Vec<Syl>> = vec![Vec::new()];
            for (v, &size) in sizes.iter().enumerate() {
                let mut bigger = Vec::with_capacity(elems.len() * size as usize);
                for base in &elems {
                    for e in 0..size {
                        let mut w = base.clone();
                        if e > 0 {
                            w.push((v as u8, e));
                        }
                        bigger.push(w);
                    }
                }
                elems = bigger;
            }
            elems.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            for e in elems {
                b.intern(Key::Gp(e))?;
            }
        } else {
            b.intern(Key::Gp(Vec::new()))?;
        }
        Ok(Arc::new(b))
    }

    /// Building given by an explicit chamber list and panel partitions.
    ///
    /// `classes_by_letter[s]` lists the `s`-panel classes as chamber index
    /// lists; chambers not mentioned form singleton classes (these fail
    /// verification if they sit inside the horizon, but may legitimately
    /// occur at the boundary of a truncated building).  `horizon = None`
    /// asserts the building is complete.  Every chamber must be reachable
    /// from the base along panels.
    pub fn explicit(
        sys: CoxeterSystem,
        names: Vec<String>,
        classes_by_letter: Vec<Vec<Vec<u32>>>,
        base: u32,
        horizon: Option<u32>,
        budget: usize,
    ) -> Result<Arc<Building>> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedExplicit {
                reason: "a building needs at least one chamber".into(),
            });
        }
        if n > budget {
            return Err(Error::ChamberBudgetExceeded { cap: budget });
        }
        let mut index_of_name = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains('|') {
                return Err(Error::MalformedExplicit {
                    reason: format!("chamber name {name:?} is empty or contains '|'"),
                });
            }
            if index_of_name.insert(name.clone(), i as u32).is_some() {
                return Err(Error::MalformedExplicit {
                    reason: format!("duplicate chamber name {name:?}"),
                });
            }
        }
        if classes_by_letter.len() != sys.rank() {
            return Err(Error::MalformedExplicit {
                reason: format!(
                    "expected panel classes for {} generators, got {}",
                    sys.rank(),
                    classes_by_letter.len()
                ),
            });
        }
        if base as usize >= n {
            return Err(Error::MalformedExplicit {
                reason: format!("base chamber index {base} out of range"),
            });
        }
        let mut class_of: Vec<Vec<u32>> = Vec::with_capacity(sys.rank());
        let mut classes: Vec<Vec<Vec<u32>>> = Vec::with_capacity(sys.rank());
        for (s, listed) in classes_by_letter.into_iter().enumerate() {
            let mut assignment: Vec<Option<u32>> = vec![None; n];
            let mut cls: Vec<Vec<u32>> = Vec::new();
            for mut members in listed {
                members.sort_unstable();
                let before = members.len();
                members.dedup();
                if members.len() != before {
                    return Err(Error::MalformedExplicit {
                        reason: format!("a panel class for generator {s} repeats a chamber"),
                    });
                }
                if members.is_empty() {
                    return Err(Error::MalformedExplicit {
                        reason: format!("empty panel class for generator {s}"),
                    });
                }
                let k = cls.len() as u32;
                for &i in &members {
                    if i as usize >= n {
                        return Err(Error::MalformedExplicit {
                            reason: format!("panel class for generator {s} mentions chamber {i}, out of range"),
                        });
                    }
                    if assignment[i as usize].is_some() {
                        return Err(Error::MalformedExplicit {
                            reason: format!(
                                "chamber {:?} appears in two panel classes for generator {s}",
                                names[i as usize]
                            ),
                        });
                    }
                    assignment[i as usize] = Some(k);
                }
                cls.push(members);
            }
            for i in 0..n {
                if assignment[i].is_none() {
                    assignment[i] = Some(cls.len() as u32);
                    cls.push(vec![i as u32]);
                }
            }
            class_of.push(assignment.into_iter().map(|a| a.unwrap()).collect());
            classes.push(cls);
        }
        // Depth of every chamber from the base; panels are cliques.
        let mut depth = vec![u32::MAX; n];
        depth[base as usize] = 0;
        let mut queue = VecDeque::from([base]);
        while let Some(c) = queue.pop_front() {
            let d = depth[c as usize];
            for s in 0..sys.rank() {
                for &m in &classes[s][class_of[s][c as usize] as usize] {
                    if depth[m as usize] == u32::MAX {
                        depth[m as usize] = d + 1;
                        queue.push_back(m);
                    }
                }
            }
        }
        if depth.iter().any(|&d| d == u32::MAX) {
            return Err(Error::Disconnected);
        }
        let b = Building {
            sys: Arc::new(sys),
            backend: Backend::Explicit {
                names,
                index_of_name,
                class_of,
                classes,
                depth,
                base,
            },
            horizon,
            budget,
            inner: Mutex::new(Inner::default()),
        };
        for i in 0..n as u32 {
            b.intern(Key::Ext(i))?;
        }
        Ok(Arc::new(b))
    }

    /// Product of two or more buildings.
    ///
    /// Chambers are tuples, the combined system is the direct sum of the
    /// factor systems (generator names must stay distinct), and distances
    /// add coordinatewise: `δ((x₁,x₂),(y₁,y₂)) = δ₁(x₁,y₁)·δ₂(x₂,y₂)`.
    pub fn product(factors: Vec<Arc<Building>>, budget: usize) -> Result<Arc<Building>> {
        if factors.len() < 2 {
            return Err(Error::MalformedExplicit {
                reason: "a product building needs at least two factors".into(),
            });
        }
        let mut names: Vec<String> = factors[0].sys.names().to_vec();
        let mut matrix = factors[0].sys.matrix().clone();
        for f in &factors[1..] {
            matrix = matrix.direct_sum(f.sys.matrix());
            names.extend(f.sys.names().iter().cloned());
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(Error::ProductNameCollision { name: name.clone() });
            }
        }
        for f in &factors {
            if f.names_contain_pipe() {
                return Err(Error::MalformedExplicit {
                    reason: "factor chamber names must not contain '|'".into(),
                });
            }
        }
        let mut sys = CoxeterSystem::with_names(matrix, names)?;
        let cap = factors.iter().map(|f| f.sys.braid_cap()).max().unwrap();
        sys.set_braid_cap(cap);
        let mut offsets = Vec::with_capacity(factors.len());
        let mut acc = 0usize;
        for f in &factors {
            offsets.push(acc);
            acc += f.sys.rank();
        }
        let mut horizon = None;
        for f in &factors {
            if let Some(h) = f.horizon {
                horizon = Some(horizon.map_or(h, |x: u32| x.min(h)));
            }
        }
        let bases: Vec<ChamberId> = factors.iter().map(|f| f.base()).collect();
        let b = Building {
            sys: Arc::new(sys),
            backend: Backend::Product { factors, offsets },
            horizon,
            budget,
            inner: Mutex::new(Inner::default()),
        };
        b.intern(Key::Tuple(bases))?;
        Ok(Arc::new(b))
    }

    // --- basic accessors --------------------------------------------------

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.sys
    }

    /// `None` for complete buildings, otherwise the materialization radius.
    pub fn horizon(&self) -> Option<u32> {
        self.horizon
    }

    pub fn is_complete(&self) -> bool {
        self.horizon.is_none()
    }

    /// Number of chambers materialized so far.
    pub fn chamber_count(&self) -> usize {
        self.inner.lock().unwrap().keys.len()
    }

    /// The chamber everything is measured from (identity for group-like
    /// backends, the stored base for explicit ones).
    pub fn base(&self) -> ChamberId {
        match &self.backend {
            Backend::Explicit { base, .. } => ChamberId(*base),
            _ => ChamberId(0),
        }
    }

    /// The factor buildings, if this is a product.
    pub fn factors(&self) -> Option<&[Arc<Building>]> {
        match &self.backend {
            Backend::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    fn check_letter(&self, s: u8) -> Result<()> {
        if (s as usize) < self.sys.rank() {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter: s as usize,
                rank: self.sys.rank(),
            })
        }
    }

    fn intern(&self, key: Key) -> Result<ChamberId> {
        let mut inner = self.inner.lock().unwrap();
        if let Some(&i) = inner.index.get(&key) {
            return Ok(ChamberId(i));
        }
        if inner.keys.len() >= self.budget {
            return Err(Error::ChamberBudgetExceeded { cap: self.budget });
        }
        let i = inner.keys.len() as u32;
        inner.keys.push(key.clone());
        inner.index.insert(key, i);
        Ok(ChamberId(i))
    }

    fn key_of(&self, c: ChamberId) -> Result<Key> {
        let inner = self.inner.lock().unwrap();
        inner
            .keys
            .get(c.0 as usize)
            .cloned()
            .ok_or(Error::UnknownChamber(c.0))
    }

    // --- depth, horizon, ordering -----------------------------------------

    /// Gallery distance from the base chamber.
    pub fn depth(&self, c: ChamberId) -> Result<u32> {
        let key = self.key_of(c)?;
        match (&self.backend, &key) {
            (Backend::Thin, Key::Word(w)) => Ok(w.len() as u32),
            (Backend::GraphProduct { .. }, Key::Gp(sy)) => Ok(sy.len() as u32),
            (Backend::Explicit { depth, .. }, Key::Ext(i)) => Ok(depth[*i as usize]),
            (Backend::Product { factors, .. }, Key::Tuple(parts)) => {
                let mut d = 0u32;
                for (f, &id) in factors.iter().zip(parts) {
                    d += f.depth(id)?;
                }
                Ok(d)
            }
            _ => unreachable!("interned key always matches the backend"),
        }
    }

    /// How many gallery steps may be taken from `c` with all panels along
    /// the way guaranteed complete.
    pub fn safe_len(&self, c: ChamberId) -> Result<u32> {
        if let Backend::Product { factors, .. } = &self.backend {
            let Key::Tuple(parts) = self.key_of(c)? else {
                unreachable!("interned key always matches the backend")
            };
            let mut m = UNBOUNDED;
            for (f, &id) in factors.iter().zip(&parts) {
                m = m.min(f.safe_len(id)?);
            }
            return Ok(m);
        }
        match self.horizon {
            None => Ok(UNBOUNDED),
            Some(h) => Ok(h.saturating_sub(self.depth(c)?)),
        }
    }

    fn cmp_keys(&self, a: &Key, b: &Key) -> Ordering {
        match (a, b) {
            (Key::Word(x), Key::Word(y)) => x.len().cmp(&y.len()).then_with(|| x.cmp(y)),
            (Key::Gp(x), Key::Gp(y)) => x.len().cmp(&y.len()).then_with(|| x.cmp(y)),
            (Key::Ext(x), Key::Ext(y)) => x.cmp(y),
            (Key::Tuple(x), Key::Tuple(y)) => {
                let Backend::Product { factors, .. } = &self.backend else {
                    unreachable!("tuple keys only occur in product buildings")
                };
                for (f, (&xi, &yi)) in factors.iter().zip(x.iter().zip(y.iter())) {
                    let o = f
                        .cmp_chambers(xi, yi)
                        .expect("factor chambers of interned product keys exist");
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
            _ => unreachable!("keys of one building share a backend"),
        }
    }

    /// Canonical order on chambers: shortlex for group-like backends, list
    /// order for explicit ones, lexicographic by coordinate for products.
    pub fn cmp_chambers(&self, a: ChamberId, b: ChamberId) -> Result<Ordering> {
        let ka = self.key_of(a)?;
        let kb = self.key_of(b)?;
        Ok(self.cmp_keys(&ka, &kb))
    }

    fn sort_ids(&self, ids: &mut [ChamberId]) -> Result<()> {
        let mut keyed: Vec<(Key, ChamberId)> = ids
            .iter()
            .map(|&c| Ok((self.key_of(c)?, c)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|x, y| self.cmp_keys(&x.0, &y.0));
        for (slot, (_, c)) in ids.iter_mut().zip(keyed) {
            *slot = c;
        }
        Ok(())
    }

    // --- panels and adjacency ---------------------------------------------

    fn backend_panel_keys(&self, c: ChamberId, s: u8) -> Result<Vec<Key>> {
        let key = self.key_of(c)?;
        match (&self.backend, &key) {
            (Backend::Thin, Key::Word(w)) => {
                let mut ws = w.clone();
                ws.push(s);
                let mate = self.sys.reduce_slice(&ws)?;
                Ok(vec![key.clone(), Key::Word(mate.letters().to_vec())])
            }
            (Backend::GraphProduct { gp, .. }, Key::Gp(sy)) => {
                let size = gp.sizes[s as usize];
                let mut out = Vec::with_capacity(size as usize);
                out.push(key.clone());
                for e in 1..size {
                    out.push(Key::Gp(gp.mul(sy, &[(s, e)])));
                }
                Ok(out)
            }
            (Backend::Explicit { class_of, classes, .. }, Key::Ext(i)) => {
                let k = class_of[s as usize][*i as usize] as usize;
                Ok(classes[s as usize][k].iter().map(|&m| Key::Ext(m)).collect())
            }
            (Backend::Product { factors, offsets }, Key::Tuple(parts)) => {
                let (fi, loc) = product_letter(offsets, s);
                let panel = factors[fi].panel(parts[fi], loc)?;
                let mut out = Vec::with_capacity(panel.degree());
                for &m in &panel.chambers {
                    let mut tuple = parts.clone();
                    tuple[fi] = m;
                    out.push(Key::Tuple(tuple));
                }
                Ok(out)
            }
            _ => unreachable!("interned key always matches the backend"),
        }
    }

    /// The `s`-panel through `c`, with members in canonical order.
    ///
    /// Requires one step of room below the horizon; panels are never
    /// truncated.
    pub fn panel(&self, c: ChamberId, s: u8) -> Result<Panel> {
        self.check_letter(s)?;
        if self.safe_len(c)? == 0 {
            return Err(Error::HorizonExceeded {
                needed: self.depth(c)?.saturating_add(1),
                horizon: self.horizon.unwrap_or(UNBOUNDED),
            });
        }
        let mut keys = self.backend_panel_keys(c, s)?;
        keys.sort_by(|a, b| self.cmp_keys(a, b));
        keys.dedup();
        let chambers = keys
            .into_iter()
            .map(|k| self.intern(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Panel {
            letter: s,
            chambers,
        })
    }

    /// Whether `a` and `b` lie in one `s`-panel (true when `a == b`).
    ///
    /// Decided from canonical forms alone, so this works even at the horizon
    /// where the full panel may not be enumerable.
    pub fn same_panel(&self, a: ChamberId, b: ChamberId, s: u8) -> Result<bool> {
        self.check_letter(s)?;
        let ka = self.key_of(a)?;
        let kb = self.key_of(b)?;
        if a == b {
            return Ok(true);
        }
        match (&self.backend, &ka, &kb) {
            (Backend::Thin, Key::Word(x), Key::Word(y)) => {
                let mut xs = x.clone();
                xs.push(s);
                Ok(self.sys.reduce_slice(&xs)?.letters() == y.as_slice())
            }
            (Backend::GraphProduct { gp, .. }, Key::Gp(x), Key::Gp(y)) => {
                let d = gp.mul(&gp.inv(x), y);
                Ok(d.len() == 1 && d[0].0 == s)
            }
            (Backend::Explicit { class_of, .. }, Key::Ext(i), Key::Ext(j)) => {
                Ok(class_of[s as usize][*i as usize] == class_of[s as usize][*j as usize])
            }
            (Backend::Product { factors, offsets }, Key::Tuple(x), Key::Tuple(y)) => {
                let (fi, loc) = product_letter(offsets, s);
                for i in 0..factors.len() {
                    if i != fi && x[i] != y[i] {
                        return Ok(false);
                    }
                }
                factors[fi].same_panel(x[fi], y[fi], loc)
            }
            _ => unreachable!("interned key always matches the backend"),
        }
    }

    /// Distinct chambers sharing an `s`-panel.
    pub fn adjacent(&self, a: ChamberId, b: ChamberId, s: u8) -> Result<bool> {
        Ok(a != b && self.same_panel(a, b, s)?)
    }

    // --- distances ---------------------------------------------------------

    fn delta_bfs(
        &self,
        root: ChamberId,
        cap: u32,
        target: Option<ChamberId>,
    ) -> Result<(BTreeMap<ChamberId, Elem>, bool)> {
        let mut dist: BTreeMap<ChamberId, Elem> = BTreeMap::new();
        dist.insert(root, self.sys.identity());
        if target == Some(root) {
            return Ok((dist, true));
        }
        let mut frontier = vec![root];
        let mut level = 0u32;
        while !frontier.is_empty() {
            if level == cap {
                if target.is_some() {
                    return Err(Error::HorizonExceeded {
                        needed: level + 1,
                        horizon: cap,
                    });
                }
                return Ok((dist, false));
            }
            level += 1;
            let mut next = Vec::new();
            for &c in &frontier {
                let w = dist[&c].clone();
                for s in 0..self.sys.rank() as u8 {
                    for &n in &self.panel(c, s)?.chambers {
                        if n == c || dist.contains_key(&n) {
                            continue;
                        }
                        let mut letters = w.letters().to_vec();
                        letters.push(s);
                        let wn = self.sys.reduce_slice(&letters)?;
                        if wn.len() as u32 != level {
                            // In a true building the distance along a
                            // first-discovery edge always grows; anything
                            // else means the chamber system is not one.
                            return Err(Error::MalformedExplicit {
                                reason: format!(
                                    "the W-distance failed to grow along a gallery edge at depth {level}; \
                                     the chamber system violates the building axioms"
                                ),
                            });
                        }
                        dist.insert(n, wn);
                        if target == Some(n) {
                            return Ok((dist, true));
                        }
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        Ok((dist, false))
    }

    /// The Weyl distance `δ(x, y)`, computed by breadth-first search from
    /// the endpoint with more room, accumulating and reducing the gallery
    /// type along first-discovery edges.
    pub fn wdist(&self, x: ChamberId, y: ChamberId) -> Result<Elem> {
        self.key_of(x)?;
        self.key_of(y)?;
        if x == y {
            return Ok(self.sys.identity());
        }
        let (root, target, flip) = if self.safe_len(x)? >= self.safe_len(y)? {
            (x, y, false)
        } else {
            (y, x, true)
        };
        let cap = self.safe_len(root)?;
        let (dist, found) = self.delta_bfs(root, cap, Some(target))?;
        if !found {
            return Err(Error::Disconnected);
        }
        let w = dist.get(&target).expect("target was found").clone();
        if flip {
            self.sys.invert(&w)
        } else {
            Ok(w)
        }
    }

    /// Gallery-metric distance `|δ(x, y)|`.
    pub fn gallery_distance(&self, x: ChamberId, y: ChamberId) -> Result<usize> {
        Ok(self.wdist(x, y)?.len())
    }

    /// `δ(root, ·)` for every chamber within gallery distance `radius` of
    /// `root`.  Needs `radius` steps of room below the horizon.
    pub fn delta_ball(&self, root: ChamberId, radius: u32) -> Result<BTreeMap<ChamberId, Elem>> {
        let safe = self.safe_len(root)?;
        if safe < radius {
            return Err(Error::HorizonExceeded {
                needed: radius,
                horizon: safe,
            });
        }
        Ok(self.delta_bfs(root, radius, None)?.0)
    }

    /// Chambers within gallery distance `radius` of the base, grouped by
    /// depth and canonically ordered within each depth.
    pub fn ball(&self, radius: u32) -> Result<Vec<ChamberId>> {
        let base = self.base();
        let safe = self.safe_len(base)?;
        if safe < radius {
            return Err(Error::HorizonExceeded {
                needed: radius,
                horizon: safe,
            });
        }
        let mut seen: BTreeSet<ChamberId> = BTreeSet::from([base]);
        let mut out = vec![base];
        let mut frontier = vec![base];
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for &c in &frontier {
                for s in 0..self.sys.rank() as u8 {
                    for &n in &self.panel(c, s)?.chambers {
                        if !seen.contains(&n) {
                            next.insert(n);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let mut level: Vec<ChamberId> = next.into_iter().collect();
            self.sort_ids(&mut level)?;
            seen.extend(level.iter().copied());
            out.extend(level.iter().copied());
            frontier = level;
        }
        Ok(out)
    }

    /// Connected component of `c` under adjacency along the given letters,
    /// in canonical order.
    pub fn residue(&self, c: ChamberId, letters: &[u8]) -> Result<Vec<ChamberId>> {
        for &s in letters {
            self.check_letter(s)?;
        }
        self.key_of(c)?;
        let mut seen = BTreeSet::from([c]);
        let mut queue = VecDeque::from([c]);
        while let Some(u) = queue.pop_front() {
            for &s in letters {
                for &n in &self.panel(u, s)?.chambers {
                    if seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
        }
        let mut out: Vec<ChamberId> = seen.into_iter().collect();
        self.sort_ids(&mut out)?;
        Ok(out)
    }

    // --- galleries ----------------------------------------------------------

    /// All galleries from `x` whose type is exactly `word`, in canonical
    /// order of successive chamber choices.
    pub fn galleries_of_type(&self, x: ChamberId, word: &[u8]) -> Result<Vec<Gallery>> {
        for &s in word {
            self.check_letter(s)?;
        }
        self.key_of(x)?;
        fn extend(
            b: &Building,
            g: &mut Gallery,
            rest: &[u8],
            out: &mut Vec<Gallery>,
            cap: usize,
        ) -> Result<()> {
            let Some((&s, tail)) = rest.split_first() else {
                if out.len() >= cap {
                    return Err(Error::BudgetExhausted {
                        what: "galleries of the requested type".into(),
                        cap,
                    });
                }
                out.push(g.clone());
                return Ok(());
            };
            let cur = g.end();
            for &n in &b.panel(cur, s)?.chambers {
                if n == cur {
                    continue;
                }
                g.chambers.push(n);
                g.letters.push(s);
                extend(b, g, tail, out, cap)?;
                g.chambers.pop();
                g.letters.pop();
            }
            Ok(())
        }
        let mut out = Vec::new();
        let mut g = Gallery::trivial(x);
        extend(self, &mut g, word, &mut out, self.budget)?;
        Ok(out)
    }

    /// Check that a gallery is structurally valid in this building:
    /// consecutive chambers distinct and adjacent along the recorded letters.
    pub fn check_gallery(&self, g: &Gallery) -> Result<()> {
        if g.chambers.is_empty() || g.chambers.len() != g.letters.len() + 1 {
            return Err(Error::BadGallery {
                reason: format!(
                    "{} chambers do not fit {} letters",
                    g.chambers.len(),
                    g.letters.len()
                ),
            });
        }
        for (j, &s) in g.letters.iter().enumerate() {
            let a = g.chambers[j];
            let b = g.chambers[j + 1];
            if a == b {
                return Err(Error::BadGallery {
                    reason: format!("step {j} repeats a chamber"),
                });
            }
            if !self.same_panel(a, b, s)? {
                return Err(Error::BadGallery {
                    reason: format!(
                        "step {j}: chambers are not adjacent along letter {}",
                        self.sys.name(s as usize)
                    ),
                });
            }
        }
        Ok(())
    }

    // --- names --------------------------------------------------------------

    /// Human-readable canonical name of a chamber.
    pub fn chamber_name(&self, c: ChamberId) -> Result<String> {
        let key = self.key_of(c)?;
        match (&self.backend, &key) {
            (Backend::Thin, Key::Word(w)) => Ok(self.sys.display_word(w)),
            (Backend::GraphProduct { gp, vertex_names }, Key::Gp(sy)) => {
                Ok(gp.display(sy, vertex_names))
            }
            (Backend::Explicit { names, .. }, Key::Ext(i)) => Ok(names[*i as usize].clone()),
            (Backend::Product { factors, .. }, Key::Tuple(parts)) => {
                let mut pieces = Vec::with_capacity(factors.len());
                for (f, &id) in factors.iter().zip(parts) {
                    pieces.push(f.chamber_name(id)?);
                }
                Ok(pieces.join("|"))
            }
            _ => unreachable!("interned key always matches the backend"),
        }
    }

    /// Resolve a chamber by its canonical name (product names join factor
    /// names with `|`).  Materializes the chamber if it lies inside the
    /// horizon.
    pub fn chamber_by_name(&self, name: &str) -> Result<ChamberId> {
        match &self.backend {
            Backend::Thin => {
                let word = self
                    .sys
                    .parse_word(name)
                    .map_err(|_| Error::UnknownChamberName { name: name.into() })?;
                let e = self.sys.reduce(&word)?;
                self.admit(Key::Word(e.letters().to_vec()))
            }
            Backend::GraphProduct { gp, vertex_names } => {
                let sy = gp
                    .parse(name, vertex_names)
                    .map_err(|_| Error::UnknownChamberName { name: name.into() })?;
                self.admit(Key::Gp(sy))
            }
            Backend::Explicit { index_of_name, .. } => index_of_name
                .get(name)
                .map(|&i| ChamberId(i))
                .ok_or_else(|| Error::UnknownChamberName { name: name.into() }),
            Backend::Product { factors, .. } => {
                let parts: Vec<&str> = name.split('|').collect();
                if parts.len() != factors.len() {
                    return Err(Error::UnknownChamberName { name: name.into() });
                }
                let mut ids = Vec::with_capacity(factors.len());
                for (f, part) in factors.iter().zip(&parts) {
                    ids.push(f.chamber_by_name(part)?);
                }
                self.intern(Key::Tuple(ids))
            }
        }
    }

    /// Intern a key after checking it lies inside the horizon.
    fn admit(&self, key: Key) -> Result<ChamberId> {
        if let Some(h) = self.horizon {
            if !matches!(self.backend, Backend::Product { .. }) {
                let d = match &key {
                    Key::Word(w) => w.len() as u32,
                    Key::Gp(sy) => sy.len() as u32,
                    Key::Ext(_) | Key::Tuple(_) => 0,
                };
                if d > h {
                    return Err(Error::HorizonExceeded {
                        needed: d,
                        horizon: h,
                    });
                }
            }
        }
        self.intern(key)
    }

    fn names_contain_pipe(&self) -> bool {
        let sys_pipe = self.sys.names().iter().any(|n| n.contains('|'));
        let backend_pipe = match &self.backend {
            Backend::Thin => false,
            Backend::GraphProduct { vertex_names, .. } => {
                vertex_names.iter().any(|n| n.contains('|'))
            }
            Backend::Explicit { names, .. } => names.iter().any(|n| n.contains('|')),
            Backend::Product { factors, .. } => factors.iter().any(|f| f.names_contain_pipe()),
        };
        sys_pipe || backend_pipe
    }

    // --- backend bridges (used by actions, quotients and homomorphisms) ----

    /// Thin backend: the group element a chamber stands for.
    pub(crate) fn elem_of_chamber(&self, c: ChamberId) -> Result<Elem> {
        match (&self.backend, self.key_of(c)?) {
            (Backend::Thin, Key::Word(w)) => Ok(self.sys.elem_from_canonical(w)),
            _ => Err(Error::NotThin),
        }
    }

    /// Thin backend: the chamber of a group element, if inside the horizon.
    pub(crate) fn chamber_of_elem(&self, e: &Elem) -> Result<ChamberId> {
        match &self.backend {
            Backend::Thin => self.admit(Key::Word(e.letters().to_vec())),
            _ => Err(Error::NotThin),
        }
    }

    /// Graph-product backend: the syllable normal form of a chamber.
    pub(crate) fn gp_syllables(&self, c: ChamberId) -> Result<Vec<Syl>> {
        match (&self.backend, self.key_of(c)?) {
            (Backend::GraphProduct { .. }, Key::Gp(sy)) => Ok(sy),
            _ => Err(Error::MalformedExplicit {
                reason: "not a graph-product building".into(),
            }),
        }
    }

    /// Graph-product backend: the chamber of a normal form, if inside the
    /// horizon.
    pub(crate) fn chamber_of_gp(&self, sy: Vec<Syl>) -> Result<ChamberId> {
        match &self.backend {
            Backend::GraphProduct { gp, .. } => {
                let canon = gp.canon(sy);
                self.admit(Key::Gp(canon))
            }
            _ => Err(Error::MalformedExplicit {
                reason: "not a graph-product building".into(),
            }),
        }
    }

    /// Graph-product backend: the normal-form context.
    pub(crate) fn gp_context(&self) -> Option<&GpContext> {
        match &self.backend {
            Backend::GraphProduct { gp, .. } => Some(gp),
            _ => None,
        }
    }

    /// Product backend: the coordinates of a chamber.
    pub(crate) fn tuple_of(&self, c: ChamberId) -> Result<Vec<ChamberId>> {
        match (&self.backend, self.key_of(c)?) {
            (Backend::Product { .. }, Key::Tuple(parts)) => Ok(parts),
            _ => Err(Error::MalformedExplicit {
                reason: "not a product building".into(),
            }),
        }
    }

    /// Product backend: the chamber with the given coordinates.
    pub(crate) fn chamber_of_tuple(&self, parts: Vec<ChamberId>) -> Result<ChamberId> {
        match &self.backend {
            Backend::Product { factors, .. } => {
                if parts.len() != factors.len() {
                    return Err(Error::MalformedExplicit {
                        reason: "coordinate count does not match the factor count".into(),
                    });
                }
                for (f, &id) in factors.iter().zip(&parts) {
                    f.key_of(id)?;
                }
                self.intern(Key::Tuple(parts))
            }
            _ => Err(Error::MalformedExplicit {
                reason: "not a product building".into(),
            }),
        }
    }

    /// Split a letter of a product system into (factor index, local letter).
    pub(crate) fn split_letter(&self, s: u8) -> Option<(usize, u8)> {
        match &self.backend {
            Backend::Product { offsets, .. } => Some(product_letter(offsets, s)),
            _ => None,
        }
    }

    /// True when every panel with a chamber at depth less than `radius` has
    /// degree exactly two.
    pub fn is_thin_within(&self, radius: u32) -> Result<bool> {
        for c in self.ball(radius)? {
            if self.depth(c)? >= radius {
                continue;
            }
            for s in 0..self.sys.rank() as u8 {
                if self.panel(c, s)?.degree() != 2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // --- verification -------------------------------------------------------

    /// Exhaustively check the building axioms on the radius-`radius` ball.
    ///
    /// * `region` — the ball materializes without horizon or budget faults;
    /// * `panel-degrees` — every panel inside the horizon has at least two
    ///   chambers, contains its defining chamber, and lists members in
    ///   canonical order;
    /// * `complete-panels` — at least one panel was actually checkable
    ///   (guards against a vacuous run at radius 0);
    /// * `panel-partitions` — `s`-adjacency is an equivalence: the panel is
    ///   the same from every member, and membership matches `same_panel`;
    /// * `delta-identity` — `δ(x, x) = ε`;
    /// * `gallery-iff-forward` — whenever `δ(x, y) = w`, every reduced word
    ///   of `w` is realized by a gallery from `x` to `y`;
    /// * `gallery-iff-backward` — every gallery of reduced type `f` from `x`
    ///   ends at a chamber `y` with `δ(x, y)` equal to the element of `f`;
    /// * `delta-inverse` — `δ(y, x) = δ(x, y)⁻¹`.
    ///
    /// Gallery and distance checks cover all reduced words of length at most
    /// `max_len` and all pairs seen from chambers with that much room below
    /// the horizon.  Failures become report entries, never errors.
    pub fn verify(&self, max_len: usize, radius: u32) -> Report {
        let mut report = Report::new();
        let ball = match self.ball(radius) {
            Ok(b) => b,
            Err(e) => {
                report.fail(
                    "region",
                    format!("could not materialize the radius-{radius} ball: {e}"),
                );
                return report;
            }
        };
        report.pass(
            "region",
            format!("{} chambers within radius {radius}", ball.len()),
        );

        self.verify_panels(&ball, radius, &mut report);
        self.verify_metric(&ball, max_len, radius, &mut report);
        report
    }

    fn verify_panels(&self, ball: &[ChamberId], radius: u32, report: &mut Report) {
        let mut checked = 0usize;
        let mut degree_bad: Option<String> = None;
        let mut partition_bad: Option<String> = None;
        let result: Result<()> = (|| {
            for &c in ball {
                if self.depth(c)? >= radius || self.safe_len(c)? == 0 {
                    continue;
                }
                for s in 0..self.sys.rank() as u8 {
                    let panel = self.panel(c, s)?;
                    checked += 1;
                    let mut sorted_ok = true;
                    for pair in panel.chambers.windows(2) {
                        if self.cmp_chambers(pair[0], pair[1])? != Ordering::Less {
                            sorted_ok = false;
                        }
                    }
                    if panel.degree() < 2 || !panel.contains(c) || !sorted_ok {
                        degree_bad.get_or_insert(format!(
                            "the {}-panel of {} has degree {}{}",
                            self.sys.name(s as usize),
                            self.chamber_name(c)?,
                            panel.degree(),
                            if sorted_ok { "" } else { " (and is out of order)" },
                        ));
                        continue;
                    }
                    for &b in &panel.chambers {
                        if !self.same_panel(c, b, s)? {
                            partition_bad.get_or_insert(format!(
                                "{} and {} are listed in one {}-panel but not recognized as co-panelled",
                                self.chamber_name(c)?,
                                self.chamber_name(b)?,
                                self.sys.name(s as usize),
                            ));
                        }
                        if self.safe_len(b)? >= 1 {
                            let other = self.panel(b, s)?;
                            if other.chambers != panel.chambers {
                                partition_bad.get_or_insert(format!(
                                    "the {}-panel read from {} differs from the one read from {}",
                                    self.sys.name(s as usize),
                                    self.chamber_name(b)?,
                                    self.chamber_name(c)?,
                                ));
                            }
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            report.fail("panel-degrees", format!("panel sweep aborted: {e}"));
            return;
        }
        match degree_bad {
            None => report.pass(
                "panel-degrees",
                format!("{checked} panels have degree at least two"),
            ),
            Some(d) => report.fail("panel-degrees", d),
        }
        if checked == 0 {
            report.fail(
                "complete-panels",
                "no panel lies fully inside the horizon; increase the radius",
            );
        } else {
            report.pass("complete-panels", format!("{checked} panels checkable"));
        }
        match partition_bad {
            None => report.pass(
                "panel-partitions",
                "panels agree from every member and match the adjacency oracle",
            ),
            Some(d) => report.fail("panel-partitions", d),
        }
    }

    fn verify_metric(&self, ball: &[ChamberId], max_len: usize, radius: u32, report: &mut Report) {
        // Chambers with room for a full max_len excursion below the horizon.
        let inner: Result<Vec<ChamberId>> = (|| {
            let r_in = if self.is_complete() {
                radius
            } else {
                radius.saturating_sub(max_len as u32)
            };
            let mut inner = Vec::new();
            for &c in ball {
                if self.depth(c)? <= r_in && self.safe_len(c)? >= max_len as u32 {
                    inner.push(c);
                }
            }
            Ok(inner)
        })();
        let inner = match inner {
            Ok(i) => i,
            Err(e) => {
                report.fail("delta-identity", format!("region sweep aborted: {e}"));
                return;
            }
        };
        if inner.is_empty() {
            report.fail(
                "delta-identity",
                "no chamber has enough room below the horizon for the metric checks",
            );
            return;
        }

        let maps: Result<BTreeMap<ChamberId, BTreeMap<ChamberId, Elem>>> = inner
            .iter()
            .map(|&x| Ok((x, self.delta_ball(x, max_len as u32)?)))
            .collect();
        let maps = match maps {
            Ok(m) => m,
            Err(e) => {
                report.fail("delta-identity", format!("distance maps aborted: {e}"));
                return;
            }
        };

        // δ(x, x) = ε.
        let mut bad = None;
        for (&x, map) in &maps {
            if !map.get(&x).map(Elem::is_identity).unwrap_or(false) {
                bad.get_or_insert_with(|| self.chamber_name(x).unwrap_or_else(|_| x.to_string()));
            }
        }
        match bad {
            None => report.pass(
                "delta-identity",
                format!("δ(x, x) = ε for all {} centers", maps.len()),
            ),
            Some(d) => report.fail("delta-identity", format!("δ(x, x) ≠ ε at {d}")),
        }

        // Gallery-iff in both directions, all reduced words up to max_len.
        let words: Result<Vec<(Elem, Vec<Vec<u8>>)>> = (|| {
            let mut out = Vec::new();
            for e in self.sys.elements_up_to(max_len)? {
                if e.is_identity() {
                    continue;
                }
                let words = self
                    .sys
                    .reduced_words(&e)?
                    .into_iter()
                    .map(|w| w.letters().to_vec())
                    .collect();
                out.push((e, words));
            }
            Ok(out)
        })();
        let words = match words {
            Ok(w) => w,
            Err(e) => {
                report.fail("gallery-iff-forward", format!("word table aborted: {e}"));
                return;
            }
        };
        let mut forward_bad: Option<String> = None;
        let mut backward_bad: Option<String> = None;
        let mut pairs = 0usize;
        let result: Result<()> = (|| {
            for (&x, map) in &maps {
                for (w, reduced) in &words {
                    let targets: BTreeSet<ChamberId> = map
                        .iter()
                        .filter(|(_, d)| *d == w)
                        .map(|(&y, _)| y)
                        .collect();
                    for f in reduced {
                        pairs += 1;
                        let ends: BTreeSet<ChamberId> = self
                            .galleries_of_type(x, f)?
                            .into_iter()
                            .map(|g| g.end())
                            .collect();
                        if let Some(&y) = targets.difference(&ends).next() {
                            forward_bad.get_or_insert(format!(
                                "δ({}, {}) = {} but no gallery of type {} joins them",
                                self.chamber_name(x)?,
                                self.chamber_name(y)?,
                                self.sys.display(w),
                                self.sys.display_word(f),
                            ));
                        }
                        if let Some(&y) = ends.difference(&targets).next() {
                            backward_bad.get_or_insert(format!(
                                "a gallery of type {} from {} ends at {} where δ = {}",
                                self.sys.display_word(f),
                                self.chamber_name(x)?,
                                self.chamber_name(y)?,
                                map.get(&y).map(|d| self.sys.display(d)).unwrap_or_else(
                                    || "something outside the distance map".into()
                                ),
                            ));
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            report.fail("gallery-iff-forward", format!("gallery sweep aborted: {e}"));
            return;
        }
        match forward_bad {
            None => report.pass(
                "gallery-iff-forward",
                format!("all distances realized by galleries ({pairs} word/center pairs)"),
            ),
            Some(d) => report.fail("gallery-iff-forward", d),
        }
        match backward_bad {
            None => report.pass(
                "gallery-iff-backward",
                "every gallery of reduced type lands at the distance its type spells",
            ),
            Some(d) => report.fail("gallery-iff-backward", d),
        }

        // δ(y, x) = δ(x, y)⁻¹ wherever both maps cover the pair.
        let mut inverse_bad: Option<String> = None;
        let mut inv_pairs = 0usize;
        let result: Result<()> = (|| {
            for (&x, map) in &maps {
                for (&y, d) in map {
                    if y <= x {
                        continue;
                    }
                    if let Some(back) = maps.get(&y).and_then(|m| m.get(&x)) {
                        inv_pairs += 1;
                        if *back != self.sys.invert(d)? {
                            inverse_bad.get_or_insert(format!(
                                "δ({1}, {0}) ≠ δ({0}, {1})⁻¹",
                                self.chamber_name(x)?,
                                self.chamber_name(y)?,
                            ));
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            report.fail("delta-inverse", format!("inverse sweep aborted: {e}"));
            return;
        }
        match inverse_bad {
            None => report.pass(
                "delta-inverse",
                format!("δ symmetric under inversion on {inv_pairs} pairs"),
            ),
            Some(d) => report.fail("delta-inverse", d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{Bond, CoxeterMatrix};

    fn dinf() -> CoxeterSystem {
        CoxeterSystem::dihedral(Bond::Infinite, "r", "s")
    }

    fn s3() -> CoxeterSystem {
        CoxeterSystem::dihedral(Bond::Finite(3), "r", "s")
    }

    fn t33() -> Arc<Building> {
        let sys = CoxeterSystem::dihedral(Bond::Infinite, "r", "s");
        Building::graph_product(
            sys,
            vec![3, 3],
            vec!["x".into(), "y".into()],
            8,
            50_000,
        )
        .unwrap()
    }

    #[test]
    fn thin_dinf_ball_two_has_five_chambers() {
        let b = Building::thin(dinf(), 2, 1000).unwrap();
        assert_eq!(b.chamber_count(), 5);
        let names: Vec<String> = b
            .ball(2)
            .unwrap()
            .into_iter()
            .map(|c| b.chamber_name(c).unwrap())
            .collect();
        assert_eq!(names, ["ε", "r", "s", "rs", "sr"]);
        assert!(!b.is_complete());
    }

    #[test]
    fn thin_finite_group_saturates() {
        let b = Building::thin(s3(), 3, 1000).unwrap();
        assert_eq!(b.chamber_count(), 6);
        assert!(b.is_complete());
        let smaller = Building::thin(s3(), 2, 1000).unwrap();
        assert_eq!(smaller.chamber_count(), 5);
        assert!(!smaller.is_complete());
    }

    #[test]
    fn radius_zero_fails_verification_for_lack_of_panels() {
        let b = Building::thin(dinf(), 0, 1000).unwrap();
        let report = b.verify(1, 0);
        assert!(!report.passed());
        assert!(report.failures().any(|c| c.name == "complete-panels"));
    }

    #[test]
    fn thin_wdist_matches_the_group_oracle() {
        // Radius 10 leaves room to certify every distance between depth-3
        // chambers: the search needs min-depth + distance within the horizon.
        let b = Building::thin(dinf(), 10, 1000).unwrap();
        let ball = b.ball(3).unwrap();
        for &x in &ball {
            for &y in &ball {
                let ex = b.elem_of_chamber(x).unwrap();
                let ey = b.elem_of_chamber(y).unwrap();
                let expected = b
                    .system()
                    .multiply(&b.system().invert(&ex).unwrap(), &ey)
                    .unwrap();
                assert_eq!(b.wdist(x, y).unwrap(), expected);
            }
        }
        let r = b.chamber_by_name("r").unwrap();
        let rs = b.chamber_by_name("rs").unwrap();
        assert_eq!(b.system().display(&b.wdist(r, rs).unwrap()), "s");
    }

    #[test]
    fn thin_dinf_radius_six_verifies() {
        let b = Building::thin(dinf(), 6, 1000).unwrap();
        let report = b.verify(4, 6);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn thin_verify_of_finite_group_is_complete_everywhere() {
        let b = Building::thin(s3(), 4, 1000).unwrap();
        let report = b.verify(3, 4);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn tree_building_panels_branch_with_degree_three() {
        let b = t33();
        let base = b.base();
        for s in 0..2u8 {
            let p = b.panel(base, s).unwrap();
            assert_eq!(p.degree(), 3);
            assert!(p.is_branching());
            assert!(p.contains(base));
        }
        // Lazy materialization: the base ball grows on demand only.
        assert!(b.chamber_count() <= 5);
    }

    #[test]
    fn tree_building_distance_oracle() {
        let b = t33();
        let base = b.base();
        let xy = b.chamber_by_name("xy").unwrap();
        assert_eq!(b.system().display(&b.wdist(base, xy).unwrap()), "rs");
        assert_eq!(b.gallery_distance(base, xy).unwrap(), 2);
        assert!(b.wdist(base, base).unwrap().is_identity());
    }

    #[test]
    fn tree_building_verifies() {
        let b = t33();
        let report = b.verify(3, 5);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn commuting_graph_product_is_a_finite_thin_building() {
        let matrix = CoxeterMatrix::from_entries(2, &[(0, 1, Bond::Finite(2))]).unwrap();
        let sys = CoxeterSystem::with_names(matrix, vec!["r".into(), "s".into()]).unwrap();
        let b = Building::graph_product(sys, vec![2, 2], vec!["a".into(), "b".into()], 4, 100)
            .unwrap();
        assert!(b.is_complete());
        assert_eq!(b.chamber_count(), 4);
        assert!(b.is_thin_within(3).unwrap());
        let report = b.verify(2, 3);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn mixed_rank_three_graph_product_verifies() {
        let matrix = CoxeterMatrix::from_entries(
            3,
            &[
                (0, 1, Bond::Infinite),
                (1, 2, Bond::Infinite),
                (0, 2, Bond::Finite(2)),
            ],
        )
        .unwrap();
        let sys = CoxeterSystem::with_names(
            matrix,
            vec!["r".into(), "s".into(), "t".into()],
        )
        .unwrap();
        let b = Building::graph_product(
            sys,
            vec![3, 3, 3],
            vec!["x".into(), "y".into(), "z".into()],
            6,
            100_000,
        )
        .unwrap();
        for s in 0..3u8 {
            assert_eq!(b.panel(b.base(), s).unwrap().degree(), 3);
        }
        let report = b.verify(2, 4);
        assert!(report.passed(), "{report}");
    }

    fn three_chamber_panel() -> Arc<Building> {
        let matrix = CoxeterMatrix::from_entries(1, &[]).unwrap();
        let sys = CoxeterSystem::with_names(matrix, vec!["t".into()]).unwrap();
        Building::explicit(
            sys,
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![vec![0, 1, 2]]],
            0,
            None,
            100,
        )
        .unwrap()
    }

    #[test]
    fn explicit_single_panel_building_verifies() {
        let b = three_chamber_panel();
        assert_eq!(b.chamber_count(), 3);
        assert_eq!(b.panel(ChamberId(0), 0).unwrap().degree(), 3);
        assert_eq!(b.residue(ChamberId(1), &[0]).unwrap().len(), 3);
        assert_eq!(b.residue(ChamberId(1), &[]).unwrap(), vec![ChamberId(1)]);
        let report = b.verify(1, 2);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn explicit_singleton_panel_fails_verification() {
        let matrix = CoxeterMatrix::from_entries(1, &[]).unwrap();
        let sys = CoxeterSystem::with_names(matrix, vec!["t".into()]).unwrap();
        let b = Building::explicit(
            sys,
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![vec![0, 1]]],
            0,
            None,
            100,
        );
        // Chamber c is unreachable once it sits in its own singleton class.
        assert!(matches!(b, Err(Error::Disconnected)));

        let matrix = CoxeterMatrix::from_entries(1, &[]).unwrap();
        let sys = CoxeterSystem::with_names(matrix, vec!["t".into()]).unwrap();
        let b = Building::explicit(
            sys,
            vec!["a".into(), "b".into()],
            vec![vec![vec![0, 1], vec![]]],
            0,
            None,
            100,
        );
        assert!(b.is_err());
    }

    #[test]
    fn explicit_rejects_overlapping_classes() {
        let matrix = CoxeterMatrix::from_entries(1, &[]).unwrap();
        let sys = CoxeterSystem::with_names(matrix, vec!["t".into()]).unwrap();
        let b = Building::explicit(
            sys,
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![vec![0, 1], vec![1, 2]]],
            0,
            None,
            100,
        );
        assert!(matches!(b, Err(Error::MalformedExplicit { .. })));
    }

    #[test]
    fn product_distances_add_coordinatewise() {
        let left = three_chamber_panel();
        let right = Building::thin(s3(), 4, 1000).unwrap();
        let product = Building::product(vec![left.clone(), right.clone()], 10_000).unwrap();
        assert!(product.is_complete());
        let all = product.ball(5).unwrap();
        assert_eq!(all.len(), 18);
        for &x in &all {
            for &y in &all {
                let px = product.tuple_of(x).unwrap();
                let py = product.tuple_of(y).unwrap();
                let d1 = left.gallery_distance(px[0], py[0]).unwrap();
                let d2 = right.gallery_distance(px[1], py[1]).unwrap();
                assert_eq!(product.gallery_distance(x, y).unwrap(), d1 + d2);
            }
        }
        assert!(product.wdist(all[0], all[0]).unwrap().is_identity());
        let report = product.verify(3, 5);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn product_chamber_names_round_trip() {
        let left = three_chamber_panel();
        let right = Building::thin(s3(), 4, 1000).unwrap();
        let product = Building::product(vec![left, right], 10_000).unwrap();
        assert_eq!(product.chamber_name(product.base()).unwrap(), "a|ε");
        let c = product.chamber_by_name("b|rs").unwrap();
        assert_eq!(product.chamber_name(c).unwrap(), "b|rs");
        assert_eq!(product.depth(c).unwrap(), 3);
    }

    #[test]
    fn product_rejects_colliding_generator_names() {
        let a = Building::thin(s3(), 2, 100).unwrap();
        let b = Building::thin(s3(), 2, 100).unwrap();
        assert!(matches!(
            Building::product(vec![a, b], 1000),
            Err(Error::ProductNameCollision { .. })
        ));
    }

    #[test]
    fn horizon_violations_are_reported_not_truncated() {
        let sys = CoxeterSystem::dihedral(Bond::Infinite, "r", "s");
        let b = Building::graph_product(
            sys,
            vec![3, 3],
            vec!["x".into(), "y".into()],
            2,
            1000,
        )
        .unwrap();
        let far = b.chamber_by_name("xy").unwrap();
        assert_eq!(b.safe_len(far).unwrap(), 0);
        assert!(matches!(
            b.panel(far, 0),
            Err(Error::HorizonExceeded { .. })
        ));
        assert!(matches!(b.ball(3), Err(Error::HorizonExceeded { .. })));
        assert!(matches!(
            b.chamber_by_name("xyx"),
            Err(Error::HorizonExceeded { .. })
        ));
        // Distances between boundary chambers can still be certified when
        // one endpoint has room.
        let near = b.chamber_by_name("x").unwrap();
        assert_eq!(b.gallery_distance(b.base(), far).unwrap(), 2);
        assert_eq!(b.gallery_distance(near, far).unwrap(), 1);
    }

    #[test]
    fn galleries_follow_types_exactly() {
        let thin = Building::thin(dinf(), 4, 1000).unwrap();
        let galleries = thin.galleries_of_type(thin.base(), &[0, 1, 0]).unwrap();
        assert_eq!(galleries.len(), 1);
        assert_eq!(
            thin.chamber_name(galleries[0].end()).unwrap(),
            "rsr"
        );
        thin.check_gallery(&galleries[0]).unwrap();

        let tree = t33();
        assert_eq!(tree.galleries_of_type(tree.base(), &[]).unwrap().len(), 1);
        let branches = tree.galleries_of_type(tree.base(), &[0]).unwrap();
        assert_eq!(branches.len(), 2);
        let two_step = tree.galleries_of_type(tree.base(), &[0, 1]).unwrap();
        assert_eq!(two_step.len(), 4);
    }

    #[test]
    fn same_panel_agrees_with_panel_membership() {
        let tree = t33();
        let ball = tree.ball(3).unwrap();
        for &c in &ball {
            if tree.safe_len(c).unwrap() == 0 {
                continue;
            }
            for s in 0..2u8 {
                let panel = tree.panel(c, s).unwrap();
                for &d in &ball {
                    let listed = panel.contains(d);
                    assert_eq!(
                        tree.same_panel(c, d, s).unwrap(),
                        listed,
                        "membership mismatch at {} / {}",
                        tree.chamber_name(c).unwrap(),
                        tree.chamber_name(d).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn chamber_budget_is_enforced() {
        let err = Building::thin(dinf(), 5, 3);
        assert!(matches!(err, Err(Error::ChamberBudgetExceeded { cap: 3 })));
    }

    #[test]
    fn bad_gallery_reports_the_offending_step() {
        let b = Building::thin(dinf(), 3, 1000).unwrap();
        let r = b.chamber_by_name("r").unwrap();
        let rs = b.chamber_by_name("rs").unwrap();
        let bad = Gallery {
            chambers: vec![b.base(), rs],
            letters: vec![0],
        };
        assert!(matches!(
            b.check_gallery(&bad),
            Err(Error::BadGallery { .. })
        ));
        let good = Gallery {
            chambers: vec![b.base(), r, rs],
            letters: vec![0, 1],
        };
        b.check_gallery(&good).unwrap();
    }
}
