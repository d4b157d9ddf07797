//! Walls and roots of an apartment, and the periodic gallery data obtained
//! from a pair of parallel walls.
//!
//! A wall is the fixed panel set of a reflection `r = u s u⁻¹`: the pairs
//! `{w, rw}` of adjacent domain elements.  Two walls are *parallel* when
//! their reflections generate an infinite dihedral group; a minimal gallery
//! between panels of two parallel walls yields a period word whose powers
//! are geodesic, which [`certify_geodesic_power`] checks by word reduction.
//!
//! All computations are relative to an [`Apartment`] ball: a wall here is
//! the visible part of the infinite wall, and searches fail loudly when the
//! ball is too small rather than извлекая partial answers.

use crate::apartment::Apartment;
use crate::building::{Building, Gallery};
use crate::coxeter::geom;
use crate::coxeter::{CoxeterSystem, Elem, OrderResult};
use crate::error::{Error, Result};
use crate::report::Report;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// One panel of a wall: a pair of domain elements swapped by the reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallPanel {
    /// The two domain elements, shortlex-sorted.
    pub pair: (Elem, Elem),
    /// The generator joining them: `w⁻¹·(r w)` for either endpoint `w`.
    pub letter: u8,
    /// Images of the pair under the apartment chart.
    pub chambers: (crate::building::ChamberId, crate::building::ChamberId),
}

/// The part of a reflection wall visible inside an apartment ball.
#[derive(Clone, Debug)]
pub struct Wall {
    reflection: Elem,
    /// Seed: the reflection is `u s u⁻¹` for `u` = seed element, `s` = seed
    /// letter; the roots are measured against this seed panel.
    seed: (Elem, u8),
    panels: Vec<WallPanel>,
}

impl Wall {
    pub fn reflection(&self) -> &Elem {
        &self.reflection
    }

    pub fn seed(&self) -> (&Elem, u8) {
        (&self.seed.0, self.seed.1)
    }

    /// Visible panels, sorted by their shortlex-smaller endpoint.
    pub fn panels(&self) -> &[WallPanel] {
        &self.panels
    }

    /// Domain elements covered by the visible panels.
    pub fn elems(&self) -> impl Iterator<Item = &Elem> {
        self.panels
            .iter()
            .flat_map(|p| [&p.pair.0, &p.pair.1])
    }

    /// The unique visible panel containing a domain element, if any.
    pub fn panel_through(&self, w: &Elem) -> Option<&WallPanel> {
        self.panels
            .iter()
            .find(|p| p.pair.0 == *w || p.pair.1 == *w)
    }
}

/// One of the two half-apartments cut out by a wall.
#[derive(Clone, Debug)]
pub struct Root {
    pub positive: bool,
    /// Domain elements on this side, shortlex order.
    pub chambers: Vec<Elem>,
}

/// A minimal gallery between panels of two parallel walls, with the period
/// word of the associated translation.
#[derive(Clone, Debug)]
pub struct WallGalleryData {
    /// The minimal gallery, from a chamber in a panel of the first wall to a
    /// chamber in a panel of the second.
    pub gallery: Gallery,
    /// Type of the first wall's panel at the gallery's first chamber.
    pub s0: u8,
    /// Type of the second wall's panel at the gallery's last chamber.
    pub sk: u8,
    /// One more than the gallery's length.
    pub k: usize,
    /// `s₀ s₁ ⋯ s_{2k−1}` with the mirror rule `s_{k+j} = s_{k−j}`.
    pub period: Vec<u8>,
}

/// The wall through the `s`-panel at chamber `c` of the apartment.
///
/// With `u` the preimage of `c`, the reflection is `u s u⁻¹` and the wall
/// lists every pair `{w, rw}` of adjacent elements inside the domain.  The
/// mate `us` must also lie in the domain, else the seed panel itself is
/// outside the visible ball.
pub fn wall_through_panel(a: &Apartment, c: crate::building::ChamberId, s: u8) -> Result<Wall> {
    let sys = a.building().system().clone();
    let u = a.elem_of(c)?.clone();
    let us = sys.multiply(&u, &sys.generator(s as usize)?)?;
    if !a.contains(&us) {
        return Err(Error::WallOutsideBall);
    }
    let reflection = sys.reflection(&u, s as usize)?;
    let mut panels = Vec::new();
    for w in a.domain() {
        let rw = sys.multiply(&reflection, w)?;
        if *w >= rw || !a.contains(&rw) {
            continue;
        }
        let step = sys.multiply(&sys.invert(w)?, &rw)?;
        if step.len() != 1 {
            continue;
        }
        panels.push(WallPanel {
            pair: (w.clone(), rw.clone()),
            letter: step.letters()[0],
            chambers: (a.chamber(w)?, a.chamber(&rw)?),
        });
    }
    debug_assert!(
        panels.iter().any(|p| p.pair.0 == u || p.pair.1 == u),
        "the seed panel is visible by construction"
    );
    Ok(Wall {
        reflection,
        seed: (u, s),
        panels,
    })
}

/// Split the apartment domain into the two roots of a wall: elements
/// strictly closer to the seed `u` than to its mate `us` are positive.
pub fn roots_of(a: &Apartment, wall: &Wall) -> Result<(Root, Root)> {
    let sys = a.building().system().clone();
    let (u, s) = wall.seed();
    let us = sys.multiply(u, &sys.generator(s as usize)?)?;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for w in a.domain() {
        let du = sys.distance(w, u)?;
        let dus = sys.distance(w, &us)?;
        match du.cmp(&dus) {
            std::cmp::Ordering::Less => positive.push(w.clone()),
            std::cmp::Ordering::Greater => negative.push(w.clone()),
            std::cmp::Ordering::Equal => {
                // Gallery distances to the two sides of a panel always have
                // different parities, so equality contradicts the setup.
                return Err(Error::MalformedExplicit {
                    reason: format!(
                        "element {} is equidistant from both sides of a wall",
                        sys.display(w)
                    ),
                });
            }
        }
    }
    Ok((
        Root {
            positive: true,
            chambers: positive,
        },
        Root {
            positive: false,
            chambers: negative,
        },
    ))
}

/// Check that branching propagates along a wall: once one panel of the wall
/// branches in the building, every visible panel must.
///
/// Fails with [`Error::WallNotBranching`] when no visible panel branches
/// (the hypothesis is empty, e.g. in a thin building); otherwise reports
/// per-panel degrees, failing on any panel of degree two.
pub fn check_branching_propagation(
    building: &Building,
    a: &Apartment,
    wall: &Wall,
) -> Result<Report> {
    let mut degrees = Vec::new();
    for p in wall.panels() {
        let panel = building.panel(p.chambers.0, p.letter)?;
        degrees.push((p, panel.degree()));
    }
    if !degrees.iter().any(|&(_, d)| d >= 3) {
        return Err(Error::WallNotBranching);
    }
    let mut report = Report::new();
    let sys = a.building().system().clone();
    match degrees.iter().find(|&&(_, d)| d < 3) {
        None => report.pass(
            "wall-branching",
            format!(
                "all {} visible panels branch (degrees {:?})",
                degrees.len(),
                degrees.iter().map(|&(_, d)| d).collect::<Vec<_>>()
            ),
        ),
        Some(&(p, d)) => report.fail(
            "wall-branching",
            format!(
                "panel {{{}, {}}} (type {}) has degree {d}, breaking propagation",
                sys.display(&p.pair.0),
                sys.display(&p.pair.1),
                sys.name(p.letter as usize)
            ),
        ),
    }
    Ok(report)
}

/// Find a wall parallel to `wall`: one whose reflection, together with the
/// given one, generates an infinite dihedral group.
///
/// Requires the Weyl group to have no finite direct factor (otherwise no
/// parallel wall need exist and the search refuses to start).  Candidate
/// walls are scanned through chambers in breadth-first order from the given
/// wall, ties broken by the shortlex order of the candidate reflection, out
/// to the largest radius in `schedule`.  A candidate is accepted only with a
/// certificate of infinitude for the product of reflections — either the
/// exact order computation or the root-pairing criterion.
pub fn find_parallel_wall(
    a: &Apartment,
    wall: &Wall,
    schedule: &[u32],
    order_cap: u64,
) -> Result<Wall> {
    let sys = a.building().system().clone();
    if let Some(gens) = sys.finite_factor() {
        let factor = gens.iter().map(|&i| sys.name(i).to_string()).collect();
        return Err(Error::NoParallelWall { factor });
    }
    let cutoff = schedule.iter().copied().max().unwrap_or(a.radius());

    // Breadth-first distances from the wall's visible chambers, inside the
    // domain graph.
    let mut dist: BTreeMap<Elem, u32> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for w in wall.elems() {
        if dist.insert(w.clone(), 0).is_none() {
            queue.push_back(w.clone());
        }
    }
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for t in 0..sys.rank() as u8 {
            let v = sys.multiply(&w, &sys.generator(t as usize)?)?;
            if a.contains(&v) && !dist.contains_key(&v) {
                dist.insert(v.clone(), d + 1);
                queue.push_back(v);
            }
        }
    }

    // Candidate reflections with their best (distance, seed) witness.
    let mut candidates: BTreeMap<Elem, (u32, Elem, u8)> = BTreeMap::new();
    for w in a.domain() {
        let Some(&dw) = dist.get(w) else { continue };
        for s in 0..sys.rank() as u8 {
            let ws = sys.multiply(w, &sys.generator(s as usize)?)?;
            if !a.contains(&ws) {
                continue;
            }
            let r2 = sys.reflection(w, s as usize)?;
            if r2 == *wall.reflection() {
                continue;
            }
            let d = dw.min(*dist.get(&ws).unwrap_or(&u32::MAX));
            let entry = candidates
                .entry(r2)
                .or_insert_with(|| (d, w.clone(), s));
            if (d, w, s) < (entry.0, &entry.1, entry.2) {
                *entry = (d, w.clone(), s);
            }
        }
    }
    let mut ordered: Vec<(u32, Elem, Elem, u8)> = candidates
        .into_iter()
        .map(|(r2, (d, w, s))| (d, r2, w, s))
        .collect();
    ordered.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));

    let mut saw_uncertified = false;
    for (d, r2, w, s) in ordered {
        if d > cutoff {
            continue;
        }
        let product = sys.multiply(wall.reflection(), &r2)?;
        let parallel = match sys.order_of(&product, order_cap)? {
            OrderResult::InfiniteCertified => true,
            OrderResult::Finite(_) => false,
            OrderResult::UnknownBeyond(_) => {
                // Second ticket: pair the root vectors of the two seeds.
                let (u0, s0) = wall.seed();
                match geom::reflections_generate_infinite(
                    &sys,
                    (u0.letters(), s0 as usize),
                    (w.letters(), s as usize),
                ) {
                    Some(true) => true,
                    Some(false) => false,
                    None => {
                        saw_uncertified = true;
                        false
                    }
                }
            }
        };
        if parallel {
            return wall_through_panel(a, a.chamber(&w)?, s);
        }
    }
    if saw_uncertified {
        Err(Error::ParallelUncertified { radius: cutoff })
    } else {
        Err(Error::ApartmentOutOfRoom {
            radius: a.radius(),
            needed: a.radius().saturating_add(1),
        })
    }
}

/// A geodesic gallery of minimal length joining a chamber in a panel of the
/// first wall to a chamber in a panel of the second, with the period word.
///
/// Minimization is exhaustive over the visible panel chambers; ties are
/// broken by the shortlex type of the connecting element, then by the
/// shortlex order of the two endpoints, so the result is deterministic.
pub fn min_wall_gallery(a: &Apartment, first: &Wall, second: &Wall) -> Result<WallGalleryData> {
    if first.reflection() == second.reflection() {
        return Err(Error::SameWall);
    }
    let sys = a.building().system().clone();

    let starts: BTreeSet<Elem> = first.elems().cloned().collect();
    let ends: BTreeSet<Elem> = second.elems().cloned().collect();
    let mut best: Option<(usize, Elem, Elem, Elem)> = None; // (d, type elem, from, to)
    for x in &starts {
        for y in &ends {
            if starts.contains(y) && ends.contains(x) && y < x {
                // The reversed pair is scanned as well; keep one order.
            }
            let t = sys.multiply(&sys.invert(x)?, y)?;
            let key = (t.len(), t.clone(), x.clone(), y.clone());
            let better = match &best {
                None => true,
                Some((d, bt, bx, by)) => {
                    (key.0, &key.1, &key.2, &key.3) < (*d, bt, bx, by)
                }
            };
            if better {
                best = Some((key.0, key.1, key.2, key.3));
            }
        }
    }
    let (_, _, from, to) = best.ok_or(Error::WallOutsideBall)?;
    let target = sys.multiply(&sys.invert(&from)?, &to)?;

    // Realize the connecting element inside the domain; among its reduced
    // words, take the first whose prefix walk stays charted.
    let mut chosen: Option<Vec<u8>> = None;
    'words: for word in sys.reduced_words(&target)? {
        let mut cur = from.clone();
        for &t in word.letters() {
            cur = sys.multiply(&cur, &sys.generator(t as usize)?)?;
            if !a.contains(&cur) {
                continue 'words;
            }
        }
        chosen = Some(word.letters().to_vec());
        break;
    }
    let Some(interior) = chosen else {
        return Err(Error::ApartmentOutOfRoom {
            radius: a.radius(),
            needed: a.radius().saturating_add(1),
        });
    };

    let mut chambers = vec![a.chamber(&from)?];
    let mut cur = from.clone();
    for &t in &interior {
        cur = sys.multiply(&cur, &sys.generator(t as usize)?)?;
        chambers.push(a.chamber(&cur)?);
    }
    let gallery = Gallery {
        chambers,
        letters: interior.clone(),
    };

    let s0 = first
        .panel_through(&from)
        .expect("gallery starts on the first wall")
        .letter;
    let sk = second
        .panel_through(&to)
        .expect("gallery ends on the second wall")
        .letter;
    let k = interior.len() + 1;
    let mut period = Vec::with_capacity(2 * k);
    period.push(s0);
    period.extend_from_slice(&interior);
    period.push(sk);
    for j in 1..k {
        period.push(interior[k - 1 - j]);
    }
    debug_assert_eq!(period.len(), 2 * k);
    Ok(WallGalleryData {
        gallery,
        s0,
        sk,
        k,
        period,
    })
}

/// Validate the shape of the period word against its gallery.
fn check_period_shape(data: &WallGalleryData) -> Result<()> {
    let k = data.k;
    if k == 0
        || data.period.len() != 2 * k
        || data.gallery.letters.len() != k - 1
        || data.period[0] != data.s0
        || data.period[k] != data.sk
        || data.period[1..k] != data.gallery.letters[..]
    {
        return Err(Error::BadPeriodWord);
    }
    for j in 1..k {
        if data.period[k + j] != data.period[k - j] {
            return Err(Error::BadPeriodWord);
        }
    }
    Ok(())
}

/// Whether `s₀·wⁿ` is a geodesic word, i.e. reduces to length `2kn − 1`.
///
/// For data produced by [`min_wall_gallery`] on parallel walls this must
/// hold for every `n ≥ 1`; a `false` answer flags non-minimal or corrupted
/// period data.
pub fn certify_geodesic_power(sys: &CoxeterSystem, data: &WallGalleryData, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::BadPeriodWord);
    }
    check_period_shape(data)?;
    let k = data.k;
    let mut word = Vec::with_capacity(1 + 2 * k * n as usize);
    word.push(data.s0);
    for _ in 0..n {
        word.extend_from_slice(&data.period);
    }
    let reduced = sys.reduce(&crate::coxeter::Word(word))?;
    Ok(reduced.len() == 2 * k * n as usize - 1)
}
