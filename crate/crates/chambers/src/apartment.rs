//! Apartments: isometrically charted balls of the Weyl group inside a
//! building.
//!
//! An [`Apartment`] stores an explicit chart from a radius-`R` ball of the
//! group (around the identity) to chambers, with the isometry property
//! `δ(α(v), α(w)) = v⁻¹w`.  Charts are found by seeding a geodesic gallery
//! between two chambers and extending it by backtracking over panel choices;
//! a completed chart must pass [`Apartment::verify_isometry`] before it is
//! returned, so downstream wall computations may rely on the isometry.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::building::{Building, ChamberId};
use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::report::Report;

/// An isometric embedding of a group ball into a building.
pub struct Apartment {
    building: Arc<Building>,
    radius: u32,
    chart: BTreeMap<Elem, ChamberId>,
    inverse: BTreeMap<ChamberId, Elem>,
}

impl Apartment {
    /// Find an apartment ball of the given radius whose image contains `x`
    /// and `y`: seed the chart with a geodesic gallery from `x` to `y`, then
    /// extend chamber by chamber in shortlex order, backtracking whenever a
    /// choice contradicts adjacency or a finished chart fails the isometry
    /// gate.  `budget` caps the number of candidate trials.
    pub fn spanning(
        building: &Arc<Building>,
        x: ChamberId,
        y: ChamberId,
        radius: u32,
        budget: usize,
    ) -> Result<Apartment> {
        let sys = building.system().clone();
        let w0 = building.wdist(x, y)?;
        if w0.len() as u32 > radius {
            return Err(Error::ApartmentOutOfRoom {
                radius,
                needed: w0.len() as u32,
            });
        }

        // Seed: the canonical-least geodesic gallery from x to y.
        let seed_gallery = building
            .galleries_of_type(x, w0.letters())?
            .into_iter()
            .find(|g| g.end() == y)
            .ok_or(Error::ApartmentSearchExhausted { radius })?;
        let mut chart: BTreeMap<Elem, ChamberId> = BTreeMap::new();
        let mut used: BTreeSet<ChamberId> = BTreeSet::new();
        let mut acc = sys.identity();
        chart.insert(acc.clone(), x);
        used.insert(x);
        for (j, &s) in w0.letters().iter().enumerate() {
            acc = sys.multiply(&acc, &sys.generator(s as usize)?)?;
            let c = seed_gallery.chambers[j + 1];
            chart.insert(acc.clone(), c);
            used.insert(c);
        }

        // Remaining domain elements, shortlex order; each has its canonical
        // parent (one letter shorter) charted before it is reached.
        let domain = sys.elements_up_to(radius as usize)?;
        let todo: Vec<Elem> = domain
            .iter()
            .filter(|e| !chart.contains_key(e))
            .cloned()
            .collect();

        struct Slot {
            w: Elem,
            candidates: Vec<ChamberId>,
            next: usize,
        }

        let mut stack: Vec<Slot> = Vec::new();
        let mut trials = 0usize;
        let mut depth = 0usize;
        loop {
            if depth == todo.len() {
                // Complete chart: accept only if the full isometry check
                // holds; otherwise backtrack into the last slot.
                let candidate = Apartment::from_chart(building.clone(), radius, chart.clone());
                if candidate.verify_isometry().passed() {
                    return Ok(candidate);
                }
                if stack.is_empty() {
                    return Err(Error::ApartmentSearchExhausted { radius });
                }
                depth -= 1;
                let slot = stack.last().unwrap();
                let c = slot.candidates[slot.next - 1];
                chart.remove(&slot.w);
                used.remove(&c);
            }
            if stack.len() == depth {
                // Open a slot for the next element; candidates come from the
                // panel at its canonical parent.
                let w = todo[depth].clone();
                let letters = w.letters();
                let letter = *letters.last().expect("todo never contains the identity");
                let parent = sys.elem_from_canonical(letters[..letters.len() - 1].to_vec());
                let anchor = *chart.get(&parent).expect("canonical parent charted first");
                let mut candidates = Vec::new();
                for c in building.panel(anchor, letter)?.others(anchor) {
                    if !used.contains(&c) {
                        candidates.push(c);
                    }
                }
                stack.push(Slot {
                    w,
                    candidates,
                    next: 0,
                });
            }
            let slot = stack.last_mut().unwrap();
            let mut advanced = false;
            while slot.next < slot.candidates.len() {
                let c = slot.candidates[slot.next];
                slot.next += 1;
                trials += 1;
                if trials > budget {
                    return Err(Error::ApartmentSearchExhausted { radius });
                }
                // Edge consistency with every charted group neighbor.
                let mut ok = true;
                for t in 0..sys.rank() as u8 {
                    let v = sys.multiply(&slot.w, &sys.generator(t as usize)?)?;
                    if let Some(&cv) = chart.get(&v) {
                        if !building.adjacent(c, cv, t)? {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    chart.insert(slot.w.clone(), c);
                    used.insert(c);
                    depth += 1;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                stack.pop();
                match stack.last() {
                    None => return Err(Error::ApartmentSearchExhausted { radius }),
                    Some(prev) => {
                        depth -= 1;
                        let c = prev.candidates[prev.next - 1];
                        chart.remove(&prev.w);
                        used.remove(&c);
                    }
                }
            }
        }
    }

    fn from_chart(
        building: Arc<Building>,
        radius: u32,
        chart: BTreeMap<Elem, ChamberId>,
    ) -> Apartment {
        let inverse = chart.iter().map(|(e, &c)| (c, e.clone())).collect();
        Apartment {
            building,
            radius,
            chart,
            inverse,
        }
    }

    pub fn building(&self) -> &Arc<Building> {
        &self.building
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Domain elements in shortlex order.
    pub fn domain(&self) -> impl Iterator<Item = &Elem> {
        self.chart.keys()
    }

    pub fn len(&self) -> usize {
        self.chart.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chart.is_empty()
    }

    pub fn contains(&self, w: &Elem) -> bool {
        self.chart.contains_key(w)
    }

    /// Image of a domain element.
    pub fn chamber(&self, w: &Elem) -> Result<ChamberId> {
        self.chart.get(w).copied().ok_or(Error::NotInApartment)
    }

    /// Preimage of a chamber in the apartment image.
    pub fn elem_of(&self, c: ChamberId) -> Result<&Elem> {
        self.inverse.get(&c).ok_or(Error::NotInApartment)
    }

    /// Re-check the isometry property of the chart.
    ///
    /// * `chart-bijective` — no two domain elements share a chamber;
    /// * `chart-adjacency` — group neighbors map to adjacent chambers of the
    ///   right type;
    /// * `chart-isometry` — for every domain pair, some reduced word of
    ///   `v⁻¹w` walks from `α(v)` to `α(w)` entirely inside the chart (which
    ///   pins the Weyl distance in a verified building), falling back to a
    ///   direct distance computation when no word stays inside; pairs whose
    ///   fallback would cross the horizon are skipped and counted.
    pub fn verify_isometry(&self) -> Report {
        let mut report = Report::new();
        let sys = self.building.system().clone();

        if self.inverse.len() == self.chart.len() {
            report.pass(
                "chart-bijective",
                format!("{} chambers, no repeats", self.chart.len()),
            );
        } else {
            report.fail(
                "chart-bijective",
                "two domain elements map to one chamber",
            );
        }

        let adjacency: Result<Option<String>> = (|| {
            for (w, &c) in &self.chart {
                for t in 0..sys.rank() as u8 {
                    let v = sys.multiply(w, &sys.generator(t as usize)?)?;
                    if v < *w {
                        continue; // each edge once
                    }
                    if let Some(&cv) = self.chart.get(&v) {
                        if !self.building.adjacent(c, cv, t)? {
                            return Ok(Some(format!(
                                "{} and {} are not {}-adjacent",
                                sys.display(w),
                                sys.display(&v),
                                sys.name(t as usize)
                            )));
                        }
                    }
                }
            }
            Ok(None)
        })();
        match adjacency {
            Ok(None) => report.pass("chart-adjacency", "all charted edges are panel pairs"),
            Ok(Some(d)) => report.fail("chart-adjacency", d),
            Err(e) => report.fail("chart-adjacency", format!("sweep aborted: {e}")),
        }

        let mut verified = 0usize;
        let mut by_distance = 0usize;
        let mut skipped = 0usize;
        let isometry: Result<Option<String>> = (|| {
            let elems: Vec<&Elem> = self.chart.keys().collect();
            for (i, &v) in elems.iter().enumerate() {
                for &w in &elems[i + 1..] {
                    let target = sys.multiply(&sys.invert(v)?, w)?;
                    if target.len() <= 1 {
                        verified += 1; // adjacency check already covers it
                        continue;
                    }
                    let mut inside = false;
                    'words: for word in sys.reduced_words(&target)? {
                        let mut cur = v.clone();
                        for &s in word.letters() {
                            cur = sys.multiply(&cur, &sys.generator(s as usize)?)?;
                            if !self.chart.contains_key(&cur) {
                                continue 'words;
                            }
                        }
                        inside = true;
                        break;
                    }
                    if inside {
                        // A reduced-type gallery inside the chart pins δ.
                        verified += 1;
                        continue;
                    }
                    let cv = self.chart[v];
                    let cw = self.chart[w];
                    let room = self
                        .building
                        .safe_len(cv)?
                        .max(self.building.safe_len(cw)?);
                    if (target.len() as u32) > room {
                        skipped += 1;
                        continue;
                    }
                    by_distance += 1;
                    if self.building.wdist(cv, cw)? != target {
                        return Ok(Some(format!(
                            "δ(α({}), α({})) ≠ {}",
                            sys.display(v),
                            sys.display(w),
                            sys.display(&target)
                        )));
                    }
                    verified += 1;
                }
            }
            Ok(None)
        })();
        match isometry {
            Ok(None) => report.pass(
                "chart-isometry",
                format!(
                    "{verified} pairs verified ({by_distance} by direct distance), {skipped} skipped at the horizon"
                ),
            ),
            Ok(Some(d)) => report.fail("chart-isometry", d),
            Err(e) => report.fail("chart-isometry", format!("sweep aborted: {e}")),
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::Building;
    use crate::coxeter::{Bond, CoxeterMatrix, CoxeterSystem};

    fn dinf_thin() -> Arc<Building> {
        let sys = CoxeterSystem::dihedral(Bond::Infinite, "r", "s");
        Building::thin(sys, 8, 10_000).unwrap()
    }

    fn t33() -> Arc<Building> {
        let sys = CoxeterSystem::dihedral(Bond::Infinite, "r", "s");
        Building::graph_product(sys, vec![3, 3], vec!["x".into(), "y".into()], 10, 100_000)
            .unwrap()
    }

    #[test]
    fn thin_apartment_is_the_identity_chart() {
        let b = dinf_thin();
        let x = b.base();
        let y = b.chamber_by_name("rsr").unwrap();
        let a = Apartment::spanning(&b, x, y, 4, 10_000).unwrap();
        assert_eq!(a.len(), 9); // ball of radius 4 in the infinite dihedral group
        for w in a.domain() {
            let c = a.chamber(w).unwrap();
            assert_eq!(
                b.chamber_name(c).unwrap(),
                b.system().display(w),
                "thin apartments are left translates of the group itself"
            );
        }
        assert!(a.verify_isometry().passed());
    }

    #[test]
    fn tree_apartment_charts_a_line_through_both_chambers() {
        let b = t33();
        let y = b.chamber_by_name("xy").unwrap();
        let a = Apartment::spanning(&b, b.base(), y, 3, 10_000).unwrap();
        assert_eq!(a.len(), 7);
        assert_eq!(a.chamber(&b.system().identity()).unwrap(), b.base());
        let rs = b
            .system()
            .reduce(&b.system().parse_word("rs").unwrap())
            .unwrap();
        assert_eq!(a.chamber(&rs).unwrap(), y);
        let report = a.verify_isometry();
        assert!(report.passed(), "{report}");
        assert!(a.elem_of(b.base()).unwrap().is_identity());
        assert!(matches!(
            a.chamber(&b.system().generator(0).unwrap().clone()),
            Ok(_)
        ));
    }

    #[test]
    fn distance_beyond_radius_is_rejected() {
        let b = dinf_thin();
        let far = b.chamber_by_name("rsrsr").unwrap();
        assert!(matches!(
            Apartment::spanning(&b, b.base(), far, 3, 10_000),
            Err(Error::ApartmentOutOfRoom { radius: 3, needed: 5 })
        ));
    }

    #[test]
    fn mixed_rank_three_apartment_verifies() {
        let matrix = CoxeterMatrix::from_entries(
            3,
            &[
                (0, 1, Bond::Infinite),
                (1, 2, Bond::Infinite),
                (0, 2, Bond::Finite(2)),
            ],
        )
        .unwrap();
        let sys =
            CoxeterSystem::with_names(matrix, vec!["r".into(), "s".into(), "t".into()]).unwrap();
        let b = Building::graph_product(
            sys,
            vec![3, 3, 3],
            vec!["x".into(), "y".into(), "z".into()],
            8,
            200_000,
        )
        .unwrap();
        let y = b.chamber_by_name("x·z").unwrap();
        let a = Apartment::spanning(&b, b.base(), y, 3, 100_000).unwrap();
        let report = a.verify_isometry();
        assert!(report.passed(), "{report}");
        // Ball of radius 3 in the right-angled group with m_rt = 2:
        // 1 + 3 + (rr excluded ⇒ 8 of length 2, minus the rt = tr merge) …
        // just pin the count against the group enumeration.
        assert_eq!(
            a.len(),
            b.system().elements_up_to(3).unwrap().len()
        );
    }

    #[test]
    fn corrupted_chart_fails_the_isometry_gate() {
        let b = dinf_thin();
        let y = b.chamber_by_name("rs").unwrap();
        let a = Apartment::spanning(&b, b.base(), y, 3, 10_000).unwrap();
        let mut chart = a.chart.clone();
        // Swap the images of two distant elements: adjacency breaks.
        let sys = b.system();
        let e1 = sys.reduce(&sys.parse_word("rs").unwrap()).unwrap();
        let e2 = sys.reduce(&sys.parse_word("sr").unwrap()).unwrap();
        let c1 = chart[&e1];
        let c2 = chart[&e2];
        chart.insert(e1, c2);
        chart.insert(e2, c1);
        let corrupt = Apartment::from_chart(b.clone(), 3, chart);
        assert!(!corrupt.verify_isometry().passed());
    }
}
