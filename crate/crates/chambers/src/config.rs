//! Tunable budgets and margins shared by the search and verification routines.

/// Budgets, margins, and deterministic seeds.
///
/// Every search in the crate is bounded: word reduction by `braid_cap`,
/// ball enumeration by `chamber_budget`, order computation by `order_cap`,
/// and so on.  Hitting a budget is always a hard error, never a silent
/// truncation, so results are exact whenever they are produced at all.
#[derive(Clone, Debug)]
pub struct Config {
    /// Cap on the number of words visited by one braid-move closure.
    pub braid_cap: usize,
    /// Cap on power iteration when no exact order certificate applies.
    pub order_cap: u64,
    /// Cap on materialized chambers per building.
    pub chamber_budget: usize,
    /// Cap on elements when enumerating a finite standard subgroup.
    pub subgroup_cap: usize,
    /// Radius of the apartment ball used by the wall machinery.
    pub apartment_radius: u32,
    /// Largest radius tried by the parallel-wall search (doubling schedule).
    pub wall_schedule_max: u32,
    /// Radius of the chamber region used for orbit and balance computations.
    pub orbit_radius: u32,
    /// States within this many periods of the region edge are excluded from
    /// balance checks.
    pub margin_periods: u32,
    /// Cap on nodes explored by the recurrence search.
    pub recurrence_budget: usize,
    /// Maximal syllable length of free words fed to the freeness certificate.
    pub l_max: u32,
    /// Bound on the total absolute exponent of certified free words.
    pub exponent_budget: u32,
    /// Sample count for randomized well-definedness and metric-bound checks.
    pub samples: usize,
    /// Seed for all randomized sampling; fixed so runs are reproducible.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            braid_cap: 200_000,
            order_cap: 64,
            chamber_budget: 200_000,
            subgroup_cap: 10_000,
            apartment_radius: 8,
            wall_schedule_max: 8,
            orbit_radius: 6,
            margin_periods: 3,
            recurrence_budget: 10_000,
            l_max: 4,
            exponent_budget: 6,
            samples: 1_000,
            seed: 0x5eed,
        }
    }
}
