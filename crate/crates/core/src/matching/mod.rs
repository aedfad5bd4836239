//! Matching of the orbits of `a - 1` and `a` under `T_a`, and the intervals on which it
//! happens with fixed exponents.

mod cylinder;
mod detect;
mod gauss;
mod interval;
mod pair;
mod scan;
mod triple;

pub use cylinder::{matching_cylinder, Cylinder};
pub use detect::{detect_matching, MatchOutcome, MatchVerdict, Witness};
pub use gauss::{p_counter, scan_gauss_orbit, CaseTag, GaussOrbit, GaussScan, GaussViolation};
pub use interval::{
    central_intervals, interior_samples, interval_containing, interval_from_alpha, matches_at,
    nondegenerate_at, orbit_identity, MatchingInterval,
};
pub use pair::{pair_trace, Exceedance, PairStep, PairTag, PairTrace, TraceEnd};
pub use scan::{check_disjoint, scan_intervals, ScanResult, SCAN_BUDGET};
pub use triple::{triple_trace, TripleState, TripleTag, TripleTrace};
