//! Seeded random walks through the move graph.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::moves::{apply_move, crossing_delta, enumerate_sites, MoveKind, MoveSite};
use super::OGraph;

/// One step of a walk; `site` is None when no move applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep {
    pub site: Option<MoveSite>,
    /// Crossing count after the step.
    pub crossings: usize,
}

/// Extra crossings a walk may add on top of the starting diagram.
pub const DEFAULT_HEADROOM: usize = 4;

/// A walk of `steps` moves with crossings capped at the start count plus [`DEFAULT_HEADROOM`].
pub fn random_walk(g: &OGraph, steps: usize, seed: u64) -> (OGraph, Vec<WalkStep>) {
    random_walk_capped(g, steps, seed, g.crossing_count() + DEFAULT_HEADROOM)
}

/// Each step picks a move kind uniformly among those with a site, then a site uniformly.
/// Sites that would exceed `max_crossings` are not offered. The diagram is relabeled
/// canonically after every step, so traces replay exactly.
pub fn random_walk_capped(g: &OGraph, steps: usize, seed: u64, max_crossings: usize) -> (OGraph, Vec<WalkStep>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = g.clone();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let n = cur.crossing_count() as i64;
        let options: Vec<Vec<MoveSite>> = MoveKind::ALL
            .iter()
            .map(|&k| {
                enumerate_sites(&cur, k)
                    .into_iter()
                    .filter(|s| n + crossing_delta(s) <= max_crossings as i64)
                    .collect::<Vec<_>>()
            })
            .filter(|v| !v.is_empty())
            .collect();
        let Some(kind) = options.choose(&mut rng) else {
            trace.push(WalkStep { site: None, crossings: cur.crossing_count() });
            continue;
        };
        let site = kind.choose(&mut rng).unwrap().clone();
        cur = apply_move(&cur, &site).expect("enumerated sites apply").canonical();
        trace.push(WalkStep { site: Some(site), crossings: cur.crossing_count() });
    }
    (cur, trace)
}

/// Re-applies a recorded trace.
pub fn replay(g: &OGraph, trace: &[WalkStep]) -> Result<OGraph, super::GraphError> {
    let mut cur = g.clone();
    for step in trace {
        if let Some(site) = &step.site {
            cur = apply_move(&cur, site)?.canonical();
        }
    }
    Ok(cur)
}
