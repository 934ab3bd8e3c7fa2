//! Del Pezzo surfaces, their generic projections, multisecant residual
//! schemes and the singular loci of complete intersections containing them.

mod nodes;
mod projection;
mod residual;
mod surfaces;

use crate::error::{Error, Result};
use crate::idealops::Seed;

pub use nodes::{check_smooth_ci, count_nodes, linked_surface, random_complete_intersection, LinkReport, NodeReport};
pub use projection::{
    project_from_trisecant_point, project_ideal, project_surface, project_with_center, ProjectionSpec,
};
pub use residual::{multisecant_residual, ResidualReport};
pub use surfaces::{construct_surface, symmetric_d8_matrix, SurfaceKind, SurfaceRecipe};

/// Seeds tried by the retry protocol: the requested one and its successors.
pub const MAX_ATTEMPTS: u32 = 5;

/// A value obtained by the retry protocol, with the seed that produced it.
#[derive(Clone, Debug)]
pub struct Attempted<T> {
    pub value: T,
    pub seed: Seed,
    pub attempts: u32,
}

/// Runs `f` on `seed`, `seed + 1`, ... until it stops reporting a degenerate
/// draw. Other errors are returned immediately.
pub fn with_retries<T>(seed: Seed, what: &str, mut f: impl FnMut(Seed) -> Result<T>) -> Result<Attempted<T>> {
    let mut s = seed;
    for attempt in 1..=MAX_ATTEMPTS {
        match f(s) {
            Ok(value) => return Ok(Attempted { value, seed: s, attempts: attempt }),
            Err(Error::Degenerate { what: why, .. }) => {
                log::warn!("{what}: seed {} degenerate ({why}), retrying", s.value());
                s = s.next();
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate { what: what.to_string(), attempts: MAX_ATTEMPTS })
}

pub(crate) fn degenerate(what: impl Into<String>) -> Error {
    Error::Degenerate { what: what.into(), attempts: 1 }
}
