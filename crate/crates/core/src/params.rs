//! Every degree and size threshold that depends on the genus `g`, in one
//! place.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Euler genus parameter {0} is below the minimum of 2")]
pub struct GenusTooSmall(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceParams {
    pub genus: usize,
    /// Vertices of degree at most this are removed with clique completion.
    pub removable_degree: usize,
    /// Degrees whose incident edges may be removed when the other end is light.
    pub light_degrees: (usize, usize),
    /// Neighbours of light vertices must reach this degree in a reduced core.
    pub heavy_degree: usize,
    /// `12g − 12`: largest maximum degree of a reduced core of genus ≤ g.
    pub max_degree: usize,
    /// `6g − 1`: vertices stripped of internal arcs before greedy colouring.
    pub stratum_size: usize,
    /// `6g`: leading vertices embedded injectively into the reserved pool.
    pub reserved_prefix: usize,
    /// Back-degree bound after stripping the stratum.
    pub stripped_degeneracy: usize,
    /// `138g − 162`: free partite classes, and the 2-dipath palette budget.
    pub free_classes: usize,
    /// `144g − 162`: all partite classes of the full target.
    pub total_classes: usize,
    /// Fullness arity of the full target.
    pub fullness_arity: usize,
}

impl SurfaceParams {
    pub fn new(genus: usize) -> Result<Self, GenusTooSmall> {
        if genus < 2 {
            return Err(GenusTooSmall(genus));
        }
        let g = genus;
        Ok(SurfaceParams {
            genus,
            removable_degree: 3,
            light_degrees: (4, 5),
            heavy_degree: 12,
            max_degree: 12 * g - 12,
            stratum_size: 6 * g - 1,
            reserved_prefix: 6 * g,
            stripped_degeneracy: 6,
            free_classes: 138 * g - 162,
            total_classes: 144 * g - 162,
            fullness_arity: 10,
        })
    }

    pub fn reserved_classes(&self) -> usize {
        self.total_classes - self.free_classes
    }

    pub fn is_light(&self, degree: usize) -> bool {
        (self.light_degrees.0..=self.light_degrees.1).contains(&degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_values() {
        let p = SurfaceParams::new(2).unwrap();
        assert_eq!(p.max_degree, 12);
        assert_eq!(p.free_classes, 114);
        assert_eq!(p.total_classes, 126);
        assert_eq!(p.reserved_classes(), 12);
        assert_eq!(p.stratum_size, 11);
        assert!(SurfaceParams::new(1).is_err());
    }

    #[test]
    fn palette_budget_is_consistent() {
        // greedy bound at d = 6 plus 6g - 1 singletons fills the free classes exactly
        for g in 2..50 {
            let p = SurfaceParams::new(g).unwrap();
            let greedy = crate::dipath::greedy_palette_bound(p.stripped_degeneracy, p.max_degree);
            assert_eq!(greedy, 132 * g - 161);
            assert_eq!(greedy + p.stratum_size, p.free_classes);
        }
    }
}
