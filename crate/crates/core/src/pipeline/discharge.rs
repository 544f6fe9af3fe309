use num_rational::Ratio;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::graph::OrientedGraph;
use crate::params::SurfaceParams;

use super::reduce::is_reduced;

pub type Charge = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("core is not fully reduced: {0}")]
    NotReduced(String),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: Charge,
}

/// Initial charges `deg(v) − 6` and the charges after every neighbour of a
/// degree-4 vertex sends it 1/2 and every neighbour of a degree-5 vertex
/// sends it 1/5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub initial: Vec<Charge>,
    pub after: Vec<Charge>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn total_initial(&self) -> Charge {
        self.initial.iter().sum()
    }

    pub fn total_after(&self) -> Charge {
        self.after.iter().sum()
    }

    pub fn is_conserved(&self) -> bool {
        self.total_initial() == self.total_after()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.after.iter().all(|c| !c.is_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DischargeSummary {
    pub conserved: bool,
    pub nonnegative: bool,
    pub max_degree: usize,
    pub max_degree_ok: bool,
    /// `Σ (deg − 6) <= 6g − 12`, which Euler's formula gives for a core of
    /// genus at most `g` on three or more vertices.
    pub euler_sum_ok: bool,
}

#[derive(Debug, Clone)]
pub struct DischargeOutcome {
    pub ledger: ChargeLedger,
    pub summary: DischargeSummary,
}

pub fn discharge_check(core: &OrientedGraph, genus: usize) -> Result<DischargeOutcome, DischargeError> {
    let params = SurfaceParams::new(genus).map_err(|e| DischargeError::GenusTooSmall(e.0))?;
    let n = core.n();
    if !is_reduced(core, &vec![true; n], &params) {
        return Err(DischargeError::NotReduced(
            "a vertex of degree <= 3 or a light vertex with a neighbour of degree < 12 remains".into(),
        ));
    }
    let initial: Vec<Charge> = (0..n).map(|v| Charge::from_integer(core.degree(v) as i64 - 6)).collect();
    let mut after = initial.clone();
    let mut transfers = Vec::new();
    for v in 0..n {
        let amount = match core.degree(v) {
            4 => Charge::new(1, 2),
            5 => Charge::new(1, 5),
            _ => continue,
        };
        for u in core.neighbours(v) {
            after[u] -= amount;
            after[v] += amount;
            transfers.push(Transfer { from: u, to: v, amount });
        }
    }
    let ledger = ChargeLedger { initial, after, transfers };
    let max_degree = core.max_degree();
    let total = ledger.total_initial();
    let summary = DischargeSummary {
        conserved: ledger.is_conserved(),
        nonnegative: ledger.all_nonnegative(),
        max_degree,
        max_degree_ok: max_degree <= params.max_degree,
        euler_sum_ok: n < 3 || total <= Charge::from_integer(6 * genus as i64 - 12),
    };
    Ok(DischargeOutcome { ledger, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{random_orientation, triangular_torus};
    use crate::graph::SimpleGraph;
    use num_traits::Zero;

    #[test]
    fn empty_core() {
        let out = discharge_check(&OrientedGraph::new(0), 2).unwrap();
        assert!(out.summary.conserved && out.summary.nonnegative && out.summary.max_degree_ok);
        assert!(out.ledger.transfers.is_empty());
    }

    #[test]
    fn k12_minus_matching() {
        let mut s = SimpleGraph::complete(12);
        for i in 0..6 {
            s.remove_edge(2 * i, 2 * i + 1);
        }
        let g = random_orientation(&s, 5);
        let out = discharge_check(&g, 2).unwrap();
        assert!(out.ledger.after.iter().all(|&c| c == Charge::from_integer(4)));
        assert!(out.summary.max_degree_ok && out.summary.conserved);
    }

    #[test]
    fn six_regular_torus_has_zero_charge() {
        let g = random_orientation(&triangular_torus(6, 6), 2);
        let out = discharge_check(&g, 2).unwrap();
        assert_eq!(out.ledger.total_initial(), Charge::zero());
        assert!(out.summary.euler_sum_ok);
    }

    #[test]
    fn light_vertices_receive_exactly_their_deficit() {
        // K_{4,12}: degree-4 vertices whose neighbours all have degree 12
        let edges = (0..4).flat_map(|a| (4..16).map(move |b| (a, b)));
        let g = random_orientation(&SimpleGraph::from_edges(16, edges), 3);
        let out = discharge_check(&g, 2).unwrap();
        assert!((4..16).all(|v| out.ledger.after[v].is_zero()));
        assert!((0..4).all(|v| out.ledger.after[v] == Charge::zero()));
        assert!(out.summary.conserved);
    }

    #[test]
    fn unreduced_input_is_rejected() {
        let g = OrientedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(discharge_check(&g, 2), Err(DischargeError::NotReduced(_))));
    }
}
