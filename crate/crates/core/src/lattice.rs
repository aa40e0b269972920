//! Matching-code lattice, its stabilizer generators, and the defect exchange.
//!
//! The honeycomb is embedded as a brick wall. Vertex `(r, c)` has horizontal
//! neighbours `(r, c ± 1)` and one vertical neighbour. The horizontal edge
//! `(r, c)-(r, c + 1)` is red (`XX`) when `r + c` is even and green (`YY`)
//! otherwise; vertical edges are blue (`ZZ`) and join `(r, c)` to
//! `(r + 1, c)` when `r + c` is even. Hexagon `(i, j)` spans vertex rows
//! `i, i + 1` and columns `c0..=c0 + 2` with `c0 = 2j + (i mod 2)`.
//!
//! Vertices are numbered row-major over `(row, col)`; edges and hexagons in
//! order of first appearance while walking hexagons row-major.
//!
//! Exchange labelling: the two Majorana-pair edges are blue edges hanging off
//! vertices `v1` and `v3`, which are joined through a common neighbour `v2`
//! by a green edge `v1-v2` and a red edge `v2-v3`. The blue edge at `v2` is
//! the "mover" check that is removed and later restored.

use std::collections::{BTreeMap, BTreeSet};

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::ParityBasis;
use crate::pauli::{Pauli, PauliOperator};
use crate::statevec::{StateVector, PROBABILITY_FLOOR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Red,
    Green,
    Blue,
}

impl EdgeColor {
    pub const ALL: [EdgeColor; 3] = [EdgeColor::Red, EdgeColor::Green, EdgeColor::Blue];

    pub fn basis(self) -> ParityBasis {
        match self {
            EdgeColor::Red => ParityBasis::XX,
            EdgeColor::Green => ParityBasis::YY,
            EdgeColor::Blue => ParityBasis::ZZ,
        }
    }

    pub fn pauli(self) -> Pauli {
        self.basis().pauli()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    /// Vertex ids, smaller first.
    pub endpoints: (usize, usize),
    pub color: EdgeColor,
}

impl Edge {
    pub fn other(&self, v: usize) -> Option<usize> {
        match self.endpoints {
            (a, b) if a == v => Some(b),
            (a, b) if b == v => Some(a),
            _ => None,
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hexagon {
    pub id: usize,
    /// Boundary vertices clockwise from the top-left corner.
    pub vertices: [usize; 6],
    /// `edges[k]` joins `vertices[k]` and `vertices[(k + 1) % 6]`.
    pub edges: [usize; 6],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub rows: usize,
    pub cols: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub hexagons: Vec<Hexagon>,
}

fn horizontal_color(row: usize, col: usize) -> EdgeColor {
    if (row + col).is_multiple_of(2) {
        EdgeColor::Red
    } else {
        EdgeColor::Green
    }
}

/// Brick-wall patch of `rows x cols` hexagons.
pub fn build_lattice(rows: usize, cols: usize) -> Result<Lattice> {
    if rows == 0 || cols == 0 {
        return Err(Error::Construction(format!(
            "lattice dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let ring = |i: usize, j: usize| -> [(usize, usize); 6] {
        let c0 = 2 * j + i % 2;
        [
            (i, c0),
            (i, c0 + 1),
            (i, c0 + 2),
            (i + 1, c0 + 2),
            (i + 1, c0 + 1),
            (i + 1, c0),
        ]
    };

    let coords: BTreeSet<(usize, usize)> = (0..rows)
        .flat_map(|i| (0..cols).flat_map(move |j| ring(i, j)))
        .collect();
    let index: BTreeMap<(usize, usize), usize> =
        coords.iter().enumerate().map(|(id, &rc)| (rc, id)).collect();
    let vertices = coords
        .iter()
        .enumerate()
        .map(|(id, &(row, col))| Vertex { id, row, col })
        .collect();

    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut hexagons = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let corners = ring(i, j);
            let ids = corners.map(|rc| index[&rc]);
            let mut hex_edges = [0usize; 6];
            for k in 0..6 {
                let (p, q) = (corners[k], corners[(k + 1) % 6]);
                let color = if p.0 == q.0 {
                    horizontal_color(p.0, p.1.min(q.1))
                } else {
                    EdgeColor::Blue
                };
                let (a, b) = (ids[k].min(ids[(k + 1) % 6]), ids[k].max(ids[(k + 1) % 6]));
                let id = *edge_index.entry((a, b)).or_insert_with(|| {
                    edges.push(Edge {
                        id: edges.len(),
                        endpoints: (a, b),
                        color,
                    });
                    edges.len() - 1
                });
                hex_edges[k] = id;
            }
            hexagons.push(Hexagon {
                id: hexagons.len(),
                vertices: ids,
                edges: hex_edges,
            });
        }
    }

    Ok(Lattice {
        rows,
        cols,
        vertices,
        edges,
        hexagons,
    })
}

impl Lattice {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_at(&self, row: usize, col: usize) -> Option<usize> {
        self.vertices
            .iter()
            .find(|v| v.row == row && v.col == col)
            .map(|v| v.id)
    }

    pub fn incident_edges(&self, v: usize) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.touches(v)).collect()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&Edge> {
        let key = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.endpoints == key)
    }

    pub fn edge_of_color(&self, v: usize, color: EdgeColor) -> Option<&Edge> {
        self.edges.iter().find(|e| e.touches(v) && e.color == color)
    }

    pub fn edge_operator(&self, edge: usize) -> Result<PauliOperator> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| Error::Topology(format!("no edge {edge}")))?;
        PauliOperator::two_body(self.num_vertices(), e.endpoints.0, e.endpoints.1, e.color.pauli())
    }

    /// Product over the boundary vertices of the Pauli belonging to each
    /// vertex's third edge colour (the one not on the hexagon's boundary).
    pub fn hexagon_operator(&self, hex: usize) -> Result<PauliOperator> {
        let h = self
            .hexagons
            .get(hex)
            .ok_or_else(|| Error::Topology(format!("no hexagon {hex}")))?;
        let mut terms = Vec::with_capacity(6);
        for k in 0..6 {
            let before = self.edges[h.edges[(k + 5) % 6]].color;
            let after = self.edges[h.edges[k]].color;
            let outward = EdgeColor::ALL
                .into_iter()
                .find(|&c| c != before && c != after)
                .ok_or_else(|| Error::Topology("hexagon ring is not 3-coloured".into()))?;
            terms.push((h.vertices[k], outward.pauli()));
        }
        PauliOperator::from_terms(self.num_vertices(), &terms)
    }

    /// `ZZ` on every blue edge plus every hexagon operator.
    pub fn standard_stabilizers(&self) -> Result<StabilizerSet> {
        let mut generators = Vec::new();
        for e in self.edges.iter().filter(|e| e.color == EdgeColor::Blue) {
            generators.push(Generator {
                label: Label::Edge(e.id),
                operator: self.edge_operator(e.id)?,
            });
        }
        for h in &self.hexagons {
            generators.push(Generator {
                label: Label::Hexagon(h.id),
                operator: self.hexagon_operator(h.id)?,
            });
        }
        Ok(StabilizerSet::new(generators))
    }
}

pub fn standard_stabilizers(lat: &Lattice) -> Result<StabilizerSet> {
    lat.standard_stabilizers()
}

/// Where a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum Label {
    Edge(usize),
    Hexagon(usize),
    /// Single-qubit `Z` left over after truncating a blue edge.
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: Label,
    pub operator: PauliOperator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerSet {
    generators: Vec<Generator>,
}

impl StabilizerSet {
    pub fn new(generators: Vec<Generator>) -> Self {
        StabilizerSet { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.generators.iter().map(|g| g.label).collect()
    }

    pub fn get(&self, label: Label) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }

    pub fn contains(&self, label: Label) -> bool {
        self.get(label).is_some()
    }

    pub fn all_commute(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.operator.commutes_with(&b.operator))
        })
    }

    /// Labels of generators anticommuting with `op`.
    pub fn anticommuting_with(&self, op: &PauliOperator) -> Vec<Label> {
        self.generators
            .iter()
            .filter(|g| !g.operator.commutes_with(op))
            .map(|g| g.label)
            .collect()
    }

    /// GF(2) rank of the symplectic `[x | z]` matrix.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BitVec<u64, Lsb0>> = self
            .generators
            .iter()
            .map(|g| {
                let mut row = g.operator.x_bits().to_bitvec();
                row.extend_from_bitslice(g.operator.z_bits());
                row
            })
            .collect();
        let width = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..width {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] {
                    *row ^= &pivot_row;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.len()
    }

    /// As many generators as vertex qubits.
    pub fn is_complete(&self, num_vertices: usize) -> bool {
        self.len() == num_vertices
    }

    fn apply_measurement(&self, added: &Generator) -> (StabilizerSet, Vec<Label>) {
        let removed = self.anticommuting_with(&added.operator);
        let mut generators: Vec<Generator> = self
            .generators
            .iter()
            .filter(|g| !removed.contains(&g.label))
            .cloned()
            .collect();
        generators.push(added.clone());
        (StabilizerSet { generators }, removed)
    }

    /// Same generators regardless of order.
    pub fn same_as(&self, other: &StabilizerSet) -> bool {
        self.len() == other.len()
            && self
                .generators
                .iter()
                .all(|g| other.get(g.label).is_some_and(|h| h.operator == g.operator))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub added: Generator,
    /// Generators that anticommute with `added` and leave the check set.
    pub removed: Vec<Label>,
}

/// Vertex and edge ids playing each part in the exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeRoles {
    /// `v1`: joined to the centre by the green edge.
    pub yy_partner: usize,
    /// `v2`.
    pub center: usize,
    /// `v3`: joined to the centre by the red edge.
    pub xx_partner: usize,
    pub yy_edge: usize,
    pub xx_edge: usize,
    /// Blue edge at the centre, removed and later restored.
    pub mover_edge: usize,
    /// Blue edges at `v1` and `v3` holding the exchanged Majorana pairs.
    pub pair_edges: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeSchedule {
    pub num_vertices: usize,
    /// Check set before the first step.
    pub initial: StabilizerSet,
    /// Operators read out after the last step (the pair occupations).
    pub pair_operators: Vec<Generator>,
    pub steps: Vec<ScheduleStep>,
    pub roles: Option<ExchangeRoles>,
}

impl ExchangeSchedule {
    /// Schedule that measures `added` in order, each time dropping the
    /// checks that anticommute with the new one.
    pub fn from_measurements(
        initial: StabilizerSet,
        pair_operators: Vec<Generator>,
        added: Vec<Generator>,
        num_vertices: usize,
    ) -> Self {
        let mut current = initial.clone();
        let mut steps = Vec::with_capacity(added.len());
        for g in added {
            let (next, removed) = current.apply_measurement(&g);
            steps.push(ScheduleStep { added: g, removed });
            current = next;
        }
        ExchangeSchedule {
            num_vertices,
            initial,
            pair_operators,
            steps,
            roles: None,
        }
    }

    /// Check sets: the initial one followed by the set after each step.
    pub fn check_sets(&self) -> Vec<StabilizerSet> {
        let mut out = vec![self.initial.clone()];
        for step in &self.steps {
            let (next, _) = out.last().unwrap().apply_measurement(&step.added);
            out.push(next);
        }
        out
    }

    pub fn final_set(&self) -> StabilizerSet {
        self.check_sets().pop().unwrap()
    }
}

/// Exchange of the Majorana pairs on blue edges `zz_edge_a` and `zz_edge_b`.
///
/// The edges must hang off two vertices that share a neighbour through one
/// green and one red edge. The initial check set is every blue edge except
/// the two pair edges, plus every hexagon. Steps add `YY(v1, v2)`,
/// `XX(v2, v3)` and finally the blue check at `v2` again.
pub fn exchange_schedule(lat: &Lattice, zz_edge_a: usize, zz_edge_b: usize) -> Result<ExchangeSchedule> {
    let edge = |id: usize| {
        lat.edges
            .get(id)
            .ok_or_else(|| Error::Topology(format!("no edge {id}")))
    };
    let (ea, eb) = (edge(zz_edge_a)?, edge(zz_edge_b)?);
    if ea.color != EdgeColor::Blue || eb.color != EdgeColor::Blue || zz_edge_a == zz_edge_b {
        return Err(Error::Topology(
            "exchange needs two distinct blue (ZZ) edges".into(),
        ));
    }

    let find = |first: &Edge, second: &Edge| -> Option<ExchangeRoles> {
        for v1 in [first.endpoints.0, first.endpoints.1] {
            let Some(yy) = lat.edge_of_color(v1, EdgeColor::Green) else {
                continue;
            };
            let center = yy.other(v1)?;
            let Some(xx) = lat.edge_of_color(center, EdgeColor::Red) else {
                continue;
            };
            let v3 = xx.other(center)?;
            if !second.touches(v3) {
                continue;
            }
            let mover = lat.edge_of_color(center, EdgeColor::Blue)?;
            return Some(ExchangeRoles {
                yy_partner: v1,
                center,
                xx_partner: v3,
                yy_edge: yy.id,
                xx_edge: xx.id,
                mover_edge: mover.id,
                pair_edges: [first.id, second.id],
            });
        }
        None
    };
    let roles = find(ea, eb).or_else(|| find(eb, ea)).ok_or_else(|| {
        Error::Topology(format!(
            "edges {zz_edge_a} and {zz_edge_b} are not joined by a green and a red edge through a vertex with a blue edge"
        ))
    })?;

    let standard = lat.standard_stabilizers()?;
    let pair_labels = [Label::Edge(roles.pair_edges[0]), Label::Edge(roles.pair_edges[1])];
    let initial = StabilizerSet::new(
        standard
            .generators()
            .iter()
            .filter(|g| !pair_labels.contains(&g.label))
            .cloned()
            .collect(),
    );
    let pair_operators = roles
        .pair_edges
        .iter()
        .map(|&e| {
            Ok(Generator {
                label: Label::Edge(e),
                operator: lat.edge_operator(e)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let added = [roles.yy_edge, roles.xx_edge, roles.mover_edge]
        .iter()
        .map(|&e| {
            Ok(Generator {
                label: Label::Edge(e),
                operator: lat.edge_operator(e)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sched = ExchangeSchedule::from_measurements(initial, pair_operators, added, lat.num_vertices());
    sched.roles = Some(roles);
    Ok(sched)
}

/// Qubits the schedule acts on non-trivially.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub vertices: BTreeSet<usize>,
    /// Edges whose ancilla is needed: measured edges with both ends in `vertices`.
    pub edges: BTreeSet<usize>,
}

impl Support {
    pub fn len(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }
}

/// Every vertex starts in a blue-edge (`Z`-type) eigenstate, so a vertex can
/// only change if some measured operator puts `X` or `Y` on it. Measured
/// edges wholly inside that vertex set contribute their ancilla qubit.
pub fn support(sched: &ExchangeSchedule) -> Support {
    let mut vertices = BTreeSet::new();
    for step in &sched.steps {
        let x = step.added.operator.x_bits();
        vertices.extend(x.iter_ones());
    }
    let edges = sched
        .steps
        .iter()
        .filter_map(|s| match s.added.label {
            Label::Edge(e) if s.added.operator.support().iter().all(|q| vertices.contains(q)) => Some(e),
            _ => None,
        })
        .collect();
    Support { vertices, edges }
}

/// Reduced experiment on the support of a schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedExperiment {
    /// Lattice vertex ids; position `i` is local qubit `i`.
    pub vertices: Vec<usize>,
    /// Lattice edge ids of the ancilla qubits, in measurement order.
    pub edges: Vec<usize>,
    /// Checks in force before the first step, restricted to `vertices`.
    pub initial: Vec<Generator>,
    /// Measurements in order, restricted to `vertices`.
    pub measurements: Vec<Generator>,
    /// Final readouts, restricted to `vertices`.
    pub pair_readouts: Vec<Generator>,
}

/// Restricts `g` to `local`. Blue edges keep their in-support part (a single
/// `Z` when one endpoint is outside); anything else survives only with full
/// support. Returns `None` when nothing is left.
fn restrict_generator(g: &Generator, local: &[usize]) -> Option<Generator> {
    let support = g.operator.support();
    let inside: Vec<usize> = support.iter().copied().filter(|q| local.contains(q)).collect();
    if inside.is_empty() {
        return None;
    }
    let full = inside.len() == support.len();
    let is_edge = matches!(g.label, Label::Edge(_));
    if !full && !is_edge {
        return None;
    }
    let operator = g.operator.restrict(local);
    let label = match (g.label, full) {
        (Label::Edge(_), false) => Label::Vertex(inside[0]),
        (l, _) => l,
    };
    Some(Generator { label, operator })
}

pub fn truncate(sched: &ExchangeSchedule) -> TruncatedExperiment {
    let sup = support(sched);
    let (vertices, edges): (Vec<usize>, Vec<usize>) = match sched.roles {
        Some(r) => (
            vec![r.yy_partner, r.center, r.xx_partner],
            [r.yy_edge, r.xx_edge]
                .into_iter()
                .filter(|e| sup.edges.contains(e))
                .collect(),
        ),
        None => (
            sup.vertices.iter().copied().collect(),
            sup.edges.iter().copied().collect(),
        ),
    };
    let restrict_all = |gens: &[Generator]| -> Vec<Generator> {
        gens.iter()
            .filter_map(|g| restrict_generator(g, &vertices))
            .collect()
    };
    TruncatedExperiment {
        initial: restrict_all(sched.initial.generators()),
        measurements: sched
            .steps
            .iter()
            .filter_map(|s| restrict_generator(&s.added, &vertices))
            .collect(),
        pair_readouts: restrict_all(&sched.pair_operators),
        vertices,
        edges,
    }
}

/// Exact outcome distribution of the untruncated schedule on the dense
/// vertex register.
///
/// The register starts in `|0...0>` projected onto the `+1` eigenspace of
/// every initial check (the blue checks already hold there). Each scheduled
/// measurement and then each pair readout is applied as an ideal projector.
/// Outcome bit `k` is the `k`-th step, followed by one bit per pair
/// operator.
pub fn schedule_outcome_distribution(sched: &ExchangeSchedule) -> Result<BTreeMap<u64, f64>> {
    let mut state = StateVector::new(sched.num_vertices)?;
    for g in sched.initial.generators().iter().chain(&sched.pair_operators) {
        state.project(&g.operator, false)?;
    }
    let ops: Vec<&PauliOperator> = sched
        .steps
        .iter()
        .map(|s| &s.added.operator)
        .chain(sched.pair_operators.iter().map(|g| &g.operator))
        .collect();

    let mut out = BTreeMap::new();
    let mut stack = vec![(0usize, state, 0u64, 1.0f64)];
    while let Some((k, state, bits, prob)) = stack.pop() {
        if k == ops.len() {
            *out.entry(bits).or_insert(0.0) += prob;
            continue;
        }
        for sign in [false, true] {
            let mut branch = state.clone();
            match branch.project(ops[k], sign) {
                Ok(p) if p * prob > PROBABILITY_FLOOR => {
                    let b = if sign { bits | (1 << k) } else { bits };
                    stack.push((k + 1, branch, b, prob * p));
                }
                Ok(_) | Err(Error::ImpossibleOutcome(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Blue edges of the smallest patch that contains the exchange: two rows of
/// one hexagon each, pairs on the blue edges at `(1, 0)` and `(1, 2)`.
pub fn minimal_exchange_lattice() -> Result<(Lattice, usize, usize)> {
    let lat = build_lattice(2, 1)?;
    let pair = |row, col| -> Result<usize> {
        let v = lat
            .vertex_at(row, col)
            .ok_or_else(|| Error::Topology(format!("no vertex at ({row}, {col})")))?;
        lat.edge_of_color(v, EdgeColor::Blue)
            .map(|e| e.id)
            .ok_or_else(|| Error::Topology(format!("no blue edge at ({row}, {col})")))
    };
    let (a, b) = (pair(1, 0)?, pair(1, 2)?);
    Ok((lat, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_hexagon_counts() {
        let lat = build_lattice(1, 1).unwrap();
        assert_eq!(lat.vertices.len(), 6);
        assert_eq!(lat.edges.len(), 6);
        assert_eq!(lat.hexagons.len(), 1);
        let colors: Vec<_> = lat.hexagons[0]
            .edges
            .iter()
            .map(|&e| lat.edges[e].color)
            .collect();
        // opposite sides share a colour
        for k in 0..3 {
            assert_eq!(colors[k], colors[k + 3]);
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(build_lattice(0, 2).is_err());
        assert!(build_lattice(2, 0).is_err());
    }

    #[test]
    fn single_hexagon_stabilizers_commute() {
        let lat = build_lattice(1, 1).unwrap();
        let s = lat.standard_stabilizers().unwrap();
        let zz = s
            .generators()
            .iter()
            .filter(|g| matches!(g.label, Label::Edge(_)))
            .count();
        assert_eq!(zz, 2);
        assert_eq!(s.len(), 3);
        assert!(s.all_commute());
        assert!(s.is_independent());
        let hex = lat.hexagon_operator(0).unwrap();
        assert_eq!(hex.weight(), 6);
        assert_eq!(hex.to_string(), "+YZXXZY");
    }

    #[test]
    fn red_edge_anticommutes_with_blue_sharing_one_vertex() {
        let lat = build_lattice(3, 3).unwrap();
        for red in lat.edges.iter().filter(|e| e.color == EdgeColor::Red) {
            let op = lat.edge_operator(red.id).unwrap();
            for blue in lat.edges.iter().filter(|e| e.color == EdgeColor::Blue) {
                let shared = [blue.endpoints.0, blue.endpoints.1]
                    .iter()
                    .filter(|v| red.touches(**v))
                    .count();
                let b = lat.edge_operator(blue.id).unwrap();
                assert_eq!(op.commutes_with(&b), shared != 1);
            }
        }
    }

    #[test]
    fn adjacent_hexagons_share_one_edge() {
        let lat = build_lattice(3, 3).unwrap();
        for (i, a) in lat.hexagons.iter().enumerate() {
            for b in &lat.hexagons[i + 1..] {
                let shared = a.edges.iter().filter(|e| b.edges.contains(e)).count();
                let shared_vertices = a.vertices.iter().filter(|v| b.vertices.contains(v)).count();
                assert!(shared <= 1);
                assert_eq!(shared == 1, shared_vertices == 2);
            }
        }
    }

    #[test]
    fn minimal_exchange_roles() {
        let (lat, a, b) = minimal_exchange_lattice().unwrap();
        assert_eq!(lat.num_vertices(), 10);
        let sched = exchange_schedule(&lat, a, b).unwrap();
        let r = sched.roles.unwrap();
        assert_eq!(lat.vertices[r.yy_partner].col, 0);
        assert_eq!(lat.vertices[r.center].col, 1);
        assert_eq!(lat.vertices[r.xx_partner].col, 2);
        // argument order does not matter
        let swapped = exchange_schedule(&lat, b, a).unwrap();
        assert_eq!(swapped.roles.unwrap().center, r.center);
    }

    #[test]
    fn schedule_rejects_non_adjacent_edges() {
        let lat = build_lattice(3, 3).unwrap();
        let blues: Vec<_> = lat.edges.iter().filter(|e| e.color == EdgeColor::Blue).collect();
        let far = blues.last().unwrap().id;
        assert!(matches!(
            exchange_schedule(&lat, blues[0].id, far),
            Err(Error::Topology(_))
        ));
        let red = lat.edges.iter().find(|e| e.color == EdgeColor::Red).unwrap().id;
        assert!(exchange_schedule(&lat, red, far).is_err());
    }

    #[test]
    fn empty_schedule_has_empty_support() {
        let lat = build_lattice(1, 1).unwrap();
        let s = ExchangeSchedule::from_measurements(
            lat.standard_stabilizers().unwrap(),
            vec![],
            vec![],
            lat.num_vertices(),
        );
        assert!(support(&s).is_empty());
    }
}
