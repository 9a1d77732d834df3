//! Vertex-oriented uni-trivalent graphs and graded series of them.
//!
//! A [`JacobiDiagram`] has trivalent vertices `0..t` with three slots each
//! and legs `t..t+m` with a single slot. Edges pair up ports, and every
//! trivalent vertex carries a cyclic order of its slots. Legs are
//! unlabeled: two diagrams that differ by a permutation of legs are the
//! same element.
//!
//! [`canonicalize`](JacobiDiagram::canonicalize) maps a diagram to a
//! canonical key together with the AS sign relating the diagram to the
//! key's reference orientation. [`DiagramSeries`] stores rational linear
//! combinations of canonical keys.

mod canon;
mod series;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{Canonical, ComponentKey, DiagramKey};
pub use series::{DiagramSeries, SeriesEntry, TruncationPolicy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("exp_union needs a series without a degree-0 part")]
    DegreeZeroPart,
    #[error("gluing closed a vertex-free dashed circle")]
    CircleFormed,
    #[error("malformed diagram file: {0}")]
    Format(String),
}

/// A half-edge endpoint: slot `slot` of vertex `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub vertex: usize,
    pub slot: u8,
}

impl Port {
    pub fn new(vertex: usize, slot: u8) -> Self {
        Port { vertex, slot }
    }
}

/// A vertex-oriented uni-trivalent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDiagram {
    t: usize,
    m: usize,
    edges: Vec<(Port, Port)>,
    cyclic: Vec<[u8; 3]>,
}

/// Flat half-edge view: trivalent port `(v, s)` is `3v + s`, leg `l` is `3t + l`.
#[derive(Clone, Debug)]
pub(crate) struct HalfEdges {
    pub t: usize,
    pub m: usize,
    pub partner: Vec<usize>,
    pub rot: Vec<[usize; 3]>,
}

impl HalfEdges {
    pub fn vertex_of(&self, port: usize) -> usize {
        if port < 3 * self.t {
            port / 3
        } else {
            self.t + (port - 3 * self.t)
        }
    }

    pub fn port_count(&self) -> usize {
        3 * self.t + self.m
    }

    pub fn leg_port(&self, leg: usize) -> usize {
        3 * self.t + leg
    }
}

impl JacobiDiagram {
    pub fn new(
        t: usize,
        m: usize,
        edges: Vec<(Port, Port)>,
        cyclic: Vec<[u8; 3]>,
    ) -> Result<Self, DiagramError> {
        let d = JacobiDiagram { t, m, edges, cyclic };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let bad = |s: String| Err(DiagramError::Malformed(s));
        if !(self.t + self.m).is_multiple_of(2) {
            return bad(format!("t + m = {} is odd", self.t + self.m));
        }
        if self.cyclic.len() != self.t {
            return bad(format!(
                "{} cyclic orders for {} trivalent vertices",
                self.cyclic.len(),
                self.t
            ));
        }
        for (v, c) in self.cyclic.iter().enumerate() {
            let mut s = *c;
            s.sort_unstable();
            if s != [0, 1, 2] {
                return bad(format!("cyclic order {c:?} at vertex {v} is not a permutation of the slots"));
            }
        }
        let n_ports = 3 * self.t + self.m;
        let mut seen = vec![false; n_ports];
        for (a, b) in &self.edges {
            for p in [a, b] {
                let id = self.port_id(*p)?;
                if seen[id] {
                    return bad(format!("port {p:?} used twice"));
                }
                seen[id] = true;
            }
        }
        if let Some(id) = seen.iter().position(|s| !s) {
            return bad(format!("port #{id} has no incident edge"));
        }
        Ok(())
    }

    fn port_id(&self, p: Port) -> Result<usize, DiagramError> {
        if p.vertex < self.t {
            if p.slot > 2 {
                return Err(DiagramError::Malformed(format!("slot {} on trivalent vertex", p.slot)));
            }
            Ok(3 * p.vertex + p.slot as usize)
        } else if p.vertex < self.t + self.m {
            if p.slot != 0 {
                return Err(DiagramError::Malformed(format!("slot {} on a leg", p.slot)));
            }
            Ok(3 * self.t + (p.vertex - self.t))
        } else {
            Err(DiagramError::Malformed(format!("vertex {} out of range", p.vertex)))
        }
    }

    pub(crate) fn half_edges(&self) -> HalfEdges {
        let n = 3 * self.t + self.m;
        let mut partner = vec![usize::MAX; n];
        for (a, b) in &self.edges {
            let (a, b) = (self.port_id(*a).unwrap(), self.port_id(*b).unwrap());
            partner[a] = b;
            partner[b] = a;
        }
        let rot = self
            .cyclic
            .iter()
            .enumerate()
            .map(|(v, c)| [3 * v + c[0] as usize, 3 * v + c[1] as usize, 3 * v + c[2] as usize])
            .collect();
        HalfEdges {
            t: self.t,
            m: self.m,
            partner,
            rot,
        }
    }

    #[cfg(test)]
    pub(crate) fn from_half_edges(he: &HalfEdges) -> Self {
        let port = |id: usize| {
            if id < 3 * he.t {
                Port::new(id / 3, (id % 3) as u8)
            } else {
                Port::new(he.t + id - 3 * he.t, 0)
            }
        };
        let mut edges = Vec::new();
        for (a, &b) in he.partner.iter().enumerate() {
            if a < b {
                edges.push((port(a), port(b)));
            }
        }
        let cyclic = he
            .rot
            .iter()
            .enumerate()
            .map(|(v, r)| [(r[0] - 3 * v) as u8, (r[1] - 3 * v) as u8, (r[2] - 3 * v) as u8])
            .collect();
        JacobiDiagram {
            t: he.t,
            m: he.m,
            edges,
            cyclic,
        }
    }

    /// Number of trivalent (internal) vertices.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of legs.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Half the number of vertices.
    pub fn degree(&self) -> usize {
        (self.t + self.m) / 2
    }

    pub fn edges(&self) -> &[(Port, Port)] {
        &self.edges
    }

    pub fn cyclic(&self) -> &[[u8; 3]] {
        &self.cyclic
    }

    /// The empty diagram, unit of the disjoint union.
    pub fn empty() -> Self {
        JacobiDiagram {
            t: 0,
            m: 0,
            edges: Vec::new(),
            cyclic: Vec::new(),
        }
    }

    /// The dashed interval: one edge joining two legs.
    pub fn strut() -> Self {
        JacobiDiagram {
            t: 0,
            m: 2,
            edges: vec![(Port::new(0, 0), Port::new(1, 0))],
            cyclic: Vec::new(),
        }
    }

    /// The closed theta graph, drawn in the plane with counterclockwise
    /// orientation at both vertices.
    pub fn theta() -> Self {
        JacobiDiagram {
            t: 2,
            m: 0,
            edges: (0..3).map(|s| (Port::new(0, s), Port::new(1, s))).collect(),
            cyclic: vec![[0, 1, 2], [2, 1, 0]],
        }
    }

    /// An `n`-gon with one leg at each corner, counterclockwise at every vertex.
    /// Slot 0 is the leg, slot 1 the edge to the next corner, slot 2 the previous.
    pub fn polygon_wheel(n: usize) -> Self {
        assert!(n >= 1, "a wheel needs at least one spoke");
        let mut edges = Vec::with_capacity(2 * n);
        for i in 0..n {
            edges.push((Port::new(i, 1), Port::new((i + 1) % n, 2)));
            edges.push((Port::new(i, 0), Port::new(n + i, 0)));
        }
        JacobiDiagram {
            t: n,
            m: n,
            edges,
            cyclic: vec![[0, 1, 2]; n],
        }
    }

    /// Reverses the cyclic order at trivalent vertex `v`.
    pub fn flip_orientation(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.cyclic[v].reverse();
        out
    }

    /// Renames vertices and slots without changing the underlying oriented graph.
    ///
    /// `trivalent_perm[v]` is the new index of trivalent vertex `v`,
    /// `leg_perm[l]` the new index of leg `l`, and `slot_perm[v][s]` the new
    /// name of slot `s` at trivalent vertex `v`.
    pub fn relabeled(
        &self,
        trivalent_perm: &[usize],
        leg_perm: &[usize],
        slot_perm: &[[u8; 3]],
    ) -> Self {
        let map = |p: Port| {
            if p.vertex < self.t {
                Port::new(trivalent_perm[p.vertex], slot_perm[p.vertex][p.slot as usize])
            } else {
                Port::new(self.t + leg_perm[p.vertex - self.t], 0)
            }
        };
        let edges = self.edges.iter().map(|(a, b)| (map(*a), map(*b))).collect();
        let mut cyclic = vec![[0u8; 3]; self.t];
        for (v, c) in self.cyclic.iter().enumerate() {
            let sp = slot_perm[v];
            cyclic[trivalent_perm[v]] = [sp[c[0] as usize], sp[c[1] as usize], sp[c[2] as usize]];
        }
        JacobiDiagram {
            t: self.t,
            m: self.m,
            edges,
            cyclic,
        }
    }

    /// Disjoint union of two diagrams (vertices of `other` are renumbered after ours).
    pub fn disjoint_union(&self, other: &JacobiDiagram) -> JacobiDiagram {
        let t = self.t + other.t;
        let lift_self = |p: Port| {
            if p.vertex < self.t {
                p
            } else {
                Port::new(t + (p.vertex - self.t), 0)
            }
        };
        let lift_other = |p: Port| {
            if p.vertex < other.t {
                Port::new(self.t + p.vertex, p.slot)
            } else {
                Port::new(t + self.m + (p.vertex - other.t), 0)
            }
        };
        let mut edges: Vec<(Port, Port)> = self
            .edges
            .iter()
            .map(|(a, b)| (lift_self(*a), lift_self(*b)))
            .collect();
        edges.extend(other.edges.iter().map(|(a, b)| (lift_other(*a), lift_other(*b))));
        let mut cyclic = self.cyclic.clone();
        cyclic.extend_from_slice(&other.cyclic);
        JacobiDiagram {
            t,
            m: self.m + other.m,
            edges,
            cyclic,
        }
    }

    /// Canonical key and AS sign, or [`Canonical::Zero`] when an
    /// orientation-reversing automorphism forces the diagram to vanish.
    pub fn canonicalize(&self) -> Canonical {
        canon::canonicalize(&self.half_edges())
    }
}

pub(crate) fn canonicalize_half_edges(he: &HalfEdges) -> Canonical {
    canon::canonicalize(he)
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    t: usize,
    m: usize,
    edges: Vec<[[usize; 2]; 2]>,
    cyclic: BTreeMap<String, [u8; 3]>,
}

impl Serialize for JacobiDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramRepr {
            t: self.t,
            m: self.m,
            edges: self
                .edges
                .iter()
                .map(|(a, b)| [[a.vertex, a.slot as usize], [b.vertex, b.slot as usize]])
                .collect(),
            cyclic: self
                .cyclic
                .iter()
                .enumerate()
                .map(|(v, c)| (v.to_string(), *c))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JacobiDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = DiagramRepr::deserialize(d)?;
        let mut cyclic = vec![None; repr.t];
        for (k, c) in repr.cyclic {
            let v: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad vertex key {k:?}")))?;
            if v >= repr.t {
                return Err(D::Error::custom(format!("cyclic order for non-trivalent vertex {v}")));
            }
            cyclic[v] = Some(c);
        }
        let cyclic = cyclic
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| D::Error::custom(format!("vertex {v} has no cyclic order"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut edges = Vec::with_capacity(repr.edges.len());
        for [[v1, s1], [v2, s2]] in repr.edges {
            if s1 > 2 || s2 > 2 {
                return Err(D::Error::custom("slot index above 2"));
            }
            edges.push((Port::new(v1, s1 as u8), Port::new(v2, s2 as u8)));
        }
        JacobiDiagram::new(repr.t, repr.m, edges, cyclic).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_shapes() {
        let w2 = JacobiDiagram::polygon_wheel(2);
        assert_eq!((w2.t(), w2.m(), w2.degree()), (2, 2, 2));
        let s = JacobiDiagram::strut();
        assert_eq!((s.t(), s.m(), s.degree()), (0, 2, 1));
        let th = JacobiDiagram::theta();
        assert_eq!((th.t(), th.m(), th.degree()), (2, 0, 1));
        assert!(JacobiDiagram::new(th.t, th.m, th.edges.clone(), th.cyclic.clone()).is_ok());
    }

    #[test]
    fn malformed_incidence_is_rejected() {
        // port (0,2) unused
        let e = vec![(Port::new(0, 0), Port::new(1, 0)), (Port::new(0, 1), Port::new(2, 0))];
        assert!(JacobiDiagram::new(1, 3, e, vec![[0, 1, 2]]).is_err());
        // leg used twice
        let e = vec![
            (Port::new(0, 0), Port::new(1, 0)),
            (Port::new(0, 1), Port::new(1, 0)),
            (Port::new(0, 2), Port::new(2, 0)),
        ];
        assert!(JacobiDiagram::new(1, 3, e, vec![[0, 1, 2]]).is_err());
        // bad cyclic order
        let w = JacobiDiagram::polygon_wheel(2);
        assert!(JacobiDiagram::new(2, 2, w.edges.clone(), vec![[0, 1, 1], [0, 1, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = JacobiDiagram::polygon_wheel(4);
        let js = serde_json::to_string(&w).unwrap();
        let back: JacobiDiagram = serde_json::from_str(&js).unwrap();
        assert_eq!(back, w);
        let th: JacobiDiagram = serde_json::from_str(
            r#"{"t":2,"m":0,"edges":[[[0,0],[1,0]],[[0,1],[1,1]],[[0,2],[1,2]]],"cyclic":{"0":[0,1,2],"1":[2,1,0]}}"#,
        )
        .unwrap();
        assert_eq!(th, JacobiDiagram::theta());
        assert!(serde_json::from_str::<JacobiDiagram>(
            r#"{"t":2,"m":0,"edges":[[[0,0],[1,0]],[[0,1],[1,1]],[[0,2],[1,2]]],"cyclic":{"0":[0,1,2]}}"#
        )
        .is_err());
    }

    #[test]
    fn half_edge_round_trip() {
        let w = JacobiDiagram::polygon_wheel(3).disjoint_union(&JacobiDiagram::theta());
        let back = JacobiDiagram::from_half_edges(&w.half_edges());
        assert_eq!(back.canonicalize(), w.canonicalize());
        assert!(JacobiDiagram::new(back.t, back.m, back.edges.clone(), back.cyclic.clone()).is_ok());
    }
}
