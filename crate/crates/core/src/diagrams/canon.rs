//! Canonical labeling of Jacobi diagrams up to AS.
//!
//! Each connected component is labeled by individualization and colour
//! refinement over its underlying multigraph (trivalent vertices first,
//! legs after). Among all leaves of the search tree the lexicographically
//! smallest sorted edge list is the key. Any two leaves that realise the
//! key differ by an automorphism; if one of those reverses an odd number of
//! cyclic orders the component equals its own negative and is zero.
//!
//! The sign of a leaf compares each vertex's cyclic order with a reference
//! order: half-edges sorted by the label of the far endpoint. Parallel
//! edges are ordered arbitrarily at their lower endpoint and by partner
//! position at the upper one; swapping two of them flips both endpoints,
//! so the product of signs does not depend on that choice. A self-loop at
//! a trivalent vertex always admits an odd automorphism.

use std::fmt;

use super::{HalfEdges, JacobiDiagram, Port};

/// Canonical form of one connected component: `t` trivalent vertices
/// labeled `0..t`, `m` legs labeled `t..t+m`, and the sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentKey {
    t: u8,
    m: u8,
    edges: Vec<(u8, u8)>,
}

impl ComponentKey {
    pub fn strut() -> Self {
        ComponentKey {
            t: 0,
            m: 2,
            edges: vec![(0, 1)],
        }
    }

    pub fn t(&self) -> usize {
        self.t as usize
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn is_strut(&self) -> bool {
        self.t == 0
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }
}

/// Canonical key of a diagram: its sorted list of component keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramKey {
    components: Vec<ComponentKey>,
}

impl DiagramKey {
    /// The empty diagram.
    pub fn empty() -> Self {
        DiagramKey::default()
    }

    pub fn from_components(mut components: Vec<ComponentKey>) -> Self {
        components.sort();
        DiagramKey { components }
    }

    pub fn components(&self) -> &[ComponentKey] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn t(&self) -> usize {
        self.components.iter().map(|c| c.t()).sum()
    }

    pub fn m(&self) -> usize {
        self.components.iter().map(|c| c.m()).sum()
    }

    pub fn degree(&self) -> usize {
        (self.t() + self.m()) / 2
    }

    pub fn is_closed(&self) -> bool {
        self.m() == 0
    }

    pub fn strut_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_strut()).count()
    }

    pub fn without_struts(&self) -> DiagramKey {
        DiagramKey {
            components: self.components.iter().filter(|c| !c.is_strut()).cloned().collect(),
        }
    }

    /// Disjoint union; keys of both factors are already canonical, so the
    /// union is canonical with sign `+1`.
    pub fn union(&self, other: &DiagramKey) -> DiagramKey {
        let mut components = Vec::with_capacity(self.components.len() + other.components.len());
        let (mut i, mut j) = (0, 0);
        while i < self.components.len() && j < other.components.len() {
            if self.components[i] <= other.components[j] {
                components.push(self.components[i].clone());
                i += 1;
            } else {
                components.push(other.components[j].clone());
                j += 1;
            }
        }
        components.extend_from_slice(&self.components[i..]);
        components.extend_from_slice(&other.components[j..]);
        DiagramKey { components }
    }

    /// The reference-oriented diagram this key stands for.
    pub fn to_diagram(&self) -> JacobiDiagram {
        let t_total = self.t();
        let mut edges = Vec::new();
        let mut cyclic = Vec::new();
        let (mut t_off, mut l_off) = (0usize, 0usize);
        for c in &self.components {
            let (t, m) = (c.t(), c.m());
            let vertex = |i: usize| {
                if i < t {
                    t_off + i
                } else {
                    t_total + l_off + (i - t)
                }
            };
            let mut next_slot = vec![0u8; t + m];
            for &(a, b) in &c.edges {
                let (a, b) = (a as usize, b as usize);
                let pa = Port::new(vertex(a), next_slot[a]);
                next_slot[a] += 1;
                let pb = Port::new(vertex(b), next_slot[b]);
                next_slot[b] += 1;
                edges.push((pa, pb));
            }
            cyclic.extend(std::iter::repeat_n([0, 1, 2], t));
            t_off += t;
            l_off += m;
        }
        JacobiDiagram::new(t_total, self.m(), edges, cyclic)
            .expect("canonical keys describe well-formed diagrams")
    }
}

impl fmt::Display for DiagramKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "[t{} m{}:", c.t, c.m)?;
            for (a, b) in &c.edges {
                write!(f, " {a}-{b}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    /// The diagram is equal to its own negative under AS.
    Zero,
    /// `diagram = sign * key.to_diagram()` modulo AS.
    Form { key: DiagramKey, sign: i32 },
}

impl Canonical {
    pub fn key(&self) -> Option<&DiagramKey> {
        match self {
            Canonical::Zero => None,
            Canonical::Form { key, .. } => Some(key),
        }
    }

    pub fn sign(&self) -> i32 {
        match self {
            Canonical::Zero => 0,
            Canonical::Form { sign, .. } => *sign,
        }
    }
}

pub(crate) fn canonicalize(he: &HalfEdges) -> Canonical {
    let n = he.t + he.m;
    // self-loop at a trivalent vertex
    for p in 0..3 * he.t {
        if he.vertex_of(he.partner[p]) == p / 3 {
            return Canonical::Zero;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for p in 0..he.port_count() {
        let (a, b) = (he.vertex_of(p), he.vertex_of(he.partner[p]));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut components = Vec::with_capacity(groups.len());
    let mut sign = 1;
    for verts in groups.values() {
        match canonical_component(he, verts) {
            None => return Canonical::Zero,
            Some((key, s)) => {
                components.push(key);
                sign *= s;
            }
        }
    }
    Canonical::Form {
        key: DiagramKey::from_components(components),
        sign,
    }
}

struct Component<'a> {
    he: &'a HalfEdges,
    verts: &'a [usize],
    local: Vec<usize>,
    adj: Vec<Vec<(usize, u32)>>,
    edges: Vec<(usize, usize)>,
    t: usize,
}

struct Search {
    best: Option<Vec<(u8, u8)>>,
    best_sign: i32,
    zero: bool,
}

fn canonical_component(he: &HalfEdges, verts: &[usize]) -> Option<(ComponentKey, i32)> {
    let mut local = vec![usize::MAX; he.t + he.m];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let n = verts.len();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for &v in verts {
        let ports: Vec<usize> = if v < he.t {
            (3 * v..3 * v + 3).collect()
        } else {
            vec![he.leg_port(v - he.t)]
        };
        for p in ports {
            let q = he.partner[p];
            let (a, b) = (local[v], local[he.vertex_of(q)]);
            match adj[a].iter_mut().find(|(w, _)| *w == b) {
                Some(e) => e.1 += 1,
                None => adj[a].push((b, 1)),
            }
            if p < q {
                edges.push((a, b));
            }
        }
    }
    let t = verts.iter().filter(|&&v| v < he.t).count();
    let comp = Component {
        he,
        verts,
        local,
        adj,
        edges,
        t,
    };
    let mut colors: Vec<u32> = verts.iter().map(|&v| u32::from(v >= he.t)).collect();
    rank(&mut colors);
    refine(&mut colors, &comp.adj);
    let mut search = Search {
        best: None,
        best_sign: 0,
        zero: false,
    };
    explore(&comp, colors, &mut search);
    if search.zero {
        return None;
    }
    Some((
        ComponentKey {
            t: t as u8,
            m: (n - t) as u8,
            edges: search.best.expect("search reaches a leaf"),
        },
        search.best_sign,
    ))
}

fn rank(colors: &mut [u32]) {
    let mut vals: Vec<u32> = colors.to_vec();
    vals.sort_unstable();
    vals.dedup();
    for c in colors.iter_mut() {
        *c = vals.binary_search(c).unwrap() as u32;
    }
}

fn class_count(colors: &[u32]) -> usize {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn refine(colors: &mut Vec<u32>, adj: &[Vec<(usize, u32)>]) {
    let mut classes = class_count(colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..colors.len())
            .map(|i| {
                let mut nb: Vec<(u32, u32)> = adj[i].iter().map(|&(j, k)| (colors[j], k)).collect();
                nb.sort_unstable();
                (colors[i], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| uniq.binary_search(s).unwrap() as u32)
            .collect();
        *colors = next;
        if uniq.len() == classes {
            return;
        }
        classes = uniq.len();
    }
}

fn explore(comp: &Component<'_>, colors: Vec<u32>, search: &mut Search) {
    if search.zero {
        return;
    }
    let n = colors.len();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let target = counts.iter().position(|&k| k > 1);
    let Some(target) = target else {
        leaf(comp, &colors, search);
        return;
    };
    let target = target as u32;
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        let mut next: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| 2 * c + u32::from(c == target && i != v))
            .collect();
        rank(&mut next);
        refine(&mut next, &comp.adj);
        explore(comp, next, search);
        if search.zero {
            return;
        }
    }
}

fn leaf(comp: &Component<'_>, pi: &[u32], search: &mut Search) {
    let mut code: Vec<(u8, u8)> = comp
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (pi[a] as u8, pi[b] as u8);
            (x.min(y), x.max(y))
        })
        .collect();
    code.sort_unstable();
    let better = match &search.best {
        None => true,
        Some(b) => code < *b,
    };
    if better {
        search.best_sign = leaf_sign(comp, pi);
        search.best = Some(code);
    } else if search.best.as_ref() == Some(&code) && leaf_sign(comp, pi) != search.best_sign {
        search.zero = true;
    }
}

fn leaf_sign(comp: &Component<'_>, pi: &[u32]) -> i32 {
    let he = comp.he;
    let mut order: Vec<usize> = (0..comp.verts.len())
        .filter(|&i| comp.verts[i] < he.t)
        .collect();
    order.sort_by_key(|&i| pi[i]);
    debug_assert_eq!(order.len(), comp.t);
    let mut ref_pos = vec![usize::MAX; he.port_count()];
    let mut sign = 1;
    for i in order {
        let v = comp.verts[i];
        let mut ports: Vec<(u32, usize, usize)> = (3 * v..3 * v + 3)
            .map(|p| {
                let q = he.partner[p];
                let w = comp.local[he.vertex_of(q)];
                let tie = if pi[w] < pi[i] { ref_pos[q] } else { p };
                (pi[w], tie, p)
            })
            .collect();
        ports.sort_unstable();
        for (pos, &(_, _, p)) in ports.iter().enumerate() {
            ref_pos[p] = pos;
        }
        let reference = [ports[0].2, ports[1].2, ports[2].2];
        if !same_cyclic_order(&reference, &he.rot[v]) {
            sign = -sign;
        }
    }
    sign
}

fn same_cyclic_order(a: &[usize; 3], b: &[usize; 3]) -> bool {
    let i = b.iter().position(|&x| x == a[0]).expect("same port set");
    b[(i + 1) % 3] == a[1]
}
