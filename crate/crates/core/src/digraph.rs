//! Immutable digraph with mirrored out- and in-adjacency in compressed
//! sparse row form.
//!
//! Vertices are the ids `0..n`. Arcs are irreflexive and unique; each
//! adjacency row is sorted, so two digraphs with the same arc set compare
//! equal and serialize identically.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Ids are contiguous and 0-based.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {vertex} out of range for order {n}")]
    OutOfRange { vertex: u64, n: usize },
    #[error("order {0} exceeds the supported maximum")]
    TooManyVertices(usize),
}

/// Compressed sparse row adjacency: row `v` is `targets[offsets[v]..offsets[v + 1]]`.
#[derive(Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Csr {
    fn empty(n: usize) -> Self {
        Csr {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    #[inline]
    fn row(&self, v: usize) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Builds the transpose. Rows come out sorted because sources are
    /// visited in increasing order.
    fn transpose(&self, n: usize) -> Csr {
        let mut counts = vec![0usize; n + 1];
        for &t in &self.targets {
            counts[t as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let mut cursor = counts;
        let mut targets = vec![0; self.targets.len()];
        for u in 0..n {
            for &t in self.row(u) {
                let slot = &mut cursor[t as usize];
                targets[*slot] = u as Vertex;
                *slot += 1;
            }
        }
        Csr { offsets, targets }
    }
}

/// A finite digraph with an irreflexive, duplicate-free arc relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Csr,
    inc: Csr,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// The digraph on `n` vertices with no arcs.
    pub fn edgeless(n: usize) -> Self {
        Digraph {
            n,
            out: Csr::empty(n),
            inc: Csr::empty(n),
        }
    }

    /// Builds a digraph from an arc list, rejecting self-loops, duplicate
    /// arcs and out-of-range endpoints.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::build(n, arcs, false)
    }

    /// Like [`Digraph::from_arcs`] but silently collapses repeated arcs.
    pub fn from_arcs_dedup<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::build(n, arcs, true)
    }

    fn build<I>(n: usize, arcs: I, dedup: bool) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n > Vertex::MAX as usize {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut list: Vec<(Vertex, Vertex)> = Vec::new();
        let mut counts = vec![0usize; n + 1];
        for (u, v) in arcs {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::OutOfRange { vertex: x as u64, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            counts[u as usize + 1] += 1;
            list.push((u, v));
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut cursor = counts.clone();
        let mut targets = vec![0; list.len()];
        for &(u, v) in &list {
            let slot = &mut cursor[u as usize];
            targets[*slot] = v;
            *slot += 1;
        }
        drop(list);

        // Sort each row, then detect or squeeze out repeats.
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut write = 0;
        for u in 0..n {
            let (start, end) = (counts[u], counts[u + 1]);
            targets[start..end].sort_unstable();
            let mut prev: Option<Vertex> = None;
            for read in start..end {
                let v = targets[read];
                if prev == Some(v) {
                    if dedup {
                        continue;
                    }
                    return Err(GraphError::DuplicateArc(u as Vertex, v));
                }
                prev = Some(v);
                targets[write] = v;
                write += 1;
            }
            offsets.push(write);
        }
        targets.truncate(write);

        let out = Csr { offsets, targets };
        let inc = out.transpose(n);
        Ok(Digraph { n, out, inc })
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of arcs.
    #[inline]
    pub fn arc_count(&self) -> usize {
        self.out.targets.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).map(|v| v as Vertex)
    }

    /// All arcs in `(tail, head)` lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.out.row(u).iter().map(move |&v| (u as Vertex, v)))
    }

    fn check(&self, v: Vertex) -> Result<usize, GraphError> {
        let i = v as usize;
        if i < self.n {
            Ok(i)
        } else {
            Err(GraphError::OutOfRange {
                vertex: v as u64,
                n: self.n,
            })
        }
    }

    /// Sorted heads of the arcs leaving `v`. Panics if `v` is out of range.
    #[inline]
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        self.out.row(v as usize)
    }

    /// Sorted tails of the arcs entering `v`. Panics if `v` is out of range.
    #[inline]
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        self.inc.row(v as usize)
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.n && self.out_neighbors(u).binary_search(&v).is_ok()
    }

    pub fn out_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v).map(|i| self.out.row(i).len())
    }

    pub fn in_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v).map(|i| self.inc.row(i).len())
    }

    /// `|N⁻(v) ∪ N⁺(v)|`: the number of distinct neighbors regardless of
    /// direction. On a symmetric digraph this is the undirected degree.
    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        let i = self.check(v)?;
        let (a, b) = (self.out.row(i), self.inc.row(i));
        let common = sorted_intersection_len(a, b);
        Ok(a.len() + b.len() - common)
    }

    /// `|N⁻(v)| + |N⁺(v)|`, counting both arcs of a digon.
    pub fn total_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        let i = self.check(v)?;
        Ok(self.out.row(i).len() + self.inc.row(i).len())
    }

    /// The digraph with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inc.clone(),
            inc: self.out.clone(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        // Both CSRs hold sorted rows, so symmetry is row-wise equality.
        self.out == self.inc
    }

    /// Subdigraph induced by `set`. Vertex `i` of the result corresponds to
    /// `remap[i]` in `self`; the remap lists `set` in increasing order.
    pub fn induced_subdigraph(&self, set: &VertexSet) -> Result<(Digraph, Vec<Vertex>), GraphError> {
        self.check_universe(set)?;
        let remap = set.members().to_vec();
        let mut index = vec![Vertex::MAX; self.n];
        for (i, &v) in remap.iter().enumerate() {
            index[v as usize] = i as Vertex;
        }
        let arcs = remap.iter().enumerate().flat_map(|(i, &u)| {
            let index = &index;
            self.out_neighbors(u)
                .iter()
                .filter(move |&&w| index[w as usize] != Vertex::MAX)
                .map(move |&w| (i as Vertex, index[w as usize]))
        });
        let sub =
            Digraph::from_arcs(remap.len(), arcs.collect::<Vec<_>>()).expect("restriction of a valid digraph is valid");
        Ok((sub, remap))
    }

    /// Kahn elimination: repeatedly delete vertices of in-degree zero.
    /// Acyclic iff every vertex is eliminated. Digons are cycles.
    pub fn is_acyclic(&self) -> bool {
        self.is_acyclic_on(&vec![true; self.n])
    }

    /// Acyclicity of the subdigraph induced by the vertices whose `mask`
    /// entry is set, without materializing it.
    pub fn is_acyclic_on(&self, mask: &[bool]) -> bool {
        debug_assert_eq!(mask.len(), self.n);
        let mut indeg = vec![0u32; self.n];
        let mut remaining = 0usize;
        for v in 0..self.n {
            if !mask[v] {
                continue;
            }
            remaining += 1;
            indeg[v] = self.inc.row(v).iter().filter(|&&u| mask[u as usize]).count() as u32;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| mask[v] && indeg[v] == 0).collect();
        while let Some(u) = queue.pop_front() {
            remaining -= 1;
            for &w in self.out.row(u) {
                let w = w as usize;
                if mask[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        remaining == 0
    }

    /// No arc has both endpoints in `set`.
    pub fn is_independent_set(&self, set: &VertexSet) -> Result<bool, GraphError> {
        self.check_universe(set)?;
        let mask = set.to_mask();
        Ok(set
            .iter()
            .all(|u| self.out_neighbors(u).iter().all(|&w| !mask[w as usize])))
    }

    /// `V ∖ set` induces an acyclic subdigraph.
    pub fn is_feedback_vertex_set(&self, set: &VertexSet) -> Result<bool, GraphError> {
        self.check_universe(set)?;
        let mask: Vec<bool> = set.to_mask().into_iter().map(|x| !x).collect();
        Ok(self.is_acyclic_on(&mask))
    }

    fn check_universe(&self, set: &VertexSet) -> Result<(), GraphError> {
        if set.universe() != self.n {
            if let Some(&v) = set.members().iter().find(|&&v| v as usize >= self.n) {
                return Err(GraphError::OutOfRange {
                    vertex: v as u64,
                    n: self.n,
                });
            }
        }
        Ok(())
    }

    /// Checks every structural invariant. Constructors already guarantee
    /// these; the routine exists for tests and for data crossing a trust
    /// boundary.
    pub fn validate(&self) -> Result<(), String> {
        for (name, csr) in [("out", &self.out), ("in", &self.inc)] {
            if csr.offsets.len() != self.n + 1 || csr.offsets[self.n] != csr.targets.len() {
                return Err(format!("{name}: offset table inconsistent"));
            }
            for v in 0..self.n {
                let row = csr.row(v);
                if row.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(format!("{name}: row {v} not strictly sorted"));
                }
                if row.iter().any(|&w| w as usize >= self.n) {
                    return Err(format!("{name}: row {v} has out-of-range id"));
                }
                if row.contains(&(v as Vertex)) {
                    return Err(format!("{name}: self-loop at {v}"));
                }
            }
        }
        if self.out.targets.len() != self.inc.targets.len() {
            return Err("arc counts of out and in adjacency differ".into());
        }
        if self.out.transpose(self.n) != self.inc {
            return Err("in adjacency does not mirror out adjacency".into());
        }
        Ok(())
    }
}

fn sorted_intersection_len(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// A set of vertex ids drawn from the universe `0..n`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            members: Vec::new(),
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            universe,
            members: (0..universe as Vertex).collect(),
        }
    }

    /// Builds a set, rejecting ids outside the universe. Repeated ids are
    /// collapsed.
    pub fn new<I>(universe: usize, members: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut members: Vec<Vertex> = members.into_iter().collect();
        if let Some(&v) = members.iter().find(|&&v| v as usize >= universe) {
            return Err(GraphError::OutOfRange {
                vertex: v as u64,
                n: universe,
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { universe, members })
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet {
            universe: mask.len(),
            members: (0..mask.len()).filter(|&v| mask[v]).map(|v| v as Vertex).collect(),
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.to_mask();
        VertexSet {
            universe: self.universe,
            members: (0..self.universe).filter(|&v| !mask[v]).map(|v| v as Vertex).collect(),
        }
    }

    pub fn to_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &v in &self.members {
            mask[v as usize] = true;
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digon() -> Digraph {
        Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()
    }

    fn triangle() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn sym_k3() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(digon().arc_count(), 2);
        assert_eq!(triangle().arc_count(), 3);
        assert_eq!(Digraph::from_arcs(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Digraph::from_arcs(3, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateArc(0, 1))
        );
        assert_eq!(
            Digraph::from_arcs(3, [(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        );
        let d = Digraph::from_arcs_dedup(3, [(2, 1), (0, 1), (2, 1)]).unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 1), (2, 1)]);
        d.validate().unwrap();
    }

    #[test]
    fn arcs_come_out_sorted() {
        let d = Digraph::from_arcs(4, [(3, 0), (1, 2), (1, 0), (0, 3)]).unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 3), (1, 0), (1, 2), (3, 0)]);
        assert_eq!(d.in_neighbors(0), &[1, 3]);
        d.validate().unwrap();
    }

    #[test]
    fn degrees() {
        let d = digon();
        assert_eq!(d.out_degree(0), Ok(1));
        assert_eq!(d.in_degree(0), Ok(1));
        assert_eq!(d.degree(0), Ok(1));
        assert_eq!(d.total_degree(0), Ok(2));

        let t = triangle();
        assert_eq!(t.out_degree(0), Ok(1));
        assert_eq!(t.in_degree(0), Ok(1));
        assert_eq!(t.degree(0), Ok(2));
        assert_eq!(t.total_degree(0), Ok(2));

        assert_eq!(sym_k3().out_degree(0), Ok(2));

        let e = Digraph::edgeless(2);
        assert_eq!(e.out_degree(1), Ok(0));
        assert_eq!(e.in_degree(1), Ok(0));
        assert_eq!(e.degree(1), Ok(0));
        assert_eq!(e.total_degree(1), Ok(0));
        assert!(e.out_degree(2).is_err());
    }

    #[test]
    fn induced() {
        let t = triangle();
        let (sub, remap) = t.induced_subdigraph(&VertexSet::new(3, [0, 2]).unwrap()).unwrap();
        assert_eq!(remap, vec![0, 2]);
        // 2→0 becomes 1→0
        assert_eq!(sub.arcs().collect::<Vec<_>>(), vec![(1, 0)]);

        let (all, _) = t.induced_subdigraph(&VertexSet::full(3)).unwrap();
        assert_eq!(all, t);
        let (none, _) = t.induced_subdigraph(&VertexSet::empty(3)).unwrap();
        assert_eq!(none.order(), 0);
        assert_eq!(none.arc_count(), 0);
    }

    #[test]
    fn acyclicity() {
        assert!(!digon().is_acyclic());
        assert!(!triangle().is_acyclic());
        assert!(Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap().is_acyclic());
        assert!(Digraph::edgeless(0).is_acyclic());
    }

    #[test]
    fn reversal() {
        assert_eq!(digon().reverse(), digon());
        let r = triangle().reverse();
        assert_eq!(r.arcs().collect::<Vec<_>>(), vec![(0, 2), (1, 0), (2, 1)]);
        assert_eq!(r.reverse(), triangle());
        r.validate().unwrap();
    }

    #[test]
    fn symmetry_and_independence() {
        assert!(sym_k3().is_symmetric());
        assert!(!triangle().is_symmetric());
        let two_k3 = Digraph::from_arcs(
            6,
            [
                (0, 1),
                (0, 2),
                (1, 0),
                (1, 2),
                (2, 0),
                (2, 1),
                (3, 4),
                (3, 5),
                (4, 3),
                (4, 5),
                (5, 3),
                (5, 4),
            ],
        )
        .unwrap();
        assert!(two_k3.is_symmetric());
        assert_eq!(two_k3.is_independent_set(&VertexSet::new(6, [0, 3]).unwrap()), Ok(true));
        assert_eq!(
            two_k3.is_independent_set(&VertexSet::new(6, [0, 1]).unwrap()),
            Ok(false)
        );
        assert!(two_k3.is_independent_set(&VertexSet::new(7, [6]).unwrap()).is_err());
    }

    #[test]
    fn feedback_sets() {
        let t = triangle();
        assert_eq!(t.is_feedback_vertex_set(&VertexSet::new(3, [0]).unwrap()), Ok(true));
        assert_eq!(t.is_feedback_vertex_set(&VertexSet::empty(3)), Ok(false));
        assert_eq!(t.is_feedback_vertex_set(&VertexSet::full(3)), Ok(true));
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::new(5, [3, 1, 3]).unwrap();
        assert_eq!(s.members(), &[1, 3]);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.complement().members(), &[0, 2, 4]);
        assert_eq!(VertexSet::from_mask(&s.to_mask()), s);
        assert!(VertexSet::new(2, [2]).is_err());
    }
}
