//! Uniform hypergraphs, their incidence graphs/matrices, connectivity, and
//! the covering-projection checker.
//!
//! Vertices are opaque string identifiers; every matrix and every listing is
//! ordered by declaration order, so downstream output is deterministic.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got {0}")]
    UniformityTooSmall(usize),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("edge {edge} has {got} distinct vertices, expected {expected}")]
    WrongArity {
        edge: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge {edge} repeats vertex `{id}`")]
    DuplicateVertexInEdge { edge: usize, id: String },
    #[error("edge {later} duplicates edge {earlier} (same vertex set)")]
    DuplicateEdge { earlier: usize, later: usize },
    #[error("edge {edge} uses undeclared vertex `{id}`")]
    UnknownVertex { edge: usize, id: String },
    #[error("vertex map is not total on the covering vertex set (missing `{0}`)")]
    MapNotTotal(String),
    #[error("vertex map mentions `{0}`, which is not a covering vertex")]
    MapUnknownVertex(String),
}

/// An m-uniform simple hypergraph. Edges are stored as sorted lists of vertex
/// indices (sorted by declaration order); the order of vertices inside an
/// input edge carries no information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    m: usize,
    vertex_ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(
        m: usize,
        vertices: Vec<String>,
        edges: Vec<Vec<String>>,
    ) -> Result<Self, HypergraphError> {
        if m < 2 {
            return Err(HypergraphError::UniformityTooSmall(m));
        }
        let mut index = HashMap::new();
        for (i, id) in vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(HypergraphError::DuplicateVertexId(id.clone()));
            }
        }
        let mut edge_indices = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            let mut ids = Vec::with_capacity(edge.len());
            for id in edge {
                let &v = index
                    .get(id)
                    .ok_or_else(|| HypergraphError::UnknownVertex { edge: e, id: id.clone() })?;
                if ids.contains(&v) {
                    return Err(HypergraphError::DuplicateVertexInEdge { edge: e, id: id.clone() });
                }
                ids.push(v);
            }
            if ids.len() != m {
                return Err(HypergraphError::WrongArity {
                    edge: e,
                    expected: m,
                    got: ids.len(),
                });
            }
            ids.sort_unstable();
            edge_indices.push(ids);
        }
        for e in 1..edge_indices.len() {
            if let Some(earlier) = edge_indices[..e].iter().position(|x| *x == edge_indices[e]) {
                return Err(HypergraphError::DuplicateEdge { earlier, later: e });
            }
        }
        Ok(Hypergraph {
            m,
            vertex_ids: vertices,
            index,
            edges: edge_indices,
        })
    }

    /// Convenience constructor with vertices named "1".."n".
    pub fn from_edge_indices(
        m: usize,
        n: usize,
        edges: &[Vec<usize>],
    ) -> Result<Self, HypergraphError> {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let edges = edges
            .iter()
            .map(|e| e.iter().map(|&v| (v + 1).to_string()).collect())
            .collect();
        Hypergraph::new(m, vertices, edges)
    }

    pub fn uniformity(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Vertex indices of edge `e`, sorted by declaration order.
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn has_incidence(&self, e: usize, v: usize) -> bool {
        e < self.edges.len() && self.edges[e].contains(&v)
    }

    /// Edge indices incident to vertex `v`, in declaration order.
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].contains(&v))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        let mut vertex_edges = vec![Vec::new(); self.vertex_count()];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                vertex_edges[v].push(e);
            }
        }
        IncidenceGraph {
            vertex_edges,
            edge_vertices: self.edges.clone(),
        }
    }

    /// The |E| x |V| incidence matrix: entry (e, v) is 1 iff v is in e.
    pub fn incidence_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.edge_count(), self.vertex_count(), |e, v| {
            if self.edges[e].contains(&v) { 1 } else { 0 }.into()
        })
    }

    /// Connectivity via breadth-first search on the incidence graph.
    /// Components are reported as sorted lists of vertex indices and cover
    /// isolated vertices too.
    pub fn connectivity(&self) -> Connectivity {
        let b = self.incidence_graph();
        let mut seen_v = vec![false; self.vertex_count()];
        let mut components = Vec::new();
        for start in 0..self.vertex_count() {
            if seen_v[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut seen_e = vec![false; self.edge_count()];
            let mut queue = VecDeque::from([start]);
            seen_v[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &e in &b.vertex_edges[v] {
                    if seen_e[e] {
                        continue;
                    }
                    seen_e[e] = true;
                    for &u in &b.edge_vertices[e] {
                        if !seen_v[u] {
                            seen_v[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        Connectivity {
            connected: components.len() == 1,
            components,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.connectivity().connected
    }

    /// The sub-hypergraph induced by a vertex set: all edges lying fully
    /// inside it, with declaration order inherited.
    pub fn restrict_to(&self, vertices: &[usize]) -> Hypergraph {
        let keep: HashSet<usize> = vertices.iter().copied().collect();
        let mut ids = Vec::new();
        for (v, id) in self.vertex_ids.iter().enumerate() {
            if keep.contains(&v) {
                ids.push(id.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|edge| edge.iter().all(|v| keep.contains(v)))
            .map(|edge| edge.iter().map(|&v| self.vertex_ids[v].clone()).collect())
            .collect();
        Hypergraph::new(self.m, ids, edges).expect("restriction of a valid hypergraph is valid")
    }
}

#[derive(Debug, Clone)]
pub struct Connectivity {
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
}

/// A node of the bipartite incidence graph B_H: either a hypergraph vertex or
/// a hypergraph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BNode {
    Vertex(usize),
    Edge(usize),
}

/// The bipartite incidence graph of a hypergraph: vertex side V(H), edge side
/// E(H), adjacency "v in e".
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    vertex_edges: Vec<Vec<usize>>,
    edge_vertices: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_vertices.len()
    }

    /// All incidences as (edge, vertex) pairs, edge-major.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (e, verts) in self.edge_vertices.iter().enumerate() {
            for &v in verts {
                out.push((e, v));
            }
        }
        out
    }

    pub fn incidence_count(&self) -> usize {
        self.edge_vertices.iter().map(|vs| vs.len()).sum()
    }

    pub fn edges_at_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn vertices_of_edge(&self, e: usize) -> &[usize] {
        &self.edge_vertices[e]
    }

    pub fn neighbors(&self, node: BNode) -> Vec<BNode> {
        match node {
            BNode::Vertex(v) => self.vertex_edges[v].iter().map(|&e| BNode::Edge(e)).collect(),
            BNode::Edge(e) => self.edge_vertices[e].iter().map(|&v| BNode::Vertex(v)).collect(),
        }
    }

    pub fn contains(&self, node: BNode) -> bool {
        match node {
            BNode::Vertex(v) => v < self.vertex_count(),
            BNode::Edge(e) => e < self.edge_count(),
        }
    }

    pub fn is_connected(&self) -> bool {
        let total = self.vertex_count() + self.edge_count();
        if total == 0 {
            return true;
        }
        let start = if self.vertex_count() > 0 {
            BNode::Vertex(0)
        } else {
            BNode::Edge(0)
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            for next in self.neighbors(node) {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen.len() == total
    }
}

/// A map from covering vertex ids to base vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexMap {
    map: BTreeMap<String, String>,
}

impl VertexMap {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> Self {
        VertexMap {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&str> {
        self.map.get(id).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Result of checking a candidate covering projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCheck {
    pub valid: bool,
    /// Fold number k = |f^-1(v)| when the base is connected and the check
    /// passed; None otherwise.
    pub fold: Option<usize>,
}

/// Checks whether `map` is a covering projection from `cover` onto `base`:
/// edges map to edges, vertices and edges are hit surjectively, and the
/// induced map on edge stars is a bijection at every covering vertex.
pub fn is_covering_projection(
    cover: &Hypergraph,
    base: &Hypergraph,
    map: &VertexMap,
) -> Result<CoveringCheck, HypergraphError> {
    for id in cover.vertex_ids() {
        if map.get(id).is_none() {
            return Err(HypergraphError::MapNotTotal(id.clone()));
        }
    }
    for (id, _) in map.iter() {
        if cover.vertex_index(id).is_none() {
            return Err(HypergraphError::MapUnknownVertex(id.to_string()));
        }
    }

    let failed = CoveringCheck { valid: false, fold: None };
    let mut image = vec![usize::MAX; cover.vertex_count()];
    for (v, id) in cover.vertex_ids().iter().enumerate() {
        let target = map.get(id).expect("totality checked");
        match base.vertex_index(target) {
            Some(b) => image[v] = b,
            None => return Ok(failed),
        }
    }

    // edges map to edges, injectively on each edge
    let mut edge_image = vec![usize::MAX; cover.edge_count()];
    for (e, edge) in cover.edges().iter().enumerate() {
        let mut mapped: Vec<usize> = edge.iter().map(|&v| image[v]).collect();
        mapped.sort_unstable();
        mapped.dedup();
        if mapped.len() != cover.uniformity() {
            return Ok(failed);
        }
        match base.edges().iter().position(|be| *be == mapped) {
            Some(be) => edge_image[e] = be,
            None => return Ok(failed),
        }
    }

    // surjectivity on vertices and edges
    let hit_vertices: HashSet<usize> = image.iter().copied().collect();
    if hit_vertices.len() != base.vertex_count() {
        return Ok(failed);
    }
    let hit_edges: HashSet<usize> = edge_image.iter().copied().collect();
    if hit_edges.len() != base.edge_count() {
        return Ok(failed);
    }

    // star bijection at every covering vertex
    for v in 0..cover.vertex_count() {
        let star = cover.edges_at(v);
        let base_star = base.edges_at(image[v]);
        let mut images: Vec<usize> = star.iter().map(|&e| edge_image[e]).collect();
        images.sort_unstable();
        let mut expected = base_star.clone();
        expected.sort_unstable();
        if images.windows(2).any(|w| w[0] == w[1]) || images != expected {
            return Ok(failed);
        }
    }

    let fold = if base.is_connected() {
        let mut counts = vec![0usize; base.vertex_count()];
        for &b in &image {
            counts[b] += 1;
        }
        let k = counts[0];
        counts.iter().all(|&c| c == k).then_some(k)
    } else {
        None
    };
    Ok(CoveringCheck { valid: true, fold })
}

/// A hypergraph with a sign on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedHypergraph {
    base: Hypergraph,
    signs: Vec<i8>,
}

impl SignedHypergraph {
    pub fn new(base: Hypergraph, signs: Vec<i8>) -> Self {
        assert_eq!(signs.len(), base.edge_count(), "one sign per edge");
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs are +1/-1");
        SignedHypergraph { base, signs }
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.signs[e]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fixture_a() -> Hypergraph {
        Hypergraph::from_edge_indices(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap()
    }

    pub(crate) fn fixture_b() -> Hypergraph {
        Hypergraph::from_edge_indices(4, 6, &[vec![0, 1, 2, 3], vec![2, 3, 4, 5], vec![4, 5, 0, 1]])
            .unwrap()
    }

    #[test]
    fn fixture_a_incidence_graph() {
        let b = fixture_a().incidence_graph();
        assert_eq!(b.incidence_count(), 6);
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.edge_count(), 2);
    }

    #[test]
    fn single_edge_is_a_star() {
        let h = Hypergraph::from_edge_indices(5, 5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let b = h.incidence_graph();
        assert_eq!(b.incidence_count(), 5);
        assert_eq!(b.edges_at_vertex(2), &[0]);
    }

    #[test]
    fn fixture_b_incidence_graph() {
        assert_eq!(fixture_b().incidence_graph().incidence_count(), 12);
    }

    #[test]
    fn fixture_a_incidence_matrix() {
        let z = fixture_a().incidence_matrix();
        assert_eq!(
            z,
            IntMatrix::from_rows(&[vec![1, 1, 1, 0], vec![0, 1, 1, 1]])
        );
    }

    #[test]
    fn single_edge_incidence_matrix_is_all_ones_row() {
        let h = Hypergraph::from_edge_indices(3, 3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(h.incidence_matrix(), IntMatrix::from_rows(&[vec![1, 1, 1]]));
    }

    #[test]
    fn fixture_b_incidence_matrix() {
        let z = fixture_b().incidence_matrix();
        assert_eq!(
            z,
            IntMatrix::from_rows(&[
                vec![1, 1, 1, 1, 0, 0],
                vec![0, 0, 1, 1, 1, 1],
                vec![1, 1, 0, 0, 1, 1],
            ])
        );
    }

    #[test]
    fn incidence_matrix_row_sums_equal_m() {
        for h in [fixture_a(), fixture_b()] {
            let z = h.incidence_matrix();
            for e in 0..z.rows() {
                let sum: num_bigint::BigInt = z.row(e).iter().sum();
                assert_eq!(sum, h.uniformity().into());
            }
        }
    }

    #[test]
    fn fixtures_are_connected() {
        assert!(fixture_a().is_connected());
        assert!(fixture_b().is_connected());
    }

    #[test]
    fn disjoint_edges_are_disconnected() {
        let h =
            Hypergraph::from_edge_indices(3, 6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let conn = h.connectivity();
        assert!(!conn.connected);
        assert_eq!(conn.components, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn connectivity_agrees_with_incidence_graph_bfs() {
        let cases = [
            fixture_a(),
            fixture_b(),
            Hypergraph::from_edge_indices(3, 6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap(),
        ];
        for h in cases {
            assert_eq!(h.is_connected(), h.incidence_graph().is_connected());
        }
    }

    #[test]
    fn rejects_wrong_arity() {
        let err = Hypergraph::new(
            3,
            vec!["1".into(), "2".into()],
            vec![vec!["1".into(), "2".into()]],
        )
        .unwrap_err();
        assert!(matches!(err, HypergraphError::WrongArity { .. }));
    }

    #[test]
    fn rejects_duplicate_vertex_in_edge() {
        let err = Hypergraph::new(
            3,
            vec!["1".into(), "2".into()],
            vec![vec!["1".into(), "2".into(), "2".into()]],
        )
        .unwrap_err();
        assert!(matches!(err, HypergraphError::DuplicateVertexInEdge { .. }));
    }

    #[test]
    fn rejects_duplicate_edges_regardless_of_order() {
        let err = Hypergraph::new(
            3,
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                vec!["1".into(), "2".into(), "3".into()],
                vec!["3".into(), "1".into(), "2".into()],
            ],
        )
        .unwrap_err();
        assert!(matches!(err, HypergraphError::DuplicateEdge { .. }));
    }

    #[test]
    fn identity_map_is_a_one_fold_covering() {
        let h = fixture_a();
        let map = VertexMap::from_pairs(
            h.vertex_ids().iter().map(|id| (id.clone(), id.clone())),
        );
        let check = is_covering_projection(&h, &h, &map).unwrap();
        assert!(check.valid);
        assert_eq!(check.fold, Some(1));
    }

    #[test]
    fn collapsing_map_fails_star_bijection() {
        // map Fixture A onto a single 3-uniform edge by collapsing 1 and 4
        let base = Hypergraph::from_edge_indices(3, 3, &[vec![0, 1, 2]]).unwrap();
        let map = VertexMap::from_pairs([
            ("1".to_string(), "1".to_string()),
            ("2".to_string(), "2".to_string()),
            ("3".to_string(), "3".to_string()),
            ("4".to_string(), "1".to_string()),
        ]);
        let check = is_covering_projection(&fixture_a(), &base, &map).unwrap();
        assert!(!check.valid); // vertex 2 has two edges over the single base edge
    }

    #[test]
    fn partial_map_is_an_error() {
        let h = fixture_a();
        let map = VertexMap::from_pairs([("1".to_string(), "1".to_string())]);
        assert!(matches!(
            is_covering_projection(&h, &h, &map),
            Err(HypergraphError::MapNotTotal(_))
        ));
    }

    #[test]
    fn restrict_to_keeps_inner_edges() {
        let h = fixture_a();
        let sub = h.restrict_to(&[1, 2, 3]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 1); // only e2 = {2,3,4} survives
    }
}
