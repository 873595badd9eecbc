//! Simple undirected graphs and the vertex sets used to index independent sets.
//!
//! Vertices are dense `0..vertex_count` indices. Named families (paths,
//! complete graphs, lollipops) carry display labels such as `x_3` or `y_1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A set of vertex indices stored as an arbitrary-width bit mask.
///
/// Trailing zero words are always trimmed, so equality and hashing do not
/// depend on how the set was built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / WORD];
        if !n.is_multiple_of(WORD) {
            words.push((1u64 << (n % WORD)) - 1);
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let (w, b) = (v / WORD, v % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, v: usize) {
        let (w, b) = (v / WORD, v % WORD);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        let (w, b) = (v / WORD, v % WORD);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// One past the largest member (0 for the empty set).
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * WORD + (WORD - w.leading_zeros() as usize),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (w, o) in s.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        s.trim();
        s
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph on vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    fn empty(vertex_count: usize) -> Self {
        Self {
            adjacency: vec![VertexSet::new(); vertex_count],
            labels: None,
        }
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    /// The path `P_n` with edges `{i, i+1}`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("path needs at least one vertex".into()));
        }
        let mut g = Self::empty(n);
        for i in 0..n - 1 {
            g.add_edge_unchecked(i, i + 1);
        }
        g.labels = Some((1..=n).map(|i| format!("x_{i}")).collect());
        Ok(g)
    }

    /// The complete graph `K_m`.
    pub fn complete(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("complete graph needs at least one vertex".into()));
        }
        let mut g = Self::empty(m);
        for u in 0..m {
            for v in u + 1..m {
                g.add_edge_unchecked(u, v);
            }
        }
        g.labels = Some((1..=m).map(|i| format!("x_{i}")).collect());
        Ok(g)
    }

    /// The lollipop `L_{m,n}`: `K_m` on `x_1..x_m` (indices `0..m`), `P_n` on
    /// `y_1..y_n` (indices `m..m+n`), and the bridge `{x_m, y_1}`.
    pub fn lollipop(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain(format!(
                "lollipop needs m >= 1 and n >= 1, got m = {m}, n = {n}"
            )));
        }
        let mut g = Self::empty(m + n);
        for u in 0..m {
            for v in u + 1..m {
                g.add_edge_unchecked(u, v);
            }
        }
        g.add_edge_unchecked(m - 1, m);
        for j in 0..n - 1 {
            g.add_edge_unchecked(m + j, m + j + 1);
        }
        let mut labels: Vec<String> = (1..=m).map(|i| format!("x_{i}")).collect();
        labels.extend((1..=n).map(|j| format!("y_{j}")));
        g.labels = Some(labels);
        Ok(g)
    }

    /// A graph with exactly the given edges; duplicate pairs collapse.
    pub fn custom(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(vertex_count);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// An Erdős–Rényi graph: each of the `n(n-1)/2` pairs is an edge with
    /// probability `p`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    /// Vertices of `g2` are shifted past those of `g1`.
    pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
        let shift = g1.vertex_count();
        let mut g = Self::empty(shift + g2.vertex_count());
        for (u, v) in g1.edges() {
            g.add_edge_unchecked(u, v);
        }
        for (u, v) in g2.edges() {
            g.add_edge_unchecked(u + shift, v + shift);
        }
        if g1.labels.is_some() || g2.labels.is_some() {
            let mut labels: Vec<String> = (0..shift).map(|v| g1.label(v)).collect();
            labels.extend((0..g2.vertex_count()).map(|v| format!("{}'", g2.label(v))));
            g.labels = Some(labels);
        }
        g
    }

    /// Parses the edge-list text format: a header line `n <vertex_count>`
    /// followed by `<u> <v>` lines; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut vertex_count = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    message: format!("expected a non-negative integer, found `{s}`"),
                })
            };
            match vertex_count {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(Error::Parse {
                            line,
                            message: "expected header `n <vertex_count>`".into(),
                        });
                    }
                    vertex_count = Some(parse(fields[1])?);
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(Error::Parse {
                            line,
                            message: "expected an edge `<u> <v>`".into(),
                        });
                    }
                    edges.push((parse(fields[0])?, parse(fields[1])?));
                }
            }
        }
        let vertex_count = vertex_count.ok_or(Error::Parse {
            line: 0,
            message: "missing header `n <vertex_count>`".into(),
        })?;
        Self::custom(vertex_count, &edges)
    }

    /// Renders the graph in the edge-list format read by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].contains(v)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<&VertexSet> {
        self.check_vertex(v)?;
        Ok(&self.adjacency[v])
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s = self.adjacency[v].clone();
        s.insert(v);
        Ok(s)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// True iff no two members of `s` are adjacent. Members outside the
    /// vertex range are ignored.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter()
            .filter(|&v| v < self.vertex_count())
            .all(|v| self.adjacency[v].is_disjoint(s))
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("x_{}", v + 1),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.vertex_count()).map(|v| self.label(v)).collect()
    }

    /// Adjacency symmetry, no self-loops, neighbors in range.
    pub fn check_invariants(&self) -> bool {
        let n = self.vertex_count();
        self.adjacency.iter().enumerate().all(|(v, nb)| {
            !nb.contains(v) && nb.bound() <= n && nb.iter().all(|u| self.adjacency[u].contains(v))
        })
    }

    pub(crate) fn adjacency(&self) -> &[VertexSet] {
        &self.adjacency
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_edges() {
        assert_eq!(Graph::path(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::path(2).unwrap().edge_set(), [(0, 1)].into());
        assert_eq!(
            Graph::path(4).unwrap().edge_set(),
            [(0, 1), (1, 2), (2, 3)].into()
        );
        assert!(matches!(Graph::path(0), Err(Error::Domain(_))));
    }

    #[test]
    fn complete_edges() {
        assert_eq!(Graph::complete(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(3).unwrap().edge_count(), 3);
        assert_eq!(Graph::complete(5).unwrap().edge_count(), 10);
        assert!(Graph::complete(0).is_err());
    }

    #[test]
    fn lollipop_shape() {
        for n in 1..10 {
            assert_eq!(
                Graph::lollipop(1, n).unwrap().edge_set(),
                Graph::path(n + 1).unwrap().edge_set()
            );
            assert_eq!(
                Graph::lollipop(2, n).unwrap().edge_set(),
                Graph::path(n + 2).unwrap().edge_set()
            );
        }
        let g = Graph::lollipop(3, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(Graph::lollipop(4, 9).unwrap().vertex_count(), 13);
        let g = Graph::lollipop(5, 3).unwrap();
        assert!(g.has_edge(4, 5));
        assert_eq!(g.label(4), "x_5");
        assert_eq!(g.label(5), "y_1");
        assert!(Graph::lollipop(0, 3).is_err());
        assert!(Graph::lollipop(3, 0).is_err());
    }

    #[test]
    fn lollipop_edge_count_formula() {
        for m in 1..=9 {
            for n in 1..=12 {
                let g = Graph::lollipop(m, n).unwrap();
                assert_eq!(g.edge_count(), m * (m - 1) / 2 + 1 + (n - 1));
                assert!(g.check_invariants());
            }
        }
    }

    #[test]
    fn custom_graphs() {
        let g = Graph::custom(0, &[]).unwrap();
        assert_eq!(g.vertex_count(), 0);
        let g = Graph::custom(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            Graph::custom(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange {
                vertex: 2,
                vertex_count: 2
            })
        );
        assert_eq!(Graph::custom(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn unions() {
        let g = Graph::disjoint_union(&Graph::path(1).unwrap(), &Graph::path(1).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 0));
        let g = Graph::disjoint_union(&Graph::path(2).unwrap(), &Graph::path(3).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 3));
        assert_eq!(g.edge_set(), [(0, 1), (2, 3), (3, 4)].into());
    }

    #[test]
    fn independence_and_neighborhoods() {
        let p3 = Graph::path(3).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert!(p3.is_independent(&[0, 2].into_iter().collect()));
        assert!(!k3.is_independent(&[0, 1].into_iter().collect()));
        assert!(k3.is_independent(&VertexSet::new()));
        assert_eq!(p3.closed_neighborhood(1).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(
            Graph::path(1).unwrap().closed_neighborhood(0).unwrap().to_vec(),
            vec![0]
        );
        assert_eq!(
            Graph::complete(4).unwrap().closed_neighborhood(2).unwrap().to_vec(),
            vec![0, 1, 2, 3]
        );
        assert!(p3.closed_neighborhood(3).is_err());
    }

    #[test]
    fn edge_list_format() {
        let text = "# a triangle with a tail\nn 4\n0 1\n1 2 # inline\n2 0\n\n2 3\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g.edge_set(), [(0, 1), (0, 2), (1, 2), (2, 3)].into());
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(Graph::parse_edge_list("n 0\n").unwrap().vertex_count(), 0);
        assert!(matches!(
            Graph::parse_edge_list("n 2\n0 5\n"),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("n 3\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn vertex_set_wide() {
        let mut s = VertexSet::new();
        for v in [0, 63, 64, 130] {
            s.insert(v);
        }
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 130]);
        assert_eq!(s.bound(), 131);
        s.remove(130);
        assert_eq!(s.bound(), 65);
        assert_eq!(s, [0, 63, 64].into_iter().collect());
        let full = VertexSet::full(70);
        assert_eq!(full.len(), 70);
        assert!(s.is_subset(&full));
        assert_eq!(full.difference(&s).len(), 67);
        assert_eq!(full.intersection(&s), s);
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(0), VertexSet::new());
    }
}
