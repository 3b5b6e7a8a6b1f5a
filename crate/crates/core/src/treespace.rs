//! Metric-derived systems and the structure of tree metrics.
//!
//! A finite metric colours `{a, b, c}` red when one of the three points lies
//! between the other two (`d(a,b) + d(b,c) = d(a,c)` for some labelling).
//! For trees this depends only on the unweighted tree, and the line counts
//! are governed by the leaf twin classes collected in [`TwinDecomposition`].

use std::collections::{HashSet, VecDeque};

use rand::Rng;

use crate::error::{invalid, unsupported, Result};
use crate::system::{binomial, line, summarize, Colour, Colouring, PointSet, MAX_POINTS};

/// Connected graph with positive integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
}

impl WeightedGraph {
    /// Validates vertex range, self-loops, duplicate edges and weights.
    /// Connectivity is checked by [`all_pairs_shortest`].
    pub fn new(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<WeightedGraph> {
        if n == 0 || n > MAX_POINTS {
            return Err(invalid(format!("graph order {n} outside 1..={MAX_POINTS}")));
        }
        let mut seen = HashSet::new();
        for &(u, v, w) in &edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            if w == 0 {
                return Err(invalid(format!("edge ({u},{v}) has zero weight")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(invalid(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(WeightedGraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }
}

/// Symmetric integer metric on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    pub fn new(d: Vec<Vec<u64>>) -> Result<DistanceMatrix> {
        let n = d.len();
        if d.iter().any(|row| row.len() != n) {
            return Err(invalid("distance matrix is not square"));
        }
        for a in 0..n {
            if d[a][a] != 0 {
                return Err(invalid(format!("d({a},{a}) is nonzero")));
            }
            for b in 0..n {
                if d[a][b] != d[b][a] {
                    return Err(invalid(format!("d({a},{b}) != d({b},{a})")));
                }
                if a != b && d[a][b] == 0 {
                    return Err(invalid(format!("d({a},{b}) is zero")));
                }
                for c in 0..n {
                    if d[a][c] > d[a][b] + d[b][c] {
                        return Err(invalid(format!("triangle inequality fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.d[a][b]
    }
}

/// Exact all-pairs shortest paths by Floyd–Warshall relaxation.
pub fn all_pairs_shortest(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let n = g.n;
    let mut d = vec![vec![u64::MAX; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v, w) in &g.edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == u64::MAX {
                continue;
            }
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| d[0][v] == u64::MAX) {
        return Err(invalid(format!("graph is disconnected: vertex {v} unreachable from 0")));
    }
    Ok(DistanceMatrix { n, d })
}

/// The betweenness system of a metric.
pub fn derive(dm: &DistanceMatrix) -> Result<Colouring> {
    let n = dm.n;
    let d = &dm.d;
    let mut s = Colouring::empty(n)?;
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let between =
                    d[i][j] + d[j][k] == d[i][k] || d[j][i] + d[i][k] == d[j][k] || d[i][k] + d[k][j] == d[i][j];
                if between {
                    s.set(i, j, k, Colour::Red)?;
                }
            }
        }
    }
    Ok(s)
}

/// Unweighted tree on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Tree> {
        if !(2..=MAX_POINTS).contains(&n) {
            return Err(invalid(format!("tree order {n} outside 2..={MAX_POINTS}")));
        }
        if edges.len() != n - 1 {
            return Err(invalid(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v {
                return Err(invalid(format!("bad tree edge ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let tree = Tree { n, edges, adj };
        if tree.bfs_distances(0).contains(&u64::MAX) {
            return Err(invalid("edges do not connect all vertices"));
        }
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub fn is_path(&self) -> bool {
        self.adj.iter().all(|a| a.len() <= 2)
    }

    /// One centre adjacent to every other vertex (includes `n ≤ 3`).
    pub fn is_star(&self) -> bool {
        self.adj.iter().any(|a| a.len() == self.n - 1)
    }

    fn bfs_distances(&self, from: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.n];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u64::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Unit-weight graph of the tree.
    pub fn to_graph(&self) -> WeightedGraph {
        WeightedGraph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (u, v, 1)).collect(),
        }
    }

    pub fn with_weights(&self, weights: &[u64]) -> Result<WeightedGraph> {
        if weights.len() != self.edges.len() {
            return Err(invalid("one weight per edge required"));
        }
        WeightedGraph::new(
            self.n,
            self.edges.iter().zip(weights).map(|(&(u, v), &w)| (u, v, w)).collect(),
        )
    }

    /// Hop metric.
    pub fn metric(&self) -> DistanceMatrix {
        DistanceMatrix {
            n: self.n,
            d: (0..self.n).map(|v| self.bfs_distances(v)).collect(),
        }
    }

    /// Betweenness system of the tree metric.
    pub fn system(&self) -> Colouring {
        derive(&self.metric()).expect("tree order already validated")
    }

    /// Vertices of the unique path from `x` to `y`.
    pub fn path_between(&self, x: usize, y: usize) -> PointSet {
        let dx = self.bfs_distances(x);
        let dy = self.bfs_distances(y);
        PointSet::from_points(self.n, (0..self.n).filter(|&p| dx[p] + dy[p] == dx[y])).expect("points in range")
    }

    /// Non-adjacent vertices with equal neighbourhoods.
    pub fn are_twins(&self, x: usize, y: usize) -> bool {
        if x == y || self.adj[x].contains(&y) {
            return false;
        }
        let mut a = self.adj[x].clone();
        let mut b = self.adj[y].clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Isomorphism-invariant encoding (AHU codes rooted at the centre or,
    /// for bicentral trees, the smaller of the two centre rootings).
    pub fn canonical_code(&self) -> String {
        self.centres()
            .into_iter()
            .map(|c| self.rooted_code(c, usize::MAX))
            .min()
            .expect("a tree has a centre")
    }

    fn rooted_code(&self, v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = self.adj[v]
            .iter()
            .filter(|&&c| c != parent)
            .map(|&c| self.rooted_code(c, v))
            .collect();
        kids.sort_unstable();
        format!("({})", kids.concat())
    }

    fn centres(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| deg[v] <= 1).collect();
        let mut remaining = self.n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &u in &self.adj[v] {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.n == other.n && self.canonical_code() == other.canonical_code()
    }
}

pub fn tree(n: usize, edges: Vec<(usize, usize)>) -> Result<Tree> {
    Tree::new(n, edges)
}

pub fn path(n: usize) -> Result<Tree> {
    Tree::new(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// Centre `0` joined to leaves `1..n`.
pub fn star(n: usize) -> Result<Tree> {
    Tree::new(n, (1..n).map(|v| (0, v)).collect())
}

/// `S(p, q)`: a path `0..q` with `p` leaves `q..q+p` hung on vertex `0`.
/// `q` counts path vertices.
pub fn s_tree(p: usize, q: usize) -> Result<Tree> {
    if p < 2 || q < 3 {
        return Err(invalid(format!("S(p,q) needs p >= 2 and q >= 3, got ({p},{q})")));
    }
    let mut edges: Vec<_> = (1..q).map(|v| (v - 1, v)).collect();
    edges.extend((q..q + p).map(|leaf| (0, leaf)));
    Tree::new(p + q, edges)
}

/// Leaf twin classes of a tree with the derived counts `a`, `b`, `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinDecomposition {
    pub n: usize,
    /// Twin classes, each sorted, ordered by anchor.
    pub classes: Vec<Vec<usize>>,
    /// `anchors[i]` is the common neighbour of `classes[i]`.
    pub anchors: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub is_path: bool,
    pub is_star: bool,
}

impl TwinDecomposition {
    pub fn anchor(&self, i: usize) -> usize {
        self.anchors[i]
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }
}

pub fn twin_decomposition(t: &Tree) -> TwinDecomposition {
    let mut by_anchor: Vec<Vec<usize>> = vec![Vec::new(); t.n];
    // A two-vertex tree has two leaves, but they are adjacent, not twins.
    if t.n > 2 {
        for v in (0..t.n).filter(|&v| t.is_leaf(v)) {
            by_anchor[t.adj[v][0]].push(v);
        }
    }
    let (anchors, classes): (Vec<usize>, Vec<Vec<usize>>) =
        by_anchor.into_iter().enumerate().filter(|(_, c)| c.len() >= 2).unzip();
    let a = classes.iter().map(Vec::len).sum();
    TwinDecomposition {
        n: t.n,
        s: classes.len(),
        b: t.n - a,
        a,
        classes,
        anchors,
        is_path: t.is_path(),
        is_star: t.is_star(),
    }
}

/// Closed-form blue-line count of a tree system: `C(b,2) + a + b·s + C(s,2)`.
pub fn tree_blue_count(dec: &TwinDecomposition) -> u64 {
    let (a, b, s) = (dec.a as u64, dec.b as u64, dec.s as u64);
    binomial(b, 2) + a + b * s + binomial(s, 2)
}

/// Red-line floor `C(a,2) + a + 1` for trees that are neither paths nor stars.
pub fn tree_red_floor(dec: &TwinDecomposition) -> Result<u64> {
    if dec.is_path || dec.is_star {
        return Err(unsupported(
            "red-line floor applies only to trees that are neither a path nor a star",
        ));
    }
    let a = dec.a as u64;
    Ok(binomial(a, 2) + a + 1)
}

/// True for `S(a, b)` and for a path with a class of at least two twins hung
/// on each end: the trees whose red-line count meets [`tree_red_floor`].
pub fn is_red_floor_tree(t: &Tree) -> bool {
    let dec = twin_decomposition(t);
    if dec.is_path || dec.is_star {
        return false;
    }
    let core: Vec<usize> = (0..t.n).filter(|&v| dec.class_of(v).is_none()).collect();
    let core_degree = |v: usize| t.adj[v].iter().filter(|u| dec.class_of(**u).is_none()).count();
    let core_is_path = core.iter().all(|&v| core_degree(v) <= 2);
    let core_ends: Vec<usize> = core.iter().copied().filter(|&v| core_degree(v) <= 1).collect();
    if !core_is_path || core.len() < 2 {
        return false;
    }
    match dec.s {
        // S(a, b): one class, hung on an end of the core path, far end is a leaf.
        1 => core_ends.contains(&dec.anchors[0]),
        2 => dec.anchors.iter().all(|x| core_ends.contains(x)) && dec.anchors[0] != dec.anchors[1],
        _ => false,
    }
}

/// Tree-metric lower bound on `m`: `⌊n²/4⌋ + n + 1` for `n ≥ 6`,
/// `C(n,2) + 1` below.
pub fn tree_m_lower_bound(n: usize) -> u64 {
    let n = n as u64;
    if n >= 6 {
        n * n / 4 + n + 1
    } else {
        binomial(n, 2) + 1
    }
}

/// Minimising twin counts `a*` for `n ≥ 6`.
pub fn extremal_twin_counts(n: usize) -> Vec<usize> {
    if n % 2 == 1 {
        vec![(n - 1) / 2]
    } else {
        vec![n / 2 - 1, n / 2]
    }
}

/// Whether `t` is one of the trees whose system meets [`tree_m_lower_bound`].
pub fn is_extremal_tree(t: &Tree) -> bool {
    let n = t.n;
    if n <= 6 && t.is_path() {
        return true;
    }
    n >= 6
        && extremal_twin_counts(n)
            .into_iter()
            .filter_map(|a| s_tree(a, n - a).ok())
            .any(|s| s.is_isomorphic(t))
}

/// Tree from a Prüfer sequence over `0..n`, `n = seq.len() + 2`.
pub fn from_prufer(seq: &[usize]) -> Result<Tree> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(invalid(format!("Prüfer entry {bad} outside 0..{n}")));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always remains");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n, edges)
}

/// Largest order for exhaustive enumeration.
pub const MAX_CENSUS_ORDER: usize = 8;

/// One representative of every isomorphism class of trees on `n` vertices,
/// produced lazily by walking all labelled Prüfer sequences.
pub struct TreeCensus {
    n: usize,
    seq: Vec<usize>,
    done: bool,
    seen: HashSet<String>,
}

impl Iterator for TreeCensus {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        while !self.done {
            let t = from_prufer(&self.seq).expect("valid sequence");
            // odometer step
            self.done = true;
            for x in self.seq.iter_mut().rev() {
                *x += 1;
                if *x < self.n {
                    self.done = false;
                    break;
                }
                *x = 0;
            }
            if self.seen.insert(t.canonical_code()) {
                return Some(t);
            }
        }
        None
    }
}

pub fn enumerate_trees(n: usize) -> Result<TreeCensus> {
    if !(2..=MAX_CENSUS_ORDER).contains(&n) {
        return Err(unsupported(format!(
            "exhaustive tree enumeration supports 2..={MAX_CENSUS_ORDER}, got {n}"
        )));
    }
    Ok(TreeCensus {
        n,
        seq: vec![0; n - 2],
        done: false,
        seen: HashSet::new(),
    })
}

/// Uniformly random labelled tree (uniform Prüfer sequence).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tree> {
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(invalid(format!("tree order {n} outside 2..={MAX_POINTS}")));
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    from_prufer(&seq)
}

/// Seeded stream of `count` random labelled trees on `n` vertices.
pub fn sample_trees(n: usize, count: usize, seed: u64) -> Result<Vec<Tree>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_tree(n, &mut rng)).collect()
}

/// Violations of the path and twin-class facts about tree lines:
/// the path `P_xy` lies in `R(xy)` and meets `B(xy)` only in `{x, y}`;
/// a class containing exactly one generator, the other generator not being
/// its anchor, meets `R(xy)` only there and lies inside `B(xy)`; other
/// classes lie wholly inside or outside each line. A pair made of a twin and
/// its anchor is an edge, so its red line is `V` and its blue line the pair.
pub fn tree_line_violations(t: &Tree) -> Vec<String> {
    let s = t.system();
    let dec = twin_decomposition(t);
    let classes: Vec<PointSet> = dec
        .classes
        .iter()
        .map(|c| PointSet::from_points(t.n, c.iter().copied()).unwrap())
        .collect();
    let mut out = Vec::new();
    for y in 1..t.n {
        for x in 0..y {
            let r = line(&s, x, y, Colour::Red).unwrap();
            let b = line(&s, x, y, Colour::Blue).unwrap();
            let p = t.path_between(x, y);
            let xy = PointSet::from_points(t.n, [x, y]).unwrap();
            if !p.is_subset(&r) || b.intersection(&p) != xy {
                out.push(format!("path facts fail for ({x},{y})"));
            }
            for (ci, class) in classes.iter().enumerate() {
                let hit = class.intersection(&xy);
                match hit.len() {
                    // the generator adjacent to the class's anchor spans V
                    1 if xy.contains(dec.anchors[ci]) => {
                        if r.len() != t.n || b != xy {
                            out.push(format!("class {class} vs anchor pair ({x},{y}): edge facts fail"));
                        }
                    }
                    1 => {
                        if r.intersection(class) != hit || !class.is_subset(&b) {
                            out.push(format!("class {class} vs ({x},{y}): one-generator facts fail"));
                        }
                    }
                    0 => {
                        for l in [r, b] {
                            let meet = l.intersection(class);
                            if !meet.is_empty() && meet != *class {
                                out.push(format!("class {class} splits line {l} of ({x},{y})"));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Violations of the twin conditions forced by coinciding blue lines.
pub fn tree_twin_violations(t: &Tree) -> Vec<String> {
    let s = t.system();
    let pairs: Vec<(usize, usize, PointSet)> = (1..t.n)
        .flat_map(|y| (0..y).map(move |x| (x, y)))
        .map(|(x, y)| (x, y, line(&s, x, y, Colour::Blue).unwrap()))
        .collect();
    let mut out = Vec::new();
    for (i, &(x, y, bxy)) in pairs.iter().enumerate() {
        for &(z, w, bzw) in &pairs[i + 1..] {
            if bxy != bzw {
                continue;
            }
            let shared: Vec<usize> = [x, y].into_iter().filter(|p| *p == z || *p == w).collect();
            let ok = match shared.as_slice() {
                [] => (t.are_twins(x, z) && t.are_twins(y, w)) || (t.are_twins(x, w) && t.are_twins(y, z)),
                [c] => {
                    let p = if *c == x { y } else { x };
                    let q = if *c == z { w } else { z };
                    t.are_twins(p, q)
                }
                _ => true,
            };
            if !ok {
                out.push(format!("B({x}{y}) = B({z}{w}) = {bxy} without the twin pattern"));
            }
        }
    }
    out
}

/// Measured `(m_red, m_blue)` of a tree system.
pub fn tree_line_counts(t: &Tree) -> (usize, usize) {
    let s = summarize(&t.system());
    (s.m_red, s.m_blue)
}
