//! Minimal undirected simple graph and a planarity decision.

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "simple graph: loop at {a}");
        assert!(a < self.vertex_count && b < self.vertex_count);
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1]) && sorted.iter().all(|(a, b)| a != b)
    }

    pub fn complete(k: usize) -> Self {
        let mut g = SimpleGraph::new(k);
        for a in 0..k {
            for b in a + 1..k {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = SimpleGraph::new(a + b);
        for x in 0..a {
            for y in 0..b {
                g.add_edge(x, a + y);
            }
        }
        g
    }

    /// Hub 0 joined to the rim cycle `1..=rim`.
    pub fn wheel(rim: usize) -> Self {
        let mut g = SimpleGraph::new(rim + 1);
        for i in 1..=rim {
            g.add_edge(0, i);
            g.add_edge(i, if i == rim { 1 } else { i + 1 });
        }
        g
    }

    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = SimpleGraph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols);
                }
            }
        }
        g
    }

    pub fn cycle(k: usize) -> Self {
        let mut g = SimpleGraph::new(k);
        for i in 0..k {
            g.add_edge(i, (i + 1) % k);
        }
        g
    }

    /// Left-right planarity test.
    pub fn is_planar(&self) -> bool {
        let mut g = UnGraph::<(), ()>::with_capacity(self.vertex_count, self.edges.len());
        for _ in 0..self.vertex_count {
            g.add_node(());
        }
        for &(a, b) in &self.edges {
            g.add_edge((a as u32).into(), (b as u32).into(), ());
        }
        planar::is_planar(&g)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Faces of a plane embedding, each a cyclic vertex sequence, all with
    /// the same orientation. Built by repeatedly routing a path of a bridge
    /// through a face that holds all of its attachments. Requires a
    /// 2-connected graph; returns `None` when no embedding is found.
    pub fn planar_faces(&self) -> Option<Vec<Vec<usize>>> {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut placed_edges = std::collections::HashSet::new();
        let mut placed = vec![false; n];

        let cycle = find_cycle(&adj)?;
        for w in 0..cycle.len() {
            placed_edges.insert(key(cycle[w], cycle[(w + 1) % cycle.len()]));
            placed[cycle[w]] = true;
        }
        let mut reversed = cycle.clone();
        reversed.reverse();
        let mut faces = vec![cycle, reversed];

        while placed_edges.len() < self.edges.len() {
            // Bridges: (attachments, a path joining two of them).
            let mut bridges: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            for &(a, b) in &self.edges {
                if placed[a] && placed[b] && !placed_edges.contains(&(a, b)) {
                    bridges.push((vec![a, b], vec![a, b]));
                }
            }
            let mut seen = vec![false; n];
            for s in 0..n {
                if placed[s] || seen[s] {
                    continue;
                }
                let mut component = vec![s];
                let mut attachments = Vec::new();
                seen[s] = true;
                let mut k = 0;
                while k < component.len() {
                    let v = component[k];
                    k += 1;
                    for &w in &adj[v] {
                        if placed[w] {
                            attachments.push(w);
                        } else if !seen[w] {
                            seen[w] = true;
                            component.push(w);
                        }
                    }
                }
                attachments.sort_unstable();
                attachments.dedup();
                if attachments.len() < 2 {
                    return None;
                }
                let path = bridge_path(&adj, &placed, attachments[0])?;
                bridges.push((attachments, path));
            }
            let admissible = |att: &[usize]| -> Vec<usize> {
                (0..faces.len())
                    .filter(|&f| att.iter().all(|v| faces[f].contains(v)))
                    .collect()
            };
            let (att, path) = bridges
                .iter()
                .min_by_key(|(att, _)| admissible(att).len())
                .expect("unplaced edges form a bridge");
            let face_index = *admissible(att).first()?;
            let face = faces.swap_remove(face_index);
            let (f1, f2) = split_face(&face, path);
            faces.push(f1);
            faces.push(f2);
            for w in path.windows(2) {
                placed_edges.insert(key(w[0], w[1]));
            }
            for &v in path {
                placed[v] = true;
            }
        }
        Some(faces)
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let start = (0..adj.len()).find(|&v| !adj[v].is_empty())?;
    let mut parent = vec![usize::MAX; adj.len()];
    let mut on_path = vec![false; adj.len()];
    let mut visited = vec![false; adj.len()];
    // Explicit DFS: (vertex, next neighbour index).
    let mut stack = vec![(start, 0usize)];
    visited[start] = true;
    on_path[start] = true;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if *next == adj[v].len() {
            on_path[v] = false;
            stack.pop();
            continue;
        }
        let w = adj[v][*next];
        *next += 1;
        if w == parent[v] {
            continue;
        }
        if on_path[w] {
            let mut cycle = vec![v];
            let mut u = v;
            while u != w {
                u = parent[u];
                cycle.push(u);
            }
            return Some(cycle);
        }
        if !visited[w] {
            visited[w] = true;
            on_path[w] = true;
            parent[w] = v;
            stack.push((w, 0));
        }
    }
    None
}

/// Path from placed vertex `from` through unplaced vertices to another
/// placed vertex.
fn bridge_path(adj: &[Vec<usize>], placed: &[bool], from: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[from] {
        if !placed[w] && prev[w] == usize::MAX {
            prev[w] = from;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if placed[w] && w != from {
                let mut path = vec![w, v];
                let mut u = v;
                while prev[u] != from {
                    u = prev[u];
                    path.push(u);
                }
                path.push(from);
                path.reverse();
                return Some(path);
            }
            if !placed[w] && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = face.len();
    let u = path[0];
    let v = path[path.len() - 1];
    let i = face.iter().position(|&x| x == u).expect("attachment on face");
    let j = face.iter().position(|&x| x == v).expect("attachment on face");
    let arc = |from: usize, to: usize| {
        let mut out = vec![face[from]];
        let mut p = from;
        while p != to {
            p = (p + 1) % k;
            out.push(face[p]);
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut f1 = arc(i, j);
    f1.extend(interior.iter().rev());
    let mut f2 = arc(j, i);
    f2.extend(interior.iter());
    (f1, f2)
}

/// Cyclic successor of each neighbour around `v` in an oriented face list.
pub fn rotation_at(faces: &[Vec<usize>], v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for f in faces {
        let k = f.len();
        for p in 0..k {
            if f[p] == v {
                out.push((f[(p + k - 1) % k], f[(p + 1) % k]));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuratowski_graphs_are_not_planar() {
        assert!(!SimpleGraph::complete(5).is_planar());
        assert!(!SimpleGraph::complete_bipartite(3, 3).is_planar());
        assert!(SimpleGraph::complete(4).is_planar());
        assert!(SimpleGraph::complete_bipartite(2, 7).is_planar());
    }

    #[test]
    fn wheels_and_grids_are_planar() {
        for rim in 3..12 {
            assert!(SimpleGraph::wheel(rim).is_planar());
        }
        assert!(SimpleGraph::grid(8, 9).is_planar());
        assert!(SimpleGraph::cycle(3).is_planar());
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut g = SimpleGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert!(g.is_simple());
        assert!(!g.is_planar());
    }
}
