//! Exhaustive simple-path enumeration on an undirected multigraph.

/// A path as node indices plus the edge index used for each hop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePath {
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Every simple path from `s` to `t`. Parallel edges yield distinct paths.
pub fn all_simple_paths(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Vec<SimplePath> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = SimplePath {
        nodes: vec![s],
        edges: vec![],
    };
    on_path[s] = true;
    walk(&adj, t, &mut on_path, &mut path, &mut out);
    out
}

fn walk(
    adj: &[Vec<(usize, usize)>],
    t: usize,
    on_path: &mut [bool],
    path: &mut SimplePath,
    out: &mut Vec<SimplePath>,
) {
    let u = *path.nodes.last().unwrap();
    if u == t {
        out.push(path.clone());
        return;
    }
    for &(v, e) in &adj[u] {
        if on_path[v] {
            continue;
        }
        on_path[v] = true;
        path.nodes.push(v);
        path.edges.push(e);
        walk(adj, t, on_path, path, out);
        path.nodes.pop();
        path.edges.pop();
        on_path[v] = false;
    }
}
