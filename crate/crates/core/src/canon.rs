use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::PlumbingGraph;

fn label(g: &PlumbingGraph, i: usize) -> String {
    let v = g.vertex(i);
    format!("{}:{}", v.genus, v.self_int)
}

fn adjacency(g: &PlumbingGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.len()];
    for &(a, b) in g.edge_indices() {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// One or two centres of a tree, found by stripping leaves.
fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&i| deg[i] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Rooted AHU codes for every vertex (relative to `root`).
fn rooted_codes(g: &PlumbingGraph, adj: &[Vec<usize>], root: usize) -> Vec<String> {
    let n = g.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        for &w in &adj[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
        k += 1;
    }
    let mut codes = vec![String::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<&str> =
            adj[v].iter().filter(|&&w| parent[w] == v && w != root).map(|&w| codes[w].as_str()).collect();
        kids.sort_unstable();
        let mut code = String::from("(");
        code.push_str(&label(g, v));
        for c in kids {
            code.push_str(c);
        }
        code.push(')');
        codes[v] = code;
    }
    codes
}

/// Canonical string of a tree: equal exactly for isomorphic trees (labels are
/// genus and self-intersection). `None` when the graph is not a tree.
pub fn tree_canonical_form(g: &PlumbingGraph) -> Option<String> {
    if !g.is_tree() {
        return None;
    }
    if g.is_empty() {
        return Some(String::new());
    }
    let adj = adjacency(g);
    tree_centers(&adj).into_iter().map(|c| rooted_codes(g, &adj, c).swap_remove(c)).min()
}

/// Vertex map `m` with `m[i]` in `b` for every vertex `i` of `a`, preserving
/// labels and edge multiplicities.
pub fn isomorphism(a: &PlumbingGraph, b: &PlumbingGraph) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.edge_indices().len() != b.edge_indices().len() {
        return None;
    }
    if a.is_tree() && b.is_tree() {
        return tree_isomorphism(a, b);
    }
    general_isomorphism(a, b)
}

pub fn is_isomorphic(a: &PlumbingGraph, b: &PlumbingGraph) -> bool {
    isomorphism(a, b).is_some()
}

fn tree_isomorphism(a: &PlumbingGraph, b: &PlumbingGraph) -> Option<Vec<usize>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    let adj_a = adjacency(a);
    let adj_b = adjacency(b);
    let ca = tree_centers(&adj_a);
    let cb = tree_centers(&adj_b);
    let ra = ca[0];
    let codes_a = rooted_codes(a, &adj_a, ra);
    for &rb in &cb {
        let codes_b = rooted_codes(b, &adj_b, rb);
        if codes_a[ra] != codes_b[rb] {
            continue;
        }
        let mut map = vec![usize::MAX; a.len()];
        let mut stack = vec![(ra, rb, usize::MAX, usize::MAX)];
        while let Some((u, v, pu, pv)) = stack.pop() {
            map[u] = v;
            let mut kids_a: Vec<usize> = adj_a[u].iter().copied().filter(|&w| w != pu).collect();
            let mut kids_b: Vec<usize> = adj_b[v].iter().copied().filter(|&w| w != pv).collect();
            kids_a.sort_by(|x, y| codes_a[*x].cmp(&codes_a[*y]));
            kids_b.sort_by(|x, y| codes_b[*x].cmp(&codes_b[*y]));
            for (x, y) in kids_a.into_iter().zip(kids_b) {
                stack.push((x, y, u, v));
            }
        }
        return Some(map);
    }
    None
}

fn general_isomorphism(a: &PlumbingGraph, b: &PlumbingGraph) -> Option<Vec<usize>> {
    let n = a.len();
    let qa = a.intersection_matrix().matrix;
    let qb = b.intersection_matrix().matrix;
    let sig = |g: &PlumbingGraph, q: &crate::linalg::IntMatrix, i: usize| {
        let mut row: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| q.get(i, j)).collect();
        row.sort_unstable();
        (g.vertex(i).genus, q.get(i, i), row)
    };
    let sa: Vec<_> = (0..n).map(|i| sig(a, &qa, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| sig(b, &qb, i)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        i: usize,
        n: usize,
        qa: &crate::linalg::IntMatrix,
        qb: &crate::linalg::IntMatrix,
        sa: &[(u32, i64, Vec<i64>)],
        sb: &[(u32, i64, Vec<i64>)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            if (0..i).any(|k| qa.get(i, k) != qb.get(j, map[k])) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if extend(i + 1, n, qa, qb, sa, sb, map, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }

    extend(0, n, &qa, &qb, &sa, &sb, &mut map, &mut used).then_some(map)
}

/// 64-bit FNV-1a, used for graph fingerprints in move traces.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Fingerprint of a graph including vertex ids and order.
pub fn graph_hash(g: &PlumbingGraph) -> u64 {
    fnv1a(crate::dsl::serialize_graph(g).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Vertex, VertexId};

    #[test]
    fn canonical_form_ignores_ids_and_order() {
        let a = PlumbingGraph::chain(&[-2, -3, -4]);
        let b = PlumbingGraph::new(
            vec![Vertex::sphere("x", -4), Vertex::sphere("y", -2), Vertex::sphere("z", -3)],
            vec![(VertexId::from("x"), "z".into()), ("z".into(), "y".into())],
        )
        .unwrap();
        assert_eq!(tree_canonical_form(&a), tree_canonical_form(&b));
        let m = isomorphism(&a, &b).unwrap();
        for i in 0..3 {
            assert_eq!(a.vertex(i).self_int, b.vertex(m[i]).self_int);
        }
        assert_ne!(tree_canonical_form(&a), tree_canonical_form(&PlumbingGraph::chain(&[-3, -2, -4])));
    }

    #[test]
    fn multigraph_isomorphism() {
        let mk = |s: [i64; 3]| {
            PlumbingGraph::new(
                vec![Vertex::sphere("a", s[0]), Vertex::sphere("b", s[1]), Vertex::sphere("c", s[2])],
                vec![("a".into(), "b".into()), ("a".into(), "b".into()), ("b".into(), "c".into())],
            )
            .unwrap()
        };
        assert!(is_isomorphic(&mk([1, 2, 3]), &mk([1, 2, 3])));
        assert!(!is_isomorphic(&mk([1, 2, 3]), &mk([3, 2, 1])));
    }
}
