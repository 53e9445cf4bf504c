//! Directed trivalent planar trees: enumeration, interval edge-labeling, and
//! a generic along-the-tree evaluator.
//!
//! Trees are pure topological types (no embedding data): a tree is a leaf or
//! an ordered pair of subtrees, every internal vertex having two incoming
//! edges and one outgoing edge.  A d-leafed tree has d−1 internal vertices
//! and d−2 internal edges.  Edge labels are intervals: leaf i carries
//! (i, i+1), a vertex with incoming (i,j), (j,k) sends out (i,k), the root
//! carries (0,d).

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarTree {
    Leaf,
    Node(Box<PlanarTree>, Box<PlanarTree>),
}

impl PlanarTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn internal_vertex_count(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(l, r) => 1 + l.internal_vertex_count() + r.internal_vertex_count(),
        }
    }

    pub fn internal_edge_count(&self) -> usize {
        // Outgoing edges of non-root internal vertices.
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(l, r) => {
                let count = |t: &PlanarTree| match t {
                    PlanarTree::Leaf => 0,
                    _ => 1 + t.internal_edge_count(),
                };
                count(l) + count(r)
            }
        }
    }
}

/// All planar topological types with `d` leaves, ordered by the leaf count of
/// the left subtree, then recursively.  There are Catalan(d−1) of them.
pub fn enumerate_trees(d: usize) -> Vec<PlanarTree> {
    assert!(d >= 1, "a tree has at least one leaf");
    if d == 1 {
        return vec![PlanarTree::Leaf];
    }
    let mut out = Vec::new();
    for left in 1..d {
        for l in enumerate_trees(left) {
            for r in enumerate_trees(d - left) {
                out.push(PlanarTree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Tree with the interval label of each subtree's outgoing edge attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabeledTree {
    Leaf { label: (usize, usize) },
    Node { label: (usize, usize), left: Box<LabeledTree>, right: Box<LabeledTree> },
}

impl LabeledTree {
    pub fn label(&self) -> (usize, usize) {
        match self {
            LabeledTree::Leaf { label } | LabeledTree::Node { label, .. } => *label,
        }
    }

    /// Re-checks the vertex rule (incoming ij, jk -> outgoing ik) everywhere.
    pub fn vertex_rule_holds(&self) -> bool {
        match self {
            LabeledTree::Leaf { label } => label.1 == label.0 + 1,
            LabeledTree::Node { label, left, right } => {
                let (i, j) = left.label();
                let (jj, k) = right.label();
                j == jj && *label == (i, k) && left.vertex_rule_holds() && right.vertex_rule_holds()
            }
        }
    }
}

/// The unique interval labeling: leaves get (0,1)…(d−1,d) in planar order and
/// labels merge upward by the vertex rule.
pub fn label_edges(t: &PlanarTree) -> LabeledTree {
    fn go(t: &PlanarTree, next_leaf: &mut usize) -> LabeledTree {
        match t {
            PlanarTree::Leaf => {
                let i = *next_leaf;
                *next_leaf += 1;
                LabeledTree::Leaf { label: (i, i + 1) }
            }
            PlanarTree::Node(l, r) => {
                let left = go(l, next_leaf);
                let right = go(r, next_leaf);
                let label = (left.label().0, right.label().1);
                LabeledTree::Node { label, left: Box::new(left), right: Box::new(right) }
            }
        }
    }
    let mut next = 0;
    go(t, &mut next)
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabeledTree::Leaf { label } => write!(f, "{}{}", label.0, label.1),
            LabeledTree::Node { label, left, right } => {
                write!(f, "({} {})->{}{}", left, right, label.0, label.1)
            }
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => write!(f, "*"),
            PlanarTree::Node(l, r) => write!(f, "({} {})", l, r),
        }
    }
}

/// Folds a value up the tree: `vertex_op` at each internal vertex, `edge_op`
/// on every internal edge (outgoing edges of non-root vertices), `root_op` on
/// the outgoing root edge.  A single leaf evaluates to `root_op(leaf)`.
pub fn evaluate_tree<V: Clone>(
    t: &PlanarTree,
    leaves: &[V],
    vertex_op: &dyn Fn(&V, &V) -> V,
    edge_op: &dyn Fn(V) -> V,
    root_op: &dyn Fn(V) -> V,
) -> V {
    assert_eq!(t.leaf_count(), leaves.len(), "leaf arity mismatch");
    fn go<V: Clone>(
        t: &PlanarTree,
        leaves: &[V],
        next: &mut usize,
        vertex_op: &dyn Fn(&V, &V) -> V,
        edge_op: &dyn Fn(V) -> V,
    ) -> V {
        match t {
            PlanarTree::Leaf => {
                let v = leaves[*next].clone();
                *next += 1;
                v
            }
            PlanarTree::Node(l, r) => {
                let wrap = |child: &PlanarTree, next: &mut usize| {
                    let v = go(child, leaves, next, vertex_op, edge_op);
                    match child {
                        PlanarTree::Leaf => v,
                        _ => edge_op(v),
                    }
                };
                let a = wrap(l, next);
                let b = wrap(r, next);
                vertex_op(&a, &b)
            }
        }
    }
    let mut next = 0;
    root_op(go(t, leaves, &mut next, vertex_op, edge_op))
}

/// Expected dimension of the flow-tree moduli space:
/// `out_degree − Σ degrees + k − 2` for k incoming degrees.
pub fn moduli_dimension(degrees: &[i64], out_degree: i64) -> i64 {
    assert!(!degrees.is_empty(), "at least one incoming edge");
    let k = degrees.len() as i64;
    out_degree - degrees.iter().sum::<i64>() + k - 2
}

/// Telescoped action constant: the output critical value minus the sum of the
/// incoming ones.
pub fn area_constant<S: Scalar>(critical_values: &[S]) -> S {
    let (first, rest) = critical_values.split_first().expect("empty critical value list");
    rest.iter().fold(first.clone(), |acc, v| acc - v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn counts_follow_the_catalan_recursion() {
        // Trees with d leaves number Catalan(d - 1).
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for (i, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate_trees(i + 1).len(), c, "d = {}", i + 1);
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        for d in 1..=6 {
            let ts = enumerate_trees(d);
            for (i, a) in ts.iter().enumerate() {
                assert!(ts[i + 1..].iter().all(|b| b != a));
            }
        }
    }

    #[test]
    fn vertex_and_edge_counts() {
        for d in 2..=7 {
            for t in enumerate_trees(d) {
                assert_eq!(t.leaf_count(), d);
                assert_eq!(t.internal_vertex_count(), d - 1);
                assert_eq!(t.internal_edge_count(), d - 2);
            }
        }
    }

    #[test]
    fn labeling_matches_forced_small_cases() {
        let two = &enumerate_trees(2)[0];
        assert_eq!(format!("{}", label_edges(two)), "(01 12)->02");

        let threes = enumerate_trees(3);
        let printed: Vec<String> = threes.iter().map(|t| format!("{}", label_edges(t))).collect();
        assert!(printed.contains(&"((01 12)->02 23)->03".to_string()), "left comb: {:?}", printed);
        assert!(printed.contains(&"(01 (12 23)->13)->03".to_string()), "right comb: {:?}", printed);
    }

    #[test]
    fn labeling_satisfies_the_vertex_rule() {
        for d in 1..=6 {
            for t in enumerate_trees(d) {
                let lt = label_edges(&t);
                assert!(lt.vertex_rule_holds());
                assert_eq!(lt.label(), (0, d));
            }
        }
    }

    #[test]
    fn evaluator_places_edge_ops_on_internal_edges_only() {
        let v = |a: &String, b: &String| format!("[{},{}]", a, b);
        let e = |s: String| format!("e({})", s);
        let r = |s: String| format!("r({})", s);
        let xyz = ["x".to_string(), "y".to_string(), "z".to_string()];

        assert_eq!(
            evaluate_tree(&PlanarTree::Leaf, &xyz[..1], &v, &e, &r),
            "r(x)"
        );
        let two = &enumerate_trees(2)[0];
        assert_eq!(evaluate_tree(two, &xyz[..2], &v, &e, &r), "r([x,y])");

        let threes = enumerate_trees(3);
        let results: Vec<String> =
            threes.iter().map(|t| evaluate_tree(t, &xyz, &v, &e, &r)).collect();
        assert!(results.contains(&"r([e([x,y]),z])".to_string()), "{:?}", results);
        assert!(results.contains(&"r([x,e([y,z])])".to_string()), "{:?}", results);
    }

    #[test]
    fn dimension_formula_values() {
        assert_eq!(moduli_dimension(&[1, 1, 1], 2), 0);
        assert_eq!(moduli_dimension(&[1], 1), -1);
        assert_eq!(moduli_dimension(&[1, 1], 2), 0);
    }

    #[test]
    fn area_constant_telescopes() {
        assert_eq!(area_constant(&[rat(5, 1), rat(2, 1), rat(3, 1)]), rat(0, 1));
        assert_eq!(area_constant(&[rat(1, 1), rat(0, 1)]), rat(1, 1));
        assert_eq!(
            area_constant(&[rat(7, 2), rat(1, 2), rat(1, 1), rat(2, 1)]),
            rat(0, 1)
        );
        assert_eq!(area_constant(&[rat(3, 4)]), rat(3, 4));
    }

    #[test]
    #[should_panic(expected = "at least one leaf")]
    fn zero_leaves_is_rejected() {
        enumerate_trees(0);
    }
}
