//! The rooted tree of a VC-dimension-1 class in f-representation.
//!
//! Once a class contains the all-zeros concept, the partial order on its
//! points is a forest: the up-set `{y : x ⪯ y}` of every point is a chain, and
//! every concept is the up-set of its deepest point. Attaching the maximal
//! points to a virtual root gives a tree in which each concept is a path from
//! some node to the root.
//!
//! [`ClassTree`] stores that tree together with a DFS (Euler) numbering. The
//! numbering turns the deterministic-point computation into an interval
//! sweep that is linear in the sample, which is what makes the learners
//! affordable at millions of examples.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::concept::{Concept, ConceptClass, Example, Hypothesis, PointId};
use crate::error::{Error, Result};

/// A tree node: the virtual root `∅` or a domain point.
///
/// Serialized as `null` for the root and as the point index otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Node {
    Root,
    Point(PointId),
}

impl Node {
    pub fn point(self) -> Option<PointId> {
        match self {
            Node::Root => None,
            Node::Point(p) => Some(p),
        }
    }
}

impl From<PointId> for Node {
    fn from(p: PointId) -> Self {
        Node::Point(p)
    }
}

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct ClassTree {
    class_f: ConceptClass,
    zero_concept: usize,
    parent: Vec<Node>,
    children: Vec<Vec<PointId>>,
    root_children: Vec<PointId>,
    depth: Vec<usize>,
    proper: Vec<bool>,
    concept_at: Vec<Option<usize>>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    dfs: Vec<PointId>,
    by_depth: Vec<Vec<PointId>>,
}

/// Builds the tree of a class in f-representation.
///
/// Children of a node are exactly the maximal points strictly below it,
/// listed by ascending point id. Depth equals the length of the chain from
/// the point up to the root, so `depth(∅) = 0` and maximal points sit at 1.
pub fn make_tree(class_f: &ConceptClass) -> Result<ClassTree> {
    ClassTree::build(class_f)
}

/// Properness by the definition: `x` is proper when some concept's positive
/// set equals the up-set of `x` (aliases and forced-one constants included).
/// Index 0 of the result is the root.
pub fn mark_proper(class_f: &ConceptClass, tree: &ClassTree) -> Vec<(Node, bool)> {
    let mut nodes = vec![Node::Root];
    nodes.extend(tree.dfs.iter().map(|&p| Node::Point(p)));
    nodes
        .into_iter()
        .map(|n| {
            let closure = tree.closure_set(n);
            (n, class_f.concepts().iter().any(|c| c.ones() == &closure))
        })
        .collect()
}

impl ClassTree {
    pub fn build(class_f: &ConceptClass) -> Result<Self> {
        let zero_concept = class_f.zero_concept().ok_or(Error::MissingZeroConcept)?;
        let n = class_f.domain_size();
        let universe: Vec<PointId> = class_f.universe().collect();
        let mut in_u = FixedBitSet::with_capacity(n);
        for &x in &universe {
            in_u.insert(x.index());
        }

        let concepts = class_f.concepts();
        let sizes: Vec<usize> = concepts
            .iter()
            .map(|c| c.ones().intersection(&in_u).count())
            .collect();
        let columns: Vec<FixedBitSet> = (0..n)
            .map(|x| {
                if in_u.contains(x) {
                    class_f.column(PointId::new(x))
                } else {
                    FixedBitSet::new()
                }
            })
            .collect();
        let col_size: Vec<usize> = columns.iter().map(|c| c.count_ones(..)).collect();

        // Smallest concept containing each point bounds its up-set.
        let mut smallest = vec![NONE; n];
        for (i, c) in concepts.iter().enumerate() {
            for x in c.ones().intersection(&in_u) {
                if smallest[x] == NONE || sizes[i] < sizes[smallest[x]] {
                    smallest[x] = i;
                }
            }
        }

        let mut parent = vec![Node::Root; n];
        let mut depth = vec![0usize; n];
        for &x in &universe {
            let xi = x.index();
            if smallest[xi] == NONE {
                return Err(Error::NotTreeStructured);
            }
            let mut up: Vec<usize> = concepts[smallest[xi]]
                .ones()
                .intersection(&in_u)
                .filter(|&y| columns[xi].is_subset(&columns[y]))
                .collect();
            up.sort_unstable_by(|&a, &b| col_size[b].cmp(&col_size[a]));
            if up.windows(2).any(|w| !columns[w[1]].is_subset(&columns[w[0]])) {
                return Err(Error::NotTreeStructured);
            }
            depth[xi] = up.len();
            if up.len() >= 2 {
                parent[xi] = Node::Point(PointId::new(up[up.len() - 2]));
            }
        }

        let mut children = vec![Vec::new(); n];
        let mut root_children = Vec::new();
        for &x in &universe {
            match parent[x.index()] {
                Node::Root => {
                    if depth[x.index()] != 1 {
                        return Err(Error::NotTreeStructured);
                    }
                    root_children.push(x);
                }
                Node::Point(p) => {
                    if depth[x.index()] != depth[p.index()] + 1 {
                        return Err(Error::NotTreeStructured);
                    }
                    children[p.index()].push(x);
                }
            }
        }

        // Every concept must be the up-set of its deepest point.
        let mut concept_at = vec![None; n];
        for (i, c) in concepts.iter().enumerate() {
            if i == zero_concept || sizes[i] == 0 {
                continue;
            }
            let deepest = c
                .ones()
                .intersection(&in_u)
                .max_by_key(|&x| depth[x])
                .expect("non-empty");
            if sizes[i] != depth[deepest] {
                return Err(Error::NotTreeStructured);
            }
            concept_at[deepest].get_or_insert(i);
        }
        let proper: Vec<bool> = concept_at.iter().map(Option::is_some).collect();

        let mut tin = vec![NONE; n];
        let mut tout = vec![NONE; n];
        let mut dfs = Vec::with_capacity(universe.len());
        let mut stack: Vec<(PointId, usize)> = root_children.iter().rev().map(|&c| (c, 0)).collect();
        while let Some((x, next)) = stack.pop() {
            if next == 0 {
                tin[x.index()] = dfs.len();
                dfs.push(x);
            }
            let kids = &children[x.index()];
            if next < kids.len() {
                stack.push((x, next + 1));
                stack.push((kids[next], 0));
            } else {
                tout[x.index()] = dfs.len() - 1;
            }
        }

        let max_depth = universe.iter().map(|x| depth[x.index()]).max().unwrap_or(0);
        let mut by_depth = vec![Vec::new(); max_depth + 1];
        for &x in &universe {
            by_depth[depth[x.index()]].push(x);
        }

        Ok(ClassTree {
            class_f: class_f.clone(),
            zero_concept,
            parent,
            children,
            root_children,
            depth,
            proper,
            concept_at,
            tin,
            tout,
            dfs,
            by_depth,
        })
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class_f
    }

    pub fn len(&self) -> usize {
        self.dfs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dfs.is_empty()
    }

    /// Points in DFS pre-order (children visited by ascending id).
    pub fn points(&self) -> &[PointId] {
        &self.dfs
    }

    pub fn contains(&self, x: PointId) -> bool {
        x.index() < self.tin.len() && self.tin[x.index()] != NONE
    }

    pub fn parent(&self, x: PointId) -> Node {
        self.parent[x.index()]
    }

    pub fn children(&self, node: Node) -> &[PointId] {
        match node {
            Node::Root => &self.root_children,
            Node::Point(p) => &self.children[p.index()],
        }
    }

    pub fn depth(&self, node: Node) -> usize {
        match node {
            Node::Root => 0,
            Node::Point(p) => self.depth[p.index()],
        }
    }

    pub fn max_depth(&self) -> usize {
        self.by_depth.len() - 1
    }

    /// Points at a given depth, ascending.
    pub fn layer(&self, depth: usize) -> &[PointId] {
        self.by_depth.get(depth).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_proper(&self, node: Node) -> bool {
        match node {
            Node::Root => true,
            Node::Point(p) => self.proper[p.index()],
        }
    }

    pub fn is_leaf(&self, node: Node) -> bool {
        self.children(node).is_empty()
    }

    /// Index of the concept realised by the node's up-set, if proper.
    pub fn concept_at(&self, node: Node) -> Option<usize> {
        match node {
            Node::Root => Some(self.zero_concept),
            Node::Point(p) => self.concept_at[p.index()],
        }
    }

    /// `a` is an ancestor of `b` or equal to it, i.e. `b ⪯ a`.
    pub fn is_ancestor_or_self(&self, a: Node, b: Node) -> bool {
        match (a, b) {
            (Node::Root, _) => true,
            (Node::Point(_), Node::Root) => false,
            (Node::Point(a), Node::Point(b)) => {
                let (ta, tb) = (self.tin[a.index()], self.tin[b.index()]);
                ta <= tb && tb <= self.tout[a.index()]
            }
        }
    }

    /// Path from `x` up to (excluding) the root, starting at `x`.
    pub fn upward_closure(&self, x: Node) -> Vec<PointId> {
        let mut path = Vec::with_capacity(self.depth(x));
        let mut cur = x;
        while let Node::Point(p) = cur {
            path.push(p);
            cur = self.parent[p.index()];
        }
        path
    }

    /// Full-domain positive set of the node's up-set: path points, the points
    /// merged onto them, and constant points forced to 1.
    pub fn closure_set(&self, x: Node) -> FixedBitSet {
        let n = self.class_f.domain_size();
        let mut on_path = FixedBitSet::with_capacity(n);
        for p in self.upward_closure(x) {
            on_path.insert(p.index());
        }
        let mut out = FixedBitSet::with_capacity(n);
        for i in 0..n {
            let pid = PointId::new(i);
            let on = match self.class_f.constant_label(pid) {
                Some(l) => l,
                None => on_path.contains(self.class_f.representative(pid).index()),
            };
            out.set(i, on);
        }
        out
    }

    /// Back-transforms the node's up-set out of the f-representation.
    pub fn hypothesis(&self, x: Node, f: &Concept) -> Hypothesis {
        let mut ones = self.closure_set(x);
        ones.symmetric_difference_with(f.ones());
        Hypothesis { ones, proper_index: self.concept_at(x) }
    }

    /// Ancestor of `x` at depth `d` (`d ≤ depth(x)`).
    pub fn ancestor_at_depth(&self, x: Node, d: usize) -> Node {
        let mut cur = x;
        while self.depth(cur) > d {
            cur = match cur {
                Node::Point(p) => self.parent[p.index()],
                Node::Root => unreachable!(),
            };
        }
        cur
    }

    pub fn lca(&self, a: Node, b: Node) -> Node {
        let d = self.depth(a).min(self.depth(b));
        let (mut a, mut b) = (self.ancestor_at_depth(a, d), self.ancestor_at_depth(b, d));
        while a != b {
            a = self.ancestor_at_depth(a, self.depth(a) - 1);
            b = self.ancestor_at_depth(b, self.depth(b) - 1);
        }
        a
    }

    /// Deepest point forced to 1 by every concept consistent with the
    /// (f-represented) sample. `Root` when no point is forced.
    ///
    /// Positives must form a chain ending at their deepest element `p`; the
    /// consistent concepts are then the proper nodes in the subtree of `p`
    /// that avoid the subtrees of all negatives, and the forced points are the
    /// up-set of their lowest common ancestor.
    pub fn deepest_deterministic(&self, examples: &[Example]) -> Result<Node> {
        let class = &self.class_f;
        let mut deepest = Node::Root;
        let mut negatives: Vec<PointId> = Vec::new();
        for e in examples {
            class.check_point(e.point)?;
            if let Some(forced) = class.constant_label(e.point) {
                if forced != e.label {
                    return Err(Error::NotRealizable);
                }
                continue;
            }
            let x = class.representative(e.point);
            if !e.label {
                negatives.push(x);
                continue;
            }
            let xn = Node::Point(x);
            if self.is_ancestor_or_self(xn, deepest) {
                continue;
            }
            if self.is_ancestor_or_self(deepest, xn) {
                deepest = xn;
            } else {
                return Err(Error::NotRealizable);
            }
        }

        let p = match deepest {
            Node::Root => return Ok(Node::Root),
            Node::Point(p) => p,
        };
        let (lo, hi) = (self.tin[p.index()], self.tout[p.index()]);
        // skip[i - lo] = end of the furthest blocked subtree starting at DFS position i.
        let mut skip = vec![NONE; hi - lo + 1];
        for x in negatives {
            if self.is_ancestor_or_self(Node::Point(x), deepest) {
                return Err(Error::NotRealizable);
            }
            let t = self.tin[x.index()];
            if t >= lo && t <= hi {
                let end = self.tout[x.index()];
                let slot = &mut skip[t - lo];
                if *slot == NONE || end > *slot {
                    *slot = end;
                }
            }
        }

        let (mut first, mut last) = (NONE, NONE);
        let mut pos = lo;
        while pos <= hi {
            let blocked = skip[pos - lo];
            if blocked != NONE {
                pos = blocked + 1;
                continue;
            }
            if self.proper[self.dfs[pos].index()] {
                if first == NONE {
                    first = pos;
                }
                last = pos;
            }
            pos += 1;
        }
        if first == NONE {
            return Err(Error::NotRealizable);
        }
        Ok(self.lca(Node::Point(self.dfs[first]), Node::Point(self.dfs[last])))
    }

    /// Points forced to 1 by every consistent concept, over the full domain.
    pub fn deterministic_points(&self, examples: &[Example]) -> Result<DeterministicSet> {
        let deepest = self.deepest_deterministic(examples)?;
        let points = self.closure_set(deepest).ones().map(PointId::new).collect();
        Ok(DeterministicSet { points, deepest: deepest.point(), depth_of_deepest: self.depth(deepest) })
    }

    /// Subtree rooted at `x_good`, cut below the first proper node on every branch.
    pub fn make_subtree(&self, x_good: Node) -> SubTree {
        let mut nodes = vec![x_good];
        let mut leaves = Vec::new();
        if self.is_proper(x_good) {
            leaves.push(x_good);
            return SubTree { root: x_good, nodes, leaves };
        }
        let mut stack: Vec<PointId> = self.children(x_good).iter().rev().copied().collect();
        while let Some(y) = stack.pop() {
            nodes.push(Node::Point(y));
            if self.proper[y.index()] {
                leaves.push(Node::Point(y));
            } else {
                stack.extend(self.children[y.index()].iter().rev().copied());
            }
        }
        SubTree { root: x_good, nodes, leaves }
    }

    /// Weights and values of the subtree nodes for an f-represented sample.
    ///
    /// Weight counts label-0 examples at or below the node in the full tree;
    /// value counts label-0 examples on the path from the node up to, but
    /// excluding, the subtree root. Repeated examples count with multiplicity.
    pub fn node_stats(&self, sub: &SubTree, examples: &[Example]) -> NodeStats {
        let class = &self.class_f;
        let n = class.domain_size();
        let mut zeros = vec![0u64; n];
        for e in examples {
            if !e.label && class.constant_label(e.point).is_none() {
                zeros[class.representative(e.point).index()] += 1;
            }
        }
        let mut weight = zeros.clone();
        for &x in self.dfs.iter().rev() {
            if let Node::Point(p) = self.parent[x.index()] {
                weight[p.index()] += weight[x.index()];
            }
        }
        let root_weight: u64 = self.root_children.iter().map(|c| weight[c.index()]).sum();

        let mut value = vec![0u64; n];
        let mut min_leaf = vec![u64::MAX; n];
        // nodes are in DFS pre-order, so parents precede children.
        for &node in &sub.nodes[1..] {
            let p = node.point().expect("subtree below a point");
            let above = match self.parent[p.index()] {
                Node::Point(q) if Node::Point(q) != sub.root => value[q.index()],
                _ => 0,
            };
            value[p.index()] = above + zeros[p.index()];
        }
        let mut root_min = u64::MAX;
        for &node in sub.nodes.iter().rev() {
            let leaf = sub.is_leaf(node);
            match node {
                Node::Point(p) => {
                    if leaf {
                        min_leaf[p.index()] = if node == sub.root { 0 } else { value[p.index()] };
                    }
                    if node != sub.root {
                        let m = min_leaf[p.index()];
                        match self.parent[p.index()] {
                            Node::Point(q) => min_leaf[q.index()] = min_leaf[q.index()].min(m),
                            Node::Root => root_min = root_min.min(m),
                        }
                    }
                }
                Node::Root => {
                    if leaf {
                        root_min = 0;
                    }
                }
            }
        }
        NodeStats { root: sub.root, weight, root_weight, value, min_leaf, root_min_leaf: root_min }
    }
}

/// Output of [`ClassTree::make_subtree`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubTree {
    pub root: Node,
    /// Nodes in DFS pre-order, root first.
    pub nodes: Vec<Node>,
    /// Proper nodes kept, in DFS order.
    pub leaves: Vec<Node>,
}

impl SubTree {
    pub fn is_leaf(&self, node: Node) -> bool {
        self.leaves.contains(&node)
    }

    pub fn contains(&self, node: Node) -> bool {
        self.nodes.contains(&node)
    }

    pub fn children<'a>(&self, tree: &'a ClassTree, node: Node) -> &'a [PointId] {
        if self.is_leaf(node) {
            &[]
        } else {
            tree.children(node)
        }
    }

    /// Subtree leaves at or below `node`.
    pub fn leaves_below(&self, tree: &ClassTree, node: Node) -> Vec<Node> {
        self.leaves.iter().copied().filter(|&l| tree.is_ancestor_or_self(node, l)).collect()
    }
}

/// Weights `w` and values `v` over the nodes of a [`SubTree`].
#[derive(Clone, Debug)]
pub struct NodeStats {
    root: Node,
    weight: Vec<u64>,
    root_weight: u64,
    value: Vec<u64>,
    min_leaf: Vec<u64>,
    root_min_leaf: u64,
}

impl NodeStats {
    pub fn weight(&self, node: Node) -> u64 {
        match node {
            Node::Root => self.root_weight,
            Node::Point(p) => self.weight[p.index()],
        }
    }

    pub fn value(&self, node: Node) -> u64 {
        match node {
            _ if node == self.root => 0,
            Node::Root => 0,
            Node::Point(p) => self.value[p.index()],
        }
    }

    /// Minimum value over the subtree leaves below `node`.
    pub fn min_leaf_value(&self, node: Node) -> u64 {
        match node {
            Node::Root => self.root_min_leaf,
            Node::Point(p) => self.min_leaf[p.index()],
        }
    }
}

/// Points forced to label 1 by a sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterministicSet {
    pub points: Vec<PointId>,
    pub deepest: Option<PointId>,
    pub depth_of_deepest: usize,
}
