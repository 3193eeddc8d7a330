//! Disjoint sets whose representative is always the smallest member.
//!
//! When elements are numbered in filtration order the representative is the
//! oldest vertex of its component, which is exactly what the elder rule needs.

#[derive(Debug, Clone)]
pub struct ElderUnionFind {
    parent: Vec<usize>,
}

impl ElderUnionFind {
    pub fn new(n: usize) -> Self {
        ElderUnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`. Returns `(elder, younger)` roots when
    /// they were distinct; the younger root is absorbed.
    pub fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (elder, younger) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[younger] = elder;
        Some((elder, younger))
    }

    pub fn roots(&mut self) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .collect()
    }
}
