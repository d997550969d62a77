//! Directed acyclic graphs over a team's variables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A DAG whose vertices are indexed `0..n` and carry names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    names: Vec<String>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
}

impl Dag {
    /// Builds a graph, rejecting cycles (self-loops included).
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut parents = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVariable(format!("vertex {}", a.max(b))));
            }
            parents[b].insert(a);
        }
        let parents: Vec<Vec<usize>> = parents.into_iter().map(|p| p.into_iter().collect()).collect();
        let mut children = vec![Vec::new(); n];
        for (b, ps) in parents.iter().enumerate() {
            for &a in ps {
                children[a].push(b);
            }
        }
        let dag = Dag { names, parents, children };
        if let Some(v) = dag.find_cycle_vertex() {
            return Err(Error::CyclicGraph(dag.names[v].clone()));
        }
        Ok(dag)
    }

    /// Builds a graph from named edges.
    pub fn from_named(names: Vec<String>, edges: &[(&str, &str)]) -> Result<Self> {
        let mut idx = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let find = |s: &str| {
                names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| Error::UnknownVariable(s.to_string()))
            };
            idx.push((find(a)?, find(b)?));
        }
        Dag::new(names, &idx)
    }

    fn find_cycle_vertex(&self) -> Option<usize> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.len();
        let mut state = vec![0u8; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < self.children[v].len() {
                    let c = self.children[v][*i];
                    *i += 1;
                    match state[c] {
                        0 => {
                            state[c] = 1;
                            stack.push((c, 0));
                        }
                        1 => return Some(c),
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Parents of `v` in increasing index order.
    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.parents[b].binary_search(&a).is_ok()
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (b, ps) in self.parents.iter().enumerate() {
            for &a in ps {
                out.push((a, b));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn named_edges(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }

    pub fn is_endogenous(&self, v: usize) -> bool {
        !self.parents[v].is_empty()
    }

    /// Kahn's algorithm, ties broken by index.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &c in &self.children[v] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        order
    }

    /// The graph with every arrow into a member of `xs` deleted.
    pub fn remove_incoming(&self, xs: &[usize]) -> Dag {
        let mut parents = self.parents.clone();
        for &x in xs {
            parents[x].clear();
        }
        let mut children = vec![Vec::new(); self.len()];
        for (b, ps) in parents.iter().enumerate() {
            for &a in ps {
                children[a].push(b);
            }
        }
        Dag {
            names: self.names.clone(),
            parents,
            children,
        }
    }

    pub fn remove_incoming_named(&self, xs: &[&str]) -> Result<Dag> {
        let idx = xs.iter().map(|x| self.index_of(x)).collect::<Result<Vec<_>>>()?;
        Ok(self.remove_incoming(&idx))
    }

    /// Evaluation distance of every vertex from `xs`: the length of the
    /// longest directed path of the pruned graph from a member of `xs`,
    /// 0 on `xs` itself and -1 where no path exists.
    pub fn eval_distances(&self, xs: &[usize]) -> Vec<i64> {
        let pruned = self.remove_incoming(xs);
        let mut dist = vec![-1i64; self.len()];
        for &x in xs {
            dist[x] = 0;
        }
        for v in pruned.topological_order() {
            if dist[v] == 0 && xs.contains(&v) {
                continue;
            }
            let best = pruned.parents[v]
                .iter()
                .filter(|&&p| dist[p] >= 0)
                .map(|&p| dist[p] + 1)
                .max();
            if let Some(d) = best {
                dist[v] = d;
            }
        }
        dist
    }

    pub fn eval_distance(&self, xs: &[&str], y: &str) -> Result<i64> {
        let idx = xs.iter().map(|x| self.index_of(x)).collect::<Result<Vec<_>>>()?;
        let y = self.index_of(y)?;
        Ok(self.eval_distances(&idx)[y])
    }

    /// Vertices reachable from `v` by a path of length at least one.
    pub fn descendants(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = self.children[v].clone();
        while let Some(c) = stack.pop() {
            if seen.insert(c) {
                stack.extend(self.children[c].iter().copied());
            }
        }
        seen
    }

    /// Everything except `v` and its descendants.
    pub fn nondescendants(&self, v: usize) -> BTreeSet<usize> {
        let desc = self.descendants(v);
        (0..self.len()).filter(|&u| u != v && !desc.contains(&u)).collect()
    }

    pub fn descendants_named(&self, v: &str) -> Result<BTreeSet<String>> {
        let i = self.index_of(v)?;
        Ok(self.descendants(i).into_iter().map(|u| self.names[u].clone()).collect())
    }

    pub fn nondescendants_named(&self, v: &str) -> Result<BTreeSet<String>> {
        let i = self.index_of(v)?;
        Ok(self.nondescendants(i).into_iter().map(|u| self.names[u].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn triangle() -> Dag {
        Dag::from_named(names(&["X", "Y", "Z"]), &[("X", "Y"), ("X", "Z"), ("Z", "Y")]).unwrap()
    }

    #[test]
    fn remove_incoming_examples() {
        let g = triangle();
        assert_eq!(
            g.remove_incoming_named(&["Y"]).unwrap().named_edges(),
            vec![("X".to_string(), "Z".to_string())]
        );
        assert_eq!(g.remove_incoming_named(&[]).unwrap(), g);
        assert!(g.remove_incoming_named(&["X", "Y", "Z"]).unwrap().edges().is_empty());
        assert!(matches!(g.remove_incoming_named(&["Q"]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn distance_examples() {
        let g = triangle();
        assert_eq!(g.eval_distance(&["X"], "Y").unwrap(), 2);
        assert_eq!(g.eval_distance(&["X"], "Z").unwrap(), 1);
        assert_eq!(g.eval_distance(&["X"], "X").unwrap(), 0);
        let h = Dag::from_named(names(&["W", "X", "Y"]), &[("X", "Y")]).unwrap();
        assert_eq!(h.eval_distance(&["X"], "W").unwrap(), -1);
        // arrows into the intervened set are ignored
        assert_eq!(g.eval_distance(&["Z"], "Y").unwrap(), 1);
        assert_eq!(g.eval_distance(&["Z"], "X").unwrap(), -1);
    }

    #[test]
    fn descendant_examples() {
        let g = Dag::from_named(names(&["X", "Y", "Z"]), &[("X", "Y"), ("Y", "Z")]).unwrap();
        assert_eq!(g.descendants_named("X").unwrap(), ["Y", "Z"].iter().map(|s| s.to_string()).collect());
        assert!(g.descendants_named("Z").unwrap().is_empty());
        assert!(triangle().nondescendants_named("X").unwrap().is_empty());
        assert_eq!(g.nondescendants_named("Z").unwrap().len(), 2);
    }

    #[test]
    fn cycles_rejected() {
        assert!(matches!(
            Dag::from_named(names(&["Y"]), &[("Y", "Y")]),
            Err(Error::CyclicGraph(_))
        ));
        assert!(matches!(
            Dag::from_named(names(&["X", "Y", "Z"]), &[("X", "Y"), ("Y", "Z"), ("Z", "X")]),
            Err(Error::CyclicGraph(_))
        ));
    }
}
