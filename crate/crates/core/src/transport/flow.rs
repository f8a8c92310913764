//! Exact maximum flow (Edmonds–Karp) over any `Scalar`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Arc<T> {
    pub from: usize,
    pub to: usize,
    pub cap: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork<T> {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc<T>>,
}

impl<T: Scalar> FlowNetwork<T> {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source >= nodes || sink >= nodes {
            return Err(Error::MalformedNetwork(format!(
                "terminals {source}, {sink} outside {nodes} nodes"
            )));
        }
        if source == sink {
            return Err(Error::MalformedNetwork("source and sink coincide".into()));
        }
        Ok(Self {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: T) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::MalformedNetwork(format!(
                "arc {from} -> {to} outside {} nodes",
                self.nodes
            )));
        }
        if cap < T::zero() {
            return Err(Error::MalformedNetwork(format!(
                "arc {from} -> {to} has negative capacity {cap}"
            )));
        }
        self.arcs.push(Arc { from, to, cap });
        Ok(self.arcs.len() - 1)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc<T>] {
        &self.arcs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxFlow<T> {
    pub value: T,
    /// Flow on each arc, indexed like `FlowNetwork::arcs`.
    pub flow: Vec<T>,
    /// Nodes reachable from the source in the final residual graph; the arcs
    /// leaving this set form a minimum cut.
    pub source_side: Vec<bool>,
}

impl<T: Scalar> MaxFlow<T> {
    pub fn cut_capacity(&self, net: &FlowNetwork<T>) -> T {
        net.arcs
            .iter()
            .filter(|a| self.source_side[a.from] && !self.source_side[a.to])
            .fold(T::zero(), |acc, a| acc + a.cap.clone())
    }
}

/// Shortest augmenting paths, arcs scanned in insertion order, so the result
/// is a function of the network alone.
pub fn max_flow<T: Scalar>(net: &FlowNetwork<T>) -> MaxFlow<T> {
    // residual edges: 2k forward, 2k+1 backward
    let mut residual: Vec<T> = Vec::with_capacity(2 * net.arcs.len());
    let mut head: Vec<usize> = Vec::with_capacity(2 * net.arcs.len());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); net.nodes];
    for (k, a) in net.arcs.iter().enumerate() {
        residual.push(a.cap.clone());
        residual.push(T::zero());
        head.push(a.to);
        head.push(a.from);
        adj[a.from].push(2 * k);
        adj[a.to].push(2 * k + 1);
    }

    let mut value = T::zero();
    loop {
        let mut via: Vec<Option<usize>> = vec![None; net.nodes];
        let mut seen = vec![false; net.nodes];
        seen[net.source] = true;
        let mut queue = VecDeque::from([net.source]);
        while let Some(u) = queue.pop_front() {
            if u == net.sink {
                break;
            }
            for &e in &adj[u] {
                let v = head[e];
                if !seen[v] && residual[e] > T::zero() {
                    seen[v] = true;
                    via[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        if !seen[net.sink] {
            let flow = net
                .arcs
                .iter()
                .enumerate()
                .map(|(k, a)| a.cap.clone() - residual[2 * k].clone())
                .collect();
            return MaxFlow {
                value,
                flow,
                source_side: seen,
            };
        }
        let mut path = Vec::new();
        let mut v = net.sink;
        while let Some(e) = via[v] {
            path.push(e);
            v = head[e ^ 1];
        }
        let push = path
            .iter()
            .map(|&e| residual[e].clone())
            .reduce(|a, b| if b < a { b } else { a })
            .expect("path from source to sink is nonempty");
        for &e in &path {
            residual[e] = residual[e].clone() - push.clone();
            residual[e ^ 1] = residual[e ^ 1].clone() + push.clone();
        }
        value = value + push;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::q;
    use proptest::prelude::*;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::new(2, 0, 1).unwrap();
        net.add_arc(0, 1, q(1, 1)).unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, q(1, 1));
        assert_eq!(f.flow, vec![q(1, 1)]);
    }

    #[test]
    fn disconnected() {
        let mut net = FlowNetwork::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, q(1, 1)).unwrap();
        net.add_arc(2, 3, q(1, 1)).unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, q(0, 1));
        assert_eq!(f.source_side, vec![true, true, false, false]);
    }

    #[test]
    fn diagonal_bipartite() {
        let half = q(1, 2);
        let mut net = FlowNetwork::new(6, 0, 5).unwrap();
        net.add_arc(0, 1, half.clone()).unwrap();
        net.add_arc(0, 2, half.clone()).unwrap();
        net.add_arc(1, 3, q(1, 1)).unwrap();
        net.add_arc(2, 4, q(1, 1)).unwrap();
        net.add_arc(3, 5, half.clone()).unwrap();
        net.add_arc(4, 5, half).unwrap();
        assert_eq!(max_flow(&net).value, q(1, 1));
    }

    #[test]
    fn malformed() {
        assert!(FlowNetwork::<num_rational::BigRational>::new(2, 0, 0).is_err());
        assert!(FlowNetwork::<num_rational::BigRational>::new(2, 0, 2).is_err());
        let mut net = FlowNetwork::new(2, 0, 1).unwrap();
        assert!(net.add_arc(0, 1, q(-1, 2)).is_err());
        assert!(net.add_arc(0, 5, q(1, 2)).is_err());
    }

    proptest! {
        #[test]
        fn flow_equals_cut_and_conserves(arcs in prop::collection::vec((0usize..6, 0usize..6, 0i64..5), 0..20)) {
            let mut net = FlowNetwork::new(6, 0, 5).unwrap();
            for (a, b, c) in arcs {
                if a != b {
                    net.add_arc(a, b, q(c, 3)).unwrap();
                }
            }
            let f = max_flow(&net);
            prop_assert_eq!(&f.value, &f.cut_capacity(&net));
            for v in 1..5 {
                let mut bal = q(0, 1);
                for (k, a) in net.arcs().iter().enumerate() {
                    prop_assert!(f.flow[k] >= q(0, 1) && f.flow[k] <= a.cap);
                    if a.to == v { bal += f.flow[k].clone(); }
                    if a.from == v { bal -= f.flow[k].clone(); }
                }
                prop_assert_eq!(bal, q(0, 1));
            }
        }
    }
}
