//! Random taxonomies and brute-force oracles shared by the integration tests.
//!
//! Nothing here calls into the library's query code: the oracles work from
//! the generator's own parent array and labels.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;

/// A random tree laid out in pre-order, exactly as its file lists it.
#[derive(Clone, Debug)]
pub struct RandomTree {
    pub text: String,
    pub parent: Vec<Option<usize>>,
    pub is_word: Vec<bool>,
    pub labels: Vec<String>,
    pub depth: Vec<u32>,
}

impl RandomTree {
    /// `nodes` total nodes (at least 2); each word label is reused at most
    /// `max_senses` times.
    pub fn generate<R: Rng>(rng: &mut R, nodes: usize, max_senses: usize) -> Self {
        assert!(nodes >= 2);
        // random recursive tree, biased towards recent nodes for some depth
        let mut raw_parent = vec![None; nodes];
        for (i, slot) in raw_parent.iter_mut().enumerate().skip(1) {
            let p = if rng.gen_bool(0.5) {
                rng.gen_range(i.saturating_sub(3)..i)
            } else {
                rng.gen_range(0..i)
            };
            *slot = Some(p);
        }
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for (i, p) in raw_parent.iter().enumerate() {
            if let Some(p) = p {
                kids[*p].push(i);
            }
        }

        // pre-order walk renumbers nodes in file order
        let mut order = Vec::with_capacity(nodes);
        let mut stack = vec![(0usize, None::<usize>)];
        let mut parent = Vec::with_capacity(nodes);
        while let Some((raw, p)) = stack.pop() {
            let new_id = order.len();
            order.push(raw);
            parent.push(p);
            for &k in kids[raw].iter().rev() {
                stack.push((k, Some(new_id)));
            }
        }
        let is_word: Vec<bool> = order
            .iter()
            .enumerate()
            .map(|(new, &raw)| new != 0 && kids[raw].is_empty())
            .collect();

        let word_total = is_word.iter().filter(|w| **w).count();
        let pool = (word_total / 2).max(1);
        let mut uses: HashMap<usize, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(nodes);
        let mut fresh = pool;
        for (i, &w) in is_word.iter().enumerate() {
            if !w {
                labels.push(format!("n{i}"));
                continue;
            }
            let mut k = rng.gen_range(0..pool);
            if uses.get(&k).copied().unwrap_or(0) >= max_senses {
                k = fresh;
                fresh += 1;
            }
            *uses.entry(k).or_insert(0) += 1;
            labels.push(format!("w{k}"));
        }

        let mut depth = vec![0u32; nodes];
        for i in 1..nodes {
            depth[i] = depth[parent[i].unwrap()] + 1;
        }
        let mut text = String::from("# generated\n");
        for i in 0..nodes {
            let kind = if is_word[i] { "word" } else { "node" };
            text.push_str(&format!("{}\t{}\t{}\n", depth[i], kind, labels[i]));
        }
        RandomTree {
            text,
            parent,
            is_word,
            labels,
            depth,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn word_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_word[i]).collect()
    }

    /// Distinct word labels.
    pub fn word_labels(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.word_nodes()
            .into_iter()
            .map(|i| self.labels[i].clone())
            .filter(|l| seen.insert(l.clone()))
            .collect()
    }

    /// Node indices carrying `label`, in file order.
    pub fn senses_of(&self, label: &str) -> Vec<usize> {
        self.word_nodes()
            .into_iter()
            .filter(|&i| self.labels[i] == label)
            .collect()
    }

    /// Position among word lines.
    pub fn flat_position(&self, node: usize) -> usize {
        (0..node).filter(|&i| self.is_word[i]).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                adj[i].push(p);
                adj[p].push(i);
            }
        }
        adj
    }
}

pub fn bfs_distance(adj: &[Vec<usize>], from: usize, to: usize) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([from]);
    dist[from] = 0;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return dist[u];
        }
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    panic!("disconnected tree");
}

pub fn ancestor_set(parent: &[Option<usize>], node: usize) -> HashSet<usize> {
    let mut set = HashSet::new();
    let mut cur = Some(node);
    while let Some(c) = cur {
        set.insert(c);
        cur = parent[c];
    }
    set
}

/// Deepest element of the intersection of both ancestor sets.
pub fn ls_oracle(tree: &RandomTree, a: usize, b: usize) -> usize {
    let sa = ancestor_set(&tree.parent, a);
    let sb = ancestor_set(&tree.parent, b);
    *sa.intersection(&sb)
        .max_by_key(|&&n| tree.depth[n])
        .unwrap()
}

/// Every node whose ancestor set contains `node`.
pub fn subtree(tree: &RandomTree, node: usize) -> Vec<usize> {
    (0..tree.len())
        .filter(|&i| ancestor_set(&tree.parent, i).contains(&node))
        .collect()
}

/// Corpus counts for a random tree: some labels left out so the floor kicks in.
pub fn random_counts<R: Rng>(rng: &mut R, tree: &RandomTree) -> (Vec<(String, f64)>, f64) {
    let mut counts = Vec::new();
    for label in tree.word_labels() {
        if rng.gen_bool(0.8) {
            counts.push((label, f64::from(rng.gen_range(0u32..500))));
        }
    }
    let sum: f64 = counts.iter().map(|(_, c)| c).sum();
    let total = sum + f64::from(rng.gen_range(1u32..100));
    (counts, total)
}

/// Per-node IC from first principles: word senses split the count, internal
/// nodes take the minimum over every word anywhere beneath them.
pub fn ic_oracle(tree: &RandomTree, counts: &[(String, f64)], total: f64, floor: f64) -> Vec<f64> {
    let count_of: HashMap<&str, f64> = counts.iter().map(|(w, c)| (w.as_str(), *c)).collect();
    let word_ic = |i: usize| {
        let label = &tree.labels[i];
        let senses = tree.senses_of(label).len() as f64;
        let c = count_of
            .get(label.as_str())
            .copied()
            .unwrap_or(0.0)
            .max(floor);
        -(c / (senses * total)).log2()
    };
    let ics: Vec<f64> = (0..tree.len())
        .map(|i| {
            if tree.is_word[i] {
                word_ic(i)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    (0..tree.len())
        .map(|n| {
            subtree(tree, n)
                .into_iter()
                .map(|i| ics[i])
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Exhaustive best value over the cross product of two sense lists.
pub fn best_over_pairs(
    s1: &[usize],
    s2: &[usize],
    maximise: bool,
    f: impl Fn(usize, usize) -> f64,
) -> f64 {
    let mut best = if maximise {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    };
    for &a in s1 {
        for &b in s2 {
            let v = f(a, b);
            best = if maximise { best.max(v) } else { best.min(v) };
        }
    }
    best
}

/// Edges between the groups holding two word nodes.
pub fn group_edges_oracle(adj: &[Vec<usize>], a: usize, b: usize) -> usize {
    if a == b {
        0
    } else {
        bfs_distance(adj, a, b) - 2
    }
}

pub fn intervening_oracle(tree: &RandomTree, a: usize, b: usize) -> usize {
    let (pa, pb) = (tree.flat_position(a), tree.flat_position(b));
    let (lo, hi) = (pa.min(pb), pa.max(pb));
    (lo + 1..hi).count()
}

/// Words-per-edge from an exhaustive scan: minimum edge count first, then
/// fewest intervening words among those pairs.
pub fn words_per_edge_oracle(
    tree: &RandomTree,
    adj: &[Vec<usize>],
    s1: &[usize],
    s2: &[usize],
) -> f64 {
    let mut best: Option<(usize, usize)> = None;
    for &a in s1 {
        for &b in s2 {
            let key = (
                group_edges_oracle(adj, a, b),
                intervening_oracle(tree, a, b),
            );
            if best.is_none_or(|k| key < k) {
                best = Some(key);
            }
        }
    }
    let (edges, between) = best.unwrap();
    if edges == 0 {
        0.0
    } else {
        between as f64 / edges as f64
    }
}
