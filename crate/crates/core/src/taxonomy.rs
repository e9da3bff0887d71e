//! Thesaurus hierarchy: parsing, indexing and structural queries.
//!
//! A taxonomy file is depth-prefixed TSV, one node per line:
//!
//! ```text
//! # comment
//! 0	node	Abstract Relations
//! 1	node	Existence
//! 2	word	being
//! 2	word	entity
//! ```
//!
//! A line's parent is the nearest preceding line one level shallower. Node ids
//! are handed out in line order, so every parent has a smaller id than its
//! children and a reverse scan over the node table is a post-order walk.

#![allow(clippy::tabs_in_doc_comments)]

use std::collections::HashMap;
use std::fmt;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense handle for a node, assigned in file order starting at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(pub u32);

impl ConceptId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    /// A grouping node (class, section, category, paragraph, semicolon group).
    Internal,
    /// A word or phrase; always a leaf.
    Word,
}

impl NodeKind {
    fn keyword(self) -> &'static str {
        match self {
            NodeKind::Internal => "node",
            NodeKind::Word => "word",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: ConceptId,
    pub label: String,
    pub kind: NodeKind,
    pub parent: Option<ConceptId>,
    pub depth: u32,
    pub children: Vec<ConceptId>,
    /// Position in the flat word order. Present only on word nodes.
    pub flat_pos: Option<u32>,
}

impl Node {
    pub fn is_word(&self) -> bool {
        self.kind == NodeKind::Word
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TaxonomyError {
    #[error("empty input: no content lines")]
    Empty,
    #[error("line {line}: malformed line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: first content line must be a depth-0 `node` line")]
    BadRoot { line: usize },
    #[error("line {line}: depth jumps from {from} to {to}; depth may grow by at most 1")]
    DepthJump { line: usize, from: u32, to: u32 },
    #[error("line {line}: word line at line {word_line} cannot have children")]
    WordWithChildren { line: usize, word_line: usize },
    #[error("line {line}: second root; only one depth-0 line is allowed")]
    MultipleRoots { line: usize },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: IoErrorEq,
    },
    #[error("{id} is not a word node")]
    NotAWord { id: ConceptId },
}

/// `io::Error` wrapper so that `TaxonomyError` can derive `PartialEq`.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct IoErrorEq(#[from] pub io::Error);

impl PartialEq for IoErrorEq {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind() == other.0.kind()
    }
}

impl Eq for IoErrorEq {}

/// Case folding used for every word lookup. Labels are stored verbatim.
pub fn fold_case(word: &str) -> String {
    word.to_lowercase()
}

/// Immutable rooted tree of concepts with words at the leaves.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "SerializedTaxonomy", into = "SerializedTaxonomy")]
pub struct Taxonomy {
    nodes: Vec<Node>,
    word_index: HashMap<String, Vec<ConceptId>>,
    word_count: usize,
}

impl PartialEq for Taxonomy {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

/// On-disk form: the index is rebuilt on load so it never drifts from the nodes.
#[derive(Serialize, Deserialize)]
struct SerializedTaxonomy {
    nodes: Vec<Node>,
}

impl From<SerializedTaxonomy> for Taxonomy {
    fn from(s: SerializedTaxonomy) -> Self {
        Taxonomy::from_nodes(s.nodes)
    }
}

impl From<Taxonomy> for SerializedTaxonomy {
    fn from(t: Taxonomy) -> Self {
        SerializedTaxonomy { nodes: t.nodes }
    }
}

struct Pending {
    id: ConceptId,
    line: usize,
    kind: NodeKind,
}

impl Taxonomy {
    /// Parse a taxonomy file.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, TaxonomyError> {
        let mut nodes: Vec<Node> = Vec::new();
        // stack[d] is the most recent node at depth d
        let mut stack: Vec<Pending> = Vec::new();
        let mut next_flat = 0u32;

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| TaxonomyError::Io {
                line: line_no,
                source: IoErrorEq(e),
            })?;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let (depth, kind, label) = parse_line(line, line_no)?;

            if nodes.is_empty() {
                if depth != 0 || kind != NodeKind::Internal {
                    return Err(TaxonomyError::BadRoot { line: line_no });
                }
            } else if depth == 0 {
                return Err(TaxonomyError::MultipleRoots { line: line_no });
            }

            let prev_depth = stack.len() as u32;
            if depth > prev_depth {
                return Err(TaxonomyError::DepthJump {
                    line: line_no,
                    from: prev_depth.saturating_sub(1),
                    to: depth,
                });
            }
            stack.truncate(depth as usize);

            let id = ConceptId(nodes.len() as u32);
            let parent = match stack.last() {
                Some(p) if p.kind == NodeKind::Word => {
                    return Err(TaxonomyError::WordWithChildren {
                        line: line_no,
                        word_line: p.line,
                    })
                }
                Some(p) => Some(p.id),
                None => None,
            };
            if let Some(p) = parent {
                nodes[p.index()].children.push(id);
            }
            let flat_pos = match kind {
                NodeKind::Word => {
                    next_flat += 1;
                    Some(next_flat - 1)
                }
                NodeKind::Internal => None,
            };
            nodes.push(Node {
                id,
                label: label.to_string(),
                kind,
                parent,
                depth,
                children: Vec::new(),
                flat_pos,
            });
            stack.push(Pending {
                id,
                line: line_no,
                kind,
            });
        }

        if nodes.is_empty() {
            return Err(TaxonomyError::Empty);
        }
        Ok(Self::from_nodes(nodes))
    }

    pub fn parse_str(text: &str) -> Result<Self, TaxonomyError> {
        Self::parse(text.as_bytes())
    }

    fn from_nodes(nodes: Vec<Node>) -> Self {
        let mut word_index: HashMap<String, Vec<ConceptId>> = HashMap::new();
        let mut word_count = 0;
        for node in nodes.iter().filter(|n| n.is_word()) {
            word_count += 1;
            word_index
                .entry(fold_case(&node.label))
                .or_default()
                .push(node.id);
        }
        Taxonomy {
            nodes,
            word_index,
            word_count,
        }
    }

    /// Write the taxonomy back out in the file format `parse` reads.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for node in &self.nodes {
            writeln!(
                out,
                "{}\t{}\t{}",
                node.depth,
                node.kind.keyword(),
                node.label
            )?;
        }
        Ok(())
    }

    pub fn root(&self) -> ConceptId {
        ConceptId(0)
    }

    pub fn node(&self, id: ConceptId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn get(&self, id: ConceptId) -> Option<&Node> {
        self.nodes.get(id.index())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of word nodes.
    pub fn word_count(&self) -> usize {
        self.word_count
    }

    pub fn depth(&self, id: ConceptId) -> u32 {
        self.node(id).depth
    }

    pub fn parent(&self, id: ConceptId) -> Option<ConceptId> {
        self.node(id).parent
    }

    /// Word nodes for `word` (case-folded) in flat order; empty when unknown.
    pub fn senses(&self, word: &str) -> &[ConceptId] {
        self.word_index
            .get(&fold_case(word))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Distinct case-folded words, in no particular order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.word_index.keys().map(String::as_str)
    }

    /// `id` followed by its ancestors up to the root.
    pub fn ancestors(&self, id: ConceptId) -> impl Iterator<Item = ConceptId> + '_ {
        std::iter::successors(Some(id), move |c| self.parent(*c))
    }

    /// Deepest node that is an ancestor-or-self of both `a` and `b`.
    pub fn lowest_super_ordinate(&self, a: ConceptId, b: ConceptId) -> ConceptId {
        let (mut a, mut b) = (a, b);
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        while da > db {
            a = self.parent(a).expect("non-root node has a parent");
            da -= 1;
        }
        while db > da {
            b = self.parent(b).expect("non-root node has a parent");
            db -= 1;
        }
        while a != b {
            a = self
                .parent(a)
                .expect("distinct nodes at equal depth are below the root");
            b = self
                .parent(b)
                .expect("distinct nodes at equal depth are below the root");
        }
        a
    }

    /// Number of edges on the tree path between `a` and `b`.
    pub fn edge_distance(&self, a: ConceptId, b: ConceptId) -> u32 {
        let ls = self.lowest_super_ordinate(a, b);
        self.depth(a) + self.depth(b) - 2 * self.depth(ls)
    }

    /// Edges between the groups holding two word senses.
    ///
    /// Words in the same group are 0 apart; a word is 0 from itself. For two
    /// distinct leaves this is the tree distance minus the two word-to-group
    /// edges.
    pub fn group_distance(&self, a: ConceptId, b: ConceptId) -> u32 {
        if a == b {
            return 0;
        }
        let d = self.edge_distance(a, b);
        let leaf_edges = u32::from(self.node(a).is_word()) + u32::from(self.node(b).is_word());
        d.saturating_sub(leaf_edges)
    }

    fn flat_pos(&self, id: ConceptId) -> Result<u32, TaxonomyError> {
        self.node(id).flat_pos.ok_or(TaxonomyError::NotAWord { id })
    }

    /// Word entries strictly between `a` and `b` in the flat word order.
    pub fn intervening_count(&self, a: ConceptId, b: ConceptId) -> Result<u32, TaxonomyError> {
        let pa = self.flat_pos(a)?;
        let pb = self.flat_pos(b)?;
        Ok(pa.abs_diff(pb).saturating_sub(1))
    }

    /// Labels from the root down to `id`, joined with `/`.
    pub fn path(&self, id: ConceptId) -> String {
        let mut labels: Vec<&str> = self
            .ancestors(id)
            .map(|c| self.node(c).label.as_str())
            .collect();
        labels.reverse();
        labels.join("/")
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<(u32, NodeKind, &str), TaxonomyError> {
    let malformed = |reason: &str| TaxonomyError::Malformed {
        line: line_no,
        reason: reason.to_string(),
    };
    let mut fields = line.splitn(3, '\t');
    let depth = fields.next().unwrap_or_default();
    let kind = fields
        .next()
        .ok_or_else(|| malformed("expected `<depth>\\t<kind>\\t<label>`"))?;
    let label = fields.next().ok_or_else(|| malformed("missing label"))?;
    let depth: u32 = depth
        .parse()
        .map_err(|_| malformed(&format!("depth `{depth}` is not a nonnegative integer")))?;
    let kind = match kind {
        "node" => NodeKind::Internal,
        "word" => NodeKind::Word,
        other => return Err(malformed(&format!("unknown kind `{other}`"))),
    };
    if label.is_empty() {
        return Err(malformed("empty label"));
    }
    Ok((depth, kind, label))
}
