//! Semantic-lexicon parsing and synonym-class construction.
//!
//! Lexicon files follow the common one-line-per-headword layout:
//! `headword synonym_1 synonym_2 ...`, whitespace-separated, with multiword
//! entries joined by underscores. Lines contribute a star of undirected
//! edges from the headword to each synonym; edges touching a token outside
//! the embedding vocabulary are dropped and counted.
//!
//! Synonym classes are the connected components of the resulting graph,
//! padded with one singleton class per uncovered vocabulary token so the
//! classes partition the whole vocabulary. Component ids are assigned in
//! first-seen vocabulary order, which makes the labeling deterministic.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use crate::embedding::Vocabulary;
use crate::error::{Error, Result};

/// Undirected synonym graph without self-loops.
#[derive(Debug, Clone, Default)]
pub struct SynonymGraph {
    adjacency: HashMap<String, BTreeSet<String>>,
    n_edges: usize,
}

impl SynonymGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an undirected edge; self-loops and repeats are ignored.
    pub fn add_edge(&mut self, a: &str, b: &str) {
        if a == b {
            return;
        }
        let inserted = self
            .adjacency
            .entry(a.to_string())
            .or_default()
            .insert(b.to_string());
        self.adjacency
            .entry(b.to_string())
            .or_default()
            .insert(a.to_string());
        if inserted {
            self.n_edges += 1;
        }
    }

    /// Neighbor set of a token, in lexicographic order.
    pub fn neighbors(&self, token: &str) -> Option<&BTreeSet<String>> {
        self.adjacency.get(token)
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    /// Number of tokens that touch at least one edge.
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.adjacency.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LexiconOptions {
    /// Lowercase lexicon tokens before vocabulary matching.
    pub lowercase: bool,
}

/// A parsed lexicon restricted to the embedding vocabulary.
#[derive(Debug)]
pub struct LexiconLoad {
    pub graph: SynonymGraph,
    /// Edges whose headword or synonym was out of vocabulary.
    pub edges_dropped_oov: usize,
}

/// Parses a lexicon stream against a vocabulary.
pub fn load_lexicon<R: BufRead>(
    mut reader: R,
    vocab: &Vocabulary,
    options: &LexiconOptions,
) -> Result<LexiconLoad> {
    let mut graph = SynonymGraph::new();
    let mut dropped = 0usize;
    let mut any_line = false;

    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        any_line = true;
        let mut fields = line.split_ascii_whitespace();
        let Some(head_raw) = fields.next() else { continue };
        let head = normalize(head_raw, options);
        let head_in_vocab = vocab.position(&head).is_some();
        for syn_raw in fields {
            let syn = normalize(syn_raw, options);
            if syn == head {
                continue;
            }
            if head_in_vocab && vocab.position(&syn).is_some() {
                graph.add_edge(&head, &syn);
            } else {
                dropped += 1;
            }
        }
    }
    if !any_line {
        return Err(Error::EmptyInput);
    }
    Ok(LexiconLoad { graph, edges_dropped_oov: dropped })
}

fn normalize(token: &str, options: &LexiconOptions) -> String {
    if options.lowercase {
        token.to_lowercase()
    } else {
        token.to_string()
    }
}

/// Partition of the vocabulary into synonym classes (dense ids 0..n_classes).
#[derive(Debug, Clone)]
pub struct SynonymClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl SynonymClasses {
    pub fn n_classes(&self) -> usize {
        self.members.len()
    }

    /// Number of vocabulary tokens covered (always the full vocabulary).
    pub fn vocab_len(&self) -> usize {
        self.class_of.len()
    }

    /// Class id for a vocabulary row.
    pub fn class_of_row(&self, row: usize) -> usize {
        self.class_of[row]
    }

    /// Class labels aligned with vocabulary rows.
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// Member rows of a class, ascending.
    pub fn members_of(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    /// Classes with at least two members.
    pub fn n_nonsingleton_classes(&self) -> usize {
        self.members.iter().filter(|m| m.len() > 1).count()
    }

    /// Number of words that share a class with another word. This is the
    /// count of words the enrichment can actually move together.
    pub fn n_words_in_nonsingleton_classes(&self) -> usize {
        self.members.iter().map(|m| if m.len() > 1 { m.len() } else { 0 }).sum()
    }

    /// All members of `token`'s class (including the token itself).
    pub fn class_members<'v>(&self, vocab: &'v Vocabulary, token: &str) -> Result<Vec<&'v str>> {
        let row = vocab
            .position(token)
            .ok_or_else(|| Error::UnknownToken(token.to_string()))?;
        Ok(self.members[self.class_of[row]]
            .iter()
            .map(|&r| vocab.token(r))
            .collect())
    }
}

/// Union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Builds synonym classes as the connected components of `graph`, plus one
/// singleton class per uncovered vocabulary token.
pub fn build_classes(graph: &SynonymGraph, vocab: &Vocabulary) -> Result<SynonymClasses> {
    let mut dsu = UnionFind::new(vocab.len());
    for (token, neighbors) in &graph.adjacency {
        let row = vocab
            .position(token)
            .ok_or_else(|| Error::UnknownToken(token.clone()))?;
        for n in neighbors {
            let n_row = vocab
                .position(n)
                .ok_or_else(|| Error::UnknownToken(n.clone()))?;
            dsu.union(row, n_row);
        }
    }

    let n = vocab.len();
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut root_to_class: HashMap<usize, usize> = HashMap::new();
    for (row, slot) in class_of.iter_mut().enumerate() {
        let root = dsu.find(row);
        let class = *root_to_class.entry(root).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        *slot = class;
        members[class].push(row);
    }
    Ok(SynonymClasses { class_of, members })
}
