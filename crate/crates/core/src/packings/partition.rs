use std::fmt;

use serde::{Deserialize, Serialize};

use super::PackingError;
use crate::graph::Graph;

/// Disjoint nonempty blocks covering `0..n`, each sorted, ordered by least
/// element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes blocks without checking that they cover anything.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Checks that `blocks` partition `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PackingError> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(PackingError::NotAPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(PackingError::NotAPartition(format!("vertex {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(PackingError::NotAPartition(format!("vertex {v} in two blocks")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(PackingError::NotAPartition(format!("vertex {v} uncovered")));
        }
        Ok(Partition::from_blocks(blocks))
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_blocks((0..n).map(|v| vec![v]).collect())
    }

    pub fn whole(n: usize) -> Self {
        Partition::from_blocks(vec![(0..n).collect()])
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.vertex_count()];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                of[v] = i;
            }
        }
        of
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        let of = other.block_of();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&v| of[v] == of[b[0]]))
    }

    /// Parses `a,b|c,d` against the labels of `g`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, PackingError> {
        let mut blocks = Vec::new();
        for part in text.trim().split('|') {
            let mut block = Vec::new();
            for label in part.split(',') {
                let label = label.trim();
                let v = g
                    .vertex(label)
                    .ok_or_else(|| PackingError::Parse(format!("unknown vertex `{label}`")))?;
                block.push(v);
            }
            blocks.push(block);
        }
        Partition::new(g.vertex_count(), blocks)
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        Labeled { partition: self, graph: g }
    }
}

struct Labeled<'a> {
    partition: &'a Partition,
    graph: &'a Graph,
}

impl fmt::Display for Labeled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.partition.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, &v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                f.write_str(self.graph.label(v))?;
            }
        }
        Ok(())
    }
}
