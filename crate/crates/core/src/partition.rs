use std::fmt;

/// An equivalence relation on `0..len`, stored as a canonical block labelling.
///
/// Blocks are numbered in order of their least element, so two partitions are
/// equal exactly when their label vectors are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    pub fn identity(len: usize) -> Self {
        Partition {
            labels: (0..len).collect(),
        }
    }

    pub fn total(len: usize) -> Self {
        Partition {
            labels: vec![0; len],
        }
    }

    /// Builds a partition from any labelling; elements with equal keys share a block.
    pub fn from_keys<K: PartialEq>(keys: &[K]) -> Self {
        let mut labels = Vec::with_capacity(keys.len());
        let mut reps: Vec<usize> = Vec::new();
        for (i, key) in keys.iter().enumerate() {
            match reps.iter().position(|&r| keys[r] == *key) {
                Some(b) => labels.push(b),
                None => {
                    labels.push(reps.len());
                    reps.push(i);
                }
            }
        }
        Partition { labels }
    }

    pub fn from_blocks(len: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut keys = vec![usize::MAX; len];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= len || keys[x] != usize::MAX {
                    return None;
                }
                keys[x] = b;
            }
        }
        if keys.contains(&usize::MAX) {
            return None;
        }
        Some(Self::from_keys(&keys))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.labels.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.block_count()];
        for (x, &b) in self.labels.iter().enumerate() {
            let o = other.labels[x];
            if image[b] == usize::MAX {
                image[b] = o;
            } else if image[b] != o {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&a, &b)| (a, b))
            .collect();
        Self::from_keys(&keys)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            for block in p.blocks() {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.into_partition()
    }

    /// Restriction to the listed elements, relabelled as `0..elements.len()`.
    pub fn restrict(&self, elements: &[usize]) -> Partition {
        let keys: Vec<usize> = elements.iter().map(|&x| self.labels[x]).collect();
        Self::from_keys(&keys)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "]")
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_keys(&roots)
    }
}
