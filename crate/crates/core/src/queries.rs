//! Independent-set and cut queries answered directly on an SB representation.

use crate::error::ReprError;
use crate::repr::SbRepr;

const IN_S: u8 = 1;
const IN_T: u8 = 2;

/// Reusable membership scratch. Stamps make clearing free between queries,
/// so each query costs `O(w + |S| + |T|)` after the first allocation.
#[derive(Clone, Debug, Default)]
pub struct QueryScratch {
    stamp: Vec<u32>,
    side: Vec<u8>,
    epoch: u32,
}

impl QueryScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn begin(&mut self, n: usize) {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.side.resize(n, 0);
        }
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    fn mark(&mut self, set: &[u32], n: usize, bit: u8) -> Result<(), ReprError> {
        for &v in set {
            let i = v as usize;
            if i >= n {
                return Err(ReprError::VertexOutOfRange { vertex: v, n });
            }
            if self.stamp[i] != self.epoch {
                self.stamp[i] = self.epoch;
                self.side[i] = bit;
            } else if self.side[i] != bit {
                return Err(ReprError::Overlap(v));
            }
        }
        Ok(())
    }

    #[inline]
    fn side_of(&self, v: u32) -> u8 {
        if self.stamp[v as usize] == self.epoch { self.side[v as usize] } else { 0 }
    }

    /// True iff no edge has both endpoints in `s`. Duplicates in `s` are fine.
    pub fn is_independent(&mut self, sb: &SbRepr, s: &[u32]) -> Result<bool, ReprError> {
        let n = sb.n();
        self.begin(n);
        self.mark(s, n, IN_S)?;
        if s.len() < 2 {
            return Ok(true);
        }
        Ok(!sb.partition().iter().any(|b| {
            b.left.iter().any(|&v| self.side_of(v) == IN_S) && b.right.iter().any(|&v| self.side_of(v) == IN_S)
        }))
    }

    /// Number of edges with one endpoint in `s` and the other in `t`.
    pub fn cut(&mut self, sb: &SbRepr, s: &[u32], t: &[u32]) -> Result<u64, ReprError> {
        let n = sb.n();
        self.begin(n);
        self.mark(s, n, IN_S)?;
        self.mark(t, n, IN_T)?;
        if s.is_empty() || t.is_empty() {
            return Ok(0);
        }
        let mut total = 0u64;
        for b in sb.partition().iter() {
            let count = |ids: &[u32]| {
                let mut c = [0u64; 3];
                for &v in ids {
                    c[self.side_of(v) as usize] += 1;
                }
                c
            };
            let l = count(b.left);
            let r = count(b.right);
            total += l[IN_S as usize] * r[IN_T as usize] + r[IN_S as usize] * l[IN_T as usize];
        }
        Ok(total)
    }
}

/// One-shot independent-set query with a fresh scratch.
pub fn is_independent(sb: &SbRepr, s: &[u32]) -> Result<bool, ReprError> {
    QueryScratch::new().is_independent(sb, s)
}

/// One-shot cut query with a fresh scratch.
pub fn cut(sb: &SbRepr, s: &[u32], t: &[u32]) -> Result<u64, ReprError> {
    QueryScratch::new().cut(sb, s, t)
}
