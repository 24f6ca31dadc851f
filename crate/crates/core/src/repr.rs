//! Succinct (SB) and compact (CB) biclique representations.
//!
//! SB is the partition itself with a binary encoding. CB adds per-vertex
//! incidence lists and per-biclique live counts so degrees of the graph
//! induced on the still-live vertices can be read in `O(w)`.

use std::io::{Read, Write};

use crate::combinatorics::ceil_lg;
use crate::error::ReprError;
use crate::partition::BicliquePartition;

const SB_MAGIC: [u8; 4] = *b"SBP1";
const CB_MAGIC: [u8; 4] = *b"CBP1";

/// Bits per stored id, `⌈lg n⌉` (at least 1 so a single vertex is countable).
pub fn id_bits(n: usize) -> u64 {
    u64::from(ceil_lg(n as u64).max(1))
}

/// Succinct representation: `n` plus the list of bicliques.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SbRepr {
    partition: BicliquePartition,
}

impl SbRepr {
    pub fn new(partition: BicliquePartition) -> Self {
        Self { partition }
    }

    pub fn n(&self) -> usize {
        self.partition.host_n()
    }

    pub fn partition(&self) -> &BicliquePartition {
        &self.partition
    }

    pub fn into_partition(self) -> BicliquePartition {
        self.partition
    }

    /// Stored id slots, equal to the partition weight.
    pub fn id_slots(&self) -> u64 {
        self.partition.weight()
    }

    /// Analytic succinct size, `w·⌈lg n⌉` bits.
    pub fn bits(&self) -> u64 {
        self.id_slots() * id_bits(self.n())
    }

    /// Every edge `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.partition.covered_pairs() as usize);
        for b in self.partition.iter() {
            for &u in b.left {
                for &v in b.right {
                    out.push(if u < v { (u, v) } else { (v, u) });
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `|E(G[S])|` for a vertex set given as a membership mask.
    pub fn edges_within(&self, member: &[bool]) -> u64 {
        self.partition
            .iter()
            .map(|b| {
                let l = b.left.iter().filter(|&&v| member[v as usize]).count() as u64;
                let r = b.right.iter().filter(|&&v| member[v as usize]).count() as u64;
                l * r
            })
            .sum()
    }

    pub fn encode<W: Write>(&self, mut w: W) -> Result<(), ReprError> {
        w.write_all(&SB_MAGIC)?;
        write_header(&mut w, self.n(), self.partition.len())?;
        for b in self.partition.iter() {
            write_u32(&mut w, b.left.len() as u32)?;
            write_u32(&mut w, b.right.len() as u32)?;
            write_ids(&mut w, b.left)?;
            write_ids(&mut w, b.right)?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 8 * self.partition.len() + 4 * self.id_slots() as usize);
        self.encode(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Reads one SB record and requires the input to end right after it.
    pub fn decode<R: Read>(mut r: R) -> Result<Self, ReprError> {
        expect_magic(&mut r, SB_MAGIC)?;
        let (n, k) = read_header(&mut r)?;
        let mut partition = BicliquePartition::new(n);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for index in 0..k {
            let l = read_u32(&mut r)? as usize;
            let rl = read_u32(&mut r)? as usize;
            read_ids(&mut r, l, n, &mut left)?;
            read_ids(&mut r, rl, n, &mut right)?;
            partition.push(&left, &right);
            if !partition.get(index).is_well_formed() {
                return Err(ReprError::Malformed(index));
            }
        }
        expect_eof(&mut r)?;
        Ok(Self { partition })
    }
}

/// Compact representation: SB plus incidences, live counts and removal marks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CbRepr {
    sb: SbRepr,
    // CSR over vertices; entry = biclique index << 1 | side (1 = right).
    offsets: Vec<u32>,
    incidence: Vec<u32>,
    live_left: Vec<u32>,
    live_right: Vec<u32>,
    removed: Vec<bool>,
    live_count: usize,
}

impl CbRepr {
    pub fn new(partition: BicliquePartition) -> Self {
        Self::from_sb(SbRepr::new(partition))
    }

    pub fn from_sb(sb: SbRepr) -> Self {
        let n = sb.n();
        let p = &sb.partition;
        let mut offsets = vec![0u32; n + 1];
        for &v in p.ids() {
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets[..n].to_vec();
        let mut incidence = vec![0u32; p.ids().len()];
        let mut live_left = Vec::with_capacity(p.len());
        let mut live_right = Vec::with_capacity(p.len());
        for (i, b) in p.iter().enumerate() {
            let tag = (i as u32) << 1;
            for (side, ids) in [(0, b.left), (1, b.right)] {
                for &v in ids {
                    incidence[fill[v as usize] as usize] = tag | side;
                    fill[v as usize] += 1;
                }
            }
            live_left.push(b.left.len() as u32);
            live_right.push(b.right.len() as u32);
        }
        Self { sb, offsets, incidence, live_left, live_right, removed: vec![false; n], live_count: n }
    }

    pub fn n(&self) -> usize {
        self.sb.n()
    }

    pub fn sb(&self) -> &SbRepr {
        &self.sb
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn is_removed(&self, v: u32) -> bool {
        self.removed[v as usize]
    }

    pub fn has_removals(&self) -> bool {
        self.live_count != self.n()
    }

    /// Live vertices in ascending order.
    pub fn live_vertices(&self) -> Vec<u32> {
        (0..self.n() as u32).filter(|&v| !self.removed[v as usize]).collect()
    }

    /// `(biclique index, on right side)` for each biclique containing `v`,
    /// ordered by biclique index.
    pub fn incidences(&self, v: u32) -> impl ExactSizeIterator<Item = (usize, bool)> + '_ {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        self.incidence[lo..hi].iter().map(|&e| ((e >> 1) as usize, e & 1 == 1))
    }

    /// Number of live neighbours of `v`.
    pub fn degree(&self, v: u32) -> Result<u64, ReprError> {
        self.check(v)?;
        Ok(self
            .incidences(v)
            .map(|(b, right)| u64::from(if right { self.live_left[b] } else { self.live_right[b] }))
            .sum())
    }

    /// Live degree of every vertex in one pass over the bicliques. Entries
    /// of removed vertices are meaningless.
    pub fn degrees_all(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n()];
        for (i, b) in self.sb.partition.iter().enumerate() {
            let (ll, lr) = (u64::from(self.live_left[i]), u64::from(self.live_right[i]));
            if ll == 0 || lr == 0 {
                continue;
            }
            for &v in b.left {
                deg[v as usize] += lr;
            }
            for &v in b.right {
                deg[v as usize] += ll;
            }
        }
        deg
    }

    pub fn lazy_remove(&mut self, v: u32) -> Result<(), ReprError> {
        self.check(v)?;
        if self.removed[v as usize] {
            return Err(ReprError::AlreadyRemoved(v));
        }
        self.removed[v as usize] = true;
        self.live_count -= 1;
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        for &e in &self.incidence[lo..hi] {
            let b = (e >> 1) as usize;
            if e & 1 == 1 {
                self.live_right[b] -= 1;
            } else {
                self.live_left[b] -= 1;
            }
        }
        Ok(())
    }

    /// Independent deep copy, `O(w + n)`.
    pub fn copy(&self) -> Self {
        self.clone()
    }

    /// Extra bits over SB: `Σ loads·(2⌈lg n⌉ + 1)`, one pointer back, one
    /// pointer forward and a side bit per incidence.
    pub fn extra_bits(&self) -> u64 {
        self.incidence.len() as u64 * (2 * id_bits(self.n()) + 1)
    }

    pub fn bits(&self) -> u64 {
        self.sb.bits() + self.extra_bits()
    }

    /// `CBP1`, n, k, then per biclique L-len, R-len, live-L, live-R and ids,
    /// then the number of removed vertices and their ids. Incidences are
    /// derived, so they are not stored.
    pub fn encode<W: Write>(&self, mut w: W) -> Result<(), ReprError> {
        w.write_all(&CB_MAGIC)?;
        write_header(&mut w, self.n(), self.sb.partition.len())?;
        for (i, b) in self.sb.partition.iter().enumerate() {
            write_u32(&mut w, b.left.len() as u32)?;
            write_u32(&mut w, b.right.len() as u32)?;
            write_u32(&mut w, self.live_left[i])?;
            write_u32(&mut w, self.live_right[i])?;
            write_ids(&mut w, b.left)?;
            write_ids(&mut w, b.right)?;
        }
        let gone: Vec<u32> = (0..self.n() as u32).filter(|&v| self.removed[v as usize]).collect();
        write_u32(&mut w, gone.len() as u32)?;
        write_ids(&mut w, &gone)?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.encode(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Reads a CB record. Live counts are recomputed from the removal list
    /// and must agree with the stored ones.
    pub fn decode<R: Read>(mut r: R) -> Result<Self, ReprError> {
        expect_magic(&mut r, CB_MAGIC)?;
        let (n, k) = read_header(&mut r)?;
        let mut partition = BicliquePartition::new(n);
        let mut stored = Vec::with_capacity(k);
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for index in 0..k {
            let l = read_u32(&mut r)? as usize;
            let rl = read_u32(&mut r)? as usize;
            stored.push((read_u32(&mut r)?, read_u32(&mut r)?));
            read_ids(&mut r, l, n, &mut left)?;
            read_ids(&mut r, rl, n, &mut right)?;
            partition.push(&left, &right);
            if !partition.get(index).is_well_formed() {
                return Err(ReprError::Malformed(index));
            }
        }
        let gone = read_u32(&mut r)? as usize;
        let mut ids = Vec::new();
        read_ids(&mut r, gone, n, &mut ids)?;
        expect_eof(&mut r)?;
        let mut cb = Self::new(partition);
        for v in ids {
            cb.lazy_remove(v)?;
        }
        for (i, &(l, rl)) in stored.iter().enumerate() {
            if (l, rl) != (cb.live_left[i], cb.live_right[i]) {
                return Err(ReprError::Malformed(i));
            }
        }
        Ok(cb)
    }

    fn check(&self, v: u32) -> Result<(), ReprError> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(ReprError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

fn write_u32<W: Write>(w: &mut W, x: u32) -> std::io::Result<()> {
    w.write_all(&x.to_le_bytes())
}

fn write_header<W: Write>(w: &mut W, n: usize, k: usize) -> Result<(), ReprError> {
    let n = u32::try_from(n).map_err(|_| ReprError::VertexOutOfRange { vertex: u32::MAX, n })?;
    write_u32(w, n)?;
    write_u32(w, k as u32)?;
    Ok(())
}

fn write_ids<W: Write>(w: &mut W, ids: &[u32]) -> std::io::Result<()> {
    let mut buf = Vec::with_capacity(ids.len() * 4);
    for &v in ids {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, ReprError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(eof)?;
    Ok(u32::from_le_bytes(b))
}

fn read_header<R: Read>(r: &mut R) -> Result<(usize, usize), ReprError> {
    Ok((read_u32(r)? as usize, read_u32(r)? as usize))
}

fn read_ids<R: Read>(r: &mut R, len: usize, n: usize, out: &mut Vec<u32>) -> Result<(), ReprError> {
    out.clear();
    // Grow in bounded steps so a corrupt length cannot force a huge allocation.
    let mut buf = [0u8; 4096];
    let mut left = len * 4;
    while left > 0 {
        let take = left.min(buf.len());
        r.read_exact(&mut buf[..take]).map_err(eof)?;
        for c in buf[..take].chunks_exact(4) {
            let v = u32::from_le_bytes([c[0], c[1], c[2], c[3]]);
            if v as usize >= n {
                return Err(ReprError::VertexOutOfRange { vertex: v, n });
            }
            out.push(v);
        }
        left -= take;
    }
    Ok(())
}

fn expect_magic<R: Read>(r: &mut R, magic: [u8; 4]) -> Result<(), ReprError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(eof)?;
    if b != magic {
        return Err(ReprError::BadMagic(b));
    }
    Ok(())
}

fn expect_eof<R: Read>(r: &mut R) -> Result<(), ReprError> {
    let mut b = [0u8; 1];
    match r.read(&mut b)? {
        0 => Ok(()),
        _ => Err(ReprError::Trailing),
    }
}

fn eof(e: std::io::Error) -> ReprError {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        ReprError::Truncated
    } else {
        ReprError::Io(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ep::{partition_ep, PartitionParams};
    use crate::graph::gen_gnp;
    use crate::rng::SeedStream;
    use rand::Rng;

    fn k23() -> BicliquePartition {
        let mut p = BicliquePartition::new(5);
        p.push(&[0, 1], &[2, 3, 4]);
        p
    }

    #[test]
    fn empty_partition_is_header_only() {
        let sb = SbRepr::new(BicliquePartition::new(7));
        let bytes = sb.to_bytes();
        assert_eq!(bytes.len(), 12);
        assert_eq!(&bytes[..4], b"SBP1");
        assert_eq!(sb.bits(), 0);
        assert_eq!(SbRepr::decode(&bytes[..]).unwrap(), sb);
    }

    #[test]
    fn id_slots_equal_weight() {
        let sb = SbRepr::new(k23());
        assert_eq!(sb.id_slots(), 5);
        assert_eq!(sb.bits(), 5 * 3);
        let bytes = sb.to_bytes();
        assert_eq!(bytes.len(), 12 + 8 + 20);
        assert_eq!(&bytes[4..12], &[5, 0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn decode_rejects_bad_input() {
        let bytes = SbRepr::new(k23()).to_bytes();
        assert!(matches!(SbRepr::decode(&bytes[..bytes.len() - 1]), Err(ReprError::Truncated)));
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(matches!(SbRepr::decode(&extra[..]), Err(ReprError::Trailing)));
        let mut magic = bytes.clone();
        magic[0] = b'X';
        assert!(matches!(SbRepr::decode(&magic[..]), Err(ReprError::BadMagic(_))));
        let mut range = bytes.clone();
        let last = range.len() - 4;
        range[last] = 9;
        assert!(matches!(SbRepr::decode(&range[..]), Err(ReprError::VertexOutOfRange { vertex: 9, .. })));
        let mut unsorted = bytes;
        unsorted[20] = 1;
        unsorted[24] = 0;
        assert!(matches!(SbRepr::decode(&unsorted[..]), Err(ReprError::Malformed(0))));
    }

    #[test]
    fn k23_degrees_and_removal() {
        let mut cb = CbRepr::new(k23());
        assert_eq!(cb.degree(0).unwrap(), 3);
        assert_eq!(cb.degree(4).unwrap(), 2);
        cb.lazy_remove(2).unwrap();
        assert_eq!(cb.degree(0).unwrap(), 2);
        assert!(matches!(cb.lazy_remove(2), Err(ReprError::AlreadyRemoved(2))));
        assert!(matches!(cb.degree(5), Err(ReprError::VertexOutOfRange { .. })));
        cb.lazy_remove(0).unwrap();
        cb.lazy_remove(1).unwrap();
        assert_eq!(cb.degrees_all()[3..], [0, 0]);
    }

    #[test]
    fn single_edge_removal() {
        let mut p = BicliquePartition::new(2);
        p.push(&[0], &[1]);
        let mut cb = CbRepr::new(p);
        cb.lazy_remove(0).unwrap();
        assert_eq!(cb.degree(1).unwrap(), 0);
        assert_eq!(cb.live_count(), 1);
    }

    #[test]
    fn copy_is_independent() {
        let mut cb = CbRepr::new(k23());
        let before = cb.to_bytes();
        let snap = cb.copy();
        assert_eq!(snap.to_bytes(), before);
        cb.lazy_remove(3).unwrap();
        assert_eq!(snap.degree(0).unwrap(), 3);
        assert_eq!(snap.to_bytes(), before);
        assert_ne!(cb.to_bytes(), before);
        let empty = CbRepr::new(BicliquePartition::new(0));
        assert_eq!(empty.copy(), empty);
    }

    #[test]
    fn cb_round_trip_with_removals() {
        let mut cb = CbRepr::new(k23());
        cb.lazy_remove(1).unwrap();
        cb.lazy_remove(4).unwrap();
        let back = CbRepr::decode(&cb.to_bytes()[..]).unwrap();
        assert_eq!(back, cb);
    }

    #[test]
    fn accounting_identities() {
        let mut rng = SeedStream::new(5).rng();
        for _ in 0..20 {
            let n = rng.random_range(2..120);
            let g = gen_gnp(n, 0.3, rng.random()).unwrap();
            let p = partition_ep(&g, &PartitionParams::default());
            let loads: u64 = p.loads().iter().map(|&l| u64::from(l)).sum();
            let cb = CbRepr::new(p);
            let lg = id_bits(n);
            assert_eq!(cb.sb().bits(), cb.sb().id_slots() * lg);
            assert_eq!(cb.extra_bits(), loads * (2 * lg + 1));
            let total: usize = (0..n as u32).map(|v| cb.incidences(v).len()).sum();
            assert_eq!(total as u64, cb.sb().id_slots());
        }
    }

    #[test]
    fn incidences_invert_membership() {
        let g = gen_gnp(60, 0.4, 3).unwrap();
        let cb = CbRepr::new(partition_ep(&g, &PartitionParams::default()));
        for v in 0..60u32 {
            let inc: Vec<_> = cb.incidences(v).collect();
            assert!(inc.windows(2).all(|w| w[0].0 < w[1].0));
            for (b, right) in inc {
                let m = cb.sb().partition().get(b);
                assert!(if right { m.right.contains(&v) } else { m.left.contains(&v) });
            }
        }
    }
}
