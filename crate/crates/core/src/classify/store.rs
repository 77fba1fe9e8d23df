use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::diagram::{Diagram, LefschetzPair, Signature, MAX_PACKED_WIRES};
use crate::error::{Error, Result};
use crate::trace::CanonicalDiagram;

const MAGIC: &[u8; 8] = b"WDCLASS\0";
const VERSION: u32 = 1;

/// Canonical class representatives of one signature, packed one byte per
/// pair and sorted, so lookups are binary searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStore {
    ell: u8,
    signature: Signature,
    width: usize,
    codes: Vec<u8>,
}

impl ClassStore {
    /// `codes` must hold whole records; they are sorted and deduplicated.
    pub fn from_codes(ell: u8, signature: Signature, codes: Vec<u8>) -> Result<Self> {
        if ell > MAX_PACKED_WIRES {
            return Err(Error::WireCount(u32::from(ell)));
        }
        let width = signature.points();
        if width == 0 {
            // the empty diagram is the only member
            return Ok(ClassStore {
                ell,
                signature,
                width,
                codes: Vec::new(),
            });
        }
        if !codes.len().is_multiple_of(width) {
            return Err(Error::Cache(format!("{} bytes is not a multiple of {width}", codes.len())));
        }
        let mut records: Vec<&[u8]> = codes.chunks_exact(width).collect();
        let sorted = records.windows(2).all(|w| w[0] < w[1]);
        let codes = if sorted {
            codes
        } else {
            records.sort_unstable();
            records.dedup();
            records.concat()
        };
        Ok(ClassStore {
            ell,
            signature,
            width,
            codes,
        })
    }

    pub fn from_diagrams<'a>(
        ell: u8,
        signature: Signature,
        diagrams: impl IntoIterator<Item = &'a CanonicalDiagram>,
    ) -> Result<Self> {
        let mut codes = Vec::new();
        for d in diagrams {
            codes.extend(d.pack()?);
        }
        Self::from_codes(ell, signature, codes)
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Points per diagram.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        if self.width == 0 {
            1
        } else {
            self.codes.len() / self.width
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn byte_size(&self) -> usize {
        self.codes.len()
    }

    fn record(&self, i: usize) -> &[u8] {
        &self.codes[i * self.width..(i + 1) * self.width]
    }

    pub fn pairs_into(&self, i: usize, out: &mut Vec<LefschetzPair>) {
        out.clear();
        out.extend(self.record(i).iter().map(|&b| LefschetzPair::unpack(b)));
    }

    pub fn get(&self, i: usize) -> CanonicalDiagram {
        let mut pairs = Vec::with_capacity(self.width);
        self.pairs_into(i, &mut pairs);
        CanonicalDiagram::from_canonical_unchecked(Diagram::from_parts_unchecked(self.ell, pairs))
    }

    pub fn iter(&self) -> impl Iterator<Item = CanonicalDiagram> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// Index of a canonical word.
    pub fn index_of(&self, pairs: &[LefschetzPair]) -> Option<usize> {
        if pairs.len() != self.width {
            return None;
        }
        if self.width == 0 {
            return Some(0);
        }
        let mut key = [0u8; 64];
        for (k, p) in pairs.iter().enumerate() {
            key[k] = p.pack();
        }
        let key = &key[..self.width];
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.record(mid).cmp(key) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Header (magic, version, `ℓ`, signature string, count, record width)
    /// followed by the packed records. Integers are little-endian.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&[self.ell])?;
        let sig = self.signature.to_string();
        w.write_all(&(sig.len() as u16).to_le_bytes())?;
        w.write_all(sig.as_bytes())?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        w.write_all(&(self.width as u16).to_le_bytes())?;
        w.write_all(&self.codes)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Cache(format!("{}: bad magic", path.display())));
        }
        let version = u32::from_le_bytes(read_array(&mut r)?);
        if version != VERSION {
            return Err(Error::Cache(format!("{}: unsupported version {version}", path.display())));
        }
        let [ell] = read_array::<1>(&mut r)?;
        let sig_len = u16::from_le_bytes(read_array(&mut r)?);
        let mut sig = vec![0u8; usize::from(sig_len)];
        r.read_exact(&mut sig)?;
        let sig = String::from_utf8(sig).map_err(|_| Error::Cache("signature is not UTF-8".into()))?;
        let signature: Signature = if sig.is_empty() { Signature::new() } else { sig.parse()? };
        let count = u64::from_le_bytes(read_array(&mut r)?) as usize;
        let width = usize::from(u16::from_le_bytes(read_array(&mut r)?));
        if width != signature.points() {
            return Err(Error::Cache(format!("record width {width} does not match {signature}")));
        }
        let mut codes = vec![0u8; if width == 0 { 0 } else { count * width }];
        r.read_exact(&mut codes)?;
        let store = Self::from_codes(ell, signature, codes)?;
        if store.len() != count {
            return Err(Error::Cache("duplicate or unsorted records".into()));
        }
        Ok(store)
    }
}

fn read_array<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}
