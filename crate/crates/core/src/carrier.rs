//! Carrier elements, dense operation tables and argument-tuple sweeps.
//!
//! Elements of a carrier of size `k` are the integers `0..k`. An operation of
//! arity `r` is stored as a dense table of `k^r` entries; the entry for
//! `(a_1, ..., a_r)` lives at `a_1·k^(r-1) + ... + a_r`, so the first
//! argument is the most significant digit.

use crate::error::{Error, Result};

pub type Element = usize;

/// Largest supported carrier.
pub const MAX_CARRIER: usize = 64;
/// Largest supported table, in entries.
pub const MAX_TABLE_ENTRIES: usize = 1 << 26;

/// Mixed-radix index of an argument tuple.
pub fn encode_args(args: &[Element], k: usize) -> Result<usize> {
    args.iter().try_fold(0usize, |acc, &a| {
        if a >= k {
            Err(Error::ArgOutOfRange { value: a, k })
        } else {
            Ok(acc * k + a)
        }
    })
}

#[inline]
fn encode_unchecked(args: &[Element], k: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * k + a)
}

/// Inverse of [`encode_args`] for a tuple of length `r`.
pub fn decode_index(mut index: usize, k: usize, r: usize) -> Vec<Element> {
    let mut out = vec![0; r];
    for slot in out.iter_mut().rev() {
        *slot = index % k;
        index /= k;
    }
    out
}

/// Number of `r`-tuples over a carrier of size `k`, or `None` past the table cap.
pub fn tuple_count(k: usize, r: usize) -> Option<usize> {
    let r = u32::try_from(r).ok()?;
    k.checked_pow(r).filter(|&c| c <= MAX_TABLE_ENTRIES)
}

/// Odometer over all `r`-tuples of `0..k` in ascending mixed-radix order.
///
/// ```
/// use snr_core::carrier::Tuples;
/// let mut t = Tuples::new(2, 2);
/// let mut seen = vec![t.current().to_vec()];
/// while t.advance() {
///     seen.push(t.current().to_vec());
/// }
/// assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
/// ```
#[derive(Debug, Clone)]
pub struct Tuples {
    k: usize,
    digits: Vec<Element>,
}

impl Tuples {
    pub fn new(k: usize, r: usize) -> Self {
        assert!(k >= 1, "empty carrier");
        Tuples { k, digits: vec![0; r] }
    }

    pub fn current(&self) -> &[Element] {
        &self.digits
    }

    /// Step to the next tuple; returns `false` once the sweep wraps around.
    pub fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.k {
                return true;
            }
            *d = 0;
        }
        false
    }

    /// Visit every tuple until `visit` returns `Some`.
    pub fn find_map<T>(k: usize, r: usize, mut visit: impl FnMut(&[Element]) -> Option<T>) -> Option<T> {
        let mut t = Tuples::new(k, r);
        loop {
            if let Some(found) = visit(t.current()) {
                return Some(found);
            }
            if !t.advance() {
                return None;
            }
        }
    }
}

/// One operation of fixed arity on the carrier `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    arity: usize,
    k: usize,
    table: Vec<u8>,
}

fn check_caps(arity: usize, k: usize) -> Result<usize> {
    if arity < 2 {
        return Err(Error::ArityTooSmall(arity));
    }
    if k == 0 || k > MAX_CARRIER {
        return Err(Error::SizeCap(format!("carrier size {k} not in 1..={MAX_CARRIER}")));
    }
    tuple_count(k, arity).ok_or_else(|| {
        Error::SizeCap(format!("{k}^{arity} table entries exceed {MAX_TABLE_ENTRIES}"))
    })
}

impl OpTable {
    pub fn new(arity: usize, k: usize, entries: &[Element]) -> Result<Self> {
        let len = check_caps(arity, k)?;
        if entries.len() != len {
            return Err(Error::TableLength { expected: len, found: entries.len() });
        }
        let table = entries
            .iter()
            .map(|&e| if e < k { Ok(e as u8) } else { Err(Error::ArgOutOfRange { value: e, k }) })
            .collect::<Result<Vec<u8>>>()?;
        Ok(OpTable { arity, k, table })
    }

    /// Tabulate `op` over every argument tuple.
    pub fn from_fn(arity: usize, k: usize, mut op: impl FnMut(&[Element]) -> Element) -> Result<Self> {
        let len = check_caps(arity, k)?;
        let mut table = Vec::with_capacity(len);
        let mut t = Tuples::new(k, arity);
        loop {
            let v = op(t.current());
            if v >= k {
                return Err(Error::ArgOutOfRange { value: v, k });
            }
            table.push(v as u8);
            if !t.advance() {
                break;
            }
        }
        Ok(OpTable { arity, k, table })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier_size(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Entry at a raw table index.
    #[inline]
    pub fn at(&self, index: usize) -> Element {
        self.table[index] as Element
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        self.table.iter().map(|&e| e as Element)
    }

    /// Checked application.
    pub fn eval(&self, args: &[Element]) -> Result<Element> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: args.len() });
        }
        Ok(self.at(encode_args(args, self.k)?))
    }

    /// Application without range checks; callers guarantee a valid tuple.
    #[inline]
    pub fn apply(&self, args: &[Element]) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        self.at(encode_unchecked(args, self.k))
    }

    /// `op(prefix, op(inner), suffix)`.
    pub fn eval_nested(&self, prefix: &[Element], inner: &[Element], suffix: &[Element]) -> Result<Element> {
        let outer = prefix.len() + 1 + suffix.len();
        if outer != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: outer });
        }
        let hole = self.eval(inner)?;
        let mut args = Vec::with_capacity(self.arity);
        args.extend_from_slice(prefix);
        args.push(hole);
        args.extend_from_slice(suffix);
        self.eval(&args)
    }
}

/// Which of the two operations of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    F,
    G,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::F => 'f',
            Op::G => 'g',
        }
    }
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A carrier with an m-ary addition `f` and an n-ary multiplication `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinStructure {
    name: String,
    f: OpTable,
    g: OpTable,
}

impl FinStructure {
    pub fn new(name: impl Into<String>, f: OpTable, g: OpTable) -> Result<Self> {
        if f.k != g.k {
            return Err(Error::CarrierMismatch(f.k, g.k));
        }
        Ok(FinStructure { name: name.into(), f, g })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn k(&self) -> usize {
        self.f.k
    }

    pub fn m(&self) -> usize {
        self.f.arity
    }

    pub fn n(&self) -> usize {
        self.g.arity
    }

    pub fn f(&self) -> &OpTable {
        &self.f
    }

    pub fn g(&self) -> &OpTable {
        &self.g
    }

    pub fn op(&self, op: Op) -> &OpTable {
        match op {
            Op::F => &self.f,
            Op::G => &self.g,
        }
    }

    /// Same carrier, arities and tables; names are ignored.
    pub fn tables_equal(&self, other: &FinStructure) -> bool {
        self.f == other.f && self.g == other.g
    }

    /// Rename elements along the bijection `perm` (old element `x` becomes `perm[x]`).
    pub fn relabeled(&self, perm: &[Element]) -> Result<FinStructure> {
        let k = self.k();
        let mut seen = vec![false; k];
        if perm.len() != k {
            return Err(Error::ArityMismatch { expected: k, found: perm.len() });
        }
        for &p in perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::DomainMismatch(format!("{perm:?} is not a permutation of 0..{k}")));
            }
        }
        let mut inv = vec![0; k];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let relabel = |table: &OpTable| {
            OpTable::from_fn(table.arity, k, |args| {
                let pre: Vec<Element> = args.iter().map(|&a| inv[a]).collect();
                perm[table.apply(&pre)]
            })
        };
        FinStructure::new(self.name.clone(), relabel(&self.f)?, relabel(&self.g)?)
    }
}
