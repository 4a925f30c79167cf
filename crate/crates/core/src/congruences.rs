//! Partitions of the carrier, congruences and factor structures.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::axioms::{check_associative, check_t_distributive};
use crate::carrier::{Element, FinStructure, Op, OpTable, Tuples};
use crate::error::{Error, Result};
use crate::verdict::{AxiomVerdict, Witness};

/// Largest carrier for which partitions are enumerated (Bell(10) = 115975).
pub const PARTITION_LIMIT: usize = 10;

/// An equivalence relation on `0..k`, stored as canonical block labels:
/// blocks are numbered in order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    blocks: Vec<Vec<Element>>,
}

impl Partition {
    /// Canonicalize an arbitrary labeling: `x` and `y` share a block iff
    /// `labels[x] == labels[y]`.
    pub fn from_labels<L: PartialEq>(labels: &[L]) -> Partition {
        let mut class_of = Vec::with_capacity(labels.len());
        let mut firsts: Vec<&L> = Vec::new();
        let mut blocks: Vec<Vec<Element>> = Vec::new();
        for (x, label) in labels.iter().enumerate() {
            let b = match firsts.iter().position(|f| *f == label) {
                Some(b) => b,
                None => {
                    firsts.push(label);
                    blocks.push(Vec::new());
                    blocks.len() - 1
                }
            };
            class_of.push(b);
            blocks[b].push(x);
        }
        Partition { class_of, blocks }
    }

    /// Blocks must cover `0..k` exactly once each.
    pub fn from_blocks(blocks: &[Vec<Element>], k: usize) -> Result<Partition> {
        let mut label = vec![usize::MAX; k];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            for &x in block {
                if x >= k {
                    return Err(Error::MalformedPartition(format!("element {x} outside carrier 0..{k}")));
                }
                if label[x] != usize::MAX {
                    return Err(Error::MalformedPartition(format!("element {x} appears twice")));
                }
                label[x] = b;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MalformedPartition(format!("element {x} is missing")));
        }
        Ok(Partition::from_labels(&label))
    }

    /// Parse `0,2|1,3`.
    pub fn parse(text: &str, k: usize) -> Result<Partition> {
        let blocks = parse_groups(text)?;
        Partition::from_blocks(&blocks, k)
    }

    pub fn identity(k: usize) -> Partition {
        Partition::from_labels(&(0..k).collect::<Vec<_>>())
    }

    pub fn universal(k: usize) -> Partition {
        Partition::from_labels(&vec![0; k])
    }

    pub fn k(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, x: Element) -> usize {
        self.class_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn blocks(&self) -> &[Vec<Element>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn same_block(&self, x: Element, y: Element) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| coarser.same_block(x, b[0])))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

/// `|`-separated groups of `,`-separated elements.
pub(crate) fn parse_groups(text: &str) -> Result<Vec<Vec<Element>>> {
    text.trim()
        .split('|')
        .map(|group| {
            group
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<Element>()
                        .map_err(|_| Error::MalformedPartition(format!("bad element {:?}", tok.trim())))
                })
                .collect()
        })
        .collect()
}

fn check_carrier(s: &FinStructure, p: &Partition) -> Result<()> {
    if p.k() != s.k() {
        Err(Error::MalformedPartition(format!("partition of {} elements for carrier {}", p.k(), s.k())))
    } else {
        Ok(())
    }
}

fn first_incompatibility(table: &OpTable, op: Op, p: &Partition) -> Option<Witness> {
    let mut moved = vec![0; table.arity()];
    Tuples::find_map(table.carrier_size(), table.arity(), |args| {
        let left = table.apply(args);
        for pos in 0..args.len() {
            moved.copy_from_slice(args);
            for &mate in &p.blocks[p.class_of[args[pos]]] {
                if mate == args[pos] {
                    continue;
                }
                moved[pos] = mate;
                let right = table.apply(&moved);
                if !p.same_block(left, right) {
                    return Some(Witness::Congruence {
                        op,
                        position: pos + 1,
                        args: args.to_vec(),
                        replacement: mate,
                        left,
                        right,
                        left_block: p.class_of[left],
                        right_block: p.class_of[right],
                    });
                }
            }
        }
        None
    })
}

/// Compatibility with `f` and `g` under single-argument substitution.
///
/// Scan order: `f` before `g`, tuples ascending, then argument position,
/// then the replacing block-mate ascending.
pub fn is_congruence(s: &FinStructure, p: &Partition) -> Result<AxiomVerdict> {
    check_carrier(s, p)?;
    let w = first_incompatibility(s.f(), Op::F, p).or_else(|| first_incompatibility(s.g(), Op::G, p));
    Ok(AxiomVerdict::from_witness(w))
}

/// Same decision as [`is_congruence`], comparing each argument only against
/// its block's least element.
fn respects(s: &FinStructure, p: &Partition) -> bool {
    [s.f(), s.g()].into_iter().all(|table| {
        let mut moved = vec![0; table.arity()];
        Tuples::find_map(s.k(), table.arity(), |args| {
            let left = p.class_of[table.apply(args)];
            for pos in 0..args.len() {
                let rep = p.blocks[p.class_of[args[pos]]][0];
                if rep != args[pos] {
                    moved.copy_from_slice(args);
                    moved[pos] = rep;
                    if p.class_of[table.apply(&moved)] != left {
                        return Some(());
                    }
                }
            }
            None
        })
        .is_none()
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller element as root
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Smallest congruence identifying every seed pair.
pub fn congruence_closure(s: &FinStructure, seeds: &[(Element, Element)]) -> Result<Partition> {
    let k = s.k();
    let mut uf = UnionFind::new(k);
    for &(a, b) in seeds {
        for x in [a, b] {
            if x >= k {
                return Err(Error::ArgOutOfRange { value: x, k });
            }
        }
        uf.union(a, b);
    }
    let mut moved = Vec::new();
    loop {
        let mut changed = false;
        for table in [s.f(), s.g()] {
            moved.resize(table.arity(), 0);
            let mut t = Tuples::new(k, table.arity());
            loop {
                let args = t.current();
                let value = table.apply(args);
                for pos in 0..args.len() {
                    let root = uf.find(args[pos]);
                    if root != args[pos] {
                        moved.copy_from_slice(args);
                        moved[pos] = root;
                        changed |= uf.union(value, table.apply(&moved));
                    }
                }
                if !t.advance() {
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let roots: Vec<usize> = (0..k).map(|x| uf.find(x)).collect();
    Ok(Partition::from_labels(&roots))
}

/// All partitions of `0..k` as restricted growth strings, in lexicographic order.
pub fn all_partitions(k: usize) -> Vec<Partition> {
    fn extend(labels: &mut Vec<usize>, k: usize, max: usize, out: &mut Vec<Partition>) {
        if labels.len() == k {
            out.push(Partition::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            extend(labels, k, max.max(l), out);
            labels.pop();
        }
    }
    if k == 0 {
        return vec![Partition::from_labels::<usize>(&[])];
    }
    let mut out = Vec::new();
    let mut labels = vec![0];
    extend(&mut labels, k, 0, &mut out);
    out
}

/// Every congruence, finest first: block count descending, then canonical labels.
pub fn enumerate_congruences(s: &FinStructure) -> Result<Vec<Partition>> {
    if s.k() > PARTITION_LIMIT {
        return Err(Error::CarrierTooLarge { k: s.k(), limit: PARTITION_LIMIT, what: "partition enumeration" });
    }
    let mut out: Vec<Partition> = all_partitions(s.k()).into_iter().filter(|p| respects(s, p)).collect();
    out.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.class_of.cmp(&b.class_of)));
    Ok(out)
}

/// Axioms a quotient must inherit from its parent.
fn inherited(s: &FinStructure) -> (bool, bool, Vec<usize>) {
    let positions = (1..=s.n())
        .filter(|&t| check_t_distributive(s, t).map(|v| v.holds).unwrap_or(false))
        .collect();
    (check_associative(s.f()).holds, check_associative(s.g()).holds, positions)
}

/// Factor structure on the blocks of a congruence.
///
/// Block `b` becomes element `b`. Each table entry is read off the least
/// representatives and then re-verified against every element tuple, and the
/// result is checked to keep each semigroup law and distributive slot that
/// the parent satisfies.
pub fn quotient(s: &FinStructure, p: &Partition) -> Result<FinStructure> {
    if !is_congruence(s, p)?.holds {
        return Err(Error::NotCongruence);
    }
    let nb = p.num_blocks();
    let reps: Vec<Element> = p.blocks.iter().map(|b| b[0]).collect();
    let lift = |table: &OpTable| -> Result<OpTable> {
        let mut args = vec![0; table.arity()];
        let q = OpTable::from_fn(table.arity(), nb, |blocks| {
            for (slot, &b) in args.iter_mut().zip(blocks) {
                *slot = reps[b];
            }
            p.class_of[table.apply(&args)]
        })?;
        let mut block_args = vec![0; table.arity()];
        let clash = Tuples::find_map(s.k(), table.arity(), |elems| {
            for (slot, &x) in block_args.iter_mut().zip(elems) {
                *slot = p.class_of[x];
            }
            (p.class_of[table.apply(elems)] != q.apply(&block_args)).then(|| elems.to_vec())
        });
        match clash {
            Some(t) => Err(Error::Invariant(format!("quotient table is not well defined at {t:?}"))),
            None => Ok(q),
        }
    };
    let result = FinStructure::new(format!("{}_quot", s.name()), lift(s.f())?, lift(s.g())?)?;

    let (fa, ga, dist) = inherited(s);
    let (qfa, qga, qdist) = inherited(&result);
    if (fa && !qfa) || (ga && !qga) || dist.iter().any(|t| !qdist.contains(t)) {
        return Err(Error::Invariant("quotient lost an axiom of its parent".into()));
    }
    Ok(result)
}
