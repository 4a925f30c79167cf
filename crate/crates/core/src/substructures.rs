//! Subseminearrings: closure checks, generated subalgebras, enumeration and
//! intersections.

use std::fmt;

use serde::Serialize;

use crate::carrier::{Element, FinStructure, Op, OpTable, Tuples};
use crate::error::{Error, Result};
use crate::verdict::{AxiomVerdict, Witness};

/// Largest carrier for which subsets are enumerated exhaustively.
pub const ENUMERATION_LIMIT: usize = 20;

/// A nonempty subset of the carrier, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<Element>")]
pub struct Subset(u64);

impl Subset {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            Err(Error::EmptySubset)
        } else {
            Ok(Subset(bits))
        }
    }

    pub fn from_elements(elements: impl IntoIterator<Item = Element>, k: usize) -> Result<Self> {
        let mut bits = 0u64;
        for x in elements {
            if x >= k {
                return Err(Error::ArgOutOfRange { value: x, k });
            }
            bits |= 1 << x;
        }
        Subset::from_bits(bits)
    }

    pub fn full(k: usize) -> Self {
        Subset(if k >= 64 { u64::MAX } else { (1u64 << k) - 1 })
    }

    pub fn singleton(x: Element) -> Self {
        Subset(1 << x)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: Element) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn elements(self) -> Vec<Element> {
        (0..64).filter(|&x| self.contains(x)).collect()
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Subset) -> Option<Subset> {
        Subset::from_bits(self.0 & other.0).ok()
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub(crate) fn check_within(self, k: usize) -> Result<()> {
        match self.elements().into_iter().find(|&x| x >= k) {
            Some(x) => Err(Error::ArgOutOfRange { value: x, k }),
            None => Ok(()),
        }
    }
}

impl From<Subset> for Vec<Element> {
    fn from(s: Subset) -> Self {
        s.elements()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// First tuple over `elements` (ascending) whose image leaves `sub`.
pub(crate) fn first_escape(table: &OpTable, op: Op, elements: &[Element], sub: Subset) -> Option<Witness> {
    let mut args = vec![0; table.arity()];
    Tuples::find_map(elements.len(), table.arity(), |idx| {
        for (slot, &i) in args.iter_mut().zip(idx) {
            *slot = elements[i];
        }
        let image = table.apply(&args);
        (!sub.contains(image)).then(|| Witness::Escape { op, args: args.clone(), image })
    })
}

/// Closure under `f` and `g`; checks `f` then `g`.
pub fn is_subseminearring(s: &FinStructure, sub: Subset) -> Result<AxiomVerdict> {
    sub.check_within(s.k())?;
    let elements = sub.elements();
    let witness = first_escape(s.f(), Op::F, &elements, sub).or_else(|| first_escape(s.g(), Op::G, &elements, sub));
    Ok(AxiomVerdict::from_witness(witness))
}

/// Visit every `r`-tuple over `old ∪ new` with at least one entry in `new`.
///
/// Tuples are grouped by the slot of their first `new` entry: slots before
/// it range over `old`, the slot itself over `new`, and later slots over both.
pub(crate) fn for_each_touching(old: &[Element], new: &[Element], r: usize, mut visit: impl FnMut(&[Element])) {
    if new.is_empty() {
        return;
    }
    let all: Vec<Element> = {
        let mut v: Vec<Element> = old.iter().chain(new).copied().collect();
        v.sort_unstable();
        v
    };
    let mut args = vec![0; r];
    for first in 0..r {
        if first > 0 && old.is_empty() {
            break;
        }
        let lists: Vec<&[Element]> = (0..r)
            .map(|i| match i.cmp(&first) {
                std::cmp::Ordering::Less => old,
                std::cmp::Ordering::Equal => new,
                std::cmp::Ordering::Greater => &all[..],
            })
            .collect();
        let mut digits = vec![0usize; r];
        'tuples: loop {
            for (i, slot) in args.iter_mut().enumerate() {
                *slot = lists[i][digits[i]];
            }
            visit(&args);
            for i in (0..r).rev() {
                digits[i] += 1;
                if digits[i] < lists[i].len() {
                    continue 'tuples;
                }
                digits[i] = 0;
            }
            break;
        }
    }
}

/// Smallest subseminearring containing `seed`.
///
/// Each round applies `f` and `g` only to tuples that use an element added in
/// the previous round.
pub fn sub_closure(s: &FinStructure, seed: Subset) -> Result<Subset> {
    seed.check_within(s.k())?;
    let mut set = seed;
    let mut old: Vec<Element> = Vec::new();
    let mut new = seed.elements();
    while !new.is_empty() {
        let mut added = set;
        for table in [s.f(), s.g()] {
            for_each_touching(&old, &new, table.arity(), |args| {
                added = added.union(Subset::singleton(table.apply(args)));
            });
        }
        old.extend_from_slice(&new);
        old.sort_unstable();
        new = Subset::from_bits(added.bits() & !set.bits()).map(Subset::elements).unwrap_or_default();
        set = added;
    }
    Ok(set)
}

pub(crate) fn check_enumerable(k: usize) -> Result<()> {
    if k > ENUMERATION_LIMIT {
        Err(Error::CarrierTooLarge { k, limit: ENUMERATION_LIMIT, what: "subset enumeration" })
    } else {
        Ok(())
    }
}

/// Every subseminearring, ascending by bitmask.
pub fn enumerate_subs(s: &FinStructure) -> Result<Vec<Subset>> {
    check_enumerable(s.k())?;
    let mut out = Vec::new();
    for bits in 1..(1u64 << s.k()) {
        let sub = Subset(bits);
        if is_subseminearring(s, sub)?.holds {
            out.push(sub);
        }
    }
    Ok(out)
}

/// Intersection of a family of subseminearrings; an empty family yields the
/// whole carrier.
pub fn intersect_closed_family(s: &FinStructure, family: &[Subset]) -> Result<Subset> {
    let mut acc = Subset::full(s.k()).bits();
    for &member in family {
        if !is_subseminearring(s, member)?.holds {
            return Err(Error::NotSubseminearring);
        }
        acc &= member.bits();
    }
    let meet = Subset::from_bits(acc).map_err(|_| Error::EmptyIntersection)?;
    if !is_subseminearring(s, meet)?.holds {
        return Err(Error::Invariant(format!("intersection {meet} is not closed")));
    }
    Ok(meet)
}

/// The subseminearring `sub` as a structure of its own, with its elements
/// renumbered `0..|sub|` in ascending order. Also returns the inclusion map.
pub fn restrict(s: &FinStructure, sub: Subset) -> Result<(FinStructure, Vec<Element>)> {
    if !is_subseminearring(s, sub)?.holds {
        return Err(Error::NotSubseminearring);
    }
    let inclusion = sub.elements();
    let mut position = vec![usize::MAX; s.k()];
    for (new, &old) in inclusion.iter().enumerate() {
        position[old] = new;
    }
    let lift = |table: &OpTable| {
        let mut args = vec![0; table.arity()];
        OpTable::from_fn(table.arity(), inclusion.len(), |local| {
            for (slot, &l) in args.iter_mut().zip(local) {
                *slot = inclusion[l];
            }
            position[table.apply(&args)]
        })
    };
    let restricted = FinStructure::new(format!("{}_sub_{}", s.name(), sub.bits()), lift(s.f())?, lift(s.g())?)?;
    Ok((restricted, inclusion))
}
