//! i-(m,n)-ideals and (m,n)-ideals.

use crate::axioms::g_with_slot;
use crate::carrier::{Element, FinStructure, Op, Tuples};
use crate::error::{Error, Result};
use crate::substructures::{check_enumerable, first_escape, for_each_touching, is_subseminearring, Subset};
use crate::verdict::{AxiomVerdict, Witness};

/// Which `g` slots an ideal must absorb in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positions {
    All,
    Only(Vec<usize>),
}

impl Positions {
    fn resolve(&self, n: usize) -> Result<Vec<usize>> {
        match self {
            Positions::All => Ok((1..=n).collect()),
            Positions::Only(list) => {
                for &i in list {
                    check_slot(n, i)?;
                }
                Ok(list.clone())
            }
        }
    }
}

fn check_slot(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::PositionOutOfRange { position: i, max: n })
    } else {
        Ok(())
    }
}

/// First `x ∈ sub` and context (ascending) with `g(.., x, ..)` outside `sub`.
fn first_absorption_failure(s: &FinStructure, sub: Subset, i: usize) -> Option<Witness> {
    let g = s.g();
    let mut buf = Vec::with_capacity(s.n());
    sub.elements().into_iter().find_map(|x| {
        Tuples::find_map(s.k(), s.n() - 1, |ctx| {
            let image = g_with_slot(g, ctx, i, x, &mut buf);
            (!sub.contains(image)).then(|| Witness::Absorption { position: i, args: buf.clone(), image })
        })
    })
}

/// Subseminearring that absorbs arbitrary elements around slot `i` of `g`.
pub fn is_i_ideal(s: &FinStructure, sub: Subset, i: usize) -> Result<AxiomVerdict> {
    check_slot(s.n(), i)?;
    let closed = is_subseminearring(s, sub)?;
    if !closed.holds {
        return Ok(closed);
    }
    Ok(AxiomVerdict::from_witness(first_absorption_failure(s, sub, i)))
}

/// Ideal criterion: closed under `f`, absorbing in every slot of `g`.
pub fn is_ideal(s: &FinStructure, sub: Subset) -> Result<AxiomVerdict> {
    sub.check_within(s.k())?;
    let witness = first_escape(s.f(), Op::F, &sub.elements(), sub)
        .or_else(|| (1..=s.n()).find_map(|i| first_absorption_failure(s, sub, i)));
    Ok(AxiomVerdict::from_witness(witness))
}

/// Smallest ideal containing `seed`.
pub fn ideal_closure(s: &FinStructure, seed: Subset) -> Result<Subset> {
    seed.check_within(s.k())?;
    let (f, g) = (s.f(), s.g());
    let mut set = seed;
    let mut old: Vec<Element> = Vec::new();
    let mut new = seed.elements();
    let mut buf = Vec::with_capacity(s.n());
    while !new.is_empty() {
        let mut added = set;
        for_each_touching(&old, &new, f.arity(), |args| {
            added = added.union(Subset::singleton(f.apply(args)));
        });
        for &x in &new {
            for i in 1..=s.n() {
                let mut ctx = Tuples::new(s.k(), s.n() - 1);
                loop {
                    added = added.union(Subset::singleton(g_with_slot(g, ctx.current(), i, x, &mut buf)));
                    if !ctx.advance() {
                        break;
                    }
                }
            }
        }
        old.extend_from_slice(&new);
        old.sort_unstable();
        new = Subset::from_bits(added.bits() & !set.bits()).map(Subset::elements).unwrap_or_default();
        set = added;
    }
    Ok(set)
}

/// Every subset that is an i-ideal for each requested slot, ascending by bitmask.
pub fn enumerate_ideals(s: &FinStructure, positions: &Positions) -> Result<Vec<Subset>> {
    check_enumerable(s.k())?;
    let slots = positions.resolve(s.n())?;
    let mut out = Vec::new();
    'subsets: for bits in 1..(1u64 << s.k()) {
        let sub = Subset::from_bits(bits)?;
        if !is_subseminearring(s, sub)?.holds {
            continue;
        }
        for &i in &slots {
            if first_absorption_failure(s, sub, i).is_some() {
                continue 'subsets;
            }
        }
        out.push(sub);
    }
    Ok(out)
}

/// Intersection of a family of ideals; an empty family yields the whole carrier.
pub fn intersect_ideals(s: &FinStructure, family: &[Subset]) -> Result<Subset> {
    let mut acc = Subset::full(s.k()).bits();
    for &member in family {
        if !is_ideal(s, member)?.holds {
            return Err(Error::NotIdeal);
        }
        acc &= member.bits();
    }
    let meet = Subset::from_bits(acc).map_err(|_| Error::EmptyIntersection)?;
    if !is_ideal(s, meet)?.holds {
        return Err(Error::Invariant(format!("intersection {meet} is not an ideal")));
    }
    Ok(meet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::find_g_identities;
    use crate::constructions::{gen_affine, gen_modring, gen_powerset};

    fn set(xs: &[Element], k: usize) -> Subset {
        Subset::from_elements(xs.iter().copied(), k).unwrap()
    }

    #[test]
    fn i_ideal_examples() {
        let b2 = gen_powerset(1, 2, 2).unwrap();
        for i in 1..=2 {
            assert!(is_i_ideal(&b2, set(&[0], 2), i).unwrap().holds);
        }
        let v = is_i_ideal(&b2, set(&[1], 2), 1).unwrap();
        assert_eq!(v.witness, Some(Witness::Absorption { position: 1, args: vec![1, 0], image: 0 }));
        let affine = gen_affine(3).unwrap();
        for i in 1..=3 {
            assert!(is_i_ideal(&affine, set(&[0, 1, 2], 9), i).unwrap().holds);
        }
        assert_eq!(
            is_i_ideal(&b2, set(&[0], 2), 3),
            Err(Error::PositionOutOfRange { position: 3, max: 2 })
        );
    }

    #[test]
    fn ideal_examples() {
        let z4 = gen_modring(4, 2, 2).unwrap();
        assert!(is_ideal(&z4, set(&[0, 2], 4)).unwrap().holds);
        let z3 = gen_modring(3, 2, 2).unwrap();
        let v = is_ideal(&z3, set(&[0, 1], 3)).unwrap();
        assert_eq!(v.witness, Some(Witness::Escape { op: Op::F, args: vec![1, 1], image: 2 }));
        assert!(is_ideal(&z3, Subset::full(3)).unwrap().holds);
    }

    #[test]
    fn ideal_closure_examples() {
        let z4 = gen_modring(4, 2, 2).unwrap();
        assert_eq!(ideal_closure(&z4, set(&[2], 4)).unwrap(), set(&[0, 2], 4));
        let z6 = gen_modring(6, 2, 2).unwrap();
        assert_eq!(ideal_closure(&z6, set(&[2], 6)).unwrap(), set(&[0, 2, 4], 6));
        for q in 1..=6 {
            let z = gen_modring(q, 2, 2).unwrap();
            assert_eq!(ideal_closure(&z, set(&[0], q)).unwrap(), set(&[0], q));
        }
    }

    #[test]
    fn enumeration_examples() {
        let z4 = gen_modring(4, 2, 2).unwrap();
        assert_eq!(
            enumerate_ideals(&z4, &Positions::All).unwrap(),
            vec![set(&[0], 4), set(&[0, 2], 4), Subset::full(4)]
        );
        let b2 = gen_powerset(1, 2, 2).unwrap();
        assert_eq!(enumerate_ideals(&b2, &Positions::All).unwrap(), vec![set(&[0], 2), Subset::full(2)]);
        let z3 = gen_modring(3, 2, 2).unwrap();
        assert_eq!(enumerate_ideals(&z3, &Positions::All).unwrap(), vec![set(&[0], 3), Subset::full(3)]);
        assert!(enumerate_ideals(&z3, &Positions::Only(vec![3])).is_err());
    }

    #[test]
    fn one_sided_ideals_of_affine_structure() {
        let affine = gen_affine(3).unwrap();
        let left = enumerate_ideals(&affine, &Positions::Only(vec![1])).unwrap();
        let all = enumerate_ideals(&affine, &Positions::All).unwrap();
        for i in &all {
            assert!(left.contains(i));
        }
        assert!(all.contains(&set(&[0, 1, 2], 9)));
    }

    #[test]
    fn intersection_examples() {
        let z12 = gen_modring(12, 2, 2).unwrap();
        let meet = intersect_ideals(&z12, &[set(&[0, 2, 4, 6, 8, 10], 12), set(&[0, 3, 6, 9], 12)]).unwrap();
        assert_eq!(meet, set(&[0, 6], 12));
        assert!(is_ideal(&z12, meet).unwrap().holds);
        assert_eq!(intersect_ideals(&z12, &[Subset::full(12), set(&[0], 12)]).unwrap(), set(&[0], 12));
        let b2 = gen_powerset(1, 2, 2).unwrap();
        assert_eq!(intersect_ideals(&b2, &[set(&[0], 2), Subset::full(2)]).unwrap(), set(&[0], 2));
        assert_eq!(intersect_ideals(&b2, &[set(&[1], 2)]), Err(Error::NotIdeal));
    }

    #[test]
    fn criterion_agrees_with_definition_and_theorems_hold() {
        let corpus = [
            gen_powerset(1, 2, 2).unwrap(),
            gen_powerset(2, 2, 3).unwrap(),
            gen_modring(4, 2, 2).unwrap(),
            gen_modring(6, 2, 3).unwrap(),
            gen_modring(8, 3, 2).unwrap(),
            gen_affine(2).unwrap(),
            gen_affine(3).unwrap(),
        ];
        for s in &corpus {
            let ideals = enumerate_ideals(s, &Positions::All).unwrap();
            let unities = find_g_identities(s);
            for bits in 1..(1u64 << s.k()) {
                let sub = Subset::from_bits(bits).unwrap();
                let criterion = is_ideal(s, sub).unwrap().holds;
                let def = is_subseminearring(s, sub).unwrap().holds
                    && (1..=s.n()).all(|i| is_i_ideal(s, sub, i).unwrap().holds);
                assert_eq!(criterion, def, "{} {sub}", s.name());
                assert_eq!(criterion, ideals.contains(&sub));
            }
            for &sub in &ideals {
                assert!(is_subseminearring(s, sub).unwrap().holds);
                if unities.iter().any(|&e| sub.contains(e)) {
                    assert_eq!(sub, Subset::full(s.k()), "{}", s.name());
                }
            }
            for a in &ideals {
                for b in &ideals {
                    if let Some(meet) = a.intersection(*b) {
                        assert!(is_ideal(s, meet).unwrap().holds);
                    }
                }
                let c = ideal_closure(s, *a).unwrap();
                assert_eq!(c, *a);
            }
            for x in 0..s.k() {
                let c = ideal_closure(s, Subset::singleton(x)).unwrap();
                assert!(is_ideal(s, c).unwrap().holds);
                for i in ideals.iter().filter(|i| i.contains(x)) {
                    assert!(c.is_subset_of(*i));
                }
            }
        }
    }
}
