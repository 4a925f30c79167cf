//! Exhaustive axiom checks and structure classification.
//!
//! Every sweep walks argument tuples in ascending mixed-radix order, so the
//! reported witness is always the first violation in that order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::carrier::{decode_index, Element, FinStructure, OpTable, Tuples};
use crate::error::{Error, Result};
use crate::verdict::{AxiomVerdict, Witness};

/// Associativity of an `r`-ary operation.
///
/// Each bracketing at position `j = 2..=r` is compared against the bracketing
/// at position 1; all pairs agree iff each agrees with the first. Scan order
/// is `j` ascending, then the `(2r-1)`-tuple ascending.
pub fn check_associative(op: &OpTable) -> AxiomVerdict {
    let r = op.arity();
    for j in 2..=r {
        if let Some((index, left, right)) = first_bracketing_mismatch(op, j - 1) {
            let args = decode_index(index, op.carrier_size(), 2 * r - 1);
            return AxiomVerdict::fail(Witness::Associativity { i: 1, j, args, left, right });
        }
    }
    AxiomVerdict::pass()
}

/// First `(2r-1)`-tuple index where the bracketing at offset `o` differs
/// from the bracketing at offset 0.
///
/// The tuple splits as `p` (first `r` digits) and `s` (last `r-1`); `p` in
/// turn splits as `prefix` (`o` digits) and `mid_high`, `s` as `s_high` (`o`
/// digits) and `s_low`. The inner application at offset `o` reads
/// `mid = mid_high·k^o + s_high`.
fn first_bracketing_mismatch(op: &OpTable, o: usize) -> Option<(usize, Element, Element)> {
    let r = op.arity();
    let k = op.carrier_size();
    let pow = |e: usize| k.pow(e as u32);
    let (k_tail, k_high, k_low, k_mid_high) = (pow(r - 1), pow(o), pow(r - 1 - o), pow(r - o));
    for p in 0..pow(r) {
        let base_left = op.at(p) * k_tail;
        let prefix = p / k_mid_high;
        let mid_high = p % k_mid_high;
        for s_high in 0..k_high {
            let inner = op.at(mid_high * k_high + s_high);
            let base_right = (prefix * k + inner) * k_low;
            let base_left = base_left + s_high * k_low;
            for s_low in 0..k_low {
                let left = op.at(base_left + s_low);
                let right = op.at(base_right + s_low);
                if left != right {
                    return Some((p * k_tail + s_high * k_low + s_low, left, right));
                }
            }
        }
    }
    None
}

/// Commutativity, via the adjacent transpositions `(p, p+1)`, which generate
/// every permutation of the argument positions.
pub fn check_commutative(op: &OpTable) -> AxiomVerdict {
    let r = op.arity();
    let mut swapped = vec![0; r];
    for p in 0..r - 1 {
        let found = Tuples::find_map(op.carrier_size(), r, |args| {
            if args[p] == args[p + 1] {
                return None;
            }
            swapped.copy_from_slice(args);
            swapped.swap(p, p + 1);
            let left = op.apply(args);
            let right = op.apply(&swapped);
            (left != right).then(|| Witness::Commutativity { swap: (p + 1, p + 2), args: args.to_vec(), left, right })
        });
        if let Some(w) = found {
            return AxiomVerdict::fail(w);
        }
    }
    AxiomVerdict::pass()
}

fn check_position(n: usize, t: usize) -> Result<()> {
    if t == 0 || t > n {
        Err(Error::PositionOutOfRange { position: t, max: n })
    } else {
        Ok(())
    }
}

/// Value of `g` with `x` placed in 1-based slot `t` of an `(n-1)`-context.
#[inline]
pub(crate) fn g_with_slot(g: &OpTable, context: &[Element], t: usize, x: Element, buf: &mut Vec<Element>) -> Element {
    buf.clear();
    buf.extend_from_slice(&context[..t - 1]);
    buf.push(x);
    buf.extend_from_slice(&context[t - 1..]);
    g.apply(buf)
}

/// `t`-distributivity of `g` over `f`. Scan order is `a_1..a_m` major, then
/// the `(n-1)` context with slot `t` removed.
pub fn check_t_distributive(s: &FinStructure, t: usize) -> Result<AxiomVerdict> {
    let (k, m, n) = (s.k(), s.m(), s.n());
    check_position(n, t)?;
    let (f, g) = (s.f(), s.g());

    // columns[c][x] = g with x in slot t of context number c
    let mut buf = Vec::with_capacity(n);
    let mut columns: Vec<Vec<Element>> = Vec::new();
    let mut ctx = Tuples::new(k, n - 1);
    loop {
        columns.push((0..k).map(|x| g_with_slot(g, ctx.current(), t, x, &mut buf)).collect());
        if !ctx.advance() {
            break;
        }
    }

    let mut mapped = vec![0; m];
    let found = Tuples::find_map(k, m, |a| {
        let sum = f.apply(a);
        let mut ctx = Tuples::new(k, n - 1);
        for col in &columns {
            let left = col[sum];
            for (slot, &ai) in mapped.iter_mut().zip(a) {
                *slot = col[ai];
            }
            let right = f.apply(&mapped);
            if left != right {
                return Some(Witness::Distributivity {
                    t,
                    a: a.to_vec(),
                    context: ctx.current().to_vec(),
                    left,
                    right,
                });
            }
            ctx.advance();
        }
        None
    });
    Ok(AxiomVerdict::from_witness(found))
}

/// Elements `z` with `op(z^(i-1), a, z^(r-i)) = a` for every `a` and slot `i`.
pub fn identities_of(op: &OpTable) -> Vec<Element> {
    let (k, r) = (op.carrier_size(), op.arity());
    let mut args = vec![0; r];
    (0..k)
        .filter(|&z| {
            (0..r).all(|i| {
                (0..k).all(|a| {
                    args.fill(z);
                    args[i] = a;
                    op.apply(&args) == a
                })
            })
        })
        .collect()
}

pub fn find_f_identities(s: &FinStructure) -> Vec<Element> {
    identities_of(s.f())
}

/// Unities: identities of `g` in every slot.
pub fn find_g_identities(s: &FinStructure) -> Vec<Element> {
    identities_of(s.g())
}

/// Elements `z` such that `g` returns `z` whenever any argument is `z`.
pub fn find_g_zeros(s: &FinStructure) -> Vec<Element> {
    let g = s.g();
    let mut zero = vec![true; s.k()];
    let mut t = Tuples::new(s.k(), s.n());
    loop {
        let args = t.current();
        let v = g.apply(args);
        for &a in args {
            if a != v {
                zero[a] = false;
            }
        }
        if !t.advance() {
            break;
        }
    }
    (0..s.k()).filter(|&z| zero[z]).collect()
}

/// Every axiom flag of a structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub f_associative: AxiomVerdict,
    pub f_commutative: AxiomVerdict,
    pub g_associative: AxiomVerdict,
    /// One verdict per slot `t = 1..=n`, in order.
    pub distributive: Vec<(usize, AxiomVerdict)>,
    pub distributive_positions: Vec<usize>,
    /// Slots `t` for which the structure is a t-(m,n)-seminearring.
    pub t_snr: Vec<usize>,
    pub is_right_snr: bool,
    pub is_left_snr: bool,
    pub f_identities: Vec<Element>,
    pub g_zeros: Vec<Element>,
    pub absorbing_zeros: Vec<Element>,
    pub g_identities: Vec<Element>,
    pub is_semiring: bool,
}

impl ClassificationReport {
    /// Distributive in every slot.
    pub fn fully_distributive(&self) -> bool {
        self.distributive.iter().all(|(_, v)| v.holds)
    }

    pub fn distributive_verdict(&self, t: usize) -> Option<&AxiomVerdict> {
        self.distributive.iter().find(|(p, _)| *p == t).map(|(_, v)| v)
    }
}

pub fn classify(s: &FinStructure) -> ClassificationReport {
    let n = s.n();
    let f_associative = check_associative(s.f());
    let f_commutative = check_commutative(s.f());
    let g_associative = check_associative(s.g());
    let distributive: Vec<(usize, AxiomVerdict)> = (1..=n)
        .map(|t| (t, check_t_distributive(s, t).expect("slot within 1..=n")))
        .collect();
    let distributive_positions: Vec<usize> =
        distributive.iter().filter(|(_, v)| v.holds).map(|(t, _)| *t).collect();
    let semigroups = f_associative.holds && g_associative.holds;
    let t_snr: Vec<usize> = if semigroups { distributive_positions.clone() } else { Vec::new() };

    let f_identities = find_f_identities(s);
    let g_zeros = find_g_zeros(s);
    let g_identities = find_g_identities(s);
    let zero_set: BTreeSet<Element> = g_zeros.iter().copied().collect();
    let absorbing_zeros: Vec<Element> =
        f_identities.iter().copied().filter(|z| zero_set.contains(z)).collect();

    // zero element of a semiring: a first-slot f-identity that is also a g-zero
    let mut args = vec![0; s.m()];
    let has_semiring_zero = g_zeros.iter().any(|&z| {
        (0..s.k()).all(|a| {
            args.fill(z);
            args[0] = a;
            s.f().apply(&args) == a
        })
    });
    let is_semiring = f_commutative.holds
        && semigroups
        && distributive_positions.len() == n
        && has_semiring_zero;

    ClassificationReport {
        is_right_snr: t_snr.contains(&1),
        is_left_snr: t_snr.contains(&n),
        f_associative,
        f_commutative,
        g_associative,
        distributive,
        distributive_positions,
        t_snr,
        f_identities,
        g_zeros,
        absorbing_zeros,
        g_identities,
        is_semiring,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_affine, gen_modring, gen_powerset};

    fn binary(k: usize, entries: &[Element]) -> OpTable {
        OpTable::new(2, k, entries).unwrap()
    }

    fn structure(f: OpTable, g: OpTable) -> FinStructure {
        FinStructure::new("t", f, g).unwrap()
    }

    /// Every pair i < j, straight from the definition.
    fn assoc_all_pairs_oracle(op: &OpTable) -> bool {
        let r = op.arity();
        let k = op.carrier_size();
        let mut t = Tuples::new(k, 2 * r - 1);
        loop {
            let a = t.current();
            let forms: Vec<Element> = (0..r)
                .map(|i| op.eval_nested(&a[..i], &a[i..i + r], &a[i + r..]).unwrap())
                .collect();
            for i in 0..r {
                for j in i + 1..r {
                    if forms[i] != forms[j] {
                        return false;
                    }
                }
            }
            if !t.advance() {
                return true;
            }
        }
    }

    fn permutations(r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(r - 1) {
            for at in 0..=p.len() {
                let mut q = p.clone();
                q.insert(at, r - 1);
                out.push(q);
            }
        }
        out
    }

    fn comm_all_perms_oracle(op: &OpTable) -> bool {
        let r = op.arity();
        let perms = permutations(r);
        let mut t = Tuples::new(op.carrier_size(), r);
        loop {
            let a = t.current();
            let base = op.eval(a).unwrap();
            for p in &perms {
                let permuted: Vec<Element> = p.iter().map(|&i| a[i]).collect();
                if op.eval(&permuted).unwrap() != base {
                    return false;
                }
            }
            if !t.advance() {
                return true;
            }
        }
    }

    /// Triple loop over slots, a-tuples and contexts.
    fn distributive_oracle(s: &FinStructure) -> Vec<usize> {
        let (k, m, n) = (s.k(), s.m(), s.n());
        let mut out = Vec::new();
        'slot: for t in 1..=n {
            let mut a = Tuples::new(k, m);
            loop {
                let mut b = Tuples::new(k, n);
                loop {
                    let ctx = b.current();
                    let with = |x: Element| {
                        let mut args = ctx.to_vec();
                        args[t - 1] = x;
                        s.g().eval(&args).unwrap()
                    };
                    let left = with(s.f().eval(a.current()).unwrap());
                    let parts: Vec<Element> = a.current().iter().map(|&x| with(x)).collect();
                    if left != s.f().eval(&parts).unwrap() {
                        continue 'slot;
                    }
                    if !b.advance() {
                        break;
                    }
                }
                if !a.advance() {
                    break;
                }
            }
            out.push(t);
        }
        out
    }

    #[test]
    fn associativity_examples() {
        assert!(check_associative(&binary(2, &[0, 1, 1, 1])).holds);
        let nand = check_associative(&binary(2, &[1, 1, 1, 0]));
        assert_eq!(
            nand.witness,
            Some(Witness::Associativity { i: 1, j: 2, args: vec![0, 0, 1], left: 0, right: 1 })
        );
        let z3_mul = OpTable::from_fn(2, 3, |a| a[0] * a[1] % 3).unwrap();
        assert!(check_associative(&z3_mul).holds);
    }

    #[test]
    fn associativity_reduction_matches_all_pairs() {
        for code in 0..16usize {
            let entries: Vec<Element> = (0..4).map(|b| (code >> b) & 1).collect();
            let op = binary(2, &entries);
            assert_eq!(check_associative(&op).holds, assoc_all_pairs_oracle(&op), "table {entries:?}");
        }
        // every ternary table on {0,1}
        for code in 0..256usize {
            let entries: Vec<Element> = (0..8).map(|b| (code >> b) & 1).collect();
            let op = OpTable::new(3, 2, &entries).unwrap();
            assert_eq!(check_associative(&op).holds, assoc_all_pairs_oracle(&op), "table {entries:?}");
        }
    }

    #[test]
    fn commutativity_examples() {
        assert!(check_commutative(&binary(2, &[0, 1, 1, 1])).holds);
        let proj = check_commutative(&binary(2, &[0, 0, 1, 1]));
        assert_eq!(
            proj.witness,
            Some(Witness::Commutativity { swap: (1, 2), args: vec![0, 1], left: 0, right: 1 })
        );
        assert!(check_commutative(&OpTable::from_fn(2, 3, |a| (a[0] + a[1]) % 3).unwrap()).holds);
    }

    #[test]
    fn commutativity_reduction_matches_all_permutations() {
        for code in 0..256usize {
            let entries: Vec<Element> = (0..8).map(|b| (code >> b) & 1).collect();
            let op = OpTable::new(3, 2, &entries).unwrap();
            assert_eq!(check_commutative(&op).holds, comm_all_perms_oracle(&op), "table {entries:?}");
        }
    }

    #[test]
    fn distributivity_examples() {
        let b2 = gen_powerset(1, 2, 2).unwrap();
        assert!(check_t_distributive(&b2, 1).unwrap().holds);

        let affine = gen_affine(3).unwrap();
        let right = check_t_distributive(&affine, 1).unwrap();
        assert!(!right.holds);
        // first violation in scan order: a = (0,0), context = ((0,0), (0,1))
        assert_eq!(
            right.witness,
            Some(Witness::Distributivity { t: 1, a: vec![0, 0], context: vec![0, 1], left: 1, right: 2 })
        );
        assert!(check_t_distributive(&affine, 3).unwrap().holds);
        assert_eq!(
            check_t_distributive(&affine, 4),
            Err(Error::PositionOutOfRange { position: 4, max: 3 })
        );
        assert!(check_t_distributive(&affine, 0).is_err());
    }

    #[test]
    fn affine_right_distributivity_counterexample_by_hand() {
        // a_1 = a_2 = (0,1), b_2 = (1,1), b_3 = (0,1)
        let s = gen_affine(3).unwrap();
        let (a, b2, b3) = (1, 4, 1);
        let left = s.g().eval(&[s.f().eval(&[a, a]).unwrap(), b2, b3]).unwrap();
        let part = s.g().eval(&[a, b2, b3]).unwrap();
        let right = s.f().eval(&[part, part]).unwrap();
        assert_eq!((left, right), (1, 2));
    }

    #[test]
    fn identity_and_zero_examples() {
        assert_eq!(find_f_identities(&gen_modring(4, 2, 2).unwrap()), vec![0]);
        assert_eq!(find_f_identities(&gen_powerset(1, 2, 2).unwrap()), vec![0]);
        let nand = structure(binary(2, &[1, 1, 1, 0]), binary(2, &[0, 0, 0, 1]));
        assert_eq!(find_f_identities(&nand), Vec::<Element>::new());

        assert_eq!(find_g_zeros(&gen_powerset(1, 2, 2).unwrap()), vec![0]);
        let affine = gen_affine(3).unwrap();
        assert_eq!(find_g_zeros(&affine), Vec::<Element>::new());
        assert_eq!(affine.g().eval(&[0, 1, 1]).unwrap(), 1);
        assert_eq!(find_g_zeros(&gen_modring(5, 2, 2).unwrap()), vec![0]);

        assert_eq!(find_g_identities(&gen_modring(5, 2, 2).unwrap()), vec![1]);
        assert_eq!(find_g_identities(&affine), vec![3]);
        assert_eq!(find_g_identities(&gen_powerset(2, 2, 2).unwrap()), vec![3]);
    }

    #[test]
    fn classify_examples() {
        let p = classify(&gen_powerset(2, 2, 3).unwrap());
        assert_eq!(p.t_snr, vec![1, 2, 3]);
        assert!(p.is_semiring);
        assert_eq!(p.absorbing_zeros, vec![0]);
        assert_eq!(p.g_identities, vec![3]);

        let a = classify(&gen_affine(3).unwrap());
        assert!(a.f_associative.holds && a.g_associative.holds);
        assert_eq!(a.distributive_positions, vec![3]);
        assert!(a.is_left_snr);
        assert!(!a.is_right_snr);
        assert!(!a.is_semiring);
        assert_eq!(a.g_identities, vec![3]);
        assert!(a.absorbing_zeros.is_empty());

        let z6 = classify(&gen_modring(6, 2, 2).unwrap());
        assert!(z6.is_semiring);
        assert_eq!(z6.t_snr, vec![1, 2]);
        assert_eq!(z6.g_identities, vec![1]);
    }

    #[test]
    fn non_associative_structure_has_no_snr_positions() {
        let nand = structure(binary(2, &[1, 1, 1, 0]), binary(2, &[0, 0, 0, 1]));
        let r = classify(&nand);
        assert!(!r.f_associative.holds);
        assert!(r.t_snr.is_empty());
        assert!(!r.is_left_snr && !r.is_right_snr && !r.is_semiring);
    }

    #[test]
    fn distributive_positions_match_oracle_on_generated_structures() {
        let mut corpus = vec![gen_affine(2).unwrap(), gen_affine(3).unwrap()];
        for s in 0..=2 {
            corpus.push(gen_powerset(s, 2, 3).unwrap());
            corpus.push(gen_powerset(s, 3, 2).unwrap());
        }
        for q in 1..=5 {
            corpus.push(gen_modring(q, 2, 2).unwrap());
            corpus.push(gen_modring(q, 3, 2).unwrap());
        }
        // a structure where distributivity fails: swap the roles of + and x on Z3
        let z3 = gen_modring(3, 2, 2).unwrap();
        corpus.push(structure(z3.g().clone(), z3.f().clone()));
        for s in &corpus {
            let report = classify(s);
            assert_eq!(report.distributive_positions, distributive_oracle(s), "{}", s.name());
            if report.is_semiring {
                assert_eq!(report.t_snr, (1..=s.n()).collect::<Vec<_>>());
            }
        }
    }
}
