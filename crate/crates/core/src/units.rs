//! Unities, g-inverses and the identities that hold around them.
//!
//! Every check takes the unity explicitly; a structure may have several.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{g_with_slot, identities_of};
use crate::carrier::{Element, FinStructure, Op, Tuples};
use crate::error::{Error, Result};
use crate::ideals::{enumerate_ideals, Positions};
use crate::substructures::{Subset, ENUMERATION_LIMIT};
use crate::verdict::{AxiomVerdict, Witness};

fn require_unity(s: &FinStructure, e: Element) -> Result<()> {
    if e >= s.k() {
        return Err(Error::ArgOutOfRange { value: e, k: s.k() });
    }
    if identities_of(s.g()).contains(&e) {
        Ok(())
    } else {
        Err(Error::NotGIdentity(e))
    }
}

/// `g(a, b, e^(n-2))`.
fn pair(s: &FinStructure, e: Element, a: Element, b: Element) -> Element {
    let mut args = vec![e; s.n()];
    args[0] = a;
    args[1] = b;
    s.g().apply(&args)
}

fn inverse_unchecked(s: &FinStructure, e: Element, x: Element) -> Option<Element> {
    (0..s.k()).find(|&a| pair(s, e, a, x) == e && pair(s, e, x, a) == e)
}

/// Least `a` with `g(a, x, e^(n-2)) = g(x, a, e^(n-2)) = e`.
pub fn g_inverse(s: &FinStructure, e: Element, x: Element) -> Result<Option<Element>> {
    require_unity(s, e)?;
    if x >= s.k() {
        return Err(Error::ArgOutOfRange { value: x, k: s.k() });
    }
    Ok(inverse_unchecked(s, e, x))
}

/// Invertible elements with respect to one unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitsReport {
    pub unity: Element,
    pub units: Vec<Element>,
    /// Least inverse of each unit.
    pub inverse_of: BTreeMap<Element, Element>,
    /// Units that have more than one inverse.
    pub multiple_inverses: Vec<Element>,
}

impl UnitsReport {
    pub fn inverse(&self, x: Element) -> Option<Element> {
        self.inverse_of.get(&x).copied()
    }

    pub fn is_unit(&self, x: Element) -> bool {
        self.inverse_of.contains_key(&x)
    }
}

pub fn units_set(s: &FinStructure, e: Element) -> Result<UnitsReport> {
    require_unity(s, e)?;
    let mut inverse_of = BTreeMap::new();
    let mut multiple_inverses = Vec::new();
    for x in 0..s.k() {
        let mut inverses = (0..s.k()).filter(|&a| pair(s, e, a, x) == e && pair(s, e, x, a) == e);
        if let Some(least) = inverses.next() {
            inverse_of.insert(x, least);
            if inverses.next().is_some() {
                multiple_inverses.push(x);
            }
        }
    }
    Ok(UnitsReport { unity: e, units: inverse_of.keys().copied().collect(), inverse_of, multiple_inverses })
}

fn inverse_terms(s: &FinStructure, e: Element, x: Element, inv: Element, context: &[Element]) -> Vec<Element> {
    let g = s.g();
    let front = |a: Element, b: Element| {
        let mut args = vec![a, b];
        args.extend_from_slice(context);
        g.apply(&args)
    };
    let back = |a: Element, b: Element| {
        let mut args = context.to_vec();
        args.extend([a, b]);
        g.apply(&args)
    };
    vec![front(x, inv), front(inv, x), back(x, inv), back(inv, x), back(e, e)]
}

/// The five-way equality `g(x,x⁻¹,c) = g(x⁻¹,x,c) = g(c,x,x⁻¹) = g(c,x⁻¹,x) = g(c,e,e)`
/// for a unit `x` and an `(n-2)`-context `c`.
pub fn check_inverse_identities(s: &FinStructure, e: Element, x: Element, context: &[Element]) -> Result<AxiomVerdict> {
    require_unity(s, e)?;
    if context.len() != s.n() - 2 {
        return Err(Error::ArityMismatch { expected: s.n() - 2, found: context.len() });
    }
    if let Some(&c) = context.iter().find(|&&c| c >= s.k()) {
        return Err(Error::ArgOutOfRange { value: c, k: s.k() });
    }
    let inv = g_inverse(s, e, x)?.ok_or(Error::NotAUnit(x))?;
    let values = inverse_terms(s, e, x, inv, context);
    let holds = values.windows(2).all(|w| w[0] == w[1]);
    Ok(if holds {
        AxiomVerdict::pass()
    } else {
        AxiomVerdict::fail(Witness::InverseIdentities { unit: x, inverse: inv, context: context.to_vec(), values })
    })
}

fn check_shift_positions(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j {
        return Err(Error::PositionOutOfRange { position: i, max: j.saturating_sub(1) });
    }
    if j > n {
        return Err(Error::PositionOutOfRange { position: j, max: n });
    }
    Ok(())
}

/// `g(a_2^i, e, a_(i+1)^n) = g(a_2^j, e, a_(j+1)^n)` for an `(n-1)`-context.
pub fn check_shift_identity(s: &FinStructure, e: Element, context: &[Element], i: usize, j: usize) -> Result<AxiomVerdict> {
    require_unity(s, e)?;
    check_shift_positions(s.n(), i, j)?;
    if context.len() != s.n() - 1 {
        return Err(Error::ArityMismatch { expected: s.n() - 1, found: context.len() });
    }
    if let Some(&c) = context.iter().find(|&&c| c >= s.k()) {
        return Err(Error::ArgOutOfRange { value: c, k: s.k() });
    }
    Ok(AxiomVerdict::from_witness(shift_mismatch(s, e, context, i, j)))
}

fn shift_mismatch(s: &FinStructure, e: Element, context: &[Element], i: usize, j: usize) -> Option<Witness> {
    let mut buf = Vec::with_capacity(s.n());
    let left = g_with_slot(s.g(), context, i, e, &mut buf);
    let right = g_with_slot(s.g(), context, j, e, &mut buf);
    (left != right).then(|| Witness::Shift { i, j, context: context.to_vec(), left, right })
}

/// `g(a_n⁻¹, ..., a_1⁻¹)`, checked to be a two-sided inverse of `g(a_1^n)`.
pub fn product_inverse(s: &FinStructure, e: Element, args: &[Element]) -> Result<Element> {
    require_unity(s, e)?;
    if args.len() != s.n() {
        return Err(Error::ArityMismatch { expected: s.n(), found: args.len() });
    }
    let mut reversed = Vec::with_capacity(args.len());
    for &a in args.iter().rev() {
        if a >= s.k() {
            return Err(Error::ArgOutOfRange { value: a, k: s.k() });
        }
        reversed.push(inverse_unchecked(s, e, a).ok_or(Error::NotAUnit(a))?);
    }
    let product = s.g().apply(args);
    let candidate = s.g().apply(&reversed);
    if pair(s, e, product, candidate) == e && pair(s, e, candidate, product) == e {
        Ok(candidate)
    } else {
        Err(Error::Invariant(format!("{candidate} is not a g-inverse of {product}")))
    }
}

/// Exhaustive runs of the unity theorems for one unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnityTheorems {
    pub unity: Element,
    /// Five-way inverse identities for every unit and every context.
    pub inverse_identities: AxiomVerdict,
    /// Shift identity for every context and every `i < j`.
    pub shift: AxiomVerdict,
    /// Every n-tuple of units has a unit product with the reversed-inverse inverse.
    pub unit_closure: AxiomVerdict,
    /// Every ideal containing the unity is the whole carrier; `None` past the
    /// enumeration limit.
    pub unity_ideal: Option<AxiomVerdict>,
}

impl UnityTheorems {
    pub fn all_hold(&self) -> bool {
        self.inverse_identities.holds
            && self.shift.holds
            && self.unit_closure.holds
            && self.unity_ideal.as_ref().is_none_or(|v| v.holds)
    }
}

pub fn check_unity_theorems(s: &FinStructure, e: Element) -> Result<UnityTheorems> {
    let report = units_set(s, e)?;
    let (k, n) = (s.k(), s.n());

    let inverse_identities = AxiomVerdict::from_witness(report.units.iter().find_map(|&x| {
        let inv = report.inverse(x).expect("unit has an inverse");
        Tuples::find_map(k, n - 2, |ctx| {
            let values = inverse_terms(s, e, x, inv, ctx);
            (!values.windows(2).all(|w| w[0] == w[1]))
                .then(|| Witness::InverseIdentities { unit: x, inverse: inv, context: ctx.to_vec(), values })
        })
    }));

    let shift = AxiomVerdict::from_witness(Tuples::find_map(k, n - 1, |ctx| {
        (1..=n).find_map(|i| (i + 1..=n).find_map(|j| shift_mismatch(s, e, ctx, i, j)))
    }));

    let units = &report.units;
    let mut args = vec![0; n];
    let unit_closure = AxiomVerdict::from_witness(Tuples::find_map(units.len(), n, |idx| {
        for (slot, &i) in args.iter_mut().zip(idx) {
            *slot = units[i];
        }
        let image = s.g().apply(&args);
        let ok = report.is_unit(image) && product_inverse(s, e, &args).is_ok();
        (!ok).then(|| Witness::Escape { op: Op::G, args: args.clone(), image })
    }));

    let unity_ideal = if k <= ENUMERATION_LIMIT {
        let ideals = enumerate_ideals(s, &Positions::All)?;
        let full = Subset::full(k);
        let proper = ideals.into_iter().find(|i| i.contains(e) && *i != full);
        Some(AxiomVerdict::from_witness(
            proper.map(|i| Witness::ProperIdeal { unity: e, ideal: i.elements() }),
        ))
    } else {
        None
    };

    Ok(UnityTheorems { unity: e, inverse_identities, shift, unit_closure, unity_ideal })
}
