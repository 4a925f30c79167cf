//! Verdicts and the counterexample records carried by failed checks.

use std::fmt;

use serde::Serialize;

use crate::carrier::{Element, Op};

/// A counterexample. Every variant carries both evaluated sides so it can be
/// audited without re-running the sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The bracketings at 1-based positions `i` and `j` of a `(2r-1)`-tuple differ.
    Associativity { i: usize, j: usize, args: Vec<Element>, left: Element, right: Element },
    /// Swapping 1-based positions `swap.0` and `swap.1` changes the value.
    Commutativity { swap: (usize, usize), args: Vec<Element>, left: Element, right: Element },
    /// `g(b.., f(a), ..b)` against `f(g(b.., a_1, ..b), ...)`; `context` omits slot `t`.
    Distributivity { t: usize, a: Vec<Element>, context: Vec<Element>, left: Element, right: Element },
    /// An operation maps a tuple drawn from the subset outside of it.
    Escape { op: Op, args: Vec<Element>, image: Element },
    /// `g` with a subset element in slot `position` lands outside the subset.
    Absorption { position: usize, args: Vec<Element>, image: Element },
    /// `map(op(args))` against `op'(map(args))`.
    Homomorphism { op: Op, args: Vec<Element>, left: Element, right: Element },
    /// Replacing `args[position-1]` by a block-mate moves the result to another block.
    Congruence {
        op: Op,
        position: usize,
        args: Vec<Element>,
        replacement: Element,
        left: Element,
        right: Element,
        left_block: usize,
        right_block: usize,
    },
    /// The five inverse-identity terms for `unit`, in the order
    /// `g(x,x⁻¹,c)`, `g(x⁻¹,x,c)`, `g(c,x,x⁻¹)`, `g(c,x⁻¹,x)`, `g(c,e,e)`.
    InverseIdentities { unit: Element, inverse: Element, context: Vec<Element>, values: Vec<Element> },
    /// Inserting the unity at slot `i` and at slot `j` of `context` gives different values.
    Shift { i: usize, j: usize, context: Vec<Element>, left: Element, right: Element },
    /// An ideal that contains the unity but is not the whole carrier.
    ProperIdeal { unity: Element, ideal: Vec<Element> },
}

fn tuple(args: &[Element]) -> String {
    let inner: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    format!("({})", inner.join(","))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Associativity { i, j, args, left, right } => {
                write!(f, "i={i} j={j} args={} left={left} right={right}", tuple(args))
            }
            Witness::Commutativity { swap, args, left, right } => {
                write!(f, "swap=({},{}) args={} left={left} right={right}", swap.0, swap.1, tuple(args))
            }
            Witness::Distributivity { t, a, context, left, right } => {
                write!(f, "t={t} a={} context={} left={left} right={right}", tuple(a), tuple(context))
            }
            Witness::Escape { op, args, image } => write!(f, "op={op} args={} image={image}", tuple(args)),
            Witness::Absorption { position, args, image } => {
                write!(f, "position={position} args={} image={image}", tuple(args))
            }
            Witness::Homomorphism { op, args, left, right } => {
                write!(f, "op={op} args={} left={left} right={right}", tuple(args))
            }
            Witness::Congruence { op, position, args, replacement, left, right, left_block, right_block } => write!(
                f,
                "op={op} position={position} args={} replacement={replacement} left={left} right={right} left_block={left_block} right_block={right_block}",
                tuple(args)
            ),
            Witness::InverseIdentities { unit, inverse, context, values } => {
                write!(f, "unit={unit} inverse={inverse} context={} values={}", tuple(context), tuple(values))
            }
            Witness::Shift { i, j, context, left, right } => {
                write!(f, "i={i} j={j} context={} left={left} right={right}", tuple(context))
            }
            Witness::ProperIdeal { unity, ideal } => write!(f, "unity={unity} ideal={}", tuple(ideal)),
        }
    }
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    pub fn pass() -> Self {
        AxiomVerdict { holds: true, witness: None }
    }

    pub fn fail(witness: Witness) -> Self {
        AxiomVerdict { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or_else(Self::pass, Self::fail)
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.witness, self.holds) {
            (Some(w), _) => write!(f, "fails  witness {w}"),
            (None, true) => write!(f, "holds"),
            (None, false) => write!(f, "fails"),
        }
    }
}
