//! Example structures: power sets, residue rings, the affine pair structure
//! over `Z_q`, and direct products.

use crate::carrier::{FinStructure, OpTable, MAX_CARRIER};
use crate::error::{Error, Result};

fn cap(k: usize, what: &str) -> Result<()> {
    if k == 0 || k > MAX_CARRIER {
        Err(Error::SizeCap(format!("{what} has carrier {k}, limit {MAX_CARRIER}")))
    } else {
        Ok(())
    }
}

/// Subsets of a `base_size`-element set as bitmasks; `f` is union, `g` is intersection.
pub fn gen_powerset(base_size: usize, m: usize, n: usize) -> Result<FinStructure> {
    if base_size > 6 {
        return Err(Error::SizeCap(format!("power set of a {base_size}-element set exceeds {MAX_CARRIER}")));
    }
    let k = 1usize << base_size;
    let full = k - 1;
    let f = OpTable::from_fn(m, k, |a| a.iter().fold(0, |acc, &x| acc | x))?;
    let g = OpTable::from_fn(n, k, |a| a.iter().fold(full, |acc, &x| acc & x))?;
    FinStructure::new(format!("powerset_{base_size}_{m}_{n}"), f, g)
}

/// `Z_q` with m-fold sum and n-fold product.
pub fn gen_modring(q: usize, m: usize, n: usize) -> Result<FinStructure> {
    cap(q, "modring")?;
    let f = OpTable::from_fn(m, q, |a| a.iter().sum::<usize>() % q)?;
    let g = OpTable::from_fn(n, q, |a| a.iter().fold(1 % q, |acc, &x| acc * x % q))?;
    FinStructure::new(format!("modring_{q}_{m}_{n}"), f, g)
}

/// Pairs `(a, b)` over `Z_q`, encoded `q·a + b`, with componentwise addition
/// and `g((a1,b1),(a2,b2),(a3,b3)) = (a1·a2·a3, b1·a2·a3 + b2·a3 + b3)`.
pub fn gen_affine(q: usize) -> Result<FinStructure> {
    if q < 2 {
        return Err(Error::SizeCap(format!("affine structure needs q >= 2, got {q}")));
    }
    cap(q * q, "affine structure")?;
    let k = q * q;
    let split = |x: usize| (x / q, x % q);
    let f = OpTable::from_fn(2, k, |args| {
        let ((a1, b1), (a2, b2)) = (split(args[0]), split(args[1]));
        q * ((a1 + a2) % q) + (b1 + b2) % q
    })?;
    let g = OpTable::from_fn(3, k, |args| {
        let ((a1, b1), (a2, b2), (a3, b3)) = (split(args[0]), split(args[1]), split(args[2]));
        let a = a1 * a2 * a3 % q;
        let b = (b1 * a2 * a3 + b2 * a3 + b3) % q;
        q * a + b
    })?;
    FinStructure::new(format!("affine_{q}"), f, g)
}

/// Componentwise product; the pair `(x, y)` is encoded `k2·x + y`.
pub fn direct_product(s1: &FinStructure, s2: &FinStructure) -> Result<FinStructure> {
    if s1.m() != s2.m() || s1.n() != s2.n() {
        return Err(Error::DomainMismatch(format!(
            "arities ({},{}) and ({},{}) differ",
            s1.m(),
            s1.n(),
            s2.m(),
            s2.n()
        )));
    }
    let (k1, k2) = (s1.k(), s2.k());
    cap(k1 * k2, "product")?;
    let k = k1 * k2;
    let lift = |t1: &OpTable, t2: &OpTable| {
        let mut left = vec![0; t1.arity()];
        let mut right = vec![0; t1.arity()];
        OpTable::from_fn(t1.arity(), k, |args| {
            for (i, &p) in args.iter().enumerate() {
                left[i] = p / k2;
                right[i] = p % k2;
            }
            k2 * t1.apply(&left) + t2.apply(&right)
        })
    };
    FinStructure::new(
        format!("{}_x_{}", s1.name(), s2.name()),
        lift(s1.f(), s2.f())?,
        lift(s1.g(), s2.g())?,
    )
}
