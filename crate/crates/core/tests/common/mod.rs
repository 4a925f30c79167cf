#![allow(dead_code)]

use std::path::{Path, PathBuf};

use snr_core::constructions::{direct_product, gen_affine, gen_modring, gen_powerset};
use snr_core::{run_command, serialize_structure, CommandOutput, FinStructure};

/// Structures every cross-cutting test sweeps over.
pub fn corpus() -> Vec<FinStructure> {
    let mut out = vec![
        gen_powerset(1, 2, 2).unwrap(),
        gen_powerset(2, 2, 2).unwrap(),
        gen_powerset(2, 2, 3).unwrap(),
        gen_powerset(3, 3, 2).unwrap(),
    ];
    for q in 1..=8 {
        out.push(gen_modring(q, 2, 2).unwrap());
    }
    out.push(gen_modring(5, 2, 3).unwrap());
    out.push(gen_modring(4, 3, 3).unwrap());
    out.push(gen_affine(2).unwrap());
    out.push(gen_affine(3).unwrap());
    out.push(direct_product(&gen_modring(2, 2, 2).unwrap(), &gen_powerset(1, 2, 2).unwrap()).unwrap());
    out.push(direct_product(&gen_modring(3, 2, 2).unwrap(), &gen_modring(2, 2, 2).unwrap()).unwrap());
    out
}

/// NAND as addition, meet as multiplication.
pub const NAND: &str = "structure nand\ncarrier 2\nf 2\n1 1\n1 0\ng 2\n0 0\n0 1\nend\n";

pub fn run(args: &[&str]) -> CommandOutput {
    run_command(std::iter::once("snr").chain(args.iter().copied()))
}

pub fn write(dir: &Path, file: &str, text: &str) -> PathBuf {
    let path = dir.join(file);
    std::fs::write(&path, text).unwrap();
    path
}

pub fn write_structure(dir: &Path, s: &FinStructure) -> PathBuf {
    write(dir, &format!("{}.snr", s.name()), &serialize_structure(s))
}
