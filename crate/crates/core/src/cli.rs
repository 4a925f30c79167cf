//! The `snr` command line: argument parsing, dispatch and report rendering.
//!
//! [`run_command`] is the whole program minus process I/O, so it can be
//! driven from tests. Exit codes: 0 holds or succeeded, 1 a checked property
//! fails, 2 bad usage or input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::axioms::{classify, find_g_identities};
use crate::carrier::{Element, FinStructure};
use crate::congruences::{congruence_closure, enumerate_congruences, is_congruence, parse_groups, quotient, Partition};
use crate::constructions::{direct_product, gen_affine, gen_modring, gen_powerset};
use crate::error::Error;
use crate::ideals::{enumerate_ideals, ideal_closure, Positions};
use crate::io::{parse_structure, serialize_structure};
use crate::morphisms::{classify_morphism, find_homomorphisms};
use crate::substructures::{enumerate_subs, sub_closure, Subset};
use crate::units::{check_unity_theorems, units_set};
use crate::verdict::AxiomVerdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "snr", version, about = "Check and analyze finite (m,n)-seminearrings given as operation tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check associativity, commutativity and distributivity; fails unless
    /// the structure is a t-(m,n)-seminearring for some t
    Verify {
        file: PathBuf,
        /// Require this distributive slot instead of any
        #[arg(long)]
        position: Option<usize>,
        /// Also require this partition (e.g. `0,2|1,3`) to be a congruence
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Report every axiom flag, special elements and the t-seminearring slots
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List every subseminearring
    Subs {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List every ideal, or every i-ideal for one slot
    Ideals {
        file: PathBuf,
        #[arg(long)]
        position: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Units, inverses and the unity theorems
    Units {
        file: PathBuf,
        /// Defaults to the least g-identity
        #[arg(long)]
        unity: Option<Element>,
        #[arg(long)]
        json: bool,
    },
    /// Every homomorphism from the first structure to the second
    Homs {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List every congruence, finest first
    Congruences {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the factor structure by a congruence
    Quotient {
        file: PathBuf,
        #[arg(long)]
        partition: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smallest subseminearring, ideal or congruence containing a seed
    Closure {
        file: PathBuf,
        /// Elements `0,2` for sub and ideal; groups `0,2|1,3` to identify for congruence
        #[arg(long)]
        seed: String,
        #[arg(long, value_enum)]
        kind: ClosureKind,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated structure
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Subsets of a `base`-element set under union and intersection
    Powerset {
        base: usize,
        m: usize,
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integers mod q under m-fold addition and n-fold multiplication
    Modring {
        q: usize,
        m: usize,
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pairs over Z_q with a ternary product that is left but not right distributive
    Affine {
        q: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Direct product of two structure files
    Product {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ClosureKind {
    Sub,
    Ideal,
    Congruence,
}

/// One command's findings, rendered either as aligned text or as JSON.
struct Report {
    name: String,
    k: usize,
    m: usize,
    n: usize,
    verdicts: Vec<(String, AxiomVerdict)>,
    sets: Vec<(String, Value, String)>,
    ok: bool,
}

impl Report {
    fn new(s: &FinStructure) -> Self {
        Report { name: s.name().to_string(), k: s.k(), m: s.m(), n: s.n(), verdicts: Vec::new(), sets: Vec::new(), ok: true }
    }

    fn verdict(&mut self, key: impl Into<String>, v: AxiomVerdict) {
        self.verdicts.push((key.into(), v));
    }

    fn flag(&mut self, key: &str, holds: bool) {
        self.verdict(key, AxiomVerdict { holds, witness: None });
    }

    fn elements(&mut self, key: &str, xs: &[Element]) {
        self.sets.push((key.to_string(), json!(xs), braces(xs)));
    }

    fn family(&mut self, key: &str, members: &[Subset]) {
        let lists: Vec<Vec<Element>> = members.iter().map(|s| s.elements()).collect();
        let mut human = format!("{} found", members.len());
        for l in &lists {
            let _ = write!(human, "\n{}", braces(l));
        }
        self.sets.push((key.to_string(), json!(lists), human));
    }

    fn partitions(&mut self, key: &str, parts: &[Partition]) {
        let mut human = format!("{} found", parts.len());
        for p in parts {
            let _ = write!(human, "\n{p}");
        }
        self.sets.push((key.to_string(), json!(parts), human));
    }

    fn human(&self) -> String {
        let mut out = format!("structure {}  k={} m={} n={}\n", self.name, self.k, self.m, self.n);
        if !self.verdicts.is_empty() {
            out.push_str("verdicts\n");
            for (key, v) in &self.verdicts {
                let _ = writeln!(out, "  {key:<24}{v}");
            }
        }
        if !self.sets.is_empty() {
            out.push_str("sets\n");
            for (key, _, text) in &self.sets {
                let mut lines = text.lines();
                let _ = writeln!(out, "  {key:<24}{}", lines.next().unwrap_or(""));
                for line in lines {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        out
    }

    fn json(&self) -> String {
        let mut verdicts = Map::new();
        let mut witnesses = Vec::new();
        for (key, v) in &self.verdicts {
            verdicts.insert(key.clone(), Value::Bool(v.holds));
            if let Some(w) = &v.witness {
                let mut entry = Map::new();
                entry.insert("check".into(), Value::String(key.clone()));
                if let Value::Object(fields) = serde_json::to_value(w).expect("witness serializes") {
                    entry.extend(fields);
                }
                witnesses.push(Value::Object(entry));
            }
        }
        let sets: Map<String, Value> = self.sets.iter().map(|(k, v, _)| (k.clone(), v.clone())).collect();
        let doc = json!({
            "name": self.name,
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "verdicts": verdicts,
            "witnesses": witnesses,
            "sets": sets,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }

    fn emit(self, as_json: bool) -> Outcome {
        let text = if as_json { self.json() } else { self.human() };
        Outcome { code: if self.ok { 0 } else { 1 }, stdout: text }
    }
}

fn braces(xs: &[Element]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

struct Outcome {
    code: i32,
    stdout: String,
}

type Step<T> = std::result::Result<T, String>;

fn load(path: &Path) -> Step<FinStructure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_structure(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn input<T>(r: crate::Result<T>) -> Step<T> {
    r.map_err(|e: Error| e.to_string())
}

fn parse_elements(text: &str, k: usize) -> Step<Subset> {
    let groups = input(parse_groups(text))?;
    if groups.len() != 1 {
        return Err(format!("expected a comma-separated element list, found `{text}`"));
    }
    input(Subset::from_elements(groups[0].iter().copied(), k))
}

fn write_structure(s: &FinStructure, output: Option<&Path>) -> Step<Outcome> {
    let text = serialize_structure(s);
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(Outcome { code: 0, stdout: String::new() })
        }
        None => Ok(Outcome { code: 0, stdout: text }),
    }
}

fn verify(file: &Path, position: Option<usize>, partition: Option<&str>, as_json: bool) -> Step<Outcome> {
    let s = load(file)?;
    if let Some(t) = position {
        if t == 0 || t > s.n() {
            return Err(Error::PositionOutOfRange { position: t, max: s.n() }.to_string());
        }
    }
    let c = classify(&s);
    let mut r = Report::new(&s);
    r.verdict("f_associative", c.f_associative.clone());
    r.verdict("f_commutative", c.f_commutative.clone());
    r.verdict("g_associative", c.g_associative.clone());
    for (t, v) in &c.distributive {
        r.verdict(format!("distributive_{t}"), v.clone());
    }
    r.elements("t_snr", &c.t_snr);
    r.ok = match position {
        Some(t) => c.t_snr.contains(&t),
        None => !c.t_snr.is_empty(),
    };
    if let Some(text) = partition {
        let p = input(Partition::parse(text, s.k()))?;
        let v = input(is_congruence(&s, &p))?;
        r.ok &= v.holds;
        r.verdict("congruence", v);
    }
    Ok(r.emit(as_json))
}

fn classify_cmd(file: &Path, as_json: bool) -> Step<Outcome> {
    let s = load(file)?;
    let c = classify(&s);
    let mut r = Report::new(&s);
    r.verdict("f_associative", c.f_associative.clone());
    r.verdict("f_commutative", c.f_commutative.clone());
    r.verdict("g_associative", c.g_associative.clone());
    for (t, v) in &c.distributive {
        r.verdict(format!("distributive_{t}"), v.clone());
    }
    r.flag("is_right_snr", c.is_right_snr);
    r.flag("is_left_snr", c.is_left_snr);
    r.flag("is_semiring", c.is_semiring);
    r.elements("distributive_positions", &c.distributive_positions);
    r.elements("t_snr", &c.t_snr);
    r.elements("f_identities", &c.f_identities);
    r.elements("g_identities", &c.g_identities);
    r.elements("g_zeros", &c.g_zeros);
    r.elements("absorbing_zeros", &c.absorbing_zeros);
    Ok(r.emit(as_json))
}

fn units_cmd(file: &Path, unity: Option<Element>, as_json: bool) -> Step<Outcome> {
    let s = load(file)?;
    let mut r = Report::new(&s);
    let e = match unity {
        Some(e) => e,
        None => match find_g_identities(&s).first() {
            Some(&e) => e,
            None => {
                r.flag("has_unity", false);
                r.ok = false;
                return Ok(r.emit(as_json));
            }
        },
    };
    let units = input(units_set(&s, e))?;
    let theorems = input(check_unity_theorems(&s, e))?;
    r.verdict("inverse_identities", theorems.inverse_identities.clone());
    r.verdict("shift", theorems.shift.clone());
    r.verdict("unit_closure", theorems.unit_closure.clone());
    if let Some(v) = &theorems.unity_ideal {
        r.verdict("unity_ideal", v.clone());
    }
    r.ok = theorems.all_hold();
    r.elements("unity", &[e]);
    r.elements("units", &units.units);
    let pairs: Vec<[Element; 2]> = units.inverse_of.iter().map(|(&x, &y)| [x, y]).collect();
    let human: Vec<String> = pairs.iter().map(|[x, y]| format!("{x}->{y}")).collect();
    r.sets.push(("inverses".into(), json!(pairs), human.join(" ")));
    r.elements("multiple_inverses", &units.multiple_inverses);
    Ok(r.emit(as_json))
}

fn homs(file1: &Path, file2: &Path, limit: Option<usize>, as_json: bool) -> Step<Outcome> {
    let (s1, s2) = (load(file1)?, load(file2)?);
    let found = input(find_homomorphisms(&s1, &s2, limit))?;
    let mut r = Report::new(&s1);
    r.sets.push(("codomain".into(), json!(s2.name()), s2.name().to_string()));
    let mut entries = Vec::new();
    let mut human = format!("{} found", found.len());
    for psi in &found {
        let kind = input(classify_morphism(psi))?;
        let flags: Vec<&str> = [("mono", kind.mono), ("epi", kind.epi), ("iso", kind.iso)]
            .into_iter()
            .filter_map(|(name, on)| on.then_some(name))
            .collect();
        let _ = write!(human, "\n{psi}  [{}]", flags.join(" "));
        entries.push(json!({ "map": psi.map(), "mono": kind.mono, "epi": kind.epi, "iso": kind.iso }));
    }
    r.sets.push(("homomorphisms".into(), Value::Array(entries), human));
    Ok(r.emit(as_json))
}

fn quotient_cmd(file: &Path, partition: &str, output: Option<&Path>) -> Step<Outcome> {
    let s = load(file)?;
    let p = input(Partition::parse(partition, s.k()))?;
    let v = input(is_congruence(&s, &p))?;
    if !v.holds {
        let mut r = Report::new(&s);
        r.verdict("congruence", v);
        r.ok = false;
        return Ok(r.emit(false));
    }
    let q = input(quotient(&s, &p))?;
    write_structure(&q, output)
}

fn closure(file: &Path, seed: &str, kind: ClosureKind, as_json: bool) -> Step<Outcome> {
    let s = load(file)?;
    let mut r = Report::new(&s);
    match kind {
        ClosureKind::Sub => {
            let c = input(sub_closure(&s, parse_elements(seed, s.k())?))?;
            r.elements("closure", &c.elements());
        }
        ClosureKind::Ideal => {
            let c = input(ideal_closure(&s, parse_elements(seed, s.k())?))?;
            r.elements("closure", &c.elements());
        }
        ClosureKind::Congruence => {
            let groups = input(parse_groups(seed))?;
            let pairs: Vec<(Element, Element)> =
                groups.iter().flat_map(|g| g.iter().map(move |&x| (g[0], x))).collect();
            let c = input(congruence_closure(&s, &pairs))?;
            r.sets.push(("closure".into(), json!(c), c.to_string()));
        }
    }
    Ok(r.emit(as_json))
}

fn gen(family: &GenCommand) -> Step<Outcome> {
    let (s, output) = match family {
        GenCommand::Powerset { base, m, n, output } => (input(gen_powerset(*base, *m, *n))?, output),
        GenCommand::Modring { q, m, n, output } => (input(gen_modring(*q, *m, *n))?, output),
        GenCommand::Affine { q, output } => (input(gen_affine(*q))?, output),
        GenCommand::Product { file1, file2, output } => (input(direct_product(&load(file1)?, &load(file2)?))?, output),
    };
    write_structure(&s, output.as_deref())
}

fn dispatch(command: &Command) -> Step<Outcome> {
    match command {
        Command::Verify { file, position, partition, json } => verify(file, *position, partition.as_deref(), *json),
        Command::Classify { file, json } => classify_cmd(file, *json),
        Command::Subs { file, json } => {
            let s = load(file)?;
            let subs = input(enumerate_subs(&s))?;
            let mut r = Report::new(&s);
            r.family("subseminearrings", &subs);
            Ok(r.emit(*json))
        }
        Command::Ideals { file, position, json } => {
            let s = load(file)?;
            let positions = match position {
                Some(t) => Positions::Only(vec![*t]),
                None => Positions::All,
            };
            let ideals = input(enumerate_ideals(&s, &positions))?;
            let slots: Vec<usize> = match position {
                Some(t) => vec![*t],
                None => (1..=s.n()).collect(),
            };
            let mut r = Report::new(&s);
            r.elements("positions", &slots);
            r.family("ideals", &ideals);
            Ok(r.emit(*json))
        }
        Command::Units { file, unity, json } => units_cmd(file, *unity, *json),
        Command::Homs { file1, file2, limit, json } => homs(file1, file2, *limit, *json),
        Command::Congruences { file, json } => {
            let s = load(file)?;
            let found = input(enumerate_congruences(&s))?;
            let mut r = Report::new(&s);
            r.partitions("congruences", &found);
            Ok(r.emit(*json))
        }
        Command::Quotient { file, partition, output } => quotient_cmd(file, partition, output.as_deref()),
        Command::Closure { file, seed, kind, json } => closure(file, seed, *kind, *json),
        Command::Gen { family } => gen(family),
    }
}

/// Run one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                CommandOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(Outcome { code, stdout }) => CommandOutput { code, stdout, stderr: String::new() },
        Err(message) => CommandOutput { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandOutput {
        run_command(std::iter::once("snr").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run(&["frobnicate"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("Usage"));
        assert_eq!(run(&["verify", "/nonexistent/file.snr"]).code, 2);
        assert_eq!(run(&["gen", "modring", "0", "2", "2"]).code, 2);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn gen_writes_canonical_text() {
        let out = run(&["gen", "powerset", "1", "2", "2"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "structure powerset_1_2_2\ncarrier 2\nf 2\n0 1\n1 1\ng 2\n0 0\n0 1\nend\n");
    }

    #[test]
    fn human_report_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z4.snr");
        assert_eq!(run(&["gen", "modring", "4", "2", "2", "-o", path.to_str().unwrap()]).code, 0);
        let out = run(&["congruences", path.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        assert_eq!(
            out.stdout,
            "structure modring_4_2_2  k=4 m=2 n=2\nsets\n  congruences             3 found\n    0|1|2|3\n    0,2|1,3\n    0,1,2,3\n"
        );
    }
}
