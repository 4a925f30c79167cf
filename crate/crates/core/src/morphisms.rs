//! Homomorphisms between structures of equal arities.

use serde::Serialize;

use crate::carrier::{decode_index, Element, FinStructure, Op, OpTable, Tuples};
use crate::congruences::{is_congruence, Partition};
use crate::error::{Error, Result};
use crate::ideals::is_ideal;
use crate::substructures::{is_subseminearring, Subset};
use crate::verdict::{AxiomVerdict, Witness};

/// Without an explicit limit, searches over more total maps than this are refused.
pub const SEARCH_LIMIT: u128 = 1 << 24;

/// A total map from the domain carrier into the codomain carrier.
#[derive(Debug, Clone)]
pub struct Morphism<'a> {
    domain: &'a FinStructure,
    codomain: &'a FinStructure,
    map: Vec<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MorphismKind {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

fn check_arities(domain: &FinStructure, codomain: &FinStructure) -> Result<()> {
    if domain.m() != codomain.m() {
        return Err(Error::ArityMismatch { expected: domain.m(), found: codomain.m() });
    }
    if domain.n() != codomain.n() {
        return Err(Error::ArityMismatch { expected: domain.n(), found: codomain.n() });
    }
    Ok(())
}

impl<'a> Morphism<'a> {
    pub fn new(domain: &'a FinStructure, codomain: &'a FinStructure, map: Vec<Element>) -> Result<Self> {
        check_arities(domain, codomain)?;
        if map.len() != domain.k() {
            return Err(Error::TableLength { expected: domain.k(), found: map.len() });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain.k()) {
            return Err(Error::ArgOutOfRange { value: bad, k: codomain.k() });
        }
        Ok(Morphism { domain, codomain, map })
    }

    pub fn identity(s: &'a FinStructure) -> Self {
        Morphism { domain: s, codomain: s, map: (0..s.k()).collect() }
    }

    pub fn domain(&self) -> &'a FinStructure {
        self.domain
    }

    pub fn codomain(&self) -> &'a FinStructure {
        self.codomain
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }
}

impl std::fmt::Display for Morphism<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.map.iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn first_violation(map: &[Element], src: &OpTable, dst: &OpTable, op: Op) -> Option<Witness> {
    let mut image = vec![0; src.arity()];
    Tuples::find_map(src.carrier_size(), src.arity(), |args| {
        for (slot, &a) in image.iter_mut().zip(args) {
            *slot = map[a];
        }
        let left = map[src.apply(args)];
        let right = dst.apply(&image);
        (left != right).then(|| Witness::Homomorphism { op, args: args.to_vec(), left, right })
    })
}

/// `ψ(f(a..)) = f'(ψ(a)..)` and `ψ(g(b..)) = g'(ψ(b)..)` on every tuple; `f` is swept first.
pub fn is_homomorphism(psi: &Morphism) -> AxiomVerdict {
    let (d, c) = (psi.domain, psi.codomain);
    let w = first_violation(&psi.map, d.f(), c.f(), Op::F).or_else(|| first_violation(&psi.map, d.g(), c.g(), Op::G));
    AxiomVerdict::from_witness(w)
}

fn require_homomorphism(psi: &Morphism) -> Result<()> {
    if is_homomorphism(psi).holds {
        Ok(())
    } else {
        Err(Error::NotHomomorphism)
    }
}

fn kind_of(psi: &Morphism) -> MorphismKind {
    let mut hit = vec![false; psi.codomain.k()];
    for &y in &psi.map {
        hit[y] = true;
    }
    let hits = hit.iter().filter(|&&h| h).count();
    let mono = hits == psi.map.len();
    let epi = hits == hit.len();
    MorphismKind { mono, epi, iso: mono && epi }
}

pub fn classify_morphism(psi: &Morphism) -> Result<MorphismKind> {
    require_homomorphism(psi)?;
    Ok(kind_of(psi))
}

/// `phi ∘ psi`, applying `psi` first.
pub fn compose<'a>(phi: &Morphism<'a>, psi: &Morphism<'a>) -> Result<Morphism<'a>> {
    let (mid_in, mid_out) = (psi.codomain, phi.domain);
    if !std::ptr::eq(mid_in, mid_out) && !mid_in.tables_equal(mid_out) {
        return Err(Error::DomainMismatch(format!(
            "codomain {} of the inner map is not the domain {} of the outer map",
            mid_in.name(),
            mid_out.name()
        )));
    }
    require_homomorphism(phi)?;
    require_homomorphism(psi)?;
    let composite = Morphism {
        domain: psi.domain,
        codomain: phi.codomain,
        map: psi.map.iter().map(|&x| phi.map[x]).collect(),
    };
    if !is_homomorphism(&composite).holds {
        return Err(Error::Invariant("composite of homomorphisms is not a homomorphism".into()));
    }
    Ok(composite)
}

/// Number of total maps `s1 -> s2`, saturating.
pub fn search_space(s1: &FinStructure, s2: &FinStructure) -> u128 {
    (s2.k() as u128).checked_pow(s1.k() as u32).unwrap_or(u128::MAX)
}

/// All homomorphisms `s1 -> s2` in lexicographic order of their maps.
///
/// Backtracking assigns `ψ(0), ψ(1), …` in turn. A tuple is checked at the
/// step where its last needed value (any argument or its result) gets assigned.
pub fn find_homomorphisms<'a>(
    s1: &'a FinStructure,
    s2: &'a FinStructure,
    limit: Option<usize>,
) -> Result<Vec<Morphism<'a>>> {
    check_arities(s1, s2)?;
    let space = search_space(s1, s2);
    if limit.is_none() && space > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge { size: space, limit: SEARCH_LIMIT });
    }
    let (k1, k2) = (s1.k(), s2.k());
    let limit = limit.unwrap_or(usize::MAX);
    if limit == 0 || k2 == 0 {
        return Ok(Vec::new());
    }

    // due[v]: tuples (op, args, result) that become checkable once ψ(v) is known
    let mut due: Vec<Vec<(Op, Vec<Element>, Element)>> = vec![Vec::new(); k1];
    for op in [Op::F, Op::G] {
        let table = s1.op(op);
        for index in 0..table.len() {
            let args = decode_index(index, k1, table.arity());
            let result = table.at(index);
            let last = args.iter().copied().chain([result]).max().unwrap_or(0);
            due[last].push((op, args, result));
        }
    }

    struct Search<'s> {
        s2: &'s FinStructure,
        due: Vec<Vec<(Op, Vec<Element>, Element)>>,
        map: Vec<Element>,
        found: Vec<Vec<Element>>,
        limit: usize,
        image: Vec<Element>,
    }

    impl Search<'_> {
        fn consistent(&mut self, v: usize) -> bool {
            let Search { s2, due, map, image, .. } = self;
            due[v].iter().all(|(op, args, result)| {
                image.clear();
                image.extend(args.iter().map(|&a| map[a]));
                s2.op(*op).apply(image) == map[*result]
            })
        }

        fn extend(&mut self, v: usize) {
            if v == self.map.len() {
                self.found.push(self.map.clone());
                return;
            }
            for y in 0..self.s2.k() {
                self.map[v] = y;
                if self.consistent(v) {
                    self.extend(v + 1);
                    if self.found.len() >= self.limit {
                        return;
                    }
                }
            }
        }
    }

    let mut search = Search { s2, due, map: vec![0; k1], found: Vec::new(), limit, image: Vec::new() };
    search.extend(0);
    Ok(search.found.into_iter().map(|map| Morphism { domain: s1, codomain: s2, map }).collect())
}

/// Image of a homomorphism, a subseminearring of the codomain.
pub fn image(psi: &Morphism) -> Result<Subset> {
    require_homomorphism(psi)?;
    let im = Subset::from_elements(psi.map.iter().copied(), psi.codomain.k())?;
    if !is_subseminearring(psi.codomain, im)?.holds {
        return Err(Error::Invariant(format!("image {im} is not a subseminearring")));
    }
    Ok(im)
}

/// Image of an ideal under an epimorphism, an ideal of the codomain.
pub fn push_ideal(psi: &Morphism, ideal: Subset) -> Result<Subset> {
    require_homomorphism(psi)?;
    if !kind_of(psi).epi {
        return Err(Error::NotEpimorphism);
    }
    if !is_ideal(psi.domain, ideal)?.holds {
        return Err(Error::NotIdeal);
    }
    let pushed = Subset::from_elements(ideal.elements().into_iter().map(|x| psi.map[x]), psi.codomain.k())?;
    if !is_ideal(psi.codomain, pushed)?.holds {
        return Err(Error::Invariant(format!("image {pushed} of an ideal is not an ideal")));
    }
    Ok(pushed)
}

/// Fibers of a homomorphism, a congruence of the domain.
pub fn kernel(psi: &Morphism) -> Result<Partition> {
    require_homomorphism(psi)?;
    let p = Partition::from_labels(&psi.map);
    if !is_congruence(psi.domain, &p)?.holds {
        return Err(Error::Invariant(format!("kernel {p} is not a congruence")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruences::quotient;
    use crate::constructions::{gen_affine, gen_modring, gen_powerset};
    use crate::ideals::{enumerate_ideals, Positions};
    use crate::substructures::restrict;

    fn set(xs: &[Element], k: usize) -> Subset {
        Subset::from_elements(xs.iter().copied(), k).unwrap()
    }

    /// Every total map, filtered by the homomorphism check.
    fn naive(s1: &FinStructure, s2: &FinStructure) -> Vec<Vec<Element>> {
        let mut out = Vec::new();
        let mut maps = Tuples::new(s2.k(), s1.k());
        loop {
            let psi = Morphism::new(s1, s2, maps.current().to_vec()).unwrap();
            if is_homomorphism(&psi).holds {
                out.push(psi.map);
            }
            if !maps.advance() {
                return out;
            }
        }
    }

    fn maps(list: &[Morphism]) -> Vec<Vec<Element>> {
        list.iter().map(|m| m.map().to_vec()).collect()
    }

    #[test]
    fn homomorphism_examples() {
        let (z6, z3) = (gen_modring(6, 2, 2).unwrap(), gen_modring(3, 2, 2).unwrap());
        let mod3 = Morphism::new(&z6, &z3, (0..6).map(|x| x % 3).collect()).unwrap();
        assert!(is_homomorphism(&mod3).holds);
        assert_eq!(classify_morphism(&mod3).unwrap(), MorphismKind { mono: false, epi: true, iso: false });
        assert_eq!(mod3.to_string(), "0->0 1->1 2->2 3->0 4->1 5->2");

        let b2 = gen_powerset(1, 2, 2).unwrap();
        let swap = Morphism::new(&b2, &b2, vec![1, 0]).unwrap();
        assert_eq!(
            is_homomorphism(&swap).witness,
            Some(Witness::Homomorphism { op: Op::F, args: vec![0, 1], left: 0, right: 1 })
        );
        assert_eq!(classify_morphism(&swap), Err(Error::NotHomomorphism));
        let zero = Morphism::new(&b2, &b2, vec![0, 0]).unwrap();
        assert_eq!(classify_morphism(&zero).unwrap(), MorphismKind { mono: false, epi: false, iso: false });
        let id = Morphism::identity(&b2);
        assert_eq!(classify_morphism(&id).unwrap(), MorphismKind { mono: true, epi: true, iso: true });

        assert!(Morphism::new(&z6, &z3, vec![0; 5]).is_err());
        assert!(Morphism::new(&z6, &z3, vec![3; 6]).is_err());
        let z3_ternary = gen_modring(3, 3, 2).unwrap();
        assert!(matches!(Morphism::new(&z6, &z3_ternary, vec![0; 6]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn composition_examples() {
        let (z6, z3, z2) = (gen_modring(6, 2, 2).unwrap(), gen_modring(3, 2, 2).unwrap(), gen_modring(2, 2, 2).unwrap());
        let mod3 = Morphism::new(&z6, &z3, (0..6).map(|x| x % 3).collect()).unwrap();
        let mod2 = Morphism::new(&z6, &z2, (0..6).map(|x| x % 2).collect()).unwrap();
        assert_eq!(compose(&Morphism::identity(&z3), &mod3).unwrap().map(), mod3.map());
        assert_eq!(compose(&mod3, &Morphism::identity(&z6)).unwrap().map(), mod3.map());
        assert!(matches!(compose(&mod2, &mod3), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn search_examples() {
        let b2 = gen_powerset(1, 2, 2).unwrap();
        assert_eq!(maps(&find_homomorphisms(&b2, &b2, None).unwrap()), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        let z3 = gen_modring(3, 2, 2).unwrap();
        assert_eq!(maps(&find_homomorphisms(&z3, &z3, None).unwrap()), vec![vec![0, 0, 0], vec![0, 1, 2]]);
        let one = gen_modring(1, 2, 2).unwrap();
        let affine = gen_affine(3).unwrap();
        assert_eq!(find_homomorphisms(&gen_modring(5, 2, 2).unwrap(), &one, None).unwrap().len(), 1);
        assert_eq!(find_homomorphisms(&affine, &gen_modring(1, 2, 3).unwrap(), None).unwrap().len(), 1);
        assert_eq!(find_homomorphisms(&b2, &b2, Some(2)).unwrap().len(), 2);

        let z64 = gen_modring(64, 2, 2).unwrap();
        assert!(matches!(find_homomorphisms(&z64, &z64, None), Err(Error::SearchSpaceTooLarge { .. })));
        let first = find_homomorphisms(&z64, &z64, Some(1)).unwrap();
        assert_eq!(first[0].map(), &[0; 64][..]);
    }

    #[test]
    fn image_push_and_kernel_examples() {
        let (z6, z3) = (gen_modring(6, 2, 2).unwrap(), gen_modring(3, 2, 2).unwrap());
        let mod3 = Morphism::new(&z6, &z3, (0..6).map(|x| x % 3).collect()).unwrap();
        assert_eq!(image(&mod3).unwrap(), Subset::full(3));
        assert_eq!(push_ideal(&mod3, set(&[0, 2, 4], 6)).unwrap(), Subset::full(3));
        assert_eq!(push_ideal(&mod3, set(&[0, 3], 6)).unwrap(), set(&[0], 3));
        assert_eq!(push_ideal(&mod3, set(&[0, 1], 6)), Err(Error::NotIdeal));
        assert_eq!(kernel(&mod3).unwrap(), Partition::parse("0,3|1,4|2,5", 6).unwrap());

        let b2 = gen_powerset(1, 2, 2).unwrap();
        let zero = Morphism::new(&b2, &b2, vec![0, 0]).unwrap();
        assert_eq!(image(&zero).unwrap(), set(&[0], 2));
        assert_eq!(push_ideal(&zero, set(&[0], 2)), Err(Error::NotEpimorphism));
        assert_eq!(kernel(&zero).unwrap(), Partition::universal(2));
        assert_eq!(kernel(&Morphism::identity(&b2)).unwrap(), Partition::identity(2));

        let z4 = gen_modring(4, 2, 2).unwrap();
        let (even, inclusion) = restrict(&z4, set(&[0, 2], 4)).unwrap();
        let incl = Morphism::new(&even, &z4, inclusion).unwrap();
        assert_eq!(classify_morphism(&incl).unwrap(), MorphismKind { mono: true, epi: false, iso: false });
        assert_eq!(image(&incl).unwrap(), set(&[0, 2], 4));
    }

    #[test]
    fn theorems_hold_over_corpus() {
        let corpus = vec![
            gen_powerset(1, 2, 2).unwrap(),
            gen_powerset(2, 2, 2).unwrap(),
            gen_modring(1, 2, 2).unwrap(),
            gen_modring(2, 2, 2).unwrap(),
            gen_modring(3, 2, 2).unwrap(),
            gen_modring(4, 2, 2).unwrap(),
            gen_modring(6, 2, 2).unwrap(),
        ];
        for s1 in &corpus {
            for s2 in &corpus {
                let found = find_homomorphisms(s1, s2, None).unwrap();
                if search_space(s1, s2) <= 1 << 16 {
                    assert_eq!(maps(&found), naive(s1, s2), "{} -> {}", s1.name(), s2.name());
                }
                let ideals = enumerate_ideals(s1, &Positions::All).unwrap();
                for psi in &found {
                    let im = image(psi).unwrap();
                    let ker = kernel(psi).unwrap();
                    assert_eq!(quotient(s1, &ker).unwrap().k(), im.len());
                    if classify_morphism(psi).unwrap().epi {
                        for &i in &ideals {
                            assert!(is_ideal(s2, push_ideal(psi, i).unwrap()).unwrap().holds);
                        }
                    }
                    for s3 in &corpus {
                        if s3.k() <= 4 {
                            for phi in find_homomorphisms(s2, s3, None).unwrap() {
                                assert!(is_homomorphism(&compose(&phi, psi).unwrap()).holds);
                            }
                        }
                    }
                }
            }
        }
    }
}
