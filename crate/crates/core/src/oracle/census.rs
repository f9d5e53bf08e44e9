//! Oracle censuses and their comparison with the closed forms.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{
    adjunct_gen::enumerate_by_reducible, all_lattices::lattices_up_to, OracleError, ADJUNCT_LIMIT,
    ALL_LATTICES_LIMIT,
};
use crate::canon::Certificate;
use crate::formulas::{self, Count, TwoReducibleForm};
use crate::lattice::Lattice;
use crate::poset::Element;
use crate::reduction::{classify_fbb, FbbClass};

/// Lattices on `n` elements grouped by reducible count.
///
/// When `complete` is false only the two- and three-reducible classes are
/// present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCensus {
    pub n: usize,
    pub complete: bool,
    pub classes: BTreeMap<usize, BTreeSet<Certificate>>,
    /// Three-reducible lattices by the class of their fundamental basic block.
    pub fbb_fibers: BTreeMap<FbbClass, BTreeSet<Certificate>>,
}

impl OracleCensus {
    pub fn class(&self, reducible: usize) -> usize {
        self.classes.get(&reducible).map_or(0, BTreeSet::len)
    }

    pub fn fiber(&self, class: FbbClass) -> usize {
        self.fbb_fibers.get(&class).map_or(0, BTreeSet::len)
    }

    pub fn total(&self) -> usize {
        self.classes.values().map(BTreeSet::len).sum()
    }

    fn from_classes(n: usize, complete: bool, classes: BTreeMap<usize, BTreeSet<Certificate>>) -> Self {
        let three: Vec<&Certificate> = classes.get(&3).into_iter().flatten().collect();
        let labelled: Vec<(FbbClass, Certificate)> = three
            .par_iter()
            .map(|&c| (fbb_class_of(c), c.clone()))
            .collect();
        let mut fbb_fibers: BTreeMap<FbbClass, BTreeSet<Certificate>> = BTreeMap::new();
        for (class, cert) in labelled {
            fbb_fibers.entry(class).or_default().insert(cert);
        }
        OracleCensus {
            n,
            complete,
            classes,
            fbb_fibers,
        }
    }
}

/// Failures to classify show up as `Other`, which no formula counts.
fn fbb_class_of(cert: &Certificate) -> FbbClass {
    Lattice::new(cert.to_digraph())
        .ok()
        .and_then(|l| classify_fbb(&l).ok())
        .unwrap_or(FbbClass::Other)
}

fn reducible_count(cert: &Certificate) -> usize {
    Lattice::new(cert.to_digraph())
        .expect("oracle output consists of lattices")
        .reducible_count()
}

fn full_census(n: usize, all: &BTreeSet<Certificate>) -> OracleCensus {
    let counted: Vec<(usize, Certificate)> = all
        .par_iter()
        .map(|c| (reducible_count(c), c.clone()))
        .collect();
    let mut classes: BTreeMap<usize, BTreeSet<Certificate>> = BTreeMap::new();
    for (r, c) in counted {
        classes.entry(r).or_default().insert(c);
    }
    OracleCensus::from_classes(n, true, classes)
}

fn partial_census(n: usize) -> Result<OracleCensus, OracleError> {
    let mut classes = BTreeMap::new();
    for r in [2, 3] {
        classes.insert(r, enumerate_by_reducible(n, r)?);
    }
    Ok(OracleCensus::from_classes(n, false, classes))
}

/// Census of lattices on `n` elements: complete up to
/// [`ALL_LATTICES_LIMIT`], two- and three-reducible classes only up to
/// [`ADJUNCT_LIMIT`].
pub fn census(n: usize) -> Result<OracleCensus, OracleError> {
    if n <= ALL_LATTICES_LIMIT {
        let levels = lattices_up_to(n)?;
        return Ok(full_census(n, &levels[n]));
    }
    partial_census(n)
}

/// Source of the closed-form values the census is compared with. The
/// default methods use the crate's formulas; overriding one lets tests check
/// that a wrong value is caught.
pub trait FormulaSource: Sync {
    fn two_reducible_lattices(&self, n: usize, form: TwoReducibleForm) -> Count {
        formulas::two_reducible_lattices(n, form)
    }
    fn two_reducible_blocks(&self, m: usize, k: usize) -> Count {
        formulas::two_reducible_blocks(m, k)
    }
    fn three_reducible_lattices(&self, n: usize) -> Count {
        formulas::three_reducible_lattices(n)
    }
    /// Lattices whose fundamental basic block is `class`.
    fn class_lattices(&self, class: FbbClass, n: usize) -> Count {
        match class {
            FbbClass::F1 => formulas::l1_lattices(n),
            FbbClass::F2 => formulas::l2_lattices(n),
            FbbClass::F3 => formulas::l3_lattices(n),
            FbbClass::F4 => formulas::l4_lattices(n),
            FbbClass::M2 | FbbClass::Other => Count::default(),
        }
    }
    /// Blocks on `m` elements with `m + k` covers whose fundamental basic
    /// block is `class`.
    fn class_blocks(&self, class: FbbClass, m: usize, k: usize) -> Count {
        match class {
            FbbClass::F1 | FbbClass::F2 => formulas::b1_blocks(m, k),
            FbbClass::F3 => formulas::b3_blocks(m, k),
            FbbClass::F4 => formulas::b4_blocks(m, k),
            FbbClass::M2 | FbbClass::Other => Count::default(),
        }
    }
}

/// The formulas as implemented in [`crate::formulas`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PrintedFormulas;

impl FormulaSource for PrintedFormulas {}

/// What a report cell counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CellKind {
    TwoReducibleLattices { form: TwoReducibleForm },
    TwoReducibleBlocks { k: usize },
    ThreeReducibleLattices,
    ClassLattices { class: FbbClass },
    ClassBlocks { class: FbbClass, k: usize },
}

/// A lattice the formula did not account for (or an example of the class
/// when the oracle found fewer than predicted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub certificate: String,
    pub covers: Vec<(Element, Element)>,
}

impl Witness {
    fn of(cert: &Certificate) -> Self {
        Witness {
            certificate: cert.to_string(),
            covers: cert.to_digraph().covers().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusCell {
    #[serde(flatten)]
    pub kind: CellKind,
    #[serde(serialize_with = "decimal")]
    pub formula: Count,
    #[serde(serialize_with = "decimal")]
    pub oracle: Count,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    /// Oracle counts per reducible-element count (complete censuses only).
    pub classes: BTreeMap<usize, usize>,
    pub cells: Vec<CensusCell>,
}

impl CensusReport {
    pub fn all_agree(&self) -> bool {
        self.cells.iter().all(|c| c.agrees)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CensusCell> {
        self.cells.iter().filter(|c| !c.agrees)
    }
}

fn decimal<S: Serializer>(v: &Count, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn cell(kind: CellKind, formula: Count, members: &[&Certificate]) -> CensusCell {
    let oracle = Count::from(members.len());
    let agrees = formula == oracle;
    CensusCell {
        kind,
        witness: (!agrees).then(|| members.first().map(|c| Witness::of(c))).flatten(),
        formula,
        oracle,
        agrees,
    }
}

/// Compares every formula cell with the oracle for `1 <= n <= n_max`.
pub fn verify(n_max: usize) -> Result<Vec<CensusReport>, OracleError> {
    verify_with(n_max, &PrintedFormulas)
}

pub fn verify_with(n_max: usize, formulas: &dyn FormulaSource) -> Result<Vec<CensusReport>, OracleError> {
    if n_max > ADJUNCT_LIMIT {
        return Err(OracleError::SizeLimitExceeded {
            n: n_max,
            limit: ADJUNCT_LIMIT,
        });
    }
    let levels = lattices_up_to(n_max.min(ALL_LATTICES_LIMIT))?;
    let mut reports = Vec::new();
    for n in 1..=n_max {
        let census = match levels.get(n) {
            Some(all) => full_census(n, all),
            None => partial_census(n)?,
        };
        reports.push(report(&census, formulas));
    }
    Ok(reports)
}

struct Member<'a> {
    cert: &'a Certificate,
    is_block: bool,
    k: usize,
}

fn members(set: Option<&BTreeSet<Certificate>>, n: usize) -> Vec<Member<'_>> {
    set.into_iter()
        .flatten()
        .map(|cert| {
            let l = Lattice::new(cert.to_digraph()).expect("oracle output consists of lattices");
            Member {
                cert,
                is_block: l.is_block(),
                // A block on n elements with nullity >= 1 has at least n covers.
                k: l.edge_count().saturating_sub(n),
            }
        })
        .collect()
}

fn report(census: &OracleCensus, formulas: &dyn FormulaSource) -> CensusReport {
    let n = census.n;
    let mut cells = Vec::new();

    let two = members(census.classes.get(&2), n);
    let two_all: Vec<&Certificate> = two.iter().map(|m| m.cert).collect();
    for form in [TwoReducibleForm::PartsFirst, TwoReducibleForm::BlockFirst] {
        cells.push(cell(
            CellKind::TwoReducibleLattices { form },
            formulas.two_reducible_lattices(n, form),
            &two_all,
        ));
    }
    let max_k = two.iter().filter(|m| m.is_block).map(|m| m.k).max();
    for k in 0..=n.saturating_sub(4).max(max_k.unwrap_or(0)) {
        let blocks: Vec<&Certificate> = two
            .iter()
            .filter(|m| m.is_block && m.k == k)
            .map(|m| m.cert)
            .collect();
        cells.push(cell(
            CellKind::TwoReducibleBlocks { k },
            formulas.two_reducible_blocks(n, k),
            &blocks,
        ));
    }

    let three_all: Vec<&Certificate> = census.classes.get(&3).into_iter().flatten().collect();
    cells.push(cell(
        CellKind::ThreeReducibleLattices,
        formulas.three_reducible_lattices(n),
        &three_all,
    ));
    let mut classes: Vec<FbbClass> = FbbClass::THREE_REDUCIBLE.to_vec();
    if census.fiber(FbbClass::Other) > 0 || census.fiber(FbbClass::M2) > 0 {
        // Never expected; listed so the mismatch is visible.
        classes.extend([FbbClass::M2, FbbClass::Other]);
    }
    for class in classes {
        let fiber = members(census.fbb_fibers.get(&class), n);
        let all: Vec<&Certificate> = fiber.iter().map(|m| m.cert).collect();
        cells.push(cell(
            CellKind::ClassLattices { class },
            formulas.class_lattices(class, n),
            &all,
        ));
        let max_k = fiber.iter().filter(|m| m.is_block).map(|m| m.k).max();
        for k in 0..=n.saturating_sub(5).max(max_k.unwrap_or(0)) {
            let blocks: Vec<&Certificate> = fiber
                .iter()
                .filter(|m| m.is_block && m.k == k)
                .map(|m| m.cert)
                .collect();
            cells.push(cell(
                CellKind::ClassBlocks { class, k },
                formulas.class_blocks(class, n, k),
                &blocks,
            ));
        }
    }

    CensusReport {
        n,
        classes: if census.complete {
            census.classes.iter().map(|(&r, s)| (r, s.len())).collect()
        } else {
            BTreeMap::new()
        },
        cells,
    }
}
