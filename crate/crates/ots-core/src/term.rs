//! Terms of the structures g^(K)(X): normal forms, the comparison decision
//! procedure, the exponential arithmetic laws, and dilation.
//!
//! A term is a normalized sum of atoms in non-increasing order. An atom is
//! either `Phi(k, t)`, the k-th function symbol applied to a term (`Phi(0, t)`
//! denotes ω^t), or `Gen(j)`, the j-th generator constant of the structure.
//! Generators are fixed points of every available function symbol as soon as
//! the structure has derivative levels (K ≥ 1), which drives both the
//! fixed-point collapse rule of normalization and the comparison of mixed
//! atoms.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::order::LinearOrder;

/// The pair (derivative level K, input order X) fixing one structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureDescriptor {
    /// Number of derivative applications above the base function λx.ω^x.
    pub level: u32,
    /// The input order X; its indices address the generator constants, with
    /// index 0 the adjoined least element.
    pub input_order: LinearOrder,
}

impl StructureDescriptor {
    pub fn new(level: u32, input_order: LinearOrder) -> Self {
        StructureDescriptor { level, input_order }
    }

    /// Number of function levels available to `Phi`. ω^· (level 0) is always
    /// present; the derivative symbols 1..K−1 join it at K ≥ 2. The K-th
    /// derivative itself appears only through the generator constants.
    pub fn phi_levels(&self) -> u32 {
        self.level.max(1)
    }
}

/// One additively closed component of a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `Phi(k, t)`: the level-k function symbol applied to `t`; level 0 is ω^t.
    Phi(u32, Term),
    /// `Gen(j)`: the generator constant at index j of {0} ∪ X.
    Gen(u32),
}

/// A normalized sum of atoms in non-increasing order; the empty sum is 0.
///
/// Values are only constructible through the operations of this module, so a
/// `Term` is always in normal form for some structure. Structural equality
/// coincides with equality of denoted ordinals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    atoms: Vec<Atom>,
}

/// Classification of a term per its last summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Zero,
    Successor,
    Limit,
}

/// An unnormalized term tree, the input shape for [`normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawTerm {
    Zero,
    Gen(u32),
    Phi(u32, Box<RawTerm>),
    Sum(Vec<RawTerm>),
}

impl RawTerm {
    /// The numeral n as an n-fold sum of ω^0.
    pub fn numeral(n: u32) -> RawTerm {
        RawTerm::Sum(vec![RawTerm::Phi(0, Box::new(RawTerm::Zero)); n as usize])
    }
}

impl Term {
    pub fn zero() -> Term {
        Term { atoms: Vec::new() }
    }

    /// The numeral n (always normal, independent of the structure).
    pub fn numeral(n: u32) -> Term {
        Term { atoms: vec![Atom::Phi(0, Term::zero()); n as usize] }
    }

    /// The generator constant Gen(j), index-checked against the structure.
    pub fn generator(sd: &StructureDescriptor, j: u32) -> Result<Term> {
        if !sd.input_order.contains_index(j) {
            return Err(Error::InvalidIndex(j));
        }
        Ok(Term::generator_unchecked(j))
    }

    pub(crate) fn generator_unchecked(j: u32) -> Term {
        Term { atoms: vec![Atom::Gen(j)] }
    }

    pub(crate) fn from_atoms(atoms: Vec<Atom>) -> Term {
        Term { atoms }
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Zero, successor, or limit, read off the last summand.
    pub fn classify(&self) -> TermKind {
        match self.atoms.last() {
            None => TermKind::Zero,
            Some(Atom::Phi(0, e)) if e.is_zero() => TermKind::Successor,
            Some(_) => TermKind::Limit,
        }
    }

    /// The unnormalized tree spelling of this term.
    pub fn to_raw(&self) -> RawTerm {
        if self.atoms.is_empty() {
            return RawTerm::Zero;
        }
        let parts = self
            .atoms
            .iter()
            .map(|atom| match atom {
                Atom::Phi(k, e) => RawTerm::Phi(*k, Box::new(e.to_raw())),
                Atom::Gen(j) => RawTerm::Gen(*j),
            })
            .collect();
        RawTerm::Sum(parts)
    }

    /// The largest generator index mentioned anywhere in the term.
    pub fn max_generator_index(&self) -> Option<u32> {
        let mut max = None;
        for atom in &self.atoms {
            let m = match atom {
                Atom::Gen(j) => Some(*j),
                Atom::Phi(_, e) => e.max_generator_index(),
            };
            max = max.max(m);
        }
        max
    }
}

/// The level an atom occupies in the fixed-point hierarchy: `Phi(k, _)` sits
/// at k, generators at K (they are constants of the K-th derivative).
fn atom_fix_level(atom: &Atom, k_level: u32) -> u32 {
    match atom {
        Atom::Phi(k, _) => *k,
        Atom::Gen(_) => k_level,
    }
}

/// Structural comparison of atoms. Does not depend on the structure level:
/// on inputs that are normal for their structure the recursion is exact.
pub(crate) fn cmp_atoms(a: &Atom, b: &Atom) -> Ordering {
    match (a, b) {
        (Atom::Gen(i), Atom::Gen(j)) => i.cmp(j),
        (Atom::Phi(i, s), Atom::Phi(j, t)) => match i.cmp(j) {
            Ordering::Equal => cmp_terms(s, t),
            // The higher-level atom is a fixed point of the lower level, so
            // the comparison descends into the lower atom's argument. Equal
            // cannot arise for normal inputs (the atom would have collapsed);
            // it resolves to the closed side.
            Ordering::Less => against_closed(s, &Term::from_atoms(vec![b.clone()])),
            Ordering::Greater => {
                against_closed(t, &Term::from_atoms(vec![a.clone()])).reverse()
            }
        },
        (Atom::Phi(_, s), Atom::Gen(j)) => {
            against_closed(s, &Term::generator_unchecked(*j))
        }
        (Atom::Gen(j), Atom::Phi(_, t)) => {
            against_closed(t, &Term::generator_unchecked(*j)).reverse()
        }
    }
}

/// Compares `Phi(i, s)` against a φ_i-closed atom (given as a term) through
/// the argument `s`. For structures without derivative levels the generator
/// is not closed under ω^·, and the Equal branch then correctly reports
/// ω^Gen(j) above Gen(j).
fn against_closed(s: &Term, closed: &Term) -> Ordering {
    match cmp_terms(s, closed) {
        Ordering::Less => Ordering::Less,
        _ => Ordering::Greater,
    }
}

/// Comparison of normal sums: lexicographic on the atom lists, with a proper
/// prefix below the longer sum.
pub(crate) fn cmp_terms(s: &Term, t: &Term) -> Ordering {
    for (a, b) in s.atoms.iter().zip(&t.atoms) {
        match cmp_atoms(a, b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    s.atoms.len().cmp(&t.atoms.len())
}

/// Checks that a term belongs to the structure and is in normal form;
/// returns a description of the first defect found.
fn well_formed(t: &Term, sd: &StructureDescriptor) -> std::result::Result<(), String> {
    for pair in t.atoms.windows(2) {
        if cmp_atoms(&pair[0], &pair[1]) == Ordering::Less {
            return Err("atoms are not in non-increasing order".into());
        }
    }
    for atom in &t.atoms {
        match atom {
            Atom::Gen(j) => {
                if !sd.input_order.contains_index(*j) {
                    return Err(format!("generator index {j} outside the input order"));
                }
            }
            Atom::Phi(k, e) => {
                if *k >= sd.phi_levels() {
                    return Err(format!(
                        "function level {k} not available at structure level {}",
                        sd.level
                    ));
                }
                well_formed(e, sd)?;
                if let [inner] = e.atoms() {
                    if atom_fix_level(inner, sd.level) > *k {
                        return Err(format!(
                            "argument of the level-{k} symbol is one of its fixed points"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn expect_member(t: &Term, sd: &StructureDescriptor) -> Result<()> {
    well_formed(t, sd).map_err(Error::StructureMismatch)
}

/// Sum of normal terms, without revalidation.
pub(crate) fn add_raw(s: &Term, t: &Term) -> Term {
    let mut atoms = s.atoms.clone();
    push_sum(&mut atoms, t);
    Term { atoms }
}

/// In-place sum. The dropped atoms of the left summand form a contiguous
/// tail because its atom list is non-increasing.
pub(crate) fn push_sum(acc: &mut Vec<Atom>, t: &Term) {
    let Some(head) = t.atoms.first() else {
        return;
    };
    while acc.last().is_some_and(|a| cmp_atoms(a, head) == Ordering::Less) {
        acc.pop();
    }
    acc.extend(t.atoms.iter().cloned());
}

/// φ_k applied to a normal term, without revalidation of the argument.
pub(crate) fn apply_phi_raw(k: u32, t: &Term, sd: &StructureDescriptor) -> Result<Term> {
    if k >= sd.phi_levels() {
        return Err(Error::MalformedTerm(format!(
            "function level {k} not available at structure level {}",
            sd.level
        )));
    }
    if let [atom] = t.atoms() {
        if atom_fix_level(atom, sd.level) > k {
            return Ok(t.clone());
        }
    }
    Ok(Term { atoms: vec![Atom::Phi(k, t.clone())] })
}

/// Rewrites a raw term tree into its unique normal form.
///
/// Applies absorption (lower ω-powers vanish before higher ones), flattening
/// of sums, and the fixed-point collapse φ_k(s) = s for arguments that are
/// fixed points of φ_k. Idempotent, and the identity on trees spelling a
/// normal form.
pub fn normalize(raw: &RawTerm, sd: &StructureDescriptor) -> Result<Term> {
    match raw {
        RawTerm::Zero => Ok(Term::zero()),
        RawTerm::Gen(j) => {
            if !sd.input_order.contains_index(*j) {
                return Err(Error::MalformedTerm(format!(
                    "generator index {j} outside the input order"
                )));
            }
            Ok(Term::generator_unchecked(*j))
        }
        RawTerm::Phi(k, e) => {
            let e = normalize(e, sd)?;
            apply_phi_raw(*k, &e, sd)
        }
        RawTerm::Sum(parts) => {
            let mut acc = Vec::new();
            for part in parts {
                let part = normalize(part, sd)?;
                push_sum(&mut acc, &part);
            }
            Ok(Term { atoms: acc })
        }
    }
}

/// Total order on normal forms: Less/Equal/Greater with Equal exactly on
/// identical normal forms.
pub fn compare(s: &Term, t: &Term, sd: &StructureDescriptor) -> Result<Ordering> {
    expect_member(s, sd)?;
    expect_member(t, sd)?;
    Ok(cmp_terms(s, t))
}

/// Normal form of s + t: the atoms of `s` strictly below the head of `t`
/// are absorbed, the rest concatenated.
pub fn add(s: &Term, t: &Term, sd: &StructureDescriptor) -> Result<Term> {
    expect_member(s, sd)?;
    expect_member(t, sd)?;
    Ok(add_raw(s, t))
}

/// The least γ with a + γ = b; fails when a > b.
pub fn subtract(a: &Term, b: &Term, sd: &StructureDescriptor) -> Result<Term> {
    expect_member(a, sd)?;
    expect_member(b, sd)?;
    match cmp_terms(a, b) {
        Ordering::Greater => Err(Error::Underflow),
        Ordering::Equal => Ok(Term::zero()),
        Ordering::Less => {
            let split = a
                .atoms
                .iter()
                .zip(&b.atoms)
                .position(|(x, y)| x != y)
                .unwrap_or(a.atoms.len());
            Ok(Term { atoms: b.atoms[split..].to_vec() })
        }
    }
}

/// Normal form of φ_k(t): `t` itself when `t` is a fixed point of φ_k, the
/// atom Phi(k, t) otherwise. Strictly monotone in `t` at fixed `k`.
pub fn apply_phi(k: u32, t: &Term, sd: &StructureDescriptor) -> Result<Term> {
    expect_member(t, sd)?;
    apply_phi_raw(k, t, sd)
}

/// A strictly order preserving reindexing of generators that fixes 0, the
/// map underlying dilation between structures of the same level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationMap {
    entries: BTreeMap<u32, u32>,
}

impl DilationMap {
    /// Builds the map; 0 ↦ 0 is implied and may be stated. Fails when 0 is
    /// moved or the entries are not strictly increasing.
    pub fn new(entries: impl IntoIterator<Item = (u32, u32)>) -> Result<DilationMap> {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        map.insert(0, 0);
        for (k, v) in entries {
            if k == 0 && v != 0 {
                return Err(Error::InvalidDilation("the least element must map to 0".into()));
            }
            if let Some(prev) = map.insert(k, v) {
                if prev != v {
                    return Err(Error::InvalidDilation(format!(
                        "index {k} mapped to both {prev} and {v}"
                    )));
                }
            }
        }
        let mut prev: Option<(u32, u32)> = None;
        for (&k, &v) in &map {
            if let Some((pk, pv)) = prev {
                if v <= pv {
                    return Err(Error::InvalidDilation(format!(
                        "not order preserving: {pk} ↦ {pv} but {k} ↦ {v}"
                    )));
                }
            }
            prev = Some((k, v));
        }
        Ok(DilationMap { entries: map })
    }

    /// Image of a generator index; fails on indices the map does not cover.
    pub fn apply(&self, j: u32) -> Result<u32> {
        self.entries
            .get(&j)
            .copied()
            .ok_or_else(|| Error::InvalidDilation(format!("generator index {j} is unmapped")))
    }
}

/// Rewrites every generator Gen(j) of `t` to Gen(f(j)) and renormalizes over
/// the target structure. Order preserving: comparisons among dilated terms
/// agree with comparisons among the originals.
pub fn dilate(
    t: &Term,
    f: &DilationMap,
    sd_x: &StructureDescriptor,
    sd_y: &StructureDescriptor,
) -> Result<Term> {
    if sd_x.level != sd_y.level {
        return Err(Error::InvalidDilation(format!(
            "source level {} differs from target level {}",
            sd_x.level, sd_y.level
        )));
    }
    expect_member(t, sd_x)?;
    let raw = dilate_raw(&t.to_raw(), f)?;
    normalize(&raw, sd_y).map_err(|e| match e {
        Error::MalformedTerm(msg) => Error::InvalidDilation(msg),
        other => other,
    })
}

fn dilate_raw(raw: &RawTerm, f: &DilationMap) -> Result<RawTerm> {
    Ok(match raw {
        RawTerm::Zero => RawTerm::Zero,
        RawTerm::Gen(j) => RawTerm::Gen(f.apply(*j)?),
        RawTerm::Phi(k, e) => RawTerm::Phi(*k, Box::new(dilate_raw(e, f)?)),
        RawTerm::Sum(parts) => {
            RawTerm::Sum(parts.iter().map(|p| dilate_raw(p, f)).collect::<Result<_>>()?)
        }
    })
}
