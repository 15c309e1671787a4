//! The one-rule progressiveness calculus over a finite relation and the
//! rank-extraction algorithm that turns its canonical derivations into an
//! explicit order embedding below ω^(α+1).
//!
//! Every inference carries a finite context set, a goal of literal indices,
//! a main node, and a depth bound; it has one premise per transitive
//! predecessor of the main node. Extraction processes the nodes in numeric
//! order, assigning each a member set and a rank that satisfy the two
//! invariants checked by [`check_extraction_invariants`], and the embedding
//! maps each node to the largest natural sum of ω-powers of ranks along
//! chains ending at it.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::bounds::natural_sum_raw;
use crate::error::{Error, Result};
use crate::order::FiniteRelation;
use crate::term::{cmp_terms, Atom, Term};

/// Default cap on the node count accepted by [`takeuti_embed`]; chain
/// enumeration is exponential in the worst case.
pub const DEFAULT_MAX_NODES: u32 = 12;

/// A finite derivation tree: one rule application per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    /// The context set of the conclusion.
    pub context: BTreeSet<u32>,
    /// Indices of the goal literals; a subset of the context.
    pub goal: BTreeSet<u32>,
    /// The node the rule is applied to; a member of the context.
    pub main: u32,
    /// Annotated depth bound, strictly above every premise bound.
    pub bound: u32,
    /// One premise per transitive predecessor of `main`, keyed by the added
    /// element and sorted by it.
    pub premises: Vec<(u32, Derivation)>,
}

impl Derivation {
    /// The premise that added `n`, if `n` precedes the main node.
    pub fn premise_for(&self, n: u32) -> Option<&Derivation> {
        self.premises
            .iter()
            .find(|(added, _)| *added == n)
            .map(|(_, sub)| sub)
    }
}

/// Per-node extraction output: the member set, the rank, and the derivation
/// witnessing that the member set proves its own goal at that rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeExtraction {
    pub members: BTreeSet<u32>,
    pub rank: u32,
    pub witness: Derivation,
}

/// Extraction output for every node, with the uniform bound `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionState {
    pub alpha: u32,
    pub nodes: Vec<NodeExtraction>,
}

/// One f-assignment of the embedding report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeAssignment {
    pub node: u32,
    pub rank: u32,
    pub f: Term,
}

/// One verified assertion of the embedding report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub label: String,
    pub passed: bool,
}

/// The embedding output: the uniform bound, the f-assignments, and any
/// checks appended by [`verify_embedding`]. A report with failing checks is
/// still a value; it is the test output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub alpha: u32,
    pub nodes: Vec<NodeAssignment>,
    pub checks: Vec<EmbeddingCheck>,
}

impl EmbeddingReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The stable text form: one line per node `m beta=<b> f=<term>`, then
    /// one line per check.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            out.push_str(&format!(
                "{} beta={} f={}\n",
                n.node,
                n.rank,
                crate::text::render(&n.f)
            ));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{}: {}\n",
                c.label,
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

fn require_well_founded(rel: &FiniteRelation) -> Result<()> {
    for n in 0..rel.node_count() {
        if rel.precedes_star(n, n) {
            return Err(Error::NotWellFounded(n));
        }
    }
    Ok(())
}

/// The canonical derivation of {n} ⊢ E(n): the rule is always applied to the
/// most recently added element, so the bound is one more than the longest
/// descending chain below n.
pub fn build_derivation(rel: &FiniteRelation, n: u32) -> Result<Derivation> {
    require_well_founded(rel)?;
    if n >= rel.node_count() {
        return Err(Error::InvalidIndex(n));
    }
    let context = BTreeSet::from([n]);
    Ok(canonical(rel, n, context.clone(), context))
}

fn canonical(rel: &FiniteRelation, n: u32, context: BTreeSet<u32>, goal: BTreeSet<u32>) -> Derivation {
    let mut premises = Vec::new();
    let mut bound = 1;
    for p in 0..rel.node_count() {
        if rel.precedes_star(p, n) {
            let mut sub_context = context.clone();
            sub_context.insert(p);
            let mut sub_goal = goal.clone();
            sub_goal.insert(p);
            let sub = canonical(rel, p, sub_context, sub_goal);
            bound = bound.max(sub.bound + 1);
            premises.push((p, sub));
        }
    }
    Derivation { context, goal, main: n, bound, premises }
}

/// Structural well-formedness of a derivation against the relation,
/// independent of how it was built. Returns every violation found.
pub fn validate_derivation(d: &Derivation, rel: &FiniteRelation) -> Vec<String> {
    let mut violations = Vec::new();
    walk_validate(d, rel, &mut violations);
    violations
}

fn walk_validate(d: &Derivation, rel: &FiniteRelation, out: &mut Vec<String>) {
    if !d.context.contains(&d.main) {
        out.push(format!("main {} is not in the context", d.main));
    }
    if !d.goal.is_subset(&d.context) {
        out.push(format!("goal of main {} is not a subset of the context", d.main));
    }
    if d.bound < 1 {
        out.push(format!("main {} has bound 0", d.main));
    }
    let expected: BTreeSet<u32> = (0..rel.node_count())
        .filter(|&p| rel.precedes_star(p, d.main))
        .collect();
    let added: BTreeSet<u32> = d.premises.iter().map(|(p, _)| *p).collect();
    if added != expected || d.premises.len() != expected.len() {
        out.push(format!(
            "premises of main {} do not add exactly its predecessors",
            d.main
        ));
    }
    for (p, sub) in &d.premises {
        if sub.bound >= d.bound {
            out.push(format!(
                "premise {} of main {} has bound {} not below {}",
                p, d.main, sub.bound, d.bound
            ));
        }
        let mut want_context = d.context.clone();
        want_context.insert(*p);
        if sub.context != want_context {
            out.push(format!("premise {} of main {} has the wrong context", p, d.main));
        }
        let mut want_goal = d.goal.clone();
        want_goal.insert(*p);
        if sub.goal != want_goal {
            out.push(format!("premise {} of main {} has the wrong goal", p, d.main));
        }
        walk_validate(sub, rel, out);
    }
}

/// The lowest rule application of a derivation. Canonical derivations carry
/// no padding below an inference, so this is the root.
fn lowest_inference(d: &Derivation) -> &Derivation {
    d
}

/// Runs the rank extraction over all nodes in numeric order.
///
/// A node with no numerically smaller node above it (in the closure sense)
/// keeps the uniform bound `alpha` and the singleton member set. Otherwise
/// the node descends into the stored witness of the best smaller node above
/// it: the premise that adds the node becomes its witness, and the premise
/// bound its rank.
pub fn extract_ranks(rel: &FiniteRelation) -> Result<ExtractionState> {
    require_well_founded(rel)?;
    let n_nodes = rel.node_count();
    let canonical: Vec<Derivation> = (0..n_nodes)
        .map(|n| build_derivation(rel, n).expect("relation already checked"))
        .collect();
    let alpha = canonical.iter().map(|d| d.bound).max().unwrap_or(1);

    let mut nodes: Vec<NodeExtraction> = Vec::with_capacity(n_nodes as usize);
    for m in 0..n_nodes {
        let above: Vec<u32> = (0..m).filter(|&n| rel.precedes_star(m, n)).collect();
        let extraction = match above.iter().copied().min_by_key(|&n| (nodes[n as usize].rank, n)) {
            None => {
                let mut witness = canonical[m as usize].clone();
                witness.bound = alpha;
                NodeExtraction { members: BTreeSet::from([m]), rank: alpha, witness }
            }
            Some(k) => {
                let lowest = lowest_inference(&nodes[k as usize].witness);
                assert!(
                    rel.precedes_star(m, lowest.main),
                    "extraction invariant: node {m} must lie below the main {}",
                    lowest.main
                );
                let sub = lowest
                    .premise_for(m)
                    .expect("a premise exists for every predecessor of the main");
                let mut members = nodes[k as usize].members.clone();
                members.insert(m);
                debug_assert_eq!(members, sub.context);
                NodeExtraction { members, rank: sub.bound, witness: sub.clone() }
            }
        };
        nodes.push(extraction);
    }
    Ok(ExtractionState { alpha, nodes })
}

/// Asserts the two extraction invariants literally, plus agreement between
/// each witness and its node's members and rank. Returns every violation.
pub fn check_extraction_invariants(rel: &FiniteRelation, state: &ExtractionState) -> Vec<String> {
    let mut violations = Vec::new();
    for (m, node) in state.nodes.iter().enumerate() {
        let m = m as u32;
        for &n in &node.members {
            let reaches = n == m || rel.precedes_star(m, n);
            if !(reaches && n <= m) {
                violations.push(format!("member {n} of node {m} violates the member condition"));
            }
        }
        for n in 0..m {
            if rel.precedes_star(m, n) && node.rank >= state.nodes[n as usize].rank {
                violations.push(format!(
                    "rank {} of node {m} is not below rank {} of node {n}",
                    node.rank, state.nodes[n as usize].rank
                ));
            }
        }
        if node.rank > state.alpha {
            violations.push(format!("rank of node {m} exceeds alpha"));
        }
        if node.witness.context != node.members {
            violations.push(format!("witness context of node {m} differs from its members"));
        }
        if node.witness.goal != node.members {
            violations.push(format!("witness goal of node {m} differs from its members"));
        }
        if node.witness.bound != node.rank {
            violations.push(format!("witness bound of node {m} differs from its rank"));
        }
        violations.extend(
            validate_derivation(&node.witness, rel)
                .into_iter()
                .map(|v| format!("witness of node {m}: {v}")),
        );
    }
    violations
}

fn omega_power(rank: u32) -> Term {
    Term::from_atoms(vec![Atom::Phi(0, Term::numeral(rank))])
}

/// The embedding: each node maps to the maximum, over all chains ending at
/// it whose earlier elements are numerically smaller, of the natural sum of
/// ω-powers of the chain's ranks. Chains are enumerated exhaustively; the
/// node count is capped by `max_nodes`.
pub fn takeuti_embed(rel: &FiniteRelation, max_nodes: u32) -> Result<EmbeddingReport> {
    if rel.node_count() > max_nodes {
        return Err(Error::InstanceTooLarge(rel.node_count(), max_nodes));
    }
    let state = extract_ranks(rel)?;
    let nodes = (0..rel.node_count())
        .map(|m| NodeAssignment {
            node: m,
            rank: state.nodes[m as usize].rank,
            f: chain_max(rel, &state, m, m),
        })
        .collect();
    Ok(EmbeddingReport { alpha: state.alpha, nodes, checks: Vec::new() })
}

/// Maximum chain sum over chains ending at `x` whose other elements are all
/// numerically below `cap`.
fn chain_max(rel: &FiniteRelation, state: &ExtractionState, x: u32, cap: u32) -> Term {
    let here = omega_power(state.nodes[x as usize].rank);
    let mut best: Option<Term> = None;
    for p in 0..cap {
        if rel.precedes_star(p, x) {
            let candidate = chain_max(rel, state, p, cap);
            let better = match &best {
                None => true,
                Some(b) => cmp_terms(&candidate, b) == Ordering::Greater,
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    match best {
        None => here,
        Some(b) => natural_sum_raw(&b, &here),
    }
}

/// Appends the edge-monotonicity and ω^(α+1)-bound checks to a report
/// produced for the same relation. Violations are recorded, not raised.
pub fn verify_embedding(rel: &FiniteRelation, report: &EmbeddingReport) -> EmbeddingReport {
    let mut out = report.clone();
    let bound = omega_power(report.alpha + 1);
    for &(n, m) in rel.edges() {
        let passed = cmp_terms(&out.nodes[n as usize].f, &out.nodes[m as usize].f)
            == Ordering::Less;
        out.checks.push(EmbeddingCheck { label: format!("edge {n} {m}"), passed });
    }
    for node in &out.nodes {
        let passed = cmp_terms(&node.f, &bound) == Ordering::Less;
        out.checks.push(EmbeddingCheck { label: format!("bound {}", node.node), passed });
    }
    out
}
