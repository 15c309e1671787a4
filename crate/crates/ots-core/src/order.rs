//! Input linear orders, the pairing codec, coded relations, and finite
//! well-foundedness checks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An indexed total order serving as the input X of a term structure.
///
/// Elements are addressed by natural-number indices. Index 0 is reserved for
/// the adjoined least element of {0} ∪ X, so a `Finite(n)` order exposes the
/// indices `0..=n` and `Omega` exposes every index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearOrder {
    /// X has exactly `n` elements, addressed by indices `1..=n`.
    Finite(u32),
    /// X is the standard order on the naturals.
    Omega,
}

impl LinearOrder {
    /// Whether `index` addresses an element of {0} ∪ X.
    pub fn contains_index(self, index: u32) -> bool {
        match self {
            LinearOrder::Finite(n) => index <= n,
            LinearOrder::Omega => true,
        }
    }

    /// The largest valid index, if the order is finite.
    pub fn max_index(self) -> Option<u32> {
        match self {
            LinearOrder::Finite(n) => Some(n),
            LinearOrder::Omega => None,
        }
    }

    /// Total order on indices; index 0 is strictly below every other index.
    pub fn compare_indices(self, a: u32, b: u32) -> std::cmp::Ordering {
        a.cmp(&b)
    }
}

/// The pairing code `(n+m)(n+m+1)/2 + m`.
pub fn pair(n: u64, m: u64) -> Result<u64> {
    let s = n.checked_add(m).ok_or(Error::ArithmeticOverflow(n, m))?;
    let s1 = s.checked_add(1).ok_or(Error::ArithmeticOverflow(n, m))?;
    // One of s, s+1 is even, so the halved product is exact.
    let tri = if s % 2 == 0 { (s / 2).checked_mul(s1) } else { s.checked_mul(s1 / 2) }
        .ok_or(Error::ArithmeticOverflow(n, m))?;
    tri.checked_add(m).ok_or(Error::ArithmeticOverflow(n, m))
}

/// Inverse of [`pair`]; total because the codec is a bijection.
pub fn unpair(code: u64) -> (u64, u64) {
    // Largest w with w(w+1)/2 <= code, via integer square root.
    let mut w = (((8u128 * code as u128 + 1).isqrt() - 1) / 2) as u64;
    // Guard against any rounding slack at the u128 boundary.
    while (w + 1) * (w + 2) / 2 <= code {
        w += 1;
    }
    while w * (w + 1) / 2 > code {
        w -= 1;
    }
    let m = code - w * (w + 1) / 2;
    (w - m, m)
}

/// A finite relation ≺ on {0..N−1} with its transitive closure cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    node_count: u32,
    edges: BTreeSet<(u32, u32)>,
    closure: BTreeSet<(u32, u32)>,
}

impl FiniteRelation {
    /// Builds the relation and caches its transitive closure.
    ///
    /// Fails if any endpoint is `>= node_count`.
    pub fn new(node_count: u32, edges: BTreeSet<(u32, u32)>) -> Result<Self> {
        for &(n, m) in &edges {
            if n >= node_count || m >= node_count {
                return Err(Error::MalformedTerm(format!(
                    "edge ({n}, {m}) has an endpoint outside 0..{node_count}"
                )));
            }
        }
        let closure = close(node_count, &edges);
        Ok(FiniteRelation { node_count, edges, closure })
    }

    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    /// The cached transitive closure ≺* as an edge set.
    pub fn closure(&self) -> &BTreeSet<(u32, u32)> {
        &self.closure
    }

    /// Whether n ≺* m.
    pub fn precedes_star(&self, n: u32, m: u32) -> bool {
        self.closure.contains(&(n, m))
    }

    /// The least transitive relation containing the edges, as a relation of
    /// its own. Idempotent: closing a closed relation returns it unchanged.
    pub fn transitive_closure(&self) -> FiniteRelation {
        FiniteRelation {
            node_count: self.node_count,
            edges: self.closure.clone(),
            closure: self.closure.clone(),
        }
    }
}

/// Transitive closure by depth-first reachability from every node.
fn close(node_count: u32, edges: &BTreeSet<(u32, u32)>) -> BTreeSet<(u32, u32)> {
    let mut succ = vec![Vec::new(); node_count as usize];
    for &(n, m) in edges {
        succ[n as usize].push(m);
    }
    let mut closure = BTreeSet::new();
    for start in 0..node_count {
        let mut seen = vec![false; node_count as usize];
        let mut stack: Vec<u32> = succ[start as usize].clone();
        while let Some(m) = stack.pop() {
            if !seen[m as usize] {
                seen[m as usize] = true;
                closure.insert((start, m));
                stack.extend_from_slice(&succ[m as usize]);
            }
        }
    }
    closure
}

/// True iff the transitive closure is irreflexive (finite well-foundedness).
pub fn check_well_founded(rel: &FiniteRelation) -> bool {
    (0..rel.node_count()).all(|n| !rel.precedes_star(n, n))
}

/// A finite set of naturals X inducing the relation n ≺ m :⇔ ⟨n,m⟩ ∈ X.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CodedRelation {
    pub codes: BTreeSet<u64>,
}

/// Decodes every code into an edge; the node count is one past the largest
/// endpoint (0 when the code set is empty).
pub fn decode_relation(coded: &CodedRelation) -> Result<FiniteRelation> {
    let mut edges = BTreeSet::new();
    let mut max_endpoint = None::<u64>;
    for &code in &coded.codes {
        let (n, m) = unpair(code);
        edges.insert((
            u32::try_from(n).map_err(|_| Error::ArithmeticOverflow(n, m))?,
            u32::try_from(m).map_err(|_| Error::ArithmeticOverflow(n, m))?,
        ));
        max_endpoint = Some(max_endpoint.unwrap_or(0).max(n).max(m));
    }
    let node_count = match max_endpoint {
        Some(e) => e as u32 + 1,
        None => 0,
    };
    FiniteRelation::new(node_count, edges)
}

/// Parses the relation file format.
///
/// Either a header line `N <count>` followed by one `<n> <m>` line per edge,
/// or a single line `codes: c1 c2 ...` decoded through [`unpair`]. Blank
/// lines are ignored.
pub fn parse_relation_text(text: &str) -> Result<FiniteRelation> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        position: 0,
        message: "empty relation file".into(),
    })?;
    let err = |line: usize, message: String| Error::Parse { position: line + 1, message };

    let first = first.trim();
    if let Some(rest) = first.strip_prefix("codes:") {
        if let Some((extra_no, _)) = lines.next() {
            return Err(err(extra_no, "codes form takes a single line".into()));
        }
        let mut coded = CodedRelation::default();
        for tok in rest.split_whitespace() {
            let code: u64 = tok
                .parse()
                .map_err(|_| err(first_no, format!("bad code {tok:?}")))?;
            coded.codes.insert(code);
        }
        return decode_relation(&coded);
    }

    let count: u32 = match first.split_whitespace().collect::<Vec<_>>()[..] {
        ["N", c] => c
            .parse()
            .map_err(|_| err(first_no, format!("bad node count {c:?}")))?,
        _ => return Err(err(first_no, "expected `N <count>` or `codes: ...`".into())),
    };
    let mut edges = BTreeSet::new();
    for (no, line) in lines {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            [n, m] => {
                let n: u32 = n
                    .parse()
                    .map_err(|_| err(no, format!("bad endpoint {n:?}")))?;
                let m: u32 = m
                    .parse()
                    .map_err(|_| err(no, format!("bad endpoint {m:?}")))?;
                if n >= count || m >= count {
                    return Err(err(no, format!("edge ({n}, {m}) outside 0..{count}")));
                }
                edges.insert((n, m));
            }
            _ => return Err(err(no, "expected `<n> <m>`".into())),
        }
    }
    FiniteRelation::new(count, edges)
}
