//! Cross-checks against independent oracles: a multiplicity-vector model of
//! the ω-fragment, a boolean-matrix transitive closure, a three-color cycle
//! finder, and closed forms for chain relations.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use ots_core::{
    add, compare, natural_sum, normalize, pair, render, takeuti_embed, unpair, verify_embedding,
    Atom, FiniteRelation, LinearOrder, RawTerm, StructureDescriptor, Term,
};

fn sd(level: u32) -> StructureDescriptor {
    StructureDescriptor::new(level, LinearOrder::Omega)
}

/// Terms ω^4·c4 + ... + ω^0·c0 modeled as the count vector [c0..c4].
/// Comparison is lexicographic from the highest exponent down.
type Vector = [u32; 5];

fn vector_term(v: &Vector) -> Term {
    let mut parts = Vec::new();
    for e in (0..5u32).rev() {
        for _ in 0..v[e as usize] {
            parts.push(RawTerm::Phi(0, Box::new(RawTerm::numeral(e))));
        }
    }
    normalize(&RawTerm::Sum(parts), &sd(0)).unwrap()
}

fn vector_cmp(a: &Vector, b: &Vector) -> Ordering {
    for e in (0..5).rev() {
        match a[e].cmp(&b[e]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn all_vectors(max_total: u32) -> Vec<Vector> {
    let mut out = Vec::new();
    for c0 in 0..=max_total {
        for c1 in 0..=max_total - c0 {
            for c2 in 0..=max_total - c0 - c1 {
                for c3 in 0..=max_total - c0 - c1 - c2 {
                    for c4 in 0..=max_total - c0 - c1 - c2 - c3 {
                        out.push([c0, c1, c2, c3, c4]);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn comparison_agrees_with_the_vector_model() {
    let vectors = all_vectors(4);
    assert_eq!(vectors.len(), 126);
    let terms: Vec<Term> = vectors.iter().map(vector_term).collect();
    let s = sd(0);
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let want = vector_cmp(a, b);
            let got = compare(&terms[i], &terms[j], &s).unwrap();
            assert_eq!(
                got,
                want,
                "{} vs {}",
                render(&terms[i]),
                render(&terms[j])
            );
        }
    }
}

#[test]
fn natural_sum_agrees_with_vector_addition() {
    let vectors = all_vectors(3);
    let terms: Vec<Term> = vectors.iter().map(vector_term).collect();
    let s = sd(0);
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let mut sum = *a;
            for e in 0..5 {
                sum[e] += b[e];
            }
            let got = natural_sum(&terms[i], &terms[j], &s).unwrap();
            assert_eq!(got, vector_term(&sum));
        }
    }
}

#[test]
fn ordinary_addition_agrees_with_vector_truncation() {
    // a + b drops every a-component strictly below the leading exponent of b
    let vectors = all_vectors(3);
    let terms: Vec<Term> = vectors.iter().map(vector_term).collect();
    let s = sd(0);
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let lead = (0..5).rev().find(|&e| b[e] > 0);
            let mut sum = *b;
            if let Some(lead) = lead {
                for e in lead..5 {
                    sum[e] += a[e];
                }
            } else {
                sum = *a;
            }
            let got = add(&terms[i], &terms[j], &s).unwrap();
            assert_eq!(got, vector_term(&sum));
        }
    }
}

fn interleavings(a: &[RawTerm], b: &[RawTerm]) -> Vec<Vec<RawTerm>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut rest in interleavings(&a[1..], b) {
        rest.insert(0, a[0].clone());
        out.push(rest);
    }
    for mut rest in interleavings(a, &b[1..]) {
        rest.insert(0, b[0].clone());
        out.push(rest);
    }
    out
}

fn max_interleaving_sum(a: &[RawTerm], b: &[RawTerm], s: &StructureDescriptor) -> Term {
    let mut best: Option<Term> = None;
    for seq in interleavings(a, b) {
        let candidate = normalize(&RawTerm::Sum(seq), s).unwrap();
        let better = match &best {
            None => true,
            Some(current) => compare(&candidate, current, s).unwrap() == Ordering::Greater,
        };
        if better {
            best = Some(candidate);
        }
    }
    best.unwrap_or_else(Term::zero)
}

fn atom_sequences(pool: &[RawTerm], max_len: usize) -> Vec<Vec<RawTerm>> {
    // non-increasing index sequences: every sorted multiset over the pool,
    // pool listed from largest to smallest atom
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<RawTerm>)> = vec![(0, Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (start, seq) in frontier {
            for (i, atom) in pool.iter().enumerate().skip(start) {
                let mut grown = seq.clone();
                grown.push(atom.clone());
                out.push(grown.clone());
                next.push((i, grown));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn natural_sum_agrees_with_the_interleaving_oracle() {
    // # is the largest value an ordinary sum of the combined atoms can take
    let s = sd(1);
    let pool = vec![
        RawTerm::Gen(1),
        RawTerm::Gen(0),
        RawTerm::Phi(0, Box::new(RawTerm::numeral(2))),
        RawTerm::Phi(0, Box::new(RawTerm::numeral(1))),
        RawTerm::Phi(0, Box::new(RawTerm::Zero)),
    ];
    let sequences = atom_sequences(&pool, 4);
    let terms: Vec<Term> = sequences
        .iter()
        .map(|seq| normalize(&RawTerm::Sum(seq.clone()), &s).unwrap())
        .collect();
    for (i, a) in sequences.iter().enumerate() {
        for (j, b) in sequences.iter().enumerate() {
            let want = max_interleaving_sum(a, b, &s);
            let got = natural_sum(&terms[i], &terms[j], &s).unwrap();
            assert_eq!(
                got,
                want,
                "{} # {}",
                render(&terms[i]),
                render(&terms[j])
            );
        }
    }
}

#[test]
fn pairing_is_a_bijection() {
    for code in 0..100_000u64 {
        let (n, m) = unpair(code);
        assert_eq!(pair(n, m).unwrap(), code);
    }
    for n in 0..300u64 {
        for m in 0..300u64 {
            let code = pair(n, m).unwrap();
            assert_eq!(unpair(code), (n, m));
        }
    }
}

fn matrix_closure(n: usize, edges: &BTreeSet<(u32, u32)>) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a as usize][b as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach
}

fn has_cycle(n: usize, edges: &BTreeSet<(u32, u32)>) -> bool {
    // three-color depth first search
    fn visit(v: usize, color: &mut [u8], succ: &[Vec<usize>]) -> bool {
        color[v] = 1;
        for &w in &succ[v] {
            match color[w] {
                0 => {
                    if visit(w, color, succ) {
                        return true;
                    }
                }
                1 => return true,
                _ => {}
            }
        }
        color[v] = 2;
        false
    }
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in edges {
        succ[a as usize].push(b as usize);
    }
    let mut color = vec![0u8; n];
    (0..n).any(|v| color[v] == 0 && visit(v, &mut color, &succ))
}

#[test]
fn closure_and_well_foundedness_agree_with_matrix_oracles() {
    // every relation on 3 nodes, self loops included
    let slots: Vec<(u32, u32)> = (0..3u32)
        .flat_map(|a| (0..3u32).map(move |b| (a, b)))
        .collect();
    for mask in 0..(1u32 << 9) {
        let edges: BTreeSet<(u32, u32)> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| *e)
            .collect();
        let rel = FiniteRelation::new(3, edges.clone()).unwrap();
        let reach = matrix_closure(3, &edges);
        for a in 0..3u32 {
            for b in 0..3u32 {
                assert_eq!(
                    rel.precedes_star(a, b),
                    reach[a as usize][b as usize],
                    "mask {mask} edge {a} {b}"
                );
            }
        }
        assert_eq!(
            ots_core::check_well_founded(&rel),
            !has_cycle(3, &edges),
            "mask {mask}"
        );
        let closed = rel.transitive_closure();
        let expected: BTreeSet<(u32, u32)> = (0..3u32)
            .flat_map(|a| (0..3u32).map(move |b| (a, b)))
            .filter(|&(a, b)| reach[a as usize][b as usize])
            .collect();
        assert_eq!(closed.edges(), &expected, "mask {mask}");
    }
}

#[test]
fn fixed_point_collapse_hits_exactly_the_generators() {
    // at level 1, ω^x = x exactly for generator atoms
    let s = sd(1);
    let mut candidates: Vec<Term> = all_vectors(2).iter().map(vector_term).collect();
    for j in 0..3 {
        let g = Term::generator(&s, j).unwrap();
        candidates.push(add(&g, &Term::numeral(1), &s).unwrap());
        candidates.push(g);
    }
    for t in &candidates {
        let applied = ots_core::apply_phi(0, t, &s).unwrap();
        let is_single_generator = matches!(t.atoms(), [Atom::Gen(_)]);
        assert_eq!(
            &applied == t,
            is_single_generator,
            "collapse mismatch at {}",
            render(t)
        );
    }
}

#[test]
fn forward_chain_embedding_matches_the_closed_form() {
    // the total order 0 ≺ 1 ≺ ... ≺ n−1 embeds as m ↦ ω^n·(m+1)
    for n in 1..=7u32 {
        let edges: BTreeSet<(u32, u32)> = (0..n - 1).map(|m| (m, m + 1)).collect();
        let rel = FiniteRelation::new(n, edges).unwrap();
        let report = takeuti_embed(&rel, 12).unwrap();
        assert_eq!(report.alpha, n);
        let power = RawTerm::Phi(0, Box::new(RawTerm::numeral(n)));
        for m in 0..n {
            let expected = normalize(
                &RawTerm::Sum(vec![power.clone(); (m + 1) as usize]),
                &sd(0),
            )
            .unwrap();
            assert_eq!(report.nodes[m as usize].rank, n);
            assert_eq!(report.nodes[m as usize].f, expected, "n={n} m={m}");
        }
        assert!(verify_embedding(&rel, &report).all_passed());
    }
}

#[test]
fn reverse_chain_embedding_matches_the_closed_form() {
    // the reverse order (n−1) ≺ ... ≺ 0 embeds as m ↦ ω^(n−m)
    for n in 1..=7u32 {
        let edges: BTreeSet<(u32, u32)> = (0..n - 1).map(|m| (m + 1, m)).collect();
        let rel = FiniteRelation::new(n, edges).unwrap();
        let report = takeuti_embed(&rel, 12).unwrap();
        assert_eq!(report.alpha, n);
        for m in 0..n {
            let expected = normalize(
                &RawTerm::Phi(0, Box::new(RawTerm::numeral(n - m))),
                &sd(0),
            )
            .unwrap();
            assert_eq!(report.nodes[m as usize].rank, n - m);
            assert_eq!(report.nodes[m as usize].f, expected, "n={n} m={m}");
        }
        assert!(verify_embedding(&rel, &report).all_passed());
    }
}
