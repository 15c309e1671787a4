//! Randomized law checking over the term structures, the bound function,
//! and the embedding pipeline.
//!
//! Every sample draws its own generator seeded from (seed, suite, index),
//! so a run is reproducible sample by sample and the outcome does not
//! depend on execution order. With the `parallel` feature (on by default)
//! samples run on the rayon pool; violations are sorted back into sample
//! order so both modes render identical reports.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bounds::{
    f_bound, fund_seq_gprime, gamma_iterate, natural_sum, power2, tower, BoundContext,
};
use crate::embed::{check_extraction_invariants, extract_ranks, takeuti_embed, verify_embedding};
use crate::order::{FiniteRelation, LinearOrder};
use crate::term::{
    add, apply_phi, compare, dilate, normalize, subtract, DilationMap, RawTerm,
    StructureDescriptor, Term, TermKind,
};
use crate::text::render;

/// How to drive the sample loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Sequential,
    /// Uses the rayon pool; falls back to sequential when the `parallel`
    /// feature is disabled.
    Parallel,
}

/// One failed sample assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    pub message: String,
}

/// The outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub samples: u64,
    pub violations: Vec<Violation>,
}

/// The outcome of a full check run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub suites: Vec<SuiteOutcome>,
}

impl CheckReport {
    pub fn total_violations(&self) -> usize {
        self.suites.iter().map(|s| s.violations.len()).sum()
    }

    /// One line per suite, a detail line per violation (capped per suite),
    /// and a final total line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for suite in &self.suites {
            out.push_str(&format!(
                "suite {}: samples={} violations={}\n",
                suite.name,
                suite.samples,
                suite.violations.len()
            ));
            for v in suite.violations.iter().take(8) {
                out.push_str(&format!("  sample {}: {}\n", v.index, v.message));
            }
            if suite.violations.len() > 8 {
                out.push_str(&format!("  ... and {} more\n", suite.violations.len() - 8));
            }
        }
        out.push_str(&format!("violations: {}\n", self.total_violations()));
        out
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn sample_rng(seed: u64, salt: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(salt.wrapping_add(index))))
}

fn run_samples<F>(mode: RunMode, name: &str, samples: u64, seed: u64, salt: u64, check: F) -> SuiteOutcome
where
    F: Fn(u64, &mut ChaCha8Rng) -> Vec<String> + Sync,
{
    let one = |index: u64| -> Vec<Violation> {
        let mut rng = sample_rng(seed, salt, index);
        check(index, &mut rng)
            .into_iter()
            .map(|message| Violation { index, message })
            .collect()
    };
    let mut violations: Vec<Violation> = match mode {
        RunMode::Sequential => (0..samples).flat_map(one).collect(),
        RunMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..samples).into_par_iter().flat_map_iter(one).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..samples).flat_map(one).collect()
            }
        }
    };
    violations.sort_by_key(|v| v.index);
    SuiteOutcome { name: name.to_string(), samples, violations }
}

const SALT_ORDER: u64 = 0x01;
const SALT_INDISCERNIBILITY: u64 = 0x02;
const SALT_BOUNDS: u64 = 0x03;
const SALT_EMBEDDING: u64 = 0x04;

fn generator_index_range(sd: &StructureDescriptor) -> Option<u32> {
    if sd.level == 0 {
        return None;
    }
    match sd.input_order {
        LinearOrder::Omega => Some(6),
        LinearOrder::Finite(n) => Some(n),
    }
}

fn random_raw(rng: &mut ChaCha8Rng, sd: &StructureDescriptor, depth: u32) -> RawTerm {
    let max_gen = generator_index_range(sd);
    let leaf = |rng: &mut ChaCha8Rng| -> RawTerm {
        match rng.gen_range(0..4) {
            0 => RawTerm::Zero,
            1 => RawTerm::numeral(rng.gen_range(0..4)),
            _ => match max_gen {
                Some(cap) => RawTerm::Gen(rng.gen_range(0..=cap)),
                None => RawTerm::numeral(rng.gen_range(0..3)),
            },
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 => leaf(rng),
        1 | 2 => {
            let level = rng.gen_range(0..sd.phi_levels());
            RawTerm::Phi(level, Box::new(random_raw(rng, sd, depth - 1)))
        }
        _ => {
            let n = rng.gen_range(2..=3);
            RawTerm::Sum((0..n).map(|_| random_raw(rng, sd, depth - 1)).collect())
        }
    }
}

fn random_term(rng: &mut ChaCha8Rng, sd: &StructureDescriptor, depth: u32) -> Term {
    let raw = random_raw(rng, sd, depth);
    normalize(&raw, sd).expect("generated pieces are within the structure")
}

fn random_generator_free(rng: &mut ChaCha8Rng, sd: &StructureDescriptor, depth: u32) -> Term {
    let closed = StructureDescriptor { level: sd.level, input_order: LinearOrder::Finite(0) };
    let raw = random_closed_raw(rng, &closed, depth);
    normalize(&raw, sd).expect("generated pieces are within the structure")
}

fn random_closed_raw(rng: &mut ChaCha8Rng, sd: &StructureDescriptor, depth: u32) -> RawTerm {
    if depth == 0 {
        return RawTerm::numeral(rng.gen_range(0..4));
    }
    match rng.gen_range(0..5) {
        0 => RawTerm::numeral(rng.gen_range(0..4)),
        1 | 2 => {
            let level = rng.gen_range(0..sd.phi_levels());
            RawTerm::Phi(level, Box::new(random_closed_raw(rng, sd, depth - 1)))
        }
        _ => {
            let n = rng.gen_range(2..=3);
            RawTerm::Sum((0..n).map(|_| random_closed_raw(rng, sd, depth - 1)).collect())
        }
    }
}

fn expect_cmp(
    out: &mut Vec<String>,
    sd: &StructureDescriptor,
    a: &Term,
    b: &Term,
    want: Ordering,
    what: &str,
) {
    match compare(a, b, sd) {
        Ok(got) if got == want => {}
        Ok(got) => out.push(format!(
            "{what}: {} vs {} compared {:?}, expected {:?}",
            render(a),
            render(b),
            got,
            want
        )),
        Err(e) => out.push(format!("{what}: comparison failed: {e}")),
    }
}

/// Checks trichotomy, transitivity, normal-form uniqueness, and the ordered
/// additive-structure laws (zero identity, associativity, one-sided
/// monotonicity, absorption, strictly increasing fixed-point functions,
/// additive closedness of their values, substructure agreement, and the
/// limit probe for generators) on random terms.
pub fn check_structure_axioms(sd: &StructureDescriptor, samples: u64, seed: u64) -> SuiteOutcome {
    check_structure_axioms_in(RunMode::Parallel, sd, samples, seed)
}

pub fn check_structure_axioms_in(
    mode: RunMode,
    sd: &StructureDescriptor,
    samples: u64,
    seed: u64,
) -> SuiteOutcome {
    run_samples(mode, "order-laws", samples, seed, SALT_ORDER, |_, rng| {
        let mut out = Vec::new();
        let s = random_term(rng, sd, 3);
        let t = random_term(rng, sd, 3);
        let u = random_term(rng, sd, 2);

        let st = compare(&s, &t, sd).unwrap();
        let ts = compare(&t, &s, sd).unwrap();
        if st != ts.reverse() {
            out.push(format!("antisymmetry: {} vs {}", render(&s), render(&t)));
        }
        if compare(&s, &s, sd).unwrap() != Ordering::Equal {
            out.push(format!("irreflexivity: {} differs from itself", render(&s)));
        }
        if st == Ordering::Equal && render(&s) != render(&t) {
            out.push(format!(
                "uniqueness: {} and {} compare equal but differ",
                render(&s),
                render(&t)
            ));
        }
        let tu = compare(&t, &u, sd).unwrap();
        if st == Ordering::Less && tu == Ordering::Less {
            expect_cmp(&mut out, sd, &s, &u, Ordering::Less, "transitivity");
        }

        let zero = Term::zero();
        if add(&s, &zero, sd).unwrap() != s || add(&zero, &s, sd).unwrap() != s {
            out.push(format!("zero identity: {}", render(&s)));
        }
        let left = add(&add(&s, &t, sd).unwrap(), &u, sd).unwrap();
        let right = add(&s, &add(&t, &u, sd).unwrap(), sd).unwrap();
        if left != right {
            out.push(format!(
                "associativity: ({}+{})+{}",
                render(&s),
                render(&t),
                render(&u)
            ));
        }
        let us = add(&u, &s, sd).unwrap();
        let ut = add(&u, &t, sd).unwrap();
        if compare(&us, &ut, sd).unwrap() != st {
            out.push(format!(
                "right monotonicity: {}+{} vs {}+{}",
                render(&u),
                render(&s),
                render(&u),
                render(&t)
            ));
        }
        if st == Ordering::Less {
            let su = add(&s, &u, sd).unwrap();
            let tu_sum = add(&t, &u, sd).unwrap();
            if compare(&su, &tu_sum, sd).unwrap() == Ordering::Greater {
                out.push(format!(
                    "left monotonicity: {}+{} vs {}+{}",
                    render(&s),
                    render(&u),
                    render(&t),
                    render(&u)
                ));
            }
        }
        let sum = add(&s, &t, sd).unwrap();
        if compare(&sum, &t, sd).unwrap() == Ordering::Less
            || compare(&sum, &s, sd).unwrap() == Ordering::Less
        {
            out.push(format!("absorption: {}+{}", render(&s), render(&t)));
        }
        if st != Ordering::Greater {
            let diff = subtract(&s, &t, sd).unwrap();
            if add(&s, &diff, sd).unwrap() != t {
                out.push(format!(
                    "difference round-trip: {} up to {}",
                    render(&s),
                    render(&t)
                ));
            }
        }

        let k = rng.gen_range(0..sd.phi_levels());
        let phi_s = apply_phi(k, &s, sd).unwrap();
        let phi_t = apply_phi(k, &t, sd).unwrap();
        if compare(&phi_s, &phi_t, sd).unwrap() != st {
            out.push(format!(
                "fixed-point function monotonicity at level {k}: {} vs {}",
                render(&s),
                render(&t)
            ));
        }
        if compare(&t, &phi_s, sd).unwrap() == Ordering::Less
            && compare(&u, &phi_s, sd).unwrap() == Ordering::Less
        {
            let tu_sum = add(&t, &u, sd).unwrap();
            expect_cmp(
                &mut out,
                sd,
                &tu_sum,
                &phi_s,
                Ordering::Less,
                "additive closedness",
            );
        }

        match s.classify() {
            TermKind::Zero => {
                if !s.is_zero() {
                    out.push("classification: nonzero term classified zero".to_string());
                }
            }
            TermKind::Successor => {
                let diff = subtract(&Term::numeral(1), &s, sd);
                if diff.is_err() {
                    out.push(format!("classification: {} has no predecessor", render(&s)));
                }
            }
            TermKind::Limit => {
                if s.is_zero() {
                    out.push("classification: zero classified limit".to_string());
                }
            }
        }
        let succ = add(&s, &Term::numeral(1), sd).unwrap();
        if succ.classify() != TermKind::Successor {
            out.push(format!("classification: {}+1 is not a successor", render(&s)));
        }

        // substructure agreement: the same terms compare identically in any
        // extension of the input order
        if let LinearOrder::Finite(n) = sd.input_order {
            let wider = StructureDescriptor { level: sd.level, input_order: LinearOrder::Finite(n + 1) };
            match compare(&s, &t, &wider) {
                Ok(got) if got == st => {}
                Ok(_) => out.push(format!(
                    "substructure agreement: {} vs {}",
                    render(&s),
                    render(&t)
                )),
                Err(e) => out.push(format!("substructure agreement: {e}")),
            }
            let omega = StructureDescriptor { level: sd.level, input_order: LinearOrder::Omega };
            if compare(&s, &t, &omega).ok() != Some(st) {
                out.push(format!(
                    "substructure agreement in the limit: {} vs {}",
                    render(&s),
                    render(&t)
                ));
            }
        }

        // limit probe: a generator dominates every term built strictly below it
        if sd.level >= 1 {
            if let Some(idx) = s.max_generator_index() {
                let next = idx + 1;
                if sd.input_order.contains_index(next) {
                    let gen = Term::generator(sd, next).unwrap();
                    expect_cmp(&mut out, sd, &s, &gen, Ordering::Less, "generator limit probe");
                }
            } else if sd.input_order.contains_index(0) {
                let gen = Term::generator(sd, 0).unwrap();
                expect_cmp(&mut out, sd, &s, &gen, Ordering::Less, "generator limit probe");
            }
        }
        out
    })
}

#[derive(Clone)]
enum Template {
    Zero,
    Base,
    Hole(u32),
    Phi(u32, Box<Template>),
    Sum(Vec<Template>),
}

fn random_template(rng: &mut ChaCha8Rng, sd: &StructureDescriptor, holes: u32, depth: u32) -> Template {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => Template::Zero,
            1 => Template::Base,
            _ => Template::Hole(rng.gen_range(1..=holes)),
        };
    }
    match rng.gen_range(0..5) {
        0 => Template::Hole(rng.gen_range(1..=holes)),
        1 | 2 => {
            let level = rng.gen_range(0..sd.phi_levels());
            Template::Phi(level, Box::new(random_template(rng, sd, holes, depth - 1)))
        }
        _ => {
            let n = rng.gen_range(2..=3);
            Template::Sum(
                (0..n)
                    .map(|_| random_template(rng, sd, holes, depth - 1))
                    .collect(),
            )
        }
    }
}

fn instantiate(template: &Template, tuple: &[u32]) -> RawTerm {
    match template {
        Template::Zero => RawTerm::Zero,
        Template::Base => RawTerm::Gen(0),
        Template::Hole(h) => RawTerm::Gen(tuple[(*h - 1) as usize]),
        Template::Phi(level, sub) => RawTerm::Phi(*level, Box::new(instantiate(sub, tuple))),
        Template::Sum(parts) => RawTerm::Sum(parts.iter().map(|p| instantiate(p, tuple)).collect()),
    }
}

fn increasing_tuple(rng: &mut ChaCha8Rng, len: u32, max: u32) -> Vec<u32> {
    let mut pool: Vec<u32> = (1..=max).collect();
    pool.shuffle(rng);
    let mut tuple: Vec<u32> = pool.into_iter().take(len as usize).collect();
    tuple.sort_unstable();
    tuple
}

/// Checks that relations between terms built from increasing generator
/// tuples do not depend on which increasing tuple is used, and that
/// order-preserving generator substitutions preserve comparisons.
pub fn check_indiscernibility(sd: &StructureDescriptor, samples: u64, seed: u64) -> SuiteOutcome {
    check_indiscernibility_in(RunMode::Parallel, sd, samples, seed)
}

pub fn check_indiscernibility_in(
    mode: RunMode,
    sd: &StructureDescriptor,
    samples: u64,
    seed: u64,
) -> SuiteOutcome {
    let max_index = match (sd.level, sd.input_order) {
        (0, _) => 0,
        (_, LinearOrder::Omega) => 9,
        (_, LinearOrder::Finite(n)) => n,
    };
    if max_index < 4 {
        return SuiteOutcome {
            name: "indiscernibility".to_string(),
            samples: 0,
            violations: Vec::new(),
        };
    }
    run_samples(mode, "indiscernibility", samples, seed, SALT_INDISCERNIBILITY, |_, rng| {
        let mut out = Vec::new();
        let holes = 3;
        let a = random_template(rng, sd, holes, 2);
        let b = random_template(rng, sd, holes, 2);
        let first = increasing_tuple(rng, holes, max_index);
        let second = increasing_tuple(rng, holes, max_index);
        let a1 = normalize(&instantiate(&a, &first), sd).unwrap();
        let b1 = normalize(&instantiate(&b, &first), sd).unwrap();
        let a2 = normalize(&instantiate(&a, &second), sd).unwrap();
        let b2 = normalize(&instantiate(&b, &second), sd).unwrap();
        let outcome1 = compare(&a1, &b1, sd).unwrap();
        let outcome2 = compare(&a2, &b2, sd).unwrap();
        if outcome1 != outcome2 {
            out.push(format!(
                "tuple exchange: {} vs {} compared {:?}, but {} vs {} compared {:?}",
                render(&a1),
                render(&b1),
                outcome1,
                render(&a2),
                render(&b2),
                outcome2
            ));
        }

        // a random strictly increasing substitution of generator indices
        let spread: Vec<u32> = {
            let mut image = increasing_tuple(rng, max_index + 1, max_index + 6);
            image.insert(0, 0);
            image
        };
        let pairs: Vec<(u32, u32)> = (0..=max_index).map(|j| (j, spread[j as usize])).collect();
        let map = DilationMap::new(pairs).unwrap();
        let target = StructureDescriptor {
            level: sd.level,
            input_order: match sd.input_order {
                LinearOrder::Omega => LinearOrder::Omega,
                LinearOrder::Finite(_) => LinearOrder::Finite(max_index + 6),
            },
        };
        let da = match dilate(&a1, &map, sd, &target) {
            Ok(v) => v,
            Err(e) => {
                out.push(format!("dilation failed on {}: {e}", render(&a1)));
                return out;
            }
        };
        let db = dilate(&b1, &map, sd, &target).unwrap();
        if compare(&da, &db, &target).unwrap() != outcome1 {
            out.push(format!(
                "dilation order preservation: {} vs {}",
                render(&a1),
                render(&b1)
            ));
        }
        let j = rng.gen_range(0..=max_index);
        let gen = Term::generator(sd, j).unwrap();
        let mapped = dilate(&gen, &map, sd, &target).unwrap();
        if mapped != Term::generator(&target, spread[j as usize]).unwrap() {
            out.push(format!("dilation generator image: g({j})"));
        }
        let closed = random_generator_free(rng, sd, 2);
        if dilate(&closed, &map, sd, &target).unwrap() != closed {
            out.push(format!("dilation fixes generator-free {}", render(&closed)));
        }
        let identity_pairs: Vec<(u32, u32)> = (0..=max_index).map(|j| (j, j)).collect();
        let identity = DilationMap::new(identity_pairs).unwrap();
        if dilate(&a1, &identity, sd, sd).unwrap() != a1 {
            out.push(format!("identity dilation moved {}", render(&a1)));
        }
        out
    })
}

/// Checks the bound function against its base case, its monotonicity in
/// both arguments, its collapse below generators, and the closure of the
/// iterated base values and fundamental sequences.
pub fn check_bounds(sd: &StructureDescriptor, samples: u64, seed: u64) -> SuiteOutcome {
    check_bounds_in(RunMode::Parallel, sd, samples, seed)
}

pub fn check_bounds_in(
    mode: RunMode,
    sd: &StructureDescriptor,
    samples: u64,
    seed: u64,
) -> SuiteOutcome {
    if sd.level == 0 {
        return SuiteOutcome { name: "bounds".to_string(), samples: 0, violations: Vec::new() };
    }
    let ctx = BoundContext::new(*sd).expect("level checked above");
    run_samples(mode, "bounds", samples, seed, SALT_BOUNDS, move |_, rng| {
        let mut out = Vec::new();
        let sd = ctx.descriptor();
        let beta = random_generator_free(rng, sd, 2);
        let zero = Term::zero();
        let one = Term::numeral(1);

        let base = f_bound(&beta, &zero, &ctx).unwrap();
        let direct = apply_phi(0, &add(&one, &beta, sd).unwrap(), sd).unwrap();
        if base != direct {
            out.push(format!("base case at beta={}", render(&beta)));
        }

        let mut previous = base;
        for k in 1..=2u32 {
            let alpha = Term::numeral(k);
            let next = match f_bound(&beta, &alpha, &ctx) {
                Ok(v) => v,
                Err(e) => {
                    out.push(format!("bound at beta={}, alpha={k}: {e}", render(&beta)));
                    return out;
                }
            };
            if compare(&previous, &next, sd).unwrap() != Ordering::Less {
                out.push(format!(
                    "monotonicity in the second argument at beta={}, alpha={k}",
                    render(&beta)
                ));
            }
            previous = next;
        }

        let gamma = random_generator_free(rng, sd, 2);
        let alpha = Term::numeral(rng.gen_range(0..=1));
        let (lo, hi) = match compare(&gamma, &beta, sd).unwrap() {
            Ordering::Less => (&gamma, &beta),
            _ => (&beta, &gamma),
        };
        let f_lo = f_bound(lo, &alpha, &ctx).unwrap();
        let f_hi = f_bound(hi, &alpha, &ctx).unwrap();
        if compare(&f_lo, &f_hi, sd).unwrap() == Ordering::Greater {
            out.push(format!(
                "monotonicity in the first argument: beta={} vs {}",
                render(lo),
                render(hi)
            ));
        }

        if sd.input_order.contains_index(1) {
            // the closed forms cover finite arguments and exact multiples of ω
            let q = rng.gen_range(0..=1u32);
            let k = if q == 0 { rng.gen_range(0..=2u32) } else { 0 };
            let omega = apply_phi(0, &one, sd).unwrap();
            let mut limit_alpha = Term::zero();
            for _ in 0..q {
                limit_alpha = add(&limit_alpha, &omega, sd).unwrap();
            }
            limit_alpha = add(&limit_alpha, &Term::numeral(k), sd).unwrap();
            let value = f_bound(&beta, &limit_alpha, &ctx).unwrap();
            let gen = Term::generator(sd, q).unwrap();
            if compare(&value, &gen, sd).unwrap() != Ordering::Less {
                out.push(format!(
                    "collapse below the generator: beta={}, alpha={}",
                    render(&beta),
                    render(&limit_alpha)
                ));
            }
        }

        let n = rng.gen_range(1..=3u32);
        let gamma_n = gamma_iterate(n, &ctx);
        let gamma_prev = gamma_iterate(n - 1, &ctx);
        let expected = apply_phi(sd.level - 1, &gamma_prev, sd).unwrap();
        if gamma_n != expected {
            out.push(format!("iterated base value at step {n}"));
        }

        if sd.input_order.contains_index(0) {
            let c = rng.gen_range(0..=match sd.input_order {
                LinearOrder::Omega => 2,
                LinearOrder::Finite(cap) => cap.min(2),
            });
            let step = rng.gen_range(0..=2u32);
            let lower = fund_seq_gprime(c, step, &ctx).unwrap();
            let upper = fund_seq_gprime(c, step + 1, &ctx).unwrap();
            if compare(&lower, &upper, sd).unwrap() != Ordering::Less {
                out.push(format!("fundamental sequence not increasing at index {c}"));
            }
            let gen = Term::generator(sd, c).unwrap();
            if compare(&upper, &gen, sd).unwrap() != Ordering::Less {
                out.push(format!("fundamental sequence escapes its limit at index {c}"));
            }
        }

        let t = random_generator_free(rng, sd, 1);
        let once = power2(&t, sd);
        let twice = once.as_ref().ok().and_then(|p| power2(p, sd).ok());
        match (tower(2, &t, sd), &twice) {
            (Ok(a), Some(b)) => {
                if &a != b {
                    out.push(format!("tower disagrees with iterated doubling at {}", render(&t)));
                }
            }
            (Err(_), None) => {}
            _ => out.push(format!(
                "tower domain disagrees with iterated doubling at {}",
                render(&t)
            )),
        }
        if let Ok(p) = &once {
            if compare(&t, p, sd).unwrap() == Ordering::Greater {
                out.push(format!("doubling decreased {}", render(&t)));
            }
        }
        let small = rng.gen_range(0..=6u32);
        if power2(&Term::numeral(small), sd).unwrap() != Term::numeral(1 << small) {
            out.push(format!("finite doubling at {small}"));
        }
        let sums = natural_sum(&beta, &gamma, sd).unwrap();
        if natural_sum(&gamma, &beta, sd).unwrap() != sums {
            out.push(format!(
                "natural sum commutativity: {} and {}",
                render(&beta),
                render(&gamma)
            ));
        }
        out
    })
}

fn random_dag(rng: &mut ChaCha8Rng, max_nodes: u32) -> FiniteRelation {
    let n = rng.gen_range(1..=max_nodes);
    let mut topo: Vec<u32> = (0..n).collect();
    topo.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..n as usize {
        for j in (i + 1)..n as usize {
            if rng.gen_bool(0.35) {
                edges.insert((topo[i], topo[j]));
            }
        }
    }
    FiniteRelation::new(n, edges).expect("endpoints are in range")
}

/// Checks the full embedding pipeline on random acyclic relations: the
/// extraction invariants, the witness derivations, and the verified
/// monotonicity and bound checks of the produced report.
pub fn check_embedding(samples: u64, seed: u64) -> SuiteOutcome {
    check_embedding_in(RunMode::Parallel, samples, seed)
}

pub fn check_embedding_in(mode: RunMode, samples: u64, seed: u64) -> SuiteOutcome {
    run_samples(mode, "embedding", samples, seed, SALT_EMBEDDING, |_, rng| {
        let mut out = Vec::new();
        let rel = random_dag(rng, 8);
        let state = match extract_ranks(&rel) {
            Ok(s) => s,
            Err(e) => {
                out.push(format!("extraction failed: {e}"));
                return out;
            }
        };
        for v in check_extraction_invariants(&rel, &state) {
            out.push(format!("extraction invariant: {v}"));
        }
        let report = match takeuti_embed(&rel, 12) {
            Ok(r) => r,
            Err(e) => {
                out.push(format!("embedding failed: {e}"));
                return out;
            }
        };
        let verified = verify_embedding(&rel, &report);
        for check in &verified.checks {
            if !check.passed {
                out.push(format!("embedding check failed: {}", check.label));
            }
        }
        out
    })
}

/// Runs every suite and collects the outcomes into one report.
pub fn run_checks(sd: &StructureDescriptor, samples: u64, seed: u64) -> CheckReport {
    run_checks_in(RunMode::Parallel, sd, samples, seed)
}

pub fn run_checks_in(
    mode: RunMode,
    sd: &StructureDescriptor,
    samples: u64,
    seed: u64,
) -> CheckReport {
    CheckReport {
        suites: vec![
            check_structure_axioms_in(mode, sd, samples, seed),
            check_indiscernibility_in(mode, sd, samples, seed),
            check_bounds_in(mode, sd, samples, seed),
            check_embedding_in(mode, samples, seed),
        ],
    }
}
