//! Auxiliary ordinal functions for the bounding machinery: natural sums,
//! base-2 exponentiation and its tower, the bound function on pairs of
//! terms, and the fundamental sequences approaching the generators.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::term::{
    add_raw, apply_phi_raw, cmp_terms, expect_member, Atom, StructureDescriptor, Term,
};

/// A structure with at least one derivative level, fixing the function g as
/// the top available symbol (level K−1). The generators Gen(j) then denote
/// the values g′(c_j) of the derivative of g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundContext {
    sd: StructureDescriptor,
}

impl BoundContext {
    /// Fails for structures without derivative levels (K = 0), which have no
    /// g′ generators to bound against.
    pub fn new(sd: StructureDescriptor) -> Result<BoundContext> {
        if sd.level == 0 {
            return Err(Error::UnsupportedBound(
                "bound computations need at least one derivative level".into(),
            ));
        }
        Ok(BoundContext { sd })
    }

    pub fn descriptor(&self) -> &StructureDescriptor {
        &self.sd
    }

    fn g_level(&self) -> u32 {
        self.sd.level - 1
    }

    /// One application of g.
    fn g(&self, t: &Term) -> Term {
        apply_phi_raw(self.g_level(), t, &self.sd).expect("level K-1 is always available")
    }
}

/// The natural (Hessenberg) sum: both atom lists merged into one
/// non-increasing list. Commutative, associative, strictly monotone in each
/// argument, and never below the ordinary sum.
pub fn natural_sum(s: &Term, t: &Term, sd: &StructureDescriptor) -> Result<Term> {
    expect_member(s, sd)?;
    expect_member(t, sd)?;
    Ok(natural_sum_raw(s, t))
}

pub(crate) fn natural_sum_raw(s: &Term, t: &Term) -> Term {
    let (mut i, mut j) = (0, 0);
    let (a, b) = (s.atoms(), t.atoms());
    let mut merged = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        if crate::term::cmp_atoms(&a[i], &b[j]) == Ordering::Less {
            merged.push(b[j].clone());
            j += 1;
        } else {
            merged.push(a[i].clone());
            i += 1;
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Term::from_atoms(merged)
}

/// Largest finite exponent part accepted by [`power2`]: the result carries
/// 2^n summands, so the cap keeps results at a sane size.
pub const POWER2_FINITE_CAP: u32 = 16;

/// 2^t for terms in the ω-fragment (every atom an ω-power).
///
/// Splits t = λ + n with λ the limit part and n the finite part, writes
/// λ = ω·q, and returns ω^q · 2^n as a normal form. Terms with atoms outside
/// the fragment, or with n beyond [`POWER2_FINITE_CAP`], are rejected.
pub fn power2(t: &Term, sd: &StructureDescriptor) -> Result<Term> {
    expect_member(t, sd)?;
    let one = Term::numeral(1);
    let mut q = Term::zero();
    let mut finite: u32 = 0;
    for atom in t.atoms() {
        let Atom::Phi(0, e) = atom else {
            return Err(Error::UnsupportedExponent(
                "argument has an atom outside the ω-fragment".into(),
            ));
        };
        if e.is_zero() {
            finite += 1;
        } else {
            // ω^e = ω·ω^d for the unique d with 1 + d = e.
            let d = crate::term::subtract(&one, e, sd)?;
            q = add_raw(&q, &apply_phi_raw(0, &d, sd)?);
        }
    }
    if finite > POWER2_FINITE_CAP {
        return Err(Error::UnsupportedExponent(format!(
            "finite exponent part {finite} exceeds the cap {POWER2_FINITE_CAP}"
        )));
    }
    let copies = 1u32 << finite;
    if q.is_zero() {
        return Ok(Term::numeral(copies));
    }
    let power = apply_phi_raw(0, &q, sd)?;
    let atom = power.atoms()[0].clone();
    Ok(Term::from_atoms(vec![atom; copies as usize]))
}

/// The p-fold iterate of [`power2`] starting from t.
pub fn tower(p: u32, t: &Term, sd: &StructureDescriptor) -> Result<Term> {
    expect_member(t, sd)?;
    let mut acc = t.clone();
    for _ in 0..p {
        acc = power2(&acc, sd)?;
    }
    Ok(acc)
}

/// The bound function on (β, α).
///
/// At α = 0 it is ω^(1+β). At successors it unfolds the recursion
/// F(β,α+1) = F(g(ω^(2(F(β,α)+β)+1))+1+β, α) + g(ω^(2(F(β,α)+β)+1)) + 1.
/// At limits it is defined through the closed form F(β, ω(1+m)) = g′(m), so
/// α must decompose as ω·q + k with finite q and k, and for q > 0 the value
/// is the generator Gen(q−1), defined only when β lies below it.
pub fn f_bound(beta: &Term, alpha: &Term, ctx: &BoundContext) -> Result<Term> {
    let sd = ctx.descriptor();
    expect_member(beta, sd)?;
    expect_member(alpha, sd)?;
    let (q, k) = decompose_alpha(alpha)?;
    f_bound_rec(beta, q, k, ctx)
}

/// Splits α = ω·q + k and rejects anything outside that fragment.
fn decompose_alpha(alpha: &Term) -> Result<(u32, u32)> {
    let one = Term::numeral(1);
    let (mut q, mut k) = (0u32, 0u32);
    for atom in alpha.atoms() {
        match atom {
            Atom::Phi(0, e) if e.is_zero() => k += 1,
            Atom::Phi(0, e) if *e == one => q += 1,
            _ => {
                return Err(Error::UnsupportedExponent(
                    "the bound recursion takes second arguments of the form ω·q+k".into(),
                ))
            }
        }
    }
    Ok((q, k))
}

fn f_bound_rec(beta: &Term, q: u32, k: u32, ctx: &BoundContext) -> Result<Term> {
    let sd = ctx.descriptor();
    let one = Term::numeral(1);
    if k == 0 {
        if q == 0 {
            // ω^(1+β)
            return apply_phi_raw(0, &add_raw(&one, beta), sd);
        }
        let gen = Term::generator(sd, q - 1)?;
        if cmp_terms(beta, &gen) != Ordering::Less {
            return Err(Error::UnsupportedBound(format!(
                "the closed form needs the first argument below generator {}",
                q - 1
            )));
        }
        return Ok(gen);
    }
    // Successor step down to α = ω·q + (k−1).
    let inner = f_bound_rec(beta, q, k - 1, ctx)?;
    let fb = add_raw(&inner, beta);
    let exponent = add_raw(&add_raw(&fb, &fb), &one);
    let g_term = ctx.g(&apply_phi_raw(0, &exponent, sd)?);
    let shifted_beta = add_raw(&add_raw(&g_term, &one), beta);
    let outer = f_bound_rec(&shifted_beta, q, k - 1, ctx)?;
    Ok(add_raw(&add_raw(&outer, &g_term), &one))
}

/// The n-th iterate of g on 0.
pub fn gamma_iterate(n: u32, ctx: &BoundContext) -> Term {
    let mut acc = Term::zero();
    for _ in 0..n {
        acc = ctx.g(&acc);
    }
    acc
}

/// The n-th element of the fundamental sequence approaching Gen(c_index):
/// g^n(0) for index 0, g^n(Gen(c_index−1)+1) above it. Strictly increasing
/// in n, and every value stays strictly below Gen(c_index).
pub fn fund_seq_gprime(c_index: u32, n: u32, ctx: &BoundContext) -> Result<Term> {
    let sd = ctx.descriptor();
    if !sd.input_order.contains_index(c_index) {
        return Err(Error::InvalidIndex(c_index));
    }
    if c_index == 0 {
        return Ok(gamma_iterate(n, ctx));
    }
    let mut acc = add_raw(&Term::generator_unchecked(c_index - 1), &Term::numeral(1));
    for _ in 0..n {
        acc = ctx.g(&acc);
    }
    Ok(acc)
}
