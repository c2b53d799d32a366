//! W(k,m) and W(k,E): subgroups of Cl(k) generated by classes of degree-1
//! primes splitting completely in the cyclotomic extension (resp. trivial on
//! the fixed field E).
//!
//! A degree-1 prime above p splits completely in k(zeta_M)/k exactly when
//! its Frobenius residue p mod M is trivial (resp. lies in the fixing
//! subgroup of E). Two certificates are possible:
//!
//! - `IndexForced`: [Cl : W] divides both h and the degree of the abelian
//!   extension, so gcd(h, degree) = 1 already forces W = Cl with no
//!   sampling;
//! - `Stabilized`: primes were sampled in doubling windows until a full
//!   window added no new class (and at least [`MIN_PRIMES`] were seen).
//!   Such a result is exact with overwhelming likelihood but unproven,
//!   except when it saturates the whole class group.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{gcd_u64, radical_divides, PrimeWindow};
use crate::classgroup::{prime_to_class, ClassGroup, ClassSubgroup, ReducedForm};
use crate::cyclo::{e_descriptor, galois_group, FixedFieldDescriptor};
use crate::error::{Error, Result};
use crate::lgroups::GroupSpec;

pub const SAMPLE_START: u64 = 10_000;
pub const SAMPLE_CAP: u64 = 10_000_000;
pub const MIN_PRIMES: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    IndexForced,
    Stabilized { bound: u64, primes: u64 },
}

/// Outcome of a W-subgroup computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WComputation {
    /// Cyclotomic modulus M of the ambient extension.
    pub modulus: u64,
    /// Allowed Frobenius residues mod M (the fixing subgroup of E).
    pub residues: Vec<u64>,
    pub result: ClassSubgroup,
    pub certificate: Certificate,
    pub primes_sampled: u64,
    /// The sampled (p, class) pairs, kept for self-consistency checks.
    pub samples: Vec<(u64, ReducedForm)>,
}

fn sample_w(
    group: &ClassGroup,
    modulus: u64,
    residues: &BTreeSet<u64>,
    extension_degree: u64,
) -> Result<WComputation> {
    let residue_list: Vec<u64> = residues.iter().copied().collect();
    if gcd_u64(group.h(), extension_degree) == 1 {
        return Ok(WComputation {
            modulus,
            residues: residue_list,
            result: group.full_subgroup(),
            certificate: Certificate::IndexForced,
            primes_sampled: 0,
            samples: Vec::new(),
        });
    }
    let field = group.field();
    let mut current = group.trivial_subgroup();
    let mut samples: Vec<(u64, ReducedForm)> = Vec::new();
    let mut generators: Vec<ReducedForm> = Vec::new();
    let mut total: u64 = 0;
    let mut lo = 2u64;
    let mut hi = SAMPLE_START;
    loop {
        let window = PrimeWindow::new(modulus, residues.clone(), field.discriminant(), lo, hi - 1)?;
        let mut grew = false;
        for p in window.primes() {
            let (_, class) = prime_to_class(&field, p)?;
            total += 1;
            samples.push((p, class));
            if !current.contains(class) {
                generators.push(class);
                current = group.subgroup_generated(&generators)?;
                grew = true;
            }
            if current.order() == group.h() {
                // cannot grow further: classes of actual split primes
                // already generate the whole group
                return Ok(WComputation {
                    modulus,
                    residues: residue_list,
                    result: current,
                    certificate: Certificate::Stabilized {
                        bound: hi,
                        primes: total,
                    },
                    primes_sampled: total,
                    samples,
                });
            }
        }
        if !grew && total >= MIN_PRIMES {
            return Ok(WComputation {
                modulus,
                residues: residue_list,
                result: current,
                certificate: Certificate::Stabilized {
                    bound: hi,
                    primes: total,
                },
                primes_sampled: total,
                samples,
            });
        }
        if hi >= SAMPLE_CAP {
            return Err(Error::SamplingExhausted {
                modulus,
                bound: SAMPLE_CAP,
            });
        }
        lo = hi;
        hi = (hi * 2).min(SAMPLE_CAP);
    }
}

/// W(k, m): classes of split degree-1 primes with norm = 1 (mod m).
pub fn w_group(group: &ClassGroup, m: u64) -> Result<WComputation> {
    if m == 0 {
        return Err(Error::Precondition("modulus must be >= 1".into()));
    }
    let degree = galois_group(&group.field(), m)?.order();
    sample_w(group, m, &[1 % m].into(), degree)
}

/// W(k, E) for a fixed-field descriptor: Frobenius residues constrained to
/// the fixing subgroup.
pub fn w_group_of_descriptor(
    group: &ClassGroup,
    desc: &FixedFieldDescriptor,
) -> Result<WComputation> {
    let galois = galois_group(&group.field(), desc.modulus)?;
    if !desc.fixing.is_subset_of(&galois) {
        return Err(Error::InvalidInput(
            "descriptor fixing subgroup does not sit inside the Galois group".into(),
        ));
    }
    // [E : k] = [Gal : fixing subgroup]
    let degree = galois.order() / desc.fixing.order();
    sample_w(group, desc.modulus, desc.fixing.elements(), degree)
}

/// W(k,m)^n is contained in W(k,mn) whenever rad(n) | rad(m).
pub fn wexp_check(group: &ClassGroup, m: u64, n: u64) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    if !radical_divides(n, m) {
        return Err(Error::Precondition(format!(
            "some prime of {n} does not divide {m}"
        )));
    }
    let base = w_group(group, m)?;
    let target = w_group(group, m * n)?;
    Ok(base.result.power(n).is_subset_of(&target.result))
}

/// W(k, E_{k,mu,tau^(l^c)})^(l^c) is contained in W(k, l^(n-1)).
pub fn troppo_check(group: &ClassGroup, l: u64, n: u32, c: u32) -> Result<bool> {
    if c == 0 || c >= n {
        return Err(Error::Precondition(format!(
            "need 0 < c < n, got c = {c}, n = {n}"
        )));
    }
    let spec = GroupSpec::semidirect(l, n)?;
    let t = spec.pow(spec.tau(), l.pow(c))?;
    let desc = e_descriptor(&group.field(), &spec, t)?;
    let lhs = w_group_of_descriptor(group, &desc)?;
    let rhs = w_group(group, l.pow(n - 1))?;
    Ok(lhs.result.power(l.pow(c)).is_subset_of(&rhs.result))
}

/// Splitting completely in a bigger cyclotomic field is the stronger
/// condition: W(k, m2) sits inside W(k, m1) when m1 | m2.
pub fn anti_containment_check(group: &ClassGroup, m1: u64, m2: u64) -> Result<bool> {
    if m1 == 0 || m2 % m1 != 0 {
        return Err(Error::Precondition(format!("{m1} does not divide {m2}")));
    }
    let big = w_group(group, m2)?;
    let small = w_group(group, m1)?;
    Ok(big.result.is_subset_of(&small.result))
}
