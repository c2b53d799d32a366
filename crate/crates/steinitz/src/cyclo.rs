//! Galois groups of k(zeta_M)/k as residue subgroups of (Z/MZ)*, the
//! conjugation-action subgroups attached to a group element, and fixed-field
//! descriptors.
//!
//! k sits inside Q(zeta_M) exactly when its fundamental discriminant divides
//! M; in that case Gal(k(zeta_M)/k) is the kernel of the quadratic character
//! kronecker(D, .) on (Z/MZ)*, otherwise it is all of (Z/MZ)*.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{gcd_u64, kronecker, pow_mod};
use crate::classgroup::Field;
use crate::error::{Error, Result};
use crate::lgroups::{GroupElement, GroupSpec};

/// A subgroup of (Z/MZ)*. For M = 1 the single residue is 0 (= 1 mod 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueSubgroup {
    modulus: u64,
    elements: BTreeSet<u64>,
}

impl ResidueSubgroup {
    pub fn new(modulus: u64, elements: BTreeSet<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be >= 1".into()));
        }
        let group = ResidueSubgroup { modulus, elements };
        if !group.contains(1 % modulus) || !group.is_closed() {
            return Err(Error::InvalidInput(format!(
                "element set is not a subgroup of (Z/{modulus})*"
            )));
        }
        Ok(group)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &BTreeSet<u64> {
        &self.elements
    }

    pub fn contains(&self, residue: u64) -> bool {
        self.elements.contains(&(residue % self.modulus))
    }

    pub fn is_subset_of(&self, other: &ResidueSubgroup) -> bool {
        self.modulus == other.modulus && self.elements.is_subset(&other.elements)
    }

    /// Closure under multiplication; the sets are finite, so closure under
    /// inverses follows.
    pub fn is_closed(&self) -> bool {
        for &a in &self.elements {
            if self.modulus > 1 && gcd_u64(a, self.modulus) != 1 {
                return false;
            }
            for &b in &self.elements {
                if !self.elements.contains(&(a * b % self.modulus)) {
                    return false;
                }
            }
        }
        true
    }
}

fn units_mod(m: u64) -> BTreeSet<u64> {
    if m == 1 {
        return [0].into();
    }
    (1..m).filter(|&r| gcd_u64(r, m) == 1).collect()
}

/// Gal(k(zeta_M)/k) as a residue subgroup of (Z/MZ)*.
pub fn galois_group(field: &Field, m: u64) -> Result<ResidueSubgroup> {
    if m == 0 {
        return Err(Error::Precondition("modulus must be >= 1".into()));
    }
    let units = units_mod(m);
    let abs_disc = field.discriminant().unsigned_abs();
    let elements = if m > 1 && m % abs_disc == 0 {
        units
            .into_iter()
            .filter(|&nu| kronecker(field.discriminant(), nu as i64) == Ok(1))
            .collect()
    } else {
        units
    };
    Ok(ResidueSubgroup {
        modulus: m,
        elements,
    })
}

/// The subgroup of Gal(k(zeta_o(t))/k) whose cyclotomic exponents are
/// realized by conjugation on t inside the ambient group.
pub fn g_group(field: &Field, spec: &GroupSpec, t: GroupElement) -> Result<ResidueSubgroup> {
    if t == spec.identity() {
        return Err(Error::Precondition("t must be nontrivial".into()));
    }
    let modulus = spec.element_order(t)?;
    let galois = galois_group(field, modulus)?;
    let exponents = spec.action_exponent_set(t, &spec.elements())?;
    let elements = galois
        .elements
        .iter()
        .copied()
        .filter(|nu| exponents.contains(nu))
        .collect();
    Ok(ResidueSubgroup { modulus, elements })
}

/// Fixed field of [`g_group`] inside k(zeta_M), described by the fixing
/// subgroup. `cyclotomic_level = Some(j)` records that the fixing subgroup
/// is exactly the kernel of reduction (Z/M)* -> (Z/j)* inside the Galois
/// group, i.e. that the fixed field is k(zeta_j); the annotation is only set
/// when that equality is established by the subgroup structure itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedFieldDescriptor {
    pub modulus: u64,
    pub fixing: ResidueSubgroup,
    pub cyclotomic_level: Option<u64>,
}

pub fn e_descriptor(
    field: &Field,
    spec: &GroupSpec,
    t: GroupElement,
) -> Result<FixedFieldDescriptor> {
    let fixing = g_group(field, spec, t)?;
    let modulus = fixing.modulus;
    let galois = galois_group(field, modulus)?;
    let mut cyclotomic_level = None;
    for j in (1..=modulus).filter(|j| modulus % j == 0) {
        let kernel: BTreeSet<u64> = galois
            .elements
            .iter()
            .copied()
            .filter(|&nu| nu % j == 1 % j)
            .collect();
        if kernel == fixing.elements {
            cyclotomic_level = Some(j);
            break;
        }
    }
    Ok(FixedFieldDescriptor {
        modulus,
        fixing,
        cyclotomic_level,
    })
}

/// Checks that the l^c-th powers of every lift of G_{k,mu,tau^(l^c)} land in
/// G_{k,mu,tau}. Quantifies over all lifts inside the Galois group, the
/// strongest residue-level reading.
pub fn potenzagalois_check(field: &Field, l: u64, n: u32, c: u32) -> Result<bool> {
    if c == 0 || c >= n {
        return Err(Error::Precondition(format!(
            "need 0 < c < n, got c = {c}, n = {n}"
        )));
    }
    let spec = GroupSpec::semidirect(l, n)?;
    let tau = spec.tau();
    let lc = l.pow(c);
    let t_small = spec.pow(tau, lc)?;
    let small = g_group(field, &spec, t_small)?; // modulus l^(n-c)
    let big = g_group(field, &spec, tau)?; // modulus l^n
    let galois_big = galois_group(field, l.pow(n))?;
    for &nu in &small.elements {
        for &lift in &galois_big.elements {
            if lift % small.modulus != nu % small.modulus {
                continue;
            }
            if !big.contains(pow_mod(lift, lc, l.pow(n))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
