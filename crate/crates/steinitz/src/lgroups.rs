//! Element arithmetic for the three supported group families, plus the
//! structural checks the rest of the crate leans on.
//!
//! Elements are kept in normal form:
//!
//! - semidirect C(l^n) x| C(l): pairs (a, b) meaning tau^a sigma^b, with the
//!   defining relation sigma tau sigma^-1 = tau^(l^(n-1)+1);
//! - Heisenberg of order l^3: triples (a, b, c) meaning x^a y^b sigma^c,
//!   with y x = x y sigma and sigma central;
//! - cyclic C(l): single exponents.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Desk-scale caps keep exhaustive verification fast.
pub const MAX_PRIME: u64 = 7;
pub const MAX_SEMIDIRECT_N: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Semidirect { l: u64, n: u32 },
    Heisenberg { l: u64 },
    Cyclic { l: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElement {
    Semidirect { a: u64, b: u64 },
    Heisenberg { a: u64, b: u64, c: u64 },
    Cyclic { a: u64 },
}

/// Result of asking whether a conjugate g t g^-1 is a power of t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjExponent {
    Power(u64),
    NotAPower,
}

fn check_l(l: u64) -> Result<()> {
    if l < 3 || l % 2 == 0 || !is_prime(l) || l > MAX_PRIME {
        return Err(Error::InvalidInput(format!(
            "l must be an odd prime <= {MAX_PRIME}, got {l}"
        )));
    }
    Ok(())
}

impl GroupSpec {
    pub fn semidirect(l: u64, n: u32) -> Result<Self> {
        check_l(l)?;
        if !(2..=MAX_SEMIDIRECT_N).contains(&n) {
            return Err(Error::InvalidInput(format!(
                "semidirect exponent n must be in 2..={MAX_SEMIDIRECT_N}, got {n}"
            )));
        }
        Ok(GroupSpec::Semidirect { l, n })
    }

    pub fn heisenberg(l: u64) -> Result<Self> {
        check_l(l)?;
        Ok(GroupSpec::Heisenberg { l })
    }

    pub fn cyclic(l: u64) -> Result<Self> {
        check_l(l)?;
        Ok(GroupSpec::Cyclic { l })
    }

    pub fn l(&self) -> u64 {
        match *self {
            GroupSpec::Semidirect { l, .. }
            | GroupSpec::Heisenberg { l }
            | GroupSpec::Cyclic { l } => l,
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            GroupSpec::Semidirect { l, n } => l.pow(n + 1),
            GroupSpec::Heisenberg { l } => l * l * l,
            GroupSpec::Cyclic { l } => l,
        }
    }

    pub fn exponent(&self) -> u64 {
        match *self {
            GroupSpec::Semidirect { l, n } => l.pow(n),
            GroupSpec::Heisenberg { l } | GroupSpec::Cyclic { l } => l,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match *self {
            GroupSpec::Semidirect { .. } => GroupElement::Semidirect { a: 0, b: 0 },
            GroupSpec::Heisenberg { .. } => GroupElement::Heisenberg { a: 0, b: 0, c: 0 },
            GroupSpec::Cyclic { .. } => GroupElement::Cyclic { a: 0 },
        }
    }

    /// The canonical generator tau of the normal cyclic subgroup, or the
    /// generator of C(l).
    pub fn tau(&self) -> GroupElement {
        match *self {
            GroupSpec::Semidirect { .. } => GroupElement::Semidirect { a: 1, b: 0 },
            GroupSpec::Heisenberg { .. } => GroupElement::Heisenberg { a: 1, b: 0, c: 0 },
            GroupSpec::Cyclic { .. } => GroupElement::Cyclic { a: 1 },
        }
    }

    fn semidirect_moduli(&self) -> (u64, u64, u64) {
        match *self {
            GroupSpec::Semidirect { l, n } => (l, l.pow(n), l.pow(n - 1) + 1),
            _ => unreachable!(),
        }
    }

    fn valid(&self, g: GroupElement) -> bool {
        matches!(
            (self, g),
            (
                GroupSpec::Semidirect { .. },
                GroupElement::Semidirect { .. }
            ) | (
                GroupSpec::Heisenberg { .. },
                GroupElement::Heisenberg { .. }
            ) | (GroupSpec::Cyclic { .. }, GroupElement::Cyclic { .. })
        )
    }

    /// Group product in normal form.
    pub fn mul(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement> {
        if !self.valid(g) || !self.valid(h) {
            return Err(Error::ShapeMismatch);
        }
        Ok(match (*self, g, h) {
            (
                GroupSpec::Semidirect { l, .. },
                GroupElement::Semidirect { a: a1, b: b1 },
                GroupElement::Semidirect { a: a2, b: b2 },
            ) => {
                let (_, ln, u) = self.semidirect_moduli();
                // sigma^b tau^a sigma^-b = tau^(a * u^b)
                let shifted = (a2 as u128 * pow_mod_u128(u, b1, ln)) % ln as u128;
                GroupElement::Semidirect {
                    a: ((a1 as u128 + shifted) % ln as u128) as u64,
                    b: (b1 + b2) % l,
                }
            }
            (
                GroupSpec::Heisenberg { l },
                GroupElement::Heisenberg {
                    a: a1,
                    b: b1,
                    c: c1,
                },
                GroupElement::Heisenberg {
                    a: a2,
                    b: b2,
                    c: c2,
                },
            ) => GroupElement::Heisenberg {
                a: (a1 + a2) % l,
                b: (b1 + b2) % l,
                c: (c1 + c2 + b1 * a2) % l,
            },
            (
                GroupSpec::Cyclic { l },
                GroupElement::Cyclic { a: a1 },
                GroupElement::Cyclic { a: a2 },
            ) => GroupElement::Cyclic { a: (a1 + a2) % l },
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, g: GroupElement) -> Result<GroupElement> {
        if !self.valid(g) {
            return Err(Error::ShapeMismatch);
        }
        Ok(match (*self, g) {
            (GroupSpec::Semidirect { l, .. }, GroupElement::Semidirect { a, b }) => {
                let (_, ln, u) = self.semidirect_moduli();
                // (a, b)^-1 = (-a * u^(-b), -b); u has order l mod l^n.
                let binv = (l - b % l) % l;
                let ainv = ((ln - a % ln) as u128 * pow_mod_u128(u, binv, ln)) % ln as u128;
                GroupElement::Semidirect {
                    a: ainv as u64,
                    b: binv,
                }
            }
            (GroupSpec::Heisenberg { l }, GroupElement::Heisenberg { a, b, c }) => {
                GroupElement::Heisenberg {
                    a: (l - a % l) % l,
                    b: (l - b % l) % l,
                    c: ((2 * l * l - c) + a * b) % l,
                }
            }
            (GroupSpec::Cyclic { l }, GroupElement::Cyclic { a }) => {
                GroupElement::Cyclic { a: (l - a % l) % l }
            }
            _ => unreachable!(),
        })
    }

    /// m-fold product by square-and-multiply.
    pub fn pow(&self, g: GroupElement, mut m: u64) -> Result<GroupElement> {
        if !self.valid(g) {
            return Err(Error::ShapeMismatch);
        }
        let mut acc = self.identity();
        let mut base = g;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            m >>= 1;
        }
        Ok(acc)
    }

    /// Least m >= 1 with g^m = identity.
    pub fn element_order(&self, g: GroupElement) -> Result<u64> {
        if !self.valid(g) {
            return Err(Error::ShapeMismatch);
        }
        let id = self.identity();
        let mut cur = g;
        for m in 1..=self.order() {
            if cur == id {
                return Ok(m);
            }
            cur = self.mul(cur, g)?;
        }
        unreachable!("element order must divide the group order")
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        match *self {
            GroupSpec::Semidirect { l, n } => {
                let ln = l.pow(n);
                (0..ln)
                    .flat_map(|a| (0..l).map(move |b| GroupElement::Semidirect { a, b }))
                    .collect()
            }
            GroupSpec::Heisenberg { l } => (0..l)
                .flat_map(|a| {
                    (0..l).flat_map(move |b| {
                        (0..l).map(move |c| GroupElement::Heisenberg { a, b, c })
                    })
                })
                .collect(),
            GroupSpec::Cyclic { l } => (0..l).map(|a| GroupElement::Cyclic { a }).collect(),
        }
    }

    /// The exponent nu (mod order(t)) with g t g^-1 = t^nu, least
    /// nonnegative, or `NotAPower` when the conjugate is no power of t.
    pub fn conj_power_exponent(&self, t: GroupElement, g: GroupElement) -> Result<ConjExponent> {
        if t == self.identity() {
            return Err(Error::Precondition("t must be nontrivial".into()));
        }
        let conj = self.mul(self.mul(g, t)?, self.inv(g)?)?;
        let ord = self.element_order(t)?;
        let mut power = self.identity();
        for nu in 0..ord {
            if power == conj {
                return Ok(ConjExponent::Power(nu));
            }
            power = self.mul(power, t)?;
        }
        Ok(ConjExponent::NotAPower)
    }

    /// All residues mod order(t) realized as conjugation exponents on t by
    /// members of `actors`.
    pub fn action_exponent_set(
        &self,
        t: GroupElement,
        actors: &[GroupElement],
    ) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        for &g in actors {
            if let ConjExponent::Power(nu) = self.conj_power_exponent(t, g)? {
                out.insert(nu);
            }
        }
        Ok(out)
    }

    /// One generator per nontrivial cyclic subgroup, with its order.
    /// Trivial subgroups are skipped: these enumerate candidate inertia
    /// groups, which are nontrivial by definition.
    pub fn cyclic_subgroups(&self) -> Vec<(GroupElement, u64)> {
        let id = self.identity();
        let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        let mut out = Vec::new();
        for g in self.elements() {
            if g == id {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut cur = g;
            while members.insert(cur) {
                cur = self.mul(cur, g).expect("same family");
            }
            let order = members.len() as u64;
            if seen.insert(members.into_iter().collect()) {
                out.push((g, order));
            }
        }
        out
    }
}

fn pow_mod_u128(base: u64, mut exp: u64, m: u64) -> u128 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Closed form for (tau^a sigma^b)^m in C(l^n) x| C(l):
/// (a*m + a*b*l^(n-1)*m(m-1)/2 mod l^n, b*m mod l).
pub fn semidirect_pow_closed_form(l: u64, n: u32, a: u64, b: u64, m: u64) -> Result<GroupElement> {
    GroupSpec::semidirect(l, n)?;
    let ln = l.pow(n) as u128;
    let half = (m as u128) * (m.saturating_sub(1) as u128) / 2;
    let twist = (a as u128 % ln) * (b as u128 % l as u128) % ln * (l.pow(n - 1) as u128) % ln
        * (half % ln)
        % ln;
    let linear = (a as u128 % ln) * (m as u128 % ln) % ln;
    Ok(GroupElement::Semidirect {
        a: ((linear + twist) % ln) as u64,
        b: (b % l) * (m % l) % l,
    })
}

/// Report from the presentation-uniqueness check: every element x that maps
/// onto the order-l quotient and conjugates tau correctly must satisfy
/// x^l = tau^(bl), and sigma' = tau^(-b) x must be a legitimate complement.
#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub l: u64,
    pub n: u32,
    pub candidates: u64,
    pub violations: Vec<String>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_presentation_uniqueness(l: u64, n: u32) -> Result<PresentationReport> {
    let spec = GroupSpec::semidirect(l, n)?;
    let u = l.pow(n - 1) + 1;
    let tau = spec.tau();
    let tau_to_u = spec.pow(tau, u)?;
    let id = spec.identity();
    let mut candidates = 0;
    let mut violations = Vec::new();
    for x in spec.elements() {
        let GroupElement::Semidirect { b, .. } = x else {
            unreachable!()
        };
        if b % l == 0 {
            continue; // coset of x does not generate the order-l quotient
        }
        if spec.mul(spec.mul(x, tau)?, spec.inv(x)?)? != tau_to_u {
            continue;
        }
        candidates += 1;
        let xl = spec.pow(x, l)?;
        let GroupElement::Semidirect { a: e, b: zb } = xl else {
            unreachable!()
        };
        if zb != 0 {
            violations.push(format!("{x:?}: x^l is not in the normal subgroup"));
            continue;
        }
        if e % l != 0 {
            violations.push(format!("{x:?}: x^l = tau^{e} with l not dividing {e}"));
            continue;
        }
        let b_small = e / l;
        let sigma_prime = spec.mul(spec.inv(spec.pow(tau, b_small)?)?, x)?;
        if spec.pow(sigma_prime, l)? != id {
            violations.push(format!("{x:?}: sigma' does not have order dividing l"));
            continue;
        }
        let conj = spec.mul(spec.mul(sigma_prime, tau)?, spec.inv(sigma_prime)?)?;
        if conj != tau_to_u {
            violations.push(format!("{x:?}: sigma' acts on tau with the wrong exponent"));
        }
    }
    Ok(PresentationReport {
        l,
        n,
        candidates,
        violations,
    })
}
