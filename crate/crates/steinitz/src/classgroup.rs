//! Ideal class groups of imaginary quadratic fields, realized as reduced
//! binary quadratic forms under Gauss/Dirichlet composition.
//!
//! A form (a, b, c) of fundamental discriminant D < 0 stands for an ideal
//! class of k = Q(sqrt(d)); the reduced representative is unique per class,
//! so forms double as ideal classes throughout the crate.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, isqrt, kronecker, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Default cap on |D| for class-group enumeration.
pub const DISC_CAP: i64 = 1_000_000;

/// An imaginary quadratic field Q(sqrt(d)), d < 0 squarefree, carrying its
/// fundamental discriminant D (= d or 4d by d mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    d: i64,
    disc: i64,
}

impl Field {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::InvalidInput(format!("d must be negative, got {d}")));
        }
        if d < -1_000_000_000 {
            return Err(Error::InvalidInput(format!("|d| too large: {d}")));
        }
        let abs = d.unsigned_abs();
        let mut f = 2u64;
        while f <= isqrt(abs) {
            if abs % (f * f) == 0 {
                return Err(Error::InvalidInput(format!(
                    "d must be squarefree, {d} is divisible by {}",
                    f * f
                )));
            }
            f += 1;
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(Field { d, disc })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    /// The principal form, identity of the class group.
    pub fn principal_form(&self) -> ReducedForm {
        if self.disc.rem_euclid(4) == 0 {
            ReducedForm {
                a: 1,
                b: 0,
                c: -self.disc / 4,
            }
        } else {
            ReducedForm {
                a: 1,
                b: 1,
                c: (1 - self.disc) / 4,
            }
        }
    }
}

/// A reduced positive definite binary quadratic form: |b| <= a <= c with
/// b >= 0 whenever |b| = a or a = c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    a: i64,
    b: i64,
    c: i64,
}

impl ReducedForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = ReducedForm { a, b, c };
        if a <= 0 || f.discriminant() >= 0 {
            return Err(Error::InvalidInput(format!(
                "({a},{b},{c}) is not positive definite"
            )));
        }
        if !f.is_reduced() {
            return Err(Error::InvalidInput(format!("({a},{b},{c}) is not reduced")));
        }
        Ok(f)
    }

    /// Reduce an arbitrary positive definite form.
    pub fn reduce(a: i64, b: i64, c: i64) -> Result<Self> {
        let disc = (b as i128) * (b as i128) - 4 * (a as i128) * (c as i128);
        if a <= 0 || disc >= 0 {
            return Err(Error::InvalidInput(format!(
                "({a},{b},{c}) is not positive definite"
            )));
        }
        Ok(reduce_raw(a as i128, b as i128, c as i128))
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn discriminant(&self) -> i64 {
        ((self.b as i128) * (self.b as i128) - 4 * (self.a as i128) * (self.c as i128)) as i64
    }

    pub fn is_principal(&self) -> bool {
        self.a == 1
    }

    fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }
}

// Forms serialize as bare triples [a, b, c].
impl Serialize for ReducedForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a, self.b, self.c).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReducedForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b, c) = <(i64, i64, i64)>::deserialize(d)?;
        ReducedForm::new(a, b, c).map_err(|e| D::Error::custom(e.to_string()))
    }
}

fn reduce_raw(mut a: i128, mut b: i128, mut c: i128) -> ReducedForm {
    let disc = b * b - 4 * a * c;
    loop {
        if b > a || b <= -a {
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            c = (r * r - disc) / (4 * a);
            b = r;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        break;
    }
    ReducedForm {
        a: a as i64,
        b: b as i64,
        c: c as i64,
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

/// Solve a*x = b (mod m); returns (x0, m/g) so the full solution set is
/// x0 + (m/g)*Z. None when gcd(a, m) does not divide b.
fn solve_linear_congruence(a: i128, b: i128, m: i128) -> Option<(i128, i128)> {
    debug_assert!(m > 0);
    let g = gcd_i128(a, m).max(1);
    if b % g != 0 {
        return None;
    }
    let m1 = m / g;
    if m1 == 1 {
        return Some((0, 1));
    }
    let a1 = (a / g).rem_euclid(m1);
    let b1 = (b / g).rem_euclid(m1);
    let inv = mod_inverse(a1, m1)?;
    Some(((b1 * inv).rem_euclid(m1), m1))
}

/// Gauss/Dirichlet composition of two forms of the same discriminant,
/// returned reduced. Abelian group law with the principal form as identity.
pub fn compose(f: ReducedForm, g: ReducedForm) -> Result<ReducedForm> {
    let (df, dg) = (f.discriminant(), g.discriminant());
    if df != dg {
        return Err(Error::DiscriminantMismatch(df, dg));
    }
    let (a1, b1, c1) = (f.a as i128, f.b as i128, f.c as i128);
    let (a2, b2) = (g.a as i128, g.b as i128);
    let s = (b1 + b2) / 2;
    let h = (b2 - b1) / 2;
    let w = gcd_i128(gcd_i128(a1, a2), s).max(1);
    let t1 = a1 / w;
    let t2 = a2 / w;
    let u = s / w;
    let t1t2 = t1 * t2;
    let (mu, nu) = solve_linear_congruence(t2 * u, h * u + t1 * c1, t1t2)
        .expect("first composition congruence is always solvable");
    let (lambda, _) = solve_linear_congruence(t2 * nu, h - t2 * mu, t1)
        .expect("second composition congruence is always solvable");
    let k = mu + nu * lambda;
    let ell = (k * t2 - h) / t1;
    let m = (t2 * u * k - h * u - c1 * t1) / t1t2;
    let a3 = t1t2;
    let b3 = w * u - (k * t2 + ell * t1);
    let c3 = k * ell - w * m;
    Ok(reduce_raw(a3, b3, c3))
}

/// Class inverse: (a, -b, c), re-normalized at the reduction boundary.
pub fn inverse(f: ReducedForm) -> ReducedForm {
    if f.b.abs() == f.a || f.a == f.c {
        f
    } else {
        ReducedForm {
            a: f.a,
            b: -f.b,
            c: f.c,
        }
    }
}

/// e-th power of a class by square-and-multiply.
pub fn form_pow(f: ReducedForm, mut e: u64) -> ReducedForm {
    let field_identity = principal_of_disc(f.discriminant());
    let mut acc = field_identity;
    let mut base = f;
    while e > 0 {
        if e & 1 == 1 {
            acc = compose(acc, base).expect("same discriminant");
        }
        base = compose(base, base).expect("same discriminant");
        e >>= 1;
    }
    acc
}

/// Least e >= 1 with f^e principal.
pub fn form_order(f: ReducedForm) -> u64 {
    let id = principal_of_disc(f.discriminant());
    let mut cur = f;
    let mut e = 1;
    while cur != id {
        cur = compose(cur, f).expect("same discriminant");
        e += 1;
    }
    e
}

fn principal_of_disc(disc: i64) -> ReducedForm {
    if disc.rem_euclid(4) == 0 {
        ReducedForm {
            a: 1,
            b: 0,
            c: -disc / 4,
        }
    } else {
        ReducedForm {
            a: 1,
            b: 1,
            c: (1 - disc) / 4,
        }
    }
}

/// The full class group of a field: every reduced form of discriminant D,
/// with abelian invariant factors and a small generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    field: Field,
    elements: Vec<ReducedForm>,
    invariants: Vec<u64>,
    generators: Vec<ReducedForm>,
}

impl ClassGroup {
    pub fn enumerate(field: Field) -> Result<Self> {
        Self::enumerate_with_cap(field, DISC_CAP)
    }

    pub fn enumerate_with_cap(field: Field, cap: i64) -> Result<Self> {
        let disc = field.discriminant();
        if disc.unsigned_abs() > cap.unsigned_abs() {
            return Err(Error::CapExceeded(disc, cap));
        }
        let mut elements = Vec::new();
        let a_max = isqrt(disc.unsigned_abs() / 3) as i64;
        for a in 1..=a_max.max(1) {
            for b in -a..=a {
                if (b - disc).rem_euclid(2) != 0 {
                    continue;
                }
                let num = (b as i128) * (b as i128) - disc as i128;
                if num % (4 * a as i128) != 0 {
                    continue;
                }
                let c = (num / (4 * a as i128)) as i64;
                if c < a {
                    continue;
                }
                if (b.abs() == a || a == c) && b < 0 {
                    continue;
                }
                elements.push(ReducedForm { a, b, c });
            }
        }
        elements.sort();
        let invariants = abelian_invariants(&elements, field.principal_form());
        let generators = greedy_generators(&elements, field.principal_form());
        Ok(ClassGroup {
            field,
            elements,
            invariants,
            generators,
        })
    }

    /// Rebuild a group from cached parts, re-deriving what the cache does
    /// not carry and validating the rest.
    pub fn from_cached(
        field: Field,
        forms: Vec<ReducedForm>,
        invariants: Vec<u64>,
    ) -> Result<Self> {
        let mut elements = forms;
        elements.sort();
        elements.dedup();
        for f in &elements {
            if f.discriminant() != field.discriminant() {
                return Err(Error::DiscriminantMismatch(
                    f.discriminant(),
                    field.discriminant(),
                ));
            }
        }
        let expected = abelian_invariants(&elements, field.principal_form());
        if expected != invariants {
            return Err(Error::InvalidInput(format!(
                "cached invariants {invariants:?} disagree with recomputed {expected:?}"
            )));
        }
        if elements.len() as u64 != invariants.iter().product::<u64>().max(1) {
            return Err(Error::InvalidInput(
                "cached element count disagrees with invariants".into(),
            ));
        }
        let generators = greedy_generators(&elements, field.principal_form());
        Ok(ClassGroup {
            field,
            elements,
            invariants,
            generators,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn h(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn identity(&self) -> ReducedForm {
        self.field.principal_form()
    }

    pub fn elements(&self) -> &[ReducedForm] {
        &self.elements
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn generators(&self) -> &[ReducedForm] {
        &self.generators
    }

    pub fn contains(&self, f: ReducedForm) -> bool {
        self.elements.binary_search(&f).is_ok()
    }

    /// Smallest subgroup containing the given classes.
    pub fn subgroup_generated(&self, classes: &[ReducedForm]) -> Result<ClassSubgroup> {
        for f in classes {
            if !self.contains(*f) {
                return Err(Error::InvalidInput(format!(
                    "{f:?} is not a class of discriminant {}",
                    self.field.discriminant()
                )));
            }
        }
        Ok(ClassSubgroup::generate(
            self.field.discriminant(),
            self.identity(),
            classes,
        ))
    }

    /// The whole group as a subgroup value.
    pub fn full_subgroup(&self) -> ClassSubgroup {
        ClassSubgroup {
            disc: self.field.discriminant(),
            elements: self.elements.clone(),
            generators: self.generators.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> ClassSubgroup {
        ClassSubgroup {
            disc: self.field.discriminant(),
            elements: vec![self.identity()],
            generators: Vec::new(),
        }
    }
}

/// A subgroup of a class group, as a sorted element list.
#[derive(Debug, Clone, Serialize)]
pub struct ClassSubgroup {
    disc: i64,
    elements: Vec<ReducedForm>,
    generators: Vec<ReducedForm>,
}

// Subgroups are equal when their element sets are; the generator list is
// provenance, not identity.
impl PartialEq for ClassSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.disc == other.disc && self.elements == other.elements
    }
}

impl Eq for ClassSubgroup {}

impl ClassSubgroup {
    fn generate(disc: i64, identity: ReducedForm, gens: &[ReducedForm]) -> Self {
        let mut set: BTreeSet<ReducedForm> = BTreeSet::new();
        set.insert(identity);
        loop {
            let mut grew = false;
            let snapshot: Vec<_> = set.iter().copied().collect();
            for &g in gens {
                for &s in &snapshot {
                    let t = compose(s, g).expect("same discriminant");
                    if set.insert(t) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        ClassSubgroup {
            disc,
            elements: set.into_iter().collect(),
            generators: gens.to_vec(),
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[ReducedForm] {
        &self.elements
    }

    pub fn generators(&self) -> &[ReducedForm] {
        &self.generators
    }

    pub fn contains(&self, f: ReducedForm) -> bool {
        self.elements.binary_search(&f).is_ok()
    }

    pub fn is_subset_of(&self, other: &ClassSubgroup) -> bool {
        self.disc == other.disc && self.elements.iter().all(|f| other.contains(*f))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Image of the e-th power map, itself a subgroup since the group is
    /// abelian.
    pub fn power(&self, e: u64) -> ClassSubgroup {
        let mut set: BTreeSet<ReducedForm> = BTreeSet::new();
        for &f in &self.elements {
            set.insert(form_pow(f, e));
        }
        let generators = self
            .generators
            .iter()
            .map(|&g| form_pow(g, e))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        ClassSubgroup {
            disc: self.disc,
            elements: set.into_iter().collect(),
            generators,
        }
    }
}

fn abelian_invariants(elements: &[ReducedForm], identity: ReducedForm) -> Vec<u64> {
    let h = elements.len() as u64;
    if h == 1 {
        return Vec::new();
    }
    // Factor h, then read off each Sylow subgroup's cyclic decomposition by
    // counting solutions of x^(p^j) = 1.
    let mut rest = h;
    let mut prime_powers: Vec<(u64, u32)> = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        prime_powers.push((rest, 1));
    }
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for &(p, e) in &prime_powers {
        let cofactor = h / p.pow(e);
        let sylow: BTreeSet<ReducedForm> =
            elements.iter().map(|&f| form_pow(f, cofactor)).collect();
        let vp = |n: u64| {
            let mut v = 0u32;
            let mut n = n;
            while n % p == 0 {
                v += 1;
                n /= p;
            }
            v
        };
        let mut counts = Vec::new(); // counts[j-1] = #{cyclic factors of order >= p^j}
        let mut prev = 0u32;
        for j in 1..=e {
            let nj = sylow
                .iter()
                .filter(|&&f| form_pow(f, p.pow(j)) == identity)
                .count() as u64;
            let v = vp(nj);
            counts.push(v - prev);
            prev = v;
        }
        let factor_count = counts[0];
        let mut list = Vec::new();
        for i in 1..=factor_count {
            let a_i = counts.iter().filter(|&&c| c >= i).count() as u32;
            list.push(p.pow(a_i));
        }
        per_prime.push(list); // descending by construction
    }
    let k = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut descending = Vec::new();
    for i in 0..k {
        let mut d = 1u64;
        for list in &per_prime {
            d *= list.get(i).copied().unwrap_or(1);
        }
        descending.push(d);
    }
    descending.reverse();
    descending
}

fn greedy_generators(elements: &[ReducedForm], identity: ReducedForm) -> Vec<ReducedForm> {
    let h = elements.len();
    let disc = identity.discriminant();
    let mut gens: Vec<ReducedForm> = Vec::new();
    let mut span = ClassSubgroup::generate(disc, identity, &gens);
    for &f in elements {
        if span.order() as usize == h {
            break;
        }
        if !span.contains(f) {
            gens.push(f);
            span = ClassSubgroup::generate(disc, identity, &gens);
        }
    }
    gens
}

/// A degree-1 split prime of k over the rational prime p, stored as the
/// least root b >= 0 with b^2 = D (mod 4p) of matching parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdealRep {
    pub p: u64,
    pub root: u64,
}

/// Map a split rational prime to the ideal class of a degree-1 prime above
/// it. The conjugate choice of root lands in the inverse class.
pub fn prime_to_class(field: &Field, p: u64) -> Result<(PrimeIdealRep, ReducedForm)> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let disc = field.discriminant();
    if kronecker(disc, p as i64)? != 1 {
        return Err(Error::NonSplitPrime(p));
    }
    let b = if p == 2 {
        // split 2 forces D = 1 (mod 8); any odd root works mod 8
        1
    } else {
        let a = disc.rem_euclid(p as i64) as u64;
        let r = sqrt_mod_prime(a, p).expect("split prime has a square root");
        let want_odd = disc.rem_euclid(2) == 1;
        let adjust = |r: u64| if (r % 2 == 1) == want_odd { r } else { r + p };
        adjust(r).min(adjust(p - r))
    };
    let num = (b as i128) * (b as i128) - disc as i128;
    debug_assert_eq!(num % (4 * p as i128), 0);
    let c = num / (4 * p as i128);
    let class = reduce_raw(p as i128, b as i128, c);
    Ok((PrimeIdealRep { p, root: b }, class))
}

/// Tonelli-Shanks square root mod an odd prime.
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut probe = t;
        while probe != 1 {
            probe = mul_mod(probe, probe, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// All fundamental discriminants D < 0 with |D| <= bound, for test grids.
pub fn fundamental_discriminants(bound: u64) -> Vec<i64> {
    let squarefree = |n: u64| {
        let mut f = 2;
        while f * f <= n {
            if n % (f * f) == 0 {
                return false;
            }
            f += 1;
        }
        true
    };
    let mut out = Vec::new();
    for m in 3..=bound {
        let disc = -(m as i64);
        if m % 4 == 3 && squarefree(m) {
            out.push(disc);
        } else if m % 4 == 0 {
            let q = m / 4;
            if (q % 4 == 1 || q % 4 == 2) && squarefree(q) {
                out.push(disc);
            }
        }
    }
    out
}
