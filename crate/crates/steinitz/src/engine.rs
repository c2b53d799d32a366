//! Steinitz classes from tame ramification data, the realizable-class
//! subgroups R_t(k,G), soundness validation of ramification data, witness
//! search, and the four-property "good group" report.
//!
//! For the supported families the realizable classes are
//!
//!   R_t(k, C(l^n) x| C(l)) = W(k, l^(n-1))^((l-1)l/2)
//!   R_t(k, Heisenberg(l))  = W(k, l)^((l-1)l^2/2)
//!
//! and a tame G-extension ramified at primes p_i with tame indices e_i has
//! Steinitz class prod class(p_i)^((e_i - 1)/2 * |G|/e_i).

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::PrimeWindow;
use crate::classgroup::{
    compose, form_pow, inverse, prime_to_class, ClassGroup, ClassSubgroup, PrimeIdealRep,
    ReducedForm,
};
use crate::error::{Error, Result};
use crate::lgroups::GroupSpec;
use crate::wgroups::{w_group, Certificate, WComputation};

pub const WITNESS_POOL: usize = 20;
pub const WITNESS_MAX_DATA: usize = 6;
pub const SAMPLER_POOL: usize = 40;
const POOL_WINDOW: u64 = 10_000;
const POOL_CAP: u64 = 10_000_000;

/// One ramified prime with its tame ramification index (a power of l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RamDatum {
    pub prime: PrimeIdealRep,
    pub e: u64,
}

/// Ramification data for a hypothetical tame G-extension of k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamData {
    pub d: i64,
    pub spec: GroupSpec,
    pub data: Vec<RamDatum>,
}

/// The per-prime exponent in the Steinitz class: ((e-1)/2) * (m/e) for a
/// group of odd order m.
pub fn steinitz_exponent(e: u64, m: u64) -> Result<u64> {
    if e < 2 {
        return Err(Error::Precondition(format!("e must be >= 2, got {e}")));
    }
    if m % 2 == 0 {
        return Err(Error::Precondition(format!(
            "group order must be odd, got {m}"
        )));
    }
    if m % e != 0 {
        return Err(Error::Precondition(format!("{e} does not divide {m}")));
    }
    Ok((e - 1) / 2 * (m / e))
}

/// Steinitz class in a tower: st(K/k) = x^deg * norm_class, where x is the
/// class of the lower step and the caller supplies the norm of the upper
/// step's class (relative norms are outside this crate's scope).
pub fn tower_compose(x: ReducedForm, deg: u64, norm_class: ReducedForm) -> Result<ReducedForm> {
    if deg == 0 {
        return Err(Error::Precondition("degree must be >= 1".into()));
    }
    compose(form_pow(x, deg), norm_class)
}

/// Admissible tame ramification indices for a family: orders of nontrivial
/// cyclic subgroups, except that every nontrivial Heisenberg element has
/// order l, so only index l can occur there.
pub fn admissible_indices(spec: &GroupSpec) -> Vec<u64> {
    match *spec {
        GroupSpec::Semidirect { l, n } => (1..=n).map(|j| l.pow(j)).collect(),
        GroupSpec::Heisenberg { l } | GroupSpec::Cyclic { l } => vec![l],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DatumReport {
    pub p: u64,
    pub e: u64,
    pub ok: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub data: Vec<DatumReport>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.data.iter().all(|d| d.ok)
    }

    pub fn first_violation(&self) -> Option<&str> {
        self.data
            .iter()
            .flat_map(|d| d.violations.iter())
            .map(String::as_str)
            .next()
    }
}

/// The realizable-class subgroup R_t(k,G) with its provenance.
#[derive(Debug, Clone, Serialize)]
pub struct RealizableResult {
    pub spec: GroupSpec,
    pub w_modulus: u64,
    pub exponent: u64,
    pub result: ClassSubgroup,
    pub certificate: Certificate,
}

/// Computation context bound to one class group. Memoizes W-subgroup
/// computations behind a `RefCell`, so it is single-threaded; build one
/// engine per thread to fan out.
pub struct Engine<'g> {
    group: &'g ClassGroup,
    w_memo: RefCell<HashMap<u64, WComputation>>,
}

impl<'g> Engine<'g> {
    pub fn new(group: &'g ClassGroup) -> Self {
        Engine {
            group,
            w_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &ClassGroup {
        self.group
    }

    /// W(k, m), memoized per engine.
    pub fn w(&self, m: u64) -> Result<WComputation> {
        if let Some(hit) = self.w_memo.borrow().get(&m) {
            return Ok(hit.clone());
        }
        let computed = w_group(self.group, m)?;
        self.w_memo.borrow_mut().insert(m, computed.clone());
        Ok(computed)
    }

    /// The W-modulus whose membership constraint a datum must satisfy.
    fn constraint_modulus(spec: &GroupSpec, e: u64) -> u64 {
        let l = spec.l();
        match spec {
            GroupSpec::Heisenberg { .. } | GroupSpec::Cyclic { .. } => l,
            GroupSpec::Semidirect { .. } => {
                if e % (l * l) == 0 {
                    e / l
                } else {
                    l
                }
            }
        }
    }

    /// Per-datum soundness constraints:
    ///  (i)   p = 1 (mod e) at a split degree-1 prime;
    ///  (ii)  Heisenberg: e = l and class(p) in W(k,l);
    ///  (iii) semidirect with l^2 | e: class(p) in W(k, e/l);
    ///  (iv)  semidirect with e = l: class(p) in W(k, l).
    pub fn validate(&self, ram: &RamData) -> Result<ValidationReport> {
        if ram.d != self.group.field().d() {
            return Err(Error::InvalidInput(format!(
                "ramification data is for d = {}, engine is for d = {}",
                ram.d,
                self.group.field().d()
            )));
        }
        let admissible = admissible_indices(&ram.spec);
        let mut reports = Vec::new();
        for datum in &ram.data {
            let mut violations = Vec::new();
            let p = datum.prime.p;
            let e = datum.e;
            let class = match prime_to_class(&self.group.field(), p) {
                Ok((rep, class)) => {
                    if rep != datum.prime {
                        violations
                            .push(format!("stored root {} is not canonical", datum.prime.root));
                    }
                    Some(class)
                }
                Err(err) => {
                    violations.push(err.to_string());
                    None
                }
            };
            if !admissible.contains(&e) {
                violations.push(format!(
                    "ramification index {e} is not admissible for this family"
                ));
            }
            if e > 1 && p % e != 1 {
                violations.push(format!("{p} is not 1 (mod {e})"));
            }
            if let (Some(class), true) = (class, admissible.contains(&e)) {
                let w_modulus = Self::constraint_modulus(&ram.spec, e);
                let w = self.w(w_modulus)?;
                if !w.result.contains(class) {
                    violations.push(format!("class of {p} lies outside W(k,{w_modulus})"));
                }
            }
            reports.push(DatumReport {
                p,
                e,
                ok: violations.is_empty(),
                violations,
            });
        }
        Ok(ValidationReport { data: reports })
    }

    /// Class of prod p^((e-1)/2 * m/e) over the data, computed in Cl(k).
    pub fn steinitz_class(&self, ram: &RamData) -> Result<ReducedForm> {
        let report = self.validate(ram)?;
        if !report.ok() {
            return Err(Error::RamInvalid(
                report.first_violation().unwrap_or("unknown").to_string(),
            ));
        }
        let m = ram.spec.order();
        let mut acc = self.group.identity();
        for datum in &ram.data {
            let (_, class) = prime_to_class(&self.group.field(), datum.prime.p)?;
            let exponent = steinitz_exponent(datum.e, m)?;
            acc = compose(acc, form_pow(class, exponent))?;
        }
        Ok(acc)
    }

    /// R_t(k, G) for the supported families.
    pub fn realizable(&self, spec: &GroupSpec) -> Result<RealizableResult> {
        let (w_modulus, exponent) = match *spec {
            GroupSpec::Semidirect { l, n } => (l.pow(n - 1), (l - 1) / 2 * l),
            GroupSpec::Heisenberg { l } => (l, (l - 1) / 2 * l * l),
            GroupSpec::Cyclic { .. } => {
                return Err(Error::UnsupportedFamily(
                    "cyclic groups are out of scope for realizable classes".into(),
                ))
            }
        };
        let w = self.w(w_modulus)?;
        Ok(RealizableResult {
            spec: *spec,
            w_modulus,
            exponent,
            result: w.result.power(exponent),
            certificate: w.certificate,
        })
    }

    pub fn membership(&self, spec: &GroupSpec, x: ReducedForm) -> Result<bool> {
        if !self.group.contains(x) {
            return Err(Error::InvalidInput(format!(
                "{x:?} is not a class of this field"
            )));
        }
        Ok(self.realizable(spec)?.result.contains(x))
    }

    /// Find validated ramification data whose Steinitz class is `target`,
    /// using only primes coprime to `avoid` (hence unramified in
    /// k(zeta_avoid)/k).
    ///
    /// Deterministic: pools the first [`WITNESS_POOL`] valid primes per
    /// admissible index and runs a forward product search over sets of at
    /// most [`WITNESS_MAX_DATA`] distinct primes.
    pub fn witness_search(
        &self,
        spec: &GroupSpec,
        target: ReducedForm,
        avoid: u64,
    ) -> Result<RamData> {
        let real = self.realizable(spec)?;
        if !real.result.contains(target) {
            return Err(Error::TargetNotRealizable);
        }
        let d = self.group.field().d();
        if target == self.group.identity() {
            // unramified extensions have trivial Steinitz class
            return Ok(RamData {
                d,
                spec: *spec,
                data: Vec::new(),
            });
        }
        let m = spec.order();
        let pools = self.prime_pools(spec, avoid, WITNESS_POOL)?;
        let mut options: BTreeMap<u64, Vec<(RamDatum, ReducedForm)>> = BTreeMap::new();
        for (e, pool) in &pools {
            for &(prime, class) in pool {
                let contribution = form_pow(class, steinitz_exponent(*e, m)?);
                options
                    .entry(prime.p)
                    .or_default()
                    .push((RamDatum { prime, e: *e }, contribution));
            }
        }
        // forward product search: best[class] = first datum set reaching it
        let mut best: BTreeMap<ReducedForm, Vec<RamDatum>> = BTreeMap::new();
        best.insert(self.group.identity(), Vec::new());
        'primes: for opts in options.values() {
            let snapshot: Vec<(ReducedForm, Vec<RamDatum>)> =
                best.iter().map(|(k, v)| (*k, v.clone())).collect();
            for (reached, path) in snapshot {
                if path.len() >= WITNESS_MAX_DATA {
                    continue;
                }
                for (datum, contribution) in opts {
                    let next = compose(reached, *contribution)?;
                    best.entry(next).or_insert_with(|| {
                        let mut extended = path.clone();
                        extended.push(*datum);
                        extended
                    });
                }
            }
            if best.contains_key(&target) {
                break 'primes;
            }
        }
        match best.remove(&target) {
            Some(data) => {
                let ram = RamData {
                    d,
                    spec: *spec,
                    data,
                };
                let st = self.steinitz_class(&ram)?;
                debug_assert_eq!(st, target);
                Ok(ram)
            }
            None => Err(Error::SearchExhausted),
        }
    }

    /// First `count` valid primes per admissible ramification index, with
    /// their classes. Primes dividing `avoid` are skipped.
    fn prime_pools(
        &self,
        spec: &GroupSpec,
        avoid: u64,
        count: usize,
    ) -> Result<BTreeMap<u64, Vec<(PrimeIdealRep, ReducedForm)>>> {
        let field = self.group.field();
        let mut pools = BTreeMap::new();
        for e in admissible_indices(spec) {
            let w = self.w(Self::constraint_modulus(spec, e))?;
            let mut pool = Vec::new();
            let mut lo = 2u64;
            let mut hi = POOL_WINDOW;
            while pool.len() < count && lo < POOL_CAP {
                let window = PrimeWindow::new(e, [1 % e].into(), field.discriminant(), lo, hi - 1)?;
                for p in window.primes() {
                    if avoid % p == 0 {
                        continue;
                    }
                    let (rep, class) = prime_to_class(&field, p)?;
                    if !w.result.contains(class) {
                        continue;
                    }
                    pool.push((rep, class));
                    if pool.len() == count {
                        break;
                    }
                }
                lo = hi;
                hi = (hi * 2).min(POOL_CAP);
            }
            if pool.is_empty() {
                return Err(Error::SearchExhausted);
            }
            pools.insert(e, pool);
        }
        Ok(pools)
    }

    /// Deterministic sampler of random validated ramification data.
    pub fn sampler(&self, spec: &GroupSpec) -> Result<RamSampler> {
        Ok(RamSampler {
            d: self.group.field().d(),
            spec: *spec,
            pools: self.prime_pools(spec, 1, SAMPLER_POOL)?,
        })
    }

    /// Class-level check of the four defining properties of a good group.
    pub fn good_group_report(
        &self,
        spec: &GroupSpec,
        seed: u64,
        sample_count: usize,
    ) -> Result<GoodGroupReport> {
        let real = self.realizable(spec)?;
        let m = spec.order();
        let l = spec.l();
        let mut properties = Vec::new();

        // 1: R_t is a group (closed under composition and inverses).
        let mut violations1 = Vec::new();
        {
            let elems = real.result.elements();
            if !real.result.contains(self.group.identity()) {
                violations1.push("missing identity".to_string());
            }
            for &x in elems {
                if !real.result.contains(inverse(x)) {
                    violations1.push(format!("inverse of {x:?} escapes"));
                }
                for &y in elems {
                    if !real.result.contains(compose(x, y)?) {
                        violations1.push(format!("{x:?} * {y:?} escapes"));
                    }
                }
            }
        }
        properties.push(PropertyReport::new(1, "closure", violations1));

        // 2 and 3 quantify over tame extensions; sample validated data and
        // check every datum. alpha = 1 throughout (odd group order), so the
        // property-2 ideal is the plain half-discriminant contribution.
        let sampler = self.sampler(spec)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut violations2 = Vec::new();
        let mut violations3 = Vec::new();
        for _ in 0..sample_count {
            let ram = sampler.sample(&mut rng);
            let check = self.validate(&ram)?;
            if !check.ok() {
                violations2.push("sampler produced invalid data".to_string());
                continue;
            }
            for datum in &ram.data {
                let (_, class) = prime_to_class(&self.group.field(), datum.prime.p)?;
                let contribution = form_pow(class, steinitz_exponent(datum.e, m)?);
                if !real.result.contains(contribution) {
                    violations2.push(format!(
                        "p={} e={}: per-prime class escapes R_t",
                        datum.prime.p, datum.e
                    ));
                }
                // e(l) = l-part of e, which is e itself for these families
                let full = form_pow(class, (l - 1) * (m / datum.e));
                let half = form_pow(class, (l - 1) / 2 * (m / datum.e));
                if !real.result.contains(full) || !real.result.contains(half) {
                    violations3.push(format!(
                        "p={} e={}: index-l class escapes R_t",
                        datum.prime.p, datum.e
                    ));
                }
            }
        }
        properties.push(PropertyReport::new(2, "per-prime classes", violations2));
        properties.push(PropertyReport::new(3, "index-l classes", violations3));

        // 4: every realizable class has a witness whose primes avoid any
        // prescribed cyclotomic ramification.
        let mut violations4 = Vec::new();
        for &target in real.result.elements() {
            for avoid in [1u64, 4, l] {
                match self.witness_search(spec, target, avoid) {
                    Ok(ram) => {
                        for datum in &ram.data {
                            if avoid % datum.prime.p == 0 {
                                violations4.push(format!(
                                    "witness for {target:?} uses forbidden prime {}",
                                    datum.prime.p
                                ));
                            }
                        }
                    }
                    Err(err) => violations4
                        .push(format!("no witness for {target:?} (avoid {avoid}): {err}")),
                }
            }
        }
        properties.push(PropertyReport::new(
            4,
            "witnesses with avoidance",
            violations4,
        ));

        Ok(GoodGroupReport {
            spec: *spec,
            d: self.group.field().d(),
            realizable_order: real.result.order(),
            properties,
        })
    }
}

/// Draws random validated ramification data from fixed prime pools.
pub struct RamSampler {
    d: i64,
    spec: GroupSpec,
    pools: BTreeMap<u64, Vec<(PrimeIdealRep, ReducedForm)>>,
}

impl RamSampler {
    /// 1..=3 data over distinct primes, each drawn from the pool of a
    /// uniformly chosen admissible index.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> RamData {
        let indices: Vec<u64> = self.pools.keys().copied().collect();
        let count = rng.gen_range(1..=3usize);
        let mut used = Vec::new();
        let mut data = Vec::new();
        for _ in 0..count {
            let e = *indices.choose(rng).expect("nonempty pool set");
            let pool = &self.pools[&e];
            let (prime, _) = pool[rng.gen_range(0..pool.len())];
            if used.contains(&prime.p) {
                continue; // a prime ramifies once
            }
            used.push(prime.p);
            data.push(RamDatum { prime, e });
        }
        RamData {
            d: self.d,
            spec: self.spec,
            data,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: u8,
    pub name: &'static str,
    pub pass: bool,
    pub violations: Vec<String>,
}

impl PropertyReport {
    fn new(property: u8, name: &'static str, violations: Vec<String>) -> Self {
        PropertyReport {
            property,
            name,
            pass: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodGroupReport {
    pub spec: GroupSpec,
    pub d: i64,
    pub realizable_order: u64,
    pub properties: Vec<PropertyReport>,
}

impl GoodGroupReport {
    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::Field;
    use rand_chacha::ChaCha8Rng;

    fn group(d: i64) -> ClassGroup {
        ClassGroup::enumerate(Field::new(d).unwrap()).unwrap()
    }

    fn form(a: i64, b: i64, c: i64) -> ReducedForm {
        ReducedForm::new(a, b, c).unwrap()
    }

    fn ram(engine: &Engine, spec: GroupSpec, pairs: &[(u64, u64)]) -> RamData {
        let field = engine.group().field();
        RamData {
            d: field.d(),
            spec,
            data: pairs
                .iter()
                .map(|&(p, e)| RamDatum {
                    prime: prime_to_class(&field, p).unwrap().0,
                    e,
                })
                .collect(),
        }
    }

    #[test]
    fn steinitz_exponent_spec_values() {
        assert_eq!(steinitz_exponent(3, 27), Ok(9));
        assert_eq!(steinitz_exponent(9, 27), Ok(12));
        assert_eq!(steinitz_exponent(27, 27), Ok(13)); // totally ramified: (m-1)/2
        assert!(steinitz_exponent(2, 27).is_err());
        assert!(steinitz_exponent(3, 18).is_err());
        assert!(steinitz_exponent(1, 27).is_err());
    }

    #[test]
    fn steinitz_class_spec_values() {
        let g47 = group(-47);
        let engine = Engine::new(&g47);
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();
        let h3 = GroupSpec::heisenberg(3).unwrap();

        let empty = RamData {
            d: -47,
            spec: sd32,
            data: vec![],
        };
        assert_eq!(engine.steinitz_class(&empty).unwrap(), g47.identity());

        // 37 = 1 (mod 9): class(37) = (3,-1,4) and (3,-1,4)^12 = (2,-1,6)
        let data = ram(&engine, sd32, &[(37, 9)]);
        let (_, c37) = prime_to_class(&g47.field(), 37).unwrap();
        assert_eq!(c37, form(3, -1, 4));
        assert_eq!(engine.steinitz_class(&data).unwrap(), form(2, -1, 6));

        // Heisenberg: class(7)^9 = (2,1,6)^4 = (2,-1,6)
        let data = ram(&engine, h3, &[(7, 3)]);
        assert_eq!(engine.steinitz_class(&data).unwrap(), form(2, -1, 6));
    }

    #[test]
    fn steinitz_class_is_multiplicative() {
        let g47 = group(-47);
        let engine = Engine::new(&g47);
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();
        let both = ram(&engine, sd32, &[(7, 3), (37, 9)]);
        let left = ram(&engine, sd32, &[(7, 3)]);
        let right = ram(&engine, sd32, &[(37, 9)]);
        assert_eq!(
            engine.steinitz_class(&both).unwrap(),
            compose(
                engine.steinitz_class(&left).unwrap(),
                engine.steinitz_class(&right).unwrap()
            )
            .unwrap()
        );
    }

    #[test]
    fn validation_spec_values() {
        let g47 = group(-47);
        let engine = Engine::new(&g47);
        let h3 = GroupSpec::heisenberg(3).unwrap();
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();

        assert!(engine.validate(&ram(&engine, h3, &[(7, 3)])).unwrap().ok());

        let bad_e = engine.validate(&ram(&engine, h3, &[(7, 9)])).unwrap();
        assert!(!bad_e.ok());
        assert!(bad_e.first_violation().unwrap().contains("not admissible"));

        // 13 is inert in Q(sqrt(-47)) and 13 != 1 (mod 9): two violations
        let bad = RamData {
            d: -47,
            spec: sd32,
            data: vec![RamDatum {
                prime: PrimeIdealRep { p: 13, root: 0 },
                e: 9,
            }],
        };
        let report = engine.validate(&bad).unwrap();
        assert!(!report.ok());
        let all: Vec<_> = report.data[0].violations.iter().collect();
        assert!(all.iter().any(|v| v.contains("(mod 9)")), "{all:?}");
        assert!(engine.steinitz_class(&bad).is_err());
    }

    #[test]
    fn realizable_spec_values() {
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();
        let h3 = GroupSpec::heisenberg(3).unwrap();

        let r = e47.realizable(&sd32).unwrap();
        assert_eq!(r.result.order(), 5);
        assert_eq!(r.w_modulus, 3);
        assert_eq!(r.exponent, 3);
        assert_eq!(r.certificate, Certificate::IndexForced);

        let g23 = group(-23);
        let e23 = Engine::new(&g23);
        assert!(e23.realizable(&sd32).unwrap().result.is_trivial());
        let rh = e23.realizable(&h3).unwrap();
        assert!(rh.result.is_trivial());
        assert_eq!(rh.exponent, 9);

        assert!(matches!(
            e47.realizable(&GroupSpec::cyclic(3).unwrap()),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn membership_spec_values() {
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();
        for &x in g47.elements() {
            assert!(e47.membership(&sd32, x).unwrap());
        }
        let g23 = group(-23);
        let e23 = Engine::new(&g23);
        assert!(e23.membership(&sd32, g23.identity()).unwrap());
        assert!(!e23.membership(&sd32, form(2, 1, 3)).unwrap());
    }

    #[test]
    fn tower_compose_spec_values() {
        let g47 = group(-47);
        let x = form(2, 1, 6);
        let id = g47.identity();
        assert_eq!(tower_compose(x, 4, id).unwrap(), form_pow(x, 4));
        assert_eq!(tower_compose(id, 9, x).unwrap(), x);
        let g23 = group(-23);
        let y = form(2, 1, 3);
        assert_eq!(tower_compose(y, 3, g23.identity()).unwrap(), g23.identity());
        assert!(tower_compose(x, 0, id).is_err());
    }

    #[test]
    fn tower_compose_matches_realizable_exponent() {
        // when the upper step has trivial class, the tower formula is the
        // plain power by (l-1)l^2/2; for l = 3 that is the Heisenberg
        // realizable exponent
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let h3 = GroupSpec::heisenberg(3).unwrap();
        let exponent = e47.realizable(&h3).unwrap().exponent;
        assert_eq!(exponent, 9);
        for &x in g47.elements() {
            assert_eq!(
                tower_compose(x, exponent, g47.identity()).unwrap(),
                form_pow(x, exponent)
            );
        }
    }

    #[test]
    fn witness_search_spec_values() {
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();

        let empty = e47.witness_search(&sd32, g47.identity(), 1).unwrap();
        assert!(empty.data.is_empty());

        let witness = e47.witness_search(&sd32, form(2, 1, 6), 1).unwrap();
        assert!(!witness.data.is_empty());
        assert!(e47.validate(&witness).unwrap().ok());
        assert_eq!(e47.steinitz_class(&witness).unwrap(), form(2, 1, 6));

        let g23 = group(-23);
        let e23 = Engine::new(&g23);
        assert!(matches!(
            e23.witness_search(&sd32, form(2, 1, 3), 1),
            Err(Error::TargetNotRealizable)
        ));
    }

    #[test]
    fn witness_search_avoids_primes() {
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let h3 = GroupSpec::heisenberg(3).unwrap();
        // 7 is the first useful prime for e = 3; the search must route
        // around it when asked to.
        let witness = e47.witness_search(&h3, form(2, 1, 6), 7).unwrap();
        assert!(witness.data.iter().all(|d| d.prime.p != 7));
        assert_eq!(e47.steinitz_class(&witness).unwrap(), form(2, 1, 6));
    }

    #[test]
    fn sampler_produces_validated_data() {
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        for spec in [
            GroupSpec::semidirect(3, 2).unwrap(),
            GroupSpec::semidirect(3, 3).unwrap(),
            GroupSpec::heisenberg(3).unwrap(),
        ] {
            let sampler = e47.sampler(&spec).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let real = e47.realizable(&spec).unwrap();
            for _ in 0..50 {
                let data = sampler.sample(&mut rng);
                assert!(e47.validate(&data).unwrap().ok(), "spec {spec:?}");
                let st = e47.steinitz_class(&data).unwrap();
                assert!(real.result.contains(st));
            }
        }
    }

    #[test]
    fn good_group_report_spec_values() {
        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();
        let report = e47.good_group_report(&sd32, 0, 60).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.realizable_order, 5);

        let g23 = group(-23);
        let e23 = Engine::new(&g23);
        let h3 = GroupSpec::heisenberg(3).unwrap();
        let report = e23.good_group_report(&h3, 0, 60).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.realizable_order, 1);
    }
}
