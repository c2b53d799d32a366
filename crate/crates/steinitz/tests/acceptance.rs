//! Acceptance gate: one test per criterion, each printing a pass/fail line
//! and enforcing its wall-clock budget. Run with `--nocapture` to see the
//! per-criterion lines.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use steinitz::classgroup::{ClassGroup, Field, ReducedForm};
use steinitz::engine::Engine;
use steinitz::lgroups::{
    semidirect_pow_closed_form, verify_presentation_uniqueness, GroupElement, GroupSpec,
};
use steinitz::verify::{SuiteConfig, SuiteRegistry};
use steinitz::wgroups::Certificate;

fn criterion(id: u32, name: &str, budget_secs: f64, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => {
            if elapsed <= budget_secs {
                println!("ACCEPTANCE {id:02} {name}: PASS ({elapsed:.2}s)");
            } else {
                println!(
                    "ACCEPTANCE {id:02} {name}: FAIL (over budget: {elapsed:.2}s > {budget_secs}s)"
                );
                panic!("criterion {id} exceeded its time budget");
            }
        }
        Err(cause) => {
            println!("ACCEPTANCE {id:02} {name}: FAIL ({elapsed:.2}s)");
            resume_unwind(cause);
        }
    }
}

fn group(d: i64) -> ClassGroup {
    ClassGroup::enumerate(Field::new(d).unwrap()).unwrap()
}

fn run_suite(name: &str, seed: u64) -> steinitz::verify::SuiteReport {
    let registry = SuiteRegistry::builtin();
    registry
        .get(name)
        .unwrap_or_else(|| panic!("missing suite {name}"))
        .run(&SuiteConfig { seed })
        .unwrap()
}

#[test]
fn criterion_01_class_group_oracle() {
    criterion(1, "class-group-oracle", 1.0, || {
        for (d, h) in [(-23, 3), (-47, 5), (-71, 7), (-163, 1), (-5, 2)] {
            let g = group(d);
            assert_eq!(g.h(), h, "h({d})");
            assert_eq!(g.elements().len() as u64, h);
        }
    });
}

#[test]
fn criterion_02_power_lifting_congruence_fuzz() {
    criterion(2, "power-lifting-congruence-fuzz", 1.0, || {
        let report = run_suite("congruenza", 0);
        assert_eq!(report.cases, 10_000);
        assert!(report.passed(), "{:?}", report.violations);
    });
}

#[test]
fn criterion_03_power_formula_equivalence() {
    criterion(3, "power-formula-equivalence", 5.0, || {
        let mut cases = 0u64;
        for l in [3u64, 5] {
            for n in [2u32, 3] {
                let spec = GroupSpec::semidirect(l, n).unwrap();
                for a in 0..l.pow(n) {
                    for b in 0..l {
                        let g = GroupElement::Semidirect { a, b };
                        for m in 0..=l.pow(n + 1) {
                            assert_eq!(
                                semidirect_pow_closed_form(l, n, a, b, m).unwrap(),
                                spec.pow(g, m).unwrap(),
                                "l={l} n={n} a={a} b={b} m={m}"
                            );
                            cases += 1;
                        }
                    }
                }
            }
        }
        assert!(cases > 400_000);
    });
}

#[test]
fn criterion_04_presentation_uniqueness() {
    criterion(4, "presentation-uniqueness", 10.0, || {
        for (l, n) in [(3u64, 2u32), (3, 3), (5, 2)] {
            let report = verify_presentation_uniqueness(l, n).unwrap();
            assert!(report.passed(), "(l,n)=({l},{n}): {:?}", report.violations);
            assert!(report.candidates > 0);
        }
    });
}

#[test]
fn criterion_05_fixed_field_of_tau_action() {
    criterion(5, "fixed-field-of-tau-action", 1.0, || {
        let report = run_suite("eciclo", 0);
        assert!(report.passed(), "{:?}", report.violations);
    });
}

#[test]
fn criterion_06_lifted_action_and_power_containments() {
    criterion(6, "lifted-action-and-power-containments", 5.0, || {
        let potenza = run_suite("potenzagalois", 0);
        assert!(potenza.passed(), "{:?}", potenza.violations);
        let troppo = run_suite("troppo", 0);
        assert!(troppo.passed(), "{:?}", troppo.violations);
    });
}

#[test]
fn criterion_07_w_exponent_and_anti_containment() {
    criterion(7, "w-exponent-and-anti-containment", 30.0, || {
        let report = run_suite("wexp", 0);
        assert!(report.passed(), "{:?}", report.violations);
    });
}

#[test]
fn criterion_08_steinitz_soundness() {
    criterion(8, "steinitz-soundness", 60.0, || {
        let specs = [
            GroupSpec::semidirect(3, 2).unwrap(),
            GroupSpec::semidirect(3, 3).unwrap(),
            GroupSpec::heisenberg(3).unwrap(),
        ];
        for d in [-23i64, -47, -71] {
            let g = group(d);
            let engine = Engine::new(&g);
            for spec in &specs {
                let sampler = engine.sampler(spec).unwrap();
                let realizable = engine.realizable(spec).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(d.unsigned_abs() ^ spec.order());
                for _ in 0..1000 {
                    let ram = sampler.sample(&mut rng);
                    assert!(
                        engine.validate(&ram).unwrap().ok(),
                        "d={d} spec={spec:?}: sampler produced invalid data"
                    );
                    let steinitz = engine.steinitz_class(&ram).unwrap();
                    assert!(
                        realizable.result.contains(steinitz),
                        "d={d} spec={spec:?}: {steinitz:?} escapes R_t"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_09_witness_surjectivity() {
    criterion(9, "witness-surjectivity", 60.0, || {
        let g47 = group(-47);
        let engine = Engine::new(&g47);
        for spec in [
            GroupSpec::semidirect(3, 2).unwrap(),
            GroupSpec::heisenberg(3).unwrap(),
        ] {
            let realizable = engine.realizable(&spec).unwrap();
            assert_eq!(realizable.result.order(), 5);
            for &target in realizable.result.elements() {
                for avoid in [1u64, 4] {
                    let witness = engine.witness_search(&spec, target, avoid).unwrap();
                    assert!(engine.validate(&witness).unwrap().ok());
                    assert_eq!(engine.steinitz_class(&witness).unwrap(), target);
                    for datum in &witness.data {
                        assert!(avoid % datum.prime.p != 0, "witness prime divides avoid");
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_10_concrete_realizable_groups() {
    criterion(10, "concrete-realizable-groups", 5.0, || {
        let sd32 = GroupSpec::semidirect(3, 2).unwrap();
        let h3 = GroupSpec::heisenberg(3).unwrap();

        let g47 = group(-47);
        let e47 = Engine::new(&g47);
        let r = e47.realizable(&sd32).unwrap();
        assert_eq!(r.certificate, Certificate::IndexForced);
        assert_eq!(r.result, g47.full_subgroup().power(1));
        assert_eq!(r.result.order(), 5);

        let g23 = group(-23);
        let e23 = Engine::new(&g23);
        let r = e23.realizable(&sd32).unwrap();
        assert_eq!(r.result.elements(), &[g23.identity()]);
        let r = e23.realizable(&h3).unwrap();
        assert_eq!(r.result.elements(), &[g23.identity()]);
    });
}

#[test]
fn criterion_11_good_group_properties() {
    criterion(11, "good-group-properties", 120.0, || {
        for d in [-23i64, -47] {
            let g = group(d);
            let engine = Engine::new(&g);
            for spec in [
                GroupSpec::semidirect(3, 2).unwrap(),
                GroupSpec::heisenberg(3).unwrap(),
            ] {
                let report = engine.good_group_report(&spec, 0, 200).unwrap();
                assert!(
                    report.all_pass(),
                    "d={d} spec={spec:?}: {:#?}",
                    report.properties
                );
                assert_eq!(report.properties.len(), 4);
            }
        }
    });
}

// Frozen concrete values used across criteria, checked once here so a
// regression is reported with the criterion that owns it.
#[test]
fn frozen_class_group_facts() {
    let g23 = group(-23);
    let forms: Vec<ReducedForm> = g23.elements().to_vec();
    assert_eq!(
        forms,
        vec![
            ReducedForm::new(1, 1, 6).unwrap(),
            ReducedForm::new(2, -1, 3).unwrap(),
            ReducedForm::new(2, 1, 3).unwrap(),
        ]
    );
    assert_eq!(g23.invariants(), &[3]);
    let g47 = group(-47);
    assert_eq!(g47.invariants(), &[5]);
}
