use std::time::{Duration, Instant};

use gwa_core::gwa::{is_central, verify_presentation, GwaElem};
use gwa_core::random::Sampler;
use gwa_core::rea::{apply_aut, central_scan, check_relations, check_relations_with, rea_instance, ReaAut};
use gwa_core::repr::{decompose, nonsemisimple_module, Decomposition};
use gwa_core::verify::{
    controls_suite, gwa_suite, module_u0s, random_sum, simple_module_checks, spectrum_suite, uqsl2_suite, VerifyOptions,
};
use gwa_core::{CoefPoly, Result};

const SEED: u64 = 2024;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn associativity() -> Result<Outcome> {
    let w = rea_instance();
    let pres = verify_presentation(&w, 3)?;
    let id = pres.get("associativity identity").expect("identity check present");
    let rep = gwa_suite(&VerifyOptions { seed: SEED, fault: None })?;
    let random = rep.get("(ab)c = a(bc) on random triples").expect("random check present");
    outcome(id.passed && id.detail == "343 identities" && random.passed, format!("{}; {}", id.detail, random.detail))
}

fn relations() -> Result<Outcome> {
    let rep = check_relations()?;
    outcome(rep.checks.len() == 6 && rep.all_passed(), format!("{}/6 relations reduce to 0", rep.passed_count()))
}

fn center() -> Result<Outcome> {
    let basis = central_scan(4)?;
    // every basis element must be a polynomial in t, d of degree <= 4 in degree 0
    let in_td =
        basis.iter().all(|b| b.as_ring().is_some_and(|c| c.terms().all(|(e, _)| e[0] == 0 && e[1] + e[2] <= 4)));
    let w = rea_instance();
    let mut monos_central = true;
    for b in 0..=4 {
        for c in 0..=4 - b {
            let m = GwaElem::ring(&w, CoefPoly::parse(w.ring(), &format!("t^{b}*d^{c}"))?);
            monos_central &= is_central(&m)?;
        }
    }
    outcome(basis.len() == 15 && in_td && monos_central, format!("{} basis elements", basis.len()))
}

fn automorphisms() -> Result<Outcome> {
    let w = rea_instance();
    let mut s = Sampler::new(SEED);
    let auts: Vec<ReaAut> =
        (0..20).map(|_| ReaAut::new(s.nonzero_scalar(), s.nonzero_scalar())).collect::<Result<_>>()?;
    let mut ok = true;
    for phi in &auts {
        ok &= check_relations_with(&w, &|g| phi.generator_image(g))?.all_passed();
    }
    let gens = [GwaElem::var(&w, "u"), GwaElem::var(&w, "t"), GwaElem::var(&w, "d"), GwaElem::x(&w), GwaElem::y(&w)];
    for pair in auts.windows(2) {
        for g in &gens {
            ok &= apply_aut(&pair[0], &apply_aut(&pair[1], g)?)? == apply_aut(&pair[0].compose(&pair[1]), g)?;
        }
    }
    outcome(ok, "20 automorphisms, group law on 5 generators")
}

fn simple_modules() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 1..=8 {
        for u0 in module_u0s() {
            for (name, ok) in simple_module_checks(n, &u0)? {
                if !ok {
                    bad.push(format!("V_{n}({u0}) {name}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "32 modules".to_string() } else { bad.join("; ") })
}

fn pullbacks() -> Result<Outcome> {
    let rep = uqsl2_suite()?;
    outcome(rep.all_passed(), format!("{}/{} checks", rep.passed_count(), rep.checks.len()))
}

fn semisimplicity() -> Result<Outcome> {
    let mut s = Sampler::new(SEED);
    let mut good = 0;
    for _ in 0..50 {
        let (m, parts) = random_sum(&mut s)?;
        if let Decomposition::Semisimple(got) = decompose(&m)? {
            let mut want: Vec<String> = parts.iter().map(|(w, _)| w.to_string()).collect();
            let mut have: Vec<String> = got.iter().flat_map(|(w, k)| std::iter::repeat_n(w.to_string(), *k)).collect();
            want.sort();
            have.sort();
            good += usize::from(want == have);
        }
    }
    let ns = matches!(decompose(&nonsemisimple_module()?)?, Decomposition::NotSemisimple { .. });
    outcome(good == 50 && ns, format!("{good}/50 sums, counterexample rejected: {ns}"))
}

fn spectrum() -> Result<Outcome> {
    let rep = spectrum_suite()?;
    let first = rep.failures().next().map(|c| format!(", first failure: {}", c.name)).unwrap_or_default();
    outcome(rep.all_passed(), format!("{}/{} checks{first}", rep.passed_count(), rep.checks.len()))
}

fn controls() -> Result<Outcome> {
    let rep = controls_suite()?;
    outcome(rep.all_passed(), format!("{}/{} defects rejected", rep.passed_count(), rep.checks.len()))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, u64, fn() -> Result<Outcome>);
    let criteria: [Criterion; 9] = [
        ("GWA engine soundness", 30, associativity),
        ("relations of the algebra", 1, relations),
        ("center in degree <= 4", 120, center),
        ("automorphisms", 30, automorphisms),
        ("simple modules", 60, simple_modules),
        ("U_q(sl_2) pullbacks", 60, pullbacks),
        ("semisimplicity", 120, semisimplicity),
        ("spectrum identities", 600, spectrum),
        ("negative controls", 10, controls),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*budget);
        let (passed, detail) = match res {
            Ok(o) => (o.passed && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let tag = if passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} {name} ({detail}; {:.2?} of {budget}s)", i + 1, took);
        if !passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
