//! Worked-example values through the library API.

use seqcm::corpus;
use seqcm::filtration::{classify, Verdict};
use seqcm::hilbert::{hilbert_report, lambda_sample, FitConfig, ReportOptions, Sampler};

#[test]
fn example_module_report() {
    let e = corpus::entry("ex1", "M").unwrap();
    let r = classify(&e.module).unwrap();
    assert_eq!(r.verdict, Verdict::SequentiallyCm);
    assert_eq!(r.dims, vec![3, 2, -1]);
    assert_eq!(r.invariant_filtration.as_ref().map(|b| b.to_string()), Some("0".into()));

    let h = hilbert_report(&e.module, "M", &e.sop("q2").unwrap(), &ReportOptions::default()).unwrap();
    assert_eq!(h.e, vec![4, -8, -4, 0]);
    assert_eq!(h.adeg, vec![0, 0, 8, 4]);
    assert_eq!(h.a, vec![0, -4, 0]);
    assert_eq!(h.flags.distinguished, Some(false));
    assert!(h.bounds.is_none(), "bounds need a distinguished q");
    for row in &h.table {
        assert_eq!(row.h_ad, -4 * (row.n as i64 + 1));
    }

    let d = hilbert_report(&e.module, "M", &e.sop("dist").unwrap(), &ReportOptions::default()).unwrap();
    assert_eq!(d.a, vec![0, 0, 0]);
    assert_eq!(d.flags.distinguished, Some(true));
    assert!(d.bounds.as_ref().is_some_and(|b| b.first_coefficient_ok && b.upper_ok));
}

#[test]
fn lambda_over_the_example_family() {
    let e = corpus::entry("ex1", "M").unwrap();
    let family: Vec<_> = (1..=5).map(|m| e.sop(&format!("q{m}")).unwrap()).collect();
    let s = lambda_sample(&e.module, "M", 2, &Sampler::Explicit(family), true, &FitConfig::default()).unwrap();
    let values: Vec<i64> = s.entries.iter().map(|x| x.value).collect();
    assert_eq!(values, vec![-1, -4, -9, -16, -25]);
    assert!(s.entries.iter().all(|x| !x.distinguished));
    assert!(!s.caveat.is_empty());
}

#[test]
fn lambda_on_sequentially_cm_modules_is_zero() {
    for (session, module, i) in [("point", "M", 1), ("mono3", "G", 2), ("mono2", "D", 1)] {
        let e = corpus::entry(session, module).unwrap();
        let sampler = Sampler::RandomDistinguished { count: 5, seed: 7, degree_cap: 2 };
        let s = lambda_sample(&e.module, module, i, &sampler, false, &FitConfig::default()).unwrap();
        assert_eq!(s.entries.len(), 5);
        assert!(s.entries.iter().all(|x| x.value == 0), "{session}/{module}: {:?}", s.entries);
        assert_eq!(s.distinct, 1);
    }
}

#[test]
fn square_example() {
    let e = corpus::entry("square", "M").unwrap();
    let r = classify(&e.module).unwrap();
    assert_eq!(r.verdict, Verdict::GeneralizedCm);
    let h = hilbert_report(&e.module, "M", &e.sop("dd").unwrap(), &ReportOptions::default()).unwrap();
    assert_eq!(h.a, vec![1, 0]);
    assert_eq!(h.flags.dd_sequence, Some((true, 3)));
}
