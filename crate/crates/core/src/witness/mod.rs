//! Counterexample functions and exact difference-quotient probes.
//!
//! - [`witness_order_gap`]: `x^m` on the rationals, zero elsewhere, which has
//!   every order-n generalized derivative at 0 for `n < m` and no order-m one.
//! - [`witness_same_order`]: a function annihilated by one scheme and not by
//!   another of the same order, built from a lattice recurrence.
//! - [`probe`]: quotients `Delta f(0, h) / h^n` along rational, `sqrt 2`
//!   rational, or sign-alternating sequences.

mod function;
mod probe;
mod same_order;

pub use function::{difference_at_zero, eval_function, FunctionSpec};
pub use probe::{probe, Branch, ProbeReport, ProbeSequence, Sample, Verdict, MAX_SAMPLES};
pub use same_order::{
    verify_witness, witness_same_order, CheckFailure, Generator, GeneratorKind, GeneratorRecord,
    VerificationReport, WitnessFunction, WitnessParams, WitnessRecord, DEFAULT_SCALE_COUNT,
};

use crate::error::{Error, Result};

/// The function separating orders `m > n >= 1`.
pub fn witness_order_gap(m: u32, n: u32) -> Result<FunctionSpec> {
    if n == 0 || m <= n {
        return Err(Error::domain(format!(
            "order-gap witness needs m > n >= 1, got m = {m}, n = {n}"
        )));
    }
    Ok(FunctionSpec::PowerOnRationals(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio, QuadExt, Rational};
    use crate::schemes::{catalog, DiffScheme};

    fn cat(text: &str) -> DiffScheme {
        catalog(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn order_gap_function() {
        let f = witness_order_gap(2, 1).unwrap();
        assert_eq!(f, FunctionSpec::PowerOnRationals(2));
        assert_eq!(f.eval(&QuadExt::sqrt2()), QuadExt::zero());
        assert!(witness_order_gap(1, 1).is_err());
        assert!(witness_order_gap(3, 0).is_err());

        let seq = ProbeSequence::new(Branch::Rational, ratio(1, 2), 6);
        let r = probe(&cat("riemann(2)"), &f, &seq).unwrap();
        assert!(r.samples.iter().all(|s| s.quotient == QuadExt::rational(int(2))));
        let seq = ProbeSequence::new(Branch::Sqrt2, ratio(1, 2), 6);
        let r = probe(&cat("riemann(2)"), &f, &seq).unwrap();
        assert!(r.samples.iter().all(|s| s.quotient.is_zero()));
    }

    fn build(s: &str, t: &str) -> (WitnessFunction, DiffScheme, DiffScheme) {
        let (s, t) = (cat(s), cat(t));
        let w = witness_same_order(&s, &t, &WitnessParams::default()).unwrap();
        (w, s, t)
    }

    #[test]
    fn example_pair_witnesses() {
        for (a, b) in [("symmetric(3)", "example3iii"), ("example3iii", "symmetric(3)")] {
            let (w, s, t) = build(a, b);
            assert_eq!(w.scale_prime, 5);
            assert_eq!(w.generator.kind, GeneratorKind::Recurrence);
            let report = verify_witness(&w, &s, &t).unwrap();
            assert!(report.passed, "{a} => {b}: {:?}", report.failures);
            let p = Rational::from_integer(5.into());
            for (m, q) in report.consequent_quotients.iter().enumerate() {
                assert_eq!(q, &crate::exact::pow(&p, 3 * (m as i64 + 1)));
            }
        }
    }

    #[test]
    fn zero_component_witness_is_finite() {
        let (w, s, t) = build("symmetric_centered_1", "riemann(1)");
        assert_eq!(w.generator.kind, GeneratorKind::Finite);
        assert!(verify_witness(&w, &s, &t).unwrap().passed);
    }

    #[test]
    fn faults_are_detected() {
        let (w, s, t) = build("symmetric(3)", "example3iii");
        let (sign, g, v) = w.table().next().map(|(s, g, v)| (s, g.clone(), v.clone())).unwrap();
        let bad = w.with_value(sign, g, v + int(1));
        let report = verify_witness(&bad, &s, &t).unwrap();
        assert!(!report.passed);
        assert!(!report.failures.is_empty());
        assert!(!verify_witness(&w, &t, &s).unwrap().passed);
    }

    #[test]
    fn carrier_membership() {
        let (w, _, _) = build("symmetric(3)", "example3iii");
        // 5 is the scale prime; 7 lies outside the node lattice.
        assert!(w.in_carrier(&ratio(3, 10)));
        assert!(w.in_carrier(&ratio(-1, 5)));
        assert!(!w.in_carrier(&ratio(3, 2)));
        assert!(!w.in_carrier(&ratio(1, 35)));
        assert!(!w.in_carrier(&ratio(1, 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5)));
        assert!(!w.in_carrier(&int(0)));
        assert_eq!(w.eval_rational(&ratio(1, 35)), int(0));
    }

    #[test]
    fn refuses_when_no_witness_can_exist() {
        let params = WitnessParams::default();
        assert!(witness_same_order(&cat("riemann(1)"), &cat("theorem1(1, 2)"), &params).is_err());
        assert!(witness_same_order(&cat("riemann(2)"), &cat("riemann(1)"), &params).is_err());
    }

    #[test]
    fn oversized_windows_are_refused() {
        let (s3, ex) = (cat("symmetric(3)"), cat("example3iii"));
        let wide = WitnessParams { window_radius: Some(2000), ..WitnessParams::default() };
        let err = witness_same_order(&s3, &ex, &wide).unwrap_err();
        assert!(err.to_string().contains("window-cap-exceeded"), "{err}");

        let many = WitnessParams { scale_count: 1_000_000, ..WitnessParams::default() };
        let w = witness_same_order(&s3, &ex, &many).unwrap();
        assert!(verify_witness(&w, &s3, &ex).is_err());
    }
}
