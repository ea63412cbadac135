use prodcss::build::{spc, SpcParams};
use prodcss::decode::decode_erasure;
use prodcss::sim::{sample_error, trial_rng, ChannelSpec, DecoderKind, Experiment};

fn spc21() -> Experiment {
    Experiment::new(spc(SpcParams::new(2, 1).unwrap()), DecoderKind::ErasureMl)
}

#[test]
fn erasure_rate_grows_with_beta() {
    let exp = spc21();
    let lo = exp.run_point(ChannelSpec::Erasure(0.05), 100_000, 1).unwrap();
    let hi = exp.run_point(ChannelSpec::Erasure(0.2), 100_000, 1).unwrap();
    let sigma = lo.stderr().hypot(hi.stderr());
    assert!(hi.rate() - lo.rate() > 6.0 * sigma, "{} vs {}", lo.rate(), hi.rate());
}

#[test]
fn low_erasure_slope_tracks_distance() {
    // SPC(2,1) has d = 4, so the rate scales roughly as beta^4 at small beta.
    let exp = spc21();
    let a = exp.run_point(ChannelSpec::Erasure(0.05), 1_000_000, 3).unwrap();
    let b = exp.run_point(ChannelSpec::Erasure(0.1), 1_000_000, 3).unwrap();
    assert!(a.failures > 50, "{}", a.failures);
    let slope = (b.rate() / a.rate()).ln() / 2f64.ln();
    assert!((3.0..=5.0).contains(&slope), "slope {slope}");
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let exp = Experiment::new(spc(SpcParams::new(3, 1).unwrap()), DecoderKind::Bp);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| exp.run_point(ChannelSpec::Depolarizing(0.04), 400, 11).unwrap())
    };
    assert_eq!(run(1), run(4));
    let exp = spc21();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| exp.run_point(ChannelSpec::Erasure(0.3), 5000, 2).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn erasure_residuals_stay_on_erased_set_with_zero_syndrome() {
    let code = spc(SpcParams::new(2, 1).unwrap());
    let channel = ChannelSpec::Erasure(0.35);
    let mut failures = 0;
    for t in 0..5000 {
        let sample = sample_error(&channel, &code, &mut trial_rng(9, t));
        let erased = sample.erased.as_deref().unwrap();
        let (sx, sz) = code.syndromes(&sample.error);
        let estimate = decode_erasure(&code, erased, &sx, &sz).unwrap();
        let residual = sample.error.mul(&estimate);
        let (rx, rz) = code.syndromes(&residual);
        assert!(rx.is_zero() && rz.is_zero());
        assert!(residual.support().iter().all(|q| erased.contains(q)));
        failures += code.is_logical_failure(&residual).unwrap() as usize;
    }
    assert!(failures > 0);
}
