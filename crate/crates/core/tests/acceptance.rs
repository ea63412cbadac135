//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prodcss::bitlin::{in_rowspan, kernel_rows, rank, row_reduce, solve};
use prodcss::build::{
    asymmetric_product, classical_product_pcm, dfold_product, spc, spc_logical_witnesses, symmetric_product,
    tensor_product_pcm, ComponentCss, SpcParams,
};
use prodcss::css::min_kernel_weight;
use prodcss::decode::{BpConfig, BpDecoder, TannerGraph};
use prodcss::meta::{measurement_overhead, spc3_metacheck, spc3_metacheck_z, ExtendedSyndrome};
use prodcss::sim::{sample_error, trial_rng, ChannelSpec, DecoderKind, Experiment, SimPoint};
use prodcss::zoo::{
    bicycle, classical_distance, hpc_seed_matrix, hypergraph_product, quantum_tanner, random_css, BicycleSpec,
    TannerSpec,
};
use prodcss::{BitMatrix, BitVector, CssCode, DistanceReport, Pauli, PauliVector};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spc3() -> CssCode {
    spc(SpcParams::new(3, 1).unwrap())
}

fn eps(exp10: f64) -> f64 {
    10f64.powf(exp10)
}

fn point(code: &CssCode, decoder: DecoderKind, channel: ChannelSpec, trials: u64) -> SimPoint {
    Experiment::new(code.clone(), decoder).run_point(channel, trials, 1).unwrap()
}

fn fmt_rate(p: &SimPoint) -> String {
    format!("{:.4} ± {:.4} ({}/{})", p.rate(), p.stderr(), p.failures, p.trials)
}

fn within_factor(rate: f64, reference: f64, factor: f64) -> bool {
    rate >= reference / factor && rate <= reference * factor
}

fn parameters() -> Outcome {
    let st = spc3().stats();
    ensure((st.n, st.k) == (512, 174), || format!("spc(3,1) is [[{},{}]]", st.n, st.k))?;
    ensure((st.m_x, st.m_z) == (192, 192), || format!("rows {} / {}", st.m_x, st.m_z))?;
    ensure((st.meta_x, st.meta_z) == (23, 23), || format!("meta {} / {}", st.meta_x, st.meta_z))?;
    ensure(
        (st.row_weight_x, st.row_weight_z, st.col_weight_x, st.col_weight_z) == (8, 8, 3, 3),
        || format!("weights {st:?}"),
    )?;
    for s in 1..=3 {
        let st = spc(SpcParams::new(2, s).unwrap()).stats();
        let n = 16 * s * s;
        ensure((st.n, st.k) == (n, n - 16 * s + 2), || format!("spc(2,{s}) is [[{},{}]]", st.n, st.k))?;
    }
    let o = measurement_overhead(&spc3());
    ensure(
        (o.minimum, o.actual) == (338, 384) && (o.ratio - 0.136).abs() <= 0.001,
        || format!("overhead {o:?}"),
    )?;
    Ok(format!("[[512,174]], 192 rows, 23 meta, overhead {}/{} = {:.1}%", o.minimum, o.actual, 100.0 * o.ratio))
}

/// SPC(3,1) written out directly: qubit bits `b_0..b_8` (factor 0 most
/// significant); X block `j` sums over factors `3j..3j+2`, Z block `j` over
/// factors `j, j+3, j+6`; each row is labelled by the remaining six bits.
fn spc3_explicit() -> (BitMatrix, BitMatrix) {
    let build = |group: &dyn Fn(usize) -> [usize; 3]| {
        let mut h = BitMatrix::zeros(192, 512);
        for j in 0..3 {
            let g = group(j);
            for q in 0..512usize {
                let row = (0..9)
                    .filter(|l| !g.contains(l))
                    .fold(0, |acc, l| (acc << 1) | ((q >> (8 - l)) & 1));
                h.set(64 * j + row, q, true);
            }
        }
        h
    };
    (build(&|j| [3 * j, 3 * j + 1, 3 * j + 2]), build(&|j| [j, j + 3, j + 6]))
}

fn construction_identity() -> Outcome {
    let h = ComponentCss::spc(2);
    let dfold = dfold_product(&vec![h; 9], 3).map_err(|e| e.to_string())?;
    let (hx, hz) = spc3_explicit();
    ensure(dfold.hx() == &hx && dfold.hz() == &hz, || "dfold(3) differs from the explicit matrices".into())?;
    ensure(spc3() == dfold, || "spc(3,1) differs from dfold(3)".into())?;

    let shor = ComponentCss::shor(3).unwrap();
    let spc4 = ComponentCss::spc(4);
    let mut codes = vec![
        spc3(),
        spc(SpcParams::new(2, 2).unwrap()),
        spc(SpcParams::new(2, 3).unwrap()),
        asymmetric_product(&shor, &shor).unwrap(),
        symmetric_product(&spc4, &shor, &spc4, &shor).unwrap(),
        bicycle(&BicycleSpec::reference(1)).unwrap(),
        hypergraph_product(&hpc_seed_matrix()).unwrap(),
        quantum_tanner(&TannerSpec::reference()).unwrap(),
        random_css(512, 169, 1).unwrap(),
    ];
    codes.push(dfold);
    for c in &codes {
        ensure(c.hx().mul(&c.hz().transpose()).is_zero(), || format!("Hx·Hzᵀ ≠ 0 for n = {}", c.n()))?;
    }
    Ok(format!("dfold(3) equals explicit SPC(3,1); Hx·Hzᵀ = 0 on {} codes", codes.len()))
}

fn brief(r: &DistanceReport) -> String {
    match r.found_weight {
        Some(d) => format!("d={d} ({} X, {} Y, {} Z)", r.multiplicity_x, r.multiplicity_y, r.multiplicity_z),
        None => format!("d>{}", r.searched_up_to),
    }
}

fn distances() -> Outcome {
    let spc2 = spc(SpcParams::new(2, 1).unwrap());
    let r = spc2.search_min_logical(4);
    ensure(r.found_weight == Some(4), || format!("spc(2,1): {r}"))?;

    let code = spc3();
    let (w, v) = spc_logical_witnesses(SpcParams::new(3, 1).unwrap());
    ensure(w.weight() == 8, || format!("witness weight {}", w.weight()))?;
    for h in [code.hx(), code.hz()] {
        ensure(h.mul_vec(&w).is_zero() && h.mul_vec(&v).is_zero(), || "witness has a syndrome".into())?;
    }
    ensure(w.dot(&v), || "wᵀv = 0".into())?;

    let tanner = quantum_tanner(&TannerSpec::reference()).unwrap();
    let t = tanner.search_min_logical(4);
    ensure(t.found_weight == Some(4), || format!("tanner: {}", brief(&t)))?;

    let shor = ComponentCss::shor(3).unwrap();
    let ss = asymmetric_product(&shor, &shor).unwrap();
    let e = |ones: &[usize]| BitVector::from_support(9, ones);
    let z = e(&[0, 1]).kron(&e(&[0, 3, 6]));
    ensure(z.weight() == 6 && ss.hx().mul_vec(&z).is_zero(), || "Shor⋉Shor witness has a syndrome".into())?;
    let cert = kernel_rows(ss.hz());
    ensure(
        (0..cert.rows()).any(|i| cert.row(i).dot(&z)),
        || "Shor⋉Shor witness is a stabilizer".into(),
    )?;

    let hpc = hypergraph_product(&hpc_seed_matrix()).unwrap().search_min_logical(4);
    let bic = bicycle(&BicycleSpec::reference(1)).unwrap().search_min_logical(4);
    Ok(format!(
        "spc(2,1) d=4; SPC(3,1) weight-8 witness; tanner {}; Shor⋉Shor weight-6 Z witness; hpc {}; bicycle {}",
        brief(&t),
        brief(&hpc),
        brief(&bic)
    ))
}

fn zoo_parameters() -> Outcome {
    let t = quantum_tanner(&TannerSpec::reference()).map_err(|e| e.to_string())?;
    ensure(t.n() == 500 && t.k() == 188, || format!("tanner [[{},{}]]", t.n(), t.k()))?;
    for h in [t.hx(), t.hz()] {
        ensure(h.rows() == 160 && rank(h) == 156, || format!("rows {} rank {}", h.rows(), rank(h)))?;
        ensure(
            (0..h.rows()).all(|r| h.row_weight(r) == 10),
            || "tanner row weight is not 10".into(),
        )?;
        ensure(
            h.column_weights().iter().all(|w| *w == 2 || *w == 4),
            || "tanner column weight outside {2,4}".into(),
        )?;
    }
    let seed = hpc_seed_matrix();
    ensure(
        seed.cols() == 21 && seed.cols() - rank(&seed) == 13 && classical_distance(&seed, 4) == Some(4),
        || "HPC seed is not [21,13,4]".into(),
    )?;
    let hpc = hypergraph_product(&seed).unwrap();
    ensure((hpc.n(), hpc.k()) == (505, 169), || format!("hpc [[{},{}]]", hpc.n(), hpc.k()))?;
    let rc = random_css(512, 169, 1).map_err(|e| e.to_string())?;
    ensure((rc.n(), rc.k()) == (512, 174), || format!("random-css [[{},{}]]", rc.n(), rc.k()))?;
    ensure(rc.hx().mul(&rc.hz().transpose()).is_zero(), || "random-css does not commute".into())?;
    Ok("tanner [[500,188]] 160/156 w=10 cols{2,4}; hpc [[505,169]]; random-css [[512,174]]".into())
}

fn metacheck() -> Outcome {
    let code = spc3();
    let m = spc3_metacheck(1).map_err(|e| e.to_string())?;
    ensure(m.matrix().mul(code.hx()).is_zero(), || "M·H ≠ 0".into())?;
    let cols = m.matrix().column_supports();
    // Weight 1 and 2: a zero column or two equal columns.
    ensure(cols.iter().all(|c| !c.is_empty()), || "zero column in M".into())?;
    let mut sorted = cols.clone();
    sorted.sort();
    ensure(sorted.windows(2).all(|p| p[0] != p[1]), || "repeated column in M".into())?;
    ensure(m.distance(2).is_none(), || "distance search found weight ≤ 2".into())?;
    let d = m.distance(3);
    ensure(d == Some(3), || format!("distance {d:?}"))?;
    Ok(format!("{}×{} meta-check, no kernel vector of weight ≤ 2, d_M = 3", m.rows(), m.parent_rows()))
}

fn erasure() -> Outcome {
    let code = spc3();
    let mut lines = Vec::new();
    let mut ok = true;
    for (beta, reference) in [(0.191270499958007, 0.046), (0.276601156872496, 0.694)] {
        let p = point(&code, DecoderKind::ErasureMl, ChannelSpec::Erasure(beta), 10_000);
        let pass = (p.rate() - reference).abs() <= 3.0 * p.stderr();
        ok &= pass;
        lines.push(format!("β={beta:.4}: {} vs {reference}{}", fmt_rate(&p), if pass { "" } else { " (outside 3σ)" }));
    }
    let rc = random_css(512, 169, 1).unwrap();
    let p = point(&rc, DecoderKind::ErasureMl, ChannelSpec::Erasure(0.31), 10_000);
    let pass = within_factor(p.rate(), 0.189, 1.5);
    ok &= pass;
    lines.push(format!("random-css β=0.31: {} vs 0.189{}", fmt_rate(&p), if pass { "" } else { " (outside ×1.5)" }));
    let msg = lines.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn bp_curve() -> Outcome {
    let code = spc3();
    let mut lines = Vec::new();
    let mut ok = true;
    for (x, reference) in [(-1.2, 0.504), (-1.4, 0.0770), (-1.6, 0.0119)] {
        let p = point(&code, DecoderKind::Bp, ChannelSpec::Depolarizing(eps(x)), 10_000);
        let pass = within_factor(p.rate(), reference, 2.0);
        ok &= pass;
        lines.push(format!("ε={:.4}: {} vs {reference}", eps(x), fmt_rate(&p)));
    }
    let e = ChannelSpec::Depolarizing(eps(-1.8));
    let rates: Vec<(&str, f64)> = [
        ("bicycle", bicycle(&BicycleSpec::reference(1)).unwrap()),
        ("hpc", hypergraph_product(&hpc_seed_matrix()).unwrap()),
        ("tanner", quantum_tanner(&TannerSpec::reference()).unwrap()),
        ("spc", code),
    ]
    .into_iter()
    .map(|(name, c)| (name, point(&c, DecoderKind::Bp, e, 10_000).rate()))
    .collect();
    let ordered = rates.windows(2).all(|w| w[0].1 > w[1].1);
    ok &= ordered;
    let order: Vec<String> = rates.iter().map(|(n, r)| format!("{n} {r:.4}")).collect();
    lines.push(format!("ε=0.0158: {}", order.join(" > ")));
    let msg = lines.join("; ");
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn extended_bp() -> Outcome {
    let code = spc3();
    let mx = spc3_metacheck(1).unwrap();
    let mz = spc3_metacheck_z(1).unwrap();
    let plain_graph = Arc::new(TannerGraph::new(&code));
    let ext_graph = Arc::new(TannerGraph::extended(&code, &mx, &mz));

    let e0 = eps(-1.4);
    let mut cfg = BpConfig::new(e0);
    let mut plain = BpDecoder::<f64>::new(plain_graph, cfg).map_err(|e| e.to_string())?;
    let mut ext = BpDecoder::<f64>::new(ext_graph.clone(), cfg).map_err(|e| e.to_string())?;
    let channel = ChannelSpec::Depolarizing(e0);
    for t in 0..1000 {
        let s = sample_error(&channel, &code, &mut trial_rng(3, t));
        let (sx, sz) = code.syndromes(&s.error);
        let a = plain.decode(&sx, &sz);
        let ex = ExtendedSyndrome::new(&mx, sx);
        let ez = ExtendedSyndrome::new(&mz, sz);
        let b = ext.decode_extended(&ex.s_prime, &ex.sigma, &ez.s_prime, &ez.sigma);
        ensure(
            a.estimate == b.estimate && a.converged == b.converged,
            || format!("p = 0 disagreement on trial {t}"),
        )?;
    }

    let exp = Experiment::new(code.clone(), DecoderKind::BpExtended)
        .with_metachecks(mx.clone(), mz.clone())
        .map_err(|e| e.to_string())?;
    let p = exp
        .run_point(ChannelSpec::DepolarizingWithReadout(e0, 1e-3), 10_000, 1)
        .map_err(|e| e.to_string())?;
    ensure(within_factor(p.rate(), 0.0923, 2.0), || format!("p=1e-3 rate {} vs 0.0923", fmt_rate(&p)))?;

    cfg.p_readout = 1e-3;
    let mut ext = BpDecoder::<f64>::new(ext_graph, cfg).map_err(|e| e.to_string())?;
    let (m_x, m_z) = (code.hx().rows(), code.hz().rows());
    for i in 0..m_x + m_z {
        let mut sx = BitVector::zeros(m_x);
        let mut sz = BitVector::zeros(m_z);
        if i < m_x {
            sx.toggle(i);
        } else {
            sz.toggle(i - m_x);
        }
        let ex = ExtendedSyndrome::new(&mx, sx);
        let ez = ExtendedSyndrome::new(&mz, sz);
        let r = ext.decode_extended(&ex.s_prime, &ex.sigma, &ez.s_prime, &ez.sigma);
        let (rx, rz) = code.syndromes(&r.estimate);
        let corrected = rx.is_zero() && rz.is_zero() && !code.is_logical_failure(&r.estimate).unwrap();
        ensure(corrected, || format!("read-out flip {i} not corrected"))?;
    }
    Ok(format!("p=0 agrees on 1000 trials; p=1e-3 {} vs 0.0923; all {} single flips corrected", fmt_rate(&p), m_x + m_z))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
    let rows: Vec<Vec<u8>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random::<bool>() as u8).collect())
        .collect();
    BitMatrix::from_rows(cols, &rows)
}

fn span_min_weight(basis: &BitMatrix) -> usize {
    (1u32..1 << basis.rows())
        .map(|mask| {
            let mut v = BitVector::zeros(basis.cols());
            for i in 0..basis.rows() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(&basis.row(i));
                }
            }
            v.weight()
        })
        .min()
        .unwrap()
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut pairs = 0;
    while pairs < 20 {
        let mut comp = || loop {
            let n = rng.random_range(3..=8);
            let m = rng.random_range(1..n);
            let h = random_matrix(&mut rng, m, n);
            if n - rank(&h) <= 4 {
                if let Some((d, _)) = min_kernel_weight(&h, n) {
                    return (h, d);
                }
            }
        };
        let ((h1, d1), (h2, d2)) = (comp(), comp());
        let prod = span_min_weight(&kernel_rows(&classical_product_pcm(&h1, &h2)));
        ensure(prod == d1 * d2, || format!("product law: {prod} ≠ {d1}·{d2}"))?;
        let d = d1.min(d2);
        let tensor = min_kernel_weight(&tensor_product_pcm(&h1, &h2), d).map(|(w, _)| w);
        ensure(tensor == Some(d), || format!("tensor law: {tensor:?} ≠ {d}"))?;
        pairs += 1;
    }

    for _ in 0..200 {
        let (r, c) = (rng.random_range(1..12), rng.random_range(1..40));
        let m = random_matrix(&mut rng, r, c);
        let k = kernel_rows(&m);
        ensure(rank(&m) + k.rows() == c, || "rank-nullity".into())?;
        ensure(m.mul(&k.transpose()).is_zero(), || "kernel".into())?;
        ensure(rank(&m) == rank(&m.transpose()), || "row rank ≠ column rank".into())?;
        let rr = row_reduce(&m);
        ensure(rr.transform.row_range(rr.rank, r).mul(&m).is_zero(), || "row_reduce transform".into())?;
        let v = BitVector::from_bits(&(0..c).map(|_| rng.random::<bool>() as u8).collect::<Vec<_>>());
        ensure(solve(&m.transpose(), &v).is_some() == in_rowspan(&m, &v), || "solve vs rowspan".into())?;
    }

    for a in 0..4 {
        for b in 0..4 {
            let (p, q) = (Pauli::from_index(a), Pauli::from_index(b));
            let (px, pz) = p.bits();
            let (qx, qz) = q.bits();
            ensure(p.inner(q) == ((px & qz) ^ (pz & qx)), || format!("F4 table at {p:?},{q:?}"))?;
            let anticommute = a != 0 && b != 0 && a != b;
            ensure(p.inner(q) == anticommute, || format!("commutation at {p:?},{q:?}"))?;
        }
    }
    let v = PauliVector::from_symbols(&[Pauli::from_index(1), Pauli::from_index(2), Pauli::from_index(3)]);
    ensure(v.to_string().parse::<PauliVector>().ok() == Some(v.clone()), || "Pauli round trip".into())?;

    let exp = Experiment::new(spc3(), DecoderKind::Bp);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| exp.run_point(ChannelSpec::Depolarizing(0.04), 300, 17).unwrap())
    };
    ensure(run(1) == run(4), || "simulation depends on thread count".into())?;
    Ok("product/tensor laws on 20 pairs; 200 bitlin identity checks; F4 table; 1 vs 4 thread determinism".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("parameters", parameters),
        ("construction identity", construction_identity),
        ("distances", distances),
        ("zoo parameters", zoo_parameters),
        ("meta-check", metacheck),
        ("erasure ML", erasure),
        ("BP curve", bp_curve),
        ("extended BP", extended_bp),
        ("properties", properties),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
