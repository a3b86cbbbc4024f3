//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::io::Write;
use std::time::Instant;

use qfsplit::delta::{delta1, LiftSpec};
use qfsplit::groebner::{ideal_equal, IdealFp, DEFAULT_DEGREE_CEILING};
use qfsplit::multiheight::{
    element_heights, ideal_heights, multiheight_colon, naive_multiheight, qfs_height, replay_colon, Certificate,
    EngineConfig, HeightReport, NaiveMode,
};
use qfsplit::rdp::{
    alpha_e_sequence, d_equation, d_zero_values, dseries_closed_form, table_rows, taut_witnesses, DFamily, GTag, TABLE,
};
use qfsplit::ring::{Monomial, Poly};
use qfsplit::threshold::{height_seq_to_ppt, PptRational};
use qfsplit::trace::{ideal_image_u, trace_u};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn engine(spec: &LiftSpec) -> Result<HeightReport, String> {
    multiheight_colon(spec, &EngineConfig::default()).map_err(|e| e.to_string())
}

fn engine_ppt(p: u64, f: &str, g: &str) -> Result<PptRational, String> {
    let spec = LiftSpec::parse(p, f, g).map_err(|e| e.to_string())?;
    let rep = engine(&spec)?;
    if !rep.seq.certified() {
        return Err(format!("{f} with G={g}: {} not certified", rep.seq));
    }
    Ok(height_seq_to_ppt(&rep.seq, p))
}

fn compare(label: &str, got: &PptRational, want: &PptRational, misses: &mut Vec<String>) {
    if got != want {
        misses.push(format!("{label}: got {got}, want {want}"));
    }
}

fn verdict(checked: usize, misses: Vec<String>) -> Outcome {
    if misses.is_empty() {
        Ok(format!("{checked} checks"))
    } else {
        Err(format!("{} of {checked} checks failed; first: {}", misses.len(), misses[0]))
    }
}

fn table_for(primes: &[u64]) -> Outcome {
    let mut misses = Vec::new();
    let mut checked = 0;
    for &p in primes {
        for row in table_rows(p) {
            for (want, g) in row.expected() {
                checked += 1;
                let label = format!("{} p={p} G={g}", row.kind);
                match engine_ppt(p, row.equation, g) {
                    Ok(got) => compare(&label, &got, &want, &mut misses),
                    Err(e) => misses.push(format!("{label}: {e}")),
                }
            }
        }
    }
    verdict(checked, misses)
}

fn criterion_1() -> Outcome {
    table_for(&[2])
}

fn criterion_2() -> Outcome {
    table_for(&[3, 5])
}

fn criterion_3() -> Outcome {
    let mut misses = Vec::new();
    let mut checked = 0;
    for family in [DFamily::Even, DFamily::Odd] {
        for n in 2..=9 {
            let f = d_equation(family, n, 0);
            for (want, g) in d_zero_values(n) {
                checked += 1;
                let label = format!("{} n={n} G={g}", family.name());
                match engine_ppt(2, &f, &g) {
                    Ok(got) => compare(&label, &got, &want, &mut misses),
                    Err(e) => misses.push(format!("{label}: {e}")),
                }
            }
        }
    }
    verdict(checked, misses)
}

fn criterion_4() -> Outcome {
    let want = [
        "1/31", "9/256", "5/128", "41/1024", "3/64", "1/21", "27/512", "1/17", "1/15", "1/13", "1/11", "1/9", "1/7",
        "1/5", "1/3",
    ];
    let mut misses = Vec::new();
    for (r, w) in (1..=15).zip(want) {
        let w: PptRational = w.parse().expect("literal");
        let label = format!("n=17 r={r}");
        match engine_ppt(2, &d_equation(DFamily::Even, 17, r), "0") {
            Ok(got) => compare(&label, &got, &w, &mut misses),
            Err(e) => misses.push(format!("{label}: {e}")),
        }
        match dseries_closed_form(17, r, GTag::Zero) {
            Ok(Some(cf)) => compare(&format!("{label} closed form"), &cf.ppt, &w, &mut misses),
            other => misses.push(format!("{label}: closed form {other:?}")),
        }
    }
    verdict(30, misses)
}

fn criterion_5() -> Outcome {
    let mut misses = Vec::new();
    let mut checked = 0;
    for family in [DFamily::Even, DFamily::Odd] {
        for m in 2..=8u32 {
            checked += 1;
            let want = PptRational::new(1, m as i64).expect("nonzero");
            let label = format!("{} (n,r)=({},{m}) G=xz", family.name(), 2 * m);
            match engine_ppt(2, &d_equation(family, 2 * m, m), "x*z") {
                Ok(got) => compare(&label, &got, &want, &mut misses),
                Err(e) => misses.push(format!("{label}: {e}")),
            }
        }
    }
    verdict(checked, misses)
}

fn criterion_6() -> Outcome {
    let mut misses = Vec::new();
    let (mut exact, mut bounded) = (0, 0);
    for family in [DFamily::Even, DFamily::Odd] {
        for n in 2..=12u32 {
            for r in 1..n {
                for tag in [GTag::Zero, GTag::Xz] {
                    let label = format!("{} n={n} r={r} G={}", family.name(), tag.poly());
                    let spec = LiftSpec::parse(2, &d_equation(family, n, r), tag.poly()).expect("d equation");
                    let rep = match engine(&spec) {
                        Ok(rep) if rep.seq.certified() => rep,
                        Ok(rep) => {
                            misses.push(format!("{label}: {} not certified", rep.seq));
                            continue;
                        }
                        Err(e) => {
                            misses.push(format!("{label}: {e}"));
                            continue;
                        }
                    };
                    match dseries_closed_form(n, r, tag).expect("valid (n, r)") {
                        Some(cf) => {
                            exact += 1;
                            if rep.seq != cf.seq {
                                misses.push(format!("{label}: engine {} vs closed form {}", rep.seq, cf.seq));
                            }
                        }
                        None => {
                            bounded += 1;
                            let es = alpha_e_sequence(n, r, tag.variant(), 0).expect("recursion");
                            let len = 4 * es.es.len() + 8;
                            let hs = rep.seq.prefix(len);
                            if let Some(i) = (0..len).find(|&i| hs[i] > es.e(i)) {
                                misses.push(format!("{label}: h_{i}={} exceeds e_{i}={}", hs[i], es.e(i)));
                            }
                            if let Some(j) = (0..len).find(|&j| hs[j] < es.e(j)) {
                                if hs[j + 1..].iter().any(|&h| h != 1) {
                                    misses.push(format!("{label}: {} drops below e at {j} without a tail of ones", rep.seq));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    verdict(exact + bounded, misses).map(|s| format!("{s} ({exact} closed form, {bounded} bounded)"))
}

fn naive_prefix(spec: &LiftSpec, len: usize, mode: NaiveMode) -> Result<Vec<u32>, String> {
    naive_multiheight(spec.fbar(), len, 12, mode, DEFAULT_DEGREE_CEILING).map(|r| r.prefix).map_err(|e| e.to_string())
}

/// Bounded-mode prefix at the smallest workable bound `D`, checked
/// against `2D` and against the exact route.
fn doubling_stable(spec: &LiftSpec, len: usize, label: &str, misses: &mut Vec<String>) {
    let exact = naive_prefix(spec, len, NaiveMode::Exact);
    let Some((d, small)) = [8u32, 16, 32, 64]
        .iter()
        .find_map(|&d| naive_prefix(spec, len, NaiveMode::Bounded(d)).ok().map(|v| (d, v)))
    else {
        misses.push(format!("{label}: no workable degree bound up to 64"));
        return;
    };
    let large = naive_prefix(spec, len, NaiveMode::Bounded(2 * d));
    if large.as_ref() != Ok(&small) || exact.as_ref() != Ok(&small) {
        misses.push(format!("{label}: D={d} gives {small:?}, 2D gives {large:?}, exact gives {exact:?}"));
    }
}

fn criterion_7() -> Outcome {
    let mut misses = Vec::new();
    let mut checked = 0;
    for row in TABLE {
        checked += 1;
        let label = format!("{} p={}", row.kind, row.p);
        let spec = LiftSpec::parse(row.p, row.equation, "0").expect("table equation");
        let fedder = qfs_height(&spec, 12).ok().and_then(|h| h.height());
        match naive_prefix(&spec, 1, NaiveMode::Exact) {
            Ok(m) if Some(m[0]) == fedder => {}
            other => misses.push(format!("{label}: naive {other:?} vs height {fedder:?}")),
        }
        doubling_stable(&spec, 3, &label, &mut misses);
        // The naive sequence does not depend on G and bounds every lift.
        let naive = naive_prefix(&spec, 5, NaiveMode::Exact);
        for (_, g) in row.expected() {
            checked += 1;
            let lift = LiftSpec::parse(row.p, row.equation, g).expect("table lift");
            let multi = engine(&lift).map(|rep| rep.seq.prefix(5));
            match (&naive, &multi) {
                (Ok(n), Ok(m)) if n >= m => {}
                _ => misses.push(format!("{label} G={g}: naive {naive:?} below multi-height {multi:?}")),
            }
        }
    }
    for family in [DFamily::Even, DFamily::Odd] {
        for n in 2..=8u32 {
            for r in 0..n {
                checked += 1;
                let label = format!("{} n={n} r={r}", family.name());
                let spec = LiftSpec::parse(2, &d_equation(family, n, r), "0").expect("d equation");
                let multi = engine(&spec).map(|rep| rep.seq.prefix(5));
                let naive = naive_prefix(&spec, 5, NaiveMode::Exact);
                if naive.is_err() || naive != multi {
                    misses.push(format!("{label}: naive {naive:?} vs multi-height {multi:?}"));
                }
                doubling_stable(&spec, 5, &label, &mut misses);
            }
        }
    }
    verdict(checked, misses)
}

fn random_poly<R: Rng>(rng: &mut R, p: u64, level: u32, max_deg: u32, terms: usize) -> Poly {
    let modulus = p.pow(level) as i64;
    let t: Vec<(Monomial, i64)> = (0..terms)
        .map(|_| {
            let e = [rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg)];
            (Monomial::new(e), rng.gen_range(1..modulus))
        })
        .collect();
    Poly::from_terms(p, level, t)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut misses = Vec::new();
    let mut checked = 0;

    for i in 0..150 {
        checked += 1;
        let p = [2, 3, 5][i % 3];
        let g = random_poly(&mut rng, p, 2, 3, 4);
        let lhs = g.pow(p).expect("power");
        let rhs = g.frobenius_lift().and_then(|phi| phi.add(&delta1(&g)?.lift_to_level2().scale(p as i64)));
        if rhs.as_ref() != Ok(&lhs) {
            misses.push(format!("delta identity fails for {}", g.render()));
        }
    }

    for i in 0..150 {
        checked += 1;
        let p = [2, 3, 5][i % 3];
        let a = random_poly(&mut rng, p, 1, 2, 3);
        let b = random_poly(&mut rng, p, 1, 6, 6);
        let c = random_poly(&mut rng, p, 1, 6, 6);
        let twisted = trace_u(&a.pow(p).and_then(|ap| ap.mul(&b)).expect("product"));
        let scaled = a.mul(&trace_u(&b)).expect("product");
        let additive = trace_u(&b.add(&c).expect("sum")) == trace_u(&b).add(&trace_u(&c)).expect("sum");
        if twisted != scaled || !additive {
            misses.push(format!("trace semilinearity fails for a={} b={}", a.render(), b.render()));
        }
    }

    for i in 0..60 {
        checked += 1;
        let p = [2, 3][i % 2];
        let gens: Vec<Poly> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, p, 1, 2, 3)).collect();
        let ideal = IdealFp::new(p, gens);
        let ok = ideal
            .frobenius_power(1)
            .and_then(|ip| ideal_image_u(&ip, DEFAULT_DEGREE_CEILING))
            .and_then(|img| ideal_equal(&img, &ideal, DEFAULT_DEGREE_CEILING));
        if ok != Ok(true) {
            misses.push(format!("u(I^[p]) != I for {:?} ({ok:?})", ideal.render()));
        }
    }

    let mut members = 0;
    for i in 0..500 {
        checked += 1;
        let p = [2, 3][i % 2];
        let mut gens: Vec<Poly> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(1..=3);
            gens.push(common::random_form(&mut rng, p, d, 0.5));
        }
        let d = rng.gen_range(2..=4);
        let g = if rng.gen_bool(0.5) {
            // Build a combination of the generators so positives are common.
            let mut acc = Poly::zero(p, 1);
            for f in &gens {
                let df = f.total_degree().unwrap_or(0);
                if df <= d {
                    let m = common::random_form(&mut rng, p, d - df, 0.6);
                    acc = acc.add(&f.mul(&m).expect("product")).expect("sum");
                }
            }
            if acc.is_zero() {
                common::random_form(&mut rng, p, d, 0.5)
            } else {
                acc
            }
        } else {
            common::random_form(&mut rng, p, d, 0.5)
        };
        let oracle = common::span_member(&gens, &g);
        members += oracle as usize;
        let engine = IdealFp::new(p, gens.clone()).with_gb(DEFAULT_DEGREE_CEILING).and_then(|i| i.member(&g));
        if engine != Ok(oracle) {
            misses.push(format!("membership of {} disagrees: engine {engine:?}, oracle {oracle}", g.render()));
        }
    }

    let cfg = EngineConfig::default();
    for spec in common::pipeline_corpus() {
        checked += 1;
        let label = format!("{} + {}·({})", spec.f0().render(), spec.p(), spec.g().render());
        let colon = engine(&spec).map(|rep| rep.seq.prefix(6));
        let element = element_heights(&spec, 6, &cfg).map_err(|e| e.to_string());
        let ideal = ideal_heights(&spec, 6, &cfg).map_err(|e| e.to_string());
        if colon.is_err() || colon != element || colon != ideal {
            misses.push(format!("{label}: colon {colon:?}, element {element:?}, ideal {ideal:?}"));
        }
        let rep = match engine(&spec) {
            Ok(rep) => rep,
            Err(_) => continue,
        };
        let one = Poly::one(spec.p(), 1);
        let steps = rep.steps_computed.max(4);
        let first = replay_colon(&spec, &one, steps, cfg.h_cap).map_err(|e| e.to_string());
        let second = replay_colon(&spec, &one, steps, cfg.h_cap).map_err(|e| e.to_string());
        let heights: Result<Vec<u32>, String> = first.clone().map(|s| s.iter().map(|c| c.height).collect());
        if first != second || heights != Ok(rep.seq.prefix(steps)) {
            misses.push(format!("{label}: replay not deterministic or disagrees with {}", rep.seq));
        }
        if let Certificate::ColonCycle { s, t } = rep.certificate {
            if let Ok(states) = &first {
                if t < states.len() && s > 0 && states[s - 1].next != states[t - 1].next {
                    misses.push(format!("{label}: replayed states at {s} and {t} differ"));
                }
            }
        }
    }
    verdict(checked, misses).map(|s| format!("{s}, {members} of 500 memberships positive"))
}

fn criterion_9() -> Outcome {
    let mut misses = Vec::new();
    let witnesses = taut_witnesses();
    for w in &witnesses {
        let label = format!("{} p={}", w.kind, w.p);
        match w.lift("0").map_err(|e| e.to_string()).and_then(|s| engine(&s)) {
            Ok(rep) => {
                let ppt = height_seq_to_ppt(&rep.seq, w.p);
                if !ppt.is_one() || rep.seq.period() != [1] || !rep.seq.preperiod().is_empty() || !rep.seq.certified() {
                    misses.push(format!("{label}: {} gives {ppt}", rep.seq));
                }
            }
            Err(e) => misses.push(format!("{label}: {e}")),
        }
    }
    verdict(witnesses.len(), misses)
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("table p=2", criterion_1),
        ("table p=3,5", criterion_2),
        ("D^0 rows", criterion_3),
        ("n=17 list", criterion_4),
        ("(2m,m) with xz", criterion_5),
        ("closed form cross-check", criterion_6),
        ("naive multi-height", criterion_7),
        ("property suites", criterion_8),
        ("taut baseline", criterion_9),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut stdout = std::io::stdout().lock();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(stdout, "criterion {}: {tag} [{name}] {detail} ({secs:.2}s)", i + 1).expect("stdout");
    }
    stdout.flush().expect("stdout");
    if failed > 0 {
        std::process::exit(1);
    }
}
