//! The ten acceptance criteria, each checked exactly and reported on one
//! line. Run with `cargo test -p modkit-cli --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};

use modkit::cyclotomic::lcm;
use modkit::datum::{
    detect_symmetric_center, emit_zmodular, quotient_constants, reduce_slightly_degenerate, signed_verlinde,
    verify_raw, Classification, RawDatum, Status, VerificationReport, VerifyOptions, ZModularOutput,
};
use modkit::families::{
    pointed_cyclic, sl2_q16_counterexample, taft_double, taft_epsilon_action, taft_fusion, taft_fusion_tensor,
    taft_j, taft_labels, taft_normalized_s, taft_normalizer, TaftLabel,
};
use modkit::json::report_from_json;
use modkit::{root_of_unity, CycNum};
use num_integer::gcd;

type Verdict = Result<String, String>;

fn modkit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_modkit")).args(args).output().expect("modkit binary runs")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zeta(n: u32, k: i64) -> CycNum {
    root_of_unity(n, k)
}

fn int(v: i64) -> CycNum {
    CycNum::from_i64(1, v)
}

fn sum(it: impl IntoIterator<Item = CycNum>) -> CycNum {
    it.into_iter().fold(CycNum::zero(1), |a, b| a + b)
}

/// `x^(2N) = 1` with `N` the conductor: every root of unity of `Q(zeta_N)`
/// has order dividing `2N`.
fn is_root_of_unity(x: &CycNum) -> bool {
    !x.is_zero() && x.pow(2 * x.conductor() as i64).map(|p| p.is_one()).unwrap_or(false)
}

fn mat_mul(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| sum((0..n).map(|k| &a[i][k] * &b[k][j]))).collect()).collect()
}

fn all_pass(r: &VerificationReport) -> Result<(), String> {
    match r.checks.iter().find(|c| c.status != Status::Pass) {
        None => Ok(()),
        Some(c) => Err(format!("{} is {:?}: {}", c.check, c.status, c.witness)),
    }
}

fn tl(l: u32, p: u32) -> TaftLabel {
    TaftLabel { l, p }
}

/// 1. Every Taft double verifies through the CLI and is Z-modular, with a
/// negative constant from d = 3 on.
fn criterion_1(dir: &Path) -> Verdict {
    let start = Instant::now();
    for d in 2..=8u32 {
        let file = dir.join(format!("taft{d}.json"));
        let out = modkit(&["generate", &format!("taft:d={d}"), file.to_str().unwrap()]);
        ensure(out.status.code() == Some(0), || format!("generate taft:d={d} failed"))?;
        let out = modkit(&["verify", file.to_str().unwrap()]);
        ensure(out.status.code() == Some(0), || format!("verify taft d={d} exited {:?}", out.status.code()))?;
        let report = report_from_json(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
        all_pass(&report).map_err(|e| format!("d={d}: {e}"))?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        let class = if stderr.contains("classification: Z-modular") {
            "Z"
        } else if stderr.contains("classification: N-modular") {
            "N"
        } else {
            return Err(format!("d={d}: {stderr}"));
        };
        let negatives = report.get("verlinde_classification").unwrap().witness["negative_entries"].as_u64().unwrap();
        if d >= 3 {
            ensure(class == "Z" && negatives > 0, || format!("d={d}: no negative sN entry"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("d = 2..8 pass, Z-modular, negative sN for d >= 3 ({secs:.1}s)"))
}

/// 2. Signed Verlinde equals the quotient of the Taft fusion rule.
fn criterion_2() -> Verdict {
    let mut entries = 0;
    for d in 2..=8u32 {
        let raw = taft_double(d).unwrap();
        let sd = reduce_slightly_degenerate(&raw).map_err(|e| e.to_string())?;
        let verlinde = signed_verlinde(&sd).map_err(|e| e.to_string())?.tensor.ok_or("no tensor")?;
        let j = taft_j(d);
        let m = j.len();
        ensure(verlinde.constants().len() == m * m * m, || format!("d={d}: tensor size"))?;
        // test-side quotient straight from the multisets
        for (a, &x) in j.iter().enumerate() {
            for (b, &y) in j.iter().enumerate() {
                let prod = taft_fusion(d, x, y);
                for (c, &z) in j.iter().enumerate() {
                    let ez = taft_epsilon_action(d, z);
                    let want = prod.iter().filter(|&&w| w == z).count() as i64 - prod.iter().filter(|&&w| w == ez).count() as i64;
                    let got = verlinde.get(a, b, c);
                    ensure(got == want, || format!("d={d}: sN_{x},{y}^{z} = {got}, oracle {want}"))?;
                    entries += 1;
                }
            }
        }
        let full = taft_fusion_tensor(d);
        let idx: Vec<usize> = j.iter().map(|x| x.index(d)).collect();
        let q = quotient_constants(&full, tl(d - 1, 1).index(d), &idx, -1).map_err(|e| e.to_string())?;
        ensure(q.constants() == verlinde.constants(), || format!("d={d}: quotient_constants differs"))?;
    }
    Ok(format!("{entries} entries equal over d = 2..8"))
}

/// 3. The emitted S~ is the closed form `zeta^e (zeta^(ll') - 1) / d`.
fn criterion_3() -> Verdict {
    for d in 2..=8u32 {
        let raw = taft_double(d).unwrap();
        let sd = reduce_slightly_degenerate(&raw).map_err(|e| e.to_string())?;
        let names: Vec<String> = taft_j(d).iter().map(|x| x.to_string()).collect();
        ensure(sd.labels() == names.as_slice(), || format!("d={d}: J is {:?}", sd.labels()))?;
        let datum = match emit_zmodular(&sd, Some(&taft_normalizer(d))).map_err(|e| e.to_string())? {
            ZModularOutput::Normalized { datum, .. } => datum,
            ZModularOutput::UpToScalar(_) => return Err(format!("d={d}: not normalized")),
        };
        let j = taft_j(d);
        let inv_d = CycNum::from_rational(1, &BigRational::new(BigInt::from(1), BigInt::from(d)));
        for (a, x) in j.iter().enumerate() {
            for (b, y) in j.iter().enumerate() {
                let (l, p, l2, p2) = (x.l as i64, x.p as i64, y.l as i64, y.p as i64);
                let e = -l * l2 - l * p2 - p * l2 - 2 * p * p2;
                let oracle = &(&zeta(d, e) * &(zeta(d, l * l2) - int(1))) * &inv_d;
                let got = datum.s.get(a, b);
                ensure(*got == oracle, || format!("d={d}: S~[{x},{y}] = {got}, expected {oracle}"))?;
            }
        }
        ensure(datum.s == taft_normalized_s(d), || format!("d={d}: taft_normalized_s differs"))?;
    }
    Ok("entrywise equal for d = 2..8".into())
}

/// 4. The full Taft S has rank d(d-1)/2.
fn criterion_4() -> Verdict {
    let mut ranks = Vec::new();
    for d in 3..=8u32 {
        let raw = taft_double(d).unwrap();
        let r = raw.s.rank();
        ensure(2 * r == (d * (d - 1)) as usize, || format!("d={d}: rank {r}"))?;
        ranks.push(r);
    }
    Ok(format!("ranks {ranks:?} for d = 3..8"))
}

/// 5. Pointed categories: group-law fusion, `1bar = delta_{-k0}`, and
/// degenerate detection for non-primitive roots.
fn criterion_5() -> Verdict {
    let mut count = 0;
    for n in [3u32, 5, 7, 9] {
        for a in (1..n).filter(|&a| gcd(a, n) == 1) {
            for k0 in [0i64, 1] {
                let raw = pointed_cyclic(n, a as i64, k0).unwrap();
                let out = verify_raw(&raw, &VerifyOptions::default());
                all_pass(&out.report).map_err(|e| format!("n={n} a={a} k0={k0}: {e}"))?;
                ensure(out.classification == Classification::NModular, || format!("n={n} a={a}: {:?}", out.classification))?;
                let t = out.fusion.as_ref().ok_or("no fusion tensor")?;
                let ni = n as usize;
                for k in 0..ni {
                    for l in 0..ni {
                        for m in 0..ni {
                            let want = i64::from(m == (k + l) % ni);
                            ensure(t.get(k, l, m) == want, || format!("n={n} a={a}: N_{k},{l}^{m}"))?;
                        }
                    }
                }
                let data = out.data.as_ref().unwrap();
                let expect = format!("d{}", (-k0).rem_euclid(n as i64));
                ensure(data.labels[data.unit_bar] == expect, || format!("n={n} a={a} k0={k0}: 1bar is {}", data.labels[data.unit_bar]))?;
                count += 1;
            }
        }
    }
    for (n, a) in [(3u32, 0i64), (5, 0), (7, 0), (9, 0), (9, 3), (9, 6)] {
        for k0 in [0i64, 1] {
            let raw = pointed_cyclic(n, a, k0).unwrap();
            let center = detect_symmetric_center(&raw).map_err(|e| e.to_string())?;
            ensure(center.members.len() > 1, || format!("n={n} a={a}: center {:?}", center.members))?;
            let out = verify_raw(&raw, &VerifyOptions::default());
            ensure(out.classification == Classification::Degenerate, || format!("n={n} a={a}: {:?}", out.classification))?;
            ensure(out.report.status("symmetric_center") == Some(Status::Fail), || "center check passed".into())?;
        }
    }
    Ok(format!("{count} primitive instances N-modular; non-primitive ones reported degenerate"))
}

/// 6. The bold sl2 pair at q = zeta_16 fails `(ST)^3 ~ S^2`.
fn criterion_6(dir: &Path) -> Verdict {
    let (_, bold) = sl2_q16_counterexample();
    let out = verify_raw(&bold, &VerifyOptions::default());
    let name = "(ST)^3 = stau- S^2";
    let check = out.report.get(name).ok_or("check missing")?;
    ensure(check.status == Status::Fail, || "relation unexpectedly holds".into())?;

    // test-side: [3] = q^-2 + 1 + q^2, T = diag(1, -i)
    let three = zeta(16, -2) + int(1) + zeta(16, 2);
    let i = zeta(16, 4);
    let s = vec![vec![int(1), three.clone()], vec![three.clone(), int(-1)]];
    let t = vec![vec![int(1), int(0)], vec![int(0), -&i]];
    let st = mat_mul(&s, &t);
    let st3 = mat_mul(&mat_mul(&st, &st), &st);
    let s2 = mat_mul(&s, &s);
    let theta = [int(1), i.clone()];
    let sqnorm = [int(1), &three * &three];
    let stau_minus = sum((0..2).map(|x| &theta[x].inv().unwrap() * &sqnorm[x]));
    let idx = |l: &str| if l == "V0" { 0 } else { 1 };
    let w = &check.witness;
    let (r, c) = (idx(w["row"].as_str().unwrap()), idx(w["col"].as_str().unwrap()));
    let lhs: CycNum = serde_json::from_value(w["lhs"]["exact"].clone()).map_err(|e| e.to_string())?;
    let rhs: CycNum = serde_json::from_value(w["rhs"]["exact"].clone()).map_err(|e| e.to_string())?;
    ensure(lhs == st3[r][c] && rhs == &stau_minus * &s2[r][c] && lhs != rhs, || format!("witness {w} does not match"))?;
    // no scalar at all: S^2 is diagonal while (ST)^3 is not
    ensure(s2[0][1].is_zero() && !st3[0][1].is_zero(), || "(ST)^3 is proportional to S^2".into())?;

    let file = dir.join("sl2q16.json");
    modkit(&["generate", "counterexample:sl2q16", file.to_str().unwrap()]);
    let cli = modkit(&["verify", file.to_str().unwrap()]);
    ensure(cli.status.code() == Some(1), || format!("exit code {:?}", cli.status.code()))?;
    let report = report_from_json(&String::from_utf8_lossy(&cli.stdout)).map_err(|e| e.to_string())?;
    ensure(report.status(name) == Some(Status::Fail), || "CLI report does not fail the relation".into())?;
    Ok(format!("fails at ({}, {}) with exact witness; exit code 1", w["row"].as_str().unwrap(), w["col"].as_str().unwrap()))
}

/// Test-side bar on `working` (indices into the full datum):
/// `s_{Xb}(Y) = s_X(Y^*)` for all `Y`.
fn bar_oracle(raw: &RawDatum, working: &[usize]) -> Vec<usize> {
    let dual = raw.duality.as_ref().unwrap();
    let n = raw.len();
    let dim = raw.dims_r();
    working
        .iter()
        .map(|&x| {
            let hits: Vec<usize> = (0..working.len())
                .filter(|&p| {
                    let xb = working[p];
                    (0..n).all(|y| raw.s.get(xb, y) * &dim[x] == raw.s.get(x, dual[y]) * &dim[xb])
                })
                .collect();
            assert_eq!(hits.len(), 1);
            hits[0]
        })
        .collect()
}

struct Instance {
    name: String,
    raw: RawDatum,
    /// Full fusion constants from an independent rule.
    fusion: Box<dyn Fn(usize, usize, usize) -> i64>,
    /// `1bar` as stated for the family.
    unit_bar: usize,
    /// Representatives, for the slightly degenerate instances.
    j: Option<Vec<usize>>,
}

fn instances() -> Vec<Instance> {
    let mut v = Vec::new();
    for d in 2..=8u32 {
        let labels = taft_labels(d);
        let fusion = move |x: usize, y: usize, z: usize| {
            taft_fusion(d, labels[x], labels[y]).iter().filter(|w| w.index(d) == z).count() as i64
        };
        v.push(Instance {
            name: format!("taft d={d}"),
            raw: taft_double(d).unwrap(),
            fusion: Box::new(fusion),
            unit_bar: tl(d - 1, 0).index(d),
            j: Some(taft_j(d).iter().map(|x| x.index(d)).collect()),
        });
    }
    for n in [3u32, 5, 7, 9] {
        for a in (1..n).filter(|&a| gcd(a, n) == 1) {
            for k0 in [0i64, 1] {
                let nn = n as usize;
                v.push(Instance {
                    name: format!("pointed n={n} a={a} k0={k0}"),
                    raw: pointed_cyclic(n, a as i64, k0).unwrap(),
                    fusion: Box::new(move |x, y, z| i64::from(z == (x + y) % nn)),
                    unit_bar: (-k0).rem_euclid(n as i64) as usize,
                    j: None,
                });
            }
        }
    }
    v
}

fn structural(inst: &Instance) -> Result<(), String> {
    let raw = &inst.raw;
    let n = raw.len();
    let dual = raw.duality.as_ref().unwrap();
    let dim_r = raw.dims_r();
    let dim_l: Vec<CycNum> = (0..n).map(|x| dim_r[dual[x]].clone()).collect();
    let th = &raw.twists;
    let out = verify_raw(raw, &VerifyOptions::default());
    let sl = inst.j.is_some();
    let names: &[&str] = if sl {
        &["S^2 = sdim u E", "stau+ stau- = sdim", "vafa: sxi^2 is a root of unity"]
    } else {
        &["S^2 = D u E", "tau+ tau- = D", "vafa: xi^2 is a root of unity"]
    };
    for name in names.iter().chain(&[
        "theta_{1bar} = 1",
        "theta_{X*} dim^R(X) = theta_X dim^L(X)",
        "balancing",
        "vafa: twists are roots of unity",
    ]) {
        ensure(out.report.status(name) == Some(Status::Pass), || format!("report: {name} is {:?}", out.report.status(name)))?;
    }

    // twist identities on all simples
    ensure(th[inst.unit_bar].is_one(), || "theta_1bar != 1".into())?;
    for x in 0..n {
        ensure(&th[dual[x]] * &dim_r[x] == &th[x] * &dim_l[x], || format!("twist/dimension at {}", raw.labels[x]))?;
        ensure(is_root_of_unity(&th[x]), || format!("theta_{} not a root of unity", raw.labels[x]))?;
    }
    // balancing on all pairs with the independent fusion rule
    for x in 0..n {
        for y in 0..n {
            let lhs = &(&th[x] * &th[y]) * raw.s.get(x, y);
            let rhs = sum((0..n).map(|z| &int((inst.fusion)(x, y, z)) * &(&dim_r[z] * &th[z])));
            ensure(lhs == rhs, || format!("balancing at ({}, {})", raw.labels[x], raw.labels[y]))?;
        }
    }

    // S^2 = D u E on the working labels
    let working: Vec<usize> = inst.j.clone().unwrap_or_else(|| (0..n).collect());
    let m = working.len();
    let sq: Vec<CycNum> = (0..n).map(|x| &dim_r[x] * &dim_l[x]).collect();
    let global: CycNum = sum(sq.iter().cloned());
    let dim = if sl { &global * &CycNum::from_rational(1, &BigRational::new(1.into(), 2.into())) } else { global.clone() };
    let u = dim_r[inst.unit_bar].clone();
    let s: Vec<Vec<CycNum>> = working.iter().map(|&x| working.iter().map(|&y| raw.s.get(x, y).clone()).collect()).collect();
    let s2 = mat_mul(&s, &s);
    let scale = (&dim * &u).inv().unwrap();
    let bar = bar_oracle(raw, &working);
    for a in 0..m {
        for b in 0..m {
            let e = &s2[a][b] * &scale;
            let ok = if b == bar[a] { e == int(1) || e == int(-1) } else { e.is_zero() };
            ensure(ok, || format!("E[{}, {}] = {e}", raw.labels[working[a]], raw.labels[working[b]]))?;
        }
    }
    // Gauss sums over the working labels
    let tp = sum(working.iter().map(|&x| &th[x] * &sq[x]));
    let tm = sum(working.iter().map(|&x| &th[x].inv().unwrap() * &sq[x]));
    ensure(&tp * &tm == dim, || "tau+ tau- != D".into())?;
    let xi2 = if sl { &(&(&tp * &tp) * &(&u * &u)) * &dim.inv().unwrap() } else { &(&(&tp * &tp) * &u) * &dim.inv().unwrap() };
    ensure(is_root_of_unity(&xi2), || format!("xi^2 = {xi2}"))?;
    Ok(())
}

/// 7. Structural identities on every generated instance.
fn criterion_7() -> Verdict {
    let all = instances();
    for inst in &all {
        structural(inst).map_err(|e| format!("{}: {e}", inst.name))?;
    }
    Ok(format!("{} instances", all.len()))
}

/// 8. `N N^(eps Z) = 0`, and the `+` quotient is the absolute value of the
/// `-` quotient.
fn criterion_8() -> Verdict {
    for d in 3..=5u32 {
        let full = taft_fusion_tensor(d);
        let labels = taft_labels(d);
        for x in &labels {
            for y in &labels {
                let prod = taft_fusion(d, *x, *y);
                for z in &labels {
                    let a = prod.iter().filter(|w| *w == z).count();
                    let b = prod.iter().filter(|&&w| w == taft_epsilon_action(d, *z)).count();
                    ensure(a * b == 0, || format!("d={d}: N_{x},{y}^{z} N^(eps z) = {}", a * b))?;
                }
            }
        }
        let j: Vec<usize> = taft_j(d).iter().map(|x| x.index(d)).collect();
        let eps = tl(d - 1, 1).index(d);
        let minus = quotient_constants(&full, eps, &j, -1).map_err(|e| e.to_string())?;
        let plus = quotient_constants(&full, eps, &j, 1).map_err(|e| e.to_string())?;
        for (k, (m, p)) in minus.constants().iter().zip(plus.constants()).enumerate() {
            ensure(m.abs() == *p, || format!("d={d}: entry {k}: |{m}| != {p}"))?;
        }
    }
    Ok("hypothesis holds and |sN(-)| = sN(+) for d = 3..5".into())
}

/// 9. Random transversals give the same outcomes, supersums and sdim.
fn criterion_9() -> Verdict {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut runs = 0;
    for d in 3..=5u32 {
        let raw = taft_double(d).unwrap();
        let base = verify_raw(&raw, &VerifyOptions::default());
        all_pass(&base.report)?;
        let base_sdim = base.sldeg.as_ref().unwrap().sdim().clone();
        for _ in 0..12 {
            let j: Vec<usize> = taft_j(d)
                .into_iter()
                .map(|x| if x == tl(1, 0) || rng.gen_bool(0.5) { x } else { taft_epsilon_action(d, x) })
                .map(|x| x.index(d))
                .collect();
            let opts = VerifyOptions { representatives: Some(j.clone()), ..VerifyOptions::default() };
            let out = verify_raw(&raw, &opts);
            let sd = out.sldeg.as_ref().ok_or("no reduction")?;
            ensure(sd.j == j, || format!("d={d}: J not used"))?;
            ensure(out.report.outcomes() == base.report.outcomes(), || format!("d={d} J={j:?}: outcomes differ"))?;
            ensure(out.gauss == base.gauss, || format!("d={d} J={j:?}: supersums differ"))?;
            ensure(*sd.sdim() == base_sdim, || format!("d={d} J={j:?}: sdim differs"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} random transversals"))
}

fn arb_cyc() -> impl Strategy<Value = CycNum> {
    let conductors = prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24]);
    (conductors, prop::collection::vec((-4i64..=4, 0i64..48), 0..5), 1i64..4).prop_map(|(n, terms, den)| {
        let x = CycNum::from_exponent_sum(n, &terms);
        &x * &CycNum::from_rational(1, &BigRational::new(1.into(), den.into()))
    })
}

/// Test-side embedding `zeta_N -> exp(2 pi i / N)` in floating point.
fn embed(x: &CycNum) -> (f64, f64) {
    let n = x.conductor() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.numer().to_string().parse::<f64>().unwrap() / c.denom().to_string().parse::<f64>().unwrap();
        let a = 2.0 * std::f64::consts::PI * k as f64 / n;
        (re + c * a.cos(), im + c * a.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs() + a.1.abs() + b.0.abs() + b.1.abs();
    (a.0 - b.0).abs() + (a.1 - b.1).abs() < 1e-9 * scale
}

fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(cases)
}

/// 10. Randomized property suite for the cyclotomic kernel.
fn criterion_10() -> Verdict {
    let mut total = 0;
    total += run_property(3000, (arb_cyc(), arb_cyc(), arb_cyc()), |(x, y, z)| {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x + &(-&x)).is_zero());
        let (a, b) = (embed(&x), embed(&y));
        let product = (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        prop_assert!(close(embed(&(&x * &y)), product));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        Ok(())
    })?;
    total += run_property(2500, (arb_cyc(), arb_cyc(), 0usize..64, 0usize..64), |(x, y, i, j)| {
        let n = lcm(x.conductor(), y.conductor());
        let (x, y) = (x.lift(n).unwrap(), y.lift(n).unwrap());
        let units: Vec<i64> = (1..=n as i64).filter(|&k| gcd(k as u32, n) == 1).collect();
        let (a, b) = (units[i % units.len()], units[j % units.len()]);
        let ga = |v: &CycNum, k: i64| v.galois_apply(k).unwrap();
        prop_assert_eq!(ga(&ga(&x, b), a), ga(&x, a * b));
        prop_assert_eq!(ga(&(&x * &y), a), &ga(&x, a) * &ga(&y, a));
        prop_assert_eq!(ga(&(&x + &y), a), &ga(&x, a) + &ga(&y, a));
        prop_assert_eq!(ga(&x, -1), x.conj());
        Ok(())
    })?;
    total += run_property(2500, (arb_cyc(), 1u32..6), |(x, f)| {
        let m = x.conductor() * f;
        let lifted = x.lift(m).unwrap();
        prop_assert_eq!(lifted.conductor(), m);
        prop_assert_eq!(&lifted, &x);
        prop_assert_eq!(lifted.lift(m).unwrap(), lifted.clone());
        let small = x.minimize_conductor();
        prop_assert_eq!(&small, &x);
        prop_assert_eq!(small.minimize_conductor().conductor(), small.conductor());
        prop_assert_eq!(lifted.minimize_conductor().conductor(), small.conductor());
        prop_assert_eq!(x.conductor() % small.conductor(), 0);
        Ok(())
    })?;
    total += run_property(2500, (prop::sample::select(vec![1u32, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24]), -60i64..60, any::<bool>(), 1u32..4), |(n, k, neg, f)| {
        let mut x = root_of_unity(n, k).lift(n * f).unwrap();
        if neg {
            x = -&x;
        }
        let w = x.is_root_of_unity().expect("root of unity not detected");
        let rebuilt = &CycNum::from_i64(1, w.sign as i64) * &root_of_unity(x.conductor(), w.exponent);
        prop_assert_eq!(&rebuilt, &x);
        prop_assert!(x.pow(w.order as i64).unwrap().is_one());
        for p in 2..=w.order {
            if w.order.is_multiple_of(p) && (2..p).all(|q| p % q != 0) {
                prop_assert!(!x.pow((w.order / p) as i64).unwrap().is_one());
            }
        }
        Ok(())
    })?;
    total += run_property(1000, arb_cyc(), |x| {
        if let Some(w) = x.is_root_of_unity() {
            prop_assert!(x.pow(w.order as i64).unwrap().is_one());
        } else {
            prop_assert!(!is_root_of_unity(&x));
        }
        let y = &x + &CycNum::from_i64(1, 3);
        if !x.is_zero() {
            prop_assert!(y.is_root_of_unity().is_none() || is_root_of_unity(&y));
        }
        Ok(())
    })?;
    ensure(total >= 10_000, || format!("only {total} cases"))?;
    Ok(format!("{total} randomized cases, zero failures"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("Taft Z-modularity", Box::new(|| criterion_1(dir.path()))),
        ("oracle equivalence", Box::new(criterion_2)),
        ("closed-form S~", Box::new(criterion_3)),
        ("rank halving", Box::new(criterion_4)),
        ("pointed family", Box::new(criterion_5)),
        ("sl2 counterexample", Box::new(|| criterion_6(dir.path()))),
        ("structural identities", Box::new(criterion_7)),
        ("absolute-value property", Box::new(criterion_8)),
        ("choice independence", Box::new(criterion_9)),
        ("cyclotomic property suite", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{secs:.2}s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
