//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lykit::leeyang::{
    decompose_ly, delta_model, is_ly, sweep_membership, temperature_poly, Classification, MembershipOptions, Status,
    SweepConfig, TemperatureModel,
};
use lykit::radius::{inner_radius, oracle_min_zero, OracleOptions, SearchOptions};
use lykit::spins::{is_ly_bm, lift_sigma, temperature_block, univariate_lift, SpinPairForm, UnivariatePoly};
use lykit::{Complex, Poly, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn unimodular(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(1.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let mut coeffs: Vec<C64> = (0..1usize << n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    if coeffs[0].norm() < 0.1 {
        coeffs[0] = c(0.5, 0.0);
    }
    Poly::from_coeffs(n, coeffs).unwrap()
}

fn status(psi: &Poly) -> Status {
    is_ly(psi, TOL, &MembershipOptions::default()).unwrap().status
}

/// `a + b z` with `|b| ≤ |a|`.
fn atom(rng: &mut ChaCha8Rng) -> Poly {
    let a = unimodular(rng) * rng.gen_range(0.5..2.0);
    let b = unimodular(rng) * a.norm() * rng.gen_range(0.0..1.0);
    Poly::from_coeffs(1, vec![a, b]).unwrap()
}

/// Tensor products of atoms, convolved with a second such product.
fn stable_poly(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let product = |rng: &mut ChaCha8Rng| (1..n).fold(atom(rng), |acc, _| acc.tensor_product(&atom(rng)));
    let p = product(rng);
    if rng.gen_bool(0.5) {
        p.convolve(&product(rng)).unwrap()
    } else {
        p
    }
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut not_in = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let phi = stable_poly(&mut rng, n);
        let cst = unimodular(&mut rng);
        let psi = phi.build_psi().mul_scalar(cst);
        let (c2, phi2) = decompose_ly(&psi, 1e-9).unwrap();
        // (c, Φ) is determined up to a common sign.
        let sign = if (c2 - cst).norm() < (c2 + cst).norm() { 1.0 } else { -1.0 };
        worst = worst.max((c2 - cst * sign).norm());
        for (a, b) in phi2.coeffs().iter().zip(phi.coeffs()) {
            worst = worst.max((a - b * sign).norm());
        }
        if status(&psi) != Status::In {
            not_in += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && not_in == 0 && elapsed <= Duration::from_secs(60),
        format!("max coefficient error {worst:.2e}, {not_in} not IN, {:.1}s", elapsed.as_secs_f64()),
    )
}

fn supermultiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let opts = SearchOptions::default();
    let mut violations = 0;
    let mut slack = f64::INFINITY;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let (p1, p2) = (random_poly(&mut rng, n), random_poly(&mut rng, n));
        let r1 = inner_radius(&p1, 1e-4, &opts).unwrap();
        let r2 = inner_radius(&p2, 1e-4, &opts).unwrap();
        let r12 = inner_radius(&p1.convolve(&p2).unwrap(), 1e-4, &opts).unwrap();
        let lhs = if r12.infinite { f64::INFINITY } else { r12.r_hi };
        let gap = lhs + 1e-3 - r1.r_lo * r2.r_lo;
        slack = slack.min(gap);
        if gap < 0.0 {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{violations} violations, smallest slack {slack:.3e}"))
}

fn triple_threshold() -> Outcome {
    let mut wrong = Vec::new();
    for (b, want) in [(1.0, Status::In), (2.0, Status::In), (10.0, Status::In), (0.5, Status::Out)] {
        let got = status(&delta_model(3, c(b, 0.0)).unwrap());
        if got != want {
            wrong.push(format!("b={b}: {}", got.as_str()));
        }
    }
    let (_, phi) = decompose_ly(&delta_model(3, c(0.5, 0.0)).unwrap(), 1e-9).unwrap();
    let (modulus, _) = oracle_min_zero(&phi, &OracleOptions::default()).unwrap();
    let target = 1.0 - 1.0 / 2f64.sqrt();
    let close = (modulus - target).abs() <= 2e-2;
    outcome(
        wrong.is_empty() && close,
        format!("statuses {}, witness max-modulus {modulus:.5} (target {target:.5})", if wrong.is_empty() { "ok".into() } else { wrong.join(", ") }),
    )
}

fn quad_threshold() -> Outcome {
    let mut wrong = Vec::new();
    let cases = [(1.0, Status::In), (2.0, Status::In), (3.0, Status::In), (1.2, Status::Out), (1.5, Status::Out), (1.8, Status::Out)];
    for (b, want) in cases {
        let got = status(&delta_model(4, c(b, 0.0)).unwrap());
        if got != want {
            wrong.push(format!("b={b}: {}", got.as_str()));
        }
    }
    let cfg = SweepConfig { refine_steps: 30, radius_tol: None, ..SweepConfig::default() };
    let sweep = sweep_membership(&TemperatureModel::quad(), 0.05, 3.0, 60, &cfg).unwrap();
    let ln2 = 2f64.ln();
    let found: Vec<f64> = sweep.transitions.iter().map(|t| t.beta).collect();
    let located = found.len() == 1 && (found[0] - ln2).abs() <= 1e-3;
    outcome(
        wrong.is_empty() && located,
        format!(
            "statuses {}, transitions at {:?} (ln 2 = {ln2:.5})",
            if wrong.is_empty() { "ok".into() } else { wrong.join(", ") },
            found
        ),
    )
}

fn spiral_alternation() -> Outcome {
    let cfg = SweepConfig { refine_steps: 30, radius_tol: None, ..SweepConfig::default() };
    let sweep = sweep_membership(&TemperatureModel::spiral(), 0.01, 20.0, 400, &cfg).unwrap();
    let changes: Vec<String> = sweep
        .transitions
        .iter()
        .map(|t| format!("{}->{} at {:.6}", t.from.as_str(), t.to.as_str(), t.beta))
        .collect();
    outcome(changes.len() >= 2, format!("{} status changes: [{}]", changes.len(), changes.join(", ")))
}

fn pair_form(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<f64>>, Vec<f64>, C64) {
    let mut w = vec![vec![0.0; n]; n];
    for j in 0..n {
        for k in j + 1..n {
            let v = rng.gen_range(0.0..1.5);
            w[j][k] = v;
            w[k][j] = v;
        }
    }
    let a = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    (w, a, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn high_temperature() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad_pairs = 0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let (w, a, b) = pair_form(&mut rng, n);
        let model = TemperatureModel::pair_form(&w, &a, b).unwrap();
        let accepted = matches!(lykit::leeyang::classify_high_temperature(&model, 1e-9).unwrap(), Classification::Accepted(_));
        let all_in = [0.05, 0.5, 5.0].iter().all(|&beta| status(&temperature_poly(&model, beta).unwrap()) == Status::In);
        if !(accepted && all_in) {
            bad_pairs += 1;
        }
    }

    let mut not_rejected = 0;
    let (mut positive, mut positive_out) = (0, 0);
    for t in 0..50 {
        let n = rng.gen_range(3..=4);
        let (w, a, b) = pair_form(&mut rng, n);
        let base = TemperatureModel::pair_form(&w, &a, b).unwrap();
        let triple = loop {
            let s: usize = rng.gen_range(0..1usize << n);
            if s.count_ones() == 3 {
                break s;
            }
        };
        let size = rng.gen_range(0.5..2.0);
        let real = t % 2 == 0;
        let term = if real { c(size, 0.0) } else { unimodular(&mut rng) * size };
        let entries = (0..1usize << n).map(|x| {
            let e = base.energy(x).unwrap();
            (x, Some(if x & triple == triple { e + term } else { e }))
        });
        let model = TemperatureModel::new(n, entries).unwrap();
        if !matches!(lykit::leeyang::classify_high_temperature(&model, 1e-9).unwrap(), Classification::Rejected(_)) {
            not_rejected += 1;
        }
        if real {
            positive += 1;
            let betas = [0.2, 0.1, 0.05, 0.02, 0.01];
            if betas.iter().any(|&beta| status(&temperature_poly(&model, beta).unwrap()) == Status::Out) {
                positive_out += 1;
            }
        }
    }
    let ratio = positive_out as f64 / positive as f64;
    outcome(
        bad_pairs == 0 && not_rejected == 0 && ratio >= 0.9,
        format!(
            "{bad_pairs} pair-form failures, {not_rejected} triple models accepted, {positive_out}/{positive} positive triples OUT"
        ),
    )
}

fn grace() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut disagreements = 0;
    for t in 0..200 {
        let d = rng.gen_range(1..=5);
        let mut roots: Vec<C64> = (0..d).map(|_| unimodular(&mut rng)).collect();
        let expect = if t < 100 {
            Status::In
        } else {
            roots[0] *= if rng.gen_bool(0.5) { 0.8 } else { 1.25 };
            Status::Out
        };
        let lead = unimodular(&mut rng) * rng.gen_range(0.5..2.0);
        let p = UnivariatePoly::from_roots(lead, &roots);
        if status(&univariate_lift(&p).unwrap()) != expect {
            disagreements += 1;
        }
    }
    outcome(disagreements == 0, format!("{disagreements} disagreements over 200 polynomials"))
}

fn radius_bracket() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let opts = SearchOptions::default();
    let (mut below, mut wide, mut slow) = (0, 0, 0);
    let mut longest = Duration::ZERO;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let phi = random_poly(&mut rng, n);
        let start = Instant::now();
        let r = inner_radius(&phi, 1e-3, &opts).unwrap();
        let elapsed = start.elapsed();
        longest = longest.max(elapsed);
        if elapsed > Duration::from_secs(10) {
            slow += 1;
        }
        if r.width() > 1e-2 {
            wide += 1;
        }
        let (upper, _) = oracle_min_zero(&phi, &OracleOptions::default()).unwrap();
        if upper < r.r_lo {
            below += 1;
        }
    }
    outcome(
        below == 0 && wide == 0 && slow == 0,
        format!("{below} oracle below r_lo, {wide} wide, {slow} slow, longest {:.2}s", longest.as_secs_f64()),
    )
}

fn sigma_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mismatches = 0;
    let mut undecided = 0;
    for t in 0..50 {
        let blocks = rng.gen_range(1..=3);
        let mut m: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=4)).collect();
        while m.iter().sum::<usize>() > 8 {
            m.pop();
        }
        let n = m.len();
        let mut w = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(0.0..1.0);
                w[i][j] = v;
                w[j][i] = v;
            }
        }
        let form = SpinPairForm { w, b: 0.3, residual: 0.0 };
        let len: usize = m.iter().map(|d| d + 1).product();
        let mut energies: Vec<f64> = (0..len)
            .map(|idx| {
                let mut rest = idx;
                let digits: Vec<usize> = m
                    .iter()
                    .map(|d| {
                        let k = rest % (d + 1);
                        rest /= d + 1;
                        k
                    })
                    .collect();
                form.energy(&m, &digits)
            })
            .collect();
        if t % 2 == 1 {
            let k = rng.gen_range(0..len);
            energies[k] += 0.7;
        }
        let beta = rng.gen_range(0.2..2.0);
        let p = temperature_block(&energies, &m, beta).unwrap();
        let direct = is_ly_bm(&p, TOL, &SearchOptions::default()).unwrap().status;
        let lifted = status(&lift_sigma(&p));
        if direct != lifted {
            mismatches += 1;
        } else if direct == Status::BoundaryUndecided {
            undecided += 1;
        }
    }
    outcome(mismatches == 0, format!("{mismatches} mismatches, {undecided} jointly undecided"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("round trip of the self-dual lift", round_trip),
        ("supermultiplicativity of the inner radius", supermultiplicativity),
        ("three-spin interaction threshold", triple_threshold),
        ("four-spin interaction threshold", quad_threshold),
        ("spiral alternation", spiral_alternation),
        ("high-temperature pair form", high_temperature),
        ("circle roots and the symmetric lift", grace),
        ("radius bracket validity", radius_bracket),
        ("block lift consistency", sigma_consistency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        println!(
            "[{}] {}. {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
