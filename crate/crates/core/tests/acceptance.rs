//! Desk-scale acceptance run. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use tdpair::bridge::{check_master_identity, master_operator};
use tdpair::error::Operator;
use tdpair::linalg::nilpotent_exp_scaled;
use tdpair::split::compute_split;
use tdpair::system::{compute_relation_parameters, verify_pair};
use tdpair::{run_suite, CheckId, Error, Field, Matrix, Rejection, SuiteOptions, SystemReport};

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label(field: Field, d: usize, p: &str) -> String {
    format!("{field} d={d} p={p}")
}

fn grid_reports(field_filter: impl Fn(Field) -> bool) -> Result<Vec<(String, SystemReport)>, String> {
    grid()
        .into_iter()
        .filter(|(f, _, _)| field_filter(*f))
        .map(|(f, d, p)| {
            let (sys, _) = krawtchouk(f, d, p);
            run_suite(sys, &SuiteOptions::default())
                .map(|r| (label(f, d, p), r))
                .map_err(|e| format!("{}: {e}", label(f, d, p)))
        })
        .collect()
}

fn all_zero(reports: &[(String, SystemReport)]) -> Outcome {
    let mut count = 0;
    for (name, r) in reports {
        for o in &r.outcomes {
            ensure(o.applicable, || format!("{name}: {} not applicable", o.check))?;
            ensure(o.error.is_none(), || format!("{name}: {} error {:?}", o.check, o.error))?;
            if let Some(bad) = o.residuals.iter().find(|r| !r.is_zero) {
                return Err(format!("{name}: {} {} at {:?}", o.check, bad.identity, bad.index));
            }
            count += o.residuals.len();
        }
    }
    Ok(format!("{} systems, {count} residuals, all zero", reports.len()))
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let reports = grid_reports(|f| f == Field::Rational)?;
    let msg = all_zero(&reports)?;
    Ok(format!("{msg} in {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion2() -> Outcome {
    all_zero(&grid_reports(|f| f != Field::Rational)?)
}

fn criterion3() -> Outcome {
    for (f, d, p) in grid() {
        let (sys, _) = krawtchouk(f, d, p);
        let got = compute_relation_parameters(&sys, None).map_err(|e| e.to_string())?;
        let want = [2, 0, 0, 4, 4].map(|n| f.int(n));
        let have = [got.beta, got.gamma, got.gammastar, got.rho, got.rhostar];
        ensure(have == want, || format!("{}: {:?}", label(f, d, p), have.map(|s| s.to_string())))?;
    }
    Ok(format!("{} systems give (2, 0, 0, 4, 4)", grid().len()))
}

fn criterion4() -> Outcome {
    let mut cells = 0;
    for (f, d, p) in grid() {
        let (sys, _) = krawtchouk(f, d, p);
        let opts = SuiteOptions { checks: [CheckId::RankTables].into(), beta: None };
        let r = run_suite(sys, &opts).map_err(|e| e.to_string())?;
        for e in r.ranks() {
            ensure(e.matches() && e.rank == 1, || format!("{}: {} ({}, {}) rank {}", label(f, d, p), e.map, e.i, e.j, e.rank))?;
            cells += 1;
        }
        ensure(r.ranks().count() == 8 * (d + 1) * (d + 2) / 2, || format!("{}: wrong table size", label(f, d, p)))?;
    }
    Ok(format!("{cells} rank cells equal 1"))
}

fn criterion5() -> Outcome {
    for (f, d, p) in grid() {
        let (sys, _) = krawtchouk(f, d, p);
        let split = compute_split(&sys).map_err(|e| e.to_string())?;
        let rfl = tdpair::rfl::compute_rfl(&sys).map_err(|e| e.to_string())?;
        let exp = nilpotent_exp_scaled(&split.call, &f.ratio(1, 2)).map_err(|e| e.to_string())?;
        ensure(split.psi == exp, || format!("{}: Psi differs from exp(L/2)", label(f, d, p)))?;
        ensure(&exp * &rfl.r == &split.calr * &exp, || format!("{}: exp(L/2)R differs", label(f, d, p)))?;
    }
    Ok("Psi = exp(𝓛/2) and exp(𝓛/2)R = 𝓡exp(𝓛/2) on every grid system".into())
}

// Plain rational matrices for the independent evaluator.
type Dense = Vec<Vec<BigRational>>;

fn dense(m: &Matrix) -> Dense {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.as_rational().unwrap().clone()).collect()).collect()
}

fn mul(x: &Dense, y: &Dense) -> Dense {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
                .collect()
        })
        .collect()
}

fn add(x: &Dense, y: &Dense) -> Dense {
    x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect()
}

fn scale(x: &Dense, c: &BigRational) -> Dense {
    x.iter().map(|r| r.iter().map(|a| a * c).collect()).collect()
}

fn power(x: &Dense, k: usize) -> Dense {
    let n = x.len();
    let mut out: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }).collect())
        .collect();
    for _ in 0..k {
        out = mul(&out, x);
    }
    out
}

fn criterion6() -> Outcome {
    let (sys, _) = krawtchouk(q(), 2, "1/2");
    let split = compute_split(&sys).map_err(|e| e.to_string())?;
    let d = sys.d();
    let n = sys.dim();
    let th: Vec<BigRational> = sys.theta().iter().map(|s| s.as_rational().unwrap().clone()).collect();
    let ts: Vec<BigRational> = sys.thetastar().iter().map(|s| s.as_rational().unwrap().clone()).collect();
    let a = dense(sys.a());
    let es: Vec<Dense> = sys.dual_idempotents().iter().map(dense).collect();
    let f: Vec<Dense> = split.f.iter().map(dense).collect();
    let r = dense(&split.calr);
    let l = dense(&split.call);
    // (θ*_i − θ*_{i+1})⋯(θ*_i − θ*_s) and (θ*_j − θ*_s)⋯(θ*_j − θ*_{j−1}).
    let lower = |i: usize, s: usize| ((i + 1)..=s).fold(BigRational::from_integer(1.into()), |acc, k| acc * (&ts[i] - &ts[k]));
    let upper = |s: usize, j: usize| (s..j).fold(BigRational::from_integer(1.into()), |acc, k| acc * (&ts[j] - &ts[k]));
    let zero: Dense = vec![vec![BigRational::zero(); n]; n];
    let checked = check_master_identity(&sys, &split).map_err(|e| e.to_string())?;
    for i in 0..=d {
        for j in 0..=d {
            let mut s = zero.clone();
            for t in i..=j {
                let term = mul(&power(&l, t - i), &power(&l, j - t));
                s = add(&s, &scale(&term, &(&th[t] / (lower(i, t) * upper(t, j)))));
            }
            for t in 0..=j {
                let u = t + 1;
                if u < i || u > d {
                    continue;
                }
                let term = mul(&mul(&power(&l, u - i), &r), &power(&l, j - t));
                s = add(&s, &scale(&term, &(BigRational::from_integer(1.into()) / (lower(i, u) * upper(t, j)))));
            }
            ensure(s == dense(&master_operator(&sys, &split, i, j)), || format!("S({i},{j}) differs"))?;
            let lhs = mul(&mul(&mul(&f[i], &es[i]), &a), &es[j]);
            let rhs = mul(&mul(&s, &f[j]), &es[j]);
            let oracle_zero = lhs == rhs;
            let entry = checked.iter().find(|c| c.index == [i, j]).ok_or(format!("no residual for ({i},{j})"))?;
            ensure(oracle_zero && entry.is_zero, || format!("({i},{j}): oracle {oracle_zero}, check {}", entry.is_zero))?;
        }
    }
    Ok("independent evaluation agrees on all 9 (i, j) cells".into())
}

fn criterion7() -> Outcome {
    let wanted = ["φ_{j−2} − (β+1)φ_{j−1}", "a_i − θ_i", "(θ*_{i−1} − θ*_i)²x_i/φ_i"];
    let mut seen = 0;
    for (f, d, p) in grid() {
        let (sys, data) = krawtchouk(f, d, p);
        let opts = SuiteOptions { checks: [CheckId::Leonard].into(), beta: None };
        let r = run_suite(sys, &opts).map_err(|e| e.to_string())?;
        let o = r.outcome(CheckId::Leonard).unwrap();
        ensure(o.error.is_none(), || format!("{}: {:?}", label(f, d, p), o.error))?;
        for res in o.residuals.iter().filter(|r| wanted.iter().any(|w| r.identity.starts_with(w))) {
            ensure(res.is_zero, || format!("{}: {} at {:?}", label(f, d, p), res.identity, res.index))?;
            seen += 1;
        }
        let pp = f.parse(p).unwrap();
        let one = f.one();
        let di = d as i64;
        for i in 0..=di {
            let iu = i as usize;
            ensure(data.a[iu] == &(&one - &(&f.int(2) * &pp)) * &f.int(di - 2 * i), || format!("{}: a_{i}", label(f, d, p)))?;
            if i < di {
                ensure(data.b[iu] == &(&f.int(2) * &pp) * &f.int(di - i), || format!("{}: b_{i}", label(f, d, p)))?;
            }
            if i >= 1 {
                ensure(data.c[iu - 1] == &(&f.int(2) * &(&one - &pp)) * &f.int(i), || format!("{}: c_{i}", label(f, d, p)))?;
                let x = &(&(&f.int(4) * &pp) * &(&one - &pp)) * &f.int(i * (di - i + 1));
                ensure(data.x[iu - 1] == x, || format!("{}: x_{i}", label(f, d, p)))?;
                let phi = &(&f.int(4) * &pp) * &f.int(i * (i - di - 1));
                ensure(data.phi[iu - 1] == phi, || format!("{}: φ_{i}", label(f, d, p)))?;
            }
        }
    }
    Ok(format!("{seen} recurrence residuals zero; closed forms match on {} systems", grid().len()))
}

fn criterion8() -> Outcome {
    let f = q();
    let dg = Matrix::from_ints(f, &[[1, 0], [0, 2]]);
    let got = verify_pair(&dg, &dg);
    let Err(Error::Rejected(r)) = &got else {
        return Err(format!("common eigenvector pair: {got:?}"));
    };
    ensure(r.reason() == "reducible", || format!("reason {}", r.reason()))?;
    let a = Matrix::from_ints(f, &[[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
    let full = Matrix::from_ints(f, &[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
    let got = verify_pair(&a, &full);
    ensure(got == Err(Error::Rejected(Rejection::NoStandardOrdering(Operator::A))), || format!("{got:?}"))?;
    Ok("\"reducible\" and \"no standard ordering\"".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Krawtchouk grid over Q", criterion1),
        ("Krawtchouk grid over GF(101)", criterion2),
        ("relation parameters", criterion3),
        ("rank tables", criterion4),
        ("exponential identities", criterion5),
        ("master identity oracle", criterion6),
        ("scalar recurrences and closed forms", criterion7),
        ("negative controls", criterion8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
