use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use spectracone_cli::cmd_plot_data;
use spectracone_core::cones::{Cone, HRep};
use spectracone_core::perron::{build_vandermonde, is_rhc, PerronContext, Relation};
use spectracone_core::ratmath::{frac, parse_rational, Rational, RationalMatrix, SpectralVector};
use spectracone_core::transforms::{apply, predicted_effect, Transform};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const THREE_BY_THREE: &str = "1 1 0; 1 -1/2 1; 1 -1/2 -1";
const UPPER_TRIANGULAR: &str = "1 1; 0 -1";
const TENTH_SCALED: &str = "1 1/10; 1 -1/10";
const NEGATIVE: &str = "-1 -1; -1 0";

fn ctx(text: &str) -> PerronContext {
    PerronContext::new(RationalMatrix::parse(text).unwrap()).unwrap()
}

fn vectors(list: &[&[i64]]) -> BTreeSet<SpectralVector> {
    list.iter().map(|r| SpectralVector::from_ints(r)).collect()
}

fn rays_of(cone: &Cone) -> BTreeSet<SpectralVector> {
    cone.extremal_rays().rays().iter().cloned().collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn random_entry(rng: &mut StdRng) -> Rational {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_invertible(rng: &mut StdRng, n: usize) -> RationalMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| random_entry(rng)).collect()).collect();
        let m = RationalMatrix::from_rows(rows).unwrap();
        if m.invert().is_ok() {
            return m;
        }
    }
}

fn golden_rays() -> Outcome {
    let start = Instant::now();
    let c = ctx(THREE_BY_THREE);
    let got = rays_of(c.spectracone());
    within(start, Duration::from_secs(1))?;
    let want = vectors(&[&[1, 1, 1], &[2, -1, 1], &[2, -1, -1], &[1, 1, -1]]);
    ensure(got == want, || format!("rays {got:?}"))?;
    Ok(format!("4 rays in {:?}", start.elapsed()))
}

fn golden_relations() -> Outcome {
    let start = Instant::now();
    let a = ctx(UPPER_TRIANGULAR).classify().map_err(|e| e.to_string())?;
    ensure(a.relation == Relation::SpectraconeProperSubset, || {
        format!("{:?}", a.relation)
    })?;
    let b = ctx(TENTH_SCALED).classify().map_err(|e| e.to_string())?;
    ensure(b.relation == Relation::RowconeProperSubset, || {
        format!("{:?}", b.relation)
    })?;
    let b_rays: BTreeSet<_> = b.spectracone_rays.iter().cloned().collect();
    ensure(b_rays == vectors(&[&[1, 1], &[1, -1]]), || format!("{b_rays:?}"))?;
    let c = ctx(NEGATIVE).classify().map_err(|e| e.to_string())?;
    ensure(c.relation == Relation::IncomparableTrivialIntersection, || {
        format!("{:?}", c.relation)
    })?;
    let c_rays: BTreeSet<_> = c.row_cone_rays.iter().cloned().collect();
    ensure(c_rays == vectors(&[&[-1, -1], &[-1, 0]]), || format!("{c_rays:?}"))?;
    let d = ctx(THREE_BY_THREE).classify().map_err(|e| e.to_string())?;
    ensure(d.relation == Relation::IncomparableIntersecting, || {
        format!("{:?}", d.relation)
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("4 matrices in {:?}", start.elapsed()))
}

fn shared_spectracone() -> Outcome {
    let a = ctx("1 1; 1 0");
    let b = ctx(UPPER_TRIANGULAR);
    ensure(a.spectracone().equals_as_sets(b.spectracone()).unwrap(), || {
        format!("{:?} vs {:?}", rays_of(a.spectracone()), rays_of(b.spectracone()))
    })?;
    Ok("equal as sets".into())
}

fn rhc_versus_containment() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(31);
    let mut holds = 0;
    let cases = 120;
    for k in 0..cases {
        let s = random_invertible(&mut rng, 2 + k % 3);
        let ctx = PerronContext::new(s.clone()).unwrap();
        let rhc = is_rhc(&s).unwrap().holds;
        let inside = ctx.row_cone().is_subset(ctx.spectracone()).unwrap();
        ensure(rhc == inside, || {
            format!(
                "disagreement on {:?}: rhc {rhc}, containment {inside}",
                s.to_string_rows()
            )
        })?;
        holds += rhc as usize;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{cases} matrices, {holds} RHC, 0 disagreements in {:?}",
        start.elapsed()
    ))
}

fn all_ones_criteria() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(32);
    let cases = 120;
    let mut equal = 0;
    for k in 0..cases {
        let n = 2 + k % 3;
        let s = loop {
            let mut rows: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| random_entry(&mut rng)).collect())
                .collect();
            rows[rng.gen_range(0..n)] = vec![frac(1, 1); n];
            let m = RationalMatrix::from_rows(rows).unwrap();
            if m.invert().is_ok() {
                break m;
            }
        };
        let ctx = PerronContext::new(s.clone()).unwrap();
        let (c, rc) = (ctx.spectracone(), ctx.row_cone());
        let c_in_rc = c.is_subset(rc).unwrap();
        let is_equal = c_in_rc && rc.is_subset(c).unwrap();
        let rhc = is_rhc(&s).unwrap().holds;
        let rows_realizable = (0..n).all(|i| ctx.row_spectrum_test(i).unwrap());
        let inv = ctx.inverse();
        let extremal_test = c
            .extremal_rays()
            .rays()
            .iter()
            .all(|y| inv.vec_mul(y).unwrap().is_nonnegative());
        let name = || format!("{:?}", s.to_string_rows());
        ensure(c_in_rc, || format!("all-ones row but C not inside RC: {}", name()))?;
        ensure(is_equal == rhc, || {
            format!("equality {is_equal} vs RHC {rhc}: {}", name())
        })?;
        ensure(is_equal == rows_realizable, || {
            format!("equality {is_equal} vs row test {rows_realizable}: {}", name())
        })?;
        ensure(is_equal == (rhc && extremal_test), || {
            format!("equality vs RHC and extremal test: {}", name())
        })?;
        let report = ctx.classify().map_err(|e| e.to_string())?;
        ensure(report.has_all_ones_row, || {
            format!("all-ones row not detected: {}", name())
        })?;
        if let Some(checks) = report.cross_checks {
            ensure(checks.all_agree(), || format!("{checks:?}"))?;
        }
        equal += is_equal as usize;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{cases} matrices, {equal} with C = RC, 0 disagreements in {:?}",
        start.elapsed()
    ))
}

fn vandermonde_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(33);
    let mut seen = BTreeSet::new();
    while seen.len() < 25 {
        let mut draw = || {
            let q = rng.gen_range(1..=9);
            frac(rng.gen_range(0..q), q)
        };
        let (a, b) = (draw(), draw());
        if a != b {
            seen.insert((a, b));
        }
    }
    let mut failures = Vec::new();
    let mut boundary_matches = true;
    for (a, b) in &seen {
        let x = SpectralVector::new(vec![frac(1, 1), -a.clone(), -b.clone()]);
        let s = build_vandermonde(&x).map_err(|e| format!("{x}: {e}"))?;
        let rhc = is_rhc(&s).unwrap().holds;
        let ctx = PerronContext::new(s).unwrap();
        let rows = (0..3).all(|i| ctx.row_spectrum_test(i).unwrap());
        let trace_nonnegative = a + b <= frac(1, 1);
        boundary_matches &= rhc == trace_nonnegative && rows == trace_nonnegative;
        if !(rhc && rows) {
            failures.push(format!("{x} (RHC {rhc}, rows realizable {rows})"));
        }
    }
    within(start, Duration::from_secs(10))?;
    ensure(failures.is_empty(), || {
        format!(
            "{} of 25 spectra fail, e.g. {}; verdicts {} the trace condition a + b <= 1 on every sample",
            failures.len(),
            failures[0],
            if boundary_matches { "match" } else { "do not match" }
        )
    })?;
    Ok(format!("25 spectra in {:?}", start.elapsed()))
}

fn det_and_adjugate(cols: &[Vec<i128>]) -> (i128, Vec<Vec<i128>>) {
    let n = cols.len();
    let a = |i: usize, j: usize| cols[j][i];
    match n {
        1 => (a(0, 0), vec![vec![1]]),
        2 => (
            a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
            vec![vec![a(1, 1), -a(0, 1)], vec![-a(1, 0), a(0, 0)]],
        ),
        _ => {
            let minor = |r: usize, c: usize| {
                let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
                let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
                a(rows[0], cs[0]) * a(rows[1], cs[1]) - a(rows[0], cs[1]) * a(rows[1], cs[0])
            };
            let sign = |r: usize, c: usize| if (r + c).is_multiple_of(2) { 1 } else { -1 };
            let det = (0..3).map(|c| sign(0, c) * a(0, c) * minor(0, c)).sum();
            let adj = (0..3)
                .map(|i| (0..3).map(|j| sign(j, i) * minor(j, i)).collect())
                .collect();
            (det, adj)
        }
    }
}

/// Carathéodory: `p` is in the conic hull of `rays` iff it is a nonnegative
/// combination of some linearly independent subset of size `dim`. The cones
/// sampled here are full-dimensional, so such subsets exist.
struct HullOracle {
    bases: Vec<(i128, Vec<Vec<i128>>)>,
}

impl HullOracle {
    fn new(dim: usize, rays: &[SpectralVector]) -> Self {
        let rays: Vec<Vec<i128>> = rays
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer().to_i128().unwrap()).collect())
            .collect();
        let mut bases = Vec::new();
        let idx: Vec<usize> = (0..rays.len()).collect();
        for subset in subsets(&idx, dim) {
            let cols: Vec<Vec<i128>> = subset.iter().map(|&i| rays[i].clone()).collect();
            let (det, adj) = det_and_adjugate(&cols);
            if det != 0 {
                bases.push((det, adj));
            }
        }
        HullOracle { bases }
    }

    fn certifies(&self, p: &[i128]) -> bool {
        if p.iter().all(|x| *x == 0) {
            return true;
        }
        self.bases.iter().any(|(det, adj)| {
            adj.iter().all(|row| {
                let c: i128 = row.iter().zip(p).map(|(a, b)| a * b).sum();
                c == 0 || (c > 0) == (*det > 0)
            })
        })
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k - 1);
    out.iter_mut().for_each(|s| s.insert(0, items[0]));
    out.extend(subsets(&items[1..], k));
    out
}

fn rank(rows: &[Vec<i64>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| frac(x, 1)).collect()).collect());
    m.map(|m| m.rank()).unwrap_or(dim)
}

fn double_description_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(34);
    let mut cones = 0;
    let mut points = 0usize;
    while cones < 24 {
        let n = 2 + cones % 2;
        let centre: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        if centre.iter().all(|x| *x == 0) {
            continue;
        }
        let count = rng.gen_range(n..=9);
        let rows: Vec<Vec<i64>> = (0..count)
            .map(|_| loop {
                let mut r: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
                let d: i64 = r.iter().zip(&centre).map(|(a, b)| a * b).sum();
                if d < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                if d != 0 {
                    break r;
                }
            })
            .collect();
        let hrep = HRep::new(n, rows.iter().map(|r| SpectralVector::from_ints(r)).collect()).unwrap();
        let Ok(cone) = Cone::from_halfspaces(hrep) else {
            continue;
        };
        cones += 1;
        let rays = cone.extremal_rays().rays();
        for ray in rays {
            let r: Vec<i64> = ray.iter().map(|x| x.to_integer().to_i64().unwrap()).collect();
            let tight: Vec<Vec<i64>> = rows
                .iter()
                .filter(|a| a.iter().zip(&r).map(|(x, y)| x * y).sum::<i64>() == 0)
                .cloned()
                .collect();
            let infeasible = rows
                .iter()
                .any(|a| a.iter().zip(&r).map(|(x, y)| x * y).sum::<i64>() < 0);
            ensure(!infeasible, || format!("ray {ray} violates the H-rep {rows:?}"))?;
            ensure(rank(&tight, n) == n - 1, || {
                format!("ray {ray} is not extremal for {rows:?}")
            })?;
        }
        let oracle = HullOracle::new(n, rays);
        let mut accepted = 0;
        while accepted < 10_000 {
            let denom = rng.gen_range(1..=5i64);
            let scale = rng.gen_range(0..=4i64);
            let p: Vec<i64> = (0..n)
                .map(|i| scale * centre[i] * denom + rng.gen_range(-12..=12))
                .collect();
            if rows
                .iter()
                .any(|a| a.iter().zip(&p).map(|(x, y)| x * y).sum::<i64>() < 0)
            {
                continue;
            }
            accepted += 1;
            // p / denom is the sampled rational point; cone membership is scale invariant
            let point: Vec<i128> = p.iter().map(|&x| x as i128).collect();
            let rational = SpectralVector::new(p.iter().map(|&x| frac(x, denom)).collect());
            ensure(oracle.certifies(&point), || {
                format!("{rational} feasible for {rows:?} but outside hull of {rays:?}")
            })?;
        }
        points += accepted;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "{cones} cones, {points} points certified in {:?}",
        start.elapsed()
    ))
}

fn transform_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(35);
    let per_kind = 50;
    for kind in 0..4 {
        for k in 0..per_kind {
            let n = 2 + k % 2;
            let s = random_invertible(&mut rng, n);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let t = match kind {
                0 => Transform::PermuteRows(perm),
                1 => Transform::ScaleRowsPositive(SpectralVector::new(
                    (0..n)
                        .map(|_| frac(rng.gen_range(1..=5), rng.gen_range(1..=5)))
                        .collect(),
                )),
                2 => Transform::PermuteCols(perm),
                _ => Transform::ScaleColsInvertible(SpectralVector::new(
                    (0..n)
                        .map(|_| {
                            let v = frac(rng.gen_range(1..=5), rng.gen_range(1..=5));
                            if rng.gen_bool(0.5) {
                                -v
                            } else {
                                v
                            }
                        })
                        .collect(),
                )),
            };
            let ctx = PerronContext::new(s.clone()).unwrap();
            let (c, rc) = predicted_effect(&t, &ctx).map_err(|e| e.to_string())?;
            let fresh = PerronContext::new(apply(&t, &s).unwrap()).unwrap();
            let name = || format!("{t} on {:?}", s.to_string_rows());
            ensure(c.equals_as_sets(fresh.spectracone()).unwrap(), || {
                format!("spectracone mismatch: {}", name())
            })?;
            ensure(rc.equals_as_sets(fresh.row_cone()).unwrap(), || {
                format!("row cone mismatch: {}", name())
            })?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("4 kinds x {per_kind} cases in {:?}", start.elapsed()))
}

fn realization_suite() -> Outcome {
    let mut count = 0;
    for text in [THREE_BY_THREE, UPPER_TRIANGULAR, TENTH_SCALED, NEGATIVE] {
        let c = ctx(text);
        for ray in c.spectracone().extremal_rays().rays() {
            let r = c.realize(ray).map_err(|e| format!("{text}, {ray}: {e}"))?;
            ensure(r.matrix.is_nonnegative(), || format!("{text}, {ray}: negative entry"))?;
            for k in 0..c.n() {
                let s_k = c.matrix().column(k);
                let image = r.matrix.mul_vec(&s_k).unwrap();
                ensure(image == s_k.scale(&ray[k]), || {
                    format!("{text}, {ray}: column {k} is not an eigenvector")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} rays realized"))
}

fn plot_data() -> Outcome {
    let value = cmd_plot_data(THREE_BY_THREE, "1=1").map_err(|e| e.to_string())?;
    let read = |key: &str| -> BTreeSet<Vec<Rational>> {
        value[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| {
                v.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| parse_rational(x.as_str().unwrap()).unwrap())
                    .collect()
            })
            .collect()
    };
    let pts = |list: &[[&str; 3]]| -> BTreeSet<Vec<Rational>> {
        list.iter()
            .map(|p| p.iter().map(|x| parse_rational(x).unwrap()).collect())
            .collect()
    };
    let c = read("spectracone");
    let rc = read("row_cone");
    let want_c = pts(&[
        ["1", "1", "1"],
        ["1", "-.5", ".5"],
        ["1", "-.5", "-.5"],
        ["1", "1", "-1"],
    ]);
    let want_rc = pts(&[["1", "1", "0"], ["1", "-.5", "1"], ["1", "-.5", "-1"]]);
    ensure(c == want_c, || format!("spectracone polygon {c:?}"))?;
    ensure(rc == want_rc, || format!("row cone polygon {rc:?}"))?;
    let cones = ctx(THREE_BY_THREE);
    for (set, cone) in [(&c, cones.spectracone()), (&rc, cones.row_cone())] {
        for v in set {
            let x = SpectralVector::new(v.clone());
            ensure(x[0] == frac(1, 1) && cone.contains(&x).unwrap(), || {
                format!("{x} off the slice or cone")
            })?;
            let on_boundary = cone
                .hrep()
                .rows()
                .iter()
                .any(|a| !a.is_zero() && a.dot(&x).unwrap().is_zero());
            ensure(on_boundary, || format!("{x} not on the boundary"))?;
        }
    }
    Ok("7 vertices exact".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden spectracone rays of the 3x3 similarity", golden_rays),
        ("golden classifications", golden_relations),
        ("distinct matrices with one spectracone", shared_spectracone),
        ("RHC iff row cone inside spectracone", rhc_versus_containment),
        ("all-ones row criteria agree with geometry", all_ones_criteria),
        ("Vandermonde matrices of Suleimanova spectra", vandermonde_suite),
        (
            "double description against a Caratheodory oracle",
            double_description_oracle,
        ),
        ("predicted transform effects", transform_suite),
        ("realization of every extremal ray", realization_suite),
        ("cross-section plot data", plot_data),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
