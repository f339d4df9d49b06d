//! The verification suites. Each returns its rows in a fixed order.

use gps_core::kernels::{gps_cauchy_kernel, hemisphere_measure, slice_kernel, weighted_kernel_k};
use gps_core::ops::*;
use gps_core::stem::*;
use gps_core::{Direction, Multivector, SplitPoint};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::csv::ResultRow;
use crate::error::{Result, VerifyError};
use crate::sampling::{catalogue, find, Entry, Sampler};

pub const SUITES: [&str; 9] =
    ["algebra", "representation", "kernel", "cif", "pompeiu", "teodorescu", "derivatives", "plemelj", "hodge"];

/// Tolerance for levels coarser than the finest. It only catches blow-ups;
/// convergence itself is checked by the step-ratio rows.
const COARSE_BOUND: f64 = 10.0;

/// Minimum slice distance between kernel source and target. The central
/// difference truncation grows like h²/d².
const KERNEL_SEPARATION: f64 = 0.5;

/// Largest allowed ratio between the errors of consecutive levels.
const STEP_RATIO: f64 = 1.01;

/// Runs one suite, or every suite for `all`.
pub fn run_suite(name: &str, cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    match name {
        "all" => {
            let mut rows = Vec::new();
            for s in SUITES {
                rows.extend(run_suite(s, cfg)?);
            }
            Ok(rows)
        }
        "algebra" => algebra(cfg),
        "representation" => representation(cfg),
        "kernel" => kernel(cfg),
        "cif" => cif(cfg),
        "pompeiu" => pompeiu(cfg),
        "teodorescu" => teodorescu(cfg),
        "derivatives" => derivatives(cfg),
        "plemelj" => plemelj(cfg),
        "hodge" => hodge(cfg),
        other => Err(VerifyError::UnknownSuite(other.into())),
    }
}

fn sampler(cfg: &ExperimentConfig, suite: &str) -> Sampler {
    let stream = SUITES.iter().position(|s| *s == suite).expect("known suite") as u64 + 1;
    Sampler::new(cfg.seed, stream, cfg.signature(), cfg.mirrored_domain())
}

fn context(cfg: &ExperimentConfig, level: usize) -> Result<OperatorContext> {
    OperatorContext::new(cfg.signature(), cfg.mirrored_domain(), level).map_err(VerifyError::numeric("context"))
}

fn level_tol(cfg: &ExperimentConfig, level: usize, tol: f64) -> f64 {
    if level == cfg.finest() {
        tol
    } else {
        COARSE_BOUND
    }
}

fn par_map<I: Sync, T: Send>(items: &[I], f: impl Fn(&I) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    items.par_iter().map(f).collect()
}

fn max(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

/// Errors relative to the largest reference value.
fn sup_rel(errors: impl IntoIterator<Item = f64>, scales: impl IntoIterator<Item = f64>) -> f64 {
    max(errors) / max(scales).max(f64::MIN_POSITIVE)
}

/// Step-ratio and (optionally) empirical-order rows for one error sequence.
/// Pairs where both errors are below `floor` are converged and skipped.
fn convergence_rows(
    suite: &str,
    case: &str,
    levels: &[usize],
    errors: &[f64],
    floor: f64,
    min_order: Option<f64>,
) -> Vec<ResultRow> {
    if levels.len() < 2 {
        return Vec::new();
    }
    let last = *levels.last().expect("nonempty");
    let mut ratio: f64 = 0.0;
    let mut order = f64::INFINITY;
    for (w, l) in errors.windows(2).zip(levels.windows(2)) {
        if w[0] <= floor && w[1] <= floor {
            continue;
        }
        ratio = ratio.max(w[1] / w[0].max(f64::MIN_POSITIVE));
        if w[0] > floor {
            let rate = (w[0] / w[1].max(floor)).log2() / (l[1] - l[0]) as f64;
            order = order.min(rate);
        }
    }
    let mut rows = vec![ResultRow::upper(suite, case, last, "max_step_ratio", ratio, STEP_RATIO)];
    if let Some(p) = min_order {
        if order.is_finite() {
            rows.push(ResultRow::lower(suite, case, last, "min_empirical_order", order, p));
        }
    }
    rows
}

fn algebra(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "algebra";
    let sig = cfg.signature();
    let mut smp = sampler(cfg, S);
    let n = sig.n();
    let mut anti: f64 = 0.0;
    for i in 1..=n {
        for j in 1..=n {
            let ei = Multivector::generator(sig, i).map_err(VerifyError::numeric("generator"))?;
            let ej = Multivector::generator(sig, j).map_err(VerifyError::numeric("generator"))?;
            let mut s = &(&ei * &ej) + &(&ej * &ei);
            if i == j {
                s += &Multivector::scalar(sig, 2.0);
            }
            anti = anti.max(s.max_abs());
        }
    }
    let count = if sig.dim() <= 256 { 1000 } else { 100 };
    let triples: Vec<_> = (0..count).map(|_| (smp.multivector(), smp.multivector(), smp.multivector())).collect();
    let paravectors: Vec<Multivector> = (0..count)
        .map(|_| {
            let v: Vec<f64> = (0..=n).map(|_| smp.uniform(-1.0, 1.0)).collect();
            Multivector::paravector(sig, &v).expect("finite")
        })
        .collect();
    let laws = par_map(&triples, |(a, b, c)| {
        let ab = a * b;
        let scale = 1.0 + ab.max_abs();
        let assoc = (&ab * c).distance(&(a * &(b * c))) / (1.0 + (&ab * c).max_abs());
        let conj = ab.conj().distance(&(&b.conj() * &a.conj())) / scale;
        let rev = ab.rev().distance(&(&b.rev() * &a.rev())) / scale;
        let sq: f64 = a.coeffs().iter().map(|x| x * x).sum();
        let norm = ((a * &a.conj()).scalar_part() - sq).abs() / (1.0 + sq);
        Ok([assoc, conj, rev, norm])
    })?;
    let inverse = par_map(&paravectors, |x| {
        if x.norm() < 1e-3 {
            return Ok(0.0);
        }
        let inv = x.paravector_inverse().map_err(VerifyError::numeric("paravector inverse"))?;
        Ok((x * &inv).distance(&Multivector::scalar(sig, 1.0)))
    })?;
    let col = |k: usize| max(laws.iter().map(|l| l[k]));
    Ok(vec![
        ResultRow::upper(S, "generators", 0, "anticommutator_max_error", anti, 1e-12),
        ResultRow::upper(S, "associativity", 0, "max_rel_error", col(0), 1e-12),
        ResultRow::upper(S, "conjugation_anti_automorphism", 0, "max_rel_error", col(1), 1e-12),
        ResultRow::upper(S, "reversion_anti_automorphism", 0, "max_rel_error", col(2), 1e-12),
        ResultRow::upper(S, "norm_identity", 0, "max_rel_error", col(3), 1e-12),
        ResultRow::upper(S, "paravector_inverse", 0, "max_error", max(inverse), 1e-12),
    ])
}

fn distinct_directions(smp: &mut Sampler) -> (Direction, Direction) {
    loop {
        let (a, b) = (smp.direction(), smp.direction());
        if (a.vector() - b.vector()).norm() > 0.2 {
            return (a, b);
        }
    }
}

fn representation(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "representation";
    let mut smp = sampler(cfg, S);
    let entries = catalogue(&mut smp);
    let samples: Vec<_> = (0..200)
        .map(|_| {
            let x = smp.generic();
            let eta = smp.direction();
            let (w1, w2) = distinct_directions(&mut smp);
            (x, eta, w1, w2)
        })
        .collect();
    let mut rows = Vec::new();
    for e in &entries {
        let f = Induced(e.stem.clone());
        let errs = par_map(&samples, |(x, eta, w1, w2)| {
            let fx = f.eval(x);
            let a = representation_residual(&f, x, eta).map_err(VerifyError::numeric(e.name))?;
            let b = representation_eval(&f, x, w1, w2).map_err(VerifyError::numeric(e.name))?.distance(&fx);
            Ok((a, b, fx.norm()))
        })?;
        let scale = || errs.iter().map(|t| t.2);
        rows.push(ResultRow::upper(S, e.name, 0, "eta_form_max_rel_residual", sup_rel(errs.iter().map(|t| t.0), scale()), 1e-12));
        rows.push(ResultRow::upper(S, e.name, 0, "two_direction_max_rel_residual", sup_rel(errs.iter().map(|t| t.1), scale()), 1e-12));
    }
    Ok(rows)
}

fn kernel(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "kernel";
    let sig = cfg.signature();
    let p = sig.p();
    let mut smp = sampler(cfg, S);
    let mut pairs = Vec::new();
    while pairs.len() < 50 {
        let (y, x) = (smp.generic(), smp.generic());
        let (sy, sx) = (y.slice_coords(), x.slice_coords());
        let d: f64 = sy.iter().zip(&sx).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        if d > KERNEL_SEPARATION {
            pairs.push((y, x));
        }
    }
    let errs = par_map(&pairs, |(y, x)| {
        let num = |e| VerifyError::numeric("kernel")(e);
        let k = gps_cauchy_kernel(y, x).map_err(num)?;
        let res = vartheta_of(|z| gps_cauchy_kernel(y, z), x, 1e-4).map_err(num)?;
        let omega = y.direction().map_err(num)?.clone();
        let sy = y.slice_coords();
        // Normalization of K.
        let kk = weighted_kernel_k(y, x).map_err(num)?;
        let norm = (kk * (hemisphere_measure(sig.q()) * y.r().powi(sig.q() as i32 - 1))).distance(&k) / k.norm();
        // Representation extension of the slice kernel.
        let on_slice = RawSlice::new(sig, |s: &[f64], w: &Direction| {
            let sign = w.dot(&omega).signum();
            let mut d: Vec<f64> = sy.iter().zip(s).map(|(a, b)| a - b).collect();
            d[p + 1] = sy[p + 1] - sign * s[p + 1];
            slice_kernel(&d, &omega)
        });
        let swap = representation_eval(&on_slice, x, &omega, &omega.neg()).map_err(num)?.distance(&k) / k.norm();
        // Collapse on the source slice.
        let xs = SplitPoint::on_slice(x.xp(), x.r(), &omega).map_err(num)?;
        let d: Vec<f64> = sy.iter().zip(xs.slice_coords().iter()).map(|(a, b)| a - b).collect();
        let e = slice_kernel(&d, &omega);
        let collapse = gps_cauchy_kernel(y, &xs).map_err(num)?.distance(&e) / e.norm();
        Ok([res.norm() / k.norm(), norm, swap, collapse])
    })?;
    let col = |k: usize| max(errs.iter().map(|e| e[k]));
    Ok(vec![
        ResultRow::upper(S, "global_kernel", 0, "vartheta_max_rel_residual", col(0), 1e-6),
        ResultRow::upper(S, "weighted_kernel", 0, "normalization_max_rel_error", col(1), 1e-14),
        ResultRow::upper(S, "representation_extension", 0, "max_rel_error", col(2), 1e-13),
        ResultRow::upper(S, "slice_collapse", 0, "max_rel_error", col(3), 1e-14),
    ])
}

fn cif(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "cif";
    let mut smp = sampler(cfg, S);
    let entries = catalogue(&mut smp);
    let mono: Vec<&Entry> = entries.iter().filter(|e| e.monogenic).collect();
    let inside: Vec<SplitPoint> = (0..20).map(|_| smp.interior(0.05)).collect();
    let outside: Vec<SplitPoint> = (0..5).map(|_| smp.exterior(0.1, 1.0)).collect();
    let mut rows = Vec::new();
    let mut history = vec![Vec::new(); mono.len()];
    for &level in &cfg.levels {
        let ctx = context(cfg, level)?;
        for (e, hist) in mono.iter().zip(history.iter_mut()) {
            let f = Induced(e.stem.clone());
            let r = par_map(&inside, |x| {
                let fx = f.eval(x);
                Ok((cauchy_boundary_f(&ctx, &f, x).map_err(VerifyError::numeric(e.name))?.distance(&fx), fx.norm()))
            })?;
            let out = par_map(&outside, |x| Ok(cauchy_boundary_f(&ctx, &f, x).map_err(VerifyError::numeric(e.name))?.norm()))?;
            let err = sup_rel(r.iter().map(|t| t.0), r.iter().map(|t| t.1));
            let ext = sup_rel(out, r.iter().map(|t| t.1));
            hist.push(err);
            rows.push(ResultRow::upper(S, e.name, level, "sup_rel_error", err, level_tol(cfg, level, 1e-3)));
            rows.push(ResultRow::upper(S, &format!("{}/exterior", e.name), level, "sup_rel_value", ext, level_tol(cfg, level, 1e-3)));
        }
    }
    for (e, hist) in mono.iter().zip(&history) {
        rows.extend(convergence_rows(S, e.name, &cfg.levels, hist, 1e-13, Some(2.0)));
    }
    Ok(rows)
}

fn pompeiu(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "pompeiu";
    let mut smp = sampler(cfg, S);
    let entries = catalogue(&mut smp);
    let points: Vec<SplitPoint> = (0..20).map(|_| smp.interior(0.05)).collect();
    let cases: Vec<&Entry> = ["x0_squared", "quadratic", "linear"].iter().map(|n| find(&entries, n)).collect();
    let mut rows = Vec::new();
    let mut history = vec![Vec::new(); cases.len()];
    for &level in &cfg.levels {
        let ctx = context(cfg, level)?;
        for (e, hist) in cases.iter().zip(history.iter_mut()) {
            let f = Induced(e.stem.clone());
            let df = Induced(DiracStem::new(e.stem.clone(), cfg.fd_step));
            let r = par_map(&points, |x| {
                Ok((cauchy_pompeiu_residual(&ctx, &f, &df, x).map_err(VerifyError::numeric(e.name))?, f.eval(x).norm()))
            })?;
            let err = sup_rel(r.iter().map(|t| t.0), r.iter().map(|t| t.1));
            hist.push(err);
            rows.push(ResultRow::upper(S, e.name, level, "sup_rel_residual", err, level_tol(cfg, level, 1e-2)));
        }
    }
    // Monotone from level 3 on.
    let from = cfg.levels.iter().position(|&l| l >= 3).unwrap_or(cfg.levels.len());
    for (e, hist) in cases.iter().zip(&history) {
        rows.extend(convergence_rows(S, e.name, &cfg.levels[from..], &hist[from..], 1e-13, None));
    }
    Ok(rows)
}

fn teodorescu(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "teodorescu";
    let mut smp = sampler(cfg, S);
    let entries = catalogue(&mut smp);
    let points: Vec<(SplitPoint, Direction)> = (0..10).map(|_| (smp.interior(0.1), smp.direction())).collect();
    let cases: Vec<&Entry> = ["x0_squared", "quadratic", "linear"].iter().map(|n| find(&entries, n)).collect();
    let mut rows = Vec::new();
    // Per case: slice vs 2f, slice vs f, full vs f.
    let mut history = vec![[Vec::new(), Vec::new(), Vec::new()]; cases.len()];
    let mut paths = Vec::new();
    for &level in &cfg.levels {
        let ctx = context(cfg, level)?;
        for (e, hist) in cases.iter().zip(history.iter_mut()) {
            let f = Induced(e.stem.clone());
            let r = par_map(&points, |(x, w)| {
                let num = VerifyError::numeric(e.name);
                let fx = f.eval(x);
                let slice = vartheta_teodorescu_slice(&ctx, &f, w, x).map_err(&num)?;
                let full = vartheta_teodorescu_full(&ctx, &f, x).map_err(num)?;
                Ok([slice.distance(&(&fx * 2.0)), slice.distance(&fx), full.distance(&fx), fx.norm()])
            })?;
            let errs: Vec<f64> = (0..3).map(|k| sup_rel(r.iter().map(|t| t[k]), r.iter().map(|t| t[3] * if k == 0 { 2.0 } else { 1.0 }))).collect();
            for (k, (case, metric)) in [("slice", "sup_rel_error_vs_2f"), ("slice", "sup_rel_error_vs_f"), ("full", "sup_rel_error_vs_f")].iter().enumerate() {
                hist[k].push(errs[k]);
                rows.push(ResultRow::upper(S, &format!("{}/{case}", e.name), level, metric, errs[k], level_tol(cfg, level, 5e-2)));
            }
        }
        let f = Induced(find(&entries, "quadratic").stem.clone());
        let d = par_map(&points, |(x, _)| {
            let num = VerifyError::numeric("paths");
            let avg = teodorescu_full(&ctx, &f, x).map_err(&num)?;
            let direct = teodorescu_full_direct(&ctx, &f, x).map_err(num)?;
            Ok(avg.distance(&direct) / avg.norm())
        })?;
        paths.push(ResultRow::upper(S, "quadratic/paths", level, "max_rel_difference_direct_vs_average", max(d), 1e-10));
    }
    rows.extend(paths);
    for (e, hist) in cases.iter().zip(&history) {
        rows.extend(convergence_rows(S, &format!("{}/slice_vs_2f", e.name), &cfg.levels, &hist[0], 1e-6, None));
        rows.extend(convergence_rows(S, &format!("{}/slice_vs_f", e.name), &cfg.levels, &hist[1], 1e-6, None));
        rows.extend(convergence_rows(S, &format!("{}/full_vs_f", e.name), &cfg.levels, &hist[2], 1e-6, None));
    }
    Ok(rows)
}

fn central_difference(g: impl Fn(&SplitPoint) -> gps_core::Result<Multivector>, x: &SplitPoint, k: usize, h: f64) -> gps_core::Result<Multivector> {
    Ok((g(&x.shifted(k, h)?)? - g(&x.shifted(k, -h)?)?) * (0.5 / h))
}

fn derivatives(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "derivatives";
    let mut smp = sampler(cfg, S);
    let entries = catalogue(&mut smp);
    let n = cfg.signature().n();
    let p = cfg.p;
    let points: Vec<(SplitPoint, Direction)> = (0..20).map(|_| (smp.interior(0.1), smp.direction())).collect();
    let cases: Vec<&Entry> = ["quadratic", "x0_squared"].iter().map(|name| find(&entries, name)).collect();
    let mut rows = Vec::new();
    for &level in &cfg.levels {
        let ctx = context(cfg, level)?;
        let h = ctx.fd_step();
        for e in &cases {
            let f = Induced(e.stem.clone());
            let r = par_map(&points, |(x, w)| {
                let num = VerifyError::numeric(e.name);
                let vi = volume_integrals(&ctx, &f, x, true).map_err(&num)?;
                let (mut slice_err, mut full_err, mut scale) = (0.0f64, 0.0f64, 0.0f64);
                let mut angular = Multivector::zero(ctx.signature());
                for k in 0..=n {
                    let split = slice_derivative_split(&ctx, &vi, x, w, k).map_err(&num)?;
                    let fd = central_difference(|y| teodorescu_slice(&ctx, &f, w, y), x, k, h).map_err(&num)?;
                    slice_err = slice_err.max(split.total().distance(&fd));
                    scale = scale.max(fd.norm());
                    if k > p {
                        angular.add_scaled(x.xq()[k - p - 1], &split.angular);
                    }
                    let full = teodorescu_full_derivative(&ctx, &f, x, k).map_err(&num)?.total();
                    let fd = central_difference(|y| teodorescu_full(&ctx, &f, y), x, k, h).map_err(&num)?;
                    full_err = full_err.max(full.distance(&fd));
                    scale = scale.max(fd.norm());
                }
                Ok([slice_err, full_err, angular.norm(), scale])
            })?;
            let scale = || r.iter().map(|t| t[3]);
            let tol = level_tol(cfg, level, 1e-3);
            rows.push(ResultRow::upper(S, &format!("{}/slice", e.name), level, "sup_rel_error_vs_fd", sup_rel(r.iter().map(|t| t[0]), scale()), tol));
            rows.push(ResultRow::upper(S, &format!("{}/full", e.name), level, "sup_rel_error_vs_fd", sup_rel(r.iter().map(|t| t[1]), scale()), tol));
            rows.push(ResultRow::upper(S, &format!("{}/euler", e.name), level, "sup_rel_angular_sum", sup_rel(r.iter().map(|t| t[2]), scale()), 1e-12));
        }
    }
    Ok(rows)
}

fn plemelj(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    const S: &str = "plemelj";
    let mut smp = sampler(cfg, S);
    let entries = catalogue(&mut smp);
    let points: Vec<SplitPoint> = (0..6).map(|_| smp.boundary()).collect();
    let lin = Induced(find(&entries, "linear").stem.clone());
    let quad = Induced(find(&entries, "quadratic").stem.clone());
    let steps = default_path_steps(cfg.domain.rho);
    let mut rows = Vec::new();
    let mut jump_hist = vec![Vec::new(); 4];
    let mut fix_hist = Vec::new();
    let mut gap_hist = Vec::new();
    for &level in &cfg.levels {
        let ctx = context(cfg, level)?;
        let tol = level_tol(cfg, level, 5e-2);
        for (i, (name, u)) in [("linear", &lin), ("quadratic", &quad)].into_iter().enumerate() {
            let r = par_map(&points, |x| {
                let lim = plemelj_jump(&ctx, u, x, &steps).map_err(VerifyError::numeric(name))?;
                let (a, b) = lim.defects();
                Ok((a, b, lim.value.norm()))
            })?;
            let scale = || r.iter().map(|t| t.2);
            let (di, de) = (sup_rel(r.iter().map(|t| t.0), scale()), sup_rel(r.iter().map(|t| t.1), scale()));
            jump_hist[2 * i].push(di);
            jump_hist[2 * i + 1].push(de);
            rows.push(ResultRow::upper(S, &format!("{name}/interior_limit"), level, "sup_rel_defect", di, tol));
            rows.push(ResultRow::upper(S, &format!("{name}/exterior_limit"), level, "sup_rel_defect", de, tol));
        }
        let eps = cfg.pv_factor * ctx.quadrature().spacing();
        let excision = context(cfg, level)?
            .with_pv_method(PvMethod::Excision { epsilon: eps })
            .map_err(VerifyError::numeric("excision"))?;
        let r = par_map(&points, |x| {
            let num = VerifyError::numeric("projections");
            let ux = lin.eval(x);
            let su = plemelj_s(&ctx, &lin, x).map_err(&num)?;
            let qu = plemelj_q(&ctx, &lin, x).map_err(&num)?;
            let uq = quad.eval(x);
            let sum = plemelj_p(&ctx, &quad, x).map_err(&num)? + plemelj_q(&ctx, &quad, x).map_err(&num)?;
            let ex = plemelj_s(&excision, &lin, x).map_err(&num)?;
            Ok([su.distance(&ux), qu.norm(), sum.distance(&uq), ex.distance(&su), ux.norm(), uq.norm(), su.norm()])
        })?;
        let col = |k: usize| r.iter().map(move |t| t[k]);
        let fix = sup_rel(col(0), col(4));
        fix_hist.push(fix);
        rows.push(ResultRow::upper(S, "linear/s_fixes_trace", level, "sup_rel_error", fix, tol));
        rows.push(ResultRow::upper(S, "linear/q_annihilates_trace", level, "sup_rel_value", sup_rel(col(1), col(4)), tol));
        rows.push(ResultRow::upper(S, "quadratic/p_plus_q", level, "sup_rel_error", sup_rel(col(2), col(5)), 1e-15));
        let gap = sup_rel(col(3), col(6));
        gap_hist.push(gap);
        rows.push(ResultRow::upper(S, "linear/excision_vs_polar", level, "sup_rel_difference", gap, level_tol(cfg, level, 0.5)));
    }

    let comp_level = cfg.finest().min(4);
    let ctx = context(cfg, comp_level)?;
    let comp_points = &points[..4];
    let pu = PlemeljImage::new(&ctx, &quad, PlemeljKind::P);
    let qu = PlemeljImage::new(&ctx, &quad, PlemeljKind::Q);
    let su = PlemeljImage::new(&ctx, &quad, PlemeljKind::S);
    let r = par_map(comp_points, |x| {
        let num = VerifyError::numeric("compositions");
        let u = quad.eval(x);
        let p1 = pu.eval(x);
        let q1 = qu.eval(x);
        Ok([
            plemelj_s(&ctx, &su, x).map_err(&num)?.distance(&u),
            plemelj_p(&ctx, &pu, x).map_err(&num)?.distance(&p1),
            plemelj_q(&ctx, &qu, x).map_err(&num)?.distance(&q1),
            plemelj_p(&ctx, &qu, x).map_err(&num)?.norm(),
            plemelj_q(&ctx, &pu, x).map_err(&num)?.norm(),
            u.norm(),
        ])
    })?;
    let scale = || r.iter().map(|t| t[5]);
    for (k, case) in ["s_squared_minus_identity", "p_squared_minus_p", "q_squared_minus_q", "pq", "qp"].iter().enumerate() {
        let v = sup_rel(r.iter().map(|t| t[k]), scale());
        rows.push(ResultRow::upper(S, &format!("quadratic/{case}"), comp_level, "sup_rel_error", v, 5e-2));
    }

    for (k, case) in ["linear/interior_limit", "linear/exterior_limit", "quadratic/interior_limit", "quadratic/exterior_limit"].iter().enumerate() {
        rows.extend(convergence_rows(S, case, &cfg.levels, &jump_hist[k], 1e-12, None));
    }
    rows.extend(convergence_rows(S, "linear/s_fixes_trace", &cfg.levels, &fix_hist, 1e-12, None));
    rows.extend(convergence_rows(S, "linear/excision_vs_polar", &cfg.levels, &gap_hist, 1e-12, None));
    Ok(rows)
}

fn hodge(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    use gps_core::catalogue::{Bumped, LinearMonogenic, Quadratic};
    const S: &str = "hodge";
    let mut smp = sampler(cfg, S);
    let domain = cfg.mirrored_domain();
    let g1 = Bumped::new(Quadratic { a: smp.multivector(), b: smp.multivector(), c: smp.multivector() }, &domain, 3)
        .map_err(VerifyError::numeric("g"))?;
    let g2 = Bumped::new(LinearMonogenic(smp.multivector()), &domain, 2).map_err(VerifyError::numeric("g"))?;
    let outside: Vec<SplitPoint> = (0..5).map(|_| smp.exterior(0.2, 1.0)).collect();
    let inside: Vec<SplitPoint> = (0..5).map(|_| smp.interior(0.2)).collect();
    let gs: [(&str, &dyn StemFunction); 2] = [("bumped_quadratic", &g1), ("bumped_linear", &g2)];
    let mut rows = Vec::new();
    let mut history = vec![Vec::new(); 2];
    let mut controls = Vec::new();
    for &level in &cfg.levels {
        let ctx = context(cfg, level)?;
        for ((name, g), hist) in gs.iter().zip(history.iter_mut()) {
            let res = par_map(&outside, |x| hodge_orthogonality_residual(&ctx, x, g, false).map_err(VerifyError::numeric(*name)))?;
            let worst = max(res);
            hist.push(worst);
            rows.push(ResultRow::upper(S, name, level, "max_residual", worst, level_tol(cfg, level, 1e-3)));
            if level == cfg.finest() {
                let ctl = par_map(&inside, |x| hodge_orthogonality_residual(&ctx, x, g, true).map_err(VerifyError::numeric(*name)))?;
                let least = ctl.iter().copied().fold(f64::INFINITY, f64::min);
                controls.push(ResultRow::lower(S, &format!("{name}/negative_control"), level, "min_control_over_max_residual", least / worst.max(f64::MIN_POSITIVE), 10.0));
            }
        }
    }
    rows.extend(controls);
    for ((name, _), hist) in gs.iter().zip(&history) {
        rows.extend(convergence_rows(S, name, &cfg.levels, hist, 1e-12, None));
    }
    Ok(rows)
}
