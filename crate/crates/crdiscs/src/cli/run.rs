//! Implementations of the classify / attach / family commands.

use crate::circle::BoundaryFunction;
use crate::cli::config::ScenarioConfig;
use crate::cli::report::{fmt_f, RunReport};
use crate::cli::{svg, CliError};
use crate::discs::{
    attach_disc, attachment_residual, du_dtheta, exit_vector, solve_bishop, BishopOptions,
    DiscError, DiscGenerator,
};
use crate::families::{
    family_exit_slopes, make_egg_family, make_perturbation, perturbation_slope,
    translation_experiment, DiscRegion, FamilyError, PerturbationTrace, SectorSpec,
    TranslationReport,
};
use crate::hypersurface::{
    GraphHypersurface, GraphJet, HomogeneousPolynomial, HypersurfaceError, PointClass,
    RigidHypersurface,
};
use num_complex::Complex64;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Resolved invocation arguments shared by all commands.
#[derive(Debug, Clone)]
pub struct RunArgs {
    pub config: PathBuf,
    pub out: PathBuf,
    pub grid: Option<usize>,
    pub svg: bool,
}

fn load(args: &RunArgs) -> Result<ScenarioConfig, CliError> {
    ScenarioConfig::load(&args.config).map_err(CliError::Config)
}

fn build_polynomial(cfg: &ScenarioConfig) -> Result<HomogeneousPolynomial, CliError> {
    let terms: Vec<(u32, u32, Complex64)> = cfg
        .polynomial
        .terms
        .iter()
        .map(|&(j, k, re, im)| (j, k, Complex64::new(re, im)))
        .collect();
    HomogeneousPolynomial::from_terms(cfg.polynomial.degree, &terms)
        .map_err(|e| CliError::Config(e.to_string()))
}

fn grid_size(cfg: &ScenarioConfig, args: &RunArgs, default: usize) -> Result<usize, CliError> {
    let g = args.grid.or(cfg.grid).unwrap_or(default);
    if g < 16 || !g.is_power_of_two() {
        return Err(CliError::Config(format!(
            "grid {g} must be a power of two and at least 16"
        )));
    }
    Ok(g)
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn map_disc_err(e: &DiscError) -> CliError {
    match e {
        DiscError::NonContraction { .. } => CliError::Solver(format!("NonContraction: {e}")),
        DiscError::NoConvergence { .. } => CliError::Solver(format!("NoConvergence: {e}")),
        DiscError::NotAnalytic { .. } => CliError::Construction(format!("NotAnalytic: {e}")),
        other => CliError::Config(other.to_string()),
    }
}

fn map_family_err(e: &FamilyError) -> CliError {
    match e {
        FamilyError::SectorOverflow { .. } => CliError::Construction(format!("SectorOverflow: {e}")),
        FamilyError::CalibrationFailure { .. } => {
            CliError::Construction(format!("CalibrationFailure: {e}"))
        }
        FamilyError::SupportTouchesVertex { .. } => {
            CliError::Construction(format!("SupportTouchesVertex: {e}"))
        }
        FamilyError::NoQualifyingIndex { .. } => {
            CliError::Construction(format!("NoQualifyingIndex: {e}"))
        }
        FamilyError::RegionNesting => CliError::Config(e.to_string()),
        FamilyError::InvalidSector(_) => CliError::Config(e.to_string()),
        FamilyError::NotPseudoconvex(_) => CliError::Config(e.to_string()),
        FamilyError::Disc(d) => map_disc_err(d),
        other => CliError::Config(other.to_string()),
    }
}

pub fn cmd_classify(args: &RunArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let cfg = load(args)?;
    let poly = build_polynomial(&cfg)?;
    let m = RigidHypersurface::new(poly);
    let tol = cfg
        .classify
        .as_ref()
        .and_then(|c| c.tol)
        .unwrap_or_else(|| m.default_tol());
    let map = match m.sector_decomposition(tol) {
        Ok(map) => map,
        Err(e @ HypersurfaceError::AmbiguousProfile { .. }) => {
            return Err(CliError::Config(format!("AmbiguousProfile: {e}")))
        }
        Err(e) => return Err(CliError::Config(e.to_string())),
    };

    let mut csv = String::from("theta_lo,theta_hi,label\n");
    for &ray in map.flat_rays() {
        csv.push_str(&format!("{0},{0},ray\n", fmt_f(ray)));
    }
    for s in map.sectors() {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_f(s.theta_lo),
            fmt_f(s.theta_hi),
            s.label
        ));
    }
    write_file(&args.out, "classify.csv", &csv)?;
    if args.svg {
        write_file(&args.out, "classify.svg", &svg::sector_svg(&map))?;
    }

    let mut rep = RunReport::new("classify");
    rep.line(format!(
        "polynomial: degree {} with {} stated terms",
        m.polynomial().degree(),
        cfg.polynomial.terms.len()
    ));
    rep.line(format!("tol: {}", fmt_f(tol)));
    rep.line(format!("flat rays: {}", map.flat_rays().len()));
    rep.line(format!("sectors: {}", map.sectors().len()));
    for s in map.sectors() {
        rep.line(format!(
            "sector [{}, {}]: {}",
            fmt_f(s.theta_lo),
            fmt_f(s.theta_hi),
            s.label
        ));
    }
    let d = m.polynomial().degree() as usize;
    rep.audit(
        "ray count within trig-degree bound",
        map.flat_rays().is_empty() || map.flat_rays().len() <= 2 * (d.saturating_sub(2)).max(1),
    );
    let span: f64 = map
        .sectors()
        .iter()
        .map(|s| s.theta_hi - s.theta_lo)
        .sum();
    rep.audit(
        "sectors partition the circle",
        (span - 2.0 * std::f64::consts::PI).abs() <= 1e-9,
    );
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

fn generator_from_coeffs(
    coeffs: &[[f64; 2]],
    n: usize,
) -> Result<DiscGenerator, CliError> {
    let bf = BoundaryFunction::from_fn(n, |t| {
        let zeta = Complex64::from_polar(1.0, t);
        let mut acc = Complex64::ZERO;
        let mut p = zeta;
        for c in coeffs {
            acc += Complex64::new(c[0], c[1]) * p;
            p *= zeta;
        }
        acc
    })
    .map_err(|e| CliError::Config(e.to_string()))?;
    DiscGenerator::new(bf).map_err(|e| map_disc_err(&e))
}

pub fn cmd_attach(args: &RunArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let cfg = load(args)?;
    let poly = build_polynomial(&cfg)?;
    let attach = cfg
        .attach
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [attach] block".into()))?;
    let n = grid_size(&cfg, args, 1024)?;
    let m = RigidHypersurface::new(poly.clone());
    let z = generator_from_coeffs(&attach.z_coeffs, n)?;

    let opts = BishopOptions {
        tol: attach.tol.unwrap_or(1e-11),
        max_iter: attach.max_iter.unwrap_or(50),
        damping: attach.damping.unwrap_or(1.0),
    };
    let coupling = attach.u_coupling;
    let graph: GraphHypersurface = if coupling == 0.0 {
        m.graph()
    } else {
        let p = poly.clone();
        GraphHypersurface::new(Box::new(move |zz: Complex64, u: f64| {
            let x = zz.re;
            GraphJet {
                value: p.eval(zz) + coupling * u * x * x,
                d_z: p.d_dz(zz) + coupling * u * Complex64::new(x, 0.0),
                d_u: coupling * x * x,
                d_zzbar: p.d_dz_dzbar(zz) + coupling * u / 2.0,
                d_zu: coupling * Complex64::new(x, 0.0),
                d_uu: 0.0,
            }
        }))
        .map_err(|e| CliError::Config(e.to_string()))?
    };

    let use_bishop = coupling != 0.0 || attach.method == "bishop";
    if !use_bishop && attach.method != "closed-form" {
        return Err(CliError::Config(format!(
            "unknown attach method '{}' (expected 'closed-form' or 'bishop')",
            attach.method
        )));
    }
    let mut rep = RunReport::new("attach");
    rep.line(format!("grid: {n}"));
    rep.line(format!(
        "method: {}",
        if use_bishop { "bishop" } else { "closed-form" }
    ));
    let disc = if use_bishop {
        let sol = solve_bishop(&graph, &z, attach.c, &opts).map_err(|e| map_disc_err(&e))?;
        rep.line(format!("iterations: {}", sol.iterations));
        rep.line(format!("negative_energy: {}", fmt_f(sol.negative_energy)));
        rep.line(format!("damping_used: {}", fmt_f(sol.damping_used)));
        sol.disc
    } else {
        attach_disc(&m, &z, attach.c).map_err(|e| map_disc_err(&e))?
    };

    let mut csv = String::from("theta,re_z,im_z,u,v\n");
    for (j, (zj, wj)) in disc
        .z()
        .boundary()
        .samples()
        .iter()
        .zip(disc.w().samples())
        .enumerate()
    {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f(disc.w().theta(j)),
            fmt_f(zj.re),
            fmt_f(zj.im),
            fmt_f(wj.re),
            fmt_f(wj.im)
        ));
    }
    write_file(&args.out, "attach.csv", &csv)?;
    if args.svg {
        let pts: Vec<(f64, f64)> = disc
            .z()
            .boundary()
            .samples()
            .iter()
            .map(|s| (s.re, s.im))
            .collect();
        write_file(&args.out, "attach.svg", &svg::curve_svg(&pts, "disc boundary"))?;
    }

    let residual = attachment_residual(&disc, &graph);
    let (e1, e2) = exit_vector(&disc);
    rep.line(format!("residual: {}", fmt_f(residual)));
    rep.line(format!(
        "exit_vector: ({}, {}) , ({}, {})",
        fmt_f(e1.re),
        fmt_f(e1.im),
        fmt_f(e2.re),
        fmt_f(e2.im)
    ));
    rep.line(format!("du_dtheta: {}", fmt_f(du_dtheta(&disc))));
    rep.audit(
        "attachment residual within tolerance",
        residual <= if use_bishop { 10.0 * opts.tol } else { 1e-10 },
    );
    rep.audit(
        "Re W(1) matches c",
        (disc.w().value_at_one().re - attach.c).abs() <= 1e-10,
    );
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}

struct FamilyOutputs {
    traces: Vec<Option<PerturbationTrace>>,
    translation: TranslationReport,
    slopes: Vec<f64>,
    epsilon0: f64,
    degenerate: bool,
}

fn family_csv(out: &FamilyOutputs) -> String {
    let mut csv = String::from("n,abs_c_n,slope_n,bound,diff_n,pass\n");
    for (i, row) in out.translation.rows.iter().enumerate() {
        let (slope, bound, pass) = match &out.traces[i] {
            Some(t) => (
                fmt_f(t.slope),
                fmt_f(t.bound),
                (t.bound_holds && t.route_agreement() <= 1e-5).to_string(),
            ),
            None => ("0".into(), String::new(), String::new()),
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.n,
            fmt_f(row.c_n.norm()),
            slope,
            bound,
            fmt_f(row.diff_n),
            pass
        ));
    }
    csv
}

pub fn cmd_family(args: &RunArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let cfg = load(args)?;
    let poly = build_polynomial(&cfg)?;
    let fam_cfg = cfg
        .family
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [family] block".into()))?;
    let n_grid = grid_size(&cfg, args, 2048)?;
    let m = RigidHypersurface::new(poly);

    let bis = 0.5 * (fam_cfg.theta_lo + fam_cfg.theta_hi);
    let q = Complex64::from_polar(fam_cfg.q_radius, bis);
    let sector = SectorSpec::new(fam_cfg.theta_lo, fam_cfg.theta_hi, q)
        .map_err(|e| map_family_err(&e))?;
    // precondition: the chosen sector must be pseudoconvex for M
    let class = m
        .classify_point(q, m.default_tol())
        .map_err(|e| CliError::Config(e.to_string()))?;
    if class != PointClass::StronglyPseudoconvex {
        return Err(CliError::Config(format!(
            "sector anchor is not strongly pseudoconvex for this hypersurface (class {class:?})"
        )));
    }

    let family = make_egg_family(&sector, fam_cfg.n_max, fam_cfg.beta, n_grid)
        .map_err(|e| map_family_err(&e))?;

    let mut rep = RunReport::new("family");
    rep.line(format!("grid: {n_grid}"));
    rep.line(format!(
        "sector: [{}, {}] anchor |q| = {}",
        fmt_f(fam_cfg.theta_lo),
        fmt_f(fam_cfg.theta_hi),
        fmt_f(fam_cfg.q_radius)
    ));
    rep.line(format!(
        "beta: {} n_max: {} eps: {}",
        fmt_f(fam_cfg.beta),
        fam_cfg.n_max,
        fmt_f(fam_cfg.eps)
    ));

    let degenerate = fam_cfg.eps == 0.0;
    let tau = make_perturbation(
        DiscRegion::new(q, fam_cfg.inner_factor * fam_cfg.q_radius),
        DiscRegion::new(q, fam_cfg.outer_factor * fam_cfg.q_radius),
        fam_cfg.eps,
    )
    .map_err(|e| map_family_err(&e))?;

    let mut traces: Vec<Option<PerturbationTrace>> = Vec::new();
    if degenerate {
        rep.line("perturbation: degenerate perturbation (eps = 0)".to_string());
        traces.resize(family.len(), None);
    } else {
        rep.line(format!("perturbation floor: {}", fmt_f(tau.floor())));
        for n in 1..=family.len() {
            let t = perturbation_slope(&family, &tau, n).map_err(|e| map_family_err(&e))?;
            rep.line(format!(
                "n {}: slope {} bound {} route_agreement {}",
                n,
                fmt_f(t.slope),
                fmt_f(t.bound),
                fmt_f(t.route_agreement())
            ));
            traces.push(Some(t));
        }
    }

    let exit = family_exit_slopes(&m, &family, fam_cfg.c).map_err(|e| map_family_err(&e))?;
    rep.line(format!("epsilon0 (empirical slope floor): {}", fmt_f(exit.epsilon0)));

    // translation experiment; on NoQualifyingIndex the report is still
    // produced and written before the error is surfaced
    let (translation, qualify_err) = match translation_experiment(&m, &family, exit.epsilon0) {
        Ok(r) => (r, None),
        Err(FamilyError::NoQualifyingIndex { target, report }) => {
            (*report, Some(CliError::Construction(format!(
                "NoQualifyingIndex: no family index reaches slope-difference target {target:.6e}"
            ))))
        }
        Err(e) => return Err(map_family_err(&e)),
    };
    match translation.n0 {
        Some(n0) => rep.line(format!("selected n0: {n0}")),
        None => rep.line("selected n0: none".to_string()),
    }
    rep.line(format!("fitted K*C: {}", fmt_f(translation.fitted_kc)));

    let outputs = FamilyOutputs {
        traces,
        translation,
        slopes: exit.slopes,
        epsilon0: exit.epsilon0,
        degenerate,
    };
    write_file(&args.out, "family.csv", &family_csv(&outputs))?;
    if args.svg {
        let bound = outputs.traces.iter().flatten().next().map(|t| t.bound);
        let series: Vec<f64> = match outputs.traces.iter().flatten().next() {
            Some(_) => outputs
                .traces
                .iter()
                .map(|t| t.as_ref().map(|t| t.slope).unwrap_or(0.0))
                .collect(),
            None => outputs.slopes.clone(),
        };
        write_file(
            &args.out,
            "family.svg",
            &svg::series_svg(&series, bound, "slope vs n"),
        )?;
    }

    if let Some(e) = qualify_err {
        return Err(e);
    }

    if !outputs.degenerate {
        rep.audit(
            "perturbation slopes below the uniform negative bound",
            outputs
                .traces
                .iter()
                .flatten()
                .all(|t| t.bound_holds && t.slope <= t.bound),
        );
        rep.audit(
            "dual-route slope agreement within 1e-5",
            outputs
                .traces
                .iter()
                .flatten()
                .all(|t| t.route_agreement() <= 1e-5),
        );
    }
    rep.audit("exit slopes uniformly nonzero", outputs.epsilon0 > 0.0);
    rep.audit(
        "translation differences shrink with n",
        outputs
            .translation
            .rows
            .windows(2)
            .skip(2)
            .all(|w| w[1].diff_n <= w[0].diff_n),
    );
    rep.wall_ms = start.elapsed().as_millis();
    Ok(rep)
}
