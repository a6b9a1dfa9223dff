//! One function per subcommand, each returning the tables to write. Grid points run in
//! parallel and are collected in grid order, so the thread count never changes output.

use rayon::prelude::*;

use esqpt::excited_surfaces::SurfaceModel;
use esqpt::ibm_quantum::{diagonalize, oscillatory_density, SigmaRule};
use esqpt::level_density::{
    detect_features, flow_grid, mc_density_with, slice_seed, DensityGrid, DensityOptions,
    FeatureOptions,
};
use esqpt::stationary_analysis::{
    boundary_extrema, find_stationary_points, spinodal_points, SingularityClass,
};
use esqpt::{ModelParams, Result as CoreResult};

use crate::config::JobConfig;
use crate::error::CliError;
use crate::table::{Cell, Table};

const R0: f64 = std::f64::consts::SQRT_2;

pub fn run(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    match cfg.command.as_str() {
        "phase-diagram" => phase_diagram(cfg),
        "density-cut" => density_cut(cfg),
        "stationary" => stationary(cfg),
        "boundary" => boundary(cfg),
        "spectrum" => spectrum(cfg),
        "flow" => flow(cfg),
        "oscillatory" => oscillatory(cfg),
        "excited-surfaces" => excited_surfaces(cfg),
        "spinodal" => spinodal(cfg),
        other => Err(CliError::Usage(format!("unknown command {other:?}"))),
    }
}

/// Runs `f` on every λ in parallel, keeping grid order.
fn per_lambda<T: Send>(
    cfg: &JobConfig,
    f: impl Fn(usize, ModelParams) -> CoreResult<T> + Sync,
) -> Result<Vec<(f64, T)>, CliError> {
    let lambdas = cfg.lambdas()?;
    let out = lambdas
        .par_iter()
        .enumerate()
        .map(|(i, &l)| Ok((l, f(i, ModelParams::new(cfg.beta0p, l)?)?)))
        .collect::<CoreResult<Vec<_>>>()?;
    Ok(out)
}

fn density_options(cfg: &JobConfig) -> DensityOptions {
    DensityOptions {
        bins: cfg.bins,
        e_min: cfg.e_min,
        e_max: cfg.e_max,
        reference_n: cfg.n,
        ..Default::default()
    }
}

/// Monte-Carlo density of the `i`-th grid point; slice seeds match `phase_diagram`.
fn density(cfg: &JobConfig, i: usize, p: &ModelParams) -> CoreResult<DensityGrid> {
    mc_density_with(p, cfg.samples, slice_seed(cfg.seed, i), &density_options(cfg))
}

fn density_table(name: &str, grids: &[(f64, DensityGrid)]) -> Table {
    let mut t = Table::new(name, &["lambda", "e_center", "rho", "drho_dE", "mc_error"]);
    for (l, g) in grids {
        for (k, c) in g.centers().into_iter().enumerate() {
            t.push(vec![(*l).into(), c.into(), g.rho[k].into(), g.drho_de[k].into(), g.mc_error[k].into()]);
        }
    }
    t
}

fn phase_diagram(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let grids = per_lambda(cfg, |i, p| density(cfg, i, &p))?;
    Ok(vec![density_table("phase-diagram", &grids)])
}

fn density_cut(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let grids = per_lambda(cfg, |i, p| density(cfg, i, &p))?;
    let mut feats = Table::new(
        "density-cut.features",
        &["lambda", "energy", "kind", "significance", "amplitude"],
    );
    for (l, g) in &grids {
        for f in detect_features(g, &FeatureOptions::default()) {
            feats.push(vec![
                (*l).into(),
                f.energy.into(),
                f.kind.as_str().into(),
                f.significance.into(),
                f.amplitude.into(),
            ]);
        }
    }
    Ok(vec![density_table("density-cut", &grids), feats])
}

fn stationary(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let census = per_lambda(cfg, |_, p| find_stationary_points(&p))?;
    let mut t = Table::new(
        "stationary",
        &["lambda", "x", "y", "px", "py", "energy", "r", "branch", "class"],
    );
    for (l, c) in census {
        let mut pts = c.points;
        pts.sort_by(|a, b| {
            a.energy
                .total_cmp(&b.energy)
                .then_with(|| a.location.to_array().partial_cmp(&b.location.to_array()).unwrap())
        });
        for s in pts {
            let v = s.location;
            let class = s.index_r.and_then(SingularityClass::from_index).map(|c| c.as_str());
            t.push(vec![
                l.into(),
                v.x.into(),
                v.y.into(),
                v.px.into(),
                v.py.into(),
                s.energy.into(),
                s.index_r.into(),
                s.branch.as_str().into(),
                class.into(),
            ]);
        }
    }
    Ok(vec![t])
}

fn boundary(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let all = per_lambda(cfg, |_, p| boundary_extrema(&p))?;
    let mut range = Table::new("boundary", &["lambda", "e_min", "e_max"]);
    let mut ext = Table::new(
        "boundary.extrema",
        &["lambda", "x", "y", "px", "py", "energy", "kind", "sigma"],
    );
    for (l, a) in all {
        range.push(vec![l.into(), a.min().into(), a.max().into()]);
        for e in &a.extrema {
            let v = e.location;
            ext.push(vec![
                l.into(),
                v.x.into(),
                v.y.into(),
                v.px.into(),
                v.py.into(),
                e.energy.into(),
                e.kind.as_str().into(),
                Cell::S(e.sigma.to_string()),
            ]);
        }
    }
    Ok(vec![range, ext])
}

fn spectrum(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let spectra = per_lambda(cfg, |_, p| diagonalize(&p, cfg.n))?;
    let mut t = Table::new(
        "spectrum",
        &["lambda", "level_index", "energy", "scaled_energy", "slope", "nd_expect"],
    );
    for (l, s) in spectra {
        let scaled = s.scaled_energies();
        for (i, e) in s.eigenvalues.iter().enumerate() {
            t.push(vec![
                l.into(),
                i.into(),
                (*e).into(),
                scaled[i].into(),
                s.slopes[i].into(),
                s.nd_expectation[i].into(),
            ]);
        }
    }
    Ok(vec![t])
}

fn energy_centers(cfg: &JobConfig) -> Result<Vec<f64>, CliError> {
    if cfg.bins < 1 || !(cfg.e_max > cfg.e_min) {
        return Err(CliError::Core(esqpt::Error::Domain(format!(
            "empty energy grid [{}, {}] with {} bins",
            cfg.e_min, cfg.e_max, cfg.bins
        ))));
    }
    let w = (cfg.e_max - cfg.e_min) / cfg.bins as f64;
    Ok((0..cfg.bins).map(|k| cfg.e_min + (k as f64 + 0.5) * w).collect())
}

fn flow(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let energies = energy_centers(cfg)?;
    let grids = per_lambda(cfg, |_, p| flow_grid(&diagonalize(&p, cfg.n)?, &energies, cfg.width))?;
    let mut t = Table::new("flow", &["lambda", "energy", "rho", "jbar", "phibar"]);
    for (l, g) in grids {
        for k in 0..g.energies.len() {
            t.push(vec![l.into(), g.energies[k].into(), g.rho[k].into(), g.jbar[k].into(), g.phibar[k].into()]);
        }
    }
    Ok(vec![t])
}

fn oscillatory(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let rule = SigmaRule { c: cfg.sigma_c, sigma_max: cfg.sigma_max };
    let all = per_lambda(cfg, |i, p| oscillatory_density(&p, cfg.n, &density(cfg, i, &p)?, rule))?;
    let mut t = Table::new(
        "oscillatory",
        &["lambda", "e_center", "rho_tilde", "rho_quantum", "rho_bar", "sigma"],
    );
    for (l, o) in all {
        for (k, c) in o.centers().into_iter().enumerate() {
            t.push(vec![
                l.into(),
                c.into(),
                o.rho_tilde[k].into(),
                o.rho_quantum[k].into(),
                o.rho_bar[k].into(),
                o.sigma[k].into(),
            ]);
        }
    }
    Ok(vec![t])
}

fn excited_surfaces(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    cfg.check_n_gamma()?;
    if cfg.beta_points < 2 {
        return Err(CliError::Core(esqpt::Error::Domain("beta_points must be at least 2".into())));
    }
    let betas: Vec<f64> = (0..cfg.beta_points)
        .map(|k| R0 * k as f64 / (cfg.beta_points - 1) as f64)
        .collect();
    let all = per_lambda(cfg, |_, p| {
        let m = SurfaceModel::new(&p, cfg.n)?;
        cfg.n_gamma
            .iter()
            .map(|&g| m.excited_surface(g, &betas))
            .collect::<CoreResult<Vec<_>>>()
    })?;
    let mut surf = Table::new("excited-surfaces", &["lambda", "n_gamma", "beta", "energy"]);
    let mut stat = Table::new(
        "excited-surfaces.stationary",
        &["lambda", "n_gamma", "beta_star", "e_star", "kind"],
    );
    for (l, surfaces) in all {
        for s in surfaces {
            for (b, e) in s.beta_grid.iter().zip(&s.energies) {
                surf.push(vec![l.into(), s.n_gamma.into(), (*b).into(), (*e).into()]);
            }
            for p in &s.stationary {
                stat.push(vec![l.into(), s.n_gamma.into(), p.beta.into(), p.energy.into(), p.kind.as_str().into()]);
            }
        }
    }
    Ok(vec![surf, stat])
}

fn spinodal(cfg: &JobConfig) -> Result<Vec<Table>, CliError> {
    let s = spinodal_points(cfg.beta0p)?;
    let mut t = Table::new("spinodal", &["beta0p", "lambda_star", "lambda_star_star"]);
    t.push(vec![s.beta0p.into(), s.lambda_star.into(), s.lambda_star_star.into()]);
    Ok(vec![t])
}
