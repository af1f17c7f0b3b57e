//! Command-line front end: scene generation, scenario runs, parameter
//! sweeps, and offline prediction scoring.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mcop_core::container;
use mcop_core::grid::SemanticClass;
use mcop_core::metrics::{iou_per_class, miou};
use mcop_core::scenario::{
    apply_sweep_point, effective_scene_params, parse_sweep_point, run_scenario, sweep, sweep_csv,
    ScenarioConfig, SweepAxis, SweepPoint,
};
use mcop_core::scene::generate_scene;

#[derive(Parser)]
#[command(
    name = "mcop",
    about = "Collaborative occupancy simulator: scenes, scenario runs, sweeps, and metrics",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a scenario's ground-truth scene into a container file.
    Gen {
        #[arg(long)]
        config: PathBuf,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output container path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a scenario and print the report; write CSVs and containers with --out.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for report.csv, log.csv, and containers.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the support-mask quality threshold.
        #[arg(long)]
        xi: Option<f64>,
        /// Override the per-agent byte budget ("inf" disables the cap).
        #[arg(long)]
        budget: Option<String>,
        /// Use only the first N agents.
        #[arg(long)]
        uavs: Option<usize>,
        /// Include the free class in mIoU.
        #[arg(long)]
        include_free: bool,
    },
    /// Run the scenario once per value along an axis; emits a CSV table.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// One of: uav_count, xi, theta, budget.
        #[arg(long)]
        axis: String,
        /// Comma-separated values, e.g. "0.6,0.7,0.8,0.9" or "0,4096,inf".
        #[arg(long)]
        values: String,
        /// Output directory for sweep.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        include_free: bool,
    },
    /// Score a prediction container against a ground-truth container.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gt: PathBuf,
        #[arg(long)]
        include_free: bool,
    },
}

enum CliError {
    Config(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Io(m) => m,
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ScenarioConfig, CliError> {
    let text = read_to_string(path)?;
    let mut cfg = ScenarioConfig::from_json(&text).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn ensure_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|e| CliError::Io(format!("creating {}: {e}", path.display())))
}

fn write_grid_container(
    path: &Path,
    grid: &mcop_core::grid::OccupancyGrid,
) -> Result<(), CliError> {
    let mut buf = Vec::new();
    container::write_grid(grid, &mut buf)
        .map_err(|e| CliError::Io(format!("encoding {}: {e}", path.display())))?;
    fs::write(path, buf).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn cmd_gen(config: &Path, seed: Option<u64>, out: &Path) -> Result<(), CliError> {
    let cfg = load_config(config, seed)?;
    let gt = generate_scene(&cfg.grid, &effective_scene_params(&cfg))
        .map_err(|e| CliError::Config(e.to_string()))?;
    write_grid_container(out, &gt)?;
    println!(
        "scene: {}x{}x{} voxels @ {} m, occupied fraction {:.4} -> {}",
        cfg.grid.dims.0,
        cfg.grid.dims.1,
        cfg.grid.dims.2,
        cfg.grid.voxel_size,
        gt.occupied_fraction(),
        out.display()
    );
    Ok(())
}

fn cmd_run(
    config: &Path,
    seed: Option<u64>,
    out: Option<&Path>,
    xi: Option<f64>,
    budget: Option<&str>,
    uavs: Option<usize>,
    include_free: bool,
) -> Result<(), CliError> {
    let mut cfg = load_config(config, seed)?;
    if let Some(xi) = xi {
        cfg = apply_sweep_point(&cfg, SweepAxis::Xi, SweepPoint::Real(xi))
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    if let Some(b) = budget {
        let point =
            parse_sweep_point(SweepAxis::Budget, b).map_err(|e| CliError::Config(e.to_string()))?;
        cfg = apply_sweep_point(&cfg, SweepAxis::Budget, point)
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    if let Some(k) = uavs {
        cfg = apply_sweep_point(&cfg, SweepAxis::UavCount, SweepPoint::Count(k))
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    if include_free {
        cfg.include_free = true;
    }
    let out_dir: Option<PathBuf> = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.output_dir.as_ref().map(PathBuf::from));

    let run = run_scenario(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
    print!("{}", run.report.summary());

    if let Some(dir) = out_dir {
        ensure_dir(&dir)?;
        write_file(&dir.join("report.csv"), &run.report.to_csv())?;
        write_file(&dir.join("log.csv"), &run.log.to_csv())?;
        write_file(&dir.join("config.json"), &cfg.to_json())?;
        write_grid_container(&dir.join("gt.bin"), &run.gt)?;
        for (u, pred) in run.fused_predictions.iter().enumerate() {
            write_grid_container(&dir.join(format!("pred_uav{u}.bin")), pred)?;
        }
        println!("artifacts written to {}", dir.display());
    }
    Ok(())
}

fn cmd_sweep(
    config: &Path,
    seed: Option<u64>,
    axis: &str,
    values: &str,
    out: Option<&Path>,
    include_free: bool,
) -> Result<(), CliError> {
    let mut cfg = load_config(config, seed)?;
    if include_free {
        cfg.include_free = true;
    }
    let axis = SweepAxis::parse(axis).ok_or_else(|| {
        CliError::Config(format!(
            "unknown axis {axis:?}; expected uav_count, xi, theta, or budget"
        ))
    })?;
    let points: Vec<SweepPoint> = values
        .split(',')
        .map(|s| parse_sweep_point(axis, s).map_err(|e| CliError::Config(e.to_string())))
        .collect::<Result<_, _>>()?;
    if points.is_empty() {
        return Err(CliError::Config("no sweep values given".to_string()));
    }
    let rows = sweep(&cfg, axis, &points).map_err(|e| CliError::Config(e.to_string()))?;
    let csv = sweep_csv(axis, &rows);
    print!("{csv}");
    if let Some(dir) = out {
        ensure_dir(dir)?;
        write_file(&dir.join("sweep.csv"), &csv)?;
        println!("table written to {}", dir.join("sweep.csv").display());
    }
    Ok(())
}

fn cmd_eval(pred: &Path, gt: &Path, include_free: bool) -> Result<(), CliError> {
    let read_grid = |path: &Path| -> Result<mcop_core::grid::OccupancyGrid, CliError> {
        let bytes =
            fs::read(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        container::read_grid(&mut bytes.as_slice())
            .map_err(|e| CliError::Io(format!("decoding {}: {e}", path.display())))
    };
    let pred_grid = read_grid(pred)?;
    let gt_grid = read_grid(gt)?;
    if pred_grid.spec().dims != gt_grid.spec().dims {
        return Err(CliError::Config(format!(
            "grid dims differ: prediction {:?} vs ground truth {:?}",
            pred_grid.spec().dims,
            gt_grid.spec().dims
        )));
    }
    let per_class = iou_per_class(&pred_grid, &gt_grid, None);
    for c in SemanticClass::ALL {
        match per_class[c.id() as usize] {
            Some(v) => println!("iou_{}: {:.6}", c.name(), v),
            None => println!("iou_{}: undefined", c.name()),
        }
    }
    let m = miou(&per_class, include_free).map_err(|e| CliError::Config(e.to_string()))?;
    println!("miou: {m:.6}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Gen { config, seed, out } => cmd_gen(config, *seed, out),
        Cmd::Run {
            config,
            seed,
            out,
            xi,
            budget,
            uavs,
            include_free,
        } => cmd_run(
            config,
            *seed,
            out.as_deref(),
            *xi,
            budget.as_deref(),
            *uavs,
            *include_free,
        ),
        Cmd::Sweep {
            config,
            seed,
            axis,
            values,
            out,
            include_free,
        } => cmd_sweep(config, *seed, axis, values, out.as_deref(), *include_free),
        Cmd::Eval {
            pred,
            gt,
            include_free,
        } => cmd_eval(pred, gt, *include_free),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
