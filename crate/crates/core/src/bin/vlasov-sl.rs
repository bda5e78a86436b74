use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vlasov_sl::convergence::{converge_space, converge_time, SpacePreset, TimePreset};
use vlasov_sl::diagnostics::{
    detect_growth_window, e_l2_series, fit_rate, GROWTH_HALF_SPAN, GROWTH_SLOPE_TOL, LANDAU_FIT_WINDOW,
};
use vlasov_sl::output::emit_outputs;
use vlasov_sl::solver::{advect_to, run, AdvectState1D, Quadrature};
use vlasov_sl::{Error, InterpOrder, Problem, Result, RunConfig, TracerOrder};

#[derive(Parser, Debug)]
#[command(
    name = "vlasov-sl",
    version,
    about = "Semi-Lagrangian WENO Vlasov-Poisson solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one benchmark and write diagnostics, snapshots and a manifest.
    Run(RunArgs),
    /// Spatial convergence study on the two-stream problem.
    ConvergeSpace(Common),
    /// Temporal convergence study on the two-stream problem.
    ConvergeTime(Common),
    /// Conservative 1D advection of a sine wave over one period.
    Advect1d(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Key-value config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// two_stream, weak_landau, strong_landau, symmetric_two_stream
    #[arg(long)]
    problem: Option<Problem>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    nv: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    /// Tracer order.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    order: Option<u8>,
    /// WENO interpolation order.
    #[arg(long, value_parser = ["2", "4", "6"])]
    interp: Option<String>,
    #[arg(long)]
    tfinal: Option<f64>,
    /// Lower-order interpolation in the prediction stages.
    #[arg(long)]
    reduced_prediction: bool,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reduced presets for the convergence studies.
    #[arg(long)]
    fast: bool,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// Diagnostics cadence in time units; 0 records every step.
    #[arg(long)]
    diag_every: Option<f64>,
    /// Comma-separated snapshot times.
    #[arg(long, value_delimiter = ',')]
    snapshots: Vec<f64>,
}

impl Common {
    fn config(&self, default_problem: Problem) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::new(default_problem),
        };
        if let Some(p) = self.problem {
            cfg.set("problem", p.name())?;
        }
        if let Some(n) = self.nx {
            cfg.nx = n;
        }
        if let Some(n) = self.nv {
            cfg.nv = n;
        }
        if let Some(c) = self.cfl {
            cfg.cfl = c;
        }
        if let Some(o) = self.order {
            cfg.order = TracerOrder::from_u8(o)?;
        }
        if let Some(i) = &self.interp {
            cfg.interp = InterpOrder::from_u8(i.parse().expect("validated by clap"))?;
        }
        if let Some(t) = self.tfinal {
            cfg.t_final = t;
        }
        if self.reduced_prediction {
            cfg.reduced_prediction = true;
        }
        if let Some(out) = &self.out {
            cfg.out_dir = out.clone();
        }
        Ok(cfg)
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
    }
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let mut cfg = args.common.config(Problem::TwoStream)?;
    if let Some(d) = args.diag_every {
        cfg.diag_every = d;
    }
    if !args.snapshots.is_empty() {
        cfg.snapshot_times = args.snapshots.clone();
    }
    let out = run(&cfg)?;
    let paths = emit_outputs(&out, &cfg)?;
    let last = out.records.last().expect("at least the initial record");
    println!(
        "{}: {} steps to t = {}",
        cfg.problem.problem, out.final_state.step_count, out.final_state.t
    );
    println!(
        "relative deviation: l1 {:.3e}  l2 {:.3e}  energy {:.3e}  entropy {:.3e}",
        last.rel_dev_l1, last.rel_dev_l2, last.rel_dev_energy, last.rel_dev_entropy
    );
    let series = e_l2_series(&out.records);
    let window = match cfg.problem.problem {
        Problem::WeakLandau | Problem::StrongLandau => Some(LANDAU_FIT_WINDOW),
        Problem::SymmetricTwoStream => detect_growth_window(&series, GROWTH_HALF_SPAN, GROWTH_SLOPE_TOL),
        _ => None,
    };
    if let Some(w) = window {
        match fit_rate(&series, w) {
            Ok(rate) => println!("fitted ||E||_2 rate on [{:.2}, {:.2}]: {rate:.5}", w.0, w.1),
            Err(e) => println!("no rate fit: {e}"),
        }
    }
    println!("wrote {}", paths.diagnostics.display());
    for p in &paths.snapshots {
        println!("wrote {}", p.display());
    }
    println!("wrote {}", paths.manifest.display());
    Ok(())
}

fn cmd_converge_space(args: &Common) -> Result<()> {
    let base = args.config(Problem::TwoStream)?;
    let mut preset = if args.fast {
        SpacePreset::fast()
    } else {
        SpacePreset::full()
    };
    if let Some(c) = args.cfl {
        preset.cfl = c;
    }
    if let Some(t) = args.tfinal {
        preset.t_final = t;
    }
    let table = converge_space(&base, &preset)?;
    let mut csv = String::from("n,l1_error,order\n");
    println!(
        "reference {}^2, CFL {}, T {}",
        preset.reference, preset.cfl, preset.t_final
    );
    println!("{:>6} {:>12} {:>8}", "N", "L1 error", "order");
    for row in &table.rows {
        let order = row.order.map_or("-".to_string(), |o| format!("{o:.2}"));
        println!("{:>6} {:>12.3e} {:>8}", row.n, row.error, order);
        csv.push_str(&format!(
            "{},{:e},{}\n",
            row.n,
            row.error,
            row.order.map_or(String::new(), |o| o.to_string())
        ));
    }
    let path = base.out_dir.join("converge_space.csv");
    write_file(&path, &csv)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_converge_time(args: &Common) -> Result<()> {
    let base = args.config(Problem::TwoStream)?;
    let mut preset = if args.fast {
        TimePreset::fast()
    } else {
        TimePreset::full()
    };
    if let Some(n) = args.nx {
        preset.n = n;
    }
    if let Some(t) = args.tfinal {
        preset.t_final = t;
    }
    if let Some(o) = args.order {
        preset.orders = vec![TracerOrder::from_u8(o)?];
    }
    let table = converge_time(&base, &preset)?;
    println!(
        "N = {}, T = {}, reference CFL {}",
        table.n, table.t_final, table.reference_cfl
    );
    let mut csv = String::from("order,cfl,l1_error,observed_order\n");
    for col in &table.columns {
        println!("order {}", col.order.as_u8());
        for ((cfl, e), o) in table.cfls.iter().zip(&col.errors).zip(&col.orders) {
            let o_txt = o.map_or("-".to_string(), |o| format!("{o:.2}"));
            println!("  CFL {cfl:>5}: {e:.3e}  {o_txt}");
            csv.push_str(&format!(
                "{},{cfl},{e:e},{}\n",
                col.order.as_u8(),
                o.map_or(String::new(), |o| o.to_string())
            ));
        }
    }
    let path = base.out_dir.join("converge_time.csv");
    write_file(&path, &csv)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_advect1d(args: &Common) -> Result<()> {
    let n = args.nx.unwrap_or(64);
    let cfl = args.cfl.unwrap_or(0.5);
    let length = 2.0 * std::f64::consts::PI;
    let t_final = args.tfinal.unwrap_or(length);
    let speed = 1.0;
    let exact = |x: f64, t: f64| (x - speed * t).sin();
    let s0 = AdvectState1D::sample(n, length, speed, |x| exact(x, 0.0));
    let (end, masses) = advect_to(&s0, t_final, cfl, &Quadrature::gauss_legendre2())?;
    let dx = end.dx();
    let l1 = end
        .u
        .iter()
        .enumerate()
        .map(|(i, u)| (u - exact((i as f64 + 0.5) * dx, end.t)).abs())
        .sum::<f64>()
        / n as f64;
    let drift = masses.iter().map(|m| (m - masses[0]).abs()).fold(0.0, f64::max);
    println!(
        "advect1d: N = {n}, CFL = {cfl}, {} steps to t = {}",
        masses.len() - 1,
        end.t
    );
    println!("L1 error {l1:.3e}, max mass drift {drift:.3e}");
    let out_dir = args.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    let path = out_dir.join("advect1d.csv");
    let mut csv = String::from("x,u,exact\n");
    for (i, u) in end.u.iter().enumerate() {
        let x = (i as f64 + 0.5) * dx;
        csv.push_str(&format!("{x:e},{u:e},{:e}\n", exact(x, end.t)));
    }
    write_file(&path, &csv)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::ConvergeSpace(a) => cmd_converge_space(a),
        Command::ConvergeTime(a) => cmd_converge_time(a),
        Command::Advect1d(a) => cmd_advect1d(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
