//! `aklt`: reproducible tables and verification reports for the spin-1
//! valence-bond-solid chain. Every command writes CSV (header plus data rows
//! on stdout, parameters and metadata on stderr) or a single JSON object;
//! identical invocations with the same seed produce byte-identical output.
//!
//! Exit codes: 0 success, 2 usage, 3 capacity, 4 verification failure.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use aklt::entanglement::{
    block_entropy, correlator, correlator_ratio, d_squared_closed, d_squared_maximized,
    entropy_deviation_bits, entropy_variant_bits, entropy_variant_deviation_bits,
    geometric_entanglement_per_block, rdm_eigenvalues_closed, saturation_deviation,
    table_of_entanglement, LogBase, MaximizationMethod, LN_2,
};
use aklt::linalg::{eig_general, eig_hermitian};
use aklt::mps::{
    build_site_tensor, log_norm_obc, log_norm_pbc, norm_obc, norm_pbc, transfer_matrix,
    transfer_spectrum,
};
use aklt::oracle::{
    build_vbs_state, candidate_energy, exact_correlator, exact_geometric_entanglement,
    ground_state_report, product_overlap_dense, product_overlap_mps, reduced_density_matrix,
    vbs_mps_amplitudes, DenseState,
};
use aklt::{AkltError, Boundary, Result, ALS_MAX_SWEEPS, ALS_TOL, MAX_DENSE_DIM};
use output::{Cell, Format, Record};

const DEFAULT_SEED: u64 = 20260817;

#[derive(Parser)]
#[command(
    name = "aklt",
    version,
    about = "Geometric entanglement of the spin-1 valence-bond-solid chain",
    max_term_width = 100
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Decimal places for numeric output (clamped to 17).
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    /// Seed for every randomized search; fixed default keeps runs reproducible.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bc {
    Obc,
    Pbc,
}

impl Bc {
    fn boundary(self) -> Boundary {
        match self {
            Bc::Obc => Boundary::Open,
            Bc::Pbc => Boundary::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Maximize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Base {
    Nat,
    Bit,
}

impl Base {
    fn log_base(self) -> LogBase {
        match self {
            Base::Nat => LogBase::Nat,
            Base::Bit => LogBase::Bit,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Quantity {
    Geoment,
    Entropy,
    Correlator,
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement per block E(L) with its deviation from log 2, L = 1..lmax.
    Table {
        #[arg(long, default_value_t = 14)]
        lmax: usize,
    },
    /// Squared overlap d², E(L), and (for maximize) the search spread at one L.
    Entanglement {
        /// Block length.
        #[arg(short = 'L', long = "length")]
        l: usize,
        /// closed: evaluate the closed form; maximize: grid search plus polish.
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Sphere grid size for --method maximize.
        #[arg(long, default_value_t = 233)]
        grid_points: usize,
    },
    /// Squared state norm and log-norm for a chain of N spin-1 sites.
    Norm {
        #[arg(short = 'N', long = "sites")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Bc::Obc)]
        bc: Bc,
    },
    /// Block entropy S(L) and the reduced-density-matrix eigenvalues.
    Entropy {
        #[arg(short = 'L', long = "length")]
        l: usize,
        #[arg(long, value_enum, default_value_t = Base::Nat)]
        base: Base,
        /// Also print the sign-flipped base-2 combination on stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// End-to-end correlator of an L-site window and the ratio C(L+1)/C(L).
    Correlator {
        #[arg(short = 'L', long = "length")]
        l: usize,
    },
    /// Decay table for one quantity: value, deviation from its limit, and the
    /// consecutive deviation ratio.
    Sweep {
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long, default_value_t = 14)]
        lmax: usize,
    },
    /// Cross-check the transfer-matrix results against the dense oracle at one
    /// chain size; exit 4 if any clause fails, 3 if the size is out of reach.
    Verify {
        #[arg(short = 'N', long = "sites")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Bc::Obc)]
        bc: Bc,
        /// Block length; must divide N. Default: 2 for even N, else 1.
        #[arg(short = 'L', long = "length")]
        l: Option<usize>,
        /// Independent starting points for the alternating maximization.
        #[arg(long, default_value_t = 12)]
        restarts: usize,
    },
    /// Eigenvalues and eigenvectors of the single-site transfer operator.
    Spectrum,
}

struct Outcome {
    record: Record,
    verification_failed: bool,
}

fn main() {
    let cli = Cli::parse();
    let precision = cli.precision.min(17);
    match run(&cli) {
        Ok(outcome) => {
            output::render(&outcome.record, cli.format, precision);
            if outcome.verification_failed {
                std::process::exit(4);
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(match err {
                AkltError::Argument(_) => 2,
                AkltError::Capacity { .. } => 3,
                AkltError::Verification(_) => 4,
                _ => 1,
            });
        }
    }
}

fn base_metadata(seed: u64) -> Vec<(&'static str, String)> {
    vec![
        ("version", env!("CARGO_PKG_VERSION").to_string()),
        ("seed", seed.to_string()),
    ]
}

fn run(cli: &Cli) -> Result<Outcome> {
    let precision = cli.precision.min(17);
    match &cli.command {
        Command::Table { lmax } => cmd_table(*lmax, cli.seed),
        Command::Entanglement {
            l,
            method,
            grid_points,
        } => cmd_entanglement(*l, *method, *grid_points, cli.seed),
        Command::Norm { n, bc } => cmd_norm(*n, *bc, cli.seed, precision),
        Command::Entropy { l, base, verbose } => {
            cmd_entropy(*l, *base, *verbose, cli.seed, precision)
        }
        Command::Correlator { l } => cmd_correlator(*l, cli.seed),
        Command::Sweep { quantity, lmax } => cmd_sweep(*quantity, *lmax, cli.seed),
        Command::Verify { n, bc, l, restarts } => {
            cmd_verify(*n, *bc, *l, *restarts, cli.seed)
        }
        Command::Spectrum => cmd_spectrum(cli.seed, precision),
    }
}

fn cmd_table(lmax: usize, seed: u64) -> Result<Outcome> {
    let table = table_of_entanglement(lmax)?;
    let rows = table
        .iter()
        .map(|&(l, e, dev)| vec![Cell::Int(l as i64), Cell::Float(e), Cell::Float(dev)])
        .collect();
    Ok(Outcome {
        record: Record {
            command: "table",
            parameters: vec![("lmax", lmax.to_string())],
            header: vec!["L", "E", "dev"],
            rows,
            metadata: base_metadata(seed),
            notes: vec![],
        },
        verification_failed: false,
    })
}

fn cmd_entanglement(l: usize, method: Method, grid_points: usize, seed: u64) -> Result<Outcome> {
    let (label, d_squared, e, spread) = match method {
        Method::Closed => (
            MaximizationMethod::ClosedForm.label(),
            d_squared_closed(l)?,
            geometric_entanglement_per_block(l)?,
            Cell::Empty,
        ),
        Method::Maximize => {
            let report = d_squared_maximized(l, grid_points)?;
            (
                report.method.label(),
                report.d_squared,
                report.e_per_block,
                report.spread.map_or(Cell::Empty, Cell::Float),
            )
        }
    };
    let rows = vec![vec![
        Cell::Int(l as i64),
        Cell::Text(label.to_string()),
        Cell::Float(d_squared),
        Cell::Float(e),
        spread,
    ]];
    let mut parameters = vec![("L", l.to_string()), ("method", label.to_string())];
    if matches!(method, Method::Maximize) {
        parameters.push(("grid_points", grid_points.to_string()));
    }
    Ok(Outcome {
        record: Record {
            command: "entanglement",
            parameters,
            header: vec!["L", "method", "d_squared", "e_per_block", "spread"],
            rows,
            metadata: base_metadata(seed),
            notes: vec![],
        },
        verification_failed: false,
    })
}

fn cmd_norm(n: usize, bc: Bc, seed: u64, precision: usize) -> Result<Outcome> {
    if n == 0 {
        return Err(AkltError::Argument("N must be at least 1".into()));
    }
    let (norm, log_norm) = match bc.boundary() {
        Boundary::Open => (norm_obc(n), log_norm_obc(n)),
        Boundary::Periodic => (norm_pbc(n), log_norm_pbc(n)),
    };
    // A positive norm can round to zero at the active precision long before it
    // underflows f64; the flag marks any displayed zero that is not a true
    // zero, with the log-norm carrying the recoverable value.
    let displays_as_zero = norm.abs() < 0.5 * 10f64.powi(-(precision as i32));
    let underflow = log_norm.is_finite() && displays_as_zero;
    let rows = vec![vec![
        Cell::Int(n as i64),
        Cell::Text(bc.boundary().label().to_string()),
        Cell::Float(norm),
        Cell::Float(log_norm),
        Cell::Int(underflow as i64),
    ]];
    Ok(Outcome {
        record: Record {
            command: "norm",
            parameters: vec![
                ("N", n.to_string()),
                ("bc", bc.boundary().label().to_string()),
            ],
            header: vec!["N", "bc", "norm", "log_norm", "underflow"],
            rows,
            metadata: base_metadata(seed),
            notes: vec![],
        },
        verification_failed: false,
    })
}

fn cmd_entropy(l: usize, base: Base, verbose: bool, seed: u64, precision: usize) -> Result<Outcome> {
    let entropy = block_entropy(l, base.log_base())?;
    let p = rdm_eigenvalues_closed(l)?;
    let mut notes = Vec::new();
    if verbose {
        let variant = entropy_variant_bits(l)?;
        let bits = block_entropy(l, LogBase::Bit)?;
        notes.push(format!(
            "sign-flipped base-2 combination at L={l}: {variant:.precision$} \
             (block entropy: {bits:.precision$} bits); its deviations from 2 \
             alternate with ratio -1/3, the entropy's shrink by 1/9"
        ));
    }
    let rows = vec![vec![
        Cell::Int(l as i64),
        Cell::Text(base.log_base().label().to_string()),
        Cell::Float(entropy),
        Cell::Float(p[0]),
        Cell::Float(p[1]),
        Cell::Float(p[2]),
        Cell::Float(p[3]),
    ]];
    Ok(Outcome {
        record: Record {
            command: "entropy",
            parameters: vec![
                ("L", l.to_string()),
                ("base", base.log_base().label().to_string()),
            ],
            header: vec!["L", "base", "entropy", "p0", "p1", "p2", "p3"],
            rows,
            metadata: base_metadata(seed),
            notes,
        },
        verification_failed: false,
    })
}

fn cmd_correlator(l: usize, seed: u64) -> Result<Outcome> {
    let value = correlator(l)?;
    let ratio = correlator_ratio(l)?;
    let rows = vec![vec![
        Cell::Int(l as i64),
        Cell::Float(value),
        Cell::Float(ratio),
    ]];
    Ok(Outcome {
        record: Record {
            command: "correlator",
            parameters: vec![("L", l.to_string())],
            header: vec!["L", "correlator", "ratio"],
            rows,
            metadata: base_metadata(seed),
            notes: vec![],
        },
        verification_failed: false,
    })
}

fn cmd_sweep(quantity: Quantity, lmax: usize, seed: u64) -> Result<Outcome> {
    if lmax < 2 {
        return Err(AkltError::Argument("sweep needs lmax >= 2".into()));
    }
    let (name, header, rows): (&str, Vec<&'static str>, Vec<Vec<Cell>>) = match quantity {
        Quantity::Geoment => {
            let mut rows = Vec::new();
            let mut prev: Option<f64> = None;
            for l in 1..=lmax {
                let value = geometric_entanglement_per_block(l)?;
                let dev = saturation_deviation(l)?;
                let ratio = prev.map_or(Cell::Empty, |p| Cell::Float(dev / p));
                rows.push(vec![
                    Cell::Int(l as i64),
                    Cell::Float(value),
                    Cell::Float(dev),
                    ratio,
                ]);
                prev = Some(dev);
            }
            ("geoment", vec!["L", "value", "deviation", "ratio"], rows)
        }
        Quantity::Entropy => {
            let mut rows = Vec::new();
            let mut prev: Option<(f64, f64)> = None;
            for l in 1..=lmax {
                let value = block_entropy(l, LogBase::Bit)?;
                let dev = entropy_deviation_bits(l)?;
                let alt_value = entropy_variant_bits(l)?;
                let alt_dev = entropy_variant_deviation_bits(l)?;
                let (ratio, alt_ratio) = prev.map_or((Cell::Empty, Cell::Empty), |(p, ap)| {
                    (Cell::Float(dev / p), Cell::Float(alt_dev / ap))
                });
                rows.push(vec![
                    Cell::Int(l as i64),
                    Cell::Float(value),
                    Cell::Float(dev),
                    ratio,
                    Cell::Float(alt_value),
                    Cell::Float(alt_dev),
                    alt_ratio,
                ]);
                prev = Some((dev, alt_dev));
            }
            (
                "entropy",
                vec![
                    "L",
                    "value",
                    "deviation",
                    "ratio",
                    "alt_value",
                    "alt_deviation",
                    "alt_ratio",
                ],
                rows,
            )
        }
        Quantity::Correlator => {
            // The limiting value is zero, so the deviation is the value itself;
            // the column is kept so every sweep shares one shape.
            let mut rows = Vec::new();
            let mut prev: Option<f64> = None;
            for l in 2..=lmax {
                let value = correlator(l)?;
                let ratio = prev.map_or(Cell::Empty, |p| Cell::Float(value / p));
                rows.push(vec![
                    Cell::Int(l as i64),
                    Cell::Float(value),
                    Cell::Float(value),
                    ratio,
                ]);
                prev = Some(value);
            }
            ("correlator", vec!["L", "value", "deviation", "ratio"], rows)
        }
    };
    Ok(Outcome {
        record: Record {
            command: "sweep",
            parameters: vec![("quantity", name.to_string()), ("lmax", lmax.to_string())],
            header,
            rows,
            metadata: base_metadata(seed),
            notes: vec![],
        },
        verification_failed: false,
    })
}

fn cmd_spectrum(seed: u64, precision: usize) -> Result<Outcome> {
    let a = transfer_matrix(&build_site_tensor());
    let dec = transfer_spectrum(&a)?;
    let rows = (0..4)
        .map(|k| {
            let v = &dec.eigenvectors[k];
            vec![
                Cell::Int(k as i64),
                Cell::Float(dec.eigenvalues[k].re),
                Cell::Float(v[0].re),
                Cell::Float(v[1].re),
                Cell::Float(v[2].re),
                Cell::Float(v[3].re),
            ]
        })
        .collect();
    // The operator is symmetric. Moving the (01,01) diagonal entry onto the
    // (10,01) off-diagonal yields a superficially similar matrix with a
    // different spectrum; report the comparison so the distinction is visible.
    let mut variant = a.matrix.clone();
    variant.set(&[1, 1], Complex64::new(0.0, 0.0));
    variant.set(&[2, 1], Complex64::new(-0.25, 0.0));
    let vdec = eig_general(&variant)?;
    let variant_eigs: Vec<String> = vdec
        .eigenvalues
        .iter()
        .map(|z| format!("{:.precision$}", z.re))
        .collect();
    let own_eigs: Vec<String> = dec
        .eigenvalues
        .iter()
        .map(|z| format!("{:.precision$}", z.re))
        .collect();
    let notes = vec![format!(
        "the operator is symmetric with spectrum {{{}}}; an asymmetric variant \
         that moves the (01,01) diagonal entry -1/4 onto the (10,01) off-diagonal \
         instead has spectrum {{{}}} and is not what the site tensors generate",
        own_eigs.join(", "),
        variant_eigs.join(", ")
    )];
    Ok(Outcome {
        record: Record {
            command: "spectrum",
            parameters: vec![],
            header: vec!["index", "eigenvalue", "v0", "v1", "v2", "v3"],
            rows,
            metadata: base_metadata(seed),
            notes,
        },
        verification_failed: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Info,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
            Status::Skip => "skip",
        }
    }
}

struct ClauseTable {
    rows: Vec<Vec<Cell>>,
    failed: bool,
}

impl ClauseTable {
    fn new() -> Self {
        ClauseTable {
            rows: Vec::new(),
            failed: false,
        }
    }

    fn push(&mut self, clause: &str, status: Status, measured: Cell, expected: Cell, tol: Cell) {
        if status == Status::Fail {
            self.failed = true;
        }
        self.rows.push(vec![
            Cell::Text(clause.to_string()),
            Cell::Text(status.label().to_string()),
            measured,
            expected,
            tol,
        ]);
    }

    /// Pass iff |measured − expected| ≤ tol.
    fn check(&mut self, clause: &str, measured: f64, expected: f64, tol: f64) {
        let status = if (measured - expected).abs() <= tol {
            Status::Pass
        } else {
            Status::Fail
        };
        self.push(
            clause,
            status,
            Cell::Float(measured),
            Cell::Float(expected),
            Cell::Float(tol),
        );
    }

    fn skip(&mut self, clause: &str) {
        self.push(clause, Status::Skip, Cell::Empty, Cell::Empty, Cell::Empty);
    }
}

fn closed_norm(n: usize, boundary: Boundary) -> f64 {
    match boundary {
        Boundary::Open => norm_obc(n),
        Boundary::Periodic => norm_pbc(n),
    }
}

/// Full-spectrum diagonalization is cubic in the matrix dimension; past this
/// size it runs for minutes, so gap and degeneracy are skipped while the
/// energy and residual (one matrix-vector product) still run up to the memory
/// bound.
const FULL_SPECTRUM_DIM: u128 = 2000;

fn ground_state_clauses(table: &mut ClauseTable, n: usize, boundary: Boundary) -> Result<()> {
    let h_dim: u128 = match boundary {
        Boundary::Open => 4 * 3u128.pow(n as u32),
        Boundary::Periodic => 3u128.pow(n as u32),
    };
    if n < 2 || h_dim > u128::from(MAX_DENSE_DIM) {
        for clause in ["ground_energy", "ground_residual", "gap", "degeneracy"] {
            table.skip(clause);
        }
        return Ok(());
    }
    let expected_energy = match boundary {
        Boundary::Open => -2.0 * (n as f64 - 1.0) / 3.0,
        Boundary::Periodic => -2.0 * n as f64 / 3.0,
    };
    if h_dim > FULL_SPECTRUM_DIM {
        let candidate = candidate_energy(n, boundary)?;
        table.check("ground_energy", candidate.energy, expected_energy, 1e-10);
        table.check("ground_residual", candidate.residual, 0.0, 1e-10);
        table.skip("gap");
        table.skip("degeneracy");
        return Ok(());
    }
    let report = ground_state_report(n, boundary)?;
    table.check("ground_energy", report.candidate_energy, expected_energy, 1e-10);
    table.check("ground_residual", report.residual, 0.0, 1e-10);
    let gap_status = if report.gap > 0.0 {
        Status::Pass
    } else {
        Status::Fail
    };
    table.push(
        "gap",
        gap_status,
        Cell::Float(report.gap),
        Cell::Empty,
        Cell::Empty,
    );
    match boundary {
        Boundary::Open => {
            let status = if report.degeneracy == 1 {
                Status::Pass
            } else {
                Status::Fail
            };
            table.push(
                "degeneracy",
                status,
                Cell::Int(report.degeneracy as i64),
                Cell::Int(1),
                Cell::Empty,
            );
        }
        Boundary::Periodic => {
            // Small rings can carry a degenerate ground multiplet; recorded,
            // not judged.
            table.push(
                "degeneracy",
                Status::Info,
                Cell::Int(report.degeneracy as i64),
                Cell::Empty,
                Cell::Empty,
            );
        }
    }
    Ok(())
}

fn rdm_clause(
    table: &mut ClauseTable,
    psi: &DenseState,
    n: usize,
    l: usize,
    boundary: Boundary,
) -> Result<()> {
    if boundary == Boundary::Periodic && l == n {
        table.skip("rdm");
        return Ok(());
    }
    let start = match boundary {
        Boundary::Open => 1 + (n - l) / 2,
        Boundary::Periodic => (n - l) / 2,
    };
    let rho = reduced_density_matrix(psi, start, start + l)?;
    let dec = eig_hermitian(&rho)?;
    let mut got: Vec<f64> = dec.eigenvalues.iter().map(|v| v.re).collect();
    got.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let expected = rdm_eigenvalues_closed(l)?;
    let mut measured = 0.0f64;
    for (k, want) in expected.iter().enumerate() {
        measured = measured.max((got.get(k).copied().unwrap_or(0.0) - want).abs());
    }
    for leftover in got.iter().skip(4) {
        measured = measured.max(leftover.abs());
    }
    let tol = match boundary {
        Boundary::Open => 1e-6,
        Boundary::Periodic => 2.0 * 3.0f64.powi(-((n - l) as i32)),
    };
    table.check("rdm", measured, 0.0, tol);
    Ok(())
}

fn geom_ent_clauses(
    table: &mut ClauseTable,
    psi: &DenseState,
    n: usize,
    l: usize,
    boundary: Boundary,
    seed: u64,
    restarts: usize,
) -> Result<()> {
    let out = exact_geometric_entanglement(psi, boundary, l, seed, restarts)?;
    let n_blocks = n / l;
    match boundary {
        Boundary::Open => {
            // The open-chain optimum is exact: adjacent blocks (anti-)align so
            // every internal block boundary contributes (1 + 3^-L)/2, and the
            // two edge factors contribute 1/2 once.
            let expected = if n_blocks == 1 {
                1.0
            } else {
                0.5 * ((1.0 + 3.0f64.powi(-(l as i32))) / 2.0).powi(n_blocks as i32 - 2)
            };
            table.check("geom_lambda_sq", out.lambda_squared, expected, 1e-8);
        }
        Boundary::Periodic => {
            let e_star = LN_2 - 3.0f64.powi(-(l as i32)).ln_1p();
            if n_blocks == 1 {
                table.check("geom_lambda_sq", out.lambda_squared, 1.0, 1e-10);
            } else if l % 2 == 1 && n_blocks % 2 == 1 {
                // A ring with an odd number of odd-length blocks frustrates
                // the alternating optimum; the value falls between the
                // aligned and staggered limits and is reported, not judged.
                table.push(
                    "geom_per_block",
                    Status::Info,
                    Cell::Float(out.e_per_block),
                    Cell::Float(e_star),
                    Cell::Empty,
                );
            } else {
                let band = 3.0f64.powi(1 - (l * (n_blocks - 1)) as i32);
                table.check("geom_per_block", out.e_per_block, e_star, band);
            }
        }
    }
    let dense = product_overlap_dense(psi, boundary, l, &out.best_ansatz)?;
    let mps = product_overlap_mps(n, boundary, l, &out.best_ansatz)?;
    table.check("overlap_paths", (dense - mps).norm(), 0.0, 1e-10);
    table.push(
        "restart_spread",
        Status::Info,
        Cell::Float(out.spread),
        Cell::Empty,
        Cell::Empty,
    );
    Ok(())
}

fn correlator_clause(
    table: &mut ClauseTable,
    psi: &DenseState,
    n: usize,
    boundary: Boundary,
) -> Result<()> {
    match boundary {
        Boundary::Open => {
            if n < 2 {
                table.skip("correlator");
                return Ok(());
            }
            let mut measured = 0.0f64;
            for sep in 1..=3.min(n - 1) {
                let oracle = exact_correlator(psi, 1, 1 + sep)?;
                measured = measured.max((oracle - correlator(sep + 1)?).abs());
            }
            table.check("correlator", measured, 0.0, 1e-10);
        }
        Boundary::Periodic => {
            // Distances 1 and 2 are only distinct on rings of at least four
            // sites; below that a ratio against the chain value is undefined.
            if n < 4 {
                table.skip("correlator");
                return Ok(());
            }
            let c1 = exact_correlator(psi, 0, 1)?;
            let c2 = exact_correlator(psi, 0, 2)?;
            let band = 3.0f64.powi(-((n - 2) as i32) + 1);
            table.check("correlator", c2 / c1, -1.0 / 3.0, band);
        }
    }
    Ok(())
}

fn cmd_verify(n: usize, bc: Bc, l: Option<usize>, restarts: usize, seed: u64) -> Result<Outcome> {
    if n == 0 {
        return Err(AkltError::Argument("N must be at least 1".into()));
    }
    let l = l.unwrap_or(if n.is_multiple_of(2) { 2 } else { 1 });
    if l == 0 || !n.is_multiple_of(l) {
        return Err(AkltError::Argument(format!(
            "block length {l} must divide the chain length {n}"
        )));
    }
    let boundary = bc.boundary();
    let psi = build_vbs_state(n, boundary)?;
    let mps = vbs_mps_amplitudes(n, boundary)?;
    let mut table = ClauseTable::new();

    let expected_norm = closed_norm(n, boundary);
    let norm_tol = if expected_norm == 0.0 {
        1e-12
    } else {
        1e-12 * expected_norm.abs()
    };
    table.check("norm", psi.norm_sqr(), expected_norm, norm_tol);
    table.check("amplitudes", psi.max_abs_diff(&mps), 0.0, 1e-12);
    ground_state_clauses(&mut table, n, boundary)?;

    // The remaining clauses compare against the normalized state; the ring of
    // one site is the zero vector, so there is nothing left to compare.
    if psi.norm_sqr() < 1e-200 {
        for clause in [
            "rdm",
            "geom_lambda_sq",
            "overlap_paths",
            "restart_spread",
            "correlator",
        ] {
            table.skip(clause);
        }
    } else {
        rdm_clause(&mut table, &psi, n, l, boundary)?;
        geom_ent_clauses(&mut table, &psi, n, l, boundary, seed, restarts)?;
        correlator_clause(&mut table, &psi, n, boundary)?;
    }

    let failed = table.failed;
    let mut metadata = base_metadata(seed);
    metadata.push(("restarts", restarts.to_string()));
    metadata.push(("als_tol", format!("{ALS_TOL:e}")));
    metadata.push(("als_max_sweeps", ALS_MAX_SWEEPS.to_string()));
    Ok(Outcome {
        record: Record {
            command: "verify",
            parameters: vec![
                ("N", n.to_string()),
                ("bc", boundary.label().to_string()),
                ("L", l.to_string()),
            ],
            header: vec!["clause", "status", "measured", "expected", "tolerance"],
            rows: table.rows,
            metadata,
            notes: vec![],
        },
        verification_failed: failed,
    })
}
