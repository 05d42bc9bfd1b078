//! Command-line front end: run tilts, verify the structural laws, query
//! Hom/Ext dimensions, print the Frobenius data and reproduce the reference
//! tables.
//!
//! Exit codes: 0 = success, 1 = usage error, 2 = property violation.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sl2tilt::basep;
use sl2tilt::error::Error;
use sl2tilt::ffmod::Oracle;
use sl2tilt::frob;
use sl2tilt::homcount::{self, HomQuery};
use sl2tilt::render::{self, Table};
use sl2tilt::tilt::{self, BlockFilter};
use sl2tilt::GroupParams;

#[derive(Parser)]
#[command(
    name = "sl2tilt",
    about = "Perverse-tilt engine for the full-defect blocks of SL2(p^n)",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Execute the tilts, discovering extensions by the counting formulas.
    Simulate,
    /// Evaluate the closed-form state at every step (no step rows).
    ClosedForm,
    /// Simulate and check every state against the closed form.
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hom,
    Ext1,
}

#[derive(Args)]
struct ParamArgs {
    /// The defining characteristic (a prime).
    #[arg(long)]
    p: u32,
    /// The field exponent: the group is SL2(p^n).
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Run the chain of elementary tilts and print the state table.
    Tilt {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "all")]
        block: BlockFilter,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Check the structural laws at the given parameters.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "all")]
        block: BlockFilter,
        /// Also cross-check the counting formulas against the matrix oracle
        /// on the full (b, c, twist) grid.
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        oracle: Switch,
    },
    /// Stable Hom or Ext^1 dimension between U_j M_b and U_jj M_c.
    Homdim {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        jj: i64,
        #[arg(long)]
        c: i64,
        #[arg(long, value_enum, default_value_t = Kind::Hom)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        oracle: Switch,
    },
    /// Per-simple Frobenius data: layer sequence, partition, perversity.
    Frobenius {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reproduce the reference tables and compare against the fixtures.
    Tables {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reserves exit code 2; this tool uses 1 for usage errors
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 for malformed input, 2 for a violated structural property.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_)
        | Error::OutOfRange { .. }
        | Error::NoLayer(_)
        | Error::OmegaOutOfRange(_)
        | Error::ZeroSymbol(_)
        | Error::NotApplicable(_) => 1,
        _ => 2,
    }
}

fn dispatch(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Tilt {
            params,
            block,
            format,
            mode,
        } => cmd_tilt(params, block, format, mode),
        Command::Verify {
            params,
            block,
            oracle,
        } => cmd_verify(params, block, oracle),
        Command::Homdim {
            params,
            j,
            b,
            jj,
            c,
            kind,
            oracle,
        } => cmd_homdim(params, j, b, jj, c, kind, oracle),
        Command::Frobenius { params, format } => cmd_frobenius(params, format),
        Command::Tables { format } => cmd_tables(format),
    }
}

fn print_table(table: &Table, format: Format) {
    match format {
        Format::Text => print!("{}", table.to_text()),
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => println!("{}", table.to_json()),
    }
}

fn cmd_tilt(pa: ParamArgs, block: BlockFilter, format: Format, mode: Mode) -> Result<(), Error> {
    let params = GroupParams::new(pa.p, pa.n)?;
    let table = match mode {
        Mode::ClosedForm => {
            let mut rows = Vec::new();
            let mut cols = Vec::new();
            for m in 0..=params.pow(params.n - 1) {
                let state = tilt::closed_form(&params, m, block)?;
                if m == 0 {
                    cols = state.assignment.keys().copied().collect();
                }
                rows.push(render::TableRow {
                    kind: render::RowKind::State,
                    m,
                    cells: cols
                        .iter()
                        .map(|a| render::Cell::Symbol(state.assignment[a]))
                        .collect(),
                });
            }
            Table {
                p: params.p,
                n: params.n,
                block,
                cols,
                rows,
            }
        }
        Mode::Simulate => {
            let run = tilt::run(&params, block, false)?;
            Table::from_run(&run, &params, block)?
        }
        Mode::Both => {
            let run = tilt::run(&params, block, true)?;
            Table::from_run(&run, &params, block)?
        }
    };
    print_table(&table, format);
    Ok(())
}

fn report(name: &str, ok: bool, detail: &str) -> Result<(), Error> {
    if ok {
        println!("PASS {name}");
        Ok(())
    } else {
        println!("FAIL {name}: {detail}");
        Err(Error::Fixture(format!("{name}: {detail}")))
    }
}

fn cmd_verify(pa: ParamArgs, block: BlockFilter, oracle: Switch) -> Result<(), Error> {
    let params = GroupParams::new(pa.p, pa.n)?;
    let slow = tilt::run(&params, block, true)?;
    let fast = tilt::run(&params, block, false)?;
    println!(
        "verify p={} n={} block={:?}",
        params.p, params.n, block
    );
    // run() already checks every state against the closed form
    report("closed-form = simulation", true, "")?;
    let modes_agree = slow
        .states
        .iter()
        .zip(&fast.states)
        .all(|(a, b)| a.assignment == b.assignment)
        && slow.log.0 == fast.log.0;
    report(
        "formula discovery = closed-form discovery",
        modes_agree,
        "event logs differ",
    )?;
    let final_state = slow.states.last().expect("run has states");
    report(
        "final law U_1 M_a'",
        tilt::verify_final(final_state, &params)?,
        "a final symbol differs from U_1 M_a'",
    )?;
    let ledger = tilt::shift_ledger(&slow.log);
    let mut bad_shift = String::new();
    for (&a, &count) in &ledger {
        let expect = params.pow(params.n - 1 - basep::layer(a, &params)?) as u64;
        if count != expect {
            bad_shift = format!("S_{a}: {count} shifts, expected {expect}");
            break;
        }
    }
    report("shift ledger p^(n-1-layer)", bad_shift.is_empty(), &bad_shift)?;
    report(
        "extension order (completion + layer sandwich)",
        tilt::extension_order_check(&slow.log, &params)?,
        "an extension event violates the order",
    )?;
    if params.p != 2 && block == BlockFilter::All {
        report(
            "block exchange",
            tilt::block_exchange_check(final_state, &params)?,
            "a final image stays in its block",
        )?;
    }
    if oracle == Switch::On {
        let orc = Oracle::new(params.clone())?;
        let mut bad = String::new();
        'grid: for b in 0..params.modulus {
            for c in 0..params.modulus {
                for d in 0..params.modulus {
                    let q = HomQuery { j: 0, b, jj: d, c };
                    let hom = homcount::stable_hom_dim(q.clone(), &params)? as usize;
                    let ext = homcount::ext1_dim(q, &params)? as usize;
                    let ohom = orc.stable_hom_symbols(0, b, d, c)?;
                    let oext = orc.ext1_symbols(0, b, d, c)?;
                    if hom != ohom || ext != oext {
                        bad = format!(
                            "b={b} c={c} twist={d}: formula ({hom},{ext}), oracle ({ohom},{oext})"
                        );
                        break 'grid;
                    }
                }
            }
        }
        report("counting formulas = matrix oracle", bad.is_empty(), &bad)?;
    }
    Ok(())
}

fn cmd_homdim(
    pa: ParamArgs,
    j: i64,
    b: i64,
    jj: i64,
    c: i64,
    kind: Kind,
    oracle: Switch,
) -> Result<(), Error> {
    let params = GroupParams::new(pa.p, pa.n)?;
    let q = HomQuery { j, b, jj, c };
    let dim = match kind {
        Kind::Hom => homcount::stable_hom_dim(q, &params)?,
        Kind::Ext1 => homcount::ext1_dim(q, &params)?,
    };
    let label = match kind {
        Kind::Hom => "PHom",
        Kind::Ext1 => "Ext1",
    };
    println!("{label}(U_{j} M_{b}, U_{jj} M_{c}) = {dim}");
    if oracle == Switch::On {
        let orc = Oracle::new(params.clone())?;
        let odim = match kind {
            Kind::Hom => orc.stable_hom_symbols(j, b, jj, c)?,
            Kind::Ext1 => orc.ext1_symbols(j, b, jj, c)?,
        };
        println!("oracle = {odim}");
        if odim as u64 == dim {
            println!("agree");
        } else {
            println!("DISAGREE");
            return Err(Error::Fixture(format!(
                "formula {dim} != oracle {odim} for {label}(U_{j} M_{b}, U_{jj} M_{c})"
            )));
        }
    }
    Ok(())
}

fn cmd_frobenius(pa: ParamArgs, format: Format) -> Result<(), Error> {
    let params = GroupParams::new(pa.p, pa.n)?;
    let mut rows = Vec::new();
    let mut consistent = true;
    for a in 0..params.modulus {
        let data = frob::partition_data(a, &params)?;
        let digits = basep::to_digits(a, &params)?.digits;
        let total = frob::total_omega(a, &params)?;
        consistent &= total == data.phi;
        rows.push((a, digits, data, total));
    }
    match format {
        Format::Json => {
            let docs: Vec<serde_json::Value> = rows
                .iter()
                .map(|(a, digits, data, total)| {
                    serde_json::json!({
                        "a": a,
                        "digits": digits,
                        "z": data.z,
                        "lambda": data.lambda,
                        "phi": data.phi,
                        "total_omega": total,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "p": params.p,
                "n": params.n,
                "consistent": consistent,
                "rows": docs,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
        Format::Csv | Format::Text => {
            let join = |v: &[u32]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(if format == Format::Csv { ";" } else { "," })
            };
            if format == Format::Csv {
                println!("a,digits,z,lambda,phi,total_omega");
            } else {
                println!("a digits Z lambda phi total_omega");
            }
            for (a, digits, data, total) in &rows {
                if format == Format::Csv {
                    println!(
                        "{a},{},{},{},{},{total}",
                        join(digits),
                        join(&data.z),
                        join(&data.lambda),
                        data.phi
                    );
                } else {
                    println!(
                        "{a} ({}) ({}) ({}) {} {total}",
                        join(digits),
                        join(&data.z),
                        join(&data.lambda),
                        data.phi
                    );
                }
            }
            println!(
                "total_omega = phi'(lambda) on every row: {}",
                if consistent { "yes" } else { "NO" }
            );
        }
    }
    if consistent {
        Ok(())
    } else {
        Err(Error::Fixture(
            "total_omega disagrees with phi'(lambda)".into(),
        ))
    }
}

fn cmd_tables(format: Format) -> Result<(), Error> {
    for name in render::FIXTURE_NAMES {
        let table = render::check_fixture(name)?;
        println!("# {name}");
        print_table(&table, format);
        println!("PASS {name}");
    }
    Ok(())
}
