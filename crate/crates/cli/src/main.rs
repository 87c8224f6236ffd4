//! `mksurf`: invariant sweeps, meridian generators, mesh export and a seeded
//! property suite for general rotational surfaces in Minkowski 4-space.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or domain error,
//! 3 kernel error, 4 solver failure.

mod args;
mod error;
mod format;
mod generate;
mod meridian_file;
mod mesh;
mod setup;
mod sweep;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliResult;
use format::open_output;

fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Invariants(a) => {
            let grid = setup::resolve_grid(&a.surface, &a.grid)?;
            let table = sweep::sweep(&grid.surface, &grid.patch(g)?, &grid.us, &grid.vs, g.tol)?;
            let mut w = open_output(g.out.as_deref())?;
            table.write(g.format, &mut w)?;
            w.flush()?;
            Ok(())
        }
        Command::Generate { family } => generate::run(g, family),
        Command::Verify(a) => verify::run(&a.scope, g.seed, g.tol, open_output(g.out.as_deref())?),
        Command::ExportMesh(a) => {
            let grid = setup::resolve_grid(&a.surface, &a.grid)?;
            let mesh = mesh::export_mesh(&grid.surface, &grid.patch(g)?, &grid.us, &grid.vs, a.drop_axis, g.tol)?;
            let mut w = open_output(g.out.as_deref())?;
            serde_json::to_writer(&mut w, &mesh)?;
            writeln!(w)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
