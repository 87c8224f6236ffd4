//! Invariant sweeps over a (u, v) grid.

use minkowski_surfaces::rotational::{CurvatureInvariants, RotationalSurface};
use minkowski_surfaces::surface::{invariants, InvariantReport, SurfacePatch};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::format::{Cell, Table};

pub const COLUMNS: [&str; 25] = [
    "u",
    "v",
    "E",
    "F",
    "G",
    "L",
    "M",
    "N",
    "k",
    "kappa",
    "K",
    "normH",
    "epsilon",
    "gamma1",
    "gamma2",
    "nu1",
    "nu2",
    "lambda",
    "mu",
    "beta1",
    "beta2",
    "point_class",
    "delta_k",
    "delta_kappa",
    "delta_K",
];

/// Kernel report and closed-form curvatures at one grid point.
pub fn point(
    s: &RotationalSurface,
    patch: &SurfacePatch,
    u: f64,
    v: f64,
    tol: f64,
) -> CliResult<(InvariantReport, CurvatureInvariants)> {
    let report = invariants(patch, u, v, tol).map_err(|source| CliError::Kernel { u, v, source })?;
    let closed = s.closed_curvatures(u)?;
    Ok((report, closed))
}

/// Evaluates `f` at every grid point in parallel; results are in row-major
/// grid order and the first failure in that order is returned.
pub fn map_grid<T: Send>(
    us: &[f64],
    vs: &[f64],
    f: impl Fn(f64, f64) -> CliResult<T> + Sync,
) -> CliResult<Vec<T>> {
    let nv = vs.len();
    let results: Vec<CliResult<T>> = (0..us.len() * nv).into_par_iter().map(|i| f(us[i / nv], vs[i % nv])).collect();
    results.into_iter().collect()
}

fn row(s: &RotationalSurface, u: f64, v: f64, r: &InvariantReport, c: &CurvatureInvariants) -> Vec<Cell> {
    let frame = r.frame.map(|f| f.as_array());
    let fi = |i: usize| Cell::from(frame.map(|a| a[i]));
    let orient = s.kind().kappa_orientation();
    vec![
        u.into(),
        v.into(),
        r.first.e.into(),
        r.first.f.into(),
        r.first.g.into(),
        r.second.l.into(),
        r.second.m.into(),
        r.second.n.into(),
        r.k.into(),
        r.kappa.into(),
        r.gauss.into(),
        r.norm_h.into(),
        r.epsilon.into(),
        fi(0),
        fi(1),
        fi(2),
        fi(3),
        fi(4),
        fi(5),
        fi(6),
        fi(7),
        Cell::Text(r.point_class.as_str().to_owned()),
        (c.k - r.k).abs().into(),
        (orient * c.kappa - r.kappa).abs().into(),
        (c.gauss - r.gauss).abs().into(),
    ]
}

pub fn sweep(s: &RotationalSurface, patch: &SurfacePatch, us: &[f64], vs: &[f64], tol: f64) -> CliResult<Table> {
    let rows = map_grid(us, vs, |u, v| {
        let (r, c) = point(s, patch, u, v, tol)?;
        Ok(row(s, u, v, &r, &c))
    })?;
    Ok(Table { columns: COLUMNS.iter().map(|c| c.to_string()).collect(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use minkowski_surfaces::rotational::{MeridianCurve, SurfaceKind};
    use minkowski_surfaces::DEFAULT_TOL;

    use crate::setup::linspace;

    #[test]
    fn frame_array_order_matches_columns() {
        let f = minkowski_surfaces::surface::FrameInvariants {
            gamma1: 1.0,
            gamma2: 2.0,
            nu1: 3.0,
            nu2: 4.0,
            lambda: 5.0,
            mu: 6.0,
            beta1: 7.0,
            beta2: 8.0,
        };
        assert_eq!(f.as_array(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(&COLUMNS[13..21], ["gamma1", "gamma2", "nu1", "nu2", "lambda", "mu", "beta1", "beta2"]);
    }

    #[test]
    fn grid_order_is_row_major() {
        let s = RotationalSurface::new(SurfaceKind::FirstType, 1.0, 1.0, MeridianCurve::circle(1.0, (-0.7, 0.7)).unwrap())
            .unwrap();
        let (us, vs) = (linspace(-0.5, 0.5, 3), linspace(0.0, 1.0, 4));
        let t = sweep(&s, &s.as_patch(), &us, &vs, DEFAULT_TOL).unwrap();
        assert_eq!(t.rows.len(), 12);
        assert_eq!(t.rows[5][0], Cell::Num(0.0));
        assert_eq!(t.rows[5][1], Cell::Num(vs[1]));
    }
}
