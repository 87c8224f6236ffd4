//! Quad meshes of a surface grid, projected to 3-space by dropping an axis.

use minkowski_surfaces::rotational::RotationalSurface;
use minkowski_surfaces::surface::SurfacePatch;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::F17;
use crate::sweep::{map_grid, point};

#[derive(Debug, Serialize)]
pub struct Projection {
    pub mode: &'static str,
    /// 1-based index of the dropped coordinate.
    pub axis: usize,
}

#[derive(Debug, Serialize)]
pub struct Channels {
    pub k: Vec<F17>,
    pub kappa: Vec<F17>,
    #[serde(rename = "K")]
    pub gauss: Vec<F17>,
    pub class: Vec<&'static str>,
}

#[derive(Debug, Serialize)]
pub struct Mesh {
    pub vertices4: Vec<[F17; 4]>,
    pub projection: Projection,
    pub vertices3: Vec<[F17; 3]>,
    pub faces: Vec<[usize; 4]>,
    pub channels: Channels,
}

/// Quads `(i, j), (i+1, j), (i+1, j+1), (i, j+1)` of a row-major `nu x nv` grid.
pub fn grid_faces(nu: usize, nv: usize) -> Vec<[usize; 4]> {
    let id = |i: usize, j: usize| i * nv + j;
    (0..nu.saturating_sub(1))
        .flat_map(|i| (0..nv.saturating_sub(1)).map(move |j| [id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]))
        .collect()
}

pub fn export_mesh(
    s: &RotationalSurface,
    patch: &SurfacePatch,
    us: &[f64],
    vs: &[f64],
    axis: i64,
    tol: f64,
) -> CliResult<Mesh> {
    if !(1..=4).contains(&axis) {
        return Err(CliError::Input(format!("projection axis must be 1, 2, 3 or 4, got {axis}")));
    }
    let drop = axis as usize - 1;
    let points = map_grid(us, vs, |u, v| {
        let z = s.embed(u, v)?;
        let (r, _) = point(s, patch, u, v, tol)?;
        Ok((z, r))
    })?;
    let mut mesh = Mesh {
        vertices4: Vec::with_capacity(points.len()),
        projection: Projection { mode: "drop-axis", axis: drop + 1 },
        vertices3: Vec::with_capacity(points.len()),
        faces: grid_faces(us.len(), vs.len()),
        channels: Channels { k: vec![], kappa: vec![], gauss: vec![], class: vec![] },
    };
    for (z, r) in points {
        let c = z.components();
        mesh.vertices4.push(c.map(F17));
        let mut kept = c.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, x)| F17(*x));
        mesh.vertices3.push(std::array::from_fn(|_| kept.next().expect("three kept coordinates")));
        mesh.channels.k.push(F17(r.k));
        mesh.channels.kappa.push(F17(r.kappa));
        mesh.channels.gauss.push(F17(r.gauss));
        mesh.channels.class.push(r.point_class.as_str());
    }
    Ok(mesh)
}
