use crate::error::{Error, Result};
use crate::scenario::{PotentialModel, TrapConfiguration};

/// Uniform rectangular evaluation grid on the trapping plane z = −z0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneGrid {
    pub z0_um: f64,
    pub x_min_um: f64,
    pub x_max_um: f64,
    pub y_min_um: f64,
    pub y_max_um: f64,
    pub nx: usize,
    pub ny: usize,
}

impl PlaneGrid {
    pub fn new(
        z0_um: f64,
        x_min_um: f64,
        x_max_um: f64,
        y_min_um: f64,
        y_max_um: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self> {
        if !(z0_um > 0.0) {
            return Err(Error::InvalidPlane(z0_um));
        }
        if !(x_min_um < x_max_um) || !(y_min_um < y_max_um) {
            return Err(Error::InvalidParameter(
                "grid bounds must satisfy x_min < x_max and y_min < y_max".into(),
            ));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points per axis, got {nx}x{ny}"
            )));
        }
        Ok(Self { z0_um, x_min_um, x_max_um, y_min_um, y_max_um, nx, ny })
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.x_min_um + (self.x_max_um - self.x_min_um) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y_at(&self, j: usize) -> f64 {
        self.y_min_um + (self.y_max_um - self.y_min_um) * j as f64 / (self.ny - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Pointwise evaluation of a potential over a grid. Arrays are stored
/// y-major: index = j·nx + i, with x varying fastest within a row.
/// Points whose evaluation failed hold NaN and are counted.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialGrid {
    pub grid: PlaneGrid,
    pub time_s: f64,
    pub v_over_hbar: Vec<f64>,
    pub detuning: Vec<f64>,
    pub rabi: Vec<f64>,
    pub failed_points: usize,
}

impl PotentialGrid {
    /// Index of the finite minimum of V, if any, as (i, j).
    pub fn min_cell(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, f64)> = None;
        for (idx, &v) in self.v_over_hbar.iter().enumerate() {
            if v.is_finite() && best.map_or(true, |(_, bv)| v < bv) {
                best = Some((idx, v));
            }
        }
        best.map(|(idx, _)| (idx % self.grid.nx, idx / self.grid.nx))
    }
}

/// Evaluates the potential (and its δ, Ω companions) over the grid at time
/// `t_s`, on `threads` worker threads. Output is independent of the thread
/// count: rows are partitioned, every point computed by identical code.
///
/// Closed-form models bake the configuration's z0 into their formulas, so
/// they reject grids on a different plane.
pub fn eval_grid(
    config: &TrapConfiguration,
    model: PotentialModel,
    grid: PlaneGrid,
    t_s: f64,
    threads: usize,
) -> Result<PotentialGrid> {
    if let PotentialModel::ClosedForm(_) = model {
        if grid.z0_um != config.z0_um {
            return Err(Error::InvalidParameter(format!(
                "grid plane z0 = {} um differs from configuration z0 = {} um",
                grid.z0_um, config.z0_um
            )));
        }
    }
    let n = grid.len();
    let mut v = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut rabi = vec![0.0f64; n];

    let fill_row = |j: usize, v: &mut [f64], delta: &mut [f64], rabi: &mut [f64]| -> usize {
        let y = grid.y_at(j);
        let mut failed = 0;
        for i in 0..grid.nx {
            match model.sample(config, grid.x_at(i), y, t_s) {
                Ok(s) => {
                    v[i] = s.v_over_hbar_rad_s;
                    delta[i] = s.detuning_rad_s;
                    rabi[i] = s.rabi_rad_s;
                }
                Err(_) => {
                    v[i] = f64::NAN;
                    delta[i] = f64::NAN;
                    rabi[i] = f64::NAN;
                    failed += 1;
                }
            }
        }
        failed
    };

    let failed_points = if threads <= 1 || grid.ny == 1 {
        let mut failed = 0;
        for j in 0..grid.ny {
            let lo = j * grid.nx;
            let hi = lo + grid.nx;
            failed += fill_row(j, &mut v[lo..hi], &mut delta[lo..hi], &mut rabi[lo..hi]);
        }
        failed
    } else {
        let workers = threads.min(grid.ny);
        let rows_per = grid.ny.div_ceil(workers);
        let mut v_chunks: Vec<&mut [f64]> = v.chunks_mut(rows_per * grid.nx).collect();
        let mut d_chunks: Vec<&mut [f64]> = delta.chunks_mut(rows_per * grid.nx).collect();
        let mut r_chunks: Vec<&mut [f64]> = rabi.chunks_mut(rows_per * grid.nx).collect();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (w, ((vc, dc), rc)) in v_chunks
                .drain(..)
                .zip(d_chunks.drain(..))
                .zip(r_chunks.drain(..))
                .enumerate()
            {
                let fill_row = &fill_row;
                handles.push(scope.spawn(move || {
                    let j0 = w * rows_per;
                    let mut failed = 0;
                    for (row, j) in (j0..).take(vc.len() / grid.nx).enumerate() {
                        let lo = row * grid.nx;
                        let hi = lo + grid.nx;
                        failed +=
                            fill_row(j, &mut vc[lo..hi], &mut dc[lo..hi], &mut rc[lo..hi]);
                    }
                    failed
                }));
            }
            handles.into_iter().map(|h| h.join().expect("grid worker panicked")).sum()
        })
    };

    Ok(PotentialGrid { grid, time_s: t_s, v_over_hbar: v, detuning: delta, rabi, failed_points })
}
