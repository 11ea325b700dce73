//! Parameter model, grids and boundary data shared by the solvers.

use serde::Serialize;

use crate::error::{domain, Result};

/// Dimensional parameters of the vessel and the Arrhenius reaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Heat-release parameter `Q` (K).
    pub heat_release: f64,
    /// Pre-exponential factor `A` (1/s).
    pub pre_exponential: f64,
    /// Characteristic vessel dimension `ℓ` (m).
    pub length: f64,
    /// Activation temperature `Tₐ` (K).
    pub activation_temperature: f64,
    /// Ambient (wall) temperature `T₀` (K).
    pub ambient_temperature: f64,
    /// Thermal diffusivity `a` (m²/s).
    pub diffusivity: f64,
}

impl PhysicalParams {
    /// `θ = Tₐ / T₀`.
    pub fn theta(&self) -> f64 {
        self.activation_temperature / self.ambient_temperature
    }

    fn validate(&self) -> Result<()> {
        let fields = [
            ("heat_release", self.heat_release),
            ("pre_exponential", self.pre_exponential),
            ("length", self.length),
            ("activation_temperature", self.activation_temperature),
            ("ambient_temperature", self.ambient_temperature),
            ("diffusivity", self.diffusivity),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(domain(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// The dimensionless Frank-Kamenetskii parameter `q ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct ReactionParam(f64);

impl ReactionParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(domain(format!(
                "q must be finite and non-negative, got {q}"
            )));
        }
        Ok(Self(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<ReactionParam> for f64 {
    fn from(q: ReactionParam) -> f64 {
        q.0
    }
}

/// Maps the dimensional model onto `q = Q·A·ℓ²·Tₐ·e^{−θ} / (a·T₀²)`.
pub fn dimensionless_q(p: &PhysicalParams) -> Result<ReactionParam> {
    p.validate()?;
    let q = p.heat_release
        * p.pre_exponential
        * p.length
        * p.length
        * p.activation_temperature
        * (-p.theta()).exp()
        / (p.diffusivity * p.ambient_temperature * p.ambient_temperature);
    ReactionParam::new(q)
}

/// Step boundary data on the right wall of the 2D vessel: 0 below `y = 1/2`,
/// 1 from `y = 1/2` up (the midpoint itself maps to 1).
pub fn boundary_g(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(domain(format!(
            "boundary coordinate y must lie in [0, 1], got {y}"
        )));
    }
    Ok(step_boundary(y))
}

/// Unchecked form of [`boundary_g`] for coordinates already on the lattice.
pub fn step_boundary(y: f64) -> f64 {
    if y < 0.5 {
        0.0
    } else {
        1.0
    }
}

/// Uniform lattice `x_j = j·dx`, `j = 0..M`, on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    nodes: usize,
    dx: f64,
}

pub fn make_grid_1d(nodes: usize) -> Result<Grid1D> {
    if nodes < 3 {
        return Err(domain(format!(
            "1D grid needs at least 3 nodes, got {nodes}"
        )));
    }
    Ok(Grid1D {
        nodes,
        dx: 1.0 / (nodes - 1) as f64,
    })
}

impl Grid1D {
    /// Node count `M`.
    pub fn len(&self) -> usize {
        self.nodes
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Coordinate of node `j` (0-based). The last node is pinned to 1.
    pub fn node(&self, j: usize) -> f64 {
        lattice(j, self.nodes, self.dx, 1.0)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.nodes).map(|j| self.node(j)).collect()
    }
}

/// Uniform `M × N` lattice on `[0, ℓ] × [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid2D {
    nx: usize,
    ny: usize,
    ell: f64,
    dx: f64,
    dy: f64,
}

pub fn make_grid_2d(nx: usize, ny: usize, ell: f64) -> Result<Grid2D> {
    if nx < 3 {
        return Err(domain(format!(
            "2D grid needs at least 3 x-nodes, got {nx}"
        )));
    }
    if ny < 3 {
        return Err(domain(format!(
            "2D grid needs at least 3 y-nodes, got {ny}"
        )));
    }
    if !(ell.is_finite() && ell > 0.0) {
        return Err(domain(format!(
            "aspect ratio must be finite and positive, got {ell}"
        )));
    }
    Ok(Grid2D {
        nx,
        ny,
        ell,
        dx: ell / (nx - 1) as f64,
        dy: 1.0 / (ny - 1) as f64,
    })
}

impl Grid2D {
    /// x-node count `M`.
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// y-node count `N`.
    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn x_node(&self, j: usize) -> f64 {
        lattice(j, self.nx, self.dx, self.ell)
    }

    pub fn y_node(&self, k: usize) -> f64 {
        lattice(k, self.ny, self.dy, 1.0)
    }

    /// Interior x-nodes per y-row (the Dirichlet columns are eliminated).
    pub fn block_size(&self) -> usize {
        self.nx - 2
    }

    /// `(M − 2)·N`.
    pub fn unknowns(&self) -> usize {
        self.block_size() * self.ny
    }
}

fn lattice(j: usize, count: usize, h: f64, end: f64) -> f64 {
    assert!(j < count, "node index {j} out of range for {count} nodes");
    if j == count - 1 {
        end
    } else {
        j as f64 * h
    }
}
