use crate::error::{Error, Result};

/// A first-order system `y' = f(t, y)`.
pub trait OdeSystem {
    fn dimension(&self) -> usize;
    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]);
}

/// Wraps a closure as an [`OdeSystem`].
pub struct FnSystem<F> {
    dimension: usize,
    f: F,
}

impl<F> FnSystem<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    pub fn new(dimension: usize, f: F) -> Self {
        FnSystem { dimension, f }
    }
}

impl<F> OdeSystem for FnSystem<F>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn rhs(&self, t: f64, y: &[f64], dydt: &mut [f64]) {
        (self.f)(t, y, dydt)
    }
}

/// Sampled solution of an ODE, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub ts: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ts.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &[f64])> {
        self.ts
            .last()
            .map(|&t| (t, self.states.last().unwrap().as_slice()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.ts
            .iter()
            .copied()
            .zip(self.states.iter().map(|s| s.as_slice()))
    }
}

/// Classical fixed-step RK4 from `t0` to `t1` in `steps` steps.
pub fn rk4<S: OdeSystem + ?Sized>(
    system: &S,
    y0: &[f64],
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Trajectory> {
    rk4_projected(system, y0, t0, t1, steps, |_, _| {})
}

/// RK4 with a projection applied to the state after every step.
///
/// Used for stabilized transport: the projection removes drift off the
/// constraint manifold (unit norm, orthogonality to the tangent).
pub fn rk4_projected<S, P>(
    system: &S,
    y0: &[f64],
    t0: f64,
    t1: f64,
    steps: usize,
    mut project: P,
) -> Result<Trajectory>
where
    S: OdeSystem + ?Sized,
    P: FnMut(f64, &mut [f64]),
{
    if steps == 0 {
        return Err(Error::InvalidInput("rk4 needs at least one step".into()));
    }
    if !(t1 > t0) {
        return Err(Error::InvalidInput(format!(
            "rk4 window must satisfy t1 > t0 (got [{t0}, {t1}])"
        )));
    }
    let dim = system.dimension();
    if y0.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: y0.len(),
        });
    }

    let h = (t1 - t0) / steps as f64;
    let mut ts = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut y = y0.to_vec();
    ts.push(t0);
    states.push(y.clone());

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for i in 0..steps {
        let t = t0 + i as f64 * h;
        system.rhs(t, &y, &mut k1);
        for j in 0..dim {
            tmp[j] = y[j] + 0.5 * h * k1[j];
        }
        system.rhs(t + 0.5 * h, &tmp, &mut k2);
        for j in 0..dim {
            tmp[j] = y[j] + 0.5 * h * k2[j];
        }
        system.rhs(t + 0.5 * h, &tmp, &mut k3);
        for j in 0..dim {
            tmp[j] = y[j] + h * k3[j];
        }
        system.rhs(t + h, &tmp, &mut k4);
        for j in 0..dim {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        // last node lands exactly on t1
        let t_next = if i + 1 == steps {
            t1
        } else {
            t0 + (i + 1) as f64 * h
        };
        project(t_next, &mut y);
        if y.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteState { t: t_next });
        }
        ts.push(t_next);
        states.push(y.clone());
    }
    Ok(Trajectory { ts, states })
}
