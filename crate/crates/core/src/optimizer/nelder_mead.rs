use alloc::vec;
use alloc::vec::Vec;

/// Derivative-free simplex minimizer.
#[derive(Clone, Debug, PartialEq)]
pub struct NelderMead {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    pub initial_step: f64,
    pub max_iterations: usize,
    /// Converged once the spread of function values over the simplex is below this.
    pub tolerance: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 0.5,
            max_iterations: 2000,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, start: &[f64]) -> Minimum {
        let n = start.len();
        let mut evaluations = 0usize;
        let mut eval = |x: &[f64]| {
            evaluations += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(start.to_vec());
        for i in 0..n {
            let mut x = start.to_vec();
            x[i] += self.initial_step;
            simplex.push(x);
        }
        let mut values: Vec<f64> = simplex.iter().map(|x| eval(x)).collect();

        let mut iterations = 0;
        let mut converged = false;
        let mut centroid = vec![0.0; n];
        while iterations < self.max_iterations {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            if n == 0 || values[n] - values[0] <= self.tolerance {
                converged = true;
                break;
            }
            iterations += 1;

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for x in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }
            let along =
                |t: f64| -> Vec<f64> { centroid.iter().zip(&simplex[n]).map(|(c, w)| c + t * (w - c)).collect() };

            let reflected = along(-self.reflection);
            let fr = eval(&reflected);
            if fr < values[0] {
                let expanded = along(-self.reflection * self.expansion);
                let fe = eval(&expanded);
                if fe < fr {
                    simplex[n] = expanded;
                    values[n] = fe;
                } else {
                    simplex[n] = reflected;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n] = reflected;
                values[n] = fr;
                continue;
            }
            let (candidate, fc) = if fr < values[n] {
                let x = along(-self.reflection * self.contraction);
                let v = eval(&x);
                (x, v)
            } else {
                let x = along(self.contraction);
                let v = eval(&x);
                (x, v)
            };
            if fc < values[n].min(fr) {
                simplex[n] = candidate;
                values[n] = fc;
                continue;
            }
            let best = simplex[0].clone();
            for i in 1..=n {
                let shrunk: Vec<f64> = best.iter().zip(&simplex[i]).map(|(b, x)| b + self.shrink * (x - b)).collect();
                values[i] = eval(&shrunk);
                simplex[i] = shrunk;
            }
        }

        let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
        Minimum { point: simplex[best].clone(), value: values[best], iterations, evaluations, converged }
    }
}
