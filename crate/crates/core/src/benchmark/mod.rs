//! Benchmark objectives with known optima, regret metrics and aggregation.

mod aggregate;
mod functions;
mod mixture;
mod regret;

pub use aggregate::{aggregate, percentile, summarize, Aggregate, DropStats, IterationBand, Summary};
pub use mixture::mixture_demo;
pub use regret::{cumulative_mean_regret, simple_regret, CmrMode, RegretSeries};

use crate::error::{Error, Result};
use crate::space::SearchSpace;

pub mod mixture_constants {
    pub use super::mixture::{ARGMAX, BUDGET, MAX_VALUE, PENALTY, RIPPLE, RIPPLE_SIGNS, SCALE, WEIGHTS};
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A test function with its domain and best attainable value.
#[derive(Clone)]
pub struct Benchmark {
    name: &'static str,
    space: SearchSpace,
    sense: Sense,
    optimum: f64,
    argopt: Vec<f64>,
    /// The optimum was located numerically rather than known in closed form.
    optimum_is_estimate: bool,
    f: fn(&[f64]) -> f64,
}

impl std::fmt::Debug for Benchmark {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Benchmark")
            .field("name", &self.name)
            .field("dim", &self.space.dim())
            .field("optimum", &self.optimum)
            .finish()
    }
}

/// Canonical names of the synthetic suite, in table order.
pub const SYNTHETIC_SUITE: [&str; 10] = [
    "colville",
    "michalewicz",
    "ackley",
    "branin",
    "eggholder",
    "goldstein_price",
    "hartmann6",
    "rosenbrock",
    "six_hump_camel",
    "styblinski_tang",
];

fn canonical(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase()
}

impl Benchmark {
    fn build(
        name: &'static str,
        space: SearchSpace,
        sense: Sense,
        optimum: f64,
        argopt: Vec<f64>,
        optimum_is_estimate: bool,
        f: fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let b = Self {
            name,
            space,
            sense,
            optimum,
            argopt,
            optimum_is_estimate,
            f,
        };
        b.self_check()?;
        Ok(b)
    }

    /// Looks a benchmark up by name; case, `_`, `-` and spaces are ignored.
    pub fn by_name(name: &str) -> Result<Self> {
        use functions as fns;
        let min = Sense::Minimize;
        let cube = SearchSpace::cube;
        match canonical(name).as_str() {
            "ackley" => Self::build(
                "ackley",
                cube(2, -32.768, 32.768)?,
                min,
                0.0,
                vec![0.0; 2],
                false,
                fns::ackley,
            ),
            "branin" => Self::build(
                "branin",
                SearchSpace::new(vec![-5.0, 0.0], vec![10.0, 15.0])?,
                min,
                fns::BRANIN_MIN,
                vec![std::f64::consts::PI, 2.275],
                false,
                fns::branin,
            ),
            "colville" => Self::build(
                "colville",
                cube(4, -10.0, 10.0)?,
                min,
                0.0,
                vec![1.0; 4],
                false,
                fns::colville,
            ),
            "eggholder" => Self::build(
                "eggholder",
                cube(2, -512.0, 512.0)?,
                min,
                fns::EGGHOLDER_MIN,
                fns::EGGHOLDER_ARGMIN.to_vec(),
                false,
                fns::eggholder,
            ),
            "goldsteinprice" | "goldstein" => Self::build(
                "goldstein_price",
                cube(2, -2.0, 2.0)?,
                min,
                3.0,
                vec![0.0, -1.0],
                false,
                fns::goldstein_price,
            ),
            "hartmann6" | "hartmann" => Self::build(
                "hartmann6",
                SearchSpace::unit(6)?,
                min,
                fns::HARTMANN_MIN,
                fns::HARTMANN_ARGMIN.to_vec(),
                false,
                fns::hartmann6,
            ),
            "michalewicz" => Self::build(
                "michalewicz",
                cube(10, 0.0, std::f64::consts::PI)?,
                min,
                fns::MICHALEWICZ_MIN,
                fns::MICHALEWICZ_ARGMIN.to_vec(),
                true,
                fns::michalewicz,
            ),
            "rosenbrock" => Self::build(
                "rosenbrock",
                cube(2, -5.0, 10.0)?,
                min,
                0.0,
                vec![1.0; 2],
                false,
                fns::rosenbrock,
            ),
            "sixhumpcamel" | "camel" => Self::build(
                "six_hump_camel",
                SearchSpace::new(vec![-3.0, -2.0], vec![3.0, 2.0])?,
                min,
                fns::CAMEL_MIN,
                fns::CAMEL_ARGMIN.to_vec(),
                false,
                fns::six_hump_camel,
            ),
            "styblinskitang" => Self::build(
                "styblinski_tang",
                cube(2, -5.0, 5.0)?,
                min,
                2.0 * fns::STYBLINSKI_MIN_PER_DIM,
                vec![fns::STYBLINSKI_ARGMIN; 2],
                false,
                fns::styblinski_tang,
            ),
            "mixturedemo" | "mixture" => Self::build(
                "mixture_demo",
                SearchSpace::unit(10)?,
                Sense::Maximize,
                mixture::MAX_VALUE,
                mixture::ARGMAX.to_vec(),
                true,
                mixture_demo,
            ),
            _ => Err(Error::UnknownBenchmark(name.to_string())),
        }
    }

    /// The ten synthetic functions.
    pub fn synthetic_suite() -> Vec<Self> {
        SYNTHETIC_SUITE
            .iter()
            .map(|n| Self::by_name(n).expect("built-in benchmark"))
            .collect()
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// Best attainable value, in the function's own sense.
    pub fn optimum(&self) -> f64 {
        self.optimum
    }

    pub fn argopt(&self) -> &[f64] {
        &self.argopt
    }

    pub fn optimum_is_estimate(&self) -> bool {
        self.optimum_is_estimate
    }

    /// Evaluates after checking the domain.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.space.check(x)?;
        Ok((self.f)(x))
    }

    /// Evaluates without a domain check.
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }

    /// Objective value in the maximization convention used by the optimizer.
    pub fn to_maximize(&self, value: f64) -> f64 {
        match self.sense {
            Sense::Minimize => -value,
            Sense::Maximize => value,
        }
    }

    pub fn from_maximize(&self, y: f64) -> f64 {
        self.to_maximize(y)
    }

    /// The objective as the optimizer sees it (larger is better).
    pub fn objective(&self) -> impl Fn(&[f64]) -> f64 + Send + Sync + '_ {
        move |x| self.to_maximize((self.f)(x))
    }

    /// Gap between a value and the optimum, never negative beyond rounding.
    /// For numerically located optima a negative gap is clamped to 0.
    pub fn regret(&self, value: f64) -> f64 {
        let r = match self.sense {
            Sense::Minimize => value - self.optimum,
            Sense::Maximize => self.optimum - value,
        };
        if r < 0.0 && self.optimum_is_estimate {
            log::info!(
                "{}: value {value} beats the stored optimum; regret clamped to 0",
                self.name
            );
            return 0.0;
        }
        r
    }

    /// Confirms `f(argopt) == optimum` within 1e-6.
    pub fn self_check(&self) -> Result<()> {
        let v = (self.f)(&self.argopt);
        if (v - self.optimum).abs() > 1e-6 {
            return Err(Error::InvalidConfig(format!(
                "benchmark {}: f(argopt) = {v} but stored optimum is {}",
                self.name, self.optimum
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{sample_uniform, Rng};

    #[test]
    fn suite_loads_and_self_checks() {
        let suite = Benchmark::synthetic_suite();
        assert_eq!(suite.len(), 10);
        let dims: Vec<usize> = suite.iter().map(|b| b.dim()).collect();
        assert_eq!(dims, vec![4, 10, 2, 2, 2, 2, 6, 2, 2, 2]);
        for b in &suite {
            assert!(b.space().contains(b.argopt()), "{}", b.name());
            assert!(b.regret(b.value(b.argopt())).abs() < 1e-6);
        }
    }

    #[test]
    fn lookup_is_lenient_and_rejects_unknown() {
        assert_eq!(Benchmark::by_name("Six hump camel").unwrap().name(), "six_hump_camel");
        assert_eq!(Benchmark::by_name("StyblinskiTang").unwrap().name(), "styblinski_tang");
        assert_eq!(Benchmark::by_name("Goldstein-Price").unwrap().name(), "goldstein_price");
        assert!(matches!(Benchmark::by_name("nope"), Err(Error::UnknownBenchmark(_))));
    }

    #[test]
    fn out_of_domain_rejected() {
        let b = Benchmark::by_name("branin").unwrap();
        assert!(b.evaluate(&[-6.0, 1.0]).is_err());
        assert!(b.evaluate(&[1.0]).is_err());
        assert!((b.evaluate(&[std::f64::consts::PI, 2.275]).unwrap() - 0.397887).abs() < 1e-4);
    }

    #[test]
    fn examples() {
        assert!(
            Benchmark::by_name("ackley")
                .unwrap()
                .evaluate(&[0.0, 0.0])
                .unwrap()
                .abs()
                < 1e-12
        );
        assert_eq!(
            Benchmark::by_name("rosenbrock").unwrap().evaluate(&[1.0, 1.0]).unwrap(),
            0.0
        );
    }

    #[test]
    fn finite_on_random_points() {
        let mut all = Benchmark::synthetic_suite();
        all.push(Benchmark::by_name("mixture_demo").unwrap());
        for b in &all {
            let mut rng = Rng::new(42);
            for x in sample_uniform(b.space(), 100_000, &mut rng) {
                let v = b.value(&x);
                assert!(v.is_finite(), "{} at {:?}", b.name(), x);
                assert!(b.regret(v) >= -1e-9, "{} at {:?}: {}", b.name(), x, b.regret(v));
            }
        }
    }

    #[test]
    fn maximization_wrapper() {
        let b = Benchmark::by_name("branin").unwrap();
        let obj = b.objective();
        assert_eq!(obj(&[0.0, 0.0]), -b.value(&[0.0, 0.0]));
        let m = Benchmark::by_name("mixture").unwrap();
        assert_eq!(m.sense(), Sense::Maximize);
        assert!((m.regret(29.0) - 0.05).abs() < 1e-12);
    }
}
