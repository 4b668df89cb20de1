use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::rng::{mix, stream, Stream};
use crate::expr::{eval, Expr};
use crate::{Error, Result};

/// Samples per chunk on the parallel path.
pub const CHUNK: usize = 1 << 16;

/// Smallest sample count the averaging routines accept.
pub const MIN_SAMPLES: usize = 1000;

/// The ball (or its boundary sphere) of radius `radius` about `center`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(1..=10).contains(&center.len()) {
            return Err(Error::invalid(format!(
                "dimension {} is outside 1..=10",
                center.len()
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("radius {radius} must be positive and finite")));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("center has a non-finite coordinate"));
        }
        Ok(BallSpec { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }
}

fn gaussian_direction(n: usize, rng: &mut Stream, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for o in out.iter_mut().take(n) {
            let z: f64 = rng.sample(StandardNormal);
            *o = z;
            norm2 += z * z;
        }
        if norm2 > 0.0 {
            let inv = 1.0 / norm2.sqrt();
            out.iter_mut().take(n).for_each(|o| *o *= inv);
            return;
        }
    }
}

/// Uniform point in the ball: Gaussian direction, radius `h·U^(1/n)`.
pub fn sample_ball_into(spec: &BallSpec, rng: &mut Stream, out: &mut [f64]) {
    let n = spec.dim();
    gaussian_direction(n, rng, out);
    let u: f64 = rng.random();
    let r = spec.radius * u.powf(1.0 / n as f64);
    for (o, c) in out.iter_mut().zip(&spec.center) {
        *o = c + r * *o;
    }
}

/// Uniform point on the sphere of radius `h`.
pub fn sample_sphere_into(spec: &BallSpec, rng: &mut Stream, out: &mut [f64]) {
    gaussian_direction(spec.dim(), rng, out);
    for (o, c) in out.iter_mut().zip(&spec.center) {
        *o = c + spec.radius * *o;
    }
}

pub fn sample_ball(spec: &BallSpec, rng: &mut Stream) -> Vec<f64> {
    let mut p = vec![0.0; spec.dim()];
    sample_ball_into(spec, rng, &mut p);
    p
}

pub fn sample_sphere(spec: &BallSpec, rng: &mut Stream) -> Vec<f64> {
    let mut p = vec![0.0; spec.dim()];
    sample_sphere_into(spec, rng, &mut p);
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Ball,
    Sphere,
}

/// Running sums of `g − shift`. Chunks merge by plain addition.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    sum: f64,
    sumsq: f64,
    count: usize,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.sum += v;
        self.sumsq += v * v;
        self.count += 1;
    }

    fn merge(&mut self, o: &Moments) {
        self.sum += o.sum;
        self.sumsq += o.sumsq;
        self.count += o.count;
    }
}

fn accumulate(
    g: &Expr,
    spec: &BallSpec,
    region: Region,
    shift: f64,
    count: usize,
    rng: &mut Stream,
) -> Result<Moments> {
    let mut m = Moments::default();
    let mut p = vec![0.0; spec.dim()];
    for _ in 0..count {
        match region {
            Region::Ball => sample_ball_into(spec, rng, &mut p),
            Region::Sphere => sample_sphere_into(spec, rng, &mut p),
        }
        let v = eval(g, &p).map_err(|e| Error::at(format!("sample point {p:?}"), e))?;
        m.push(v - shift);
    }
    Ok(m)
}

fn finish(m: Moments, shift: f64, seed: u64) -> McEstimate {
    let n = m.count as f64;
    let mean = m.sum / n;
    let var = ((m.sumsq - m.sum * mean) / (n - 1.0)).max(0.0);
    McEstimate {
        estimate: shift + mean,
        stderr: (var / n).sqrt(),
        samples: m.count,
        seed,
    }
}

fn prepare(g: &Expr, spec: &BallSpec, region: Region, samples: usize) -> Result<f64> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    if region == Region::Sphere && spec.dim() < 2 {
        return Err(Error::invalid("sphere averages need dimension at least 2"));
    }
    if g.max_var() > spec.dim() {
        return Err(Error::invalid(format!(
            "expression uses x{} in dimension {}",
            g.max_var(),
            spec.dim()
        )));
    }
    // Centering on g(center) keeps the variance sums well conditioned.
    Ok(eval(g, &spec.center).unwrap_or(0.0))
}

/// Sequential Monte Carlo average of `g` over the region. Bit-identical for
/// identical arguments.
pub fn mc_average(
    g: &Expr,
    spec: &BallSpec,
    region: Region,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    let shift = prepare(g, spec, region, samples)?;
    let m = accumulate(g, spec, region, shift, samples, &mut stream(seed))?;
    Ok(finish(m, shift, seed))
}

/// Chunked average: chunk `i` draws from `mix(seed, i)` and chunks merge in
/// index order, so the result depends on `seed` but not on `threads`. It
/// differs from [`mc_average`] by sampling noise only.
pub fn mc_average_chunked(
    g: &Expr,
    spec: &BallSpec,
    region: Region,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<McEstimate> {
    let shift = prepare(g, spec, region, samples)?;
    let chunks = samples.div_ceil(CHUNK);
    let chunk_len = |i: usize| CHUNK.min(samples - i * CHUNK);
    let threads = threads.clamp(1, chunks);

    let run = |worker: usize| -> Result<Vec<(usize, Moments)>> {
        (worker..chunks)
            .step_by(threads)
            .map(|i| {
                let mut rng = stream(mix(seed, i as u64));
                accumulate(g, spec, region, shift, chunk_len(i), &mut rng).map(|m| (i, m))
            })
            .collect()
    };
    let mut parts: Vec<(usize, Moments)> = if threads == 1 {
        run(0)?
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads).map(|w| s.spawn(move || run(w))).collect();
            let mut all = Vec::with_capacity(chunks);
            for h in handles {
                all.extend(h.join().expect("sampling worker panicked")?);
            }
            Ok::<_, Error>(all)
        })?
    };
    parts.sort_by_key(|(i, _)| *i);
    let mut total = Moments::default();
    for (_, m) in &parts {
        total.merge(m);
    }
    Ok(finish(total, shift, seed))
}

pub fn mc_ball_average(g: &Expr, spec: &BallSpec, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_average(g, spec, Region::Ball, samples, seed)
}

pub fn mc_sphere_average(g: &Expr, spec: &BallSpec, samples: usize, seed: u64) -> Result<McEstimate> {
    mc_average(g, spec, Region::Sphere, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn spec_validation() {
        assert!(BallSpec::new(vec![], 1.0).is_err());
        assert!(BallSpec::new(vec![0.0; 11], 1.0).is_err());
        assert!(BallSpec::new(vec![0.0], 0.0).is_err());
        assert!(BallSpec::new(vec![f64::NAN], 1.0).is_err());
        assert!(BallSpec::new(vec![0.0; 10], 1.0).is_ok());
    }

    #[test]
    fn constant_field_is_exact() {
        let spec = BallSpec::new(vec![0.3, -0.2], 0.7).unwrap();
        let m = mc_ball_average(&parse("1").unwrap(), &spec, 5000, 1).unwrap();
        assert_eq!(m.estimate, 1.0);
        assert_eq!(m.stderr, 0.0);
        assert_eq!(m.samples, 5000);
    }

    #[test]
    fn too_few_samples_and_bad_dims() {
        let spec = BallSpec::new(vec![0.0, 0.0], 1.0).unwrap();
        let g = parse("x").unwrap();
        assert!(mc_ball_average(&g, &spec, 999, 1).is_err());
        let line = BallSpec::new(vec![0.0], 1.0).unwrap();
        assert!(mc_sphere_average(&g, &line, 1000, 1).is_err());
        assert!(mc_ball_average(&parse("z").unwrap(), &spec, 1000, 1).is_err());
    }

    #[test]
    fn domain_error_reports_point() {
        let spec = BallSpec::new(vec![0.0, 0.0], 1.0).unwrap();
        let err = mc_ball_average(&parse("log(x)").unwrap(), &spec, 1000, 3).unwrap_err();
        assert!(matches!(err, Error::At { .. }));
        assert!(err.to_string().starts_with("sample point ["));
    }

    #[test]
    fn chunked_is_thread_count_invariant() {
        let spec = BallSpec::new(vec![1.0, 2.0], 0.5).unwrap();
        let g = parse("x^2 - y^2").unwrap();
        let n = 3 * CHUNK + 17;
        let one = mc_average_chunked(&g, &spec, Region::Ball, n, 9, 1).unwrap();
        let four = mc_average_chunked(&g, &spec, Region::Ball, n, 9, 4).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.samples, n);
    }
}
