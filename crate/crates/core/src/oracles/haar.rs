use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix, Schur};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Eigenphases `θ_1 <= … <= θ_N` of a unitary matrix, each in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSample {
    thetas: Vec<f64>,
}

impl PhaseSample {
    pub fn new(mut thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidArgument("need at least one phase".into()));
        }
        if thetas.iter().any(|t| !(0.0..TAU).contains(t)) {
            return Err(Error::InvalidArgument("phases must lie in [0, 2π)".into()));
        }
        thetas.sort_by(f64::total_cmp);
        Ok(Self { thetas })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

const SCHUR_MAX_ITER: usize = 10_000;

/// Draws the eigenphases of a Haar-distributed `N×N` unitary.
///
/// A complex Ginibre matrix is QR-factorised and `Q` is right-multiplied by
/// `diag(r_jj / |r_jj|)`, which makes the factorisation unique and the result
/// Haar distributed (Mezzadri's correction). The eigenvalues then come from a
/// complex Schur decomposition.
pub fn sample_cue_phases<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PhaseSample> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re * scale, im * scale)
    });
    let (q, r) = ginibre.qr().unpack();
    let mut unitary = q;
    for j in 0..n {
        let d = r[(j, j)];
        let modulus = d.norm();
        if !(modulus > 0.0 && modulus.is_finite()) {
            return Err(Error::Sampler(format!("singular R factor at column {j}")));
        }
        let phase = d / modulus;
        for i in 0..n {
            unitary[(i, j)] *= phase;
        }
    }
    let schur = Schur::try_new(unitary, f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Sampler("complex Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    let thetas = (0..n)
        .map(|j| {
            let lambda = t[(j, j)];
            let theta = lambda.im.atan2(lambda.re).rem_euclid(TAU);
            // rem_euclid can round up to exactly 2π
            if theta >= TAU {
                0.0
            } else {
                theta
            }
        })
        .collect();
    PhaseSample::new(thetas)
}

/// Phases with `|sin(θ/2)|` below this are treated as the pole at `θ = 0`.
pub(crate) const POLE_THRESHOLD: f64 = 1e-300;

/// `(|V_U(0)|, |V'_U(0)|)` from the eigenphases:
/// `|V| = ∏ 2|sin(θ_n/2)|` and `|V'| = |V| · |Σ cot(θ_n/2)| / 2`.
pub fn v_values(phases: &PhaseSample) -> Result<(f64, f64)> {
    let mut abs_v = 1.0;
    let mut cot_sum = 0.0;
    for &theta in phases.thetas() {
        let (s, c) = (theta / 2.0).sin_cos();
        if s.abs() < POLE_THRESHOLD {
            return Err(Error::CotangentPole);
        }
        abs_v *= 2.0 * s.abs();
        cot_sum += c / s;
    }
    Ok((abs_v, abs_v * 0.5 * cot_sum.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn v_values_examples() {
        let (v, dv) = v_values(&PhaseSample::new(vec![PI]).unwrap()).unwrap();
        assert!(close(v, 2.0) && close(dv, 0.0));
        let (v, dv) = v_values(&PhaseSample::new(vec![FRAC_PI_2]).unwrap()).unwrap();
        assert!(close(v, SQRT_2) && close(dv, SQRT_2 / 2.0));
        let (v, dv) = v_values(&PhaseSample::new(vec![PI, PI]).unwrap()).unwrap();
        assert!(close(v, 4.0) && close(dv, 0.0));
        let pole = PhaseSample::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(v_values(&pole), Err(Error::CotangentPole));
    }

    #[test]
    fn phase_sample_contract() {
        assert!(PhaseSample::new(vec![]).is_err());
        assert!(PhaseSample::new(vec![TAU]).is_err());
        assert!(PhaseSample::new(vec![-0.1]).is_err());
        let s = PhaseSample::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.thetas(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn single_phase_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 100_000;
        let (mut re, mut im) = (0.0, 0.0);
        for _ in 0..draws {
            let theta = sample_cue_phases(1, &mut rng).unwrap().thetas()[0];
            re += theta.cos();
            im += theta.sin();
        }
        let modulus = (re * re + im * im).sqrt() / draws as f64;
        assert!(modulus < 0.02, "{modulus}");
    }

    #[test]
    fn phases_sorted_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..8 {
            let s = sample_cue_phases(n, &mut rng).unwrap();
            assert_eq!(s.len(), n);
            assert!(s.thetas().windows(2).all(|w| w[0] <= w[1]));
            assert!(s.thetas().iter().all(|t| (0.0..TAU).contains(t)));
        }
    }

    #[test]
    fn two_by_two_level_repulsion() {
        // E|e^{iθ₁} - e^{iθ₂}|² = ∫(2-2cos φ)² / ∫(2-2cos φ) = 6/2 = 3
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let draws = 100_000;
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for _ in 0..draws {
            let s = sample_cue_phases(2, &mut rng).unwrap();
            let d = s.thetas()[1] - s.thetas()[0];
            let x = 2.0 - 2.0 * d.cos();
            acc += x;
            acc2 += x * x;
        }
        let mean = acc / draws as f64;
        let sd = (acc2 / draws as f64 - mean * mean).sqrt();
        assert!(
            (mean - 3.0).abs() < 4.0 * sd / (draws as f64).sqrt(),
            "{mean}"
        );
    }

    #[test]
    fn trace_second_moment_is_one() {
        // E|tr U|² = 1 for Haar U(N), N >= 1
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let draws = 50_000;
        let mut acc = 0.0;
        let mut acc2 = 0.0;
        for _ in 0..draws {
            let s = sample_cue_phases(4, &mut rng).unwrap();
            let (re, im) = s
                .thetas()
                .iter()
                .fold((0.0, 0.0), |(a, b), t| (a + t.cos(), b + t.sin()));
            let x = re * re + im * im;
            acc += x;
            acc2 += x * x;
        }
        let mean = acc / draws as f64;
        let sd = (acc2 / draws as f64 - mean * mean).sqrt();
        assert!(
            (mean - 1.0).abs() < 4.0 * sd / (draws as f64).sqrt(),
            "{mean}"
        );
    }
}
