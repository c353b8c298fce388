//! 2×2 unitary matrices: products, adjoints, integer powers, and `2^k`-th
//! roots on the principal eigenphase branch.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Tolerance on `U·U† = I` and `|det U| = 1` for [`Unitary2::new`].
pub const UNITARITY_TOL: f64 = 1e-12;

/// Eigenphases this close to `−π` are treated as `+π`.
const BRANCH_SNAP: f64 = 1e-12;

/// Below this half-gap between eigenphases the sine ratio uses its Taylor
/// expansion.
const SMALL_ANGLE: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitaryError {
    #[error("matrix is not unitary: max |U·U† − I| = {deviation:.3e} exceeds {tol:.1e}")]
    NotUnitary { deviation: f64, tol: f64 },
    #[error("matrix entry is not finite")]
    NotFinite,
}

/// A 2×2 complex matrix known to be unitary.
#[derive(Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

impl fmt::Debug for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

impl fmt::Display for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.m.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[{:.6}, {:.6}]", row[0], row[1])?;
        }
        Ok(())
    }
}

impl Unitary2 {
    /// Validates unitarity at [`UNITARITY_TOL`].
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self, UnitaryError> {
        Self::with_tolerance(m, UNITARITY_TOL)
    }

    pub fn with_tolerance(m: [[Complex64; 2]; 2], tol: f64) -> Result<Self, UnitaryError> {
        if m.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(UnitaryError::NotFinite);
        }
        let u = Unitary2 { m };
        let deviation = u.unitarity_deviation().max((u.det().norm() - 1.0).abs());
        if deviation > tol {
            return Err(UnitaryError::NotUnitary { deviation, tol });
        }
        Ok(u)
    }

    fn from_raw(m: [[Complex64; 2]; 2]) -> Self {
        Unitary2 { m }
    }

    pub fn identity() -> Self {
        Self::from_raw([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Self::from_raw([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        let i = Complex64::i();
        Self::from_raw([[ZERO, -i], [i, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self::from_raw([[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self::from_raw([[h, h], [h, -h]])
    }

    pub fn phase_s() -> Self {
        Self::from_raw([[ONE, ZERO], [ZERO, Complex64::i()]])
    }

    pub fn phase_t() -> Self {
        Self::from_raw([[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, FRAC_PI_4)]])
    }

    /// `e^{iφ}·I`.
    pub fn global_phase(phi: f64) -> Self {
        let p = Complex64::from_polar(1.0, phi);
        Self::from_raw([[p, ZERO], [ZERO, p]])
    }

    /// Haar-distributed sample: Gaussian complex matrix, then Gram–Schmidt
    /// on the columns with the phases of the `R` diagonal divided out.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut gauss = || {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        };
        loop {
            let (a, c, b, d) = (gauss(), gauss(), gauss(), gauss());
            let n0 = (a.norm_sqr() + c.norm_sqr()).sqrt();
            if n0 < 1e-8 {
                continue;
            }
            let (a, c) = (a / n0, c / n0);
            let proj = a.conj() * b + c.conj() * d;
            let (b, d) = (b - proj * a, d - proj * c);
            let n1 = (b.norm_sqr() + d.norm_sqr()).sqrt();
            if n1 < 1e-8 {
                continue;
            }
            return Self::from_raw([[a, b / n1], [c, d / n1]]);
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// `max |(U·U†)_{ij} − δ_{ij}|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = mul_raw(&self.m, &self.dagger().m);
        let id = Self::identity().m;
        max_abs_diff(&p, &id)
    }

    /// Maximum entrywise absolute difference.
    pub fn distance(&self, other: &Unitary2) -> f64 {
        max_abs_diff(&self.m, &other.m)
    }

    pub fn multiply(&self, other: &Unitary2) -> Unitary2 {
        Self::from_raw(mul_raw(&self.m, &other.m))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Unitary2 {
        let m = &self.m;
        Self::from_raw([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// `self^e` by repeated squaring; negative exponents use the adjoint.
    pub fn power(&self, e: i64) -> Unitary2 {
        let mut base = if e < 0 { self.dagger() } else { *self };
        let mut remaining = e.unsigned_abs();
        let mut acc = Self::identity();
        while remaining > 0 {
            if remaining & 1 == 1 {
                acc = acc.multiply(&base);
            }
            remaining >>= 1;
            if remaining > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    /// Principal eigenphases `θ_1 ≥ θ_2` in `(−π, π]`.
    pub fn eigenphases(&self) -> (f64, f64) {
        let [[a, b], [c, d]] = self.m;
        let half_tr = (a + d) * 0.5;
        let half_diff = (a - d) * 0.5;
        // discriminant without the tr²/4 − det cancellation
        let s = (half_diff * half_diff + b * c).sqrt();
        let t1 = principal_arg(half_tr + s);
        let t2 = principal_arg(half_tr - s);
        if t1 >= t2 {
            (t1, t2)
        } else {
            (t2, t1)
        }
    }

    /// A unitary `V` with `V^(2^k) = self`, taking every eigenphase on the
    /// principal branch `(−π, π]` and dividing it by `2^k`.
    ///
    /// `k = 0` returns `self` unchanged. Scalar matrices return the scalar
    /// root directly.
    pub fn unitary_root(&self, k: u32) -> Unitary2 {
        if k == 0 {
            return *self;
        }
        let scale = 0.5f64.powi(k as i32);
        let [[a, b], [c, d]] = self.m;
        if b.norm() <= f64::EPSILON && c.norm() <= f64::EPSILON && (a - d).norm() <= f64::EPSILON {
            return Self::global_phase(principal_arg((a + d) * 0.5) * scale);
        }

        // With eigenphases φ ± α, W = e^{−iφ}·U has eigenvalues e^{±iα} and
        // W^t = cos(tα)·I + (sin(tα)/sin α)·(W − cos α·I).
        let (t1, t2) = self.eigenphases();
        let phi = 0.5 * (t1 + t2);
        let alpha = 0.5 * (t1 - t2);
        let w = Complex64::from_polar(1.0, -phi);
        let cos_a = Complex64::new(alpha.cos(), 0.0);
        let ratio = sine_ratio(alpha, scale);
        let cos_ta = Complex64::new((alpha * scale).cos(), 0.0);
        let outer = Complex64::from_polar(1.0, phi * scale);
        let entry = |r: usize, col: usize| {
            let delta = if r == col { ONE } else { ZERO };
            outer * (cos_ta * delta + ratio * (w * self.m[r][col] - cos_a * delta))
        };
        Self::from_raw([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        self.multiply(&rhs)
    }
}

impl<'a> Mul<&'a Unitary2> for &'a Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: &'a Unitary2) -> Unitary2 {
        self.multiply(rhs)
    }
}

fn mul_raw(x: &[[Complex64; 2]; 2], y: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = x[r][0] * y[0][c] + x[r][1] * y[1][c];
        }
    }
    out
}

fn max_abs_diff(x: &[[Complex64; 2]; 2], y: &[[Complex64; 2]; 2]) -> f64 {
    x.iter()
        .flatten()
        .zip(y.iter().flatten())
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

/// `arg z` in `(−π, π]`, with values within numerical noise of `−π` moved
/// to `+π`.
fn principal_arg(z: Complex64) -> f64 {
    let t = z.arg();
    if t <= -PI + BRANCH_SNAP {
        PI
    } else {
        t
    }
}

/// `sin(tα) / sin(α)` for `α ∈ [0, π)`, `t ∈ (0, 1]`.
fn sine_ratio(alpha: f64, t: f64) -> Complex64 {
    let r = if alpha.abs() < SMALL_ANGLE {
        t * (1.0 + alpha * alpha * (1.0 - t * t) / 6.0)
    } else {
        (t * alpha).sin() / alpha.sin()
    };
    Complex64::new(r, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_unitary() {
        let m = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(
            Unitary2::new(m),
            Err(UnitaryError::NotUnitary { .. })
        ));
        let nan = [[c(f64::NAN, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert_eq!(Unitary2::new(nan), Err(UnitaryError::NotFinite));
    }

    #[test]
    fn multiply_examples() {
        let x = Unitary2::pauli_x();
        assert_eq!(x * x, Unitary2::identity());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = Unitary2::random(&mut rng);
        assert_eq!(Unitary2::identity() * u, u);
        let zx = Unitary2::pauli_z() * x;
        let expected = [[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]];
        assert_eq!(zx.entries(), expected);
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(Unitary2::pauli_x().dagger(), Unitary2::pauli_x());
        assert_eq!(Unitary2::phase_s().dagger().entries()[1][1], c(0.0, -1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let u = Unitary2::random(&mut rng);
            assert!((u * u.dagger()).distance(&Unitary2::identity()) < 1e-12);
        }
    }

    #[test]
    fn root_of_x() {
        let v = Unitary2::pauli_x().unitary_root(1);
        let expected = [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]];
        assert!(max_abs_diff(&v.entries(), &expected) < 1e-15);
        assert!((v * v).distance(&Unitary2::pauli_x()) < 1e-15);
    }

    #[test]
    fn root_of_z_takes_principal_branch() {
        let v = Unitary2::pauli_z().unitary_root(1);
        let expected = Unitary2::phase_s();
        assert!(v.distance(&expected) < 1e-15, "{v:?}");
    }

    #[test]
    fn root_of_identity_and_scalars() {
        for k in 0..10 {
            assert_eq!(Unitary2::identity().unitary_root(k), Unitary2::identity());
        }
        let v = Unitary2::global_phase(-PI).unitary_root(2);
        assert!(v.distance(&Unitary2::global_phase(PI / 4.0)) < 1e-15);
    }

    #[test]
    fn root_k0_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = Unitary2::random(&mut rng);
        assert_eq!(u.unitary_root(0), u);
    }

    #[test]
    fn root_near_scalar_is_stable() {
        // eigenphase gap of 1e-9 around a global phase
        let d = Unitary2::new([
            [Complex64::from_polar(1.0, 0.3 + 1e-9), ZERO],
            [ZERO, Complex64::from_polar(1.0, 0.3)],
        ])
        .unwrap();
        let h = Unitary2::hadamard();
        let u = h * d * h;
        for k in 1..=6 {
            let v = u.unitary_root(k);
            assert!(v.unitarity_deviation() < 1e-14);
            assert!(v.power(1 << k).distance(&u) < 1e-12);
        }
    }

    #[test]
    fn huge_k_tends_to_identity() {
        let v = Unitary2::pauli_y().unitary_root(200);
        assert!(v.distance(&Unitary2::identity()) < 1e-15);
    }

    #[test]
    fn power_examples() {
        let v = Unitary2::pauli_x().unitary_root(1);
        assert!(v.power(2).distance(&Unitary2::pauli_x()) < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = Unitary2::random(&mut rng);
        assert_eq!(u.power(0), Unitary2::identity());
        assert_eq!(Unitary2::pauli_x().power(-1), Unitary2::pauli_x());
        assert!((u.power(-3) * u.power(3)).distance(&Unitary2::identity()) < 1e-13);
    }

    #[test]
    fn named_gates_are_unitary() {
        for u in [
            Unitary2::identity(),
            Unitary2::pauli_x(),
            Unitary2::pauli_y(),
            Unitary2::pauli_z(),
            Unitary2::hadamard(),
            Unitary2::phase_s(),
            Unitary2::phase_t(),
        ] {
            assert!(Unitary2::new(u.entries()).is_ok());
        }
    }
}
