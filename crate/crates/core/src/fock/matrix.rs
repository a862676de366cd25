//! Dense complex matrices stored as separate real and imaginary parts.
//!
//! Real `f64` products go through nalgebra's blocked kernels, which are far
//! faster than its generic complex path at the sizes used here.

use nalgebra::DMatrix;

use crate::error::{LgiError, Result};
use crate::numerics::Complex;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    re: DMatrix<f64>,
    im: DMatrix<f64>,
}

impl OperatorMatrix {
    pub fn zeros(n: usize) -> Self {
        OperatorMatrix {
            re: DMatrix::zeros(n, n),
            im: DMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        OperatorMatrix {
            re: DMatrix::identity(n, n),
            im: DMatrix::zeros(n, n),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(d: &[Complex]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, z) in d.iter().enumerate() {
            m.set(i, i, *z);
        }
        m
    }

    /// `|u><v|`.
    pub fn outer(u: &[Complex], v: &[Complex]) -> Self {
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.re.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        Complex::new(self.re[(i, j)], self.im[(i, j)])
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex) {
        self.re[(i, j)] = z.re;
        self.im[(i, j)] = z.im;
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            re: self.re.transpose(),
            im: -self.im.transpose(),
        }
    }

    /// Complex product with three real products:
    /// `re = AC - BD`, `im = (A + B)(C + D) - AC - BD`.
    pub fn mul(&self, other: &Self) -> Self {
        let ac = &self.re * &other.re;
        let bd = &self.im * &other.im;
        let cross = (&self.re + &self.im) * (&other.re + &other.im);
        OperatorMatrix {
            im: cross - &ac - &bd,
            re: ac - bd,
        }
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        OperatorMatrix {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        OperatorMatrix {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn scale(&self, z: Complex) -> Self {
        OperatorMatrix {
            re: &self.re * z.re - &self.im * z.im,
            im: &self.re * z.im + &self.im * z.re,
        }
    }

    /// `self + z I`.
    pub fn add_identity(&self, z: Complex) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            out.re[(i, i)] += z.re;
            out.im[(i, i)] += z.im;
        }
        out
    }

    pub fn trace(&self) -> Complex {
        Complex::new(self.re.trace(), self.im.trace())
    }

    /// `Tr[self * other]` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex {
        let n = self.dim();
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        acc
    }

    /// Largest absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        let n = self.dim();
        let mut m = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                m = m.max(self.get(i, j).norm());
            }
        }
        m
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        OperatorMatrix {
            re: self.re.view((0, 0), (k, k)).into_owned(),
            im: self.im.view((0, 0), (k, k)).into_owned(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.dim()).map(|i| self.get(i, j)).collect()
    }

    /// Solves `self * X = rhs` through the real `2n x 2n` embedding.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.dim();
        let mut a = DMatrix::zeros(2 * n, 2 * n);
        a.view_mut((0, 0), (n, n)).copy_from(&self.re);
        a.view_mut((n, n), (n, n)).copy_from(&self.re);
        a.view_mut((0, n), (n, n)).copy_from(&(-&self.im));
        a.view_mut((n, 0), (n, n)).copy_from(&self.im);
        let mut b = DMatrix::zeros(2 * n, n);
        b.view_mut((0, 0), (n, n)).copy_from(&rhs.re);
        b.view_mut((n, 0), (n, n)).copy_from(&rhs.im);
        let x = a
            .lu()
            .solve(&b)
            .ok_or(LgiError::SingularForm { det_abs: 0.0 })?;
        Ok(OperatorMatrix {
            re: x.view((0, 0), (n, n)).into_owned(),
            im: x.view((n, 0), (n, n)).into_owned(),
        })
    }

    /// Matrix exponential by scaling and squaring with a degree-13 Padé
    /// approximant.
    pub fn expm(&self) -> Result<Self> {
        const THETA13: f64 = 5.371_920_351_148_152;
        const B: [f64; 14] = [
            64_764_752_532_480_000.0,
            32_382_376_266_240_000.0,
            7_771_770_303_897_600.0,
            1_187_353_796_428_800.0,
            129_060_195_264_000.0,
            10_559_470_521_600.0,
            670_442_572_800.0,
            33_522_128_640.0,
            1_323_241_920.0,
            40_840_800.0,
            960_960.0,
            16_380.0,
            182.0,
            1.0,
        ];
        let n = self.dim();
        let norm = self.norm_one();
        if !norm.is_finite() {
            return Err(LgiError::NonFinite("expm"));
        }
        let s = if norm > THETA13 {
            (norm / THETA13).log2().ceil() as i32
        } else {
            0
        };
        let a = self.scale(Complex::new(0.5f64.powi(s), 0.0));
        let a2 = a.mul(&a);
        let a4 = a2.mul(&a2);
        let a6 = a4.mul(&a2);
        let r = |z: f64| Complex::new(z, 0.0);
        let lin = |c6: f64, c4: f64, c2: f64| a6.scale(r(c6)).add(&a4.scale(r(c4))).add(&a2.scale(r(c2)));

        let u_inner = a6
            .mul(&lin(B[13], B[11], B[9]))
            .add(&lin(B[7], B[5], B[3]))
            .add_identity(r(B[1]));
        let u = a.mul(&u_inner);
        let v = a6
            .mul(&lin(B[12], B[10], B[8]))
            .add(&lin(B[6], B[4], B[2]))
            .add_identity(r(B[0]));
        debug_assert_eq!(u.dim(), n);
        let mut x = v.sub(&u).solve(&v.add(&u))?;
        for _ in 0..s {
            x = x.mul(&x);
        }
        Ok(x)
    }
}
