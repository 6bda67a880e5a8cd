//! Dense f64 containers for signals, kernels and small matrices.
//!
//! All spatial reads outside the stored support are defined to be zero
//! (zero extension over the integer plane). Layout is row-major with the
//! last index fastest; boundary handling is by branch-on-index, never by
//! materializing padded copies.

use crate::error::{Error, Result};

/// Batched multi-channel 2D feature map, indexed `(n, c, i, j)`.
///
/// `n = 0` is allowed so that an empty dataset can carry a well-typed
/// image block; channel and spatial dims must be at least 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    n: usize,
    c: usize,
    h: usize,
    w: usize,
    data: Vec<f64>,
}

impl Signal {
    pub fn zeros(n: usize, c: usize, h: usize, w: usize) -> Signal {
        assert!(c >= 1 && h >= 1 && w >= 1, "signal dims must be >= 1");
        Signal { n, c, h, w, data: vec![0.0; n * c * h * w] }
    }

    pub fn from_vec(n: usize, c: usize, h: usize, w: usize, data: Vec<f64>) -> Result<Signal> {
        if c < 1 || h < 1 || w < 1 {
            return Err(Error::invalid("signal dims must be >= 1"));
        }
        if data.len() != n * c * h * w {
            return Err(Error::shape(format!(
                "signal data length {} != {}x{}x{}x{}",
                data.len(),
                n,
                c,
                h,
                w
            )));
        }
        Ok(Signal { n, c, h, w, data })
    }

    pub fn shape(&self) -> (usize, usize, usize, usize) {
        (self.n, self.c, self.h, self.w)
    }

    pub fn batch(&self) -> usize {
        self.n
    }

    pub fn channels(&self) -> usize {
        self.c
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn idx(&self, n: usize, c: usize, i: usize, j: usize) -> usize {
        debug_assert!(n < self.n && c < self.c && i < self.h && j < self.w);
        ((n * self.c + c) * self.h + i) * self.w + j
    }

    #[inline]
    pub fn at(&self, n: usize, c: usize, i: usize, j: usize) -> f64 {
        self.data[self.idx(n, c, i, j)]
    }

    #[inline]
    pub fn set(&mut self, n: usize, c: usize, i: usize, j: usize, v: f64) {
        let ix = self.idx(n, c, i, j);
        self.data[ix] = v;
    }

    /// Value under zero extension: stored entry inside the spatial support,
    /// exactly 0 outside it.
    #[inline]
    pub fn sample_extended(&self, n: usize, c: usize, i: isize, j: isize) -> f64 {
        if i < 0 || j < 0 || i >= self.h as isize || j >= self.w as isize {
            0.0
        } else {
            self.at(n, c, i as usize, j as usize)
        }
    }

    /// Contiguous `h*w` spatial plane of one `(n, c)` pair.
    #[inline]
    pub fn plane(&self, n: usize, c: usize) -> &[f64] {
        let base = (n * self.c + c) * self.h * self.w;
        &self.data[base..base + self.h * self.w]
    }

    #[inline]
    pub fn plane_mut(&mut self, n: usize, c: usize) -> &mut [f64] {
        let base = (n * self.c + c) * self.h * self.w;
        let hw = self.h * self.w;
        &mut self.data[base..base + hw]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn inner_product(&self, other: &Signal) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::shape(format!(
                "inner product needs equal shapes, got {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(dot(&self.data, &other.data))
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(&self.data)
    }
}

/// 4-axis convolution weight indexed `(m, c, p, q)` with spatial offsets
/// `p, q` in `[-k0, k0]` and odd side `k = 2*k0 + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    m: usize,
    c: usize,
    k: usize,
    data: Vec<f64>,
}

impl Kernel {
    pub fn zeros(m: usize, c: usize, k: usize) -> Result<Kernel> {
        if k % 2 == 0 || k == 0 {
            return Err(Error::invalid(format!("kernel size must be odd, got {k}")));
        }
        if m < 1 || c < 1 {
            return Err(Error::invalid("kernel channel dims must be >= 1"));
        }
        Ok(Kernel { m, c, k, data: vec![0.0; m * c * k * k] })
    }

    pub fn from_vec(m: usize, c: usize, k: usize, data: Vec<f64>) -> Result<Kernel> {
        let mut kernel = Kernel::zeros(m, c, k)?;
        if data.len() != kernel.data.len() {
            return Err(Error::shape(format!(
                "kernel data length {} != {}x{}x{}x{}",
                data.len(),
                m,
                c,
                k,
                k
            )));
        }
        kernel.data = data;
        Ok(kernel)
    }

    pub fn out_channels(&self) -> usize {
        self.m
    }

    pub fn in_channels(&self) -> usize {
        self.c
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Half-width `k0` such that `k = 2*k0 + 1`.
    pub fn k0(&self) -> isize {
        (self.k / 2) as isize
    }

    #[inline]
    fn spatial_idx(&self, p: isize, q: isize) -> usize {
        let k0 = self.k0();
        debug_assert!(p >= -k0 && p <= k0 && q >= -k0 && q <= k0);
        ((p + k0) as usize) * self.k + (q + k0) as usize
    }

    /// Entry at offset coordinates `(p, q)`, both in `[-k0, k0]`.
    #[inline]
    pub fn at(&self, m: usize, c: usize, p: isize, q: isize) -> f64 {
        self.data[(m * self.c + c) * self.k * self.k + self.spatial_idx(p, q)]
    }

    #[inline]
    pub fn set(&mut self, m: usize, c: usize, p: isize, q: isize, v: f64) {
        let ix = (m * self.c + c) * self.k * self.k + self.spatial_idx(p, q);
        self.data[ix] = v;
    }

    /// Value under zero extension: 0 outside the `k x k` offset support.
    #[inline]
    pub fn sample_extended(&self, m: usize, c: usize, p: isize, q: isize) -> f64 {
        let k0 = self.k0();
        if p < -k0 || p > k0 || q < -k0 || q > k0 {
            0.0
        } else {
            self.at(m, c, p, q)
        }
    }

    /// Contiguous `k*k` tap slice of one `(m, c)` pair, row-major in `(p, q)`.
    #[inline]
    pub fn taps(&self, m: usize, c: usize) -> &[f64] {
        let kk = self.k * self.k;
        let base = (m * self.c + c) * kk;
        &self.data[base..base + kk]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn inner_product(&self, other: &Kernel) -> Result<f64> {
        if (self.m, self.c, self.k) != (other.m, other.c, other.k) {
            return Err(Error::shape("inner product needs equal kernel shapes".to_string()));
        }
        Ok(dot(&self.data, &other.data))
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(&self.data)
    }
}

/// Dense row-major matrix used for pooled features, classifier weights and logits.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "matrix data length {} != {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Plain sum of elementwise products over two equal-length slices.
pub fn inner_product(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::shape(format!(
            "inner product needs equal lengths, got {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dot(a, b))
}

/// `sqrt(sum of squares)` of all entries.
pub fn frobenius_norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inner_product_zero_and_unit() {
        let z = Signal::zeros(1, 1, 3, 3);
        assert_eq!(z.inner_product(&z).unwrap(), 0.0);

        let mut d = Signal::zeros(1, 1, 3, 3);
        d.set(0, 0, 1, 2, 1.0);
        assert_eq!(d.inner_product(&d).unwrap(), 1.0);
    }

    #[test]
    fn inner_product_hand_case() {
        let a = Signal::from_vec(1, 1, 2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = Signal::from_vec(1, 1, 2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(a.inner_product(&b).unwrap(), 5.0);
    }

    #[test]
    fn inner_product_shape_mismatch() {
        let a = Signal::zeros(1, 1, 2, 2);
        let b = Signal::zeros(1, 1, 2, 3);
        assert!(a.inner_product(&b).is_err());
    }

    #[test]
    fn frobenius_cases() {
        assert_eq!(Signal::zeros(2, 1, 2, 2).frobenius_norm(), 0.0);

        let single = Signal::from_vec(1, 1, 1, 1, vec![3.0]).unwrap();
        assert_eq!(single.frobenius_norm(), 3.0);

        let m = Signal::from_vec(1, 1, 2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((m.frobenius_norm() - 30f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sample_extended_zero_outside() {
        let mut s = Signal::zeros(1, 1, 2, 3);
        s.set(0, 0, 1, 2, 7.0);
        assert_eq!(s.sample_extended(0, 0, 1, 2), 7.0);
        assert_eq!(s.sample_extended(0, 0, -1, 0), 0.0);
        assert_eq!(s.sample_extended(0, 0, 2, 3), 0.0);

        let mut k = Kernel::zeros(1, 1, 3).unwrap();
        k.set(0, 0, -1, 1, 2.5);
        assert_eq!(k.sample_extended(0, 0, -1, 1), 2.5);
        assert_eq!(k.sample_extended(0, 0, 2, 0), 0.0);
        assert_eq!(k.sample_extended(0, 0, 0, -2), 0.0);
    }

    #[test]
    fn kernel_rejects_even_size() {
        assert!(Kernel::zeros(1, 1, 2).is_err());
        assert!(Kernel::zeros(1, 1, 4).is_err());
        assert!(Kernel::zeros(2, 3, 5).is_ok());
    }

    #[test]
    fn kernel_offset_indexing_round_trip() {
        let mut k = Kernel::zeros(2, 2, 5).unwrap();
        k.set(1, 0, -2, 2, -1.25);
        assert_eq!(k.at(1, 0, -2, 2), -1.25);
        // offset (0, 0) is the array center
        k.set(0, 1, 0, 0, 9.0);
        assert_eq!(k.taps(0, 1)[2 * 5 + 2], 9.0);
    }

    proptest! {
        #[test]
        fn inner_product_symmetric_bilinear(
            xs in proptest::collection::vec(-1.0f64..1.0, 16),
            ys in proptest::collection::vec(-1.0f64..1.0, 16),
            lambda in -4.0f64..4.0,
        ) {
            let x = Signal::from_vec(1, 1, 4, 4, xs.clone()).unwrap();
            let y = Signal::from_vec(1, 1, 4, 4, ys).unwrap();
            let xy = x.inner_product(&y).unwrap();
            let yx = y.inner_product(&x).unwrap();
            prop_assert!((xy - yx).abs() <= 1e-12 * xy.abs().max(1.0));

            let scaled = Signal::from_vec(1, 1, 4, 4, xs.iter().map(|v| lambda * v).collect()).unwrap();
            let lhs = scaled.inner_product(&y).unwrap();
            prop_assert!((lhs - lambda * xy).abs() <= 1e-12 * lhs.abs().max(1.0));
        }

        #[test]
        fn frobenius_matches_self_inner_product(
            xs in proptest::collection::vec(-3.0f64..3.0, 24),
        ) {
            let x = Signal::from_vec(2, 3, 2, 2, xs).unwrap();
            let n = x.frobenius_norm();
            let ip = x.inner_product(&x).unwrap();
            prop_assert!((n * n - ip).abs() <= 1e-12 * ip.max(1.0));
        }
    }
}
