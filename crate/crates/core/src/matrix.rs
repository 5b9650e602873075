use serde::{Deserialize, Serialize};

/// A 2x2 matrix indexed `[outcome][column]`, where the column is the
/// predicted class or the prescribed treatment class.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix2(pub [[f64; 2]; 2]);

impl Matrix2 {
    pub const ZERO: Matrix2 = Matrix2([[0.0; 2]; 2]);

    pub fn new(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Matrix2([[m00, m01], [m10, m11]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn cells(&self) -> [[f64; 2]; 2] {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0[0][0] + self.0[0][1] + self.0[1][0] + self.0[1][1]
    }

    pub fn row_sum(&self, row: usize) -> f64 {
        self.0[row][0] + self.0[row][1]
    }

    /// Sum of the elementwise product.
    pub fn hadamard_sum(&self, other: &Matrix2) -> f64 {
        self.0[0][0] * other.0[0][0]
            + self.0[0][1] * other.0[0][1]
            + self.0[1][0] * other.0[1][0]
            + self.0[1][1] * other.0[1][1]
    }

    pub fn sub(&self, other: &Matrix2) -> Matrix2 {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn abs_sum(&self) -> f64 {
        self.0.iter().flatten().map(|v| v.abs()).sum()
    }

    pub fn zip_with(&self, other: &Matrix2, f: impl Fn(f64, f64) -> f64) -> Matrix2 {
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = f(self.0[i][j], other.0[i][j]);
            }
        }
        Matrix2(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().flatten().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|v| v == 0.0)
    }
}

impl From<[[f64; 2]; 2]> for Matrix2 {
    fn from(cells: [[f64; 2]; 2]) -> Self {
        Matrix2(cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_and_sub() {
        let a = Matrix2::new(0.25, 0.25, 0.25, 0.25);
        let b = Matrix2::new(0.0, -1.0, -5.0, 10.0);
        assert_eq!(a.hadamard_sum(&b), 1.0);
        assert_eq!(a.sub(&a), Matrix2::ZERO);
        assert_eq!(b.abs_sum(), 16.0);
        assert_eq!(a.row_sum(1), 0.5);
    }
}
