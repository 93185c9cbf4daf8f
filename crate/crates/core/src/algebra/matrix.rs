use crate::fields::Field;

/// Dense row-major matrix with entries held outside the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<G>(&self, f: impl Fn(&E) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).flat_map(|j| (0..self.rows).map(move |i| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect();
        Mat { rows: self.cols, cols: self.rows, data }
    }
}

pub fn mat_zero<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat { rows, cols, data: vec![f.zero(); rows * cols] }
}

pub fn mat_identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    let mut m = mat_zero(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows, "shape mismatch");
    let mut out = mat_zero(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if !f.is_zero(y) {
                    let v = f.add(out.get(i, j), &f.mul(x, y));
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

pub fn mat_scale<F: Field>(f: &F, a: &Mat<F::Elem>, k: &F::Elem) -> Mat<F::Elem> {
    a.map(|x| f.mul(x, k))
}

/// Row echelon form in place; returns the pivot columns and the sign/scale
/// factor relating the determinant of the input to that of the output.
fn echelon<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> (Vec<usize>, F::Elem) {
    let mut pivots = vec![];
    let mut factor = f.one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
        if pr != r {
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
            factor = f.neg(&factor);
        }
        let pv = m.get(r, c).clone();
        let inv = f.inv(&pv).unwrap();
        for i in r + 1..m.rows {
            let k = f.mul(m.get(i, c), &inv);
            if f.is_zero(&k) {
                continue;
            }
            for j in c..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&k, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, factor)
}

pub fn mat_rank<F: Field>(f: &F, a: &Mat<F::Elem>) -> usize {
    let mut m = a.clone();
    echelon(f, &mut m).0.len()
}

pub fn mat_det<F: Field>(f: &F, a: &Mat<F::Elem>) -> F::Elem {
    assert_eq!(a.rows, a.cols, "square matrix required");
    let mut m = a.clone();
    let (pivots, factor) = echelon(f, &mut m);
    if pivots.len() < a.rows {
        return f.zero();
    }
    (0..a.rows).fold(factor, |acc, i| f.mul(&acc, m.get(i, i)))
}

pub fn mat_inverse<F: Field>(f: &F, a: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    assert_eq!(a.rows, a.cols, "square matrix required");
    let n = a.rows;
    let mut m = mat_zero(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j).clone());
        }
        m.set(i, n + i, f.one());
    }
    for c in 0..n {
        let pr = (c..n).find(|&i| !f.is_zero(m.get(i, c)))?;
        for j in 0..2 * n {
            m.data.swap(pr * 2 * n + j, c * 2 * n + j);
        }
        let inv = f.inv(m.get(c, c)).unwrap();
        for j in 0..2 * n {
            let v = f.mul(m.get(c, j), &inv);
            m.set(c, j, v);
        }
        for i in 0..n {
            if i == c || f.is_zero(m.get(i, c)) {
                continue;
            }
            let k = m.get(i, c).clone();
            for j in 0..2 * n {
                let v = f.sub(m.get(i, j), &f.mul(&k, m.get(c, j)));
                m.set(i, j, v);
            }
        }
    }
    Some(Mat { rows: n, cols: n, data: (0..n).flat_map(|i| m.row(i)[n..].to_vec()).collect() })
}

/// One solution x of a·x = b, or `None` if the system is inconsistent.
pub fn mat_solve<F: Field>(f: &F, a: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len(), "shape mismatch");
    let mut m = mat_zero(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            m.set(i, j, a.get(i, j).clone());
        }
        m.set(i, a.cols, b[i].clone());
    }
    let (pivots, _) = echelon(f, &mut m);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut v = m.get(r, a.cols).clone();
        for j in c + 1..a.cols {
            v = f.sub(&v, &f.mul(m.get(r, j), &x[j]));
        }
        x[c] = f.div(&v, m.get(r, c)).unwrap();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FiniteField;
    use proptest::prelude::*;

    #[test]
    fn rank_and_det() {
        let f = FiniteField::new(3, 1).unwrap();
        let m = Mat::from_rows(vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(mat_det(&f, &m), 0);
        assert_eq!(mat_rank(&f, &m), 1);
        let n = Mat::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(mat_det(&f, &n), 2);
        assert_eq!(mat_inverse(&f, &n).unwrap(), n);
        let x = mat_solve(&f, &m, &[1, 2]).unwrap();
        assert_eq!(f.add(&x[0], &f.mul(&2, &x[1])), 1);
        assert!(mat_solve(&f, &m, &[1, 0]).is_none());
    }

    proptest! {
        #[test]
        fn inverse_and_det_are_consistent(v in proptest::collection::vec(0u32..9, 9)) {
            let f = FiniteField::new(3, 2).unwrap();
            let m = Mat { rows: 3, cols: 3, data: v };
            let d = mat_det(&f, &m);
            match mat_inverse(&f, &m) {
                Some(inv) => {
                    prop_assert_eq!(mat_mul(&f, &m, &inv), mat_identity(&f, 3));
                    prop_assert_eq!(f.mul(&d, &mat_det(&f, &inv)), 1);
                }
                None => prop_assert_eq!(d, 0),
            }
        }
    }
}
