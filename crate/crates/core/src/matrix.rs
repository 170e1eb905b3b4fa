//! Dense exact matrices over any [`Ring`](crate::rings::Ring), with the
//! standard alternating and pairing forms, division-free determinants and
//! Pfaffians, and adjugate inversion.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{RingHom, RingRef};
pub use crate::rings::Element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl Matrix {
    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Element>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::SizeMismatch("ragged rows".into()));
            }
            for e in row {
                if **e.ring() != **ring {
                    return Err(Error::DescriptorMismatch("entry outside the ring".into()));
                }
                entries.push(e);
            }
        }
        Ok(Matrix { ring: ring.clone(), rows: r, cols: c, entries })
    }

    pub fn from_fn(
        ring: &RingRef,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Element,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn zero(ring: &RingRef, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(ring, rows, cols, |_, _| ring.zero())
    }

    pub fn identity(ring: &RingRef, n: usize) -> Matrix {
        Matrix::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    /// The standard alternating form: block diagonal copies of
    /// `[[0, 1], [-1, 0]]`, size `2n`.
    pub fn standard_alternating(ring: &RingRef, n: usize) -> Matrix {
        Matrix::from_fn(ring, 2 * n, 2 * n, |i, j| {
            if i % 2 == 0 && j == i + 1 {
                ring.one()
            } else if i % 2 == 1 && j + 1 == i {
                ring.from_i64(-1)
            } else {
                ring.zero()
            }
        })
    }

    /// The pair-swap involution: block diagonal copies of `[[0, 1], [1, 0]]`,
    /// size `2n`. It is symmetric, squares to the identity, and conjugates
    /// the standard alternating form to its inverse.
    pub fn pair_swap(ring: &RingRef, n: usize) -> Matrix {
        Matrix::from_fn(ring, 2 * n, 2 * n, |i, j| {
            if i % 2 == 0 && j == i + 1 || i % 2 == 1 && j + 1 == i {
                ring.one()
            } else {
                ring.zero()
            }
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Element) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Element> {
        (0..self.cols).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other, self.rows, self.cols)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other, self.rows, self.cols)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn scalar_mul(&self, c: &Element) -> Result<Matrix> {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.mul(c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || **other.ring() != *self.ring {
            return Err(Error::SizeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.entry(i, j).add(&a.mul(b)?)?;
                    out.set_entry(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    /// Block diagonal sum.
    pub fn perp(&self, other: &Matrix) -> Result<Matrix> {
        if **other.ring() != *self.ring {
            return Err(Error::DescriptorMismatch("blocks over different rings".into()));
        }
        let (r, c) = (self.rows, self.cols);
        Ok(Matrix::from_fn(&self.ring, r + other.rows, c + other.cols, |i, j| {
            if i < r && j < c {
                self.entry(i, j).clone()
            } else if i >= r && j >= c {
                other.entry(i - r, j - c).clone()
            } else {
                self.ring.zero()
            }
        }))
    }

    /// `other^T * self * other`.
    pub fn congruence(&self, other: &Matrix) -> Result<Matrix> {
        other.transpose().mul(&self.mul(other)?)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let mut acc = Matrix::identity(&self.ring, self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn apply_hom(&self, hom: &RingHom) -> Result<Matrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(hom.apply(e)?);
        }
        Ok(Matrix { ring: hom.target().clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.entry(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }

    /// Alternating: skew-symmetric with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self.entry(i, i).is_zero() {
                return false;
            }
            for j in (i + 1)..self.cols {
                if *self.entry(i, j) != self.entry(j, i).neg() {
                    return false;
                }
            }
        }
        true
    }

    /// Does this matrix preserve the given alternating form: `m^T phi m = phi`?
    pub fn preserves_form(&self, phi: &Matrix) -> Result<bool> {
        Ok(phi.congruence(self)? == *phi)
    }

    /// Determinant. Over an integral domain the fraction-free elimination of
    /// Bareiss is used; otherwise a memoized Laplace expansion (capped at
    /// size 24).
    pub fn det(&self) -> Result<Element> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if self.rows == 0 {
            return Ok(self.ring.one());
        }
        if self.ring.is_domain() {
            self.det_bareiss()
        } else {
            if self.rows > 24 {
                return Err(Error::Unsupported(
                    "determinant over a non-domain is capped at size 24".into(),
                ));
            }
            let mut memo = HashMap::new();
            let cols: Vec<usize> = (0..self.cols).collect();
            self.det_laplace(&cols, &mut memo)
        }
    }

    fn det_bareiss(&self) -> Result<Element> {
        let n = self.rows;
        let mut a: Vec<Vec<Element>> = (0..n).map(|i| self.row(i)).collect();
        let mut negate = false;
        let mut prev = self.ring.one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(self.ring.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                    a[i][j] = num.exact_divide(&prev)?;
                }
                a[i][k] = self.ring.zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Expansion along the top remaining row over the column subset, memoized
    /// on the subset bitmask.
    fn det_laplace(&self, cols: &[usize], memo: &mut HashMap<u32, Element>) -> Result<Element> {
        let row = self.rows - cols.len();
        if cols.is_empty() {
            return Ok(self.ring.one());
        }
        let key = cols.iter().fold(0u32, |m, &c| m | (1 << c));
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let mut acc = self.ring.zero();
        for (pos, &c) in cols.iter().enumerate() {
            let e = self.entry(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.det_laplace(&rest, memo)?;
            let term = e.mul(&sub)?;
            acc = if pos % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        memo.insert(key, acc.clone());
        Ok(acc)
    }

    /// Pfaffian of an alternating matrix, by the memoized expansion along the
    /// first remaining index. Size must be even (zero-size gives one).
    pub fn pfaffian(&self) -> Result<Element> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if !self.is_alternating() {
            return Err(Error::NotAlternating);
        }
        if self.rows % 2 != 0 {
            return Err(Error::OddSize);
        }
        if self.rows > 24 {
            return Err(Error::Unsupported("Pfaffian capped at size 24".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        let mut memo = HashMap::new();
        self.pf_expand(&idx, &mut memo)
    }

    fn pf_expand(&self, idx: &[usize], memo: &mut HashMap<u32, Element>) -> Result<Element> {
        if idx.is_empty() {
            return Ok(self.ring.one());
        }
        let key = idx.iter().fold(0u32, |m, &c| m | (1 << c));
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let first = idx[0];
        let mut acc = self.ring.zero();
        for (pos, &k) in idx.iter().enumerate().skip(1) {
            let e = self.entry(first, k);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> =
                idx.iter().copied().filter(|&x| x != first && x != k).collect();
            let sub = self.pf_expand(&rest, memo)?;
            let term = e.mul(&sub)?;
            // the partner at odd position pairs with a plus sign
            acc = if pos % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        memo.insert(key, acc.clone());
        Ok(acc)
    }

    /// Inverse by the adjugate; requires the determinant to be a unit.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let d = self.det()?;
        let dinv = d.unit_inverse().map_err(|_| Error::NotInvertible)?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut out = Matrix::zero(&self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j)?.det()?;
                let cof = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                out.set_entry(j, i, cof.mul(&dinv)?);
            }
        }
        Ok(out)
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> Result<Matrix> {
        let n = self.rows;
        let rows: Vec<Vec<Element>> = (0..n)
            .filter(|&i| i != drop_row)
            .map(|i| {
                (0..n).filter(|&j| j != drop_col).map(|j| self.entry(i, j).clone()).collect()
            })
            .collect();
        Matrix::from_rows(&self.ring, rows)
    }

    fn check_shape(&self, other: &Matrix, rows: usize, cols: usize) -> Result<()> {
        if other.rows != rows || other.cols != cols {
            return Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if **other.ring() != *self.ring {
            return Err(Error::DescriptorMismatch("matrices over different rings".into()));
        }
        Ok(())
    }
}

impl Matrix {
    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| d.is_unit()).unwrap_or(false)
    }

    /// Every entry of `self - I` lies in the ideal (the congruence-subgroup
    /// condition). Certificate-only ideals propagate `CertificateRequired`.
    pub fn is_relative_to(&self, ideal: &crate::rings::Ideal) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        self.deviation_in_ideal(&Matrix::identity(&self.ring, self.rows), ideal)
    }

    /// Every entry of `self - base` lies in the ideal.
    pub fn deviation_in_ideal(
        &self,
        base: &Matrix,
        ideal: &crate::rings::Ideal,
    ) -> Result<bool> {
        let diff = self.sub(base)?;
        for e in &diff.entries {
            if !e.is_zero() && !ideal.member(e, None)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Row vector times matrix.
pub fn row_times_matrix(row: &[Element], m: &Matrix) -> Result<Vec<Element>> {
    if row.len() != m.n_rows() {
        return Err(Error::SizeMismatch(format!("row {} vs {} rows", row.len(), m.n_rows())));
    }
    let ring = m.ring().clone();
    let mut out = vec![ring.zero(); m.n_cols()];
    for (k, a) in row.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = slot.add(&a.mul(m.entry(k, j))?)?;
        }
    }
    Ok(out)
}

/// Matrix times column vector.
pub fn matrix_times_col(m: &Matrix, col: &[Element]) -> Result<Vec<Element>> {
    if col.len() != m.n_cols() {
        return Err(Error::SizeMismatch(format!("{} cols vs column {}", m.n_cols(), col.len())));
    }
    let ring = m.ring().clone();
    let mut out = vec![ring.zero(); m.n_rows()];
    for (i, slot) in out.iter_mut().enumerate() {
        for (k, b) in col.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            *slot = slot.add(&m.entry(i, k).mul(b)?)?;
        }
    }
    Ok(out)
}

/// Inner product `u^T phi v`.
pub fn form_product(phi: &Matrix, u: &[Element], v: &[Element]) -> Result<Element> {
    let mid = row_times_matrix(u, phi)?;
    let ring = phi.ring().clone();
    let mut acc = ring.zero();
    for (a, b) in mid.iter().zip(v) {
        acc = acc.add(&a.mul(b)?)?;
    }
    Ok(acc)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
