//! Dense exact linear algebra over the cyclotomic scalars.
//!
//! Elimination is Bareiss-style fraction-free after clearing row denominators,
//! which keeps intermediate entries at minor-determinant size.  On top of the
//! solver sit the spectral tools the module theory needs: minimal polynomials
//! via Krylov sequences, eigenvalue candidates drawn from a finite dyadic
//! times 16th-root set, and generalized-eigenspace splitting.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { want: usize, got: usize },
    NoSolution,
    UnsplittableField { diagnostic: String },
}

impl core::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinalgError::DimensionMismatch { want, got } => {
                write!(f, "dimension mismatch: want {want}, got {got}")
            }
            LinalgError::NoSolution => write!(f, "linear system has no solution"),
            LinalgError::UnsplittableField { diagnostic } => {
                write!(f, "operator does not split over the scalar tower: {diagnostic}")
            }
        }
    }
}

pub type CycVec = Vec<CycScalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<CycScalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![CycScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<CycVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            entries.extend(row);
        }
        ExactMatrix { rows: r, cols: c, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> CycVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    /// Some(lambda) when the matrix equals lambda * Id.
    pub fn scalar_of_identity(&self) -> Option<CycScalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let lambda = self.get(0, 0).clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let ok = if r == c {
                    self.get(r, c) == &lambda
                } else {
                    self.get(r, c).is_zero()
                };
                if !ok {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, by: &CycScalar) -> Self {
        let entries = self.entries.iter().map(|a| a.mul(by)).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycScalar]) -> CycVec {
        assert_eq!(self.cols, v.len());
        let mut out = vec![CycScalar::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = CycScalar::zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&v[c]));
            }
            out[r] = acc;
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> CycScalar {
        assert_eq!(self.rows, self.cols);
        let mut t = CycScalar::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Subtract lambda from the diagonal.
    pub fn shift(&self, lambda: &CycScalar) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i).sub(lambda);
            m.set(i, i, v);
        }
        m
    }
}

/// Multiply each row by the rational that clears denominators and divides out
/// the integer content; leaves kernels and row spaces unchanged.
fn normalize_rows(m: &mut ExactMatrix) {
    for r in 0..m.rows {
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for c in 0..m.cols {
            for q in m.get(r, c).coeffs() {
                if q.is_zero() {
                    continue;
                }
                denom_lcm = denom_lcm.lcm(q.denom());
                numer_gcd = numer_gcd.gcd(&q.numer().abs());
            }
        }
        if numer_gcd.is_zero() {
            continue;
        }
        let factor = BigRational::new(denom_lcm, numer_gcd);
        if factor.is_one() {
            continue;
        }
        for c in 0..m.cols {
            let v = m.get(r, c).scale_rational(&factor);
            m.set(r, c, v);
        }
    }
}

#[derive(Debug, Clone)]
pub struct Echelon {
    pub mat: ExactMatrix,
    /// (row, col) of each pivot, top to bottom.
    pub pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Forward elimination, Bareiss one-step fraction-free.
pub fn echelon(mut m: ExactMatrix) -> Echelon {
    normalize_rows(&mut m);
    let mut prev = CycScalar::one();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols {
                let a = m.get(r, j).clone();
                let b = m.get(pr, j).clone();
                m.set(r, j, b);
                m.set(pr, j, a);
            }
        }
        let pivot = m.get(r, c).clone();
        let prev_inv = prev.inv().expect("previous pivot nonzero");
        for i in r + 1..m.rows {
            let lead = m.get(i, c).clone();
            for j in c..m.cols {
                let v = pivot
                    .mul(m.get(i, j))
                    .sub(&lead.mul(m.get(r, j)))
                    .mul(&prev_inv);
                m.set(i, j, v);
            }
        }
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { mat: m, pivots }
}

/// Reduced row echelon form: unit pivots, zeros above and below.
pub fn rref(m: ExactMatrix) -> Echelon {
    let Echelon { mut mat, pivots } = echelon(m);
    for &(r, c) in pivots.iter().rev() {
        let inv = mat.get(r, c).inv().expect("pivot nonzero");
        for j in c..mat.cols {
            let v = mat.get(r, j).mul(&inv);
            mat.set(r, j, v);
        }
        for i in 0..r {
            let lead = mat.get(i, c).clone();
            if lead.is_zero() {
                continue;
            }
            for j in c..mat.cols {
                let v = mat.get(i, j).sub(&lead.mul(mat.get(r, j)));
                mat.set(i, j, v);
            }
        }
    }
    Echelon { mat, pivots }
}

pub fn rank(m: &ExactMatrix) -> usize {
    echelon(m.clone()).rank()
}

pub fn is_invertible(m: &ExactMatrix) -> bool {
    m.rows == m.cols && rank(m) == m.rows
}

/// Basis of the right kernel {x : Mx = 0}.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<CycVec> {
    let e = rref(m.clone());
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in 0..m.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![CycScalar::zero(); m.cols];
        v[free] = CycScalar::one();
        for &(r, c) in &e.pivots {
            v[c] = e.mat.get(r, free).neg();
        }
        out.push(v);
    }
    out
}

/// Particular solution of Mx = b with free variables set to zero.
pub fn solve_linear(m: &ExactMatrix, b: &[CycScalar]) -> Result<CycVec, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch { want: m.rows, got: b.len() });
    }
    let mut aug = ExactMatrix::zero(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let e = rref(aug);
    for &(_, c) in &e.pivots {
        if c == m.cols {
            return Err(LinalgError::NoSolution);
        }
    }
    let mut x = vec![CycScalar::zero(); m.cols];
    for &(r, c) in &e.pivots {
        x[c] = e.mat.get(r, m.cols).clone();
    }
    Ok(x)
}

pub fn inverse(m: &ExactMatrix) -> Option<ExactMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut aug = ExactMatrix::zero(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, CycScalar::one());
    }
    let e = rref(aug);
    if e.rank() < n || e.pivots.iter().any(|&(_, c)| c >= n) {
        return None;
    }
    let mut out = ExactMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, e.mat.get(r, n + c).clone());
        }
    }
    Some(out)
}

/// Incremental row-reduced span with an expression history, used for
/// membership tests and for reading off Krylov dependences.
pub struct SpanBasis {
    dim: usize,
    /// Reduced vectors, each paired with its expression in inserted originals.
    rows: Vec<(CycVec, CycVec)>,
    pivots: Vec<usize>,
    inserted: usize,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, rows: Vec::new(), pivots: Vec::new(), inserted: 0 }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis_vectors(&self) -> Vec<CycVec> {
        self.rows.iter().map(|(v, _)| v.clone()).collect()
    }

    fn reduce(&self, v: &mut CycVec, hist: &mut CycVec) {
        for (k, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            let (bv, bh) = &self.rows[k];
            for j in 0..self.dim {
                if !bv[j].is_zero() {
                    v[j] = v[j].sub(&factor.mul(&bv[j]));
                }
            }
            for j in 0..bh.len() {
                if !bh[j].is_zero() {
                    if hist.len() < bh.len() {
                        hist.resize(bh.len(), CycScalar::zero());
                    }
                    hist[j] = hist[j].sub(&factor.mul(&bh[j]));
                }
            }
        }
    }

    /// Insert a vector.  Returns None if it was already in the span together
    /// with the dependence coefficients over previously inserted vectors;
    /// returns Some(()) when it extended the span.
    pub fn insert(&mut self, v: CycVec) -> Option<CycVec> {
        assert_eq!(v.len(), self.dim);
        let mut v = v;
        let mut hist = vec![CycScalar::zero(); self.inserted + 1];
        hist[self.inserted] = CycScalar::one();
        self.reduce(&mut v, &mut hist);
        self.inserted += 1;
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            hist.pop();
            return Some(hist);
        };
        let inv = v[p].inv().expect("pivot nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for h in hist.iter_mut() {
            if !h.is_zero() {
                *h = h.mul(&inv);
            }
        }
        self.rows.push((v, hist));
        self.pivots.push(p);
        None
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        let mut w = v.to_vec();
        let mut hist = Vec::new();
        self.reduce(&mut w, &mut hist);
        w.iter().all(|x| x.is_zero())
    }
}

/// Reduce a list of vectors to an independent spanning subset (in order).
pub fn span_basis(vectors: &[CycVec], dim: usize) -> Vec<CycVec> {
    let mut sb = SpanBasis::new(dim);
    let mut out = Vec::new();
    for v in vectors {
        if sb.insert(v.clone()).is_none() {
            out.push(v.clone());
        }
    }
    out
}

pub fn in_span(v: &[CycScalar], basis: &[CycVec], dim: usize) -> bool {
    let mut sb = SpanBasis::new(dim);
    for b in basis {
        sb.insert(b.clone());
    }
    sb.contains(v)
}

/// Coefficients expressing v over the given (independent) basis, if any.
pub fn express_in_basis(v: &[CycScalar], basis: &[CycVec]) -> Option<CycVec> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    let dim = basis[0].len();
    let mut m = ExactMatrix::zero(dim, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..dim {
            m.set(i, j, b[i].clone());
        }
    }
    solve_linear(&m, v).ok()
}

// ---------------------------------------------------------------------------
// Polynomials over the scalar field, low-degree utility only.

pub type Poly = Vec<CycScalar>; // coefficients, low to high, no trailing zeros

pub fn poly_normalize(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn poly_eval(p: &Poly, x: &CycScalar) -> CycScalar {
    let mut acc = CycScalar::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![CycScalar::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ca.mul(cb));
        }
    }
    poly_normalize(out)
}

pub fn poly_div_rem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = poly_normalize(b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = poly_normalize(a.clone());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("leading coefficient nonzero");
    let mut quot = vec![CycScalar::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db || (rem.len() == b.len() && !rem.is_empty()) {
        if rem.len() < b.len() {
            break;
        }
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap().mul(&lead_inv);
        quot[shift] = quot[shift].add(&factor);
        for (j, cb) in b.iter().enumerate() {
            rem[shift + j] = rem[shift + j].sub(&factor.mul(cb));
        }
        rem = poly_normalize(rem);
    }
    (poly_normalize(quot), rem)
}

pub fn poly_monic(p: &Poly) -> Poly {
    let p = poly_normalize(p.clone());
    if p.is_empty() {
        return p;
    }
    let inv = p.last().unwrap().inv().expect("leading coefficient nonzero");
    p.iter().map(|c| c.mul(&inv)).collect()
}

pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = poly_normalize(a.clone());
    let mut y = poly_normalize(b.clone());
    while !y.is_empty() {
        let (_, r) = poly_div_rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        poly_monic(&x)
    }
}

pub fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let g = poly_gcd(a, b);
    let (q, r) = poly_div_rem(a, &g);
    debug_assert!(r.is_empty());
    poly_monic(&poly_mul(&q, b))
}

// ---------------------------------------------------------------------------
// Spectral tools.

/// Monic minimal polynomial of a square matrix, by Krylov sequences seeded
/// from standard basis vectors until the whole space is covered.
pub fn minimal_polynomial(op: &ExactMatrix) -> Poly {
    assert_eq!(op.rows, op.cols);
    let n = op.rows;
    if n == 0 {
        return vec![CycScalar::one()];
    }
    let mut covered = SpanBasis::new(n);
    let mut p: Poly = vec![CycScalar::one()]; // constant 1 = lcm identity
    for seed in 0..n {
        let mut e = vec![CycScalar::zero(); n];
        e[seed] = CycScalar::one();
        if covered.contains(&e) {
            continue;
        }
        let mut krylov = SpanBasis::new(n);
        let mut w = e.clone();
        let ann = loop {
            match krylov.insert(w.clone()) {
                Some(dep) => {
                    // w = op^m seed depends on earlier powers: relation
                    // op^m = sum dep[j] op^j, annihilator x^m - sum dep[j] x^j.
                    let m = dep.len();
                    let mut q = vec![CycScalar::zero(); m + 1];
                    for (j, c) in dep.into_iter().enumerate() {
                        q[j] = c;
                    }
                    q[m] = CycScalar::one();
                    break q;
                }
                None => {
                    covered.insert(w.clone());
                    w = op.apply(&w);
                }
            }
        };
        p = poly_lcm(&p, &ann);
    }
    p
}

/// Finite eigenvalue-candidate family: dyadics p/2^e (e <= 6) times 16th
/// roots of unity, plus zero.  The dyadic magnitude bound comes from the
/// trace and dimension for rational candidates and is kept small for the
/// root-of-unity tiers, where every value the constructions produce lives.
fn candidate_family(op: &ExactMatrix) -> Vec<CycScalar> {
    let trace_height = op.trace().height();
    let cap = BigInt::from(96);
    let bound_big = (BigInt::from(op.rows) + trace_height).min(cap);
    let bound = i64::try_from(&bound_big).unwrap_or(96).max(2);
    let root_bound: i64 = 8;

    let mut out = vec![CycScalar::zero()];
    // Values num/2^e in lowest terms: integers at e = 0, odd numerators above.
    let mut dyadics: Vec<(i64, i64)> = Vec::new();
    for e in 0..=6i64 {
        let num_cap = bound << e;
        let mut num = 1i64;
        while num <= num_cap {
            if e == 0 || num % 2 == 1 {
                dyadics.push((num, e));
            }
            num += 1;
        }
    }
    // Small magnitudes first so deflation finds common roots early.
    dyadics.sort_by_key(|&(num, e)| (num.max(1 << e), num, e));
    for &(num, e) in &dyadics {
        let value = CycScalar::from_ratio(num, 1 << e);
        out.push(value.clone());
        out.push(value.neg());
    }
    for &(num, e) in &dyadics {
        if num > root_bound << e {
            continue;
        }
        let value = CycScalar::from_ratio(num, 1 << e);
        for k in 1..16 {
            if k == 8 {
                continue; // sign already covered
            }
            out.push(value.mul(&CycScalar::root16(k)));
        }
    }
    out
}

/// Roots of the minimal polynomial of `op` that lie in the candidate family,
/// i.e. exactly the eigenvalues the engine can split along.
pub fn candidate_roots(op: &ExactMatrix) -> Vec<CycScalar> {
    let p = minimal_polynomial(op);
    candidate_roots_of_poly(&p, op)
}

fn candidate_roots_of_poly(minpoly: &Poly, op: &ExactMatrix) -> Vec<CycScalar> {
    let mut remaining = minpoly.clone();
    let mut roots = Vec::new();
    for cand in candidate_family(op) {
        if poly_degree(&remaining) == Some(0) {
            break;
        }
        if !poly_eval(&remaining, &cand).is_zero() {
            continue;
        }
        roots.push(cand.clone());
        // Deflate all powers of (x - cand).
        let linear = vec![cand.neg(), CycScalar::one()];
        loop {
            let (q, r) = poly_div_rem(&remaining, &linear);
            if r.is_empty() && !q.is_empty() {
                remaining = q;
            } else {
                break;
            }
            if poly_eval(&remaining, &cand).is_zero() {
                continue;
            }
            break;
        }
    }
    roots
}

/// Generalized kernel ker((op)^infinity) by iterated preimage growth;
/// returns a reduced basis.
pub fn generalized_kernel(op: &ExactMatrix) -> Vec<CycVec> {
    let n = op.rows;
    let mut current = kernel_basis(op);
    if current.is_empty() {
        return current;
    }
    loop {
        // Solve op * x in span(current): kernel of [op | -basis] projected to x.
        let k = current.len();
        let mut aug = ExactMatrix::zero(n, n + k);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, op.get(r, c).clone());
            }
        }
        for (j, b) in current.iter().enumerate() {
            for r in 0..n {
                aug.set(r, n + j, b[r].neg());
            }
        }
        let next: Vec<CycVec> = kernel_basis(&aug)
            .into_iter()
            .map(|v| v[..n].to_vec())
            .collect();
        let reduced = span_basis(&next, n);
        if reduced.len() == current.len() {
            return reduced;
        }
        current = reduced;
    }
}

#[derive(Debug, Clone)]
pub struct SubspaceSplit {
    /// (eigenvalue, basis of the generalized eigenspace), nonempty spaces only.
    pub pieces: Vec<(CycScalar, Vec<CycVec>)>,
    /// True when the eigenspaces exhaust the whole space.
    pub complete: bool,
}

/// Split along generalized eigenspaces ker((op - lambda)^dim) for each
/// candidate eigenvalue; `complete` records whether the pieces fill the space.
pub fn split_invariant_subspaces(op: &ExactMatrix, candidates: &[CycScalar]) -> SubspaceSplit {
    assert_eq!(op.rows, op.cols);
    let n = op.rows;
    let mut pieces = Vec::new();
    let mut total = 0usize;
    for lambda in candidates {
        let shifted = op.shift(lambda);
        let space = generalized_kernel(&shifted);
        if space.is_empty() {
            continue;
        }
        total += space.len();
        pieces.push((lambda.clone(), space));
        if total == n {
            break;
        }
    }
    SubspaceSplit { pieces, complete: total == n }
}

/// Fitting decomposition at zero: (ker(op^inf), im(op^inf)).  The image part
/// is computed from the stabilized power; both are op-invariant and direct.
pub fn fitting_split(op: &ExactMatrix) -> (Vec<CycVec>, Vec<CycVec>) {
    let n = op.rows;
    let ker = generalized_kernel(op);
    if ker.is_empty() {
        return (ker, (0..n).map(|i| unit_vec(n, i)).collect());
    }
    if ker.len() == n {
        return (ker, Vec::new());
    }
    // Power high enough for stabilization: the kernel filtration length is at
    // most n, so op^n works and repeated squaring keeps it cheap.
    let power = op.pow(n as u32);
    let cols: Vec<CycVec> = (0..n).map(|c| power.column(c)).collect();
    let image = span_basis(&cols, n);
    debug_assert_eq!(ker.len() + image.len(), n);
    (ker, image)
}

pub fn unit_vec(n: usize, i: usize) -> CycVec {
    let mut v = vec![CycScalar::zero(); n];
    v[i] = CycScalar::one();
    v
}

pub fn unsplittable(diag: impl core::fmt::Display) -> LinalgError {
    LinalgError::UnsplittableField { diagnostic: format!("{diag}") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycScalar::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_of_projector() {
        // Projection onto the diagonal in Q^2: kernel is the antidiagonal.
        let p = ExactMatrix::from_rows(vec![
            vec![CycScalar::from_ratio(1, 2), CycScalar::from_ratio(1, 2)],
            vec![CycScalar::from_ratio(1, 2), CycScalar::from_ratio(1, 2)],
        ]);
        let k = kernel_basis(&p);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0].add(&v[1]), CycScalar::zero());
        assert!(p.apply(v).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_reports_no_solution_as_value() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = vec![CycScalar::one(), CycScalar::from_int(2)];
        assert_eq!(solve_linear(&a, &b), Err(LinalgError::NoSolution));
        let ok = vec![CycScalar::one(), CycScalar::one()];
        let x = solve_linear(&a, &ok).unwrap();
        assert_eq!(a.apply(&x), ok);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, -1], &[3, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn minimal_polynomial_of_involution() {
        // diag(1, -1, -1): minpoly x^2 - 1.
        let a = m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let p = minimal_polynomial(&a);
        assert_eq!(p, vec![CycScalar::from_int(-1), CycScalar::zero(), CycScalar::one()]);
    }

    #[test]
    fn minimal_polynomial_of_nilpotent_jordan_block() {
        let a = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let p = minimal_polynomial(&a);
        assert_eq!(p.len(), 4);
        assert!(p[0].is_zero() && p[1].is_zero() && p[2].is_zero() && p[3].is_one());
        assert_eq!(candidate_roots(&a), vec![CycScalar::zero()]);
    }

    #[test]
    fn candidate_roots_of_multiplication_by_zeta8() {
        // Multiplication by zeta_8 on Q(zeta_8) as a rational 4x4 matrix:
        // companion matrix of x^4 + 1; all four primitive 8th roots show up.
        let a = m(&[&[0, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let roots = candidate_roots(&a);
        assert_eq!(roots.len(), 4);
        assert!(roots.contains(&CycScalar::zeta8()));
        assert!(roots.contains(&CycScalar::zeta8().pow(3)));
        assert!(roots.contains(&CycScalar::zeta8().pow(5)));
        assert!(roots.contains(&CycScalar::zeta8().pow(7)));
    }

    #[test]
    fn split_jordan_mix_is_complete() {
        // Block diag: Jordan(0, size 2) + [2]: eigenvalues 0 and 2.
        let a = m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 2]]);
        let roots = candidate_roots(&a);
        let split = split_invariant_subspaces(&a, &roots);
        assert!(split.complete);
        assert_eq!(split.pieces.len(), 2);
        let dims: Vec<usize> = split.pieces.iter().map(|(_, b)| b.len()).collect();
        assert!(dims.contains(&2) && dims.contains(&1));
    }

    #[test]
    fn split_incomplete_for_eigenvalue_outside_tower() {
        // x^2 - 3 has roots sqrt(3), not in the tower: nothing splits.
        let a = m(&[&[0, 3], &[1, 0]]);
        let split = split_invariant_subspaces(&a, &candidate_roots(&a));
        assert!(!split.complete);
        assert!(split.pieces.is_empty());
    }

    #[test]
    fn fitting_split_of_singular_nonnilpotent() {
        let a = m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 5]]);
        let (ker, im) = fitting_split(&a);
        assert_eq!(ker.len(), 2);
        assert_eq!(im.len(), 1);
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let mut rng = SplitMix64::new(0x5eed_0002);
        for trial in 0..120 {
            let rows = 1 + rng.next_below(6);
            let cols = 1 + rng.next_below(6);
            let mut mat = ExactMatrix::zero(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let v = match trial % 3 {
                        0 => CycScalar::from_int(rng.next_i64_in(-4, 4)),
                        1 => CycScalar::from_ratio(rng.next_i64_in(-6, 6), 1 + rng.next_below(3) as i64),
                        _ => CycScalar::from_int(rng.next_i64_in(-2, 2))
                            .add(&CycScalar::i().scale_rational(&num_rational::BigRational::from_integer(
                                num_bigint::BigInt::from(rng.next_i64_in(-2, 2)),
                            ))),
                    };
                    mat.set(r, c, v);
                }
            }
            let k = kernel_basis(&mat);
            assert_eq!(rank(&mat) + k.len(), cols, "rank-nullity failed at trial {trial}");
            for v in &k {
                assert!(mat.apply(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn poly_division_and_gcd() {
        // (x^2 + 1)(x - 1) / (x^2 + 1) = x - 1 exactly.
        let a = vec![CycScalar::from_int(-1), CycScalar::one()];
        let b = vec![CycScalar::one(), CycScalar::zero(), CycScalar::one()];
        let prod = poly_mul(&a, &b);
        let (q, r) = poly_div_rem(&prod, &b);
        assert!(r.is_empty());
        assert_eq!(q, a);
        assert_eq!(poly_gcd(&prod, &b), poly_monic(&b));
    }
}
