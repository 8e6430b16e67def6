//! Finite-dimensional associative algebras and their left modules.
//!
//! An algebra is stored as a sparse multiplication table over a fixed basis.
//! On top of that sit the structural tools: generating sets, the radical via
//! the regular trace form, hom spaces between modules, and decomposition into
//! indecomposable summands by exact idempotent splitting.  Splitting only
//! succeeds when the relevant eigenvalues lie inside the scalar tower; when
//! they do not, the failure is reported as a value, never papered over.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{
    self, express_in_basis, fitting_split, kernel_basis, span_basis, CycVec, ExactMatrix,
    LinalgError, SpanBasis,
};
use crate::rng::SplitMix64;
use crate::scalar::CycScalar;

#[derive(Debug, Clone)]
pub struct FinAlgebra {
    pub dim: usize,
    /// Coordinates of the unit element.
    pub one: CycVec,
    /// Basis labels for diagnostics; empty strings are fine.
    pub labels: Vec<String>,
    /// Sparse structure constants: (i, j) -> terms of e_i * e_j.
    table: BTreeMap<(u32, u32), Vec<(u32, CycScalar)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocFailure {
    pub triple: (usize, usize, usize),
}

impl FinAlgebra {
    pub fn new(dim: usize, one: CycVec, labels: Vec<String>) -> Self {
        assert_eq!(one.len(), dim);
        let labels = if labels.is_empty() {
            (0..dim).map(|i| format!("e{i}")).collect()
        } else {
            assert_eq!(labels.len(), dim);
            labels
        };
        FinAlgebra { dim, one, labels, table: BTreeMap::new() }
    }

    pub fn set_product(&mut self, i: usize, j: usize, terms: Vec<(usize, CycScalar)>) {
        let mut cleaned: Vec<(u32, CycScalar)> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (u32::try_from(k).unwrap(), c))
            .collect();
        cleaned.sort_by_key(|&(k, _)| k);
        if cleaned.is_empty() {
            self.table.remove(&(i as u32, j as u32));
        } else {
            self.table.insert((i as u32, j as u32), cleaned);
        }
    }

    pub fn product_terms(&self, i: usize, j: usize) -> &[(u32, CycScalar)] {
        self.table
            .get(&(i as u32, j as u32))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn table_entries(&self) -> impl Iterator<Item = (usize, usize, &[(u32, CycScalar)])> {
        self.table
            .iter()
            .map(|(&(i, j), v)| (i as usize, j as usize, v.as_slice()))
    }

    pub fn basis_vec(&self, i: usize) -> CycVec {
        linalg::unit_vec(self.dim, i)
    }

    pub fn mul_vec(&self, x: &[CycScalar], y: &[CycScalar]) -> CycVec {
        let mut acc: BTreeMap<u32, CycScalar> = BTreeMap::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let factor = xi.mul(yj);
                for (k, c) in self.product_terms(i, j) {
                    let entry = acc.entry(*k).or_insert_with(CycScalar::zero);
                    *entry = entry.add(&factor.mul(c));
                }
            }
        }
        let mut out = vec![CycScalar::zero(); self.dim];
        for (k, v) in acc {
            out[k as usize] = v;
        }
        out
    }

    pub fn pow_vec(&self, x: &[CycScalar], e: u32) -> CycVec {
        let mut acc = self.one.clone();
        for _ in 0..e {
            acc = self.mul_vec(&acc, x);
        }
        acc
    }

    pub fn left_mult_matrix(&self, x: &[CycScalar]) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (k, c) in self.product_terms(i, j) {
                    let cur = m.get(*k as usize, j).add(&xi.mul(c));
                    m.set(*k as usize, j, cur);
                }
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, x: &[CycScalar]) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for (j, xj) in x.iter().enumerate() {
                if xj.is_zero() {
                    continue;
                }
                for (k, c) in self.product_terms(i, j) {
                    let cur = m.get(*k as usize, i).add(&xj.mul(c));
                    m.set(*k as usize, i, cur);
                }
            }
        }
        m
    }

    pub fn is_idempotent(&self, x: &[CycScalar]) -> bool {
        self.mul_vec(x, x) == x.to_vec()
    }

    pub fn is_central(&self, x: &[CycScalar]) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vec(i);
            self.mul_vec(x, &e) == self.mul_vec(&e, x)
        })
    }

    /// Full associativity check up to dimension 64; deterministic sampling of
    /// 64 * dim triples above that.
    pub fn verify_associative(&self) -> Result<(), AssocFailure> {
        let check = |i: usize, j: usize, k: usize| -> bool {
            let ej = self.basis_vec(j);
            let ij = self
                .product_terms(i, j)
                .iter()
                .fold(vec![CycScalar::zero(); self.dim], |mut v, (t, c)| {
                    v[*t as usize] = v[*t as usize].add(c);
                    v
                });
            let jk = self
                .product_terms(j, k)
                .iter()
                .fold(vec![CycScalar::zero(); self.dim], |mut v, (t, c)| {
                    v[*t as usize] = v[*t as usize].add(c);
                    v
                });
            let _ = ej;
            let ek = self.basis_vec(k);
            let ei = self.basis_vec(i);
            self.mul_vec(&ij, &ek) == self.mul_vec(&ei, &jk)
        };
        if self.dim <= 64 {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        if !check(i, j, k) {
                            return Err(AssocFailure { triple: (i, j, k) });
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(crate::rng::DEFAULT_SEED);
            for _ in 0..64 * self.dim {
                let i = rng.next_below(self.dim);
                let j = rng.next_below(self.dim);
                let k = rng.next_below(self.dim);
                if !check(i, j, k) {
                    return Err(AssocFailure { triple: (i, j, k) });
                }
            }
        }
        Ok(())
    }

    pub fn verify_unital(&self) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_vec(i);
            self.mul_vec(&self.one, &e) == e && self.mul_vec(&e, &self.one) == e
        })
    }

    /// Greedy generating set: add the first basis vector outside the current
    /// unital subalgebra, close under multiplication, repeat.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = SpanBasis::new(self.dim);
        span.insert(self.one.clone());
        loop {
            self.close_under_generators(&mut span, &gens);
            if span.len() == self.dim {
                return gens;
            }
            let next = (0..self.dim)
                .find(|&i| !span.contains(&self.basis_vec(i)))
                .expect("span not full yet");
            gens.push(next);
        }
    }

    /// True when the unital subalgebra generated by the given basis indices
    /// is everything.
    pub fn generates(&self, gens: &[usize]) -> bool {
        let mut span = SpanBasis::new(self.dim);
        span.insert(self.one.clone());
        let gens = gens.to_vec();
        self.close_under_generators(&mut span, &gens);
        span.len() == self.dim
    }

    fn close_under_generators(&self, span: &mut SpanBasis, gens: &[usize]) {
        loop {
            let snapshot = span.basis_vectors();
            let before = span.len();
            for v in &snapshot {
                for &g in gens {
                    let e = self.basis_vec(g);
                    span.insert(self.mul_vec(v, &e));
                    span.insert(self.mul_vec(&e, v));
                }
            }
            if span.len() == before {
                return;
            }
        }
    }

    /// Trace of left multiplication by each basis element.
    fn left_trace_vector(&self) -> CycVec {
        let mut tau = vec![CycScalar::zero(); self.dim];
        for (&(i, j), terms) in &self.table {
            for (k, c) in terms {
                if *k == j {
                    tau[i as usize] = tau[i as usize].add(c);
                }
            }
        }
        tau
    }

    /// Gram matrix of the regular trace form (x, y) -> tr(L_{xy}).
    pub fn trace_form(&self) -> ExactMatrix {
        let tau = self.left_trace_vector();
        let mut b = ExactMatrix::zero(self.dim, self.dim);
        for (&(i, j), terms) in &self.table {
            let mut acc = CycScalar::zero();
            for (k, c) in terms {
                if tau[*k as usize].is_zero() {
                    continue;
                }
                acc = acc.add(&c.mul(&tau[*k as usize]));
            }
            b.set(i as usize, j as usize, acc);
        }
        b
    }

    /// Jacobson radical, char-0 criterion: the radical of the regular trace
    /// form.  Returns a reduced basis.
    pub fn radical_basis(&self) -> Vec<CycVec> {
        span_basis(&kernel_basis(&self.trace_form()), self.dim)
    }

    /// Quotient by a two-sided ideal; also returns the section data used to
    /// lift quotient vectors back.
    pub fn quotient_by_ideal(&self, ideal: &[CycVec]) -> AlgebraQuotient {
        let mut reducer = SpanBasis::new(self.dim);
        for v in ideal {
            reducer.insert(v.clone());
        }
        let pivot_set: Vec<usize> = reducer_pivots(&reducer);
        let complement: Vec<usize> =
            (0..self.dim).filter(|i| !pivot_set.contains(i)).collect();
        let qdim = complement.len();
        let project = |v: &[CycScalar], reducer: &SpanBasis| -> CycVec {
            let reduced = reducer_reduce(reducer, v);
            complement.iter().map(|&c| reduced[c].clone()).collect()
        };
        let mut alg = FinAlgebra::new(
            qdim,
            project(&self.one, &reducer),
            complement.iter().map(|&c| self.labels[c].clone()).collect(),
        );
        for (a, &ca) in complement.iter().enumerate() {
            for (b, &cb) in complement.iter().enumerate() {
                let prod = self.mul_vec(&self.basis_vec(ca), &self.basis_vec(cb));
                let q = project(&prod, &reducer);
                let terms: Vec<(usize, CycScalar)> = q
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                alg.set_product(a, b, terms);
            }
        }
        AlgebraQuotient { alg, complement, reducer_rows: reducer.basis_vectors(), parent_dim: self.dim }
    }
}

fn reducer_pivots(sb: &SpanBasis) -> Vec<usize> {
    sb.basis_vectors()
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

fn reducer_reduce(sb: &SpanBasis, v: &[CycScalar]) -> CycVec {
    let rows = sb.basis_vectors();
    let pivots = reducer_pivots(sb);
    let mut w = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots.iter()) {
        if w[p].is_zero() {
            continue;
        }
        let factor = w[p].clone();
        for (j, rj) in row.iter().enumerate() {
            if !rj.is_zero() {
                w[j] = w[j].sub(&factor.mul(rj));
            }
        }
    }
    w
}

pub struct AlgebraQuotient {
    pub alg: FinAlgebra,
    /// Parent basis indices whose classes form the quotient basis.
    pub complement: Vec<usize>,
    reducer_rows: Vec<CycVec>,
    parent_dim: usize,
}

impl AlgebraQuotient {
    /// Project a parent vector to quotient coordinates.
    pub fn project(&self, v: &[CycScalar]) -> CycVec {
        let mut sb = SpanBasis::new(self.parent_dim);
        for r in &self.reducer_rows {
            sb.insert(r.clone());
        }
        let reduced = reducer_reduce(&sb, v);
        self.complement.iter().map(|&c| reduced[c].clone()).collect()
    }

    /// Lift quotient coordinates along the chosen section.
    pub fn lift(&self, q: &[CycScalar]) -> CycVec {
        let mut v = vec![CycScalar::zero(); self.parent_dim];
        for (slot, &c) in self.complement.iter().enumerate() {
            v[c] = q[slot].clone();
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Modules.

#[derive(Debug, Clone)]
pub struct FDModule {
    pub algebra: Arc<FinAlgebra>,
    pub dim: usize,
    /// action[i] is the matrix of the i-th algebra basis element.
    pub action: Vec<ExactMatrix>,
}

impl FDModule {
    pub fn new(algebra: Arc<FinAlgebra>, action: Vec<ExactMatrix>) -> Self {
        assert_eq!(action.len(), algebra.dim);
        let dim = action.first().map_or(0, |m| m.rows);
        for m in &action {
            assert_eq!((m.rows, m.cols), (dim, dim));
        }
        FDModule { algebra, dim, action }
    }

    pub fn regular(algebra: &Arc<FinAlgebra>) -> Self {
        let action = (0..algebra.dim)
            .map(|i| algebra.left_mult_matrix(&algebra.basis_vec(i)))
            .collect();
        FDModule::new(algebra.clone(), action)
    }

    pub fn is_regular(&self) -> bool {
        self.dim == self.algebra.dim
            && (0..self.algebra.dim).all(|i| {
                self.action[i] == self.algebra.left_mult_matrix(&self.algebra.basis_vec(i))
            })
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[CycScalar]) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            m = m.add(&self.action[i].scale(xi));
        }
        m
    }

    pub fn validate_unit(&self) -> bool {
        self.act(&self.algebra.one).is_identity()
    }

    /// Multiplicativity on (generator, basis) pairs; enough for a full module
    /// check once the generators generate, by induction on word length.
    pub fn validate_on_generators(&self, gens: &[usize]) -> bool {
        for &g in gens {
            let eg = self.algebra.basis_vec(g);
            for j in 0..self.algebra.dim {
                let prod = self.algebra.mul_vec(&eg, &self.algebra.basis_vec(j));
                if self.action[g].mul(&self.action[j]) != self.act(&prod) {
                    return false;
                }
            }
        }
        true
    }

    pub fn validate_full(&self) -> bool {
        let all: Vec<usize> = (0..self.algebra.dim).collect();
        self.validate_unit() && self.validate_on_generators(&all)
    }

    /// Restrict the action to an invariant subspace with the given basis.
    pub fn submodule(&self, basis: &[CycVec]) -> Self {
        let k = basis.len();
        let mut action = Vec::with_capacity(self.algebra.dim);
        for i in 0..self.algebra.dim {
            let mut m = ExactMatrix::zero(k, k);
            for (col, b) in basis.iter().enumerate() {
                let img = self.action[i].apply(b);
                let coords = express_in_basis(&img, basis)
                    .expect("subspace not invariant under the action");
                for (row, c) in coords.into_iter().enumerate() {
                    m.set(row, col, c);
                }
            }
            action.push(m);
        }
        FDModule::new(self.algebra.clone(), action)
    }

    /// Quotient by an invariant subspace.
    pub fn quotient(&self, sub: &[CycVec]) -> Self {
        let mut reducer = SpanBasis::new(self.dim);
        for v in sub {
            reducer.insert(v.clone());
        }
        let pivots = reducer_pivots(&reducer);
        let complement: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let k = complement.len();
        let mut action = Vec::with_capacity(self.algebra.dim);
        for i in 0..self.algebra.dim {
            let mut m = ExactMatrix::zero(k, k);
            for (col, &c) in complement.iter().enumerate() {
                let img = self.action[i].apply(&linalg::unit_vec(self.dim, c));
                let reduced = reducer_reduce(&reducer, &img);
                for (row, &cc) in complement.iter().enumerate() {
                    m.set(row, col, reduced[cc].clone());
                }
            }
            action.push(m);
        }
        FDModule::new(self.algebra.clone(), action)
    }

    /// rad(A) * M, the radical submodule.
    pub fn radical_submodule(&self) -> Vec<CycVec> {
        let rad = self.algebra.radical_basis();
        let mut vecs = Vec::new();
        for r in &rad {
            let m = self.act(r);
            for c in 0..self.dim {
                vecs.push(m.column(c));
            }
        }
        span_basis(&vecs, self.dim)
    }

    /// Head M / rad(A)M.
    pub fn head(&self) -> Self {
        self.quotient(&self.radical_submodule())
    }
}

/// Basis of the intertwiner space {T : T rho_M(a) = rho_N(a) T}, as N.dim x
/// M.dim matrices.  Constraints are imposed for a generating set only, which
/// suffices for validated modules.
pub fn hom_space(m: &FDModule, n: &FDModule) -> Vec<ExactMatrix> {
    assert!(Arc::ptr_eq(&m.algebra, &n.algebra) || m.algebra.dim == n.algebra.dim);
    let gens = m.algebra.generating_set();
    let unknowns = n.dim * m.dim;
    // Current solution space, progressively cut down by each generator.
    let mut basis: Vec<CycVec> = (0..unknowns).map(|i| linalg::unit_vec(unknowns, i)).collect();
    for &g in &gens {
        if basis.is_empty() {
            break;
        }
        let rho_m = &m.action[g];
        let rho_n = &n.action[g];
        // Constraint applied to each current basis matrix.
        let mut cons = ExactMatrix::zero(unknowns, basis.len());
        for (col, t) in basis.iter().enumerate() {
            let tm = devectorize(t, n.dim, m.dim);
            let diff = tm.mul(rho_m).sub(&rho_n.mul(&tm));
            for r in 0..n.dim {
                for c in 0..m.dim {
                    cons.set(r * m.dim + c, col, diff.get(r, c).clone());
                }
            }
        }
        let coeffs = kernel_basis(&cons);
        basis = coeffs
            .iter()
            .map(|co| {
                let mut v = vec![CycScalar::zero(); unknowns];
                for (j, c) in co.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, b) in basis[j].iter().enumerate() {
                        if !b.is_zero() {
                            v[slot] = v[slot].add(&c.mul(b));
                        }
                    }
                }
                v
            })
            .collect();
    }
    basis
        .into_iter()
        .map(|v| devectorize(&v, n.dim, m.dim))
        .collect()
}

fn devectorize(v: &[CycScalar], rows: usize, cols: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zero(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, v[r * cols + c].clone());
        }
    }
    m
}

fn vectorize(m: &ExactMatrix) -> CycVec {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        for c in 0..m.cols {
            v.push(m.get(r, c).clone());
        }
    }
    v
}

/// Endomorphism algebra of a module, with its matrix basis and abstract
/// structure constants.
pub struct EndAlgebra {
    pub mats: Vec<ExactMatrix>,
    pub alg: FinAlgebra,
}

pub fn end_algebra(m: &FDModule) -> EndAlgebra {
    let mats = hom_space(m, m);
    let k = mats.len();
    let vecs: Vec<CycVec> = mats.iter().map(vectorize).collect();
    let one_coords = express_in_basis(&vectorize(&ExactMatrix::identity(m.dim)), &vecs)
        .expect("identity is an endomorphism");
    let mut alg = FinAlgebra::new(k, one_coords, Vec::new());
    for i in 0..k {
        for j in 0..k {
            let prod = mats[i].mul(&mats[j]);
            let coords = express_in_basis(&vectorize(&prod), &vecs)
                .expect("endomorphisms closed under composition");
            let terms: Vec<(usize, CycScalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            alg.set_product(i, j, terms);
        }
    }
    EndAlgebra { mats, alg }
}

/// A nonzero idempotent different from the unit, or None when the algebra is
/// local (unit is the only nonzero idempotent).
pub fn find_proper_idempotent(alg: &FinAlgebra) -> Result<Option<CycVec>, LinalgError> {
    let rad = alg.radical_basis();
    let quo = alg.quotient_by_ideal(&rad);
    let s = &quo.alg;
    if s.dim == 1 {
        return Ok(None); // local: semisimple quotient is a division algebra of dim 1
    }
    // Schedule of elements to try splitting along: basis classes, pairwise
    // products, then seeded small combinations.
    let mut schedule: Vec<CycVec> = (0..s.dim).map(|i| s.basis_vec(i)).collect();
    for i in 0..s.dim.min(12) {
        for j in 0..s.dim.min(12) {
            schedule.push(s.mul_vec(&s.basis_vec(i), &s.basis_vec(j)));
        }
    }
    let mut rng = SplitMix64::new(crate::rng::DEFAULT_SEED ^ 0x1d3);
    for _ in 0..64 {
        let v: CycVec = (0..s.dim)
            .map(|_| CycScalar::from_int(rng.next_i64_in(-2, 2)))
            .collect();
        schedule.push(v);
    }
    for sv in &schedule {
        // Right multiplication commutes with left multiplications, so its
        // generalized eigenspaces are left ideals; a proper Fitting split of
        // the semisimple quotient then decomposes the unit into orthogonal
        // idempotents.
        let r = s.right_mult_matrix(sv);
        for lambda in linalg::candidate_roots(&r) {
            let shifted = r.shift(&lambda);
            let (ker, im) = fitting_split(&shifted);
            if ker.is_empty() || im.is_empty() {
                continue;
            }
            let mut combined = ker.clone();
            combined.extend(im.iter().cloned());
            let coords = express_in_basis(&s.one, &combined)
                .expect("Fitting pieces span the quotient");
            let mut u = vec![CycScalar::zero(); s.dim];
            for (j, c) in coords.iter().take(ker.len()).enumerate() {
                for (slot, b) in ker[j].iter().enumerate() {
                    if !b.is_zero() {
                        u[slot] = u[slot].add(&c.mul(b));
                    }
                }
            }
            debug_assert!(s.is_idempotent(&u));
            if u.iter().all(|c| c.is_zero()) || u == s.one {
                continue;
            }
            // Lift through the radical: x <- 3x^2 - 2x^3 squares the defect.
            let mut x = quo.lift(&u);
            let mut ok = false;
            for _ in 0..(2 * alg.dim + 4) {
                if alg.is_idempotent(&x) {
                    ok = true;
                    break;
                }
                let x2 = alg.mul_vec(&x, &x);
                let x3 = alg.mul_vec(&x2, &x);
                x = x2
                    .iter()
                    .zip(x3.iter())
                    .map(|(a, b)| {
                        a.scale_rational(&num_rational::BigRational::from_integer(3.into()))
                            .sub(&b.scale_rational(&num_rational::BigRational::from_integer(2.into())))
                    })
                    .collect();
            }
            if !ok {
                return Err(linalg::unsplittable("idempotent lift did not converge"));
            }
            return Ok(Some(x));
        }
    }
    Err(linalg::unsplittable(format!(
        "no splitting eigenvalue found in the scalar tower (semisimple quotient dim {})",
        s.dim
    )))
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Indecomposable summands in discovery order.
    pub pieces: Vec<FDModule>,
    /// Index groups of pairwise isomorphic pieces.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn class_of(&self, piece: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&piece))
            .expect("piece index in range")
    }
}

/// Decompose a module into indecomposable summands and group them into
/// isomorphism classes.  The regular module takes a fast path through
/// corner algebras e A e.
pub fn decompose_module(m: &FDModule) -> Result<Decomposition, LinalgError> {
    let pieces = if m.is_regular() {
        decompose_regular_pieces(&m.algebra)?
    } else {
        let mut out = Vec::new();
        split_recursive(m, &mut out)?;
        out
    };
    let classes = group_into_classes(&pieces)?;
    Ok(Decomposition { pieces, classes })
}

/// Indecomposable left ideal summands of the regular module, via idempotent
/// refinement inside corner algebras.
fn decompose_regular_pieces(alg: &Arc<FinAlgebra>) -> Result<Vec<FDModule>, LinalgError> {
    let regular = FDModule::regular(alg);
    let mut work: Vec<CycVec> = vec![alg.one.clone()];
    let mut done: Vec<CycVec> = Vec::new();
    while let Some(e) = work.pop() {
        let corner = corner_algebra(alg, &e);
        match find_proper_idempotent(&corner.alg)? {
            None => done.push(e),
            Some(f_coords) => {
                let f = corner.to_parent(&f_coords);
                debug_assert!(alg.is_idempotent(&f));
                let rest: CycVec = e.iter().zip(f.iter()).map(|(a, b)| a.sub(b)).collect();
                debug_assert!(alg.is_idempotent(&rest));
                work.push(f);
                work.push(rest);
            }
        }
    }
    let mut pieces = Vec::new();
    for e in &done {
        let r = alg.right_mult_matrix(e);
        let cols: Vec<CycVec> = (0..alg.dim).map(|c| r.column(c)).collect();
        let basis = span_basis(&cols, alg.dim);
        pieces.push(regular.submodule(&basis));
    }
    pieces.sort_by(|a, b| b.dim.cmp(&a.dim));
    Ok(pieces)
}

struct CornerAlgebra {
    alg: FinAlgebra,
    basis: Vec<CycVec>,
}

impl CornerAlgebra {
    fn to_parent(&self, coords: &[CycScalar]) -> CycVec {
        let dim = self.basis[0].len();
        let mut v = vec![CycScalar::zero(); dim];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, b) in self.basis[j].iter().enumerate() {
                if !b.is_zero() {
                    v[slot] = v[slot].add(&c.mul(b));
                }
            }
        }
        v
    }
}

/// e A e with unit e, as an abstract algebra over a reduced basis.
fn corner_algebra(alg: &FinAlgebra, e: &[CycScalar]) -> CornerAlgebra {
    let mut vecs = Vec::new();
    for i in 0..alg.dim {
        let w = alg.mul_vec(&alg.mul_vec(e, &alg.basis_vec(i)), e);
        vecs.push(w);
    }
    let basis = span_basis(&vecs, alg.dim);
    let one_coords = express_in_basis(e, &basis).expect("e lies in eAe");
    let mut corner = FinAlgebra::new(basis.len(), one_coords, Vec::new());
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let prod = alg.mul_vec(&basis[i], &basis[j]);
            let coords = express_in_basis(&prod, &basis).expect("eAe closed under product");
            let terms: Vec<(usize, CycScalar)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            corner.set_product(i, j, terms);
        }
    }
    CornerAlgebra { alg: corner, basis }
}

fn split_recursive(m: &FDModule, out: &mut Vec<FDModule>) -> Result<(), LinalgError> {
    if m.dim == 0 {
        return Ok(());
    }
    let end = end_algebra(m);
    match find_proper_idempotent(&end.alg)? {
        None => {
            out.push(m.clone());
            Ok(())
        }
        Some(coords) => {
            let mut proj = ExactMatrix::zero(m.dim, m.dim);
            for (j, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    proj = proj.add(&end.mats[j].scale(c));
                }
            }
            debug_assert_eq!(proj.mul(&proj), proj);
            let complement = ExactMatrix::identity(m.dim).sub(&proj);
            for part in [proj, complement] {
                let cols: Vec<CycVec> = (0..m.dim).map(|c| part.column(c)).collect();
                let basis = span_basis(&cols, m.dim);
                split_recursive(&m.submodule(&basis), out)?;
            }
            Ok(())
        }
    }
}

fn group_into_classes(pieces: &[FDModule]) -> Result<Vec<Vec<usize>>, LinalgError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..pieces.len() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            if pieces[rep].dim == pieces[i].dim
                && indecomposables_isomorphic(&pieces[rep], &pieces[i])?.is_some()
            {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(classes)
}

/// Certified isomorphism test for indecomposable modules.  Returns a witness
/// intertwiner, or None with a proof of non-isomorphism: if every composite
/// k_j h_i lies in rad End(M), no combination can be invertible.
pub fn indecomposables_isomorphic(
    m: &FDModule,
    n: &FDModule,
) -> Result<Option<ExactMatrix>, LinalgError> {
    if m.dim != n.dim {
        return Ok(None);
    }
    let fwd = hom_space(m, n);
    if fwd.is_empty() {
        return Ok(None);
    }
    for h in &fwd {
        if linalg::is_invertible(h) {
            return Ok(Some(h.clone()));
        }
    }
    let bwd = hom_space(n, m);
    let end = end_algebra(m);
    let end_vecs: Vec<CycVec> = end.mats.iter().map(vectorize).collect();
    let rad = end.alg.radical_basis();
    for h in &fwd {
        for k in &bwd {
            let comp = k.mul(h);
            let coords = express_in_basis(&vectorize(&comp), &end_vecs)
                .expect("composite is an endomorphism");
            if !linalg::in_span(&coords, &rad, end.alg.dim) {
                // Invertible composite in a local endomorphism algebra, so h
                // is injective, hence bijective on equal dimensions.
                debug_assert!(linalg::is_invertible(h));
                return Ok(Some(h.clone()));
            }
        }
    }
    Ok(None)
}

/// Isomorphism test for arbitrary modules: quick invertible-combination
/// attempts, then full decomposition and class matching.
pub fn modules_isomorphic(m: &FDModule, n: &FDModule) -> Result<bool, LinalgError> {
    if m.dim != n.dim {
        return Ok(false);
    }
    if m.dim == 0 {
        return Ok(true);
    }
    let fwd = hom_space(m, n);
    if fwd.is_empty() {
        return Ok(false);
    }
    for h in &fwd {
        if linalg::is_invertible(h) {
            return Ok(true);
        }
    }
    let mut rng = SplitMix64::new(crate::rng::DEFAULT_SEED ^ 0x150);
    for _ in 0..24 {
        let mut t = ExactMatrix::zero(n.dim, m.dim);
        for h in &fwd {
            let c = CycScalar::from_int(rng.next_i64_in(-2, 2));
            if !c.is_zero() {
                t = t.add(&h.scale(&c));
            }
        }
        if linalg::is_invertible(&t) {
            return Ok(true);
        }
    }
    let dm = decompose_module(m)?;
    let dn = decompose_module(n)?;
    if dm.pieces.len() != dn.pieces.len() {
        return Ok(false);
    }
    // Match pieces greedily; multiplicities must agree by Krull-Schmidt.
    let mut used = vec![false; dn.pieces.len()];
    for p in &dm.pieces {
        let mut hit = None;
        for (j, q) in dn.pieces.iter().enumerate() {
            if used[j] || p.dim != q.dim {
                continue;
            }
            if indecomposables_isomorphic(p, q)?.is_some() {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => used[j] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_group_algebra(n: usize) -> Arc<FinAlgebra> {
        let mut one = vec![CycScalar::zero(); n];
        one[0] = CycScalar::one();
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let mut alg = FinAlgebra::new(n, one, labels);
        for i in 0..n {
            for j in 0..n {
                alg.set_product(i, j, vec![((i + j) % n, CycScalar::one())]);
            }
        }
        Arc::new(alg)
    }

    fn dual_numbers() -> Arc<FinAlgebra> {
        // k[x]/(x^2): local, radical spanned by x.
        let one = vec![CycScalar::one(), CycScalar::zero()];
        let mut alg = FinAlgebra::new(2, one, vec!["1".into(), "x".into()]);
        alg.set_product(0, 0, vec![(0, CycScalar::one())]);
        alg.set_product(0, 1, vec![(1, CycScalar::one())]);
        alg.set_product(1, 0, vec![(1, CycScalar::one())]);
        alg.set_product(1, 1, vec![]);
        Arc::new(alg)
    }

    fn mat2_algebra() -> Arc<FinAlgebra> {
        // 2x2 matrix units e_{ab}, basis order e00, e01, e10, e11.
        let idx = |a: usize, b: usize| a * 2 + b;
        let mut one = vec![CycScalar::zero(); 4];
        one[idx(0, 0)] = CycScalar::one();
        one[idx(1, 1)] = CycScalar::one();
        let mut alg = FinAlgebra::new(4, one, vec!["e00".into(), "e01".into(), "e10".into(), "e11".into()]);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let terms = if b == c {
                            vec![(idx(a, d), CycScalar::one())]
                        } else {
                            vec![]
                        };
                        alg.set_product(idx(a, b), idx(c, d), terms);
                    }
                }
            }
        }
        Arc::new(alg)
    }

    fn upper_triangular2() -> Arc<FinAlgebra> {
        // Basis e11, e12, e22 of upper triangular 2x2 matrices.
        let mut one = vec![CycScalar::zero(); 3];
        one[0] = CycScalar::one();
        one[2] = CycScalar::one();
        let mut alg = FinAlgebra::new(3, one, vec!["e11".into(), "e12".into(), "e22".into()]);
        alg.set_product(0, 0, vec![(0, CycScalar::one())]);
        alg.set_product(0, 1, vec![(1, CycScalar::one())]);
        alg.set_product(1, 2, vec![(1, CycScalar::one())]);
        alg.set_product(2, 2, vec![(2, CycScalar::one())]);
        Arc::new(alg)
    }

    #[test]
    fn table_algebras_are_associative_and_unital() {
        for alg in [cyclic_group_algebra(4), dual_numbers(), mat2_algebra(), upper_triangular2()] {
            assert_eq!(alg.verify_associative(), Ok(()));
            assert!(alg.verify_unital());
        }
    }

    #[test]
    fn generating_set_generates() {
        let alg = cyclic_group_algebra(6);
        let gens = alg.generating_set();
        assert!(alg.generates(&gens));
        // The cyclic generator alone suffices.
        assert!(alg.generates(&[1]));
        assert!(!alg.generates(&[0]));
    }

    #[test]
    fn radical_of_semisimple_is_zero_and_of_dual_numbers_is_x() {
        assert!(mat2_algebra().radical_basis().is_empty());
        assert!(cyclic_group_algebra(4).radical_basis().is_empty());
        let rad = dual_numbers().radical_basis();
        assert_eq!(rad.len(), 1);
        assert!(rad[0][0].is_zero());
        let t2 = upper_triangular2();
        assert_eq!(t2.radical_basis().len(), 1);
    }

    #[test]
    fn regular_module_of_cyclic_4_splits_into_characters() {
        // Over a field containing i, k[C4] has four 1-dimensional summands.
        let alg = cyclic_group_algebra(4);
        let m = FDModule::regular(&alg);
        let d = decompose_module(&m).unwrap();
        assert_eq!(d.pieces.len(), 4);
        assert!(d.pieces.iter().all(|p| p.dim == 1));
        assert_eq!(d.classes.len(), 4, "four pairwise distinct characters");
    }

    #[test]
    fn regular_module_of_cyclic_3_fails_honestly() {
        // Cube roots of unity live outside the tower: the 2-dimensional
        // piece cannot be split and the engine must say so.
        let alg = cyclic_group_algebra(3);
        let m = FDModule::regular(&alg);
        match decompose_module(&m) {
            Err(LinalgError::UnsplittableField { .. }) => {}
            other => panic!("expected UnsplittableField, got {other:?}"),
        }
    }

    #[test]
    fn matrix_algebra_regular_module_is_two_copies_of_the_column_module() {
        let alg = mat2_algebra();
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        assert_eq!(d.pieces.len(), 2);
        assert!(d.pieces.iter().all(|p| p.dim == 2));
        assert_eq!(d.classes.len(), 1, "both columns are isomorphic");
    }

    #[test]
    fn dual_numbers_regular_module_is_indecomposable() {
        let alg = dual_numbers();
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(d.pieces[0].dim, 2);
    }

    #[test]
    fn upper_triangular_has_two_nonisomorphic_projectives() {
        let alg = upper_triangular2();
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        assert_eq!(d.pieces.len(), 2);
        let mut dims: Vec<usize> = d.pieces.iter().map(|p| p.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(d.classes.len(), 2);
    }

    #[test]
    fn head_of_projective_is_simple() {
        let alg = upper_triangular2();
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        for p in &d.pieces {
            let h = p.head();
            assert_eq!(h.dim, 1, "both simples of the triangular algebra are 1-dim");
            assert!(h.validate_full());
        }
    }

    #[test]
    fn hom_space_between_distinct_characters_is_zero() {
        let alg = cyclic_group_algebra(4);
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        let h_same = hom_space(&d.pieces[0], &d.pieces[0]);
        assert_eq!(h_same.len(), 1);
        let h_diff = hom_space(&d.pieces[0], &d.pieces[1]);
        assert!(h_diff.is_empty());
    }

    #[test]
    fn modules_isomorphic_agrees_with_construction() {
        let alg = mat2_algebra();
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        assert!(modules_isomorphic(&d.pieces[0], &d.pieces[1]).unwrap());
        let t2 = upper_triangular2();
        let dt = decompose_module(&FDModule::regular(&t2)).unwrap();
        let (a, b) = (&dt.pieces[0], &dt.pieces[1]);
        assert!(!modules_isomorphic(a, b).unwrap());
        assert!(modules_isomorphic(a, a).unwrap());
    }

    #[test]
    fn end_algebra_of_simple_is_one_dimensional() {
        let alg = mat2_algebra();
        let d = decompose_module(&FDModule::regular(&alg)).unwrap();
        let e = end_algebra(&d.pieces[0]);
        assert_eq!(e.alg.dim, 1);
        assert!(e.alg.radical_basis().is_empty());
    }

    #[test]
    fn radical_quotient_of_dual_numbers_is_the_ground_field() {
        let alg = dual_numbers();
        let rad = alg.radical_basis();
        let q = alg.quotient_by_ideal(&rad);
        assert_eq!(q.alg.dim, 1);
        assert!(q.alg.verify_unital());
    }

    #[test]
    fn regular_trace_form_matches_direct_traces() {
        let alg = upper_triangular2();
        let b = alg.trace_form();
        for i in 0..3 {
            for j in 0..3 {
                let prod = alg.mul_vec(&alg.basis_vec(i), &alg.basis_vec(j));
                let tr = alg.left_mult_matrix(&prod).trace();
                assert_eq!(b.get(i, j), &tr);
            }
        }
    }
}
