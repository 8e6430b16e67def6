//! Pre-metric groups, exact Gauss sums, and the sixteen braided classes
//! of dimension four with a transparent fermion.
//!
//! A [`PreMetricGroup`] is a finite abelian group with a quadratic form
//! into Q/Z; its Gauss sum is evaluated exactly in the cyclotomic tower
//! and, for non-degenerate forms, yields a central-charge exponent.  The
//! sixteen classes (eight pointed ones supported on the two groups of
//! order four, eight Ising ones keyed by an odd sixteenth-root twist)
//! form a cyclic group of order sixteen under a condensation product;
//! charge addition is the engine's assertable form of that group law.
//! [`condense_invariants`] pushes a center inventory around the torsor
//! by the free-orbit rule on simples, and [`torsor_table`] lists all
//! sixteen translates of one base point.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hopf::{drinfeld_double, nichols, HopfError};
use crate::repcat::{double_context, CategoryInventory, RepcatError, SimpleRecord};
use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricError {
    /// A form exponent whose denominator does not divide 16; outside the
    /// supported cyclotomic tower.
    UnsupportedExponent,
    /// |Gauss sum|^2 is neither 0 nor the group order; carries the exact
    /// squared magnitude.
    DegenerateForm(String),
    /// The orbit rule hit a fixed point of the fermion involution; the
    /// offending simple pair is named.
    SplitUnsupported(String),
    /// The squared-dimension bookkeeping of a condensation came out
    /// wrong; both sides are carried exactly.
    DimensionLedger { got: String, expected: String },
    /// The input inventory lacks structure the operation needs (a unit
    /// label, a fermion orbit, integer dimension parts, ...).
    UnsupportedInventory(&'static str),
    /// Rank outside the supported range.
    OutOfRange,
    Hopf(HopfError),
    Repcat(RepcatError),
}

impl From<HopfError> for MetricError {
    fn from(e: HopfError) -> Self {
        MetricError::Hopf(e)
    }
}

impl From<RepcatError> for MetricError {
    fn from(e: RepcatError) -> Self {
        MetricError::Repcat(e)
    }
}

/// Finite abelian group (product of cyclic factors) with a quadratic
/// form q into Q/Z, stored as one exponent per element in mixed-radix
/// element order.  The associated bicharacter is
/// b(g,h) = q(g+h) - q(g) - q(h).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PreMetricGroup {
    pub factors: Vec<u32>,
    pub q: Vec<BigRational>,
}

fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

impl PreMetricGroup {
    pub fn new(factors: Vec<u32>, q: Vec<BigRational>) -> Self {
        let q = q.iter().map(frac).collect();
        PreMetricGroup { factors, q }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u32>() as usize
    }

    fn digits(&self, mut i: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.factors.len());
        for &n in &self.factors {
            out.push((i % n as usize) as u32);
            i /= n as usize;
        }
        out
    }

    fn index(&self, digits: &[u32]) -> usize {
        let mut i = 0usize;
        for (k, &n) in self.factors.iter().enumerate().rev() {
            i = i * n as usize + digits[k] as usize;
        }
        i
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u32> =
            da.iter().zip(&db).zip(&self.factors).map(|((x, y), n)| (x + y) % n).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let da = self.digits(a);
        let n: Vec<u32> = da.iter().zip(&self.factors).map(|(x, n)| (n - x) % n).collect();
        self.index(&n)
    }

    pub fn q_of(&self, a: usize) -> &BigRational {
        &self.q[a]
    }

    pub fn bichar(&self, a: usize, b: usize) -> BigRational {
        frac(&(&self.q[self.add(a, b)] - &self.q[a] - &self.q[b]))
    }

    /// q(0) = 0, q(-g) = q(g), and the bicharacter is biadditive.
    pub fn is_valid(&self) -> bool {
        let n = self.order();
        if self.q.len() != n || !self.q[0].is_zero() {
            return false;
        }
        for g in 0..n {
            if self.q[self.neg(g)] != self.q[g] {
                return false;
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = self.bichar(self.add(g, h), k);
                    let rhs = frac(&(self.bichar(g, k) + self.bichar(h, k)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Elements pairing trivially with the whole group.
    pub fn radical(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&g| (0..n).all(|h| self.bichar(g, h).is_zero())).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical() == vec![0]
    }

    /// Elements s with q(s) = 1/2 whose orthogonal complement is exactly
    /// {0, s}: the span of s is then a transparent fermion line equal to
    /// its own centralizer.
    pub fn lagrangian_fermions(&self) -> Vec<usize> {
        let n = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (1..n)
            .filter(|&s| {
                self.q[s] == half && {
                    let perp: Vec<usize> =
                        (0..n).filter(|&g| self.bichar(s, g).is_zero()).collect();
                    perp == vec![0, s] || perp == vec![s, 0]
                }
            })
            .collect()
    }

    /// All additive automorphisms, as permutation tables.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let k = self.factors.len();
        // candidate images for the canonical generators
        let mut images = vec![0usize; k];
        let mut out = Vec::new();
        loop {
            // build the induced map and keep it if bijective
            let map: Vec<usize> = (0..n)
                .map(|g| {
                    let d = self.digits(g);
                    let mut acc = 0usize;
                    for (i, &x) in d.iter().enumerate() {
                        for _ in 0..x {
                            acc = self.add(acc, images[i]);
                        }
                    }
                    acc
                })
                .collect();
            let mut seen = vec![false; n];
            let mut bij = true;
            for &m in &map {
                if seen[m] {
                    bij = false;
                    break;
                }
                seen[m] = true;
            }
            // a bijective additive self-map needs each generator image to
            // have order dividing the factor order, which bijectivity of
            // the induced table already certifies
            if bij {
                out.push(map);
            }
            // odometer over image tuples
            let mut pos = 0;
            loop {
                if pos == k {
                    return out;
                }
                images[pos] += 1;
                if images[pos] < n {
                    break;
                }
                images[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Build a form from Gram-style data: q(x) = sum_i a_i x_i^2 / (2 n_i)
/// + sum_{i<j} c_ij x_i x_j / gcd(n_i, n_j).  Well-defined for any
/// integer choices when every factor order is even.
pub fn quadratic_form_from_gram(factors: &[u32], diag: &[i64], cross: &[Vec<i64>]) -> PreMetricGroup {
    let shell = PreMetricGroup { factors: factors.to_vec(), q: Vec::new() };
    let n = shell.order();
    let mut q = Vec::with_capacity(n);
    for g in 0..n {
        let d = shell.digits(g);
        let mut val = BigRational::zero();
        for (i, &x) in d.iter().enumerate() {
            let num = BigInt::from(diag[i]) * BigInt::from(x) * BigInt::from(x);
            val += BigRational::new(num, BigInt::from(2 * factors[i] as i64));
        }
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                let g_ij = gcd(factors[i] as i64, factors[j] as i64);
                let num = BigInt::from(cross[i][j]) * BigInt::from(d[i]) * BigInt::from(d[j]);
                val += BigRational::new(num, BigInt::from(g_ij));
            }
        }
        q.push(frac(&val));
    }
    PreMetricGroup { factors: factors.to_vec(), q }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussData {
    /// The exact sum over the group of e^{2 pi i q(g)}.
    pub sum: CycScalar,
    /// Squared magnitude, always real; rational for every valid form met
    /// here.
    pub magnitude_sq: CycScalar,
    /// t in 0..16 with sum = sqrt(|G|) zeta_16^t, when the magnitude is
    /// exactly |G| and the quotient is a sixteenth root of unity.  The
    /// charge in eighths is t/2.
    pub charge: Option<u8>,
}

/// sqrt(n) inside the tower when n = s^2 or n = 2 s^2; None otherwise.
fn sqrt_in_tower(n: u64) -> Option<CycScalar> {
    let mut s = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            s *= p;
        }
        p += 1;
    }
    match rest {
        1 => Some(CycScalar::from_int(s as i64)),
        2 => Some(CycScalar::from_int(s as i64).mul(&CycScalar::sqrt2())),
        _ => None,
    }
}

/// Exact Gauss sum of a pre-metric group.  Errors with the exact value
/// when |sum|^2 is neither 0 nor |G| (the mark of a degenerate form).
pub fn gauss_sum(g: &PreMetricGroup) -> Result<GaussData, MetricError> {
    let mut sum = CycScalar::zero();
    for e in &g.q {
        let term = CycScalar::from_exponent(e).map_err(|_| MetricError::UnsupportedExponent)?;
        sum = sum.add(&term);
    }
    let msq = sum.mul(&sum.conj());
    let order = CycScalar::from_int(g.order() as i64);
    if msq.is_zero() {
        return Ok(GaussData { sum, magnitude_sq: msq, charge: None });
    }
    if msq != order {
        return Err(MetricError::DegenerateForm(format!("{}", msq)));
    }
    let charge = charge_exponent(&sum, g.order() as u64);
    Ok(GaussData { sum, magnitude_sq: msq, charge })
}

/// t with value = sqrt(order) zeta_16^t, if any.
fn charge_exponent(value: &CycScalar, order: u64) -> Option<u8> {
    let root = sqrt_in_tower(order)?;
    for t in 0..16u8 {
        if *value == root.mul(&CycScalar::root16(t as i64)) {
            return Some(t);
        }
    }
    None
}

/// One of the sixteen classes: a pointed one carried by a pre-metric
/// group, or an Ising one keyed by its odd twist exponent nu (the
/// sqrt(2)-dimensional simple has twist zeta_16^nu).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BKind {
    Pointed(PreMetricGroup),
    Ising { nu: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BClass {
    pub kind: BKind,
    /// Index of the transparent fermion in `simples()`.
    pub fermion: usize,
    /// Charge in half-units mod 16: the categorical Gauss sum equals
    /// 2 zeta_16^charge, so the charge in eighths is `charge`/2.
    pub charge: u8,
}

/// Simple-object data of a class: dimension, twist, grading class with
/// respect to the fermion, dual and fermion-tensor permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSimple {
    pub label: String,
    pub fpdim: CycScalar,
    pub twist: CycScalar,
    pub grading_class: u8,
    pub dual: usize,
    pub s_tensor: usize,
}

impl BClass {
    pub fn is_pointed(&self) -> bool {
        matches!(self.kind, BKind::Pointed(_))
    }

    pub fn simples(&self) -> Vec<BSimple> {
        match &self.kind {
            BKind::Pointed(g) => {
                let s = self.fermion_element(g);
                (0..g.order())
                    .map(|e| BSimple {
                        label: format!("g{}", e),
                        fpdim: CycScalar::one(),
                        twist: CycScalar::from_exponent(g.q_of(e))
                            .expect("enumerated forms stay inside the tower"),
                        grading_class: u8::from(!g.bichar(s, e).is_zero()),
                        dual: g.neg(e),
                        s_tensor: g.add(e, s),
                    })
                    .collect()
            }
            BKind::Ising { nu } => vec![
                BSimple {
                    label: "1".to_owned(),
                    fpdim: CycScalar::one(),
                    twist: CycScalar::one(),
                    grading_class: 0,
                    dual: 0,
                    s_tensor: 1,
                },
                BSimple {
                    label: "f".to_owned(),
                    fpdim: CycScalar::one(),
                    twist: CycScalar::from_int(-1),
                    grading_class: 0,
                    dual: 1,
                    s_tensor: 0,
                },
                BSimple {
                    label: "x".to_owned(),
                    fpdim: CycScalar::sqrt2(),
                    twist: CycScalar::root16(*nu as i64),
                    grading_class: 1,
                    dual: 2,
                    s_tensor: 2,
                },
            ],
        }
    }

    fn fermion_element(&self, g: &PreMetricGroup) -> usize {
        debug_assert!(matches!(self.kind, BKind::Pointed(ref p) if p == g));
        self.fermion
    }

    /// Sum over simples of d^2 theta; equals the plain Gauss sum for a
    /// pointed class.
    pub fn categorical_gauss_sum(&self) -> CycScalar {
        let mut sum = CycScalar::zero();
        for s in self.simples() {
            sum = sum.add(&s.fpdim.mul(&s.fpdim).mul(&s.twist));
        }
        sum
    }

    /// Sum over simples of d^2; always 4 here.
    pub fn global_dim(&self) -> CycScalar {
        let mut sum = CycScalar::zero();
        for s in self.simples() {
            sum = sum.add(&s.fpdim.mul(&s.fpdim));
        }
        sum
    }
}

fn bclass_from_kind(kind: BKind, fermion: usize) -> BClass {
    let mut class = BClass { kind, fermion, charge: 0 };
    let sum = class.categorical_gauss_sum();
    class.charge = charge_exponent(&sum, 4)
        .expect("every enumerated class has |Gauss|^2 = 4 with a sixteenth-root phase");
    class
}

/// The sixteen classes, sorted by charge 0..15 in half-units: eight
/// pointed (grid enumeration of non-degenerate forms with a Lagrangian
/// fermion on the two groups of order four, up to automorphism) and
/// eight Ising entries with odd twist exponent.
pub fn enumerate_b() -> Vec<BClass> {
    let mut classes = Vec::new();
    for factors in [vec![2u32, 2], vec![4u32]] {
        for form in enumerate_forms(&factors) {
            let fermion = form.lagrangian_fermions()[0];
            classes.push(bclass_from_kind(BKind::Pointed(form), fermion));
        }
    }
    for nu in (1u8..16).step_by(2) {
        classes.push(bclass_from_kind(BKind::Ising { nu }, 1));
    }
    classes.sort_by_key(|c| c.charge);
    classes
}

/// Non-degenerate forms with a Lagrangian fermion on the given factor
/// list, one representative per automorphism orbit, found on the
/// sixteenth-denominator grid (coarser forms appear there too, and the
/// validity filter removes grid points that are not quadratic).  The
/// grid runs in integer sixteenths; rationals enter only for survivors.
fn enumerate_forms(factors: &[u32]) -> Vec<PreMetricGroup> {
    let shell = PreMetricGroup { factors: factors.to_vec(), q: Vec::new() };
    let n = shell.order();
    let add: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| shell.add(a, b)).collect()).collect();
    let neg: Vec<usize> = (0..n).map(|a| shell.neg(a)).collect();
    let autos = shell.automorphisms();
    let bichar16 = |q: &[u8], a: usize, b: usize| (32 + q[add[a][b]] - q[a] - q[b]) % 16;
    let mut reps: Vec<Vec<u8>> = Vec::new();
    let mut assign = vec![0u8; n - 1];
    'grid: loop {
        let mut q = vec![0u8; n];
        q[1..].copy_from_slice(&assign);
        let valid = (0..n).all(|g| q[neg[g]] == q[g])
            && (0..n).all(|g| {
                (0..n).all(|h| {
                    (0..n).all(|k| {
                        bichar16(&q, add[g][h], k)
                            == (bichar16(&q, g, k) + bichar16(&q, h, k)) % 16
                    })
                })
            });
        let keep = valid
            && (1..n).all(|g| (0..n).any(|h| bichar16(&q, g, h) != 0))
            && (1..n).any(|s| {
                q[s] == 8 && (0..n).all(|g| (bichar16(&q, s, g) == 0) == (g == 0 || g == s))
            });
        if keep {
            let canon: Vec<u8> = autos
                .iter()
                .map(|a| (0..n).map(|g| q[a[g]]).collect::<Vec<u8>>())
                .min()
                .expect("at least the identity automorphism");
            if !reps.contains(&canon) {
                reps.push(canon);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == assign.len() {
                break 'grid;
            }
            assign[pos] += 1;
            if assign[pos] < 16 {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
    reps.into_iter()
        .map(|q16| {
            let q = q16
                .into_iter()
                .map(|j| BigRational::new(BigInt::from(j), BigInt::from(16)))
                .collect();
            PreMetricGroup::new(factors.to_vec(), q)
        })
        .collect()
}

/// Group law by charge arithmetic: the unique enumerated class whose
/// charge is the sum.  Parity bookkeeping (pointed times pointed and
/// Ising times Ising land pointed, mixed lands Ising) is automatic from
/// half-unit parity.
pub fn b_compose(a: &BClass, b: &BClass) -> BClass {
    b_compose_in(&enumerate_b(), a, b)
}

/// Same law against an already-enumerated class list.
pub fn b_compose_in(classes: &[BClass], a: &BClass, b: &BClass) -> BClass {
    let t = (a.charge + b.charge) % 16;
    classes
        .iter()
        .find(|c| c.charge == t)
        .expect("charges of the enumerated classes cover 0..16")
        .clone()
}

/// The inventory-level condensation product: pair the simples of `inv`
/// with those of `b` class-by-class, quotient by the free involution
/// tensoring with (fermion, fermion), and read the result's records off
/// the orbits.  Charge offsets add; the squared-dimension ledger must
/// come out to a quarter of the product of the inputs'.
pub fn condense_invariants(
    inv: &CategoryInventory,
    b: &BClass,
) -> Result<CategoryInventory, MetricError> {
    let records = &inv.simple_records;
    let idx_of = |label: &str| records.iter().position(|r| r.label == label);
    let unit_a = idx_of("1").ok_or(MetricError::UnsupportedInventory("no unit label"))?;
    let s_a = idx_of(&records[unit_a].s_tensor_label)
        .ok_or(MetricError::UnsupportedInventory("unit has no fermion partner"))?;
    if s_a == unit_a {
        return Err(MetricError::UnsupportedInventory("fermion partner equals the unit"));
    }
    let bs = b.simples();
    let unit_b = 0usize;
    let s_b = b.fermion;

    // pairs with matching grading class
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, r) in records.iter().enumerate() {
        for (j, t) in bs.iter().enumerate() {
            if r.grading_class == t.grading_class {
                pairs.push((i, j));
            }
        }
    }
    let pair_pos = |p: (usize, usize)| pairs.iter().position(|&x| x == p);
    let st_a = |i: usize| idx_of(&records[i].s_tensor_label);
    let involute = |(i, j): (usize, usize)| -> Option<(usize, usize)> {
        Some((st_a(i)?, bs[j].s_tensor))
    };

    // orbits of the involution
    let mut orbit_of = vec![usize::MAX; pairs.len()];
    let mut orbits: Vec<(usize, usize)> = Vec::new(); // representative pair per orbit
    for (k, &p) in pairs.iter().enumerate() {
        if orbit_of[k] != usize::MAX {
            continue;
        }
        let q = involute(p).ok_or(MetricError::UnsupportedInventory("S-orbit leaves the simples"))?;
        if q == p {
            return Err(MetricError::SplitUnsupported(format!(
                "{} x {}",
                records[p.0].label, bs[p.1].label
            )));
        }
        let kq = pair_pos(q).ok_or(MetricError::UnsupportedInventory("involution leaves the pairs"))?;
        let id = orbits.len();
        orbit_of[k] = id;
        orbit_of[kq] = id;
        orbits.push(p);
    }

    let orbit_id = |p: (usize, usize)| -> Option<usize> { pair_pos(p).map(|k| orbit_of[k]) };
    let unit_orbit =
        orbit_id((unit_a, unit_b)).ok_or(MetricError::UnsupportedInventory("no unit pair"))?;
    let s_orbit = orbit_id((unit_a, s_b))
        .ok_or(MetricError::UnsupportedInventory("no fermion pair"))?;
    if s_orbit == unit_orbit {
        return Err(MetricError::UnsupportedInventory("fermion orbit equals the unit orbit"));
    }

    // deterministic names: unit, fermion, then the rest sorted by
    // (class, dimension, projectivity, representative)
    let mut rest: Vec<usize> =
        (0..orbits.len()).filter(|&o| o != unit_orbit && o != s_orbit).collect();
    rest.sort_by_key(|&o| {
        let (i, j) = orbits[o];
        let d = records[i].fpdim.mul(&bs[j].fpdim);
        (records[i].grading_class, format!("{}", d), records[i].projective, i, j)
    });
    let mut names = vec![String::new(); orbits.len()];
    names[unit_orbit] = "1".to_owned();
    names[s_orbit] = "S".to_owned();
    for (k, &o) in rest.iter().enumerate() {
        names[o] = format!("m{}", k);
    }

    let mut out_records = Vec::with_capacity(orbits.len());
    for (o, &(i, j)) in orbits.iter().enumerate() {
        let fpdim = records[i].fpdim.mul(&bs[j].fpdim);
        let dual_pair = (
            idx_of(&records[i].dual_label)
                .ok_or(MetricError::UnsupportedInventory("dual leaves the simples"))?,
            bs[j].dual,
        );
        let dual = orbit_id(dual_pair)
            .ok_or(MetricError::UnsupportedInventory("dual leaves the pairs"))?;
        let st = orbit_id((i, bs[j].s_tensor))
            .ok_or(MetricError::UnsupportedInventory("fermion tensor leaves the pairs"))?;
        out_records.push(SimpleRecord {
            label: names[o].clone(),
            fpdim: fpdim.clone(),
            projective: records[i].projective,
            dual_label: names[dual].clone(),
            s_tensor_label: names[st].clone(),
            grading_class: records[i].grading_class,
            pim_fpdim: fpdim, // placeholder; covers of non-projectives fixed below
        });
    }

    // projective covers: a projective simple is its own cover; the
    // non-projective ones split the remaining total dimension equally
    // (their covers are fermion translates of each other)
    let total_in = records
        .iter()
        .fold(CycScalar::zero(), |acc, r| acc.add(&r.fpdim.mul(&r.pim_fpdim)));
    let proj_sq = out_records
        .iter()
        .filter(|r| r.projective)
        .fold(CycScalar::zero(), |acc, r| acc.add(&r.fpdim.mul(&r.fpdim)));
    let nonproj: Vec<usize> =
        (0..out_records.len()).filter(|&k| !out_records[k].projective).collect();
    if !nonproj.is_empty() {
        let count = CycScalar::from_int(nonproj.len() as i64);
        let share = total_in
            .sub(&proj_sq)
            .div(&count)
            .map_err(|_| MetricError::UnsupportedInventory("cover split is not exact"))?;
        for &k in &nonproj {
            out_records[k].pim_fpdim = share.clone();
        }
    }

    // ledger: sum of d^2 must equal (input sum) (class sum) / 4
    let sq = |rs: &[SimpleRecord]| {
        rs.iter().fold(CycScalar::zero(), |acc, r| acc.add(&r.fpdim.mul(&r.fpdim)))
    };
    let got = sq(&out_records);
    let expected = sq(records)
        .mul(&b.global_dim())
        .div(&CycScalar::from_int(4))
        .map_err(|_| MetricError::UnsupportedInventory("ledger division"))?;
    if got != expected {
        return Err(MetricError::DimensionLedger {
            got: format!("{}", got),
            expected: format!("{}", expected),
        });
    }

    let integral = out_records.iter().all(|r| r.fpdim.is_integer());
    let charge = (inv.charge_offset.unwrap_or(0) + b.charge as i64).rem_euclid(16);
    let out = CategoryInventory {
        simple_records: out_records,
        integral,
        charge_offset: Some(charge),
    };
    if !out.validate() {
        return Err(MetricError::UnsupportedInventory("condensed involution broken"));
    }
    Ok(out)
}

/// Closed-form center inventory: four simples 1, S, p, q with the
/// dimensions, projectivity pattern, fermion orbit and duality parity of
/// the rank-n double; base charge 0.
pub fn center_inventory_formula(n: usize) -> CategoryInventory {
    let two_n = 1i64 << n;
    let cover = CycScalar::from_int(1i64 << (2 * n)); // dim P(1) = 4^n
    let inv_record = |label: &str, partner: &str| SimpleRecord {
        label: label.to_owned(),
        fpdim: CycScalar::one(),
        projective: n == 0,
        dual_label: label.to_owned(),
        s_tensor_label: partner.to_owned(),
        grading_class: 0,
        pim_fpdim: cover.clone(),
    };
    let proj_record = |label: &str, partner: &str| SimpleRecord {
        label: label.to_owned(),
        fpdim: CycScalar::from_int(two_n),
        projective: true,
        dual_label: if n % 2 == 0 { label.to_owned() } else { partner.to_owned() },
        s_tensor_label: partner.to_owned(),
        grading_class: 1,
        pim_fpdim: CycScalar::from_int(two_n),
    };
    CategoryInventory {
        simple_records: vec![
            inv_record("1", "S"),
            inv_record("S", "1"),
            proj_record("p", "q"),
            proj_record("q", "p"),
        ],
        integral: true,
        charge_offset: Some(0),
    }
}

/// All sixteen translates of one inventory, in charge order.  The base
/// point is normalized to charge 0 when the input carries none.
pub fn torsor_for_inventory(inv: &CategoryInventory) -> Result<Vec<CategoryInventory>, MetricError> {
    let mut base = inv.clone();
    if base.charge_offset.is_none() {
        base.charge_offset = Some(0);
    }
    enumerate_b().iter().map(|b| condense_invariants(&base, b)).collect()
}

/// Torsor of the rank-n center: computed from the live double for
/// n <= 2, from the closed-form inventory for n = 3, 4.
pub fn torsor_table(n: usize) -> Result<Vec<CategoryInventory>, MetricError> {
    let inv = match n {
        0..=2 => {
            let (h, qt) = nichols(n)?;
            let d = drinfeld_double(&h)?;
            let ctx = double_context(&d, &h, &qt)?;
            ctx.inventory()?
        }
        3..=4 => center_inventory_formula(n),
        _ => return Err(MetricError::OutOfRange),
    };
    torsor_for_inventory(&inv)
}

/// Integer pair (a, b) with value = a + b sqrt(2); None when the value
/// lies outside Z[sqrt 2].
pub fn sqrt2_parts(v: &CycScalar) -> Option<(BigInt, BigInt)> {
    let coords = v.embed_to_level(3).ok()?;
    // basis 1, zeta_8, zeta_8^2, zeta_8^3 with sqrt2 = zeta_8 - zeta_8^3
    if !coords[2].is_zero() || coords[3] != -coords[1].clone() {
        return None;
    }
    let a = &coords[0];
    let b = &coords[1];
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    Some((a.to_integer(), b.to_integer()))
}

/// Possible-occurrence pattern entry[i][j] for "simple i occurs in the
/// cover of simple j", derived from the exact dimensions alone: a
/// projective simple covers itself, and the multiset of factors of any
/// other cover must solve sum a_i d_i = dim P(j) in Z[sqrt 2] with the
/// covered simple occurring at least once.  entry 1 marks every simple
/// some solution uses.
pub fn derived_cartan_pattern(inv: &CategoryInventory) -> Result<Vec<Vec<u64>>, MetricError> {
    let n = inv.simple_records.len();
    let dims: Vec<(BigInt, BigInt)> = inv
        .simple_records
        .iter()
        .map(|r| {
            sqrt2_parts(&r.fpdim)
                .ok_or(MetricError::UnsupportedInventory("dimension outside Z[sqrt 2]"))
        })
        .collect::<Result<_, _>>()?;
    let mut pattern = vec![vec![0u64; n]; n];
    for j in 0..n {
        let rec = &inv.simple_records[j];
        if rec.projective {
            pattern[j][j] = 1;
            continue;
        }
        let target = sqrt2_parts(&rec.pim_fpdim)
            .ok_or(MetricError::UnsupportedInventory("cover dimension outside Z[sqrt 2]"))?;
        let mut used = vec![false; n];
        let mut counts = vec![0u64; n];
        search_factorizations(&dims, &target, j, 0, &mut counts, &mut used);
        for i in 0..n {
            if used[i] {
                pattern[i][j] = 1;
            }
        }
        if !used[j] {
            return Err(MetricError::UnsupportedInventory("cover cannot contain its simple"));
        }
    }
    Ok(pattern)
}

/// Depth-first enumeration of nonnegative solutions sum a_i d_i = target
/// with a_{must} >= 1, marking every index used by some solution.
fn search_factorizations(
    dims: &[(BigInt, BigInt)],
    target: &(BigInt, BigInt),
    must: usize,
    from: usize,
    counts: &mut [u64],
    used: &mut [bool],
) {
    if target.0.is_negative() || target.1.is_negative() {
        return;
    }
    if from == dims.len() {
        if target.0.is_zero() && target.1.is_zero() && counts[must] >= 1 {
            for (i, &c) in counts.iter().enumerate() {
                if c > 0 {
                    used[i] = true;
                }
            }
        }
        return;
    }
    let (da, db) = &dims[from];
    let mut rest = target.clone();
    let mut k = 0u64;
    loop {
        counts[from] = k;
        search_factorizations(dims, &rest, must, from + 1, counts, used);
        // advance while the remaining target stays nonnegative
        let next = (&rest.0 - da, &rest.1 - db);
        if next.0.is_negative() || next.1.is_negative() {
            break;
        }
        rest = next;
        k += 1;
        if k > 64 {
            break; // dimensions here are positive, so this never triggers
        }
    }
    counts[from] = 0;
}

/// Fusion samples derivable from an inventory's decorations: the unit
/// row, the fermion row, and, for a sqrt(2)-dimensional simple, the
/// square forced into the integer classes by exact dimension count.
pub fn inventory_fusion_samples(inv: &CategoryInventory) -> Vec<(usize, usize, Vec<usize>)> {
    let records = &inv.simple_records;
    let idx_of = |label: &str| records.iter().position(|r| r.label == label);
    let mut samples = Vec::new();
    let Some(unit) = idx_of("1") else {
        return samples;
    };
    for k in 0..records.len() {
        samples.push((unit, k, vec![k]));
    }
    if let Some(s) = idx_of(&records[unit].s_tensor_label) {
        for (k, r) in records.iter().enumerate() {
            if let Some(t) = idx_of(&r.s_tensor_label) {
                samples.push((s, k, vec![t]));
            }
        }
        for (k, r) in records.iter().enumerate() {
            if let Some((_, b)) = sqrt2_parts(&r.fpdim) {
                if !b.is_zero() {
                    // d = b sqrt2: the square has integer dimension, and
                    // no sqrt2-dimensional simple can appear in it
                    samples.push((k, k, vec![unit, s]));
                }
            }
        }
    }
    samples
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcat::{integer_pairing_check, sqfree_grading};
    use crate::rng::SplitMix64;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gauss_sum_matches_hand_values() {
        // two-generator group, fermion on the diagonal
        let toric = PreMetricGroup::new(
            vec![2, 2],
            vec![rational(0, 1), rational(0, 1), rational(0, 1), rational(1, 2)],
        );
        assert!(toric.is_valid() && toric.is_nondegenerate());
        let g = gauss_sum(&toric).unwrap();
        assert_eq!(g.sum, CycScalar::from_int(2));
        assert_eq!(g.magnitude_sq, CycScalar::from_int(4));
        assert_eq!(g.charge, Some(0));

        // j^2/8 on the cyclic group of order 4: sum 2 zeta_8, charge 1
        let c4 = PreMetricGroup::new(
            vec![4],
            vec![rational(0, 1), rational(1, 8), rational(1, 2), rational(1, 8)],
        );
        assert!(c4.is_valid() && c4.is_nondegenerate());
        let g = gauss_sum(&c4).unwrap();
        assert_eq!(g.sum, CycScalar::from_int(2).mul(&CycScalar::zeta8()));
        assert_eq!(g.charge, Some(2), "charge 1 in eighths is 2 half-units");

        // constant zero form on order 2: |sum|^2 = 4, not in {0, 2}
        let flat = PreMetricGroup::new(vec![2], vec![rational(0, 1), rational(0, 1)]);
        match gauss_sum(&flat) {
            Err(MetricError::DegenerateForm(v)) => assert!(v.starts_with('4'), "{v}"),
            other => panic!("expected a degenerate-form error, got {other:?}"),
        }
    }

    #[test]
    fn balanced_degenerate_form_has_zero_sum() {
        let half = PreMetricGroup::new(vec![2], vec![rational(0, 1), rational(1, 2)]);
        assert!(half.is_valid());
        assert!(!half.is_nondegenerate(), "the lone fermion line is transparent");
        let g = gauss_sum(&half).unwrap();
        assert!(g.sum.is_zero());
        assert_eq!(g.charge, None);
    }

    #[test]
    fn sixteen_classes_with_distinct_charges() {
        let classes = enumerate_b();
        assert_eq!(classes.len(), 16);
        let pointed: Vec<&BClass> = classes.iter().filter(|c| c.is_pointed()).collect();
        assert_eq!(pointed.len(), 8);
        let klein = pointed
            .iter()
            .filter(|c| matches!(&c.kind, BKind::Pointed(g) if g.factors == vec![2, 2]))
            .count();
        let cyclic = pointed
            .iter()
            .filter(|c| matches!(&c.kind, BKind::Pointed(g) if g.factors == vec![4]))
            .count();
        assert_eq!((klein, cyclic), (4, 4));
        // charges cover 0..16 exactly once: even half-units pointed, odd Ising
        let charges: Vec<u8> = classes.iter().map(|c| c.charge).collect();
        assert_eq!(charges, (0..16).collect::<Vec<u8>>());
        for c in &classes {
            assert_eq!(c.is_pointed(), c.charge % 2 == 0, "parity splits the two kinds");
        }
        // the two-generator classes carry charges 0, 4, 8, 12; the
        // cyclic ones 2, 6, 10, 14
        let klein_charges: Vec<u8> = pointed
            .iter()
            .filter(|c| matches!(&c.kind, BKind::Pointed(g) if g.factors == vec![2, 2]))
            .map(|c| c.charge)
            .collect();
        assert_eq!(klein_charges, vec![0, 4, 8, 12]);
    }

    #[test]
    fn enumerated_forms_are_nondegenerate_with_fermion() {
        for class in enumerate_b() {
            if let BKind::Pointed(g) = &class.kind {
                assert!(g.is_valid());
                assert!(g.is_nondegenerate());
                let fermions = g.lagrangian_fermions();
                assert!(fermions.contains(&class.fermion));
                assert_eq!(g.q_of(class.fermion), &rational(1, 2));
                let data = gauss_sum(g).unwrap();
                assert_eq!(data.magnitude_sq, CycScalar::from_int(4));
                assert_eq!(data.charge, Some(class.charge));
            }
            // uniform cross-check through the categorical sum
            let sum = class.categorical_gauss_sum();
            let expect =
                CycScalar::from_int(2).mul(&CycScalar::root16(class.charge as i64));
            assert_eq!(sum, expect);
        }
    }

    #[test]
    fn composition_is_charge_addition_with_unit_and_inverses() {
        let classes = enumerate_b();
        let unit = &classes[0];
        assert_eq!(unit.charge, 0);
        assert!(unit.is_pointed());
        // the free function re-enumerates; exercise it once
        assert_eq!(&b_compose(&classes[3], unit), &classes[3]);
        for a in &classes {
            assert_eq!(&b_compose_in(&classes, a, unit), a);
            for b in &classes {
                let c = b_compose_in(&classes, a, b);
                assert_eq!(c.charge, (a.charge + b.charge) % 16);
                assert_eq!(c.is_pointed(), (a.charge + b.charge) % 2 == 0);
            }
            let inv = classes.iter().find(|x| (x.charge + a.charge) % 16 == 0).unwrap();
            assert_eq!(b_compose_in(&classes, a, inv).charge, 0);
        }
    }

    #[test]
    fn condensation_by_the_unit_preserves_the_fingerprint() {
        let unit = enumerate_b().remove(0);
        for n in 0..=2 {
            let inv = center_inventory_formula(n);
            let out = condense_invariants(&inv, &unit).unwrap();
            assert_eq!(out.fingerprint(), inv.fingerprint(), "rank {n}");
        }
    }

    #[test]
    fn ising_condensation_gives_one_sqrt2_simple() {
        let classes = enumerate_b();
        let inv = center_inventory_formula(1);
        for b in classes.iter().filter(|c| !c.is_pointed()) {
            let out = condense_invariants(&inv, b).unwrap();
            assert_eq!(out.simple_records.len(), 3);
            assert!(!out.integral);
            let mut dims: Vec<String> =
                out.simple_records.iter().map(|r| format!("{}", r.fpdim)).collect();
            dims.sort();
            let sqrt2_dim = CycScalar::from_int(2).mul(&CycScalar::sqrt2());
            assert!(out.simple_records.iter().any(|r| r.fpdim == sqrt2_dim));
            let proj: Vec<&SimpleRecord> =
                out.simple_records.iter().filter(|r| r.projective).collect();
            assert_eq!(proj.len(), 1);
            assert_eq!(proj[0].fpdim, sqrt2_dim);
            // the sqrt2 simple is self-dual, fermion-fixed, class 1
            assert_eq!(proj[0].dual_label, proj[0].label);
            assert_eq!(proj[0].s_tensor_label, proj[0].label);
            assert_eq!(proj[0].grading_class, 1);
            assert!(out.validate());
        }
    }

    #[test]
    fn pointed_condensation_keeps_four_integer_simples() {
        let classes = enumerate_b();
        let inv = center_inventory_formula(1);
        for b in classes.iter().filter(|c| c.is_pointed() && c.charge != 0) {
            let out = condense_invariants(&inv, b).unwrap();
            assert_eq!(out.simple_records.len(), 4);
            assert!(out.integral);
            let proj = out.simple_records.iter().filter(|r| r.projective).count();
            assert_eq!(proj, 2);
            let two = CycScalar::from_int(2);
            let twos =
                out.simple_records.iter().filter(|r| r.fpdim == two).count();
            assert_eq!(twos, 2);
            assert!(out.validate());
        }
    }

    #[test]
    fn rank_zero_torsor_shapes() {
        // semisimple base: eight rank-4 all-invertible translates and
        // eight rank-3 translates with a sqrt2 simple
        let table = torsor_for_inventory(&center_inventory_formula(0)).unwrap();
        assert_eq!(table.len(), 16);
        let rank4 = table.iter().filter(|t| t.simple_records.len() == 4).count();
        let rank3 = table.iter().filter(|t| t.simple_records.len() == 3).count();
        assert_eq!((rank4, rank3), (8, 8));
        for t in &table {
            if t.simple_records.len() == 3 {
                assert!(t.simple_records.iter().any(|r| r.fpdim == CycScalar::sqrt2()));
                assert!(!t.integral);
            } else {
                assert!(t.integral);
                assert!(t.simple_records.iter().all(|r| r.fpdim.is_one()));
            }
            // semisimple all the way down
            assert!(t.simple_records.iter().all(|r| r.projective));
        }
    }

    #[test]
    fn torsor_fingerprints_are_pairwise_distinct() {
        let table = torsor_for_inventory(&center_inventory_formula(1)).unwrap();
        let mut prints: Vec<String> = table.iter().map(|t| t.fingerprint()).collect();
        let offsets: Vec<i64> =
            table.iter().map(|t| t.charge_offset.unwrap()).collect();
        assert_eq!(offsets, (0..16).collect::<Vec<i64>>());
        prints.sort();
        prints.dedup();
        assert_eq!(prints.len(), 16);
        let integral = table.iter().filter(|t| t.integral).count();
        assert_eq!(integral, 8);
    }

    #[test]
    fn live_rank_zero_table_matches_the_formula_table() {
        let live = torsor_table(0).unwrap();
        let formula = torsor_for_inventory(&center_inventory_formula(0)).unwrap();
        let lp: Vec<String> = live.iter().map(|t| t.fingerprint()).collect();
        let fp: Vec<String> = formula.iter().map(|t| t.fingerprint()).collect();
        assert_eq!(lp, fp);
    }

    #[test]
    fn cartan_pattern_and_pairing_on_condensed_inventories() {
        let inv = center_inventory_formula(2);
        for b in enumerate_b() {
            let out = condense_invariants(&inv, &b).unwrap();
            let pattern = derived_cartan_pattern(&out).unwrap();
            let dims: Vec<CycScalar> =
                out.simple_records.iter().map(|r| r.fpdim.clone()).collect();
            let (ok, violations) = integer_pairing_check(&dims, &pattern);
            assert!(ok, "{violations:?}");
            if !out.integral {
                // the sqrt2 simple must be barred from the unit's cover
                let x = out
                    .simple_records
                    .iter()
                    .position(|r| !r.fpdim.is_integer())
                    .unwrap();
                let unit = out.simple_records.iter().position(|r| r.label == "1").unwrap();
                assert_eq!(pattern[x][unit], 0);
                let grading = sqfree_grading(&dims, &inventory_fusion_samples(&out)).unwrap();
                assert_eq!(grading.group_order, 2);
            }
        }
    }

    #[test]
    fn random_gram_forms_satisfy_the_magnitude_law() {
        let mut rng = SplitMix64::new(0x6d65747269637321);
        let shapes: [&[u32]; 5] = [&[2], &[4], &[8], &[2, 2], &[2, 4]];
        let mut nondeg = 0;
        for trial in 0..400 {
            let factors = shapes[(trial % shapes.len()) as usize];
            let k = factors.len();
            let diag: Vec<i64> =
                (0..k).map(|_| (rng.next_u64() % 16) as i64).collect();
            let mut cross = vec![vec![0i64; k]; k];
            for i in 0..k {
                for j in (i + 1)..k {
                    cross[i][j] = (rng.next_u64() % 8) as i64;
                }
            }
            let form = quadratic_form_from_gram(factors, &diag, &cross);
            assert!(form.is_valid(), "gram construction must be quadratic");
            if !form.is_nondegenerate() {
                continue;
            }
            nondeg += 1;
            let data = gauss_sum(&form).unwrap();
            assert_eq!(
                data.magnitude_sq,
                CycScalar::from_int(form.order() as i64),
                "{factors:?} {diag:?} {cross:?}"
            );
        }
        assert!(nondeg >= 100, "only {nondeg} non-degenerate samples");
    }
}
