//! JSON formats for algebras, Hopf structures, inventories, metric groups,
//! and verification reports.
//!
//! Scalars travel as eight rational coordinate strings in the top tower
//! basis (powers of the primitive sixteenth root of unity), so every file
//! is exact and round-trips bit for bit.  Sparse structure maps travel as
//! triplet lists.  Each document carries a `schema` tag naming its format
//! version.

use hopfcat_core::algebra::FinAlgebra;
use hopfcat_core::hopf::{HopfAlgebra, QTStructure, Tensor2};
use hopfcat_core::linalg::ExactMatrix;
use hopfcat_core::metric::sqrt2_parts;
use hopfcat_core::repcat::CategoryInventory;
use hopfcat_core::verifier::{CheckStatus, VerificationReport};
use hopfcat_core::CycScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const SCHEMA_ALG: &str = "hopfcat-alg-1";
pub const SCHEMA_HOPF: &str = "hopfcat-hopf-1";
pub const SCHEMA_INV: &str = "hopfcat-inv-1";
pub const SCHEMA_MG: &str = "hopfcat-mg-1";
pub const SCHEMA_REPORT: &str = "hopfcat-report-1";

/// Eight coordinate strings, "n" or "n/d", in the degree-8 basis.
pub type ScalarJson = Vec<String>;

pub fn encode_scalar(s: &CycScalar) -> ScalarJson {
    s.embed_to_level(4)
        .expect("level 4 is the top of the tower")
        .iter()
        .map(|r| r.to_string())
        .collect()
}

pub fn decode_scalar(coords: &[String]) -> Result<CycScalar, String> {
    if coords.len() != 8 {
        return Err(format!("scalar needs 8 coordinates, got {}", coords.len()));
    }
    let mut acc = CycScalar::zero();
    for (k, c) in coords.iter().enumerate() {
        let r: BigRational =
            c.parse().map_err(|e| format!("bad coordinate {:?}: {}", c, e))?;
        if r.is_zero() {
            continue;
        }
        acc = acc.add(&CycScalar::from_rational(r).mul(&CycScalar::root16(k as i64)));
    }
    Ok(acc)
}

/// Integer-plus-root token: "0", "3", "2*sqrt2", "1+2*sqrt2"; falls back to
/// the scalar's own display form outside the quadratic ring.  Never floats.
pub fn dim_token(v: &CycScalar) -> String {
    match sqrt2_parts(v) {
        Some((a, b)) => {
            let int_zero = a.is_zero();
            let root_zero = b.is_zero();
            let root = |b: &BigInt| {
                if *b == BigInt::from(1) {
                    "sqrt2".to_owned()
                } else if *b == BigInt::from(-1) {
                    "-sqrt2".to_owned()
                } else {
                    format!("{}*sqrt2", b)
                }
            };
            match (int_zero, root_zero) {
                (true, true) => "0".to_owned(),
                (false, true) => a.to_string(),
                (true, false) => root(&b),
                (false, false) => {
                    if b.is_negative() {
                        format!("{}{}", a, root(&b))
                    } else {
                        format!("{}+{}", a, root(&b))
                    }
                }
            }
        }
        None => v.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Algebra and Hopf documents.

/// One structure-constant term: e_i e_j contains c * e_k.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductTerm {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub c: ScalarJson,
}

/// One coproduct term: the coproduct of e_i contains c * (e_a tensor e_b).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoproductTerm {
    pub i: u32,
    pub a: u32,
    pub b: u32,
    pub c: ScalarJson,
}

/// One tensor-square term: c * (e_a tensor e_b).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairTerm {
    pub a: u32,
    pub b: u32,
    pub c: ScalarJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgJson {
    pub schema: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub one: Vec<ScalarJson>,
    pub product: Vec<ProductTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfJson {
    pub schema: String,
    pub algebra: AlgJson,
    pub comult: Vec<CoproductTerm>,
    pub counit: Vec<ScalarJson>,
    /// Antipode matrix by rows.
    pub antipode: Vec<Vec<ScalarJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<PairTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_inv: Option<Vec<PairTerm>>,
}

pub fn algebra_to_json(alg: &FinAlgebra) -> AlgJson {
    let mut product = Vec::new();
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            for (k, c) in alg.product_terms(i, j) {
                product.push(ProductTerm {
                    i: i as u32,
                    j: j as u32,
                    k: *k,
                    c: encode_scalar(c),
                });
            }
        }
    }
    AlgJson {
        schema: SCHEMA_ALG.to_owned(),
        dim: alg.dim,
        labels: alg.labels.clone(),
        one: alg.one.iter().map(encode_scalar).collect(),
        product,
    }
}

pub fn algebra_from_json(doc: &AlgJson) -> Result<FinAlgebra, String> {
    if doc.schema != SCHEMA_ALG {
        return Err(format!("expected schema {:?}, got {:?}", SCHEMA_ALG, doc.schema));
    }
    let dim = doc.dim;
    if dim == 0 {
        return Err("algebra dimension must be positive".to_owned());
    }
    if doc.labels.len() != dim || doc.one.len() != dim {
        return Err("labels and unit coordinates must match the dimension".to_owned());
    }
    let one = doc.one.iter().map(|c| decode_scalar(c)).collect::<Result<Vec<_>, _>>()?;
    let mut alg = FinAlgebra::new(dim, one, doc.labels.clone());
    let mut table: Vec<Vec<Vec<(usize, CycScalar)>>> = vec![vec![Vec::new(); dim]; dim];
    for t in &doc.product {
        let (i, j, k) = (t.i as usize, t.j as usize, t.k as usize);
        if i >= dim || j >= dim || k >= dim {
            return Err(format!("product index out of range: ({}, {}, {})", t.i, t.j, t.k));
        }
        table[i][j].push((k, decode_scalar(&t.c)?));
    }
    for i in 0..dim {
        for j in 0..dim {
            alg.set_product(i, j, table[i][j].clone());
        }
    }
    Ok(alg)
}

fn pairs_to_json(t: &Tensor2) -> Vec<PairTerm> {
    t.iter().map(|(&(a, b), c)| PairTerm { a, b, c: encode_scalar(c) }).collect()
}

fn pairs_from_json(terms: &[PairTerm], dim: usize) -> Result<Tensor2, String> {
    let mut out = Tensor2::new();
    for t in terms {
        if t.a as usize >= dim || t.b as usize >= dim {
            return Err(format!("tensor index out of range: ({}, {})", t.a, t.b));
        }
        let c = decode_scalar(&t.c)?;
        if !c.is_zero() {
            out.insert((t.a, t.b), c);
        }
    }
    Ok(out)
}

pub fn hopf_to_json(h: &HopfAlgebra, qt: Option<&QTStructure>) -> HopfJson {
    let mut comult = Vec::new();
    for i in 0..h.alg.dim {
        for ((a, b), c) in h.comult_basis(i) {
            comult.push(CoproductTerm { i: i as u32, a: *a, b: *b, c: encode_scalar(c) });
        }
    }
    let antipode = (0..h.alg.dim)
        .map(|r| (0..h.alg.dim).map(|c| encode_scalar(h.antipode.get(r, c))).collect())
        .collect();
    HopfJson {
        schema: SCHEMA_HOPF.to_owned(),
        algebra: algebra_to_json(&h.alg),
        comult,
        counit: h.counit.iter().map(encode_scalar).collect(),
        antipode,
        r: qt.map(|q| pairs_to_json(&q.r)),
        r_inv: qt.map(|q| pairs_to_json(&q.r_inv)),
    }
}

pub fn hopf_from_json(doc: &HopfJson) -> Result<(HopfAlgebra, Option<QTStructure>), String> {
    if doc.schema != SCHEMA_HOPF {
        return Err(format!("expected schema {:?}, got {:?}", SCHEMA_HOPF, doc.schema));
    }
    let alg = algebra_from_json(&doc.algebra)?;
    let dim = alg.dim;
    let mut comult: Vec<Vec<((u32, u32), CycScalar)>> = vec![Vec::new(); dim];
    for t in &doc.comult {
        if t.i as usize >= dim || t.a as usize >= dim || t.b as usize >= dim {
            return Err(format!("coproduct index out of range: ({}, {}, {})", t.i, t.a, t.b));
        }
        comult[t.i as usize].push(((t.a, t.b), decode_scalar(&t.c)?));
    }
    if doc.counit.len() != dim || doc.antipode.len() != dim {
        return Err("counit and antipode must match the dimension".to_owned());
    }
    let counit = doc.counit.iter().map(|c| decode_scalar(c)).collect::<Result<Vec<_>, _>>()?;
    let mut antipode = ExactMatrix::zero(dim, dim);
    for (r, row) in doc.antipode.iter().enumerate() {
        if row.len() != dim {
            return Err(format!("antipode row {} has length {}", r, row.len()));
        }
        for (c, v) in row.iter().enumerate() {
            antipode.set(r, c, decode_scalar(v)?);
        }
    }
    let h = HopfAlgebra::new(Arc::new(alg), comult, counit, antipode)
        .map_err(|e| format!("{e:?}"))?;
    let qt = match &doc.r {
        Some(terms) => {
            let r = pairs_from_json(terms, dim)?;
            Some(QTStructure::new(&h, r).map_err(|e| format!("{e:?}"))?)
        }
        None => None,
    };
    Ok((h, qt))
}

// ---------------------------------------------------------------------------
// Inventories.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleJson {
    pub label: String,
    pub fpdim: ScalarJson,
    pub fpdim_display: String,
    pub projective: bool,
    pub dual: String,
    pub s_tensor: String,
    pub grading_class: u8,
    pub pim_fpdim: ScalarJson,
    pub pim_fpdim_display: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InventoryJson {
    pub schema: String,
    /// Simple dimensions in increasing order, e.g. "(1,1,2*sqrt2)".
    pub shape: String,
    pub simples: Vec<SimpleJson>,
    pub integral: bool,
    /// Charge in half-units mod 16, or absent when undefined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge: Option<i64>,
}

/// Sort key for dimension values a + b*sqrt2 with a single nonzero part:
/// the squared norm a^2 + 2 b^2 is monotone there and parity-separates the
/// two kinds, so no exact-value comparison is needed.
fn dim_sort_key(v: &CycScalar) -> (BigInt, String) {
    match sqrt2_parts(v) {
        Some((a, b)) => (&a * &a + BigInt::from(2) * &b * &b, String::new()),
        None => (BigInt::from(0), v.to_string()),
    }
}

pub fn inventory_shape(inv: &CategoryInventory) -> String {
    let mut dims: Vec<&CycScalar> = inv.simple_records.iter().map(|r| &r.fpdim).collect();
    dims.sort_by_key(|v| dim_sort_key(v));
    let parts: Vec<String> = dims.iter().map(|v| dim_token(v)).collect();
    format!("({})", parts.join(","))
}

pub fn inventory_to_json(inv: &CategoryInventory) -> InventoryJson {
    InventoryJson {
        schema: SCHEMA_INV.to_owned(),
        shape: inventory_shape(inv),
        simples: inv
            .simple_records
            .iter()
            .map(|r| SimpleJson {
                label: r.label.clone(),
                fpdim: encode_scalar(&r.fpdim),
                fpdim_display: dim_token(&r.fpdim),
                projective: r.projective,
                dual: r.dual_label.clone(),
                s_tensor: r.s_tensor_label.clone(),
                grading_class: r.grading_class,
                pim_fpdim: encode_scalar(&r.pim_fpdim),
                pim_fpdim_display: dim_token(&r.pim_fpdim),
            })
            .collect(),
        integral: inv.integral,
        charge: inv.charge_offset,
    }
}

// ---------------------------------------------------------------------------
// Metric groups and the sixteen classes.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricGroupJson {
    pub schema: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<u32>>,
    /// Form values as exact fractions of a full turn.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u8>,
    pub fermion: usize,
    pub charge: u8,
}

pub fn bclass_to_json(class: &hopfcat_core::metric::BClass) -> MetricGroupJson {
    use hopfcat_core::metric::BKind;
    match &class.kind {
        BKind::Pointed(g) => MetricGroupJson {
            schema: SCHEMA_MG.to_owned(),
            kind: "pointed".to_owned(),
            factors: Some(g.factors.clone()),
            q: Some(g.q.iter().map(|r| r.to_string()).collect()),
            nu: None,
            fermion: class.fermion,
            charge: class.charge,
        },
        BKind::Ising { nu } => MetricGroupJson {
            schema: SCHEMA_MG.to_owned(),
            kind: "ising".to_owned(),
            factors: None,
            q: None,
            nu: Some(*nu),
            fermion: class.fermion,
            charge: class.charge,
        },
    }
}

// ---------------------------------------------------------------------------
// Reports.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub check_id: String,
    pub claim: String,
    pub status: String,
    pub witness: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: String,
    pub overall: bool,
    pub entries: Vec<EntryJson>,
}

pub fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skip => "skip",
    }
}

pub fn report_to_json(rep: &VerificationReport) -> ReportJson {
    ReportJson {
        schema: SCHEMA_REPORT.to_owned(),
        overall: rep.overall,
        entries: rep
            .entries
            .iter()
            .map(|e| EntryJson {
                check_id: e.check_id.clone(),
                claim: e.claim.clone(),
                status: status_str(e.status).to_owned(),
                witness: e.witness.clone(),
                elapsed_ms: e.elapsed_ms,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn scalar_coordinates_round_trip() {
        let samples = [
            CycScalar::from_ratio(-7, 3),
            CycScalar::i(),
            CycScalar::zeta8(),
            CycScalar::root16(5).mul(&CycScalar::from_ratio(1, 2)),
            CycScalar::sqrt2().add(&CycScalar::from_int(2)),
        ];
        for s in &samples {
            let coords = encode_scalar(s);
            assert_eq!(coords.len(), 8);
            let back = decode_scalar(&coords).unwrap();
            assert_eq!(&back, s);
        }
    }

    #[test]
    fn dim_tokens_never_use_decimal_points() {
        let two_root = CycScalar::from_int(2).mul(&CycScalar::sqrt2());
        assert_eq!(dim_token(&two_root), "2*sqrt2");
        assert_eq!(dim_token(&CycScalar::from_int(4)), "4");
        assert_eq!(dim_token(&CycScalar::zero()), "0");
        assert_eq!(dim_token(&CycScalar::sqrt2()), "sqrt2");
        let mixed = CycScalar::from_int(1).add(&CycScalar::sqrt2());
        assert_eq!(dim_token(&mixed), "1+sqrt2");
        assert!(!dim_token(&CycScalar::i()).contains('.'));
    }

    #[test]
    fn rejecting_malformed_scalars() {
        assert!(decode_scalar(&vec!["1".to_owned(); 7]).is_err());
        let mut bad = vec!["0".to_owned(); 8];
        bad[2] = "x/y".to_owned();
        assert!(decode_scalar(&bad).is_err());
    }

    #[test]
    fn zero_is_zero_after_round_trip() {
        let z = decode_scalar(&encode_scalar(&CycScalar::zero())).unwrap();
        assert!(z.is_zero());
        assert!(BigRational::zero().to_string().parse::<BigRational>().is_ok());
    }
}
