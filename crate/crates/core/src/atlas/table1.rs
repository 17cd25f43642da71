//! The seventeen non-Olson curves over prime-degree fields and their verification.

use super::hcp::hilbert_class_poly;
use crate::arith::field::Field;
use crate::arith::poly::UniPoly;
use crate::ellcurve::{curves_isomorphic, hesse_curve, kubert_curve, torsion_subgroup, Curve};
use crate::error::{Error, Result};
use crate::numfield::{real_embedding_count, NfElement, NumberField};
use crate::quadorder::decompose;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

/// How a row's curve is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveSpec {
    /// The Hesse cubic with parameter `lambda` (power-basis vector).
    Hesse(&'static str),
    /// The Kubert-Tate curve `E(b, c)`.
    Kubert(&'static str, &'static str),
}

/// One row: field, curve, CM discriminant and torsion `(m, n)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Table1Row {
    /// Row number, starting at 1.
    pub index: usize,
    /// Defining polynomial (ascending coefficients).
    pub field: &'static str,
    /// Human-readable field name.
    pub field_name: &'static str,
    /// Curve construction.
    pub curve: CurveSpec,
    /// Human-readable curve name.
    pub curve_name: &'static str,
    /// CM discriminant.
    pub delta: i64,
    /// Torsion invariants `(m, n)`.
    pub torsion: (u64, u64),
    /// Number of real embeddings of the field.
    pub real_places: usize,
}

const fn row(
    index: usize,
    field: &'static str,
    field_name: &'static str,
    curve: CurveSpec,
    curve_name: &'static str,
    delta: i64,
    torsion: (u64, u64),
    real_places: usize,
) -> Table1Row {
    Table1Row { index, field, field_name, curve, curve_name, delta, torsion, real_places }
}

use CurveSpec::{Hesse, Kubert};

/// The table rows.
pub const TABLE1: [Table1Row; 17] = [
    row(1, "3,0,1", "Q(sqrt(-3))", Hesse("0"), "E_0", -3, (3, 3), 0),
    row(2, "1,0,1", "Q(i)", Kubert("-1/8", "0"), "E(-1/8,0)", -4, (2, 4), 0),
    row(3, "-2,0,1", "Q(sqrt(2))", Kubert("1,3/4", "0"), "E(1+3/4 sqrt(2),0)", -4, (2, 4), 2),
    row(4, "-2,0,1", "Q(sqrt(2))", Kubert("-1/32", "0"), "E(-1/32,0)", -16, (2, 4), 2),
    row(5, "-2,0,1", "Q(sqrt(2))", Kubert("1/8,1/8", "0"), "E((1+sqrt(2))/8,0)", -8, (2, 4), 2),
    row(6, "7,0,1", "Q(sqrt(-7))", Kubert("-31/512,3/512", "0"), "E((-31+3 sqrt(-7))/512,0)", -7, (2, 4), 0),
    row(7, "7,0,1", "Q(sqrt(-7))", Kubert("-1/32,3/32", "0"), "E((-1+3 sqrt(-7))/32,0)", -7, (2, 4), 0),
    row(8, "3,0,1", "Q(sqrt(-3))", Kubert("-2/9", "-1/3"), "E(-2/9,-1/3)", -3, (2, 6), 0),
    row(9, "-3,0,1", "Q(sqrt(3))", Kubert("1/9,-1/9", "-2/3,1/3"), "E((1-sqrt(3))/9,(-2+sqrt(3))/3)", -12, (2, 6), 2),
    row(10, "-3,0,1", "Q(sqrt(3))", Kubert("4/9", "1/3"), "E(4/9,1/3)", -12, (2, 6), 2),
    row(11, "3,0,1", "Q(sqrt(-3))", Kubert("-1/2,1/2", "-1"), "E((-1+sqrt(-3))/2,-1)", -3, (1, 7), 0),
    row(12, "1,0,1", "Q(i)", Kubert("0,1", "0,1"), "E(i,i)", -4, (1, 10), 0),
    row(13, "-1,-9,-15,1", "Q[b]/(b^3-15b^2-9b-1)", Kubert("1/4,5/2,1/4", "0,1"), "E(b^2/4+5b/2+1/4,b)", -3, (1, 9), 3),
    row(14, "-1,-33,105,1", "Q[b]/(b^3+105b^2-33b-1)", Kubert("1/76,25/19,-17/76", "0,1"), "E(-17b^2/76+25b/19+1/76,b)", -27, (1, 9), 3),
    row(15, "1,3,-4,1", "Q[b]/(b^3-4b^2+3b+1)", Kubert("1,4,-2", "0,1"), "E(-2b^2+4b+1,b)", -7, (1, 14), 3),
    row(16, "1,3,-186,1", "Q[b]/(b^3-186b^2+3b+1)", Kubert("-1/27,10/27,2/27", "0,1"), "E(2b^2/27+10b/27-1/27,b)", -28, (1, 14), 3),
    row(17, "-1,-7,42,6,-9,1", "Q[b]/(b^5-9b^4+6b^3+42b^2-7b-1)", Kubert("-1/16,1/4,5/8,1/4,-1/16", "0,1"), "E(-b^4/16+b^3/4+5b^2/8+b/4-1/16,b)", -11, (1, 11), 5),
];

/// Builds the field and curve of a row.
pub fn build_row(r: &Table1Row) -> Result<(Arc<NumberField>, Curve)> {
    let field = NumberField::parse(r.field)?;
    let curve = match r.curve {
        Hesse(l) => hesse_curve(&NfElement::parse(&field, l)?)?,
        Kubert(b, c) => kubert_curve(&NfElement::parse(&field, b)?, &NfElement::parse(&field, c)?)?,
    };
    Ok((field, curve))
}

/// Outcome for one row.
#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    /// Row number.
    pub index: usize,
    /// Field name.
    pub field: String,
    /// Curve name.
    pub curve: String,
    /// Discriminant from the table.
    pub delta: i64,
    /// Expected torsion shape.
    pub expected: String,
    /// Computed torsion shape.
    pub computed: Option<String>,
    /// Whether `H_D(j(E)) = 0`.
    pub cm_check: bool,
    /// Whether the number of real embeddings matches and has the parity of the degree.
    pub embedding_check: bool,
    /// Overall verdict.
    pub pass: bool,
    /// Error text, if any.
    pub error: Option<String>,
    /// Wall time.
    pub millis: u128,
}

/// Outcome of a non-isomorphism check between two rows over the same field.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    /// First row.
    pub a: usize,
    /// Second row.
    pub b: usize,
    /// Whether the curves are isomorphic over the common field.
    pub isomorphic: bool,
    /// Verdict (pass means not isomorphic).
    pub pass: bool,
}

/// Full battery result.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    /// Per-row outcomes.
    pub rows: Vec<RowReport>,
    /// Pairwise checks between selected rows sharing a field.
    pub pairs: Vec<PairReport>,
    /// Whether everything passed.
    pub pass: bool,
}

fn verify_row(r: &Table1Row) -> RowReport {
    let start = Instant::now();
    let expected = crate::ellcurve::shape_text(r.torsion.0, r.torsion.1);
    let mut rep = RowReport {
        index: r.index,
        field: r.field_name.into(),
        curve: r.curve_name.into(),
        delta: r.delta,
        expected,
        computed: None,
        cm_check: false,
        embedding_check: false,
        pass: false,
        error: None,
        millis: 0,
    };
    let run = || -> Result<(String, bool, bool)> {
        let (field, curve) = build_row(r)?;
        let t = torsion_subgroup(&curve)?;
        let h = hilbert_class_poly(&decompose(r.delta)?)?;
        let hj = curve.j_invariant().eval_q_poly(&h.poly);
        let real = real_embedding_count(&field);
        let emb = real == r.real_places && real % 2 == field.degree() % 2;
        Ok((t.shape_text(), hj.eq_zero(), emb))
    };
    match run() {
        Ok((shape, cm, emb)) => {
            rep.pass = shape == rep.expected && cm && emb;
            rep.computed = Some(shape);
            rep.cm_check = cm;
            rep.embedding_check = emb;
        }
        Err(e) => rep.error = Some(e.to_string()),
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// Verifies the selected rows (all when `rows` is `None`) and non-isomorphism of selected
/// rows sharing a field.
pub fn verify_table1(rows: Option<&[usize]>) -> Result<Table1Report> {
    let selected: Vec<&Table1Row> = match rows {
        None => TABLE1.iter().collect(),
        Some(ix) => {
            let mut v = Vec::new();
            for &i in ix {
                v.push(
                    TABLE1
                        .get(i.wrapping_sub(1))
                        .ok_or_else(|| Error::domain(format!("no row {i}; rows are 1..=17")))?,
                );
            }
            v
        }
    };
    let reports: Vec<RowReport> = selected.par_iter().map(|r| verify_row(r)).collect();
    let mut pairs = Vec::new();
    for (i, r1) in selected.iter().enumerate() {
        for r2 in &selected[i + 1..] {
            if r1.field != r2.field {
                continue;
            }
            let (_, e1) = build_row(r1)?;
            let field = e1.field().clone();
            let (_, e2) = build_row(r2)?;
            // Rebuild the second curve over the same field object.
            let e2 = Curve::new(e2.coeffs().clone().map(|c| NfElement::from_coords(&field, &c.coords()).unwrap()))?;
            let iso = curves_isomorphic(&e1, &e2)?;
            pairs.push(PairReport { a: r1.index, b: r2.index, isomorphic: iso, pass: !iso });
        }
    }
    let pass = reports.iter().all(|r| r.pass) && pairs.iter().all(|p| p.pass);
    Ok(Table1Report { rows: reports, pairs, pass })
}

/// The defining polynomial of a row's field.
pub fn row_field_poly(r: &Table1Row) -> UniPoly {
    UniPoly::parse(r.field).expect("static data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_nine_and_ten_are_related_by_one_plus_sqrt3() {
        let (f9, e9) = build_row(&TABLE1[8]).unwrap();
        let (_, e10) = build_row(&TABLE1[9]).unwrap();
        let u = NfElement::parse(&f9, "1,1").unwrap();
        let coerce = |x: &NfElement| NfElement::from_coords(&f9, &x.coords()).unwrap();
        assert_eq!(coerce(e10.c4()), u.pow_u64(4).times(e9.c4()));
        assert_eq!(coerce(e10.c6()), u.pow_u64(6).times(e9.c6()));
        let rep = verify_table1(Some(&[9, 10])).unwrap();
        assert!(rep.rows.iter().all(|r| r.pass));
        assert!(rep.pairs[0].isomorphic);
    }

    #[test]
    fn cubic_rows_with_distinct_fields() {
        let rep = verify_table1(Some(&[13, 15])).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.pairs.is_empty());
    }

    #[test]
    fn unknown_row_rejected() {
        assert!(verify_table1(Some(&[18])).is_err());
        assert!(verify_table1(Some(&[0])).is_err());
    }
}
