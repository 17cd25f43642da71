//! Reproductions of the tables: Hilbert class polynomials, the prime-degree curve battery,
//! degree sequences over class-number-one j-invariants, and the Sophie Germain scan.

mod degseq;
mod fixed;
mod hcp;
mod sgscan;
mod table1;

pub use degseq::{degree_sequence, degree_sequence_with_budget, DegreeSequence, DEFAULT_BUDGET, EXCLUDED_PAIRS};
pub use sgscan::{
    class_number_second_path, sg_scan, sg_scan_with, SGRecord, SgScanOptions, SgScanReport, REFERENCE_C_PP,
    REFERENCE_RATIO_1E9, REFERENCE_S_1E9,
};
pub use hcp::{hilbert_class_poly, start_precision, HilbertClassPoly};
pub use table1::{build_row, row_field_poly, verify_table1, CurveSpec, PairReport, RowReport, Table1Report, Table1Row, TABLE1};
