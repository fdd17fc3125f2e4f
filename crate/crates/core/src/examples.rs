//! Bundled example documents.

use crate::format::{parse_document, Document};

pub const SQUARE_AB: &str = include_str!("../data/square_ab.qp");
pub const SQUARE_AB_QP: &str = include_str!("../data/square_ab_qp.qp");
pub const SQUARE_COMMUTATIVE: &str = include_str!("../data/square_commutative.qp");
pub const TWO_ROWS: &str = include_str!("../data/two_rows.qp");
pub const DOUBLE_ARROW: &str = include_str!("../data/double_arrow.qp");
pub const SOURCE_TWO_CYCLE: &str = include_str!("../data/source_two_cycle.qp");
pub const ID_THREE: &str = include_str!("../data/id_three.qp");
pub const LINE_ABC: &str = include_str!("../data/line_abc.qp");
pub const CONCEALED_D9: &str = include_str!("../data/concealed_d9.qp");
pub const SELFINJECTIVE_W1: &str = include_str!("../data/selfinjective_w1.qp");
pub const SELFINJECTIVE_W2: &str = include_str!("../data/selfinjective_w2.qp");

pub const ALL: [(&str, &str); 11] = [
    ("square_ab", SQUARE_AB),
    ("square_ab_qp", SQUARE_AB_QP),
    ("square_commutative", SQUARE_COMMUTATIVE),
    ("two_rows", TWO_ROWS),
    ("double_arrow", DOUBLE_ARROW),
    ("source_two_cycle", SOURCE_TWO_CYCLE),
    ("id_three", ID_THREE),
    ("line_abc", LINE_ABC),
    ("concealed_d9", CONCEALED_D9),
    ("selfinjective_w1", SELFINJECTIVE_W1),
    ("selfinjective_w2", SELFINJECTIVE_W2),
];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses a bundled document; panics if the bundled text is malformed.
pub fn load(name: &str) -> Document {
    let text = get(name).unwrap_or_else(|| panic!("no bundled example `{name}`"));
    parse_document(text).unwrap_or_else(|e| panic!("bundled example `{name}`: {e}"))
}
