//! The fixed formula corpora shipped with the crate.

use mtlfin_core::syntax::{parse_fo, SyntaxError};
use mtlfin_core::FoFormula;

pub const FO_CORPUS: &str = include_str!("../data/fo_corpus.txt");
pub const CLASSICAL_CORPUS: &str = include_str!("../data/classical_corpus.txt");

/// One formula per non-blank line; `#` starts a comment.
pub fn parse_corpus(text: &str) -> Result<Vec<FoFormula>, SyntaxError> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).map(parse_fo).collect()
}

pub fn fo_corpus() -> Vec<FoFormula> {
    parse_corpus(FO_CORPUS).expect("shipped corpus parses")
}

pub fn classical_corpus() -> Vec<FoFormula> {
    parse_corpus(CLASSICAL_CORPUS).expect("shipped corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtlfin_core::semantics::CellLayout;

    fn cells(f: &FoFormula, n: usize) -> usize {
        CellLayout::new(&f.signature().unwrap(), n).unwrap().len()
    }

    #[test]
    fn sizes_and_budget() {
        let fo = fo_corpus();
        assert_eq!(fo.len(), 50);
        assert!(fo.iter().all(|f| !f.contains_delta()));
        let cl = classical_corpus();
        assert_eq!(cl.len(), 30);
        assert!(cl.iter().all(FoFormula::is_classical));
        for f in fo.iter().chain(&cl) {
            assert!(cells(f, 3) <= 9, "{f} has {} cells", cells(f, 3));
        }
    }
}
