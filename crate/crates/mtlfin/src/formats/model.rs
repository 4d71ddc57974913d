use std::collections::BTreeMap;
use std::fmt::Write;

use mtlfin_core::rational::{format_rational, in_unit_interval};
use mtlfin_core::semantics::{tuples, Model};
use mtlfin_core::Rational;

use super::{syntax, FormatError, Tokens};

/// Reads a model file. Within a `pred` block the tuples may come in any
/// order, but each must appear exactly once.
pub fn parse_model(text: &str) -> Result<Model<Rational>, FormatError> {
    let mut t = Tokens::new(text);
    t.keyword("mtlmodel")?;
    let line = t.line();
    if t.number("format version")? != 1 {
        return Err(syntax(line, "unsupported model format version"));
    }
    t.keyword("domain")?;
    let line = t.line();
    let n = t.number("domain size")?;
    let mut model = Model::new(n).map_err(|e| syntax(line, e.to_string()))?;
    while t.at < t.items.len() {
        let line = t.line();
        t.keyword("pred")?;
        let name = t.next("predicate name")?.to_string();
        let arity = t.number("arity")?;
        if model.table(&name).is_some() {
            return Err(syntax(line, format!("predicate {name} defined twice")));
        }
        let all = tuples(arity, n);
        let mut cells: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for _ in 0..all.len() {
            let line = t.line();
            let mut tuple = Vec::with_capacity(arity);
            for _ in 0..arity {
                let j = t.number("domain element")?;
                if j == 0 || j > n {
                    return Err(syntax(line, format!("element {j} outside 1..{n}")));
                }
                tuple.push(j);
            }
            let v = t.rational("value")?;
            if !in_unit_interval(&v) {
                return Err(syntax(line, format!("value {} outside [0, 1]", format_rational(&v))));
            }
            if cells.insert(tuple.clone(), v).is_some() {
                return Err(syntax(line, format!("tuple {tuple:?} of {name} given twice")));
            }
        }
        let values = all.into_iter().map(|tp| cells.remove(&tp).expect("all tuples present")).collect();
        model.insert(name, arity, values).map_err(|e| syntax(line, e.to_string()))?;
    }
    Ok(model)
}

/// Model file text; predicates sorted by name, tuples lexicographic.
pub fn write_model(model: &Model<Rational>) -> String {
    let mut out = String::new();
    out.push_str("mtlmodel 1\n");
    let _ = writeln!(out, "domain {}", model.domain_size());
    for (name, table) in model.tables() {
        let _ = writeln!(out, "pred {name} {}", table.arity);
        for (tp, v) in tuples(table.arity, model.domain_size()).iter().zip(&table.values) {
            for j in tp {
                let _ = write!(out, "{j} ");
            }
            let _ = writeln!(out, "{}", format_rational(v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtlfin_core::rational::ratio;

    #[test]
    fn round_trip() {
        let mut m = Model::new(2).unwrap();
        m.insert("R", 2, vec![ratio(1, 1), ratio(0, 1), ratio(1, 2), ratio(1, 2)]).unwrap();
        m.insert("Q", 0, vec![ratio(1, 3)]).unwrap();
        let text = write_model(&m);
        assert!(text.contains("pred R 2\n1 1 1\n1 2 0\n2 1 1/2\n"));
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn any_tuple_order() {
        let text = "mtlmodel 1\ndomain 2\npred P 1\n2 1/2\n1 0\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.get("P", &[1]), Some(&ratio(0, 1)));
        assert_eq!(m.get("P", &[2]), Some(&ratio(1, 2)));
    }

    #[test]
    fn errors() {
        assert!(parse_model("mtlmodel 1\ndomain 2\npred P 1\n1 0\n1 1\n").is_err());
        assert!(parse_model("mtlmodel 1\ndomain 2\npred P 1\n1 0\n3 1\n").is_err());
        assert!(parse_model("mtlmodel 1\ndomain 0\n").is_err());
        assert!(parse_model("mtlmodel 1\ndomain 1\npred P 1\n1 0\npred P 1\n1 0\n").is_err());
    }
}
