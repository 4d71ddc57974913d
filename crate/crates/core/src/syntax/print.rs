use core::fmt::{self, Display, Formatter};

use super::formula::{Atom, FoFormula, PropFormula};

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(a)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Display for PropFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Var(v) => f.write_str(v),
            PropFormula::Bot => f.write_str("bot"),
            PropFormula::Unary(op, a) => write!(f, "{}{a}", op.symbol()),
            PropFormula::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

impl Display for FoFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::Atom(a) => a.fmt(f),
            FoFormula::Bot => f.write_str("bot"),
            FoFormula::Unary(op, a) => write!(f, "{}{a}", op.symbol()),
            FoFormula::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            FoFormula::Quant(q, v, a) => write!(f, "({} {v}. {a})", q.keyword()),
        }
    }
}
