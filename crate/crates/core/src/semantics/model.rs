use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_cap, EvalError};
use crate::syntax::Signature;

/// Values of one predicate, tuple-major in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<E> {
    pub arity: usize,
    pub values: Vec<E>,
}

/// A finite model with domain `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model<E> {
    domain_size: usize,
    tables: BTreeMap<String, Table<E>>,
}

/// All `arity`-tuples over `{1, …, n}` in lexicographic order.
pub fn tuples(arity: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![1; arity];
    loop {
        out.push(t.clone());
        let mut i = arity;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] < n {
                t[i] += 1;
                break;
            }
            t[i] = 1;
        }
    }
}

fn pow(n: usize, arity: usize) -> usize {
    (0..arity).fold(1usize, |acc, _| acc.saturating_mul(n))
}

impl<E: Clone> Model<E> {
    pub fn new(domain_size: usize) -> Result<Model<E>, EvalError> {
        if domain_size == 0 {
            return Err(EvalError::EmptyDomain);
        }
        Ok(Model { domain_size, tables: BTreeMap::new() })
    }

    /// Every cell of every predicate in `sig` set to `value`.
    pub fn constant(sig: &Signature, domain_size: usize, value: E) -> Result<Model<E>, EvalError> {
        let mut m = Model::new(domain_size)?;
        for (p, &arity) in sig {
            m.tables.insert(p.clone(), Table { arity, values: vec![value.clone(); pow(domain_size, arity)] });
        }
        Ok(m)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn tables(&self) -> &BTreeMap<String, Table<E>> {
        &self.tables
    }

    pub fn table(&self, predicate: &str) -> Option<&Table<E>> {
        self.tables.get(predicate)
    }

    pub fn signature(&self) -> Signature {
        self.tables.iter().map(|(p, t)| (p.clone(), t.arity)).collect()
    }

    /// Adds or replaces a table; `values` must have `n^arity` entries.
    pub fn insert(&mut self, predicate: impl Into<String>, arity: usize, values: Vec<E>) -> Result<(), EvalError> {
        let predicate = predicate.into();
        let expected = pow(self.domain_size, arity);
        if values.len() != expected {
            return Err(EvalError::BadTable { predicate, expected, found: values.len() });
        }
        self.tables.insert(predicate, Table { arity, values });
        Ok(())
    }

    fn offset(&self, tuple: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &j in tuple {
            if j == 0 || j > self.domain_size {
                return None;
            }
            idx = idx * self.domain_size + (j - 1);
        }
        Some(idx)
    }

    /// `r_P(tuple)` with 1-based tuple entries.
    pub fn get(&self, predicate: &str, tuple: &[usize]) -> Option<&E> {
        let t = self.tables.get(predicate)?;
        if t.arity != tuple.len() {
            return None;
        }
        t.values.get(self.offset(tuple)?)
    }

    pub fn set(&mut self, predicate: &str, tuple: &[usize], value: E) -> Result<(), EvalError> {
        let idx = self.offset(tuple);
        let t = self
            .tables
            .get_mut(predicate)
            .ok_or_else(|| EvalError::SignatureMismatch(format!("no table for {predicate}")))?;
        match idx {
            Some(i) if t.arity == tuple.len() => {
                t.values[i] = value;
                Ok(())
            }
            _ => Err(EvalError::SignatureMismatch(format!("bad tuple for {predicate}"))),
        }
    }

    /// Applies `f` to every cell.
    pub fn map<F: Clone>(&self, mut f: impl FnMut(&E) -> F) -> Model<F> {
        Model {
            domain_size: self.domain_size,
            tables: self
                .tables
                .iter()
                .map(|(p, t)| (p.clone(), Table { arity: t.arity, values: t.values.iter().map(&mut f).collect() }))
                .collect(),
        }
    }

    /// Like [`Model::map`] but stops at the first `None`.
    pub fn try_map<F: Clone>(&self, mut f: impl FnMut(&E) -> Option<F>) -> Option<Model<F>> {
        let mut tables = BTreeMap::new();
        for (p, t) in &self.tables {
            let values = t.values.iter().map(&mut f).collect::<Option<Vec<F>>>()?;
            tables.insert(p.clone(), Table { arity: t.arity, values });
        }
        Some(Model { domain_size: self.domain_size, tables })
    }

    /// Cells in enumeration order: predicates by name, tuples lexicographic.
    pub fn cells(&self) -> impl Iterator<Item = (&str, Vec<usize>, &E)> + '_ {
        let n = self.domain_size;
        self.tables.iter().flat_map(move |(p, t)| {
            tuples(t.arity, n).into_iter().zip(t.values.iter()).map(move |(tp, v)| (p.as_str(), tp, v))
        })
    }
}

/// Where each predicate's cells sit in a flat cell vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellLayout {
    domain_size: usize,
    predicates: Vec<(String, usize, usize)>,
    total: usize,
}

impl CellLayout {
    pub fn new(sig: &Signature, domain_size: usize) -> Result<CellLayout, EvalError> {
        if domain_size == 0 {
            return Err(EvalError::EmptyDomain);
        }
        let mut predicates = Vec::with_capacity(sig.len());
        let mut total = 0usize;
        for (p, &arity) in sig {
            predicates.push((p.clone(), arity, total));
            total = total.saturating_add(pow(domain_size, arity));
        }
        Ok(CellLayout { domain_size, predicates, total })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// `(name, arity, offset)` sorted by name.
    pub fn predicates(&self) -> &[(String, usize, usize)] {
        &self.predicates
    }

    pub fn index_of(&self, predicate: &str) -> Option<usize> {
        self.predicates.binary_search_by(|(p, _, _)| p.as_str().cmp(predicate)).ok()
    }

    pub fn signature(&self) -> Signature {
        self.predicates.iter().map(|(p, a, _)| (p.clone(), *a)).collect()
    }

    pub fn model_from_cells<E: Clone>(&self, cells: &[E]) -> Model<E> {
        let n = self.domain_size;
        let mut tables = BTreeMap::new();
        for (p, arity, off) in &self.predicates {
            let len = pow(n, *arity);
            tables.insert(p.clone(), Table { arity: *arity, values: cells[*off..off + len].to_vec() });
        }
        Model { domain_size: n, tables }
    }

    /// The model's cells for the predicates of this layout. Extra tables in
    /// the model are ignored.
    pub fn cells_of<E: Clone>(&self, model: &Model<E>) -> Result<Vec<E>, EvalError> {
        if model.domain_size() != self.domain_size {
            return Err(EvalError::SignatureMismatch(format!(
                "model has domain size {}, expected {}",
                model.domain_size(),
                self.domain_size
            )));
        }
        let mut out = Vec::with_capacity(self.total);
        for (p, arity, _) in &self.predicates {
            match model.table(p) {
                Some(t) if t.arity == *arity => out.extend(t.values.iter().cloned()),
                Some(t) => {
                    return Err(EvalError::SignatureMismatch(format!(
                        "{p} has arity {} in the model and {arity} in the formula",
                        t.arity
                    )))
                }
                None => return Err(EvalError::SignatureMismatch(format!("model has no table for {p}"))),
            }
        }
        Ok(out)
    }
}

/// Counter over `len` digits in base `base`, last digit fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Odometer {
    digits: Vec<usize>,
    base: usize,
}

impl Odometer {
    pub fn new(len: usize, base: usize) -> Odometer {
        Odometer { digits: vec![0; len], base }
    }

    /// The `index`-th position in counting order.
    pub fn at(index: u128, len: usize, base: usize) -> Odometer {
        let mut digits = vec![0; len];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = (rest % base as u128) as usize;
            rest /= base as u128;
        }
        Odometer { digits, base }
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// Steps forward; returns the position of the leftmost digit that
    /// changed, or `None` after the last position.
    pub fn advance(&mut self) -> Option<usize> {
        let mut i = self.digits.len();
        while i > 0 {
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                return Some(i);
            }
            self.digits[i] = 0;
        }
        None
    }
}

/// Stream of models in canonical order; see [`enumerate_models`].
#[derive(Debug, Clone)]
pub struct ModelIter<E> {
    layout: CellLayout,
    values: Vec<E>,
    odometer: Odometer,
    done: bool,
}

impl<E: Clone> ModelIter<E> {
    pub fn layout(&self) -> &CellLayout {
        &self.layout
    }
}

impl<E: Clone> Iterator for ModelIter<E> {
    type Item = Model<E>;

    fn next(&mut self) -> Option<Model<E>> {
        if self.done {
            return None;
        }
        let cells: Vec<E> = self.odometer.digits().iter().map(|&d| self.values[d].clone()).collect();
        let model = self.layout.model_from_cells(&cells);
        self.done = self.odometer.advance().is_none();
        Some(model)
    }
}

/// Every model of `sig` over `{1..n}` with cells drawn from `values`, in
/// canonical order. There are `|values|^(Σ n^arity)` of them; more than
/// `cap` is an error.
pub fn enumerate_models<E: Clone>(
    sig: &Signature,
    n: usize,
    values: &[E],
    cap: u128,
) -> Result<ModelIter<E>, EvalError> {
    if values.is_empty() {
        return Err(EvalError::NoValues);
    }
    let layout = CellLayout::new(sig, n)?;
    check_cap(values.len(), layout.len(), cap)?;
    let odometer = Odometer::new(layout.len(), values.len());
    Ok(ModelIter { layout, values: values.to_vec(), odometer, done: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::count_cases;

    fn sig(entries: &[(&str, usize)]) -> Signature {
        entries.iter().map(|(p, a)| (String::from(*p), *a)).collect()
    }

    #[test]
    fn model_counts() {
        assert_eq!(enumerate_models(&sig(&[("P", 1)]), 1, &[0, 1], 100).unwrap().count(), 2);
        assert_eq!(enumerate_models(&sig(&[("P", 1)]), 2, &[0, 1, 2], 100).unwrap().count(), 9);
        assert_eq!(enumerate_models(&sig(&[("R", 2)]), 2, &[0, 1], 100).unwrap().count(), 16);
        assert_eq!(enumerate_models(&Signature::new(), 3, &[0, 1], 100).unwrap().count(), 1);
    }

    #[test]
    fn cap_and_empty_values() {
        let s = sig(&[("R", 2)]);
        assert_eq!(enumerate_models(&s, 2, &[0, 1], 15).unwrap_err(), EvalError::CapExceeded { count: 16, cap: 15 });
        assert_eq!(enumerate_models::<usize>(&s, 2, &[], 15).unwrap_err(), EvalError::NoValues);
        assert_eq!(count_cases(10, 100), u128::MAX);
    }

    #[test]
    fn canonical_order() {
        let s = sig(&[("Q", 0), ("P", 1)]);
        let models: Vec<_> = enumerate_models(&s, 2, &[0, 1], 100).unwrap().collect();
        // cells: P(1), P(2), Q; Q moves fastest
        assert_eq!(models[1].get("Q", &[]), Some(&1));
        assert_eq!(models[1].get("P", &[2]), Some(&0));
        assert_eq!(models[2].get("P", &[2]), Some(&1));
        assert_eq!(models[2].get("Q", &[]), Some(&0));
        assert_eq!(models[7].get("P", &[1]), Some(&1));
    }

    #[test]
    fn odometer_positions() {
        let mut o = Odometer::new(3, 3);
        for i in 0..27u128 {
            assert_eq!(o, Odometer::at(i, 3, 3));
            o.advance();
        }
        assert_eq!(tuples(2, 2), vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(tuples(0, 5), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn layout_round_trip() {
        let s = sig(&[("R", 2), ("P", 1)]);
        let layout = CellLayout::new(&s, 2).unwrap();
        assert_eq!(layout.len(), 6);
        let cells: Vec<usize> = (0..6).collect();
        let m = layout.model_from_cells(&cells);
        assert_eq!(m.get("P", &[2]), Some(&1));
        assert_eq!(m.get("R", &[2, 1]), Some(&4));
        assert_eq!(layout.cells_of(&m).unwrap(), cells);
        let mut small = Model::new(2).unwrap();
        small.insert("P", 1, vec![0, 0]).unwrap();
        assert!(matches!(layout.cells_of(&small), Err(EvalError::SignatureMismatch(_))));
    }
}
