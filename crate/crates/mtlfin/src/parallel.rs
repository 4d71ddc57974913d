//! Countermodel search split across worker threads.
//!
//! Each domain size is cut into index chunks; rayon's `find_map_first`
//! returns the hit from the lowest chunk, and each chunk scans in order,
//! so the certificate is the same one the sequential search finds.

use rayon::prelude::*;

use mtlfin_core::search::{
    certificate, exhausted, find_countermodel, prepare_search, SearchError, SearchOutcome, SearchSpace,
};
use mtlfin_core::{Algebra, FoFormula};

/// Models per chunk; small enough to balance, large enough to amortize.
const CHUNK: u128 = 1 << 12;

pub fn find_countermodel_par<A>(
    alg: &A,
    formula: &FoFormula,
    max_size: usize,
    values: &[A::Elem],
    cap: u128,
    jobs: usize,
) -> Result<SearchOutcome, SearchError>
where
    A: Algebra + Sync,
    A::Elem: Send + Sync,
{
    let closed = prepare_search(alg, formula, max_size)?;
    let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() else {
        return find_countermodel(alg, formula, max_size, values, cap);
    };
    pool.install(|| {
        for n in 1..=max_size {
            let space = SearchSpace::new(&closed, n, values, cap)?;
            let chunks = space.count().div_ceil(CHUNK);
            let hit = (0..chunks).into_par_iter().find_map_first(|c| space.scan(alg, c * CHUNK..(c + 1) * CHUNK));
            if let Some((i, v)) = hit {
                return Ok(SearchOutcome::Found(certificate(alg, &closed, &space.model_at(i), &v)));
            }
        }
        Ok(exhausted(alg, values, max_size))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtlfin_core::algebra::{make_chain, Family};
    use mtlfin_core::syntax::parse_fo;
    use mtlfin_core::DEFAULT_CAP;

    #[test]
    fn same_answer_for_any_worker_count() {
        let c = make_chain(Family::Nm, 5).unwrap();
        let carrier = c.carrier().unwrap();
        for text in [
            "(forall y. exists x. R(x,y)) -> exists x. forall y. R(x,y)",
            "forall x. P(x) \\/ ~P(x)",
            "(exists x. P(x) & Q(x)) -> exists x. P(x)",
        ] {
            let f = parse_fo(text).unwrap();
            let seq = find_countermodel(&c, &f, 2, &carrier, DEFAULT_CAP).unwrap();
            for jobs in [1, 2, 4] {
                assert_eq!(find_countermodel_par(&c, &f, 2, &carrier, DEFAULT_CAP, jobs).unwrap(), seq);
            }
        }
    }
}
