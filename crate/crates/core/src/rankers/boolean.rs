use crate::boolquery::{eval_boolean, QueryAst};
use crate::corpus::CorpusIndex;

/// Documents satisfying `ast` under term presence (`tf > 0`), sorted by id.
/// Terms outside the vocabulary are absent everywhere.
pub fn boolean_select(index: &CorpusIndex, ast: &QueryAst) -> Vec<String> {
    let mut hits: Vec<String> = index
        .docs()
        .iter()
        .enumerate()
        .filter(|(b, _)| {
            eval_boolean(ast, &|term| {
                index.term_id(term).is_some_and(|id| index.tf(id, *b) > 0)
            })
        })
        .map(|(_, d)| d.id.clone())
        .collect();
    hits.sort();
    hits
}
