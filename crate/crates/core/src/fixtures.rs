//! The two small word-by-document examples used throughout the tests: a
//! synonymy case (two author names that co-occur through one document, plus
//! two colour words) and a polysemy case ('bank' shared by a finance and a
//! river topic).

use crate::matrix::SparseMatrix;

/// A labelled word-by-document matrix.
#[derive(Debug, Clone)]
pub struct LabelledMatrix {
    pub words: Vec<&'static str>,
    pub docs: Vec<&'static str>,
    pub matrix: SparseMatrix,
}

impl LabelledMatrix {
    fn from_rows(words: &[&'static str], docs: &[&'static str], rows: &[&[f64]]) -> Self {
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .collect();
        Self {
            words: words.to_vec(),
            docs: docs.to_vec(),
            matrix: SparseMatrix::from_triplets(words.len(), docs.len(), triplets)
                .expect("fixture is well formed"),
        }
    }

    /// Row index of `word`; panics on unknown words.
    pub fn word_index(&self, word: &str) -> usize {
        self.words
            .iter()
            .position(|w| *w == word)
            .unwrap_or_else(|| panic!("unknown word {word}"))
    }

    /// Query vector with weight 1 on each listed word.
    pub fn query(&self, words: &[&str]) -> Vec<f64> {
        let mut q = vec![0.0; self.words.len()];
        for w in words {
            q[self.word_index(w)] = 1.0;
        }
        q
    }
}

/// Synonymy example: 6 words × 5 documents of raw counts.
pub fn synonymy() -> LabelledMatrix {
    LabelledMatrix::from_rows(
        &["mark", "twain", "samuel", "clemens", "purple", "colour"],
        &["Doc1", "Doc2", "Doc3", "Doc4", "Doc5"],
        &[
            &[15.0, 0.0, 0.0, 0.0, 0.0],
            &[15.0, 0.0, 20.0, 0.0, 0.0],
            &[0.0, 10.0, 5.0, 0.0, 0.0],
            &[0.0, 20.0, 10.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 20.0, 10.0],
            &[0.0, 0.0, 0.0, 15.0, 0.0],
        ],
    )
}

/// Polysemy example: 5 words × 6 documents of binary occurrences.
pub fn polysemy() -> LabelledMatrix {
    LabelledMatrix::from_rows(
        &["money", "bed", "river", "bank", "interest"],
        &["Doc1", "Doc2", "Doc3", "Doc4", "Doc5", "Doc6"],
        &[
            &[1.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0],
            &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0],
            &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
            &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
        ],
    )
}

/// Renders a labelled count matrix back into documents of repeated words, in
/// word order.
pub fn as_documents(t: &LabelledMatrix) -> Vec<String> {
    (0..t.docs.len())
        .map(|j| {
            let mut words = Vec::new();
            for (i, w) in t.words.iter().enumerate() {
                let count = t.matrix.get(i, j) as usize;
                words.extend(std::iter::repeat_n(*w, count));
            }
            words.join(" ")
        })
        .collect()
}
