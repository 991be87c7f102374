//! Workloads shared by the benchmarks.

/// Every sentence of length `len` over the words of `lex`, in lexicographic
/// order of word index.
pub fn all_sentences(lex: &linkacq::Lexicon, len: usize) -> Vec<Vec<String>> {
    let words: Vec<String> = lex.words().map(str::to_owned).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    if words.is_empty() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| words[i].clone()).collect());
        let mut p = len;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < words.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}
