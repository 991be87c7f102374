use crate::linker::{validate, LinkError, Linkage};

/// Draws the linkage as arcs over the sentence:
///
/// ```text
///            +---Os---+
/// +-Ds+--Ss--+    +-Ds+
/// |   |      |    |   |
/// the condor eats the meat
/// ```
///
/// Each arc spans the first characters of its two words. An arc sits one
/// row above the highest arc it encloses.
pub fn render_diagram(linkage: &Linkage) -> Result<String, LinkError> {
    let violations = validate(linkage);
    if let Some(v) = violations.first() {
        return Err(LinkError::InvalidLinkage(v.to_string()));
    }

    let mut cols = Vec::with_capacity(linkage.words.len());
    let mut word_line = String::new();
    for (i, w) in linkage.words.iter().enumerate() {
        if i > 0 {
            word_line.push(' ');
        }
        cols.push(word_line.chars().count());
        word_line.push_str(w);
    }
    if linkage.links.is_empty() {
        return Ok(word_line + "\n");
    }

    let links = &linkage.links;
    let mut height = vec![0usize; links.len()];
    let mut order: Vec<usize> = (0..links.len()).collect();
    order.sort_by_key(|&k| links[k].span());
    for &k in &order {
        let outer = &links[k];
        height[k] = 1 + links
            .iter()
            .enumerate()
            .filter(|(j, inner)| {
                *j != k
                    && outer.left <= inner.left
                    && inner.right <= outer.right
                    && inner.span() < outer.span()
            })
            .map(|(j, _)| height[j])
            .max()
            .unwrap_or(0);
    }
    let top = *height.iter().max().expect("non-empty");

    let width = word_line.chars().count();
    // rows[0] is the highest arc row, rows[top] the row of verticals.
    let mut rows = vec![vec![' '; width]; top + 1];
    for (k, l) in links.iter().enumerate() {
        let row = top - height[k];
        let (a, b) = (cols[l.left], cols[l.right]);
        rows[row][a + 1..b].fill('-');
        let label: Vec<char> = l.label.to_string().chars().collect();
        let inner = b - a - 1;
        let shown = label.len().min(inner);
        let pad = if inner > shown {
            ((inner - shown) / 2).max(1)
        } else {
            0
        };
        let start = a + 1 + pad;
        rows[row][start..start + shown].copy_from_slice(&label[..shown]);
        rows[row][a] = '+';
        rows[row][b] = '+';
        for below in rows.iter_mut().skip(row + 1) {
            for c in [a, b] {
                if below[c] == ' ' {
                    below[c] = '|';
                }
            }
        }
    }

    let mut out = String::new();
    for r in rows {
        let line: String = r.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&word_line);
    out.push('\n');
    Ok(out)
}
