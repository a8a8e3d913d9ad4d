/// Relabeling-invariant form of a pair-weighted graph on few vertices
/// (weight 0 means no edge).
///
/// Vertices are first split into classes by color refinement; the key is the
/// smallest weight sequence, in the order `(0,1), (0,2), (1,2), (0,3), ...`,
/// over all orderings that keep the classes in order. Prefixes are compared
/// as they are built, so most orderings are cut early.
#[derive(Debug, Clone)]
pub(crate) struct Canonizer {
    n: usize,
    /// `index[a][b]`: position of the pair in the input's lexicographic order.
    index: Vec<Vec<usize>>,
}

impl Canonizer {
    pub(crate) fn new(n: usize) -> Self {
        let mut index = vec![vec![usize::MAX; n]; n];
        let mut p = 0;
        for a in 0..n {
            for b in a + 1..n {
                index[a][b] = p;
                index[b][a] = p;
                p += 1;
            }
        }
        Self { n, index }
    }

    pub(crate) fn key(&self, w: &[u8]) -> Vec<u8> {
        let n = self.n;
        let colors = self.refine(w);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| colors[v]);
        let class_at: Vec<u32> = order.iter().map(|&v| colors[v]).collect();

        let mut search = Search {
            canon: self,
            w,
            class_at,
            colors: &colors,
            perm: Vec::with_capacity(n),
            used: vec![false; n],
            cur: Vec::with_capacity(w.len()),
            best: None,
        };
        search.extend();
        search.best.expect("at least one ordering")
    }

    fn refine(&self, w: &[u8]) -> Vec<u32> {
        let n = self.n;
        let mut colors = vec![0u32; n];
        let mut classes = 1;
        loop {
            let sigs: Vec<(u32, Vec<(u8, u32)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u8, u32)> = (0..n)
                        .filter(|&u| u != v && w[self.index[v][u]] != 0)
                        .map(|u| (w[self.index[v][u]], colors[u]))
                        .collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| distinct.binary_search(s).expect("present") as u32)
                .collect();
            if distinct.len() == classes {
                return next;
            }
            classes = distinct.len();
            colors = next;
        }
    }
}

struct Search<'a> {
    canon: &'a Canonizer,
    w: &'a [u8],
    /// Class required at each position.
    class_at: Vec<u32>,
    colors: &'a [u32],
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn extend(&mut self) {
        let pos = self.perm.len();
        let n = self.colors.len();
        if pos == n {
            if self.best.as_ref().is_none_or(|b| self.cur < *b) {
                self.best = Some(self.cur.clone());
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.colors[v] != self.class_at[pos] {
                continue;
            }
            let start = self.cur.len();
            for j in 0..pos {
                self.cur.push(self.w[self.canon.index[self.perm[j]][v]]);
            }
            let worse = self.best.as_ref().is_some_and(|b| self.cur[..] > b[..self.cur.len()]);
            if !worse {
                self.used[v] = true;
                self.perm.push(v);
                self.extend();
                self.perm.pop();
                self.used[v] = false;
            }
            self.cur.truncate(start);
        }
    }
}
