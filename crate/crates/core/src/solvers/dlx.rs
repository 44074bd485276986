//! Algorithm X over a toroidal doubly linked sparse matrix ("dancing links").
//!
//! Columns are universe elements, rows are subsets. The search always
//! branches on the column with the fewest remaining rows, taking the lowest
//! column index on ties, and tries rows top to bottom (ascending subset
//! index), so the first cover found is fully determined by the instance.

use super::CoverVerdict;
use crate::cover::ExactCoverInstance;

const ROOT: usize = 0;

struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    /// Column header of each node.
    column: Vec<usize>,
    /// Subset index of each row node; unused for headers.
    row: Vec<usize>,
    /// Live rows per column, indexed by header node.
    size: Vec<usize>,
}

impl Links {
    fn new(eci: &ExactCoverInstance) -> Self {
        let columns = eci.universe_size();
        let headers = columns + 1;
        let nodes = headers + eci.total_size();
        let mut l = Links {
            left: Vec::with_capacity(nodes),
            right: Vec::with_capacity(nodes),
            up: Vec::with_capacity(nodes),
            down: Vec::with_capacity(nodes),
            column: Vec::with_capacity(nodes),
            row: Vec::with_capacity(nodes),
            size: vec![0; headers],
        };
        // root and headers form a ring; header c is node c
        for c in 0..headers {
            l.left.push(if c == 0 { columns } else { c - 1 });
            l.right.push(if c == columns { 0 } else { c + 1 });
            l.up.push(c);
            l.down.push(c);
            l.column.push(c);
            l.row.push(usize::MAX);
        }
        for (r, subset) in eci.subsets().iter().enumerate() {
            let first = l.left.len();
            for (j, &c) in subset.elements().iter().enumerate() {
                let node = first + j;
                let last = first + subset.len() - 1;
                l.left.push(if j == 0 { last } else { node - 1 });
                l.right.push(if node == last { first } else { node + 1 });
                // append at the bottom of column c
                let bottom = l.up[c];
                l.up.push(bottom);
                l.down.push(c);
                l.down[bottom] = node;
                l.up[c] = node;
                l.column.push(c);
                l.row.push(r);
                l.size[c] += 1;
            }
        }
        l
    }

    fn cover(&mut self, c: usize) {
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc] = rc;
        self.left[rc] = lc;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (uj, dj) = (self.up[j], self.down[j]);
                self.down[uj] = dj;
                self.up[dj] = uj;
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.column[j]] += 1;
                let (uj, dj) = (self.up[j], self.down[j]);
                self.down[uj] = j;
                self.up[dj] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc] = c;
        self.left[rc] = c;
    }

    /// Fewest live rows; the header ring is in column order, so strict `<`
    /// keeps the lowest index on ties.
    fn choose_column(&self) -> usize {
        let mut best = self.right[ROOT];
        let mut c = self.right[best];
        while c != ROOT {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        best
    }
}

struct Search {
    links: Links,
    partial: Vec<usize>,
    first: Option<Vec<usize>>,
    count: u64,
    count_all: bool,
}

impl Search {
    /// Returns true to stop the search.
    fn run(&mut self) -> bool {
        if self.links.right[ROOT] == ROOT {
            self.count += 1;
            if self.first.is_none() {
                let mut w = self.partial.clone();
                w.sort_unstable();
                self.first = Some(w);
            }
            return !self.count_all;
        }
        let c = self.links.choose_column();
        if self.links.size[c] == 0 {
            return false;
        }
        self.links.cover(c);
        let mut r = self.links.down[c];
        let mut stop = false;
        while r != c && !stop {
            self.partial.push(self.links.row[r]);
            let mut j = self.links.right[r];
            while j != r {
                self.links.cover(self.links.column[j]);
                j = self.links.right[j];
            }
            stop = self.run();
            let mut j = self.links.left[r];
            while j != r {
                self.links.uncover(self.links.column[j]);
                j = self.links.left[j];
            }
            self.partial.pop();
            r = self.links.down[r];
        }
        self.links.uncover(c);
        stop
    }
}

fn solve(eci: &ExactCoverInstance, count_all: bool) -> CoverVerdict {
    let mut s = Search {
        links: Links::new(eci),
        partial: Vec::new(),
        first: None,
        count: 0,
        count_all,
    };
    s.run();
    CoverVerdict {
        solvable: s.first.is_some(),
        witness: s.first,
        solution_count: count_all.then_some(s.count),
    }
}

/// Stops at the first exact cover found.
pub fn exact_cover_dlx(eci: &ExactCoverInstance) -> CoverVerdict {
    solve(eci, false)
}

/// Explores the whole search tree and counts every exact cover.
pub fn exact_cover_dlx_count(eci: &ExactCoverInstance) -> CoverVerdict {
    solve(eci, true)
}
