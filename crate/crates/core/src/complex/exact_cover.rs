//! Dancing-links exact cover with a node budget.
//!
//! Items are `0..items`; each option is a sorted list of items. The column
//! with fewest remaining options is branched on, lowest index first, so the
//! search order is deterministic.

pub(crate) enum Cover {
    Found(Vec<usize>),
    Exhausted(u64),
    OutOfBudget(u64),
}

struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

pub(crate) fn solve(items: usize, options: &[Vec<usize>], budget: u64) -> Cover {
    let root = items;
    let mut l = Links {
        left: Vec::new(),
        right: Vec::new(),
        up: Vec::new(),
        down: Vec::new(),
        col: Vec::new(),
        row: Vec::new(),
        size: vec![0; items],
    };
    // Column headers 0..items, root at `items`.
    for i in 0..=items {
        l.left.push(if i == 0 { items } else { i - 1 });
        l.right.push(if i == items { 0 } else { i + 1 });
        l.up.push(i);
        l.down.push(i);
        l.col.push(i);
        l.row.push(usize::MAX);
    }
    for (r, opt) in options.iter().enumerate() {
        let mut first: Option<usize> = None;
        for &it in opt {
            let node = l.left.len();
            let top = l.up[it];
            l.up.push(top);
            l.down.push(it);
            l.down[top] = node;
            l.up[it] = node;
            l.col.push(it);
            l.row.push(r);
            l.size[it] += 1;
            match first {
                None => {
                    l.left.push(node);
                    l.right.push(node);
                    first = Some(node);
                }
                Some(f) => {
                    let last = l.left[f];
                    l.left.push(last);
                    l.right.push(f);
                    l.right[last] = node;
                    l.left[f] = node;
                }
            }
        }
    }
    let mut solver = Solver {
        l,
        root,
        chosen: Vec::new(),
        nodes: 0,
        budget,
    };
    match solver.search() {
        Some(true) => {
            let rows = solver.chosen.iter().map(|&n| solver.l.row[n]).collect();
            Cover::Found(rows)
        }
        Some(false) => Cover::Exhausted(solver.nodes),
        None => Cover::OutOfBudget(solver.nodes),
    }
}

struct Solver {
    l: Links,
    root: usize,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Solver {
    fn cover(&mut self, c: usize) {
        let l = &mut self.l;
        l.right[l.left[c]] = l.right[c];
        l.left[l.right[c]] = l.left[c];
        let mut i = l.down[c];
        while i != c {
            let mut j = l.right[i];
            while j != i {
                l.down[l.up[j]] = l.down[j];
                l.up[l.down[j]] = l.up[j];
                l.size[l.col[j]] -= 1;
                j = l.right[j];
            }
            i = l.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let l = &mut self.l;
        let mut i = l.up[c];
        while i != c {
            let mut j = l.left[i];
            while j != i {
                l.size[l.col[j]] += 1;
                l.down[l.up[j]] = j;
                l.up[l.down[j]] = j;
                j = l.left[j];
            }
            i = l.up[i];
        }
        l.right[l.left[c]] = c;
        l.left[l.right[c]] = c;
    }

    /// `Some(true)` on a cover, `Some(false)` when exhausted, `None` when
    /// the budget ran out.
    fn search(&mut self) -> Option<bool> {
        if self.l.right[self.root] == self.root {
            return Some(true);
        }
        let mut best = usize::MAX;
        let mut col = self.root;
        let mut c = self.l.right[self.root];
        while c != self.root {
            if self.l.size[c] < best {
                best = self.l.size[c];
                col = c;
            }
            c = self.l.right[c];
        }
        if best == 0 {
            return Some(false);
        }
        self.cover(col);
        let mut r = self.l.down[col];
        while r != col {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.chosen.push(r);
            let mut j = self.l.right[r];
            while j != r {
                self.cover(self.l.col[j]);
                j = self.l.right[j];
            }
            match self.search() {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            let mut j = self.l.left[r];
            while j != r {
                self.uncover(self.l.col[j]);
                j = self.l.left[j];
            }
            self.chosen.pop();
            r = self.l.down[r];
        }
        self.uncover(col);
        Some(false)
    }
}
