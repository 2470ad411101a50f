//! Partition refinement with individualization.
//!
//! Works on vertex-colored graphs whose adjacency carries a weight per
//! unordered pair (loops live on the diagonal). Used for canonical labeling,
//! isomorphism and automorphism groups of small graphs and of the incidence
//! encodings of complexes.

use num_bigint::BigUint;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub(crate) struct Structure {
    n: usize,
    color: Vec<u64>,
    adj: Vec<Vec<(usize, u64)>>,
}

/// Cell of each vertex, named by the position where the cell starts.
type Cells = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Certificate {
    colors: Vec<u64>,
    edges: Vec<(u32, u32, u64)>,
}

impl Structure {
    pub fn new(color: Vec<u64>) -> Self {
        let n = color.len();
        Structure {
            n,
            color,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Add `w` to the weight of the pair `{u, v}`.
    pub fn add(&mut self, u: usize, v: usize, w: u64) {
        bump(&mut self.adj[u], v, w);
        if u != v {
            bump(&mut self.adj[v], u, w);
        }
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.adj[u]
            .iter()
            .find(|(x, _)| *x == v)
            .map_or(0, |(_, w)| *w)
    }

    fn initial_cells(&self) -> Cells {
        let mut sorted: Vec<u64> = self.color.clone();
        sorted.sort_unstable();
        self.color
            .iter()
            .map(|c| sorted.partition_point(|x| x < c) as u32)
            .collect()
    }

    /// Refine to the coarsest equitable partition below `cells`.
    fn refine(&self, cells: &mut Cells) {
        let mut count = distinct(cells);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u64)>)> = (0..self.n)
                .map(|v| {
                    let mut s: Vec<(u32, u64)> =
                        self.adj[v].iter().map(|&(u, w)| (cells[u], w)).collect();
                    s.sort_unstable();
                    (cells[v], s)
                })
                .collect();
            let mut order: Vec<usize> = (0..self.n).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut start = 0;
            for i in 0..order.len() {
                if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                    start = i;
                }
                cells[order[i]] = start as u32;
            }
            let next = distinct(cells);
            if next == count {
                return;
            }
            count = next;
        }
    }

    /// Summary of an equitable partition that any isomorphism must preserve.
    fn quotient(&self, cells: &Cells) -> Vec<(u32, Vec<(u32, u64)>, u64)> {
        let mut q: Vec<(u32, Vec<(u32, u64)>, u64)> = (0..self.n)
            .map(|v| {
                let mut s: Vec<(u32, u64)> =
                    self.adj[v].iter().map(|&(u, w)| (cells[u], w)).collect();
                s.sort_unstable();
                (cells[v], s, self.color[v])
            })
            .collect();
        q.sort();
        q.dedup();
        q
    }

    fn target_cell(&self, cells: &Cells) -> Option<u32> {
        let mut size: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in cells {
            *size.entry(c).or_default() += 1;
        }
        size.into_iter()
            .filter(|&(_, s)| s > 1)
            .min_by_key(|&(c, s)| (s, c))
            .map(|(c, _)| c)
    }

    fn members(cells: &Cells, cell: u32) -> Vec<usize> {
        (0..cells.len()).filter(|&v| cells[v] == cell).collect()
    }

    fn individualize(cells: &Cells, v: usize) -> Cells {
        let c = cells[v];
        cells
            .iter()
            .enumerate()
            .map(|(u, &x)| if x == c && u != v { c + 1 } else { x })
            .collect()
    }

    fn certificate(&self, cells: &Cells) -> Certificate {
        let mut colors = vec![0; self.n];
        for v in 0..self.n {
            colors[cells[v] as usize] = self.color[v];
        }
        let mut edges = Vec::new();
        for u in 0..self.n {
            for &(v, w) in &self.adj[u] {
                let (a, b) = (cells[u], cells[v]);
                if a <= b {
                    edges.push((a, b, w));
                }
            }
        }
        edges.sort_unstable();
        Certificate { colors, edges }
    }

    fn is_automorphism(&self, perm: &[usize]) -> bool {
        (0..self.n).all(|u| {
            self.color[u] == self.color[perm[u]]
                && self.adj[u]
                    .iter()
                    .all(|&(v, w)| self.weight(perm[u], perm[v]) == w)
                && self.adj[u].len() == self.adj[perm[u]].len()
        })
    }

    /// Canonical labeling: `labels[v]` is the canonical position of `v`.
    pub fn canonical_labeling(&self) -> (Vec<usize>, Certificate) {
        let mut state = CanonState {
            best: None,
            automorphisms: Vec::new(),
        };
        let cells = self.initial_cells();
        self.canon_search(cells, &mut Vec::new(), &mut state);
        let (cert, cells) = state.best.expect("search reaches a leaf");
        (cells.iter().map(|&c| c as usize).collect(), cert)
    }

    fn canon_search(&self, mut cells: Cells, prefix: &mut Vec<usize>, state: &mut CanonState) {
        self.refine(&mut cells);
        let Some(target) = self.target_cell(&cells) else {
            let cert = self.certificate(&cells);
            match &state.best {
                Some((best, best_cells)) if *best == cert => {
                    let mut at = vec![0; self.n];
                    for v in 0..self.n {
                        at[best_cells[v] as usize] = v;
                    }
                    let perm: Vec<usize> = (0..self.n).map(|v| at[cells[v] as usize]).collect();
                    if perm.iter().enumerate().any(|(i, &p)| i != p) {
                        state.automorphisms.push(perm);
                    }
                }
                Some((best, _)) if *best < cert => {}
                _ => state.best = Some((cert, cells)),
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in Self::members(&cells, target) {
            if !tried.is_empty() && self.same_orbit(v, &tried, prefix, &state.automorphisms) {
                continue;
            }
            prefix.push(v);
            self.canon_search(Self::individualize(&cells, v), prefix, state);
            prefix.pop();
            tried.push(v);
        }
    }

    fn same_orbit(&self, v: usize, tried: &[usize], prefix: &[usize], auts: &[Vec<usize>]) -> bool {
        let gens: Vec<&Vec<usize>> = auts
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = tried.to_vec();
        for &t in tried {
            seen[t] = true;
        }
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = g[x];
                if !seen[y] {
                    if y == v {
                        return true;
                    }
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// An isomorphism `self -> other` as a vertex map, if one exists.
    pub fn isomorphism(&self, other: &Structure) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let mut a: Vec<u64> = self.color.clone();
        let mut b: Vec<u64> = other.color.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        self.iso_search(other, self.initial_cells(), other.initial_cells())
    }

    fn iso_search(&self, other: &Structure, mut ca: Cells, mut cb: Cells) -> Option<Vec<usize>> {
        self.refine(&mut ca);
        other.refine(&mut cb);
        if self.quotient(&ca) != other.quotient(&cb) {
            return None;
        }
        let Some(target) = self.target_cell(&ca) else {
            let mut at = vec![0; other.n];
            for v in 0..other.n {
                at[cb[v] as usize] = v;
            }
            let perm: Vec<usize> = (0..self.n).map(|v| at[ca[v] as usize]).collect();
            return self.maps_onto(other, &perm).then_some(perm);
        };
        let v = Self::members(&ca, target)[0];
        let na = Self::individualize(&ca, v);
        for w in Structure::members(&cb, target) {
            if let Some(p) = self.iso_search(other, na.clone(), Self::individualize(&cb, w)) {
                return Some(p);
            }
        }
        None
    }

    fn maps_onto(&self, other: &Structure, perm: &[usize]) -> bool {
        (0..self.n).all(|u| {
            self.color[u] == other.color[perm[u]]
                && self.adj[u].len() == other.adj[perm[u]].len()
                && self.adj[u]
                    .iter()
                    .all(|&(v, w)| other.weight(perm[u], perm[v]) == w)
        })
    }

    /// Generators and order of the automorphism group, via a stabilizer chain.
    pub fn automorphism_group(&self) -> (Vec<Vec<usize>>, BigUint) {
        let mut order = BigUint::from(1u32);
        let mut gens: Vec<Vec<usize>> = Vec::new();
        let mut cells = self.initial_cells();
        loop {
            self.refine(&mut cells);
            let Some(target) = self.target_cell(&cells) else {
                break;
            };
            let members = Self::members(&cells, target);
            let base = members[0];
            let fixed = Self::individualize(&cells, base);
            let mut orbit = vec![base];
            for &w in &members[1..] {
                if self.orbit_contains(&orbit, w, &gens, &cells) {
                    orbit.push(w);
                    continue;
                }
                if let Some(g) = self.iso_search(self, fixed.clone(), Self::individualize(&cells, w)) {
                    debug_assert!(self.is_automorphism(&g));
                    gens.push(g);
                    orbit.push(w);
                }
            }
            order *= BigUint::from(orbit.len());
            cells = fixed;
        }
        (gens, order)
    }

    /// Whether `w` is reached from `orbit` by generators that preserve the
    /// current (individualized) partition.
    fn orbit_contains(&self, orbit: &[usize], w: usize, gens: &[Vec<usize>], cells: &Cells) -> bool {
        let usable: Vec<&Vec<usize>> = gens
            .iter()
            .filter(|g| (0..self.n).all(|v| cells[g[v]] == cells[v]))
            .collect();
        let mut seen = vec![false; self.n];
        let mut stack = orbit.to_vec();
        for &o in orbit {
            seen[o] = true;
        }
        while let Some(x) = stack.pop() {
            for g in &usable {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen[w]
    }
}

struct CanonState {
    best: Option<(Certificate, Cells)>,
    automorphisms: Vec<Vec<usize>>,
}

fn bump(list: &mut Vec<(usize, u64)>, v: usize, w: u64) {
    if let Some(entry) = list.iter_mut().find(|(x, _)| *x == v) {
        entry.1 += w;
    } else {
        list.push((v, w));
    }
}

fn distinct(cells: &Cells) -> usize {
    let mut v = cells.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Structure {
        let mut s = Structure::new(vec![0; n]);
        for i in 0..n {
            s.add(i, (i + 1) % n, 1);
        }
        s
    }

    #[test]
    fn cycle_group_order() {
        let (_, order) = cycle(8).automorphism_group();
        assert_eq!(order, BigUint::from(16u32));
    }

    #[test]
    fn canonical_labels_agree_on_relabeled_cycle() {
        let a = cycle(6);
        let mut b = Structure::new(vec![0; 6]);
        let p = [3, 0, 5, 1, 4, 2];
        for i in 0..6 {
            b.add(p[i], p[(i + 1) % 6], 1);
        }
        assert_eq!(a.canonical_labeling().1, b.canonical_labeling().1);
        assert!(a.isomorphism(&b).is_some());
    }

    #[test]
    fn weights_distinguish() {
        let mut a = cycle(4);
        a.add(0, 1, 1);
        let mut b = cycle(4);
        b.add(0, 2, 1);
        assert!(a.isomorphism(&b).is_none());
        assert_ne!(a.canonical_labeling().1, b.canonical_labeling().1);
    }
}
