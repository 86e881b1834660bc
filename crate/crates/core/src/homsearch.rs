//! Backtracking search for surjections onto `S_m` that send every meridian to
//! a transposition.
//!
//! Arcs are visited in breadth-first order of the crossing graph. After each
//! assignment the Wirtinger relations propagate forced labels, so only arcs
//! left undetermined are branched on. Which arcs are forced depends only on
//! which arcs are labelled, not on the labels themselves, so every branch
//! visits the same sequence of branching arcs.
//!
//! Relabelings of `{1..m}` are pruned in two ways: fresh points are introduced
//! in increasing order, and a candidate is skipped when swapping two points
//! that fix every label so far maps it to a smaller candidate. Together these
//! keep the lexicographically least branching sequence of every orbit. The
//! results are reduced to canonical representatives, sorted and deduplicated.

use std::collections::{BTreeSet, VecDeque};

use crate::exec::Execution;
use crate::wirtinger::{propagate_in_place, Transposition, TranspositionLabeling, WirtingerPresentation};

type Labels = Vec<Option<Transposition>>;

/// Arcs in breadth-first order from arc 0, where two arcs are adjacent when
/// they meet at a crossing. Arcs unreachable from arc 0 follow in index order.
pub fn bfs_order(p: &WirtingerPresentation) -> Vec<usize> {
    let n = p.generators;
    let mut adjacent = vec![Vec::new(); n];
    for r in &p.relations {
        let arcs = [r.over, r.incoming, r.outgoing];
        for &x in &arcs {
            for &y in &arcs {
                if x != y && !adjacent[x].contains(&y) {
                    adjacent[x].push(y);
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            order.push(a);
            for &b in &adjacent[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    p: &'a WirtingerPresentation,
    order: Vec<usize>,
    m: u8,
}

enum Step {
    Done(Labels),
    Branch(Vec<Labels>),
}

impl Search<'_> {
    fn candidates(&self, labels: &Labels) -> Vec<Transposition> {
        let used = labels.iter().flatten().map(|t| t.points().1).max().unwrap_or(0);
        let swaps: Vec<Transposition> = Transposition::all(used)
            .into_iter()
            .filter(|s| labels.iter().flatten().all(|&t| s.conjugate(t) == t))
            .collect();
        Transposition::all(self.m)
            .into_iter()
            .filter(|t| {
                let (i, j) = t.points();
                j <= used || (i <= used && j == used + 1) || (i == used + 1 && j == used + 2)
            })
            .filter(|&t| swaps.iter().all(|s| s.conjugate(t) >= t))
            .collect()
    }

    fn step(&self, labels: &Labels) -> Step {
        let Some(&arc) = self.order.iter().find(|&&a| labels[a].is_none()) else {
            return Step::Done(labels.clone());
        };
        let children = self
            .candidates(labels)
            .into_iter()
            .filter_map(|t| {
                let mut child = labels.clone();
                child[arc] = Some(t);
                propagate_in_place(self.p, &mut child).ok().map(|_| child)
            })
            .collect();
        Step::Branch(children)
    }

    fn run(&self, labels: Labels, out: &mut BTreeSet<TranspositionLabeling>) {
        match self.step(&labels) {
            Step::Done(full) => {
                let l = TranspositionLabeling { m: self.m, labels: full };
                if l.is_surjective() {
                    out.insert(l.canonical());
                }
            }
            Step::Branch(children) => {
                for c in children {
                    self.run(c, out);
                }
            }
        }
    }
}

/// Frontier size at which the search is handed to worker threads.
const SPLIT_WIDTH: usize = 32;

/// All surjective transposition labelings onto `S_m` up to relabeling, as
/// sorted canonical representatives.
pub fn hom_search(p: &WirtingerPresentation, m: u8, exec: Execution) -> Vec<TranspositionLabeling> {
    assert!(m >= 2, "hom_search needs m >= 2");
    let search = Search {
        p,
        order: bfs_order(p),
        m,
    };
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Labels> = vec![vec![None; p.generators]];
    while !frontier.is_empty() && frontier.len() < SPLIT_WIDTH {
        let mut next = Vec::new();
        for labels in frontier {
            match search.step(&labels) {
                Step::Done(_) => search.run(labels, &mut out),
                Step::Branch(children) => next.extend(children),
            }
        }
        frontier = next;
    }
    let found = exec.map(&frontier, |labels| {
        let mut local = BTreeSet::new();
        search.run(labels.clone(), &mut local);
        local
    });
    out.extend(found.into_iter().flatten());
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::wirtinger::presentation;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    fn pres(pd: &str) -> WirtingerPresentation {
        presentation(&parse_pd(pd).unwrap())
    }

    #[test]
    fn bfs_visits_every_arc_once() {
        let p = pres(FIGURE_EIGHT);
        let mut order = bfs_order(&p);
        assert_eq!(order[0], 0);
        order.sort();
        assert_eq!(order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn trefoil_maps_onto_s3() {
        let homs = hom_search(&pres(TREFOIL), 3, Execution::Sequential);
        assert_eq!(homs.len(), 1);
        let l = &homs[0];
        assert!(l.is_surjective());
        assert_eq!(l.violated_relation(&pres(TREFOIL)), None);
        assert_eq!(l, &l.canonical());
    }

    #[test]
    fn figure_eight_has_no_s3_quotient() {
        assert!(hom_search(&pres(FIGURE_EIGHT), 3, Execution::Sequential).is_empty());
    }

    #[test]
    fn unknot_only_maps_onto_s2() {
        let p = pres("");
        assert_eq!(hom_search(&p, 2, Execution::Sequential).len(), 1);
        assert!(hom_search(&p, 3, Execution::Sequential).is_empty());
    }

    #[test]
    fn execution_modes_agree() {
        let p = pres(FIGURE_EIGHT);
        for m in 2..=5 {
            assert_eq!(
                hom_search(&p, m, Execution::Sequential),
                hom_search(&p, m, Execution::Parallel)
            );
        }
    }
}
