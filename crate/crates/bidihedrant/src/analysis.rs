//! Graph symmetry analysis: full automorphism groups and isomorphism at
//! desk scale (n ≤ 128), arc-transitivity under a given group, normal
//! quotients / r-covers, and bi-regular dihedral subgroup search.

use std::collections::BTreeMap;

use crate::action::{self, BlockSystem};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub const AUT_VERTEX_CAP: usize = 128;

/// Equitable (1-WL) color refinement of two graphs in parallel with a
/// shared color vocabulary.  Returns `None` when the color class profiles
/// diverge (no color-preserving isomorphism can exist).
fn joint_refine(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    c1: &mut Vec<usize>,
    c2: &mut Vec<usize>,
) -> bool {
    loop {
        let key = |g: &SimpleGraph, c: &[usize], v: usize| {
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let k1: Vec<_> = (0..g1.n()).map(|v| key(g1, c1, v)).collect();
        let k2: Vec<_> = (0..g2.n()).map(|v| key(g2, c2, v)).collect();
        let mut vocab: Vec<_> = k1.iter().chain(k2.iter()).cloned().collect();
        vocab.sort();
        vocab.dedup();
        let id_of = |k: &(usize, Vec<usize>)| vocab.binary_search(k).unwrap();
        let n1: Vec<usize> = k1.iter().map(id_of).collect();
        let n2: Vec<usize> = k2.iter().map(id_of).collect();
        // Compare class size profiles.
        let mut h1: BTreeMap<usize, usize> = BTreeMap::new();
        let mut h2: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &n1 {
            *h1.entry(c).or_default() += 1;
        }
        for &c in &n2 {
            *h2.entry(c).or_default() += 1;
        }
        if h1 != h2 {
            return false;
        }
        let stable = n1 == *c1 && n2 == *c2;
        *c1 = n1;
        *c2 = n2;
        if stable {
            return true;
        }
    }
}

/// Exhaustive color-refined backtracking for an isomorphism g1 → g2
/// extending the given fixed vertex pairs.  Complete: returns `None` only
/// when no such isomorphism exists.
fn search_isomorphism(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    fixed: &[(usize, usize)],
) -> Option<Permutation> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let n = g1.n();
    let mut c1 = vec![0usize; n];
    let mut c2 = vec![0usize; n];
    // Individualize the fixed pairs with private colors.
    for (i, &(a, b)) in fixed.iter().enumerate() {
        c1[a] = i + 1;
        c2[b] = i + 1;
    }
    recurse(g1, g2, c1, c2)
}

fn recurse(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    mut c1: Vec<usize>,
    mut c2: Vec<usize>,
) -> Option<Permutation> {
    if !joint_refine(g1, g2, &mut c1, &mut c2) {
        return None;
    }
    let n = g1.n();
    // Find the smallest non-singleton class in g1 (by size, then color id).
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &c1 {
        *sizes.entry(c).or_default() += 1;
    }
    let target = sizes
        .iter()
        .filter(|&(_, &s)| s > 1)
        .min_by_key(|&(&c, &s)| (s, c))
        .map(|(&c, _)| c);
    let Some(color) = target else {
        // All classes singleton: colors define the candidate bijection.
        let mut images = vec![usize::MAX; n];
        for v in 0..n {
            let w = (0..n).find(|&w| c2[w] == c1[v])?;
            images[v] = w;
        }
        let p = Permutation::from_images(images).ok()?;
        let ok = g1
            .edges()
            .iter()
            .all(|&(u, v)| g2.has_edge(p.apply(u), p.apply(v)));
        return if ok { Some(p) } else { None };
    };
    let b = (0..n).find(|&v| c1[v] == color).unwrap();
    let fresh = n + 1; // a color no refinement value can collide with
    for w in (0..n).filter(|&w| c2[w] == color) {
        let mut d1 = c1.clone();
        let mut d2 = c2.clone();
        d1[b] = fresh;
        d2[w] = fresh;
        if let Some(p) = recurse(g1, g2, d1, d2) {
            return Some(p);
        }
    }
    None
}

/// Explicit isomorphism between two graphs, verified edge-by-edge before
/// return, or `None`.
pub fn are_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<Option<Permutation>> {
    for g in [g1, g2] {
        if g.n() > AUT_VERTEX_CAP {
            return Err(Error::GraphTooLarge {
                n: g.n(),
                cap: AUT_VERTEX_CAP,
            });
        }
    }
    if g1.n() != g2.n() {
        return Ok(None);
    }
    Ok(search_isomorphism(g1, g2, &[]))
}

/// Full automorphism group, by stabilizer-chain-style generation: walk a
/// base of vertices; at each level, for every candidate image of the base
/// vertex not yet in its orbit under the generators found so far, run a
/// complete search for an automorphism fixing the earlier base vertices.
pub fn automorphism_group(g: &SimpleGraph) -> Result<PermutationGroup> {
    let n = g.n();
    if n > AUT_VERTEX_CAP {
        return Err(Error::GraphTooLarge {
            n,
            cap: AUT_VERTEX_CAP,
        });
    }
    if n == 0 {
        return Ok(PermutationGroup::trivial(1));
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut base: Vec<usize> = Vec::new();
    loop {
        // Refine with the current base individualized to find the next
        // branch vertex.
        let mut c1 = vec![0usize; n];
        let mut c2 = vec![0usize; n];
        for (i, &b) in base.iter().enumerate() {
            c1[b] = i + 1;
            c2[b] = i + 1;
        }
        if !joint_refine(g, g, &mut c1, &mut c2) {
            unreachable!("self-refinement cannot fail");
        }
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &c1 {
            *sizes.entry(c).or_default() += 1;
        }
        let Some((&color, _)) = sizes
            .iter()
            .filter(|&(_, &s)| s > 1)
            .min_by_key(|&(&c, &s)| (s, c))
        else {
            break; // discrete partition: done
        };
        let b = (0..n).find(|&v| c1[v] == color).unwrap();
        let candidates: Vec<usize> =
            (0..n).filter(|&v| c1[v] == color && v != b).collect();
        let fixed: Vec<(usize, usize)> = base.iter().map(|&x| (x, x)).collect();
        for c in candidates {
            // Skip images already reachable from the generators fixing the
            // base prefix (every generator found at this level or deeper
            // fixes the prefix).
            if orbit_under(&gens, &base, b).contains(&c) {
                continue;
            }
            let mut f = fixed.clone();
            f.push((b, c));
            if let Some(p) = search_isomorphism(g, g, &f) {
                gens.push(p);
            }
        }
        base.push(b);
    }
    if gens.is_empty() {
        return Ok(PermutationGroup::trivial(n));
    }
    PermutationGroup::from_generators(gens)
}

/// Orbit of `point` under those generators fixing every vertex in `prefix`.
fn orbit_under(gens: &[Permutation], prefix: &[usize], point: usize) -> Vec<usize> {
    let usable: Vec<&Permutation> = gens
        .iter()
        .filter(|g| prefix.iter().all(|&b| g.apply(b) == b))
        .collect();
    let mut orbit = vec![point];
    let mut i = 0;
    while i < orbit.len() {
        let p = orbit[i];
        i += 1;
        for g in &usable {
            let q = g.apply(p);
            if !orbit.contains(&q) {
                orbit.push(q);
            }
        }
    }
    orbit
}

/// True iff the ordered adjacent pairs form a single orbit under `group`.
/// Errors if some generator does not preserve the graph.
pub fn is_arc_transitive(g: &SimpleGraph, group: &PermutationGroup) -> Result<bool> {
    for p in group.generators() {
        if !g.is_automorphism(p) {
            return Err(Error::Precondition(
                "group does not preserve the graph".into(),
            ));
        }
    }
    let edges = g.edges();
    let Some(&(u0, v0)) = edges.first() else {
        return Ok(true);
    };
    let n = g.n();
    let arc_id = |u: usize, v: usize| u * n + v;
    let mut seen = vec![false; n * n];
    let mut orbit = vec![(u0, v0)];
    seen[arc_id(u0, v0)] = true;
    let mut i = 0;
    while i < orbit.len() {
        let (u, v) = orbit[i];
        i += 1;
        for p in group.generators() {
            let (pu, pv) = (p.apply(u), p.apply(v));
            if !seen[arc_id(pu, pv)] {
                seen[arc_id(pu, pv)] = true;
                orbit.push((pu, pv));
            }
        }
    }
    Ok(orbit.len() == 2 * edges.len())
}

/// Outcome of a normal quotient: the quotient graph on N-orbits plus
/// whether the original graph is an r-cover of it.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: SimpleGraph,
    pub blocks: BlockSystem,
    /// `Some(r)` when every (vertex, adjacent block) pair sees exactly r
    /// neighbors in that block; `None` otherwise ("not-a-cover").
    pub r: Option<usize>,
    /// Rows (vertex, adjacent block index, neighbor count) — the full
    /// diagnostics when `r` is `None`, and the witness table otherwise.
    pub multiplicity_table: Vec<(usize, usize, usize)>,
    /// True when some edge of the original graph lies inside a block.
    pub has_internal_edges: bool,
}

/// Quotient of Γ by the orbits of a normal subgroup N of G.
pub fn normal_quotient(
    g: &SimpleGraph,
    group: &PermutationGroup,
    n_sub: &PermutationGroup,
) -> Result<QuotientResult> {
    if group.degree() != g.n() || n_sub.degree() != g.n() {
        return Err(Error::DegreeMismatch(g.n(), group.degree()));
    }
    if !group.has_subgroup(n_sub)? {
        return Err(Error::NotASubgroup);
    }
    for x in n_sub.generators() {
        for s in group.generators() {
            if !n_sub.contains(&x.conjugate(s))? {
                return Err(Error::NotNormal);
            }
        }
    }
    let orbits = action::orbits(n_sub);
    if orbits.len() == 1 {
        return Err(Error::TransitiveNormalSubgroup);
    }
    let blocks = BlockSystem {
        blocks: orbits.clone(),
    };
    let of = blocks.block_of(g.n());
    let k = blocks.num_blocks();
    let mut quotient = SimpleGraph::empty(k);
    let mut has_internal_edges = false;
    for (u, v) in g.edges() {
        if of[u] == of[v] {
            has_internal_edges = true;
        } else {
            quotient.add_edge(of[u], of[v])?;
        }
    }
    let mut table = Vec::new();
    let mut r: Option<usize> = None;
    let mut constant = true;
    for v in 0..g.n() {
        for bi in quotient.neighbors(of[v]) {
            let count = g
                .neighbors(v)
                .iter()
                .filter(|&&w| of[w] == *bi)
                .count();
            table.push((v, *bi, count));
            match r {
                None => r = Some(count),
                Some(x) if x != count => constant = false,
                _ => {}
            }
        }
    }
    Ok(QuotientResult {
        quotient,
        blocks,
        r: if constant { r } else { None },
        multiplicity_table: table,
        has_internal_edges,
    })
}

/// Representatives, up to conjugacy in `group`, of dihedral subgroups
/// H ≅ D_{2n} of order |VΓ|/2 that are bi-regular on the vertices.
/// Searches rotation candidates among conjugacy-class representatives of
/// cycle type (n,n,n,n), then inverting fixed-point-free involutions.
pub fn find_biregular_dihedral(
    g: &SimpleGraph,
    group: &PermutationGroup,
) -> Result<Vec<PermutationGroup>> {
    let v = g.n();
    if group.degree() != v {
        return Err(Error::DegreeMismatch(v, group.degree()));
    }
    if !v.is_multiple_of(4) || v < 8 {
        return Err(Error::Precondition(format!(
            "vertex count {v} is not 4n for n >= 2"
        )));
    }
    let n = v / 4;
    let want_type: Vec<usize> = vec![n; 4];
    let elements = group.elements()?;
    let reps = group.conjugacy_class_reps()?;
    let mut found: Vec<PermutationGroup> = Vec::new();
    for a in reps.iter().filter(|a| a.cycle_type() == want_type) {
        let a_inv = a.inverse();
        for b in &elements {
            if b.is_identity()
                || !b.compose(b).is_identity()
                || b.images().iter().enumerate().any(|(p, &im)| p == im)
            {
                continue;
            }
            if a.conjugate(b) != a_inv {
                continue;
            }
            let h = PermutationGroup::from_generators(vec![a.clone(), b.clone()])?;
            if h.order() != 2 * n as u128 || !action::is_biregular(&h) {
                continue;
            }
            if found
                .iter()
                .any(|k| subgroups_conjugate(group, k, &h, &elements))
            {
                continue;
            }
            found.push(h);
        }
    }
    Ok(found)
}

fn subgroups_conjugate(
    _group: &PermutationGroup,
    a: &PermutationGroup,
    b: &PermutationGroup,
    ambient_elements: &[Permutation],
) -> bool {
    if a.order() != b.order() {
        return false;
    }
    ambient_elements.iter().any(|g| {
        a.generators()
            .iter()
            .all(|x| b.contains(&x.conjugate(g)).unwrap_or(false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, hamming_graph};

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    #[test]
    fn aut_k4_is_s4() {
        let g = complete_graph(4);
        assert_eq!(automorphism_group(&g).unwrap().order(), 24);
    }

    #[test]
    fn aut_c5_is_d10() {
        assert_eq!(automorphism_group(&cycle_graph(5)).unwrap().order(), 10);
    }

    #[test]
    fn aut_petersen_is_120() {
        // Petersen = Kneser graph K(5,2): vertices are 2-subsets of a
        // 5-set, adjacent when disjoint.
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        let mut g = SimpleGraph::empty(10);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                if i < j && a != c && a != d && b != c && b != d {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        assert_eq!(automorphism_group(&g).unwrap().order(), 120);
    }

    #[test]
    fn aut_hamming_2_3() {
        // Aut(H(2,3)) = S3 wr S2, order 6*6*2 = 72.
        let g = hamming_graph(2, 3).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().order(), 72);
    }

    #[test]
    fn aut_generators_preserve_edges() {
        let g = cycle_graph(6);
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order(), 12);
        for p in aut.generators() {
            assert!(g.is_automorphism(p));
        }
    }

    #[test]
    fn iso_self_identity_admissible() {
        let g = cycle_graph(7);
        let p = are_isomorphic(&g, &g).unwrap().unwrap();
        assert!(g.edges().iter().all(|&(u, v)| g.has_edge(p.apply(u), p.apply(v))));
    }

    #[test]
    fn iso_relabeled_cycle() {
        let g = cycle_graph(8);
        let shuffle = perm(8, &[&[0, 5], &[2, 7, 3]]);
        let h = g.relabel(&shuffle);
        let p = are_isomorphic(&g, &h).unwrap().unwrap();
        assert!(g.edges().iter().all(|&(u, v)| h.has_edge(p.apply(u), p.apply(v))));
    }

    #[test]
    fn iso_distinguishes_c6_from_two_triangles() {
        let c6 = cycle_graph(6);
        let mut tt = SimpleGraph::empty(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            tt.add_edge(a, b).unwrap();
        }
        assert!(are_isomorphic(&c6, &tt).unwrap().is_none());
    }

    #[test]
    fn arc_transitive_k4_under_s4() {
        let g = complete_graph(4);
        let s4 =
            PermutationGroup::from_generators(vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])])
                .unwrap();
        assert!(is_arc_transitive(&g, &s4).unwrap());
    }

    #[test]
    fn c4_under_rotation_not_arc_transitive() {
        let g = cycle_graph(4);
        let rot = PermutationGroup::from_generators(vec![perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert!(!is_arc_transitive(&g, &rot).unwrap());
    }

    #[test]
    fn non_preserving_group_rejected() {
        let g = cycle_graph(5);
        let s5 =
            PermutationGroup::from_generators(vec![perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1]])])
                .unwrap();
        assert!(is_arc_transitive(&g, &s5).is_err());
    }

    #[test]
    fn quotient_c6_to_k3() {
        let g = cycle_graph(6);
        let d12 = PermutationGroup::from_generators(vec![
            perm(6, &[&[0, 1, 2, 3, 4, 5]]),
            perm(6, &[&[1, 5], &[2, 4]]),
        ])
        .unwrap();
        let n = PermutationGroup::from_generators(vec![perm(6, &[&[0, 3], &[1, 4], &[2, 5]])])
            .unwrap();
        let q = normal_quotient(&g, &d12, &n).unwrap();
        assert_eq!(q.quotient, complete_graph(3));
        assert_eq!(q.r, Some(1));
        assert!(!q.has_internal_edges);
    }

    #[test]
    fn quotient_k22_to_k2_r2() {
        let g = crate::graph::complete_bipartite(2, 2);
        let aut = automorphism_group(&g).unwrap();
        let n = PermutationGroup::from_generators(vec![perm(4, &[&[0, 1], &[2, 3]])]).unwrap();
        let q = normal_quotient(&g, &aut, &n).unwrap();
        assert_eq!(q.quotient.n(), 2);
        assert_eq!(q.r, Some(2));
    }

    #[test]
    fn quotient_by_trivial_is_identity() {
        let g = cycle_graph(6);
        let d12 = PermutationGroup::from_generators(vec![
            perm(6, &[&[0, 1, 2, 3, 4, 5]]),
            perm(6, &[&[1, 5], &[2, 4]]),
        ])
        .unwrap();
        let q = normal_quotient(&g, &d12, &PermutationGroup::trivial(6)).unwrap();
        assert_eq!(q.quotient, g);
        assert_eq!(q.r, Some(1));
    }

    #[test]
    fn quotient_rejects_transitive_normal() {
        let g = cycle_graph(6);
        let z6 = PermutationGroup::from_generators(vec![perm(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert!(matches!(
            normal_quotient(&g, &z6, &z6),
            Err(Error::TransitiveNormalSubgroup)
        ));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = complete_graph(4);
        let s4 =
            PermutationGroup::from_generators(vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])])
                .unwrap();
        let sub = PermutationGroup::from_generators(vec![perm(4, &[&[0, 1]])]).unwrap();
        assert!(matches!(
            normal_quotient(&g, &s4, &sub),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn no_biregular_dihedral_in_z8() {
        let g = cycle_graph(8);
        let z8 = PermutationGroup::from_generators(vec![perm(
            8,
            &[&[0, 1, 2, 3, 4, 5, 6, 7]],
        )])
        .unwrap();
        assert!(find_biregular_dihedral(&g, &z8).unwrap().is_empty());
    }

    #[test]
    fn biregular_dihedral_found_in_s4_wreath_like() {
        // D8 of S8 acting on two squares: a = (4-cycle)(4-cycle) of type
        // (2,2,2,2)? Use n = 2: want D4 (Klein) of order 4 bi-regular on 8
        // points. Take G = the regular D8: its subgroup <a^2, b> is Klein
        // and bi-regular.
        let a = perm(8, &[&[0, 1, 2, 3], &[4, 7, 6, 5]]);
        let b = perm(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]]);
        let d8 = PermutationGroup::from_generators(vec![a, b]).unwrap();
        let g = cycle_graph(8);
        let found = find_biregular_dihedral(&g, &d8).unwrap();
        assert!(!found.is_empty());
        for h in &found {
            assert_eq!(h.order(), 4);
            assert!(action::is_biregular(h));
        }
    }
}
