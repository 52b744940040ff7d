//! Transitivity, regularity and block-system analysis of permutation group
//! actions on {0, …, n-1}.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// A G-invariant partition of the point set, blocks sorted internally and
/// then lexicographically by first element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> BlockSystem {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &l) in labels.iter().enumerate() {
            map.entry(l).or_default().push(p);
        }
        let mut blocks: Vec<Vec<usize>> = map.into_values().collect();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        BlockSystem { blocks }
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.num_blocks() == 1
    }

    /// Index of the block containing each point.
    pub fn block_of(&self, degree: usize) -> Vec<usize> {
        let mut out = vec![0; degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                out[p] = i;
            }
        }
        out
    }
}

/// Orbits of the group on its points, each sorted, ordered by smallest
/// element.
pub fn orbits(group: &PermutationGroup) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            i += 1;
            for g in group.generators() {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(group: &PermutationGroup) -> bool {
    orbits(group).len() == 1
}

/// All point stabilizers are trivial.
pub fn is_semiregular(group: &PermutationGroup) -> bool {
    // Semiregular iff every orbit has length equal to the group order.
    let order = group.order();
    orbits(group).iter().all(|o| o.len() as u128 == order)
}

pub fn is_regular(group: &PermutationGroup) -> bool {
    is_transitive(group) && is_semiregular(group)
}

/// Semiregular with exactly two orbits.
pub fn is_biregular(group: &PermutationGroup) -> bool {
    is_semiregular(group) && orbits(group).len() == 2
}

/// Smallest G-invariant partition identifying `alpha` with `beta`, found by
/// union-find refinement.  Requires a transitive group.
pub fn minimal_block_system_containing(
    group: &PermutationGroup,
    alpha: usize,
    beta: usize,
) -> Result<BlockSystem> {
    let n = group.degree();
    if alpha >= n || beta >= n {
        return Err(Error::PointOutOfRange {
            point: alpha.max(beta),
            degree: n,
        });
    }
    if !is_transitive(group) {
        return Err(Error::Intransitive);
    }
    let mut uf = UnionFind::new(n);
    uf.union(alpha, beta);
    let mut queue = vec![(alpha, beta)];
    while let Some((a, b)) = queue.pop() {
        for g in group.generators() {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if uf.union(ga, gb) {
                queue.push((ga, gb));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|p| uf.find(p)).collect();
    Ok(BlockSystem::from_labels(&labels))
}

/// All minimal nontrivial block systems, deduplicated, sorted by block size
/// and then lexicographically.  Empty iff the group is primitive (or has
/// prime degree and no nontrivial system).
pub fn minimal_block_systems(group: &PermutationGroup) -> Result<Vec<BlockSystem>> {
    if !is_transitive(group) {
        return Err(Error::Intransitive);
    }
    let n = group.degree();
    let alpha = 0;
    let mut found: Vec<BlockSystem> = Vec::new();
    for beta in 1..n {
        let sys = minimal_block_system_containing(group, alpha, beta)?;
        if sys.is_trivial() {
            continue;
        }
        if !found.contains(&sys) {
            found.push(sys);
        }
    }
    // Keep only the minimal ones: a system is minimal if no other found
    // system refines it (every block of the other inside a block of it).
    let minimal: Vec<BlockSystem> = found
        .iter()
        .filter(|sys| {
            !found.iter().any(|other| {
                other.block_size() < sys.block_size() && refines(other, sys, n)
            })
        })
        .cloned()
        .collect();
    let mut minimal = minimal;
    minimal.sort_by(|a, b| a.block_size().cmp(&b.block_size()).then(a.blocks.cmp(&b.blocks)));
    Ok(minimal)
}

/// Every block of `fine` lies inside a block of `coarse`.
fn refines(fine: &BlockSystem, coarse: &BlockSystem, degree: usize) -> bool {
    let of = coarse.block_of(degree);
    fine.blocks
        .iter()
        .all(|b| b.iter().all(|&p| of[p] == of[b[0]]))
}

/// Transitive with no nontrivial block system.
pub fn is_primitive(group: &PermutationGroup) -> Result<bool> {
    if !is_transitive(group) {
        return Err(Error::Intransitive);
    }
    let n = group.degree();
    if n == 1 {
        return Ok(true);
    }
    for beta in 1..n {
        if !minimal_block_system_containing(group, 0, beta)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every nontrivial normal subgroup is transitive.  Checked via normal
/// closures of conjugacy class representatives: every minimal normal
/// subgroup is the closure of one of its non-identity elements.
pub fn is_quasiprimitive(group: &PermutationGroup) -> Result<bool> {
    if !is_transitive(group) {
        return Err(Error::Intransitive);
    }
    for rep in group.conjugacy_class_reps()? {
        if rep.is_identity() {
            continue;
        }
        let closure = group.normal_closure(&rep)?;
        if !is_transitive(&closure) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every nontrivial normal subgroup has at most two orbits, and some
/// intransitive one exists (with exactly two orbits).
pub fn is_biquasiprimitive(group: &PermutationGroup) -> Result<bool> {
    if !is_transitive(group) {
        return Err(Error::Intransitive);
    }
    let mut saw_two_orbits = false;
    for rep in group.conjugacy_class_reps()? {
        if rep.is_identity() {
            continue;
        }
        let closure = group.normal_closure(&rep)?;
        match orbits(&closure).len() {
            1 => {}
            2 => saw_two_orbits = true,
            _ => return Ok(false),
        }
    }
    Ok(saw_two_orbits)
}

/// The action induced on the blocks of an invariant partition, together
/// with its kernel.
#[derive(Debug)]
pub struct InducedAction {
    /// Image of the group acting on block indices.
    pub action: PermutationGroup,
    /// Images of the original generators as block permutations, aligned
    /// with `group.generators()`.
    pub generator_images: Vec<Permutation>,
    pub faithful: bool,
}

/// Action of `group` on the blocks of `system`.  Errors if the partition is
/// not invariant.
pub fn induced_block_action(
    group: &PermutationGroup,
    system: &BlockSystem,
) -> Result<InducedAction> {
    let n = group.degree();
    let of = system.block_of(n);
    let k = system.num_blocks();
    let mut images = Vec::new();
    for g in group.generators() {
        let mut im = vec![usize::MAX; k];
        for (i, block) in system.blocks.iter().enumerate() {
            let target = of[g.apply(block[0])];
            for &p in block {
                if of[g.apply(p)] != target {
                    return Err(Error::NotInvariant);
                }
            }
            im[i] = target;
        }
        images.push(Permutation::from_images(im)?);
    }
    let action = PermutationGroup::from_generators(images.clone())?;
    // Faithful iff no non-identity element acts trivially on blocks, i.e.
    // orders match.
    let faithful = action.order() == group.order();
    Ok(InducedAction {
        action,
        generator_images: images,
        faithful,
    })
}

/// Maximal nontrivial block systems: invariant partitions on which the
/// induced action is primitive.  Found by coarsening minimal systems.
pub fn maximal_block_systems(group: &PermutationGroup) -> Result<Vec<BlockSystem>> {
    let n = group.degree();
    let mut out: Vec<BlockSystem> = Vec::new();
    let mut stack = minimal_block_systems(group)?;
    while let Some(sys) = stack.pop() {
        let induced = induced_block_action(group, &sys)?;
        let coarser = minimal_block_systems(&induced.action)?;
        if coarser.is_empty() {
            if !out.contains(&sys) {
                out.push(sys);
            }
            continue;
        }
        for c in coarser {
            // Pull the coarser system back to points.
            let of = sys.block_of(n);
            let cof = c.block_of(sys.num_blocks());
            let labels: Vec<usize> = (0..n).map(|p| cof[of[p]]).collect();
            stack.push(BlockSystem::from_labels(&labels));
        }
    }
    out.sort_by(|a, b| a.block_size().cmp(&b.block_size()).then(a.blocks.cmp(&b.blocks)));
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns true if the two were in different classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Deterministic: smaller root wins.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn group(degree: usize, gens: &[&[&[usize]]]) -> PermutationGroup {
        PermutationGroup::from_generators(gens.iter().map(|g| perm(degree, g)).collect())
            .unwrap()
    }

    fn d8_on_square() -> PermutationGroup {
        group(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]])
    }

    #[test]
    fn z6_on_six_points_is_regular() {
        let g = group(6, &[&[&[0, 1, 2, 3, 4, 5]]]);
        assert!(is_transitive(&g));
        assert!(is_semiregular(&g));
        assert!(is_regular(&g));
        assert!(!is_biregular(&g));
    }

    #[test]
    fn z3_on_six_points_is_biregular() {
        let g = group(6, &[&[&[0, 1, 2], &[3, 4, 5]]]);
        assert!(!is_transitive(&g));
        assert!(is_biregular(&g));
        assert_eq!(orbits(&g), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn s3_natural_not_semiregular() {
        let g = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        assert!(!is_semiregular(&g));
    }

    #[test]
    fn d8_block_systems() {
        let g = d8_on_square();
        let systems = minimal_block_systems(&g).unwrap();
        // Diagonals {0,2},{1,3} is the unique minimal nontrivial system.
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks, vec![vec![0, 2], vec![1, 3]]);
        assert!(!is_primitive(&g).unwrap());
    }

    #[test]
    fn s4_natural_is_primitive_and_quasiprimitive() {
        let g = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        assert!(is_primitive(&g).unwrap());
        assert!(is_quasiprimitive(&g).unwrap());
    }

    #[test]
    fn a4_natural_is_primitive_but_not_quasiprimitive_check() {
        // A4 on 4 points: V4 is normal and transitive, so quasiprimitive.
        let g = group(4, &[&[&[0, 1, 2]], &[&[1, 2, 3]]]);
        assert_eq!(g.order(), 12);
        assert!(is_primitive(&g).unwrap());
        assert!(is_quasiprimitive(&g).unwrap());
    }

    #[test]
    fn regular_d8_is_not_quasiprimitive() {
        // D8 acting regularly on 8 points has a central Z2 with 4 orbits.
        let a = perm(8, &[&[0, 1, 2, 3], &[4, 7, 6, 5]]);
        let b = perm(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]]);
        let g = PermutationGroup::from_generators(vec![a, b]).unwrap();
        assert!(!is_quasiprimitive(&g).unwrap());
        assert!(!is_biquasiprimitive(&g).unwrap());
    }

    #[test]
    fn d12_on_hexagon_biquasiprimitive_check() {
        // D12 on 6 points: rotation subgroup Z6 transitive; Z3 has 2 orbits;
        // central Z2 has 3 orbits, so not bi-quasiprimitive.
        let g = group(6, &[&[&[0, 1, 2, 3, 4, 5]], &[&[1, 5], &[2, 4]]]);
        assert!(!is_biquasiprimitive(&g).unwrap());
    }

    #[test]
    fn s4_on_cosets_of_s3_quasiprimitive() {
        // Natural S4 again, via quasiprimitivity of a primitive group.
        let g = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        assert!(is_quasiprimitive(&g).unwrap());
        assert!(!is_biquasiprimitive(&g).unwrap());
    }

    #[test]
    fn induced_action_on_diagonals() {
        let g = d8_on_square();
        let sys = BlockSystem {
            blocks: vec![vec![0, 2], vec![1, 3]],
        };
        let ind = induced_block_action(&g, &sys).unwrap();
        assert_eq!(ind.action.order(), 2);
        assert!(!ind.faithful);
    }

    #[test]
    fn non_invariant_partition_rejected() {
        let g = d8_on_square();
        let sys = BlockSystem {
            blocks: vec![vec![0, 1], vec![2, 3]],
        };
        assert!(matches!(
            induced_block_action(&g, &sys),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn maximal_systems_of_regular_z12() {
        let g = group(12, &[&[&(0..12).collect::<Vec<_>>()[..]]]);
        let systems = maximal_block_systems(&g).unwrap();
        // Coarsest nontrivial invariant partitions of a regular Z12:
        // index-2 and index-3 subgroup cosets → block sizes 6 and 4.
        let sizes: Vec<usize> = systems.iter().map(|s| s.block_size()).collect();
        assert_eq!(sizes, vec![4, 6]);
    }

    #[test]
    fn intransitive_primitivity_errors() {
        let g = group(6, &[&[&[0, 1, 2], &[3, 4, 5]]]);
        assert!(matches!(is_primitive(&g), Err(Error::Intransitive)));
        assert!(matches!(is_quasiprimitive(&g), Err(Error::Intransitive)));
    }
}
