//! Finitely generated permutation groups backed by a deterministic
//! Schreier–Sims stabilizer chain.
//!
//! Base points are the smallest non-fixed point at each level, so chains,
//! orders and element enumeration are reproducible across runs.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Operations that enumerate all group elements refuse above this order.
pub const ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    /// transversal[p] maps base_point to p; indexed by point.
    transversal: Vec<Option<Permutation>>,
    /// Orbit of the base point in BFS discovery order.
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        Level {
            base_point,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.orbit.clear();
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit.push(self.base_point);
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            i += 1;
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let t = self.transversal[p].as_ref().unwrap().compose(g);
                    self.transversal[q] = Some(t);
                    self.orbit.push(q);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation], base_hint: &[usize]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let nontrivial: Vec<Permutation> = gens
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if nontrivial.is_empty() {
            // Trivial group: a hinted base point still yields a one-level chain
            // so point stabilizers are well defined.
            if let Some(&b) = base_hint.first() {
                let mut level = Level::new(degree, b);
                level.recompute_orbit(degree);
                chain.levels.push(level);
            }
            return chain;
        }
        let first_base = base_hint
            .first()
            .copied()
            .unwrap_or_else(|| smallest_moved(&nontrivial).unwrap());
        let mut level = Level::new(degree, first_base);
        level.gens = nontrivial;
        chain.levels.push(level);
        chain.schreier_sims_at(0, base_hint);
        chain
    }

    fn pick_base_point(&self, residue: &Permutation, base_hint: &[usize], level: usize) -> usize {
        if let Some(&b) = base_hint.get(level) {
            if residue.apply(b) != b {
                return b;
            }
        }
        (0..self.degree)
            .find(|&p| residue.apply(p) != p)
            .expect("residue is not the identity")
    }

    fn schreier_sims_at(&mut self, i: usize, base_hint: &[usize]) {
        self.levels[i].recompute_orbit(self.degree);
        let orbit = self.levels[i].orbit.clone();
        let gens = self.levels[i].gens.clone();
        for &p in &orbit {
            for g in &gens {
                let q = g.apply(p);
                let t_p = self.levels[i].transversal[p].clone().unwrap();
                let t_q_inv = self.levels[i].transversal[q].clone().unwrap().inverse();
                let schreier = t_p.compose(g).compose(&t_q_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip(i + 1, schreier);
                if residue.is_identity() {
                    continue;
                }
                if j == self.levels.len() {
                    let b = self.pick_base_point(&residue, base_hint, j);
                    self.levels.push(Level::new(self.degree, b));
                }
                for level in self.levels[i + 1..=j].iter_mut() {
                    level.gens.push(residue.clone());
                }
                for l in ((i + 1)..=j).rev() {
                    self.schreier_sims_at(l, base_hint);
                }
            }
        }
    }

    /// Sift `g` through the chain starting at `start`; returns the residue
    /// and the level at which sifting stopped.
    fn strip(&self, start: usize, g: Permutation) -> (Permutation, usize) {
        let mut h = g;
        for l in start..self.levels.len() {
            let p = h.apply(self.levels[l].base_point);
            match &self.levels[l].transversal[p] {
                None => return (h, l),
                Some(t) => h = h.compose(&t.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, _) = self.strip(0, g.clone());
        residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Strong generators fixing the first base point; generates the
    /// stabilizer of that point when the chain was built with it as base hint.
    fn first_level_stabilizer_gens(&self) -> Vec<Permutation> {
        if self.levels.len() <= 1 {
            return Vec::new();
        }
        self.levels[1].gens.clone()
    }

    /// All elements in a deterministic order with the identity first.
    fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            // Base point first, then remaining orbit points ascending.
            let mut pts = level.orbit.clone();
            pts.sort_unstable();
            let bpos = pts.iter().position(|&p| p == level.base_point).unwrap();
            pts.remove(bpos);
            pts.insert(0, level.base_point);
            let mut next = Vec::with_capacity(out.len() * pts.len());
            for &p in &pts {
                let t = level.transversal[p].as_ref().unwrap();
                for e in &out {
                    next.push(e.compose(t));
                }
            }
            out = next;
        }
        out
    }
}

fn smallest_moved(gens: &[Permutation]) -> Option<usize> {
    let degree = gens.first()?.degree();
    (0..degree).find(|&p| gens.iter().any(|g| g.apply(p) != p))
}

#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_hint: Vec<usize>,
    chain: OnceLock<StabChain>,
}

impl PermutationGroup {
    /// Group generated by `gens`.  The list must be nonempty; pass an
    /// explicit identity for the trivial group.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let degree = gens[0].degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermutationGroup {
            degree,
            generators: gens,
            base_hint: Vec::new(),
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup::from_generators(vec![Permutation::identity(degree)]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &self.base_hint))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.chain().contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `other` is a subgroup of `self`.
    pub fn has_subgroup(&self, other: &PermutationGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All elements, identity first, in deterministic chain order.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        self.elements_capped(ENUMERATION_CAP)
    }

    pub fn elements_capped(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > cap {
            return Err(Error::CapacityExceeded { order, cap });
        }
        Ok(self.chain().elements())
    }

    /// Stabilizer of `point` as a subgroup, computed from a chain based at
    /// that point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermutationGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let chain = StabChain::build(self.degree, &self.generators, &[point]);
        let gens = chain.first_level_stabilizer_gens();
        if gens.is_empty() {
            return Ok(PermutationGroup::trivial(self.degree));
        }
        PermutationGroup::from_generators(gens)
    }

    /// Smallest normal subgroup of `self` containing `g`.
    pub fn normal_closure(&self, g: &Permutation) -> Result<PermutationGroup> {
        if !self.contains(g)? {
            return Err(Error::NotAMember);
        }
        if g.is_identity() {
            return Ok(PermutationGroup::trivial(self.degree));
        }
        let mut gens = vec![g.clone()];
        let mut group = PermutationGroup::from_generators(gens.clone())?;
        let mut queue = vec![g.clone()];
        while let Some(h) = queue.pop() {
            for s in &self.generators {
                let c = h.conjugate(s);
                if !group.contains(&c)? {
                    gens.push(c.clone());
                    group = PermutationGroup::from_generators(gens.clone())?;
                    queue.push(c);
                }
            }
        }
        Ok(group)
    }

    /// One representative per conjugacy class, identity first, then in
    /// deterministic enumeration order.
    pub fn conjugacy_class_reps(&self) -> Result<Vec<Permutation>> {
        self.conjugacy_class_reps_capped(ENUMERATION_CAP)
    }

    pub fn conjugacy_class_reps_capped(&self, cap: u128) -> Result<Vec<Permutation>> {
        let elements = self.elements_capped(cap)?;
        let mut assigned: HashSet<Vec<usize>> = HashSet::new();
        let mut reps = Vec::new();
        for e in &elements {
            if assigned.contains(e.images()) {
                continue;
            }
            reps.push(e.clone());
            // Orbit of e under conjugation by the generators.
            let mut class = vec![e.clone()];
            assigned.insert(e.images().to_vec());
            let mut i = 0;
            while i < class.len() {
                let cur = class[i].clone();
                i += 1;
                for g in &self.generators {
                    let c = cur.conjugate(g);
                    if assigned.insert(c.images().to_vec()) {
                        class.push(c);
                    }
                }
            }
        }
        Ok(reps)
    }

    /// Sizes of the conjugacy classes in the order of
    /// [`conjugacy_class_reps`](Self::conjugacy_class_reps).
    pub fn conjugacy_class_sizes(&self) -> Result<Vec<u128>> {
        let elements = self.elements_capped(ENUMERATION_CAP)?;
        let mut assigned: HashSet<Vec<usize>> = HashSet::new();
        let mut sizes = Vec::new();
        for e in &elements {
            if assigned.contains(e.images()) {
                continue;
            }
            let mut class = vec![e.clone()];
            assigned.insert(e.images().to_vec());
            let mut i = 0;
            while i < class.len() {
                let cur = class[i].clone();
                i += 1;
                for g in &self.generators {
                    let c = cur.conjugate(g);
                    if assigned.insert(c.images().to_vec()) {
                        class.push(c);
                    }
                }
            }
            sizes.push(class.len() as u128);
        }
        Ok(sizes)
    }

    /// Some `g` in `self` with `A^g = B`, or `None`.  Both must be
    /// subgroups of `self`.  Sweeps all elements, so the ambient order must
    /// be within the enumeration cap.
    pub fn conjugating_element(
        &self,
        a: &PermutationGroup,
        b: &PermutationGroup,
    ) -> Result<Option<Permutation>> {
        if !self.has_subgroup(a)? || !self.has_subgroup(b)? {
            return Err(Error::NotASubgroup);
        }
        if a.order() != b.order() {
            return Ok(None);
        }
        for g in self.elements()? {
            if a.generators()
                .iter()
                .all(|x| b.contains(&x.conjugate(&g)).unwrap_or(false))
            {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// Kernel-free equality test on generated subgroups.
    pub fn same_group_as(&self, other: &PermutationGroup) -> Result<bool> {
        Ok(self.order() == other.order() && self.has_subgroup(other)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn a5() -> PermutationGroup {
        PermutationGroup::from_generators(vec![
            perm(5, &[&[0, 1, 2]]),
            perm(5, &[&[2, 3, 4]]),
        ])
        .unwrap()
    }

    fn s5() -> PermutationGroup {
        PermutationGroup::from_generators(vec![
            perm(5, &[&[0, 1, 2, 3, 4]]),
            perm(5, &[&[0, 1]]),
        ])
        .unwrap()
    }

    #[test]
    fn dihedral_of_order_ten() {
        let g = PermutationGroup::from_generators(vec![
            perm(5, &[&[0, 1, 2, 3, 4]]),
            perm(5, &[&[1, 4], &[2, 3]]),
        ])
        .unwrap();
        assert_eq!(g.order(), 10);
    }

    #[test]
    fn trivial_group_order_one() {
        assert_eq!(PermutationGroup::trivial(1).order(), 1);
    }

    #[test]
    fn a5_order_matches_enumeration() {
        let g = a5();
        assert_eq!(g.order(), 60);
        let elements = g.elements().unwrap();
        assert_eq!(elements.len(), 60);
        assert!(elements[0].is_identity());
        let set: HashSet<Vec<usize>> =
            elements.iter().map(|e| e.images().to_vec()).collect();
        assert_eq!(set.len(), 60);
        for e in &elements {
            assert!(g.contains(e).unwrap());
        }
    }

    #[test]
    fn contains_generators_and_products() {
        let g = s5();
        for a in g.generators() {
            assert!(g.contains(a).unwrap());
            for b in g.generators() {
                assert!(g.contains(&a.compose(b)).unwrap());
            }
        }
    }

    #[test]
    fn a5_rejects_transposition() {
        let g = a5();
        assert!(!g.contains(&perm(5, &[&[0, 1]])).unwrap());
    }

    #[test]
    fn degree_mismatch_on_contains() {
        let g = a5();
        assert!(g.contains(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let g = s5();
        let n = g.normal_closure(&Permutation::identity(5)).unwrap();
        assert_eq!(n.order(), 1);
    }

    #[test]
    fn normal_closure_of_three_cycle_in_s5_is_a5() {
        let g = s5();
        let n = g.normal_closure(&perm(5, &[&[0, 1, 2]])).unwrap();
        assert_eq!(n.order(), 60);
    }

    #[test]
    fn normal_closure_is_normal() {
        let g = s5();
        let n = g.normal_closure(&perm(5, &[&[0, 1, 2]])).unwrap();
        for ng in n.generators() {
            for gg in g.generators() {
                assert!(n.contains(&ng.conjugate(gg)).unwrap());
            }
        }
    }

    #[test]
    fn central_involution_closure_in_regular_d8() {
        // D8 regular on 8 points: a = rotation, b = reflection of the
        // regular representation.
        let a = perm(8, &[&[0, 1, 2, 3], &[4, 7, 6, 5]]);
        let b = perm(8, &[&[0, 4], &[1, 5], &[2, 6], &[3, 7]]);
        let g = PermutationGroup::from_generators(vec![a.clone(), b]).unwrap();
        assert_eq!(g.order(), 8);
        let z = a.compose(&a);
        let n = g.normal_closure(&z).unwrap();
        assert_eq!(n.order(), 2);
    }

    #[test]
    fn class_counts() {
        let z3 = PermutationGroup::from_generators(vec![perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(z3.conjugacy_class_reps().unwrap().len(), 3);
        let s4 = PermutationGroup::from_generators(vec![
            perm(4, &[&[0, 1, 2, 3]]),
            perm(4, &[&[0, 1]]),
        ])
        .unwrap();
        assert_eq!(s4.conjugacy_class_reps().unwrap().len(), 5);
    }

    #[test]
    fn class_sizes_sum_to_order() {
        let s4 = PermutationGroup::from_generators(vec![
            perm(4, &[&[0, 1, 2, 3]]),
            perm(4, &[&[0, 1]]),
        ])
        .unwrap();
        let sizes = s4.conjugacy_class_sizes().unwrap();
        assert_eq!(sizes.iter().sum::<u128>(), 24);
    }

    #[test]
    fn point_stabilizer_orbit_stabilizer() {
        let g = a5();
        let stab = g.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), 12);
        for s in stab.generators() {
            assert_eq!(s.apply(0), 0);
        }
    }

    #[test]
    fn conjugating_element_identity_for_same_subgroup() {
        let g = s5();
        let a = PermutationGroup::from_generators(vec![perm(5, &[&[0, 1, 2]])]).unwrap();
        let w = g.conjugating_element(&a, &a).unwrap().unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn non_conjugate_subgroups_of_s4() {
        let s4 = PermutationGroup::from_generators(vec![
            perm(4, &[&[0, 1, 2, 3]]),
            perm(4, &[&[0, 1]]),
        ])
        .unwrap();
        let a = PermutationGroup::from_generators(vec![perm(4, &[&[0, 1]])]).unwrap();
        let b =
            PermutationGroup::from_generators(vec![perm(4, &[&[0, 1], &[2, 3]])]).unwrap();
        assert!(s4.conjugating_element(&a, &b).unwrap().is_none());
    }

    #[test]
    fn empty_generator_list_rejected() {
        assert!(PermutationGroup::from_generators(vec![]).is_err());
    }
}
