//! The named graph families: coset graphs, orbital graphs, affine polar
//! graphs, point-hyperplane incidence graphs, and the 𝒢_{(2,q)} / 𝒢_{(d,q)}
//! bipartite families — each with a permutation group certifying its
//! symmetry.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::graph::SimpleGraph;
use crate::group::PermutationGroup;
use crate::matgf::{
    field_of_order, find_symmetric_conjugator, matrix_group_as_permutations,
    singer_cycle, Mat, MatrixAction, SemilinearElement, VectorAction,
};
use crate::perm::Permutation;

/// A graph together with a group of automorphisms witnessing its symmetry.
#[derive(Debug, Clone)]
pub struct CertifiedGraph {
    pub graph: SimpleGraph,
    pub group: PermutationGroup,
    pub provenance: String,
}

impl CertifiedGraph {
    /// Every certifying generator maps edges to edges.
    pub fn certificate_holds(&self) -> bool {
        self.group
            .generators()
            .iter()
            .all(|g| self.graph.is_automorphism(g))
    }
}

/// The right cosets of K in G, canonically keyed by their lexicographically
/// least member, sorted.
pub struct CosetSpace {
    reps: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    k_elements: Vec<Permutation>,
}

impl CosetSpace {
    pub fn new(g: &PermutationGroup, k: &PermutationGroup) -> Result<CosetSpace> {
        if !g.has_subgroup(k)? {
            return Err(Error::NotASubgroup);
        }
        let k_elements = k.elements()?;
        let key = |x: &Permutation| -> Permutation {
            k_elements.iter().map(|ke| ke.compose(x)).min().unwrap()
        };
        // BFS over cosets from the identity coset.
        let id_key = key(&Permutation::identity(g.degree()));
        let mut reps = vec![id_key.clone()];
        let mut seen: HashSet<Permutation> = HashSet::from([id_key]);
        let mut i = 0;
        while i < reps.len() {
            let x = reps[i].clone();
            i += 1;
            for s in g.generators() {
                let kk = key(&x.compose(s));
                if seen.insert(kk.clone()) {
                    reps.push(kk);
                }
            }
        }
        reps.sort();
        let index = reps
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(CosetSpace {
            reps,
            index,
            k_elements,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    fn key(&self, x: &Permutation) -> Permutation {
        self.k_elements.iter().map(|ke| ke.compose(x)).min().unwrap()
    }

    pub fn index_of(&self, x: &Permutation) -> usize {
        self.index[&self.key(x)]
    }

    /// The permutation Kx ↦ Kxg induced by right multiplication by g.
    pub fn act(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.index[&self.key(&r.compose(g))])
            .collect();
        Permutation::from_images(images).unwrap()
    }
}

/// Right-multiplication action of G on the cosets of K, with the coset
/// space kept around so further elements of G can be pushed through.
pub struct CosetAction {
    pub group: PermutationGroup,
    pub space: CosetSpace,
}

pub fn coset_action(g: &PermutationGroup, k: &PermutationGroup) -> Result<CosetAction> {
    let space = CosetSpace::new(g, k)?;
    let gens = g
        .generators()
        .iter()
        .map(|s| space.act(s))
        .collect::<Vec<_>>();
    Ok(CosetAction {
        group: PermutationGroup::from_generators(gens)?,
        space,
    })
}

/// The coset graph Cos(G, K, KgK) on the right cosets of K.
pub struct CosetGraph {
    pub certified: CertifiedGraph,
    pub valency: usize,
    pub connected: bool,
}

pub fn coset_graph(
    g: &PermutationGroup,
    k: &PermutationGroup,
    elem: &Permutation,
) -> Result<CosetGraph> {
    if k.contains(elem)? {
        return Err(Error::Precondition("g lies in K".into()));
    }
    let action = coset_action(g, k)?;
    // Core-free K ⟺ the coset action is faithful.
    if action.group.order() != g.order() {
        return Err(Error::NotCoreFree);
    }
    let k_elements = k.elements()?;
    let mut kgk: HashSet<Permutation> = HashSet::new();
    for k1 in &k_elements {
        let k1g = k1.compose(elem);
        for k2 in &k_elements {
            kgk.insert(k1g.compose(k2));
        }
    }
    if !kgk.contains(&elem.inverse()) {
        return Err(Error::AsymmetricOrbital);
    }
    let n = action.space.len();
    let mut graph = SimpleGraph::empty(n);
    let reps = action.space.reps().to_vec();
    for x in 0..n {
        for y in x + 1..n {
            // Kx ~ Ky iff y x^{-1} ∈ KgK.
            if kgk.contains(&reps[y].compose(&reps[x].inverse())) {
                graph.add_edge(x, y)?;
            }
        }
    }
    // Valency |K| / |K ∩ K^g|.
    let g_inv = elem.inverse();
    let k_cap: Vec<&Permutation> = k_elements
        .iter()
        .filter(|x| k.contains(&x.conjugate(&g_inv)).unwrap_or(false))
        .collect();
    let valency = k_elements.len() / k_cap.len();
    // Connectivity ⟺ ⟨K, g⟩ = G.
    let mut span_gens = k.generators().to_vec();
    span_gens.push(elem.clone());
    let connected = PermutationGroup::from_generators(span_gens)?.order() == g.order();
    Ok(CosetGraph {
        certified: CertifiedGraph {
            graph,
            group: action.group,
            provenance: "coset-graph".into(),
        },
        valency,
        connected,
    })
}

/// One G-orbital on ordered pairs, symmetrized into a graph.
#[derive(Debug, Clone)]
pub struct OrbitalGraph {
    pub certified: CertifiedGraph,
    /// Self-paired orbitals give G-arc-transitive graphs; paired ones are
    /// symmetrizations and cannot be G-arc-transitive.
    pub self_paired: bool,
    pub connected: bool,
}

/// All nontrivial orbital graphs of a transitive group, one per self-paired
/// orbital and one per {orbital, paired orbital} pair, in order of the
/// smallest second coordinate of a pair (0, β).
pub fn orbital_graphs(group: &PermutationGroup) -> Result<Vec<OrbitalGraph>> {
    let n = group.degree();
    if n > 10_000 {
        return Err(Error::GraphTooLarge { n, cap: 10_000 });
    }
    if !crate::action::is_transitive(group) {
        return Err(Error::Intransitive);
    }
    let mut seen = vec![false; n * n];
    let mut out = Vec::new();
    for beta in 1..n {
        if seen[beta] {
            // pair (0, beta) already covered (arc id = 0*n + beta).
            continue;
        }
        let mut orbit = vec![(0usize, beta)];
        seen[beta] = true;
        let mut i = 0;
        while i < orbit.len() {
            let (u, v) = orbit[i];
            i += 1;
            for s in group.generators() {
                let (su, sv) = (s.apply(u), s.apply(v));
                if !seen[su * n + sv] {
                    seen[su * n + sv] = true;
                    orbit.push((su, sv));
                }
            }
        }
        let self_paired = orbit.contains(&(beta, 0));
        if !self_paired {
            // Mark the paired orbital as consumed too.
            for &(u, v) in &orbit {
                seen[v * n + u] = true;
            }
        }
        let mut graph = SimpleGraph::empty(n);
        for &(u, v) in &orbit {
            graph.add_edge(u, v)?;
        }
        let connected = graph.is_connected();
        out.push(OrbitalGraph {
            certified: CertifiedGraph {
                graph,
                group: group.clone(),
                provenance: format!("orbital:beta={beta}"),
            },
            self_paired,
            connected,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Linear group generators
// ---------------------------------------------------------------------------

fn elementary(d: usize, i: usize, j: usize, c: u64) -> Mat {
    let mut m = Mat::identity(d);
    m.entries[i * d + j] = c;
    m
}

/// Generators of GL_d(q): a diagonal torus generator, a cyclic basis
/// permutation, and transvections with coefficients spanning F_q over F_p.
pub fn gl_gens(d: usize, f: &FiniteField) -> Vec<Mat> {
    let mu = f.generator();
    let mut gens = Vec::new();
    let mut diag = Mat::identity(d);
    diag.entries[0] = mu;
    gens.push(diag);
    if d > 1 {
        let mut cycle = Mat {
            d,
            entries: vec![0; d * d],
        };
        for i in 0..d {
            cycle.entries[i * d + (i + 1) % d] = 1;
        }
        gens.push(cycle);
        for k in 0..f.e() {
            gens.push(elementary(d, 0, 1, f.pow(mu, k as u64)));
        }
    }
    gens
}

/// Generators of SL_d(q): paired transvections and a determinant-one basis
/// cycle.
pub fn sl_gens(d: usize, f: &FiniteField) -> Vec<Mat> {
    assert!(d >= 2);
    let mu = f.generator();
    let mut gens = Vec::new();
    for k in 0..f.e() {
        let c = f.pow(mu, k as u64);
        gens.push(elementary(d, 0, 1, c));
        gens.push(elementary(d, 1, 0, c));
    }
    if d > 2 {
        let mut cycle = Mat {
            d,
            entries: vec![0; d * d],
        };
        for i in 0..d - 1 {
            cycle.entries[i * d + i + 1] = 1;
        }
        // Sign chosen so the determinant is 1.
        cycle.entries[(d - 1) * d] = if d % 2 == 1 { 1 } else { f.neg(1) };
        gens.push(cycle);
    }
    gens
}

fn linear(gens: &[Mat]) -> Vec<SemilinearElement> {
    gens.iter().cloned().map(SemilinearElement::linear).collect()
}

/// All Singer subgroups of GL_d(q) (cyclic, order q^d−1, regular on nonzero
/// vectors) are pairwise conjugate; verified by exhaustive enumeration at
/// desk scale.
pub fn singer_subgroups_pairwise_conjugate(d: usize, q: u64) -> Result<bool> {
    let f = field_of_order(q)?;
    let va = matrix_group_as_permutations(
        &linear(&gl_gens(d, &f)),
        &f,
        MatrixAction::NonzeroVectors,
    )?;
    let g = va.group;
    let target = q.pow(d as u32) - 1;
    let elements = g.elements()?;
    // One generator per distinct Singer subgroup.
    let mut subs: Vec<(Permutation, HashSet<Permutation>)> = Vec::new();
    for x in &elements {
        if x.order() != target {
            continue;
        }
        if subs.iter().any(|(_, set)| set.contains(x)) {
            continue;
        }
        let mut set = HashSet::new();
        let mut cur = x.clone();
        for _ in 0..target {
            set.insert(cur.clone());
            cur = cur.compose(x);
        }
        subs.push((x.clone(), set));
    }
    if subs.is_empty() {
        return Err(Error::Precondition("no Singer subgroups found".into()));
    }
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            let (a, _) = &subs[i];
            let (_, b_set) = &subs[j];
            if !elements.iter().any(|c| b_set.contains(&a.conjugate(c))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Affine polar graphs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn sign(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

/// Quadratic form of type ε on F_q^{2m}: hyperbolic planes Σ x_{2i}x_{2i+1},
/// with the last plane replaced by x² + xy + λy² (λ the least field element
/// making it irreducible) for ε = −.
pub struct QuadraticForm {
    pub m: usize,
    pub epsilon: Epsilon,
    lambda: u64,
}

impl QuadraticForm {
    pub fn new(m: usize, epsilon: Epsilon, f: &FiniteField) -> QuadraticForm {
        let lambda = match epsilon {
            Epsilon::Plus => 0,
            Epsilon::Minus => f
                .elements_in_log_order()
                .into_iter()
                .find(|&l| {
                    // t² + t + λ has no root.
                    (0..f.size()).all(|t| f.add(f.add(f.mul(t, t), t), l) != 0)
                })
                .expect("an irreducible binary quadratic exists"),
        };
        QuadraticForm { m, epsilon, lambda }
    }

    pub fn eval(&self, v: &[u64], f: &FiniteField) -> u64 {
        let mut q = 0;
        let blocks = self.m;
        for i in 0..blocks {
            let (a, b) = (v[2 * i], v[2 * i + 1]);
            let term = if i + 1 == blocks && self.epsilon == Epsilon::Minus {
                // a² + ab + λb²
                f.add(
                    f.add(f.mul(a, a), f.mul(a, b)),
                    f.mul(self.lambda, f.mul(b, b)),
                )
            } else {
                f.mul(a, b)
            };
            q = f.add(q, term);
        }
        q
    }
}

/// All vectors of F_q^d (zero included) in canonical lexicographic order.
fn all_vectors(d: usize, f: &FiniteField) -> Vec<Vec<u64>> {
    let elems = f.elements_in_log_order();
    let q = elems.len();
    let mut out = Vec::with_capacity(q.pow(d as u32));
    let mut ranks = vec![0usize; d];
    loop {
        out.push(ranks.iter().map(|&r| elems[r]).collect());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            ranks[i] += 1;
            if ranks[i] < q {
                break;
            }
            ranks[i] = 0;
        }
    }
}

/// The affine polar graph VO^ε_{2m}(q) with its translation-plus-isometry
/// certificate (isometries by exhaustive sweep, desk scale only).
pub fn affine_polar_graph(m: usize, q: u64, epsilon: Epsilon) -> Result<CertifiedGraph> {
    let f = field_of_order(q)?;
    let d = 2 * m;
    let n = q
        .checked_pow(d as u32)
        .filter(|&n| n <= 1 << 16)
        .ok_or(Error::DegreeBudget(1 << 16))?;
    let form = QuadraticForm::new(m, epsilon, &f);
    let vectors = all_vectors(d, &f);
    let index: HashMap<Vec<u64>, usize> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut graph = SimpleGraph::empty(n as usize);
    for i in 0..n as usize {
        for j in i + 1..n as usize {
            let diff: Vec<u64> = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(&a, &b)| f.sub(a, b))
                .collect();
            if form.eval(&diff, &f) == 0 {
                graph.add_edge(i, j)?;
            }
        }
    }
    // Certificate: translations by a basis of the vector space…
    let mut gens: Vec<Permutation> = Vec::new();
    for i in 0..d {
        for k in 0..f.e() {
            let mut t = vec![0u64; d];
            t[i] = f.pow(f.generator(), k as u64);
            let images = vectors
                .iter()
                .map(|v| {
                    let w: Vec<u64> =
                        v.iter().zip(&t).map(|(&a, &b)| f.add(a, b)).collect();
                    index[&w]
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
    }
    // …plus every isometry of the form, found by sweeping all d×d matrices.
    let cells = d * d;
    let total = q
        .checked_pow(cells as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or(Error::DegreeBudget(1 << 20))?;
    let elems = f.elements_in_log_order();
    for code in 0..total {
        let mut entries = Vec::with_capacity(cells);
        let mut rest = code;
        for _ in 0..cells {
            entries.push(elems[(rest % q) as usize]);
            rest /= q;
        }
        let mat = Mat { d, entries };
        if !mat.is_invertible(&f) {
            continue;
        }
        let el = SemilinearElement::linear(mat);
        if vectors
            .iter()
            .all(|v| form.eval(&el.apply_vec(v, &f), &f) == form.eval(v, &f))
        {
            let images = vectors
                .iter()
                .map(|v| index[&el.apply_vec(v, &f)])
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
    }
    let group = PermutationGroup::from_generators(gens)?;
    let eps = match epsilon {
        Epsilon::Plus => "+",
        Epsilon::Minus => "-",
    };
    Ok(CertifiedGraph {
        graph,
        group,
        provenance: format!("VO{eps}_{}({})", 2 * m, q),
    })
}

// ---------------------------------------------------------------------------
// Point-hyperplane incidence graphs B(PG(d-1,q))
// ---------------------------------------------------------------------------

/// The two sides share labels: projective point i is the span of
/// `points[i]`, hyperplane i is the kernel of v ↦ v·points[i].
pub struct PointHyperplane {
    pub certified: CertifiedGraph,
    /// Normalized representative vectors, one per projective point.
    pub points: Vec<Vec<u64>>,
    /// Vertex permutation realizing a linear map M (points v ↦ vM,
    /// hyperplanes u ↦ u·(M^{-1})^T).
    pub complemented: bool,
}

fn projective_points(d: usize, f: &FiniteField) -> Vec<Vec<u64>> {
    let mut pts = Vec::new();
    for v in all_vectors(d, f).into_iter().skip(1) {
        let lead = v.iter().copied().find(|&x| x != 0).unwrap();
        let s = f.inv(lead).unwrap();
        let norm: Vec<u64> = v.iter().map(|&x| f.mul(s, x)).collect();
        if !pts.contains(&norm) {
            pts.push(norm);
        }
    }
    pts
}

fn dot(u: &[u64], v: &[u64], f: &FiniteField) -> u64 {
    u.iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Vertex permutation of B(PG) induced by M: points map by v ↦ vM,
/// hyperplane normals by u ↦ u·(M^{-1})^T.
fn bpg_perm_of_matrix(
    m: &Mat,
    points: &[Vec<u64>],
    f: &FiniteField,
) -> Result<Permutation> {
    let p = points.len();
    let el = SemilinearElement::linear(m.clone());
    let dual = SemilinearElement::linear(m.inverse(f)?.transpose());
    let norm_index = |w: &[u64]| -> usize {
        let lead = w.iter().copied().find(|&x| x != 0).unwrap();
        let s = f.inv(lead).unwrap();
        let n: Vec<u64> = w.iter().map(|&x| f.mul(s, x)).collect();
        points.iter().position(|p| *p == n).unwrap()
    };
    let mut images = vec![0usize; 2 * p];
    for (i, v) in points.iter().enumerate() {
        images[i] = norm_index(&el.apply_vec(v, f));
        images[p + i] = p + norm_index(&dual.apply_vec(v, f));
    }
    Permutation::from_images(images)
}

/// B(PG(d−1,q)) (or its bipartite complement): vertices are the projective
/// points followed by the hyperplanes, incidence v·u = 0.  The certificate
/// is PGL_d(q) extended by the point-hyperplane duality swap.
pub fn point_hyperplane_graph(
    d: usize,
    q: u64,
    complement: bool,
) -> Result<PointHyperplane> {
    if d < 3 {
        return Err(Error::Precondition("d must be at least 3".into()));
    }
    let f = field_of_order(q)?;
    let points = projective_points(d, &f);
    let p = points.len();
    if 2 * p > 1 << 14 {
        return Err(Error::DegreeBudget(1 << 14));
    }
    let mut graph = SimpleGraph::empty(2 * p);
    for i in 0..p {
        for j in 0..p {
            let incident = dot(&points[i], &points[j], &f) == 0;
            if incident != complement {
                graph.add_edge(i, p + j)?;
            }
        }
    }
    let mut gens: Vec<Permutation> = gl_gens(d, &f)
        .iter()
        .map(|m| bpg_perm_of_matrix(m, &points, &f))
        .collect::<Result<_>>()?;
    // The duality swap: incidence v·u = 0 is symmetric, so it is an
    // automorphism, and it realizes the inverse-transpose map ι under
    // conjugation.
    let swap = Permutation::from_images(
        (0..2 * p).map(|i| (i + p) % (2 * p)).collect(),
    )?;
    gens.push(swap);
    let group = PermutationGroup::from_generators(gens)?;
    let name = if complement { "B'(PG)" } else { "B(PG)" };
    Ok(PointHyperplane {
        certified: CertifiedGraph {
            graph,
            group,
            provenance: format!("{name}:d={d},q={q}"),
        },
        points,
        complemented: complement,
    })
}

/// The regular dihedral subgroup Y = ⟨x, y_x·ι⟩ of order 2(q^d−1)/(q−1) on
/// the vertices of B(PG(d−1,q)), built from a Singer cycle x and a
/// symmetric conjugator y_x with x^{y_x} = x^T.
pub fn bpg_regular_dihedral(d: usize, q: u64) -> Result<PermutationGroup> {
    let f = field_of_order(q)?;
    let points = projective_points(d, &f);
    let p = points.len();
    let x = singer_cycle(d, &f)?;
    let yx = find_symmetric_conjugator(&x, &f)?;
    let x_perm = bpg_perm_of_matrix(&x, &points, &f)?;
    let yx_perm = bpg_perm_of_matrix(&yx, &points, &f)?;
    let swap = Permutation::from_images(
        (0..2 * p).map(|i| (i + p) % (2 * p)).collect(),
    )?;
    // y_x followed by ι (realized by the duality swap).
    let b = yx_perm.compose(&swap);
    PermutationGroup::from_generators(vec![x_perm, b])
}

// ---------------------------------------------------------------------------
// 𝒢_{(2,q)}
// ---------------------------------------------------------------------------

/// 𝒢_{(2,q)} on the 2(q+1) orbits of P = ⟨μ²I⟩ on F_q²∖{0}, with its
/// acting groups and the bi-regular dihedral witness.
pub struct G2q {
    pub certified: CertifiedGraph,
    /// PSL₂(q) on the vertex set.
    pub psl: PermutationGroup,
    /// ℤ₂ × PΣL₂(q) overgroup on the vertex set.
    pub overgroup: PermutationGroup,
    /// The half-Singer-normalizer D_{q+1}, bi-regular on the vertices.
    pub h_dihedral: PermutationGroup,
    pub action: VectorAction,
}

pub fn g2q(q: u64) -> Result<G2q> {
    if q % 8 != 5 {
        return Err(Error::Precondition(format!(
            "q = {q} violates q ≡ 5 (mod 8)"
        )));
    }
    let f = field_of_order(q)?;
    let sl = linear(&sl_gens(2, &f));
    let n_sl = sl.len();
    // Overgroup generators: SL₂(q), the scalar μ·I, and Frobenius.
    let mut gens = sl.clone();
    let mut z = Mat::identity(2);
    z.entries[0] = f.generator();
    z.entries[3] = f.generator();
    gens.push(SemilinearElement::linear(z));
    if f.e() > 1 {
        gens.push(SemilinearElement {
            matrix: Mat::identity(2),
            frobenius_power: 1,
        });
    }
    let action = matrix_group_as_permutations(&gens, &f, MatrixAction::POrbit(2))?;
    let psl =
        PermutationGroup::from_generators(action.generator_perms[..n_sl].to_vec())?;
    let overgroup = action.group.clone();
    // Edge orbit of (v1^P, v2^P) under PSL₂(q).
    let alpha = action.point_of(&[1, 0], &f).unwrap();
    let beta = action.point_of(&[0, 1], &f).unwrap();
    let n = action.labels.len();
    let mut graph = SimpleGraph::empty(n);
    let mut stack = vec![(alpha, beta)];
    let mut seen = vec![false; n * n];
    seen[alpha * n + beta] = true;
    while let Some((u, v)) = stack.pop() {
        graph.add_edge(u, v)?;
        for s in psl.generators() {
            let (su, sv) = (s.apply(u), s.apply(v));
            if !seen[su * n + sv] {
                seen[su * n + sv] = true;
                stack.push((su, sv));
            }
        }
    }
    // H = D_{q+1}: normalizer of the half-Singer cyclic subgroup.
    let x = singer_cycle(2, &f)?;
    let s_mat = x.pow(q - 1, &f);
    let s_perm = action.perm_of(&SemilinearElement::linear(s_mat), &f)?;
    let s_inv = s_perm.inverse();
    let b = psl
        .elements()?
        .into_iter()
        .find(|b| {
            !b.is_identity()
                && b.compose(b).is_identity()
                && s_perm.conjugate(b) == s_inv
        })
        .ok_or_else(|| Error::Precondition("no inverting involution found".into()))?;
    let h_dihedral = PermutationGroup::from_generators(vec![s_perm, b])?;
    Ok(G2q {
        certified: CertifiedGraph {
            graph,
            group: overgroup.clone(),
            provenance: format!("G(2,{q})"),
        },
        psl,
        overgroup,
        h_dihedral,
        action,
    })
}

// ---------------------------------------------------------------------------
// 𝒢_{(d,q)}^{(i)}
// ---------------------------------------------------------------------------

/// 𝒢_{(d,q)}^{(i)}: bipartite graph on Δ (cosets of K) ∪ Ω (P-orbits on
/// F_q^d∖{0}); vertices 0..s are Δ, s..2s are Ω.
pub struct Gdq {
    pub certified: CertifiedGraph,
    /// PSL_d(q) image on the 2s vertices.
    pub psl: PermutationGroup,
    /// Sizes of the K-orbits on Ω, sorted.
    pub k_orbit_sizes: Vec<usize>,
    /// Sizes of the (K ∩ PSL_d(q))-orbits on Ω, sorted.
    pub k_psl_orbit_sizes: Vec<usize>,
    /// Number of vertices per part.
    pub part_size: usize,
}

pub fn gdq(d: usize, q: u64, i: u32) -> Result<Gdq> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Precondition("d must be odd and at least 3".into()));
    }
    if q.is_multiple_of(2) {
        return Err(Error::Precondition("q must be odd".into()));
    }
    if !(1..=3).contains(&i) {
        return Err(Error::Precondition("i must be 1, 2 or 3".into()));
    }
    let f = field_of_order(q)?;
    let mu = f.generator();
    let gl = gl_gens(d, &f);
    let action =
        matrix_group_as_permutations(&linear(&gl), &f, MatrixAction::POrbit(2))?;
    let g_om = action.group.clone();
    let s = action.labels.len();
    // K = (G_{v1^P})^ι = N1 : (M × R): row-stabilizer of ⟨v2,…,vd⟩ with the
    // square-scalar torus on the first coordinate.
    let mut k_mats: Vec<Mat> = Vec::new();
    let mut k_psl_mats: Vec<Mat> = Vec::new();
    for j in 1..d {
        for k in 0..f.e() {
            let m = elementary(d, 0, j, f.pow(mu, k as u64));
            k_mats.push(m.clone());
            k_psl_mats.push(m); // N1 has determinant 1
        }
    }
    for b in gl_gens(d - 1, &f) {
        // M: block diag(1, b).
        let mut m = Mat::identity(d);
        for r in 0..d - 1 {
            for c in 0..d - 1 {
                m.entries[(r + 1) * d + (c + 1)] = b.at(r, c);
            }
        }
        k_mats.push(m);
    }
    for b in sl_gens(d - 1, &f) {
        // M1: block diag(1, b) with b ∈ SL_{d−1}(q).
        let mut m = Mat::identity(d);
        for r in 0..d - 1 {
            for c in 0..d - 1 {
                m.entries[(r + 1) * d + (c + 1)] = b.at(r, c);
            }
        }
        k_psl_mats.push(m);
    }
    {
        // R: diag(μ², 1, …, 1);  R1: diag(μ², μ⁻², 1, …, 1).
        let mu2 = f.mul(mu, mu);
        let mut r = Mat::identity(d);
        r.entries[0] = mu2;
        k_mats.push(r);
        let mut r1 = Mat::identity(d);
        r1.entries[0] = mu2;
        r1.entries[d + 1] = f.inv(mu2)?;
        k_psl_mats.push(r1);
    }
    let to_perms = |mats: &[Mat]| -> Result<Vec<Permutation>> {
        mats.iter()
            .map(|m| action.perm_of(&SemilinearElement::linear(m.clone()), &f))
            .collect()
    };
    let k_om = PermutationGroup::from_generators(to_perms(&k_mats)?)?;
    let k_psl_om = PermutationGroup::from_generators(to_perms(&k_psl_mats)?)?;
    let space = CosetSpace::new(&g_om, &k_om)?;
    if space.len() != s {
        return Err(Error::Precondition(format!(
            "coset count {} != |Ω| = {s}",
            space.len()
        )));
    }
    // Combined degree-2s permutations: cosets then Ω.
    let combine = |g: &Permutation| -> Result<Permutation> {
        let mut images = Vec::with_capacity(2 * s);
        images.extend(space.act(g).images().iter().copied());
        images.extend(g.images().iter().map(|&x| x + s));
        Permutation::from_images(images)
    };
    let combined_gens: Vec<Permutation> = g_om
        .generators()
        .iter()
        .map(combine)
        .collect::<Result<_>>()?;
    let group = PermutationGroup::from_generators(combined_gens.clone())?;
    let psl_gens_om = to_perms(&sl_gens(d, &f))?;
    let psl = PermutationGroup::from_generators(
        psl_gens_om.iter().map(combine).collect::<Result<_>>()?,
    )?;
    // Base point of Ω per part index i: Ω1 ∋ v2^P, Ω2 ∋ v1^P, Ω3 ∋ (μv1)^P.
    let mut v1 = vec![0u64; d];
    v1[0] = 1;
    let mut v2 = vec![0u64; d];
    v2[1] = 1;
    let mut mu_v1 = vec![0u64; d];
    mu_v1[0] = mu;
    let alpha = match i {
        1 => action.point_of(&v2, &f),
        2 => action.point_of(&v1, &f),
        _ => action.point_of(&mu_v1, &f),
    }
    .ok_or(Error::Unknown("base point not found".into()))?;
    let delta0 = space.index_of(&Permutation::identity(g_om.degree()));
    // Edge orbit of {K, α} under G.
    let mut graph = SimpleGraph::empty(2 * s);
    let mut seen = vec![false; s * s];
    let mut stack = vec![(delta0, alpha)];
    seen[delta0 * s + alpha] = true;
    while let Some((dl, om)) = stack.pop() {
        graph.add_edge(dl, s + om)?;
        for g in group.generators() {
            let (ndl, nom) = (g.apply(dl), g.apply(s + om) - s);
            if !seen[ndl * s + nom] {
                seen[ndl * s + nom] = true;
                stack.push((ndl, nom));
            }
        }
    }
    let sizes = |grp: &PermutationGroup| -> Vec<usize> {
        let mut v: Vec<usize> = crate::action::orbits(grp).iter().map(|o| o.len()).collect();
        v.sort_unstable();
        v
    };
    Ok(Gdq {
        certified: CertifiedGraph {
            graph,
            group,
            provenance: format!("G({d},{q})^({i})"),
        },
        psl,
        k_orbit_sizes: sizes(&k_om),
        k_psl_orbit_sizes: sizes(&k_psl_om),
        part_size: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn s4() -> PermutationGroup {
        PermutationGroup::from_generators(vec![
            perm(4, &[&[0, 1, 2, 3]]),
            perm(4, &[&[0, 1]]),
        ])
        .unwrap()
    }

    #[test]
    fn coset_graph_s4_mod_s3_is_k4() {
        let g = s4();
        // S3 = stabilizer of point 3.
        let k = g.point_stabilizer(3).unwrap();
        assert_eq!(k.order(), 6);
        let cg = coset_graph(&g, &k, &perm(4, &[&[0, 3]])).unwrap();
        assert_eq!(cg.certified.graph, complete_graph(4));
        assert_eq!(cg.valency, 3);
        assert!(cg.connected);
        assert!(cg.certified.certificate_holds());
    }

    #[test]
    fn coset_graph_formulas() {
        let g = s4();
        let k = g.point_stabilizer(3).unwrap();
        let cg = coset_graph(&g, &k, &perm(4, &[&[0, 3]])).unwrap();
        assert_eq!(
            cg.certified.graph.n() as u128,
            g.order() / k.order()
        );
        assert_eq!(cg.certified.graph.valency(), Some(cg.valency));
    }

    #[test]
    fn coset_graph_rejects_g_in_k() {
        let g = s4();
        let k = g.point_stabilizer(3).unwrap();
        assert!(coset_graph(&g, &k, &perm(4, &[&[0, 1]])).is_err());
    }

    #[test]
    fn coset_graph_rejects_non_corefree() {
        // K = V4 normal in S4 wait V4 is normal: core is V4 itself.
        let g = s4();
        let k = PermutationGroup::from_generators(vec![
            perm(4, &[&[0, 1], &[2, 3]]),
            perm(4, &[&[0, 2], &[1, 3]]),
        ])
        .unwrap();
        assert!(matches!(
            coset_graph(&g, &k, &perm(4, &[&[0, 1, 2]])),
            Err(Error::NotCoreFree)
        ));
    }

    #[test]
    fn orbital_graphs_of_regular_z3() {
        let z3 = PermutationGroup::from_generators(vec![perm(3, &[&[0, 1, 2]])]).unwrap();
        let obs = orbital_graphs(&z3).unwrap();
        // Rank 3: the two nontrivial orbitals are paired, giving one
        // symmetrized triangle.
        assert_eq!(obs.len(), 1);
        assert!(!obs[0].self_paired);
        assert_eq!(obs[0].certified.graph, complete_graph(3));
    }

    #[test]
    fn orbital_graphs_of_s4_natural() {
        let obs = orbital_graphs(&s4()).unwrap();
        // 2-transitive: a single self-paired orbital, K4.
        assert_eq!(obs.len(), 1);
        assert!(obs[0].self_paired);
        assert_eq!(obs[0].certified.graph, complete_graph(4));
    }

    #[test]
    fn gl_and_sl_generator_orders() {
        let f2 = field_of_order(2).unwrap();
        let f3 = field_of_order(3).unwrap();
        let gl32 = matrix_group_as_permutations(
            &linear(&gl_gens(3, &f2)),
            &f2,
            MatrixAction::NonzeroVectors,
        )
        .unwrap();
        assert_eq!(gl32.group.order(), 168);
        let gl23 = matrix_group_as_permutations(
            &linear(&gl_gens(2, &f3)),
            &f3,
            MatrixAction::NonzeroVectors,
        )
        .unwrap();
        assert_eq!(gl23.group.order(), 48);
        let sl23 = matrix_group_as_permutations(
            &linear(&sl_gens(2, &f3)),
            &f3,
            MatrixAction::NonzeroVectors,
        )
        .unwrap();
        assert_eq!(sl23.group.order(), 24);
        let f5 = field_of_order(5).unwrap();
        let sl25 = matrix_group_as_permutations(
            &linear(&sl_gens(2, &f5)),
            &f5,
            MatrixAction::NonzeroVectors,
        )
        .unwrap();
        assert_eq!(sl25.group.order(), 120);
    }

    #[test]
    fn gl33_order() {
        let f3 = field_of_order(3).unwrap();
        let gl = matrix_group_as_permutations(
            &linear(&gl_gens(3, &f3)),
            &f3,
            MatrixAction::NonzeroVectors,
        )
        .unwrap();
        assert_eq!(gl.group.order(), 11_232);
        let sl = matrix_group_as_permutations(
            &linear(&sl_gens(3, &f3)),
            &f3,
            MatrixAction::NonzeroVectors,
        )
        .unwrap();
        assert_eq!(sl.group.order(), 5_616);
    }

    #[test]
    fn affine_polar_small() {
        let g = affine_polar_graph(1, 2, Epsilon::Plus).unwrap();
        // Zeros of x·y over GF(2): (0,1),(1,0),(0,0 excluded as v=w)…
        // valency = #nonzero singular vectors = 2: a 4-cycle.
        assert_eq!(g.graph.n(), 4);
        assert_eq!(g.graph.valency(), Some(2));
        assert!(g.graph.is_connected());
        assert!(g.certificate_holds());
    }

    #[test]
    fn affine_polar_vo4_valencies() {
        let plus = affine_polar_graph(2, 2, Epsilon::Plus).unwrap();
        assert_eq!(plus.graph.n(), 16);
        assert_eq!(plus.graph.valency(), Some(9));
        let minus = affine_polar_graph(2, 2, Epsilon::Minus).unwrap();
        assert_eq!(minus.graph.n(), 16);
        assert_eq!(minus.graph.valency(), Some(5));
        assert!(plus.certificate_holds());
        assert!(minus.certificate_holds());
    }

    #[test]
    fn heawood_basics() {
        let bpg = point_hyperplane_graph(3, 2, false).unwrap();
        let g = &bpg.certified.graph;
        assert_eq!(g.n(), 14);
        assert_eq!(g.valency(), Some(3));
        assert!(g.is_connected());
        let (a, b) = g.bipartition().unwrap();
        assert_eq!((a.len(), b.len()), (7, 7));
        assert!(bpg.certified.certificate_holds());
        // PGL3(2) × duality = 168·2 = 336.
        assert_eq!(bpg.certified.group.order(), 336);
    }

    #[test]
    fn heawood_complement_valency_4() {
        let bpg = point_hyperplane_graph(3, 2, true).unwrap();
        assert_eq!(bpg.certified.graph.valency(), Some(4));
        assert!(bpg.certified.certificate_holds());
    }

    #[test]
    fn bpg_regular_d14() {
        let y = bpg_regular_dihedral(3, 2).unwrap();
        assert_eq!(y.order(), 14);
        assert!(crate::action::is_transitive(&y));
        assert!(crate::action::is_semiregular(&y));
        // It preserves both the graph and its complement.
        let bpg = point_hyperplane_graph(3, 2, false).unwrap();
        let bpgc = point_hyperplane_graph(3, 2, true).unwrap();
        for g in y.generators() {
            assert!(bpg.certified.graph.is_automorphism(g));
            assert!(bpgc.certified.graph.is_automorphism(g));
        }
    }

    #[test]
    fn singer_conjugacy_gl2_3() {
        assert!(singer_subgroups_pairwise_conjugate(2, 3).unwrap());
    }

    #[test]
    fn g2q_rejects_bad_congruence() {
        assert!(g2q(9).is_err());
    }

    #[test]
    fn g2q_q5_shape() {
        let data = g2q(5).unwrap();
        assert_eq!(data.certified.graph.n(), 12);
        assert_eq!(data.certified.graph.valency(), Some(5));
        assert!(data.certified.graph.is_connected());
        assert_eq!(data.psl.order(), 60);
        // 2·|PΣL₂(5)| = 2·60.
        assert_eq!(data.overgroup.order(), 120);
        assert_eq!(data.h_dihedral.order(), 6);
        assert!(data.certified.certificate_holds());
        assert!(crate::action::is_biregular(&data.h_dihedral));
    }

    #[test]
    fn g2q_matches_coset_construction() {
        let data = g2q(5).unwrap();
        let f = field_of_order(5).unwrap();
        let alpha = data.action.point_of(&[1, 0], &f).unwrap();
        let k = data.psl.point_stabilizer(alpha).unwrap();
        // ḡ: v1 ↦ v2, v2 ↦ -v1.
        let g_mat = Mat::from_rows(&[vec![0, 1], vec![4, 0]]);
        let g_perm = data
            .action
            .perm_of(&SemilinearElement::linear(g_mat), &f)
            .unwrap();
        let cg = coset_graph(&data.psl, &k, &g_perm).unwrap();
        assert_eq!(cg.valency, 5);
        assert!(cg.connected);
        let iso = crate::analysis::are_isomorphic(&cg.certified.graph, &data.certified.graph)
            .unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn gdq_rejects_bad_parameters() {
        assert!(gdq(4, 3, 1).is_err());
        assert!(gdq(3, 4, 1).is_err());
        assert!(gdq(3, 3, 0).is_err());
    }

    #[test]
    fn gdq_33_shape() {
        let d1 = gdq(3, 3, 1).unwrap();
        assert_eq!(d1.part_size, 26);
        assert_eq!(d1.certified.graph.n(), 52);
        assert_eq!(d1.certified.graph.valency(), Some(8));
        assert!(d1.certified.graph.is_connected());
        assert!(d1.certified.certificate_holds());
        assert_eq!(d1.k_orbit_sizes, vec![8, 9, 9]);
        assert_eq!(d1.k_psl_orbit_sizes, vec![8, 9, 9]);
        let d2 = gdq(3, 3, 2).unwrap();
        assert_eq!(d2.certified.graph.valency(), Some(9));
    }
}
