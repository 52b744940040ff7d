//! Matrix groups over GF(q) realized as permutation groups: Singer cycles,
//! ΓL₁ presentations, Frobenius / inverse-transpose maps, and the exhaustive
//! ΓL₁-sweep behind the m-d-q lemma.
//!
//! Vectors are rows and act on the right: v ↦ vM.  Semilinear elements act
//! by v ↦ (v^(φ^k))·M.

use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub const MAX_VECTOR_DOMAIN: u64 = 1 << 16;

/// Square matrix over a finite field, row-major, entries in the field's
/// integer encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub d: usize,
    pub entries: Vec<u64>,
}

impl Mat {
    pub fn identity(d: usize) -> Mat {
        let mut entries = vec![0; d * d];
        for i in 0..d {
            entries[i * d + i] = 1;
        }
        Mat { d, entries }
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Mat {
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for r in rows {
            assert_eq!(r.len(), d);
            entries.extend_from_slice(r);
        }
        Mat { d, entries }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.d + j]
    }

    pub fn mul(&self, other: &Mat, f: &FiniteField) -> Mat {
        let d = self.d;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] =
                        f.add(entries[i * d + j], f.mul(a, other.at(k, j)));
                }
            }
        }
        Mat { d, entries }
    }

    pub fn transpose(&self) -> Mat {
        let d = self.d;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.at(i, j);
            }
        }
        Mat { d, entries }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.d)
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.at(0, 0);
        for i in 0..self.d {
            for j in 0..self.d {
                let want = if i == j { c } else { 0 };
                if self.at(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    /// Gauss–Jordan inverse; errors on singular input.
    pub fn inverse(&self, f: &FiniteField) -> Result<Mat> {
        let d = self.d;
        let mut a = self.clone();
        let mut inv = Mat::identity(d);
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| a.at(r, col) != 0)
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..d {
                    a.entries.swap(col * d + j, pivot * d + j);
                    inv.entries.swap(col * d + j, pivot * d + j);
                }
            }
            let scale = f.inv(a.at(col, col))?;
            for j in 0..d {
                a.entries[col * d + j] = f.mul(a.at(col, j), scale);
                inv.entries[col * d + j] = f.mul(inv.at(col, j), scale);
            }
            for r in 0..d {
                if r == col || a.at(r, col) == 0 {
                    continue;
                }
                let factor = a.at(r, col);
                for j in 0..d {
                    a.entries[r * d + j] =
                        f.sub(a.at(r, j), f.mul(factor, a.at(col, j)));
                    inv.entries[r * d + j] =
                        f.sub(inv.at(r, j), f.mul(factor, inv.at(col, j)));
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.inverse(f).is_ok()
    }

    pub fn pow(&self, mut k: u64, f: &FiniteField) -> Mat {
        let mut base = self.clone();
        let mut out = Mat::identity(self.d);
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base, f);
            }
            base = base.mul(&base, f);
            k >>= 1;
        }
        out
    }

    /// Entrywise p^k power.
    pub fn frobenius(&self, k: u32, f: &FiniteField) -> Mat {
        let mut out = self.clone();
        for _ in 0..k {
            for e in &mut out.entries {
                *e = f.frobenius(*e);
            }
        }
        out
    }

    /// Multiplicative order, by iteration; intended for desk-scale matrices.
    pub fn order(&self, f: &FiniteField) -> u64 {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.mul(self, f);
            k += 1;
        }
        k
    }
}

/// (M^{-1})^T.
pub fn inverse_transpose(m: &Mat, f: &FiniteField) -> Result<Mat> {
    Ok(m.inverse(f)?.transpose())
}

/// Entrywise p^k power of a vector.
pub fn frobenius_vec(v: &[u64], k: u32, f: &FiniteField) -> Vec<u64> {
    let mut out = v.to_vec();
    for _ in 0..k {
        for e in &mut out {
            *e = f.frobenius(*e);
        }
    }
    out
}

/// Element of ΓL_d(q) = GL_d(q):⟨φ⟩ acting by v ↦ (v^(φ^k))·M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearElement {
    pub matrix: Mat,
    pub frobenius_power: u32,
}

impl SemilinearElement {
    pub fn linear(matrix: Mat) -> Self {
        SemilinearElement {
            matrix,
            frobenius_power: 0,
        }
    }

    pub fn apply_vec(&self, v: &[u64], f: &FiniteField) -> Vec<u64> {
        let w = frobenius_vec(v, self.frobenius_power, f);
        let d = self.matrix.d;
        let mut out = vec![0; d];
        for (i, &wi) in w.iter().enumerate() {
            if wi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(wi, self.matrix.at(i, j)));
            }
        }
        out
    }

    /// (M₁,k₁)·(M₂,k₂) = (M₁^(φ^k₂)·M₂, k₁+k₂): apply `self` first.
    pub fn compose(&self, other: &SemilinearElement, f: &FiniteField) -> SemilinearElement {
        SemilinearElement {
            matrix: self
                .matrix
                .frobenius(other.frobenius_power, f)
                .mul(&other.matrix, f),
            frobenius_power: (self.frobenius_power + other.frobenius_power) % f.e(),
        }
    }
}

/// q = p^e for prime p, or a parse error.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrime(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::NotPrime(q));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1)) // q itself prime
}

/// GF(q) for a prime power q, via the canonical modulus.
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, e) = split_prime_power(q)?;
    FiniteField::new(p, e)
}

/// Companion matrix of the first (by integer coefficient encoding) monic
/// degree-d polynomial over GF(q) whose companion matrix has multiplicative
/// order exactly q^d − 1.  Such a matrix is a Singer cycle of GL_d(q).
pub fn singer_cycle(d: usize, f: &FiniteField) -> Result<Mat> {
    let q = f.size();
    let target = q
        .checked_pow(d as u32)
        .filter(|&n| n <= MAX_VECTOR_DOMAIN)
        .ok_or(Error::DegreeBudget(MAX_VECTOR_DOMAIN))?
        - 1;
    // Coefficients c_0..c_{d-1} of t^d + c_{d-1}t^{d-1} + … + c_0, encoded
    // as base-q digits of `enc` in the field's integer encoding.
    for enc in 1..=target {
        let mut coeffs = Vec::with_capacity(d);
        let mut rest = enc;
        for _ in 0..d {
            coeffs.push(rest % q);
            rest /= q;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let m = companion(&coeffs, f);
        if m.order(f) == target {
            return Ok(m);
        }
    }
    unreachable!("a primitive polynomial of degree {d} over GF({q}) exists");
}

/// Companion matrix (row-vector convention) of t^d + Σ c_i t^i.
fn companion(coeffs: &[u64], f: &FiniteField) -> Mat {
    let d = coeffs.len();
    let mut m = Mat {
        d,
        entries: vec![0; d * d],
    };
    for i in 0..d - 1 {
        m.entries[i * d + i + 1] = 1;
    }
    for (j, &c) in coeffs.iter().enumerate() {
        m.entries[(d - 1) * d + j] = f.neg(c);
    }
    m
}

/// ΓL₁(p^n) acting on the p^n − 1 nonzero field elements, labeled by
/// discrete log: point i is g^i.  Generated by multiplication by g
/// (i ↦ i+1) and the Frobenius map (i ↦ i·p), so the relation x^y = x^p is
/// built in.  Order (p^n − 1)·n.
pub fn gamma_l1(p: u64, n: u32) -> Result<PermutationGroup> {
    let f = FiniteField::new(p, n)?;
    let big_n = (f.size() - 1) as usize;
    let x = Permutation::from_images((0..big_n).map(|i| (i + 1) % big_n).collect())?;
    let y = Permutation::from_images(
        (0..big_n).map(|i| i * p as usize % big_n).collect(),
    )?;
    PermutationGroup::from_generators(vec![x, y])
}

/// All g = x^i y^k in ΓL₁(p^{de}) with x^m (x^m)^g ∈ Z, where
/// Z = ⟨x^((q^d−1)/(q−1))⟩, by exhaustive sweep of the (i,k) grid.
/// Conjugation uses x^y = x^p, so the test reduces to divisibility of the
/// exponent m(1 + p^k) mod (p^{de} − 1) by (q^d − 1)/(q − 1).
pub fn verify_mdq(d: u32, q: u64, m: u64) -> Result<Vec<(u64, u32)>> {
    let grid = mdq_grid(d, q)?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let (big_n, f_ord, s, p) = grid;
        Ok((0..big_n)
            .into_par_iter()
            .flat_map_iter(|i| {
                (0..f_ord)
                    .filter(move |&k| mdq_hit(big_n, s, p, m, k))
                    .map(move |k| (i, k))
            })
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = grid;
        verify_mdq_seq(d, q, m)
    }
}

/// Sequential reference implementation of [`verify_mdq`]; always compiled
/// so the two can be benchmarked against each other.
pub fn verify_mdq_seq(d: u32, q: u64, m: u64) -> Result<Vec<(u64, u32)>> {
    let (big_n, f_ord, s, p) = mdq_grid(d, q)?;
    let mut out = Vec::new();
    for i in 0..big_n {
        for k in 0..f_ord {
            if mdq_hit(big_n, s, p, m, k) {
                out.push((i, k));
            }
        }
    }
    Ok(out)
}

/// (N, f, s, p) with N = p^{de} − 1, f = de, s = (q^d−1)/(q−1).
fn mdq_grid(d: u32, q: u64) -> Result<(u64, u32, u64, u64)> {
    let (p, e) = split_prime_power(q)?;
    let f_ord = d * e;
    let size = p
        .checked_pow(f_ord)
        .filter(|&n| n <= MAX_VECTOR_DOMAIN)
        .ok_or(Error::DegreeBudget(MAX_VECTOR_DOMAIN))?;
    let big_n = size - 1;
    let s = big_n / (q - 1);
    Ok((big_n, f_ord, s, p))
}

#[inline]
fn mdq_hit(big_n: u64, s: u64, p: u64, m: u64, k: u32) -> bool {
    // x^m (x^m)^{x^i y^k} = x^{m(1 + p^k) mod N}; membership in Z means the
    // exponent is a multiple of s.
    let pk = mod_pow(p, k as u64, big_n);
    (m % big_n * ((1 + pk) % big_n) % big_n).is_multiple_of(s)
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut out = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            out = out as u128 as u64 * base % modulus;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    out
}

/// Symmetric invertible S with S^{-1} x S = x^T, found by solving the
/// linear system xS = Sx^T over symmetric matrices and taking the first
/// invertible solution in deterministic nullspace order.
pub fn find_symmetric_conjugator(x: &Mat, f: &FiniteField) -> Result<Mat> {
    let d = x.d;
    let unknowns: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .collect();
    let nu = unknowns.len();
    let idx = |i: usize, j: usize| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        unknowns.iter().position(|&u| u == (i, j)).unwrap()
    };
    // Equation (a,b): Σ_c x[a][c]·S[c][b] − S[a][c]·x[b][c] = 0.
    let mut rows = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let mut row = vec![0u64; nu];
            for c in 0..d {
                let col = idx(c, b);
                row[col] = f.add(row[col], x.at(a, c));
                let col = idx(a, c);
                row[col] = f.sub(row[col], x.at(b, c));
            }
            rows.push(row);
        }
    }
    let basis = nullspace(&rows, nu, f);
    if basis.is_empty() {
        return Err(Error::NoSymmetricConjugator);
    }
    // Enumerate nonzero combinations of the basis, coefficients in the
    // field's canonical order, least combination first.
    let elems = f.elements_in_log_order();
    let q = f.size();
    let combos = q.checked_pow(basis.len() as u32).ok_or(Error::NoSymmetricConjugator)?;
    for combo in 1..combos {
        let mut sol = vec![0u64; nu];
        let mut rest = combo;
        for b in &basis {
            let coeff = elems[(rest % q) as usize];
            rest /= q;
            if coeff != 0 {
                for (s, &v) in sol.iter_mut().zip(b.iter()) {
                    *s = f.add(*s, f.mul(coeff, v));
                }
            }
        }
        let mut s = Mat {
            d,
            entries: vec![0; d * d],
        };
        for (u, &(i, j)) in unknowns.iter().enumerate() {
            s.entries[i * d + j] = sol[u];
            s.entries[j * d + i] = sol[u];
        }
        if let Ok(s_inv) = s.inverse(f) {
            if s_inv.mul(x, f).mul(&s, f) == x.transpose() {
                return Ok(s);
            }
        }
    }
    Err(Error::NoSymmetricConjugator)
}

/// Basis of the nullspace of the given rows (each of width `ncols`),
/// deterministic: one vector per free column in ascending column order.
fn nullspace(rows: &[Vec<u64>], ncols: usize, f: &FiniteField) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let scale = f.inv(m[r][col]).unwrap();
        for v in &mut m[r] {
            *v = f.mul(*v, scale);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = row[col];
                for (v, &p) in row.iter_mut().zip(&pivot_row) {
                    *v = f.sub(*v, f.mul(factor, p));
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for &(pr, pc) in &pivots {
            v[pc] = f.neg(m[pr][free]);
        }
        basis.push(v);
    }
    basis
}

/// How a list of (semi)linear generators should act as permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixAction {
    /// On the q^d − 1 nonzero row vectors.
    NonzeroVectors,
    /// On normalized projective points (first nonzero coordinate 1).
    ProjectivePoints,
    /// On the orbits of P = ⟨μ^s·I⟩ on nonzero vectors, for the given
    /// exponent s (which must divide q − 1); the kernel P is quotiented out.
    POrbit(u64),
}

/// A permutation action together with the vector (or orbit-representative)
/// behind each point.
#[derive(Debug, Clone)]
pub struct VectorAction {
    pub group: PermutationGroup,
    /// Canonical representative vector of each point, in point order.
    pub labels: Vec<Vec<u64>>,
    /// Image of each input generator on the points, aligned with the input.
    pub generator_perms: Vec<Permutation>,
    /// All nonzero vectors in canonical order, and the point each belongs to.
    all_vectors: Vec<Vec<u64>>,
    class_of: Vec<usize>,
}

impl VectorAction {
    /// Realize one more (semi)linear element on the same point set.  The
    /// element need not lie in the generated group, but must permute the
    /// point classes.
    pub fn perm_of(&self, g: &SemilinearElement, f: &FiniteField) -> Result<Permutation> {
        let mut images = vec![usize::MAX; self.labels.len()];
        for (pt, rep) in self.labels.iter().enumerate() {
            let w = g.apply_vec(rep, f);
            let i = self
                .all_vectors
                .iter()
                .position(|v| *v == w)
                .ok_or(Error::Singular)?;
            images[pt] = self.class_of[i];
        }
        Permutation::from_images(images)
    }
    /// The point whose label (for POrbit mode: whose orbit) contains `v`.
    pub fn point_of(&self, v: &[u64], f: &FiniteField) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == v) {
            return Some(i);
        }
        // Scalar multiples cover the projective / orbit modes.
        for c in 1..f.size() {
            let w: Vec<u64> = v.iter().map(|&x| f.mul(c, x)).collect();
            if let Some(i) = self.labels.iter().position(|l| *l == w) {
                return Some(i);
            }
        }
        None
    }
}

/// Rank of a field element in the canonical order 0, 1, g, g², ….
fn canon_rank(x: u64, f: &FiniteField) -> u64 {
    if x == 0 {
        0
    } else {
        f.dlog(x).unwrap() + 1
    }
}

fn canon_key(v: &[u64], f: &FiniteField) -> Vec<u64> {
    v.iter().map(|&x| canon_rank(x, f)).collect()
}

/// All nonzero vectors of length d, lexicographic in the canonical element
/// order (leftmost coordinate most significant).
fn nonzero_vectors(d: usize, f: &FiniteField) -> Vec<Vec<u64>> {
    let elems = f.elements_in_log_order();
    let q = elems.len();
    let mut out = Vec::with_capacity(q.pow(d as u32) - 1);
    let mut ranks = vec![0usize; d];
    loop {
        if ranks.iter().any(|&r| r != 0) {
            out.push(ranks.iter().map(|&r| elems[r]).collect());
        }
        // Odometer increment, rightmost fastest.
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

fn normalize_projective(v: &[u64], f: &FiniteField) -> Vec<u64> {
    let lead = v.iter().copied().find(|&x| x != 0).unwrap();
    let s = f.inv(lead).unwrap();
    v.iter().map(|&x| f.mul(s, x)).collect()
}

/// Realize matrix / semilinear generators as a permutation group in the
/// requested action.
pub fn matrix_group_as_permutations(
    gens: &[SemilinearElement],
    f: &FiniteField,
    action: MatrixAction,
) -> Result<VectorAction> {
    let d = gens
        .first()
        .map(|g| g.matrix.d)
        .ok_or(Error::EmptyGenerators)?;
    let q = f.size();
    if q.checked_pow(d as u32).is_none_or(|n| n > MAX_VECTOR_DOMAIN) {
        return Err(Error::DegreeBudget(MAX_VECTOR_DOMAIN));
    }
    let all = nonzero_vectors(d, f);
    // Group vectors into points.
    let (labels, class_of): (Vec<Vec<u64>>, Vec<usize>) = match action {
        MatrixAction::NonzeroVectors => {
            (all.clone(), (0..all.len()).collect())
        }
        MatrixAction::ProjectivePoints => {
            classify(&all, f, normalize_projective)
        }
        MatrixAction::POrbit(s) => {
            if s == 0 || !(q - 1).is_multiple_of(s) {
                return Err(Error::Precondition(format!(
                    "P-orbit exponent {s} does not divide q-1 = {}",
                    q - 1
                )));
            }
            let mu_s = f.pow(f.generator(), s);
            classify(&all, f, move |v, f| {
                // Minimal scalar multiple of v under ⟨μ^s⟩, in canonical
                // vector order.
                let mut best = v.to_vec();
                let mut best_key = canon_key(v, f);
                let mut c = mu_s;
                while c != 1 {
                    let w: Vec<u64> = v.iter().map(|&x| f.mul(c, x)).collect();
                    let key = canon_key(&w, f);
                    if key < best_key {
                        best_key = key;
                        best = w;
                    }
                    c = f.mul(c, mu_s);
                }
                best
            })
        }
    };
    let index_of = |v: &[u64]| -> usize {
        // Vectors are few (≤ 2^16); a linear scan keyed by exact match.
        all.iter().position(|w| w == v).unwrap()
    };
    let n_points = labels.len();
    let mut perms = Vec::with_capacity(gens.len());
    for g in gens {
        let mut images = vec![usize::MAX; n_points];
        for (pt, rep) in labels.iter().enumerate() {
            let w = g.apply_vec(rep, f);
            if w.iter().all(|&x| x == 0) {
                return Err(Error::Singular);
            }
            images[pt] = class_of[index_of(&w)];
        }
        perms.push(Permutation::from_images(images)?);
    }
    let group = PermutationGroup::from_generators(perms.clone())?;
    Ok(VectorAction {
        group,
        labels,
        generator_perms: perms,
        all_vectors: all,
        class_of,
    })
}

/// Partition vectors by a canonical-representative map; points are ordered
/// by first appearance of their representative (which is the canonical
/// vector order).
fn classify<F>(
    all: &[Vec<u64>],
    f: &FiniteField,
    rep_of: F,
) -> (Vec<Vec<u64>>, Vec<usize>)
where
    F: Fn(&[u64], &FiniteField) -> Vec<u64>,
{
    let mut labels: Vec<Vec<u64>> = Vec::new();
    let mut class_of = vec![usize::MAX; all.len()];
    for (i, v) in all.iter().enumerate() {
        let rep = rep_of(v, f);
        let pt = match labels.iter().position(|l| *l == rep) {
            Some(p) => p,
            None => {
                labels.push(rep);
                labels.len() - 1
            }
        };
        class_of[i] = pt;
    }
    (labels, class_of)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FiniteField {
        field_of_order(q).unwrap()
    }

    #[test]
    fn singer_orders() {
        let f3 = gf(3);
        assert_eq!(singer_cycle(2, &f3).unwrap().order(&f3), 8);
        let f2 = gf(2);
        assert_eq!(singer_cycle(3, &f2).unwrap().order(&f2), 7);
    }

    #[test]
    fn singer_scalar_center_gl4_3() {
        let f = gf(3);
        let x = singer_cycle(4, &f).unwrap();
        // (q^d−1)/(q−1) = 40; x^40 is scalar of order 2 (the scalar group
        // of GF(3) is {±1}).
        let z = x.pow(40, &f);
        assert!(z.is_scalar());
        assert!(!z.is_identity());
        assert!(z.mul(&z, &f).is_identity());
    }

    #[test]
    fn singer_scalar_center_general() {
        for (d, q) in [(2u32, 3u64), (3, 2), (2, 5), (3, 3)] {
            let f = gf(q);
            let x = singer_cycle(d as usize, &f).unwrap();
            let s = (q.pow(d) - 1) / (q - 1);
            assert!(x.pow(s, &f).is_scalar(), "d={d} q={q}");
        }
    }

    #[test]
    fn gamma_l1_orders() {
        assert_eq!(gamma_l1(3, 4).unwrap().order(), 320);
        assert_eq!(gamma_l1(5, 2).unwrap().order(), 48);
    }

    #[test]
    fn gamma_l1_relation_x_y_equals_x_p() {
        let g = gamma_l1(3, 4).unwrap();
        let x = &g.generators()[0];
        let y = &g.generators()[1];
        assert_eq!(x.conjugate(y), x.compose(x).compose(x));
    }

    #[test]
    fn mdq_434_nonempty_with_half_frobenius() {
        let sols = verify_mdq(4, 3, 4).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|&(_, k)| k == 2)); // de/2 = 2
    }

    #[test]
    fn mdq_d3_small_q_empty() {
        for q in [2u64, 3, 5] {
            for m in [1u64, 2, 4] {
                assert!(verify_mdq(3, q, m).unwrap().is_empty(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn mdq_25_solutions_at_half() {
        for m in [1u64, 2, 4] {
            let sols = verify_mdq(2, 5, m).unwrap();
            assert!(!sols.is_empty());
            assert!(sols.iter().all(|&(_, k)| k == 1)); // de/2 = 1
        }
    }

    #[test]
    fn mdq_parallel_matches_sequential() {
        for (d, q, m) in [(4u32, 3u64, 4u64), (2, 5, 2), (3, 3, 1), (2, 13, 2)] {
            assert_eq!(
                verify_mdq(d, q, m).unwrap(),
                verify_mdq_seq(d, q, m).unwrap()
            );
        }
    }

    #[test]
    fn inverse_transpose_involution_preserves_order() {
        let f = gf(2);
        let x = singer_cycle(3, &f).unwrap();
        let ix = inverse_transpose(&x, &f).unwrap();
        assert_eq!(inverse_transpose(&ix, &f).unwrap(), x);
        assert_eq!(ix.order(&f), 7);
    }

    #[test]
    fn symmetric_conjugator_identity() {
        let f = gf(2);
        let s = find_symmetric_conjugator(&Mat::identity(3), &f).unwrap();
        assert!(s.is_symmetric());
        assert!(s.is_invertible(&f));
    }

    #[test]
    fn symmetric_conjugator_singer_gl3_2() {
        let f = gf(2);
        let x = singer_cycle(3, &f).unwrap();
        let s = find_symmetric_conjugator(&x, &f).unwrap();
        assert!(s.is_symmetric());
        assert_eq!(s.inverse(&f).unwrap().mul(&x, &f).mul(&s, &f), x.transpose());
    }

    #[test]
    fn symmetric_conjugator_singer_gl2_3() {
        let f = gf(3);
        let x = singer_cycle(2, &f).unwrap();
        let s = find_symmetric_conjugator(&x, &f).unwrap();
        assert!(s.is_symmetric());
        assert_eq!(s.inverse(&f).unwrap().mul(&x, &f).mul(&s, &f), x.transpose());
    }

    #[test]
    fn gl2_3_on_nonzero_vectors_order_48() {
        let f = gf(3);
        let a = SemilinearElement::linear(Mat::from_rows(&[vec![1, 1], vec![0, 1]]));
        let b = SemilinearElement::linear(Mat::from_rows(&[vec![0, 1], vec![1, 0]]));
        let va =
            matrix_group_as_permutations(&[a, b], &f, MatrixAction::NonzeroVectors)
                .unwrap();
        assert_eq!(va.labels.len(), 8);
        assert_eq!(va.group.order(), 48);
    }

    #[test]
    fn psl2_5_on_projective_points_order_60() {
        let f = gf(5);
        let a = SemilinearElement::linear(Mat::from_rows(&[vec![1, 1], vec![0, 1]]));
        let b = SemilinearElement::linear(Mat::from_rows(&[vec![0, 1], vec![4, 0]]));
        let va =
            matrix_group_as_permutations(&[a, b], &f, MatrixAction::ProjectivePoints)
                .unwrap();
        assert_eq!(va.labels.len(), 6);
        assert_eq!(va.group.order(), 60);
    }

    #[test]
    fn p_orbit_domain_size_for_q5() {
        // SL₂(5) on orbits of P = ⟨μ²I⟩ = {±I}: 24/2 = 12 = 2(q+1) points.
        let f = gf(5);
        let a = SemilinearElement::linear(Mat::from_rows(&[vec![1, 1], vec![0, 1]]));
        let b = SemilinearElement::linear(Mat::from_rows(&[vec![0, 1], vec![4, 0]]));
        let va = matrix_group_as_permutations(&[a, b], &f, MatrixAction::POrbit(2))
            .unwrap();
        assert_eq!(va.labels.len(), 12);
    }

    #[test]
    fn p_orbit_bad_exponent_rejected() {
        let f = gf(5);
        let a = SemilinearElement::linear(Mat::identity(2));
        assert!(
            matrix_group_as_permutations(&[a], &f, MatrixAction::POrbit(3)).is_err()
        );
    }

    #[test]
    fn semilinear_composition_law() {
        let f = gf(9);
        let m1 = Mat::from_rows(&[vec![2, 1], vec![1, 0]]);
        let m2 = Mat::from_rows(&[vec![1, 3], vec![0, 1]]);
        let g1 = SemilinearElement {
            matrix: m1,
            frobenius_power: 1,
        };
        let g2 = SemilinearElement {
            matrix: m2,
            frobenius_power: 1,
        };
        let prod = g1.compose(&g2, &f);
        for v in [[1u64, 0], [0, 1], [2, 5], [7, 3]] {
            assert_eq!(
                g2.apply_vec(&g1.apply_vec(&v, &f), &f),
                prod.apply_vec(&v, &f)
            );
        }
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let f = gf(7);
        let m = Mat::from_rows(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&inv, &f).is_identity());
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = gf(5);
        let m = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(m.inverse(&f), Err(Error::Singular)));
    }
}
