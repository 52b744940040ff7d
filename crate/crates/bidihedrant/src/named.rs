//! Named permutation groups and actions: JSON group files, affine groups
//! over small fields, the bundled Mathieu group M₁₂, and the coset actions
//! behind the degree-20 graph families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{coset_action, g2q, gl_gens, Epsilon};
use crate::gf::FiniteField;
use crate::group::PermutationGroup;
use crate::matgf::{field_of_order, Mat, SemilinearElement};
use crate::perm::Permutation;

/// On-disk group format: 1-based disjoint cycles per generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_group(&self) -> Result<PermutationGroup> {
        let gens = self
            .generators
            .iter()
            .map(|cycles| {
                let zero_based: Vec<Vec<usize>> = cycles
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|&p| {
                                p.checked_sub(1).ok_or(Error::Parse(
                                    "points are 1-based".into(),
                                ))
                            })
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                Permutation::from_cycles(self.degree, &zero_based)
            })
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::from_generators(gens)
    }

    pub fn from_group(name: &str, group: &PermutationGroup) -> GroupFile {
        let generators = group
            .generators()
            .iter()
            .map(|g| {
                g.cycles()
                    .into_iter()
                    .map(|c| c.into_iter().map(|p| p + 1).collect())
                    .collect()
            })
            .collect();
        GroupFile {
            name: name.to_string(),
            degree: group.degree(),
            generators,
        }
    }
}

pub fn load_group(text: &str) -> Result<PermutationGroup> {
    GroupFile::parse(text)?.to_group()
}

/// The Mathieu group M₁₂ in its natural degree-12 action (bundled data).
pub fn m12() -> Result<PermutationGroup> {
    load_group(include_str!("../../../data/groups/m12.json"))
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &cycles).unwrap()
}

/// A₅ on the 20 cosets of ⟨(1,2,3)⟩ ≅ ℤ₃.
pub fn a5_on_20() -> Result<PermutationGroup> {
    let g = PermutationGroup::from_generators(vec![
        cyc(5, &[&[0, 1, 2]]),
        cyc(5, &[&[2, 3, 4]]),
    ])?;
    let k = PermutationGroup::from_generators(vec![cyc(5, &[&[0, 1, 2]])])?;
    Ok(coset_action(&g, &k)?.group)
}

/// S₅ on the 20 cosets of ⟨(1,2,3),(4,5)⟩ ≅ ℤ₆.
pub fn s5_on_20() -> Result<PermutationGroup> {
    let g = PermutationGroup::from_generators(vec![
        cyc(5, &[&[0, 1, 2, 3, 4]]),
        cyc(5, &[&[0, 1]]),
    ])?;
    let k = PermutationGroup::from_generators(vec![
        cyc(5, &[&[0, 1, 2]]),
        cyc(5, &[&[3, 4]]),
    ])?;
    Ok(coset_action(&g, &k)?.group)
}

/// S₅ on the 20 cosets of ⟨(1,2,3),(1,2)⟩ ≅ S₃.
pub fn s5_s3_on_20() -> Result<PermutationGroup> {
    let g = PermutationGroup::from_generators(vec![
        cyc(5, &[&[0, 1, 2, 3, 4]]),
        cyc(5, &[&[0, 1]]),
    ])?;
    let k = PermutationGroup::from_generators(vec![
        cyc(5, &[&[0, 1, 2]]),
        cyc(5, &[&[0, 1]]),
    ])?;
    Ok(coset_action(&g, &k)?.group)
}

/// Points of the affine line over GF(q) are the q field-element encodings.
fn affine_line(q: u64, semilinear: bool) -> Result<PermutationGroup> {
    let f = field_of_order(q)?;
    let n = q as usize;
    let mut gens = Vec::new();
    for k in 0..f.e() {
        let c = f.pow(f.generator(), k as u64);
        gens.push(Permutation::from_images(
            (0..n).map(|v| f.add(v as u64, c) as usize).collect(),
        )?);
    }
    gens.push(Permutation::from_images(
        (0..n).map(|v| f.mul(v as u64, f.generator()) as usize).collect(),
    )?);
    if semilinear && f.e() > 1 {
        gens.push(Permutation::from_images(
            (0..n).map(|v| f.frobenius(v as u64) as usize).collect(),
        )?);
    }
    PermutationGroup::from_generators(gens)
}

/// AGL₁(q) on the q points of the affine line.
pub fn agl1(q: u64) -> Result<PermutationGroup> {
    affine_line(q, false)
}

/// AΓL₁(q) on the q points of the affine line.
pub fn agammal1(q: u64) -> Result<PermutationGroup> {
    affine_line(q, true)
}

/// Vectors of F₂^d indexed by Σ v_i 2^i.
fn f2_index(v: &[u64]) -> usize {
    v.iter().enumerate().map(|(i, &x)| (x as usize) << i).sum()
}

fn f2_vector(idx: usize, d: usize) -> Vec<u64> {
    (0..d).map(|i| ((idx >> i) & 1) as u64).collect()
}

/// Affine group ⟨translations, mats⟩ on the 2^d vectors of F₂^d.
fn affine_f2(d: usize, mats: &[Mat], f: &FiniteField) -> Result<PermutationGroup> {
    let n = 1usize << d;
    let mut gens = Vec::new();
    for i in 0..d {
        gens.push(Permutation::from_images(
            (0..n).map(|v| v ^ (1 << i)).collect(),
        )?);
    }
    for m in mats {
        let el = SemilinearElement::linear(m.clone());
        gens.push(Permutation::from_images(
            (0..n)
                .map(|v| f2_index(&el.apply_vec(&f2_vector(v, d), f)))
                .collect(),
        )?);
    }
    PermutationGroup::from_generators(gens)
}

/// AGL_d(2) = ℤ₂^d : GL_d(2) on 2^d points.
pub fn agl_d_2(d: usize) -> Result<PermutationGroup> {
    if d > 16 {
        return Err(Error::DegreeBudget(1 << 16));
    }
    let f = field_of_order(2)?;
    affine_f2(d, &gl_gens(d, &f), &f)
}

/// ℤ₂⁴ : Sp₄(2) on 16 points; Sp₄(2) found by sweeping GL₄(2) for the
/// standard alternating form B(u,v) = u₁v₂ + u₂v₁ + u₃v₄ + u₄v₃.
pub fn affine_sp4_2() -> Result<PermutationGroup> {
    let f = field_of_order(2)?;
    let d = 4;
    let b = |u: &[u64], v: &[u64]| -> u64 {
        (u[0] & v[1]) ^ (u[1] & v[0]) ^ (u[2] & v[3]) ^ (u[3] & v[2])
    };
    let vectors: Vec<Vec<u64>> = (0..16).map(|i| f2_vector(i, d)).collect();
    let mut mats = Vec::new();
    for code in 0..(1u32 << 16) {
        let entries: Vec<u64> = (0..16).map(|i| ((code >> i) & 1) as u64).collect();
        let m = Mat { d, entries };
        if !m.is_invertible(&f) {
            continue;
        }
        let el = SemilinearElement::linear(m.clone());
        let preserves = vectors.iter().all(|u| {
            let mu = el.apply_vec(u, &f);
            vectors
                .iter()
                .all(|v| b(&mu, &el.apply_vec(v, &f)) == b(u, v))
        });
        if preserves {
            mats.push(m);
        }
    }
    affine_f2(d, &mats, &f)
}

/// ℤ₂⁴ : SO₄^ε(2): the automorphism certificate of the affine polar graph.
pub fn affine_so4_2(epsilon: Epsilon) -> Result<PermutationGroup> {
    Ok(crate::families::affine_polar_graph(2, 2, epsilon)?.group)
}

/// Look up a named action by registry key.
pub fn named_group(name: &str) -> Result<PermutationGroup> {
    match name {
        "a5@20" => a5_on_20(),
        "s5@20" => s5_on_20(),
        "s5s3@20" => s5_s3_on_20(),
        "m12" => m12(),
        "agl1_8" => agl1(8),
        "agammal1_8" => agammal1(8),
        "agl3_2" => agl_d_2(3),
        "aso4p_2" => affine_so4_2(Epsilon::Plus),
        "aso4m_2" => affine_so4_2(Epsilon::Minus),
        "asp4_2" => affine_sp4_2(),
        "psl2_5@12" => Ok(g2q(5)?.psl),
        "psl2_13@28" => Ok(g2q(13)?.psl),
        other => Err(Error::Unknown(format!("unknown named group '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action;

    #[test]
    fn group_file_roundtrip() {
        let g = s5_on_20().unwrap();
        let file = GroupFile::from_group("s5@20", &g);
        let text = serde_json::to_string(&file).unwrap();
        let back = load_group(&text).unwrap();
        assert!(g.same_group_as(&back).unwrap());
    }

    #[test]
    fn m12_order_and_transitivity() {
        let g = m12().unwrap();
        assert_eq!(g.degree(), 12);
        assert_eq!(g.order(), 95_040);
        assert!(action::is_transitive(&g));
    }

    #[test]
    fn coset_actions_degree_20() {
        let a5 = a5_on_20().unwrap();
        assert_eq!((a5.degree(), a5.order()), (20, 60));
        let s5 = s5_on_20().unwrap();
        assert_eq!((s5.degree(), s5.order()), (20, 120));
        let s5s3 = s5_s3_on_20().unwrap();
        assert_eq!((s5s3.degree(), s5s3.order()), (20, 120));
        assert!(action::is_transitive(&s5s3));
    }

    #[test]
    fn affine_line_orders() {
        let agl = agl1(8).unwrap();
        assert_eq!((agl.degree(), agl.order()), (8, 56));
        let agml = agammal1(8).unwrap();
        assert_eq!((agml.degree(), agml.order()), (8, 168));
        assert!(action::is_transitive(&agml));
    }

    #[test]
    fn agl32_order() {
        let g = agl_d_2(3).unwrap();
        assert_eq!((g.degree(), g.order()), (8, 1_344));
    }

    #[test]
    fn affine_symplectic_order() {
        // |Sp₄(2)| = 720, so the affine group has order 16·720.
        let g = affine_sp4_2().unwrap();
        assert_eq!((g.degree(), g.order()), (16, 11_520));
        assert!(action::is_transitive(&g));
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(named_group("nope").is_err());
    }
}
