//! Family parameter grammar: `family:param=value,...` strings resolved to
//! certified graphs, e.g. `g2q:q=13` or `bpg:d=3,q=2,complement=true`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::families::{
    affine_polar_graph, g2q, gdq, orbital_graphs, point_hyperplane_graph,
    CertifiedGraph, Epsilon,
};
use crate::graph::{
    complete_bipartite, complete_bipartite_minus_matching, complete_graph,
    cycle_graph, hamming_graph, SimpleGraph,
};
use crate::group::PermutationGroup;
use crate::named::{a5_on_20, s5_on_20};
use crate::perm::Permutation;

struct Params {
    family: String,
    map: HashMap<String, String>,
}

impl Params {
    fn parse(spec: &str) -> Result<Params> {
        let (family, rest) = match spec.split_once(':') {
            Some((f, r)) => (f, r),
            None => (spec, ""),
        };
        let mut map = HashMap::new();
        for piece in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{piece}'")))?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate parameter '{k}'")));
            }
        }
        Ok(Params {
            family: family.to_string(),
            map,
        })
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::Parse(format!("{}: missing parameter '{key}'", self.family)))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        self.get(key)?
            .parse()
            .map_err(|_| Error::Parse(format!("{}: '{key}' is not an integer", self.family)))
    }

    fn u64(&self, key: &str) -> Result<u64> {
        self.get(key)?
            .parse()
            .map_err(|_| Error::Parse(format!("{}: '{key}' is not an integer", self.family)))
    }

    fn bool(&self, key: &str) -> Result<bool> {
        match self.get(key)? {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(Error::Parse(format!(
                "{}: '{key}' must be true or false, got '{other}'",
                self.family
            ))),
        }
    }

    fn epsilon(&self, key: &str) -> Result<Epsilon> {
        match self.get(key)? {
            "+" | "plus" => Ok(Epsilon::Plus),
            "-" | "minus" => Ok(Epsilon::Minus),
            other => Err(Error::Parse(format!(
                "{}: '{key}' must be + or -, got '{other}'",
                self.family
            ))),
        }
    }
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &cycles).unwrap()
}

/// Generators of S_n acting on 0..n as vertex symmetries.
fn symmetric_gens(n: usize, offset: usize, degree: usize) -> Vec<Permutation> {
    let mut gens = Vec::new();
    if n >= 2 {
        let cycle: Vec<usize> = (0..n).map(|i| i + offset).collect();
        gens.push(cyc(degree, &[&cycle]));
        gens.push(cyc(degree, &[&[offset, offset + 1]]));
    }
    gens
}

fn certify(graph: SimpleGraph, gens: Vec<Permutation>, provenance: String) -> Result<CertifiedGraph> {
    let group = if gens.is_empty() {
        PermutationGroup::trivial(graph.n())
    } else {
        PermutationGroup::from_generators(gens)?
    };
    let cert = CertifiedGraph {
        graph,
        group,
        provenance,
    };
    if !cert.certificate_holds() {
        return Err(Error::Unknown(format!(
            "internal: certificate fails for {}",
            cert.provenance
        )));
    }
    Ok(cert)
}

/// The connected arc-transitive orbital graphs of an action, deduplicated
/// up to isomorphism and sorted by graph6 string for stable indexing.
pub fn connected_at_orbital_graphs(group: &PermutationGroup) -> Result<Vec<CertifiedGraph>> {
    let mut reps: Vec<(String, CertifiedGraph)> = Vec::new();
    for og in orbital_graphs(group)? {
        if !(og.self_paired && og.connected) {
            continue;
        }
        let mut iso_to_earlier = false;
        for (_, r) in &reps {
            if crate::analysis::are_isomorphic(&r.graph, &og.certified.graph)?.is_some() {
                iso_to_earlier = true;
                break;
            }
        }
        if iso_to_earlier {
            continue;
        }
        reps.push((og.certified.graph.to_graph6(), og.certified));
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(reps.into_iter().map(|(_, c)| c).collect())
}

/// All connected orbital graphs of an action — self-paired or
/// symmetrizations of paired orbitals — up to isomorphism.
pub fn connected_orbital_classes(group: &PermutationGroup) -> Result<Vec<SimpleGraph>> {
    let mut reps: Vec<SimpleGraph> = Vec::new();
    for og in orbital_graphs(group)? {
        if !og.connected {
            continue;
        }
        let mut iso_to_earlier = false;
        for r in &reps {
            if crate::analysis::are_isomorphic(r, &og.certified.graph)?.is_some() {
                iso_to_earlier = true;
                break;
            }
        }
        if !iso_to_earlier {
            reps.push(og.certified.graph);
        }
    }
    Ok(reps)
}

/// The three 𝒢₂₀ graphs (connected arc-transitive orbital graphs of S₅ on
/// 20 cosets of ℤ₆), indexed so that 2 and 3 are the two reproduced by the
/// (S₅, S₃) coset action; within {2,3} the order is by graph6 string.
pub fn g20_family() -> Result<Vec<CertifiedGraph>> {
    let from_z6 = connected_at_orbital_graphs(&s5_on_20()?)?;
    if from_z6.len() != 3 {
        return Err(Error::Unknown(format!(
            "internal: expected three G20 graphs, found {}",
            from_z6.len()
        )));
    }
    let from_s3 = connected_orbital_classes(&crate::named::s5_s3_on_20()?)?;
    let mut reproduced = Vec::new();
    let mut rest = Vec::new();
    for cert in from_z6 {
        let mut hit = false;
        for other in &from_s3 {
            if crate::analysis::are_isomorphic(&cert.graph, other)?.is_some() {
                hit = true;
                break;
            }
        }
        if hit {
            reproduced.push(cert);
        } else {
            rest.push(cert);
        }
    }
    if rest.len() != 1 || reproduced.len() != 2 {
        return Err(Error::Unknown(format!(
            "internal: S3 action reproduces {} of 3 G20 graphs",
            reproduced.len()
        )));
    }
    rest.extend(reproduced);
    Ok(rest)
}

/// Resolve a `family:param=value,...` string to a certified graph.
pub fn construct_family(spec: &str) -> Result<CertifiedGraph> {
    let p = Params::parse(spec)?;
    match p.family.as_str() {
        "complete" => {
            let n = p.usize("n")?;
            certify(
                complete_graph(n),
                symmetric_gens(n, 0, n),
                format!("complete:n={n}"),
            )
        }
        "cycle" => {
            let n = p.usize("n")?;
            let mut gens = Vec::new();
            if n >= 3 {
                let rot: Vec<usize> = (0..n).collect();
                gens.push(cyc(n, &[&rot]));
                gens.push(Permutation::from_images(
                    (0..n).map(|i| (n - i) % n).collect(),
                )?);
            }
            certify(cycle_graph(n), gens, format!("cycle:n={n}"))
        }
        "cbip" => {
            let n = p.usize("n")?;
            let mut gens = symmetric_gens(n, 0, 2 * n);
            gens.extend(symmetric_gens(n, n, 2 * n));
            gens.push(Permutation::from_images(
                (0..2 * n).map(|i| (i + n) % (2 * n)).collect(),
            )?);
            certify(complete_bipartite(n, n), gens, format!("cbip:n={n}"))
        }
        "cbipmm" => {
            // K_{n,n} minus the perfect matching {i, n+i}: certified by the
            // diagonal S_n and the side swap.
            let n = p.usize("n")?;
            let mut gens = Vec::new();
            if n >= 2 {
                let c0: Vec<usize> = (0..n).collect();
                let c1: Vec<usize> = (n..2 * n).collect();
                gens.push(cyc(2 * n, &[&c0, &c1]));
                gens.push(cyc(2 * n, &[&[0, 1], &[n, n + 1]]));
            }
            gens.push(Permutation::from_images(
                (0..2 * n).map(|i| (i + n) % (2 * n)).collect(),
            )?);
            certify(
                complete_bipartite_minus_matching(n),
                gens,
                format!("cbipmm:n={n}"),
            )
        }
        "hamming" => {
            let (k, m) = (p.usize("k")?, p.usize("m")?);
            let graph = hamming_graph(k as u32, m)?;
            let n = graph.n();
            let pow = |e: u32| m.pow(e);
            let mut gens = Vec::new();
            if m >= 2 {
                // m-cycle and transposition on digit 0.
                gens.push(Permutation::from_images(
                    (0..n).map(|v| v - v % m + (v + 1) % m).collect(),
                )?);
                gens.push(Permutation::from_images(
                    (0..n)
                        .map(|v| match v % m {
                            0 => v + 1,
                            1 => v - 1,
                            _ => v,
                        })
                        .collect(),
                )?);
            }
            if k >= 2 {
                // Cyclic shift of digit positions.
                gens.push(Permutation::from_images(
                    (0..n)
                        .map(|v| {
                            let mut digits: Vec<usize> =
                                (0..k).map(|i| v / pow(i as u32) % m).collect();
                            digits.rotate_right(1);
                            digits
                                .iter()
                                .enumerate()
                                .map(|(i, &d)| d * pow(i as u32))
                                .sum()
                        })
                        .collect(),
                )?);
                // Swap digits 0 and 1.
                gens.push(Permutation::from_images(
                    (0..n)
                        .map(|v| v - v % (m * m) + (v % m) * m + v / m % m)
                        .collect(),
                )?);
            }
            certify(graph, gens, format!("hamming:k={k},m={m}"))
        }
        "vo" => affine_polar_graph(p.usize("m")?, p.u64("q")?, p.epsilon("eps")?),
        "bpg" => Ok(point_hyperplane_graph(
            p.usize("d")?,
            p.u64("q")?,
            p.bool("complement")?,
        )?
        .certified),
        "g2q" => Ok(g2q(p.u64("q")?)?.certified),
        "gdq" => {
            Ok(gdq(p.usize("d")?, p.u64("q")?, p.usize("i")? as u32)?.certified)
        }
        "f020a" => {
            let action = a5_on_20()?;
            let mut cands = connected_at_orbital_graphs(&action)?;
            if cands.len() != 1 {
                return Err(Error::Unknown(format!(
                    "internal: expected one candidate, found {}",
                    cands.len()
                )));
            }
            let mut cert = cands.pop().unwrap();
            cert.provenance = "f020a".into();
            Ok(cert)
        }
        "g20" => {
            let i = p.usize("i")?;
            if !(1..=3).contains(&i) {
                return Err(Error::Parse("g20: i must be 1, 2 or 3".into()));
            }
            let mut cert = g20_family()?.into_iter().nth(i - 1).unwrap();
            cert.provenance = format!("g20:i={i}");
            Ok(cert)
        }
        other => Err(Error::Parse(format!("unknown family '{other}'"))),
    }
}
