//! Brute-force subgroup machinery for small groups: conjugacy classes,
//! subgroup enumeration up to conjugacy, normalizers, centralizers and
//! intersections. Everything here enumerates elements and is guarded by an
//! explicit order cap.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use num_traits::ToPrimitive;
use std::collections::{HashMap, HashSet};

/// Sorted element list of a small group.
pub fn sorted_elements(g: &Group, cap: u64) -> Result<Vec<Permutation>> {
    let mut elems = g.elements(cap)?;
    elems.sort();
    Ok(elems)
}

/// Conjugacy classes as full sorted element lists, in order of the smallest
/// class member; the identity class comes first.
pub fn conjugacy_classes(g: &Group, cap: u64) -> Result<Vec<Vec<Permutation>>> {
    let elems = sorted_elements(g, cap)?;
    let mut visited: HashSet<Permutation> = HashSet::with_capacity(elems.len());
    let mut classes = Vec::new();
    for e in &elems {
        if visited.contains(e) {
            continue;
        }
        let mut class = vec![e.clone()];
        visited.insert(e.clone());
        let mut i = 0;
        while i < class.len() {
            let x = class[i].clone();
            for t in g.generators() {
                let c = x.conjugate_by(t);
                if visited.insert(c.clone()) {
                    class.push(c);
                }
            }
            i += 1;
        }
        class.sort();
        classes.push(class);
    }
    Ok(classes)
}

/// One representative per conjugacy class (the smallest member).
pub fn conjugacy_class_reps(g: &Group, cap: u64) -> Result<Vec<Permutation>> {
    Ok(conjugacy_classes(g, cap)?
        .into_iter()
        .map(|c| c[0].clone())
        .collect())
}

/// N_G(H) = { t in G : H^t = H }.
pub fn normalizer(g: &Group, h: &Group, cap: u64) -> Result<Group> {
    let elems = sorted_elements(g, cap)?;
    let stab: Vec<Permutation> = elems
        .into_iter()
        .filter(|t| {
            h.generators()
                .iter()
                .all(|s| h.contains(&s.conjugate_by(t)).unwrap_or(false))
        })
        .collect();
    Group::new(g.degree(), stab)
}

/// C_G(x) = { t in G : x^t = x }.
pub fn centralizer(g: &Group, x: &Permutation, cap: u64) -> Result<Group> {
    let elems = sorted_elements(g, cap)?;
    let stab: Vec<Permutation> = elems
        .into_iter()
        .filter(|t| &x.conjugate_by(t) == x)
        .collect();
    Group::new(g.degree(), stab)
}

/// Centralizer of a whole subgroup.
pub fn group_centralizer(g: &Group, h: &Group, cap: u64) -> Result<Group> {
    let elems = sorted_elements(g, cap)?;
    let stab: Vec<Permutation> = elems
        .into_iter()
        .filter(|t| h.generators().iter().all(|s| &s.conjugate_by(t) == s))
        .collect();
    Group::new(g.degree(), stab)
}

/// A ∩ B by enumerating the smaller factor.
pub fn intersection(a: &Group, b: &Group, cap: u64) -> Result<Group> {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let elems = small.elements(cap)?;
    let common: Vec<Permutation> = elems
        .into_iter()
        .filter(|e| big.contains(e).unwrap_or(false))
        .collect();
    Group::new(a.degree(), common)
}

/// All distinct conjugates of `h` under `g`.
pub fn conjugates(g: &Group, h: &Group, cap: u64) -> Result<Vec<Group>> {
    let elems = sorted_elements(g, cap)?;
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for t in &elems {
        let ht = h.conjugate_by(t);
        let mut key = ht.elements(cap)?;
        key.sort();
        if seen.insert(key) {
            out.push(ht);
        }
    }
    Ok(out)
}

/// A subgroup class found by the lattice walk.
pub struct SubgroupClass {
    pub rep: Group,
    pub order: u64,
    /// Sorted elements of the representative.
    pub elements: Vec<Permutation>,
    /// True iff some subgroup K with rep < K < G exists (so the class is not
    /// maximal in G). For solvable-only walks, K ranges over solvable
    /// subgroups only.
    pub has_proper_intermediate: bool,
}

impl SubgroupClass {
    fn element_set(&self) -> HashSet<&Permutation> {
        self.elements.iter().collect()
    }

    /// Order-multiset fingerprint, invariant under conjugation.
    fn fingerprint(elements: &[Permutation]) -> Vec<(u64, usize)> {
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for e in elements {
            *counts.entry(e.order().to_u64().unwrap_or(u64::MAX)).or_insert(0) += 1;
        }
        let mut fp: Vec<(u64, usize)> = counts.into_iter().collect();
        fp.sort();
        fp
    }
}

/// Conjugacy test K ~ L inside G: scan transporters with a cheap one-element
/// pre-filter before checking all generators.
fn are_conjugate(
    g_elems: &[Permutation],
    k_gens: &[Permutation],
    k_probe: Option<&Permutation>,
    l_elems: &HashSet<&Permutation>,
) -> bool {
    for t in g_elems {
        if let Some(p) = k_probe {
            if !l_elems.contains(&p.conjugate_by(t)) {
                continue;
            }
        }
        if k_gens
            .iter()
            .all(|s| l_elems.contains(&s.conjugate_by(t)))
        {
            return true;
        }
    }
    false
}

/// Representatives of the H-conjugation orbits on a G-class.
fn h_orbit_reps(h: &Group, class: &[Permutation]) -> Vec<Permutation> {
    let mut remaining: HashSet<&Permutation> = class.iter().collect();
    let mut reps = Vec::new();
    for e in class {
        if !remaining.contains(e) {
            continue;
        }
        reps.push(e.clone());
        let mut orbit = vec![e.clone()];
        remaining.remove(e);
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i].clone();
            for t in h.generators() {
                let c = x.conjugate_by(t);
                if remaining.remove(&c) {
                    orbit.push(c.clone());
                }
            }
            i += 1;
        }
    }
    reps
}

/// Enumerate subgroups of `g` up to conjugacy by breadth-first extension of
/// class representatives with prime-power-order elements. Every subgroup of
/// `g` arises this way: a maximal chain can be refined so that each step
/// adjoins one prime-power component of an element, and with
/// `solvable_only` every intermediate subgroup of a solvable subgroup is
/// itself solvable. G itself is not included.
pub fn subgroup_classes(
    g: &Group,
    cap: u64,
    solvable_only: bool,
) -> Result<Vec<SubgroupClass>> {
    let g_order = g.order_u64().filter(|&n| n <= cap).ok_or(Error::CapExceeded {
        what: "subgroup lattice",
        needed: g.order().to_string(),
        cap: cap.to_string(),
    })?;
    let g_elems = sorted_elements(g, cap)?;
    let classes = conjugacy_classes(g, cap)?;
    let pp_classes: Vec<&Vec<Permutation>> = classes
        .iter()
        .filter(|c| {
            let o = c[0].order();
            o.to_u64().map(is_prime_power).unwrap_or(false)
        })
        .collect();

    let degree = g.degree();
    let trivial = Group::trivial(degree);
    let mut out: Vec<SubgroupClass> = vec![SubgroupClass {
        elements: vec![Permutation::identity(degree)],
        order: 1,
        rep: trivial,
        has_proper_intermediate: false,
    }];
    let mut by_fingerprint: HashMap<(u64, Vec<(u64, usize)>), Vec<usize>> = HashMap::new();
    by_fingerprint.insert(
        (1, SubgroupClass::fingerprint(&out[0].elements)),
        vec![0],
    );

    let mut idx = 0;
    while idx < out.len() {
        let h = out[idx].rep.clone();
        let h_elems: HashSet<Permutation> = out[idx].elements.iter().cloned().collect();
        let h_order = out[idx].order;
        for class in &pp_classes {
            for x in h_orbit_reps(&h, class) {
                if h_elems.contains(&x) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(x);
                let k = Group::new(degree, gens)?;
                let Some(k_order) = k.order_u64() else {
                    return Err(Error::Internal("subgroup larger than group".into()));
                };
                if solvable_only && !k.is_solvable() {
                    continue;
                }
                if k_order > h_order && k_order < g_order {
                    out[idx].has_proper_intermediate = true;
                }
                if k_order == g_order {
                    continue;
                }
                let mut k_elements = k.elements(cap)?;
                k_elements.sort();
                let fp = (k_order, SubgroupClass::fingerprint(&k_elements));
                let slot = by_fingerprint.entry(fp).or_default();
                let probe = k_elements.get(1).cloned();
                let known = slot.iter().any(|&j| {
                    are_conjugate(
                        &g_elems,
                        k.generators(),
                        probe.as_ref(),
                        &out[j].element_set(),
                    )
                });
                if !known {
                    slot.push(out.len());
                    out.push(SubgroupClass {
                        rep: k,
                        order: k_order,
                        elements: k_elements,
                        has_proper_intermediate: false,
                    });
                }
            }
        }
        idx += 1;
    }
    Ok(out)
}

fn is_prime_power(n: u64) -> bool {
    n > 1 && crate::class_l::prime_power(n).is_ok()
}

/// The classes that are maximal subgroups of G.
pub fn maximal_subgroup_classes(g: &Group, cap: u64) -> Result<Vec<SubgroupClass>> {
    Ok(subgroup_classes(g, cap, false)?
        .into_iter()
        .filter(|c| !c.has_proper_intermediate && c.order < g.order_u64().unwrap_or(u64::MAX))
        .collect())
}
