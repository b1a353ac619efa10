//! Normal-structure invariants: solvable radical, p-cores, minimal normal
//! subgroups, nonabelian socle with components, Frattini subgroup, 2-length
//! and the solvable-subgroup maximum L₂.
//!
//! Every operation is tiered: exact within the caps, Monte-Carlo with a
//! flagged result, or a fastpath that certifies an exact answer through a
//! small quotient.

use crate::action::{self, ActionHomomorphism};
use crate::class_l::{identify_simple_by_order, SimpleId};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::subgroups;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// All size caps in one place; honest tiering between certified and
/// heuristic results.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Caps {
    /// Full element/class enumeration bound for exact mode.
    pub exact_order: u64,
    /// Subgroup-lattice walks (Frattini, L₂, normalizers).
    pub subgroup_lattice: u64,
    /// Largest coset-action index for quotient representations.
    pub coset_index: u64,
    /// Largest permutation degree for constructions.
    pub degree: usize,
    /// Monte-Carlo samples per round.
    pub mc_round: usize,
    /// Stop after this many rounds without progress.
    pub mc_stagnant_rounds: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exact_order: 1_000_000,
            subgroup_lattice: 20_000,
            coset_index: 100_000,
            degree: 10_000,
            mc_round: 64,
            mc_stagnant_rounds: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    MonteCarlo { seed: u64 },
}

/// How a result was obtained; fastpath results are exact, certified through
/// a reduction rather than full enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeFlag {
    Exact,
    MonteCarlo,
    FastPath,
}

pub fn is_solvable(g: &Group) -> bool {
    g.is_solvable()
}

/// One representative per conjugacy class; exact-mode only.
pub fn conjugacy_class_reps(g: &Group, caps: &Caps) -> Result<Vec<Permutation>> {
    subgroups::conjugacy_class_reps(g, caps.exact_order)
}

/// A quotient H/N realized as a faithful permutation group, together with
/// the homomorphism for lifting subgroups back.
pub struct Quotient {
    pub image: Group,
    hom: Option<ActionHomomorphism>,
}

impl Quotient {
    /// Preimage in H of a subgroup of the image.
    pub fn lift(&self, s: &Group) -> Result<Group> {
        match &self.hom {
            Some(hom) => hom.preimage(s),
            None => Ok(s.clone()),
        }
    }

    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        match &self.hom {
            Some(hom) => hom.apply(g),
            None => Ok(g.clone()),
        }
    }

    pub fn hom(&self) -> Option<&ActionHomomorphism> {
        self.hom.as_ref()
    }
}

/// Quotient by a normal subgroup, via the coset action (faithful because the
/// kernel of the action on cosets of a normal subgroup is that subgroup).
pub fn quotient(h: &Group, n: &Group, caps: &Caps) -> Result<Quotient> {
    if n.is_trivial() {
        return Ok(Quotient {
            image: h.clone(),
            hom: None,
        });
    }
    let hom = action::on_cosets(h, n, caps.coset_index)?;
    Ok(Quotient {
        image: hom.image().clone(),
        hom: Some(hom),
    })
}

fn closure_is_solvable(g: &Group, gens: &[Permutation]) -> Result<Option<Group>> {
    let n = g.normal_closure(gens)?;
    Ok(if n.is_solvable() { Some(n) } else { None })
}

/// Solvable radical R(G).
pub fn solvable_radical(g: &Group, mode: Mode, caps: &Caps) -> Result<(Group, ModeFlag)> {
    match mode {
        Mode::Exact => {
            let reps = conjugacy_class_reps(g, caps)?;
            let mut seeds = Vec::new();
            for r in reps.into_iter().filter(|r| !r.is_identity()) {
                if closure_is_solvable(g, std::slice::from_ref(&r))?.is_some() {
                    seeds.push(r);
                }
            }
            Ok((g.normal_closure(&seeds)?, ModeFlag::Exact))
        }
        Mode::MonteCarlo { seed } => {
            let r = mc_normal_subgroup(g, seed, caps, |n| n.is_solvable())?;
            Ok((r, ModeFlag::MonteCarlo))
        }
    }
}

/// Monte-Carlo growth of a normal subgroup whose closure satisfies `keep`:
/// sample elements, absorb any sample whose joint closure still satisfies
/// the predicate, stop after stagnant rounds. The result is always a normal
/// subgroup satisfying `keep`; maximality is only probabilistic.
fn mc_normal_subgroup(
    g: &Group,
    seed: u64,
    caps: &Caps,
    keep: impl Fn(&Group) -> bool,
) -> Result<Group> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = Group::trivial(g.degree());
    let mut stagnant = 0;
    while stagnant < caps.mc_stagnant_rounds {
        let mut progressed = false;
        for _ in 0..caps.mc_round {
            let x = g.random_element(&mut rng);
            if x.is_identity() || current.contains(&x)? {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let n = g.normal_closure(&trial)?;
            if keep(&n) {
                gens = trial;
                current = n;
                progressed = true;
            }
        }
        if progressed {
            stagnant = 0;
        } else {
            stagnant += 1;
        }
    }
    Ok(current)
}

fn order_is_p_power(order: &BigUint, p: u64) -> bool {
    let p = BigUint::from(p);
    let mut o = order.clone();
    while (&o % &p).is_zero() {
        o /= &p;
    }
    o.is_one()
}

fn order_is_p_prime(order: &BigUint, p: u64) -> bool {
    !(order % BigUint::from(p)).is_zero() || order.is_one()
}

fn core_exact(g: &Group, caps: &Caps, keep: &dyn Fn(&BigUint) -> bool) -> Result<Group> {
    let reps = conjugacy_class_reps(g, caps)?;
    let mut seeds = Vec::new();
    for r in reps.into_iter().filter(|r| !r.is_identity()) {
        let n = g.normal_closure(std::slice::from_ref(&r))?;
        if keep(n.order()) {
            seeds.push(r);
        }
    }
    g.normal_closure(&seeds)
}

/// Largest normal p-subgroup O_p(G).
pub fn p_core(g: &Group, p: u64, caps: &Caps) -> Result<Group> {
    core_exact(g, caps, &|o| order_is_p_power(o, p))
}

/// Largest normal p′-subgroup O_{p′}(G).
pub fn p_prime_core(g: &Group, p: u64, caps: &Caps) -> Result<Group> {
    core_exact(g, caps, &|o| order_is_p_prime(o, p))
}

/// p-core or p′-core with automatic tiering: exact below the lattice cap,
/// otherwise a Monte-Carlo candidate certified exact by recomputing the core
/// of the (small) quotient — trivial quotient core proves maximality.
fn core_auto(
    g: &Group,
    p: u64,
    prime_side: bool,
    caps: &Caps,
    seed: u64,
) -> Result<(Group, ModeFlag)> {
    let keep = |o: &BigUint| {
        if prime_side {
            order_is_p_prime(o, p)
        } else {
            order_is_p_power(o, p)
        }
    };
    if g.order_u64().map(|n| n <= caps.subgroup_lattice) == Some(true) {
        return Ok((core_exact(g, caps, &keep)?, ModeFlag::Exact));
    }
    // Candidate by sampling: project each sample to its p- or p′-part.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = Group::trivial(g.degree());
    let mut stagnant = 0;
    while stagnant < caps.mc_stagnant_rounds {
        let mut progressed = false;
        for _ in 0..caps.mc_round {
            let x = g.random_element(&mut rng);
            let o = x.order().to_u64().ok_or(Error::Internal(
                "element order exceeds u64".into(),
            ))?;
            let mut p_part = 1u64;
            let mut rest = o;
            while rest % p == 0 {
                rest /= p;
                p_part *= p;
            }
            // x^{p_part} has p′-order; x^{rest} has p-power order.
            let y = if prime_side { x.pow(p_part) } else { x.pow(rest) };
            if y.is_identity() || current.contains(&y)? {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(y);
            let n = g.normal_closure(&trial)?;
            if keep(n.order()) {
                gens = trial;
                current = n;
                progressed = true;
            }
        }
        if progressed {
            stagnant = 0;
        } else {
            stagnant += 1;
        }
    }
    // Certify: the corresponding core of G/current must be trivial.
    let q = quotient(g, &current, caps)?;
    let q_core = core_exact(&q.image, caps, &keep)?;
    if !q_core.is_trivial() {
        // Absorb what the quotient found and recurse: preimage of the
        // quotient core satisfies the predicate again only for p′/p by the
        // extension property, which holds for p-cores only when the kernel
        // is one too — re-running with the enlarged candidate is simplest.
        let lifted = q.lift(&q_core)?;
        if keep(lifted.order()) {
            let q2 = quotient(g, &lifted, caps)?;
            let q2_core = core_exact(&q2.image, caps, &keep)?;
            if q2_core.is_trivial() {
                return Ok((lifted, ModeFlag::FastPath));
            }
        }
        return Err(Error::SearchExhausted(
            "p-core fastpath could not certify maximality".into(),
        ));
    }
    Ok((current, ModeFlag::FastPath))
}

/// An alternating 2,2′-series witnessing the 2-length of a solvable group.
#[derive(Debug)]
pub struct TwoSeries {
    /// Ascending chain from the trivial group to H.
    pub terms: Vec<Group>,
    /// Number of nontrivial 2-factors.
    pub l2: usize,
}

/// The upper 2,2′-series of a solvable group (iterated O_{2′}, O_{2′2});
/// this series attains the minimal number of 2-factors.
pub fn two_length(h: &Group, caps: &Caps) -> Result<TwoSeries> {
    if !h.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let mut terms = vec![Group::trivial(h.degree())];
    let mut cur = terms[0].clone();
    let mut l2 = 0;
    while cur.order() != h.order() {
        let before = cur.order().clone();
        // Odd layer.
        let q = quotient(h, &cur, caps)?;
        let (odd, _) = core_auto(&q.image, 2, true, caps, 0)?;
        if !odd.is_trivial() {
            cur = q.lift(&odd)?;
            terms.push(cur.clone());
        }
        // 2-layer.
        if cur.order() != h.order() {
            let q = quotient(h, &cur, caps)?;
            let (two, _) = core_auto(&q.image, 2, false, caps, 0)?;
            if !two.is_trivial() {
                cur = q.lift(&two)?;
                terms.push(cur.clone());
                l2 += 1;
            }
        }
        if cur.order() == &before {
            return Err(Error::Internal(
                "2,2'-series stalled below the whole group".into(),
            ));
        }
    }
    Ok(TwoSeries { terms, l2 })
}

fn is_abelian(g: &Group) -> bool {
    let gens = g.generators();
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutator(b).is_identity()))
}

/// Deterministic ordering key for subgroup lists.
fn group_sort_key(g: &Group) -> (BigUint, Vec<Vec<u32>>) {
    let mut gens: Vec<Vec<u32>> = g.generators().iter().map(|p| p.images0().to_vec()).collect();
    gens.sort();
    (g.order().clone(), gens)
}

/// Minimal normal subgroups. Exact mode takes the inclusion-minimal members
/// of the normal closures of all class representatives; Monte-Carlo samples
/// representatives and may miss subgroups (flagged).
pub fn minimal_normal_subgroups(
    g: &Group,
    mode: Mode,
    caps: &Caps,
) -> Result<(Vec<Group>, ModeFlag)> {
    let (seeds, flag) = match mode {
        Mode::Exact => (
            conjugacy_class_reps(g, caps)?,
            ModeFlag::Exact,
        ),
        Mode::MonteCarlo { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rounds = caps.mc_round * caps.mc_stagnant_rounds;
            let mut xs: Vec<Permutation> =
                (0..rounds).map(|_| g.random_element(&mut rng)).collect();
            // Include p-parts of samples: elements of a single component
            // are rare, but prime parts of products often land inside one.
            let extra: Vec<Permutation> = xs
                .iter()
                .flat_map(|x| {
                    let o = x.order().to_u64().unwrap_or(0);
                    prime_divisors(o)
                        .into_iter()
                        .map(move |p| x.pow(o / largest_p_power(o, p)))
                })
                .collect();
            xs.extend(extra);
            (xs, ModeFlag::MonteCarlo)
        }
    };
    let mut closures: Vec<Group> = Vec::new();
    for s in seeds.into_iter().filter(|s| !s.is_identity()) {
        let n = g.normal_closure(std::slice::from_ref(&s))?;
        if !closures.iter().any(|m| m.equals(&n).unwrap_or(false)) {
            closures.push(n);
        }
    }
    let mut minimal: Vec<Group> = Vec::new();
    for n in &closures {
        let dominated = closures
            .iter()
            .any(|m| m.order() < n.order() && n.contains_group(m).unwrap_or(false));
        if !dominated {
            minimal.push(n.clone());
        }
    }
    minimal.sort_by_key(group_sort_key);
    Ok((minimal, flag))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn largest_p_power(n: u64, p: u64) -> u64 {
    let mut q = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

#[derive(Debug)]
pub struct SocleDecomposition {
    pub socle: Group,
    pub components: Vec<Group>,
    pub component_ids: Vec<SimpleId>,
    /// Exact decomposition (vs possibly-incomplete Monte-Carlo discovery).
    pub complete: bool,
}

/// Simplicity by exhaustive class closures: no nontrivial proper normal
/// closure of any class representative.
pub fn is_simple_nonabelian(g: &Group, caps: &Caps) -> Result<bool> {
    if is_abelian(g) || g.is_trivial() {
        return Ok(false);
    }
    let reps = conjugacy_class_reps(g, caps)?;
    for r in reps.into_iter().filter(|r| !r.is_identity()) {
        let n = g.normal_closure(std::slice::from_ref(&r))?;
        if n.order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Split a nonabelian minimal normal subgroup into simple components.
/// Strategy: (1) M simple itself; (2) disjoint-support split — per-orbit
/// pointwise stabilizers whose orders multiply to |M|; (3) minimal normal
/// subgroups of M by exhaustive closures.
fn split_components(m: &Group, caps: &Caps) -> Result<Vec<Group>> {
    if m.order_u64().map(|o| o <= caps.exact_order) == Some(true)
        && is_simple_nonabelian(m, caps)?
    {
        return Ok(vec![m.clone()]);
    }
    // Disjoint-support decomposition.
    let orbits: Vec<Vec<u32>> = m
        .orbits()
        .into_iter()
        .filter(|o| o.len() > 1)
        .collect();
    if orbits.len() > 1 {
        let all_moved: Vec<u32> = orbits.iter().flatten().copied().collect();
        let mut parts = Vec::new();
        let mut product = BigUint::one();
        for orbit in &orbits {
            let others: Vec<u32> = all_moved
                .iter()
                .copied()
                .filter(|p| !orbit.contains(p))
                .collect();
            let c = m.pointwise_stabilizer(&others);
            product *= c.order();
            parts.push(c);
        }
        if &product == m.order() {
            let mut components = Vec::new();
            for c in parts {
                if c.is_trivial() {
                    continue;
                }
                components.extend(split_components(&c, caps)?);
            }
            components.sort_by_key(group_sort_key);
            return Ok(components);
        }
    }
    // Exhaustive fallback.
    let (mins, _) = minimal_normal_subgroups(m, Mode::Exact, caps)?;
    let mut components = Vec::new();
    let mut product = BigUint::one();
    for c in mins {
        if !is_simple_nonabelian(&c, caps)? {
            return Err(Error::Internal(
                "component of a minimal normal subgroup failed the simplicity test".into(),
            ));
        }
        product *= c.order();
        components.push(c);
    }
    if &product != m.order() {
        return Err(Error::Internal(
            "component orders do not multiply to the socle factor order".into(),
        ));
    }
    Ok(components)
}

/// The nonabelian socle S(G) with its components.
pub fn socle_nonabelian(g: &Group, mode: Mode, caps: &Caps) -> Result<SocleDecomposition> {
    let (mins, flag) = minimal_normal_subgroups(g, mode, caps)?;
    let mut components = Vec::new();
    let mut gens = Vec::new();
    for m in mins.iter().filter(|m| !is_abelian(m)) {
        gens.extend(m.generators().iter().cloned());
        components.extend(split_components(m, caps)?);
    }
    let socle = Group::new(g.degree(), gens)?;
    // Internal-direct-product check: orders multiply.
    let product: BigUint = components.iter().map(|c| c.order()).product();
    if &product != socle.order() {
        return Err(Error::Internal(
            "socle is not the direct product of the discovered components".into(),
        ));
    }
    let component_ids = components
        .iter()
        .map(|c| identify_simple_by_order(c.order()))
        .collect();
    Ok(SocleDecomposition {
        socle,
        components,
        component_ids,
        complete: flag == ModeFlag::Exact,
    })
}

/// Frattini subgroup by maximal-subgroup intersection; capped.
pub fn frattini(g: &Group, caps: &Caps) -> Result<Group> {
    let cap = caps.subgroup_lattice;
    let maxes = subgroups::maximal_subgroup_classes(g, cap)?;
    let elems = subgroups::sorted_elements(g, cap)?;
    let mut phi: Vec<Permutation> = elems;
    for class in &maxes {
        for conj in subgroups::conjugates(g, &class.rep, cap)? {
            phi.retain(|e| conj.contains(e).unwrap_or(false));
        }
    }
    Group::new(g.degree(), phi)
}

/// L₂(G): the maximum 2-length over all solvable subgroups, by exhaustive
/// enumeration of solvable subgroups up to conjugacy (conjugates have equal
/// 2-length).
pub fn max_two_length_over_solvable(g: &Group, caps: &Caps) -> Result<usize> {
    let classes = subgroups::subgroup_classes(g, caps.subgroup_lattice, true)?;
    let mut best = 0;
    for c in &classes {
        let l2 = two_length(&c.rep, caps)?.l2;
        best = best.max(l2);
    }
    if g.is_solvable() {
        best = best.max(two_length(g, caps)?.l2);
    }
    Ok(best)
}

/// Expose the auto-tiered cores for callers that need the mode flag.
pub fn p_core_auto(g: &Group, p: u64, caps: &Caps, seed: u64) -> Result<(Group, ModeFlag)> {
    core_auto(g, p, false, caps, seed)
}

pub fn p_prime_core_auto(
    g: &Group,
    p: u64,
    caps: &Caps,
    seed: u64,
) -> Result<(Group, ModeFlag)> {
    core_auto(g, p, true, caps, seed)
}
