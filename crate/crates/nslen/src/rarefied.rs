//! n-rarefied groups: per-level checks of the defining conditions, and the
//! search for an n-rarefied subgroup.
//!
//! A group with λ(G) = n is n-rarefied when, at every RS-level i,
//! (1) S_i/R_i is the unique minimal normal subgroup of G/R_i,
//! (2) its simple components lie in the class 𝓛, and
//! (3) R₁ = Φ(G) and R_{i+1}/S_i = Φ(G/S_i) for i < n.
//! A "strong" verdict additionally requires G = S_n(G); both readings are
//! reported, since the definition admits either.

use crate::class_l::SimpleId;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::rs::{self, CertKind, Evidence, RSCertificate};
use crate::structure::{self, quotient, socle_nonabelian, solvable_radical, Caps, Mode, ModeFlag};
use crate::subgroups;
use serde_json::json;

/// Three-valued verdict: Some(true)/Some(false) when decided, None when the
/// evidence was unavailable within caps.
pub type Verdict = Option<bool>;

#[derive(Debug)]
pub struct RarefiedReport {
    /// λ(G).
    pub n: usize,
    /// Condition (1), level i = 1..n.
    pub cond_unique_min_normal: Vec<Verdict>,
    /// Condition (2), level i = 1..n, with the component identities.
    pub cond_components_in_l: Vec<(Verdict, Vec<SimpleId>)>,
    /// Condition (3): entry 0 is R₁ = Φ(G), entry i (1 ≤ i ≤ n−1) is
    /// R_{i+1}/S_i = Φ(G/S_i).
    pub cond_frattini: Vec<Verdict>,
    pub strict: Verdict,
    pub strong: Verdict,
    pub flag: ModeFlag,
}

fn verdict_all(parts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut unknown = false;
    for v in parts {
        match v {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

fn verdict_json(v: Verdict) -> serde_json::Value {
    match v {
        Some(b) => json!(b),
        None => json!("unknown"),
    }
}

impl RarefiedReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "unique_minimal_normal": self.cond_unique_min_normal.iter().map(|&v| verdict_json(v)).collect::<Vec<_>>(),
            "components_in_L": self.cond_components_in_l.iter().map(|(v, ids)| json!({
                "verdict": verdict_json(*v),
                "components": ids,
            })).collect::<Vec<_>>(),
            "frattini": self.cond_frattini.iter().map(|&v| verdict_json(v)).collect::<Vec<_>>(),
            "strict": verdict_json(self.strict),
            "strong": verdict_json(self.strong),
            "mode": self.flag,
        })
    }

    /// A short reason when the strict verdict is false.
    pub fn failure_reason(&self) -> Option<String> {
        for (i, (v, ids)) in self.cond_components_in_l.iter().enumerate() {
            if *v == Some(false) {
                let bad = ids
                    .iter()
                    .find(|id| !id.in_l)
                    .map(|id| format!("component order {} not in L", id.order))
                    .unwrap_or_else(|| "component not in L".into());
                return Some(format!("level {}: {}", i + 1, bad));
            }
        }
        for (i, &v) in self.cond_unique_min_normal.iter().enumerate() {
            if v == Some(false) {
                return Some(format!("level {}: minimal normal subgroup not unique", i + 1));
            }
        }
        for (i, &v) in self.cond_frattini.iter().enumerate() {
            if v == Some(false) {
                return Some(if i == 0 {
                    "R1 differs from the Frattini subgroup".into()
                } else {
                    format!("level {}: solvable layer differs from the Frattini subgroup", i)
                });
            }
        }
        None
    }
}

fn can_enumerate_lattice(g: &Group, caps: &Caps) -> bool {
    g.order_u64().map(|o| o <= caps.subgroup_lattice) == Some(true)
}

/// Full per-level report for the rarefied conditions.
pub fn check_rarefied(g: &Group, mode: Mode, caps: &Caps) -> Result<RarefiedReport> {
    let cert = rs_series(g, mode, caps)?;
    check_rarefied_with_certificate(g, &cert, caps)
}

fn rs_series(g: &Group, mode: Mode, caps: &Caps) -> Result<RSCertificate> {
    rs::rs_series(g, mode, caps)
}

pub fn check_rarefied_with_certificate(
    g: &Group,
    cert: &RSCertificate,
    caps: &Caps,
) -> Result<RarefiedReport> {
    let n = cert.lambda;
    let flag = if cert.exact {
        ModeFlag::Exact
    } else {
        ModeFlag::MonteCarlo
    };
    let s_terms: Vec<_> = cert
        .terms
        .iter()
        .filter(|t| t.kind == CertKind::S)
        .collect();
    let r_terms: Vec<_> = cert
        .terms
        .iter()
        .filter(|t| t.kind == CertKind::R)
        .collect();
    let mut cond_unique = Vec::new();
    let mut cond_l = Vec::new();
    for t in &s_terms {
        match &t.evidence {
            Evidence::Semisimple {
                components,
                minimal_normal_count,
            } => {
                cond_unique.push(minimal_normal_count.map(|c| c == 1));
                let in_l = if components.is_empty() {
                    None
                } else if cert.exact {
                    Some(components.iter().all(|c| c.in_l))
                } else if components.iter().any(|c| !c.in_l) {
                    // A discovered bad component refutes the condition even
                    // under Monte-Carlo (the sample is a subset).
                    Some(false)
                } else {
                    None
                };
                cond_l.push((in_l, components.clone()));
            }
            Evidence::Solvable { .. } => {
                cond_unique.push(None);
                cond_l.push((None, vec![]));
            }
        }
    }
    // Condition (3), entry 0: R1 = Φ(G).
    let mut cond_frattini = Vec::new();
    let r1 = r_terms
        .first()
        .ok_or_else(|| Error::CertificateInvalid("no R-term".into()))?;
    cond_frattini.push(if r1.group.is_trivial() {
        // Φ ≤ R(G) always, so a trivial radical forces a trivial Frattini.
        Some(true)
    } else if can_enumerate_lattice(g, caps) {
        let phi = structure::frattini(g, caps)?;
        Some(phi.equals(&r1.group)?)
    } else {
        None
    });
    // Entries 1..n-1: R_{i+1}/S_i = Φ(G/S_i).
    for i in 1..n {
        let s_i = &s_terms[i - 1];
        let Some(r_next) = r_terms.get(i) else {
            cond_frattini.push(None);
            continue;
        };
        if r_next.group.order() == s_i.group.order() {
            // Trivial solvable layer: R(G/S_i) = 1 forces Φ(G/S_i) = 1.
            cond_frattini.push(Some(true));
            continue;
        }
        let v = match quotient(g, &s_i.group, caps) {
            Ok(q) if can_enumerate_lattice(&q.image, caps) => {
                let phi = structure::frattini(&q.image, caps)?;
                let r_gens = r_next
                    .group
                    .generators()
                    .iter()
                    .map(|p| q.project(p))
                    .collect::<Result<Vec<_>>>()?;
                let r_image = Group::new(q.image.degree(), r_gens)?;
                Some(phi.equals(&r_image)?)
            }
            _ => None,
        };
        cond_frattini.push(v);
    }
    let strict = verdict_all(
        cond_unique
            .iter()
            .copied()
            .chain(cond_l.iter().map(|(v, _)| *v))
            .chain(cond_frattini.iter().copied()),
    );
    let top_is_g = if n == 0 {
        Some(g.is_trivial())
    } else {
        Some(s_terms[n - 1].group.equals(g)?)
    };
    let strong = verdict_all([strict, top_is_g]);
    Ok(RarefiedReport {
        n,
        cond_unique_min_normal: cond_unique,
        cond_components_in_l: cond_l,
        cond_frattini,
        strict,
        strong,
        flag,
    })
}

/// K extends from X to Y when Y = X·N_Y(K) (requires K ≤ X ⊴ Y).
pub fn extends_test(k: &Group, x: &Group, y: &Group, caps: &Caps) -> Result<bool> {
    if !x.contains_group(k)? || !y.contains_group(x)? || !y.normalizes(x)? {
        return Err(Error::BadInput(
            "extends_test needs K <= X normal in Y".into(),
        ));
    }
    let n_y = subgroups::normalizer(y, k, caps.exact_order)?;
    let meet = subgroups::intersection(x, &n_y, caps.exact_order)?;
    // |X·N| = |X||N|/|X ∩ N|.
    Ok(x.order() * n_y.order() == y.order() * meet.order())
}

/// Search for an n-rarefied subgroup of G, following the structure-descent
/// heuristics: (a) pass to the preimage of a single simple socle factor,
/// (b) point stabilizers, (c) maximal subgroups with the same λ. Guaranteed
/// to terminate; succeeds only within caps.
pub fn find_rarefied_subgroup(
    g: &Group,
    mode: Mode,
    caps: &Caps,
) -> Result<(Group, RarefiedReport)> {
    let n = rs::lambda(g, mode, caps)?.value;
    if n == 0 {
        return Err(Error::BadInput("group is solvable (λ = 0)".into()));
    }
    let mut h = g.clone();
    loop {
        // (a) strict descent to the preimage of one simple socle factor,
        // which preserves λ when λ = 1.
        if n == 1 {
            if let Some(next) = socle_factor_preimage(&h, mode, caps)? {
                if next.order() < h.order() {
                    h = next;
                    continue;
                }
            }
        }
        let report = check_rarefied(&h, mode, caps)?;
        if report.n == n && report.strict == Some(true) {
            return Ok((h, report));
        }
        // (b)/(c): descend to a smaller subgroup with the same λ.
        match descend(&h, n, mode, caps)? {
            Some(next) => h = next,
            None => {
                return Err(Error::SearchExhausted(format!(
                    "no {n}-rarefied subgroup found within caps"
                )))
            }
        }
    }
}

/// Preimage in H of one simple component of the socle of H/R(H), when the
/// structure is computable exactly.
fn socle_factor_preimage(h: &Group, mode: Mode, caps: &Caps) -> Result<Option<Group>> {
    if h.order_u64().map(|o| o <= caps.exact_order) != Some(true) {
        return Ok(None);
    }
    let (r, _) = solvable_radical(h, mode, caps)?;
    let q = quotient(h, &r, caps)?;
    let soc = socle_nonabelian(&q.image, mode, caps)?;
    let Some(first) = soc.components.first() else {
        return Ok(None);
    };
    let pre = q.lift(first)?;
    Ok(Some(pre))
}

/// A proper subgroup of H with the same λ: point stabilizers first, then
/// maximal subgroup classes by descending order.
fn descend(h: &Group, n: usize, mode: Mode, caps: &Caps) -> Result<Option<Group>> {
    let mut candidates: Vec<Group> = Vec::new();
    for orbit in h.orbits() {
        if orbit.len() > 1 {
            candidates.push(h.point_stabilizer(orbit[0]));
        }
    }
    if can_enumerate_lattice(h, caps) {
        let mut maxes = subgroups::maximal_subgroup_classes(h, caps.subgroup_lattice)?;
        maxes.sort_by(|a, b| b.order.cmp(&a.order));
        candidates.extend(maxes.into_iter().map(|c| c.rep));
    }
    for c in candidates {
        if c.order() >= h.order() {
            continue;
        }
        if rs::lambda(&c, mode, caps)?.value == n {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// λ of the quotient and its strict verdict, for Proposition-style checks
/// that G/N stays rarefied with m ≤ n.
pub fn quotient_stays_rarefied(
    g: &Group,
    n_sub: &Group,
    mode: Mode,
    caps: &Caps,
) -> Result<(usize, RarefiedReport)> {
    if !g.contains_group(n_sub)? || !g.normalizes(n_sub)? {
        return Err(Error::BadInput("not a normal subgroup".into()));
    }
    let q = quotient(g, n_sub, caps)?;
    let report = check_rarefied(&q.image, mode, caps)?;
    Ok((report.n, report))
}

/// (λ(G), λ(N), λ(G/N)) for the additivity check λ(G) = λ(N) + λ(G/N).
pub fn lambda_additivity(
    g: &Group,
    n_sub: &Group,
    mode: Mode,
    caps: &Caps,
) -> Result<(usize, usize, usize)> {
    if !g.contains_group(n_sub)? || !g.normalizes(n_sub)? {
        return Err(Error::BadInput("not a normal subgroup".into()));
    }
    let whole = rs::lambda(g, mode, caps)?.value;
    let part = rs::lambda(n_sub, mode, caps)?.value;
    let q = quotient(g, n_sub, caps)?;
    let quot = rs::lambda(&q.image, mode, caps)?.value;
    Ok((whole, part, quot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alt, matrix_group_perm, sym};

    fn caps() -> Caps {
        Caps::default()
    }

    fn sl25() -> Group {
        matrix_group_perm(5, 2, &[vec![1, 1, 0, 1], vec![0, 1, 4, 0]], &caps()).unwrap()
    }

    #[test]
    fn sl25_is_strict_and_strong() {
        let r = check_rarefied(&sl25(), Mode::Exact, &caps()).unwrap();
        assert_eq!(r.n, 1);
        assert_eq!(r.strict, Some(true));
        assert_eq!(r.strong, Some(true));
        assert_eq!(r.cond_frattini, vec![Some(true)]); // R1 = Z2 = Φ
    }

    #[test]
    fn a7_fails_on_component() {
        let r = check_rarefied(&alt(7), Mode::Exact, &caps()).unwrap();
        assert_eq!(r.n, 1);
        assert_eq!(r.strict, Some(false));
        let reason = r.failure_reason().unwrap();
        assert!(reason.contains("2520"), "reason: {reason}");
    }

    #[test]
    fn s5_strict_but_not_strong() {
        let r = check_rarefied(&sym(5), Mode::Exact, &caps()).unwrap();
        assert_eq!(r.n, 1);
        assert_eq!(r.strict, Some(true));
        assert_eq!(r.strong, Some(false));
    }

    #[test]
    fn a5_strict_and_strong() {
        let r = check_rarefied(&alt(5), Mode::Exact, &caps()).unwrap();
        assert_eq!(r.strict, Some(true));
        assert_eq!(r.strong, Some(true));
    }

    #[test]
    fn trivial_group_zero_rarefied() {
        let r = check_rarefied(&Group::trivial(3), Mode::Exact, &caps()).unwrap();
        assert_eq!(r.n, 0);
        assert_eq!(r.strict, Some(true));
    }

    #[test]
    fn nontrivial_solvable_is_not_rarefied() {
        let r = check_rarefied(&sym(4), Mode::Exact, &caps()).unwrap();
        assert_eq!(r.n, 0);
        assert_eq!(r.strict, Some(false)); // R1 = G ≠ Φ(G)
    }

    #[test]
    fn find_in_s5_gives_a5() {
        let (h, r) = find_rarefied_subgroup(&sym(5), Mode::Exact, &caps()).unwrap();
        assert_eq!(h.order_u64(), Some(60));
        assert_eq!(r.strict, Some(true));
    }

    #[test]
    fn find_in_a7_gives_order_360() {
        let (h, r) = find_rarefied_subgroup(&alt(7), Mode::Exact, &caps()).unwrap();
        assert_eq!(h.order_u64(), Some(360));
        assert_eq!(r.strict, Some(true));
    }

    #[test]
    fn find_in_wreath_gives_a5_factor() {
        let c2 = Group::new(2, vec![crate::perm::Permutation::from_cycles(2, &[vec![1, 2]]).unwrap()]).unwrap();
        let g = alt(5).wreath_imprimitive(&c2);
        let (h, r) = find_rarefied_subgroup(&g, Mode::Exact, &caps()).unwrap();
        assert_eq!(h.order_u64(), Some(60));
        assert_eq!(r.strict, Some(true));
    }

    #[test]
    fn extends_a4_from_a5_to_s5() {
        let a5 = alt(5);
        let s5 = sym(5);
        // A4 as a point stabilizer of A5.
        let a4 = a5.point_stabilizer(4);
        assert_eq!(a4.order_u64(), Some(12));
        assert!(extends_test(&a4, &a5, &s5, &caps()).unwrap());
        assert!(extends_test(&a5, &a5, &s5, &caps()).unwrap());
    }

    #[test]
    fn quotient_and_additivity_for_sl25() {
        let g = sl25();
        let caps = caps();
        let (r_center, _) = structure::p_core_auto(&g, 2, &caps, 1).unwrap();
        assert_eq!(r_center.order_u64(), Some(2));
        let (m, rep) = quotient_stays_rarefied(&g, &r_center, Mode::Exact, &caps).unwrap();
        assert_eq!(m, 1);
        assert_eq!(rep.strict, Some(true));
        let (whole, part, quot) = lambda_additivity(&g, &r_center, Mode::Exact, &caps).unwrap();
        assert_eq!(whole, part + quot);
        assert_eq!((whole, part, quot), (1, 0, 1));
    }

    #[test]
    fn report_serializes() {
        let r = check_rarefied(&alt(5), Mode::Exact, &caps()).unwrap();
        let j = r.to_json();
        assert_eq!(j["strict"], json!(true));
        assert_eq!(j["n"], json!(1));
    }
}
