//! Builders for the extremal examples: alternating/symmetric groups, the
//! iterated A₅ wreath towers W_n on 5ⁿ points, matrix groups over tiny
//! fields acting on nonzero vectors, subdirect products, and the solvable
//! l₂-witness D₁₀ wr D₁₀ wr ⋯.

use crate::class_l::identify_simple_by_order;
use crate::error::{Error, Result};
use crate::gf::{self, Gf, Mat};
use crate::group::Group;
use crate::perm::Permutation;
use crate::rs::{CertKind, CertTerm, Evidence, RSCertificate};
use crate::structure::{Caps, ModeFlag};
use num_bigint::BigUint;

/// A constructed group together with its builder-side claims.
#[derive(Debug)]
pub struct BuiltGroup {
    pub group: Group,
    pub claimed_certificate: Option<RSCertificate>,
    pub claimed_lambda: Option<usize>,
    pub provenance: String,
}

fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &cycles).unwrap()
}

/// Symmetric group on n points (trivial for n ≤ 1).
pub fn sym(n: usize) -> Group {
    if n <= 1 {
        return Group::trivial(n.max(1));
    }
    let mut gens = vec![cyc(n, &[&[1, 2]])];
    if n > 2 {
        let long: Vec<usize> = (1..=n).collect();
        gens.push(cyc(n, &[&long]));
    }
    Group::new(n, gens).unwrap()
}

/// Alternating group on n points (trivial for n ≤ 2).
pub fn alt(n: usize) -> Group {
    if n <= 2 {
        return Group::trivial(n.max(1));
    }
    let mut gens = vec![cyc(n, &[&[1, 2, 3]])];
    if n > 3 {
        if n % 2 == 1 {
            let long: Vec<usize> = (1..=n).collect();
            gens.push(cyc(n, &[&long]));
        } else {
            let long: Vec<usize> = (2..=n).collect();
            gens.push(cyc(n, &[&long]));
        }
    }
    Group::new(n, gens).unwrap()
}

pub const MAX_TOWER_HEIGHT: usize = 5;

fn a5_gens(degree: usize) -> Vec<Permutation> {
    vec![
        cyc(degree, &[&[1, 2, 3, 4, 5]]),
        cyc(degree, &[&[1, 2, 3]]),
    ]
}

/// Rigid block permutation: blocks of size `b` permuted by `t` (degree·b
/// total points).
pub(crate) fn rigid(t: &Permutation, b: usize) -> Permutation {
    let k = t.degree();
    let mut images = vec![0u32; k * b];
    for block in 0..k {
        let target = t.apply(block as u32) as usize;
        for j in 0..b {
            images[block * b + j] = (target * b + j) as u32;
        }
    }
    Permutation::from_images0(images).unwrap()
}

/// Generators of layer j (1-based, j = n is the top) of the tower on 5ⁿ
/// points: 5^{n-j} rigid A₅ copies, copy c permuting the five size-5^{j-1}
/// sub-blocks of [c·5^j, (c+1)·5^j).
fn tower_layer_gens(n: usize, j: usize) -> Vec<Permutation> {
    let degree = 5usize.pow(n as u32);
    let sub = 5usize.pow((j - 1) as u32);
    let copies = 5usize.pow((n - j) as u32);
    let mut gens = Vec::new();
    for c in 0..copies {
        for a in a5_gens(5) {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for s in 0..5 {
                let target = a.apply(s as u32) as usize;
                for t in 0..sub {
                    images[c * 5 * sub + s * sub + t] = (c * 5 * sub + target * sub + t) as u32;
                }
            }
            gens.push(Permutation::from_images0(images).unwrap());
        }
    }
    gens
}

/// The n-fold wreath tower W_n = A₅ wr ⋯ wr A₅ on exactly 5ⁿ points, with a
/// claimed certificate: trivial solvable layers and semisimple layers whose
/// components are all A₅ (layer i contributes 5^{n-i} of them), λ = n.
///
/// The group itself uses an economical generating set — the first bottom
/// copy's generators plus the layers above it — since the upper layers
/// conjugate the first copy onto all others.
pub fn wreath_tower_a5(n: usize, caps: &Caps) -> Result<BuiltGroup> {
    if n < 1 {
        return Err(Error::BadInput("tower height must be at least 1".into()));
    }
    if n > MAX_TOWER_HEIGHT {
        return Err(Error::CapExceeded {
            what: "tower height",
            needed: n.to_string(),
            cap: MAX_TOWER_HEIGHT.to_string(),
        });
    }
    let degree = 5usize.pow(n as u32);
    if degree > caps.degree {
        return Err(Error::CapExceeded {
            what: "construction degree",
            needed: degree.to_string(),
            cap: caps.degree.to_string(),
        });
    }
    // Economical generators: the full layer j = n..1 restricted to the first
    // copy of each layer (copy index 0), i.e. one A₅ per level.
    let mut gens = Vec::new();
    for j in 1..=n {
        let sub = 5usize.pow((j - 1) as u32);
        for a in a5_gens(5) {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for s in 0..5 {
                let target = a.apply(s as u32) as usize;
                for t in 0..sub {
                    images[s * sub + t] = (target * sub + t) as u32;
                }
            }
            gens.push(Permutation::from_images0(images).unwrap());
        }
    }
    let group = Group::new(degree, gens)?;
    // Certificate: S_i = ⟨layers 1..i⟩ (the full per-copy generators),
    // R_{i+1} = S_i, S_n = G.
    let a5_id = identify_simple_by_order(&BigUint::from(60u32));
    let mut terms = Vec::new();
    let mut acc: Vec<Permutation> = Vec::new();
    for i in 1..=n {
        let r_group = if i == 1 {
            Group::trivial(degree)
        } else {
            Group::new(degree, acc.clone())?
        };
        terms.push(CertTerm {
            kind: CertKind::R,
            group: r_group,
            mode: ModeFlag::Exact,
            evidence: Evidence::Solvable { derived_length: 0 },
        });
        acc.extend(tower_layer_gens(n, i));
        let copies = 5usize.pow((n - i) as u32);
        terms.push(CertTerm {
            kind: CertKind::S,
            group: Group::new(degree, acc.clone())?,
            mode: ModeFlag::Exact,
            evidence: Evidence::Semisimple {
                components: vec![a5_id.clone(); copies],
                minimal_normal_count: Some(1),
            },
        });
    }
    Ok(BuiltGroup {
        group,
        claimed_certificate: Some(RSCertificate {
            terms,
            lambda: n,
            exact: true,
        }),
        claimed_lambda: Some(n),
        provenance: format!("W:{n}"),
    })
}

/// Index of a nonzero vector of GF(q)^m: Σ vᵢ qⁱ − 1.
fn vector_index(q: u64, v: &[u64]) -> u32 {
    let mut idx = 0u64;
    for &c in v.iter().rev() {
        idx = idx * q + c;
    }
    (idx - 1) as u32
}

fn index_vector(q: u64, m: usize, idx: u32) -> Vec<u64> {
    let mut rest = idx as u64 + 1;
    let mut v = Vec::with_capacity(m);
    for _ in 0..m {
        v.push(rest % q);
        rest /= q;
    }
    v
}

/// Faithful permutation action of a matrix group on the nonzero vectors of
/// GF(q)^m.
pub fn matrix_group_perm(q: u64, m: usize, gens: &[Mat], caps: &Caps) -> Result<Group> {
    let f = Gf::new(q)?;
    if m == 0 {
        return Err(Error::BadInput("dimension must be positive".into()));
    }
    let degree = q.pow(m as u32) - 1;
    if degree > caps.degree as u64 {
        return Err(Error::CapExceeded {
            what: "vector action degree",
            needed: degree.to_string(),
            cap: caps.degree.to_string(),
        });
    }
    let mut perms = Vec::new();
    for g in gens {
        if g.len() != m * m || g.iter().any(|&e| e >= q) {
            return Err(Error::BadInput("matrix of wrong shape or entries".into()));
        }
        if !gf::mat_invertible(&f, m, g) {
            return Err(Error::SingularMatrix(q));
        }
        let images: Vec<u32> = (0..degree as u32)
            .map(|i| vector_index(q, &gf::mat_vec(&f, m, g, &index_vector(q, m, i))))
            .collect();
        perms.push(Permutation::from_images0(images)?);
    }
    Group::new(degree as usize, perms)
}

/// GL(d, q) in its action on the q^d − 1 nonzero vectors.
pub fn gl_perm(q: u64, d: usize, caps: &Caps) -> Result<Group> {
    let f = Gf::new(q)?;
    matrix_group_perm(q, d, &gf::gl_generators(&f, d), caps)
}

/// GL(d, q) wr W_n on 5ⁿ·(q^d − 1) points: disjoint vector blocks, one per
/// tower point, permuted rigidly by the tower. A faithful abstract copy of
/// the linear wreath product, not a linear action. Claimed λ = n + λ(GL(d,q))
/// = n + 1 for q ≥ 4 or d ≥ 2 with nonsolvable GL; the claim is left to the
/// verifier to confirm.
pub fn linear_lower_bound_group(q: u64, d: usize, n: usize, caps: &Caps) -> Result<BuiltGroup> {
    let base = gl_perm(q, d, caps)?;
    let b = base.degree();
    if n == 0 {
        return Ok(BuiltGroup {
            group: base,
            claimed_certificate: None,
            claimed_lambda: None,
            provenance: format!("GLwr:q={q},d={d},n=0"),
        });
    }
    let tower = wreath_tower_a5(n, caps)?;
    let blocks = tower.group.degree();
    let degree = b * blocks;
    if degree > caps.degree {
        return Err(Error::CapExceeded {
            what: "construction degree",
            needed: degree.to_string(),
            cap: caps.degree.to_string(),
        });
    }
    // Economical generators: base copy on the first block plus the rigid
    // tower (transitive on blocks, so it conjugates the copy everywhere).
    let mut gens: Vec<Permutation> = base
        .generators()
        .iter()
        .map(|g| g.extend_degree(degree))
        .collect();
    for t in tower.group.generators() {
        gens.push(rigid(t, b));
    }
    Ok(BuiltGroup {
        group: Group::new(degree, gens)?,
        claimed_certificate: None,
        claimed_lambda: None,
        provenance: format!("GLwr:q={q},d={d},n={n}"),
    })
}

/// A subdirect product given by generator tuples (one element per factor).
#[derive(Debug)]
pub struct SubdirectProduct {
    pub group: Group,
    /// Kernel of the projection onto each factor.
    pub kernels: Vec<Group>,
}

/// Build the subgroup of the direct product generated by the given tuples
/// and check that every projection is onto its factor.
pub fn subdirect_product(
    factors: &[Group],
    tuples: &[Vec<Permutation>],
) -> Result<SubdirectProduct> {
    if factors.is_empty() {
        return Err(Error::BadIdentification("no factors".into()));
    }
    let offsets: Vec<usize> = factors
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.degree();
            Some(o)
        })
        .collect();
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    let mut gens = Vec::new();
    for (t_idx, tuple) in tuples.iter().enumerate() {
        if tuple.len() != factors.len() {
            return Err(Error::BadIdentification(format!(
                "tuple {t_idx} has {} entries for {} factors",
                tuple.len(),
                factors.len()
            )));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, (f, elem)) in factors.iter().zip(tuple).enumerate() {
            if !f.contains(elem)? {
                return Err(Error::BadIdentification(format!(
                    "tuple {t_idx}, entry {i} is not in its factor"
                )));
            }
            for p in 0..f.degree() as u32 {
                images[offsets[i] + p as usize] = offsets[i] as u32 + elem.apply(p);
            }
        }
        gens.push(Permutation::from_images0(images)?);
    }
    let group = Group::new(degree, gens)?;
    let mut kernels = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let block: Vec<u32> =
            (offsets[i] as u32..(offsets[i] + f.degree()) as u32).collect();
        // Projection onto factor i surjective ⇔ |G| = |kernel|·|factor|.
        let kernel = group.pointwise_stabilizer(&block);
        if group.order() != &(kernel.order() * f.order()) {
            return Err(Error::BadIdentification(format!(
                "projection onto factor {i} is not surjective"
            )));
        }
        kernels.push(kernel);
    }
    Ok(SubdirectProduct { group, kernels })
}

/// D₁₀ on 5 points (inside A₅).
pub fn d10() -> Group {
    Group::new(
        5,
        vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[2, 5], &[3, 4]])],
    )
    .unwrap()
}

/// The solvable witness H_n = D₁₀ wr H_{n−1} inside W_n: a D₁₀ in each
/// bottom A₅ copy, the previous witness permuting the blocks. H₀ is trivial.
pub fn solvable_l2_witness(n: usize, caps: &Caps) -> Result<BuiltGroup> {
    if n > MAX_TOWER_HEIGHT {
        return Err(Error::CapExceeded {
            what: "witness height",
            needed: n.to_string(),
            cap: MAX_TOWER_HEIGHT.to_string(),
        });
    }
    let degree = 5usize.pow(n as u32);
    if degree > caps.degree {
        return Err(Error::CapExceeded {
            what: "construction degree",
            needed: degree.to_string(),
            cap: caps.degree.to_string(),
        });
    }
    let mut group = Group::trivial(1);
    for _ in 0..n {
        group = d10().wreath_imprimitive(&group);
    }
    Ok(BuiltGroup {
        group,
        claimed_certificate: None,
        claimed_lambda: Some(0),
        provenance: format!("witness:{n}"),
    })
}

/// Build from a recipe string: "W:n", "alt:n", "sym:n", "witness:n",
/// "GLwr:q=Q,d=D,n=N".
pub fn build_recipe(recipe: &str, caps: &Caps) -> Result<BuiltGroup> {
    let (head, rest) = recipe
        .split_once(':')
        .ok_or_else(|| Error::UnknownRecipe(recipe.to_string()))?;
    let parse_n = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::UnknownRecipe(recipe.to_string()))
    };
    match head {
        "W" => wreath_tower_a5(parse_n(rest)?, caps),
        "alt" => {
            let n = parse_n(rest)?;
            Ok(BuiltGroup {
                group: alt(n),
                claimed_certificate: None,
                claimed_lambda: None,
                provenance: recipe.to_string(),
            })
        }
        "sym" => {
            let n = parse_n(rest)?;
            Ok(BuiltGroup {
                group: sym(n),
                claimed_certificate: None,
                claimed_lambda: None,
                provenance: recipe.to_string(),
            })
        }
        "witness" => solvable_l2_witness(parse_n(rest)?, caps),
        "GLwr" => {
            let mut q = None;
            let mut d = None;
            let mut n = None;
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::UnknownRecipe(recipe.to_string()))?;
                match k.trim() {
                    "q" => q = Some(parse_n(v)? as u64),
                    "d" => d = Some(parse_n(v)?),
                    "n" => n = Some(parse_n(v)?),
                    _ => return Err(Error::UnknownRecipe(recipe.to_string())),
                }
            }
            match (q, d, n) {
                (Some(q), Some(d), Some(n)) => linear_lower_bound_group(q, d, n, caps),
                _ => Err(Error::UnknownRecipe(recipe.to_string())),
            }
        }
        _ => Err(Error::UnknownRecipe(recipe.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Mode;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn alt_and_sym_orders() {
        assert_eq!(alt(5).order_u64(), Some(60));
        assert_eq!(sym(3).order_u64(), Some(6));
        assert_eq!(alt(2).order_u64(), Some(1));
        assert_eq!(alt(7).order_u64(), Some(2520));
        assert_eq!(sym(6).order_u64(), Some(720));
        assert_eq!(alt(6).order_u64(), Some(360));
    }

    #[test]
    fn tower_orders_and_degrees() {
        for n in 1..=3usize {
            let t = wreath_tower_a5(n, &caps()).unwrap();
            assert_eq!(t.group.degree(), 5usize.pow(n as u32));
            let copies = (5u32.pow(n as u32) - 1) / 4;
            assert_eq!(
                t.group.order(),
                &BigUint::from(60u32).pow(copies),
                "tower height {n}"
            );
        }
    }

    #[test]
    fn tower_certificate_terms_ascend_to_group() {
        let t = wreath_tower_a5(2, &caps()).unwrap();
        let cert = t.claimed_certificate.unwrap();
        assert_eq!(cert.lambda, 2);
        let orders: Vec<u64> = cert
            .terms
            .iter()
            .map(|c| c.group.order_u64().unwrap())
            .collect();
        // 1, 60^5, 60^5, 60^6.
        assert_eq!(orders, vec![1, 60u64.pow(5), 60u64.pow(5), 60u64.pow(6)]);
        assert!(cert.terms.last().unwrap().group.equals(&t.group).unwrap());
    }

    #[test]
    fn tower_refuses_excess_height() {
        assert!(matches!(
            wreath_tower_a5(6, &caps()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn gl24_and_sl25() {
        let g = gl_perm(4, 2, &caps()).unwrap();
        assert_eq!(g.degree(), 15);
        assert_eq!(g.order_u64(), Some(180));
        // SL(2,5): [[1,1],[0,1]] and [[0,1],[-1,0]].
        let sl = matrix_group_perm(
            5,
            2,
            &[vec![1, 1, 0, 1], vec![0, 1, 4, 0]],
            &caps(),
        )
        .unwrap();
        assert_eq!(sl.degree(), 24);
        assert_eq!(sl.order_u64(), Some(120));
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let g = matrix_group_perm(4, 2, &[gf::mat_identity(2)], &caps()).unwrap();
        assert_eq!(g.degree(), 15);
        assert!(g.is_trivial());
    }

    #[test]
    fn singular_matrix_rejected() {
        assert!(matches!(
            matrix_group_perm(4, 2, &[vec![1, 2, 2, 3]], &caps()),
            Err(Error::SingularMatrix(4))
        ));
    }

    #[test]
    fn glwr_degrees() {
        let g = linear_lower_bound_group(4, 2, 1, &caps()).unwrap();
        assert_eq!(g.group.degree(), 75);
        // |GL(2,4) wr A5| = 180^5 · 60.
        assert_eq!(
            g.group.order(),
            &(BigUint::from(180u32).pow(5) * BigUint::from(60u32))
        );
        let trivial_base = linear_lower_bound_group(2, 1, 1, &caps()).unwrap();
        assert_eq!(trivial_base.group.degree(), 5);
        assert_eq!(trivial_base.group.order_u64(), Some(60));
    }

    #[test]
    fn subdirect_examples() {
        let a5 = alt(5);
        let (a, b) = (a5.generators()[0].clone(), a5.generators()[1].clone());
        // Diagonal of A5 × A5.
        let diag = subdirect_product(
            &[a5.clone(), a5.clone()],
            &[vec![a.clone(), a.clone()], vec![b.clone(), b.clone()]],
        )
        .unwrap();
        assert_eq!(diag.group.order_u64(), Some(60));
        assert!(diag.kernels.iter().all(|k| k.is_trivial()));
        // Full direct product.
        let id = Permutation::identity(5);
        let full = subdirect_product(
            &[a5.clone(), a5.clone()],
            &[
                vec![a.clone(), id.clone()],
                vec![b.clone(), id.clone()],
                vec![id.clone(), a.clone()],
                vec![id.clone(), b.clone()],
            ],
        )
        .unwrap();
        assert_eq!(full.group.order_u64(), Some(3600));
        assert!(full.kernels.iter().all(|k| k.order_u64() == Some(60)));
        // S4 fibered over the sign map: 288 elements.
        let s4 = sym(4);
        let (s, c) = (s4.generators()[0].clone(), s4.generators()[1].clone());
        let three = cyc(4, &[&[1, 2, 3]]);
        let fibered = subdirect_product(
            &[s4.clone(), s4.clone()],
            &[
                vec![s.clone(), s.clone()],
                vec![c.clone(), c.clone()],
                vec![three.clone(), id4()],
                vec![id4(), three.clone()],
            ],
        )
        .unwrap();
        assert_eq!(fibered.group.order_u64(), Some(288));
    }

    fn id4() -> Permutation {
        Permutation::identity(4)
    }

    #[test]
    fn subdirect_rejects_non_surjective() {
        let a5 = alt(5);
        let a = a5.generators()[0].clone();
        let r = subdirect_product(&[a5.clone(), a5.clone()], &[vec![a.clone(), a.clone()]]);
        assert!(matches!(r, Err(Error::BadIdentification(_))));
    }

    #[test]
    fn witness_is_solvable_and_inside_tower() {
        let w1 = solvable_l2_witness(1, &caps()).unwrap();
        assert_eq!(w1.group.order_u64(), Some(10));
        assert!(w1.group.is_solvable());
        let w2 = solvable_l2_witness(2, &caps()).unwrap();
        assert_eq!(w2.group.order_u64(), Some(10u64.pow(5) * 10));
        assert!(w2.group.is_solvable());
        let tower = wreath_tower_a5(2, &caps()).unwrap();
        for g in w2.group.generators() {
            assert!(tower.group.contains(g).unwrap());
        }
        let w0 = solvable_l2_witness(0, &caps()).unwrap();
        assert!(w0.group.is_trivial());
    }

    #[test]
    fn tower_lambda_matches_claim() {
        for n in 1..=3usize {
            let t = wreath_tower_a5(n, &caps()).unwrap();
            let l = crate::rs::lambda(&t.group, Mode::Exact, &caps()).unwrap();
            assert_eq!(l.value, n, "tower height {n}");
            assert!(l.exact);
        }
    }

    #[test]
    fn glwr_lambda() {
        let g = linear_lower_bound_group(4, 2, 1, &caps()).unwrap();
        let l = crate::rs::lambda(&g.group, Mode::Exact, &caps()).unwrap();
        assert_eq!(l.value, 2);
        assert!(l.exact);
        let base = linear_lower_bound_group(4, 2, 0, &caps()).unwrap();
        let l0 = crate::rs::lambda(&base.group, Mode::Exact, &caps()).unwrap();
        assert_eq!(l0.value, 1);
    }

    #[test]
    fn recipes_round_trip() {
        assert_eq!(
            build_recipe("W:2", &caps()).unwrap().group.degree(),
            25
        );
        assert_eq!(
            build_recipe("alt:7", &caps()).unwrap().group.order_u64(),
            Some(2520)
        );
        assert_eq!(
            build_recipe("GLwr:q=4,d=2,n=1", &caps())
                .unwrap()
                .group
                .degree(),
            75
        );
        assert_eq!(
            build_recipe("witness:1", &caps()).unwrap().group.order_u64(),
            Some(10)
        );
        assert!(matches!(
            build_recipe("nonsense:3", &caps()),
            Err(Error::UnknownRecipe(_))
        ));
        assert!(matches!(
            build_recipe("W", &caps()),
            Err(Error::UnknownRecipe(_))
        ));
    }

    #[test]
    fn tower_minimal_blocks_recover_partition() {
        let t = wreath_tower_a5(2, &caps()).unwrap();
        let systems = crate::action::minimal_block_systems(&t.group).unwrap();
        assert!(systems
            .iter()
            .any(|p| p.blocks.len() == 5 && p.blocks.iter().all(|b| b.len() == 5)));
    }
}
