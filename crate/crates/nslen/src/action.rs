//! Actions of a group on derived domains: block systems, block and orbit
//! actions, coset actions, and the homomorphisms they induce.
//!
//! A homomorphism is realized on the disjoint union of the source and image
//! domains. A stabilizer chain whose base starts with all image points splits
//! the group into image and kernel; a chain whose base starts with all source
//! points evaluates the map on arbitrary elements.

use crate::error::{Error, Result};
use crate::group::{Group, StabilizerChain};
use crate::perm::Permutation;
use std::collections::HashMap;
use std::sync::OnceLock;

/// A partition of the domain into blocks, each sorted, ordered by least point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<u32>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Partition {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        Partition { blocks }
    }

    pub fn from_class_map(classes: &HashMap<u32, u32>) -> Partition {
        let mut map: HashMap<u32, Vec<u32>> = HashMap::new();
        for (&p, &c) in classes {
            map.entry(c).or_default().push(p);
        }
        Partition::new(map.into_values().collect())
    }

    pub fn block_of(&self, point: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&point).is_ok())
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            other
                .block_of(b[0])
                .map(|i| b.iter().all(|p| other.blocks[i].binary_search(p).is_ok()))
                .unwrap_or(false)
        })
    }
}

/// Finest G-congruence on the moved points merging `a` and `b` (Atkinson).
fn finest_block_system(group: &Group, moved: &[u32], a: u32, b: u32) -> Partition {
    let degree = group.degree();
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    fn find(parent: &mut Vec<u32>, mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let mut queue = vec![(a, b)];
    parent[b as usize] = a;
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[ry as usize] = rx;
                queue.push((rx, ry));
            }
        }
    }
    let classes: HashMap<u32, u32> = moved
        .iter()
        .map(|&p| (p, find(&mut parent, p)))
        .collect();
    Partition::from_class_map(&classes)
}

/// All minimal nontrivial block systems of a group transitive on its moved
/// points; empty iff the action is primitive.
pub fn minimal_block_systems(group: &Group) -> Result<Vec<Partition>> {
    if !group.is_transitive_on_moved() {
        return Err(Error::NotTransitive);
    }
    let moved = group.moved_points();
    if moved.len() <= 2 {
        return Ok(vec![]);
    }
    let a = moved[0];
    let mut candidates: Vec<Partition> = Vec::new();
    for &b in &moved[1..] {
        let p = finest_block_system(group, &moved, a, b);
        if p.blocks.len() > 1 && p.blocks.len() < moved.len() && !candidates.contains(&p) {
            candidates.push(p);
        }
    }
    // Keep only the systems with no strictly finer candidate.
    let minimal: Vec<Partition> = candidates
        .iter()
        .filter(|p| {
            !candidates
                .iter()
                .any(|q| q != *p && q.refines(p))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// A homomorphism from a permutation group onto an induced action, with
/// exact kernel and element lifting.
pub struct ActionHomomorphism {
    source: Group,
    /// Image of each source generator, on the image domain.
    gen_images: Vec<Permutation>,
    image_degree: usize,
    combined_gens: Vec<Permutation>,
    /// Chain with all image points first: splits off the kernel.
    image_first: OnceLock<StabilizerChain>,
    /// Chain with all source points first: evaluates the map.
    source_first: OnceLock<StabilizerChain>,
    image: OnceLock<Group>,
    kernel: OnceLock<Group>,
}

impl ActionHomomorphism {
    pub fn new(source: Group, gen_images: Vec<Permutation>) -> Result<ActionHomomorphism> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Internal(
                "one image per source generator required".into(),
            ));
        }
        let image_degree = gen_images.first().map(|p| p.degree()).unwrap_or(0);
        for p in &gen_images {
            if p.degree() != image_degree {
                return Err(Error::DegreeMismatch(image_degree, p.degree()));
            }
        }
        let n = source.degree();
        let combined_gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&gen_images)
            .map(|(g, h)| {
                let mut images: Vec<u32> = Vec::with_capacity(n + image_degree);
                images.extend(g.images0().iter().copied());
                images.extend(h.images0().iter().map(|&x| x + n as u32));
                Permutation::from_images0(images).unwrap()
            })
            .collect();
        Ok(ActionHomomorphism {
            source,
            gen_images,
            image_degree,
            combined_gens,
            image_first: OnceLock::new(),
            source_first: OnceLock::new(),
            image: OnceLock::new(),
            kernel: OnceLock::new(),
        })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn gen_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    fn image_first_chain(&self) -> &StabilizerChain {
        self.image_first.get_or_init(|| {
            let n = self.source.degree() as u32;
            let prefix: Vec<u32> = (n..n + self.image_degree as u32).collect();
            StabilizerChain::build(
                self.source.degree() + self.image_degree,
                &self.combined_gens,
                &prefix,
            )
        })
    }

    fn source_first_chain(&self) -> &StabilizerChain {
        self.source_first.get_or_init(|| {
            let prefix: Vec<u32> = (0..self.source.degree() as u32).collect();
            StabilizerChain::build(
                self.source.degree() + self.image_degree,
                &self.combined_gens,
                &prefix,
            )
        })
    }

    pub fn image(&self) -> &Group {
        self.image.get_or_init(|| {
            Group::new(self.image_degree, self.gen_images.clone()).unwrap()
        })
    }

    /// The exact kernel, as a subgroup of the source.
    pub fn kernel(&self) -> &Group {
        self.kernel.get_or_init(|| {
            let chain = self.image_first_chain();
            let n = self.source.degree();
            let split = self.image_degree;
            let gens: Vec<Permutation> = if split < chain.levels.len() {
                chain.levels[split]
                    .gens
                    .iter()
                    .map(|g| {
                        Permutation::from_images0(g.images0()[..n].to_vec()).unwrap()
                    })
                    .collect()
            } else {
                vec![]
            };
            Group::new(n, gens).unwrap()
        })
    }

    /// Evaluate the homomorphism on an arbitrary source element.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        if g.degree() != self.source.degree() {
            return Err(Error::DegreeMismatch(self.source.degree(), g.degree()));
        }
        let chain = self.source_first_chain();
        let n = self.source.degree();
        let mut r_src = g.clone();
        let mut acc = Permutation::identity(self.image_degree);
        for level in &chain.levels {
            if (level.base as usize) >= n {
                break;
            }
            let t = r_src.apply(level.base);
            let Some(u_inv) = level.transversal_inv_for(t) else {
                return Err(Error::NotAMember);
            };
            let src_part =
                Permutation::from_images0(u_inv.images0()[..n].to_vec()).unwrap();
            let img_part = Permutation::from_images0(
                u_inv.images0()[n..]
                    .iter()
                    .map(|&x| x - n as u32)
                    .collect(),
            )
            .unwrap();
            r_src = r_src.compose_unchecked(&src_part);
            acc = acc.compose_unchecked(&img_part);
        }
        if !r_src.is_identity() {
            return Err(Error::NotAMember);
        }
        Ok(acc.inverse())
    }

    /// Lift an image element to some source preimage.
    pub fn lift(&self, h: &Permutation) -> Result<Permutation> {
        if h.degree() != self.image_degree {
            return Err(Error::DegreeMismatch(self.image_degree, h.degree()));
        }
        let chain = self.image_first_chain();
        let n = self.source.degree();
        let mut r_img = h.clone();
        let mut acc_rev: Vec<Permutation> = Vec::new();
        for (i, level) in chain.levels.iter().enumerate() {
            if i >= self.image_degree {
                break;
            }
            let base_img = level.base - n as u32;
            let t_img = r_img.apply(base_img);
            let t_comb = t_img + n as u32;
            let (Some(u), Some(u_inv)) = (
                level.transversal_for(t_comb),
                level.transversal_inv_for(t_comb),
            ) else {
                return Err(Error::NotAMember);
            };
            let u_inv_img = Permutation::from_images0(
                u_inv.images0()[n..]
                    .iter()
                    .map(|&x| x - n as u32)
                    .collect(),
            )
            .unwrap();
            r_img = r_img.compose_unchecked(&u_inv_img);
            acc_rev.push(u.clone());
        }
        if !r_img.is_identity() {
            return Err(Error::NotAMember);
        }
        // h = (u_{k-1}^img)⁻¹-stripped to identity, so u_{k-1}·…·u_0 maps onto h.
        let mut lift = Permutation::identity(n + self.image_degree);
        for u in acc_rev.iter().rev() {
            lift = lift.compose_unchecked(u);
        }
        Ok(Permutation::from_images0(lift.images0()[..n].to_vec()).unwrap())
    }

    /// Preimage of a subgroup of the image.
    pub fn preimage(&self, sub: &Group) -> Result<Group> {
        let mut gens = self.kernel().generators().to_vec();
        for h in sub.generators() {
            gens.push(self.lift(h)?);
        }
        Group::new(self.source.degree(), gens)
    }

    /// |source| = |image| · |kernel| holds by the chain split.
    pub fn order_identity_holds(&self) -> bool {
        self.source.order()
            == &(self.image().order() * self.kernel().order())
    }
}

/// Action on the blocks of an invariant partition.
pub fn on_blocks(group: &Group, partition: &Partition) -> Result<ActionHomomorphism> {
    let k = partition.blocks.len();
    // Points not in any block are treated as singleton blocks.
    let mut block_index = vec![usize::MAX; group.degree()];
    for (i, b) in partition.blocks.iter().enumerate() {
        for &p in b {
            if (p as usize) >= group.degree() {
                return Err(Error::PointOutOfRange {
                    point: p as usize,
                    degree: group.degree(),
                });
            }
            block_index[p as usize] = i;
        }
    }
    if block_index.iter().any(|&i| i == usize::MAX) {
        return Err(Error::BadInput(
            "partition must cover the whole domain".into(),
        ));
    }
    let mut gen_images = Vec::new();
    for g in group.generators() {
        let mut images = vec![u32::MAX; k];
        for (i, b) in partition.blocks.iter().enumerate() {
            let target = block_index[g.apply(b[0]) as usize];
            // Every point of the block must land in the same target block.
            for &p in b {
                if block_index[g.apply(p) as usize] != target {
                    return Err(Error::ActionNotInvariant);
                }
            }
            images[i] = target as u32;
        }
        gen_images.push(
            Permutation::from_images0(images).map_err(|_| Error::ActionNotInvariant)?,
        );
    }
    ActionHomomorphism::new(group.clone(), gen_images)
}

/// Restriction to a single orbit (or any invariant point set).
pub fn on_point_set(group: &Group, points: &[u32]) -> Result<ActionHomomorphism> {
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    let index: HashMap<u32, u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let mut gen_images = Vec::new();
    for g in group.generators() {
        let mut images = vec![0u32; sorted.len()];
        for (i, &p) in sorted.iter().enumerate() {
            let q = g.apply(p);
            let Some(&j) = index.get(&q) else {
                return Err(Error::ActionNotInvariant);
            };
            images[i] = j;
        }
        gen_images.push(Permutation::from_images0(images).unwrap());
    }
    ActionHomomorphism::new(group.clone(), gen_images)
}

pub fn on_orbit(group: &Group, point: u32) -> Result<ActionHomomorphism> {
    let orbit = group.orbit(point)?;
    on_point_set(group, &orbit)
}

/// Action on the right cosets of a subgroup, by right multiplication.
/// The cosets are enumerated via canonical representatives; errors if the
/// index exceeds `index_cap`.
pub fn on_cosets(group: &Group, sub: &Group, index_cap: u64) -> Result<ActionHomomorphism> {
    if sub.degree() != group.degree() {
        return Err(Error::DegreeMismatch(group.degree(), sub.degree()));
    }
    let canon = |x: &Permutation| canonical_coset_rep(sub, x);
    let id_rep = canon(&Permutation::identity(group.degree()));
    let mut reps: Vec<Permutation> = vec![id_rep.clone()];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(id_rep, 0);
    let mut gen_maps: Vec<Vec<u32>> = vec![Vec::new(); group.generators().len()];
    let mut i = 0usize;
    while i < reps.len() {
        let r = reps[i].clone();
        for (gi, g) in group.generators().iter().enumerate() {
            let c = canon(&r.compose_unchecked(g));
            let next = match index.get(&c) {
                Some(&j) => j,
                None => {
                    let j = reps.len() as u32;
                    if reps.len() as u64 >= index_cap {
                        return Err(Error::CapExceeded {
                            what: "coset action index",
                            needed: format!("> {index_cap}"),
                            cap: index_cap.to_string(),
                        });
                    }
                    reps.push(c.clone());
                    index.insert(c, j);
                    j
                }
            };
            gen_maps[gi].push(next);
        }
        i += 1;
    }
    let k = reps.len();
    let mut gen_images = Vec::new();
    for m in gen_maps {
        debug_assert_eq!(m.len(), k);
        gen_images.push(Permutation::from_images0(m).map_err(|_| {
            Error::Internal("coset action image is not a permutation".into())
        })?);
    }
    ActionHomomorphism::new(group.clone(), gen_images)
}

/// Canonical representative of the right coset `sub · x`: greedily minimize
/// the images of the subgroup's base points. Unique per coset because the
/// minimizing subgroup element is pinned level by level.
fn canonical_coset_rep(sub: &Group, x: &Permutation) -> Permutation {
    let chain = sub.chain();
    let mut cur = x.clone();
    for level in &chain.levels {
        let mut best: Option<(u32, u32)> = None;
        for p in level.orbit_points() {
            let img = cur.apply(p);
            if best.map(|(m, _)| img < m).unwrap_or(true) {
                best = Some((img, p));
            }
        }
        if let Some((_, p)) = best {
            let u = level.transversal_for(p).unwrap();
            cur = u.compose_unchecked(&cur);
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    fn a5() -> Group {
        Group::new(5, vec![cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])]).unwrap()
    }

    fn s4() -> Group {
        Group::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap()
    }

    /// Brute-force primitivity oracle: try every nontrivial candidate block
    /// containing the first moved point.
    fn primitive_by_brute_force(g: &Group) -> bool {
        let moved = g.moved_points();
        let n = moved.len();
        // Enumerate subsets of moved points containing moved[0], size 2..n-1,
        // and test whether any is a block.
        let rest: Vec<u32> = moved[1..].to_vec();
        for mask in 1u32..(1 << rest.len()) {
            let mut block = vec![moved[0]];
            for (i, &p) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    block.push(p);
                }
            }
            if block.len() < 2 || block.len() >= n || n % block.len() != 0 {
                continue;
            }
            block.sort();
            if is_block(g, &block) {
                return false;
            }
        }
        true
    }

    fn is_block(g: &Group, block: &[u32]) -> bool {
        // A block either maps onto itself or to a disjoint set, under every
        // element; checking generators closure-style over block images.
        let mut images = vec![block.to_vec()];
        let mut i = 0;
        while i < images.len() {
            let cur = images[i].clone();
            for gen in g.generators() {
                let mut img: Vec<u32> = cur.iter().map(|&p| gen.apply(p)).collect();
                img.sort();
                let overlap: Vec<_> =
                    img.iter().filter(|p| block.binary_search(p).is_ok()).collect();
                if !overlap.is_empty() && overlap.len() != block.len() {
                    return false;
                }
                if !images.contains(&img) {
                    images.push(img);
                }
            }
            i += 1;
        }
        true
    }

    #[test]
    fn a5_natural_is_primitive() {
        assert!(primitive_by_brute_force(&a5()));
        assert!(minimal_block_systems(&a5()).unwrap().is_empty());
    }

    #[test]
    fn c4_has_the_two_block_system() {
        let c4 = Group::new(4, vec![cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert!(!primitive_by_brute_force(&c4));
        let systems = minimal_block_systems(&c4).unwrap();
        let expected = Partition::new(vec![vec![0, 2], vec![1, 3]]);
        assert!(systems.contains(&expected), "systems: {systems:?}");
    }

    #[test]
    fn wreath_block_system_recovered() {
        let w = a5().wreath_imprimitive(&a5());
        let systems = minimal_block_systems(&w).unwrap();
        let five_blocks = Partition::new(
            (0..5)
                .map(|b| (0..5).map(|j| (b * 5 + j) as u32).collect())
                .collect(),
        );
        assert!(systems.contains(&five_blocks));
    }

    #[test]
    fn coset_action_of_s4_on_point_stabilizer() {
        let g = s4();
        let stab = g.point_stabilizer(0);
        assert_eq!(stab.order_u64(), Some(6));
        let hom = on_cosets(&g, &stab, 1000).unwrap();
        assert_eq!(hom.image().degree(), 4);
        assert_eq!(hom.image().order_u64(), Some(24));
        assert!(hom.kernel().is_trivial());
        assert!(hom.order_identity_holds());
    }

    #[test]
    fn block_action_of_wreath() {
        let w = a5().wreath_imprimitive(&a5());
        let blocks = Partition::new(
            (0..5)
                .map(|b| (0..5).map(|j| (b * 5 + j) as u32).collect())
                .collect(),
        );
        let hom = on_blocks(&w, &blocks).unwrap();
        assert_eq!(hom.image().order_u64(), Some(60));
        // Kernel is the base A5^5; order factorization |G| = |ker|·|im|.
        assert_eq!(
            hom.kernel().order(),
            &num_bigint::BigUint::from(60u32).pow(5)
        );
        assert!(hom.order_identity_holds());
        // Every kernel generator acts trivially on the block domain.
        for g in hom.kernel().generators() {
            for b in 0..5u32 {
                let inside = blocks.block_of(g.apply(blocks.blocks[b as usize][0]));
                assert_eq!(inside, Some(b as usize));
            }
        }
    }

    #[test]
    fn one_block_partition_gives_trivial_image() {
        let g = s4();
        let all = Partition::new(vec![(0..4).collect()]);
        let hom = on_blocks(&g, &all).unwrap();
        assert_eq!(hom.image().order_u64(), Some(1));
        assert_eq!(hom.kernel().order_u64(), Some(24));
    }

    #[test]
    fn apply_and_lift_round_trip() {
        let g = s4();
        let pairs = Partition::new(vec![vec![0, 1, 2, 3]]);
        let _ = pairs;
        let stab = g.point_stabilizer(0);
        let hom = on_cosets(&g, &stab, 100).unwrap();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = g.random_element(&mut rng);
            let img = hom.apply(&x).unwrap();
            let lifted = hom.lift(&img).unwrap();
            // The lift maps to the same image element.
            assert_eq!(hom.apply(&lifted).unwrap(), img);
            assert!(g.contains(&lifted).unwrap());
        }
    }

    #[test]
    fn preimage_orders() {
        let w = a5().wreath_imprimitive(&a5());
        let blocks = Partition::new(
            (0..5)
                .map(|b| (0..5).map(|j| (b * 5 + j) as u32).collect())
                .collect(),
        );
        let hom = on_blocks(&w, &blocks).unwrap();
        // Preimage of a point stabilizer in the top A5.
        let top_stab = hom.image().point_stabilizer(0);
        let pre = hom.preimage(&top_stab).unwrap();
        assert_eq!(
            pre.order(),
            &(num_bigint::BigUint::from(60u32).pow(5) * 12u32)
        );
    }
}
