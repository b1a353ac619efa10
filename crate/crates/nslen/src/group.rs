//! Finite permutation groups backed by a base and strong generating set.
//!
//! The stabilizer chain is built with the deterministic Schreier–Sims
//! procedure; base points are chosen smallest-moved-first so that the same
//! generators always produce the same chain. A forced base prefix is used
//! internally to split off kernels of actions (see `action`).

use crate::error::{Error, Result};
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use std::collections::HashMap;
use std::sync::OnceLock;

pub(crate) struct Level {
    pub base: u32,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Permutation>,
    orbit: HashMap<u32, usize>,
    /// (point, u, u_inv) with base^u = point.
    transversal: Vec<(u32, Permutation, Permutation)>,
    /// done[t] = number of generators already paired with transversal entry t.
    done: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let id = Permutation::identity(degree);
        let mut orbit = HashMap::new();
        orbit.insert(base, 0);
        Level {
            base,
            gens: Vec::new(),
            orbit,
            transversal: vec![(base, id.clone(), id)],
            done: vec![0],
        }
    }

    pub fn orbit_len(&self) -> usize {
        self.transversal.len()
    }

    pub fn orbit_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.transversal.iter().map(|t| t.0)
    }

    pub fn transversal_for(&self, point: u32) -> Option<&Permutation> {
        self.orbit.get(&point).map(|&i| &self.transversal[i].1)
    }

    pub(crate) fn transversal_inv_for(&self, point: u32) -> Option<&Permutation> {
        self.orbit.get(&point).map(|&i| &self.transversal[i].2)
    }
}

pub struct StabilizerChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
    order: BigUint,
}

impl StabilizerChain {
    pub fn build(degree: usize, gens: &[Permutation], forced_prefix: &[u32]) -> StabilizerChain {
        let levels: Vec<Level> = forced_prefix
            .iter()
            .map(|&b| Level::new(degree, b))
            .collect();
        let mut chain = StabilizerChain {
            degree,
            levels,
            order: BigUint::one(),
        };
        for g in gens {
            if !g.is_identity() {
                chain.add_gen(0, g.clone());
            }
        }
        chain.process();
        chain.order = chain
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit_len()))
            .product();
        chain
    }

    fn add_gen(&mut self, level: usize, g: Permutation) {
        if level == self.levels.len() {
            let base = g
                .moved_points()
                .next()
                .expect("identity passed to add_gen");
            self.levels.push(Level::new(self.degree, base));
        }
        self.levels[level].gens.push(g);
    }

    /// Process Schreier pairs, deepest dirty level first, until closed.
    fn process(&mut self) {
        loop {
            let mut dirty = None;
            for i in (0..self.levels.len()).rev() {
                let l = &self.levels[i];
                let closed = l.done.len() == l.transversal.len()
                    && l.done.iter().all(|&d| d == l.gens.len());
                if !closed {
                    dirty = Some(i);
                    break;
                }
            }
            let Some(i) = dirty else { break };
            self.close_level(i);
        }
    }

    /// Run Schreier pairs at level `i`. Returns early after inserting a new
    /// strong generator at a deeper level, so `process` can close the deeper
    /// levels before continuing here.
    fn close_level(&mut self, i: usize) {
        loop {
            let pair = {
                let l = &mut self.levels[i];
                while l.done.len() < l.transversal.len() {
                    l.done.push(0);
                }
                let found = (0..l.transversal.len())
                    .find(|&t| l.done[t] < l.gens.len())
                    .map(|t| (t, l.done[t]));
                if let Some((t, _)) = found {
                    l.done[t] += 1;
                }
                found
            };
            let Some((t_idx, g_idx)) = pair else { return };
            enum Outcome {
                NewPoint(u32, Permutation),
                Schreier(Permutation),
                Nothing,
            }
            let outcome = {
                let l = &self.levels[i];
                let (point, u, _) = &l.transversal[t_idx];
                let g = &l.gens[g_idx];
                let image = g.apply(*point);
                match l.transversal_inv_for(image) {
                    Some(u_img_inv) => {
                        let sg = u.compose_unchecked(g).compose_unchecked(u_img_inv);
                        if sg.is_identity() {
                            Outcome::Nothing
                        } else {
                            Outcome::Schreier(sg)
                        }
                    }
                    None => Outcome::NewPoint(image, u.compose_unchecked(g)),
                }
            };
            match outcome {
                Outcome::NewPoint(point, u_new) => {
                    let l = &mut self.levels[i];
                    let inv = u_new.inverse();
                    l.orbit.insert(point, l.transversal.len());
                    l.transversal.push((point, u_new, inv));
                    l.done.push(0);
                }
                Outcome::Schreier(sg) => {
                    let (residue, stall) = self.strip(i + 1, sg);
                    if !residue.is_identity() {
                        // The residue fixes base points before `stall`; it is a
                        // strong generator for every level from i+1 to stall.
                        for k in (i + 1)..=stall {
                            if k == self.levels.len() {
                                self.add_gen(k, residue.clone());
                            } else {
                                self.levels[k].gens.push(residue.clone());
                            }
                        }
                        return;
                    }
                }
                Outcome::Nothing => {}
            }
        }
    }

    /// Sift from level `from`; returns the residue and the stall level.
    pub(crate) fn strip(&self, from: usize, g: Permutation) -> (Permutation, usize) {
        let mut r = g;
        for j in from..self.levels.len() {
            let l = &self.levels[j];
            let image = r.apply(l.base);
            match l.transversal_inv_for(image) {
                Some(u_inv) => r = r.compose_unchecked(u_inv),
                None => return (r, j),
            }
        }
        let len = self.levels.len();
        (r, len)
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (r, _) = self.strip(0, g.clone());
        r.is_identity()
    }

    /// Uniform random element: a product of uniformly chosen transversal
    /// representatives, one per level.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in self.levels.iter().rev() {
            let t = rng.gen_range(0..l.transversal.len());
            g = g.compose_unchecked(&l.transversal[t].1);
        }
        g
    }

    /// All elements, via the transversal product; caller must check the cap.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.transversal.len());
            for (_, u, _) in &l.transversal {
                for h in &out {
                    next.push(h.compose_unchecked(u));
                }
            }
            out = next;
        }
        out
    }
}

/// A finite permutation group: generators plus a lazily built stabilizer
/// chain giving exact order and membership.
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Group {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Group> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut gens: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() {
            gens.push(Permutation::identity(degree));
        }
        Ok(Group {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(degree, vec![]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> &BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == &BigUint::one()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.chain().contains(g))
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain().base()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Full element list; errors above the cap.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        match self.order_u64() {
            Some(n) if n <= cap => Ok(self.chain().elements()),
            _ => Err(Error::CapExceeded {
                what: "element enumeration",
                needed: self.order().to_string(),
                cap: cap.to_string(),
            }),
        }
    }

    /// Smallest normal subgroup containing `seed`, by conjugation closure.
    pub fn normal_closure(&self, seed: &[Permutation]) -> Result<Group> {
        for s in seed {
            if !self.contains(s)? {
                return Err(Error::NotAMember);
            }
        }
        let mut gens: Vec<Permutation> =
            seed.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut closure = Group::new(self.degree, gens.clone())?;
        loop {
            let mut grew = false;
            let mut new_gens = Vec::new();
            for h in &gens {
                for g in &self.generators {
                    let c = h.conjugate_by(g);
                    if !closure.chain().contains(&c) {
                        new_gens.push(c);
                    }
                }
            }
            for c in new_gens {
                if !closure.chain().contains(&c) {
                    gens.push(c.clone());
                    closure = Group::new(self.degree, gens.clone())?;
                    grew = true;
                }
            }
            if !grew {
                return Ok(closure);
            }
        }
    }

    /// Derived subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Group {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
            .expect("commutators are members")
    }

    /// True iff the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> bool {
        let mut cur = Group::new(self.degree, self.generators.clone()).unwrap();
        loop {
            if cur.is_trivial() {
                return true;
            }
            let next = cur.derived_subgroup();
            if next.order() == cur.order() {
                return false;
            }
            cur = next;
        }
    }

    /// Derived length, or None if the group is not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        let mut cur = Group::new(self.degree, self.generators.clone()).unwrap();
        let mut len = 0;
        loop {
            if cur.is_trivial() {
                return Some(len);
            }
            let next = cur.derived_subgroup();
            if next.order() == cur.order() {
                return None;
            }
            cur = next;
            len += 1;
        }
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &Group) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Group) -> Result<bool> {
        Ok(self.order() == other.order() && self.contains_group(other)?)
    }

    /// True iff conjugating `sub`'s generators by `self`'s generators stays in `sub`.
    pub fn normalizes(&self, sub: &Group) -> Result<bool> {
        for g in &self.generators {
            for s in sub.generators() {
                if !sub.contains(&s.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The orbit of a point.
    pub fn orbit(&self, point: u32) -> Result<Vec<u32>> {
        if point as usize >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point as usize,
                degree: self.degree,
            });
        }
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        Ok(orbit)
    }

    /// All orbits, in order of smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if !seen[p as usize] {
                let orbit = self.orbit(p).unwrap();
                for &q in &orbit {
                    seen[q as usize] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn moved_points(&self) -> Vec<u32> {
        let mut moved = vec![false; self.degree];
        for g in &self.generators {
            for p in g.moved_points() {
                moved[p as usize] = true;
            }
        }
        (0..self.degree as u32)
            .filter(|&p| moved[p as usize])
            .collect()
    }

    /// Transitive on its moved points?
    pub fn is_transitive_on_moved(&self) -> bool {
        let moved = self.moved_points();
        if moved.is_empty() {
            return true;
        }
        self.orbit(moved[0]).unwrap().len() == moved.len()
    }

    /// Pointwise stabilizer of a set of points, via a forced base prefix.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Group {
        let chain = StabilizerChain::build(self.degree, &self.generators, points);
        let gens = if points.len() < chain.levels.len() {
            chain.levels[points.len()].gens.clone()
        } else {
            vec![]
        };
        Group::new(self.degree, gens).unwrap()
    }

    /// Stabilizer of a single point.
    pub fn point_stabilizer(&self, point: u32) -> Group {
        self.pointwise_stabilizer(&[point])
    }

    /// Direct product on the disjoint-union domain.
    pub fn direct_product(&self, other: &Group) -> Group {
        let degree = self.degree + other.degree;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(g.extend_degree(degree));
        }
        for g in other.generators() {
            gens.push(g.shift(self.degree, degree));
        }
        Group::new(degree, gens).unwrap()
    }

    /// Imprimitive wreath product: `k` disjoint copies of `self` permuted by
    /// `top` (which must act on `k` points). Acts on `self.degree * k` points.
    pub fn wreath_imprimitive(&self, top: &Group) -> Group {
        let k = top.degree();
        let b = self.degree;
        let degree = b * k;
        let mut gens = Vec::new();
        // Base copies: one copy of each generator in each block.
        for i in 0..k {
            for g in &self.generators {
                gens.push(g.shift(i * b, degree));
            }
        }
        // Top: permute the blocks rigidly.
        for t in top.generators() {
            let mut images = vec![0u32; degree];
            for block in 0..k {
                let target = t.apply(block as u32) as usize;
                for j in 0..b {
                    images[block * b + j] = (target * b + j) as u32;
                }
            }
            gens.push(Permutation::from_images0(images).unwrap());
        }
        Group::new(degree, gens).unwrap()
    }

    /// Conjugate subgroup `self^g` (inside some ambient group).
    pub fn conjugate_by(&self, g: &Permutation) -> Group {
        let gens = self
            .generators
            .iter()
            .map(|s| s.conjugate_by(g))
            .collect();
        Group::new(self.degree, gens).unwrap()
    }
}

impl Clone for Group {
    fn clone(&self) -> Self {
        Group {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Group(degree={}, gens={}, order={})",
            self.degree,
            self.generators.len(),
            self.order()
        )
    }
}
